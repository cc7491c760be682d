use super::{Coloring, RamseyError};
use crate::oracle;
use crate::par;
use crate::partition::{enumerate_segments, is_coarser, nbhd_members, FinPart, XPart};
use serde::{Deserialize, Serialize};

/// `Y` together with the colour of `(s,Y)^(n+k)` and the segments checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "Y")]
    pub y: XPart,
    pub color: usize,
    pub checked: Vec<FinPart>,
}

/// Searches `Y ∈ (s,X)` with prefix in `[0, dom_bound)` and at least
/// `target_blocks` blocks on `[0, dom_bound)` such that `(s,Y)^(n+k)` is
/// nonempty and monochromatic within the bound.
///
/// Candidates are tried by decreasing block count, then in rgs order, so
/// `X` itself comes first. Sound but not complete: witnesses with longer
/// prefixes are never seen.
pub fn dual_ramsey_witness(
    pi: &Coloring,
    s: &FinPart,
    x: &XPart,
    n_plus_k: usize,
    target_blocks: usize,
    dom_bound: usize,
) -> Result<Option<Witness>, RamseyError> {
    for u in enumerate_segments(s, x, n_plus_k, dom_bound) {
        pi.color(&u)?;
    }
    let mut candidates: Vec<(usize, XPart)> = nbhd_members(s, x, dom_bound)
        .into_iter()
        .map(|y| (y.restrict(dom_bound).block_count(), y))
        .filter(|(blocks, _)| *blocks >= target_blocks)
        .collect();
    candidates.sort_by(|(a, y), (b, z)| b.cmp(a).then_with(|| y.cmp(z)));
    Ok(par::find_first(&candidates, |(_, y)| monochromatic(pi, s, y, n_plus_k, dom_bound)))
}

fn monochromatic(
    pi: &Coloring,
    s: &FinPart,
    y: &XPart,
    n_plus_k: usize,
    dom_bound: usize,
) -> Option<Witness> {
    let checked = enumerate_segments(s, y, n_plus_k, dom_bound);
    let color = pi.get(checked.first()?)?;
    checked
        .iter()
        .all(|u| pi.get(u) == Some(color))
        .then(|| Witness { y: y.clone(), color, checked })
}

/// Re-checks a witness along an independent path: `Y ∈ (s,X)`, and the
/// brute-force segment set of `(s,Y)` is the listed one, nonempty and of
/// the stated colour.
pub fn verify_witness(
    pi: &Coloring,
    s: &FinPart,
    x: &XPart,
    n_plus_k: usize,
    dom_bound: usize,
    w: &Witness,
) -> bool {
    let segments = oracle::segments(s, &w.y, n_plus_k, dom_bound);
    let mut listed = w.checked.clone();
    listed.sort();
    oracle::is_segment(s, &w.y)
        && oracle::is_coarser(&w.y, x)
        && !segments.is_empty()
        && segments == listed
        && segments.iter().all(|u| pi.get(u) == Some(w.color))
}

/// The planted colouring `π(u) = [u* ⊑ Z]` on `(s, ω)^(n+k)`: colour 1 on
/// all of `(s,Z)^(n+k)`, so `Z` is a witness whenever that set is nonempty.
pub fn planted_coloring(s: &FinPart, z: &XPart, n_plus_k: usize, dom_bound: usize) -> Coloring {
    Coloring::from_fn(s.clone(), n_plus_k, dom_bound, 2, |u| usize::from(is_coarser(&u.star(), z)))
        .expect("two colours")
}
