//! The segment colouring property, checked at finite scale.

use super::{Coloring, RamseyError, Witness};
use crate::filters::FilterBase;
use crate::partition::{enumerate_segments, is_coarser, is_segment, FinPart, XPart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// The first `Y ∈ F ∩ (s,X)` whose segment set `(s,Y)^(n+k)` is nonempty
/// and monochromatic under `π`.
pub fn scp_check_coloring(
    base: &FilterBase,
    s: &FinPart,
    x: &XPart,
    pi: &Coloring,
    n_plus_k: usize,
    dom_bound: usize,
) -> Result<Option<Witness>, RamseyError> {
    pi.check_total(x, dom_bound)?;
    for y in base.elements().iter().filter(|y| is_segment(s, *y) && is_coarser(*y, x)) {
        let checked = enumerate_segments(s, y, n_plus_k, dom_bound);
        let Some(first) = checked.first() else { continue };
        let color = pi.color(first)?;
        if checked.iter().all(|u| pi.get(u) == Some(color)) {
            return Ok(Some(Witness { y: y.clone(), color, checked }));
        }
    }
    Ok(None)
}

/// A colouring of `(s,X)^(n+k)` that no `Y ∈ F ∩ (s,X)` makes monochromatic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScpCounterexample {
    #[serde(rename = "X")]
    pub x: XPart,
    pub coloring: Coloring,
}

/// Hunts for a failure of the segment colouring property: over every
/// `X ∈ F` with `s ⊑_seg X` and a nonempty `(s,X)^(n+k)`, tries colourings
/// with `r` colours — all of them when there are at most `trials`, else
/// `trials` colourings drawn from a generator seeded by `seed`. `None` is
/// evidence at this scale, not proof.
pub fn scp_falsify(
    base: &FilterBase,
    s: &FinPart,
    n_plus_k: usize,
    r: usize,
    trials: usize,
    dom_bound: usize,
    seed: u64,
) -> Option<ScpCounterexample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for x in base.elements().iter().filter(|x| is_segment(s, *x)) {
        let domain = enumerate_segments(s, x, n_plus_k, dom_bound);
        if domain.is_empty() || r == 0 {
            continue;
        }
        // each candidate Y as the positions of its segments inside `domain`
        let index: BTreeMap<&FinPart, usize> = domain.iter().enumerate().map(|(i, u)| (u, i)).collect();
        let subsets: Vec<Vec<usize>> = base
            .elements()
            .iter()
            .filter(|y| is_segment(s, *y) && is_coarser(*y, x))
            .map(|y| enumerate_segments(s, y, n_plus_k, dom_bound).iter().map(|u| index[u]).collect())
            .filter(|v: &Vec<usize>| !v.is_empty())
            .collect();
        let mono = |colors: &[usize]| subsets.iter().any(|v| v.iter().all(|&i| colors[i] == colors[v[0]]));
        let exhaustive = u32::try_from(domain.len())
            .ok()
            .and_then(|len| r.checked_pow(len))
            .is_some_and(|total| total <= trials);
        let mut colors = vec![0; domain.len()];
        let try_next = |colors: &[usize]| -> Option<ScpCounterexample> {
            (!mono(colors)).then(|| ScpCounterexample {
                x: x.clone(),
                coloring: to_coloring(s, n_plus_k, dom_bound, r, &domain, colors),
            })
        };
        if exhaustive {
            loop {
                if let Some(found) = try_next(&colors) {
                    return Some(found);
                }
                // odometer step
                let Some(i) = colors.iter().rposition(|&c| c + 1 < r) else { break };
                colors[i] += 1;
                colors[i + 1..].iter_mut().for_each(|c| *c = 0);
            }
        } else {
            for _ in 0..trials {
                colors.iter_mut().for_each(|c| *c = rng.gen_range(0..r));
                if let Some(found) = try_next(&colors) {
                    return Some(found);
                }
            }
        }
    }
    None
}

/// Extends a colouring of `domain` to all of `(s, ω)^(n+k)` with colour 0.
fn to_coloring(s: &FinPart, n_plus_k: usize, dom_bound: usize, r: usize, domain: &[FinPart], colors: &[usize]) -> Coloring {
    let given: BTreeMap<&FinPart, usize> = domain.iter().zip(colors.iter().copied()).collect();
    Coloring::from_fn(s.clone(), n_plus_k, dom_bound, r, |u| given.get(u).copied().unwrap_or(0))
        .expect("colours below r")
}

/// `π(u) = 0` if `u ∈ (X)^(n)` and `1` otherwise, on `(ω)^(n)`.
pub fn ultra_coloring(x: &XPart, n: usize, dom_bound: usize) -> Coloring {
    Coloring::from_fn(FinPart::empty(), n, dom_bound, 2, |u| usize::from(!is_coarser(&u.star(), x)))
        .expect("two colours")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaximalityProbe {
    /// The `Y ∈ F` making `(Y)^(n)` monochromatic under [`ultra_coloring`].
    pub witness: Option<Witness>,
    pub x_in_filter: bool,
}

/// Runs the ultrafilter argument for `X`: colour `(ω)^(n)` by membership in
/// `(X)^(n)` and look for a monochromatic `Y ∈ F`. Colour 0 points towards
/// `X ∈ F`, colour 1 towards the filter containing a partition almost
/// disjoint from `X` in this sense.
pub fn maximality_probe(base: &FilterBase, x: &XPart, n: usize, dom_bound: usize) -> MaximalityProbe {
    let pi = ultra_coloring(x, n, dom_bound);
    let witness = scp_check_coloring(base, &FinPart::empty(), &XPart::omega(), &pi, n, dom_bound)
        .expect("ultra colouring is total on (ω)^(n)");
    MaximalityProbe { witness, x_in_filter: base.member(x) }
}
