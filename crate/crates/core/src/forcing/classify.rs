//! Good, bad and ugly neighbourhoods relative to an open set.

use super::{nbhd_contains, ForcingError, Nbhd};
use crate::filters::FilterBase;
use crate::par;
use crate::partition::{enumerate_segments, nbhd_members, XPart};
use serde::{Deserialize, Serialize};

/// A finite union of neighbourhoods.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenSet {
    pub nbhds: Vec<Nbhd>,
}

impl OpenSet {
    pub fn new(nbhds: Vec<Nbhd>) -> Self {
        OpenSet { nbhds }
    }

    pub fn contains(&self, y: &XPart) -> bool {
        self.nbhds.iter().any(|c| nbhd_contains(c, y))
    }

    /// Longest initial segment any constituent looks at.
    fn span(&self) -> usize {
        self.nbhds.iter().map(|c| c.s.dom().max(c.x.prefix_len())).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Classification {
    /// Some `Y ∈ (s,X) ∩ F` has `(s,Y) ⊆ O`.
    Good { witness: XPart },
    Bad,
    /// `(t*, X)` is bad for every `t` with `s ⊑_seg t`, `t* ⊑ X`, `|t| = |s|`.
    UglyAndBad,
}

/// Classifies `(s,X)` against `O` at scale `dom_bound`.
///
/// Whether `Z ∈ O` depends only on `Z` below the span of `O`, and cutting
/// a member of `(s,Y)` off there leaves a member, so listing members with
/// prefix below `dom_bound` is exact once `dom_bound` exceeds every
/// dimension involved. Smaller bounds are rejected.
pub fn classify(
    c: &Nbhd,
    o: &OpenSet,
    base: &FilterBase,
    dom_bound: usize,
) -> Result<Classification, ForcingError> {
    let needed = 1 + c
        .s
        .dom()
        .max(c.x.prefix_len())
        .max(base.generator().prefix_len())
        .max(o.span());
    if dom_bound < needed {
        return Err(ForcingError::BoundTooSmall { needed, got: dom_bound });
    }
    let good = good_witness(c, o, base, dom_bound);
    let ugly = enumerate_segments(&c.s, &c.x, c.s.block_count(), dom_bound - 1)
        .iter()
        .all(|t| good_witness(&Nbhd::new(t.star(), c.x.clone()), o, base, dom_bound).is_none());
    match (good, ugly) {
        (Some(_), true) => Err(ForcingError::Inconsistent(c.clone())),
        (Some(witness), false) => Ok(Classification::Good { witness }),
        (None, true) => Ok(Classification::UglyAndBad),
        (None, false) => Ok(Classification::Bad),
    }
}

fn good_witness(c: &Nbhd, o: &OpenSet, base: &FilterBase, dom_bound: usize) -> Option<XPart> {
    let candidates: Vec<&XPart> = base.elements().iter().filter(|y| nbhd_contains(c, y)).collect();
    par::find_first(&candidates, |y| {
        nbhd_members(&c.s, y, dom_bound)
            .iter()
            .all(|z| o.contains(z))
            .then(|| (*y).clone())
    })
}
