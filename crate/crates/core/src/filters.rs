//! Filters on the infinite partitions, presented by finite bases.
//!
//! The generated filter is `F = { Y : B ⊑ Y for some B in the ⊓-closure of
//! the base }`. Every closure element is coarser than the join `J` of the
//! whole base, so `F` is the set of refinements of `J`. These are finitely
//! many and all eventually singleton, so quantifiers over `F` are exact
//! here rather than truncated.

use crate::forcing::{branch_check, LaverTree};
use crate::par;
use crate::partition::{is_almost_coarser, is_coarser, refinements, Partition, XPart};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FilterError {
    #[error("a filter base needs at least one member")]
    EmptyBase,
    #[error("construction error: no legal extension at level {level}")]
    Construction { level: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterBase {
    members: Vec<XPart>,
    closure: Vec<XPart>,
    generator: XPart,
    elements: Vec<XPart>,
}

impl FilterBase {
    /// Materializes the `⊓`-closure and the elements of the generated filter.
    pub fn new(members: Vec<XPart>) -> Result<Self, FilterError> {
        if members.is_empty() {
            return Err(FilterError::EmptyBase);
        }
        let mut closure: BTreeSet<XPart> = members.iter().cloned().collect();
        loop {
            let current: Vec<XPart> = closure.iter().cloned().collect();
            let before = closure.len();
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    closure.insert(a.join(b));
                }
            }
            if closure.len() == before {
                break;
            }
        }
        let generator = members.iter().skip(1).fold(members[0].clone(), |j, m| j.join(m));
        let elements = refinements(&generator);
        Ok(FilterBase { members, closure: closure.into_iter().collect(), generator, elements })
    }

    pub fn principal(x: XPart) -> Self {
        FilterBase::new(vec![x]).expect("nonempty")
    }

    pub fn members(&self) -> &[XPart] {
        &self.members
    }

    /// The `⊓`-closure of the base, in rgs order.
    pub fn closure(&self) -> &[XPart] {
        &self.closure
    }

    /// The coarsest element `J` of the generated filter.
    pub fn generator(&self) -> &XPart {
        &self.generator
    }

    /// All elements of the generated filter, in rgs order of their prefixes
    /// on `[0, prefix(J))`.
    pub fn elements(&self) -> &[XPart] {
        &self.elements
    }

    /// `Y ∈ F`: some closure element is coarser than `Y`.
    pub fn member(&self, y: &XPart) -> bool {
        self.closure.iter().any(|b| is_coarser(b, y))
    }
}

/// `Y ∈ F` for the filter generated by `base`.
pub fn member(base: &FilterBase, y: &XPart) -> bool {
    base.member(y)
}

/// Looks for `X ∈ F` that is a branch of `p` with `stem* ⊑ X`, trying base
/// members first, then the rest of the closure, then all of `F`.
pub fn diagonalize_check(base: &FilterBase, p: &LaverTree) -> Option<XPart> {
    let mut seen = BTreeSet::new();
    let candidates: Vec<&XPart> = base
        .members
        .iter()
        .chain(&base.closure)
        .chain(&base.elements)
        .filter(|x| seen.insert(*x))
        .collect();
    par::find_first(&candidates, |x| {
        let check = branch_check(x, p);
        (check.branch && check.stem_compatible).then(|| (*x).clone())
    })
}

/// Builds a branch `Z ⊑ Y` of `p` from `Y`: start with `Z = Y ⊓ X_stem` and
/// join in `X_t` for every internal node `t` with `t* ⊑ Z` until nothing
/// changes. Then `t* ⊑ Z` implies `t* ⊑ X_w` for each ancestor `w`, so every
/// such `t` is a successor all the way down.
///
/// Joins only coarsen `Z`; if one breaks `stem* ⊑ Z` the construction fails
/// at the level of the node responsible (level 0 for the stem itself).
pub fn diagonalize_construct(p: &LaverTree, y: &XPart, dom_bound: usize) -> Result<XPart, FilterError> {
    let stem_star = p.stem.star();
    let stem_level = p.stem.block_count();
    let x_stem = p.x_of.get(&p.stem).ok_or(FilterError::Construction { level: 0 })?;
    let mut z = y.join(x_stem);
    if !is_coarser(&stem_star, &z) {
        return Err(FilterError::Construction { level: 0 });
    }
    let internal = p.internal_nodes();
    loop {
        let mut changed = false;
        for t in &internal {
            let xt = &p.x_of[t];
            if is_coarser(&t.star(), &z) && !is_coarser(&z, xt) {
                z = z.join(xt);
                changed = true;
                if !is_coarser(&stem_star, &z) {
                    return Err(FilterError::Construction { level: t.block_count() - stem_level });
                }
            }
        }
        if !changed {
            break;
        }
    }
    let bound = dom_bound.max(z.explicit_len()).max(y.explicit_len());
    assert!(is_almost_coarser(&z, y, bound), "constructed Z is not almost coarser than Y");
    assert!(branch_check(&z, p).branch, "constructed Z is not a branch");
    Ok(z)
}

impl Serialize for FilterBase {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            members: &'a [XPart],
        }
        Repr { members: &self.members }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FilterBase {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            members: Vec<XPart>,
        }
        let repr = Repr::deserialize(deserializer)?;
        FilterBase::new(repr.members).map_err(serde::de::Error::custom)
    }
}
