//! Dual Mathias conditions, restricted dual Laver trees and the
//! good/bad/ugly classification of neighbourhoods.
//!
//! A neighbourhood `(s,X)` is the set of all `Y` with `s ⊑_seg Y ⊑ X`.
//! Conditions `⟨s,X⟩` are ordered by inclusion of their neighbourhoods; the
//! order is decided here algebraically and [`crate::oracle`] decides it by
//! listing members.

mod classify;
mod laver;

pub use classify::{classify, Classification, OpenSet};
pub use laver::{
    branch_check, dense_embed, is_branch, is_subtree, uniformize, validate_laver, BranchCheck,
    LaverTree, Violation,
};

use crate::partition::{is_coarser, nbhd_members, is_segment, FinPart, Partition, XPart};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("branch error: {x} is not a branch of the tree ({reason})")]
    Branch { x: XPart, reason: &'static str },
    #[error("uniformity error: X_t differs from X_stem in effect at node {node}")]
    Uniformity { node: FinPart },
    #[error("uniformity error: the tree has no internal node, so cu(p) is undefined")]
    NoCu,
    #[error("dom_bound {got} too small; exact evaluation needs at least {needed}")]
    BoundTooSmall { needed: usize, got: usize },
    #[error("classification inconsistent: {0} is both good and ugly")]
    Inconsistent(Nbhd),
}

/// A dual Ellentuck neighbourhood `(s,X)`, read as the condition `⟨s,X⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Nbhd {
    pub s: FinPart,
    #[serde(rename = "X")]
    pub x: XPart,
}

impl fmt::Display for Nbhd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.s, self.x)
    }
}

impl Nbhd {
    pub fn new(s: FinPart, x: XPart) -> Self {
        Nbhd { s, x }
    }

    /// `(X) = (∅, X)`.
    pub fn full(x: XPart) -> Self {
        Nbhd { s: FinPart::empty(), x }
    }

    /// Non-emptiness: `(s,X) ≠ ∅` iff `s ⊑ X`, since then `s ⊓ X` is a
    /// member (an `X`-chain leaving `dom(s)` and returning is one `X`-edge).
    pub fn is_nonempty(&self) -> bool {
        is_coarser(&self.s, &self.x)
    }

    /// The finest member `s ⊓ X`; every member is coarser.
    pub fn finest_member(&self) -> Option<XPart> {
        self.is_nonempty().then(|| self.x.join_fin(&self.s))
    }

    /// Length of the initial segment on which all members agree: up to the
    /// first block minimum of `s ⊓ X` at or past `max(dom(s), 1)`. That
    /// block may be merged into block 0 or kept apart.
    pub fn forced_len(&self) -> Option<usize> {
        let z = self.finest_member()?;
        Some((self.s.dom().max(1)..).find(|&i| z.is_block_min(i)).expect("tail is singleton"))
    }

    /// Canonical pair `(Z|F, Z)` with `Z = s ⊓ X` and `F` the forced length:
    /// two nonempty neighbourhoods are equal iff their canonical forms are.
    pub fn canonical(&self) -> Option<(FinPart, XPart)> {
        let z = self.finest_member()?;
        let f = self.forced_len()?;
        Some((z.restrict(f), z))
    }

    pub fn contains(&self, y: &XPart) -> bool {
        nbhd_contains(self, y)
    }
}

/// Membership in `(s,X)`: `s ⊑_seg Y` and `Y ⊑ X`.
pub fn nbhd_contains(c: &Nbhd, y: &XPart) -> bool {
    is_segment(&c.s, y) && is_coarser(y, &c.x)
}

/// Whether `(s,X)` has a member whose prefix fits in `[0, dom_bound)`.
///
/// The finest member `s ⊓ X` has the shortest prefix of all members, so when
/// `dom_bound` covers `dom(s)` and the prefix of `X` the criterion `s ⊑ X`
/// is exact; below that the members are listed.
pub fn validate_condition(c: &Nbhd, dom_bound: usize) -> bool {
    if dom_bound >= c.s.dom().max(c.x.prefix_len()) {
        c.is_nonempty()
    } else {
        !nbhd_members(&c.s, &c.x, dom_bound).is_empty()
    }
}

/// `⟨s,X⟩ ≤ ⟨t,Y⟩`, i.e. `(s,X) ⊆ (t,Y)`.
///
/// With `Z = s ⊓ X` and `F` the forced length, the members of `(s,X)` are
/// the coarsenings of `Z` that keep the blocks meeting `dom(s)` apart. All
/// of them lie in `(t,Y)` iff `Z ⊑ Y`, `dom(t) ≤ F` and `t ⊑_seg Z`: past
/// `F` one member merges block `F` into block 0 and another does not.
pub fn leq(c1: &Nbhd, c2: &Nbhd) -> bool {
    let Some(z) = c1.finest_member() else {
        return true;
    };
    let f = c1.forced_len().expect("nonempty");
    is_coarser(&z, &c2.x) && c2.s.dom() <= f && is_segment(&c2.s, &z)
}

/// Whether two conditions have the same neighbourhood.
pub fn nbhd_eq(c1: &Nbhd, c2: &Nbhd) -> bool {
    c1.canonical() == c2.canonical()
}
