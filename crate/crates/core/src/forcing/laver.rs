//! Restricted dual Laver trees, truncated to a fixed number of levels above
//! the stem and to successors whose domain fits in `[0, dom_bound)`.

use super::{leq, nbhd_eq, ForcingError, Nbhd};
use crate::filters::FilterBase;
use crate::partition::{enumerate_segments, is_coarser, is_segment, FinPart, XPart};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A condition `p`: a stem and, for each internal node `t`, a partition
/// `X_t` carving out the successors `suc(t) = (t*, X_t)^(|t|+1)`.
///
/// Nodes live on levels `|stem|, ..., |stem| + depth`; those below the last
/// level are internal and need an `X_t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaverTree {
    pub stem: FinPart,
    pub depth: usize,
    pub dom_bound: usize,
    pub x_of: BTreeMap<FinPart, XPart>,
}

/// The first failure found by [`validate_laver`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingX(FinPart),
    StrayKey(FinPart),
    NotInFilter(FinPart),
    /// `t* ⋢ X_t`, so `(t*, X_t)` is empty.
    StarNotCoarser(FinPart),
    /// `t ⊑_seg u` but `(u, X_u) ⊄ (t, X_t)`.
    Nesting(FinPart, FinPart),
    /// `dom(t) = dom(u)` and `t ⊑ u` but `X_t ≠ X_u`.
    Coherence(FinPart, FinPart),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingX(t) => write!(f, "internal node {t} has no X_t"),
            Violation::StrayKey(t) => write!(f, "X_t given for {t}, which is not an internal node"),
            Violation::NotInFilter(t) => write!(f, "X_t of {t} is not in the filter"),
            Violation::StarNotCoarser(t) => write!(f, "{t}* is not coarser than X_t"),
            Violation::Nesting(t, u) => write!(f, "(u, X_u) not inside (t, X_t) for t = {t}, u = {u}"),
            Violation::Coherence(t, u) => write!(f, "X_t ≠ X_u for t = {t} ⊑ u = {u} on one domain"),
        }
    }
}

impl LaverTree {
    pub fn new(stem: FinPart, depth: usize, dom_bound: usize, x_of: BTreeMap<FinPart, XPart>) -> Self {
        LaverTree { stem, depth, dom_bound, x_of }
    }

    /// The uniform tree with `X_t = x` at every internal node.
    pub fn uniform(stem: FinPart, x: &XPart, depth: usize, dom_bound: usize) -> Self {
        let mut tree = LaverTree::new(stem, depth, dom_bound, BTreeMap::new());
        let mut frontier = vec![tree.stem.clone()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for t in frontier {
                next.extend(successors(&t, x, dom_bound));
                tree.x_of.insert(t, x.clone());
            }
            frontier = next;
        }
        tree
    }

    /// Nodes by level, starting with `[stem]`. Internal nodes without an
    /// `X_t` have no successors.
    pub fn levels(&self) -> Vec<Vec<FinPart>> {
        let mut levels = vec![vec![self.stem.clone()]];
        for _ in 0..self.depth {
            let last = levels.last().expect("nonempty");
            let next: Vec<FinPart> = last
                .iter()
                .filter_map(|t| self.x_of.get(t).map(|x| successors(t, x, self.dom_bound)))
                .flatten()
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            levels.push(next);
        }
        levels
    }

    pub fn nodes(&self) -> BTreeSet<FinPart> {
        self.levels().into_iter().flatten().collect()
    }

    pub fn internal_nodes(&self) -> Vec<FinPart> {
        let mut levels = self.levels();
        levels.pop();
        levels.into_iter().flatten().collect()
    }

    pub fn suc(&self, t: &FinPart) -> Vec<FinPart> {
        self.x_of.get(t).map(|x| successors(t, x, self.dom_bound)).unwrap_or_default()
    }

    /// `cu(p)` when all `X_t` coincide.
    pub fn cu(&self) -> Option<&XPart> {
        let mut values = self.x_of.values();
        let first = values.next()?;
        values.all(|x| x == first).then_some(first)
    }
}

/// `suc(t) = (t*, X)^(|t|+1)` within the bound.
fn successors(t: &FinPart, x: &XPart, dom_bound: usize) -> Vec<FinPart> {
    enumerate_segments(&t.star(), x, t.block_count() + 1, dom_bound)
}

/// Checks the tree clauses: every internal node has an `X_t` in the filter
/// with `t* ⊑ X_t`, neighbourhoods are nested along `⊑_seg`, and nodes on a
/// common domain with `t ⊑ u` share their partition.
pub fn validate_laver(p: &LaverTree, base: &FilterBase) -> Result<(), Violation> {
    let internal = p.internal_nodes();
    if let Some(t) = internal.iter().find(|t| !p.x_of.contains_key(*t)) {
        return Err(Violation::MissingX(t.clone()));
    }
    let internal_set: BTreeSet<&FinPart> = internal.iter().collect();
    if let Some(t) = p.x_of.keys().find(|t| !internal_set.contains(t)) {
        return Err(Violation::StrayKey(t.clone()));
    }
    for t in &internal {
        let x = &p.x_of[t];
        if !base.member(x) {
            return Err(Violation::NotInFilter(t.clone()));
        }
        if !is_coarser(&t.star(), x) {
            return Err(Violation::StarNotCoarser(t.clone()));
        }
    }
    for t in &internal {
        for u in &internal {
            if t != u && is_segment(t, u) {
                let inner = Nbhd::new(u.clone(), p.x_of[u].clone());
                let outer = Nbhd::new(t.clone(), p.x_of[t].clone());
                if !leq(&inner, &outer) {
                    return Err(Violation::Nesting(t.clone(), u.clone()));
                }
            }
            if t != u && t.dom() == u.dom() && is_coarser(t, u) && p.x_of[t] != p.x_of[u] {
                return Err(Violation::Coherence(t.clone(), u.clone()));
            }
        }
    }
    Ok(())
}

/// Outcome of the truncated branch test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchCheck {
    /// Every `t` with `stem* ⊑_seg t`, `t* ⊑ X`, `dom(t) ≤ dom_bound` and
    /// `|stem| < |t| ≤ |stem| + depth` is a node.
    pub branch: bool,
    /// `stem* ⊑ X`; without it the quantifier above may be vacuous.
    pub stem_compatible: bool,
}

pub fn branch_check(x: &XPart, p: &LaverTree) -> BranchCheck {
    let nodes = p.nodes();
    let start = p.stem.star();
    let branch = (1..=p.depth).all(|k| {
        enumerate_segments(&start, x, p.stem.block_count() + k, p.dom_bound)
            .iter()
            .all(|t| nodes.contains(t))
    });
    BranchCheck { branch, stem_compatible: is_coarser(&start, x) }
}

/// The branch predicate alone; see [`branch_check`] for the compatibility flag.
pub fn is_branch(x: &XPart, p: &LaverTree) -> bool {
    branch_check(x, p).branch
}

/// `q ≤ p` for truncated trees: every node of `q` is a node of `p`.
pub fn is_subtree(q: &LaverTree, p: &LaverTree) -> bool {
    q.nodes().is_subset(&p.nodes())
}

/// The uniform condition with stem `stem(p)` and `cu = X`, for a branch `X`
/// of `p`. Its nodes are exactly the `t` quantified over by the branch
/// test, so it lies below `p`.
pub fn uniformize(p: &LaverTree, x: &XPart) -> Result<LaverTree, ForcingError> {
    let check = branch_check(x, p);
    if !check.stem_compatible {
        return Err(ForcingError::Branch { x: x.clone(), reason: "stem* is not coarser than X" });
    }
    if !check.branch {
        return Err(ForcingError::Branch { x: x.clone(), reason: "some t with t* ⊑ X is missing" });
    }
    let q = LaverTree::uniform(p.stem.clone(), x, p.depth, p.dom_bound);
    assert!(is_subtree(&q, p), "uniformized tree escapes p");
    Ok(q)
}

/// `j(p) = ⟨stem(p), cu(p)⟩` for a tree that is uniform in effect:
/// `(t, X_t) = (t, X_stem)` at every internal node.
pub fn dense_embed(p: &LaverTree) -> Result<Nbhd, ForcingError> {
    let cu = p.x_of.get(&p.stem).ok_or(ForcingError::NoCu)?;
    for t in p.internal_nodes() {
        let xt = p.x_of.get(&t).ok_or_else(|| ForcingError::Uniformity { node: t.clone() })?;
        if !nbhd_eq(&Nbhd::new(t.clone(), cu.clone()), &Nbhd::new(t.clone(), xt.clone())) {
            return Err(ForcingError::Uniformity { node: t });
        }
    }
    Ok(Nbhd::new(p.stem.clone(), cu.clone()))
}

#[derive(Serialize, Deserialize)]
struct LaverTreeRepr {
    stem: FinPart,
    depth: usize,
    dom_bound: usize,
    x_of: Vec<(Vec<usize>, XPart)>,
}

impl Serialize for LaverTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        LaverTreeRepr {
            stem: self.stem.clone(),
            depth: self.depth,
            dom_bound: self.dom_bound,
            x_of: self.x_of.iter().map(|(t, x)| (t.rgs().to_vec(), x.clone())).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaverTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = LaverTreeRepr::deserialize(deserializer)?;
        let x_of = repr
            .x_of
            .into_iter()
            .map(|(rgs, x)| FinPart::new(rgs).map(|t| (t, x)))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(LaverTree::new(repr.stem, repr.depth, repr.dom_bound, x_of))
    }
}
