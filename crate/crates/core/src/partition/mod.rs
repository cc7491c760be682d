//! Partitions of initial segments of ω and eventually-singleton partitions
//! of ω, together with the coarsening order and its lattice operations.
//!
//! Two concrete representations are used throughout the crate:
//!
//! * [`FinPart`] is a partition of `[0, m)` stored as a restricted growth
//!   string (rgs). Blocks are numbered in order of their minimum element, so
//!   the rgs is unique for every partition.
//! * [`XPart`] is an infinite partition of ω given by a [`FinPart`] prefix
//!   on `[0, m)` followed by singleton blocks `{m}, {m + 1}, ...`. The prefix
//!   is kept minimal, which makes equality of values equality of partitions.
//!
//! Coarsening follows the usual convention of the dual Ramsey literature:
//! `P ⊑ Q` ("P is coarser than Q") means every block of `P` is a union of
//! traces of `Q`-blocks. The all-singletons partition ω is therefore the
//! finest element and sits above every other partition.

mod enumerate;

pub use enumerate::{
    all_finparts, all_xparts, enumerate_segments, inner_segments, inner_segments_x,
    nbhd_members, refinements, star_segments,
};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("domain error: element {0} occurs in more than one block")]
    Overlap(usize),
    #[error("domain error: element {0} is not covered although larger elements are")]
    Gap(usize),
    #[error("domain error: empty block")]
    EmptyBlock,
    #[error("domain error: position {position} carries block index {value}, which skips a block")]
    NotRestrictedGrowth { position: usize, value: usize },
    #[error("index error: block {index} requested from a partition with {blocks} blocks")]
    IndexOutOfRange { index: usize, blocks: usize },
    #[error("domain error: unsupported tail marker {0:?}")]
    UnknownTail(String),
}

/// Domain of a partition: either `[0, m)` or all of ω.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Finite(usize),
    Omega,
}

impl Domain {
    pub fn contains(self, i: usize) -> bool {
        match self {
            Domain::Finite(m) => i < m,
            Domain::Omega => true,
        }
    }
}

/// Read access shared by finite and infinite partitions.
///
/// Block indices are canonical: blocks are numbered `0, 1, 2, ...` in order
/// of their minima, so `block_of` restricted to `[0, k)` is itself an rgs.
pub trait Partition {
    fn domain(&self) -> Domain;

    /// Length of the stored part. Elements at or beyond it are singletons
    /// (for infinite partitions) or outside the domain (for finite ones).
    fn explicit_len(&self) -> usize;

    /// Canonical index of the block containing `i`. `i` must lie in the domain.
    fn block_of(&self, i: usize) -> usize;

    /// Whether `i` is the least element of its block.
    fn is_block_min(&self, i: usize) -> bool {
        let b = self.block_of(i);
        (0..i).all(|j| self.block_of(j) != b)
    }

    fn related(&self, i: usize, j: usize) -> bool {
        self.block_of(i) == self.block_of(j)
    }
}

/// A partition of `[0, m)` in restricted-growth form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FinPart {
    rgs: Vec<usize>,
    blocks: usize,
}

impl FinPart {
    pub fn new(rgs: Vec<usize>) -> Result<Self, PartitionError> {
        let mut blocks = 0;
        for (position, &value) in rgs.iter().enumerate() {
            if value > blocks {
                return Err(PartitionError::NotRestrictedGrowth { position, value });
            }
            if value == blocks {
                blocks += 1;
            }
        }
        Ok(FinPart { rgs, blocks })
    }

    /// Caller guarantees the restricted-growth condition.
    pub(crate) fn from_rgs_unchecked(rgs: Vec<usize>, blocks: usize) -> Self {
        debug_assert_eq!(FinPart::new(rgs.clone()).map(|p| p.blocks), Ok(blocks));
        FinPart { rgs, blocks }
    }

    /// Canonical relabelling of an arbitrary labelling of `[0, m)`: two
    /// positions share a block iff they carry the same label.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let rgs = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(b) => b,
                None => {
                    seen.push(l);
                    seen.len() - 1
                }
            })
            .collect();
        FinPart { rgs, blocks: seen.len() }
    }

    /// Builds the canonical form of a family of disjoint blocks covering
    /// `[0, m)`. The order of the blocks and of their elements is irrelevant.
    pub fn from_blocks<B, I>(blocks: B) -> Result<Self, PartitionError>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        let mut label: Vec<Option<usize>> = Vec::new();
        for (b, block) in blocks.into_iter().enumerate() {
            let mut empty = true;
            for i in block {
                empty = false;
                if i >= label.len() {
                    label.resize(i + 1, None);
                }
                if label[i].replace(b).is_some() {
                    return Err(PartitionError::Overlap(i));
                }
            }
            if empty {
                return Err(PartitionError::EmptyBlock);
            }
        }
        let labels = label
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or(PartitionError::Gap(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinPart::from_labels(&labels))
    }

    pub fn empty() -> Self {
        FinPart::default()
    }

    /// The finest partition of `[0, m)`.
    pub fn singletons(m: usize) -> Self {
        FinPart { rgs: (0..m).collect(), blocks: m }
    }

    pub fn single_block(m: usize) -> Self {
        FinPart { rgs: vec![0; m], blocks: usize::from(m > 0) }
    }

    /// `dom(s)`, the size of the underlying initial segment.
    pub fn dom(&self) -> usize {
        self.rgs.len()
    }

    /// `|s|`, the number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn is_empty(&self) -> bool {
        self.rgs.is_empty()
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn into_rgs(self) -> Vec<usize> {
        self.rgs
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.rgs.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// `s*`: `s` together with the new singleton block `{dom(s)}`.
    pub fn star(&self) -> FinPart {
        let mut rgs = self.rgs.clone();
        rgs.push(self.blocks);
        FinPart { rgs, blocks: self.blocks + 1 }
    }

    /// Whether the last element forms a singleton block of its own, i.e.
    /// whether `self = t*` for `t = self.restrict(dom - 1)`.
    pub fn is_star(&self) -> bool {
        match self.rgs.split_last() {
            Some((&last, rest)) => last + 1 == self.blocks && !rest.contains(&last),
            None => false,
        }
    }

    /// Trace on `[0, m)`; `m` is clamped to the domain.
    pub fn restrict(&self, m: usize) -> FinPart {
        FinPart::from_labels(&self.rgs[..m.min(self.dom())])
    }

    /// `Min(s)` in increasing order.
    pub fn min_set(&self) -> Vec<usize> {
        let mut mins = Vec::with_capacity(self.blocks);
        for (i, &b) in self.rgs.iter().enumerate() {
            if b == mins.len() {
                mins.push(i);
            }
        }
        mins
    }

    /// `s(n)`: the block whose minimum is the `(n+1)`-st element of `Min(s)`.
    pub fn block_at(&self, n: usize) -> Result<BlockView, PartitionError> {
        if n >= self.blocks {
            return Err(PartitionError::IndexOutOfRange { index: n, blocks: self.blocks });
        }
        let elements = (0..self.dom()).filter(|&i| self.rgs[i] == n).collect();
        Ok(BlockView { elements })
    }

    /// Whether `self` is the all-singletons partition of its domain.
    pub fn is_singletons(&self) -> bool {
        self.blocks == self.dom()
    }

    pub fn join(&self, other: &FinPart) -> FinPart {
        match join(self, other) {
            Part::Fin(p) => p,
            Part::Omega(_) => unreachable!("join of finite partitions is finite"),
        }
    }

    /// Iterator over all partitions of `[0, m)` in rgs-lexicographic order.
    pub fn all(m: usize) -> impl Iterator<Item = FinPart> {
        all_finparts(m)
    }
}

impl Partition for FinPart {
    fn domain(&self) -> Domain {
        Domain::Finite(self.dom())
    }

    fn explicit_len(&self) -> usize {
        self.dom()
    }

    fn block_of(&self, i: usize) -> usize {
        self.rgs[i]
    }
}

/// An infinite partition of ω whose blocks are eventually singletons.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct XPart {
    prefix: FinPart,
}

impl XPart {
    /// Partition equal to `prefix` on `[0, m)` and singletons from `m` on.
    /// Trailing singletons of the prefix are absorbed into the tail.
    pub fn from_prefix(prefix: FinPart) -> Self {
        let FinPart { mut rgs, mut blocks } = prefix;
        while let Some(&last) = rgs.last() {
            if last + 1 == blocks && !rgs[..rgs.len() - 1].contains(&last) {
                rgs.pop();
                blocks -= 1;
            } else {
                break;
            }
        }
        XPart { prefix: FinPart { rgs, blocks } }
    }

    pub fn from_blocks<B, I>(blocks: B) -> Result<Self, PartitionError>
    where
        B: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        // elements not listed in any block are singletons
        let mut label: Vec<Option<usize>> = Vec::new();
        let mut count = 0;
        for block in blocks {
            let mut empty = true;
            for i in block {
                empty = false;
                if i >= label.len() {
                    label.resize(i + 1, None);
                }
                if label[i].replace(count).is_some() {
                    return Err(PartitionError::Overlap(i));
                }
            }
            if empty {
                return Err(PartitionError::EmptyBlock);
            }
            count += 1;
        }
        let labels: Vec<usize> = label
            .into_iter()
            .map(|l| {
                l.unwrap_or_else(|| {
                    count += 1;
                    count - 1
                })
            })
            .collect();
        Ok(XPart::from_prefix(FinPart::from_labels(&labels)))
    }

    /// ω viewed as the partition into singletons.
    pub fn omega() -> Self {
        XPart::default()
    }

    pub fn is_omega(&self) -> bool {
        self.prefix.is_empty()
    }

    pub fn prefix(&self) -> &FinPart {
        &self.prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.dom()
    }

    /// Blocks meeting the prefix; all other blocks are tail singletons.
    pub fn prefix_blocks(&self) -> usize {
        self.prefix.block_count()
    }

    /// Trace on `[0, m)`.
    pub fn restrict(&self, m: usize) -> FinPart {
        let p = self.prefix_len();
        if m <= p {
            return self.prefix.restrict(m);
        }
        let mut rgs = self.prefix.rgs.clone();
        let start = self.prefix_blocks();
        rgs.extend((0..m - p).map(|k| start + k));
        FinPart { rgs, blocks: start + (m - p) }
    }

    /// The first `count` elements of `Min(X)`.
    pub fn min_set(&self, count: usize) -> Vec<usize> {
        let mut mins = self.prefix.min_set();
        mins.truncate(count);
        let mut next = self.prefix_len();
        while mins.len() < count {
            mins.push(next);
            next += 1;
        }
        mins
    }

    pub fn block_at(&self, n: usize) -> BlockView {
        if n < self.prefix_blocks() {
            self.prefix.block_at(n).expect("index checked")
        } else {
            BlockView { elements: vec![self.prefix_len() + (n - self.prefix_blocks())] }
        }
    }

    pub fn join(&self, other: &XPart) -> XPart {
        match join(self, other) {
            Part::Omega(x) => x,
            Part::Fin(_) => unreachable!("join with an infinite partition is infinite"),
        }
    }

    pub fn join_fin(&self, other: &FinPart) -> XPart {
        match join(self, other) {
            Part::Omega(x) => x,
            Part::Fin(_) => unreachable!("join with an infinite partition is infinite"),
        }
    }
}

impl Partition for XPart {
    fn domain(&self) -> Domain {
        Domain::Omega
    }

    fn explicit_len(&self) -> usize {
        self.prefix_len()
    }

    fn block_of(&self, i: usize) -> usize {
        let p = self.prefix_len();
        if i < p {
            self.prefix.rgs[i]
        } else {
            self.prefix_blocks() + (i - p)
        }
    }

    fn is_block_min(&self, i: usize) -> bool {
        i >= self.prefix_len() || {
            let b = self.prefix.rgs[i];
            !self.prefix.rgs[..i].contains(&b)
        }
    }
}

/// Either kind of partition, for operations whose result type depends on
/// the domains of the arguments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Part {
    Omega(XPart),
    Fin(FinPart),
}

impl Part {
    pub fn as_fin(&self) -> Option<&FinPart> {
        match self {
            Part::Fin(p) => Some(p),
            Part::Omega(_) => None,
        }
    }

    pub fn as_omega(&self) -> Option<&XPart> {
        match self {
            Part::Omega(x) => Some(x),
            Part::Fin(_) => None,
        }
    }
}

impl From<FinPart> for Part {
    fn from(p: FinPart) -> Self {
        Part::Fin(p)
    }
}

impl From<XPart> for Part {
    fn from(x: XPart) -> Self {
        Part::Omega(x)
    }
}

impl Partition for Part {
    fn domain(&self) -> Domain {
        match self {
            Part::Fin(p) => p.domain(),
            Part::Omega(x) => x.domain(),
        }
    }

    fn explicit_len(&self) -> usize {
        match self {
            Part::Fin(p) => p.explicit_len(),
            Part::Omega(x) => x.explicit_len(),
        }
    }

    fn block_of(&self, i: usize) -> usize {
        match self {
            Part::Fin(p) => p.block_of(i),
            Part::Omega(x) => x.block_of(i),
        }
    }

    fn is_block_min(&self, i: usize) -> bool {
        match self {
            Part::Fin(p) => p.is_block_min(i),
            Part::Omega(x) => x.is_block_min(i),
        }
    }
}

impl<T: Partition + ?Sized> Partition for &T {
    fn domain(&self) -> Domain {
        (**self).domain()
    }

    fn explicit_len(&self) -> usize {
        (**self).explicit_len()
    }

    fn block_of(&self, i: usize) -> usize {
        (**self).block_of(i)
    }

    fn is_block_min(&self, i: usize) -> bool {
        (**self).is_block_min(i)
    }
}

/// A single block, listed in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockView {
    pub elements: Vec<usize>,
}

impl BlockView {
    pub fn min(&self) -> usize {
        self.elements[0]
    }
}

/// Length of the window on which a binary relation between `p` and `q` has
/// to be inspected: the common domain, cut down to the stored prefixes when
/// both partitions are infinite (beyond them both are singletons).
fn common_window(p: &impl Partition, q: &impl Partition) -> usize {
    match (p.domain(), q.domain()) {
        (Domain::Finite(a), Domain::Finite(b)) => a.min(b),
        (Domain::Finite(a), Domain::Omega) => a,
        (Domain::Omega, Domain::Finite(b)) => b,
        (Domain::Omega, Domain::Omega) => p.explicit_len().max(q.explicit_len()),
    }
}

/// `P ⊑ Q`: every block of `P`, intersected with `dom(Q)`, is a union of
/// traces of `Q`-blocks on `dom(P)`. On the common domain this says that
/// `Q`-related elements are `P`-related.
pub fn is_coarser(p: &impl Partition, q: &impl Partition) -> bool {
    let window = common_window(p, q);
    // block ids are canonical, so a q-block met in [0, window) has id < window
    let mut image: Vec<Option<usize>> = vec![None; window];
    (0..window).all(|i| {
        let pb = p.block_of(i);
        match image[q.block_of(i)] {
            Some(seen) => seen == pb,
            None => {
                image[q.block_of(i)] = Some(pb);
                true
            }
        }
    })
}

/// `P ⊓ Q`: the finest partition coarser than both, on `dom(P) ∪ dom(Q)`.
pub fn join(p: &impl Partition, q: &impl Partition) -> Part {
    let (len, infinite) = match (p.domain(), q.domain()) {
        (Domain::Finite(a), Domain::Finite(b)) => (a.max(b), false),
        _ => (p.explicit_len().max(q.explicit_len()), true),
    };
    let mut dsu = Dsu::new(len);
    for part in [p as &dyn Partition, q as &dyn Partition] {
        let covered = match part.domain() {
            Domain::Finite(m) => m.min(len),
            Domain::Omega => len,
        };
        let mut first: Vec<Option<usize>> = vec![None; covered];
        for i in 0..covered {
            let b = part.block_of(i);
            match first[b] {
                Some(j) => dsu.union(i, j),
                None => first[b] = Some(i),
            }
        }
    }
    let labels: Vec<usize> = (0..len).map(|i| dsu.find(i)).collect();
    let prefix = FinPart::from_labels(&labels);
    if infinite {
        Part::Omega(XPart::from_prefix(prefix))
    } else {
        Part::Fin(prefix)
    }
}

/// `s ⊑_seg X`: every block of `s` is the trace on `dom(s)` of a block of
/// `X`. Equivalently, `X` restricted to `dom(s)` is `s`.
pub fn is_segment(s: &FinPart, x: &impl Partition) -> bool {
    if let Domain::Finite(m) = x.domain() {
        if s.dom() > m {
            return false;
        }
    }
    (0..s.dom()).all(|i| s.rgs[i] == x.block_of(i))
}

/// Searches for a finite partition `R` with `dom(R) ⊆ [0, bound)` such that
/// `R ⊓ P ⊑ Q`, trying domains `0, 1, ..., bound` and, within a domain,
/// partitions in rgs order. Returns the first witness.
pub fn almost_coarser_witness(p: &XPart, q: &XPart, bound: usize) -> Option<FinPart> {
    (0..=bound)
        .flat_map(all_finparts)
        .find(|r| is_coarser(&p.join_fin(r), q))
}

/// `P ⊑* Q` decided up to `bound`: some `R` with `dom(R) ⊆ [0, bound)`
/// satisfies `R ⊓ P ⊑ Q`.
///
/// Coarser `R` only make `R ⊓ P` coarser, so it suffices to try the single
/// block on `[0, bound)`. [`almost_coarser_witness`] performs the
/// exhaustive search and returns the least witness instead.
pub fn is_almost_coarser(p: &XPart, q: &XPart, bound: usize) -> bool {
    is_coarser(&p.join_fin(&FinPart::single_block(bound)), q)
}

/// `P ≈ Q` up to `bound`: almost coarser in both directions.
pub fn is_almost_equal(p: &XPart, q: &XPart, bound: usize) -> bool {
    is_almost_coarser(p, q, bound) && is_almost_coarser(q, p, bound)
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut i: usize) -> usize {
        let mut root = i;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[i] != root {
            let next = self.parent[i];
            self.parent[i] = root;
            i = next;
        }
        root
    }

    /// Links the larger root below the smaller one, so roots are block minima.
    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

fn write_blocks(f: &mut fmt::Formatter<'_>, p: &FinPart) -> fmt::Result {
    write!(f, "[")?;
    for (k, block) in p.blocks().iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "[")?;
        for (j, i) in block.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "]")?;
    }
    write!(f, "]")
}

impl fmt::Display for FinPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, self)
    }
}

impl fmt::Debug for FinPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinPart{self}")
    }
}

impl fmt::Display for XPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_blocks(f, &self.prefix)?;
        write!(f, "+ω")
    }
}

impl fmt::Debug for XPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XPart{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct RgsRepr {
    rgs: Vec<usize>,
}

impl Serialize for FinPart {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RgsRepr { rgs: self.rgs.clone() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinPart {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RgsRepr::deserialize(deserializer)?;
        FinPart::new(repr.rgs).map_err(serde::de::Error::custom)
    }
}

const TAIL_MARKER: &str = "singletons";

#[derive(Serialize, Deserialize)]
struct XPartRepr {
    prefix: RgsRepr,
    tail: String,
}

impl Serialize for XPart {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        XPartRepr { prefix: RgsRepr { rgs: self.prefix.rgs.clone() }, tail: TAIL_MARKER.into() }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for XPart {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = XPartRepr::deserialize(deserializer)?;
        if repr.tail != TAIL_MARKER {
            return Err(serde::de::Error::custom(PartitionError::UnknownTail(repr.tail)));
        }
        let prefix = FinPart::new(repr.prefix.rgs).map_err(serde::de::Error::custom)?;
        Ok(XPart::from_prefix(prefix))
    }
}
