//! Switching between reals and partitions.
//!
//! A real is a set of naturals; here it is a finite set together with a
//! cutoff beyond which nothing is known. Unordered pairs `{n, m}` are coded
//! by the triangular bijection `♭({n, m}) = m(m-1)/2 + n` for `n < m`.
//!
//! * [`trans`] closes the relation coded by a real under chains,
//! * [`cp`] reads the closed relation as a partition,
//! * [`pc`] writes the intra-block pairs of a partition as a real.
//!
//! `trans` is relative to the cutoff: chains run only through pairs whose
//! codes are visible, and closure pairs coded at or past the cutoff are
//! dropped.

use crate::partition::{Dsu, FinPart, Partition, XPart};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("diagonal pair {{{0}, {0}}} has no code")]
    Diagonal(usize),
    #[error("truncation error: decoding [0, {m}) needs cutoff ≥ {needed}, got {cutoff}")]
    Truncation { m: usize, needed: usize, cutoff: usize },
    #[error("element {element} is not below the cutoff {cutoff}")]
    OutOfCutoff { element: usize, cutoff: usize },
}

/// A real `x ⊆ ω` known on `[0, cutoff)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RealSetRepr")]
pub struct RealSet {
    elements: BTreeSet<usize>,
    cutoff: usize,
}

#[derive(Deserialize)]
struct RealSetRepr {
    elements: Vec<usize>,
    cutoff: usize,
}

impl TryFrom<RealSetRepr> for RealSet {
    type Error = CodecError;

    fn try_from(repr: RealSetRepr) -> Result<Self, CodecError> {
        RealSet::new(repr.elements, repr.cutoff)
    }
}

impl RealSet {
    pub fn new(elements: impl IntoIterator<Item = usize>, cutoff: usize) -> Result<Self, CodecError> {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&element) = elements.iter().find(|&&e| e >= cutoff) {
            return Err(CodecError::OutOfCutoff { element, cutoff });
        }
        Ok(RealSet { elements, cutoff })
    }

    pub fn empty(cutoff: usize) -> Self {
        RealSet { elements: BTreeSet::new(), cutoff }
    }

    pub fn elements(&self) -> &BTreeSet<usize> {
        &self.elements
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn contains(&self, k: usize) -> bool {
        self.elements.contains(&k)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_subset(&self, other: &RealSet) -> bool {
        self.elements.is_subset(&other.elements)
    }

    /// Whether `trans(x) = x`.
    pub fn is_transitive(&self) -> bool {
        trans(self) == *self
    }
}

/// `♭({n, m})`.
pub fn pair_code(n: usize, m: usize) -> Result<usize, CodecError> {
    match n.cmp(&m) {
        std::cmp::Ordering::Equal => Err(CodecError::Diagonal(n)),
        std::cmp::Ordering::Less => Ok(m * (m - 1) / 2 + n),
        std::cmp::Ordering::Greater => Ok(n * (n - 1) / 2 + m),
    }
}

/// Inverse of [`pair_code`], returning the pair in increasing order.
pub fn pair_decode(k: usize) -> (usize, usize) {
    // largest m with m(m-1)/2 ≤ k
    let mut m = ((((8 * k + 1) as f64).sqrt() + 1.0) / 2.0) as usize;
    while m * (m - 1) / 2 > k {
        m -= 1;
    }
    while (m + 1) * m / 2 <= k {
        m += 1;
    }
    (k - m * (m - 1) / 2, m)
}

/// Least `n` such that every pair with a code below `cutoff` lies in `[0, n)`.
fn support_len(cutoff: usize) -> usize {
    if cutoff == 0 {
        return 0;
    }
    pair_decode(cutoff - 1).1 + 1
}

/// Smallest cutoff under which every pair inside `[0, m)` is visible.
pub fn cutoff_for(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Components of the pair graph of `x` on at least `[0, len)`.
fn components(x: &RealSet, len: usize) -> Dsu {
    let mut dsu = Dsu::new(support_len(x.cutoff).max(len));
    for &k in &x.elements {
        let (n, m) = pair_decode(k);
        dsu.union(n, m);
    }
    dsu
}

/// `trans(x)`: codes below the cutoff of all pairs joined by a chain of
/// pairs coded in `x`.
pub fn trans(x: &RealSet) -> RealSet {
    let mut dsu = components(x, 0);
    let elements = (0..x.cutoff)
        .filter(|&k| {
            let (n, m) = pair_decode(k);
            dsu.find(n) == dsu.find(m)
        })
        .collect();
    RealSet { elements, cutoff: x.cutoff }
}

/// `cp(x)` on `[0, m)`: `n ∼ m` iff `n = m` or `♭(n, m) ∈ trans(x)`.
pub fn cp(x: &RealSet, m: usize) -> Result<FinPart, CodecError> {
    let needed = cutoff_for(m);
    if x.cutoff < needed {
        return Err(CodecError::Truncation { m, needed, cutoff: x.cutoff });
    }
    let mut dsu = components(x, m);
    let labels: Vec<usize> = (0..m).map(|i| dsu.find(i)).collect();
    Ok(FinPart::from_labels(&labels))
}

/// `cp(x)` read as an infinite partition that is singleton from `m` on.
pub fn cp_xpart(x: &RealSet, m: usize) -> Result<XPart, CodecError> {
    cp(x, m).map(XPart::from_prefix)
}

/// `pc(X)`: codes below `cutoff` of all pairs inside a block of `X`.
pub fn pc(x: &impl Partition, cutoff: usize) -> RealSet {
    let domain = x.domain();
    let elements = (0..cutoff)
        .filter(|&k| {
            let (n, m) = pair_decode(k);
            domain.contains(m) && x.related(n, m)
        })
        .collect();
    RealSet { elements, cutoff }
}

/// The first `count` elements of `Min(X)` as a real.
pub fn min_real(x: &XPart, count: usize) -> BTreeSet<usize> {
    x.min_set(count).into_iter().collect()
}
