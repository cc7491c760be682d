//! Density of sets of finite partitions below a neighbourhood, relative to
//! the filter `F`. With `F` finite, the quantifier over `Y ∈ F` is exact.

use crate::filters::FilterBase;
use crate::forcing::{nbhd_contains, Nbhd};
use crate::partition::{inner_segments_x, star_segments, FinPart, XPart};

fn below<'a>(t: &'a FinPart, x: &'a XPart, base: &'a FilterBase) -> impl Iterator<Item = &'a XPart> + 'a {
    let c = Nbhd::new(t.clone(), x.clone());
    base.elements().iter().filter(move |y| nbhd_contains(&c, y))
}

/// The first `Y ∈ (t,X) ∩ F` with no `u` satisfying `t ⊑_seg u* ⊑ Y`,
/// `dom(u) ≤ dom_bound` and `K(u)`.
pub fn dense_counterexample(
    k: &dyn Fn(&FinPart) -> bool,
    t: &FinPart,
    x: &XPart,
    base: &FilterBase,
    dom_bound: usize,
) -> Option<XPart> {
    below(t, x, base).find(|y| !star_segments(t, y, None, dom_bound).iter().any(k)).cloned()
}

/// Whether `K` is dense in `F` below `(t,X)`.
pub fn dense_in(k: &dyn Fn(&FinPart) -> bool, t: &FinPart, x: &XPart, base: &FilterBase, dom_bound: usize) -> bool {
    dense_counterexample(k, t, x, base, dom_bound).is_none()
}

/// The first `Y ∈ (t,X) ∩ F` for which `(t,Y)^(k*)_(s)` misses `D`.
pub fn k_dense_counterexample(
    d: &dyn Fn(&FinPart) -> bool,
    s: &FinPart,
    t: &FinPart,
    x: &XPart,
    k: usize,
    base: &FilterBase,
    dom_bound: usize,
) -> Option<XPart> {
    below(t, x, base).find(|y| !inner_segments_x(t, y, s, k, dom_bound).iter().any(d)).cloned()
}

/// Whether `D` is `k`-dense in `F` below `(t,X)` relative to `s`.
pub fn k_dense_in(
    d: &dyn Fn(&FinPart) -> bool,
    s: &FinPart,
    t: &FinPart,
    x: &XPart,
    k: usize,
    base: &FilterBase,
    dom_bound: usize,
) -> bool {
    k_dense_counterexample(d, s, t, x, k, base, dom_bound).is_none()
}
