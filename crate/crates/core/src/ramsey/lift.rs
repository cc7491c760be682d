use super::{full_domain, Coloring, RamseyError};
use crate::partition::{enumerate_segments, FinPart, XPart};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A colouring `τ` of the `n`-element subsets of `[1, bound)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SetColoringRepr", into = "SetColoringRepr")]
pub struct SetColoring {
    pub n: usize,
    pub bound: usize,
    pub colors: usize,
    table: BTreeMap<Vec<usize>, usize>,
}

#[derive(Clone, Serialize, Deserialize)]
struct SetColoringRepr {
    n: usize,
    bound: usize,
    colors: usize,
    table: Vec<(Vec<usize>, usize)>,
}

impl TryFrom<SetColoringRepr> for SetColoring {
    type Error = String;

    fn try_from(repr: SetColoringRepr) -> Result<Self, String> {
        for (set, c) in &repr.table {
            let sorted = set.windows(2).all(|w| w[0] < w[1]);
            if set.len() != repr.n || !sorted || set.first() == Some(&0) || *c >= repr.colors {
                return Err(format!("bad entry {set:?} ↦ {c}"));
            }
        }
        Ok(SetColoring { n: repr.n, bound: repr.bound, colors: repr.colors, table: repr.table.into_iter().collect() })
    }
}

impl From<SetColoring> for SetColoringRepr {
    fn from(tau: SetColoring) -> Self {
        SetColoringRepr { n: tau.n, bound: tau.bound, colors: tau.colors, table: tau.table.into_iter().collect() }
    }
}

impl SetColoring {
    pub fn from_fn(n: usize, bound: usize, colors: usize, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        let mut table = BTreeMap::new();
        for_each_subset(1, bound, n, &mut Vec::new(), &mut |set| {
            let c = f(set);
            assert!(c < colors, "colour {c} out of range");
            table.insert(set.to_vec(), c);
        });
        SetColoring { n, bound, colors, table }
    }

    pub fn get(&self, set: &[usize]) -> Result<usize, RamseyError> {
        self.table.get(set).copied().ok_or_else(|| RamseyError::SetUndefined(set.to_vec()))
    }
}

fn for_each_subset(lo: usize, hi: usize, n: usize, acc: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if acc.len() == n {
        f(acc);
        return;
    }
    for v in lo..hi {
        acc.push(v);
        for_each_subset(v + 1, hi, n, acc, f);
        acc.pop();
    }
}

/// `Min(u*) \ {0}`.
pub fn min_key(u: &FinPart) -> Vec<usize> {
    u.star().min_set().into_iter().skip(1).collect()
}

/// `π(u) = τ(Min(u*) \ {0})` on `(ω)^(n)` within `dom_bound`, which needs
/// `τ` on subsets of `[1, dom_bound]`.
pub fn min_coloring_lift(tau: &SetColoring, dom_bound: usize) -> Result<Coloring, RamseyError> {
    let mut table = BTreeMap::new();
    for u in full_domain(&FinPart::empty(), tau.n, dom_bound) {
        let c = tau.get(&min_key(&u))?;
        table.insert(u, c);
    }
    Coloring::new(FinPart::empty(), tau.n, dom_bound, tau.colors, table)
}

/// Two `n`-subsets of `Min(X) \ {0}` with different colours although the
/// lift is constant on `(X)^(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftCounterexample {
    pub x: XPart,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// If the lift of `τ` is constant on `(X)^(n)` within `dom_bound`, then `τ`
/// must be constant on the `n`-subsets of `Min(X) \ {0}` up to `dom_bound`.
/// Each such set `A` is `Min(u*) \ {0}` for the `u ∈ (X)^(n)` with
/// `dom(u) = max A` whose blocks start at `0` and the rest of `A`.
pub fn check_min_lift(
    tau: &SetColoring,
    x: &XPart,
    dom_bound: usize,
) -> Result<Option<LiftCounterexample>, RamseyError> {
    let pi = min_coloring_lift(tau, dom_bound)?;
    let segments = enumerate_segments(&FinPart::empty(), x, tau.n, dom_bound);
    let colors: Vec<usize> = segments.iter().map(|u| pi.color(u)).collect::<Result<_, _>>()?;
    if colors.windows(2).any(|w| w[0] != w[1]) {
        return Ok(None);
    }
    let mins: Vec<usize> = x.min_set(dom_bound + 1).into_iter().filter(|&m| m >= 1 && m <= dom_bound).collect();
    let mut first: Option<(Vec<usize>, usize)> = None;
    let mut found = None;
    let mut visit = |set: &[usize]| {
        if found.is_some() {
            return;
        }
        let a: Vec<usize> = set.iter().map(|&i| mins[i]).collect();
        let c = match tau.get(&a) {
            Ok(c) => c,
            Err(_) => return,
        };
        match &first {
            None => first = Some((a, c)),
            Some((b, d)) if *d != c => found = Some(LiftCounterexample { x: x.clone(), a: b.clone(), b: a }),
            Some(_) => {}
        }
    };
    for_each_subset(0, mins.len(), tau.n, &mut Vec::new(), &mut visit);
    Ok(found)
}
