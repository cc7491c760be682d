//! Brute-force reference implementations, kept deliberately naive: pairwise
//! definitions, fixpoints and exhaustive enumeration. They share only the
//! partition types with the rest of the crate and exist to cross-check the
//! fast paths in tests and behind the CLI's `--oracle` flag.

use crate::codec::{pair_decode, RealSet};
use crate::filters::FilterBase;
use crate::forcing::Nbhd;
use crate::game::{Move, Rule};
use crate::partition::{Domain, FinPart, Part, Partition, XPart};

fn rel(p: &(impl Partition + ?Sized), i: usize, j: usize) -> bool {
    p.block_of(i) == p.block_of(j)
}

/// Points on which a relation between `p` and `q` must be checked: the
/// common domain, or for two infinite partitions one point past both
/// stored prefixes.
fn window(p: &impl Partition, q: &impl Partition) -> usize {
    match (p.domain(), q.domain()) {
        (Domain::Finite(a), Domain::Finite(b)) => a.min(b),
        (Domain::Finite(a), Domain::Omega) => a,
        (Domain::Omega, Domain::Finite(b)) => b,
        (Domain::Omega, Domain::Omega) => p.explicit_len().max(q.explicit_len()) + 1,
    }
}

/// `P ⊑ Q` pair by pair: `Q`-related points are `P`-related.
pub fn is_coarser(p: &impl Partition, q: &impl Partition) -> bool {
    let w = window(p, q);
    (0..w).all(|i| (i + 1..w).all(|j| !rel(q, i, j) || rel(p, i, j)))
}

/// `s ⊑_seg X` pair by pair: on `dom(s)` the two relations coincide.
pub fn is_segment(s: &FinPart, x: &impl Partition) -> bool {
    if let Domain::Finite(m) = x.domain() {
        if s.dom() > m {
            return false;
        }
    }
    let m = s.dom();
    (0..m).all(|i| (i + 1..m).all(|j| rel(s, i, j) == rel(x, i, j)))
}

/// `P ⊓ Q` by relabelling to a fixpoint: every point takes the least label
/// among the points it is related to in either partition.
pub fn join(p: &impl Partition, q: &impl Partition) -> Part {
    let (len, infinite) = match (p.domain(), q.domain()) {
        (Domain::Finite(a), Domain::Finite(b)) => (a.max(b), false),
        _ => (p.explicit_len().max(q.explicit_len()), true),
    };
    let inside = |d: Domain, i: usize| d.contains(i);
    let mut label: Vec<usize> = (0..len).collect();
    loop {
        let mut changed = false;
        for i in 0..len {
            for j in 0..len {
                let linked = (inside(p.domain(), i) && inside(p.domain(), j) && rel(p, i, j))
                    || (inside(q.domain(), i) && inside(q.domain(), j) && rel(q, i, j));
                if linked && label[j] < label[i] {
                    label[i] = label[j];
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let prefix = FinPart::from_labels(&label);
    if infinite {
        Part::Omega(XPart::from_prefix(prefix))
    } else {
        Part::Fin(prefix)
    }
}

/// All partitions of `[0, m)`, generated as restricted growth strings.
pub fn partitions(m: usize) -> Vec<FinPart> {
    fn grow(rgs: &mut Vec<usize>, blocks: usize, m: usize, out: &mut Vec<FinPart>) {
        if rgs.len() == m {
            out.push(FinPart::new(rgs.clone()).expect("rgs by construction"));
            return;
        }
        for b in 0..=blocks {
            rgs.push(b);
            grow(rgs, blocks.max(b + 1), m, out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::with_capacity(m), 0, m, &mut out);
    out
}

/// Bell numbers from the Bell triangle.
pub fn bell(n: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty row")];
        for v in &row {
            next.push(next.last().expect("nonempty row") + v);
        }
        row = next;
    }
    row[0]
}

/// `u` followed by a fresh singleton block.
fn star(u: &FinPart) -> FinPart {
    let mut rgs = u.rgs().to_vec();
    rgs.push(u.block_count());
    FinPart::new(rgs).expect("appending a fresh block keeps the rgs")
}

/// `(s,X)^(n)` within `dom(u) ≤ dom_bound`, by filtering all partitions,
/// sorted.
pub fn segments(s: &FinPart, x: &XPart, n: usize, dom_bound: usize) -> Vec<FinPart> {
    let mut out: Vec<FinPart> = (0..=dom_bound)
        .flat_map(partitions)
        .filter(|u| u.block_count() == n && is_segment(s, u) && is_coarser(&star(u), x))
        .collect();
    out.sort();
    out
}

/// Members of `(s,Y)` with prefix inside `[0, bound)`, sorted.
pub fn nbhd_members(s: &FinPart, y: &XPart, bound: usize) -> Vec<XPart> {
    let mut out: Vec<XPart> = partitions(bound)
        .into_iter()
        .map(XPart::from_prefix)
        .filter(|z| is_segment(s, z) && is_coarser(z, y))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `(s,X) ⊆ (t,Y)` compared on members with prefix inside `[0, bound)`.
pub fn leq(c1: &Nbhd, c2: &Nbhd, bound: usize) -> bool {
    let inner = nbhd_members(&c2.s, &c2.x, bound);
    nbhd_members(&c1.s, &c1.x, bound).iter().all(|z| inner.binary_search(z).is_ok())
}

/// Membership in the filter generated by `base`, straight from its members:
/// `Y ∈ F` iff `Y` refines the fixpoint join of all of them.
pub fn member(base: &FilterBase, y: &XPart) -> bool {
    let mut j = XPart::omega();
    for m in base.members() {
        j = match join(&j, m) {
            Part::Omega(x) => x,
            Part::Fin(_) => unreachable!("joins of infinite partitions are infinite"),
        };
    }
    is_coarser(&j, y)
}

/// Whether every `colors`-colouring of `alphabet^h` has a monochromatic
/// combinatorial line, over words as plain vectors.
pub fn hj_holds(alphabet: usize, colors: usize, h: usize) -> bool {
    let words: Vec<Vec<usize>> = tuples(alphabet, h);
    let lines: Vec<Vec<usize>> = tuples(alphabet + 1, h)
        .into_iter()
        .filter(|l| l.contains(&alphabet))
        .map(|l| {
            (0..alphabet)
                .map(|a| {
                    let w: Vec<usize> = l.iter().map(|&c| if c == alphabet { a } else { c }).collect();
                    words.iter().position(|v| *v == w).expect("instances are words")
                })
                .collect()
        })
        .collect();
    if lines.is_empty() || colors == 0 {
        return false;
    }
    let total = (colors as u128).pow(words.len() as u32);
    (0..total).all(|code| {
        let mut rest = code;
        let coloring: Vec<usize> = (0..words.len())
            .map(|_| {
                let c = (rest % colors as u128) as usize;
                rest /= colors as u128;
                c
            })
            .collect();
        lines.iter().any(|l| l.iter().all(|&p| coloring[p] == coloring[l[0]]))
    })
}

fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (0..base).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect()
    })
}

/// `cp(x)` on `[0, m)` by graph reachability over the decoded pairs.
pub fn cp(x: &RealSet, m: usize) -> FinPart {
    let edges: Vec<(usize, usize)> = x.elements().iter().map(|&k| pair_decode(k)).collect();
    let points = edges.iter().map(|&(_, b)| b + 1).max().unwrap_or(0).max(m);
    let mut label: Vec<usize> = (0..points).collect();
    loop {
        let mut changed = false;
        for &(a, b) in &edges {
            let low = label[a].min(label[b]);
            for v in [a, b] {
                if label[v] != low {
                    label[v] = low;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    FinPart::from_labels(&label[..m])
}

/// Replays a transcript against the rules, each checked by the pairwise
/// predicates above. Returns the index of the first illegal move and the
/// rule it breaks.
pub fn validate_transcript(base: &FilterBase, moves: &[Move]) -> Result<(), (usize, Rule)> {
    let mut last_t: Option<&FinPart> = None;
    let mut last_y: Option<&XPart> = None;
    let mut last_x: Option<&XPart> = None;
    for (i, mv) in moves.iter().enumerate() {
        let fail = |rule| Err((i, rule));
        match (i % 2, mv) {
            (0, Move::One { t, y }) => {
                if !member(base, y) {
                    return fail(Rule::YInFilter);
                }
                if !is_coarser(&star(t), y) {
                    return fail(Rule::StarCoarserY);
                }
                if let (Some(prev), Some(x)) = (last_t, last_x) {
                    if !is_segment(&star(prev), &star(t)) {
                        return fail(Rule::StarSegChain);
                    }
                    if !is_coarser(&star(t), x) {
                        return fail(Rule::StarCoarserX);
                    }
                    if t.block_count() != prev.block_count() + 1 {
                        return fail(Rule::BlockIncrement);
                    }
                }
                last_t = Some(t);
                last_y = Some(y);
            }
            (1, Move::Two { x }) => {
                let (t, y) = (last_t.expect("odd index"), last_y.expect("odd index"));
                if !member(base, x) {
                    return fail(Rule::XInFilter);
                }
                if !(is_segment(&star(t), x) && is_coarser(x, y)) {
                    return fail(Rule::XInNbhd);
                }
                last_x = Some(x);
            }
            _ => return fail(Rule::Turn),
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let expected = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in expected.iter().enumerate() {
            assert_eq!(bell(n), b);
            if n <= 7 {
                assert_eq!(partitions(n).len() as u128, b);
            }
        }
    }

    #[test]
    fn hales_jewett_by_brute_force() {
        assert!(hj_holds(1, 3, 1));
        assert!(!hj_holds(2, 2, 1));
        assert!(hj_holds(2, 2, 2));
        assert!(!hj_holds(2, 3, 2));
        assert!(hj_holds(2, 3, 3));
    }

    #[test]
    fn cp_follows_chains_outside_the_window() {
        // 0 ∼ 3 and 3 ∼ 1, so 0 ∼ 1 on [0, 2)
        let x = RealSet::new([3 * 2 / 2, 3 * 2 / 2 + 1], 10).unwrap();
        assert_eq!(cp(&x, 2), FinPart::single_block(2));
    }
}
