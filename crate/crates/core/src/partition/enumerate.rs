//! Finite enumerations over partitions: all partitions of `[0, m)`, the
//! segment sets `(s,X)^(n)`, the inner segment sets `(t)^(k)_(s)` and
//! `(t,X)^(k*)_(s)`, and bounded members of neighbourhoods.
//!
//! Every enumeration returns its results in rgs-lexicographic order.

use super::{is_coarser, is_segment, Domain, FinPart, Partition, XPart};

/// All partitions of `[0, m)` in rgs-lexicographic order (Bell(m) of them).
pub fn all_finparts(m: usize) -> impl Iterator<Item = FinPart> {
    AllFinParts { next: Some(vec![0; m]) }
}

struct AllFinParts {
    next: Option<Vec<usize>>,
}

impl Iterator for AllFinParts {
    type Item = FinPart;

    fn next(&mut self) -> Option<FinPart> {
        let current = self.next.take()?;
        let mut prefix_max = Vec::with_capacity(current.len());
        let mut max = 0;
        for &v in &current {
            max = max.max(v);
            prefix_max.push(max);
        }
        let mut succ = current.clone();
        for i in (1..succ.len()).rev() {
            if succ[i] <= prefix_max[i - 1] {
                succ[i] += 1;
                succ[i + 1..].iter_mut().for_each(|v| *v = 0);
                self.next = Some(succ);
                break;
            }
        }
        let blocks = current.iter().max().map_or(0, |m| m + 1);
        Some(FinPart::from_rgs_unchecked(current, blocks))
    }
}

/// All eventually-singleton partitions whose prefix fits in `[0, max_prefix)`.
pub fn all_xparts(max_prefix: usize) -> impl Iterator<Item = XPart> {
    all_finparts(max_prefix).map(XPart::from_prefix)
}

/// Depth-first walk over the rgs sequences that extend `start` and are
/// coarser than `reference` on their own domain, with at most `max_blocks`
/// blocks and length at most `max_len`, in lexicographic pre-order.
///
/// `visit(rgs, blocks, fresh)` sees every such sequence; `fresh` tells
/// whether position `rgs.len()` starts a new block of `reference` (so that
/// `u*` is coarser than `reference` as well).
pub(crate) fn coarsening_dfs<P: Partition + ?Sized>(
    start: &FinPart,
    reference: &P,
    max_blocks: usize,
    max_len: usize,
    visit: &mut dyn FnMut(&[usize], usize, bool),
) {
    let max_len = match reference.domain() {
        Domain::Finite(m) => max_len.min(m),
        Domain::Omega => max_len,
    };
    if start.dom() > max_len || start.block_count() > max_blocks {
        return;
    }
    let ref_len = match reference.domain() {
        Domain::Finite(m) => m,
        Domain::Omega => usize::MAX,
    };
    // earlier[i]: least j < i in the reference block of i
    let earlier: Vec<Option<usize>> = (0..=max_len)
        .map(|i| {
            if i >= ref_len {
                return None;
            }
            let b = reference.block_of(i);
            (0..i).find(|&j| reference.block_of(j) == b)
        })
        .collect();
    if (0..start.dom()).any(|i| earlier[i].is_some_and(|j| start.rgs()[j] != start.rgs()[i])) {
        return;
    }

    struct Walk<'a> {
        earlier: &'a [Option<usize>],
        max_blocks: usize,
        max_len: usize,
    }

    impl Walk<'_> {
        fn go(
            &self,
            rgs: &mut Vec<usize>,
            blocks: usize,
            visit: &mut dyn FnMut(&[usize], usize, bool),
        ) {
            let i = rgs.len();
            visit(rgs, blocks, self.earlier[i].is_none());
            if i == self.max_len {
                return;
            }
            match self.earlier[i] {
                Some(j) => {
                    rgs.push(rgs[j]);
                    self.go(rgs, blocks, visit);
                    rgs.pop();
                }
                None => {
                    for v in 0..=blocks {
                        if v == blocks && blocks == self.max_blocks {
                            break;
                        }
                        rgs.push(v);
                        self.go(rgs, blocks + usize::from(v == blocks), visit);
                        rgs.pop();
                    }
                }
            }
        }
    }

    let walk = Walk { earlier: &earlier, max_blocks, max_len };
    let mut rgs = start.rgs().to_vec();
    walk.go(&mut rgs, start.block_count(), visit);
}

/// `(s,X)^(n)` truncated to `dom(u) ≤ dom_bound`: all `u` with `|u| = n`,
/// `s ⊑_seg u` and `u* ⊑ X`. `(X)^(n)` is the case `s = ∅`.
pub fn enumerate_segments(s: &FinPart, x: &XPart, n: usize, dom_bound: usize) -> Vec<FinPart> {
    let mut out = Vec::new();
    if s.block_count() > n {
        return out;
    }
    coarsening_dfs(s, x, n, dom_bound, &mut |rgs, blocks, fresh| {
        if blocks == n && fresh {
            out.push(FinPart::from_rgs_unchecked(rgs.to_vec(), blocks));
        }
    });
    out
}

/// All `u` with `t ⊑_seg u*`, `u* ⊑ X` and `dom(u) ≤ dom_bound`, optionally
/// with exactly `blocks` blocks.
pub fn star_segments(
    t: &FinPart,
    x: &XPart,
    blocks: Option<usize>,
    dom_bound: usize,
) -> Vec<FinPart> {
    let mut out = Vec::new();
    // u = t minus its last element, when t ends in a fresh singleton
    if t.is_star() && t.dom() - 1 <= dom_bound && is_coarser(t, x) {
        let u = t.restrict(t.dom() - 1);
        if blocks.is_none_or(|b| b == u.block_count()) {
            out.push(u);
        }
    }
    let max_blocks = blocks.unwrap_or(usize::MAX);
    coarsening_dfs(t, x, max_blocks, dom_bound, &mut |rgs, count, fresh| {
        if fresh && blocks.is_none_or(|b| b == count) {
            out.push(FinPart::from_rgs_unchecked(rgs.to_vec(), count));
        }
    });
    out.sort();
    out
}

/// `(t)^(k)_(s)`: all `u` with `dom(u) = dom(t)`, `s ⊑_seg u ⊑ t` and
/// `|u| = |s| + k`. Empty unless `s ⊑_seg t`.
pub fn inner_segments(t: &FinPart, s: &FinPart, k: usize) -> Vec<FinPart> {
    let mut out = Vec::new();
    if !is_segment(s, t) {
        return out;
    }
    let target = s.block_count() + k;
    coarsening_dfs(s, t, target, t.dom(), &mut |rgs, blocks, _| {
        if rgs.len() == t.dom() && blocks == target {
            out.push(FinPart::from_rgs_unchecked(rgs.to_vec(), blocks));
        }
    });
    out
}

/// `(t,X)^(k*)_(s)` truncated to `dom(u) ≤ dom_bound`: all `u` with
/// `t ⊑_seg u* ⊑ X` and `|u| = |s| + k`.
pub fn inner_segments_x(
    t: &FinPart,
    x: &XPart,
    s: &FinPart,
    k: usize,
    dom_bound: usize,
) -> Vec<FinPart> {
    star_segments(t, x, Some(s.block_count() + k), dom_bound)
}

/// Members of the neighbourhood `(s,Y)` whose prefix fits in `[0, bound)`:
/// all `Z` with `s ⊑_seg Z ⊑ Y`, in rgs order of their traces on `[0, bound)`.
pub fn nbhd_members(s: &FinPart, y: &XPart, bound: usize) -> Vec<XPart> {
    let mut out = Vec::new();
    if y.prefix_len() > bound || s.dom() > bound {
        return out;
    }
    coarsening_dfs(s, y, usize::MAX, bound, &mut |rgs, blocks, _| {
        if rgs.len() == bound {
            out.push(XPart::from_prefix(FinPart::from_rgs_unchecked(rgs.to_vec(), blocks)));
        }
    });
    out
}

/// All `Y` with `J ⊑ Y`, i.e. every partition finer than `J`. Since `J` is
/// eventually singleton, so is every refinement, and there are finitely many.
pub fn refinements(j: &XPart) -> Vec<XPart> {
    fn go(j: &FinPart, rgs: &mut Vec<usize>, owner: &mut Vec<usize>, out: &mut Vec<XPart>) {
        let i = rgs.len();
        if i == j.dom() {
            out.push(XPart::from_prefix(FinPart::from_rgs_unchecked(rgs.clone(), owner.len())));
            return;
        }
        let jb = j.rgs()[i];
        for v in 0..=owner.len() {
            let fresh = v == owner.len();
            if !fresh && owner[v] != jb {
                continue;
            }
            rgs.push(v);
            if fresh {
                owner.push(jb);
            }
            go(j, rgs, owner, out);
            if fresh {
                owner.pop();
            }
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    go(j.prefix(), &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(blocks: &[&[usize]]) -> FinPart {
        FinPart::from_blocks(blocks.iter().map(|b| b.iter().copied())).unwrap()
    }

    fn xp(blocks: &[&[usize]]) -> XPart {
        XPart::from_blocks(blocks.iter().map(|b| b.iter().copied())).unwrap()
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=7).map(|m| all_finparts(m).count()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52, 203, 877]);
        let all: Vec<FinPart> = all_finparts(4).collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn segment_examples() {
        let got = enumerate_segments(&FinPart::empty(), &XPart::omega(), 1, 2);
        assert_eq!(got, vec![fp(&[&[0]]), fp(&[&[0, 1]])]);
        // n = 0 allows the empty partition only
        assert_eq!(enumerate_segments(&FinPart::empty(), &xp(&[&[0, 2]]), 0, 5), vec![FinPart::empty()]);
        let got = enumerate_segments(&fp(&[&[0]]), &xp(&[&[0], &[1]]), 1, 1);
        assert_eq!(got, vec![fp(&[&[0]])]);
    }

    #[test]
    fn segments_respect_x() {
        // X relates 0 and 2: any u of domain ≥ 3 merges them, and dom(u) = 2 is
        // excluded since 2 does not start an X-block
        let x = xp(&[&[0, 2], &[1]]);
        let got = enumerate_segments(&FinPart::empty(), &x, 2, 3);
        assert_eq!(got, vec![fp(&[&[0, 2], &[1]])]);
    }

    #[test]
    fn inner_segment_examples() {
        let t = fp(&[&[0, 1], &[2]]);
        assert_eq!(inner_segments(&t, &fp(&[&[0]]), 0), vec![fp(&[&[0, 1, 2]])]);
        assert_eq!(inner_segments(&t, &t, 0), vec![t.clone()]);
        assert_eq!(inner_segments(&fp(&[&[0], &[1]]), &FinPart::empty(), 1), vec![fp(&[&[0, 1]])]);
        // s must be a segment of t
        assert!(inner_segments(&t, &fp(&[&[0], &[1]]), 0).is_empty());
    }

    #[test]
    fn inner_segments_x_includes_star_predecessor() {
        // t = [[0],[1]] = [[0]]*, so u = [[0]] qualifies with u* = t
        let t = fp(&[&[0], &[1]]);
        let got = inner_segments_x(&t, &XPart::omega(), &fp(&[&[0]]), 0, 3);
        assert_eq!(got, vec![fp(&[&[0]])]);
        let got = inner_segments_x(&t, &XPart::omega(), &fp(&[&[0]]), 1, 3);
        assert_eq!(got, vec![fp(&[&[0], &[1]]), fp(&[&[0, 2], &[1]]), fp(&[&[0], &[1, 2]])]);
    }

    #[test]
    fn refinement_counts() {
        // J with blocks of sizes 3 and 2 has Bell(3) * Bell(2) refinements
        let j = xp(&[&[0, 1, 4], &[2, 3]]);
        let refs = refinements(&j);
        assert_eq!(refs.len(), 5 * 2);
        assert!(refs.iter().all(|y| is_coarser(&j, y)));
        assert!(refs.contains(&XPart::omega()));
        assert_eq!(refinements(&XPart::omega()), vec![XPart::omega()]);
    }

    #[test]
    fn nbhd_members_are_members() {
        let s = fp(&[&[0], &[1]]);
        let y = xp(&[&[0, 3], &[1], &[2]]);
        let members = nbhd_members(&s, &y, 4);
        assert!(!members.is_empty());
        for z in &members {
            assert!(is_segment(&s, z));
            assert!(is_coarser(z, &y));
        }
        // 2 may go to block 0, block 1 or stay alone; 3 is tied to 0
        assert_eq!(members.len(), 3);
    }
}
