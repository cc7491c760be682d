//! Hales–Jewett in the language of partitions.
//!
//! With `s` the partition of `[0, d)` into singletons, the partitions `u` of
//! `[0, d + h)` with `s ⊑_seg u` and `|u| = d` are the words of length `h`
//! over an alphabet of `d` letters (each extra point joins one `s`-block),
//! and those with `|u| = d + 1` are the combinatorial lines (the extra block
//! collects the moving coordinates). The points of a line `u` are `(u)^(0)_(s)`.

use super::RamseyError;
use crate::partition::{inner_segments, is_segment, FinPart};
use std::collections::HashMap;

/// Whether every `colors`-colouring of the words of length `h` over an
/// alphabet of size `alphabet` has a monochromatic line, by exhaustive search.
pub fn hj_holds(alphabet: usize, colors: usize, h: usize) -> bool {
    let s = FinPart::singletons(alphabet);
    let t = FinPart::singletons(alphabet + h);
    let words = inner_segments(&t, &s, 0);
    let index: HashMap<&FinPart, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    // lines grouped by their last point, so each is checked once fully coloured
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); words.len()];
    for line in inner_segments(&t, &s, 1) {
        let mut points: Vec<usize> = inner_segments(&line, &s, 0).iter().map(|p| index[p]).collect();
        points.sort_unstable();
        let last = *points.last().expect("lines have points");
        closing[last].push(points);
    }
    if closing.iter().all(Vec::is_empty) {
        return false;
    }
    !has_line_free_coloring(&closing, colors, &mut Vec::with_capacity(words.len()), 0)
}

/// Backtracking over colourings in which colours appear in order of first
/// use (renaming colours does not change which lines are monochromatic).
fn has_line_free_coloring(closing: &[Vec<Vec<usize>>], colors: usize, coloring: &mut Vec<usize>, used: usize) -> bool {
    let i = coloring.len();
    if i == closing.len() {
        return true;
    }
    for c in 0..colors.min(used + 1) {
        coloring.push(c);
        let ok = closing[i].iter().all(|line| line.iter().any(|&p| coloring[p] != c));
        if ok && has_line_free_coloring(closing, colors, coloring, used.max(c + 1)) {
            return true;
        }
        coloring.pop();
    }
    false
}

/// `HJ(alphabet, colors)`: the least `h ≤ h_max` with [`hj_holds`].
pub fn hj_number(alphabet: usize, colors: usize, h_max: usize) -> Option<usize> {
    (1..=h_max).find(|&h| hj_holds(alphabet, colors, h))
}

/// The colouring from the extraction step: with `s_0, ..., s_{d-1}` the
/// elements of `(s̄)^(0)_(s)`, a word `u` of `v` gets colour `i` when
/// `s_i ⊑_seg u` and `u ∈ D`, and colour `d` when `u ∉ D`.
pub fn lemma_coloring(
    s_bar: &FinPart,
    s: &FinPart,
    v: &FinPart,
    d: &dyn Fn(&FinPart) -> bool,
) -> Result<Vec<(FinPart, usize)>, RamseyError> {
    check_shape(s_bar, s, v)?;
    let letters = inner_segments(s_bar, s, 0);
    Ok(inner_segments(v, s, 0)
        .into_iter()
        .map(|u| {
            let c = if d(&u) {
                let trace = u.restrict(s_bar.dom());
                letters.iter().position(|l| *l == trace).expect("trace is a letter")
            } else {
                letters.len()
            };
            (u, c)
        })
        .collect())
}

/// The first line `t̄ ∈ (v)^(1)_(s)` none of whose points gets the colour
/// `d` reserved for words outside `D`, i.e. with `(t̄)^(0)_(s) ⊆ D`.
pub fn hj_extract(
    s_bar: &FinPart,
    s: &FinPart,
    v: &FinPart,
    d: &dyn Fn(&FinPart) -> bool,
) -> Result<Option<FinPart>, RamseyError> {
    let outside = inner_segments(s_bar, s, 0).len();
    let colors: HashMap<FinPart, usize> = lemma_coloring(s_bar, s, v, d)?.into_iter().collect();
    let found = inner_segments(v, s, 1)
        .into_iter()
        .find(|line| inner_segments(line, s, 0).iter().all(|p| colors[p] != outside));
    if let Some(line) = &found {
        assert!(inner_segments(line, s, 0).iter().all(d), "extracted line leaves D");
    }
    Ok(found)
}

fn check_shape(s_bar: &FinPart, s: &FinPart, v: &FinPart) -> Result<(), RamseyError> {
    if !is_segment(s, s_bar) {
        return Err(RamseyError::Shape("s must be a segment of s̄"));
    }
    if !is_segment(s_bar, v) {
        return Err(RamseyError::Shape("s̄ must be a segment of v"));
    }
    Ok(())
}
