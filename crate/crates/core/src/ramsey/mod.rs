//! Colourings of segment sets and the searches built on them: dual Ramsey
//! witnesses, the lift of a colouring of `n`-sets along `Min`, finite
//! Hales–Jewett numbers and line extraction, and the segment colouring
//! property of filters.

mod hj;
mod lift;
mod scp;
mod witness;

pub use hj::{hj_extract, hj_holds, hj_number, lemma_coloring};
pub use lift::{check_min_lift, min_coloring_lift, min_key, LiftCounterexample, SetColoring};
pub use scp::{
    maximality_probe, scp_check_coloring, scp_falsify, ultra_coloring, MaximalityProbe,
    ScpCounterexample,
};
pub use witness::{dual_ramsey_witness, planted_coloring, verify_witness, Witness};

use crate::partition::{enumerate_segments, FinPart, XPart};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("coloring error: colour {color} of {u} is not below {colors}")]
    ColorOutOfRange { u: FinPart, color: usize, colors: usize },
    #[error("coloring error: no colour for {0}")]
    Partial(FinPart),
    #[error("coloring error: no colour for the set {0:?}")]
    SetUndefined(Vec<usize>),
    #[error("shape error: {0}")]
    Shape(&'static str),
}

/// A colouring `π` of segments `u` with `s ⊑_seg u`, `|u| = arity` and
/// `dom(u) ≤ dom_bound`, by colours `0..colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub s: FinPart,
    pub arity: usize,
    pub dom_bound: usize,
    pub colors: usize,
    table: BTreeMap<FinPart, usize>,
}

impl Coloring {
    pub fn new(
        s: FinPart,
        arity: usize,
        dom_bound: usize,
        colors: usize,
        table: BTreeMap<FinPart, usize>,
    ) -> Result<Self, RamseyError> {
        if let Some((u, &color)) = table.iter().find(|(_, &c)| c >= colors) {
            return Err(RamseyError::ColorOutOfRange { u: u.clone(), color, colors });
        }
        Ok(Coloring { s, arity, dom_bound, colors, table })
    }

    /// Colours all of `(s, ω)^(arity)` within the bound by `f`.
    pub fn from_fn(
        s: FinPart,
        arity: usize,
        dom_bound: usize,
        colors: usize,
        mut f: impl FnMut(&FinPart) -> usize,
    ) -> Result<Self, RamseyError> {
        let table = full_domain(&s, arity, dom_bound).into_iter().map(|u| {
            let c = f(&u);
            (u, c)
        });
        Coloring::new(s, arity, dom_bound, colors, table.collect())
    }

    pub fn constant(s: FinPart, arity: usize, dom_bound: usize, color: usize) -> Self {
        Coloring::from_fn(s, arity, dom_bound, color + 1, |_| color).expect("colour in range")
    }

    pub fn get(&self, u: &FinPart) -> Option<usize> {
        self.table.get(u).copied()
    }

    pub fn color(&self, u: &FinPart) -> Result<usize, RamseyError> {
        self.get(u).ok_or_else(|| RamseyError::Partial(u.clone()))
    }

    pub fn table(&self) -> &BTreeMap<FinPart, usize> {
        &self.table
    }

    /// Fails on the first segment of `(s,X)^(arity)` without a colour.
    pub fn check_total(&self, x: &XPart, dom_bound: usize) -> Result<(), RamseyError> {
        enumerate_segments(&self.s, x, self.arity, dom_bound)
            .iter()
            .try_for_each(|u| self.color(u).map(drop))
    }
}

/// `(s, ω)^(arity)` within the bound: every segment any `X` can ask about.
pub fn full_domain(s: &FinPart, arity: usize, dom_bound: usize) -> Vec<FinPart> {
    enumerate_segments(s, &XPart::omega(), arity, dom_bound)
}

#[derive(Serialize, Deserialize)]
struct ColoringRepr {
    s: FinPart,
    arity: usize,
    dom_bound: usize,
    colors: usize,
    table: Vec<(Vec<usize>, usize)>,
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ColoringRepr {
            s: self.s.clone(),
            arity: self.arity,
            dom_bound: self.dom_bound,
            colors: self.colors,
            table: self.table.iter().map(|(u, &c)| (u.rgs().to_vec(), c)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Coloring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ColoringRepr::deserialize(deserializer)?;
        let table = repr
            .table
            .into_iter()
            .map(|(rgs, c)| FinPart::new(rgs).map(|u| (u, c)))
            .collect::<Result<_, _>>()
            .map_err(serde::de::Error::custom)?;
        Coloring::new(repr.s, repr.arity, repr.dom_bound, repr.colors, table)
            .map_err(serde::de::Error::custom)
    }
}
