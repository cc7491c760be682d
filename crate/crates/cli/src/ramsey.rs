use crate::cache::Cache;
use crate::input;
use crate::report::{write_atomic, OracleCheck};
use crate::{Ctx, Done};
use anyhow::{Context, Result};
use clap::Subcommand;
use dualramsey::oracle;
use dualramsey::partition::inner_segments;
use dualramsey::ramsey::{
    check_min_lift, dual_ramsey_witness, hj_extract, hj_number, planted_coloring, verify_witness,
    Coloring, SetColoring, Witness,
};
use dualramsey::{FinPart, XPart};
use serde_json::json;
use std::path::PathBuf;

#[derive(Subcommand)]
pub enum Cmd {
    /// A Y ⊑ X, with s ⊑_seg Y, on whose segment set the colouring is constant.
    Witness {
        /// Colouring document: {s, arity, dom_bound, colors, table}.
        #[arg(long)]
        coloring: String,
        #[arg(long, default_value = "omega")]
        x: String,
        /// Least number of blocks of Y on [0, dom_bound).
        #[arg(long, default_value_t = 0)]
        target_blocks: usize,
    },
    /// The colouring u ↦ [u* ⊑ Z] of (s, ω)^(arity) within --dom-bound.
    Plant {
        #[arg(long, default_value = "[]")]
        s: String,
        #[arg(long)]
        z: String,
        #[arg(long)]
        arity: usize,
        /// Also write the colouring document here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// The least h ≤ h-max such that every colouring of alphabet^h has a
    /// monochromatic combinatorial line.
    Hj {
        #[arg(long)]
        alphabet: usize,
        #[arg(long)]
        colors: usize,
        #[arg(long, default_value_t = 3)]
        h_max: usize,
    },
    /// A line of v over s all of whose points lie in D.
    Extract {
        #[arg(long)]
        s_bar: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        v: String,
        /// JSON list of partitions forming D.
        #[arg(long)]
        d: String,
    },
    /// Checks the Min lift of a colouring of n-sets against X.
    Lift {
        /// Set colouring document: {n, bound, colors, table}.
        #[arg(long)]
        tau: String,
        #[arg(long, default_value = "omega")]
        x: String,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Witness { .. } => "witness",
            Cmd::Plant { .. } => "plant",
            Cmd::Hj { .. } => "hj",
            Cmd::Extract { .. } => "extract",
            Cmd::Lift { .. } => "lift",
        }
    }
}

pub fn run(cmd: &Cmd, ctx: &Ctx) -> Result<Done> {
    Ok(match cmd {
        Cmd::Witness { coloring, x, target_blocks } => witness(coloring, x, *target_blocks, ctx)?,
        Cmd::Plant { s, z, arity, save } => {
            let (s, z) = (input::fin(s)?, input::xpart(z)?);
            let pi = planted_coloring(&s, &z, *arity, ctx.scale.dom_bound);
            if let Some(path) = save {
                write_atomic(path, serde_json::to_string(&pi)?.as_bytes())
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            Done::new(json!({ "s": s, "Z": z, "arity": arity }), json!({ "segments": pi.table().len(), "coloring": pi }))
        }
        Cmd::Hj { alphabet, colors, h_max } => {
            let h = hj_number(*alphabet, *colors, *h_max);
            Done::new(json!({ "alphabet": alphabet, "colors": colors, "h_max": h_max }), json!({ "hj": h }))
                .with_oracle(ctx, || {
                    // exhaustive colourings only where there are at most 2^20
                    let feasible = |h: usize| {
                        let words = (*alphabet as f64).powi(h as i32);
                        words <= 64.0 && words * (*colors as f64).max(1.0).log2() <= 20.0
                    };
                    let range: Vec<usize> = (1..=*h_max).take_while(|&h| feasible(h)).collect();
                    let by_oracle = range.iter().find(|&&h| oracle::hj_holds(*alphabet, *colors, h)).copied();
                    let checked_to = range.last().copied().unwrap_or(0);
                    // beyond the feasible range the oracle cannot refute a larger value
                    let fast_cut = h.filter(|&v| v <= checked_to);
                    OracleCheck::holds(fast_cut == by_oracle, json!({ "fast": h, "oracle": by_oracle, "oracle_range": range }))
                })
        }
        Cmd::Extract { s_bar, s, v, d } => {
            let (s_bar, s, v) = (input::fin(s_bar)?, input::fin(s)?, input::fin(v)?);
            let d = input::fin_list(d)?;
            let in_d = |u: &FinPart| d.contains(u);
            let line = hj_extract(&s_bar, &s, &v, &in_d)?;
            Done::new(
                json!({ "s_bar": s_bar, "s": s, "v": v, "D": d }),
                json!({ "line": line.as_ref().map(|l| l.to_string()) }),
            )
            .with_oracle(ctx, || {
                let inside = |l: &FinPart| inner_segments(l, &s, 0).iter().all(|p| d.contains(p));
                let any = inner_segments(&v, &s, 1).into_iter().find(|l| inside(l));
                let agrees = match &line {
                    Some(l) => inside(l),
                    None => any.is_none(),
                };
                OracleCheck::holds(agrees, json!({ "fast": line, "oracle_first": any }))
            })
        }
        Cmd::Lift { tau, x } => {
            let tau: SetColoring = input::json_arg(tau)?;
            let x = input::xpart(x)?;
            let found = check_min_lift(&tau, &x, ctx.scale.dom_bound)?;
            let mut done = Done::new(json!({ "tau": tau, "X": x }), json!({ "counterexample": found }));
            done.counterexample = found.is_some();
            done
        }
    })
}

fn witness(coloring: &str, x: &str, target_blocks: usize, ctx: &Ctx) -> Result<Done> {
    let pi: Coloring = input::json_arg(coloring)?;
    let x = input::xpart(x)?;
    let bound = ctx.scale.dom_bound.min(pi.dom_bound);
    let (s, n) = (pi.s.clone(), pi.arity);
    let key = json!({ "coloring": pi, "X": x, "n_plus_k": n, "target_blocks": target_blocks, "dom_bound": bound });
    let acceptable = |w: &Witness| {
        verify_witness(&pi, &s, &x, n, bound, w) && w.y.restrict(bound).block_count() >= target_blocks
    };
    let cache = Cache::from_env();
    let mut status = None;
    let mut found = None;
    if let Some(cache) = &cache {
        match cache.load::<Witness>(&key) {
            Some(w) if acceptable(&w) => {
                status = Some("hit");
                found = Some(w);
            }
            Some(_) => status = Some("stale"),
            None => status = Some("miss"),
        }
    }
    if found.is_none() {
        found = dual_ramsey_witness(&pi, &s, &x, n, target_blocks, bound)?;
        if let (Some(cache), Some(w)) = (&cache, &found) {
            cache.store(&key, w);
        }
    }
    let outputs = json!({
        "dom_bound_used": bound,
        "found": found.is_some(),
        "Y": found.as_ref().map(|w| w.y.to_string()),
        "witness": found,
    });
    let inputs = json!({ "coloring": pi, "X": x, "target_blocks": target_blocks });
    let mut done = Done::new(inputs, outputs).with_oracle(ctx, || match &found {
        Some(w) => OracleCheck::holds(acceptable(w), json!({ "verified": "witness" })),
        None => {
            let missed = brute_witness(&pi, &s, &x, n, target_blocks, bound);
            OracleCheck::holds(missed.is_none(), json!({ "fast": null, "oracle": missed.map(|y| y.to_string()) }))
        }
    });
    done.cache = status;
    Ok(done)
}

/// Any `Y` the search should have found, by listing members and segments.
fn brute_witness(pi: &Coloring, s: &FinPart, x: &XPart, n: usize, target: usize, bound: usize) -> Option<XPart> {
    oracle::nbhd_members(s, x, bound).into_iter().find(|y| {
        let segments = oracle::segments(s, y, n, bound);
        y.restrict(bound).block_count() >= target
            && !segments.is_empty()
            && segments.iter().all(|u| pi.get(u).is_some() && pi.get(u) == pi.get(&segments[0]))
    })
}
