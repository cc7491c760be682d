use crate::input;
use crate::report::OracleCheck;
use crate::{Ctx, Done};
use anyhow::Result;
use clap::Subcommand;
use dualramsey::partition::{almost_coarser_witness, enumerate_segments};
use dualramsey::{is_coarser, is_segment, join, oracle, Part};
use serde_json::json;

#[derive(Subcommand)]
pub enum Cmd {
    /// The finest partition coarser than both.
    Join {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Whether P ⊑ Q.
    Coarser {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Whether P ⊑* Q, with the merging partition found below --dom-bound.
    Almost {
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Whether s ⊑_seg X.
    Segment {
        #[arg(long)]
        s: String,
        #[arg(long)]
        x: String,
    },
    /// The segment set (s,X)^(n) within --dom-bound.
    Segments {
        #[arg(long, default_value = "[]")]
        s: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: usize,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Join { .. } => "join",
            Cmd::Coarser { .. } => "coarser",
            Cmd::Almost { .. } => "almost",
            Cmd::Segment { .. } => "segment",
            Cmd::Segments { .. } => "segments",
        }
    }
}

pub fn show(p: &Part) -> String {
    match p {
        Part::Fin(p) => p.to_string(),
        Part::Omega(x) => x.to_string(),
    }
}

pub fn run(cmd: &Cmd, ctx: &Ctx) -> Result<Done> {
    Ok(match cmd {
        Cmd::Join { p, q } => {
            let (p, q) = (input::part(p)?, input::part(q)?);
            let j = join(&p, &q);
            Done::new(json!({ "p": p, "q": q }), json!({ "join": show(&j), "partition": j }))
                .with_oracle(ctx, || OracleCheck::compare(&j, &oracle::join(&p, &q)))
        }
        Cmd::Coarser { p, q } => {
            let (p, q) = (input::part(p)?, input::part(q)?);
            let verdict = is_coarser(&p, &q);
            Done::new(json!({ "p": p, "q": q }), json!({ "coarser": verdict }))
                .with_oracle(ctx, || OracleCheck::compare(&verdict, &oracle::is_coarser(&p, &q)))
        }
        Cmd::Almost { p, q } => {
            let (p, q) = (input::xpart(p)?, input::xpart(q)?);
            let bound = ctx.scale.dom_bound;
            let witness = almost_coarser_witness(&p, &q, bound);
            let outputs = json!({
                "almost_coarser": witness.is_some(),
                "merge": witness.as_ref().map(|r| r.to_string()),
            });
            // the merging partition must make P coarser outright
            Done::new(json!({ "p": p, "q": q }), outputs).with_oracle(ctx, || match &witness {
                Some(r) => {
                    let merged = p.join_fin(r);
                    OracleCheck::holds(oracle::is_coarser(&merged, &q), json!({ "merged": merged.to_string() }))
                }
                None => {
                    let found = oracle::partitions(bound)
                        .into_iter()
                        .find(|r| oracle::is_coarser(&p.join_fin(r), &q));
                    OracleCheck::holds(found.is_none(), json!({ "oracle_merge": found.map(|r| r.to_string()) }))
                }
            })
        }
        Cmd::Segment { s, x } => {
            let (s, x) = (input::fin(s)?, input::part(x)?);
            let verdict = is_segment(&s, &x);
            Done::new(json!({ "s": s, "X": x }), json!({ "segment": verdict }))
                .with_oracle(ctx, || OracleCheck::compare(&verdict, &oracle::is_segment(&s, &x)))
        }
        Cmd::Segments { s, x, n } => {
            let (s, x) = (input::fin(s)?, input::xpart(x)?);
            let bound = ctx.scale.dom_bound;
            let mut segments = enumerate_segments(&s, &x, *n, bound);
            segments.sort();
            let shown: Vec<String> = segments.iter().map(|u| u.to_string()).collect();
            Done::new(json!({ "s": s, "X": x, "n": n }), json!({ "count": segments.len(), "segments": shown }))
                .with_oracle(ctx, || OracleCheck::compare(&segments, &oracle::segments(&s, &x, *n, bound)))
        }
    })
}
