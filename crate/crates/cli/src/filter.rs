use crate::input::{self, TreeArgs};
use crate::report::OracleCheck;
use crate::{Ctx, Done};
use anyhow::Result;
use clap::Subcommand;
use dualramsey::filters::{diagonalize_check, diagonalize_construct};
use dualramsey::forcing::LaverTree;
use dualramsey::oracle;
use dualramsey::ramsey::{maximality_probe, scp_falsify};
use dualramsey::{FinPart, XPart};
use serde_json::json;

#[derive(Subcommand)]
pub enum Cmd {
    /// Whether Y belongs to the filter generated by the base.
    Member {
        #[arg(long)]
        base: String,
        #[arg(long)]
        y: String,
    },
    /// All elements of the generated filter.
    Elements {
        #[arg(long)]
        base: String,
    },
    /// Hunts for a colouring of (s,X)^(n+k) no filter element makes
    /// monochromatic; exit 1 when one is found.
    Scp {
        #[arg(long)]
        base: String,
        #[arg(long, default_value = "[]")]
        s: String,
        #[arg(long)]
        n_plus_k: usize,
        #[arg(long, default_value_t = 2)]
        colors: usize,
        /// Colourings tried per X when exhaustive search is too large.
        #[arg(long, default_value_t = 256)]
        trials: usize,
    },
    /// Colours (ω)^(n) by membership in (X)^(n) and looks for a
    /// monochromatic filter element.
    Probe {
        #[arg(long)]
        base: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        n: usize,
    },
    /// A filter element that is a branch of the tree.
    Diagonalize {
        #[arg(long)]
        base: String,
        #[command(flatten)]
        tree: TreeArgs,
    },
    /// Builds a branch of the tree almost coarser than Y.
    Construct {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        y: String,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Member { .. } => "member",
            Cmd::Elements { .. } => "elements",
            Cmd::Scp { .. } => "scp",
            Cmd::Probe { .. } => "probe",
            Cmd::Diagonalize { .. } => "diagonalize",
            Cmd::Construct { .. } => "construct",
        }
    }
}

fn shown(xs: &[XPart]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// The branch test by listing segments: every `t` with `stem* ⊑_seg t`,
/// `t* ⊑ X` and `|stem| < |t| ≤ |stem| + depth` is a node, and
/// `stem* ⊑ X`.
pub fn brute_branch(x: &XPart, p: &LaverTree) -> bool {
    let nodes = p.nodes();
    let start = p.stem.star();
    oracle::is_coarser(&start, x)
        && (1..=p.depth).all(|k| {
            oracle::segments(&start, x, p.stem.block_count() + k, p.dom_bound)
                .iter()
                .all(|t| nodes.contains(t))
        })
}

pub fn run(cmd: &Cmd, ctx: &Ctx) -> Result<Done> {
    let bound = ctx.scale.dom_bound;
    Ok(match cmd {
        Cmd::Member { base, y } => {
            let (base, y) = (input::base(base)?, input::xpart(y)?);
            let verdict = base.member(&y);
            Done::new(json!({ "base": base, "Y": y }), json!({ "member": verdict }))
                .with_oracle(ctx, || OracleCheck::compare(&verdict, &oracle::member(&base, &y)))
        }
        Cmd::Elements { base } => {
            let base = input::base(base)?;
            let mut elements = base.elements().to_vec();
            elements.sort();
            let outputs = json!({
                "generator": base.generator().to_string(),
                "count": elements.len(),
                "elements": shown(&elements),
            });
            Done::new(json!({ "base": base }), outputs).with_oracle(ctx, || {
                let mut listed: Vec<XPart> = oracle::partitions(base.generator().prefix_len())
                    .into_iter()
                    .map(XPart::from_prefix)
                    .filter(|y| oracle::member(&base, y))
                    .collect();
                listed.sort();
                listed.dedup();
                OracleCheck::compare(&shown(&elements), &shown(&listed))
            })
        }
        Cmd::Scp { base, s, n_plus_k, colors, trials } => {
            let (base, s) = (input::base(base)?, input::fin(s)?);
            let found = scp_falsify(&base, &s, *n_plus_k, *colors, *trials, bound, ctx.scale.seed);
            let inputs = json!({ "base": base, "s": s, "n_plus_k": n_plus_k, "colors": colors, "trials": trials });
            let mut done = Done::new(inputs, json!({ "counterexample": found })).with_oracle(ctx, || match &found {
                Some(c) => {
                    let escaped = base.elements().iter().find(|y| {
                        let segments = oracle::segments(&s, y, *n_plus_k, bound);
                        oracle::is_segment(&s, *y)
                            && oracle::is_coarser(*y, &c.x)
                            && !segments.is_empty()
                            && segments.iter().all(|u| c.coloring.get(u) == c.coloring.get(&segments[0]))
                    });
                    OracleCheck::holds(escaped.is_none(), json!({ "monochromatic": escaped.map(|y| y.to_string()) }))
                }
                None => OracleCheck::holds(true, json!({ "verified": "nothing found" })),
            });
            done.counterexample = found.is_some();
            done
        }
        Cmd::Probe { base, x, n } => {
            let (base, x) = (input::base(base)?, input::xpart(x)?);
            let probe = maximality_probe(&base, &x, *n, bound);
            Done::new(json!({ "base": base, "X": x, "n": n }), json!({ "probe": probe }))
        }
        Cmd::Diagonalize { base, tree } => {
            let base = input::base(base)?;
            let p = tree.load(ctx.scale.depth, bound)?;
            let branch = diagonalize_check(&base, &p);
            let outputs = json!({ "branch": branch.as_ref().map(|x| x.to_string()), "X": branch });
            Done::new(json!({ "base": base, "tree": p }), outputs).with_oracle(ctx, || match &branch {
                Some(x) => OracleCheck::holds(oracle::member(&base, x) && brute_branch(x, &p), json!({ "verified": "branch" })),
                None => {
                    let missed = base.elements().iter().find(|x| brute_branch(x, &p));
                    OracleCheck::holds(missed.is_none(), json!({ "oracle": missed.map(|x| x.to_string()) }))
                }
            })
        }
        Cmd::Construct { tree, y } => {
            let p = tree.load(ctx.scale.depth, bound)?;
            let y = input::xpart(y)?;
            let built = diagonalize_construct(&p, &y, bound);
            let outputs = match &built {
                Ok(z) => json!({ "Z": z, "shown": z.to_string() }),
                Err(e) => json!({ "Z": null, "failure": e.to_string() }),
            };
            Done::new(json!({ "tree": p, "Y": y }), outputs).with_oracle(ctx, || match &built {
                Ok(z) => {
                    let reach = bound.max(z.prefix_len()).max(y.prefix_len());
                    // merging all of [0, reach) is the most any finite merge can do
                    let almost = oracle::is_coarser(&z.join_fin(&FinPart::single_block(reach)), &y);
                    let branch = brute_branch(z, &p);
                    OracleCheck::holds(almost && branch, json!({ "almost_coarser": almost, "branch": branch }))
                }
                Err(_) => OracleCheck::holds(true, json!({ "verified": "nothing built" })),
            })
        }
    })
}
