use crate::filter::brute_branch;
use crate::input::{self, TreeArgs};
use crate::report::OracleCheck;
use crate::{Ctx, Done};
use anyhow::{bail, Result};
use clap::Subcommand;
use dualramsey::filters::FilterBase;
use dualramsey::forcing::{
    branch_check, classify, dense_embed, leq, uniformize, validate_condition, validate_laver, Classification,
    LaverTree, Nbhd, OpenSet,
};
use dualramsey::{oracle, FinPart, XPart};
use serde::Deserialize;
use serde_json::json;

#[derive(Subcommand)]
pub enum Cmd {
    /// Validates a condition (--cond) or a tree against a filter (--base).
    Validate {
        #[arg(long, conflicts_with_all = ["tree", "stem", "cu", "base"])]
        cond: Option<String>,
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        base: Option<String>,
    },
    /// Whether ⟨s,X⟩ ≤ ⟨t,Y⟩, i.e. (s,X) ⊆ (t,Y).
    Leq {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
    },
    /// Good, bad or ugly-and-bad for (s,X) against an open set.
    Classify {
        #[arg(long)]
        cond: String,
        /// {"nbhds":[...]} or a list of neighbourhoods.
        #[arg(long)]
        open: String,
        #[arg(long)]
        base: String,
    },
    /// The condition ⟨stem, cu⟩ of a tree that is uniform in effect.
    Embed {
        #[command(flatten)]
        tree: TreeArgs,
    },
    /// Whether X is a branch of the tree.
    Branch {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        x: String,
    },
    /// The uniform subtree with cu = X for a branch X.
    Uniformize {
        #[command(flatten)]
        tree: TreeArgs,
        #[arg(long)]
        x: String,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Validate { .. } => "validate",
            Cmd::Leq { .. } => "leq",
            Cmd::Classify { .. } => "classify",
            Cmd::Embed { .. } => "embed",
            Cmd::Branch { .. } => "branch",
            Cmd::Uniformize { .. } => "uniformize",
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OpenArg {
    Set(OpenSet),
    List(Vec<Nbhd>),
}

/// A bound at which listing members decides the order between `cs`.
fn listing_bound(cs: &[&Nbhd], floor: usize) -> usize {
    cs.iter().map(|c| c.s.dom().max(c.x.prefix_len())).max().unwrap_or(0).saturating_add(2).max(floor)
}

pub fn run(cmd: &Cmd, ctx: &Ctx) -> Result<Done> {
    let bound = ctx.scale.dom_bound;
    Ok(match cmd {
        Cmd::Validate { cond: Some(c), .. } => {
            let c: Nbhd = input::json_arg(c)?;
            let valid = validate_condition(&c, bound);
            let mut done = Done::new(json!({ "cond": c }), json!({ "valid": valid }))
                .with_oracle(ctx, || OracleCheck::compare(&valid, &!oracle::nbhd_members(&c.s, &c.x, bound).is_empty()));
            done.counterexample = !valid;
            done
        }
        Cmd::Validate { cond: None, tree, base } => {
            let Some(base) = base else { bail!("validating a tree needs --base") };
            let base = input::base(base)?;
            let p = tree.load(ctx.scale.depth, bound)?;
            let verdict = validate_laver(&p, &base).map_err(|v| v.to_string());
            let outputs = json!({ "valid": verdict.is_ok(), "violation": verdict.as_ref().err() });
            let mut done = Done::new(json!({ "tree": p, "base": base }), outputs)
                .with_oracle(ctx, || OracleCheck::compare(&verdict.is_ok(), &brute_laver(&p, &base)));
            done.counterexample = verdict.is_err();
            done
        }
        Cmd::Leq { c1, c2 } => {
            let (c1, c2): (Nbhd, Nbhd) = (input::json_arg(c1)?, input::json_arg(c2)?);
            let verdict = leq(&c1, &c2);
            Done::new(json!({ "c1": c1, "c2": c2 }), json!({ "leq": verdict })).with_oracle(ctx, || {
                let b = listing_bound(&[&c1, &c2], bound);
                let by_listing = oracle::leq(&c1, &c2, b);
                OracleCheck::holds(verdict == by_listing, json!({ "fast": verdict, "oracle": by_listing, "listing_bound": b }))
            })
        }
        Cmd::Classify { cond, open, base } => {
            let c: Nbhd = input::json_arg(cond)?;
            let o = match input::json_arg::<OpenArg>(open)? {
                OpenArg::Set(o) => o,
                OpenArg::List(l) => OpenSet::new(l),
            };
            let base = input::base(base)?;
            let class = classify(&c, &o, &base, bound)?;
            Done::new(json!({ "cond": c, "open": o, "base": base }), json!({ "classification": class }))
                .with_oracle(ctx, || OracleCheck::compare(&class_name(&class), &brute_class(&c, &o, &base, bound)))
        }
        Cmd::Embed { tree } => {
            let p = tree.load(ctx.scale.depth, bound)?;
            let embedded = dense_embed(&p);
            let outputs = match &embedded {
                Ok(c) => json!({ "condition": c }),
                Err(e) => json!({ "condition": null, "failure": e.to_string() }),
            };
            Done::new(json!({ "tree": p }), outputs).with_oracle(ctx, || {
                OracleCheck::compare(&embedded.is_ok(), &brute_uniform(&p))
            })
        }
        Cmd::Branch { tree, x } => {
            let p = tree.load(ctx.scale.depth, bound)?;
            let x = input::xpart(x)?;
            let check = branch_check(&x, &p);
            Done::new(json!({ "tree": p, "X": x }), json!({ "check": check }))
                .with_oracle(ctx, || OracleCheck::compare(&(check.branch && check.stem_compatible), &brute_branch(&x, &p)))
        }
        Cmd::Uniformize { tree, x } => {
            let p = tree.load(ctx.scale.depth, bound)?;
            let x = input::xpart(x)?;
            let q = uniformize(&p, &x);
            let outputs = match &q {
                Ok(q) => json!({ "tree": q, "nodes": q.nodes().len() }),
                Err(e) => json!({ "tree": null, "failure": e.to_string() }),
            };
            Done::new(json!({ "tree": p, "X": x }), outputs).with_oracle(ctx, || match &q {
                Ok(q) => OracleCheck::holds(q.nodes().is_subset(&p.nodes()) && brute_branch(&x, &p), json!({ "verified": "subtree" })),
                Err(_) => OracleCheck::compare(&false, &brute_branch(&x, &p)),
            })
        }
    })
}

fn class_name(c: &Classification) -> &'static str {
    match c {
        Classification::Good { .. } => "good",
        Classification::Bad => "bad",
        Classification::UglyAndBad => "ugly-and-bad",
    }
}

fn contains(c: &Nbhd, y: &XPart) -> bool {
    oracle::is_segment(&c.s, y) && oracle::is_coarser(y, &c.x)
}

fn good(c: &Nbhd, o: &OpenSet, base: &FilterBase, bound: usize) -> bool {
    base.elements().iter().filter(|y| contains(c, y) && oracle::member(base, y)).any(|y| {
        oracle::nbhd_members(&c.s, y, bound).iter().all(|z| o.nbhds.iter().any(|n| contains(n, z)))
    })
}

/// The classification from listed members and segments.
fn brute_class(c: &Nbhd, o: &OpenSet, base: &FilterBase, bound: usize) -> &'static str {
    if good(c, o, base, bound) {
        return "good";
    }
    let ugly = oracle::segments(&c.s, &c.x, c.s.block_count(), bound - 1)
        .iter()
        .all(|t| !good(&Nbhd::new(t.star(), c.x.clone()), o, base, bound));
    if ugly {
        "ugly-and-bad"
    } else {
        "bad"
    }
}

/// Tree clauses by listing: keys are exactly the internal nodes, each
/// `X_t` is in the filter with `t* ⊑ X_t`, neighbourhoods are nested along
/// `⊑_seg` and coherent on common domains.
fn brute_laver(p: &LaverTree, base: &FilterBase) -> bool {
    let internal = p.internal_nodes();
    if internal.len() != p.x_of.len() || internal.iter().any(|t| !p.x_of.contains_key(t)) {
        return false;
    }
    let star = |t: &FinPart| {
        let mut rgs = t.rgs().to_vec();
        rgs.push(t.block_count());
        FinPart::new(rgs).expect("fresh block")
    };
    let nbhd = |t: &FinPart| Nbhd::new(t.clone(), p.x_of[t].clone());
    internal.iter().all(|t| oracle::member(base, &p.x_of[t]) && oracle::is_coarser(&star(t), &p.x_of[t]))
        && internal.iter().all(|t| {
            internal.iter().all(|u| {
                let nested = t == u
                    || !oracle::is_segment(t, u)
                    || oracle::leq(&nbhd(u), &nbhd(t), listing_bound(&[&nbhd(u), &nbhd(t)], 0));
                let coherent = t == u || t.dom() != u.dom() || !oracle::is_coarser(t, u) || p.x_of[t] == p.x_of[u];
                nested && coherent
            })
        })
}

/// Whether `(t, X_t) = (t, X_stem)` at every internal node, by listing.
fn brute_uniform(p: &LaverTree) -> bool {
    let Some(cu) = p.x_of.get(&p.stem) else { return false };
    p.internal_nodes().iter().all(|t| match p.x_of.get(t) {
        Some(xt) => {
            let b = listing_bound(&[&Nbhd::new(t.clone(), xt.clone()), &Nbhd::new(t.clone(), cu.clone())], 0);
            oracle::nbhd_members(t, xt, b) == oracle::nbhd_members(t, cu, b)
        }
        None => false,
    })
}
