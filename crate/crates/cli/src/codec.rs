use crate::input;
use crate::report::OracleCheck;
use crate::{Ctx, Done};
use anyhow::{bail, Context, Result};
use clap::Subcommand;
use dualramsey::codec::{cp, cutoff_for, pair_code, pair_decode, pc, trans, RealSet};
use dualramsey::{oracle, FinPart, Part, Partition};
use serde_json::{json, Value};
use std::io::{self, BufRead};

#[derive(Subcommand)]
pub enum Cmd {
    /// Code of the unordered pair {n, m}.
    Pair {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// The pair with code k.
    Unpair {
        #[arg(long)]
        k: usize,
    },
    /// The real coding the intra-block pairs of a partition, below --cutoff.
    Pc {
        #[arg(long)]
        part: String,
    },
    /// The partition of [0, m) coded by a real.
    Cp {
        #[arg(long)]
        real: String,
        #[arg(long)]
        m: usize,
    },
    /// The transitive closure of a real below its cutoff.
    Trans {
        #[arg(long)]
        real: String,
    },
    /// Checks that cp inverts pc: exhaustively on [0, m) for m ≤ --max-m,
    /// or on the partition coded by --x.
    Roundtrip {
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_m: usize,
    },
    /// Partitions on stdin (one per line) to reals on stdout.
    Encode,
    /// Reals on stdin (one per line) to partitions of [0, m) on stdout.
    Decode {
        #[arg(long)]
        m: usize,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Pair { .. } => "pair",
            Cmd::Unpair { .. } => "unpair",
            Cmd::Pc { .. } => "pc",
            Cmd::Cp { .. } => "cp",
            Cmd::Trans { .. } => "trans",
            Cmd::Roundtrip { .. } => "roundtrip",
            Cmd::Encode => "encode",
            Cmd::Decode { .. } => "decode",
        }
    }
}

fn show_set(x: &RealSet) -> String {
    if x.is_empty() {
        return "∅".to_string();
    }
    let items: Vec<String> = x.elements().iter().map(|k| k.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// The largest `m` all of whose pairs are coded below `cutoff`.
fn window(cutoff: usize) -> usize {
    (0..).take_while(|&m| cutoff_for(m) <= cutoff).last().unwrap_or(0)
}

pub fn run(cmd: &Cmd, ctx: &Ctx) -> Result<Done> {
    let cutoff = ctx.scale.cutoff;
    Ok(match cmd {
        Cmd::Pair { n, m } => {
            let k = pair_code(*n, *m)?;
            Done::new(json!({ "n": n, "m": m }), json!({ "code": k }))
                .with_oracle(ctx, || OracleCheck::compare(&(*n.min(m), *n.max(m)), &pair_decode(k)))
        }
        Cmd::Unpair { k } => {
            let (n, m) = pair_decode(*k);
            Done::new(json!({ "k": k }), json!({ "pair": [n, m] }))
                .with_oracle(ctx, || OracleCheck::compare(k, &(m * (m - 1) / 2 + n)))
        }
        Cmd::Pc { part } => {
            let p = input::part(part)?;
            let x = pc(&p, cutoff);
            let outputs = json!({ "real": x, "shown": show_set(&x) });
            Done::new(json!({ "part": p }), outputs).with_oracle(ctx, || {
                let expected: Vec<usize> = (0..cutoff)
                    .filter(|&k| {
                        let (a, b) = pair_decode(k);
                        p.domain().contains(b) && p.block_of(a) == p.block_of(b)
                    })
                    .collect();
                let got: Vec<usize> = x.elements().iter().copied().collect();
                OracleCheck::compare(&got, &expected)
            })
        }
        Cmd::Cp { real, m } => {
            let x: RealSet = input::json_arg(real)?;
            let p = cp(&x, *m)?;
            Done::new(json!({ "real": x, "m": m }), json!({ "partition": p.to_string(), "rgs": p }))
                .with_oracle(ctx, || OracleCheck::compare(&p, &oracle::cp(&x, *m)))
        }
        Cmd::Trans { real } => {
            let x: RealSet = input::json_arg(real)?;
            let t = trans(&x);
            Done::new(json!({ "real": x }), json!({ "trans": t, "shown": show_set(&t) })).with_oracle(ctx, || {
                // a pair is in the closure iff its ends share a block of cp
                let m = (0..x.cutoff()).map(|k| pair_decode(k).1 + 1).max().unwrap_or(0);
                let blocks = oracle::cp(&x, m);
                let expected: Vec<usize> = (0..x.cutoff())
                    .filter(|&k| {
                        let (a, b) = pair_decode(k);
                        blocks.rgs()[a] == blocks.rgs()[b]
                    })
                    .collect();
                let got: Vec<usize> = t.elements().iter().copied().collect();
                OracleCheck::compare(&got, &expected)
            })
        }
        Cmd::Roundtrip { x: Some(real), .. } => {
            let x: RealSet = input::json_arg(real)?;
            let m = window(x.cutoff());
            let window_cutoff = cutoff_for(m);
            let p = cp(&x, m)?;
            let back = pc(&p, window_cutoff);
            let closed: Vec<usize> = trans(&x).elements().iter().copied().filter(|&k| k < window_cutoff).collect();
            let mut mismatches = Vec::new();
            if cp(&back, m)? != p {
                mismatches.push("cp(pc(cp(x))) ≠ cp(x)");
            }
            if back.elements().iter().copied().collect::<Vec<_>>() != closed {
                mismatches.push("pc(cp(x)) ≠ trans(x) below the window");
            }
            let mut done = Done::new(
                json!({ "real": x }),
                json!({ "m": m, "partition": p.to_string(), "mismatches": mismatches.len(), "failed": mismatches }),
            )
            .with_oracle(ctx, || OracleCheck::compare(&p, &oracle::cp(&x, m)));
            done.counterexample = !mismatches.is_empty();
            done.note = Some(format!("{} mismatches", mismatches.len()));
            done
        }
        Cmd::Roundtrip { x: None, max_m } => {
            let mut checked = 0usize;
            let mut mismatches: Vec<Value> = Vec::new();
            for m in 0..=*max_m {
                for p in FinPart::all(m) {
                    checked += 1;
                    let code = pc(&p, cutoff_for(m));
                    let back = cp(&code, m)?;
                    if back != p || pc(&back, cutoff_for(m)) != code {
                        mismatches.push(json!({ "partition": p.to_string(), "decoded": back.to_string() }));
                    }
                }
            }
            let mut done = Done::new(
                json!({ "max_m": max_m }),
                json!({ "checked": checked, "mismatches": mismatches.len(), "failed": mismatches }),
            )
            .with_oracle(ctx, || {
                let expected: u128 = (0..=*max_m).map(oracle::bell).sum();
                OracleCheck::compare(&(checked as u128), &expected)
            });
            done.counterexample = !mismatches.is_empty();
            done.note = Some(format!("{} mismatches in {checked} partitions", mismatches.len()));
            done
        }
        Cmd::Encode => {
            let mut stream = String::new();
            let mut count = 0usize;
            for (i, line) in io::stdin().lock().lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let p = input::part_line(&line).with_context(|| format!("line {}", i + 1))?;
                let needed = match &p {
                    Part::Fin(f) => cutoff_for(f.dom()),
                    Part::Omega(x) => cutoff_for(x.prefix_len()),
                };
                if cutoff < needed {
                    bail!("line {}: --cutoff {cutoff} cannot encode {}; needs {needed}", i + 1, p_show(&p));
                }
                stream.push_str(&serde_json::to_string(&pc(&p, cutoff))?);
                stream.push('\n');
                count += 1;
            }
            let mut done = Done::new(json!({ "stdin": "partitions" }), json!({ "lines": count }));
            done.stdout = Some(stream);
            done
        }
        Cmd::Decode { m } => {
            let mut stream = String::new();
            let mut count = 0usize;
            for (i, line) in io::stdin().lock().lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let x: RealSet = serde_json::from_str(&line).with_context(|| format!("line {}", i + 1))?;
                let p = cp(&x, *m).with_context(|| format!("line {}", i + 1))?;
                stream.push_str(&serde_json::to_string(&p)?);
                stream.push('\n');
                count += 1;
            }
            let mut done = Done::new(json!({ "stdin": "reals", "m": m }), json!({ "lines": count }));
            done.stdout = Some(stream);
            done
        }
    })
}

fn p_show(p: &Part) -> String {
    crate::lattice::show(p)
}
