use crate::input;
use crate::report::OracleCheck;
use crate::{Ctx, Done};
use anyhow::{anyhow, bail, Result};
use clap::Subcommand;
use dualramsey::game::{
    play, verify_certificate, Avoidance, Copycat, FirstLegal, Move, Outcome, RandomPlay, Role, Strategy,
};
use dualramsey::partition::inner_segments;
use dualramsey::{oracle, FinPart, XPart};
use serde::Deserialize;
use serde_json::{json, Value};

#[derive(Subcommand)]
pub enum Cmd {
    /// Plays the game between two strategies and prints the transcript.
    Play {
        #[arg(long)]
        base: String,
        #[arg(long, default_value_t = 3)]
        rounds: usize,
        /// random | first-legal[:<opening>] | copycat | avoid:<file>
        #[arg(long, default_value = "random")]
        strategy_one: String,
        /// random | first-legal | copycat
        #[arg(long, default_value = "random")]
        strategy_two: String,
    },
}

impl Cmd {
    pub fn name(&self) -> &'static str {
        match self {
            Cmd::Play { .. } => "play",
        }
    }
}

/// Player I's target for `avoid:`: keep `(t_n)^(0)_(s)` away from `D`.
#[derive(Deserialize)]
struct AvoidSpec {
    s: Value,
    #[serde(rename = "D")]
    d: Vec<Value>,
    #[serde(default)]
    opening: Option<Value>,
    #[serde(rename = "Z", default)]
    z: Option<Value>,
}

struct Avoid {
    s: FinPart,
    d: Vec<FinPart>,
    spec: Value,
}

fn value_str(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn strategy(arg: &str, seed: u64, avoid: &mut Option<Avoid>) -> Result<Box<dyn Strategy>> {
    let (kind, rest) = arg.split_once(':').map_or((arg, None), |(k, r)| (k, Some(r)));
    Ok(match (kind, rest) {
        ("random", None) => Box::new(RandomPlay::new(seed)),
        ("copycat", None) => Box::new(Copycat),
        ("first-legal", None) => Box::new(FirstLegal::new(FinPart::empty())),
        ("first-legal", Some(opening)) => Box::new(FirstLegal::new(input::fin(opening)?)),
        ("avoid", Some(path)) => {
            let spec: AvoidSpec = input::json_arg(path)?;
            let s = input::fin_value(&spec.s)?;
            let d: Vec<FinPart> = spec.d.iter().map(input::fin_value).collect::<Result<_>>()?;
            let opening = spec.opening.as_ref().map(input::fin_value).transpose()?.unwrap_or_else(FinPart::empty);
            let z = spec.z.as_ref().map(|v| input::xpart(&value_str(v))).transpose()?.unwrap_or_else(XPart::omega);
            let record = json!({ "s": s, "D": d, "opening": opening, "Z": z });
            let members = d.clone();
            *avoid = Some(Avoid { s: s.clone(), d, spec: record });
            Box::new(Avoidance::new(s, opening, z, move |u: &FinPart| members.contains(u)))
        }
        _ => bail!("unknown strategy {arg:?}; expected random, first-legal[:<opening>], copycat or avoid:<file>"),
    })
}

pub fn run(cmd: &Cmd, ctx: &Ctx) -> Result<Done> {
    let Cmd::Play { base, rounds, strategy_one, strategy_two } = cmd;
    let base = input::base(base)?;
    let bound = ctx.scale.dom_bound;
    let mut avoid = None;
    let mut one = strategy(strategy_one, ctx.scale.seed, &mut avoid)?;
    let mut unused = None;
    let mut two = strategy(strategy_two, ctx.scale.seed.wrapping_add(1), &mut unused)?;
    if unused.is_some() {
        bail!("avoid: is a strategy for player I");
    }
    let transcript = play(one.as_mut(), two.as_mut(), &base, *rounds, bound).map_err(|e| anyhow!(e))?;
    let certificate_ok = match (&transcript.outcome, &avoid) {
        (Outcome::Conceded { certificate, .. }, Some(a)) => {
            let in_d = |u: &FinPart| a.d.contains(u);
            Some(verify_certificate(certificate, &a.s, &in_d, &base, bound))
        }
        _ => None,
    };
    let inputs = json!({
        "base": base,
        "rounds": rounds,
        "strategy_one": one.name(),
        "strategy_two": two.name(),
        "avoid": avoid.as_ref().map(|a| &a.spec),
    });
    let outputs = json!({ "transcript": transcript, "certificate_verified": certificate_ok });
    let mut done = Done::new(inputs, outputs).with_oracle(ctx, || {
        let replay = oracle::validate_transcript(&base, &transcript.moves);
        // I's stems must stay clear of D unless I conceded
        let avoided = match &avoid {
            Some(a) if !matches!(transcript.outcome, Outcome::Conceded { .. }) => transcript.moves.iter().all(|m| match m {
                Move::One { t, .. } => inner_segments(t, &a.s, 0).iter().all(|u| !a.d.contains(u)),
                Move::Two { .. } => true,
            }),
            _ => true,
        };
        let forfeit_rule = matches!(transcript.outcome, Outcome::Forfeit { rule: Some(_), .. });
        let agrees = replay.is_ok() && avoided && certificate_ok != Some(false) && !forfeit_rule;
        OracleCheck::holds(
            agrees,
            json!({
                "replay": replay.err().map(|(i, r)| json!({ "index": i, "rule": r.id() })),
                "avoided": avoided,
                "certificate_verified": certificate_ok,
            }),
        )
    });
    done.note = Some(summary(&transcript.outcome));
    Ok(done)
}

fn summary(outcome: &Outcome) -> String {
    let who = |r: &Role| match r {
        Role::One => "I",
        Role::Two => "II",
    };
    match outcome {
        Outcome::Completed { rounds, limit_in_filter } => {
            format!("completed {rounds} rounds; limit prefix in filter: {limit_in_filter}")
        }
        Outcome::Forfeit { player, round, rule: None } => format!("player {} stalled in round {round}", who(player)),
        Outcome::Forfeit { player, round, rule: Some(rule) } => {
            format!("player {} broke rule {} in round {round}", who(player), rule.id())
        }
        Outcome::Conceded { player, certificate } => {
            format!("player {} conceded in round {}", who(player), certificate.round)
        }
    }
}
