use super::{dense_in, GameState, Move, Role};
use crate::filters::FilterBase;
use crate::partition::{inner_segments, star_segments, FinPart, XPart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub enum Decision {
    Play(Move),
    /// No legal move is available, or the strategy will not make one.
    Stall,
    Concede(Certificate),
}

pub trait Strategy {
    fn name(&self) -> &'static str;
    fn decide(&mut self, state: &GameState) -> Decision;
}

/// A legal move for whoever is to move, choosing among the options by
/// index; `Stall` when there are none.
fn pick(state: &GameState, opening: &FinPart, choose: &mut dyn FnMut(usize) -> usize) -> Decision {
    let mv = match state.to_move() {
        None => None,
        Some(Role::One) => {
            let t = if state.round() == 0 {
                Some(opening.clone())
            } else {
                let stems = state.next_stems();
                (!stems.is_empty()).then(|| stems[choose(stems.len())].clone())
            };
            t.and_then(|t| {
                let options = state.y_options(&t);
                (!options.is_empty()).then(|| Move::One { y: options[choose(options.len())].clone(), t })
            })
        }
        Some(Role::Two) => {
            let options = state.x_options();
            (!options.is_empty()).then(|| Move::Two { x: options[choose(options.len())].clone() })
        }
    };
    mv.map_or(Decision::Stall, Decision::Play)
}

/// Always the first legal move in enumeration order.
pub struct FirstLegal {
    opening: FinPart,
}

impl FirstLegal {
    /// `opening` is `t_0` when playing as I.
    pub fn new(opening: FinPart) -> Self {
        FirstLegal { opening }
    }
}

impl Strategy for FirstLegal {
    fn name(&self) -> &'static str {
        "first-legal"
    }

    fn decide(&mut self, state: &GameState) -> Decision {
        pick(state, &self.opening, &mut |_| 0)
    }
}

/// Uniformly random legal moves from a seeded generator; as I, opens with a
/// random partition of `[0, m)` for some `m ≤ 2`.
pub struct RandomPlay {
    rng: ChaCha8Rng,
}

impl RandomPlay {
    pub fn new(seed: u64) -> Self {
        RandomPlay { rng: ChaCha8Rng::seed_from_u64(seed) }
    }
}

impl Strategy for RandomPlay {
    fn name(&self) -> &'static str {
        "random"
    }

    fn decide(&mut self, state: &GameState) -> Decision {
        let openings: Vec<FinPart> = (0..=2).flat_map(FinPart::all).collect();
        let opening = openings[self.rng.gen_range(0..openings.len())].clone();
        let rng = &mut self.rng;
        pick(state, &opening, &mut |n| rng.gen_range(0..n))
    }
}

/// Player II answering `Y_n` with `X_n = Y_n` whenever that is legal.
#[derive(Default)]
pub struct Copycat;

impl Strategy for Copycat {
    fn name(&self) -> &'static str {
        "copycat"
    }

    fn decide(&mut self, state: &GameState) -> Decision {
        let Some((_, y)) = state.last_one() else { return Decision::Stall };
        let options = state.x_options();
        match options.iter().find(|x| *x == y).or(options.first()) {
            Some(x) => Decision::Play(Move::Two { x: x.clone() }),
            None => Decision::Stall,
        }
    }
}

/// Evidence that player I cannot keep `(t)^(0)_(s)` away from `D`.
///
/// In round 0 `anchor` is the opening `t_0`, which already meets `D`. Later,
/// `anchor` is `t_m*` and `x` is `X_m`; every legal `t_{m+1}` meets `D`, and
/// the set of `u` meeting `D` is dense below `(t_m*, X_m)` in `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub round: usize,
    pub anchor: FinPart,
    #[serde(rename = "X")]
    pub x: XPart,
    pub candidates: Vec<FinPart>,
}

/// Player I steering `(t_n)^(0)_(s)` away from `D`: opens with
/// `⟨t_0, t_0 ⊓ Z⟩` (or `⟨t_0, Z⟩` when `t_0 ⊓ Z ∉ F`), then plays the first
/// legal `t_{n+1}` with `(t_{n+1})^(0)_(s) ∩ D = ∅` and `Y_{n+1} = X_n`.
/// Concedes with a [`Certificate`] when every legal `t_{n+1}` meets `D`.
pub struct Avoidance<D> {
    s: FinPart,
    opening: FinPart,
    z: XPart,
    d: D,
}

impl<D: Fn(&FinPart) -> bool> Avoidance<D> {
    pub fn new(s: FinPart, opening: FinPart, z: XPart, d: D) -> Self {
        Avoidance { s, opening, z, d }
    }

    fn meets(&self, u: &FinPart) -> bool {
        meets_d(&self.s, &self.d, u)
    }
}

fn meets_d(s: &FinPart, d: &dyn Fn(&FinPart) -> bool, u: &FinPart) -> bool {
    inner_segments(u, s, 0).iter().any(d)
}

impl<D: Fn(&FinPart) -> bool> Strategy for Avoidance<D> {
    fn name(&self) -> &'static str {
        "avoidance"
    }

    fn decide(&mut self, state: &GameState) -> Decision {
        if state.to_move() != Some(Role::One) {
            return Decision::Stall;
        }
        if state.round() == 0 {
            let t = self.opening.clone();
            if self.meets(&t) {
                return Decision::Concede(Certificate { round: 0, anchor: t.clone(), x: self.z.clone(), candidates: vec![t] });
            }
            let joined = self.z.join_fin(&t);
            let y = if state.base().member(&joined) { joined } else { self.z.clone() };
            return Decision::Play(Move::One { t, y });
        }
        let (prev, _) = state.last_one().expect("round ≥ 1");
        let x = state.last_two().expect("round ≥ 1").clone();
        let candidates = state.next_stems();
        if candidates.is_empty() {
            return Decision::Stall;
        }
        match candidates.iter().find(|u| !self.meets(u)) {
            Some(t) => Decision::Play(Move::One { t: t.clone(), y: x }),
            None => Decision::Concede(Certificate { round: state.round(), anchor: prev.star(), x, candidates }),
        }
    }
}

/// Re-derives a concession of [`Avoidance`] for `s` and `D`: the listed
/// candidates are exactly the legal moves, all meet `D`, and from round 1 on
/// the set of `u` meeting `D` is dense below `(anchor, X)` in `F`.
pub fn verify_certificate(
    cert: &Certificate,
    s: &FinPart,
    d: &dyn Fn(&FinPart) -> bool,
    base: &FilterBase,
    dom_bound: usize,
) -> bool {
    if cert.round == 0 {
        return cert.candidates == [cert.anchor.clone()] && meets_d(s, d, &cert.anchor);
    }
    let recomputed = star_segments(&cert.anchor, &cert.x, Some(cert.anchor.block_count()), dom_bound);
    let meets = |u: &FinPart| meets_d(s, d, u);
    !recomputed.is_empty()
        && recomputed == cert.candidates
        && recomputed.iter().all(meets)
        && dense_in(&meets, &cert.anchor, &cert.x, base, dom_bound)
}
