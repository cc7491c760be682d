//! The game `G_F`, played for a fixed number of rounds.
//!
//! Round `n` is a move `⟨t_n, Y_n⟩` of player I followed by a move `X_n` of
//! player II:
//!
//! * `Y_n ∈ F` and `t_n* ⊑ Y_n`, so `(t_n*, Y_n)` is a neighbourhood;
//! * `X_n ∈ F` and `X_n ∈ (t_n*, Y_n)`;
//! * from round 1 on, `t_{n-1}* ⊑_seg t_n* ⊑ X_{n-1}` and
//!   `|t_n| = |t_{n-1}| + 1`.
//!
//! The real winning condition looks at the limit of the `t_n` and is not
//! finite; a finished game reports the last `t_n` and whether its extension
//! by singletons lies in `F`, and claims no winner.

mod density;
mod strategy;

pub use density::{dense_counterexample, dense_in, k_dense_counterexample, k_dense_in};
pub use strategy::{
    verify_certificate, Avoidance, Certificate, Copycat, Decision, FirstLegal, RandomPlay, Strategy,
};

use crate::filters::FilterBase;
use crate::partition::{is_coarser, is_segment, star_segments, FinPart, XPart};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Role {
    #[serde(rename = "I")]
    One,
    #[serde(rename = "II")]
    Two,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::One => "I",
            Role::Two => "II",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "player")]
pub enum Move {
    #[serde(rename = "I")]
    One {
        t: FinPart,
        #[serde(rename = "Y")]
        y: XPart,
    },
    #[serde(rename = "II")]
    Two {
        #[serde(rename = "X")]
        x: XPart,
    },
}

impl Move {
    pub fn role(&self) -> Role {
        match self {
            Move::One { .. } => Role::One,
            Move::Two { .. } => Role::Two,
        }
    }
}

/// The rules a move can break.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// The move is not by the player to move, or the game is over.
    Turn,
    YInFilter,
    StarCoarserY,
    XInFilter,
    XInNbhd,
    StarSegChain,
    StarCoarserX,
    BlockIncrement,
}

impl Rule {
    pub fn id(self) -> &'static str {
        match self {
            Rule::Turn => "turn",
            Rule::YInFilter => "Y_n ∈ F",
            Rule::StarCoarserY => "t_n* ⊑ Y_n",
            Rule::XInFilter => "X_n ∈ F",
            Rule::XInNbhd => "t_n* ⊑_seg X_n ⊑ Y_n",
            Rule::StarSegChain => "t_n* ⊑_seg t_{n+1}*",
            Rule::StarCoarserX => "t_{n+1}* ⊑ X_n",
            Rule::BlockIncrement => "|t_{n+1}| = |t_n| + 1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal move {index}: rule {} broken", .rule.id())]
    IllegalMove { index: usize, rule: Rule },
    #[error("dom_bound {got} is below the prefix length {needed} of the filter's generator")]
    BoundTooSmall { needed: usize, got: usize },
    #[error("a game needs at least one round")]
    NoRounds,
}

/// A position: the moves so far and the parameters of the game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    base: FilterBase,
    dom_bound: usize,
    max_rounds: usize,
    history: Vec<Move>,
}

impl GameState {
    pub fn new(base: FilterBase, dom_bound: usize, max_rounds: usize) -> Result<Self, GameError> {
        if max_rounds == 0 {
            return Err(GameError::NoRounds);
        }
        let needed = base.generator().prefix_len();
        if dom_bound < needed {
            return Err(GameError::BoundTooSmall { needed, got: dom_bound });
        }
        Ok(GameState { base, dom_bound, max_rounds, history: Vec::new() })
    }

    pub fn base(&self) -> &FilterBase {
        &self.base
    }

    pub fn dom_bound(&self) -> usize {
        self.dom_bound
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn round(&self) -> usize {
        self.history.len() / 2
    }

    pub fn is_over(&self) -> bool {
        self.history.len() >= 2 * self.max_rounds
    }

    pub fn to_move(&self) -> Option<Role> {
        if self.is_over() {
            None
        } else if self.history.len().is_multiple_of(2) {
            Some(Role::One)
        } else {
            Some(Role::Two)
        }
    }

    /// The latest `⟨t_n, Y_n⟩`.
    pub fn last_one(&self) -> Option<(&FinPart, &XPart)> {
        self.history.iter().rev().find_map(|m| match m {
            Move::One { t, y } => Some((t, y)),
            Move::Two { .. } => None,
        })
    }

    /// The latest `X_n`.
    pub fn last_two(&self) -> Option<&XPart> {
        self.history.iter().rev().find_map(|m| match m {
            Move::Two { x } => Some(x),
            Move::One { .. } => None,
        })
    }

    /// The current approximation `t_n` to the limit partition.
    pub fn limit_prefix(&self) -> Option<&FinPart> {
        self.last_one().map(|(t, _)| t)
    }

    /// The first rule `mv` breaks in this position.
    pub fn check(&self, mv: &Move) -> Result<(), Rule> {
        if self.to_move() != Some(mv.role()) {
            return Err(Rule::Turn);
        }
        match mv {
            Move::One { t, y } => {
                if !self.base.member(y) {
                    return Err(Rule::YInFilter);
                }
                if !is_coarser(&t.star(), y) {
                    return Err(Rule::StarCoarserY);
                }
                if let (Some((prev, _)), Some(x)) = (self.last_one(), self.last_two()) {
                    if !is_segment(&prev.star(), &t.star()) {
                        return Err(Rule::StarSegChain);
                    }
                    if !is_coarser(&t.star(), x) {
                        return Err(Rule::StarCoarserX);
                    }
                    if t.block_count() != prev.block_count() + 1 {
                        return Err(Rule::BlockIncrement);
                    }
                }
            }
            Move::Two { x } => {
                let (t, y) = self.last_one().expect("II moves after I");
                if !self.base.member(x) {
                    return Err(Rule::XInFilter);
                }
                if !(is_segment(&t.star(), x) && is_coarser(x, y)) {
                    return Err(Rule::XInNbhd);
                }
            }
        }
        Ok(())
    }

    /// The position after `mv`, or the rule it breaks.
    pub fn step(&self, mv: Move) -> Result<GameState, GameError> {
        self.check(&mv).map_err(|rule| GameError::IllegalMove { index: self.history.len(), rule })?;
        let mut next = self.clone();
        next.history.push(mv);
        Ok(next)
    }

    /// Legal `t_{n+1}` for player I after round `n`, in rgs order.
    pub fn next_stems(&self) -> Vec<FinPart> {
        match (self.last_one(), self.last_two()) {
            (Some((t, _)), Some(x)) => {
                star_segments(&t.star(), x, Some(t.block_count() + 1), self.dom_bound)
            }
            _ => Vec::new(),
        }
    }

    /// Elements `Y` of `F` that may accompany `t` in an I-move.
    pub fn y_options(&self, t: &FinPart) -> Vec<XPart> {
        let star = t.star();
        self.base.elements().iter().filter(|y| is_coarser(&star, *y)).cloned().collect()
    }

    /// Legal replies `X_n` for player II.
    pub fn x_options(&self) -> Vec<XPart> {
        let Some((t, y)) = self.last_one() else { return Vec::new() };
        let star = t.star();
        self.base
            .elements()
            .iter()
            .filter(|x| is_segment(&star, *x) && is_coarser(*x, y))
            .cloned()
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    /// All rounds were played. `limit_in_filter` is membership of the last
    /// `t_n` extended by singletons: a verdict at this scale, not a winner.
    Completed { rounds: usize, limit_in_filter: bool },
    /// `player` stalled (`rule` absent) or played an illegal move.
    Forfeit { player: Role, round: usize, rule: Option<Rule> },
    Conceded { player: Role, certificate: Certificate },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub base: FilterBase,
    pub moves: Vec<Move>,
    pub outcome: Outcome,
    pub limit_prefix: Option<FinPart>,
}

/// Plays `rounds` rounds between `one` (player I) and `two` (player II).
pub fn play(
    one: &mut dyn Strategy,
    two: &mut dyn Strategy,
    base: &FilterBase,
    rounds: usize,
    dom_bound: usize,
) -> Result<Transcript, GameError> {
    let mut state = GameState::new(base.clone(), dom_bound, rounds)?;
    let outcome = loop {
        let Some(role) = state.to_move() else {
            let t = state.limit_prefix().expect("at least one round");
            let limit_in_filter = base.member(&XPart::from_prefix(t.clone()));
            break Outcome::Completed { rounds, limit_in_filter };
        };
        let mover: &mut dyn Strategy = match role {
            Role::One => &mut *one,
            Role::Two => &mut *two,
        };
        match mover.decide(&state) {
            Decision::Play(mv) => match state.step(mv) {
                Ok(next) => state = next,
                Err(GameError::IllegalMove { rule, .. }) => {
                    break Outcome::Forfeit { player: role, round: state.round(), rule: Some(rule) }
                }
                Err(e) => return Err(e),
            },
            Decision::Stall => break Outcome::Forfeit { player: role, round: state.round(), rule: None },
            Decision::Concede(certificate) => break Outcome::Conceded { player: role, certificate },
        }
    };
    let limit_prefix = state.limit_prefix().cloned();
    Ok(Transcript { base: base.clone(), moves: state.history, outcome, limit_prefix })
}
