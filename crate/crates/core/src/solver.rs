//! Pure-strategy equilibria, dominance, Pareto structure and equilibrium
//! selection.
//!
//! Everything here is exhaustive over the dense table; the games of
//! interest have at most a few thousand cells.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::Exact;
use crate::game::{ActionProfile, NormalFormGame};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("cannot select from an empty equilibrium set")]
    EmptyEquilibriumSet,
    #[error("profile {0} does not belong to the game")]
    InvalidProfile(ActionProfile),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    Weak,
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Weak => "weak",
            Mode::Strict => "strict",
        })
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weak" => Ok(Mode::Weak),
            "strict" => Ok(Mode::Strict),
            other => Err(format!("unknown mode `{other}` (expected weak or strict)")),
        }
    }
}

/// True when no player can gain (weak) or every deviation loses (strict).
pub fn is_equilibrium(game: &NormalFormGame, profile: &ActionProfile, mode: Mode) -> bool {
    (0..game.player_count()).all(|player| {
        let current = game.value(profile, player);
        (0..game.action_count(player))
            .filter(|&a| a != profile.action(player))
            .all(|a| {
                let deviation = game.value(&profile.with(player, a), player);
                match mode {
                    Mode::Weak => deviation <= current,
                    Mode::Strict => deviation < current,
                }
            })
    })
}

pub fn pure_equilibria(game: &NormalFormGame, mode: Mode) -> Vec<ActionProfile> {
    game.profiles().filter(|p| is_equilibrium(game, p, mode)).collect()
}

/// Whether `winner` dominates `loser` for `player` across all opponent play.
pub fn dominates(game: &NormalFormGame, player: usize, winner: usize, loser: usize, mode: Mode) -> bool {
    if winner == loser {
        return false;
    }
    let mut strictly_somewhere = false;
    for profile in game.profiles().filter(|p| p.action(player) == 0) {
        let w = game.value(&profile.with(player, winner), player);
        let l = game.value(&profile.with(player, loser), player);
        match mode {
            Mode::Strict if w <= l => return false,
            Mode::Weak if w < l => return false,
            _ => {}
        }
        strictly_somewhere |= w > l;
    }
    strictly_somewhere
}

/// Every `(dominated, dominating)` pair for `player`, dominated action first.
pub fn dominated_actions(game: &NormalFormGame, player: usize, mode: Mode) -> Vec<(usize, usize)> {
    let n = game.action_count(player);
    let mut pairs = Vec::new();
    for loser in 0..n {
        for winner in 0..n {
            if dominates(game, player, winner, loser, mode) {
                pairs.push((loser, winner));
            }
        }
    }
    pairs
}

/// One removal step of iterated elimination, in original action indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub player: usize,
    pub action: usize,
    pub mode: Mode,
    pub dominated_by: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub game: NormalFormGame,
    /// Original indices of the surviving actions, per player.
    pub surviving: Vec<Vec<usize>>,
    pub trace: Vec<Elimination>,
}

/// Removes dominated actions one at a time until none remain.
///
/// At each step the lowest player owning a dominated action loses its lowest
/// such action; the recorded dominator is the lowest dominating action.
pub fn iterated_elimination(game: &NormalFormGame, mode: Mode) -> Reduction {
    let mut surviving: Vec<Vec<usize>> = game.action_counts().into_iter().map(|n| (0..n).collect()).collect();
    let mut trace = Vec::new();
    let mut current = game.clone();
    'outer: loop {
        for player in 0..current.player_count() {
            if let Some(&(loser, winner)) = dominated_actions(&current, player, mode).first() {
                trace.push(Elimination {
                    player,
                    action: surviving[player][loser],
                    mode,
                    dominated_by: surviving[player][winner],
                });
                surviving[player].remove(loser);
                current = game.restrict(&surviving);
                continue 'outer;
            }
        }
        break;
    }
    Reduction {
        game: current,
        surviving,
        trace,
    }
}

/// Replays an elimination trace, returning the surviving original indices.
pub fn replay_trace(game: &NormalFormGame, trace: &[Elimination]) -> Vec<Vec<usize>> {
    let mut surviving: Vec<Vec<usize>> = game.action_counts().into_iter().map(|n| (0..n).collect()).collect();
    for step in trace {
        surviving[step.player].retain(|&a| a != step.action);
    }
    surviving
}

/// Profiles whose payoff vector no other profile Pareto-dominates.
pub fn pareto_front(game: &NormalFormGame) -> Vec<ActionProfile> {
    let cells = game.cells();
    game.profiles()
        .enumerate()
        .filter(|(i, _)| !cells.iter().any(|other| other.pareto_dominates(&cells[*i])))
        .map(|(_, p)| p)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionRule {
    #[default]
    PayoffDominance,
    Maximin,
    First,
}

impl fmt::Display for SelectionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SelectionRule::PayoffDominance => "payoff-dominance",
            SelectionRule::Maximin => "maximin",
            SelectionRule::First => "first",
        })
    }
}

impl FromStr for SelectionRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "payoff-dominance" => Ok(SelectionRule::PayoffDominance),
            "maximin" => Ok(SelectionRule::Maximin),
            "first" => Ok(SelectionRule::First),
            other => Err(format!(
                "unknown selection rule `{other}` (expected payoff-dominance, maximin or first)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selection {
    pub rule: SelectionRule,
    /// Lexicographically first candidate.
    pub selected: ActionProfile,
    /// Every equilibrium the rule could not separate from the selected one.
    pub candidates: Vec<ActionProfile>,
    pub ambiguous: bool,
}

/// Picks among `equilibria`; this is how pre-play communication is modeled.
pub fn select_among_equilibria(
    game: &NormalFormGame,
    equilibria: &[ActionProfile],
    rule: SelectionRule,
) -> Result<Selection, SolverError> {
    if equilibria.is_empty() {
        return Err(SolverError::EmptyEquilibriumSet);
    }
    let mut sorted = equilibria.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut payoffs = Vec::with_capacity(sorted.len());
    for p in &sorted {
        payoffs.push(
            game.payoff_at(p)
                .map_err(|_| SolverError::InvalidProfile(p.clone()))?
                .clone(),
        );
    }
    let candidates: Vec<ActionProfile> = match rule {
        SelectionRule::PayoffDominance => sorted
            .iter()
            .zip(&payoffs)
            .filter(|(_, v)| !payoffs.iter().any(|o| o.pareto_dominates(v)))
            .map(|(p, _)| p.clone())
            .collect(),
        SelectionRule::Maximin => {
            let floor = |v: &crate::game::PayoffVector| v.min().unwrap_or(Exact::ZERO);
            let best = payoffs.iter().map(floor).max().expect("non-empty");
            sorted
                .iter()
                .zip(&payoffs)
                .filter(|(_, v)| floor(v) == best)
                .map(|(p, _)| p.clone())
                .collect()
        }
        SelectionRule::First => vec![sorted[0].clone()],
    };
    Ok(Selection {
        rule,
        selected: candidates[0].clone(),
        ambiguous: candidates.len() != 1,
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquilibriumReport {
    pub weak_equilibria: Vec<ActionProfile>,
    pub strict_equilibria: Vec<ActionProfile>,
    pub pareto_front: Vec<ActionProfile>,
    pub dominance_trace: Vec<Elimination>,
    /// `None` models play without communication: the full set is reported.
    pub selection: Option<Selection>,
}

/// Runs the whole solver; selection is made among the equilibria of `mode`.
pub fn analyze(
    game: &NormalFormGame,
    mode: Mode,
    elimination: Mode,
    rule: Option<SelectionRule>,
) -> Result<EquilibriumReport, SolverError> {
    let weak = pure_equilibria(game, Mode::Weak);
    let strict = pure_equilibria(game, Mode::Strict);
    let pool = match mode {
        Mode::Weak => &weak,
        Mode::Strict => &strict,
    };
    let selection = match rule {
        Some(r) if !pool.is_empty() => Some(select_among_equilibria(game, pool, r)?),
        _ => None,
    };
    Ok(EquilibriumReport {
        pareto_front: pareto_front(game),
        dominance_trace: iterated_elimination(game, elimination).trace,
        weak_equilibria: weak,
        strict_equilibria: strict,
        selection,
    })
}
