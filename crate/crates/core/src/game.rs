//! Dense normal-form games over exact payoffs.
//!
//! A [`NormalFormGame`] stores one [`PayoffVector`] for every cell of the
//! Cartesian product of the players' action sets. Cells are laid out in
//! lexicographic profile order, player 0 most significant, which is also the
//! order [`NormalFormGame::profiles`] walks them in.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::Exact;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("a game needs at least two players, got {0}")]
    TooFewPlayers(usize),
    #[error("expected action lists for {expected} players, got {found}")]
    PlayerCountMismatch { expected: usize, found: usize },
    #[error("player {0} has no actions")]
    NoActions(usize),
    #[error("player {player} lists action `{name}` twice")]
    DuplicateAction { player: usize, name: String },
    #[error("no payoff given for profile {0}")]
    MissingCell(ActionProfile),
    #[error("payoff vector for {profile} has {found} entries, expected {expected}")]
    LengthMismatch {
        profile: ActionProfile,
        expected: usize,
        found: usize,
    },
    #[error("invalid profile {0}")]
    InvalidProfile(ActionProfile),
    #[error("invalid player index {0}")]
    InvalidPlayer(usize),
    #[error("expected {expected} cells, got {found}")]
    CellCountMismatch { expected: usize, found: usize },
}

/// One action index per player.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionProfile(pub Vec<usize>);

impl ActionProfile {
    pub fn new(actions: impl Into<Vec<usize>>) -> Self {
        ActionProfile(actions.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn action(&self, player: usize) -> usize {
        self.0[player]
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    /// Copy of this profile with `player` switched to `action`.
    pub fn with(&self, player: usize, action: usize) -> ActionProfile {
        let mut next = self.0.clone();
        next[player] = action;
        ActionProfile(next)
    }

    /// Actions of everyone except `player`, in player order.
    pub fn others(&self, player: usize) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != player)
            .map(|(_, &a)| a)
            .collect()
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// One payoff per player, in player order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PayoffVector(pub Vec<Exact>);

impl PayoffVector {
    pub fn new(values: impl Into<Vec<Exact>>) -> Self {
        PayoffVector(values.into())
    }

    pub fn from_ints(values: &[i64]) -> Self {
        PayoffVector(values.iter().map(|&v| Exact::int(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, player: usize) -> Exact {
        self.0[player]
    }

    pub fn values(&self) -> &[Exact] {
        &self.0
    }

    pub fn total(&self) -> Exact {
        self.0.iter().sum()
    }

    pub fn min(&self) -> Option<Exact> {
        self.0.iter().copied().min()
    }

    /// Weakly better for every player and strictly better for at least one.
    pub fn pareto_dominates(&self, other: &PayoffVector) -> bool {
        let mut strict = false;
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return false;
            }
            if a > b {
                strict = true;
            }
        }
        strict
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Per-cell annotation attached by the villager rule engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellMeta {
    pub robber_payoff: Exact,
    pub defiance_succeeded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormGame {
    player_names: Vec<String>,
    action_names: Vec<Vec<String>>,
    cells: Vec<PayoffVector>,
    metadata: Option<Vec<CellMeta>>,
}

impl NormalFormGame {
    /// Builds a game from a profile-keyed payoff table.
    pub fn new(
        player_count: usize,
        action_names: Vec<Vec<String>>,
        payoffs: &BTreeMap<ActionProfile, PayoffVector>,
    ) -> Result<Self, GameError> {
        check_shape(player_count, &action_names)?;
        let shape: Vec<usize> = action_names.iter().map(Vec::len).collect();
        for profile in payoffs.keys() {
            if !profile_in_shape(&shape, profile) {
                return Err(GameError::InvalidProfile(profile.clone()));
            }
        }
        let mut cells = Vec::with_capacity(shape.iter().product());
        for profile in ProfileIter::new(shape) {
            match payoffs.get(&profile) {
                Some(v) => cells.push(v.clone()),
                None => return Err(GameError::MissingCell(profile)),
            }
        }
        Self::from_cells(action_names, cells)
    }

    /// Builds a game from cells listed in lexicographic profile order.
    pub fn from_cells(action_names: Vec<Vec<String>>, cells: Vec<PayoffVector>) -> Result<Self, GameError> {
        let player_count = action_names.len();
        check_shape(player_count, &action_names)?;
        let shape: Vec<usize> = action_names.iter().map(Vec::len).collect();
        let expected: usize = shape.iter().product();
        if cells.len() != expected {
            return Err(GameError::CellCountMismatch {
                expected,
                found: cells.len(),
            });
        }
        for (profile, cell) in ProfileIter::new(shape).zip(&cells) {
            if cell.len() != player_count {
                return Err(GameError::LengthMismatch {
                    profile,
                    expected: player_count,
                    found: cell.len(),
                });
            }
        }
        Ok(NormalFormGame {
            player_names: default_player_names(player_count),
            action_names,
            cells,
            metadata: None,
        })
    }

    /// Builds a game by evaluating `payoff` on every profile.
    pub fn from_fn<F>(action_names: Vec<Vec<String>>, mut payoff: F) -> Result<Self, GameError>
    where
        F: FnMut(&ActionProfile) -> PayoffVector,
    {
        check_shape(action_names.len(), &action_names)?;
        let shape: Vec<usize> = action_names.iter().map(Vec::len).collect();
        let cells = ProfileIter::new(shape).map(|p| payoff(&p)).collect();
        Self::from_cells(action_names, cells)
    }

    pub fn with_player_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.player_count(), "one name per player");
        self.player_names = names;
        self
    }

    pub fn with_metadata(mut self, metadata: Vec<CellMeta>) -> Self {
        assert_eq!(metadata.len(), self.cells.len(), "one annotation per cell");
        self.metadata = Some(metadata);
        self
    }

    pub fn player_count(&self) -> usize {
        self.action_names.len()
    }

    pub fn player_names(&self) -> &[String] {
        &self.player_names
    }

    pub fn player_name(&self, player: usize) -> &str {
        &self.player_names[player]
    }

    pub fn action_count(&self, player: usize) -> usize {
        self.action_names[player].len()
    }

    pub fn action_counts(&self) -> Vec<usize> {
        self.action_names.iter().map(Vec::len).collect()
    }

    pub fn action_names(&self) -> &[Vec<String>] {
        &self.action_names
    }

    pub fn action_name(&self, player: usize, action: usize) -> &str {
        &self.action_names[player][action]
    }

    pub fn find_action(&self, player: usize, name: &str) -> Option<usize> {
        self.action_names.get(player)?.iter().position(|a| a == name)
    }

    pub fn profile_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[PayoffVector] {
        &self.cells
    }

    pub fn metadata(&self) -> Option<&[CellMeta]> {
        self.metadata.as_deref()
    }

    /// All profiles in lexicographic order.
    pub fn profiles(&self) -> ProfileIter {
        ProfileIter::new(self.action_counts())
    }

    pub fn enumerate_profiles(&self) -> Vec<ActionProfile> {
        self.profiles().collect()
    }

    pub fn check_profile(&self, profile: &ActionProfile) -> Result<(), GameError> {
        if profile_in_shape(&self.action_counts(), profile) {
            Ok(())
        } else {
            Err(GameError::InvalidProfile(profile.clone()))
        }
    }

    pub fn index_of(&self, profile: &ActionProfile) -> Result<usize, GameError> {
        self.check_profile(profile)?;
        let mut index = 0;
        for (p, &a) in profile.0.iter().enumerate() {
            index = index * self.action_count(p) + a;
        }
        Ok(index)
    }

    pub fn payoff_at(&self, profile: &ActionProfile) -> Result<&PayoffVector, GameError> {
        Ok(&self.cells[self.index_of(profile)?])
    }

    pub fn meta_at(&self, profile: &ActionProfile) -> Result<Option<&CellMeta>, GameError> {
        let index = self.index_of(profile)?;
        Ok(self.metadata.as_ref().map(|m| &m[index]))
    }

    /// Payoff to `player` at `profile`, for callers that already validated it.
    pub(crate) fn value(&self, profile: &ActionProfile, player: usize) -> Exact {
        self.cells[self.index_of(profile).expect("validated profile")].get(player)
    }

    /// Actions of `player` maximizing its payoff while the others play `others`.
    pub fn best_responses(&self, player: usize, others: &[usize]) -> Result<Vec<usize>, GameError> {
        if player >= self.player_count() {
            return Err(GameError::InvalidPlayer(player));
        }
        let mut actions = others.to_vec();
        if actions.len() + 1 != self.player_count() {
            actions.insert(player.min(actions.len()), 0);
            return Err(GameError::InvalidProfile(ActionProfile(actions)));
        }
        actions.insert(player, 0);
        let base = ActionProfile(actions);
        self.check_profile(&base)?;
        Ok(self.best_responses_at(&base, player))
    }

    /// Best responses of `player` against the rest of `profile`.
    pub(crate) fn best_responses_at(&self, profile: &ActionProfile, player: usize) -> Vec<usize> {
        let values: Vec<Exact> = (0..self.action_count(player))
            .map(|a| self.value(&profile.with(player, a), player))
            .collect();
        let best = values.iter().copied().max().expect("non-empty action set");
        (0..values.len()).filter(|&a| values[a] == best).collect()
    }

    /// Applies `x -> scale * x + shift` to one player's payoffs.
    pub fn affine_player(&self, player: usize, scale: Exact, shift: Exact) -> NormalFormGame {
        let mut out = self.clone();
        for cell in &mut out.cells {
            cell.0[player] = scale * cell.0[player] + shift;
        }
        out
    }

    /// Applies `x -> scale * x + shift` to every payoff.
    pub fn affine_all(&self, scale: Exact, shift: Exact) -> NormalFormGame {
        let mut out = self.clone();
        for cell in &mut out.cells {
            for v in &mut cell.0 {
                *v = scale * *v + shift;
            }
        }
        out
    }

    /// Sub-game keeping only `keep[p]` (original indices, ascending) for each player.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> NormalFormGame {
        assert_eq!(keep.len(), self.player_count());
        let action_names: Vec<Vec<String>> = keep
            .iter()
            .enumerate()
            .map(|(p, acts)| acts.iter().map(|&a| self.action_names[p][a].clone()).collect())
            .collect();
        let shape: Vec<usize> = keep.iter().map(Vec::len).collect();
        let mut cells = Vec::new();
        let mut meta = Vec::new();
        for sub in ProfileIter::new(shape) {
            let original = ActionProfile(sub.0.iter().enumerate().map(|(p, &i)| keep[p][i]).collect());
            let index = self.index_of(&original).expect("kept actions are valid");
            cells.push(self.cells[index].clone());
            if let Some(m) = &self.metadata {
                meta.push(m[index]);
            }
        }
        NormalFormGame {
            player_names: self.player_names.clone(),
            action_names,
            cells,
            metadata: self.metadata.as_ref().map(|_| meta),
        }
    }

    pub fn profile_label(&self, profile: &ActionProfile) -> String {
        let names: Vec<&str> = profile
            .0
            .iter()
            .enumerate()
            .map(|(p, &a)| self.action_name(p, a))
            .collect();
        format!("({})", names.join(","))
    }
}

fn default_player_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'A' + i as u8) as char).to_string()
            } else {
                format!("P{i}")
            }
        })
        .collect()
}

fn check_shape(player_count: usize, action_names: &[Vec<String>]) -> Result<(), GameError> {
    if player_count < 2 {
        return Err(GameError::TooFewPlayers(player_count));
    }
    if action_names.len() != player_count {
        return Err(GameError::PlayerCountMismatch {
            expected: player_count,
            found: action_names.len(),
        });
    }
    for (p, names) in action_names.iter().enumerate() {
        if names.is_empty() {
            return Err(GameError::NoActions(p));
        }
        let mut seen = HashSet::new();
        for n in names {
            if !seen.insert(n.as_str()) {
                return Err(GameError::DuplicateAction {
                    player: p,
                    name: n.clone(),
                });
            }
        }
    }
    Ok(())
}

fn profile_in_shape(shape: &[usize], profile: &ActionProfile) -> bool {
    profile.len() == shape.len() && profile.0.iter().zip(shape).all(|(&a, &n)| a < n)
}

/// Odometer over all profiles of a shape, last player fastest.
#[derive(Clone, Debug)]
pub struct ProfileIter {
    shape: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl ProfileIter {
    pub fn new(shape: Vec<usize>) -> Self {
        let next = if shape.iter().all(|&n| n > 0) {
            Some(vec![0; shape.len()])
        } else {
            None
        };
        ProfileIter { shape, next }
    }
}

impl Iterator for ProfileIter {
    type Item = ActionProfile;

    fn next(&mut self) -> Option<ActionProfile> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for p in (0..succ.len()).rev() {
            succ[p] += 1;
            if succ[p] < self.shape[p] {
                self.next = Some(succ);
                break;
            }
            succ[p] = 0;
        }
        Some(ActionProfile(current))
    }
}
