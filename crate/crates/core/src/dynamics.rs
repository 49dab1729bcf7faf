//! Repeated play under fixed rules, with exit rights, and best-response
//! dynamics on arbitrary games.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exact::Exact;
use crate::game::{ActionProfile, GameError, NormalFormGame, PayoffVector};
use crate::rules::{build_villager_game, outcome, Action, RulesError, VillagerRules};
use crate::solver::{is_equilibrium, Mode};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynamicsError {
    #[error("expected one agent per villager ({expected}), got {found}")]
    AgentCountMismatch { expected: usize, found: usize },
    #[error("agent {agent}: {reason}")]
    InvalidAction { agent: usize, reason: String },
    #[error("round limit must be at least 1")]
    NoRounds,
    #[error("trajectory has no rounds")]
    EmptyTrajectory,
    #[error(transparent)]
    Rules(#[from] RulesError),
    #[error(transparent)]
    Game(#[from] GameError),
}

fn obey() -> Action {
    Action::Obey
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Strategy {
    Fixed {
        action: Action,
    },
    /// Best response to the others' previous-round play.
    BestResponse {
        #[serde(default = "obey")]
        opening: Action,
    },
    /// Plays its own slot of an agreed profile.
    Coordinator {
        target: Vec<Action>,
    },
    /// Plays `start` unless an opponent betrayed last round.
    Trigger {
        start: Action,
        fallback: Action,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentSpec {
    pub strategy: Strategy,
    /// Leaves the game after any round paying strictly less than this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exit_below: Option<Exact>,
}

impl AgentSpec {
    pub fn new(strategy: Strategy) -> Self {
        AgentSpec {
            strategy,
            exit_below: None,
        }
    }

    pub fn fixed(action: Action) -> Self {
        Self::new(Strategy::Fixed { action })
    }

    pub fn exit_below(mut self, threshold: Exact) -> Self {
        self.exit_below = Some(threshold);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Participant {
    Villager(usize),
    Robber,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum Termination {
    RobberDefeated,
    ParticipantExit { who: Vec<Participant> },
    RoundLimit,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub profile: Vec<Action>,
    pub villager_payoffs: PayoffVector,
    pub robber_payoff: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trajectory {
    pub rules: VillagerRules,
    pub seed: u64,
    pub rounds: Vec<Round>,
    pub termination: Termination,
    pub cumulative_villagers: Vec<Exact>,
    pub cumulative_robber: Exact,
}

fn validate_agents(rules: &VillagerRules, agents: &[AgentSpec]) -> Result<(), DynamicsError> {
    if agents.len() != rules.n_villagers {
        return Err(DynamicsError::AgentCountMismatch {
            expected: rules.n_villagers,
            found: agents.len(),
        });
    }
    for (i, agent) in agents.iter().enumerate() {
        match &agent.strategy {
            Strategy::Coordinator { target } if target.len() != rules.n_villagers => {
                return Err(DynamicsError::InvalidAction {
                    agent: i,
                    reason: format!(
                        "coordinator target has {} actions, expected {}",
                        target.len(),
                        rules.n_villagers
                    ),
                });
            }
            Strategy::Trigger { start, fallback } if start == fallback => {
                return Err(DynamicsError::InvalidAction {
                    agent: i,
                    reason: "trigger fallback must differ from its start action".into(),
                });
            }
            _ => {}
        }
    }
    Ok(())
}

fn choose(stage: &NormalFormGame, agents: &[AgentSpec], me: usize, last: Option<&[Action]>) -> Action {
    match &agents[me].strategy {
        Strategy::Fixed { action } => *action,
        Strategy::Coordinator { target } => target[me],
        Strategy::BestResponse { opening } => match last {
            None => *opening,
            Some(prev) => {
                let profile = ActionProfile(prev.iter().map(|a| a.index()).collect());
                let best = stage.best_responses_at(&profile, me);
                Action::from_index(best[0]).expect("villager action")
            }
        },
        Strategy::Trigger { start, fallback } => {
            let provoked =
                last.is_some_and(|prev| prev.iter().enumerate().any(|(j, &a)| j != me && a == Action::Betray));
            if provoked {
                *fallback
            } else {
                *start
            }
        }
    }
}

/// Plays the stage game repeatedly until defeat, an exit or the round limit.
///
/// Core agents are deterministic; `seed` is recorded for reproducibility.
pub fn simulate(
    rules: &VillagerRules,
    agents: &[AgentSpec],
    robber_exit_threshold: Option<Exact>,
    rounds: usize,
    seed: u64,
) -> Result<Trajectory, DynamicsError> {
    rules.validate()?;
    validate_agents(rules, agents)?;
    if rounds == 0 {
        return Err(DynamicsError::NoRounds);
    }
    let stage = build_villager_game(rules);
    let n = rules.n_villagers;
    let mut history: Vec<Round> = Vec::new();
    let mut cumulative_villagers = vec![Exact::ZERO; n];
    let mut cumulative_robber = Exact::ZERO;
    let mut termination = Termination::RoundLimit;

    for _ in 0..rounds {
        let last = history.last().map(|r| r.profile.as_slice());
        let profile: Vec<Action> = (0..n).map(|i| choose(&stage, agents, i, last)).collect();
        let indices = ActionProfile(profile.iter().map(|a| a.index()).collect());
        let settled = outcome(rules, &indices)?;
        for (acc, v) in cumulative_villagers.iter_mut().zip(settled.villager_payoffs.values()) {
            *acc += *v;
        }
        cumulative_robber += settled.robber_payoff;

        let mut leaving: Vec<Participant> = agents
            .iter()
            .enumerate()
            .filter(|(i, a)| a.exit_below.is_some_and(|t| settled.villager_payoffs.get(*i) < t))
            .map(|(i, _)| Participant::Villager(i))
            .collect();
        if !settled.defiance_succeeded && robber_exit_threshold.is_some_and(|t| settled.robber_payoff < t) {
            leaving.push(Participant::Robber);
        }
        history.push(Round {
            profile,
            villager_payoffs: settled.villager_payoffs,
            robber_payoff: settled.robber_payoff,
        });
        if settled.defiance_succeeded {
            termination = Termination::RobberDefeated;
            break;
        }
        if !leaving.is_empty() {
            termination = Termination::ParticipantExit { who: leaving };
            break;
        }
    }

    Ok(Trajectory {
        rules: rules.clone(),
        seed,
        rounds: history,
        termination,
        cumulative_villagers,
        cumulative_robber,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DynamicsEnd {
    FixedPoint,
    Cycle { length: usize },
    StepLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponsePath {
    pub path: Vec<ActionProfile>,
    pub end: DynamicsEnd,
}

fn first_unsettled(game: &NormalFormGame, profile: &ActionProfile) -> Option<(usize, usize)> {
    (0..game.player_count()).find_map(|player| {
        let best = game.best_responses_at(profile, player);
        if best.contains(&profile.action(player)) {
            None
        } else {
            Some((player, best[0]))
        }
    })
}

/// Sequential best-response dynamics: the lowest player not best-responding
/// switches to its lowest best response.
///
/// A cycle is reported on the first revisit; the path then ends with the
/// repeated profile.
pub fn best_response_dynamics(
    game: &NormalFormGame,
    initial: &ActionProfile,
    max_steps: usize,
) -> Result<BestResponsePath, GameError> {
    game.check_profile(initial)?;
    let mut path = vec![initial.clone()];
    let mut seen = HashMap::from([(initial.clone(), 0usize)]);
    for _ in 0..max_steps {
        let current = path.last().expect("non-empty");
        let Some((player, action)) = first_unsettled(game, current) else {
            return Ok(BestResponsePath {
                path,
                end: DynamicsEnd::FixedPoint,
            });
        };
        let next = current.with(player, action);
        let step = path.len();
        path.push(next.clone());
        if let Some(&first) = seen.get(&next) {
            return Ok(BestResponsePath {
                path,
                end: DynamicsEnd::Cycle { length: step - first },
            });
        }
        seen.insert(next, step);
    }
    let end = if first_unsettled(game, path.last().expect("non-empty")).is_none() {
        DynamicsEnd::FixedPoint
    } else {
        DynamicsEnd::StepLimit
    };
    Ok(BestResponsePath { path, end })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrajectorySummary {
    pub rounds_played: usize,
    pub termination: Termination,
    pub cumulative_villagers: Vec<Exact>,
    pub cumulative_robber: Exact,
    /// Per villager, how often each of Defy, Obey, Betray was played.
    pub action_frequency: Vec<[usize; 3]>,
    pub final_round_is_equilibrium: bool,
}

pub fn trajectory_summary(trajectory: &Trajectory) -> Result<TrajectorySummary, DynamicsError> {
    let last = trajectory.rounds.last().ok_or(DynamicsError::EmptyTrajectory)?;
    let n = trajectory.rules.n_villagers;
    let mut action_frequency = vec![[0usize; 3]; n];
    let mut villagers = vec![Exact::ZERO; n];
    let mut robber = Exact::ZERO;
    for round in &trajectory.rounds {
        for (i, a) in round.profile.iter().enumerate() {
            action_frequency[i][a.index()] += 1;
        }
        for (acc, v) in villagers.iter_mut().zip(round.villager_payoffs.values()) {
            *acc += *v;
        }
        robber += round.robber_payoff;
    }
    let stage = build_villager_game(&trajectory.rules);
    let final_profile = ActionProfile(last.profile.iter().map(|a| a.index()).collect());
    Ok(TrajectorySummary {
        rounds_played: trajectory.rounds.len(),
        termination: trajectory.termination.clone(),
        cumulative_villagers: villagers,
        cumulative_robber: robber,
        action_frequency,
        final_round_is_equilibrium: is_equilibrium(&stage, &final_profile, Mode::Weak),
    })
}
