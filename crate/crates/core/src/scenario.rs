//! Scenario files: one JSON document describes one reproducible experiment.
//!
//! ```json
//! {
//!   "model": "villager",
//!   "rules": { "tax": 3, "reward_enabled": false },
//!   "analysis": { "equilibria": "weak", "select": "payoff-dominance" }
//! }
//! ```
//!
//! Unknown keys are rejected at every level.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::design::{ParameterGrid, RuleParam};
use crate::dynamics::{AgentSpec, Strategy};
use crate::exact::Exact;
use crate::game::{ActionProfile, NormalFormGame, PayoffVector};
use crate::rules::{build_villager_game, pd_game, PdVariant, RulesError, VillagerRules};
use crate::solver::{Mode, SelectionRule};

#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed scenario: {0}")]
    Parse(String),
    #[error("invalid scenario field `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("analysis failed: {0}")]
    Runtime(String),
}

impl ScenarioError {
    fn invalid(field: impl Into<String>, message: impl fmt::Display) -> Self {
        ScenarioError::Validation {
            field: field.into(),
            message: message.to_string(),
        }
    }

    pub fn runtime(err: impl fmt::Display) -> Self {
        ScenarioError::Runtime(err.to_string())
    }

    /// Process exit status for this error: 2 for bad input, 3 for failures
    /// while analyzing a valid scenario.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Io { .. } | ScenarioError::Parse(_) | ScenarioError::Validation { .. } => 2,
            ScenarioError::Runtime(_) => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Villager,
    Matrix,
    PdClassic,
    PdModified,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Villager => "villager",
            Model::Matrix => "matrix",
            Model::PdClassic => "pd-classic",
            Model::PdModified => "pd-modified",
        })
    }
}

/// Nested arrays in lexicographic profile order; leaves are payoff vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PayoffTree {
    Leaf(Vec<Exact>),
    Node(Vec<PayoffTree>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub players: Vec<String>,
    pub actions: Vec<Vec<String>>,
    pub payoffs: PayoffTree,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Analysis {
    #[serde(default)]
    pub equilibria: Mode,
    /// Absent means no pre-play communication: the full set is reported.
    #[serde(default)]
    pub select: Option<SelectionRule>,
    #[serde(default = "yes")]
    pub pareto: bool,
    #[serde(default)]
    pub dominance: Option<Mode>,
}

impl Default for Analysis {
    fn default() -> Self {
        Analysis {
            equilibria: Mode::Weak,
            select: None,
            pareto: true,
            dominance: None,
        }
    }
}

fn default_rounds() -> usize {
    10
}

fn default_max_steps() -> usize {
    100
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BestResponseSpec {
    pub initial: Vec<String>,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DynamicsSpec {
    #[serde(default)]
    pub agents: Vec<AgentSpec>,
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    #[serde(default)]
    pub robber_exit_threshold: Option<Exact>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub best_response: Option<BestResponseSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub param: String,
    pub values: Vec<Exact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignSpec {
    #[serde(default)]
    pub grid: Option<BTreeMap<String, Vec<Exact>>>,
    #[serde(default)]
    pub sweep: Option<SweepSpec>,
    #[serde(default)]
    pub require_effective: bool,
    #[serde(default)]
    pub select: SelectionRule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub model: Model,
    #[serde(default)]
    pub rules: Option<VillagerRules>,
    #[serde(default)]
    pub matrix: Option<MatrixSpec>,
    #[serde(default)]
    pub analysis: Analysis,
    #[serde(default)]
    pub dynamics: Option<DynamicsSpec>,
    #[serde(default)]
    pub design: Option<DesignSpec>,
}

/// Scenarios shipped with the crate: name, one-line summary, file contents.
pub const BUNDLED: &[(&str, &str, &str)] = &[
    (
        "base",
        "three villagers, reward and punishment in force",
        include_str!("../scenarios/base.json"),
    ),
    (
        "no-reward",
        "the accomplice reward abolished",
        include_str!("../scenarios/no-reward.json"),
    ),
    (
        "no-punishment",
        "confiscation of defiers abolished",
        include_str!("../scenarios/no-punishment.json"),
    ),
    (
        "pd-classic",
        "classic two-prisoner dilemma",
        include_str!("../scenarios/pd-classic.json"),
    ),
    (
        "pd-modified",
        "prisoner's dilemma with betrayal made costly",
        include_str!("../scenarios/pd-modified.json"),
    ),
    (
        "famine",
        "bad harvest of 3 bags taxed at 5, survival needs 3",
        include_str!("../scenarios/famine.json"),
    ),
    (
        "newspaper",
        "unlocked newspaper boxes: cheap theft, painful credit stain",
        include_str!("../scenarios/newspaper.json"),
    ),
    (
        "lamborghini",
        "how large a betrayal reward breaks collective defiance",
        include_str!("../scenarios/lamborghini.json"),
    ),
    (
        "designer-grid",
        "robber's best tax and reward when villagers need 3 bags",
        include_str!("../scenarios/designer-grid.json"),
    ),
];

pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(n, _, _)| *n).collect()
}

pub fn bundled_source(name: &str) -> Option<&'static str> {
    let name = name.strip_suffix(".json").unwrap_or(name);
    BUNDLED.iter().find(|(n, _, _)| *n == name).map(|(_, _, s)| *s)
}

pub fn bundled_scenario(name: &str) -> Result<Scenario, ScenarioError> {
    let source = bundled_source(name).ok_or_else(|| {
        ScenarioError::invalid(
            "scenario",
            format!("no bundled scenario `{name}` (try: {})", bundled_names().join(", ")),
        )
    })?;
    parse_scenario(source)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, ScenarioError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_scenario(&text)
}

/// Resolves a command-line scenario argument: an existing file path wins,
/// otherwise the argument names a bundled scenario. Returns the display name.
pub fn resolve_scenario(arg: &str) -> Result<(String, Scenario), ScenarioError> {
    let path = Path::new(arg);
    if path.is_file() {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| arg.to_string());
        return Ok((name, load_scenario(path)?));
    }
    let name = arg.strip_suffix(".json").unwrap_or(arg);
    Ok((name.to_string(), bundled_scenario(name)?))
}

pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let scenario: Scenario = serde_json::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    scenario.validate()?;
    Ok(scenario)
}

/// Pretty JSON that [`parse_scenario`] reads back to an equal scenario.
pub fn render_scenario(scenario: &Scenario) -> String {
    let mut out = serde_json::to_string_pretty(scenario).expect("scenarios serialize");
    out.push('\n');
    out
}

fn rules_error_field(err: &RulesError) -> String {
    match err {
        RulesError::TooFewVillagers(_) => "rules.n_villagers".into(),
        RulesError::Negative { field, .. } | RulesError::NonPositive { field, .. } => format!("rules.{field}"),
        _ => "rules".into(),
    }
}

fn flatten_tree(
    tree: &PayoffTree,
    shape: &[usize],
    players: usize,
    path: String,
    out: &mut Vec<PayoffVector>,
) -> Result<(), ScenarioError> {
    match (tree, shape.split_first()) {
        (PayoffTree::Leaf(values), None) => {
            if values.len() != players {
                return Err(ScenarioError::invalid(
                    path,
                    format!("expected {players} payoffs, found {}", values.len()),
                ));
            }
            out.push(PayoffVector::new(values.clone()));
            Ok(())
        }
        (PayoffTree::Node(children), Some((&n, rest))) => {
            if children.len() != n {
                return Err(ScenarioError::invalid(
                    path,
                    format!("expected {n} entries, found {}", children.len()),
                ));
            }
            for (i, child) in children.iter().enumerate() {
                flatten_tree(child, rest, players, format!("{path}[{i}]"), out)?;
            }
            Ok(())
        }
        (PayoffTree::Leaf(values), Some((&n, _))) if values.is_empty() => {
            Err(ScenarioError::invalid(path, format!("expected {n} entries, found 0")))
        }
        (PayoffTree::Leaf(_), Some(_)) => Err(ScenarioError::invalid(path, "nested too shallowly")),
        (PayoffTree::Node(_), None) => Err(ScenarioError::invalid(path, "nested too deeply")),
    }
}

impl Scenario {
    pub fn villager(rules: VillagerRules) -> Self {
        Scenario {
            model: Model::Villager,
            rules: Some(rules),
            matrix: None,
            analysis: Analysis::default(),
            dynamics: None,
            design: None,
        }
    }

    pub fn validate(&self) -> Result<(), ScenarioError> {
        match self.model {
            Model::Villager => {
                if self.matrix.is_some() {
                    return Err(ScenarioError::invalid(
                        "matrix",
                        "villager scenarios take `rules`, not `matrix`",
                    ));
                }
                let rules = self
                    .rules
                    .as_ref()
                    .ok_or_else(|| ScenarioError::invalid("rules", "villager scenarios need `rules`"))?;
                rules
                    .validate()
                    .map_err(|e| ScenarioError::invalid(rules_error_field(&e), e))?;
            }
            Model::Matrix => {
                if self.rules.is_some() {
                    return Err(ScenarioError::invalid(
                        "rules",
                        "matrix scenarios take `matrix`, not `rules`",
                    ));
                }
                if self.matrix.is_none() {
                    return Err(ScenarioError::invalid("matrix", "matrix scenarios need `matrix`"));
                }
            }
            Model::PdClassic | Model::PdModified => {
                if self.rules.is_some() {
                    return Err(ScenarioError::invalid("rules", "built-in games take no `rules`"));
                }
                if self.matrix.is_some() {
                    return Err(ScenarioError::invalid("matrix", "built-in games take no `matrix`"));
                }
            }
        }
        let game = self.game()?;

        if let Some(dynamics) = &self.dynamics {
            if !dynamics.agents.is_empty() {
                let rules = self
                    .rules
                    .as_ref()
                    .ok_or_else(|| ScenarioError::invalid("dynamics.agents", "repeated play needs a villager model"))?;
                if dynamics.agents.len() != rules.n_villagers {
                    return Err(ScenarioError::invalid(
                        "dynamics.agents",
                        format!("expected {} agents, found {}", rules.n_villagers, dynamics.agents.len()),
                    ));
                }
                for (i, agent) in dynamics.agents.iter().enumerate() {
                    let field = format!("dynamics.agents[{i}]");
                    match &agent.strategy {
                        Strategy::Coordinator { target } if target.len() != rules.n_villagers => {
                            return Err(ScenarioError::invalid(field, "coordinator target has the wrong length"));
                        }
                        Strategy::Trigger { start, fallback } if start == fallback => {
                            return Err(ScenarioError::invalid(field, "trigger fallback must differ from start"));
                        }
                        _ => {}
                    }
                }
                if dynamics.rounds == 0 {
                    return Err(ScenarioError::invalid("dynamics.rounds", "must be at least 1"));
                }
            }
            if let Some(br) = &dynamics.best_response {
                profile_from_names(&game, &br.initial)
                    .map_err(|m| ScenarioError::invalid("dynamics.best_response.initial", m))?;
            }
        }

        if let Some(design) = &self.design {
            let rules = self
                .rules
                .as_ref()
                .ok_or_else(|| ScenarioError::invalid("design", "rule design needs a villager model"))?;
            if let Some(grid) = &design.grid {
                self.parameter_grid()?;
                if grid.is_empty() {
                    return Err(ScenarioError::invalid("design.grid", "grid is empty"));
                }
            }
            if let Some(sweep) = &design.sweep {
                let param: RuleParam = sweep
                    .param
                    .parse()
                    .map_err(|e| ScenarioError::invalid("design.sweep.param", e))?;
                if sweep.values.is_empty() {
                    return Err(ScenarioError::invalid("design.sweep.values", "no values"));
                }
                for v in &sweep.values {
                    param
                        .apply(&mut rules.clone(), *v)
                        .map_err(|e| ScenarioError::invalid("design.sweep.values", e))?;
                }
            }
        }
        Ok(())
    }

    /// The stage game this scenario describes.
    pub fn game(&self) -> Result<NormalFormGame, ScenarioError> {
        match self.model {
            Model::Villager => {
                let rules = self
                    .rules
                    .as_ref()
                    .ok_or_else(|| ScenarioError::invalid("rules", "villager scenarios need `rules`"))?;
                Ok(build_villager_game(rules))
            }
            Model::PdClassic => Ok(pd_game(PdVariant::Classic)),
            Model::PdModified => Ok(pd_game(PdVariant::Modified)),
            Model::Matrix => {
                let m = self
                    .matrix
                    .as_ref()
                    .ok_or_else(|| ScenarioError::invalid("matrix", "matrix scenarios need `matrix`"))?;
                let n = m.players.len();
                if n < 2 {
                    return Err(ScenarioError::invalid("matrix.players", "need at least two players"));
                }
                if m.actions.len() != n {
                    return Err(ScenarioError::invalid(
                        "matrix.actions",
                        format!("expected {n} action lists, found {}", m.actions.len()),
                    ));
                }
                let shape: Vec<usize> = m.actions.iter().map(Vec::len).collect();
                let mut cells = Vec::new();
                flatten_tree(&m.payoffs, &shape, n, "matrix.payoffs".into(), &mut cells)?;
                let game = NormalFormGame::from_cells(m.actions.clone(), cells)
                    .map_err(|e| ScenarioError::invalid("matrix.actions", e))?;
                Ok(game.with_player_names(m.players.clone()))
            }
        }
    }

    pub fn parameter_grid(&self) -> Result<Option<ParameterGrid>, ScenarioError> {
        let Some(grid) = self.design.as_ref().and_then(|d| d.grid.as_ref()) else {
            return Ok(None);
        };
        let base = self.rules.clone().unwrap_or_default();
        let mut out = ParameterGrid::new();
        for (name, values) in grid {
            let field = format!("design.grid.{name}");
            let param: RuleParam = name.parse().map_err(|e| ScenarioError::invalid(field.clone(), e))?;
            if values.is_empty() {
                return Err(ScenarioError::invalid(field, "no values"));
            }
            for v in values {
                param
                    .apply(&mut base.clone(), *v)
                    .map_err(|e| ScenarioError::invalid(field.clone(), e))?;
            }
            out = out.axis(param, values.clone());
        }
        Ok(Some(out))
    }
}

/// Resolves action names (one per player) to a profile of `game`.
pub fn profile_from_names(game: &NormalFormGame, names: &[String]) -> Result<ActionProfile, String> {
    if names.len() != game.player_count() {
        return Err(format!(
            "expected {} actions, found {}",
            game.player_count(),
            names.len()
        ));
    }
    names
        .iter()
        .enumerate()
        .map(|(p, n)| {
            game.find_action(p, n)
                .ok_or_else(|| format!("player {} has no action `{n}`", game.player_name(p)))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(ActionProfile)
}
