//! The rule-maker's side: are the rules effective, which rules pay the
//! robber best, and where along a parameter does the villagers' regime flip.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact::Exact;
use crate::game::{ActionProfile, NormalFormGame};
use crate::rules::{build_villager_game, outcome, survival_utility, Action, RulesError, VillagerRules};
use crate::solver::{pure_equilibria, select_among_equilibria, Mode, Selection, SelectionRule, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("parameter grid is empty")]
    EmptyGrid,
    #[error("parameter `{0}` has no values")]
    EmptyAxis(RuleParam),
    #[error("unknown rule parameter `{0}`")]
    UnknownParameter(String),
    #[error("value {value} is not valid for `{param}`")]
    InvalidValue { param: RuleParam, value: Exact },
    #[error(transparent)]
    Rules(#[from] RulesError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A numeric handle on one [`VillagerRules`] field. Flags take 0 or 1.
///
/// Declaration order is the order grid values are applied in, so an explicit
/// `reward_enabled` axis overrides the switch implied by `reward_pool`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RuleParam {
    NVillagers,
    Endowment,
    Tax,
    RewardPool,
    RewardEnabled,
    PunishmentEnabled,
    RobberStrength,
    VillagerStrength,
    BetrayerAidsRobber,
    SurvivalThreshold,
}

impl RuleParam {
    pub const ALL: [RuleParam; 10] = [
        RuleParam::NVillagers,
        RuleParam::Endowment,
        RuleParam::Tax,
        RuleParam::RewardPool,
        RuleParam::RewardEnabled,
        RuleParam::PunishmentEnabled,
        RuleParam::RobberStrength,
        RuleParam::VillagerStrength,
        RuleParam::BetrayerAidsRobber,
        RuleParam::SurvivalThreshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleParam::NVillagers => "n_villagers",
            RuleParam::Endowment => "endowment",
            RuleParam::Tax => "tax",
            RuleParam::RewardPool => "reward_pool",
            RuleParam::RewardEnabled => "reward_enabled",
            RuleParam::PunishmentEnabled => "punishment_enabled",
            RuleParam::RobberStrength => "robber_strength",
            RuleParam::VillagerStrength => "villager_strength",
            RuleParam::BetrayerAidsRobber => "betrayer_aids_robber",
            RuleParam::SurvivalThreshold => "survival_threshold",
        }
    }

    /// Writes `value` into `rules`. Setting `reward_pool` also switches the
    /// reward on exactly when the pool is positive.
    pub fn apply(self, rules: &mut VillagerRules, value: Exact) -> Result<(), DesignError> {
        let invalid = || DesignError::InvalidValue { param: self, value };
        let flag = || {
            if value == Exact::ZERO {
                Ok(false)
            } else if value == Exact::ONE {
                Ok(true)
            } else {
                Err(invalid())
            }
        };
        match self {
            RuleParam::NVillagers => {
                if !value.is_integer() || value.numer() < 2 {
                    return Err(invalid());
                }
                rules.n_villagers = value.numer() as usize;
            }
            RuleParam::Endowment => rules.endowment = value,
            RuleParam::Tax => rules.tax = value,
            RuleParam::RewardPool => {
                rules.reward_pool = value;
                rules.reward_enabled = value.is_positive();
            }
            RuleParam::RewardEnabled => rules.reward_enabled = flag()?,
            RuleParam::PunishmentEnabled => rules.punishment_enabled = flag()?,
            RuleParam::RobberStrength => rules.robber_strength = value,
            RuleParam::VillagerStrength => rules.villager_strength = value,
            RuleParam::BetrayerAidsRobber => rules.betrayer_aids_robber = flag()?,
            RuleParam::SurvivalThreshold => rules.survival_threshold = Some(value),
        }
        rules.validate().map_err(|_| invalid())
    }
}

impl fmt::Display for RuleParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleParam {
    type Err = DesignError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| DesignError::UnknownParameter(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EffectivenessReport {
    /// Obeying minus defying alone (others obey), in utility.
    pub punishment_margin: Exact,
    /// Betraying minus obeying while one other villager defies, in utility.
    pub reward_margin: Exact,
    pub effective: bool,
}

/// Measures both instruments against a single deviator among obeyers.
///
/// Margins are differences of settled outcomes, after the survival
/// transform when the rules carry a threshold. A disabled instrument does
/// not count against effectiveness.
pub fn effectiveness(rules: &VillagerRules) -> Result<EffectivenessReport, DesignError> {
    rules.validate()?;
    let n = rules.n_villagers;
    let utility = |x: Exact| match rules.survival_threshold {
        Some(s) => survival_utility(x, s),
        None => x,
    };
    let focal_payoff = |focal: Action, second: Action| -> Result<Exact, DesignError> {
        let mut actions = vec![Action::Obey.index(); n];
        actions[0] = focal.index();
        actions[1] = second.index();
        Ok(utility(
            outcome(rules, &ActionProfile(actions))?.villager_payoffs.get(0),
        ))
    };
    let punishment_margin = focal_payoff(Action::Obey, Action::Obey)? - focal_payoff(Action::Defy, Action::Obey)?;
    let reward_margin = focal_payoff(Action::Betray, Action::Defy)? - focal_payoff(Action::Obey, Action::Defy)?;
    let effective = (!rules.punishment_enabled || punishment_margin.is_positive())
        && (!rules.reward_enabled || reward_margin.is_positive());
    Ok(EffectivenessReport {
        punishment_margin,
        reward_margin,
        effective,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Defiance,
    Compliance,
    Ambiguous,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Defiance => "defiance",
            Regime::Compliance => "compliance",
            Regime::Ambiguous => "ambiguous",
        })
    }
}

/// Defiance if every candidate the selection could not separate contains a
/// defier, compliance if none does.
pub fn regime_of_selection(selection: &Selection) -> Regime {
    let has_defier = |p: &ActionProfile| p.actions().contains(&Action::Defy.index());
    let defiant = selection.candidates.iter().filter(|p| has_defier(p)).count();
    if defiant == selection.candidates.len() {
        Regime::Defiance
    } else if defiant == 0 {
        Regime::Compliance
    } else {
        Regime::Ambiguous
    }
}

/// Regime of a villager game under weak equilibria and `rule`.
pub fn regime_of(game: &NormalFormGame, rule: SelectionRule) -> Result<Regime, SolverError> {
    let eq = pure_equilibria(game, Mode::Weak);
    Ok(regime_of_selection(&select_among_equilibria(game, &eq, rule)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEvaluation {
    pub rules: VillagerRules,
    pub weak_equilibria: Vec<ActionProfile>,
    pub selection: Selection,
    pub regime: Regime,
    pub robber_revenue: Exact,
    pub effectiveness: EffectivenessReport,
}

pub fn evaluate_rules(rules: &VillagerRules, rule: SelectionRule) -> Result<RuleEvaluation, DesignError> {
    let effectiveness = effectiveness(rules)?;
    let game = build_villager_game(rules);
    let weak_equilibria = pure_equilibria(&game, Mode::Weak);
    let selection = select_among_equilibria(&game, &weak_equilibria, rule)?;
    let robber_revenue = game
        .meta_at(&selection.selected)
        .expect("selected profile comes from the game")
        .expect("villager games carry metadata")
        .robber_payoff;
    Ok(RuleEvaluation {
        rules: rules.clone(),
        regime: regime_of_selection(&selection),
        weak_equilibria,
        selection,
        robber_revenue,
        effectiveness,
    })
}

/// Named value lists whose cross product is searched.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParameterGrid {
    axes: Vec<(RuleParam, Vec<Exact>)>,
}

impl ParameterGrid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn axis(mut self, param: RuleParam, values: impl Into<Vec<Exact>>) -> Self {
        self.axes.retain(|(p, _)| *p != param);
        self.axes.push((param, values.into()));
        self.axes.sort_by_key(|(p, _)| *p);
        self
    }

    pub fn axes(&self) -> &[(RuleParam, Vec<Exact>)] {
        &self.axes
    }

    /// Every grid point, odometer order over the axes.
    pub fn points(&self) -> Vec<Vec<(RuleParam, Exact)>> {
        let mut points = vec![Vec::new()];
        for (param, values) in &self.axes {
            points = points
                .into_iter()
                .flat_map(|prefix| {
                    values.iter().map(move |v| {
                        let mut next = prefix.clone();
                        next.push((*param, *v));
                        next
                    })
                })
                .collect();
        }
        points
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridResult {
    pub point: Vec<(RuleParam, Exact)>,
    pub evaluation: RuleEvaluation,
    /// Revenue and regime used for ranking. They differ from the evaluation
    /// only for ineffective rules under `require_effective`.
    pub score: Exact,
    pub scored_regime: Regime,
}

/// Evaluates every grid point over `base` and ranks by score, highest first;
/// ties go to the lexicographically smaller point.
///
/// With `require_effective`, ineffective rules score as defiance with zero
/// revenue: villagers with nothing to lose defy, so the robber collects nothing.
pub fn optimize_rules(
    grid: &ParameterGrid,
    base: &VillagerRules,
    rule: SelectionRule,
    require_effective: bool,
) -> Result<Vec<GridResult>, DesignError> {
    if grid.axes.is_empty() {
        return Err(DesignError::EmptyGrid);
    }
    if let Some((param, _)) = grid.axes.iter().find(|(_, v)| v.is_empty()) {
        return Err(DesignError::EmptyAxis(*param));
    }
    let mut results = Vec::new();
    for point in grid.points() {
        let mut rules = base.clone();
        for &(param, value) in &point {
            param.apply(&mut rules, value)?;
        }
        let evaluation = evaluate_rules(&rules, rule)?;
        let (score, scored_regime) = if require_effective && !evaluation.effectiveness.effective {
            (Exact::ZERO, Regime::Defiance)
        } else {
            (evaluation.robber_revenue, evaluation.regime)
        };
        results.push(GridResult {
            point,
            evaluation,
            score,
            scored_regime,
        });
    }
    results.sort_by(|a, b| b.score.cmp(&a.score).then_with(|| a.point.cmp(&b.point)));
    Ok(results)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub value: Exact,
    pub regime: Regime,
    pub selected: ActionProfile,
    pub robber_revenue: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sweep {
    pub parameter: RuleParam,
    pub points: Vec<SweepPoint>,
    /// Index `i` means the regime changes between points `i` and `i + 1`.
    pub flips: Vec<usize>,
}

pub fn breakpoint_sweep(
    base: &VillagerRules,
    parameter: RuleParam,
    values: &[Exact],
    rule: SelectionRule,
) -> Result<Sweep, DesignError> {
    let mut points = Vec::with_capacity(values.len());
    for &value in values {
        let mut rules = base.clone();
        parameter.apply(&mut rules, value)?;
        let evaluation = evaluate_rules(&rules, rule)?;
        points.push(SweepPoint {
            value,
            regime: evaluation.regime,
            selected: evaluation.selection.selected,
            robber_revenue: evaluation.robber_revenue,
        });
    }
    let flips = points
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0].regime != w[1].regime)
        .map(|(i, _)| i)
        .collect();
    Ok(Sweep {
        parameter,
        points,
        flips,
    })
}
