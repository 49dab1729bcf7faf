//! The rule-maker's rules and the games they induce.
//!
//! [`VillagerRules`] fixes endowment, tax, reward pool, the two instrument
//! flags, the strength model and an optional survival threshold. [`outcome`]
//! settles one round for a profile of [`Action`]s and
//! [`build_villager_game`] tabulates it over all `3^n` profiles.

use serde::{Deserialize, Serialize};

use crate::exact::Exact;
use crate::game::{ActionProfile, CellMeta, NormalFormGame, PayoffVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RulesError {
    #[error("rules.n_villagers must be at least 2, got {0}")]
    TooFewVillagers(usize),
    #[error("rules.{field} must be non-negative, got {value}")]
    Negative { field: &'static str, value: Exact },
    #[error("rules.{field} must be positive, got {value}")]
    NonPositive { field: &'static str, value: Exact },
    #[error("profile {profile} is not valid for {villagers} villagers")]
    InvalidProfile { profile: ActionProfile, villagers: usize },
    #[error("payoff {0} is negative")]
    NegativePayoff(Exact),
}

/// Villager actions in canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Action {
    Defy = 0,
    Obey = 1,
    Betray = 2,
}

impl Action {
    pub const ALL: [Action; 3] = [Action::Defy, Action::Obey, Action::Betray];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(index: usize) -> Option<Action> {
        Self::ALL.get(index).copied()
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::Defy => "Defy",
            Action::Obey => "Obey",
            Action::Betray => "Betray",
        }
    }

    pub fn from_name(name: &str) -> Option<Action> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VillagerRules {
    pub n_villagers: usize,
    pub endowment: Exact,
    pub tax: Exact,
    pub reward_pool: Exact,
    pub reward_enabled: bool,
    pub punishment_enabled: bool,
    pub robber_strength: Exact,
    pub villager_strength: Exact,
    pub betrayer_aids_robber: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub survival_threshold: Option<Exact>,
}

impl Default for VillagerRules {
    /// Three villagers with five bags each, a tax of three, a reward pool of
    /// two and a robber two and a half times as strong as one villager.
    fn default() -> Self {
        VillagerRules {
            n_villagers: 3,
            endowment: Exact::int(5),
            tax: Exact::int(3),
            reward_pool: Exact::int(2),
            reward_enabled: true,
            punishment_enabled: true,
            robber_strength: Exact::new(5, 2),
            villager_strength: Exact::ONE,
            betrayer_aids_robber: false,
            survival_threshold: None,
        }
    }
}

impl VillagerRules {
    pub fn without_reward() -> Self {
        VillagerRules {
            reward_enabled: false,
            ..Default::default()
        }
    }

    pub fn without_punishment() -> Self {
        VillagerRules {
            punishment_enabled: false,
            ..Default::default()
        }
    }

    /// Bad harvest of three bags taxed at five, no reward, survival at three.
    pub fn famine() -> Self {
        VillagerRules {
            endowment: Exact::int(3),
            tax: Exact::int(5),
            reward_enabled: false,
            survival_threshold: Some(Exact::int(3)),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<(), RulesError> {
        if self.n_villagers < 2 {
            return Err(RulesError::TooFewVillagers(self.n_villagers));
        }
        let non_negative = [
            ("endowment", self.endowment),
            ("tax", self.tax),
            ("reward_pool", self.reward_pool),
        ];
        for (field, value) in non_negative {
            if value.is_negative() {
                return Err(RulesError::Negative { field, value });
            }
        }
        if let Some(s) = self.survival_threshold {
            if s.is_negative() {
                return Err(RulesError::Negative {
                    field: "survival_threshold",
                    value: s,
                });
            }
        }
        for (field, value) in [
            ("robber_strength", self.robber_strength),
            ("villager_strength", self.villager_strength),
        ] {
            if !value.is_positive() {
                return Err(RulesError::NonPositive { field, value });
            }
        }
        Ok(())
    }

    /// Grain actually collected from a taxed villager.
    pub fn collected_tax(&self) -> Exact {
        self.tax.min(self.endowment)
    }

    /// Whether `defiers` defiers beat the robber when `betrayers` side with him.
    pub fn defiance_succeeds(&self, defiers: usize, betrayers: usize) -> bool {
        let attack = Exact::int(defiers as i64) * self.villager_strength;
        let mut defence = self.robber_strength;
        if self.betrayer_aids_robber {
            defence += Exact::int(betrayers as i64) * self.villager_strength;
        }
        attack > defence
    }

    pub fn total_production(&self) -> Exact {
        Exact::int(self.n_villagers as i64) * self.endowment
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VillagerOutcome {
    pub villager_payoffs: PayoffVector,
    pub robber_payoff: Exact,
    pub defiance_succeeded: bool,
    pub defier_count: usize,
    pub betrayer_count: usize,
}

fn to_actions(rules: &VillagerRules, profile: &ActionProfile) -> Result<Vec<Action>, RulesError> {
    let invalid = || RulesError::InvalidProfile {
        profile: profile.clone(),
        villagers: rules.n_villagers,
    };
    if profile.len() != rules.n_villagers {
        return Err(invalid());
    }
    profile
        .actions()
        .iter()
        .map(|&a| Action::from_index(a).ok_or_else(invalid))
        .collect()
}

/// Settles one round: who keeps what, what the robber takes.
pub fn outcome(rules: &VillagerRules, profile: &ActionProfile) -> Result<VillagerOutcome, RulesError> {
    let actions = to_actions(rules, profile)?;
    let defiers = actions.iter().filter(|&&a| a == Action::Defy).count();
    let betrayers = actions.iter().filter(|&&a| a == Action::Betray).count();
    let succeeded = rules.defiance_succeeds(defiers, betrayers);

    let endowment = rules.endowment;
    let taxed = endowment - rules.collected_tax();
    let payoffs: Vec<Exact> = if succeeded {
        vec![endowment; actions.len()]
    } else {
        let rewarded = defiers >= 1 && rules.reward_enabled;
        actions
            .iter()
            .map(|a| match a {
                Action::Obey => taxed,
                Action::Defy if rules.punishment_enabled => Exact::ZERO,
                Action::Defy => taxed,
                Action::Betray if rewarded => endowment + rules.reward_pool / Exact::int(betrayers as i64),
                Action::Betray => taxed,
            })
            .collect()
    };
    let kept: Exact = payoffs.iter().sum();
    Ok(VillagerOutcome {
        robber_payoff: rules.total_production() - kept,
        villager_payoffs: PayoffVector::new(payoffs),
        defiance_succeeded: succeeded,
        defier_count: defiers,
        betrayer_count: betrayers,
    })
}

pub fn villager_action_names(n: usize) -> Vec<Vec<String>> {
    vec![Action::ALL.iter().map(|a| a.name().to_string()).collect(); n]
}

/// Tabulates [`outcome`] over every profile; metadata carries the robber's side.
pub fn build_villager_game(rules: &VillagerRules) -> NormalFormGame {
    let mut meta = Vec::new();
    let game = NormalFormGame::from_fn(villager_action_names(rules.n_villagers), |p| {
        let o = outcome(rules, p).expect("enumerated profiles are valid");
        meta.push(CellMeta {
            robber_payoff: o.robber_payoff,
            defiance_succeeded: o.defiance_succeeded,
        });
        o.villager_payoffs
    })
    .expect("villager games have n >= 2 players and three actions");
    game.with_metadata(meta)
}

/// Rewrites unrewarded betrayal (no defier present) to obedience.
pub fn canonical_profile(rules: &VillagerRules, profile: &ActionProfile) -> Result<ActionProfile, RulesError> {
    let actions = to_actions(rules, profile)?;
    if actions.contains(&Action::Defy) {
        return Ok(profile.clone());
    }
    Ok(ActionProfile(
        actions
            .iter()
            .map(|&a| {
                if a == Action::Betray {
                    Action::Obey.index()
                } else {
                    a.index()
                }
            })
            .collect(),
    ))
}

/// Payoffs below the threshold all collapse to the ruin level 0.
pub fn survival_utility(x: Exact, threshold: Exact) -> Exact {
    if x >= threshold {
        x
    } else {
        Exact::ZERO
    }
}

pub fn survival_utilities(payoffs: &PayoffVector, threshold: Exact) -> Result<PayoffVector, RulesError> {
    if let Some(&bad) = payoffs.values().iter().find(|v| v.is_negative()) {
        return Err(RulesError::NegativePayoff(bad));
    }
    if threshold.is_negative() {
        return Err(RulesError::Negative {
            field: "survival_threshold",
            value: threshold,
        });
    }
    Ok(PayoffVector::new(
        payoffs
            .values()
            .iter()
            .map(|&x| survival_utility(x, threshold))
            .collect::<Vec<_>>(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PdVariant {
    Classic,
    Modified,
}

pub const SILENT: usize = 0;
pub const BETRAY: usize = 1;

/// Two-prisoner games with utilities equal to negated years served.
pub fn pd_game(variant: PdVariant) -> NormalFormGame {
    let years = |a: Exact, b: Exact| PayoffVector::new(vec![-a, -b]);
    let half = Exact::new(1, 2);
    let y = Exact::int;
    let cells = match variant {
        PdVariant::Classic => vec![
            years(half, half),
            years(y(10), y(0)),
            years(y(0), y(10)),
            years(y(5), y(5)),
        ],
        PdVariant::Modified => vec![
            years(half, half),
            years(y(2), y(5)),
            years(y(5), y(2)),
            years(y(10), y(10)),
        ],
    };
    let actions = vec![vec!["Silent".to_string(), "Betray".to_string()]; 2];
    NormalFormGame::from_cells(actions, cells).expect("fixed 2x2 table")
}

/// Display labels for the employer/employee reading of the same rules.
pub fn workplace_label(field: &str) -> &str {
    match field {
        "endowment" => "product",
        "tax" => "margin",
        "reward_pool" => "bonus",
        "robber_strength" => "employer_strength",
        "villager_strength" => "employee_strength",
        other => other,
    }
}
