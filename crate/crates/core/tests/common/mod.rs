//! Independent oracles, generators and golden-file helpers shared by the
//! integration tests. Nothing here calls the solver it is checking.

#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use vdlab::dynamics::{AgentSpec, Strategy as Agent};
use vdlab::exact::Exact;
use vdlab::game::{ActionProfile, NormalFormGame, PayoffVector};
use vdlab::report::{render_report, run, Format, RunOptions};
use vdlab::rules::{Action, VillagerRules};
use vdlab::scenario::{bundled_scenario, BUNDLED};

pub fn ints(values: &[i64]) -> Vec<Exact> {
    values.iter().map(|&v| Exact::int(v)).collect()
}

pub fn profile(actions: &[usize]) -> ActionProfile {
    ActionProfile::new(actions.to_vec())
}

pub fn villager_profile(actions: &[Action]) -> ActionProfile {
    ActionProfile(actions.iter().map(|a| a.index()).collect())
}

// ---------------------------------------------------------------------------
// Villager outcome oracle

/// Settles a profile by counting what leaves each villager's hands, then
/// credits the robber with the flows directly. Conservation is not assumed.
pub struct OracleOutcome {
    pub villagers: Vec<Exact>,
    pub robber: Exact,
    pub success: bool,
}

pub fn oracle_outcome(rules: &VillagerRules, actions: &[Action]) -> OracleOutcome {
    let d = actions.iter().filter(|a| **a == Action::Defy).count() as i64;
    let b = actions.iter().filter(|a| **a == Action::Betray).count() as i64;
    let w = rules.villager_strength;
    let mut guard = rules.robber_strength;
    if rules.betrayer_aids_robber {
        guard += Exact::int(b) * w;
    }
    let success = Exact::int(d) * w > guard;
    let e = rules.endowment;
    if success {
        return OracleOutcome {
            villagers: vec![e; actions.len()],
            robber: Exact::ZERO,
            success,
        };
    }
    let levy = if rules.tax < e { rules.tax } else { e };
    let paid_reward = d >= 1 && rules.reward_enabled && b >= 1;
    let mut villagers = Vec::new();
    let mut robber = Exact::ZERO;
    for a in actions {
        match a {
            Action::Defy if rules.punishment_enabled => {
                villagers.push(Exact::ZERO);
                robber += e;
            }
            Action::Betray if paid_reward => villagers.push(e + rules.reward_pool / Exact::int(b)),
            _ => {
                villagers.push(e - levy);
                robber += levy;
            }
        }
    }
    if paid_reward {
        robber = robber - rules.reward_pool;
    }
    OracleOutcome {
        villagers,
        robber,
        success,
    }
}

pub fn actions_of(profile: &ActionProfile) -> Vec<Action> {
    profile
        .actions()
        .iter()
        .map(|&a| Action::from_index(a).expect("villager action"))
        .collect()
}

// ---------------------------------------------------------------------------
// Game oracles

/// Row-major index with player 0 most significant, computed by hand.
pub fn flat_index(shape: &[usize], actions: &[usize]) -> usize {
    actions.iter().zip(shape).fold(0, |acc, (&a, &n)| acc * n + a)
}

pub fn all_profiles(shape: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in shape {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out
}

fn value(game: &NormalFormGame, shape: &[usize], actions: &[usize], player: usize) -> Exact {
    game.cells()[flat_index(shape, actions)].get(player)
}

/// Brute-force pure equilibria: every unilateral deviation of every player.
pub fn brute_force_equilibria(game: &NormalFormGame, strict: bool) -> Vec<Vec<usize>> {
    let shape = game.action_counts();
    all_profiles(&shape)
        .into_iter()
        .filter(|p| {
            (0..shape.len()).all(|i| {
                let here = value(game, &shape, p, i);
                (0..shape[i]).filter(|&a| a != p[i]).all(|a| {
                    let mut q = p.clone();
                    q[i] = a;
                    let there = value(game, &shape, &q, i);
                    if strict {
                        there < here
                    } else {
                        there <= here
                    }
                })
            })
        })
        .collect()
}

pub fn brute_force_pareto(game: &NormalFormGame) -> Vec<Vec<usize>> {
    let shape = game.action_counts();
    let profiles = all_profiles(&shape);
    let vec_of = |p: &[usize]| game.cells()[flat_index(&shape, p)].values().to_vec();
    profiles
        .iter()
        .filter(|p| {
            let mine = vec_of(p);
            !profiles.iter().any(|q| {
                let theirs = vec_of(q);
                theirs.iter().zip(&mine).all(|(x, y)| x >= y) && theirs.iter().zip(&mine).any(|(x, y)| x > y)
            })
        })
        .cloned()
        .collect()
}

/// Strict dominance of `winner` over `loser` for `player`, opponents ranging
/// over the surviving sets only.
fn strictly_dominated(game: &NormalFormGame, alive: &[Vec<usize>], player: usize, loser: usize, winner: usize) -> bool {
    let shape = game.action_counts();
    let mut others: Vec<Vec<usize>> = alive.to_vec();
    others[player] = vec![0];
    let mut contexts = vec![Vec::new()];
    for set in &others {
        contexts = contexts
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                set.iter().map(move |&a| {
                    let mut p = prefix.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    contexts.iter().all(|ctx| {
        let mut l = ctx.clone();
        l[player] = loser;
        let mut w = ctx.clone();
        w[player] = winner;
        value(game, &shape, &w, player) > value(game, &shape, &l, player)
    })
}

/// Strict iterated elimination in an order chosen by `pick` from the list of
/// currently dominated (player, action) pairs.
pub fn eliminate_in_order(game: &NormalFormGame, mut pick: impl FnMut(usize) -> usize) -> Vec<Vec<usize>> {
    let mut alive: Vec<Vec<usize>> = game.action_counts().into_iter().map(|n| (0..n).collect()).collect();
    loop {
        let mut candidates = Vec::new();
        for player in 0..alive.len() {
            for &loser in &alive[player] {
                if alive[player]
                    .iter()
                    .any(|&w| w != loser && strictly_dominated(game, &alive, player, loser, w))
                {
                    candidates.push((player, loser));
                }
            }
        }
        if candidates.is_empty() {
            return alive;
        }
        let (player, loser) = candidates[pick(candidates.len()) % candidates.len()];
        alive[player].retain(|&a| a != loser);
    }
}

// ---------------------------------------------------------------------------
// Generators

pub fn small_exact() -> impl Strategy<Value = Exact> {
    prop_oneof![
        4 => (-3i64..=3).prop_map(Exact::int),
        1 => (-6i64..=6, 1i64..=3).prop_map(|(n, d)| Exact::new(n, d)),
    ]
}

/// Random games with 2 to 4 players and 1 to 4 actions each; payoffs drawn
/// from a small range so ties are common.
pub fn random_game() -> impl Strategy<Value = NormalFormGame> {
    prop::collection::vec(1usize..=4, 2..=4)
        .prop_flat_map(|shape| {
            let cells: usize = shape.iter().product();
            let players = shape.len();
            (
                Just(shape),
                prop::collection::vec(prop::collection::vec(small_exact(), players), cells),
            )
        })
        .prop_map(|(shape, cells)| {
            let names = shape
                .iter()
                .map(|&n| (0..n).map(|a| format!("a{a}")).collect())
                .collect();
            NormalFormGame::from_cells(names, cells.into_iter().map(PayoffVector::new).collect())
                .expect("well-formed random game")
        })
}

pub fn random_game_with_profile() -> impl Strategy<Value = (NormalFormGame, Vec<usize>)> {
    random_game().prop_flat_map(|g| {
        let picks: Vec<_> = g.action_counts().into_iter().map(|n| 0..n).collect();
        (Just(g), picks)
    })
}

fn half_steps(lo: i64, hi: i64) -> impl Strategy<Value = Exact> {
    (lo * 2..=hi * 2).prop_map(|n| Exact::new(n, 2))
}

pub fn random_rules() -> impl Strategy<Value = VillagerRules> {
    (
        (2usize..=4, 0i64..=6, half_steps(0, 7), half_steps(0, 4)),
        (any::<bool>(), any::<bool>(), any::<bool>()),
        (
            half_steps(1, 5),
            prop_oneof![Just(Exact::ONE), Just(Exact::new(1, 2)), Just(Exact::int(2))],
        ),
        prop::option::of(0i64..=5),
    )
        .prop_map(|((n, e, t, r), (rew, pun, beta), (sigma, w), s)| VillagerRules {
            n_villagers: n,
            endowment: Exact::int(e),
            tax: t,
            reward_pool: r,
            reward_enabled: rew,
            punishment_enabled: pun,
            robber_strength: sigma,
            villager_strength: w,
            betrayer_aids_robber: beta,
            survival_threshold: s.map(Exact::int),
        })
}

pub fn random_action() -> impl Strategy<Value = Action> {
    prop_oneof![Just(Action::Defy), Just(Action::Obey), Just(Action::Betray)]
}

pub fn random_agent(n: usize) -> impl Strategy<Value = AgentSpec> {
    let strategy = prop_oneof![
        random_action().prop_map(|action| Agent::Fixed { action }),
        random_action().prop_map(|opening| Agent::BestResponse { opening }),
        prop::collection::vec(random_action(), n).prop_map(|target| Agent::Coordinator { target }),
        (random_action(), random_action())
            .prop_filter("trigger must switch", |(s, f)| s != f)
            .prop_map(|(start, fallback)| Agent::Trigger { start, fallback }),
    ];
    (strategy, prop::option::of(0i64..=6)).prop_map(|(strategy, exit)| AgentSpec {
        strategy,
        exit_below: exit.map(Exact::int),
    })
}

pub fn rules_with_profile() -> impl Strategy<Value = (VillagerRules, Vec<Action>)> {
    random_rules().prop_flat_map(|r| {
        let n = r.n_villagers;
        (Just(r), prop::collection::vec(random_action(), n))
    })
}

pub fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

// ---------------------------------------------------------------------------
// Golden files

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub const GOLDEN_FORMATS: [(Format, &str); 2] = [(Format::Table, "txt"), (Format::Json, "json")];

pub fn render_bundled(name: &str, format: Format) -> String {
    let scenario = bundled_scenario(name).expect("bundled scenarios parse");
    let report = run(name, &scenario, &RunOptions::default()).expect("bundled scenarios run");
    render_report(&report, format)
}

/// Compares every bundled report against its golden file, rewriting the
/// files instead when `UPDATE_GOLDEN` is set. Returns the mismatches.
pub fn golden_mismatches() -> Vec<String> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut bad = Vec::new();
    for (name, _, _) in BUNDLED {
        for (format, ext) in GOLDEN_FORMATS {
            let path = golden_dir().join(format!("{name}.{ext}"));
            let rendered = render_bundled(name, format);
            if update {
                std::fs::write(&path, &rendered).expect("write golden file");
                continue;
            }
            match std::fs::read_to_string(&path) {
                Ok(expected) if expected == rendered => {}
                Ok(_) => bad.push(format!("{} differs", path.display())),
                Err(e) => bad.push(format!("{}: {e}", path.display())),
            }
        }
    }
    bad
}
