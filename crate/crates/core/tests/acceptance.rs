//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails. Runs without the libtest harness so the lines are
//! always visible.

mod common;

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use common::{all_profiles, brute_force_equilibria, brute_force_pareto, check, oracle_outcome};
use vdlab::design::{effectiveness, evaluate_rules, optimize_rules, regime_of, ParameterGrid, Regime, RuleParam};
use vdlab::dynamics::{best_response_dynamics, simulate, DynamicsEnd};
use vdlab::exact::Exact;
use vdlab::game::{ActionProfile, NormalFormGame, PayoffVector};
use vdlab::report::{render_report, run, RunOptions};
use vdlab::rules::{
    build_villager_game, canonical_profile, outcome, pd_game, survival_utility, Action, PdVariant, VillagerRules,
};
use vdlab::scenario::{
    bundled_scenario, parse_scenario, render_scenario, Analysis, BestResponseSpec, DesignSpec, DynamicsSpec, Model,
    Scenario, SweepSpec, BUNDLED,
};
use vdlab::solver::{
    dominates, iterated_elimination, pareto_front, pure_equilibria, select_among_equilibria, Mode, SelectionRule,
};

const CASES: u32 = 1000;

type Check = Result<(), String>;
type Named = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(profiles: impl IntoIterator<Item = Vec<usize>>) -> BTreeSet<Vec<usize>> {
    profiles.into_iter().collect()
}

fn lib_set(profiles: &[ActionProfile]) -> BTreeSet<Vec<usize>> {
    profiles.iter().map(|p| p.actions().to_vec()).collect()
}

const D: usize = 0;
const O: usize = 1;
const B: usize = 2;

fn zero_defier_profiles() -> BTreeSet<Vec<usize>> {
    set(all_profiles(&[3, 3, 3]).into_iter().filter(|p| !p.contains(&D)))
}

fn criterion_1() -> Check {
    let game = build_villager_game(&VillagerRules::default());
    let eq = lib_set(&pure_equilibria(&game, Mode::Weak));
    let oracle = set(brute_force_equilibria(&game, false));
    ensure(eq == oracle, || format!("solver {eq:?} vs brute force {oracle:?}"))?;
    ensure(eq == zero_defier_profiles(), || {
        format!("expected the 8 zero-defier profiles, got {eq:?}")
    })?;
    for p in &eq {
        let payoffs = game.payoff_at(&ActionProfile::new(p.clone())).unwrap();
        ensure(*payoffs == PayoffVector::from_ints(&[2, 2, 2]), || {
            format!("{p:?} pays {payoffs}")
        })?;
        let canonical = canonical_profile(&VillagerRules::default(), &ActionProfile::new(p.clone())).unwrap();
        ensure(canonical.actions() == [O, O, O], || {
            format!("{p:?} canonicalizes to {canonical}")
        })?;
    }
    let eqs = pure_equilibria(&game, Mode::Weak);
    let sel = select_among_equilibria(&game, &eqs, SelectionRule::PayoffDominance).map_err(|e| e.to_string())?;
    ensure(sel.selected.actions() == [O, O, O], || {
        format!("representative {}", sel.selected)
    })
}

fn criterion_2() -> Check {
    let game = build_villager_game(&VillagerRules::default());
    let ddd = ActionProfile::new([D, D, D]);
    ensure(
        *game.payoff_at(&ddd).unwrap() == PayoffVector::from_ints(&[5, 5, 5]),
        || "all-defy payoff is not (5,5,5)".into(),
    )?;
    let front = lib_set(&pareto_front(&game));
    ensure(front == set(brute_force_pareto(&game)), || {
        "Pareto front differs from brute force".into()
    })?;
    ensure(front.contains(&vec![D, D, D]), || {
        "all-defy is not Pareto optimal".into()
    })?;
    ensure(
        !set(brute_force_equilibria(&game, false)).contains(&vec![D, D, D]),
        || "all-defy is an equilibrium".into(),
    )
}

fn criterion_3() -> Check {
    let game = build_villager_game(&VillagerRules::without_reward());
    let eqs = pure_equilibria(&game, Mode::Weak);
    let mut expected = zero_defier_profiles();
    expected.insert(vec![D, D, D]);
    let got = lib_set(&eqs);
    ensure(got == expected, || format!("equilibria {got:?}"))?;
    ensure(got == set(brute_force_equilibria(&game, false)), || {
        "brute force disagrees".into()
    })?;
    let sel = select_among_equilibria(&game, &eqs, SelectionRule::PayoffDominance).map_err(|e| e.to_string())?;
    ensure(sel.selected.actions() == [D, D, D] && !sel.ambiguous, || {
        format!("selected {}", sel.selected)
    })
}

fn criterion_4() -> Check {
    let game = build_villager_game(&VillagerRules::without_punishment());
    let got = lib_set(&pure_equilibria(&game, Mode::Weak));
    ensure(!got.contains(&vec![D, D, D]), || "all-defy is an equilibrium".into())?;
    let deviation = game.payoff_at(&ActionProfile::new([B, D, D])).unwrap().get(0);
    ensure(deviation == Exact::int(7), || {
        format!("deviation to Betray pays {deviation}")
    })?;
    let mut expected = zero_defier_profiles();
    for p in [[D, B, B], [B, D, B], [B, B, D]] {
        expected.insert(p.to_vec());
        let mut payoffs = game.payoff_at(&ActionProfile::new(p)).unwrap().values().to_vec();
        payoffs.sort();
        ensure(payoffs == common::ints(&[2, 6, 6]), || {
            format!("{p:?} pays {payoffs:?}")
        })?;
    }
    ensure(got == expected, || format!("equilibria {got:?}"))?;
    ensure(got == set(brute_force_equilibria(&game, false)), || {
        "brute force disagrees".into()
    })
}

const SILENT: usize = 0;
const BETRAY: usize = 1;

fn criterion_5() -> Check {
    let game = pd_game(PdVariant::Classic);
    for player in 0..2 {
        ensure(dominates(&game, player, BETRAY, SILENT, Mode::Strict), || {
            format!("Silent not strictly dominated for player {player}")
        })?;
    }
    let strict = lib_set(&pure_equilibria(&game, Mode::Strict));
    ensure(strict == set([vec![BETRAY, BETRAY]]), || {
        format!("strict equilibria {strict:?}")
    })?;
    ensure(strict == set(brute_force_equilibria(&game, true)), || {
        "brute force disagrees".into()
    })?;
    let reduced = iterated_elimination(&game, Mode::Strict);
    ensure(
        reduced.game.profile_count() == 1 && reduced.surviving == vec![vec![BETRAY], vec![BETRAY]],
        || format!("surviving {:?}", reduced.surviving),
    )
}

fn criterion_6() -> Check {
    let game = pd_game(PdVariant::Modified);
    for player in 0..2 {
        ensure(dominates(&game, player, SILENT, BETRAY, Mode::Strict), || {
            format!("Betray not strictly dominated for player {player}")
        })?;
    }
    for mode in [Mode::Weak, Mode::Strict] {
        let eq = lib_set(&pure_equilibria(&game, mode));
        ensure(eq == set([vec![SILENT, SILENT]]), || {
            format!("{mode} equilibria {eq:?}")
        })?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let rules = VillagerRules::famine();
    let eff = effectiveness(&rules).map_err(|e| e.to_string())?;
    ensure(eff.punishment_margin == Exact::ZERO, || {
        format!("punishment margin {}", eff.punishment_margin)
    })?;
    ensure(!eff.effective, || "famine rules reported effective".into())?;
    let eval = evaluate_rules(&rules, SelectionRule::PayoffDominance).map_err(|e| e.to_string())?;
    ensure(eval.regime == Regime::Defiance, || format!("regime {}", eval.regime))?;
    ensure(eval.robber_revenue == Exact::ZERO, || {
        format!("revenue {}", eval.robber_revenue)
    })?;

    // Capped tax: an obeyer keeps max(3 - 5, 0) = 0.
    let o = oracle_outcome(&rules, &[Action::Obey; 3]);
    ensure(
        o.villagers == common::ints(&[0, 0, 0]) && o.robber == Exact::int(9),
        || "capped tax".into(),
    )?;

    let report =
        run("famine", &bundled_scenario("famine").unwrap(), &RunOptions::default()).map_err(|e| e.to_string())?;
    let analysis = report.analysis.ok_or("no analysis section")?;
    let selection = analysis.selection.ok_or("no selection")?;
    ensure(selection.selected == ["Defy", "Defy", "Defy"], || {
        format!("scenario selected {:?}", selection.selected)
    })?;
    ensure(selection.robber_payoff == Some(Exact::ZERO), || {
        "scenario revenue is not 0".into()
    })?;
    ensure(
        analysis.effectiveness.map(|e| e.punishment_margin) == Some(Exact::ZERO),
        || "scenario effectiveness margin".into(),
    )
}

/// Re-evaluates a grid point from scratch: oracle payoffs, brute-force
/// equilibria, payoff-dominance by hand, margins by hand.
fn oracle_score(rules: &VillagerRules) -> Exact {
    let n = rules.n_villagers;
    let shape = vec![3; n];
    let settle = |p: &[usize]| {
        let acts: Vec<Action> = p.iter().map(|&a| Action::from_index(a).unwrap()).collect();
        oracle_outcome(rules, &acts)
    };
    let cells: Vec<PayoffVector> = all_profiles(&shape)
        .iter()
        .map(|p| PayoffVector::new(settle(p).villagers))
        .collect();
    let game = NormalFormGame::from_cells(vdlab::rules::villager_action_names(n), cells).unwrap();
    let eqs = brute_force_equilibria(&game, false);
    let pay = |p: &Vec<usize>| settle(p).villagers;
    let undominated: Vec<&Vec<usize>> = eqs
        .iter()
        .filter(|p| {
            let mine = pay(p);
            !eqs.iter().any(|q| {
                let theirs = pay(q);
                theirs.iter().zip(&mine).all(|(x, y)| x >= y) && theirs.iter().zip(&mine).any(|(x, y)| x > y)
            })
        })
        .collect();
    let selected = undominated[0];

    let u = |x: Exact| match rules.survival_threshold {
        Some(s) => survival_utility(x, s),
        None => x,
    };
    let mut base = vec![Action::Obey; n];
    let all_obey = u(settle(&vec![O; n]).villagers[0]);
    base[0] = Action::Defy;
    let lone_defier = u(oracle_outcome(rules, &base).villagers[0]);
    let mut betray = vec![Action::Obey; n];
    betray[0] = Action::Betray;
    betray[1] = Action::Defy;
    let mut obey = betray.clone();
    obey[0] = Action::Obey;
    let reward_gain = u(oracle_outcome(rules, &betray).villagers[0]) - u(oracle_outcome(rules, &obey).villagers[0]);
    let effective =
        (!rules.punishment_enabled || all_obey > lone_defier) && (!rules.reward_enabled || reward_gain > Exact::ZERO);
    if effective {
        settle(selected).robber
    } else {
        Exact::ZERO
    }
}

fn criterion_8() -> Check {
    let base = VillagerRules {
        survival_threshold: Some(Exact::int(3)),
        ..Default::default()
    };
    let taxes = common::ints(&[1, 2, 3, 4, 5]);
    let grid = ParameterGrid::new().axis(RuleParam::Tax, taxes.clone());
    let ranked = optimize_rules(&grid, &base, SelectionRule::PayoffDominance, true).map_err(|e| e.to_string())?;
    let winner = &ranked[0];
    ensure(
        winner.point == vec![(RuleParam::Tax, Exact::int(2))] && winner.score == Exact::int(6),
        || format!("winner {:?} scoring {}", winner.point, winner.score),
    )?;

    let mut best: Option<(Exact, Exact)> = None;
    for &t in &taxes {
        let score = oracle_score(&VillagerRules { tax: t, ..base.clone() });
        if best.is_none_or(|(_, s)| score > s) {
            best = Some((t, score));
        }
        let lib = ranked.iter().find(|r| r.point[0].1 == t).unwrap();
        ensure(lib.score == score, || {
            format!("t={t}: solver scores {}, oracle {score}", lib.score)
        })?;
    }
    ensure(best == Some((Exact::int(2), Exact::int(6))), || {
        format!("oracle winner {best:?}")
    })?;

    let report = run(
        "designer-grid",
        &bundled_scenario("designer-grid").unwrap(),
        &RunOptions::default(),
    )
    .map_err(|e| e.to_string())?;
    let top = &report.design.ok_or("no design section")?.ranking.ok_or("no ranking")?[0];
    ensure(
        top.point[0].param == "tax" && top.point[0].value == Exact::int(2) && top.score == Exact::int(6),
        || "bundled designer grid winner".into(),
    )
}

// ---------------------------------------------------------------------------
// Property suites

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

fn suite<S: Strategy>(strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Check
where
    S::Value: std::fmt::Debug,
{
    runner().run(&strategy, test).map_err(|e| e.to_string())
}

fn grain_conservation() -> Check {
    suite(common::rules_with_profile(), |(rules, actions)| {
        let p = common::villager_profile(&actions);
        let o = outcome(&rules, &p).unwrap();
        let kept: Exact = o.villager_payoffs.values().iter().sum();
        check(kept + o.robber_payoff == rules.total_production(), || {
            "grain not conserved".into()
        })?;
        let oracle = oracle_outcome(&rules, &actions);
        check(o.villager_payoffs.values() == oracle.villagers.as_slice(), || {
            "villager payoffs differ".into()
        })?;
        check(o.robber_payoff == oracle.robber, || {
            "robber payoff differs from flow count".into()
        })?;
        check(o.defiance_succeeded == oracle.success, || "success flag differs".into())?;
        check(o.villager_payoffs.values().iter().all(|v| !v.is_negative()), || {
            "negative payoff".into()
        })
    })
}

fn equilibria_brute_force() -> Check {
    suite(common::random_game(), |game| {
        for (mode, strict) in [(Mode::Weak, false), (Mode::Strict, true)] {
            let lib = lib_set(&pure_equilibria(&game, mode));
            let oracle = set(brute_force_equilibria(&game, strict));
            check(lib == oracle, || format!("{mode}: {lib:?} vs {oracle:?}"))?;
        }
        Ok(())
    })
}

fn elimination_order_independence() -> Check {
    let strategy = (common::random_game(), prop::collection::vec(any::<usize>(), 32));
    suite(strategy, |(game, picks)| {
        let lib = iterated_elimination(&game, Mode::Strict).surviving;
        let mut it = picks.iter().cycle();
        let random = common::eliminate_in_order(&game, |_| *it.next().unwrap());
        let last = common::eliminate_in_order(&game, |n| n - 1);
        check(lib == random, || format!("solver {lib:?} vs random order {random:?}"))?;
        check(lib == last, || format!("solver {lib:?} vs reverse order {last:?}"))
    })
}

fn positive() -> impl Strategy<Value = Exact> {
    (1i64..=5, 1i64..=3).prop_map(|(n, d)| Exact::new(n, d))
}

fn affine_invariance() -> Check {
    let game_case = (
        common::random_game(),
        prop::collection::vec((positive(), common::small_exact()), 4),
        (positive(), common::small_exact()),
        common::random_rules().prop_filter("keep villager games small", |r| r.n_villagers <= 3),
    );
    suite(game_case, |(game, per_player, (scale, shift), rules)| {
        let mut moved = game.clone();
        for (player, (a, b)) in per_player.iter().enumerate().take(game.player_count()) {
            moved = moved.affine_player(player, *a, *b);
        }
        for mode in [Mode::Weak, Mode::Strict] {
            check(pure_equilibria(&game, mode) == pure_equilibria(&moved, mode), || {
                format!("{mode} equilibria moved")
            })?;
        }

        let villagers = build_villager_game(&rules);
        let common_move = villagers.affine_all(scale, shift);
        let mut separate = villagers.clone();
        for (player, (a, b)) in per_player.iter().enumerate().take(rules.n_villagers) {
            separate = separate.affine_player(player, *a, *b);
        }
        for rule in [
            SelectionRule::PayoffDominance,
            SelectionRule::Maximin,
            SelectionRule::First,
        ] {
            let before = regime_of(&villagers, rule).unwrap();
            check(regime_of(&common_move, rule).unwrap() == before, || {
                format!("{rule} regime moved")
            })?;
            // Maximin compares players against each other, so only a common
            // transform is expected to preserve it.
            if rule != SelectionRule::Maximin {
                check(regime_of(&separate, rule).unwrap() == before, || {
                    format!("{rule} regime moved")
                })?;
            }
        }
        Ok(())
    })
}

fn best_response_fixed_points() -> Check {
    suite(common::random_game_with_profile(), |(game, start)| {
        let eq = set(brute_force_equilibria(&game, false));
        let p = ActionProfile::new(start.clone());
        let one = best_response_dynamics(&game, &p, 1).unwrap();
        let fixed = one.path.len() == 1 && one.end == DynamicsEnd::FixedPoint;
        check(fixed == eq.contains(&start), || format!("{p}: fixed {fixed}"))?;

        let long = best_response_dynamics(&game, &p, 500).unwrap();
        let last = long.path.last().unwrap().actions().to_vec();
        match long.end {
            DynamicsEnd::FixedPoint => check(eq.contains(&last), || format!("stopped at non-equilibrium {last:?}")),
            DynamicsEnd::Cycle { length } => {
                let cycle = &long.path[long.path.len() - 1 - length..];
                check(cycle.iter().all(|q| !eq.contains(q.actions())), || {
                    "equilibrium inside a cycle".into()
                })
            }
            DynamicsEnd::StepLimit => Err(TestCaseError::fail("finite game exceeded 500 steps without revisiting")),
        }
    })
}

fn simulator_determinism() -> Check {
    let case = common::random_rules()
        .prop_filter("keep villager games small", |r| r.n_villagers <= 3)
        .prop_flat_map(|r| {
            let n = r.n_villagers;
            (
                Just(r),
                prop::collection::vec(common::random_agent(n), n),
                prop::option::of(0i64..=12),
                1usize..=15,
                any::<u64>(),
            )
        });
    suite(case, |(rules, agents, robber_exit, rounds, seed)| {
        let threshold = robber_exit.map(Exact::int);
        let play =
            || simulate(&rules, &agents, threshold, rounds, seed).map_err(|e| TestCaseError::fail(e.to_string()));
        let (a, b) = (play()?, play()?);
        check(a == b, || "two runs differ".into())?;
        check(
            serde_json::to_string(&a).unwrap() == serde_json::to_string(&b).unwrap(),
            || "serializations differ".into(),
        )?;
        check(!a.rounds.is_empty() && a.rounds.len() <= rounds, || {
            "round count out of range".into()
        })?;
        let total: Exact = a.cumulative_villagers.iter().sum();
        check(
            total + a.cumulative_robber == rules.total_production() * Exact::int(a.rounds.len() as i64),
            || "cumulative grain not conserved".into(),
        )
    })
}

fn random_scenario() -> impl Strategy<Value = Scenario> {
    let analysis = (
        prop_oneof![Just(Mode::Weak), Just(Mode::Strict)],
        prop::option::of(prop_oneof![
            Just(SelectionRule::PayoffDominance),
            Just(SelectionRule::Maximin),
            Just(SelectionRule::First)
        ]),
        any::<bool>(),
        prop::option::of(prop_oneof![Just(Mode::Weak), Just(Mode::Strict)]),
    )
        .prop_map(|(equilibria, select, pareto, dominance)| Analysis {
            equilibria,
            select,
            pareto,
            dominance,
        });
    common::random_rules().prop_flat_map(move |rules| {
        let n = rules.n_villagers;
        let dynamics = prop::option::of((
            prop::collection::vec(common::random_agent(n), n),
            1usize..=30,
            prop::option::of(common::small_exact().prop_map(|x| if x.is_negative() { -x } else { x })),
            any::<u64>(),
            prop::option::of((prop::collection::vec(common::random_action(), n), 0usize..=200)),
        ))
        .prop_map(|opt| {
            opt.map(|(agents, rounds, robber_exit_threshold, seed, br)| DynamicsSpec {
                agents,
                rounds,
                robber_exit_threshold,
                seed,
                best_response: br.map(|(initial, max_steps)| BestResponseSpec {
                    initial: initial.iter().map(|a| a.name().to_string()).collect(),
                    max_steps,
                }),
            })
        });
        let design = prop::option::of((
            prop::collection::vec(0i64..=8, 1..=4),
            prop::collection::vec(0i64..=8, 1..=4),
            any::<bool>(),
            any::<bool>(),
        ))
        .prop_map(|opt| {
            opt.map(|(taxes, pools, with_grid, require_effective)| DesignSpec {
                grid: with_grid.then(|| [("tax".to_string(), common::ints(&taxes))].into_iter().collect()),
                sweep: Some(SweepSpec {
                    param: "reward_pool".into(),
                    values: pools.iter().map(|&p| Exact::new(p, 2)).collect(),
                }),
                require_effective,
                select: SelectionRule::PayoffDominance,
            })
        });
        (Just(rules), analysis.clone(), dynamics, design).prop_map(|(rules, analysis, dynamics, design)| Scenario {
            model: Model::Villager,
            rules: Some(rules),
            matrix: None,
            analysis,
            dynamics,
            design,
        })
    })
}

fn scenario_round_trip_and_golden() -> Check {
    suite(random_scenario(), |scenario| {
        let text = render_scenario(&scenario);
        let back = parse_scenario(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        check(back == scenario, || format!("round trip changed the scenario:\n{text}"))?;
        check(render_scenario(&back) == text, || "second render differs".into())
    })?;

    for (name, _, source) in BUNDLED {
        let scenario = parse_scenario(source).map_err(|e| e.to_string())?;
        let again = parse_scenario(&render_scenario(&scenario)).map_err(|e| e.to_string())?;
        ensure(again == scenario, || format!("{name} does not round-trip"))?;
    }

    let mismatches = common::golden_mismatches();
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;

    // Repeated renders against the committed files, in random order.
    let cache: RefCell<HashMap<(usize, usize), String>> = RefCell::new(HashMap::new());
    let formats = common::GOLDEN_FORMATS;
    suite((0..BUNDLED.len(), 0..formats.len()), |(i, f)| {
        let (name, _, _) = BUNDLED[i];
        let (format, ext) = formats[f];
        let expected = cache
            .borrow_mut()
            .entry((i, f))
            .or_insert_with(|| std::fs::read_to_string(common::golden_dir().join(format!("{name}.{ext}"))).unwrap())
            .clone();
        let report = run(name, &bundled_scenario(name).unwrap(), &RunOptions::default()).unwrap();
        check(render_report(&report, format) == expected, || {
            format!("{name}.{ext} unstable")
        })
    })?;
    Ok(())
}

fn criterion_9() -> (Check, Vec<(&'static str, Check)>) {
    let suites: Vec<Named> = vec![
        ("grain conservation", grain_conservation),
        ("equilibrium enumeration = brute force", equilibria_brute_force),
        ("strict elimination order independence", elimination_order_independence),
        ("affine invariance of equilibria and regimes", affine_invariance),
        (
            "best-response fixed points = weak equilibria",
            best_response_fixed_points,
        ),
        ("simulator determinism", simulator_determinism),
        (
            "scenario round trip and golden stability",
            scenario_round_trip_and_golden,
        ),
    ];
    let results: Vec<(&'static str, Check)> = suites.into_iter().map(|(name, f)| (name, f())).collect();
    let failed: Vec<&str> = results.iter().filter(|(_, r)| r.is_err()).map(|(n, _)| *n).collect();
    let overall = if failed.is_empty() {
        Ok(())
    } else {
        Err(format!("failing suites: {}", failed.join(", ")))
    };
    (overall, results)
}

fn main() {
    let criteria: Vec<Named> = vec![
        ("base game: 8 zero-defier weak equilibria paying (2,2,2)", criterion_1),
        ("base game: all-defy is Pareto optimal, not an equilibrium", criterion_2),
        ("no reward: all-defy joins the equilibria and is selected", criterion_3),
        ("no punishment: all-defy unstable, 11 weak equilibria", criterion_4),
        ("classic PD: Betray strictly dominant, one survivor", criterion_5),
        ("modified PD: (Silent,Silent) unique equilibrium", criterion_6),
        ("famine: punishment margin 0, defiance, revenue 0", criterion_7),
        ("designer grid: winner t=2 with revenue 6", criterion_8),
    ];
    let mut failures = 0;
    let mut report = |id: usize, title: &str, result: &Check| match result {
        Ok(()) => println!("PASS {id}. {title}"),
        Err(e) => {
            failures += 1;
            println!("FAIL {id}. {title}: {e}");
        }
    };
    for (i, (title, f)) in criteria.iter().enumerate() {
        report(i + 1, title, &f());
    }
    let (overall, suites) = criterion_9();
    report(9, &format!("property suites ({CASES} cases each)"), &overall);
    for (name, result) in &suites {
        match result {
            Ok(()) => println!("     ok   {name}"),
            Err(e) => println!("     FAIL {name}: {e}"),
        }
    }
    if failures > 0 {
        println!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 9 acceptance criteria passed");
}
