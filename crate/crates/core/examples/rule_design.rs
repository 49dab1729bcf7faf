//! The robber as rule-maker: search tax and reward for the most revenue,
//! then sweep the reward pool to see where collective defiance collapses.
//!
//!     cargo run --example rule_design

use vdlab::design::{breakpoint_sweep, optimize_rules, ParameterGrid, RuleParam};
use vdlab::exact::Exact;
use vdlab::rules::VillagerRules;
use vdlab::solver::SelectionRule;

fn main() {
    let base = VillagerRules {
        survival_threshold: Some(Exact::int(3)),
        ..Default::default()
    };
    let grid = ParameterGrid::new()
        .axis(RuleParam::Tax, (1..=5).map(Exact::int).collect::<Vec<_>>())
        .axis(RuleParam::RewardPool, (1..=3).map(Exact::int).collect::<Vec<_>>());
    let ranked = optimize_rules(&grid, &base, SelectionRule::PayoffDominance, true).unwrap();
    println!("top rules when villagers need 3 bags:");
    for r in ranked.iter().take(5) {
        let point: Vec<String> = r.point.iter().map(|(p, v)| format!("{p}={v}")).collect();
        println!(
            "  {:<24} score {:>2} (effective: {})",
            point.join(" "),
            r.score,
            r.evaluation.effectiveness.effective
        );
    }

    let pools = [0, 1, 2, 4, 20].map(|k| Exact::new(k, 2));
    let sweep = breakpoint_sweep(
        &VillagerRules::without_reward(),
        RuleParam::RewardPool,
        &pools,
        SelectionRule::PayoffDominance,
    )
    .unwrap();
    println!("\nreward pool sweep:");
    for p in &sweep.points {
        println!(
            "  R={:<4} {:<10} revenue {}",
            p.value,
            p.regime.to_string(),
            p.robber_revenue
        );
    }
    println!("  regime flips after indices {:?}", sweep.flips);
}
