//! Switching the reward and the punishment off, one at a time.
//!
//!     cargo run --example rule_variants

use vdlab::design::{effectiveness, evaluate_rules};
use vdlab::rules::{build_villager_game, VillagerRules};
use vdlab::solver::{pure_equilibria, Mode, SelectionRule};

fn main() {
    let variants = [
        ("reward and punishment", VillagerRules::default()),
        ("punishment only", VillagerRules::without_reward()),
        ("reward only", VillagerRules::without_punishment()),
    ];
    for (name, rules) in variants {
        let game = build_villager_game(&rules);
        let eval = evaluate_rules(&rules, SelectionRule::PayoffDominance).unwrap();
        let margins = effectiveness(&rules).unwrap();
        println!("{name}:");
        println!("  {} weak equilibria", pure_equilibria(&game, Mode::Weak).len());
        println!(
            "  selected {} -> regime {}, robber collects {}",
            game.profile_label(&eval.selection.selected),
            eval.regime,
            eval.robber_revenue
        );
        println!(
            "  punishment margin {}, reward margin {}",
            margins.punishment_margin, margins.reward_margin
        );
    }
}
