//! The three-villager game under default rules: payoffs, equilibria, the
//! Pareto front and what pre-play communication would select.
//!
//!     cargo run --example base_game

use vdlab::rules::{build_villager_game, VillagerRules};
use vdlab::solver::{pareto_front, pure_equilibria, select_among_equilibria, Mode, SelectionRule};

fn main() {
    let rules = VillagerRules::default();
    let game = build_villager_game(&rules);

    println!("{} villagers, {} profiles", game.player_count(), game.profile_count());
    for profile in game.profiles() {
        let meta = game.meta_at(&profile).unwrap().unwrap();
        println!(
            "  {:<24} villagers {:<12} robber {:>2}{}",
            game.profile_label(&profile),
            game.payoff_at(&profile).unwrap().to_string(),
            meta.robber_payoff,
            if meta.defiance_succeeded {
                "  (robber defeated)"
            } else {
                ""
            }
        );
    }

    let equilibria = pure_equilibria(&game, Mode::Weak);
    println!("\nweak equilibria:");
    for e in &equilibria {
        println!("  {} {}", game.profile_label(e), game.payoff_at(e).unwrap());
    }

    let front = pareto_front(&game);
    println!(
        "\nPareto front has {} profiles; all-defy among them: {}",
        front.len(),
        front.iter().any(|p| p.actions() == [0, 0, 0])
    );

    let choice = select_among_equilibria(&game, &equilibria, SelectionRule::PayoffDominance).unwrap();
    println!(
        "selected {} ({} tied candidates)",
        game.profile_label(&choice.selected),
        choice.candidates.len()
    );
}
