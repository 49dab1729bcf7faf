//! Classic and modified prisoner's dilemma. Years in prison are negated so
//! that larger is better; six months is -1/2.
//!
//!     cargo run --example prisoners_dilemma

use vdlab::rules::{pd_game, PdVariant};
use vdlab::solver::{iterated_elimination, pure_equilibria, Mode};

fn main() {
    for variant in [PdVariant::Classic, PdVariant::Modified] {
        let game = pd_game(variant);
        println!("{variant:?}");
        for p in game.profiles() {
            println!("  {:<16} {}", game.profile_label(&p), game.payoff_at(&p).unwrap());
        }
        let reduction = iterated_elimination(&game, Mode::Strict);
        for step in &reduction.trace {
            println!(
                "  player {} drops {} (beaten by {})",
                game.player_name(step.player),
                game.action_name(step.player, step.action),
                game.action_name(step.player, step.dominated_by)
            );
        }
        for e in pure_equilibria(&game, Mode::Strict) {
            println!("  strict equilibrium {}", game.profile_label(&e));
        }
    }
}
