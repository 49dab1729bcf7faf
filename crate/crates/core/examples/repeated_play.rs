//! Repeated play with different agent mixes, and best-response dynamics on
//! the stage game.
//!
//!     cargo run --example repeated_play

use vdlab::dynamics::{best_response_dynamics, simulate, trajectory_summary, AgentSpec, Strategy};
use vdlab::exact::Exact;
use vdlab::game::ActionProfile;
use vdlab::rules::{build_villager_game, Action, VillagerRules};

fn main() {
    let rules = VillagerRules::default();
    let mixes: Vec<(&str, Vec<AgentSpec>)> = vec![
        ("three obeyers", vec![AgentSpec::fixed(Action::Obey); 3]),
        (
            "coordinated defiance",
            vec![
                AgentSpec::new(Strategy::Coordinator {
                    target: vec![Action::Defy; 3]
                });
                3
            ],
        ),
        (
            "myopic best responders",
            vec![AgentSpec::new(Strategy::BestResponse { opening: Action::Defy }); 3],
        ),
        (
            "one betrayer, robber wants 10 a year",
            vec![
                AgentSpec::fixed(Action::Obey),
                AgentSpec::fixed(Action::Obey),
                AgentSpec::fixed(Action::Betray),
            ],
        ),
    ];
    for (name, agents) in mixes {
        let exit = name.contains("robber").then(|| Exact::int(10));
        let t = simulate(&rules, &agents, exit, 8, 0).unwrap();
        let s = trajectory_summary(&t).unwrap();
        println!(
            "{name}: {} rounds, {:?}, robber total {}",
            s.rounds_played, s.termination, s.cumulative_robber
        );
    }

    let game = build_villager_game(&rules);
    let path = best_response_dynamics(&game, &ActionProfile::new([0, 0, 0]), 50).unwrap();
    let labels: Vec<String> = path.path.iter().map(|p| game.profile_label(p)).collect();
    println!("best responses from all-defy: {} ({:?})", labels.join(" -> "), path.end);
}
