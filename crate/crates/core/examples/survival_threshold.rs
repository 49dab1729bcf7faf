//! When villagers need three bags to live, losing three bags or all five is
//! the same ruin, and the threat of confiscation stops working.
//!
//!     cargo run --example survival_threshold

use vdlab::design::{effectiveness, evaluate_rules};
use vdlab::dynamics::{simulate, AgentSpec};
use vdlab::exact::Exact;
use vdlab::rules::{survival_utility, Action, VillagerRules};
use vdlab::solver::SelectionRule;

fn main() {
    let s = Exact::int(3);
    for bags in 0..=5 {
        println!("keep {bags} bags -> utility {}", survival_utility(Exact::int(bags), s));
    }

    let needy = VillagerRules {
        survival_threshold: Some(s),
        ..Default::default()
    };
    let e = effectiveness(&needy).unwrap();
    println!(
        "\ndefault rules, survival at 3: punishment margin {}, effective {}",
        e.punishment_margin, e.effective
    );

    let famine = VillagerRules::famine();
    let eval = evaluate_rules(&famine, SelectionRule::PayoffDominance).unwrap();
    println!("famine: regime {}, robber revenue {}", eval.regime, eval.robber_revenue);

    let agents = vec![AgentSpec::fixed(Action::Obey).exit_below(s); 3];
    let t = simulate(&famine, &agents, None, 10, 0).unwrap();
    println!(
        "famine with exit rights: {:?} after {} round(s)",
        t.termination,
        t.rounds.len()
    );
}
