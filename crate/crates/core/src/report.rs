//! Running scenarios and rendering their reports as text tables, JSON or CSV.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::design::{breakpoint_sweep, effectiveness, optimize_rules, EffectivenessReport, Regime, RuleParam};
use crate::dynamics::{
    best_response_dynamics, simulate, trajectory_summary, DynamicsEnd, Participant, Termination, Trajectory,
    TrajectorySummary,
};
use crate::exact::Exact;
use crate::game::{ActionProfile, NormalFormGame};
use crate::rules::{Action, VillagerRules};
use crate::scenario::{profile_from_names, Model, Scenario, ScenarioError};
use crate::solver::{
    dominated_actions, is_equilibrium, iterated_elimination, pareto_front, pure_equilibria, select_among_equilibria,
    Mode, SelectionRule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "table" => Ok(Format::Table),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected table, json or csv)")),
        }
    }
}

/// Which parts of the pipeline to execute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Stages {
    pub analysis: bool,
    pub dynamics: bool,
    pub design: bool,
}

impl Stages {
    pub const ALL: Stages = Stages {
        analysis: true,
        dynamics: true,
        design: true,
    };
}

/// Command-line overrides layered over the scenario file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub stages: Stages,
    pub equilibria: Option<Mode>,
    pub select: Option<SelectionRule>,
    pub rounds: Option<usize>,
    pub seed: Option<u64>,
    pub require_effective: Option<bool>,
    pub sweep: Option<(RuleParam, Vec<Exact>)>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            stages: Stages::ALL,
            equilibria: None,
            select: None,
            rounds: None,
            seed: None,
            require_effective: None,
            sweep: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRow {
    pub profile: Vec<String>,
    pub payoffs: Vec<Exact>,
    pub robber_payoff: Option<Exact>,
    pub equilibrium: bool,
    pub pareto: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameSection {
    pub equilibrium_mode: Mode,
    pub players: Vec<String>,
    pub actions: Vec<Vec<String>>,
    pub rules: Option<VillagerRules>,
    pub cells: Vec<CellRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatedEntry {
    pub player: String,
    pub action: String,
    pub dominated_by: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceSection {
    pub mode: Mode,
    pub dominated: Vec<DominatedEntry>,
    pub eliminations: Vec<DominatedEntry>,
    pub surviving: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelectionSection {
    pub rule: SelectionRule,
    pub selected: Vec<String>,
    pub payoffs: Vec<Exact>,
    pub robber_payoff: Option<Exact>,
    pub ambiguous: bool,
    pub candidates: Vec<Vec<String>>,
    pub pareto_optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisSection {
    pub mode: Mode,
    pub equilibria: Vec<Vec<String>>,
    pub pareto_front: Option<Vec<Vec<String>>>,
    pub dominance: Option<DominanceSection>,
    pub selection: Option<SelectionSection>,
    pub effectiveness: Option<EffectivenessReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestResponseSection {
    pub path: Vec<Vec<String>>,
    pub end: DynamicsEnd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DynamicsSection {
    pub trajectory: Option<Trajectory>,
    pub summary: Option<TrajectorySummary>,
    pub best_response: Option<BestResponseSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamValue {
    pub param: String,
    pub value: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub point: Vec<ParamValue>,
    pub selected: Vec<String>,
    pub regime: Regime,
    pub robber_revenue: Exact,
    pub score: Exact,
    pub punishment_margin: Exact,
    pub reward_margin: Exact,
    pub effective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub value: Exact,
    pub regime: Regime,
    pub selected: Vec<String>,
    pub robber_revenue: Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSection {
    pub parameter: String,
    pub points: Vec<SweepEntry>,
    pub flips: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignSection {
    pub select: SelectionRule,
    pub require_effective: bool,
    pub ranking: Option<Vec<GridEntry>>,
    pub sweep: Option<SweepSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub model: Model,
    pub game: GameSection,
    pub analysis: Option<AnalysisSection>,
    pub dynamics: Option<DynamicsSection>,
    pub design: Option<DesignSection>,
    pub notes: Vec<String>,
}

fn names(game: &NormalFormGame, profile: &ActionProfile) -> Vec<String> {
    profile
        .actions()
        .iter()
        .enumerate()
        .map(|(p, &a)| game.action_name(p, a).to_string())
        .collect()
}

/// Executes a scenario: build, equilibria, Pareto, dominance, selection,
/// dynamics, design, in that order.
pub fn run(name: &str, scenario: &Scenario, options: &RunOptions) -> Result<Report, ScenarioError> {
    scenario.validate()?;
    let game = scenario.game()?;
    let mode = options.equilibria.unwrap_or(scenario.analysis.equilibria);
    let select = options.select.or(scenario.analysis.select);
    let equilibria = pure_equilibria(&game, mode);
    let front = pareto_front(&game);
    let mut notes = Vec::new();

    let cells = game
        .profiles()
        .zip(game.cells())
        .enumerate()
        .map(|(i, (p, v))| CellRow {
            profile: names(&game, &p),
            payoffs: v.values().to_vec(),
            robber_payoff: game.metadata().map(|m| m[i].robber_payoff),
            equilibrium: is_equilibrium(&game, &p, mode),
            pareto: front.contains(&p),
        })
        .collect();
    let game_section = GameSection {
        equilibrium_mode: mode,
        players: game.player_names().to_vec(),
        actions: game.action_names().to_vec(),
        rules: scenario.rules.clone(),
        cells,
    };

    let analysis = if options.stages.analysis {
        let dominance = scenario.analysis.dominance.map(|dmode| {
            let mut dominated = Vec::new();
            for p in 0..game.player_count() {
                for (loser, winner) in dominated_actions(&game, p, dmode) {
                    dominated.push(DominatedEntry {
                        player: game.player_name(p).to_string(),
                        action: game.action_name(p, loser).to_string(),
                        dominated_by: game.action_name(p, winner).to_string(),
                    });
                }
            }
            let reduction = iterated_elimination(&game, dmode);
            DominanceSection {
                mode: dmode,
                dominated,
                eliminations: reduction
                    .trace
                    .iter()
                    .map(|e| DominatedEntry {
                        player: game.player_name(e.player).to_string(),
                        action: game.action_name(e.player, e.action).to_string(),
                        dominated_by: game.action_name(e.player, e.dominated_by).to_string(),
                    })
                    .collect(),
                surviving: reduction.game.action_names().to_vec(),
            }
        });

        let selection = match select {
            Some(rule) if !equilibria.is_empty() => {
                let s = select_among_equilibria(&game, &equilibria, rule).map_err(ScenarioError::runtime)?;
                let pareto_optimal = front.contains(&s.selected);
                notes.push(if pareto_optimal {
                    "equilibrium coincides with Pareto optimum".to_string()
                } else {
                    "equilibrium is not Pareto optimal".to_string()
                });
                if s.ambiguous {
                    notes.push(format!(
                        "selection ambiguous among {} equilibria; lexicographic representative reported",
                        s.candidates.len()
                    ));
                }
                Some(SelectionSection {
                    rule,
                    selected: names(&game, &s.selected),
                    payoffs: game.payoff_at(&s.selected).expect("equilibrium").values().to_vec(),
                    robber_payoff: game.meta_at(&s.selected).expect("equilibrium").map(|m| m.robber_payoff),
                    ambiguous: s.ambiguous,
                    candidates: s.candidates.iter().map(|c| names(&game, c)).collect(),
                    pareto_optimal,
                })
            }
            _ => None,
        };
        if equilibria.is_empty() {
            notes.push(format!("no pure-strategy {mode} equilibrium"));
        } else if select.is_none() {
            notes.push(format!(
                "no communication: all {} {mode} equilibria reported",
                equilibria.len()
            ));
        }

        let effectiveness = match &scenario.rules {
            Some(rules) => Some(effectiveness(rules).map_err(ScenarioError::runtime)?),
            None => None,
        };
        if effectiveness.as_ref().is_some_and(|e| !e.effective) {
            notes.push("rules are ineffective: reward or punishment margin vanishes".to_string());
        }

        Some(AnalysisSection {
            mode,
            equilibria: equilibria.iter().map(|p| names(&game, p)).collect(),
            pareto_front: scenario
                .analysis
                .pareto
                .then(|| front.iter().map(|p| names(&game, p)).collect()),
            dominance,
            selection,
            effectiveness,
        })
    } else {
        None
    };

    let dynamics = if options.stages.dynamics {
        run_dynamics(scenario, &game, options)?
    } else {
        None
    };
    let design = if options.stages.design {
        run_design(scenario, select, options)?
    } else {
        None
    };

    Ok(Report {
        scenario: name.to_string(),
        model: scenario.model,
        game: game_section,
        analysis,
        dynamics,
        design,
        notes,
    })
}

fn run_dynamics(
    scenario: &Scenario,
    game: &NormalFormGame,
    options: &RunOptions,
) -> Result<Option<DynamicsSection>, ScenarioError> {
    let Some(spec) = &scenario.dynamics else {
        if options.stages.analysis {
            return Ok(None);
        }
        return Err(ScenarioError::Validation {
            field: "dynamics".into(),
            message: "scenario defines no dynamics".into(),
        });
    };
    let (trajectory, summary) = match (&scenario.rules, spec.agents.is_empty()) {
        (Some(rules), false) => {
            let t = simulate(
                rules,
                &spec.agents,
                spec.robber_exit_threshold,
                options.rounds.unwrap_or(spec.rounds),
                options.seed.unwrap_or(spec.seed),
            )
            .map_err(ScenarioError::runtime)?;
            let s = trajectory_summary(&t).map_err(ScenarioError::runtime)?;
            (Some(t), Some(s))
        }
        _ => (None, None),
    };
    let best_response = match &spec.best_response {
        Some(br) => {
            let initial = profile_from_names(game, &br.initial).map_err(|m| ScenarioError::Validation {
                field: "dynamics.best_response.initial".into(),
                message: m,
            })?;
            let r = best_response_dynamics(game, &initial, br.max_steps).map_err(ScenarioError::runtime)?;
            Some(BestResponseSection {
                path: r.path.iter().map(|p| names(game, p)).collect(),
                end: r.end,
            })
        }
        None => None,
    };
    Ok(Some(DynamicsSection {
        trajectory,
        summary,
        best_response,
    }))
}

fn run_design(
    scenario: &Scenario,
    analysis_select: Option<SelectionRule>,
    options: &RunOptions,
) -> Result<Option<DesignSection>, ScenarioError> {
    let spec = scenario.design.as_ref();
    if spec.is_none() && options.sweep.is_none() {
        if options.stages.analysis {
            return Ok(None);
        }
        return Err(ScenarioError::Validation {
            field: "design".into(),
            message: "scenario defines no rule design".into(),
        });
    }
    let base = scenario.rules.as_ref().ok_or_else(|| ScenarioError::Validation {
        field: "design".into(),
        message: "rule design needs a villager model".into(),
    })?;
    let select = spec.map(|d| d.select).or(analysis_select).unwrap_or_default();
    let require_effective = options
        .require_effective
        .unwrap_or_else(|| spec.is_some_and(|d| d.require_effective));

    let ranking = match scenario.parameter_grid()? {
        Some(grid) if options.sweep.is_none() => {
            let ranked = optimize_rules(&grid, base, select, require_effective).map_err(ScenarioError::runtime)?;
            let entries = ranked
                .into_iter()
                .map(|r| {
                    let game = crate::rules::build_villager_game(&r.evaluation.rules);
                    GridEntry {
                        point: r
                            .point
                            .iter()
                            .map(|(p, v)| ParamValue {
                                param: p.name().to_string(),
                                value: *v,
                            })
                            .collect(),
                        selected: names(&game, &r.evaluation.selection.selected),
                        regime: r.evaluation.regime,
                        robber_revenue: r.evaluation.robber_revenue,
                        score: r.score,
                        punishment_margin: r.evaluation.effectiveness.punishment_margin,
                        reward_margin: r.evaluation.effectiveness.reward_margin,
                        effective: r.evaluation.effectiveness.effective,
                    }
                })
                .collect();
            Some(entries)
        }
        _ => None,
    };

    let sweep_request = options.sweep.clone().or_else(|| {
        spec.and_then(|d| d.sweep.as_ref())
            .map(|s| (s.param.parse().expect("validated parameter"), s.values.clone()))
    });
    let sweep = match sweep_request {
        Some((param, values)) => {
            if values.is_empty() {
                return Err(ScenarioError::Validation {
                    field: "design.sweep.values".into(),
                    message: "no values".into(),
                });
            }
            for v in &values {
                param
                    .apply(&mut base.clone(), *v)
                    .map_err(|e| ScenarioError::Validation {
                        field: "design.sweep.values".into(),
                        message: e.to_string(),
                    })?;
            }
            let s = breakpoint_sweep(base, param, &values, select).map_err(ScenarioError::runtime)?;
            Some(SweepSection {
                parameter: param.name().to_string(),
                points: s
                    .points
                    .iter()
                    .map(|p| SweepEntry {
                        value: p.value,
                        regime: p.regime,
                        selected: p
                            .selected
                            .actions()
                            .iter()
                            .map(|&a| Action::from_index(a).map(Action::name).unwrap_or("?").to_string())
                            .collect(),
                        robber_revenue: p.robber_revenue,
                    })
                    .collect(),
                flips: s.flips,
            })
        }
        None => None,
    };

    Ok(Some(DesignSection {
        select,
        require_effective,
        ranking,
        sweep,
    }))
}

pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Table => render_table(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(report),
    }
}

fn render_csv(report: &Report) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let players = &report.game.players;
    let mut header: Vec<String> = players.iter().map(|p| format!("action_{p}")).collect();
    header.extend(players.iter().map(|p| format!("payoff_{p}")));
    header.extend([
        "robber_payoff".to_string(),
        "equilibrium".to_string(),
        "pareto".to_string(),
    ]);
    writer.write_record(&header).expect("in-memory write");
    for cell in &report.game.cells {
        let mut row = cell.profile.clone();
        row.extend(cell.payoffs.iter().map(Exact::to_string));
        row.push(cell.robber_payoff.map(|r| r.to_string()).unwrap_or_default());
        row.push(cell.equilibrium.to_string());
        row.push(cell.pareto.to_string());
        writer.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
}

fn grid(headers: &[String], rows: &[Vec<String>]) -> String {
    let cols = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let parts: Vec<String> = (0..cols)
            .map(|i| format!("{:<w$}", cells.get(i).map(String::as_str).unwrap_or(""), w = widths[i]))
            .collect();
        parts.join(" | ").trim_end().to_string()
    };
    let mut out = String::new();
    out.push_str(&line(headers));
    out.push('\n');
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-"));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

fn profile_str(p: &[String]) -> String {
    format!("({})", p.join(","))
}

fn vector_str(v: &[Exact]) -> String {
    let parts: Vec<String> = v.iter().map(Exact::to_string).collect();
    format!("({})", parts.join(", "))
}

fn on_off(b: bool) -> &'static str {
    if b {
        "on"
    } else {
        "off"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Column label for the first two villagers' joint play.
fn pair_label(a: &str, b: &str, first: &str, second: &str) -> String {
    if first == second {
        format!("{a} & {b} {first}")
    } else {
        format!("{a} {first}, {b} {second}")
    }
}

fn payoff_layout(report: &Report) -> Option<String> {
    let g = &report.game;
    let cell = |profile: &[&String]| {
        g.cells
            .iter()
            .find(|c| c.profile.iter().zip(profile).all(|(x, y)| x == *y))
            .expect("complete table")
    };
    match g.players.len() {
        2 => {
            let mut headers = vec![String::new()];
            headers.extend(g.actions[1].iter().map(|a| format!("{} {}", g.players[1], a)));
            let rows: Vec<Vec<String>> = g.actions[0]
                .iter()
                .map(|r| {
                    let mut row = vec![format!("{} {}", g.players[0], r)];
                    row.extend(g.actions[1].iter().map(|c| vector_str(&cell(&[r, c]).payoffs)));
                    row
                })
                .collect();
            Some(format!(
                "Payoffs ({}, {})\n{}",
                g.players[0],
                g.players[1],
                grid(&headers, &rows)
            ))
        }
        3 => {
            let (a, b, c) = (&g.players[0], &g.players[1], &g.players[2]);
            let mut headers = vec![String::new()];
            let mut pairs = Vec::new();
            for x in &g.actions[0] {
                for y in &g.actions[1] {
                    headers.push(pair_label(a, b, x, y));
                    pairs.push((x, y));
                }
            }
            let rows: Vec<Vec<String>> = g.actions[2]
                .iter()
                .map(|z| {
                    let mut row = vec![z.clone()];
                    row.extend(pairs.iter().map(|(x, y)| cell(&[x, y, z]).payoffs[2].to_string()));
                    row
                })
                .collect();
            Some(format!("Payoff to {c}\n{}", grid(&headers, &rows)))
        }
        _ => None,
    }
}

fn render_table(report: &Report) -> String {
    let g = &report.game;
    let mut out = String::new();
    let _ = writeln!(out, "scenario: {}", report.scenario);
    let _ = writeln!(
        out,
        "model: {}, {} players ({}), {} profiles",
        report.model,
        g.players.len(),
        g.players.join(", "),
        g.cells.len()
    );
    if let Some(r) = &g.rules {
        let _ = writeln!(
            out,
            "rules: n_villagers={} endowment={} tax={} reward_pool={} reward={} punishment={} \
             robber_strength={} villager_strength={} betrayer_aids_robber={} survival_threshold={}",
            r.n_villagers,
            r.endowment,
            r.tax,
            r.reward_pool,
            on_off(r.reward_enabled),
            on_off(r.punishment_enabled),
            r.robber_strength,
            r.villager_strength,
            on_off(r.betrayer_aids_robber),
            r.survival_threshold
                .map(|s| s.to_string())
                .unwrap_or_else(|| "none".into()),
        );
    }
    out.push('\n');
    if report.analysis.is_some() {
        render_game(report, &mut out);
    }
    render_sections(report, &mut out);
    out
}

fn render_game(report: &Report, out: &mut String) {
    let g = &report.game;
    if let Some(layout) = payoff_layout(report) {
        out.push_str(&layout);
        out.push('\n');
    }

    let mode = g.equilibrium_mode;
    let mut headers = vec!["profile".to_string()];
    headers.extend(g.players.iter().cloned());
    let has_robber = g.cells.iter().any(|c| c.robber_payoff.is_some());
    if has_robber {
        headers.push("robber".into());
    }
    headers.push(format!("{mode} eq"));
    headers.push("pareto".into());
    let rows: Vec<Vec<String>> = g
        .cells
        .iter()
        .map(|c| {
            let mut row = vec![profile_str(&c.profile)];
            row.extend(c.payoffs.iter().map(Exact::to_string));
            if has_robber {
                row.push(c.robber_payoff.map(|r| r.to_string()).unwrap_or_default());
            }
            row.push(yes_no(c.equilibrium).into());
            row.push(yes_no(c.pareto).into());
            row
        })
        .collect();
    let _ = writeln!(out, "Profiles\n{}", grid(&headers, &rows));
}

fn render_sections(report: &Report, out: &mut String) {
    let g = &report.game;

    let payoff_of = |p: &[String]| {
        g.cells
            .iter()
            .find(|c| c.profile == p)
            .map(|c| vector_str(&c.payoffs))
            .unwrap_or_default()
    };

    if let Some(a) = &report.analysis {
        let _ = writeln!(
            out,
            "{} equilibria ({})",
            capitalize(&a.mode.to_string()),
            a.equilibria.len()
        );
        for e in &a.equilibria {
            let _ = writeln!(out, "  {} {}", profile_str(e), payoff_of(e));
        }
        out.push('\n');
        if let Some(front) = &a.pareto_front {
            let _ = writeln!(out, "Pareto front ({})", front.len());
            for e in front {
                let _ = writeln!(out, "  {} {}", profile_str(e), payoff_of(e));
            }
            out.push('\n');
        }
        if let Some(d) = &a.dominance {
            let _ = writeln!(out, "Dominance ({})", d.mode);
            if d.dominated.is_empty() {
                let _ = writeln!(out, "  no dominated actions");
            }
            for e in &d.dominated {
                let _ = writeln!(out, "  {}: {} dominated by {}", e.player, e.action, e.dominated_by);
            }
            let _ = writeln!(out, "Iterated elimination ({})", d.mode);
            for (i, e) in d.eliminations.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "  {}. {} drops {} (dominated by {})",
                    i + 1,
                    e.player,
                    e.action,
                    e.dominated_by
                );
            }
            let surviving: Vec<String> = g
                .players
                .iter()
                .zip(&d.surviving)
                .map(|(p, acts)| format!("{p} {{{}}}", acts.join(", ")))
                .collect();
            let _ = writeln!(out, "  surviving: {}", surviving.join("; "));
            out.push('\n');
        }
        if let Some(s) = &a.selection {
            let _ = writeln!(out, "Selection ({})", s.rule);
            let robber = s.robber_payoff.map(|r| format!(", robber {r}")).unwrap_or_default();
            let _ = writeln!(
                out,
                "  selected: {} payoffs {}{}",
                profile_str(&s.selected),
                vector_str(&s.payoffs),
                robber
            );
            if s.ambiguous {
                let _ = writeln!(out, "  ambiguous among {} candidates", s.candidates.len());
            }
            let _ = writeln!(out, "  pareto optimal: {}", yes_no(s.pareto_optimal));
            out.push('\n');
        }
        if let Some(e) = &a.effectiveness {
            let _ = writeln!(out, "Effectiveness");
            let _ = writeln!(
                out,
                "  punishment margin {}, reward margin {}: {}",
                e.punishment_margin,
                e.reward_margin,
                if e.effective { "effective" } else { "ineffective" }
            );
            out.push('\n');
        }
    }

    if let Some(d) = &report.dynamics {
        if let (Some(t), Some(s)) = (&d.trajectory, &d.summary) {
            let _ = writeln!(out, "Repeated play (seed {})", t.seed);
            let mut headers = vec!["round".to_string(), "profile".into()];
            headers.extend(g.players.iter().cloned());
            headers.push("robber".into());
            let rows: Vec<Vec<String>> = t
                .rounds
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut row = vec![
                        (i + 1).to_string(),
                        format!("({})", r.profile.iter().map(|a| a.name()).collect::<Vec<_>>().join(",")),
                    ];
                    row.extend(r.villager_payoffs.values().iter().map(Exact::to_string));
                    row.push(r.robber_payoff.to_string());
                    row
                })
                .collect();
            out.push_str(&grid(&headers, &rows));
            let termination = match &s.termination {
                Termination::RobberDefeated => "robber defeated".to_string(),
                Termination::RoundLimit => "round limit".to_string(),
                Termination::ParticipantExit { who } => {
                    let who: Vec<&str> = who
                        .iter()
                        .map(|p| match p {
                            Participant::Villager(i) => g.players[*i].as_str(),
                            Participant::Robber => "robber",
                        })
                        .collect();
                    format!("exit by {}", who.join(", "))
                }
            };
            let _ = writeln!(out, "  termination: {termination}");
            let cumulative: Vec<String> = g
                .players
                .iter()
                .zip(&s.cumulative_villagers)
                .map(|(p, v)| format!("{p} {v}"))
                .collect();
            let _ = writeln!(
                out,
                "  cumulative: {}, robber {}",
                cumulative.join(", "),
                s.cumulative_robber
            );
            for (p, f) in g.players.iter().zip(&s.action_frequency) {
                let _ = writeln!(out, "  {p} played Defy {} Obey {} Betray {}", f[0], f[1], f[2]);
            }
            let _ = writeln!(
                out,
                "  final round is a weak equilibrium: {}",
                yes_no(s.final_round_is_equilibrium)
            );
            out.push('\n');
        }
        if let Some(br) = &d.best_response {
            let _ = writeln!(out, "Best-response dynamics");
            let path: Vec<String> = br.path.iter().map(|p| profile_str(p)).collect();
            let _ = writeln!(out, "  {}", path.join(" -> "));
            let end = match &br.end {
                DynamicsEnd::FixedPoint => "fixed point".to_string(),
                DynamicsEnd::Cycle { length } => format!("cycle of length {length}"),
                DynamicsEnd::StepLimit => "step limit".to_string(),
            };
            let _ = writeln!(out, "  end: {end}");
            out.push('\n');
        }
    }

    if let Some(d) = &report.design {
        let _ = writeln!(
            out,
            "Rule design ({}, require effective: {})",
            d.select,
            yes_no(d.require_effective)
        );
        if let Some(ranking) = &d.ranking {
            if let Some(best) = ranking.first() {
                let point: Vec<String> = best.point.iter().map(|p| format!("{}={}", p.param, p.value)).collect();
                let _ = writeln!(out, "  winner: {} with revenue {}", point.join(" "), best.score);
            }
            let params: Vec<String> = ranking
                .first()
                .map(|r| r.point.iter().map(|p| p.param.clone()).collect())
                .unwrap_or_default();
            let mut headers = vec!["rank".to_string()];
            headers.extend(params.iter().cloned());
            headers.extend(
                [
                    "selected",
                    "regime",
                    "revenue",
                    "punish margin",
                    "reward margin",
                    "effective",
                    "score",
                ]
                .map(String::from),
            );
            let rows: Vec<Vec<String>> = ranking
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut row = vec![(i + 1).to_string()];
                    row.extend(r.point.iter().map(|p| p.value.to_string()));
                    row.push(profile_str(&r.selected));
                    row.push(r.regime.to_string());
                    row.push(r.robber_revenue.to_string());
                    row.push(r.punishment_margin.to_string());
                    row.push(r.reward_margin.to_string());
                    row.push(yes_no(r.effective).into());
                    row.push(r.score.to_string());
                    row
                })
                .collect();
            out.push_str(&grid(&headers, &rows));
        }
        if let Some(s) = &d.sweep {
            let _ = writeln!(out, "  sweep over {}", s.parameter);
            let headers = ["value", "regime", "selected", "revenue"].map(String::from);
            let rows: Vec<Vec<String>> = s
                .points
                .iter()
                .map(|p| {
                    vec![
                        p.value.to_string(),
                        p.regime.to_string(),
                        profile_str(&p.selected),
                        p.robber_revenue.to_string(),
                    ]
                })
                .collect();
            out.push_str(&grid(&headers, &rows));
            let flips: Vec<String> = s
                .flips
                .iter()
                .map(|&i| format!("{} -> {}", s.points[i].value, s.points[i + 1].value))
                .collect();
            let _ = writeln!(
                out,
                "  regime flips: {}",
                if flips.is_empty() {
                    "none".to_string()
                } else {
                    flips.join("; ")
                }
            );
        }
        out.push('\n');
    }

    if !report.notes.is_empty() {
        let _ = writeln!(out, "Notes");
        for n in &report.notes {
            let _ = writeln!(out, "  - {n}");
        }
    }
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}
