use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use tdg_core::gadgets::{self, GadgetOutput};
use tdg_core::io::{self, GadgetExtras};
use tdg_core::{
    beneficial_jumps, beneficial_swaps, explore_state_graph, explore_swap_state_graph,
    necessarily_converges, possibly_converges, run_dynamics, run_swap_dynamics, Assignment,
    Deviation, DistanceFactor, OracleBudget, Outcome, Rational, SchedulerPolicy, SolverOutcome,
    SolverReport, TdgError, TdgInstance, TopologyGraph,
};

use crate::{
    CheckArgs, DynamicsArgs, GadgetArgs, GadgetAssignment, GadgetKind, Method, Notion, PolicyKind,
    SolveArgs, StatespaceArgs,
};

pub struct CommandResult {
    pub exit_code: u8,
    pub report: String,
}

pub struct CliError {
    pub exit_code: u8,
    pub message: String,
}

type CmdResult = Result<CommandResult, CliError>;

fn fail(exit_code: u8, message: impl ToString) -> CliError {
    CliError {
        exit_code,
        message: message.to_string(),
    }
}

fn input_error(e: TdgError) -> CliError {
    fail(2, e)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<(TdgInstance, GadgetExtras), CliError> {
    io::parse_instance_with_extras(&read(path)?).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load_assignment(path: &Path, instance: &TdgInstance) -> Result<Assignment, CliError> {
    let a = io::parse_assignment(&read(path)?).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    a.validate_for(instance).map_err(input_error)?;
    Ok(a)
}

fn pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn placement_text(a: &Assignment) -> String {
    a.placement()
        .iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn deviation_json(d: &Deviation) -> Value {
    match d {
        Deviation::Jump { agent, target, gain } => {
            json!({"kind": "jump", "agent": agent + 1, "node": target + 1, "gain": gain})
        }
        Deviation::Swap { first, second, gains } => {
            json!({"kind": "swap", "first": first + 1, "second": second + 1, "gains": [gains.0, gains.1]})
        }
    }
}

fn deviation_text(d: &Deviation) -> String {
    match d {
        Deviation::Jump { agent, target, gain } => {
            format!("jump: agent {} to node {}, gain {gain}", agent + 1, target + 1)
        }
        Deviation::Swap { first, second, gains } => format!(
            "swap: agents {} and {}, gains {} and {}",
            first + 1,
            second + 1,
            gains.0,
            gains.1
        ),
    }
}

fn notion_name(notion: Notion) -> &'static str {
    match notion {
        Notion::Jump => "jump",
        Notion::Swap => "swap",
    }
}

pub fn check(args: CheckArgs) -> CmdResult {
    let (instance, extras) = load_instance(&args.instance)?;
    let lambda = match &args.assignment {
        Some(path) => load_assignment(path, &instance)?,
        None => {
            let stored = match args.stored {
                GadgetAssignment::Initial => extras.initial,
                GadgetAssignment::Witness => extras.witness,
            };
            stored.ok_or_else(|| fail(2, "no assignment file given and none stored in the instance"))?
        }
    };
    let deviations = match args.notion {
        Notion::Jump => beneficial_jumps(&instance, &lambda),
        Notion::Swap => beneficial_swaps(&instance, &lambda),
    };
    let stable = deviations.is_empty();
    let report = if args.json {
        pretty(&json!({
            "notion": notion_name(args.notion),
            "stable": stable,
            "deviations": deviations.iter().map(deviation_json).collect::<Vec<_>>(),
        }))
    } else {
        let mut s = format!(
            "{} ({})\n",
            if stable { "stable" } else { "unstable" },
            notion_name(args.notion)
        );
        for d in &deviations {
            let _ = writeln!(s, "{}", deviation_text(d));
        }
        s
    };
    Ok(CommandResult {
        exit_code: if stable { 0 } else { 1 },
        report,
    })
}

fn budget() -> Result<OracleBudget, CliError> {
    match std::env::var("TDG_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|max_assignments| OracleBudget { max_assignments })
            .map_err(|_| fail(2, format!("TDG_BUDGET must be a positive integer, got `{v}`"))),
        Err(_) => Ok(OracleBudget::default()),
    }
}

fn report_json(report: &SolverReport) -> Value {
    let mut v = json!({
        "method": report.method.name(),
        "checks": report.checks.iter().map(|c| json!({"name": c.name, "passed": c.passed})).collect::<Vec<_>>(),
    });
    match &report.outcome {
        SolverOutcome::Assignment(a) => {
            v["outcome"] = json!("assignment");
            v["placement"] = json!(a.placement().iter().map(|p| p + 1).collect::<Vec<_>>());
        }
        SolverOutcome::NonExistent => v["outcome"] = json!("non-existent"),
        SolverOutcome::NotApplicable(check) => {
            v["outcome"] = json!("not-applicable");
            v["failed_check"] = json!(check);
        }
    }
    if let Some(r) = &report.relabeling {
        v["relabeling"] = json!(r.iter().map(|a| a + 1).collect::<Vec<_>>());
    }
    v
}

pub fn solve(args: SolveArgs) -> CmdResult {
    let (instance, _) = load_instance(&args.instance)?;
    let report = match args.method {
        Method::Acyclic => tdg_core::solve_acyclic(&instance),
        Method::Cycle => tdg_core::solve_cycle_on_cycle(&instance),
        Method::Path => tdg_core::solve_path(&instance),
        Method::Star => tdg_core::solve_extended_star(&instance),
        Method::Brute => tdg_core::solve_brute_force(&instance, budget()?),
    }
    .map_err(|e| match e {
        TdgError::BudgetExceeded { .. } => fail(4, e),
        other => fail(2, other),
    })?;
    let exit_code = match report.outcome {
        SolverOutcome::Assignment(_) => 0,
        SolverOutcome::NonExistent => 1,
        SolverOutcome::NotApplicable(_) => 3,
    };
    let text = if args.json {
        pretty(&report_json(&report))
    } else {
        let mut s = format!("method: {}\n", report.method.name());
        for c in &report.checks {
            let _ = writeln!(s, "check {}: {}", c.name, if c.passed { "ok" } else { "failed" });
        }
        match &report.outcome {
            SolverOutcome::Assignment(a) => {
                let _ = writeln!(s, "outcome: assignment\nplacement: {}", placement_text(a));
            }
            SolverOutcome::NonExistent => s.push_str("outcome: non-existent\n"),
            SolverOutcome::NotApplicable(c) => {
                let _ = writeln!(s, "outcome: not-applicable ({c})");
            }
        }
        if let Some(r) = &report.relabeling {
            let labels: Vec<String> = r.iter().map(|a| (a + 1).to_string()).collect();
            let _ = writeln!(s, "relabeling: {}", labels.join(" "));
        }
        s
    };
    Ok(CommandResult {
        exit_code,
        report: text,
    })
}

pub fn dynamics(args: DynamicsArgs) -> CmdResult {
    let (instance, extras) = load_instance(&args.instance)?;
    let start = match &args.start {
        Some(path) => load_assignment(path, &instance)?,
        None => extras
            .initial
            .clone()
            .ok_or_else(|| fail(2, "no --start given and no initial assignment stored in the instance"))?,
    };
    let policy = match args.policy {
        PolicyKind::First => SchedulerPolicy::FirstDeviator,
        PolicyKind::Best => SchedulerPolicy::BestGain,
        PolicyKind::Random => SchedulerPolicy::SeededRandom(args.seed),
        PolicyKind::Scripted => {
            let script = match &args.script {
                Some(path) => io::parse_script(&read(path)?).map_err(|e| fail(2, format!("{}: {e}", path.display())))?,
                None => extras
                    .script
                    .clone()
                    .ok_or_else(|| fail(2, "no --script given and no script stored in the instance"))?,
            };
            SchedulerPolicy::Scripted(script)
        }
    };
    let trace = match args.notion {
        Notion::Jump => run_dynamics(&instance, &start, &policy, args.max_steps),
        Notion::Swap => run_swap_dynamics(&instance, &start, &policy, args.max_steps),
    }
    .map_err(|e| fail(2, e))?;
    if let Some(path) = &args.emit_trace {
        fs::write(path, pretty(&io::trace_to_json(&trace)))
            .map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    }
    let exit_code = match trace.outcome {
        Outcome::Converged(_) => 0,
        Outcome::CycleDetected { .. } => 1,
        Outcome::StepLimit | Outcome::ScriptExhausted(_) => 4,
    };
    let report = if args.json {
        let mut v = io::outcome_json(&trace.outcome);
        v["steps"] = json!(trace.steps.len());
        pretty(&v)
    } else {
        let mut s = format!("outcome: {}\nsteps: {}\n", trace.outcome.tag(), trace.steps.len());
        match &trace.outcome {
            Outcome::Converged(a) | Outcome::ScriptExhausted(a) => {
                let _ = writeln!(s, "final: {}", placement_text(a));
            }
            Outcome::CycleDetected { first_repeat_index, period } => {
                let _ = writeln!(s, "first repeat: {first_repeat_index}\nperiod: {period}");
            }
            Outcome::StepLimit => {}
        }
        s
    };
    Ok(CommandResult { exit_code, report })
}

fn parse_factor(spec: Option<&str>) -> Result<DistanceFactor, CliError> {
    let Some(spec) = spec else {
        return Ok(DistanceFactor::Reciprocal);
    };
    if spec == "reciprocal" {
        return Ok(DistanceFactor::Reciprocal);
    }
    let values = spec
        .split(',')
        .map(|v| v.trim().parse::<Rational>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| fail(2, e))?;
    DistanceFactor::table(values).map_err(|e| fail(2, e))
}

fn parse_topology(spec: &str) -> Result<TopologyGraph, CliError> {
    let shape = |prefix: &str| -> Option<usize> { spec.strip_prefix(prefix)?.parse().ok() };
    let built = if let Some(m) = shape("path") {
        Some(Ok(TopologyGraph::path(m)))
    } else if let Some(m) = shape("star") {
        Some(Ok(TopologyGraph::star(m)))
    } else if let Some(m) = shape("cycle") {
        Some(TopologyGraph::cycle(m))
    } else {
        shape("complete").map(|m| Ok(TopologyGraph::complete(m)))
    };
    if let Some(t) = built {
        return t.map_err(|e| fail(2, e));
    }
    #[derive(Deserialize)]
    struct File {
        nodes: usize,
        edges: Vec<(usize, usize)>,
    }
    let path = Path::new(spec);
    let file: File = serde_json::from_str(&read(path)?).map_err(|e| fail(2, format!("{spec}: {e}")))?;
    let edges = file
        .edges
        .iter()
        .map(|&(a, b)| match (a.checked_sub(1), b.checked_sub(1)) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(fail(2, format!("{spec}: node indices are 1-based"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    TopologyGraph::new(file.nodes, edges).map_err(|e| fail(2, e))
}

fn load_x3c(path: &Path) -> Result<(gadgets::X3cInstance, Option<Vec<usize>>), CliError> {
    io::parse_x3c(&read(path)?).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<gadgets::WeightedCompleteGraph, CliError> {
    io::parse_weighted_graph(&read(path)?).map_err(|e| fail(2, format!("{}: {e}", path.display())))
}

fn precondition(e: TdgError) -> CliError {
    fail(3, e)
}

fn build_gadget(kind: &GadgetKind) -> Result<(GadgetOutput, Option<&'static str>), CliError> {
    let mut flag = None;
    let g = match kind {
        GadgetKind::CatAndMouse { topology } => gadgets::gadget_cat_and_mouse(parse_topology(topology)?),
        GadgetKind::TreeCounterexample => gadgets::gadget_tree_counterexample(),
        GadgetKind::Roommates => gadgets::gadget_roommates_no_swap(),
        GadgetKind::SwapCycle => gadgets::gadget_swap_cycle(),
        GadgetKind::Exponential { k } => gadgets::gadget_exponential_family(*k),
        GadgetKind::Maxcut { graph } => gadgets::gadget_maxcut_reduction(&load_graph(graph)?),
        GadgetKind::GraphPartitioning { graph } => {
            gadgets::gadget_graph_partitioning_reduction(&load_graph(graph)?)
        }
        GadgetKind::Exjump { x3c, pad } => {
            let (x, cover) = load_x3c(x3c)?;
            if *pad {
                let padded = gadgets::pad_x3c_for_exjump(&x);
                flag = padded.flag.map(|f| f.name());
                let cover = cover.map(|c| padded.extend_cover(&c));
                gadgets::gadget_exjump(&padded.instance, cover.as_deref())
            } else {
                gadgets::gadget_exjump(&x, cover.as_deref())
            }
        }
        GadgetKind::Dynconv { x3c, pad, factor } => {
            let (x, cover) = load_x3c(x3c)?;
            let factor = parse_factor(factor.as_deref())?;
            if *pad {
                let padded = gadgets::pad_x3c_for_dynamics(&x);
                let cover = cover.map(|c| padded.extend_cover(&c));
                gadgets::gadget_dynconv(&padded.instance, factor, cover.as_deref())
            } else {
                gadgets::gadget_dynconv(&x, factor, cover.as_deref())
            }
        }
        GadgetKind::Dyncycle { x3c, factor } => {
            let (x, cover) = load_x3c(x3c)?;
            gadgets::gadget_dyncycle(&x, parse_factor(factor.as_deref())?, cover.as_deref())
        }
    }
    .map_err(precondition)?;
    Ok((g, flag))
}

pub fn gadget(args: GadgetArgs) -> CmdResult {
    let (g, flag) = build_gadget(&args.kind)?;
    let mut value = io::gadget_to_json(&g);
    if let Some(flag) = flag {
        value["gadget"]["metadata"]["padding"] = json!(flag);
    }
    let Some(out) = &args.out else {
        return Ok(CommandResult {
            exit_code: 0,
            report: pretty(&value),
        });
    };
    fs::write(out, pretty(&value)).map_err(|e| fail(2, format!("{}: {e}", out.display())))?;
    let summary = json!({
        "name": g.name,
        "agents": g.instance.n(),
        "nodes": g.instance.node_count(),
        "edges": g.instance.topology().edges().len(),
        "has_initial": g.initial.is_some(),
        "has_witness": g.witness.is_some(),
        "script_length": g.script.as_ref().map(Vec::len),
    });
    let report = if args.json {
        pretty(&summary)
    } else {
        let mut s = format!(
            "gadget {}: {} agents, {} nodes, {} edges\n",
            g.name,
            g.instance.n(),
            g.instance.node_count(),
            g.instance.topology().edges().len()
        );
        if let Some(script) = &g.script {
            let _ = writeln!(s, "script: {} jumps", script.len());
        }
        if let Some(flag) = flag {
            let _ = writeln!(s, "padding: {flag}");
        }
        let _ = writeln!(s, "written to {}", out.display());
        s
    };
    Ok(CommandResult { exit_code: 0, report })
}

pub fn statespace(args: StatespaceArgs) -> CmdResult {
    let (instance, extras) = load_instance(&args.instance)?;
    let start = match &args.start {
        Some(path) => load_assignment(path, &instance)?,
        None => extras
            .initial
            .ok_or_else(|| fail(2, "no --start given and no initial assignment stored in the instance"))?,
    };
    let graph = match args.notion {
        Notion::Jump => explore_state_graph(&instance, &start, args.limit),
        Notion::Swap => explore_swap_state_graph(&instance, &start, args.limit),
    }
    .map_err(|e| match e {
        TdgError::StateSpaceTooLarge { .. } => fail(4, e),
        other => fail(2, other),
    })?;
    let possibly = possibly_converges(&graph);
    let necessarily = necessarily_converges(&graph);
    let report = if args.json {
        pretty(&json!({
            "notion": notion_name(args.notion),
            "states": graph.state_count(),
            "edges": graph.edge_count(),
            "stable_states": graph.stable_flags.iter().filter(|&&s| s).count(),
            "possibly_converges": possibly,
            "necessarily_converges": necessarily,
        }))
    } else {
        format!(
            "states: {}\nedges: {}\nstable states: {}\npossibly converges: {possibly}\nnecessarily converges: {necessarily}\n",
            graph.state_count(),
            graph.edge_count(),
            graph.stable_flags.iter().filter(|&&s| s).count(),
        )
    };
    Ok(CommandResult { exit_code: 0, report })
}
