use std::fmt::Write as _;
use std::io::Write;

use swapnet_core::dynamics::default_max_steps;
use swapnet_core::{run_dynamics, DynamicsTrace, EquilibriumMode, Outcome, Scheduler};

use crate::cli::SimulateArgs;
use crate::error::{CliError, CliResult};
use crate::instance_file::InstanceFile;
use crate::write_file;

/// Tab-separated trace: one line per invocation after a row for the initial
/// state (step 0).
pub fn trace_text(trace: &DynamicsTrace, sched: &Scheduler, mode: EquilibriumMode) -> String {
    let mut s = format!("# scheduler {sched} mode {mode}\nstep\tnode\tmove\tfingerprint\n");
    let _ = writeln!(s, "0\t-\t-\t{}", trace.initial);
    for (i, (step, fp)) in trace.steps.iter().zip(&trace.states).enumerate() {
        let mv = match &step.action {
            Some(br) => format!("{} ({} -> {})", br.step, br.cost_before, br.cost_after),
            None => "pass".to_string(),
        };
        let _ = writeln!(s, "{}\t{}\t{}\t{}", i + 1, step.node, mv, fp);
    }
    let _ = writeln!(s, "# outcome {}", outcome_text(&trace.outcome));
    s
}

pub fn outcome_text(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Converged { step, moves } => {
            format!("converged at step {step} after {moves} moves")
        }
        Outcome::Cycle { first, period } => {
            format!("cycle: state {first} recurs with period {period}")
        }
        Outcome::BudgetExhausted => "budget exhausted".to_string(),
    }
}

pub fn run(args: &SimulateArgs, out: &mut dyn Write) -> CliResult<u8> {
    let mode: EquilibriumMode = args.mode.parse()?;
    let file = InstanceFile::read(&args.instance)?;
    let inst = file.to_instance(false)?;
    let sched: Scheduler = match (&args.scheduler, &file.metadata) {
        (Some(s), _) => s.parse()?,
        (None, Some(m)) => match m.params.get("scheduler").and_then(|v| v.as_str()) {
            Some(s) => s.parse()?,
            None => Scheduler::RoundRobin,
        },
        (None, None) => Scheduler::RoundRobin,
    };
    let max_steps = args
        .max_steps
        .unwrap_or_else(|| default_max_steps(inst.node_count()));
    let trace = run_dynamics(&inst, &sched, mode, max_steps)?;

    if let Some(path) = &args.trace {
        write_file(path, trace_text(&trace, &sched, mode).as_bytes())?;
    }
    if let Some(path) = &args.out {
        let f = InstanceFile::from_instance(&trace.final_state, None);
        write_file(path, f.to_json().as_bytes())?;
    }
    let text = format!(
        "scheduler: {sched}\nmode: {mode}\noutcome: {}\nmoves: {}\ninvocations: {}\nfinal state: {}\n",
        outcome_text(&trace.outcome),
        trace.moves(),
        trace.steps.len(),
        trace.state(trace.steps.len()),
    );
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    Ok(match trace.outcome {
        Outcome::Converged { .. } => 0,
        _ => 1,
    })
}
