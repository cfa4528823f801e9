use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use swapnet_core::analysis::{brute_force_optimum, ENUMERATION_CAP};
use swapnet_core::dynamics::default_max_steps;
use swapnet_core::{private_costs, run_dynamics, Cost, EquilibriumMode, Outcome, Scheduler};

use crate::cli::{Family, SweepArgs};
use crate::error::{CliError, CliResult};
use crate::generate::build;
use crate::write_file;

/// One CSV row. Field order is the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub generator: String,
    pub param: usize,
    pub n: usize,
    pub social_cost: String,
    pub max_private_cost: String,
    pub optimum: Option<String>,
    /// social / optimum when the optimum is known, else social / n.
    pub ratio: String,
    pub steps: Option<usize>,
}

fn ratio(num: Cost, den: Cost) -> String {
    format!("{:.6}", num.to_f64() / den.to_f64())
}

pub fn rows(args: &SweepArgs) -> CliResult<Vec<ExperimentRow>> {
    if args.family == Family::Cycling {
        return Err(CliError::invalid("cycling has no parameter to sweep"));
    }
    if args.step == 0 {
        return Err(CliError::invalid("--step must be positive"));
    }
    if args.from > args.to {
        return Err(CliError::invalid(format!(
            "empty range {}..={}",
            args.from, args.to
        )));
    }
    let params: Vec<usize> = (args.from..=args.to).step_by(args.step).collect();
    params.par_iter().map(|&p| row(args, p)).collect()
}

fn row(args: &SweepArgs, param: usize) -> CliResult<ExperimentRow> {
    let (inst, _) = build(args.family, Some(param), &args.alg1, None)?;
    let n = inst.node_count();
    let costs = private_costs(&inst)?;
    let social: Cost = costs.iter().copied().sum();
    let max = costs.iter().copied().max().unwrap_or_else(Cost::zero);
    let optimum = if args.optimum {
        if n > ENUMERATION_CAP {
            return Err(CliError::invalid(format!(
                "--optimum needs n <= {ENUMERATION_CAP}, parameter {param} gives n = {n}"
            )));
        }
        Some(brute_force_optimum(inst.interests(), inst.version())?.cost)
    } else {
        None
    };
    let steps = if args.dynamics {
        let trace = run_dynamics(
            &inst,
            &Scheduler::RoundRobin,
            EquilibriumMode::Single,
            default_max_steps(n),
        )?;
        match trace.outcome {
            Outcome::Converged { moves, .. } => Some(moves),
            _ => None,
        }
    } else {
        None
    };
    Ok(ExperimentRow {
        generator: args.family.name().to_string(),
        param,
        n,
        social_cost: social.to_string(),
        max_private_cost: max.to_string(),
        optimum: optimum.map(|o| o.to_string()),
        ratio: ratio(social, optimum.unwrap_or(Cost::integer(n as u64))),
        steps,
    })
}

pub fn csv_text(rows: &[ExperimentRow]) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|e| CliError::invalid(format!("csv: {e}")))?;
    }
    w.into_inner()
        .map_err(|e| CliError::invalid(format!("csv: {e}")))
}

pub fn run(args: &SweepArgs, out: &mut dyn Write) -> CliResult<u8> {
    // Every row is computed before anything is written, so a bad parameter
    // leaves no partial file behind.
    let rows = rows(args)?;
    let bytes = csv_text(&rows)?;
    match &args.csv {
        Some(path) => write_file(path, &bytes)?,
        None => out
            .write_all(&bytes)
            .map_err(|e| CliError::io("<stdout>", e))?,
    }
    Ok(0)
}
