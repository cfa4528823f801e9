use std::io::Write;

use swapnet_core::{is_equilibrium, EquilibriumMode};

use crate::cli::CheckArgs;
use crate::error::{CliError, CliResult};
use crate::instance_file::InstanceFile;

pub fn run(args: &CheckArgs, out: &mut dyn Write) -> CliResult<u8> {
    let mode: EquilibriumMode = args.mode.parse()?;
    let inst = InstanceFile::read(&args.instance)?.to_instance(args.require_tree)?;
    let report = is_equilibrium(&inst, mode)?;
    let mut text = format!(
        "verdict: {}\nmode: {}\n",
        if report.is_equilibrium {
            "equilibrium"
        } else {
            "not an equilibrium"
        },
        report.mode
    );
    if let Some(w) = &report.witness {
        text += &format!(
            "witness: {} (cost {} -> {})\n",
            w.step, w.cost_before, w.cost_after
        );
    }
    if report.caveat {
        text += "caveat: only single swaps were searched; multi-swap deviations may exist\n";
    }
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    Ok(if report.is_equilibrium { 0 } else { 1 })
}
