use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;
use swapnet_core::analysis::{
    arrangement_stats, build_max_arrangement, check_bounds, find_t_configuration,
};
use swapnet_core::{
    is_equilibrium, private_costs, social_cost, CostVersion, EquilibriumMode, Error, GameInstance,
    NodeId,
};

use crate::cli::AnalyzeArgs;
use crate::error::{CliError, CliResult};
use crate::instance_file::InstanceFile;

#[derive(Debug, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub version: String,
    pub costs: Vec<String>,
    pub social_cost: String,
    pub max_cost: String,
    /// Per node with at least two interests; `null` pair when none exists.
    pub t_configurations: Option<Vec<TConfig>>,
    pub arrangement: Option<Arrangement>,
    pub mis: Option<usize>,
    pub bounds: Option<Bounds>,
    /// Sections that do not apply to this instance, with the reason.
    pub skipped: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct TConfig {
    pub node: NodeId,
    pub pair: Option<[NodeId; 2]>,
}

#[derive(Debug, Serialize)]
pub struct Arrangement {
    pub nodes: Vec<NodeId>,
    pub costs: Vec<u32>,
    pub total_length: u32,
    pub distinct_edges: usize,
    pub max_edge_multiplicity: usize,
    /// `ceil((c0^2 + c0 - 6) / 4)`, the least number of distinct edges.
    pub distinct_edge_bound: usize,
}

#[derive(Debug, Serialize)]
pub struct Bounds {
    pub d_max: u32,
    pub vacuous: bool,
    pub all_hold: bool,
    pub checks: Vec<Check>,
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub lhs: i64,
    pub rhs: i64,
}

pub fn analyze(inst: &GameInstance) -> CliResult<AnalysisReport> {
    let eq = is_equilibrium(inst, EquilibriumMode::Single)?;
    if let Some(w) = eq.witness {
        return Err(Error::NotInEquilibrium(format!(
            "node {} can improve with {}; run `swapnet check` for details",
            w.step.actor, w.step
        ))
        .into());
    }
    let costs = private_costs(inst)?;
    let mut report = AnalysisReport {
        n: inst.node_count(),
        version: inst.version().to_string(),
        costs: costs.iter().map(|c| c.to_string()).collect(),
        social_cost: social_cost(inst)?.to_string(),
        max_cost: costs
            .iter()
            .max()
            .map(|c| c.to_string())
            .unwrap_or_default(),
        t_configurations: None,
        arrangement: None,
        mis: None,
        bounds: None,
        skipped: Vec::new(),
    };
    if inst.version() != CostVersion::Max {
        report
            .skipped
            .push("structural analysis: MAX-only, skipped".into());
        return Ok(report);
    }
    if !inst.is_tree() {
        report
            .skipped
            .push("structural analysis: tree-only, skipped".into());
        return Ok(report);
    }

    let mut tc = Vec::new();
    for v in 0..inst.node_count() {
        if inst.interests().degree(v) >= 2 {
            let pair = find_t_configuration(inst, v)?.map(|(x, y)| [x, y]);
            tc.push(TConfig { node: v, pair });
        }
    }
    report.t_configurations = Some(tc);

    let bounds = check_bounds(inst)?;
    report.mis = Some(bounds.mis);
    if bounds.vacuous() {
        report
            .skipped
            .push("MAX-arrangement: maximum cost is at most 3, skipped".into());
    } else {
        let arr = build_max_arrangement(inst, None)?;
        let stats = arrangement_stats(inst, &arr)?;
        let c0 = arr.start_cost as usize;
        report.arrangement = Some(Arrangement {
            costs: arr.costs(),
            nodes: arr.nodes,
            total_length: stats.total_length,
            distinct_edges: stats.distinct_edges,
            max_edge_multiplicity: stats.max_edge_multiplicity,
            distinct_edge_bound: (c0 * c0 + c0 - 6).div_ceil(4),
        });
    }
    report.bounds = Some(Bounds {
        d_max: bounds.d_max,
        vacuous: bounds.vacuous(),
        all_hold: bounds.all_hold(),
        checks: bounds
            .checks
            .iter()
            .map(|c| Check {
                name: c.name.clone(),
                holds: c.holds,
                lhs: c.lhs,
                rhs: c.rhs,
            })
            .collect(),
    });
    Ok(report)
}

pub fn render(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n: {}\nversion: {}", r.n, r.version);
    let _ = writeln!(
        s,
        "social cost: {}\nmax private cost: {}",
        r.social_cost, r.max_cost
    );
    let _ = writeln!(s, "private costs: {}", r.costs.join(" "));
    if let Some(tc) = &r.t_configurations {
        let found = tc.iter().filter(|t| t.pair.is_some()).count();
        let _ = writeln!(
            s,
            "T-configurations: {found} of {} nodes with >= 2 interests",
            tc.len()
        );
        for t in tc.iter().filter(|t| t.pair.is_none()) {
            let _ = writeln!(s, "  node {}: none", t.node);
        }
    }
    if let Some(a) = &r.arrangement {
        let nodes: Vec<String> = a.nodes.iter().map(|v| v.to_string()).collect();
        let costs: Vec<String> = a.costs.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "MAX-arrangement: {}", nodes.join(" "));
        let _ = writeln!(s, "  costs: {}", costs.join(" "));
        let _ = writeln!(
            s,
            "  length {}, distinct edges {} (bound {}), max multiplicity {}",
            a.total_length, a.distinct_edges, a.distinct_edge_bound, a.max_edge_multiplicity
        );
    }
    if let Some(m) = r.mis {
        let _ = writeln!(s, "MIS of interest graph: {m}");
    }
    if let Some(b) = &r.bounds {
        let _ = writeln!(s, "bounds (D_max = {}):", b.d_max);
        if b.vacuous {
            let _ = writeln!(s, "  D_max <= 3: all checks vacuous");
        }
        for c in &b.checks {
            let tag = if c.holds { "ok" } else { "FAIL" };
            let _ = writeln!(s, "  [{tag}] {}: {} <= {}", c.name, c.lhs, c.rhs);
        }
    }
    for k in &r.skipped {
        let _ = writeln!(s, "{k}");
    }
    s
}

pub fn run(args: &AnalyzeArgs, out: &mut dyn Write) -> CliResult<u8> {
    let inst = InstanceFile::read(&args.instance)?.to_instance(false)?;
    let report = analyze(&inst)?;
    let text = if args.json {
        serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
    } else {
        render(&report)
    };
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("<stdout>", e))?;
    let failed = report.bounds.as_ref().is_some_and(|b| !b.all_hold);
    Ok(if failed { 1 } else { 0 })
}
