//! The `sweep` command: every law over seeded random instances.

use std::fmt::Write as _;

use serde::Serialize;

use gns_core::laws::{run_all, InstanceGenerator, LawReport, Tolerances};

use crate::example::verdict;

/// Aggregate of all law reports for one (seed, instances) run; output is
/// byte-identical across runs with the same arguments.
#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub instances: usize,
    pub pass: bool,
    pub reports: Vec<LawReport>,
}

pub fn run_sweep(
    seed: u64,
    instances: usize,
    overrides: &[(String, f64)],
) -> Result<SweepReport, String> {
    if instances == 0 {
        return Err("instances must be at least 1".to_string());
    }
    let mut tols = Tolerances::default();
    for (law, value) in overrides {
        tols.set(law, *value).map_err(|err| err.to_string())?;
    }
    let gen = InstanceGenerator::new(seed);
    let reports = run_all(&gen, instances, &tols);
    let pass = reports.iter().all(|report| report.pass);
    Ok(SweepReport {
        seed,
        instances,
        pass,
        reports,
    })
}

impl SweepReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "law sweep: seed {}, {} instances per law",
            self.seed, self.instances
        );
        for report in &self.reports {
            render_law(&mut out, report, 1);
        }
        let _ = writeln!(out, "result: {}", verdict(self.pass));
        out
    }
}

fn render_law(out: &mut String, report: &LawReport, depth: usize) {
    let indent = "  ".repeat(depth);
    let _ = writeln!(
        out,
        "{indent}{:<28} max violation {:.3e}  {}",
        report.law_id,
        report.max_violation,
        verdict(report.pass)
    );
    for witness in &report.witnesses {
        let _ = writeln!(
            out,
            "{indent}  witness: instance {} ({}), violation {:.3e}",
            witness.instance, witness.context, witness.violation
        );
    }
    for sub in &report.sub_reports {
        render_law(out, sub, depth + 1);
    }
}
