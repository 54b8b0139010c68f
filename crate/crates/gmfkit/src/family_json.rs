//! Family input and event CSV output.

use std::fmt::Write as _;

use gmfkit_core::family::{AxiomReport, PolyFamily, Term, Trace};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub powers: Vec<u32>,
    pub coeff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub param_dim: usize,
    pub fiber_dim: usize,
    pub terms: Vec<TermSpec>,
}

impl FamilySpec {
    pub fn from_family(f: &PolyFamily) -> Self {
        FamilySpec {
            param_dim: f.param_dim(),
            fiber_dim: f.fiber_dim(),
            terms: f
                .terms()
                .iter()
                .map(|t| TermSpec {
                    powers: t.powers.clone(),
                    coeff: t.coeff,
                })
                .collect(),
        }
    }

    pub fn to_family(&self) -> Result<PolyFamily, CliError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                powers: t.powers.clone(),
                coeff: t.coeff,
            })
            .collect();
        PolyFamily::new(self.param_dim, self.fiber_dim, terms).map_err(|e| CliError::Malformed(e.to_string()))
    }
}

pub fn parse_family(text: &str) -> Result<PolyFamily, CliError> {
    let spec: FamilySpec = serde_json::from_str(text)?;
    spec.to_family()
}

pub fn preset(name: &str) -> Result<PolyFamily, CliError> {
    PolyFamily::preset(name).ok_or_else(|| {
        CliError::Malformed(format!(
            "unknown preset {name:?}; known: cusp, swallowtail, suspended-cusp-<i>, suspended-cusp-<i>-<d>"
        ))
    })
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Event rows `t_star, x_star_1.., index, det_hessian`, followed by `#`
/// comment lines for degenerate points, warnings and a summary.
pub fn events_csv(fiber_dim: usize, trace: &Trace, report: &AxiomReport) -> String {
    let mut out = String::from("t_star");
    for i in 1..=fiber_dim {
        let _ = write!(out, ",x_star_{i}");
    }
    out.push_str(",index,det_hessian\n");
    for e in &trace.events {
        out.push_str(&num(e.t_star));
        for x in &e.x_star {
            out.push(',');
            out.push_str(&num(*x));
        }
        let _ = writeln!(out, ",{},{}", e.index, num(e.det_hessian_at_event));
    }
    for p in &report.degenerate {
        let xs: Vec<String> = p.x.iter().map(|v| num(*v)).collect();
        let _ = writeln!(
            out,
            "# degenerate t={} x=[{}] reason={}",
            num(p.t),
            xs.join(","),
            p.reason.as_str()
        );
    }
    for w in &trace.warnings {
        let _ = writeln!(out, "# warning {w:?}");
    }
    let _ = writeln!(
        out,
        "# summary events={} degenerate={} warnings={} proper={} embedding={} submersion={} gmf={}",
        trace.events.len(),
        report.degenerate.len(),
        trace.warnings.len(),
        report.proper.verdict.as_str(),
        report.embedding.verdict.as_str(),
        report.submersion.verdict.as_str(),
        report.gmf.verdict.as_str(),
    );
    out
}
