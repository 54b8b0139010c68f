//! Jet input and classification output.

use gmfkit_core::jet::{birth_death_linear_normal_form, classify_with_split, GmfClass, Jet3};
use gmfkit_core::Error;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicTerm {
    pub idx: [usize; 3],
    pub coeff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetSpec {
    pub dim: usize,
    #[serde(default)]
    pub constant: f64,
    pub linear: Vec<f64>,
    /// Row-major `dim × dim`.
    pub quadratic: Vec<f64>,
    #[serde(default)]
    pub cubic: Vec<CubicTerm>,
}

impl JetSpec {
    pub fn from_jet(jet: &Jet3) -> Self {
        JetSpec {
            dim: jet.dim(),
            constant: jet.constant(),
            linear: jet.linear().to_vec(),
            quadratic: jet.quadratic().to_vec(),
            cubic: jet
                .cubic()
                .iter()
                .map(|(idx, c)| CubicTerm { idx: *idx, coeff: *c })
                .collect(),
        }
    }

    pub fn to_jet(&self) -> Result<Jet3, CliError> {
        let d = self.dim;
        if d == 0 {
            return Err(CliError::Dimension(String::from("dim must be positive")));
        }
        if self.linear.len() != d {
            return Err(CliError::Dimension(format!(
                "linear has {} entries, expected {d}",
                self.linear.len()
            )));
        }
        if self.quadratic.len() != d * d {
            return Err(CliError::Dimension(format!(
                "quadratic has {} entries, expected {}",
                self.quadratic.len(),
                d * d
            )));
        }
        for t in &self.cubic {
            if t.idx.iter().any(|&i| i == 0 || i > d) {
                return Err(CliError::Dimension(format!(
                    "cubic index {:?} outside 1..={d}",
                    t.idx
                )));
            }
        }
        Jet3::new(
            d,
            self.constant,
            self.linear.clone(),
            self.quadratic.clone(),
            self.cubic.iter().map(|t| (t.idx, t.coeff)),
        )
        .map_err(|e| match e {
            Error::DimensionMismatch { .. } => CliError::Dimension(e.to_string()),
            other => CliError::Malformed(other.to_string()),
        })
    }
}

pub fn parse_jet(text: &str) -> Result<Jet3, CliError> {
    let spec: JetSpec = serde_json::from_str(text)?;
    spec.to_jet()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SplitDims {
    pub neg: usize,
    pub zero: usize,
    pub pos: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormalFormOut {
    pub rotation: Vec<f64>,
    pub scaling: Vec<f64>,
    pub reduced: JetSpec,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationOut {
    pub class: &'static str,
    pub index: Option<usize>,
    pub reason: Option<&'static str>,
    pub split: Option<SplitDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormOut>,
}

pub fn classification_json(jet: &Jet3, tol: f64, normal_form: bool) -> Result<ClassificationOut, CliError> {
    let c = classify_with_split(jet, tol)?;
    let reason = match c.class {
        GmfClass::Degenerate(r) => Some(r.as_str()),
        _ => None,
    };
    let nf = match (normal_form, c.class) {
        (true, GmfClass::BirthDeath(_)) => {
            let nf = birth_death_linear_normal_form(jet, tol)?;
            Some(NormalFormOut {
                rotation: nf.rotation,
                scaling: nf.scaling,
                reduced: JetSpec::from_jet(&nf.reduced),
                residual: nf.residual,
            })
        }
        _ => None,
    };
    Ok(ClassificationOut {
        class: c.class.name(),
        index: c.class.index(),
        reason,
        split: c.split.map(|s| SplitDims {
            neg: s.neg_dim,
            zero: s.zero_dim,
            pos: s.pos_dim,
        }),
        normal_form: nf,
    })
}
