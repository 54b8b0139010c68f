//! Series output.

use gmfkit_core::moduli::{MtGmf, Provenance};
use gmfkit_core::series::PoincareSeries;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;

fn coeff_value(c: &BigUint) -> Value {
    match c.to_u64() {
        Some(v) => Value::from(v),
        None => Value::from(c.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bounds {
    pub min_degree: i64,
    pub lower: Vec<Value>,
    pub upper: Vec<Value>,
    pub provenance: &'static str,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesOut {
    pub object: String,
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub min_degree: i64,
    /// Degrees `min_degree..=truncation`; values past `u64` are strings.
    pub coefficients: Vec<Value>,
    pub truncation: i64,
    pub provenance: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
}

impl SeriesOut {
    pub fn new(object: &str, d: u32, n: Option<u32>, series: &PoincareSeries, provenance: Provenance) -> Self {
        SeriesOut {
            object: object.to_string(),
            d,
            n,
            min_degree: series.min_degree(),
            coefficients: series.coeffs().iter().map(coeff_value).collect(),
            truncation: series.truncation(),
            provenance: provenance.as_str(),
            bounds: None,
        }
    }

    pub fn mtgmf(d: u32, m: &MtGmf) -> Self {
        let mut out = SeriesOut::new("mtgmf", d, None, &m.split.series, m.split.provenance);
        let lo = m.lower.min_degree().min(m.upper.min_degree());
        let n = m.upper.truncation();
        out.bounds = Some(Bounds {
            min_degree: lo,
            lower: (lo..=n).map(|k| coeff_value(&m.lower.coeff(k))).collect(),
            upper: (lo..=n).map(|k| coeff_value(&m.upper.coeff(k))).collect(),
            provenance: Provenance::Interval.as_str(),
        });
        out
    }
}
