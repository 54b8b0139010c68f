//! Generalized Morse functions: jet classification, birth–death tracing
//! in polynomial families, and mod-2 Poincaré series of the associated
//! Thom spectra and homotopy colimits.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod char_class;
pub mod error;
pub mod f2;
pub mod family;
pub mod jet;
pub mod linalg;
pub mod moduli;
pub mod series;

pub use error::Error;
pub use family::{
    check_family_axioms, fiber_critical_points, fiber_jet3, trace_birth_death, AxiomReport,
    AxiomVerdict, BirthDeathEvent, BoxDomain, CriticalPoint, ParamWindow, PolyFamily,
    SearchSettings, Trace,
};
pub use jet::{
    birth_death_linear_normal_form, classify, Classification, DegenerateReason, GmfClass, Jet3,
    LinearNormalForm,
};
pub use moduli::{CheckOutcome, Provenance, SpectrumSeries, Structure, Verdict};
pub use series::PoincareSeries;
