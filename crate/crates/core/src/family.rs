//! Polynomial families `f(t, x)` over a parameter space `R^k` (`k ≤ 1` in
//! practice) with fibers `R^d`: fiber jets, critical points, birth–death
//! tracing and sampled checks of the family axioms.
//!
//! The projection to the parameter space is the coordinate projection, so
//! it is a submersion by construction.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::jet::{classify_with_split, DegenerateReason, GmfClass, Jet3};
use crate::linalg;

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    /// Exponents of `(t_1..t_k, x_1..x_d)`.
    pub powers: Vec<u32>,
    pub coeff: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolyFamily {
    param_dim: usize,
    fiber_dim: usize,
    terms: Vec<Term>,
}

fn powu(x: f64, n: u32) -> f64 {
    let mut r = 1.0;
    for _ in 0..n {
        r *= x;
    }
    r
}

fn falling(p: u32, a: u32) -> f64 {
    (0..a).map(|i| (p - i) as f64).product()
}

impl PolyFamily {
    pub fn new(param_dim: usize, fiber_dim: usize, terms: Vec<Term>) -> Result<Self, Error> {
        if fiber_dim == 0 {
            return Err(Error::InvalidArgument("fiber dimension must be positive"));
        }
        if terms.is_empty() {
            return Err(Error::InvalidArgument("family needs at least one term"));
        }
        for t in &terms {
            if t.powers.len() != param_dim + fiber_dim {
                return Err(Error::DimensionMismatch {
                    expected: param_dim + fiber_dim,
                    found: t.powers.len(),
                });
            }
            if !t.coeff.is_finite() {
                return Err(Error::NonFinite);
            }
        }
        Ok(PolyFamily {
            param_dim,
            fiber_dim,
            terms,
        })
    }

    fn from_list(param_dim: usize, fiber_dim: usize, list: &[(&[u32], f64)]) -> Self {
        let terms = list
            .iter()
            .map(|(p, c)| Term {
                powers: p.to_vec(),
                coeff: *c,
            })
            .collect();
        PolyFamily::new(param_dim, fiber_dim, terms).expect("well-formed preset")
    }

    /// `x³ - t x`.
    pub fn cusp() -> Self {
        Self::from_list(1, 1, &[(&[0, 3], 1.0), (&[1, 1], -1.0)])
    }

    /// `x⁴ - t x`.
    pub fn swallowtail() -> Self {
        Self::from_list(1, 1, &[(&[0, 4], 1.0), (&[1, 1], -1.0)])
    }

    /// `x³ - t x - Σ_{j≤neg} y_j² + Σ_{j>neg} y_j²` on `R^fiber_dim`.
    pub fn suspended_cusp(neg: usize, fiber_dim: usize) -> Result<Self, Error> {
        if fiber_dim < neg + 1 {
            return Err(Error::InvalidArgument(
                "suspended cusp needs fiber_dim >= neg + 1",
            ));
        }
        let n = fiber_dim + 1;
        let mut terms = Vec::new();
        let mut p = vec![0; n];
        p[1] = 3;
        terms.push(Term {
            powers: p,
            coeff: 1.0,
        });
        let mut p = vec![0; n];
        p[0] = 1;
        p[1] = 1;
        terms.push(Term {
            powers: p,
            coeff: -1.0,
        });
        for j in 1..fiber_dim {
            let mut p = vec![0; n];
            p[1 + j] = 2;
            terms.push(Term {
                powers: p,
                coeff: if j <= neg { -1.0 } else { 1.0 },
            });
        }
        PolyFamily::new(1, fiber_dim, terms)
    }

    /// Named presets: `cusp`, `swallowtail`, `suspended-cusp-<i>` (fiber
    /// dimension `i+1`) and `suspended-cusp-<i>-<d>`.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "cusp" => return Some(Self::cusp()),
            "swallowtail" => return Some(Self::swallowtail()),
            _ => {}
        }
        let rest = name.strip_prefix("suspended-cusp-")?;
        let mut parts = rest.split('-');
        let neg: usize = parts.next()?.parse().ok()?;
        let dim: usize = match parts.next() {
            Some(d) => d.parse().ok()?,
            None => neg + 1,
        };
        if parts.next().is_some() {
            return None;
        }
        Self::suspended_cusp(neg, dim).ok()
    }

    pub fn param_dim(&self) -> usize {
        self.param_dim
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    fn check(&self, t: &[f64], x: &[f64]) -> Result<(), Error> {
        if t.len() != self.param_dim {
            return Err(Error::DimensionMismatch {
                expected: self.param_dim,
                found: t.len(),
            });
        }
        if x.len() != self.fiber_dim {
            return Err(Error::DimensionMismatch {
                expected: self.fiber_dim,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Mixed partial derivative with multi-index `alpha` over `(t, x)`,
    /// by exact differentiation of each monomial.
    pub fn partial(&self, t: &[f64], x: &[f64], alpha: &[u32]) -> f64 {
        self.partial_by(t, x, |var| alpha[var])
    }

    fn partial_by(&self, t: &[f64], x: &[f64], order: impl Fn(usize) -> u32) -> f64 {
        let k = self.param_dim;
        let mut s = 0.0;
        'terms: for term in &self.terms {
            let mut v = term.coeff;
            for (var, &p) in term.powers.iter().enumerate() {
                let a = order(var);
                if p < a {
                    continue 'terms;
                }
                if p == 0 {
                    continue;
                }
                let base = if var < k { t[var] } else { x[var - k] };
                v *= falling(p, a) * powu(base, p - a);
            }
            s += v;
        }
        s
    }

    /// Derivative in the fiber directions `fiber` (repeats allowed) and
    /// optionally once in parameter `param`.
    fn partial_at(&self, t: &[f64], x: &[f64], fiber: &[usize], param: Option<usize>) -> f64 {
        let k = self.param_dim;
        self.partial_by(t, x, |var| {
            if var < k {
                (param == Some(var)) as u32
            } else {
                fiber.iter().filter(|&&i| i + k == var).count() as u32
            }
        })
    }

    pub fn value(&self, t: &[f64], x: &[f64]) -> f64 {
        self.partial_by(t, x, |_| 0)
    }

    pub fn gradient(&self, t: &[f64], x: &[f64]) -> Vec<f64> {
        (0..self.fiber_dim)
            .map(|i| self.partial_at(t, x, &[i], None))
            .collect()
    }

    /// Row-major fiber Hessian.
    pub fn hessian(&self, t: &[f64], x: &[f64]) -> Vec<f64> {
        let d = self.fiber_dim;
        let mut h = vec![0.0; d * d];
        for i in 0..d {
            for j in i..d {
                let v = self.partial_at(t, x, &[i, j], None);
                h[i * d + j] = v;
                h[j * d + i] = v;
            }
        }
        h
    }
}

/// Degree-≤3 Taylor jet of `h ↦ f_t(x + h)`.
pub fn fiber_jet3(family: &PolyFamily, t: &[f64], x: &[f64]) -> Result<Jet3, Error> {
    family.check(t, x)?;
    let d = family.fiber_dim;
    let constant = family.value(t, x);
    let linear = family.gradient(t, x);
    let quadratic: Vec<f64> = family.hessian(t, x).iter().map(|v| 0.5 * v).collect();
    let mut cubic = Vec::new();
    for i in 0..d {
        for j in i..d {
            for k in j..d {
                let c = family.partial_at(t, x, &[i, j, k], None) / 6.0;
                if c != 0.0 {
                    cubic.push(([i + 1, j + 1, k + 1], c));
                }
            }
        }
    }
    Jet3::new(d, constant, linear, quadratic, cubic)
}

/// Axis-aligned box in the fiber.
#[derive(Clone, Debug, PartialEq)]
pub struct BoxDomain {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoxDomain {
    pub fn cube(d: usize, lo: f64, hi: f64) -> Self {
        BoxDomain {
            lo: vec![lo; d],
            hi: vec![hi; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter()
            .zip(self.lo.iter().zip(&self.hi))
            .all(|(v, (l, h))| *v >= l - 1e-12 && *v <= h + 1e-12)
    }

    fn diameter(&self) -> f64 {
        linalg::norm2(
            &self
                .hi
                .iter()
                .zip(&self.lo)
                .map(|(h, l)| h - l)
                .collect::<Vec<_>>(),
        )
    }

    fn validate(&self, d: usize) -> Result<(), Error> {
        if self.lo.len() != d || self.hi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: self.lo.len(),
            });
        }
        if self.lo.iter().zip(&self.hi).any(|(l, h)| !(l < h)) {
            return Err(Error::InvalidArgument("box must have lo < hi on every axis"));
        }
        Ok(())
    }

    /// `per_axis^d` grid points including the corners.
    pub fn grid(&self, per_axis: usize) -> Vec<Vec<f64>> {
        let d = self.dim();
        let mut out = Vec::new();
        let mut idx = vec![0usize; d];
        loop {
            out.push(
                (0..d)
                    .map(|a| {
                        self.lo[a]
                            + (self.hi[a] - self.lo[a]) * idx[a] as f64 / (per_axis - 1) as f64
                    })
                    .collect(),
            );
            let mut a = 0;
            while a < d {
                idx[a] += 1;
                if idx[a] < per_axis {
                    break;
                }
                idx[a] = 0;
                a += 1;
            }
            if a == d {
                return out;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchSettings {
    pub grid_per_axis: usize,
    pub newton_tol: f64,
    pub max_iter: usize,
    /// Tolerance handed to the jet classifier.
    pub class_tol: f64,
}

impl Default for SearchSettings {
    fn default() -> Self {
        SearchSettings {
            grid_per_axis: 5,
            newton_tol: 1e-10,
            max_iter: 100,
            class_tol: crate::jet::DEFAULT_TOL,
        }
    }
}

impl SearchSettings {
    pub fn dedup_radius(&self) -> f64 {
        10.0 * self.newton_tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPoint {
    pub params: Vec<f64>,
    pub x: Vec<f64>,
    pub value: f64,
    pub class: GmfClass,
    pub grad_norm: f64,
    /// Smallest-magnitude eigenvalue of the jet's quadratic part, signed.
    pub min_eigenvalue: f64,
}

impl CriticalPoint {
    pub fn t(&self) -> f64 {
        self.params.first().copied().unwrap_or(0.0)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalSearch {
    pub points: Vec<CriticalPoint>,
    /// Seeds that did not converge inside the box.
    pub dropped_seeds: usize,
}

const STALL_WINDOW: usize = 20;
const POLISH_STEPS: usize = 8;

/// Newton on `∇f_t = 0`. Stops when the step reaches rounding level, at
/// most `POLISH_STEPS` iterations after the gradient first meets the
/// tolerance, or when the best gradient norm has not halved within
/// `STALL_WINDOW` iterations.
pub fn newton_critical(
    family: &PolyFamily,
    t: &[f64],
    x0: &[f64],
    settings: &SearchSettings,
    bounds: &BoxDomain,
) -> Option<(Vec<f64>, f64)> {
    let d = family.fiber_dim;
    let limit = 10.0 * (bounds.diameter() + linalg::norm2(&bounds.lo).max(linalg::norm2(&bounds.hi)));
    let mut x = x0.to_vec();
    let mut best = f64::INFINITY;
    let mut best_at = 0;
    let mut converged_at = None;
    for iter in 0..settings.max_iter {
        let g = family.gradient(t, &x);
        let gn = linalg::norm2(&g);
        if gn == 0.0 {
            break;
        }
        if gn <= settings.newton_tol {
            let first = *converged_at.get_or_insert(iter);
            if iter - first >= POLISH_STEPS {
                break;
            }
        } else if converged_at.is_none() && iter - best_at >= STALL_WINDOW {
            return None;
        }
        if gn <= 0.5 * best {
            best = gn;
            best_at = iter;
        }
        let h = family.hessian(t, &x);
        let neg: Vec<f64> = g.iter().map(|v| -v).collect();
        let Some(step) = linalg::solve(&h, &neg, d, 1e-300) else {
            break;
        };
        if step.iter().any(|v| !v.is_finite()) {
            return None;
        }
        for (xi, s) in x.iter_mut().zip(&step) {
            *xi += s;
        }
        if linalg::norm2(&x) > limit {
            return None;
        }
        if linalg::norm2(&step) <= 1e-15 * (1.0 + linalg::norm2(&x)) {
            break;
        }
    }
    let gn = linalg::norm2(&family.gradient(t, &x));
    (gn <= settings.newton_tol).then_some((x, gn))
}

fn classify_point(
    family: &PolyFamily,
    t: &[f64],
    x: Vec<f64>,
    grad_norm: f64,
    settings: &SearchSettings,
) -> Result<CriticalPoint, Error> {
    let jet = fiber_jet3(family, t, &x)?;
    let c = classify_with_split(&jet, settings.class_tol)?;
    let split = c.split.expect("split always computed");
    Ok(CriticalPoint {
        params: t.to_vec(),
        value: jet.constant(),
        x,
        class: c.class,
        grad_norm,
        min_eigenvalue: split.smallest_magnitude(),
    })
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}

/// Critical points of `f_t` in the box, from Newton runs seeded on a grid.
pub fn fiber_critical_points(
    family: &PolyFamily,
    t: &[f64],
    bounds: &BoxDomain,
    settings: &SearchSettings,
) -> Result<CriticalSearch, Error> {
    let d = family.fiber_dim;
    family.check(t, &vec![0.0; d])?;
    bounds.validate(d)?;
    if settings.grid_per_axis < 2 {
        return Err(Error::InvalidArgument("grid_per_axis must be at least 2"));
    }
    let mut found: Vec<(Vec<f64>, f64)> = Vec::new();
    let mut dropped = 0;
    for seed in bounds.grid(settings.grid_per_axis) {
        match newton_critical(family, t, &seed, settings, bounds) {
            Some((x, gn)) if bounds.contains(&x) => {
                if !found
                    .iter()
                    .any(|(y, _)| dist(y, &x) <= settings.dedup_radius())
                {
                    found.push((x, gn));
                }
            }
            _ => dropped += 1,
        }
    }
    found.sort_by(|a, b| {
        a.0.iter()
            .zip(&b.0)
            .map(|(u, v)| u.partial_cmp(v).unwrap_or(core::cmp::Ordering::Equal))
            .find(|o| o.is_ne())
            .unwrap_or(core::cmp::Ordering::Equal)
    });
    let points = found
        .into_iter()
        .map(|(x, gn)| classify_point(family, t, x, gn, settings))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CriticalSearch {
        points,
        dropped_seeds: dropped,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct BirthDeathEvent {
    pub t_star: f64,
    pub x_star: Vec<f64>,
    pub index: usize,
    pub det_hessian_at_event: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DegeneratePoint {
    pub t: f64,
    pub x: Vec<f64>,
    pub reason: DegenerateReason,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TraceWarning {
    /// Two listed critical points lie within the matching radius of a
    /// continued track.
    AmbiguousMatch {
        t: f64,
        first: Vec<f64>,
        second: Vec<f64>,
    },
    /// A candidate interval whose refinement did not reach a fold point.
    RefinementFailed { t_lo: f64, t_hi: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceSample {
    pub t: f64,
    pub points: Vec<CriticalPoint>,
    pub dropped_seeds: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trace {
    pub events: Vec<BirthDeathEvent>,
    pub degenerate: Vec<DegeneratePoint>,
    pub warnings: Vec<TraceWarning>,
    pub samples: Vec<TraceSample>,
}

impl Trace {
    /// No degenerate critical point was met.
    pub fn is_gmf(&self) -> bool {
        self.degenerate.is_empty()
    }
}

struct Candidate {
    x: Vec<f64>,
    t: f64,
    t_lo: f64,
    t_hi: f64,
    /// Endpoints of a sign change of the smallest eigenvalue along a track.
    bracket: Option<(CriticalPoint, CriticalPoint)>,
    required: bool,
}

/// Newton on the fold system `∇_x f = 0`, `H v = 0`, `c·v = 1` in the
/// unknowns `(x, v, t)`.
fn fold_newton(
    family: &PolyFamily,
    x0: &[f64],
    t0: f64,
    max_iter: usize,
) -> Option<(Vec<f64>, f64)> {
    let d = family.fiber_dim;
    let n = 2 * d + 1;
    let h0 = family.hessian(&[t0], x0);
    let eig = linalg::symmetric_eigen(&h0, d).ok()?;
    let j_min = (0..d)
        .min_by(|&a, &b| {
            libm::fabs(eig.eigenvalues[a])
                .partial_cmp(&libm::fabs(eig.eigenvalues[b]))
                .unwrap_or(core::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let c: Vec<f64> = (0..d).map(|i| eig.eigenvectors[i * d + j_min]).collect();
    let mut z: Vec<f64> = x0.iter().copied().chain(c.iter().copied()).chain([t0]).collect();
    for _ in 0..max_iter {
        let x = &z[..d];
        let v = &z[d..2 * d];
        let t = [z[2 * d]];
        let grad = family.gradient(&t, x);
        let h = family.hessian(&t, x);
        let mut g = vec![0.0; n];
        let mut jac = vec![0.0; n * n];
        for i in 0..d {
            g[i] = grad[i];
            for j in 0..d {
                jac[i * n + j] = h[i * d + j];
            }
            jac[i * n + 2 * d] = family.partial_at(&t, x, &[i], Some(0));
            let row = d + i;
            g[row] = (0..d).map(|j| h[i * d + j] * v[j]).sum();
            for m in 0..d {
                jac[row * n + m] = (0..d)
                    .map(|j| family.partial_at(&t, x, &[i, j, m], None) * v[j])
                    .sum();
            }
            for j in 0..d {
                jac[row * n + d + j] = h[i * d + j];
            }
            jac[row * n + 2 * d] = (0..d)
                .map(|j| family.partial_at(&t, x, &[i, j], Some(0)) * v[j])
                .sum();
        }
        g[2 * d] = c.iter().zip(v).map(|(a, b)| a * b).sum::<f64>() - 1.0;
        for j in 0..d {
            jac[2 * d * n + d + j] = c[j];
        }
        if g.iter().all(|r| *r == 0.0) {
            break;
        }
        let neg: Vec<f64> = g.iter().map(|r| -r).collect();
        let step = linalg::solve(&jac, &neg, n, 1e-300)?;
        if step.iter().any(|s| !s.is_finite()) {
            return None;
        }
        for (zi, s) in z.iter_mut().zip(&step) {
            *zi += s;
        }
        let zmax = z.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
        let smax = step.iter().fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
        if smax <= 1e-15 * (1.0 + zmax) {
            break;
        }
    }
    let x = z[..d].to_vec();
    let t = z[2 * d];
    let grad = linalg::norm2(&family.gradient(&[t], &x));
    let hv = linalg::matvec(&family.hessian(&[t], &x), &z[d..2 * d], d);
    (grad <= 1e-9 && linalg::norm2(&hv) <= 1e-9).then_some((x, t))
}

fn bisect_bracket(
    family: &PolyFamily,
    lo: &CriticalPoint,
    hi: &CriticalPoint,
    t_tol: f64,
    settings: &SearchSettings,
    bounds: &BoxDomain,
) -> Option<(Vec<f64>, f64)> {
    let (mut a, mut b) = (lo.clone(), hi.clone());
    while b.t() - a.t() > t_tol {
        let tm = 0.5 * (a.t() + b.t());
        let (x, gn) = newton_critical(family, &[tm], &a.x, settings, bounds)?;
        let m = classify_point(family, &[tm], x, gn, settings).ok()?;
        if (m.min_eigenvalue < 0.0) == (a.min_eigenvalue < 0.0) {
            a = m;
        } else {
            b = m;
        }
    }
    let t = a.t();
    Some((a.x, t))
}

/// Birth–death events of a one-parameter family on `[t0, t1]`.
///
/// Critical points are sampled at `steps` equally spaced parameter values
/// and continued from one sample to the next. Intervals where a track is
/// born or dies, where the smallest Hessian eigenvalue changes sign, or
/// where its magnitude has a local minimum are refined by Newton on the
/// fold system (falling back to bisection on the eigenvalue sign), and the
/// refined point is classified from its fiber jet.
pub fn trace_birth_death(
    family: &PolyFamily,
    t0: f64,
    t1: f64,
    steps: usize,
    bounds: &BoxDomain,
    settings: &SearchSettings,
) -> Result<Trace, Error> {
    if family.param_dim != 1 {
        return Err(Error::InvalidArgument("tracing needs a one-parameter family"));
    }
    if !(t0 < t1) || steps < 2 {
        return Err(Error::InvalidArgument("need t0 < t1 and steps >= 2"));
    }
    bounds.validate(family.fiber_dim)?;
    let dt = (t1 - t0) / (steps - 1) as f64;
    let ts: Vec<f64> = (0..steps).map(|k| t0 + dt * k as f64).collect();
    let mut samples = Vec::with_capacity(steps);
    for &t in &ts {
        let s = fiber_critical_points(family, &[t], bounds, settings)?;
        samples.push(TraceSample {
            t,
            points: s.points,
            dropped_seeds: s.dropped_seeds,
        });
    }

    let mut warnings = Vec::new();
    let mut candidates: Vec<Candidate> = Vec::new();
    let mut degenerate = Vec::new();
    for s in &samples {
        for p in &s.points {
            if let GmfClass::Degenerate(reason) = p.class {
                degenerate.push(DegeneratePoint {
                    t: s.t,
                    x: p.x.clone(),
                    reason,
                });
            }
            if let GmfClass::BirthDeath(_) = p.class {
                candidates.push(Candidate {
                    x: p.x.clone(),
                    t: s.t,
                    t_lo: s.t - dt,
                    t_hi: s.t + dt,
                    bracket: None,
                    required: true,
                });
            }
        }
    }

    // successor[k][i]: index in sample k+1 continuing point i of sample k
    let mut predecessor: Vec<Vec<Option<usize>>> =
        samples.iter().map(|s| vec![None; s.points.len()]).collect();
    let mut successor: Vec<Vec<Option<usize>>> =
        samples.iter().map(|s| vec![None; s.points.len()]).collect();
    let radius = settings.dedup_radius();
    for k in 0..steps - 1 {
        let (cur, next) = (&samples[k], &samples[k + 1]);
        let mut claimed = vec![false; next.points.len()];
        for (i, p) in cur.points.iter().enumerate() {
            let cont = newton_critical(family, &[next.t], &p.x, settings, bounds)
                .filter(|(x, _)| bounds.contains(x));
            let mut hits: Vec<usize> = match &cont {
                Some((x, _)) => (0..next.points.len())
                    .filter(|&j| dist(&next.points[j].x, x) <= radius)
                    .collect(),
                None => Vec::new(),
            };
            if hits.len() > 1 {
                warnings.push(TraceWarning::AmbiguousMatch {
                    t: next.t,
                    first: next.points[hits[0]].x.clone(),
                    second: next.points[hits[1]].x.clone(),
                });
                let x = &cont.as_ref().expect("hits imply a continuation").0;
                hits.sort_by(|&a, &b| {
                    dist(&next.points[a].x, x)
                        .partial_cmp(&dist(&next.points[b].x, x))
                        .unwrap_or(core::cmp::Ordering::Equal)
                });
            }
            match hits.first() {
                Some(&j) if !claimed[j] => {
                    claimed[j] = true;
                    successor[k][i] = Some(j);
                    predecessor[k + 1][j] = Some(i);
                    let q = &next.points[j];
                    if (p.min_eigenvalue < 0.0) != (q.min_eigenvalue < 0.0) {
                        candidates.push(Candidate {
                            x: p.x.clone(),
                            t: cur.t,
                            t_lo: cur.t,
                            t_hi: next.t,
                            bracket: Some((p.clone(), q.clone())),
                            required: true,
                        });
                    }
                }
                _ => candidates.push(Candidate {
                    x: p.x.clone(),
                    t: cur.t,
                    t_lo: cur.t,
                    t_hi: next.t,
                    bracket: None,
                    required: true,
                }),
            }
        }
        for (j, q) in next.points.iter().enumerate() {
            if !claimed[j] {
                candidates.push(Candidate {
                    x: q.x.clone(),
                    t: next.t,
                    t_lo: cur.t,
                    t_hi: next.t,
                    bracket: None,
                    required: true,
                });
            }
        }
    }
    for k in 1..steps - 1 {
        for (i, p) in samples[k].points.iter().enumerate() {
            let (Some(a), Some(b)) = (predecessor[k][i], successor[k][i]) else {
                continue;
            };
            let before = libm::fabs(samples[k - 1].points[a].min_eigenvalue);
            let after = libm::fabs(samples[k + 1].points[b].min_eigenvalue);
            let here = libm::fabs(p.min_eigenvalue);
            if here < before && here <= after {
                candidates.push(Candidate {
                    x: p.x.clone(),
                    t: samples[k].t,
                    t_lo: samples[k - 1].t,
                    t_hi: samples[k + 1].t,
                    bracket: None,
                    required: false,
                });
            }
        }
    }

    let t_tol = 1e-10 * (t1 - t0);
    let fold_iters = 4 * settings.max_iter.max(50);
    let mut events: Vec<BirthDeathEvent> = Vec::new();
    for cand in candidates {
        let refined = fold_newton(family, &cand.x, cand.t, fold_iters)
            .filter(|(x, t)| {
                *t >= cand.t_lo - dt
                    && *t <= cand.t_hi + dt
                    && *t >= t0 - t_tol
                    && *t <= t1 + t_tol
                    && bounds.contains(x)
            })
            .or_else(|| {
                let (lo, hi) = cand.bracket.as_ref()?;
                bisect_bracket(family, lo, hi, t_tol, settings, bounds)
            });
        let Some((x, t)) = refined else {
            if cand.required {
                warnings.push(TraceWarning::RefinementFailed {
                    t_lo: cand.t_lo,
                    t_hi: cand.t_hi,
                });
            }
            continue;
        };
        let jet = fiber_jet3(family, &[t], &x)?;
        match classify_with_split(&jet, settings.class_tol)?.class {
            GmfClass::BirthDeath(index) => {
                let hess = family.hessian(&[t], &x);
                let ev = BirthDeathEvent {
                    t_star: t,
                    det_hessian_at_event: linalg::determinant(&hess, family.fiber_dim),
                    x_star: x,
                    index,
                };
                if !events.iter().any(|e| same_place(e.t_star, &e.x_star, ev.t_star, &ev.x_star, t1 - t0)) {
                    events.push(ev);
                }
            }
            GmfClass::Degenerate(reason) => degenerate.push(DegeneratePoint { t, x, reason }),
            _ => {}
        }
    }
    events.sort_by(|a, b| a.t_star.partial_cmp(&b.t_star).unwrap_or(core::cmp::Ordering::Equal));
    let mut unique: Vec<DegeneratePoint> = Vec::new();
    // the refined fold point comes last; prefer it over raw samples
    for p in degenerate.into_iter().rev() {
        if !unique.iter().any(|u| same_place(u.t, &u.x, p.t, &p.x, t1 - t0)
            || (libm::fabs(u.t - p.t) <= dt && dist(&u.x, &p.x) <= 1e-3))
        {
            unique.push(p);
        }
    }
    unique.sort_by(|a, b| a.t.partial_cmp(&b.t).unwrap_or(core::cmp::Ordering::Equal));
    Ok(Trace {
        events,
        degenerate: unique,
        warnings,
        samples,
    })
}

fn same_place(t: f64, x: &[f64], s: f64, y: &[f64], range: f64) -> bool {
    libm::fabs(t - s) <= 1e-8 * range.max(1.0) && dist(x, y) <= 1e-6
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomVerdict {
    Pass,
    Fail,
    NotChecked,
}

impl AxiomVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            AxiomVerdict::Pass => "Pass",
            AxiomVerdict::Fail => "Fail",
            AxiomVerdict::NotChecked => "NotChecked",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AxiomCheck {
    pub verdict: AxiomVerdict,
    pub note: String,
}

/// Finite-sample verdicts for the four family axioms.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomReport {
    /// (i) properness, via boundary dominance on the box.
    pub proper: AxiomCheck,
    /// (ii) embedding; graphs over the identity chart embed.
    pub embedding: AxiomCheck,
    /// (iii) submersion; the coordinate projection.
    pub submersion: AxiomCheck,
    /// (iv) every fiber function is generalized Morse.
    pub gmf: AxiomCheck,
    pub degenerate: Vec<DegeneratePoint>,
    pub trace: Option<Trace>,
}

/// Parameter window for [`check_family_axioms`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamWindow {
    pub t0: f64,
    pub t1: f64,
    pub steps: usize,
}

const BOUNDARY_SAMPLES_PER_AXIS: usize = 9;

fn boundary_minimum(family: &PolyFamily, t: &[f64], bounds: &BoxDomain) -> f64 {
    let d = bounds.dim();
    let mut best = f64::INFINITY;
    for x in bounds.grid(BOUNDARY_SAMPLES_PER_AXIS) {
        let on_face = (0..d).any(|a| x[a] == bounds.lo[a] || x[a] == bounds.hi[a]);
        if on_face {
            best = best.min(family.value(t, &x));
        }
    }
    best
}

pub fn check_family_axioms(
    family: &PolyFamily,
    window: Option<ParamWindow>,
    bounds: &BoxDomain,
    settings: &SearchSettings,
) -> Result<AxiomReport, Error> {
    let (samples, degenerate, trace) = match (family.param_dim, window) {
        (0, _) => {
            let s = fiber_critical_points(family, &[], bounds, settings)?;
            let degenerate: Vec<DegeneratePoint> = s
                .points
                .iter()
                .filter_map(|p| match p.class {
                    GmfClass::Degenerate(reason) => Some(DegeneratePoint {
                        t: 0.0,
                        x: p.x.clone(),
                        reason,
                    }),
                    _ => None,
                })
                .collect();
            let sample = TraceSample {
                t: 0.0,
                points: s.points,
                dropped_seeds: s.dropped_seeds,
            };
            (vec![sample], degenerate, None)
        }
        (1, Some(w)) => {
            let tr = trace_birth_death(family, w.t0, w.t1, w.steps, bounds, settings)?;
            (tr.samples.clone(), tr.degenerate.clone(), Some(tr))
        }
        (1, None) => {
            return Err(Error::InvalidArgument(
                "one-parameter families need a parameter window",
            ))
        }
        _ => {
            return Err(Error::InvalidArgument(
                "only families with at most one parameter are checked",
            ))
        }
    };

    let mut proper_fail = None;
    for s in &samples {
        let t: Vec<f64> = if family.param_dim == 0 { Vec::new() } else { vec![s.t] };
        let bmin = boundary_minimum(family, &t, bounds);
        if let Some(p) = s.points.iter().find(|p| p.value >= bmin) {
            proper_fail = Some(format!(
                "t = {}: critical value {} at {:?} not below boundary minimum {}",
                s.t, p.value, p.x, bmin
            ));
            break;
        }
    }
    let proper = match proper_fail {
        None => AxiomCheck {
            verdict: AxiomVerdict::Pass,
            note: String::from("boundary minimum exceeds every sampled critical value"),
        },
        Some(note) => AxiomCheck {
            verdict: AxiomVerdict::Fail,
            note,
        },
    };
    let gmf = match degenerate.first() {
        None => AxiomCheck {
            verdict: AxiomVerdict::Pass,
            note: format!(
                "{} sampled parameter values, every critical point Morse or birth-death",
                samples.len()
            ),
        },
        Some(p) => AxiomCheck {
            verdict: AxiomVerdict::Fail,
            note: format!("degenerate critical point ({}) at t = {}, x = {:?}", p.reason.as_str(), p.t, p.x),
        },
    };
    Ok(AxiomReport {
        proper,
        embedding: AxiomCheck {
            verdict: AxiomVerdict::NotChecked,
            note: String::from("graph embedding over the identity chart; holds by construction, not verified independently"),
        },
        submersion: AxiomCheck {
            verdict: AxiomVerdict::Pass,
            note: String::from("coordinate projection"),
        },
        gmf,
        degenerate,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet3;

    #[test]
    fn cusp_jet_at_origin() {
        let j = fiber_jet3(&PolyFamily::cusp(), &[0.0], &[0.0]).unwrap();
        let expect = Jet3::new(1, 0.0, vec![0.0], vec![0.0], [([1, 1, 1], 1.0)]).unwrap();
        assert_eq!(j, expect);
    }

    #[test]
    fn cusp_jet_off_origin() {
        let j = fiber_jet3(&PolyFamily::cusp(), &[3.0], &[1.0]).unwrap();
        let expect = Jet3::new(1, -2.0, vec![0.0], vec![3.0], [([1, 1, 1], 1.0)]).unwrap();
        assert_eq!(j, expect);
    }

    #[test]
    fn round_bowl_jet() {
        let f = PolyFamily::new(
            1,
            2,
            vec![
                Term { powers: vec![0, 2, 0], coeff: 1.0 },
                Term { powers: vec![0, 0, 2], coeff: 1.0 },
            ],
        )
        .unwrap();
        let j = fiber_jet3(&f, &[7.0], &[0.0, 0.0]).unwrap();
        assert_eq!(j.quadratic(), &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(j.linear(), &[0.0, 0.0]);
        assert!(fiber_jet3(&f, &[7.0], &[0.0]).is_err());
    }

    #[test]
    fn double_well_critical_points() {
        // x⁴/4 - x²/2
        let f = PolyFamily::new(
            0,
            1,
            vec![
                Term { powers: vec![4], coeff: 0.25 },
                Term { powers: vec![2], coeff: -0.5 },
            ],
        )
        .unwrap();
        let s = fiber_critical_points(&f, &[], &BoxDomain::cube(1, -2.0, 2.0), &SearchSettings::default())
            .unwrap();
        let got: Vec<(f64, GmfClass)> = s.points.iter().map(|p| (p.x[0], p.class)).collect();
        assert_eq!(got.len(), 3);
        assert!((got[0].0 + 1.0).abs() < 1e-12);
        assert_eq!(got[0].1, GmfClass::NondegenerateCritical(0));
        assert!(got[1].0.abs() < 1e-12);
        assert_eq!(got[1].1, GmfClass::NondegenerateCritical(1));
        assert!((got[2].0 - 1.0).abs() < 1e-12);
        assert_eq!(got[2].1, GmfClass::NondegenerateCritical(0));
    }

    #[test]
    fn cusp_at_t3() {
        let s = fiber_critical_points(
            &PolyFamily::cusp(),
            &[3.0],
            &BoxDomain::cube(1, -2.0, 2.0),
            &SearchSettings::default(),
        )
        .unwrap();
        assert_eq!(s.points.len(), 2);
        assert!((s.points[0].x[0] + 1.0).abs() < 1e-12);
        assert_eq!(s.points[0].class, GmfClass::NondegenerateCritical(1));
        assert!((s.points[1].x[0] - 1.0).abs() < 1e-12);
        assert_eq!(s.points[1].class, GmfClass::NondegenerateCritical(0));
    }

    #[test]
    fn presets_parse() {
        assert_eq!(PolyFamily::preset("cusp"), Some(PolyFamily::cusp()));
        assert_eq!(PolyFamily::preset("suspended-cusp-2").unwrap().fiber_dim(), 3);
        assert_eq!(PolyFamily::preset("suspended-cusp-1-4").unwrap().fiber_dim(), 4);
        assert!(PolyFamily::preset("suspended-cusp-2-2").is_none());
        assert!(PolyFamily::preset("elliptic-umbilic").is_none());
    }

    #[test]
    fn cusp_trace_single_event() {
        let tr = trace_birth_death(
            &PolyFamily::cusp(),
            -1.0,
            1.0,
            41,
            &BoxDomain::cube(1, -2.0, 2.0),
            &SearchSettings::default(),
        )
        .unwrap();
        assert_eq!(tr.events.len(), 1, "{:?}", tr.events);
        let e = &tr.events[0];
        assert!(e.t_star.abs() <= 1e-8);
        assert!(e.x_star[0].abs() <= 1e-6);
        assert_eq!(e.index, 0);
        assert!(tr.is_gmf());
    }

    #[test]
    fn swallowtail_is_flagged() {
        let tr = trace_birth_death(
            &PolyFamily::swallowtail(),
            -1.0,
            1.0,
            40,
            &BoxDomain::cube(1, -2.0, 2.0),
            &SearchSettings::default(),
        )
        .unwrap();
        assert!(tr.events.is_empty(), "{:?}", tr.events);
        assert_eq!(tr.degenerate.len(), 1, "{:?}", tr.degenerate);
        assert_eq!(tr.degenerate[0].reason, DegenerateReason::KernelCubicVanishes);
        assert!(tr.degenerate[0].t.abs() < 1e-6);
    }

    #[test]
    fn trace_rejects_bad_window() {
        let b = BoxDomain::cube(1, -2.0, 2.0);
        let s = SearchSettings::default();
        assert!(trace_birth_death(&PolyFamily::cusp(), 1.0, -1.0, 10, &b, &s).is_err());
        assert!(trace_birth_death(&PolyFamily::cusp(), -1.0, 1.0, 1, &b, &s).is_err());
    }

    #[test]
    fn axioms_for_bowl_and_swallowtail() {
        let bowl = PolyFamily::new(
            0,
            2,
            vec![
                Term { powers: vec![2, 0], coeff: 1.0 },
                Term { powers: vec![0, 2], coeff: 1.0 },
            ],
        )
        .unwrap();
        let s = SearchSettings::default();
        let r = check_family_axioms(&bowl, None, &BoxDomain::cube(2, -2.0, 2.0), &s).unwrap();
        assert_eq!(r.proper.verdict, AxiomVerdict::Pass);
        assert_eq!(r.submersion.verdict, AxiomVerdict::Pass);
        assert_eq!(r.gmf.verdict, AxiomVerdict::Pass);
        assert_eq!(r.embedding.verdict, AxiomVerdict::NotChecked);

        let w = ParamWindow { t0: -1.0, t1: 1.0, steps: 21 };
        let b1 = BoxDomain::cube(1, -2.0, 2.0);
        let r = check_family_axioms(&PolyFamily::swallowtail(), Some(w), &b1, &s).unwrap();
        assert_eq!(r.gmf.verdict, AxiomVerdict::Fail);
        let r = check_family_axioms(&PolyFamily::cusp(), Some(w), &b1, &s).unwrap();
        assert_eq!(r.gmf.verdict, AxiomVerdict::Pass);
    }
}
