//! Cubic jets at the origin of `R^d` and their generalized-Morse stratum.
//!
//! A jet is `c + ℓ(x) + q(x) + r(x)` with
//! `q(x) = Σ_{ij} a_ij x_i x_j` and `r(x) = Σ_{ijk} a_ijk x_i x_j x_k`, the
//! coefficients being symmetric in their indices. The quadratic part is held
//! as a full symmetric matrix; the cubic part is held sparsely on sorted
//! 1-based triples, and a sorted triple with `m` distinct orderings
//! contributes `m · a_ijk · x_i x_j x_k` to `r`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::linalg;

/// Default relative tolerance for zero eigenvalues and vanishing terms.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet3 {
    dim: usize,
    constant: f64,
    linear: Vec<f64>,
    quadratic: Vec<f64>,
    cubic: BTreeMap<[usize; 3], f64>,
}

/// Number of distinct orderings of a sorted triple.
pub fn triple_multiplicity(idx: [usize; 3]) -> f64 {
    let [i, j, k] = idx;
    if i == j && j == k {
        1.0
    } else if i == j || j == k {
        3.0
    } else {
        6.0
    }
}

fn sorted(mut idx: [usize; 3]) -> [usize; 3] {
    idx.sort_unstable();
    idx
}

impl Jet3 {
    /// Validating constructor. `quadratic` is row-major `dim × dim` and must
    /// be exactly symmetric; cubic keys are 1-based sorted triples, repeated
    /// keys are summed.
    pub fn new(
        dim: usize,
        constant: f64,
        linear: Vec<f64>,
        quadratic: Vec<f64>,
        cubic: impl IntoIterator<Item = ([usize; 3], f64)>,
    ) -> Result<Self, Error> {
        if dim == 0 {
            return Err(Error::InvalidArgument("jet dimension must be positive"));
        }
        if linear.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: linear.len(),
            });
        }
        if quadratic.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: quadratic.len(),
            });
        }
        if !constant.is_finite()
            || linear.iter().any(|v| !v.is_finite())
            || quadratic.iter().any(|v| !v.is_finite())
        {
            return Err(Error::NonFinite);
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                if quadratic[i * dim + j] != quadratic[j * dim + i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        let mut map = BTreeMap::new();
        for (idx, coeff) in cubic {
            if !(1 <= idx[0] && idx[0] <= idx[1] && idx[1] <= idx[2] && idx[2] <= dim) {
                return Err(Error::BadCubicIndex(idx));
            }
            if !coeff.is_finite() {
                return Err(Error::NonFinite);
            }
            *map.entry(idx).or_insert(0.0) += coeff;
        }
        Ok(Jet3 {
            dim,
            constant,
            linear,
            quadratic,
            cubic: map,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Jet3 {
            dim,
            constant: 0.0,
            linear: vec![0.0; dim],
            quadratic: vec![0.0; dim * dim],
            cubic: BTreeMap::new(),
        }
    }

    /// `x_1^3 - Σ_{j=2}^{index+1} x_j^2 + Σ_{k=index+2}^{dim} x_k^2`.
    pub fn birth_death_model(dim: usize, index: usize) -> Result<Self, Error> {
        if dim == 0 || index + 1 > dim {
            return Err(Error::IndexOutOfRange {
                index,
                max: dim.saturating_sub(1),
            });
        }
        let mut q = vec![0.0; dim * dim];
        for j in 1..dim {
            q[j * dim + j] = if j <= index { -1.0 } else { 1.0 };
        }
        Jet3::new(dim, 0.0, vec![0.0; dim], q, [([1, 1, 1], 1.0)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    /// Row-major symmetric matrix of the quadratic part.
    pub fn quadratic(&self) -> &[f64] {
        &self.quadratic
    }

    /// `a_ij`, 0-based.
    pub fn quadratic_entry(&self, i: usize, j: usize) -> f64 {
        self.quadratic[i * self.dim + j]
    }

    /// Sparse cubic coefficients keyed by sorted 1-based triples.
    pub fn cubic(&self) -> &BTreeMap<[usize; 3], f64> {
        &self.cubic
    }

    /// `a_ijk` for 1-based indices in any order.
    pub fn cubic_coeff(&self, idx: [usize; 3]) -> f64 {
        self.cubic.get(&sorted(idx)).copied().unwrap_or(0.0)
    }

    /// `max(1, largest absolute linear/quadratic/cubic coefficient)`.
    pub fn scale(&self) -> f64 {
        let mut s = 1.0f64;
        for v in self
            .linear
            .iter()
            .chain(self.quadratic.iter())
            .chain(self.cubic.values())
        {
            s = s.max(libm::fabs(*v));
        }
        s
    }

    fn check_len(&self, x: &[f64]) -> Result<(), Error> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64, Error> {
        self.check_len(x)?;
        let lin: f64 = self.linear.iter().zip(x).map(|(a, b)| a * b).sum();
        Ok(self.constant + lin + self.quadratic_value(x) + self.cubic_value(x))
    }

    pub(crate) fn quadratic_value(&self, x: &[f64]) -> f64 {
        let d = self.dim;
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                s += self.quadratic[i * d + j] * x[i] * x[j];
            }
        }
        s
    }

    pub(crate) fn cubic_value(&self, x: &[f64]) -> f64 {
        self.cubic
            .iter()
            .map(|(&idx, &c)| {
                triple_multiplicity(idx) * c * x[idx[0] - 1] * x[idx[1] - 1] * x[idx[2] - 1]
            })
            .sum()
    }

    /// Dense symmetric cubic tensor, 0-based, `t[(i*d + j)*d + k]`.
    pub fn cubic_tensor(&self) -> Vec<f64> {
        let d = self.dim;
        let mut t = vec![0.0; d * d * d];
        for (&[i, j, k], &c) in &self.cubic {
            let (i, j, k) = (i - 1, j - 1, k - 1);
            for [a, b, e] in [
                [i, j, k],
                [i, k, j],
                [j, i, k],
                [j, k, i],
                [k, i, j],
                [k, j, i],
            ] {
                t[(a * d + b) * d + e] = c;
            }
        }
        t
    }

    /// The jet of `y ↦ p(M y)` for a square row-major matrix `M`.
    pub fn linear_change(&self, m: &[f64]) -> Result<Jet3, Error> {
        let d = self.dim;
        if m.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: m.len(),
            });
        }
        let mt = linalg::transpose(m, d);
        let linear = linalg::matvec(&mt, &self.linear, d);
        let mut quadratic = linalg::matmul(&linalg::matmul(&mt, &self.quadratic, d), m, d);
        for i in 0..d {
            for j in (i + 1)..d {
                let avg = 0.5 * (quadratic[i * d + j] + quadratic[j * d + i]);
                quadratic[i * d + j] = avg;
                quadratic[j * d + i] = avg;
            }
        }
        // contract one tensor slot at a time
        let t = self.cubic_tensor();
        let mut t1 = vec![0.0; d * d * d];
        for a in 0..d {
            for i in 0..d {
                let mia = m[i * d + a];
                if mia == 0.0 {
                    continue;
                }
                for jk in 0..d * d {
                    t1[a * d * d + jk] += mia * t[i * d * d + jk];
                }
            }
        }
        let mut t2 = vec![0.0; d * d * d];
        for a in 0..d {
            for b in 0..d {
                for j in 0..d {
                    let mjb = m[j * d + b];
                    if mjb == 0.0 {
                        continue;
                    }
                    for k in 0..d {
                        t2[(a * d + b) * d + k] += mjb * t1[(a * d + j) * d + k];
                    }
                }
            }
        }
        let mut cubic = Vec::new();
        for a in 0..d {
            for b in a..d {
                for c in b..d {
                    let mut s = 0.0;
                    for k in 0..d {
                        s += m[k * d + c] * t2[(a * d + b) * d + k];
                    }
                    if s != 0.0 {
                        cubic.push(([a + 1, b + 1, c + 1], s));
                    }
                }
            }
        }
        Jet3::new(d, self.constant, linear, quadratic, cubic)
    }
}

/// `V₋(q) ⊕ V₀(q) ⊕ V₊(q)` with a grouped orthonormal eigenbasis.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSplit {
    pub neg_dim: usize,
    pub zero_dim: usize,
    pub pos_dim: usize,
    /// Row-major; columns ordered negative block, zero block, positive block.
    pub basis: Vec<f64>,
    pub eigenvalues: Vec<f64>,
}

impl SpectralSplit {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        let d = self.dim();
        (0..d).map(|i| self.basis[i * d + j]).collect()
    }

    /// The smallest-magnitude eigenvalue, with sign.
    pub fn smallest_magnitude(&self) -> f64 {
        self.eigenvalues
            .iter()
            .copied()
            .fold(f64::INFINITY, |m, v| if libm::fabs(v) < libm::fabs(m) { v } else { m })
    }
}

/// Splits `q` (row-major `d × d`) into negative, zero and positive
/// eigenspaces. Eigenvalues with `|λ| ≤ tol · max(1, ‖q‖₂)` count as zero.
pub fn spectral_split(q: &[f64], d: usize, tol: f64) -> Result<SpectralSplit, Error> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    if q.len() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: q.len(),
        });
    }
    if q.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    let norm = linalg::frobenius(q);
    for i in 0..d {
        for j in (i + 1)..d {
            if libm::fabs(q[i * d + j] - q[j * d + i]) > 1e-12 * norm.max(1.0) {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let eig = linalg::symmetric_eigen(q, d)?;
    let spectral = eig
        .eigenvalues
        .iter()
        .fold(0.0f64, |m, v| m.max(libm::fabs(*v)));
    let cutoff = tol * spectral.max(1.0);
    let mut order: Vec<usize> = (0..d).collect();
    let block = |v: f64| -> u8 {
        if libm::fabs(v) <= cutoff {
            1
        } else if v < 0.0 {
            0
        } else {
            2
        }
    };
    order.sort_by(|&a, &b| {
        let (va, vb) = (eig.eigenvalues[a], eig.eigenvalues[b]);
        block(va)
            .cmp(&block(vb))
            .then(va.partial_cmp(&vb).unwrap_or(core::cmp::Ordering::Equal))
    });
    let mut basis = vec![0.0; d * d];
    let mut eigenvalues = Vec::with_capacity(d);
    let (mut neg, mut zero, mut pos) = (0, 0, 0);
    for (new_col, &old_col) in order.iter().enumerate() {
        let v = eig.eigenvalues[old_col];
        match block(v) {
            0 => neg += 1,
            1 => zero += 1,
            _ => pos += 1,
        }
        eigenvalues.push(v);
        for i in 0..d {
            basis[i * d + new_col] = eig.eigenvectors[i * d + old_col];
        }
    }
    Ok(SpectralSplit {
        neg_dim: neg,
        zero_dim: zero,
        pos_dim: pos,
        basis,
        eigenvalues,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegenerateReason {
    KernelDimAtLeast2,
    KernelCubicVanishes,
}

impl DegenerateReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DegenerateReason::KernelDimAtLeast2 => "KernelDimAtLeast2",
            DegenerateReason::KernelCubicVanishes => "KernelCubicVanishes",
        }
    }
}

/// Stratum of a 3-jet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GmfClass {
    Regular,
    NondegenerateCritical(usize),
    BirthDeath(usize),
    Degenerate(DegenerateReason),
}

impl GmfClass {
    pub fn name(&self) -> &'static str {
        match self {
            GmfClass::Regular => "Regular",
            GmfClass::NondegenerateCritical(_) => "NondegenerateCritical",
            GmfClass::BirthDeath(_) => "BirthDeath",
            GmfClass::Degenerate(_) => "Degenerate",
        }
    }

    pub fn index(&self) -> Option<usize> {
        match *self {
            GmfClass::NondegenerateCritical(i) | GmfClass::BirthDeath(i) => Some(i),
            _ => None,
        }
    }

    pub fn is_gmf(&self) -> bool {
        !matches!(self, GmfClass::Degenerate(_))
    }
}

/// A class together with the split it was read from. The split is absent
/// for regular jets.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub class: GmfClass,
    pub split: Option<SpectralSplit>,
}

/// `r(v, v, v)` for a unit vector `v`.
pub fn restrict_cubic(jet: &Jet3, v: &[f64]) -> Result<f64, Error> {
    jet.check_len(v)?;
    let n = linalg::norm2(v);
    if libm::fabs(n - 1.0) > 1e-9 {
        return Err(Error::NotUnitVector(n));
    }
    Ok(jet.cubic_value(v))
}

pub fn classify(jet: &Jet3, tol: f64) -> Result<GmfClass, Error> {
    classify_with_split(jet, tol).map(|c| c.class)
}

pub fn classify_with_split(jet: &Jet3, tol: f64) -> Result<Classification, Error> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive"));
    }
    let scale = jet.scale();
    let threshold = tol * scale;
    let split = spectral_split(&jet.quadratic, jet.dim, tol)?;
    if linalg::norm2(&jet.linear) > threshold {
        return Ok(Classification {
            class: GmfClass::Regular,
            split: Some(split),
        });
    }
    let class = match split.zero_dim {
        0 => GmfClass::NondegenerateCritical(split.neg_dim),
        1 => {
            let v = split.column(split.neg_dim);
            if libm::fabs(jet.cubic_value(&v)) > threshold {
                GmfClass::BirthDeath(split.neg_dim)
            } else {
                GmfClass::Degenerate(DegenerateReason::KernelCubicVanishes)
            }
        }
        _ => GmfClass::Degenerate(DegenerateReason::KernelDimAtLeast2),
    };
    Ok(Classification {
        class,
        split: Some(split),
    })
}

/// Output of [`birth_death_linear_normal_form`]: `reduced(y) = jet(U·diag(s)·y)`
/// with the quadratic snapped to `diag(0, -1…, +1…)` and the `y₁³`
/// coefficient snapped to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearNormalForm {
    /// Orthogonal, row-major; column 1 spans the kernel.
    pub rotation: Vec<f64>,
    pub scaling: Vec<f64>,
    pub reduced: Jet3,
    /// Max-norm distance of the transformed jet (constant excluded) from the
    /// model `x₁³ - Σ x_j² + Σ x_k²`; cubic cross terms land here.
    pub residual: f64,
    pub index: usize,
}

pub fn birth_death_linear_normal_form(jet: &Jet3, tol: f64) -> Result<LinearNormalForm, Error> {
    let Classification { class, split } = classify_with_split(jet, tol)?;
    let index = match class {
        GmfClass::BirthDeath(i) => i,
        other => return Err(Error::NotBirthDeath(other)),
    };
    let split = split.expect("critical jets carry a split");
    let d = jet.dim;
    let kernel_col = split.neg_dim;
    let mut kernel = split.column(kernel_col);
    let r = jet.cubic_value(&kernel);
    if r < 0.0 {
        kernel.iter_mut().for_each(|v| *v = -*v);
    }
    // new axis order: kernel, negative block, positive block
    let mut columns: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d);
    columns.push((kernel, 1.0 / libm::cbrt(libm::fabs(r))));
    for j in (0..d).filter(|&j| j != kernel_col) {
        let lambda = split.eigenvalues[j];
        columns.push((split.column(j), 1.0 / libm::sqrt(libm::fabs(lambda))));
    }
    let mut rotation = vec![0.0; d * d];
    let mut m = vec![0.0; d * d];
    let mut scaling = Vec::with_capacity(d);
    for (c, (col, s)) in columns.iter().enumerate() {
        scaling.push(*s);
        for i in 0..d {
            rotation[i * d + c] = col[i];
            m[i * d + c] = col[i] * s;
        }
    }
    let transformed = jet.linear_change(&m)?;

    let mut model_q = vec![0.0; d * d];
    for j in 1..d {
        model_q[j * d + j] = if j <= index { -1.0 } else { 1.0 };
    }
    let mut residual = transformed
        .linear
        .iter()
        .fold(0.0f64, |acc, v| acc.max(libm::fabs(*v)));
    for (a, b) in transformed.quadratic.iter().zip(&model_q) {
        residual = residual.max(libm::fabs(a - b));
    }
    let mut cubic: Vec<([usize; 3], f64)> = Vec::new();
    residual = residual.max(libm::fabs(transformed.cubic_coeff([1, 1, 1]) - 1.0));
    cubic.push(([1, 1, 1], 1.0));
    for (&idx, &c) in transformed.cubic.iter().filter(|(k, _)| **k != [1, 1, 1]) {
        residual = residual.max(libm::fabs(c));
        cubic.push((idx, c));
    }
    let reduced = Jet3::new(d, transformed.constant, transformed.linear, model_q, cubic)?;
    Ok(LinearNormalForm {
        rotation,
        scaling,
        reduced,
        residual,
        index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(d: &[f64]) -> Vec<f64> {
        let n = d.len();
        let mut q = vec![0.0; n * n];
        for (i, v) in d.iter().enumerate() {
            q[i * n + i] = *v;
        }
        q
    }

    #[test]
    fn evaluate_pure_cube() {
        let j = Jet3::new(1, 0.0, vec![0.0], vec![0.0], [([1, 1, 1], 1.0)]).unwrap();
        assert_eq!(j.evaluate(&[2.0]).unwrap(), 8.0);
    }

    #[test]
    fn evaluate_model_at_ones() {
        let j = Jet3::birth_death_model(3, 1).unwrap();
        assert_eq!(j.evaluate(&[1.0, 1.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn evaluate_uses_multiplicities() {
        // a_112 = 1 → r = 3 x1² x2
        let j = Jet3::new(2, 0.0, vec![0.0; 2], vec![0.0; 4], [([1, 1, 2], 1.0)]).unwrap();
        assert_eq!(j.evaluate(&[2.0, 5.0]).unwrap(), 60.0);
        assert_eq!(j.cubic_coeff([2, 1, 1]), 1.0);
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(
            Jet3::new(2, 0.0, vec![0.0], vec![0.0; 4], []),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        );
        assert_eq!(
            Jet3::new(2, 0.0, vec![0.0; 2], vec![0.0, 1.0, 0.0, 0.0], []),
            Err(Error::NotSymmetric)
        );
        assert_eq!(
            Jet3::new(2, 0.0, vec![0.0; 2], vec![0.0; 4], [([2, 1, 1], 1.0)]),
            Err(Error::BadCubicIndex([2, 1, 1]))
        );
        assert_eq!(
            Jet3::new(2, 0.0, vec![0.0; 2], vec![0.0; 4], [([1, 1, 3], 1.0)]),
            Err(Error::BadCubicIndex([1, 1, 3]))
        );
        assert_eq!(
            Jet3::new(1, f64::NAN, vec![0.0], vec![0.0], []),
            Err(Error::NonFinite)
        );
        let j = Jet3::zero(2);
        assert!(matches!(
            j.evaluate(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn split_of_diagonal_and_zero() {
        let s = spectral_split(&diag(&[-1.0, 0.0, 2.0]), 3, 1e-9).unwrap();
        assert_eq!((s.neg_dim, s.zero_dim, s.pos_dim), (1, 1, 1));
        assert_eq!(s.eigenvalues, vec![-1.0, 0.0, 2.0]);
        let s = spectral_split(&[0.0; 4], 2, 1e-9).unwrap();
        assert_eq!((s.neg_dim, s.zero_dim, s.pos_dim), (0, 2, 0));
        assert!(spectral_split(&[0.0; 4], 2, 0.0).is_err());
    }

    #[test]
    fn classify_reference_jets() {
        let bd = Jet3::birth_death_model(3, 1).unwrap();
        assert_eq!(classify(&bd, DEFAULT_TOL).unwrap(), GmfClass::BirthDeath(1));

        let flat = Jet3::zero(1);
        assert_eq!(
            classify(&flat, DEFAULT_TOL).unwrap(),
            GmfClass::Degenerate(DegenerateReason::KernelCubicVanishes)
        );

        let reg = Jet3::new(2, 0.0, vec![1.0, 0.0], vec![3.0, 1.0, 1.0, -2.0], []).unwrap();
        assert_eq!(classify(&reg, DEFAULT_TOL).unwrap(), GmfClass::Regular);

        let saddle = Jet3::new(2, 0.0, vec![0.0; 2], diag(&[-1.0, 1.0]), []).unwrap();
        assert_eq!(
            classify(&saddle, DEFAULT_TOL).unwrap(),
            GmfClass::NondegenerateCritical(1)
        );

        let wide = Jet3::new(3, 0.0, vec![0.0; 3], diag(&[0.0, 0.0, 1.0]), [([1, 1, 1], 1.0)])
            .unwrap();
        assert_eq!(
            classify(&wide, DEFAULT_TOL).unwrap(),
            GmfClass::Degenerate(DegenerateReason::KernelDimAtLeast2)
        );
    }

    #[test]
    fn restrict_cubic_examples() {
        let cube = Jet3::new(1, 0.0, vec![0.0], vec![0.0], [([1, 1, 1], 1.0)]).unwrap();
        assert_eq!(restrict_cubic(&cube, &[1.0]).unwrap(), 1.0);
        assert_eq!(restrict_cubic(&cube, &[-1.0]).unwrap(), -1.0);
        let model = Jet3::birth_death_model(3, 1).unwrap();
        assert_eq!(restrict_cubic(&model, &[0.0, 1.0, 0.0]).unwrap(), 0.0);
        assert!(matches!(
            restrict_cubic(&cube, &[2.0]),
            Err(Error::NotUnitVector(_))
        ));
    }

    #[test]
    fn normal_form_of_model_is_itself() {
        let model = Jet3::birth_death_model(3, 1).unwrap();
        let nf = birth_death_linear_normal_form(&model, DEFAULT_TOL).unwrap();
        assert_eq!(nf.reduced, model);
        assert_eq!(nf.residual, 0.0);
        assert_eq!(nf.index, 1);
    }

    #[test]
    fn normal_form_swaps_and_scales() {
        // 8y³ - 4x²: kernel is the y axis
        let j = Jet3::new(2, 0.0, vec![0.0; 2], diag(&[-4.0, 0.0]), [([2, 2, 2], 8.0)]).unwrap();
        let nf = birth_death_linear_normal_form(&j, DEFAULT_TOL).unwrap();
        assert_eq!(nf.scaling, vec![0.5, 0.5]);
        assert_eq!(nf.reduced, Jet3::birth_death_model(2, 1).unwrap());
        assert_eq!(nf.residual, 0.0);
    }

    #[test]
    fn normal_form_flips_negative_cubic() {
        let j = Jet3::new(1, 0.0, vec![0.0], vec![0.0], [([1, 1, 1], -27.0)]).unwrap();
        let nf = birth_death_linear_normal_form(&j, DEFAULT_TOL).unwrap();
        assert_eq!(nf.rotation, vec![-1.0]);
        assert!((nf.scaling[0] - 1.0 / 3.0).abs() < 1e-15);
        assert!(nf.residual < 1e-14);
    }

    #[test]
    fn normal_form_rejects_morse_jets() {
        let j = Jet3::new(1, 0.0, vec![0.0], vec![1.0], []).unwrap();
        assert_eq!(
            birth_death_linear_normal_form(&j, DEFAULT_TOL),
            Err(Error::NotBirthDeath(GmfClass::NondegenerateCritical(0)))
        );
    }
}
