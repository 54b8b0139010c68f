#![allow(dead_code)]

use gmfkit_core::jet::{DegenerateReason, GmfClass, Jet3};
use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub const TOL: f64 = 1e-9;

pub fn random_orthogonal<R: Rng>(rng: &mut R, d: usize) -> Vec<f64> {
    let g = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0..1.0));
    let q = g.qr().q();
    let mut out = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            out[i * d + j] = q[(i, j)];
        }
    }
    out
}

fn transpose(m: &[f64], d: usize) -> Vec<f64> {
    let mut t = vec![0.0; d * d];
    for i in 0..d {
        for j in 0..d {
            t[j * d + i] = m[i * d + j];
        }
    }
    t
}

/// Which stratum a generated jet was built to land in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Regular,
    Morse,
    BirthDeath,
    CubicVanishes,
    KernelTwo,
}

fn magnitude<R: Rng>(rng: &mut R) -> f64 {
    let m = rng.gen_range(0.1..10.0);
    if rng.gen_bool(0.5) {
        m
    } else {
        -m
    }
}

/// A jet in diagonal coordinates for the requested stratum, then rotated by
/// a random orthogonal matrix.
pub fn stratified_jet<R: Rng>(rng: &mut R, d: usize, target: Target) -> Jet3 {
    let zeros = match target {
        Target::Regular => rng.gen_range(0..=d),
        Target::Morse => 0,
        Target::BirthDeath | Target::CubicVanishes => 1,
        Target::KernelTwo => 2,
    };
    let zeros = zeros.min(d);
    let mut q = vec![0.0; d * d];
    for j in zeros..d {
        q[j * d + j] = magnitude(rng);
    }
    let mut linear = vec![0.0; d];
    if target == Target::Regular {
        for v in linear.iter_mut() {
            *v = magnitude(rng);
        }
    }
    let mut cubic = Vec::new();
    for i in 1..=d {
        for j in i..=d {
            for k in j..=d {
                if rng.gen_bool(0.4) {
                    cubic.push(([i, j, k], rng.gen_range(-2.0..2.0)));
                }
            }
        }
    }
    // the first axis carries the kernel when zeros > 0
    cubic.retain(|(idx, _)| *idx != [1, 1, 1]);
    match target {
        Target::BirthDeath => cubic.push(([1, 1, 1], magnitude(rng))),
        Target::CubicVanishes => {}
        _ => {
            if rng.gen_bool(0.5) {
                cubic.push(([1, 1, 1], rng.gen_range(-2.0..2.0)));
            }
        }
    }
    let base = Jet3::new(d, rng.gen_range(-1.0..1.0), linear, q, cubic).unwrap();
    let u = random_orthogonal(rng, d);
    // x ↦ base(Uᵀ x)
    base.linear_change(&transpose(&u, d)).unwrap()
}

pub fn dense_cubic(jet: &Jet3) -> Vec<f64> {
    let d = jet.dim();
    let mut t = vec![0.0; d * d * d];
    for (idx, c) in jet.cubic() {
        let [i, j, k] = [idx[0] - 1, idx[1] - 1, idx[2] - 1];
        let perms = [
            [i, j, k],
            [i, k, j],
            [j, i, k],
            [j, k, i],
            [k, i, j],
            [k, j, i],
        ];
        let mut seen: Vec<[usize; 3]> = Vec::new();
        for p in perms {
            if !seen.contains(&p) {
                seen.push(p);
                t[p[0] * d * d + p[1] * d + p[2]] += c;
            }
        }
    }
    t
}

pub fn naive_eval(jet: &Jet3, x: &[f64]) -> f64 {
    let d = jet.dim();
    let mut s = jet.constant();
    for i in 0..d {
        s += jet.linear()[i] * x[i];
        for j in 0..d {
            s += jet.quadratic_entry(i, j) * x[i] * x[j];
        }
    }
    let t = dense_cubic(jet);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                s += t[i * d * d + j * d + k] * x[i] * x[j] * x[k];
            }
        }
    }
    s
}

pub struct OracleResult {
    pub class: GmfClass,
    /// Largest over smallest magnitude among eigenvalues outside the zero
    /// band; infinite if there is none.
    pub kappa: f64,
}

/// Classification from a full nalgebra eigendecomposition, sign counting
/// and a dense cubic contraction.
pub fn oracle_classify(jet: &Jet3, tol: f64) -> OracleResult {
    let d = jet.dim();
    let q = DMatrix::from_fn(d, d, |i, j| jet.quadratic_entry(i, j));
    let eig = q.clone().symmetric_eigen();
    let spectral = eig.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let cutoff = tol * spectral.max(1.0);
    let mut scale = 1.0f64;
    for v in jet.linear().iter().chain(jet.quadratic()).chain(jet.cubic().values()) {
        scale = scale.max(v.abs());
    }
    let big: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|v| v.abs())
        .filter(|v| *v > cutoff)
        .collect();
    let kappa = if big.is_empty() {
        f64::INFINITY
    } else {
        big.iter().cloned().fold(0.0, f64::max) / big.iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let lin = DVector::from_column_slice(jet.linear()).norm();
    if lin > tol * scale {
        return OracleResult { class: GmfClass::Regular, kappa };
    }
    let neg = eig.eigenvalues.iter().filter(|v| **v < -cutoff).count();
    let zero: Vec<usize> = (0..d).filter(|&j| eig.eigenvalues[j].abs() <= cutoff).collect();
    let class = match zero.len() {
        0 => GmfClass::NondegenerateCritical(neg),
        1 => {
            // right singular vector of the smallest singular value; more
            // accurate than the eigenvector in a tight cluster
            let svd = q.clone().svd(false, true);
            let v_t = svd.v_t.expect("requested");
            let j = (0..d)
                .min_by(|&a, &b| svd.singular_values[a].partial_cmp(&svd.singular_values[b]).unwrap())
                .unwrap();
            let v: Vec<f64> = v_t.row(j).iter().cloned().collect();
            let t = dense_cubic(jet);
            let mut r = 0.0;
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        r += t[i * d * d + j * d + k] * v[i] * v[j] * v[k];
                    }
                }
            }
            if r.abs() > tol * scale {
                GmfClass::BirthDeath(neg)
            } else {
                GmfClass::Degenerate(DegenerateReason::KernelCubicVanishes)
            }
        }
        _ => GmfClass::Degenerate(DegenerateReason::KernelDimAtLeast2),
    };
    OracleResult { class, kappa }
}
