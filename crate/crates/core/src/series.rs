//! Truncated Laurent series with exact nonnegative integer coefficients.
//!
//! A [`PoincareSeries`] records the graded `F_2` dimensions of a space or a
//! spectrum up to a truncation degree `N`. Disjoint union is `+`, Cartesian
//! product is the Cauchy product (Künneth over a field) and `k`-fold
//! suspension is a shift by `k`; negative shifts are allowed for spectra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Default truncation degree.
pub const DEFAULT_MAX_DEGREE: i64 = 32;

/// Equality compares coefficients degree by degree, so leading zeros do not
/// matter.
#[derive(Clone, Debug)]
pub struct PoincareSeries {
    min_degree: i64,
    truncation: i64,
    /// `coeffs[k]` is the coefficient of `t^(min_degree + k)`; always
    /// `truncation - min_degree + 1` entries (empty if `truncation < min_degree`).
    coeffs: Vec<BigUint>,
}

impl PartialEq for PoincareSeries {
    fn eq(&self, other: &Self) -> bool {
        self.truncation == other.truncation
            && (self.min_degree.min(other.min_degree)..=self.truncation)
                .all(|n| self.get(n) == other.get(n))
    }
}

impl Eq for PoincareSeries {}

impl PoincareSeries {
    pub fn from_coeffs(min_degree: i64, truncation: i64, coeffs: Vec<BigUint>) -> Self {
        let len = (truncation - min_degree + 1).max(0) as usize;
        let mut coeffs = coeffs;
        coeffs.resize(len, BigUint::zero());
        PoincareSeries {
            min_degree,
            truncation,
            coeffs,
        }
    }

    pub fn from_u64(min_degree: i64, truncation: i64, coeffs: &[u64]) -> Self {
        Self::from_coeffs(
            min_degree,
            truncation,
            coeffs.iter().map(|&c| BigUint::from(c)).collect(),
        )
    }

    pub fn zero(truncation: i64) -> Self {
        Self::from_coeffs(0, truncation, Vec::new())
    }

    /// The series of a point, `1`.
    pub fn one(truncation: i64) -> Self {
        Self::monomial(0, truncation)
    }

    /// `t^k`.
    pub fn monomial(k: i64, truncation: i64) -> Self {
        let mut s = Self::from_coeffs(k.min(truncation + 1), truncation, Vec::new());
        if k <= truncation {
            s.coeffs[0] = BigUint::one();
        }
        s
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient at degree `n`, or `None` past the truncation.
    pub fn get(&self, n: i64) -> Option<BigUint> {
        if n > self.truncation {
            None
        } else if n < self.min_degree {
            Some(BigUint::zero())
        } else {
            Some(self.coeffs[(n - self.min_degree) as usize].clone())
        }
    }

    /// Coefficient at degree `n`.
    ///
    /// Panics if `n` lies beyond the truncation.
    pub fn coeff(&self, n: i64) -> BigUint {
        self.get(n)
            .unwrap_or_else(|| panic!("degree {n} beyond truncation {}", self.truncation))
    }

    /// Coefficient as `u64`; panics on overflow or past truncation.
    pub fn coeff_u64(&self, n: i64) -> u64 {
        let c = self.coeff(n);
        u64::try_from(&c).unwrap_or_else(|_| panic!("coefficient at degree {n} exceeds u64"))
    }

    /// Lowest degree with a nonzero coefficient, `None` if all vanish.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.min_degree + k as i64)
    }

    pub fn truncate(&self, n: i64) -> Self {
        let n = n.min(self.truncation);
        let len = (n - self.min_degree + 1).max(0) as usize;
        Self::from_coeffs(self.min_degree, n, self.coeffs[..len.min(self.coeffs.len())].to_vec())
    }

    /// Sum of all coefficients in the valid range.
    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let min = self.min_degree.min(other.min_degree);
        let n = self.truncation.min(other.truncation);
        let coeffs = (min..=n)
            .map(|k| self.coeff(k) + other.coeff(k))
            .collect();
        Self::from_coeffs(min, n, coeffs)
    }

    /// Cauchy product. Valid up to `min(N_a + v_b, N_b + v_a)` where `v` is
    /// the minimal degree.
    pub fn mul(&self, other: &Self) -> Self {
        let min = self.min_degree + other.min_degree;
        let n = (self.truncation + other.min_degree).min(other.truncation + self.min_degree);
        let mut coeffs = vec![BigUint::zero(); (n - min + 1).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= coeffs.len() {
                    break;
                }
                if !b.is_zero() {
                    coeffs[k] += a * b;
                }
            }
        }
        Self::from_coeffs(min, n, coeffs)
    }

    pub fn shift(&self, k: i64) -> Self {
        Self::from_coeffs(self.min_degree + k, self.truncation + k, self.coeffs.clone())
    }

    /// Series with explicit coefficients between `lo` and `hi`, for display.
    pub fn to_pairs(&self) -> Vec<(i64, BigUint)> {
        (self.min_degree..=self.truncation)
            .map(|n| (n, self.coeff(n)))
            .collect()
    }
}

impl fmt::Display for PoincareSeries {
    /// Space-separated `deg:coeff` pairs.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.to_pairs() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{n}:{c}")?;
        }
        Ok(())
    }
}

/// First degree, within the common valid range, where the two series
/// differ.
pub fn first_mismatch(a: &PoincareSeries, b: &PoincareSeries) -> Option<i64> {
    let lo = a.min_degree.min(b.min_degree);
    let hi = a.truncation.min(b.truncation);
    (lo..=hi).find(|&n| a.coeff(n) != b.coeff(n))
}

/// First mismatch as a human-readable line, or `None` if equal.
pub fn describe_mismatch(a: &PoincareSeries, b: &PoincareSeries) -> Option<String> {
    first_mismatch(a, b).map(|n| format!("degree {n}: {} != {}", a.coeff(n), b.coeff(n)))
}

/// `∏ 1/(1 - t^{deg})` over the given generator degrees, up to `n`.
pub fn polynomial_ring_series(degrees: &[u32], n: i64) -> PoincareSeries {
    let len = (n + 1).max(0) as usize;
    let mut c = vec![BigUint::zero(); len];
    if len > 0 {
        c[0] = BigUint::one();
    }
    for &g in degrees {
        let g = g as usize;
        assert!(g > 0, "generator degrees must be positive");
        for k in g..len {
            let add = c[k - g].clone();
            c[k] += add;
        }
    }
    PoincareSeries::from_coeffs(0, n, c)
}

/// `H_*(BO(m); F_2)`: polynomial on `w_1..w_m`.
pub fn series_bo(m: u32, n: i64) -> PoincareSeries {
    let degrees: Vec<u32> = (1..=m).collect();
    polynomial_ring_series(&degrees, n)
}

/// `H_*(BSO(m); F_2)`: polynomial on `w_2..w_m`; `BSO(0)` and `BSO(1)` are
/// points.
pub fn series_bso(m: u32, n: i64) -> PoincareSeries {
    let degrees: Vec<u32> = (2..=m).collect();
    polynomial_ring_series(&degrees, n)
}

/// Gaussian binomial `[d+n choose d]_t`, the mod-2 Poincaré polynomial of
/// the Grassmannian of `d`-planes in `R^{d+n}`, truncated at `max_degree`.
pub fn series_grassmannian(d: u32, n: u32, max_degree: i64) -> PoincareSeries {
    // q-Pascal: [m, k] = [m-1, k-1] + t^k [m-1, k]
    let total = (d + n) as usize;
    let k_max = d as usize;
    let deg_len = d as usize * n as usize + 1;
    // row[k] holds [m, k] as a coefficient vector
    let mut row: Vec<Vec<BigUint>> = vec![Vec::new(); k_max + 1];
    row[0] = vec![BigUint::one()];
    for m in 1..=total {
        let mut next: Vec<Vec<BigUint>> = vec![Vec::new(); k_max + 1];
        for k in 0..=k_max.min(m) {
            let mut poly = vec![BigUint::zero(); deg_len];
            if k > 0 {
                for (i, c) in row[k - 1].iter().enumerate() {
                    poly[i] += c;
                }
            }
            if k < m {
                for (i, c) in row[k].iter().enumerate() {
                    if i + k < deg_len {
                        poly[i + k] += c;
                    }
                }
            }
            while poly.len() > 1 && poly.last().is_some_and(|c| c.is_zero()) {
                poly.pop();
            }
            next[k] = poly;
        }
        row = next;
    }
    PoincareSeries::from_coeffs(0, max_degree, row[k_max].clone())
}

/// Graded monomial basis of a polynomial ring on generators of positive
/// degree, enumerated up to a fixed degree.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    generators: Vec<(String, u32)>,
    max_degree: usize,
    by_degree: Vec<Vec<Vec<u32>>>,
    index: Vec<BTreeMap<Vec<u32>, usize>>,
}

impl MonomialBasis {
    pub fn new(generators: Vec<(String, u32)>, max_degree: usize) -> Self {
        assert!(
            generators.iter().all(|(_, d)| *d > 0),
            "generator degrees must be positive"
        );
        let mut by_degree: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_degree + 1];
        let mut exps = vec![0u32; generators.len()];
        Self::enumerate(&generators, 0, 0, max_degree, &mut exps, &mut by_degree);
        for list in &mut by_degree {
            list.sort();
        }
        let index = by_degree
            .iter()
            .map(|list| {
                list.iter()
                    .enumerate()
                    .map(|(i, e)| (e.clone(), i))
                    .collect()
            })
            .collect();
        MonomialBasis {
            generators,
            max_degree,
            by_degree,
            index,
        }
    }

    fn enumerate(
        gens: &[(String, u32)],
        g: usize,
        degree: usize,
        max: usize,
        exps: &mut Vec<u32>,
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if g == gens.len() {
            out[degree].push(exps.clone());
            return;
        }
        let step = gens[g].1 as usize;
        let mut e = 0;
        let mut deg = degree;
        while deg <= max {
            exps[g] = e;
            Self::enumerate(gens, g + 1, deg, max, exps, out);
            e += 1;
            deg += step;
        }
        exps[g] = 0;
    }

    pub fn generators(&self) -> &[(String, u32)] {
        &self.generators
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Exponent vectors of weighted degree `n` in lexicographic order.
    pub fn basis(&self, n: usize) -> &[Vec<u32>] {
        &self.by_degree[n]
    }

    pub fn dim(&self, n: usize) -> usize {
        self.by_degree.get(n).map_or(0, Vec::len)
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        let n = self.degree_of(exps);
        self.index.get(n)?.get(exps).copied()
    }

    pub fn degree_of(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.generators)
            .map(|(e, (_, d))| *e as usize * *d as usize)
            .sum()
    }

    pub fn series(&self) -> PoincareSeries {
        PoincareSeries::from_coeffs(
            0,
            self.max_degree as i64,
            self.by_degree.iter().map(|l| BigUint::from(l.len())).collect(),
        )
    }

    /// Monomial written with generator labels, e.g. `w1[0]^2*w2[1]`.
    pub fn label(&self, exps: &[u32]) -> String {
        let mut s = String::new();
        for (e, (name, _)) in exps.iter().zip(&self.generators) {
            if *e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if *e > 1 {
                s.push_str(&format!("^{e}"));
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(s: &PoincareSeries) -> Vec<u64> {
        (s.min_degree()..=s.truncation()).map(|n| s.coeff_u64(n)).collect()
    }

    #[test]
    fn one_plus_t_squared() {
        let a = PoincareSeries::from_u64(0, 6, &[1, 1]);
        assert_eq!(u(&a.mul(&a)), vec![1, 2, 1, 0, 0, 0, 0]);
    }

    #[test]
    fn negative_shift_of_geometric_series() {
        let s = series_bo(1, 10).shift(-3);
        assert_eq!(s.min_degree(), -3);
        assert_eq!(s.truncation(), 7);
        assert_eq!(s.coeff_u64(-3), 1);
        assert_eq!(s.coeff_u64(-4), 0);
    }

    #[test]
    fn kunneth_of_two_lines() {
        let s = series_bo(1, 20).mul(&series_bo(1, 20));
        for n in 0..=20 {
            assert_eq!(s.coeff_u64(n), n as u64 + 1);
        }
    }

    #[test]
    fn classifying_space_series() {
        assert_eq!(u(&series_bo(0, 4)), vec![1, 0, 0, 0, 0]);
        assert_eq!(u(&series_bo(1, 4)), vec![1, 1, 1, 1, 1]);
        assert_eq!(u(&series_bo(2, 4)), vec![1, 1, 2, 2, 3]);
        assert_eq!(u(&series_bso(2, 4)), vec![1, 0, 1, 0, 1]);
        assert_eq!(u(&series_bso(1, 4)), vec![1, 0, 0, 0, 0]);
        assert_eq!(u(&series_bso(3, 6)), vec![1, 0, 1, 1, 1, 1, 2]);
    }

    #[test]
    fn grassmannians() {
        assert_eq!(u(&series_grassmannian(1, 1, 5)), vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(u(&series_grassmannian(3, 0, 3)), vec![1, 0, 0, 0]);
        assert_eq!(series_grassmannian(2, 2, 10).total(), BigUint::from(6u32));
        assert_eq!(u(&series_grassmannian(2, 2, 4)), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn truncation_is_tracked() {
        let a = series_bo(1, 10);
        let b = series_bo(1, 5).shift(2);
        let s = a.mul(&b);
        assert_eq!(s.min_degree(), 2);
        assert_eq!(s.truncation(), 7);
        assert_eq!(a.add(&b).truncation(), 7);
    }

    #[test]
    fn mismatch_reporting() {
        let a = PoincareSeries::from_u64(0, 5, &[1, 1, 1]);
        let b = PoincareSeries::from_u64(-1, 5, &[0, 1, 1, 2]);
        assert_eq!(first_mismatch(&a, &b), Some(2));
        assert_eq!(first_mismatch(&a, &a), None);
        assert_eq!(
            describe_mismatch(&a, &b).unwrap(),
            "degree 2: 1 != 2"
        );
    }

    #[test]
    fn display_pairs() {
        let s = PoincareSeries::from_u64(-1, 1, &[1, 2, 3]);
        assert_eq!(format!("{s}"), "-1:1 0:2 1:3");
    }

    #[test]
    fn monomial_basis_counts() {
        let b = MonomialBasis::new(
            vec![("a".into(), 1), ("b".into(), 1), ("c".into(), 2)],
            6,
        );
        let expect = series_bo(1, 6).mul(&series_bo(2, 6));
        assert_eq!(b.series(), expect);
        let m = vec![1, 0, 2];
        assert_eq!(b.degree_of(&m), 5);
        assert_eq!(b.basis(5)[b.index_of(&m).unwrap()], m);
        assert_eq!(b.label(&m), "a*c^2");
        assert_eq!(b.label(&[0, 0, 0]), "1");
    }
}
