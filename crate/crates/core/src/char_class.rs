//! Stiefel–Whitney rings of the products `Y(i) = BO(i) × BO(d-i)` and
//! `Y¹(i) = BO(i) × BO(1) × BO(d-i-1)` and the maps between them induced by
//! the block embeddings, via `w(ξ ⊕ L) = w(ξ)(1 + a)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::f2::{BitMatrix, GradedMap};
use crate::series::{series_bo, series_bso, MonomialBasis, PoincareSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassifyingKind {
    /// `BO(m)`, generators `w_1..w_m`.
    O,
    /// `BSO(m)`, generators `w_2..w_m`.
    SO,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub kind: ClassifyingKind,
    pub rank: u32,
}

impl Factor {
    pub fn bo(rank: u32) -> Self {
        Factor {
            kind: ClassifyingKind::O,
            rank,
        }
    }

    pub fn bso(rank: u32) -> Self {
        Factor {
            kind: ClassifyingKind::SO,
            rank,
        }
    }

    fn first_class(&self) -> u32 {
        match self.kind {
            ClassifyingKind::O => 1,
            ClassifyingKind::SO => 2,
        }
    }

    pub fn series(&self, n: i64) -> PoincareSeries {
        match self.kind {
            ClassifyingKind::O => series_bo(self.rank, n),
            ClassifyingKind::SO => series_bso(self.rank, n),
        }
    }
}

/// Cohomology ring of a product of classifying spaces with its monomial
/// basis. Generator `w_j` of factor `p` is labelled `w{j}[{p}]`.
#[derive(Clone, Debug)]
pub struct ProductSWRing {
    factors: Vec<Factor>,
    /// generator position → (factor, class index j)
    gen_of: Vec<(usize, u32)>,
    basis: MonomialBasis,
}

impl ProductSWRing {
    pub fn new(factors: Vec<Factor>, max_degree: usize) -> Self {
        let mut gens = Vec::new();
        let mut gen_of = Vec::new();
        for (p, f) in factors.iter().enumerate() {
            for j in f.first_class()..=f.rank {
                gens.push((format!("w{j}[{p}]"), j));
                gen_of.push((p, j));
            }
        }
        ProductSWRing {
            factors,
            gen_of,
            basis: MonomialBasis::new(gens, max_degree),
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn basis(&self) -> &MonomialBasis {
        &self.basis
    }

    pub fn num_generators(&self) -> usize {
        self.gen_of.len()
    }

    /// Position of `w_j` of factor `p`, if that class is a generator.
    pub fn generator(&self, factor: usize, j: u32) -> Option<usize> {
        self.gen_of.iter().position(|&g| g == (factor, j))
    }

    pub fn generator_degree(&self, g: usize) -> u32 {
        self.gen_of[g].1
    }

    pub fn dims(&self) -> Vec<usize> {
        (0..=self.basis.max_degree()).map(|n| self.basis.dim(n)).collect()
    }

    /// Product of the factor series.
    pub fn factor_series(&self) -> PoincareSeries {
        let n = self.basis.max_degree() as i64;
        self.factors
            .iter()
            .fold(PoincareSeries::one(n), |acc, f| acc.mul(&f.series(n)))
    }

    fn unit(&self) -> Poly {
        let mut p = Poly::new();
        p.toggle(vec![0; self.num_generators()]);
        p
    }

    fn gen_poly(&self, g: usize) -> Poly {
        let mut e = vec![0; self.num_generators()];
        e[g] = 1;
        let mut p = Poly::new();
        p.toggle(e);
        p
    }

    /// `w_j` of factor `p` as a polynomial: 1 for `j = 0`, 0 when `j`
    /// exceeds the rank.
    fn class(&self, factor: usize, j: u32) -> Poly {
        if j == 0 {
            return self.unit();
        }
        match self.generator(factor, j) {
            Some(g) => self.gen_poly(g),
            None => Poly::new(),
        }
    }
}

/// `Y(i) = BO(i) × BO(d-i)`.
pub fn build_y(i: u32, d: u32, max_degree: usize) -> Result<ProductSWRing, Error> {
    if i > d {
        return Err(Error::IndexOutOfRange {
            index: i as usize,
            max: d as usize,
        });
    }
    Ok(ProductSWRing::new(
        vec![Factor::bo(i), Factor::bo(d - i)],
        max_degree,
    ))
}

/// `Y¹(i) = BO(i) × BO(1) × BO(d-i-1)`; the middle generator is `a`.
pub fn build_y1(i: u32, d: u32, max_degree: usize) -> Result<ProductSWRing, Error> {
    if d == 0 || i >= d {
        return Err(Error::IndexOutOfRange {
            index: i as usize,
            max: d.saturating_sub(1) as usize,
        });
    }
    Ok(ProductSWRing::new(
        vec![Factor::bo(i), Factor::bo(1), Factor::bo(d - i - 1)],
        max_degree,
    ))
}

/// Polynomial over `F_2` as a set of exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeSet<Vec<u32>>);

impl Poly {
    pub fn new() -> Self {
        Poly(BTreeSet::new())
    }

    pub fn toggle(&mut self, e: Vec<u32>) {
        if !self.0.remove(&e) {
            self.0.insert(e);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        Poly(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::new();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A ring map `H*(domain) → H*(codomain)` given on generators.
#[derive(Clone, Debug)]
pub struct RingMap {
    domain: ProductSWRing,
    codomain: ProductSWRing,
    images: Vec<Poly>,
}

impl RingMap {
    pub fn new(domain: ProductSWRing, codomain: ProductSWRing, images: Vec<Poly>) -> Result<Self, Error> {
        if images.len() != domain.num_generators() {
            return Err(Error::DimensionMismatch {
                expected: domain.num_generators(),
                found: images.len(),
            });
        }
        for (g, img) in images.iter().enumerate() {
            let deg = domain.generator_degree(g) as usize;
            if img.terms().any(|e| e.len() != codomain.num_generators()
                || codomain.basis().degree_of(e) != deg)
            {
                return Err(Error::InvalidArgument("generator image is not homogeneous of the generator degree"));
            }
        }
        Ok(RingMap {
            domain,
            codomain,
            images,
        })
    }

    pub fn domain(&self) -> &ProductSWRing {
        &self.domain
    }

    pub fn codomain(&self) -> &ProductSWRing {
        &self.codomain
    }

    pub fn image_of_generator(&self, g: usize) -> &Poly {
        &self.images[g]
    }

    /// Image of a domain monomial, by direct expansion.
    pub fn image_of_monomial(&self, exps: &[u32]) -> Poly {
        let mut p = self.codomain.unit();
        for (g, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                p = p.mul(&self.images[g]);
            }
        }
        p
    }

    /// Per-degree cohomology matrices up to the common maximal degree:
    /// columns are domain monomials, rows codomain monomials.
    pub fn cohomology(&self) -> GradedMap {
        let n_max = self.domain.basis().max_degree().min(self.codomain.basis().max_degree());
        let db = self.domain.basis();
        let cb = self.codomain.basis();
        let window = (0..self.domain.num_generators())
            .map(|g| self.domain.generator_degree(g) as usize)
            .max()
            .unwrap_or(0);
        // images by degree, oldest degrees dropped once out of reach
        let mut images: Vec<Vec<Poly>> = Vec::with_capacity(n_max + 1);
        let mut matrices = Vec::with_capacity(n_max + 1);
        for n in 0..=n_max {
            let mut level = Vec::with_capacity(db.dim(n));
            let mut m = BitMatrix::zeros(cb.dim(n), db.dim(n));
            for (col, e) in db.basis(n).iter().enumerate() {
                let img = match e.iter().position(|&x| x > 0) {
                    None => self.codomain.unit(),
                    Some(g) => {
                        let mut prev = e.clone();
                        prev[g] -= 1;
                        let pd = n - self.domain.generator_degree(g) as usize;
                        let idx = db.index_of(&prev).expect("lower monomial enumerated");
                        images[pd][idx].mul(&self.images[g])
                    }
                };
                for t in img.terms() {
                    let row = cb.index_of(t).expect("image within codomain degree");
                    m.set(row, col, true);
                }
                level.push(img);
            }
            images.push(level);
            if n >= window {
                images[n - window] = Vec::new();
            }
            matrices.push(m);
        }
        GradedMap::new(matrices)
    }

    /// Degreewise transpose of [`RingMap::cohomology`]: the induced map on
    /// homology, from `H_*(codomain)` to `H_*(domain)`.
    pub fn homology(&self) -> GradedMap {
        homology_map(&self.cohomology())
    }
}

/// Degreewise `F_2` transpose.
pub fn homology_map(cohomology: &GradedMap) -> GradedMap {
    cohomology.transpose()
}

/// `w_j ↦ w'_j + a·w'_{j-1}` with `w'` read from `base_factor`.
fn whitney_with_line(codomain: &ProductSWRing, base_factor: usize, line_factor: usize, j: u32) -> Poly {
    let a = codomain.class(line_factor, 1);
    codomain
        .class(base_factor, j)
        .add(&a.mul(&codomain.class(base_factor, j - 1)))
}

/// `f̄_i`: `H*(Y(i)) → H*(Y¹(i))`, identity on `BO(i)`, Whitney sum of the
/// line with `BO(d-i-1)` on the `BO(d-i)` block.
pub fn map_f(i: u32, d: u32, max_degree: usize) -> Result<RingMap, Error> {
    let codomain = build_y1(i, d, max_degree)?;
    let domain = build_y(i, d, max_degree)?;
    let mut images = Vec::with_capacity(domain.num_generators());
    for &(p, j) in &domain.gen_of {
        images.push(if p == 0 {
            codomain.class(0, j)
        } else {
            whitney_with_line(&codomain, 2, 1, j)
        });
    }
    RingMap::new(domain, codomain, images)
}

/// `ḡ_i`: `H*(Y(i+1)) → H*(Y¹(i))`, Whitney sum of `BO(i)` with the line on
/// the `BO(i+1)` block, identity on `BO(d-i-1)`.
pub fn map_g(i: u32, d: u32, max_degree: usize) -> Result<RingMap, Error> {
    let codomain = build_y1(i, d, max_degree)?;
    let domain = build_y(i + 1, d, max_degree)?;
    let mut images = Vec::with_capacity(domain.num_generators());
    for &(p, j) in &domain.gen_of {
        images.push(if p == 0 {
            whitney_with_line(&codomain, 0, 1, j)
        } else {
            codomain.class(2, j)
        });
    }
    RingMap::new(domain, codomain, images)
}

/// 0/1 grids with labelled rows and columns, one block per degree.
pub fn debug_dump(map: &RingMap) -> String {
    let coh = map.cohomology();
    let db = map.domain().basis();
    let cb = map.codomain().basis();
    let mut out = String::new();
    for n in 0..=coh.max_degree() {
        let m = coh.matrix(n);
        out.push_str(&format!("degree {n}: {} x {}\n", m.rows(), m.cols()));
        let cols: Vec<String> = db.basis(n).iter().map(|e| db.label(e)).collect();
        out.push_str(&format!("  cols: {}\n", cols.join(" ")));
        for (r, e) in cb.basis(n).iter().enumerate() {
            let bits: String = (0..m.cols())
                .map(|c| if m.get(r, c) { '1' } else { '0' })
                .collect();
            out.push_str(&format!("  {:>16} {bits}\n", cb.label(e)));
        }
    }
    out
}

/// Outcome of the per-degree injectivity scan of `f̄_i^*`, `ḡ_i^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityFailure {
    pub d: u32,
    pub i: u32,
    pub map: &'static str,
    pub degree: usize,
    pub rank: usize,
    pub source_dim: usize,
}

/// Checks that every cohomology matrix of `map_f(i,d)` and `map_g(i,d)` has
/// full column rank up to `max_degree`.
pub fn injectivity_failures(d: u32, max_degree: usize) -> Result<Vec<InjectivityFailure>, Error> {
    let mut out = Vec::new();
    for i in 0..d {
        for (name, map) in [("f", map_f(i, d, max_degree)?), ("g", map_g(i, d, max_degree)?)] {
            let coh = map.cohomology();
            for n in 0..=coh.max_degree() {
                let rank = coh.rank(n);
                if rank != coh.source_dim(n) {
                    out.push(InjectivityFailure {
                        d,
                        i,
                        map: name,
                        degree: n,
                        rank,
                        source_dim: coh.source_dim(n),
                    });
                }
            }
        }
    }
    Ok(out)
}
