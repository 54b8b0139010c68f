//! Dense bit-packed matrices over `F_2`, their ranks, and graded maps.

use alloc::vec;
use alloc::vec::Vec;

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(WORD);
        BitMatrix {
            rows,
            cols,
            words,
            data: vec![0; rows * words],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from 0/1 rows. Panics if rows have unequal lengths.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v & 1 == 1);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.words + c / WORD] >> (c % WORD) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.words + c / WORD];
        if v {
            *w |= 1 << (c % WORD);
        } else {
            *w &= !(1 << (c % WORD));
        }
    }

    pub fn toggle(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / WORD] ^= 1 << (c % WORD);
    }

    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.words..(r + 1) * self.words]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for (wi, &w) in self.row_words(r).iter().enumerate() {
                let mut bits = w;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    t.set(wi * WORD + b, r, true);
                    bits &= bits - 1;
                }
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let words = self.words;
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (w, bit) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (rank..self.rows).find(|&r| m[r * words + w] & bit != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..words {
                    m.swap(p * words + k, rank * words + k);
                }
            }
            for r in (rank + 1)..self.rows {
                if m[r * words + w] & bit != 0 {
                    for k in w..words {
                        let v = m[rank * words + k];
                        m[r * words + k] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    for k in 0..out.words {
                        out.data[r * out.words + k] ^= other.data[c * other.words + k];
                    }
                }
            }
        }
        out
    }
}

/// `rank` of an `F_2` matrix.
pub fn rank_f2(m: &BitMatrix) -> usize {
    m.rank()
}

/// A bit vector of fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        if v {
            self.words[i / WORD] |= 1 << (i % WORD);
        } else {
            self.words[i / WORD] &= !(1 << (i % WORD));
        }
    }

    pub fn toggle(&mut self, i: usize) {
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(i, w)| i * WORD + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            core::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * WORD + b)
            })
        })
    }
}

/// Fully reduced echelon basis of a subspace of `F_2^n`: every basis vector
/// has a distinct pivot (its lowest set bit) and vanishes at all other
/// pivots.
#[derive(Clone, Debug)]
pub struct ReducedSpan {
    ambient: usize,
    basis: Vec<BitVec>,
    /// pivot position → index into `basis`
    pivot_of: Vec<Option<usize>>,
}

impl ReducedSpan {
    pub fn new(ambient: usize) -> Self {
        ReducedSpan {
            ambient,
            basis: Vec::new(),
            pivot_of: vec![None; ambient],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn reduce(&self, v: &mut BitVec) {
        let hits: Vec<usize> = v.ones().filter_map(|i| self.pivot_of[i]).collect();
        for b in hits {
            v.xor_assign(&self.basis[b]);
        }
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for b in &mut self.basis {
            if b.get(p) {
                b.xor_assign(&v);
            }
        }
        self.pivot_of[p] = Some(self.basis.len());
        self.basis.push(v);
        true
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_of[i].is_some()
    }

    /// Matrix of the projection `F_2^n → F_2^n / span`, with the quotient
    /// identified with the non-pivot coordinates in increasing order.
    pub fn quotient_map(&self) -> BitMatrix {
        let free: Vec<usize> = (0..self.ambient).filter(|&i| !self.is_pivot(i)).collect();
        let mut pos = vec![usize::MAX; self.ambient];
        for (k, &i) in free.iter().enumerate() {
            pos[i] = k;
        }
        let mut m = BitMatrix::zeros(free.len(), self.ambient);
        for col in 0..self.ambient {
            match self.pivot_of[col] {
                None => m.set(pos[col], col, true),
                // e_p ≡ e_p + b_p, which lives on free coordinates
                Some(b) => {
                    for i in self.basis[b].ones().filter(|&i| i != col) {
                        m.set(pos[i], col, true);
                    }
                }
            }
        }
        m
    }
}

/// Per-degree `F_2` matrices of a degree-preserving linear map, columns
/// indexed by the source basis and rows by the target basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    matrices: Vec<BitMatrix>,
}

impl GradedMap {
    pub fn new(matrices: Vec<BitMatrix>) -> Self {
        GradedMap { matrices }
    }

    pub fn identity(dims: &[usize]) -> Self {
        GradedMap::new(dims.iter().map(|&n| BitMatrix::identity(n)).collect())
    }

    pub fn max_degree(&self) -> usize {
        self.matrices.len().saturating_sub(1)
    }

    pub fn matrix(&self, n: usize) -> &BitMatrix {
        &self.matrices[n]
    }

    pub fn matrices(&self) -> &[BitMatrix] {
        &self.matrices
    }

    pub fn source_dim(&self, n: usize) -> usize {
        self.matrices[n].cols()
    }

    pub fn target_dim(&self, n: usize) -> usize {
        self.matrices[n].rows()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.matrices[n].rank()
    }

    pub fn kernel_dim(&self, n: usize) -> usize {
        self.source_dim(n) - self.rank(n)
    }

    pub fn cokernel_dim(&self, n: usize) -> usize {
        self.target_dim(n) - self.rank(n)
    }

    /// Degreewise dual.
    pub fn transpose(&self) -> Self {
        GradedMap::new(self.matrices.iter().map(BitMatrix::transpose).collect())
    }

    /// Checks that the source and target dimensions match at every degree.
    pub fn fits(&self, source: &[usize], target: &[usize]) -> bool {
        self.matrices.len() <= source.len().min(target.len())
            && self
                .matrices
                .iter()
                .enumerate()
                .all(|(n, m)| m.cols() == source[n] && m.rows() == target[n])
    }
}
