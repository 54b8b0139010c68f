mod common;

use common::*;
use gmfkit_core::f2::{BitMatrix, GradedMap};
use gmfkit_core::jet::{classify, spectral_split};
use gmfkit_core::series::PoincareSeries;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn series_strategy() -> impl Strategy<Value = PoincareSeries> {
    (-3i64..3, prop::collection::vec(0u64..50, 1..12))
        .prop_map(|(min, c)| PoincareSeries::from_u64(min, min + c.len() as i64 - 1, &c))
}

fn matrix_strategy() -> impl Strategy<Value = BitMatrix> {
    (1usize..20, 0usize..90).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(0u8..2, c), r)
            .prop_map(move |rows| if c == 0 { BitMatrix::zeros(r, 0) } else { BitMatrix::from_rows(&rows) })
    })
}

proptest! {
    #[test]
    fn mul_commutes(a in series_strategy(), b in series_strategy()) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn mul_associates(a in series_strategy(), b in series_strategy(), c in series_strategy()) {
        let l = a.mul(&b).mul(&c);
        let r = a.mul(&b.mul(&c));
        let n = l.truncation().min(r.truncation());
        prop_assert_eq!(l.truncate(n), r.truncate(n));
    }

    #[test]
    fn add_then_shift_distributes(a in series_strategy(), b in series_strategy(), k in -4i64..4) {
        prop_assert_eq!(a.add(&b).shift(k), a.shift(k).add(&b.shift(k)));
    }

    #[test]
    fn rank_nullity(ms in prop::collection::vec(matrix_strategy(), 1..4)) {
        let g = GradedMap::new(ms);
        for n in 0..g.matrices().len() {
            prop_assert_eq!(g.kernel_dim(n) + g.rank(n), g.source_dim(n));
            prop_assert_eq!(g.cokernel_dim(n) + g.rank(n), g.target_dim(n));
            prop_assert_eq!(g.transpose().rank(n), g.rank(n));
        }
    }

    #[test]
    fn classify_is_orthogonally_invariant(seed in any::<u64>(), d in 1usize..=5, t in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let target = [Target::Regular, Target::Morse, Target::BirthDeath, Target::CubicVanishes, Target::KernelTwo][t];
        let jet = stratified_jet(&mut rng, d, target);
        let u = random_orthogonal(&mut rng, d);
        let moved = jet.linear_change(&u).unwrap();
        prop_assert_eq!(classify(&jet, TOL).unwrap(), classify(&moved, TOL).unwrap());
        let a = spectral_split(jet.quadratic(), d, TOL).unwrap();
        let b = spectral_split(moved.quadratic(), d, TOL).unwrap();
        prop_assert_eq!((a.neg_dim, a.zero_dim, a.pos_dim), (b.neg_dim, b.zero_dim, b.pos_dim));
    }

    #[test]
    fn split_basis_is_orthonormal_and_diagonalizing(seed in any::<u64>(), d in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let jet = stratified_jet(&mut rng, d, Target::Regular);
        let s = spectral_split(jet.quadratic(), d, TOL).unwrap();
        for a in 0..d {
            for b in 0..d {
                let ca = s.column(a);
                let cb = s.column(b);
                let dot: f64 = ca.iter().zip(&cb).map(|(x, y)| x * y).sum();
                let delta = if a == b { 1.0 } else { 0.0 };
                prop_assert!((dot - delta).abs() <= 1e-9);
                let mut qb = vec![0.0; d];
                for i in 0..d {
                    for j in 0..d {
                        qb[i] += jet.quadratic_entry(i, j) * cb[j];
                    }
                }
                let v: f64 = ca.iter().zip(&qb).map(|(x, y)| x * y).sum();
                if a != b {
                    prop_assert!(v.abs() <= 1e-9 * 10.0);
                }
            }
        }
    }
}
