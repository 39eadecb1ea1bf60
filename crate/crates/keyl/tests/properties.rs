//! Randomized invariants over small shapes.

use keyl::clebsch_gordan::{cg_insert, dim_ratio, dim_ratio2};
use keyl::moments::{first_moment_sum, job_rng, partial_sum, partial_sum_closed};
use keyl::partitions::donate;
use keyl::rsk::rsk_shape;
use keyl::schur_stats::{dim_hook_content, dim_weyl};
use keyl::tableaux::enumerate_ssyt;
use keyl::yor::{perm_matrix, Permutation};
use keyl::{BigRational, LegalSpectrum, Partition};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn arb_partition(max_d: usize, max_part: usize) -> impl Strategy<Value = Partition> {
    (1..=max_d).prop_flat_map(move |d| {
        proptest::collection::vec(0..=max_part, d).prop_map(move |mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).unwrap()
        })
    })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_ratios_sum_to_d(lam in arb_partition(4, 3)) {
        // V_λ ⊗ ℂ^d = ⊕_i V_{λ+e_i}.
        let d = lam.d();
        let total: BigRational = (1..=d).map(|i| dim_ratio(&lam, d, i)).sum();
        prop_assert_eq!(total, BigRational::from_integer(d.into()));
    }

    #[test]
    fn first_moment_for_random_legal_spectrum(lam in arb_partition(4, 3), seed in any::<u64>()) {
        let mut rng = job_rng(seed, 0);
        let f = LegalSpectrum::random(&lam, &mut rng).values().to_vec();
        let d = lam.d();
        for i in 1..=d {
            let rhs = BigRational::from_integer((lam.part(i) as i64 + 1 - i as i64).into()) * dim_ratio(&lam, d, i);
            prop_assert_eq!(first_moment_sum(&lam, &f, i), rhs);
        }
    }

    #[test]
    fn donate_is_legal_for_its_own_shape(lam in arb_partition(5, 4)) {
        let f: Vec<BigRational> = donate(&lam).0.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        prop_assert!(LegalSpectrum::new(&lam, f).is_ok());
    }

    #[test]
    fn partial_sums_full_and_closed(lam in arb_partition(3, 2), i in 1usize..=3, j in 1usize..=3) {
        let d = lam.d();
        prop_assume!(i <= d && j <= d);
        prop_assert_eq!(partial_sum(&lam, i, j, d, d), dim_ratio2(&lam, d, i, j));
        for s in 1..=d {
            for t in 1..=d {
                prop_assert_eq!(partial_sum(&lam, i, j, s, t), partial_sum_closed(&lam, i, j, s, t));
            }
        }
    }

    #[test]
    fn dimension_formulas_agree(lam in arb_partition(5, 3), extra in 0usize..3) {
        let d = lam.d() + extra;
        let lam = lam.with_d(d).unwrap();
        let w = dim_weyl(&lam, d).unwrap();
        prop_assert_eq!(&w, &dim_hook_content(&lam, d).unwrap());
        prop_assert_eq!(w, num_bigint::BigUint::from(enumerate_ssyt(&lam).len()));
    }

    #[test]
    fn cg_columns_are_normalized(lam in arb_partition(3, 3), pick in any::<prop::sample::Index>(), k in 1usize..=3) {
        let d = lam.d();
        prop_assume!(k <= d);
        let all = enumerate_ssyt(&lam);
        let t = &all[pick.index(all.len())];
        let total: BigRational = cg_insert(t, k).iter().map(|(_, c)| c.square()).sum();
        prop_assert!(total.is_one());
    }

    #[test]
    fn yor_is_an_orthogonal_homomorphism(pi in arb_permutation(4), sigma in arb_permutation(4), which in 0usize..5) {
        let shapes = [[4, 0, 0, 0], [3, 1, 0, 0], [2, 2, 0, 0], [2, 1, 1, 0], [1, 1, 1, 1]];
        let lam = Partition::new(shapes[which].to_vec()).unwrap();
        let a = perm_matrix::<f64>(&lam, &pi).unwrap();
        let b = perm_matrix::<f64>(&lam, &sigma).unwrap();
        let ab = perm_matrix::<f64>(&lam, &pi.compose(&sigma)).unwrap();
        prop_assert!((&a * &b - ab).norm() < 1e-12);
        let id = nalgebra::DMatrix::<f64>::identity(a.nrows(), a.nrows());
        prop_assert!((a.transpose() * &a - id).norm() < 1e-12);
    }

    #[test]
    fn rsk_shape_has_word_length(word in proptest::collection::vec(1usize..=3, 0..12)) {
        let shape = rsk_shape(&word, 3);
        prop_assert_eq!(shape.size(), word.len());
        let distinct = (1..=3).filter(|x| word.contains(x)).count();
        prop_assert!(shape.length() <= distinct);
        if word.is_empty() {
            prop_assert!(shape.rows().iter().all(|r| r.is_zero()));
        }
    }
}
