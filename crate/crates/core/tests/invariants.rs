use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use tensor_atoms::bounds::theorem_ratio;
use tensor_atoms::measure::{check_identity, random_real_pattern, rng_for, round_real_pattern};
use tensor_atoms::{dim_by_counting, dim_by_product, lr_coefficients, lr_measure, PatternSampler, Weight, DEFAULT_CAP};

/// Decreasing weights of rank `n` with parts in `lo..=hi`.
fn weight(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(lo..=hi, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight::from_ints(&v).unwrap()
    })
}

fn pair(max_n: usize) -> impl Strategy<Value = (Weight, Weight)> {
    (1..=max_n).prop_flat_map(|n| (weight(n, -3, 4), weight(n, -3, 4)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dimension_formulas_agree(l in (1usize..=5).prop_flat_map(|n| weight(n, -2, 4))) {
        prop_assert_eq!(dim_by_counting(&l).unwrap(), dim_by_product(&l));
    }

    #[test]
    fn atoms_form_a_probability_measure((l, m) in pair(4)) {
        let dec = lr_measure(&l, &m).unwrap();
        prop_assert!(dec.total_mass().is_one());
        prop_assert!(dec.terms.values().all(|t| t.atom > BigRational::zero()));
        let total: BigUint = lr_coefficients(&l, &m)
            .unwrap()
            .iter()
            .map(|(nu, c)| c * dim_by_product(nu))
            .sum();
        prop_assert_eq!(total, dim_by_product(&l) * dim_by_product(&m));
    }

    #[test]
    fn coefficients_are_symmetric((l, m) in pair(4)) {
        prop_assert_eq!(lr_coefficients(&l, &m).unwrap(), lr_coefficients(&m, &l).unwrap());
    }

    #[test]
    fn shifting_relabels_atoms((l, m) in pair(3), p in -5i64..=5, s in -5i64..=5) {
        let (p, s) = (BigInt::from(p), BigInt::from(s));
        let base = lr_measure(&l, &m).unwrap().shifted(&p, &s);
        let moved = lr_measure(&l.shift(&p), &m.shift(&s)).unwrap();
        prop_assert_eq!(base.terms.len(), moved.terms.len());
        for (nu, t) in &base.terms {
            prop_assert_eq!(&moved.atom(nu), &t.atom);
        }
    }

    #[test]
    fn contragredient_keeps_ratio((l, m) in pair(4)) {
        let a = theorem_ratio(&l, &m).unwrap();
        let b = theorem_ratio(&l.contragredient(), &m.contragredient()).unwrap();
        prop_assert_eq!(a.lhs, b.lhs);
        prop_assert_eq!(a.ratio, b.ratio);
    }

    #[test]
    fn first_row_identity_holds((l, m) in pair(4)) {
        prop_assert!(check_identity(&l, &m).unwrap());
    }

    #[test]
    fn sampled_patterns_have_the_right_shape(l in (1usize..=4).prop_flat_map(|n| weight(n, -2, 4)), seed in any::<u64>()) {
        let s = PatternSampler::new(&l, DEFAULT_CAP).unwrap();
        for p in s.sample_many(8, seed).unwrap() {
            prop_assert_eq!(&p.shape(), &l);
        }
    }

    #[test]
    fn rounding_lands_on_patterns(l in (1usize..=5).prop_flat_map(|n| weight(n, -3, 5)), seed in any::<u64>()) {
        let mut rng = rng_for(seed, 0);
        let x = random_real_pattern(&l, &mut rng, 1_000_000).unwrap();
        prop_assert_eq!(&round_real_pattern(&x).unwrap().shape(), &l);
    }
}
