use proptest::prelude::*;

use schur_core::oracle::{apply_element, realize_element, WeightSpace, WeightVector};
use schur_core::padic::{big_b, carry_sequence, digit_at, digits, DigitVector};
use schur_core::{AlgebraContext, AlgebraElement};

fn prime() -> impl Strategy<Value = u32> {
    prop_oneof![Just(2u32), Just(3), Just(5), Just(7)]
}

/// A context plus two random elements in it.
fn element_pair() -> impl Strategy<Value = (AlgebraElement, AlgebraElement)> {
    (prime(), 0u64..30, 0u64..20).prop_flat_map(|(p, m, l2)| {
        let ctx = AlgebraContext::with_m(m, l2, p).unwrap();
        let coeffs = || prop::collection::vec(0..p, l2 as usize + 1);
        (coeffs(), coeffs()).prop_map(move |(a, b)| {
            (
                AlgebraElement::from_coeffs(ctx, a).unwrap(),
                AlgebraElement::from_coeffs(ctx, b).unwrap(),
            )
        })
    })
}

proptest! {
    #[test]
    fn multiplication_commutes((x, y) in element_pair()) {
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn one_is_the_identity((x, _) in element_pair()) {
        let one = AlgebraElement::one(*x.context());
        prop_assert_eq!(one.mul(&x).unwrap(), x.clone());
        prop_assert_eq!(x.add(&AlgebraElement::zero(*x.context())).unwrap(), x.clone());
        prop_assert!(x.scale(x.context().p() as i64).is_zero());
    }

    #[test]
    fn multiplication_distributes((x, y) in element_pair(), k in 0u64..20) {
        let z = AlgebraElement::basis(*x.context(), k);
        let lhs = x.add(&y).unwrap().mul(&z).unwrap();
        let rhs = x.mul(&z).unwrap().add(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_is_a_quotient((x, y) in element_pair(), cut in 0u64..20) {
        let cut = cut.min(x.context().lambda2());
        let whole = x.mul(&y).unwrap().truncate(cut).unwrap();
        let parts = x.truncate(cut).unwrap().mul(&y.truncate(cut).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn low_indices_form_a_subalgebra(m in 0u64..60, u in 0u32..4, seed in prop::collection::vec(0u32..3, 2 * 81)) {
        let w = 3u64.pow(u);
        let ctx = AlgebraContext::with_m(m, 2 * w + 1, 3).unwrap();
        let low = |c: &[u32]| {
            let terms: Vec<(u64, i64)> = (0..w).map(|k| (k, c[k as usize] as i64)).collect();
            AlgebraElement::from_terms(ctx, &terms)
        };
        let (a, b) = seed.split_at(81);
        let product = low(a).mul(&low(b)).unwrap();
        prop_assert!(product.support_max().is_none_or(|k| k < w));
    }

    #[test]
    fn element_json_round_trips((x, _) in element_pair()) {
        let text = serde_json::to_string(&x).unwrap();
        let back: AlgebraElement = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn digits_round_trip(a in any::<u64>(), p in prime()) {
        let d = digits(a, p).unwrap();
        prop_assert_eq!(d.value(), a);
        prop_assert_eq!(DigitVector::from_digits(d.digits().to_vec(), p).unwrap(), d.clone());
        prop_assert!(d.digits().last().is_none_or(|&top| top != 0));
    }

    #[test]
    fn carries_satisfy_the_recurrence(m in 0u64..1_000_000, g in 0u64..1_000_000, p in prime()) {
        let x = carry_sequence(m, g, p);
        for u in 0..x.len() {
            prop_assert!(x.leaving(u) <= 1);
            let lhs = digit_at(m, p, u) + digit_at(g, p, u) + x.entering(u) as u32;
            let rhs = digit_at(m + g, p, u) + p * x.leaving(u) as u32;
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(x.carries().last().copied(), Some(0));
    }

    #[test]
    fn admissible_pairs_fix_the_digits_of_m(m in 0u64..200_000, start in 0u64..100_000, p in prime()) {
        // Admissible pairs are sparse; walk down from `start` to the nearest one.
        let g = (0..=start).rev().find(|&g| big_b(m, g, p) != 0).unwrap();
        let x = carry_sequence(m, g, p);
        for u in 0..x.len() + 2 {
            let lhs = (digit_at(m + 2 * g, p, u) as i64 - 2 * digit_at(g, p, u) as i64).rem_euclid(p as i64);
            let rhs = (digit_at(m, p, u) as i64 + x.entering(u) as i64) % p as i64;
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert!(carry_sequence(m + g, g, p).is_carry_free());
    }

    #[test]
    fn element_action_matches_its_matrix(
        l1 in 0u64..6,
        l2 in 0u64..4,
        p in prop_oneof![Just(2u32), Just(3), Just(5)],
        seed in prop::collection::vec(0u32..5, 5 + 70),
    ) {
        prop_assume!(l2 <= l1);
        let ctx = AlgebraContext::new(l1, l2, p).unwrap();
        let coeffs = seed[..l2 as usize + 1].iter().map(|c| c % p).collect();
        let x = AlgebraElement::from_coeffs(ctx, coeffs).unwrap();
        let space = WeightSpace::of_partition((l1, l2)).unwrap();
        let terms: Vec<(u32, i64)> = space.basis().into_iter().zip(&seed[5..]).map(|(s, &c)| (s, c as i64)).collect();
        let v = WeightVector::from_terms(space, p, &terms).unwrap();
        prop_assert_eq!(apply_element(&x, &v).unwrap(), realize_element(&x).unwrap().apply(&v).unwrap());
    }
}
