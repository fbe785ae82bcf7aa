use proptest::prelude::*;

use sds::algebra::{FieldElement, FiniteField};
use sds::designs::{verify_sds, Strictness};
use sds::groupring::{GroupRingElement, SignedSet};
use sds::groups::{char_sum, character_sums, coefficients_from_characters, AbelianGroup};
use sds::sequences::{autocorrelation_all, is_two_level, sequence_from_sds};

fn shape() -> impl Strategy<Value = Vec<u64>> {
    prop::sample::select(vec![
        vec![5],
        vec![8],
        vec![12],
        vec![2, 2],
        vec![3, 3],
        vec![2, 6],
        vec![4, 4],
        vec![3, 9],
        vec![2, 2, 2, 2],
        vec![27],
    ])
}

fn element_pair() -> impl Strategy<Value = (GroupRingElement, GroupRingElement)> {
    shape().prop_flat_map(|orders| {
        let v: usize = orders.iter().product::<u64>() as usize;
        (
            prop::collection::vec(-3i64..=3, v),
            prop::collection::vec(-3i64..=3, v),
        )
            .prop_map(move |(a, b)| {
                let g = AbelianGroup::new(&orders).unwrap();
                (
                    GroupRingElement::new(g.clone(), a).unwrap(),
                    GroupRingElement::new(g, b).unwrap(),
                )
            })
    })
}

fn signed_set_over_zv() -> impl Strategy<Value = SignedSet> {
    (5u64..=50).prop_flat_map(|v| {
        prop::collection::vec(-1i64..=1, v as usize).prop_map(move |c| {
            let g = AbelianGroup::cyclic(v).unwrap();
            GroupRingElement::new(g, c)
                .unwrap()
                .to_signed_set()
                .unwrap()
        })
    })
}

fn field() -> impl Strategy<Value = FiniteField> {
    prop::sample::select(vec![
        (2u64, 3usize),
        (3, 2),
        (5, 2),
        (7, 1),
        (3, 4),
        (2, 5),
        (13, 1),
    ])
    .prop_map(|(p, n)| FiniteField::new(p, n).unwrap())
}

proptest! {
    #[test]
    fn frobenius_is_additive(f in field(), a in 0usize..1000, b in 0usize..1000) {
        let x = FieldElement(a % f.order());
        let y = FieldElement(b % f.order());
        let p = f.p();
        prop_assert_eq!(f.pow(f.add(x, y), p), f.add(f.pow(x, p), f.pow(y, p)));
    }

    #[test]
    fn characters_are_multiplicative((a, b) in element_pair(), pick in 0usize..1000) {
        let group = a.group().clone();
        let chi = group.character(pick % group.order());
        let ab = a.convolve(&b).unwrap();
        let lhs = char_sum(&chi, &ab);
        let rhs = char_sum(&chi, &a).mul(&char_sum(&chi, &b)).unwrap();
        prop_assert_eq!(lhs.coeffs(), rhs.coeffs());
    }

    #[test]
    fn involution_is_antimultiplicative((a, b) in element_pair()) {
        let ab = a.convolve(&b).unwrap();
        prop_assert_eq!(ab.involution(), a.involution().convolve(&b.involution()).unwrap());
    }

    #[test]
    fn identity_coefficient_is_size((a, _) in element_pair()) {
        prop_assert_eq!(a.autocorrelate().coeff(0), a.coeffs().iter().map(|c| c * c).sum::<i64>());
    }

    #[test]
    fn inverse_formula_round_trip((a, _) in element_pair()) {
        let back = coefficients_from_characters(&character_sums(&a), a.group()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn transform_matches_single_sums((a, _) in element_pair(), pick in 0usize..1000) {
        let idx = pick % a.group().order();
        let all = character_sums(&a);
        let one = char_sum(&a.group().character(idx), &a);
        prop_assert_eq!(all[idx].coeffs(), one.coeffs());
    }

    #[test]
    fn autocorrelation_is_group_ring_coefficient(d in signed_set_over_zv()) {
        let s = sequence_from_sds(&d).unwrap();
        // direct double sum as the oracle
        let v = s.period();
        let sym = s.symbols();
        let e = d.to_ring().autocorrelate();
        for tau in 0..v {
            let direct: i64 = (0..v).map(|i| (sym[(i + tau) % v] * sym[i]) as i64).sum();
            prop_assert_eq!(direct, e.coeff(tau));
        }
        prop_assert_eq!(autocorrelation_all(&s), e.coeffs().to_vec());
        let lm1 = verify_sds(&d.to_ring(), Strictness::Strict).is_ok_and(|p| p.lambda == -1);
        prop_assert_eq!(is_two_level(&s), lm1);
    }
}
