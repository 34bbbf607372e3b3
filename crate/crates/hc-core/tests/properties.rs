//! Property-based checks of the algebraic laws the exact types must satisfy:
//! ring axioms for radial forms and polynomials, the Leibniz rule for
//! derivatives, and evaluation homomorphisms at rational points.

use hc_core::radial::RadialForm;
use hc_core::scalar::{ExactScalar, Rat};
use hc_core::special::{Poly1, Var};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=9).prop_map(|(num, den)| Rat::new(num.into(), den.into()))
}

fn positive_rat_strategy() -> impl Strategy<Value = Rat> {
    (1i64..=9, 1i64..=9).prop_map(|(num, den)| Rat::new(num.into(), den.into()))
}

fn scalar_strategy() -> impl Strategy<Value = ExactScalar> {
    (rat_strategy(), rat_strategy()).prop_map(|(re, im)| ExactScalar::new(re, im))
}

/// Sum of up to three monomials in three coordinates with small exponents.
/// Such forms stay in the plain polynomial ring, where every operation below
/// is total.
fn form_strategy() -> impl Strategy<Value = RadialForm> {
    prop::collection::vec((prop::array::uniform3(0u16..=2), scalar_strategy()), 1..=3).prop_map(
        |terms| {
            let mut acc = RadialForm::zero(3);
            for (powers, coeff) in terms {
                let mono = RadialForm::monomial(3, &powers, coeff).unwrap();
                acc = acc.try_add(&mono).unwrap();
            }
            acc
        },
    )
}

fn poly_strategy() -> impl Strategy<Value = Poly1> {
    prop::collection::vec(scalar_strategy(), 1..=4)
        .prop_map(|coeffs| Poly1::from_coeffs(Var::R, coeffs))
}

fn point_strategy() -> impl Strategy<Value = [Rat; 3]> {
    prop::array::uniform3(rat_strategy())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn form_multiplication_distributes_over_addition(
        a in form_strategy(),
        b in form_strategy(),
        c in form_strategy(),
    ) {
        let lhs = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let rhs = a
            .try_mul(&b)
            .unwrap()
            .try_add(&a.try_mul(&c).unwrap())
            .unwrap();
        prop_assert!(lhs.try_sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn derivative_satisfies_product_rule(
        a in form_strategy(),
        b in form_strategy(),
        axis in 0usize..3,
    ) {
        let lhs = a.try_mul(&b).unwrap().derivative(axis).unwrap();
        let rhs = a
            .derivative(axis)
            .unwrap()
            .try_mul(&b)
            .unwrap()
            .try_add(&a.try_mul(&b.derivative(axis).unwrap()).unwrap())
            .unwrap();
        prop_assert!(lhs.try_sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn laplacian_is_additive(a in form_strategy(), b in form_strategy()) {
        let lhs = a.try_add(&b).unwrap().laplacian().unwrap();
        let rhs = a
            .laplacian()
            .unwrap()
            .try_add(&b.laplacian().unwrap())
            .unwrap();
        prop_assert!(lhs.try_sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn evaluation_is_multiplicative(
        a in form_strategy(),
        b in form_strategy(),
        point in point_strategy(),
    ) {
        let product = a.try_mul(&b).unwrap().eval_even_exact(&point).unwrap();
        let separate =
            a.eval_even_exact(&point).unwrap() * b.eval_even_exact(&point).unwrap();
        prop_assert!((product - separate).is_zero());
    }

    #[test]
    fn coordinate_scaling_composes(
        a in form_strategy(),
        s in positive_rat_strategy(),
        t in positive_rat_strategy(),
    ) {
        let two_steps = a
            .scale_coordinates(&s)
            .unwrap()
            .scale_coordinates(&t)
            .unwrap();
        let one_step = a.scale_coordinates(&(s.clone() * t.clone())).unwrap();
        prop_assert!(two_steps.try_sub(&one_step).unwrap().is_zero());
    }

    #[test]
    fn polynomials_distribute_and_evaluate_homomorphically(
        p in poly_strategy(),
        q in poly_strategy(),
        r in poly_strategy(),
        x in scalar_strategy(),
    ) {
        let lhs = p.add(&q).mul(&r);
        let rhs = p.mul(&r).add(&q.mul(&r));
        prop_assert!(lhs.sub(&rhs).is_zero());

        let at_once = p.mul(&q).eval(&x);
        let separately = p.eval(&x) * q.eval(&x);
        prop_assert!((at_once - separately).is_zero());
    }

    #[test]
    fn unit_power_is_periodic(k in -1000i64..1000) {
        let direct = ExactScalar::i_pow(k);
        let reduced = ExactScalar::i_pow(k.rem_euclid(4));
        prop_assert!((direct - reduced).is_zero());
    }
}
