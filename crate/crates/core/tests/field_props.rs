//! Algebraic invariants of Q(eps) and of sparse polynomials over it.

use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cuspdef::poly::univariate_division;
use cuspdef::{Cyclo, Polynomial, VarTable};

fn cyclo() -> impl Strategy<Value = Cyclo> {
    (-40i64..40, 1i64..12, -40i64..40, 1i64..12).prop_map(|(a, b, c, d)| Cyclo::from_ratios(a, b, c, d))
}

fn nonzero() -> impl Strategy<Value = Cyclo> {
    cyclo().prop_filter("nonzero", |c| !c.is_zero())
}

/// Polynomials in x, y, z with small exponents.
fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(((0i32..4, 0i32..3, 0i32..3), cyclo()), 0..6).prop_map(|terms| {
        let t = VarTable::new(["x", "y", "z"]).unwrap();
        terms.into_iter().fold(Polynomial::zero(&t), |acc, ((a, b, c), k)| {
            let m = cuspdef::Monomial::new(vec![a, b, c]);
            &acc + &Polynomial::monomial(&t, m, k)
        })
    })
}

fn near(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-9 * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ring_axioms(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Cyclo::zero());
        prop_assert_eq!(&a * &Cyclo::one(), a);
    }

    #[test]
    fn inverses(a in nonzero()) {
        let inv = a.inv().unwrap();
        prop_assert_eq!(&a * &inv, Cyclo::one());
        prop_assert!(Cyclo::zero().inv().is_err());
    }

    #[test]
    fn norm_is_multiplicative(a in cyclo(), b in cyclo()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        prop_assert_eq!(Cyclo::from_rational(a.norm()), &a * &a.conj());
    }

    #[test]
    fn embedding_is_a_homomorphism(a in cyclo(), b in cyclo()) {
        prop_assert!(near((&a * &b).to_complex(), a.to_complex() * b.to_complex()));
        prop_assert!(near((&a + &b).to_complex(), a.to_complex() + b.to_complex()));
    }

    #[test]
    fn display_round_trip(a in cyclo()) {
        let back: Cyclo = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn square_roots(a in cyclo()) {
        let sq = &a * &a;
        let r = sq.sqrt().unwrap();
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn poly_display_round_trip(p in poly()) {
        let back = p.table().parse(&p.to_string()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn poly_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
    }

    #[test]
    fn product_rule(p in poly(), q in poly()) {
        let d = |f: &Polynomial| f.derivative("x").unwrap();
        prop_assert_eq!(d(&(&p * &q)), &(&d(&p) * &q) + &(&p * &d(&q)));
    }

    #[test]
    fn evaluation_matches_embedding(p in poly(), x in cyclo(), y in cyclo(), z in cyclo()) {
        let exact = p.eval(&[("x", x.clone()), ("y", y.clone()), ("z", z.clone())]).unwrap();
        let approx = p.eval_complex(&[x.to_complex(), y.to_complex(), z.to_complex()]);
        prop_assert!(near(exact.to_complex(), approx));
    }

    #[test]
    fn division_identity(p in poly(), q in poly(), c in nonzero(), k in 1i32..4) {
        // monic-in-x divisor, so the leading coefficient is a unit
        let t = p.table().clone();
        let lead = Polynomial::monomial(&t, cuspdef::Monomial::new(vec![k, 0, 0]), c);
        let low: Polynomial = Polynomial::from_terms(&t, q.terms().filter(|(m, _)| m.exponent(0) < k).map(|(m, c)| (m.clone(), c.clone())));
        let g = &lead + &low;
        let (quo, rem) = univariate_division(&p, &g, "x").unwrap();
        prop_assert_eq!(&(&quo * &g) + &rem, p);
        prop_assert!(rem.degree_in(0).unwrap_or(0) < k);
    }
}
