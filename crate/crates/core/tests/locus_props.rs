//! Property tests for singular loci, the family F_a and the map g.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;

use cuspdef::singularity::{self, DeformationPoint, Mode, SingularityClass};
use cuspdef::verifier::{self, FaParameters};
use cuspdef::Cyclo;

fn small() -> impl Strategy<Value = Cyclo> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(a, b, c, d)| Cyclo::from_ratios(a, b, c, d))
}

/// sigma = 0 with mu = 3a^2, nu = 3b^2 so that the exact solver always applies.
fn sigma_zero() -> impl Strategy<Value = DeformationPoint> {
    (small(), small(), small(), any::<bool>()).prop_map(|(a, b, l, through)| {
        let three = Cyclo::from_int(3);
        let (m, n) = (&three * &(&a * &a), &three * &(&b * &b));
        let l = if through { (&(&Cyclo::from_int(2) * &(&n * &b)) - &(&Cyclo::from_int(2) * &(&m * &a))) / three } else { l };
        DeformationPoint::exact(l, m, n, Cyclo::zero())
    })
}

/// sigma != 0 with a critical point at (0, y0, 0, w0).
fn through_point() -> impl Strategy<Value = DeformationPoint> {
    (small(), small(), small()).prop_filter("sigma != 0", |(s, _, _)| !s.is_zero()).prop_map(|(s, y0, w0)| {
        let three = Cyclo::from_int(3);
        let two = Cyclo::from_int(2);
        let m = &(&three * &(&y0 * &y0)) - &(&s * &w0);
        let n = &(&three * &(&w0 * &w0)) + &(&s * &y0);
        let l = -(&(&(&(&s * &y0) * &w0) + &(&two * &(&m * &y0))) - &(&two * &(&n * &w0))) / three;
        DeformationPoint::exact(l, m, n, s)
    })
}

fn complex_params() -> impl Strategy<Value = [Complex64; 4]> {
    prop::array::uniform4((-3.0f64..3.0, -3.0f64..3.0)).prop_map(|a| a.map(|(re, im)| Complex64::new(re, im)))
}

fn dist(a: &[Complex64; 4], b: &[Complex64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn at_most_two_on_s(p in sigma_zero()) {
        let [_, m, n, _] = p.as_exact().unwrap();
        let pts = singularity::singular_locus(&p, Mode::Exact).unwrap();
        prop_assert!(pts.len() <= 2);
        let want = match (m.is_zero(), n.is_zero()) {
            (false, false) => SingularityClass::Node,
            (true, true) => SingularityClass::CA2IIxII,
            _ => SingularityClass::CA2I1xII,
        };
        for r in &pts {
            prop_assert_eq!(r.klass, want);
        }
    }

    #[test]
    fn at_most_three(p in complex_params()) {
        let pts = singularity::singular_locus_numeric(p).unwrap();
        prop_assert!(pts.len() <= 3);
    }

    #[test]
    fn exact_and_numeric_agree(p in through_point()) {
        let exact = match singularity::singular_locus(&p, Mode::Exact) {
            Ok(v) => v,
            Err(_) => return Ok(()),
        };
        prop_assert!(!exact.is_empty());
        let numeric = singularity::singular_locus(&p, Mode::Numeric).unwrap();
        prop_assert_eq!(exact.len(), numeric.len());
        let a: Vec<[Complex64; 4]> = exact.iter().map(|r| r.coords.to_complex().unwrap()).collect();
        let b: Vec<[Complex64; 4]> = numeric.iter().map(|r| r.coords.to_complex().unwrap()).collect();
        prop_assert!(verifier::max_distance(&a, &b).unwrap() < 1e-8);
        for (r, pa) in exact.iter().zip(&a) {
            let nearest = numeric
                .iter()
                .zip(&b)
                .min_by(|x, y| dist(pa, x.1).total_cmp(&dist(pa, y.1)))
                .unwrap();
            prop_assert_eq!(r.klass, nearest.0.klass);
        }
    }

    #[test]
    fn fa_distinct_iff_off_plane(b in small(), g in small(), a in small(), on in any::<bool>()) {
        let a = if on { -(&(&Cyclo::eps() * &b) + &(&Cyclo::eps_pow(2) * &g)) } else { a };
        let p = FaParameters::exact(a, b, g);
        let pts = verifier::fa_singular_points(&p).unwrap();
        prop_assert_eq!(pts.len() == 3, !p.s().as_constant().unwrap().is_zero());
    }

    #[test]
    fn g_lands_on_c(a in small(), b in small(), g in small(), k in small()) {
        prop_assume!(!k.is_zero());
        let p = FaParameters::exact_full(a, b, g, Cyclo::zero(), Cyclo::zero(), k);
        let img = verifier::map_g(&p).unwrap();
        let [l, m, n, s] = img.point.as_exact().unwrap();
        prop_assert_eq!(s.pow(3), &Cyclo::from_int(27) * &l);
        prop_assert!(m.is_zero() && n.is_zero());
        let fiber = singularity::singular_locus(&img.point, Mode::Exact).unwrap();
        if s.is_zero() {
            prop_assert_eq!(fiber.len(), 1);
        } else {
            prop_assert_eq!(fiber.len(), 3);
            prop_assert!(fiber.iter().all(|r| r.klass == SingularityClass::Node));
        }
    }

    /// Roots found by Aberth iteration are eigenvalues of the companion matrix.
    #[test]
    fn roots_match_companion_eigenvalues(c in prop::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 2..6)) {
        let mut coeffs: Vec<Complex64> = c.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        coeffs.push(Complex64::new(1.0, 0.0));
        let n = coeffs.len() - 1;
        let roots = cuspdef::numeric::aberth_roots(&coeffs);
        prop_assert_eq!(roots.len(), n);
        let companion = DMatrix::from_fn(n, n, |i, j| {
            if j == n - 1 { -coeffs[i] } else if i == j + 1 { Complex64::new(1.0, 0.0) } else { Complex64::zero() }
        });
        let eig = companion.eigenvalues().unwrap();
        for r in &roots {
            let d = eig.iter().map(|e| (e - r).norm()).fold(f64::INFINITY, f64::min);
            prop_assert!(d < 1e-5 * (1.0 + r.norm()), "root {} has no eigenvalue nearby ({:e})", r, d);
        }
    }
}
