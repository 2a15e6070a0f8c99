use isingser_core::fitting::{self, FitError, Poly};
use isingser_core::rational::{self, Rational};
use proptest::prelude::*;

/// Plain evaluation by powers, independent of the library's Horner form.
fn eval_by_powers(coeffs: &[Rational], n: i64) -> Rational {
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * rational::pow_i64(&rational::int(n), k as i64))
        .sum()
}

fn coeffs() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((-12i64..=12, 1i64..=6).prop_map(|(p, q)| rational::frac(p, q)), 1..6)
        .prop_filter("nonzero leading", |c| !c.last().unwrap().eq(&rational::int(0)))
}

proptest! {
    #[test]
    fn sampled_polynomials_are_recovered(c in coeffs(), extra in 1usize..4, start in -3i64..3) {
        let degree = c.len() - 1;
        let pts: Vec<(i64, Rational)> = (0..(degree + 1 + extra) as i64)
            .map(|i| (start + i, eval_by_powers(&c, start + i)))
            .collect();
        prop_assume!(pts.len() >= 3);
        let fit = fitting::fit_minimal_polynomial(&pts).unwrap();
        prop_assert_eq!(&fit.poly, &Poly::new(c.clone()));
        prop_assert_eq!(fit.degree, degree);
        prop_assert_eq!(fit.surplus(), extra);
        prop_assert!(fit.surplus_residuals.iter().all(|r| *r == rational::int(0)));
    }

    #[test]
    fn display_parses_back(c in coeffs()) {
        let p = Poly::new(c);
        prop_assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn shuffled_points_fit_the_same(c in coeffs(), seed in any::<u64>()) {
        let mut pts: Vec<(i64, Rational)> = (1..=8).map(|n| (n, eval_by_powers(&c, n))).collect();
        let sorted = fitting::fit_minimal_polynomial(&pts).unwrap();
        let len = pts.len();
        for i in 0..len {
            pts.swap(i, (seed as usize).wrapping_add(i * 7) % len);
        }
        prop_assert_eq!(fitting::fit_minimal_polynomial(&pts).unwrap(), sorted);
    }
}

#[test]
fn no_fit_reports_residuals() {
    // 2^n is not polynomial
    let pts: Vec<(i64, Rational)> = (1..=6).map(|n| (n, rational::int(1 << n))).collect();
    match fitting::fit_minimal_polynomial(&pts) {
        Err(FitError::NoPolynomialFit { max_degree, residuals }) => {
            assert_eq!(max_degree, 4);
            assert!(!residuals.is_empty());
        }
        other => panic!("expected NoPolynomialFit, got {other:?}"),
    }
}

#[test]
fn difference_and_integrality_checks() {
    let pts: Vec<(i64, Rational)> = (1..=5).map(|n| (n, rational::int(n * n))).collect();
    let fit = fitting::fit_minimal_polynomial(&pts).unwrap();
    assert!(fitting::verify_difference_identity(&fit, &Poly::parse("2n+1").unwrap()));
    assert!(!fitting::verify_difference_identity(&fit, &Poly::parse("2n").unwrap()));
    let half: Vec<(i64, Rational)> = (1..=4).map(|n| (n, rational::frac(n, 2))).collect();
    let fit = fitting::fit_minimal_polynomial(&half).unwrap();
    assert!(!fitting::verify_integrality(&fit, 10, false));
    // n(n+1) is even everywhere
    let pronic: Vec<(i64, Rational)> = (1..=4).map(|n| (n, rational::int(n * (n + 1)))).collect();
    let fit = fitting::fit_minimal_polynomial(&pronic).unwrap();
    assert!(fitting::verify_integrality(&fit, 10_000, true));
}
