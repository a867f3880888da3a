use num_complex::Complex64;
use proptest::prelude::*;
use qgenocchi::analytic::{abel_radial_sum, default_radii, qzeta, qzeta_with_count, ZetaParams};
use qgenocchi::genocchi::genocchi_polynomial_in_y;
use qgenocchi::scalar::{int, ratio, to_f64};
use qgenocchi::{QPoint, WeightPair};

#[test]
fn interpolates_polynomials_at_negative_integers() {
    let q = QPoint::new(ratio(1, 2)).unwrap();
    for a in 1..=2 {
        for b in 1..=2 {
            let w = WeightPair::new(a, b).unwrap();
            for n in 0..=6u64 {
                let poly = genocchi_polynomial_in_y(n + 1, w, &q);
                for x in [1.0, 2.0, 0.5] {
                    let expected = poly.evaluate_f64(0.5f64.powf(x)).unwrap() / (n as f64 + 1.0);
                    let params =
                        ZetaParams::new(Complex64::new(-(n as f64), 0.0), x, w, 0.5).unwrap();
                    let z = qzeta_with_count(&params, 1e-15).unwrap();
                    assert!(z.terms <= n + 1);
                    let err = (z.value.re - expected).abs() / expected.abs().max(1.0);
                    assert!(
                        err <= 1e-10 && z.value.im == 0.0,
                        "n = {n}, x = {x}, w = {w}"
                    );
                }
            }
        }
    }
}

#[test]
fn exact_polynomial_route_for_integer_arguments() {
    let q = QPoint::new(ratio(1, 2)).unwrap();
    let w = WeightPair::new(2, 1).unwrap();
    for n in 0..=4u64 {
        for x in [1i64, 2] {
            let exact = qgenocchi::genocchi::genocchi_polynomial(
                n + 1,
                w,
                &q,
                &qgenocchi::PolyArgument::at_integer(x, &q),
            ) / int(n as i64 + 1);
            let params =
                ZetaParams::new(Complex64::new(-(n as f64), 0.0), x as f64, w, 0.5).unwrap();
            let v = qzeta(&params, 1e-15).unwrap();
            assert!((v.re - to_f64(&exact).unwrap()).abs() < 1e-12);
        }
    }
}

#[test]
fn continuation_agrees_with_abel_sum_for_large_s() {
    // xi(6, x) from the binomial series against [2] * Abel sum of (-1)^m [m+x]^(-6)
    for (x, a, b) in [(1.0, 1, 1), (0.5, 2, 1), (2.0, 1, 2)] {
        let q: f64 = 0.5;
        let w = WeightPair::new(a, b).unwrap();
        let qa = q.powi(a as i32);
        let term = move |m: u64| ((1.0 - qa.powf(m as f64 + x)) / (1.0 - qa)).powi(-6);
        let abel = abel_radial_sum(term, &default_radii(), true).unwrap();
        let direct = (1.0 + q.powi(b as i32)) * abel;
        let series = qzeta(
            &ZetaParams::new(Complex64::new(6.0, 0.0), x, w, q).unwrap(),
            1e-15,
        )
        .unwrap();
        assert!(
            (series.re - direct).abs() <= 1e-8 * direct.abs().max(1.0),
            "x = {x}: {series} vs {direct}"
        );
    }
}

#[test]
fn pairwise_grouping_is_not_abel() {
    let grouped: f64 = (0..1000).map(|m| if m % 2 == 0 { 1.0 } else { -1.0 }).sum();
    let abel = abel_radial_sum(|_| 1.0, &default_radii(), true).unwrap();
    assert_eq!(grouped, 0.0);
    assert!((abel - 0.5).abs() < 1e-12);
}

#[test]
fn term_counts_are_finite_on_an_s_grid() {
    let w = WeightPair::new(1, 2).unwrap();
    for re in [-7.5, -3.0, -0.5, 0.5, 2.0, 5.5, 12.0] {
        for im in [-10.0, 0.0, 3.0, 25.0] {
            let params = ZetaParams::new(Complex64::new(re, im), 0.75, w, 0.6).unwrap();
            let z = qzeta_with_count(&params, 1e-13).unwrap();
            assert!(z.terms < 5_000, "s = {re} + {im}i took {} terms", z.terms);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn abel_sum_of_eventually_geometric_sequences(c in -3.0f64..3.0, d in -2.0f64..2.0, rho in 0.05f64..0.8) {
        // a_m = c + d rho^m: Abel value c/2 + d/(1 + rho)
        let value = abel_radial_sum(move |m| c + d * rho.powf(m as f64), &default_radii(), true).unwrap();
        let expected = c / 2.0 + d / (1.0 + rho);
        prop_assert!((value - expected).abs() < 1e-8, "{} vs {}", value, expected);
    }

    #[test]
    fn qzeta_is_continuous_in_s(re in -4.0f64..6.0, im in -3.0f64..3.0) {
        let w = WeightPair::unit();
        let at = |s: Complex64| qzeta(&ZetaParams::new(s, 1.0, w, 0.5).unwrap(), 1e-15).unwrap();
        let s = Complex64::new(re, im);
        let h = Complex64::new(1e-7, 0.0);
        prop_assert!((at(s + h) - at(s)).norm() < 1e-4 * at(s).norm().max(1.0));
    }
}
