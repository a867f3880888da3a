//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p qgenocchi --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use qgenocchi::analytic::{
    default_q_schedule, generating_check, hurwitz_limit_check, qzeta, series_number_check,
    ZetaParams,
};
use qgenocchi::genocchi::{
    check_boundary, check_euler_boundary, check_euler_recurrence, check_multiplication, check_tail,
    genocchi_polynomial_in_y, EulerForm,
};
use qgenocchi::padic::{witt_check, PadicQ};
use qgenocchi::scalar::{int, ratio};
use qgenocchi::series::{classical_genocchi_table, series_genocchi};
use qgenocchi::{Orientation, PolyArgument, QPoint, WeightPair};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: Vec<String>, checked: usize) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{checked} cases")
        } else {
            let shown: Vec<_> = failures.iter().take(3).cloned().collect();
            format!(
                "{} of {checked} cases failed; first: {}",
                failures.len(),
                shown.join("; ")
            )
        };
        Outcome { passed, detail }
    }
}

/// Name, check and optional wall-clock budget.
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn q_grid() -> Vec<QPoint> {
    [(1, 2), (1, 3), (2, 3), (3, 5)]
        .iter()
        .map(|&(a, b)| QPoint::new(ratio(a, b)).unwrap())
        .collect()
}

fn weights(max: u32) -> Vec<WeightPair> {
    let mut out = Vec::new();
    for a in 1..=max {
        for b in 1..=max {
            out.push(WeightPair::new(a, b).unwrap());
        }
    }
    out
}

fn boundary() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in q_grid() {
        for w in weights(3) {
            for n in 0..=20 {
                checked += 1;
                let r = check_boundary(n, w, &q);
                if !r.holds {
                    failures.push(format!("q = {q}, w = {w}, n = {n}"));
                }
            }
        }
    }
    Outcome::new(failures, checked)
}

fn tail() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut erratum_points = 0;
    for q in q_grid() {
        for w in weights(3) {
            let mut printed_fails_even = false;
            for m in 0..=10 {
                for n in 1..=9 {
                    checked += 1;
                    match check_tail(m, n, w, &q, Orientation::Lemma) {
                        Ok(r) if r.holds => {}
                        _ => failures.push(format!("q = {q}, w = {w}, m = {m}, n = {n}")),
                    }
                    if n % 2 == 0 {
                        let printed = check_tail(m, n, w, &q, Orientation::AsPrinted).unwrap();
                        printed_fails_even |= !printed.holds;
                    }
                }
            }
            if printed_fails_even {
                erratum_points += 1;
            } else {
                failures.push(format!(
                    "printed orientation holds for all even n at q = {q}, w = {w}"
                ));
            }
        }
    }
    let mut out = Outcome::new(failures, checked);
    out.detail.push_str(&format!(
        ", printed orientation erratum-expected at {erratum_points} grid points"
    ));
    out
}

fn multiplication() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for q in q_grid() {
        for w in weights(3) {
            for d in [1, 3, 5] {
                for n in 1..=10 {
                    for k in 0..=2 {
                        checked += 1;
                        let arg = PolyArgument::at_integer(k, &q);
                        match check_multiplication(n, d, w, &q, &arg) {
                            Ok(r) if r.holds => {}
                            _ => failures
                                .push(format!("q = {q}, w = {w}, d = {d}, n = {n}, y = q^{k}")),
                        }
                    }
                }
            }
        }
    }
    Outcome::new(failures, checked)
}

fn classical_limit() -> Outcome {
    let table = classical_genocchi_table(12);
    let mut failures = Vec::new();
    let mut checked = 0;
    for (n, expected) in [(6, -3), (8, 17), (12, 2073)] {
        if table[n] != int(expected) {
            failures.push(format!("oracle G_{n} = {}", table[n]));
        }
    }
    for w in weights(3) {
        for n in 0..=12u64 {
            checked += 1;
            let constant = series_genocchi(n, w, n as usize + 2).and_then(|s| {
                s.constant_term()
                    .ok_or(qgenocchi::Error::PrecisionExhausted)
            });
            match constant {
                Ok(c) if c == table[n as usize] => {}
                Ok(c) => failures.push(format!("w = {w}, n = {n}: {c}")),
                Err(e) => failures.push(format!("w = {w}, n = {n}: {e}")),
            }
        }
    }
    Outcome::new(failures, checked)
}

fn witt() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (p, max_level) in [(3u64, 6u32), (5, 4), (7, 4)] {
        let q = PadicQ::new(int(1 + p as i64), p).unwrap();
        for w in weights(2) {
            for n in 0..=6 {
                checked += 1;
                match witt_check(n, w, &q, max_level + 2, max_level) {
                    Ok(r) if r.passed => {}
                    Ok(r) => {
                        let v: Vec<String> =
                            r.rows.iter().map(|row| row.valuation.to_string()).collect();
                        failures.push(format!("p = {p}, w = {w}, n = {n}: v = [{}]", v.join(", ")));
                    }
                    Err(e) => failures.push(format!("p = {p}, w = {w}, n = {n}: {e}")),
                }
            }
        }
    }
    Outcome::new(failures, checked)
}

fn interpolation() -> Outcome {
    let q = QPoint::new(ratio(1, 2)).unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in weights(2) {
        for n in 0..=6u64 {
            let poly = genocchi_polynomial_in_y(n + 1, w, &q);
            for x in [1.0, 2.0, 0.5] {
                checked += 1;
                let expected = poly.evaluate_f64(0.5f64.powf(x)).unwrap() / (n as f64 + 1.0);
                let params = ZetaParams::new(Complex64::new(-(n as f64), 0.0), x, w, 0.5).unwrap();
                let value = qzeta(&params, 1e-15).unwrap();
                let err = (value - expected).norm() / expected.abs().max(1.0);
                if err > 1e-10 {
                    failures.push(format!("w = {w}, n = {n}, x = {x}: error {err:e}"));
                }
            }
        }
    }
    Outcome::new(failures, checked)
}

fn abel() -> Outcome {
    let q = QPoint::new(ratio(1, 2)).unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in weights(2) {
        for n in 0..=5 {
            checked += 1;
            match series_number_check(n, w, &q, 1e-6) {
                Ok(r) if r.holds => {}
                Ok(r) => failures.push(format!("w = {w}, n = {n}: {r}")),
                Err(e) => failures.push(format!("w = {w}, n = {n}: {e}")),
            }
        }
    }
    Outcome::new(failures, checked)
}

fn hurwitz() -> Outcome {
    let target = std::f64::consts::PI.powi(2) / 6.0;
    match hurwitz_limit_check(Complex64::new(2.0, 0.0), 1.0, &default_q_schedule(), 1e-6) {
        Ok(r) => {
            let error = (r.lhs - target).norm();
            Outcome {
                passed: r.holds && error <= 1e-6,
                detail: format!("extrapolated {:.12}, |error| = {error:e}", r.lhs.re),
            }
        }
        Err(e) => Outcome {
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn q_euler() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut printed_residuals = Vec::new();
    for q in q_grid() {
        for n in 0..=12 {
            checked += 1;
            if !check_euler_boundary(n, &q).holds {
                failures.push(format!("q = {q}, n = {n}"));
            }
            if !check_euler_recurrence(n, &q, EulerForm::Derived).holds {
                failures.push(format!("derived recurrence, q = {q}, n = {n}"));
            }
        }
        let printed = check_euler_recurrence(2, &q, EulerForm::AsPrinted);
        printed_residuals.push(format!("q = {q}: {}", printed.residual));
    }
    let mut out = Outcome::new(failures, checked);
    out.detail.push_str(&format!(
        ", printed recurrence erratum-expected (k = 2 residuals {})",
        printed_residuals.join(", ")
    ));
    out
}

fn generating() -> Outcome {
    let q = QPoint::new(ratio(1, 2)).unwrap();
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in [0, 1] {
        checked += 1;
        let arg = PolyArgument::at_integer(x, &q);
        match generating_check(0.1, &arg, WeightPair::unit(), &q, 8, 1e-8) {
            Ok(r) if r.holds => {}
            Ok(r) => failures.push(format!("x = {x}: {r}")),
            Err(e) => failures.push(format!("x = {x}: {e}")),
        }
    }
    Outcome::new(failures, checked)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("boundary identity", boundary, Some(Duration::from_secs(10))),
        ("tail identity", tail, Some(Duration::from_secs(30))),
        (
            "multiplication theorem",
            multiplication,
            Some(Duration::from_secs(60)),
        ),
        ("classical limit", classical_limit, None),
        ("Witt formula", witt, Some(Duration::from_secs(300))),
        ("zeta interpolation", interpolation, None),
        ("Abel sum vs closed form", abel, None),
        ("Hurwitz-Euler limit", hurwitz, None),
        ("q-Euler consistency", q_euler, None),
        ("generating function", generating, None),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed > *limit {
                outcome.passed = false;
                outcome
                    .detail
                    .push_str(&format!(", exceeded {}s budget", limit.as_secs()));
            }
        }
        if !outcome.passed {
            failed += 1;
        }
        println!(
            "{} {:>2}. {name}: {} ({:.2}s)",
            if outcome.passed { "PASS" } else { "FAIL" },
            i + 1,
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
