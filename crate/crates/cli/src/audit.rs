//! Identity audit suites.
//!
//! Each suite expands its grid into a list of jobs in a fixed nested order
//! (the case key), the jobs run on the rayon pool, and results are collected
//! back in that order, so output does not depend on scheduling.

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use num_complex::Complex64;
use qgenocchi::analytic::{
    default_q_schedule, generating_check, hurwitz_limit_check, qzeta, series_number_check,
    ZetaParams,
};
use qgenocchi::genocchi::{
    check_boundary, check_euler_boundary, check_euler_recurrence, check_multiplication, check_tail,
    genocchi_polynomial_in_y, EulerForm,
};
use qgenocchi::padic::{lemma1_check, witt_check, IntegrandSpec, IntegrandTerm, PadicQ};
use qgenocchi::scalar::{int, parse_rational, to_f64};
use qgenocchi::series::{classical_genocchi_table, series_genocchi};
use qgenocchi::{IdentityReport, Measure, Orientation, PolyArgument, QPoint, WeightPair};
use rayon::prelude::*;
use serde_json::Value;

use crate::grids::Grids;
use crate::row;
use crate::table::{exact, float, Row, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Boundary,
    Tail,
    Mult,
    Witt,
    Lemma1,
    Limit,
    Interp,
    Euler,
    Abel,
    Genfn,
    Hurwitz,
    All,
}

impl Suite {
    const EACH: [Suite; 11] = [
        Suite::Boundary,
        Suite::Tail,
        Suite::Mult,
        Suite::Witt,
        Suite::Lemma1,
        Suite::Limit,
        Suite::Interp,
        Suite::Euler,
        Suite::Abel,
        Suite::Genfn,
        Suite::Hurwitz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Boundary => "boundary",
            Suite::Tail => "tail",
            Suite::Mult => "mult",
            Suite::Witt => "witt",
            Suite::Lemma1 => "lemma1",
            Suite::Limit => "limit",
            Suite::Interp => "interp",
            Suite::Euler => "euler",
            Suite::Abel => "abel",
            Suite::Genfn => "genfn",
            Suite::Hurwitz => "hurwitz",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    ErratumExpected,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::ErratumExpected => "erratum-expected",
        }
    }

    fn of(holds: bool) -> Status {
        if holds {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// Command-line overrides of the default grids.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub q: Option<String>,
    pub alpha: Option<u32>,
    pub beta: Option<u32>,
    pub n_max: Option<u64>,
    pub p: Option<u64>,
    pub level: Option<u32>,
    pub precision: Option<u32>,
    pub orientation: Option<Orientation>,
    pub tol: Option<f64>,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone)]
enum Job {
    Boundary {
        q: QPoint,
        w: WeightPair,
        n: u64,
    },
    Tail {
        q: QPoint,
        w: WeightPair,
        m: u64,
        n: u64,
        orientation: Orientation,
    },
    Mult {
        q: QPoint,
        w: WeightPair,
        d: u32,
        n: u64,
        k: i64,
    },
    Witt {
        q: PadicQ,
        w: WeightPair,
        n: u32,
        precision: u32,
        level: u32,
    },
    Lemma1 {
        q: PadicQ,
        index: usize,
        f: IntegrandSpec,
        n: u64,
        beta: u32,
        level: u32,
        precision: u32,
    },
    Limit {
        w: WeightPair,
        n: u64,
    },
    Interp {
        x: String,
        w: WeightPair,
        n: u64,
        q: QPoint,
        tol: f64,
    },
    EulerBoundary {
        q: QPoint,
        n: u64,
    },
    EulerRecurrence {
        q: QPoint,
        k: u64,
        form: EulerForm,
    },
    Abel {
        q: QPoint,
        w: WeightPair,
        n: u32,
        tol: f64,
    },
    Genfn {
        q: QPoint,
        t: f64,
        x: i64,
        terms: u32,
        tol: f64,
    },
    Hurwitz {
        s: Complex64,
        x: f64,
        tol: f64,
    },
}

/// One audited case: an output row and its status.
pub struct Case {
    pub row: Row,
    pub status: Status,
}

fn weight_grid(alpha: &[u32], beta: &[u32]) -> Result<Vec<WeightPair>> {
    let mut out = Vec::new();
    for &a in alpha {
        for &b in beta {
            out.push(WeightPair::new(a, b)?);
        }
    }
    Ok(out)
}

fn parse_q(text: &str) -> Result<QPoint> {
    text.parse::<QPoint>()
        .with_context(|| format!("invalid q {text:?}"))
}

fn padic_q(text: Option<&str>, p: u64, budget: Option<u64>) -> Result<PadicQ> {
    let q = match text {
        Some(t) => parse_rational(t)?,
        None => int(1 + p as i64),
    };
    let q = PadicQ::new(q, p)?;
    Ok(match budget {
        Some(b) => q.with_budget(b),
        None => q,
    })
}

fn pick<T: Clone>(grid: &[T], over: Option<T>) -> Vec<T> {
    match over {
        Some(v) => vec![v],
        None => grid.to_vec(),
    }
}

fn jobs(suite: Suite, g: &Grids, o: &Overrides) -> Result<Vec<Job>> {
    let mut jobs = Vec::new();
    let exact_q = || -> Result<Vec<QPoint>> {
        match &o.q {
            Some(q) => Ok(vec![parse_q(q)?]),
            None => g.exact.q.iter().map(|q| parse_q(q)).collect(),
        }
    };
    let exact_w = || weight_grid(&pick(&g.exact.alpha, o.alpha), &pick(&g.exact.beta, o.beta));
    let n_max = |default: u64| o.n_max.unwrap_or(default);
    match suite {
        Suite::Boundary => {
            for q in exact_q()? {
                for w in exact_w()? {
                    for n in 0..=n_max(g.boundary.n_max) {
                        jobs.push(Job::Boundary { q: q.clone(), w, n });
                    }
                }
            }
        }
        Suite::Tail => {
            let orientations = match o.orientation {
                Some(or) => vec![or],
                None => vec![Orientation::Lemma, Orientation::AsPrinted],
            };
            for q in exact_q()? {
                for w in exact_w()? {
                    for &orientation in &orientations {
                        for m in 0..=g.tail.m_max {
                            for n in 1..=n_max(g.tail.n_max) {
                                jobs.push(Job::Tail {
                                    q: q.clone(),
                                    w,
                                    m,
                                    n,
                                    orientation,
                                });
                            }
                        }
                    }
                }
            }
        }
        Suite::Mult => {
            for q in exact_q()? {
                for w in exact_w()? {
                    for &d in &g.mult.d {
                        for n in 1..=n_max(g.mult.n_max) {
                            for &k in &g.mult.y_powers {
                                jobs.push(Job::Mult {
                                    q: q.clone(),
                                    w,
                                    d,
                                    n,
                                    k,
                                });
                            }
                        }
                    }
                }
            }
        }
        Suite::Witt => {
            let levels: Vec<(u64, u32)> = match o.p {
                Some(p) => {
                    let default = g
                        .witt
                        .primes
                        .iter()
                        .position(|&x| x == p)
                        .map_or(4, |i| g.witt.levels[i]);
                    vec![(p, o.level.unwrap_or(default))]
                }
                None => g
                    .witt
                    .primes
                    .iter()
                    .copied()
                    .zip(g.witt.levels.iter().map(|&l| o.level.unwrap_or(l)))
                    .collect(),
            };
            let q_text = if o.p.is_some() { o.q.as_deref() } else { None };
            for (p, level) in levels {
                let q = padic_q(q_text, p, o.budget)?;
                for w in weight_grid(&pick(&g.witt.alpha, o.alpha), &pick(&g.witt.beta, o.beta))? {
                    for n in 0..=n_max(g.witt.n_max) as u32 {
                        jobs.push(Job::Witt {
                            q: q.clone(),
                            w,
                            n,
                            precision: o.precision.unwrap_or(g.witt.precision),
                            level,
                        });
                    }
                }
            }
        }
        Suite::Lemma1 => {
            let p = o.p.unwrap_or(g.lemma1.prime);
            let q_text = match (&o.q, o.p) {
                (Some(q), Some(_)) => Some(q.as_str()),
                (_, Some(_)) => None,
                _ => Some(g.lemma1.q.as_str()),
            };
            let q = padic_q(q_text, p, o.budget)?;
            for (index, terms) in g.lemma1.integrands.iter().enumerate() {
                let f = IntegrandSpec::new(
                    terms
                        .iter()
                        .map(|(c, twist, base, power)| {
                            Ok(IntegrandTerm {
                                coeff: parse_rational(c)?,
                                twist: *twist,
                                base: *base,
                                power: *power,
                            })
                        })
                        .collect::<Result<Vec<_>>>()?,
                )?;
                for &beta in &pick(&g.lemma1.beta, o.beta) {
                    for n in 1..=n_max(g.lemma1.n_max) {
                        jobs.push(Job::Lemma1 {
                            q: q.clone(),
                            index,
                            f: f.clone(),
                            n,
                            beta,
                            level: o.level.unwrap_or(g.lemma1.level),
                            precision: o.precision.unwrap_or(g.lemma1.precision),
                        });
                    }
                }
            }
        }
        Suite::Limit => {
            for w in weight_grid(&pick(&g.limit.alpha, o.alpha), &pick(&g.limit.beta, o.beta))? {
                for n in 0..=n_max(g.limit.n_max) {
                    jobs.push(Job::Limit { w, n });
                }
            }
        }
        Suite::Interp => {
            let q = parse_q(o.q.as_deref().unwrap_or(&g.interp.q))?;
            for w in weight_grid(
                &pick(&g.interp.alpha, o.alpha),
                &pick(&g.interp.beta, o.beta),
            )? {
                for n in 0..=n_max(g.interp.n_max) {
                    for x in &g.interp.x {
                        jobs.push(Job::Interp {
                            x: x.clone(),
                            w,
                            n,
                            q: q.clone(),
                            tol: o.tol.unwrap_or(g.interp.tol),
                        });
                    }
                }
            }
        }
        Suite::Euler => {
            for q in exact_q()? {
                for n in 0..=n_max(g.euler.n_max) {
                    jobs.push(Job::EulerBoundary { q: q.clone(), n });
                }
                for form in [EulerForm::Derived, EulerForm::AsPrinted] {
                    for k in 0..=n_max(g.euler.n_max) {
                        jobs.push(Job::EulerRecurrence {
                            q: q.clone(),
                            k,
                            form,
                        });
                    }
                }
            }
        }
        Suite::Abel => {
            let q = parse_q(o.q.as_deref().unwrap_or(&g.abel.q))?;
            for w in weight_grid(&pick(&g.abel.alpha, o.alpha), &pick(&g.abel.beta, o.beta))? {
                for n in 0..=n_max(g.abel.n_max) as u32 {
                    jobs.push(Job::Abel {
                        q: q.clone(),
                        w,
                        n,
                        tol: o.tol.unwrap_or(g.abel.tol),
                    });
                }
            }
        }
        Suite::Genfn => {
            let q = parse_q(o.q.as_deref().unwrap_or(&g.genfn.q))?;
            for &x in &g.genfn.x {
                jobs.push(Job::Genfn {
                    q: q.clone(),
                    t: g.genfn.t,
                    x,
                    terms: g.genfn.terms,
                    tol: o.tol.unwrap_or(g.genfn.tol),
                });
            }
        }
        Suite::Hurwitz => jobs.push(Job::Hurwitz {
            s: Complex64::new(g.hurwitz.s[0], g.hurwitz.s[1]),
            x: g.hurwitz.x,
            tol: o.tol.unwrap_or(g.hurwitz.tol),
        }),
        Suite::All => {
            for s in Suite::EACH {
                jobs.extend(self::jobs(s, g, o)?);
            }
        }
    }
    Ok(jobs)
}

fn exact_case(
    suite: &str,
    mut params: Row,
    r: IdentityReport<qgenocchi::ExactScalar>,
    status: Status,
) -> Case {
    params.insert("suite".into(), suite.into());
    params.insert("identity".into(), r.identity.into());
    params.insert("lhs".into(), exact(&r.lhs));
    params.insert("rhs".into(), exact(&r.rhs));
    params.insert("residual".into(), exact(&r.residual));
    params.insert("status".into(), status.as_str().into());
    Case {
        row: params,
        status,
    }
}

fn float_case(suite: &str, mut params: Row, r: IdentityReport<f64>) -> Case {
    let status = Status::of(r.holds);
    params.insert("suite".into(), suite.into());
    params.insert("identity".into(), r.identity.into());
    params.insert("lhs".into(), float(r.lhs));
    params.insert("rhs".into(), float(r.rhs));
    params.insert("residual".into(), float(r.residual));
    if let Measure::Tolerance { error, tol } = r.measure {
        params.insert("error".into(), float(error));
        params.insert("tol".into(), float(tol));
    }
    params.insert("status".into(), status.as_str().into());
    Case {
        row: params,
        status,
    }
}

fn complex(z: Complex64) -> Value {
    Value::Array(vec![float(z.re), float(z.im)])
}

fn run(job: &Job) -> Result<Case> {
    Ok(match job {
        Job::Boundary { q, w, n } => {
            let r = check_boundary(*n, *w, q);
            let status = Status::of(r.holds);
            exact_case("boundary", params(q, *w, row! {"n" => *n}), r, status)
        }
        Job::Tail {
            q,
            w,
            m,
            n,
            orientation,
        } => {
            let r = check_tail(*m, *n, *w, q, *orientation)?;
            let status = match (r.holds, orientation) {
                (true, _) => Status::Pass,
                (false, Orientation::AsPrinted) if n % 2 == 0 => Status::ErratumExpected,
                (false, _) => Status::Fail,
            };
            let p = row! {"m" => *m, "n" => *n, "orientation" => orientation.to_string()};
            exact_case("tail", params(q, *w, p), r, status)
        }
        Job::Mult { q, w, d, n, k } => {
            let arg = PolyArgument::at_integer(*k, q);
            let r = check_multiplication(*n, *d, *w, q, &arg)?;
            let status = Status::of(r.holds);
            let p = row! {"d" => *d, "n" => *n, "y" => exact(arg.y())};
            exact_case("mult", params(q, *w, p), r, status)
        }
        Job::Witt {
            q,
            w,
            n,
            precision,
            level,
        } => {
            let r = witt_check(*n, *w, q, *precision, *level)?;
            let status = Status::of(r.passed);
            let valuations: Vec<Value> = r
                .rows
                .iter()
                .map(|row| Value::from(row.valuation))
                .collect();
            let required: Vec<Value> = r.rows.iter().map(|row| Value::from(row.required)).collect();
            let last = r
                .rows
                .last()
                .map(|row| row.riemann_sum.to_string())
                .unwrap_or_default();
            row_case(
                "witt",
                row! {
                    "p" => q.prime(),
                    "q" => exact(q.value()),
                    "alpha" => w.alpha(),
                    "beta" => w.beta(),
                    "n" => *n,
                    "level" => *level,
                    "precision" => r.working_precision,
                    "identity" => "Witt formula",
                    "lhs" => last,
                    "rhs" => r.closed_form_padic.to_string(),
                    "closed_form" => exact(&r.closed_form),
                    "residual" => Value::Array(valuations),
                    "required" => Value::Array(required),
                    "monotone" => r.monotone,
                },
                status,
            )
        }
        Job::Lemma1 {
            q,
            index,
            f,
            n,
            beta,
            level,
            precision,
        } => {
            let r = lemma1_check(f, *n, q, *beta, *level, *precision)?;
            let status = Status::of(r.holds);
            let mut p = row! {
                "p" => q.prime(),
                "q" => exact(q.value()),
                "integrand" => *index as u64,
                "n" => *n,
                "beta" => *beta,
                "level" => *level,
            };
            if let Measure::Valuation {
                valuation,
                required,
                saturated,
                ..
            } = r.measure
            {
                p.insert("valuation".into(), valuation.into());
                p.insert("required".into(), required.into());
                p.insert("saturated".into(), saturated.into());
            }
            exact_case("lemma1", p, r, status)
        }
        Job::Limit { w, n } => {
            let table = classical_genocchi_table(*n);
            let s = series_genocchi(*n, *w, *n as usize + 2)?;
            let c = s.constant_term().context("series lost its constant term")?;
            let expected = &table[*n as usize];
            let residual = &c - expected;
            let holds = residual == int(0);
            let r = IdentityReport::new(
                "classical limit",
                c,
                expected.clone(),
                residual,
                Measure::Exact,
                holds,
            );
            let p = row! {"alpha" => w.alpha(), "beta" => w.beta(), "n" => *n};
            exact_case("limit", p, r, Status::of(holds))
        }
        Job::Interp { x, w, n, q, tol } => {
            let xv = to_f64(&parse_rational(x)?)?;
            let qf = q.to_f64()?;
            let poly = genocchi_polynomial_in_y(n + 1, *w, q).evaluate_f64(qf.powf(xv))?;
            let expected = poly / (*n as f64 + 1.0);
            let params_z = ZetaParams::new(Complex64::new(-(*n as f64), 0.0), xv, *w, qf)?;
            let value = qzeta(&params_z, 1e-15)?;
            let error = (value - expected).norm() / expected.abs().max(1.0);
            let r = IdentityReport::new(
                "zeta interpolation",
                value.re,
                expected,
                value.re - expected,
                Measure::Tolerance { error, tol: *tol },
                error <= *tol && value.im.abs() <= *tol,
            );
            float_case(
                "interp",
                params(q, *w, row! {"n" => *n, "x" => x.clone()}),
                r,
            )
        }
        Job::EulerBoundary { q, n } => {
            let r = check_euler_boundary(*n, q);
            let status = Status::of(r.holds);
            exact_case(
                "euler",
                row! {"q" => exact(q.value()), "n" => *n, "form" => "boundary"},
                r,
                status,
            )
        }
        Job::EulerRecurrence { q, k, form } => {
            let r = check_euler_recurrence(*k, q, *form);
            let (label, status) = match (form, r.holds) {
                (_, true) => (form_name(*form), Status::Pass),
                (EulerForm::AsPrinted, false) => ("as_printed", Status::ErratumExpected),
                (EulerForm::Derived, false) => ("derived", Status::Fail),
            };
            exact_case(
                "euler",
                row! {"q" => exact(q.value()), "n" => *k, "form" => label},
                r,
                status,
            )
        }
        Job::Abel { q, w, n, tol } => {
            let r = series_number_check(*n, *w, q, *tol)?;
            float_case("abel", params(q, *w, row! {"n" => *n}), r)
        }
        Job::Genfn {
            q,
            t,
            x,
            terms,
            tol,
        } => {
            let arg = PolyArgument::at_integer(*x, q);
            let r = generating_check(*t, &arg, WeightPair::unit(), q, *terms, *tol)?;
            let p = row! {"q" => exact(q.value()), "t" => float(*t), "x" => *x, "terms" => *terms};
            float_case("genfn", p, r)
        }
        Job::Hurwitz { s, x, tol } => {
            let r = hurwitz_limit_check(*s, *x, &default_q_schedule(), *tol)?;
            let status = Status::of(r.holds);
            let error = match r.measure {
                Measure::Tolerance { error, .. } => error,
                _ => f64::NAN,
            };
            row_case(
                "hurwitz",
                row! {
                    "s" => complex(*s),
                    "x" => float(*x),
                    "identity" => r.identity,
                    "lhs" => complex(r.lhs),
                    "rhs" => complex(r.rhs),
                    "residual" => complex(r.residual),
                    "error" => float(error),
                    "tol" => float(*tol),
                },
                status,
            )
        }
    })
}

fn form_name(form: EulerForm) -> &'static str {
    match form {
        EulerForm::Derived => "derived",
        EulerForm::AsPrinted => "as_printed",
    }
}

fn params(q: &QPoint, w: WeightPair, mut extra: Row) -> Row {
    extra.insert("q".into(), exact(q.value()));
    extra.insert("alpha".into(), w.alpha().into());
    extra.insert("beta".into(), w.beta().into());
    extra
}

fn row_case(suite: &str, mut row: Row, status: Status) -> Case {
    row.insert("suite".into(), suite.into());
    row.insert("status".into(), status.as_str().into());
    Case { row, status }
}

/// Runs `suite` and returns the table together with the number of failures.
pub fn audit(suite: Suite, grids: &Grids, o: &Overrides) -> Result<(Table, usize)> {
    if let Some(t) = o.tol {
        if t.is_nan() || t <= 0.0 {
            bail!("--tol must be positive");
        }
    }
    let jobs = jobs(suite, grids, o)?;
    let cases = jobs.par_iter().map(run).collect::<Result<Vec<Case>>>()?;

    let mut p = row! {"suite" => suite.name(), "grid_version" => grids.version};
    if let Some(q) = &o.q {
        p.insert("q".into(), q.clone().into());
    }
    for (k, v) in [
        ("alpha", o.alpha),
        ("beta", o.beta),
        ("level", o.level),
        ("precision", o.precision),
    ] {
        if let Some(v) = v {
            p.insert(k.into(), v.into());
        }
    }
    if let Some(v) = o.n_max {
        p.insert("n_max".into(), v.into());
    }
    if let Some(v) = o.p {
        p.insert("p".into(), v.into());
    }
    if let Some(v) = o.orientation {
        p.insert("orientation".into(), v.to_string().into());
    }
    if let Some(v) = o.tol {
        p.insert("tol".into(), float(v));
    }

    let count = |s: Status| cases.iter().filter(|c| c.status == s).count();
    let failures = count(Status::Fail);
    let mut table = Table::new("audit", p);
    table.summary = Some(row! {
        "total" => cases.len(),
        "pass" => count(Status::Pass),
        "fail" => failures,
        "erratum-expected" => count(Status::ErratumExpected),
    });
    table.rows = cases.into_iter().map(|c| c.row).collect();
    Ok((table, failures))
}
