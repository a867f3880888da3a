//! `qgen`: tables of weighted modified q-Genocchi numbers and identity audits.
//!
//! Exit status: 0 on success, 1 when an audit or convergence check has a
//! failing case, 2 on invalid input or exhausted budgets.

mod audit;
mod grids;
mod table;

use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use qgenocchi::analytic::{qzeta_with_count, ZetaParams};
use qgenocchi::genocchi::{
    genocchi_number, genocchi_polynomial, modified_q_euler, modified_q_euler_polynomial,
};
use qgenocchi::padic::{witt_check, PadicQ};
use qgenocchi::scalar::{int, parse_rational, to_f64};
use qgenocchi::series::{classical_genocchi_table, series_genocchi};
use qgenocchi::{ExactScalar, Orientation, PolyArgument, QPoint, WeightPair};
use serde_json::Value;

use crate::audit::{Overrides, Suite};
use crate::grids::Grids;
use crate::table::{exact, float, Format, Table};

#[derive(Parser, Debug)]
#[command(
    name = "qgen",
    version,
    about = "Weighted modified q-Genocchi tables and identity audits"
)]
struct Cli {
    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Weights {
    #[arg(long, default_value_t = 1)]
    alpha: u32,
    #[arg(long, default_value_t = 1)]
    beta: u32,
}

impl Weights {
    fn pair(self) -> Result<WeightPair> {
        Ok(WeightPair::new(self.alpha, self.beta)?)
    }
}

/// `--x` (integer, `y = q^x`) or `--y NUM/DEN`.
#[derive(Args, Debug, Clone)]
struct Argument {
    #[arg(long, allow_hyphen_values = true, conflicts_with = "y")]
    x: Option<i64>,
    #[arg(long)]
    y: Option<String>,
}

impl Argument {
    fn resolve(&self, q: &QPoint) -> Result<Option<PolyArgument>> {
        match (&self.x, &self.y) {
            (Some(x), _) => Ok(Some(PolyArgument::at_integer(*x, q))),
            (None, Some(y)) => Ok(Some(PolyArgument::from_y(parse_rational(y)?)?)),
            (None, None) => Ok(None),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// g_{n,q}^{(alpha,beta)} for n = 0..=n_max.
    Numbers {
        #[command(flatten)]
        w: Weights,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
    /// g_{n,q}^{(alpha,beta)}(x) for n = 0..=n_max.
    Poly {
        #[command(flatten)]
        w: Weights,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[command(flatten)]
        arg: Argument,
    },
    /// Modified q-Euler numbers, or polynomials when --x or --y is given.
    Euler {
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 10)]
        n_max: u64,
        #[command(flatten)]
        arg: Argument,
    },
    /// Classical Genocchi numbers from 2t/(e^t + 1).
    Classical {
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
    /// Constant term of g_{n,q}^{(alpha,beta)} as q -> 1.
    Limit {
        #[command(flatten)]
        w: Weights,
        #[arg(long, default_value_t = 12)]
        n_max: u64,
    },
    /// The weighted q-zeta function at one point.
    Zeta {
        /// RE or RE,IM.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        /// Positive real shift, as a decimal or NUM/DEN.
        #[arg(long, default_value = "1")]
        x: String,
        #[command(flatten)]
        w: Weights,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
    },
    /// Convergence of the p-adic Riemann sums to g_{n+1,q}/(n+1).
    Witt {
        #[arg(long)]
        p: u64,
        /// Defaults to 1 + p.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[command(flatten)]
        w: Weights,
        /// Requested p-adic digits K.
        #[arg(long, default_value_t = 6)]
        precision: u32,
        /// Largest level N.
        #[arg(long, default_value_t = 4)]
        level: u32,
    },
    /// Run identity audit suites over the default grids.
    Audit {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        alpha: Option<u32>,
        #[arg(long)]
        beta: Option<u32>,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long)]
        precision: Option<u32>,
        #[arg(long)]
        orientation: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
    },
}

/// A table plus whether it records a failure.
struct Outcome {
    table: Table,
    failed: bool,
}

impl From<Table> for Outcome {
    fn from(table: Table) -> Self {
        Outcome {
            table,
            failed: false,
        }
    }
}

fn budget() -> Result<Option<u64>> {
    match std::env::var("QGEN_BUDGET") {
        Ok(v) => {
            Ok(Some(v.trim().parse().with_context(|| {
                format!("QGEN_BUDGET={v:?} is not a count")
            })?))
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn q_point(text: &str) -> Result<QPoint> {
    let q = parse_rational(text)?;
    if q == int(1) {
        bail!("q = 1 is the classical limit; use `qgen limit` or `qgen classical`");
    }
    Ok(QPoint::new(q)?)
}

fn value_rows(table: &mut Table, values: impl Iterator<Item = (u64, ExactScalar)>) {
    for (n, v) in values {
        table.rows.push(row! {"n" => n, "value" => exact(&v)});
    }
}

fn parse_s(text: &str) -> Result<Complex64> {
    let mut parts = text.split(',');
    let re: f64 = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse()
        .with_context(|| format!("bad --s {text:?}"))?;
    let im: f64 = match parts.next() {
        Some(im) => im
            .trim()
            .parse()
            .with_context(|| format!("bad --s {text:?}"))?,
        None => 0.0,
    };
    if parts.next().is_some() {
        bail!("--s takes RE or RE,IM");
    }
    Ok(Complex64::new(re, im))
}

fn run(command: Command) -> Result<Outcome> {
    Ok(match command {
        Command::Numbers { w, q, n_max } => {
            let (wp, qp) = (w.pair()?, q_point(&q)?);
            let mut t = Table::new(
                "numbers",
                row! {"alpha" => w.alpha, "beta" => w.beta, "q" => exact(qp.value()), "n_max" => n_max},
            );
            value_rows(
                &mut t,
                (0..=n_max).map(|n| (n, genocchi_number(n, wp, &qp))),
            );
            t.into()
        }
        Command::Poly { w, q, n_max, arg } => {
            let (wp, qp) = (w.pair()?, q_point(&q)?);
            let a = arg.resolve(&qp)?.unwrap_or_else(PolyArgument::origin);
            let mut p = row! {"alpha" => w.alpha, "beta" => w.beta, "q" => exact(qp.value()), "n_max" => n_max};
            p.insert("y".into(), exact(a.y()));
            if let Some(x) = arg.x {
                p.insert("x".into(), x.into());
            }
            let mut t = Table::new("poly", p);
            value_rows(
                &mut t,
                (0..=n_max).map(|n| (n, genocchi_polynomial(n, wp, &qp, &a))),
            );
            t.into()
        }
        Command::Euler { q, n_max, arg } => {
            let qp = q_point(&q)?;
            let a = arg.resolve(&qp)?;
            let mut p = row! {"q" => exact(qp.value()), "n_max" => n_max};
            if let Some(a) = &a {
                p.insert("y".into(), exact(a.y()));
            }
            if let Some(x) = arg.x {
                p.insert("x".into(), x.into());
            }
            let mut t = Table::new("euler", p);
            value_rows(
                &mut t,
                (0..=n_max).map(|n| {
                    let v = match &a {
                        Some(a) => modified_q_euler_polynomial(n, &qp, a),
                        None => modified_q_euler(n, &qp),
                    };
                    (n, v)
                }),
            );
            t.into()
        }
        Command::Classical { n_max } => {
            let mut t = Table::new("classical", row! {"n_max" => n_max});
            value_rows(
                &mut t,
                classical_genocchi_table(n_max)
                    .into_iter()
                    .enumerate()
                    .map(|(n, v)| (n as u64, v)),
            );
            t.into()
        }
        Command::Limit { w, n_max } => {
            let wp = w.pair()?;
            let mut t = Table::new(
                "limit",
                row! {"alpha" => w.alpha, "beta" => w.beta, "n_max" => n_max},
            );
            for n in 0..=n_max {
                let s = series_genocchi(n, wp, n as usize + 2)?;
                let c = s
                    .constant_term()
                    .ok_or_else(|| anyhow!("series for n = {n} lost its constant term"))?;
                t.rows.push(row! {"n" => n, "value" => exact(&c)});
            }
            t.into()
        }
        Command::Zeta { s, x, w, q, tol } => {
            let sv = parse_s(&s)?;
            let xv = to_f64(&parse_rational(&x)?)?;
            let qv = to_f64(&parse_rational(&q)?)?;
            let params = ZetaParams::new(sv, xv, w.pair()?, qv)?;
            let z = qzeta_with_count(&params, tol)?;
            let mut t = Table::new(
                "zeta",
                row! {
                    "s" => Value::Array(vec![float(sv.re), float(sv.im)]),
                    "x" => x,
                    "alpha" => w.alpha,
                    "beta" => w.beta,
                    "q" => q,
                    "tol" => float(tol),
                },
            );
            t.rows.push(row! {"re" => float(z.value.re), "im" => float(z.value.im), "terms" => z.terms, "tol" => float(tol)});
            t.into()
        }
        Command::Witt {
            p,
            q,
            n,
            w,
            precision,
            level,
        } => {
            let qv = match &q {
                Some(q) => parse_rational(q)?,
                None => int(1 + p as i64),
            };
            let mut pq = PadicQ::new(qv, p)?;
            if let Some(b) = budget()? {
                pq = pq.with_budget(b);
            }
            let r = witt_check(n, w.pair()?, &pq, precision, level)?;
            let mut t = Table::new(
                "witt",
                row! {
                    "p" => p,
                    "q" => exact(pq.value()),
                    "n" => n,
                    "alpha" => w.alpha,
                    "beta" => w.beta,
                    "precision" => precision,
                    "working_precision" => r.working_precision,
                    "closed_form" => exact(&r.closed_form),
                    "closed_form_padic" => r.closed_form_padic.to_string(),
                    "passed" => r.passed,
                },
            );
            for row in &r.rows {
                t.rows.push(row! {
                    "level" => row.level,
                    "riemann_sum" => row.riemann_sum.to_string(),
                    "valuation" => row.valuation,
                    "saturated" => row.saturated,
                    "required" => row.required,
                });
            }
            Outcome {
                table: t,
                failed: !r.passed,
            }
        }
        Command::Audit {
            suite,
            q,
            alpha,
            beta,
            n_max,
            p,
            level,
            precision,
            orientation,
            tol,
        } => {
            let orientation = orientation.map(|o| o.parse::<Orientation>()).transpose()?;
            let overrides = Overrides {
                q,
                alpha,
                beta,
                n_max,
                p,
                level,
                precision,
                orientation,
                tol,
                budget: budget()?,
            };
            let (table, failures) = audit::audit(suite, &Grids::default_grids(), &overrides)?;
            Outcome {
                table,
                failed: failures > 0,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(cli.command).and_then(|o| Ok((o.table.render(cli.format)?, o.failed)));
    match outcome {
        Ok((text, failed)) => {
            print!("{text}");
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
