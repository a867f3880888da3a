use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genocchi::WeightPair;
use crate::report::{IdentityReport, Measure};
use crate::scalar::{binomial_row, int, p_valuation, powi, sign_pow, ExactScalar};

use super::integrand::IntegrandSpec;
use super::number::{inverse_mod, is_odd_prime, padic_reduce, PadicNumber};

/// Largest number of Riemann-sum terms (`p^N`) evaluated by default.
pub const DEFAULT_TERM_BUDGET: u64 = 1_000_000;

/// Allowed shortfall `delta` in `v_p(difference) >= N - delta`.
pub const CONVERGENCE_SLACK: i64 = 2;

/// A rational `q` admissible for p-adic integration: `q = 1 (mod p)`, which
/// for odd `p` puts `q` inside the disc where `q^x` is p-adically analytic.
#[derive(Debug, Clone, PartialEq)]
pub struct PadicQ {
    q: ExactScalar,
    prime: u64,
    budget: u64,
}

impl PadicQ {
    pub fn new(q: ExactScalar, prime: u64) -> Result<Self> {
        if !is_odd_prime(prime) {
            return Err(Error::NotOddPrime(prime));
        }
        if q.is_one() {
            return Err(Error::DegenerateQ);
        }
        match p_valuation(&(&q - ExactScalar::one()), prime) {
            Some(v) if v >= 1 => Ok(PadicQ {
                q,
                prime,
                budget: DEFAULT_TERM_BUDGET,
            }),
            _ => Err(Error::InadmissibleQ {
                q: q.to_string(),
                p: prime,
            }),
        }
    }

    /// Overrides the cap on `p^N`.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn value(&self) -> &ExactScalar {
        &self.q
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    fn terms_at(&self, level: u32) -> Result<u64> {
        if level == 0 {
            return Err(Error::InvalidArgument("level N must be >= 1".into()));
        }
        let needed = self.prime.checked_pow(level).unwrap_or(u64::MAX);
        if needed > self.budget {
            return Err(Error::BudgetExceeded {
                needed,
                budget: self.budget,
            });
        }
        Ok(needed)
    }
}

/// `S_N = 1/[p^N]_{-q^beta} * sum_{x < p^N} (-1)^x q^(beta x) f(x)`, exactly.
pub fn riemann_sum(f: &IntegrandSpec, level: u32, q: &PadicQ, beta: u32) -> Result<ExactScalar> {
    let count = q.terms_at(level)?;
    let qv = q.value();
    let mut total = ExactScalar::zero();
    for t in f.terms() {
        let step = powi(qv, beta as i64 + t.twist);
        let base = powi(qv, t.base as i64);
        let mut weight = ExactScalar::one();
        let mut bracket = ExactScalar::zero();
        let mut acc = ExactScalar::zero();
        for x in 0..count {
            let v = &weight * powi(&bracket, t.power as i64);
            if x % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
            weight *= &step;
            bracket = ExactScalar::one() + &base * bracket;
        }
        total += &t.coeff * acc;
    }
    // p^N is odd: [p^N]_{-q^beta} = (1 + q^(beta p^N)) / (1 + q^beta)
    let qb = powi(qv, beta as i64);
    let normalizer = (ExactScalar::one() + powi(&qb, count as i64)) / (ExactScalar::one() + qb);
    Ok(total / normalizer)
}

/// [`riemann_sum`] evaluated term by term in `Z/p^digits`.
///
/// Admissible `q` is a p-adic unit, so every summand and the normaliser are
/// p-integral and the sum is known to `digits` absolute digits (less whatever
/// p-adic denominators the coefficients of `f` carry). Avoids the exact
/// rationals, whose size grows linearly in `p^N`.
pub fn riemann_sum_padic(
    f: &IntegrandSpec,
    level: u32,
    q: &PadicQ,
    beta: u32,
    digits: u32,
) -> Result<PadicNumber> {
    let count = q.terms_at(level)?;
    let p = q.prime();
    if digits == 0 {
        return Err(Error::PrecisionExhausted);
    }
    let m = num_traits::pow(BigInt::from(p), digits as usize);
    let qv = q.value();
    let q_res = (qv.numer()
        * inverse_mod(&qv.denom().mod_floor(&m), &m).expect("q is a p-adic unit"))
    .mod_floor(&m);
    let q_inv = inverse_mod(&q_res, &m).expect("q is a p-adic unit");
    let q_pow = |e: i64| {
        if e >= 0 {
            q_res.modpow(&BigInt::from(e), &m)
        } else {
            q_inv.modpow(&BigInt::from(-e), &m)
        }
    };
    let mut total = PadicNumber::zero(p, digits as i64);
    for t in f.terms() {
        let step = q_pow(beta as i64 + t.twist);
        let base = q_pow(t.base as i64);
        let power = BigInt::from(t.power);
        let mut weight = BigInt::one();
        let mut bracket = BigInt::zero();
        let mut acc = BigInt::zero();
        for x in 0..count {
            let v = &weight * bracket.modpow(&power, &m);
            if x % 2 == 0 {
                acc += v;
            } else {
                acc -= v;
            }
            weight = (weight * &step).mod_floor(&m);
            bracket = (BigInt::one() + &base * bracket).mod_floor(&m);
        }
        let acc = PadicNumber::from_integer(p, 0, acc, digits as i64);
        total = total.add(&padic_reduce(&t.coeff, p, digits)?.mul(&acc));
    }
    let qb = q_pow(beta as i64);
    let normalizer = (BigInt::one() + qb.modpow(&BigInt::from(count), &m))
        * inverse_mod(&(BigInt::one() + &qb).mod_floor(&m), &m).expect("1 + q^beta is a unit");
    total.div(&PadicNumber::from_integer(p, 0, normalizer, digits as i64))
}

/// `S_N` for the integrand `q^(c x) [x]_{q^alpha}^n` under `mu_{-q^beta}`.
/// With `c = h - 1` and `beta = 1` this is the weighted `(h, q)` moment.
pub fn twisted_moment(
    c: i64,
    n: u32,
    alpha: u32,
    beta: u32,
    q: &PadicQ,
    level: u32,
) -> Result<ExactScalar> {
    let f = IntegrandSpec::single(ExactScalar::one(), c, alpha, n)?;
    riemann_sum(&f, level, q, beta)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub level: u32,
    /// `S_N` to the working precision.
    pub riemann_sum: PadicNumber,
    /// `v_p(S_N - closed form)`, a lower bound when `saturated`.
    pub valuation: i64,
    pub saturated: bool,
    pub required: i64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub prime: u64,
    pub working_precision: u32,
    pub closed_form: ExactScalar,
    pub closed_form_padic: PadicNumber,
    pub rows: Vec<ConvergenceRow>,
    pub monotone: bool,
    pub passed: bool,
}

impl fmt::Display for ConvergenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "closed form {} = {}",
            self.closed_form, self.closed_form_padic
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "N = {}: v_{} = {}{} (need >= {})",
                r.level,
                self.prime,
                if r.saturated { ">=" } else { "" },
                r.valuation,
                r.required
            )?;
        }
        write!(
            f,
            "{}",
            if self.passed {
                "converges"
            } else {
                "does not converge as required"
            }
        )
    }
}

/// p-adic closed form of `g_{n+1,q}/(n+1)` with explicit precision loss from
/// the division by `(1 - q^alpha)^n`.
fn closed_form_padic(n: u32, w: WeightPair, q: &PadicQ, digits: u32) -> Result<PadicNumber> {
    let p = q.prime();
    let qv = q.value();
    let qa = powi(qv, w.alpha() as i64);
    let mut sum = PadicNumber::zero(p, digits as i64);
    let mut qa_l = ExactScalar::one();
    for (l, c) in binomial_row(n as usize).iter().enumerate() {
        let term = sign_pow(l as u64) * ExactScalar::from_integer(c.clone())
            / (ExactScalar::one() + &qa_l);
        if !term.is_zero() {
            sum = sum.add(&padic_reduce(&term, p, digits)?);
        }
        qa_l *= &qa;
    }
    let prefactor = padic_reduce(&(ExactScalar::one() + powi(qv, w.beta() as i64)), p, digits)?;
    let base = padic_reduce(&(ExactScalar::one() - qa), p, digits)?;
    prefactor.mul(&sum).div(&base.pow(n))
}

/// Compares `S_N` for `q^(-beta x) [x]_{q^alpha}^n` against the closed form of
/// `g_{n+1,q}/(n+1)` for `N = 1..=max_level`.
///
/// Both sides are computed at `digits + n v_p(1 - q^alpha) + 2` digits. Passes
/// when the valuations of the differences are non-decreasing in `N` and each
/// is at least `N - CONVERGENCE_SLACK`.
pub fn witt_check(
    n: u32,
    w: WeightPair,
    q: &PadicQ,
    digits: u32,
    max_level: u32,
) -> Result<ConvergenceReport> {
    let p = q.prime();
    let qa = powi(q.value(), w.alpha() as i64);
    let loss = p_valuation(&(ExactScalar::one() - &qa), p).expect("q^alpha != 1");
    let working = digits + n * loss as u32 + 2;
    let closed_padic = closed_form_padic(n, w, q, working)?;

    let qp = crate::genocchi::QPoint::new(q.value().clone())?;
    let closed = crate::genocchi::genocchi_number(n as u64 + 1, w, &qp) / int(n as i64 + 1);

    let f = IntegrandSpec::single(ExactScalar::one(), -(w.beta() as i64), w.alpha(), n)?;
    let mut rows = Vec::with_capacity(max_level as usize);
    for level in 1..=max_level {
        let s = riemann_sum_padic(&f, level, q, w.beta(), working)?;
        let diff = s.sub(&closed_padic);
        rows.push(ConvergenceRow {
            level,
            riemann_sum: s,
            valuation: diff.valuation(),
            saturated: diff.is_zero(),
            required: level as i64 - CONVERGENCE_SLACK,
        });
    }
    let monotone = rows.windows(2).all(|r| r[0].valuation <= r[1].valuation);
    let passed = monotone && rows.iter().all(|r| r.valuation >= r.required);
    Ok(ConvergenceReport {
        prime: p,
        working_precision: working,
        closed_form: closed,
        closed_form_padic: closed_padic,
        rows,
        monotone,
        passed,
    })
}

/// `I(q^(-beta x) f_n) + (-1)^(n-1) I(q^(-beta x) f) = [2]_{q^beta} sum_{l<n} (-1)^(n-l-1) f(l)`
/// with `f_n(x) = f(x + n)` and `I` replaced by the level-`level` Riemann sum.
///
/// At finite level the two sides differ by a p-adically small amount; the
/// check passes when `v_p(residual) >= level - CONVERGENCE_SLACK`.
pub fn lemma1_check(
    f: &IntegrandSpec,
    n: u64,
    q: &PadicQ,
    beta: u32,
    level: u32,
    digits: u32,
) -> Result<IdentityReport<ExactScalar>> {
    if n == 0 {
        return Err(Error::InvalidArgument("lemma needs n >= 1".into()));
    }
    let qv = q.value();
    let shifted = f.shift(n, qv).twisted(-(beta as i64));
    let plain = f.twisted(-(beta as i64));
    let lhs = riemann_sum(&shifted, level, q, beta)?
        + sign_pow(n - 1) * riemann_sum(&plain, level, q, beta)?;
    let tail = (0..n)
        .map(|l| sign_pow(n - l - 1) * f.evaluate(l, qv))
        .fold(ExactScalar::zero(), |acc, v| acc + v);
    let rhs = (ExactScalar::one() + powi(qv, beta as i64)) * tail;
    let residual = &lhs - &rhs;
    let reduced = padic_reduce(&residual, q.prime(), digits)?;
    let required = level as i64 - CONVERGENCE_SLACK;
    let valuation = reduced.valuation();
    let measure = Measure::Valuation {
        prime: q.prime(),
        valuation,
        saturated: reduced.is_zero(),
        required,
    };
    Ok(IdentityReport::new(
        "shift lemma",
        lhs,
        rhs,
        residual,
        measure,
        valuation >= required,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::IntegrandTerm;
    use crate::scalar::ratio;

    fn pq(q: i64, p: u64) -> PadicQ {
        PadicQ::new(int(q), p).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(PadicQ::new(int(4), 3).is_ok());
        assert!(PadicQ::new(ratio(4, 7), 3).is_ok());
        assert!(matches!(
            PadicQ::new(int(5), 3),
            Err(Error::InadmissibleQ { .. })
        ));
        assert_eq!(PadicQ::new(int(3), 2), Err(Error::NotOddPrime(2)));
        assert_eq!(PadicQ::new(int(1), 3), Err(Error::DegenerateQ));
    }

    #[test]
    fn budget_is_enforced() {
        let q = pq(4, 3).with_budget(100);
        let f = IntegrandSpec::constant(int(1));
        assert!(riemann_sum(&f, 4, &q, 1).is_ok());
        assert_eq!(
            riemann_sum(&f, 5, &q, 1),
            Err(Error::BudgetExceeded {
                needed: 243,
                budget: 100
            })
        );
        assert!(riemann_sum(&f, 0, &q, 1).is_err());
    }

    #[test]
    fn riemann_sum_examples() {
        let q = pq(4, 3);
        let one = IntegrandSpec::constant(int(1));
        let untwist = IntegrandSpec::single(int(1), -1, 1, 0).unwrap();
        for level in 1..=4 {
            assert_eq!(riemann_sum(&one, level, &q, 1).unwrap(), int(1));
            let expected = ratio(5, 1) / (int(1) + powi(&int(4), 3i64.pow(level)));
            assert_eq!(riemann_sum(&untwist, level, &q, 1).unwrap(), expected);
        }
        let f = IntegrandSpec::single(int(1), -1, 1, 1).unwrap();
        assert_eq!(riemann_sum(&f, 1, &q, 1).unwrap(), ratio(4, 13));
    }

    #[test]
    fn twisted_moment_examples() {
        let q = pq(4, 3);
        for level in 1..=3 {
            assert_eq!(twisted_moment(0, 0, 1, 1, &q, level).unwrap(), int(1));
        }
        let f = IntegrandSpec::single(int(1), -2, 3, 2).unwrap();
        assert_eq!(
            twisted_moment(-2, 2, 3, 2, &q, 2).unwrap(),
            riemann_sum(&f, 2, &q, 2).unwrap()
        );
    }

    #[test]
    fn modular_sum_matches_exact() {
        let q = PadicQ::new(ratio(7, 4), 3).unwrap();
        let f = IntegrandSpec::new(vec![
            IntegrandTerm {
                coeff: ratio(2, 9),
                twist: -1,
                base: 2,
                power: 3,
            },
            IntegrandTerm {
                coeff: ratio(-5, 2),
                twist: 2,
                base: 1,
                power: 1,
            },
        ])
        .unwrap();
        for level in 1..=3 {
            let exact = padic_reduce(&riemann_sum(&f, level, &q, 2).unwrap(), 3, 10).unwrap();
            let modular = riemann_sum_padic(&f, level, &q, 2, 10).unwrap();
            // the 2/9 coefficient costs two digits
            assert_eq!(modular.absolute_precision(), 8);
            assert!(modular.sub(&exact).valuation() >= 8, "level {level}");
        }
    }

    #[test]
    fn witt_zero_index() {
        let q = pq(4, 3);
        let r = witt_check(0, WeightPair::unit(), &q, 4, 4).unwrap();
        assert_eq!(r.working_precision, 6);
        assert_eq!(
            r.rows[0].riemann_sum,
            padic_reduce(&ratio(1, 13), 3, 6).unwrap()
        );
        assert_eq!(r.closed_form, ratio(5, 2));
        assert_eq!(r.rows[0].riemann_sum.residue(2), Some(7.into()));
        assert_eq!(r.closed_form_padic.residue(2), Some(7.into()));
        for row in &r.rows {
            assert!(row.valuation > row.level as i64);
        }
        assert!(r.passed, "{r}");
    }

    #[test]
    fn lemma_examples() {
        let q = pq(4, 3);
        let f = IntegrandSpec::single(int(1), 0, 1, 1).unwrap();
        for n in 1..=3 {
            let r = lemma1_check(&f, n, &q, 1, 3, 12).unwrap();
            assert!(r.holds, "n = {n}: {r}");
        }
        let c = IntegrandSpec::constant(int(1));
        let r = lemma1_check(&c, 2, &q, 2, 2, 8).unwrap();
        assert_eq!(r.rhs, int(0));
        assert_eq!(r.lhs, int(0));
        assert!(lemma1_check(&c, 0, &q, 1, 2, 8).is_err());
    }
}
