//! Truncated power series with exact rational coefficients.
//!
//! Used in two ways: with the variable `eps = q - 1` to take the `q -> 1`
//! limit of the weighted numbers by exact division, and with the variable `t`
//! to expand `2t / (e^t + 1)` into classical Genocchi numbers.
//!
//! A series is stored as `eps^valuation * (c_0 + c_1 eps + ...)` and is known
//! modulo `eps^(valuation + len)`. The leading stored coefficient is nonzero;
//! a series that vanishes to its precision has no stored coefficients and its
//! valuation equals its absolute precision.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::genocchi::WeightPair;
use crate::report::{IdentityReport, Measure};
use crate::scalar::{binomial_row, factorial, int, ExactScalar};

/// Guard terms added on top of `n` by the classical-limit check.
pub const DEFAULT_GUARD: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct FormalSeries {
    valuation: i64,
    coefficients: Vec<ExactScalar>,
}

impl FormalSeries {
    pub fn new(valuation: i64, coefficients: Vec<ExactScalar>) -> Self {
        let mut s = FormalSeries {
            valuation,
            coefficients,
        };
        s.normalize();
        s
    }

    /// Zero known modulo `eps^precision`.
    pub fn zero(precision: i64) -> Self {
        FormalSeries {
            valuation: precision,
            coefficients: Vec::new(),
        }
    }

    pub fn constant(c: ExactScalar, order: usize) -> Self {
        let mut coefficients = vec![ExactScalar::zero(); order];
        if order > 0 {
            coefficients[0] = c;
        }
        FormalSeries::new(0, coefficients)
    }

    /// `(1 + eps)^k`, i.e. `q^k` at `q = 1 + eps`, to `order` terms.
    pub fn one_plus_eps_pow(k: u64, order: usize) -> Self {
        let row = binomial_row(k as usize);
        let coefficients = (0..order)
            .map(|i| {
                row.get(i)
                    .map_or_else(ExactScalar::zero, |c| ExactScalar::from_integer(c.clone()))
            })
            .collect();
        FormalSeries::new(0, coefficients)
    }

    /// `e^t` to `order` terms.
    pub fn exp(order: usize) -> Self {
        let coefficients = (0..order as u64)
            .map(|i| ExactScalar::from_integer(factorial(i)).recip())
            .collect();
        FormalSeries::new(0, coefficients)
    }

    fn normalize(&mut self) {
        let lead = self.coefficients.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coefficients.drain(..lead);
            self.valuation += lead as i64;
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Number of stored coefficients (relative precision).
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Exponent of the first unknown term.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coefficients.len() as i64
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Coefficient of `eps^i`, or `None` beyond the known precision.
    pub fn coefficient(&self, i: i64) -> Option<ExactScalar> {
        if i >= self.precision() {
            None
        } else if i < self.valuation {
            Some(ExactScalar::zero())
        } else {
            Some(self.coefficients[(i - self.valuation) as usize].clone())
        }
    }

    pub fn constant_term(&self) -> Option<ExactScalar> {
        self.coefficient(0)
    }

    pub fn scale(&self, c: &ExactScalar) -> Self {
        if c.is_zero() {
            return FormalSeries::zero(self.precision());
        }
        FormalSeries::new(
            self.valuation,
            self.coefficients.iter().map(|x| x * c).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(&-ExactScalar::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.precision().min(other.precision());
        let low = self.valuation.min(other.valuation);
        if prec <= low {
            return FormalSeries::zero(prec);
        }
        let coefficients = (low..prec)
            .map(|i| self.coefficient(i).unwrap() + other.coefficient(i).unwrap())
            .collect();
        FormalSeries::new(low, coefficients)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = (self.valuation + other.precision()).min(other.valuation + self.precision());
        if self.is_zero() || other.is_zero() {
            return FormalSeries::zero(prec);
        }
        let len = self.order().min(other.order());
        let mut coefficients = vec![ExactScalar::zero(); len];
        for (i, a) in self.coefficients.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients.iter().take(len - i).enumerate() {
                coefficients[i + j] += a * b;
            }
        }
        FormalSeries::new(self.valuation + other.valuation, coefficients)
    }

    /// Exact division. Fails when the divisor vanishes to its precision.
    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::PrecisionExhausted);
        }
        if self.is_zero() {
            return Ok(FormalSeries::zero(self.precision() - other.valuation));
        }
        let len = self.order().min(other.order());
        let lead_inv = other.coefficients[0].recip();
        let mut quotient: Vec<ExactScalar> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.coefficients[k].clone();
            for (j, qj) in quotient.iter().enumerate() {
                if let Some(b) = other.coefficients.get(k - j) {
                    acc -= qj * b;
                }
            }
            quotient.push(acc * &lead_inv);
        }
        Ok(FormalSeries::new(
            self.valuation - other.valuation,
            quotient,
        ))
    }

    pub fn pow(&self, e: u32, order: usize) -> Self {
        let mut acc = FormalSeries::constant(ExactScalar::one(), order);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl fmt::Display for FormalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(eps^{})", self.precision());
        }
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "({c})*eps^{} + ", self.valuation + i as i64)?;
        }
        write!(f, "O(eps^{})", self.precision())
    }
}

/// Expansion of `g_{n,q}^{(alpha,beta)}` at `q = 1 + eps` to `order` terms of
/// working precision.
///
/// The closed form divides by `(1 - q^alpha)^(n-1)`, which has valuation
/// exactly `n - 1`; the numerator cancels to the same valuation, so at least
/// `n + 2` working terms are required to keep three known coefficients.
pub fn series_genocchi(n: u64, w: WeightPair, order: usize) -> Result<FormalSeries> {
    let required = n as usize + 2;
    if order < required {
        return Err(Error::OrderTooSmall { order, required });
    }
    if n == 0 {
        return Ok(FormalSeries::zero(order as i64));
    }
    let m = n - 1;
    let one = FormalSeries::constant(ExactScalar::one(), order);
    let binom = binomial_row(m as usize);
    let mut sum = FormalSeries::zero(order as i64);
    for (l, c) in binom.iter().enumerate() {
        let q_al = FormalSeries::one_plus_eps_pow(w.alpha() as u64 * l as u64, order);
        let term = one.div(&one.add(&q_al))?;
        let mut coeff = ExactScalar::from_integer(c.clone());
        if l % 2 == 1 {
            coeff = -coeff;
        }
        sum = sum.add(&term.scale(&coeff));
    }
    let two_b = one.add(&FormalSeries::one_plus_eps_pow(w.beta() as u64, order));
    let numerator = two_b.mul(&sum).scale(&int(n as i64));
    let base = one.sub(&FormalSeries::one_plus_eps_pow(w.alpha() as u64, order));
    let denominator = base.pow(m as u32, order);
    let quotient = numerator
        .div(&denominator)
        .map_err(|_| Error::OrderTooSmall { order, required })?;
    if quotient.precision() <= 0 {
        return Err(Error::OrderTooSmall { order, required });
    }
    Ok(quotient)
}

/// Classical Genocchi numbers `G_0..=G_{n_max}` from `2t / (e^t + 1)`.
pub fn classical_genocchi_table(n_max: u64) -> Vec<ExactScalar> {
    let len = n_max as usize + 1;
    let mut two = vec![ExactScalar::zero(); len];
    two[0] = int(2);
    let two_t = FormalSeries::new(1, two);
    let denom = FormalSeries::exp(len).add(&FormalSeries::constant(ExactScalar::one(), len));
    let gen = two_t.div(&denom).expect("e^t + 1 has constant term 2");
    (0..=n_max)
        .map(|n| {
            let c = gen.coefficient(n as i64).expect("expansion covers n_max");
            c * ExactScalar::from_integer(factorial(n))
        })
        .collect()
}

/// `G_n`, the coefficient of `t^n / n!` in `2t / (e^t + 1)`.
pub fn classical_genocchi(n: u64) -> ExactScalar {
    classical_genocchi_table(n).pop().unwrap()
}

/// `lim_{q -> 1} g_{n,q}^{(alpha,beta)} = G_n`, compared exactly on the
/// constant term of [`series_genocchi`] at `order = n + DEFAULT_GUARD`.
pub fn check_classical_limit(n: u64, w: WeightPair) -> Result<IdentityReport<ExactScalar>> {
    let series = series_genocchi(n, w, n as usize + DEFAULT_GUARD)?;
    let lhs = series.constant_term().ok_or(Error::OrderTooSmall {
        order: n as usize + DEFAULT_GUARD,
        required: n as usize + 2,
    })?;
    let rhs = classical_genocchi(n);
    let residual = &lhs - &rhs;
    let holds = residual.is_zero();
    Ok(IdentityReport::new(
        "classical limit",
        lhs,
        rhs,
        residual,
        Measure::Exact,
        holds,
    ))
}
