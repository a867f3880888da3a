//! Exact rational scalars and the small amount of arithmetic glue the rest of
//! the crate needs on top of [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime parts).
pub type ExactScalar = BigRational;

pub fn int(n: i64) -> ExactScalar {
    ExactScalar::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> ExactScalar {
    ExactScalar::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for any signed exponent.
///
/// Panics when `base` is zero and `exp` is negative.
pub fn powi(base: &ExactScalar, exp: i64) -> ExactScalar {
    let mag = exp.unsigned_abs();
    let mut acc = ExactScalar::one();
    let mut sq = base.clone();
    let mut e = mag;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    if exp < 0 {
        assert!(!acc.is_zero(), "zero raised to a negative power");
        acc.recip()
    } else {
        acc
    }
}

/// `C(n, 0..=n)` by Pascal's rule.
pub fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(BigInt::one());
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigInt::one());
        row = next;
    }
    row
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `(-1)^k` as a scalar.
pub fn sign_pow(k: u64) -> ExactScalar {
    if k.is_multiple_of(2) {
        ExactScalar::one()
    } else {
        -ExactScalar::one()
    }
}

/// Parses `"num/den"`, a plain integer or a finite decimal such as `"0.999"`.
pub fn parse_rational(text: &str) -> Result<ExactScalar> {
    let t = text.trim();
    let bad = || Error::InvalidArgument(format!("cannot parse {t:?} as a rational"));
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::InvalidArgument(format!("zero denominator in {t:?}")));
        }
        return Ok(ExactScalar::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = match whole {
            "" | "-" | "+" => BigInt::zero(),
            w => w.parse().map_err(|_| bad())?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| bad())?;
        let mag = whole.abs() * &scale + frac;
        let num = if negative { -mag } else { mag };
        return Ok(ExactScalar::new(num, scale));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(ExactScalar::from_integer(n))
}

/// Canonical `"num/den"` text; integers keep an explicit `/1`.
pub fn format_exact(r: &ExactScalar) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &ExactScalar) -> Result<f64> {
    match r.to_f64() {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(Error::NonFinite("rational to f64 conversion")),
    }
}

/// Exact p-adic valuation; `None` for zero.
pub fn p_valuation(r: &ExactScalar, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    Some(int_valuation(r.numer(), p) - int_valuation(r.denom(), p))
}

pub(crate) fn int_valuation(n: &BigInt, p: u64) -> i64 {
    let p = BigInt::from(p);
    let mut v = 0;
    let mut m = n.abs();
    loop {
        let (quot, rem) = m.div_rem(&p);
        if !rem.is_zero() || m.is_zero() {
            return v;
        }
        m = quot;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_rows() {
        let row: Vec<i64> = binomial_row(5)
            .iter()
            .map(|b| b.to_i64().unwrap())
            .collect();
        assert_eq!(row, vec![1, 5, 10, 10, 5, 1]);
        assert_eq!(binomial_row(0).len(), 1);
    }

    #[test]
    fn negative_powers() {
        assert_eq!(powi(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(powi(&ratio(-1, 2), 3), ratio(-1, 8));
        assert_eq!(powi(&int(0), 0), int(1));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational("0.999").unwrap(), ratio(999, 1000));
        assert_eq!(parse_rational("-.5").unwrap(), ratio(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn formatting_keeps_denominator() {
        assert_eq!(format_exact(&int(-1)), "-1/1");
        assert_eq!(format_exact(&ratio(6, 8)), "3/4");
    }

    #[test]
    fn valuations() {
        assert_eq!(p_valuation(&ratio(1, 3), 3), Some(-1));
        assert_eq!(p_valuation(&int(162), 3), Some(4));
        assert_eq!(p_valuation(&int(0), 3), None);
    }
}
