use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{int_valuation, ExactScalar};

/// An element of `Q_p` known to finite precision: `p^valuation * unit`, with
/// `unit` a p-adic unit known modulo `p^precision`.
///
/// Zero is represented by a zero unit; its `valuation` is then the exponent up
/// to which it is known to vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicNumber {
    prime: u64,
    valuation: i64,
    unit: BigInt,
    precision: u32,
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn modulus(p: u64, digits: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), digits as usize)
}

pub(crate) fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

/// Image of an exact rational in `Q_p` with `digits` digits of relative
/// precision.
pub fn padic_reduce(r: &ExactScalar, p: u64, digits: u32) -> Result<PadicNumber> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if digits == 0 {
        return Err(Error::PrecisionExhausted);
    }
    if r.is_zero() {
        return Ok(PadicNumber::zero(p, digits as i64));
    }
    let pb = BigInt::from(p);
    let vn = int_valuation(r.numer(), p);
    let vd = int_valuation(r.denom(), p);
    let num = r.numer() / num_traits::pow(pb.clone(), vn as usize);
    let den = r.denom() / num_traits::pow(pb, vd as usize);
    let m = modulus(p, digits);
    let inv = inverse_mod(&den.mod_floor(&m), &m).ok_or(Error::PrecisionExhausted)?;
    Ok(PadicNumber {
        prime: p,
        valuation: vn - vd,
        unit: (num * inv).mod_floor(&m),
        precision: digits,
    })
}

impl PadicNumber {
    /// Zero known modulo `p^known_to`.
    pub fn zero(prime: u64, known_to: i64) -> Self {
        PadicNumber {
            prime,
            valuation: known_to,
            unit: BigInt::zero(),
            precision: 0,
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn is_zero(&self) -> bool {
        self.unit.is_zero()
    }

    /// For nonzero numbers the exact valuation; for zero the exponent to
    /// which it is known to vanish.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn unit(&self) -> &BigInt {
        &self.unit
    }

    /// Relative precision in digits.
    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// The exponent `N` such that the number is known modulo `p^N`.
    pub fn absolute_precision(&self) -> i64 {
        self.valuation + self.precision as i64
    }

    /// Builds `p^shift * value` normalised to `known_to` absolute digits.
    pub(crate) fn from_integer(prime: u64, shift: i64, value: BigInt, known_to: i64) -> Self {
        let span = known_to - shift;
        if span <= 0 {
            return PadicNumber::zero(prime, known_to);
        }
        let value = value.mod_floor(&modulus(prime, span as u32));
        if value.is_zero() {
            return PadicNumber::zero(prime, known_to);
        }
        let t = int_valuation(&value, prime);
        let digits = (span - t) as u32;
        let unit = (value / num_traits::pow(BigInt::from(prime), t as usize))
            .mod_floor(&modulus(prime, digits));
        PadicNumber {
            prime,
            valuation: shift + t,
            unit,
            precision: digits,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        let known_to = self.absolute_precision().min(other.absolute_precision());
        let low = self.valuation.min(other.valuation);
        let p = BigInt::from(self.prime);
        let lift =
            |x: &PadicNumber| &x.unit * num_traits::pow(p.clone(), (x.valuation - low) as usize);
        PadicNumber::from_integer(self.prime, low, lift(self) + lift(other), known_to)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let m = modulus(self.prime, self.precision);
        PadicNumber {
            unit: (-&self.unit).mod_floor(&m),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.prime, other.prime, "mixed primes");
        if self.is_zero() || other.is_zero() {
            let known_to = (self.valuation + other.absolute_precision())
                .min(other.valuation + self.absolute_precision());
            return PadicNumber::zero(self.prime, known_to);
        }
        let digits = self.precision.min(other.precision);
        let m = modulus(self.prime, digits);
        PadicNumber {
            prime: self.prime,
            valuation: self.valuation + other.valuation,
            unit: (&self.unit * &other.unit).mod_floor(&m),
            precision: digits,
        }
    }

    /// Division; a divisor that vanishes to its precision exhausts it.
    pub fn div(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.prime, other.prime, "mixed primes");
        if other.is_zero() {
            return Err(Error::PrecisionExhausted);
        }
        if self.is_zero() {
            return Ok(PadicNumber::zero(
                self.prime,
                self.valuation - other.valuation,
            ));
        }
        let digits = self.precision.min(other.precision);
        let m = modulus(self.prime, digits);
        let inv = inverse_mod(&other.unit.mod_floor(&m), &m).ok_or(Error::PrecisionExhausted)?;
        Ok(PadicNumber {
            prime: self.prime,
            valuation: self.valuation - other.valuation,
            unit: (&self.unit * inv).mod_floor(&m),
            precision: digits,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = PadicNumber {
            prime: self.prime,
            valuation: 0,
            unit: BigInt::one(),
            precision: self.precision.max(1),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// The representative `p^v * unit` as an exact rational.
    pub fn to_rational(&self) -> ExactScalar {
        if self.is_zero() {
            return ExactScalar::zero();
        }
        let p = ExactScalar::from_integer(BigInt::from(self.prime));
        crate::scalar::powi(&p, self.valuation) * ExactScalar::from_integer(self.unit.clone())
    }

    /// Residue of an integral number modulo `p^digits`; `None` if the number
    /// is not integral or not known that far.
    pub fn residue(&self, digits: u32) -> Option<BigInt> {
        if self.is_zero() {
            return (self.valuation >= digits as i64).then(BigInt::zero);
        }
        if self.valuation < 0 || self.absolute_precision() < digits as i64 {
            return None;
        }
        // valuation >= 0, so the representative is an integer
        let r = self.to_rational();
        Some(r.numer().mod_floor(&modulus(self.prime, digits)))
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "O({}^{})", self.prime, self.valuation)
        } else {
            write!(
                f,
                "{}^{} * {} + O({}^{})",
                self.prime,
                self.valuation,
                self.unit,
                self.prime,
                self.absolute_precision()
            )
        }
    }
}
