use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genocchi::bracket_at;
use crate::scalar::{binomial_row, powi, ExactScalar};

/// `coeff * q^(twist * x) * [x]_{q^base}^power`.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegrandTerm {
    pub coeff: ExactScalar,
    pub twist: i64,
    pub base: u32,
    pub power: u32,
}

/// Finite linear combination of [`IntegrandTerm`]s. Closed under `x -> x + m`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IntegrandSpec {
    terms: Vec<IntegrandTerm>,
}

impl IntegrandSpec {
    pub fn new(terms: Vec<IntegrandTerm>) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.base == 0) {
            return Err(Error::InvalidArgument(format!(
                "bracket base exponent must be >= 1 (term with twist {})",
                t.twist
            )));
        }
        Ok(IntegrandSpec { terms }.collected())
    }

    /// A single term `coeff * q^(twist x) [x]_{q^base}^power`.
    pub fn single(coeff: ExactScalar, twist: i64, base: u32, power: u32) -> Result<Self> {
        IntegrandSpec::new(vec![IntegrandTerm {
            coeff,
            twist,
            base,
            power,
        }])
    }

    /// The constant function `c`.
    pub fn constant(c: ExactScalar) -> Self {
        IntegrandSpec {
            terms: vec![IntegrandTerm {
                coeff: c,
                twist: 0,
                base: 1,
                power: 0,
            }],
        }
        .collected()
    }

    pub fn terms(&self) -> &[IntegrandTerm] {
        &self.terms
    }

    /// Multiplies by `q^(c x)`.
    pub fn twisted(&self, c: i64) -> Self {
        IntegrandSpec {
            terms: self
                .terms
                .iter()
                .map(|t| IntegrandTerm {
                    twist: t.twist + c,
                    ..t.clone()
                })
                .collect(),
        }
    }

    /// `f(x) -> f(x + m)`, using `[x+m]_b = [m]_b + b^m [x]_b` and
    /// `q^(c(x+m)) = q^(cm) q^(cx)`.
    pub fn shift(&self, m: u64, q: &ExactScalar) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            let b = powi(q, t.base as i64);
            let head = bracket_at(m, &b);
            let lead = powi(&b, m as i64);
            let twist = powi(q, t.twist * m as i64);
            let row = binomial_row(t.power as usize);
            for (j, c) in row.iter().enumerate() {
                let coeff = &t.coeff
                    * &twist
                    * ExactScalar::from_integer(c.clone())
                    * powi(&head, t.power as i64 - j as i64)
                    * powi(&lead, j as i64);
                out.push(IntegrandTerm {
                    coeff,
                    twist: t.twist,
                    base: t.base,
                    power: j as u32,
                });
            }
        }
        IntegrandSpec { terms: out }.collected()
    }

    pub fn evaluate(&self, x: u64, q: &ExactScalar) -> ExactScalar {
        self.terms
            .iter()
            .map(|t| {
                let b = powi(q, t.base as i64);
                &t.coeff * powi(q, t.twist * x as i64) * powi(&bracket_at(x, &b), t.power as i64)
            })
            .fold(ExactScalar::zero(), |acc, v| acc + v)
    }

    /// Merges terms with the same shape and drops zero coefficients.
    fn collected(self) -> Self {
        let mut merged: BTreeMap<(i64, u32, u32), ExactScalar> = BTreeMap::new();
        for t in self.terms {
            // [x]^0 = 1 whatever the base
            let base = if t.power == 0 { 1 } else { t.base };
            *merged
                .entry((t.twist, base, t.power))
                .or_insert_with(ExactScalar::zero) += t.coeff;
        }
        IntegrandSpec {
            terms: merged
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((twist, base, power), coeff)| IntegrandTerm {
                    coeff,
                    twist,
                    base,
                    power,
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<ExactScalar> for IntegrandSpec {
    fn from(c: ExactScalar) -> Self {
        IntegrandSpec::constant(c)
    }
}
