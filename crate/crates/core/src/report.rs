use std::fmt;

/// How the verdict of an [`IdentityReport`] was reached.
#[derive(Debug, Clone, PartialEq)]
pub enum Measure {
    /// Exact rational equality: the residual must vanish.
    Exact,
    /// p-adic closeness: `v_p(residual) >= required`. `saturated` means the
    /// residual vanished to the working precision and `valuation` is only a
    /// lower bound.
    Valuation {
        prime: u64,
        valuation: i64,
        saturated: bool,
        required: i64,
    },
    /// Floating comparison: `error <= tol`, relative unless stated otherwise.
    Tolerance { error: f64, tol: f64 },
}

/// Both sides of an identity together with the residual `lhs - rhs`.
///
/// Keeping the sides (rather than only a boolean) makes printed errata
/// observable: an as-printed identity that fails still reports how far off it is.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<T> {
    pub identity: &'static str,
    pub lhs: T,
    pub rhs: T,
    pub residual: T,
    pub measure: Measure,
    pub holds: bool,
}

impl<T> IdentityReport<T> {
    pub fn new(
        identity: &'static str,
        lhs: T,
        rhs: T,
        residual: T,
        measure: Measure,
        holds: bool,
    ) -> Self {
        IdentityReport {
            identity,
            lhs,
            rhs,
            residual,
            measure,
            holds,
        }
    }
}

impl<T: fmt::Display> fmt::Display for IdentityReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: lhs = {}, rhs = {}, residual = {} [{}]",
            self.identity,
            self.lhs,
            self.rhs,
            self.residual,
            if self.holds { "holds" } else { "fails" }
        )
    }
}
