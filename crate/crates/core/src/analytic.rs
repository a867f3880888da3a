//! Floating-point side of the crate: the weighted q-zeta function, Abel radial
//! summation, extrapolation and the `q -> 1` Hurwitz-Euler limit.
//!
//! The defining series `[2]_{q^beta} sum_m (-1)^m / [m + x]_{q^alpha}^s` does
//! not have vanishing terms (`[m + x]_{q^alpha} -> 1 / (1 - q^alpha)`), so it is
//! only meaningful in the Abel sense. Expanding
//! `[m + x]^(-s) = (1 - q^alpha)^s sum_j C(-s, j) (-1)^j q^(alpha j (m + x))` and
//! summing each geometric series in `m` gives
//!
//! ```text
//! xi(s, x | q) = [2]_{q^beta} (1 - q^alpha)^s sum_j (s)_j / j! * q^(alpha j x) / (1 + q^(alpha j))
//! ```
//!
//! which converges absolutely for every complex `s` and terminates when `s`
//! is a non-positive integer. That series is what [`qzeta`] evaluates.
//!
//! Grouping the defining series in pairs is *not* a valid substitute: for a
//! constant sequence the pairwise sum is `0` while the Abel value is `1/2`.
//! Use [`abel_radial_sum`] whenever a divergent-looking alternating form must
//! be evaluated directly.

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::genocchi::{
    genocchi_number, genocchi_polynomial_in_y, PolyArgument, QPoint, WeightPair,
};
use crate::report::{IdentityReport, Measure};
use crate::scalar::{int, to_f64};

pub type ComplexValue = Complex64;

/// Maximum number of series terms any single evaluation may use.
pub const TERM_BUDGET: u64 = 10_000_000;

/// Largest acceptable jump between the last two diagonal Richardson entries,
/// relative to `max(1, |estimate|)`.
pub const ABEL_STABILITY: f64 = 1e-6;

/// Deepest radius of the fixed schedule `r_k = 1 - 2^(-k)`.
pub const RADIAL_LEVELS: u32 = 12;

/// Parameters of `xi^{(alpha,beta)}(s, x | q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaParams {
    pub s: Complex64,
    pub x: f64,
    pub w: WeightPair,
    pub q: f64,
}

impl ZetaParams {
    pub fn new(s: Complex64, x: f64, w: WeightPair, q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::InvalidQ(format!("q = {q} must lie in (0, 1)")));
        }
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::InvalidArgument(format!("x = {x} must be positive")));
        }
        if !(s.re.is_finite() && s.im.is_finite()) {
            return Err(Error::InvalidArgument("s must be finite".into()));
        }
        Ok(ZetaParams { s, x, w, q })
    }
}

/// Result of a q-zeta evaluation with the number of series terms it took.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: Complex64,
    pub terms: u64,
}

/// `xi^{(alpha,beta)}(s, x | q)` through the binomial continuation, truncated
/// once the geometric tail bound drops below `tol` times the partial sum.
pub fn qzeta(params: &ZetaParams, tol: f64) -> Result<Complex64> {
    qzeta_with_count(params, tol).map(|z| z.value)
}

pub fn qzeta_with_count(params: &ZetaParams, tol: f64) -> Result<ZetaValue> {
    let ZetaParams { s, x, w, q } = *params;
    let qa = q.powi(w.alpha() as i32);
    let z = qa.powf(x);
    let spread = (s - 1.0).norm();

    let mut coef = Complex64::new(1.0, 0.0);
    let mut z_j = 1.0;
    let mut qa_j = 1.0;
    let mut sum = Complex64::zero();
    let mut j: u64 = 0;
    loop {
        if j >= TERM_BUDGET {
            return Err(Error::BudgetExceeded {
                needed: j + 1,
                budget: TERM_BUDGET,
            });
        }
        sum += coef * (z_j / (1.0 + qa_j));
        let next = coef * (s + j as f64) / (j as f64 + 1.0);
        z_j *= z;
        qa_j *= qa;
        j += 1;
        if next.is_zero() {
            break;
        }
        // |c_{i+1} / c_i| <= 1 + |s - 1| / (i + 1) for every later index
        let growth = 1.0 + spread / (j as f64 + 1.0);
        let ratio = growth * z;
        if ratio < 1.0 {
            let tail = next.norm() * z_j / (1.0 - ratio);
            if tail <= tol * sum.norm().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        coef = next;
        if !(coef.re.is_finite() && coef.im.is_finite()) {
            return Err(Error::NonFinite("q-zeta coefficients"));
        }
    }
    let prefactor = (1.0 + q.powi(w.beta() as i32)) * (s * (1.0 - qa).ln()).exp();
    let value = prefactor * sum;
    if value.re.is_finite() && value.im.is_finite() {
        Ok(ZetaValue { value, terms: j })
    } else {
        Err(Error::NonFinite("q-zeta"))
    }
}

/// The schedule `r_k = 1 - 2^(-k)`, `k = 1..=RADIAL_LEVELS`.
pub fn default_radii() -> Vec<f64> {
    (1..=RADIAL_LEVELS)
        .map(|k| 1.0 - (-(k as f64)).exp2())
        .collect()
}

/// Polynomial extrapolation of `values[i] ~ f(steps[i])` to `f(0)` (Neville's
/// scheme; Richardson's tableau when the steps halve). Returns the estimate
/// and the gap between the last two diagonal entries.
pub fn extrapolate_to_zero<T>(steps: &[f64], values: &[T]) -> (T, f64)
where
    T: Copy
        + std::ops::Sub<Output = T>
        + std::ops::Add<Output = T>
        + std::ops::Mul<f64, Output = T>
        + Norm,
{
    assert_eq!(steps.len(), values.len());
    assert!(!values.is_empty(), "nothing to extrapolate");
    let mut table: Vec<T> = values.to_vec();
    let mut diagonal = vec![values[0]];
    for level in 1..values.len() {
        for i in (level..values.len()).rev() {
            let h_far = steps[i - level];
            let h_near = steps[i];
            let t = table[i] - table[i - 1];
            table[i] = table[i] + t * (h_near / (h_far - h_near));
        }
        diagonal.push(table[level]);
    }
    let last = diagonal[diagonal.len() - 1];
    let gap = if diagonal.len() > 1 {
        (last - diagonal[diagonal.len() - 2]).norm_value()
    } else {
        f64::INFINITY
    };
    (table[values.len() - 1], gap)
}

/// Magnitude used by [`extrapolate_to_zero`] to report its gap.
pub trait Norm {
    fn norm_value(&self) -> f64;
}

impl Norm for f64 {
    fn norm_value(&self) -> f64 {
        self.abs()
    }
}

impl Norm for Complex64 {
    fn norm_value(&self) -> f64 {
        self.norm()
    }
}

/// `A(r) = sum_m (-1)^m r^m a_m` for one radius `r < 1`.
pub fn radial_value<F: Fn(u64) -> f64>(term_fn: &F, r: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "radius {r} must lie in (0, 1)"
        )));
    }
    // Neumaier compensated summation
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut rm = 1.0f64;
    for m in 0..TERM_BUDGET {
        let a = term_fn(m);
        let t = if m % 2 == 0 { rm * a } else { -rm * a };
        let s = sum + t;
        comp += if sum.abs() >= t.abs() {
            (sum - s) + t
        } else {
            (t - s) + sum
        };
        sum = s;
        if !sum.is_finite() {
            return Err(Error::NotAbelSummable(format!(
                "partial sums overflow at r = {r}"
            )));
        }
        rm *= r;
        let scale = (sum + comp).abs().max(1.0);
        if m >= 16 && rm <= 1e-17 && t.abs() <= 1e-17 * scale {
            return Ok(sum + comp);
        }
    }
    Err(Error::NotAbelSummable(format!(
        "radial sum at r = {r} exceeded the term budget"
    )))
}

/// Abel sum of `sum_m (-1)^m a_m`: evaluate `A(r)` on each radius and, when
/// `extrapolate` is set, extrapolate `r -> 1-` in the step `h = 1 - r`.
///
/// Fails when the last two extrapolants disagree by more than
/// [`ABEL_STABILITY`] (relative to `max(1, |value|)`).
pub fn abel_radial_sum<F: Fn(u64) -> f64>(
    term_fn: F,
    r_schedule: &[f64],
    extrapolate: bool,
) -> Result<f64> {
    if r_schedule.is_empty() {
        return Err(Error::InvalidArgument("empty radius schedule".into()));
    }
    let values = r_schedule
        .iter()
        .map(|&r| radial_value(&term_fn, r))
        .collect::<Result<Vec<_>>>()?;
    if !extrapolate {
        return Ok(*values.last().unwrap());
    }
    let steps: Vec<f64> = r_schedule.iter().map(|r| 1.0 - r).collect();
    let (value, gap) = extrapolate_to_zero(&steps, &values);
    if !value.is_finite() || gap > ABEL_STABILITY * value.abs().max(1.0) {
        return Err(Error::NotAbelSummable(format!(
            "extrapolation did not stabilise (last change {gap:e})"
        )));
    }
    Ok(value)
}

fn relative_error(value: f64, reference: f64) -> f64 {
    let diff = (value - reference).abs();
    if reference == 0.0 {
        diff
    } else {
        diff / reference.abs()
    }
}

fn tolerance_report(identity: &'static str, lhs: f64, rhs: f64, tol: f64) -> IdentityReport<f64> {
    let error = relative_error(lhs, rhs);
    IdentityReport::new(
        identity,
        lhs,
        rhs,
        lhs - rhs,
        Measure::Tolerance { error, tol },
        error <= tol,
    )
}

fn analytic_q(q: &QPoint) -> Result<f64> {
    let qf = q.to_f64()?;
    if qf >= 1.0 {
        return Err(Error::InvalidQ(format!(
            "q = {q} must be below 1 for Abel summation"
        )));
    }
    Ok(qf)
}

/// `[2]_{q^beta} * Abel sum_m (-1)^m [m]_{q^alpha}^n` against the exact closed
/// form of `g_{n+1,q}/(n+1)`; relative tolerance.
pub fn series_number_check(
    n: u32,
    w: WeightPair,
    q: &QPoint,
    tol: f64,
) -> Result<IdentityReport<f64>> {
    let qf = analytic_q(q)?;
    let qa = qf.powi(w.alpha() as i32);
    let bracket = move |m: u64| ((1.0 - qa.powf(m as f64)) / (1.0 - qa)).powi(n as i32);
    let abel = abel_radial_sum(bracket, &default_radii(), true)?;
    let lhs = (1.0 + qf.powi(w.beta() as i32)) * abel;
    let exact = genocchi_number(n as u64 + 1, w, q) / int(n as i64 + 1);
    Ok(tolerance_report(
        "series vs closed form",
        lhs,
        to_f64(&exact)?,
        tol,
    ))
}

/// Truncated Taylor series `sum_{n <= n_terms} g_n(x) t^n / n!` against
/// `[2]_{q^beta} t * Abel sum_m (-1)^m e^(t [m + x]_{q^alpha})`.
pub fn generating_check(
    t: f64,
    arg: &PolyArgument,
    w: WeightPair,
    q: &QPoint,
    n_terms: u32,
    tol: f64,
) -> Result<IdentityReport<f64>> {
    if t.is_nan() || t.abs() > 0.25 {
        return Err(Error::InvalidArgument(format!(
            "|t| = {} exceeds 1/4",
            t.abs()
        )));
    }
    let qf = analytic_q(q)?;
    let y = to_f64(arg.y())?;
    let mut taylor = 0.0;
    let mut power = 1.0;
    for n in 0..=n_terms as u64 {
        let coeff = genocchi_polynomial_in_y(n, w, q).evaluate_f64(y)?;
        taylor += coeff * power;
        power *= t / (n as f64 + 1.0);
    }
    let qa = qf.powi(w.alpha() as i32);
    let ya = y.powi(w.alpha() as i32);
    let term = move |m: u64| (t * (1.0 - qa.powf(m as f64) * ya) / (1.0 - qa)).exp();
    let abel = abel_radial_sum(term, &default_radii(), true)?;
    let closed = (1.0 + qf.powi(w.beta() as i32)) * t * abel;
    Ok(tolerance_report("generating function", taylor, closed, tol))
}

/// `sum_k (-1)^k a_k` by the Cohen-Villegas-Zagier acceleration with `n`
/// terms.
pub fn alternating_sum<F: Fn(u64) -> Complex64>(a: F, n: u32) -> Complex64 {
    let nf = n as f64;
    let mut d = (3.0 + 8f64.sqrt()).powf(nf);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = Complex64::zero();
    for k in 0..n {
        let kf = k as f64;
        c = b - c;
        s += a(k as u64) * c;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// `2 sum_m (-1)^m (m + x)^(-s)`, the `q -> 1` limit of `xi^{(1,1)}`.
pub fn hurwitz_euler(s: Complex64, x: f64) -> Complex64 {
    alternating_sum(|m| Complex64::new(m as f64 + x, 0.0).powc(-s), 64) * 2.0
}

/// The schedule `q_k = 1 - 2^(-k)` used for the `q -> 1` limit.
pub fn default_q_schedule() -> Vec<f64> {
    (1..=RADIAL_LEVELS)
        .map(|k| 1.0 - (-(k as f64)).exp2())
        .collect()
}

/// Extrapolates `xi^{(1,1)}(s, x | q)` along `q_schedule` to `q = 1` and compares
/// with [`hurwitz_euler`]; absolute tolerance.
pub fn hurwitz_limit_check(
    s: Complex64,
    x: f64,
    q_schedule: &[f64],
    tol: f64,
) -> Result<IdentityReport<Complex64>> {
    if s.re <= 0.0 {
        return Err(Error::InvalidArgument(
            "the reference series needs Re(s) > 0".into(),
        ));
    }
    if q_schedule.is_empty() {
        return Err(Error::InvalidArgument("empty q schedule".into()));
    }
    let values = q_schedule
        .iter()
        .map(|&q| qzeta(&ZetaParams::new(s, x, WeightPair::unit(), q)?, 1e-16))
        .collect::<Result<Vec<_>>>()?;
    let steps: Vec<f64> = q_schedule.iter().map(|q| 1.0 - q).collect();
    let (lhs, _) = extrapolate_to_zero(&steps, &values);
    let rhs = hurwitz_euler(s, x);
    let residual = lhs - rhs;
    let error = residual.norm();
    Ok(IdentityReport::new(
        "Hurwitz-Euler limit",
        lhs,
        rhs,
        residual,
        Measure::Tolerance { error, tol },
        error <= tol,
    ))
}
