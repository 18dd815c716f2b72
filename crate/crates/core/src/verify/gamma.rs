//! Numeric cross-check of `y_n(a) = -e^a ∫_a^∞ e^{-x} xⁿ dx` for the ρ = 1,
//! ODE-scaled member `y_n(x) = -n! Σ_k x^k/k!`.

use alloc::format;

use super::{CheckKind, CheckReport, Suite};
use crate::error::{Error, Result};
use crate::exact::ComplexPoint;
use crate::family;

/// Evaluation points of the grid check.
pub const GAMMA_POINTS: [f64; 3] = [0.5, 1.0, 2.0];

/// Relative tolerance of the grid check.
pub const GAMMA_TOLERANCE: f64 = 1e-8;

const INITIAL_PANELS: usize = 64;
const MAX_PANELS: usize = 1 << 24;

/// `e^{a-x} xⁿ`, evaluated in log space so large `x` does not overflow.
fn integrand(n: usize, a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { libm::exp(a) } else { 0.0 };
    }
    libm::exp(a - x + n as f64 * libm::log(x))
}

/// Upper limit `b` such that `e^a ∫_b^∞ e^{-x} xⁿ dx ≤ budget`, using
/// `∫_b^∞ e^{-x} xⁿ dx ≤ e^{-b} bⁿ (n+1)` for `b > 2n`.
fn truncation_point(n: usize, a: f64, budget: f64) -> f64 {
    let log_budget = libm::log(budget);
    let mut b = a.max(2.0 * n as f64) + 1.0;
    while a - b + n as f64 * libm::log(b) + libm::log(n as f64 + 1.0) > log_budget {
        b += 1.0;
    }
    b
}

fn simpson(n: usize, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let mut sum = integrand(n, a, a) + integrand(n, a, b);
    for i in 1..panels {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * integrand(n, a, a + i as f64 * h);
    }
    sum * h / 3.0
}

/// `-e^a ∫_a^∞ e^{-x} xⁿ dx` by composite Simpson on a truncated interval,
/// doubling the panel count until successive estimates agree to `tol / 10`.
pub fn gamma_side(n: usize, a: f64, tol: f64) -> Result<f64> {
    let b = truncation_point(n, a, tol / 10.0);
    let mut panels = INITIAL_PANELS;
    let mut previous = simpson(n, a, b, panels);
    while panels < MAX_PANELS {
        panels *= 2;
        let current = simpson(n, a, b, panels);
        if libm::fabs(current - previous) <= tol / 10.0 * libm::fabs(current) {
            return Ok(-current);
        }
        previous = current;
    }
    Err(Error::NonConvergence(format!(
        "Simpson quadrature for n = {n}, a = {a} did not settle within {MAX_PANELS} panels"
    )))
}

/// Compares the quadrature value with the exact polynomial `y_n(1; a)`
/// (ODE scaling). Since `|y_n(a)| ≥ n! ≥ 1` for `a > 0`, the absolute tail
/// budget `tol / 10` is also a relative one.
pub fn check_incomplete_gamma(n: usize, a: f64, tol: f64) -> CheckReport {
    let mut report = CheckReport::new("incomplete_gamma", Suite::Gamma, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", 1);
    report.at = Some(a);
    if !(a > 0.0 && a.is_finite()) || !(tol > 0.0) {
        return report.with_detail(format!("requires a > 0 and tol > 0, got a = {a}, tol = {tol}")).outcome(false);
    }
    let exact = match family::gen_y_ode(n, 1).eval_complex(ComplexPoint::real(a)) {
        Ok(v) => v.re(),
        Err(e) => return report.with_detail(format!("{e}")).outcome(false),
    };
    let numeric = match gamma_side(n, a, tol) {
        Ok(v) => v,
        Err(e) => return report.with_detail(format!("{e}")).outcome(false),
    };
    let err = libm::fabs(numeric - exact) / libm::fabs(exact);
    report.numeric_error = Some(err);
    report
        .with_detail(format!("polynomial {exact:.15e}, quadrature {numeric:.15e}"))
        .outcome(err <= tol)
}
