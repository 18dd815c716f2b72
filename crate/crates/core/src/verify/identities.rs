use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use super::{CheckKind, CheckReport, Suite};
use crate::exact::{factorial, int, sign_pow, to_f64, Polynomial, Rational};
use crate::family::{self, Scaling};
use crate::sobolev;

/// Absolute-plus-relative tolerance of the root-of-unity quadrature.
pub const QUADRATURE_TOLERANCE: f64 = 1e-10;

/// `x (L_ρ y)' - n L_ρ y` for `y = y_n(ρ; x)`.
pub fn residual_ode_high(n: usize, rho: u32, scaling: Scaling) -> Polynomial {
    let ly = sobolev::apply_l(rho, &family::y(n, rho, scaling));
    ly.derivative(1).shift(1) - ly.scale(&int(n as i64))
}

/// `x y'' - (x + ρ - 1) y' - n (y' - y)`.
pub fn residual_ode_second(n: usize, rho: u32, scaling: Scaling) -> Polynomial {
    let y = family::y(n, rho, scaling);
    let d1 = y.derivative(1);
    let d2 = y.derivative(2);
    let n = int(n as i64);
    d2.shift(1) - d1.shift(1) - d1.scale(&int(i64::from(rho) - 1)) - (&d1 - &y).scale(&n)
}

/// `z² u'' + (ρ+1) z u' - n (z u' + ρ u) - u'` for `u = u_n(z)`.
pub fn residual_u_ode(n: usize, rho: u32) -> Polynomial {
    let u = family::gen_u(n, rho);
    let d1 = u.derivative(1);
    let d2 = u.derivative(2);
    let rho = int(rho.into());
    let n = int(n as i64);
    d2.shift(2) + d1.shift(1).scale(&(&rho + Rational::one()))
        - (d1.shift(1) + u.scale(&rho)).scale(&n)
        - d1
}

pub(super) fn report_ode_high(n: usize, rho: u32, scaling: Scaling) -> CheckReport {
    CheckReport::new("ode_high", Suite::Ode, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho)
        .with_scaling(scaling)
        .residual(residual_ode_high(n, rho, scaling))
}

pub(super) fn report_ode_second(n: usize, rho: u32, scaling: Scaling) -> CheckReport {
    CheckReport::new("ode_second", Suite::Ode, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho)
        .with_scaling(scaling)
        .residual(residual_ode_second(n, rho, scaling))
}

pub(super) fn report_u_ode(n: usize, rho: u32) -> CheckReport {
    CheckReport::new("u_ode", Suite::Ode, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho)
        .residual(residual_u_ode(n, rho))
}

/// `u_n(z) = n! (-1)^{n+ρ} zⁿ y_n(ρ; -1/z)` as a coefficient identity:
/// `zⁿ y(-1/z)` is the degree-`n` reversal of `y(-x)`.
pub fn check_u_y_relation(n: usize, rho: u32) -> CheckReport {
    let y = family::y(n, rho, Scaling::Hypergeometric);
    let factor = factorial(n as u64) * sign_pow(n as u64 + u64::from(rho));
    let rhs = y
        .alternate_signs()
        .reverse(n)
        .expect("y_n has degree n")
        .scale(&factor);
    CheckReport::new("u_y_relation", Suite::Ode, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho)
        .residual(family::gen_u(n, rho) - rhs)
}

/// `d_k(ρ+1) = -Σ_{j=k}^{n} d_j(ρ)` for every `k`, using the closed form on
/// both sides.
pub fn check_step_rho(n: usize, rho: u32) -> CheckReport {
    let current = family::coeff_vector(n, rho);
    let next = family::coeff_vector(n, rho + 1);
    let mut tail = Rational::zero();
    let mut diff = alloc::vec![Rational::zero(); n + 1];
    for k in (0..=n).rev() {
        tail += &current[k];
        diff[k] = &next[k] + &tail;
    }
    CheckReport::new("step_rho", Suite::Recurrence, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho)
        .residual(Polynomial::from_coeffs(diff))
}

/// Closed form, Toeplitz power, triangular ODE solve and the `₂F₀`
/// representation all produce the same polynomial.
pub fn check_generators(n: usize, rho: u32) -> CheckReport {
    let closed = family::y(n, rho, Scaling::Hypergeometric);
    let candidates = [
        ("toeplitz", family::gen_y_toeplitz(n, rho)),
        ("ode_solve", family::gen_y_ode(n, rho).scale(&factorial(n as u64).recip())),
        ("hypergeometric_2f0", family::y_from_2f0(n, rho)),
    ];
    let report = CheckReport::new("generator_agreement", Suite::Ode, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho);
    for (name, p) in candidates {
        let diff = p - &closed;
        if !diff.is_zero() {
            return report.with_detail(format!("{name} disagrees with the closed form")).residual(diff);
        }
    }
    report.residual(Polynomial::zero())
}

/// `L_ρ y = xⁿ` for the ODE-scaled member and `xⁿ/n!` for the
/// hypergeometric one.
pub fn check_ode_image(n: usize, rho: u32, scaling: Scaling) -> CheckReport {
    let (y, target) = match scaling {
        Scaling::Ode => (family::gen_y_ode(n, rho), Polynomial::monomial(Rational::one(), n)),
        Scaling::Hypergeometric => (
            family::y(n, rho, scaling),
            Polynomial::monomial(factorial(n as u64).recip(), n),
        ),
    };
    CheckReport::new("ode_image", Suite::Ode, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho)
        .with_scaling(scaling)
        .residual(sobolev::apply_l(rho, &y) - target)
}

/// `y_1(ρ; x)` vanishes only at `-ρ`, which lies on the unit circle iff ρ = 1.
pub fn check_root_remark(rho: u32) -> CheckReport {
    let y1 = family::y(1, rho, Scaling::Hypergeometric);
    let root = -(y1.coeff(0) / y1.coeff(1));
    let on_circle = root.abs().is_one();
    let ok = root == -int(rho.into()) && on_circle == (rho == 1);
    CheckReport::new("root_remark", Suite::Ode, CheckKind::Mandatory)
        .param("n", 1)
        .param("rho", rho)
        .with_detail(format!("root {root}, |root| = 1: {on_circle}"))
        .outcome(ok)
}

fn expected_gram_diagonal(n: usize, scaling: Scaling) -> Rational {
    match scaling {
        Scaling::Ode => Rational::one(),
        Scaling::Hypergeometric => {
            let f = factorial(n as u64);
            (&f * &f).recip()
        }
    }
}

fn first_mismatch(g: &[Vec<Rational>], expected: impl Fn(usize, usize) -> Rational) -> Option<(usize, usize, Rational)> {
    for (i, row) in g.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if *v != expected(i, j) {
                return Some((i, j, v.clone()));
            }
        }
    }
    None
}

/// Gram matrix of `y_0, ..., y_{n_max}` is diagonal with entries `1`
/// (ODE scaling) or `1/(n!)²` (hypergeometric scaling).
pub fn check_gram(n_max: usize, rho: u32, scaling: Scaling) -> CheckReport {
    let g = sobolev::gram(n_max, rho, scaling);
    let mismatch = first_mismatch(&g, |i, j| {
        if i == j {
            expected_gram_diagonal(i, scaling)
        } else {
            Rational::zero()
        }
    });
    let report = CheckReport::new("gram_diagonal", Suite::Gram, CheckKind::Mandatory)
        .param("n_max", n_max as i64)
        .param("rho", rho)
        .with_scaling(scaling);
    match mismatch {
        None => report.outcome(true),
        Some((i, j, v)) => report.with_detail(format!("G[{i}][{j}] = {v}")).outcome(false),
    }
}

/// The orthogonality relation read literally for the hypergeometric scaling:
/// Gram matrix equal to the identity.
pub fn check_gram_as_printed(n_max: usize, rho: u32) -> CheckReport {
    let g = sobolev::gram(n_max, rho, Scaling::Hypergeometric);
    let mismatch = first_mismatch(&g, |i, j| if i == j { Rational::one() } else { Rational::zero() });
    let report = CheckReport::new("gram_identity_as_printed", Suite::Fidelity, CheckKind::Advisory)
        .param("n_max", n_max as i64)
        .param("rho", rho)
        .with_scaling(Scaling::Hypergeometric);
    match mismatch {
        None => report.outcome(true),
        Some((i, j, v)) => report
            .with_detail(format!("G[{i}][{j}] = {v}; the diagonal is 1/(n!)^2, the identity holds under ode scaling"))
            .outcome(false),
    }
}

/// Root-of-unity quadrature of `⟨y_n, y_m⟩` against the exact coefficient sum
/// for all `n, m ≤ n_max`, with `N = 2 max(n, m) + 1` nodes.
pub fn check_quadrature(n_max: usize, rho: u32) -> CheckReport {
    let ys: Vec<Polynomial> = (0..=n_max)
        .map(|n| family::y(n, rho, Scaling::Hypergeometric))
        .collect();
    let report = CheckReport::new("circle_quadrature", Suite::Gram, CheckKind::Mandatory)
        .param("n_max", n_max as i64)
        .param("rho", rho);
    let mut worst = 0.0f64;
    for (n, f) in ys.iter().enumerate() {
        for (m, g) in ys.iter().enumerate() {
            let exact = to_f64(&sobolev::circle_inner(f, g));
            let q = match sobolev::circle_inner_quadrature(f, g, 2 * n.max(m) + 1) {
                Ok(q) => q,
                Err(e) => return report.with_detail(format!("{e}")).outcome(false),
            };
            let err = libm::hypot(q.re() - exact, q.im()) / (1.0 + libm::fabs(exact));
            worst = worst.max(err);
        }
    }
    let mut report = report.outcome(worst <= QUADRATURE_TOLERANCE);
    report.numeric_error = Some(worst);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::CheckStatus;

    #[test]
    fn ode_residual_examples() {
        assert!(residual_ode_high(1, 1, Scaling::Ode).is_zero());
        for rho in 1..5 {
            for s in Scaling::ALL {
                assert!(residual_ode_high(0, rho, s).is_zero());
                assert!(residual_ode_second(1, rho, s).is_zero());
                assert!(residual_ode_second(0, rho, s).is_zero());
            }
            assert!(residual_u_ode(1, rho).is_zero());
            assert!(residual_u_ode(0, rho).is_zero());
        }
        assert!(residual_ode_high(5, 3, Scaling::Hypergeometric).is_zero());
        assert!(residual_ode_second(4, 2, Scaling::Hypergeometric).is_zero());
        assert!(residual_u_ode(3, 2).is_zero());
    }

    #[test]
    fn residuals_detect_wrong_polynomials() {
        // y_n(ρ) at the wrong ρ must not satisfy the second-order equation for ρ
        let y = family::y(3, 2, Scaling::Hypergeometric);
        let d1 = y.derivative(1);
        let wrong_rho = 3;
        let r = y.derivative(2).shift(1) - d1.shift(1) - d1.scale(&int(wrong_rho - 1)) - (&d1 - &y).scale(&int(3));
        assert!(!r.is_zero());
    }

    #[test]
    fn differential_equations_on_grid() {
        for n in 0..=20 {
            for rho in 1..=6 {
                for s in Scaling::ALL {
                    assert!(residual_ode_high(n, rho, s).is_zero(), "high n={n} rho={rho}");
                    assert!(residual_ode_second(n, rho, s).is_zero(), "second n={n} rho={rho}");
                }
                assert!(residual_u_ode(n, rho).is_zero(), "u n={n} rho={rho}");
                assert!(check_u_y_relation(n, rho).passed());
            }
        }
    }

    #[test]
    fn u_y_relation_examples() {
        assert!(check_u_y_relation(2, 2).passed());
        assert!(check_u_y_relation(0, 4).passed());
        assert!(check_u_y_relation(1, 1).passed());
    }

    #[test]
    fn step_recurrence() {
        assert!(check_step_rho(2, 1).passed());
        assert!(check_step_rho(0, 3).passed());
        assert!(check_step_rho(5, 4).passed());
        for n in 0..=20 {
            for rho in 1..=5 {
                assert!(check_step_rho(n, rho).passed());
            }
        }
    }

    #[test]
    fn root_remark() {
        for rho in 1..=6 {
            assert!(check_root_remark(rho).passed());
        }
    }

    #[test]
    fn gram_checks() {
        for s in Scaling::ALL {
            assert!(check_gram(6, 3, s).passed());
        }
        assert!(check_gram_as_printed(1, 2).passed());
        assert_eq!(check_gram_as_printed(3, 2).status, CheckStatus::AdvisoryFail);
    }

    #[test]
    fn quadrature_agrees() {
        let r = check_quadrature(20, 6);
        assert!(r.passed(), "{:?}", r.numeric_error);
    }
}
