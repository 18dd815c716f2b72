//! The polynomial family `y_n(ρ; x)` and its hypergeometric companion
//! `u_n(z) = ₂F₀(-n, ρ; -; z)`.
//!
//! `y_n` is built three independent ways:
//!
//! * [`gen_y`]: the closed form `Σ_j (-1)^ρ C(n-j+ρ-1, n-j) x^j / j!`;
//! * [`gen_y_toeplitz`]: `d = (-1)^ρ T^ρ e_n` with `T` the upper triangular
//!   all-ones matrix, then `Σ_j d_j x^j / j!`;
//! * [`gen_y_ode`]: back-substitution in `(D - 1)^ρ y = xⁿ`, which yields the
//!   `n!`-scaled member directly.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, factorial, int, matrix, pochhammer, sign_pow, ComplexPoint, Polynomial, Rational};

/// Normalization of the family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Scaling {
    /// Leading coefficient `(-1)^ρ / n!`; the `₂F₀` representation.
    #[default]
    Hypergeometric,
    /// `n!` times the hypergeometric member; solves `(D - 1)^ρ y = xⁿ`.
    Ode,
}

impl Scaling {
    pub const ALL: [Scaling; 2] = [Scaling::Hypergeometric, Scaling::Ode];

    pub fn as_str(self) -> &'static str {
        match self {
            Scaling::Hypergeometric => "hypergeometric",
            Scaling::Ode => "ode",
        }
    }
}

impl fmt::Display for Scaling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scaling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypergeometric" => Ok(Scaling::Hypergeometric),
            "ode" => Ok(Scaling::Ode),
            other => Err(Error::Domain(alloc::format!("unknown scaling `{other}`"))),
        }
    }
}

/// Selects one member `y_n(ρ; x)` of the family together with its scaling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    n: usize,
    rho: u32,
    scaling: Scaling,
}

impl FamilySpec {
    pub fn new(n: usize, rho: u32, scaling: Scaling) -> Result<Self> {
        if rho == 0 {
            return Err(Error::domain("rho must be a positive integer"));
        }
        Ok(Self { n, rho, scaling })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rho(&self) -> u32 {
        self.rho
    }

    pub fn scaling(&self) -> Scaling {
        self.scaling
    }
}

fn check_rho(rho: u32) {
    assert!(rho >= 1, "rho must be a positive integer");
}

/// `d_k(ρ) = (-1)^ρ C(n-k+ρ-1, n-k)`.
pub fn coeff_closed(n: usize, k: usize, rho: u32) -> Result<Rational> {
    if k > n {
        return Err(Error::Domain(alloc::format!("coefficient index {k} exceeds degree {n}")));
    }
    check_rho(rho);
    let m = (n - k) as u64;
    Ok(sign_pow(rho.into()) * binomial(m + u64::from(rho) - 1, m))
}

/// The vector `(d_0(ρ), ..., d_n(ρ))` of closed-form coefficients.
pub fn coeff_vector(n: usize, rho: u32) -> Vec<Rational> {
    (0..=n)
        .map(|k| coeff_closed(n, k, rho).expect("k <= n"))
        .collect()
}

/// `Σ_j d_j x^j / j!`
fn from_exponential_coeffs(d: Vec<Rational>) -> Polynomial {
    let coeffs = d
        .into_iter()
        .enumerate()
        .map(|(j, dj)| dj / factorial(j as u64))
        .collect();
    Polynomial::from_coeffs(coeffs)
}

/// Closed-form member of the family.
///
/// Degree is exactly `n`. The leading coefficient is `(-1)^ρ / n!` under
/// [`Scaling::Hypergeometric`] and `(-1)^ρ` under [`Scaling::Ode`].
pub fn gen_y(spec: FamilySpec) -> Polynomial {
    let y = from_exponential_coeffs(coeff_vector(spec.n, spec.rho));
    match spec.scaling {
        Scaling::Hypergeometric => y,
        Scaling::Ode => y.scale(&factorial(spec.n as u64)),
    }
}

/// Shorthand for [`gen_y`] with already validated parameters.
///
/// Panics if `rho == 0`.
pub fn y(n: usize, rho: u32, scaling: Scaling) -> Polynomial {
    gen_y(FamilySpec::new(n, rho, scaling).expect("rho must be positive"))
}

/// The `(n+1) × (n+1)` upper triangular matrix of ones.
pub fn toeplitz_ones(n: usize) -> matrix::Matrix {
    (0..=n)
        .map(|i| (0..=n).map(|j| if j >= i { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

/// Hypergeometric-scaled `y_n(ρ; x)` from `d(ρ) = (-1)^ρ T^ρ e_n`.
///
/// Panics if `rho == 0`.
pub fn gen_y_toeplitz(n: usize, rho: u32) -> Polynomial {
    check_rho(rho);
    let power = matrix::pow(&toeplitz_ones(n), rho.into());
    let mut e_n = vec![Rational::zero(); n + 1];
    e_n[n] = Rational::one();
    let sign = sign_pow(rho.into());
    let d = matrix::mul_vec(&power, &e_n)
        .into_iter()
        .map(|x| x * &sign)
        .collect();
    from_exponential_coeffs(d)
}

/// Polynomial solution of `Σ_k (-1)^{ρ-k} C(ρ,k) y^{(k)} = xⁿ`, found by
/// matching coefficients from the top degree down.
///
/// The coefficient of `x^i` on the left is
/// `(-1)^ρ a_i + Σ_{k≥1} (-1)^{ρ-k} C(ρ,k) (i+k)!/i! a_{i+k}`, so the system is
/// triangular with diagonal `(-1)^ρ`.
///
/// Panics if `rho == 0`.
pub fn gen_y_ode(n: usize, rho: u32) -> Polynomial {
    check_rho(rho);
    let rho = u64::from(rho);
    let diag = sign_pow(rho);
    let weights: Vec<Rational> = (0..=rho)
        .map(|k| sign_pow(rho - k) * binomial(rho, k))
        .collect();
    let mut a = vec![Rational::zero(); n + 1];
    for i in (0..=n).rev() {
        let mut rhs = if i == n { Rational::one() } else { Rational::zero() };
        // rising product (i+1)(i+2)...(i+k) = (i+k)!/i!
        let mut rising = Rational::one();
        for k in 1..=rho as usize {
            if i + k > n {
                break;
            }
            rising *= int((i + k) as i64);
            rhs -= &weights[k] * &rising * &a[i + k];
        }
        // diag is ±1, so dividing equals multiplying
        a[i] = rhs * &diag;
    }
    Polynomial::from_coeffs(a)
}

/// `u_n(z) = Σ_k (-n)_k (ρ)_k z^k / k!`
///
/// Panics if `rho == 0`.
pub fn gen_u(n: usize, rho: u32) -> Polynomial {
    check_rho(rho);
    let minus_n = -int(n as i64);
    let rho = int(rho.into());
    let coeffs = (0..=n as u64)
        .map(|k| pochhammer(&minus_n, k) * pochhammer(&rho, k) / factorial(k))
        .collect();
    Polynomial::from_coeffs(coeffs)
}

/// Coefficients of the terminating series `₂F₀(-n, ρ; -; z)` built from the
/// term ratio `t_{k+1} / t_k = (k - n)(k + ρ) / (k + 1)`.
///
/// Panics if `rho == 0`.
pub fn hyp2f0_series(n: usize, rho: u32) -> Polynomial {
    check_rho(rho);
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut term = Rational::one();
    for k in 0..=n as i64 {
        coeffs.push(term.clone());
        term = term * int(k - n as i64) * int(k + i64::from(rho)) / int(k + 1);
    }
    Polynomial::from_coeffs(coeffs)
}

/// Numeric value of `₂F₀(-n, ρ; -; z)`: the series is summed exactly and the
/// resulting polynomial evaluated at `z`.
pub fn hyp2f0_terminating(n: usize, rho: u32, z: ComplexPoint) -> Result<ComplexPoint> {
    if rho == 0 {
        return Err(Error::domain("rho must be a positive integer"));
    }
    hyp2f0_series(n, rho).eval_complex(z)
}

/// `(-1)^ρ / n! · xⁿ ₂F₀(-n, ρ; -; -1/x)` with the negative powers cleared:
/// `xⁿ F(-1/x) = Σ_k t_k (-1)^k x^{n-k}` is the reversal of `F(-x)`.
pub fn y_from_2f0(n: usize, rho: u32) -> Polynomial {
    let reversed = hyp2f0_series(n, rho)
        .alternate_signs()
        .reverse(n)
        .expect("series has degree n");
    reversed.scale(&(sign_pow(rho.into()) / factorial(n as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn poly(cs: &[Rational]) -> Polynomial {
        Polynomial::from_coeffs(cs.to_vec())
    }

    /// One application of `d_k(ρ+1) = -Σ_{j≥k} d_j(ρ)`.
    fn step_oracle(d: &[Rational]) -> Vec<Rational> {
        (0..d.len())
            .map(|k| -d[k..].iter().fold(Rational::zero(), |acc, x| acc + x))
            .collect()
    }

    #[test]
    fn step_oracle_from_rho_one() {
        let base = vec![int(-1), int(-1), int(-1)];
        assert_eq!(step_oracle(&base), vec![int(3), int(2), int(1)]);
    }

    #[test]
    fn closed_coefficients() {
        for n in 0..6 {
            for rho in 1..5u32 {
                assert_eq!(coeff_closed(n, n, rho).unwrap(), sign_pow(rho.into()));
            }
        }
        assert_eq!(coeff_closed(1, 0, 2).unwrap(), int(2));
        assert_eq!(coeff_closed(2, 0, 2).unwrap(), int(3));
        assert!(matches!(coeff_closed(2, 3, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(y(1, 2, Scaling::Hypergeometric), poly(&[int(2), int(1)]));
        assert_eq!(y(2, 1, Scaling::Ode), poly(&[int(-2), int(-2), int(-1)]));
        for scaling in Scaling::ALL {
            assert_eq!(y(0, 3, scaling), poly(&[int(-1)]));
        }
        assert_eq!(y(2, 2, Scaling::Hypergeometric), poly(&[int(3), int(2), frac(1, 2)]));
    }

    #[test]
    fn toeplitz_examples() {
        assert_eq!(gen_y_toeplitz(2, 1), poly(&[int(-1), int(-1), frac(-1, 2)]));
        assert_eq!(gen_y_toeplitz(0, 5), poly(&[int(-1)]));
        assert_eq!(gen_y_toeplitz(2, 2), poly(&[int(3), int(2), frac(1, 2)]));
    }

    #[test]
    fn ode_solve_examples() {
        assert_eq!(gen_y_ode(1, 1), poly(&[int(-1), int(-1)]));
        assert_eq!(gen_y_ode(2, 2), poly(&[int(6), int(4), int(1)]));
        for rho in 1..6u32 {
            assert_eq!(gen_y_ode(0, rho), poly(&[sign_pow(rho.into())]));
        }
    }

    #[test]
    fn u_examples() {
        for rho in 1..5u32 {
            assert_eq!(gen_u(1, rho), poly(&[int(1), -int(rho.into())]));
            assert_eq!(gen_u(0, rho), Polynomial::one());
        }
        assert_eq!(gen_u(2, 2), poly(&[int(1), int(-4), int(6)]));
    }

    #[test]
    fn series_matches_pochhammer_route() {
        for n in 0..12 {
            for rho in 1..6 {
                assert_eq!(hyp2f0_series(n, rho), gen_u(n, rho));
            }
        }
    }

    #[test]
    fn hyp2f0_values() {
        let half = ComplexPoint::real(0.5);
        assert_eq!(hyp2f0_terminating(1, 2, half).unwrap(), ComplexPoint::real(0.0));
        for n in 0..8 {
            assert_eq!(hyp2f0_terminating(n, 3, ComplexPoint::real(0.0)).unwrap(), ComplexPoint::real(1.0));
        }
        assert_eq!(hyp2f0_terminating(2, 2, ComplexPoint::real(1.0)).unwrap(), ComplexPoint::real(3.0));
        assert!(hyp2f0_terminating(2, 0, half).is_err());
    }

    #[test]
    fn generators_agree() {
        for n in 0..=20 {
            for rho in 1..=6 {
                let closed = y(n, rho, Scaling::Hypergeometric);
                assert_eq!(gen_y_toeplitz(n, rho), closed, "toeplitz n={n} rho={rho}");
                assert_eq!(gen_y_ode(n, rho), y(n, rho, Scaling::Ode), "ode n={n} rho={rho}");
                assert_eq!(y_from_2f0(n, rho), closed, "2F0 n={n} rho={rho}");
            }
        }
    }

    #[test]
    fn closed_form_obeys_step_recurrence() {
        for n in 0..=20 {
            for rho in 1..=6 {
                assert_eq!(step_oracle(&coeff_vector(n, rho)), coeff_vector(n, rho + 1));
            }
        }
    }

    #[test]
    fn degree_and_leading_coefficient() {
        for n in 0..=20 {
            for rho in 1..=6 {
                let p = y(n, rho, Scaling::Hypergeometric);
                assert_eq!(p.degree().finite(), Some(n));
                assert_eq!(p.leading_coeff().unwrap(), &(sign_pow(rho.into()) / factorial(n as u64)));
                let q = y(n, rho, Scaling::Ode);
                assert_eq!(q.leading_coeff().unwrap(), &sign_pow(rho.into()));
            }
        }
    }

    #[test]
    fn spec_rejects_zero_rho() {
        assert!(FamilySpec::new(3, 0, Scaling::Ode).is_err());
        assert_eq!("ode".parse::<Scaling>().unwrap(), Scaling::Ode);
        assert!("bogus".parse::<Scaling>().is_err());
    }
}
