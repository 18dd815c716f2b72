//! The Sobolev form on the unit circle.
//!
//! With the normalized arc-length measure the monomials are orthonormal, so
//! `∫ f conj(g) dμ₀ = Σ_k f_k g_k` for real coefficients. The matrix
//! `M_{l,j} = (-1)^{l+j} C(ρ,l) C(ρ,j)` is `w wᵀ` with `w_l = (-1)^l C(ρ,l)`,
//! hence the form collapses to `⟨L_ρ f, L_ρ g⟩` with
//! `L_ρ = Σ_k (-1)^{ρ-k} C(ρ,k) D^k`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binomial, sign_pow, to_f64, ComplexPoint, Polynomial, Rational};
use crate::family::{self, Scaling};

/// The matrix `M` of the Sobolev form together with its rank-one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SobolevForm {
    rho: u32,
    matrix: Vec<Vec<BigInt>>,
    generator: Vec<BigInt>,
}

impl SobolevForm {
    pub fn rho(&self) -> u32 {
        self.rho
    }

    pub fn matrix(&self) -> &[Vec<BigInt>] {
        &self.matrix
    }

    /// `w_l = (-1)^l C(ρ,l)`
    pub fn generator(&self) -> &[BigInt] {
        &self.generator
    }
}

fn to_integer(r: Rational) -> BigInt {
    debug_assert!(r.is_integer());
    r.to_integer()
}

pub fn build_m(rho: u32) -> Result<SobolevForm> {
    if rho == 0 {
        return Err(Error::domain("rho must be a positive integer"));
    }
    let r = u64::from(rho);
    let binom: Vec<BigInt> = (0..=r).map(|l| to_integer(binomial(r, l))).collect();
    let matrix = (0..=r as usize)
        .map(|l| {
            (0..=r as usize)
                .map(|j| {
                    let m = &binom[l] * &binom[j];
                    if (l + j) % 2 == 0 {
                        m
                    } else {
                        -m
                    }
                })
                .collect()
        })
        .collect();
    let generator = binom
        .iter()
        .enumerate()
        .map(|(l, b)| if l % 2 == 0 { b.clone() } else { -b })
        .collect();
    Ok(SobolevForm { rho, matrix, generator })
}

/// `Σ_k (-1)^{ρ-k} C(ρ,k) f^{(k)}`, i.e. `(D - 1)^ρ f`.
pub fn apply_l(rho: u32, f: &Polynomial) -> Polynomial {
    let r = u64::from(rho);
    f.derivatives(rho as usize)
        .iter()
        .enumerate()
        .map(|(k, dk)| dk.scale(&(sign_pow(r - k as u64) * binomial(r, k as u64))))
        .sum()
}

/// `∫_𝕋 f conj(g) dμ₀` for polynomials with real rational coefficients.
pub fn circle_inner(f: &Polynomial, g: &Polynomial) -> Rational {
    f.coeffs()
        .iter()
        .zip(g.coeffs())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
}

/// `Σ_{l,j} M_{l,j} ∫ f^{(l)} conj(g^{(j)}) dμ₀`, evaluated entry by entry
/// from the matrix rather than through the factorization.
pub fn sobolev_inner(f: &Polynomial, g: &Polynomial, rho: u32) -> Rational {
    let form = build_m(rho).expect("rho must be a positive integer");
    let df = f.derivatives(rho as usize);
    let dg = g.derivatives(rho as usize);
    form_on_derivatives(&form, &df, &dg)
}

fn form_on_derivatives(form: &SobolevForm, df: &[Polynomial], dg: &[Polynomial]) -> Rational {
    let mut acc = Rational::zero();
    for (l, row) in form.matrix.iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            let inner = circle_inner(&df[l], &dg[j]);
            if !inner.is_zero() {
                acc += inner * Rational::from_integer(m.clone());
            }
        }
    }
    acc
}

/// Gram matrix `G[n][m] = ⟨y_n, y_m⟩_ρ` for `0 ≤ n, m ≤ n_max`.
pub fn gram(n_max: usize, rho: u32, scaling: Scaling) -> Vec<Vec<Rational>> {
    let ys: Vec<Polynomial> = (0..=n_max).map(|n| family::y(n, rho, scaling)).collect();
    gram_of(&ys, rho)
}

/// Gram matrix of an arbitrary list of polynomials.
pub fn gram_of(polys: &[Polynomial], rho: u32) -> Vec<Vec<Rational>> {
    let form = build_m(rho).expect("rho must be a positive integer");
    let derivs: Vec<Vec<Polynomial>> = polys.iter().map(|p| p.derivatives(rho as usize)).collect();
    derivs
        .iter()
        .map(|df| derivs.iter().map(|dg| form_on_derivatives(&form, df, dg)).collect())
        .collect()
}

fn horner(coeffs: &[f64], z: ComplexPoint) -> (f64, f64) {
    coeffs.iter().rev().fold((0.0, 0.0), |(re, im), &c| {
        (re * z.re() - im * z.im() + c, re * z.im() + im * z.re())
    })
}

/// `(1/N) Σ_j f(z_j) conj(g(z_j))` over the `N`-th roots of unity. Exact up to
/// rounding when `N > 2 max(deg f, deg g)`.
pub fn circle_inner_quadrature(f: &Polynomial, g: &Polynomial, num_nodes: usize) -> Result<ComplexPoint> {
    let deg = |p: &Polynomial| p.degree().finite().unwrap_or(0);
    let needed = 2 * deg(f).max(deg(g)) + 1;
    if num_nodes < needed {
        return Err(Error::Domain(format!(
            "{num_nodes} quadrature nodes given, at least {needed} needed"
        )));
    }
    let fc: Vec<f64> = f.coeffs().iter().map(to_f64).collect();
    let gc: Vec<f64> = g.coeffs().iter().map(to_f64).collect();
    let (mut re, mut im) = (0.0, 0.0);
    for j in 0..num_nodes {
        let z = ComplexPoint::unit(2.0 * PI * j as f64 / num_nodes as f64);
        let (fr, fi) = horner(&fc, z);
        let (gr, gi) = horner(&gc, z);
        // f(z) * conj(g(z))
        re += fr * gr + fi * gi;
        im += fi * gr - fr * gi;
    }
    let n = num_nodes as f64;
    ComplexPoint::new(re / n, im / n).map_err(|_| Error::NumericRange("quadrature sum overflowed".into()))
}
