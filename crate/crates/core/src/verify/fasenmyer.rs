//! Contiguous relation among `u_{n-2}, ..., u_{n+1}` and its image for `y_n`.
//!
//! The relation
//!
//! ```text
//! R_n(z) = φ₁ u_{n-1} + φ₂ u_n + φ₃ u_{n+1} + φ₄ z u_n + φ₅ z u_{n-1} + φ₆ u_{n-2} ≡ 0
//! ```
//!
//! is determined here as the exact rational nullspace of the stacked
//! coefficient vectors. The printed closed forms for φ are kept verbatim in
//! [`phi_closed`] and only compared against the solved vector.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{CheckKind, CheckReport, Suite};
use crate::error::{Error, Result};
use crate::exact::{factorial, frac, int, matrix, pochhammer, sign_pow, Polynomial, Rational};
use crate::family::{self, Scaling};

/// Minimal number of distinct `k` rows: the combined coefficient `I_{n,k}` is
/// a polynomial of degree at most four in `k`.
const MIN_K_ROWS: usize = 5;

/// The six terms of `R_n`, in the order of `φ₁, ..., φ₆`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    /// `u_{n-1}`
    UPrev,
    /// `u_n`
    U,
    /// `u_{n+1}`
    UNext,
    /// `z u_n`
    ZU,
    /// `z u_{n-1}`
    ZUPrev,
    /// `u_{n-2}`
    UPrev2,
}

impl Column {
    pub const ALL: [Column; 6] = [
        Column::UPrev,
        Column::U,
        Column::UNext,
        Column::ZU,
        Column::ZUPrev,
        Column::UPrev2,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Column::UPrev => "u_{n-1}",
            Column::U => "u_n",
            Column::UNext => "u_{n+1}",
            Column::ZU => "z u_n",
            Column::ZUPrev => "z u_{n-1}",
            Column::UPrev2 => "u_{n-2}",
        }
    }
}

/// Which φ vector feeds the recurrence for `y_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhiSource {
    /// The exact nullspace vector from [`solve_phi`].
    Solved,
    /// The printed closed forms, transcribed verbatim.
    Printed,
}

/// Coefficients `(φ₁, ..., φ₆)` of the contiguous relation at `(n, ρ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiVector {
    pub phi: [Rational; 6],
    pub n: usize,
    pub rho: u32,
}

impl PhiVector {
    pub fn get(&self, c: Column) -> &Rational {
        &self.phi[c as usize]
    }

    /// `φ_i` with the 1-based index used in the formulas.
    pub fn at(&self, i: usize) -> &Rational {
        &self.phi[i - 1]
    }
}

fn check_domain(n: usize, rho: u32) -> Result<()> {
    if n < 2 || rho < 2 {
        return Err(Error::Domain(format!(
            "the contiguous relation needs n >= 2 and rho >= 2, got n = {n}, rho = {rho}"
        )));
    }
    Ok(())
}

/// The six polynomials of `R_n`, ordered as [`Column::ALL`].
pub fn relation_terms(n: usize, rho: u32) -> Result<[Polynomial; 6]> {
    check_domain(n, rho)?;
    let u = |m: usize| family::gen_u(m, rho);
    Ok([u(n - 1), u(n), u(n + 1), u(n).shift(1), u(n - 1).shift(1), u(n - 2)])
}

/// `ε_{n+1}(k) = (-n-1)_k (ρ)_k / k!`, the coefficient of `z^k` in `u_{n+1}`.
fn epsilon(n: usize, rho: u32, k: usize) -> Rational {
    pochhammer(&int(-(n as i64) - 1), k as u64) * pochhammer(&int(rho.into()), k as u64) / factorial(k as u64)
}

/// Ratio of the `z^k` coefficient of a column to `ε_{n+1}(k)`:
///
/// | column      | factor                                         |
/// |-------------|------------------------------------------------|
/// | `u_n`       | `(n+1-k) / (n+1)`                              |
/// | `u_{n-1}`   | `(n+1-k)(n-k) / ((n+1) n)`                     |
/// | `u_{n-2}`   | `(n+1-k)(n-k)(n-1-k) / ((n+1) n (n-1))`        |
/// | `z u_n`     | `-k / ((n+1)(ρ+k-1))`                          |
/// | `z u_{n-1}` | `-k (n+1-k) / (n (n+1)(ρ+k-1))`                |
///
/// `k` may exceed `n + 1`; the factors are then the continuation in `k` of
/// the termwise identity. Requires `ρ ≥ 2` so that `ρ + k - 1 ≠ 0`.
pub fn expansion_factor(column: Column, n: usize, rho: u32, k: usize) -> Rational {
    let (n, k, rho) = (n as i64, k as i64, i64::from(rho));
    match column {
        Column::UNext => Rational::one(),
        Column::U => frac(n + 1 - k, n + 1),
        Column::UPrev => frac((n + 1 - k) * (n - k), (n + 1) * n),
        Column::UPrev2 => frac((n + 1 - k) * (n - k) * (n - 1 - k), (n + 1) * n * (n - 1)),
        Column::ZU => frac(-k, (n + 1) * (rho + k - 1)),
        Column::ZUPrev => frac(-k * (n + 1 - k), n * (n + 1) * (rho + k - 1)),
    }
}

/// Compares every coefficient of `u_n, u_{n-1}, u_{n-2}, z u_n, z u_{n-1}`
/// with `ε_{n+1}(k)` times its expansion factor, for `0 ≤ k ≤ n+1`.
pub fn check_fasenmyer_expansions(n: usize, rho: u32) -> CheckReport {
    let report = CheckReport::new("fasenmyer_expansions", Suite::Recurrence, CheckKind::Mandatory)
        .param("n", n as i64)
        .param("rho", rho);
    let terms = match relation_terms(n, rho) {
        Ok(t) => t,
        Err(_) => return report.not_applicable("requires n >= 2 and rho >= 2"),
    };
    for column in Column::ALL {
        if column == Column::UNext {
            continue;
        }
        let poly = &terms[column as usize];
        let diff: Vec<Rational> = (0..=n + 1)
            .map(|k| poly.coeff(k) - epsilon(n, rho, k) * expansion_factor(column, n, rho, k))
            .collect();
        let diff = Polynomial::from_coeffs(diff);
        if !diff.is_zero() {
            return report
                .with_detail(format!("expansion of {} is wrong", column.label()))
                .residual(diff);
        }
    }
    report.residual(Polynomial::zero())
}

/// Rows of the linear system for φ: the `z^k` coefficients of the six terms
/// for `0 ≤ k ≤ n+1`, followed, while fewer than five rows exist, by the
/// termwise conditions `Σ_c φ_c f_c(k) = 0` at `k = n+2, n+3, ...`. The
/// latter only matter for `n = 2`, where four coefficient rows leave a
/// two-dimensional solution space.
fn relation_rows(n: usize, rho: u32) -> Result<Vec<Vec<Rational>>> {
    let terms = relation_terms(n, rho)?;
    let mut rows: Vec<Vec<Rational>> = (0..=n + 1)
        .map(|k| terms.iter().map(|t| t.coeff(k)).collect())
        .collect();
    let mut k = n + 2;
    while rows.len() < MIN_K_ROWS {
        rows.push(Column::ALL.iter().map(|&c| expansion_factor(c, n, rho, k)).collect());
        k += 1;
    }
    Ok(rows)
}

/// Basis of all φ with `R_n ≡ 0` (plus the termwise rows, see
/// [`solve_phi`]).
pub fn relation_nullspace(n: usize, rho: u32) -> Result<Vec<Vec<Rational>>> {
    Ok(matrix::nullspace(&relation_rows(n, rho)?, Column::ALL.len()))
}

/// The exact φ with `R_n ≡ 0`, normalized to `φ₄ = n + ρ`.
pub fn solve_phi(n: usize, rho: u32) -> Result<PhiVector> {
    let mut basis = relation_nullspace(n, rho)?;
    match basis.len() {
        0 => Err(Error::InternalInconsistency(format!(
            "no contiguous relation found at n = {n}, rho = {rho}"
        ))),
        1 => {
            let v = basis.pop().expect("one vector");
            let pivot = &v[Column::ZU as usize];
            if pivot.is_zero() {
                return Err(Error::Normalization { basis: v });
            }
            let scale = int((n as i64) + i64::from(rho)) / pivot;
            let phi: Vec<Rational> = v.iter().map(|x| x * &scale).collect();
            Ok(PhiVector {
                phi: phi.try_into().expect("six components"),
                n,
                rho,
            })
        }
        _ => Err(Error::Ambiguous { basis }),
    }
}

/// The printed closed forms, evaluated verbatim:
///
/// ```text
/// φ₄ = n+ρ,  φ₅ = -1,  φ₃ = 1,  φ₂ = (n-ρ)/(n+ρ-1),
/// φ₁ = -n(n+1)/2 - (n-ρ)n/(n+ρ-1) - (n-1)/(n+ρ-2) + (n+ρ)(n-1)n/(2(n+ρ-2)),
/// φ₆ = n(n+1)/2 + (n-ρ)(n-1)/(n+ρ-1) + (n-1)/(n+ρ-2) - (n+ρ)(n-1)n/(2(n+ρ-2)) - 1.
/// ```
pub fn phi_closed(n: usize, rho: u32) -> Result<PhiVector> {
    check_domain(n, rho)?;
    let (n_, r) = (n as i64, i64::from(rho));
    let phi2 = frac(n_ - r, n_ + r - 1);
    let phi1 = -frac(n_ * (n_ + 1), 2) - frac((n_ - r) * n_, n_ + r - 1) - frac(n_ - 1, n_ + r - 2)
        + frac((n_ + r) * (n_ - 1) * n_, 2 * (n_ + r - 2));
    let phi6 = frac(n_ * (n_ + 1), 2) + frac((n_ - r) * (n_ - 1), n_ + r - 1) + frac(n_ - 1, n_ + r - 2)
        - frac((n_ + r) * (n_ - 1) * n_, 2 * (n_ + r - 2))
        - int(1);
    Ok(PhiVector {
        phi: [phi1, phi2, int(1), int(n_ + r), int(-1), phi6],
        n,
        rho,
    })
}

/// `R_n(z)` for the given φ.
pub fn residual_recurrence_u(n: usize, rho: u32, phi: &PhiVector) -> Result<Polynomial> {
    if phi.n != n || phi.rho != rho {
        return Err(Error::Domain(format!(
            "phi was built for (n, rho) = ({}, {}), not ({n}, {rho})",
            phi.n, phi.rho
        )));
    }
    let terms = relation_terms(n, rho)?;
    Ok(terms.iter().zip(&phi.phi).map(|(t, c)| t.scale(c)).sum())
}

/// Image of a `u`-relation residual under `u_m(z) = m! (-1)^{m+ρ} z^m y_m(-1/z)`:
/// `(-1)^ρ / (n-2)! · x^{n+1} R(-1/x)`, i.e. the sign-alternated reversal at
/// degree `n + 1`.
pub fn u_residual_to_y(residual: &Polynomial, n: usize, rho: u32) -> Result<Polynomial> {
    if n < 2 {
        return Err(Error::domain("the mapping needs n >= 2"));
    }
    let scale = sign_pow(rho.into()) / factorial(n as u64 - 2);
    Ok(residual.alternate_signs().reverse(n + 1)?.scale(&scale))
}

/// The mapped relation for `y = y_n(ρ; x)` (hypergeometric scaling):
///
/// ```text
/// φ₁(n-1)x² y_{n-1} + φ₂(n-1)n x y_n + φ₃(n-1)n(n+1) y_{n+1}
///   - φ₄(n-1)n y_n - φ₅(n-1) x y_{n-1} + φ₆ x³ y_{n-2}
/// ```
fn mapped_y_relation(n: usize, rho: u32, phi: &PhiVector) -> Polynomial {
    let y = |m: usize| family::y(m, rho, Scaling::Hypergeometric);
    let (y_prev2, y_prev, y_n, y_next) = (y(n - 2), y(n - 1), y(n), y(n + 1));
    let n_ = n as i64;
    let w = |i: usize, c: i64| phi.at(i) * int(c);
    [
        y_prev.shift(2).scale(&w(1, n_ - 1)),
        y_n.shift(1).scale(&w(2, (n_ - 1) * n_)),
        y_next.scale(&w(3, (n_ - 1) * n_ * (n_ + 1))),
        y_n.scale(&-w(4, (n_ - 1) * n_)),
        y_prev.shift(1).scale(&-w(5, n_ - 1)),
        y_prev2.shift(3).scale(phi.at(6)),
    ]
    .into_iter()
    .sum()
}

/// The recurrence for `y_n` exactly as printed, with its coefficient
/// expressions written out in place.
fn printed_y_recurrence(n: usize, rho: u32) -> Polynomial {
    let y = |m: usize| family::y(m, rho, Scaling::Hypergeometric);
    let (n_, r) = (n as i64, i64::from(rho));
    let first = -frac(n_ * (n_ + 1), 2) - frac((n_ - r) * n_, n_ + r - 1) - frac(n_ - 1, n_ + r - 2)
        + frac((n_ + r) * (n_ - 1) * n_, 2 * (n_ + r - 2));
    let cubic = frac(n_ * (n_ + 1), 2) + frac((n_ - r) * (n_ - 1), n_ + r - 1) + frac(n_ - 1, n_ + r - 2)
        - frac((n_ + r) * (n_ - 1) * n_, 2 * (n_ + r - 2))
        - int(1);
    [
        y(n - 1).shift(2).scale(&(first * int(n_ - 1))),
        y(n).shift(1).scale(&(frac(n_ - r, n_ + r - 1) * int((n_ - 1) * n_))),
        y(n + 1).scale(&int((n_ - 1) * n_ * (n_ + 1))),
        y(n - 2).shift(3).scale(&cubic),
        y(n).scale(&int(-(n_ + r) * (n_ - 1) * n_)),
        y(n - 1).shift(1).scale(&int(n_ - 1)),
    ]
    .into_iter()
    .sum()
}

/// Residual of the three-term-in-`n` recurrence for `y_n(ρ; x)`.
///
/// [`PhiSource::Solved`] uses the nullspace φ in the relation mapped from
/// `R_n`; [`PhiSource::Printed`] evaluates the printed recurrence verbatim.
pub fn residual_recurrence_y(n: usize, rho: u32, source: PhiSource) -> Result<Polynomial> {
    check_domain(n, rho)?;
    match source {
        PhiSource::Solved => Ok(mapped_y_relation(n, rho, &solve_phi(n, rho)?)),
        PhiSource::Printed => Ok(printed_y_recurrence(n, rho)),
    }
}

fn recurrence_report(name: &str, suite: Suite, kind: CheckKind, n: usize, rho: u32) -> CheckReport {
    CheckReport::new(name, suite, kind).param("n", n as i64).param("rho", rho)
}

fn describe_phi(phi: &PhiVector) -> String {
    let parts: Vec<String> = phi.phi.iter().enumerate().map(|(i, p)| format!("phi{}={p}", i + 1)).collect();
    parts.join(", ")
}

/// Mandatory: a one-dimensional solution space normalizable to `φ₄ = n+ρ`.
pub fn check_solve_phi(n: usize, rho: u32) -> CheckReport {
    let report = recurrence_report("solve_phi", Suite::Recurrence, CheckKind::Mandatory, n, rho);
    if check_domain(n, rho).is_err() {
        return report.not_applicable("requires n >= 2 and rho >= 2");
    }
    match solve_phi(n, rho) {
        Ok(phi) => report.with_detail(describe_phi(&phi)).outcome(true),
        Err(e) => report.with_detail(format!("{e}")).outcome(false),
    }
}

pub(super) fn report_recurrence_u(n: usize, rho: u32) -> CheckReport {
    let report = recurrence_report("recurrence_u", Suite::Recurrence, CheckKind::Mandatory, n, rho);
    if check_domain(n, rho).is_err() {
        return report.not_applicable("requires n >= 2 and rho >= 2");
    }
    match solve_phi(n, rho).and_then(|phi| residual_recurrence_u(n, rho, &phi)) {
        Ok(r) => report.residual(r),
        Err(e) => report.with_detail(format!("{e}")).outcome(false),
    }
}

pub(super) fn report_recurrence_u_printed(n: usize, rho: u32) -> CheckReport {
    let report = recurrence_report("recurrence_u_printed", Suite::Fidelity, CheckKind::Advisory, n, rho);
    if check_domain(n, rho).is_err() {
        return report.not_applicable("requires n >= 2 and rho >= 2");
    }
    match phi_closed(n, rho).and_then(|phi| residual_recurrence_u(n, rho, &phi)) {
        Ok(r) => report.residual(r),
        Err(e) => report.with_detail(format!("{e}")).outcome(false),
    }
}

pub(super) fn report_recurrence_y(n: usize, rho: u32, source: PhiSource) -> CheckReport {
    let report = match source {
        PhiSource::Solved => recurrence_report("recurrence_y", Suite::Recurrence, CheckKind::Mandatory, n, rho),
        PhiSource::Printed => recurrence_report("recurrence_y_printed", Suite::Fidelity, CheckKind::Advisory, n, rho),
    };
    if check_domain(n, rho).is_err() {
        return report.not_applicable("requires n >= 2 and rho >= 2");
    }
    match residual_recurrence_y(n, rho, source) {
        Ok(r) => report.residual(r),
        Err(e) => report.with_detail(format!("{e}")).outcome(false),
    }
}

/// Advisory: printed φ closed forms against the solved vector, component by
/// component.
pub(super) fn report_phi_printed_vs_solved(n: usize, rho: u32) -> CheckReport {
    let report = recurrence_report("phi_printed_vs_solved", Suite::Fidelity, CheckKind::Advisory, n, rho);
    if check_domain(n, rho).is_err() {
        return report.not_applicable("requires n >= 2 and rho >= 2");
    }
    let (solved, printed) = match (solve_phi(n, rho), phi_closed(n, rho)) {
        (Ok(s), Ok(p)) => (s, p),
        (Err(e), _) | (_, Err(e)) => return report.with_detail(format!("{e}")).outcome(false),
    };
    let mismatched: Vec<String> = (1..=6)
        .filter(|&i| solved.at(i) != printed.at(i))
        .map(|i| format!("phi{i}: printed {} vs solved {}", printed.at(i), solved.at(i)))
        .collect();
    if mismatched.is_empty() {
        report.with_detail(describe_phi(&solved)).outcome(true)
    } else {
        report.with_detail(mismatched.join("; ")).outcome(false)
    }
}

/// The five printed linear conditions on φ, each evaluated on `phi`:
///
/// ```text
/// (a) φ₅ = -φ₄/(n+ρ)
/// (b) φ₃ = φ₄/(n+ρ)
/// (c) φ₂(ρ+n-1) + φ₃(n+1)(ρ+n-1) - φ₄ n - φ₅ = 0
/// (d) 2φ₁(ρ+n-2) + 2nφ₂(ρ+n-2) + φ₃ n(n+1)(ρ+n-2) - φ₄(n-1)n - 2φ₅(n-1) = 0
/// (e) φ₁ + φ₂ + φ₃ + φ₆ = 0
/// ```
///
/// Returns the left-hand side minus right-hand side of each.
pub fn printed_phi_conditions(phi: &PhiVector) -> [Rational; 5] {
    let (n, r) = (phi.n as i64, i64::from(phi.rho));
    let p = |i: usize| phi.at(i).clone();
    let s = int(n + r);
    [
        p(5) + p(4) / &s,
        p(3) - p(4) / &s,
        p(2) * int(r + n - 1) + p(3) * int((n + 1) * (r + n - 1)) - p(4) * int(n) - p(5),
        p(1) * int(2 * (r + n - 2)) + p(2) * int(2 * n * (r + n - 2)) + p(3) * int(n * (n + 1) * (r + n - 2))
            - p(4) * int((n - 1) * n)
            - p(5) * int(2 * (n - 1)),
        p(1) + p(2) + p(3) + p(6),
    ]
}

/// Advisory: which printed conditions on φ the solved vector satisfies.
pub fn check_phi_printed_equations(n: usize, rho: u32) -> CheckReport {
    let report = recurrence_report("phi_printed_equations", Suite::Fidelity, CheckKind::Advisory, n, rho);
    if check_domain(n, rho).is_err() {
        return report.not_applicable("requires n >= 2 and rho >= 2");
    }
    let phi = match solve_phi(n, rho) {
        Ok(phi) => phi,
        Err(e) => return report.with_detail(format!("{e}")).outcome(false),
    };
    let labels = ["phi5 = -phi4/(n+rho)", "phi3 = phi4/(n+rho)", "phi2 equation", "phi1 equation", "phi sum"];
    let conditions = printed_phi_conditions(&phi);
    let failing: Vec<String> = labels
        .iter()
        .zip(&conditions)
        .filter(|(_, v)| !v.is_zero())
        .map(|(l, v)| format!("{l} off by {v}"))
        .collect();
    if failing.is_empty() {
        report.outcome(true)
    } else {
        report.with_detail(failing.join("; ")).outcome(false)
    }
}
