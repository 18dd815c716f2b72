//! Exact verification of the identities satisfied by the family.
//!
//! Every check is a pure function of its grid parameters and yields a
//! [`CheckReport`]. Failures are data: nothing in here returns an error for a
//! failed identity.
//!
//! Checks are either [`CheckKind::Mandatory`] (exact identities that must hold)
//! or [`CheckKind::Advisory`] (comparisons of printed closed forms against the
//! solved ones). Only mandatory failures count against a run.

mod fasenmyer;
mod gamma;
mod identities;

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::exact::Polynomial;
use crate::family::Scaling;

pub use fasenmyer::{
    check_fasenmyer_expansions, check_phi_printed_equations, check_solve_phi, expansion_factor, phi_closed,
    relation_nullspace, relation_terms, residual_recurrence_u, residual_recurrence_y, solve_phi, u_residual_to_y,
    Column, PhiSource, PhiVector,
};
pub use gamma::{check_incomplete_gamma, GAMMA_POINTS, GAMMA_TOLERANCE};
pub use identities::{
    check_generators, check_gram, check_gram_as_printed, check_ode_image, check_quadrature, check_root_remark,
    check_step_rho, check_u_y_relation, residual_ode_high, residual_ode_second, residual_u_ode,
    QUADRATURE_TOLERANCE,
};

/// Outcome of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A printed formula disagrees with the exact result. Never fatal.
    AdvisoryFail,
    /// The parameters lie outside the check's preconditions.
    NotApplicable,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::AdvisoryFail => "advisory_fail",
            CheckStatus::NotApplicable => "not_applicable",
        }
    }
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckKind {
    Mandatory,
    Advisory,
}

/// Groups of checks selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    All,
    Ode,
    Recurrence,
    Gram,
    Gamma,
    Fidelity,
}

impl Suite {
    /// Every concrete suite, i.e. all but [`Suite::All`].
    pub const CONCRETE: [Suite; 5] = [Suite::Ode, Suite::Recurrence, Suite::Gram, Suite::Gamma, Suite::Fidelity];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Ode => "ode",
            Suite::Recurrence => "recurrence",
            Suite::Gram => "gram",
            Suite::Gamma => "gamma",
            Suite::Fidelity => "fidelity",
        }
    }

    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        [Suite::All]
            .into_iter()
            .chain(Suite::CONCRETE)
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| Error::Domain(alloc::format!("unknown suite `{s}`")))
    }
}

/// Structured result of a single verification.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub check_name: String,
    pub suite: Suite,
    pub kind: CheckKind,
    pub params: BTreeMap<String, i64>,
    pub scaling: Option<Scaling>,
    /// Evaluation point of numeric checks.
    pub at: Option<f64>,
    pub status: CheckStatus,
    pub residual: Option<Polynomial>,
    pub numeric_error: Option<f64>,
    pub detail: Option<String>,
}

impl CheckReport {
    pub(crate) fn new(check_name: &str, suite: Suite, kind: CheckKind) -> Self {
        Self {
            check_name: check_name.to_string(),
            suite,
            kind,
            params: BTreeMap::new(),
            scaling: None,
            at: None,
            status: CheckStatus::NotApplicable,
            residual: None,
            numeric_error: None,
            detail: None,
        }
    }

    pub(crate) fn param(mut self, name: &str, value: impl Into<i64>) -> Self {
        self.params.insert(name.to_string(), value.into());
        self
    }

    pub(crate) fn with_scaling(mut self, scaling: Scaling) -> Self {
        self.scaling = Some(scaling);
        self
    }

    pub(crate) fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Sets the status from a boolean, honoring the check kind.
    pub(crate) fn outcome(mut self, ok: bool) -> Self {
        self.status = match (ok, self.kind) {
            (true, _) => CheckStatus::Pass,
            (false, CheckKind::Mandatory) => CheckStatus::Fail,
            (false, CheckKind::Advisory) => CheckStatus::AdvisoryFail,
        };
        self
    }

    /// Records an exact residual; the check passes iff it is zero.
    pub(crate) fn residual(mut self, residual: Polynomial) -> Self {
        let ok = residual.is_zero();
        self.residual = Some(residual);
        self.outcome(ok)
    }

    pub(crate) fn not_applicable(mut self, why: &str) -> Self {
        self.status = CheckStatus::NotApplicable;
        self.detail = Some(why.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }

    /// True for a mandatory check that did not pass.
    pub fn is_mandatory_failure(&self) -> bool {
        self.status == CheckStatus::Fail
    }

    pub fn n(&self) -> Option<i64> {
        self.params.get("n").or_else(|| self.params.get("n_max")).copied()
    }

    pub fn rho(&self) -> Option<i64> {
        self.params.get("rho").copied()
    }

    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.check_name
            .cmp(&other.check_name)
            .then_with(|| self.n().cmp(&other.n()))
            .then_with(|| self.rho().cmp(&other.rho()))
            .then_with(|| self.scaling.cmp(&other.scaling))
            .then_with(|| self.at.partial_cmp(&other.at).unwrap_or(Ordering::Equal))
    }
}

/// A unit of work: every check of one suite at one grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Job {
    pub suite: Suite,
    pub n: usize,
    pub rho: u32,
    /// Largest degree of the grid, used by the Gram checks.
    pub n_max: usize,
}

impl Job {
    pub fn run(&self) -> Vec<CheckReport> {
        let (n, rho) = (self.n, self.rho);
        let mut out = Vec::new();
        match self.suite {
            Suite::Ode => {
                out.push(check_generators(n, rho));
                for scaling in Scaling::ALL {
                    out.push(check_ode_image(n, rho, scaling));
                    out.push(identities::report_ode_high(n, rho, scaling));
                    out.push(identities::report_ode_second(n, rho, scaling));
                }
                out.push(identities::report_u_ode(n, rho));
                out.push(check_u_y_relation(n, rho));
                if n == 1 {
                    out.push(check_root_remark(rho));
                }
            }
            Suite::Recurrence => {
                out.push(check_step_rho(n, rho));
                out.push(check_fasenmyer_expansions(n, rho));
                out.push(check_solve_phi(n, rho));
                out.push(fasenmyer::report_recurrence_u(n, rho));
                out.push(fasenmyer::report_recurrence_y(n, rho, PhiSource::Solved));
            }
            Suite::Gram => {
                for scaling in Scaling::ALL {
                    out.push(check_gram(self.n_max, rho, scaling));
                }
                out.push(check_quadrature(self.n_max, rho));
            }
            Suite::Gamma => {
                for a in GAMMA_POINTS {
                    out.push(check_incomplete_gamma(n, a, GAMMA_TOLERANCE));
                }
            }
            Suite::Fidelity => {
                if n == self.n_max {
                    out.push(check_gram_as_printed(self.n_max, rho));
                }
                out.push(fasenmyer::report_phi_printed_vs_solved(n, rho));
                out.push(check_phi_printed_equations(n, rho));
                out.push(fasenmyer::report_recurrence_u_printed(n, rho));
                out.push(fasenmyer::report_recurrence_y(n, rho, PhiSource::Printed));
            }
            Suite::All => {
                for suite in Suite::CONCRETE {
                    out.extend(Job { suite, ..*self }.run());
                }
            }
        }
        out
    }
}

/// Grid of jobs for `0 ≤ n ≤ n_max`, `1 ≤ ρ ≤ rho_max`. The Gram suite runs
/// once per ρ; the incomplete gamma check only concerns ρ = 1.
pub fn plan(n_max: usize, rho_max: u32, suite: Suite) -> Vec<Job> {
    let mut jobs = Vec::new();
    for concrete in Suite::CONCRETE {
        if !suite.includes(concrete) {
            continue;
        }
        for rho in 1..=rho_max {
            match concrete {
                Suite::Gram => jobs.push(Job { suite: concrete, n: n_max, rho, n_max }),
                Suite::Gamma if rho != 1 => {}
                _ => jobs.extend((0..=n_max).map(|n| Job { suite: concrete, n, rho, n_max })),
            }
        }
    }
    jobs
}

/// Puts reports in the canonical order: check name, then n, then ρ.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(CheckReport::sort_key_cmp);
}

/// Runs a suite over the grid sequentially; the result is sorted.
pub fn run_suite(n_max: usize, rho_max: u32, suite: Suite) -> Vec<CheckReport> {
    let mut reports: Vec<CheckReport> = plan(n_max, rho_max, suite).iter().flat_map(Job::run).collect();
    sort_reports(&mut reports);
    reports
}

/// Every check over the grid.
pub fn run_all(n_max: usize, rho_max: u32) -> Vec<CheckReport> {
    run_suite(n_max, rho_max, Suite::All)
}

/// Tally of a run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub advisory_failed: usize,
    pub not_applicable: usize,
}

impl Summary {
    pub fn of<'a>(reports: impl IntoIterator<Item = &'a CheckReport>) -> Self {
        let mut s = Summary::default();
        for r in reports {
            match r.status {
                CheckStatus::Pass => s.passed += 1,
                CheckStatus::Fail => s.failed += 1,
                CheckStatus::AdvisoryFail => s.advisory_failed += 1,
                CheckStatus::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }

    pub fn all_mandatory_passed(&self) -> bool {
        self.failed == 0
    }
}
