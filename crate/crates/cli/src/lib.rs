//! Command-line front end: JSON documents, renderers and the verification driver.

pub mod doc;
pub mod render;

use anyhow::{bail, Context};
use rayon::prelude::*;

use hypersob_core::sobolev::gram;
use hypersob_core::verify::{plan, sort_reports, CheckReport, Job, Suite};
use hypersob_core::{ComplexPoint, Scaling};

use render::GramTable;

/// Parses `RE,IM` or a bare real `RE`.
pub fn parse_complex(s: &str) -> anyhow::Result<ComplexPoint> {
    let (re, im) = match s.split_once(',') {
        Some((re, im)) => (re, im),
        None => (s, "0"),
    };
    let re: f64 = re.trim().parse().with_context(|| format!("bad real part `{re}`"))?;
    let im: f64 = im.trim().parse().with_context(|| format!("bad imaginary part `{im}`"))?;
    match ComplexPoint::new(re, im) {
        Ok(z) => Ok(z),
        Err(e) => bail!("{e}"),
    }
}

/// Runs the grid, optionally in parallel. The result is sorted either way,
/// so both paths produce identical reports.
pub fn run_verify(n_max: usize, rho_max: u32, suite: Suite, parallel: bool) -> Vec<CheckReport> {
    let jobs = plan(n_max, rho_max, suite);
    let mut reports: Vec<CheckReport> = if parallel {
        jobs.par_iter().flat_map_iter(Job::run).collect()
    } else {
        jobs.iter().flat_map(Job::run).collect()
    };
    sort_reports(&mut reports);
    reports
}

/// Gram matrices shown alongside the Gram suite.
pub fn gram_tables(n_max: usize, rho_max: u32, suite: Suite) -> Vec<GramTable> {
    if !suite.includes(Suite::Gram) {
        return Vec::new();
    }
    (1..=rho_max)
        .flat_map(|rho| {
            Scaling::ALL.into_iter().map(move |scaling| GramTable {
                rho,
                scaling,
                matrix: gram(n_max, rho, scaling),
            })
        })
        .collect()
}
