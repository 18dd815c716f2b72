//! JSON documents exchanged with other tools. Rationals are always decimal
//! strings so nothing is lost in transit.

use anyhow::{bail, Context};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use hypersob_core::{Polynomial, Rational, Scaling};

/// One exact coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalDoc {
    fn from(r: &Rational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalDoc> for Rational {
    type Error = anyhow::Error;

    fn try_from(doc: &RationalDoc) -> anyhow::Result<Self> {
        let num: BigInt = doc.num.parse().with_context(|| format!("bad numerator `{}`", doc.num))?;
        let den: BigInt = doc.den.parse().with_context(|| format!("bad denominator `{}`", doc.den))?;
        if den == BigInt::from(0) {
            bail!("zero denominator");
        }
        Ok(Rational::new(num, den))
    }
}

/// `{ "n", "rho", "scaling", "coeffs" }` with `coeffs[i]` the coefficient of `x^i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDoc {
    pub n: usize,
    pub rho: u32,
    pub scaling: String,
    pub coeffs: Vec<RationalDoc>,
}

impl PolynomialDoc {
    pub fn new(n: usize, rho: u32, scaling: Scaling, p: &Polynomial) -> Self {
        Self {
            n,
            rho,
            scaling: scaling.to_string(),
            coeffs: p.coeffs().iter().map(RationalDoc::from).collect(),
        }
    }

    pub fn polynomial(&self) -> anyhow::Result<Polynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(Rational::try_from)
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(Polynomial::from_coeffs(coeffs))
    }

    pub fn scaling(&self) -> anyhow::Result<Scaling> {
        Ok(self.scaling.parse()?)
    }
}
