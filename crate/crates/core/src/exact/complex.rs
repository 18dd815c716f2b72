use core::fmt;

/// A finite complex number used as an evaluation site.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    re: f64,
    im: f64,
}

/// Rejected construction of a [`ComplexPoint`] from a NaN or infinite part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NonFinite;

impl fmt::Display for NonFinite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("complex point has a non-finite component")
    }
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, NonFinite> {
        if re.is_finite() && im.is_finite() {
            Ok(Self { re, im })
        } else {
            Err(NonFinite)
        }
    }

    pub const fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    /// `e^{iθ}`
    pub fn unit(theta: f64) -> Self {
        Self {
            re: libm::cos(theta),
            im: libm::sin(theta),
        }
    }

    pub fn re(self) -> f64 {
        self.re
    }

    pub fn im(self) -> f64 {
        self.im
    }

    pub fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }

    pub fn conj(self) -> Self {
        Self { re: self.re, im: -self.im }
    }
}
