/// Thresholds for every validation predicate in the crate.
///
/// A residual `r` measured against a quantity of size `scale` passes when
/// `r <= max(atol, rtol * scale)`. With `validate == false`, checks on inputs
/// that are not needed to carry out the computation are skipped, as are the
/// checks on outputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rtol: f64,
    pub atol: f64,
    pub validate: bool,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rtol: 1e-8,
            atol: 1e-10,
            validate: true,
        }
    }
}

impl Tolerance {
    pub fn new(rtol: f64, atol: f64) -> Self {
        Tolerance {
            rtol,
            atol,
            validate: true,
        }
    }

    pub fn unvalidated(self) -> Self {
        Tolerance {
            validate: false,
            ..self
        }
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.atol.max(self.rtol * scale)
    }

    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.bound(scale)
    }
}
