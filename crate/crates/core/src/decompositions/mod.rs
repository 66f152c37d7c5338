//! The headline factorizations. Each returns a structured result whose
//! invariants are checked before returning when `Tolerance::validate` is set.

mod bloch_messiah;
mod iwasawa;
mod takagi;
mod williamson;

pub use bloch_messiah::{bloch_messiah, BlochMessiahResult};
pub use iwasawa::{iwasawa, pre_iwasawa, IwasawaResult, PreIwasawaResult};
pub use takagi::{takagi, takagi_real, TakagiResult};
pub use williamson::{symplectic_eigenvalues, williamson, WilliamsonResult};

use crate::{Error, Result};

pub(crate) fn check_output(invariant: &'static str, residual: f64, bound: f64) -> Result<()> {
    // NaN residuals must fail too.
    if residual <= bound {
        Ok(())
    } else {
        Err(Error::OutputCheck {
            invariant,
            residual,
            bound,
        })
    }
}
