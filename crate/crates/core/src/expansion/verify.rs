//! Exact certification of a computed expansion through its co-factor.

use num_rational::BigRational;
use thiserror::Error;

use super::{digits_to_companion, Expansion};
use crate::cofactor::routh::{disk_filter, golden_dyadic};
use crate::intpoly::IntPoly;

/// Co-factors above this degree skip the disk check. The Routh table of a
/// degree-`l` transform needs `O(l^2)` products of numbers with `O(l^2)` bits:
/// about a second at degree 100 and well over a minute at degree 200.
pub const DISK_CHECK_MAX_DEGREE: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiskVerdict {
    /// Every root lies in `|z| < 13/8`.
    Inside,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CofactorCertificate {
    pub q: IntPoly,
    pub disk: DiskVerdict,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("companion polynomial is not divisible by P; the expansion is wrong")]
    Inexact,
    #[error("co-factor has a root outside |z| < 13/8")]
    DiskViolation,
}

/// `R = P Q` with the golden-disk condition on `Q`.
pub fn verify_expansion(poly: &IntPoly, e: &Expansion) -> Result<CofactorCertificate, VerifyError> {
    let r = digits_to_companion(e);
    let q = r.divexact(poly).map_err(|_| VerifyError::Inexact)?;
    let disk = if q.degree().unwrap_or(0) > DISK_CHECK_MAX_DEGREE {
        DiskVerdict::Skipped
    } else if disk_filter(&q, &tight_radius()) {
        DiskVerdict::Inside
    } else {
        return Err(VerifyError::DiskViolation);
    };
    Ok(CofactorCertificate { q, disk })
}

fn tight_radius() -> BigRational {
    golden_dyadic(3)
}
