//! Closed-form invariants of arrangements: the multidegree generating
//! function, the Euler discriminant degree ledger, the principal
//! A-determinant of a hyperplane arrangement, and SNC certification.

mod hyperplane;
mod ledger;
mod series;
mod snc;

pub use hyperplane::{
    hyperplane_ea, snc_check_hyperplanes, HyperplaneDeterminant, HyperplaneVerdict, MinorLayer,
};
pub use ledger::{euler_disc_ledger, DiscriminantLedger, FactorKind, LedgerFactor};
pub use series::{ml_degree, multidegree_coeffs, series_coefficients, MultidegreeClass};
pub use snc::{
    snc_check, Check, Irreducibility, PolynomialCheck, SncReport, SncVerdict, SubsetCheck,
};

use crate::detgen::DetgenError;
use crate::groebner::OracleError;
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("need at least two variables, got {0}")]
    TooFewVariables(usize),
    #[error("no degrees given")]
    NoDegrees,
    #[error("degree {index} is zero; every hypersurface needs degree at least one")]
    ZeroDegree { index: usize },
    #[error("value does not fit in 128 bits")]
    Overflow,
    #[error("hyperplane matrix: {0}")]
    BadMatrix(String),
    #[error("row {0} of the hyperplane matrix is zero")]
    ZeroRow(usize),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Detgen(#[from] DetgenError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn check_degrees(n: usize, degrees: &[u32]) -> Result<(), InvariantError> {
    if n < 2 {
        return Err(InvariantError::TooFewVariables(n));
    }
    if degrees.is_empty() {
        return Err(InvariantError::NoDegrees);
    }
    if let Some(i) = degrees.iter().position(|&d| d == 0) {
        return Err(InvariantError::ZeroDegree { index: i + 1 });
    }
    Ok(())
}
