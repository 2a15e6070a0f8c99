//! Exact high- and low-temperature series for spin-spin correlations of the
//! square-lattice Ising model, with the tools to study them: variable changes,
//! polynomial fits in the separation, a Painleve VI check and reference data.

pub mod correlation;
pub mod fitting;
pub mod ht;
pub mod lattice;
pub mod lt;
pub mod painleve;
pub mod rational;
pub mod record;
pub mod refdata;
pub mod series;
pub mod transforms;

pub use correlation::{CorrelationId, CorrelationKind, OracleError};
pub use fitting::{FitError, FitResult, Poly};
pub use lattice::LatticeError;
pub use painleve::Branch;
pub use rational::Rational;
pub use record::{Provenance, SeriesRecord};
pub use refdata::{RefdataError, TableSide};
pub use series::{Series, SeriesError, VarTag};
pub use transforms::{Transform, TransformError};

/// Any error raised by this crate.
#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Refdata(#[from] RefdataError),
}
