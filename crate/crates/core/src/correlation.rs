//! Correlation identifiers and the error type shared by the lattice oracles.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::LatticeError;
use crate::series::SeriesError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationKind {
    Row,
    Diagonal,
    General,
}

/// Identifies `C(m, n) = <sigma_{0,0} sigma_{m,n}>`.
///
/// A row correlation `R_n` is `C(n, 0)`; a diagonal one `D_n` is `C(n, n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CorrelationId {
    pub kind: CorrelationKind,
    pub m: u32,
    pub n: u32,
}

impl CorrelationId {
    pub fn row(n: u32) -> CorrelationId {
        CorrelationId {
            kind: CorrelationKind::Row,
            m: n,
            n: 0,
        }
    }

    pub fn diagonal(n: u32) -> CorrelationId {
        CorrelationId {
            kind: CorrelationKind::Diagonal,
            m: n,
            n,
        }
    }

    pub fn general(m: u32, n: u32) -> CorrelationId {
        CorrelationId {
            kind: CorrelationKind::General,
            m,
            n,
        }
    }

    /// Lattice offset of the second spin.
    pub fn offset(&self) -> (i32, i32) {
        (self.m as i32, self.n as i32)
    }

    /// Number of bonds on a shortest lattice path between the two spins.
    pub fn graph_distance(&self) -> i64 {
        self.m as i64 + self.n as i64
    }

    /// Separation index `n` of `R_n` or `D_n`; the graph distance otherwise.
    pub fn index(&self) -> u32 {
        match self.kind {
            CorrelationKind::Row | CorrelationKind::Diagonal => self.m,
            CorrelationKind::General => self.m + self.n,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.m == 0 && self.n == 0
    }
}

impl fmt::Display for CorrelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CorrelationKind::Row => write!(f, "R_{}", self.m),
            CorrelationKind::Diagonal => write!(f, "D_{}", self.m),
            CorrelationKind::General => write!(f, "C({},{})", self.m, self.n),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("order {order} is below the minimum {needed}")]
    OrderTooSmall { order: i64, needed: i64 },
    #[error("resource budget exceeded: {states} frontier states (cap {cap})")]
    ResourceBudgetExceeded { states: usize, cap: usize },
    #[error("window has {edges} edges, too many for exhaustive enumeration (max {max})")]
    WindowTooLarge { edges: usize, max: usize },
    #[error("nonzero odd power z^{0} in a low-temperature expansion")]
    OddPower(usize),
    #[error(transparent)]
    Lattice(LatticeError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<LatticeError> for OracleError {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::ResourceBudgetExceeded { states, cap } => {
                OracleError::ResourceBudgetExceeded { states, cap }
            }
            other => OracleError::Lattice(other),
        }
    }
}
