//! JSON form of a series and the provenance record used by result caches.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::correlation::CorrelationId;
use crate::rational::{self, Rational};
use crate::series::{Series, SeriesError, VarTag};

/// Bumped whenever an oracle can produce different output for the same request.
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+frontier-2");

/// `{"var", "min_exp", "order", "coeffs": [["num", "den"], ...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub var: VarTag,
    pub min_exp: i64,
    pub order: i64,
    pub coeffs: Vec<(String, String)>,
}

impl From<Series> for SeriesJson {
    fn from(s: Series) -> Self {
        SeriesJson::from(&s)
    }
}

impl From<&Series> for SeriesJson {
    fn from(s: &Series) -> Self {
        let pair = |c: &Rational| (c.numer().to_string(), c.denom().to_string());
        SeriesJson {
            var: s.var(),
            min_exp: s.min_exp(),
            order: s.order(),
            coeffs: s.coeffs().iter().map(pair).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for Series {
    type Error = SeriesError;

    fn try_from(j: SeriesJson) -> Result<Self, Self::Error> {
        let coeffs = j
            .coeffs
            .iter()
            .map(|(n, d)| rational::from_pair(n, d))
            .collect::<Result<Vec<_>, _>>()?;
        Series::new(j.var, j.min_exp, j.order, coeffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// `ht`, `lt_full`, `lt_connected`, ...
    pub oracle: String,
    pub correlation: CorrelationId,
    pub order: i64,
    pub padding: Option<i64>,
    pub engine_version: String,
}

impl Provenance {
    pub fn new(oracle: &str, correlation: CorrelationId, order: i64, padding: Option<i64>) -> Self {
        Provenance {
            oracle: oracle.to_string(),
            correlation,
            order,
            padding,
            engine_version: ENGINE_VERSION.to_string(),
        }
    }

    /// Hex SHA-256 over every field, usable as a file name.
    pub fn key(&self) -> String {
        let c = &self.correlation;
        let padding = self.padding.map(|p| p.to_string()).unwrap_or_else(|| "auto".into());
        let text = format!(
            "{}|{:?}|{}|{}|{}|{}|{}",
            self.oracle, c.kind, c.m, c.n, self.order, padding, self.engine_version
        );
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub key: String,
    pub series: Series,
    pub provenance: Provenance,
}

impl SeriesRecord {
    pub fn new(series: Series, provenance: Provenance) -> Self {
        SeriesRecord {
            key: provenance.key(),
            series,
            provenance,
        }
    }

    /// The stored key matches the provenance and the engine that reads it.
    pub fn is_current(&self) -> bool {
        self.key == self.provenance.key() && self.provenance.engine_version == ENGINE_VERSION
    }
}
