//! Stable machine-readable reports. Reports embed the full job
//! configuration and the crate version; they deliberately contain no
//! wall-clock data, so identical configurations produce byte-identical
//! output (timing goes to stderr instead).

use serde::{Deserialize, Serialize};

use crate::diff::DegreeReport;
use crate::family::{Family, FamilySpec, Sector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub family: Family,
    pub d: i64,
    pub sector: Sector,
    pub degree_lo: i64,
    pub degree_hi: i64,
    pub max_edges: usize,
    pub prime: u64,
    pub seed: u64,
    pub workers: usize,
    /// whether a persistent basis cache was in use; the path itself is
    /// machine-local and deliberately kept out of the report so that
    /// identical jobs produce byte-identical output
    pub cached: bool,
}

impl JobConfig {
    pub fn spec(&self) -> Result<FamilySpec, crate::family::FamilyError> {
        FamilySpec::new(self.family, self.d, self.sector)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub version: String,
    pub config: JobConfig,
    pub degrees: Vec<DegreeReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub version: String,
    pub config: JobConfig,
    pub check: String,
    pub passed: bool,
    pub details: Vec<String>,
}

pub fn version() -> String {
    format!("rgcx {}", env!("CARGO_PKG_VERSION"))
}

/// Canonical serialization used for all report output; stable field
/// order, trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

/// Plain-text table of Betti numbers, one line per degree.
pub fn rank_table(degrees: &[DegreeReport]) -> String {
    let mut out = String::from("degree  dim  rank_out  rank_in  betti\n");
    for d in degrees {
        out.push_str(&format!(
            "{:>6}  {:>3}  {:>8}  {:>7}  {:>5}\n",
            d.degree, d.dim, d.rank_out, d.rank_in, d.betti
        ));
    }
    out
}
