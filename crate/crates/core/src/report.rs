//! Machine-readable report types.
//!
//! JSON output must be byte-identical across repeated runs and across shard
//! counts, so the serialized form carries only deterministic fields; timing
//! and shard information stay on the struct for human summaries and CSV but
//! are skipped by serde.

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct FormMatchEntry {
    pub form: String,
    pub params: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WitnessEntry {
    pub subset: String,
    pub sigma_size: usize,
    pub matches: Vec<FormMatchEntry>,
}

/// Result of a minimum-|Σ| search over the zero-sum free k-subsets of one
/// group. `min_sigma` is absent when no zero-sum free k-subset exists.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SearchReport {
    pub group: String,
    pub k: usize,
    pub zsf_count: u64,
    pub min_sigma: Option<usize>,
    pub witness_count: usize,
    pub witnesses: Vec<WitnessEntry>,
    #[serde(skip)]
    pub elapsed_ms: u128,
    #[serde(skip)]
    pub shards: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EnumerationReport {
    pub group: String,
    pub k: usize,
    pub zsf_count: u64,
    pub subsets: Vec<String>,
    #[serde(skip)]
    pub elapsed_ms: u128,
    #[serde(skip)]
    pub shards: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub group: String,
    pub subset: String,
    pub info: String,
}

/// Outcome of one verification claim. A fail always carries a counterexample
/// that can be re-checked independently.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VerifyOutcome {
    pub claim: String,
    pub status: String,
    pub detail: String,
    pub counterexample: Option<Counterexample>,
}

impl VerifyOutcome {
    pub fn pass(claim: &str, detail: String) -> Self {
        VerifyOutcome {
            claim: claim.to_string(),
            status: "pass".to_string(),
            detail,
            counterexample: None,
        }
    }

    pub fn fail(claim: &str, detail: String, cx: Counterexample) -> Self {
        VerifyOutcome {
            claim: claim.to_string(),
            status: "fail".to_string(),
            detail,
            counterexample: Some(cx),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// One row of a catalog-wide minimum-|Σ| sweep, tabulated against the
/// conjectured floor(k²/2)+1 value. Report-only: nothing is asserted.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SweepEntry {
    pub group: String,
    pub k: usize,
    pub zsf_count: u64,
    pub min_sigma: Option<usize>,
    pub witness_count: usize,
    pub conjecture: usize,
    pub attains_conjecture: Option<bool>,
    #[serde(skip)]
    pub elapsed_ms: u128,
}

/// floor(k²/2) + 1: the conjectured minimum of |Σ(S)| at subset size k.
pub fn conjectured_min_sigma(k: usize) -> usize {
    k * k / 2 + 1
}

impl SweepEntry {
    pub fn from_report(r: &SearchReport) -> Self {
        let conjecture = conjectured_min_sigma(r.k);
        SweepEntry {
            group: r.group.clone(),
            k: r.k,
            zsf_count: r.zsf_count,
            min_sigma: r.min_sigma,
            witness_count: r.witness_count,
            conjecture,
            attains_conjecture: r.min_sigma.map(|m| m == conjecture),
            elapsed_ms: r.elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CatalogEntry {
    pub group: String,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct InstantiateReport {
    pub form: String,
    pub params: Vec<String>,
    pub subset: String,
    pub sigma_size: usize,
}

/// Pretty JSON with a trailing newline; field order follows the structs, so
/// equal values serialize to equal bytes.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub const SEARCH_CSV_HEADER: &str = "group,k,zsf_count,min_sigma,witness_count,elapsed_ms";

pub fn search_csv_row(r: &SearchReport) -> String {
    let min = r.min_sigma.map_or(String::new(), |m| m.to_string());
    format!(
        "{},{},{},{},{},{}",
        r.group, r.k, r.zsf_count, min, r.witness_count, r.elapsed_ms
    )
}
