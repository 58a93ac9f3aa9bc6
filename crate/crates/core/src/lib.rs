//! Exhaustive search and verification for subset sums of zero-sum free sets
//! over finite abelian groups.
//!
//! The crate computes Σ(S) — the set of sums of nonempty subsequences — as a
//! bit array, enumerates zero-sum free subsets with pruned backtracking,
//! finds the minimum |Σ(S)| per subset size with complete witness lists, and
//! machine-checks the structure results for extremal sets: the five
//! six-element families with |Σ| = 19, the five-element families with
//! |Σ| = 13, the four-element family with |Σ| = 8, the equal-sum class
//! shapes, and the supporting inequalities.

pub mod catalog;
pub mod error;
pub mod forms;
pub mod group;
pub mod report;
pub mod search;
pub mod sumset;
pub mod verify;

pub use catalog::group_catalog;
pub use error::{Error, Rejection, Result};
pub use forms::{
    class_shape_match, family_instances, instantiate_form, match_subset, ConstraintChecks,
    FormId, FormMatch, ShapeMatch, SET_FAMILIES, SIZE4_FAMILIES, SIZE5_FAMILIES, SIZE6_FAMILIES,
};
pub use group::{CosetLabeling, Element, GroupSpec, DEFAULT_MAX_ORDER};
pub use report::{
    conjectured_min_sigma, search_csv_row, to_json_pretty, CatalogEntry, Counterexample,
    EnumerationReport, FormMatchEntry, InstantiateReport, SearchReport, SweepEntry,
    VerifyOutcome, WitnessEntry, SEARCH_CSV_HEADER,
};
pub use search::{enumerate_report, enumerate_zsf_subsets, min_sigma, SearchOptions};
pub use sumset::{sigma_mask_generic, ClassPartition, SubsetSeq, SumsetMask, PARTITION_CAP};
pub use verify::{
    classify_extremal, quotient_bound_sides, verify_class_shapes, verify_duplicate_sums,
    verify_lower_bounds, verify_multiplicity_bound, verify_quotient_bound,
};
