//! Fixtures shared by the benchmark targets.

use std::sync::Arc;

use zerosum_core::{GroupSpec, SubsetSeq};

pub fn group(spec: &str) -> Arc<GroupSpec> {
    Arc::new(GroupSpec::parse(spec).unwrap())
}

/// A zero-sum free load of `len` elements: odd residues stay clear of small
/// zero sums long enough for the mask DP to do real work.
pub fn spread_subset(g: &Arc<GroupSpec>, len: usize) -> SubsetSeq {
    let order = g.order();
    let flats: Vec<usize> = (0..len).map(|i| (1 + 2 * i) % order).collect();
    SubsetSeq::subset(Arc::clone(g), &flats).expect("fixture stays distinct")
}
