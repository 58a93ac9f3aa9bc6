//! Independent reference oracles for the integration suites: direct
//! enumeration with no masks, no pruning and no shared code with the engine's
//! search path.

#![allow(dead_code)]

use std::collections::BTreeSet;

use zerosum_core::GroupSpec;

/// Reference sumset: every nonempty sub-multiset, summed element by element.
pub fn naive_sigma(group: &GroupSpec, elems: &[usize]) -> BTreeSet<usize> {
    assert!(elems.len() <= 20);
    let mut out = BTreeSet::new();
    for pick in 1u32..(1 << elems.len()) {
        let mut sum = 0usize;
        for (i, &e) in elems.iter().enumerate() {
            if pick & (1 << i) != 0 {
                sum = group.add_flat(sum, e);
            }
        }
        out.insert(sum);
    }
    out
}

pub fn naive_is_zero_sum_free(group: &GroupSpec, elems: &[usize]) -> bool {
    !naive_sigma(group, elems).contains(&0)
}

/// Unpruned reference enumeration: all k-combinations of the nonzero
/// elements, each tested independently.
pub fn naive_zsf_subsets(group: &GroupSpec, k: usize) -> Vec<Vec<usize>> {
    let order = group.order();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(
        group: &GroupSpec,
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == k {
            if naive_is_zero_sum_free(group, cur) {
                out.push(cur.clone());
            }
            return;
        }
        for g in start..group.order() {
            cur.push(g);
            rec(group, k, g + 1, cur, out);
            cur.pop();
        }
    }
    if k >= 1 && k < order {
        rec(group, k, 1, &mut cur, &mut out);
    }
    out
}
