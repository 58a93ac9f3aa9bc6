//! Pruned exhaustive enumeration of zero-sum free subsets and the
//! minimum-|Σ| search.
//!
//! The walk is depth-first over strictly increasing flat indices of nonzero
//! elements, carrying the incremental sumset mask; a branch dies the moment
//! the identity bit turns on, since every extension keeps it. Work is
//! sharded by the first chosen index, and shard results merge in root order,
//! so output never depends on the shard count.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::forms::FormId;
use crate::group::{gcd, GroupSpec};
use crate::report::{EnumerationReport, FormMatchEntry, SearchReport, WitnessEntry};
use crate::sumset::{SubsetSeq, SumsetMask};

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Shard workers; 1 keeps everything on the calling thread.
    pub threads: usize,
    /// Unit-multiplier reduction for cyclic groups: enumerate one canonical
    /// representative per unit orbit and weight it by the orbit size.
    /// Results must agree with the default mode.
    pub unit_reduced: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: 1,
            unit_reduced: false,
        }
    }
}

impl SearchOptions {
    pub fn with_threads(threads: usize) -> Self {
        SearchOptions {
            threads,
            ..Default::default()
        }
    }
}

/// Per-leaf accumulator for sharded searches. `absorb` must be associative;
/// shards are merged in ascending root order.
pub(crate) trait SubsetFold: Sync {
    type Acc: Send;
    fn new_acc(&self) -> Self::Acc;
    fn leaf(&self, acc: &mut Self::Acc, subset: &[usize], mask: &SumsetMask, weight: u64);
    fn absorb(&self, into: &mut Self::Acc, from: Self::Acc);
}

fn dfs_visit<F: FnMut(&[usize], &SumsetMask)>(
    group: &GroupSpec,
    k: usize,
    chosen: &mut Vec<usize>,
    masks: &mut [SumsetMask],
    visit: &mut F,
) {
    let d = chosen.len();
    if d == k {
        visit(chosen, &masks[d]);
        return;
    }
    let order = group.order();
    let lo = chosen.last().map_or(1, |&g| g + 1);
    let hi = order - (k - d);
    for g in lo..=hi {
        let (head, tail) = masks.split_at_mut(d + 1);
        tail[0].grow_from(&head[d], g, group);
        if tail[0].contains_zero() {
            continue;
        }
        chosen.push(g);
        dfs_visit(group, k, chosen, masks, visit);
        chosen.pop();
    }
}

/// Walks the subtree rooted at a fixed first element.
fn run_root_visit<F: FnMut(&[usize], &SumsetMask)>(
    group: &GroupSpec,
    k: usize,
    root: usize,
    visit: &mut F,
) {
    let order = group.order();
    let mut masks: Vec<SumsetMask> = (0..=k).map(|_| SumsetMask::empty(order)).collect();
    let mut chosen = Vec::with_capacity(k);
    {
        let (head, tail) = masks.split_at_mut(1);
        tail[0].grow_from(&head[0], root, group);
        if tail[0].contains_zero() {
            return;
        }
    }
    chosen.push(root);
    dfs_visit(group, k, &mut chosen, &mut masks, visit);
}

fn check_k(group: &GroupSpec, k: usize) -> Result<()> {
    let max = group.order().saturating_sub(1);
    if k == 0 || k > max {
        return Err(Error::KOutOfRange { k, max });
    }
    Ok(())
}

/// Visits every zero-sum free k-subset exactly once, in lexicographic order
/// of flat-index lists, and returns the count.
pub fn enumerate_zsf_subsets<F: FnMut(&[usize], &SumsetMask)>(
    group: &GroupSpec,
    k: usize,
    mut visit: F,
) -> Result<u64> {
    check_k(group, k)?;
    let mut count = 0u64;
    for root in 1..=group.order() - k {
        run_root_visit(group, k, root, &mut |s, m| {
            count += 1;
            visit(s, m);
        });
    }
    Ok(count)
}

/// The multiplicative unit action on a cyclic group: orbits of subsets under
/// x -> u*x preserve zero-sum freeness and |Σ|. A subset is canonical when it
/// is the lexicographic minimum of its orbit; the canonical representative's
/// smallest element always divides the modulus, so rooting the walk at the
/// divisors reaches every orbit.
pub(crate) struct UnitAction {
    n: usize,
    units: Vec<usize>,
}

impl UnitAction {
    pub(crate) fn new(n: usize) -> Self {
        UnitAction {
            n,
            units: (1..n).filter(|&u| gcd(u, n) == 1).collect(),
        }
    }

    /// Some(orbit size) iff `subset` is the lexicographic minimum of its orbit.
    fn orbit_weight_if_canonical(&self, subset: &[usize]) -> Option<u64> {
        let mut orbit: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &u in &self.units {
            let mut mapped: Vec<usize> = subset.iter().map(|&x| u * x % self.n).collect();
            mapped.sort_unstable();
            if mapped.as_slice() < subset {
                return None;
            }
            orbit.insert(mapped);
        }
        Some(orbit.len() as u64)
    }

    pub(crate) fn orbit_members(&self, subset: &[usize]) -> BTreeSet<Vec<usize>> {
        let mut orbit = BTreeSet::new();
        for &u in &self.units {
            let mut mapped: Vec<usize> = subset.iter().map(|&x| u * x % self.n).collect();
            mapped.sort_unstable();
            orbit.insert(mapped);
        }
        orbit
    }
}

fn roots_for(group: &GroupSpec, k: usize, reduction: Option<&UnitAction>) -> Vec<usize> {
    let order = group.order();
    match reduction {
        None => (1..=order - k).collect(),
        Some(_) => (1..order).filter(|&d| order % d == 0).collect(),
    }
}

/// Sharded fold over the zero-sum free k-subsets. Returns the (weighted)
/// count and the merged accumulator.
pub(crate) fn search_subsets<F: SubsetFold>(
    group: &GroupSpec,
    k: usize,
    opts: SearchOptions,
    fold: &F,
) -> Result<(u64, F::Acc)> {
    check_k(group, k)?;
    let reduction = if opts.unit_reduced {
        if !group.is_cyclic_factor() {
            return Err(Error::FastModeNotCyclic);
        }
        Some(UnitAction::new(group.order()))
    } else {
        None
    };
    let roots = roots_for(group, k, reduction.as_ref());
    let threads = opts.threads.max(1).min(roots.len().max(1));

    let run_root = |root: usize| -> (u64, F::Acc) {
        let mut acc = fold.new_acc();
        let mut count = 0u64;
        run_root_visit(group, k, root, &mut |subset, mask| {
            let weight = match &reduction {
                None => 1,
                Some(action) => match action.orbit_weight_if_canonical(subset) {
                    Some(w) => w,
                    None => return,
                },
            };
            count += weight;
            fold.leaf(&mut acc, subset, mask, weight);
        });
        (count, acc)
    };

    let results: Vec<(u64, F::Acc)> = if threads <= 1 {
        roots.iter().map(|&r| run_root(r)).collect()
    } else {
        let mut slots: Vec<Option<(u64, F::Acc)>> = (0..roots.len()).map(|_| None).collect();
        let run_root = &run_root;
        let roots_ref = &roots;
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    scope.spawn(move || {
                        let mut out = Vec::new();
                        let mut i = w;
                        while i < roots_ref.len() {
                            out.push((i, run_root(roots_ref[i])));
                            i += threads;
                        }
                        out
                    })
                })
                .collect();
            for h in handles {
                for (i, res) in h.join().expect("search worker panicked") {
                    slots[i] = Some(res);
                }
            }
        });
        slots.into_iter().map(|s| s.expect("every root ran")).collect()
    };

    let mut total = 0u64;
    let mut acc = fold.new_acc();
    for (c, a) in results {
        total += c;
        fold.absorb(&mut acc, a);
    }
    Ok((total, acc))
}

struct MinFold;

struct MinAcc {
    min: Option<usize>,
    witnesses: Vec<Vec<usize>>,
}

impl SubsetFold for MinFold {
    type Acc = MinAcc;

    fn new_acc(&self) -> MinAcc {
        MinAcc {
            min: None,
            witnesses: Vec::new(),
        }
    }

    fn leaf(&self, acc: &mut MinAcc, subset: &[usize], mask: &SumsetMask, _weight: u64) {
        let p = mask.popcount();
        match acc.min {
            Some(m) if p > m => {}
            Some(m) if p == m => acc.witnesses.push(subset.to_vec()),
            _ => {
                acc.min = Some(p);
                acc.witnesses.clear();
                acc.witnesses.push(subset.to_vec());
            }
        }
    }

    fn absorb(&self, into: &mut MinAcc, from: MinAcc) {
        match (into.min, from.min) {
            (_, None) => {}
            (None, Some(_)) => *into = from,
            (Some(a), Some(b)) => {
                if b < a {
                    *into = from;
                } else if b == a {
                    into.witnesses.extend(from.witnesses);
                }
            }
        }
    }
}

pub(crate) struct TargetFold {
    pub target: usize,
}

impl SubsetFold for TargetFold {
    type Acc = Vec<Vec<usize>>;

    fn new_acc(&self) -> Self::Acc {
        Vec::new()
    }

    fn leaf(&self, acc: &mut Self::Acc, subset: &[usize], mask: &SumsetMask, _weight: u64) {
        if mask.popcount() == self.target {
            acc.push(subset.to_vec());
        }
    }

    fn absorb(&self, into: &mut Self::Acc, from: Self::Acc) {
        into.extend(from);
    }
}

struct CollectFold;

impl SubsetFold for CollectFold {
    type Acc = Vec<Vec<usize>>;

    fn new_acc(&self) -> Self::Acc {
        Vec::new()
    }

    fn leaf(&self, acc: &mut Self::Acc, subset: &[usize], _mask: &SumsetMask, _weight: u64) {
        acc.push(subset.to_vec());
    }

    fn absorb(&self, into: &mut Self::Acc, from: Self::Acc) {
        into.extend(from);
    }
}

struct CountFold;

impl SubsetFold for CountFold {
    type Acc = ();
    fn new_acc(&self) {}
    fn leaf(&self, _: &mut (), _: &[usize], _: &SumsetMask, _: u64) {}
    fn absorb(&self, _: &mut (), _: ()) {}
}

/// All parameterizations per instance set for the given families, in family
/// then sweep order; used to attach match lists to many witnesses with one
/// sweep. Agrees with running `match_subset` per witness.
fn instance_match_map(
    group: &Arc<GroupSpec>,
    families: &[FormId],
) -> BTreeMap<Vec<usize>, Vec<FormMatchEntry>> {
    let mut map: BTreeMap<Vec<usize>, Vec<FormMatchEntry>> = BTreeMap::new();
    for &id in families {
        crate::forms::for_each_valid_instantiation(group, id, |params, inst| {
            map.entry(inst.support()).or_default().push(FormMatchEntry {
                form: id.token().to_string(),
                params: params
                    .iter()
                    .map(|&f| group.render_element(f))
                    .collect(),
            });
        });
    }
    map
}

pub(crate) fn extremal_families(k: usize, min: Option<usize>) -> &'static [FormId] {
    match (k, min) {
        (6, Some(19)) => FormId::families_for_size(6),
        (5, Some(13)) => FormId::families_for_size(5),
        (4, Some(8)) => FormId::families_for_size(4),
        _ => &[],
    }
}

/// Exact minimum of |Σ(S)| over all zero-sum free k-subsets, with the
/// complete witness list. When the minimum sits at an extremal target
/// ((6,19), (5,13) or (4,8)), each witness carries its family matches.
pub fn min_sigma(group: &Arc<GroupSpec>, k: usize, opts: SearchOptions) -> Result<SearchReport> {
    let t0 = Instant::now();
    let (zsf_count, acc) = search_subsets(group, k, opts, &MinFold)?;
    let mut witnesses = acc.witnesses;
    if opts.unit_reduced && !witnesses.is_empty() {
        let action = UnitAction::new(group.order());
        let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
        for w in &witnesses {
            set.extend(action.orbit_members(w));
        }
        witnesses = set.into_iter().collect();
    }
    let matches_by_set = instance_match_map(group, extremal_families(k, acc.min));
    let entries: Vec<WitnessEntry> = witnesses
        .iter()
        .map(|w| {
            let s = SubsetSeq::subset(Arc::clone(group), w).expect("witnesses are subsets");
            WitnessEntry {
                subset: s.render(),
                sigma_size: acc.min.expect("witnesses imply a minimum"),
                matches: matches_by_set.get(w).cloned().unwrap_or_default(),
            }
        })
        .collect();
    Ok(SearchReport {
        group: group.render(),
        k,
        zsf_count,
        min_sigma: acc.min,
        witness_count: entries.len(),
        witnesses: entries,
        elapsed_ms: t0.elapsed().as_millis(),
        shards: opts.threads.max(1),
    })
}

/// Count (and optionally list) the zero-sum free k-subsets.
pub fn enumerate_report(
    group: &Arc<GroupSpec>,
    k: usize,
    opts: SearchOptions,
    list: bool,
) -> Result<EnumerationReport> {
    let t0 = Instant::now();
    let (zsf_count, subsets) = if list {
        let (count, mut collected) = search_subsets(group, k, opts, &CollectFold)?;
        if opts.unit_reduced {
            let action = UnitAction::new(group.order());
            let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
            for s in &collected {
                set.extend(action.orbit_members(s));
            }
            collected = set.into_iter().collect();
        }
        let rendered = collected
            .iter()
            .map(|w| {
                SubsetSeq::subset(Arc::clone(group), w)
                    .expect("enumerated subsets are subsets")
                    .render()
            })
            .collect();
        (count, rendered)
    } else {
        let (count, ()) = search_subsets(group, k, opts, &CountFold)?;
        (count, Vec::new())
    };
    Ok(EnumerationReport {
        group: group.render(),
        k,
        zsf_count,
        subsets,
        elapsed_ms: t0.elapsed().as_millis(),
        shards: opts.threads.max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::to_json_pretty;

    fn arc(spec: &str) -> Arc<GroupSpec> {
        Arc::new(GroupSpec::parse(spec).unwrap())
    }

    #[test]
    fn enumerate_z5_pairs() {
        let z5 = arc("Z5");
        let mut seen = Vec::new();
        let count = enumerate_zsf_subsets(&z5, 2, |s, _| seen.push(s.to_vec())).unwrap();
        assert_eq!(count, 4);
        assert_eq!(
            seen,
            vec![vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 4]]
        );
    }

    #[test]
    fn enumerate_edge_cases() {
        let z2 = arc("Z2");
        let count = enumerate_zsf_subsets(&z2, 1, |_, _| {}).unwrap();
        assert_eq!(count, 1);

        let z9 = arc("Z9");
        assert_eq!(enumerate_zsf_subsets(&z9, 8, |_, _| {}).unwrap(), 0);

        assert!(matches!(
            enumerate_zsf_subsets(&z9, 0, |_, _| {}),
            Err(Error::KOutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_zsf_subsets(&z9, 9, |_, _| {}),
            Err(Error::KOutOfRange { .. })
        ));
    }

    #[test]
    fn masks_grow_monotonically() {
        let z11 = arc("Z11");
        enumerate_zsf_subsets(&z11, 3, |s, mask| {
            let base = mask.popcount();
            for g in s[2] + 1..11 {
                let mut grown = SumsetMask::empty(11);
                grown.grow_from(mask, g, &z11);
                assert!(grown.popcount() >= base);
            }
        })
        .unwrap();
    }

    #[test]
    fn min_sigma_reference_groups() {
        let z20 = arc("Z20");
        let r = min_sigma(&z20, 6, SearchOptions::default()).unwrap();
        assert_eq!(r.min_sigma, Some(19));
        let subsets: Vec<&str> = r.witnesses.iter().map(|w| w.subset.as_str()).collect();
        assert!(subsets.contains(&"1,3,4,5,6,18"));
        assert!(subsets.contains(&"1,4,5,9,12,17"));

        let z9 = arc("Z9");
        assert_eq!(min_sigma(&z9, 4, SearchOptions::default()).unwrap().min_sigma, Some(8));

        let z14 = arc("Z14");
        assert_eq!(min_sigma(&z14, 5, SearchOptions::default()).unwrap().min_sigma, Some(13));

        let z7 = arc("Z7");
        assert_eq!(min_sigma(&z7, 3, SearchOptions::default()).unwrap().min_sigma, Some(6));
    }

    #[test]
    fn absent_minimum_is_reported_as_none() {
        let z3 = arc("Z3");
        let r = min_sigma(&z3, 2, SearchOptions::default()).unwrap();
        assert_eq!(r.zsf_count, 0);
        assert_eq!(r.min_sigma, None);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn shard_counts_do_not_change_reports() {
        let z12 = arc("Z12");
        let base = min_sigma(&z12, 4, SearchOptions::default()).unwrap();
        for threads in [2, 3, 8] {
            let r = min_sigma(&z12, 4, SearchOptions::with_threads(threads)).unwrap();
            assert_eq!(to_json_pretty(&r), to_json_pretty(&base));
        }
    }

    #[test]
    fn unit_reduction_matches_full_enumeration() {
        for (spec, k) in [("Z20", 4), ("Z20", 5), ("Z12", 3), ("Z15", 4), ("Z9", 4)] {
            let g = arc(spec);
            let full = min_sigma(&g, k, SearchOptions::default()).unwrap();
            let fast = min_sigma(
                &g,
                k,
                SearchOptions {
                    threads: 2,
                    unit_reduced: true,
                },
            )
            .unwrap();
            assert_eq!(to_json_pretty(&fast), to_json_pretty(&full), "{spec} k={k}");
        }
    }

    #[test]
    fn unit_reduction_needs_a_cyclic_group() {
        let g = arc("Z2xZ10");
        assert!(matches!(
            min_sigma(
                &g,
                3,
                SearchOptions {
                    threads: 1,
                    unit_reduced: true
                }
            ),
            Err(Error::FastModeNotCyclic)
        ));
    }

    #[test]
    fn enumeration_report_lists_subsets() {
        let z5 = arc("Z5");
        let r = enumerate_report(&z5, 2, SearchOptions::default(), true).unwrap();
        assert_eq!(r.zsf_count, 4);
        assert_eq!(r.subsets, vec!["1,2", "1,3", "2,4", "3,4"]);

        let fast = enumerate_report(
            &z5,
            2,
            SearchOptions {
                threads: 1,
                unit_reduced: true,
            },
            true,
        )
        .unwrap();
        assert_eq!(fast.zsf_count, 4);
        assert_eq!(fast.subsets, r.subsets);
    }

    #[test]
    fn min_sigma_witnesses_carry_matches_at_extremal_targets() {
        let z9 = arc("Z9");
        let r = min_sigma(&z9, 4, SearchOptions::default()).unwrap();
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            assert!(
                w.matches.iter().any(|m| m.form == "s4-i"),
                "witness {} lacks an s4-i match",
                w.subset
            );
        }
    }
}
