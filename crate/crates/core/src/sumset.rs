//! Subset sums as bit arrays.
//!
//! `SumsetMask` holds one bit per group element; bit `i` is set iff element
//! `i` is the sum of some nonempty subsequence of the input. The mask grows
//! incrementally: folding in one occurrence of `g` replaces the mask `M` by
//! `M | (M + g) | {g}`, where `M + g` translates every set bit by `g`. For
//! single-factor groups the translation is a bit rotation done with word
//! shifts; for products it walks the set bits through the flat-index
//! arithmetic.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupSpec;

/// Largest subset size accepted by [`SubsetSeq::partition_classes`];
/// partitioning enumerates all `2^|S|` subsets.
pub const PARTITION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumsetMask {
    words: Vec<u64>,
    bits: usize,
}

impl SumsetMask {
    pub fn empty(bits: usize) -> Self {
        SumsetMask {
            words: vec![0; bits.div_ceil(64)],
            bits,
        }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.bits);
        self.words[i / 64] |= 1u64 << (i % 64);
    }

    #[inline]
    pub fn test(&self, i: usize) -> bool {
        debug_assert!(i < self.bits);
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    #[inline]
    pub fn contains_zero(&self) -> bool {
        self.words[0] & 1 != 0
    }

    pub fn popcount(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn clear(&mut self) {
        self.words.fill(0);
    }

    pub fn copy_from(&mut self, other: &SumsetMask) {
        debug_assert_eq!(self.bits, other.bits);
        self.words.copy_from_slice(&other.words);
    }

    pub fn or_assign(&mut self, other: &SumsetMask) {
        debug_assert_eq!(self.bits, other.bits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * 64;
            std::iter::successors((w != 0).then_some(w), |&v| {
                let rest = v & (v - 1);
                (rest != 0).then_some(rest)
            })
            .map(move |v| base + v.trailing_zeros() as usize)
        })
    }

    pub fn to_sorted_vec(&self) -> Vec<usize> {
        self.iter_ones().collect()
    }

    fn top_mask(&self) -> u64 {
        let rem = self.bits % 64;
        if rem == 0 {
            !0
        } else {
            (1u64 << rem) - 1
        }
    }

    /// ORs `src << s` into self, dropping bits shifted past `self.bits`.
    fn or_shl(&mut self, src: &SumsetMask, s: usize) {
        let (ws, bs) = (s / 64, s % 64);
        let w = self.words.len();
        for i in 0..w {
            let v = src.words[i];
            if v == 0 {
                continue;
            }
            let lo = i + ws;
            if lo < w {
                self.words[lo] |= v << bs;
            }
            if bs != 0 && lo + 1 < w {
                self.words[lo + 1] |= v >> (64 - bs);
            }
        }
        let last = w - 1;
        let m = self.top_mask();
        self.words[last] &= m;
    }

    /// ORs `src >> r` into self.
    fn or_shr(&mut self, src: &SumsetMask, r: usize) {
        let (wr, br) = (r / 64, r % 64);
        let w = self.words.len();
        for i in wr..w {
            let v = src.words[i];
            if v == 0 {
                continue;
            }
            self.words[i - wr] |= v >> br;
            if br != 0 && i - wr >= 1 {
                self.words[i - wr - 1] |= v << (64 - br);
            }
        }
    }

    /// ORs the left-rotation of `src` by `s` positions (over `bits` slots)
    /// into self. Single-factor translation specializes to this.
    fn or_rotl(&mut self, src: &SumsetMask, s: usize) {
        debug_assert_eq!(self.bits, src.bits);
        debug_assert!(s < self.bits);
        if s == 0 {
            self.or_assign(src);
            return;
        }
        self.or_shl(src, s);
        self.or_shr(src, self.bits - s);
    }

    /// Sets self to `base | (base + g) | {g}`: the sumset after folding one
    /// occurrence of `g` into the subsequences summarized by `base`.
    pub fn grow_from(&mut self, base: &SumsetMask, g: usize, group: &GroupSpec) {
        debug_assert_eq!(self.bits, group.order());
        debug_assert_eq!(base.bits, group.order());
        self.copy_from(base);
        if group.is_cyclic_factor() {
            self.or_rotl(base, g);
        } else {
            for i in base.iter_ones() {
                self.set(group.add_flat(i, g));
            }
        }
        self.set(g);
    }
}

/// Sumset of `items` under an arbitrary addition table, used for sums in a
/// quotient where elements are coset ids rather than flat indices.
pub fn sigma_mask_generic<F>(n: usize, items: &[usize], add: F) -> SumsetMask
where
    F: Fn(usize, usize) -> usize,
{
    let mut cur = SumsetMask::empty(n);
    let mut next = SumsetMask::empty(n);
    for &g in items {
        next.copy_from(&cur);
        for i in cur.iter_ones() {
            next.set(add(i, g));
        }
        next.set(g);
        std::mem::swap(&mut cur, &mut next);
    }
    cur
}

/// A sequence over G with multiplicities; a subset is the all-multiplicities-1
/// special case. Entries are kept sorted by flat index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSeq {
    group: Arc<GroupSpec>,
    entries: Vec<(usize, u32)>,
    len: usize,
}

impl SubsetSeq {
    /// Builds a sequence from a flat-index list; repeats become multiplicities.
    pub fn sequence(group: Arc<GroupSpec>, flats: &[usize]) -> Result<Self> {
        let order = group.order();
        let mut sorted = flats.to_vec();
        for &f in &sorted {
            if f >= order {
                return Err(Error::ElementOutOfRange {
                    index: f,
                    order,
                });
            }
        }
        sorted.sort_unstable();
        let mut entries: Vec<(usize, u32)> = Vec::new();
        for f in sorted {
            match entries.last_mut() {
                Some((g, m)) if *g == f => *m += 1,
                _ => entries.push((f, 1)),
            }
        }
        Ok(SubsetSeq {
            group,
            len: flats.len(),
            entries,
        })
    }

    /// Builds a subset; duplicate elements are an error.
    pub fn subset(group: Arc<GroupSpec>, flats: &[usize]) -> Result<Self> {
        let s = Self::sequence(group, flats)?;
        if let Some(&(g, _)) = s.entries.iter().find(|&&(_, m)| m > 1) {
            return Err(Error::NotASubset(s.group.render_element(g)));
        }
        Ok(s)
    }

    pub fn group(&self) -> &Arc<GroupSpec> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Distinct elements, ascending by flat index.
    pub fn support(&self) -> Vec<usize> {
        self.entries.iter().map(|&(g, _)| g).collect()
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn multiplicity(&self, flat: usize) -> u32 {
        self.entries
            .iter()
            .find(|&&(g, _)| g == flat)
            .map_or(0, |&(_, m)| m)
    }

    /// h(S): the largest multiplicity.
    pub fn max_multiplicity(&self) -> u32 {
        self.entries.iter().map(|&(_, m)| m).max().unwrap_or(0)
    }

    pub fn is_subset(&self) -> bool {
        self.entries.iter().all(|&(_, m)| m == 1)
    }

    /// The multiset expanded to a flat list, ascending.
    pub fn expanded(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len);
        for &(g, m) in &self.entries {
            for _ in 0..m {
                out.push(g);
            }
        }
        out
    }

    /// The full sum of the sequence as a flat index.
    pub fn total_sum(&self) -> usize {
        let g = &self.group;
        self.entries.iter().fold(0, |acc, &(f, m)| {
            g.add_flat(acc, g.scalar_mul_flat(m as i64, f))
        })
    }

    /// The set of sums of nonempty subsequences, as a bit array over G.
    pub fn sigma_set(&self) -> Result<SumsetMask> {
        if self.len == 0 {
            return Err(Error::EmptySequence);
        }
        let n = self.group.order();
        let mut cur = SumsetMask::empty(n);
        let mut next = SumsetMask::empty(n);
        for &(g, m) in &self.entries {
            for _ in 0..m {
                next.grow_from(&cur, g, &self.group);
                std::mem::swap(&mut cur, &mut next);
            }
        }
        Ok(cur)
    }

    /// True iff no nonempty subsequence sums to the identity.
    pub fn is_zero_sum_free(&self) -> Result<bool> {
        Ok(!self.sigma_set()?.contains_zero())
    }

    /// `g^k` factors joined by commas; multiplicity 1 renders bare.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, &(g, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", self.group.render_element(g));
            if m > 1 {
                let _ = write!(out, "^{m}");
            }
        }
        out
    }

    /// Parses the rendering format: comma-separated element texts, each with
    /// an optional `^k` multiplicity; commas inside tuples are respected.
    pub fn parse(group: &Arc<GroupSpec>, text: &str) -> Result<Self> {
        let bad = || Error::MalformedSequence(text.to_string());
        let mut flats = Vec::new();
        for token in split_top_level(text) {
            let token = token.trim();
            if token.is_empty() {
                return Err(bad());
            }
            let (elem_text, mult) = match token.rsplit_once('^') {
                Some((e, m)) if !e.ends_with(')') || e.contains('(') => {
                    let m: u32 = m.trim().parse().map_err(|_| bad())?;
                    if m == 0 {
                        return Err(bad());
                    }
                    (e, m)
                }
                _ => (token, 1),
            };
            let e = group.parse_element(elem_text)?;
            for _ in 0..mult {
                flats.push(e.flat());
            }
        }
        if flats.is_empty() {
            return Err(bad());
        }
        Self::sequence(Arc::clone(group), &flats)
    }

    /// Groups the nonempty subsets of a subset S by their sum. Members are
    /// position bitmasks over the sorted element list, so complementation is
    /// a mask flip.
    pub fn partition_classes(&self) -> Result<ClassPartition> {
        if self.len == 0 {
            return Err(Error::EmptySequence);
        }
        if !self.is_subset() {
            let &(g, _) = self.entries.iter().find(|&&(_, m)| m > 1).unwrap();
            return Err(Error::NotASubset(self.group.render_element(g)));
        }
        if self.len > PARTITION_CAP {
            return Err(Error::PartitionTooLarge {
                size: self.len,
                cap: PARTITION_CAP,
            });
        }
        let flats = self.support();
        let (classes, total_sum) = class_masks(&self.group, &flats);
        Ok(ClassPartition {
            group: Arc::clone(&self.group),
            flats,
            k: self.len,
            total_sum,
            classes,
        })
    }
}

/// Shared partition kernel: subset sums via the `m & (m-1)` recurrence,
/// grouped by sum. Returns the classes and the full-set sum.
pub(crate) fn class_masks(
    group: &GroupSpec,
    flats: &[usize],
) -> (BTreeMap<usize, Vec<u32>>, usize) {
    let k = flats.len();
    debug_assert!(k >= 1 && k <= PARTITION_CAP);
    let total = 1u32 << k;
    let mut sums = vec![0usize; total as usize];
    let mut classes: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for m in 1..total {
        let low = m.trailing_zeros() as usize;
        let rest = (m & (m - 1)) as usize;
        let s = group.add_flat(sums[rest], flats[low]);
        sums[m as usize] = s;
        classes.entry(s).or_default().push(m);
    }
    (classes, sums[(total - 1) as usize])
}

/// The equal-sum partition of the nonempty subsets of a subset S.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPartition {
    group: Arc<GroupSpec>,
    flats: Vec<usize>,
    k: usize,
    total_sum: usize,
    classes: BTreeMap<usize, Vec<u32>>,
}

impl ClassPartition {
    pub fn group(&self) -> &Arc<GroupSpec> {
        &self.group
    }

    /// The sorted elements of S; position i in a member mask refers to
    /// `subset_flats()[i]`.
    pub fn subset_flats(&self) -> &[usize] {
        &self.flats
    }

    pub fn subset_size(&self) -> usize {
        self.k
    }

    /// Number of classes r; equals |Σ(S)|.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// σ(S) as a flat index.
    pub fn total_sum(&self) -> usize {
        self.total_sum
    }

    pub fn class(&self, sum: usize) -> Option<&[u32]> {
        self.classes.get(&sum).map(|v| v.as_slice())
    }

    pub fn classes(&self) -> impl Iterator<Item = (usize, &[u32])> {
        self.classes.iter().map(|(&s, v)| (s, v.as_slice()))
    }

    /// σ(S) - s: the sum whose class is the dual of the class at `s`.
    pub fn dual_sum(&self, sum: usize) -> usize {
        self.group
            .add_flat(self.total_sum, self.group.neg_flat(sum))
    }

    /// The dual class: complements of the members within S. The complement
    /// of S itself is empty and excluded by convention.
    pub fn dual_class(&self, sum: usize) -> Result<Vec<u32>> {
        let members = self
            .classes
            .get(&sum)
            .ok_or_else(|| Error::SumNotRealized(self.group.render_element(sum)))?;
        let full = (1u32 << self.k) - 1;
        let mut out: Vec<u32> = members
            .iter()
            .map(|&m| m ^ full)
            .filter(|&m| m != 0)
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Renders a member mask as the subset of S it selects.
    pub fn render_member(&self, mask: u32) -> String {
        let mut parts = Vec::new();
        for (i, &f) in self.flats.iter().enumerate() {
            if mask & (1 << i) != 0 {
                parts.push(self.group.render_element(f));
            }
        }
        parts.join(",")
    }
}

/// Splits on commas that are not nested inside parentheses.
pub(crate) fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}
