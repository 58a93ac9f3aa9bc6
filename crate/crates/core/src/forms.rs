//! The extremal set families and equal-sum class shapes.
//!
//! Set families describe, up to parameters, every zero-sum free subset that
//! attains the minimum subset-sum count at its size: five 6-element families
//! (|Σ| = 19), two 5-element families (|Σ| = 13) and one 4-element family
//! (|Σ| = 8). Class shapes b1-b4 and c1-c7 are the position patterns, up to a
//! permutation of the six slots, that a size-4 class containing a singleton
//! (resp. a size-5 class) can take.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Rejection, Result};
use crate::group::{Element, GroupSpec};
use crate::sumset::{ClassPartition, SubsetSeq};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormId {
    S6I,
    S6II,
    S6III,
    S6IV,
    S6V,
    S5I,
    S5II,
    S4I,
    B1,
    B2,
    B3,
    B4,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

use FormId::*;

pub const SET_FAMILIES: [FormId; 8] = [S6I, S6II, S6III, S6IV, S6V, S5I, S5II, S4I];
pub const SIZE6_FAMILIES: [FormId; 5] = [S6I, S6II, S6III, S6IV, S6V];
pub const SIZE5_FAMILIES: [FormId; 2] = [S5I, S5II];
pub const SIZE4_FAMILIES: [FormId; 1] = [S4I];

impl FormId {
    pub const ALL: [FormId; 19] = [
        S6I, S6II, S6III, S6IV, S6V, S5I, S5II, S4I, B1, B2, B3, B4, C1, C2, C3, C4, C5, C6, C7,
    ];

    pub fn token(self) -> &'static str {
        match self {
            S6I => "s6-i",
            S6II => "s6-ii",
            S6III => "s6-iii",
            S6IV => "s6-iv",
            S6V => "s6-v",
            S5I => "s5-i",
            S5II => "s5-ii",
            S4I => "s4-i",
            B1 => "b1",
            B2 => "b2",
            B3 => "b3",
            B4 => "b4",
            C1 => "c1",
            C2 => "c2",
            C3 => "c3",
            C4 => "c4",
            C5 => "c5",
            C6 => "c6",
            C7 => "c7",
        }
    }

    pub fn from_token(token: &str) -> Option<FormId> {
        Self::ALL.into_iter().find(|f| f.token() == token)
    }

    /// Parameter count for set families; class shapes take no parameters.
    pub fn arity(self) -> Option<usize> {
        match self {
            S6I => Some(3),
            S6II | S6V | S5I => Some(2),
            S6III | S6IV | S5II | S4I => Some(1),
            _ => None,
        }
    }

    /// Set size for set families.
    pub fn family_size(self) -> Option<usize> {
        match self {
            S6I | S6II | S6III | S6IV | S6V => Some(6),
            S5I | S5II => Some(5),
            S4I => Some(4),
            _ => None,
        }
    }

    pub fn is_set_family(self) -> bool {
        self.family_size().is_some()
    }

    /// Class size a shape template describes: 4 for b-shapes, 5 for c-shapes.
    pub fn shape_class_size(self) -> Option<usize> {
        match self {
            B1 | B2 | B3 | B4 => Some(4),
            C1 | C2 | C3 | C4 | C5 | C6 | C7 => Some(5),
            _ => None,
        }
    }

    pub fn families_for_size(k: usize) -> &'static [FormId] {
        match k {
            6 => &SIZE6_FAMILIES,
            5 => &SIZE5_FAMILIES,
            4 => &SIZE4_FAMILIES,
            _ => &[],
        }
    }
}

impl std::fmt::Display for FormId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

/// Per-check breakdown carried by a reported match; a returned match passed
/// every check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstraintChecks {
    pub side_constraints: bool,
    pub distinct: bool,
    pub zero_sum_free: bool,
}

impl ConstraintChecks {
    fn all_ok() -> Self {
        ConstraintChecks {
            side_constraints: true,
            distinct: true,
            zero_sum_free: true,
        }
    }
}

/// A parameterization witnessing that a subset equals a family instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormMatch {
    pub form: FormId,
    pub params: Vec<Element>,
    pub checks: ConstraintChecks,
}

/// A shape template together with the slot permutation that reproduces a
/// class; `tau[q]` is the 0-based position in S taken by template slot q+1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShapeMatch {
    pub shape: FormId,
    pub tau: [usize; 6],
}

fn family_elements(g: &GroupSpec, id: FormId, p: &[usize]) -> Vec<usize> {
    let a = |x, y| g.add_flat(x, y);
    let m = |k: i64, x| g.scalar_mul_flat(k, x);
    match id {
        S6I => vec![p[0], p[1], p[2], a(p[0], p[2]), a(p[1], p[2]), a(a(p[0], p[1]), p[2])],
        S6II => vec![p[0], p[1], m(2, p[1]), m(3, p[1]), a(p[0], p[1]), a(p[0], m(2, p[1]))],
        S6III => vec![m(-2, p[0]), p[0], m(3, p[0]), m(4, p[0]), m(5, p[0]), m(6, p[0])],
        S6IV => vec![m(-3, p[0]), p[0], m(4, p[0]), m(5, p[0]), m(9, p[0]), m(12, p[0])],
        S6V => vec![
            p[0],
            p[1],
            a(p[0], p[1]),
            a(p[0], m(2, p[1])),
            a(m(2, p[0]), p[1]),
            a(m(4, p[0]), m(4, p[1])),
        ],
        S5I => vec![p[0], p[1], a(p[0], p[1]), m(2, p[1]), a(p[0], m(2, p[1]))],
        S5II => vec![m(-2, p[0]), p[0], m(3, p[0]), m(4, p[0]), m(5, p[0])],
        S4I => vec![p[0], m(3, p[0]), m(4, p[0]), m(7, p[0])],
        _ => unreachable!("class shapes have no element template"),
    }
}

/// Side constraints in their stated order, so rejection reasons are
/// deterministic.
fn family_constraints(g: &GroupSpec, id: FormId, p: &[usize]) -> std::result::Result<(), &'static str> {
    let ord = |x| g.order_of_flat(x);
    match id {
        S6I => {
            if ord(p[0]) != 2 {
                return Err("ord(x1)=2");
            }
            let d = g.scalar_mul_flat(2, p[1]);
            if d != 0 && d != p[0] {
                return Err("2x2 in <x1>");
            }
        }
        S6II | S5I => {
            if ord(p[0]) != 2 {
                return Err("ord(x1)=2");
            }
        }
        S6III | S6IV => {
            if ord(p[0]) != 20 {
                return Err("ord(x1)=20");
            }
        }
        S6V => {
            if g.scalar_mul_flat(2, p[0]) != g.scalar_mul_flat(2, p[1]) {
                return Err("2x1=2x2");
            }
            if ord(p[0]) != 10 {
                return Err("ord(x1)=10");
            }
            if ord(p[1]) != 10 {
                return Err("ord(x2)=10");
            }
        }
        S5II => {
            if ord(p[0]) != 14 {
                return Err("ord(x1)=14");
            }
        }
        S4I => {
            if ord(p[0]) != 9 {
                return Err("ord(x)=9");
            }
        }
        _ => unreachable!("class shapes have no side constraints"),
    }
    Ok(())
}

/// Validation pipeline on flat parameters: side constraints, then pairwise
/// distinctness, then zero-sum freeness.
fn instantiate_flats(
    group: &Arc<GroupSpec>,
    id: FormId,
    p: &[usize],
) -> std::result::Result<SubsetSeq, Rejection> {
    if let Err(name) = family_constraints(group, id, p) {
        return Err(Rejection::Constraint(name));
    }
    let elems = family_elements(group, id, p);
    let mut sorted = elems.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Rejection::DuplicateElements);
    }
    let s = SubsetSeq::subset(Arc::clone(group), &elems)
        .expect("distinct valid flats form a subset");
    if s.sigma_set().expect("nonempty").contains_zero() {
        return Err(Rejection::NotZeroSumFree);
    }
    Ok(s)
}

/// Builds the family instance for the given parameters, validating side
/// constraints, distinctness and zero-sum freeness in that order. A failed
/// check surfaces as [`Error::FormRejected`] naming the first failure.
pub fn instantiate_form(
    group: &Arc<GroupSpec>,
    id: FormId,
    params: &[Element],
) -> Result<SubsetSeq> {
    let arity = id.arity().ok_or(Error::NotASetFamily { form: id.token() })?;
    if params.len() != arity {
        return Err(Error::FormArity {
            form: id.token(),
            expected: arity,
            got: params.len(),
        });
    }
    let order = group.order();
    for e in params {
        if e.flat() >= order {
            return Err(Error::ElementOutOfRange {
                index: e.flat(),
                order,
            });
        }
    }
    let flats: Vec<usize> = params.iter().map(|e| e.flat()).collect();
    instantiate_flats(group, id, &flats).map_err(Error::FormRejected)
}

/// Calls `f` with every parameter tuple whose instance is valid (constraints,
/// distinctness and zero-sum freeness all pass). Constrained parameters range
/// over the elements of the required order; free parameters sweep all of G.
pub(crate) fn for_each_valid_instantiation<F>(group: &Arc<GroupSpec>, id: FormId, mut f: F)
where
    F: FnMut(&[usize], &SubsetSeq),
{
    let n = group.order();
    let try_params = |p: &[usize], f: &mut F| {
        if let Ok(s) = instantiate_flats(group, id, p) {
            f(p, &s);
        }
    };
    match id {
        S6I => {
            for x1 in group.elements_of_order(2) {
                for x2 in 0..n {
                    let d = group.scalar_mul_flat(2, x2);
                    if d != 0 && d != x1 {
                        continue;
                    }
                    if x2 == x1 {
                        continue;
                    }
                    for x3 in 0..n {
                        try_params(&[x1, x2, x3], &mut f);
                    }
                }
            }
        }
        S6II | S5I => {
            for x1 in group.elements_of_order(2) {
                for x2 in 0..n {
                    if x2 == x1 {
                        continue;
                    }
                    try_params(&[x1, x2], &mut f);
                }
            }
        }
        S6III | S6IV => {
            for x1 in group.elements_of_order(20) {
                try_params(&[x1], &mut f);
            }
        }
        S6V => {
            let tens = group.elements_of_order(10);
            for &x1 in &tens {
                let d1 = group.scalar_mul_flat(2, x1);
                for &x2 in &tens {
                    if x2 == x1 || group.scalar_mul_flat(2, x2) != d1 {
                        continue;
                    }
                    try_params(&[x1, x2], &mut f);
                }
            }
        }
        S5II => {
            for x1 in group.elements_of_order(14) {
                try_params(&[x1], &mut f);
            }
        }
        S4I => {
            for x in group.elements_of_order(9) {
                try_params(&[x], &mut f);
            }
        }
        _ => {}
    }
}

/// Every valid instance of the family in G, as (parameters, instance) pairs
/// in sweep order. Distinct parameter tuples may yield the same set.
pub fn family_instances(group: &Arc<GroupSpec>, id: FormId) -> Result<Vec<(Vec<Element>, SubsetSeq)>> {
    if !id.is_set_family() {
        return Err(Error::NotASetFamily { form: id.token() });
    }
    let mut out = Vec::new();
    for_each_valid_instantiation(group, id, |p, s| {
        let params = p
            .iter()
            .map(|&f| group.element_from_flat(f).expect("sweep stays in range"))
            .collect();
        out.push((params, s.clone()));
    });
    Ok(out)
}

/// Brute-force reverse matching: every parameterization of the requested
/// families whose instance equals S as a set. An empty list means no family
/// fits.
pub fn match_subset(group: &Arc<GroupSpec>, s: &SubsetSeq, ids: &[FormId]) -> Result<Vec<FormMatch>> {
    if !s.is_subset() {
        let &(g, _) = s.entries().iter().find(|&&(_, m)| m > 1).unwrap();
        return Err(Error::NotASubset(group.render_element(g)));
    }
    for &id in ids {
        let size = id.family_size().ok_or(Error::NotASetFamily { form: id.token() })?;
        if size != s.len() {
            return Err(Error::FamilySizeMismatch {
                form: id.token(),
                family: size,
                subset: s.len(),
            });
        }
    }
    let target = s.support();
    let mut out = Vec::new();
    for &id in ids {
        for_each_valid_instantiation(group, id, |p, cand| {
            if cand.support() == target {
                let params = p
                    .iter()
                    .map(|&f| group.element_from_flat(f).expect("sweep stays in range"))
                    .collect();
                out.push(FormMatch {
                    form: id,
                    params,
                    checks: ConstraintChecks::all_ok(),
                });
            }
        });
    }
    Ok(out)
}

/// Slot patterns (1-based) for the class shapes.
pub(crate) const SHAPE_TEMPLATES: [(FormId, &[&[usize]]); 11] = [
    (B1, &[&[1], &[2, 3, 4, 5], &[2, 6], &[3, 4, 6]]),
    (B2, &[&[1], &[2, 3, 4, 5], &[2, 3, 6], &[4, 5, 6]]),
    (B3, &[&[1], &[2, 3], &[4, 5], &[2, 4, 6]]),
    (B4, &[&[1], &[2, 3, 4], &[2, 5, 6], &[3, 5]]),
    (C1, &[&[1, 2], &[3, 4], &[1, 3, 5, 6], &[2, 4, 5, 6], &[1, 4, 5]]),
    (C2, &[&[1, 2], &[3, 4], &[1, 3, 5, 6], &[2, 5, 6], &[1, 4, 5]]),
    (C3, &[&[1, 2], &[3, 4], &[1, 3, 5, 6], &[1, 4, 5], &[2, 4, 6]]),
    (C4, &[&[1, 2], &[3, 4], &[1, 5, 6], &[2, 3, 5], &[2, 4, 6]]),
    (C5, &[&[1, 2], &[1, 3, 5, 6], &[1, 3, 4], &[2, 3, 6], &[4, 5, 6]]),
    (C6, &[&[1, 2], &[1, 3, 5, 6], &[1, 3, 4], &[2, 3, 6], &[2, 4, 5]]),
    (C7, &[&[1, 2], &[1, 3, 4], &[1, 5, 6], &[2, 3, 5], &[2, 4, 6]]),
];

fn permutations6() -> &'static [[usize; 6]] {
    static PERMS: OnceLock<Vec<[usize; 6]>> = OnceLock::new();
    PERMS.get_or_init(|| {
        let mut out = Vec::with_capacity(720);
        let mut items = [0usize, 1, 2, 3, 4, 5];
        permute(&mut items, 0, &mut out);
        out.sort_unstable();
        out
    })
}

fn permute(items: &mut [usize; 6], at: usize, out: &mut Vec<[usize; 6]>) {
    if at == 6 {
        out.push(*items);
        return;
    }
    for i in at..6 {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}

/// Applies a slot permutation to a template, producing sorted member masks.
pub(crate) fn shape_instance(template: &[&[usize]], tau: &[usize; 6]) -> Vec<u32> {
    let mut masks: Vec<u32> = template
        .iter()
        .map(|slots| slots.iter().fold(0u32, |m, &q| m | 1 << tau[q - 1]))
        .collect();
    masks.sort_unstable();
    masks
}

/// Matches the class at `sum` against every shape template of its size under
/// all 720 slot permutations. The underlying subset must be a zero-sum free
/// 6-subset with all element orders at least 3; the class must have size 4
/// or 5.
pub fn class_shape_match(partition: &ClassPartition, sum: usize) -> Result<Vec<ShapeMatch>> {
    let group = partition.group();
    if partition.subset_size() != 6 {
        return Err(Error::ShapePrecondition("the underlying subset must have size 6"));
    }
    if partition.class(0).is_some() {
        return Err(Error::ShapePrecondition(
            "the underlying subset must be zero-sum free",
        ));
    }
    for &f in partition.subset_flats() {
        if group.order_of_flat(f) < 3 {
            return Err(Error::ShapeOrderTooSmall(group.render_element(f)));
        }
    }
    let class = partition
        .class(sum)
        .ok_or_else(|| Error::SumNotRealized(group.render_element(sum)))?;
    if class.len() != 4 && class.len() != 5 {
        return Err(Error::ShapeClassSize(class.len()));
    }
    let mut out = Vec::new();
    for (shape, template) in SHAPE_TEMPLATES {
        if shape.shape_class_size() != Some(class.len()) {
            continue;
        }
        for tau in permutations6() {
            if shape_instance(template, tau) == class {
                out.push(ShapeMatch { shape, tau: *tau });
            }
        }
    }
    Ok(out)
}

/// Deduplicated canonical member-mask vectors per shape, for set-membership
/// matching. The permutation-sweep matcher above is the reference; the two
/// are cross-checked in tests.
pub(crate) fn shape_canonical_sets() -> &'static Vec<(FormId, std::collections::HashSet<Vec<u32>>)> {
    static SETS: OnceLock<Vec<(FormId, std::collections::HashSet<Vec<u32>>)>> = OnceLock::new();
    SETS.get_or_init(|| {
        SHAPE_TEMPLATES
            .iter()
            .map(|&(shape, template)| {
                let mut set = std::collections::HashSet::new();
                for tau in permutations6() {
                    set.insert(shape_instance(template, tau));
                }
                (shape, set)
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(spec: &str) -> Arc<GroupSpec> {
        Arc::new(GroupSpec::parse(spec).unwrap())
    }

    fn elems(g: &Arc<GroupSpec>, flats: &[usize]) -> Vec<Element> {
        flats.iter().map(|&f| g.element_from_flat(f).unwrap()).collect()
    }

    #[test]
    fn tokens_round_trip() {
        for id in FormId::ALL {
            assert_eq!(FormId::from_token(id.token()), Some(id));
        }
        assert_eq!(FormId::from_token("s7-i"), None);
    }

    #[test]
    fn s6_iii_instantiates_in_z20() {
        let z20 = arc("Z20");
        let s = instantiate_form(&z20, S6III, &elems(&z20, &[1])).unwrap();
        assert_eq!(s.support(), vec![1, 3, 4, 5, 6, 18]);
        assert_eq!(s.sigma_set().unwrap().popcount(), 19);
    }

    #[test]
    fn s6_iii_rejects_wrong_order() {
        let z19 = arc("Z19");
        let err = instantiate_form(&z19, S6III, &elems(&z19, &[1])).unwrap_err();
        assert_eq!(
            err,
            Error::FormRejected(Rejection::Constraint("ord(x1)=20"))
        );
    }

    #[test]
    fn s6_v_instantiates_in_z2xz10() {
        let g = arc("Z2xZ10");
        let x1 = g.parse_element("(0,1)").unwrap();
        let x2 = g.parse_element("(1,1)").unwrap();
        let s = instantiate_form(&g, S6V, &[x1, x2]).unwrap();
        let rendered: Vec<String> = s
            .support()
            .iter()
            .map(|&f| g.render_element(f))
            .collect();
        assert_eq!(rendered, vec!["(0,1)", "(0,3)", "(0,8)", "(1,1)", "(1,2)", "(1,3)"]);
        assert!(s.is_zero_sum_free().unwrap());
        assert_eq!(s.sigma_set().unwrap().popcount(), 19);
    }

    #[test]
    fn s4_i_instantiates_in_z9() {
        let z9 = arc("Z9");
        let s = instantiate_form(&z9, S4I, &elems(&z9, &[2])).unwrap();
        assert_eq!(s.support(), vec![2, 5, 6, 8]);
        assert_eq!(s.sigma_set().unwrap().popcount(), 8);
    }

    #[test]
    fn arity_and_family_guards() {
        let z20 = arc("Z20");
        assert!(matches!(
            instantiate_form(&z20, S6III, &elems(&z20, &[1, 2])),
            Err(Error::FormArity { expected: 1, got: 2, .. })
        ));
        assert!(matches!(
            instantiate_form(&z20, B2, &[]),
            Err(Error::NotASetFamily { .. })
        ));
    }

    #[test]
    fn duplicate_elements_are_rejected() {
        // In Z2xZ10, x1 = x2 = (0,1) passes the s6-v constraints but collides.
        let g = arc("Z2xZ10");
        let x = g.parse_element("(0,1)").unwrap();
        let err = instantiate_form(&g, S6V, &[x.clone(), x]).unwrap_err();
        assert_eq!(err, Error::FormRejected(Rejection::DuplicateElements));
    }

    #[test]
    fn zero_sums_are_rejected() {
        // s6-ii with x1=(1,0), x2=(0,2) builds {.., (0,4), (0,6), ..} and
        // (0,4)+(0,6)=0, so the instance fails the final check.
        let g = arc("Z2xZ10");
        let x1 = g.parse_element("(1,0)").unwrap();
        let x2 = g.parse_element("(0,2)").unwrap();
        let err = instantiate_form(&g, S6II, &[x1, x2]).unwrap_err();
        assert_eq!(err, Error::FormRejected(Rejection::NotZeroSumFree));
    }

    #[test]
    fn match_subset_finds_the_z20_families() {
        let z20 = arc("Z20");
        let s = SubsetSeq::subset(Arc::clone(&z20), &[18, 1, 3, 4, 5, 6]).unwrap();
        let matches = match_subset(&z20, &s, &SIZE6_FAMILIES).unwrap();
        assert!(matches
            .iter()
            .any(|m| m.form == S6III && m.params[0].flat() == 1));
        // Every reported parameterization reproduces S exactly.
        for m in &matches {
            let back = instantiate_form(&z20, m.form, &m.params).unwrap();
            assert_eq!(back.support(), s.support());
        }

        let s = SubsetSeq::subset(Arc::clone(&z20), &[17, 1, 4, 5, 9, 12]).unwrap();
        let matches = match_subset(&z20, &s, &SIZE6_FAMILIES).unwrap();
        assert!(matches
            .iter()
            .any(|m| m.form == S6IV && m.params[0].flat() == 1));
    }

    #[test]
    fn match_subset_size_guard() {
        let z8 = arc("Z8");
        let s = SubsetSeq::subset(Arc::clone(&z8), &[1, 2, 4]).unwrap();
        assert!(matches!(
            match_subset(&z8, &s, &SIZE6_FAMILIES),
            Err(Error::FamilySizeMismatch { .. })
        ));
    }

    #[test]
    fn z20_extremal_class_matches_b3() {
        let z20 = arc("Z20");
        let s = SubsetSeq::subset(Arc::clone(&z20), &[18, 1, 3, 4, 5, 6]).unwrap();
        let p = s.partition_classes().unwrap();
        let matches = class_shape_match(&p, 4).unwrap();
        assert!(!matches.is_empty());
        assert!(matches.iter().any(|m| m.shape == B3));
        // Each reported permutation reproduces the class.
        for m in &matches {
            let template = SHAPE_TEMPLATES
                .iter()
                .find(|&&(id, _)| id == m.shape)
                .unwrap()
                .1;
            assert_eq!(shape_instance(template, &m.tau), p.class(4).unwrap());
        }
    }

    #[test]
    fn shape_match_guards() {
        let z20 = arc("Z20");
        let s = SubsetSeq::subset(Arc::clone(&z20), &[18, 1, 3, 4, 5, 6]).unwrap();
        let p = s.partition_classes().unwrap();
        // Sum 17 is the class of S itself: size 1.
        assert!(matches!(
            class_shape_match(&p, 17),
            Err(Error::ShapeClassSize(1))
        ));
        assert!(matches!(
            class_shape_match(&p, 0),
            Err(Error::SumNotRealized(_))
        ));

        // A subset containing an order-2 element is outside the lemma scope.
        let g = arc("Z2xZ10");
        let x1 = g.parse_element("(1,0)").unwrap();
        let x2 = g.parse_element("(0,5)").unwrap();
        let x3 = g.parse_element("(0,1)").unwrap();
        let s = instantiate_form(&g, S6I, &[x1, x2, x3]).unwrap();
        let p = s.partition_classes().unwrap();
        let some_sum = p.classes().next().unwrap().0;
        assert!(matches!(
            class_shape_match(&p, some_sum),
            Err(Error::ShapeOrderTooSmall(_))
        ));
    }

    #[test]
    fn canonical_sets_agree_with_permutation_sweep() {
        let z20 = arc("Z20");
        let s = SubsetSeq::subset(Arc::clone(&z20), &[18, 1, 3, 4, 5, 6]).unwrap();
        let p = s.partition_classes().unwrap();
        let sets = shape_canonical_sets();
        for (sum, class) in p.classes() {
            if class.len() != 4 && class.len() != 5 {
                continue;
            }
            let swept: std::collections::BTreeSet<FormId> = class_shape_match(&p, sum)
                .unwrap()
                .into_iter()
                .map(|m| m.shape)
                .collect();
            let looked_up: std::collections::BTreeSet<FormId> = sets
                .iter()
                .filter(|(id, set)| {
                    id.shape_class_size() == Some(class.len()) && set.contains(class)
                })
                .map(|&(id, _)| id)
                .collect();
            assert_eq!(swept, looked_up, "sum={sum}");
        }
    }

    #[test]
    fn family_instances_dedupe_to_known_counts_in_z20() {
        let z20 = arc("Z20");
        // Eight units of order 20, one instance each.
        assert_eq!(family_instances(&z20, S6III).unwrap().len(), 8);
        assert_eq!(family_instances(&z20, S6IV).unwrap().len(), 8);
        // Order-10 elements with equal doubles collapse to x1 = x2 in Z20.
        assert!(family_instances(&z20, S6V).unwrap().is_empty());
    }
}
