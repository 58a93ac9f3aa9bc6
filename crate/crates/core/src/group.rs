//! Finite abelian groups given as a product of cyclic factors.
//!
//! A group is described by its factor moduli `Z<n1> x Z<n2> x ...` and kept
//! in exactly the form the caller gave (no invariant-factor normalization).
//! Every element carries two views that stay consistent: a residue vector and
//! a flat mixed-radix index in `[0, |G|)` with factor 0 as the most
//! significant digit. All search and sumset code works on flat indices; the
//! residue view is for arithmetic and rendering.

use std::fmt;

use crate::error::{Error, Result};

/// Default cap on the group order; keeps sumset bit-array allocations bounded.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    moduli: Vec<usize>,
    strides: Vec<usize>,
    order: usize,
}

/// One group element: residue vector plus its flat mixed-radix index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    residues: Vec<usize>,
    flat: usize,
}

impl Element {
    pub fn flat(&self) -> usize {
        self.flat
    }

    pub fn residues(&self) -> &[usize] {
        &self.residues
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residues.len() == 1 {
            write!(f, "{}", self.residues[0])
        } else {
            write!(f, "(")?;
            for (i, r) in self.residues.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{r}")?;
            }
            write!(f, ")")
        }
    }
}

fn malformed(text: &str, reason: &str) -> Error {
    Error::MalformedGroupSpec {
        text: text.to_string(),
        reason: reason.to_string(),
    }
}

impl GroupSpec {
    /// Parses `Z<n>(xZ<n>)*` (case-insensitive) under the default order cap.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_with_limit(text, DEFAULT_MAX_ORDER)
    }

    pub fn parse_with_limit(text: &str, limit: u64) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(malformed(text, "empty spec"));
        }
        let mut moduli = Vec::new();
        for part in trimmed.split(['x', 'X']) {
            let part = part.trim();
            let digits = part
                .strip_prefix(['z', 'Z'])
                .ok_or_else(|| malformed(text, "each factor must look like Z<n>"))?;
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed(text, "each factor must look like Z<n>"));
            }
            let n: u128 = digits
                .parse()
                .map_err(|_| malformed(text, "factor modulus out of range"))?;
            if n < 2 {
                return Err(Error::ModulusTooSmall(n));
            }
            moduli.push(n);
        }
        Self::from_wide_moduli(&moduli, limit)
    }

    /// Builds a group from factor moduli, in the given order.
    pub fn from_moduli(moduli: &[usize]) -> Result<Self> {
        let wide: Vec<u128> = moduli.iter().map(|&m| m as u128).collect();
        Self::from_wide_moduli(&wide, DEFAULT_MAX_ORDER)
    }

    pub fn from_moduli_with_limit(moduli: &[usize], limit: u64) -> Result<Self> {
        let wide: Vec<u128> = moduli.iter().map(|&m| m as u128).collect();
        Self::from_wide_moduli(&wide, limit)
    }

    fn from_wide_moduli(moduli: &[u128], limit: u64) -> Result<Self> {
        if moduli.is_empty() {
            return Err(malformed("", "empty spec"));
        }
        let mut order: u128 = 1;
        for &m in moduli {
            if m < 2 {
                return Err(Error::ModulusTooSmall(m));
            }
            order = order.saturating_mul(m);
            if order > limit as u128 {
                return Err(Error::OrderExceedsLimit { order, limit });
            }
        }
        let moduli: Vec<usize> = moduli.iter().map(|&m| m as usize).collect();
        let mut strides = vec![1usize; moduli.len()];
        for i in (0..moduli.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * moduli[i + 1];
        }
        Ok(GroupSpec {
            moduli,
            strides,
            order: order as usize,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn factor_count(&self) -> usize {
        self.moduli.len()
    }

    /// True for single-factor groups, where mask translation is a bit rotation.
    pub fn is_cyclic_factor(&self) -> bool {
        self.moduli.len() == 1
    }

    /// Canonical spec text, e.g. `Z2xZ10`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        parts.join("x")
    }

    fn encode(&self, residues: &[usize]) -> usize {
        residues
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| r * s)
            .sum()
    }

    fn decode(&self, flat: usize) -> Vec<usize> {
        self.moduli
            .iter()
            .zip(&self.strides)
            .map(|(&m, &s)| (flat / s) % m)
            .collect()
    }

    /// Builds an element from (possibly out-of-range or negative) residues.
    pub fn element(&self, residues: &[i128]) -> Result<Element> {
        if residues.len() != self.moduli.len() {
            return Err(Error::ResidueArity {
                expected: self.moduli.len(),
                got: residues.len(),
            });
        }
        let reduced: Vec<usize> = residues
            .iter()
            .zip(&self.moduli)
            .map(|(&r, &m)| r.rem_euclid(m as i128) as usize)
            .collect();
        let flat = self.encode(&reduced);
        Ok(Element {
            residues: reduced,
            flat,
        })
    }

    pub fn element_from_flat(&self, flat: usize) -> Result<Element> {
        if flat >= self.order {
            return Err(Error::ElementOutOfRange {
                index: flat,
                order: self.order,
            });
        }
        Ok(Element {
            residues: self.decode(flat),
            flat,
        })
    }

    pub fn identity(&self) -> Element {
        Element {
            residues: vec![0; self.moduli.len()],
            flat: 0,
        }
    }

    pub fn add_flat(&self, a: usize, b: usize) -> usize {
        if self.moduli.len() == 1 {
            let n = self.moduli[0];
            let c = a + b;
            return if c >= n { c - n } else { c };
        }
        let mut out = 0;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let da = (a / s) % m;
            let db = (b / s) % m;
            let d = da + db;
            out += if d >= m { d - m } else { d } * s;
        }
        out
    }

    pub fn neg_flat(&self, a: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let d = (a / s) % m;
            out += if d == 0 { 0 } else { m - d } * s;
        }
        out
    }

    pub fn scalar_mul_flat(&self, k: i64, a: usize) -> usize {
        let mut out = 0;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let d = (a / s) % m;
            let km = k.rem_euclid(m as i64) as usize;
            out += (km * d) % m * s;
        }
        out
    }

    /// Least t >= 1 with t*a = 0, via lcm over factors of n_i / gcd(r_i, n_i).
    pub fn order_of_flat(&self, a: usize) -> usize {
        let mut ord = 1usize;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            let d = (a / s) % m;
            let t = m / gcd(d, m);
            ord = lcm(ord, t);
        }
        ord
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.element_from_flat(self.add_flat(a.flat, b.flat))
            .expect("sum of valid elements is valid")
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.element_from_flat(self.neg_flat(a.flat))
            .expect("negation of a valid element is valid")
    }

    pub fn scalar_mul(&self, k: i64, a: &Element) -> Element {
        self.element_from_flat(self.scalar_mul_flat(k, a.flat))
            .expect("multiple of a valid element is valid")
    }

    pub fn element_order(&self, a: &Element) -> usize {
        self.order_of_flat(a.flat)
    }

    /// All flat indices of elements of the given order, ascending.
    pub fn elements_of_order(&self, t: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| self.order_of_flat(g) == t)
            .collect()
    }

    pub fn render_element(&self, flat: usize) -> String {
        match self.element_from_flat(flat) {
            Ok(e) => e.to_string(),
            Err(_) => format!("<invalid:{flat}>"),
        }
    }

    /// Parses an element: a bare residue for single-factor groups, or a
    /// tuple `(a,b,...)`. Negative residues are reduced.
    pub fn parse_element(&self, text: &str) -> Result<Element> {
        let t = text.trim();
        let bad = || Error::MalformedElement(text.to_string());
        if let Some(inner) = t.strip_prefix('(') {
            let inner = inner.strip_suffix(')').ok_or_else(bad)?;
            let parts: Vec<i128> = inner
                .split(',')
                .map(|p| p.trim().parse::<i128>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            if parts.len() != self.moduli.len() {
                return Err(Error::ResidueArity {
                    expected: self.moduli.len(),
                    got: parts.len(),
                });
            }
            self.element(&parts)
        } else {
            if self.moduli.len() != 1 {
                return Err(bad());
            }
            let r: i128 = t.parse().map_err(|_| bad())?;
            self.element(&[r])
        }
    }

    /// Parses a comma-separated element list; commas inside tuples don't split.
    pub fn parse_elements(&self, text: &str) -> Result<Vec<Element>> {
        crate::sumset::split_top_level(text)
            .into_iter()
            .map(|t| self.parse_element(t))
            .collect()
    }

    /// Breadth-first closure of the generators: the smallest subset of G
    /// containing the identity and `gens` that is closed under addition.
    /// Returned sorted by flat index.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<Vec<usize>> {
        for &g in gens {
            if g >= self.order {
                return Err(Error::ElementOutOfRange {
                    index: g,
                    order: self.order,
                });
            }
        }
        let mut in_set = vec![false; self.order];
        in_set[0] = true;
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.add_flat(x, g);
                if !in_set[y] {
                    in_set[y] = true;
                    queue.push(y);
                }
            }
        }
        Ok((0..self.order).filter(|&i| in_set[i]).collect())
    }

    /// Labels every element of G with a coset id for the subgroup `h`,
    /// realizing the canonical map G -> G/H without rebuilding G/H's factor
    /// decomposition. `h` must be a subgroup given as sorted flat indices.
    pub fn quotient_labeling(&self, h: &[usize]) -> Result<CosetLabeling> {
        if h.is_empty() || h[0] != 0 {
            return Err(Error::InvalidSubgroup(
                "subgroup must contain the identity".to_string(),
            ));
        }
        let mut in_h = vec![false; self.order];
        for (i, &x) in h.iter().enumerate() {
            if x >= self.order {
                return Err(Error::ElementOutOfRange {
                    index: x,
                    order: self.order,
                });
            }
            if i > 0 && h[i - 1] >= x {
                return Err(Error::InvalidSubgroup(
                    "subgroup list must be strictly increasing".to_string(),
                ));
            }
            in_h[x] = true;
        }
        for &a in h {
            for &b in h {
                if !in_h[self.add_flat(a, b)] {
                    return Err(Error::InvalidSubgroup(format!(
                        "{} + {} leaves the set",
                        self.render_element(a),
                        self.render_element(b)
                    )));
                }
            }
        }
        let mut labels = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if labels[g] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(g);
            for &x in h {
                labels[self.add_flat(g, x)] = id;
            }
        }
        debug_assert_eq!(reps.len() * h.len(), self.order);
        let zero_label = labels[0];
        Ok(CosetLabeling {
            subgroup: h.to_vec(),
            labels,
            reps,
            zero_label,
        })
    }
}

/// Coset ids for a quotient G/H: `labels[a] == labels[b]` iff a - b lies in H.
/// Coset ids are assigned by ascending minimal representative, so the
/// subgroup itself always gets label 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetLabeling {
    subgroup: Vec<usize>,
    labels: Vec<u32>,
    reps: Vec<usize>,
    zero_label: u32,
}

impl CosetLabeling {
    pub fn label(&self, flat: usize) -> usize {
        self.labels[flat] as usize
    }

    pub fn coset_count(&self) -> usize {
        self.reps.len()
    }

    pub fn rep(&self, label: usize) -> usize {
        self.reps[label]
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn zero_label(&self) -> usize {
        self.zero_label as usize
    }

    /// Addition in the quotient via representatives. Well-defined because H
    /// is a subgroup; the quantified test lives in the unit tests.
    pub fn coset_add(&self, group: &GroupSpec, a: usize, b: usize) -> usize {
        self.labels[group.add_flat(self.reps[a], self.reps[b])] as usize
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_accepts_single_and_product_specs() {
        let g = GroupSpec::parse("Z20").unwrap();
        assert_eq!(g.moduli(), &[20]);
        assert_eq!(g.order(), 20);

        let g = GroupSpec::parse("Z2xZ10").unwrap();
        assert_eq!(g.moduli(), &[2, 10]);
        assert_eq!(g.order(), 20);
        assert_eq!(g.render(), "Z2xZ10");

        let g = GroupSpec::parse("z3Xz4").unwrap();
        assert_eq!(g.moduli(), &[3, 4]);
    }

    #[test]
    fn parse_rejects_bad_specs() {
        assert!(matches!(
            GroupSpec::parse("Z1"),
            Err(Error::ModulusTooSmall(1))
        ));
        assert!(GroupSpec::parse("Z0").is_err());
        assert!(GroupSpec::parse("20").is_err());
        assert!(GroupSpec::parse("Z2x").is_err());
        assert!(GroupSpec::parse("").is_err());
        assert!(GroupSpec::parse("ZxZ2").is_err());
        assert!(matches!(
            GroupSpec::parse("Z2097152"),
            Err(Error::OrderExceedsLimit { .. })
        ));
        assert!(matches!(
            GroupSpec::parse_with_limit("Z64", 32),
            Err(Error::OrderExceedsLimit { .. })
        ));
    }

    #[test]
    fn addition_matches_componentwise_arithmetic() {
        let z20 = GroupSpec::parse("Z20").unwrap();
        assert_eq!(z20.add_flat(18, 5), 3);

        let g = GroupSpec::parse("Z2xZ10").unwrap();
        let a = g.element(&[1, 7]).unwrap();
        let b = g.element(&[1, 5]).unwrap();
        assert_eq!(g.add(&a, &b).residues(), &[0, 2]);

        let z9 = GroupSpec::parse("Z9").unwrap();
        assert_eq!(z9.add_flat(4, 0), 4);
    }

    #[test]
    fn negation_and_scalar_multiples() {
        let z20 = GroupSpec::parse("Z20").unwrap();
        assert_eq!(z20.neg_flat(2), 18);
        assert_eq!(z20.scalar_mul_flat(6, 1), 6);
        assert_eq!(z20.scalar_mul_flat(-2, 1), 18);

        let g = GroupSpec::parse("Z2xZ10").unwrap();
        let x = g.element(&[1, 1]).unwrap();
        assert_eq!(g.scalar_mul(2, &x).residues(), &[0, 2]);
    }

    #[test]
    fn element_orders() {
        let z20 = GroupSpec::parse("Z20").unwrap();
        assert_eq!(z20.order_of_flat(4), 5);
        assert_eq!(z20.order_of_flat(0), 1);

        let g = GroupSpec::parse("Z2xZ10").unwrap();
        let x = g.element(&[1, 0]).unwrap();
        assert_eq!(g.element_order(&x), 2);

        let z9 = GroupSpec::parse("Z9").unwrap();
        assert_eq!(z9.order_of_flat(3), 3);
    }

    #[test]
    fn order_is_minimal_annihilator() {
        for spec in ["Z12", "Z2xZ10", "Z3xZ4x Z5"] {
            let g = GroupSpec::parse(spec).unwrap();
            for a in 0..g.order() {
                let t = g.order_of_flat(a);
                assert_eq!(g.scalar_mul_flat(t as i64, a), 0);
                for s in 1..t {
                    assert_ne!(g.scalar_mul_flat(s as i64, a), 0, "a={a} in {spec}");
                }
            }
        }
    }

    #[test]
    fn closure_examples() {
        let g = GroupSpec::parse("Z2xZ10").unwrap();
        let x = g.element(&[1, 0]).unwrap();
        let h = g.subgroup_closure(&[x.flat()]).unwrap();
        assert_eq!(h, vec![0, x.flat()]);
        assert_eq!(h.len(), 2);

        let z20 = GroupSpec::parse("Z20").unwrap();
        assert_eq!(z20.subgroup_closure(&[5]).unwrap(), vec![0, 5, 10, 15]);

        let a = g.element(&[0, 5]).unwrap();
        let b = g.element(&[1, 0]).unwrap();
        assert_eq!(g.subgroup_closure(&[a.flat(), b.flat()]).unwrap().len(), 4);

        assert_eq!(z20.subgroup_closure(&[]).unwrap(), vec![0]);
    }

    #[test]
    fn closure_is_idempotent() {
        for spec in ["Z12", "Z2xZ6", "Z2xZ2xZ3"] {
            let g = GroupSpec::parse(spec).unwrap();
            for gens in [vec![], vec![1], vec![2, 3]] {
                let gens: Vec<usize> = gens.into_iter().filter(|&x| x < g.order()).collect();
                let h = g.subgroup_closure(&gens).unwrap();
                assert_eq!(g.subgroup_closure(&h).unwrap(), h);
            }
        }
    }

    #[test]
    fn quotient_labeling_examples() {
        let z4 = GroupSpec::parse("Z4").unwrap();
        let lab = z4.quotient_labeling(&[0, 2]).unwrap();
        assert_eq!(lab.coset_count(), 2);
        assert_eq!(
            (0..4).map(|i| lab.label(i)).collect::<Vec<_>>(),
            vec![0, 1, 0, 1]
        );

        let z20 = GroupSpec::parse("Z20").unwrap();
        let lab = z20.quotient_labeling(&[0, 5, 10, 15]).unwrap();
        assert_eq!(lab.coset_count(), 5);

        let z8 = GroupSpec::parse("Z8").unwrap();
        let lab = z8.quotient_labeling(&[0, 4]).unwrap();
        assert_eq!(lab.coset_count(), 4);
        assert_eq!(lab.label(1), lab.label(5));
        assert_eq!(lab.zero_label(), 0);
    }

    #[test]
    fn quotient_rejects_non_subgroups() {
        let z8 = GroupSpec::parse("Z8").unwrap();
        assert!(matches!(
            z8.quotient_labeling(&[0, 3]),
            Err(Error::InvalidSubgroup(_))
        ));
        assert!(z8.quotient_labeling(&[1, 2]).is_err());
        assert!(z8.quotient_labeling(&[]).is_err());
    }

    #[test]
    fn coset_addition_is_well_defined() {
        for (spec, gens) in [("Z12", vec![4]), ("Z2xZ10", vec![15]), ("Z8", vec![4])] {
            let g = GroupSpec::parse(spec).unwrap();
            let gens: Vec<usize> = gens.into_iter().filter(|&x| x < g.order()).collect();
            let h = g.subgroup_closure(&gens).unwrap();
            let lab = g.quotient_labeling(&h).unwrap();
            for u in 0..g.order() {
                for v in 0..g.order() {
                    let direct = lab.label(g.add_flat(u, v));
                    let via_reps = lab.coset_add(&g, lab.label(u), lab.label(v));
                    assert_eq!(direct, via_reps, "u={u} v={v} in {spec}");
                }
            }
        }
    }

    #[test]
    fn element_parsing_and_rendering() {
        let z20 = GroupSpec::parse("Z20").unwrap();
        assert_eq!(z20.parse_element("18").unwrap().flat(), 18);
        assert_eq!(z20.parse_element("-2").unwrap().flat(), 18);
        assert_eq!(z20.render_element(18), "18");

        let g = GroupSpec::parse("Z2xZ10").unwrap();
        let e = g.parse_element("(1,7)").unwrap();
        assert_eq!(e.residues(), &[1, 7]);
        assert_eq!(e.to_string(), "(1,7)");
        assert_eq!(g.parse_element("(1, -3)").unwrap().residues(), &[1, 7]);
        assert!(g.parse_element("7").is_err());
        assert!(g.parse_element("(1,2,3)").is_err());
        assert!(z20.parse_element("(").is_err());
    }

    proptest! {
        #[test]
        fn flat_round_trip(moduli in proptest::collection::vec(2usize..12, 1..4), seed in any::<u64>()) {
            let g = match GroupSpec::from_moduli_with_limit(&moduli, 10_000) {
                Ok(g) => g,
                Err(_) => return Ok(()),
            };
            let flat = (seed as usize) % g.order();
            let e = g.element_from_flat(flat).unwrap();
            let back: Vec<i128> = e.residues().iter().map(|&r| r as i128).collect();
            prop_assert_eq!(g.element(&back).unwrap().flat(), flat);
        }

        #[test]
        fn add_commutes_and_has_identity(moduli in proptest::collection::vec(2usize..10, 1..4), a in any::<u64>(), b in any::<u64>()) {
            let g = match GroupSpec::from_moduli_with_limit(&moduli, 10_000) {
                Ok(g) => g,
                Err(_) => return Ok(()),
            };
            let a = (a as usize) % g.order();
            let b = (b as usize) % g.order();
            prop_assert_eq!(g.add_flat(a, b), g.add_flat(b, a));
            prop_assert_eq!(g.add_flat(a, 0), a);
            prop_assert_eq!(g.add_flat(a, g.neg_flat(a)), 0);
        }
    }
}
