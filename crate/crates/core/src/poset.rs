//! Finite posets stored as reachability bit matrices, with poset maps,
//! fibres, order complexes and the closure-retraction certificate used for
//! core maps.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::homology::SimplicialComplex;

/// Largest poset the dense matrix representation accepts.
pub const MAX_POSET_SIZE: usize = 1 << 14;

#[derive(Clone, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(n: usize) -> Self {
        BitRow(vec![0; n.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] & (1 << (i % 64)) != 0
    }

    fn is_subset(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut b = bits;
            std::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let i = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(w * 64 + i)
            })
        })
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// A finite partially ordered set with labelled elements `0..len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    up: Vec<BitRow>,
    down: Vec<BitRow>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset").field("labels", &self.labels).field("covers", &self.covers()).finish()
    }
}

impl FinitePoset {
    /// Builds a poset from a relation predicate, validating reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_relation(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POSET_SIZE {
            return Err(Error::InvalidPoset(format!("{n} elements exceeds the limit of {MAX_POSET_SIZE}")));
        }
        let mut up = vec![BitRow::new(n); n];
        for (i, row) in up.iter_mut().enumerate() {
            for j in 0..n {
                if leq(i, j) {
                    row.set(j);
                }
            }
        }
        let p = Self::from_up_rows(labels, up);
        p.validate()?;
        Ok(p)
    }

    /// Builds a poset from cover pairs `(i, j)` meaning `i < j`, taking the
    /// transitive closure. Cycles are rejected.
    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if n > MAX_POSET_SIZE {
            return Err(Error::InvalidPoset(format!("{n} elements exceeds the limit of {MAX_POSET_SIZE}")));
        }
        let mut succ = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(Error::InvalidPoset(format!("cover ({i},{j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidPoset(format!("cover ({i},{i}) is a loop")));
            }
            succ[i].push(j);
            indeg[j] += 1;
        }
        // reverse topological order so successors are closed before use
        let mut order = Vec::with_capacity(n);
        let mut stack: Vec<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        while let Some(i) = stack.pop() {
            order.push(i);
            for &j in &succ[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidPoset("cover relation has a cycle".into()));
        }
        let mut up = vec![BitRow::new(n); n];
        for &i in order.iter().rev() {
            let mut row = BitRow::new(n);
            row.set(i);
            for &j in &succ[i] {
                for (w, bits) in up[j].0.iter().enumerate() {
                    row.0[w] |= bits;
                }
            }
            up[i] = row;
        }
        Ok(Self::from_up_rows(labels, up))
    }

    fn from_up_rows(labels: Vec<String>, up: Vec<BitRow>) -> Self {
        let n = labels.len();
        let mut down = vec![BitRow::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].set(i);
            }
        }
        FinitePoset { labels, up, down }
    }

    fn validate(&self) -> Result<()> {
        let n = self.len();
        for i in 0..n {
            if !self.up[i].get(i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {}", self.labels[i])));
            }
            for j in self.up[i].iter() {
                if j != i && self.up[j].get(i) {
                    return Err(Error::InvalidPoset(format!(
                        "not antisymmetric: {} and {}",
                        self.labels[i], self.labels[j]
                    )));
                }
                if !self.up[j].is_subset(&self.up[i]) {
                    return Err(Error::InvalidPoset(format!(
                        "not transitive above {} <= {}",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    fn check(&self, x: usize) -> Result<()> {
        if x < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownElement(x.to_string()))
        }
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Elements `>= x`, ascending by index.
    pub fn above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[x].iter()
    }

    /// Elements `<= x`, ascending by index.
    pub fn below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[x].iter()
    }

    /// Number of comparable pairs `i < j`.
    pub fn strict_relation_count(&self) -> usize {
        self.up.iter().map(|r| r.count() - 1).sum()
    }

    /// Cover pairs `(i, j)`: `i < j` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in self.up[i].iter() {
                if j == i {
                    continue;
                }
                let between = self.up[i].iter().any(|k| k != i && k != j && self.leq(k, j));
                if !between {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].count() == 1).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].count() == 1).collect()
    }

    /// A linear extension: elements sorted by the size of their down-sets.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.down[i].count(), i));
        order
    }

    /// An element comparable to every other element, if any. Its presence
    /// makes the order complex a cone, hence contractible.
    pub fn cone_point(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&i| self.up[i].count() + self.down[i].count() == n + 1)
    }

    /// Induced subposet on `elements` (in the given order).
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let labels = elements.iter().map(|&i| self.labels[i].clone()).collect();
        let n = elements.len();
        let mut up = vec![BitRow::new(n); n];
        for (a, &i) in elements.iter().enumerate() {
            for (b, &j) in elements.iter().enumerate() {
                if self.leq(i, j) {
                    up[a].set(b);
                }
            }
        }
        Self::from_up_rows(labels, up)
    }

    /// `P^op`, same elements with the order reversed.
    pub fn opposite(&self) -> FinitePoset {
        FinitePoset { labels: self.labels.clone(), up: self.down.clone(), down: self.up.clone() }
    }

    /// Product order: `(p, q) <= (p', q')` iff `p <= p'` and `q <= q'`.
    /// Element `(i, j)` sits at index `i * other.len() + j`.
    pub fn product(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let (n, m) = (self.len(), other.len());
        if n * m > MAX_POSET_SIZE {
            return Err(Error::InvalidPoset(format!("product of size {} exceeds limit", n * m)));
        }
        let mut labels = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                labels.push(format!("({},{})", self.labels[i], other.labels[j]));
            }
        }
        let mut up = vec![BitRow::new(n * m); n * m];
        for i in 0..n {
            for j in 0..m {
                for i2 in self.up[i].iter() {
                    for j2 in other.up[j].iter() {
                        up[i * m + j].set(i2 * m + j2);
                    }
                }
            }
        }
        Ok(Self::from_up_rows(labels, up))
    }

    /// `P_{<= x}`.
    pub fn down_set(&self, x: usize) -> Result<FinitePoset> {
        self.check(x)?;
        Ok(self.induced(&self.below(x).collect::<Vec<_>>()))
    }

    /// `P_{>= x}`.
    pub fn up_set(&self, x: usize) -> Result<FinitePoset> {
        self.check(x)?;
        Ok(self.induced(&self.above(x).collect::<Vec<_>>()))
    }

    /// Order complex: vertices are the elements, simplices the chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        let order = self.linear_extension();
        let mut rank_of = vec![0usize; self.len()];
        for (r, &i) in order.iter().enumerate() {
            rank_of[i] = r;
        }
        // successors in linear-extension order so each chain is generated once
        let succ: Vec<Vec<u32>> = (0..self.len())
            .map(|i| {
                let mut s: Vec<u32> = self.up[i].iter().filter(|&j| j != i).map(|j| j as u32).collect();
                s.sort_by_key(|&j| rank_of[j as usize]);
                s
            })
            .collect();
        let mut faces: Vec<Vec<u32>> = Vec::new();
        let mut chain: Vec<u32> = Vec::new();
        fn extend(p: &FinitePoset, succ: &[Vec<u32>], chain: &mut Vec<u32>, faces: &mut Vec<Vec<u32>>) {
            let d = chain.len() - 1;
            if faces.len() <= d {
                faces.resize_with(d + 1, Vec::new);
            }
            let mut sorted = chain.clone();
            sorted.sort_unstable();
            faces[d].extend_from_slice(&sorted);
            let last = *chain.last().expect("non-empty chain") as usize;
            for &next in &succ[last] {
                // all earlier chain members are below `last`, hence below `next`
                debug_assert!(p.leq(last, next as usize));
                chain.push(next);
                extend(p, succ, chain, faces);
                chain.pop();
            }
        }
        for i in 0..self.len() {
            chain.push(i as u32);
            extend(self, &succ, &mut chain, &mut faces);
            chain.pop();
        }
        SimplicialComplex::from_closed_faces(self.labels.clone(), faces)
    }

    /// True iff `map` (indices of `self` into `other`) is an order
    /// isomorphism.
    pub fn is_isomorphism(&self, other: &FinitePoset, map: &[usize]) -> bool {
        if self.len() != other.len() || map.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; other.len()];
        for &m in map {
            if m >= other.len() || std::mem::replace(&mut seen[m], true) {
                return false;
            }
        }
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq(i, j) == other.leq(map[i], map[j])))
    }

    pub fn to_json_value(&self) -> PosetJson {
        PosetJson { elements: self.labels.clone(), covers: self.covers().into_iter().map(|(i, j)| [i, j]).collect() }
    }

    /// `{"elements":[label], "covers":[[i,j]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PosetJson = serde_json::from_str(text)?;
        let covers: Vec<(usize, usize)> = raw.covers.iter().map(|c| (c[0], c[1])).collect();
        Self::from_covers(raw.elements, &covers)
    }

    /// Hasse diagram in Graphviz syntax, larger elements drawn on top.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph P {\n  rankdir=BT;\n");
        for (i, l) in self.labels.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", l.replace('"', "\\\"")));
        }
        for (i, j) in self.covers() {
            out.push_str(&format!("  n{i} -> n{j};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

/// An order-preserving map between two finite posets.
#[derive(Clone, Debug)]
pub struct PosetMap<'a> {
    source: &'a FinitePoset,
    target: &'a FinitePoset,
    assignment: Vec<usize>,
}

/// Comparison of an endomap with the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Monotonicity {
    /// `f(x) <= x` for all `x`.
    pub decreasing: bool,
    /// `f(x) >= x` for all `x`.
    pub increasing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Decreasing,
    Increasing,
}

impl Monotonicity {
    pub fn is_monotone(&self) -> bool {
        self.decreasing || self.increasing
    }

    pub fn direction(&self) -> Option<Direction> {
        if self.decreasing {
            Some(Direction::Decreasing)
        } else if self.increasing {
            Some(Direction::Increasing)
        } else {
            None
        }
    }
}

impl<'a> PosetMap<'a> {
    /// Validates that `assignment` is total and order-preserving; the error
    /// carries a witness pair.
    pub fn new(source: &'a FinitePoset, target: &'a FinitePoset, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidPoset(format!(
                "map defined on {} of {} elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        for i in 0..source.len() {
            for j in source.above(i) {
                if !target.leq(assignment[i], assignment[j]) {
                    return Err(Error::NotOrderPreserving(source.label(i).to_string(), source.label(j).to_string()));
                }
            }
        }
        Ok(PosetMap { source, target, assignment })
    }

    pub fn identity(p: &'a FinitePoset) -> Self {
        PosetMap { source: p, target: p, assignment: (0..p.len()).collect() }
    }

    pub fn source(&self) -> &'a FinitePoset {
        self.source
    }

    pub fn target(&self) -> &'a FinitePoset {
        self.target
    }

    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Source indices of `f^{-1}(Q_{<= x})`.
    pub fn fiber_down_indices(&self, x: usize) -> Result<Vec<usize>> {
        self.target.check(x)?;
        Ok((0..self.source.len()).filter(|&s| self.target.leq(self.assignment[s], x)).collect())
    }

    /// Source indices of `f^{-1}(Q_{>= x})`.
    pub fn fiber_up_indices(&self, x: usize) -> Result<Vec<usize>> {
        self.target.check(x)?;
        Ok((0..self.source.len()).filter(|&s| self.target.leq(x, self.assignment[s])).collect())
    }

    /// The fibre `f^{-1}(Q_{<= x})` as an induced subposet of the source.
    pub fn fiber_down(&self, x: usize) -> Result<FinitePoset> {
        Ok(self.source.induced(&self.fiber_down_indices(x)?))
    }

    /// The fibre `f^{-1}(Q_{>= x})`.
    pub fn fiber_up(&self, x: usize) -> Result<FinitePoset> {
        Ok(self.source.induced(&self.fiber_up_indices(x)?))
    }

    fn is_endomorphic(&self) -> bool {
        std::ptr::eq(self.source, self.target) || self.source == self.target
    }

    /// Compares an endomap with the identity.
    pub fn monotonicity(&self) -> Result<Monotonicity> {
        if !self.is_endomorphic() {
            return Err(Error::Precondition("monotonicity needs an endomap".into()));
        }
        let p = self.source;
        Ok(Monotonicity {
            decreasing: (0..p.len()).all(|x| p.leq(self.assignment[x], x)),
            increasing: (0..p.len()).all(|x| p.leq(x, self.assignment[x])),
        })
    }
}

/// Certificate that `|P|` deformation retracts onto the image of an
/// idempotent, monotone, order-preserving endomap.
#[derive(Clone, Debug)]
pub struct ClosureRetraction {
    pub image: FinitePoset,
    /// Indices into the source poset of the image elements, ascending.
    pub image_indices: Vec<usize>,
    pub direction: Direction,
}

/// Checks the closure-retraction hypotheses on `c` and returns its image.
/// Failures name a witness element.
pub fn closure_retraction(p: &FinitePoset, c: &PosetMap<'_>) -> Result<ClosureRetraction> {
    if !(std::ptr::eq(c.source(), p) || c.source() == p) || !c.is_endomorphic() {
        return Err(Error::RetractionRejected("map is not an endomap of the poset".into()));
    }
    for x in 0..p.len() {
        let y = c.apply(x);
        if c.apply(y) != y {
            return Err(Error::RetractionRejected(format!("not idempotent at {}", p.label(x))));
        }
    }
    let mono = c.monotonicity()?;
    let direction = mono.direction().ok_or_else(|| {
        let witness = (0..p.len())
            .find(|&x| !p.comparable(x, c.apply(x)))
            .or_else(|| (0..p.len()).find(|&x| !p.leq(c.apply(x), x)))
            .unwrap_or(0);
        Error::RetractionRejected(format!("not monotone; witness {}", p.label(witness)))
    })?;
    let mut image_indices: Vec<usize> = c.assignment().to_vec();
    image_indices.sort_unstable();
    image_indices.dedup();
    Ok(ClosureRetraction { image: p.induced(&image_indices), image_indices, direction })
}

/// Groups elements of a poset by label, e.g. for lookups from JSON input.
pub fn label_index(p: &FinitePoset) -> BTreeMap<&str, usize> {
    p.labels().iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()
}

/// Boolean lattice on `n` atoms without its top and bottom, elements
/// labelled by their atom sets (e.g. `{0,2}`).
pub fn proper_boolean_lattice(n: usize) -> Result<FinitePoset> {
    if n > 14 {
        return Err(Error::InvalidPoset(format!("boolean lattice on {n} atoms is too large")));
    }
    let full = (1u32 << n) - 1;
    let mut sets: Vec<u32> = (1..full).collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let labels = sets
        .iter()
        .map(|&s| {
            let items: Vec<String> = (0..n).filter(|i| s & (1 << i) != 0).map(|i| i.to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    let mut up = vec![BitRow::new(sets.len()); sets.len()];
    for (a, &s) in sets.iter().enumerate() {
        for (b, &t) in sets.iter().enumerate() {
            if s & !t == 0 {
                up[a].set(b);
            }
        }
    }
    Ok(FinitePoset::from_up_rows(labels, up))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_relation(names(n), |i, j| i <= j).unwrap()
    }

    fn antichain(n: usize) -> FinitePoset {
        FinitePoset::from_relation(names(n), |i, j| i == j).unwrap()
    }

    #[test]
    fn rejects_non_orders() {
        assert!(FinitePoset::from_relation(names(2), |_, _| true).is_err());
        assert!(FinitePoset::from_relation(names(2), |i, j| i < j).is_err());
        // 0<=1, 1<=2 but not 0<=2
        let bad = |i: usize, j: usize| i == j || (i, j) == (0, 1) || (i, j) == (1, 2);
        assert!(FinitePoset::from_relation(names(3), bad).is_err());
        assert!(FinitePoset::from_covers(names(2), &[(0, 1), (1, 0)]).is_err());
    }

    #[test]
    fn covers_and_closure_agree() {
        let p = FinitePoset::from_covers(names(4), &[(0, 1), (1, 2), (0, 3)]).unwrap();
        assert!(p.leq(0, 2));
        assert!(!p.leq(3, 2));
        assert_eq!(p.covers(), vec![(0, 1), (0, 3), (1, 2)]);
        assert_eq!(FinitePoset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn opposite_of_chain_is_reversed_chain() {
        let c = chain(3);
        let op = c.opposite();
        assert!(op.leq(2, 0));
        let rev: Vec<usize> = (0..3).rev().collect();
        assert!(c.is_isomorphism(&op, &rev));
    }

    #[test]
    fn down_set_of_top_is_everything() {
        let b = proper_boolean_lattice(3).unwrap();
        assert_eq!(b.len(), 6);
        let top_free = b.maximal_elements();
        assert_eq!(top_free.len(), 3);
        let with_top = FinitePoset::from_relation(names(4), |i, j| i == j || j == 3).unwrap();
        assert_eq!(with_top.down_set(3).unwrap().len(), 4);
        assert!(with_top.down_set(9).is_err());
        assert_eq!(with_top.up_set(0).unwrap().len(), 2);
    }

    #[test]
    fn fibers_of_identity_and_constant_maps() {
        let p = FinitePoset::from_covers(names(4), &[(0, 2), (1, 2), (2, 3)]).unwrap();
        let id = PosetMap::identity(&p);
        assert_eq!(id.fiber_down(2).unwrap(), p.down_set(2).unwrap());
        let constant = PosetMap::new(&p, &p, vec![2; 4]).unwrap();
        assert_eq!(constant.fiber_down(2).unwrap(), p);
        assert_eq!(constant.fiber_up(3).unwrap().len(), 0);
        assert!(constant.fiber_down(4).is_err());
    }

    #[test]
    fn monotonicity_classification() {
        let p = chain(3);
        let id = PosetMap::identity(&p);
        let m = id.monotonicity().unwrap();
        assert!(m.decreasing && m.increasing);

        let a = antichain(2);
        let swap = PosetMap::new(&a, &a, vec![1, 0]).unwrap();
        let m = swap.monotonicity().unwrap();
        assert!(!m.decreasing && !m.increasing);
        assert!(closure_retraction(&a, &swap).is_err());
    }

    #[test]
    fn order_preservation_is_enforced() {
        let c = chain(2);
        assert!(matches!(PosetMap::new(&c, &c, vec![1, 0]), Err(Error::NotOrderPreserving(_, _))));
    }

    #[test]
    fn closure_retraction_of_identity_is_whole_poset() {
        let p = chain(3);
        let r = closure_retraction(&p, &PosetMap::identity(&p)).unwrap();
        assert_eq!(r.image, p);
        // retract onto the bottom: decreasing, idempotent
        let bottom = PosetMap::new(&p, &p, vec![0, 0, 0]).unwrap();
        let r = closure_retraction(&p, &bottom).unwrap();
        assert_eq!(r.image_indices, vec![0]);
        assert_eq!(r.direction, Direction::Decreasing);
        // not idempotent
        let shift = PosetMap::new(&p, &p, vec![0, 0, 1]).unwrap();
        assert!(closure_retraction(&p, &shift).is_err());
    }

    #[test]
    fn cone_points() {
        let with_top = FinitePoset::from_relation(names(3), |i, j| i == j || j == 2).unwrap();
        assert_eq!(with_top.cone_point(), Some(2));
        assert_eq!(antichain(3).cone_point(), None);
    }

    #[test]
    fn product_and_dot() {
        let c = chain(2);
        let pr = c.product(&c).unwrap();
        assert_eq!(pr.len(), 4);
        assert!(pr.leq(0, 3));
        assert!(!pr.comparable(1, 2));
        let dot = pr.to_dot();
        assert_eq!(dot.matches("->").count(), 4);
    }
}
