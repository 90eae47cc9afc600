//! The six subgraph posets of a graph and the verifiers that run on them.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{
    alexander_duality_check, boundary_matrix, pi1_triviality, reduced_homology, smith_normal_form, DualityOutcome,
    HomologyResult, Pi1Status, SimplicialComplex, SparseIntMatrix,
};
use crate::multigraph::{EdgeSet, Multigraph, VertexId};
use crate::poset::{closure_retraction, Direction, FinitePoset, PosetMap};
use crate::report::Verification;

/// Largest edge count for which all subsets are scanned.
pub const MAX_SCAN_EDGES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GraphPosetKind {
    Sub,
    For,
    X,
    C,
    CX,
    CC,
}

impl GraphPosetKind {
    pub const ALL: [GraphPosetKind; 6] = [Self::Sub, Self::For, Self::X, Self::C, Self::CX, Self::CC];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Sub => "sub",
            Self::For => "for",
            Self::X => "x",
            Self::C => "c",
            Self::CX => "cx",
            Self::CC => "cc",
        }
    }

    /// Membership of a proper, non-empty edge set.
    pub fn admits(self, g: &Multigraph, s: EdgeSet) -> bool {
        match self {
            Self::Sub => true,
            Self::For => g.is_forest(s),
            Self::X => !g.is_forest(s),
            Self::C => g.is_core(s),
            Self::CX => !g.is_forest(s) && g.is_subset_connected(s),
            Self::CC => g.is_core(s) && g.is_subset_connected(s),
        }
    }
}

impl fmt::Display for GraphPosetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GraphPosetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown poset kind '{s}' (expected sub|for|x|c|cx|cc)")))
    }
}

/// A subgraph poset together with the edge sets behind its elements.
/// Elements are sorted by size, then by bit pattern.
#[derive(Clone, Debug)]
pub struct GraphPoset {
    pub kind: GraphPosetKind,
    pub elements: Vec<EdgeSet>,
    pub poset: FinitePoset,
    index: HashMap<EdgeSet, usize>,
}

impl GraphPoset {
    pub fn index_of(&self, s: EdgeSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn order_complex(&self) -> SimplicialComplex {
        self.poset.order_complex()
    }

    /// Indices of the elements satisfying `pred`.
    pub fn select(&self, pred: impl Fn(EdgeSet) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred(self.elements[i])).collect()
    }
}

/// Inclusion poset on the given edge sets (sorted and deduplicated here).
pub fn inclusion_poset(kind: GraphPosetKind, mut elements: Vec<EdgeSet>) -> Result<GraphPoset> {
    elements.sort_by_key(|s| (s.len(), s.bits()));
    elements.dedup();
    let labels = elements.iter().map(|s| s.to_string()).collect();
    let poset = FinitePoset::from_relation(labels, |i, j| elements[i].is_subset(elements[j]))?;
    let index = elements.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    Ok(GraphPoset { kind, elements, poset, index })
}

/// Proper non-empty edge subsets of `g` of the given kind, ordered by
/// inclusion. Rank-one graphs are accepted; the result may be empty.
pub fn build_poset(g: &Multigraph, kind: GraphPosetKind) -> Result<GraphPoset> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.rank() == 0 {
        return Err(Error::Precondition("graph has rank 0".into()));
    }
    if g.edge_count() > MAX_SCAN_EDGES {
        return Err(Error::Precondition(format!("{} edges is too many to scan", g.edge_count())));
    }
    let all = g.all_edges();
    let elements = all.subsets().filter(|&s| !s.is_empty() && s != all && kind.admits(g, s)).collect();
    inclusion_poset(kind, elements)
}

/// Evidence about `pi_1` of `Delta(p)`: a cone point settles it, otherwise
/// the presentation checker runs. Disconnected complexes give `None`.
pub fn pi1_evidence(p: &FinitePoset, k: &SimplicialComplex) -> Option<Pi1Status> {
    if p.cone_point().is_some() {
        return Some(Pi1Status::Trivial);
    }
    pi1_triviality(k).ok().map(|r| r.status)
}

fn spine_precondition(g: &Multigraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.rank() < 2 {
        return Err(Error::Precondition(format!("rank {} < 2", g.rank())));
    }
    if g.min_valence() < 3 {
        return Err(Error::Precondition(format!("minimum valence {} < 3", g.min_valence())));
    }
    Ok(())
}

/// Records `pi_1` for a complex claimed to be a wedge of `dim`-spheres or
/// contractible. Simple connectivity is only demanded where the claim
/// implies it: contractible targets and spheres of dimension two or more.
fn attest_pi1(v: &mut Verification, p: &FinitePoset, k: &SimplicialComplex, contractible: bool, dim: isize) {
    let pi1 = if dim >= 1 || contractible { pi1_evidence(p, k) } else { None };
    if contractible || dim >= 2 {
        v.need_simply_connected(pi1);
    } else {
        v.pi1 = pi1;
    }
}

/// `X(G)` is contractible iff `G` has a separating edge, and otherwise has
/// the homology of a non-trivial wedge of `(n-2)`-spheres.
pub fn verify_x_sphericity(g: &Multigraph) -> Result<Verification> {
    spine_precondition(g)?;
    let x = build_poset(g, GraphPosetKind::X)?;
    let k = x.order_complex();
    let h = reduced_homology(&k);
    let n = g.rank() as isize;
    let separating = g.has_separating_edge();
    let mut v = Verification::new("x-sphericity");
    v.set_homology(&h);
    v.set("elements", x.len());
    v.set("f_vector", k.f_vector());
    v.set("separating_edge", separating);
    if separating {
        v.require(h.is_trivial(), || format!("separating edge but homology is {h}"));
    } else {
        v.require(h.concentrated_in(n - 2) && h.betti(n - 2) >= 1, || {
            format!("expected a non-trivial free group in degree {} only, got {h}", n - 2)
        });
    }
    attest_pi1(&mut v, &x.poset, &k, separating, n - 2);
    Ok(v)
}

/// `cX(G)` has the homology of a wedge of `(n-2)`-spheres and retracts onto
/// `cC(G)`.
pub fn verify_cx_sphericity(g: &Multigraph) -> Result<Verification> {
    spine_precondition(g)?;
    let cx = build_poset(g, GraphPosetKind::CX)?;
    let k = cx.order_complex();
    let h = reduced_homology(&k);
    let n = g.rank() as isize;
    let mut v = Verification::new("cx-sphericity");
    v.set_homology(&h);
    v.set("elements", cx.len());
    v.require(h.concentrated_in(n - 2), || format!("expected a free group in degree {} only, got {h}", n - 2));
    let cc = build_poset(g, GraphPosetKind::CC)?;
    check_core_retraction(g, &cx, &cc, &h, &mut v, "cx->cc");
    attest_pi1(&mut v, &cx.poset, &k, false, n - 2);
    Ok(v)
}

/// Checks that `H -> core(H)` is a decreasing closure retraction of `from`
/// with image exactly `onto`, and that both have the same homology.
fn check_core_retraction(
    g: &Multigraph,
    from: &GraphPoset,
    onto: &GraphPoset,
    from_homology: &HomologyResult,
    v: &mut Verification,
    tag: &str,
) {
    let mut assignment = Vec::with_capacity(from.len());
    for &s in &from.elements {
        let c = g.core(s);
        match from.index_of(c) {
            Some(i) => assignment.push(i),
            None => {
                v.require(false, || format!("{tag}: core {c} of {s} is not an element"));
                return;
            }
        }
    }
    let map = match PosetMap::new(&from.poset, &from.poset, assignment) {
        Ok(m) => m,
        Err(e) => {
            v.require(false, || format!("{tag}: {e}"));
            return;
        }
    };
    match closure_retraction(&from.poset, &map) {
        Ok(r) => {
            v.require(r.direction == Direction::Decreasing || from.is_empty(), || {
                format!("{tag}: retraction is increasing, expected decreasing")
            });
            let image: Vec<EdgeSet> = r.image_indices.iter().map(|&i| from.elements[i]).collect();
            v.require(image == onto.elements, || {
                let witness = onto
                    .elements
                    .iter()
                    .find(|s| !image.contains(s))
                    .or_else(|| image.iter().find(|s| !onto.elements.contains(s)));
                format!("{tag}: image differs from the core poset (witness {witness:?})")
            });
        }
        Err(e) => {
            v.require(false, || format!("{tag}: {e}"));
            return;
        }
    }
    let h_onto = reduced_homology(&onto.order_complex());
    v.require(&h_onto == from_homology, || {
        format!("{tag}: homology {from_homology} differs from {h_onto} on the image")
    });
}

/// Core retractions `X -> C` and `cX -> cC`.
pub fn verify_core_retractions(g: &Multigraph) -> Result<Verification> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.rank() < 1 {
        return Err(Error::Precondition("graph has rank 0".into()));
    }
    let mut v = Verification::new("core-retraction");
    for (from_kind, onto_kind, tag) in
        [(GraphPosetKind::X, GraphPosetKind::C, "x->c"), (GraphPosetKind::CX, GraphPosetKind::CC, "cx->cc")]
    {
        let from = build_poset(g, from_kind)?;
        let onto = build_poset(g, onto_kind)?;
        let h = reduced_homology(&from.order_complex());
        if from_kind == GraphPosetKind::X {
            v.set_homology(&h);
        }
        v.set(
            &format!("{tag}:moved"),
            (0..from.len()).filter(|&i| g.core(from.elements[i]) != from.elements[i]).count(),
        );
        check_core_retraction(g, &from, &onto, &h, &mut v, tag);
    }
    Ok(v)
}

/// The maps `phi: cX(G) -> cX(G^v)` and `psi: cX(G^v) -> cX(G)` of the
/// valence-two homotopy satisfy `psi(phi(H)) <= H` and `phi(psi(K)) = K`.
pub fn verify_valence_two(g: &Multigraph, vertex: VertexId) -> Result<Verification> {
    let (gv, (e1, e2, ev)) = g.smooth_valence_two(vertex)?;
    let cx = build_poset(g, GraphPosetKind::CX)?;
    let cxv = build_poset(&gv, GraphPosetKind::CX)?;
    let phi = |h: EdgeSet| match (h.contains(e1), h.contains(e2)) {
        (true, false) => h.without(e1),
        (false, true) => h.without(e2),
        (true, true) => h.without(e1).without(e2).with(ev),
        (false, false) => h,
    };
    let psi = |k: EdgeSet| {
        if k.contains(ev) {
            k.without(ev).with(e1).with(e2)
        } else {
            k
        }
    };
    let mut v = Verification::new("valence-two");
    v.set("vertex", vertex);
    v.set("smoothed", gv.to_json_value());
    let lookup = |p: &GraphPoset, s: EdgeSet, v: &mut Verification, what: &str| {
        let i = p.index_of(s);
        v.require(i.is_some(), || format!("{what}({s}) is not an element"));
        i
    };
    let phi_a: Vec<Option<usize>> = cx.elements.iter().map(|&h| lookup(&cxv, phi(h), &mut v, "phi")).collect();
    let psi_a: Vec<Option<usize>> = cxv.elements.iter().map(|&k| lookup(&cx, psi(k), &mut v, "psi")).collect();
    if v.is_failure() {
        return Ok(v);
    }
    let phi_a: Vec<usize> = phi_a.into_iter().flatten().collect();
    let psi_a: Vec<usize> = psi_a.into_iter().flatten().collect();
    for (name, r) in [
        ("phi", PosetMap::new(&cx.poset, &cxv.poset, phi_a).map(|_| ())),
        ("psi", PosetMap::new(&cxv.poset, &cx.poset, psi_a).map(|_| ())),
    ] {
        if let Err(e) = r {
            v.require(false, || format!("{name}: {e}"));
        }
    }
    for &h in &cx.elements {
        v.require(psi(phi(h)).is_subset(h), || format!("psi(phi({h})) = {} is not contained in it", psi(phi(h))));
    }
    for &k in &cxv.elements {
        v.require(phi(psi(k)) == k, || format!("phi(psi({k})) = {} differs", phi(psi(k))));
    }
    let h = reduced_homology(&cx.order_complex());
    let hv = reduced_homology(&cxv.order_complex());
    v.set_homology(&h);
    v.require(h == hv, || format!("homology {h} differs from {hv} after smoothing"));
    Ok(v)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == used.len() {
            let inversions = (0..cur.len())
                .flat_map(|i| (i + 1..cur.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| cur[i] > cur[j])
                .count();
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Sign of the permutation sorting `v` (entries distinct).
fn sorting_sign(v: &[u32]) -> i64 {
    let inv = (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] > v[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Fundamental cycle of the sphere `{F u K : K a proper non-empty subset of
/// the edges outside F}` inside `Delta(X(G))`, as a chain in degree
/// `petals - 2`.
fn forest_cycle(x: &GraphPoset, k: &SimplicialComplex, forest: EdgeSet, petals: &[u32]) -> Result<Vec<(u32, i64)>> {
    let n = petals.len();
    let mut coeffs: HashMap<usize, i64> = HashMap::new();
    for (perm, sign) in permutations(n) {
        let mut cur = forest;
        let mut chain = Vec::with_capacity(n - 1);
        for &p in &perm[..n - 1] {
            cur = cur.with(petals[p]);
            let idx = x.index_of(cur).ok_or_else(|| Error::Precondition(format!("{cur} is not in X(G)")))?;
            chain.push(idx as u32);
        }
        let orient = sorting_sign(&chain);
        chain.sort_unstable();
        let col = k.index_of(&chain).expect("chains are simplices");
        *coeffs.entry(col).or_default() += sign * orient;
    }
    let mut row: Vec<(u32, i64)> = coeffs.into_iter().filter(|&(_, c)| c != 0).map(|(i, c)| (i as u32, c)).collect();
    row.sort_unstable();
    Ok(row)
}

/// The dual cycles of the maximal forests span `H_{n-2}(X(G))`.
pub fn forest_generator_count(g: &Multigraph) -> Result<Verification> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.rank() < 2 {
        return Err(Error::Precondition(format!("rank {} < 2", g.rank())));
    }
    if g.has_separating_edge() {
        return Err(Error::Precondition("graph has a separating edge".into()));
    }
    let n = g.rank();
    let d = n - 2;
    let x = build_poset(g, GraphPosetKind::X)?;
    let k = x.order_complex();
    let h = reduced_homology(&k);
    let forests = g.maximal_forests();
    let mut v = Verification::new("forest-generators");
    v.set_homology(&h);
    v.set("maximal_forests", forests.len());

    let boundary_d = boundary_matrix(&k, d);
    let mut cycles = Vec::with_capacity(forests.len());
    for &f in &forests {
        let petals: Vec<u32> = g.all_edges().difference(f).iter().collect();
        let z = forest_cycle(&x, &k, f, &petals)?;
        // the chain must be a cycle
        let mut image: HashMap<u32, i64> = HashMap::new();
        for &(s, c) in &z {
            for &(t, b) in boundary_matrix_row(&boundary_d, s) {
                *image.entry(t).or_default() += c * b;
            }
        }
        v.require(image.values().all(|&c| c == 0), || format!("dual chain of forest {f} is not a cycle"));
        cycles.push(z);
    }

    let b = boundary_matrix(&k, d + 1);
    let rank_b = smith_normal_form(&b).rank;
    let mut combined = SparseIntMatrix::with_cols(k.count(d));
    for i in 0..b.rows() {
        combined.push_row(b.row(i).iter().copied());
    }
    for z in &cycles {
        combined.push_row(z.iter().copied());
    }
    let snf = smith_normal_form(&combined);
    let span = snf.rank - rank_b;
    let betti = h.betti(d as isize);
    v.set("span_rank", span);
    v.require(span == betti, || format!("cycles span rank {span}, but b~_{d} = {betti}"));
    let integral = span == betti && snf.torsion().is_empty();
    v.set("generates_integrally", integral);
    v.require(integral, || "cycles span a finite-index sublattice only".to_owned());
    Ok(v)
}

fn boundary_matrix_row(m: &SparseIntMatrix, i: u32) -> &[(u32, i64)] {
    m.row(i as usize)
}

/// `Delta(Sub(G))` has the homology of `S^{|E|-2}`.
pub fn verify_sub_sphere(g: &Multigraph) -> Result<Verification> {
    let sub = build_poset(g, GraphPosetKind::Sub)?;
    let h = reduced_homology(&sub.order_complex());
    let dim = g.edge_count() as isize - 2;
    let mut v = Verification::new("sub-sphere");
    v.set_homology(&h);
    v.set("sphere_dim", dim);
    v.require(h.is_sphere(dim), || format!("expected the homology of S^{dim}, got {h}"));
    Ok(v)
}

/// `For(G)` is acyclic iff `G` has a separating edge; otherwise its homology
/// is free and sits in degree `|V| - 2`.
pub fn verify_for_homology(g: &Multigraph) -> Result<Verification> {
    let f = build_poset(g, GraphPosetKind::For)?;
    let h = reduced_homology(&f.order_complex());
    let dim = g.vertex_count() as isize - 2;
    let mut v = Verification::new("for-homology");
    v.set_homology(&h);
    if g.has_separating_edge() {
        v.require(h.is_trivial(), || format!("separating edge but homology is {h}"));
    } else {
        v.require(h.concentrated_in(dim), || format!("expected free homology in degree {dim} only, got {h}"));
    }
    Ok(v)
}

/// Alexander duality between `For(G)` and `X(G)` inside the sphere
/// `Delta(Sub(G))`, degreewise with torsion.
pub fn verify_duality(g: &Multigraph) -> Result<Verification> {
    let sub = build_poset(g, GraphPosetKind::Sub)?;
    let q = sub.select(|s| g.is_forest(s));
    let n_e = g.edge_count() as isize;
    let report = alexander_duality_check(&sub.poset, &q, n_e - 2)?;
    let mut v = Verification::new("duality");
    v.set_homology(&report.subposet);
    v.set("outcome", report.outcome);
    v.set("sphere_dim", report.sphere_dim);
    v.set("complement_cohomology", &report.complement_cohomology);
    v.require(report.outcome == DualityOutcome::Pass, || {
        format!("duality {:?} in degrees {:?}", report.outcome, report.mismatched_degrees)
    });
    if !g.has_separating_edge() && g.rank() >= 2 {
        let x = reduced_homology(&build_poset(g, GraphPosetKind::X)?.order_complex());
        let a = x.betti(g.rank() as isize - 2);
        let b = report.subposet.betti(g.vertex_count() as isize - 2);
        v.require(a == b, || format!("b~_(n-2)(X) = {a} but b~_(|V|-2)(For) = {b}"));
    }
    Ok(v)
}

/// Set-level relations between the six posets.
pub fn verify_poset_relations(g: &Multigraph) -> Result<Verification> {
    let p: HashMap<GraphPosetKind, GraphPoset> =
        GraphPosetKind::ALL.into_iter().map(|k| build_poset(g, k).map(|p| (k, p))).collect::<Result<_>>()?;
    let set = |k: GraphPosetKind| -> std::collections::BTreeSet<EdgeSet> { p[&k].elements.iter().copied().collect() };
    let (sub, forest, x, c, cx, cc) = (
        set(GraphPosetKind::Sub),
        set(GraphPosetKind::For),
        set(GraphPosetKind::X),
        set(GraphPosetKind::C),
        set(GraphPosetKind::CX),
        set(GraphPosetKind::CC),
    );
    let mut v = Verification::new("poset-relations");
    v.set(
        "sizes",
        GraphPosetKind::ALL.iter().map(|k| (k.as_str(), p[k].len())).collect::<std::collections::BTreeMap<_, _>>(),
    );
    v.require(x == sub.difference(&forest).copied().collect(), || "X != Sub \\ For".into());
    v.require(c.is_subset(&x) && x.is_subset(&sub), || "C <= X <= Sub fails".into());
    v.require(cx.is_subset(&x), || "cX is not contained in X".into());
    let connected_c: std::collections::BTreeSet<EdgeSet> =
        c.iter().copied().filter(|&s| g.is_subset_connected(s)).collect();
    v.require(cc == connected_c, || "cC differs from the connected elements of C".into());
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(g: &Multigraph) -> Vec<usize> {
        GraphPosetKind::ALL.iter().map(|&k| build_poset(g, k).unwrap().len()).collect()
    }

    #[test]
    fn poset_sizes_on_rank_two() {
        // Sub, For, X, C, cX, cC
        assert_eq!(kinds(&Multigraph::theta()), vec![6, 3, 3, 3, 3, 3]);
        assert_eq!(kinds(&Multigraph::rose(2)), vec![2, 0, 2, 2, 2, 2]);
        let c = build_poset(&Multigraph::dumbbell(), GraphPosetKind::C).unwrap();
        assert_eq!(c.elements.iter().map(|s| s.to_string()).collect::<Vec<_>>(), ["{0}", "{2}", "{0,2}"]);
        assert_eq!(c.poset.cone_point(), Some(2));
    }

    #[test]
    fn rejects_bad_input() {
        let two = Multigraph::from_edge_list(&[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(build_poset(&two, GraphPosetKind::Sub), Err(Error::Disconnected)));
        let tree = Multigraph::from_edge_list(&[(0, 1)]).unwrap();
        assert!(build_poset(&tree, GraphPosetKind::Sub).is_err());
        assert!(verify_x_sphericity(&Multigraph::rose(1)).is_err());
        assert_eq!("cx".parse::<GraphPosetKind>().unwrap(), GraphPosetKind::CX);
        assert!("y".parse::<GraphPosetKind>().is_err());
    }

    #[test]
    fn x_sphericity_rank_two() {
        let v = verify_x_sphericity(&Multigraph::theta()).unwrap();
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.betti, vec![2]);
        let v = verify_x_sphericity(&Multigraph::dumbbell()).unwrap();
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.betti, vec![0, 0]);
        let v = verify_x_sphericity(&Multigraph::rose(3)).unwrap();
        assert_eq!(v.betti, vec![0, 1]);
        assert_eq!(v.pi1, Some(Pi1Status::Nontrivial));
    }

    #[test]
    fn cx_sphericity_rank_two() {
        assert_eq!(verify_cx_sphericity(&Multigraph::theta()).unwrap().betti, vec![2]);
        assert_eq!(verify_cx_sphericity(&Multigraph::rose(2)).unwrap().betti, vec![1]);
        // two loops, each with the bar attached: two segments
        let v = verify_cx_sphericity(&Multigraph::dumbbell()).unwrap();
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.data["elements"], 4);
        assert_eq!(v.betti, vec![1, 0]);
    }

    #[test]
    fn retractions() {
        for g in [Multigraph::theta(), Multigraph::dumbbell(), Multigraph::rose(3)] {
            let v = verify_core_retractions(&g).unwrap();
            assert!(v.passed(), "{v:?}");
        }
        let v = verify_core_retractions(&Multigraph::dumbbell()).unwrap();
        assert_eq!(v.data["x->c:moved"], 2);
    }

    #[test]
    fn valence_two_on_subdivided_theta() {
        // theta with edge 2 subdivided by vertex 2
        let g = Multigraph::from_edge_list(&[(0, 1), (0, 1), (0, 2), (2, 1)]).unwrap();
        let v = verify_valence_two(&g, 2).unwrap();
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.betti, vec![2, 0]);
        assert!(verify_valence_two(&g, 0).is_err());
    }

    #[test]
    fn forest_generators_small() {
        let v = forest_generator_count(&Multigraph::theta()).unwrap();
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.data["maximal_forests"], 3);
        let v = forest_generator_count(&Multigraph::rose(3)).unwrap();
        assert!(v.passed(), "{v:?}");
        assert_eq!(v.data["maximal_forests"], 1);
        assert!(forest_generator_count(&Multigraph::dumbbell()).is_err());
    }

    #[test]
    fn spheres_forests_duality() {
        for g in [Multigraph::theta(), Multigraph::dumbbell(), Multigraph::rose(2)] {
            for v in [verify_sub_sphere(&g), verify_for_homology(&g), verify_duality(&g), verify_poset_relations(&g)] {
                let v = v.unwrap();
                assert!(v.passed(), "{v:?}");
            }
        }
        assert_eq!(verify_duality(&Multigraph::theta()).unwrap().betti, vec![2]);
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(_, s)| s).sum::<i64>(), 0);
    }
}
