//! Canonical forms and enumeration of spine graphs, and the local fibre
//! posets built from a single graph.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph_posets::{build_poset, GraphPoset, GraphPosetKind};
use crate::homology::reduced_homology;
use crate::multigraph::{EdgeSet, Multigraph, VertexId};
use crate::poset::{closure_retraction, proper_boolean_lattice, FinitePoset, PosetMap};
use crate::report::Verification;

/// Orderings tried by the canonizer before giving up.
const MAX_ORDERINGS: u64 = 5_000_000;

/// A graph in canonical form; `graph` is rebuilt from `key`, so its edge ids
/// follow the key's edge order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalGraph {
    pub key: String,
    #[serde(serialize_with = "graph_json")]
    pub graph: Multigraph,
}

fn graph_json<S: serde::Serializer>(g: &Multigraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    g.to_json_value().serialize(s)
}

impl CanonicalGraph {
    pub fn new(g: &Multigraph) -> Result<Self> {
        let key = canonical_key(g)?;
        let graph = from_canonical_key(&key)?;
        Ok(CanonicalGraph { key, graph })
    }
}

/// Isomorphism-invariant key of a multigraph: the vertex count and the
/// lexicographically least sorted edge list over all vertex orders that
/// respect a colour refinement, e.g. `2|0-1,0-1,0-1` for the theta graph.
pub fn canonical_key(g: &Multigraph) -> Result<String> {
    let verts = g.vertices();
    let n = verts.len();
    let pos: HashMap<VertexId, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = g.edges().map(|(_, a, b)| (pos[&a], pos[&b])).collect();
    let mut mult = vec![vec![0usize; n]; n];
    for &(a, b) in &edges {
        mult[a][b] += 1;
        if a != b {
            mult[b][a] += 1;
        }
    }

    // colour refinement, starting from (valence, loops)
    let mut colour: Vec<usize> = {
        let init: Vec<(usize, usize)> = (0..n)
            .map(|i| {
                let loops = mult[i][i];
                let val: usize = (0..n).filter(|&j| j != i).map(|j| mult[i][j]).sum::<usize>() + 2 * loops;
                (val, loops)
            })
            .collect();
        rank_values(&init)
    };
    loop {
        let sig: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|i| {
                let mut nb: Vec<(usize, usize)> =
                    (0..n).filter(|&j| j != i && mult[i][j] > 0).map(|j| (colour[j], mult[i][j])).collect();
                nb.sort_unstable();
                (colour[i], nb)
            })
            .collect();
        let next = rank_values(&sig);
        let classes = |c: &[usize]| c.iter().max().map_or(0, |m| m + 1);
        if classes(&next) == classes(&colour) {
            break;
        }
        colour = next;
    }

    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (v, &c) in colour.iter().enumerate() {
        classes.entry(c).or_default().push(v);
    }
    let orderings: u64 = classes
        .values()
        .map(|c| (1..=c.len() as u64).product::<u64>())
        .try_fold(1u64, |acc, f| acc.checked_mul(f))
        .unwrap_or(u64::MAX);
    if orderings > MAX_ORDERINGS {
        return Err(Error::Precondition(format!("graph too symmetric to canonize ({orderings} orderings)")));
    }

    let groups: Vec<Vec<usize>> = classes.into_values().collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    let mut label = vec![0usize; n];
    search_orders(&groups, 0, 0, &mut label, &edges, &mut best);
    let best = best.unwrap_or_default();
    let body: Vec<String> = best.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    Ok(format!("{n}|{}", body.join(",")))
}

fn rank_values<T: Ord + Clone>(vals: &[T]) -> Vec<usize> {
    let mut sorted: Vec<T> = vals.to_vec();
    sorted.sort();
    sorted.dedup();
    vals.iter().map(|v| sorted.binary_search(v).expect("present")).collect()
}

fn search_orders(
    groups: &[Vec<usize>],
    gi: usize,
    offset: usize,
    label: &mut Vec<usize>,
    edges: &[(usize, usize)],
    best: &mut Option<Vec<(usize, usize)>>,
) {
    if gi == groups.len() {
        let mut list: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (label[a].min(label[b]), label[a].max(label[b]))).collect();
        list.sort_unstable();
        if best.as_ref().is_none_or(|b| list < *b) {
            *best = Some(list);
        }
        return;
    }
    let group = &groups[gi];
    permute(group.clone(), 0, &mut |perm: &[usize]| {
        for (k, &v) in perm.iter().enumerate() {
            label[v] = offset + k;
        }
        search_orders(groups, gi + 1, offset + group.len(), label, edges, best);
    });
}

fn permute(mut items: Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(&items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items.clone(), k + 1, visit);
        items.swap(k, i);
    }
}

/// Rebuilds the graph of a canonical key; edge ids follow the key's order.
pub fn from_canonical_key(key: &str) -> Result<Multigraph> {
    let bad = || Error::Parse(format!("malformed graph key '{key}'"));
    let (n, body) = key.split_once('|').ok_or_else(bad)?;
    let n: VertexId = n.trim().parse().map_err(|_| bad())?;
    let mut edges = Vec::new();
    for (id, part) in body.split(',').filter(|p| !p.is_empty()).enumerate() {
        let (a, b) = part.split_once('-').ok_or_else(bad)?;
        let a: VertexId = a.trim().parse().map_err(|_| bad())?;
        let b: VertexId = b.trim().parse().map_err(|_| bad())?;
        edges.push((id as u32, a, b));
    }
    Multigraph::new(0..n, edges)
}

/// Resolves a graph argument: an alias (`rose2`, `rose3`, `theta`,
/// `dumbbell`), a canonical key, or a path to a JSON graph file.
pub fn resolve_graph(arg: &str) -> Result<Multigraph> {
    if let Some(n) = arg.strip_prefix("rose") {
        if let Ok(n) = n.parse::<usize>() {
            return Ok(Multigraph::rose(n));
        }
    }
    match arg {
        "theta" => return Ok(Multigraph::theta()),
        "dumbbell" => return Ok(Multigraph::dumbbell()),
        _ => {}
    }
    if arg.contains('|') {
        return from_canonical_key(arg);
    }
    let path = Path::new(arg);
    if path.exists() {
        return Multigraph::from_json(&std::fs::read_to_string(path)?);
    }
    Err(Error::Parse(format!("'{arg}' is neither a graph alias, a graph key nor a file")))
}

fn degree_sequences(v: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(v: usize, left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == v {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let slots = v - cur.len();
        for d in (3..=max.min(left)).rev() {
            if left - d >= 3 * (slots - 1) {
                cur.push(d);
                go(v, left - d, d, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(v, total, total, &mut Vec::new(), &mut out);
    out
}

/// All multiplicity matrices realizing a degree sequence, as edge lists.
fn realizations(degrees: &[usize]) -> Vec<Vec<(u32, u32)>> {
    fn fill(i: usize, j: usize, rest: &mut Vec<usize>, edges: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        let n = rest.len();
        if i == n {
            out.push(edges.clone());
            return;
        }
        if j == i {
            // loops at i, each using two units of degree
            for l in (0..=rest[i] / 2).rev() {
                rest[i] -= 2 * l;
                edges.extend(std::iter::repeat_n((i as u32, i as u32), l));
                fill(i, j + 1, rest, edges, out);
                edges.truncate(edges.len() - l);
                rest[i] += 2 * l;
            }
            return;
        }
        if j == n {
            if rest[i] == 0 {
                fill(i + 1, i + 1, rest, edges, out);
            }
            return;
        }
        let capacity: usize = rest[j + 1..].iter().sum();
        let hi = rest[i].min(rest[j]);
        for m in (0..=hi).rev() {
            if rest[i] - m > capacity {
                break;
            }
            rest[i] -= m;
            rest[j] -= m;
            edges.extend(std::iter::repeat_n((i as u32, j as u32), m));
            fill(i, j + 1, rest, edges, out);
            edges.truncate(edges.len() - m);
            rest[i] += m;
            rest[j] += m;
        }
    }
    let mut out = Vec::new();
    fill(0, 0, &mut degrees.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Connected multigraphs of the given rank with every valence at least
/// three, up to isomorphism, sorted by key.
pub fn enumerate_spine_graphs(rank: usize) -> Result<Vec<CanonicalGraph>> {
    if !(2..=4).contains(&rank) {
        return Err(Error::UnsupportedRank(rank));
    }
    let jobs: Vec<Vec<usize>> = (1..=2 * rank - 2).flat_map(|v| degree_sequences(v, 2 * (v + rank - 1))).collect();
    let found: Vec<(String, CanonicalGraph)> = jobs
        .par_iter()
        .flat_map_iter(|degrees| {
            realizations(degrees).into_iter().filter_map(|edges| {
                let g = Multigraph::from_edge_list(&edges).ok()?;
                if !g.is_connected() {
                    return None;
                }
                let c = CanonicalGraph::new(&g).ok()?;
                Some((c.key.clone(), c))
            })
        })
        .collect();
    let unique: BTreeMap<String, CanonicalGraph> = found.into_iter().collect();
    Ok(unique.into_values().collect())
}

/// Forests of `g` (the empty one included) ordered by reverse inclusion, so
/// `g` itself, the empty forest, is the top.
pub fn spine_down_set(g: &Multigraph) -> Result<(Vec<EdgeSet>, FinitePoset)> {
    let forests = g.forests();
    let labels = forests.iter().map(|f| f.to_string()).collect();
    let p = FinitePoset::from_relation(labels, |i, j| forests[j].is_subset(forests[i]))?;
    Ok((forests, p))
}

/// Every collapse in the down-set keeps the rank and minimum valence.
pub fn verify_spine_down_set(g: &Multigraph) -> Result<Verification> {
    let (forests, p) = spine_down_set(g)?;
    let mut v = Verification::new("spine-down-set");
    v.set("elements", forests.len());
    let rank = g.rank();
    for &f in &forests {
        let q = g.collapse_forest(f)?;
        v.require(q.rank() == rank, || format!("G/{f} has rank {}", q.rank()));
        v.require(q.min_valence() >= 3, || format!("G/{f} has a vertex of valence {}", q.min_valence()));
    }
    v.require(p.maximal_elements() == vec![0], || "the empty forest is not the unique top".into());
    Ok(v)
}

/// A point `(F, H)` of the local fibre: a forest `F` of `G` and a proper core
/// subgraph `H` of `G/F`, named by the edge ids it keeps from `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberElement {
    pub forest: EdgeSet,
    pub core_part: EdgeSet,
}

impl FiberElement {
    pub fn label(&self) -> String {
        format!("{}|{}", self.forest, self.core_part)
    }
}

#[derive(Clone, Debug)]
pub struct ZFiber {
    pub connected_only: bool,
    pub elements: Vec<FiberElement>,
    pub poset: FinitePoset,
}

/// Pairs `(F, H)` ordered by `(F1,H1) <= (F2,H2)` iff `F1 ⊇ F2` and
/// `F1 ∪ H1 ⊇ F2 ∪ H2`.
pub fn z_fiber(g: &Multigraph, connected_only: bool) -> Result<ZFiber> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.rank() < 2 || g.min_valence() < 3 {
        return Err(Error::Precondition("z_fiber needs rank >= 2 and minimum valence >= 3".into()));
    }
    let mut elements = Vec::new();
    for f in g.forests() {
        let q = g.collapse_forest(f)?;
        let all = q.all_edges();
        for h in all.subsets() {
            if h != all && q.is_core(h) && (!connected_only || q.is_subset_connected(h)) {
                elements.push(FiberElement { forest: f, core_part: h });
            }
        }
    }
    elements.sort_by_key(|e| (e.forest.len(), e.forest.bits(), e.core_part.len(), e.core_part.bits()));
    let labels = elements.iter().map(FiberElement::label).collect();
    let poset = FinitePoset::from_relation(labels, |i, j| {
        let (a, b) = (elements[i], elements[j]);
        b.forest.is_subset(a.forest) && b.forest.union(b.core_part).is_subset(a.forest.union(a.core_part))
    })?;
    Ok(ZFiber { connected_only, elements, poset })
}

/// Checks the fibre against `C(G)` (or `cC(G)`): the empty-forest slice is
/// `C(G)^op` structurally, `(F, H) -> (∅, core(F ∪ H))` is a closure
/// retraction onto that slice, and the homology agrees.
pub fn verify_fiber(g: &Multigraph, connected_only: bool) -> Result<Verification> {
    let z = z_fiber(g, connected_only)?;
    let kind = if connected_only { GraphPosetKind::CC } else { GraphPosetKind::C };
    let c: GraphPoset = build_poset(g, kind)?;
    let mut v = Verification::new(if connected_only { "fiber-connected" } else { "fiber" });
    v.set("elements", z.elements.len());

    for e in &z.elements {
        v.require(g.is_forest(e.forest) && e.forest.is_disjoint(e.core_part), || {
            format!("malformed element {}", e.label())
        });
    }

    let slice: Vec<usize> = (0..z.elements.len()).filter(|&i| z.elements[i].forest.is_empty()).collect();
    let slice_poset = z.poset.induced(&slice);
    let to_c: Vec<Option<usize>> = slice.iter().map(|&i| c.index_of(z.elements[i].core_part)).collect();
    let iso = to_c.iter().all(Option::is_some)
        && slice.len() == c.len()
        && slice_poset.is_isomorphism(&c.poset.opposite(), &to_c.iter().flatten().copied().collect::<Vec<_>>());
    v.require(iso, || format!("empty-forest slice is not isomorphic to {}^op", kind.as_str()));

    let index: HashMap<FiberElement, usize> = z.elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut assignment = Vec::with_capacity(z.elements.len());
    for e in &z.elements {
        let target = FiberElement { forest: EdgeSet::EMPTY, core_part: g.core(e.forest.union(e.core_part)) };
        match index.get(&target) {
            Some(&i) => assignment.push(i),
            None => {
                v.require(false, || format!("retraction of {} leaves the fibre", e.label()));
                return Ok(v);
            }
        }
    }
    match PosetMap::new(&z.poset, &z.poset, assignment.clone()).and_then(|m| closure_retraction(&z.poset, &m)) {
        Ok(r) => {
            // the identity reports either direction, so test x <= r(x) directly
            let increasing = (0..z.elements.len()).all(|x| z.poset.leq(x, assignment[x]));
            v.require(increasing, || "retraction is not increasing".into());
            v.require(r.image_indices == slice, || "retraction image is not the empty-forest slice".into());
        }
        Err(e) => {
            v.require(false, || e.to_string());
        }
    }

    let hz = reduced_homology(&z.poset.order_complex());
    let hc = reduced_homology(&c.order_complex());
    v.set_homology(&hz);
    v.require(hz == hc, || format!("fibre homology {hz} differs from {} homology {hc}", kind.as_str()));
    Ok(v)
}

/// Proper non-empty subsets of a basis of size `rank`.
pub fn apartment(rank: usize) -> Result<FinitePoset> {
    if !(2..=8).contains(&rank) {
        return Err(Error::UnsupportedRank(rank));
    }
    proper_boolean_lattice(rank)
}

pub fn verify_apartment(rank: usize) -> Result<Verification> {
    let p = apartment(rank)?;
    let h = reduced_homology(&p.order_complex());
    let mut v = Verification::new("apartment");
    v.set("rank", rank);
    v.set("elements", p.len());
    v.set_homology(&h);
    let dim = rank as isize - 2;
    v.require(h.is_sphere(dim), || format!("expected the homology of S^{dim}, got {h}"));
    Ok(v)
}
