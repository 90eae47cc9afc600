//! Finite multigraphs with loops and parallel edges, together with the graph
//! operations used by the subgraph posets: deletion, collapse, cores,
//! valence-2 smoothing and forest enumeration.
//!
//! Subgraphs are edge-induced, so an [`EdgeSet`] over the host's edge ids is
//! enough to describe one. Edge ids are small integers (`< 64`) and survive
//! deletion and collapse unchanged, which makes lifting a subgraph of `G/F`
//! back to `G` the identity on edge sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type EdgeId = u32;

/// Exclusive upper bound on edge ids.
pub const MAX_EDGE_ID: EdgeId = 64;

/// A set of edge ids, stored as a 64-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSet(u64);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);

    pub fn from_bits(bits: u64) -> Self {
        EdgeSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(e: EdgeId) -> Self {
        debug_assert!(e < MAX_EDGE_ID);
        EdgeSet(1 << e)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, e: EdgeId) -> bool {
        e < MAX_EDGE_ID && self.0 & (1 << e) != 0
    }

    pub fn with(self, e: EdgeId) -> Self {
        EdgeSet(self.0 | (1 << e))
    }

    pub fn without(self, e: EdgeId) -> Self {
        EdgeSet(self.0 & !(1 << e))
    }

    pub fn union(self, other: Self) -> Self {
        EdgeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        EdgeSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        EdgeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = EdgeId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros();
            bits &= bits - 1;
            Some(e)
        })
    }

    /// All subsets of `self`, in increasing order of their bit patterns.
    pub fn subsets(self) -> impl Iterator<Item = EdgeSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some(cur.wrapping_sub(mask) & mask) };
            Some(EdgeSet(cur))
        })
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        iter.into_iter().fold(EdgeSet::EMPTY, EdgeSet::with)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Vertex/component counts of an edge-induced subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetStats {
    pub edges: usize,
    pub vertices: usize,
    pub components: usize,
}

impl SubsetStats {
    /// First Betti number of the subgraph.
    pub fn rank(&self) -> usize {
        self.edges + self.components - self.vertices
    }
}

/// A finite graph that may have loops and parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<VertexId>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    // endpoint positions in `vertices`, indexed by edge id
    ends: Vec<Option<(usize, usize)>>,
}

impl Multigraph {
    /// Builds a graph from explicit vertex and edge lists. Endpoints are
    /// stored unordered; every endpoint must be a declared vertex.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    ) -> Result<Self> {
        let mut vset = BTreeSet::new();
        for v in vertices {
            if !vset.insert(v) {
                return Err(Error::Parse(format!("duplicate vertex id {v}")));
            }
        }
        let mut emap = BTreeMap::new();
        for (id, u, v) in edges {
            if id >= MAX_EDGE_ID {
                return Err(Error::EdgeIdOutOfRange(id));
            }
            for w in [u, v] {
                if !vset.contains(&w) {
                    return Err(Error::UnknownVertex(w));
                }
            }
            if emap.insert(id, (u.min(v), u.max(v))).is_some() {
                return Err(Error::DuplicateEdge(id));
            }
        }
        Ok(Self::from_parts(vset.into_iter().collect(), emap))
    }

    /// Builds a graph whose edges get ids `0..pairs.len()` and whose vertices
    /// are exactly the endpoints.
    pub fn from_edge_list(pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        let vertices: BTreeSet<VertexId> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        Self::new(vertices, pairs.iter().enumerate().map(|(i, &(u, v))| (i as EdgeId, u, v)))
    }

    fn from_parts(vertices: Vec<VertexId>, edges: BTreeMap<EdgeId, (VertexId, VertexId)>) -> Self {
        let slots = edges.keys().next_back().map_or(0, |&m| m as usize + 1);
        let mut ends = vec![None; slots];
        for (&id, &(u, v)) in &edges {
            let iu = vertices.binary_search(&u).expect("endpoint declared");
            let iv = vertices.binary_search(&v).expect("endpoint declared");
            ends[id as usize] = Some((iu, iv));
        }
        Multigraph { vertices, edges, ends }
    }

    /// Rose with `petals` loops at a single vertex.
    pub fn rose(petals: usize) -> Self {
        Self::new([0], (0..petals as EdgeId).map(|e| (e, 0, 0))).expect("valid rose")
    }

    /// Two vertices joined by three parallel edges.
    pub fn theta() -> Self {
        Self::from_edge_list(&[(0, 1), (0, 1), (0, 1)]).expect("valid theta")
    }

    /// Two loops joined by a separating edge. Edge 0 and 2 are the loops,
    /// edge 1 the bar.
    pub fn dumbbell() -> Self {
        Self::from_edge_list(&[(0, 0), (0, 1), (1, 1)]).expect("valid dumbbell")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(u, v))| (e, u, v))
    }

    pub fn all_edges(&self) -> EdgeSet {
        self.edge_ids().collect()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.edges.get(&e).copied().ok_or(Error::UnknownEdge(e))
    }

    pub fn is_loop(&self, e: EdgeId) -> Result<bool> {
        self.endpoints(e).map(|(u, v)| u == v)
    }

    /// Number of half-edges at `v`; a loop contributes two.
    pub fn valence(&self, v: VertexId) -> Result<usize> {
        if !self.has_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(self.edges.values().map(|&(a, b)| usize::from(a == v) + usize::from(b == v)).sum())
    }

    pub fn min_valence(&self) -> usize {
        let mut val = vec![0usize; self.vertices.len()];
        for (iu, iv) in self.ends.iter().flatten() {
            val[*iu] += 1;
            val[*iv] += 1;
        }
        val.into_iter().min().unwrap_or(0)
    }

    /// Edges incident to `v`, loops listed once.
    pub fn incident_edges(&self, v: VertexId) -> Vec<EdgeId> {
        self.edges().filter(|&(_, a, b)| a == v || b == v).map(|(e, _, _)| e).collect()
    }

    fn check_subset(&self, s: EdgeSet) -> Result<()> {
        match s.difference(self.all_edges()).iter().next() {
            Some(e) => Err(Error::UnknownEdge(e)),
            None => Ok(()),
        }
    }

    fn slot(&self, e: EdgeId) -> (usize, usize) {
        self.ends[e as usize].expect("edge in graph")
    }

    /// Vertex and component counts of the subgraph spanned by `s`.
    pub fn subset_stats(&self, s: EdgeSet) -> SubsetStats {
        let n = self.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut vertices = 0;
        let mut merges = 0;
        for e in s.iter() {
            let (a, b) = self.slot(e);
            for w in [a, b] {
                if !touched[w] {
                    touched[w] = true;
                    vertices += 1;
                }
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
                merges += 1;
            }
        }
        SubsetStats { edges: s.len(), vertices, components: vertices - merges }
    }

    /// Number of connected components of the whole graph, isolated vertices
    /// included.
    pub fn component_count(&self) -> usize {
        let st = self.subset_stats(self.all_edges());
        st.components + (self.vertices.len() - st.vertices)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// First Betti number `|E| - |V| + #components`.
    pub fn rank(&self) -> usize {
        self.edge_count() + self.component_count() - self.vertex_count()
    }

    pub fn is_forest(&self, s: EdgeSet) -> bool {
        self.subset_stats(s).rank() == 0
    }

    pub fn is_subset_connected(&self, s: EdgeSet) -> bool {
        !s.is_empty() && self.subset_stats(s).components == 1
    }

    /// True iff deleting `e` disconnects the graph.
    pub fn is_separating_edge(&self, e: EdgeId) -> Result<bool> {
        let (u, v) = self.endpoints(e)?;
        if u == v {
            return Ok(false);
        }
        let rest = self.all_edges().without(e);
        let st = self.subset_stats(rest);
        // deleting a non-loop keeps both endpoints in the vertex set here,
        // so compare component counts including isolated endpoints
        let isolated = self.vertices.len() - st.vertices;
        Ok(st.components + isolated > self.component_count())
    }

    pub fn separating_edges(&self) -> Vec<EdgeId> {
        self.edge_ids().filter(|&e| self.is_separating_edge(e).unwrap_or(false)).collect()
    }

    pub fn has_separating_edge(&self) -> bool {
        !self.separating_edges().is_empty()
    }

    /// `G - e`: drops `e`, then any vertex left isolated.
    pub fn delete_edge(&self, e: EdgeId) -> Result<Multigraph> {
        self.endpoints(e)?;
        let mut edges = self.edges.clone();
        edges.remove(&e);
        let used: BTreeSet<VertexId> = edges.values().flat_map(|&(u, v)| [u, v]).collect();
        let vertices = self
            .vertices
            .iter()
            .copied()
            .filter(|v| used.contains(v) || !self.incident_edges(*v).contains(&e))
            .collect();
        Ok(Self::from_parts(vertices, edges))
    }

    /// Restriction to the subgraph spanned by `s` (edge-induced).
    pub fn induced(&self, s: EdgeSet) -> Result<Multigraph> {
        self.check_subset(s)?;
        let edges: BTreeMap<_, _> = self.edges.iter().filter(|(e, _)| s.contains(**e)).map(|(&e, &p)| (e, p)).collect();
        let vertices: BTreeSet<VertexId> = edges.values().flat_map(|&(u, v)| [u, v]).collect();
        Ok(Self::from_parts(vertices.into_iter().collect(), edges))
    }

    fn next_vertex_id(&self) -> VertexId {
        self.vertices.last().map_or(0, |&v| v + 1)
    }

    /// `G / e`: identifies the endpoints of a non-loop edge `e` to a fresh
    /// vertex and removes `e`.
    pub fn collapse_edge(&self, e: EdgeId) -> Result<Multigraph> {
        self.collapse_edge_with_map(e).map(|(g, _)| g)
    }

    /// Like [`Multigraph::collapse_edge`], also returning where each vertex
    /// of `G` lands in `G / e`.
    pub fn collapse_edge_with_map(&self, e: EdgeId) -> Result<(Multigraph, BTreeMap<VertexId, VertexId>)> {
        let (u, v) = self.endpoints(e)?;
        if u == v {
            return Err(Error::LoopCollapse(e));
        }
        let w = self.next_vertex_id();
        let map: BTreeMap<VertexId, VertexId> =
            self.vertices.iter().map(|&x| (x, if x == u || x == v { w } else { x })).collect();
        Ok((self.quotient(EdgeSet::singleton(e), &map), map))
    }

    fn quotient(&self, removed: EdgeSet, map: &BTreeMap<VertexId, VertexId>) -> Multigraph {
        let edges: BTreeMap<_, _> = self
            .edges
            .iter()
            .filter(|(e, _)| !removed.contains(**e))
            .map(|(&e, &(a, b))| {
                let (x, y) = (map[&a], map[&b]);
                (e, (x.min(y), x.max(y)))
            })
            .collect();
        let vertices: BTreeSet<VertexId> = map.values().copied().collect();
        Self::from_parts(vertices.into_iter().collect(), edges)
    }

    /// `G / F` for a forest `F`. Each non-trivial tree of `F` becomes one
    /// fresh vertex; fresh ids are assigned in order of the tree's smallest
    /// vertex, so the result does not depend on any collapse order.
    pub fn collapse_forest(&self, f: EdgeSet) -> Result<Multigraph> {
        self.collapse_forest_with_map(f).map(|(g, _)| g)
    }

    pub fn collapse_forest_with_map(&self, f: EdgeSet) -> Result<(Multigraph, BTreeMap<VertexId, VertexId>)> {
        self.check_subset(f)?;
        if !self.is_forest(f) {
            return Err(Error::NotAForest(f.to_string()));
        }
        Ok(self.collapse_components(f))
    }

    /// `G / H` for an arbitrary subgraph: every component of `H` becomes one
    /// vertex and the edges of `H` disappear. Agrees with
    /// [`Multigraph::collapse_forest`] on forests.
    pub fn collapse_subgraph(&self, h: EdgeSet) -> Result<Multigraph> {
        self.check_subset(h)?;
        Ok(self.collapse_components(h).0)
    }

    fn collapse_components(&self, f: EdgeSet) -> (Multigraph, BTreeMap<VertexId, VertexId>) {
        let n = self.vertices.len();
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in f.iter() {
            let (a, b) = self.slot(e);
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra.max(rb)] = ra.min(rb);
        }
        let touched: BTreeSet<usize> = f
            .iter()
            .flat_map(|e| {
                let (a, b) = self.slot(e);
                [a, b]
            })
            .collect();
        let mut fresh = BTreeMap::new();
        let mut next = self.next_vertex_id();
        let mut map = BTreeMap::new();
        for i in 0..n {
            let v = self.vertices[i];
            if touched.contains(&i) {
                let root = find(&mut comp, i);
                let id = *fresh.entry(root).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                });
                map.insert(v, id);
            } else {
                map.insert(v, v);
            }
        }
        (self.quotient(f, &map), map)
    }

    /// Core of the subgraph `s`: repeatedly strips edges at valence-one
    /// vertices. The result has no valence-one vertices and every component
    /// has positive rank; the core of a forest is empty.
    pub fn core(&self, s: EdgeSet) -> EdgeSet {
        let n = self.vertices.len();
        let mut cur = s;
        loop {
            let mut val = vec![0u32; n];
            for e in cur.iter() {
                let (a, b) = self.slot(e);
                val[a] += 1;
                val[b] += 1;
            }
            let strip: EdgeSet = cur
                .iter()
                .filter(|&e| {
                    let (a, b) = self.slot(e);
                    a != b && (val[a] == 1 || val[b] == 1)
                })
                .collect();
            if strip.is_empty() {
                return cur;
            }
            cur = cur.difference(strip);
        }
    }

    /// A subgraph is core iff it is non-empty and equals its own core.
    pub fn is_core(&self, s: EdgeSet) -> bool {
        !s.is_empty() && self.core(s) == s
    }

    /// `G^v`: replaces the segment `e1 v e2` through a valence-two vertex by
    /// one new edge `e_v` (id = largest edge id + 1). Returns the graph and
    /// `(e1, e2, e_v)` with `e1 < e2`.
    pub fn smooth_valence_two(&self, v: VertexId) -> Result<(Multigraph, (EdgeId, EdgeId, EdgeId))> {
        if self.valence(v)? != 2 {
            return Err(Error::NotValenceTwo(v));
        }
        let inc = self.incident_edges(v);
        if inc.len() != 2 {
            // a single loop at v
            return Err(Error::NotValenceTwo(v));
        }
        let (e1, e2) = (inc[0], inc[1]);
        let far = |e: EdgeId| {
            let (a, b) = self.edges[&e];
            if a == v {
                b
            } else {
                a
            }
        };
        let (a, b) = (far(e1), far(e2));
        let ev = self.edges.keys().next_back().map_or(0, |&m| m + 1);
        if ev >= MAX_EDGE_ID {
            return Err(Error::EdgeIdOutOfRange(ev));
        }
        let mut edges = self.edges.clone();
        edges.remove(&e1);
        edges.remove(&e2);
        edges.insert(ev, (a.min(b), a.max(b)));
        let vertices = self.vertices.iter().copied().filter(|&x| x != v).collect();
        Ok((Self::from_parts(vertices, edges), (e1, e2, ev)))
    }

    /// Puts a new vertex `w` (largest vertex id + 1) in the middle of `e`:
    /// `e` keeps one half and a new edge (largest edge id + 1) the other.
    /// Returns the graph and `w`.
    pub fn subdivide_edge(&self, e: EdgeId) -> Result<(Multigraph, VertexId)> {
        let (a, b) = self.endpoints(e)?;
        let w = self.vertices.last().map_or(0, |&m| m + 1);
        let fresh = self.edges.keys().next_back().map_or(0, |&m| m + 1);
        if fresh >= MAX_EDGE_ID {
            return Err(Error::EdgeIdOutOfRange(fresh));
        }
        let mut edges = self.edges.clone();
        edges.insert(e, (a, w));
        edges.insert(fresh, (b, w));
        let mut vertices = self.vertices.clone();
        vertices.push(w);
        Ok((Self::from_parts(vertices, edges), w))
    }

    /// All forests of the graph (acyclic edge subsets), the empty one
    /// included, in increasing bit order.
    pub fn forests(&self) -> Vec<EdgeSet> {
        let ids: Vec<EdgeId> = self.edge_ids().collect();
        let mut out = Vec::new();
        let mut parent: Vec<usize> = (0..self.vertices.len()).collect();
        self.forest_search(&ids, 0, EdgeSet::EMPTY, &mut parent, &mut out);
        out.sort();
        out
    }

    fn forest_search(&self, ids: &[EdgeId], at: usize, cur: EdgeSet, parent: &mut Vec<usize>, out: &mut Vec<EdgeSet>) {
        if at == ids.len() {
            out.push(cur);
            return;
        }
        self.forest_search(ids, at + 1, cur, parent, out);
        let e = ids[at];
        let (a, b) = self.slot(e);
        let root = |p: &Vec<usize>, mut x: usize| {
            while p[x] != x {
                x = p[x];
            }
            x
        };
        let (ra, rb) = (root(parent, a), root(parent, b));
        if ra != rb {
            parent[ra] = rb;
            self.forest_search(ids, at + 1, cur.with(e), parent, out);
            parent[ra] = ra;
        }
    }

    /// Maximal forests (spanning trees, for a connected graph).
    pub fn maximal_forests(&self) -> Vec<EdgeSet> {
        let target = self.vertex_count() - self.component_count();
        self.forests().into_iter().filter(|f| f.len() == target).collect()
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson { vertices: self.vertices.clone(), edges: self.edges().map(|(e, u, v)| [e, u, v]).collect() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        Self::new(raw.vertices, raw.edges.into_iter().map(|[e, u, v]| (e, u, v)))
    }

    /// Graphviz rendering; parallel edges and loops are drawn individually.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in &self.vertices {
            out.push_str(&format!("  v{v};\n"));
        }
        for (e, u, v) in self.edges() {
            out.push_str(&format!("  v{u} -- v{v} [label=\"e{e}\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Wire form `{"vertices":[int], "edges":[[id,u,v]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[u32; 3]>,
}

/// A subgraph viewed together with its host graph.
#[derive(Clone, Copy, Debug)]
pub struct Subgraph<'g> {
    host: &'g Multigraph,
    edges: EdgeSet,
}

impl<'g> Subgraph<'g> {
    pub fn new(host: &'g Multigraph, edges: EdgeSet) -> Result<Self> {
        host.check_subset(edges)?;
        Ok(Subgraph { host, edges })
    }

    pub fn host(&self) -> &'g Multigraph {
        self.host
    }

    pub fn edges(&self) -> EdgeSet {
        self.edges
    }

    /// Endpoints of the edges; there are no isolated vertices.
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.edges
            .iter()
            .flat_map(|e| {
                let (u, v) = self.host.edges[&e];
                [u, v]
            })
            .collect()
    }

    pub fn stats(&self) -> SubsetStats {
        self.host.subset_stats(self.edges)
    }

    pub fn rank(&self) -> usize {
        self.stats().rank()
    }

    pub fn is_forest(&self) -> bool {
        self.host.is_forest(self.edges)
    }

    pub fn is_connected(&self) -> bool {
        self.host.is_subset_connected(self.edges)
    }

    pub fn core(&self) -> Subgraph<'g> {
        Subgraph { host: self.host, edges: self.host.core(self.edges) }
    }

    pub fn is_core(&self) -> bool {
        self.host.is_core(self.edges)
    }
}

impl PartialEq for Subgraph<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.host, other.host) && self.edges == other.edges
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subdividing_adds_a_valence_two_vertex() {
        for g in [Multigraph::theta(), Multigraph::dumbbell(), Multigraph::rose(2)] {
            for e in g.edge_ids() {
                let (s, w) = g.subdivide_edge(e).unwrap();
                assert_eq!(s.valence(w).unwrap(), 2);
                assert_eq!((s.rank(), s.edge_count()), (g.rank(), g.edge_count() + 1));
                let (back, _) = s.smooth_valence_two(w).unwrap();
                assert_eq!(back.rank(), g.rank());
                assert_eq!(back.edge_count(), g.edge_count());
            }
        }
        assert!(Multigraph::theta().subdivide_edge(9).is_err());
    }

    fn bigon() -> Multigraph {
        Multigraph::from_edge_list(&[(0, 1), (0, 1)]).unwrap()
    }

    #[test]
    fn ranks_of_small_graphs() {
        assert_eq!(Multigraph::rose(3).rank(), 3);
        assert_eq!(Multigraph::theta().rank(), 2);
        assert_eq!(Multigraph::from_edge_list(&[(0, 1)]).unwrap().rank(), 0);
        assert_eq!(Multigraph::dumbbell().rank(), 2);
    }

    #[test]
    fn separating_edges() {
        let d = Multigraph::dumbbell();
        assert!(d.is_separating_edge(1).unwrap());
        assert!(!d.is_separating_edge(0).unwrap());
        let t = Multigraph::theta();
        assert!((0..3).all(|e| !t.is_separating_edge(e).unwrap()));
        let r = Multigraph::rose(3);
        assert!((0..3).all(|e| !r.is_separating_edge(e).unwrap()));
        assert!(matches!(t.is_separating_edge(7), Err(Error::UnknownEdge(7))));
    }

    #[test]
    fn delete_and_collapse() {
        let t = Multigraph::theta();
        let r = t.collapse_edge(0).unwrap();
        assert_eq!(r.vertex_count(), 1);
        assert_eq!(r.edge_count(), 2);
        assert!(r.edge_ids().all(|e| r.is_loop(e).unwrap()));
        assert_eq!(r.edge_ids().collect::<Vec<_>>(), vec![1, 2]);

        let d = Multigraph::dumbbell().collapse_edge(1).unwrap();
        assert_eq!((d.vertex_count(), d.edge_count(), d.rank()), (1, 2, 2));

        let b = t.delete_edge(2).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count(), b.rank()), (2, 2, 1));

        assert!(matches!(Multigraph::rose(2).collapse_edge(0), Err(Error::LoopCollapse(0))));
    }

    #[test]
    fn deleting_a_pendant_edge_prunes_the_leaf() {
        let g = Multigraph::from_edge_list(&[(0, 0), (0, 1)]).unwrap();
        let h = g.delete_edge(1).unwrap();
        assert_eq!(h.vertices(), &[0]);
    }

    #[test]
    fn collapse_forests() {
        let t = Multigraph::theta();
        let r = t.collapse_forest(EdgeSet::singleton(0)).unwrap();
        assert_eq!((r.vertex_count(), r.edge_count()), (1, 2));
        assert_eq!(t.collapse_forest(EdgeSet::EMPTY).unwrap(), t);
        let four = Multigraph::from_edge_list(&[(0, 1); 4]).unwrap();
        let rose3 = four.collapse_forest(EdgeSet::singleton(2)).unwrap();
        assert_eq!((rose3.vertex_count(), rose3.edge_count(), rose3.rank()), (1, 3, 3));
        assert!(matches!(t.collapse_forest(EdgeSet::from_iter([0, 1])), Err(Error::NotAForest(_))));
    }

    #[test]
    fn cores() {
        let d = Multigraph::dumbbell();
        assert_eq!(d.core(EdgeSet::from_iter([0, 1])), EdgeSet::singleton(0));
        let t = Multigraph::theta();
        let pair = EdgeSet::from_iter([0, 1]);
        assert_eq!(t.core(pair), pair);
        assert!(t.core(EdgeSet::singleton(2)).is_empty());
        assert!(!t.is_core(EdgeSet::EMPTY));
    }

    #[test]
    fn smoothing() {
        let tri = Multigraph::from_edge_list(&[(0, 1), (1, 2), (2, 0)]).unwrap();
        let (b, (e1, e2, ev)) = tri.smooth_valence_two(0).unwrap();
        assert_eq!((e1, e2, ev), (0, 2, 3));
        assert_eq!((b.vertex_count(), b.edge_count(), b.rank()), (2, 2, 1));

        let (l, _) = bigon().smooth_valence_two(1).unwrap();
        assert_eq!((l.vertex_count(), l.edge_count()), (1, 1));
        assert!(l.is_loop(2).unwrap());

        assert!(matches!(Multigraph::rose(1).smooth_valence_two(0), Err(Error::NotValenceTwo(0))));
        assert!(matches!(Multigraph::theta().smooth_valence_two(0), Err(Error::NotValenceTwo(0))));
    }

    #[test]
    fn forests_and_spanning_trees() {
        assert_eq!(Multigraph::theta().maximal_forests().len(), 3);
        assert_eq!(Multigraph::dumbbell().maximal_forests(), vec![EdgeSet::singleton(1)]);
        assert_eq!(Multigraph::rose(3).maximal_forests(), vec![EdgeSet::EMPTY]);
        assert_eq!(Multigraph::theta().forests().len(), 4);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = EdgeSet::from_iter([1, 3, 4]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset(s)));
        assert_eq!(EdgeSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn json_round_trip_and_dot() {
        let t = Multigraph::theta();
        assert_eq!(t.to_json(), r#"{"vertices":[0,1],"edges":[[0,0,1],[1,0,1],[2,0,1]]}"#);
        assert_eq!(Multigraph::from_json(&t.to_json()).unwrap(), t);
        let dot = t.to_dot();
        assert_eq!(dot.matches("--").count(), 3);
        assert_eq!(dot.matches(";\n").count(), 5);
        assert!(matches!(Multigraph::from_json(r#"{"vertices":[0],"edges":[[0,0,1]]}"#), Err(Error::UnknownVertex(1))));
    }
}
