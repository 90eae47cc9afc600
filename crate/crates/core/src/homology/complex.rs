use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An abstract simplicial complex on labelled vertices `0..vertex_count()`.
///
/// Simplices of each dimension are stored flat (stride `d + 1`), each one
/// sorted ascending, the list sorted lexicographically. The family is closed
/// under taking faces and every vertex is a 0-simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    faces: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

fn sort_dedup(flat: &mut Vec<u32>, stride: usize) {
    let mut rows: Vec<&[u32]> = flat.chunks_exact(stride).collect();
    rows.sort_unstable();
    rows.dedup();
    let out: Vec<u32> = rows.concat();
    *flat = out;
}

impl SimplicialComplex {
    /// The void complex: no vertices, only the empty simplex.
    pub fn empty() -> Self {
        SimplicialComplex { labels: Vec::new(), faces: Vec::new() }
    }

    /// Closure of the given facets. Vertices not covered by any facet still
    /// become 0-simplices.
    pub fn from_facets(labels: Vec<String>, facets: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        let mut faces: Vec<Vec<u32>> = vec![Vec::new(); 1];
        faces[0].extend(0..n as u32);
        for facet in facets {
            let verts: BTreeSet<usize> = facet.iter().copied().collect();
            if let Some(&bad) = verts.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidComplex(format!("facet vertex {bad} out of range")));
            }
            let verts: Vec<u32> = verts.into_iter().map(|v| v as u32).collect();
            if verts.len() > 24 {
                return Err(Error::InvalidComplex(format!("facet of dimension {} is too large", verts.len() - 1)));
            }
            for mask in 1u32..(1 << verts.len()) {
                let d = mask.count_ones() as usize - 1;
                if faces.len() <= d {
                    faces.resize_with(d + 1, Vec::new);
                }
                faces[d].extend(verts.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v));
            }
        }
        if n == 0 {
            faces.clear();
        }
        Ok(Self::from_closed_faces(labels, faces))
    }

    /// Builds from per-dimension flat lists that are already closed under
    /// faces; rows only need to be internally sorted.
    pub(crate) fn from_closed_faces(labels: Vec<String>, mut faces: Vec<Vec<u32>>) -> Self {
        for (d, flat) in faces.iter_mut().enumerate() {
            sort_dedup(flat, d + 1);
        }
        while faces.last().is_some_and(|f| f.is_empty()) {
            faces.pop();
        }
        SimplicialComplex { labels, faces }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn is_void(&self) -> bool {
        self.labels.is_empty()
    }

    /// Dimension; `-1` for the void complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    /// Number of `d`-simplices.
    pub fn count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, |f| f.len() / (d + 1))
    }

    /// Total number of non-empty simplices.
    pub fn size(&self) -> usize {
        (0..self.faces.len()).map(|d| self.count(d)).sum()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.faces.len()).map(|d| self.count(d)).collect()
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[u32] {
        &self.faces[d][i * (d + 1)..(i + 1) * (d + 1)]
    }

    pub fn simplices(&self, d: usize) -> impl Iterator<Item = &[u32]> + '_ {
        self.faces.get(d).map(|f| f.chunks_exact(d + 1)).into_iter().flatten()
    }

    /// Position of a sorted simplex in the dimension-`d` list.
    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        let flat = self.faces.get(d)?;
        let (mut lo, mut hi) = (0, flat.len() / (d + 1));
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * (d + 1)..(mid + 1) * (d + 1)].cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        s.is_empty() || self.index_of(s).is_some()
    }

    /// Euler characteristic of the unreduced complex.
    pub fn euler_characteristic(&self) -> i64 {
        (0..self.faces.len()).map(|d| if d % 2 == 0 { self.count(d) as i64 } else { -(self.count(d) as i64) }).sum()
    }

    /// Maximal simplices, ordered by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for d in 0..self.faces.len() {
            let mut covered = vec![false; self.count(d)];
            if d + 1 < self.faces.len() {
                let mut face = Vec::with_capacity(d + 1);
                for s in self.simplices(d + 1) {
                    for skip in 0..s.len() {
                        face.clear();
                        face.extend(s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v));
                        if let Some(i) = self.index_of(&face) {
                            covered[i] = true;
                        }
                    }
                }
            }
            for (i, c) in covered.into_iter().enumerate() {
                if !c {
                    out.push(self.simplex(d, i).to_vec());
                }
            }
        }
        out
    }

    /// Full subcomplex spanned by `vertices`, reindexed in the given order.
    pub fn full_subcomplex(&self, vertices: &[usize]) -> SimplicialComplex {
        let mut new_index = vec![u32::MAX; self.vertex_count()];
        for (k, &v) in vertices.iter().enumerate() {
            new_index[v] = k as u32;
        }
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut faces = Vec::new();
        for d in 0..self.faces.len() {
            let mut flat = Vec::new();
            for s in self.simplices(d) {
                if s.iter().all(|&v| new_index[v as usize] != u32::MAX) {
                    let mut t: Vec<u32> = s.iter().map(|&v| new_index[v as usize]).collect();
                    t.sort_unstable();
                    flat.extend(t);
                }
            }
            faces.push(flat);
        }
        Self::from_closed_faces(labels, faces)
    }

    /// Subcomplex of simplices (given by vertex labels) common to all
    /// members; vertices are matched by label.
    pub fn intersection(members: &[&SimplicialComplex]) -> SimplicialComplex {
        let Some((first, rest)) = members.split_first() else {
            return SimplicialComplex::empty();
        };
        let keep: Vec<usize> = (0..first.vertex_count())
            .filter(|&v| rest.iter().all(|m| m.labels.iter().any(|l| l == &first.labels[v])))
            .collect();
        let mut faces = Vec::new();
        let maps: Vec<Vec<Option<u32>>> = rest
            .iter()
            .map(|m| first.labels.iter().map(|l| m.labels.iter().position(|x| x == l).map(|p| p as u32)).collect())
            .collect();
        let mut new_index = vec![u32::MAX; first.vertex_count()];
        for (k, &v) in keep.iter().enumerate() {
            new_index[v] = k as u32;
        }
        for d in 0..first.faces.len() {
            let mut flat = Vec::new();
            for s in first.simplices(d) {
                let present = rest.iter().zip(&maps).all(|(m, map)| {
                    let mut t: Vec<u32> = Vec::with_capacity(s.len());
                    for &v in s {
                        match map[v as usize] {
                            Some(x) => t.push(x),
                            None => return false,
                        }
                    }
                    t.sort_unstable();
                    m.contains(&t)
                });
                if present {
                    flat.extend(s.iter().map(|&v| new_index[v as usize]));
                }
            }
            faces.push(flat);
        }
        let labels = keep.iter().map(|&v| first.labels[v].clone()).collect();
        Self::from_closed_faces(labels, faces)
    }

    pub fn to_json_value(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.labels.clone(),
            facets: self.facets().into_iter().map(|f| f.into_iter().map(|v| v as usize).collect()).collect(),
        }
    }

    /// Facet-list form `{"vertices":[label], "facets":[[i,...]]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("complex serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        Self::from_facets(raw.vertices, &raw.facets)
    }
}
