//! Exact reduced (co)homology of simplicial complexes over the integers,
//! plus the combinatorial tools built on it: Alexander duality checks,
//! nerves, barycentric subdivision and the `pi_1` checker.

mod complex;
pub mod pi1;
pub mod snf;

use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

pub use complex::{ComplexJson, SimplicialComplex};
pub use pi1::{pi1_triviality, Pi1Report, Pi1Status};
pub use snf::{smith_normal_form, SmithForm, SparseIntMatrix};

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

/// Boundary map `C_d -> C_{d-1}` as a matrix with one row per `d`-simplex.
/// For `d = 0` this is the augmentation onto the empty simplex.
pub fn boundary_matrix(k: &SimplicialComplex, d: usize) -> SparseIntMatrix {
    if d == 0 {
        let mut m = SparseIntMatrix::with_cols(1);
        for _ in 0..k.count(0) {
            m.push_row([(0, 1)]);
        }
        return m;
    }
    let mut m = SparseIntMatrix::with_cols(k.count(d - 1));
    let mut face = Vec::with_capacity(d);
    for s in k.simplices(d) {
        let mut row = Vec::with_capacity(d + 1);
        for skip in 0..=d {
            face.clear();
            face.extend(s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v));
            let col = k.index_of(&face).expect("complex is closed under faces");
            row.push((col as u32, if skip % 2 == 0 { 1 } else { -1 }));
        }
        m.push_row(row);
    }
    m
}

/// One graded piece of a (co)homology computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: isize,
    pub betti: usize,
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<BigInt>,
}

fn serialize_torsion<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match u64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced integer (co)homology in degrees `-1..=dim`. Degrees outside the
/// stored range are zero.
#[derive(Clone, Debug, Eq, Serialize)]
#[serde(transparent)]
pub struct HomologyResult {
    groups: Vec<HomologyGroup>,
}

impl PartialEq for HomologyResult {
    fn eq(&self, other: &Self) -> bool {
        let lo = self.min_degree().min(other.min_degree());
        let hi = self.max_degree().max(other.max_degree());
        (lo..=hi).all(|d| self.betti(d) == other.betti(d) && self.torsion(d) == other.torsion(d))
    }
}

impl HomologyResult {
    fn min_degree(&self) -> isize {
        self.groups.first().map_or(-1, |g| g.degree)
    }

    fn max_degree(&self) -> isize {
        self.groups.last().map_or(-1, |g| g.degree)
    }

    fn group(&self, d: isize) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == d)
    }

    pub fn groups(&self) -> &[HomologyGroup] {
        &self.groups
    }

    pub fn betti(&self, d: isize) -> usize {
        self.group(d).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, d: isize) -> &[BigInt] {
        self.group(d).map_or(&[], |g| &g.torsion)
    }

    /// Reduced Betti numbers from degree 0 up to the top stored degree.
    pub fn betti_vector(&self) -> Vec<usize> {
        (0..=self.max_degree().max(-1)).map(|d| self.betti(d)).collect()
    }

    /// All reduced groups vanish (acyclic).
    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    /// Degrees carrying a non-zero group.
    pub fn nonzero_degrees(&self) -> Vec<isize> {
        self.groups.iter().filter(|g| !g.is_zero()).map(|g| g.degree).collect()
    }

    /// Free, and zero outside degree `d`. Allows the zero group.
    pub fn concentrated_in(&self, d: isize) -> bool {
        self.is_torsion_free() && self.nonzero_degrees().iter().all(|&x| x == d)
    }

    /// Homology of the `n`-sphere: `Z` in degree `n`, zero elsewhere.
    pub fn is_sphere(&self, n: isize) -> bool {
        self.concentrated_in(n) && self.betti(n) == 1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("homology serializes")
    }
}

impl fmt::Display for HomologyResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| {
                let mut s = if g.betti > 0 { format!("Z^{}", g.betti) } else { String::new() };
                for t in &g.torsion {
                    if !s.is_empty() {
                        s.push_str(" + ");
                    }
                    s.push_str(&format!("Z/{t}"));
                }
                format!("H{}={}", g.degree, s)
            })
            .collect();
        if parts.is_empty() {
            f.write_str("acyclic")
        } else {
            f.write_str(&parts.join(", "))
        }
    }
}

/// Reduced integer homology, including the empty simplex in degree `-1`.
pub fn reduced_homology(k: &SimplicialComplex) -> HomologyResult {
    let top = k.dim();
    // forms[d] is the Smith form of the boundary C_d -> C_{d-1}, d = 0..=top
    let forms: Vec<SmithForm> = (0..=top.max(-1))
        .filter(|&d| d >= 0)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|d| {
            let d = d as usize;
            if d == 0 {
                let rank = usize::from(k.count(0) > 0);
                SmithForm { rank, invariant_factors: vec![BigInt::from(1); rank] }
            } else {
                smith_normal_form(&boundary_matrix(k, d))
            }
        })
        .collect();
    let chains = |d: isize| if d == -1 { 1 } else { k.count(d as usize) };
    let rank = |d: isize| {
        if d < 0 || d > top {
            0
        } else {
            forms[d as usize].rank
        }
    };
    let groups: Vec<HomologyGroup> = (-1..=top.max(-1))
        .map(|d| HomologyGroup {
            degree: d,
            betti: chains(d) - rank(d) - rank(d + 1),
            torsion: if d < top { forms[(d + 1) as usize].torsion() } else { Vec::new() },
        })
        .collect();
    let result = HomologyResult { groups };
    debug_assert_eq!(
        k.euler_characteristic() - 1,
        result
            .groups
            .iter()
            .map(|g| if g.degree.rem_euclid(2) == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum::<i64>(),
        "reduced Euler characteristic mismatch"
    );
    result
}

/// Reduced cohomology by universal coefficients: the free part of `H^d`
/// is that of `H_d`, the torsion that of `H_{d-1}`.
pub fn reduced_cohomology(k: &SimplicialComplex) -> HomologyResult {
    cohomology_from_homology(&reduced_homology(k))
}

pub fn cohomology_from_homology(h: &HomologyResult) -> HomologyResult {
    let lo = h.min_degree();
    let hi = h.max_degree() + 1;
    let groups = (lo..=hi)
        .map(|d| HomologyGroup { degree: d, betti: h.betti(d), torsion: h.torsion(d - 1).to_vec() })
        .filter(|g| g.degree <= h.max_degree() || !g.is_zero())
        .collect();
    HomologyResult { groups }
}

/// Outcome of a poset Alexander duality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualityOutcome {
    Pass,
    /// `Delta(P)` does not have the homology of the claimed sphere.
    HypothesisFailure,
    /// Some degree disagrees; see `mismatched_degrees`.
    DualityFailure,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub sphere_dim: isize,
    pub outcome: DualityOutcome,
    pub ambient: HomologyResult,
    pub subposet: HomologyResult,
    pub complement_cohomology: HomologyResult,
    pub mismatched_degrees: Vec<isize>,
}

/// Checks `H~_i(Q) = H~^{n-i-1}(P \ Q)` in every degree, torsion included,
/// for a poset `P` whose order complex has the homology of `S^n`.
pub fn alexander_duality_check(p: &FinitePoset, q: &[usize], sphere_dim: isize) -> Result<DualityReport> {
    if let Some(&bad) = q.iter().find(|&&x| x >= p.len()) {
        return Err(Error::UnknownElement(bad.to_string()));
    }
    let mut in_q = vec![false; p.len()];
    for &x in q {
        in_q[x] = true;
    }
    let complement: Vec<usize> = (0..p.len()).filter(|&x| !in_q[x]).collect();
    let mut q_sorted = q.to_vec();
    q_sorted.sort_unstable();
    q_sorted.dedup();
    let ambient = reduced_homology(&p.order_complex());
    let subposet = reduced_homology(&p.induced(&q_sorted).order_complex());
    let complement_cohomology = reduced_cohomology(&p.induced(&complement).order_complex());
    if !ambient.is_sphere(sphere_dim) {
        return Ok(DualityReport {
            sphere_dim,
            outcome: DualityOutcome::HypothesisFailure,
            ambient,
            subposet,
            complement_cohomology,
            mismatched_degrees: Vec::new(),
        });
    }
    let mismatched_degrees: Vec<isize> = (-1..=sphere_dim)
        .filter(|&i| {
            let j = sphere_dim - i - 1;
            subposet.betti(i) != complement_cohomology.betti(j)
                || subposet.torsion(i) != complement_cohomology.torsion(j)
        })
        .collect();
    let outcome = if mismatched_degrees.is_empty() { DualityOutcome::Pass } else { DualityOutcome::DualityFailure };
    Ok(DualityReport { sphere_dim, outcome, ambient, subposet, complement_cohomology, mismatched_degrees })
}

/// A non-empty intersection of cover members and whether it is acyclic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionAudit {
    pub members: Vec<usize>,
    pub acyclic: bool,
}

#[derive(Clone, Debug)]
pub struct Nerve {
    pub complex: SimplicialComplex,
    pub intersections: Vec<IntersectionAudit>,
}

impl Nerve {
    /// Every non-empty intersection is acyclic (the homological shadow of
    /// the nerve theorem's hypothesis).
    pub fn good_cover(&self) -> bool {
        self.intersections.iter().all(|a| a.acyclic)
    }
}

/// Nerve of a cover by subcomplexes whose vertices are identified by label.
/// A set of members spans a simplex iff their intersection is non-empty.
pub fn nerve(cover: &[SimplicialComplex]) -> Result<Nerve> {
    if cover.len() > 24 {
        return Err(Error::Precondition(format!("cover of {} members is too large", cover.len())));
    }
    let mut faces: Vec<Vec<usize>> = Vec::new();
    let mut intersections = Vec::new();
    fn grow(
        cover: &[SimplicialComplex],
        current: &mut Vec<usize>,
        faces: &mut Vec<Vec<usize>>,
        audits: &mut Vec<IntersectionAudit>,
    ) {
        let start = current.last().map_or(0, |&l| l + 1);
        for i in start..cover.len() {
            current.push(i);
            let members: Vec<&SimplicialComplex> = current.iter().map(|&j| &cover[j]).collect();
            let inter = SimplicialComplex::intersection(&members);
            if !inter.is_void() {
                audits.push(IntersectionAudit {
                    members: current.clone(),
                    acyclic: reduced_homology(&inter).is_trivial(),
                });
                faces.push(current.clone());
                grow(cover, current, faces, audits);
            }
            current.pop();
        }
    }
    grow(cover, &mut Vec::new(), &mut faces, &mut intersections);
    let labels = (0..cover.len()).map(|i| format!("U{i}")).collect();
    let complex = SimplicialComplex::from_facets(labels, &faces)?;
    Ok(Nerve { complex, intersections })
}

/// Order complex of the face poset.
pub fn face_poset(k: &SimplicialComplex) -> Result<FinitePoset> {
    let mut labels = Vec::new();
    let mut offsets = Vec::new();
    for d in 0..=k.dim().max(-1) {
        let d = d as usize;
        offsets.push(labels.len());
        for s in k.simplices(d) {
            let names: Vec<&str> = s.iter().map(|&v| k.labels()[v as usize].as_str()).collect();
            labels.push(format!("[{}]", names.join(",")));
        }
    }
    let mut covers = Vec::new();
    let mut face = Vec::new();
    for d in 1..=k.dim().max(0) {
        let d = d as usize;
        for (i, s) in k.simplices(d).enumerate() {
            for skip in 0..=d {
                face.clear();
                face.extend(s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v));
                let f = k.index_of(&face).expect("closed complex");
                covers.push((offsets[d - 1] + f, offsets[d] + i));
            }
        }
    }
    FinitePoset::from_covers(labels, &covers)
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    Ok(face_poset(k)?.order_complex())
}

/// An element comparable to all others; its existence makes `Delta(p)` a
/// cone.
pub fn cone_point(p: &FinitePoset) -> Option<usize> {
    p.cone_point()
}
