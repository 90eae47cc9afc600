//! Best-effort decision of whether the fundamental group of a connected
//! simplicial complex is trivial.
//!
//! The edge-path presentation uses one generator per 1-simplex outside a
//! spanning tree and one relator per 2-simplex. Tietze moves then remove
//! generators that occur exactly once in some relator. An empty presentation
//! proves triviality; a non-zero `H_1` proves non-triviality; anything else
//! is reported as unknown.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{boundary_matrix, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::snf::smith_normal_form;

/// Sweeps over the relator list before giving up.
pub const PASS_BUDGET: usize = 1000;

/// Total relator length above which substitutions are refused.
const LENGTH_CAP: usize = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pi1Status {
    Trivial,
    Nontrivial,
    Unknown,
}

/// Outcome plus the size of whatever presentation was left over.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1Report {
    pub status: Pi1Status,
    pub generators_left: usize,
    pub relators_left: usize,
    pub passes: usize,
}

type Word = Vec<i32>;

fn free_reduce(w: &mut Word) {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w.iter() {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    let (mut a, mut b) = (0, out.len());
    while b - a >= 2 && out[a] == -out[b - 1] {
        a += 1;
        b -= 1;
    }
    *w = out[a..b].to_vec();
}

fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

fn first_homology_is_zero(k: &SimplicialComplex) -> bool {
    // H_1 = ker d_1 / im d_2; vanishes iff free rank and torsion vanish
    let n1 = k.count(1);
    if n1 == 0 {
        return true;
    }
    let r1 = smith_normal_form(&boundary_matrix(k, 1)).rank;
    let s2 = smith_normal_form(&boundary_matrix(k, 2));
    n1 - r1 == s2.rank && s2.torsion().is_empty()
}

/// Decides triviality of `pi_1` where it can. Requires a connected,
/// non-void complex.
pub fn pi1_triviality(k: &SimplicialComplex) -> Result<Pi1Report> {
    let n = k.vertex_count();
    if n == 0 {
        return Err(Error::Disconnected);
    }
    let mut adj = vec![Vec::new(); n];
    for e in k.simplices(1) {
        adj[e[0] as usize].push(e[1] as usize);
        adj[e[1] as usize].push(e[0] as usize);
    }
    let mut seen = vec![false; n];
    let mut tree: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                tree.insert((u.min(v) as u32, u.max(v) as u32));
                queue.push_back(v);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Disconnected);
    }
    if !first_homology_is_zero(k) {
        return Ok(Pi1Report { status: Pi1Status::Nontrivial, generators_left: 0, relators_left: 0, passes: 0 });
    }

    let mut gen_of: HashMap<(u32, u32), i32> = HashMap::new();
    for e in k.simplices(1) {
        let key = (e[0], e[1]);
        if !tree.contains(&key) {
            let g = gen_of.len() as i32 + 1;
            gen_of.insert(key, g);
        }
    }
    let edge_word = |a: u32, b: u32| -> Option<i32> { gen_of.get(&(a, b)).copied() };
    let mut relators: Vec<Option<Word>> = Vec::new();
    for t in k.simplices(2) {
        let mut w: Word = [edge_word(t[0], t[1]), edge_word(t[1], t[2]), edge_word(t[0], t[2]).map(|g| -g)]
            .into_iter()
            .flatten()
            .collect();
        free_reduce(&mut w);
        if !w.is_empty() {
            relators.push(Some(w));
        }
    }
    let mut alive = gen_of.len();
    let mut occ: HashMap<i32, BTreeSet<usize>> = HashMap::new();
    for (i, r) in relators.iter().enumerate() {
        for &x in r.as_ref().expect("fresh relator") {
            occ.entry(x.abs()).or_default().insert(i);
        }
    }
    let mut total_len: usize = relators.iter().flatten().map(Vec::len).sum();

    let mut passes = 0;
    while alive > 0 && passes < PASS_BUDGET {
        passes += 1;
        let mut progress = false;
        let mut order: Vec<usize> = (0..relators.len()).filter(|&i| relators[i].is_some()).collect();
        order.sort_by_key(|&i| (relators[i].as_ref().map_or(0, Vec::len), i));
        for i in order {
            let Some(rel) = relators[i].clone() else { continue };
            let mut counts: HashMap<i32, usize> = HashMap::new();
            for &x in &rel {
                *counts.entry(x.abs()).or_default() += 1;
            }
            let Some(pos) = rel.iter().position(|x| counts[&x.abs()] == 1) else { continue };
            let g = rel[pos].abs();
            // rotate so the generator leads: g^eps * w = 1
            let rest: Word = rel[pos + 1..].iter().chain(&rel[..pos]).copied().collect();
            let replacement = if rel[pos] > 0 { invert(&rest) } else { rest };
            let users: Vec<usize> = occ.remove(&g).unwrap_or_default().into_iter().filter(|&j| j != i).collect();
            let growth: usize = users
                .iter()
                .filter_map(|&j| relators[j].as_ref())
                .map(|w| w.iter().filter(|x| x.abs() == g).count() * replacement.len())
                .sum();
            if total_len + growth > LENGTH_CAP {
                occ.insert(g, users.into_iter().chain([i]).collect());
                continue;
            }
            relators[i] = None;
            total_len -= rel.len();
            for &x in &rel {
                if let Some(s) = occ.get_mut(&x.abs()) {
                    s.remove(&i);
                }
            }
            let inverse = invert(&replacement);
            for j in users {
                let Some(old) = relators[j].take() else { continue };
                total_len -= old.len();
                let mut w = Word::with_capacity(old.len() + replacement.len());
                for &x in &old {
                    if x == g {
                        w.extend_from_slice(&replacement);
                    } else if x == -g {
                        w.extend_from_slice(&inverse);
                    } else {
                        w.push(x);
                    }
                }
                free_reduce(&mut w);
                for &x in &old {
                    if let Some(s) = occ.get_mut(&x.abs()) {
                        s.remove(&j);
                    }
                }
                if !w.is_empty() {
                    for &x in &w {
                        occ.entry(x.abs()).or_default().insert(j);
                    }
                    total_len += w.len();
                    relators[j] = Some(w);
                }
            }
            alive -= 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let relators_left = relators.iter().flatten().count();
    Ok(Pi1Report {
        status: if alive == 0 { Pi1Status::Trivial } else { Pi1Status::Unknown },
        generators_left: alive,
        relators_left,
        passes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex(n: usize, facets: &[Vec<usize>]) -> SimplicialComplex {
        SimplicialComplex::from_facets((0..n).map(|i| i.to_string()).collect(), facets).unwrap()
    }

    #[test]
    fn circle_is_nontrivial() {
        let k = complex(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert_eq!(pi1_triviality(&k).unwrap().status, Pi1Status::Nontrivial);
    }

    #[test]
    fn full_simplex_is_trivial() {
        let k = complex(4, &[vec![0, 1, 2, 3]]);
        assert_eq!(pi1_triviality(&k).unwrap().status, Pi1Status::Trivial);
    }

    #[test]
    fn two_skeleton_of_four_simplex_boundary_is_trivial() {
        let mut tris = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    tris.push(vec![a, b, c]);
                }
            }
        }
        let k = complex(5, &tris);
        let r = pi1_triviality(&k).unwrap();
        assert_eq!(r.status, Pi1Status::Trivial);
        assert_eq!(r.generators_left, 0);
    }

    #[test]
    fn disconnected_input_is_rejected() {
        let k = complex(2, &[]);
        assert!(matches!(pi1_triviality(&k), Err(Error::Disconnected)));
    }

    #[test]
    fn free_reduction() {
        let mut w = vec![1, 2, -2, 3, -1];
        free_reduce(&mut w);
        assert_eq!(w, vec![3]);
    }
}
