//! Level functions on posets whose descending links are contractible, used
//! as certificates that an order complex is contractible.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::{pi1_triviality, reduced_homology, Pi1Status, SimplicialComplex};
use crate::poset::FinitePoset;

/// Largest poset `morse_search` accepts.
pub const MAX_SEARCH_SIZE: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct MorseFunction {
    poset: FinitePoset,
    values: Vec<Rational64>,
}

impl MorseFunction {
    pub fn new(poset: FinitePoset, values: Vec<Rational64>) -> Result<Self> {
        if values.len() != poset.len() {
            return Err(Error::Precondition(format!(
                "{} values for a poset of {} elements",
                values.len(),
                poset.len()
            )));
        }
        Ok(MorseFunction { poset, values })
    }

    /// Integer levels, one per element.
    pub fn from_levels(poset: FinitePoset, levels: &[i64]) -> Result<Self> {
        Self::new(poset, levels.iter().map(|&l| Rational64::from_integer(l)).collect())
    }

    /// Reads values from a JSON object mapping element labels to integers or
    /// `"p/q"` strings. Every element needs a value.
    pub fn from_json_values(poset: FinitePoset, text: &str) -> Result<Self> {
        let raw: BTreeMap<String, serde_json::Value> = serde_json::from_str(text)?;
        let mut values = vec![None; poset.len()];
        for (label, v) in raw {
            let i = poset.index_of(&label)?;
            let r = match &v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(Rational64::from_integer)
                    .ok_or_else(|| Error::Parse(format!("value {n} of {label} is not an integer or fraction")))?,
                serde_json::Value::String(s) => s
                    .parse::<Rational64>()
                    .map_err(|_| Error::Parse(format!("value '{s}' of {label} is not a fraction")))?,
                other => return Err(Error::Parse(format!("value {other} of {label} is not a number"))),
            };
            values[i] = Some(r);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::Parse(format!("no value for {}", poset.label(i)))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(poset, values)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn value(&self, x: usize) -> Rational64 {
        self.values[x]
    }

    pub fn values(&self) -> &[Rational64] {
        &self.values
    }

    /// Labels with their values as strings (`"1"`, `"1/2"`).
    pub fn to_json(&self) -> String {
        let m: BTreeMap<&str, String> =
            (0..self.poset.len()).map(|i| (self.poset.label(i), self.values[i].to_string())).collect();
        serde_json::to_string_pretty(&m).expect("values serialize")
    }

    fn descending(&self, x: usize) -> Vec<usize> {
        (0..self.poset.len())
            .filter(|&y| y != x && self.poset.comparable(x, y) && self.values[y] < self.values[x])
            .collect()
    }

    fn minimum(&self) -> Option<Rational64> {
        self.values.iter().min().copied()
    }
}

/// Full subcomplex of the order complex on the elements comparable to `x`
/// with strictly smaller value.
pub fn descending_link(mf: &MorseFunction, x: usize) -> Result<SimplicialComplex> {
    if x >= mf.poset.len() {
        return Err(Error::UnknownElement(x.to_string()));
    }
    Ok(mf.poset.induced(&mf.descending(x)).order_complex())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkVerdict {
    /// Cone point, or trivial homology together with trivial `pi_1`.
    Contractible,
    HomologyTrivial,
    /// Empty, or with non-trivial homology.
    Obstructed,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkAudit {
    pub element: String,
    pub value: String,
    pub link_size: usize,
    pub verdict: LinkVerdict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MorseVerdict {
    /// Sublevel set at the minimum is a cone and every link is contractible.
    Contractible,
    /// As above, but some link is only known to be acyclic.
    HomologyOnly,
    Obstructed,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorseReport {
    pub verdict: MorseVerdict,
    /// No element lies above the minimum level.
    pub vacuous: bool,
    pub sublevel: Vec<String>,
    /// Element of the minimum sublevel set comparable to all of it, making
    /// that set a cone (as a star always is).
    pub cone_point: Option<String>,
    /// Levels above the minimum that contain comparable elements.
    pub non_antichain_levels: Vec<String>,
    pub links: Vec<LinkAudit>,
    /// For a contractible verdict: whether direct homology agrees.
    pub snf_consistent: Option<bool>,
}

impl MorseReport {
    pub fn certifies_contractible(&self) -> bool {
        self.verdict == MorseVerdict::Contractible
    }
}

fn classify(p: &FinitePoset, members: &[usize]) -> LinkVerdict {
    if members.is_empty() {
        return LinkVerdict::Obstructed;
    }
    let sub = p.induced(members);
    if sub.cone_point().is_some() {
        return LinkVerdict::Contractible;
    }
    let k = sub.order_complex();
    if !reduced_homology(&k).is_trivial() {
        return LinkVerdict::Obstructed;
    }
    match pi1_triviality(&k) {
        Ok(r) if r.status == Pi1Status::Trivial => LinkVerdict::Contractible,
        _ => LinkVerdict::HomologyTrivial,
    }
}

fn star(p: &FinitePoset, c: usize) -> Vec<usize> {
    (0..p.len()).filter(|&y| p.comparable(c, y)).collect()
}

/// Classifies every descending link above the minimum level.
pub fn morse_verify(mf: &MorseFunction) -> MorseReport {
    let p = &mf.poset;
    let Some(min) = mf.minimum() else {
        return MorseReport {
            verdict: MorseVerdict::Obstructed,
            vacuous: true,
            sublevel: Vec::new(),
            cone_point: None,
            non_antichain_levels: Vec::new(),
            links: Vec::new(),
            snf_consistent: None,
        };
    };
    let sublevel: Vec<usize> = (0..p.len()).filter(|&x| mf.values[x] == min).collect();
    let cone_point = sublevel.iter().copied().find(|&c| sublevel.iter().all(|&y| p.comparable(c, y)));

    let mut levels: BTreeMap<Rational64, Vec<usize>> = BTreeMap::new();
    for x in 0..p.len() {
        if mf.values[x] != min {
            levels.entry(mf.values[x]).or_default().push(x);
        }
    }
    let non_antichain_levels: Vec<String> = levels
        .iter()
        .filter(|(_, xs)| xs.iter().any(|&a| xs.iter().any(|&b| a != b && p.comparable(a, b))))
        .map(|(v, _)| v.to_string())
        .collect();

    let above: Vec<usize> = levels.values().flatten().copied().collect();
    let mut links: Vec<LinkAudit> = above
        .par_iter()
        .map(|&x| {
            let members = mf.descending(x);
            LinkAudit {
                element: p.label(x).to_owned(),
                value: mf.values[x].to_string(),
                link_size: members.len(),
                verdict: classify(p, &members),
            }
        })
        .collect();
    links.sort_by(|a, b| (&a.value, &a.element).cmp(&(&b.value, &b.element)));

    let worst = links.iter().map(|l| l.verdict).fold(LinkVerdict::Contractible, |acc, v| match (acc, v) {
        (LinkVerdict::Obstructed, _) | (_, LinkVerdict::Obstructed) => LinkVerdict::Obstructed,
        (LinkVerdict::HomologyTrivial, _) | (_, LinkVerdict::HomologyTrivial) => LinkVerdict::HomologyTrivial,
        _ => LinkVerdict::Contractible,
    });
    let shaped = cone_point.is_some() && non_antichain_levels.is_empty();
    let verdict = match (shaped, worst) {
        (true, LinkVerdict::Contractible) => MorseVerdict::Contractible,
        (true, LinkVerdict::HomologyTrivial) => MorseVerdict::HomologyOnly,
        _ => MorseVerdict::Obstructed,
    };
    let snf_consistent =
        (verdict != MorseVerdict::Obstructed).then(|| reduced_homology(&p.order_complex()).is_trivial());
    MorseReport {
        verdict,
        vacuous: above.is_empty(),
        sublevel: sublevel.iter().map(|&x| p.label(x).to_owned()).collect(),
        cone_point: cone_point.map(|c| p.label(c).to_owned()),
        non_antichain_levels,
        links,
        snf_consistent,
    }
}

/// Looks for a function with at most `max_levels` levels, level 0 the star of
/// some element and every higher level an antichain, whose descending links
/// are all contractible. Centres with larger stars are tried first, ties in
/// element order; the first that works wins.
pub fn morse_search(p: &FinitePoset, max_levels: usize) -> Result<Option<MorseFunction>> {
    if !(1..=3).contains(&max_levels) {
        return Err(Error::Precondition(format!("max_levels {max_levels} is outside 1..=3")));
    }
    if p.len() > MAX_SEARCH_SIZE {
        return Err(Error::Precondition(format!("poset of {} elements exceeds {MAX_SEARCH_SIZE}", p.len())));
    }
    let mut centres: Vec<usize> = (0..p.len()).collect();
    centres.sort_by_key(|&c| (std::cmp::Reverse(star(p, c).len()), c));
    let found = centres.into_par_iter().find_map_first(|c| levels_around(p, c, max_levels));
    found.map(|levels| MorseFunction::from_levels(p.clone(), &levels)).transpose()
}

fn levels_around(p: &FinitePoset, c: usize, max_levels: usize) -> Option<Vec<i64>> {
    let n = p.len();
    let mut level = vec![-1i64; n];
    for y in star(p, c) {
        level[y] = 0;
    }
    let rest: Vec<usize> = (0..n).filter(|&x| level[x] < 0).collect();
    if rest.is_empty() {
        return Some(level);
    }
    if max_levels < 2 {
        return None;
    }

    // Components of the comparability graph on the rest. A level above 0 is
    // an antichain, so each component gets one of at most two 2-colourings,
    // and links only see the star and their own component.
    let mut comp = vec![usize::MAX; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &s in &rest {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let a = members[i];
            for &b in &rest {
                if comp[b] == usize::MAX && p.comparable(a, b) {
                    comp[b] = id;
                    members.push(b);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        components.push(members);
    }

    for members in &components {
        let mut side = vec![-1i64; n];
        side[members[0]] = 0;
        let mut queue = vec![members[0]];
        while let Some(a) = queue.pop() {
            for &b in members {
                if b != a && p.comparable(a, b) {
                    if side[b] < 0 {
                        side[b] = 1 - side[a];
                        queue.push(b);
                    } else if side[b] == side[a] {
                        return None;
                    }
                }
            }
        }
        let uses_two = members.iter().any(|&m| side[m] == 1);
        if uses_two && max_levels < 3 {
            return None;
        }
        let choices: &[i64] = if uses_two { &[0, 1] } else { &[0] };
        let ok = choices.iter().any(|&flip| {
            for &m in members {
                level[m] = 1 + (side[m] ^ flip);
            }
            members.iter().all(|&m| {
                let lower: Vec<usize> =
                    (0..n).filter(|&y| y != m && level[y] >= 0 && level[y] < level[m] && p.comparable(m, y)).collect();
                classify(p, &lower) == LinkVerdict::Contractible
            })
        });
        if !ok {
            return None;
        }
    }
    Some(level)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph_posets::{build_poset, GraphPosetKind};
    use crate::multigraph::Multigraph;

    fn chain(n: usize) -> FinitePoset {
        FinitePoset::from_relation((0..n).map(|i| i.to_string()).collect(), |i, j| i <= j).unwrap()
    }

    #[test]
    fn links_of_a_chain() {
        let mf = MorseFunction::from_levels(chain(4), &[0, 1, 2, 3]).unwrap();
        assert_eq!(descending_link(&mf, 0).unwrap().dim(), -1);
        assert_eq!(descending_link(&mf, 3).unwrap().vertex_count(), 3);
        assert!(descending_link(&mf, 9).is_err());
    }

    #[test]
    fn constant_function_is_vacuous() {
        let mf = MorseFunction::from_levels(chain(3), &[0, 0, 0]).unwrap();
        let r = morse_verify(&mf);
        assert!(r.vacuous);
        assert_eq!(r.sublevel.len(), 3);
        assert!(r.certifies_contractible());
        assert_eq!(r.snf_consistent, Some(true));
    }

    #[test]
    fn dumbbell_with_loops_raised() {
        let c = build_poset(&Multigraph::dumbbell(), GraphPosetKind::C).unwrap();
        // elements {0},{2},{0,2}; the two loops above the disconnected top
        let mf = MorseFunction::from_levels(c.poset.clone(), &[1, 1, 0]).unwrap();
        let r = morse_verify(&mf);
        assert!(r.links.iter().all(|l| l.verdict == LinkVerdict::Contractible && l.link_size == 1));
        assert!(r.certifies_contractible());
        let found = morse_search(&c.poset, 3).unwrap().unwrap();
        assert!(found.values().iter().all(|v| *v == Rational64::from_integer(0)));
    }

    #[test]
    fn theta_has_no_certificate() {
        let c = build_poset(&Multigraph::theta(), GraphPosetKind::C).unwrap();
        assert!(morse_search(&c.poset, 3).unwrap().is_none());
        let mf = MorseFunction::from_levels(c.poset.clone(), &[0, 1, 1]).unwrap();
        let r = morse_verify(&mf);
        assert_eq!(r.verdict, MorseVerdict::Obstructed);
        assert!(r.links.iter().all(|l| l.verdict == LinkVerdict::Obstructed));
    }

    #[test]
    fn tied_comparables_are_flagged() {
        let mf = MorseFunction::from_levels(chain(3), &[0, 1, 1]).unwrap();
        let r = morse_verify(&mf);
        assert_eq!(r.non_antichain_levels, vec!["1".to_string()]);
        assert_eq!(r.verdict, MorseVerdict::Obstructed);
    }

    #[test]
    fn values_from_json() {
        let mf = MorseFunction::from_json_values(chain(2), r#"{"0": 0, "1": "1/2"}"#).unwrap();
        assert_eq!(mf.value(1), Rational64::new(1, 2));
        assert!(MorseFunction::from_json_values(chain(2), r#"{"0": 0}"#).is_err());
        assert!(morse_search(&chain(2), 4).is_err());
    }
}
