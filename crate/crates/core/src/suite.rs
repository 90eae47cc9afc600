//! Named verification suites over the enumerated graphs.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::enumerate::{enumerate_spine_graphs, verify_apartment, verify_fiber, verify_spine_down_set, CanonicalGraph};
use crate::error::{Error, Result};
use crate::graph_posets::{
    build_poset, forest_generator_count, pi1_evidence, verify_core_retractions, verify_cx_sphericity, verify_duality,
    verify_for_homology, verify_poset_relations, verify_sub_sphere, verify_valence_two, verify_x_sphericity,
    GraphPosetKind,
};
use crate::homology::reduced_homology;
use crate::morse::{morse_search, morse_verify, MorseVerdict};
use crate::multigraph::Multigraph;
use crate::report::{Record, SuiteReport, Verification};

/// Default budget for the rank-4 suite.
pub const DEFAULT_DEEP_BUDGET: Duration = Duration::from_secs(600);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Rank2,
    Rank3,
    Rank4Deep,
    Duality,
    Fibers,
    Morse,
    Apartments,
}

impl Suite {
    pub const ALL: [Suite; 7] =
        [Suite::Rank2, Suite::Rank3, Suite::Rank4Deep, Suite::Duality, Suite::Fibers, Suite::Morse, Suite::Apartments];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Rank2 => "rank2",
            Suite::Rank3 => "rank3",
            Suite::Rank4Deep => "rank4-deep",
            Suite::Duality => "duality",
            Suite::Fibers => "fibers",
            Suite::Morse => "morse",
            Suite::Apartments => "apartments",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|k| k.as_str() == s).ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Wall-clock budget for `rank4-deep`.
    pub deep_budget: Duration,
    /// Thread cap; `None` reads `POSETLAB_THREADS`, then uses all cores.
    pub threads: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { deep_budget: DEFAULT_DEEP_BUDGET, threads: None }
    }
}

/// Thread cap from `POSETLAB_THREADS`, if set to a positive integer.
pub fn env_threads() -> Option<usize> {
    std::env::var("POSETLAB_THREADS").ok()?.trim().parse().ok().filter(|&n| n > 0)
}

fn assumptions() -> Vec<String> {
    [
        "distinct forests of a graph give distinct points of its spine down-set",
        "the g*-trivial hypothesis is checked only through its homological shadow",
        "pi_1 is reported as trivial, nontrivial or unknown; unknown downgrades a pass that needs simple connectivity to homology-only",
    ]
    .into_iter()
    .map(String::from)
    .collect()
}

fn record(graph: &str, result: Result<Verification>, check: &str) -> Record {
    let verification = result.unwrap_or_else(|e| {
        let mut v = Verification::new(check);
        v.require(false, || format!("error: {e}"));
        v
    });
    Record { graph: graph.to_owned(), verification }
}

/// Subdivides every edge in turn and checks the valence-two maps.
fn valence_two_records(c: &CanonicalGraph) -> Vec<Record> {
    c.graph
        .edge_ids()
        .map(|e| {
            let check = format!("valence-two:e{e}");
            let result = c.graph.subdivide_edge(e).and_then(|(s, w)| verify_valence_two(&s, w)).map(|mut v| {
                v.check = check.clone();
                v
            });
            record(&c.key, result, &check)
        })
        .collect()
}

fn graph_checks(c: &CanonicalGraph) -> Vec<Record> {
    let g = &c.graph;
    let mut out = vec![
        record(&c.key, verify_x_sphericity(g), "x-sphericity"),
        record(&c.key, verify_cx_sphericity(g), "cx-sphericity"),
        record(&c.key, verify_core_retractions(g), "core-retraction"),
        record(&c.key, verify_duality(g), "duality"),
        record(&c.key, verify_fiber(g, false), "fiber"),
        record(&c.key, verify_fiber(g, true), "fiber-connected"),
        record(&c.key, verify_sub_sphere(g), "sub-sphere"),
        record(&c.key, verify_for_homology(g), "for-homology"),
        record(&c.key, verify_poset_relations(g), "poset-relations"),
        record(&c.key, verify_spine_down_set(g), "spine-down-set"),
    ];
    if !g.has_separating_edge() {
        out.push(record(&c.key, forest_generator_count(g), "forest-generators"));
    }
    out.extend(valence_two_records(c));
    out
}

/// Morse certificate on `C(G)`: found and consistent exactly when `G` has a
/// separating edge; otherwise `C(G)` is not acyclic and none may exist.
pub fn verify_morse(g: &Multigraph) -> Result<Verification> {
    let c = build_poset(g, GraphPosetKind::C)?;
    let h = reduced_homology(&c.order_complex());
    let separating = g.has_separating_edge();
    let mut v = Verification::new("morse");
    v.set_homology(&h);
    v.set("elements", c.len());
    match morse_search(&c.poset, 3)? {
        Some(mf) => {
            let r = morse_verify(&mf);
            let levels = mf.values().iter().collect::<std::collections::BTreeSet<_>>().len();
            v.set("levels", levels);
            v.set("certificate", serde_json::from_str::<serde_json::Value>(&mf.to_json())?);
            v.set("report", &r);
            v.require(r.verdict == MorseVerdict::Contractible, || {
                format!("search returned a {:?} function", r.verdict)
            });
            v.require(r.snf_consistent == Some(true) && h.is_trivial(), || {
                format!("certificate contradicts the computed homology {h}")
            });
            v.require(separating, || "certificate found although G has no separating edge".into());
            v.pi1 = pi1_evidence(&c.poset, &c.order_complex());
        }
        None => {
            v.set("levels", serde_json::Value::Null);
            v.require(!separating, || "no certificate within 3 levels".into());
            v.require(!h.is_trivial(), || format!("no certificate but homology is {h}"));
        }
    }
    Ok(v)
}

/// `X(G) ≃ C(G)` and `cX(G) ≃ cC(G)` let rank-4 graphs be checked on the
/// much smaller core posets.
pub fn verify_core_sphericity(g: &Multigraph) -> Result<Verification> {
    let n = g.rank() as isize;
    let c = build_poset(g, GraphPosetKind::C)?;
    let cc = build_poset(g, GraphPosetKind::CC)?;
    let hc = reduced_homology(&c.order_complex());
    let hcc = reduced_homology(&cc.order_complex());
    let separating = g.has_separating_edge();
    let mut v = Verification::new("core-sphericity");
    v.set_homology(&hc);
    v.set("connected_homology", &hcc);
    v.set("elements", c.len());
    v.set("separating_edge", separating);
    if separating {
        v.require(hc.is_trivial(), || format!("separating edge but C homology is {hc}"));
    } else {
        v.require(hc.concentrated_in(n - 2) && hc.betti(n - 2) >= 1, || {
            format!("expected C homology in degree {} only, got {hc}", n - 2)
        });
    }
    v.require(hcc.concentrated_in(n - 2), || format!("expected cC homology in degree {} only, got {hcc}", n - 2));
    Ok(v)
}

fn per_graph<F>(graphs: &[CanonicalGraph], f: F) -> Vec<Record>
where
    F: Fn(&CanonicalGraph) -> Vec<Record> + Sync + Send,
{
    graphs.par_iter().flat_map_iter(f).collect()
}

fn graphs_up_to_three() -> Result<Vec<CanonicalGraph>> {
    let mut all = enumerate_spine_graphs(2)?;
    all.extend(enumerate_spine_graphs(3)?);
    Ok(all)
}

fn run_records(suite: Suite, opts: &SuiteOptions) -> Result<Vec<Record>> {
    Ok(match suite {
        Suite::Rank2 => per_graph(&enumerate_spine_graphs(2)?, graph_checks),
        Suite::Rank3 => per_graph(&enumerate_spine_graphs(3)?, graph_checks),
        Suite::Duality => {
            per_graph(&graphs_up_to_three()?, |c| vec![record(&c.key, verify_duality(&c.graph), "duality")])
        }
        Suite::Fibers => per_graph(&graphs_up_to_three()?, |c| {
            vec![
                record(&c.key, verify_fiber(&c.graph, false), "fiber"),
                record(&c.key, verify_fiber(&c.graph, true), "fiber-connected"),
                record(&c.key, verify_spine_down_set(&c.graph), "spine-down-set"),
            ]
        }),
        Suite::Morse => per_graph(&graphs_up_to_three()?, |c| vec![record(&c.key, verify_morse(&c.graph), "morse")]),
        Suite::Apartments => {
            (2..=6).into_par_iter().map(|r| record(&format!("basis-{r}"), verify_apartment(r), "apartment")).collect()
        }
        Suite::Rank4Deep => {
            let start = Instant::now();
            let budget = opts.deep_budget;
            per_graph(&enumerate_spine_graphs(4)?, |c| {
                if start.elapsed() > budget {
                    let mut v = Verification::new("core-sphericity");
                    v.require(false, || format!("time budget of {}s exhausted", budget.as_secs()));
                    return vec![Record { graph: c.key.clone(), verification: v }];
                }
                vec![
                    record(&c.key, verify_core_sphericity(&c.graph), "core-sphericity"),
                    record(&c.key, verify_cx_sphericity(&c.graph), "cx-sphericity"),
                ]
            })
        }
    })
}

/// Runs a suite on a pool capped by `opts.threads` or `POSETLAB_THREADS`.
/// Records are sorted, so the serialized report does not depend on the
/// thread count.
pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let threads = opts.threads.or_else(env_threads).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    let records = pool.install(|| run_records(suite, opts))?;
    let mut report = SuiteReport::new(suite.as_str(), assumptions(), records);
    report.wall_time = start.elapsed();
    Ok(report)
}
