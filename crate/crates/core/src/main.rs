use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use posetlab::enumerate::{self, resolve_graph};
use posetlab::graph_posets::{self, build_poset, GraphPosetKind};
use posetlab::homology::{reduced_cohomology, reduced_homology};
use posetlab::morse::{morse_search, morse_verify, MorseFunction, MorseVerdict};
use posetlab::poset::FinitePoset;
use posetlab::report::Verification;
use posetlab::suite::{env_threads, run_suite, Suite, SuiteOptions};
use posetlab::Error;

#[derive(Parser)]
#[command(
    name = "posetlab",
    version,
    about = "Subgraph posets of multigraphs and the homology of their order complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Write to a file instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct GraphArg {
    /// Graph alias (rose2, rose3, theta, dumbbell), canonical key, or JSON file.
    #[arg(long, short)]
    graph: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Sub,
    For,
    X,
    C,
    Cx,
    Cc,
}

impl From<KindArg> for GraphPosetKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Sub => GraphPosetKind::Sub,
            KindArg::For => GraphPosetKind::For,
            KindArg::X => GraphPosetKind::X,
            KindArg::C => GraphPosetKind::C,
            KindArg::Cx => GraphPosetKind::CX,
            KindArg::Cc => GraphPosetKind::CC,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the spine graphs of a rank up to isomorphism.
    Graphs {
        #[arg(long)]
        rank: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Build one of the subgraph posets of a graph.
    Poset {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Graphviz Hasse diagram.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Reduced homology of an order complex.
    Homology {
        #[arg(long, required_unless_present = "poset", conflicts_with = "poset")]
        graph: Option<String>,
        #[arg(long, value_enum, requires = "graph")]
        kind: Option<KindArg>,
        /// A poset JSON file instead of a graph poset.
        #[arg(long)]
        poset: Option<PathBuf>,
        /// Also report cohomology.
        #[arg(long)]
        cohomology: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Run one verifier on a graph.
    Verify {
        #[arg(value_enum)]
        check: CheckArg,
        #[command(flatten)]
        graph: GraphArg,
        /// Valence-two vertex (valence2 only).
        #[arg(long)]
        vertex: Option<u32>,
        #[command(flatten)]
        out: Output,
    },
    /// Alexander duality between For(G) and X(G).
    Duality {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        out: Output,
    },
    /// Local fibre poset against C(G) or cC(G).
    Fiber {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        connected: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Morse functions with contractible descending links.
    Morse {
        #[command(subcommand)]
        action: MorseCommand,
    },
    /// Boolean-lattice apartment of a basis.
    Apartment {
        #[arg(long)]
        rank: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run a verification suite.
    Report {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        /// Required for rank4-deep.
        #[arg(long)]
        deep: bool,
        /// Time budget in seconds for rank4-deep.
        #[arg(long, default_value_t = 600)]
        budget: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum MorseCommand {
    /// Classify the descending links of a given function.
    Verify {
        #[arg(long)]
        poset: PathBuf,
        /// JSON object from element labels to integers or "p/q" strings.
        #[arg(long)]
        values: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Search for a certificate with at most three levels.
    Search {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, value_enum, default_value = "c")]
        kind: KindArg,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckArg {
    X,
    Cx,
    Retraction,
    Valence2,
    Generators,
    Sub,
    For,
    Relations,
    Spine,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failed run: usage errors exit with 2, everything else with 1.
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::UnknownVertex(_)
            | Error::UnknownEdge(_)
            | Error::UnknownElement(_)
            | Error::Io(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn emit(out: &Output, text: &str) -> Result<(), Failure> {
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| Failure::Runtime(e.to_string()))
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn show_verification(v: &Verification, out: &Output) -> Outcome {
    let text = if out.json {
        pretty(v)
    } else {
        let mut s = format!("{} {} betti={:?}", v.check, v.status.as_str(), v.betti);
        if let Some(p) = v.pi1 {
            s.push_str(&format!(" pi1={p:?}"));
        }
        s.push('\n');
        for f in &v.failures {
            s.push_str(&format!("  ! {f}\n"));
        }
        s
    };
    emit(out, &text)?;
    Ok(!v.is_failure())
}

fn read_poset(path: &PathBuf) -> Result<FinitePoset, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(FinitePoset::from_json(&text)?)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Graphs { rank, out } => {
            let graphs = enumerate::enumerate_spine_graphs(rank).map_err(|e| Failure::Usage(e.to_string()))?;
            let text = if out.json {
                pretty(&graphs)
            } else {
                graphs
                    .iter()
                    .map(|c| {
                        let sep = if c.graph.has_separating_edge() { " separating" } else { "" };
                        format!("{}{sep}\n", c.key)
                    })
                    .collect()
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Poset { graph, kind, dot, out } => {
            let g = resolve_graph(&graph.graph)?;
            let p = build_poset(&g, kind.into())?;
            let text = if dot {
                p.poset.to_dot()
            } else if out.json {
                let mut s = p.poset.to_json();
                s.push('\n');
                s
            } else {
                let mut s = format!("{}({}): {} elements\n", GraphPosetKind::from(kind), graph.graph, p.len());
                for l in p.poset.labels() {
                    s.push_str(&format!("  {l}\n"));
                }
                s
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Homology { graph, kind, poset, cohomology, out } => {
            let p = match (graph, poset) {
                (Some(g), _) => {
                    let kind = kind.ok_or_else(|| Failure::Usage("--kind is required with --graph".into()))?;
                    build_poset(&resolve_graph(&g)?, kind.into())?.poset
                }
                (None, Some(path)) => read_poset(&path)?,
                (None, None) => return Err(Failure::Usage("give --graph or --poset".into())),
            };
            let k = p.order_complex();
            let h = reduced_homology(&k);
            let co = cohomology.then(|| reduced_cohomology(&k));
            let text = if out.json {
                let mut m = serde_json::Map::new();
                m.insert("f_vector".into(), serde_json::to_value(k.f_vector()).expect("serializable"));
                m.insert("homology".into(), serde_json::to_value(&h).expect("serializable"));
                if let Some(c) = &co {
                    m.insert("cohomology".into(), serde_json::to_value(c).expect("serializable"));
                }
                pretty(&m)
            } else {
                let mut s = format!("f-vector {:?}\nhomology {h}\n", k.f_vector());
                if let Some(c) = &co {
                    s.push_str(&format!("cohomology {c}\n"));
                }
                s
            };
            emit(&out, &text)?;
            Ok(true)
        }
        Command::Verify { check, graph, vertex, out } => {
            let g = resolve_graph(&graph.graph)?;
            let v = match check {
                CheckArg::X => graph_posets::verify_x_sphericity(&g)?,
                CheckArg::Cx => graph_posets::verify_cx_sphericity(&g)?,
                CheckArg::Retraction => graph_posets::verify_core_retractions(&g)?,
                CheckArg::Valence2 => {
                    let vertex = vertex.ok_or_else(|| Failure::Usage("valence2 needs --vertex".into()))?;
                    graph_posets::verify_valence_two(&g, vertex)?
                }
                CheckArg::Generators => graph_posets::forest_generator_count(&g)?,
                CheckArg::Sub => graph_posets::verify_sub_sphere(&g)?,
                CheckArg::For => graph_posets::verify_for_homology(&g)?,
                CheckArg::Relations => graph_posets::verify_poset_relations(&g)?,
                CheckArg::Spine => enumerate::verify_spine_down_set(&g)?,
            };
            show_verification(&v, &out)
        }
        Command::Duality { graph, out } => {
            let g = resolve_graph(&graph.graph)?;
            show_verification(&graph_posets::verify_duality(&g)?, &out)
        }
        Command::Fiber { graph, connected, out } => {
            let g = resolve_graph(&graph.graph)?;
            show_verification(&enumerate::verify_fiber(&g, connected)?, &out)
        }
        Command::Apartment { rank, out } => {
            let v = enumerate::verify_apartment(rank).map_err(|e| Failure::Usage(e.to_string()))?;
            show_verification(&v, &out)
        }
        Command::Morse { action } => match action {
            MorseCommand::Verify { poset, values, out } => {
                let p = read_poset(&poset)?;
                let text = std::fs::read_to_string(&values)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", values.display())))?;
                let mf = MorseFunction::from_json_values(p, &text)?;
                let r = morse_verify(&mf);
                let body = if out.json {
                    pretty(&r)
                } else {
                    let mut s = format!("verdict {:?}, cone point {:?}\n", r.verdict, r.cone_point);
                    for l in &r.links {
                        s.push_str(&format!(
                            "  {} @ {}: {:?} ({} elements)\n",
                            l.element, l.value, l.verdict, l.link_size
                        ));
                    }
                    s
                };
                emit(&out, &body)?;
                Ok(r.verdict != MorseVerdict::Obstructed)
            }
            MorseCommand::Search { graph, kind, levels, out } => {
                let g = resolve_graph(&graph.graph)?;
                let p = build_poset(&g, kind.into())?;
                let found = morse_search(&p.poset, levels).map_err(|e| Failure::Usage(e.to_string()))?;
                let body = match (&found, out.json) {
                    (Some(mf), true) => {
                        let mut s = mf.to_json();
                        s.push('\n');
                        s
                    }
                    (Some(mf), false) => {
                        (0..p.len()).map(|i| format!("{} {}\n", p.poset.label(i), mf.value(i))).collect()
                    }
                    (None, true) => "null\n".to_owned(),
                    (None, false) => "no certificate\n".to_owned(),
                };
                emit(&out, &body)?;
                Ok(found.is_some())
            }
        },
        Command::Report { suite, deep, budget, out } => {
            if suite == Suite::Rank4Deep && !deep {
                return Err(Failure::Usage("rank4-deep needs --deep".into()));
            }
            let opts = SuiteOptions { deep_budget: Duration::from_secs(budget), threads: env_threads() };
            let report = run_suite(suite, &opts)?;
            let text = if out.json { report.to_json() } else { report.to_text() };
            emit(&out, &text)?;
            eprintln!("{}: {:.2?}", suite, report.wall_time);
            Ok(!report.any_failed())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
