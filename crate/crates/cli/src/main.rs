//! `vedom`: command-line front end.
//!
//! Exit codes: 0 success, 1 negative answer to a query, 2 invalid input or a
//! cap exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use vedom::family::{
    atom_centers, generate_family_member, recognize, AtomParams, FamilyCertificate, Recognition,
    RecognizeConfig,
};
use vedom::graph::{canonical_form, enumerate_trees, parse_graph, Graph, TreeEnumConfig};
use vedom::lewis::{audit, search_counterexamples, AuditReport};
use vedom::oracles::{
    gamma_opve_bruteforce, gamma_ve_bruteforce, i_ve_bruteforce, is_independent_ve_dominating,
    weighted_d3dom_bruteforce, OracleConfig, OracleError, Weight, WeightedInstance,
};
use vedom::reduction::{
    build_clique_tree, crosscheck, graph_from_clique_tree, parse_3dm, parse_sidecar, sidecar_json,
    verify_path_property,
};
use vedom::SolveResult;

const AFTER_HELP: &str = "Exit status: 0 on success, 1 when a query answers negatively, 2 on invalid input or an exceeded cap.";

#[derive(Parser)]
#[command(name = "vedom", version, about = "Vertex-edge domination toolkit", after_help = AFTER_HELP)]
struct Cli {
    #[command(flatten)]
    caps: Caps,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Caps {
    /// Largest instance handed to the exhaustive oracles.
    #[arg(long, global = true, env = "VEDOM_ORACLE_CAP", default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=64))]
    oracle_cap: u64,
    /// Largest n for tree enumeration.
    #[arg(long, global = true, env = "VEDOM_ENUM_CAP", default_value_t = 18, value_parser = clap::value_parser!(u64).range(1..))]
    enum_cap: u64,
    /// Attempts per join when generating family members.
    #[arg(long, global = true, env = "VEDOM_RETRY_BUDGET", default_value_t = 2000, value_parser = clap::value_parser!(u64).range(1..))]
    retries: u64,
}

impl Caps {
    fn oracle(&self) -> OracleConfig {
        OracleConfig::with_cap(self.oracle_cap as usize)
    }

    fn enumeration(&self) -> TreeEnumConfig {
        TreeEnumConfig {
            labeled_cap: TreeEnumConfig::default()
                .labeled_cap
                .min(self.enum_cap as usize),
            unlabeled_cap: self.enum_cap as usize,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct GraphInput {
    /// Graph file (edge list or JSON); `-` reads standard input.
    #[arg(
        long = "in",
        value_name = "PATH",
        conflicts_with = "inline",
        required_unless_present = "inline"
    )]
    input: Option<PathBuf>,
    /// Inline edge list with `;` or `,` between edges, e.g. "0 1;1 2".
    #[arg(long, value_name = "EDGES")]
    inline: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Minimum ve-dominating set of a block graph in linear time.
    #[command(after_help = AFTER_HELP)]
    SolveBlock {
        #[command(flatten)]
        graph: GraphInput,
        /// Include the reduction trace.
        #[arg(long)]
        trace: bool,
    },
    /// Minimum independent ve-dominating set of a block graph.
    #[command(after_help = AFTER_HELP)]
    SolveBlockIndependent {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Exhaustive oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// The 3-dimensional matching gadget.
    #[command(name = "reduce-3dm", subcommand)]
    Reduce3dm(ReduceCommand),
    /// Trees with equal ve-domination and independent ve-domination numbers.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Audit of the subdivide-and-weight reduction for trees.
    #[command(subcommand)]
    AuditLewis(AuditCommand),
    /// Every tree on n vertices, one per line.
    #[command(after_help = AFTER_HELP)]
    EnumTrees {
        #[arg(long)]
        n: usize,
        /// All labeled trees instead of one per isomorphism class.
        #[arg(long)]
        labeled: bool,
    },
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Minimum ve-dominating set.
    #[command(after_help = AFTER_HELP)]
    GammaVe {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Minimum independent ve-dominating set.
    #[command(after_help = AFTER_HELP)]
    IVe {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Minimum optional ve-dominating set.
    #[command(after_help = AFTER_HELP)]
    Opve {
        #[command(flatten)]
        graph: GraphInput,
        /// Vertices that must be in the set (l = 1).
        #[arg(long, value_delimiter = ',')]
        forced: Vec<usize>,
        /// Edges `u-v` that need not be dominated (m = 0).
        #[arg(long, value_delimiter = ',', value_parser = parse_pair)]
        free_edge: Vec<(usize, usize)>,
    },
    /// Minimum distance-3 dominating set with forbidden vertices; exit 1 when
    /// infeasible.
    #[command(after_help = AFTER_HELP)]
    D3dom {
        #[command(flatten)]
        graph: GraphInput,
        /// Vertices that may not be chosen.
        #[arg(long, value_delimiter = ',')]
        forbid: Vec<usize>,
        /// Vertices to dominate; all when omitted.
        #[arg(long, value_delimiter = ',')]
        targets: Option<Vec<usize>>,
    },
}

#[derive(Subcommand)]
enum ReduceCommand {
    /// Write the gadget edge list and its JSON sidecar.
    #[command(after_help = AFTER_HELP)]
    Build {
        /// Instance JSON: {"q": .., "triples": [[r, s, t], ..]}, 1-based.
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Sidecar path; defaults to the output path with `.json` appended.
        #[arg(long, value_name = "PATH")]
        sidecar: Option<PathBuf>,
    },
    /// Check the path property of a sidecar's clique tree; exit 1 when it fails.
    #[command(after_help = AFTER_HELP)]
    Verify {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
    },
    /// Compare the gadget's ve-domination number with 3DM; exit 1 on
    /// disagreement.
    #[command(after_help = AFTER_HELP)]
    Crosscheck {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Generate a member with k atoms.
    #[command(after_help = AFTER_HELP)]
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        min_atom: usize,
        #[arg(long, default_value_t = 9)]
        max_atom: usize,
        /// Upper bound on the member's vertex count.
        #[arg(long)]
        max_total: Option<usize>,
        /// Write the tree as an edge list.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Write the certificate JSON.
        #[arg(long, value_name = "PATH")]
        cert: Option<PathBuf>,
    },
    /// Replay a certificate and list its atom centers.
    #[command(after_help = AFTER_HELP)]
    Centers {
        #[arg(long, value_name = "PATH")]
        cert: PathBuf,
    },
    /// Decide membership; exit 1 when the tree is not certified.
    #[command(after_help = AFTER_HELP)]
    Recognize {
        #[command(flatten)]
        graph: GraphInput,
    },
}

#[derive(Subcommand)]
enum AuditCommand {
    /// Audit one tree; exit 0 when it is a counterexample, 1 otherwise.
    #[command(after_help = AFTER_HELP)]
    Single {
        #[command(flatten)]
        graph: GraphInput,
    },
    /// Audit every tree with 3 <= n <= n-max; exit 0 when a counterexample is
    /// found, 1 when none is.
    #[command(after_help = AFTER_HELP)]
    Search {
        #[arg(long, default_value_t = 12)]
        n_max: usize,
    },
}

enum Outcome {
    Yes,
    No,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Run = Result<Outcome, Failure>;

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s
        .split_once('-')
        .ok_or_else(|| format!("expected u-v, got {s:?}"))?;
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((num(u)?, num(v)?))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
    }
}

/// A graph with its dense ids and the input ids they stand for.
struct Loaded {
    graph: Graph,
    ids: Vec<usize>,
}

impl Loaded {
    fn dense(&self, id: usize) -> Result<usize, Failure> {
        self.ids
            .iter()
            .position(|&x| x == id)
            .ok_or_else(|| Failure(format!("vertex {id} is not in the graph")))
    }

    fn original(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&v| self.ids[v]).collect();
        out.sort_unstable();
        out
    }
}

fn load(input: &GraphInput) -> Result<Loaded, Failure> {
    let text = match (&input.input, &input.inline) {
        (Some(path), _) => read_text(path)?,
        (None, Some(inline)) => inline.replace([';', ','], "\n"),
        (None, None) => unreachable!("clap requires one"),
    };
    let parsed = parse_graph(&text)?;
    Ok(Loaded {
        graph: parsed.graph,
        ids: parsed.ids,
    })
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{}", text()),
    }
}

fn solution(r: &SolveResult, g: &Loaded) -> Value {
    json!({
        "variant": r.variant,
        "objective": r.objective,
        "cardinality": r.cardinality,
        "set": g.original(&r.set),
    })
}

fn solution_text(r: &SolveResult, g: &Loaded) -> String {
    let set: Vec<String> = g.original(&r.set).iter().map(|v| v.to_string()).collect();
    format!("objective {}\nset {}", r.objective, set.join(" "))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Run {
    let format = cli.format;
    let caps = cli.caps;
    match cli.command {
        Command::SolveBlock { graph, trace } => {
            let g = load(&graph)?;
            let (r, tr) = vedom::block::solve(&g.graph)?;
            let mut v = solution(&r, &g);
            if trace {
                v["trace"] = serde_json::to_value(&tr)?;
            }
            emit(format, &v, || solution_text(&r, &g));
            Ok(Outcome::Yes)
        }
        Command::SolveBlockIndependent { graph } => {
            let g = load(&graph)?;
            let r = vedom::block::solve_independent(&g.graph)?;
            emit(format, &solution(&r, &g), || solution_text(&r, &g));
            Ok(Outcome::Yes)
        }
        Command::Oracle(cmd) => run_oracle(cmd, format, &caps),
        Command::Reduce3dm(cmd) => run_reduce(cmd, format, &caps),
        Command::Family(cmd) => run_family(cmd, format, &caps),
        Command::AuditLewis(cmd) => run_audit(cmd, format, &caps),
        Command::EnumTrees { n, labeled } => {
            let trees = enumerate_trees(n, !labeled, &caps.enumeration())?;
            for t in &trees {
                let line =
                    json!({ "n": t.n(), "edges": t.edges(), "canonical": canonical_form(t)?.0 });
                emit(format, &line, || {
                    let edges: Vec<String> =
                        t.edges().iter().map(|(u, v)| format!("{u}-{v}")).collect();
                    edges.join(" ")
                });
            }
            if format == Format::Text {
                eprintln!("{} trees on {n} vertices", trees.len());
            }
            Ok(Outcome::Yes)
        }
    }
}

fn run_oracle(cmd: OracleCommand, format: Format, caps: &Caps) -> Run {
    let cfg = caps.oracle();
    let (g, r) = match cmd {
        OracleCommand::GammaVe { graph } => {
            let g = load(&graph)?;
            let r = gamma_ve_bruteforce(&g.graph, &cfg)?;
            (g, r)
        }
        OracleCommand::IVe { graph } => {
            let g = load(&graph)?;
            let r = i_ve_bruteforce(&g.graph, &cfg)?;
            (g, r)
        }
        OracleCommand::Opve {
            graph,
            forced,
            free_edge,
        } => {
            let g = load(&graph)?;
            let mut l = vec![false; g.graph.n()];
            for v in forced {
                l[g.dense(v)?] = true;
            }
            let mut m = vec![true; g.graph.m()];
            for (u, v) in free_edge {
                let e = g
                    .graph
                    .edge_id(g.dense(u)?, g.dense(v)?)
                    .ok_or_else(|| Failure(format!("{u}-{v} is not an edge")))?;
                m[e] = false;
            }
            let r = gamma_opve_bruteforce(&g.graph, &l, &m, &cfg)?;
            (g, r)
        }
        OracleCommand::D3dom {
            graph,
            forbid,
            targets,
        } => {
            let g = load(&graph)?;
            let mut w = WeightedInstance::unit(g.graph.clone());
            for v in forbid {
                w.weight[g.dense(v)?] = Weight::Forbidden;
            }
            let targets = match targets {
                Some(ts) => ts
                    .into_iter()
                    .map(|v| g.dense(v))
                    .collect::<Result<Vec<_>, _>>()?,
                None => (0..g.graph.n()).collect(),
            };
            match weighted_d3dom_bruteforce(&w, &targets, &cfg) {
                Ok(r) => (g, r),
                Err(OracleError::Infeasible) => {
                    emit(
                        format,
                        &json!({ "variant": "weighted-distance3", "feasible": false }),
                        || "infeasible".into(),
                    );
                    return Ok(Outcome::No);
                }
                Err(e) => return Err(e.into()),
            }
        }
    };
    emit(format, &solution(&r, &g), || solution_text(&r, &g));
    Ok(Outcome::Yes)
}

fn run_reduce(cmd: ReduceCommand, format: Format, caps: &Caps) -> Run {
    match cmd {
        ReduceCommand::Build {
            input,
            out,
            sidecar,
        } => {
            let inst = parse_3dm(&read_text(&input)?)?;
            let ct = build_clique_tree(&inst);
            let g = graph_from_clique_tree(&ct);
            let sidecar = sidecar.unwrap_or_else(|| {
                let mut s = out.clone().into_os_string();
                s.push(".json");
                s.into()
            });
            write(&out, &g.to_edge_list())?;
            write(&sidecar, &sidecar_json(&inst, &ct))?;
            let v = json!({
                "p": inst.p(),
                "q": inst.q,
                "nodes": ct.nodes.len(),
                "vertices": g.n(),
                "edges": g.m(),
                "threshold": inst.threshold(),
                "graph": out,
                "sidecar": sidecar,
            });
            emit(format, &v, || {
                format!(
                    "{} nodes, {} vertices, {} edges, threshold {}",
                    ct.nodes.len(),
                    g.n(),
                    g.m(),
                    inst.threshold()
                )
            });
            Ok(Outcome::Yes)
        }
        ReduceCommand::Verify { input } => {
            let ct = parse_sidecar(&read_text(&input)?)?;
            let report = verify_path_property(&ct);
            emit(format, &serde_json::to_value(&report)?, || {
                if report.ok {
                    "path property holds".into()
                } else if !report.tree_ok {
                    "tree edges do not form a tree".into()
                } else {
                    format!("path property fails at {:?}", report.offending)
                }
            });
            Ok(if report.ok { Outcome::Yes } else { Outcome::No })
        }
        ReduceCommand::Crosscheck { input } => {
            let inst = parse_3dm(&read_text(&input)?)?;
            let c = crosscheck(&inst, &caps.oracle())?;
            emit(format, &serde_json::to_value(&c)?, || {
                format!(
                    "threshold {}, gamma_ve {}{}, matching {}, {}",
                    c.threshold,
                    if c.gamma_ve_capped > c.threshold {
                        ">= "
                    } else {
                        ""
                    },
                    c.gamma_ve_capped,
                    if c.matching.is_some() { "yes" } else { "no" },
                    if c.agrees { "agrees" } else { "disagrees" }
                )
            });
            Ok(if c.agrees { Outcome::Yes } else { Outcome::No })
        }
    }
}

fn run_family(cmd: FamilyCommand, format: Format, caps: &Caps) -> Run {
    match cmd {
        FamilyCommand::Gen {
            seed,
            k,
            min_atom,
            max_atom,
            max_total,
            out,
            cert,
        } => {
            let params = AtomParams {
                min_vertices: min_atom,
                max_vertices: max_atom,
                max_total,
                retries: caps.retries as usize,
            };
            let ft = generate_family_member(seed, k, &params)?;
            if let Some(path) = &out {
                write(path, &ft.tree().to_edge_list())?;
            }
            if let Some(path) = &cert {
                write(path, &ft.certificate().to_json())?;
            }
            let v = json!({
                "n": ft.tree().n(),
                "edges": ft.tree().edges(),
                "centers": ft.centers(),
                "certificate": serde_json::to_value(ft.certificate())?,
            });
            emit(format, &v, || {
                format!("{} vertices, centers {:?}", ft.tree().n(), ft.centers())
            });
            Ok(Outcome::Yes)
        }
        FamilyCommand::Centers { cert } => {
            let c = FamilyCertificate::from_json(&read_text(&cert)?).map_err(Failure)?;
            let ft = c.replay()?;
            let centers = atom_centers(&c);
            let ok = is_independent_ve_dominating(ft.tree(), &centers)?;
            let v =
                json!({ "n": ft.tree().n(), "centers": centers, "independent_ve_dominating": ok });
            emit(format, &v, || format!("centers {centers:?}"));
            Ok(Outcome::Yes)
        }
        FamilyCommand::Recognize { graph } => {
            let g = load(&graph)?;
            let cfg = RecognizeConfig {
                max_vertices: (caps.oracle_cap as usize)
                    .max(RecognizeConfig::default().max_vertices),
            };
            let r = recognize(&g.graph, &cfg)?;
            let mut v = serde_json::to_value(&r)?;
            if let Recognition::Accepted { vertex_map, .. } = &r {
                v["vertex_map"] = json!(vertex_map.iter().map(|&x| g.ids[x]).collect::<Vec<_>>());
            }
            emit(format, &v, || match &r {
                Recognition::Accepted {
                    gamma_ve,
                    certificate,
                    ..
                } => {
                    format!(
                        "member with {} atoms, gamma_ve = i_ve = {gamma_ve}",
                        certificate.atom_count()
                    )
                }
                Recognition::Rejected { gamma_ve, i_ve, .. } => {
                    format!("not a member: gamma_ve {gamma_ve}, i_ve {i_ve}")
                }
                Recognition::Defect {
                    gamma_ve,
                    i_ve,
                    detail,
                } => {
                    format!("no certificate although gamma_ve = i_ve: {gamma_ve} {i_ve}; {detail}")
                }
            });
            Ok(if r.is_accepted() {
                Outcome::Yes
            } else {
                Outcome::No
            })
        }
    }
}

fn report_text(r: &AuditReport) -> String {
    let lewis = r
        .lewis_value
        .map_or("infeasible".to_string(), |l| l.to_string());
    format!(
        "n {}: gamma_ve {}, lewis {}, corrected {}{}",
        r.n,
        r.gamma_ve,
        lewis,
        r.corrected_value,
        if r.mismatch { ", mismatch" } else { "" }
    )
}

fn run_audit(cmd: AuditCommand, format: Format, caps: &Caps) -> Run {
    match cmd {
        AuditCommand::Single { graph } => {
            let g = load(&graph)?;
            let r = audit(&g.graph, &caps.oracle())?;
            emit(format, &serde_json::to_value(&r)?, || report_text(&r));
            Ok(if r.mismatch {
                Outcome::Yes
            } else {
                Outcome::No
            })
        }
        AuditCommand::Search { n_max } => {
            let found = search_counterexamples(n_max, &caps.oracle(), &caps.enumeration())?;
            match format {
                Format::Json => found.iter().for_each(|r| println!("{}", r.to_json_line())),
                Format::Text => {
                    println!("{} counterexamples with 3 <= n <= {n_max}", found.len());
                    if let Some(r) = found.first() {
                        println!("smallest: {}", report_text(r));
                        let t = Graph::from_edges(r.n, &r.edges)?;
                        print!("{}", t.to_edge_list());
                    }
                }
            }
            Ok(if found.is_empty() {
                Outcome::No
            } else {
                Outcome::Yes
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Yes) => ExitCode::SUCCESS,
        Ok(Outcome::No) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("vedom: {msg}");
            ExitCode::from(2)
        }
    }
}
