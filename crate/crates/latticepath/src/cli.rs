//! The `latticepath` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latticepath_core::graph::GraphError;
use latticepath_core::label::{underlying_graph, LabelError};
use latticepath_core::lift::LiftError;
use latticepath_core::nerve::{nerve_report, poset_capped, NerveError, DEFAULT_OBJECT_CAP};
use latticepath_core::{join, CutTuple, Digraph, GenTable, LabelledOp, Lifter, PathError, PathOp};
use thiserror::Error;

use crate::cache::{self, CacheError, Source, CACHE_ENV};
use crate::report::{CountsRow, EmitError, Format, GraphEdge, Report};
use crate::verify::{self, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "latticepath", version, about = "Lattice path operations, joins, labellings and their checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Directory for generated tables.
    #[arg(long, env = CACHE_ENV, default_value = ".latticepath-cache", global = true)]
    pub cache_dir: PathBuf,
    /// Seed for sampled corpora.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compose an operation with one input per colour.
    Compose {
        #[arg(long)]
        op: String,
        #[arg(long = "with")]
        with: Vec<String>,
    },
    /// Complexity index and corner matrix.
    Complexity {
        #[arg(long)]
        op: String,
    },
    /// Underlying graph at level m (default: the complexity of the operation).
    Graph {
        #[arg(long)]
        op: String,
        #[arg(short, long)]
        m: Option<usize>,
    },
    /// Join two operations along cut bars, e.g. `--lhs-cuts 1,3`.
    Join {
        #[arg(long)]
        lhs: String,
        #[arg(long, default_value = "")]
        lhs_cuts: String,
        #[arg(long)]
        rhs: String,
        #[arg(long, default_value = "")]
        rhs_cuts: String,
        #[arg(short, long)]
        m: usize,
    },
    /// Generate (or load) the table of `Ĥ_m` up to a token budget.
    Generate(TableArgs),
    /// Membership in the generated table.
    Contains {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Entry counts by colour count, arities and bars.
    Counts(TableArgs),
    /// Proper labellings of a digraph given as `u>v,...`.
    Labellings {
        #[arg(long, default_value = "")]
        edges: String,
        /// Vertex count, when some vertices have no edges.
        #[arg(long, default_value_t = 0)]
        vertices: usize,
        /// Print only the number of labellings.
        #[arg(long)]
        count: bool,
    },
    /// Reduced homology and contractibility verdict for the labelling poset.
    Homology {
        #[arg(long, default_value = "")]
        edges: String,
        #[arg(long, default_value_t = 0)]
        vertices: usize,
        #[arg(long, default_value_t = DEFAULT_OBJECT_CAP)]
        object_cap: usize,
    },
    /// Unit, associativity and interchange diagrams on seeded instances.
    CheckAxioms {
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, default_value_t = 100)]
        instances: usize,
    },
    /// Lift a labelled operation, e.g. `"1|1 :: (A) -> C"`.
    Lift {
        #[arg(long)]
        op: String,
        #[command(flatten)]
        table: TableArgs,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Vec<Suite>,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Token bound for exhaustive sweeps.
        #[arg(long, default_value_t = 8)]
        max_tokens: usize,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct TableArgs {
    #[arg(short, long, default_value_t = 2)]
    pub m: usize,
    #[arg(short, long, default_value_t = 8)]
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    OperadLaws,
    Filtration,
    Containment,
    Trees,
    Nerves,
    LiftingGraphs,
    Lift,
    Circ,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error(transparent)]
    Emit(#[from] EmitError),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_op(text: &str) -> Result<PathOp, CliError> {
    Ok(PathOp::parse(text)?)
}

fn parse_cuts(text: &str) -> Result<CutTuple, CliError> {
    let bad = || CliError::Usage(format!("bad cut tuple {text:?}"));
    let positions = text
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| bad()))
        .collect::<Result<Vec<usize>, _>>()?;
    CutTuple::new(positions).map_err(|e| CliError::Usage(e.to_string()))
}

fn digraph(edges: &str, vertices: usize) -> Result<Digraph, CliError> {
    Ok(Digraph::parse_edges(edges, vertices)?)
}

fn table(global: &Global, args: TableArgs) -> Result<(GenTable, Source), CliError> {
    Ok(cache::load_or_generate(&global.cache_dir, args.m, args.budget)?)
}

/// Runs one command and writes its report to `out`. Returns the exit
/// status: 1 when a verification found a counterexample.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    let report = build(cli)?;
    let bytes = report.emit(cli.global.format)?;
    out.write_all(&bytes)?;
    Ok(if report.failures() > 0 { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
}

pub fn build(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    Ok(match &cli.command {
        Command::Compose { op, with } => {
            let x = parse_op(op)?;
            let ys = with.iter().map(|w| parse_op(w)).collect::<Result<Vec<_>, _>>()?;
            Report::Compose {
                op: x.to_string(),
                with: ys.iter().map(PathOp::to_string).collect(),
                result: x.compose(&ys)?.to_string(),
            }
        }
        Command::Complexity { op } => {
            let x = parse_op(op)?;
            Report::Complexity { op: x.to_string(), complexity: x.complexity(), corners: x.corner_matrix() }
        }
        Command::Graph { op, m } => {
            let x = parse_op(op)?;
            let m = m.unwrap_or_else(|| x.complexity());
            let graph = underlying_graph(&x, m);
            Report::Graph {
                op: x.to_string(),
                m,
                vertices: graph.vertex_count(),
                edges: graph.edges().map(|(u, v)| GraphEdge { from: u + 1, to: v + 1 }).collect(),
                dot: graph.to_dot("underlying"),
            }
        }
        Command::Join { lhs, lhs_cuts, rhs, rhs_cuts, m } => {
            let (x, y) = (parse_op(lhs)?, parse_op(rhs)?);
            let (i, j) = (parse_cuts(lhs_cuts)?, parse_cuts(rhs_cuts)?);
            let z = join(&x, &i, &y, &j, *m).map_err(|e| CliError::Usage(e.to_string()))?;
            Report::Join {
                lhs: x.to_string(),
                lhs_cuts: i.positions().to_vec(),
                rhs: y.to_string(),
                rhs_cuts: j.positions().to_vec(),
                m: *m,
                result: z.result.to_string(),
            }
        }
        Command::Generate(args) => {
            let (t, source) = table(g, *args)?;
            let stats = t.stats();
            Report::Generate {
                m: t.m(),
                budget: t.budget(),
                orbits: t.orbit_count(),
                entries: t.entry_count(),
                rounds: stats.rounds,
                gamma_only: stats.gamma_only,
                source: format!("{source:?}").to_lowercase(),
                cache: cache::file_name(t.m(), t.budget()),
            }
        }
        Command::Contains { op, table: args } => {
            let x = parse_op(op)?;
            let (t, _) = table(g, *args)?;
            let membership = format!("{:?}", t.contains(&x, true)).to_lowercase();
            Report::Contains { op: x.to_string(), m: t.m(), budget: t.budget(), membership }
        }
        Command::Counts(args) => {
            let (t, _) = table(g, *args)?;
            Report::Counts { m: t.m(), budget: t.budget(), rows: t.counts().iter().map(CountsRow::from).collect() }
        }
        Command::Labellings { edges, vertices, count } => {
            let graph = digraph(edges, *vertices)?;
            let p = poset_capped(&graph, DEFAULT_OBJECT_CAP)?;
            Report::Labellings {
                edges: graph.to_string(),
                vertices: graph.vertex_count(),
                count: p.len(),
                objects: p.objects.iter().map(|o| latticepath_core::label::labels_to_string(o)).collect(),
                count_only: *count,
                dot: p.to_dot("labellings"),
            }
        }
        Command::Homology { edges, vertices, object_cap } => {
            let graph = digraph(edges, *vertices)?;
            poset_capped(&graph, *object_cap)?;
            let r = nerve_report(&graph)?;
            Report::Homology {
                edges: graph.to_string(),
                objects: r.objects,
                components: r.components,
                betti: r.homology.betti,
                torsion: r.homology.torsion,
                verdict: r.verdict.as_str().into(),
            }
        }
        Command::CheckAxioms { table: args, instances } => {
            let (t, _) = table(g, *args)?;
            let run = verify::axioms(&t, g.seed, *instances).map_err(|e| CliError::Usage(e.to_string()))?;
            let formula_mismatches = run
                .formulas
                .mismatches
                .iter()
                .map(|f| {
                    format!(
                        "{} {}: transported {:?}, printed {:?}, inputs {:?}",
                        f.diagram, f.tuple, f.transported, f.printed, f.inputs
                    )
                })
                .collect();
            Report::CheckAxioms { m: t.m(), seed: g.seed, suite: verify::axiom_suite(&run, t.m()), formula_mismatches }
        }
        Command::Lift { op, table: args } => {
            let x = LabelledOp::parse(op)?;
            let (t, _) = table(g, *args)?;
            let lifter = Lifter::new(&t)?;
            let lifted = lifter.lift(&x)?;
            let u = lifter.verify_unique(&x)?;
            Report::Lift {
                input: x.to_string(),
                lifted: lifted.lifted.to_string(),
                inserted_colours: lifted.inserted_colours.iter().copied().collect(),
                unique: u.unique(),
                extension: u.extension.map(|e| e.to_string()),
            }
        }
        Command::Verify { suite, table: args, instances, max_tokens } => {
            if suite.is_empty() {
                return Err(CliError::Usage("name at least one --suite".into()));
            }
            let mut suites = Vec::new();
            let mut notes = Vec::new();
            for s in suite {
                suites.push(run_suite(g, *s, *args, *instances, *max_tokens, &mut notes)?);
            }
            Report::Verify { suites, notes }
        }
    })
}

fn run_suite(
    g: &Global,
    suite: Suite,
    args: TableArgs,
    instances: usize,
    max_tokens: usize,
    notes: &mut Vec<String>,
) -> Result<SuiteReport, CliError> {
    Ok(match suite {
        Suite::OperadLaws => verify::operad_laws(g.seed, instances, max_tokens),
        Suite::Filtration => verify::filtration(args.m, max_tokens),
        Suite::Containment => verify::containment(&table(g, args)?.0),
        Suite::Trees => verify::trees(&table(g, TableArgs { m: 2, budget: args.budget })?.0, max_tokens),
        Suite::Nerves => verify::nerves(4),
        Suite::LiftingGraphs => verify::lifting_graphs(&table(g, args)?.0, g.seed, instances),
        Suite::Lift => verify::lifts(&table(g, args)?.0, max_tokens)?,
        Suite::Circ => {
            let (r, disagreements) = verify::circ(&table(g, TableArgs { m: 2, budget: args.budget })?.0, max_tokens);
            notes.extend(disagreements.into_iter().map(|d| format!("B-insertion disagrees: {d}")));
            r
        }
    })
}
