//! Command-line surface.
//!
//! Subcommands: `bound`, `design`, `optimal`, `essential`, `verify`, `exp1`,
//! `exp2`, `gen`. Exit codes: 0 success, 1 malformed input file, 2 invalid
//! parameters, 3 oracle budget exceeded.
//!
//! The experiment drivers (`exp1`, `exp2`) emit CSV with a header row; rows
//! are reproducible from (flags, seed) because each graph id owns a dedicated
//! generator stream, and rows are emitted in graph-id order no matter how the
//! work is scheduled. `IVYBOUND_THREADS` caps the worker count.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::RngExt;
use rayon::prelude::*;

use crate::bounds::{universal_lower_bound, BoundsReport};
use crate::design::{
    bounded_size_intervention_set, single_multinode_intervention, sink_complement_interventions,
    DesignResult,
};
use crate::essential::{fully_orients, i_essential_graph, InterventionSet};
use crate::generators;
use crate::graph::Dag;
use crate::oracle::{optimal_atomic_size, OracleResult, DEFAULT_ORACLE_BUDGET};
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "ivybound",
    about = "Lower bounds and intervention designs for orienting causal DAG equivalence classes",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the lower-bound report of a DAG as a CSV row.
    Bound {
        /// Edge-list file describing a DAG.
        graph: PathBuf,
    },
    /// Construct an intervention set and print it with its certificate.
    Design {
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = DesignMode::Atomic)]
        mode: DesignMode,
        /// Intervention size cap for `--mode chunked`.
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Exact smallest atomic intervention set by exhaustive search.
    Optimal {
        graph: PathBuf,
        /// Cap on orientation checks.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        budget: u64,
    },
    /// Print the interventional essential graph as an edge list.
    Essential {
        graph: PathBuf,
        /// Intervention-set file (one comma-separated intervention per line).
        interventions: PathBuf,
    },
    /// Report whether the interventions fully orient the equivalence class.
    Verify {
        graph: PathBuf,
        interventions: PathBuf,
    },
    /// Lower bound vs. exact optimum over random instances (CSV).
    Exp1(Exp1Args),
    /// This bound vs. the clique-number bound over random instances (CSV).
    Exp2(Exp2Args),
    /// Emit a synthetic graph as an edge list.
    Gen {
        #[command(subcommand)]
        family: GenCommand,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignMode {
    /// Atomic interventions on the non-sink vertices.
    Atomic,
    /// One multi-node intervention.
    Multinode,
    /// Multi-node intervention split into chunks of at most k targets.
    Chunked,
}

#[derive(Args, Clone)]
pub struct Exp1Args {
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 5)]
    pub nmin: usize,
    #[arg(long, default_value_t = 14)]
    pub nmax: usize,
    #[arg(long, default_value_t = 0.1)]
    pub pmin: f64,
    #[arg(long, default_value_t = 0.3)]
    pub pmax: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
    pub budget: u64,
}

#[derive(Args, Clone)]
pub struct Exp2Args {
    /// Comma-separated list of graph sizes.
    #[arg(long, value_delimiter = ',', default_values_t = vec![10, 20, 30])]
    pub sizes: Vec<usize>,
    /// Graphs per size.
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, default_value_t = 2)]
    pub min_clique: usize,
    #[arg(long, default_value_t = 4)]
    pub max_clique: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Clone)]
enum GenCommand {
    /// Erdős–Rényi DAG without v-structures.
    Er {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random DAG with clique sizes steered into a window.
    BoundedClique {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        min_clique: usize,
        #[arg(long, default_value_t = 4)]
        max_clique: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Line of cliques block graph (undirected).
    Construction1 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        omega: usize,
    },
    /// Windmill of cliques block graph (undirected).
    Construction2 {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        omega: usize,
    },
    /// Random k-tree (undirected).
    Ktree {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random split graph (undirected).
    Split {
        #[arg(long)]
        clique: usize,
        #[arg(long)]
        independent: usize,
        #[arg(long, default_value_t = 0.5)]
        attach_prob: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// One row of the first experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Exp1Row {
    pub graph_id: usize,
    pub n: usize,
    pub p: f64,
    pub lower_bound: usize,
    pub optimal: usize,
}

impl Exp1Row {
    pub const CSV_HEADER: &'static str = "graph_id,n,p,lower_bound,optimal";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.graph_id, self.n, self.p, self.lower_bound, self.optimal
        )
    }

    pub fn parse_csv_row(line: &str) -> Result<Exp1Row> {
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 5 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected 5 fields, got {}", f.len()),
            });
        }
        let bad = |s: &str| Error::Parse {
            line: 1,
            msg: format!("bad field {s:?}"),
        };
        Ok(Exp1Row {
            graph_id: f[0].parse().map_err(|_| bad(f[0]))?,
            n: f[1].parse().map_err(|_| bad(f[1]))?,
            p: f[2].parse().map_err(|_| bad(f[2]))?,
            lower_bound: f[3].parse().map_err(|_| bad(f[3]))?,
            optimal: f[4].parse().map_err(|_| bad(f[4]))?,
        })
    }
}

/// One row of the second experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Exp2Row {
    pub graph_id: usize,
    pub n: usize,
    pub our_bound: usize,
    pub prior_bound: usize,
    pub ratio: f64,
}

impl Exp2Row {
    pub const CSV_HEADER: &'static str = "graph_id,n,our_bound,prior_bound,ratio";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.graph_id, self.n, self.our_bound, self.prior_bound, self.ratio
        )
    }

    pub fn parse_csv_row(line: &str) -> Result<Exp2Row> {
        let f: Vec<&str> = line.trim().split(',').collect();
        if f.len() != 5 {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected 5 fields, got {}", f.len()),
            });
        }
        let bad = |s: &str| Error::Parse {
            line: 1,
            msg: format!("bad field {s:?}"),
        };
        Ok(Exp2Row {
            graph_id: f[0].parse().map_err(|_| bad(f[0]))?,
            n: f[1].parse().map_err(|_| bad(f[1]))?,
            our_bound: f[2].parse().map_err(|_| bad(f[2]))?,
            prior_bound: f[3].parse().map_err(|_| bad(f[3]))?,
            ratio: f[4].parse().map_err(|_| bad(f[4]))?,
        })
    }
}

/// Run the first experiment: per graph id, draw `n` and `p` from a dedicated
/// stream, generate a v-structure-free DAG, and record the universal lower
/// bound against the exact optimum.
pub fn exp1(args: &Exp1Args) -> Result<Vec<Exp1Row>> {
    if args.nmin < 1 || args.nmin > args.nmax {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= nmin <= nmax, got [{}, {}]",
            args.nmin, args.nmax
        )));
    }
    if !(0.0..=1.0).contains(&args.pmin) || args.pmin > args.pmax || args.pmax > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "need 0 <= pmin <= pmax <= 1, got [{}, {}]",
            args.pmin, args.pmax
        )));
    }
    let mut rows: Vec<Exp1Row> = (0..args.count)
        .into_par_iter()
        .map(|graph_id| -> Result<Exp1Row> {
            let mut rng = generators::rng_stream(args.seed, graph_id as u64);
            let n = rng.random_range(args.nmin..=args.nmax);
            let p = if args.pmin == args.pmax {
                args.pmin
            } else {
                rng.random_range(args.pmin..args.pmax)
            };
            let dag = generators::er_dag_no_vstructures_with(n, p, &mut rng)?;
            let report = universal_lower_bound(&dag)?;
            let oracle = optimal_atomic_size(&dag, args.budget)?;
            if oracle.budget_hit {
                return Err(Error::BudgetExceeded);
            }
            Ok(Exp1Row {
                graph_id,
                n,
                p,
                lower_bound: report.our_bound,
                optimal: oracle.optimal_size,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.graph_id);
    Ok(rows)
}

/// Run the second experiment: bounded-clique DAGs per requested size, each
/// contributing the ratio of the two lower bounds.
pub fn exp2(args: &Exp2Args) -> Result<Vec<Exp2Row>> {
    if args.sizes.is_empty() {
        return Err(Error::InvalidParameter("need at least one size".into()));
    }
    let jobs: Vec<(usize, usize)> = args
        .sizes
        .iter()
        .flat_map(|&n| (0..args.count).map(move |_| n))
        .enumerate()
        .collect();
    let mut rows: Vec<Exp2Row> = jobs
        .into_par_iter()
        .map(|(graph_id, n)| -> Result<Exp2Row> {
            let mut rng = generators::rng_stream(args.seed, graph_id as u64);
            let dag =
                generators::bounded_clique_dag_with(n, args.min_clique, args.max_clique, &mut rng)?;
            let report = universal_lower_bound(&dag)?;
            let ratio = if report.prior_bound == 0 {
                if report.our_bound == 0 {
                    1.0
                } else {
                    f64::INFINITY
                }
            } else {
                report.our_bound as f64 / report.prior_bound as f64
            };
            Ok(Exp2Row {
                graph_id,
                n,
                our_bound: report.our_bound,
                prior_bound: report.prior_bound,
                ratio,
            })
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.graph_id);
    Ok(rows)
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("cannot read {}: {e}", path.display()),
    })
}

fn load_dag(path: &Path) -> Result<Dag> {
    Dag::parse_edge_list(&read_file(path)?)
}

fn render_design(d: &Dag, res: &DesignResult) -> String {
    let mut out = res.interventions.format(d.graph());
    out.push_str(&res.summary());
    out.push('\n');
    out
}

fn render_oracle(d: &Dag, res: &OracleResult) -> String {
    let witness: Vec<&str> = res.witness_set.iter().map(|&v| d.name(v)).collect();
    format!(
        "optimal_size={} witness={} subsets_checked={} budget_hit={}\n",
        res.optimal_size,
        witness.join(","),
        res.subsets_checked,
        res.budget_hit
    )
}

fn execute(cli: Cli, out: &mut String) -> Result<i32> {
    match cli.command {
        Command::Bound { graph } => {
            let d = load_dag(&graph)?;
            let report = universal_lower_bound(&d)?;
            writeln!(out, "{}", BoundsReport::CSV_HEADER).unwrap();
            writeln!(out, "{}", report.csv_row()).unwrap();
        }
        Command::Design { graph, mode, k } => {
            let d = load_dag(&graph)?;
            let res = match mode {
                DesignMode::Atomic => sink_complement_interventions(&d)?,
                DesignMode::Multinode => single_multinode_intervention(&d)?,
                DesignMode::Chunked => bounded_size_intervention_set(&d, k)?,
            };
            out.push_str(&render_design(&d, &res));
        }
        Command::Optimal { graph, budget } => {
            let d = load_dag(&graph)?;
            let res = optimal_atomic_size(&d, budget)?;
            out.push_str(&render_oracle(&d, &res));
            if res.budget_hit {
                return Ok(3);
            }
        }
        Command::Essential {
            graph,
            interventions,
        } => {
            let d = load_dag(&graph)?;
            let iv = InterventionSet::parse(&read_file(&interventions)?, d.graph())?;
            let e = i_essential_graph(&d, &iv)?;
            out.push_str(&e.graph().to_edge_list());
        }
        Command::Verify {
            graph,
            interventions,
        } => {
            let d = load_dag(&graph)?;
            let iv = InterventionSet::parse(&read_file(&interventions)?, d.graph())?;
            writeln!(out, "{}", fully_orients(&d, &iv)?).unwrap();
        }
        Command::Exp1(args) => {
            let rows = exp1(&args)?;
            writeln!(out, "{}", Exp1Row::CSV_HEADER).unwrap();
            for row in rows {
                writeln!(out, "{}", row.csv_row()).unwrap();
            }
        }
        Command::Exp2(args) => {
            let rows = exp2(&args)?;
            writeln!(out, "{}", Exp2Row::CSV_HEADER).unwrap();
            for row in rows {
                writeln!(out, "{}", row.csv_row()).unwrap();
            }
        }
        Command::Gen { family } => {
            let text = match family {
                GenCommand::Er { n, p, seed } => {
                    generators::er_dag_no_vstructures(n, p, seed)?.to_edge_list()
                }
                GenCommand::BoundedClique {
                    n,
                    min_clique,
                    max_clique,
                    seed,
                } => generators::bounded_clique_dag(n, min_clique, max_clique, seed)?
                    .to_edge_list(),
                GenCommand::Construction1 { k, omega } => {
                    generators::construction1(k, omega)?.to_edge_list()
                }
                GenCommand::Construction2 { k, omega } => {
                    generators::construction2(k, omega)?.to_edge_list()
                }
                GenCommand::Ktree { k, n, seed } => generators::k_tree(k, n, seed)?.to_edge_list(),
                GenCommand::Split {
                    clique,
                    independent,
                    attach_prob,
                    seed,
                } => generators::split_graph(clique, independent, attach_prob, seed)?
                    .to_edge_list(),
            };
            out.push_str(&text);
        }
    }
    Ok(0)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidParameter(_) => 2,
        Error::BudgetExceeded => 3,
        _ => 1,
    }
}

/// Parse and run a command line. Output lands in `stdout`; the return value
/// is the process exit code.
pub fn run<I, T>(args: I, stdout: &mut String) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    configure_thread_pool();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage/help text; help and version requests
            // are successes.
            let msg = e.render().to_string();
            stdout.push_str(&msg);
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            stdout.push_str(&format!("error: {e}\n"));
            exit_code_for(&e)
        }
    }
}

fn configure_thread_pool() {
    use std::sync::Once;
    static INIT: Once = Once::new();
    INIT.call_once(|| {
        if let Ok(threads) = std::env::var("IVYBOUND_THREADS") {
            if let Ok(threads) = threads.parse::<usize>() {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads.max(1))
                    .build_global();
            }
        }
    });
}
