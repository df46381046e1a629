use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use expdom::cache::CACHE_ENV;
use expdom::enumeration::{generate_free, StreamMode, MAX_CONNECTED_ORDER, MAX_TREE_ORDER};
use expdom::hereditary::{find_minimal_forbidden, run_sweep_on, ClassKind, Engine, Sweep, SweepSource};
use expdom::patterns::{find_induced_graph, parse_pattern_list, PatternName};
use expdom::report::{
    exit_code, parse_graphs, params_record, render_match, render_membership, render_params, render_report,
    OutputFormat, SweepConfig,
};
use expdom::{graph::graph6, Error, Graph, Result};

/// Exact domination parameters and hereditary class checks for small graphs.
#[derive(Parser)]
#[command(name = "expdom", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// gamma, gamma_e and gamma_e* with lexicographically least certificates.
    Params {
        /// graph6 string, file of graph6 lines or an edge list, or `-` for stdin.
        #[arg(default_value = "-")]
        input: String,
        /// Print the weight of every vertex for the gamma_e and gamma_e* certificates.
        #[arg(long)]
        explain: bool,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Membership in G (gamma = gamma_e hereditarily) or, with --porous, in G*.
    Member {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        porous: bool,
        #[arg(long, default_value = "json")]
        format: OutputFormat,
    },
    /// Find an induced copy of a catalog pattern (or of a graph6 pattern).
    Match {
        #[arg(default_value = "-")]
        input: String,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "text")]
        format: OutputFormat,
    },
    /// Print all connected graphs (or trees) of order N as graph6 lines.
    Enum {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trees: bool,
        /// Comma separated pattern names the output must avoid.
        #[arg(long)]
        free: Option<String>,
        #[arg(long, default_value = "graph6", value_parser = ["graph6"])]
        format: String,
    },
    /// Run an exhaustive verification sweep.
    Verify {
        #[arg(long)]
        sweep: Sweep,
        /// Defaults: theorem1 and corollary1 9, corollary2 12, conjecture3 8.
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        /// Read the graphs from a file of graph6 lines instead of generating them.
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// List the minimal forbidden induced subgraphs up to a given order.
    Minimal {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Only search among graphs free of these comma separated patterns.
        #[arg(long)]
        free: Option<String>,
        #[arg(long)]
        porous: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    /// Worker threads (defaults to the number of cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Results cache file; defaults to $EXPDOM_CACHE when set.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Ignore $EXPDOM_CACHE.
    #[arg(long)]
    no_cache: bool,
    #[arg(long, default_value = "json")]
    format: OutputFormat,
}

impl RunArgs {
    fn config(&self, max_n: usize, restriction: Vec<PatternName>) -> SweepConfig {
        let cache = if self.no_cache {
            None
        } else {
            self.cache.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        };
        SweepConfig {
            max_n,
            workers: self.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            restriction,
            format: self.format,
            cache,
        }
    }
}

fn read_input(input: &str) -> Result<Vec<Graph>> {
    if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return parse_graphs(&s);
    }
    if Path::new(input).is_file() {
        return parse_graphs(&std::fs::read_to_string(input)?);
    }
    parse_graphs(input)
}

fn engine(config: &SweepConfig) -> Result<Engine> {
    match &config.cache {
        Some(path) => Engine::with_cache(path),
        None => Ok(Engine::new()),
    }
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| Error::Usage(e.to_string()))
}

fn restriction(list: &Option<String>) -> Result<Vec<PatternName>> {
    list.as_deref().map_or(Ok(Vec::new()), parse_pattern_list)
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Params { input, explain, format } => {
            let records: Vec<_> = read_input(&input)?.iter().map(|g| params_record(g, explain)).collect::<Result<_>>()?;
            print!("{}", render_params(&records, format));
        }
        Command::Member { input, porous, format } => {
            let kind = if porous { ClassKind::GStar } else { ClassKind::G };
            let e = Engine::new();
            for g in read_input(&input)? {
                print!("{}", render_membership(&g, &e.in_class(&g, kind)?, format));
            }
        }
        Command::Match { input, pattern, format } => {
            let target = match pattern.parse::<PatternName>() {
                Ok(name) => name.graph().clone(),
                Err(e) => graph6::decode(&pattern).map_err(|_| e)?,
            };
            for g in read_input(&input)? {
                print!("{}", render_match(&g, &pattern, find_induced_graph(&g, &target).as_ref(), format));
            }
        }
        Command::Enum { n, trees, free, .. } => {
            let mode = if trees { StreamMode::Trees } else { StreamMode::ConnectedGraphs };
            let stream = generate_free(n, mode, &restriction(&free)?)?;
            let mut out = String::new();
            for g in stream.iter() {
                out.push_str(&graph6::encode(g));
                out.push('\n');
            }
            print!("{out}");
        }
        Command::Verify { sweep, max_n, run, input } => {
            if sweep == Sweep::Minimal {
                return Err(Error::Usage("use the `minimal` command for the minimal-graph search".into()));
            }
            let cap = match sweep.mode() {
                StreamMode::Trees => MAX_TREE_ORDER.min(12),
                StreamMode::ConnectedGraphs => MAX_CONNECTED_ORDER,
            };
            let config = run.config(max_n.unwrap_or(sweep.default_max_n()), sweep.restriction().to_vec());
            config.validate(cap, "verification sweep")?;
            let source = match input {
                Some(path) => SweepSource::Graphs(parse_graphs(&std::fs::read_to_string(path)?)?),
                None => SweepSource::Generated { max_n: config.max_n },
            };
            let engine = engine(&config)?;
            let report = pool(config.workers)?.install(|| run_sweep_on(&engine, sweep, source))?;
            print!("{}", render_report(&report, config.format));
            for g6 in &report.counterexamples {
                eprintln!("counterexample: {g6}");
            }
            for g6 in &report.chain_violations {
                eprintln!("chain violation: {g6}");
            }
            if sweep.is_claim() && !report.verified {
                return Ok(1);
            }
        }
        Command::Minimal { max_n, free, porous, run } => {
            let kind = if porous { ClassKind::GStar } else { ClassKind::G };
            let config = run.config(max_n, restriction(&free)?);
            config.validate(MAX_CONNECTED_ORDER, "minimal forbidden search")?;
            let engine = engine(&config)?;
            let report =
                pool(config.workers)?.install(|| find_minimal_forbidden(&engine, config.max_n, kind, &config.restriction))?;
            print!("{}", render_report(&report, config.format));
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
