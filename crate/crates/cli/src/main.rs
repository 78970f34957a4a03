use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bnpg::experiment::{self, ExperimentConfig};
use bnpg::format::{self, Provenance};
use bnpg::gen::{self, EdgeListOptions, GraphKind, GraphSpec, UtilityFamilyParams};
use bnpg::heuristic::HeuristicParams;
use bnpg::{ActionProfile, BnpgInstance, SolveOptions, SolverChoice};

/// Exit code for usage, I/O, parse and validation errors.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "bnpg", version, about = "Equilibria of binary networked public goods games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find an equilibrium. Exit 0: PSNE, 1: none exists, 2: approximate only.
    Solve(SolveArgs),
    /// Check a profile: per-player deviation gains, ε and welfare.
    Check {
        game: PathBuf,
        /// 0/1 string, one character per player.
        profile: String,
    },
    /// Generate a game file.
    Gen(GenArgs),
    /// Load a game file and report any invariant violations.
    Validate { game: PathBuf },
    /// Run a parameter sweep described by a TOML config.
    Experiment {
        config: PathBuf,
        /// Raw CSV path; overrides the config's `output`.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
}

#[derive(Args)]
struct SolveArgs {
    game: PathBuf,
    #[arg(long, default_value = "auto", value_parser = parse_choice)]
    method: SolverChoice,
    /// Best-response sweeps per evolve call (K).
    #[arg(long, default_value_t = 10)]
    trials: usize,
    /// Outer iterations (B).
    #[arg(long, default_value_t = 100)]
    max_iterations: usize,
    #[arg(long, default_value_t = 1.0)]
    delta: f64,
    /// Norm index of the profile distance.
    #[arg(long, default_value_t = 1.0)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use raw instead of range-normalized ε in the heuristic.
    #[arg(long)]
    unnormalized: bool,
    #[arg(long, default_value_t = bnpg::oracle::DEFAULT_LIMIT)]
    oracle_limit: usize,
    /// Refuse disconnected forests in the tree solver.
    #[arg(long)]
    no_forest: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Complete,
    Path,
    Star,
    #[value(alias = "random-tree")]
    Tree,
    Cycle,
    ErdosRenyi,
    BarabasiAlbert,
    WattsStrogatz,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, required_unless_present = "edge_list")]
    kind: Option<KindArg>,
    #[arg(long, required_unless_present = "edge_list")]
    n: Option<usize>,
    /// Probability that a player's externality is convex.
    #[arg(long, default_value_t = 0.5)]
    gamma: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge probability (erdos-renyi) or rewiring probability (watts-strogatz).
    #[arg(long)]
    p: Option<f64>,
    /// Edges per new node (barabasi-albert).
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Target degree exponent (barabasi-albert).
    #[arg(long)]
    exponent: Option<f64>,
    /// Lattice degree (watts-strogatz).
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, value_delimiter = ',')]
    alpha_pool: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    beta_pool: Option<Vec<f64>>,
    /// Read the graph from an edge list instead of generating one.
    #[arg(long, conflicts_with_all = ["kind", "n"])]
    edge_list: Option<PathBuf>,
    /// Keep the file's node ids instead of renumbering in order of appearance.
    #[arg(long, requires = "edge_list")]
    keep_ids: bool,
    /// With --keep-ids: ids start at 0 rather than 1.
    #[arg(long, requires = "keep_ids")]
    zero_indexed: bool,
    #[arg(long, requires = "edge_list")]
    largest_component: bool,
    /// Output file; standard output when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn parse_choice(s: &str) -> Result<SolverChoice, String> {
    s.parse().map_err(|e: bnpg::Error| e.to_string())
}

type CmdResult = Result<u8, bnpg::Error>;

fn load(path: &PathBuf) -> Result<BnpgInstance, bnpg::Error> {
    format::load_game(path)
        .map(|f| f.instance)
        .map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: bnpg::Error) -> bnpg::Error {
    match e {
        bnpg::Error::Load { line, message } => bnpg::Error::Load {
            line,
            message: format!("{}: {message}", path.display()),
        },
        bnpg::Error::Io(io) => bnpg::Error::Load {
            line: None,
            message: format!("{}: {io}", path.display()),
        },
        other => other,
    }
}

fn cmd_solve(args: SolveArgs) -> CmdResult {
    let instance = load(&args.game)?;
    let options = SolveOptions {
        choice: args.method,
        heuristic: HeuristicParams {
            trials: args.trials,
            max_iterations: args.max_iterations,
            delta: args.delta,
            p: args.p,
            seed: args.seed,
            normalized: !args.unnormalized,
        },
        oracle_limit: args.oracle_limit,
        allow_forest: !args.no_forest,
    };
    let report = bnpg::solve(&instance, &options)?;
    print!("{}", report.render(&instance));
    Ok(report.exit_code() as u8)
}

fn cmd_check(game: PathBuf, profile: String) -> CmdResult {
    let instance = load(&game)?;
    let x: ActionProfile = profile.parse()?;
    instance.check_profile(&x)?;
    let psne = instance.is_psne(&x)?;
    let mut out = String::new();
    let _ = writeln!(out, "psne: {}", if psne { "yes" } else { "no" });
    for i in 0..instance.n() {
        let _ = writeln!(
            out,
            "player {}: action {}, investing neighbors {}, deviation gain {}",
            i + 1,
            u8::from(x.get(i)),
            instance.neighbor_invest_count(&x, i)?,
            instance.deviation_gain(&x, i)?,
        );
    }
    let _ = writeln!(out, "epsilon: {}", instance.max_epsilon(&x, false)?);
    let _ = writeln!(out, "epsilon_normalized: {}", instance.max_epsilon(&x, true)?);
    let _ = writeln!(out, "welfare: {}", instance.social_welfare(&x)?);
    print!("{out}");
    Ok(if psne { 0 } else { 1 })
}

fn graph_kind(args: &GenArgs, kind: KindArg) -> Result<GraphKind, bnpg::Error> {
    let need_p = |what: &str| {
        args.p.ok_or_else(|| {
            bnpg::Error::InvalidParameter(format!("--p ({what}) is required for this kind"))
        })
    };
    Ok(match kind {
        KindArg::Complete => GraphKind::Complete,
        KindArg::Path => GraphKind::Path,
        KindArg::Star => GraphKind::Star,
        KindArg::Tree => GraphKind::RandomTree,
        KindArg::Cycle => GraphKind::Cycle,
        KindArg::ErdosRenyi => GraphKind::ErdosRenyi {
            p: need_p("edge probability")?,
        },
        KindArg::BarabasiAlbert => GraphKind::BarabasiAlbert {
            m: args.m,
            exponent: args.exponent,
        },
        KindArg::WattsStrogatz => GraphKind::WattsStrogatz {
            k: args.k,
            p: need_p("rewiring probability")?,
        },
    })
}

fn cmd_gen(args: GenArgs) -> CmdResult {
    let mut utilities = UtilityFamilyParams::new(args.gamma);
    if let Some(pool) = &args.alpha_pool {
        utilities.alpha_pool = pool.clone();
    }
    if let Some(pool) = &args.beta_pool {
        utilities.beta_pool = pool.clone();
    }
    let mut provenance = Provenance {
        seed: Some(args.seed),
        utilities: Some(utilities.clone()),
        ..Provenance::default()
    };
    let graph = match (&args.edge_list, args.kind, args.n) {
        (Some(path), _, _) => {
            let options = EdgeListOptions {
                zero_indexed: args.zero_indexed,
                compact: !args.keep_ids,
                largest_component: args.largest_component,
            };
            provenance.source = Some(path.display().to_string());
            gen::load_edge_list(path, options).map_err(|e| with_path(path, e))?
        }
        (None, Some(kind), Some(n)) => {
            let spec = GraphSpec {
                n,
                seed: args.seed,
                kind: graph_kind(&args, kind)?,
            };
            let graph = gen::gen_graph(&spec)?;
            provenance.graph = Some(spec);
            graph
        }
        _ => unreachable!("clap requires --kind and --n without --edge-list"),
    };
    // utilities draw from a stream separate from the graph's
    let instance = gen::gen_utilities(graph, &utilities, experiment::derive_seed(args.seed, 2))?;
    let text = format::write_game(&instance, Some(&provenance));
    match &args.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn cmd_validate(game: PathBuf) -> CmdResult {
    let instance = load(&game)?;
    println!(
        "valid: {} players, {} edges, {}",
        instance.n(),
        instance.graph().edge_count(),
        instance.homogeneity()
    );
    Ok(0)
}

fn cmd_experiment(config: PathBuf, output: Option<PathBuf>, threads: Option<usize>) -> CmdResult {
    let mut cfg = ExperimentConfig::load(&config).map_err(|e| with_path(&config, e))?;
    if threads.is_some() {
        cfg.threads = threads;
    }
    let raw = output
        .or_else(|| cfg.output.clone())
        .ok_or_else(|| bnpg::Error::InvalidParameter("no output path (set `output` or pass --output)".into()))?;
    let outcome = experiment::run_experiment(&cfg)?;
    let (raw, agg, timing) = outcome.write(&raw)?;
    println!("rows: {}", outcome.rows.len());
    println!("raw: {}", raw.display());
    println!("aggregate: {}", agg.display());
    println!("timing: {}", timing.display());
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Check { game, profile } => cmd_check(game, profile),
        Command::Gen(args) => cmd_gen(args),
        Command::Validate { game } => cmd_validate(game),
        Command::Experiment {
            config,
            output,
            threads,
        } => cmd_experiment(config, output, threads),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
