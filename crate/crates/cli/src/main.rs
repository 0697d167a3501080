use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use telegraph_cli::config::{parse_real_list, parse_size_list, MtRuleArg};
use telegraph_cli::run::parse_replay;
use telegraph_cli::{
    parse_problem_file, run_nodes, run_quadrature, run_solve, run_sweep, CliError, CliResult, Format, ProblemSpec,
    QuadKind, QuadratureRequest, RunConfig, SecondOrder, SweepPlan,
};
use telegraph_core::analysis::DEFAULT_LATTICE;

/// Shifted Gegenbauer pseudospectral solver for the 1D telegraph equation.
#[derive(Parser)]
#[command(name = "telegraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and report error norms and timings.
    Solve(SolveArgs),
    /// Solve at a list of N and tabulate errors against N.
    Sweep(SweepArgs),
    /// Apply an integration matrix to an integrand.
    Quadrature(QuadArgs),
    /// Print shifted Gegenbauer-Gauss nodes and weights.
    Nodes(NodesArgs),
}

#[derive(Args)]
struct ProblemArgs {
    /// Built-in problem 1..4.
    #[arg(long, conflicts_with = "problem")]
    example: Option<usize>,
    /// Key-value problem file.
    #[arg(long)]
    problem: Option<PathBuf>,
}

#[derive(Args)]
struct CommonArgs {
    /// Collocation parameter; 0 gives the Chebyshev-Gauss grid.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = SecondOrder::Hadamard)]
    second_order: SecondOrder,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Resolution of the uniform lattice used for Linf.
    #[arg(long, default_value_t = DEFAULT_LATTICE)]
    lattice: usize,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Reserved; every run is deterministic.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Re-run the configuration and problem stored in a JSON result.
    #[arg(long, conflicts_with_all = ["example", "problem"])]
    replay: Option<PathBuf>,
    /// Sets N_x = N_t = N.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    nt: Option<usize>,
    /// Defaults to N_t.
    #[arg(long)]
    mt: Option<usize>,
    /// Extra points `x,t` for pointwise errors; repeatable.
    #[arg(long = "probe", allow_negative_numbers = true)]
    probes: Vec<String>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    problem: ProblemArgs,
    /// Sizes, e.g. `4,6,8` or `8..40:4`.
    #[arg(long)]
    ns: String,
    /// same, fixed:K or cap:K.
    #[arg(long, default_value = "same")]
    mt_rule: String,
    /// Solves per row; the fastest time is kept.
    #[arg(long, default_value_t = 1)]
    repeat: usize,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct QuadArgs {
    #[arg(long, value_enum, default_value_t = QuadKind::S)]
    kind: QuadKind,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    /// Grid degree for `s` (and for `--upper-all`).
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// Interpolation degree for `optimal`.
    #[arg(long, default_value_t = 8)]
    m: usize,
    #[arg(long = "L", default_value_t = 1.0)]
    length: f64,
    /// Comma list of upper limits.
    #[arg(long)]
    nodes: Option<String>,
    #[arg(long)]
    upper_all: bool,
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Function of `x`.
    #[arg(long)]
    integrand: String,
    /// Expected result as a function of the upper limit `x`.
    #[arg(long)]
    exact: Option<String>,
    #[arg(long, value_enum, default_value_t = SecondOrder::Hadamard)]
    second_order: SecondOrder,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NodesArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    alpha: f64,
    #[arg(long)]
    n: usize,
    #[arg(long = "L", default_value_t = 1.0)]
    length: f64,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &PathBuf) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn problem_spec(p: &ProblemArgs) -> CliResult<ProblemSpec> {
    match (&p.example, &p.problem) {
        (Some(id), None) => {
            if !(1..=4).contains(id) {
                return Err(CliError::Usage(format!("unknown example {id}; expected one of 1, 2, 3, 4")));
            }
            Ok(ProblemSpec::Registry { id: *id })
        }
        (None, Some(path)) => parse_problem_file(&read(path)?),
        _ => Err(CliError::Usage("give exactly one of --example or --problem".into())),
    }
}

fn parse_probe(s: &str) -> CliResult<[f64; 2]> {
    match parse_real_list(s)?.as_slice() {
        [x, t] => Ok([*x, *t]),
        _ => Err(CliError::Usage(format!("probe `{s}` must be `x,t`"))),
    }
}

fn emit(text: &str, out: Option<&str>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("cannot write {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn path_string(p: &Option<PathBuf>) -> Option<String> {
    p.as_ref().map(|p| p.display().to_string())
}

fn solve(a: SolveArgs) -> CliResult<()> {
    let (spec, cfg) = if let Some(path) = &a.replay {
        let r = parse_replay(&read(path)?)?;
        let mut cfg = r.config;
        if let Some(f) = a.common.format {
            cfg.format = f;
        }
        if a.common.out.is_some() {
            cfg.out = path_string(&a.common.out);
        }
        (r.problem, cfg)
    } else {
        let spec = problem_spec(&a.problem)?;
        let nx = a.nx.or(a.n).ok_or_else(|| CliError::Usage("give --n or --nx".into()))?;
        let nt = a.nt.or(a.n).ok_or_else(|| CliError::Usage("give --n or --nt".into()))?;
        let cfg = RunConfig {
            nx,
            nt,
            mt: a.mt.unwrap_or(nt),
            alpha: a.common.alpha,
            second_order: a.common.second_order,
            format: a.common.format.unwrap_or_default(),
            out: path_string(&a.common.out),
            lattice: a.common.lattice,
            probes: a.probes.iter().map(|p| parse_probe(p)).collect::<CliResult<_>>()?,
        };
        (spec, cfg)
    };
    let out = run_solve(&spec, &cfg)?;
    emit(&out.render(cfg.format)?, cfg.out.as_deref())
}

fn sweep(a: SweepArgs) -> CliResult<()> {
    let spec = problem_spec(&a.problem)?;
    let plan = SweepPlan {
        ns: parse_size_list(&a.ns)?,
        mt_rule: a.mt_rule.parse::<MtRuleArg>()?,
        repeat: a.repeat.max(1),
        jobs: a.common.jobs.max(1),
    };
    let mut base = RunConfig::square(1);
    base.alpha = a.common.alpha;
    base.second_order = a.common.second_order;
    base.format = a.common.format.unwrap_or_default();
    base.out = path_string(&a.common.out);
    base.lattice = a.common.lattice;
    let out = run_sweep(&spec, &base, &plan)?;
    for r in &out.rows {
        if let Some(e) = &r.error {
            eprintln!("N = {}: {e}", r.n);
        }
    }
    emit(&out.render(base.format)?, base.out.as_deref())
}

fn quadrature(a: QuadArgs) -> CliResult<()> {
    let req = QuadratureRequest {
        kind: a.kind,
        alpha: a.alpha,
        n: a.n,
        m: a.m,
        length: a.length,
        nodes: a.nodes.as_deref().map(parse_real_list).transpose()?.unwrap_or_default(),
        upper_all: a.upper_all,
        order: a.order,
        integrand: a.integrand,
        exact: a.exact,
        second_order: a.second_order,
    };
    let out = run_quadrature(&req)?;
    emit(&out.render(a.format.unwrap_or_default())?, path_string(&a.out).as_deref())
}

fn nodes(a: NodesArgs) -> CliResult<()> {
    let out = run_nodes(a.alpha, a.n, a.length)?;
    emit(&out.render(a.format.unwrap_or_default())?, path_string(&a.out).as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError::Usage(e.to_string().trim().to_string());
            eprintln!("{}", err.to_json());
            return ExitCode::from(err.exit_code() as u8);
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Sweep(a) => sweep(a),
        Command::Quadrature(a) => quadrature(a),
        Command::Nodes(a) => nodes(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
