use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stickel::config::{load_config, Params};
use stickel::report::Format;
use stickel::{commands, exit_status, sweep, CliError, EXIT_INTERNAL, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "stickel",
    version,
    about = "Gauss sums, Stickelberger elements, Iwasawa series and Coleman maps"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// INI file of key = value defaults; `[command]` sections apply to one command.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

/// Parameters shared by the subcommands; each reads the ones it needs.
#[derive(Args, Clone, Default)]
struct P {
    /// Odd prime p.
    #[arg(long)]
    p: Option<u64>,
    /// Coefficient precision N (work modulo p^N).
    #[arg(long = "N")]
    big_n: Option<u32>,
    /// Level n.
    #[arg(long)]
    n: Option<u32>,
    /// Conductor c.
    #[arg(long)]
    c: Option<u64>,
    /// Residue characteristic l.
    #[arg(long)]
    l: Option<u64>,
    /// Tame conductor f.
    #[arg(long)]
    f: Option<u64>,
    /// Character exponent i.
    #[arg(long, allow_hyphen_values = true)]
    i: Option<i64>,
    /// Second character exponent j.
    #[arg(long)]
    j: Option<u64>,
    /// Integer a prime to p.
    #[arg(long)]
    a: Option<u64>,
    /// T-adic truncation M.
    #[arg(long = "M")]
    big_m: Option<usize>,
    /// Largest moment or coefficient index.
    #[arg(long)]
    mmax: Option<u64>,
    /// Bound on l.
    #[arg(long)]
    lmax: Option<u64>,
    /// Bound on p.
    #[arg(long)]
    pmax: Option<u64>,
    /// The integer N of the IKY measure.
    #[arg(long)]
    nchi: Option<u64>,
    /// Comma-separated Kummer vector entries.
    #[arg(long)]
    entries: Option<String>,
    /// Comma-separated series coefficients.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// Suite seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random cases.
    #[arg(long)]
    cases: Option<u64>,
}

impl P {
    fn params(&self) -> Params {
        let mut out = Params::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.set(k, v);
            }
        };
        put("p", self.p.map(|x| x.to_string()));
        put("N", self.big_n.map(|x| x.to_string()));
        put("n", self.n.map(|x| x.to_string()));
        put("c", self.c.map(|x| x.to_string()));
        put("l", self.l.map(|x| x.to_string()));
        put("f", self.f.map(|x| x.to_string()));
        put("i", self.i.map(|x| x.to_string()));
        put("j", self.j.map(|x| x.to_string()));
        put("a", self.a.map(|x| x.to_string()));
        put("M", self.big_m.map(|x| x.to_string()));
        put("mmax", self.mmax.map(|x| x.to_string()));
        put("lmax", self.lmax.map(|x| x.to_string()));
        put("pmax", self.pmax.map(|x| x.to_string()));
        put("nchi", self.nchi.map(|x| x.to_string()));
        put("entries", self.entries.clone());
        put("coeffs", self.coeffs.clone());
        put("seed", self.seed.map(|x| x.to_string()));
        put("cases", self.cases.map(|x| x.to_string()));
        out
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaAction {
    Print,
    Coherence,
    Basis,
}

#[derive(Clone, Copy, ValueEnum)]
enum EigensAction {
    ThetaPsi,
    Invariants,
    LpConstant,
    Herbrand,
}

#[derive(Clone, Copy, ValueEnum)]
enum ColemanAction {
    Col,
    Cw,
    Interp,
    Mel,
}

#[derive(Clone, Copy, ValueEnum)]
enum IkyAction {
    Delta,
    Dbar,
    SharpCheck,
    RandomSuite,
}

#[derive(Clone, Copy, ValueEnum)]
enum FittingSuite {
    All,
    Examples,
    Diagonal,
    Multiplicativity,
}

#[derive(Subcommand)]
enum Command {
    /// Gauss sums above l in Z[zeta_c, zeta_l]: magnitude and Galois equivariance.
    Gauss(P),
    /// Jacobi sums by the double sum and by the Gauss quotient.
    Jacobi(P),
    /// Prime factorization of Jacobi elements against beta*Theta.
    VerifyStickelberger(P),
    /// Stickelberger elements.
    Theta {
        #[arg(value_enum)]
        action: ThetaAction,
        #[command(flatten)]
        p: P,
    },
    /// Character eigenspaces and Iwasawa series.
    Eigens {
        #[arg(value_enum)]
        action: EigensAction,
        #[command(flatten)]
        p: P,
    },
    /// Table of (p, i) with B_(1, omega^-i) divisible by p, by two routes.
    Herbrand(P),
    /// Coleman maps, Coates-Wiles coefficients and Mel inversion.
    Coleman {
        #[arg(value_enum)]
        action: ColemanAction,
        #[command(flatten)]
        p: P,
    },
    /// The IKY measure of a Kummer vector.
    Iky {
        #[arg(value_enum)]
        action: IkyAction,
        #[command(flatten)]
        p: P,
    },
    /// Fitting ideal suites over Z/p^N[T]/((1+T)^(p^n) - 1).
    Fitting {
        #[arg(value_enum, default_value = "all")]
        suite: FittingSuite,
        #[command(flatten)]
        p: P,
    },
    /// Runs a command over a parameter grid.
    Sweep {
        /// Command to run.
        target: String,
        /// Its action, if it takes one.
        action: Option<String>,
        /// Axis `key=values`: values are comma-separated items `v`, `a..b`,
        /// `a..=b`, optionally prefixed by `primes:`. Repeatable.
        #[arg(long = "grid", required = true)]
        grid: Vec<String>,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        p: P,
    },
}

fn value_name<T: ValueEnum>(v: T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn execute(cli: &Cli) -> Result<stickel::Report, CliError> {
    let (name, action, flags): (&str, Option<String>, &P) = match &cli.command {
        Command::Gauss(p) => ("gauss", None, p),
        Command::Jacobi(p) => ("jacobi", None, p),
        Command::VerifyStickelberger(p) => ("verify-stickelberger", None, p),
        Command::Theta { action, p } => ("theta", Some(value_name(*action)), p),
        Command::Eigens { action, p } => ("eigens", Some(value_name(*action)), p),
        Command::Herbrand(p) => ("herbrand", None, p),
        Command::Coleman { action, p } => ("coleman", Some(value_name(*action)), p),
        Command::Iky { action, p } => ("iky", Some(value_name(*action)), p),
        Command::Fitting { suite, p } => ("fitting", Some(value_name(*suite)), p),
        Command::Sweep {
            target,
            action,
            grid,
            jobs,
            p,
        } => {
            let mut params = match &cli.config {
                Some(path) => load_config(path, target)?,
                None => Params::new(),
            };
            params.overlay(&p.params());
            return sweep::run_sweep(target, action.as_deref(), &params, grid, *jobs);
        }
    };
    let mut params = match &cli.config {
        Some(path) => load_config(path, name)?,
        None => Params::new(),
    };
    params.overlay(&flags.params());
    commands::run(name, action.as_deref(), &params)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| execute(&cli));
    let report = match outcome {
        Ok(Ok(r)) => r,
        Ok(Err(e)) => {
            eprintln!("stickel: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
        Err(_) => return ExitCode::from(EXIT_INTERNAL as u8),
    };
    let text = report.render(cli.format);
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                eprintln!("stickel: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}").and_then(|_| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("stickel: cannot write to stdout: {e}");
                    return ExitCode::from(EXIT_INTERNAL as u8);
                }
            }
        }
    }
    if !report.pass {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.pass == Some(false))
            .map(|c| c.name.as_str())
            .collect();
        eprintln!("stickel: FAIL ({})", failed.join("; "));
    }
    ExitCode::from(exit_status(&report) as u8)
}
