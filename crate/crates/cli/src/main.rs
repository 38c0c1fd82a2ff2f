use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use theta_cli::{
    cmd_abelian, cmd_dihedral, cmd_oracle, cmd_verify, CliError, Format, GroupSpec, Method, Render,
    Scope, DEFAULT_MAX_ORDER,
};

/// Exact automorphism fixed-point spectra θ(G, d).
#[derive(Parser)]
#[command(name = "theta", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV.
    #[arg(long, global = true)]
    csv: bool,

    /// Write the report to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Worker threads for enumeration (1 forces sequential execution).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    /// Largest group order to enumerate.
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_MAX_ORDER)]
    max_order: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum of Z_{p^a} ⊕ Z_{p^b}, a < b.
    Abelian {
        #[arg(short = 'p', long = "prime")]
        prime: u64,
        #[arg(short = 'a')]
        a: u32,
        #[arg(short = 'b')]
        b: u32,
        #[arg(long, value_enum, default_value_t = Method::Enumerate)]
        method: Method,
    },
    /// Spectrum of the dihedral group D_{2n}.
    #[command(group(ArgGroup::new("size").required(true).args(["n", "order"])))]
    Dihedral {
        /// Rotation order n (the group has 2n elements).
        #[arg(short = 'n')]
        n: Option<u64>,
        /// Group order 2n, as an alternative to -n.
        #[arg(long)]
        order: Option<u64>,
        #[arg(long, value_enum, default_value_t = Method::Enumerate)]
        method: Method,
    },
    /// Brute-force spectrum from a Cayley table: `zsum:m1,m2,...` or `dihedral:n`.
    Oracle {
        #[arg(value_name = "GROUP")]
        spec: String,
    },
    /// Check enumerations against the closed forms and the oracle.
    #[command(group(ArgGroup::new("scope").args(["paper", "primes"])))]
    Verify {
        /// Run the full reference suite (the default).
        #[arg(long)]
        paper: bool,
        /// Only compare the Z_p ⊕ Z_{p^2} spectrum at these primes.
        #[arg(long, value_delimiter = ',')]
        primes: Option<Vec<u64>>,
    },
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| CliError::Input(e.to_string()))?;
    }
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Table
    };
    let (text, code) = match cli.command {
        Command::Abelian {
            prime,
            a,
            b,
            method,
        } => {
            let r = cmd_abelian(prime, a, b, method, cli.max_order)?;
            (r.render(format), if r.passed() { 0 } else { 1 })
        }
        Command::Dihedral { n, order, method } => {
            let n = match (n, order) {
                (Some(n), _) => n,
                (None, Some(o)) if o % 2 == 0 => o / 2,
                (None, Some(o)) => {
                    return Err(CliError::Input(format!("dihedral group order {o} is odd")))
                }
                (None, None) => unreachable!("clap requires -n or --order"),
            };
            let r = cmd_dihedral(n, method, cli.max_order)?;
            (r.render(format), if r.passed() { 0 } else { 1 })
        }
        Command::Oracle { spec } => {
            let spec: GroupSpec = spec.parse()?;
            let r = cmd_oracle(&spec, cli.max_order)?;
            (r.render(format), 0)
        }
        Command::Verify { paper: _, primes } => {
            let scope = match primes {
                Some(ps) => Scope::Primes(ps),
                None => Scope::Paper,
            };
            let r = cmd_verify(&scope)?;
            (r.render(format), r.exit_code())
        }
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::from(code))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("theta: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
