//! `fsz-forge`: construct the groups `S(p,j)`, verify their identities, count
//! `G_n(u, g)` and decide `FSZ_n`.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{Failure, FszTarget, Settings};
use report::{serialize_report, Format};

#[derive(Parser)]
#[command(
    name = "fsz-forge",
    version,
    about = "Exact computations with the p-groups S(p,j) and the FSZ property"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = "FSZ_FORGE_THREADS")]
    threads: Option<usize>,

    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Maximum number of group elements any enumeration may visit.
    #[arg(long, global = true, default_value_t = 100_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    limit: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check every identity of the construction for S(p,j).
    Verify {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: u32,
        /// Random elements for the power-formula and center samples.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
    },
    /// Count G_{p^j}(b a1, a1^{p^j}) and G_{p^j}(b a1, a1^{2p^j}).
    Witness {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: u32,
    },
    /// Count G_n(u, g) in S(p,j).
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        j: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
        /// Require the brute-force count.
        #[arg(long)]
        brute: bool,
    },
    /// Decide FSZ_n (or FSZ) for S(p,j) or a multiplication table.
    Fsz {
        #[arg(long, requires = "j", conflicts_with = "table")]
        p: Option<u64>,
        #[arg(long, requires = "p")]
        j: Option<u32>,
        /// JSON document {"order": n, "table": [[...]], "name": "..."}.
        #[arg(long, required_unless_present = "p")]
        table: Option<PathBuf>,
        #[arg(long)]
        n: Option<u64>,
        /// Scan every commuting pair instead of class representatives.
        #[arg(long)]
        no_reduction: bool,
    },
    /// Run the invariant suite on the default parameter grid.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(1);
        }
    };
    let settings = Settings {
        seed: cli.seed,
        limit: cli.limit,
    };
    let result = pool.install(|| match &cli.command {
        Command::Verify { p, j, samples } => commands::verify(*p, *j, *samples, &settings),
        Command::Witness { p, j } => commands::witness(*p, *j),
        Command::Count {
            p,
            j,
            n,
            u,
            g,
            brute,
        } => commands::count(*p, *j, *n, u, g, *brute, &settings),
        Command::Fsz {
            p,
            j,
            table,
            n,
            no_reduction,
        } => {
            let target = match (p, j, table) {
                (Some(p), Some(j), _) => FszTarget::Spj(*p, *j),
                (_, _, Some(path)) => FszTarget::Table(path),
                _ => unreachable!("clap enforces --p/--j or --table"),
            };
            commands::fsz(target, *n, !no_reduction, &settings)
        }
        Command::Selftest => commands::selftest(&settings),
    });
    match result {
        Ok(report) => {
            print!("{}", serialize_report(&report, cli.format));
            if report.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: internal verification failed");
                ExitCode::from(2)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(2)
        }
    }
}
