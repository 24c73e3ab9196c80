use std::io::Read;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;

use admissible_cli::job::{CertifyKind, Command, Diagnostic, JobSpec, Options};
use admissible_cli::{execute, parse, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "admissible", version, about = "Resolve torsion-free sheaves on projective space by towers of blowups")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest internal degree used in invariant tables.
    #[arg(long, global = true)]
    degree_bound: Option<i64>,
    /// Append wall-clock timings in a volatile footer.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Lemma2,
    Locfree,
    Independence,
    Ev,
}

#[derive(Args)]
struct Common {
    /// Job file, or `-` for standard input.
    file: PathBuf,
    /// Per-step polarization exponents, comma separated.
    #[arg(long, value_delimiter = ',')]
    exponents: Option<Vec<u32>>,
    /// Only show charts whose label starts with this prefix.
    #[arg(long = "chart")]
    charts: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the blowup tower and certify every step.
    Resolve {
        #[command(flatten)]
        common: Common,
    },
    /// Run one certificate on the input module.
    Certify {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        common: Common,
        /// Rank for the local freeness test; defaults to the generic rank.
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Hilbert polynomial identities for the distinguished polarization.
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        /// The input is known to deform to a locally free sheaf.
        #[arg(long)]
        attest: bool,
    },
    /// A Fitting ideal of the input module.
    Fitting {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: usize,
    },
    /// Tower and Hilbert identities in one report.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[arg(long)]
        attest: bool,
    },
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

fn run(cli: &Cli) -> Report {
    let (common, command, rank, attested) = match &cli.command {
        Cmd::Resolve { common } => (common, Command::Resolve, None, false),
        Cmd::Certify { kind, common, rank } => {
            let kind = match kind {
                Kind::Lemma2 => CertifyKind::Lemma2,
                Kind::Locfree => CertifyKind::Locfree,
                Kind::Independence => CertifyKind::Independence,
                Kind::Ev => CertifyKind::Ev,
            };
            (common, Command::Certify { kind }, *rank, false)
        }
        Cmd::Hilbert { common, m, nmax, attest } => (common, Command::Hilbert { m: *m, nmax: *nmax }, None, *attest),
        Cmd::Fitting { common, index } => (common, Command::Fitting { index: *index }, None, false),
        Cmd::Report { common, m, nmax, attest } => (common, Command::Report { m: *m, nmax: *nmax }, None, *attest),
    };
    let text = match read_input(&common.file) {
        Ok(t) => t,
        Err(e) => {
            return Report::rejected(vec![Diagnostic {
                line: 0,
                column: 0,
                message: format!("cannot read {}: {e}", common.file.display()),
            }])
        }
    };
    let input = match parse(&text) {
        Ok(i) => i,
        Err(d) => return Report::rejected(d),
    };
    let job = JobSpec {
        input,
        command,
        options: Options {
            exponents: common.exponents.clone(),
            rank,
            attested,
            degree_bound: cli.degree_bound,
            charts: common.charts.clone(),
        },
    };
    match panic::catch_unwind(AssertUnwindSafe(|| execute(&job))) {
        Ok(r) => r,
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Report::internal(msg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let report = match pool.build() {
        Ok(pool) => pool.install(|| run(&cli)),
        Err(e) => Report::internal(format!("thread pool: {e}")),
    };
    let out = match cli.format {
        Format::Json => report.to_json(cli.timings),
        Format::Text => report.to_text(cli.timings),
    };
    print!("{out}");
    ExitCode::from(report.exit_code as u8)
}
