mod commands;
mod config;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{AlgebraKind, MonadArgs, Outcome, SampleKind};
use config::{CommonArgs, RunConfig};

/// Exact computations on McKay quivers, quiver varieties, graded algebras
/// and monads over P²_Γ.
///
/// Exit status: 0 when every certificate passes, 1 when one fails, 2 on
/// usage or input errors.
#[derive(Parser, Debug)]
#[command(name = "nakajima", version)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// McKay quiver, Cartan matrix, δ and special vertices
    Mckay,
    /// ω = e_i − Ĉ·ω₀ for a class of dimension one
    Decompose {
        #[arg(long, allow_hyphen_values = true)]
        omega: String,
    },
    /// [N] = [W] + [V⊗L] − 2[V] and its decomposition
    Classify,
    /// Emit quiver data as JSON
    Sample {
        #[arg(long, value_enum, default_value = "cm")]
        kind: SampleKind,
        /// matrix size for cm, cycle length for cycle
        #[arg(long)]
        k: Option<usize>,
    },
    /// Moment map, stability and costability of quiver data
    Verify {
        /// JSON file, or - for stdin
        #[arg(long, default_value = "-")]
        data: String,
    },
    /// Assemble and certify the monad of quiver data
    Monad {
        #[arg(long, conflicts_with = "from")]
        data: Option<String>,
        #[arg(long, value_enum)]
        from: Option<SampleKind>,
        #[arg(long)]
        k: Option<usize>,
        /// framing window length
        #[arg(long, default_value_t = 3)]
        window: usize,
    },
    /// Koszul and co-Koszul exactness of A^τ
    Koszul,
    /// Dimension table of A^τ or P^τ
    Hilbert {
        #[arg(long, value_enum)]
        algebra: Option<AlgebraKind>,
    },
    /// Cohomology classes of O(i) on P²_Γ
    Cohomology {
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        max: i64,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let cfg = RunConfig::from_args(&cli.common)?;
    if cfg.verbosity > 0 {
        eprintln!("config: {}", serde_json::to_string(&cfg)?);
    }
    match &cli.cmd {
        Cmd::Mckay => commands::mckay(&cfg),
        Cmd::Decompose { omega } => commands::decompose(&cfg, omega),
        Cmd::Classify => commands::classify(&cfg),
        Cmd::Sample { kind, k } => commands::sample(&cfg, *kind, *k),
        Cmd::Verify { data } => commands::verify(&cfg, data),
        Cmd::Monad { data, from, k, window } => {
            commands::monad(&cfg, &MonadArgs { data: data.as_deref(), from: *from, k: *k, window: *window })
        }
        Cmd::Koszul => commands::koszul(&cfg),
        Cmd::Hilbert { algebra } => commands::hilbert(&cfg, *algebra),
        Cmd::Cohomology { min, max } => commands::cohomology(&cfg, *min, *max),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
