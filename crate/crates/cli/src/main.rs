//! Command-line front end for the `gamma0-hecke` library.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on usage or
//! precondition errors.

mod checks;
mod output;
mod tables;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use gamma0_hecke::numeric::SpectralParameter;
use gamma0_hecke::{ExtendedRational, IntMatrix2};

use checks::TestFunction;
use output::Report;

#[derive(Parser)]
#[command(
    name = "gamma0-hecke",
    version,
    about = "Hecke operators on period functions for Γ₀(n)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for the parallel loops (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
struct Level {
    /// Level n of Γ₀(n).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
}

#[derive(Args)]
struct Index {
    /// Determinant m.
    #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
    m: i64,
}

#[derive(Args)]
struct Query {
    /// Rational `p/q` (or `1/0`).
    #[arg(long, allow_hyphen_values = true)]
    q: ExtendedRational,
}

#[derive(Args)]
struct Spectral {
    /// Spectral parameter `re,im`.
    #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
    s: SpectralParameter,
}

#[derive(Subcommand)]
enum Command {
    /// The Farey sequence F_n.
    Farey {
        #[arg(long)]
        n: u32,
    },
    /// The left neighbor sequence of q.
    Lns(Query),
    /// The formal sum M(q) for 0 ≤ q < 1.
    Mq(Query),
    /// Coset representatives of Γ₀(n) in SL(2, Z).
    Cosets(Level),
    /// The permutation ρ(g) for a word g in T, S, T'.
    Rho {
        #[command(flatten)]
        level: Level,
        #[arg(long)]
        word: String,
    },
    /// The map A ↦ σ_g(A) on X_m.
    Sigma {
        #[command(flatten)]
        index: Index,
        /// The word g in T, S, T'.
        #[arg(long, default_value = "I")]
        word: String,
        /// Restrict to a single A ∈ X_m, given as `a,b,c,d`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<IntMatrix2>,
    },
    /// The formal sum H̃(m).
    HeckeScalar(Index),
    /// The μ×μ Hecke operator matrix for Γ₀(n), m prime.
    HeckeVector {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        index: Index,
    },
    /// All matrices of determinant m with a > c ≥ 0 and d > b ≥ 0.
    Sm(Index),
    /// Three-term residual of a test function and of its Hecke image.
    CheckThreeTerm {
        #[command(flatten)]
        level: Level,
        /// Apply the m-th Hecke operator first (m prime).
        #[arg(long)]
        m: Option<i64>,
        #[command(flatten)]
        spectral: Spectral,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = TestFunction::InvZ)]
        psi: TestFunction,
    },
    /// Convergence of the finite-difference Laplacian on R_ζ^s.
    CheckLaplace {
        #[command(flatten)]
        spectral: Spectral,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Fine step; the coarse step is ten times larger.
        #[arg(long, default_value_t = gamma0_hecke::numeric::DEFAULT_LAPLACE_STEP)]
        h: f64,
        #[arg(long, default_value_t = 0.2)]
        order_tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Convergence of the η integral around a closed rectangle.
    CheckEtaLoop {
        #[command(flatten)]
        spectral: Spectral,
        /// Coarsest panel count per side; doubled twice.
        #[arg(long, default_value_t = 8)]
        panels: usize,
        #[arg(long, default_value_t = 0.3)]
        order_tol: f64,
    },
    /// Every invariant available for (n, m), one line per property.
    VerifyAll {
        #[command(flatten)]
        level: Level,
        #[command(flatten)]
        index: Index,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn dispatch(command: Command) -> gamma0_hecke::Result<Report> {
    use Command::*;
    match command {
        Farey { n } => tables::farey(n),
        Lns(q) => tables::left_neighbors(q.q),
        Mq(q) => tables::mq(q.q),
        Cosets(level) => tables::cosets(level.n),
        Rho { level, word } => tables::rho(level.n, &word),
        Sigma { index, word, matrix } => tables::sigma_map(index.m, &word, matrix),
        HeckeScalar(index) => tables::hecke_scalar(index.m),
        HeckeVector { level, index } => tables::hecke_vector(level.n, index.m),
        Sm(index) => tables::sm(index.m),
        CheckThreeTerm {
            level,
            m,
            spectral,
            points,
            tol,
            psi,
        } => checks::three_term(level.n, m, spectral.s, points, tol, psi),
        CheckLaplace {
            spectral,
            points,
            h,
            order_tol,
            seed,
        } => checks::laplace(spectral.s, points, h, order_tol, seed),
        CheckEtaLoop {
            spectral,
            panels,
            order_tol,
        } => checks::eta_loop(spectral.s, panels, order_tol),
        VerifyAll {
            level,
            index,
            tol,
            seed,
        } => checks::verify_all(level.n, index.m, tol, seed),
    }
}

fn emit(report: &Report, format: Format, out: Option<&PathBuf>) -> anyhow::Result<()> {
    let text = match format {
        Format::Json => serde_json::to_string(&report.json)? + "\n",
        Format::Tsv => report.tsv.clone(),
    };
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match dispatch(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&report, cli.format, cli.out.as_ref()) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
