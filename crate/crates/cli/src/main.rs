use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use brauer_redux_core::scenario::{
    exit, run_scenario, run_suite, verify_triangle, Report, RunOptions, Scenario, ScenarioKind,
};
use brauer_redux_core::triangle::TriangleGrid;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

/// Index reduction of Brauer classes along curves, with brute-force cross-checks.
#[derive(Parser)]
#[command(name = "brauer-redux", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Emit the machine-readable JSON report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file ({"schema": 1, "scenarios": [...]}).
    Run {
        file: PathBuf,
        /// Override the search bound of every genus-1 scenario.
        #[arg(long)]
        bound: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Check min = gcd = closed form over the capacity grid.
    VerifyTriangle {
        #[arg(long, default_value_t = 5)]
        pmax: u64,
        #[arg(long, default_value_t = 4)]
        nmax: u32,
        #[arg(long, default_value_t = 5)]
        cpcmax: u32,
        #[arg(long, default_value_t = 6)]
        mmax: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Genus-1 index reduction; payload {"beta", "model", "bound"?}.
    Genus1 {
        payload: PathBuf,
        #[arg(long)]
        bound: Option<u64>,
        #[command(flatten)]
        out: Output,
    },
    /// Beta-index reduction of a point set; payload {"points", "beta"}.
    Iota {
        payload: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// General formula over moduli strata; payload {"moduli", "beta"}.
    General {
        payload: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Twisted Riemann-Roch: deg + rank (1 - genus).
    Rr {
        #[arg(long, allow_hyphen_values = true)]
        deg: i64,
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        genus: u64,
        #[command(flatten)]
        out: Output,
    },
    /// t-th forward difference of a polynomial given by ascending coefficients.
    Hilbert {
        /// Comma-separated exact rationals, e.g. 0,1,0,1/2.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coeffs: Vec<String>,
        #[arg(long)]
        t: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        m: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Rank n^g of the twisted bundle from a Fourier-Mukai transform.
    FmRank {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Whether ind divides per^g.
    PiCheck {
        #[arg(long)]
        per: u64,
        #[arg(long)]
        ind: u64,
        #[arg(long)]
        g: u32,
        /// The period supplied is that of the Brauer class of an odd-order torsor.
        #[arg(long)]
        odd_order: bool,
        #[command(flatten)]
        out: Output,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(exit::INPUT_ERROR as u8)
        }
    }
}

fn execute(command: Command) -> Result<i32, String> {
    let (report, out) = match command {
        Command::Run { file, bound, out } => {
            let report = run_suite(&file, &RunOptions { bound }).map_err(|e| e.to_string())?;
            (report, out)
        }
        Command::VerifyTriangle {
            pmax,
            nmax,
            cpcmax,
            mmax,
            out,
        } => (
            verify_triangle(&TriangleGrid {
                pmax,
                nmax,
                cpcmax,
                mmax,
            }),
            out,
        ),
        Command::Genus1 {
            payload,
            bound,
            out,
        } => {
            let opts = RunOptions { bound };
            (
                single(ScenarioKind::LocalGenus1, read_json(&payload)?, &opts),
                out,
            )
        }
        Command::Iota { payload, out } => (
            single(
                ScenarioKind::Iota,
                read_json(&payload)?,
                &RunOptions::default(),
            ),
            out,
        ),
        Command::General { payload, out } => (
            single(
                ScenarioKind::General,
                read_json(&payload)?,
                &RunOptions::default(),
            ),
            out,
        ),
        Command::Rr {
            deg,
            rank,
            genus,
            out,
        } => (
            single(
                ScenarioKind::RiemannRoch,
                json!({"deg": deg, "rank": rank, "genus": genus}),
                &RunOptions::default(),
            ),
            out,
        ),
        Command::Hilbert { coeffs, t, m, out } => (
            single(
                ScenarioKind::Hilbert,
                json!({"chi": {"coeffs": coeffs}, "t": t, "m": m}),
                &RunOptions::default(),
            ),
            out,
        ),
        Command::FmRank { g, n, out } => (
            single(
                ScenarioKind::FourierMukai,
                json!({"g": g, "n": n}),
                &RunOptions::default(),
            ),
            out,
        ),
        Command::PiCheck {
            per,
            ind,
            g,
            odd_order,
            out,
        } => (
            single(
                ScenarioKind::FourierMukai,
                json!({"g": g, "per": per, "ind": ind, "odd_order": odd_order}),
                &RunOptions::default(),
            ),
            out,
        ),
    };
    if out.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_text(use_color()));
    }
    Ok(report.exit_code())
}

fn single(kind: ScenarioKind, payload: Value, opts: &RunOptions) -> Report {
    let scenario = Scenario {
        name: Some(kind.as_str().to_string()),
        kind,
        payload,
        expected: None,
    };
    Report {
        rows: vec![run_scenario(&scenario, opts)],
    }
}

fn read_json(path: &Path) -> Result<Value, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed JSON in {}: {e}", path.display()))
}

fn use_color() -> bool {
    std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal()
}
