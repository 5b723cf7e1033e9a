use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopfcalc::campaigns::DEFAULT_SEED;
use hopfcalc::exactla::Field;
use hopfcalc::integrals::Side;
use hopfcalc::volume::Gauge;

mod commands;

use commands::Failure;

/// Exact integrals, volumes and Fredholm indices of finite-dimensional Hopf algebras.
#[derive(Parser, Debug)]
#[command(name = "hopfcalc", version)]
struct Cli {
    /// Output format; JSON is the only one.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the bimonoid and Hopf axioms of a structure file.
    Check { bimonoid: PathBuf },
    /// Integral and cointegral spaces of a bimonoid.
    Integrals {
        bimonoid: PathBuf,
        #[arg(long, default_value = "two-sided", value_parser = parse_side)]
        side: Side,
        /// Also solve for the normalized (co)integral.
        #[arg(long)]
        normalized: bool,
    },
    /// Integrals along a homomorphism.
    Along {
        map: PathBuf,
        #[arg(long, default_value = "two-sided", value_parser = parse_side)]
        side: Side,
        #[arg(long)]
        normalized: bool,
        /// Decide whether the normalized integral is a generator.
        #[arg(long)]
        generator: bool,
    },
    /// Kernel bimonoid of a homomorphism.
    Kernel(SubArgs),
    /// Cokernel bimonoid of a homomorphism.
    Cokernel(SubArgs),
    /// Coimage bimonoid of a homomorphism.
    Coimage(SubArgs),
    /// Image bimonoid of a homomorphism.
    Image(SubArgs),
    /// The normalized generator integral μ_ξ, or the condition that prevents it.
    Mu { map: PathBuf },
    /// Inverse volume of a bimonoid.
    Vol { bimonoid: PathBuf },
    /// The pairing ⟨ξ⟩ = σ^B∘ξ∘σ_A.
    Pairing { map: PathBuf },
    /// Fredholm index report.
    Index { map: PathBuf },
    /// The composition scalar ω(ξ, ξ′) for ξ: A → B, ξ′: B → C.
    Omega { first: PathBuf, second: PathBuf },
    /// The functorial integral ξ_! in a gauge.
    Shriek {
        map: PathBuf,
        #[arg(long, default_value = "v0", value_parser = parse_gauge)]
        gauge: Gauge,
    },
    /// Generate group algebras, function algebras and induced maps.
    Group {
        #[command(subcommand)]
        what: GroupCommand,
    },
    /// Abelian-group oracle computations.
    Oracle {
        #[command(subcommand)]
        what: OracleCommand,
    },
    /// Run a verification campaign (or `all`).
    Verify {
        campaign: String,
        /// Seed for randomized instances; HOPFCALC_SEED takes precedence.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Args, Debug)]
struct SubArgs {
    map: PathBuf,
    /// Write the result here instead of standard output.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Invariant factors, e.g. `2,4`; empty for the trivial group.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    factors: Vec<u64>,
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    field: Field,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// The group algebra F[G].
    Algebra(GroupArgs),
    /// The function algebra F^G.
    Function(GroupArgs),
    /// The map F[G] → F[H] induced by a group homomorphism file; endpoint
    /// files are written next to the output.
    Induced {
        hom: PathBuf,
        #[arg(long, default_value = "Q", value_parser = parse_field)]
        field: Field,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    /// Smith normal form of an integer matrix given as JSON rows.
    Snf {
        #[arg(long)]
        matrix: String,
    },
    /// Kernel of a group homomorphism file.
    Kernel { hom: PathBuf },
    /// Cokernel of a group homomorphism file.
    Cokernel { hom: PathBuf },
    /// |Ker| / |Cok| of a group homomorphism file.
    Index { hom: PathBuf },
}

fn parse_side(s: &str) -> Result<Side, String> {
    s.parse().map_err(|e: hopfcalc::Error| e.to_string())
}

fn parse_gauge(s: &str) -> Result<Gauge, String> {
    s.parse().map_err(|e: hopfcalc::Error| e.to_string())
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|e: hopfcalc::Error| e.to_string())
}

fn seed(flag: Option<u64>) -> Result<u64, Failure> {
    match std::env::var("HOPFCALC_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::input(format!("HOPFCALC_SEED={v:?} is not an integer"))),
        Err(_) => Ok(flag.unwrap_or(DEFAULT_SEED)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let Format::Json = cli.format;
    match commands::run(cli.command) {
        Ok(value) => {
            print_json(&value);
            ExitCode::SUCCESS
        }
        Err(failure) => {
            print_json(&failure.report);
            if let Some(msg) = failure.report.get("reason").and_then(|r| r.as_str()) {
                eprintln!("hopfcalc: {msg}");
            }
            ExitCode::from(failure.code)
        }
    }
}

/// A closed pipe downstream is not an error worth reporting.
fn print_json(value: &serde_json::Value) {
    let mut out = std::io::stdout().lock();
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    let _ = writeln!(out, "{text}");
}
