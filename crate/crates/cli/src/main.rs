use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lacunary_cli::commands::{self, FactorMode};

#[derive(Parser)]
#[command(name = "lacunary", version, about = "Exact factorization of sparse Laurent polynomials under monomial substitution")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a polynomial read from FILE (or - for stdin)
    Factor {
        /// Ring mode: uni-q, bi-qt or ff-z
        #[arg(long, default_value = "bi-qt")]
        mode: String,
        /// Emit the factorization as JSON
        #[arg(long)]
        json: bool,
        /// Input file containing one polynomial expression
        file: PathBuf,
    },
    /// Scan a box of directions and write a JSON-lines certificate catalog
    Scan {
        /// Input file containing the polynomial
        #[arg(long)]
        poly: PathBuf,
        /// Inclusive coordinate range LO..HI applied to every coordinate
        #[arg(long = "box", allow_hyphen_values = true)]
        box_range: String,
        /// Determinant bound for candidate matrices
        #[arg(long = "det-bound", default_value_t = 12)]
        det_bound: u64,
        /// Output catalog path
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (1 = sequential)
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Zero out wall times so repeated runs are byte-identical
        #[arg(long)]
        canonical: bool,
    },
    /// Run a registered verification fixture
    Verify {
        /// Fixture id
        id: String,
    },
    /// Emit candidate degenerate directions and pullback matrices for a box
    Calibrate {
        /// Input file containing the polynomial
        #[arg(long)]
        poly: PathBuf,
        /// Inclusive coordinate range LO..HI applied to every coordinate
        #[arg(long = "box", allow_hyphen_values = true)]
        box_range: String,
        /// Determinant bound for candidate matrices
        #[arg(long = "det-bound", default_value_t = 12)]
        det_bound: u64,
    },
}

fn read_input(path: &PathBuf) -> Result<String, String> {
    if path.as_os_str() == "-" {
        use std::io::Read;
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn parse_box(range: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| format!("box must look like LO..HI, got '{range}'"))?;
    let lo = lo.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<i64>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout();
    let code = match cli.command {
        Command::Factor { mode, json, file } => {
            let Some(mode) = FactorMode::parse(&mode) else {
                eprintln!("error: unknown mode '{mode}' (expected uni-q, bi-qt or ff-z)");
                return ExitCode::from(commands::EXIT_USAGE as u8);
            };
            match read_input(&file) {
                Ok(text) => commands::cmd_factor(&text, mode, json, &mut stdout),
                Err(e) => {
                    eprintln!("error: {e}");
                    commands::EXIT_USAGE
                }
            }
        }
        Command::Scan {
            poly,
            box_range,
            det_bound,
            out,
            jobs,
            canonical,
        } => match (read_input(&poly), parse_box(&box_range)) {
            (Ok(text), Ok((lo, hi))) => commands::cmd_scan(
                &text,
                lo,
                hi,
                det_bound,
                &out,
                jobs.max(1),
                canonical,
                &mut stdout,
            ),
            (Err(e), _) | (_, Err(e)) => {
                eprintln!("error: {e}");
                commands::EXIT_USAGE
            }
        },
        Command::Verify { id } => commands::cmd_verify(&id, &mut stdout),
        Command::Calibrate {
            poly,
            box_range,
            det_bound,
        } => match (read_input(&poly), parse_box(&box_range)) {
            (Ok(text), Ok((lo, hi))) => {
                commands::cmd_calibrate(&text, lo, hi, det_bound, &mut stdout)
            }
            (Err(e), _) | (_, Err(e)) => {
                eprintln!("error: {e}");
                commands::EXIT_USAGE
            }
        },
    };
    ExitCode::from(code as u8)
}
