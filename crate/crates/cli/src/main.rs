//! `mincubic`: construct, classify and verify cubic surfaces over finite
//! fields.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use minimal_cubics::surface::DEFAULT_BUDGET;

use report::{RunReport, Status, Timings};

#[derive(Parser)]
#[command(name = "mincubic", version, about = "Minimal cubic surfaces over finite fields")]
pub struct Cli {
    /// Ceiling on fiber steps spent counting points.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Count to at least this depth when classifying.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    /// Where to write the surface or curve produced by the command.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Where to write the JSON run report (it is always printed to stdout).
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build a minimal surface of the given class and check its class.
    Construct {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        q: u64,
    },
    /// Classify a surface file by point counts.
    Classify {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Point counts N_1..N_d of a surface file.
    Count {
        #[arg(long)]
        surface: PathBuf,
        #[arg(long, default_value_t = 1)]
        d: u32,
        /// Also count by direct enumeration and compare.
        #[arg(long)]
        naive: bool,
    },
    /// Eckardt points and, for t^2 L + C surfaces, the distinguished lines.
    Eckardt {
        #[arg(long)]
        surface: PathBuf,
    },
    /// Normalize at an Eckardt point and twist by a non-square.
    Twist {
        #[arg(long)]
        surface: PathBuf,
        /// Coordinates x,y,z,t; extension elements as [c0,c1,...].
        #[arg(long)]
        point: String,
    },
    #[command(subcommand)]
    Ec(EcCommand),
    #[command(subcommand)]
    Weyl(WeylCommand),
    #[command(subcommand)]
    Blowup(BlowupCommand),
    /// Every applicable construction for each q, plus the F_2 check for q = 2.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1 {
        #[arg(long, value_delimiter = ',')]
        q: Vec<u64>,
    },
}

#[derive(Subcommand)]
pub enum EcCommand {
    /// First Weierstrass curve over F_q with trace b.
    Search {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        b: i64,
    },
    /// Structure of E[n](F_{q^d}) for a curve file in Weierstrass shape.
    Torsion {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        d: u32,
    },
    /// Run a curve recipe and emit the surface it produces.
    Recipe {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand)]
pub enum WeylCommand {
    /// The 25 conjugacy classes of W(E6).
    Table,
    /// Group order, class table, minimal classes and structure lemmas.
    Verify,
}

#[derive(Subcommand)]
pub enum BlowupCommand {
    /// The six-point blowup and its twist, of class c10.
    C10 {
        #[arg(long)]
        q: u64,
    },
    /// Classify every smooth cubic surface over F_2.
    F2scan,
    /// Plane cubics over F_2 with one rational point.
    #[command(name = "verify-lemma63")]
    VerifyLemma63,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let (name, inputs) = commands::describe(&cli.command);
    let result = commands::run(&cli);
    let (q, outputs, status) = match result {
        Ok(out) => (out.q, out.outputs, Status::ok()),
        Err(e) => {
            eprintln!("mincubic: {e:#}");
            (None, serde_json::Value::Null, Status::from_error(&e))
        }
    };
    let code = status.exit_code;
    let report = RunReport {
        command: name,
        inputs,
        q,
        outputs,
        status,
        timings: Timings { elapsed_ms: started.elapsed().as_millis() },
    };
    let text = serde_json::to_string_pretty(&report).expect("reports serialize");
    println!("{text}");
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("mincubic: cannot write {}: {e}", path.display());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code as u8)
}
