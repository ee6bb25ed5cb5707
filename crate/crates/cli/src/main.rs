mod job;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use twistforms::typea::DEFAULT_NORM_BOUND;
use twistforms::Error;

use job::{diff, golden_jobs, run, size_cap, Format, JobSpec, DEFAULT_ENUM_CLASSES};

const EX_USAGE: u8 = 64;
const EX_DATAERR: u8 = 65;
const EX_UNAVAILABLE: u8 = 69;
const EX_SOFTWARE: u8 = 70;

/// Counts twisted forms of almost-simple groups over Hasse domains of curves
/// over finite fields.
#[derive(Parser)]
#[command(name = "twistforms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the twisted forms of one group.
    ///
    /// Curves: `P1 q=<q>`, `elliptic q=<q> a=[a1,a2,a3,a4,a6]`, `double q=<q> h=<poly>`
    /// (q is a prime or `p^k`). Places of S, comma separated: `inf`, `inf[c]`, `(x)`,
    /// `(x,y)`, `(X:Y:Z)`, `poly:<monic irreducible>`.
    /// Groups: `[index]<letter><rank>[-adjoint|-sc|-intermediate]`, or `A1-SL1` together
    /// with `--quaternion "a=<fn> b=<fn> [bound=<d>]"`.
    Classify {
        #[arg(long)]
        curve: String,
        #[arg(long = "S")]
        places: String,
        #[arg(long)]
        group: String,
        /// Tits class as local invariants, `[c1,...,cn]` summing to 0.
        #[arg(long)]
        tits: Option<String>,
        /// D4 cubic class: `constant`, or `splitting=[..] places_above_S=[..] pic_kernel=[..]`.
        #[arg(long)]
        cubic: Vec<String>,
        /// Quaternion algebra for A1-SL1: `a=<fn> b=<fn> [bound=<d>]`.
        #[arg(long)]
        quaternion: Option<String>,
        /// Whether [A] ~ [A^op] identifies classes for E6 (`yes` or `no`).
        #[arg(long)]
        tilde: Option<String>,
        /// Largest number of quadratic classes to enumerate.
        #[arg(long = "bound-enum", default_value_t = DEFAULT_ENUM_CLASSES)]
        bound_enum: usize,
        /// Degree bound of the reduced-norm search.
        #[arg(long = "bound-norm", default_value_t = DEFAULT_NORM_BOUND)]
        bound_norm: usize,
        /// `text` or `structured`.
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run the stored example jobs and compare with the expected reports.
    PaperExamples {
        /// Read expected reports from this directory instead of the built-in copies.
        #[arg(long = "golden-dir")]
        golden_dir: Option<PathBuf>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => EX_USAGE,
        Error::InvalidInput(_) | Error::BoundExceeded(_) => EX_DATAERR,
        Error::Unsupported(_) => EX_UNAVAILABLE,
        Error::Internal(_) => EX_SOFTWARE,
    }
}

fn fail(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(&e))
}

fn paper_examples(dir: Option<PathBuf>) -> ExitCode {
    let cap = match size_cap() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let mut failed = 0;
    for g in golden_jobs() {
        let expected = match &dir {
            Some(d) => match std::fs::read_to_string(d.join(format!("{}.txt", g.name))) {
                Ok(s) => s,
                Err(e) => {
                    println!("FAIL {:<22} cannot read expected report: {e}", g.name);
                    failed += 1;
                    continue;
                }
            },
            None => g.expected.to_string(),
        };
        match run(&g.job, cap) {
            Ok(out) => match diff(&expected, &out) {
                None => println!("PASS {}", g.name),
                Some(d) => {
                    println!("FAIL {:<22} {d}", g.name);
                    failed += 1;
                }
            },
            Err(e) => {
                println!("FAIL {:<22} error: {e}", g.name);
                failed += 1;
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EX_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Classify {
            curve,
            places,
            group,
            tits,
            cubic,
            quaternion,
            tilde,
            bound_enum,
            bound_norm,
            format,
        } => {
            let tilde = match tilde.as_deref() {
                None => None,
                Some("yes") => Some(true),
                Some("no") => Some(false),
                Some(t) => {
                    return fail(Error::Parse(format!("--tilde takes yes or no, got {t:?}")))
                }
            };
            let format = match Format::parse(&format) {
                Ok(f) => f,
                Err(e) => return fail(e),
            };
            let job = JobSpec {
                curve,
                places,
                group,
                tits,
                cubic,
                quaternion,
                tilde,
                bound_enum,
                bound_norm,
                format,
            };
            match size_cap().and_then(|cap| run(&job, cap)) {
                Ok(out) => {
                    print!("{out}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::PaperExamples { golden_dir } => paper_examples(golden_dir),
    }
}
