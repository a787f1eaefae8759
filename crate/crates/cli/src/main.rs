//! Command-line surface: input parsing, report formatting, exit codes.
//!
//! Exit code contract: 0 success, 2 invalid input, 3 resource cap exceeded,
//! 4 verification failure.

mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::json;

use asreg_core::decompose::analyze;
use asreg_core::homology::CoeffField;
use asreg_core::oracle;
use asreg_core::report::build_report;
use asreg_core::semigroup::SemigroupPresentation;
use asreg_core::veronese::{self, VeroneseParams};
use asreg_core::{Caps, Error};

#[derive(Parser)]
#[command(
    name = "asreg",
    about = "Exact invariants of homogeneous simplicial affine semigroup rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CommonFlags {
    /// Emit the report as JSON.
    #[arg(long)]
    json: bool,
    /// Compute homology ranks over the prime field of this characteristic
    /// instead of the rationals.
    #[arg(long = "char")]
    characteristic: Option<u64>,
    /// Highest degree layer the enumeration may materialize.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Largest allowed cardinality of a single layer.
    #[arg(long)]
    max_layer: Option<usize>,
}

impl CommonFlags {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(d) = self.max_degree {
            caps.max_degree = d;
        }
        if let Some(l) = self.max_layer {
            caps.max_layer = l;
        }
        caps
    }

    fn field(&self) -> Result<CoeffField, CliError> {
        match self.characteristic {
            None => Ok(CoeffField::Rational),
            Some(p) => Ok(CoeffField::prime(p)?),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the class decomposition: members, shifts, and monomial ideals.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Print the regularity and the reduction number.
    Regularity {
        file: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Print the classification flags and all recorded bound checks.
    Properties {
        file: PathBuf,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Closed-form invariants of the full Veronese ring with the given
    /// dimension and degree.
    Veronese {
        dim: usize,
        alpha: u64,
        /// Also run the full pipeline on the Veronese presentation and
        /// cross-check it against the closed forms.
        #[arg(long)]
        pipeline: bool,
        #[command(flatten)]
        flags: CommonFlags,
    },
    /// Run the brute-force oracles against the primary implementations.
    Verify {
        /// Presentation file to verify.
        file: Option<PathBuf>,
        /// Verify this many random presentations (and as many random
        /// monomial ideals) instead of, or in addition to, a file.
        #[arg(long)]
        random: Option<usize>,
        /// Seed for the random corpus.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        flags: CommonFlags,
    },
}

enum CliError {
    Input(String),
    Cap(String),
    Verify(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BoundExceeded { .. } => CliError::Cap(e.to_string()),
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Verify(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m)
            | CliError::Cap(m)
            | CliError::Verify(m)
            | CliError::Internal(m) => m,
        }
    }
}

fn load_presentation(path: &PathBuf) -> Result<SemigroupPresentation, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let (dim, alpha, gens) = input::parse(&text)?;
    Ok(SemigroupPresentation::new(dim, alpha, gens)?)
}

/// JSON numbers when they fit a signed 64-bit value, decimal strings beyond.
fn big_json(b: &BigInt) -> serde_json::Value {
    match b.to_i64() {
        Some(i) => json!(i),
        None => json!(b.to_string()),
    }
}

fn run_report(
    file: &PathBuf,
    flags: &CommonFlags,
    mode: ReportMode,
) -> Result<(), CliError> {
    let p = load_presentation(file)?;
    let caps = flags.caps();
    let (dec, rr) = analyze(&p, flags.field()?, &caps)?;
    let report = build_report(&p, &dec, &rr)?;
    if flags.json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        return Ok(());
    }
    match mode {
        ReportMode::Decompose => {
            println!(
                "dim={} alpha={} f={} codim={}",
                report.dim, report.alpha, report.f, report.codim
            );
            for (t, (class, cr)) in dec.classes.iter().zip(&report.classes).enumerate() {
                let members = class
                    .members
                    .iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                let ideal = class
                    .ideal
                    .min_gens()
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(", ");
                println!(
                    "class {}: h={} deg_h={} ideal=({}) gamma={{{}}}",
                    t + 1,
                    class.shift,
                    cr.deg_h,
                    ideal,
                    members
                );
            }
            println!(
                "properties: seminormal={} normal={} cohen_macaulay={}",
                report.seminormal, report.normal, report.cohen_macaulay
            );
        }
        ReportMode::Regularity => {
            println!("reg={}", report.regularity);
            println!("red={}", report.reduction_number);
        }
        ReportMode::Properties => {
            println!("seminormal={}", report.seminormal);
            println!("normal={}", report.normal);
            println!("cohen_macaulay={}", report.cohen_macaulay);
            println!("reg={}", report.regularity);
            println!("red={}", report.reduction_number);
            println!("f={}", report.f);
            println!("codim={}", report.codim);
            println!("dim={}", report.dim);
            println!("bound_checks:");
            for b in &report.bound_checks {
                println!(
                    "  {}: lhs={} rhs={} satisfied={}",
                    b.name, b.lhs, b.rhs, b.satisfied
                );
            }
        }
    }
    if !report.warnings.is_empty() {
        for w in &report.warnings {
            println!("warning: {w}");
        }
    }
    Ok(())
}

enum ReportMode {
    Decompose,
    Regularity,
    Properties,
}

fn run_veronese(
    dim: usize,
    alpha: u64,
    pipeline: bool,
    flags: &CommonFlags,
) -> Result<(), CliError> {
    let params =
        VeroneseParams::new(dim, alpha).map_err(|e| CliError::Input(e.to_string()))?;
    let reg = veronese::regularity(&params);
    let (deg, codim) = veronese::deg_codim(&params)?;
    let diff = &deg - &codim;

    let mut pipeline_result = None;
    if pipeline {
        let caps = flags.caps();
        let p = veronese::presentation(&params, &caps)?;
        let (_, rr) = analyze(&p, flags.field()?, &caps)?;
        if rr.regularity != reg || BigInt::from(rr.degree) != deg {
            return Err(CliError::Verify(format!(
                "pipeline disagrees with closed forms: reg {} vs {reg}, f {} vs {deg}",
                rr.regularity, rr.degree
            )));
        }
        pipeline_result = Some(rr);
    }

    if flags.json {
        let mut obj = json!({
            "dim": dim,
            "alpha": alpha,
            "regularity": reg,
            "deg": big_json(&deg),
            "codim": big_json(&codim),
            "deg_minus_codim": big_json(&diff),
        });
        if let Some(rr) = &pipeline_result {
            obj["pipeline"] = json!({
                "regularity": rr.regularity,
                "f": rr.degree,
                "reduction_number": rr.reduction_number,
            });
        }
        println!("{}", serde_json::to_string_pretty(&obj).expect("serializes"));
    } else {
        println!("dim={dim} alpha={alpha}");
        println!("reg={reg}");
        println!("deg={deg}");
        println!("codim={codim}");
        println!("deg_minus_codim={diff}");
        if let Some(rr) = &pipeline_result {
            println!("pipeline_reg={}", rr.regularity);
            println!("pipeline_f={}", rr.degree);
            println!("pipeline_red={}", rr.reduction_number);
            println!("pipeline=ok");
        }
    }
    Ok(())
}

fn run_verify(
    file: Option<&PathBuf>,
    random: Option<usize>,
    seed: u64,
    flags: &CommonFlags,
) -> Result<(), CliError> {
    if file.is_none() && random.is_none() {
        return Err(CliError::Input(
            "verify needs a presentation file or --random <count>".into(),
        ));
    }
    let caps = flags.caps();
    let mut all_checks: Vec<(String, oracle::VerifyCheck)> = Vec::new();

    if let Some(path) = file {
        let p = load_presentation(path)?;
        for check in oracle::verify_presentation(&p, &caps)? {
            all_checks.push((path.display().to_string(), check));
        }
    }
    if let Some(count) = random {
        let presentations =
            oracle::random_presentations(seed, count, &oracle::CorpusOptions::default());
        for (k, p) in presentations.iter().enumerate() {
            for check in oracle::verify_presentation(p, &caps)? {
                all_checks.push((format!("random presentation {}", k + 1), check));
            }
        }
        for (k, ideal) in oracle::random_monomial_ideals(seed ^ 0xbe77, count, 5, 4, 3)
            .iter()
            .enumerate()
        {
            let mut compared = 0usize;
            let passed = oracle::betti_agrees(ideal, &caps, &mut compared)?;
            all_checks.push((
                format!("random ideal {}", k + 1),
                oracle::VerifyCheck {
                    name: "betti_oracle".into(),
                    passed,
                    detail: format!("{compared} multidegrees compared"),
                },
            ));
        }
    }

    let failed: Vec<&(String, oracle::VerifyCheck)> =
        all_checks.iter().filter(|(_, c)| !c.passed).collect();
    if flags.json {
        let obj = json!({
            "checks": all_checks.iter().map(|(src, c)| json!({
                "source": src,
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "passed": failed.is_empty(),
        });
        println!("{}", serde_json::to_string_pretty(&obj).expect("serializes"));
    } else {
        for (src, c) in &all_checks {
            println!(
                "{src}: {}: {} ({})",
                c.name,
                if c.passed { "ok" } else { "MISMATCH" },
                c.detail
            );
        }
        println!("verify: {}", if failed.is_empty() { "ok" } else { "FAILED" });
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verify(format!(
            "{} oracle check(s) disagreed",
            failed.len()
        )))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Decompose { file, flags } => run_report(file, flags, ReportMode::Decompose),
        Command::Regularity { file, flags } => run_report(file, flags, ReportMode::Regularity),
        Command::Properties { file, flags } => run_report(file, flags, ReportMode::Properties),
        Command::Veronese {
            dim,
            alpha,
            pipeline,
            flags,
        } => run_veronese(*dim, *alpha, *pipeline, flags),
        Command::Verify {
            file,
            random,
            seed,
            flags,
        } => run_verify(file.as_ref(), *random, *seed, flags),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
