//! Command-line front end over JSON state, tree, and stream files.
//!
//! Exit codes: 0 on success, 2 on parse or invariant failures, 3 on bad
//! measurement orders, 4 when an operation needs a different qubit count.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::discriminator::{classify, estimate_ratio, gen_triples};
use crate::dtree::{fit_constrained, reconstruct_tree, reorder_tree, DivergenceKind};
use crate::error::Error;
use crate::io::{
    fmt_complex_entry, fmt_number, parse_sample_input, parse_state, parse_triples, tree_to_dot,
    TreeFile,
};
use crate::qstate::{bitstring, DensityMatrix};
use crate::sampler::{sample_tree, sample_urn, urn_event_probs, UrnSpec};

#[derive(Parser)]
#[command(
    name = "qdt",
    version,
    about = "Decision-tree toolkit for quantum measurement statistics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Print the probability of every outcome bitstring of a state file
    Probs {
        /// JSON state file
        state: PathBuf,
    },
    /// Reconstruct the branching tree of a state file and export it
    Tree {
        /// JSON state file
        state: PathBuf,
        /// Measurement order as comma-separated original qubit indices
        #[arg(long)]
        order: Option<String>,
        /// Output format
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
    },
    /// Fit the constrained two-parameter tree to a two-qubit state file
    Fit2 {
        /// JSON state file
        state: PathBuf,
    },
    /// Test a two-qubit state file for tensor-product structure
    Factor {
        /// JSON state file
        state: PathBuf,
        /// Largest outcome-probability deviation still called separable
        #[arg(long, default_value_t = 1e-6, value_parser = parse_positive)]
        tol: f64,
    },
    /// Sample outcomes from a state or tree file
    Sample {
        /// JSON state or tree file
        input: PathBuf,
        /// Number of samples
        #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify a coincidence stream as classical or quantum
    #[command(group(ArgGroup::new("source").required(true).args(["stream", "gen"])))]
    Discriminate {
        /// JSON file holding an array of 3-bit outcome strings
        #[arg(long)]
        stream: Option<PathBuf>,
        /// Generate a synthetic stream with this all-equal probability
        #[arg(long, value_name = "P_S", value_parser = parse_unit_interval)]
        gen: Option<f64>,
        /// Number of generated triples
        #[arg(short, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print exact urn event probabilities, optionally with estimates
    Urn {
        /// Purely black balls
        #[arg(long)]
        black: u64,
        /// Purely white balls
        #[arg(long)]
        white: u64,
        /// Half-black/half-white balls
        #[arg(long)]
        mixed: u64,
        /// Also estimate the probabilities from this many iterations
        #[arg(short, value_parser = clap::value_parser!(u64).range(1..))]
        n: Option<u64>,
        /// Random seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_positive(raw: &str) -> Result<f64, String> {
    let value: f64 = raw.parse().map_err(|_| format!("{raw:?} is not a number"))?;
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(format!("{raw} is not a positive finite number"))
    }
}

fn parse_unit_interval(raw: &str) -> Result<f64, String> {
    let value: f64 = raw.parse().map_err(|_| format!("{raw:?} is not a number"))?;
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(format!("{raw} is not in [0, 1]"))
    }
}

/// Parses the command line, runs the command, and maps errors to exit codes.
pub fn run() -> ExitCode {
    match execute(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::InvalidPermutation { .. } | Error::BadOrderSpec { .. } => 3,
                Error::TwoQubitsRequired { .. } => 4,
                _ => 2,
            })
        }
    }
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Probs { state } => cmd_probs(&state),
        Command::Tree {
            state,
            order,
            format,
        } => cmd_tree(&state, order.as_deref(), format),
        Command::Fit2 { state } => cmd_fit2(&state),
        Command::Factor { state, tol } => cmd_factor(&state, tol),
        Command::Sample { input, n, seed } => cmd_sample(&input, n, seed),
        Command::Discriminate {
            stream,
            gen,
            n,
            seed,
        } => cmd_discriminate(stream.as_deref(), gen, n, seed),
        Command::Urn {
            black,
            white,
            mixed,
            n,
            seed,
        } => cmd_urn(black, white, mixed, n, seed),
    }
}

fn cmd_probs(state: &Path) -> Result<(), Error> {
    let probs = parse_state(&fs::read_to_string(state)?)?.probs();
    let bits = probs.num_qubits();
    for (k, &p) in probs.probs().iter().enumerate() {
        println!("{} {}", bitstring(k, bits), fmt_number(p));
    }
    Ok(())
}

fn parse_order(raw: &str) -> Result<Vec<usize>, Error> {
    raw.split(',')
        .map(|part| part.trim().parse::<usize>())
        .collect::<Result<Vec<usize>, _>>()
        .map_err(|_| Error::BadOrderSpec {
            got: raw.to_string(),
        })
}

fn cmd_tree(state: &Path, order: Option<&str>, format: TreeFormat) -> Result<(), Error> {
    let probs = parse_state(&fs::read_to_string(state)?)?.probs();
    let tree = match order {
        Some(raw) => reorder_tree(&probs, &parse_order(raw)?)?,
        None => reconstruct_tree(&probs),
    };
    match format {
        TreeFormat::Json => println!("{}", TreeFile::from_tree(&tree).to_json()),
        TreeFormat::Dot => print!("{}", tree_to_dot(&tree)),
    }
    Ok(())
}

fn cmd_fit2(state: &Path) -> Result<(), Error> {
    let probs = parse_state(&fs::read_to_string(state)?)?.probs();
    let fit = fit_constrained(&probs, DivergenceKind::default())?;
    println!(
        "a={} c={} residual={}",
        fmt_number(fit.a),
        fmt_number(fit.c),
        fmt_number(fit.residual)
    );
    Ok(())
}

fn print_matrix(label: &str, matrix: &DensityMatrix) {
    println!("{label}:");
    for i in 0..matrix.dim() {
        let row: Vec<String> = (0..matrix.dim())
            .map(|j| {
                let entry = matrix.entries()[(i, j)];
                fmt_complex_entry(entry.re, entry.im)
            })
            .collect();
        println!("{}", row.join(" "));
    }
}

fn cmd_factor(state: &Path, tol: f64) -> Result<(), Error> {
    let density = parse_state(&fs::read_to_string(state)?)?.density();
    let report = density.factor_test(tol)?;
    let status = if report.separable {
        "separable"
    } else {
        "not separable"
    };
    println!("{status}, max_deviation={}", fmt_number(report.max_deviation));
    print_matrix("factor_first", &report.factor_first);
    print_matrix("factor_second", &report.factor_second);
    Ok(())
}

fn cmd_sample(input: &Path, n: u64, seed: u64) -> Result<(), Error> {
    let tree = parse_sample_input(&fs::read_to_string(input)?)?.into_tree();
    let report = sample_tree(&tree, n, seed);
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("reports always serialize")
    );
    Ok(())
}

fn cmd_discriminate(
    stream: Option<&Path>,
    gen: Option<f64>,
    n: u64,
    seed: u64,
) -> Result<(), Error> {
    let stream = match (stream, gen) {
        (Some(path), _) => parse_triples(&fs::read_to_string(path)?)?,
        (None, Some(p_s_target)) => gen_triples(p_s_target, n, seed),
        (None, None) => unreachable!("clap requires one source"),
    };
    let estimate = estimate_ratio(&stream)?;
    let verdict = classify(&estimate);
    println!(
        "{} ratio={} threshold={} margin={} p_s={} stderr={} n={}",
        verdict.label,
        fmt_number(estimate.ratio),
        fmt_number(verdict.threshold),
        fmt_number(verdict.margin),
        fmt_number(estimate.p_s),
        fmt_number(estimate.stderr_ratio),
        estimate.n
    );
    Ok(())
}

fn cmd_urn(black: u64, white: u64, mixed: u64, n: Option<u64>, seed: u64) -> Result<(), Error> {
    let urn = UrnSpec::new(black, white, mixed)?;
    let probs = urn_event_probs(&urn);
    println!(
        "p_black={} p_white={} p_both={} p_seq_bw={} p_seq_wb={}",
        fmt_number(probs.p_black),
        fmt_number(probs.p_white),
        fmt_number(probs.p_both),
        fmt_number(probs.p_seq_bw),
        fmt_number(probs.p_seq_wb)
    );
    if let Some(n) = n {
        let estimate = sample_urn(&urn, n, seed);
        println!(
            "estimate n={} seed={} rng={}: p_black={} p_white={} p_both={} p_seq_bw={} p_seq_wb={}",
            estimate.n,
            estimate.seed,
            estimate.rng,
            fmt_number(estimate.p_black),
            fmt_number(estimate.p_white),
            fmt_number(estimate.p_both),
            fmt_number(estimate.p_seq_bw),
            fmt_number(estimate.p_seq_wb)
        );
    }
    Ok(())
}
