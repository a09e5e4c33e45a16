//! Command-line surface over the transform compiler, simulator and
//! oracle: batch circuit builds, gate statistics, transforms of data
//! files, the seeded verification suite and the frequency filter.
//!
//! Exit codes: 0 success, 1 validation error, 2 verification mismatch,
//! 3 I/O error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::json;

use qfft_core::data::{complex_to_pairs, DataSet, SuperpositionSet};
use qfft_core::{
    build_filter, build_qfft, decode_input, decode_spectrum, encode, encode_into, error_metrics,
    float_dft, from_json, oracle_qfft, qfft_gate_bound, run_basis, run_verification, to_json,
    Circuit, RegisterLayout, SparseState, VerifyOptions,
};

#[derive(Parser)]
#[command(name = "qfft", version, about = "Reversible basis-encoded FFT circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a transform circuit and write it as JSON.
    Build(BuildArgs),
    /// Report gate counts of a circuit file against the resource bound.
    Stats {
        /// Circuit JSON file.
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Transform a data file and write the decoded spectrum.
    Fft(FftArgs),
    /// Run the seeded circuit-versus-oracle verification suite.
    Verify(VerifyArgs),
    /// Split a data file into low-pass and high-pass sequences.
    Filter(FilterArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Transform length N (a power of two).
    #[arg(long)]
    n: usize,
    /// Input integer bits m.
    #[arg(long)]
    width: u32,
    /// Rotation accuracy bits A.
    #[arg(long)]
    accuracy: u32,
    /// Output circuit file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct FftArgs {
    /// Rotation accuracy bits A.
    #[arg(long)]
    accuracy: u32,
    /// Input data file ({"N", "m", "data"}), or a superposition file
    /// with --superposition.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output spectrum file.
    #[arg(long)]
    out: PathBuf,
    /// Treat the input as a superposition of data sets.
    #[arg(long)]
    superposition: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Seed for all randomized cases (printed in the report).
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Random inputs per (N, m, A) combination.
    #[arg(long, default_value_t = 50)]
    cases: usize,
    /// Flip a gate in each built circuit to exercise the mismatch path.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Args)]
struct FilterArgs {
    /// Rotation accuracy bits A.
    #[arg(long)]
    accuracy: u32,
    /// Cutoff frequency: slots cutoff..N-1 go to the high-pass output.
    #[arg(long)]
    cutoff: usize,
    /// Input data file.
    #[arg(long = "in")]
    input: PathBuf,
    /// Output file with both filtered sequences.
    #[arg(long)]
    out: PathBuf,
}

enum CliError {
    Validation(String),
    Mismatch(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(1),
            CliError::Mismatch(_) => ExitCode::from(2),
            CliError::Io(_) => ExitCode::from(3),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Mismatch(m) | CliError::Io(m) => m,
        }
    }
}

fn validation(err: impl std::fmt::Display) -> CliError {
    CliError::Validation(err.to_string())
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn check_transform_size(n: usize) -> Result<(), CliError> {
    if n < 2 || !n.is_power_of_two() {
        return Err(CliError::Validation(format!("N must be a power of two >= 2, got {n}")));
    }
    Ok(())
}

fn cmd_build(args: &BuildArgs) -> Result<(), CliError> {
    check_transform_size(args.n)?;
    let (circuit, layout) = build_qfft(args.n, args.width, args.accuracy).map_err(validation)?;
    write_file(&args.out, &to_json(&circuit))?;
    let stats = circuit.stats();
    println!(
        "wrote {}: N={} m={} A={} w={} qubits={} butterflies={} expanded_gates={}",
        args.out.display(),
        args.n,
        args.width,
        args.accuracy,
        layout.word_bits,
        circuit.num_qubits,
        circuit.metadata["butterflies"],
        stats.expanded_count,
    );
    Ok(())
}

fn cmd_stats(input: &Path) -> Result<(), CliError> {
    let circuit = from_json(&read_file(input)?).map_err(validation)?;
    let stats = circuit.stats();
    println!("circuit {}", input.display());
    println!("  qubits:   {} ({} ancilla)", stats.num_qubits, stats.num_ancilla);
    println!("  logical gates:");
    for (kind, count) in &stats.logical_counts {
        println!("    {}: {count}", kind.name());
    }
    println!("  logical total:  {}", stats.logical_total());
    println!("  expanded total: {}", stats.expanded_count);
    let (Some(n), Some(a), Some(w)) = (
        circuit.metadata.get("N").and_then(|v| v.as_u64()),
        circuit.metadata.get("A").and_then(|v| v.as_u64()),
        circuit.metadata.get("w").and_then(|v| v.as_u64()),
    ) else {
        println!("  no transform metadata; bound comparison skipped");
        return Ok(());
    };
    let bound = qfft_gate_bound(n as usize, w as u32, a as u32);
    println!("  resource bound {{32w-33 + A(45w-42)}} * (N/2) log2 N = {bound}");
    if stats.expanded_count <= bound {
        println!("  bound check: PASS ({} <= {bound})", stats.expanded_count);
        Ok(())
    } else {
        println!("  bound check: FAIL ({} > {bound})", stats.expanded_count);
        Err(CliError::Mismatch(format!(
            "expanded count {} exceeds the bound {bound}",
            stats.expanded_count
        )))
    }
}

fn transform_one(
    circuit: &Circuit,
    layout: &RegisterLayout,
    data: &[u64],
) -> Result<Vec<Complex64>, CliError> {
    let state = encode(data, layout).map_err(validation)?;
    let out = run_basis(circuit, &state).map_err(validation)?;
    Ok(decode_spectrum(&out, layout))
}

fn cmd_fft(args: &FftArgs) -> Result<(), CliError> {
    let bytes = read_file(&args.input)?;
    if args.superposition {
        return fft_superposition(args, &bytes);
    }
    let set: DataSet = serde_json::from_slice(&bytes).map_err(validation)?;
    check_transform_size(set.transform_size)?;
    let (circuit, layout) =
        build_qfft(set.transform_size, set.input_bits, args.accuracy).map_err(validation)?;
    let spectrum = transform_one(&circuit, &layout, &set.data)?;

    let oracle = oracle_qfft(&set.data, set.transform_size, set.input_bits, args.accuracy)
        .map_err(validation)?;
    let fmt = layout.format();
    let oracle_spectrum: Vec<Complex64> =
        oracle.values.iter().map(|v| v.to_complex(&fmt)).collect();
    let reference = float_dft(
        &set.data.iter().map(|&x| Complex64::new(x as f64, 0.0)).collect::<Vec<_>>(),
    );
    let metrics = error_metrics(&spectrum, &reference).map_err(validation)?;

    let doc = json!({
        "spectrum": complex_to_pairs(&spectrum),
        "oracle_spectrum": complex_to_pairs(&oracle_spectrum),
        "reference_dft": complex_to_pairs(&reference),
        "error": {
            "l_inf": metrics.l_inf,
            "l2": metrics.l2,
            "relative_l_inf": metrics.relative_l_inf,
        },
    });
    write_file(&args.out, format!("{doc:#}\n").as_bytes())?;
    println!("spectrum of {} points written to {}", set.transform_size, args.out.display());
    for (k, value) in spectrum.iter().enumerate() {
        println!("  X[{k}] = {:+.6} {:+.6}i", value.re, value.im);
    }
    println!(
        "error vs direct DFT: l_inf={:.3e} l2={:.3e} relative={:.3e}",
        metrics.l_inf, metrics.l2, metrics.relative_l_inf
    );
    if spectrum != oracle_spectrum {
        return Err(CliError::Mismatch("circuit and oracle spectra disagree".into()));
    }
    Ok(())
}

fn fft_superposition(args: &FftArgs, bytes: &[u8]) -> Result<(), CliError> {
    let set: SuperpositionSet = serde_json::from_slice(bytes).map_err(validation)?;
    check_transform_size(set.transform_size)?;
    let (circuit, layout) =
        build_qfft(set.transform_size, set.input_bits, args.accuracy).map_err(validation)?;
    // Validate normalization through the sparse-state constructor, then
    // transform term by term (a permutation cannot merge or split terms).
    let terms: Result<Vec<_>, _> = set
        .terms
        .iter()
        .map(|t| encode(&t.data, &layout).map(|s| (s, t.amplitude_complex())))
        .collect();
    let state = SparseState::new(terms.map_err(validation)?).map_err(validation)?;
    let _ = qfft_core::run(&circuit, &state).map_err(validation)?;

    let mut out_terms = Vec::new();
    for term in &set.terms {
        let spectrum = transform_one(&circuit, &layout, &term.data)?;
        out_terms.push(json!({
            "amplitude": term.amplitude,
            "spectrum": complex_to_pairs(&spectrum),
        }));
    }
    let doc = json!({ "terms": out_terms });
    write_file(&args.out, format!("{doc:#}\n").as_bytes())?;
    println!(
        "superposition of {} terms transformed, written to {}",
        set.terms.len(),
        args.out.display()
    );
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let options = VerifyOptions {
        seed: args.seed,
        cases: args.cases,
        inject_fault: args.inject_fault,
        ..VerifyOptions::default()
    };
    println!(
        "verification suite: seed={} cases={} N={:?} m={:?} A={:?}",
        options.seed, options.cases, options.transform_sizes, options.input_bits, options.accuracies
    );
    let report = run_verification(&options).map_err(validation)?;
    let name_width = report.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
    let mut table = String::new();
    for row in &report.rows {
        let _ = writeln!(
            table,
            "  {:<name_width$}  {}  {}",
            row.name,
            if row.passed { "PASS" } else { "FAIL" },
            row.detail
        );
    }
    print!("{table}");
    println!("seed {} / {} checks", report.seed, report.rows.len());
    if report.passed() {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL");
        let first = report.rows.iter().find(|r| !r.passed).unwrap();
        Err(CliError::Mismatch(format!("{}: {}", first.name, first.detail)))
    }
}

fn cmd_filter(args: &FilterArgs) -> Result<(), CliError> {
    let bytes = read_file(&args.input)?;
    let set: DataSet = serde_json::from_slice(&bytes).map_err(validation)?;
    check_transform_size(set.transform_size)?;
    if args.cutoff < 1 || args.cutoff >= set.transform_size {
        return Err(CliError::Validation(format!(
            "cutoff must satisfy 1 <= cutoff <= N-1, got {} for N={}",
            args.cutoff, set.transform_size
        )));
    }
    let (circuit, layout) =
        build_filter(set.transform_size, set.input_bits, args.accuracy, args.cutoff)
            .map_err(validation)?;
    let state = encode_into(&set.data, &layout, circuit.num_qubits).map_err(validation)?;
    let out = run_basis(&circuit, &state).map_err(validation)?;
    let low = decode_input(&out, &layout, 0);
    let high = decode_input(&out, &layout, 1);
    let reconstruction: f64 = set
        .data
        .iter()
        .zip(low.iter().zip(&high))
        .map(|(&x, (l, h))| (l + h - Complex64::new(x as f64, 0.0)).norm())
        .fold(0.0, f64::max);
    let doc = json!({
        "cutoff": args.cutoff,
        "low_pass": complex_to_pairs(&low),
        "high_pass": complex_to_pairs(&high),
        "reconstruction_l_inf": reconstruction,
    });
    write_file(&args.out, format!("{doc:#}\n").as_bytes())?;
    println!(
        "filter cutoff {} over {} points written to {}",
        args.cutoff,
        set.transform_size,
        args.out.display()
    );
    for j in 0..set.transform_size {
        println!(
            "  x[{j}]={:>3}  low={:+.4}{:+.4}i  high={:+.4}{:+.4}i",
            set.data[j], low[j].re, low[j].im, high[j].re, high[j].im
        );
    }
    println!("low + high reconstructs the input within l_inf = {reconstruction:.3e}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Build(args) => cmd_build(args),
        Command::Stats { input } => cmd_stats(input),
        Command::Fft(args) => cmd_fft(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Filter(args) => cmd_filter(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            err.exit_code()
        }
    }
}
