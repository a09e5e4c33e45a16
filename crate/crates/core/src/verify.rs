//! Seeded cross-check suite: circuit-versus-oracle bit-exactness,
//! inverse round trips, gate-count bounds and the accuracy sweep.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::compiler::{build_iqfft, build_qfft, butterfly_schedule, qfft_gate_bound, CompileError};
use crate::oracle::{error_metrics, float_dft, oracle_qfft, OracleError};
use crate::simulator::{decode_spectrum, decode_words, encode, run_basis, BasisState, SimulatorError};

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error(transparent)]
    Compile(#[from] CompileError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Simulator(#[from] SimulatorError),
}

/// Configuration of the cross-check suite. Everything is seeded; the same
/// options always produce the same report.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub transform_sizes: Vec<usize>,
    pub input_bits: Vec<u32>,
    pub accuracies: Vec<u32>,
    /// Random inputs per (N, m, A) combination.
    pub cases: usize,
    /// Flip one gate operand in each built circuit, to exercise the
    /// mismatch path.
    pub inject_fault: bool,
}

impl Default for VerifyOptions {
    fn default() -> VerifyOptions {
        VerifyOptions {
            seed: 1,
            transform_sizes: vec![2, 4, 8],
            input_bits: vec![2, 4],
            accuracies: vec![6, 10],
            cases: 50,
            inject_fault: false,
        }
    }
}

/// One line of the verification table.
#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

fn random_data(rng: &mut ChaCha8Rng, n: usize, input_bits: u32) -> Vec<u64> {
    (0..n).map(|_| rng.random_range(0..1u64 << input_bits)).collect()
}

/// Simulate the compiled transform on classical data and compare every
/// output register against the oracle, word for word.
fn check_oracle_equivalence(
    rows: &mut Vec<CheckRow>,
    rng: &mut ChaCha8Rng,
    n: usize,
    m: u32,
    a: u32,
    cases: usize,
    inject_fault: bool,
) -> Result<(), VerifyError> {
    let (mut circuit, layout) = build_qfft(n, m, a)?;
    if inject_fault {
        // Flip the sign qubit of the first output register; every decoded
        // word then disagrees with the oracle by 2^(w-1).
        let target = *layout.slot(0, 0).real.last().unwrap();
        circuit.append(crate::gate::Gate::x(target)).expect("fault target in range");
    }
    let mut failures = 0usize;
    let mut overflowed = 0usize;
    let mut first_failure = String::new();
    for case in 0..cases {
        let data = random_data(rng, n, m);
        let state = encode(&data, &layout)?;
        let out = run_basis(&circuit, &state)?;
        let words = decode_words(&out, &layout, 0);
        let reference = oracle_qfft(&data, n, m, a)?;
        if reference.overflow {
            overflowed += 1;
        }
        let matches = words
            .iter()
            .zip(&reference.values)
            .all(|(&(re, im), oracle)| re == oracle.re && im == oracle.im);
        if !matches {
            failures += 1;
            if first_failure.is_empty() {
                first_failure = format!(
                    "case {case}: input {data:?}, circuit {words:?}, oracle {:?}",
                    reference.values
                );
            }
        }
    }
    let passed = failures == 0 && overflowed == 0;
    rows.push(CheckRow {
        name: format!("oracle-bit-exact N={n} m={m} A={a}"),
        passed,
        detail: if passed {
            format!("{cases} cases word-identical, no overflow")
        } else {
            format!("{failures}/{cases} mismatches, {overflowed} overflow flags; {first_failure}")
        },
    });
    Ok(())
}

/// Forward-then-inverse identity on random basis states of the full
/// qubit space.
fn check_round_trip(
    rows: &mut Vec<CheckRow>,
    rng: &mut ChaCha8Rng,
    n: usize,
    m: u32,
    a: u32,
    states: usize,
) -> Result<(), VerifyError> {
    let (forward, _) = build_qfft(n, m, a)?;
    let (inverse, _) = build_iqfft(n, m, a)?;
    let mut failures = 0usize;
    for _ in 0..states {
        let bits: Vec<bool> = (0..forward.num_qubits).map(|_| rng.random()).collect();
        let state = BasisState::new(bits);
        let out = run_basis(&inverse, &run_basis(&forward, &state)?)?;
        if out != state {
            failures += 1;
        }
    }
    rows.push(CheckRow {
        name: format!("round-trip N={n} m={m} A={a}"),
        passed: failures == 0,
        detail: if failures == 0 {
            format!("{states} random basis states restored")
        } else {
            format!("{failures}/{states} states not restored")
        },
    });
    Ok(())
}

fn check_gate_bounds(rows: &mut Vec<CheckRow>, n: usize, m: u32, a: u32) -> Result<(), VerifyError> {
    let (circuit, layout) = build_qfft(n, m, a)?;
    let stats = circuit.stats();
    let bound = qfft_gate_bound(n, layout.word_bits, a);
    let butterflies = butterfly_schedule(n).len();
    let expected_butterflies = n / 2 * n.trailing_zeros() as usize;
    let passed = stats.expanded_count <= bound && butterflies == expected_butterflies;
    rows.push(CheckRow {
        name: format!("gate-bound N={n} m={m} A={a}"),
        passed,
        detail: format!(
            "expanded {} <= bound {}, butterflies {} (expected {})",
            stats.expanded_count, bound, butterflies, expected_butterflies
        ),
    });
    Ok(())
}

/// Decoded-spectrum error against the direct floating-point transform,
/// swept over accuracies; must be non-increasing.
pub fn accuracy_sweep(
    n: usize,
    m: u32,
    accuracies: &[u32],
    seed: u64,
    cases: usize,
) -> Result<Vec<f64>, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let inputs: Vec<Vec<u64>> = (0..cases).map(|_| random_data(&mut rng, n, m)).collect();
    let mut worst = Vec::with_capacity(accuracies.len());
    for &a in accuracies {
        let (circuit, layout) = build_qfft(n, m, a)?;
        let mut l_inf = 0.0f64;
        for data in &inputs {
            let out = run_basis(&circuit, &encode(data, &layout)?)?;
            let decoded = decode_spectrum(&out, &layout);
            let reference = float_dft(
                &data
                    .iter()
                    .map(|&x| num_complex::Complex64::new(x as f64, 0.0))
                    .collect::<Vec<_>>(),
            );
            l_inf = l_inf.max(error_metrics(&decoded, &reference)?.l_inf);
        }
        worst.push(l_inf);
    }
    Ok(worst)
}

fn check_accuracy_scaling(rows: &mut Vec<CheckRow>, seed: u64) -> Result<(), VerifyError> {
    let accuracies = [4u32, 6, 8, 10, 12];
    let worst = accuracy_sweep(8, 4, &accuracies, seed, 5)?;
    let monotone = worst.windows(2).all(|pair| pair[1] <= pair[0]);
    // Relative error at the finest accuracy, on one fixed input set.
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let data = random_data(&mut rng, 8, 4);
    let (circuit, layout) = build_qfft(8, 4, 12)?;
    let out = run_basis(&circuit, &encode(&data, &layout)?)?;
    let decoded = decode_spectrum(&out, &layout);
    let reference = float_dft(
        &data
            .iter()
            .map(|&x| num_complex::Complex64::new(x as f64, 0.0))
            .collect::<Vec<_>>(),
    );
    let relative = error_metrics(&decoded, &reference)?.relative_l_inf;
    let passed = monotone && relative < 1e-2;
    rows.push(CheckRow {
        name: "accuracy-scaling N=8 m=4".into(),
        passed,
        detail: format!(
            "l_inf over A={accuracies:?}: {:?}, relative at A=12: {relative:.2e}",
            worst.iter().map(|v| format!("{v:.3e}")).collect::<Vec<_>>()
        ),
    });
    Ok(())
}

/// Run the full seeded suite and collect one row per check.
pub fn run_verification(options: &VerifyOptions) -> Result<VerifyReport, VerifyError> {
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut rows = Vec::new();
    for &n in &options.transform_sizes {
        for &m in &options.input_bits {
            for &a in &options.accuracies {
                check_oracle_equivalence(
                    &mut rows,
                    &mut rng,
                    n,
                    m,
                    a,
                    options.cases,
                    options.inject_fault,
                )?;
            }
        }
        let m = *options.input_bits.first().unwrap_or(&2);
        let a = *options.accuracies.first().unwrap_or(&6);
        check_round_trip(&mut rows, &mut rng, n, m, a, 20)?;
        for &m in &options.input_bits {
            for &a in &options.accuracies {
                check_gate_bounds(&mut rows, n, m, a)?;
            }
        }
    }
    check_accuracy_scaling(&mut rows, options.seed)?;
    Ok(VerifyReport { seed: options.seed, rows })
}
