//! Execution of circuits on basis states and sparse superpositions, a
//! small dense-matrix engine for template verification, and the
//! encode/decode boundary between classical data and register contents.

use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::fixed::{bits_to_word, word_to_bits};
use crate::gate::{ControlledGate, ControlledOp, v_dagger_matrix, v_matrix, Gate, GateKind};
use crate::layout::{bit_reverse, RegisterLayout};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SimulatorError {
    #[error("state of {state} qubits does not match circuit of {circuit} qubits")]
    LengthMismatch { state: usize, circuit: usize },
    #[error("data value {value} does not fit in {bits} bits")]
    ValueOutOfRange { value: u64, bits: u32 },
    #[error("expected {expected} data points, got {got}")]
    WrongDataLength { expected: usize, got: usize },
    #[error("dense matrices are limited to 4 qubits, got {0}")]
    TooManyQubits(usize),
    #[error("gate qubit index {0} out of range")]
    BadGateIndex(usize),
    #[error("superposition is not normalized: sum of squared amplitudes is {0}")]
    NotNormalized(f64),
    #[error("superposition terms must share one qubit count")]
    MixedTermLengths,
    #[error("superposition has no terms")]
    Empty,
}

/// A computational basis state: one classical bit per qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    bits: Vec<bool>,
}

impl BasisState {
    pub fn new(bits: Vec<bool>) -> BasisState {
        BasisState { bits }
    }

    pub fn zeros(num_qubits: usize) -> BasisState {
        BasisState { bits: vec![false; num_qubits] }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bit(&self, index: usize) -> bool {
        self.bits[index]
    }

    pub fn set(&mut self, index: usize, value: bool) {
        self.bits[index] = value;
    }

    /// Signed word read from the given qubit positions (LSB first).
    pub fn word(&self, qubits: &[usize]) -> i64 {
        let bits: Vec<bool> = qubits.iter().map(|&q| self.bits[q]).collect();
        bits_to_word(&bits)
    }

    /// Write a word into the given qubit positions.
    pub fn set_word(&mut self, qubits: &[usize], value: i64) {
        for (bit, &q) in word_to_bits(value, qubits.len() as u32).iter().zip(qubits) {
            self.bits[q] = *bit;
        }
    }
}

/// Run a circuit on a basis state: a deterministic permutation.
pub fn run_basis(circuit: &Circuit, state: &BasisState) -> Result<BasisState, SimulatorError> {
    if state.len() != circuit.num_qubits {
        return Err(SimulatorError::LengthMismatch {
            state: state.len(),
            circuit: circuit.num_qubits,
        });
    }
    let mut bits = state.bits.clone();
    for gate in &circuit.gates {
        gate.apply(&mut bits);
    }
    Ok(BasisState { bits })
}

/// A sparse superposition: a map from basis states to amplitudes.
///
/// Construction enforces normalization within `1e-9` and drops nothing:
/// zero amplitudes and duplicated basis states are rejected up front.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    terms: Vec<(BasisState, Complex64)>,
}

impl SparseState {
    pub fn new(mut terms: Vec<(BasisState, Complex64)>) -> Result<SparseState, SimulatorError> {
        if terms.is_empty() {
            return Err(SimulatorError::Empty);
        }
        let len = terms[0].0.len();
        if terms.iter().any(|(b, _)| b.len() != len) {
            return Err(SimulatorError::MixedTermLengths);
        }
        terms.sort_by(|x, y| x.0.cmp(&y.0));
        let norm: f64 = terms.iter().map(|(_, a)| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > 1e-9 {
            return Err(SimulatorError::NotNormalized(norm));
        }
        Ok(SparseState { terms })
    }

    pub fn single(state: BasisState) -> SparseState {
        SparseState { terms: vec![(state, Complex64::new(1.0, 0.0))] }
    }

    pub fn terms(&self) -> &[(BasisState, Complex64)] {
        &self.terms
    }

    pub fn num_qubits(&self) -> usize {
        self.terms[0].0.len()
    }
}

/// Run a circuit on a superposition term by term.
///
/// Amplitudes are carried unchanged and the term count is preserved:
/// basis states cannot merge under a permutation. Terms are independent,
/// and the result is returned in a canonical order, so it does not depend
/// on evaluation order.
pub fn run(circuit: &Circuit, state: &SparseState) -> Result<SparseState, SimulatorError> {
    let mut terms = Vec::with_capacity(state.terms.len());
    for (basis, amplitude) in &state.terms {
        terms.push((run_basis(circuit, basis)?, *amplitude));
    }
    terms.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(SparseState { terms })
}

// ---------------------------------------------------------------------------
// Dense verification engine for the three-qubit templates.
// ---------------------------------------------------------------------------

/// Row-major square complex matrix over `2^n` basis states (qubit 0 is
/// the least significant index bit).
pub type DenseMatrix = Vec<Vec<Complex64>>;

fn identity(dim: usize) -> DenseMatrix {
    let mut m = vec![vec![Complex64::ZERO; dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::ONE;
    }
    m
}

fn matmul(a: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    let dim = a.len();
    let mut out = vec![vec![Complex64::ZERO; dim]; dim];
    for (i, row) in out.iter_mut().enumerate() {
        for k in 0..dim {
            let aik = a[i][k];
            if aik == Complex64::ZERO {
                continue;
            }
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += aik * b[k][j];
            }
        }
    }
    out
}

fn controlled_matrix(gate: &ControlledGate, num_qubits: usize) -> Result<DenseMatrix, SimulatorError> {
    if gate.control >= num_qubits || gate.target >= num_qubits || gate.control == gate.target {
        return Err(SimulatorError::BadGateIndex(gate.control.max(gate.target)));
    }
    let local = match gate.op {
        ControlledOp::Cnot => {
            [[Complex64::ZERO, Complex64::ONE], [Complex64::ONE, Complex64::ZERO]]
        }
        ControlledOp::V => v_matrix(),
        ControlledOp::VDagger => v_dagger_matrix(),
    };
    let dim = 1usize << num_qubits;
    let mut m = vec![vec![Complex64::ZERO; dim]; dim];
    let (cbit, tbit) = (1usize << gate.control, 1usize << gate.target);
    for col in 0..dim {
        if col & cbit == 0 {
            m[col][col] = Complex64::ONE;
            continue;
        }
        let t_in = usize::from(col & tbit != 0);
        for t_out in 0..2 {
            let row = (col & !tbit) | (t_out << gate.target);
            m[row][col] += local[t_out][t_in];
        }
    }
    Ok(m)
}

/// Dense matrix product of two-qubit unitary descriptors in application
/// order, over at most four qubits.
pub fn small_unitary(gates: &[ControlledGate], num_qubits: usize) -> Result<DenseMatrix, SimulatorError> {
    if num_qubits > 4 {
        return Err(SimulatorError::TooManyQubits(num_qubits));
    }
    let mut acc = identity(1 << num_qubits);
    for gate in gates {
        acc = matmul(&controlled_matrix(gate, num_qubits)?, &acc);
    }
    Ok(acc)
}

/// Permutation matrix of a gate kind's truth-table action over its own
/// operand count.
pub fn kind_permutation_matrix(kind: GateKind) -> DenseMatrix {
    let n = kind.arity();
    let dim = 1usize << n;
    let gate = Gate { kind, qubits: (0..n).collect() };
    let mut m = vec![vec![Complex64::ZERO; dim]; dim];
    for col in 0..dim {
        let mut bits: Vec<bool> = (0..n).map(|j| col & (1 << j) != 0).collect();
        gate.apply(&mut bits);
        let row = bits
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &b)| acc | ((b as usize) << j));
        m[row][col] = Complex64::ONE;
    }
    m
}

/// Largest absolute entry difference between two matrices.
pub fn matrix_distance(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

// ---------------------------------------------------------------------------
// Classical data boundary.
// ---------------------------------------------------------------------------

/// Encode a sequence of `m`-bit non-negative integers as a basis state:
/// value `x_j` lands in the real register of the bit-reversed slot with
/// the fraction bits zero, imaginary registers all zero.
pub fn encode(data: &[u64], layout: &RegisterLayout) -> Result<BasisState, SimulatorError> {
    encode_into(data, layout, layout.num_qubits)
}

/// As [`encode`], but producing a state over `num_qubits >= layout qubits`
/// so circuits with extra scratch registers can consume it.
pub fn encode_into(
    data: &[u64],
    layout: &RegisterLayout,
    num_qubits: usize,
) -> Result<BasisState, SimulatorError> {
    let n = layout.transform_size;
    if data.len() != n {
        return Err(SimulatorError::WrongDataLength { expected: n, got: data.len() });
    }
    let limit = 1u64 << layout.input_bits;
    let mut state = BasisState::zeros(num_qubits);
    for (j, &x) in data.iter().enumerate() {
        if x >= limit {
            return Err(SimulatorError::ValueOutOfRange { value: x, bits: layout.input_bits });
        }
        let slot = layout.slot(0, bit_reverse(j, layout.stages()));
        state.set_word(&slot.real, (x as i64) << layout.accuracy);
    }
    Ok(state)
}

/// Raw register words of a bank, in natural slot order.
pub fn decode_words(state: &BasisState, layout: &RegisterLayout, bank: usize) -> Vec<(i64, i64)> {
    (0..layout.transform_size)
        .map(|k| {
            let slot = layout.slot(bank, k);
            (state.word(&slot.real), state.word(&slot.imag))
        })
        .collect()
}

/// Decode a spectrum: complex values of bank 0 in natural slot order,
/// interpreted under the layout's fixed-point format.
pub fn decode_spectrum(state: &BasisState, layout: &RegisterLayout) -> Vec<Complex64> {
    let fmt = layout.format();
    decode_words(state, layout, 0)
        .into_iter()
        .map(|(re, im)| Complex64::new(fmt.value_of(re), fmt.value_of(im)))
        .collect()
}

/// Decode a bank in input ordering (undoing the bit-reversed placement of
/// [`encode`]); `decode_input(encode(d)) = d`.
pub fn decode_input(state: &BasisState, layout: &RegisterLayout, bank: usize) -> Vec<Complex64> {
    let fmt = layout.format();
    let words = decode_words(state, layout, bank);
    (0..layout.transform_size)
        .map(|j| {
            let (re, im) = words[bit_reverse(j, layout.stages())];
            Complex64::new(fmt.value_of(re), fmt.value_of(im))
        })
        .collect()
}
