//! Garbage-free reversible circuits for the basis-encoded fast Fourier
//! transform.
//!
//! The crate compiles classical FFT arithmetic into reversible logic over
//! the gate set {X, CNOT, SWAP, Toffoli, Peres}: two's-complement adders,
//! subtractors, shifts and shift-add chains compose into lifting-scheme
//! twiddle rotations and radix-2 butterflies. A basis-state simulator
//! executes the circuits (superpositions included), and an independent
//! fixed-point oracle reproduces every arithmetic decision word for word,
//! which is the backbone of the verification suite.

pub mod arith;
pub mod circuit;
pub mod compiler;
pub mod data;
pub mod fixed;
pub mod gate;
pub mod json;
pub mod layout;
pub mod oracle;
pub mod rotation;
pub mod simulator;
pub mod verify;

pub use arith::{
    build_adder, build_const_mac, build_negate, build_shift, build_shift_add, build_sign_extend,
    build_subtractor, AccumulateSign, BuildError, Digit, ShiftDirection, SubtractorVariant,
};
pub use circuit::{Circuit, CircuitError, CircuitStats, Register};
pub use compiler::{
    build_butterfly, build_butterfly_sum_diff, build_filter, build_iqfft, build_qfft,
    build_rotation, build_sum_diff, butterfly_gate_bound, butterfly_schedule, qfft_gate_bound,
    ButterflyStep, CompileError,
};
pub use fixed::{bits_to_word, word_to_bits, FixedPointFormat, FormatError};
pub use gate::{
    expand_three_qubit_template, ControlledGate, ControlledOp, Gate, GateKind,
};
pub use json::{from_json, to_json, CodecError};
pub use layout::{bit_reverse, LayoutError, RegisterLayout, SlotRegisters};
pub use oracle::{
    error_metrics, float_dft, float_idft, oracle_filter, oracle_qfft, oracle_shear, ErrorMetrics,
    FilterRun, FixedComplex, OracleError, OracleRun,
};
pub use rotation::{plan_rotation, Coefficient, PlanError, RotationBranch, RotationPlan};
pub use simulator::{
    decode_input, decode_spectrum, decode_words, encode, encode_into, run, run_basis, BasisState,
    SimulatorError, SparseState,
};
pub use verify::{accuracy_sweep, run_verification, CheckRow, VerifyOptions, VerifyReport};
