//! Register layout and width policy for transform circuits.
//!
//! Values grow by at most one bit per butterfly layer, so a transform of
//! size `N = 2^n` on `m`-bit inputs with `A` fraction bits never wraps in
//! words of `w = m + n + A + 1` bits.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::circuit::{Circuit, Register};
use crate::fixed::FixedPointFormat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LayoutError {
    #[error("transform size {0} must be a power of two >= 2")]
    BadTransformSize(usize),
    #[error("input bits must be at least 1")]
    BadInputBits,
    #[error("accuracy must be at least 1")]
    BadAccuracy,
    #[error("layout metadata is missing or malformed: {0}")]
    BadMetadata(String),
}

/// Qubit indices of one complex slot, each component least significant
/// first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotRegisters {
    pub real: Vec<usize>,
    pub imag: Vec<usize>,
}

/// Complete qubit assignment for a transform circuit: `banks * N` complex
/// slots of `w`-bit words plus a shared pool of zeroed ancillas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    /// Transform length `N`, a power of two.
    pub transform_size: usize,
    /// Integer bits of the classical inputs.
    pub input_bits: u32,
    /// Rotation accuracy bits; also the fraction width.
    pub accuracy: u32,
    /// Word width `w = m + n + A + 1`.
    pub word_bits: u32,
    /// Slot registers, bank-major: bank 0 first, then the auxiliary bank
    /// when present.
    pub slots: Vec<SlotRegisters>,
    /// Zeroed ancillas shared by shift-adds and sign-change carry chains.
    pub ancilla: Vec<usize>,
    pub num_qubits: usize,
}

impl RegisterLayout {
    pub fn new(transform_size: usize, input_bits: u32, accuracy: u32) -> Result<RegisterLayout, LayoutError> {
        RegisterLayout::with_banks(transform_size, input_bits, accuracy, 1)
    }

    /// Layout with `banks` banks of `N` slots; the filter uses two.
    pub fn with_banks(
        transform_size: usize,
        input_bits: u32,
        accuracy: u32,
        banks: usize,
    ) -> Result<RegisterLayout, LayoutError> {
        if transform_size < 2 || !transform_size.is_power_of_two() {
            return Err(LayoutError::BadTransformSize(transform_size));
        }
        if input_bits == 0 {
            return Err(LayoutError::BadInputBits);
        }
        if accuracy == 0 {
            return Err(LayoutError::BadAccuracy);
        }
        let stages = transform_size.trailing_zeros();
        let word_bits = input_bits + stages + accuracy + 1;
        let w = word_bits as usize;
        let mut slots = Vec::with_capacity(banks * transform_size);
        for slot in 0..banks * transform_size {
            let base = slot * 2 * w;
            slots.push(SlotRegisters {
                real: (base..base + w).collect(),
                imag: (base + w..base + 2 * w).collect(),
            });
        }
        // The pool serves both shift-adds (at most A copies of a sign bit)
        // and the sign-change carry chain (w - 2 qubits).
        let pool = (accuracy as usize).max(w - 2);
        let base = banks * transform_size * 2 * w;
        let ancilla: Vec<usize> = (base..base + pool).collect();
        Ok(RegisterLayout {
            transform_size,
            input_bits,
            accuracy,
            word_bits,
            slots,
            num_qubits: base + pool,
            ancilla,
        })
    }

    pub fn banks(&self) -> usize {
        self.slots.len() / self.transform_size
    }

    /// Number of butterfly layers, `log2 N`.
    pub fn stages(&self) -> u32 {
        self.transform_size.trailing_zeros()
    }

    pub fn format(&self) -> FixedPointFormat {
        FixedPointFormat::new(self.word_bits, self.accuracy).expect("layout widths are valid")
    }

    /// Slot registers of logical slot `index` in `bank`.
    pub fn slot(&self, bank: usize, index: usize) -> &SlotRegisters {
        &self.slots[bank * self.transform_size + index]
    }

    /// Add the layout's named registers to a circuit.
    pub fn attach_registers(&self, circuit: &mut Circuit) {
        for (i, slot) in self.slots.iter().enumerate() {
            circuit
                .add_register(Register::new(format!("real_{i}"), slot.real.clone()))
                .expect("layout registers are disjoint");
            circuit
                .add_register(Register::new(format!("imag_{i}"), slot.imag.clone()))
                .expect("layout registers are disjoint");
        }
        circuit
            .add_register(Register::new("ancilla", self.ancilla.clone()))
            .expect("layout registers are disjoint");
    }

    /// Layout document embedded in circuit metadata under the `layout` key.
    pub fn to_metadata(&self) -> Value {
        serde_json::to_value(LayoutDoc {
            n: self.transform_size,
            m: self.input_bits,
            a: self.accuracy,
            w: self.word_bits,
            slots: self.slots.clone(),
            ancilla: self.ancilla.clone(),
        })
        .expect("layout serialization cannot fail")
    }

    pub fn from_metadata(value: &Value) -> Result<RegisterLayout, LayoutError> {
        let doc: LayoutDoc = serde_json::from_value(value.clone())
            .map_err(|e| LayoutError::BadMetadata(e.to_string()))?;
        if doc.n == 0 || doc.slots.len() % doc.n != 0 {
            return Err(LayoutError::BadMetadata("slot count does not match N".into()));
        }
        let num_qubits = doc
            .slots
            .iter()
            .flat_map(|s| s.real.iter().chain(s.imag.iter()))
            .chain(doc.ancilla.iter())
            .max()
            .map_or(0, |&q| q + 1);
        Ok(RegisterLayout {
            transform_size: doc.n,
            input_bits: doc.m,
            accuracy: doc.a,
            word_bits: doc.w,
            slots: doc.slots,
            ancilla: doc.ancilla,
            num_qubits,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct LayoutDoc {
    #[serde(rename = "N")]
    n: usize,
    m: u32,
    #[serde(rename = "A")]
    a: u32,
    w: u32,
    slots: Vec<SlotRegisters>,
    ancilla: Vec<usize>,
}

/// Bit-reversal of `index` over `bits` bits, the load-time permutation of
/// a radix-2 decimation-in-time network.
pub fn bit_reverse(index: usize, bits: u32) -> usize {
    if bits == 0 {
        return 0;
    }
    index.reverse_bits() >> (usize::BITS - bits)
}
