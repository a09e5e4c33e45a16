//! Circuit container: named registers, an ordered gate list, inversion,
//! and gate counting at both the logical and the expanded granularity.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use crate::gate::{Gate, GateKind};

/// A named, ordered group of qubit indices, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub qubits: Vec<usize>,
}

impl Register {
    pub fn new(name: impl Into<String>, qubits: Vec<usize>) -> Register {
        Register { name: name.into(), qubits }
    }

    pub fn width(&self) -> usize {
        self.qubits.len()
    }

    /// Index of the sign qubit (most significant position).
    pub fn sign_qubit(&self) -> usize {
        *self.qubits.last().expect("register is never empty")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("qubit index {index} out of range for a circuit of {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("gate uses qubit {0} more than once")]
    DuplicateQubit(usize),
    #[error("gate kind {kind:?} takes {expected} qubits, got {got}")]
    WrongArity { kind: GateKind, expected: usize, got: usize },
    #[error("register {0:?} must have width >= 1")]
    EmptyRegister(String),
    #[error("register {name:?} overlaps qubit {qubit} of an existing register")]
    OverlappingRegisters { name: String, qubit: usize },
}

/// Gate counts of a circuit at both granularities, plus qubit totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitStats {
    /// Count per logical gate kind.
    pub logical_counts: BTreeMap<GateKind, usize>,
    /// Total weighted by [`GateKind::expanded_weight`].
    pub expanded_count: usize,
    pub num_qubits: usize,
    /// Qubits belonging to registers named `ancilla*`.
    pub num_ancilla: usize,
}

impl CircuitStats {
    pub fn logical_total(&self) -> usize {
        self.logical_counts.values().sum()
    }
}

/// An ordered sequence of reversible gates over indexed qubits.
///
/// Circuits are immutable once handed to consumers; construction is
/// single-threaded and any number of readers may traverse them afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    pub registers: Vec<Register>,
    pub metadata: Map<String, Value>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
            registers: Vec::new(),
            metadata: Map::new(),
        }
    }

    fn check_gate(&self, gate: &Gate) -> Result<(), CircuitError> {
        let expected = gate.kind.arity();
        if gate.qubits.len() != expected {
            return Err(CircuitError::WrongArity {
                kind: gate.kind,
                expected,
                got: gate.qubits.len(),
            });
        }
        for (i, &q) in gate.qubits.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(CircuitError::QubitOutOfRange { index: q, num_qubits: self.num_qubits });
            }
            if gate.qubits[..i].contains(&q) {
                return Err(CircuitError::DuplicateQubit(q));
            }
        }
        Ok(())
    }

    /// Append a gate, validating arity, bounds and operand distinctness.
    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        self.check_gate(&gate)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Append a gate produced by an internal builder.
    ///
    /// Builders construct indices from validated registers, so a failure
    /// here is a bug, not an input error.
    pub(crate) fn push(&mut self, gate: Gate) {
        debug_assert!(self.check_gate(&gate).is_ok(), "builder emitted invalid gate {gate:?}");
        self.gates.push(gate);
    }

    /// Register a named qubit group, rejecting overlap with existing ones.
    pub fn add_register(&mut self, register: Register) -> Result<(), CircuitError> {
        if register.qubits.is_empty() {
            return Err(CircuitError::EmptyRegister(register.name));
        }
        for &q in &register.qubits {
            if q >= self.num_qubits {
                return Err(CircuitError::QubitOutOfRange { index: q, num_qubits: self.num_qubits });
            }
            if self.registers.iter().any(|r| r.qubits.contains(&q)) {
                return Err(CircuitError::OverlappingRegisters { name: register.name, qubit: q });
            }
        }
        self.registers.push(register);
        Ok(())
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// The circuit realizing the inverse permutation: gates reversed, each
    /// replaced by its inverse kind. Running a circuit and then its
    /// inversion is the identity on every basis state.
    pub fn inverted(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            registers: self.registers.clone(),
            metadata: self.metadata.clone(),
        }
    }

    /// Gate counts at the logical and the expanded granularity.
    pub fn stats(&self) -> CircuitStats {
        let mut logical_counts = BTreeMap::new();
        let mut expanded_count = 0;
        for gate in &self.gates {
            *logical_counts.entry(gate.kind).or_insert(0) += 1;
            expanded_count += gate.kind.expanded_weight();
        }
        let num_ancilla = self
            .registers
            .iter()
            .filter(|r| r.name.starts_with("ancilla"))
            .map(Register::width)
            .sum();
        CircuitStats {
            logical_counts,
            expanded_count,
            num_qubits: self.num_qubits,
            num_ancilla,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn append_validates_bounds_and_distinctness() {
        let mut c = Circuit::new(4);
        c.append(Gate::cnot(0, 1)).unwrap();
        assert_eq!(c.gates.len(), 1);
        assert_eq!(
            c.append(Gate::x(9)),
            Err(CircuitError::QubitOutOfRange { index: 9, num_qubits: 4 })
        );
        assert_eq!(c.append(Gate::cnot(2, 2)), Err(CircuitError::DuplicateQubit(2)));
    }

    #[test]
    fn inversion_reverses_and_maps_kinds() {
        let mut c = Circuit::new(3);
        c.append(Gate::cnot(0, 1)).unwrap();
        c.append(Gate::x(1)).unwrap();
        c.append(Gate::peres(0, 1, 2)).unwrap();
        let inv = c.inverted();
        assert_eq!(inv.gates[0], Gate::peres_dg(0, 1, 2));
        assert_eq!(inv.gates[1], Gate::x(1));
        assert_eq!(inv.gates[2], Gate::cnot(0, 1));
        assert_eq!(inv.inverted(), c);
    }

    #[test]
    fn stats_weights() {
        let mut c = Circuit::new(5);
        c.add_register(Register::new("a", vec![0, 1])).unwrap();
        c.add_register(Register::new("ancilla", vec![4])).unwrap();
        c.append(Gate::x(0)).unwrap();
        c.append(Gate::swap(1, 2)).unwrap();
        c.append(Gate::toffoli(0, 1, 2)).unwrap();
        c.append(Gate::peres(2, 3, 4)).unwrap();
        let stats = c.stats();
        assert_eq!(stats.expanded_count, 1 + 3 + 5 + 4);
        assert_eq!(stats.logical_total(), 4);
        assert_eq!(stats.num_ancilla, 1);

        let empty = Circuit::new(0).stats();
        assert_eq!(empty.expanded_count, 0);
        assert_eq!(empty.logical_total(), 0);
    }

    #[test]
    fn registers_must_not_overlap() {
        let mut c = Circuit::new(4);
        c.add_register(Register::new("a", vec![0, 1])).unwrap();
        let err = c.add_register(Register::new("b", vec![1, 2])).unwrap_err();
        assert_eq!(err, CircuitError::OverlappingRegisters { name: "b".into(), qubit: 1 });
    }
}
