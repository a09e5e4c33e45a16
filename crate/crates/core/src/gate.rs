//! Logical gate kinds, their truth-table actions, and the two-qubit
//! unitary templates behind the three-qubit gates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// The reversible gate alphabet used by every circuit in this crate.
///
/// All kinds act as permutations on computational basis states, so whole
/// circuits can be simulated classically bit by bit. Qubit operands are
/// listed controls first, targets last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GateKind {
    /// Bit flip on one qubit.
    X,
    /// Controlled NOT: `(c, t) -> (c, t ^ c)`.
    #[serde(rename = "CNOT")]
    Cnot,
    /// Exchange of two qubits.
    #[serde(rename = "SWAP")]
    Swap,
    /// Doubly controlled NOT: `(a, b, t) -> (a, b, t ^ ab)`.
    #[serde(rename = "TOFFOLI")]
    Toffoli,
    /// Peres gate: `(a, b, c) -> (a, a^b, ab^c)`.
    #[serde(rename = "PERES")]
    Peres,
    /// Inverse of the Peres gate.
    #[serde(rename = "PERES_DG")]
    PeresDg,
}

impl GateKind {
    /// Number of qubit operands the kind takes.
    pub fn arity(self) -> usize {
        match self {
            GateKind::X => 1,
            GateKind::Cnot | GateKind::Swap => 2,
            GateKind::Toffoli | GateKind::Peres | GateKind::PeresDg => 3,
        }
    }

    /// Weight of the kind when expanded to elementary quantum gates:
    /// a SWAP is 3 CNOTs, the Toffoli and Peres decompositions cost 5 and 4.
    pub fn expanded_weight(self) -> usize {
        match self {
            GateKind::X | GateKind::Cnot => 1,
            GateKind::Swap => 3,
            GateKind::Toffoli => 5,
            GateKind::Peres | GateKind::PeresDg => 4,
        }
    }

    /// Kind realizing the inverse permutation.
    pub fn inverse(self) -> GateKind {
        match self {
            GateKind::Peres => GateKind::PeresDg,
            GateKind::PeresDg => GateKind::Peres,
            other => other,
        }
    }

    /// Canonical name, matching the circuit JSON vocabulary.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::Cnot => "CNOT",
            GateKind::Swap => "SWAP",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Peres => "PERES",
            GateKind::PeresDg => "PERES_DG",
        }
    }

    pub fn all() -> [GateKind; 6] {
        [
            GateKind::X,
            GateKind::Cnot,
            GateKind::Swap,
            GateKind::Toffoli,
            GateKind::Peres,
            GateKind::PeresDg,
        ]
    }
}

/// One gate instance: a kind plus its qubit operands (controls first).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl Gate {
    pub fn x(q: usize) -> Gate {
        Gate { kind: GateKind::X, qubits: vec![q] }
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate { kind: GateKind::Cnot, qubits: vec![control, target] }
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate { kind: GateKind::Swap, qubits: vec![a, b] }
    }

    pub fn toffoli(c0: usize, c1: usize, target: usize) -> Gate {
        Gate { kind: GateKind::Toffoli, qubits: vec![c0, c1, target] }
    }

    pub fn peres(a: usize, b: usize, c: usize) -> Gate {
        Gate { kind: GateKind::Peres, qubits: vec![a, b, c] }
    }

    pub fn peres_dg(a: usize, b: usize, c: usize) -> Gate {
        Gate { kind: GateKind::PeresDg, qubits: vec![a, b, c] }
    }

    /// Gate realizing the inverse permutation on the same operands.
    pub fn inverse(&self) -> Gate {
        Gate { kind: self.kind.inverse(), qubits: self.qubits.clone() }
    }

    /// Apply the truth-table action in place.
    ///
    /// Callers guarantee the indices are in range; circuits validate gates
    /// when they are appended.
    pub fn apply(&self, bits: &mut [bool]) {
        let q = &self.qubits;
        match self.kind {
            GateKind::X => bits[q[0]] = !bits[q[0]],
            GateKind::Cnot => bits[q[1]] ^= bits[q[0]],
            GateKind::Swap => bits.swap(q[0], q[1]),
            GateKind::Toffoli => bits[q[2]] ^= bits[q[0]] & bits[q[1]],
            GateKind::Peres => {
                // (a, b, c) -> (a, a^b, ab^c); the AND uses the inputs.
                let (a, b) = (bits[q[0]], bits[q[1]]);
                bits[q[2]] ^= a & b;
                bits[q[1]] ^= a;
            }
            GateKind::PeresDg => {
                bits[q[1]] ^= bits[q[0]];
                bits[q[2]] ^= bits[q[0]] & bits[q[1]];
            }
        }
    }
}

/// Elementary two-qubit operations appearing in the Toffoli/Peres templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlledOp {
    Cnot,
    /// Controlled application of the square root of X.
    V,
    /// Controlled application of its adjoint.
    VDagger,
}

/// A two-qubit unitary descriptor over template-local qubit indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ControlledGate {
    pub op: ControlledOp,
    pub control: usize,
    pub target: usize,
}

/// The square root of X used by the three-qubit templates:
/// `V = (1+i)/2 [[1, -i], [-i, 1]]`, so `V^2 = X`.
pub fn v_matrix() -> [[Complex64; 2]; 2] {
    let h = Complex64::new(0.5, 0.5);
    let i = Complex64::new(0.0, 1.0);
    [[h, h * (-i)], [h * (-i), h]]
}

/// Adjoint of [`v_matrix`].
pub fn v_dagger_matrix() -> [[Complex64; 2]; 2] {
    let h = Complex64::new(0.5, -0.5);
    let i = Complex64::new(0.0, 1.0);
    [[h, h * i], [h * i, h]]
}

/// Error for template expansion of a kind that has no template.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("gate kind {0:?} has no three-qubit template")]
pub struct NoTemplate(pub GateKind);

/// Expand a three-qubit kind into its network of CNOT and controlled-V
/// gates over local qubits `0, 1, 2` (operand order of the kind).
///
/// The Toffoli costs five two-qubit gates, the Peres gates four; composing
/// the returned unitaries reproduces the kind's permutation matrix.
pub fn expand_three_qubit_template(kind: GateKind) -> Result<Vec<ControlledGate>, NoTemplate> {
    use ControlledOp::{Cnot, VDagger, V};
    let cg = |op, control, target| ControlledGate { op, control, target };
    match kind {
        GateKind::Toffoli => Ok(vec![
            cg(V, 1, 2),
            cg(Cnot, 0, 1),
            cg(VDagger, 1, 2),
            cg(Cnot, 0, 1),
            cg(V, 0, 2),
        ]),
        GateKind::Peres => Ok(vec![
            cg(V, 1, 2),
            cg(V, 0, 2),
            cg(Cnot, 0, 1),
            cg(VDagger, 1, 2),
        ]),
        GateKind::PeresDg => Ok(vec![
            cg(V, 1, 2),
            cg(Cnot, 0, 1),
            cg(VDagger, 0, 2),
            cg(VDagger, 1, 2),
        ]),
        other => Err(NoTemplate(other)),
    }
}
