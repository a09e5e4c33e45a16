//! Circuit JSON codec.
//!
//! Schema (version 1):
//!
//! ```json
//! {
//!   "version": 1,
//!   "num_qubits": 4,
//!   "registers": [{"name": "a", "qubits": [0, 1]}],
//!   "gates": [{"kind": "CNOT", "qubits": [0, 1]}],
//!   "metadata": {}
//! }
//! ```
//!
//! Qubit order inside `"qubits"` is semantic (controls first); register
//! qubit lists are least significant first. Serialization is deterministic:
//! the same circuit always produces byte-identical output.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::circuit::{Circuit, CircuitError, Register};
use crate::gate::{Gate, GateKind};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CodecError {
    #[error("malformed circuit document: {0}")]
    Malformed(#[from] serde_json::Error),
    #[error("unsupported format version {0}, expected {FORMAT_VERSION}")]
    VersionMismatch(u32),
    #[error("invalid circuit contents: {0}")]
    Invalid(#[from] CircuitError),
}

#[derive(Serialize, Deserialize)]
struct RegisterDoc {
    name: String,
    qubits: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    kind: GateKind,
    qubits: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    version: u32,
    num_qubits: usize,
    registers: Vec<RegisterDoc>,
    gates: Vec<GateDoc>,
    #[serde(default)]
    metadata: Map<String, Value>,
}

/// Serialize a circuit to pretty-printed JSON bytes.
pub fn to_json(circuit: &Circuit) -> Vec<u8> {
    let doc = CircuitDoc {
        version: FORMAT_VERSION,
        num_qubits: circuit.num_qubits,
        registers: circuit
            .registers
            .iter()
            .map(|r| RegisterDoc { name: r.name.clone(), qubits: r.qubits.clone() })
            .collect(),
        gates: circuit
            .gates
            .iter()
            .map(|g| GateDoc { kind: g.kind, qubits: g.qubits.clone() })
            .collect(),
        metadata: circuit.metadata.clone(),
    };
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("circuit serialization cannot fail");
    bytes.push(b'\n');
    bytes
}

/// Parse and validate a circuit document.
pub fn from_json(bytes: &[u8]) -> Result<Circuit, CodecError> {
    let doc: CircuitDoc = serde_json::from_slice(bytes)?;
    if doc.version != FORMAT_VERSION {
        return Err(CodecError::VersionMismatch(doc.version));
    }
    let mut circuit = Circuit::new(doc.num_qubits);
    circuit.metadata = doc.metadata;
    for r in doc.registers {
        circuit.add_register(Register::new(r.name, r.qubits))?;
    }
    for g in doc.gates {
        circuit.append(Gate { kind: g.kind, qubits: g.qubits })?;
    }
    Ok(circuit)
}
