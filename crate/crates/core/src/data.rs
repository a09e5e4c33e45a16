//! JSON schemas for classical input data and decoded spectra.
//!
//! Single input: `{"N": 4, "m": 3, "data": [1, 2, 3, 4]}`.
//! Superposition: `{"N": ..., "m": ..., "terms": [{"amplitude": [re, im],
//! "data": [...]}, ...]}`. Outputs mirror the inputs with decoded complex
//! values: `{"spectrum": [[re, im], ...]}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// One classical data sequence of `N` values, each below `2^m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataSet {
    #[serde(rename = "N")]
    pub transform_size: usize,
    #[serde(rename = "m")]
    pub input_bits: u32,
    pub data: Vec<u64>,
}

/// A superposition of data sequences with complex amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionSet {
    #[serde(rename = "N")]
    pub transform_size: usize,
    #[serde(rename = "m")]
    pub input_bits: u32,
    pub terms: Vec<SuperpositionTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionTerm {
    /// `[re, im]` amplitude of the term.
    pub amplitude: [f64; 2],
    pub data: Vec<u64>,
}

impl SuperpositionTerm {
    pub fn amplitude_complex(&self) -> Complex64 {
        Complex64::new(self.amplitude[0], self.amplitude[1])
    }
}

/// Complex sequences serialized as `[[re, im], ...]`.
pub fn complex_to_pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|v| [v.re, v.im]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_set_round_trip() {
        let text = r#"{"N": 4, "m": 3, "data": [1, 2, 3, 4]}"#;
        let set: DataSet = serde_json::from_str(text).unwrap();
        assert_eq!(set.transform_size, 4);
        assert_eq!(set.data, vec![1, 2, 3, 4]);
        let back: DataSet = serde_json::from_str(&serde_json::to_string(&set).unwrap()).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn superposition_round_trip() {
        let text = r#"{"N": 2, "m": 2, "terms": [
            {"amplitude": [0.6, 0.0], "data": [1, 2]},
            {"amplitude": [0.8, 0.0], "data": [3, 0]}
        ]}"#;
        let set: SuperpositionSet = serde_json::from_str(text).unwrap();
        assert_eq!(set.terms.len(), 2);
        assert_eq!(set.terms[0].amplitude_complex(), Complex64::new(0.6, 0.0));
    }
}
