//! Hamiltonian files: plain text (`<coeff> <pauli_string>` per line) or JSON
//! (`{"n": 2, "terms": [{"pauli": "ZZ", "coeff": 0.5}]}`), detected from the
//! first non-blank character.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::sum::PauliSum;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermEntry {
    pub pauli: String,
    pub coeff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianFile {
    pub n: usize,
    pub terms: Vec<TermEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl HamiltonianFile {
    pub fn from_sum(h: &PauliSum) -> Self {
        HamiltonianFile {
            n: h.num_qubits(),
            terms: h
                .iter()
                .map(|(w, c)| TermEntry {
                    pauli: w.word_string(),
                    coeff: c,
                })
                .collect(),
        }
    }

    /// Validates word lengths and merges duplicates.
    pub fn to_sum(&self) -> Result<PauliSum> {
        let mut h = PauliSum::new(self.n);
        for (i, t) in self.terms.iter().enumerate() {
            let w: PauliOperator = t
                .pauli
                .parse()
                .map_err(|e| Error::Parse(format!("term {}: {e}", i + 1)))?;
            if w.phase_exp() != 0 {
                return Err(Error::Parse(format!("term {}: phase prefix not allowed", i + 1)));
            }
            if w.num_qubits() != self.n {
                return Err(Error::Parse(format!(
                    "term {}: '{}' has {} qubits, expected {}",
                    i + 1,
                    t.pauli,
                    w.num_qubits(),
                    self.n
                )));
            }
            if !t.coeff.is_finite() {
                return Err(Error::Parse(format!("term {}: non-finite coefficient", i + 1)));
            }
            h.add_term(w, t.coeff)?;
        }
        Ok(h)
    }
}

pub fn detect_format(text: &str) -> Format {
    if text.trim_start().starts_with('{') {
        Format::Json
    } else {
        Format::Text
    }
}

pub fn parse_hamiltonian(text: &str) -> Result<PauliSum> {
    match detect_format(text) {
        Format::Json => {
            let f: HamiltonianFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("json: {e}")))?;
            f.to_sum()
        }
        Format::Text => PauliSum::parse_text(text),
    }
}

pub fn load(path: &Path) -> Result<PauliSum> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_hamiltonian(&text)
}

/// Canonical serialization: terms sorted by word, pruned, shortest
/// round-trip decimal coefficients.
pub fn to_string(h: &PauliSum, format: Format) -> String {
    match format {
        Format::Text => h.to_text(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&HamiltonianFile::from_sum(h)).expect("plain data serializes");
            s.push('\n');
            s
        }
    }
}

pub fn save(path: &Path, h: &PauliSum, format: Format) -> Result<()> {
    std::fs::write(path, to_string(h, format)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}
