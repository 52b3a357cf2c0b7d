//! Real Hermitian Pauli sums and their complex-coefficient counterpart.
//!
//! [`PauliSum`] is the public Hamiltonian type: a canonical ordered map from
//! phase-free words to real coefficients. [`OperatorSum`] carries complex
//! coefficients and is used for products, rotation expansions and projector
//! algebra, where intermediate results need not be Hermitian.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

/// Coefficients at or below this magnitude are pruned unless configured otherwise.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[inline]
pub(crate) fn phase_factor(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliOperator, f64>,
    tolerance: f64,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        Self::with_tolerance(n, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(n: usize, tolerance: f64) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
            tolerance,
        }
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (PauliOperator, f64)>,
    {
        let mut sum = Self::new(n);
        for (op, c) in terms {
            sum.add_term(op, c)?;
        }
        Ok(sum)
    }

    /// Parses `(coefficient, word)` pairs where words are strings.
    pub fn from_strs(terms: &[(f64, &str)]) -> Result<Self> {
        let first = terms.first().ok_or_else(|| Error::Parse("no terms".into()))?;
        let n = first.1.parse::<PauliOperator>()?.num_qubits();
        let mut sum = Self::new(n);
        for (c, w) in terms {
            sum.add_term(w.parse()?, *c)?;
        }
        Ok(sum)
    }

    /// Adds `coeff · op`. A `-1` phase on `op` is folded into the coefficient;
    /// an imaginary phase is rejected since the sum must stay Hermitian.
    pub fn add_term(&mut self, op: PauliOperator, coeff: f64) -> Result<()> {
        if op.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: op.num_qubits(),
            });
        }
        let sign = op.sign().ok_or(Error::NonHermitian(op))?;
        let key = op.unsigned();
        let entry = self.terms.entry(key).or_insert(0.0);
        *entry += sign * coeff;
        if entry.abs() <= self.tolerance {
            self.terms.remove(&key);
        }
        Ok(())
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliOperator, f64)> + '_ {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn words(&self) -> impl Iterator<Item = &PauliOperator> + '_ {
        self.terms.keys()
    }

    pub fn coeff(&self, word: &PauliOperator) -> f64 {
        self.terms.get(&word.unsigned()).copied().unwrap_or(0.0)
    }

    pub fn identity_coeff(&self) -> f64 {
        self.coeff(&PauliOperator::identity(self.n))
    }

    /// Sum of squared coefficients, `Tr(H²)/2^n`.
    pub fn squared_norm(&self) -> f64 {
        self.terms.values().map(|c| c * c).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = Self::with_tolerance(self.n, self.tolerance);
        for (w, c) in self.iter() {
            out.add_term(*w, c * factor).expect("word from same register");
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(*w, c)?;
        }
        Ok(out)
    }

    pub fn to_operator_sum(&self) -> OperatorSum {
        let mut out = OperatorSum::with_tolerance(self.n, self.tolerance);
        for (w, c) in self.iter() {
            out.add_term(*w, Complex64::new(c, 0.0));
        }
        out
    }

    /// Largest coefficient difference over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (w, c) in self.iter() {
            worst = worst.max((c - other.coeff(w)).abs());
        }
        for (w, c) in other.iter() {
            worst = worst.max((c - self.coeff(w)).abs());
        }
        worst
    }

    /// Canonical text form: one `<coefficient> <word>` line per term.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (w, c) in self.iter() {
            s.push_str(&format!("{} {}\n", c, w.word_string()));
        }
        s
    }

    /// Parses the text form. `#` starts a comment; duplicate words are merged.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut sum: Option<PauliSum> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let (c, w) = match (parts.next(), parts.next(), parts.next()) {
                (Some(c), Some(w), None) => (c, w),
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: expected '<coefficient> <pauli_string>'",
                        lineno + 1
                    )))
                }
            };
            let coeff: f64 = c
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: bad coefficient '{c}'", lineno + 1)))?;
            if !coeff.is_finite() {
                return Err(Error::Parse(format!("line {}: non-finite coefficient", lineno + 1)));
            }
            let op: PauliOperator = w
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            if op.phase_exp() != 0 {
                return Err(Error::Parse(format!("line {}: phase prefix not allowed", lineno + 1)));
            }
            let s = sum.get_or_insert_with(|| PauliSum::new(op.num_qubits()));
            s.add_term(op, coeff)
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        }
        sum.ok_or_else(|| Error::Parse("no terms found".into()))
    }
}

impl fmt::Display for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for PauliSum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

/// Complex-coefficient Pauli sum keyed by phase-free words.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSum {
    n: usize,
    terms: BTreeMap<PauliOperator, Complex64>,
    tolerance: f64,
}

impl OperatorSum {
    pub fn new(n: usize) -> Self {
        Self::with_tolerance(n, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(n: usize, tolerance: f64) -> Self {
        OperatorSum {
            n,
            terms: BTreeMap::new(),
            tolerance,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut s = Self::new(n);
        s.add_term(PauliOperator::identity(n), Complex64::new(1.0, 0.0));
        s
    }

    /// Adds `coeff · op`, folding the operator phase into the coefficient.
    pub fn add_term(&mut self, op: PauliOperator, coeff: Complex64) {
        debug_assert_eq!(op.num_qubits(), self.n);
        let key = op.unsigned();
        let c = coeff * phase_factor(op.phase_exp());
        *self.terms.entry(key).or_insert(Complex64::new(0.0, 0.0)) += c;
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliOperator, Complex64)> + '_ {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn coeff(&self, word: &PauliOperator) -> Complex64 {
        self.terms.get(&word.unsigned()).copied().unwrap_or_default()
    }

    pub fn identity_coeff(&self) -> Complex64 {
        self.coeff(&PauliOperator::identity(self.n))
    }

    /// Drops entries at or below the tolerance.
    pub fn pruned(mut self) -> Self {
        let tol = self.tolerance;
        self.terms.retain(|_, c| c.norm() > tol);
        self
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.norm() <= tol)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= factor;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = self.clone();
        for (w, c) in other.iter() {
            out.add_term(*w, c);
        }
        Ok(out.pruned())
    }

    /// Symbolic product `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut out = Self::with_tolerance(self.n, self.tolerance);
        for (a, ca) in self.iter() {
            for (b, cb) in other.iter() {
                out.add_term(a.mul_unchecked(b), ca * cb);
            }
        }
        Ok(out.pruned())
    }

    /// Hermitian adjoint: words are Hermitian, so only coefficients conjugate.
    pub fn adjoint(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.conj();
        }
        out
    }

    /// Converts to a real sum; fails if any imaginary part exceeds `tol`.
    pub fn to_pauli_sum(&self, tol: f64) -> Result<PauliSum> {
        let mut out = PauliSum::with_tolerance(self.n, self.tolerance);
        for (w, c) in self.iter() {
            if c.im.abs() > tol {
                return Err(Error::NonHermitian(w.with_phase(1)));
            }
            out.add_term(*w, c.re)?;
        }
        Ok(out)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst: f64 = 0.0;
        for (w, c) in self.iter() {
            worst = worst.max((c - other.coeff(w)).norm());
        }
        for (w, c) in other.iter() {
            worst = worst.max((c - self.coeff(w)).norm());
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn fold_sign_and_prune() {
        let mut h = PauliSum::new(2);
        h.add_term("-XY".parse().unwrap(), 0.5).unwrap();
        assert_eq!(h.coeff(&"XY".parse().unwrap()), -0.5);
        h.add_term("XY".parse().unwrap(), 0.5).unwrap();
        assert!(h.is_empty());
        assert!(h.add_term("iXY".parse().unwrap(), 1.0).is_err());
        assert!(h.add_term("X".parse().unwrap(), 1.0).is_err());
    }

    #[test]
    fn parse_text_form() {
        let h = PauliSum::parse_text("# header\n0.5 ZZ\n  0.3 XI # inline\n\n0.2 XZ\n0.1 XZ\n").unwrap();
        assert_eq!(h.len(), 3);
        assert!((h.coeff(&"XZ".parse().unwrap()) - 0.3).abs() < 1e-15);
        assert_eq!(h.to_text(), "0.5 ZZ\n0.3 XI\n0.30000000000000004 XZ\n");
    }

    #[test]
    fn parse_errors() {
        assert!(PauliSum::parse_text("").is_err());
        assert!(PauliSum::parse_text("0.5\n").is_err());
        assert!(PauliSum::parse_text("0,5 XX\n").is_err());
        assert!(PauliSum::parse_text("1 XX\n1 X\n").is_err());
        assert!(PauliSum::parse_text("1 -XX\n").is_err());
        assert!(PauliSum::parse_text("NaN XX\n").is_err());
    }

    #[test]
    fn operator_product() {
        let x = PauliSum::from_strs(&[(1.0, "X")]).unwrap().to_operator_sum();
        let z = PauliSum::from_strs(&[(1.0, "Z")]).unwrap().to_operator_sum();
        let xz = x.mul(&z).unwrap();
        assert_eq!(xz.coeff(&"Y".parse().unwrap()), Complex64::new(0.0, -1.0));
        assert!(xz.to_pauli_sum(1e-12).is_err());
    }

    fn arb_sum() -> impl Strategy<Value = PauliSum> {
        (1usize..6).prop_flat_map(|n| {
            let m = (1u128 << n) - 1;
            proptest::collection::vec((any::<u128>(), any::<u128>(), -10.0f64..10.0), 1..12).prop_map(move |v| {
                PauliSum::from_terms(
                    n,
                    v.into_iter().map(|(x, z, c)| (PauliOperator::word(n, x & m, z & m), c)),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip_is_bit_exact(h in arb_sum()) {
            prop_assume!(!h.is_empty());
            let text = h.to_text();
            let back = PauliSum::parse_text(&text).unwrap();
            prop_assert_eq!(&back, &h);
            prop_assert_eq!(back.to_text(), text);
        }
    }
}
