//! Phase-tracked Pauli operators in symplectic form.
//!
//! An operator is stored as `i^phase · W(x, z)` where `W(x, z)` is the
//! Hermitian Pauli word `i^{|x∧z|} X^x Z^z`. Qubit `q` corresponds to bit `q`
//! of each mask, and qubit 0 is the leftmost character of the string form.
//! With this convention a `Y` position carries no stray phase, so an operator
//! is Hermitian exactly when `phase ∈ {0, 2}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported register width; masks are packed into a `u128`.
pub const MAX_QUBITS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: u128,
    z: u128,
    phase: u8,
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }
}

#[inline]
fn width_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

#[inline]
fn popcount(v: u128) -> u32 {
    v.count_ones()
}

impl PauliOperator {
    /// Identity on `n` qubits.
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS, "at most {MAX_QUBITS} qubits are supported");
        PauliOperator {
            n,
            x: 0,
            z: 0,
            phase: 0,
        }
    }

    /// Builds `i^phase · W(x, z)`. Bits above `n` are rejected.
    pub fn from_masks(n: usize, x: u128, z: u128, phase: u8) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let m = width_mask(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::Parse(format!("mask has bits outside {n} qubits")));
        }
        Ok(PauliOperator {
            n,
            x,
            z,
            phase: phase & 3,
        })
    }

    /// Phase-free Hermitian word; panics if masks exceed `n` bits.
    pub fn word(n: usize, x: u128, z: u128) -> Self {
        Self::from_masks(n, x, z, 0).expect("mask exceeds register width")
    }

    /// Single-qubit letter on qubit `q`, identity elsewhere.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        assert!(q < n);
        let (bx, bz) = letter.bits();
        Self::word(n, (bx as u128) << q, (bz as u128) << q)
    }

    pub fn from_letters(letters: &[Letter]) -> Result<Self> {
        let n = letters.len();
        if n > MAX_QUBITS {
            return Err(Error::TooManyQubits(n));
        }
        let (mut x, mut z) = (0u128, 0u128);
        for (q, l) in letters.iter().enumerate() {
            let (bx, bz) = l.bits();
            x |= (bx as u128) << q;
            z |= (bz as u128) << q;
        }
        Ok(PauliOperator { n, x, z, phase: 0 })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn x_mask(&self) -> u128 {
        self.x
    }

    #[inline]
    pub fn z_mask(&self) -> u128 {
        self.z
    }

    /// Exponent `k` of the global phase `i^k`.
    #[inline]
    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    /// The same operator with its global phase dropped.
    #[inline]
    pub fn unsigned(&self) -> Self {
        PauliOperator { phase: 0, ..*self }
    }

    #[inline]
    pub fn with_phase(&self, phase: u8) -> Self {
        PauliOperator {
            phase: phase & 3,
            ..*self
        }
    }

    #[inline]
    pub fn is_hermitian(&self) -> bool {
        self.phase & 1 == 0
    }

    /// Sign of a Hermitian operator (`+1` or `-1`), `None` when the phase is imaginary.
    pub fn sign(&self) -> Option<f64> {
        match self.phase {
            0 => Some(1.0),
            2 => Some(-1.0),
            _ => None,
        }
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0 && self.phase == 0
    }

    /// True when the word part is the identity, regardless of phase.
    #[inline]
    pub fn is_identity_word(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    #[inline]
    pub fn support(&self) -> u128 {
        self.x | self.z
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        popcount(self.support())
    }

    pub fn letter(&self, q: usize) -> Letter {
        let bx = (self.x >> q) & 1 == 1;
        let bz = (self.z >> q) & 1 == 1;
        match (bx, bz) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    fn check_dims(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Phase-exact product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_dims(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// Product without the dimension check; callers guarantee matching widths.
    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        // i^{|x1z1|} X^x1 Z^z1 · i^{|x2z2|} X^x2 Z^z2
        //   = i^{|x1z1| + |x2z2| + 2|z1x2|} X^x Z^z = i^{... - |xz|} W(x, z)
        let k = self.phase as u32
            + other.phase as u32
            + popcount(self.x & self.z)
            + popcount(other.x & other.z)
            + 2 * popcount(self.z & other.x)
            + 4 * 128
            - popcount(x & z);
        PauliOperator {
            n: self.n,
            x,
            z,
            phase: (k & 3) as u8,
        }
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_dims(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        popcount((self.x & other.z) ^ (self.z & other.x)) & 1 == 0
    }

    /// Jordan product `{p, q}/2`: the ordinary product for commuting
    /// operators and zero (`None`) for anticommuting ones.
    pub fn jordan_product(&self, other: &Self) -> Result<Option<Self>> {
        if self.commutes(other)? {
            Ok(Some(self.mul_unchecked(other)))
        } else {
            Ok(None)
        }
    }

    /// Lexicographic key comparison of the word parts, qubit 0 first,
    /// with per-qubit order `I < Z < X < Y`.
    pub fn cmp_words(&self, other: &Self) -> Ordering {
        let diff = (self.x ^ other.x) | (self.z ^ other.z);
        if diff == 0 {
            return self.n.cmp(&other.n);
        }
        let q = diff.trailing_zeros();
        let key = |p: &Self| (((p.x >> q) & 1) << 1) | ((p.z >> q) & 1);
        key(self).cmp(&key(other))
    }

    /// String of letters without phase prefix.
    pub fn word_string(&self) -> String {
        (0..self.n).map(|q| self.letter(q).as_char()).collect()
    }
}

impl PartialOrd for PauliOperator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PauliOperator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.cmp_words(other))
            .then_with(|| self.phase.cmp(&other.phase))
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix}{}", self.word_string())
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Accepts an optional phase prefix (`+`, `-`, `i`, `+i`, `-i`) followed by
    /// letters from `IXYZ`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('i') {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string '{s}'")));
        }
        let letters = body
            .chars()
            .map(|c| match c {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                other => Err(Error::Parse(format!("invalid Pauli letter '{other}' in '{s}'"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(&letters)?.with_phase(phase))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use proptest::prelude::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    type Mat = Vec<Vec<Complex64>>;

    fn single(l: Letter) -> Mat {
        let o = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::new(0.0, 1.0);
        match l {
            Letter::I => vec![vec![one, o], vec![o, one]],
            Letter::X => vec![vec![o, one], vec![one, o]],
            Letter::Y => vec![vec![o, -i], vec![i, o]],
            Letter::Z => vec![vec![one, o], vec![o, -one]],
        }
    }

    fn kron(a: &Mat, b: &Mat) -> Mat {
        let (ra, rb) = (a.len(), b.len());
        let mut out = vec![vec![Complex64::new(0.0, 0.0); ra * rb]; ra * rb];
        for i in 0..ra {
            for j in 0..ra {
                for k in 0..rb {
                    for l in 0..rb {
                        out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                    }
                }
            }
        }
        out
    }

    fn matmul(a: &Mat, b: &Mat) -> Mat {
        let d = a.len();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); d]; d];
        for i in 0..d {
            for k in 0..d {
                for j in 0..d {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
        out
    }

    // Independent Kronecker-product realization, qubit 0 leftmost.
    fn dense(op: &PauliOperator) -> Mat {
        let mut m = vec![vec![Complex64::new(1.0, 0.0)]];
        for q in 0..op.num_qubits() {
            m = kron(&m, &single(op.letter(q)));
        }
        let ph = Complex64::new(0.0, 1.0).powu(op.phase_exp() as u32);
        m.iter().map(|r| r.iter().map(|v| v * ph).collect()).collect()
    }

    fn close(a: &Mat, b: &Mat) -> bool {
        a.iter()
            .flatten()
            .zip(b.iter().flatten())
            .all(|(u, v)| (u - v).norm() < 1e-12)
    }

    #[test]
    fn single_qubit_table() {
        assert_eq!(p("X").multiply(&p("Z")).unwrap(), p("-iY"));
        assert_eq!(p("Z").multiply(&p("X")).unwrap(), p("iY"));
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("iZ"));
        assert_eq!(p("Y").multiply(&p("Y")).unwrap(), p("I"));
    }

    #[test]
    fn two_qubit_products() {
        assert_eq!(p("ZI").multiply(&p("IZ")).unwrap(), p("ZZ"));
        assert_eq!(p("XI").multiply(&p("XZ")).unwrap(), p("IZ"));
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("ZXZ").commutes(&p("YYI")).unwrap());
        assert!(!p("ZZ").commutes(&p("XI")).unwrap());
    }

    #[test]
    fn jordan_examples() {
        assert_eq!(p("Z").jordan_product(&p("X")).unwrap(), None);
        assert_eq!(p("ZI").jordan_product(&p("IZ")).unwrap(), Some(p("ZZ")));
        let q = p("XYZ");
        assert_eq!(q.jordan_product(&p("III")).unwrap(), Some(q));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            p("X").multiply(&p("XX")),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        ));
        assert!(p("X").commutes(&p("XX")).is_err());
        assert!(p("X").jordan_product(&p("XX")).is_err());
    }

    #[test]
    fn word_order() {
        let mut v = [p("YI"), p("XI"), p("ZI"), p("IZ"), p("II"), p("XZ")];
        v.sort();
        let s: Vec<_> = v.iter().map(|o| o.to_string()).collect();
        assert_eq!(s, ["II", "IZ", "ZI", "XI", "XZ", "YI"]);
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<PauliOperator>().is_err());
        assert!("XQ".parse::<PauliOperator>().is_err());
        assert!("-".parse::<PauliOperator>().is_err());
    }

    fn arb_op(n: usize) -> impl Strategy<Value = PauliOperator> {
        let m = (1u128 << n) - 1;
        (any::<u128>(), any::<u128>(), 0u8..4)
            .prop_map(move |(x, z, k)| PauliOperator::from_masks(n, x & m, z & m, k).unwrap())
    }

    proptest! {
        #[test]
        fn associativity(a in arb_op(8), b in arb_op(8), c in arb_op(8)) {
            let l = a.multiply(&b).unwrap().multiply(&c).unwrap();
            let r = a.multiply(&b.multiply(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn dense_product_random(a in arb_op(3), b in arb_op(3)) {
            let ab = a.multiply(&b).unwrap();
            prop_assert!(close(&dense(&ab), &matmul(&dense(&a), &dense(&b))));
        }

        #[test]
        fn commutes_matches_dense(a in arb_op(4), b in arb_op(4)) {
            let (da, db) = (dense(&a), dense(&b));
            let comm = close(&matmul(&da, &db), &matmul(&db, &da));
            prop_assert_eq!(a.commutes(&b).unwrap(), comm);
            prop_assert_eq!(a.commutes(&b).unwrap(), b.commutes(&a).unwrap());
        }

        #[test]
        fn hermitian_squares_to_identity(a in arb_op(8)) {
            let h = a.with_phase(a.phase_exp() & 2);
            prop_assert!(h.is_hermitian());
            prop_assert!(h.multiply(&h).unwrap().is_identity());
        }

        #[test]
        fn string_round_trip(a in arb_op(6)) {
            let back: PauliOperator = a.to_string().parse().unwrap();
            prop_assert_eq!(a, back);
        }
    }
}
