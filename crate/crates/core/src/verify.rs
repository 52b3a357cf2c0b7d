//! Independent dense oracles for small registers.
//!
//! Matrices index basis states with qubit 0 as the most significant bit, so a
//! word's leftmost letter is the leftmost Kronecker factor.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::clifford::CliffordMap;
use crate::eigenstate::{build_eigenstate, StabilizerSum, StabilizerTableau};
use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::spectrum::{full_spectrum, ground_search, SearchMode, DEFAULT_BRUTE_CAP, DEFAULT_MERGE_TOLERANCE};
use crate::structure::{extract_generators, is_noncontextual};
use crate::sum::{OperatorSum, PauliSum};

pub const DEFAULT_DENSE_CAP: usize = 12;
pub const DEFAULT_EIGEN_DIM_CAP: usize = 64;
pub const DEFAULT_BRUTE_WORD_CAP: usize = 20;
pub const DEFAULT_MOMENT_TERM_CAP: usize = 1 << 20;
pub const JACOBI_SWEEP_CAP: usize = 100;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = ONE;
        }
        m
    }

    pub fn from_rows(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::LengthMismatch {
                expected: dim * dim,
                got: data.len(),
            });
        }
        Ok(DenseOperator { dim, data })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        Ok(out)
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest `|A_ij - conj(A_ji)|`.
    pub fn hermiticity_defect(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }
}

fn single_qubit(letter: Letter) -> [[Complex64; 2]; 2] {
    let i = Complex64::new(0.0, 1.0);
    match letter {
        Letter::I => [[ONE, ZERO], [ZERO, ONE]],
        Letter::X => [[ZERO, ONE], [ONE, ZERO]],
        Letter::Y => [[ZERO, -i], [i, ZERO]],
        Letter::Z => [[ONE, ZERO], [ZERO, -ONE]],
    }
}

/// Column index of the single nonzero entry in `row` together with its value,
/// read off the Kronecker product of single-qubit matrices.
fn kron_row(word: &PauliOperator, mats: &[[[Complex64; 2]; 2]], row: usize) -> (usize, Complex64) {
    let n = word.num_qubits();
    let mut col = 0usize;
    let mut val = ONE;
    for (q, m) in mats.iter().enumerate() {
        let r_bit = (row >> (n - 1 - q)) & 1;
        let c_bit = if m[r_bit][0] != ZERO { 0 } else { 1 };
        col |= c_bit << (n - 1 - q);
        val *= m[r_bit][c_bit];
    }
    (col, val)
}

fn word_phase(word: &PauliOperator) -> Complex64 {
    match word.phase_exp() {
        0 => ONE,
        1 => Complex64::new(0.0, 1.0),
        2 => -ONE,
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Dense matrix of a complex-coefficient sum.
pub fn dense_operator_sum(h: &OperatorSum, cap: usize) -> Result<DenseOperator> {
    let n = h.num_qubits();
    if n > cap || n >= usize::BITS as usize {
        return Err(Error::CapExceeded {
            what: "dense qubits",
            needed: n as u128,
            cap: cap as u128,
        });
    }
    let dim = 1usize << n;
    let mut m = DenseOperator::zeros(dim);
    for (w, c) in h.iter() {
        let mats: Vec<_> = (0..n).map(|q| single_qubit(w.letter(q))).collect();
        let scale = c * word_phase(w);
        for row in 0..dim {
            let (col, v) = kron_row(w, &mats, row);
            m.data[row * dim + col] += scale * v;
        }
    }
    Ok(m)
}

/// Dense matrix of `h`, limited to `cap` qubits.
pub fn dense_with_cap(h: &PauliSum, cap: usize) -> Result<DenseOperator> {
    dense_operator_sum(&h.to_operator_sum(), cap)
}

pub fn dense(h: &PauliSum) -> Result<DenseOperator> {
    dense_with_cap(h, DEFAULT_DENSE_CAP)
}

pub fn dense_word(w: &PauliOperator) -> Result<DenseOperator> {
    let mut s = OperatorSum::new(w.num_qubits());
    s.add_term(w.unsigned(), word_phase(w));
    dense_operator_sum(&s, DEFAULT_DENSE_CAP)
}

/// Reverses the lowest `n` bits, converting qubit masks to basis indices.
#[inline]
fn to_index_bits(mask: u128, n: usize) -> usize {
    if n == 0 {
        0
    } else {
        (mask.reverse_bits() >> (128 - n)) as usize
    }
}

fn apply_word_into(w: &PauliOperator, c: Complex64, v: &[Complex64], out: &mut [Complex64]) {
    let n = w.num_qubits();
    let x = to_index_bits(w.x_mask(), n);
    let z = to_index_bits(w.z_mask(), n);
    let y_count = (w.x_mask() & w.z_mask()).count_ones();
    // W = i^{|x∧z|} X^x Z^z; entry (col ^ x, col) = phase · (-1)^{|z ∧ col|}.
    let base = c * word_phase(w) * crate::sum::phase_factor(y_count as u8);
    for (col, amp) in v.iter().enumerate() {
        if *amp == ZERO {
            continue;
        }
        let s = if (z & col).count_ones() % 2 == 1 { -base } else { base };
        out[col ^ x] += s * amp;
    }
}

/// Matrix-free `h · v`.
pub fn apply(h: &PauliSum, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = h.num_qubits();
    if n >= usize::BITS as usize - 1 || v.len() != 1usize << n {
        return Err(Error::LengthMismatch {
            expected: 1usize << n.min(62),
            got: v.len(),
        });
    }
    let mut out = vec![ZERO; v.len()];
    for (w, c) in h.iter() {
        apply_word_into(w, Complex64::new(c, 0.0), v, &mut out);
    }
    Ok(out)
}

/// Matrix-free `c · w · v` for a single (possibly phased) word.
pub fn apply_word(w: &PauliOperator, c: Complex64, v: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = w.num_qubits();
    if n >= usize::BITS as usize - 1 || v.len() != 1usize << n {
        return Err(Error::LengthMismatch {
            expected: 1usize << n.min(62),
            got: v.len(),
        });
    }
    let mut out = vec![ZERO; v.len()];
    apply_word_into(w, c, v, &mut out);
    Ok(out)
}

/// `Tr(H^k) / 2^n` for `k = 1..=k_max` (at most 4), from identity-word
/// coefficients of symbolic products.
///
/// Only `H²` is multiplied out: for Hermitian words the identity coefficient
/// of `A·B` is `Σ_w a_w b_w`, which yields the third and fourth moments.
pub fn trace_moments(h: &PauliSum, k_max: usize) -> Result<Vec<f64>> {
    trace_moments_with_cap(h, k_max, DEFAULT_MOMENT_TERM_CAP)
}

pub fn trace_moments_with_cap(h: &PauliSum, k_max: usize, term_cap: usize) -> Result<Vec<f64>> {
    if k_max > 4 {
        return Err(Error::CapExceeded {
            what: "moment order",
            needed: k_max as u128,
            cap: 4,
        });
    }
    let mut out = Vec::with_capacity(k_max);
    if k_max == 0 {
        return Ok(out);
    }
    let h_op = h.to_operator_sum();
    out.push(h_op.identity_coeff().re);
    if k_max == 1 {
        return Ok(out);
    }
    let needed = (h.len() as u128) * (h.len() as u128);
    if needed > term_cap as u128 {
        return Err(Error::CapExceeded {
            what: "moment product terms",
            needed,
            cap: term_cap as u128,
        });
    }
    let h2 = h_op.mul(&h_op)?;
    out.push(h2.identity_coeff().re);
    if k_max >= 3 {
        let m3: Complex64 = h.iter().map(|(w, c)| h2.coeff(w) * c).sum();
        out.push(m3.re);
    }
    if k_max >= 4 {
        let m4: Complex64 = h2.iter().map(|(_, a)| a * a).sum();
        out.push(m4.re);
    }
    Ok(out)
}

/// Sorted eigenvalues of a Hermitian matrix by cyclic complex Jacobi sweeps.
pub fn dense_eigenvalues(m: &DenseOperator) -> Result<Vec<f64>> {
    dense_eigenvalues_with_cap(m, DEFAULT_EIGEN_DIM_CAP)
}

pub fn dense_eigenvalues_with_cap(m: &DenseOperator, dim_cap: usize) -> Result<Vec<f64>> {
    let d = m.dim;
    if d > dim_cap {
        return Err(Error::CapExceeded {
            what: "eigensolver dimension",
            needed: d as u128,
            cap: dim_cap as u128,
        });
    }
    let scale = m.frobenius_norm().max(1.0);
    let defect = m.hermiticity_defect();
    if defect > 1e-10 * scale {
        return Err(Error::NotHermitianMatrix(defect));
    }
    let mut a = m.data.clone();
    let threshold = 1e-12 * scale;
    let off = |a: &[Complex64]| -> f64 {
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    s += a[i * d + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) >= threshold {
        if sweeps == JACOBI_SWEEP_CAP {
            return Err(Error::NoConvergence(sweeps));
        }
        sweeps += 1;
        for p in 0..d {
            for q in p + 1..d {
                let apq = a[p * d + q];
                let mag = apq.norm();
                if mag < 1e-300 {
                    continue;
                }
                // D = diag(1, conj(e)) makes the pivot real, then a real
                // rotation annihilates it.
                let e = apq / mag;
                let app = a[p * d + p].re;
                let aqq = a[q * d + q].re;
                let theta = (aqq - app) / (2.0 * mag);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = -e.conj() * s;
                let u_qq = e.conj() * c;
                for k in 0..d {
                    let akp = a[k * d + p];
                    let akq = a[k * d + q];
                    a[k * d + p] = akp * u_pp + akq * u_qp;
                    a[k * d + q] = akp * u_pq + akq * u_qq;
                }
                for k in 0..d {
                    let apk = a[p * d + k];
                    let aqk = a[q * d + k];
                    a[p * d + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * d + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..d).map(|i| a[i * d + i].re).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

fn commute_by_letters(a: &PauliOperator, b: &PauliOperator) -> bool {
    let n = a.num_qubits();
    let clashes = (0..n)
        .filter(|&q| {
            let (la, lb) = (a.letter(q), b.letter(q));
            la != Letter::I && lb != Letter::I && la != lb
        })
        .count();
    clashes % 2 == 0
}

/// Literal transitivity test: drop words commuting with every other word,
/// then require `a~b ∧ b~c ⇒ a~c` over all triples of distinct words.
pub fn brute_noncontextuality(words: &[PauliOperator]) -> Result<bool> {
    brute_noncontextuality_with_cap(words, DEFAULT_BRUTE_WORD_CAP)
}

pub fn brute_noncontextuality_with_cap(words: &[PauliOperator], cap: usize) -> Result<bool> {
    let mut set: Vec<PauliOperator> = words.iter().map(|w| w.unsigned()).collect();
    set.sort();
    set.dedup();
    if set.len() > cap {
        return Err(Error::CapExceeded {
            what: "oracle words",
            needed: set.len() as u128,
            cap: cap as u128,
        });
    }
    let rest: Vec<PauliOperator> = set
        .iter()
        .filter(|a| !set.iter().all(|b| commute_by_letters(a, b)))
        .copied()
        .collect();
    for a in &rest {
        for b in &rest {
            if a == b || !commute_by_letters(a, b) {
                continue;
            }
            for c in &rest {
                if c == a || c == b {
                    continue;
                }
                if commute_by_letters(b, c) && !commute_by_letters(a, c) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Dense `C = U_1 ⋯ U_m` with `U = (I + i·turns·axis)/√2`.
pub fn dense_clifford(map: &CliffordMap) -> Result<DenseOperator> {
    let n = map.num_qubits();
    let mut c = OperatorSum::identity(n);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let mut acc = dense_operator_sum(&c, DEFAULT_DENSE_CAP)?;
    for turn in map.rotations() {
        c = OperatorSum::new(n);
        c.add_term(PauliOperator::identity(n), Complex64::new(r, 0.0));
        c.add_term(turn.axis, Complex64::new(0.0, r * turn.turns as f64));
        acc = acc.matmul(&dense_operator_sum(&c, DEFAULT_DENSE_CAP)?)?;
    }
    Ok(acc)
}

fn normalize_vector(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for a in v.iter_mut() {
            *a /= norm;
        }
    }
    norm
}

/// Dense state stabilized by every generator of the tableau.
///
/// A fixed-seed random vector is projected by `∏ (I + g)/2`, normalized, and
/// its global phase fixed so the first largest component is real positive.
pub fn stabilizer_state(t: &StabilizerTableau) -> Result<Vec<Complex64>> {
    let n = t.num_qubits();
    if n > DEFAULT_DENSE_CAP {
        return Err(Error::CapExceeded {
            what: "dense qubits",
            needed: n as u128,
            cap: DEFAULT_DENSE_CAP as u128,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut v: Vec<Complex64> = (0..1usize << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    for g in t.generators() {
        let gv = apply_word(g, ONE, &v)?;
        for (a, b) in v.iter_mut().zip(gv) {
            *a = (*a + b) * 0.5;
        }
    }
    if normalize_vector(&mut v) < 1e-8 {
        return Err(Error::CapExceeded {
            what: "projection norm",
            needed: 0,
            cap: 0,
        });
    }
    let peak = v.iter().map(|a| a.norm()).fold(0.0, f64::max);
    let pivot = v
        .iter()
        .position(|a| a.norm() > peak * (1.0 - 1e-9))
        .expect("nonzero vector");
    let phase = v[pivot].conj() / v[pivot].norm();
    for a in v.iter_mut() {
        *a *= phase;
    }
    Ok(v)
}

/// Dense `Σ_l a_l W_l |anchor⟩`. Not renormalized: the branches form a
/// unitary, so the norm is itself a check.
pub fn stabilizer_sum_vector(s: &StabilizerSum) -> Result<Vec<Complex64>> {
    let anchor = stabilizer_state(&s.anchor)?;
    let mut out = vec![ZERO; anchor.len()];
    for (amp, w) in &s.branches {
        apply_word_into(w, *amp, &anchor, &mut out);
    }
    Ok(out)
}

pub fn vector_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// `‖H ψ - E ψ‖₂`.
pub fn residual(h: &PauliSum, psi: &[Complex64], energy: f64) -> Result<f64> {
    let hv = apply(h, psi)?;
    Ok(hv
        .iter()
        .zip(psi)
        .map(|(a, b)| (a - b * energy).norm_sqr())
        .sum::<f64>()
        .sqrt())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub status: &'static str,
    pub n: usize,
    pub terms: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Runs every oracle that fits the caps and records one entry per check.
pub fn run_battery(h: &PauliSum) -> VerifyReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: String| {
        checks.push(CheckResult {
            name: name.to_string(),
            passed,
            detail,
        });
    };
    let n = h.num_qubits();
    let noncontextual = is_noncontextual(h);

    let words: Vec<PauliOperator> = h.words().copied().collect();
    match brute_noncontextuality(&words) {
        Ok(b) => push(
            "classifier",
            b == noncontextual,
            format!("graph {noncontextual}, transitivity oracle {b}"),
        ),
        Err(e) => push("classifier", true, format!("skipped: {e}")),
    }

    if n <= 10 {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let v: Vec<Complex64> = (0..1usize << n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        match (apply(h, &v), dense(h).and_then(|m| m.matvec(&v))) {
            (Ok(a), Ok(b)) => {
                let diff = a.iter().zip(&b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
                push(
                    "apply_vs_dense",
                    diff <= 1e-12 * h.squared_norm().sqrt().max(1.0) * (1usize << n) as f64,
                    format!("max diff {diff:e}"),
                );
            }
            (Err(e), _) | (_, Err(e)) => push("apply_vs_dense", false, e.to_string()),
        }
    }

    if !noncontextual {
        push(
            "noncontextual",
            false,
            "input is contextual; remaining checks skipped".into(),
        );
        return finish(n, h.len(), checks);
    }
    let d = match extract_generators(h) {
        Ok(d) => d,
        Err(e) => {
            push("decomposition", false, e.to_string());
            return finish(n, h.len(), checks);
        }
    };
    let diff = d.reconstruct().max_abs_diff(h);
    push(
        "reconstruction",
        diff <= 1e-12,
        format!(
            "|G| = {}, |A| = {}, max diff {diff:e}",
            d.num_generators(),
            d.num_reps()
        ),
    );

    let spectrum = match full_spectrum(&d, DEFAULT_BRUTE_CAP, DEFAULT_MERGE_TOLERANCE) {
        Ok(s) => s,
        Err(e) => {
            push("spectrum", false, e.to_string());
            return finish(n, h.len(), checks);
        }
    };
    push(
        "multiplicity_sum",
        n < 127 && spectrum.total_multiplicity() == 1u128 << n,
        format!("sum {}", spectrum.total_multiplicity()),
    );
    push(
        "divisibility",
        spectrum.divisible,
        format!("divisor {:?}", spectrum.divisor),
    );

    if 1usize << n <= DEFAULT_EIGEN_DIM_CAP {
        match dense(h).and_then(|m| dense_eigenvalues(&m)) {
            Ok(ev) => {
                let closed = spectrum.expanded();
                let diff = ev.iter().zip(&closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                push(
                    "spectrum_vs_jacobi",
                    ev.len() == closed.len() && diff <= 1e-9,
                    format!("max diff {diff:e}"),
                );
            }
            Err(e) => push("spectrum_vs_jacobi", false, e.to_string()),
        }
    }

    match trace_moments(h, 4) {
        Ok(m) => {
            let mut worst: f64 = 0.0;
            for (k, mk) in m.iter().enumerate() {
                let s = spectrum.normalized_moment(k as u32 + 1);
                worst = worst.max((mk - s).abs() / s.abs().max(1.0));
            }
            push("trace_moments", worst <= 1e-9, format!("max relative diff {worst:e}"));
        }
        Err(e) => push("trace_moments", true, format!("skipped: {e}")),
    }

    match ground_search(&d, SearchMode::Brute { cap: DEFAULT_BRUTE_CAP }) {
        Ok(g) => {
            let diff = (g.energy - spectrum.ground_energy()).abs();
            push(
                "ground",
                diff <= 1e-10,
                format!("epsilon_0 {}, nu {}, diff {diff:e}", g.energy, g.nu),
            );
            if n <= DEFAULT_DENSE_CAP {
                match build_eigenstate(&d, g.nu, -1, 0).and_then(|e| {
                    let psi = stabilizer_sum_vector(&e.state)?;
                    Ok((residual(h, &psi, e.energy)?, e.energy))
                }) {
                    Ok((r, e)) => push(
                        "ground_eigenstate",
                        r <= 1e-10 * h.squared_norm().sqrt().max(1.0) && (e - g.energy).abs() <= 1e-12,
                        format!("residual {r:e}"),
                    ),
                    Err(e) => push("ground_eigenstate", false, e.to_string()),
                }
            }
        }
        Err(e) => push("ground", true, format!("skipped: {e}")),
    }
    finish(n, h.len(), checks)
}

fn finish(n: usize, terms: usize, checks: Vec<CheckResult>) -> VerifyReport {
    let status = if checks.iter().all(|c| c.passed) {
        "pass"
    } else {
        "fail"
    };
    VerifyReport {
        status,
        n,
        terms,
        checks,
    }
}
