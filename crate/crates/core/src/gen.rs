//! Seeded random instances: Pauli sets, anticommuting sets, commuting
//! generator sets and noncontextual Hamiltonians.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::clifford::{CliffordMap, QuarterTurn};
use crate::error::Result;
use crate::pauli::{Letter, PauliOperator};
use crate::structure::{enumerate_closure, max_anticommuting_size, Decomposition};
use crate::sum::PauliSum;

/// Uniformly random unsigned word (identity included).
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize) -> PauliOperator {
    let mask = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    PauliOperator::word(n, rng.gen::<u128>() & mask, rng.gen::<u128>() & mask)
}

pub fn random_pauli_set<R: Rng + ?Sized>(rng: &mut R, n: usize, size: usize) -> Vec<PauliOperator> {
    let mut out: Vec<PauliOperator> = Vec::with_capacity(size);
    while out.len() < size {
        let w = random_word(rng, n);
        if !out.contains(&w) {
            out.push(w);
        }
        if out.len() as u128 == 1u128 << (2 * n).min(127) {
            break;
        }
    }
    out
}

/// Product of `depth` quarter turns about random non-identity words.
pub fn random_clifford<R: Rng + ?Sized>(rng: &mut R, n: usize, depth: usize) -> CliffordMap {
    let mut rotations = Vec::with_capacity(depth);
    if n > 0 {
        while rotations.len() < depth {
            let axis = random_word(rng, n);
            if axis.is_identity_word() {
                continue;
            }
            rotations.push(QuarterTurn {
                axis,
                turns: if rng.gen() { 1 } else { -1 },
            });
        }
    }
    CliffordMap::from_rotations(n, rotations).expect("random axes are Hermitian words")
}

/// Jordan–Wigner Majorana words on qubits `offset..offset+m`, followed by the
/// parity word `Z^{⊗m}` which anticommutes with all of them.
fn majoranas(n: usize, offset: usize, m: usize) -> Vec<PauliOperator> {
    let mut out = Vec::with_capacity(2 * m + 1);
    for j in 0..m {
        for letter in [Letter::X, Letter::Y] {
            let mut letters = vec![Letter::I; n];
            for l in letters.iter_mut().skip(offset).take(j) {
                *l = Letter::Z;
            }
            letters[offset + j] = letter;
            out.push(PauliOperator::from_letters(&letters).expect("at most 128 qubits"));
        }
    }
    if m > 0 {
        let mut letters = vec![Letter::I; n];
        for l in letters.iter_mut().skip(offset).take(m) {
            *l = Letter::Z;
        }
        out.push(PauliOperator::from_letters(&letters).expect("at most 128 qubits"));
    }
    out
}

/// `size` pairwise anticommuting words on `n` qubits, `size ≤ 2n + 1`.
pub fn random_anticommuting_set<R: Rng + ?Sized>(rng: &mut R, n: usize, size: usize) -> Vec<PauliOperator> {
    assert!(
        size <= max_anticommuting_size(n),
        "at most 2n+1 words pairwise anticommute"
    );
    let mut pool = majoranas(n, 0, n);
    pool.shuffle(rng);
    pool.truncate(size);
    let c = random_clifford(rng, n, 3 * n + 2);
    pool.iter().map(|w| c.conjugate_op(w).unsigned()).collect()
}

/// `g` independent pairwise commuting words, scrambled images of `Z_0..Z_{g-1}`.
pub fn random_commuting_generators<R: Rng + ?Sized>(rng: &mut R, n: usize, g: usize) -> Vec<PauliOperator> {
    assert!(g <= n);
    let c = random_clifford(rng, n, 3 * n + 2);
    (0..g)
        .map(|q| c.conjugate_op(&PauliOperator::single(n, q, Letter::Z)).unsigned())
        .collect()
}

/// Random `(G, A)` with `|G| = g` and `|A| = a ≤ 2(n−g)+1`, `a ≠ 1`.
///
/// Representatives are Majoranas on the qubits not used by `G`, each
/// multiplied by a random element of the symmetry group, and the whole frame
/// is scrambled by one random Clifford.
pub fn random_g_a<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    g: usize,
    a: usize,
) -> (Vec<PauliOperator>, Vec<PauliOperator>) {
    assert!(g <= n && a <= max_anticommuting_size(n - g));
    let gens: Vec<PauliOperator> = (0..g).map(|q| PauliOperator::single(n, q, Letter::Z)).collect();
    let mut pool = majoranas(n, g, n - g);
    pool.shuffle(rng);
    pool.truncate(a);
    let reps: Vec<PauliOperator> = pool
        .into_iter()
        .map(|c| {
            let mut w = c;
            for z in &gens {
                if rng.gen() {
                    w = w.mul_unchecked(z);
                }
            }
            w.unsigned()
        })
        .collect();
    let c = random_clifford(rng, n, 3 * n + 2);
    let scramble = |v: &[PauliOperator]| v.iter().map(|w| c.conjugate_op(w).unsigned()).collect::<Vec<_>>();
    (scramble(&gens), scramble(&reps))
}

/// Admissible `|A|` values for `m` free qubits: `0` and `2..=2m+1`.
pub fn admissible_a_sizes(m: usize) -> Vec<usize> {
    let mut v = vec![0];
    if m > 0 {
        v.extend(2..=max_anticommuting_size(m));
    }
    v
}

/// Noncontextual Hamiltonian built from a random `(G, A)` with the given
/// sizes: a random subset of at most `max_terms` words of the closure, with
/// coefficients in `[-1, 1)`, plus an optional identity offset.
pub fn random_noncontextual_with<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    g: usize,
    a: usize,
    max_terms: usize,
) -> Result<PauliSum> {
    let (gens, reps) = random_g_a(rng, n, g, a);
    let d = Decomposition::from_generators(n, gens, reps)?;
    let mut closure: Vec<PauliOperator> = enumerate_closure(&d, 1 << 20)?.into_iter().collect();
    closure.shuffle(rng);
    let keep = rng.gen_range(1..=max_terms.max(1)).min(closure.len());
    let mut h = PauliSum::new(n);
    for w in closure.into_iter().take(keep) {
        let c: f64 = rng.gen_range(-1.0..1.0);
        h.add_term(w, c)?;
    }
    if rng.gen_bool(0.3) {
        h.add_term(PauliOperator::identity(n), rng.gen_range(-1.0..1.0))?;
    }
    Ok(h)
}

/// Noncontextual Hamiltonian with `|G|` and `|A|` drawn uniformly.
pub fn random_noncontextual<R: Rng + ?Sized>(rng: &mut R, n: usize, max_terms: usize) -> Result<PauliSum> {
    let g = rng.gen_range(0..=n);
    let a = *admissible_a_sizes(n - g).choose(rng).expect("nonempty");
    random_noncontextual_with(rng, n, g, a, max_terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::independent;
    use crate::structure::is_noncontextual;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn majorana_sets_anticommute() {
        for m in 0..5 {
            let ws = majoranas(m + 1, 1, m);
            assert_eq!(ws.len(), if m == 0 { 0 } else { 2 * m + 1 });
            for (i, a) in ws.iter().enumerate() {
                for b in &ws[i + 1..] {
                    assert!(!a.commutes(b).unwrap());
                }
            }
        }
    }

    #[test]
    fn generated_sets_have_requested_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let n = rng.gen_range(1..6);
            let size = rng.gen_range(0..=2 * n + 1);
            let ac = random_anticommuting_set(&mut rng, n, size);
            assert_eq!(ac.len(), size);
            for (i, a) in ac.iter().enumerate() {
                for b in &ac[i + 1..] {
                    assert!(!a.commutes(b).unwrap());
                }
            }
            let g = rng.gen_range(0..=n);
            let gens = random_commuting_generators(&mut rng, n, g);
            assert!(independent(&gens));
            let a = *admissible_a_sizes(n - g).choose(&mut rng).unwrap();
            let (gs, reps) = random_g_a(&mut rng, n, g, a);
            assert!(Decomposition::from_generators(n, gs, reps).is_ok());
            let h = random_noncontextual(&mut rng, n, 20).unwrap();
            assert!(is_noncontextual(&h));
        }
    }

    #[test]
    fn seeded_output_is_reproducible() {
        let a = random_noncontextual(&mut ChaCha8Rng::seed_from_u64(9), 5, 30).unwrap();
        let b = random_noncontextual(&mut ChaCha8Rng::seed_from_u64(9), 5, 30).unwrap();
        assert_eq!(a, b);
    }
}
