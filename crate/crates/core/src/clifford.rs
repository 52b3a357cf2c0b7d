//! Clifford maps built from Pauli quarter turns, used to taper symmetry
//! generators onto single-qubit `Z` operators and to project sectors.

use crate::error::{Error, Result};
use crate::pauli::{Letter, PauliOperator};
use crate::sum::PauliSum;

/// `exp(i · turns · π/4 · axis)` with `turns = ±1`.
///
/// Conjugation `U† P U` leaves `P` unchanged when it commutes with `axis` and
/// sends it to `i · turns · P · axis` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuarterTurn {
    pub axis: PauliOperator,
    pub turns: i8,
}

impl QuarterTurn {
    #[inline]
    pub fn conjugate(&self, p: &PauliOperator) -> PauliOperator {
        if p.commutes_unchecked(&self.axis) {
            return *p;
        }
        let prod = p.mul_unchecked(&self.axis);
        let extra = if self.turns > 0 { 1 } else { 3 };
        prod.with_phase(prod.phase_exp() + extra)
    }

    pub fn inverse(&self) -> Self {
        QuarterTurn {
            axis: self.axis,
            turns: -self.turns,
        }
    }
}

/// Where a tapered generator landed: `G_i ↦ sign · Z_qubit`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SectorTarget {
    pub generator: usize,
    pub qubit: usize,
    pub sign: i8,
}

/// Product `C = U_1 U_2 … U_m` of quarter turns; conjugation is `C† P C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordMap {
    n: usize,
    rotations: Vec<QuarterTurn>,
    targets: Vec<SectorTarget>,
}

impl CliffordMap {
    pub fn identity(n: usize) -> Self {
        CliffordMap {
            n,
            rotations: Vec::new(),
            targets: Vec::new(),
        }
    }

    /// Map with the given rotations and no tapering targets.
    pub fn from_rotations(n: usize, rotations: Vec<QuarterTurn>) -> Result<Self> {
        for r in &rotations {
            if r.axis.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: r.axis.num_qubits(),
                });
            }
            if !r.axis.is_hermitian() || r.turns.abs() != 1 {
                return Err(Error::NonHermitian(r.axis));
            }
        }
        Ok(CliffordMap {
            n,
            rotations,
            targets: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rotations(&self) -> &[QuarterTurn] {
        &self.rotations
    }

    pub fn targets(&self) -> &[SectorTarget] {
        &self.targets
    }

    /// `C† p C`.
    pub fn conjugate_op(&self, p: &PauliOperator) -> PauliOperator {
        self.rotations.iter().fold(*p, |acc, r| r.conjugate(&acc))
    }

    /// `C p C†`.
    pub fn inverse_conjugate_op(&self, p: &PauliOperator) -> PauliOperator {
        self.rotations
            .iter()
            .rev()
            .fold(*p, |acc, r| r.inverse().conjugate(&acc))
    }

    /// Term-by-term conjugation of a Pauli sum.
    pub fn conjugate(&self, h: &PauliSum) -> Result<PauliSum> {
        if h.num_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: h.num_qubits(),
            });
        }
        let mut out = PauliSum::with_tolerance(self.n, h.tolerance());
        for (w, c) in h.iter() {
            out.add_term(self.conjugate_op(w), c)?;
        }
        Ok(out)
    }
}

/// Builds a Clifford map sending each generator to `±Z` on its own qubit.
///
/// Each generator, in its current conjugated form, is assigned the lowest
/// unassigned qubit `q` it acts on. If it carries `X` or `Y` there, one turn
/// about `g·Z_q` maps it straight to `Z_q`; if it carries `Z` and acts
/// elsewhere too, a turn about `X_q` first moves it to `Y`. Every axis
/// commutes with the `Z` images already fixed, so earlier generators stay put.
pub fn tapering_map(generators: &[PauliOperator], n: usize) -> Result<CliffordMap> {
    for g in generators {
        if g.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: g.num_qubits(),
            });
        }
        if !g.is_hermitian() {
            return Err(Error::NonHermitian(*g));
        }
    }
    if generators.len() > n {
        return Err(Error::DependentGenerators);
    }
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i + 1..] {
            if !a.commutes_unchecked(b) {
                return Err(Error::NotCommuting { a: *a, b: *b });
            }
        }
    }
    let mut map = CliffordMap::identity(n);
    let mut assigned = 0u128;
    for (i, g) in generators.iter().enumerate() {
        let mut cur = map.conjugate_op(g);
        let free = cur.support() & !assigned;
        if free == 0 {
            return Err(Error::DependentGenerators);
        }
        let q = free.trailing_zeros() as usize;
        let z_q = PauliOperator::single(n, q, Letter::Z);
        if cur.letter(q) == Letter::Z && cur.weight() > 1 {
            let turn = QuarterTurn {
                axis: PauliOperator::single(n, q, Letter::X),
                turns: 1,
            };
            cur = turn.conjugate(&cur);
            map.rotations.push(turn);
        }
        if cur.letter(q) != Letter::Z {
            let axis = cur.mul_unchecked(&z_q).unsigned();
            let mut turn = QuarterTurn { axis, turns: 1 };
            if turn.conjugate(&cur).sign() == Some(-1.0) {
                turn.turns = -1;
            }
            cur = turn.conjugate(&cur);
            map.rotations.push(turn);
        }
        debug_assert_eq!(cur.unsigned(), z_q);
        let sign = if cur.sign() == Some(-1.0) { -1 } else { 1 };
        map.targets.push(SectorTarget {
            generator: i,
            qubit: q,
            sign,
        });
        assigned |= 1u128 << q;
    }
    Ok(map)
}

/// True when `p` commutes with every term of `h`, i.e. `[p, H] = 0`.
pub fn verify_z2(h: &PauliSum, p: &PauliOperator) -> bool {
    p.num_qubits() == h.num_qubits() && h.words().all(|w| w.commutes_unchecked(p))
}

/// Removes the bits in `drop` from `v`, packing the rest downward.
fn compress(v: u128, drop: u128, n: usize) -> u128 {
    let mut out = 0u128;
    let mut k = 0;
    for q in 0..n {
        if (drop >> q) & 1 == 1 {
            continue;
        }
        out |= ((v >> q) & 1) << k;
        k += 1;
    }
    out
}

/// Fixes each target qubit's `Z` to its sector eigenvalue and deletes the
/// qubit, returning the block acting on the remaining `n - |targets|` qubits.
///
/// `nu` encodes the sector: bit `i` set means `ν_i = -1` for generator `i`.
pub fn project_sector(h_tapered: &PauliSum, targets: &[SectorTarget], nu: u128) -> Result<PauliSum> {
    let n = h_tapered.num_qubits();
    let drop = targets.iter().fold(0u128, |m, t| m | (1u128 << t.qubit));
    let n_out = n - targets.len();
    let mut out = PauliSum::with_tolerance(n_out, h_tapered.tolerance());
    for (w, c) in h_tapered.iter() {
        let mut factor = c;
        for t in targets {
            match w.letter(t.qubit) {
                Letter::I => {}
                Letter::Z => {
                    let nu_i = if (nu >> t.generator) & 1 == 1 { -1.0 } else { 1.0 };
                    factor *= nu_i * t.sign as f64;
                }
                _ => return Err(Error::NonSymmetricInput(*w)),
            }
        }
        let reduced =
            PauliOperator::from_masks(n_out, compress(w.x_mask(), drop, n), compress(w.z_mask(), drop, n), 0)?;
        out.add_term(reduced, factor)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn z_needs_no_rotation() {
        let m = tapering_map(&[w("Z")], 1).unwrap();
        assert!(m.rotations().is_empty());
        assert_eq!(
            m.targets(),
            &[SectorTarget {
                generator: 0,
                qubit: 0,
                sign: 1
            }]
        );
    }

    #[test]
    fn xx_takes_one_rotation() {
        let m = tapering_map(&[w("XX")], 2).unwrap();
        assert_eq!(m.rotations().len(), 1);
        assert_eq!(m.conjugate_op(&w("XX")), w("ZI"));
        assert_eq!(m.inverse_conjugate_op(&w("ZI")), w("XX"));
    }

    #[test]
    fn three_qubit_generators() {
        let g = [w("ZXZ"), w("YIY")];
        let m = tapering_map(&g, 3).unwrap();
        assert!(m.rotations().len() <= 4);
        let mut qubits = Vec::new();
        for t in m.targets() {
            let img = m.conjugate_op(&g[t.generator]);
            assert_eq!(img.unsigned(), PauliOperator::single(3, t.qubit, Letter::Z));
            qubits.push(t.qubit);
        }
        qubits.dedup();
        assert_eq!(qubits.len(), 2);
        let a: Vec<_> = ["YYI", "ZYX", "XIX"].iter().map(|s| m.conjugate_op(&w(s))).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                assert!(!a[i].commutes(&a[j]).unwrap());
            }
        }
    }

    #[test]
    fn errors() {
        assert_eq!(tapering_map(&[w("ZI"), w("ZI")], 2), Err(Error::DependentGenerators));
        assert_eq!(
            tapering_map(&[w("ZI"), w("IZ"), w("ZZ")], 2),
            Err(Error::DependentGenerators)
        );
        assert!(matches!(
            tapering_map(&[w("ZI"), w("XI")], 2),
            Err(Error::NotCommuting { .. })
        ));
    }

    #[test]
    fn z2_checks() {
        let h = PauliSum::from_strs(&[(0.5, "ZZ"), (0.3, "XI"), (0.2, "XZ")]).unwrap();
        assert!(verify_z2(&h, &w("II")));
        assert!(verify_z2(&h, &w("IZ")));
        assert!(!verify_z2(&h, &w("ZI")));
    }

    #[test]
    fn sector_blocks() {
        let h = PauliSum::from_strs(&[(0.7, "Z")]).unwrap();
        let t = [SectorTarget {
            generator: 0,
            qubit: 0,
            sign: 1,
        }];
        let b = project_sector(&h, &t, 0).unwrap();
        assert_eq!(b.num_qubits(), 0);
        assert_eq!(b.identity_coeff(), 0.7);

        let h = PauliSum::from_strs(&[(0.5, "ZZ"), (0.3, "XI"), (0.2, "XZ")]).unwrap();
        let m = tapering_map(&[w("IZ")], 2).unwrap();
        let ht = m.conjugate(&h).unwrap();
        let plus = project_sector(&ht, m.targets(), 0).unwrap();
        assert_eq!(plus, PauliSum::from_strs(&[(0.5, "Z"), (0.5, "X")]).unwrap());
        let minus = project_sector(&ht, m.targets(), 1).unwrap();
        assert!((minus.coeff(&w("X")) - 0.1).abs() < 1e-15);
        assert!(matches!(
            project_sector(
                &h,
                &[SectorTarget {
                    generator: 0,
                    qubit: 0,
                    sign: 1
                }],
                0
            ),
            Err(Error::NonSymmetricInput(_))
        ));
    }

    proptest::proptest! {
        #[test]
        fn tapering_targets_distinct_z(seed in proptest::prelude::any::<u64>(), n in 1usize..8) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let g = rng.gen_range(0..=n);
            let gens = crate::gen::random_commuting_generators(&mut rng, n, g);
            let m = tapering_map(&gens, n).unwrap();
            proptest::prop_assert!(m.rotations().len() <= 2 * g);
            let mut seen = 0u128;
            for t in m.targets() {
                let img = m.conjugate_op(&gens[t.generator]);
                proptest::prop_assert_eq!(img.unsigned(), PauliOperator::single(n, t.qubit, Letter::Z));
                proptest::prop_assert_eq!(img.sign(), Some(t.sign as f64));
                proptest::prop_assert_eq!((seen >> t.qubit) & 1, 0);
                seen |= 1 << t.qubit;
            }
            let ws = crate::gen::random_pauli_set(&mut rng, n, 6);
            for a in &ws {
                proptest::prop_assert_eq!(m.inverse_conjugate_op(&m.conjugate_op(a)), *a);
                for b in &ws {
                    proptest::prop_assert_eq!(
                        a.commutes(b).unwrap(),
                        m.conjugate_op(a).commutes(&m.conjugate_op(b)).unwrap()
                    );
                }
            }
        }
    }
}
