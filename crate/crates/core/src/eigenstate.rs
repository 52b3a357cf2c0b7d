//! Eigenvectors of noncontextual Hamiltonians as weighted Pauli branches
//! acting on a single stabilizer state.
//!
//! For a sector `ν` and sign `±`, the anchor state is stabilized by every
//! `ν_j G_j` and by `±C_1`. The LCU rotation `R(ν)` with
//! `R† C(ν) R = C_1` then maps it to an eigenvector `R |anchor⟩` of energy
//! `s₀(ν) ± ‖s(ν)‖`. Expanding `R` gives at most `|A|` Pauli branches.

use num_complex::Complex64;

use crate::clifford::tapering_map;
use crate::error::{Error, Result};
use crate::partition::{build_lcu_plan, normalize, RotationPlan};
use crate::pauli::{Letter, PauliOperator};
use crate::spectrum::{nu_sign, sector_values};
use crate::structure::Decomposition;
use crate::sum::{phase_factor, DEFAULT_TOLERANCE};

/// `n` independent, pairwise commuting signed Pauli operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    generators: Vec<PauliOperator>,
}

impl StabilizerTableau {
    /// Validates and wraps a full generator list.
    pub fn new(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        if generators.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                got: generators.len(),
            });
        }
        for g in &generators {
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
        for (i, a) in generators.iter().enumerate() {
            for b in &generators[i + 1..] {
                if !a.commutes_unchecked(b) {
                    return Err(Error::NotCommuting { a: *a, b: *b });
                }
            }
        }
        if !crate::gf2::independent(&generators) {
            return Err(Error::DependentSet);
        }
        Ok(StabilizerTableau { n, generators })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Signed generators; each stabilizes the state with eigenvalue `+1`.
    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }
}

/// `Σ_l a_l W_l |anchor⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilizerSum {
    pub anchor: StabilizerTableau,
    pub branches: Vec<(Complex64, PauliOperator)>,
    /// Number of branches: an upper bound on the stabilizer rank.
    pub chi_bound: usize,
}

/// Branch count, an upper bound on the stabilizer rank (not claimed minimal).
pub fn rank_bound(s: &StabilizerSum) -> usize {
    s.branches.len()
}

/// Completes `{ν_j G_j} ∪ {sign · p_a}` to a full stabilizer tableau.
///
/// The given operators are tapered onto single-qubit `Z`s; every untouched
/// qubit `q` contributes `C Z_q C†`, mapped back from the tapered frame. Bit
/// `k` of `completion_signs` flips the sign of the `k`-th completion word,
/// selecting a different state inside the degenerate stabilized subspace.
pub fn anchor_state(
    n: usize,
    generators: &[PauliOperator],
    nu: u128,
    p_a: Option<(PauliOperator, i8)>,
    completion_signs: u128,
) -> Result<StabilizerTableau> {
    let mut signed: Vec<PauliOperator> = Vec::with_capacity(n);
    for (j, g) in generators.iter().enumerate() {
        let base = g.unsigned();
        signed.push(if nu_sign(nu, j) < 0.0 { base.with_phase(2) } else { base });
    }
    if let Some((p, s)) = p_a {
        let base = p.unsigned();
        signed.push(if s < 0 { base.with_phase(2) } else { base });
    }
    for w in &signed {
        if w.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: w.num_qubits(),
            });
        }
    }
    for (i, a) in signed.iter().enumerate() {
        for b in &signed[i + 1..] {
            if !a.commutes_unchecked(b) {
                return Err(Error::NotCommuting { a: *a, b: *b });
            }
        }
    }
    let unsigned: Vec<PauliOperator> = signed.iter().map(|w| w.unsigned()).collect();
    let map = match tapering_map(&unsigned, n) {
        Err(Error::DependentGenerators) => return Err(Error::DependentSet),
        other => other?,
    };
    let used = map.targets().iter().fold(0u128, |m, t| m | (1u128 << t.qubit));
    for (k, q) in (0..n).filter(|q| (used >> q) & 1 == 0).enumerate() {
        let mut w = map.inverse_conjugate_op(&PauliOperator::single(n, q, Letter::Z));
        if (completion_signs >> k) & 1 == 1 {
            w = w.with_phase(w.phase_exp() + 2);
        }
        signed.push(w);
    }
    StabilizerTableau::new(n, signed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Eigenstate {
    pub state: StabilizerSum,
    pub energy: f64,
    pub nu: u128,
    pub sign: i8,
    /// Set when `‖s(ν)‖` vanishes and the whole sector block is degenerate.
    pub degenerate: bool,
    pub plan: Option<RotationPlan>,
}

/// Builds the eigenvector for sector `nu` and sign `sign` (`-1` selects `E₋`).
pub fn build_eigenstate(d: &Decomposition, nu: u128, sign: i8, completion_signs: u128) -> Result<Eigenstate> {
    if sign != 1 && sign != -1 {
        return Err(Error::Parse(format!("sign must be +1 or -1, got {sign}")));
    }
    let n = d.num_qubits();
    let sv = sector_values(d, nu)?;
    let identity_branch = vec![(Complex64::new(1.0, 0.0), PauliOperator::identity(n))];

    if d.a_reps.is_empty() {
        let anchor = anchor_state(n, &d.g_generators, nu, None, completion_signs)?;
        let state = StabilizerSum {
            anchor,
            branches: identity_branch,
            chi_bound: 1,
        };
        return Ok(Eigenstate {
            state,
            energy: sv.s0,
            nu,
            sign,
            degenerate: false,
            plan: None,
        });
    }

    let c1 = d.a_reps[0];
    let anchor = anchor_state(n, &d.g_generators, nu, Some((c1, sign)), completion_signs)?;
    if sv.norm_s <= DEFAULT_TOLERANCE {
        let state = StabilizerSum {
            anchor,
            branches: identity_branch,
            chi_bound: 1,
        };
        return Ok(Eigenstate {
            state,
            energy: sv.s0,
            nu,
            sign,
            degenerate: true,
            plan: None,
        });
    }

    let terms: Vec<(PauliOperator, f64)> = d.a_reps.iter().copied().zip(sv.s.iter().copied()).collect();
    let energy = sv.s0 + sign as f64 * sv.norm_s;
    if terms.len() < 2 {
        let state = StabilizerSum {
            anchor,
            branches: identity_branch,
            chi_bound: 1,
        };
        return Ok(Eigenstate {
            state,
            energy,
            nu,
            sign,
            degenerate: false,
            plan: None,
        });
    }
    let plan = build_lcu_plan(&normalize(&terms)?, 0)?;
    let RotationPlan::Lcu { expansion, .. } = &plan else {
        unreachable!("build_lcu_plan returns an LCU plan")
    };
    let branches: Vec<(Complex64, PauliOperator)> = expansion
        .iter()
        .filter(|(amp, _)| amp.abs() > DEFAULT_TOLERANCE)
        .map(|(amp, q)| (Complex64::new(*amp, 0.0) * phase_factor(q.phase_exp()), q.unsigned()))
        .collect();
    let chi_bound = branches.len();
    let state = StabilizerSum {
        anchor,
        branches,
        chi_bound,
    };
    Ok(Eigenstate {
        state,
        energy,
        nu,
        sign,
        degenerate: false,
        plan: Some(plan),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::extract_generators;
    use crate::sum::PauliSum;

    fn w(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn anchor_examples() {
        let t = anchor_state(2, &[w("IZ")], 0, Some((w("ZZ"), -1)), 0).unwrap();
        assert_eq!(t.generators(), &[w("IZ"), w("-ZZ")]);
        let t = anchor_state(1, &[], 0, Some((w("Z"), 1)), 0).unwrap();
        assert_eq!(t.generators(), &[w("Z")]);
        let t = anchor_state(2, &[w("ZI"), w("IZ")], 0, None, 0).unwrap();
        assert_eq!(t.generators(), &[w("ZI"), w("IZ")]);
        let t = anchor_state(2, &[w("XX")], 0, None, 0).unwrap();
        assert_eq!(t.generators().len(), 2);
        assert!(matches!(
            anchor_state(2, &[w("ZI")], 0, Some((w("XI"), 1)), 0),
            Err(Error::NotCommuting { .. })
        ));
        assert!(matches!(
            anchor_state(2, &[w("ZI")], 0, Some((w("ZI"), 1)), 0),
            Err(Error::DependentSet)
        ));
    }

    #[test]
    fn completion_flag_changes_state() {
        let a = anchor_state(3, &[w("XXI")], 0, None, 0).unwrap();
        let b = anchor_state(3, &[w("XXI")], 0, None, 0b01).unwrap();
        assert_ne!(a, b);
        assert_eq!(a.generators()[1].unsigned(), b.generators()[1].unsigned());
    }

    #[test]
    fn derived_eigenstate() {
        let h = PauliSum::from_strs(&[(0.5, "ZZ"), (0.3, "XI"), (0.2, "XZ")]).unwrap();
        let d = extract_generators(&h).unwrap();
        let e = build_eigenstate(&d, 0, -1, 0).unwrap();
        assert_eq!(rank_bound(&e.state), 2);
        assert!((e.energy + std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let again = build_eigenstate(&d, 0, -1, 0).unwrap();
        assert_eq!(e, again);
    }

    #[test]
    fn stabilizer_hamiltonian_single_branch() {
        let h = PauliSum::from_strs(&[(1.0, "ZI"), (0.5, "ZZ"), (-0.25, "IZ")]).unwrap();
        let d = extract_generators(&h).unwrap();
        for nu in 0..4 {
            let e = build_eigenstate(&d, nu, 1, 0).unwrap();
            assert_eq!(rank_bound(&e.state), 1);
        }
    }

    #[test]
    fn zero_norm_sector_is_flagged() {
        // In sector ν(IZ) = -1 both clique contributions vanish.
        let h = PauliSum::from_strs(&[(0.5, "XI"), (0.5, "XZ"), (0.5, "ZI"), (0.5, "ZZ")]).unwrap();
        let d = extract_generators(&h).unwrap();
        assert_eq!(d.g_generators, vec![w("IZ")]);
        let e = build_eigenstate(&d, 1, -1, 0).unwrap();
        assert!(e.degenerate);
        assert_eq!(e.energy, 0.0);
        assert!(!build_eigenstate(&d, 0, -1, 0).unwrap().degenerate);
    }

    proptest::proptest! {
        #[test]
        fn branch_bound_and_determinism(seed in proptest::prelude::any::<u64>(), n in 1usize..8) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let h = crate::gen::random_noncontextual(&mut rng, n, 30).unwrap();
            let d = extract_generators(&h).unwrap();
            let nu = rng.gen::<u128>() & ((1u128 << d.num_generators()) - 1);
            let sign = if rng.gen() { 1 } else { -1 };
            let e = build_eigenstate(&d, nu, sign, 0).unwrap();
            let a = d.num_reps();
            proptest::prop_assert!(rank_bound(&e.state) <= a.max(1));
            proptest::prop_assert!(a <= 2 * (n - d.num_generators()) + 1);
            proptest::prop_assert_eq!(e.state.anchor.generators().len(), n);
            let mut words: Vec<_> = e.state.branches.iter().map(|b| b.1).collect();
            words.sort();
            words.dedup();
            proptest::prop_assert_eq!(words.len(), e.state.branches.len());
            proptest::prop_assert_eq!(build_eigenstate(&d, nu, sign, 0).unwrap(), e);
        }
    }
}
