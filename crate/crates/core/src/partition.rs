//! Unitary partitioning: rotating a normalized sum of pairwise anticommuting
//! Pauli words onto a single word.
//!
//! For a target word `P_t` and any other word `P_k` in the set, `K = P_t P_k`
//! is anti-Hermitian with `K² = -I`, so `exp(φK) = cos φ + sin φ K` is a real
//! rotation in the plane spanned by `P_t` and `P_k`. Conjugating by it leaves
//! every word commuting with `K` alone and mixes the rest as
//! `P ↦ cos 2φ · P + sin 2φ · P K`.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::sum::{OperatorSum, PauliSum, DEFAULT_TOLERANCE};

/// Coefficient magnitude above which a word counts as surviving a reduction.
pub const SURVIVOR_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedACSum {
    pub words: Vec<PauliOperator>,
    pub betas: Vec<f64>,
    pub norm: f64,
}

impl NormalizedACSum {
    pub fn num_qubits(&self) -> usize {
        self.words[0].num_qubits()
    }

    pub fn to_pauli_sum(&self) -> PauliSum {
        PauliSum::from_terms(
            self.num_qubits(),
            self.words.iter().copied().zip(self.betas.iter().copied()),
        )
        .expect("words share a register")
    }
}

/// Normalizes a pairwise anticommuting sum by the Euclidean norm of its
/// coefficients.
pub fn normalize(terms: &[(PauliOperator, f64)]) -> Result<NormalizedACSum> {
    let Some((first, _)) = terms.first() else {
        return Err(Error::AllZero);
    };
    let n = first.num_qubits();
    let mut words = Vec::with_capacity(terms.len());
    let mut coeffs = Vec::with_capacity(terms.len());
    for (w, c) in terms {
        if w.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: w.num_qubits(),
            });
        }
        let sign = w.sign().ok_or(Error::NonHermitian(*w))?;
        words.push(w.unsigned());
        coeffs.push(c * sign);
    }
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            if a.commutes_unchecked(b) {
                return Err(Error::NotAnticommuting { a: *a, b: *b });
            }
        }
    }
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::AllZero);
    }
    let betas = coeffs.iter().map(|c| c / norm).collect();
    Ok(NormalizedACSum { words, betas, norm })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanKind {
    Sequence,
    Lcu,
}

/// One factor `exp(angle · generator)` of a sequence plan, where
/// `generator = P_target · partner` (phase included).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SequenceStep {
    pub partner: PauliOperator,
    pub generator: PauliOperator,
    pub angle: f64,
}

/// A unitary `R` with `R† (Σ β_k P_k) R = P_target`.
#[derive(Clone, Debug, PartialEq)]
pub enum RotationPlan {
    /// `R = ∏_k exp(θ_k P_t P_k)`, applied left to right.
    Sequence {
        target: PauliOperator,
        steps: Vec<SequenceStep>,
    },
    /// `R = exp(θ P_t Σ_k β'_k P_k) = Σ_l d_l Q_l` with real `d_l`; each `Q_l`
    /// is the identity or a phase-carrying product `P_t P_k`.
    Lcu {
        target: PauliOperator,
        angle: f64,
        expansion: Vec<(f64, PauliOperator)>,
    },
}

impl RotationPlan {
    pub fn kind(&self) -> PlanKind {
        match self {
            RotationPlan::Sequence { .. } => PlanKind::Sequence,
            RotationPlan::Lcu { .. } => PlanKind::Lcu,
        }
    }

    pub fn target(&self) -> PauliOperator {
        match self {
            RotationPlan::Sequence { target, .. } | RotationPlan::Lcu { target, .. } => *target,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.target().num_qubits()
    }

    /// `R` written out as a Pauli sum. For sequence plans this multiplies out
    /// every factor and may produce many words.
    pub fn operator(&self) -> OperatorSum {
        let n = self.num_qubits();
        match self {
            RotationPlan::Lcu { expansion, .. } => {
                let mut r = OperatorSum::new(n);
                for (d, w) in expansion {
                    r.add_term(*w, Complex64::new(*d, 0.0));
                }
                r
            }
            RotationPlan::Sequence { steps, .. } => {
                let mut r = OperatorSum::identity(n);
                for s in steps {
                    let mut f = OperatorSum::new(n);
                    f.add_term(PauliOperator::identity(n), Complex64::new(s.angle.cos(), 0.0));
                    f.add_term(s.generator, Complex64::new(s.angle.sin(), 0.0));
                    r = r.mul(&f).expect("same register");
                }
                r
            }
        }
    }
}

impl fmt::Display for RotationPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationPlan::Sequence { target, steps } => {
                writeln!(f, "sequence plan onto {target} ({} steps)", steps.len())?;
                for s in steps {
                    writeln!(f, "  exp({} * ({})) partner {}", s.angle, s.generator, s.partner)?;
                }
            }
            RotationPlan::Lcu {
                target,
                angle,
                expansion,
            } => {
                writeln!(f, "lcu plan onto {target}, angle {angle} ({} terms)", expansion.len())?;
                for (d, w) in expansion {
                    writeln!(f, "  {d} {w}")?;
                }
            }
        }
        Ok(())
    }
}

fn check_target(s: &NormalizedACSum, target_index: usize) -> Result<()> {
    if target_index >= s.words.len() {
        return Err(Error::IndexOutOfRange {
            index: target_index,
            len: s.words.len(),
        });
    }
    if s.words.len() < 2 {
        return Err(Error::SingleWord);
    }
    Ok(())
}

/// Folds every other word into the target one pair at a time.
pub fn build_sequence_plan(s: &NormalizedACSum, target_index: usize) -> Result<RotationPlan> {
    check_target(s, target_index)?;
    let target = s.words[target_index];
    let mut amp = s.betas[target_index];
    let mut steps = Vec::with_capacity(s.words.len() - 1);
    for (k, (w, b)) in s.words.iter().zip(&s.betas).enumerate() {
        if k == target_index {
            continue;
        }
        let alpha = b.atan2(amp);
        amp = amp.hypot(*b);
        steps.push(SequenceStep {
            partner: *w,
            generator: target.mul_unchecked(w),
            angle: -alpha / 2.0,
        });
    }
    Ok(RotationPlan::Sequence { target, steps })
}

/// Single collective rotation; its expansion has the identity plus one
/// product word per nonzero non-target coefficient.
pub fn build_lcu_plan(s: &NormalizedACSum, target_index: usize) -> Result<RotationPlan> {
    check_target(s, target_index)?;
    let n = s.num_qubits();
    let target = s.words[target_index];
    let omega = s
        .betas
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != target_index)
        .map(|(_, b)| b * b)
        .sum::<f64>()
        .sqrt();
    if omega <= DEFAULT_TOLERANCE {
        if s.betas[target_index] > 0.0 {
            return Ok(RotationPlan::Lcu {
                target,
                angle: 0.0,
                expansion: vec![(1.0, PauliOperator::identity(n))],
            });
        }
        // Sum is -P_t: a half turn about P_t P_k with any other word flips it.
        let k = if target_index == 0 { 1 } else { 0 };
        let flip = target.mul_unchecked(&s.words[k]);
        return Ok(RotationPlan::Lcu {
            target,
            angle: -std::f64::consts::FRAC_PI_2,
            expansion: vec![(1.0, flip)],
        });
    }
    let angle = -omega.atan2(s.betas[target_index]) / 2.0;
    let mut expansion = vec![(angle.cos(), PauliOperator::identity(n))];
    for (k, (w, b)) in s.words.iter().zip(&s.betas).enumerate() {
        if k == target_index || b.abs() <= DEFAULT_TOLERANCE {
            continue;
        }
        expansion.push((angle.sin() * b / omega, target.mul_unchecked(w)));
    }
    Ok(RotationPlan::Lcu {
        target,
        angle,
        expansion,
    })
}

/// Symbolic `R† H R`.
pub fn conjugate_by_plan(plan: &RotationPlan, h: &PauliSum) -> Result<PauliSum> {
    let n = plan.num_qubits();
    if h.num_qubits() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: h.num_qubits(),
        });
    }
    match plan {
        RotationPlan::Sequence { steps, .. } => {
            let mut cur = h.clone();
            for s in steps {
                let (c2, s2) = ((2.0 * s.angle).cos(), (2.0 * s.angle).sin());
                let mut next = PauliSum::with_tolerance(n, h.tolerance());
                for (w, c) in cur.iter() {
                    if w.commutes_unchecked(&s.generator) {
                        next.add_term(*w, c)?;
                    } else {
                        next.add_term(*w, c * c2)?;
                        next.add_term(w.mul_unchecked(&s.generator), c * s2)?;
                    }
                }
                cur = next;
            }
            Ok(cur)
        }
        RotationPlan::Lcu { .. } => {
            let r = plan.operator();
            let r_dag = r.adjoint();
            let mut out = OperatorSum::with_tolerance(n, h.tolerance());
            for (w, c) in h.iter() {
                let mut single = OperatorSum::new(n);
                single.add_term(*w, Complex64::new(c, 0.0));
                let conj = r_dag.mul(&single)?.mul(&r)?;
                for (v, d) in conj.iter() {
                    out.add_term(*v, d);
                }
            }
            out.pruned().to_pauli_sum(SURVIVOR_TOLERANCE)
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub word: PauliOperator,
    pub sign: f64,
    pub norm: f64,
    pub plan: Option<RotationPlan>,
}

/// Normalizes, builds a plan and verifies that conjugation leaves exactly one
/// word with unit coefficient.
pub fn reduce_to_pauli(terms: &[(PauliOperator, f64)], target_index: usize, kind: PlanKind) -> Result<Reduction> {
    let s = normalize(terms)?;
    if target_index >= s.words.len() {
        return Err(Error::IndexOutOfRange {
            index: target_index,
            len: s.words.len(),
        });
    }
    if s.words.len() == 1 {
        let sign = s.betas[0].signum();
        return Ok(Reduction {
            word: s.words[0],
            sign,
            norm: s.norm,
            plan: None,
        });
    }
    let plan = match kind {
        PlanKind::Sequence => build_sequence_plan(&s, target_index)?,
        PlanKind::Lcu => build_lcu_plan(&s, target_index)?,
    };
    let reduced = conjugate_by_plan(&plan, &s.to_pauli_sum())?;
    let survivors: Vec<_> = reduced.iter().filter(|(_, c)| c.abs() > SURVIVOR_TOLERANCE).collect();
    if survivors.len() != 1 {
        return Err(Error::ReductionFailed(survivors.len()));
    }
    let (word, c) = survivors[0];
    if (c.abs() - 1.0).abs() > SURVIVOR_TOLERANCE {
        return Err(Error::ReductionFailed(1));
    }
    Ok(Reduction {
        word: *word,
        sign: c.signum(),
        norm: s.norm,
        plan: Some(plan),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_examples() {
        let s = normalize(&[(w("Z"), 3.0), (w("X"), 4.0)]).unwrap();
        assert_eq!(s.betas, vec![0.6, 0.8]);
        assert_eq!(s.norm, 5.0);
        let s = normalize(&[(w("ZZ"), 0.5), (w("XI"), 0.5)]).unwrap();
        assert!((s.norm - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((s.betas[0] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(
            normalize(&[(w("ZZ"), 1.0), (w("XI"), 1.0), (w("XZ"), 1.0)]),
            Err(Error::NotAnticommuting { .. })
        ));
        assert_eq!(normalize(&[(w("Z"), 0.0), (w("X"), 0.0)]), Err(Error::AllZero));
        assert_eq!(normalize(&[]), Err(Error::AllZero));
    }

    #[test]
    fn sequence_examples() {
        let s = normalize(&[(w("Z"), 0.0), (w("X"), 1.0)]).unwrap();
        let plan = build_sequence_plan(&s, 1).unwrap();
        match &plan {
            RotationPlan::Sequence { steps, .. } => {
                assert_eq!(steps.len(), 1);
                assert_eq!(steps[0].angle, 0.0);
            }
            _ => unreachable!(),
        }
        let s = normalize(&[(w("Z"), 0.6), (w("X"), 0.8)]).unwrap();
        let plan = build_sequence_plan(&s, 0).unwrap();
        let out = conjugate_by_plan(&plan, &s.to_pauli_sum()).unwrap();
        assert_eq!(out.len(), 1);
        assert!((out.coeff(&w("Z")) - 1.0).abs() < 1e-12);
        let single = normalize(&[(w("Z"), 1.0)]).unwrap();
        assert_eq!(build_sequence_plan(&single, 0), Err(Error::SingleWord));
        assert_eq!(build_lcu_plan(&single, 0), Err(Error::SingleWord));
    }

    #[test]
    fn lcu_examples() {
        let s = normalize(&[(w("Z"), 0.6), (w("X"), 0.8)]).unwrap();
        let plan = build_lcu_plan(&s, 0).unwrap();
        let RotationPlan::Lcu { expansion, .. } = &plan else {
            unreachable!()
        };
        assert_eq!(expansion.len(), 2);
        assert_eq!(expansion[1].1, w("iY"));
        let out = conjugate_by_plan(&plan, &s.to_pauli_sum()).unwrap();
        assert_eq!(out.len(), 1);
        assert!((out.coeff(&w("Z")) - 1.0).abs() < 1e-12);

        let s = normalize(&[(w("YYI"), 1.0), (w("ZYX"), 0.0), (w("XIX"), 0.0)]).unwrap();
        let plan = build_lcu_plan(&s, 0).unwrap();
        let RotationPlan::Lcu { expansion, .. } = &plan else {
            unreachable!()
        };
        assert_eq!(expansion.len(), 1);
        assert!(expansion[0].1.is_identity());
    }

    #[test]
    fn negative_target_is_flipped() {
        let s = normalize(&[(w("Z"), -1.0), (w("X"), 0.0)]).unwrap();
        for plan in [build_sequence_plan(&s, 0).unwrap(), build_lcu_plan(&s, 0).unwrap()] {
            let out = conjugate_by_plan(&plan, &s.to_pauli_sum()).unwrap();
            assert_eq!(out.len(), 1);
            assert!((out.coeff(&w("Z")) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_and_commuting_words_are_fixed() {
        let s = normalize(&[(w("ZI"), 0.3), (w("XI"), -0.4)]).unwrap();
        for plan in [build_sequence_plan(&s, 0).unwrap(), build_lcu_plan(&s, 0).unwrap()] {
            let h = PauliSum::from_strs(&[(2.0, "II"), (1.5, "IX")]).unwrap();
            let out = conjugate_by_plan(&plan, &h).unwrap();
            assert!(out.max_abs_diff(&h) < 1e-12);
        }
    }

    #[test]
    fn three_word_reduction() {
        let terms = [(w("YYI"), 0.3), (w("ZYX"), -1.1), (w("XIX"), 0.7)];
        for kind in [PlanKind::Sequence, PlanKind::Lcu] {
            let r = reduce_to_pauli(&terms, 0, kind).unwrap();
            assert_eq!(r.word, w("YYI"));
            assert_eq!(r.sign, 1.0);
            assert!((r.norm - (0.09f64 + 1.21 + 0.49).sqrt()).abs() < 1e-14);
        }
        let r = reduce_to_pauli(&[(w("ZZ"), 0.5), (w("XI"), 0.5)], 1, PlanKind::Lcu).unwrap();
        assert_eq!(r.word, w("XI"));
        let r = reduce_to_pauli(&[(w("XY"), -2.0)], 0, PlanKind::Lcu).unwrap();
        assert_eq!((r.sign, r.norm), (-1.0, 2.0));
        assert!(r.plan.is_none());
    }

    proptest::proptest! {
        #[test]
        fn plans_reduce_and_preserve_norm(seed in proptest::prelude::any::<u64>(), n in 1usize..5) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let size = rng.gen_range(2..=2 * n + 1);
            let words = crate::gen::random_anticommuting_set(&mut rng, n, size);
            let terms: Vec<_> = words.iter().map(|w| (*w, rng.gen_range(-1.0..1.0))).collect();
            let target = rng.gen_range(0..size);
            let seq = reduce_to_pauli(&terms, target, PlanKind::Sequence).unwrap();
            let lcu = reduce_to_pauli(&terms, target, PlanKind::Lcu).unwrap();
            proptest::prop_assert_eq!(seq.word, lcu.word);
            proptest::prop_assert_eq!(seq.sign, lcu.sign);
            proptest::prop_assert_eq!(seq.word, words[target]);

            let mut other = PauliSum::new(n);
            other.add_term(PauliOperator::identity(n), 0.7).unwrap();
            for _ in 0..4 {
                other.add_term(crate::gen::random_word(&mut rng, n), rng.gen_range(-1.0..1.0)).unwrap();
            }
            for plan in [seq.plan.unwrap(), lcu.plan.unwrap()] {
                let out = conjugate_by_plan(&plan, &other).unwrap();
                proptest::prop_assert!((out.identity_coeff() - other.identity_coeff()).abs() < 1e-12);
                proptest::prop_assert!((out.squared_norm() - other.squared_norm()).abs() < 1e-10);
            }
        }
    }
}
