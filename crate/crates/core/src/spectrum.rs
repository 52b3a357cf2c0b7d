//! Closed-form spectrum of a noncontextual Hamiltonian.
//!
//! Fixing every symmetry generator `G_j` to an eigenvalue `ν_j = ±1` collapses
//! the Hamiltonian to `s₀(ν) I + Σ_i s_i(ν) C_i` with pairwise anticommuting
//! `C_i`, whose eigenvalues are `s₀(ν) ± ‖s(ν)‖`. Sectors are encoded as the
//! bits of an unsigned integer: bit `j` clear means `ν_j = +1`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::structure::Decomposition;
use crate::sum::PauliSum;

/// Largest `|G|` for exhaustive sector enumeration unless overridden.
pub const DEFAULT_BRUTE_CAP: usize = 24;
/// Largest `|G|` for which projectors are expanded into Pauli sums.
pub const DEFAULT_PROJECTOR_CAP: usize = 16;
/// Eigenvalues closer than this are merged in [`full_spectrum`].
pub const DEFAULT_MERGE_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SectorValues {
    pub nu: u128,
    pub s0: f64,
    pub s: Vec<f64>,
    pub norm_s: f64,
    pub e_minus: f64,
    pub e_plus: f64,
}

/// `±1` value of generator `j` in sector `nu`.
#[inline]
pub fn nu_sign(nu: u128, j: usize) -> f64 {
    if (nu >> j) & 1 == 1 {
        -1.0
    } else {
        1.0
    }
}

/// Packs a `±1` assignment into a sector bitmask.
pub fn nu_from_signs(signs: &[i8]) -> Result<u128> {
    if signs.len() > 128 {
        return Err(Error::LengthMismatch {
            expected: 128,
            got: signs.len(),
        });
    }
    signs.iter().enumerate().try_fold(0u128, |acc, (j, s)| match s {
        1 => Ok(acc),
        -1 => Ok(acc | (1u128 << j)),
        _ => Err(Error::Parse(format!("sector value {s} is not ±1"))),
    })
}

pub fn nu_to_signs(nu: u128, len: usize) -> Vec<i8> {
    (0..len).map(|j| if (nu >> j) & 1 == 1 { -1 } else { 1 }).collect()
}

/// Flat view of the factorization table for fast repeated sector evaluation.
#[derive(Clone, Debug)]
struct SectorEvaluator {
    identity: f64,
    reps: usize,
    terms: Vec<(u128, usize, f64)>,
}

impl SectorEvaluator {
    fn new(d: &Decomposition) -> Self {
        let reps = d.num_reps();
        let terms = d
            .factorization
            .iter()
            .map(|t| (t.factor.g_mask, t.factor.clique.map_or(reps, |i| i), t.h))
            .collect();
        SectorEvaluator {
            identity: d.identity_coeff,
            reps,
            terms,
        }
    }

    /// Returns `(s₀, s)`; `s` has one slot per representative.
    fn contributions(&self, nu: u128, s: &mut Vec<f64>) -> f64 {
        s.clear();
        s.resize(self.reps + 1, 0.0);
        for &(mask, slot, h) in &self.terms {
            let parity = (mask & nu).count_ones() & 1;
            s[slot] += if parity == 1 { -h } else { h };
        }
        let s0 = self.identity + s[self.reps];
        s.truncate(self.reps);
        s0
    }

    fn e_minus(&self, nu: u128, buf: &mut Vec<f64>) -> f64 {
        let s0 = self.contributions(nu, buf);
        s0 - buf.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

fn check_nu(d: &Decomposition, nu: u128) -> Result<()> {
    let g = d.num_generators();
    if g < 128 && nu >> g != 0 {
        return Err(Error::LengthMismatch {
            expected: g,
            got: 128 - nu.leading_zeros() as usize,
        });
    }
    Ok(())
}

/// Symmetry contributions `s₀(ν)` and `s_i(ν)` with the sector energies.
pub fn sector_values(d: &Decomposition, nu: u128) -> Result<SectorValues> {
    check_nu(d, nu)?;
    let mut s = Vec::new();
    let s0 = SectorEvaluator::new(d).contributions(nu, &mut s);
    let norm_s = s.iter().map(|v| v * v).sum::<f64>().sqrt();
    Ok(SectorValues {
        nu,
        s0,
        s,
        norm_s,
        e_minus: s0 - norm_s,
        e_plus: s0 + norm_s,
    })
}

/// `(E₋, E₊) = s₀(ν) ∓ ‖s(ν)‖`.
pub fn sector_energies(d: &Decomposition, nu: u128) -> Result<(f64, f64)> {
    let v = sector_values(d, nu)?;
    Ok((v.e_minus, v.e_plus))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnnealConfig {
    pub seed: u64,
    pub sweeps: usize,
    pub restarts: usize,
}

impl Default for AnnealConfig {
    fn default() -> Self {
        AnnealConfig {
            seed: 0,
            sweeps: 500,
            restarts: 8,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SearchMode {
    Brute { cap: usize },
    Anneal(AnnealConfig),
}

impl Default for SearchMode {
    fn default() -> Self {
        SearchMode::Brute { cap: DEFAULT_BRUTE_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroundResult {
    pub nu: u128,
    pub energy: f64,
    /// True only for exhaustive search.
    pub certified: bool,
}

#[inline]
fn better(a: (f64, u128), b: (f64, u128)) -> bool {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).is_lt()
}

/// Minimizes `E₋(ν)` over sectors.
pub fn ground_search(d: &Decomposition, mode: SearchMode) -> Result<GroundResult> {
    let g = d.num_generators();
    let eval = SectorEvaluator::new(d);
    match mode {
        SearchMode::Brute { cap } => {
            if g > cap || g > 63 {
                return Err(Error::TooManySymmetries {
                    count: g,
                    cap: cap.min(63),
                });
            }
            let (energy, nu) = (0u64..(1u64 << g))
                .into_par_iter()
                .fold(
                    || ((f64::INFINITY, u128::MAX), Vec::new()),
                    |(best, mut buf), nu| {
                        let cand = (eval.e_minus(nu as u128, &mut buf), nu as u128);
                        (if better(cand, best) { cand } else { best }, buf)
                    },
                )
                .map(|(best, _)| best)
                .reduce(|| (f64::INFINITY, u128::MAX), |a, b| if better(a, b) { a } else { b });
            Ok(GroundResult {
                nu,
                energy,
                certified: true,
            })
        }
        SearchMode::Anneal(cfg) => Ok(anneal(&eval, g, cfg)),
    }
}

/// Single-flip Metropolis over sector bits with geometric cooling.
fn anneal(eval: &SectorEvaluator, g: usize, cfg: AnnealConfig) -> GroundResult {
    let mut buf = Vec::new();
    if g == 0 {
        return GroundResult {
            nu: 0,
            energy: eval.e_minus(0, &mut buf),
            certified: false,
        };
    }
    // A single flip changes the energy by at most 2 Σ|h|.
    let scale = eval.terms.iter().map(|t| t.2.abs()).sum::<f64>().max(1e-12);
    let (t_start, t_end) = (scale, 1e-6 * scale);
    let sweeps = cfg.sweeps.max(1);
    let cooling = if sweeps > 1 {
        (t_end / t_start).powf(1.0 / (sweeps - 1) as f64)
    } else {
        1.0
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let full = if g >= 128 { u128::MAX } else { (1u128 << g) - 1 };
    let mut best = (f64::INFINITY, u128::MAX);
    for _ in 0..cfg.restarts.max(1) {
        let mut nu = rng.gen::<u128>() & full;
        let mut e = eval.e_minus(nu, &mut buf);
        if better((e, nu), best) {
            best = (e, nu);
        }
        let mut temp = t_start;
        for _ in 0..sweeps {
            for _ in 0..g {
                let j = rng.gen_range(0..g);
                let cand = nu ^ (1u128 << j);
                let ec = eval.e_minus(cand, &mut buf);
                let de = ec - e;
                if de <= 0.0 || rng.gen::<f64>() < (-de / temp).exp() {
                    nu = cand;
                    e = ec;
                    if better((e, nu), best) {
                        best = (e, nu);
                    }
                }
            }
            temp *= cooling;
        }
    }
    GroundResult {
        nu: best.1,
        energy: best.0,
        certified: false,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub multiplicity: u128,
    /// Number of sectors contributing this eigenvalue.
    pub sectors: u128,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumSummary {
    pub n: usize,
    pub entries: Vec<SpectrumEntry>,
    pub block_dim: u128,
    /// `2^(⌈(|A|-1)/2⌉ - 1)` when `|A| ≥ 2`.
    pub divisor: Option<u128>,
    /// Whether every multiplicity is a multiple of `divisor`.
    pub divisible: bool,
}

impl SpectrumSummary {
    pub fn total_multiplicity(&self) -> u128 {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    /// Eigenvalues repeated by multiplicity, ascending.
    pub fn expanded(&self) -> Vec<f64> {
        self.entries
            .iter()
            .flat_map(|e| std::iter::repeat_n(e.lambda, e.multiplicity as usize))
            .collect()
    }

    /// `Σ m_λ λ^k / 2^n`.
    pub fn normalized_moment(&self, k: u32) -> f64 {
        let total = self.total_multiplicity() as f64;
        self.entries
            .iter()
            .map(|e| e.multiplicity as f64 * e.lambda.powi(k as i32))
            .sum::<f64>()
            / total
    }

    pub fn ground_energy(&self) -> f64 {
        self.entries[0].lambda
    }
}

/// `2^(⌈(|A|-1)/2⌉ - 1)` for `|A| ≥ 2`.
pub fn multiplicity_divisor(a_size: usize) -> Option<u128> {
    (a_size >= 2).then(|| 1u128 << ((a_size - 1).div_ceil(2) - 1))
}

/// Every eigenvalue with its multiplicity, enumerating all `2^|G|` sectors.
pub fn full_spectrum(d: &Decomposition, cap: usize, merge_tol: f64) -> Result<SpectrumSummary> {
    let n = d.num_qubits();
    let g = d.num_generators();
    if g > cap || g > 63 {
        return Err(Error::TooManySymmetries {
            count: g,
            cap: cap.min(63),
        });
    }
    if n - g >= 127 {
        return Err(Error::CapExceeded {
            what: "block dimension",
            needed: u128::MAX,
            cap: 1 << 126,
        });
    }
    let eval = SectorEvaluator::new(d);
    let a = d.num_reps();
    let block_dim = 1u128 << (n - g);
    let mut raw: Vec<(f64, u128, u128)> = (0u64..(1u64 << g))
        .into_par_iter()
        .flat_map_iter(|nu| {
            let nu = nu as u128;
            let mut s = Vec::new();
            let s0 = eval.contributions(nu, &mut s);
            if a == 0 {
                vec![(s0, block_dim, nu)]
            } else {
                let norm = s.iter().map(|v| v * v).sum::<f64>().sqrt();
                vec![(s0 - norm, block_dim / 2, nu), (s0 + norm, block_dim / 2, nu)]
            }
        })
        .collect();
    raw.sort_by(|x, y| x.0.total_cmp(&y.0).then(x.2.cmp(&y.2)));

    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut group_sectors: Vec<u128> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for (lambda, m, nu) in raw {
        let merge = entries.last().is_some() && lambda - last <= merge_tol;
        if merge {
            let e = entries.last_mut().expect("nonempty");
            e.multiplicity += m;
            group_sectors.push(nu);
        } else {
            if let Some(e) = entries.last_mut() {
                group_sectors.sort_unstable();
                group_sectors.dedup();
                e.sectors = group_sectors.len() as u128;
            }
            group_sectors.clear();
            group_sectors.push(nu);
            entries.push(SpectrumEntry {
                lambda,
                multiplicity: m,
                sectors: 0,
            });
        }
        last = lambda;
    }
    if let Some(e) = entries.last_mut() {
        group_sectors.sort_unstable();
        group_sectors.dedup();
        e.sectors = group_sectors.len() as u128;
    }
    let divisor = multiplicity_divisor(a);
    let divisible = divisor.is_none_or(|q| entries.iter().all(|e| e.multiplicity % q == 0));
    Ok(SpectrumSummary {
        n,
        entries,
        block_dim,
        divisor,
        divisible,
    })
}

/// `2^-|G| ∏_j (I + ν_j G_j)` expanded over all subsets of generators.
pub fn projector(nu: u128, generators: &[PauliOperator], n: usize, cap: usize) -> Result<PauliSum> {
    let g = generators.len();
    if g > cap || g > 63 {
        return Err(Error::CapExceeded {
            what: "projector words",
            needed: 1u128 << g.min(127),
            cap: 1u128 << cap.min(127),
        });
    }
    if g < 128 && nu >> g != 0 {
        return Err(Error::LengthMismatch {
            expected: g,
            got: 128 - nu.leading_zeros() as usize,
        });
    }
    for w in generators {
        if w.num_qubits() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: w.num_qubits(),
            });
        }
    }
    for (i, a) in generators.iter().enumerate() {
        for b in &generators[i + 1..] {
            if !a.commutes_unchecked(b) {
                return Err(Error::NotCommuting { a: *a, b: *b });
            }
        }
    }
    let scale = 0.5f64.powi(g as i32);
    let mut out = PauliSum::new(n);
    let mut cur = PauliOperator::identity(n);
    let mut sign = 1.0;
    for k in 0u64..(1u64 << g) {
        if k > 0 {
            let j = k.trailing_zeros() as usize;
            cur = cur.mul_unchecked(&generators[j]);
            sign *= nu_sign(nu, j);
        }
        out.add_term(cur, sign * scale)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::extract_generators;

    fn derived() -> Decomposition {
        extract_generators(&PauliSum::from_strs(&[(0.5, "ZZ"), (0.3, "XI"), (0.2, "XZ")]).unwrap()).unwrap()
    }

    fn zi() -> Decomposition {
        extract_generators(&PauliSum::from_strs(&[(1.0, "ZI")]).unwrap()).unwrap()
    }

    const R2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn sector_value_examples() {
        let d = extract_generators(&PauliSum::from_strs(&[(1.0, "Z")]).unwrap()).unwrap();
        assert_eq!(sector_values(&d, 0).unwrap().s0, 1.0);
        assert_eq!(sector_values(&d, 1).unwrap().s0, -1.0);
        let d = derived();
        let v = sector_values(&d, 0).unwrap();
        assert_eq!((v.s0, v.s.clone()), (0.0, vec![0.5, 0.5]));
        let v = sector_values(&d, 1).unwrap();
        assert_eq!(v.s[0], 0.5);
        assert!((v.s[1] - 0.1).abs() < 1e-15);
        assert!(matches!(sector_values(&d, 2), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn sector_energy_examples() {
        let d = derived();
        let (lo, hi) = sector_energies(&d, 0).unwrap();
        assert!((lo + R2).abs() < 1e-15 && (hi - R2).abs() < 1e-15);
        let (lo, hi) = sector_energies(&d, 1).unwrap();
        assert!((lo + 0.26f64.sqrt()).abs() < 1e-15 && (hi - 0.26f64.sqrt()).abs() < 1e-15);
        assert_eq!(sector_energies(&zi(), 1).unwrap(), (-1.0, -1.0));
    }

    #[test]
    fn ground_examples() {
        let r = ground_search(&derived(), SearchMode::default()).unwrap();
        assert_eq!(r.nu, 0);
        assert_eq!(r.energy, -std::f64::consts::FRAC_1_SQRT_2);
        assert!(r.certified);
        let r = ground_search(&zi(), SearchMode::default()).unwrap();
        assert_eq!((r.nu, r.energy), (1, -1.0));
        let r = ground_search(&derived(), SearchMode::Anneal(AnnealConfig::default())).unwrap();
        assert_eq!(r.nu, 0);
        assert!(!r.certified);
        assert!(matches!(
            ground_search(&derived(), SearchMode::Brute { cap: 0 }),
            Err(Error::TooManySymmetries { count: 1, cap: 0 })
        ));
    }

    #[test]
    fn spectrum_examples() {
        let s = full_spectrum(&derived(), DEFAULT_BRUTE_CAP, DEFAULT_MERGE_TOLERANCE).unwrap();
        let l: Vec<_> = s.entries.iter().map(|e| (e.lambda, e.multiplicity)).collect();
        let r = 0.26f64.sqrt();
        assert_eq!(l.len(), 4);
        for ((got, m), want) in l.iter().zip([-R2, -r, r, R2]) {
            assert!((got - want).abs() < 1e-15);
            assert_eq!(*m, 1);
        }
        let s = full_spectrum(&zi(), DEFAULT_BRUTE_CAP, DEFAULT_MERGE_TOLERANCE).unwrap();
        let l: Vec<_> = s
            .entries
            .iter()
            .map(|e| (e.lambda, e.multiplicity, e.sectors))
            .collect();
        assert_eq!(l, vec![(-1.0, 2, 1), (1.0, 2, 1)]);
        assert_eq!(s.total_multiplicity(), 4);
    }

    #[test]
    fn degenerate_sectors_merge() {
        // ZI + IZ on two qubits: sector energies 2, 0, 0, -2
        let d = extract_generators(&PauliSum::from_strs(&[(1.0, "ZI"), (1.0, "IZ")]).unwrap()).unwrap();
        let s = full_spectrum(&d, DEFAULT_BRUTE_CAP, DEFAULT_MERGE_TOLERANCE).unwrap();
        let l: Vec<_> = s
            .entries
            .iter()
            .map(|e| (e.lambda, e.multiplicity, e.sectors))
            .collect();
        assert_eq!(l, vec![(-2.0, 1, 1), (0.0, 2, 2), (2.0, 1, 1)]);
    }

    #[test]
    fn divisor_values() {
        assert_eq!(multiplicity_divisor(0), None);
        assert_eq!(multiplicity_divisor(1), None);
        assert_eq!(multiplicity_divisor(2), Some(1));
        assert_eq!(multiplicity_divisor(3), Some(1));
        assert_eq!(multiplicity_divisor(4), Some(2));
        assert_eq!(multiplicity_divisor(5), Some(2));
        assert_eq!(multiplicity_divisor(9), Some(8));
    }

    #[test]
    fn projector_examples() {
        let z: PauliOperator = "Z".parse().unwrap();
        let p = projector(0, &[z], 1, DEFAULT_PROJECTOR_CAP).unwrap();
        assert_eq!(p, PauliSum::from_strs(&[(0.5, "I"), (0.5, "Z")]).unwrap());
        let iz: PauliOperator = "IZ".parse().unwrap();
        let p = projector(1, &[iz], 2, DEFAULT_PROJECTOR_CAP).unwrap();
        assert_eq!(p, PauliSum::from_strs(&[(0.5, "II"), (-0.5, "IZ")]).unwrap());
        let sq = p.to_operator_sum().mul(&p.to_operator_sum()).unwrap();
        assert!(sq.max_abs_diff(&p.to_operator_sum()) < 1e-15);

        let gens: Vec<PauliOperator> = ["ZZI", "XXX"].iter().map(|s| s.parse().unwrap()).collect();
        let mut total = PauliSum::new(3);
        for nu in 0..4 {
            total = total
                .add(&projector(nu, &gens, 3, DEFAULT_PROJECTOR_CAP).unwrap())
                .unwrap();
        }
        assert_eq!(total, PauliSum::from_strs(&[(1.0, "III")]).unwrap());
        assert!(projector(0, &gens, 3, 1).is_err());
        let bad: Vec<PauliOperator> = ["ZZI", "IXX"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(matches!(projector(0, &bad, 3, 4), Err(Error::NotCommuting { .. })));
    }

    #[test]
    fn sign_packing() {
        assert_eq!(nu_from_signs(&[1, -1, -1]).unwrap(), 0b110);
        assert_eq!(nu_to_signs(0b110, 3), vec![1, -1, -1]);
        assert!(nu_from_signs(&[0]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn spectrum_invariants(seed in proptest::prelude::any::<u64>(), n in 1usize..9) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let h = crate::gen::random_noncontextual(&mut rng, n, 30).unwrap();
            let d = extract_generators(&h).unwrap();
            let s = full_spectrum(&d, DEFAULT_BRUTE_CAP, DEFAULT_MERGE_TOLERANCE).unwrap();
            proptest::prop_assert_eq!(s.total_multiplicity(), 1u128 << n);
            proptest::prop_assert!(s.divisible);
            proptest::prop_assert!(s.entries.windows(2).all(|w| w[0].lambda < w[1].lambda));
            for nu in 0..1u128 << d.num_generators() {
                let v = sector_values(&d, nu).unwrap();
                proptest::prop_assert!(v.e_minus <= v.s0 && v.s0 <= v.e_plus);
            }
            let g = ground_search(&d, SearchMode::default()).unwrap();
            proptest::prop_assert_eq!(g.energy, s.entries[0].lambda);
        }
    }
}
