//! Compatibility graphs, the noncontextuality test, and the extraction of
//! symmetry generators `G` and clique representatives `A`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf2::{EchelonBasis, SymplecticVec};
use crate::pauli::PauliOperator;
use crate::sum::PauliSum;

/// Default cap on the number of words produced by [`enumerate_closure`].
pub const DEFAULT_CLOSURE_CAP: u128 = 1 << 22;

/// Graph on Pauli words with an edge between every commuting pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityGraph {
    vertices: Vec<PauliOperator>,
    adjacency: Vec<Vec<bool>>,
}

impl CompatibilityGraph {
    pub fn from_words(words: Vec<PauliOperator>) -> Self {
        let adjacency: Vec<Vec<bool>> = words
            .par_iter()
            .enumerate()
            .map(|(i, a)| {
                words
                    .iter()
                    .enumerate()
                    .map(|(j, b)| i != j && a.commutes_unchecked(b))
                    .collect()
            })
            .collect();
        CompatibilityGraph {
            vertices: words,
            adjacency,
        }
    }

    pub fn vertices(&self) -> &[PauliOperator] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i][j]
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|r| r.iter().filter(|b| **b).count())
            .sum::<usize>()
            / 2
    }

    /// Indices of vertices adjacent to every other vertex.
    pub fn universal_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| i == j || self.adjacency[i][j]))
            .collect()
    }

    fn non_universal_indices(&self) -> Vec<usize> {
        let z: BTreeSet<usize> = self.universal_indices().into_iter().collect();
        (0..self.len()).filter(|i| !z.contains(i)).collect()
    }

    /// Groups `T = V \ Z` into commuting components and checks that each is a
    /// clique. Returns index cliques, or a violating triple.
    fn clique_components(&self) -> std::result::Result<Vec<Vec<usize>>, (usize, usize, usize)> {
        let t = self.non_universal_indices();
        let mut cliques: Vec<Vec<usize>> = Vec::new();
        let mut assigned = vec![false; self.len()];
        for &v in &t {
            if assigned[v] {
                continue;
            }
            // Commuting neighbourhood of v inside T, plus v itself.
            let mut members = vec![v];
            members.extend(t.iter().copied().filter(|&u| u != v && self.adjacency[v][u]));
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    if !self.adjacency[a][b] {
                        return Err((a, v, b));
                    }
                }
            }
            for &m in &members {
                if assigned[m] {
                    // m already sits in an earlier clique that did not contain v
                    let owner = cliques.iter().find(|c| c.contains(&m)).expect("assigned");
                    let other = owner.iter().copied().find(|&o| o != m && !self.adjacency[o][v]);
                    return Err((other.unwrap_or(m), m, v));
                }
                assigned[m] = true;
            }
            for &m in &members {
                if let Some(&u) = t
                    .iter()
                    .find(|&&u| u != m && self.adjacency[m][u] && !members.contains(&u))
                {
                    return Err((v, m, u));
                }
            }
            cliques.push(members);
        }
        Ok(cliques)
    }

    /// Clique-based test: `T` splits into disjoint cliques without cross edges.
    pub fn clique_test(&self) -> bool {
        self.clique_components().is_ok()
    }

    /// Anti-compatibility test: the anticommutation graph on `T` is complete
    /// multipartite. Vertices are grouped by identical anticommuting
    /// neighbourhoods; each group must be internally commuting and every pair
    /// of groups must be fully anticommuting.
    pub fn multipartite_test(&self) -> bool {
        let t = self.non_universal_indices();
        let neighbourhood = |v: usize| -> Vec<bool> { t.iter().map(|&u| u != v && !self.adjacency[v][u]).collect() };
        let mut groups: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        for &v in &t {
            let nb = neighbourhood(v);
            match groups.iter_mut().find(|(k, _)| *k == nb) {
                Some((_, g)) => g.push(v),
                None => groups.push((nb, vec![v])),
            }
        }
        for (gi, (_, ga)) in groups.iter().enumerate() {
            for (i, &a) in ga.iter().enumerate() {
                if ga[i + 1..].iter().any(|&b| !self.adjacency[a][b]) {
                    return false;
                }
            }
            for (_, gb) in &groups[gi + 1..] {
                if ga.iter().any(|&a| gb.iter().any(|&b| self.adjacency[a][b])) {
                    return false;
                }
            }
        }
        true
    }

    /// A triple `(a, b, c)` in `T` with `[a,b] = [b,c] = 0` but `{a,c} = 0`.
    pub fn contextual_witness(&self) -> Option<(PauliOperator, PauliOperator, PauliOperator)> {
        let t = self.non_universal_indices();
        for &b in &t {
            for &a in &t {
                if a == b || !self.adjacency[a][b] {
                    continue;
                }
                for &c in &t {
                    if c != a && c != b && self.adjacency[b][c] && !self.adjacency[a][c] {
                        return Some((self.vertices[a], self.vertices[b], self.vertices[c]));
                    }
                }
            }
        }
        None
    }

    /// DOT rendering: universally commuting vertices are tagged, and each
    /// clique of a noncontextual set gets its own cluster.
    pub fn to_dot(&self) -> String {
        let universal: BTreeSet<usize> = self.universal_indices().into_iter().collect();
        let mut s = String::from("graph compatibility {\n  node [shape=ellipse];\n");
        for &i in &universal {
            let _ = writeln!(
                s,
                "  v{i} [label=\"{}\", universal=true, shape=box, style=filled, fillcolor=lightgrey];",
                self.vertices[i].word_string()
            );
        }
        match self.clique_components() {
            Ok(cliques) => {
                for (k, c) in sorted_cliques(self, cliques).iter().enumerate() {
                    let _ = writeln!(s, "  subgraph cluster_{k} {{\n    label=\"clique {k}\";");
                    for &i in c {
                        let _ = writeln!(s, "    v{i} [label=\"{}\"];", self.vertices[i].word_string());
                    }
                    s.push_str("  }\n");
                }
            }
            Err(_) => {
                for i in (0..self.len()).filter(|i| !universal.contains(i)) {
                    let _ = writeln!(s, "  v{i} [label=\"{}\"];", self.vertices[i].word_string());
                }
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i][j] {
                    let _ = writeln!(s, "  v{i} -- v{j};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn sorted_cliques(g: &CompatibilityGraph, cliques: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut cliques: Vec<Vec<usize>> = cliques
        .into_iter()
        .map(|mut c| {
            c.sort_by(|a, b| g.vertices[*a].cmp(&g.vertices[*b]));
            c
        })
        .collect();
    cliques.sort_by(|a, b| g.vertices[a[0]].cmp(&g.vertices[b[0]]));
    cliques
}

/// Compatibility graph over the support of `h`, in canonical term order.
pub fn build_graph(h: &PauliSum) -> CompatibilityGraph {
    CompatibilityGraph::from_words(h.words().copied().collect())
}

/// Words adjacent to every other vertex.
pub fn universally_commuting(g: &CompatibilityGraph) -> Vec<PauliOperator> {
    g.universal_indices().into_iter().map(|i| g.vertices[i]).collect()
}

/// Decides noncontextuality of the support of `h`.
pub fn is_noncontextual(h: &PauliSum) -> bool {
    let g = build_graph(h);
    let verdict = g.clique_test();
    debug_assert_eq!(verdict, g.multipartite_test(), "clique and multipartite tests disagree");
    verdict
}

/// Partitions `V \ z` into cliques, each sorted, ordered by smallest member.
pub fn clique_partition(g: &CompatibilityGraph, z: &[PauliOperator]) -> Result<Vec<Vec<PauliOperator>>> {
    let expected = universally_commuting(g);
    if expected.len() != z.len() || expected.iter().any(|w| !z.contains(w)) {
        return Err(Error::BoundViolation(
            "z must be the universally commuting set of the graph".into(),
        ));
    }
    match g.clique_components() {
        Ok(c) => Ok(sorted_cliques(g, c)
            .into_iter()
            .map(|c| c.into_iter().map(|i| g.vertices[i]).collect())
            .collect()),
        Err(_) => {
            let (a, b, c) = g.contextual_witness().expect("failed clique test has a witness");
            Err(Error::ContextualSet { a, b, c })
        }
    }
}

/// Factorization of a single term over `G ∪ A`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Factor {
    /// Bit `j` selects generator `G_j`.
    pub g_mask: u128,
    /// Clique representative index, if the term lies outside the span of `G`.
    pub clique: Option<usize>,
    /// `word = sign · (∏ G_j) · C_i`.
    pub sign: f64,
}

/// One Hamiltonian term with its factorization and folded coefficient `h_P^(i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TermFactor {
    pub word: PauliOperator,
    pub coeff: f64,
    pub factor: Factor,
    /// `coeff · sign`.
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    n: usize,
    pub identity_coeff: f64,
    pub z_set: Vec<PauliOperator>,
    pub cliques: Vec<Vec<PauliOperator>>,
    pub g_generators: Vec<PauliOperator>,
    pub a_reps: Vec<PauliOperator>,
    pub factorization: Vec<TermFactor>,
}

impl Decomposition {
    /// Assembles a decomposition directly from generators and representatives,
    /// with no terms. Used for closure enumeration and bounds.
    pub fn from_generators(n: usize, g: Vec<PauliOperator>, a: Vec<PauliOperator>) -> Result<Self> {
        for w in g.iter().chain(&a) {
            if w.num_qubits() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: w.num_qubits(),
                });
            }
        }
        if g.len() > 128 {
            return Err(Error::CapExceeded {
                what: "symmetry generators",
                needed: g.len() as u128,
                cap: 128,
            });
        }
        let mut basis = EchelonBasis::new();
        for w in &g {
            if !basis.insert(SymplecticVec::of(w)) {
                return Err(Error::DependentGenerators);
            }
        }
        for (i, gi) in g.iter().enumerate() {
            for gj in &g[i + 1..] {
                if !gi.commutes_unchecked(gj) {
                    return Err(Error::NotCommuting { a: *gi, b: *gj });
                }
            }
            for c in &a {
                if !gi.commutes_unchecked(c) {
                    return Err(Error::NotCommuting { a: *gi, b: *c });
                }
            }
        }
        for (i, ci) in a.iter().enumerate() {
            for cj in &a[i + 1..] {
                if ci.commutes_unchecked(cj) {
                    return Err(Error::NotAnticommuting { a: *ci, b: *cj });
                }
            }
        }
        Ok(Decomposition {
            n,
            identity_coeff: 0.0,
            z_set: Vec::new(),
            cliques: a.iter().map(|c| vec![*c]).collect(),
            g_generators: g.iter().map(|w| w.unsigned()).collect(),
            a_reps: a.iter().map(|w| w.unsigned()).collect(),
            factorization: Vec::new(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.g_generators.len()
    }

    pub fn num_reps(&self) -> usize {
        self.a_reps.len()
    }

    /// Ordered product of the generators selected by `mask`.
    pub fn g_product(&self, mask: u128) -> PauliOperator {
        let mut acc = PauliOperator::identity(self.n);
        for (j, g) in self.g_generators.iter().enumerate() {
            if (mask >> j) & 1 == 1 {
                acc = acc.mul_unchecked(g);
            }
        }
        acc
    }

    /// True when `G ∪ A` is GF(2)-independent.
    pub fn is_independent(&self) -> bool {
        crate::gf2::independent(self.g_generators.iter().chain(&self.a_reps))
    }

    /// Rebuilds the source Hamiltonian from the factorization table.
    pub fn reconstruct(&self) -> PauliSum {
        let mut h = PauliSum::new(self.n);
        if self.identity_coeff != 0.0 {
            h.add_term(PauliOperator::identity(self.n), self.identity_coeff)
                .expect("identity");
        }
        for t in &self.factorization {
            let mut p = self.g_product(t.factor.g_mask);
            if let Some(i) = t.factor.clique {
                p = p.mul_unchecked(&self.a_reps[i]);
            }
            h.add_term(p, t.h).expect("factor product is Hermitian");
        }
        h
    }
}

/// Splits `h` into universally commuting words, cliques, generators and
/// representatives, and factorizes every term.
pub fn extract_generators(h: &PauliSum) -> Result<Decomposition> {
    let n = h.num_qubits();
    let words: Vec<PauliOperator> = h.words().copied().filter(|w| !w.is_identity_word()).collect();
    let g = CompatibilityGraph::from_words(words);
    let z = universally_commuting(&g);
    let cliques = clique_partition(&g, &z)?;
    let a_reps: Vec<PauliOperator> = cliques.iter().map(|c| c[0]).collect();

    let mut basis = EchelonBasis::new();
    for w in &z {
        basis.insert(SymplecticVec::of(w));
    }
    for (c, rep) in cliques.iter().zip(&a_reps) {
        for q in &c[1..] {
            basis.insert(SymplecticVec::of(&q.mul_unchecked(rep)));
        }
    }
    if basis.len() > 128 {
        return Err(Error::CapExceeded {
            what: "symmetry generators",
            needed: basis.len() as u128,
            cap: 128,
        });
    }
    let g_generators: Vec<PauliOperator> = basis.rows().map(|r| r.to_word(n)).collect();

    let mut d = Decomposition {
        n,
        identity_coeff: h.identity_coeff(),
        z_set: z,
        cliques,
        g_generators,
        a_reps,
        factorization: Vec::with_capacity(h.len()),
    };
    for (w, c) in h.iter() {
        if w.is_identity_word() {
            continue;
        }
        let factor = factorize_term(w, &d)?;
        d.factorization.push(TermFactor {
            word: *w,
            coeff: c,
            factor,
            h: c * factor.sign,
        });
    }
    Ok(d)
}

/// Expresses `p` as `± (∏_{mask} G_j) · C_i` by GF(2) elimination.
pub fn factorize_term(p: &PauliOperator, d: &Decomposition) -> Result<Factor> {
    if p.num_qubits() != d.n {
        return Err(Error::DimensionMismatch {
            left: d.n,
            right: p.num_qubits(),
        });
    }
    let target = SymplecticVec::of(p);
    let solve = |v: SymplecticVec| -> Option<u128> {
        let mut r = v;
        let mut mask = 0u128;
        for (j, g) in d.g_generators.iter().enumerate() {
            let gv = SymplecticVec::of(g);
            let pivot = gv.pivot().expect("generators are nonzero");
            if r.bit(pivot) {
                r = r.xor(&gv);
                mask |= 1u128 << j;
            }
        }
        r.is_zero().then_some(mask)
    };
    let found = solve(target).map(|m| (m, None)).or_else(|| {
        d.a_reps
            .iter()
            .enumerate()
            .find_map(|(i, c)| solve(target.xor(&SymplecticVec::of(c))).map(|m| (m, Some(i))))
    });
    let (g_mask, clique) = found.ok_or(Error::NotGenerated(*p))?;
    let mut prod = d.g_product(g_mask);
    if let Some(i) = clique {
        prod = prod.mul_unchecked(&d.a_reps[i]);
    }
    // prod = i^k W(p); p = i^m W(p)  =>  p = i^{m-k} prod
    let rel = (p.phase_exp() + 4 - prod.phase_exp()) & 3;
    let sign = match rel {
        0 => 1.0,
        2 => -1.0,
        // an imaginary ratio means an anticommuting pair was multiplied,
        // which the Jordan product never produces
        _ => return Err(Error::NotGenerated(*p)),
    };
    Ok(Factor { g_mask, clique, sign })
}

/// All distinct words `∏ S` and `∏ S · C_i` for subsets `S ⊆ G`.
pub fn enumerate_closure(d: &Decomposition, cap: u128) -> Result<BTreeSet<PauliOperator>> {
    let g = d.g_generators.len();
    if g >= 120 {
        return Err(Error::CapExceeded {
            what: "closure words",
            needed: u128::MAX,
            cap,
        });
    }
    let needed = (1u128 << g) * (1 + d.a_reps.len() as u128);
    if needed > cap {
        return Err(Error::CapExceeded {
            what: "closure words",
            needed,
            cap,
        });
    }
    let mut out = BTreeSet::new();
    // Gray-code walk over subsets of G
    let mut cur = PauliOperator::identity(d.n);
    for k in 0u128..(1u128 << g) {
        if k > 0 {
            let j = k.trailing_zeros() as usize;
            cur = cur.mul_unchecked(&d.g_generators[j]);
        }
        out.insert(cur.unsigned());
        for c in &d.a_reps {
            out.insert(cur.mul_unchecked(c).unsigned());
        }
    }
    Ok(out)
}

/// `2(m) + 1`: the largest pairwise-anticommuting Pauli set on `m` qubits.
pub fn max_anticommuting_size(m: usize) -> usize {
    2 * m + 1
}

/// `2^|G| (1 + |A|)`.
pub fn max_support_bound(g_size: usize, a_size: usize, n: usize) -> Result<u128> {
    if g_size > n {
        return Err(Error::BoundViolation(format!("|G| = {g_size} exceeds n = {n}")));
    }
    if a_size > max_anticommuting_size(n - g_size) {
        return Err(Error::BoundViolation(format!(
            "|A| = {a_size} exceeds 2(n - |G|) + 1 = {}",
            max_anticommuting_size(n - g_size)
        )));
    }
    if g_size >= 120 {
        return Err(Error::BoundViolation(format!(
            "|G| = {g_size} overflows the bound arithmetic"
        )));
    }
    Ok((1u128 << g_size) * (1 + a_size as u128))
}

/// Comparison of a support bound with `2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundFlag {
    Greater,
    Equal,
    Less,
}

impl BoundFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundFlag::Greater => "Y",
            BoundFlag::Equal => "EQUAL",
            BoundFlag::Less => "N",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub g_size: usize,
    pub a_size: usize,
    pub max_terms: u128,
    pub flag: BoundFlag,
}

/// Rows for `|G| ∈ {n, n-1, n-2, n-3}` and `|A| ∈ {0} ∪ [2, 2(n-|G|)+1]`.
pub fn table_of_bounds(n: usize) -> Result<Vec<BoundRow>> {
    if n == 0 || n >= 120 {
        return Err(Error::BoundViolation(format!("n = {n} outside 1..120")));
    }
    let full = 1u128 << n;
    let mut rows = Vec::new();
    for deficit in 0..=3usize.min(n) {
        let g_size = n - deficit;
        let sizes = std::iter::once(0).chain(2..=max_anticommuting_size(deficit));
        for a_size in sizes {
            let max_terms = max_support_bound(g_size, a_size, n)?;
            let flag = match max_terms.cmp(&full) {
                std::cmp::Ordering::Greater => BoundFlag::Greater,
                std::cmp::Ordering::Equal => BoundFlag::Equal,
                std::cmp::Ordering::Less => BoundFlag::Less,
            };
            rows.push(BoundRow {
                g_size,
                a_size,
                max_terms,
                flag,
            });
        }
    }
    Ok(rows)
}
