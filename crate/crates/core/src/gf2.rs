//! GF(2) elimination over symplectic vectors.
//!
//! Columns are ordered qubit-major with the `x` bit before the `z` bit, so
//! column `2q` is `x_q` and column `2q + 1` is `z_q`. The basis is kept in
//! reduced row-echelon form: pivots strictly increase and every pivot column
//! is clear in all other rows.

use crate::pauli::PauliOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticVec {
    pub x: u128,
    pub z: u128,
}

impl SymplecticVec {
    pub fn of(op: &PauliOperator) -> Self {
        SymplecticVec {
            x: op.x_mask(),
            z: op.z_mask(),
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    #[inline]
    pub fn xor(&self, other: &Self) -> Self {
        SymplecticVec {
            x: self.x ^ other.x,
            z: self.z ^ other.z,
        }
    }

    /// Leading column, or `None` for the zero vector.
    pub fn pivot(&self) -> Option<usize> {
        let s = self.x | self.z;
        if s == 0 {
            return None;
        }
        let q = s.trailing_zeros() as usize;
        Some(2 * q + if (self.x >> q) & 1 == 1 { 0 } else { 1 })
    }

    #[inline]
    pub fn bit(&self, col: usize) -> bool {
        let q = col / 2;
        let m = if col.is_multiple_of(2) { self.x } else { self.z };
        (m >> q) & 1 == 1
    }

    pub fn to_word(&self, n: usize) -> PauliOperator {
        PauliOperator::word(n, self.x, self.z)
    }
}

#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, SymplecticVec)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SymplecticVec> + '_ {
        self.rows.iter().map(|(_, v)| v)
    }

    /// Reduces `v` against the basis, returning the remainder and the bitmask
    /// of rows (in current order) that were added.
    pub fn reduce(&self, v: SymplecticVec) -> (SymplecticVec, u128) {
        let mut r = v;
        let mut used = 0u128;
        for (i, (p, row)) in self.rows.iter().enumerate() {
            if r.bit(*p) {
                r = r.xor(row);
                used |= 1u128 << i;
            }
        }
        (r, used)
    }

    pub fn contains(&self, v: SymplecticVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`, keeping the basis fully reduced. Returns false when `v`
    /// already lies in the span.
    pub fn insert(&mut self, v: SymplecticVec) -> bool {
        let (r, _) = self.reduce(v);
        let Some(p) = r.pivot() else {
            return false;
        };
        for (_, row) in self.rows.iter_mut() {
            if row.bit(p) {
                *row = row.xor(&r);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, r));
        true
    }
}

/// True when the words are GF(2)-independent as symplectic vectors.
pub fn independent<'a, I>(words: I) -> bool
where
    I: IntoIterator<Item = &'a PauliOperator>,
{
    let mut basis = EchelonBasis::new();
    words.into_iter().all(|w| basis.insert(SymplecticVec::of(w)))
}

/// Rank of the span of the given words.
pub fn rank<'a, I>(words: I) -> usize
where
    I: IntoIterator<Item = &'a PauliOperator>,
{
    let mut basis = EchelonBasis::new();
    for w in words {
        basis.insert(SymplecticVec::of(w));
    }
    basis.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> SymplecticVec {
        SymplecticVec::of(&s.parse().unwrap())
    }

    #[test]
    fn rref_shape() {
        let mut b = EchelonBasis::new();
        assert!(b.insert(v("ZZ")));
        assert!(b.insert(v("IZ")));
        assert!(!b.insert(v("ZI")));
        let rows: Vec<_> = b.rows().map(|r| r.to_word(2).to_string()).collect();
        assert_eq!(rows, ["ZI", "IZ"]);
    }

    #[test]
    fn pivot_order() {
        assert_eq!(v("XI").pivot(), Some(0));
        assert_eq!(v("ZI").pivot(), Some(1));
        assert_eq!(v("YI").pivot(), Some(0));
        assert_eq!(v("IZ").pivot(), Some(3));
        assert_eq!(v("II").pivot(), None);
    }

    proptest! {
        #[test]
        fn reduce_reconstructs(vs in proptest::collection::vec((0u128..64, 0u128..64), 1..10), t in (0u128..64, 0u128..64)) {
            let mut b = EchelonBasis::new();
            for (x, z) in &vs {
                b.insert(SymplecticVec { x: *x, z: *z });
            }
            // pivots strictly increasing and reduced
            let rows: Vec<_> = b.rows.clone();
            for w in rows.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for (i, (p, _)) in rows.iter().enumerate() {
                for (j, (_, r)) in rows.iter().enumerate() {
                    if i != j {
                        prop_assert!(!r.bit(*p));
                    }
                }
            }
            let target = SymplecticVec { x: t.0, z: t.1 };
            let (rem, used) = b.reduce(target);
            let mut acc = rem;
            for (i, (_, r)) in rows.iter().enumerate() {
                if used >> i & 1 == 1 {
                    acc = acc.xor(r);
                }
            }
            prop_assert_eq!(acc, target);
        }
    }
}
