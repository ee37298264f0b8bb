//! Exact rational linear algebra over sparse coefficient vectors.
//!
//! Every "space of expansions" in this crate is represented as an
//! [`EchelonBasis`]: the reduced row-echelon form of a spanning set, taken
//! with respect to the `Ord` of the index type. Keys are compared with their
//! natural order, so callers choose the column order by choosing the key
//! type (`(n, r)` tuples for Jacobi coefficients, `(m, n, r)` for Siegel
//! coefficients, `(m, i)` for Fourier-Jacobi coordinates).
//!
//! The reduced row-echelon form of a row space is unique, so the output of
//! [`echelonize`] depends only on the span of its input, never on the order
//! in which rows arrive.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integral rational.
pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Sparse vector of rationals indexed by an ordered key. Zero entries are
/// never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoeffVector<K: Ord> {
    entries: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for CoeffVector<K> {
    fn default() -> Self {
        Self {
            entries: BTreeMap::new(),
        }
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for CoeffVector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(k, v)| (k, v.to_string())))
            .finish()
    }
}

impl<K: Ord + Clone> CoeffVector<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Unit vector `e_key`.
    pub fn unit(key: K) -> Self {
        let mut v = Self::new();
        v.entries.insert(key, Rational::one());
        v
    }

    pub fn get(&self, key: &K) -> Option<&Rational> {
        self.entries.get(key)
    }

    /// Entry at `key`, zero when absent.
    pub fn coeff(&self, key: &K) -> Rational {
        self.entries.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, key: K, value: Rational) {
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    /// `self[key] += value`.
    pub fn add_at(&mut self, key: K, value: &Rational) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry(key) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(value.clone());
            }
            btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: &Rational, other: &Self) {
        if factor.is_zero() {
            return;
        }
        for (key, value) in &other.entries {
            self.add_at(key.clone(), &(factor * value));
        }
    }

    pub fn scale(&mut self, factor: &Rational) {
        if factor.is_zero() {
            self.entries.clear();
            return;
        }
        for value in self.entries.values_mut() {
            *value *= factor;
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        out.scale(factor);
        out
    }

    pub fn dot(&self, other: &Self) -> Rational {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .filter_map(|(k, v)| large.entries.get(k).map(|w| v * w))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// First nonzero entry in key order.
    pub fn leading(&self) -> Option<(&K, &Rational)> {
        self.entries.iter().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.entries.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.entries.keys()
    }

    /// Keeps only the entries whose key satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Re-keys every entry through `f`; entries landing on the same key add up.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> CoeffVector<L> {
        let mut out = CoeffVector::new();
        for (k, v) in &self.entries {
            out.add_at(f(k), v);
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for CoeffVector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, v) in iter {
            out.add_at(k, &v);
        }
        out
    }
}

/// Reduced row-echelon basis of a row space.
///
/// Rows are sorted by pivot, every pivot entry is one, and every pivot
/// column vanishes in all other rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonBasis<K: Ord> {
    rows: Vec<CoeffVector<K>>,
    pivots: Vec<K>,
}

impl<K: Ord> Default for EchelonBasis<K> {
    fn default() -> Self {
        Self {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }
}

/// Outcome of reducing a vector against an [`EchelonBasis`].
#[derive(Clone, Debug)]
pub struct Reduction<K: Ord> {
    /// Coefficient of each basis row, in basis order.
    pub witness: Vec<Rational>,
    /// `v - sum(witness[i] * rows[i])`; zero exactly when `v` is in the span.
    pub residual: CoeffVector<K>,
}

impl<K: Ord + Clone> Reduction<K> {
    pub fn is_member(&self) -> bool {
        self.residual.is_zero()
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[CoeffVector<K>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[K] {
        &self.pivots
    }

    pub fn into_rows(self) -> Vec<CoeffVector<K>> {
        self.rows
    }

    /// Splits `v` into its component in the span and a residual supported
    /// off the pivot columns.
    pub fn reduce(&self, v: &CoeffVector<K>) -> Reduction<K> {
        let mut residual = v.clone();
        let mut witness = Vec::with_capacity(self.rows.len());
        for (pivot, row) in self.pivots.iter().zip(&self.rows) {
            // Rows vanish on each other's pivots, so the pivot entry of the
            // original vector is the coefficient of this row.
            let c = v.coeff(pivot);
            residual.add_scaled(&-c.clone(), row);
            witness.push(c);
        }
        Reduction { witness, residual }
    }

    pub fn contains(&self, v: &CoeffVector<K>) -> bool {
        self.reduce(v).is_member()
    }

    /// Builds a basis from rows that are already in reduced row-echelon
    /// form, e.g. after deserialization. Returns `None` if they are not.
    pub fn from_reduced_rows(rows: Vec<CoeffVector<K>>) -> Option<Self> {
        let mut pivots = Vec::with_capacity(rows.len());
        for row in &rows {
            let (pivot, value) = row.leading()?;
            if !value.is_one() {
                return None;
            }
            if pivots.last().is_some_and(|last| last >= pivot) {
                return None;
            }
            pivots.push(pivot.clone());
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, pivot) in pivots.iter().enumerate() {
                if i != j && row.get(pivot).is_some() {
                    return None;
                }
            }
        }
        Some(Self { rows, pivots })
    }
}

/// Reduced row-echelon basis of the span of `rows`.
///
/// Pivots are the first nonzero entry in key order; the result is the
/// unique RREF of the row space and therefore independent of input order.
pub fn echelonize<K, I>(rows: I) -> EchelonBasis<K>
where
    K: Ord + Clone,
    I: IntoIterator<Item = CoeffVector<K>>,
{
    let mut basis: BTreeMap<K, CoeffVector<K>> = BTreeMap::new();
    for mut row in rows {
        let hits: Vec<K> = row
            .keys()
            .filter(|k| basis.contains_key(*k))
            .cloned()
            .collect();
        for pivot in hits {
            // Subtracting a reduced row never creates entries on other pivots.
            let c = row.coeff(&pivot);
            row.add_scaled(&-c, &basis[&pivot]);
        }
        let Some((pivot, lead)) = row.leading() else {
            continue;
        };
        let pivot = pivot.clone();
        let inv = lead.recip();
        row.scale(&inv);
        for other in basis.values_mut() {
            let c = other.coeff(&pivot);
            if !c.is_zero() {
                other.add_scaled(&-c, &row);
            }
        }
        basis.insert(pivot, row);
    }
    let (pivots, rows) = basis.into_iter().unzip();
    EchelonBasis { rows, pivots }
}

/// Echelonized basis of `{x : row . x = 0 for every row}` over the given
/// unknowns.
pub fn nullspace<K: Ord + Clone>(rows: &[CoeffVector<K>], unknowns: &[K]) -> EchelonBasis<K> {
    let reduced = echelonize(rows.iter().cloned());
    let mut generators = Vec::new();
    for free in unknowns {
        if reduced.pivots.binary_search(free).is_ok() {
            continue;
        }
        let mut v = CoeffVector::unit(free.clone());
        for (pivot, row) in reduced.pivots.iter().zip(&reduced.rows) {
            let c = row.coeff(free);
            if !c.is_zero() {
                v.set(pivot.clone(), -c);
            }
        }
        generators.push(v);
    }
    echelonize(generators)
}

/// Membership test. Returns the combination coefficients when `v` lies in
/// the row space of `basis`.
pub fn in_rowspace<K: Ord + Clone>(v: &CoeffVector<K>, basis: &EchelonBasis<K>) -> Option<Vec<Rational>> {
    let reduction = basis.reduce(v);
    reduction.is_member().then_some(reduction.witness)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(&'static str, i64)]) -> CoeffVector<&'static str> {
        entries.iter().map(|&(k, x)| (k, rat(x))).collect()
    }

    #[test]
    fn dependent_pair_collapses() {
        let basis = echelonize(vec![v(&[("a", 1), ("b", 2)]), v(&[("a", 2), ("b", 4)])]);
        assert_eq!(basis.rank(), 1);
        assert_eq!(basis.rows()[0], v(&[("a", 1), ("b", 2)]));
    }

    #[test]
    fn empty_input() {
        let basis: EchelonBasis<&str> = echelonize(Vec::new());
        assert_eq!(basis.rank(), 0);
        assert!(basis.is_empty());
    }

    #[test]
    fn zero_entries_are_not_stored() {
        let mut x = v(&[("a", 1)]);
        x.add_at("a", &rat(-1));
        assert!(x.is_zero());
        x.set("b", rat(0));
        assert!(x.is_empty());
    }

    #[test]
    fn rref_is_canonical() {
        let rows = vec![v(&[("b", 3), ("c", 1)]), v(&[("a", 2), ("b", 1)]), v(&[("a", 1), ("c", 5)])];
        let forward = echelonize(rows.clone());
        let backward = echelonize(rows.into_iter().rev());
        assert_eq!(forward, backward);
        for (i, p) in forward.pivots().iter().enumerate() {
            for (j, row) in forward.rows().iter().enumerate() {
                let expected = if i == j { rat(1) } else { rat(0) };
                assert_eq!(row.coeff(p), expected);
            }
        }
    }

    #[test]
    fn identity_has_trivial_nullspace() {
        let rows = vec![v(&[("x", 1)]), v(&[("y", 1)])];
        assert!(nullspace(&rows, &["x", "y"]).is_empty());
    }

    #[test]
    fn symmetry_constraint_prototype() {
        let ns = nullspace(&[v(&[("x", 1), ("y", -1)])], &["x", "y"]);
        assert_eq!(ns.rank(), 1);
        assert_eq!(ns.rows()[0], v(&[("x", 1), ("y", 1)]));
    }

    #[test]
    fn unknowns_absent_from_rows_are_free() {
        let ns = nullspace(&[v(&[("x", 1)])], &["x", "y", "z"]);
        assert_eq!(ns.rank(), 2);
    }

    #[test]
    fn membership() {
        let basis = echelonize(vec![v(&[("a", 1), ("c", 2)]), v(&[("b", 1), ("c", -1)])]);
        let zero = CoeffVector::new();
        assert_eq!(in_rowspace(&zero, &basis), Some(vec![rat(0), rat(0)]));

        let sum: CoeffVector<_> = v(&[("a", 1), ("b", 1), ("c", 1)]);
        assert_eq!(in_rowspace(&sum, &basis), Some(vec![rat(1), rat(1)]));

        let mut outside = basis.rows()[0].clone();
        outside.add_at("d", &rat(1));
        let reduction = basis.reduce(&outside);
        assert!(!reduction.is_member());
        assert_eq!(reduction.residual, v(&[("d", 1)]));
        assert!(in_rowspace(&outside, &basis).is_none());
    }

    #[test]
    fn from_reduced_rows_rejects_non_rref() {
        assert!(EchelonBasis::from_reduced_rows(vec![v(&[("a", 2)])]).is_none());
        assert!(EchelonBasis::from_reduced_rows(vec![v(&[("b", 1)]), v(&[("a", 1)])]).is_none());
        assert!(EchelonBasis::from_reduced_rows(vec![v(&[("a", 1), ("b", 1)]), v(&[("b", 1)])]).is_none());
        let ok = EchelonBasis::from_reduced_rows(vec![v(&[("a", 1), ("c", 1)]), v(&[("b", 1)])]).unwrap();
        assert_eq!(ok.pivots(), &["a", "b"]);
    }
}
