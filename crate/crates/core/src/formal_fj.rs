//! Truncated formal Fourier-Jacobi expansions and the precision-escalation
//! loop that turns them into Siegel modular forms.
//!
//! A formal Fourier-Jacobi expansion of weight `k` truncated at `B` is a
//! family `(phi_m)_{0 <= m < B}` with `phi_m` in `J_{k,m}` such that
//! `c(phi_m; n, r) = c(phi_n; m, r)` for all `n, m < B` and all `r`. For even
//! weight and trivial type no sign or representation factor enters.
//!
//! The unknowns of the linear system are the coordinates of each `phi_m` in
//! the echelon basis of `J_{k,m}`, ordered by `(m, i)`. Elements are
//! therefore determined by their components with small `m`, which shows up
//! as every echelon pivot sitting in the block `m <= k/10`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{check_weight, Error, Result};
use crate::jacobi::{canonical_keys, discriminant, isqrt, jacobi_basis, JacobiBasis, JacobiExpansion};
use crate::linalg::{nullspace, CoeffVector, EchelonBasis, Rational};
use crate::oracles::dim_siegel_even;

/// Default hard cap on the precision escalation.
pub const DEFAULT_MAX_PRECISION: usize = 20;

/// Key `(m, n, r)` of a Siegel coefficient; tuple order is the file order.
pub type SiegelKey = (i64, i64, i64);

/// Coordinate `(m, i)`: the `i`-th basis element of `J_{k,m}`.
pub type Coordinate = (usize, usize);

/// Smallest precision the algorithm starts from: `floor(k/10) + 2`.
///
/// It exceeds `k/10` and satisfies `B > (k + 2m)/12 + 1` for every `m < B`.
pub fn precision_floor(k: i64) -> usize {
    (k.max(0) / 10) as usize + 2
}

/// `I^(2)(B)`, ordered lexicographically by `(m, n, r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelIndexSet {
    precision: usize,
    triples: Vec<(i64, i64, i64)>,
}

impl SiegelIndexSet {
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Triples `(n, r, m)`.
    pub fn triples(&self) -> &[(i64, i64, i64)] {
        &self.triples
    }

    pub fn contains(&self, n: i64, r: i64, m: i64) -> bool {
        let b = self.precision as i64;
        (0..b).contains(&n) && (0..b).contains(&m) && discriminant(n, r, m) >= 0
    }
}

pub fn index_set_siegel(precision: usize) -> SiegelIndexSet {
    let b = precision as i64;
    let mut triples = Vec::new();
    for m in 0..b {
        for n in 0..b {
            let bound = isqrt(4 * n * m);
            for r in -bound..=bound {
                triples.push((n, r, m));
            }
        }
    }
    SiegelIndexSet { precision, triples }
}

/// Element of `FM_k` truncated at `B`: one Jacobi expansion per index
/// `m < B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalFJTruncation {
    weight: i64,
    precision: usize,
    components: Vec<JacobiExpansion>,
}

impl FormalFJTruncation {
    /// Assembles components; component `m` must have index `m`, weight `k`
    /// and precision `B`. The symmetry condition is not checked here, see
    /// [`FormalFJTruncation::symmetry_violation`].
    pub fn new(weight: i64, components: Vec<JacobiExpansion>) -> Result<Self> {
        let precision = components.len();
        for (m, phi) in components.iter().enumerate() {
            if phi.index() != m as i64 {
                return Err(Error::InvalidInput(format!(
                    "component {m} has index {}",
                    phi.index()
                )));
            }
            if phi.weight() != weight {
                return Err(Error::WeightMismatch(weight, phi.weight()));
            }
            if phi.precision() != precision {
                return Err(Error::PrecisionMismatch(precision, phi.precision()));
            }
        }
        Ok(Self {
            weight,
            precision,
            components,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn components(&self) -> &[JacobiExpansion] {
        &self.components
    }

    /// `c(phi_m; n, r)` inside the window `n, m < B`.
    pub fn coeff(&self, n: i64, r: i64, m: i64) -> Option<Rational> {
        let b = self.precision as i64;
        if !(0..b).contains(&n) || !(0..b).contains(&m) {
            return None;
        }
        self.components[m as usize].coeff(n, r)
    }

    /// First `(n, r, m)` where `c(phi_m; n, r) != c(phi_n; m, r)`, scanning
    /// every `n, m < B` and `|r| <= floor(sqrt(4nm))`.
    pub fn symmetry_violation(&self) -> Option<(i64, i64, i64)> {
        let b = self.precision as i64;
        for m in 0..b {
            for n in 0..b {
                let bound = isqrt(4 * n * m);
                for r in -bound..=bound {
                    let left = self.components[m as usize].coeff_in_window(n, r);
                    let right = self.components[n as usize].coeff_in_window(m, r);
                    if left != right {
                        return Some((n, r, m));
                    }
                }
            }
        }
        None
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let precision = precision.min(self.precision);
        Self {
            weight: self.weight,
            precision,
            components: self.components[..precision]
                .iter()
                .map(|phi| phi.truncate(precision))
                .collect(),
        }
    }

    /// Coefficients `c(phi_m; n, r)` for `m, n < window`, `r >= 0`, keyed by
    /// `(m, n, r)`. Two truncations are equal on the window iff these
    /// vectors are equal.
    pub fn coefficient_vector(&self, window: usize) -> CoeffVector<SiegelKey> {
        let w = window.min(self.precision) as i64;
        let mut out = CoeffVector::new();
        for m in 0..w {
            for n in 0..w {
                for r in 0..=isqrt(4 * n * m) {
                    out.set((m, n, r), self.components[m as usize].coeff_in_window(n, r));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|phi| phi.coeffs().is_zero())
    }
}

/// Where Jacobi bases come from: computed directly, or through a cache.
pub trait JacobiSource: Sync {
    fn jacobi_basis(&self, k: i64, m: i64, precision: usize) -> Result<JacobiBasis>;
}

/// Computes every basis from scratch.
#[derive(Clone, Copy, Debug, Default)]
pub struct DirectSource;

impl JacobiSource for DirectSource {
    fn jacobi_basis(&self, k: i64, m: i64, precision: usize) -> Result<JacobiBasis> {
        jacobi_basis(k, m, precision)
    }
}

/// Linear system whose nullspace is `FM_k` truncated at `B`.
#[derive(Clone, Debug)]
pub struct SymmetrySystem {
    pub unknowns: Vec<Coordinate>,
    pub rows: Vec<CoeffVector<Coordinate>>,
}

/// One row per pair `m < n < B` and `0 <= r <= floor(sqrt(4nm))`:
/// `sum_i x_{m,i} c(b_{m,i}; n, r) - sum_j x_{n,j} c(b_{n,j}; m, r) = 0`.
///
/// Negative `r` would repeat the row for `-r` since every component is even
/// in `r`; the diagonal `m = n` is identically satisfied. Zero rows are
/// dropped.
pub fn build_symmetry_system(k: i64, bases: &[JacobiBasis]) -> Result<SymmetrySystem> {
    let precision = bases.len();
    for (m, basis) in bases.iter().enumerate() {
        if basis.precision() != precision {
            return Err(Error::PrecisionMismatch(precision, basis.precision()));
        }
        if basis.weight() != k {
            return Err(Error::WeightMismatch(k, basis.weight()));
        }
        if basis.index() != m as i64 {
            return Err(Error::InvalidInput(format!(
                "basis {m} has index {}",
                basis.index()
            )));
        }
    }
    let elements: Vec<Vec<JacobiExpansion>> = bases.iter().map(JacobiBasis::elements).collect();
    let unknowns: Vec<Coordinate> = elements
        .iter()
        .enumerate()
        .flat_map(|(m, es)| (0..es.len()).map(move |i| (m, i)))
        .collect();

    let pairs: Vec<(usize, usize)> = (0..precision)
        .flat_map(|m| (m + 1..precision).map(move |n| (m, n)))
        .collect();
    let rows: Vec<CoeffVector<Coordinate>> = pairs
        .par_iter()
        .flat_map_iter(|&(m, n)| {
            let elements = &elements;
            (0..=isqrt(4 * n as i64 * m as i64)).map(move |r| {
                let mut row = CoeffVector::new();
                for (i, b) in elements[m].iter().enumerate() {
                    row.add_at((m, i), &b.coeff_in_window(n as i64, r));
                }
                for (j, b) in elements[n].iter().enumerate() {
                    row.add_at((n, j), &-b.coeff_in_window(m as i64, r));
                }
                row
            })
        })
        .filter(|row| !row.is_zero())
        .collect();
    Ok(SymmetrySystem { unknowns, rows })
}

/// Echelon basis of `FM_k` truncated at `B`, in Jacobi-basis coordinates.
#[derive(Clone, Debug)]
pub struct FMBasis {
    weight: i64,
    precision: usize,
    jacobi: Vec<JacobiBasis>,
    basis: EchelonBasis<Coordinate>,
}

impl FMBasis {
    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn jacobi_bases(&self) -> &[JacobiBasis] {
        &self.jacobi
    }

    pub fn echelon(&self) -> &EchelonBasis<Coordinate> {
        &self.basis
    }

    /// Materializes every basis vector as a truncated expansion.
    pub fn elements(&self) -> Vec<FormalFJTruncation> {
        let jacobi_elements: Vec<Vec<JacobiExpansion>> =
            self.jacobi.iter().map(JacobiBasis::elements).collect();
        self.basis
            .rows()
            .iter()
            .map(|x| {
                let components = jacobi_elements
                    .iter()
                    .enumerate()
                    .map(|(m, es)| {
                        let coords: Vec<Rational> = (0..es.len()).map(|i| x.coeff(&(m, i))).collect();
                        JacobiExpansion::linear_combination(
                            self.weight,
                            m as i64,
                            self.precision,
                            coords.iter().zip(es).filter(|(c, _)| !c.is_zero()),
                        )
                    })
                    .collect();
                FormalFJTruncation {
                    weight: self.weight,
                    precision: self.precision,
                    components,
                }
            })
            .collect()
    }

    /// Echelon basis of the elements' coefficient vectors on the window
    /// `m, n < window`.
    pub fn coefficient_space(&self, window: usize) -> EchelonBasis<SiegelKey> {
        crate::linalg::echelonize(self.elements().iter().map(|e| e.coefficient_vector(window)))
    }

    /// Largest `m` among the echelon pivots, if any.
    pub fn max_pivot_index(&self) -> Option<usize> {
        self.basis.pivots().iter().map(|&(m, _)| m).max()
    }
}

pub fn solve_fm_space(k: i64, precision: usize) -> Result<FMBasis> {
    solve_fm_space_with(k, precision, &DirectSource)
}

pub fn solve_fm_space_with(k: i64, precision: usize, source: &dyn JacobiSource) -> Result<FMBasis> {
    check_weight(k)?;
    let floor = precision_floor(k);
    if precision < floor {
        return Err(Error::PrecisionTooLow {
            what: format!("FM_{k}"),
            precision,
            bound: format!("{}", floor - 1),
        });
    }
    let jacobi: Vec<JacobiBasis> = (0..precision)
        .into_par_iter()
        .map(|m| source.jacobi_basis(k, m as i64, precision))
        .collect::<Result<_>>()?;
    let system = build_symmetry_system(k, &jacobi)?;
    let basis = nullspace(&system.rows, &system.unknowns);
    Ok(FMBasis {
        weight: k,
        precision,
        jacobi,
        basis,
    })
}

/// Options for [`compute_siegel_space_with`].
#[derive(Clone, Debug)]
pub struct ComputeOptions {
    /// Starting precision; defaults to [`precision_floor`].
    pub start: Option<usize>,
    pub max_precision: usize,
}

impl Default for ComputeOptions {
    fn default() -> Self {
        Self {
            start: None,
            max_precision: DEFAULT_MAX_PRECISION,
        }
    }
}

/// Runs the escalation loop: solve at `B`, compare with `dim M_k`, and
/// retry at `B + 1` until they match.
pub fn compute_siegel_space(k: i64) -> Result<(FMBasis, usize)> {
    compute_siegel_space_with(k, &ComputeOptions::default(), &DirectSource)
}

pub fn compute_siegel_space_with(
    k: i64,
    options: &ComputeOptions,
    source: &dyn JacobiSource,
) -> Result<(FMBasis, usize)> {
    check_weight(k)?;
    let expected = dim_siegel_even(k)?;
    let floor = precision_floor(k);
    let mut precision = options.start.unwrap_or(floor);
    if precision < floor {
        return Err(Error::PrecisionTooLow {
            what: format!("FM_{k}"),
            precision,
            bound: format!("{}", floor - 1),
        });
    }
    if expected == 0 {
        let empty = FMBasis {
            weight: k,
            precision,
            jacobi: Vec::new(),
            basis: EchelonBasis::empty(),
        };
        return Ok((empty, precision));
    }
    let mut last_dim = 0;
    while precision <= options.max_precision {
        let fm = solve_fm_space_with(k, precision, source)?;
        last_dim = fm.dim();
        if last_dim == expected {
            return Ok((fm, precision));
        }
        if last_dim < expected {
            return Err(Error::Integrity(format!(
                "FM_{k} at precision {precision} has dimension {last_dim} below dim M_{k} = {expected}"
            )));
        }
        precision += 1;
    }
    Err(Error::PrecisionCap {
        weight: k,
        cap: options.max_precision,
        dimension: last_dim,
        expected,
    })
}

/// `GL_2(Z)`-reduced representative of the binary form `[n, r, m]`,
/// returned as `(n', r', m')` with `0 <= r' <= n' <= m'`. Requires
/// `4nm - r^2 >= 0` and `n, m >= 0`.
pub fn reduce_form(n: i64, r: i64, m: i64) -> (i64, i64, i64) {
    let (mut a, mut b, mut c) = (n, r, m);
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
        }
        if a == 0 {
            // semidefinite with a = 0 forces b = 0
            debug_assert_eq!(b, 0);
            return (0, 0, c);
        }
        if b.abs() > a {
            // x -> x - lambda y with lambda nearest to b / 2a
            let lambda = (b + a).div_euclid(2 * a);
            c = c - lambda * b + lambda * lambda * a;
            b -= 2 * lambda * a;
            continue;
        }
        return (a, b.abs(), c);
    }
}

/// Fourier coefficients `c(T)` of a degree-2 form on reduced
/// `T = [[n, r/2], [r/2, m]]`, `0 <= r <= n <= m < B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiegelFourier {
    weight: i64,
    precision: usize,
    /// Keyed by `(m, n, r)`; every reduced triple in the window is present,
    /// zeros included.
    coeffs: BTreeMap<SiegelKey, Rational>,
}

/// Reduced triples `(n, r, m)` with `m < B`, in `(m, n, r)` order.
pub fn reduced_triples(precision: usize) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for m in 0..precision as i64 {
        for n in 0..=m {
            for r in 0..=n {
                if discriminant(n, r, m) >= 0 {
                    out.push((n, r, m));
                }
            }
        }
    }
    out
}

impl SiegelFourier {
    /// Builds from `(n, r, m, value)` entries; every reduced triple in the
    /// window must appear exactly once.
    pub fn from_entries(
        weight: i64,
        precision: usize,
        entries: impl IntoIterator<Item = ((i64, i64, i64), Rational)>,
    ) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for ((n, r, m), value) in entries {
            if reduce_form(n, r, m) != (n, r, m) || discriminant(n, r, m) < 0 {
                return Err(Error::InvalidInput(format!("({n}, {r}, {m}) is not reduced")));
            }
            if m >= precision as i64 {
                return Err(Error::InvalidInput(format!(
                    "({n}, {r}, {m}) outside precision {precision}"
                )));
            }
            if coeffs.insert((m, n, r), value).is_some() {
                return Err(Error::InvalidInput(format!("duplicate entry ({n}, {r}, {m})")));
            }
        }
        let expected = reduced_triples(precision).len();
        if coeffs.len() != expected {
            return Err(Error::InvalidInput(format!(
                "expected {expected} reduced coefficients for precision {precision}, found {}",
                coeffs.len()
            )));
        }
        Ok(Self {
            weight,
            precision,
            coeffs,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `c(T)` for any semidefinite `T` whose reduction lies in the window.
    pub fn get(&self, n: i64, r: i64, m: i64) -> Option<Rational> {
        if n < 0 || m < 0 || discriminant(n, r, m) < 0 {
            return Some(Rational::zero());
        }
        let (n, r, m) = reduce_form(n, r, m);
        self.coeffs.get(&(m, n, r)).cloned()
    }

    /// Entries as `((n, r, m), c)` in `(m, n, r)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64, i64), &Rational)> {
        self.coeffs.iter().map(|(&(m, n, r), c)| ((n, r, m), c))
    }

    /// Fourier-Jacobi components `phi_m(n, r) = c(n, r, m)` on the window.
    pub fn to_formal_fj(&self) -> FormalFJTruncation {
        let b = self.precision;
        let components = (0..b as i64)
            .map(|m| {
                let coeffs = canonical_keys(m, b, true)
                    .into_iter()
                    .map(|(n, r)| ((n, r), self.get(n, r, m).expect("window is closed under reduction")))
                    .collect();
                JacobiExpansion::new(self.weight, m, b, coeffs).expect("canonical keys")
            })
            .collect();
        FormalFJTruncation {
            weight: self.weight,
            precision: b,
            components,
        }
    }
}

/// `c(Phi; n, r, m) = c(phi_m; n, r)` on reduced representatives. Every
/// coefficient in the window is checked against the value already recorded
/// for its reduction.
pub fn extract_siegel_fourier(elem: &FormalFJTruncation) -> Result<SiegelFourier> {
    let mut coeffs: BTreeMap<SiegelKey, Rational> = BTreeMap::new();
    for &(n, r, m) in index_set_siegel(elem.precision).triples() {
        let value = elem.components[m as usize].coeff_in_window(n, r);
        let (rn, rr, rm) = reduce_form(n, r, m);
        match coeffs.get(&(rm, rn, rr)) {
            Some(existing) if *existing != value => return Err(Error::Symmetry { n, r, m }),
            Some(_) => {}
            None => {
                coeffs.insert((rm, rn, rr), value);
            }
        }
    }
    Ok(SiegelFourier {
        weight: elem.weight,
        precision: elem.precision,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{echelonize, rat};

    #[test]
    fn precision_floor_examples() {
        assert_eq!(precision_floor(4), 2);
        assert_eq!(precision_floor(10), 3);
        assert_eq!(precision_floor(20), 4);
        // 12 B > k + 2m + 12 for every m < B
        for k in (0..=60).step_by(2) {
            let b = precision_floor(k);
            assert!(10 * b as i64 > k);
            for m in 0..b as i64 {
                assert!(12 * b as i64 > k + 2 * m + 12, "k={k} m={m}");
            }
        }
    }

    #[test]
    fn siegel_index_set() {
        let set = index_set_siegel(3);
        assert!(!set.contains(1, 3, 1));
        assert!(set.contains(1, 2, 1));
        let brute: usize = (0..3i64)
            .flat_map(|m| (0..3i64).flat_map(move |n| (-20..=20i64).map(move |r| (n, r, m))))
            .filter(|&(n, r, m)| 4 * n * m - r * r >= 0)
            .count();
        assert_eq!(set.triples().len(), brute);
        let mut sorted = set.triples().to_vec();
        sorted.sort_by_key(|&(n, r, m)| (m, n, r));
        assert_eq!(sorted, set.triples());
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_form(0, 0, 0), (0, 0, 0));
        assert_eq!(reduce_form(3, 0, 1), (1, 0, 3));
        assert_eq!(reduce_form(1, -1, 1), (1, 1, 1));
        assert_eq!(reduce_form(1, 2, 1), (0, 0, 1));
        assert_eq!(reduce_form(2, 3, 2), (1, 1, 2));
        assert_eq!(reduce_form(5, 0, 0), (0, 0, 5));
    }

    #[test]
    fn reduction_is_reduced_and_invariant() {
        for n in 0..12i64 {
            for m in 0..12i64 {
                for r in -25..=25i64 {
                    if 4 * n * m < r * r {
                        continue;
                    }
                    let (a, b, c) = reduce_form(n, r, m);
                    assert!(0 <= b && b <= a && a <= c, "({n},{r},{m}) -> ({a},{b},{c})");
                    assert_eq!(4 * a * c - b * b, 4 * n * m - r * r);
                    assert!(c <= n.max(m));
                    assert_eq!(reduce_form(a, b, c), (a, b, c));
                    assert_eq!(reduce_form(m, r, n), (a, b, c));
                }
            }
        }
    }

    #[test]
    fn weight_zero_space_is_constants() {
        for b in [2, 3] {
            let fm = solve_fm_space(0, b).unwrap();
            assert_eq!(fm.dim(), 1);
            let e = &fm.elements()[0];
            let sf = extract_siegel_fourier(e).unwrap();
            for ((n, r, m), c) in sf.entries() {
                let expected = if (n, r, m) == (0, 0, 0) { rat(1) } else { rat(0) };
                assert_eq!(*c, expected);
            }
        }
    }

    #[test]
    fn small_weight_dimensions() {
        assert_eq!(solve_fm_space(4, 2).unwrap().dim(), 1);
        assert_eq!(solve_fm_space(12, 3).unwrap().dim(), 3);
    }

    #[test]
    fn precision_below_floor_rejected() {
        assert!(matches!(solve_fm_space(10, 2), Err(Error::PrecisionTooLow { .. })));
        assert!(matches!(solve_fm_space(7, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn pair_zero_one_has_only_r_zero() {
        let bases: Vec<_> = (0..2).map(|m| jacobi_basis(4, m, 2).unwrap()).collect();
        let system = build_symmetry_system(4, &bases).unwrap();
        assert_eq!(system.rows.len(), 1);
        assert_eq!(system.unknowns, vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn symmetry_rank_matches_exhaustive_enumeration() {
        let k = 10;
        let b = 3;
        let bases: Vec<_> = (0..b).map(|m| jacobi_basis(k, m as i64, b).unwrap()).collect();
        let system = build_symmetry_system(k, &bases).unwrap();
        let built = echelonize(system.rows.clone()).rank();

        // every ordered pair, every r in a generous box, no pruning
        let elements: Vec<_> = bases.iter().map(|b| b.elements()).collect();
        let mut brute = Vec::new();
        for m in 0..b {
            for n in 0..b {
                for r in -10..=10i64 {
                    let mut row = CoeffVector::new();
                    for (i, e) in elements[m].iter().enumerate() {
                        row.add_at((m, i), &e.coeff_in_window(n as i64, r));
                    }
                    for (j, e) in elements[n].iter().enumerate() {
                        row.add_at((n, j), &-e.coeff_in_window(m as i64, r));
                    }
                    brute.push(row);
                }
            }
        }
        assert_eq!(echelonize(brute).rank(), built);
    }

    #[test]
    fn weight_two_returns_empty_immediately() {
        let (fm, b) = compute_siegel_space(2).unwrap();
        assert_eq!(fm.dim(), 0);
        assert_eq!(b, precision_floor(2));
        assert!(fm.elements().is_empty());
    }

    #[test]
    fn extraction_detects_asymmetry() {
        let fm = solve_fm_space(4, 2).unwrap();
        let e = fm.elements().remove(0);
        assert!(e.symmetry_violation().is_none());
        let mut components = e.components().to_vec();
        let mut c1 = components[1].coeffs().clone();
        c1.add_at((0, 0), &rat(1));
        components[1] = JacobiExpansion::new(4, 1, 2, c1).unwrap();
        let broken = FormalFJTruncation::new(4, components).unwrap();
        assert!(broken.symmetry_violation().is_some());
        assert!(matches!(extract_siegel_fourier(&broken), Err(Error::Symmetry { .. })));
    }

    #[test]
    fn siegel_fourier_round_trips_through_components() {
        let fm = solve_fm_space(10, 3).unwrap();
        for e in fm.elements() {
            let sf = extract_siegel_fourier(&e).unwrap();
            assert_eq!(sf.to_formal_fj(), e);
            assert_eq!(sf.get(0, 0, 0), e.coeff(0, 0, 0));
            assert_eq!(sf.get(1, 0, 1), e.coeff(1, 0, 1));
        }
    }
}
