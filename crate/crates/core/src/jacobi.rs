//! Jacobi forms of even weight and integral index for the full Jacobi group.
//!
//! A Jacobi form of index `m >= 1` has Fourier coefficients `c(n, r)` that
//! depend only on the discriminant `4nm - r^2` and on `r mod 2m`, and are
//! even in `r` for even weight. Holomorphic forms are supported on
//! `4nm - r^2 >= 0`. Expansions are stored on canonical pairs
//! `0 <= r <= m`; every other coefficient is read back through
//! [`canonicalize`].
//!
//! Bases of `J_{k,m}` are obtained from the weak Jacobi forms
//! `phi_{-2,1}` and `phi_{0,1}`: every even-weight weak form of index `m`
//! is a combination of `f_j * phi_{-2,1}^j * phi_{0,1}^(m-j)` with
//! `f_j` in `M_{k+2j}`, and the holomorphic ones are cut out by requiring
//! the finitely many negative-discriminant coefficients to vanish.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::elliptic::{euler_product, mf_basis, QSeries};
use crate::error::{check_weight, Error, Result};
use crate::linalg::{echelonize, nullspace, rat, CoeffVector, EchelonBasis, Rational};

/// Key of a Jacobi Fourier coefficient.
pub type JacobiKey = (i64, i64);

pub fn discriminant(n: i64, r: i64, m: i64) -> i64 {
    4 * n * m - r * r
}

/// Canonical representative of the coefficient class of `(n, r)` for index
/// `m`: `0 <= r' <= m` with the same discriminant and `r' = +-r mod 2m`.
///
/// For `m = 0` the pair is returned unchanged; classes with `r != 0` are
/// identically zero for index 0.
pub fn canonicalize(n: i64, r: i64, m: i64) -> JacobiKey {
    if m == 0 {
        return (n, r);
    }
    let mut reduced = r.rem_euclid(2 * m);
    if reduced > m {
        reduced = 2 * m - reduced;
    }
    let d = discriminant(n, r, m);
    let shifted = d + reduced * reduced;
    debug_assert_eq!(shifted % (4 * m), 0);
    (shifted / (4 * m), reduced)
}

/// Result of reading a coefficient through the canonical class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalLookup {
    pub key: JacobiKey,
    /// False when the canonical `n'` lies at or beyond the stored precision.
    pub defined: bool,
}

pub fn canonical_lookup(n: i64, r: i64, m: i64, precision: usize) -> CanonicalLookup {
    let key = canonicalize(n, r, m);
    CanonicalLookup {
        key,
        defined: key.0 < precision as i64,
    }
}

/// Canonical keys `(n, r)`, `0 <= n < precision`, `0 <= r <= m`, in
/// lexicographic order. With `holomorphic` only keys of nonnegative
/// discriminant are listed.
pub fn canonical_keys(m: i64, precision: usize, holomorphic: bool) -> Vec<JacobiKey> {
    let mut keys = Vec::new();
    for n in 0..precision as i64 {
        for r in 0..=m {
            if !holomorphic || discriminant(n, r, m) >= 0 {
                keys.push((n, r));
            }
        }
    }
    keys
}

/// `I^J(m; B)`: all `(n, r)` with `0 <= n < B` and `4nm - r^2 >= 0`.
pub fn index_set_jacobi(m: i64, precision: usize) -> Vec<JacobiKey> {
    let mut out = Vec::new();
    for n in 0..precision as i64 {
        let bound = isqrt(4 * n * m);
        for r in -bound..=bound {
            out.push((n, r));
        }
    }
    out
}

pub(crate) fn isqrt(x: i64) -> i64 {
    if x <= 0 {
        return 0;
    }
    let mut s = (x as f64).sqrt() as i64;
    while s * s > x {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= x {
        s += 1;
    }
    s
}

/// Truncated expansion of a weak Jacobi form, stored over the full range of
/// `r` so that products can be formed directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakExpansion {
    weight: i64,
    index: i64,
    precision: usize,
    coeffs: BTreeMap<JacobiKey, Rational>,
}

impl WeakExpansion {
    fn from_map(weight: i64, index: i64, precision: usize, mut coeffs: BTreeMap<JacobiKey, Rational>) -> Self {
        coeffs.retain(|&(n, _), c| !c.is_zero() && n < precision as i64);
        Self {
            weight,
            index,
            precision,
            coeffs,
        }
    }

    /// Index-0 expansion of an elliptic form.
    pub fn from_qseries(f: &QSeries) -> Self {
        let coeffs = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| ((n as i64, 0), c.clone()))
            .collect();
        Self::from_map(f.weight(), 0, f.precision(), coeffs)
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn coeff(&self, n: i64, r: i64) -> Rational {
        self.coeffs.get(&(n, r)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&JacobiKey, &Rational)> {
        self.coeffs.iter()
    }

    pub fn mul(&self, other: &Self) -> Self {
        jacobi_mul(self, other)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::from_qseries(&QSeries::one(self.precision));
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    /// `z = 0` specialization: `sum_r c(n, r)`.
    pub fn specialize_z0(&self) -> QSeries {
        let mut out = vec![Rational::zero(); self.precision];
        for (&(n, _), c) in &self.coeffs {
            out[n as usize] += c;
        }
        QSeries::new(self.weight, out)
    }

    /// Coefficients on canonical keys (negative discriminants included).
    fn canonical_vector(&self, precision: usize) -> CoeffVector<JacobiKey> {
        canonical_keys(self.index, precision.min(self.precision), false)
            .into_iter()
            .map(|(n, r)| ((n, r), self.coeff(n, r)))
            .collect()
    }
}

/// Product of weak expansions: Cauchy convolution in `q` and `zeta`.
pub fn jacobi_mul(f: &WeakExpansion, g: &WeakExpansion) -> WeakExpansion {
    let precision = f.precision.min(g.precision);
    let coeffs = convolve(&f.coeffs, &g.coeffs, precision);
    WeakExpansion::from_map(f.weight + g.weight, f.index + g.index, precision, coeffs)
}

fn convolve(
    a: &BTreeMap<JacobiKey, Rational>,
    b: &BTreeMap<JacobiKey, Rational>,
    precision: usize,
) -> BTreeMap<JacobiKey, Rational> {
    let limit = precision as i64;
    let mut out: BTreeMap<JacobiKey, Rational> = BTreeMap::new();
    for (&(n1, r1), c1) in a {
        if n1 >= limit {
            break;
        }
        for (&(n2, r2), c2) in b {
            if n1 + n2 >= limit {
                break;
            }
            *out.entry((n1 + n2, r1 + r2)).or_insert_with(Rational::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The weak Jacobi forms `phi_{-2,1}` and `phi_{0,1}`, normalized by
/// `c(0, 1) = 1`.
///
/// With `R = prod_{n>=1} (1 - q^n zeta)^2 (1 - q^n / zeta)^2 / (1 - q^n)^4`,
/// `phi_{-2,1} = (zeta - 2 + 1/zeta) R` is `theta_1^2 / eta^6`, and
/// `phi_{0,1} = 12 p phi_{-2,1}` with the normalized Weierstrass function
/// `p = 1/12 + zeta/(1 - zeta)^2 + sum_{n>=1} sum_{d|n} d (zeta^d - 2 + zeta^-d) q^n`.
/// Since `zeta/(1 - zeta)^2 * (zeta - 2 + 1/zeta) = 1`, this is
/// `phi_{-2,1} (1 + 12 P) + 12 R` where `P` is the q-series part of `p`.
pub fn weak_generators(precision: usize) -> (WeakExpansion, WeakExpansion) {
    let limit = precision as i64;
    let one = |n: i64, r: i64| BTreeMap::from([((n, r), Rational::one())]);

    let mut product = one(0, 0);
    for n in 1..limit {
        for sign in [1, -1] {
            // (1 - q^n zeta^sign)^2 = 1 - 2 q^n zeta^sign + q^2n zeta^2sign
            let factor = BTreeMap::from([
                ((0, 0), Rational::one()),
                ((n, sign), rat(-2)),
                ((2 * n, 2 * sign), Rational::one()),
            ]);
            product = convolve(&product, &factor, precision);
        }
    }
    let partitions = euler_product(precision)
        .inverse()
        .expect("Euler product has constant term 1")
        .pow(4);
    let partitions: BTreeMap<JacobiKey, Rational> = partitions
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| ((n as i64, 0), c.clone()))
        .collect();
    let r_series = convolve(&product, &partitions, precision);

    let theta_factor = BTreeMap::from([((0, -1), Rational::one()), ((0, 0), rat(-2)), ((0, 1), Rational::one())]);
    let phi_m2 = convolve(&theta_factor, &r_series, precision);

    let mut p_series = one(0, 0);
    for n in 1..limit {
        for d in (1..=n).filter(|d| n % d == 0) {
            for (r, c) in [(d, d), (0, -2 * d), (-d, d)] {
                *p_series.entry((n, r)).or_insert_with(Rational::zero) += rat(12 * c);
            }
        }
    }
    let mut phi_0 = convolve(&phi_m2, &p_series, precision);
    for (key, c) in &r_series {
        *phi_0.entry(*key).or_insert_with(Rational::zero) += rat(12) * c;
    }

    (
        WeakExpansion::from_map(-2, 1, precision, phi_m2),
        WeakExpansion::from_map(0, 1, precision, phi_0),
    )
}

/// Truncated expansion of a holomorphic Jacobi form, stored on canonical
/// pairs `(n, r)` with `0 <= r <= m`, `n < B` and `4nm - r^2 >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiExpansion {
    weight: i64,
    index: i64,
    precision: usize,
    coeffs: CoeffVector<JacobiKey>,
}

impl JacobiExpansion {
    /// Builds an expansion from canonical coefficients. Entries on
    /// non-canonical keys, beyond the precision, or of negative
    /// discriminant are rejected.
    pub fn new(weight: i64, index: i64, precision: usize, coeffs: CoeffVector<JacobiKey>) -> Result<Self> {
        for &(n, r) in coeffs.keys() {
            let canonical = (0..=index).contains(&r) && n >= 0 && n < precision as i64;
            if !canonical {
                return Err(Error::InvalidInput(format!(
                    "coefficient ({n}, {r}) is not a canonical key for index {index}, precision {precision}"
                )));
            }
            if discriminant(n, r, index) < 0 {
                return Err(Error::InvalidInput(format!(
                    "nonzero coefficient ({n}, {r}) outside the holomorphic support for index {index}"
                )));
            }
        }
        Ok(Self {
            weight,
            index,
            precision,
            coeffs,
        })
    }

    pub fn zero(weight: i64, index: i64, precision: usize) -> Self {
        Self {
            weight,
            index,
            precision,
            coeffs: CoeffVector::new(),
        }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Canonical coefficients.
    pub fn coeffs(&self) -> &CoeffVector<JacobiKey> {
        &self.coeffs
    }

    /// `c(n, r)` for arbitrary integers; `None` if the canonical
    /// representative lies beyond the stored precision.
    pub fn coeff(&self, n: i64, r: i64) -> Option<Rational> {
        if self.index == 0 && r != 0 {
            return Some(Rational::zero());
        }
        if discriminant(n, r, self.index) < 0 {
            return Some(Rational::zero());
        }
        let lookup = canonical_lookup(n, r, self.index, self.precision);
        lookup.defined.then(|| self.coeffs.coeff(&lookup.key))
    }

    /// Coefficient inside the truncation window `0 <= n < B`.
    ///
    /// # Panics
    /// If `n` is outside the window.
    pub fn coeff_in_window(&self, n: i64, r: i64) -> Rational {
        assert!(
            (0..self.precision as i64).contains(&n),
            "n = {n} outside precision {}",
            self.precision
        );
        self.coeff(n, r).expect("canonical n never exceeds n")
    }

    pub fn truncate(&self, precision: usize) -> Self {
        Self {
            weight: self.weight,
            index: self.index,
            precision: precision.min(self.precision),
            coeffs: self.coeffs.restrict(|&(n, _)| n < precision as i64),
        }
    }

    pub fn is_cusp(&self) -> bool {
        self.coeffs.keys().all(|&(n, r)| discriminant(n, r, self.index) > 0)
    }

    /// `D_0`: the `z = 0` specialization `sum_r c(n, r)`, a weight-`k`
    /// elliptic expansion.
    pub fn specialize_z0(&self) -> QSeries {
        let coeffs = (0..self.precision as i64)
            .map(|n| {
                let bound = isqrt(4 * n * self.index);
                (-bound..=bound).map(|r| self.coeff_in_window(n, r)).sum()
            })
            .collect();
        QSeries::new(self.weight, coeffs)
    }

    /// Full set of coefficients on `I^J(m; B)`.
    pub fn window_coefficients(&self) -> impl Iterator<Item = (JacobiKey, Rational)> + '_ {
        index_set_jacobi(self.index, self.precision)
            .into_iter()
            .map(|(n, r)| ((n, r), self.coeff_in_window(n, r)))
    }

    pub fn linear_combination<'a>(
        weight: i64,
        index: i64,
        precision: usize,
        terms: impl IntoIterator<Item = (&'a Rational, &'a JacobiExpansion)>,
    ) -> Self {
        let mut coeffs = CoeffVector::new();
        for (c, e) in terms {
            coeffs.add_scaled(c, &e.coeffs);
        }
        Self {
            weight,
            index,
            precision,
            coeffs,
        }
    }
}

/// Echelonized basis of `J_{k,m}` truncated at precision `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiBasis {
    weight: i64,
    index: i64,
    precision: usize,
    basis: EchelonBasis<JacobiKey>,
}

impl JacobiBasis {
    pub fn new(weight: i64, index: i64, precision: usize, basis: EchelonBasis<JacobiKey>) -> Result<Self> {
        for row in basis.rows() {
            JacobiExpansion::new(weight, index, precision, row.clone())?;
        }
        Ok(Self {
            weight,
            index,
            precision,
            basis,
        })
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn echelon(&self) -> &EchelonBasis<JacobiKey> {
        &self.basis
    }

    pub fn elements(&self) -> Vec<JacobiExpansion> {
        self.basis
            .rows()
            .iter()
            .map(|row| JacobiExpansion {
                weight: self.weight,
                index: self.index,
                precision: self.precision,
                coeffs: row.clone(),
            })
            .collect()
    }

    pub fn contains(&self, phi: &JacobiExpansion) -> bool {
        self.basis.contains(phi.truncate(self.precision).coeffs())
    }
}

/// Whether truncation at `precision` is injective on `J_{k,m}`:
/// `B > (k + 2m)/12 + 1`.
pub fn jacobi_precision_ok(k: i64, m: i64, precision: usize) -> bool {
    12 * precision as i64 > k + 2 * m + 12
}

/// Basis of `J_{k,m}` as truncated Fourier expansions.
pub fn jacobi_basis(k: i64, m: i64, precision: usize) -> Result<JacobiBasis> {
    check_weight(k)?;
    if m < 0 {
        return Err(Error::InvalidInput(format!("negative index {m}")));
    }
    if !jacobi_precision_ok(k, m, precision) {
        return Err(Error::PrecisionTooLow {
            what: format!("J_{{{k},{m}}}"),
            precision,
            bound: format!("({k} + 2*{m})/12 + 1"),
        });
    }
    if m == 0 {
        let elliptic = mf_basis(k, precision)?;
        let rows = elliptic
            .echelon()
            .rows()
            .iter()
            .map(|row| row.map_keys(|&n| (n as i64, 0)));
        return JacobiBasis::new(k, 0, precision, echelonize(rows));
    }

    // Negative-discriminant classes have canonical n <= m/4; make sure the
    // weak expansions see all of them.
    let work = precision.max((m / 4 + 1) as usize);
    let (phi_m2, phi_0) = weak_generators(work);
    let mut monomials: Vec<CoeffVector<JacobiKey>> = Vec::new();
    for j in 0..=m {
        let weak = phi_m2.pow(j as u32).mul(&phi_0.pow((m - j) as u32));
        for f in mf_basis(k + 2 * j, work)?.series() {
            let term = WeakExpansion::from_qseries(&f).mul(&weak);
            monomials.push(term.canonical_vector(work));
        }
    }

    let unknowns: Vec<usize> = (0..monomials.len()).collect();
    let constraints: Vec<CoeffVector<usize>> = canonical_keys(m, work, false)
        .into_iter()
        .filter(|&(n, r)| discriminant(n, r, m) < 0)
        .map(|key| {
            monomials
                .iter()
                .enumerate()
                .map(|(i, mono)| (i, mono.coeff(&key)))
                .collect()
        })
        .collect();
    let solutions = nullspace(&constraints, &unknowns);

    let mut rows = Vec::with_capacity(solutions.rank());
    for x in solutions.rows() {
        let mut combo = CoeffVector::new();
        for (&i, c) in x.iter() {
            combo.add_scaled(c, &monomials[i]);
        }
        if combo.keys().any(|&(n, r)| discriminant(n, r, m) < 0) {
            return Err(Error::Integrity(format!(
                "holomorphy constraints not satisfied for J_{{{k},{m}}}"
            )));
        }
        rows.push(combo.restrict(|&(n, _)| n < precision as i64));
    }
    let basis = echelonize(rows);
    if basis.rank() != solutions.rank() {
        return Err(Error::Integrity(format!(
            "truncation of J_{{{k},{m}}} at precision {precision} is not injective"
        )));
    }
    JacobiBasis::new(k, m, precision, basis)
}

/// Cusp subspace: forms with `c(n, r) = 0` whenever `4nm = r^2`.
pub fn cusp_subspace(basis: &JacobiBasis) -> JacobiBasis {
    let m = basis.index;
    let elements = basis.elements();
    let unknowns: Vec<usize> = (0..elements.len()).collect();
    let constraints: Vec<CoeffVector<usize>> = canonical_keys(m, basis.precision, true)
        .into_iter()
        .filter(|&(n, r)| discriminant(n, r, m) == 0)
        .map(|key| {
            elements
                .iter()
                .enumerate()
                .map(|(i, e)| (i, e.coeffs.coeff(&key)))
                .collect()
        })
        .collect();
    let solutions = nullspace(&constraints, &unknowns);
    let rows = solutions.rows().iter().map(|x| {
        let mut combo = CoeffVector::new();
        for (&i, c) in x.iter() {
            combo.add_scaled(c, &elements[i].coeffs);
        }
        combo
    });
    JacobiBasis {
        weight: basis.weight,
        index: m,
        precision: basis.precision,
        basis: echelonize(rows),
    }
}
