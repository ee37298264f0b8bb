//! Level-one elliptic modular forms as truncated q-expansions.

use num_traits::{One, Zero};

use crate::error::{check_weight, Error, Result};
use crate::linalg::{echelonize, rat, CoeffVector, EchelonBasis, Rational};

/// Truncated q-expansion `sum_{n < B} c(n) q^n` of a weight-`k` form.
///
/// The precision `B` is the number of stored coefficients. Binary operations
/// clamp to the smaller precision of the operands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    weight: i64,
    coeffs: Vec<Rational>,
}

impl QSeries {
    pub fn new(weight: i64, coeffs: Vec<Rational>) -> Self {
        Self { weight, coeffs }
    }

    pub fn from_integers(weight: i64, coeffs: &[i64]) -> Self {
        Self::new(weight, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(weight: i64, precision: usize) -> Self {
        Self::new(weight, vec![Rational::zero(); precision])
    }

    /// The constant 1 as a weight-0 form.
    pub fn one(precision: usize) -> Self {
        let mut s = Self::zero(0, precision);
        if precision > 0 {
            s.coeffs[0] = Rational::one();
        }
        s
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, precision: usize) -> Self {
        Self::new(self.weight, self.coeffs.iter().take(precision).cloned().collect())
    }

    /// Truncated Cauchy product; weights add.
    pub fn mul(&self, other: &Self) -> Self {
        let b = self.precision().min(other.precision());
        let mut out = vec![Rational::zero(); b];
        for (i, a) in self.coeffs.iter().take(b).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, c) in other.coeffs.iter().take(b - i).enumerate() {
                out[i + j] += a * c;
            }
        }
        Self::new(self.weight + other.weight, out)
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one(self.precision());
        for _ in 0..exponent {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch(self.weight, other.weight));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self::new(self.weight, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(self.weight, self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.coeffs.first()?;
        if c0.is_zero() {
            return None;
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.precision());
        out.push(inv0.clone());
        for n in 1..self.precision() {
            let mut acc = Rational::zero();
            for i in 1..=n {
                acc += &self.coeffs[i] * &out[n - i];
            }
            out.push(-acc * &inv0);
        }
        Some(Self::new(-self.weight, out))
    }

    pub fn to_coeff_vector(&self) -> CoeffVector<usize> {
        self.coeffs.iter().cloned().enumerate().collect()
    }

    pub fn from_coeff_vector(weight: i64, precision: usize, v: &CoeffVector<usize>) -> Self {
        Self::new(weight, (0..precision).map(|n| v.coeff(&n)).collect())
    }
}

fn divisor_power_sum(n: u64, power: u32) -> i64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (d as i64).pow(power))
        .sum()
}

/// Normalized Eisenstein series of weight 4 or 6 (constant term 1).
pub fn eisenstein(k: i64, precision: usize) -> Result<QSeries> {
    let (factor, power) = match k {
        4 => (240, 3),
        6 => (-504, 5),
        _ => {
            return Err(Error::Unsupported(format!(
                "Eisenstein series of weight {k}; only 4 and 6 are provided"
            )))
        }
    };
    let coeffs = (0..precision)
        .map(|n| match n {
            0 => Rational::one(),
            _ => rat(factor * divisor_power_sum(n as u64, power)),
        })
        .collect();
    Ok(QSeries::new(k, coeffs))
}

/// `prod_{n >= 1} (1 - q^n)` to the given precision.
pub(crate) fn euler_product(precision: usize) -> QSeries {
    let mut acc = QSeries::one(precision);
    for n in 1..precision {
        let mut factor = QSeries::one(precision);
        factor.coeffs[n] = -Rational::one();
        acc = acc.mul(&factor);
    }
    acc
}

/// The discriminant cusp form `q prod (1 - q^n)^24`.
pub fn delta(precision: usize) -> QSeries {
    let eta24 = euler_product(precision).pow(24);
    let mut coeffs = vec![Rational::zero(); precision];
    if precision > 1 {
        coeffs[1..].clone_from_slice(&eta24.coeffs[..precision - 1]);
    }
    QSeries::new(12, coeffs)
}

/// Echelonized basis of `M_k` at precision `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllipticBasis {
    weight: i64,
    precision: usize,
    basis: EchelonBasis<usize>,
}

impl EllipticBasis {
    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn echelon(&self) -> &EchelonBasis<usize> {
        &self.basis
    }

    pub fn series(&self) -> Vec<QSeries> {
        self.basis
            .rows()
            .iter()
            .map(|row| QSeries::from_coeff_vector(self.weight, self.precision, row))
            .collect()
    }

    pub fn contains(&self, f: &QSeries) -> bool {
        self.basis.contains(&f.truncate(self.precision).to_coeff_vector())
    }
}

/// Exponent pairs `(a, b)` with `4a + 6b = k`.
pub fn eisenstein_monomials(k: i64) -> Vec<(u32, u32)> {
    if k < 0 || k % 2 != 0 {
        return Vec::new();
    }
    (0..=k / 6)
        .filter(|b| (k - 6 * b) % 4 == 0)
        .map(|b| (((k - 6 * b) / 4) as u32, b as u32))
        .collect()
}

/// Whether truncation at `precision` is injective on `M_k`: `B > k/12 + 1`.
pub fn elliptic_precision_ok(k: i64, precision: usize) -> bool {
    12 * precision as i64 > k + 12
}

/// Basis of `M_k` spanned by the monomials `E4^a E6^b`, echelonized.
pub fn mf_basis(k: i64, precision: usize) -> Result<EllipticBasis> {
    check_weight(k)?;
    if !elliptic_precision_ok(k, precision) {
        return Err(Error::PrecisionTooLow {
            what: format!("M_{k}"),
            precision,
            bound: format!("{k}/12 + 1"),
        });
    }
    let e4 = eisenstein(4, precision)?;
    let e6 = eisenstein(6, precision)?;
    let rows = eisenstein_monomials(k)
        .into_iter()
        .map(|(a, b)| e4.pow(a).mul(&e6.pow(b)).to_coeff_vector());
    let basis = echelonize(rows);
    Ok(EllipticBasis {
        weight: k,
        precision,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_small_cases() {
        assert_eq!(eisenstein(4, 3).unwrap(), QSeries::from_integers(4, &[1, 240, 2160]));
        assert_eq!(eisenstein(6, 2).unwrap(), QSeries::from_integers(6, &[1, -504]));
        assert_eq!(eisenstein(4, 1).unwrap(), QSeries::from_integers(4, &[1]));
        assert!(matches!(eisenstein(8, 3), Err(Error::Unsupported(_))));
    }

    #[test]
    fn delta_small_cases() {
        assert_eq!(delta(1), QSeries::from_integers(12, &[0]));
        assert_eq!(delta(2), QSeries::from_integers(12, &[0, 1]));
        assert_eq!(delta(3), QSeries::from_integers(12, &[0, 1, -24]));
        // Ramanujan tau: 1, -24, 252, -1472, 4830, -6048
        assert_eq!(delta(7), QSeries::from_integers(12, &[0, 1, -24, 252, -1472, 4830, -6048]));
    }

    #[test]
    fn series_products() {
        let one = QSeries::from_integers(0, &[1, 0]);
        assert_eq!(one.mul(&one), one);
        let e4 = eisenstein(4, 3).unwrap();
        // brute-force convolution of [1, 240, 2160] with itself
        assert_eq!(e4.mul(&e4), QSeries::from_integers(8, &[1, 480, 61920]));
        let f = eisenstein(6, 5).unwrap();
        assert!(f.mul(&delta(5)).coeffs()[0].is_zero());
    }

    #[test]
    fn mixing_clamps_precision() {
        let a = eisenstein(4, 5).unwrap();
        let b = eisenstein(4, 3).unwrap();
        assert_eq!(a.mul(&b).precision(), 3);
        assert_eq!(a.add(&b).unwrap().precision(), 3);
    }

    #[test]
    fn inverse_of_euler_product_counts_partitions() {
        let p = euler_product(8).inverse().unwrap();
        assert_eq!(p, QSeries::from_integers(0, &[1, 1, 2, 3, 5, 7, 11, 15]));
        assert!(delta(3).inverse().is_none());
    }

    #[test]
    fn add_requires_matching_weight() {
        let a = eisenstein(4, 3).unwrap();
        let b = eisenstein(6, 3).unwrap();
        assert!(matches!(a.add(&b), Err(Error::WeightMismatch(4, 6))));
    }

    #[test]
    fn basis_examples() {
        let b0 = mf_basis(0, 2).unwrap();
        assert_eq!(b0.series(), vec![QSeries::from_integers(0, &[1, 0])]);
        assert_eq!(mf_basis(12, 3).unwrap().dim(), 2);
        assert_eq!(mf_basis(2, 2).unwrap().dim(), 0);
        assert!(matches!(mf_basis(12, 2), Err(Error::PrecisionTooLow { .. })));
        assert!(matches!(mf_basis(5, 4), Err(Error::Unsupported(_))));
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(eisenstein_monomials(0), vec![(0, 0)]);
        assert!(eisenstein_monomials(2).is_empty());
        assert_eq!(eisenstein_monomials(12), vec![(3, 0), (0, 2)]);
        assert_eq!(eisenstein_monomials(24).len(), 3);
    }
}
