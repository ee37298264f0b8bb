//! Independent cross-checks for the Fourier-Jacobi pipeline.
//!
//! Nothing here reads the internals of [`crate::formal_fj`]; the module
//! only consumes its public expansion types.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Pow, Zero};

use crate::error::{check_weight, Error, Result};
use crate::formal_fj::FormalFJTruncation;
use crate::jacobi::{canonical_keys, discriminant, isqrt, JacobiExpansion};
use crate::linalg::{CoeffVector, Rational};

/// Number of `(a, b, c, d) >= 0` with `4a + 6b + 10c + 12d = k`, the
/// dimension of the space of even-weight degree-2 forms.
pub fn dim_siegel_even(k: i64) -> Result<usize> {
    check_weight(k)?;
    let mut count = 0;
    for d in 0..=k / 12 {
        for c in 0..=(k - 12 * d) / 10 {
            let rest = k - 12 * d - 10 * c;
            for b in 0..=rest / 6 {
                if (rest - 6 * b) % 4 == 0 {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Number of `(a, b) >= 0` with `4a + 6b = k`: `dim M_k` in level one.
pub fn dim_elliptic(k: i64) -> usize {
    if k < 0 || k % 2 != 0 {
        return 0;
    }
    (0..=k / 6).filter(|b| (k - 6 * b) % 4 == 0).count()
}

/// `dim_siegel_even` for every even `k <= max_weight`, read off the power
/// series `1 / ((1 - t^4)(1 - t^6)(1 - t^10)(1 - t^12))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionTable {
    entries: BTreeMap<i64, usize>,
}

impl DimensionTable {
    pub fn up_to(max_weight: i64) -> Self {
        let len = max_weight.max(0) as usize + 1;
        let mut series = vec![0usize; len];
        series[0] = 1;
        for generator in [4usize, 6, 10, 12] {
            // multiply by 1 / (1 - t^g)
            for i in generator..len {
                series[i] += series[i - generator];
            }
        }
        let entries = series
            .into_iter()
            .enumerate()
            .filter(|(k, _)| k % 2 == 0)
            .map(|(k, d)| (k as i64, d))
            .collect();
        Self { entries }
    }

    pub fn get(&self, k: i64) -> Option<usize> {
        self.entries.get(&k).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.entries.iter().map(|(&k, &d)| (k, d))
    }
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// Saito-Kurokawa (Maass) lift of an index-1 Jacobi cusp form:
/// `c(n, r, m) = sum_{d | gcd(n, r, m)} d^(k-1) c(phi; nm/d^2, r/d)`.
///
/// Reading `c(phi; nm, r)` needs `phi` to precision `(B - 1)^2 + 1`.
pub fn saito_kurokawa_lift(phi: &JacobiExpansion, precision: usize) -> Result<FormalFJTruncation> {
    let k = phi.weight();
    check_weight(k)?;
    if phi.index() != 1 {
        return Err(Error::InvalidInput(format!(
            "lift needs an index-1 form, got index {}",
            phi.index()
        )));
    }
    if !phi.is_cusp() {
        return Err(Error::InvalidInput("lift needs a cusp form".into()));
    }
    let needed = (precision.saturating_sub(1)).pow(2) + 1;
    if phi.precision() < needed {
        return Err(Error::PrecisionTooLow {
            what: format!("lifting to precision {precision}"),
            precision: phi.precision(),
            bound: format!("{}", needed - 1),
        });
    }
    let exponent = (k - 1) as u32;
    let components = (0..precision as i64)
        .map(|m| {
            let coeffs: CoeffVector<_> = canonical_keys(m, precision, true)
                .into_iter()
                .map(|(n, r)| {
                    let g = gcd3(n, r, m);
                    let mut total = Rational::zero();
                    for d in (1..=g).filter(|d| g % d == 0) {
                        let weight = Rational::from_integer(BigInt::from(d).pow(exponent));
                        let c = phi
                            .coeff(n * m / (d * d), r / d)
                            .expect("precision checked above");
                        total += weight * c;
                    }
                    ((n, r), total)
                })
                .collect();
            JacobiExpansion::new(k, m, precision, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    FormalFJTruncation::new(k, components)
}

/// Product of two formal expansions computed directly on Fourier indices:
/// `c(T) = sum_{T1 + T2 = T} c1(T1) c2(T2)` over semidefinite `T1, T2`.
pub fn siegel_product(a: &FormalFJTruncation, b: &FormalFJTruncation) -> Result<FormalFJTruncation> {
    if a.precision() != b.precision() {
        return Err(Error::PrecisionMismatch(a.precision(), b.precision()));
    }
    let precision = a.precision();
    let k = a.weight() + b.weight();
    let components = (0..precision as i64)
        .map(|m| {
            let coeffs: CoeffVector<_> = canonical_keys(m, precision, true)
                .into_iter()
                .map(|(n, r)| ((n, r), product_coefficient(a, b, n, r, m)))
                .collect();
            JacobiExpansion::new(k, m, precision, coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    FormalFJTruncation::new(k, components)
}

fn product_coefficient(a: &FormalFJTruncation, b: &FormalFJTruncation, n: i64, r: i64, m: i64) -> Rational {
    let mut total = Rational::zero();
    for m1 in 0..=m {
        for n1 in 0..=n {
            let (m2, n2) = (m - m1, n - n1);
            let bound = isqrt(4 * n1 * m1);
            for r1 in -bound..=bound {
                let r2 = r - r1;
                if discriminant(n2, r2, m2) < 0 {
                    continue;
                }
                let c1 = a.coeff(n1, r1, m1).expect("inside window");
                if c1.is_zero() {
                    continue;
                }
                let c2 = b.coeff(n2, r2, m2).expect("inside window");
                total += c1 * c2;
            }
        }
    }
    total
}
