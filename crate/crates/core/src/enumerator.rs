//! Weight enumerators, Krawtchouk polynomials and the MacWilliams transform.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::code::{EaqecCode, GroupKind};
use crate::error::{CodeError, EnumeratorError};
use crate::symplectic::{check_cap, for_each_element, SymplecticMatrix, DEFAULT_ENUMERATION_CAP};

/// Weight distribution `(A_0, ..., A_n)` of a group of order `2^log2_order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightEnumerator {
    n: usize,
    coeffs: Vec<BigInt>,
    log2_order: u32,
}

impl WeightEnumerator {
    /// Checks `A_0 = 1`, nonnegativity and `sum = 2^log2_order`.
    pub fn new(n: usize, coeffs: Vec<BigInt>, log2_order: u32) -> Result<Self, EnumeratorError> {
        if coeffs.len() != n + 1 {
            return Err(EnumeratorError::Length {
                expected: n + 1,
                found: coeffs.len(),
            });
        }
        if !coeffs[0].is_one() {
            return Err(EnumeratorError::IdentityCoefficient);
        }
        if let Some(w) = coeffs.iter().position(|a| a.is_negative()) {
            return Err(EnumeratorError::Negative { w });
        }
        if log2_order as usize > 2 * n {
            return Err(EnumeratorError::OrderTooLarge {
                log2_order,
                max: 2 * n as u32,
            });
        }
        let sum: BigInt = coeffs.iter().sum();
        if sum != BigInt::one() << log2_order {
            return Err(EnumeratorError::Order {
                sum: sum.to_string(),
                log2_order,
            });
        }
        Ok(WeightEnumerator {
            n,
            coeffs,
            log2_order,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_u64(n: usize, coeffs: &[u64], log2_order: u32) -> Result<Self, EnumeratorError> {
        WeightEnumerator::new(n, coeffs.iter().map(|&a| BigInt::from(a)).collect(), log2_order)
    }

    /// Like [`WeightEnumerator::new`] but infers the order from the sum, which
    /// must be a power of two.
    pub fn with_inferred_order(n: usize, coeffs: Vec<BigInt>) -> Result<Self, EnumeratorError> {
        let sum: BigInt = coeffs.iter().sum();
        let bits = if sum.is_positive() { sum.bits() - 1 } else { 0 };
        WeightEnumerator::new(n, coeffs, bits as u32)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn log2_order(&self) -> u32 {
        self.log2_order
    }

    /// Coefficients as comma-separated decimal integers.
    pub fn coeffs_csv(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Key/value record with the group label.
    pub fn to_record(&self, label: &str) -> String {
        format!(
            "n={}\ngroup={}\nlog2_order={}\ncoeffs={}\n",
            self.n,
            label,
            self.log2_order,
            self.coeffs_csv()
        )
    }

    /// CSV row `n,label,c0,...,cn`.
    pub fn to_csv_row(&self, label: &str) -> String {
        format!("{},{},{}", self.n, label, self.coeffs_csv())
    }

    /// Evaluates `sum_w A_w x^w`.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + bigint_to_f64(a))
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.coeffs_csv())
    }
}

pub(crate) fn bigint_to_f64(a: &BigInt) -> f64 {
    a.to_string().parse().unwrap_or(f64::NAN)
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `P_w(w', n) = sum_u (-1)^u 3^(w-u) C(w', u) C(n - w', w - u)`.
///
/// ```
/// use eaqec::enumerator::krawtchouk;
/// use num_bigint::BigInt;
///
/// assert_eq!(krawtchouk(3, 2, 3).unwrap(), BigInt::from(3));
/// assert_eq!(krawtchouk(3, 3, 3).unwrap(), BigInt::from(-1));
/// ```
pub fn krawtchouk(w: usize, wp: usize, n: usize) -> Result<BigInt, EnumeratorError> {
    if w > n || wp > n {
        return Err(EnumeratorError::KrawtchoukRange { w, wp, n });
    }
    Ok(krawtchouk_unchecked(w, wp, n))
}

pub(crate) fn krawtchouk_unchecked(w: usize, wp: usize, n: usize) -> BigInt {
    let three = BigInt::from(3);
    let mut acc = BigInt::zero();
    for u in 0..=w {
        let term = num_traits::pow(three.clone(), w - u) * binomial(wp, u) * binomial(n - wp, w - u);
        if u % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// The full `(n+1) x (n+1)` table `K[w][w'] = P_w(w', n)`.
pub fn krawtchouk_matrix(n: usize) -> Vec<Vec<BigInt>> {
    (0..=n)
        .map(|w| (0..=n).map(|wp| krawtchouk_unchecked(w, wp, n)).collect())
        .collect()
}

/// Histogram of weights over the group generated by `generators`.
pub fn weight_enumerator(generators: &SymplecticMatrix) -> Result<WeightEnumerator, EnumeratorError> {
    weight_enumerator_with_cap(generators, DEFAULT_ENUMERATION_CAP)
}

pub fn weight_enumerator_with_cap(
    generators: &SymplecticMatrix,
    cap: u64,
) -> Result<WeightEnumerator, EnumeratorError> {
    check_cap(generators.len(), cap)?;
    if !generators.is_independent() {
        return Err(crate::error::SymplecticError::DependentRows.into());
    }
    let n = generators.num_qubits();
    let mut hist = vec![0u64; n + 1];
    for_each_element(generators.rows(), n, |p, _| {
        hist[p.weight()] += 1;
        true
    });
    WeightEnumerator::from_u64(n, &hist, generators.len() as u32)
}

impl EaqecCode {
    /// Weight enumerator of one of the code's four groups.
    pub fn enumerator(&self, group: GroupKind) -> Result<WeightEnumerator, CodeError> {
        self.require_valid()?;
        weight_enumerator(&self.generators(group)).map_err(|e| match e {
            EnumeratorError::Symplectic(s) => CodeError::Symplectic(s),
            other => CodeError::Invalid(other.to_string()),
        })
    }
}

/// `B_w = 2^-m sum_w' P_w(w', n) A_w'`, the enumerator of the symplectic
/// complement. Errors if any output is fractional or negative, which means
/// the input cannot be the enumerator of a group.
///
/// ```
/// use eaqec::enumerator::{macwilliams_transform, WeightEnumerator};
///
/// let a = WeightEnumerator::from_u64(3, &[1, 0, 9, 6], 4).unwrap();
/// let b = macwilliams_transform(&a).unwrap();
/// assert_eq!(b.to_string(), "1,0,0,3");
/// assert_eq!(b.log2_order(), 2);
/// ```
pub fn macwilliams_transform(a: &WeightEnumerator) -> Result<WeightEnumerator, EnumeratorError> {
    let n = a.n;
    let order = BigInt::one() << a.log2_order;
    let mut out = Vec::with_capacity(n + 1);
    for w in 0..=n {
        let mut acc = BigInt::zero();
        for (wp, aw) in a.coeffs.iter().enumerate() {
            if !aw.is_zero() {
                acc += krawtchouk_unchecked(w, wp, n) * aw;
            }
        }
        let (q, r) = acc.div_rem(&order);
        if !r.is_zero() {
            return Err(EnumeratorError::NonIntegral { w });
        }
        if q.is_negative() {
            return Err(EnumeratorError::NegativeOutput { w });
        }
        out.push(q);
    }
    WeightEnumerator::new(n, out, 2 * n as u32 - a.log2_order)
}

fn first_gap(b: &WeightEnumerator, c: &WeightEnumerator) -> Result<usize, EnumeratorError> {
    if b.n != c.n {
        return Err(EnumeratorError::LengthMismatch {
            left: b.n,
            right: c.n,
        });
    }
    (1..=b.n)
        .find(|&w| b.coeffs[w] > c.coeffs[w])
        .ok_or(EnumeratorError::NoDistance)
}

/// Smallest `w > 0` with `B_w > C_w`: the code distance.
pub fn distance_from_enumerators(
    b: &WeightEnumerator,
    c_iso: &WeightEnumerator,
) -> Result<usize, EnumeratorError> {
    first_gap(b, c_iso)
}

/// Smallest `w > 0` with `A_w > C_w`: the distance of the dual code.
pub fn dual_distance_from_enumerators(
    a: &WeightEnumerator,
    c_iso: &WeightEnumerator,
) -> Result<usize, EnumeratorError> {
    first_gap(a, c_iso)
}
