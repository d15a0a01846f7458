use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigUint;

use super::ExactRational;
use crate::{Error, Result};

/// A power series in `q` known through `q^order`.
///
/// Invariant: `coeffs.len() == order + 1`, so the vector is never empty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactRational>,
}

impl TruncatedSeries {
    pub fn constant(c: impl Into<ExactRational>, order: usize) -> Self {
        let mut coeffs = vec![ExactRational::zero(); order + 1];
        coeffs[0] = c.into();
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(ExactRational::zero(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::constant(ExactRational::one(), order)
    }

    /// `c * q^k`, which is the zero series when `k > order`.
    pub fn monomial(c: impl Into<ExactRational>, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c.into();
        }
        s
    }

    /// Builds a series from integer coefficients; the order is `len - 1`.
    ///
    /// Panics on an empty slice.
    pub fn from_integers<T: Copy + Into<ExactRational>>(coeffs: &[T]) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self {
            coeffs: coeffs.iter().map(|&c| c.into()).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<ExactRational>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `q^k`; `None` above the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&ExactRational> {
        self.coeffs.get(k)
    }

    /// Drops every coefficient above `q^order`. Orders above the current
    /// one are clamped, since those coefficients are unknown.
    pub fn truncate(&self, order: usize) -> Self {
        let keep = order.min(self.order()) + 1;
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order()) + 1;
        Self {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    /// Every coefficient as a natural number, or an error naming the first
    /// one that is negative or fractional.
    pub fn to_naturals(&self) -> Result<Vec<BigUint>> {
        self.coeffs
            .iter()
            .map(|c| {
                c.to_natural()
                    .ok_or_else(|| Error::NotANaturalNumber(c.to_string()))
            })
            .collect()
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()?;
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order() + 1)
    }
}

pub fn series_from_coeffs(coeffs: Vec<ExactRational>, order: usize) -> Result<TruncatedSeries> {
    if coeffs.len() != order + 1 {
        return Err(Error::LengthMismatch {
            len: coeffs.len(),
            expected: order + 1,
        });
    }
    Ok(TruncatedSeries { coeffs })
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let n = a.order().min(b.order()) + 1;
    TruncatedSeries {
        coeffs: (0..n).map(|k| &a.coeffs[k] + &b.coeffs[k]).collect(),
    }
}

/// Cauchy product, truncated to the smaller order.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> TruncatedSeries {
    let order = a.order().min(b.order());
    let mut coeffs = vec![ExactRational::zero(); order + 1];
    for (i, x) in a.coeffs[..=order].iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs[..=order - i].iter().enumerate() {
            if !y.is_zero() {
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
    }
    TruncatedSeries { coeffs }
}

/// `a^e` by repeated squaring; `a^0` is the constant 1 at `a`'s order.
pub fn series_pow(a: &TruncatedSeries, e: u32) -> TruncatedSeries {
    let mut result = TruncatedSeries::one(a.order());
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = series_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = series_mul(&base, &base);
        }
    }
    result
}

/// Multiplicative inverse, solving `a * b = 1` one coefficient at a time:
/// `b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}`.
pub fn series_inv(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    let inv0 = a.coeffs[0].recip()?;
    let order = a.order();
    let mut b: Vec<ExactRational> = Vec::with_capacity(order + 1);
    b.push(inv0.clone());
    for n in 1..=order {
        let acc: ExactRational = (1..=n)
            .filter(|&k| !a.coeffs[k].is_zero())
            .map(|k| &a.coeffs[k] * &b[n - k])
            .sum();
        b.push(-(acc * &inv0));
    }
    Ok(TruncatedSeries { coeffs: b })
}

/// Formal derivative `d/dq`; the result has order one less than the input.
pub fn series_deriv(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    if a.order() == 0 {
        return Err(Error::DerivativeOfOrderZero);
    }
    Ok(TruncatedSeries {
        coeffs: a.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c * &ExactRational::from(k + 1))
            .collect(),
    })
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        series_add(self, rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::sub(self, rhs)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        series_mul(self, rhs)
    }
}
