//! Divisor sums, partition numbers and index-`b` sublattices of `Z^2`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::exactq::{series_mul, ExactRational, TruncatedSeries};
use crate::{Error, Result};

/// `sigma(k)`, the sum of the positive divisors of `k`.
pub fn sigma(k: u64) -> Result<u64> {
    if k < 1 {
        return Err(Error::InvalidArgument("sigma is defined for k >= 1".into()));
    }
    let mut total = 0;
    let mut d = 1;
    while d * d <= k {
        if k.is_multiple_of(d) {
            total += d;
            if d * d != k {
                total += k / d;
            }
        }
        d += 1;
    }
    Ok(total)
}

/// `p(0), ..., p(n)` by Euler's pentagonal number recurrence
/// `p(m) = sum_{k>=1} (-1)^{k+1} (p(m - k(3k-1)/2) + p(m - k(3k+1)/2))`.
pub fn partitions_up_to(n: usize) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n + 1);
    p.push(BigInt::from(1));
    for m in 1..=n {
        let mut acc = BigInt::zero();
        for k in 1usize.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let mut term = p[m - g1].clone();
            let g2 = g1 + k;
            if g2 <= m {
                term += &p[m - g2];
            }
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|x| x.to_biguint().expect("partition numbers are positive"))
        .collect()
}

/// The number of partitions of `n`.
pub fn partition(n: usize) -> BigUint {
    partitions_up_to(n).pop().expect("non-empty")
}

/// `sum_{n <= order} p(n) q^n`, expanded from the product
/// `prod_{m=1}^{order} (1 - q^m)^{-1}` one geometric factor at a time.
///
/// This route shares nothing with [`partition`], so each checks the other.
pub fn partition_series(order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::one(order);
    for m in 1..=order {
        let geometric: Vec<ExactRational> = (0..=order)
            .map(|k| {
                if k % m == 0 {
                    ExactRational::one()
                } else {
                    ExactRational::zero()
                }
            })
            .collect();
        acc = series_mul(&acc, &TruncatedSeries::from_vec_unchecked(geometric));
    }
    acc
}

/// Upper-triangular Hermite normal form `[[a, b], [0, d]]` of a full-rank
/// sublattice of `Z^2`, spanned by the rows `(a, b)` and `(0, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnfMatrix {
    pub a: u64,
    pub b: u64,
    pub d: u64,
}

impl HnfMatrix {
    pub fn new(a: u64, b: u64, d: u64) -> Result<Self> {
        if a == 0 || d == 0 || b >= d {
            return Err(Error::InvalidArgument(format!(
                "[[{a},{b}],[0,{d}]] is not in Hermite normal form"
            )));
        }
        Ok(Self { a, b, d })
    }

    pub fn index(&self) -> u64 {
        self.a * self.d
    }

    /// Whether the integer vector `(x, y)` lies in the lattice.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        let (a, b, d) = (self.a as i64, self.b as i64, self.d as i64);
        if x.rem_euclid(a) != 0 {
            return false;
        }
        let k = x / a;
        (y - k * b).rem_euclid(d) == 0
    }
}

impl fmt::Display for HnfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[0,{}]]", self.a, self.b, self.d)
    }
}

/// Every sublattice of `Z^2` of index `b`, once each, in Hermite normal form.
pub fn enumerate_sublattices(b: u64) -> Result<Vec<HnfMatrix>> {
    if b < 1 {
        return Err(Error::InvalidArgument("lattice index must be >= 1".into()));
    }
    let mut out = Vec::new();
    for a in (1..=b).filter(|&a| b.is_multiple_of(a)) {
        let d = b / a;
        out.extend((0..d).map(|beta| HnfMatrix { a, b: beta, d }));
    }
    Ok(out)
}

pub fn sublattice_count(b: u64) -> Result<u64> {
    Ok(enumerate_sublattices(b)?.len() as u64)
}
