//! q-expansions of `G2`, its derivative, inverse eta products, and the two
//! closed-form curve-count generating series built from them.

use crate::arith::sigma;
use crate::exactq::{series_inv, series_mul, series_pow, ExactRational, TruncatedSeries};

/// Nodal fibers of a generic elliptic K3 surface.
pub const K3_NODAL_FIBERS: u32 = 24;
/// Nodal fibers of a generic rational elliptic surface.
pub const RES_NODAL_FIBERS: u32 = 12;

/// `G2(q) = -1/24 + sum_{k>=1} sigma(k) q^k`.
pub fn g2_series(order: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(ExactRational::new(-1, 24));
    coeffs.extend((1..=order as u64).map(|k| ExactRational::from(sigma(k).expect("k >= 1"))));
    TruncatedSeries::from_vec_unchecked(coeffs)
}

/// `dG2/dq = sum_{k>=1} k sigma(k) q^{k-1}`, through `q^order`.
pub fn g2_prime_series(order: usize) -> TruncatedSeries {
    let coeffs = (1..=order as u64 + 1)
        .map(|k| ExactRational::from(k * sigma(k).expect("k >= 1")))
        .collect();
    TruncatedSeries::from_vec_unchecked(coeffs)
}

/// `prod_{m>=1} (1 - q^m)^{-exponent}`. Factors with `m > order` are 1 at
/// this precision, so the product stops at `m = order`.
pub fn eta_product_inverse(exponent: u32, order: usize) -> TruncatedSeries {
    let one = TruncatedSeries::one(order);
    let euler = (1..=order).fold(one.clone(), |acc, m| {
        series_mul(&acc, &(&one - &TruncatedSeries::monomial(1, m, order)))
    });
    let inverse = series_inv(&euler).expect("constant term is 1");
    series_pow(&inverse, exponent)
}

/// `F_g = (dG2/dq)^g * q/Delta`, whose `q^n` coefficient is `N_g(n)`.
/// Uses `q/Delta = prod (1 - q^m)^{-24}`.
pub fn k3_generating_series(g: u32, order: usize) -> TruncatedSeries {
    closed_form(g, K3_NODAL_FIBERS, order)
}

/// `(dG2/dq)^g * (q/Delta)^{1/2}` for the rational elliptic surface, with the
/// square root taken exactly as `prod (1 - q^m)^{-12}`.
pub fn re_generating_series(g: u32, order: usize) -> TruncatedSeries {
    closed_form(g, RES_NODAL_FIBERS, order)
}

fn closed_form(g: u32, fibers: u32, order: usize) -> TruncatedSeries {
    series_mul(
        &series_pow(&g2_prime_series(order), g),
        &eta_product_inverse(fibers, order),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::series_deriv;

    fn ints(v: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_integers(v)
    }

    /// `prod_{m<=N} (1-q^m)^{-e}` by multiplying out geometric series in
    /// plain integers.
    fn product_oracle(e: u32, order: usize) -> Vec<i64> {
        let mut c = vec![0i64; order + 1];
        c[0] = 1;
        for m in 1..=order {
            for _ in 0..e {
                for k in m..=order {
                    c[k] += c[k - m];
                }
            }
        }
        c
    }

    #[test]
    fn g2_values() {
        assert_eq!(g2_series(0).coeffs(), &[ExactRational::new(-1, 24)]);
        let mut expected = vec![ExactRational::new(-1, 24)];
        expected.extend([1, 3, 4, 7].map(ExactRational::from));
        assert_eq!(g2_series(4).coeffs(), &expected[..]);
        assert_eq!(g2_series(2).coeffs(), &expected[..3]);
    }

    #[test]
    fn g2_prime_values() {
        assert_eq!(g2_prime_series(0), ints(&[1]));
        assert_eq!(g2_prime_series(2), ints(&[1, 6, 12]));
        assert_eq!(g2_prime_series(10), series_deriv(&g2_series(11)).unwrap());
    }

    #[test]
    fn eta_products() {
        assert_eq!(
            eta_product_inverse(1, 8),
            ints(&[1, 1, 2, 3, 5, 7, 11, 15, 22])
        );
        assert_eq!(eta_product_inverse(24, 3), ints(&[1, 24, 324, 3200]));
        assert_eq!(eta_product_inverse(12, 2), ints(&[1, 12, 90]));
        for e in [1, 2, 12, 24] {
            assert_eq!(
                eta_product_inverse(e, 15),
                ints(&product_oracle(e, 15)),
                "exponent {e}"
            );
        }
    }

    #[test]
    fn k3_series() {
        assert_eq!(k3_generating_series(0, 3), ints(&[1, 24, 324, 3200]));
        assert_eq!(k3_generating_series(1, 3), ints(&[1, 30, 480, 5460]));
        assert_eq!(k3_generating_series(2, 3), ints(&[1, 36, 672, 8728]));
        assert_eq!(k3_generating_series(3, 3), ints(&[1, 42, 900, 13220]));
    }

    #[test]
    fn re_series() {
        assert_eq!(re_generating_series(0, 0), ints(&[1]));
        assert_eq!(re_generating_series(0, 3), ints(&[1, 12, 90, 520]));
        assert_eq!(re_generating_series(1, 1), ints(&[1, 18]));
    }

    #[test]
    fn square_of_res_series_is_k3_series() {
        for n in 0..=30 {
            let re = re_generating_series(0, n);
            assert_eq!(series_mul(&re, &re), k3_generating_series(0, n));
        }
    }

    #[test]
    fn genus_factorisation() {
        for g in 0..=4 {
            let lhs = k3_generating_series(g, 12);
            let rhs = series_mul(
                &series_pow(&g2_prime_series(12), g),
                &k3_generating_series(0, 12),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coefficients_are_natural() {
        for g in 0..=5 {
            k3_generating_series(g, 30).to_naturals().unwrap();
            re_generating_series(g, 30).to_naturals().unwrap();
        }
    }

    /// Coefficient `n` of `prod (1-q^m)^{-24}` as the 24-fold sum over
    /// `a_1 + ... + a_24 = n` of `prod p(a_j)`, enumerated slot by slot.
    #[test]
    fn eta24_is_24_fold_partition_convolution() {
        let p = [1u64, 1, 2, 3, 5, 7, 11];
        fn slots(left: usize, budget: usize, p: &[u64]) -> u64 {
            if left == 0 {
                return u64::from(budget == 0);
            }
            (0..=budget)
                .map(|a| p[a] * slots(left - 1, budget - a, p))
                .sum()
        }
        let eta = eta_product_inverse(24, 6).to_naturals().unwrap();
        for (n, coeff) in eta.iter().enumerate() {
            assert_eq!(*coeff, slots(24, n, &p).into(), "n = {n}");
        }
    }
}
