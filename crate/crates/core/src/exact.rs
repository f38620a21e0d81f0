//! Exact integer helpers shared by the trace and spectrum engines.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: usize, r: usize) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn pow(base: i64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

/// Binomial as `f64`, used only for feasibility predictions.
pub fn binomial_f64(n: usize, r: usize) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Determinant of a square integer matrix (row-major) by fraction-free
/// Gaussian elimination. Tries `i128` first and redoes the work in big
/// integers on overflow.
pub fn determinant(n: usize, a: &[i64]) -> BigInt {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return BigInt::one();
    }
    match bareiss_i128(n, a) {
        Some(d) => BigInt::from(d),
        None => bareiss_big(n, a),
    }
}

/// [`determinant`] without the big-integer fallback; `None` on overflow.
pub fn determinant_i128(n: usize, a: &[i64]) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    bareiss_i128(n, a)
}

fn bareiss_i128(n: usize, a: &[i64]) -> Option<i128> {
    let mut m: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k * n + k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| m[r * n + k] != 0) else {
                return Some(0);
            };
            for c in 0..n {
                m.swap(k * n + c, swap * n + c);
            }
            sign = -sign;
        }
        let pivot = m[k * n + k];
        for i in k + 1..n {
            for j in k + 1..n {
                let t = m[i * n + j]
                    .checked_mul(pivot)?
                    .checked_sub(m[i * n + k].checked_mul(m[k * n + j])?)?;
                m[i * n + j] = t / prev;
            }
        }
        prev = pivot;
    }
    Some(sign * m[n * n - 1])
}

fn bareiss_big(n: usize, a: &[i64]) -> BigInt {
    let mut m: Vec<BigInt> = a.iter().map(|&x| BigInt::from(x)).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !m[r * n + k].is_zero()) {
                Some(swap) => {
                    for c in 0..n {
                        m.swap(k * n + c, swap * n + c);
                    }
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        let pivot = m[k * n + k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i * n + j] * &pivot - &m[i * n + k] * &m[k * n + j];
                m[i * n + j] = t.div_floor(&prev);
            }
        }
        prev = pivot;
    }
    let d = m[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// `gcd` of a slice of big integers, always nonnegative.
pub fn content(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |g, v| g.gcd(v)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(2, 5), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520u64));
        assert!((binomial_f64(30, 15) - 155_117_520.0).abs() < 1e-3);
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(0, &[]), BigInt::one());
        assert_eq!(determinant(2, &[1, 2, 3, 4]), BigInt::from(-2));
        assert_eq!(
            determinant(3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(3, &[2, -1, -1, -1, 2, -1, -1, -1, 2]),
            BigInt::zero()
        );
        // Laplacian minor of the complete digraph on 4 vertices: 4^2 spanning trees.
        assert_eq!(
            determinant(3, &[3, -1, -1, -1, 3, -1, -1, -1, 3]),
            BigInt::from(16)
        );
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let big = 1i64 << 50;
        let a = [big, 1, 1, 1, big, 1, 1, 1, big];
        let b = BigInt::from(big);
        let expected = &b * &b * &b - 3 * &b + 2;
        assert_eq!(determinant(3, &a), expected);
    }
}
