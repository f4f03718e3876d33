//! Exact dense linear algebra over `Z` and `Q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Leading principal minors of a square integer matrix, computed by
/// fraction-free (Bareiss) elimination without pivoting.
///
/// Stops after the first minor that is not strictly positive; that minor is
/// the last element of the returned vector.
pub fn leading_minors_until_nonpositive(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a.to_vec();
    let mut prev = BigInt::one();
    let mut minors = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = m[k][k].clone();
        minors.push(pivot.clone());
        if !pivot.is_positive() {
            break;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = (&pivot * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = pivot;
    }
    minors
}

/// Inverse of a nonsingular rational matrix by Gauss–Jordan elimination.
/// Returns `None` for singular input.
pub fn invert(a: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col].clone();
        for j in 0..n {
            m[col][j] = &m[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let t = &f * &m[col][j];
                m[r][j] -= t;
                let t = &f * &inv[col][j];
                inv[r][j] -= t;
            }
        }
    }
    Some(inv)
}

pub fn to_rational(a: &[Vec<BigInt>]) -> Vec<Vec<BigRational>> {
    a.iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

/// `floor(sqrt(r))` for a nonnegative rational, exactly.
pub fn floor_sqrt(r: &BigRational) -> BigInt {
    assert!(!r.is_negative(), "square root of a negative number");
    // floor(sqrt(p/q)) = floor(isqrt(p*q) / q)
    let p = r.numer();
    let q = r.denom();
    (p * q).sqrt() / q
}
