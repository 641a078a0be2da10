use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{HomologyError, IntPolynomial};

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n), size (m+n)×(m+n).
pub fn sylvester_matrix(p: &IntPolynomial, q: &IntPolynomial) -> Vec<Vec<BigInt>> {
    let m = p.degree().unwrap_or(0);
    let n = q.degree().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in p.coeffs().iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (i, c) in q.coeffs().iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// `|Res(p, q)|`, exact.
pub fn resultant(p: &IntPolynomial, q: &IntPolynomial) -> Result<BigInt, HomologyError> {
    if p.is_zero() || q.is_zero() {
        return Err(HomologyError::ZeroPolynomial);
    }
    Ok(bareiss_determinant(sylvester_matrix(p, q)).abs())
}

/// `(Res(p, t^{n/2} - 1), Res(p, t^{n/2} + 1))`, whose product is `Res(p, t^n - 1)`.
pub fn resultant_split(p: &IntPolynomial, n: usize) -> Result<(BigInt, BigInt), HomologyError> {
    if n % 2 != 0 || n == 0 {
        return Err(HomologyError::OddDegree(n));
    }
    let a = resultant(p, &IntPolynomial::binomial(n / 2, -1))?;
    let b = resultant(p, &IntPolynomial::binomial(n / 2, 1))?;
    Ok((a, b))
}
