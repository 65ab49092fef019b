//! Small exact-arithmetic helpers shared by the other modules.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `u128` gcd that drops to `u64` once both operands fit, which is far cheaper.
pub(crate) fn gcd_u128(a: u128, b: u128) -> u128 {
    match (u64::try_from(a), u64::try_from(b)) {
        (Ok(x), Ok(y)) => x.gcd(&y) as u128,
        _ => a.gcd(&b),
    }
}

pub(crate) fn gcd_all(values: impl IntoIterator<Item = u64>) -> u64 {
    values.into_iter().fold(0, |acc, x| acc.gcd(&x))
}

/// Largest size handled by the fixed-size `i128` fast path.
const SMALL: usize = 8;
type Small = [[i128; SMALL]; SMALL];

/// Bareiss elimination in `i128` on the leading `n x n` block; `None` on overflow.
fn det_small(mut m: Small, n: usize) -> Option<i128> {
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i128 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

/// As [`det_small`] in `i64`, which is much cheaper to divide.
fn det_small_i64(mut m: [[i64; SMALL]; SMALL], n: usize) -> Option<i64> {
    if n == 0 {
        return Some(1);
    }
    let mut negate = false;
    let mut prev: i64 = 1;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(m[k][k])?;
                let b = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = a.checked_sub(b)? / prev;
            }
        }
        prev = m[k][k];
    }
    let d = m[n - 1][n - 1];
    Some(if negate { -d } else { d })
}

fn to_small(matrix: &[Vec<u32>]) -> Option<Small> {
    if matrix.len() > SMALL {
        return None;
    }
    let mut m = [[0i128; SMALL]; SMALL];
    for (i, row) in matrix.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            m[i][j] = x as i128;
        }
    }
    Some(m)
}

/// Determinant in `i128` for matrices up to 8 x 8; `None` on overflow or size.
pub(crate) fn det_i128(matrix: &[Vec<u32>]) -> Option<i128> {
    det_fast(&to_small(matrix)?, matrix.len())
}

/// Tries `i64` first and falls back to `i128`.
fn det_fast(m: &Small, n: usize) -> Option<i128> {
    let mut narrow = [[0i64; SMALL]; SMALL];
    let mut fits = true;
    for i in 0..n {
        for j in 0..n {
            match i64::try_from(m[i][j]) {
                Ok(x) => narrow[i][j] = x,
                Err(_) => fits = false,
            }
        }
    }
    if fits {
        if let Some(d) = det_small_i64(narrow, n) {
            return Some(d as i128);
        }
    }
    det_small(*m, n)
}

/// Cramer numerators `det(A_i)` (column `i` replaced by ones) and `det(A)`,
/// so that `A x = 1` has `x_i = det(A_i)/det(A)`. `None` on overflow or size.
pub(crate) fn cramer_ones_i128(matrix: &[Vec<u32>]) -> Option<(Vec<i128>, i128)> {
    let n = matrix.len();
    let a = to_small(matrix)?;
    let det = det_fast(&a, n)?;
    let mut nums = Vec::with_capacity(n);
    for i in 0..n {
        let mut ai = a;
        for row in ai.iter_mut().take(n) {
            row[i] = 1;
        }
        nums.push(det_fast(&ai, n)?);
    }
    Some((nums, det))
}

/// Exact determinant of a square integer matrix (fraction-free Bareiss elimination).
pub fn determinant(matrix: &[Vec<u32>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    if let Some(d) = det_i128(matrix) {
        return BigInt::from(d);
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
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
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Solves `A x = b` over the rationals. Returns `None` when `A` is singular.
pub fn solve_rational(
    matrix: &[Vec<BigRational>],
    rhs: &[BigRational],
) -> Option<Vec<BigRational>> {
    let n = matrix.len();
    let mut aug: Vec<Vec<BigRational>> = matrix
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (x, p) in aug[r].iter_mut().zip(&pivot_row).skip(col) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Clears denominators of a rational vector and divides by the common gcd, keeping signs.
pub(crate) fn primitive_integer_vector(values: &[BigRational]) -> Vec<BigInt> {
    let denom = values
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|x| x.numer() * (&denom / x.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

pub(crate) fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}
