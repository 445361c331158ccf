//! Exact dense linear algebra over the rationals and fraction-free integer
//! determinants.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::Q;

/// Reduced row echelon form; returns the reduced matrix and pivot columns.
pub fn rref(mut m: Vec<Vec<Q>>, ncols: usize) -> (Vec<Vec<Q>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(sel) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, sel);
        let inv = Q::one() / &m[row][col];
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let delta = &factor * &m[row][c];
                    m[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank(m: &[Vec<Q>], ncols: usize) -> usize {
    rref(m.to_vec(), ncols).1.len()
}

/// A basis of `{v : m v = 0}`, one vector per free column.
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let (r, pivots) = rref(m.to_vec(), ncols);
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![Q::zero(); ncols];
        v[free] = Q::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -r[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Coordinates that vanish on every kernel vector.
pub fn forced_zero(basis: &[Vec<Q>], ncols: usize) -> Vec<usize> {
    (0..ncols)
        .filter(|&c| basis.iter().all(|v| v[c].is_zero()))
        .collect()
}

/// A kernel vector with every coordinate in `required` nonzero, trying
/// `sum_b s^b B_b` for `s = 1, 2, ...`. `None` when some required coordinate
/// is forced to zero.
pub fn kernel_witness(basis: &[Vec<Q>], ncols: usize, required: &[usize]) -> Option<Vec<Q>> {
    let forced = forced_zero(basis, ncols);
    if required.iter().any(|c| forced.contains(c)) {
        return None;
    }
    if basis.is_empty() {
        return required.is_empty().then(|| alloc::vec![Q::zero(); ncols]);
    }
    // each required coordinate is a nonzero polynomial in s of degree < basis.len(),
    // so at most required.len() * basis.len() values of s fail
    for s in 1..=(required.len() * basis.len() + 1) as i64 {
        let mut v = alloc::vec![Q::zero(); ncols];
        let mut w = Q::one();
        for b in basis {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi += &w * bi;
            }
            w *= Q::from_integer(BigInt::from(s));
        }
        if required.iter().all(|&c| !v[c].is_zero()) {
            return Some(v);
        }
    }
    None
}

/// Determinant by Bareiss fraction-free elimination.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Rank of an integer matrix, via the rational elimination.
pub fn int_rank(m: &[Vec<BigInt>]) -> usize {
    let ncols = m.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Q>> = m
        .iter()
        .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
        .collect();
    rank(&rows, ncols)
}
