//! Nonsingularity of the falling-factorial system met when every `q_i >= N/2`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::linalg::{bareiss_det, int_rank};
use crate::error::{Error, Result};
use crate::rat::falling_factorial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VandermondeCertificate {
    pub ps: Vec<u32>,
    /// Row `t`, column `i`: `p_i (p_i - 1) ... (p_i - t)`.
    pub falling_factorial: Vec<Vec<BigInt>>,
    /// Row `t`, column `i`: `p_i^(t+1)`.
    pub vandermonde: Vec<Vec<BigInt>>,
    /// Lower unitriangular `S` with `falling_factorial = S * vandermonde`.
    pub transform: Vec<Vec<BigInt>>,
    pub det_falling_factorial: BigInt,
    pub det_vandermonde: BigInt,
    /// `prod p_i * prod_{i<j} (p_j - p_i)`
    pub det_closed_form: BigInt,
    pub rank_falling_factorial: usize,
    pub rank_vandermonde: usize,
}

impl VandermondeCertificate {
    /// Both matrices have full rank and the determinants agree with the
    /// closed form.
    pub fn trivial_kernel(&self) -> bool {
        let m = self.ps.len();
        self.rank_falling_factorial == m
            && self.rank_vandermonde == m
            && !self.det_vandermonde.is_zero()
            && self.det_vandermonde == self.det_closed_form
            && self.det_falling_factorial == self.det_vandermonde
    }
}

/// Signed Stirling numbers of the first kind `s(n, k)` for `n <= max`.
fn stirling_first(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = alloc::vec![alloc::vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = &s[n - 1][k - 1] - BigInt::from(n as u64 - 1) * &s[n - 1][k];
        }
    }
    s
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// Certifies for the first `depth` entries of `ps` that the falling-factorial
/// matrix and the Vandermonde matrix it reduces to are nonsingular.
pub fn vandermonde_certificate(ps: &[u32], depth: usize) -> Result<VandermondeCertificate> {
    if depth == 0 || depth > ps.len() {
        return Err(Error::InvalidDepth { depth, len: ps.len() });
    }
    for (i, p) in ps.iter().enumerate() {
        if ps[..i].contains(p) {
            return Err(Error::DuplicateExponent(*p));
        }
    }
    let cols = &ps[..depth];
    let ff: Vec<Vec<BigInt>> = (0..depth)
        .map(|t| cols.iter().map(|&p| falling_factorial(p, t as u32 + 1)).collect())
        .collect();
    let vm: Vec<Vec<BigInt>> = (0..depth)
        .map(|t| cols.iter().map(|&p| BigInt::from(p).pow(t as u32 + 1)).collect())
        .collect();
    let st = stirling_first(depth);
    let transform: Vec<Vec<BigInt>> = (0..depth)
        .map(|t| (1..=depth).map(|s| st[t + 1][s].clone()).collect())
        .collect();
    debug_assert_eq!(mat_mul(&transform, &vm), ff);
    if mat_mul(&transform, &vm) != ff {
        return Err(Error::MalformedParams("falling-factorial reduction mismatch".into()));
    }
    let mut closed = cols.iter().fold(BigInt::one(), |acc, &p| acc * BigInt::from(p));
    for i in 0..depth {
        for j in i + 1..depth {
            closed *= BigInt::from(cols[j] as i64 - cols[i] as i64);
        }
    }
    Ok(VandermondeCertificate {
        ps: cols.to_vec(),
        det_falling_factorial: bareiss_det(&ff),
        det_vandermonde: bareiss_det(&vm),
        det_closed_form: closed,
        rank_falling_factorial: int_rank(&ff),
        rank_vandermonde: int_rank(&vm),
        falling_factorial: ff,
        vandermonde: vm,
        transform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_cases() {
        let c = vandermonde_certificate(&[1, 2], 2).unwrap();
        assert_eq!(c.falling_factorial, ints(&[&[1, 2], &[0, 2]]));
        assert_eq!(c.det_falling_factorial, BigInt::from(2));
        assert!(c.trivial_kernel());
        let c = vandermonde_certificate(&[1, 2, 3], 3).unwrap();
        assert_eq!(c.vandermonde, ints(&[&[1, 2, 3], &[1, 4, 9], &[1, 8, 27]]));
        assert_eq!(c.det_vandermonde, BigInt::from(12));
        assert!(c.trivial_kernel());
        for p in 1..=10 {
            assert!(vandermonde_certificate(&[p], 1).unwrap().trivial_kernel());
        }
    }

    #[test]
    fn errors() {
        assert_eq!(vandermonde_certificate(&[2, 2], 2), Err(Error::DuplicateExponent(2)));
        assert_eq!(
            vandermonde_certificate(&[1, 2], 3),
            Err(Error::InvalidDepth { depth: 3, len: 2 })
        );
    }
}
