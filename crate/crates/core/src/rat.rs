//! Rational scalars and the integer combinatorics used by the expansions.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_int(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// Parses `"a"`, `"-a"` or `"a/b"` with integer `a`, `b` (`b != 0`).
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Q::new(num, den))
}

/// Reduced fraction string: `"3"`, `"-1/2"`.
pub fn fmt_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
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

/// `n! / (parts[0]! * parts[1]! * ...)` where the parts sum to `n`.
pub fn multinomial(parts: &[u32]) -> BigInt {
    let n: u32 = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(n), |acc, &l| acc / factorial(l))
}

/// `n (n-1) ... (n-len+1)`, the number of injective maps from `len` slots into `n`.
pub fn falling_factorial(n: u32, len: u32) -> BigInt {
    if len > n {
        return BigInt::zero();
    }
    (0..len).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i))
}

pub fn pow_q(x: &Q, e: u32) -> Q {
    num_traits::pow::pow(x.clone(), e as usize)
}

/// Grid of rationals `a/b` with `1 <= |a| <= bound`, `1 <= b <= bound`,
/// deduplicated and sorted by (height, value) so small values come first.
pub fn rational_grid(bound: u32) -> Vec<Q> {
    let mut out: Vec<Q> = Vec::new();
    for a in 1..=bound as i64 {
        for b in 1..=bound as i64 {
            for s in [1, -1] {
                let v = q_frac(s * a, b);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out.sort_by(|x, y| {
        let hx = x.numer().abs().max(x.denom().clone());
        let hy = y.numer().abs().max(y.denom().clone());
        hx.cmp(&hy)
            .then_with(|| x.abs().cmp(&y.abs()))
            .then_with(|| y.cmp(x))
    });
    out
}
