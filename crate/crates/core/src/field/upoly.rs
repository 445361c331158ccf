//! Dense univariate polynomials over the integers.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Coefficients from the constant term up; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<BigInt>,
}

impl UPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = UPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        UPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        UPoly::new(alloc::vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(BigInt::one())
    }

    /// `t`
    pub fn t() -> Self {
        UPoly::from_i64(&[0, 1])
    }

    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut v = alloc::vec![BigInt::zero(); e + 1];
        v[e] = c;
        UPoly::new(v)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by its content, with positive leading coefficient.
    pub fn primitive(&self) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Exact division of every coefficient.
    pub fn div_scalar(&self, c: &BigInt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn shift(&self, e: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = alloc::vec![BigInt::zero(); e];
        v.extend(self.coeffs.iter().cloned());
        UPoly { coeffs: v }
    }

    /// `lc(b)^(deg a - deg b + 1) a mod b`
    /// A nonzero integer multiple of the remainder of `self` by `b`.
    pub fn pseudo_rem(&self, b: &UPoly) -> UPoly {
        let db = b.degree().expect("nonzero divisor");
        let lb = b.leading().clone();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let lr = r[top].clone();
            let g = lr.gcd(&lb);
            let (sa, sb) = (&lb / &g, &lr / &g);
            let shift = top - db;
            if !sa.is_one() {
                for c in r.iter_mut() {
                    *c *= &sa;
                }
            }
            for (i, c) in b.coeffs.iter().enumerate() {
                r[shift + i] -= c * &sb;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    /// Quotient when `b` divides `self` exactly over the integers.
    pub fn exact_div(&self, b: &UPoly) -> Option<UPoly> {
        let db = b.degree()?;
        let lb = b.leading();
        let mut r = self.clone();
        let mut q = alloc::vec![BigInt::zero(); self.coeffs.len().saturating_sub(db)];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (c, rem) = r.leading().div_rem(&lb);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &b.shift(dr - db).scale(&c);
            q[dr - db] = c;
        }
        Some(UPoly::new(q))
    }

    /// Primitive greatest common divisor, with positive leading coefficient.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        if modular_gcd_is_constant(&a, &b) {
            return UPoly::one();
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> UPoly {
        let mut acc = UPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, o: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = BigInt::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, o: &UPoly) -> UPoly {
        self + &(-o)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero();
        }
        let mut v = alloc::vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        UPoly::new(v)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => String::from("t"),
                _ => alloc::format!("t^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&alloc::format!("{a}"));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&alloc::format!("{a}*{mono}"));
            }
        }
        f.write_str(&out)
    }
}

const GCD_PRIME: u64 = (1 << 61) - 1;

fn reduce_mod(p: &UPoly) -> Vec<u64> {
    let m = BigInt::from(GCD_PRIME);
    let mut v: Vec<u64> = p
        .coeffs
        .iter()
        .map(|c| {
            let r = c.mod_floor(&m);
            u64::try_from(r).expect("reduced")
        })
        .collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % GCD_PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, GCD_PRIME - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Sufficient test for a trivial gcd: the images modulo a prime not dividing
/// the leading coefficient of `a` are coprime.
fn modular_gcd_is_constant(a: &UPoly, b: &UPoly) -> bool {
    let (mut x, mut y) = (reduce_mod(a), reduce_mod(b));
    if x.len() != a.coeffs.len() || y.is_empty() {
        return false;
    }
    while !y.is_empty() {
        let inv = inv_mod(*y.last().expect("nonzero"));
        while x.len() >= y.len() {
            let f = mul_mod(*x.last().expect("nonzero"), inv);
            let shift = x.len() - y.len();
            for (i, c) in y.iter().enumerate() {
                let s = mul_mod(f, *c);
                x[shift + i] = (x[shift + i] + GCD_PRIME - s) % GCD_PRIME;
            }
            while x.last() == Some(&0) {
                x.pop();
            }
            if x.is_empty() {
                break;
            }
        }
        core::mem::swap(&mut x, &mut y);
    }
    x.len() == 1
}
