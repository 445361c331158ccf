//! The rational function field Q(t).

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::rat::Q;

/// `num / den` in lowest terms with `den` of positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: UPoly,
    den: UPoly,
}

impl RationalFunction {
    pub fn new(num: UPoly, den: UPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: UPoly, den: UPoly) -> Self {
        if num.is_zero() {
            return RationalFunction::zero();
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let mut c = num_integer::Integer::gcd(&n.content(), &d.content());
        if d.leading().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            n = n.div_scalar(&c);
            d = d.div_scalar(&c);
        }
        RationalFunction { num: n, den: d }
    }

    pub fn zero() -> Self {
        RationalFunction { num: UPoly::zero(), den: UPoly::one() }
    }

    pub fn one() -> Self {
        RationalFunction::poly(UPoly::one())
    }

    /// `t`
    pub fn t() -> Self {
        RationalFunction::poly(UPoly::t())
    }

    pub fn poly(p: UPoly) -> Self {
        RationalFunction::canonical(p, UPoly::one())
    }

    pub fn from_q(c: &Q) -> Self {
        RationalFunction::canonical(
            UPoly::constant(c.numer().clone()),
            UPoly::constant(c.denom().clone()),
        )
    }

    pub fn int(n: i64) -> Self {
        RationalFunction::poly(UPoly::constant(BigInt::from(n)))
    }

    pub fn numer(&self) -> &UPoly {
        &self.num
    }

    pub fn denom(&self) -> &UPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value when `self` is constant.
    pub fn as_constant(&self) -> Option<Q> {
        (self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0))
            .then(|| Q::new(self.num.coeffs().first().cloned().unwrap_or_default(), self.den.leading()))
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn inv(&self) -> Result<Self> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RationalFunction) -> Result<Self> {
        Ok(self * &o.inv()?)
    }

    pub fn scale(&self, c: &Q) -> Self {
        self * &RationalFunction::from_q(c)
    }

    pub fn pow(&self, e: u32) -> Self {
        // already coprime, so no reduction needed
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// `d/dt` by the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RationalFunction::canonical(n, &self.den * &self.den)
    }

    pub fn nth_derivative(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// `self(r(t))`; `r` must not be constant.
    pub fn compose(&self, r: &RationalFunction) -> Result<Self> {
        if r.is_constant() {
            return Err(Error::ConstantEndomorphism);
        }
        if self.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let (p, q) = (&r.num, &r.den);
        let top = self.num.degree().max(self.den.degree()).unwrap_or(0);
        let mut p_pow = alloc::vec![UPoly::one()];
        let mut q_pow = alloc::vec![UPoly::one()];
        for i in 1..=top {
            p_pow.push(&p_pow[i - 1] * p);
            q_pow.push(&q_pow[i - 1] * q);
        }
        // sum c_i p^i q^(deg - i)
        let homog = |a: &UPoly| -> (UPoly, usize) {
            let deg = a.degree().unwrap_or(0);
            let mut out = UPoly::zero();
            for (i, c) in a.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out = &out + &(&p_pow[i] * &q_pow[deg - i]).scale(c);
                }
            }
            (out, deg)
        };
        let (n, dn) = homog(&self.num);
        let (d, dd) = homog(&self.den);
        let (n, d) = if dd >= dn {
            (&n * &q_pow[dd - dn], d)
        } else {
            (n, &d * &q_pow[dn - dd])
        };
        RationalFunction::new(n, d)
    }

    /// A random element: numerator and denominator of degree at most
    /// `max_degree` with integer coefficients in `-bound..=bound`.
    pub fn random<R: Rng>(rng: &mut R, max_degree: usize, bound: i64) -> Self {
        let mut draw = |nonzero: bool| loop {
            let deg = rng.random_range(0..=max_degree);
            let p = UPoly::new(
                (0..=deg).map(|_| BigInt::from(rng.random_range(-bound..=bound))).collect(),
            );
            if !nonzero || !p.is_zero() {
                return p;
            }
        };
        let num = draw(false);
        let den = draw(true);
        RationalFunction::canonical(num, den)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RationalFunction::canonical(&self.num + &o.num, self.den.clone());
        }
        let g = self.den.gcd(&o.den);
        if g.degree() == Some(0) {
            return RationalFunction::canonical(
                &(&self.num * &o.den) + &(&o.num * &self.den),
                &self.den * &o.den,
            );
        }
        let (b, d) = (self.den.exact_div(&g).expect("gcd divides"), o.den.exact_div(&g).expect("gcd divides"));
        RationalFunction::canonical(&(&self.num * &d) + &(&o.num * &b), &(&b * &d) * &g)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, o: &RationalFunction) -> RationalFunction {
        self + &(-o)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, o: &RationalFunction) -> RationalFunction {
        if self.is_zero() || o.is_zero() {
            return RationalFunction::zero();
        }
        let cross = |a: &UPoly, b: &UPoly| {
            let g = a.gcd(b);
            if g.degree() == Some(0) {
                (a.clone(), b.clone())
            } else {
                (a.exact_div(&g).expect("gcd divides"), b.exact_div(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cross(&self.num, &o.den);
        let (c, b) = cross(&o.num, &self.den);
        RationalFunction::canonical(&a * &c, &b * &d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &UPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                alloc::format!("({p})")
            } else {
                alloc::format!("{p}")
            }
        };
        if self.den.is_one_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl UPoly {
    fn is_one_poly(&self) -> bool {
        self.degree() == Some(0) && self.leading().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(c: &[i64]) -> UPoly {
        UPoly::from_i64(c)
    }

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(p(n), p(d)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let t = RationalFunction::t();
        let sum = &t + &t.inv().unwrap();
        assert_eq!(sum, rf(&[1, 0, 1], &[0, 1]));
        assert_eq!(sum.to_string(), "(t^2 + 1)/t");
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        let a = rf(&[1, 1], &[0, 1]);
        let b = rf(&[0, 1], &[1, 1]);
        assert_eq!(&a * &b, RationalFunction::one());
        assert_eq!(rf(&[2], &[-4]), RationalFunction::from_q(&crate::rat::q_frac(-1, 2)));
        assert!(RationalFunction::new(p(&[1]), UPoly::zero()).is_err());
        assert!(RationalFunction::one().div(&RationalFunction::zero()).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(rf(&[0, 0, 1], &[1]).derivative(), rf(&[0, 2], &[1]));
        assert_eq!(rf(&[1], &[0, 1]).derivative(), rf(&[-1], &[0, 0, 1]));
    }

    #[test]
    fn compose_examples() {
        let t2 = rf(&[0, 0, 1], &[1]);
        assert_eq!(rf(&[1, 1], &[1]).compose(&t2).unwrap(), rf(&[1, 0, 1], &[1]));
        let a = rf(&[1, 2, 3], &[5, 0, 1]);
        assert_eq!(a.compose(&RationalFunction::t()).unwrap(), a);
        // 1/t at t -> (t+1)/(t-1)
        let r = rf(&[1, 1], &[-1, 1]);
        assert_eq!(rf(&[1], &[0, 1]).compose(&r).unwrap(), rf(&[-1, 1], &[1, 1]));
        assert_eq!(a.compose(&RationalFunction::int(3)), Err(Error::ConstantEndomorphism));
    }
}
