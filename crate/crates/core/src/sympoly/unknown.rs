use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rat::{fmt_q, pow_q, Q};

/// A named unknown coefficient such as `a_1_1` or `mu2_0`.
///
/// Names are shared through `Arc<str>`; identity and ordering are by name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Unknown(Arc<str>);

impl Unknown {
    pub fn new(name: &str) -> Self {
        Unknown(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Unknown {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Unknown {
    fn from(s: &str) -> Self {
        Unknown::new(s)
    }
}

/// Exponent vector over unknowns, graded-lexicographically ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UMono(Vec<(Unknown, u32)>);

impl UMono {
    pub fn one() -> Self {
        UMono(Vec::new())
    }

    pub fn var(u: Unknown) -> Self {
        UMono(alloc::vec![(u, 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent_of(&self, u: &Unknown) -> u32 {
        self.0.iter().find(|(v, _)| v == u).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Unknown, u32)] {
        &self.0
    }

    fn mul(&self, other: &UMono) -> UMono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        UMono(out)
    }

    fn without(&self, u: &Unknown) -> UMono {
        UMono(self.0.iter().filter(|(v, _)| v != u).cloned().collect())
    }
}

impl Ord for UMono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for UMono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in named unknowns with rational coefficients, canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UnknownPoly {
    terms: BTreeMap<UMono, Q>,
}

impl UnknownPoly {
    pub fn zero() -> Self {
        UnknownPoly::default()
    }

    pub fn one() -> Self {
        UnknownPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(UMono::one(), c);
        }
        UnknownPoly { terms }
    }

    pub fn int(n: i64) -> Self {
        UnknownPoly::constant(crate::rat::q(n))
    }

    pub fn var(name: &str) -> Self {
        UnknownPoly::unknown(Unknown::new(name))
    }

    pub fn unknown(u: Unknown) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(UMono::var(u), Q::one());
        UnknownPoly { terms }
    }

    pub fn monomial(c: Q, mono: UMono) -> Self {
        let mut p = UnknownPoly::zero();
        p.add_term(mono, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The rational value if the polynomial has no unknowns.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&UMono::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&UMono, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, mono: UMono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return UnknownPoly::zero();
        }
        UnknownPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = UnknownPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(u, _)| u.clone()))
            .collect()
    }

    pub fn degree_in(&self, u: &Unknown) -> u32 {
        self.terms.keys().map(|m| m.exponent_of(u)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(UMono::degree).max().unwrap_or(0)
    }

    /// Coefficients `c_0, c_1, ..., c_e` with `self = sum c_i * u^i`.
    pub fn coeffs_in(&self, u: &Unknown) -> Vec<UnknownPoly> {
        let mut out = alloc::vec![UnknownPoly::zero(); self.degree_in(u) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent_of(u) as usize;
            out[e].add_term(m.without(u), c.clone());
        }
        out
    }

    /// Evaluates with every unknown bound by `value`. `None` when an unknown
    /// is missing.
    pub fn eval(&self, value: &impl Fn(&Unknown) -> Option<Q>) -> Option<Q> {
        let mut acc = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (u, e) in &m.0 {
                t *= pow_q(&value(u)?, *e);
            }
            acc += t;
        }
        Some(acc)
    }

    /// Replaces the unknowns for which `value` answers, keeping the rest.
    pub fn substitute(&self, value: &impl Fn(&Unknown) -> Option<UnknownPoly>) -> UnknownPoly {
        let mut acc = UnknownPoly::zero();
        for (m, c) in &self.terms {
            let mut t = UnknownPoly::constant(c.clone());
            let mut kept = UMono::one();
            for (u, e) in &m.0 {
                match value(u) {
                    Some(v) => t = &t * &v.pow(*e),
                    None => kept = kept.mul(&UMono(alloc::vec![(u.clone(), *e)])),
                }
            }
            acc = &acc + &(&t * &UnknownPoly::monomial(Q::one(), kept));
        }
        acc
    }

    /// `Some((c, mono))` when the polynomial is a single term.
    pub fn as_single_term(&self) -> Option<(&Q, &UMono)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// `Some(r)` with `self = r * other`, `r` rational, when such `r` exists.
    pub fn rational_multiple_of(&self, other: &UnknownPoly) -> Option<Q> {
        if self.is_zero() {
            return Some(Q::zero());
        }
        let (m, c) = self.terms.iter().next()?;
        let d = other.terms.get(m)?;
        let r = c / d;
        (other.scale(&r) == *self).then_some(r)
    }

    /// Divides every coefficient by the leading rational coefficient so that
    /// proportional polynomials compare equal.
    pub fn normalized(&self) -> UnknownPoly {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&(Q::one() / c)),
            None => UnknownPoly::zero(),
        }
    }
}

impl Add<&UnknownPoly> for &UnknownPoly {
    type Output = UnknownPoly;
    fn add(self, rhs: &UnknownPoly) -> UnknownPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&UnknownPoly> for &UnknownPoly {
    type Output = UnknownPoly;
    fn sub(self, rhs: &UnknownPoly) -> UnknownPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul<&UnknownPoly> for &UnknownPoly {
    type Output = UnknownPoly;
    fn mul(self, rhs: &UnknownPoly) -> UnknownPoly {
        let mut out = UnknownPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &UnknownPoly {
    type Output = UnknownPoly;
    fn neg(self) -> UnknownPoly {
        self.scale(&-Q::one())
    }
}

impl From<Q> for UnknownPoly {
    fn from(c: Q) -> Self {
        UnknownPoly::constant(c)
    }
}

/// `(negative, magnitude text)` for one term, e.g. `(true, "3/2*a^2*b")`.
pub(crate) fn render_term(c: &Q, m: &UMono) -> (bool, String) {
    let neg = c.is_negative();
    let mag = c.abs();
    let mut parts: Vec<String> = Vec::new();
    if !mag.is_one() || m.0.is_empty() {
        parts.push(fmt_q(&mag));
    }
    for (u, e) in &m.0 {
        if *e == 1 {
            parts.push(String::from(u.name()));
        } else {
            parts.push(alloc::format!("{u}^{e}"));
        }
    }
    (neg, parts.join("*"))
}

impl fmt::Display for UnknownPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<(&UMono, &Q)> = self.terms.iter().collect();
        order.sort_by(|a, b| super::display_cmp(&a.0 .0, &b.0 .0));
        for (i, (m, c)) in order.into_iter().enumerate() {
            let (neg, body) = render_term(c, m);
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => f.write_str(&body)?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, q_frac};
    use alloc::string::ToString;

    fn v(n: &str) -> UnknownPoly {
        UnknownPoly::var(n)
    }

    #[test]
    fn collection_and_cancellation() {
        let p = &(&v("a") + &v("b")) - &v("a");
        assert_eq!(p, v("b"));
        assert!((&p - &p).is_zero());
        assert_eq!(UnknownPoly::constant(q(0)), UnknownPoly::zero());
    }

    #[test]
    fn rendering_is_deterministic() {
        let p = &(&v("a_1_1") * &v("b_1")).scale(&q(2)) - &UnknownPoly::constant(q_frac(3, 2));
        assert_eq!(p.to_string(), "2*a_1_1*b_1 - 3/2");
        let sq = (&v("a") - &v("b")).pow(2);
        assert_eq!(sq.to_string(), "a^2 - 2*a*b + b^2");
        assert_eq!((-&v("x")).to_string(), "-x");
    }

    #[test]
    fn coefficients_in_one_unknown() {
        let a = Unknown::new("a");
        let p = &(&v("a").pow(2) * &v("b")) + &(&v("a") + &UnknownPoly::int(3));
        let cs = p.coeffs_in(&a);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], UnknownPoly::int(3));
        assert_eq!(cs[1], UnknownPoly::one());
        assert_eq!(cs[2], v("b"));
    }

    #[test]
    fn evaluation_and_substitution() {
        let p = &(&v("a") * &v("b")).scale(&q(2)) + &v("a");
        let val = p.eval(&|u: &Unknown| match u.name() {
            "a" => Some(q(3)),
            "b" => Some(q_frac(1, 2)),
            _ => None,
        });
        assert_eq!(val, Some(q(6)));
        assert_eq!(p.eval(&|_: &Unknown| None), None);
        let s = p.substitute(&|u: &Unknown| (u.name() == "b").then(|| UnknownPoly::int(-1)));
        assert_eq!(s, -&v("a"));
    }

    #[test]
    fn proportionality() {
        let p = &v("a") + &v("b");
        assert_eq!(p.scale(&q(-4)).rational_multiple_of(&p), Some(q(-4)));
        assert_eq!(v("a").rational_multiple_of(&p), None);
        assert_eq!(p.scale(&q(7)).normalized(), p.normalized());
    }
}
