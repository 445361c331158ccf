use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::generator::{Generator, Monomial};
use super::unknown::{render_term, Unknown, UnknownPoly};
use crate::rat::Q;

/// Sparse polynomial over [`Generator`]s with [`UnknownPoly`] coefficients.
///
/// Canonical: no stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, UnknownPoly>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::term(Monomial::one(), UnknownPoly::one())
    }

    pub fn term(m: Monomial, c: UnknownPoly) -> Self {
        let mut p = SymPoly::zero();
        p.add_term(m, c);
        p
    }

    pub fn gen(g: Generator) -> Self {
        SymPoly::term(Monomial::gen(g), UnknownPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &UnknownPoly)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, UnknownPoly)> {
        self.terms.into_iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: UnknownPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> UnknownPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &UnknownPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn scale_q(&self, c: &Q) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.scale(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> SymPoly {
        let mut acc = SymPoly::one();
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

    /// Renames generators, merging monomials that collide.
    pub fn map_generators(&self, f: impl Fn(Generator) -> Generator) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.map_generators(&f), c.clone());
        }
        out
    }

    /// Collapses every variable slot onto slot 0.
    pub fn diagonal(&self) -> SymPoly {
        self.map_generators(|g| Generator { var: 0, ..g })
    }

    /// Homogeneous components keyed by total degree.
    pub fn graded(&self) -> BTreeMap<u32, SymPoly> {
        let mut out: BTreeMap<u32, SymPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().add_term(m.clone(), c.clone());
        }
        out
    }

    /// The formal derivation `G(v,j,l) -> G(v,j,l+1)` extended by the product rule.
    pub fn derive(&self) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            for &(g, e) in m.factors() {
                let rest = m.without_one(g).expect("factor present");
                let dm = rest.mul(&Monomial::gen(g.derived()));
                out.add_term(dm, c.scale(&crate::rat::q(e as i64)));
            }
        }
        out
    }

    /// Value after replacing every generator by 1.
    pub fn coefficient_sum(&self) -> UnknownPoly {
        self.terms.values().fold(UnknownPoly::zero(), |acc, c| &acc + c)
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        let mut out = BTreeSet::new();
        for c in self.terms.values() {
            out.extend(c.unknowns());
        }
        out
    }

    pub fn generators(&self) -> BTreeSet<Generator> {
        self.terms.keys().flat_map(|m| m.generators()).collect()
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&UnknownPoly) -> UnknownPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// `Some(map)` with rational coefficients when no unknowns remain.
    pub fn as_numeric(&self) -> Option<Vec<(Monomial, Q)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.as_constant().map(|v| (m.clone(), v)))
            .collect()
    }
}

impl Add<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        self.map_coeffs(|c| -c)
    }
}

impl From<UnknownPoly> for SymPoly {
    fn from(c: UnknownPoly) -> Self {
        SymPoly::term(Monomial::one(), c)
    }
}

fn render_coeff_times(c: &UnknownPoly, m: &Monomial) -> (bool, String) {
    let mono = if m.is_one() { None } else { Some(alloc::format!("{m}")) };
    if let Some((q, um)) = c.as_single_term() {
        let (neg, body) = render_term(q, um);
        let s = match mono {
            None => body,
            Some(ms) if body == "1" => ms,
            Some(ms) => alloc::format!("{body}*{ms}"),
        };
        return (neg, s);
    }
    let s = match mono {
        None => alloc::format!("({c})"),
        Some(ms) => alloc::format!("({c})*{ms}"),
    };
    (false, s)
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut order: Vec<(&Monomial, &UnknownPoly)> = self.terms.iter().collect();
        order.sort_by(|a, b| super::display_cmp(a.0.factors(), b.0.factors()));
        for (i, (m, c)) in order.into_iter().enumerate() {
            let (neg, body) = render_coeff_times(c, m);
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
    use crate::rat::q;
    use alloc::string::ToString;

    fn m(j: u32) -> SymPoly {
        SymPoly::gen(Generator::m(j))
    }

    fn u(name: &str) -> UnknownPoly {
        UnknownPoly::var(name)
    }

    #[test]
    fn additive_inverse_and_collection() {
        let x = SymPoly::gen(Generator::x());
        assert!((&x + &-&x).is_zero());
        let s = &m(1).scale_q(&q(2)) + &m(1).scale_q(&q(3));
        assert_eq!(s, m(1).scale_q(&q(5)));
        let t = &m(1).scale(&u("lam")) + &m(1).scale(&u("mu"));
        assert_eq!(t.coeff_of(&Monomial::gen(Generator::m(1))), &u("lam") + &u("mu"));
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&m(1) - &m(2)) * &(&m(1) + &m(2));
        assert_eq!(p, &m(1).pow(2) - &m(2).pow(2));
        assert_eq!(p.to_string(), "m1^2 - m2^2");
        let d = SymPoly::gen(Generator::d(1));
        assert_eq!(
            (&d * &d).coeff_of(&Monomial::gen_pow(Generator::d(1), 2)),
            UnknownPoly::one()
        );
    }

    #[test]
    fn powers() {
        assert_eq!(m(1).pow(0), SymPoly::one());
        let sq = (&m(1) + &m(2)).pow(2);
        assert_eq!(sq, &(&m(1).pow(2) + &(&m(1) * &m(2)).scale_q(&q(2))) + &m(2).pow(2));
        let g = &m(1) + &m(2).scale(&u("b"));
        let cube = g.pow(3);
        assert_eq!(cube, &(&g * &g) * &g);
        let mono = Monomial::from_factors([(Generator::m(1), 1), (Generator::m(2), 2)]);
        assert_eq!(cube.coeff_of(&mono), u("b").pow(2).scale(&q(3)));
    }

    #[test]
    fn coefficient_reading() {
        // (a11 m1^3 + a12 m2^3)(m1 + b1 m2)^2 at m1^4 m2
        let f = &m(1).pow(3).scale(&u("a_1_1")) + &m(2).pow(3).scale(&u("a_1_2"));
        let g = &m(1) + &m(2).scale(&u("b_1"));
        let lhs = &f * &g.pow(2);
        let mono = Monomial::from_factors([(Generator::m(1), 4), (Generator::m(2), 1)]);
        assert_eq!(lhs.coeff_of(&mono).to_string(), "2*a_1_1*b_1");
        assert!(SymPoly::zero().coeff_of(&mono).is_zero());
    }

    #[test]
    fn rendering() {
        let p = &(&m(1).pow(2) - &m(2).pow(2)) + &m(1).scale(&(&u("a") + &u("b")));
        assert_eq!(p.to_string(), "m1^2 - m2^2 + (a + b)*m1");
        assert_eq!(SymPoly::zero().to_string(), "0");
        let d = SymPoly::gen(Generator::d(1)).scale_q(&q(3));
        assert_eq!((&d * &SymPoly::gen(Generator::x()).pow(2)).to_string(), "3*x^2*d(x)");
    }

    #[test]
    fn derivation_and_grading() {
        let x = SymPoly::gen(Generator::x());
        let x2 = x.pow(2);
        assert_eq!(
            x2.derive(),
            (&x * &SymPoly::gen(Generator::d(1))).scale_q(&q(2))
        );
        let p = &m(1).pow(3) + &m(1);
        let g = p.graded();
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), [1, 3]);
        let two = SymPoly::gen(Generator::new(1, 1, 0));
        assert_eq!((&m(1) * &two).diagonal(), m(1).pow(2));
    }
}
