use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// The symbol `m_exp(d^order(x_var))`.
///
/// `exp = 0` is the distinguished exponential (the identity), so
/// `Generator { var: 0, exp: 0, order: 0 }` is `x` itself. Ordering is the
/// lexicographic order on `(var, exp, order)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub var: u32,
    pub exp: u32,
    pub order: u32,
}

impl Generator {
    pub const fn new(var: u32, exp: u32, order: u32) -> Self {
        Generator { var, exp, order }
    }

    /// `x`
    pub const fn x() -> Self {
        Generator::new(0, 0, 0)
    }

    /// `d^k(x)`
    pub const fn d(order: u32) -> Self {
        Generator::new(0, 0, order)
    }

    /// `m_j(x)`
    pub const fn m(exp: u32) -> Self {
        Generator::new(0, exp, 0)
    }

    pub fn derived(self) -> Self {
        Generator { order: self.order + 1, ..self }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base: String = if self.var == 0 { "x".into() } else { format!("x{}", self.var) };
        let inner = match self.order {
            0 => base,
            1 => format!("d({base})"),
            k => format!("d^{k}({base})"),
        };
        match (self.exp, self.order, self.var) {
            (0, _, _) => f.write_str(&inner),
            (j, 0, 0) => write!(f, "m{j}"),
            (j, _, _) => write!(f, "m{j}({inner})"),
        }
    }
}

/// A product of generators with positive exponents.
///
/// Factors are sorted by generator and never carry a zero exponent. Monomials
/// are ordered graded-lexicographically: total degree first, then the factor
/// lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Generator, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn gen(g: Generator) -> Self {
        Monomial { factors: alloc::vec![(g, 1)] }
    }

    pub fn gen_pow(g: Generator, e: u32) -> Self {
        if e == 0 {
            return Monomial::one();
        }
        Monomial { factors: alloc::vec![(g, e)] }
    }

    /// Builds a monomial from arbitrary `(generator, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_factors(factors: impl IntoIterator<Item = (Generator, u32)>) -> Self {
        let mut v: Vec<(Generator, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|a| a.0);
        let mut out: Vec<(Generator, u32)> = Vec::with_capacity(v.len());
        for (g, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == g => *le += e,
                _ => out.push((g, e)),
            }
        }
        Monomial { factors: out }
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// Sum of derivation orders counted with multiplicity.
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|&(g, e)| g.order * e).sum()
    }

    pub fn exponent_of(&self, g: Generator) -> u32 {
        self.factors
            .binary_search_by(|(h, _)| h.cmp(&g))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial { factors: self.factors.iter().map(|&(g, k)| (g, k * e)).collect() }
    }

    /// Lowers the exponent of `g` by one. `None` if `g` does not divide.
    pub fn without_one(&self, g: Generator) -> Option<Monomial> {
        let i = self.factors.binary_search_by(|(h, _)| h.cmp(&g)).ok()?;
        let mut factors = self.factors.clone();
        if factors[i].1 == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some(Monomial { factors })
    }

    pub fn map_generators(&self, f: impl Fn(Generator) -> Generator) -> Monomial {
        Monomial::from_factors(self.factors.iter().map(|&(g, e)| (f(g), e)))
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        self.factors.iter().map(|&(g, _)| g)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (g, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}
