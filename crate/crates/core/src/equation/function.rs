use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sympoly::{Generator, SymPoly, Unknown, UnknownPoly};

/// One summand `coeff * m_exp(d^order(x))` of a function ansatz.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FnTerm {
    pub exp: u32,
    pub order: u32,
    pub coeff: UnknownPoly,
}

impl FnTerm {
    pub fn new(exp: u32, order: u32, coeff: impl Into<UnknownPoly>) -> Self {
        FnTerm { exp, order, coeff: coeff.into() }
    }
}

/// A named additive function `sum_{j,k} c_{j,k} m_j(d^k(x))`.
///
/// Terms are kept sorted by `(exp, order)`; terms with a zero coefficient are
/// dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FunctionSpec {
    name: String,
    terms: Vec<FnTerm>,
}

impl FunctionSpec {
    pub fn new(name: &str, terms: impl IntoIterator<Item = FnTerm>) -> Result<Self> {
        let mut terms: Vec<FnTerm> = terms.into_iter().collect();
        terms.sort_by_key(|t| (t.exp, t.order));
        for w in terms.windows(2) {
            if (w[0].exp, w[0].order) == (w[1].exp, w[1].order) {
                return Err(Error::DuplicateFunctionTerm {
                    function: name.to_string(),
                    exp: w[0].exp,
                    order: w[0].order,
                });
            }
        }
        terms.retain(|t| !t.coeff.is_zero());
        Ok(FunctionSpec { name: name.to_string(), terms })
    }

    pub fn zero(name: &str) -> Self {
        FunctionSpec { name: name.to_string(), terms: Vec::new() }
    }

    /// `sum_{k <= max_order} {prefix}_{k} d^k(x)` on the identity exponential.
    pub fn generic(name: &str, prefix: &str, max_order: u32) -> Self {
        let terms = (0..=max_order)
            .map(|k| FnTerm::new(0, k, UnknownPoly::var(&format!("{prefix}_{k}"))))
            .collect();
        FunctionSpec { name: name.to_string(), terms }
    }

    /// Reads a polynomial of degree one in slot-0 generators.
    pub fn from_linear_sympoly(name: &str, p: &SymPoly) -> Result<Self> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            let [(g, 1)] = m.factors() else {
                return Err(Error::NotLinear);
            };
            if g.var != 0 {
                return Err(Error::MultivariateGenerator);
            }
            terms.push(FnTerm::new(g.exp, g.order, c.clone()));
        }
        FunctionSpec::new(name, terms)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: &str) -> Self {
        FunctionSpec { name: name.to_string(), terms: self.terms.clone() }
    }

    pub fn terms(&self) -> &[FnTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: u32, order: u32) -> UnknownPoly {
        self.terms
            .iter()
            .find(|t| t.exp == exp && t.order == order)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    /// Highest derivation order present, `None` for the zero function.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.order).max()
    }

    pub fn exps(&self) -> BTreeSet<u32> {
        self.terms.iter().map(|t| t.exp).collect()
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        self.terms.iter().flat_map(|t| t.coeff.unknowns()).collect()
    }

    /// The first coefficient that still contains unknowns.
    pub fn first_symbolic(&self) -> Option<&UnknownPoly> {
        self.terms.iter().map(|t| &t.coeff).find(|c| c.as_constant().is_none())
    }

    /// The function as a polynomial in the generators of slot `var`.
    pub fn to_sympoly_in(&self, var: u32) -> SymPoly {
        let mut out = SymPoly::zero();
        for t in &self.terms {
            out = &out + &SymPoly::gen(Generator::new(var, t.exp, t.order)).scale(&t.coeff);
        }
        out
    }

    pub fn to_sympoly(&self) -> SymPoly {
        self.to_sympoly_in(0)
    }

    pub fn map_coeffs(&self, f: impl Fn(&UnknownPoly) -> UnknownPoly) -> Self {
        let mut terms: Vec<FnTerm> = self
            .terms
            .iter()
            .map(|t| FnTerm { coeff: f(&t.coeff), ..t.clone() })
            .collect();
        terms.retain(|t| !t.coeff.is_zero());
        FunctionSpec { name: self.name.clone(), terms }
    }

    /// Relabels exponential indices.
    pub fn map_exps(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        FunctionSpec::new(
            &self.name,
            self.terms.iter().map(|t| FnTerm { exp: f(t.exp), ..t.clone() }),
        )
    }
}

/// Function specs keyed by name.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Ansatz {
    functions: BTreeMap<String, FunctionSpec>,
}

impl Ansatz {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_functions(fs: impl IntoIterator<Item = FunctionSpec>) -> Self {
        let mut a = Ansatz::new();
        for f in fs {
            a.insert(f);
        }
        a
    }

    pub fn insert(&mut self, f: FunctionSpec) {
        self.functions.insert(f.name.clone(), f);
    }

    pub fn get(&self, name: &str) -> Result<&FunctionSpec> {
        self.functions
            .get(name)
            .ok_or_else(|| Error::UnresolvedFunction(name.to_string()))
    }

    pub fn functions(&self) -> impl Iterator<Item = &FunctionSpec> {
        self.functions.values()
    }

    pub fn unknowns(&self) -> BTreeSet<Unknown> {
        self.functions.values().flat_map(|f| f.unknowns()).collect()
    }

    pub fn map_coeffs(&self, f: impl Fn(&UnknownPoly) -> UnknownPoly) -> Self {
        Ansatz::from_functions(self.functions.values().map(|g| g.map_coeffs(&f)))
    }

    /// Replaces unknowns by the values `value` supplies.
    pub fn substitute(&self, value: &impl Fn(&Unknown) -> Option<UnknownPoly>) -> Self {
        self.map_coeffs(|c| c.substitute(value))
    }

    pub fn map_exps(&self, f: impl Fn(u32) -> u32 + Copy) -> Result<Self> {
        let fs = self
            .functions
            .values()
            .map(|g| g.map_exps(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ansatz::from_functions(fs))
    }
}
