use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;


use super::function::Ansatz;
use super::spec::EquationSpec;
use crate::error::{Error, Result};
use crate::expansion::{expand_deriv_product, substitute_power_cached, ExpansionCache};
use crate::rat::{binomial, q_int, Q};
use crate::sympoly::{Monomial, SymPoly, Unknown, UnknownPoly};

/// Largest number of variable slots [`symmetrize`] accepts.
pub const SYMMETRIZATION_CAP: u32 = 10;

/// `sum_i s_i f_i(x^p_i) g_i(x)^q_i`, requiring a homogeneous spec.
pub fn build_lhs(spec: &EquationSpec, ansatz: &Ansatz) -> Result<SymPoly> {
    spec.require_homogeneous()?;
    build_lhs_unchecked(spec, ansatz)
}

/// As [`build_lhs`] but for any spec.
pub fn build_lhs_unchecked(spec: &EquationSpec, ansatz: &Ansatz) -> Result<SymPoly> {
    let mut cache = ExpansionCache::new();
    let mut out = SymPoly::zero();
    for t in spec.terms() {
        let f = ansatz.get(&t.f)?;
        let g = ansatz.get(&t.g)?;
        let fp = substitute_power_cached(f, t.p, &mut cache);
        if fp.is_zero() {
            continue;
        }
        let term = &fp * &g.to_sympoly().pow(t.q);
        out = &out + &term.scale_q(&t.scalar);
    }
    Ok(out)
}

/// One coefficient that must vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub monomial: Monomial,
    pub poly: UnknownPoly,
}

/// The coefficients of an expanded left-hand side, in monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstraintSystem {
    pub entries: Vec<Constraint>,
    pub unknowns: BTreeSet<Unknown>,
}

impl ConstraintSystem {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, m: &Monomial) -> Option<&UnknownPoly> {
        self.entries.iter().find(|c| &c.monomial == m).map(|c| &c.poly)
    }

    /// `Some(true)` when every entry vanishes under the assignment; `None`
    /// when an unknown is unassigned.
    pub fn satisfied_by(&self, value: &impl Fn(&Unknown) -> Option<Q>) -> Option<bool> {
        for c in &self.entries {
            if !num_traits::Zero::is_zero(&c.poly.eval(value)?) {
                return Some(false);
            }
        }
        Some(true)
    }
}

pub fn extract_constraints(lhs: &SymPoly) -> ConstraintSystem {
    ConstraintSystem {
        entries: lhs
            .terms()
            .map(|(m, c)| Constraint { monomial: m.clone(), poly: c.clone() })
            .collect(),
        unknowns: lhs.unknowns(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Surviving monomials and their coefficients.
    Fail(Vec<(Monomial, Q)>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub verdict: Verdict,
    /// Referenced functions that are identically zero.
    pub zero_functions: Vec<String>,
}

impl VerifyReport {
    pub fn is_pass(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// Checks a fully numeric ansatz.
pub fn verify_solution(spec: &EquationSpec, ansatz: &Ansatz) -> Result<VerifyReport> {
    let mut zero_functions = Vec::new();
    for name in spec.function_names() {
        let f = ansatz.get(name)?;
        if let Some(c) = f.first_symbolic() {
            return Err(Error::NonNumericCoefficient {
                function: name.to_string(),
                coeff: c.to_string(),
            });
        }
        if f.is_zero() {
            zero_functions.push(name.to_string());
        }
    }
    let lhs = build_lhs_unchecked(spec, ansatz)?;
    let verdict = if lhs.is_zero() {
        Verdict::Pass
    } else {
        Verdict::Fail(lhs.as_numeric().expect("numeric ansatz gives numeric lhs"))
    };
    Ok(VerifyReport { verdict, zero_functions })
}

/// Components of the left-hand side by total degree, with an entry for every
/// degree `p + q` occurring in the spec.
pub fn grade_by_scaling(spec: &EquationSpec, ansatz: &Ansatz) -> Result<BTreeMap<u32, SymPoly>> {
    let mut graded = build_lhs_unchecked(spec, ansatz)?.graded();
    for n in spec.degrees() {
        graded.entry(n).or_default();
    }
    Ok(graded)
}

fn subsets(n: u32, k: u32) -> Vec<Vec<u32>> {
    fn go(start: u32, n: u32, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() as u32 == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() as u32 {
                break;
            }
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The symmetrized left-hand side over slots `0..N`.
///
/// Each term contributes the average over the `p`-subsets `S` of the slots of
/// `f(prod_{v in S} x_v) * prod_{v not in S} g(x_v)`, which equals the average
/// over all `N!` slot permutations.
pub fn symmetrize(spec: &EquationSpec, ansatz: &Ansatz, cap: u32) -> Result<SymPoly> {
    let n = spec.require_homogeneous()?;
    if n > cap {
        return Err(Error::SymmetrizationCap { n, cap });
    }
    let mut out = SymPoly::zero();
    for t in spec.terms() {
        let f = ansatz.get(&t.f)?;
        let g = ansatz.get(&t.g)?;
        let g_slots: Vec<SymPoly> = (0..n).map(|v| g.to_sympoly_in(v)).collect();
        let mut sum = SymPoly::zero();
        for s in subsets(n, t.p) {
            let mut fs = SymPoly::zero();
            for ft in f.terms() {
                fs = &fs + &expand_deriv_product(ft.exp, ft.order, &s).scale(&ft.coeff);
            }
            if fs.is_zero() {
                continue;
            }
            let mut prod = fs;
            for v in (0..n).filter(|v| !s.contains(v)) {
                prod = &prod * &g_slots[v as usize];
            }
            sum = &sum + &prod;
        }
        let weight = t.scalar.clone() / q_int(binomial(n, t.p));
        out = &out + &sum.scale_q(&weight);
    }
    Ok(out)
}

