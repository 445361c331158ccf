//! Two-term solutions built from two distinct exponentials.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::family::{FamilyId, Relation, SolutionFamily};
use crate::equation::{
    build_lhs, extract_constraints, Ansatz, Constraint, EquationSpec, FnTerm, FunctionSpec,
};
use crate::error::{Error, Result};
use crate::sympoly::{Generator, Monomial, Unknown, UnknownPoly};

fn v(name: &str) -> UnknownPoly {
    UnknownPoly::var(name)
}

fn func(name: &str, m1: UnknownPoly, m2: UnknownPoly) -> FunctionSpec {
    FunctionSpec::new(name, [FnTerm::new(1, 0, m1), FnTerm::new(2, 0, m2)]).expect("distinct")
}

/// Why no two-exponential family was emitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub reason: String,
    /// Constraints of the constant ansatz with `b_1 = 1` that are a single
    /// monomial in the unknowns, so force a coefficient to vanish.
    pub single_term: Vec<Constraint>,
    pub constraints: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoExpOutcome {
    Family(SolutionFamily),
    None(Obstruction),
}

/// `f_i = a_i_1 m1 + a_i_2 m2`, `g_i = m1 + b_i m2` on the sorted terms, with
/// `b_1 = 1` when `fix_b1`.
pub fn constant_two_exponential_ansatz(spec: &EquationSpec, fix_b1: bool) -> Ansatz {
    let s = spec.canonical();
    let mut fs = Vec::new();
    for (i, t) in s.terms().iter().enumerate() {
        let i = i + 1;
        fs.push(func(&t.f, v(&format!("a_{i}_1")), v(&format!("a_{i}_2"))));
        let b = if fix_b1 && i == 1 { UnknownPoly::one() } else { v(&format!("b_{i}")) };
        fs.push(func(&t.g, UnknownPoly::one(), b));
    }
    Ansatz::from_functions(fs)
}

/// The coefficient at `m1^(N - q_n) m2^(q_n)` where `n` is the term with the
/// smallest `p`, for the constant ansatz with free `b_i`.
pub fn extreme_coefficient(spec: &EquationSpec) -> Result<(Monomial, UnknownPoly)> {
    let s = spec.canonical();
    let n = s.require_homogeneous()?;
    let qn = s.terms()[0].q;
    let lhs = build_lhs(&s, &constant_two_exponential_ansatz(&s, false))?;
    let m = Monomial::from_factors([(Generator::m(1), n - qn), (Generator::m(2), qn)]);
    let c = lhs.coeff_of(&m);
    Ok((m, c))
}

fn family(s: &EquationSpec, f2_m1: UnknownPoly, f2_m2: UnknownPoly) -> SolutionFamily {
    let (t1, t2) = (&s.terms()[0], &s.terms()[1]);
    let n = t1.degree();
    let c = v("c");
    let templates = Ansatz::from_functions([
        func(&t1.f, v("a1"), &v("a1") * &c),
        func(&t2.f, f2_m1, f2_m2),
        func(&t1.g, v("b1"), -&(&v("b1") * &c)),
        func(&t2.g, v("b2"), -&(&v("b2") * &c)),
    ]);
    SolutionFamily {
        id: FamilyId::TwoExponential,
        spec: s.clone(),
        templates,
        relations: alloc::vec![Relation::new(
            "a1",
            v("b1").pow(n - 1),
            -&(&v("a2") * &v("b2").pow(n - 2))
        )],
        constraints: Vec::new(),
        nonvanishing: ["a1", "a2", "b1", "b2", "c"].iter().map(|u| Unknown::new(u)).collect(),
        notes: Vec::new(),
    }
}

/// The two-exponential family for `{p_1, p_2} = {1, 2}`:
/// `f_1 = a1 (m1 + c m2)`, `f_2 = a2 (m1 - c^2 m2)`, `g_i = b_i (m1 - c m2)`
/// with `a1 b1^(N-1) = -a2 b2^(N-2)`. Every candidate is checked before it is
/// returned.
pub fn two_exponential_family(spec: &EquationSpec) -> Result<TwoExpOutcome> {
    if spec.len() != 2 {
        return Err(Error::ConditionViolation(format!("expected 2 terms, got {}", spec.len())));
    }
    spec.require_homogeneous()?;
    let s = spec.canonical();
    let ps = (s.terms()[0].p, s.terms()[1].p);
    if ps != (1, 2) {
        let sys = extract_constraints(&build_lhs(&s, &constant_two_exponential_ansatz(&s, true))?);
        let single_term = sys
            .entries
            .iter()
            .filter(|c| c.poly.as_single_term().is_some_and(|(_, m)| m.degree() > 0))
            .cloned()
            .collect();
        return Ok(TwoExpOutcome::None(Obstruction {
            reason: format!("needs p = (1, 2), got p = ({}, {})", ps.0, ps.1),
            single_term,
            constraints: sys.len(),
        }));
    }
    let c2 = v("c").pow(2);
    let mut rejected = Vec::new();
    // as printed in the statement, then with the two exponentials of f_2 swapped
    let candidates = [
        ("f_2 = a2 (m2 - c^2 m1)", -&(&v("a2") * &c2), v("a2")),
        ("f_2 = a2 (m1 - c^2 m2)", v("a2"), -&(&v("a2") * &c2)),
    ];
    for (label, m1, m2) in candidates {
        let mut fam = family(&s, m1, m2);
        let check = fam.check()?;
        if check.holds() {
            fam.notes.extend(rejected);
            fam.notes.push(format!("template {label} verified"));
            return Ok(TwoExpOutcome::Family(fam));
        }
        rejected.push(format!(
            "template {label} rejected: {} of {} constraints survive",
            check.residual.len(),
            check.constraints
        ));
    }
    Ok(TwoExpOutcome::None(Obstruction {
        reason: rejected.join("; "),
        single_term: Vec::new(),
        constraints: 0,
    }))
}
