//! Classification of two-term equations whose functions are of order at most
//! one on a single exponential.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::family::{FamilyId, Relation, SolutionFamily};
use crate::equation::{
    build_lhs, check_conditions, extract_constraints, Ansatz, EquationSpec, FnTerm, FunctionSpec,
};
use crate::error::{Error, Result};
use crate::rat::q;
use crate::sympoly::{Unknown, UnknownPoly};

/// Families found for a two-term equation, plus the ones that do not apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub spec: EquationSpec,
    pub families: Vec<SolutionFamily>,
    pub not_applicable: Vec<(FamilyId, String)>,
    pub notes: Vec<String>,
}

fn lam(i: usize, j: u32) -> String {
    format!("lam_{i}_{j}")
}

fn mu(i: usize, j: u32) -> String {
    format!("mu_{i}_{j}")
}

fn v(name: &str) -> UnknownPoly {
    UnknownPoly::var(name)
}

fn func(name: &str, coeffs: &[(u32, &str)]) -> FunctionSpec {
    FunctionSpec::new(name, coeffs.iter().map(|&(k, c)| FnTerm::new(0, k, v(c)))).expect("distinct orders")
}

fn int(n: u32) -> UnknownPoly {
    UnknownPoly::int(n as i64)
}

/// Checks the preconditions and returns the spec sorted by `p`.
fn prepare(spec: &EquationSpec) -> Result<EquationSpec> {
    if spec.len() != 2 {
        return Err(Error::ConditionViolation(format!("expected 2 terms, got {}", spec.len())));
    }
    let report = check_conditions(spec);
    if let Some(msg) = report.first_failure() {
        return Err(Error::ConditionViolation(msg));
    }
    if spec.terms().iter().any(|t| t.scalar != q(1)) {
        return Err(Error::ConditionViolation("term scalars must be 1".into()));
    }
    EquationSpec::new(report.sorted)
}

/// Case (A): the larger-`p` term `i1` has `f, g` of order one and its partner
/// `i2` (with `p - 1`, `q + 1`) has `f` linear.
pub fn case_a(spec: &EquationSpec) -> Result<Option<SolutionFamily>> {
    let s = prepare(spec)?;
    let (t2, t1) = (&s.terms()[0], &s.terms()[1]);
    if t1.p != t2.p + 1 {
        return Ok(None);
    }
    let (i1, i2) = (2, 1);
    let (p, qq) = (t1.p, t1.q);
    let templates = Ansatz::from_functions([
        func(&t1.f, &[(0, &lam(i1, 0)), (1, &lam(i1, 1))]),
        func(&t1.g, &[(0, &mu(i1, 0)), (1, &mu(i1, 1))]),
        func(&t2.f, &[(0, &lam(i2, 0))]),
        func(&t2.g, &[(0, &mu(i2, 0)), (1, &mu(i2, 1))]),
    ]);
    let relations = alloc::vec![
        Relation::new(&lam(i1, 0), v(&mu(i1, 1)), &(&int(p) * &v(&lam(i1, 1))) * &v(&mu(i1, 0))),
        Relation::new(&mu(i2, 0), v(&mu(i1, 1)), &v(&mu(i1, 0)) * &v(&mu(i2, 1))),
        Relation::new(
            &lam(i2, 0),
            v(&mu(i2, 1)).pow(qq + 1),
            -&(&(&int(p) * &v(&lam(i1, 1))) * &v(&mu(i1, 1)).pow(qq)),
        ),
    ];
    Ok(Some(SolutionFamily {
        id: FamilyId::A,
        spec: s.clone(),
        templates,
        relations,
        constraints: Vec::new(),
        nonvanishing: [lam(i1, 1), mu(i1, 1), mu(i2, 1)].iter().map(|n| Unknown::new(n)).collect(),
        notes: alloc::vec![format!(
            "partner term ({}, {}) has p lowered and q raised by one, as p + q = {} forces",
            t2.p,
            t2.q,
            t1.degree()
        )],
    }))
}

/// Case (B): the larger-`p` term has `q = 1`; its `g` is of order one and its
/// `f` linear, the other term has `f` of order one and `g` linear.
pub fn case_b(spec: &EquationSpec) -> Result<Option<SolutionFamily>> {
    let s = prepare(spec)?;
    let (t1, t2) = (&s.terms()[0], &s.terms()[1]);
    if t2.q != 1 {
        return Ok(None);
    }
    let (i1, i2) = (1, 2);
    let p1 = t1.p;
    let templates = Ansatz::from_functions([
        func(&t1.f, &[(0, &lam(i1, 0)), (1, &lam(i1, 1))]),
        func(&t1.g, &[(0, &mu(i1, 0))]),
        func(&t2.f, &[(0, &lam(i2, 0))]),
        func(&t2.g, &[(0, &mu(i2, 0)), (1, &mu(i2, 1))]),
    ]);
    let relations = alloc::vec![
        Relation::new(
            &lam(i2, 0),
            v(&mu(i2, 1)),
            -&(&(&int(p1) * &v(&lam(i1, 1))) * &v(&mu(i1, 0)).pow(t1.q)),
        ),
        Relation::new(&lam(i1, 0), v(&mu(i2, 1)), &(&int(p1) * &v(&lam(i1, 1))) * &v(&mu(i2, 0))),
    ];
    Ok(Some(SolutionFamily {
        id: FamilyId::B,
        spec: s.clone(),
        templates,
        relations,
        constraints: Vec::new(),
        nonvanishing: [lam(i1, 1), mu(i1, 0), mu(i2, 1)].iter().map(|n| Unknown::new(n)).collect(),
        notes: Vec::new(),
    }))
}

/// Case (C): both `g` linear, both `f` of order at most one.
pub fn case_c(spec: &EquationSpec) -> Result<SolutionFamily> {
    let s = prepare(spec)?;
    let (t1, t2) = (&s.terms()[0], &s.terms()[1]);
    let templates = Ansatz::from_functions([
        func(&t1.f, &[(0, &lam(1, 0)), (1, &lam(1, 1))]),
        func(&t1.g, &[(0, &mu(1, 0))]),
        func(&t2.f, &[(0, &lam(2, 0)), (1, &lam(2, 1))]),
        func(&t2.g, &[(0, &mu(2, 0))]),
    ]);
    let relations = alloc::vec![
        Relation::new(
            &lam(1, 1),
            &int(t1.p) * &v(&mu(1, 0)).pow(t1.q),
            -&(&(&int(t2.p) * &v(&lam(2, 1))) * &v(&mu(2, 0)).pow(t2.q)),
        ),
        Relation::new(
            &lam(1, 0),
            v(&mu(1, 0)).pow(t1.q),
            -&(&v(&lam(2, 0)) * &v(&mu(2, 0)).pow(t2.q)),
        ),
    ];
    Ok(SolutionFamily {
        id: FamilyId::C,
        spec: s.clone(),
        templates,
        relations,
        constraints: Vec::new(),
        nonvanishing: [mu(1, 0), mu(2, 0)].iter().map(|n| Unknown::new(n)).collect(),
        notes: Vec::new(),
    })
}

/// Emits the applicable Cases (A), (B), (C), each checked symbolically.
pub fn classify_two_term(spec: &EquationSpec) -> Result<Classification> {
    let s = prepare(spec)?;
    let mut families = Vec::new();
    let mut not_applicable = Vec::new();
    let mut notes = Vec::new();
    let (t1, t2) = (&s.terms()[0], &s.terms()[1]);
    match case_a(&s)? {
        Some(f) => families.push(f),
        None => not_applicable.push((
            FamilyId::A,
            format!("needs p_2 = p_1 + 1, got p = ({}, {})", t1.p, t2.p),
        )),
    }
    match case_b(&s)? {
        Some(f) => families.push(f),
        None => not_applicable.push((
            FamilyId::B,
            format!("needs q = 1 on the larger-p term, got q = {}", t2.q),
        )),
    }
    families.push(case_c(&s)?);
    for f in &families {
        let check = f.check()?;
        if !check.holds() {
            return Err(Error::ConditionViolation(format!(
                "family {} failed its symbolic check ({} residual constraints)",
                f.id,
                check.residual.len()
            )));
        }
    }
    if families.iter().any(|f| f.id == FamilyId::A) {
        notes.push(
            "Case (A) partner derived from p + q = N: the partner has p - 1 and q + 1".into(),
        );
    }
    Ok(Classification { spec: s, families, not_applicable, notes })
}

/// Order-at-most-one ansatz with every coefficient an unknown
/// `lam_{i}_{k}` / `mu_{i}_{k}` (sorted term index `i`).
pub fn generic_order_one_ansatz(spec: &EquationSpec) -> Ansatz {
    let s = spec.canonical();
    let mut fs = Vec::new();
    for (i, t) in s.terms().iter().enumerate() {
        fs.push(func(&t.f, &[(0, &lam(i + 1, 0)), (1, &lam(i + 1, 1))]));
        fs.push(func(&t.g, &[(0, &mu(i + 1, 0)), (1, &mu(i + 1, 1))]));
    }
    Ansatz::from_functions(fs)
}

/// Integer-evaluated constraint: `(coefficient, exponents per variable)` terms.
struct Compiled {
    terms: Vec<(i128, Vec<u32>)>,
}

impl Compiled {
    fn eval(&self, x: &[i128]) -> i128 {
        let mut acc = 0i128;
        for (c, es) in &self.terms {
            let mut t = *c;
            for (xi, &e) in x.iter().zip(es) {
                for _ in 0..e {
                    t *= xi;
                }
            }
            acc += t;
        }
        acc
    }
}

/// All numeric ansätze of order at most one with integer coefficients in
/// `-bound..=bound` that solve the equation with every function nonzero.
pub fn brute_force_order_one(spec: &EquationSpec, bound: i64) -> Result<Vec<Ansatz>> {
    let s = prepare(spec)?;
    let template = generic_order_one_ansatz(&s);
    let sys = extract_constraints(&build_lhs(&s, &template)?);
    let vars: Vec<Unknown> = sys.unknowns.iter().cloned().collect();
    let mut compiled = Vec::new();
    for c in &sys.entries {
        let mut terms = Vec::new();
        for (m, coef) in c.poly.terms() {
            let n: i128 = coef
                .to_integer()
                .try_into()
                .map_err(|_| Error::MalformedParams("coefficient overflow".into()))?;
            terms.push((n, vars.iter().map(|u| m.exponent_of(u)).collect()));
        }
        compiled.push(Compiled { terms });
    }
    // cheap constraints first
    compiled.sort_by_key(|c| c.terms.len());
    let n = vars.len();
    let names: Vec<String> = vars.iter().map(|u| String::from(u.name())).collect();
    let width = (2 * bound + 1) as u64;
    let total = width.pow(n as u32);
    let mut x = alloc::vec![0i128; n];
    let mut out = Vec::new();
    for idx in 0..total {
        let mut r = idx;
        for xi in x.iter_mut() {
            *xi = (r % width) as i128 - bound as i128;
            r /= width;
        }
        if compiled.iter().any(|c| c.eval(&x) != 0) {
            continue;
        }
        let values = |u: &Unknown| {
            let i = names.iter().position(|n| n == u.name())?;
            Some(UnknownPoly::int(x[i] as i64))
        };
        let a = template.substitute(&values);
        if s.function_names().iter().all(|f| a.get(f).is_ok_and(|f| !f.is_zero())) {
            out.push(a);
        }
    }
    Ok(out)
}

/// Members of `families` among the brute-force solutions, and the rest.
pub fn split_by_membership(
    solutions: &[Ansatz],
    families: &[SolutionFamily],
) -> (usize, Vec<Ansatz>) {
    let mut inside = 0;
    let mut outside = Vec::new();
    for a in solutions {
        if families.iter().any(|f| f.contains(a)) {
            inside += 1;
        } else {
            outside.push(a.clone());
        }
    }
    (inside, outside)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::verify_solution;
    use alloc::string::ToString;
    fn n(c: i64) -> UnknownPoly {
        UnknownPoly::int(c)
    }

    fn numeric(name: &str, cs: &[(u32, i64)]) -> FunctionSpec {
        FunctionSpec::new(name, cs.iter().map(|&(k, c)| FnTerm::new(0, k, n(c)))).unwrap()
    }

    #[test]
    fn families_for_two_five_three_four() {
        let spec = EquationSpec::from_pairs(&[(3, 4), (2, 5)]).unwrap();
        let c = classify_two_term(&spec).unwrap();
        let ids: Vec<FamilyId> = c.families.iter().map(|f| f.id).collect();
        assert_eq!(ids, [FamilyId::A, FamilyId::C]);
        assert_eq!(c.not_applicable[0].0, FamilyId::B);
        let a = &c.families[0];
        assert_eq!(
            a.relations[2].to_string(),
            "lam_1_0*mu_1_1^5 = -3*lam_2_1*mu_2_1^4"
        );
        // sorted: term 1 is (2,5) with f1, g1 renamed from input order
        let inst = Ansatz::from_functions([
            numeric("f1", &[(0, 3), (1, 1)]),
            numeric("g1", &[(0, 1), (1, 1)]),
            numeric("f2", &[(0, -3)]),
            numeric("g2", &[(0, 1), (1, 1)]),
        ]);
        // input order maps (3,4) -> f1, g1 and (2,5) -> f2, g2
        assert!(verify_solution(&spec, &inst).unwrap().is_pass());
        assert!(a.contains(&inst));
        let cc = &c.families[1];
        let lin = Ansatz::from_functions([
            numeric("f1", &[(0, -1)]),
            numeric("g1", &[(0, 1)]),
            numeric("f2", &[(0, 1)]),
            numeric("g2", &[(0, 1)]),
        ]);
        assert!(verify_solution(&spec, &lin).unwrap().is_pass());
        assert!(cc.contains(&lin));
        assert!(!a.contains(&lin));
    }

    #[test]
    fn case_b_needs_unit_q() {
        let spec = EquationSpec::from_pairs(&[(2, 4), (5, 1)]).unwrap();
        let b = case_b(&spec).unwrap().unwrap();
        assert!(b.check().unwrap().holds());
        assert!(case_b(&EquationSpec::from_pairs(&[(2, 5), (3, 4)]).unwrap()).unwrap().is_none());
    }

    #[test]
    fn preconditions() {
        let three = EquationSpec::from_pairs(&[(1, 6), (2, 5), (4, 3)]).unwrap();
        assert!(matches!(classify_two_term(&three), Err(Error::ConditionViolation(_))));
        let crossed = EquationSpec::from_pairs(&[(3, 4), (4, 3)]).unwrap();
        assert!(matches!(classify_two_term(&crossed), Err(Error::ConditionViolation(_))));
    }
}
