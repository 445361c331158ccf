//! Specializations of the classification to restricted solution shapes.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::family::{FamilyCheck, FamilyId, Relation, SolutionFamily};
use super::linalg::{forced_zero, kernel, rref};
use super::scan::{conjecture_scan, ScanConfig, ScanReport};
use crate::equation::{
    build_lhs, extract_constraints, verify_solution, Ansatz, EquationSpec, FnTerm, FunctionSpec,
    Term,
};
use crate::error::{Error, Result};
use crate::rat::{q, rational_grid, Q};
use crate::sympoly::{Unknown, UnknownPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CorollaryRequest {
    /// Every `g_i` of the same order: `g_i = mu_i x` and `f_i` of order at
    /// most `order`.
    EqualGOrder { pairs: Vec<(u32, u32)>, order: u32 },
    EqualFOrder { pairs: Vec<(u32, u32)>, order: u32 },
    /// `f_i = c_i g_i`.
    Proportional { pairs: Vec<(u32, u32)>, c: Vec<Q> },
    /// `f(x^p) g(x)^(N-p) = kappa f(x^q) g(x)^(N-q)`
    KappaFg { p: u32, q: u32, n: u32, kappa: Q },
    /// `f(x^p) f(x)^(N-p) = kappa g(x^q) g(x)^(N-q)`
    KappaFf { p: u32, q: u32, n: u32, kappa: Q, order: u32 },
}

impl CorollaryRequest {
    pub fn kind(&self) -> &'static str {
        match self {
            CorollaryRequest::EqualGOrder { .. } => "equal-g-order",
            CorollaryRequest::EqualFOrder { .. } => "equal-f-order",
            CorollaryRequest::Proportional { .. } => "proportional",
            CorollaryRequest::KappaFg { .. } => "kappa-fg",
            CorollaryRequest::KappaFf { .. } => "kappa-ff",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryOutcome {
    pub kind: &'static str,
    pub spec: EquationSpec,
    pub families: Vec<(SolutionFamily, FamilyCheck)>,
    /// Grid members of the families, each verified.
    pub members: Vec<(FamilyId, Ansatz)>,
    /// Leading coefficients the reduced linear system forces to zero.
    pub forced_zero: Vec<Unknown>,
    pub scan: Option<ScanReport>,
    pub notes: Vec<String>,
}

fn v(name: &str) -> UnknownPoly {
    UnknownPoly::var(name)
}

fn linear(name: &str, c: UnknownPoly) -> FunctionSpec {
    FunctionSpec::new(name, [FnTerm::new(0, 0, c)]).expect("single term")
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedParams(msg.into())
}

/// Members of a family over the rational grid of the given bound: free
/// parameters range over the grid (and zero unless required nonzero), the
/// relations fix the rest, and the listed constraints must vanish.
pub fn grid_members(
    family: &SolutionFamily,
    grid_bound: u32,
    cap: usize,
) -> Vec<(BTreeMap<Unknown, Q>, Ansatz)> {
    let grid = rational_grid(grid_bound);
    let free = family.free_parameters();
    let choices: Vec<Vec<Q>> = free
        .iter()
        .map(|u| {
            let mut c = Vec::new();
            if !family.nonvanishing.contains(u) {
                c.push(Q::zero());
            }
            c.extend(grid.iter().cloned());
            c
        })
        .collect();
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    let mut out = Vec::new();
    let mut idx = alloc::vec![0usize; free.len()];
    for _ in 0..total.min(cap as u128 * 64) {
        let mut values: BTreeMap<Unknown, Q> = free
            .iter()
            .cloned()
            .zip(idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()))
            .collect();
        let mut ok = true;
        for r in &family.relations {
            let lookup = |u: &Unknown| values.get(u).cloned();
            match (r.lead.eval(&lookup), r.rhs.eval(&lookup)) {
                (Some(l), Some(rhs)) if !l.is_zero() => {
                    values.insert(r.var.clone(), rhs / l);
                }
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && family.admits(&values) {
            let a = family.instantiate(&values);
            out.push((values, a));
            if out.len() >= cap {
                break;
            }
        }
        for (d, c) in idx.iter_mut().zip(&choices) {
            *d += 1;
            if *d < c.len() {
                break;
            }
            *d = 0;
        }
    }
    out
}

fn require_family(fam: &SolutionFamily) -> Result<FamilyCheck> {
    let check = fam.check()?;
    if !check.holds() {
        return Err(Error::ConditionViolation(format!(
            "family {} leaves {} of {} constraints",
            fam.id,
            check.residual.len(),
            check.constraints
        )));
    }
    Ok(check)
}

fn verified_members(
    fam: &SolutionFamily,
    grid_bound: u32,
    cap: usize,
) -> Result<Vec<(FamilyId, Ansatz)>> {
    let mut out = Vec::new();
    for (_, a) in grid_members(fam, grid_bound, cap) {
        if !verify_solution(&fam.spec, &a)?.is_pass() {
            return Err(Error::ConditionViolation(format!("a member of {} fails", fam.id)));
        }
        out.push((fam.id, a));
    }
    Ok(out)
}

/// `g_i = mu_i x` and `f_i` of order at most `order`. The constraints are
/// linear in `mu_i^(q_i) lam_i_l`; each pivot of their reduced form becomes a
/// relation.
fn equal_order(pairs: &[(u32, u32)], order: u32) -> Result<(SolutionFamily, Vec<Unknown>)> {
    let spec = EquationSpec::from_pairs(pairs)?;
    spec.require_homogeneous()?;
    let lam = |i: usize, l: u32| format!("lam_{}_{l}", i + 1);
    let mu = |i: usize| format!("mu_{}", i + 1);
    let mut unit = Vec::new();
    let mut cols: Vec<(usize, u32)> = Vec::new();
    for (i, t) in spec.terms().iter().enumerate() {
        unit.push(
            FunctionSpec::new(&t.f, (0..=order).map(|l| FnTerm::new(0, l, v(&lam(i, l)))))
                .expect("distinct orders"),
        );
        unit.push(linear(&t.g, UnknownPoly::one()));
        cols.extend((0..=order).map(|l| (i, l)));
    }
    let sys = extract_constraints(&build_lhs(&spec, &Ansatz::from_functions(unit))?);
    let rows: Vec<Vec<Q>> = sys
        .entries
        .iter()
        .map(|c| {
            cols.iter()
                .map(|&(i, l)| {
                    let cs = c.poly.coeffs_in(&Unknown::new(&lam(i, l)));
                    cs.get(1).and_then(UnknownPoly::as_constant).unwrap_or_else(Q::zero)
                })
                .collect()
        })
        .collect();
    let (reduced, pivots) = rref(rows.clone(), cols.len());
    let nu = |i: usize, l: u32| &v(&mu(i)).pow(spec.terms()[i].q) * &v(&lam(i, l));
    let mut relations = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        let (pi, pl) = cols[pc];
        let mut rhs = UnknownPoly::zero();
        for (c, &(i, l)) in cols.iter().enumerate() {
            if c != pc && !reduced[r][c].is_zero() {
                rhs = &rhs - &nu(i, l).scale(&reduced[r][c]);
            }
        }
        relations.push(Relation::new(&lam(pi, pl), v(&mu(pi)).pow(spec.terms()[pi].q), rhs));
    }
    let basis = kernel(&rows, cols.len());
    let forced: Vec<Unknown> = forced_zero(&basis, cols.len())
        .into_iter()
        .filter(|&c| cols[c].1 == order)
        .map(|c| Unknown::new(&lam(cols[c].0, order)))
        .collect();
    let mut templates = Vec::new();
    for (i, t) in spec.terms().iter().enumerate() {
        templates.push(
            FunctionSpec::new(&t.f, (0..=order).map(|l| FnTerm::new(0, l, v(&lam(i, l)))))
                .expect("distinct orders"),
        );
        templates.push(linear(&t.g, v(&mu(i))));
    }
    let fam = SolutionFamily {
        id: FamilyId::Corollary7,
        spec: spec.clone(),
        templates: Ansatz::from_functions(templates),
        relations,
        constraints: Vec::new(),
        nonvanishing: (0..spec.len()).map(|i| Unknown::new(&mu(i))).collect(),
        notes: alloc::vec![format!(
            "reduced system has rank {} in {} products mu_i^q_i lam_i_l",
            pivots.len(),
            cols.len()
        )],
    };
    Ok((fam, forced))
}

/// `f_i = lam_i x`, `g_i = c_i lam_i x` with `sum c_i^q_i lam_i^(q_i+1) = 0`.
fn proportional(pairs: &[(u32, u32)], c: &[Q]) -> Result<SolutionFamily> {
    if c.len() != pairs.len() || c.iter().any(Zero::is_zero) {
        return Err(malformed("proportional needs one nonzero c per term"));
    }
    let spec = EquationSpec::from_pairs(pairs)?;
    spec.require_homogeneous()?;
    let mut templates = Vec::new();
    let mut constraint = UnknownPoly::zero();
    for (i, t) in spec.terms().iter().enumerate() {
        let l = v(&format!("lam_{}", i + 1));
        templates.push(linear(&t.f, l.clone()));
        templates.push(linear(&t.g, l.scale(&c[i])));
        constraint = &constraint + &l.pow(t.q + 1).scale(&crate::rat::pow_q(&c[i], t.q));
    }
    Ok(SolutionFamily {
        id: FamilyId::Corollary9,
        spec: spec.clone(),
        templates: Ansatz::from_functions(templates),
        relations: Vec::new(),
        constraints: alloc::vec![constraint],
        nonvanishing: (0..spec.len()).map(|i| Unknown::new(&format!("lam_{}", i + 1))).collect(),
        notes: Vec::new(),
    })
}

fn kappa_params(p: u32, q: u32, n: u32, kappa: &Q) -> Result<()> {
    if p == 0 || q == 0 || p >= n || q >= n {
        return Err(malformed(format!("need 0 < p, q < N, got p = {p}, q = {q}, N = {n}")));
    }
    if p == q {
        return Err(malformed("p and q must differ"));
    }
    if q == n - p {
        return Err(malformed("q = N - p is excluded"));
    }
    if kappa.is_zero() {
        return Err(malformed("kappa must be nonzero"));
    }
    Ok(())
}

fn kappa_fg_spec(p: u32, q: u32, n: u32, kappa: &Q) -> Result<EquationSpec> {
    EquationSpec::new(alloc::vec![
        Term::new(p, n - p, "f", "g"),
        Term::new(q, n - q, "f", "g").with_scalar(-kappa.clone()),
    ])
}

fn kappa_ff_spec(p: u32, q: u32, n: u32, kappa: &Q) -> Result<EquationSpec> {
    EquationSpec::new(alloc::vec![
        Term::new(p, n - p, "f", "f"),
        Term::new(q, n - q, "g", "g").with_scalar(-kappa.clone()),
    ])
}

fn kappa_fg(p: u32, q: u32, n: u32, kappa: &Q) -> Result<(EquationSpec, Vec<SolutionFamily>, Vec<String>)> {
    kappa_params(p, q, n, kappa)?;
    let spec = kappa_fg_spec(p, q, n, kappa)?;
    let (l0, l1, m0) = (v("lam0"), v("lam1"), v("mu0"));
    let k = |x: UnknownPoly| x.scale(kappa);
    let mut fams = Vec::new();
    let mut notes = Vec::new();

    let c_b = &(&l0 * &m0.pow(n - p)) - &k(&l0 * &m0.pow(n - q));
    let c_a = &(&l1 * &m0.pow(n - p)).scale(&q_u(p)) - &k((&l1 * &m0.pow(n - q)).scale(&q_u(q)));
    fams.push(SolutionFamily {
        id: FamilyId::KappaA,
        spec: spec.clone(),
        templates: Ansatz::from_functions([
            FunctionSpec::new("f", [FnTerm::new(0, 0, l0.clone()), FnTerm::new(0, 1, l1.clone())])
                .expect("distinct"),
            linear("g", m0.clone()),
        ]),
        relations: Vec::new(),
        constraints: alloc::vec![c_b.clone(), c_a],
        nonvanishing: alloc::vec![Unknown::new("lam1"), Unknown::new("mu0")],
        notes: alloc::vec![String::from(
            "with lam0 nonzero as well the two constraints force p = q, so lam0 = 0 on the family"
        )],
    });
    fams.push(SolutionFamily {
        id: FamilyId::KappaB,
        spec: spec.clone(),
        templates: Ansatz::from_functions([linear("f", l0.clone()), linear("g", m0.clone())]),
        relations: Vec::new(),
        constraints: alloc::vec![c_b],
        nonvanishing: alloc::vec![Unknown::new("lam0"), Unknown::new("mu0")],
        notes: Vec::new(),
    });
    if (p.min(q), p.max(q)) == (1, 2) {
        let (a, b) = (v("a"), v("b"));
        let two = |name: &str, c1: UnknownPoly, c2: UnknownPoly| {
            FunctionSpec::new(name, [FnTerm::new(1, 0, c1), FnTerm::new(2, 0, c2)]).expect("distinct")
        };
        let templates = Ansatz::from_functions([two("f", a.clone(), -&a), two("g", b.clone(), b.clone())]);
        let candidates = [
            ("a = kappa b", Relation::new("a", UnknownPoly::one(), k(b.clone()))),
            ("b = kappa", Relation::new("b", UnknownPoly::one(), UnknownPoly::constant(kappa.clone()))),
        ];
        for (label, rel) in candidates {
            let fam = SolutionFamily {
                id: FamilyId::KappaC,
                spec: spec.clone(),
                templates: templates.clone(),
                relations: alloc::vec![rel],
                constraints: Vec::new(),
                nonvanishing: alloc::vec![Unknown::new("a"), Unknown::new("b")],
                notes: alloc::vec![format!("condition {label} verified")],
            };
            if fam.check()?.holds() {
                fams.push(fam);
                break;
            }
            notes.push(format!("two-exponential condition {label} rejected"));
        }
    } else {
        notes.push(format!("two-exponential alternative needs {{p, q}} = {{1, 2}}, got {{{p}, {q}}}"));
    }
    Ok((spec, fams, notes))
}

fn q_u(n: u32) -> Q {
    q(n as i64)
}

/// Runs one corollary: emits its families, checks them, and collects
/// verified grid members.
pub fn corollary_specialization(
    request: &CorollaryRequest,
    grid_bound: u32,
) -> Result<CorollaryOutcome> {
    const MEMBERS: usize = 8;
    let kind = request.kind();
    let mut notes = Vec::new();
    let mut forced = Vec::new();
    let mut scan = None;
    let (spec, fams) = match request {
        CorollaryRequest::EqualGOrder { pairs, order }
        | CorollaryRequest::EqualFOrder { pairs, order } => {
            let (fam, f) = equal_order(pairs, *order)?;
            forced = f;
            (fam.spec.clone(), alloc::vec![fam])
        }
        CorollaryRequest::Proportional { pairs, c } => {
            let fam = proportional(pairs, c)?;
            (fam.spec.clone(), alloc::vec![fam])
        }
        CorollaryRequest::KappaFg { p, q, n, kappa } => {
            let (spec, fams, extra) = kappa_fg(*p, *q, *n, kappa)?;
            notes.extend(extra);
            (spec, fams)
        }
        CorollaryRequest::KappaFf { p, q, n, kappa, order } => {
            kappa_params(*p, *q, *n, kappa)?;
            let spec = kappa_ff_spec(*p, *q, *n, kappa)?;
            let (l0, m0) = (v("lam0"), v("mu0"));
            let fam = SolutionFamily {
                id: FamilyId::KappaFF,
                spec: spec.clone(),
                templates: Ansatz::from_functions([linear("f", l0.clone()), linear("g", m0.clone())]),
                relations: Vec::new(),
                constraints: alloc::vec![
                    &l0.pow(n - p + 1) - &m0.pow(n - q + 1).scale(kappa)
                ],
                nonvanishing: alloc::vec![Unknown::new("lam0"), Unknown::new("mu0")],
                notes: Vec::new(),
            };
            if *kappa != q_u(1) {
                let cfg = ScanConfig { k_max: *order, grid_bound, ..ScanConfig::default() };
                scan = Some(conjecture_scan(&spec, &cfg)?);
            }
            (spec, alloc::vec![fam])
        }
    };
    let mut families = Vec::new();
    let mut members = Vec::new();
    for fam in fams {
        let check = require_family(&fam)?;
        let found = verified_members(&fam, grid_bound, MEMBERS)?;
        if found.is_empty() {
            notes.push(format!(
                "{}: no member with parameters on the rational grid of bound {grid_bound}; \
                 possibly unrepresentable over Q",
                fam.id
            ));
        }
        members.extend(found);
        families.push((fam, check));
    }
    Ok(CorollaryOutcome { kind, spec, families, members, forced_zero: forced, scan, notes })
}
