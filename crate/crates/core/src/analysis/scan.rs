//! Search over derivation orders for nontrivial solutions on the identity
//! exponential.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use super::linalg::{forced_zero, kernel, kernel_witness, rank};
use super::vandermonde::{vandermonde_certificate, VandermondeCertificate};
use crate::equation::{
    build_lhs, extract_constraints, verify_solution, Ansatz, EquationSpec, FnTerm, FunctionSpec,
};
use crate::error::{Error, Result};
use crate::expansion::expand_deriv_power;
use crate::rat::{rational_grid, Q};
use crate::sympoly::{Generator, Monomial, SymPoly, Unknown, UnknownPoly};

/// Largest order the scan accepts.
pub const SCAN_ORDER_CAP: u32 = 6;
/// Largest number of order assignments the scan accepts.
pub const SCAN_ASSIGNMENT_CAP: u64 = 100_000;

/// What counts as a nontrivial solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Nontriviality {
    /// Orders are exact: every leading coefficient is nonzero.
    LeadingNonzero,
    /// Orders are upper bounds: no function is identically zero.
    NoZeroFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanConfig {
    pub k_max: u32,
    /// Grid of `a/b` with `1 <= |a|, b <= grid_bound`.
    pub grid_bound: u32,
    pub mode: Nontriviality,
    /// Grid points tried per assignment before giving up.
    pub max_grid_points: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            k_max: 1,
            grid_bound: 3,
            mode: Nontriviality::LeadingNonzero,
            max_grid_points: 2048,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Every `g` linear and every `f` confined to one term: the system is
    /// linear in the `f` coefficients once `g = x`.
    ExactLinear,
    /// Grid over the `g` coefficients, exact elimination in the `f` ones.
    GridLinear,
    /// Some function appears in both roles: grid over every coefficient.
    FullGrid,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::ExactLinear => "exact-linear",
            Strategy::GridLinear => "grid-linear",
            Strategy::FullGrid => "full-grid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    /// The highest-weight part of the left-hand side is a linear system in
    /// the products of leading coefficients and forces some of them to zero.
    TopWeight { weight: u32, terms: Vec<usize>, rank: usize, forced_zero: Vec<usize> },
    /// Exact elimination in the `f` coefficients (with `g = x`).
    LinearKernel {
        unknowns: usize,
        rank: usize,
        forced_zero: Vec<String>,
        /// For the terms whose `f` has the top order `K`, when `K` is at least
        /// their number.
        vandermonde: Option<VandermondeCertificate>,
        /// The Vandermonde step forces the same leading coefficients to zero.
        vandermonde_agrees: Option<bool>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssignmentVerdict {
    /// A nontrivial solution, re-verified.
    Found { witness: Ansatz, order: u32 },
    OnlyTrivial(Certificate),
    Inconclusive { strategy: Strategy, searched: usize, total: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentReport {
    pub orders: BTreeMap<String, u32>,
    pub verdict: AssignmentVerdict,
}

impl AssignmentReport {
    pub fn max_order(&self) -> u32 {
        self.orders.values().copied().max().unwrap_or(0)
    }

    /// Every `g` has order 0.
    pub fn g_linear(&self, spec: &EquationSpec) -> bool {
        spec.terms().iter().all(|t| self.orders[&t.g] == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub spec: EquationSpec,
    pub config: ScanConfig,
    pub grid: Vec<Q>,
    pub assignments: Vec<AssignmentReport>,
    pub max_nontrivial_order: Option<u32>,
    /// `n - 1`
    pub conjectured_bound: u32,
}

impl ScanReport {
    pub fn conjecture_consistent(&self) -> bool {
        self.max_nontrivial_order.is_none_or(|k| k <= self.conjectured_bound)
    }

    pub fn count(&self, pred: impl Fn(&AssignmentVerdict) -> bool) -> usize {
        self.assignments.iter().filter(|a| pred(&a.verdict)).count()
    }

    pub fn witnesses(&self) -> impl Iterator<Item = (&AssignmentReport, &Ansatz)> {
        self.assignments.iter().filter_map(|a| match &a.verdict {
            AssignmentVerdict::Found { witness, .. } => Some((a, witness)),
            _ => None,
        })
    }
}

fn coeff_name(function: &str, l: u32) -> String {
    format!("{function}_{l}")
}

fn generic(function: &str, order: u32) -> FunctionSpec {
    FunctionSpec::new(
        function,
        (0..=order).map(|l| FnTerm::new(0, l, UnknownPoly::var(&coeff_name(function, l)))),
    )
    .expect("distinct orders")
}

struct Roles {
    f_names: BTreeSet<String>,
    g_names: BTreeSet<String>,
    /// Each f name occurs in exactly one term.
    f_unique: bool,
}

fn roles(spec: &EquationSpec) -> Roles {
    let f_names: BTreeSet<String> = spec.terms().iter().map(|t| t.f.clone()).collect();
    let g_names: BTreeSet<String> = spec.terms().iter().map(|t| t.g.clone()).collect();
    let f_unique = f_names.len() == spec.len();
    Roles { f_names, g_names, f_unique }
}

fn top_weight(spec: &EquationSpec, orders: &BTreeMap<String, u32>) -> Option<Certificate> {
    let weights: Vec<u32> = spec
        .terms()
        .iter()
        .map(|t| orders[&t.f] + t.q * orders[&t.g])
        .collect();
    let w = *weights.iter().max()?;
    let top: Vec<usize> = (0..spec.len()).filter(|&i| weights[i] == w).collect();
    let cols: Vec<SymPoly> = top
        .iter()
        .map(|&i| {
            let t = &spec.terms()[i];
            let g = SymPoly::gen(Generator::d(orders[&t.g])).pow(t.q);
            (&expand_deriv_power(0, orders[&t.f], t.p) * &g).scale_q(&t.scalar)
        })
        .collect();
    let monos: BTreeSet<&Monomial> = cols.iter().flat_map(|c| c.terms().map(|(m, _)| m)).collect();
    let rows: Vec<Vec<Q>> = monos
        .iter()
        .map(|m| {
            cols.iter()
                .map(|c| c.coeff_of(m).as_constant().expect("numeric"))
                .collect()
        })
        .collect();
    let basis = kernel(&rows, top.len());
    let forced: Vec<usize> = forced_zero(&basis, top.len()).into_iter().map(|c| top[c]).collect();
    (!forced.is_empty()).then(|| Certificate::TopWeight {
        weight: w,
        terms: top.clone(),
        rank: rank(&rows, top.len()),
        forced_zero: forced,
    })
}

/// Linear system in the `f` unknowns with entries polynomial in the `g`
/// unknowns.
struct LinearSystem {
    entries: Vec<Vec<UnknownPoly>>,
}

impl LinearSystem {
    fn build(spec: &EquationSpec, template: &Ansatz, f_unknowns: &[Unknown]) -> Result<Self> {
        let sys = extract_constraints(&build_lhs(spec, template)?);
        let mut entries = Vec::new();
        for c in &sys.entries {
            let row: Vec<UnknownPoly> = f_unknowns
                .iter()
                .map(|u| {
                    let cs = c.poly.coeffs_in(u);
                    cs.get(1).cloned().unwrap_or_default()
                })
                .collect();
            entries.push(row);
        }
        Ok(LinearSystem { entries })
    }

    fn at(&self, g_values: &BTreeMap<Unknown, Q>) -> Vec<Vec<Q>> {
        let lookup = |u: &Unknown| g_values.get(u).cloned();
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(&lookup).expect("g assigned")).collect())
            .collect()
    }
}

/// Indices of the coordinates that must be nonzero: one per function block.
fn required(
    f_unknowns: &[Unknown],
    f_names: &BTreeSet<String>,
    orders: &BTreeMap<String, u32>,
    mode: Nontriviality,
    basis: &[Vec<Q>],
) -> Option<Vec<usize>> {
    let mut req = Vec::new();
    let n = f_unknowns.len();
    let forced = forced_zero(basis, n);
    for f in f_names {
        match mode {
            Nontriviality::LeadingNonzero => {
                let name = coeff_name(f, orders[f]);
                req.push(f_unknowns.iter().position(|u| u.name() == name)?);
            }
            Nontriviality::NoZeroFunction => {
                let pick = (0..=orders[f]).find_map(|l| {
                    let name = coeff_name(f, l);
                    let i = f_unknowns.iter().position(|u| u.name() == name)?;
                    (!forced.contains(&i)).then_some(i)
                });
                // a block entirely forced to zero: report its leading entry
                let fallback = || {
                    let name = coeff_name(f, orders[f]);
                    f_unknowns.iter().position(|u| u.name() == name)
                };
                req.push(pick.or_else(fallback)?);
            }
        }
    }
    Some(req)
}

fn assemble(
    template: &Ansatz,
    f_unknowns: &[Unknown],
    f_values: &[Q],
    g_values: &BTreeMap<Unknown, Q>,
) -> Ansatz {
    template.substitute(&|u| {
        if let Some(i) = f_unknowns.iter().position(|v| v == u) {
            return Some(UnknownPoly::constant(f_values[i].clone()));
        }
        g_values.get(u).cloned().map(UnknownPoly::constant)
    })
}

fn witness_order(spec: &EquationSpec, a: &Ansatz) -> u32 {
    spec.function_names()
        .into_iter()
        .filter_map(|n| a.get(n).ok().and_then(FunctionSpec::order))
        .max()
        .unwrap_or(0)
}

/// Mixed-radix enumeration of value tuples, in order, at most `cap` of them.
fn grid_points(choices: &[Vec<Q>], cap: usize) -> (Vec<Vec<Q>>, u128) {
    let total: u128 = choices.iter().map(|c| c.len() as u128).product();
    let take = total.min(cap as u128) as usize;
    let mut out = Vec::with_capacity(take);
    let mut idx = alloc::vec![0usize; choices.len()];
    for _ in 0..take {
        out.push(idx.iter().zip(choices).map(|(&i, c)| c[i].clone()).collect());
        for (d, c) in idx.iter_mut().zip(choices) {
            *d += 1;
            if *d < c.len() {
                break;
            }
            *d = 0;
        }
    }
    (out, total)
}

struct Ctx<'a> {
    spec: &'a EquationSpec,
    config: &'a ScanConfig,
    grid: &'a [Q],
    roles: &'a Roles,
}

impl Ctx<'_> {
    fn choices(&self, leading: bool) -> Vec<Q> {
        let mut v = Vec::new();
        if !leading || self.config.mode == Nontriviality::NoZeroFunction {
            v.push(Q::zero());
        }
        v.extend(self.grid.iter().cloned());
        v
    }

    fn linear(&self, orders: &BTreeMap<String, u32>, exact: bool) -> Result<AssignmentVerdict> {
        let mut fs = Vec::new();
        let mut f_unknowns = Vec::new();
        for f in &self.roles.f_names {
            fs.push(generic(f, orders[f]));
            f_unknowns.extend((0..=orders[f]).map(|l| Unknown::new(&coeff_name(f, l))));
        }
        let mut g_vars: Vec<(Unknown, Vec<Q>)> = Vec::new();
        let fix_leading =
            self.roles.f_unique && self.config.mode == Nontriviality::LeadingNonzero;
        for g in &self.roles.g_names {
            let k = orders[g];
            fs.push(generic(g, k));
            for l in 0..=k {
                let u = Unknown::new(&coeff_name(g, l));
                let vals = if l == k && fix_leading {
                    alloc::vec![Q::from_integer(1.into())]
                } else {
                    self.choices(l == k)
                };
                g_vars.push((u, vals));
            }
        }
        let template = Ansatz::from_functions(fs);
        let system = LinearSystem::build(self.spec, &template, &f_unknowns)?;
        let choices: Vec<Vec<Q>> = g_vars.iter().map(|(_, c)| c.clone()).collect();
        let (points, total) = grid_points(&choices, self.config.max_grid_points);
        let n = f_unknowns.len();
        let strategy = if exact { Strategy::ExactLinear } else { Strategy::GridLinear };
        for point in &points {
            if self.config.mode == Nontriviality::NoZeroFunction
                && self.roles.g_names.iter().any(|g| {
                    (0..=orders[g]).all(|l| {
                        let name = coeff_name(g, l);
                        g_vars
                            .iter()
                            .zip(point)
                            .any(|((u, _), v)| u.name() == name && v.is_zero())
                    })
                })
            {
                continue;
            }
            let g_values: BTreeMap<Unknown, Q> =
                g_vars.iter().map(|(u, _)| u.clone()).zip(point.iter().cloned()).collect();
            let rows = system.at(&g_values);
            let basis = kernel(&rows, n);
            let req = required(&f_unknowns, &self.roles.f_names, orders, self.config.mode, &basis)
                .expect("leading unknowns present");
            if let Some(w) = kernel_witness(&basis, n, &req) {
                let witness = assemble(&template, &f_unknowns, &w, &g_values);
                if verify_solution(self.spec, &witness)?.is_pass() {
                    let order = witness_order(self.spec, &witness);
                    return Ok(AssignmentVerdict::Found { witness, order });
                }
                return Err(Error::MalformedParams("kernel witness failed verification".into()));
            }
            if exact {
                let forced = forced_zero(&basis, n);
                let forced_names: Vec<String> = req
                    .iter()
                    .filter(|i| forced.contains(i))
                    .map(|&i| f_unknowns[i].name().to_string())
                    .collect();
                let (vandermonde, vandermonde_agrees) = self.vandermonde_step(orders, &forced_names);
                return Ok(AssignmentVerdict::OnlyTrivial(Certificate::LinearKernel {
                    unknowns: n,
                    rank: rank(&rows, n),
                    forced_zero: forced_names,
                    vandermonde,
                    vandermonde_agrees,
                }));
            }
        }
        Ok(AssignmentVerdict::Inconclusive { strategy, searched: points.len(), total })
    }

    fn vandermonde_step(
        &self,
        orders: &BTreeMap<String, u32>,
        forced: &[String],
    ) -> (Option<VandermondeCertificate>, Option<bool>) {
        let k = self.spec.terms().iter().map(|t| orders[&t.f]).max().unwrap_or(0);
        let top: Vec<&crate::equation::Term> =
            self.spec.terms().iter().filter(|t| orders[&t.f] == k).collect();
        let m = top.len();
        if (k as usize) < m || m == 0 {
            return (None, None);
        }
        let ps: Vec<u32> = top.iter().map(|t| t.p).collect();
        let Ok(cert) = vandermonde_certificate(&ps, m) else {
            return (None, None);
        };
        let agrees = cert.trivial_kernel()
            && top.iter().all(|t| forced.contains(&coeff_name(&t.f, k)));
        (Some(cert), Some(agrees))
    }

    fn full_grid(&self, orders: &BTreeMap<String, u32>) -> Result<AssignmentVerdict> {
        let names: BTreeSet<&str> = self.spec.function_names();
        let mut fs = Vec::new();
        let mut vars: Vec<(Unknown, Vec<Q>)> = Vec::new();
        for &f in &names {
            let k = orders[f];
            fs.push(generic(f, k));
            for l in 0..=k {
                vars.push((Unknown::new(&coeff_name(f, l)), self.choices(l == k)));
            }
        }
        let template = Ansatz::from_functions(fs);
        let sys = extract_constraints(&build_lhs(self.spec, &template)?);
        let choices: Vec<Vec<Q>> = vars.iter().map(|(_, c)| c.clone()).collect();
        let (points, total) = grid_points(&choices, self.config.max_grid_points);
        for point in &points {
            let values: BTreeMap<Unknown, Q> =
                vars.iter().map(|(u, _)| u.clone()).zip(point.iter().cloned()).collect();
            let a = template.substitute(&|u| values.get(u).cloned().map(UnknownPoly::constant));
            if names.iter().any(|n| a.get(n).is_ok_and(FunctionSpec::is_zero)) {
                continue;
            }
            if sys.satisfied_by(&|u| values.get(u).cloned()) == Some(true) {
                if verify_solution(self.spec, &a)?.is_pass() {
                    let order = witness_order(self.spec, &a);
                    return Ok(AssignmentVerdict::Found { witness: a, order });
                }
                return Err(Error::MalformedParams("grid witness failed verification".into()));
            }
        }
        Ok(AssignmentVerdict::Inconclusive { strategy: Strategy::FullGrid, searched: points.len(), total })
    }

    fn assignment(&self, orders: &BTreeMap<String, u32>) -> Result<AssignmentVerdict> {
        let disjoint = self.roles.f_names.is_disjoint(&self.roles.g_names);
        let g_linear = self.roles.g_names.iter().all(|g| orders[g] == 0);
        let leading = self.config.mode == Nontriviality::LeadingNonzero;
        if disjoint && g_linear && self.roles.f_unique && leading {
            return self.linear(orders, true);
        }
        if leading {
            if let Some(c) = top_weight(self.spec, orders) {
                return Ok(AssignmentVerdict::OnlyTrivial(c));
            }
        }
        if disjoint {
            self.linear(orders, false)
        } else {
            self.full_grid(orders)
        }
    }
}

/// Runs every order assignment up to `config.k_max` per function name.
pub fn conjecture_scan(spec: &EquationSpec, config: &ScanConfig) -> Result<ScanReport> {
    spec.require_homogeneous()?;
    if config.k_max > SCAN_ORDER_CAP {
        return Err(Error::ScanCap(format!("max order {} > {}", config.k_max, SCAN_ORDER_CAP)));
    }
    let names: Vec<String> = spec.function_names().into_iter().map(String::from).collect();
    let count = (config.k_max as u64 + 1).checked_pow(names.len() as u32);
    if count.is_none_or(|c| c > SCAN_ASSIGNMENT_CAP) {
        return Err(Error::ScanCap(format!(
            "{} functions with orders up to {} exceed {} assignments",
            names.len(),
            config.k_max,
            SCAN_ASSIGNMENT_CAP
        )));
    }
    let grid = rational_grid(config.grid_bound);
    let roles = roles(spec);
    let ctx = Ctx { spec, config, grid: &grid, roles: &roles };
    let mut assignments = Vec::new();
    let mut idx = alloc::vec![0u32; names.len()];
    for _ in 0..count.expect("checked") {
        let orders: BTreeMap<String, u32> = names.iter().cloned().zip(idx.iter().copied()).collect();
        let verdict = ctx.assignment(&orders)?;
        assignments.push(AssignmentReport { orders, verdict });
        for d in idx.iter_mut().rev() {
            *d += 1;
            if *d <= config.k_max {
                break;
            }
            *d = 0;
        }
    }
    let max_nontrivial_order = assignments
        .iter()
        .filter_map(|a| match &a.verdict {
            AssignmentVerdict::Found { order, .. } => Some(*order),
            _ => None,
        })
        .max();
    Ok(ScanReport {
        spec: spec.clone(),
        config: config.clone(),
        grid,
        assignments,
        max_nontrivial_order,
        conjectured_bound: spec.len() as u32 - 1,
    })
}
