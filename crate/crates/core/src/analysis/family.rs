use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::equation::{build_lhs, extract_constraints, Ansatz, Constraint, EquationSpec};
use crate::error::Result;
use crate::rat::{q_frac, Q};
use crate::sympoly::{Unknown, UnknownPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    A,
    B,
    C,
    TwoExponential,
    Corollary7,
    Corollary9,
    KappaA,
    KappaB,
    KappaC,
    KappaFF,
}

impl FamilyId {
    pub fn as_str(self) -> &'static str {
        match self {
            FamilyId::A => "A",
            FamilyId::B => "B",
            FamilyId::C => "C",
            FamilyId::TwoExponential => "two-exponential",
            FamilyId::Corollary7 => "equal-order",
            FamilyId::Corollary9 => "proportional",
            FamilyId::KappaA => "kappa-fg-A",
            FamilyId::KappaB => "kappa-fg-B",
            FamilyId::KappaC => "kappa-fg-C",
            FamilyId::KappaFF => "kappa-ff",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `lead * var = rhs`, where `lead` and `rhs` only involve free parameters and
/// `lead` is a product of nonvanishing unknowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub var: Unknown,
    pub lead: UnknownPoly,
    pub rhs: UnknownPoly,
}

impl Relation {
    pub fn new(var: &str, lead: UnknownPoly, rhs: UnknownPoly) -> Self {
        Relation { var: Unknown::new(var), lead, rhs }
    }

    /// `lead * var - rhs`
    pub fn as_poly(&self) -> UnknownPoly {
        &(&self.lead * &UnknownPoly::unknown(self.var.clone())) - &self.rhs
    }

    /// Pseudo-remainder of `p` after eliminating `var`:
    /// `sum c_i rhs^i lead^(e-i)` for `p = sum c_i var^i` of degree `e`.
    pub fn reduce(&self, p: &UnknownPoly) -> UnknownPoly {
        let cs = p.coeffs_in(&self.var);
        let e = cs.len() as u32 - 1;
        if e == 0 {
            return p.clone();
        }
        let mut acc = UnknownPoly::zero();
        for (i, c) in cs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = i as u32;
            acc = &acc + &(&(c * &self.rhs.pow(i)) * &self.lead.pow(e - i));
        }
        acc
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = &self.lead * &UnknownPoly::unknown(self.var.clone());
        write!(f, "{lhs} = {}", self.rhs)
    }
}

/// A parametrized set of solutions of one equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFamily {
    pub id: FamilyId,
    pub spec: EquationSpec,
    pub templates: Ansatz,
    /// Solved relations, applied in order.
    pub relations: Vec<Relation>,
    /// Further polynomials that must vanish, not in solved form.
    pub constraints: Vec<UnknownPoly>,
    pub nonvanishing: Vec<Unknown>,
    pub notes: Vec<String>,
}

/// Outcome of checking that the templates solve the equation on the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyCheck {
    /// Number of constraints of the expanded template.
    pub constraints: usize,
    /// Constraints that the relations do not imply, after reduction.
    pub residual: Vec<Constraint>,
}

impl FamilyCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_empty()
    }
}

impl SolutionFamily {
    pub fn parameters(&self) -> BTreeSet<Unknown> {
        self.spec
            .function_names()
            .into_iter()
            .filter_map(|n| self.templates.get(n).ok())
            .flat_map(|f| f.unknowns())
            .collect()
    }

    pub fn free_parameters(&self) -> Vec<Unknown> {
        let solved: BTreeSet<&Unknown> = self.relations.iter().map(|r| &r.var).collect();
        self.parameters().into_iter().filter(|u| !solved.contains(u)).collect()
    }

    /// Every polynomial that must vanish on the family.
    pub fn parameter_constraints(&self) -> Vec<UnknownPoly> {
        self.relations
            .iter()
            .map(Relation::as_poly)
            .chain(self.constraints.iter().cloned())
            .collect()
    }

    pub fn reduce(&self, p: &UnknownPoly) -> UnknownPoly {
        self.relations.iter().fold(p.clone(), |acc, r| r.reduce(&acc))
    }

    /// Expands the templates and reduces each coefficient by the relations.
    /// Whatever remains must be a rational multiple of a listed constraint.
    pub fn check(&self) -> Result<FamilyCheck> {
        let sys = extract_constraints(&build_lhs(&self.spec, &self.templates)?);
        let listed: Vec<UnknownPoly> = self.constraints.iter().map(|c| self.reduce(c)).collect();
        let residual = sys
            .entries
            .iter()
            .filter(|c| {
                let r = self.reduce(&c.poly);
                !r.is_zero() && !listed.iter().any(|l| r.rational_multiple_of(l).is_some())
            })
            .cloned()
            .collect();
        Ok(FamilyCheck { constraints: sys.len(), residual })
    }

    pub fn instantiate(&self, values: &BTreeMap<Unknown, Q>) -> Ansatz {
        self.templates
            .substitute(&|u| values.get(u).cloned().map(UnknownPoly::constant))
    }

    /// Whether `values` satisfy every constraint and nonvanishing condition.
    pub fn admits(&self, values: &BTreeMap<Unknown, Q>) -> bool {
        let lookup = |u: &Unknown| values.get(u).cloned();
        self.nonvanishing
            .iter()
            .all(|u| values.get(u).is_some_and(|v| !v.is_zero()))
            && self
                .parameter_constraints()
                .iter()
                .all(|c| c.eval(&lookup).is_some_and(|v| v.is_zero()))
    }

    /// A random member: free parameters drawn from small nonzero rationals,
    /// solved parameters computed from the relations. `None` when the family
    /// carries unsolved constraints or no draw succeeds.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Option<(BTreeMap<Unknown, Q>, Ansatz)> {
        if !self.constraints.is_empty() {
            return None;
        }
        let free = self.free_parameters();
        for _ in 0..100 {
            let mut values: BTreeMap<Unknown, Q> = BTreeMap::new();
            for u in &free {
                let zero_ok = !self.nonvanishing.contains(u) && rng.random_range(0..4) == 0;
                let v = if zero_ok {
                    Q::zero()
                } else {
                    let mut n = 0;
                    while n == 0 {
                        n = rng.random_range(-5i64..=5);
                    }
                    q_frac(n, rng.random_range(1i64..=3))
                };
                values.insert(u.clone(), v);
            }
            let mut ok = true;
            for r in &self.relations {
                let lookup = |u: &Unknown| values.get(u).cloned();
                let (Some(lead), Some(rhs)) = (r.lead.eval(&lookup), r.rhs.eval(&lookup)) else {
                    ok = false;
                    break;
                };
                if lead.is_zero() {
                    ok = false;
                    break;
                }
                values.insert(r.var.clone(), rhs / lead);
            }
            if ok && self.admits(&values) {
                let a = self.instantiate(&values);
                return Some((values, a));
            }
        }
        None
    }

    /// Reads parameter values off a numeric ansatz when it has the template
    /// shape. Coefficients that are a single unknown are read directly;
    /// compound coefficients are solved once all but one of their unknowns
    /// are known and they are linear in the last.
    pub fn read_parameters(&self, numeric: &Ansatz) -> Option<BTreeMap<Unknown, Q>> {
        let mut pending: Vec<(UnknownPoly, Q)> = Vec::new();
        for name in self.spec.function_names() {
            let t = self.templates.get(name).ok()?;
            let f = numeric.get(name).ok()?;
            for ft in f.terms() {
                if t.coeff(ft.exp, ft.order).is_zero() {
                    return None;
                }
            }
            for tt in t.terms() {
                let v = f.coeff(tt.exp, tt.order).as_constant()?;
                pending.push((tt.coeff.clone(), v));
            }
        }
        let mut values: BTreeMap<Unknown, Q> = BTreeMap::new();
        loop {
            let mut progress = false;
            let mut rest = Vec::new();
            for (poly, v) in pending {
                let p = poly.substitute(&|u| values.get(u).cloned().map(UnknownPoly::constant));
                if let Some(c) = p.as_constant() {
                    if c != v {
                        return None;
                    }
                    continue;
                }
                let us = p.unknowns();
                if us.len() == 1 {
                    let u = us.into_iter().next().expect("one unknown");
                    let cs = p.coeffs_in(&u);
                    if cs.len() == 2 {
                        let c0 = cs[0].as_constant()?;
                        let c1 = cs[1].as_constant()?;
                        values.insert(u, (v - c0) / c1);
                        progress = true;
                        continue;
                    }
                }
                rest.push((poly, v));
            }
            pending = rest;
            if pending.is_empty() || !progress {
                break;
            }
        }
        pending.is_empty().then_some(values)
    }

    /// Whether a numeric ansatz is a member of the family.
    pub fn contains(&self, numeric: &Ansatz) -> bool {
        let Some(values) = self.read_parameters(numeric) else {
            return false;
        };
        if !self.admits(&values) {
            return false;
        }
        let inst = self.instantiate(&values);
        self.spec.function_names().into_iter().all(|n| {
            match (inst.get(n), numeric.get(n)) {
                (Ok(a), Ok(b)) => a.terms() == b.terms(),
                _ => false,
            }
        })
    }
}
