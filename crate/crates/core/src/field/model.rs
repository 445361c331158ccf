//! Additive maps on Q(t) built from d/dt and substitutions, and sample-based
//! checks of equations, polarization and the defining identities.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::rf::RationalFunction;
use super::upoly::UPoly;
use crate::equation::{Ansatz, EquationSpec, FunctionSpec};
use crate::error::{Error, Result};
use crate::rat::{factorial, q_int, Q};

/// Degree bound for random samples.
pub const SAMPLE_DEGREE: usize = 3;
/// Coefficient bound for random samples.
pub const SAMPLE_BOUND: i64 = 5;

/// `x -> scalar * endo(d^order(x))`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub scalar: Q,
    pub endo: RationalFunction,
    pub order: u32,
}

impl Atom {
    pub fn new(scalar: Q, endo: RationalFunction, order: u32) -> Result<Self> {
        if endo.is_constant() {
            return Err(Error::ConstantEndomorphism);
        }
        Ok(Atom { scalar, endo, order })
    }

    fn is_identity_endo(&self) -> bool {
        self.endo == RationalFunction::t()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct AdditiveModel {
    pub atoms: Vec<Atom>,
}

impl AdditiveModel {
    pub fn new(atoms: Vec<Atom>) -> Self {
        AdditiveModel { atoms }
    }

    pub fn identity() -> Self {
        AdditiveModel::new(alloc::vec![Atom {
            scalar: Q::from_integer(1.into()),
            endo: RationalFunction::t(),
            order: 0
        }])
    }

    /// `d^k` with `d = d/dt`.
    pub fn derivation(k: u32) -> Self {
        AdditiveModel::new(alloc::vec![Atom {
            scalar: Q::from_integer(1.into()),
            endo: RationalFunction::t(),
            order: k
        }])
    }

    /// Substitution `t -> r`.
    pub fn endomorphism(r: RationalFunction) -> Result<Self> {
        Ok(AdditiveModel::new(alloc::vec![Atom::new(Q::from_integer(1.into()), r, 0)?]))
    }

    pub fn eval(&self, x: &RationalFunction) -> RationalFunction {
        let mut derivs: Vec<RationalFunction> = alloc::vec![x.clone()];
        let mut acc = RationalFunction::zero();
        for a in &self.atoms {
            while derivs.len() <= a.order as usize {
                let next = derivs.last().expect("nonempty").derivative();
                derivs.push(next);
            }
            let y = derivs[a.order as usize].compose(&a.endo).expect("checked endomorphism");
            acc = &acc + &y.scale(&a.scalar);
        }
        acc
    }

    /// `r o self`
    pub fn post_compose(&self, r: &RationalFunction) -> Result<Self> {
        let atoms = self
            .atoms
            .iter()
            .map(|a| Atom::new(a.scalar.clone(), a.endo.compose(r)?, a.order))
            .collect::<Result<_>>()?;
        Ok(AdditiveModel { atoms })
    }
}

/// `t^(exp + 1)` for the exponential index `exp`.
pub fn default_endo(exp: u32) -> RationalFunction {
    RationalFunction::poly(UPoly::monomial(1.into(), exp as usize + 1))
}

/// Each term `c m_exp(d^k)` of `f` becomes the atom `(c, endo(exp), k)`.
pub fn realize_with(
    f: &FunctionSpec,
    endo: &impl Fn(u32) -> RationalFunction,
) -> Result<AdditiveModel> {
    let mut atoms = Vec::new();
    for t in f.terms() {
        let c = t.coeff.as_constant().ok_or_else(|| Error::NonNumericCoefficient {
            function: String::from(f.name()),
            coeff: alloc::format!("{}", t.coeff),
        })?;
        atoms.push(Atom::new(c, endo(t.exp), t.order)?);
    }
    Ok(AdditiveModel::new(atoms))
}

pub fn realize(f: &FunctionSpec) -> Result<AdditiveModel> {
    realize_with(f, &default_endo)
}

/// Models for every function the equation references.
pub fn realize_ansatz(spec: &EquationSpec, ansatz: &Ansatz) -> Result<BTreeMap<String, AdditiveModel>> {
    spec.function_names()
        .into_iter()
        .map(|n| Ok((String::from(n), realize(ansatz.get(n)?)?)))
        .collect()
}

/// Seeded samples of Q(t).
pub fn samples(n: usize, seed: u64) -> Vec<RationalFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| RationalFunction::random(&mut rng, SAMPLE_DEGREE, SAMPLE_BOUND))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleResult {
    pub x: RationalFunction,
    pub residual: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleCheck {
    pub seed: u64,
    pub samples: Vec<SampleResult>,
}

impl SampleCheck {
    pub fn pass(&self) -> bool {
        self.samples.iter().all(|s| s.residual.is_zero())
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.samples.iter().position(|s| !s.residual.is_zero())
    }
}

fn model<'a>(models: &'a BTreeMap<String, AdditiveModel>, name: &str) -> Result<&'a AdditiveModel> {
    models.get(name).ok_or_else(|| Error::UnresolvedFunction(String::from(name)))
}

/// The left-hand side at one point.
pub fn residual(
    spec: &EquationSpec,
    models: &BTreeMap<String, AdditiveModel>,
    x: &RationalFunction,
) -> Result<RationalFunction> {
    let mut acc = RationalFunction::zero();
    for t in spec.terms() {
        let f = model(models, &t.f)?.eval(&x.pow(t.p));
        let g = model(models, &t.g)?.eval(x).pow(t.q);
        acc = &acc + &(&f * &g).scale(&t.scalar);
    }
    Ok(acc)
}

/// Evaluates the equation at `n_samples` seeded random points.
pub fn check_equation_samples(
    spec: &EquationSpec,
    models: &BTreeMap<String, AdditiveModel>,
    n_samples: usize,
    seed: u64,
) -> Result<SampleCheck> {
    for n in spec.function_names() {
        model(models, n)?;
    }
    let samples = samples(n_samples, seed)
        .into_iter()
        .map(|x| {
            let residual = residual(spec, models, &x)?;
            Ok(SampleResult { x, residual })
        })
        .collect::<Result<_>>()?;
    Ok(SampleCheck { seed, samples })
}

/// Every model post-composed with the substitution `t -> r`.
pub fn equivalence_transport(
    models: &BTreeMap<String, AdditiveModel>,
    r: &RationalFunction,
) -> Result<BTreeMap<String, AdditiveModel>> {
    if r.is_constant() {
        return Err(Error::ConstantEndomorphism);
    }
    models.iter().map(|(k, m)| Ok((k.clone(), m.post_compose(r)?))).collect()
}

/// `A*(x) = prod_i factors_i(x)`
pub fn diagonal(factors: &[AdditiveModel], x: &RationalFunction) -> RationalFunction {
    factors.iter().fold(RationalFunction::one(), |acc, m| &acc * &m.eval(x))
}

/// `Delta_{y_1} ... Delta_{y_m} A*(x)` for `A*` the diagonal of the product of
/// the factors.
pub fn difference_polarize(
    factors: &[AdditiveModel],
    x: &RationalFunction,
    ys: &[RationalFunction],
) -> Result<RationalFunction> {
    let m = ys.len();
    if m == 0 {
        return Err(Error::MalformedParams(String::from("need at least one increment")));
    }
    let mut acc = RationalFunction::zero();
    for mask in 0u64..(1 << m) {
        let mut z = x.clone();
        for (i, y) in ys.iter().enumerate() {
            if mask & (1 << i) != 0 {
                z = &z + y;
            }
        }
        let v = diagonal(factors, &z);
        acc = if (m as u32 - mask.count_ones()).is_multiple_of(2) { &acc + &v } else { &acc - &v };
    }
    Ok(acc)
}

/// `n! A(y_1, ..., y_n)` for the symmetrization of `A(x_1..x_n) = prod_i
/// factors_i(x_i)`: the sum over all orderings of the arguments.
pub fn symmetric_multilinear(factors: &[AdditiveModel], ys: &[RationalFunction]) -> RationalFunction {
    let n = factors.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut acc = RationalFunction::zero();
    loop {
        let term = factors
            .iter()
            .zip(&perm)
            .fold(RationalFunction::one(), |a, (f, &j)| &a * &f.eval(&ys[j]));
        acc = &acc + &term;
        // next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    acc
}

/// `n!` as a rational, for scaling polarization results.
pub fn factorial_q(n: u32) -> Q {
    q_int(factorial(n))
}

/// `D(x y) != D(x) y + x D(y)` for `D = d^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizWitness {
    pub order: u32,
    pub x: RationalFunction,
    pub y: RationalFunction,
    pub product: RationalFunction,
    pub first_order_rule: RationalFunction,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub seed: u64,
    pub pairs: usize,
    pub additive: bool,
    /// `(atom index, holds)` for atoms `c d`.
    pub leibniz: Vec<(usize, bool)>,
    /// `(atom index, holds)` for atoms `t -> r` with unit scalar.
    pub multiplicative: Vec<(usize, bool)>,
    /// For atoms `c d^k` with `k >= 2`.
    pub leibniz_violations: Vec<(usize, Option<LeibnizWitness>)>,
}

impl PropertyReport {
    pub fn pass(&self) -> bool {
        self.additive
            && self.leibniz.iter().all(|(_, ok)| *ok)
            && self.multiplicative.iter().all(|(_, ok)| *ok)
    }
}

fn leibniz_defect(
    d: &AdditiveModel,
    x: &RationalFunction,
    y: &RationalFunction,
) -> (RationalFunction, RationalFunction) {
    let lhs = d.eval(&(x * y));
    let rhs = &(&d.eval(x) * y) + &(x * &d.eval(y));
    (lhs, rhs)
}

/// Additivity, Leibniz and multiplicativity on `pairs` seeded random pairs,
/// plus a Leibniz counterexample for every higher-order derivation atom.
pub fn property_suite(m: &AdditiveModel, pairs: usize, seed: u64) -> PropertyReport {
    let xs = samples(2 * pairs, seed);
    let pairs_v: Vec<(&RationalFunction, &RationalFunction)> =
        xs.chunks(2).map(|c| (&c[0], &c[1])).collect();
    let additive = pairs_v
        .iter()
        .all(|(x, y)| m.eval(&(*x + *y)) == &m.eval(x) + &m.eval(y));
    let mut leibniz = Vec::new();
    let mut multiplicative = Vec::new();
    let mut leibniz_violations = Vec::new();
    let one = Q::from_integer(1.into());
    for (i, a) in m.atoms.iter().enumerate() {
        let single = AdditiveModel::new(alloc::vec![a.clone()]);
        if a.is_identity_endo() && a.order == 1 {
            let ok = pairs_v.iter().all(|(x, y)| {
                let (l, r) = leibniz_defect(&single, x, y);
                l == r
            });
            leibniz.push((i, ok));
        }
        if a.order == 0 && a.scalar == one {
            let ok = pairs_v
                .iter()
                .all(|(x, y)| single.eval(&(*x * *y)) == &single.eval(x) * &single.eval(y));
            multiplicative.push((i, ok));
        }
        if a.is_identity_endo() && a.order >= 2 {
            let t = RationalFunction::t();
            let candidates = core::iter::once((&t, &t)).chain(pairs_v.iter().copied());
            let w = candidates.into_iter().find_map(|(x, y)| {
                let (l, r) = leibniz_defect(&single, x, y);
                (l != r).then(|| LeibnizWitness {
                    order: a.order,
                    x: x.clone(),
                    y: y.clone(),
                    product: l,
                    first_order_rule: r,
                })
            });
            leibniz_violations.push((i, w));
        }
    }
    PropertyReport { seed, pairs, additive, leibniz, multiplicative, leibniz_violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::q;

    fn poly(c: &[i64]) -> RationalFunction {
        RationalFunction::poly(UPoly::from_i64(c))
    }

    #[test]
    fn eval_examples() {
        let t3 = poly(&[0, 0, 0, 1]);
        assert_eq!(AdditiveModel::identity().eval(&t3), t3);
        assert_eq!(AdditiveModel::derivation(1).eval(&t3), poly(&[0, 0, 3]));
        let phi_d = AdditiveModel::new(alloc::vec![Atom::new(q(1), poly(&[0, 0, 1]), 1).unwrap()]);
        assert_eq!(phi_d.eval(&t3), poly(&[0, 0, 0, 0, 3]));
    }

    #[test]
    fn polarization_of_d_squared() {
        let d = AdditiveModel::derivation(1);
        let a = [d.clone(), d.clone()];
        let x = poly(&[1, 2, 0, 1]);
        let ys = [poly(&[0, 0, 1]), poly(&[3, -1])];
        let two = difference_polarize(&a, &x, &ys).unwrap();
        let expect = (&d.eval(&ys[0]) * &d.eval(&ys[1])).scale(&q(2));
        assert_eq!(two, expect);
        let three = difference_polarize(&a, &x, &[ys[0].clone(), ys[1].clone(), poly(&[1, 1])]);
        assert!(three.unwrap().is_zero());
        assert_eq!(difference_polarize(core::slice::from_ref(&d), &x, &ys[..1]).unwrap(), d.eval(&ys[0]));
        assert!(difference_polarize(&a, &x, &[]).is_err());
    }

    #[test]
    fn second_derivative_breaks_leibniz_at_t_t() {
        let r = property_suite(&AdditiveModel::derivation(2), 5, 1);
        let w = r.leibniz_violations[0].1.as_ref().unwrap();
        assert_eq!(w.x, RationalFunction::t());
        assert_eq!(w.product, RationalFunction::int(2));
        assert_eq!(w.first_order_rule, RationalFunction::zero());
    }
}
