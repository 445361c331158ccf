use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::Q;

/// `scalar * f(x^p) * g(x)^q`
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub scalar: Q,
    pub p: u32,
    pub q: u32,
    pub f: String,
    pub g: String,
}

impl Term {
    pub fn new(p: u32, q: u32, f: &str, g: &str) -> Self {
        Term { scalar: Q::one(), p, q, f: f.to_string(), g: g.to_string() }
    }

    pub fn with_scalar(mut self, scalar: Q) -> Self {
        self.scalar = scalar;
        self
    }

    pub fn degree(&self) -> u32 {
        self.p + self.q
    }
}

/// A sum of terms set equal to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EquationSpec {
    terms: Vec<Term>,
}

impl EquationSpec {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyEquation);
        }
        if let Some(t) = terms.iter().find(|t| t.p == 0 || t.q == 0) {
            return Err(Error::MalformedParams(format!(
                "exponents must be positive, got p={} q={}",
                t.p, t.q
            )));
        }
        Ok(EquationSpec { terms })
    }

    /// Terms `(p_i, q_i)` with functions `f{i}`, `g{i}` (1-based, input order).
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self> {
        EquationSpec::new(
            pairs
                .iter()
                .enumerate()
                .map(|(i, &(p, q))| Term::new(p, q, &format!("f{}", i + 1), &format!("g{}", i + 1)))
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn pairs(&self) -> Vec<(u32, u32)> {
        self.terms.iter().map(|t| (t.p, t.q)).collect()
    }

    /// Terms stably sorted by `p` ascending.
    pub fn canonical(&self) -> EquationSpec {
        let mut terms = self.terms.clone();
        terms.sort_by_key(|t| t.p);
        EquationSpec { terms }
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.terms.iter().map(Term::degree).collect()
    }

    /// The common `N = p + q`, if there is one.
    pub fn degree(&self) -> Option<u32> {
        let n = self.terms[0].degree();
        self.terms.iter().all(|t| t.degree() == n).then_some(n)
    }

    pub fn require_homogeneous(&self) -> Result<u32> {
        self.degree().ok_or_else(|| Error::NotHomogeneous(self.degrees()))
    }

    pub fn function_names(&self) -> BTreeSet<&str> {
        self.terms
            .iter()
            .flat_map(|t| [t.f.as_str(), t.g.as_str()])
            .collect()
    }
}

/// Outcome of checking the standing conditions on the exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// Terms sorted by `p`.
    pub sorted: Vec<Term>,
    /// `p` strictly increasing after sorting.
    pub c1: bool,
    pub duplicate_p: Vec<u32>,
    /// One common `p + q`.
    pub c2: bool,
    pub common_degree: Option<u32>,
    /// `p_i != q_j` for `i != j`.
    pub c3: bool,
    /// Index pairs `(i, j)` into `sorted` with `p_i == q_j`, `i != j`.
    pub c3_violations: Vec<(usize, usize)>,
    /// All of `p_1..p_n, q_1..q_n` pairwise distinct.
    pub all_distinct: bool,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.c1 && self.c2 && self.c3
    }

    pub fn first_failure(&self) -> Option<String> {
        if !self.c1 {
            Some(format!("C(i): duplicate p values {:?}", self.duplicate_p))
        } else if !self.c2 {
            Some("C(ii): terms do not share one degree p+q".to_string())
        } else if !self.c3 {
            let (i, j) = self.c3_violations[0];
            Some(format!("C(iii): p_{} = q_{} = {}", i + 1, j + 1, self.sorted[i].p))
        } else {
            None
        }
    }
}

pub fn check_conditions(spec: &EquationSpec) -> ConditionReport {
    let sorted = spec.canonical().terms;
    let mut duplicate_p: Vec<u32> = sorted
        .windows(2)
        .filter(|w| w[0].p == w[1].p)
        .map(|w| w[0].p)
        .collect();
    duplicate_p.dedup();
    let common_degree = spec.degree();
    let mut c3_violations = Vec::new();
    for (i, a) in sorted.iter().enumerate() {
        for (j, b) in sorted.iter().enumerate() {
            if i != j && a.p == b.q {
                c3_violations.push((i, j));
            }
        }
    }
    let mut all: Vec<u32> = sorted.iter().flat_map(|t| [t.p, t.q]).collect();
    let total = all.len();
    all.sort_unstable();
    all.dedup();
    ConditionReport {
        c1: duplicate_p.is_empty(),
        duplicate_p,
        c2: common_degree.is_some(),
        common_degree,
        c3: c3_violations.is_empty(),
        c3_violations,
        all_distinct: all.len() == total,
        sorted,
    }
}

/// Splits the terms into classes of equal `p + q`, in order of first appearance.
pub fn homogenize(spec: &EquationSpec) -> Vec<EquationSpec> {
    let mut classes: Vec<(u32, Vec<Term>)> = Vec::new();
    for t in &spec.terms {
        match classes.iter_mut().find(|(n, _)| *n == t.degree()) {
            Some((_, ts)) => ts.push(t.clone()),
            None => classes.push((t.degree(), alloc::vec![t.clone()])),
        }
    }
    classes
        .into_iter()
        .map(|(_, terms)| EquationSpec { terms })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditions_on_a_valid_pair() {
        let r = check_conditions(&EquationSpec::from_pairs(&[(3, 4), (2, 5)]).unwrap());
        assert_eq!(r.sorted.iter().map(|t| (t.p, t.q)).collect::<Vec<_>>(), [(2, 5), (3, 4)]);
        assert!(r.c1 && r.c2 && r.c3 && r.all_distinct);
        assert_eq!(r.common_degree, Some(7));
    }

    #[test]
    fn repeated_term_violates_strict_order() {
        let r = check_conditions(&EquationSpec::from_pairs(&[(2, 3), (2, 3)]).unwrap());
        assert!(!r.c1);
        assert_eq!(r.duplicate_p, [2]);
        assert!(r.first_failure().unwrap().starts_with("C(i)"));
    }

    #[test]
    fn crossed_exponents_violate_c3() {
        let r = check_conditions(&EquationSpec::from_pairs(&[(2, 5), (3, 4), (4, 3)]).unwrap());
        assert!(r.c1 && r.c2);
        assert!(!r.c3);
        assert_eq!(r.c3_violations, [(1, 2), (2, 1)]);
    }

    #[test]
    fn homogenization_classes() {
        let spec =
            EquationSpec::from_pairs(&[(16, 5), (12, 9), (11, 10), (3, 7), (2, 8)]).unwrap();
        let parts = homogenize(&spec);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].pairs(), [(16, 5), (12, 9), (11, 10)]);
        assert_eq!(parts[1].pairs(), [(3, 7), (2, 8)]);
        assert_eq!(parts[0].degree(), Some(21));
        assert_eq!(parts[1].degree(), Some(10));
        let one = EquationSpec::from_pairs(&[(1, 2)]).unwrap();
        assert_eq!(homogenize(&one), core::slice::from_ref(&one));
        assert_eq!(homogenize(&EquationSpec::from_pairs(&[(1, 2), (1, 4)]).unwrap()).len(), 2);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(EquationSpec::new(Vec::new()), Err(Error::EmptyEquation));
        assert!(EquationSpec::from_pairs(&[(0, 3)]).is_err());
    }
}
