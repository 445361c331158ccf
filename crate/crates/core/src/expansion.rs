//! Expansion of `m_j(d^k(x^p))` into generators.
//!
//! Three independent routes compute the same polynomial:
//!
//! * [`expand_deriv_power`] walks the sorted multisets `l_1 >= ... >= l_p` of
//!   derivation orders with `sum l_i = k` and weights each by the multinomial
//!   `k! / prod l_i!` times the number of distinct orderings;
//! * [`expand_deriv_power_partition`] walks the multiplicity vectors
//!   `(j_1, ..., j_s)` with `sum t * j_t = k`;
//! * [`leibniz_oracle`] applies the formal derivation `k` times to `m_j(x)^p`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::equation::FunctionSpec;
use crate::rat::{factorial, q_int, Q};
use crate::sympoly::{Generator, Monomial, SymPoly, UnknownPoly};

/// Derivation orders `(l_1, ..., l_p)` distributed over the `p` factors of `x^p`.
///
/// Enumerated in non-increasing order so each multiset appears once.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Composition {
    pub parts: Vec<u32>,
}

impl Composition {
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Number of ordered tuples with this multiset of parts times `k!/prod l_i!`.
    pub fn coefficient(&self) -> BigInt {
        let k = self.total();
        let p = self.parts.len() as u32;
        let mut c = factorial(k);
        for &l in &self.parts {
            c /= factorial(l);
        }
        c * factorial(p) / multiplicity_factorials(&self.parts)
    }
}

fn multiplicity_factorials(sorted: &[u32]) -> BigInt {
    let mut acc = BigInt::from(1);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        acc *= factorial((j - i) as u32);
        i = j;
    }
    acc
}

/// All non-increasing compositions of `k` into exactly `p` nonnegative parts.
pub fn compositions(k: u32, p: u32) -> Vec<Composition> {
    fn go(rem: u32, slots: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 0 {
            if rem == 0 {
                out.push(Composition { parts: cur.clone() });
            }
            return;
        }
        // the remaining slots can absorb at most slots * max
        if rem > slots.saturating_mul(max) {
            return;
        }
        let hi = rem.min(max);
        for l in (0..=hi).rev() {
            cur.push(l);
            go(rem - l, slots - 1, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, p, k, &mut Vec::with_capacity(p as usize), &mut out);
    out
}

/// Multiplicities `(j_1, ..., j_s)`: `j_t` factors carry order `t`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DerivPartition {
    pub multiplicities: Vec<u32>,
}

impl DerivPartition {
    /// `sum j_t`, the number of factors that are actually differentiated.
    pub fn length(&self) -> u32 {
        self.multiplicities.iter().sum()
    }

    pub fn weight(&self) -> u32 {
        self.multiplicities
            .iter()
            .enumerate()
            .map(|(i, &j)| (i as u32 + 1) * j)
            .sum()
    }

    /// `k!/prod (t!)^{j_t} * 1/prod j_t! * p!/(p-p')!`
    pub fn coefficient(&self, p: u32) -> BigInt {
        let k = self.weight();
        let len = self.length();
        let mut c = factorial(k) * crate::rat::falling_factorial(p, len);
        for (i, &j) in self.multiplicities.iter().enumerate() {
            c /= factorial(i as u32 + 1).pow(j) * factorial(j);
        }
        c
    }
}

/// Multiplicity vectors of weight `k` and length at most `max_len`.
pub fn deriv_partitions(k: u32, max_len: u32) -> Vec<DerivPartition> {
    fn go(t: u32, rem: u32, len_left: u32, cur: &mut Vec<u32>, out: &mut Vec<DerivPartition>) {
        if t == 0 {
            if rem == 0 {
                let mut m = cur.clone();
                m.reverse();
                while m.last() == Some(&0) {
                    m.pop();
                }
                out.push(DerivPartition { multiplicities: m });
            }
            return;
        }
        for j in 0..=(rem / t).min(len_left) {
            cur.push(j);
            go(t - 1, rem - j * t, len_left - j, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, max_len, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// `m_j(d^k(x^p))` by sorted multiset compositions.
pub fn expand_deriv_power(j: u32, k: u32, p: u32) -> SymPoly {
    let mut out = SymPoly::zero();
    for c in compositions(k, p) {
        let mono = Monomial::from_factors(c.parts.iter().map(|&l| (Generator::new(0, j, l), 1)));
        out.add_term(mono, UnknownPoly::constant(q_int(c.coefficient())));
    }
    out
}

/// `m_j(d^k(x^p))` by derivation partitions with `p' <= min(p, k)`.
pub fn expand_deriv_power_partition(j: u32, k: u32, p: u32) -> SymPoly {
    let mut out = SymPoly::zero();
    for part in deriv_partitions(k, p.min(k)) {
        let rest = p - part.length();
        let mono = Monomial::from_factors(
            core::iter::once((Generator::new(0, j, 0), rest)).chain(
                part.multiplicities
                    .iter()
                    .enumerate()
                    .map(|(t, &m)| (Generator::new(0, j, t as u32 + 1), m)),
            ),
        );
        out.add_term(mono, UnknownPoly::constant(q_int(part.coefficient(p))));
    }
    out
}

/// `m_j(d^k(x^p))` by `k` applications of the formal derivation to `m_j(x)^p`.
pub fn leibniz_oracle(j: u32, k: u32, p: u32) -> SymPoly {
    let mut acc = SymPoly::gen(Generator::new(0, j, 0)).pow(p);
    for _ in 0..k {
        acc = acc.derive();
    }
    acc
}

/// `m_j(d^k(x_{v_1} ... x_{v_s}))` for distinct variable slots, by the
/// generalized Leibniz rule over ordered compositions.
pub fn expand_deriv_product(j: u32, k: u32, vars: &[u32]) -> SymPoly {
    fn go(
        j: u32,
        rem: u32,
        vars: &[u32],
        mono: Vec<(Generator, u32)>,
        coeff: BigInt,
        out: &mut SymPoly,
    ) {
        match vars {
            [] => {
                if rem == 0 {
                    out.add_term(Monomial::from_factors(mono), UnknownPoly::constant(q_int(coeff)));
                }
            }
            [v] => {
                let mut m = mono;
                m.push((Generator::new(*v, j, rem), 1));
                out.add_term(
                    Monomial::from_factors(m),
                    UnknownPoly::constant(q_int(coeff / factorial(rem))),
                );
            }
            [v, rest @ ..] => {
                for l in 0..=rem {
                    let mut m = mono.clone();
                    m.push((Generator::new(*v, j, l), 1));
                    go(j, rem - l, rest, m, coeff.clone() / factorial(l), out);
                }
            }
        }
    }
    let mut out = SymPoly::zero();
    go(j, k, vars, Vec::new(), factorial(k), &mut out);
    out
}

/// Per-call memo of `m_j(d^k(x^p))` keyed by `(j, k, p)`.
#[derive(Debug, Default)]
pub struct ExpansionCache {
    memo: BTreeMap<(u32, u32, u32), SymPoly>,
}

impl ExpansionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, j: u32, k: u32, p: u32) -> &SymPoly {
        self.memo
            .entry((j, k, p))
            .or_insert_with(|| expand_deriv_power(j, k, p))
    }
}

/// `f(x^p)` for `f = sum c_{j,k} m_j(d^k(x))`.
pub fn substitute_power(f: &FunctionSpec, p: u32) -> SymPoly {
    substitute_power_cached(f, p, &mut ExpansionCache::new())
}

pub fn substitute_power_cached(f: &FunctionSpec, p: u32, cache: &mut ExpansionCache) -> SymPoly {
    let mut out = SymPoly::zero();
    for t in f.terms() {
        let e = cache.get(t.exp, t.order, p).scale(&t.coeff);
        out = &out + &e;
    }
    out
}

/// Homogeneous components of `p` keyed by total degree: the coefficient of
/// `r^deg` after `x -> r x`.
pub fn scale_substitution(p: &SymPoly) -> BTreeMap<u32, SymPoly> {
    p.graded()
}

/// Sum of the numeric coefficients, i.e. the value at all generators = 1.
pub fn coefficient_mass(p: &SymPoly) -> Option<Q> {
    p.coefficient_sum().as_constant()
}

/// `true` when every monomial has `p` factors and total order `k`.
pub fn degree_bookkeeping_holds(poly: &SymPoly, k: u32, p: u32) -> bool {
    poly.terms().all(|(m, _)| m.degree() == p && m.weight() == k)
}

#[doc(hidden)]
pub fn binomial_leibniz_split(j: u32, k: u32, p: u32, p2: u32) -> SymPoly {
    let mut acc = SymPoly::zero();
    for i in 0..=k {
        let c = q_int(crate::rat::binomial(k, i));
        let t = &expand_deriv_power(j, i, p) * &expand_deriv_power(j, k - i, p2);
        acc = &acc + &t.scale_q(&c);
    }
    acc
}
