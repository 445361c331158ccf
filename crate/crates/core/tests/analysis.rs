use std::collections::BTreeSet;

use adeq_core::analysis::*;
use adeq_core::equation::{verify_solution, EquationSpec};
use adeq_core::rat::q;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(pairs: &[(u32, u32)]) -> EquationSpec {
    EquationSpec::from_pairs(pairs).unwrap()
}

fn fifty_samples(fam: &SolutionFamily, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..50 {
        let (values, a) = fam.sample(&mut rng).expect("family samples");
        assert!(fam.admits(&values));
        let r = verify_solution(&fam.spec, &a).unwrap();
        assert!(r.is_pass(), "{} at {:?}", fam.id, values);
    }
}

#[test]
fn every_relation_family_survives_fifty_samples() {
    let mut fams = Vec::new();
    fams.extend(classify_two_term(&spec(&[(2, 5), (3, 4)])).unwrap().families);
    fams.extend(classify_two_term(&spec(&[(2, 4), (5, 1)])).unwrap().families);
    fams.extend(classify_two_term(&spec(&[(1, 3), (2, 2)])).unwrap().families);
    for n in 3..=7 {
        match two_exponential_family(&spec(&[(1, n - 1), (2, n - 2)])).unwrap() {
            TwoExpOutcome::Family(f) => fams.push(f),
            TwoExpOutcome::None(o) => panic!("{}", o.reason),
        }
    }
    for order in 0..=2 {
        let out = corollary_specialization(
            &CorollaryRequest::EqualGOrder { pairs: vec![(1, 6), (2, 5), (4, 3)], order },
            2,
        )
        .unwrap();
        fams.extend(out.families.into_iter().map(|(f, _)| f));
    }
    let ids: BTreeSet<FamilyId> = fams.iter().map(|f| f.id).collect();
    for id in [FamilyId::A, FamilyId::B, FamilyId::C, FamilyId::TwoExponential, FamilyId::Corollary7] {
        assert!(ids.contains(&id), "{id}");
    }
    for (i, f) in fams.iter().enumerate() {
        fifty_samples(f, 1000 + i as u64);
    }
}

#[test]
fn constrained_families_have_verified_grid_members() {
    let requests = [
        CorollaryRequest::Proportional { pairs: vec![(2, 5), (3, 4)], c: vec![q(1), q(1)] },
        CorollaryRequest::KappaFg { p: 1, q: 2, n: 5, kappa: q(1) },
        CorollaryRequest::KappaFg { p: 3, q: 1, n: 5, kappa: q(1) },
        CorollaryRequest::KappaFf { p: 1, q: 2, n: 5, kappa: q(1), order: 0 },
    ];
    for r in &requests {
        let out = corollary_specialization(r, 3).unwrap();
        assert!(!out.members.is_empty(), "{}", r.kind());
        for (_, a) in &out.members {
            assert!(verify_solution(&out.spec, a).unwrap().is_pass());
        }
    }
}

#[test]
fn two_term_classification_is_exhaustive_at_order_one() {
    let s = spec(&[(2, 5), (3, 4)]);
    let cls = classify_two_term(&s).unwrap();
    let sols = brute_force_order_one(&s, 2).unwrap();
    assert!(!sols.is_empty());
    let (inside, outside) = split_by_membership(&sols, &cls.families);
    assert_eq!(inside, sols.len(), "outside: {:?}", outside.first());
}

#[test]
fn vandermonde_nonsingular_on_small_subsets() {
    for mask in 1u32..(1 << 10) {
        let ps: Vec<u32> = (1..=10).filter(|p| mask & (1 << (p - 1)) != 0).collect();
        if ps.len() > 5 {
            continue;
        }
        let c = vandermonde_certificate(&ps, ps.len()).unwrap();
        assert!(c.trivial_kernel(), "{ps:?}");
        assert_eq!(c.rank_falling_factorial, ps.len());
        assert_eq!(c.rank_vandermonde, ps.len());
    }
}

#[test]
fn two_exponential_family_only_for_one_two() {
    for p1 in 1..=6u32 {
        for p2 in 1..=6u32 {
            if p1 == p2 {
                continue;
            }
            let n = p1.max(p2) + 1;
            let out = two_exponential_family(&spec(&[(p1, n - p1), (p2, n - p2)])).unwrap();
            let expect = (p1.min(p2), p1.max(p2)) == (1, 2);
            assert_eq!(matches!(out, TwoExpOutcome::Family(_)), expect, "{p1} {p2}");
        }
    }
}

#[test]
fn scan_bounds_order_for_large_q() {
    let s = spec(&[(1, 6), (2, 5)]);
    let r = conjecture_scan(&s, &ScanConfig { k_max: 3, ..ScanConfig::default() }).unwrap();
    assert_eq!(r.max_nontrivial_order, Some(1));
    assert!(r.conjecture_consistent());
    for a in &r.assignments {
        let k = a.max_order();
        match &a.verdict {
            AssignmentVerdict::Found { witness, .. } => {
                assert!(verify_solution(&s, witness).unwrap().is_pass());
            }
            AssignmentVerdict::OnlyTrivial(Certificate::LinearKernel {
                vandermonde_agrees, ..
            }) => {
                if a.g_linear(&s) && k >= 2 {
                    assert_eq!(*vandermonde_agrees, Some(true), "{:?}", a.orders);
                }
            }
            AssignmentVerdict::OnlyTrivial(Certificate::TopWeight { .. }) => {}
            v => panic!("{:?}: {v:?}", a.orders),
        }
        if a.g_linear(&s) && k >= 2 {
            assert!(matches!(a.verdict, AssignmentVerdict::OnlyTrivial(_)));
        }
    }
}

#[test]
fn scan_finds_order_one_witness() {
    let s = spec(&[(2, 5), (3, 4)]);
    let r = conjecture_scan(&s, &ScanConfig { k_max: 1, ..ScanConfig::default() }).unwrap();
    assert!(r.max_nontrivial_order >= Some(1));
    for (_, w) in r.witnesses() {
        assert!(verify_solution(&s, w).unwrap().is_pass());
    }
}

#[test]
fn scan_is_monotone_and_reproducible() {
    let s = spec(&[(1, 3), (2, 2)]);
    let mut prev: Vec<AssignmentReport> = Vec::new();
    for k in 0..=2 {
        let cfg = ScanConfig { k_max: k, ..ScanConfig::default() };
        let r = conjecture_scan(&s, &cfg).unwrap();
        assert_eq!(r, conjecture_scan(&s, &cfg).unwrap());
        for old in &prev {
            let new = r.assignments.iter().find(|a| a.orders == old.orders).unwrap();
            if matches!(old.verdict, AssignmentVerdict::Found { .. }) {
                assert!(matches!(new.verdict, AssignmentVerdict::Found { .. }));
            }
        }
        prev = r.assignments;
    }
}

#[test]
fn no_zero_function_mode() {
    let s = spec(&[(2, 5), (3, 4)]);
    let cfg = ScanConfig { k_max: 1, mode: Nontriviality::NoZeroFunction, ..ScanConfig::default() };
    let r = conjecture_scan(&s, &cfg).unwrap();
    assert!(r.max_nontrivial_order.is_some());
    let single = spec(&[(2, 3)]);
    let r = conjecture_scan(&single, &cfg).unwrap();
    assert_eq!(r.max_nontrivial_order, None);
}

#[test]
fn kappa_ff_without_rational_witness() {
    let out = corollary_specialization(
        &CorollaryRequest::KappaFf { p: 2, q: 4, n: 5, kappa: q(2), order: 1 },
        3,
    )
    .unwrap();
    assert!(out.members.is_empty());
    let scan = out.scan.unwrap();
    assert_eq!(scan.max_nontrivial_order, None);
    let ok = corollary_specialization(
        &CorollaryRequest::KappaFf { p: 2, q: 4, n: 5, kappa: q(1), order: 1 },
        3,
    )
    .unwrap();
    assert!(!ok.members.is_empty());
}
