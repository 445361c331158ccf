//! Classification results and search procedures built on the equation engine.

pub mod corollary;
pub mod family;
pub mod linalg;
pub mod scan;
pub mod two_exp;
pub mod two_term;
pub mod vandermonde;

pub use corollary::{corollary_specialization, grid_members, CorollaryOutcome, CorollaryRequest};
pub use family::{FamilyCheck, FamilyId, Relation, SolutionFamily};
pub use scan::{
    conjecture_scan, AssignmentReport, AssignmentVerdict, Certificate, Nontriviality, ScanConfig,
    ScanReport, Strategy, SCAN_ASSIGNMENT_CAP, SCAN_ORDER_CAP,
};
pub use two_exp::{
    constant_two_exponential_ansatz, extreme_coefficient, two_exponential_family, Obstruction,
    TwoExpOutcome,
};
pub use two_term::{
    brute_force_order_one, case_a, case_b, case_c, classify_two_term, generic_order_one_ansatz,
    split_by_membership, Classification,
};
pub use vandermonde::{vandermonde_certificate, VandermondeCertificate};
