//! Equation instances, ansatz families, expanded left-hand sides and the
//! constraint systems they induce.

mod function;
mod lhs;
mod spec;

pub use function::{Ansatz, FnTerm, FunctionSpec};
pub use lhs::{
    build_lhs, build_lhs_unchecked, extract_constraints, grade_by_scaling, symmetrize,
    verify_solution, Constraint, ConstraintSystem, Verdict, VerifyReport, SYMMETRIZATION_CAP,
};
pub use spec::{check_conditions, homogenize, ConditionReport, EquationSpec, Term};
