//! Exact arithmetic in Q(t) with `d/dt` and substitution endomorphisms, used
//! as an independent check of the symbolic engine.

mod model;
mod rf;
mod upoly;

pub use model::{
    check_equation_samples, default_endo, diagonal, difference_polarize, equivalence_transport,
    factorial_q, property_suite, realize, realize_ansatz, realize_with, residual, samples,
    symmetric_multilinear, AdditiveModel, Atom, LeibnizWitness, PropertyReport, SampleCheck,
    SampleResult, SAMPLE_BOUND, SAMPLE_DEGREE,
};
pub use rf::RationalFunction;
pub use upoly::UPoly;
