use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A term references a function the ansatz does not define.
    UnresolvedFunction(String),
    /// The operation needs every term to share one degree `p + q`.
    NotHomogeneous(Vec<u32>),
    /// The operation needs every coefficient to be a rational number.
    NonNumericCoefficient { function: String, coeff: String },
    /// A function spec lists the same `(exp, order)` pair twice.
    DuplicateFunctionTerm { function: String, exp: u32, order: u32 },
    /// A generator with a nonzero variable slot where only slot 0 is allowed.
    MultivariateGenerator,
    /// A polynomial that should be linear in the generators is not.
    NotLinear,
    /// Symmetrization was asked for more variable slots than the cap.
    SymmetrizationCap { n: u32, cap: u32 },
    /// Classification preconditions (term count, C(i)-C(iii)) fail.
    ConditionViolation(String),
    DuplicateExponent(u32),
    InvalidDepth { depth: usize, len: usize },
    ScanCap(String),
    DivisionByZero,
    ConstantEndomorphism,
    MalformedParams(String),
    EmptyEquation,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnresolvedFunction(name) => write!(f, "unresolved function reference `{name}`"),
            Error::NotHomogeneous(degrees) => {
                write!(f, "equation is not homogeneous (degrees p+q: {degrees:?})")
            }
            Error::NonNumericCoefficient { function, coeff } => {
                write!(f, "function `{function}` has non-numeric coefficient `{coeff}`")
            }
            Error::DuplicateFunctionTerm { function, exp, order } => write!(
                f,
                "function `{function}` lists (exp {exp}, order {order}) more than once"
            ),
            Error::MultivariateGenerator => write!(f, "generator with nonzero variable slot"),
            Error::NotLinear => write!(f, "polynomial is not linear in the generators"),
            Error::SymmetrizationCap { n, cap } => {
                write!(f, "symmetrization over {n} slots exceeds the cap of {cap}")
            }
            Error::ConditionViolation(msg) => write!(f, "condition violated: {msg}"),
            Error::DuplicateExponent(p) => write!(f, "exponent {p} appears more than once"),
            Error::InvalidDepth { depth, len } => {
                write!(f, "depth {depth} is not in 1..={len}")
            }
            Error::ScanCap(msg) => write!(f, "scan cap exceeded: {msg}"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ConstantEndomorphism => {
                write!(f, "substitution by a constant is not a field endomorphism")
            }
            Error::MalformedParams(msg) => write!(f, "malformed parameters: {msg}"),
            Error::EmptyEquation => write!(f, "equation has no terms"),
        }
    }
}

impl core::error::Error for Error {}
