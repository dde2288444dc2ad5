//! Exact, finitely-checkable kernel for the algebra of complemented subsets,
//! swap algebras, cs-topologies, metric moduli of openness and
//! continuity-modulus calculus.
//!
//! Everything numeric is an exact rational ([`q::Q`]); everything
//! set-theoretic lives on finite validated carriers (or on the rational line
//! in interval normal form), so every law the crate states is checked by
//! enumeration or exact interval arithmetic, never by tolerance.

pub mod carrier;
pub mod complemented;
pub mod continuity;
pub mod csb;
pub mod formula;
pub mod generate;
pub mod interval;
pub mod metric;
pub mod model;
pub mod q;
pub mod report;
pub mod suites;
pub mod swap;
pub mod topology;

pub use q::Q;

use thiserror::Error;

#[derive(Error, Debug)]
pub enum Error {
    #[error("malformed rational {0:?}")]
    BadRational(String),
    #[error("equality is not an equivalence relation: {reason}")]
    NotEquivalence { reason: String },
    #[error("Ineq1 violated: elements {x:?} and {y:?} are simultaneously equal and apart")]
    Ineq1Violation { x: String, y: String },
    #[error("subset is not extensional: missing equal element {witness:?}")]
    NotExtensional { witness: String },
    #[error("not a function: {x:?} = {y:?} but images differ")]
    NotAFunction { x: String, y: String },
    #[error("operands live on different carriers")]
    CarrierMismatch,
    #[error("disjointness fails: ({x:?}, {y:?}) is not an apart pair")]
    NotDisjoint { x: String, y: String },
    #[error("empty family")]
    EmptyFamily,
    #[error("{what} exceeds size cap {cap} (got {got})")]
    SizeCap { what: String, cap: usize, got: usize },
    #[error("function is not {required}")]
    MissingFunctionClass { required: String },
    #[error("characteristic function undefined at {id:?}")]
    OutsideDomain { id: String },
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
    #[error("unknown sort {0:?}")]
    UnknownSort(String),
    #[error("unknown constant {0:?}")]
    UnknownConstant(String),
    #[error("topology axiom {axiom} violated: {witness}")]
    TopologyAxiom { axiom: String, witness: String },
    #[error("ball radius must be positive, got {0}")]
    NonPositiveRadius(String),
    #[error("modulus not positive at {at}: value {value}")]
    InvalidModulus { at: String, value: String },
    #[error("no modulus registered for the open {0}")]
    UnregisteredModulus(String),
    #[error("metric axiom violated: {0}")]
    MetricAxiom(String),
    #[error("base axiom {axiom} violated at {witness}")]
    BaseAxiom { axiom: String, witness: String },
    #[error("formula parse error: {0}")]
    FormulaParse(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("side condition failed: {0}")]
    SideCondition(String),
}
