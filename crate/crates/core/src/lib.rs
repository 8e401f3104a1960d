//! Exact-arithmetic toolkit for hypergeometric exponential sums over split
//! reductive groups on finite fields.
//!
//! The crate has three layers:
//!
//! * combinatorial data for the group: root systems, Weyl groups, weights
//!   ([`rootsys`]), and rational convex geometry ([`polytope`], [`integrator`]);
//! * the bound pipeline: Newton polytopes, the squared Weyl-dimension
//!   integrand, and the exact rational rank/sum bound ([`bound`]);
//! * finite-field verification: field and group arithmetic ([`ffield`],
//!   [`groups`]), exact character-count sums ([`sums`]), and nondegeneracy
//!   testing of coefficient tuples ([`nondegen`]).
//!
//! Everything on the bound side is exact (`BigRational`); floating point only
//! appears when a character sum's magnitude is compared against its threshold,
//! and every such comparison carries an explicit rounding-error term.
//!
//! ```
//! use hypsum_core::bound::{rank_bound, GroupKind, RepDescriptor, RepSystem};
//! use hypsum_core::ffield::make_field;
//! use hypsum_core::sums::hyp_sum;
//!
//! // The standard representation of SL2: the bound is exactly 2.
//! let mut sys = RepSystem::new(GroupKind::Sl2, vec![RepDescriptor::Sym { m: 1 }]);
//! let result = rank_bound(&sys).unwrap();
//! assert_eq!((result.d, result.bound.to_string()), (3, "2".into()));
//!
//! // Hyp(identity) over F_3, as exact character counts.
//! sys.coefficients = Some(vec![vec![vec![vec![1], vec![0]], vec![vec![0], vec![1]]]]);
//! let counts = hyp_sum(&sys, &make_field(3, 1).unwrap()).unwrap();
//! assert_eq!(counts.total(), 24);
//! let (magnitude, _err) = counts.eval_magnitude();
//! assert!(magnitude <= 2.0 * 3f64.powf(1.5) + 1e-9);
//! ```

pub mod bound;
pub mod ffield;
pub mod groups;
pub mod integrator;
mod linalg;
pub mod nondegen;
pub mod polytope;
pub mod ratio;
pub mod rootsys;
pub mod sums;

pub use bound::{BoundResult, GroupKind, RepDescriptor, RepSystem};
pub use ffield::{CharCounts, DualFq, Fq, FqElem};
pub use groups::{Group, GroupPoint, Rep};
pub use nondegen::NondegenStatus;
pub use polytope::{Face, RationalPolytope};
pub use ratio::Rat;
pub use rootsys::{Family, RootSystem, Weight};
pub use sums::{VerifyEntry, VerifyReport};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("unsupported root system family {family}{rank}")]
    UnsupportedFamily { family: String, rank: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },
    #[error("weight is not dominant: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("empty input")]
    EmptyInput,
    #[error("degenerate polytope (affine dimension {affine_dim})")]
    DegeneratePolytope { affine_dim: i64 },
    #[error("degenerate simplex (zero determinant)")]
    DegenerateSimplex,
    #[error("arity mismatch: polynomial has {poly}, domain has {domain}")]
    ArityMismatch { poly: usize, domain: usize },
    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size guard tripped: {what} = {size} exceeds {limit}")]
    SizeGuard {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("invalid representation for this group: {0}")]
    InvalidRep(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("group has no finite point enumeration")]
    NotEnumerable,
    #[error("system is already of homogenized shape")]
    AlreadyHomogenized,
    #[error("exact nondegeneracy decision requires a univariate torus system")]
    NotUnivariateTorus,
    #[error("no coefficient tuple present in system")]
    MissingCoefficients,
    #[error("no field descriptor present in system")]
    MissingField,
}

pub type Result<T> = std::result::Result<T, Error>;
