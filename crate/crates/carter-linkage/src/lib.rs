//! Carter diagrams and linkage systems for simply laced root systems.
//!
//! A *Carter diagram* is a signed graph describing a set of linearly
//! independent roots: vertices are roots of squared length 2, a solid edge
//! joins roots with inner product `-1`, a dotted edge joins roots with inner
//! product `+1`, and non-adjacent roots are orthogonal.  Dynkin diagrams are
//! the cycle-free case; diagrams such as `D4(a1)` contain 4-cycles and encode
//! conjugacy classes of Weyl group elements that no Dynkin diagram reaches.
//!
//! The Gram matrix of such a root set is the *partial Cartan matrix* `B`.
//! Everything this crate computes flows from `B` and its inverse:
//!
//! * which extra roots can extend the set while keeping it independent
//!   (*linkage roots*, detected by the rational inequality `B∨(u) < 2` on
//!   the vector `u` of inner products),
//! * the finite *linkage systems* those label vectors form, together with
//!   their orbit structure under the dual Weyl group action,
//! * *transition matrices* relating the root sets of diagrams that share a
//!   partial Cartan matrix class, and
//! * inflation/deflation reductions of the quadratic form down to a sum of
//!   Dynkin forms.
//!
//! All of the combinatorics is exact: rational arithmetic with arbitrary
//! precision integers, deterministic orderings, no floats.  The one
//! deliberately approximate corner is [`spectral`], which reports eigenvalue
//! information at `f64` precision.
//!
//! The `carter` binary exposes the same functionality on the command line.

pub mod diagram;
pub mod dual;
pub mod flation;
pub mod gamma;
pub mod linkage;
pub mod ratmat;
pub mod roots;
pub mod spectral;
pub mod transition;

pub use diagram::{CarterDiagram, DiagramName};
pub use dual::{dual_reflect, orbit_dot, orbit_partition, Orbit};
pub use flation::{apply_flation, ovsienko_reduce, recognize_dynkin, Flation, UnitForm};
pub use spectral::{coxeter_relation_check, spectra_equal, spectrum, SpectrumReport};
pub use transition::{chain, find_transition, verify_transition, Transition};
pub use gamma::{GammaSet, LabelVector};
pub use linkage::{
    criterion_check, criterion_set, e8_d7_pairs, enumerate_full, p_classes, pairing_check,
    ComponentKind, CriterionReport, LinkageSystem, PairingReport,
};
pub use ratmat::{rat, ratio, QuadraticForm, RatMatrix, Rational};
pub use roots::{AdeType, Root, RootSystem};

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Inversion or solving hit a singular matrix.
    #[error("matrix is singular (rank {rank})")]
    Singular { rank: usize },

    /// Operand shapes do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A diagram name outside the supported catalog.
    #[error("unknown diagram: {0}")]
    UnknownDiagram(String),

    /// Rank outside the range the catalog covers.
    #[error("rank {got} outside supported range {min}..={max}")]
    RankRange { got: usize, min: usize, max: usize },

    /// A diagram failed a structural validation check.
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    /// No set of roots in the ambient system realizes the diagram.
    #[error("no realization of {diagram} inside {ambient}")]
    NoRealization { diagram: String, ambient: String },

    /// An inner product fell outside {-1, 0, 1}, so no label vector
    /// exists; a value of ±2 means the root is a Γ-set member up to sign.
    #[error("inner product {0} is outside the label range -1..=1")]
    LabelRange(i64),

    /// The operation requires a root outside the span of the Γ-set.
    #[error("root lies in the span of the Γ-set")]
    InSpan,

    /// A dual reflection produced an entry outside {-1, 0, 1}.
    #[error("dual reflection left the ternary range at entry {0}")]
    NonTernary(usize),

    /// Orbit enumeration found a reflection image outside the input set.
    #[error("orbit closure violation: s*_{index} maps a member outside the set")]
    ClosureViolation { index: usize },

    /// Exhaustive search found no transition matrix.
    #[error("no transition found from {from} to {to}")]
    NoTransition { from: String, to: String },

    /// The requested flation is not defined for this matrix entry.
    #[error("flation rejected: {0}")]
    BadFlation(String),

    /// Reduction encountered an off-diagonal entry of magnitude >= 2.
    #[error("off-diagonal entry of magnitude >= 2 at ({0}, {1}); not a unit form")]
    NotUnitForm(usize, usize),

    /// The reduction loop exceeded its step budget.
    #[error("reduction did not terminate within {0} steps")]
    NonTermination(usize),

    /// A reduced form is not a disjoint union of simply laced Dynkin forms.
    #[error("not a disjoint union of A/D/E forms: {0}")]
    NotDynkin(String),

    /// A counting result did not match the established value.
    #[error("count mismatch: {0}")]
    CountMismatch(String),
}
