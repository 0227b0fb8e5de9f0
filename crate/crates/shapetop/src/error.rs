//! Error type shared by every module of the crate.

use crate::shape::Kind;
use thiserror::Error;

/// Errors produced by shape algebra, topology construction and the
/// operators built on top of them.
///
/// Undefined preimages are *not* errors; see
/// [`Preimage`](crate::mapping::Preimage).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A raw segment had coinciding endpoints.
    #[error("degenerate segment: endpoints coincide")]
    DegenerateElement,

    /// Two shapes of different kinds were combined.
    #[error("kind mismatch: {left} vs {right}")]
    KindMismatch {
        /// Kind of the first operand.
        left: Kind,
        /// Kind of the second operand.
        right: Kind,
    },

    /// A shape that must be part of a carrier is not.
    #[error("shape {{{member}}} is not part of the carrier")]
    MemberNotPart {
        /// The offending shape.
        member: String,
    },

    /// A generator (or basis element, or part argument) was the empty shape
    /// where a nonempty shape is required.
    #[error("operation requires a nonempty shape")]
    EmptyShape,

    /// Topology generation was asked to run on generators that do not sum
    /// to the carrier, without permission to add the carrier itself.
    #[error("generators do not exhaust the carrier (pass add_carrier to include it)")]
    DoesNotExhaust,

    /// Topology generation exceeded the configured open-part budget.
    #[error("open-part budget exceeded: more than {limit} opens")]
    BudgetExceeded {
        /// The configured cap.
        limit: usize,
    },

    /// A family of shapes fails the topology conditions.
    #[error("not a topology: {reason}")]
    NotATopology {
        /// Human-readable description of the first violation.
        reason: String,
    },

    /// A family of shapes fails the basis conditions.
    #[error("not a basis: {reason}")]
    NotABasis {
        /// Human-readable description of the first violation.
        reason: String,
    },

    /// A basis comparison was attempted on a basis that is not reduced.
    #[error("basis is not reduced")]
    BasisNotReduced,

    /// Two topologies over different carriers were compared.
    #[error("carrier mismatch")]
    CarrierMismatch,

    /// A continuity check was attempted for a mapping that does not send
    /// the source carrier onto the target carrier.
    #[error("mapping does not send the source carrier onto the target carrier")]
    NotOnto,

    /// An operation that requires a continuous mapping got a discontinuous one.
    #[error("mapping is not continuous between the given topologies")]
    NotContinuous,

    /// An affine step with zero determinant was constructed.
    #[error("affine matrix is singular (zero determinant)")]
    SingularAffine,

    /// Set-topology enumeration was asked for more points than supported.
    #[error("too many points: {n} (at most {max} supported)")]
    TooLarge {
        /// Requested point count.
        n: usize,
        /// Supported maximum.
        max: usize,
    },

    /// A fragment decomposition grew past the brute-force budget.
    #[error("too many fragments: {count} (at most {limit} supported)")]
    TooManyFragments {
        /// Number of fragments in the decomposition.
        count: usize,
        /// The configured cap.
        limit: usize,
    },

    /// A set topology failed its structural invariants.
    #[error("invalid set topology: {reason}")]
    InvalidSetTopology {
        /// Description of the violated invariant.
        reason: String,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
