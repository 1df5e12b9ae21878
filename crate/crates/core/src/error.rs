// SPDX-License-Identifier: Apache-2.0
//! Crate-wide error type.

use thiserror::Error;

/// Every failure mode reported by the library.
///
/// Variants in the "fault" class ([`Error::Inconsistent`],
/// [`Error::RankDeficient`], [`Error::IntertwinerNotFound`]) signal a bug
/// rather than bad input; see [`Error::is_fault`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars or matrices belong to different fields")]
    FieldMismatch,
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {p} exceeds the exhaustive-search bound {bound}")]
    FieldTooLarge { p: u64, bound: u64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
    #[error("element is not symmetric")]
    NotSymmetric,
    #[error("vector is isotropic")]
    IsotropicVector,
    #[error("reflection factorization failed: {0}")]
    FactorizationFailed(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("elements belong to different Clifford algebras")]
    FormMismatch,
    #[error("discriminant (or Arf invariant) is nontrivial")]
    NontrivialDiscriminant,
    #[error("quadratic form is not hyperbolic")]
    NotHyperbolic,
    #[error("element has the wrong parity")]
    BadParity,
    #[error("Clifford relation violated: {0}")]
    RelationViolation(String),
    #[error("not a composition: {0}")]
    NotComposition(String),
    #[error("multiplier triple is not in the multiplier group")]
    NotInMultiplierGroup,
    #[error("not a pointed composition: {0}")]
    NotPointed(String),
    #[error("composition algebra is not unital")]
    NotUnital,
    #[error("no vector of norm one found")]
    NoNormOneVector,
    #[error("map is not in the Lie algebra go(q)")]
    NotInGo,
    #[error("element is not in the extended Clifford group")]
    NotInOmega,
    #[error("triple is not an autotopy")]
    NotAutotopy,
    #[error("similitude does not preserve the polarization")]
    PolarizationMismatch,
    #[error("linear system unexpectedly inconsistent: {0}")]
    Inconsistent(String),
    #[error("rank deficient: {0}")]
    RankDeficient(String),
    #[error("intertwiner not found: {0}")]
    IntertwinerNotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors that indicate an internal fault rather than invalid input.
    pub fn is_fault(&self) -> bool {
        matches!(
            self,
            Error::Inconsistent(_) | Error::RankDeficient(_) | Error::IntertwinerNotFound(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
