//! Exact symbolic computation for Artin and surface braid groups.
//!
//! The crate provides braid-word parsing and free reduction (`words`),
//! presentation factories and homomorphism certification (`presentations`),
//! exact integer linear algebra and Laurent polynomials (`exactalg`),
//! class-2 nilpotent quotients with unique normal forms (`nilquot`), the
//! named projections and lifting-diagram checks (`homs`), the conjugation
//! action of the surface braid group on fiber words (`actions`), and the
//! Burau/Gassner representations via Fox calculus (`reps`).

pub mod actions;
pub mod cli;
pub mod exactalg;
pub mod homs;
pub mod nilquot;
pub mod presentations;
pub mod reps;
pub mod words;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("letter {letter} not in the alphabet of {context}")]
    LetterOutOfContext { letter: String, context: String },
    #[error("context mismatch: {left} vs {right}")]
    ContextMismatch { left: String, right: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generator {0} has no declared image")]
    MissingImage(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("homomorphism fails on relator {relator}: image {image}")]
    HomNotVerified { relator: String, image: String },
    #[error("case open in the source material: {0}")]
    OpenCase(String),
    #[error("evaluation at zero with a negative exponent of {0}")]
    EvalAtZero(String),
    #[error("expected a pure braid (trivial underlying permutation)")]
    NotPure,
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
