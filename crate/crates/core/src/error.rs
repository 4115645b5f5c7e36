use thiserror::Error;

use crate::ring::RingSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingSpec, RingSpec),
    #[error("morphism is not well defined: {0}")]
    IllDefinedMorphism(String),
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("torsion submodule requested over {0}; only defined over Z")]
    TorsionOverModular(RingSpec),
    #[error("invalid class descriptor: {0}")]
    InvalidClass(String),
    #[error("module {0} is not a member of the class")]
    NotInClass(String),
    #[error("class cannot precover this module under this descriptor: {0}")]
    CannotPrecover(String),
    #[error("unknown suite id `{0}`")]
    UnknownSuite(String),
    #[error("unknown example id `{0}`")]
    UnknownExample(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
