//! Exact relative homological algebra over `Z/nZ` and `Z`.

pub mod algebra;
pub mod class;
pub mod conditions;
pub mod error;
pub mod ext;
pub mod hom;
pub mod lab;
pub mod linalg;
pub mod module;
pub mod morphism;
pub mod precover;
pub mod resolution;
pub mod ring;
pub mod schanuel;
pub mod smith;
pub mod verdict;

pub use class::{NumericalSet, PrecoverClassSpec};
pub use error::{Error, Result};
pub use module::{GroupValue, Indecomposable, ModuleObject};
pub use morphism::ModuleMorphism;
pub use precover::PrecoverCertificate;
pub use resolution::ResolutionComplex;
pub use ring::RingSpec;
pub use verdict::{ConditionVerdict, EquivalenceWitness, Status, Witness};
