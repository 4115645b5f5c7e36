//! Tri-state verdicts with re-checkable witnesses.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::module::{GroupValue, ModuleObject};
use crate::morphism::ModuleMorphism;
use crate::resolution::ResolutionComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Yes => "Yes",
            Status::No => "No",
            Status::Unknown => "Unknown",
        })
    }
}

/// Certifies `K ⊕ F' ≅ K' ⊕ F` with `F`, `F'` class members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceWitness {
    pub k: ModuleObject,
    pub k2: ModuleObject,
    pub f: ModuleObject,
    pub fprime: ModuleObject,
}

impl EquivalenceWitness {
    /// Checks the multiset identity `K ⊎ F' = K' ⊎ F` and class membership.
    pub fn verify(&self, class: &crate::class::PrecoverClassSpec) -> bool {
        let lhs = self.k.direct_sum(&self.fprime);
        let rhs = self.k2.direct_sum(&self.f);
        matches!((lhs, rhs), (Ok(a), Ok(b)) if a == b)
            && class.contains(&self.f).unwrap_or(false)
            && class.contains(&self.fprime).unwrap_or(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Module {
        module: ModuleObject,
    },
    Morphism {
        morphism: ModuleMorphism,
    },
    Resolution {
        resolution: Box<ResolutionComplex>,
    },
    Equivalence {
        equivalence: EquivalenceWitness,
    },
    /// `M` is a summand of the member `F`; `quotient` is `F/M` when relevant.
    Summand {
        summand: ModuleObject,
        member: ModuleObject,
        quotient: Option<ModuleObject>,
    },
    Ext {
        coefficient: ModuleObject,
        degree: usize,
        value: GroupValue,
    },
    /// A solution `g` of `g∘φ = φ`, with `φ`.
    Endomorphism {
        phi: ModuleMorphism,
        g: ModuleMorphism,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub reason: String,
}

impl ConditionVerdict {
    pub fn yes(witness: Option<Witness>, reason: impl Into<String>) -> Self {
        ConditionVerdict {
            status: Status::Yes,
            witness,
            reason: reason.into(),
        }
    }

    pub fn no(witness: Option<Witness>, reason: impl Into<String>) -> Self {
        ConditionVerdict {
            status: Status::No,
            witness,
            reason: reason.into(),
        }
    }

    pub fn unknown(reason: impl Into<String>) -> Self {
        ConditionVerdict {
            status: Status::Unknown,
            witness: None,
            reason: reason.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.status == Status::Yes
    }

    pub fn is_no(&self) -> bool {
        self.status == Status::No
    }
}
