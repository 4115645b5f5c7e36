//! F-resolutions with Hom-exactness certificates.

use serde::{Deserialize, Serialize};

use crate::algebra::kernel;
use crate::class::PrecoverClassSpec;
use crate::error::{Error, Result};
use crate::hom::HomSpace;
use crate::linalg::{homology, LinearMap};
use crate::module::{GroupValue, Indecomposable, ModuleObject};
use crate::morphism::ModuleMorphism;
use crate::precover::{cover, evaluation_precover, padded_precover};
use crate::ring::RingSpec;

/// Homology of `Hom(I, F_•) -> Hom(I, M) -> 0` at one position. Degree `-1` is
/// the `Hom(I, M)` spot; degree `i >= 0` is `Hom(I, F_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactnessCertificate {
    pub test: Indecomposable,
    pub degree: i64,
    pub homology: GroupValue,
}

/// `F_L -> ... -> F_0 -> M` with `∂_0 : F_0 -> M` and `∂_i : F_i -> F_{i-1}`.
/// When `closed`, the complex is `0 -> F_L -> ...` and exactness is also
/// certified at `F_L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionComplex {
    pub class: PrecoverClassSpec,
    pub target: ModuleObject,
    pub terms: Vec<ModuleObject>,
    pub differentials: Vec<ModuleMorphism>,
    pub closed: bool,
    pub certificates: Vec<ExactnessCertificate>,
}

/// Which precover is taken at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecoverChoice {
    Cover,
    Evaluation,
    Padded,
}

impl PrecoverChoice {
    pub fn precover(self, class: &PrecoverClassSpec, m: &ModuleObject) -> Result<ModuleMorphism> {
        match self {
            PrecoverChoice::Cover => cover(class, m),
            PrecoverChoice::Evaluation => evaluation_precover(class, m),
            PrecoverChoice::Padded => padded_precover(class, m),
        }
    }
}

impl ResolutionComplex {
    /// Assembles a complex and computes its certificates; does not check them.
    pub fn from_parts(
        class: &PrecoverClassSpec,
        target: &ModuleObject,
        differentials: Vec<ModuleMorphism>,
        closed: bool,
    ) -> Result<Self> {
        let terms: Vec<ModuleObject> = differentials.iter().map(|d| d.domain().clone()).collect();
        let certificates = certificates(class, target, &differentials, closed)?;
        Ok(ResolutionComplex {
            class: class.clone(),
            target: target.clone(),
            terms,
            differentials,
            closed,
            certificates,
        })
    }

    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }

    /// `F_i`, with zero terms past the end of a closed complex.
    pub fn term(&self, i: usize) -> Option<ModuleObject> {
        match self.terms.get(i) {
            Some(t) => Some(t.clone()),
            None => self.closed.then(|| ModuleObject::zero(self.target.ring())),
        }
    }

    /// `∂_i`, with zero maps past the end of a closed complex.
    pub fn differential(&self, i: usize) -> Option<ModuleMorphism> {
        match self.differentials.get(i) {
            Some(d) => Some(d.clone()),
            None => {
                let codomain = if i == 0 { self.target.clone() } else { self.term(i - 1)? };
                Some(ModuleMorphism::zero(self.term(i)?, codomain))
            }
        }
    }

    /// Re-verifies the complex from scratch.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let ring = self.target.ring();
        if self.class.ring() != ring {
            return Err(format!(
                "class ring {} differs from module ring {ring}",
                self.class.ring()
            ));
        }
        if self.terms.len() != self.differentials.len() || self.terms.is_empty() {
            return Err("terms and differentials do not line up".into());
        }
        for (i, d) in self.differentials.iter().enumerate() {
            if d.domain() != &self.terms[i] {
                return Err(format!("∂_{i} does not start at F_{i}"));
            }
            let expected = if i == 0 { &self.target } else { &self.terms[i - 1] };
            if d.codomain() != expected {
                return Err(format!("∂_{i} has the wrong codomain"));
            }
            if !self.class.contains(&self.terms[i]).map_err(|e| e.to_string())? {
                return Err(format!("F_{i} = {} is not a class member", self.terms[i].expr()));
            }
        }
        for i in 1..self.differentials.len() {
            let dd = self.differentials[i - 1]
                .compose(&self.differentials[i])
                .map_err(|e| e.to_string())?;
            if !dd.is_zero() {
                return Err(format!("∂_{} ∘ ∂_{i} is not zero", i - 1));
            }
        }
        let recomputed =
            certificates(&self.class, &self.target, &self.differentials, self.closed).map_err(|e| e.to_string())?;
        if recomputed != self.certificates {
            return Err("stored certificates do not match recomputation".into());
        }
        if let Some(c) = recomputed.iter().find(|c| !c.homology.is_zero()) {
            return Err(format!(
                "Hom({}, -) has homology {} in degree {}",
                c.test, c.homology, c.degree
            ));
        }
        Ok(())
    }
}

fn certificates(
    class: &PrecoverClassSpec,
    target: &ModuleObject,
    differentials: &[ModuleMorphism],
    closed: bool,
) -> Result<Vec<ExactnessCertificate>> {
    let ring = target.ring();
    let mut context: Vec<&ModuleObject> = vec![target];
    context.extend(differentials.iter().map(|d| d.domain()));
    let mut out = Vec::new();
    for test in class.test_indecomposables(context) {
        let i = ModuleObject::from_indecomposables(ring, &[test])?;
        // spaces[0] = Hom(I, M), spaces[k + 1] = Hom(I, F_k)
        let mut spaces = vec![HomSpace::new(&i, target)?];
        for d in differentials {
            spaces.push(HomSpace::new(&i, d.domain())?);
        }
        let maps: Vec<LinearMap> = differentials
            .iter()
            .enumerate()
            .map(|(k, d)| spaces[k + 1].postcompose(d, &spaces[k]))
            .collect();
        let zero_out = |s: &HomSpace| LinearMap::new(s.orders(), Vec::new(), Vec::new());
        let zero_in = |s: &HomSpace| LinearMap::new(Vec::new(), s.orders(), vec![Vec::new(); s.orders().len()]);
        // position -1: cokernel of Hom(I, ∂_0)
        let h = homology(RingSpec::Integers, &maps[0], &zero_out(&spaces[0]));
        out.push(ExactnessCertificate {
            test,
            degree: -1,
            homology: GroupValue::from(&h.module),
        });
        for k in 0..differentials.len() {
            let incoming = match maps.get(k + 1) {
                Some(m) => m.clone(),
                None if closed => zero_in(&spaces[k + 1]),
                None => break,
            };
            let h = homology(RingSpec::Integers, &incoming, &maps[k]);
            out.push(ExactnessCertificate {
                test,
                degree: k as i64,
                homology: GroupValue::from(&h.module),
            });
        }
    }
    Ok(out)
}

/// Resolution by covers through degree `length`.
pub fn build_resolution(class: &PrecoverClassSpec, m: &ModuleObject, length: usize) -> Result<ResolutionComplex> {
    build_resolution_with(class, m, length, PrecoverChoice::Cover)
}

pub fn build_resolution_with(
    class: &PrecoverClassSpec,
    m: &ModuleObject,
    length: usize,
    choice: PrecoverChoice,
) -> Result<ResolutionComplex> {
    build_resolution_by(class, m, length, |_| choice)
}

/// Resolution taking the precover `choice(i)` at degree `i`.
pub fn build_resolution_by(
    class: &PrecoverClassSpec,
    m: &ModuleObject,
    length: usize,
    choice: impl Fn(usize) -> PrecoverChoice,
) -> Result<ResolutionComplex> {
    if class.ring() != m.ring() {
        return Err(Error::RingMismatch(class.ring(), m.ring()));
    }
    let mut differentials = Vec::with_capacity(length + 1);
    let mut current = m.clone();
    let mut inclusion = ModuleMorphism::identity(m);
    for degree in 0..=length {
        let c = choice(degree).precover(class, &current)?;
        differentials.push(inclusion.compose(&c)?);
        let (k, incl) = kernel(&c);
        current = k;
        inclusion = incl;
    }
    ResolutionComplex::from_parts(class, m, differentials, current.is_zero())
}
