//! Module-level operations: presentations, Hom groups, kernels, images,
//! cokernels, factorization solving and torsion parts.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hom::HomSpace;
use crate::linalg::Subquotient;
use crate::module::{GroupValue, ModuleObject};
use crate::morphism::ModuleMorphism;
use crate::ring::RingSpec;

/// Canonical module presented by `generators` generators subject to the given
/// relation rows (rows shorter than `generators` are zero-padded). Over
/// `Z/n` every generator is additionally killed by `n`.
pub fn decompose(ring: RingSpec, relations: &[Vec<i64>], generators: usize) -> Result<ModuleObject> {
    if let Some(r) = relations.iter().find(|r| r.len() > generators) {
        return Err(Error::InvalidModule(format!(
            "relation of length {} exceeds {generators} generators",
            r.len()
        )));
    }
    let unit = |i: usize, v: i64| {
        let mut x = vec![BigInt::from(0); generators];
        x[i] = BigInt::from(v);
        x
    };
    let l_gens: Vec<Vec<BigInt>> = (0..generators).map(|i| unit(i, 1)).collect();
    let mut d_gens: Vec<Vec<BigInt>> = relations
        .iter()
        .map(|r| {
            let mut x: Vec<BigInt> = r.iter().map(|&v| BigInt::from(v)).collect();
            x.resize(generators, BigInt::from(0));
            x
        })
        .collect();
    if let Some(n) = ring.modulus() {
        d_gens.extend((0..generators).map(|i| unit(i, n)));
    }
    Ok(Subquotient::new(ring, generators, l_gens, d_gens).module)
}

/// `Hom(M, N)` as a group, with one generating morphism per cyclic factor.
pub fn hom_group(m: &ModuleObject, n: &ModuleObject) -> Result<(GroupValue, Vec<ModuleMorphism>)> {
    let h = HomSpace::new(m, n)?;
    Ok((h.group_value(), h.basis()))
}

/// Kernel of `f` with its inclusion into the domain.
pub fn kernel(f: &ModuleMorphism) -> (ModuleObject, ModuleMorphism) {
    let sq = f.linear_map().kernel(f.ring());
    let incl = from_generator_columns(&sq, f.domain());
    (sq.module, incl)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCokernel {
    pub image: ModuleObject,
    /// inclusion of the image into the codomain
    pub image_inclusion: ModuleMorphism,
    pub cokernel: ModuleObject,
    /// quotient map from the codomain onto the cokernel
    pub projection: ModuleMorphism,
}

pub fn image_cokernel(f: &ModuleMorphism) -> ImageCokernel {
    let ring = f.ring();
    let map = f.linear_map();
    let im = map.image(ring);
    let image_inclusion = from_generator_columns(&im, f.codomain());
    let co = map.cokernel(ring);
    let n = f.codomain().num_generators();
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let mut e = vec![0; n];
            e[j] = 1;
            co.coordinates(&e)
        })
        .collect();
    let rows = co.module.num_generators();
    let matrix = (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let projection =
        ModuleMorphism::new(f.codomain().clone(), co.module.clone(), matrix).expect("quotient map is well defined");
    ImageCokernel {
        image: im.module,
        image_inclusion,
        cokernel: co.module,
        projection,
    }
}

impl ModuleMorphism {
    pub fn is_mono(&self) -> bool {
        self.linear_map().kernel(self.ring()).module.is_zero()
    }

    pub fn is_epi(&self) -> bool {
        self.linear_map().cokernel(self.ring()).module.is_zero()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }
}

/// Finds `ψ : X -> F` with `φ ∘ ψ = f`, if one exists.
pub fn solve_factorization(f: &ModuleMorphism, phi: &ModuleMorphism) -> Result<Option<ModuleMorphism>> {
    Ok(Factorizer::new(f.domain(), phi)?.solve(f))
}

/// Solves `φ ∘ ψ = f` for many `f` with a fixed source `X` and fixed `φ`.
pub struct Factorizer {
    lifts: HomSpace,
    targets: HomSpace,
    solver: crate::linalg::Preimage,
}

impl Factorizer {
    pub fn new(source: &ModuleObject, phi: &ModuleMorphism) -> Result<Self> {
        let lifts = HomSpace::new(source, phi.domain())?;
        let targets = HomSpace::new(source, phi.codomain())?;
        let solver = lifts.postcompose(phi, &targets).solver();
        Ok(Factorizer { lifts, targets, solver })
    }

    pub fn solve(&self, f: &ModuleMorphism) -> Option<ModuleMorphism> {
        assert_eq!(
            f.codomain(),
            self.targets.codomain(),
            "factorization target has the wrong codomain"
        );
        let c = self.solver.solve(&self.targets.coordinates(f))?;
        Some(self.lifts.from_coordinates(&c))
    }

    /// Whether every map `X -> M` lifts, i.e. `Hom(X, φ)` is onto.
    pub fn is_onto(&self) -> bool {
        self.targets.basis().iter().all(|g| self.solve(g).is_some())
    }
}

/// Torsion submodule of a finitely generated abelian group with its inclusion.
pub fn torsion_submodule(m: &ModuleObject) -> Result<(ModuleObject, ModuleMorphism)> {
    if m.ring().is_modular() {
        return Err(Error::TorsionOverModular(m.ring()));
    }
    let t = ModuleObject::new(m.ring(), 0, m.torsion_orders().iter().copied())?;
    let r = m.free_rank();
    let matrix = (0..m.num_generators())
        .map(|j| {
            (0..t.num_generators())
                .map(|i| i64::from(j >= r && j - r == i))
                .collect()
        })
        .collect();
    let incl = ModuleMorphism::new(t.clone(), m.clone(), matrix)?;
    Ok((t, incl))
}

fn from_generator_columns(sq: &Subquotient, ambient: &ModuleObject) -> ModuleMorphism {
    let gens = sq.generators(&ambient.generator_orders());
    let rows = ambient.num_generators();
    let matrix = (0..rows).map(|r| gens.iter().map(|g| g[r]).collect()).collect();
    ModuleMorphism::new(sq.module.clone(), ambient.clone(), matrix)
        .expect("subquotient generators give a well-defined inclusion")
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: RingSpec = RingSpec::Modular(4);
    const Z: RingSpec = RingSpec::Integers;

    fn m(orders: &[i64]) -> ModuleObject {
        ModuleObject::new(Z4, 0, orders.iter().copied()).unwrap()
    }

    fn phi(c: i64) -> ModuleMorphism {
        ModuleMorphism::new(m(&[2]), m(&[4]), vec![vec![2 * c]]).unwrap()
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(decompose(Z4, &[vec![2]], 1).unwrap(), m(&[2]));
        assert_eq!(decompose(Z4, &[], 1).unwrap(), m(&[4]));
        let g = decompose(Z, &[vec![6]], 2).unwrap();
        assert_eq!(g.free_rank(), 1);
        assert_eq!(g.torsion_orders(), &[2, 3]);
        assert!(decompose(Z, &[vec![1, 2, 3]], 2).is_err());
    }

    #[test]
    fn hom_group_examples() {
        let (g, basis) = hom_group(&m(&[2]), &m(&[4])).unwrap();
        assert_eq!(g, GroupValue::new(0, [2]));
        assert_eq!(basis, vec![phi(1)]);
        assert_eq!(hom_group(&m(&[4]), &m(&[2])).unwrap().0, GroupValue::new(0, [2]));
        let t2 = ModuleObject::new(Z, 0, [2]).unwrap();
        let free = ModuleObject::regular(Z);
        assert!(hom_group(&t2, &free).unwrap().0.is_zero());
        assert!(hom_group(&m(&[2]), &free).is_err());
    }

    #[test]
    fn kernel_examples() {
        let (k, _) = kernel(&phi(1));
        assert!(k.is_zero());
        let two = ModuleMorphism::scalar(&m(&[4]), 2);
        let (k, incl) = kernel(&two);
        assert_eq!(k, m(&[2]));
        assert_eq!(incl, phi(1));
        let zero = ModuleMorphism::zero(m(&[4, 2]), m(&[2]));
        let (k, incl) = kernel(&zero);
        assert_eq!(k, m(&[4, 2]));
        assert_eq!(incl, ModuleMorphism::identity(&m(&[4, 2])));
    }

    #[test]
    fn image_cokernel_examples() {
        let ic = image_cokernel(&phi(1));
        assert_eq!(ic.image, m(&[2]));
        assert_eq!(ic.cokernel, m(&[2]));
        assert!(ic.projection.compose(&phi(1)).unwrap().is_zero());
        let id = ModuleMorphism::identity(&m(&[4, 2]));
        let ic = image_cokernel(&id);
        assert_eq!(ic.image, m(&[4, 2]));
        assert!(ic.cokernel.is_zero());
        let zero_to_z = ModuleMorphism::zero(ModuleObject::zero(Z), ModuleObject::regular(Z));
        assert_eq!(image_cokernel(&zero_to_z).cokernel, ModuleObject::regular(Z));
        assert!(zero_to_z.is_mono() && !zero_to_z.is_epi());
    }

    #[test]
    fn factorization_examples() {
        let psi = solve_factorization(&phi(1), &phi(1)).unwrap().unwrap();
        assert_eq!(phi(1).compose(&psi).unwrap(), phi(1));
        for c in 0..2 {
            let psi = solve_factorization(&phi(c), &phi(1)).unwrap().unwrap();
            assert_eq!(psi, ModuleMorphism::scalar(&m(&[2]), c));
        }
        let zero = ModuleMorphism::zero(m(&[2]), m(&[4]));
        assert_eq!(solve_factorization(&phi(1), &zero).unwrap(), None);
    }

    #[test]
    fn torsion_examples() {
        let g = ModuleObject::new(Z, 1, [6]).unwrap();
        let (t, incl) = torsion_submodule(&g).unwrap();
        assert_eq!(t.torsion_orders(), &[2, 3]);
        assert!(incl.is_mono());
        let (t, _) = torsion_submodule(&ModuleObject::regular(Z)).unwrap();
        assert!(t.is_zero());
        let t2 = ModuleObject::new(Z, 0, [2]).unwrap();
        assert_eq!(torsion_submodule(&t2).unwrap().0, t2);
        assert!(torsion_submodule(&m(&[2])).is_err());
    }
}
