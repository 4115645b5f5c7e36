use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{reduce128, LinearMap};
use crate::module::{Indecomposable, ModuleObject};
use crate::ring::RingSpec;

/// A homomorphism between canonical modules, as an integer matrix with one row
/// per codomain generator and one column per domain generator.
///
/// Column `i` holds the image of domain generator `i`. A generator of order
/// `d` may only go to an element killed by `d`; entries in torsion rows are
/// kept reduced to `[0, e)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleMorphism {
    domain: ModuleObject,
    codomain: ModuleObject,
    matrix: Vec<Vec<i64>>,
}

impl ModuleMorphism {
    pub fn new(domain: ModuleObject, codomain: ModuleObject, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if domain.ring() != codomain.ring() {
            return Err(Error::RingMismatch(domain.ring(), codomain.ring()));
        }
        let d = domain.generator_orders();
        let e = codomain.generator_orders();
        if matrix.len() != e.len() || matrix.iter().any(|r| r.len() != d.len()) {
            return Err(Error::IllDefinedMorphism(format!(
                "matrix shape does not match {} x {} generators",
                e.len(),
                d.len()
            )));
        }
        let mut matrix = matrix;
        for (j, row) in matrix.iter_mut().enumerate() {
            for (i, a) in row.iter_mut().enumerate() {
                if e[j] != 0 {
                    *a = a.rem_euclid(e[j]);
                }
                // d_i * a ≡ 0 (mod e_j), with "mod 0" meaning equality in Z
                let ok = match e[j] {
                    0 => d[i] == 0 || *a == 0,
                    ej => (d[i] as i128 * *a as i128) % ej as i128 == 0,
                };
                if !ok {
                    return Err(Error::IllDefinedMorphism(format!(
                        "generator {i} of order {} cannot map with coefficient {a} onto generator {j} of order {}",
                        d[i], e[j]
                    )));
                }
            }
        }
        Ok(ModuleMorphism {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn zero(domain: ModuleObject, codomain: ModuleObject) -> Self {
        let matrix = vec![vec![0; domain.num_generators()]; codomain.num_generators()];
        ModuleMorphism {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn identity(m: &ModuleObject) -> Self {
        let n = m.num_generators();
        let matrix = (0..n).map(|j| (0..n).map(|i| i64::from(i == j)).collect()).collect();
        ModuleMorphism {
            domain: m.clone(),
            codomain: m.clone(),
            matrix,
        }
    }

    /// Multiplication by an integer scalar.
    pub fn scalar(m: &ModuleObject, c: i64) -> Self {
        let e = m.generator_orders();
        let n = e.len();
        let matrix = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { reduce128(c as i128, e[j]) } else { 0 })
                    .collect()
            })
            .collect();
        ModuleMorphism {
            domain: m.clone(),
            codomain: m.clone(),
            matrix,
        }
    }

    pub fn domain(&self) -> &ModuleObject {
        &self.domain
    }

    pub fn codomain(&self) -> &ModuleObject {
        &self.codomain
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn ring(&self) -> RingSpec {
        self.domain.ring()
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.matrix[row][col]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&a| a == 0)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMorphism) -> Result<ModuleMorphism> {
        if other.codomain != self.domain {
            return Err(Error::NotComposable(format!(
                "{} vs {}",
                other.codomain.expr(),
                self.domain.expr()
            )));
        }
        let map = self.linear_map().compose(&other.linear_map());
        Ok(ModuleMorphism {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: map.matrix,
        })
    }

    /// Image of an element given in domain coordinates.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.linear_map().apply(x)
    }

    pub fn linear_map(&self) -> LinearMap {
        LinearMap::new(
            self.domain.generator_orders(),
            self.codomain.generator_orders(),
            self.matrix.clone(),
        )
    }

    /// Restriction to the summand spanned by the given domain generators (in order).
    pub fn restrict_domain(&self, columns: &[usize]) -> ModuleMorphism {
        let parts: Vec<Indecomposable> = columns.iter().map(|&c| self.domain.summands()[c]).collect();
        let domain = ModuleObject::from_indecomposables(self.ring(), &parts).expect("summand of a valid module");
        debug_assert_eq!(
            domain.summands(),
            parts,
            "restriction columns must preserve canonical order"
        );
        let matrix = self
            .matrix
            .iter()
            .map(|r| columns.iter().map(|&c| r[c]).collect())
            .collect();
        ModuleMorphism {
            domain,
            codomain: self.codomain.clone(),
            matrix,
        }
    }

    /// Block-diagonal sum `⊕ f_i : ⊕ dom_i -> ⊕ cod_i`, re-laid out in canonical order.
    pub fn direct_sum(parts: &[ModuleMorphism]) -> Result<ModuleMorphism> {
        let Some(first) = parts.first() else {
            return Err(Error::InvalidModule(
                "direct sum of an empty family of morphisms".into(),
            ));
        };
        let ring = first.ring();
        if let Some(bad) = parts.iter().find(|p| p.ring() != ring) {
            return Err(Error::RingMismatch(ring, bad.ring()));
        }
        let dom_parts: Vec<Indecomposable> = parts.iter().flat_map(|p| p.domain.summands()).collect();
        let cod_parts: Vec<Indecomposable> = parts.iter().flat_map(|p| p.codomain.summands()).collect();
        let (domain, dom_pos) = canonical_layout(ring, &dom_parts);
        let (codomain, cod_pos) = canonical_layout(ring, &cod_parts);
        let mut matrix = vec![vec![0; domain.num_generators()]; codomain.num_generators()];
        let (mut row_off, mut col_off) = (0, 0);
        for p in parts {
            for (j, row) in p.matrix.iter().enumerate() {
                for (i, &a) in row.iter().enumerate() {
                    matrix[cod_pos[row_off + j]][dom_pos[col_off + i]] = a;
                }
            }
            row_off += p.codomain.num_generators();
            col_off += p.domain.num_generators();
        }
        Ok(ModuleMorphism {
            domain,
            codomain,
            matrix,
        })
    }

    /// Maps `⊕ dom_i -> M` given by a row of morphisms into the common codomain `M`.
    pub fn codiagonal(ring: RingSpec, codomain: &ModuleObject, parts: &[ModuleMorphism]) -> Result<ModuleMorphism> {
        if let Some(bad) = parts.iter().find(|p| p.codomain != *codomain) {
            return Err(Error::NotComposable(format!(
                "codomain {} differs from {}",
                bad.codomain.expr(),
                codomain.expr()
            )));
        }
        let dom_parts: Vec<Indecomposable> = parts.iter().flat_map(|p| p.domain.summands()).collect();
        let (domain, pos) = canonical_layout(ring, &dom_parts);
        let mut matrix = vec![vec![0; domain.num_generators()]; codomain.num_generators()];
        let mut off = 0;
        for p in parts {
            for (j, row) in p.matrix.iter().enumerate() {
                for (i, &a) in row.iter().enumerate() {
                    matrix[j][pos[off + i]] = a;
                }
            }
            off += p.domain.num_generators();
        }
        Ok(ModuleMorphism {
            domain,
            codomain: codomain.clone(),
            matrix,
        })
    }
}

/// Canonical module for a list of summands, plus the canonical position of each listed summand.
pub fn canonical_layout(ring: RingSpec, parts: &[Indecomposable]) -> (ModuleObject, Vec<usize>) {
    let mut idx: Vec<usize> = (0..parts.len()).collect();
    idx.sort_by_key(|&i| parts[i]);
    let mut pos = vec![0; parts.len()];
    for (new, &old) in idx.iter().enumerate() {
        pos[old] = new;
    }
    let module = ModuleObject::from_indecomposables(ring, parts).expect("summands of a valid module");
    (module, pos)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: RingSpec = RingSpec::Modular(4);

    fn m(orders: &[i64]) -> ModuleObject {
        ModuleObject::new(Z4, 0, orders.iter().copied()).unwrap()
    }

    #[test]
    fn well_definedness() {
        assert!(ModuleMorphism::new(m(&[2]), m(&[4]), vec![vec![2]]).is_ok());
        assert!(ModuleMorphism::new(m(&[2]), m(&[4]), vec![vec![1]]).is_err());
        assert!(ModuleMorphism::new(m(&[4]), m(&[2]), vec![vec![1]]).is_ok());
        let z = ModuleObject::new(RingSpec::Integers, 1, []).unwrap();
        let z2 = ModuleObject::new(RingSpec::Integers, 0, [2]).unwrap();
        assert!(ModuleMorphism::new(z2.clone(), z.clone(), vec![vec![1]]).is_err());
        assert!(ModuleMorphism::new(z.clone(), z2, vec![vec![1]]).is_ok());
        assert!(ModuleMorphism::new(z.clone(), z, vec![vec![-3]]).is_ok());
    }

    #[test]
    fn entries_are_reduced() {
        let f = ModuleMorphism::new(m(&[4]), m(&[4]), vec![vec![-1]]).unwrap();
        assert_eq!(f.matrix(), &[vec![3]]);
    }

    #[test]
    fn composition_and_identity() {
        let phi1 = ModuleMorphism::new(m(&[2]), m(&[4]), vec![vec![2]]).unwrap();
        let id = ModuleMorphism::identity(&m(&[4]));
        assert_eq!(id.compose(&phi1).unwrap(), phi1);
        let two = ModuleMorphism::scalar(&m(&[4]), 2);
        assert!(two.compose(&phi1).unwrap().is_zero());
        assert!(phi1.compose(&phi1).is_err());
    }

    #[test]
    fn block_sum_is_laid_out_canonically() {
        let phi1 = ModuleMorphism::new(m(&[2]), m(&[4]), vec![vec![2]]).unwrap();
        let id_k = ModuleMorphism::identity(&m(&[2]));
        let s = ModuleMorphism::direct_sum(&[id_k, phi1]).unwrap();
        assert_eq!(s.domain(), &m(&[2, 2]));
        assert_eq!(s.codomain(), &m(&[4, 2]));
        // codomain order is [4, 2]: row 0 is the Z/4 generator
        assert_eq!(s.matrix(), &[vec![0, 2], vec![1, 0]]);
    }
}
