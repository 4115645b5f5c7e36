//! Linear algebra over diagonal presentations `Z^k / (d_1, ..., d_k)`.
//!
//! Every kernel, image, cokernel, homology group and factorization problem in
//! the crate is reduced to lattices in some `Z^k` and handed to the Smith normal
//! form engine. Modular moduli are lifted to Z as explicit relation columns.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::module::{Indecomposable, ModuleObject};
use crate::ring::{inverse_mod, primary_parts, RingSpec};
use crate::smith::{smith_normal_form, IntMatrix, Smith};

/// Z-linear map between diagonal presentations. `orders` entries of 0 mark free
/// generators; rows of `matrix` index target generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub source: Vec<i64>,
    pub target: Vec<i64>,
    pub matrix: Vec<Vec<i64>>,
}

impl LinearMap {
    pub fn new(source: Vec<i64>, target: Vec<i64>, matrix: Vec<Vec<i64>>) -> Self {
        debug_assert_eq!(matrix.len(), target.len());
        debug_assert!(matrix.iter().all(|r| r.len() == source.len()));
        LinearMap { source, target, matrix }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.target)
            .map(|(row, &e)| {
                let v: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                reduce128(v, e)
            })
            .collect()
    }

    /// Kernel as a subquotient of the source coordinates.
    pub fn kernel(&self, ring: RingSpec) -> Subquotient {
        let m = self.source.len();
        let system = self.lifted_system();
        let sm = smith_normal_form(&system);
        let l_gens: Vec<Vec<BigInt>> = sm.nullspace().into_iter().map(|v| v[..m].to_vec()).collect();
        Subquotient::new(ring, m, l_gens, relation_columns(&self.source))
    }

    /// Image as a subquotient of the target coordinates.
    pub fn image(&self, ring: RingSpec) -> Subquotient {
        let n = self.target.len();
        let rel = relation_columns(&self.target);
        let mut l_gens = self.columns();
        l_gens.extend(rel.iter().cloned());
        Subquotient::new(ring, n, l_gens, rel)
    }

    /// Cokernel as a subquotient of the target coordinates.
    pub fn cokernel(&self, ring: RingSpec) -> Subquotient {
        let n = self.target.len();
        let mut d_gens = self.columns();
        d_gens.extend(relation_columns(&self.target));
        Subquotient::new(ring, n, unit_columns(n), d_gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel(RingSpec::Integers).module.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel(RingSpec::Integers).module.is_zero()
    }

    /// Precomputes a solver for `self(x) = y`.
    pub fn solver(&self) -> Preimage {
        Preimage {
            smith: smith_normal_form(&self.lifted_system()),
            source: self.source.clone(),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(self.source.len(), other.target.len(), "composition dimension mismatch");
        let matrix = (0..self.target.len())
            .map(|j| {
                (0..other.source.len())
                    .map(|i| {
                        let v: i128 = (0..self.source.len())
                            .map(|k| self.matrix[j][k] as i128 * other.matrix[k][i] as i128)
                            .sum();
                        reduce128(v, self.target[j])
                    })
                    .collect()
            })
            .collect();
        LinearMap::new(other.source.clone(), self.target.clone(), matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&a| a == 0)
    }

    fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.source.len())
            .map(|i| self.matrix.iter().map(|r| BigInt::from(r[i])).collect())
            .collect()
    }

    /// `[A | E]`: the matrix columns followed by one column per torsion target relation.
    fn lifted_system(&self) -> IntMatrix {
        let n = self.target.len();
        let rel = relation_columns(&self.target);
        let mut cols = self.columns();
        cols.extend(rel);
        IntMatrix::from_columns(n, &cols)
    }
}

/// Reusable solver for `A x ≡ y` in a target presentation.
#[derive(Clone, Debug)]
pub struct Preimage {
    smith: Smith,
    source: Vec<i64>,
}

impl Preimage {
    pub fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        let b: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        let z = self.smith.solve(&b)?;
        Some(self.source.iter().zip(&z).map(|(&d, v)| reduce_big(v, d)).collect())
    }
}

/// Homology `ker g / im f` of `X --f--> Y --g--> Z` with `g ∘ f = 0`, in `Y` coordinates.
pub fn homology(ring: RingSpec, f: &LinearMap, g: &LinearMap) -> Subquotient {
    assert_eq!(f.target, g.source, "homology: middle presentations differ");
    let n = g.source.len();
    let system = g.lifted_system();
    let sm = smith_normal_form(&system);
    let l_gens: Vec<Vec<BigInt>> = sm.nullspace().into_iter().map(|v| v[..n].to_vec()).collect();
    let mut d_gens = f.columns();
    d_gens.extend(relation_columns(&g.source));
    Subquotient::new(ring, n, l_gens, d_gens)
}

fn relation_columns(orders: &[i64]) -> Vec<Vec<BigInt>> {
    orders
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(i, &d)| {
            let mut v = vec![BigInt::zero(); orders.len()];
            v[i] = BigInt::from(d);
            v
        })
        .collect()
}

fn unit_columns(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            v
        })
        .collect()
}

pub(crate) fn reduce128(v: i128, modulus: i64) -> i64 {
    if modulus == 0 {
        i64::try_from(v).expect("integer entry exceeds i64 range")
    } else {
        v.rem_euclid(modulus as i128) as i64
    }
}

pub(crate) fn reduce_big(v: &BigInt, modulus: i64) -> i64 {
    if modulus == 0 {
        v.to_i64().expect("integer entry exceeds i64 range")
    } else {
        v.mod_floor(&BigInt::from(modulus))
            .to_i64()
            .expect("reduced entry fits")
    }
}

#[derive(Clone, Debug)]
struct Factor {
    /// index into the Smith-adapted coordinates of the quotient
    slot: usize,
    order: i64,
    /// coordinate = slot coordinate * multiplier (mod order)
    multiplier: i64,
    generator: Vec<BigInt>,
}

/// A subquotient `L / D` of some `Z^k` (`D ⊆ L`), decomposed into canonical
/// cyclic factors with explicit generators in ambient coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub module: ModuleObject,
    ambient_dim: usize,
    l_smith: Smith,
    l_rank: usize,
    quotient_p: IntMatrix,
    factors: Vec<Factor>,
}

impl Subquotient {
    /// `l_gens` span `L`, `d_gens` span `D`; both as vectors of length `ambient_dim`.
    pub fn new(ring: RingSpec, ambient_dim: usize, l_gens: Vec<Vec<BigInt>>, d_gens: Vec<Vec<BigInt>>) -> Self {
        let w = IntMatrix::from_columns(ambient_dim, &l_gens);
        let l_smith = smith_normal_form(&w);
        let r = l_smith.rank();
        // L has basis s_i * (U^-1 column i), i < r; coordinates of x are (U x)_i / s_i
        let basis: Vec<Vec<BigInt>> = (0..r)
            .map(|i| {
                let s = l_smith.s.get(i, i);
                l_smith.u_inv.column(i).into_iter().map(|x| x * s).collect()
            })
            .collect();
        let coords_of = |x: &[BigInt]| lattice_coordinates(&l_smith, r, x);
        let c_cols: Vec<Vec<BigInt>> = d_gens.iter().map(|d| coords_of(d)).collect();
        let c = IntMatrix::from_columns(r, &c_cols);
        let q_smith = smith_normal_form(&c);
        let diag = q_smith.invariant_factors();

        let mut factors = Vec::new();
        for i in 0..r {
            let t = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
            if t.is_one() {
                continue;
            }
            // generator in L-coordinates is column i of P^-1
            let pinv_col = q_smith.u_inv.column(i);
            let mut gen = vec![BigInt::zero(); ambient_dim];
            for (k, coef) in pinv_col.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                for (g, b) in gen.iter_mut().zip(&basis[k]) {
                    *g += coef * b;
                }
            }
            if t.is_zero() {
                factors.push(Factor {
                    slot: i,
                    order: 0,
                    multiplier: 1,
                    generator: gen,
                });
                continue;
            }
            let t = t.to_i64().expect("cyclic factor order fits in i64");
            for q in primary_parts(t) {
                let cofactor = t / q;
                let generator = gen.iter().map(|x| x * cofactor).collect();
                factors.push(Factor {
                    slot: i,
                    order: q,
                    multiplier: inverse_mod(cofactor % q, q),
                    generator,
                });
            }
        }
        factors.sort_by_key(|f| Indecomposable::cyclic(f.order).unwrap_or(Indecomposable::FREE));
        let free = factors.iter().filter(|f| f.order == 0).count();
        let module = ModuleObject::new(ring, free, factors.iter().filter(|f| f.order != 0).map(|f| f.order))
            .expect("subquotient of a valid presentation is valid");
        debug_assert_eq!(
            module.generator_orders(),
            factors.iter().map(|f| f.order).collect::<Vec<_>>()
        );
        Subquotient {
            module,
            ambient_dim,
            l_smith,
            l_rank: r,
            quotient_p: q_smith.u,
            factors,
        }
    }

    /// Ambient vectors of the canonical generators, reduced by the ambient orders.
    pub fn generators(&self, ambient_orders: &[i64]) -> Vec<Vec<i64>> {
        self.factors
            .iter()
            .map(|f| {
                f.generator
                    .iter()
                    .zip(ambient_orders)
                    .map(|(v, &d)| reduce_big(v, d))
                    .collect()
            })
            .collect()
    }

    /// Canonical coordinates of an element of `L`, reduced by factor orders.
    pub fn coordinates(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.ambient_dim);
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let c = lattice_coordinates(&self.l_smith, self.l_rank, &xb);
        let pc = self.quotient_p.mul_vec(&c);
        self.factors
            .iter()
            .map(|f| {
                let v = &pc[f.slot] * f.multiplier;
                reduce_big(&v, f.order)
            })
            .collect()
    }
}

fn lattice_coordinates(sm: &Smith, r: usize, x: &[BigInt]) -> Vec<BigInt> {
    let ux = sm.u.mul_vec(x);
    (0..r)
        .map(|i| {
            let (q, rem) = ux[i].div_rem(sm.s.get(i, i));
            assert!(rem.is_zero(), "vector does not lie in the lattice");
            q
        })
        .collect()
}
