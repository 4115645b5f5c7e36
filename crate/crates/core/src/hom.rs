//! Hom groups `Hom(M, N)` as explicit finitely generated abelian groups.
//!
//! `Hom(⊕ Z/d_i, ⊕ Z/e_j) = ⊕ Z/gcd(d_i, e_j)`: each matrix slot `(j, i)` carries a
//! cyclic coordinate whose generator is the single-entry matrix `e_j / gcd`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{reduce128, LinearMap};
use crate::module::{GroupValue, ModuleObject};
use crate::morphism::ModuleMorphism;
use crate::ring::gcd;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomSlot {
    pub row: usize,
    pub col: usize,
    /// entry of the slot generator
    pub step: i64,
    /// order of the slot coordinate, 0 for Z
    pub order: i64,
}

#[derive(Clone, Debug)]
pub struct HomSpace {
    domain: ModuleObject,
    codomain: ModuleObject,
    slots: Vec<HomSlot>,
    index: HashMap<(usize, usize), usize>,
}

impl HomSpace {
    pub fn new(domain: &ModuleObject, codomain: &ModuleObject) -> Result<Self> {
        if domain.ring() != codomain.ring() {
            return Err(Error::RingMismatch(domain.ring(), codomain.ring()));
        }
        let d = domain.generator_orders();
        let e = codomain.generator_orders();
        let mut slots = Vec::new();
        for (row, &ej) in e.iter().enumerate() {
            for (col, &di) in d.iter().enumerate() {
                let slot = match (di, ej) {
                    (0, 0) => Some((1, 0)),
                    (_, 0) => None,
                    (0, e) => Some((1, e)),
                    (d, e) => {
                        let g = gcd(d, e);
                        (g > 1).then_some((e / g, g))
                    }
                };
                if let Some((step, order)) = slot {
                    slots.push(HomSlot { row, col, step, order });
                }
            }
        }
        let index = slots.iter().enumerate().map(|(k, s)| ((s.row, s.col), k)).collect();
        Ok(HomSpace {
            domain: domain.clone(),
            codomain: codomain.clone(),
            slots,
            index,
        })
    }

    pub fn domain(&self) -> &ModuleObject {
        &self.domain
    }

    pub fn codomain(&self) -> &ModuleObject {
        &self.codomain
    }

    pub fn slots(&self) -> &[HomSlot] {
        &self.slots
    }

    /// Orders of the coordinates (0 for free coordinates).
    pub fn orders(&self) -> Vec<i64> {
        self.slots.iter().map(|s| s.order).collect()
    }

    pub fn group_value(&self) -> GroupValue {
        let free = self.slots.iter().filter(|s| s.order == 0).count();
        GroupValue::new(free, self.slots.iter().filter(|s| s.order != 0).map(|s| s.order))
    }

    pub fn is_zero(&self) -> bool {
        self.slots.is_empty()
    }

    /// Number of homomorphisms, `None` when infinite.
    pub fn size(&self) -> Option<u128> {
        self.group_value().order()
    }

    /// One generating morphism per cyclic coordinate.
    pub fn basis(&self) -> Vec<ModuleMorphism> {
        (0..self.slots.len())
            .map(|k| {
                let mut c = vec![0; self.slots.len()];
                c[k] = 1;
                self.from_coordinates(&c)
            })
            .collect()
    }

    pub fn coordinates(&self, f: &ModuleMorphism) -> Vec<i64> {
        debug_assert_eq!(f.domain(), &self.domain);
        debug_assert_eq!(f.codomain(), &self.codomain);
        self.coordinates_of_matrix(f.matrix())
    }

    fn coordinates_of_matrix(&self, m: &[Vec<i64>]) -> Vec<i64> {
        self.slots
            .iter()
            .map(|s| {
                let a = m[s.row][s.col];
                debug_assert_eq!(a % s.step, 0, "entry {a} is not a multiple of the slot step {}", s.step);
                reduce128((a / s.step) as i128, s.order)
            })
            .collect()
    }

    pub fn from_coordinates(&self, c: &[i64]) -> ModuleMorphism {
        let mut matrix = vec![vec![0; self.domain.num_generators()]; self.codomain.num_generators()];
        let e = self.codomain.generator_orders();
        for (s, &x) in self.slots.iter().zip(c) {
            matrix[s.row][s.col] = reduce128(x as i128 * s.step as i128, e[s.row]);
        }
        ModuleMorphism::new(self.domain.clone(), self.codomain.clone(), matrix)
            .expect("slot combinations are well defined")
    }

    /// All homomorphisms, in lexicographic coordinate order. Finite spaces only.
    pub fn elements(&self) -> impl Iterator<Item = ModuleMorphism> + '_ {
        assert!(
            self.slots.iter().all(|s| s.order != 0),
            "cannot enumerate an infinite Hom group"
        );
        let orders = self.orders();
        CoordinateOdometer::new(orders).map(move |c| self.from_coordinates(&c))
    }

    /// `Hom(M, N) -> Hom(M, N')`, `f ↦ g ∘ f`, for `g : N -> N'`.
    pub fn postcompose(&self, g: &ModuleMorphism, target: &HomSpace) -> LinearMap {
        debug_assert_eq!(g.domain(), &self.codomain);
        debug_assert_eq!(target.domain(), &self.domain);
        debug_assert_eq!(target.codomain(), g.codomain());
        let e_out = g.codomain().generator_orders();
        let mut matrix = vec![vec![0; self.slots.len()]; target.slots.len()];
        for (k, s) in self.slots.iter().enumerate() {
            // g ∘ (step at (row, col)) has column `col` equal to step * g[:, row]
            for (r, &er) in e_out.iter().enumerate() {
                let a = reduce128(g.entry(r, s.row) as i128 * s.step as i128, er);
                if a == 0 {
                    continue;
                }
                let t = target.index[&(r, s.col)];
                let ts = target.slots[t];
                matrix[t][k] = reduce128((a / ts.step) as i128, ts.order);
            }
        }
        LinearMap::new(self.orders(), target.orders(), matrix)
    }

    /// `Hom(M, N) -> Hom(M', N)`, `f ↦ f ∘ h`, for `h : M' -> M`.
    pub fn precompose(&self, h: &ModuleMorphism, target: &HomSpace) -> LinearMap {
        debug_assert_eq!(h.codomain(), &self.domain);
        debug_assert_eq!(target.domain(), h.domain());
        debug_assert_eq!(target.codomain(), &self.codomain);
        let e = self.codomain.generator_orders();
        let cols = h.domain().num_generators();
        let mut matrix = vec![vec![0; self.slots.len()]; target.slots.len()];
        for (k, s) in self.slots.iter().enumerate() {
            // (step at (row, col)) ∘ h has row `row` equal to step * h[col, :]
            for l in 0..cols {
                let a = reduce128(s.step as i128 * h.entry(s.col, l) as i128, e[s.row]);
                if a == 0 {
                    continue;
                }
                let t = target.index[&(s.row, l)];
                let ts = target.slots[t];
                matrix[t][k] = reduce128((a / ts.step) as i128, ts.order);
            }
        }
        LinearMap::new(self.orders(), target.orders(), matrix)
    }
}

/// Mixed-radix enumeration of `∏ [0, orders_i)`.
pub struct CoordinateOdometer {
    orders: Vec<i64>,
    next: Option<Vec<i64>>,
}

impl CoordinateOdometer {
    pub fn new(orders: Vec<i64>) -> Self {
        let next = Some(vec![0; orders.len()]);
        CoordinateOdometer { orders, next }
    }
}

impl Iterator for CoordinateOdometer {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.orders[i] {
                carried = false;
                break;
            }
            succ[i] = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    const Z4: RingSpec = RingSpec::Modular(4);

    fn m(orders: &[i64]) -> ModuleObject {
        ModuleObject::new(Z4, 0, orders.iter().copied()).unwrap()
    }

    #[test]
    fn hom_k_to_r() {
        let h = HomSpace::new(&m(&[2]), &m(&[4])).unwrap();
        assert_eq!(h.group_value(), GroupValue::new(0, [2]));
        assert_eq!(h.basis()[0].matrix(), &[vec![2]]);
        assert_eq!(h.elements().count(), 2);
    }

    #[test]
    fn hom_over_integers() {
        let z = RingSpec::Integers;
        let free = ModuleObject::new(z, 1, []).unwrap();
        let t2 = ModuleObject::new(z, 0, [2]).unwrap();
        assert!(HomSpace::new(&t2, &free).unwrap().is_zero());
        assert_eq!(
            HomSpace::new(&free, &t2).unwrap().group_value(),
            GroupValue::new(0, [2])
        );
        assert_eq!(
            HomSpace::new(&free, &free).unwrap().group_value(),
            GroupValue::new(1, [])
        );
    }

    #[test]
    fn odometer_counts() {
        assert_eq!(CoordinateOdometer::new(vec![2, 3]).count(), 6);
        assert_eq!(CoordinateOdometer::new(vec![]).count(), 1);
    }

    #[test]
    fn composition_maps_agree_with_direct_composition() {
        let r = m(&[4]);
        let k = m(&[2]);
        let d = m(&[4, 2]);
        let g = ModuleMorphism::new(d.clone(), r.clone(), vec![vec![3, 2]]).unwrap();
        let src = HomSpace::new(&k, &d).unwrap();
        let dst = HomSpace::new(&k, &r).unwrap();
        let post = src.postcompose(&g, &dst);
        for f in src.elements() {
            let direct = g.compose(&f).unwrap();
            assert_eq!(dst.from_coordinates(&post.apply(&src.coordinates(&f))), direct);
        }
        let h = ModuleMorphism::new(k.clone(), d.clone(), vec![vec![2], vec![1]]).unwrap();
        let src = HomSpace::new(&d, &r).unwrap();
        let dst = HomSpace::new(&k, &r).unwrap();
        let pre = src.precompose(&h, &dst);
        for f in src.elements() {
            let direct = f.compose(&h).unwrap();
            assert_eq!(dst.from_coordinates(&pre.apply(&src.coordinates(&f))), direct);
        }
    }
}
