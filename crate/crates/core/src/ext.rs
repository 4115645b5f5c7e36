//! Relative Ext as cohomology of `Hom(F_•, A)`.

use crate::class::PrecoverClassSpec;
use crate::error::{Error, Result};
use crate::hom::HomSpace;
use crate::linalg::{homology, LinearMap};
use crate::module::{GroupValue, ModuleObject};
use crate::resolution::{build_resolution, ResolutionComplex};
use crate::ring::RingSpec;

/// `Ext^n_F(M, A)` from a cover resolution of length `n + 1`.
pub fn relative_ext(class: &PrecoverClassSpec, m: &ModuleObject, a: &ModuleObject, n: usize) -> Result<GroupValue> {
    let res = build_resolution(class, m, n + 1)?;
    ext_from_resolution(&res, a, n)
}

/// Cohomology at degree `n` of `0 -> Hom(F_0, A) -> Hom(F_1, A) -> ...`.
pub fn ext_from_resolution(res: &ResolutionComplex, a: &ModuleObject, n: usize) -> Result<GroupValue> {
    if a.ring() != res.target.ring() {
        return Err(Error::RingMismatch(res.target.ring(), a.ring()));
    }
    let missing = || Error::InvalidModule(format!("resolution is too short for degree {n}"));
    let f_n = res.term(n).ok_or_else(missing)?;
    let f_next = res.term(n + 1).ok_or_else(missing)?;
    let h_n = HomSpace::new(&f_n, a)?;
    let h_next = HomSpace::new(&f_next, a)?;
    let outgoing = h_n.precompose(&res.differential(n + 1).ok_or_else(missing)?, &h_next);
    let incoming = if n == 0 {
        LinearMap::new(Vec::new(), h_n.orders(), vec![Vec::new(); h_n.orders().len()])
    } else {
        let h_prev = HomSpace::new(&res.term(n - 1).ok_or_else(missing)?, a)?;
        h_prev.precompose(&res.differential(n).ok_or_else(missing)?, &h_n)
    };
    Ok(GroupValue::from(
        &homology(RingSpec::Integers, &incoming, &outgoing).module,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: RingSpec = RingSpec::Modular(4);

    fn m(orders: &[i64]) -> ModuleObject {
        ModuleObject::new(Z4, 0, orders.iter().copied()).unwrap()
    }

    #[test]
    fn ext_examples() {
        let proj = PrecoverClassSpec::add_closure(m(&[4]));
        assert_eq!(
            relative_ext(&proj, &m(&[2]), &m(&[2]), 1).unwrap(),
            GroupValue::new(0, [2])
        );
        assert!(relative_ext(&proj, &m(&[2]), &m(&[4]), 1).unwrap().is_zero());
        let add_k = PrecoverClassSpec::add_closure(m(&[2]));
        for a in [m(&[2]), m(&[4]), m(&[4, 2])] {
            assert!(relative_ext(&add_k, &m(&[4]), &a, 1).unwrap().is_zero());
        }
        let f0 = m(&[2, 2]);
        for a in [m(&[2]), m(&[4])] {
            let hom = HomSpace::new(&f0, &a).unwrap().group_value();
            assert_eq!(relative_ext(&add_k, &f0, &a, 0).unwrap(), hom);
        }
    }
}
