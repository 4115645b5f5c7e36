//! Schanuel classes and F-equivalence.

use crate::algebra::kernel;
use crate::class::{powers_factor, ClassKind, PrecoverClassSpec};
use crate::error::{Error, Result};
use crate::module::{Indecomposable, ModuleObject, Multiplicities};
use crate::precover::cover;
use crate::verdict::EquivalenceWitness;

/// Canonical representative of `S_F([M])`: the kernel of the cover of `M`.
pub fn schanuel_step(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<ModuleObject> {
    Ok(kernel(&cover(class, m)?).0)
}

/// Smallest `(x, y)` with `x, y` allowed and `a + y = b + x`.
fn balance(a: usize, b: usize, allowed: impl Fn(usize) -> bool, bound: usize) -> Option<(usize, usize)> {
    (0..=bound).find_map(|y| {
        let x = (a + y).checked_sub(b)?;
        (allowed(x) && allowed(y)).then_some((x, y))
    })
}

/// Decides `K ≡ K2`, returning `F`, `F'` with `K ⊕ F' ≅ K2 ⊕ F`.
pub fn equivalent(
    class: &PrecoverClassSpec,
    k: &ModuleObject,
    k2: &ModuleObject,
) -> Result<Option<EquivalenceWitness>> {
    for x in [k, k2] {
        if x.ring() != class.ring() {
            return Err(Error::RingMismatch(class.ring(), x.ring()));
        }
    }
    let ring = class.ring();
    let a = k.multiplicities();
    let b = k2.multiplicities();
    let types: Vec<Indecomposable> = a.keys().chain(b.keys()).copied().collect();
    let get = |m: &Multiplicities, t: &Indecomposable| m.get(t).copied().unwrap_or(0);
    let mut f = Multiplicities::new();
    let mut fprime = Multiplicities::new();

    if let ClassKind::Powers(d) = class.kind() {
        // K - K2 must be an integer multiple of mult(D)
        let mut plus = Multiplicities::new();
        let mut minus = Multiplicities::new();
        for t in &types {
            let (x, y) = (get(&a, t), get(&b, t));
            if x > y {
                plus.insert(*t, x - y);
            } else if y > x {
                minus.insert(*t, y - x);
            }
        }
        let (Some(p), Some(q)) = (powers_factor(d, &plus), powers_factor(d, &minus)) else {
            return Ok(None);
        };
        if p > 0 && q > 0 {
            return Ok(None);
        }
        let witness = EquivalenceWitness {
            k: k.clone(),
            k2: k2.clone(),
            f: d.power(p),
            fprime: d.power(q),
        };
        return Ok(Some(witness));
    }

    for t in types {
        let (x, y) = (get(&a, &t), get(&b, &t));
        let pair = match class.kind() {
            ClassKind::AddClosure(_) | ClassKind::TorsionOverZ if class.supports(t) => {
                balance(x, y, |_| true, x.max(y))
            }
            ClassKind::MultiplicityConstrained(cs) if class.supports(t) => {
                let allowed = &cs.iter().find(|c| c.summand == t).expect("supported summand").allowed;
                let slack = allowed.conductor().unwrap_or(0) as usize;
                balance(x, y, |v| allowed.contains(v as u32), x.max(y) + slack + 1)
            }
            _ => (x == y).then_some((0, 0)),
        };
        let Some((fx, fy)) = pair else {
            return Ok(None);
        };
        if fx > 0 {
            f.insert(t, fx);
        }
        if fy > 0 {
            fprime.insert(t, fy);
        }
    }
    let witness = EquivalenceWitness {
        k: k.clone(),
        k2: k2.clone(),
        f: ModuleObject::from_multiplicities(ring, &f)?,
        fprime: ModuleObject::from_multiplicities(ring, &fprime)?,
    };
    debug_assert!(witness.verify(class));
    Ok(Some(witness))
}
