//! Precovers, covers, almost-epi tests and class-property deciders.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::algebra::{torsion_submodule, Factorizer};
use crate::class::{ClassKind, PrecoverClassSpec};
use crate::error::{Error, Result};
use crate::hom::{CoordinateOdometer, HomSpace};
use crate::linalg::reduce128;
use crate::module::{Indecomposable, ModuleObject};
use crate::morphism::ModuleMorphism;
use crate::ring::RingSpec;
use crate::verdict::{ConditionVerdict, Witness};

/// A generator `I -> M` of some `Hom(I, M)` with a lift `ψ` through the precover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestMap {
    pub generator: ModuleMorphism,
    pub lift: ModuleMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecoverCertificate {
    pub class: PrecoverClassSpec,
    pub precover: ModuleMorphism,
    pub test_maps: Vec<TestMap>,
}

impl PrecoverCertificate {
    /// Re-checks the certificate from scratch: the domain is a member, every
    /// recorded lift composes to its generator, and the generators are exactly
    /// the Hom bases of the required test indecomposables.
    pub fn verify(&self) -> bool {
        let phi = &self.precover;
        if !self.class.contains(phi.domain()).unwrap_or(false) {
            return false;
        }
        let lifts_ok = self
            .test_maps
            .iter()
            .all(|t| t.lift.codomain() == phi.domain() && phi.compose(&t.lift).is_ok_and(|c| c == t.generator));
        let expected: Vec<ModuleMorphism> = test_modules(&self.class, phi.codomain())
            .iter()
            .flat_map(|i| HomSpace::new(i, phi.codomain()).map(|h| h.basis()).unwrap_or_default())
            .collect();
        let recorded: Vec<ModuleMorphism> = self.test_maps.iter().map(|t| t.generator.clone()).collect();
        lifts_ok && expected == recorded
    }
}

fn indecomposable_module(ring: RingSpec, i: Indecomposable) -> ModuleObject {
    ModuleObject::from_indecomposables(ring, &[i]).expect("indecomposable is valid over its ring")
}

/// Indecomposables whose maps into `m` a precover of `m` must lift.
fn test_modules(class: &PrecoverClassSpec, m: &ModuleObject) -> Vec<ModuleObject> {
    class
        .test_indecomposables([m])
        .into_iter()
        .map(|i| indecomposable_module(class.ring(), i))
        .collect()
}

fn check_ring(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<()> {
    if class.ring() != m.ring() {
        return Err(Error::RingMismatch(class.ring(), m.ring()));
    }
    Ok(())
}

/// Lifts every test generator through `phi`, or `None` if some generator does not lift.
fn certify(class: &PrecoverClassSpec, phi: &ModuleMorphism) -> Result<Option<PrecoverCertificate>> {
    let mut test_maps = Vec::new();
    for i in test_modules(class, phi.codomain()) {
        let fz = Factorizer::new(&i, phi)?;
        for g in HomSpace::new(&i, phi.codomain())?.basis() {
            match fz.solve(&g) {
                Some(lift) => test_maps.push(TestMap { generator: g, lift }),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(PrecoverCertificate {
        class: class.clone(),
        precover: phi.clone(),
        test_maps,
    }))
}

/// Cheaper precover test used during minimization: `Hom(I, φ)` onto for each test `I`.
fn is_precover_map(class: &PrecoverClassSpec, phi: &ModuleMorphism) -> bool {
    test_modules(class, phi.codomain()).iter().all(|i| {
        let src = HomSpace::new(i, phi.domain()).expect("same ring");
        let dst = HomSpace::new(i, phi.codomain()).expect("same ring");
        src.postcompose(phi, &dst).is_surjective()
    })
}

pub fn contains(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<bool> {
    class.contains(m)
}

/// Evaluation map over group generators of `Hom(I, M)` for the class's building blocks.
pub fn evaluation_precover(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<ModuleMorphism> {
    check_ring(class, m)?;
    let ring = class.ring();
    let mut parts: Vec<ModuleMorphism> = Vec::new();
    match class.kind() {
        ClassKind::TorsionOverZ => return Ok(torsion_submodule(m)?.1),
        ClassKind::AddClosure(d) => {
            for t in d.types() {
                parts.extend(HomSpace::new(&indecomposable_module(ring, t), m)?.basis());
            }
        }
        ClassKind::Powers(d) => {
            if !d.is_zero() {
                parts.extend(HomSpace::new(d, m)?.basis());
            }
        }
        ClassKind::MultiplicityConstrained(cs) => {
            for c in cs.iter().filter(|c| c.allowed.has_positive_member()) {
                let i = indecomposable_module(ring, c.summand);
                let basis = HomSpace::new(&i, m)?.basis();
                let need = basis.len() as u32;
                let count = c.allowed.least_member_at_least(need).ok_or_else(|| {
                    Error::CannotPrecover(format!("no allowed multiplicity of {} is at least {need}", c.summand))
                })?;
                parts.extend(basis);
                parts.extend((need..count).map(|_| ModuleMorphism::zero(i.clone(), m.clone())));
            }
        }
    }
    ModuleMorphism::codiagonal(ring, m, &parts)
}

/// Evaluation precover plus a zero-mapped copy of a smallest nonzero member.
pub fn padded_precover(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<ModuleMorphism> {
    let eval = evaluation_precover(class, m)?;
    let Some(p) = class.smallest_nonzero_member() else {
        return Ok(eval);
    };
    ModuleMorphism::codiagonal(class.ring(), m, &[eval, ModuleMorphism::zero(p, m.clone())])
}

pub fn build_precover(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<PrecoverCertificate> {
    let phi = evaluation_precover(class, m)?;
    debug_assert!(
        class.contains(phi.domain())?,
        "evaluation domain must be a class member"
    );
    certify(class, &phi)?
        .ok_or_else(|| Error::CannotPrecover(format!("evaluation map into {} does not lift", m.expr())))
}

/// `Some(certificate)` iff `phi` is a precover.
pub fn verify_precover(class: &PrecoverClassSpec, phi: &ModuleMorphism) -> Result<Option<PrecoverCertificate>> {
    check_ring(class, phi.domain())?;
    if !class.contains(phi.domain())? {
        return Err(Error::NotInClass(phi.domain().expr()));
    }
    certify(class, phi)
}

/// Greedily deletes domain summands while the map stays a precover with a member domain.
pub fn minimize_to_cover(cert: &PrecoverCertificate) -> Result<PrecoverCertificate> {
    let class = &cert.class;
    let mut phi = cert.precover.clone();
    'search: loop {
        let summands = phi.domain().summands();
        for shape in class.removal_shapes(&phi.domain().multiplicities()) {
            let choices: Vec<Vec<Vec<usize>>> = shape
                .iter()
                .map(|(t, &r)| {
                    let cols: Vec<usize> = (0..summands.len()).filter(|&c| summands[c] == *t).collect();
                    cols.into_iter().rev().combinations(r).collect()
                })
                .collect();
            for pick in choices.iter().multi_cartesian_product() {
                let removed: HashSet<usize> = pick.into_iter().flatten().copied().collect();
                let keep: Vec<usize> = (0..summands.len()).filter(|c| !removed.contains(c)).collect();
                let candidate = phi.restrict_domain(&keep);
                if is_precover_map(class, &candidate) {
                    phi = candidate;
                    continue 'search;
                }
            }
        }
        break;
    }
    certify(class, &phi)?.ok_or_else(|| Error::CannotPrecover("minimized map failed to re-certify".into()))
}

/// The canonical cover: the evaluation precover, minimized.
pub fn cover(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<ModuleMorphism> {
    Ok(minimize_to_cover(&build_precover(class, m)?)?.precover)
}

/// The solutions `g ∈ End(M)` of `g∘φ = φ`: the coset `id + Ker(Hom(φ, M))`.
pub struct SolutionCoset {
    end: HomSpace,
    id: Vec<i64>,
    generators: Vec<Vec<i64>>,
    orders: Vec<i64>,
}

impl SolutionCoset {
    /// `None` when the coset is infinite.
    pub fn new(phi: &ModuleMorphism) -> Option<Self> {
        let m = phi.codomain();
        let end = HomSpace::new(m, m).expect("same ring");
        let target = HomSpace::new(phi.domain(), m).expect("same ring");
        let ker = end.precompose(phi, &target).kernel(RingSpec::Integers);
        if ker.module.free_rank() > 0 {
            return None;
        }
        let generators = ker.generators(&end.orders());
        let id = end.coordinates(&ModuleMorphism::identity(m));
        Some(SolutionCoset {
            id,
            generators,
            orders: ker.module.generator_orders(),
            end,
        })
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    /// Every solution exactly once.
    pub fn elements(&self) -> impl Iterator<Item = ModuleMorphism> + '_ {
        let end_orders = self.end.orders();
        CoordinateOdometer::new(self.orders.clone()).map(move |c| {
            let coords: Vec<i64> = (0..end_orders.len())
                .map(|k| {
                    let shift: i128 = self
                        .generators
                        .iter()
                        .zip(&c)
                        .map(|(g, &x)| g[k] as i128 * x as i128)
                        .sum();
                    reduce128(self.id[k] as i128 + shift, end_orders[k])
                })
                .collect();
            self.end.from_coordinates(&coords)
        })
    }
}

/// Whether every `g` with `g∘φ = φ` is an automorphism of the codomain.
pub fn is_almost_epi(phi: &ModuleMorphism) -> ConditionVerdict {
    let Some(coset) = SolutionCoset::new(phi) else {
        return ConditionVerdict::unknown("infinite endomorphism solution coset over Z");
    };
    let mut count = 0usize;
    for g in coset.elements() {
        debug_assert_eq!(g.compose(phi).ok().as_ref(), Some(phi));
        let auto = is_automorphism(&g);
        let left = left_inverse(&g);
        assert_eq!(
            auto,
            left.is_some(),
            "automorphism and left-inverse tests disagree on {:?}",
            g.matrix()
        );
        count += 1;
        if !auto {
            return ConditionVerdict::no(
                Some(Witness::Endomorphism { phi: phi.clone(), g }),
                "a solution of g∘φ = φ is not an automorphism",
            );
        }
    }
    ConditionVerdict::yes(
        Some(Witness::Morphism { morphism: phi.clone() }),
        format!("all {count} solutions of g∘φ = φ are automorphisms with left inverses"),
    )
}

/// Automorphism test. Finite modules: injectivity on the socle of each primary part.
pub fn is_automorphism(g: &ModuleMorphism) -> bool {
    let m = g.domain();
    if !m.is_finite() {
        return g.is_iso();
    }
    let orders = m.generator_orders();
    let primes: Vec<i64> = m.torsion_primes();
    primes.iter().all(|&p| {
        let idx: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] % p == 0).collect();
        // socle basis element for generator i is (d_i / p) e_i
        let rows: Vec<Vec<i64>> = idx
            .iter()
            .map(|&j| {
                idx.iter()
                    .map(|&i| {
                        let v = (g.entry(j, i) as i128 * (orders[i] / p) as i128).rem_euclid(orders[j] as i128);
                        ((v / (orders[j] / p) as i128) % p as i128) as i64
                    })
                    .collect()
            })
            .collect();
        rank_mod_p(rows, p) == idx.len()
    })
}

fn rank_mod_p(mut a: Vec<Vec<i64>>, p: i64) -> usize {
    let n = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] % p != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = crate::ring::inverse_mod(a[rank][col].rem_euclid(p), p);
        for r in 0..a.len() {
            if r != rank && a[r][col] % p != 0 {
                let f = (a[r][col] * inv).rem_euclid(p);
                for c in 0..n {
                    a[r][c] = (a[r][c] - f * a[rank][c]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A left inverse `v` with `v∘g = id`. Finite modules: the power orbit of `g`
/// either returns to the identity (then `g^(k-1)` inverts `g`) or cycles without
/// it (then `g` is not invertible). Otherwise a linear solve.
pub fn left_inverse(g: &ModuleMorphism) -> Option<ModuleMorphism> {
    let m = g.domain();
    let id = ModuleMorphism::identity(m);
    if !m.is_finite() {
        let end = HomSpace::new(m, m).expect("same ring");
        let c = end.precompose(g, &end).solver().solve(&end.coordinates(&id))?;
        return Some(end.from_coordinates(&c));
    }
    let mut seen = HashSet::new();
    let mut prev = id.clone();
    let mut power = g.clone();
    loop {
        if power == id {
            return Some(prev);
        }
        if !seen.insert(power.matrix().to_vec()) {
            return None;
        }
        prev = power.clone();
        power = power.compose(g).expect("endomorphism");
    }
}

pub fn has_epi_precover(class: &PrecoverClassSpec, m: &ModuleObject) -> Result<bool> {
    Ok(build_precover(class, m)?.precover.is_epi())
}

pub fn class_closed_under_summands(class: &PrecoverClassSpec) -> ConditionVerdict {
    let ring = class.ring();
    match class.kind() {
        ClassKind::AddClosure(_) => {
            ConditionVerdict::yes(None, "summands of sums of summands of D are sums of summands of D")
        }
        ClassKind::TorsionOverZ => ConditionVerdict::yes(None, "summands of torsion groups are torsion"),
        ClassKind::Powers(d) => {
            if d.num_generators() <= 1 {
                return ConditionVerdict::yes(None, "D is zero or indecomposable, so summands of D^m are powers of D");
            }
            let i = *d
                .summands()
                .iter()
                .min_by_key(|t| (t.is_free(), t.order()))
                .expect("D is nonzero");
            let summand = indecomposable_module(ring, i);
            let mut rest = d.summands();
            let pos = rest.iter().position(|t| *t == i).expect("summand of D");
            rest.remove(pos);
            let quotient = ModuleObject::from_indecomposables(ring, &rest).expect("summands of D");
            ConditionVerdict::no(
                Some(Witness::Summand {
                    summand,
                    member: d.clone(),
                    quotient: Some(quotient),
                }),
                "an indecomposable summand of D is not a power of D",
            )
        }
        ClassKind::MultiplicityConstrained(cs) => {
            for c in cs.iter().filter(|c| c.allowed.has_positive_member()) {
                let Some(d) = c.allowed.first_gap() else {
                    continue;
                };
                let f = (d..)
                    .find(|&f| c.allowed.contains(f) && c.allowed.contains(f - d))
                    .expect("cofinite allowed set");
                let power = |k: u32| {
                    ModuleObject::from_indecomposables(ring, &vec![c.summand; k as usize]).expect("valid summand")
                };
                return ConditionVerdict::no(
                    Some(Witness::Summand {
                        summand: power(d),
                        member: power(f),
                        quotient: Some(power(f - d)),
                    }),
                    format!(
                        "multiplicity {d} of {} is not allowed but is a summand of an allowed {f}",
                        c.summand
                    ),
                );
            }
            ConditionVerdict::yes(None, "every multiplicity of every supported summand is allowed")
        }
    }
}

pub fn class_weakly_closed(class: &PrecoverClassSpec) -> ConditionVerdict {
    let ring = class.ring();
    match class.kind() {
        ClassKind::AddClosure(_) | ClassKind::TorsionOverZ => {
            ConditionVerdict::yes(None, "closed under direct summands")
        }
        ClassKind::Powers(_) => ConditionVerdict::yes(None, "F = D^m and F/M = D^j force M = D^(m-j) by Krull-Schmidt"),
        ClassKind::MultiplicityConstrained(cs) => {
            for c in cs.iter().filter(|c| c.allowed.has_positive_member()) {
                if let Some((f, q)) = c.allowed.difference_counterexample() {
                    let power = |k: u32| {
                        ModuleObject::from_indecomposables(ring, &vec![c.summand; k as usize]).expect("valid summand")
                    };
                    return ConditionVerdict::no(
                        Some(Witness::Summand {
                            summand: power(f - q),
                            member: power(f),
                            quotient: Some(power(q)),
                        }),
                        format!(
                            "multiplicities {f} and {q} of {} are allowed but {} is not",
                            c.summand,
                            f - q
                        ),
                    );
                }
            }
            ConditionVerdict::yes(None, "every allowed set is closed under differences")
        }
    }
}

fn universe_indecomposables(universe: &[ModuleObject]) -> Vec<Indecomposable> {
    universe.iter().flat_map(|m| m.types()).sorted().dedup().collect()
}

pub fn is_separating(class: &PrecoverClassSpec, universe: &[ModuleObject]) -> Result<ConditionVerdict> {
    let ring = class.ring();
    for m in universe {
        check_ring(class, m)?;
    }
    for i in universe_indecomposables(universe) {
        let target = indecomposable_module(ring, i);
        let mut hit = false;
        for g in test_modules(class, &target) {
            if !HomSpace::new(&g, &target)?.is_zero() {
                hit = true;
                break;
            }
        }
        if !hit {
            return Ok(ConditionVerdict::no(
                Some(Witness::Module { module: target }),
                "no class member maps nonzero into this indecomposable",
            ));
        }
    }
    Ok(ConditionVerdict::yes(
        None,
        "every indecomposable of the universe receives a nonzero map from the class",
    ))
}

pub fn mono_precovers_are_iso(class: &PrecoverClassSpec, universe: &[ModuleObject]) -> Result<ConditionVerdict> {
    for m in universe {
        let c = cover(class, m)?;
        if c.is_mono() && !c.is_epi() {
            return Ok(ConditionVerdict::no(
                Some(Witness::Morphism { morphism: c }),
                "the cover is mono but not epi",
            ));
        }
    }
    Ok(ConditionVerdict::yes(
        None,
        "no module of the universe has a mono non-epi cover",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::parse_class;
    use crate::verdict::Status;

    const Z4: RingSpec = RingSpec::Modular(4);
    const Z: RingSpec = RingSpec::Integers;

    fn m(orders: &[i64]) -> ModuleObject {
        ModuleObject::new(Z4, 0, orders.iter().copied()).unwrap()
    }

    fn add_k() -> PrecoverClassSpec {
        PrecoverClassSpec::add_closure(m(&[2]))
    }

    fn phi1() -> ModuleMorphism {
        ModuleMorphism::new(m(&[2]), m(&[4]), vec![vec![2]]).unwrap()
    }

    #[test]
    fn build_examples() {
        let c = build_precover(&add_k(), &m(&[4])).unwrap();
        assert_eq!(c.precover, phi1());
        assert!(c.verify());
        let t = build_precover(&PrecoverClassSpec::torsion_over_z(), &ModuleObject::regular(Z)).unwrap();
        assert!(t.precover.domain().is_zero());
        let pow = PrecoverClassSpec::powers(m(&[4, 2]));
        let c = build_precover(&pow, &m(&[2])).unwrap();
        assert_eq!(c.precover.domain(), &m(&[4, 4, 2, 2]));
        assert!(c.verify());
    }

    #[test]
    fn verify_examples() {
        assert!(verify_precover(&add_k(), &phi1()).unwrap().is_some());
        let zero = ModuleMorphism::zero(ModuleObject::zero(Z4), m(&[4]));
        assert!(verify_precover(&add_k(), &zero).unwrap().is_none());
        let id = ModuleMorphism::identity(&m(&[2, 2]));
        assert!(verify_precover(&add_k(), &id).unwrap().is_some());
        assert!(verify_precover(&add_k(), &ModuleMorphism::identity(&m(&[4]))).is_err());
    }

    #[test]
    fn minimize_examples() {
        let redundant = ModuleMorphism::new(m(&[2, 2]), m(&[2]), vec![vec![1, 1]]).unwrap();
        let cert = verify_precover(&add_k(), &redundant).unwrap().unwrap();
        let c = minimize_to_cover(&cert).unwrap();
        assert_eq!(c.precover, ModuleMorphism::identity(&m(&[2])));
        let cert = build_precover(&add_k(), &m(&[4])).unwrap();
        assert_eq!(minimize_to_cover(&cert).unwrap().precover, phi1());
        let zero = ModuleMorphism::zero(ModuleObject::zero(Z4), ModuleObject::zero(Z4));
        let cert = verify_precover(&add_k(), &zero).unwrap().unwrap();
        assert_eq!(minimize_to_cover(&cert).unwrap().precover, zero);
    }

    #[test]
    fn almost_epi_examples() {
        assert_eq!(is_almost_epi(&phi1()).status, Status::Yes);
        let zr = ModuleObject::regular(Z);
        assert_eq!(is_almost_epi(&ModuleMorphism::scalar(&zr, 2)).status, Status::Yes);
        let zero = ModuleMorphism::zero(m(&[2]), m(&[2]));
        assert_eq!(is_almost_epi(&zero).status, Status::No);
        let to_z2 = ModuleMorphism::zero(ModuleObject::zero(Z), ModuleObject::new(Z, 1, []).unwrap());
        assert_eq!(is_almost_epi(&to_z2).status, Status::Unknown);
    }

    #[test]
    fn epi_precover_examples() {
        assert!(!has_epi_precover(&add_k(), &m(&[4])).unwrap());
        assert!(has_epi_precover(&add_k(), &m(&[2, 2])).unwrap());
        assert!(!has_epi_precover(&PrecoverClassSpec::torsion_over_z(), &ModuleObject::regular(Z)).unwrap());
    }

    #[test]
    fn class_property_examples() {
        assert!(class_closed_under_summands(&add_k()).is_yes());
        let pow = PrecoverClassSpec::powers(m(&[4, 2]));
        let v = class_closed_under_summands(&pow);
        assert!(v.is_no());
        assert!(matches!(v.witness, Some(Witness::Summand { ref summand, .. }) if *summand == m(&[2])));
        let bad = parse_class(Z4, "constrained support=[4,2] allowed[2]={0,2+}").unwrap();
        let v = class_closed_under_summands(&bad);
        assert!(
            matches!(v.witness, Some(Witness::Summand { ref summand, ref member, .. })
            if *summand == m(&[2]) && *member == m(&[2, 2, 2]))
        );
        assert!(class_weakly_closed(&pow).is_yes());
        let v = class_weakly_closed(&bad);
        assert!(
            matches!(v.witness, Some(Witness::Summand { ref summand, ref member, ref quotient })
            if *summand == m(&[2]) && *member == m(&[2, 2, 2]) && *quotient == Some(m(&[2, 2])))
        );
        assert!(class_weakly_closed(&add_k()).is_yes());
    }

    #[test]
    fn separating_and_mono_examples() {
        let universe = vec![m(&[]), m(&[2]), m(&[4]), m(&[4, 2])];
        assert!(is_separating(&add_k(), &universe).unwrap().is_yes());
        assert!(is_separating(&PrecoverClassSpec::add_closure(m(&[4])), &universe)
            .unwrap()
            .is_yes());
        let zu = vec![ModuleObject::regular(Z), ModuleObject::new(Z, 0, [2]).unwrap()];
        let tor = PrecoverClassSpec::torsion_over_z();
        assert!(is_separating(&tor, &zu).unwrap().is_no());
        let v = mono_precovers_are_iso(&add_k(), &universe).unwrap();
        assert!(matches!(v.witness, Some(Witness::Morphism { ref morphism }) if *morphism == phi1()));
        assert!(
            mono_precovers_are_iso(&PrecoverClassSpec::add_closure(m(&[4])), &universe)
                .unwrap()
                .is_yes()
        );
        assert!(mono_precovers_are_iso(&tor, &zu).unwrap().is_no());
    }
}
