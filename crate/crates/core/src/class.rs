//! Descriptors of precovering classes and their membership semantics.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::module::{parse_order_list, Indecomposable, ModuleObject, Multiplicities};
use crate::ring::RingSpec;

/// A cofinite (or finite) subset of N: the listed members below `conductor`,
/// plus every integer `>= conductor` when a conductor is given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NumericalSet {
    below: BTreeSet<u32>,
    conductor: Option<u32>,
}

impl NumericalSet {
    pub fn all() -> Self {
        NumericalSet {
            below: BTreeSet::new(),
            conductor: Some(0),
        }
    }

    pub fn new(members: impl IntoIterator<Item = u32>, conductor: Option<u32>) -> Self {
        let mut below: BTreeSet<u32> = members.into_iter().collect();
        let mut conductor = conductor;
        if let Some(c) = conductor.as_mut() {
            below.retain(|&x| x < *c);
            while *c > 0 && below.contains(&(*c - 1)) {
                *c -= 1;
                below.remove(c);
            }
        }
        NumericalSet { below, conductor }
    }

    pub fn contains(&self, x: u32) -> bool {
        self.below.contains(&x) || self.conductor.is_some_and(|c| x >= c)
    }

    pub fn conductor(&self) -> Option<u32> {
        self.conductor
    }

    pub fn is_all(&self) -> bool {
        self.conductor == Some(0)
    }

    pub fn is_cofinite(&self) -> bool {
        self.conductor.is_some()
    }

    /// Largest integer that needs an explicit membership test.
    fn horizon(&self) -> u32 {
        match self.conductor {
            Some(c) => c,
            None => self.below.iter().max().map_or(0, |m| m + 1),
        }
    }

    /// Closed under addition, checked exactly below the horizon.
    pub fn is_submonoid(&self) -> bool {
        if !self.contains(0) {
            return false;
        }
        let h = self.horizon();
        let members: Vec<u32> = (1..=h).filter(|&x| self.contains(x)).collect();
        if self.conductor.is_none() && !members.is_empty() {
            return false;
        }
        members.iter().all(|&a| members.iter().all(|&b| self.contains(a + b)))
    }

    /// Smallest member `>= x`.
    pub fn least_member_at_least(&self, x: u32) -> Option<u32> {
        if let Some(&m) = self.below.range(x..).next() {
            return Some(m);
        }
        self.conductor.map(|c| c.max(x))
    }

    /// Whether some positive integer belongs to the set.
    pub fn has_positive_member(&self) -> bool {
        self.below.iter().any(|&m| m > 0) || self.conductor.is_some()
    }

    /// First pair `(f, q)` of members with `f >= q` and `f - q` not a member,
    /// scanning `f` upward. The search to `2 * horizon` is complete: any failing
    /// difference `d` below the conductor also fails as `(c + d, c)`.
    pub fn difference_counterexample(&self) -> Option<(u32, u32)> {
        let limit = 2 * self.horizon() + 1;
        for f in 0..=limit {
            if !self.contains(f) {
                continue;
            }
            for q in 0..=f {
                if self.contains(q) && !self.contains(f - q) {
                    return Some((f, q));
                }
            }
        }
        None
    }

    /// Smallest non-member, if any.
    pub fn first_gap(&self) -> Option<u32> {
        (0..=self.horizon()).find(|&x| !self.contains(x))
    }
}

impl fmt::Display for NumericalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut items: Vec<String> = self.below.iter().map(|m| m.to_string()).collect();
        if let Some(c) = self.conductor {
            items.push(format!("{c}+"));
        }
        write!(f, "{{{}}}", items.join(","))
    }
}

impl std::str::FromStr for NumericalSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "N" {
            return Ok(NumericalSet::all());
        }
        let inner = s
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("expected an allowed set like {{0,2+}}, got `{s}`")))?;
        let mut members = Vec::new();
        let mut conductor = None;
        for item in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if let Some(c) = item.strip_suffix('+') {
                if conductor.is_some() {
                    return Err(Error::Parse(format!("allowed set `{s}` has two tails")));
                }
                conductor = Some(
                    c.trim()
                        .parse::<u32>()
                        .map_err(|e| Error::Parse(format!("`{item}`: {e}")))?,
                );
            } else {
                members.push(
                    item.parse::<u32>()
                        .map_err(|e| Error::Parse(format!("`{item}`: {e}")))?,
                );
            }
        }
        Ok(NumericalSet::new(members, conductor))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub summand: Indecomposable,
    pub allowed: NumericalSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClassKind {
    /// Finite direct sums of indecomposable summands of `D`.
    AddClosure(ModuleObject),
    /// Exactly the powers `D^m`, `m >= 0`.
    Powers(ModuleObject),
    /// Sums `⊕ I_c^{m_c}` with each `m_c` in its allowed set.
    MultiplicityConstrained(Vec<Constraint>),
    /// All finitely generated torsion abelian groups.
    TorsionOverZ,
}

/// A precovering class, validated to contain 0 and be closed under finite sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrecoverClassSpec {
    ring: RingSpec,
    kind: ClassKind,
}

impl PrecoverClassSpec {
    pub fn add_closure(d: ModuleObject) -> Self {
        PrecoverClassSpec {
            ring: d.ring(),
            kind: ClassKind::AddClosure(d),
        }
    }

    pub fn powers(d: ModuleObject) -> Self {
        PrecoverClassSpec {
            ring: d.ring(),
            kind: ClassKind::Powers(d),
        }
    }

    pub fn torsion_over_z() -> Self {
        PrecoverClassSpec {
            ring: RingSpec::Integers,
            kind: ClassKind::TorsionOverZ,
        }
    }

    pub fn multiplicity_constrained(ring: RingSpec, constraints: Vec<Constraint>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for c in &constraints {
            if !seen.insert(c.summand) {
                return Err(Error::InvalidClass(format!("summand {} listed twice", c.summand)));
            }
            ModuleObject::from_indecomposables(ring, &[c.summand])
                .map_err(|e| Error::InvalidClass(format!("support summand {}: {e}", c.summand)))?;
            if !c.allowed.contains(0) {
                return Err(Error::InvalidClass(format!(
                    "allowed set {} for {} must contain 0",
                    c.allowed, c.summand
                )));
            }
            if !c.allowed.is_submonoid() {
                return Err(Error::InvalidClass(format!(
                    "allowed set {} for {} is not closed under addition",
                    c.allowed, c.summand
                )));
            }
        }
        let mut constraints = constraints;
        constraints.sort_by_key(|c| c.summand);
        Ok(PrecoverClassSpec {
            ring,
            kind: ClassKind::MultiplicityConstrained(constraints),
        })
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    /// Indecomposables occurring in some member; `None` for the torsion class
    /// (every `Z/p^a`).
    pub fn support(&self) -> Option<Vec<Indecomposable>> {
        match &self.kind {
            ClassKind::AddClosure(d) | ClassKind::Powers(d) => Some(d.types()),
            ClassKind::MultiplicityConstrained(cs) => Some(
                cs.iter()
                    .filter(|c| c.allowed.has_positive_member())
                    .map(|c| c.summand)
                    .collect(),
            ),
            ClassKind::TorsionOverZ => None,
        }
    }

    pub fn supports(&self, ind: Indecomposable) -> bool {
        match self.support() {
            Some(s) => s.contains(&ind),
            None => !ind.is_free(),
        }
    }

    /// Indecomposables that must be tested to check precover and Hom-exactness
    /// properties for maps into the given modules. For the torsion class this
    /// is every `Z/p^j` with `p^j` bounded by the modules' exponents; maps from
    /// larger cyclic groups factor through those.
    pub fn test_indecomposables<'a>(&self, context: impl IntoIterator<Item = &'a ModuleObject>) -> Vec<Indecomposable> {
        if let Some(s) = self.support() {
            return s;
        }
        let mut out = BTreeSet::new();
        for m in context {
            for p in m.torsion_primes() {
                let e = m.exponent_of(p);
                for j in 1..=e {
                    out.insert(Indecomposable::cyclic(p.pow(j)).expect("prime power"));
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn contains(&self, m: &ModuleObject) -> Result<bool> {
        if m.ring() != self.ring {
            return Err(Error::RingMismatch(self.ring, m.ring()));
        }
        Ok(self.contains_multiplicities(&m.multiplicities()))
    }

    pub fn contains_multiplicities(&self, mult: &Multiplicities) -> bool {
        match &self.kind {
            ClassKind::AddClosure(d) => {
                let types = d.types();
                mult.iter().all(|(t, &c)| c == 0 || types.contains(t))
            }
            ClassKind::Powers(d) => powers_factor(d, mult).is_some(),
            ClassKind::MultiplicityConstrained(cs) => {
                let ok_support = mult.iter().all(|(t, &c)| c == 0 || cs.iter().any(|k| k.summand == *t));
                ok_support
                    && cs
                        .iter()
                        .all(|k| k.allowed.contains(mult.get(&k.summand).copied().unwrap_or(0) as u32))
            }
            ClassKind::TorsionOverZ => mult.get(&Indecomposable::FREE).copied().unwrap_or(0) == 0,
        }
    }

    /// A smallest nonzero member, if the class has one.
    pub fn smallest_nonzero_member(&self) -> Option<ModuleObject> {
        match &self.kind {
            ClassKind::AddClosure(d) => {
                let t = *d.types().iter().min_by_key(|t| (t.order() == 0, t.order()))?;
                Some(ModuleObject::from_indecomposables(self.ring, &[t]).expect("valid summand"))
            }
            ClassKind::Powers(d) => (!d.is_zero()).then(|| d.clone()),
            ClassKind::MultiplicityConstrained(cs) => cs
                .iter()
                .filter(|c| c.allowed.has_positive_member())
                .map(|c| {
                    let m = c.allowed.least_member_at_least(1).expect("positive member exists");
                    ModuleObject::from_indecomposables(self.ring, &vec![c.summand; m as usize]).expect("valid summand")
                })
                .min_by_key(|m| (m.num_generators(), m.order())),
            ClassKind::TorsionOverZ => Some(ModuleObject::new(self.ring, 0, [2]).expect("Z/2 is a valid group")),
        }
    }

    /// Minimal multiplicity vectors that may be removed from a member with the
    /// given multiplicities while staying in the class.
    pub fn removal_shapes(&self, mult: &Multiplicities) -> Vec<Multiplicities> {
        let present: Vec<(Indecomposable, usize)> =
            mult.iter().filter(|(_, &c)| c > 0).map(|(t, &c)| (*t, c)).collect();
        match &self.kind {
            ClassKind::AddClosure(_) | ClassKind::TorsionOverZ => {
                present.iter().map(|(t, _)| Multiplicities::from([(*t, 1)])).collect()
            }
            ClassKind::Powers(d) => {
                let block = d.multiplicities();
                let fits = !block.is_empty() && block.iter().all(|(t, &c)| mult.get(t).copied().unwrap_or(0) >= c);
                if fits {
                    vec![block]
                } else {
                    Vec::new()
                }
            }
            ClassKind::MultiplicityConstrained(cs) => present
                .iter()
                .filter_map(|&(t, c)| {
                    let allowed = &cs.iter().find(|k| k.summand == t)?.allowed;
                    let r = (1..=c).find(|&r| allowed.contains((c - r) as u32))?;
                    Some(Multiplicities::from([(t, r)]))
                })
                .collect(),
        }
    }

    /// Compact descriptor, e.g. `add([2])`, `constrained([4,2]; [2]={0,2+})`.
    pub fn compact(&self) -> String {
        match &self.kind {
            ClassKind::AddClosure(d) => format!("add({})", d.expr()),
            ClassKind::Powers(d) => format!("pow({})", d.expr()),
            ClassKind::MultiplicityConstrained(cs) => {
                let mut s = format!("constrained({}", support_list(cs));
                for c in cs.iter().filter(|c| !c.allowed.is_all()) {
                    s.push_str(&format!("; [{}]={}", c.summand.order(), c.allowed));
                }
                s.push(')');
                s
            }
            ClassKind::TorsionOverZ => "torsionZ".to_string(),
        }
    }
}

fn support_list(cs: &[Constraint]) -> String {
    format!(
        "[{}]",
        cs.iter()
            .map(|c| c.summand.order().to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// `Some(m)` when `mult = m * mult(d)`.
pub fn powers_factor(d: &ModuleObject, mult: &Multiplicities) -> Option<usize> {
    let block = d.multiplicities();
    let total: usize = mult.values().sum();
    if block.is_empty() {
        return (total == 0).then_some(0);
    }
    let (t0, &c0) = block.iter().next().expect("nonempty block");
    let have = mult.get(t0).copied().unwrap_or(0);
    if have % c0 != 0 {
        return None;
    }
    let m = have / c0;
    let matches = mult.iter().all(|(t, &c)| c == block.get(t).copied().unwrap_or(0) * m)
        && block.iter().all(|(t, &c)| mult.get(t).copied().unwrap_or(0) == c * m);
    matches.then_some(m)
}

impl fmt::Display for PrecoverClassSpec {
    /// Descriptor form: `add(D) D=[2]`, `pow(D) D=[4,2]`,
    /// `constrained support=[4,2] allowed[2]={0,2+}`, `torsionZ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ClassKind::AddClosure(d) => write!(f, "add(D) D={}", d.expr()),
            ClassKind::Powers(d) => write!(f, "pow(D) D={}", d.expr()),
            ClassKind::MultiplicityConstrained(cs) => {
                write!(f, "constrained support={}", support_list(cs))?;
                for c in cs.iter().filter(|c| !c.allowed.is_all()) {
                    write!(f, " allowed[{}]={}", c.summand.order(), c.allowed)?;
                }
                Ok(())
            }
            ClassKind::TorsionOverZ => write!(f, "torsionZ"),
        }
    }
}

/// Parses a module expression: `[4,2]`, `rank1+[2]`, `rank2`, `0`, or the
/// serialized form `ring=..; rank=..; orders=[..]`.
pub fn parse_module(ring: RingSpec, s: &str) -> Result<ModuleObject> {
    let s = s.trim();
    if s.contains("ring=") {
        let m: ModuleObject = s.parse()?;
        if m.ring() != ring {
            return Err(Error::RingMismatch(ring, m.ring()));
        }
        return Ok(m);
    }
    if s == "0" {
        return Ok(ModuleObject::zero(ring));
    }
    let mut rank = 0;
    let mut orders = Vec::new();
    for part in s.split('+').map(str::trim) {
        if let Some(r) = part.strip_prefix("rank") {
            rank += r
                .trim()
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("`{part}`: {e}")))?;
        } else if part.starts_with('[') {
            orders.extend(parse_order_list(part)?);
        } else {
            return Err(Error::Parse(format!("cannot parse module expression `{s}`")));
        }
    }
    ModuleObject::new(ring, rank, orders)
}

fn parse_support(ring: RingSpec, s: &str) -> Result<Vec<Indecomposable>> {
    parse_order_list(s)?
        .into_iter()
        .map(|q| {
            if q == 0 {
                if ring.is_modular() {
                    return Err(Error::InvalidClass(format!("free summand in a support over {ring}")));
                }
                Ok(Indecomposable::FREE)
            } else {
                let ind = Indecomposable::cyclic(q).map_err(|e| Error::InvalidClass(e.to_string()))?;
                ModuleObject::from_indecomposables(ring, &[ind]).map_err(|e| Error::InvalidClass(e.to_string()))?;
                Ok(ind)
            }
        })
        .collect()
}

/// Parses a class descriptor in either the long or the compact form.
pub fn parse_class(ring: RingSpec, s: &str) -> Result<PrecoverClassSpec> {
    let s = s.trim();
    let s = s.strip_prefix("class ").map(str::trim).unwrap_or(s);
    if s == "torsionZ" {
        if ring != RingSpec::Integers {
            return Err(Error::InvalidClass(format!("torsionZ requires ring Z, got {ring}")));
        }
        return Ok(PrecoverClassSpec::torsion_over_z());
    }
    // long forms
    for (head, ctor) in [("add(D)", true), ("pow(D)", false)] {
        if let Some(rest) = s.strip_prefix(head) {
            let d = rest
                .trim()
                .strip_prefix("D=")
                .ok_or_else(|| Error::Parse(format!("expected `D=<module>` after {head}")))?;
            let d = parse_module(ring, d)?;
            return Ok(if ctor {
                PrecoverClassSpec::add_closure(d)
            } else {
                PrecoverClassSpec::powers(d)
            });
        }
    }
    if let Some(rest) = s.strip_prefix("constrained ") {
        let mut support = None;
        let mut allowed: Vec<(Indecomposable, NumericalSet)> = Vec::new();
        for tok in rest.split_whitespace() {
            if let Some(v) = tok.strip_prefix("support=") {
                support = Some(parse_support(ring, v)?);
            } else if let Some(v) = tok.strip_prefix("allowed[") {
                let (idx, set) = v
                    .split_once("]=")
                    .ok_or_else(|| Error::Parse(format!("expected allowed[q]={{..}}, got `{tok}`")))?;
                let q: i64 = idx.trim().parse().map_err(|e| Error::Parse(format!("`{idx}`: {e}")))?;
                let ind = if q == 0 {
                    Indecomposable::FREE
                } else {
                    Indecomposable::cyclic(q)?
                };
                allowed.push((ind, set.parse()?));
            } else {
                return Err(Error::Parse(format!("unknown constrained field `{tok}`")));
            }
        }
        let support = support.ok_or_else(|| Error::Parse("constrained class needs support=[..]".into()))?;
        return build_constrained(ring, support, allowed);
    }
    // compact forms
    if let Some(inner) = s.strip_prefix("add(").and_then(|r| r.strip_suffix(')')) {
        return Ok(PrecoverClassSpec::add_closure(parse_module(ring, inner)?));
    }
    if let Some(inner) = s.strip_prefix("pow(").and_then(|r| r.strip_suffix(')')) {
        return Ok(PrecoverClassSpec::powers(parse_module(ring, inner)?));
    }
    if let Some(inner) = s.strip_prefix("constrained(").and_then(|r| r.strip_suffix(')')) {
        let mut parts = inner.split(';').map(str::trim);
        let support = parse_support(ring, parts.next().unwrap_or(""))?;
        let mut allowed = Vec::new();
        for p in parts {
            let (idx, set) = p
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected [q]={{..}}, got `{p}`")))?;
            let q = parse_order_list(idx)?;
            let [q] = q.as_slice() else {
                return Err(Error::Parse(format!("expected a single order in `{idx}`")));
            };
            let ind = if *q == 0 {
                Indecomposable::FREE
            } else {
                Indecomposable::cyclic(*q)?
            };
            allowed.push((ind, set.parse()?));
        }
        return build_constrained(ring, support, allowed);
    }
    Err(Error::Parse(format!("unknown class descriptor `{s}`")))
}

fn build_constrained(
    ring: RingSpec,
    support: Vec<Indecomposable>,
    allowed: Vec<(Indecomposable, NumericalSet)>,
) -> Result<PrecoverClassSpec> {
    for (ind, _) in &allowed {
        if !support.contains(ind) {
            return Err(Error::InvalidClass(format!(
                "allowed set given for {ind}, which is not in the support"
            )));
        }
    }
    let constraints = support
        .into_iter()
        .map(|summand| {
            let allowed = allowed
                .iter()
                .find(|(i, _)| *i == summand)
                .map(|(_, s)| s.clone())
                .unwrap_or_else(NumericalSet::all);
            Constraint { summand, allowed }
        })
        .collect();
    PrecoverClassSpec::multiplicity_constrained(ring, constraints)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: RingSpec = RingSpec::Modular(4);

    fn m(orders: &[i64]) -> ModuleObject {
        ModuleObject::new(Z4, 0, orders.iter().copied()).unwrap()
    }

    #[test]
    fn numerical_sets() {
        let s: NumericalSet = "{0,2+}".parse().unwrap();
        assert!(s.contains(0) && !s.contains(1) && s.contains(2) && s.contains(17));
        assert!(s.is_submonoid());
        assert_eq!(s.to_string(), "{0,2+}");
        assert_eq!(s.difference_counterexample(), Some((3, 2)));
        assert_eq!(s.first_gap(), Some(1));
        assert_eq!("{0,1,2+}".parse::<NumericalSet>().unwrap(), NumericalSet::all());
        assert!(!"{0,3,7+}".parse::<NumericalSet>().unwrap().is_submonoid());
        assert!(!"{0,1}".parse::<NumericalSet>().unwrap().is_submonoid());
        assert!("{0}".parse::<NumericalSet>().unwrap().is_submonoid());
        assert_eq!(NumericalSet::all().difference_counterexample(), None);
        assert_eq!(s.least_member_at_least(1), Some(2));
    }

    #[test]
    fn membership() {
        let add_k = PrecoverClassSpec::add_closure(m(&[2]));
        assert!(add_k.contains(&m(&[2, 2, 2])).unwrap());
        assert!(!add_k.contains(&m(&[4])).unwrap());
        let pow_d = PrecoverClassSpec::powers(m(&[4, 2]));
        assert!(!pow_d.contains(&m(&[2])).unwrap());
        assert!(pow_d.contains(&m(&[4, 4, 2, 2])).unwrap());
        assert!(pow_d.contains(&ModuleObject::zero(Z4)).unwrap());
        let tor = PrecoverClassSpec::torsion_over_z();
        assert!(!tor.contains(&ModuleObject::regular(RingSpec::Integers)).unwrap());
        assert!(add_k.contains(&ModuleObject::zero(RingSpec::Integers)).is_err());
    }

    #[test]
    fn descriptor_round_trips() {
        for text in [
            "add(D) D=[2]",
            "pow(D) D=[4,2]",
            "constrained support=[4,2] allowed[2]={0,2+}",
        ] {
            let c = parse_class(Z4, text).unwrap();
            assert_eq!(c.to_string(), text);
            assert_eq!(parse_class(Z4, &c.compact()).unwrap(), c);
        }
        assert_eq!(
            parse_class(Z4, "add([2])").unwrap(),
            parse_class(Z4, "class add(D) D=[2]").unwrap()
        );
        assert_eq!(
            parse_class(RingSpec::Integers, "torsionZ").unwrap(),
            PrecoverClassSpec::torsion_over_z()
        );
        assert!(parse_class(Z4, "torsionZ").is_err());
        assert!(parse_class(Z4, "constrained support=[2] allowed[2]={0,3,7+}").is_err());
        assert!(parse_class(Z4, "constrained support=[2] allowed[2]={1+}").is_err());
    }

    #[test]
    fn constrained_membership() {
        let c = parse_class(Z4, "constrained support=[4,2] allowed[2]={0,2+}").unwrap();
        assert!(!c.contains(&m(&[2])).unwrap());
        assert!(c.contains(&m(&[2, 2])).unwrap());
        assert!(c.contains(&m(&[4, 2, 2, 2])).unwrap());
        let shapes = c.removal_shapes(&m(&[4, 2, 2]).multiplicities());
        let k = Indecomposable::cyclic(2).unwrap();
        let r = Indecomposable::cyclic(4).unwrap();
        assert!(shapes.contains(&Multiplicities::from([(k, 2)])));
        assert!(shapes.contains(&Multiplicities::from([(r, 1)])));
    }

    #[test]
    fn module_expressions() {
        let z = RingSpec::Integers;
        assert_eq!(
            parse_module(z, "rank1+[2]").unwrap(),
            ModuleObject::new(z, 1, [2]).unwrap()
        );
        assert_eq!(parse_module(z, "rank1").unwrap(), ModuleObject::regular(z));
        assert_eq!(parse_module(Z4, "0").unwrap(), ModuleObject::zero(Z4));
        assert!(parse_module(Z4, "[3]").is_err());
        assert!(parse_module(Z4, "rank1").is_err());
    }
}
