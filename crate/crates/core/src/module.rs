//! Finitely generated modules over `Z/nZ` and `Z` in primary canonical form.

use serde::{Deserialize, Serialize};
use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::{primary_parts, prime_power, RingSpec};

/// An indecomposable module: `Z` (order 0) or a cyclic `Z/p^a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Indecomposable(i64);

impl Indecomposable {
    pub const FREE: Indecomposable = Indecomposable(0);

    pub fn cyclic(q: i64) -> Result<Self> {
        prime_power(q)
            .map(|_| Indecomposable(q))
            .ok_or_else(|| Error::InvalidModule(format!("{q} is not a prime power")))
    }

    /// Generator order; 0 for the free module `Z`.
    pub fn order(self) -> i64 {
        self.0
    }

    pub fn is_free(self) -> bool {
        self.0 == 0
    }

    /// `(p, a)` with order `p^a`; `None` for `Z`.
    pub fn prime_exponent(self) -> Option<(i64, u32)> {
        prime_power(self.0)
    }

    fn sort_key(self) -> (bool, i64, Reverse<i64>) {
        match self.prime_exponent() {
            None => (false, 0, Reverse(0)),
            Some((p, _)) => (true, p, Reverse(self.0)),
        }
    }
}

impl Ord for Indecomposable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Indecomposable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_free() {
            write!(f, "Z")
        } else {
            write!(f, "Z/{}", self.0)
        }
    }
}

/// Multiplicity vector of a module, keyed by indecomposable type in canonical order.
pub type Multiplicities = BTreeMap<Indecomposable, usize>;

/// A finitely generated module, stored as its multiset of indecomposable summands.
///
/// Generators are laid out free summands first, then torsion summands sorted by
/// prime and, within a prime, by decreasing order. Two values are equal exactly
/// when the modules are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleObject {
    ring: RingSpec,
    free_rank: usize,
    torsion: Vec<i64>,
}

impl ModuleObject {
    /// Builds a module from a free rank and cyclic orders. Orders that are not
    /// prime powers are split into their primary parts.
    pub fn new(ring: RingSpec, free_rank: usize, orders: impl IntoIterator<Item = i64>) -> Result<Self> {
        if ring.is_modular() && free_rank > 0 {
            return Err(Error::InvalidModule(format!(
                "free rank {free_rank} over {ring}; use cyclic orders instead"
            )));
        }
        let mut torsion = Vec::new();
        for q in orders {
            if q < 2 {
                return Err(Error::InvalidModule(format!("cyclic order {q} must be at least 2")));
            }
            if let Some(n) = ring.modulus() {
                if n % q != 0 {
                    return Err(Error::InvalidModule(format!("order {q} does not divide {n}")));
                }
            }
            torsion.extend(primary_parts(q));
        }
        torsion.sort_by_key(|&q| Indecomposable(q).sort_key());
        Ok(ModuleObject {
            ring,
            free_rank,
            torsion,
        })
    }

    pub fn zero(ring: RingSpec) -> Self {
        ModuleObject {
            ring,
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    /// The ring regarded as a module over itself.
    pub fn regular(ring: RingSpec) -> Self {
        match ring {
            RingSpec::Integers => ModuleObject {
                ring,
                free_rank: 1,
                torsion: Vec::new(),
            },
            RingSpec::Modular(n) => ModuleObject::new(ring, 0, [n]).expect("modulus divides itself"),
        }
    }

    pub fn from_multiplicities(ring: RingSpec, mult: &Multiplicities) -> Result<Self> {
        let mut free_rank = 0;
        let mut orders = Vec::new();
        for (&ind, &m) in mult {
            if ind.is_free() {
                free_rank += m;
            } else {
                orders.extend(std::iter::repeat(ind.order()).take(m));
            }
        }
        Self::new(ring, free_rank, orders)
    }

    pub fn from_indecomposables(ring: RingSpec, parts: &[Indecomposable]) -> Result<Self> {
        let free_rank = parts.iter().filter(|p| p.is_free()).count();
        Self::new(
            ring,
            free_rank,
            parts.iter().filter(|p| !p.is_free()).map(|p| p.order()),
        )
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion_orders(&self) -> &[i64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Orders of the canonical generators, 0 marking a free generator.
    pub fn generator_orders(&self) -> Vec<i64> {
        std::iter::repeat(0)
            .take(self.free_rank)
            .chain(self.torsion.iter().copied())
            .collect()
    }

    /// The indecomposable summand carried by each canonical generator.
    pub fn summands(&self) -> Vec<Indecomposable> {
        self.generator_orders().into_iter().map(Indecomposable).collect()
    }

    pub fn multiplicities(&self) -> Multiplicities {
        let mut m = Multiplicities::new();
        for s in self.summands() {
            *m.entry(s).or_default() += 1;
        }
        m
    }

    /// Distinct indecomposable types, canonical order.
    pub fn types(&self) -> Vec<Indecomposable> {
        self.multiplicities().into_keys().collect()
    }

    pub fn multiplicity(&self, ind: Indecomposable) -> usize {
        self.summands().into_iter().filter(|&s| s == ind).count()
    }

    /// Number of elements, `None` when the module is infinite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|&q| q as u128).product())
    }

    pub fn direct_sum(&self, other: &ModuleObject) -> Result<ModuleObject> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Self::new(
            self.ring,
            self.free_rank + other.free_rank,
            self.torsion.iter().chain(&other.torsion).copied(),
        )
    }

    pub fn direct_sum_all<'a>(
        ring: RingSpec,
        parts: impl IntoIterator<Item = &'a ModuleObject>,
    ) -> Result<ModuleObject> {
        parts
            .into_iter()
            .try_fold(ModuleObject::zero(ring), |acc, m| acc.direct_sum(m))
    }

    /// `self^m`.
    pub fn power(&self, m: usize) -> ModuleObject {
        let mut mult = self.multiplicities();
        for v in mult.values_mut() {
            *v *= m;
        }
        ModuleObject::from_multiplicities(self.ring, &mult).expect("powers of a valid module are valid")
    }

    /// Largest exponent of `p` among the torsion orders (0 if none).
    pub fn exponent_of(&self, p: i64) -> u32 {
        self.torsion
            .iter()
            .filter_map(|&q| prime_power(q))
            .filter(|&(r, _)| r == p)
            .map(|(_, a)| a)
            .max()
            .unwrap_or(0)
    }

    /// Primes dividing the torsion orders, ascending.
    pub fn torsion_primes(&self) -> Vec<i64> {
        let mut ps: Vec<i64> = self
            .torsion
            .iter()
            .filter_map(|&q| prime_power(q))
            .map(|(p, _)| p)
            .collect();
        ps.dedup();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Compact expression form: `[4,2]`, `rank1+[2]`, `rank2`, `0`.
    pub fn expr(&self) -> String {
        let orders = format!(
            "[{}]",
            self.torsion.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
        );
        match (self.free_rank, self.torsion.is_empty()) {
            (0, true) => "0".to_string(),
            (0, false) => orders,
            (r, true) => format!("rank{r}"),
            (r, false) => format!("rank{r}+{orders}"),
        }
    }

    /// Human-readable sum, e.g. `Z/4 + Z/2`.
    pub fn pretty(&self) -> String {
        GroupValue::from(self).to_string()
    }
}

impl fmt::Display for ModuleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ring={}; rank={}; orders=[{}]",
            self.ring,
            self.free_rank,
            self.torsion.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}

impl FromStr for ModuleObject {
    type Err = Error;

    /// Parses the serialized form `ring=Z/4; rank=0; orders=[4,2]`.
    fn from_str(s: &str) -> Result<Self> {
        let mut ring = None;
        let mut rank = None;
        let mut orders = None;
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
            match key.trim() {
                "ring" => ring = Some(value.parse::<RingSpec>()?),
                "rank" => {
                    rank = Some(
                        value
                            .trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Parse(format!("rank: {e}")))?,
                    )
                }
                "orders" => orders = Some(parse_order_list(value)?),
                other => return Err(Error::Parse(format!("unknown module field `{other}`"))),
            }
        }
        let ring = ring.ok_or_else(|| Error::Parse("missing `ring`".into()))?;
        ModuleObject::new(ring, rank.unwrap_or(0), orders.unwrap_or_default())
    }
}

/// Parses `[4,2]` (or `[]`) into a list of integers.
pub fn parse_order_list(s: &str) -> Result<Vec<i64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a bracketed list, got `{}`", s.trim())))?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("order `{t}`: {e}"))))
        .collect()
}

/// A finitely generated abelian group in primary canonical form; the value
/// type of Hom and Ext computations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupValue {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl GroupValue {
    pub fn zero() -> Self {
        GroupValue {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn new(free_rank: usize, orders: impl IntoIterator<Item = i64>) -> Self {
        let m = ModuleObject::new(RingSpec::Integers, free_rank, orders.into_iter().filter(|&q| q != 1))
            .expect("group orders are positive");
        GroupValue::from(&m)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<u128> {
        (self.free_rank == 0).then(|| self.torsion.iter().map(|&q| q as u128).product())
    }
}

impl From<&ModuleObject> for GroupValue {
    fn from(m: &ModuleObject) -> Self {
        GroupValue {
            free_rank: m.free_rank,
            torsion: m.torsion.clone(),
        }
    }
}

impl fmt::Display for GroupValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|q| format!("Z/{q}")));
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z4: RingSpec = RingSpec::Modular(4);

    #[test]
    fn canonical_order_and_splitting() {
        let m = ModuleObject::new(RingSpec::Integers, 1, [6, 4, 2]).unwrap();
        assert_eq!(m.generator_orders(), vec![0, 4, 2, 2, 3]);
        let d = ModuleObject::new(Z4, 0, [2, 4]).unwrap();
        assert_eq!(d.torsion_orders(), &[4, 2]);
    }

    #[test]
    fn validation() {
        assert!(ModuleObject::new(Z4, 0, [3]).is_err());
        assert!(ModuleObject::new(Z4, 1, []).is_err());
        assert!(ModuleObject::new(Z4, 0, [1]).is_err());
        let err = ModuleObject::new(Z4, 0, [3]).unwrap_err();
        assert!(err.to_string().contains("order 3 does not divide 4"));
    }

    #[test]
    fn serialization_round_trip() {
        let m = ModuleObject::new(Z4, 0, [4, 2]).unwrap();
        assert_eq!(m.to_string(), "ring=Z/4; rank=0; orders=[4,2]");
        assert_eq!(m.to_string().parse::<ModuleObject>().unwrap(), m);
        let z = ModuleObject::new(RingSpec::Integers, 1, [6]).unwrap();
        assert_eq!(z.to_string().parse::<ModuleObject>().unwrap(), z);
        assert_eq!(z.expr(), "rank1+[2,3]");
    }

    #[test]
    fn direct_sums() {
        let r = ModuleObject::regular(Z4);
        let k = ModuleObject::new(Z4, 0, [2]).unwrap();
        let d = r.direct_sum(&k).unwrap();
        assert_eq!(d.torsion_orders(), &[4, 2]);
        assert_eq!(d.direct_sum(&ModuleObject::zero(Z4)).unwrap(), d);
        assert!(d.direct_sum(&ModuleObject::zero(RingSpec::Integers)).is_err());
        assert_eq!(d.power(2).torsion_orders(), &[4, 4, 2, 2]);
    }

    #[test]
    fn group_display() {
        assert_eq!(GroupValue::zero().to_string(), "0");
        assert_eq!(GroupValue::new(2, [2, 4]).to_string(), "Z^2 + Z/4 + Z/2");
    }
}
