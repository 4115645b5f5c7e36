use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The base ring: `Z/nZ` for `n >= 2`, or the integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RingSpec {
    Modular(i64),
    Integers,
}

impl RingSpec {
    pub fn modular(n: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("modulus {n} must be at least 2")));
        }
        Ok(RingSpec::Modular(n))
    }

    pub fn modulus(&self) -> Option<i64> {
        match self {
            RingSpec::Modular(n) => Some(*n),
            RingSpec::Integers => None,
        }
    }

    pub fn is_modular(&self) -> bool {
        matches!(self, RingSpec::Modular(_))
    }

    /// Prime-power divisors `p^a > 1` of the modulus, ascending. Empty over Z.
    pub fn prime_power_divisors(&self) -> Vec<i64> {
        let Some(n) = self.modulus() else {
            return Vec::new();
        };
        let mut out: Vec<i64> = Vec::new();
        for (p, e) in factorize(n) {
            let mut q = 1;
            for _ in 0..e {
                q *= p;
                out.push(q);
            }
        }
        out.sort_unstable();
        out
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Modular(n) => write!(f, "Z/{n}"),
            RingSpec::Integers => write!(f, "Z"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(RingSpec::Integers);
        }
        let n = s
            .strip_prefix("Z/")
            .and_then(|rest| rest.trim().parse::<i64>().ok())
            .ok_or_else(|| Error::InvalidRing(format!("cannot parse ring `{s}` (expected `Z` or `Z/n`)")))?;
        RingSpec::modular(n)
    }
}

/// Trial-division factorization of `n >= 1` into `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    assert!(n >= 1, "factorize expects a positive integer, got {n}");
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, a)` when `q = p^a` with `a >= 1`.
pub fn prime_power(q: i64) -> Option<(i64, u32)> {
    if q < 2 {
        return None;
    }
    match factorize(q).as_slice() {
        [(p, a)] => Some((*p, *a)),
        _ => None,
    }
}

/// Splits `n >= 2` into its prime-power factors, e.g. `12 -> [4, 3]`.
pub fn primary_parts(n: i64) -> Vec<i64> {
    factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect()
}

pub fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// Inverse of `a` modulo `m` (`gcd(a, m) = 1`, `m >= 1`).
pub fn inverse_mod(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = num_integer::Integer::extended_gcd(&a.rem_euclid(m), &m);
    assert_eq!(e.gcd, 1, "{a} is not invertible modulo {m}");
    e.x.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rings() {
        assert_eq!("Z/4".parse::<RingSpec>().unwrap(), RingSpec::Modular(4));
        assert_eq!("Z".parse::<RingSpec>().unwrap(), RingSpec::Integers);
        assert!("Z/1".parse::<RingSpec>().is_err());
        assert!("Q".parse::<RingSpec>().is_err());
    }

    #[test]
    fn divisors() {
        assert_eq!(RingSpec::Modular(4).prime_power_divisors(), vec![2, 4]);
        assert_eq!(RingSpec::Modular(6).prime_power_divisors(), vec![2, 3]);
        assert_eq!(RingSpec::Modular(12).prime_power_divisors(), vec![2, 3, 4]);
        assert!(RingSpec::Integers.prime_power_divisors().is_empty());
    }

    #[test]
    fn arithmetic_helpers() {
        assert_eq!(primary_parts(12), vec![4, 3]);
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(6), None);
        assert_eq!(inverse_mod(3, 4), 3);
        assert_eq!(inverse_mod(2, 3), 2);
    }
}
