//! Finite universes of modules and named verification suites.

mod reproduce;
mod suites;

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::Result;
use crate::module::{Indecomposable, ModuleObject, Multiplicities};
use crate::ring::RingSpec;
use crate::verdict::Witness;

pub use reproduce::{reproduce, EXAMPLES};
pub use suites::{run_suite, run_suite_with, SuiteConfig, SUITES};

/// All modules with total multiplicity at most `max_total_multiplicity` over
/// the given indecomposables; free summands are capped at `max_free_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniverseSpec {
    pub ring: RingSpec,
    pub max_total_multiplicity: usize,
    pub support: Vec<Indecomposable>,
    pub max_free_rank: usize,
}

impl UniverseSpec {
    /// Default support: every prime-power divisor of the modulus; over `Z`,
    /// `Z` (rank at most 1) with `Z/2`, `Z/4` and `Z/3`.
    pub fn new(ring: RingSpec, max_total_multiplicity: usize) -> Self {
        let support = match ring.modulus() {
            Some(_) => ring
                .prime_power_divisors()
                .into_iter()
                .map(|q| Indecomposable::cyclic(q).expect("prime power"))
                .collect(),
            None => [0, 2, 4, 3]
                .into_iter()
                .map(|q| {
                    if q == 0 {
                        Indecomposable::FREE
                    } else {
                        Indecomposable::cyclic(q).expect("prime power")
                    }
                })
                .collect(),
        };
        UniverseSpec {
            ring,
            max_total_multiplicity,
            support,
            max_free_rank: 1,
        }
    }

    pub fn with_support(mut self, support: Vec<Indecomposable>) -> Self {
        self.support = support;
        self
    }

    /// Graded by total multiplicity; within a degree, multiplicity vectors in
    /// descending lexicographic order (so `k` before `R` before `k^2`).
    pub fn enumerate(&self) -> Vec<ModuleObject> {
        let mut out = Vec::new();
        for total in 0..=self.max_total_multiplicity {
            let mut vec = vec![0usize; self.support.len()];
            self.fill(0, total, &mut vec, &mut out);
        }
        out
    }

    fn fill(&self, pos: usize, left: usize, vec: &mut Vec<usize>, out: &mut Vec<ModuleObject>) {
        if pos == self.support.len() {
            if left == 0 {
                let mult: Multiplicities = self
                    .support
                    .iter()
                    .copied()
                    .zip(vec.iter().copied())
                    .filter(|(_, c)| *c > 0)
                    .collect();
                out.push(ModuleObject::from_multiplicities(self.ring, &mult).expect("support is valid over the ring"));
            }
            return;
        }
        let cap = if self.support[pos].is_free() {
            left.min(self.max_free_rank)
        } else {
            left
        };
        for c in (0..=cap).rev() {
            vec[pos] = c;
            self.fill(pos + 1, left - c, vec, out);
        }
        vec[pos] = 0;
    }
}

pub fn enumerate_modules(u: &UniverseSpec) -> Vec<ModuleObject> {
    u.enumerate()
}

/// One recorded check of a suite or reproduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLine {
    pub label: String,
    pub value: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteFailure {
    pub instance: String,
    pub expected: String,
    pub got: String,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_id: String,
    pub class: Option<String>,
    pub instances_checked: usize,
    pub checks: Vec<CheckLine>,
    pub failures: Vec<SuiteFailure>,
    pub witnesses: Vec<Witness>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite_id: &str, class: Option<String>) -> Self {
        SuiteReport {
            suite_id: suite_id.to_string(),
            class,
            instances_checked: 0,
            checks: Vec::new(),
            failures: Vec::new(),
            witnesses: Vec::new(),
            pass: true,
        }
    }

    /// Records an informational line.
    pub fn note(&mut self, label: impl Into<String>, value: impl fmt::Display) {
        self.checks.push(CheckLine {
            label: label.into(),
            value: value.to_string(),
            ok: true,
        });
    }

    /// Records a named check; a failed check also becomes a failure entry.
    pub fn check(
        &mut self,
        label: impl Into<String>,
        expected: impl fmt::Display,
        got: impl fmt::Display,
        witness: Option<Witness>,
    ) {
        let label = label.into();
        let (expected, got) = (expected.to_string(), got.to_string());
        let ok = expected == got;
        self.instances_checked += 1;
        self.checks.push(CheckLine {
            label: label.clone(),
            value: got.clone(),
            ok,
        });
        if ok {
            if let Some(w) = witness {
                self.witnesses.push(w);
            }
        } else {
            self.fail(label, expected, got, witness);
        }
    }

    /// Counts an instance that passed without adding a line.
    pub fn passed(&mut self) {
        self.instances_checked += 1;
    }

    pub fn fail(
        &mut self,
        instance: impl Into<String>,
        expected: impl Into<String>,
        got: impl Into<String>,
        witness: Option<Witness>,
    ) {
        self.failures.push(SuiteFailure {
            instance: instance.into(),
            expected: expected.into(),
            got: got.into(),
            witness,
        });
        self.pass = false;
    }

    pub fn finish(mut self) -> Self {
        self.pass = self.failures.is_empty();
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite: {}", self.suite_id)?;
        if let Some(c) = &self.class {
            writeln!(f, "class: {c}")?;
        }
        let width = self.checks.iter().map(|c| c.label.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let mark = if c.ok { "  " } else { "! " };
            writeln!(f, "{mark}{:<width$}  {}", c.label, c.value)?;
        }
        for x in &self.failures {
            writeln!(f, "FAIL {}: expected {}, got {}", x.instance, x.expected, x.got)?;
        }
        write!(
            f,
            "instances: {}  failures: {}  status: {}",
            self.instances_checked,
            self.failures.len(),
            if self.pass { "pass" } else { "fail" }
        )
    }
}

pub(crate) fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub(crate) type LabResult<T> = Result<T>;

#[cfg(test)]
mod tests {
    use super::*;

    fn exprs(ring: RingSpec, bound: usize) -> Vec<String> {
        UniverseSpec::new(ring, bound)
            .enumerate()
            .iter()
            .map(ModuleObject::expr)
            .collect()
    }

    #[test]
    fn enumeration_order() {
        assert_eq!(exprs(RingSpec::Modular(4), 1), ["0", "[2]", "[4]"]);
        assert_eq!(
            exprs(RingSpec::Modular(4), 2),
            ["0", "[2]", "[4]", "[2,2]", "[4,2]", "[4,4]"]
        );
        assert_eq!(exprs(RingSpec::Modular(6), 1), ["0", "[2]", "[3]"]);
        assert_eq!(UniverseSpec::new(RingSpec::Modular(4), 3).enumerate().len(), 10);
        let z = exprs(RingSpec::Integers, 2);
        assert!(z.contains(&"rank1+[2]".to_string()));
        assert!(!z.contains(&"rank2".to_string()));
    }

    #[test]
    fn suite_examples() {
        use crate::class::parse_class;
        let z4 = RingSpec::Modular(4);
        let add_k = parse_class(z4, "add([2])").unwrap();
        let r = run_suite("prop-2.1", &add_k, &UniverseSpec::new(z4, 3)).unwrap();
        assert!(r.pass);
        assert_eq!(r.instances_checked, 30);

        let r = run_suite("thm-3.8", &add_k, &UniverseSpec::new(z4, 3)).unwrap();
        assert!(r.pass);
        assert!(r
            .checks
            .iter()
            .any(|c| c.label == "R, S at M=[4], n=0" && c.value == "Yes, No"));

        let bad = parse_class(z4, "constrained support=[4,2] allowed[2]={0,2+}").unwrap();
        let r = run_suite("thm-3.4", &bad, &UniverseSpec::new(z4, 4)).unwrap();
        assert!(r.pass);
        assert!(r
            .checks
            .iter()
            .any(|c| c.label == "S, R at M=[2], n=0" && c.value == "Yes, No"));

        assert!(matches!(
            run_suite("thm-9.9", &add_k, &UniverseSpec::new(z4, 1)),
            Err(crate::Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn reproductions_pass() {
        for (id, _) in EXAMPLES {
            let r = reproduce(id).unwrap();
            assert!(r.pass, "{r}");
        }
        assert!(matches!(reproduce("example-9"), Err(crate::Error::UnknownExample(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = reproduce("prop-2.9").unwrap().to_string();
        let b = reproduce("prop-2.9").unwrap().to_string();
        assert_eq!(a, b);
    }
}
