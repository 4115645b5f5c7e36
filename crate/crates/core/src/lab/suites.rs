//! Universe sweeps that exercise the implications between the conditions.

use std::collections::HashMap;

use super::{yes_no, LabResult, SuiteFailure, SuiteReport, UniverseSpec};
use crate::algebra::kernel;
use crate::class::PrecoverClassSpec;
use crate::conditions::{check_e, check_r, check_s};
use crate::error::Error;
use crate::ext::ext_from_resolution;
use crate::hom::HomSpace;
use crate::module::ModuleObject;
use crate::morphism::ModuleMorphism;
use crate::precover::{
    class_closed_under_summands, class_weakly_closed, cover, is_almost_epi, is_automorphism, is_separating,
    left_inverse, mono_precovers_are_iso, verify_precover, SolutionCoset,
};
use crate::resolution::{build_resolution_by, build_resolution_with, PrecoverChoice};
use crate::schanuel::equivalent;
use crate::verdict::{ConditionVerdict, Status, Witness};

/// Public suite ids with a one-line description each.
pub const SUITES: &[(&str, &str)] = &[
    ("prop-2.1", "a resolution of length n forces Ext^(n+1) to vanish"),
    (
        "lemma-2.5",
        "every solution of g∘φ = φ: automorphism iff left invertible",
    ),
    (
        "lemma-2.8",
        "cover, evaluation and padded precovers agree on almost-epi",
    ),
    (
        "thm-2.10",
        "E iff R when the class is summand-closed and covers are almost epi",
    ),
    ("thm-3.4", "S implies R exactly when the class is weakly closed"),
    (
        "lemma-3.6",
        "mono precovers iso implies separating; separating detects monos",
    ),
    ("thm-3.8", "R implies S exactly when mono precovers are isomorphisms"),
    (
        "schanuel-well-defined",
        "kernels of different precovers are F-equivalent",
    ),
    (
        "ext-independence",
        "relative Ext does not depend on the chosen resolution",
    ),
    (
        "dimension-shifting",
        "Ext^(n+1)(M, A) = Ext^n(K, A) for K the kernel of a cover",
    ),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Conditions are checked for `n` in `0..=max_n`.
    pub max_n: usize,
    /// Largest `|End(M)|` brute-forced by the almost-epi suite.
    pub brute_force_limit: u128,
    /// Largest `|M|` whose solution cosets are enumerated element by element.
    pub coset_order_limit: u128,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 2,
            brute_force_limit: 1 << 12,
            coset_order_limit: 64,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Cond {
    E,
    R,
    S,
}

/// Memoized condition verdicts. Every time both `E` and `R` are known for an
/// instance the implication `R ⟹ E` is asserted.
struct Verdicts<'a> {
    class: &'a PrecoverClassSpec,
    cache: HashMap<(Cond, ModuleObject, usize), ConditionVerdict>,
    violations: Vec<SuiteFailure>,
}

impl<'a> Verdicts<'a> {
    fn new(class: &'a PrecoverClassSpec) -> Self {
        Verdicts {
            class,
            cache: HashMap::new(),
            violations: Vec::new(),
        }
    }

    fn get(&mut self, c: Cond, m: &ModuleObject, n: usize) -> LabResult<ConditionVerdict> {
        let key = (c, m.clone(), n);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let v = match c {
            Cond::E => check_e(self.class, m, n)?,
            Cond::R => check_r(self.class, m, n)?,
            Cond::S => check_s(self.class, m, n)?,
        };
        self.cache.insert(key, v.clone());
        if c != Cond::S {
            let e = self.cache.get(&(Cond::E, m.clone(), n)).map(|v| v.status);
            let r = self.cache.get(&(Cond::R, m.clone(), n));
            if let (Some(Status::No), Some(r)) = (e, r) {
                if r.is_yes() {
                    self.violations.push(SuiteFailure {
                        instance: format!("R ⟹ E at M={}, n={n}", m.expr()),
                        expected: "E: Yes".into(),
                        got: "E: No".into(),
                        witness: r.witness.clone(),
                    });
                }
            }
        }
        Ok(v)
    }

    fn e(&mut self, m: &ModuleObject, n: usize) -> LabResult<ConditionVerdict> {
        self.get(Cond::E, m, n)
    }

    fn r(&mut self, m: &ModuleObject, n: usize) -> LabResult<ConditionVerdict> {
        self.get(Cond::R, m, n)
    }

    fn s(&mut self, m: &ModuleObject, n: usize) -> LabResult<ConditionVerdict> {
        self.get(Cond::S, m, n)
    }

    fn drain_into(self, report: &mut SuiteReport) {
        for v in self.violations {
            report.fail(v.instance, v.expected, v.got, v.witness);
        }
    }
}

fn instance(m: &ModuleObject, n: usize) -> String {
    format!("M={}, n={n}", m.expr())
}

pub fn run_suite(id: &str, class: &PrecoverClassSpec, u: &UniverseSpec) -> LabResult<SuiteReport> {
    run_suite_with(id, class, u, &SuiteConfig::default())
}

pub fn run_suite_with(
    id: &str,
    class: &PrecoverClassSpec,
    u: &UniverseSpec,
    cfg: &SuiteConfig,
) -> LabResult<SuiteReport> {
    if !SUITES.iter().any(|(s, _)| *s == id) {
        return Err(Error::UnknownSuite(id.to_string()));
    }
    if class.ring() != u.ring {
        return Err(Error::RingMismatch(class.ring(), u.ring));
    }
    let modules = u.enumerate();
    let mut report = SuiteReport::new(id, Some(class.to_string()));
    report.note(
        "universe",
        format!(
            "{} modules over {}, total multiplicity <= {}",
            modules.len(),
            u.ring,
            u.max_total_multiplicity
        ),
    );
    let mut verdicts = Verdicts::new(class);
    match id {
        "prop-2.1" => prop_2_1(&mut report, &mut verdicts, &modules, cfg)?,
        "lemma-2.5" => lemma_2_5(&mut report, class, &modules, cfg)?,
        "lemma-2.8" => lemma_2_8(&mut report, class, &modules)?,
        "thm-2.10" => thm_2_10(&mut report, &mut verdicts, class, &modules, cfg)?,
        "thm-3.4" => thm_3_4(&mut report, &mut verdicts, class, &modules, cfg)?,
        "lemma-3.6" => lemma_3_6(&mut report, class, &modules)?,
        "thm-3.8" => thm_3_8(&mut report, &mut verdicts, class, &modules, cfg)?,
        "schanuel-well-defined" => schanuel_well_defined(&mut report, class, &modules)?,
        "ext-independence" => ext_independence(&mut report, class, &modules, cfg)?,
        "dimension-shifting" => dimension_shifting(&mut report, class, &modules, cfg)?,
        _ => unreachable!("suite ids checked above"),
    }
    verdicts.drain_into(&mut report);
    Ok(report.finish())
}

fn prop_2_1(report: &mut SuiteReport, v: &mut Verdicts, modules: &[ModuleObject], cfg: &SuiteConfig) -> LabResult<()> {
    let mut resolved = 0;
    for m in modules {
        for n in 0..=cfg.max_n {
            let r = v.r(m, n)?;
            report.passed();
            if !r.is_yes() {
                continue;
            }
            resolved += 1;
            let e = v.e(m, n)?;
            if !e.is_yes() {
                report.fail(instance(m, n), "E: Yes", format!("E: {}", e.status), e.witness);
            }
        }
    }
    report.note("instances with R = Yes", resolved);
    Ok(())
}

/// Morphisms whose solution cosets are enumerated: the cover, the evaluation
/// precover, and `0 -> M` when `End(M)` is small.
fn lemma_2_5(
    report: &mut SuiteReport,
    class: &PrecoverClassSpec,
    modules: &[ModuleObject],
    cfg: &SuiteConfig,
) -> LabResult<()> {
    let mut solutions = 0u128;
    let mut skipped = 0;
    for m in modules {
        if m.order().map_or(true, |o| o > cfg.coset_order_limit) {
            skipped += 1;
            continue;
        }
        let end = HomSpace::new(m, m)?;
        let small = end.size().is_some_and(|s| s <= cfg.brute_force_limit);
        let mut maps = vec![cover(class, m)?, crate::precover::evaluation_precover(class, m)?];
        if small {
            maps.push(ModuleMorphism::zero(ModuleObject::zero(m.ring()), m.clone()));
        }
        for phi in maps {
            let Some(coset) = SolutionCoset::new(&phi) else {
                report.note(format!("M={}", m.expr()), "infinite solution coset, skipped");
                continue;
            };
            let mut count = 0u128;
            for g in coset.elements() {
                count += 1;
                if g.compose(&phi)? != phi {
                    report.fail(
                        format!("M={}", m.expr()),
                        "g∘φ = φ",
                        "g∘φ ≠ φ",
                        Some(Witness::Endomorphism { phi: phi.clone(), g }),
                    );
                    continue;
                }
                let auto = is_automorphism(&g);
                let iso = g.is_iso();
                let inverse = left_inverse(&g);
                let inverse_ok = inverse
                    .as_ref()
                    .is_some_and(|h| h.compose(&g).ok() == Some(ModuleMorphism::identity(m)));
                if auto != iso || auto != inverse.is_some() || (inverse.is_some() && !inverse_ok) {
                    report.fail(
                        format!("M={}", m.expr()),
                        "automorphism ⟺ left inverse",
                        format!(
                            "automorphism: {}, iso: {}, left inverse: {}",
                            yes_no(auto),
                            yes_no(iso),
                            yes_no(inverse_ok)
                        ),
                        Some(Witness::Endomorphism { phi: phi.clone(), g }),
                    );
                }
            }
            solutions += count;
            if small {
                let brute = end
                    .elements()
                    .filter(|g| g.compose(&phi).ok().as_ref() == Some(&phi))
                    .count() as u128;
                if brute != count {
                    report.fail(
                        format!("M={}, φ from {}", m.expr(), phi.domain().expr()),
                        format!("{brute} solutions by brute force"),
                        format!("{count} in the coset"),
                        Some(Witness::Morphism { morphism: phi.clone() }),
                    );
                }
            }
            report.passed();
        }
    }
    report.note("solutions g enumerated", solutions);
    report.note(
        format!("modules larger than {}", cfg.coset_order_limit),
        format!("{skipped} skipped"),
    );
    Ok(())
}

fn lemma_2_8(report: &mut SuiteReport, class: &PrecoverClassSpec, modules: &[ModuleObject]) -> LabResult<()> {
    let mut almost_epi = 0;
    for m in modules {
        let mut statuses = Vec::new();
        for choice in [
            PrecoverChoice::Cover,
            PrecoverChoice::Evaluation,
            PrecoverChoice::Padded,
        ] {
            let phi = choice.precover(class, m)?;
            if verify_precover(class, &phi)?.is_none() {
                report.fail(
                    format!("M={}", m.expr()),
                    "a verified precover",
                    "verification failed",
                    Some(Witness::Morphism { morphism: phi }),
                );
                continue;
            }
            statuses.push((choice, is_almost_epi(&phi).status));
        }
        report.passed();
        if statuses.windows(2).any(|w| w[0].1 != w[1].1) {
            let got = statuses
                .iter()
                .map(|(c, s)| format!("{c:?}: {s}"))
                .collect::<Vec<_>>()
                .join(", ");
            report.fail(
                format!("M={}", m.expr()),
                "equal almost-epi verdicts",
                got,
                Some(Witness::Module { module: m.clone() }),
            );
        } else if statuses.first().is_some_and(|s| s.1 == Status::Yes) {
            almost_epi += 1;
        }
    }
    report.note("modules with almost epi precovers", almost_epi);
    Ok(())
}

fn thm_2_10(
    report: &mut SuiteReport,
    v: &mut Verdicts,
    class: &PrecoverClassSpec,
    modules: &[ModuleObject],
    cfg: &SuiteConfig,
) -> LabResult<()> {
    let summands = class_closed_under_summands(class);
    report.note("closed under summands", summands.status);
    let mut covers_almost_epi = Status::Yes;
    for m in modules {
        let s = is_almost_epi(&cover(class, m)?).status;
        if s != Status::Yes {
            covers_almost_epi = s;
            report.note(format!("cover of {} almost epi", m.expr()), s);
            break;
        }
    }
    report.note("covers almost epi", covers_almost_epi);
    if summands.is_yes() && covers_almost_epi == Status::Yes {
        for m in modules {
            for n in 0..=cfg.max_n {
                let e = v.e(m, n)?;
                let r = v.r(m, n)?;
                report.passed();
                if e.status != r.status || e.status == Status::Unknown {
                    report.fail(
                        instance(m, n),
                        format!("R = E = {}", e.status),
                        format!("R = {}", r.status),
                        r.witness.or(e.witness),
                    );
                }
            }
        }
        return Ok(());
    }
    report.note("hypotheses", "fail, E ⟹ R not asserted");
    'search: for m in modules {
        for n in 0..=cfg.max_n.min(1) {
            if v.e(m, n)?.is_yes() && v.r(m, n)?.is_no() {
                report.note("E yes, R no at", instance(m, n));
                report.witnesses.push(Witness::Module { module: m.clone() });
                break 'search;
            }
        }
    }
    Ok(())
}

fn thm_3_4(
    report: &mut SuiteReport,
    v: &mut Verdicts,
    class: &PrecoverClassSpec,
    modules: &[ModuleObject],
    cfg: &SuiteConfig,
) -> LabResult<()> {
    let weak = class_weakly_closed(class);
    report.note("weakly closed", weak.status);
    if weak.is_yes() {
        let mut s_yes = 0;
        for m in modules {
            for n in 0..=cfg.max_n {
                let s = v.s(m, n)?;
                report.passed();
                if !s.is_yes() {
                    continue;
                }
                s_yes += 1;
                let r = v.r(m, n)?;
                if !r.is_yes() {
                    report.fail(instance(m, n), "R: Yes", format!("R: {}", r.status), s.witness);
                }
            }
        }
        report.note("instances with S = Yes", s_yes);
        return Ok(());
    }
    let Some(Witness::Summand { summand, .. }) = weak.witness.clone() else {
        report.fail("weak closure witness", "a summand witness", "none", None);
        return Ok(());
    };
    let s = v.s(&summand, 0)?;
    let r = v.r(&summand, 0)?;
    let label = format!("S, R at {}", instance(&summand, 0));
    report.check(label, "Yes, No", format!("{}, {}", s.status, r.status), weak.witness);
    Ok(())
}

fn lemma_3_6(report: &mut SuiteReport, class: &PrecoverClassSpec, modules: &[ModuleObject]) -> LabResult<()> {
    let mono = mono_precovers_are_iso(class, modules)?;
    let sep = is_separating(class, modules)?;
    report.note("mono precovers are iso", mono.status);
    report.note("separating", sep.status);
    report.passed();
    if mono.is_yes() && !sep.is_yes() {
        report.fail(
            "part (a)",
            "separating: Yes",
            format!("separating: {}", sep.status),
            sep.witness.clone(),
        );
    }
    if !sep.is_yes() {
        report.note("part (b)", "not separating, skipped");
        return Ok(());
    }
    // part (b) on every morphism between modules of order at most 16
    let small: Vec<&ModuleObject> = modules.iter().filter(|m| m.order().is_some_and(|o| o <= 16)).collect();
    let (mut tested, mut detected) = (0usize, 0usize);
    for a in &small {
        for b in &small {
            let tests: Vec<ModuleObject> = class
                .test_indecomposables([*a, *b])
                .into_iter()
                .map(|t| ModuleObject::from_indecomposables(class.ring(), &[t]))
                .collect::<Result<_, _>>()?;
            let spaces: Vec<(HomSpace, HomSpace)> = tests
                .iter()
                .map(|t| Ok((HomSpace::new(t, a)?, HomSpace::new(t, b)?)))
                .collect::<LabResult<_>>()?;
            let hom = HomSpace::new(a, b)?;
            for d in hom.elements() {
                tested += 1;
                let hom_mono = spaces.iter().all(|(src, dst)| src.postcompose(&d, dst).is_injective());
                if hom_mono {
                    detected += 1;
                    if !d.is_mono() {
                        report.fail(
                            "part (b)",
                            "∂ mono",
                            "∂ not mono",
                            Some(Witness::Morphism { morphism: d }),
                        );
                    }
                }
            }
        }
    }
    report.instances_checked += tested;
    report.note(
        "part (b) morphisms",
        format!("{tested} tested, {detected} with Hom(I, ∂) mono"),
    );
    Ok(())
}

fn thm_3_8(
    report: &mut SuiteReport,
    v: &mut Verdicts,
    class: &PrecoverClassSpec,
    modules: &[ModuleObject],
    cfg: &SuiteConfig,
) -> LabResult<()> {
    let mono = mono_precovers_are_iso(class, modules)?;
    report.note("mono precovers are iso", mono.status);
    if mono.is_yes() {
        let mut r_yes = 0;
        for m in modules {
            for n in 0..=cfg.max_n {
                let r = v.r(m, n)?;
                report.passed();
                if !r.is_yes() {
                    continue;
                }
                r_yes += 1;
                let s = v.s(m, n)?;
                if !s.is_yes() {
                    report.fail(instance(m, n), "S: Yes", format!("S: {}", s.status), r.witness);
                }
            }
        }
        report.note("instances with R = Yes", r_yes);
        return Ok(());
    }
    let Some(Witness::Morphism { morphism }) = mono.witness.clone() else {
        report.fail("mono precover witness", "a morphism", "none", None);
        return Ok(());
    };
    let m = morphism.codomain().clone();
    let r = v.r(&m, 0)?;
    let s = v.s(&m, 0)?;
    report.check(
        format!("R, S at {}", instance(&m, 0)),
        "Yes, No",
        format!("{}, {}", r.status, s.status),
        mono.witness,
    );
    Ok(())
}

fn schanuel_well_defined(
    report: &mut SuiteReport,
    class: &PrecoverClassSpec,
    modules: &[ModuleObject],
) -> LabResult<()> {
    for m in modules {
        let kernels: Vec<ModuleObject> = [
            PrecoverChoice::Cover,
            PrecoverChoice::Evaluation,
            PrecoverChoice::Padded,
        ]
        .into_iter()
        .map(|c| Ok(kernel(&c.precover(class, m)?).0))
        .collect::<LabResult<_>>()?;
        for k in &kernels[1..] {
            report.passed();
            match equivalent(class, &kernels[0], k)? {
                Some(w) if w.verify(class) => {}
                Some(w) => report.fail(
                    format!("M={}", m.expr()),
                    "a verified equivalence",
                    "witness rejected",
                    Some(Witness::Equivalence { equivalence: w }),
                ),
                None => report.fail(
                    format!("M={}", m.expr()),
                    format!("{} ≡ {}", kernels[0].expr(), k.expr()),
                    "not equivalent",
                    Some(Witness::Module { module: k.clone() }),
                ),
            }
        }
    }
    Ok(())
}

/// Padded at degree 0, covers above. Padding or evaluating at every degree
/// grows the terms geometrically for powers classes.
fn alternative(degree: usize) -> PrecoverChoice {
    if degree == 0 {
        PrecoverChoice::Padded
    } else {
        PrecoverChoice::Cover
    }
}

fn ext_independence(
    report: &mut SuiteReport,
    class: &PrecoverClassSpec,
    modules: &[ModuleObject],
    cfg: &SuiteConfig,
) -> LabResult<()> {
    let length = cfg.max_n + 1;
    for m in modules {
        let a = build_resolution_with(class, m, length, PrecoverChoice::Cover)?;
        let b = build_resolution_by(class, m, length, alternative)?;
        if let Err(e) = b.verify() {
            report.fail(
                format!("M={}", m.expr()),
                "verified resolution",
                e,
                Some(Witness::Resolution {
                    resolution: Box::new(b),
                }),
            );
            continue;
        }
        for coeff in modules {
            for n in 0..=cfg.max_n {
                report.passed();
                let (x, y) = (ext_from_resolution(&a, coeff, n)?, ext_from_resolution(&b, coeff, n)?);
                if x != y {
                    report.fail(
                        format!("Ext^{n}({}, {})", m.expr(), coeff.expr()),
                        x.to_string(),
                        y.to_string(),
                        Some(Witness::Ext {
                            coefficient: coeff.clone(),
                            degree: n,
                            value: y,
                        }),
                    );
                }
            }
        }
    }
    Ok(())
}

fn dimension_shifting(
    report: &mut SuiteReport,
    class: &PrecoverClassSpec,
    modules: &[ModuleObject],
    cfg: &SuiteConfig,
) -> LabResult<()> {
    for m in modules {
        let res_m = build_resolution_with(class, m, cfg.max_n + 2, PrecoverChoice::Cover)?;
        let k = kernel(&cover(class, m)?).0;
        let res_k = build_resolution_by(class, &k, cfg.max_n + 1, alternative)?;
        for coeff in modules {
            for n in 1..=cfg.max_n {
                report.passed();
                let (x, y) = (
                    ext_from_resolution(&res_m, coeff, n + 1)?,
                    ext_from_resolution(&res_k, coeff, n)?,
                );
                if x != y {
                    report.fail(
                        format!(
                            "Ext^{}({}, {}) vs Ext^{n}({}, -)",
                            n + 1,
                            m.expr(),
                            coeff.expr(),
                            k.expr()
                        ),
                        x.to_string(),
                        y.to_string(),
                        Some(Witness::Ext {
                            coefficient: coeff.clone(),
                            degree: n,
                            value: y,
                        }),
                    );
                }
            }
        }
    }
    Ok(())
}
