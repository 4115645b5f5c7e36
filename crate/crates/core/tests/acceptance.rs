//! Acceptance run: one PASS/FAIL line per criterion, each with its time budget.

use std::time::{Duration, Instant};

use relhom_core::class::parse_class;
use relhom_core::conditions::{check_e, check_r, check_s};
use relhom_core::ext::relative_ext;
use relhom_core::lab::{reproduce, run_suite, UniverseSpec, SUITES};
use relhom_core::precover::{build_precover, class_weakly_closed, is_almost_epi, SolutionCoset};
use relhom_core::{GroupValue, ModuleMorphism, ModuleObject, PrecoverClassSpec, RingSpec, Status, Witness};

const Z4: RingSpec = RingSpec::Modular(4);

fn z4(orders: &[i64]) -> ModuleObject {
    ModuleObject::new(Z4, 0, orders.iter().copied()).unwrap()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn criterion_1() -> Outcome {
    let report = reproduce("prop-2.9").map_err(|e| e.to_string())?;
    ensure(report.pass, format!("report failed:\n{report}"))?;
    let flags = report
        .checks
        .iter()
        .find(|c| c.label == "φ_1")
        .map(|c| c.value.clone())
        .unwrap_or_default();
    ensure(
        flags == "mono: yes, epi: no, almost-epi: yes",
        format!("φ_1 flags {flags}"),
    )?;
    let blocks = report.checks.iter().filter(|c| c.label.contains("g22^2 = id")).count();
    ensure(blocks == 10, format!("{blocks} block checks, expected 10 (i + j <= 3)"))?;
    Ok(format!("{} checks", report.instances_checked))
}

fn criterion_2() -> Outcome {
    let class = PrecoverClassSpec::add_closure(z4(&[2]));
    let r = z4(&[4]);
    let e = check_e(&class, &r, 0).unwrap();
    ensure(e.is_yes(), "E(R,0) not Yes")?;
    let rv = check_r(&class, &r, 0).unwrap();
    match &rv.witness {
        Some(Witness::Resolution { resolution }) if rv.is_yes() => {
            ensure(resolution.terms == vec![z4(&[2])], "resolution terms are not [k]")?;
            ensure(resolution.differentials[0].matrix() == [vec![2]], "∂_0 is not [[2]]")?;
            ensure(resolution.verify().is_ok(), "resolution does not re-verify")?;
        }
        _ => return Err(format!("R(R,0) = {}", rv.status)),
    }
    ensure(check_s(&class, &r, 0).unwrap().is_no(), "S(R,0) not No")?;
    ensure(check_s(&class, &r, 1).unwrap().is_yes(), "S(R,1) not Yes")?;
    Ok("E yes, R yes via 0 -> k -> R -> 0, S0 no, S1 yes".into())
}

fn criterion_3() -> Outcome {
    let class = PrecoverClassSpec::powers(z4(&[4, 2]));
    let m = z4(&[2]);
    ensure(check_e(&class, &m, 0).unwrap().is_yes(), "E not Yes")?;
    let r = check_r(&class, &m, 0).unwrap();
    ensure(r.is_no(), format!("R = {} ({})", r.status, r.reason))?;
    ensure(
        r.reason.contains("exhaustive"),
        format!("R not decided by the search: {}", r.reason),
    )?;
    Ok("E yes, R no by exhaustive search".into())
}

fn criterion_4() -> Outcome {
    let class = parse_class(Z4, "constrained support=[4,2] allowed[2]={0,2+}").unwrap();
    let w = class_weakly_closed(&class);
    ensure(w.is_no(), "class reported weakly closed")?;
    let m = z4(&[2]);
    ensure(check_s(&class, &m, 0).unwrap().is_yes(), "S not Yes")?;
    ensure(check_r(&class, &m, 0).unwrap().is_no(), "R not No")?;
    Ok("not weakly closed, S yes, R no".into())
}

fn criterion_5() -> Outcome {
    let class = PrecoverClassSpec::torsion_over_z();
    let z = ModuleObject::regular(RingSpec::Integers);
    let p = build_precover(&class, &z).unwrap().precover;
    ensure(
        p.domain().is_zero() && p.is_mono() && !p.is_iso(),
        "precover is not 0 -> Z",
    )?;
    let r = check_r(&class, &z, 0).unwrap();
    match &r.witness {
        Some(Witness::Resolution { resolution }) if r.is_yes() => {
            ensure(
                resolution.terms.iter().all(ModuleObject::is_zero),
                "resolution has nonzero terms",
            )?;
        }
        _ => return Err(format!("R(Z,0) = {}", r.status)),
    }
    ensure(check_s(&class, &z, 0).unwrap().is_no(), "S(Z,0) not No")?;
    Ok("0 -> Z mono non-iso, R yes, S no".into())
}

/// Classical `Ext^n_{Z/4}` for cyclic modules: `Z/4` is free; `Z/2` has the
/// periodic resolution `... -> R -2-> R -2-> R -> Z/2`, whose dual complex is
/// `A -2-> A -2-> ...`.
fn classical_ext(d: i64, e: i64, n: usize) -> Vec<i64> {
    match (d, n) {
        (4, 0) => vec![e],
        (4, _) => vec![],
        (2, 0) => vec![2],
        (2, _) if e == 2 => vec![2],
        (2, _) => vec![],
        _ => unreachable!(),
    }
}

fn criterion_6() -> Outcome {
    let class = PrecoverClassSpec::add_closure(z4(&[4]));
    let modules: Vec<ModuleObject> = UniverseSpec::new(Z4, 3).enumerate();
    let mut pairs = 0;
    for m in &modules {
        for a in &modules {
            for n in 0..=2 {
                let mut expected = Vec::new();
                for &d in m.torsion_orders() {
                    for &e in a.torsion_orders() {
                        expected.extend(classical_ext(d, e, n));
                    }
                }
                let expected = GroupValue::new(0, expected);
                let got = relative_ext(&class, m, a, n).unwrap();
                ensure(
                    got == expected,
                    format!("Ext^{n}({}, {}) = {got}, expected {expected}", m.expr(), a.expr()),
                )?;
                pairs += 1;
            }
        }
    }
    ensure(
        relative_ext(&class, &z4(&[2]), &z4(&[2]), 1).unwrap() == GroupValue::new(0, [2]),
        "Ext^1(k,k)",
    )?;
    ensure(
        relative_ext(&class, &z4(&[2]), &z4(&[4]), 1).unwrap().is_zero(),
        "Ext^1(k,R)",
    )?;
    Ok(format!("{pairs} (M, A, n) triples agree"))
}

fn criterion_7() -> Outcome {
    let u = UniverseSpec::new(Z4, 4);
    let classes = [
        "add(D) D=[2]",
        "add(D) D=[4]",
        "add(D) D=[4,2]",
        "pow(D) D=[4,2]",
        "constrained support=[4,2] allowed[2]={0,2+}",
    ];
    let mut runs = 0;
    for c in classes {
        let class = parse_class(Z4, c).unwrap();
        for (id, _) in SUITES {
            let t = Instant::now();
            let report = run_suite(id, &class, &u).map_err(|e| e.to_string())?;
            if std::env::var_os("RELHOM_TIMINGS").is_some() {
                eprintln!("  {id:<22} {c:<45} {:>8.3}s", t.elapsed().as_secs_f64());
            }
            ensure(report.pass, format!("{id} failed for {c}:\n{report}"))?;
            if *id == "thm-2.10" && c.starts_with("add") && c != "add(D) D=[4]" {
                let hyp = report
                    .checks
                    .iter()
                    .any(|l| l.label == "covers almost epi" && l.value == "Yes");
                ensure(hyp, format!("thm-2.10 hypotheses not verified for {c}"))?;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} suite runs, zero failures"))
}

fn criterion_8() -> Outcome {
    let z = ModuleObject::regular(RingSpec::Integers);
    let two = ModuleMorphism::scalar(&z, 2);
    ensure(is_almost_epi(&two).status == Status::Yes, "2· not almost epi")?;
    let size = SolutionCoset::new(&two).map(|c| c.size());
    ensure(size == Some(1), format!("solution coset size {size:?}"))?;
    Ok("finite coset {id}".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("prop-2.9 reproduction", criterion_1, Duration::from_secs(5)),
        (
            "mono non-iso precover: R without S",
            criterion_2,
            Duration::from_secs(1),
        ),
        ("summand closure needed for E => R", criterion_3, Duration::from_secs(5)),
        ("weak closure needed for S => R", criterion_4, Duration::from_secs(5)),
        ("torsion class over Z", criterion_5, Duration::from_secs(1)),
        ("classical Ext oracle", criterion_6, Duration::from_secs(30)),
        ("property suites", criterion_7, Duration::from_secs(60)),
        ("2· on Z almost epi", criterion_8, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > budget => Err(format!("{detail}; over budget {budget:?}")),
            other => other,
        };
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) => ("FAIL", d.as_str()),
        };
        println!(
            "{mark} criterion {}: {name} ({:.3}s) {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
        if outcome.is_err() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
