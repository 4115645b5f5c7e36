//! Fixed computations for the worked examples.

use super::{yes_no, LabResult, SuiteReport, UniverseSpec};
use crate::class::PrecoverClassSpec;
use crate::conditions::{check_e, check_r, check_s};
use crate::error::Error;
use crate::module::ModuleObject;
use crate::morphism::ModuleMorphism;
use crate::precover::{
    build_precover, class_closed_under_summands, class_weakly_closed, cover, has_epi_precover, is_almost_epi,
    is_separating, mono_precovers_are_iso, verify_precover, SolutionCoset,
};
use crate::ring::RingSpec;
use crate::verdict::Witness;

pub const EXAMPLES: &[(&str, &str)] = &[
    (
        "prop-2.9",
        "add(k) over Z/4 is precovering by almost epimorphisms; R has no epi precover",
    ),
    (
        "example-2.2-finite",
        "powers of Z/4 + Z/2 are precovering but not closed under summands",
    ),
    (
        "lemma-2.4-witness",
        "E holds and R fails for Z/2 under powers of Z/4 + Z/2",
    ),
    ("example-2.7", "multiplication by 2 on Z is almost epi"),
    (
        "example-3.7b",
        "torsion groups: 0 -> Z is a mono precover, R holds and S fails for Z",
    ),
];

const Z4: RingSpec = RingSpec::Modular(4);

fn z4(orders: &[i64]) -> ModuleObject {
    ModuleObject::new(Z4, 0, orders.iter().copied()).expect("valid over Z/4")
}

pub fn reproduce(id: &str) -> LabResult<SuiteReport> {
    let report = match id {
        "prop-2.9" => prop_2_9()?,
        "example-2.2-finite" => example_2_2()?,
        "lemma-2.4-witness" => lemma_2_4()?,
        "example-2.7" => example_2_7()?,
        "example-3.7b" => example_3_7b()?,
        _ => return Err(Error::UnknownExample(id.to_string())),
    };
    Ok(report.finish())
}

fn morphism_flags(phi: &ModuleMorphism) -> String {
    format!(
        "mono: {}, epi: {}, almost-epi: {}",
        yes_no(phi.is_mono()),
        yes_no(phi.is_epi()),
        match is_almost_epi(phi).status {
            crate::Status::Yes => "yes",
            crate::Status::No => "no",
            crate::Status::Unknown => "unknown",
        }
    )
}

fn matrix_text(phi: &ModuleMorphism) -> String {
    format!("{:?}", phi.matrix()).replace(" ", "")
}

/// `id_{k^i} ⊕ φ_1^j : k^(i+j) -> k^i ⊕ R^j`. Codomain generators are the `R`
/// copies first; domain columns `0..j` map onto them.
fn block_precover(i: usize, j: usize) -> ModuleMorphism {
    let dom = z4(&vec![2; i + j]);
    let mut orders = vec![4; j];
    orders.extend(vec![2; i]);
    let cod = z4(&orders);
    let mut matrix = vec![vec![0; i + j]; i + j];
    for (r, row) in matrix.iter_mut().enumerate() {
        row[r] = if r < j { 2 } else { 1 };
    }
    ModuleMorphism::new(dom, cod, matrix).expect("block precover is well defined")
}

fn prop_2_9() -> LabResult<SuiteReport> {
    let k = z4(&[2]);
    let r = z4(&[4]);
    let class = PrecoverClassSpec::add_closure(k.clone());
    let mut report = SuiteReport::new("prop-2.9", Some(class.to_string()));

    let phi1 = cover(&class, &r)?;
    let phi_w = Some(Witness::Morphism { morphism: phi1.clone() });
    report.check("φ_1 : k -> R matrix", "[[2]]", matrix_text(&phi1), phi_w.clone());
    report.check(
        "φ_1 verified precover",
        "yes",
        yes_no(verify_precover(&class, &phi1)?.is_some()),
        None,
    );
    report.check(
        "φ_1",
        "mono: yes, epi: no, almost-epi: yes",
        morphism_flags(&phi1),
        None,
    );
    report.check(
        "epi precover of R exists",
        "no",
        yes_no(has_epi_precover(&class, &r)?),
        None,
    );

    let mut total_solutions = 0u128;
    for total in 0..=3usize {
        for j in 0..=total {
            let i = total - j;
            let mut orders = vec![4; j];
            orders.extend(vec![2; i]);
            let m = z4(&orders);
            let label = format!("k^{i} + R^{j}");
            let c = cover(&class, &m)?;
            report.check(
                format!("{label}: cover almost epi"),
                "Yes",
                is_almost_epi(&c).status,
                None,
            );

            let block = block_precover(i, j);
            report.check(
                format!("{label}: block precover verified"),
                "yes",
                yes_no(verify_precover(&class, &block)?.is_some()),
                None,
            );
            report.check(
                format!("{label}: block precover almost epi"),
                "Yes",
                is_almost_epi(&block).status,
                Some(Witness::Morphism {
                    morphism: block.clone(),
                }),
            );
            let coset = SolutionCoset::new(&block).expect("finite module");
            let mut shape_ok = true;
            for g in coset.elements() {
                total_solutions += 1;
                let e = |row: usize, col: usize| g.entry(row, col);
                // k^i block: rows and columns j.., mod 2
                let g11 = (j..i + j).all(|a| (j..i + j).all(|b| e(a, b).rem_euclid(2) == i64::from(a == b)));
                let g21 = (0..j).all(|a| (j..i + j).all(|b| e(a, b).rem_euclid(4) == 0));
                let g22 = (0..j).all(|a| {
                    (0..j).all(|b| (0..j).map(|c| e(a, c) * e(c, b)).sum::<i64>().rem_euclid(4) == i64::from(a == b))
                });
                if !(g11 && g21 && g22) {
                    shape_ok = false;
                    report.fail(
                        format!("{label}: solution shape"),
                        "g11 = id, g21 = 0, g22^2 = id",
                        format!(
                            "g11 = id: {}, g21 = 0: {}, g22^2 = id: {}",
                            yes_no(g11),
                            yes_no(g21),
                            yes_no(g22)
                        ),
                        Some(Witness::Endomorphism { phi: block.clone(), g }),
                    );
                    break;
                }
            }
            report.check(
                format!("{label}: g11 = id, g21 = 0, g22^2 = id over {} solutions", coset.size()),
                "yes",
                yes_no(shape_ok),
                None,
            );
        }
    }
    report.note("solutions g enumerated", total_solutions);

    // every module over Z/4 is k^i + R^j
    let u = UniverseSpec::new(Z4, 3);
    let only_k_and_r = u
        .enumerate()
        .iter()
        .all(|m| m.torsion_orders().iter().all(|&q| q == 2 || q == 4));
    report.check(
        "modules of the universe are k^i + R^j",
        "yes",
        yes_no(only_k_and_r),
        None,
    );
    Ok(report)
}

fn powers_class() -> PrecoverClassSpec {
    PrecoverClassSpec::powers(z4(&[4, 2]))
}

fn example_2_2() -> LabResult<SuiteReport> {
    let class = powers_class();
    let mut report = SuiteReport::new("example-2.2-finite", Some(class.to_string()));
    let modules = UniverseSpec::new(Z4, 3).enumerate();
    let all_verify = modules
        .iter()
        .all(|m| build_precover(&class, m).map(|c| c.verify()).unwrap_or(false));
    report.check(
        format!("precovers of all {} modules verify", modules.len()),
        "yes",
        yes_no(all_verify),
        None,
    );
    let c = build_precover(&class, &z4(&[2]))?;
    report.check(
        "precover of Z/2: domain",
        "[4,4,2,2]",
        c.precover.domain().expr(),
        Some(Witness::Morphism {
            morphism: c.precover.clone(),
        }),
    );
    report.check("Z/2 is a member", "no", yes_no(class.contains(&z4(&[2]))?), None);
    let closed = class_closed_under_summands(&class);
    let summand = match &closed.witness {
        Some(Witness::Summand { summand, .. }) => summand.expr(),
        _ => "none".into(),
    };
    report.check("closed under summands", "No", closed.status, closed.witness.clone());
    report.check("summand witness", "[2]", summand, None);
    report.check("weakly closed", "Yes", class_weakly_closed(&class).status, None);
    Ok(report)
}

fn lemma_2_4() -> LabResult<SuiteReport> {
    let class = powers_class();
    let m = z4(&[2]);
    let mut report = SuiteReport::new("lemma-2.4-witness", Some(class.to_string()));
    report.check(
        "closed under summands",
        "No",
        class_closed_under_summands(&class).status,
        None,
    );
    let e = check_e(&class, &m, 0)?;
    report.check("E(Z/2, 0)", "Yes", e.status, e.witness);
    let r = check_r(&class, &m, 0)?;
    report.note("R reason", &r.reason);
    report.check("R(Z/2, 0)", "No", r.status, r.witness);
    Ok(report)
}

fn example_2_7() -> LabResult<SuiteReport> {
    let z = ModuleObject::regular(RingSpec::Integers);
    let two = ModuleMorphism::scalar(&z, 2);
    let mut report = SuiteReport::new("example-2.7", None);
    report.check(
        "2· : Z -> Z matrix",
        "[[2]]",
        matrix_text(&two),
        Some(Witness::Morphism { morphism: two.clone() }),
    );
    let size = SolutionCoset::new(&two)
        .map(|c| c.size().to_string())
        .unwrap_or_else(|| "infinite".into());
    report.check("solutions of g∘2 = 2", "1", size, None);
    report.check("2·", "mono: yes, epi: no, almost-epi: yes", morphism_flags(&two), None);
    Ok(report)
}

fn example_3_7b() -> LabResult<SuiteReport> {
    let ring = RingSpec::Integers;
    let class = PrecoverClassSpec::torsion_over_z();
    let z = ModuleObject::regular(ring);
    let mut report = SuiteReport::new("example-3.7b", Some(class.to_string()));
    let c = build_precover(&class, &z)?;
    report.check(
        "precover of Z: domain",
        "0",
        c.precover.domain().expr(),
        Some(Witness::Morphism {
            morphism: c.precover.clone(),
        }),
    );
    report.check("precover mono", "yes", yes_no(c.precover.is_mono()), None);
    report.check("precover iso", "no", yes_no(c.precover.is_iso()), None);
    let r = check_r(&class, &z, 0)?;
    let zero_terms = match &r.witness {
        Some(Witness::Resolution { resolution }) => yes_no(resolution.terms.iter().all(ModuleObject::is_zero)),
        _ => "no witness",
    };
    report.check("R(Z, 0)", "Yes", r.status, r.witness.clone());
    report.check("resolution 0 -> 0 -> Z -> 0 has zero terms", "yes", zero_terms, None);
    let s = check_s(&class, &z, 0)?;
    report.check("S(Z, 0)", "No", s.status, s.witness);
    let universe = UniverseSpec::new(ring, 2).enumerate();
    report.check(
        "mono precovers are iso",
        "No",
        mono_precovers_are_iso(&class, &universe)?.status,
        None,
    );
    let sep = is_separating(&class, &universe)?;
    let w = match &sep.witness {
        Some(Witness::Module { module }) => module.expr(),
        _ => "none".into(),
    };
    report.check("separating", "No", sep.status, None);
    report.check("separation witness", "rank1", w, None);
    Ok(report)
}
