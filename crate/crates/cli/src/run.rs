//! Executes a scenario and renders its result.

use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use relhom_core::algebra::kernel;
use relhom_core::conditions::{check_e, check_r, check_s};
use relhom_core::ext::relative_ext;
use relhom_core::lab::{reproduce, run_suite_with, SuiteConfig, SuiteReport, UniverseSpec, EXAMPLES, SUITES};
use relhom_core::precover::cover;
use relhom_core::resolution::build_resolution;
use relhom_core::schanuel::schanuel_step;
use relhom_core::{ConditionVerdict, Error, ModuleMorphism, ModuleObject, PrecoverClassSpec, Status, Witness};

use crate::config::{Command, Condition, Expect, Format, ListTarget, ScenarioConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

/// One line of `--format records` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Record {
    fn new(kind: &str) -> Self {
        Record {
            kind: kind.into(),
            id: None,
            status: None,
            value: None,
            reason: None,
            witness: None,
        }
    }

    fn id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    fn status(mut self, s: impl ToString) -> Self {
        self.status = Some(s.to_string());
        self
    }

    fn value(mut self, v: impl ToString) -> Self {
        self.value = Some(v.to_string());
        self
    }

    fn reason(mut self, r: impl Into<String>) -> Self {
        self.reason = Some(r.into());
        self
    }

    fn witness(mut self, w: Option<Witness>) -> Self {
        self.witness = w;
        self
    }
}

/// The result of running a scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub records: Vec<Record>,
    pub table: String,
    pub exit: i32,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.table.clone(),
            Format::Records => self
                .records
                .iter()
                .map(|r| serde_json::to_string(r).expect("records serialize") + "\n")
                .collect(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Missing(String),
}

fn need_class(c: &ScenarioConfig) -> Result<&PrecoverClassSpec, RunError> {
    c.class
        .as_ref()
        .ok_or_else(|| RunError::Missing("a class is required (--class or `class` line)".into()))
}

fn need_module(c: &ScenarioConfig) -> Result<&ModuleObject, RunError> {
    c.target()
        .ok_or_else(|| RunError::Missing("a module is required (--module or `module M=..` line)".into()))
}

fn matrix_text(f: &ModuleMorphism) -> String {
    let rows: Vec<String> = f
        .matrix()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn morphism_line(f: &ModuleMorphism) -> String {
    format!("{} -> {}  {}", f.domain().expr(), f.codomain().expr(), matrix_text(f))
}

/// Indented human-readable rendering of a witness.
pub fn witness_lines(w: &Witness) -> Vec<String> {
    match w {
        Witness::Module { module } => vec![format!("module {}", module.expr())],
        Witness::Morphism { morphism } => vec![format!("morphism {}", morphism_line(morphism))],
        Witness::Resolution { resolution } => {
            let mut out = vec![format!(
                "resolution of {} ({})",
                resolution.target.expr(),
                if resolution.closed { "closed" } else { "truncated" }
            )];
            for (i, d) in resolution.differentials.iter().enumerate() {
                out.push(format!(
                    "  F_{i} = {}  ∂_{i} = {}",
                    resolution.terms[i].expr(),
                    matrix_text(d)
                ));
            }
            out
        }
        Witness::Equivalence { equivalence: e } => vec![format!(
            "equivalence {} + {} = {} + {}",
            e.k.expr(),
            e.fprime.expr(),
            e.k2.expr(),
            e.f.expr()
        )],
        Witness::Summand {
            summand,
            member,
            quotient,
        } => {
            let q = quotient
                .as_ref()
                .map(|q| format!(", quotient {}", q.expr()))
                .unwrap_or_default();
            vec![format!("summand {} of member {}{q}", summand.expr(), member.expr())]
        }
        Witness::Ext {
            coefficient,
            degree,
            value,
        } => {
            vec![format!("Ext^{degree}(M, {}) = {value}", coefficient.expr())]
        }
        Witness::Endomorphism { phi, g } => {
            vec![format!("φ = {}", morphism_line(phi)), format!("g = {}", matrix_text(g))]
        }
    }
}

fn verdict_exit(status: Status, c: &ScenarioConfig) -> i32 {
    match (status, c.expect) {
        (Status::Unknown, _) if c.strict => EXIT_UNKNOWN,
        (Status::No, Some(Expect::Yes)) | (Status::Yes, Some(Expect::No)) => EXIT_VIOLATED,
        (Status::Unknown, Some(_)) => EXIT_VIOLATED,
        _ => EXIT_OK,
    }
}

fn report_outcome(report: SuiteReport) -> Outcome {
    let mut records = Vec::new();
    for line in &report.checks {
        records.push(
            Record::new("check")
                .id(&line.label)
                .value(&line.value)
                .status(if line.ok { "ok" } else { "fail" }),
        );
    }
    for w in &report.witnesses {
        records.push(Record::new("witness").witness(Some(w.clone())));
    }
    for f in &report.failures {
        records.push(
            Record::new("failure")
                .id(&f.instance)
                .value(&f.got)
                .reason(format!("expected {}", f.expected))
                .witness(f.witness.clone()),
        );
    }
    let status = if report.pass { "pass" } else { "fail" };
    records.push(
        Record::new("suite")
            .id(&report.suite_id)
            .status(status)
            .value(report.instances_checked),
    );
    let mut table = report.to_string();
    table.push('\n');
    for w in &report.witnesses {
        for l in witness_lines(w) {
            let _ = writeln!(table, "witness: {l}");
        }
    }
    Outcome {
        records,
        table,
        exit: if report.pass { EXIT_OK } else { EXIT_VIOLATED },
    }
}

fn verdict_outcome(label: String, v: ConditionVerdict, c: &ScenarioConfig) -> Outcome {
    let mut table = format!("{label}\nstatus: {}\nreason: {}\n", v.status, v.reason);
    if let Some(w) = &v.witness {
        for l in witness_lines(w) {
            let _ = writeln!(table, "witness: {l}");
        }
    }
    let exit = verdict_exit(v.status, c);
    let record = Record::new("verdict")
        .id(label)
        .status(v.status)
        .reason(v.reason)
        .witness(v.witness);
    Outcome {
        records: vec![record],
        table,
        exit,
    }
}

pub fn run(c: &ScenarioConfig) -> Result<Outcome, RunError> {
    match &c.command {
        Command::List(target) => {
            let (kind, items) = match target {
                ListTarget::Suites => ("suite", SUITES),
                ListTarget::Examples => ("example", EXAMPLES),
            };
            let width = items.iter().map(|(id, _)| id.len()).max().unwrap_or(0);
            let table = items.iter().map(|(id, d)| format!("{id:<width$}  {d}\n")).collect();
            let records = items
                .iter()
                .map(|(id, d)| Record::new(kind).id(*id).value(*d))
                .collect();
            Ok(Outcome {
                records,
                table,
                exit: EXIT_OK,
            })
        }
        Command::Reproduce(id) => Ok(report_outcome(reproduce(id)?)),
        Command::Suite(id) => {
            let class = need_class(c)?;
            let u = UniverseSpec::new(c.ring, c.bound);
            Ok(report_outcome(run_suite_with(id, class, &u, &SuiteConfig::default())?))
        }
        Command::Check(cond) => {
            let (class, m) = (need_class(c)?, need_module(c)?);
            let (name, v) = match cond {
                Condition::E => ("E", check_e(class, m, c.n)?),
                Condition::R => ("R", check_r(class, m, c.n)?),
                Condition::S => ("S", check_s(class, m, c.n)?),
            };
            Ok(verdict_outcome(
                format!("check {name}  class {class}  M={}  n={}", m.expr(), c.n),
                v,
                c,
            ))
        }
        Command::Resolve => {
            let (class, m) = (need_class(c)?, need_module(c)?);
            let res = build_resolution(class, m, c.length)?;
            let verified = res.verify();
            let mut table = format!("resolution  class {class}  M={}  length={}\n", m.expr(), c.length);
            let witness = Witness::Resolution {
                resolution: Box::new(res),
            };
            for l in witness_lines(&witness) {
                let _ = writeln!(table, "{l}");
            }
            let status = if verified.is_ok() { "verified" } else { "invalid" };
            let _ = writeln!(table, "certificates: {status}");
            let mut record = Record::new("resolution").status(status).witness(Some(witness));
            if let Err(e) = verified {
                record = record.reason(e);
            }
            let exit = if status == "verified" { EXIT_OK } else { EXIT_VIOLATED };
            Ok(Outcome {
                records: vec![record],
                table,
                exit,
            })
        }
        Command::Ext => {
            let (class, m) = (need_class(c)?, need_module(c)?);
            let a = c.coefficient.as_ref().ok_or_else(|| {
                RunError::Missing("a coefficient module is required (--coeff or `module A=..`)".into())
            })?;
            let value = relative_ext(class, m, a, c.n)?;
            let table = format!("Ext^{}_F({}, {}) = {value}\nclass {class}\n", c.n, m.expr(), a.expr());
            let record = Record::new("group")
                .id(format!("Ext^{}({}, {})", c.n, m.expr(), a.expr()))
                .value(&value)
                .witness(Some(Witness::Ext {
                    coefficient: a.clone(),
                    degree: c.n,
                    value: value.clone(),
                }));
            Ok(Outcome {
                records: vec![record],
                table,
                exit: EXIT_OK,
            })
        }
        Command::Schanuel => {
            let (class, m) = (need_class(c)?, need_module(c)?);
            let mut table = format!("Schanuel classes  class {class}\n");
            let mut records = Vec::new();
            let mut current = m.clone();
            let _ = writeln!(table, "S^0 = [{}]", current.expr());
            records.push(
                Record::new("schanuel")
                    .id("S^0")
                    .value(current.expr())
                    .witness(Some(Witness::Module {
                        module: current.clone(),
                    })),
            );
            for i in 1..=c.n {
                let c0 = cover(class, &current)?;
                let k = schanuel_step(class, &current)?;
                debug_assert_eq!(k, kernel(&c0).0);
                let _ = writeln!(table, "S^{i} = [{}]  cover {}", k.expr(), morphism_line(&c0));
                records.push(
                    Record::new("schanuel")
                        .id(format!("S^{i}"))
                        .value(k.expr())
                        .witness(Some(Witness::Morphism { morphism: c0 })),
                );
                current = k;
            }
            Ok(Outcome {
                records,
                table,
                exit: EXIT_OK,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn exit_codes_follow_status_and_flags() {
        let mut c = parse_config("class add([2])\nmodule M=[4]\ncheck E").unwrap();
        assert_eq!(verdict_exit(Status::Unknown, &c), EXIT_OK);
        c.strict = true;
        assert_eq!(verdict_exit(Status::Unknown, &c), EXIT_UNKNOWN);
        assert_eq!(verdict_exit(Status::No, &c), EXIT_OK);
        c.strict = false;
        c.expect = Some(Expect::Yes);
        assert_eq!(verdict_exit(Status::No, &c), EXIT_VIOLATED);
        assert_eq!(verdict_exit(Status::Unknown, &c), EXIT_VIOLATED);
        assert_eq!(verdict_exit(Status::Yes, &c), EXIT_OK);
    }

    #[test]
    fn unknown_verdict_renders_without_witness() {
        let c = parse_config("class add([2])\nmodule M=[4]\ncheck R\nstrict").unwrap();
        assert!(c.strict);
        let o = verdict_outcome("check R".into(), ConditionVerdict::unknown("search limit"), &c);
        assert_eq!(o.exit, EXIT_UNKNOWN);
        assert_eq!(
            o.render(Format::Records),
            "{\"kind\":\"verdict\",\"id\":\"check R\",\"status\":\"Unknown\",\"reason\":\"search limit\"}\n"
        );
    }
}
