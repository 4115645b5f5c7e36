//! End-to-end runs of the `relhom` binary.

use std::io::Write;
use std::process::{Command, Output};

use relhom_cli::Record;
use relhom_core::class::parse_class;
use relhom_core::precover::verify_precover;
use relhom_core::{ModuleMorphism, RingSpec, Witness};

fn relhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relhom"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn records(o: &Output) -> Vec<Record> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("{e}: {l}")))
        .collect()
}

/// Rebuilds a morphism through the validating constructor.
fn revalidate(f: &ModuleMorphism) -> ModuleMorphism {
    ModuleMorphism::new(f.domain().clone(), f.codomain().clone(), f.matrix().to_vec())
        .expect("witness morphism is well defined")
}

#[test]
fn reproduce_prop_2_9() {
    let o = relhom(&["reproduce", "prop-2.9"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("[[2]]"), "{s}");
    assert!(s.contains("mono: yes, epi: no, almost-epi: yes"), "{s}");
    assert!(s.contains("status: pass"), "{s}");
}

#[test]
fn check_e_yes() {
    let o = relhom(&[
        "check", "E", "--ring", "Z/4", "--class", "add([2])", "--module", "[4]", "--n", "0",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: Yes"));
}

#[test]
fn suite_thm_3_8() {
    let o = relhom(&["suite", "thm-3.8", "--class", "add([2])", "--bound", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: pass"));
}

#[test]
fn every_listed_example_reproduces() {
    let o = relhom(&["list", "examples", "--format", "records"]);
    for r in records(&o) {
        let id = r.id.unwrap();
        let run = relhom(&["reproduce", &id]);
        assert_eq!(run.status.code(), Some(0), "{id}: {}", stdout(&run));
    }
}

#[test]
fn exit_codes() {
    let violated = relhom(&[
        "check",
        "R",
        "--class",
        "pow([4,2])",
        "--module",
        "[2]",
        "--expect",
        "yes",
    ]);
    assert_eq!(violated.status.code(), Some(1));
    let matched = relhom(&[
        "check",
        "R",
        "--class",
        "pow([4,2])",
        "--module",
        "[2]",
        "--expect",
        "no",
    ]);
    assert_eq!(matched.status.code(), Some(0));
    let bad_module = relhom(&["check", "E", "--class", "add([2])", "--module", "[3]"]);
    assert_eq!(bad_module.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad_module.stderr).contains("order 3 does not divide 4"));
    assert_eq!(
        relhom(&["suite", "no-such-suite", "--class", "add([2])"]).status.code(),
        Some(2)
    );
    assert_eq!(relhom(&["check", "Q"]).status.code(), Some(2));
    assert_eq!(relhom(&["check", "E", "--class", "add([2])"]).status.code(), Some(2));
    assert_eq!(relhom(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["reproduce", "example-2.2-finite", "--format", "records"][..],
        &[
            "suite",
            "schanuel-well-defined",
            "--class",
            "add([4,2])",
            "--bound",
            "3",
        ],
        &[
            "schanuel", "--class", "add([2])", "--module", "[4,4,2]", "--n", "3", "--format", "records",
        ],
    ] {
        let a = relhom(args);
        let b = relhom(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn records_round_trip_and_witnesses_reverify() {
    let ring = RingSpec::Modular(4);
    let add_k = parse_class(ring, "add([2])").unwrap();

    let o = relhom(&[
        "check", "R", "--class", "add([2])", "--module", "[4]", "--format", "records",
    ]);
    let rs = records(&o);
    assert_eq!(rs.len(), 1);
    assert_eq!(rs[0].status.as_deref(), Some("Yes"));
    match &rs[0].witness {
        Some(Witness::Resolution { resolution }) => {
            resolution.verify().unwrap();
            for d in &resolution.differentials {
                revalidate(d);
            }
        }
        w => panic!("unexpected witness {w:?}"),
    }

    let o = relhom(&[
        "schanuel", "--class", "add([2])", "--module", "[4,2]", "--n", "2", "--format", "records",
    ]);
    for r in records(&o).iter().skip(1) {
        match &r.witness {
            Some(Witness::Morphism { morphism }) => {
                let f = revalidate(morphism);
                assert!(
                    verify_precover(&add_k, &f).unwrap().is_some(),
                    "{}",
                    r.id.as_deref().unwrap()
                );
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    let o = relhom(&[
        "suite",
        "schanuel-well-defined",
        "--class",
        "add([4,2])",
        "--bound",
        "3",
        "--format",
        "records",
    ]);
    let rs = records(&o);
    assert_eq!(rs.last().unwrap().status.as_deref(), Some("pass"));
    let class = parse_class(ring, "add([4,2])").unwrap();
    for r in &rs {
        if let Some(Witness::Equivalence { equivalence }) = &r.witness {
            assert!(equivalence.verify(&class));
        }
    }

    let o = relhom(&[
        "check",
        "R",
        "--class",
        "pow([4,2])",
        "--module",
        "[2]",
        "--format",
        "records",
    ]);
    let line = stdout(&o);
    let r: Record = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap(), line.trim());
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("relhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scenario.txt");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(
        f,
        "# summand closure matters\nring Z/4\nclass pow(D) D=[4,2]\nmodule M=[2]\ncheck R n=0"
    )
    .unwrap();
    drop(f);
    let p = path.to_str().unwrap();

    let o = relhom(&["--config", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: No"));

    let o = relhom(&["--config", p, "check", "E"]);
    assert!(stdout(&o).contains("status: Yes"), "{}", stdout(&o));

    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "ring Z/4\nmodule M=[8]\ncheck E").unwrap();
    drop(f);
    let o = relhom(&["--config", p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 2"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
