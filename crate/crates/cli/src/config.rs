//! Scenario files and their merge with command-line flags.
//!
//! ```text
//! # comments and blank lines are ignored
//! ring Z/4
//! class add(D) D=[2]
//! module M=[4]
//! module A=[2]
//! check S n=0
//! ```
//!
//! Command lines: `resolve [length=L]`, `ext [n=N] [coeff=A]`, `schanuel [n=N]`,
//! `check E|R|S [n=N]`, `suite <id> [bound=B]`, `reproduce <id>`,
//! `list suites|examples`. Setting lines: `n N`, `length L`, `bound B`,
//! `format table|records`, `expect yes|no`, `strict`, `seed S`.

use std::fmt;
use std::str::FromStr;

use relhom_core::class::{parse_class, parse_module};
use relhom_core::{ModuleObject, PrecoverClassSpec, RingSpec};

/// Where a value came from, for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Line(usize),
    Flag(&'static str),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Line(n) => write!(f, "line {n}"),
            Source::Flag(name) => write!(f, "--{name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{at}: {field}: {message}")]
pub struct ConfigError {
    pub at: Source,
    pub field: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(source: Source, field: impl Into<String>, message: impl fmt::Display) -> Self {
        ConfigError {
            at: source,
            field: field.into(),
            message: message.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    E,
    R,
    S,
}

impl FromStr for Condition {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "E" => Ok(Condition::E),
            "R" => Ok(Condition::R),
            "S" => Ok(Condition::S),
            _ => Err(format!("unknown condition `{s}` (expected E, R or S)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ListTarget {
    Suites,
    Examples,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Resolve,
    Ext,
    Schanuel,
    Check(Condition),
    Suite(String),
    Reproduce(String),
    List(ListTarget),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Table,
    Records,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(Format::Table),
            "records" => Ok(Format::Records),
            _ => Err(format!("unknown format `{s}` (expected table or records)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Yes,
    No,
}

impl FromStr for Expect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "yes" => Ok(Expect::Yes),
            "no" => Ok(Expect::No),
            _ => Err(format!("expected yes or no, got `{s}`")),
        }
    }
}

/// A validated scenario.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub ring: RingSpec,
    pub class: Option<PrecoverClassSpec>,
    /// Named modules in order of appearance.
    pub modules: Vec<(String, ModuleObject)>,
    pub coefficient: Option<ModuleObject>,
    pub command: Command,
    pub n: usize,
    pub length: usize,
    pub bound: usize,
    pub format: Format,
    pub expect: Option<Expect>,
    pub strict: bool,
    pub seed: Option<u64>,
}

impl ScenarioConfig {
    /// The module the command acts on: `M` if named, else the first one.
    pub fn target(&self) -> Option<&ModuleObject> {
        self.modules
            .iter()
            .find(|(n, _)| n == "M")
            .or_else(|| self.modules.first())
            .map(|(_, m)| m)
    }
}

type Sourced<T> = Option<(Source, T)>;

/// Unvalidated settings, each remembering where it was given.
#[derive(Clone, Debug, Default)]
pub struct RawScenario {
    pub ring: Sourced<String>,
    pub class: Sourced<String>,
    pub modules: Vec<(Source, String, String)>,
    pub coefficient: Sourced<String>,
    pub command: Sourced<Command>,
    pub n: Sourced<usize>,
    pub length: Sourced<usize>,
    pub bound: Sourced<usize>,
    pub format: Sourced<Format>,
    pub expect: Sourced<Expect>,
    pub strict: bool,
    pub seed: Sourced<u64>,
}

fn number<T: FromStr>(source: Source, field: &str, v: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    v.parse()
        .map_err(|e| ConfigError::new(source, field, format!("`{v}`: {e}")))
}

fn one_word<'a>(source: Source, field: &str, words: &[&'a str]) -> Result<&'a str, ConfigError> {
    match words {
        [w] => Ok(w),
        _ => Err(ConfigError::new(source, field, "expected exactly one value")),
    }
}

impl RawScenario {
    /// Parses the scenario grammar; does not validate values against the ring.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut raw = RawScenario::default();
        for (i, line) in text.lines().enumerate() {
            let src = Source::Line(i + 1);
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            let words: Vec<&str> = rest.split_whitespace().collect();
            match head {
                "ring" => raw.ring = Some((src, one_word(src, "ring", &words)?.to_string())),
                "class" => {
                    if rest.is_empty() {
                        return Err(ConfigError::new(src, "class", "missing descriptor"));
                    }
                    raw.class = Some((src, rest.to_string()));
                }
                "module" => {
                    let (name, expr) = rest
                        .split_once('=')
                        .ok_or_else(|| ConfigError::new(src, "module", "expected `module NAME=<expr>`"))?;
                    let name = name.trim();
                    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(ConfigError::new(src, "module", format!("invalid module name `{name}`")));
                    }
                    raw.modules.push((src, name.to_string(), expr.trim().to_string()));
                }
                "n" => raw.n = Some((src, number(src, "n", one_word(src, "n", &words)?)?)),
                "length" => raw.length = Some((src, number(src, "length", one_word(src, "length", &words)?)?)),
                "bound" => raw.bound = Some((src, number(src, "bound", one_word(src, "bound", &words)?)?)),
                "seed" => raw.seed = Some((src, number(src, "seed", one_word(src, "seed", &words)?)?)),
                "format" => raw.format = Some((src, number(src, "format", one_word(src, "format", &words)?)?)),
                "expect" => raw.expect = Some((src, number(src, "expect", one_word(src, "expect", &words)?)?)),
                "strict" => {
                    if !words.is_empty() {
                        return Err(ConfigError::new(src, "strict", "takes no value"));
                    }
                    raw.strict = true;
                }
                "resolve" | "ext" | "schanuel" | "check" | "suite" | "reproduce" | "list" => {
                    if let Some((prev, _)) = raw.command {
                        return Err(ConfigError::new(src, head, format!("second command (first on {prev})")));
                    }
                    raw.parse_command(src, head, &words)?;
                }
                other => return Err(ConfigError::new(src, other, "unknown key")),
            }
        }
        Ok(raw)
    }

    fn parse_command(&mut self, src: Source, head: &str, words: &[&str]) -> Result<(), ConfigError> {
        let mut positional = Vec::new();
        for w in words {
            match w.split_once('=') {
                None => positional.push(*w),
                Some((k, v)) => {
                    let allowed: &[&str] = match head {
                        "resolve" => &["length"],
                        "ext" => &["n", "coeff"],
                        "schanuel" | "check" => &["n"],
                        "suite" => &["bound", "n"],
                        _ => &[],
                    };
                    if !allowed.contains(&k) {
                        return Err(ConfigError::new(src, format!("{head} {k}"), "unknown parameter"));
                    }
                    match k {
                        "n" => self.n = Some((src, number(src, "n", v)?)),
                        "length" => self.length = Some((src, number(src, "length", v)?)),
                        "bound" => self.bound = Some((src, number(src, "bound", v)?)),
                        "coeff" => self.coefficient = Some((src, v.to_string())),
                        _ => unreachable!("checked against the allowed list"),
                    }
                }
            }
        }
        let expect_args = |count: usize| {
            if positional.len() == count {
                Ok(())
            } else {
                Err(ConfigError::new(
                    src,
                    head,
                    format!("expected {count} argument(s), got {}", positional.len()),
                ))
            }
        };
        let command = match head {
            "resolve" => expect_args(0).map(|_| Command::Resolve)?,
            "ext" => expect_args(0).map(|_| Command::Ext)?,
            "schanuel" => expect_args(0).map(|_| Command::Schanuel)?,
            "check" => {
                expect_args(1)?;
                Command::Check(positional[0].parse().map_err(|e| ConfigError::new(src, "check", e))?)
            }
            "suite" => {
                expect_args(1)?;
                Command::Suite(positional[0].to_string())
            }
            "reproduce" => {
                expect_args(1)?;
                Command::Reproduce(positional[0].to_string())
            }
            "list" => {
                expect_args(1)?;
                match positional[0] {
                    "suites" => Command::List(ListTarget::Suites),
                    "examples" => Command::List(ListTarget::Examples),
                    other => return Err(ConfigError::new(src, "list", format!("unknown list `{other}`"))),
                }
            }
            _ => unreachable!("dispatched on known commands"),
        };
        self.command = Some((src, command));
        Ok(())
    }

    /// Validates every value against the ring and builds the scenario.
    pub fn resolve(self) -> Result<ScenarioConfig, ConfigError> {
        let ring = match &self.ring {
            Some((src, r)) => r.parse::<RingSpec>().map_err(|e| ConfigError::new(*src, "ring", e))?,
            None => RingSpec::Modular(4),
        };
        let class = match &self.class {
            Some((src, c)) => Some(parse_class(ring, c).map_err(|e| ConfigError::new(*src, "class", e))?),
            None => None,
        };
        let mut modules: Vec<(String, ModuleObject)> = Vec::new();
        for (src, name, expr) in &self.modules {
            let m = parse_module(ring, expr).map_err(|e| ConfigError::new(*src, format!("module {name}"), e))?;
            match modules.iter_mut().find(|(n, _)| n == name) {
                Some(slot) => slot.1 = m,
                None => modules.push((name.clone(), m)),
            }
        }
        let coefficient = match &self.coefficient {
            Some((src, c)) => match modules.iter().find(|(n, _)| n == c) {
                Some((_, m)) => Some(m.clone()),
                None => Some(parse_module(ring, c).map_err(|e| ConfigError::new(*src, "coeff", e))?),
            },
            None => modules.iter().find(|(n, _)| n == "A").map(|(_, m)| m.clone()),
        };
        let Some((_, command)) = self.command else {
            return Err(ConfigError::new(Source::Flag("config"), "command", "no command given"));
        };
        Ok(ScenarioConfig {
            ring,
            class,
            modules,
            coefficient,
            command,
            n: self.n.map_or(0, |x| x.1),
            length: self.length.map_or(2, |x| x.1),
            bound: self.bound.map_or(4, |x| x.1),
            format: self.format.map(|x| x.1).unwrap_or_default(),
            expect: self.expect.map(|x| x.1),
            strict: self.strict,
            seed: self.seed.map(|x| x.1),
        })
    }
}

/// Parses and validates a scenario file.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    RawScenario::parse(text)?.resolve()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schanuel_scenario() {
        let c = parse_config("ring Z/4\nclass add(D) D=[2]\nmodule M=[4]\ncheck S n=0").unwrap();
        assert_eq!(c.command, Command::Check(Condition::S));
        assert_eq!(c.target().unwrap().expr(), "[4]");
        assert_eq!(c.n, 0);
        assert_eq!(c.class.unwrap().to_string(), "add(D) D=[2]");
    }

    #[test]
    fn torsion_scenario() {
        let c = parse_config("ring Z\nclass torsionZ\nmodule M=rank1\ncheck R n=0").unwrap();
        assert_eq!(c.ring, RingSpec::Integers);
        assert_eq!(c.command, Command::Check(Condition::R));
        assert_eq!(c.target().unwrap().free_rank(), 1);
    }

    #[test]
    fn semantic_error_names_the_line() {
        let e = parse_config("ring Z/4\nmodule M=[3]").unwrap_err();
        assert_eq!(e.at, Source::Line(2));
        assert!(e.to_string().contains("order 3 does not divide 4"), "{e}");
    }

    #[test]
    fn syntax_errors() {
        let e = parse_config("ring Z/4\ncolour blue\n").unwrap_err();
        assert_eq!((e.at, e.field.as_str()), (Source::Line(2), "colour"));
        let e = parse_config("ring Z/1\nlist suites").unwrap_err();
        assert_eq!(e.at, Source::Line(1));
        let e = parse_config("check Q").unwrap_err();
        assert!(e.message.contains("unknown condition"));
        let e = parse_config("resolve depth=3").unwrap_err();
        assert_eq!(e.field, "resolve depth");
        let e = parse_config("list suites\nlist examples").unwrap_err();
        assert_eq!(e.at, Source::Line(2));
    }

    #[test]
    fn comments_settings_and_coefficients() {
        let text = "# ext scenario\nring Z/4\nclass add(D) D=[4]\nmodule M=[2]\nmodule A=[2] # coefficient\next n=1\nformat records\nstrict\n";
        let c = parse_config(text).unwrap();
        assert_eq!(c.coefficient.unwrap().expr(), "[2]");
        assert_eq!((c.n, c.format, c.strict), (1, Format::Records, true));
    }
}
