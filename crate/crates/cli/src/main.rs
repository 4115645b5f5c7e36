use std::process::ExitCode;

use clap::{Parser, Subcommand};

use relhom_cli::config::{Command, Condition, ConfigError, ListTarget, RawScenario, Source};
use relhom_cli::run::{run, EXIT_INVALID};

#[derive(Parser, Debug)]
#[command(name = "relhom", version, about = "Relative homological algebra over Z/n and Z")]
struct Cli {
    #[command(subcommand)]
    command: Option<Cmd>,
    /// Ring: `Z` or `Z/n` (default Z/4)
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Class descriptor, e.g. `add([2])` or `constrained support=[4,2] allowed[2]={0,2+}`
    #[arg(long, global = true)]
    class: Option<String>,
    /// Module expression, e.g. `[4,2]` or `rank1+[2]`
    #[arg(long, global = true)]
    module: Option<String>,
    /// Coefficient module for `ext`
    #[arg(long, global = true)]
    coeff: Option<String>,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Resolution length for `resolve`
    #[arg(long, global = true)]
    length: Option<usize>,
    /// Universe bound on total multiplicity for `suite`
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// `table` or `records`
    #[arg(long, global = true)]
    format: Option<String>,
    /// Exit 1 unless the verdict matches (`yes` or `no`)
    #[arg(long, global = true)]
    expect: Option<String>,
    /// Exit 3 on an Unknown verdict
    #[arg(long, global = true)]
    strict: bool,
    /// Accepted for reproducibility; verdicts never depend on it
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Scenario file; flags override its settings
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build and certify a resolution by covers
    Resolve,
    /// Relative Ext^n(M, coeff)
    Ext,
    /// Iterate the Schanuel map n times
    Schanuel,
    /// Decide condition E, R or S at (M, n)
    Check {
        #[arg(value_parser = ["E", "R", "S"])]
        condition: String,
    },
    /// Run a verification suite over the universe of the given bound
    Suite { id: String },
    /// Reproduce a worked example
    Reproduce { id: String },
    /// List suite or example ids
    List {
        #[arg(value_parser = ["suites", "examples"])]
        what: String,
    },
}

fn parsed<T: std::str::FromStr<Err = String>>(
    name: &'static str,
    v: Option<String>,
) -> Result<Option<(Source, T)>, ConfigError> {
    v.map(|v| {
        v.parse()
            .map(|x| (Source::Flag(name), x))
            .map_err(|e| ConfigError::new(Source::Flag(name), name, e))
    })
    .transpose()
}

fn scenario(cli: Cli) -> Result<RawScenario, ConfigError> {
    let mut raw = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| ConfigError::new(Source::Flag("config"), path.display().to_string(), e))?;
            RawScenario::parse(&text)?
        }
        None => RawScenario::default(),
    };
    let flag = |name: &'static str, v: Option<String>| v.map(|v| (Source::Flag(name), v));
    if let Some(r) = flag("ring", cli.ring) {
        raw.ring = Some(r);
    }
    if let Some(c) = flag("class", cli.class) {
        raw.class = Some(c);
    }
    if let Some(m) = cli.module {
        raw.modules.retain(|(_, name, _)| name != "M");
        raw.modules.insert(0, (Source::Flag("module"), "M".into(), m));
    }
    if let Some(a) = flag("coeff", cli.coeff) {
        raw.coefficient = Some(a);
    }
    if let Some(f) = parsed("format", cli.format)? {
        raw.format = Some(f);
    }
    if let Some(e) = parsed("expect", cli.expect)? {
        raw.expect = Some(e);
    }
    for (slot, v, name) in [
        (&mut raw.n, cli.n, "n"),
        (&mut raw.length, cli.length, "length"),
        (&mut raw.bound, cli.bound, "bound"),
    ] {
        if let Some(v) = v {
            *slot = Some((Source::Flag(name), v));
        }
    }
    if let Some(s) = cli.seed {
        raw.seed = Some((Source::Flag("seed"), s));
    }
    raw.strict |= cli.strict;
    if let Some(cmd) = cli.command {
        let command = match cmd {
            Cmd::Resolve => Command::Resolve,
            Cmd::Ext => Command::Ext,
            Cmd::Schanuel => Command::Schanuel,
            Cmd::Check { condition } => Command::Check(condition.parse::<Condition>().expect("restricted by clap")),
            Cmd::Suite { id } => Command::Suite(id),
            Cmd::Reproduce { id } => Command::Reproduce(id),
            Cmd::List { what } => Command::List(if what == "suites" {
                ListTarget::Suites
            } else {
                ListTarget::Examples
            }),
        };
        raw.command = Some((Source::Flag("command"), command));
    }
    Ok(raw)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let config = match scenario(cli).and_then(RawScenario::resolve) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    match run(&config) {
        Ok(outcome) => {
            print!("{}", outcome.render(config.format));
            ExitCode::from(outcome.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID as u8)
        }
    }
}
