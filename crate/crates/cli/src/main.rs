//! `sparkforge`: exact spark, Deligne and Chern-Weil computations from the command line.
//!
//! Exit codes: 0 success, 1 malformed input, 2 falsified identity (a residual file is written).

mod commands;
mod fixtures;
mod schema;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::RngCore;
use serde_json::Value;

use sparkforge_core::spark_core::Tier;

use commands::{FormArgs, Outcome, Source};
use schema::ModelFile;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Malformed(String),
    #[error(transparent)]
    Core(#[from] sparkforge_core::Error),
    #[error("{path}: {err}")]
    Io { path: PathBuf, err: std::io::Error },
}

#[derive(Parser)]
#[command(name = "sparkforge", version, about = "Exact spark-complex, Deligne and Chern-Weil computations")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Where to write the residual artifact when an identity is falsified.
    #[arg(long, global = true, default_value = "sparkforge-residual.json")]
    residual: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TierArg {
    Strict,
    Model,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file: d^2 = 0, chain maps, the three triple axioms.
    Validate { file: String },
    /// Cohomology invariants in one degree.
    Cohomology {
        file: String,
        #[arg(long)]
        degree: usize,
    },
    /// Spark class group in one degree.
    SparkGroup {
        file: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value = "strict")]
        tier: TierArg,
        /// Hodge level of a Cech model (default: no truncation).
        #[arg(long)]
        level: Option<usize>,
    },
    /// The nine-group grid and its exactness.
    Grid {
        file: String,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Product of two random spark classes, named `<degree>:<seed>`.
    Product {
        file: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
    },
    /// Deligne cohomology of a Cech model.
    Deligne {
        file: String,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Compare the spark and Beilinson product routes on random Deligne cocycles.
    DeligneCompare {
        file: String,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Transgression identities for a scenario file or generator
    /// (`unipotent`, `unipotent-metric`, `general`, `holomorphic`).
    Transgress {
        scenario: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        trunc: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        hol_cap: Option<u32>,
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// The (0, 2k-1) part of the transgression against its closed form.
    Nadel {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 2)]
        trunc: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        hol_cap: Option<u32>,
        #[arg(long, default_value_t = 2)]
        size: usize,
    },
    /// List or export the shipped fixtures.
    Fixtures {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum FixtureAction {
    List,
    /// Write `<name>.json` (or every fixture with `--all`) into `--out`.
    Export {
        name: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "fixtures")]
        out: PathBuf,
    },
}

/// Reads a model file, falling back to a shipped fixture of the same base name.
fn load(arg: &str) -> Result<Source, CliError> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|err| CliError::Io { path: path.into(), err })?;
        let file = ModelFile::from_json(&text).map_err(|e| CliError::Malformed(format!("{arg}: {e}")))?;
        return Ok(Source { label: arg.into(), file });
    }
    match fixtures::find(arg) {
        Some(f) => Ok(Source { label: f.name.into(), file: f.file() }),
        None => Err(CliError::Malformed(format!("{arg}: no such file or fixture"))),
    }
}

/// Random `(p, q, k, l)` with `p, q <= 2` and `k, l <= 4`.
pub fn draw_deligne_case(rng: &mut dyn RngCore) -> (usize, usize, usize, usize) {
    let mut pick = |n: u32| 1 + (rng.next_u32() % n) as usize;
    (pick(2), pick(2), pick(4), pick(4))
}

fn fixtures_cmd(action: FixtureAction) -> Result<Outcome, CliError> {
    let mut out = Outcome::empty("fixtures");
    match action {
        FixtureAction::List => {
            let mut list = Vec::new();
            for f in fixtures::FIXTURES {
                out.text.push(format!("{:<18} {}", f.name, f.about));
                list.push(serde_json::json!({"name": f.name, "about": f.about}));
            }
            out.report.insert("fixtures".into(), list.into());
        }
        FixtureAction::Export { name, all, out: dir } => {
            let chosen: Vec<&fixtures::Fixture> = match (name, all) {
                (None, true) => fixtures::FIXTURES.iter().collect(),
                (Some(n), false) => vec![fixtures::find(&n).ok_or_else(|| CliError::Malformed(format!("unknown fixture {n:?}")))?],
                _ => return Err(CliError::Malformed("give exactly one of <name> and --all".into())),
            };
            std::fs::create_dir_all(&dir).map_err(|err| CliError::Io { path: dir.clone(), err })?;
            let mut written = Vec::new();
            for f in chosen {
                let path = dir.join(format!("{}.json", f.name));
                std::fs::write(&path, f.file().to_json()).map_err(|err| CliError::Io { path: path.clone(), err })?;
                out.text.push(format!("wrote {}", path.display()));
                written.push(Value::from(path.display().to_string()));
            }
            out.report.insert("written".into(), written.into());
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Validate { file } => commands::validate(&load(&file)?),
        Command::Cohomology { file, degree } => commands::cohomology(&load(&file)?, degree),
        Command::SparkGroup { file, degree, tier, level } => {
            let tier = match tier {
                TierArg::Strict => Tier::Strict,
                TierArg::Model => Tier::Model,
            };
            commands::spark_group(&load(&file)?, degree, tier, level)
        }
        Command::Grid { file, degree, level } => commands::grid(&load(&file)?, degree, level),
        Command::Product { file, alpha, beta } => commands::product(&load(&file)?, &alpha, &beta),
        Command::Deligne { file, level, degree } => commands::deligne(&load(&file)?, level, degree),
        Command::DeligneCompare { file, trials, seed } => commands::deligne_compare(&load(&file)?, trials, seed),
        Command::Transgress { scenario, k, dim, trunc, seed, hol_cap, size } => {
            let args = FormArgs { k, dim, trunc, seed, hol_cap, size };
            let generator = matches!(scenario.as_str(), "unipotent" | "unipotent-metric" | "general" | "holomorphic");
            let src = if generator { None } else { Some(load(&scenario)?) };
            commands::transgress(&scenario, src.as_ref(), &args)
        }
        Command::Nadel { k, dim, trunc, seed, hol_cap, size } => commands::nadel_cmd(&FormArgs { k: Some(k), dim, trunc, seed, hol_cap, size }),
        Command::Fixtures { action } => fixtures_cmd(action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (json, residual_path) = (cli.json, cli.residual.clone());
    let mut out = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let falsified = out.residual.is_some();
    if let Some(res) = out.residual.take() {
        let mut body = serde_json::to_string_pretty(&res).expect("values serialize");
        body.push('\n');
        if let Err(err) = std::fs::write(&residual_path, body) {
            eprintln!("error: {}: {err}", residual_path.display());
        }
        out.report.insert("residual_artifact".into(), residual_path.display().to_string().into());
        out.text.push(format!("FALSIFIED: residual written to {}", residual_path.display()));
    }
    out.report.insert("status".into(), if falsified { "falsified" } else { "ok" }.into());
    if json {
        println!("{}", serde_json::to_string_pretty(&Value::Object(out.report)).expect("values serialize"));
    } else {
        for l in &out.text {
            println!("{l}");
        }
    }
    ExitCode::from(if falsified { 2 } else { 0 })
}
