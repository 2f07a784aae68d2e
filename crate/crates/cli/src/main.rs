//! `krchar`: characters of Kirillov-Reshetikhin modules from the command line.

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use krchar_core::crystal_cn::{enumerate_column_tableaux, tensor_paths, ColumnTableau};
use krchar_core::{
    kr_initial_data, uniqueness_scan, AlgebraType, CharRing, CharacterRecord, Error,
    FormalCharacter, InitialData, MRecord, QTable, Series, Weight,
};
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_USAGE: u8 = 2;
const EXIT_RELATION: u8 = 3;
const EXIT_NON_DIVISIBLE: u8 = 4;
const EXIT_SCAN: u8 = 5;

#[derive(Parser)]
#[command(
    name = "krchar",
    version,
    about = "Q-system characters of Kirillov-Reshetikhin modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose V(left) (x) V(right).
    Tensor {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Highest weight of the first factor, e.g. 1,0,2.
        #[arg(long, value_parser = parse_weight)]
        left: Weight,
        #[arg(long, value_parser = parse_weight)]
        right: Weight,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compute Q_m(node).
    Qchar {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        node: usize,
        #[arg(long)]
        m: u32,
        /// JSON list of {a, b, M} records overriding the KR data.
        #[arg(long)]
        init: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the Q-system relation at every node for m = 1..=max-m.
    Verify {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long, default_value_t = 3)]
        max_m: u32,
        #[arg(long)]
        init: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the uniqueness scan over the free multiplicities.
    Scan {
        #[command(flatten)]
        alg: AlgebraArgs,
        /// Largest trial value of each M.
        #[arg(long, default_value_t = 2)]
        trials: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// List column tableaux of height k for C_n, or tensor V(lambda) with V(omega_k).
    Tableaux {
        /// Rank n of C_n.
        rank: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_parser = parse_weight)]
        lambda: Option<Weight>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct AlgebraArgs {
    /// Series letter: A, B, C, D or G.
    #[arg(value_parser = parse_series, required_unless_present = "series_flag")]
    series: Option<Series>,
    #[arg(required_unless_present = "rank_flag")]
    rank: Option<usize>,
    #[arg(long = "series", id = "series_flag", value_parser = parse_series, conflicts_with = "series")]
    series_flag: Option<Series>,
    #[arg(long = "rank", id = "rank_flag", conflicts_with = "rank")]
    rank_flag: Option<usize>,
}

impl AlgebraArgs {
    fn algebra(&self) -> Result<AlgebraType, Failure> {
        let series = self
            .series
            .or(self.series_flag)
            .ok_or_else(|| usage("missing series"))?;
        let rank = self
            .rank
            .or(self.rank_flag)
            .ok_or_else(|| usage("missing rank"))?;
        AlgebraType::new(series, rank).map_err(|e| usage(e.to_string()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_series(s: &str) -> Result<Series, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_weight(s: &str) -> Result<Weight, String> {
    s.trim_matches(|c| c == '(' || c == ')' || c == '[' || c == ']')
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i32>()
                .map_err(|e| format!("bad coordinate {x:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Weight::new)
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        error: anyhow!(msg.into()),
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::NonDivisible(_) | Error::NonDivisibleAt { .. }) => EXIT_NON_DIVISIBLE,
            _ => 1,
        };
        Failure { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn emit(out: &OutputArgs, text: String) -> Result<(), Failure> {
    match &out.output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::from),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .context("writing standard output")
                .map_err(Failure::from)
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut s = serde_json::to_string_pretty(value).context("serializing")?;
    s.push('\n');
    Ok(s)
}

fn check_weight(alg: AlgebraType, w: &Weight) -> Result<(), Failure> {
    if w.rank() != alg.rank() {
        return Err(usage(format!(
            "weight {w} has {} coordinates, {alg} needs {}",
            w.rank(),
            alg.rank()
        )));
    }
    if !w.is_dominant() {
        return Err(usage(format!("weight {w} is not dominant")));
    }
    Ok(())
}

fn load_init(alg: AlgebraType, path: Option<&Path>) -> Result<InitialData, Failure> {
    match path {
        None => Ok(kr_initial_data(alg)?),
        Some(p) => {
            let text =
                std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            let records: Vec<MRecord> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", p.display()))?;
            InitialData::from_records(alg, &records).map_err(|e| usage(e.to_string()))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QcharReport {
    algebra: AlgebraType,
    m: u32,
    node: usize,
    init: Vec<MRecord>,
    character: CharacterRecord,
}

#[derive(Serialize, Deserialize)]
struct RelationCheck {
    m: u32,
    node: usize,
    holds: bool,
}

#[derive(Serialize, Deserialize)]
struct VerifyReport {
    algebra: AlgebraType,
    max_m: u32,
    init: Vec<MRecord>,
    checks: Vec<RelationCheck>,
    passed: bool,
}

#[derive(Serialize, Deserialize)]
struct TableauRecord {
    letters: Vec<String>,
    weight: Weight,
}

#[derive(Serialize, Deserialize)]
struct PathRecord {
    tableau: Vec<String>,
    result: Weight,
}

fn letters(t: &ColumnTableau) -> Vec<String> {
    t.letters().iter().map(|l| l.to_string()).collect()
}

/// Cached KR characters, keyed by algebra and cell, when `KRCHAR_CACHE_DIR` is set.
fn cache_path(alg: AlgebraType, m: u32, node: usize) -> Option<PathBuf> {
    let dir = std::env::var_os("KRCHAR_CACHE_DIR")?;
    Some(PathBuf::from(dir).join(format!("{alg}-Q{m}-{node}.json")))
}

fn kr_q_char(ring: &CharRing, m: u32, node: usize) -> Result<FormalCharacter, Failure> {
    let alg = ring.algebra();
    let path = cache_path(alg, m, node);
    if let Some(p) = &path {
        if let Ok(text) = std::fs::read_to_string(p) {
            if let Ok(c) = serde_json::from_str::<FormalCharacter>(&text) {
                if c.algebra() == alg {
                    return Ok(c);
                }
            }
        }
    }
    let mut table = QTable::kirillov_reshetikhin(ring)?;
    let c = (*table.q_char(m, node)?).clone();
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        }
        std::fs::write(p, serde_json::to_string(&c).context("serializing")?)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(c)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Tensor {
            alg,
            left,
            right,
            out,
        } => {
            let alg = alg.algebra()?;
            check_weight(alg, &left)?;
            check_weight(alg, &right)?;
            let ring = CharRing::new(alg);
            let c = ring.tensor(&ring.irreducible(&left)?, &ring.irreducible(&right)?)?;
            let text = match out.format {
                Format::Text => format!("V{left} x V{right} = {c}\n"),
                Format::Json => json(&c)?,
            };
            emit(&out, text)
        }
        Command::Qchar {
            alg,
            node,
            m,
            init,
            out,
        } => {
            let alg = alg.algebra()?;
            if node == 0 || node > alg.rank() {
                return Err(usage(format!("node {node} is outside 1..={}", alg.rank())));
            }
            let data = load_init(alg, init.as_deref())?;
            let ring = CharRing::new(alg);
            let c = if init.is_none() {
                kr_q_char(&ring, m, node)?
            } else {
                (*QTable::new(&ring, data.clone())?.q_char(m, node)?).clone()
            };
            let text = match out.format {
                Format::Text => format!("Q_{m}({node}) = {c}\n"),
                Format::Json => json(&QcharReport {
                    algebra: alg,
                    m,
                    node,
                    init: data.to_records(),
                    character: CharacterRecord::from(&c),
                })?,
            };
            emit(&out, text)
        }
        Command::Verify {
            alg,
            max_m,
            init,
            out,
        } => {
            let alg = alg.algebra()?;
            if max_m == 0 {
                return Err(usage("--max-m must be at least 1"));
            }
            let data = load_init(alg, init.as_deref())?;
            let ring = CharRing::new(alg);
            let mut table = QTable::new(&ring, data.clone())?;
            let mut checks = Vec::new();
            for m in 1..=max_m {
                for node in 1..=alg.rank() {
                    let holds = table.verify_relation(m, node)?;
                    checks.push(RelationCheck { m, node, holds });
                }
            }
            let passed = checks.iter().all(|c| c.holds);
            let text = match out.format {
                Format::Text => {
                    let mut s = String::new();
                    for c in &checks {
                        s.push_str(&format!(
                            "m={} node={}: {}\n",
                            c.m,
                            c.node,
                            if c.holds { "ok" } else { "FAILS" }
                        ));
                    }
                    let bad = checks.iter().filter(|c| !c.holds).count();
                    s.push_str(&format!(
                        "{} of {} relations hold\n",
                        checks.len() - bad,
                        checks.len()
                    ));
                    s
                }
                Format::Json => json(&VerifyReport {
                    algebra: alg,
                    max_m,
                    init: data.to_records(),
                    checks,
                    passed,
                })?,
            };
            emit(&out, text)?;
            if passed {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_RELATION,
                    error: anyhow!("relation check failed"),
                })
            }
        }
        Command::Scan { alg, trials, out } => {
            let alg = alg.algebra()?;
            if trials < 2 {
                return Err(usage("--trials must be at least 2"));
            }
            if matches!(alg.series(), Series::G) {
                return Err(usage(format!("no uniqueness scan for {alg}")));
            }
            let ring = CharRing::new(alg);
            let report = uniqueness_scan(&ring, trials)?;
            let text = match out.format {
                Format::Text => format!("{}\n", report.summary()),
                Format::Json => json(&report)?,
            };
            emit(&out, text)?;
            if report.passed() {
                Ok(())
            } else {
                Err(Failure {
                    code: EXIT_SCAN,
                    error: anyhow!("the scan did not reproduce the KR data"),
                })
            }
        }
        Command::Tableaux {
            rank,
            k,
            lambda,
            out,
        } => {
            let alg = AlgebraType::new(Series::C, rank).map_err(|e| usage(e.to_string()))?;
            if k == 0 || k > rank {
                return Err(usage(format!("height {k} is outside 1..={rank}")));
            }
            match lambda {
                None => {
                    let ts = enumerate_column_tableaux(rank, k)?;
                    let text = match out.format {
                        Format::Text => {
                            let mut s = String::new();
                            for t in &ts {
                                s.push_str(&format!("{t}  weight {}\n", t.weight(rank)));
                            }
                            s.push_str(&format!("{} tableaux\n", ts.len()));
                            s
                        }
                        Format::Json => json(
                            &ts.iter()
                                .map(|t| TableauRecord {
                                    letters: letters(t),
                                    weight: t.weight(rank),
                                })
                                .collect::<Vec<_>>(),
                        )?,
                    };
                    emit(&out, text)
                }
                Some(lambda) => {
                    check_weight(alg, &lambda)?;
                    let paths = tensor_paths(alg, &lambda, k)?;
                    let c = FormalCharacter::from_terms(
                        alg,
                        paths.iter().map(|(_, y)| (y.to_weight(), 1)),
                    )?;
                    let text = match out.format {
                        Format::Text => {
                            let mut s = String::new();
                            for (t, y) in &paths {
                                s.push_str(&format!("{t} -> V{}\n", y.to_weight()));
                            }
                            s.push_str(&format!("V{lambda} x V_{k} = {c}\n"));
                            s
                        }
                        Format::Json => json(
                            &paths
                                .iter()
                                .map(|(t, y)| PathRecord {
                                    tableau: letters(t),
                                    result: y.to_weight(),
                                })
                                .collect::<Vec<_>>(),
                        )?,
                    };
                    emit(&out, text)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match f.error.downcast_ref::<Error>() {
                Some(Error::NonDivisibleAt { m, node, detail }) => {
                    eprintln!("error: NON_DIVISIBLE at m={m}, node={node}: {detail}")
                }
                _ => eprintln!("error: {:#}", f.error),
            }
            if f.code == EXIT_USAGE {
                eprintln!("run `krchar --help` for usage");
            }
            ExitCode::from(f.code)
        }
    }
}
