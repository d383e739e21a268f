use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use tableau_orders::embedding::{hom_dim_embeddings, Embedding, EmbeddingJson};
use tableau_orders::harness::{run_check, CheckName, OutputFormat, RunConfig};
use tableau_orders::orders::{box_table_lr, box_table_syt, dom_table_lr, dom_table_syt, hasse_dot};
use tableau_orders::{LrTableau, Partition, StandardTableau};

#[derive(Parser, Debug)]
#[command(name = "tableau-orders", version, about = "Box and dominance orders on tableaux")]
struct Cli {
    /// Worker threads; 0 picks the machine default.
    #[arg(long, global = true, env = "TABLEAU_ORDERS_WORKERS", default_value_t = 0)]
    workers: usize,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnumKind {
    SytShape,
    SytWeight,
    LrRook,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HasseKind {
    Syt,
    LrRook,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Box,
    Dom,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List tableaux, one JSON object per line.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(long)]
        r: Option<usize>,
        /// Outer shape, e.g. `5,4,3,2,1` (column heights).
        #[arg(long, visible_alias = "shape")]
        beta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Run a property check and print its report.
    Check {
        name: String,
        /// Restrict T_r checks to this single r; also caps r elsewhere.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        max_beta_weight: Option<usize>,
        #[arg(long)]
        max_height: Option<usize>,
        /// Comma-separated primes; the first is used by single-field checks.
        #[arg(long)]
        field: Option<String>,
        /// Largest r for the square-shape box check.
        #[arg(long)]
        f_box_max_r: Option<usize>,
        /// Read a full RunConfig from JSON; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Print the Hasse diagram of an order in DOT.
    Hasse {
        #[arg(value_enum)]
        kind: HasseKind,
        #[arg(long, value_enum)]
        order: Order,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, visible_alias = "shape")]
        beta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
    /// Print dim Hom(X, Z) for two embeddings given as JSON files.
    Hom { x: PathBuf, z: PathBuf },
}

/// Usage errors map to exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<T>(msg: impl Into<String>) -> anyhow::Result<T> {
    Err(Usage(msg.into()).into())
}

fn parse_partition(flag: &str, text: Option<&str>) -> anyhow::Result<Partition> {
    let Some(text) = text else {
        return usage(format!("--{flag} is required"));
    };
    let t = text.trim();
    let bracketed = if t.starts_with('[') { t.to_string() } else { format!("[{t}]") };
    match bracketed.parse() {
        Ok(p) => Ok(p),
        Err(e) => usage(format!("--{flag}: {e}")),
    }
}

fn required_r(r: Option<usize>) -> anyhow::Result<usize> {
    match r {
        Some(r) if r >= 1 => Ok(r),
        Some(_) => usage("--r must be positive"),
        None => usage("--r is required"),
    }
}

fn rook_elements(beta: &Partition, gamma: &Partition) -> anyhow::Result<Vec<LrTableau>> {
    match LrTableau::enumerate_rook(beta, gamma) {
        Ok(v) => Ok(v),
        Err(e) => usage(e.to_string()),
    }
}

struct Output {
    text: String,
    code: ExitCode,
}

fn enumerate(
    kind: EnumKind,
    r: Option<usize>,
    beta: Option<&str>,
    gamma: Option<&str>,
    format: Format,
) -> anyhow::Result<Output> {
    let lines: Vec<String> = match kind {
        EnumKind::SytShape => {
            let shape = parse_partition("beta", beta)?;
            lines_syt(&StandardTableau::enumerate(&shape), format)?
        }
        EnumKind::SytWeight => lines_syt(&StandardTableau::enumerate_weight(required_r(r)?), format)?,
        EnumKind::LrRook => {
            let beta = parse_partition("beta", beta)?;
            let gamma = parse_partition("gamma", gamma)?;
            rook_elements(&beta, &gamma)?
                .iter()
                .map(|t| match format {
                    Format::Text => Ok(t.picture()),
                    _ => serde_json::to_string(t),
                })
                .collect::<Result<_, _>>()?
        }
    };
    let mut text = lines.join("\n");
    if !text.is_empty() {
        text.push('\n');
    }
    Ok(Output {
        text,
        code: ExitCode::SUCCESS,
    })
}

fn lines_syt(ts: &[StandardTableau], format: Format) -> anyhow::Result<Vec<String>> {
    Ok(ts
        .iter()
        .map(|t| match format {
            Format::Text => Ok(t.to_string()),
            _ => serde_json::to_string(t),
        })
        .collect::<Result<_, _>>()?)
}

#[allow(clippy::too_many_arguments)]
fn check(
    name: &str,
    r: Option<usize>,
    max_beta_weight: Option<usize>,
    max_height: Option<usize>,
    field: Option<&str>,
    f_box_max_r: Option<usize>,
    config: Option<&PathBuf>,
    workers: usize,
    format: Format,
) -> anyhow::Result<Output> {
    let Ok(name) = name.parse::<CheckName>() else {
        let known: Vec<&str> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
        return usage(format!("unknown check {name:?}; known: {}", known.join(", ")));
    };
    let mut cfg = match config {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            match serde_json::from_str::<RunConfig>(&text) {
                Ok(c) => c,
                Err(e) => return usage(format!("{}: {e}", path.display())),
            }
        }
        None => RunConfig::default(),
    };
    if let Some(r) = r {
        cfg.min_weight_r = r;
        cfg.max_weight_r = r;
    }
    if let Some(w) = max_beta_weight {
        cfg.max_beta_weight = w;
    }
    if let Some(h) = max_height {
        cfg.max_height = h;
    }
    if let Some(b) = f_box_max_r {
        cfg.f_box_max_r = b;
    }
    if let Some(list) = field {
        let primes: Result<Vec<u32>, _> = list.split(',').map(|p| p.trim().parse()).collect();
        match primes {
            Ok(p) => cfg.field_primes = p,
            Err(e) => return usage(format!("--field: {e}")),
        }
    }
    if workers != 0 {
        cfg.worker_count = workers;
    }
    cfg.output_format = match format {
        Format::Json => OutputFormat::Json,
        Format::Dot => OutputFormat::Dot,
        Format::Text => OutputFormat::Text,
    };
    if let Err(e) = cfg.validate() {
        return usage(e.to_string());
    }
    let report = run_check(name, &cfg)?;
    let text = match format {
        Format::Text => {
            let mut s = format!(
                "{}: {} ({} instances, {:.2}s, digest {})\n",
                report.name,
                if report.passed { "pass" } else { "FAIL" },
                report.instances,
                report.elapsed_secs,
                report.digest
            );
            if let Some(c) = &report.counterexample {
                s.push_str(&format!("counterexample: {c}\n"));
            }
            s
        }
        _ => serde_json::to_string_pretty(&report)? + "\n",
    };
    Ok(Output {
        text,
        code: if report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) },
    })
}

fn hasse(
    kind: HasseKind,
    order: Order,
    r: Option<usize>,
    beta: Option<&str>,
    gamma: Option<&str>,
) -> anyhow::Result<Output> {
    let text = match kind {
        HasseKind::Syt => {
            let r = required_r(r)?;
            let table = match order {
                Order::Box => box_table_syt(r),
                Order::Dom => dom_table_syt(r),
            };
            hasse_dot(&table, &format!("T_{r}"), |t| t.to_string())?
        }
        HasseKind::LrRook => {
            let beta = parse_partition("beta", beta)?;
            let gamma = parse_partition("gamma", gamma)?;
            let elements = rook_elements(&beta, &gamma)?;
            let table = match order {
                Order::Box => box_table_lr(elements),
                Order::Dom => dom_table_lr(elements),
            };
            hasse_dot(&table, &format!("T_{beta}_{gamma}"), |t| t.to_string())?
        }
    };
    Ok(Output {
        text,
        code: ExitCode::SUCCESS,
    })
}

fn read_embedding(path: &PathBuf) -> anyhow::Result<Embedding> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let json: EmbeddingJson = match serde_json::from_str(&text) {
        Ok(j) => j,
        Err(e) => return usage(format!("{}: {e}", path.display())),
    };
    match Embedding::from_json(&json) {
        Ok(x) => Ok(x),
        Err(e) => usage(format!("{}: {e}", path.display())),
    }
}

fn hom(x: &PathBuf, z: &PathBuf) -> anyhow::Result<Output> {
    let (x, z) = (read_embedding(x)?, read_embedding(z)?);
    let d = match hom_dim_embeddings(&x, &z) {
        Ok(d) => d,
        Err(e) => return usage(e.to_string()),
    };
    Ok(Output {
        text: format!("{d}\n"),
        code: ExitCode::SUCCESS,
    })
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate { kind, r, beta, gamma } => enumerate(
            *kind,
            *r,
            beta.as_deref(),
            gamma.as_deref(),
            format.unwrap_or(Format::Json),
        ),
        Command::Check {
            name,
            r,
            max_beta_weight,
            max_height,
            field,
            f_box_max_r,
            config,
        } => check(
            name,
            *r,
            *max_beta_weight,
            *max_height,
            field.as_deref(),
            *f_box_max_r,
            config.as_ref(),
            cli.workers,
            format.unwrap_or(Format::Json),
        ),
        Command::Hasse { kind, order, r, beta, gamma } => {
            if matches!(format, Some(f) if f != Format::Dot) {
                return usage("hasse only emits --format dot");
            }
            hasse(*kind, *order, *r, beta.as_deref(), gamma.as_deref())
        }
        Command::Hom { x, z } => hom(x, z),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out_path = cli.out.clone();
    match run(cli) {
        Ok(out) => {
            let written = match &out_path {
                Some(p) => fs::write(p, &out.text).with_context(|| format!("writing {}", p.display())),
                None => std::io::stdout()
                    .write_all(out.text.as_bytes())
                    .context("writing stdout"),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
