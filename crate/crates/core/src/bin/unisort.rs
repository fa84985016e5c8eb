//! Command-line front end: every library capability behind one binary.
//!
//! Exit codes: 0 success / all checks pass, 1 assertion mismatch, 2 invalid
//! input, 3 resource limit exceeded.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use unisort::bijections::{self, MapVia};
use unisort::chc::build_chc;
use unisort::enumeration::{self, CountOptions};
use unisort::error::{Error, Result};
use unisort::paths::{self, Family, LatticePath};
use unisort::perm::{PatternSet, Permutation};
use unisort::render;
use unisort::serial;
use unisort::series;
use unisort::shapes;
use unisort::stacksort;

#[derive(Parser)]
#[command(name = "unisort", version, about = "Stack-sorting, uniquely sorted permutations, and their lattice-path bijections")]
struct Cli {
    /// Worker threads for parallel sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Override the brute-force size limit of the subcommand
    #[arg(long, global = true)]
    limit: Option<usize>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the stack-sorting map once
    Sort { perm: String },

    /// Count the preimages of a permutation under stack-sorting
    Fertility {
        perm: String,
        /// Also list every preimage
        #[arg(long)]
        list: bool,
    },

    /// Print the canonical hook configuration
    Chc {
        perm: String,
        /// Draw the plot with hook outlines
        #[arg(long)]
        render: bool,
    },

    /// Report whether a permutation is sorted / uniquely sorted
    Check { perm: String },

    /// List the shape classes a permutation belongs to
    Classify { perm: String },

    /// Map a class member to its lattice path
    Map {
        perm: String,
        #[arg(long)]
        via: MapViaArg,
    },

    /// Invert a lattice path back to its class member
    Unmap {
        path: String,
        #[arg(long)]
        via: MapViaArg,
    },

    /// Apply a structural decomposition
    Decompose {
        perm: String,
        #[arg(long)]
        via: DecomposeVia,
    },

    /// Sweep a uniquely sorted pattern-avoiding class
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Comma-separated patterns to avoid, e.g. 132,4312
        #[arg(long, default_value = "")]
        avoid: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Lines)]
        format: OutputFormat,
    },

    /// Tabulate class sizes for k = 0..=kmax with companion rows
    Count {
        #[arg(long)]
        kmax: usize,
        /// Comma-separated patterns; repeat for several classes
        #[arg(long, required = true)]
        avoid: Vec<String>,
        /// Restrict companion rows to one source (default: both)
        #[arg(long, value_enum)]
        compare: Option<CompareMode>,
    },

    /// Check every theorem's count or bijection statement
    Crosscheck {
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Allow the larger sweeps (length 13)
        #[arg(long)]
        slow: bool,
    },

    /// Print generating-function coefficients
    Series {
        #[arg(long)]
        name: SeriesName,
        #[arg(long, default_value_t = series::DEFAULT_ORDER)]
        terms: usize,
    },

    /// Generate or count lattice paths
    Paths {
        #[command(subcommand)]
        command: PathsCommand,
    },

    /// Draw a permutation plot or a path staircase
    Render {
        #[command(subcommand)]
        command: RenderCommand,
    },
}

#[derive(Subcommand)]
enum PathsCommand {
    /// List every path of the family at the given size
    Generate {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        k: usize,
    },
    /// Count the family at the given size
    Count {
        #[arg(long)]
        family: FamilyArg,
        #[arg(long)]
        k: usize,
        /// Use the closed form instead of generation
        #[arg(long)]
        formula: bool,
    },
}

#[derive(Subcommand)]
enum RenderCommand {
    /// Plot a permutation (hooks drawn when it is sorted)
    Perm { perm: String },
    /// Draw a path staircase
    Path {
        path: String,
        #[arg(long)]
        family: FamilyArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Lines,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompareMode {
    Formula,
    Bijection,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesName {
    Catalan,
    B,
    Btilde,
}

/// Wrapper so clap can parse `--via` through the library's `FromStr`.
#[derive(Clone, Copy)]
struct MapViaArg(MapVia);

impl std::str::FromStr for MapViaArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(MapViaArg)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeVia {
    #[value(name = "thm4.1")]
    Thm41,
    #[value(name = "thm7.1")]
    Thm71,
}

#[derive(Clone, Copy)]
struct FamilyArg(Family);

impl std::str::FromStr for FamilyArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(FamilyArg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: could not configure {jobs} workers: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn parse_perm(text: &str) -> Result<Permutation> {
    text.parse()
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Sort { perm } => {
            let pi = parse_perm(perm)?;
            let image = stacksort::stack_sort(&pi);
            if cli.json {
                emit(serial::perm_to_json(&image));
            } else {
                println!("{image}");
            }
        }
        Command::Fertility { perm, list } => {
            let pi = parse_perm(perm)?;
            let limit = cli.limit.unwrap_or(stacksort::DEFAULT_FERTILITY_LIMIT);
            if *list {
                let pre = stacksort::preimages_limited(&pi, limit)?;
                if cli.json {
                    emit(json!({
                        "perm": pi.entries(),
                        "fertility": pre.len(),
                        "preimages": pre.iter().map(|q| q.entries().to_vec()).collect::<Vec<_>>(),
                    }));
                } else {
                    println!("{}", pre.len());
                    for q in pre {
                        println!("{q}");
                    }
                }
            } else {
                let f = stacksort::fertility_limited(&pi, limit)?;
                if cli.json {
                    emit(json!({"perm": pi.entries(), "fertility": f}));
                } else {
                    println!("{f}");
                }
            }
        }
        Command::Chc { perm, render: draw } => {
            let pi = parse_perm(perm)?;
            let chc = build_chc(&pi).ok_or_else(|| {
                Error::Precondition(format!("{pi} is not sorted: no hook configuration exists"))
            })?;
            if cli.json {
                emit(serial::perm_to_json(&pi));
            } else {
                for hook in &chc.hooks {
                    println!("{hook}");
                }
                if *draw {
                    print!("{}", render::render_permutation(&pi, Some(&chc)));
                }
            }
        }
        Command::Check { perm } => {
            let pi = parse_perm(perm)?;
            let sorted = build_chc(&pi).is_some();
            let unique = stacksort::is_uniquely_sorted(&pi);
            if cli.json {
                emit(json!({
                    "perm": pi.entries(),
                    "descents": pi.descents().len(),
                    "sorted": sorted,
                    "uniquely_sorted": unique,
                }));
            } else {
                let verdict = if unique {
                    "uniquely sorted"
                } else if sorted {
                    "sorted, not uniquely"
                } else {
                    "unsorted"
                };
                println!("{pi}: {verdict}");
                println!(
                    "  descents: {} (need {} of {} adjacencies)",
                    pi.descents().len(),
                    (pi.len().saturating_sub(1)) / 2,
                    pi.len().saturating_sub(1)
                );
                println!(
                    "  hook configuration: {}",
                    if sorted { "found" } else { "none" }
                );
            }
        }
        Command::Classify { perm } => {
            let pi = parse_perm(perm)?;
            let classes = shapes::classify(&pi);
            if cli.json {
                emit(json!({
                    "perm": pi.entries(),
                    "classes": classes.iter().map(|c| c.name()).collect::<Vec<_>>(),
                }));
            } else if classes.is_empty() {
                println!("(none)");
            } else {
                for c in classes {
                    println!("{c}");
                }
            }
        }
        Command::Map { perm, via } => {
            let pi = parse_perm(perm)?;
            let path = via.0.apply(&pi)?;
            if cli.json {
                emit(serial::path_to_json(&path));
            } else {
                println!("{path}");
            }
        }
        Command::Unmap { path, via } => {
            let parsed = LatticePath::parse(path, via.0.family())?;
            let pi = via.0.invert(&parsed)?;
            if cli.json {
                emit(serial::perm_to_json(&pi));
            } else {
                println!("{pi}");
            }
        }
        Command::Decompose { perm, via } => {
            let pi = parse_perm(perm)?;
            match via {
                DecomposeVia::Thm41 => {
                    let (j, prefix, suffix) = bijections::modsvee_split(&pi)?;
                    if cli.json {
                        emit(json!({
                            "j": j,
                            "prefix": prefix.entries(),
                            "suffix": suffix.entries(),
                        }));
                    } else {
                        println!("j = {j}");
                        println!("prefix: {prefix}");
                        println!("suffix: {suffix}");
                    }
                }
                DecomposeVia::Thm71 => {
                    let (pi2, tau) = bijections::nice_decompose(&pi)?;
                    if cli.json {
                        emit(json!({"pi2": pi2.entries(), "tau": tau.entries()}));
                    } else {
                        println!("pi'': {pi2}");
                        println!("tau': {tau}");
                    }
                }
            }
        }
        Command::Enumerate { n, avoid, format } => {
            let patterns = PatternSet::parse(avoid)?;
            let limit = cli.limit.unwrap_or(enumeration::DEFAULT_ENUM_LIMIT);
            let members = enumeration::enumerate_class_limited(*n, &patterns, limit)?;
            let format = if cli.json { OutputFormat::Json } else { *format };
            match format {
                OutputFormat::Lines => {
                    for m in &members {
                        println!("{m}");
                    }
                }
                OutputFormat::Json => {
                    let arr: Vec<serde_json::Value> =
                        members.iter().map(serial::perm_to_json).collect();
                    emit(serde_json::Value::Array(arr));
                }
                OutputFormat::Csv => {
                    print!("{}", serial::perm_list_to_csv(&members));
                }
            }
        }
        Command::Count { kmax, avoid, compare } => {
            let sets = avoid
                .iter()
                .map(|s| PatternSet::parse(s))
                .collect::<Result<Vec<_>>>()?;
            let opts = CountOptions {
                limit: cli.limit.unwrap_or(enumeration::DEFAULT_ENUM_LIMIT),
                formula: !matches!(compare, Some(CompareMode::Bijection)),
                bijection: !matches!(compare, Some(CompareMode::Formula)),
            };
            let table = enumeration::count_table_with(*kmax, &sets, opts)?;
            if cli.json {
                emit(serde_json::to_value(&table).map_err(|e| {
                    Error::InvalidInput(format!("cannot encode table as JSON: {e}"))
                })?);
            } else {
                print!("{}", serial::count_table_to_csv(&table));
            }
        }
        Command::Crosscheck { kmax, slow } => {
            let limit = cli
                .limit
                .unwrap_or(if *slow { 13 } else { enumeration::DEFAULT_ENUM_LIMIT });
            let report = enumeration::cross_check(*kmax, limit)?;
            if cli.json {
                emit(serde_json::to_value(&report).map_err(|e| {
                    Error::InvalidInput(format!("cannot encode report as JSON: {e}"))
                })?);
            } else {
                for row in &report.rows {
                    println!(
                        "[{}] {}: {}",
                        if row.pass { "pass" } else { "FAIL" },
                        row.name,
                        row.detail
                    );
                }
            }
            if !report.all_pass() {
                return Ok(1);
            }
        }
        Command::Series { name, terms } => {
            let (label, s) = match name {
                SeriesName::Catalan => ("catalan", series::catalan_series(*terms)?),
                SeriesName::B => ("b", series::b_series(*terms)?),
                SeriesName::Btilde => ("btilde", series::btilde_series(*terms)?),
            };
            if cli.json {
                let coeffs = s
                    .coefficients()
                    .iter()
                    .map(|&c| {
                        i64::try_from(c).map_err(|_| {
                            Error::Arithmetic(format!("coefficient {c} exceeds JSON integer range"))
                        })
                    })
                    .collect::<Result<Vec<i64>>>()?;
                emit(json!({"name": label, "terms": terms, "coefficients": coeffs}));
            } else {
                let text: Vec<String> =
                    s.coefficients().iter().map(|c| c.to_string()).collect();
                println!("{}", text.join(", "));
            }
        }
        Command::Paths { command } => match command {
            PathsCommand::Generate { family, k } => {
                let limit = cli.limit.unwrap_or(paths::DEFAULT_GENERATION_LIMIT);
                let all = paths::generate_all_limited(family.0, *k, limit)?;
                if cli.json {
                    let arr: Vec<serde_json::Value> =
                        all.iter().map(serial::path_to_json).collect();
                    emit(serde_json::Value::Array(arr));
                } else {
                    for path in all {
                        println!("{path}");
                    }
                }
            }
            PathsCommand::Count { family, k, formula } => {
                let count: i128 = if *formula {
                    match family.0 {
                        Family::Dyck => paths::catalan(*k)?,
                        Family::SMotzkin => paths::three_catalan(*k)?,
                        Family::Schroeder => paths::schroeder(*k)?,
                        Family::LittleSchroeder => paths::little_schroeder(*k)?,
                        Family::Motzkin => {
                            return Err(Error::InvalidInput(
                                "no closed form is wired up for motzkin; drop --formula".into(),
                            ))
                        }
                    }
                } else {
                    let limit = cli.limit.unwrap_or(paths::DEFAULT_GENERATION_LIMIT);
                    paths::generate_all_limited(family.0, *k, limit)?.len() as i128
                };
                if cli.json {
                    emit(json!({
                        "family": family.0.name(),
                        "k": k,
                        "count": i64::try_from(count).map_err(|_| {
                            Error::Arithmetic(format!("count {count} exceeds JSON integer range"))
                        })?,
                    }));
                } else {
                    println!("{count}");
                }
            }
        },
        Command::Render { command } => match command {
            RenderCommand::Perm { perm } => {
                let pi = parse_perm(perm)?;
                let chc = build_chc(&pi);
                print!("{}", render::render_permutation(&pi, chc.as_ref()));
            }
            RenderCommand::Path { path, family } => {
                let parsed = LatticePath::parse(path, family.0)?;
                print!("{}", render::render_path(&parsed));
            }
        },
    }
    Ok(0)
}
