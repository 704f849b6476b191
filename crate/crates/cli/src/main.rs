use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use amalgam_cli::catalog::catalog_statistics;
use amalgam_cli::{
    generate_catalog, run_suites, Bounds, CatalogError, Compiled, Format, InstanceError,
    InstanceSpec, RunOptions, Suite,
};
use amalgam_core::spectrum::amalgam_spec_report;
use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "amalgam",
    version,
    about = "Exhaustive checks on amalgamated algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Run suites over instance files or a generated catalog.
    Check {
        /// An instance file, or a directory whose *.json files are read in name order.
        #[arg(long, required_unless_present = "catalog")]
        instances: Option<PathBuf>,
        /// Generate the catalog in memory from a bounds file, or `default`.
        #[arg(long, conflicts_with = "instances")]
        catalog: Option<String>,
        /// Comma-separated suite names; defaults to every applicable suite.
        #[arg(long, value_delimiter = ',')]
        suites: Option<Vec<Suite>>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Largest ring carrier any instance may build.
        #[arg(long, env = "AMALGAM_CAP", default_value_t = amalgam_core::ring::DEFAULT_CAP)]
        cap: usize,
        /// Record per-suite wall-clock times (the report is then no longer reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write the catalog as one instance file per entry.
    Catalog {
        /// Bounds file; the defaults apply to omitted fields.
        #[arg(long)]
        bounds: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the prime spectrum of a finite instance's amalgamation.
    Spec {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, env = "AMALGAM_CAP", default_value_t = amalgam_core::ring::DEFAULT_CAP)]
        cap: usize,
    },
}

enum Failure {
    Usage(anyhow::Error),
    Cap(anyhow::Error),
}

impl From<InstanceError> for Failure {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::Cap(_) => Failure::Cap(e.into()),
            e => Failure::Usage(e.into()),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Cap { .. } => Failure::Cap(e.into()),
            e => Failure::Usage(e.into()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn read_spec(path: &Path) -> Result<InstanceSpec, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    InstanceSpec::from_json(&text).map_err(|e| match e {
        InstanceError::Cap(_) => Failure::Cap(anyhow!("{}: {e}", path.display())),
        e => Failure::Usage(anyhow!("{}: {e}", path.display())),
    })
}

fn load_instances(path: &Path) -> Result<Vec<InstanceSpec>, Failure> {
    if !path.is_dir() {
        return Ok(vec![read_spec(path)?]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .with_context(|| format!("listing {}", path.display()))?
        .map(|entry| entry.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .with_context(|| format!("listing {}", path.display()))?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    files.iter().map(|p| read_spec(p)).collect()
}

fn load_bounds(path: Option<&Path>) -> Result<Bounds, Failure> {
    let Some(path) = path else {
        return Ok(Bounds::default());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text)
        .with_context(|| format!("parsing bounds {}", path.display()))
        .map_err(Failure::Usage)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Check {
            instances,
            catalog,
            suites,
            report,
            format,
            workers,
            cap,
            timings,
        } => {
            let specs = match (instances, catalog) {
                (Some(path), _) => load_instances(&path)?,
                (None, Some(bounds)) => {
                    let bounds = if bounds == "default" {
                        Bounds::default()
                    } else {
                        load_bounds(Some(Path::new(&bounds)))?
                    };
                    generate_catalog(&bounds)?
                }
                (None, None) => unreachable!("clap requires one source"),
            };
            let opts = RunOptions {
                suites,
                workers,
                cap,
                timings,
            };
            let result = run_suites(&specs, &opts)?;
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Table => Format::Table,
            };
            let text = result.render(format);
            match report {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => print!("{text}"),
            }
            Ok(if result.any_falsified() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Catalog { bounds, out } => {
            let bounds = load_bounds(bounds.as_deref())?;
            let specs = generate_catalog(&bounds)?;
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            for (i, spec) in specs.iter().enumerate() {
                let file = out.join(format!("{i:05}-{}.json", spec.name));
                fs::write(&file, spec.to_json() + "\n")
                    .with_context(|| format!("writing {}", file.display()))?;
            }
            for (kind, n) in catalog_statistics(&specs) {
                println!("{kind}: {n}");
            }
            println!("total: {}", specs.len());
            Ok(ExitCode::SUCCESS)
        }
        Command::Spec { instance, cap } => {
            let spec = read_spec(&instance)?;
            match spec.compile(cap)? {
                Compiled::Finite(d) => {
                    let report = amalgam_spec_report(&d)
                        .map_err(|e| anyhow!("spectrum computation failed: {e}"))?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("spec reports serialize")
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Compiled::Corrupted { at, error } => {
                    eprintln!("{at}: {error}");
                    Ok(ExitCode::from(1))
                }
                _ => Err(Failure::Usage(anyhow!(
                    "spec needs a finite instance, got kind {}",
                    spec.body.kind()
                ))),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(e)) => {
            eprintln!("resource cap: {e:#}");
            ExitCode::from(3)
        }
    }
}
