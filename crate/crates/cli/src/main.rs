use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use strip_ph::bench::{self, Scope};
use strip_ph::complex::{self, FilteredComplex};
use strip_ph::f2::boundary_matrix;
use strip_ph::generators::{generate, Variant};
use strip_ph::realization::{self, DeltaSchedule, RealizationError};
use strip_ph::reduction::{diagram, extract_pairs, reduce, Algorithm, PersistenceDiagram};

#[derive(Parser)]
#[command(name = "strip-ph", version, about = "Boundary-matrix reduction on strip complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write X(n) or Y(n) as a filtered complex.
    Generate {
        variant: Variant,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Reduce a boundary matrix and report the addition counters.
    Reduce {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "standard")]
        algorithm: Algorithm,
        #[arg(long, default_value = "full")]
        scope: Scope,
        /// Print every column addition.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Print persistence diagrams; all three algorithms must agree.
    Diagram {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Sweep n and record counters per algorithm.
    Bench {
        variant: Variant,
        #[arg(long, default_value_t = 1)]
        min_n: usize,
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, value_delimiter = ',', default_value = "standard,twist,lookahead")]
        algorithms: Vec<Algorithm>,
        #[arg(long, default_value = "full")]
        scope: Scope,
        #[arg(long, default_value = "csv")]
        format: Format,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Log-log growth fit of a bench CSV (`-` for standard input).
    Fit {
        input: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Embed the 1-skeleton of a flag complex as a point cloud.
    Realize {
        #[command(flatten)]
        target: RealizeTarget,
        #[arg(long, default_value = "text")]
        format: Format,
        #[arg(long, default_value = "-")]
        output: PathBuf,
    },
    /// Realize and check the Vietoris-Rips round trip.
    Verify {
        #[command(flatten)]
        target: RealizeTarget,
    },
}

#[derive(Args)]
struct Source {
    /// Complex file (text, or JSON when the name ends in .json).
    #[arg(long, conflicts_with = "variant")]
    input: Option<PathBuf>,
    #[arg(long, requires = "n")]
    variant: Option<Variant>,
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Args)]
struct RealizeTarget {
    variant: Variant,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "linear")]
    schedule: DeltaSchedule,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?} (expected text, json or csv)")),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: 1, message: message.to_string() }
    }

    fn verification(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }
}

impl From<RealizationError> for Failure {
    fn from(e: RealizationError) -> Self {
        let code = match e {
            RealizationError::ThresholdUnderflow { .. } => 3,
            RealizationError::NotFlag(_) | RealizationError::NotPositiveDefinite { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Generate { variant, n, format, output } => {
            let labeled = generate(variant, n).map_err(Failure::usage)?;
            let text = match format {
                Format::Text => complex::serialize_text_with_comments(&labeled.complex, &labeled.comments()),
                Format::Json => complex::serialize_json(&labeled.complex),
                Format::Csv => return Err(Failure::usage("generate supports text or json")),
            };
            write_output(&output, &text)
        }
        Command::Reduce { source, algorithm, scope, trace, format } => {
            let c = load(&source)?;
            let result = reduce(algorithm, &boundary_matrix(&c), &c).map_err(Failure::usage)?;
            let counter = match scope.target_dimension() {
                None => result.counter,
                Some(p) => result.counter_for_targets(|j| c.dimension_of(j) == p),
            };
            let mut out = String::new();
            match format {
                Format::Text => {
                    if trace {
                        for line in result.trace_lines() {
                            out.push_str(&line);
                            out.push('\n');
                        }
                    }
                    out.push_str(&format!(
                        "algorithm {algorithm}\nscope {scope}\nsimplices {}\ncolumn_additions {}\nfield_additions {}\nclears {}\n",
                        c.len(),
                        counter.column_additions,
                        counter.field_additions,
                        result.clears()
                    ));
                }
                Format::Json => {
                    let mut value = serde_json::json!({
                        "algorithm": algorithm,
                        "scope": scope,
                        "simplices": c.len(),
                        "column_additions": counter.column_additions,
                        "field_additions": counter.field_additions,
                        "clears": result.clears(),
                    });
                    if trace {
                        value["trace"] = serde_json::json!(result.trace_lines());
                    }
                    out = serde_json::to_string_pretty(&value).expect("json") + "\n";
                }
                Format::Csv => return Err(Failure::usage("reduce supports text or json")),
            }
            write_output(Path::new("-"), &out)
        }
        Command::Diagram { source, format, output } => {
            let c = load(&source)?;
            let matrix = boundary_matrix(&c);
            let diagrams = Algorithm::ALL
                .iter()
                .map(|&a| {
                    let r = reduce(a, &matrix, &c).map_err(Failure::usage)?;
                    Ok(diagram(&extract_pairs(&r, &c).map_err(Failure::usage)?, None))
                })
                .collect::<Result<Vec<PersistenceDiagram>, Failure>>()?;
            if diagrams.iter().any(|d| d != &diagrams[0]) {
                return Err(Failure::verification("algorithms disagree on the diagram"));
            }
            let text = match format {
                Format::Text => diagrams[0].render(),
                Format::Json => serde_json::to_string_pretty(&diagrams[0].dimensions).expect("json") + "\n",
                Format::Csv => return Err(Failure::usage("diagram supports text or json")),
            };
            write_output(&output, &text)
        }
        Command::Bench { variant, min_n, max_n, step, algorithms, scope, format, output } => {
            let sizes = bench::sweep_sizes(min_n, max_n, step).map_err(Failure::usage)?;
            let records = bench::run_sweep(variant, &sizes, &algorithms, scope).map_err(Failure::usage)?;
            let text = match format {
                Format::Csv => bench::to_csv(&records).map_err(Failure::usage)?,
                Format::Json => bench::to_json(&records) + "\n",
                Format::Text => return Err(Failure::usage("bench supports csv or json")),
            };
            write_output(&output, &text)
        }
        Command::Fit { input, format } => {
            let records = bench::parse_csv(&read_input(&input)?).map_err(Failure::usage)?;
            let reports = bench::fit(&records).map_err(Failure::usage)?;
            let text = match format {
                Format::Text => reports
                    .iter()
                    .map(|r| {
                        format!(
                            "{} {} rows {} slope {:.4} intercept {:.4} residual {:.4}\n",
                            r.algorithm, r.scope, r.rows, r.slope, r.intercept, r.residual
                        )
                    })
                    .collect(),
                Format::Json => serde_json::to_string_pretty(&reports).expect("json") + "\n",
                Format::Csv => return Err(Failure::usage("fit supports text or json")),
            };
            write_output(Path::new("-"), &text)
        }
        Command::Realize { target, format, output } => {
            let c = flag_target(&target)?;
            let r = realization::realize(&realization::one_skeleton(&c), target.schedule)?;
            let text = match format {
                Format::Text => r.to_text(),
                Format::Json => r.to_json() + "\n",
                Format::Csv => return Err(Failure::usage("realize supports text or json")),
            };
            write_output(&output, &text)
        }
        Command::Verify { target } => {
            let c = flag_target(&target)?;
            let report = realization::verify_complex_realization(&c, target.schedule)?;
            println!(
                "points {}\nstages {}\ngershgorin_row_sum {:.6e}\nmax_norm_error {:.3e}\nmax_distance_error {:.3e}\nmin_threshold_gap {:.3e}\nmin_decision_margin {:.3e}\nh1_points {}",
                report.n_points,
                report.stages,
                report.gershgorin_row_sum,
                report.max_norm_error,
                report.max_distance_error,
                report.min_threshold_gap,
                report.min_decision_margin,
                report.h1_clique.len()
            );
            let mismatches = report.mismatches();
            if mismatches.is_empty() {
                println!("ok");
                Ok(())
            } else {
                Err(Failure::verification(mismatches.join("; ")))
            }
        }
    }
}

fn flag_target(target: &RealizeTarget) -> Result<FilteredComplex, Failure> {
    let c = generate(target.variant, target.n).map_err(Failure::usage)?.complex;
    let check = realization::flag_check(&c);
    match check.counterexample {
        None => Ok(c),
        Some(ex) => Err(Failure::verification(format!(
            "not a flag complex: 3-clique {:?} complete at level {} is not filled at that level",
            ex.vertices, ex.level
        ))),
    }
}

fn load(source: &Source) -> Result<FilteredComplex, Failure> {
    match (&source.input, source.variant, source.n) {
        (Some(path), None, _) => {
            let text = read_input(path)?;
            let parsed = if path.extension().is_some_and(|e| e == "json") {
                complex::parse_json(&text)
            } else {
                complex::parse_text(&text)
            };
            parsed.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
        }
        (None, Some(variant), Some(n)) => Ok(generate(variant, n).map_err(Failure::usage)?.complex),
        _ => Err(Failure::usage("give either --input or --variant with --n")),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

fn write_output(path: &Path, text: &str) -> CmdResult {
    if path == Path::new("-") {
        io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::usage(format!("stdout: {e}")))
    } else {
        fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}
