use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use equichroma::coloring::{find_equitable_coloring, SolverConfig};
use equichroma::formulas::{closed_form_with, WheelOddVariance};
use equichroma::verify::{self, EccRecord, VerificationRecord, VerifyOptions};
use equichroma::{
    brute_force_chi_e, constructive_coloring, distribution_of, equitable_chromatic_number, generate, is_proper,
    ChromaticStats, ColorDistribution, Coloring, Error, Execution, ExportFormat, FamilyId, FamilyKind, Graph,
    TheoremId,
};

/// Equitable colourings and chromatic mean/variance of wheel-related graphs.
#[derive(Debug, Parser)]
#[command(name = "equichroma", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a family graph.
    Gen {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum, default_value_t = GraphFormat::Json)]
        format: GraphFormat,
    },
    /// Print an equitable colouring as JSON.
    Color {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of colours (defaults to the published count for the family).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Mean and variance of a colouring file or of explicit class sizes.
    Stats {
        #[arg(long, conflicts_with = "sizes", required_unless_present = "sizes")]
        coloring: Option<PathBuf>,
        /// Comma-separated class sizes, e.g. 2,2,2,2,1.
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
    /// Evaluate a published closed form.
    Formula {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        n: u32,
        /// Use the corrected odd-wheel variance.
        #[arg(long, conflicts_with = "derivation")]
        corrected: bool,
        /// Use the odd-wheel variance from the derivation's final line.
        #[arg(long)]
        derivation: bool,
    },
    /// Equitable chromatic number.
    Chie {
        #[arg(long, requires = "n", required_unless_present = "graph")]
        family: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        /// Graph file in the JSON or DIMACS format written by `gen`.
        #[arg(long, conflicts_with = "family")]
        graph: Option<PathBuf>,
        /// Use the exhaustive oracle instead of the exact solver.
        #[arg(long)]
        oracle: bool,
    },
    /// Compare computed statistics with the closed forms.
    Verify {
        /// `all` or a comma-separated list of theorem ids.
        #[arg(long, default_value = "all")]
        theorems: String,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[command(flatten)]
        report: ReportArgs,
        /// Run the exact χₑ search for n up to this value (0 disables it).
        #[arg(long, default_value_t = 10)]
        solver_max_n: u32,
        /// Skip the exhaustive oracle.
        #[arg(long)]
        no_oracle: bool,
        /// Exit with status 2 when any row mismatches.
        #[arg(long)]
        strict: bool,
        /// Known erratum to tolerate under --strict.
        #[arg(long, value_enum)]
        expect_erratum: Vec<Erratum>,
    },
    /// Check χₑ(G) ≤ Δ(G) over a range of family instances.
    Ecc {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[command(flatten)]
        report: ReportArgs,
    },
}

#[derive(Debug, Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: u32,
}

impl FamilyArgs {
    fn id(&self) -> Result<FamilyId, Error> {
        FamilyId::new(self.family.parse()?, self.n)
    }
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    report: ReportFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (1 runs sequentially, 0 uses every core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GraphFormat {
    Dimacs,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Constructive,
    Solver,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Erratum {
    WheelOddVariance,
}

/// Failure modes mapped onto exit codes.
enum Failure {
    Input(String),
    Mismatch(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            eprintln!("{}", msg.lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(count)) => {
            eprintln!("error: {count} verification mismatch(es)");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    let solver = SolverConfig::from_env()?;
    match command {
        Command::Gen { family, format } => {
            let g = generate(family.id()?)?;
            let format = match format {
                GraphFormat::Dimacs => ExportFormat::DimacsCol,
                GraphFormat::Json => ExportFormat::Json,
                GraphFormat::Dot => ExportFormat::Dot,
            };
            print!("{}", with_newline(g.export(format)));
        }
        Command::Color { family, k, method } => {
            let id = family.id()?;
            let published_k = id.published_color_count();
            let k = k.unwrap_or(published_k);
            let method = method.unwrap_or(if k == published_k { Method::Constructive } else { Method::Solver });
            let coloring = match method {
                Method::Constructive if k != published_k => {
                    return Err(Failure::Input(format!(
                        "the constructive pattern for {id} uses {published_k} colours, not {k}"
                    )))
                }
                Method::Constructive => constructive_coloring(id)?,
                Method::Solver => find_equitable_coloring(&generate(id)?, k, &solver)?
                    .ok_or_else(|| Failure::Input(format!("{id} has no equitable {k}-coloring")))?,
            };
            println!("{}", coloring.to_json(Some(id)));
        }
        Command::Stats { coloring, sizes } => {
            let dist = match (coloring, sizes) {
                (Some(path), _) => {
                    let (c, family) = Coloring::from_json(&read(&path)?)?;
                    if let Some(id) = family {
                        if !is_proper(&generate(id)?, &c)? {
                            return Err(Failure::Input(format!(
                                "{} is not a proper colouring of {id}",
                                path.display()
                            )));
                        }
                    }
                    distribution_of(&c)
                }
                (None, Some(sizes)) => ColorDistribution::new(sizes)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            println!("{}", ChromaticStats::of(&dist).to_json());
        }
        Command::Formula { theorem, n, corrected, derivation } => {
            let t: TheoremId = theorem.parse()?;
            let variant = if corrected {
                WheelOddVariance::Corrected
            } else if derivation {
                WheelOddVariance::Derivation
            } else {
                WheelOddVariance::Printed
            };
            println!("{}", closed_form_with(t, n, variant)?.to_json());
        }
        Command::Chie { family, n, graph, oracle } => {
            let g = match (family, graph) {
                (Some(f), _) => generate(FamilyId::new(f.parse()?, n.expect("clap enforces --n"))?)?,
                (None, Some(path)) => read_graph(&path)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let chi = if oracle {
                brute_force_chi_e(&g, Execution::Parallel)?
            } else {
                equitable_chromatic_number(&g, &solver)?
            };
            println!("{chi}");
        }
        Command::Verify { theorems, n_min, n_max, report, solver_max_n, no_oracle, strict, expect_erratum } => {
            let theorems = parse_theorems(&theorems)?;
            let opts = VerifyOptions {
                solver,
                solver_max_n: (solver_max_n > 0).then_some(solver_max_n),
                oracle: !no_oracle,
                ecc: true,
                execution: execution(report.jobs),
            };
            let records = with_jobs(report.jobs, || verify::verify_range(&theorems, n_min, n_max, &opts))??;
            for r in records.iter().filter(|r| r.failure.is_some()) {
                eprintln!("warning: {} {}: {}", r.theorem, r.family.n, r.failure.as_deref().unwrap_or_default());
            }
            emit(&report, render_verify(&records, report.report))?;
            if strict {
                let bad = verify::mismatches(&records, expect_erratum.contains(&Erratum::WheelOddVariance));
                if !bad.is_empty() {
                    return Err(Failure::Mismatch(bad.len()));
                }
            }
        }
        Command::Ecc { family, n_min, n_max, report } => {
            let kind: FamilyKind = family.parse()?;
            let exec = execution(report.jobs);
            let records = with_jobs(report.jobs, || verify::ecc_range(kind, n_min, n_max, &solver, exec))??;
            emit(&report, render_ecc(&records, report.report))?;
        }
    }
    Ok(())
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

/// Reads a file, or standard input when the path is `-`.
fn read(path: &PathBuf) -> Result<String, Failure> {
    let fail = |e: io::Error| Failure::Input(format!("{}: {e}", path.display()));
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(fail)?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(fail)
}

fn read_graph(path: &PathBuf) -> Result<Graph, Failure> {
    let text = read(path)?;
    let g = if text.trim_start().starts_with('{') { Graph::from_json(&text)? } else { Graph::from_dimacs(&text)? };
    Ok(g)
}

fn parse_theorems(list: &str) -> Result<Vec<TheoremId>, Error> {
    if list == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    list.split(',').map(|s| s.trim().parse()).collect()
}

fn execution(jobs: usize) -> Execution {
    if jobs == 1 {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    if jobs <= 1 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Input(format!("cannot start {jobs} workers: {e}")))?;
    Ok(pool.install(f))
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T: Send>(_jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    Ok(f())
}

fn emit(args: &ReportArgs, text: String) -> Result<(), Failure> {
    match &args.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{}", with_newline(text));
            Ok(())
        }
    }
}

fn render_verify(records: &[VerificationRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => verify::to_csv(records),
        ReportFormat::Json => verify::to_json(records),
        ReportFormat::Table => table(&verify::to_csv(records)),
    }
}

fn render_ecc(records: &[EccRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => verify::ecc_to_csv(records),
        ReportFormat::Json => verify::ecc_to_json(records),
        ReportFormat::Table => table(&verify::ecc_to_csv(records)),
    }
}

/// Left-aligned columns from CSV text. Cells never contain commas here.
fn table(csv_text: &str) -> String {
    let rows: Vec<Vec<&str>> = csv_text.lines().map(|l| l.split(',').collect()).collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in &rows {
        let line: Vec<String> = row.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
