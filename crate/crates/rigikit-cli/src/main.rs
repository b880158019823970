mod report;

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use rigikit::catalog::{catalog_all, catalog_get, catalog_names};
use rigikit::census::{census_graphs, row_from, CensusFilter};
use rigikit::graph6::{emit_graph6, parse_graph6};
use rigikit::Error;

use report::{AnalyzeOptions, CensusJson};

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_GUARD: u8 = 3;
const EXIT_EXPECTATION: u8 = 4;

#[derive(Parser)]
#[command(name = "rigikit", version, about = "Rigidity, spectral and tree-packing analysis of small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Report properties of every graph6 line in a file ("-" reads stdin).
    Analyze {
        input: String,
        /// Dimensions for the body-bar and body-hinge checks.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        dims: Vec<usize>,
        /// Skip the bound verdicts and the soundness cross-check.
        #[arg(long)]
        no_bounds: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Add per-section wall times in milliseconds.
        #[arg(long)]
        timings: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Classify all k-regular graphs of order n up to isomorphism.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        bipartite: bool,
        #[arg(long)]
        vertex_transitive: bool,
        #[arg(long)]
        include_disconnected: bool,
        /// Run past the enumeration guard.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write the graph6 of every class to this file.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        expect_ramanujan: Option<usize>,
        #[arg(long)]
        expect_eigenvalue_bound: Option<usize>,
        #[arg(long)]
        expect_rigid_not_gr: Option<usize>,
    },
    /// Named example graphs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Name, order, size, description and asserted facts of every entry.
    List,
    /// Print the graph6 of one entry.
    Emit { name: String },
    /// Check every recorded fact of the named entries (all when none are given).
    Verify { names: Vec<String> },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::new(EXIT_USAGE, format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::new(EXIT_USAGE, format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::new(EXIT_USAGE, format!("json error: {e}"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::Guard(_) => EXIT_GUARD,
            _ => EXIT_USAGE,
        };
        Failure::new(code, e.to_string())
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("RIGIKIT_THREADS") else { return Ok(()) };
    let threads: usize = value
        .trim()
        .parse()
        .map_err(|_| Failure::new(EXIT_USAGE, format!("RIGIKIT_THREADS must be a non-negative integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::new(EXIT_USAGE, format!("thread pool: {e}")))
}

fn writer(output: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_lines(input: &str) -> io::Result<Vec<(usize, String)>> {
    let reader: Box<dyn BufRead> = if input == "-" {
        Box::new(BufReader::new(io::stdin().lock()))
    } else {
        Box::new(BufReader::new(File::open(input)?))
    };
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            lines.push((i + 1, line.trim().to_string()));
        }
    }
    Ok(lines)
}

fn analyze(input: &str, opts: &AnalyzeOptions, format: Format, output: Option<&PathBuf>) -> Result<(), Failure> {
    if let Some(&d) = opts.dims.iter().find(|&&d| d < 2) {
        return Err(Failure::new(EXIT_USAGE, format!("--dims entries must be at least 2, got {d}")));
    }
    let lines = read_lines(input)?;
    let parsed: Vec<_> = lines.iter().map(|(no, text)| (*no, parse_graph6(text))).collect();
    let errors: Vec<String> =
        parsed.iter().filter_map(|(no, r)| r.as_ref().err().map(|e| format!("line {no}: {e}"))).collect();
    if !errors.is_empty() {
        for e in &errors {
            eprintln!("{e}");
        }
        return Err(Failure::new(EXIT_PARSE, format!("{} unparseable line(s)", errors.len())));
    }
    let graphs: Vec<_> = parsed.into_iter().map(|(no, r)| (no, r.expect("checked above"))).collect();
    let reports: Vec<_> = graphs.par_iter().map(|(no, g)| report::analyze(*no, g, opts)).collect();
    let mut out = writer(output)?;
    match format {
        Format::Json => {
            for r in &reports {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(report::csv_header(opts))?;
            for r in &reports {
                w.write_record(report::csv_record(r))?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}

struct CensusArgs {
    n: usize,
    k: usize,
    filter: CensusFilter,
    format: Format,
    dump: Option<PathBuf>,
    expect: Vec<(&'static str, usize)>,
}

fn census(args: CensusArgs) -> Result<(), Failure> {
    let classes = census_graphs(args.n, args.k, args.filter)?;
    let row = CensusJson::from(&row_from(args.n, args.k, args.filter, &classes));
    if let Some(path) = &args.dump {
        let mut w = BufWriter::new(File::create(path)?);
        for c in &classes {
            writeln!(w, "{}", emit_graph6(&c.graph))?;
        }
        w.flush()?;
    }
    let mut out = writer(None)?;
    match args.format {
        Format::Json => {
            serde_json::to_writer(&mut out, &row)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(report::CENSUS_CSV_HEADER)?;
            w.write_record(report::census_csv_record(&row))?;
            w.flush()?;
        }
    }
    out.flush()?;
    let mismatches: Vec<String> = args
        .expect
        .iter()
        .filter_map(|&(stat, want)| {
            let got = match stat {
                "ramanujan" => row.ramanujan,
                "eigenvalue_bound" => row.eigenvalue_bound,
                _ => row.rigid_not_gr,
            };
            (got != want).then(|| format!("{stat}: expected {want}, got {got}"))
        })
        .collect();
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::new(EXIT_EXPECTATION, mismatches.join("; ")))
    }
}

fn catalog(action: CatalogAction) -> Result<(), Failure> {
    let mut out = writer(None)?;
    match action {
        CatalogAction::List => {
            for e in catalog_all()? {
                let facts: Vec<String> = e.facts.iter().map(ToString::to_string).collect();
                writeln!(out, "{}\tn={}\tm={}\t{}\t{}", e.name, e.graph.order(), e.graph.size(), e.description, facts.join(", "))?;
            }
        }
        CatalogAction::Emit { name } => writeln!(out, "{}", emit_graph6(&catalog_get(&name)?.graph))?,
        CatalogAction::Verify { names } => {
            let names: Vec<String> =
                if names.is_empty() { catalog_names().into_iter().map(String::from).collect() } else { names };
            let entries = names.iter().map(|n| catalog_get(n)).collect::<Result<Vec<_>, _>>()?;
            let results: Vec<_> = entries.par_iter().map(|e| e.verify()).collect();
            let mut failed = 0;
            for (e, facts) in entries.iter().zip(results) {
                let bad: Vec<String> = facts.iter().filter(|(_, ok)| !ok).map(|(f, _)| f.to_string()).collect();
                if bad.is_empty() {
                    writeln!(out, "PASS {} ({} facts)", e.name, facts.len())?;
                } else {
                    failed += 1;
                    writeln!(out, "FAIL {}: {}", e.name, bad.join(", "))?;
                }
            }
            out.flush()?;
            if failed > 0 {
                return Err(Failure::new(EXIT_EXPECTATION, format!("{failed} catalog entries failed verification")));
            }
        }
    }
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Analyze { input, dims, no_bounds, format, timings, output } => {
            analyze(&input, &AnalyzeOptions { dims, bounds: !no_bounds, timings }, format, output.as_ref())
        }
        Command::Census {
            n,
            k,
            bipartite,
            vertex_transitive,
            include_disconnected,
            force,
            format,
            dump,
            expect_ramanujan,
            expect_eigenvalue_bound,
            expect_rigid_not_gr,
        } => {
            let filter = CensusFilter { connected: !include_disconnected, bipartite, vertex_transitive, force };
            let expect = [
                ("ramanujan", expect_ramanujan),
                ("eigenvalue_bound", expect_eigenvalue_bound),
                ("rigid_not_gr", expect_rigid_not_gr),
            ]
            .into_iter()
            .filter_map(|(s, v)| v.map(|v| (s, v)))
            .collect();
            census(CensusArgs { n, k, filter, format, dump, expect })
        }
        Command::Catalog { action } => catalog(action),
    }
}

fn main() -> ExitCode {
    // Usage errors exit 1 so that 2 stays reserved for graph6 parse errors.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
