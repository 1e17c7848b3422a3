use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use spectral_gate::corpus::{family, CorpusSpec};
use spectral_gate::formats::{encode, parse_graph6};
use spectral_gate::generate;
use spectral_gate::sweep::{self, Mode, Report};
use spectral_gate::selftest;
use spectral_gate_core::connectivity::g_class_membership;
use spectral_gate_core::theorems::{catalog, find_condition, GraphProfile};
use spectral_gate_core::Multigraph;

#[derive(Parser)]
#[command(name = "spectral-gate", version, about = "Spectral certificates for edge connectivity and spanning-tree packing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Spectra, kappa', tau and class membership for each graph in a graph6/sparse6 file.
    Analyze { file: PathBuf },
    /// Evaluate conditions at one k on each graph in a file.
    Certify {
        #[arg(long)]
        k: u64,
        /// Condition id; repeat for several, omit for the whole catalog.
        #[arg(long)]
        condition: Vec<String>,
        file: PathBuf,
    },
    /// Run a consistency sweep described by a TOML corpus spec.
    Sweep(SweepArgs),
    /// Report graphs outside the class whose remaining hypotheses hold.
    SearchOutsideG(SweepArgs),
    /// Print generated graphs as graph6/sparse6, one per line.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 2)]
        max_mult: u32,
        #[arg(long, default_value_t = 1.0)]
        edge_factor: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run the built-in invariant suite.
    Selftest,
    /// List the condition catalog.
    Catalog,
}

#[derive(clap::Args)]
struct SweepArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-graph records as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Complete,
    Cycle,
    Path,
    Star,
    Petersen,
    Pappus,
    BridgedCliques,
    RandomRegular,
    Gnp,
    RandomMultigraph,
    Connected,
}

type AnyError = Box<dyn std::error::Error>;

fn read_graphs(path: &Path) -> Result<Vec<Multigraph>, AnyError> {
    let reader = BufReader::new(File::open(path).map_err(|e| format!("{}: {e}", path.display()))?);
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(parse_graph6(&line).map_err(|e| format!("{}:{}: {e}", path.display(), i + 1))?);
    }
    Ok(out)
}

fn print_json(value: &serde_json::Value) -> Result<(), AnyError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn analyze(file: &Path) -> Result<ExitCode, AnyError> {
    let mut rows = Vec::new();
    for g in read_graphs(file)? {
        let profile = GraphProfile::new(&g)?;
        let s = &profile.summary;
        let class = if g.vertex_count() >= 3 {
            match g_class_membership(&g) {
                Ok(m) => json!(m.is_member()),
                Err(e) => json!(format!("undecided: {e}")),
            }
        } else {
            json!(null)
        };
        rows.push(json!({
            "graph": encode(&g),
            "n": s.n,
            "m": s.m,
            "min_degree": s.min_degree,
            "max_degree": s.max_degree,
            "kappa": profile.kappa,
            "tau": profile.tau(),
            "in_class": class,
            "adjacency": s.adjacency,
            "laplacian": s.laplacian,
            "signless_laplacian": s.signless,
        }));
    }
    print_json(&json!(rows))?;
    Ok(ExitCode::SUCCESS)
}

fn certify(k: u64, ids: &[String], file: &Path) -> Result<ExitCode, AnyError> {
    let conditions = if ids.is_empty() {
        catalog().iter().collect()
    } else {
        ids.iter().map(|id| find_condition(id)).collect::<Result<Vec<_>, _>>()?
    };
    let mut rows = Vec::new();
    let mut consistent = true;
    for g in read_graphs(file)? {
        for v in sweep::certify(&g, &conditions, k)? {
            consistent &= v.consistent;
            rows.push(json!({
                "graph": encode(&g),
                "condition": v.condition_id,
                "k": v.k,
                "applicable": v.applicable,
                "degree_ok": v.degree_ok,
                "class_ok": v.class_ok,
                "spectral_value": v.spectral_value,
                "threshold": v.threshold.map(|t| t.to_string()),
                "margin": v.margin,
                "spectral": format!("{:?}", v.spectral),
                "hypothesis_holds": v.hypothesis_holds,
                "conclusion_value": v.conclusion_value,
                "conclusion_holds": v.conclusion_holds,
                "consistent": v.consistent,
            }));
        }
    }
    print_json(&json!(rows))?;
    Ok(if consistent { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn write_report(report: &Report, args: &SweepArgs) -> Result<(), AnyError> {
    match &args.out {
        Some(path) => std::fs::write(path, report.to_json() + "\n")?,
        None => println!("{}", report.to_json()),
    }
    if let Some(path) = &args.csv {
        report.write_csv(BufWriter::new(File::create(path)?))?;
    }
    let s = &report.summary;
    eprintln!(
        "{} graphs evaluated, {} counterexamples, {} findings: {}",
        s.graphs_evaluated,
        s.counterexamples,
        s.findings,
        if s.passed { "passed" } else { "FAILED" }
    );
    Ok(())
}

fn run_sweep(args: &SweepArgs, mode: Mode) -> Result<ExitCode, AnyError> {
    let spec = CorpusSpec::load(&args.spec)?;
    let report = sweep::run(&spec, mode, sweep::threads_from_env()?)?;
    write_report(&report, args)?;
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[allow(clippy::too_many_arguments)]
fn gen(
    fam: Family,
    seed: u64,
    n: Option<usize>,
    d: usize,
    p: f64,
    max_mult: u32,
    edge_factor: f64,
    count: usize,
) -> Result<ExitCode, AnyError> {
    let mut rng = generate::rng(seed);
    let need = || n.ok_or("--n is required for this family");
    let mut out = BufWriter::new(io::stdout().lock());
    let mut emit = |g: &Multigraph| writeln!(out, "{}", encode(g));
    match fam {
        Family::Complete => emit(&family("complete", n)?)?,
        Family::Cycle => emit(&family("cycle", n)?)?,
        Family::Path => emit(&family("path", n)?)?,
        Family::Star => emit(&family("star", n)?)?,
        Family::Petersen => emit(&family("petersen", None)?)?,
        Family::Pappus => emit(&family("pappus", None)?)?,
        Family::BridgedCliques => emit(&family("bridged_cliques", n)?)?,
        Family::RandomRegular => {
            for _ in 0..count {
                emit(&generate::random_regular(need()?, d, &mut rng)?)?;
            }
        }
        Family::Gnp => {
            for _ in 0..count {
                emit(&generate::gnp(need()?, p, &mut rng)?)?;
            }
        }
        Family::RandomMultigraph => {
            for _ in 0..count {
                emit(&generate::random_multigraph(need()?, max_mult, edge_factor, &mut rng)?)?;
            }
        }
        Family::Connected => {
            for g in generate::enumerate_connected(need()?)? {
                emit(&g)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_selftest() -> Result<ExitCode, AnyError> {
    let results = selftest::run_all(sweep::threads_from_env()?);
    let mut ok = true;
    for r in &results {
        println!("{} {}: {}", if r.passed { "PASS" } else { "FAIL" }, r.name, r.detail);
        ok &= r.passed;
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn list_catalog() -> Result<ExitCode, AnyError> {
    for c in catalog() {
        println!(
            "{:<13} {:<9} {:?} {:?} {:?} class={:?} kind={:?} -> {:?}{}",
            c.id,
            c.quantity.name(),
            c.comparison,
            c.formula.penalty,
            c.degree,
            c.class,
            c.kind,
            c.conclusion,
            if c.regular_only { " (regular)" } else { "" }
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file } => analyze(&file),
        Command::Certify { k, condition, file } => certify(k, &condition, &file),
        Command::Sweep(args) => run_sweep(&args, Mode::Sweep),
        Command::SearchOutsideG(args) => run_sweep(&args, Mode::SearchOutsideG),
        Command::Gen {
            family,
            seed,
            n,
            d,
            p,
            max_mult,
            edge_factor,
            count,
        } => gen(family, seed, n, d, p, max_mult, edge_factor, count),
        Command::Selftest => run_selftest(),
        Command::Catalog => list_catalog(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
