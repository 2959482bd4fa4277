mod cache;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use operadlab::cochain::{CochainComplex, OperadRef, PAlgebra};
use operadlab::cupnat::{zp_solve_in, CupOperad};
use operadlab::linalg::{cohomology_dims, CohomologyTable, SparseVec};
use operadlab::liecplx::soul_complex;
use operadlab::operads::catalog::planar_counterpart;
use operadlab::operads::{catalog, entry_from_presentation, CatalogEntry, Operad, Presentation, MAX_CAP};
use operadlab::permcplx::{block_acyclicity, expected_block_size, perm_complex, primitives};
use operadlab::verify::{run_suite, suite_ids, SuiteConfig};
use operadlab::{Error, Result};

use report::{Assertion, Report, Table};

#[derive(Parser)]
#[command(name = "operadlab", version, about = "Exact truncated computations with operads and operadic cochain complexes")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Arity cap, between 2 and 8.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled algebras.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Abort with exit code 3 once resident memory exceeds this many MiB.
    #[arg(long = "limit-mb", global = true)]
    limit_mb: Option<u64>,
    /// Leave the wall-clock time out of the report.
    #[arg(long = "no-timing", global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Soul complex of an operad and its cohomology.
    Soul {
        /// Catalog name or path to a presentation JSON file.
        operad: String,
        /// Use the non-Σ counterpart.
        #[arg(long = "non-sigma")]
        non_sigma: bool,
    },
    /// Basis of the space of cup products in one arity.
    Zp {
        operad: String,
        #[arg(short = 'n', long = "arity", default_value_t = 2)]
        arity: usize,
    },
    /// The permutation complex, optionally split into blocks.
    Perm {
        #[arg(short = 'n', long = "arity")]
        arity: Option<usize>,
        #[arg(long)]
        blocks: bool,
    },
    /// Operadic cochain complex of an algebra given as JSON.
    Cochain {
        /// Overrides the operad named in the algebra file.
        #[arg(long)]
        operad: Option<String>,
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Runs the acceptance suite: `all`, a group name or a list like `1,5,9`.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceBound(_) => 3,
        _ => 2,
    }
}

fn check_cap(cap: usize) -> Result<usize> {
    if !(2..=MAX_CAP).contains(&cap) {
        return Err(Error::Invalid(format!("cap {cap} is outside [2, {MAX_CAP}]")));
    }
    Ok(cap)
}

fn default_cap(name: &str) -> usize {
    let lower = name.to_ascii_lowercase();
    if ["d", "ud", "prelie"].contains(&lower.as_str()) || Path::new(name).is_file() {
        4
    } else {
        6
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

/// A catalog name, or a path to a presentation file.
fn resolve(operad: &str, cap: usize) -> Result<CatalogEntry> {
    let path = Path::new(operad);
    if path.is_file() {
        entry_from_presentation(&Presentation::from_json(&read_file(path)?)?, cap)
    } else {
        catalog(operad, cap)
    }
}

fn material(e: &CatalogEntry) -> String {
    format!("{}|{}|{}", e.name, e.is_symmetric(), e.presentation.to_json())
}

/// Start a thread that exits with code 3 once resident memory passes the limit.
fn watch_memory(limit_mb: u64) {
    std::thread::spawn(move || loop {
        if let Some(kb) = resident_kb() {
            if kb / 1024 > limit_mb {
                eprintln!("error: resource bound exceeded: resident memory above {limit_mb} MiB");
                std::process::exit(3);
            }
        }
        std::thread::sleep(Duration::from_millis(20));
    });
}

fn resident_kb() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmRSS:"))?;
    line.split_whitespace().nth(1)?.parse().ok()
}

fn soul_expectations(name: &str, t: &Table) -> Vec<Assertion> {
    let acyclic = || Assertion::new("acyclic in reliable degrees", t.reliable_h().iter().all(|h| *h == 0), json!(t.reliable_h()));
    let h = |d: usize, want: usize| {
        Assertion::new(format!("H^{d} = {want}"), t.h(d) == Some(want), json!(t.h(d)))
    };
    match name {
        "Ass" | "uAss" | "Com" | "Lie" | "uMag" => vec![acyclic()],
        "Mag" if t.h(1).is_some() => vec![h(1, 1)],
        "D" if t.h(1).is_some() => vec![h(0, 0), h(1, 1)],
        _ => Vec::new(),
    }
}

fn cmd_soul(r: &mut Report, operad: &str, cap: usize, non_sigma: bool) -> Result<()> {
    let mut entry = resolve(operad, cap)?;
    if non_sigma {
        entry = planar_counterpart(&entry.name, cap)?;
    }
    let key = cache::key("soul", &material(&entry), cap);
    let table: CohomologyTable = cache::cached(&key, || cohomology_dims(&soul_complex(&entry)?))?;
    let t = Table::new(entry.name.clone(), 1, &table);
    for a in soul_expectations(&entry.name, &t) {
        r.assert(a);
    }
    r.results = json!({ "operad": entry.name, "symmetric": entry.is_symmetric(), "h_reliable": t.reliable_h() });
    r.tables.push(t);
    Ok(())
}

fn render(o: &Operad, n: usize, v: &SparseVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let terms: Vec<String> = v.entries().iter().map(|(k, c)| format!("{c}*{}", o.label(n, *k))).collect();
    terms.join(" + ")
}

fn cmd_zp(r: &mut Report, operad: &str, n: usize) -> Result<()> {
    if n == 0 || n + 1 > MAX_CAP {
        return Err(Error::Invalid(format!("arity {n} is outside [1, {}]", MAX_CAP - 1)));
    }
    let entry = resolve(operad, n + 1)?;
    let name = entry.name.clone();
    let z = CupOperad::from_entry(entry)?;
    let b = zp_solve_in(&z, n)?;
    let mut closed = true;
    for t in &b.basis {
        closed &= z.is_closed(n, t)?;
    }
    r.assert(Assertion::new("basis elements are closed", closed, Value::Null));
    let basis: Vec<String> = b.basis.iter().map(|t| render(z.operad(), n, t)).collect();
    r.csv = Some((
        vec!["operad".into(), "arity".into(), "index".into(), "element".into()],
        basis.iter().enumerate().map(|(k, s)| vec![name.clone(), n.to_string(), k.to_string(), s.clone()]).collect(),
    ));
    r.results = json!({ "operad": name, "arity": n, "dim": b.dim, "basis": basis });
    Ok(())
}

fn cmd_perm(r: &mut Report, arity: usize, blocks: bool) -> Result<()> {
    if !blocks {
        let t = Table::new("perm", 1, &cohomology_dims(&perm_complex(arity)?)?);
        r.assert(Assertion::new("acyclic in reliable degrees", t.reliable_h().iter().all(|h| *h == 0), json!(t.reliable_h())));
        r.tables.push(t);
        return Ok(());
    }
    let mut summary = Vec::new();
    for n in 1..=arity {
        for kappa in primitives(n) {
            let b = block_acyclicity(&kappa, arity)?;
            let expected: Vec<usize> = (0..b.sizes.len())
                .map(|g| if n == 1 { 1 } else { expected_block_size(n, g) })
                .collect();
            let name = format!("block {}", b.kappa);
            r.assert(Assertion::new(format!("{name} sizes"), b.sizes == expected, json!({ "sizes": b.sizes, "expected": expected })));
            let t = Table::new(name.clone(), b.first_arity, &b.table);
            r.assert(Assertion::new(format!("{name} acyclic"), t.reliable_h().iter().all(|h| *h == 0), json!(t.reliable_h())));
            summary.push(json!({ "kappa": b.kappa, "first_arity": b.first_arity, "sizes": b.sizes }));
            r.tables.push(t);
        }
    }
    r.results = json!({ "blocks": summary });
    Ok(())
}

fn cmd_cochain(r: &mut Report, operad: Option<&str>, path: &Path, cap: usize) -> Result<()> {
    let mut alg = PAlgebra::from_json(&read_file(path)?)?;
    if let Some(op) = operad {
        alg.operad = if Path::new(op).is_file() {
            OperadRef::Presentation(Presentation::from_json(&read_file(Path::new(op))?)?)
        } else {
            OperadRef::Name(op.to_string())
        };
    }
    let cx = CochainComplex::new(&alg, cap)?;
    let sq = cx.complex().check_square_zero();
    r.assert(Assertion::new("d² = 0", sq.is_ok(), sq.err().map_or(Value::Null, |e| json!(e.to_string()))));
    let t = Table::new("C(A;A)", 1, &cx.cohomology()?);
    r.results = json!({ "dim": alg.dim, "h_reliable": t.reliable_h() });
    r.tables.push(t);
    Ok(())
}

fn cmd_verify(r: &mut Report, suite: &str, cfg: &SuiteConfig, timing: bool) -> Result<()> {
    let results = run_suite(&suite_ids(suite)?, cfg)?;
    let mut rows = Vec::new();
    let mut details = Vec::new();
    for c in &results {
        r.assert(Assertion::new(format!("criterion {}: {}", c.id, c.title), c.pass, json!(c.failures)));
        rows.push(vec![c.id.to_string(), c.title.clone(), c.pass.to_string()]);
        let mut d = json!({ "id": c.id, "title": c.title, "pass": c.pass, "details": c.details });
        if timing {
            d["seconds"] = json!(c.seconds);
        }
        details.push(d);
    }
    r.failures = results
        .iter()
        .filter(|c| !c.pass)
        .map(|c| json!({ "id": c.id, "title": c.title, "reasons": c.failures }))
        .collect();
    r.csv = Some((vec!["criterion".into(), "title".into(), "pass".into()], rows));
    r.results = json!(details);
    Ok(())
}

fn run(cli: &Cli, command: String) -> Result<Report> {
    let c = &cli.common;
    let start = Instant::now();
    let format = match c.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let mut config = json!({ "format": format, "seed": c.seed, "limit_mb": c.limit_mb });
    let mut r = Report::new(command, Value::Null);
    match &cli.command {
        Command::Soul { operad, non_sigma } => {
            let cap = check_cap(c.cap.unwrap_or_else(|| default_cap(operad)))?;
            config["operad"] = json!(operad);
            config["cap"] = json!(cap);
            config["non_sigma"] = json!(non_sigma);
            cmd_soul(&mut r, operad, cap, *non_sigma)?;
        }
        Command::Zp { operad, arity } => {
            config["operad"] = json!(operad);
            config["arity"] = json!(arity);
            config["cap"] = json!(arity + 1);
            cmd_zp(&mut r, operad, *arity)?;
        }
        Command::Perm { arity, blocks } => {
            let arity = check_cap(arity.or(c.cap).unwrap_or(6))?;
            config["arity"] = json!(arity);
            config["blocks"] = json!(blocks);
            cmd_perm(&mut r, arity, *blocks)?;
        }
        Command::Cochain { operad, algebra } => {
            let cap = check_cap(c.cap.unwrap_or(4))?;
            config["operad"] = json!(operad);
            config["algebra"] = json!(algebra.display().to_string());
            config["cap"] = json!(cap);
            cmd_cochain(&mut r, operad.as_deref(), algebra, cap)?;
        }
        Command::Verify { suite } => {
            let cap = check_cap(c.cap.unwrap_or(SuiteConfig::default().soul_cap))?;
            config["suite"] = json!(suite);
            config["cap"] = json!(cap);
            let cfg = SuiteConfig { soul_cap: cap, seed: c.seed };
            cmd_verify(&mut r, suite, &cfg, !c.no_timing)?;
        }
    }
    r.config = config;
    r.finish();
    if !c.no_timing {
        r.wall_clock_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(mb) = cli.common.limit_mb {
        watch_memory(mb);
    }
    let command = std::iter::once("operadlab".to_string())
        .chain(std::env::args().skip(1))
        .collect::<Vec<_>>()
        .join(" ");
    match run(&cli, command) {
        Ok(r) => {
            match cli.common.format {
                Format::Json => println!("{}", r.to_json()),
                Format::Csv => print!("{}", r.to_csv()),
            }
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
