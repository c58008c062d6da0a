//! `cymono`: reproduce the orbit tables, run the exact verification suite,
//! screen integer classes and cross-check the numeric monodromy.
//!
//! Exit codes: 0 success, 1 verification or reference mismatch, 2 usage or
//! input error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cymono::algebra::TABLE_PRIMES;
use cymono::catalog::{catalog, family};
use cymono::conjecture::{ConjectureVerdict, TheoremLists};
use cymono::orbit::{orbit_mod_p, Seed};
use cymono::pf::{compare_invariants, PfConfig, MIN_TOLERANCE};
use cymono::tables::{diff_rows, generate_tables, golden, parse_csv, plain_vector, to_csv, to_markdown, Table, TableRow};
use cymono::verify::{run_verification, Fault};
use cymono::word::{word_search, DEFAULT_MAX_ABS_ENTRY, DEFAULT_MAX_LEN};
use cymono::{FamilyParams, IntVec4, Prime};
use num_complex::Complex;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cymono", version, about = "Monodromy orbits of one-parameter Calabi-Yau families")]
struct Cli {
    /// Worker threads for parallel jobs (default: one per core).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit of a vector mod p under the monodromy group of family (d,k).
    Orbit(OrbitArgs),
    /// Regenerate the three orbit tables, or diff them against reference data.
    Tables(TablesArgs),
    /// Run the exact verification suite.
    Verify(VerifyArgs),
    /// Screen an integer class against the torus/sphere residue lists.
    Screen(ScreenArgs),
    /// Inspect the family catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Numerical Picard-Fuchs monodromy.
    Pf {
        #[command(subcommand)]
        action: PfAction,
    },
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    d: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    p: u64,
    /// Comma-separated seed vector, e.g. 0,1,0,0.
    #[arg(long, allow_hyphen_values = true)]
    seed: String,
    #[arg(long, value_enum, default_value_t = OrbitFormat::Text)]
    format: OrbitFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrbitFormat {
    Text,
    Csv,
    Json,
}

#[derive(Args)]
struct TablesArgs {
    /// Comma-separated primes (default: 2,3,5,7,11,13,17,19,23).
    #[arg(long, value_delimiter = ',')]
    primes: Option<Vec<u64>>,
    /// Directory receiving table2, table3 and table4; stdout when omitted.
    #[arg(long, value_name = "DIR")]
    out_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
    /// Compare against reference CSVs in DIR (table2.csv, table3.csv,
    /// table4.csv). Without DIR, or with the name `golden` when no such
    /// directory exists, the embedded reference data is used.
    #[arg(long, value_name = "DIR", num_args = 0..=1, default_missing_value = "golden")]
    diff: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
    Md,
}

impl TableFormat {
    fn extension(self) -> &'static str {
        match self {
            TableFormat::Csv => "csv",
            TableFormat::Json => "json",
            TableFormat::Md => "md",
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Corrupt a generator to exercise the failure path.
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    M1,
}

#[derive(Args)]
struct ScreenArgs {
    /// Comma-separated integer vector, e.g. 0,1,0,1.
    #[arg(allow_hyphen_values = true)]
    vector: String,
    /// Also look for a monodromy word carrying the matching seed to the vector.
    #[arg(long)]
    search: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_LEN)]
    max_len: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ABS_ENTRY)]
    max_entry: u64,
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Print the fourteen families as JSON.
    Dump,
}

#[derive(Subcommand)]
enum PfAction {
    /// Compare numeric loop charpolys with the integer generators.
    Check(PfArgs),
}

#[derive(Args)]
struct PfArgs {
    /// Family as d,k; all families when omitted.
    #[arg(long)]
    family: Option<String>,
    /// Largest accepted charpoly coefficient deviation.
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
    /// Base point, e.g. 0.5+0.25i.
    #[arg(long, default_value = "0.5+0.25i", allow_hyphen_values = true)]
    base: String,
    #[arg(long, default_value_t = 0.45)]
    radius: f64,
    /// Local tolerance of the integrator.
    #[arg(long, default_value_t = 1e-10)]
    ode_tol: f64,
}

/// A failure carrying its exit code.
enum Failure {
    /// Exit 1: a verification or comparison failed.
    Mismatch,
    /// Exit 2: bad arguments, bad input files or I/O trouble.
    Usage(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn parse_prime(p: u64) -> Result<Prime, Failure> {
    Prime::new(p).map_err(|e| usage(e.to_string()))
}

fn parse_vector(s: &str) -> Result<IntVec4, Failure> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| usage(format!("malformed vector {s:?}: {x:?} is not an integer"))))
        .collect::<Result<_, _>>()?;
    let comps: [i64; 4] = parts
        .try_into()
        .map_err(|_| usage(format!("malformed vector {s:?}: expected 4 comma-separated integers")))?;
    Ok(IntVec4::from_i64(comps))
}

fn catalog_family(d: u32, k: u32) -> Result<FamilyParams, Failure> {
    family(d, k).ok_or_else(|| usage(format!("({d},{k}) is not a catalog family")))
}

fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

fn cmd_orbit(args: &OrbitArgs, out: &mut impl Write) -> Outcome {
    let f = catalog_family(args.d, args.k)?;
    let p = parse_prime(args.p)?;
    let seed = parse_vector(&args.seed)?;
    let orbit = orbit_mod_p(&seed, p, &f);
    let complete = orbit.is_complete();
    match args.format {
        OrbitFormat::Text => {
            if complete {
                writeln!(out, "Complete ({} vectors)", orbit.len())?;
            } else {
                for v in orbit.members() {
                    writeln!(out, "{v}")?;
                }
            }
        }
        OrbitFormat::Csv => {
            writeln!(out, "d,k,p,seed,vector")?;
            let seed_text = seed.components().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            for v in orbit.members() {
                writeln!(out, "{},{},{},{seed_text},{}", f.d, f.k, p.get(), plain_vector(v))?;
            }
        }
        OrbitFormat::Json => {
            #[derive(Serialize)]
            struct Report {
                d: u32,
                k: u32,
                p: u32,
                seed: Vec<String>,
                size: usize,
                complete: bool,
                vectors: Vec<String>,
            }
            let report = Report {
                d: f.d,
                k: f.k,
                p: p.get(),
                seed: seed.components().iter().map(ToString::to_string).collect(),
                size: orbit.len(),
                complete,
                vectors: orbit.members().iter().map(plain_vector).collect(),
            };
            out.write_all(to_json(&report).as_bytes())?;
        }
    }
    Ok(())
}

fn render_table(table: Table, rows: &[TableRow], format: TableFormat) -> String {
    match format {
        TableFormat::Csv => to_csv(rows),
        TableFormat::Json => to_json(rows),
        TableFormat::Md => to_markdown(table, rows),
    }
}

/// Reference rows for `table`: from `dir` when it is a directory, otherwise
/// the embedded data when `dir` names it.
fn reference_rows(dir: &Path, table: Table) -> Result<Vec<TableRow>, Failure> {
    if dir.is_dir() {
        let path = dir.join(format!("{}.csv", table.file_stem()));
        let text = fs::read_to_string(&path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        parse_csv(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
    } else if dir.components().count() == 1 && dir.as_os_str().to_string_lossy().trim_end_matches('/') == "golden" {
        Ok(golden(table))
    } else {
        Err(usage(format!("{}: not a directory", dir.display())))
    }
}

fn cmd_tables(args: &TablesArgs, out: &mut impl Write) -> Outcome {
    let primes: Vec<Prime> = match &args.primes {
        Some(ps) => ps.iter().map(|&p| parse_prime(p)).collect::<Result<_, _>>()?,
        None => TABLE_PRIMES.iter().map(|&p| parse_prime(p.into())).collect::<Result<_, _>>()?,
    };
    // Load references first so a bad path fails before the expensive part.
    let references = match &args.diff {
        Some(dir) => Some(
            Table::ALL
                .iter()
                .map(|&t| reference_rows(dir, t))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let tables = generate_tables(&primes);

    if let Some(dir) = &args.out_dir {
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        for t in Table::ALL {
            let path = dir.join(format!("{}.{}", t.file_stem(), args.format.extension()));
            fs::write(&path, render_table(t, tables.get(t), args.format))
                .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        }
    } else if references.is_none() {
        for (i, t) in Table::ALL.into_iter().enumerate() {
            if i > 0 {
                writeln!(out)?;
            }
            out.write_all(render_table(t, tables.get(t), args.format).as_bytes())?;
        }
    }

    let Some(references) = references else { return Ok(()) };
    let mut failed = false;
    for (t, reference) in Table::ALL.into_iter().zip(&references) {
        let computed = tables.get(t);
        let mismatches = diff_rows(computed, reference);
        for m in &mismatches {
            writeln!(out, "MISMATCH {} {m}", t.file_stem())?;
        }
        if mismatches.is_empty() {
            writeln!(out, "{}: OK ({} rows)", t.file_stem(), computed.len())?;
        } else {
            writeln!(out, "{}: FAIL ({} of {} rows differ)", t.file_stem(), mismatches.len(), computed.len())?;
            failed = true;
        }
    }
    if failed {
        Err(Failure::Mismatch)
    } else {
        Ok(())
    }
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Outcome {
    let fault = args.inject_fault.map(|FaultArg::M1| Fault::PerturbM1);
    let checks = run_verification(fault);
    for c in &checks {
        writeln!(out, "{c}")?;
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    writeln!(out, "{passed}/{} checks passed", checks.len())?;
    if passed == checks.len() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn cmd_screen(args: &ScreenArgs, out: &mut impl Write) -> Outcome {
    let v = parse_vector(&args.vector)?;
    let lists = TheoremLists::shared();
    let verdict = lists.screen(&v);
    let mut text = format!("vector: {v}\n");
    if verdict != ConjectureVerdict::Zero && verdict != ConjectureVerdict::NotPrimitive {
        let side = match lists.mod_two_sides(&v) {
            (true, _) => "torus",
            (_, true) => "sphere",
            _ => "none",
        };
        let five = cymono::algebra::reduce_vec(&v, lists.torus_mod_5.prime);
        let five_side = if lists.torus_mod_5.contains(&five) {
            "torus"
        } else if lists.sphere_mod_5.contains(&five) {
            "sphere"
        } else {
            "none"
        };
        let two = cymono::algebra::reduce_vec(&v, lists.torus_mod_2.prime);
        writeln!(text, "mod 2: {two} {side}").unwrap();
        writeln!(text, "mod 5: {five} {five_side}").unwrap();
    }
    writeln!(text, "verdict: {verdict}").unwrap();
    out.write_all(text.as_bytes())?;

    if args.search {
        let seed = match verdict {
            ConjectureVerdict::TorusCandidate => Seed::Delta2,
            ConjectureVerdict::SphereCandidate => Seed::Delta4,
            _ => {
                writeln!(out, "search: skipped for verdict {verdict}")?;
                return Ok(());
            }
        };
        let name = if seed == Seed::Delta2 { "delta2" } else { "delta4" };
        let q = cymono::catalog::quintic();
        match word_search(&seed.vector(), &v, &q, args.max_len, args.max_entry) {
            Some(w) => writeln!(out, "witness from {name}: {w}")?,
            None => writeln!(
                out,
                "witness from {name}: none up to length {} with entries within {}",
                args.max_len, args.max_entry
            )?,
        }
    }
    Ok(())
}

fn parse_family(s: &str) -> Result<FamilyParams, Failure> {
    let bad = || usage(format!("malformed family {s:?}: expected d,k"));
    let (d, k) = s.split_once(',').ok_or_else(bad)?;
    let d = d.trim().parse().map_err(|_| bad())?;
    let k = k.trim().parse().map_err(|_| bad())?;
    catalog_family(d, k)
}

fn cmd_pf(args: &PfArgs, out: &mut impl Write) -> Outcome {
    let families = match &args.family {
        Some(s) => vec![parse_family(s)?],
        None => catalog(),
    };
    let base = Complex::<f64>::from_str(args.base.trim()).map_err(|_| usage(format!("malformed base point {:?}", args.base)))?;
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    if args.ode_tol.is_nan() || args.ode_tol < MIN_TOLERANCE {
        return Err(usage(format!("--ode-tol must be at least {MIN_TOLERANCE:e}")));
    }
    let cfg = PfConfig { base, radius: args.radius, ode_tol: args.ode_tol, tol: args.tol, ..PfConfig::default() };
    let mut reports = Vec::new();
    for f in &families {
        reports.extend(compare_invariants(f, &cfg).map_err(|e| usage(format!("{f}: {e}")))?);
    }
    out.write_all(to_json(&reports).as_bytes())?;
    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> Outcome {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(usage("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Orbit(a) => cmd_orbit(a, out),
        Command::Tables(a) => cmd_tables(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Screen(a) => cmd_screen(a, out),
        Command::Catalog { action: CatalogAction::Dump } => {
            out.write_all(to_json(&catalog()).as_bytes())?;
            Ok(())
        }
        Command::Pf { action: PfAction::Check(a) } => cmd_pf(a, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(()) if flushed.is_ok() => ExitCode::SUCCESS,
        Ok(()) => ExitCode::from(2),
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
