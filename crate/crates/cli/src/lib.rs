//! Command-line plumbing for the `eislat` verifier: argument parsing, the
//! claim runners shared by the subcommands, and report emission.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use eislat::boundary::{
    check_disjointness, check_incidence, classify_cusps, find_hyperplanes, label_classes, ClassLabel, CuspClass,
    CuspFile, HyperplaneFile, HyperplaneRecord,
};
use eislat::constructions::{self as cons, big_lambda};
use eislat::zlattice::isometry_definite;
use eislat::{ELattice, Error, Status, WitnessReport, ZLattice};
use serde::Serialize;
use serde_json::{json, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_REFUTED: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "eislat",
    version,
    about = "Exact verification of the Eisenstein lattice claims behind the cubic threefold ball quotient"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Also write the output to this file
    #[arg(long, global = true, value_name = "PATH")]
    pub report: Option<PathBuf>,

    /// Emit JSON
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit one line per claim (default)
    #[arg(long, global = true)]
    pub text: bool,

    /// Worker threads for the parallel searches
    #[arg(long, global = true, default_value_t = 1, value_name = "N")]
    pub parallel: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one claim check, or all of them
    Verify {
        #[arg(value_enum)]
        claim: Claim,
        #[command(flatten)]
        bounds: Bounds,
        /// Largest k for the per-k checks on Λ_k
        #[arg(long, default_value_t = 10)]
        k: usize,
    },
    /// Classify the isotropic vectors of Λ by their quotient lattices
    Cusps {
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        /// Write the classes as a cusp file
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Find hyperplanes of Λ spanned by copies of Λ₁₀
    Hyperplanes {
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u64,
        #[arg(long, default_value_t = DEFAULT_MAX)]
        max: usize,
        /// Write the records as a hyperplane file
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Incidence and disjointness checks between cusps and hyperplanes
    Boundary {
        #[arg(value_enum)]
        check: BoundaryCheck,
        #[command(flatten)]
        bounds: Bounds,
        /// Cusp file from `cusps --out`; computed at --height when absent
        #[arg(long, value_name = "PATH")]
        cusps: Option<PathBuf>,
        /// Hyperplane file from `hyperplanes --out`; computed at --height when absent
        #[arg(long, value_name = "PATH")]
        hyperplanes: Option<PathBuf>,
    },
    /// Plain lattice utilities on lattice files
    Lattice {
        #[command(subcommand)]
        op: LatticeOp,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Bounds {
    /// Height bound for the vector searches
    #[arg(long, default_value_t = DEFAULT_HEIGHT)]
    pub height: u64,
    /// Most hyperplane records to collect
    #[arg(long, default_value_t = DEFAULT_MAX)]
    pub max: usize,
    /// Most hyperplane pairs to test for disjointness
    #[arg(long, default_value_t = DEFAULT_PAIRS)]
    pub pairs: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { height: DEFAULT_HEIGHT, max: DEFAULT_MAX, pairs: DEFAULT_PAIRS }
    }
}

pub const DEFAULT_HEIGHT: u64 = 4;
pub const DEFAULT_MAX: usize = 40;
pub const DEFAULT_PAIRS: usize = 200;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    All,
    E8Lambda4,
    LambdaRelations,
    ConjugateLambda,
    A2Lambda1,
    Lambda10Split,
    Ambient,
    Chordal,
    Arcs,
    VanishingLattice,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryCheck {
    Incidence,
    Disjointness,
}

#[derive(Subcommand, Debug)]
pub enum LatticeOp {
    /// Rank, determinant, signature, parity and discriminant group
    Info { file: PathBuf },
    /// Vectors of a given norm, one of each ± pair
    Shortvec {
        file: PathBuf,
        #[arg(long)]
        norm: i64,
    },
    /// An isometry between two positive definite lattices, if one exists
    Isometry { first: PathBuf, second: PathBuf },
}

#[derive(Debug)]
pub enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, String),
    Lattice(Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Parse(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Lattice(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lattice(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Exit code for a list of reports: the worst status decides.
pub fn exit_code(reports: &[WitnessReport]) -> i32 {
    match Status::worst(reports.iter().map(|r| r.status)) {
        Status::Verified => EXIT_OK,
        Status::Refuted => EXIT_REFUTED,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

#[derive(Serialize)]
struct SeedInvariants {
    claims_total: usize,
    verified: usize,
    refuted: usize,
    inconclusive: usize,
}

#[derive(Serialize)]
struct Envelope<'a> {
    tool_version: &'a str,
    seed_invariants: SeedInvariants,
    reports: &'a [WitnessReport],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(reports: &[WitnessReport], format: Format) -> String {
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    match format {
        Format::Json => {
            let env = Envelope {
                tool_version: TOOL_VERSION,
                seed_invariants: SeedInvariants {
                    claims_total: reports.len(),
                    verified: count(Status::Verified),
                    refuted: count(Status::Refuted),
                    inconclusive: count(Status::Inconclusive),
                },
                reports,
            };
            let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let width = reports.iter().map(|r| r.claim_id.len()).max().unwrap_or(0);
            let mut s = String::new();
            for r in reports {
                let bound = if r.search_bound.is_null() { "-".to_string() } else { r.search_bound.to_string() };
                let _ = writeln!(
                    s,
                    "{:<width$}  {:<12}  (bound={bound}, elapsed={}ms)",
                    r.claim_id,
                    r.status.as_str().to_uppercase(),
                    r.elapsed_ms
                );
            }
            s
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let s = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&s).map_err(|e| CliError::Parse(path.to_path_buf(), e.to_string()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let s = serde_json::to_string_pretty(value).expect("values serialize");
    fs::write(path, s + "\n").map_err(|e| CliError::Io(path.to_path_buf(), e))
}

/// `check_incidence` after labelling the classes by incidence. Too few
/// classes or records gives an inconclusive report that names the gap; a
/// failed labelling is a refutation.
pub fn incidence_report(classes: &mut [CuspClass], records: &[HyperplaneRecord]) -> Result<WitnessReport, Error> {
    let l = big_lambda();
    let bound = json!({"classes": classes.len(), "normals": records.len()});
    if classes.len() < 2 || records.is_empty() {
        let w = json!({"reason": "need two cusp classes and at least one hyperplane record"});
        return Ok(WitnessReport::new("incidence", Status::Inconclusive, w, bound));
    }
    if classes.iter().any(|c| c.label == ClassLabel::Unassigned) {
        match label_classes(&l, classes, records) {
            Ok(()) => {}
            Err(Error::UnlabeledClasses) => {
                let w = json!({"reason": "no class is free of incidences, or both are"});
                return Ok(WitnessReport::new("incidence", Status::Refuted, w, bound));
            }
            Err(e) => return Err(e),
        }
    }
    check_incidence(&l, classes, records)
}

/// `check_disjointness`, inconclusive rather than an error when fewer than
/// two records were found.
pub fn disjointness_report(records: &[HyperplaneRecord], max_pairs: usize) -> Result<WitnessReport, Error> {
    match check_disjointness(&big_lambda(), records, max_pairs) {
        Err(Error::TooFewRecords) => Ok(WitnessReport::new(
            "disjointness",
            Status::Inconclusive,
            json!({"reason": "fewer than two hyperplane records", "records": records.len()}),
            json!({"max_pairs": max_pairs, "records": records.len()}),
        )),
        r => r,
    }
}

fn timed(f: impl FnOnce() -> Result<WitnessReport, Error>) -> Result<WitnessReport, Error> {
    let mut err = None;
    let r = WitnessReport::timed(|| {
        f().unwrap_or_else(|e| {
            err = Some(e);
            WitnessReport::new("", Status::Inconclusive, Value::Null, Value::Null)
        })
    });
    match err {
        Some(e) => Err(e),
        None => Ok(r),
    }
}

/// Cusps, hyperplanes, incidence and disjointness, in that order.
pub fn boundary_reports(bounds: Bounds) -> Result<Vec<WitnessReport>, Error> {
    let l = big_lambda();
    let mut classes = Vec::new();
    let cusps = timed(|| {
        let c = classify_cusps(&l, bounds.height)?;
        classes = c.classes;
        Ok(c.report)
    })?;
    let mut records = Vec::new();
    let hyper = timed(|| {
        let (r, report) = find_hyperplanes(bounds.height, bounds.max)?;
        records = r;
        Ok(report)
    })?;
    let incidence = timed(|| incidence_report(&mut classes, &records))?;
    let disjoint = timed(|| disjointness_report(&records, bounds.pairs))?;
    Ok(vec![cusps, hyper, incidence, disjoint])
}

/// Reports for one `verify` target.
pub fn verify(claim: Claim, bounds: Bounds, k: usize) -> Result<Vec<WitnessReport>, Error> {
    let one = |f: &dyn Fn() -> Result<WitnessReport, Error>| timed(f).map(|r| vec![r]);
    match claim {
        Claim::E8Lambda4 => one(&cons::verify_e8_lambda4),
        Claim::LambdaRelations => one(&|| cons::verify_lambda_relations(k)),
        Claim::ConjugateLambda => one(&|| cons::verify_conjugate_lambda(k)),
        Claim::A2Lambda1 => one(&cons::verify_a2_lambda1),
        Claim::Lambda10Split => one(&|| cons::verify_lambda10_split(bounds.height)),
        Claim::Ambient => one(&cons::verify_ambient),
        Claim::Chordal => one(&cons::verify_chordal),
        Claim::Arcs => one(&cons::verify_arcs),
        Claim::VanishingLattice => one(&cons::verify_vanishing_lattice),
        Claim::All => {
            let mut out = Vec::new();
            for c in [
                Claim::LambdaRelations,
                Claim::ConjugateLambda,
                Claim::A2Lambda1,
                Claim::E8Lambda4,
                Claim::Lambda10Split,
                Claim::Ambient,
                Claim::Chordal,
                Claim::VanishingLattice,
                Claim::Arcs,
            ] {
                out.extend(verify(c, bounds, k)?);
            }
            out.extend(boundary_reports(bounds)?);
            Ok(out)
        }
    }
}

fn load_lattice(path: &Path) -> CliResult<ZLattice> {
    read_json(path)
}

fn lattice_op(op: &LatticeOp) -> CliResult<Value> {
    Ok(match op {
        LatticeOp::Info { file } => {
            let s = fs::read_to_string(file).map_err(|e| CliError::Io(file.clone(), e))?;
            if let Ok(l) = serde_json::from_str::<ZLattice>(&s) {
                json!({"rank": l.rank(), "det": l.det(), "invariants": l.invariants()})
            } else {
                let l: ELattice = serde_json::from_str(&s).map_err(|e| CliError::Parse(file.clone(), e.to_string()))?;
                json!({"rank": l.rank(), "invariants": l.invariants()})
            }
        }
        LatticeOp::Shortvec { file, norm } => {
            let l = load_lattice(file)?;
            let v = l.short_vectors(*norm)?;
            json!({"norm": norm, "count": v.len(), "vectors": v})
        }
        LatticeOp::Isometry { first, second } => {
            let (a, b) = (load_lattice(first)?, load_lattice(second)?);
            let f = isometry_definite(&a, &b, None)?;
            json!({"isometric": f.is_some(), "isometry": f})
        }
    })
}

fn lattice_text(v: &Value) -> String {
    let mut s = String::new();
    if let Some(vs) = v.get("vectors").and_then(Value::as_array) {
        let _ = writeln!(s, "{} vectors of norm {} (up to sign)", vs.len(), v["norm"]);
        for x in vs {
            let _ = writeln!(s, "{x}");
        }
        return s;
    }
    if let Some(iso) = v.get("isometric") {
        let _ = writeln!(s, "isometric: {iso}");
        if let Some(rows) = v["isometry"].as_array() {
            for r in rows {
                let _ = writeln!(s, "{r}");
            }
        }
        return s;
    }
    if let Some(obj) = v.as_object() {
        for (k, x) in obj {
            let _ = writeln!(s, "{k}: {x}");
        }
    }
    s
}

fn run_inner(cli: &Cli, out: &mut String) -> CliResult<i32> {
    let format = if cli.json { Format::Json } else { Format::Text };
    let reports = match &cli.command {
        Command::Verify { claim, bounds, k } => {
            if *k == 0 || *k > 10 {
                return Err(CliError::Usage("--k must lie in 1..=10".into()));
            }
            verify(*claim, *bounds, *k)?
        }
        Command::Cusps { height, out } => {
            let l = big_lambda();
            let mut classes = Vec::new();
            let r = timed(|| {
                let c = classify_cusps(&l, *height)?;
                classes = c.classes;
                Ok(c.report)
            })?;
            if let Some(p) = out {
                write_json(p, &CuspFile { classes })?;
            }
            vec![r]
        }
        Command::Hyperplanes { height, max, out } => {
            let mut records = Vec::new();
            let r = timed(|| {
                let (recs, report) = find_hyperplanes(*height, *max)?;
                records = recs;
                Ok(report)
            })?;
            if let Some(p) = out {
                write_json(p, &HyperplaneFile { records })?;
            }
            vec![r]
        }
        Command::Boundary { check, bounds, cusps, hyperplanes } => {
            let records = match hyperplanes {
                Some(p) => read_json::<HyperplaneFile>(p)?.records,
                None => find_hyperplanes(bounds.height, bounds.max)?.0,
            };
            match check {
                BoundaryCheck::Incidence => {
                    let mut classes = match cusps {
                        Some(p) => read_json::<CuspFile>(p)?.classes,
                        None => classify_cusps(&big_lambda(), bounds.height)?.classes,
                    };
                    vec![timed(|| incidence_report(&mut classes, &records))?]
                }
                BoundaryCheck::Disjointness => vec![timed(|| disjointness_report(&records, bounds.pairs))?],
            }
        }
        Command::Lattice { op } => {
            let v = lattice_op(op)?;
            *out = match format {
                Format::Json => serde_json::to_string_pretty(&v).expect("values serialize") + "\n",
                Format::Text => lattice_text(&v),
            };
            return Ok(EXIT_OK);
        }
    };
    *out = emit_report(&reports, format);
    Ok(exit_code(&reports))
}

/// Runs a parsed command line, printing to stdout and writing `--report`.
pub fn run(cli: &Cli) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.parallel.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let mut out = String::new();
    let code = match pool.install(|| run_inner(cli, &mut out)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    print!("{out}");
    if let Some(p) = &cli.report {
        if let Err(e) = fs::write(p, &out) {
            eprintln!("error: {}: {e}", p.display());
            return EXIT_ERROR;
        }
    }
    code
}
