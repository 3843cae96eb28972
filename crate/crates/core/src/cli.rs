//! Command-line surface.
//!
//! Exit codes: 0 when the command succeeds or the property holds, 1 when the
//! property fails (the counterexample is printed), 2 on usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::axioms::check_circuit_axioms;
use crate::enumeration::{enumerate_matroids, pair_catalog, Method, WitnessStatus};
use crate::matroid::Matroid;
use crate::minors::{contract, delete};
use crate::quotient::{
    certify_quotient, factor_homotopy, lift_witness, remark_circuits, remark_comparison, verify_pair, QuotientError,
    QuotientVerdict,
};
use crate::sets::{GroundSet, SetFamily, SubsetMask};
use crate::sweep;
use crate::text::{parse_document, parse_matroid_text, serialize_matroid_text, serialize_named};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "matroid-lift", about = "Matroid quotients, lifts and their factorizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MethodArg {
    Basis,
    Circuit,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the circuit axioms of a document
    CheckAxioms {
        file: PathBuf,
        /// Use strong circuit elimination
        #[arg(long)]
        strong: bool,
    },
    /// Rank of the matroid or of a subset
    Rank {
        file: PathBuf,
        /// Comma-separated labels
        #[arg(long)]
        set: Option<String>,
    },
    /// Print the dual matroid
    Dual { file: PathBuf },
    /// Delete and/or contract labelled elements
    Minor {
        file: PathBuf,
        #[arg(long)]
        delete: Option<String>,
        #[arg(long)]
        contract: Option<String>,
    },
    /// List the cyclic sets
    CyclicSets {
        file: PathBuf,
        #[arg(long)]
        nullity: Option<usize>,
    },
    /// Decide whether M is a quotient of L
    Quotient {
        mfile: PathBuf,
        lfile: PathBuf,
        /// Print the covering of every circuit of L
        #[arg(long)]
        certificate: bool,
    },
    /// Build N on E ∪ X with N / X = M and N \ X = L
    Lift {
        mfile: PathBuf,
        lfile: PathBuf,
        #[arg(long)]
        labels: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Split (M, L) into rank-one quotients
    Factor {
        mfile: PathBuf,
        lfile: PathBuf,
        #[arg(long)]
        labels: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check N / X = M and N \ X = L
    VerifyPair {
        nfile: PathBuf,
        #[arg(long)]
        x: String,
        mfile: PathBuf,
        lfile: PathBuf,
    },
    /// Intermediate circuit family of index J
    Remark {
        mfile: PathBuf,
        lfile: PathBuf,
        #[arg(long)]
        j: usize,
        /// Compare both index readings against the factorization
        #[arg(long)]
        compare: bool,
    },
    /// Write the catalog of all matroids on N elements
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "basis")]
        method: MethodArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Write the verdict for every ordered pair of the catalog on N elements
    Pairs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the cyclic-set lemma checks on one matroid
    CheckLemmas { file: PathBuf },
    /// Run the acceptance sweeps up to N elements
    Sweep {
        #[arg(long)]
        n: usize,
    },
}

/// Outcome of a command that ran: whether the property held, and its report.
struct Report {
    holds: bool,
    text: String,
}

impl Report {
    fn ok(text: String) -> Self {
        Report { holds: true, text }
    }

    fn verdict(holds: bool, text: String) -> Self {
        Report { holds, text }
    }
}

type CmdResult = Result<Report, String>;

pub fn run_command<I, T>(argv: I) -> CommandOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                CommandOutput { code, stdout: text, stderr: String::new() }
            } else {
                CommandOutput { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(r) => CommandOutput {
            code: if r.holds { EXIT_OK } else { EXIT_PROPERTY_FAILS },
            stdout: r.text,
            stderr: String::new(),
        },
        Err(msg) => CommandOutput { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}

fn dispatch(cmd: Command) -> CmdResult {
    match cmd {
        Command::CheckAxioms { file, strong } => check_axioms(&file, strong),
        Command::Rank { file, set } => rank(&file, set.as_deref()),
        Command::Dual { file } => Ok(Report::ok(serialize_matroid_text(&load(&file)?.dual()))),
        Command::Minor { file, delete, contract } => minor(&file, delete.as_deref(), contract.as_deref()),
        Command::CyclicSets { file, nullity } => cyclic_sets(&file, nullity),
        Command::Quotient { mfile, lfile, certificate } => quotient(&mfile, &lfile, certificate),
        Command::Lift { mfile, lfile, labels, out } => lift(&mfile, &lfile, &labels, out.as_deref()),
        Command::Factor { mfile, lfile, labels, out } => factor(&mfile, &lfile, &labels, out.as_deref()),
        Command::VerifyPair { nfile, x, mfile, lfile } => verify(&nfile, &x, &mfile, &lfile),
        Command::Remark { mfile, lfile, j, compare } => remark(&mfile, &lfile, j, compare),
        Command::Enumerate { n, method, out } => enumerate(n, method, &out),
        Command::Pairs { n, out } => pairs(n, &out),
        Command::CheckLemmas { file } => check_lemmas(&file),
        Command::Sweep { n } => run_sweep(n),
    }
}

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Matroid, String> {
    parse_matroid_text(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn split_labels(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn mask(ground: &GroundSet, list: &str) -> Result<SubsetMask, String> {
    ground.mask_of(split_labels(list)).map_err(|e| e.to_string())
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn check_axioms(file: &Path, strong: bool) -> CmdResult {
    let doc = parse_document(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
    let ground = GroundSet::new(doc.ground.iter().cloned()).map_err(|e| e.to_string())?;
    let family: SetFamily = doc
        .circuit_lines
        .iter()
        .map(|c| ground.mask_of(c.iter().map(String::as_str)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let report = check_circuit_axioms(&ground, &family, strong);
    let mode = if strong { "strong" } else { "weak" };
    Ok(match report.first() {
        None => Report::ok(format!("circuit axioms ({mode}): pass\n")),
        Some(_) => Report::verdict(false, format!("circuit axioms ({mode}): fail\n{}\n", report.describe(&ground))),
    })
}

fn rank(file: &Path, set: Option<&str>) -> CmdResult {
    let m = load(file)?;
    Ok(Report::ok(match set {
        None => format!("rank = {}\n", m.rank()),
        Some(list) => {
            let a = mask(m.ground(), list)?;
            format!("rank {} = {}\n", m.ground().format_mask(a), m.rank_of(a))
        }
    }))
}

fn minor(file: &Path, del: Option<&str>, con: Option<&str>) -> CmdResult {
    let m = load(file)?;
    let d = del.map(|l| mask(m.ground(), l)).transpose()?.unwrap_or_default();
    let c = con.map(|l| mask(m.ground(), l)).transpose()?.unwrap_or_default();
    if d.intersects(c) {
        return Err("--delete and --contract must be disjoint".into());
    }
    let labels_of = |z: SubsetMask| z.iter().map(|i| m.ground().label(i).to_string()).collect::<Vec<_>>();
    let d_labels = labels_of(d);
    let mut out = m.clone();
    if !c.is_empty() {
        out = contract(&out, c).map_err(|e| e.to_string())?;
    }
    if !d.is_empty() {
        let d_now = out.ground().mask_of(d_labels.iter().map(String::as_str)).map_err(|e| e.to_string())?;
        out = delete(&out, d_now).map_err(|e| e.to_string())?;
    }
    Ok(Report::ok(serialize_matroid_text(&out)))
}

fn cyclic_sets(file: &Path, nullity: Option<usize>) -> CmdResult {
    let m = load(file)?;
    let sets = m.cyclic_sets(nullity).map_err(|e| e.to_string())?;
    let mut text = String::new();
    for a in sets.iter() {
        writeln!(text, "{} nullity={}", m.ground().format_mask(a), m.nullity(a)).unwrap();
    }
    Ok(Report::ok(text))
}

fn quotient(mfile: &Path, lfile: &Path, certificate: bool) -> CmdResult {
    let (m, l) = (load(mfile)?, load(lfile)?);
    let g = m.ground();
    match certify_quotient(&m, &l).map_err(|e| e.to_string())? {
        QuotientVerdict::Quotient(cert) => {
            let mut text = format!("quotient: yes\ns = {}\n", cert.step_s);
            if certificate {
                for (d, covering) in &cert.coverings {
                    let parts: Vec<String> = covering.iter().map(|c| g.format_mask(c)).collect();
                    writeln!(text, "{} = {}", g.format_mask(*d), parts.join(" ∪ ")).unwrap();
                }
            }
            Ok(Report::ok(text))
        }
        QuotientVerdict::NotQuotient(r) => Ok(Report::verdict(
            false,
            format!(
                "quotient: no\ncircuit {} of L is not a union of circuits of M; uncovered {}\n",
                g.format_mask(r.circuit),
                g.format_mask(r.uncovered)
            ),
        )),
    }
}

/// Errors that mean the property under test failed rather than bad input.
fn is_property_failure(e: &QuotientError) -> bool {
    matches!(
        e,
        QuotientError::QuotientViolation { .. }
            | QuotientError::ConstructionFailure { .. }
            | QuotientError::FactorizationFailure { .. }
            | QuotientError::LemmaCounterexample { .. }
    )
}

fn quotient_result<T>(r: Result<T, QuotientError>, ground: &GroundSet) -> Result<Result<T, Report>, String> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(QuotientError::QuotientViolation { circuit, uncovered }) => Ok(Err(Report::verdict(
            false,
            format!(
                "not a quotient: circuit {} of L leaves {} uncovered\n",
                ground.format_mask(circuit),
                ground.format_mask(uncovered)
            ),
        ))),
        Err(e) if is_property_failure(&e) => Ok(Err(Report::verdict(false, format!("{e}\n")))),
        Err(e) => Err(e.to_string()),
    }
}

fn lift(mfile: &Path, lfile: &Path, labels: &str, out: Option<&Path>) -> CmdResult {
    let (m, l) = (load(mfile)?, load(lfile)?);
    let labels = split_labels(labels);
    let w = match quotient_result(lift_witness(&m, &l, &labels), m.ground())? {
        Ok(w) => w,
        Err(report) => return Ok(report),
    };
    let doc = serialize_named(&w.n, "N");
    if let Some(dir) = out {
        write_file(&dir.join("N.m"), &doc)?;
    }
    Ok(Report::ok(doc))
}

fn factor(mfile: &Path, lfile: &Path, labels: &str, out: Option<&Path>) -> CmdResult {
    let (m, l) = (load(mfile)?, load(lfile)?);
    let labels = split_labels(labels);
    let seq = match quotient_result(factor_homotopy(&m, &l, &labels), m.ground())? {
        Ok(seq) => seq,
        Err(report) => return Ok(report),
    };
    let mut text = String::new();
    if let Some(dir) = out {
        let w = lift_witness(&m, &l, &labels).map_err(|e| e.to_string())?;
        write_file(&dir.join("N.m"), &serialize_named(&w.n, "N"))?;
    }
    for (i, step) in seq.steps.iter().enumerate() {
        let doc = serialize_named(step, &format!("L{i}"));
        if let Some(dir) = out {
            write_file(&dir.join(format!("L{i}.m")), &doc)?;
        }
        text.push_str(&doc);
    }
    Ok(Report::ok(text))
}

fn verify(nfile: &Path, x: &str, mfile: &Path, lfile: &Path) -> CmdResult {
    let (n, m, l) = (load(nfile)?, load(mfile)?, load(lfile)?);
    let x = mask(n.ground(), x)?;
    let check = verify_pair(&n, x, &m, &l).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let mut part = |name: &str, ok: bool, got: &Matroid| {
        writeln!(text, "{name}: {}", if ok { "match" } else { "MISMATCH" }).unwrap();
        if !ok {
            text.push_str(&serialize_named(got, name.split_whitespace().next().unwrap_or("minor")));
        }
    };
    part("N/X = M", check.contraction_matches, &check.contraction);
    part("N\\X = L", check.deletion_matches, &check.deletion);
    Ok(Report::verdict(check.holds(), text))
}

fn remark(mfile: &Path, lfile: &Path, j: usize, compare: bool) -> CmdResult {
    let (m, l) = (load(mfile)?, load(lfile)?);
    let family = match quotient_result(remark_circuits(&m, &l, j), m.ground())? {
        Ok(f) => f,
        Err(report) => return Ok(report),
    };
    let mut text = format!("family j={j}\n");
    for c in family.family.iter() {
        writeln!(text, "circuit {}", m.ground().format_mask(c)).unwrap();
    }
    let mut holds = family.report.passed();
    writeln!(text, "circuit axioms: {}", if holds { "pass" } else { "fail" }).unwrap();
    if !holds {
        writeln!(text, "{}", family.report.describe(m.ground())).unwrap();
    }
    if compare {
        let s = l.rank().saturating_sub(m.rank());
        let labels: Vec<String> = (1..=s).map(|i| format!("x{i}")).collect();
        let cmp = remark_comparison(&m, &l, &labels).map_err(|e| e.to_string())?;
        for c in &cmp {
            writeln!(
                text,
                "L{}: j=i+1 {}; j=i {}",
                c.i,
                if c.shifted_agrees { "agrees" } else { "differs" },
                if c.literal_agrees { "agrees" } else { "differs" }
            )
            .unwrap();
        }
        holds &= cmp.iter().all(|c| c.shifted_agrees);
    }
    Ok(Report::verdict(holds, text))
}

fn enumerate(n: usize, method: MethodArg, out: &Path) -> CmdResult {
    let method = match method {
        MethodArg::Basis => Method::BasisFilter,
        MethodArg::Circuit => Method::CircuitFilter,
    };
    let catalog = enumerate_matroids(n, method).map_err(|e| e.to_string())?;
    write_file(out, &catalog.to_text())?;
    Ok(Report::ok(format!("{} matroids on {n} elements ({method} filter)\n", catalog.len())))
}

fn pairs(n: usize, out: &Path) -> CmdResult {
    let pc = pair_catalog(n).map_err(|e| e.to_string())?;
    write_file(out, &pc.to_text())?;
    let quotients = pc.records.iter().filter(|r| r.quotient).count();
    let failures: Vec<String> =
        pc.records.iter().filter(|r| r.witness == WitnessStatus::Fail).map(|r| r.line()).collect();
    let mut text =
        format!("{} pairs, {quotients} quotient pairs, {} lift failures\n", pc.records.len(), failures.len());
    for f in &failures {
        writeln!(text, "{f}").unwrap();
    }
    Ok(Report::verdict(failures.is_empty(), text))
}

fn check_lemmas(file: &Path) -> CmdResult {
    let m = load(file)?;
    if m.len() > crate::matroid::CYCLIC_ENUMERATION_CAP {
        return Err(format!("ground set of {} elements exceeds the cyclic-set cap", m.len()));
    }
    let t = sweep::lemma_sweep_matroid(&m);
    let mut text = format!("{}\n", t.summary());
    for c in &t.counterexamples {
        writeln!(text, "{c}").unwrap();
    }
    Ok(Report::verdict(t.counterexamples.is_empty(), text))
}

fn run_sweep(n: usize) -> CmdResult {
    if n == 0 || n > 6 {
        return Err("sweep --n must lie in 1..=6".into());
    }
    let random = if n >= 5 { sweep::RANDOM_INSTANCES } else { 0 };
    let results = [
        sweep::catalog_cross_check(n),
        sweep::lift_property_sweep(n),
        sweep::lift_criterion_sweep(n),
        sweep::oracle_equivalence_sweep(n),
        sweep::lemma_sweeps(n, random),
        sweep::homotopy_sweep(n),
        sweep::worked_fixtures(),
        sweep::remark_sweep(n),
        sweep::cli_contract(n),
    ];
    let mut text = String::new();
    for r in &results {
        writeln!(text, "{}", r.status_line()).unwrap();
        for d in &r.details {
            writeln!(text, "    {d}").unwrap();
        }
    }
    Ok(Report::verdict(results.iter().all(|r| r.ok()), text))
}
