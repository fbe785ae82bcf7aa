//! Command-line front end.
//!
//! Exit codes: 0 success, 1 not an SDS or rejected, 2 parse or flag error,
//! 3 construction precondition failed, 4 verification defect, 5 classifier
//! disagreement.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::algebra::{prime_power, FieldElement, FiniteField};
use crate::cyclotomy::{
    classify_cases, classify_range, construct_case, family_existence, field_of_order, Candidate,
    CaseId, ClassificationReport, CyclotomicSystem,
};
use crate::designs::{
    feasible, golay_pds, paley_pds, sds_from_pds, verify_sds, verify_sds_characters, Feasibility,
    SdsParams, Strictness,
};
use crate::document::SignedSetDocument;
use crate::error::Error;
use crate::groupring::GroupRingElement;
use crate::groups::AbelianGroup;
use crate::product3::{
    default_d_prime, product3_construct, PaleySeed, Product3Check, Product3Spec,
};
use crate::sequences::{
    autocorrelation_all, is_two_level, sequence_from_sds, weighing_from_sds, WeighingCheck,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_SDS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_DEFECT: i32 = 4;
pub const EXIT_DISAGREEMENT: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "sds",
    version,
    about = "Construct and verify signed difference sets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a signed set and print it as a JSON document.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Verify a document by convolution and by characters.
    Verify { file: PathBuf },
    /// Fourth-order cyclotomic classification.
    Classify(ClassifyArgs),
    /// Ternary sequence of a signed set over a cyclic group.
    Sequence {
        file: PathBuf,
        /// Print the periodic autocorrelation at every shift.
        #[arg(long)]
        acf: bool,
    },
    /// Group-invariant weighing matrix of a (v, k, 0) signed set.
    Weighing {
        file: PathBuf,
        /// Print every row.
        #[arg(long)]
        dense: bool,
        /// Seed for the sampled check above the dense limit.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Perfect-square test for (v, k, lambda).
    Feasible {
        #[arg(long)]
        v: u64,
        #[arg(long)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        lambda: i64,
        /// |P|, checked together with --negative.
        #[arg(long, requires = "negative")]
        positive: Option<u64>,
        /// |N|
        #[arg(long, requires = "positive")]
        negative: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// Squares of F_q lifted to a (q, q-1, -1) SDS.
    Paley {
        #[arg(long)]
        q: u64,
        /// Primitive element recorded in the document (code or comma-separated coordinates).
        #[arg(long)]
        w: Option<String>,
    },
    /// The (243, 242, 161) SDS from the dual ternary Golay code.
    Golay,
    /// The (3^{2m+1}, 3^{2m}+1, 1) product construction.
    Product3 {
        #[arg(long)]
        m: usize,
        /// Element of Z_3^m (code or comma-separated coordinates).
        #[arg(long, default_value = "0")]
        x1: String,
        #[arg(long, default_value_t = 1)]
        x0: u64,
        #[arg(long, value_enum, default_value_t = SeedArg::Squares)]
        dprime: SeedArg,
        /// Verify by characters only.
        #[arg(long)]
        char_only: bool,
    },
    /// A candidate of the fourth-order cyclotomic table.
    Cyclotomic {
        #[arg(long)]
        q: u64,
        #[arg(long = "case")]
        case: String,
        #[arg(long)]
        i: Option<u8>,
        #[arg(long)]
        j: Option<u8>,
        #[arg(long)]
        w: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SeedArg {
    Squares,
    Nonsquares,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, conflicts_with = "max_q", required_unless_present = "max_q")]
    pub q: Option<u64>,
    #[arg(long)]
    pub max_q: Option<u64>,
    /// Also report existence under every primitive element.
    #[arg(long)]
    pub all_w: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Records,
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

type CliResult = std::result::Result<i32, Failure>;

fn usage(e: Error) -> Failure {
    Failure::new(EXIT_USAGE, e.to_string())
}

fn precondition(e: Error) -> Failure {
    Failure::new(EXIT_PRECONDITION, e.to_string())
}

fn defect(e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_DEFECT, format!("verification failed: {e}"))
}

fn io(e: std::io::Error) -> Failure {
    Failure::new(EXIT_USAGE, e.to_string())
}

/// `"1,0"` as coordinates, a bare integer as an element code.
fn parse_element(text: &str, group: &AbelianGroup) -> std::result::Result<usize, Failure> {
    let bad = || Failure::new(EXIT_USAGE, format!("cannot parse element {text:?}"));
    if text.contains(',') {
        let coords = text
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        group.index(&coords).map_err(usage)
    } else {
        let code: usize = text.trim().parse().map_err(|_| bad())?;
        group.check(code).map_err(usage)
    }
}

fn field_with_w(q: u64, w: Option<&str>) -> std::result::Result<FiniteField, Failure> {
    let field = field_of_order(q).map_err(usage)?;
    match w {
        None => Ok(field),
        Some(text) => {
            let code = parse_element(text, &AbelianGroup::additive(&field))?;
            field.with_primitive(FieldElement(code)).map_err(usage)
        }
    }
}

fn read_document(path: &Path) -> std::result::Result<SignedSetDocument, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    SignedSetDocument::parse(&text).map_err(usage)
}

/// Round-trips the document and checks it against `expected` before printing.
fn emit(
    out: &mut dyn Write,
    doc: &SignedSetDocument,
    expected: SdsParams,
    check: Product3Check,
) -> CliResult {
    let text = doc.to_json();
    let back = SignedSetDocument::parse(&text).map_err(defect)?;
    let element = back.element().map_err(defect)?;
    let found = match check {
        Product3Check::Convolution => verify_sds(&element, Strictness::Relaxed).map_err(defect)?,
        Product3Check::Characters => verify_sds_characters(&element).map_err(defect)?,
    };
    if found != expected {
        return Err(defect(format!(
            "expected {}, found {}",
            fmt_params(expected),
            fmt_params(found)
        )));
    }
    writeln!(out, "{text}").map_err(io)?;
    Ok(EXIT_OK)
}

fn fmt_params(p: SdsParams) -> String {
    format!("({},{},{})", p.v, p.k, p.lambda)
}

fn construct(out: &mut dyn Write, family: Family) -> CliResult {
    match family {
        Family::Paley { q, w } => {
            if prime_power(q).is_none() {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("q = {q} is not a prime power"),
                ));
            }
            let field = field_with_w(q, w.as_deref())?;
            let pds = paley_pds(&field).map_err(precondition)?;
            let (set, params) = sds_from_pds(&pds).map_err(defect)?;
            let doc = SignedSetDocument::from_signed_set(&set, Some(&field), Some(params));
            emit(out, &doc, params, Product3Check::Convolution)
        }
        Family::Golay => {
            let pds = golay_pds().map_err(defect)?;
            let (set, params) = sds_from_pds(&pds).map_err(defect)?;
            let doc = SignedSetDocument::from_signed_set(&set, None, Some(params));
            emit(out, &doc, params, Product3Check::Convolution)
        }
        Family::Product3 {
            m,
            x1,
            x0,
            dprime,
            char_only,
        } => {
            let seed = match dprime {
                SeedArg::Squares => PaleySeed::Squares,
                SeedArg::Nonsquares => PaleySeed::NonSquares,
            };
            let d_prime = default_d_prime(m, seed).map_err(precondition)?;
            let x1 = parse_element(&x1, d_prime.group())?;
            let spec = Product3Spec::new(m, x0, x1, d_prime).map_err(precondition)?;
            let check = if char_only {
                Product3Check::Characters
            } else {
                Product3Check::Convolution
            };
            let result = product3_construct(&spec, check).map_err(defect)?;
            if !result.is_strict() {
                eprintln!(
                    "relaxed element; strictness violated at {} elements",
                    result.violations.len()
                );
            }
            let doc = SignedSetDocument::from_element(&result.element, None, Some(result.params));
            emit(out, &doc, result.params, check)
        }
        Family::Cyclotomic { q, case, i, j, w } => {
            let case: CaseId = case.parse().map_err(usage)?;
            let candidate = Candidate::new(case, i, j).map_err(usage)?;
            let field = field_with_w(q, w.as_deref())?;
            let sys = CyclotomicSystem::new(&field, None).map_err(precondition)?;
            let built = construct_case(&sys, &candidate).map_err(precondition)?;
            let pred = &built.prediction;
            let lambda = match (pred.holds, pred.lambda) {
                (true, Some(l)) => l,
                _ => {
                    return Err(Failure::new(
                        EXIT_PRECONDITION,
                        format!("case {case} does not exist for q = {q}: {}", pred.reason),
                    ))
                }
            };
            let expected = SdsParams {
                v: q as usize,
                k: pred.k,
                lambda,
            };
            let doc =
                SignedSetDocument::from_signed_set(&built.set, Some(sys.field()), Some(expected));
            emit(out, &doc, expected, Product3Check::Convolution)
        }
    }
}

fn feasibility_line(element: &GroupRingElement, params: SdsParams) -> (bool, String) {
    let sizes = element
        .to_signed_set()
        .ok()
        .map(|s| (s.positive().len() as u64, s.negative().len() as u64));
    match feasible(params.v as u64, params.k, params.lambda, sizes) {
        Feasibility::Accept { root } => (true, format!("root {root}")),
        Feasibility::Reject(why) => (false, format!("infeasible: {why}")),
    }
}

fn verify(out: &mut dyn Write, file: &Path) -> CliResult {
    let doc = read_document(file)?;
    let element = doc.element().map_err(usage)?;
    let params = match verify_sds(&element, Strictness::Relaxed) {
        Ok(p) => p,
        Err(e) => {
            writeln!(out, "not an SDS: {e}").map_err(io)?;
            return Ok(EXIT_NOT_SDS);
        }
    };
    let (feasible_ok, cert) = feasibility_line(&element, params);
    let violations = element.strictness_violations().len();
    if violations == 0 {
        writeln!(out, "SDS {}, strict, {cert}", fmt_params(params)).map_err(io)?;
    } else {
        writeln!(
            out,
            "relaxed SDS {}; strictness violated at {violations} elements; {cert}",
            fmt_params(params)
        )
        .map_err(io)?;
    }
    match verify_sds_characters(&element) {
        Ok(c) if c == params => writeln!(
            out,
            "characters: |chi(D)|^2 = {} for every non-principal character",
            params.n()
        )
        .map_err(io)?,
        Ok(c) => return Err(defect(format!("character route gives {}", fmt_params(c)))),
        Err(e) => return Err(defect(e)),
    }
    if !feasible_ok {
        return Err(defect(cert));
    }
    if let Some(declared) = doc.declared() {
        if declared != params {
            writeln!(
                out,
                "declared parameters {} do not match",
                fmt_params(declared)
            )
            .map_err(io)?;
            return Ok(EXIT_NOT_SDS);
        }
    }
    Ok(EXIT_OK)
}

fn print_report(
    out: &mut dyn Write,
    report: &ClassificationReport,
    format: Format,
) -> std::io::Result<()> {
    match format {
        Format::Records => {
            for row in &report.rows {
                writeln!(out, "{}", row.record())?;
            }
        }
        Format::Table => {
            writeln!(
                out,
                "q = {}, w = {}, s = {}, t = {}",
                report.q,
                report.w.code(),
                report.params.s,
                report.params.t
            )?;
            writeln!(
                out,
                "{:<5}{:>3}{:>3}  {:<16}{:<10}{:<16}{:<6}agree",
                "case", "i", "j", "predicted", "condition", "verified", "root"
            )?;
            for row in &report.rows {
                let idx = |x: Option<u8>| x.map_or("-".to_string(), |v| v.to_string());
                let predicted = match (row.prediction.lambda, row.prediction.holds) {
                    (Some(l), _) => format!("({},{},{})", row.q, row.prediction.k, l),
                    (None, _) => "-".to_string(),
                };
                let verified = row.verified.map_or("-".to_string(), fmt_params);
                writeln!(
                    out,
                    "{:<5}{:>3}{:>3}  {:<16}{:<10}{:<16}{:<6}{}",
                    row.candidate.case.name(),
                    idx(row.candidate.i),
                    idx(row.candidate.j),
                    predicted,
                    if row.prediction.holds {
                        "holds"
                    } else {
                        "fails"
                    },
                    verified,
                    row.root.map_or("-".to_string(), |r| r.to_string()),
                    if row.agrees() { "yes" } else { "NO" }
                )?;
            }
            if report.existing().any(|r| r.candidate.case == CaseId::C5) {
                writeln!(out, "note: case 5 has k = |P| + |N| = f + 1, not q - 1")?;
            }
        }
    }
    Ok(())
}

fn classify(out: &mut dyn Write, args: &ClassifyArgs) -> CliResult {
    let reports = match (args.q, args.max_q) {
        (Some(q), _) => {
            if prime_power(q).is_none() {
                return Err(Failure::new(
                    EXIT_USAGE,
                    format!("q = {q} is not a prime power"),
                ));
            }
            let field = field_of_order(q).map_err(usage)?;
            let sys = CyclotomicSystem::new(&field, None).map_err(precondition)?;
            vec![classify_cases(&sys).map_err(defect)?]
        }
        (None, Some(max_q)) => classify_range(max_q).map_err(defect)?,
        (None, None) => {
            return Err(Failure::new(
                EXIT_USAGE,
                "one of --q and --max-q is required",
            ))
        }
    };
    let mut disagreements = 0;
    let mut candidates = 0;
    for report in &reports {
        print_report(out, report, args.format).map_err(io)?;
        disagreements += report.disagreements().len();
        candidates += report.rows.len();
        if args.all_w {
            let field = field_of_order(report.q).map_err(defect)?;
            for fam in family_existence(&field).map_err(defect)? {
                writeln!(
                    out,
                    "q={} family={} exists_configured_w={} exists_some_w={}",
                    report.q, fam.case, fam.configured, fam.some_primitive
                )
                .map_err(io)?;
            }
        }
    }
    writeln!(
        out,
        "orders={} candidates={candidates} disagreements={disagreements}",
        reports.len()
    )
    .map_err(io)?;
    Ok(if disagreements == 0 {
        EXIT_OK
    } else {
        EXIT_DISAGREEMENT
    })
}

fn sequence(out: &mut dyn Write, file: &Path, acf: bool) -> CliResult {
    let doc = read_document(file)?;
    let set = doc.signed_set().map_err(precondition)?;
    let s = sequence_from_sds(&set).map_err(precondition)?;
    writeln!(out, "{s}").map_err(io)?;
    if acf {
        for (tau, c) in autocorrelation_all(&s).iter().enumerate() {
            writeln!(out, "{tau} {c}").map_err(io)?;
        }
        writeln!(
            out,
            "two-level: {}",
            if is_two_level(&s) { "yes" } else { "no" }
        )
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn weighing(out: &mut dyn Write, file: &Path, dense: bool, seed: u64) -> CliResult {
    let doc = read_document(file)?;
    let set = doc.signed_set().map_err(precondition)?;
    let (w, check) = match weighing_from_sds(&set, seed) {
        Ok(x) => x,
        Err(e @ Error::NonZeroLambda(_)) => return Err(precondition(e)),
        Err(e @ Error::WeighingCheck { .. }) => return Err(defect(e)),
        Err(e) => {
            writeln!(out, "not an SDS: {e}").map_err(io)?;
            return Ok(EXIT_NOT_SDS);
        }
    };
    writeln!(out, "{}", w.first_row_line()).map_err(io)?;
    if dense {
        for line in w.dense_lines() {
            writeln!(out, "{line}").map_err(io)?;
        }
    }
    match check {
        WeighingCheck::Full => eprintln!("W W^T = {} I checked entrywise", w.weight()),
        WeighingCheck::Sampled { pairs } => eprintln!(
            "W W^T = {} I checked on {pairs} sampled row pairs",
            w.weight()
        ),
    }
    Ok(EXIT_OK)
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> CliResult {
    match cli.command {
        Command::Construct { family } => construct(out, family),
        Command::Verify { file } => verify(out, &file),
        Command::Classify(args) => classify(out, &args),
        Command::Sequence { file, acf } => sequence(out, &file, acf),
        Command::Weighing { file, dense, seed } => weighing(out, &file, dense, seed),
        Command::Feasible {
            v,
            k,
            lambda,
            positive,
            negative,
        } => {
            let sizes = positive.zip(negative);
            match feasible(v, k, lambda, sizes) {
                Feasibility::Accept { root } => {
                    writeln!(out, "feasible, root {root}").map_err(io)?;
                    Ok(EXIT_OK)
                }
                Feasibility::Reject(why) => {
                    writeln!(out, "infeasible: {why}").map_err(io)?;
                    Ok(EXIT_NOT_SDS)
                }
            }
        }
    }
}

/// Parses `args` and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = std::env::var("SDS_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // a pool already built by an earlier call in this process is kept
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
