//! The `fpb` command line: subcommand dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 refusal (a missing assumption flag or an
//! oversized matrix without `--allow-large`), 2 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use crate::assumptions::{first_missing, AssumptionSet, INCLUSION_HYPOTHESES};
use crate::bounds::{koszul_invariants, nu_for, BoundReport, BoundsError, Cited};
use crate::engine::{EngineError, EngineOptions, FrobeniusEngine, IdealSpec, DEFAULT_MAX_MATRIX_ENTRIES};
use crate::graded_ring::RingPresentation;
use crate::problem::ProblemFile;
use crate::report::{self, Format, Report, ReportKind, Timings};

pub const DEFAULT_EMAX: u32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fpb",
    version,
    about = "Degree bounds for Frobenius powers of ideals, checked by exact linear algebra over F_p"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form thresholds: nu, inclusion thresholds, regularity constants
    Bounds {
        #[command(flatten)]
        io: Io,
        /// Tabulate inclusion thresholds for q = p^0 .. p^E
        #[arg(long = "emax", value_name = "E")]
        emax: Option<u32>,
    },
    /// Rank, degree and slope of every Koszul syzygy bundle
    Koszul {
        #[command(flatten)]
        io: Io,
    },
    /// Empirical k(q) for q = p^1 .. p^E against the inclusion threshold
    Kq {
        #[command(flatten)]
        io: Io,
        /// Largest exponent e (default 2, or emax from the problem file)
        #[arg(long = "emax", value_name = "E")]
        emax: Option<u32>,
        /// Largest degree searched
        #[arg(long = "cap", value_name = "K")]
        cap: Option<u32>,
        #[command(flatten)]
        size: Size,
    },
    /// Decide whether an element lies in I^[q], with a certificate
    Member {
        #[command(flatten)]
        io: Io,
        /// q = p^e
        #[arg(long = "q", value_name = "Q")]
        q: u64,
        /// Homogeneous element h to test
        #[arg(long = "elem", value_name = "POLY")]
        elem: String,
        #[command(flatten)]
        size: Size,
    },
    /// Test c*f^q in I^[q] for q = p^1 .. p^E (evidence for f in I*)
    Tight {
        #[command(flatten)]
        io: Io,
        /// Element f tested for tight closure
        #[arg(long = "f", value_name = "POLY")]
        f: String,
        /// Test multiplier c
        #[arg(long = "c", value_name = "POLY")]
        c: String,
        /// Largest exponent e (default 2, or emax from the problem file)
        #[arg(long = "emax", value_name = "E")]
        emax: Option<u32>,
        #[command(flatten)]
        size: Size,
    },
    /// Smallest e <= E with f^q in I^[q]
    Frobenius {
        #[command(flatten)]
        io: Io,
        /// Element f tested for Frobenius closure
        #[arg(long = "f", value_name = "POLY")]
        f: String,
        /// Largest exponent e (default 2, or emax from the problem file)
        #[arg(long = "emax", value_name = "E")]
        emax: Option<u32>,
        #[command(flatten)]
        size: Size,
    },
}

#[derive(Debug, Args)]
pub struct Io {
    /// Problem file
    pub file: PathBuf,
    /// Write the report here instead of stdout (json unless --format says otherwise)
    #[arg(long = "out", value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format (default text on stdout, json with --out)
    #[arg(long = "format", value_enum)]
    pub format: Option<FormatArg>,
    /// Comparison mode: leave out the timings envelope
    #[arg(long = "compare")]
    pub compare: bool,
}

#[derive(Debug, Args)]
pub struct Size {
    /// Run matrix blocks above 4e6 entries
    #[arg(long = "allow-large")]
    pub allow_large: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Refusal(String),
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::MatrixTooLarge { .. } | EngineError::CertificateInvalid => Failure::Refusal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::MissingAssumption { .. } => Failure::Refusal(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

struct Loaded {
    problem: ProblemFile,
    ring: RingPresentation,
    ideal: IdealSpec,
}

fn load(io: &Io) -> Result<Loaded, Failure> {
    let text = std::fs::read_to_string(&io.file)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", io.file.display())))?;
    let problem = ProblemFile::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", io.file.display())))?;
    let ring = problem.ring().map_err(|e| Failure::Input(e.to_string()))?;
    let ideal = problem.ideal(&ring)?;
    Ok(Loaded { problem, ring, ideal })
}

fn engine(loaded: Loaded, size: &Size) -> FrobeniusEngine {
    let max = (!size.allow_large).then_some(DEFAULT_MAX_MATRIX_ENTRIES);
    FrobeniusEngine::with_options(
        loaded.ring,
        loaded.ideal,
        EngineOptions { max_matrix_entries: max, ..EngineOptions::default() },
    )
}

/// `nu` when the flags allow it, else the reason it is missing.
fn nu_or_reason(
    ring: &RingPresentation,
    ideal: &IdealSpec,
    flags: &AssumptionSet,
) -> Result<Cited<BigRational>, String> {
    if let Some(flag) = first_missing(flags, &INCLUSION_HYPOTHESES) {
        return Err(format!("thresholds need the `{flag}` assumption flag, which is not set"));
    }
    nu_for(ideal.degrees(), ring.dim(), flags).map_err(|e| e.to_string())
}

fn parse_element(ring: &RingPresentation, what: &str, text: &str) -> Result<crate::poly::Polynomial, Failure> {
    ring.parse_poly(text).map_err(|e| Failure::Input(format!("--{what} `{text}`: {e}")))
}

fn build(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Bounds { io, emax } => {
            let l = load(io)?;
            let e_max = emax.or(l.problem.options.emax).unwrap_or(DEFAULT_EMAX);
            let p = l.ring.characteristic();
            let qs = (0..=e_max)
                .map(|e| p.checked_pow(e).ok_or(Failure::Input(format!("{p}^{e} does not fit in 64 bits"))))
                .collect::<Result<Vec<_>, _>>()?;
            let b = BoundReport::compute(&l.ring, l.ideal.degrees(), &l.problem.flags, &qs)?;
            Ok(Report::new(ReportKind::Bounds, report::bounds_payload(&b), l.problem.flags.iter().copied()))
        }
        Command::Koszul { io } => {
            let l = load(io)?;
            let d = l.ideal.degrees();
            let rows = (1..d.len()).map(|j| koszul_invariants(d, j)).collect::<Result<Vec<_>, _>>()?;
            Ok(Report::new(ReportKind::Koszul, report::koszul_payload(d, &rows), l.problem.flags.iter().copied()))
        }
        Command::Kq { io, emax, cap, size } => {
            let l = load(io)?;
            let flags = l.problem.flags.clone();
            let e_max = emax.or(l.problem.options.emax).unwrap_or(DEFAULT_EMAX);
            let cap = cap.or(l.problem.options.cap);
            let nu = nu_or_reason(&l.ring, &l.ideal, &flags);
            let p = l.ring.characteristic();
            let eng = engine(l, size);
            let table = eng.containment_table(1, e_max, nu.as_ref().ok().map(|c| &c.value), cap)?;
            let citation = nu.as_ref().ok().map(|c| c.citation);
            let note = nu.as_ref().err().map(String::as_str);
            Ok(Report::new(ReportKind::Kq, report::kq_payload(&table, p, citation, note), flags))
        }
        Command::Member { io, q, elem, size } => {
            let l = load(io)?;
            let flags = l.problem.flags.clone();
            let h = parse_element(&l.ring, "elem", elem)?;
            let eng = engine(l, size);
            let cert = eng.membership(*q, &h)?;
            let entries = h.homogeneous_degree().map_or(0, |m| eng.matrix_entries(*q, m as u32));
            Ok(Report::new(ReportKind::Member, report::member_payload(&cert, eng.ring(), entries), flags))
        }
        Command::Tight { io, f, c, emax, size } => {
            let l = load(io)?;
            let flags = l.problem.flags.clone();
            let fp = parse_element(&l.ring, "f", f)?;
            let cp = parse_element(&l.ring, "c", c)?;
            let e_max = emax.or(l.problem.options.emax).unwrap_or(DEFAULT_EMAX);
            let nu = nu_or_reason(&l.ring, &l.ideal, &flags).ok().map(|c| c.value);
            let eng = engine(l, size);
            let exponents: Vec<u32> = (1..=e_max).collect();
            let r = eng.tight_closure_witness_test(&fp, &cp, &exponents, nu.as_ref())?;
            let payload = report::tight_payload(
                &r,
                eng.ring(),
                &eng.ring().format_poly(&fp),
                &eng.ring().format_poly(&cp),
                nu.as_ref(),
            );
            Ok(Report::new(ReportKind::Tight, payload, flags))
        }
        Command::Frobenius { io, f, emax, size } => {
            let l = load(io)?;
            let flags = l.problem.flags.clone();
            let fp = parse_element(&l.ring, "f", f)?;
            let e_max = emax.or(l.problem.options.emax).unwrap_or(DEFAULT_EMAX);
            let nu = nu_or_reason(&l.ring, &l.ideal, &flags).ok().map(|c| c.value);
            let eng = engine(l, size);
            let r = eng.frobenius_closure_test(&fp, e_max, nu.as_ref())?;
            let payload = report::frobenius_payload(&r, eng.ring(), &eng.ring().format_poly(&fp), nu.as_ref());
            Ok(Report::new(ReportKind::Frobenius, payload, flags))
        }
    }
}

fn io_of(command: &Command) -> &Io {
    match command {
        Command::Bounds { io, .. }
        | Command::Koszul { io }
        | Command::Kq { io, .. }
        | Command::Member { io, .. }
        | Command::Tight { io, .. }
        | Command::Frobenius { io, .. } => io,
    }
}

/// Runs one invocation and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                return 2;
            }
            let _ = write!(stdout, "{text}");
            return 0;
        }
    };
    let io = io_of(&cli.command);
    let format: Format =
        io.format.map(Into::into).unwrap_or(if io.out.is_some() { Format::Json } else { Format::Text });
    let start = Instant::now();
    let mut report = match build(&cli.command) {
        Ok(r) => r,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            return 2;
        }
        Err(Failure::Refusal(msg)) => {
            let _ = writeln!(stderr, "refused: {msg}");
            return 1;
        }
    };
    if !io.compare {
        report.timings = Some(Timings { elapsed_us: start.elapsed().as_micros() as u64 });
    }
    let text = match report.emit(format) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    match &io.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    0
}
