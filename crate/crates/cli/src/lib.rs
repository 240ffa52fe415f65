//! `dunkl` command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dunkl_core::report::SpectrumDocument;
use dunkl_core::verify::Verdict;
use dunkl_core::{
    analyze_slice, format_spinor, parse_operator, parse_spinor_poly, run_suite, CheckGroup, DihedralConfig,
    Evaluator, KappaMode, Rational, Signature, SuiteReport, SymmetryOperators, VerifyDocument,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dunkl", version, about = "Exact checks for dihedral Dunkl-Dirac symmetries")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify the symmetry identities on all monomials up to a degree.
    Verify(VerifyArgs),
    /// Joint spectrum of O0 and O123 on one homogeneous slice.
    Spectrum(SpectrumArgs),
    /// Apply an operator expression to a spinor polynomial.
    Apply(ApplyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Dihedral order.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..))]
    pub m: u32,
    /// Clifford signature, +1 or -1.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_epsilon)]
    pub epsilon: Signature,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = 3)]
    pub max_degree: u32,
    /// Comma-separated check groups, or `all`.
    #[arg(long, default_value = "all", value_parser = parse_groups)]
    pub groups: GroupSelection,
    /// `symbolic` or `k0=..,k1=..[,k2=..]`.
    #[arg(long, default_value = "symbolic", value_parser = parse_kappa)]
    pub kappa: KappaSpec,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Include per-check wall-clock times.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub degree: u32,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub k0: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub k1: Rational,
    /// Parameter of the second root orbit for even `m`; defaults to `k1`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_rational)]
    pub k2: Option<Rational>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ApplyArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, allow_hyphen_values = true)]
    pub op: String,
    #[arg(long, allow_hyphen_values = true)]
    pub poly: String,
    #[arg(long, default_value = "symbolic", value_parser = parse_kappa)]
    pub kappa: KappaSpec,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSelection(pub Vec<CheckGroup>);

/// Parsed `--kappa`; a missing `k2` is filled from `k1` when the order is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KappaSpec {
    Symbolic,
    Numeric {
        k0: Rational,
        k1: Rational,
        k2: Option<Rational>,
    },
}

impl KappaSpec {
    pub fn mode(&self, m: u32) -> Result<KappaMode, String> {
        match self {
            KappaSpec::Symbolic => Ok(KappaMode::Symbolic),
            KappaSpec::Numeric { k0, k1, k2 } => {
                let mut v = vec![k0.clone(), k1.clone()];
                match (m % 2 == 0, k2) {
                    (true, Some(k2)) => v.push(k2.clone()),
                    (true, None) => v.push(k1.clone()),
                    (false, Some(_)) => return Err(format!("k2 is not a parameter for odd m = {m}")),
                    (false, None) => {}
                }
                Ok(KappaMode::Numeric(v))
            }
        }
    }
}

fn parse_epsilon(s: &str) -> Result<Signature, String> {
    match s.trim() {
        "+1" | "1" => Ok(Signature::Positive),
        "-1" => Ok(Signature::Negative),
        _ => Err("expected +1 or -1".into()),
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

pub fn parse_groups(s: &str) -> Result<GroupSelection, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(GroupSelection(CheckGroup::ALL.to_vec()));
    }
    let mut out = Vec::new();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let g = CheckGroup::from_name(part).ok_or_else(|| {
            let names: Vec<_> = CheckGroup::ALL.iter().map(|g| g.name()).collect();
            format!("unknown group `{}`; expected `all` or some of {}", part.trim(), names.join(","))
        })?;
        if !out.contains(&g) {
            out.push(g);
        }
    }
    if out.is_empty() {
        return Err("no groups given".into());
    }
    Ok(GroupSelection(out))
}

pub fn parse_kappa(s: &str) -> Result<KappaSpec, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("symbolic") {
        return Ok(KappaSpec::Symbolic);
    }
    let mut vals: [Option<Rational>; 3] = [None, None, None];
    for part in s.split(',') {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| format!("expected `symbolic` or k0=..,k1=..[,k2=..], got `{part}`"))?;
        let idx = match k.trim() {
            "k0" | "kappa0" => 0,
            "k1" | "kappa1" => 1,
            "k2" | "kappa2" => 2,
            other => return Err(format!("unknown parameter `{other}`")),
        };
        if vals[idx].is_some() {
            return Err(format!("k{idx} given twice"));
        }
        vals[idx] = Some(parse_rational(v)?);
    }
    let [k0, k1, k2] = vals;
    match (k0, k1) {
        (Some(k0), Some(k1)) => Ok(KappaSpec::Numeric { k0, k1, k2 }),
        _ => Err("both k0 and k1 are required".into()),
    }
}

fn usage(err: &mut dyn Write, flag: &str, msg: impl std::fmt::Display) -> i32 {
    let _ = writeln!(err, "error: invalid value for '{flag}': {msg}");
    EXIT_USAGE
}

fn emit(out: &mut dyn Write, err: &mut dyn Write, path: Option<&PathBuf>, body: &str) -> i32 {
    match path {
        Some(p) => match std::fs::write(p, body) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                EXIT_FAIL
            }
        },
        None => match out.write_all(body.as_bytes()) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_FAIL
            }
        },
    }
}

/// Parse `argv` (including the program name) and run; returns the exit status.
pub fn run_cli<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match cli.command {
        Command::Verify(a) => verify(a, out, err),
        Command::Spectrum(a) => spectrum(a, out, err),
        Command::Apply(a) => apply(a, out, err),
    }
}

fn config(common: &Common, kappa: &KappaSpec, flag: &str, err: &mut dyn Write) -> Result<DihedralConfig, i32> {
    let mode = kappa.mode(common.m).map_err(|e| usage(err, flag, e))?;
    DihedralConfig::with_kappa(common.m, common.epsilon, mode).map_err(|e| usage(err, "--m", e))
}

fn verify(a: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = match config(&a.common, &a.kappa, "--kappa", err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build() {
        Ok(p) => p,
        Err(e) => return usage(err, "--jobs", e),
    };
    let report = match pool.install(|| run_suite(&cfg, a.max_degree, &a.groups.0)) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAIL;
        }
    };
    let body = match a.format {
        Format::Json => {
            let doc = VerifyDocument::from_report(&report, a.timings);
            let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Text => verify_text(&report, a.timings),
    };
    let code = emit(out, err, a.out.as_ref(), &body);
    if code != EXIT_OK {
        return code;
    }
    if report.summary.fail > 0 {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}

/// Human-readable summary table.
pub fn verify_text(report: &SuiteReport, timings: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "m={} eps={:+} max-degree={} kappa={}",
        report.m,
        report.epsilon,
        report.degree,
        match &report.kappa_mode {
            KappaMode::Symbolic => "symbolic".to_string(),
            KappaMode::Numeric(v) => v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","),
        }
    );
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report.checks {
        let mut line = format!("{:<7} {:<width$} {:<7}", c.group.name(), c.name, c.verdict.label());
        if timings {
            let _ = write!(line, " {:>6}ms", c.millis);
        }
        match &c.verdict {
            Verdict::Fail(cx) => {
                let _ = write!(line, " at {}: {}", cx.monomial, format_spinor(&cx.difference));
            }
            Verdict::Skipped(r) => {
                let _ = write!(line, " {r}");
            }
            Verdict::Pass => {}
        }
        s.push_str(line.trim_end());
        s.push('\n');
    }
    let _ = writeln!(
        s,
        "{} pass, {} fail, {} skipped",
        report.summary.pass, report.summary.fail, report.summary.skipped
    );
    s
}

fn spectrum(a: SpectrumArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let kappa = KappaSpec::Numeric {
        k0: a.k0.clone(),
        k1: a.k1.clone(),
        k2: a.k2.clone(),
    };
    let cfg = match config(&a.common, &kappa, "--k2", err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let result = SymmetryOperators::new(&cfg).and_then(|ops| analyze_slice(&Evaluator::new(&cfg), &ops, a.degree));
    let slice = match result {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAIL;
        }
    };
    let doc = SpectrumDocument::new(&cfg, &slice);
    let body = match a.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
            s.push('\n');
            s
        }
        Format::Text => spectrum_text(&doc),
    };
    emit(out, err, a.out.as_ref(), &body)
}

fn number_text(n: &dunkl_core::report::NumberDoc) -> String {
    match n {
        dunkl_core::report::NumberDoc::Real(x) => x.to_string(),
        dunkl_core::report::NumberDoc::Complex { re, im } => format!("{re}{im:+}i"),
    }
}

pub fn spectrum_text(doc: &SpectrumDocument) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "m={} eps={:+} degree={}", doc.config.m, doc.config.epsilon, doc.degree);
    let _ = writeln!(s, "{:>20} {:>20} {:>5}", "O0", "O123", "mult");
    for e in &doc.eigenpairs {
        let _ = writeln!(s, "{:>20} {:>20} {:>5}", number_text(&e.o0), number_text(&e.o123), e.multiplicity);
    }
    for c in &doc.chains {
        let values: Vec<_> = c.values.iter().map(number_text).collect();
        let _ = writeln!(s, "chain {}: {}", c.direction, values.join(" -> "));
    }
    s
}

fn apply(a: ApplyArgs, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = match config(&a.common, &a.kappa, "--kappa", err) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let ops = match SymmetryOperators::new(&cfg) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_FAIL;
        }
    };
    let op = match parse_operator(&a.op, &ops) {
        Ok(o) => o,
        Err(e) => return usage(err, "--op", e),
    };
    let poly = match parse_spinor_poly(&a.poly, &cfg) {
        Ok(p) => p,
        Err(e) => return usage(err, "--poly", e),
    };
    match Evaluator::new(&cfg).apply(&op, &poly) {
        Ok(img) => emit(out, err, None, &format!("{}\n", format_spinor(&img))),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}
