//! Command-line front end: instance files in, text or JSON reports out.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclic::cyclic_power;
use crate::cyclo::{bigint_json, format_factors, RootExponentVector, UnitRoot};
use crate::defect::{defect_of_system, nodal_beta, DefectError, ProjectivePointSet};
use crate::infinity::{
    assemble, zeta_forms, AssembleOptions, BetaSpec, CheckStatus, InfinityError, LocalData,
    ProblemSpec, Report, DEFAULT_ENUMERATE_CAP,
};
use crate::jordan::JordanStructure;
use crate::localsing::{SingularityEntry, SingularityError};
use crate::oracle::{
    all_structures, random_cases, run_selftest, OracleError, SelftestReport, DEFAULT_LEVEL_CAP,
    MAX_SELFTEST_DIM,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CHECK: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
    #[error("malformed instance: {0}")]
    Json(String),
    #[error("singularity {index}: {source}")]
    Singularity {
        index: usize,
        #[source]
        source: SingularityError,
    },
    #[error(transparent)]
    Infinity(#[from] InfinityError),
    #[error(transparent)]
    Defect(#[from] DefectError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Parser, Debug)]
#[command(name = "monodromy", version, about = "Jordan structure of the monodromy at infinity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalFlags,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalFlags {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
    /// Maximum number of enumerated beta vectors.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATE_CAP, value_name = "K")]
    pub enumerate_cap: usize,
    /// Largest cyclotomic field level the oracle may use.
    #[arg(long, global = true, default_value_t = DEFAULT_LEVEL_CAP, value_name = "N")]
    pub oracle_level_cap: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Assemble the Jordan structure and run every check.
    Compute { instance: PathBuf },
    /// Admissible range of each beta_s.
    Bounds { instance: PathBuf },
    /// Defect of a point set for one degree, or the full nodal beta vector.
    Defect {
        points: PathBuf,
        #[arg(long, allow_negative_numbers = true, conflicts_with = "nodal", required_unless_present = "nodal")]
        degree: Option<i64>,
        #[arg(long, num_args = 2, value_names = ["N", "D"])]
        nodal: Option<Vec<u64>>,
    },
    /// Zeta function of the leading form in both product forms.
    Zeta { instance: PathBuf },
    /// Compare the combinatorial cyclic power with explicit matrices.
    Oracle(OracleArgs),
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 4)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 3)]
    pub max_m: u64,
    /// Eigenvalue orders divide this.
    #[arg(long, default_value_t = 6)]
    pub order: u64,
    /// Seeded random cases instead of the exhaustive sweep.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    pub cases: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: u32,
    pub d: u64,
    #[serde(default)]
    pub singularities: Vec<SingularityEntry>,
    pub beta: BetaEntry,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(tag = "mode", rename_all = "snake_case", deny_unknown_fields)]
pub enum BetaEntry {
    Given {
        #[serde(with = "bigint_json::vec")]
        values: Vec<BigInt>,
    },
    FromNodes {
        points: Vec<Vec<String>>,
    },
    Enumerate {},
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Json(e.to_string()))
    }

    pub fn into_spec(self) -> Result<ProblemSpec, CliError> {
        if self.n < 2 {
            return Err(InfinityError::DimensionTooSmall(self.n).into());
        }
        let mut singularities = Vec::new();
        for (index, entry) in self.singularities.into_iter().enumerate() {
            let (model, count) = entry
                .into_model()
                .map_err(|source| CliError::Singularity { index, source })?;
            singularities.extend(std::iter::repeat_n(model, count as usize));
        }
        let beta = match self.beta {
            BetaEntry::Given { values } => BetaSpec::Given(values),
            BetaEntry::FromNodes { points } => {
                let text = serde_json::to_string(&points).expect("string arrays serialize");
                BetaSpec::FromNodes(ProjectivePointSet::from_json(&text, Some(self.n as usize))?)
            }
            BetaEntry::Enumerate {} => BetaSpec::Enumerate,
        };
        Ok(ProblemSpec {
            n: self.n,
            d: self.d,
            singularities,
            beta,
        })
    }
}

/// What a command produced: the report body and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Read {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn load_spec(path: &Path) -> Result<ProblemSpec, CliError> {
    InstanceFile::parse(&read(path)?)?.into_spec()
}

fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(bigint_json::to_repr).collect())
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn root_label(a: UnitRoot) -> String {
    if a.is_one() {
        "1".to_string()
    } else {
        format!("e^(2πi·{a})")
    }
}

/// One row per eigenvalue, one column per block size.
pub fn block_table(j: &JordanStructure) -> String {
    let width = j.max_block_size();
    let mut out = String::new();
    let _ = write!(out, "{:<18}", "eigenvalue");
    for l in 1..=width {
        let _ = write!(out, "{:>6}", format!("#{l}"));
    }
    out.push('\n');
    for alpha in j.spectrum() {
        let _ = write!(out, "{:<18}", root_label(alpha));
        for l in 1..=width {
            let _ = write!(out, "{:>6}", j.sharp(alpha, l));
        }
        out.push('\n');
    }
    out
}

fn poly_json(p: &RootExponentVector) -> Value {
    json!({
        "roots": p,
        "cyclotomic": p.cyclotomic_display(),
    })
}

pub fn report_json(report: &Report) -> Value {
    let enumerate = report.beta_mode == "enumerate";
    let (beta_used, jordan) = if enumerate {
        (
            Value::Array(report.assemblies.iter().map(|a| ints(&a.beta)).collect()),
            serde_json::to_value(report.assemblies.iter().map(|a| &a.jordan).collect::<Vec<_>>())
                .expect("structures serialize"),
        )
    } else {
        let a = &report.assemblies[0];
        (ints(&a.beta), serde_json::to_value(&a.jordan).expect("structures serialize"))
    };
    json!({
        "n": report.n,
        "d": report.d,
        "beta_mode": report.beta_mode,
        "milnor_sum": bigint_json::to_repr(&report.milnor_sum),
        "dimension": bigint_json::to_repr(&report.dimension),
        "chi": ints(&report.chi),
        "bounds": report.bounds.iter().map(|(l, u)| ints(&[l.clone(), u.clone()])).collect::<Vec<_>>(),
        "beta_used": beta_used,
        "jordan": jordan,
        "truncated": report.truncated,
        "charpoly": poly_json(&report.charpoly),
        "zeta": poly_json(&report.zeta),
        "checks": report.checks,
        "warnings": report.warnings,
    })
}

fn status_label(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "FAIL",
        CheckStatus::NotApplicable => "n/a",
    }
}

pub fn report_text(report: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "n = {}, d = {}, total Milnor number {}, dimension {}",
        report.n, report.d, report.milnor_sum, report.dimension
    );
    let _ = writeln!(out, "chi: {}", join(&report.chi));
    let _ = writeln!(out, "beta mode: {}", report.beta_mode);
    for a in &report.assemblies {
        let _ = writeln!(out, "\nbeta = ({})", join(&a.beta).replace(' ', ", "));
        out.push_str(&block_table(&a.jordan));
    }
    if report.truncated {
        let _ = writeln!(out, "\n(enumeration truncated)");
    }
    let _ = writeln!(out, "\ncharacteristic polynomial: {}", format_factors(&report.charpoly.cyclotomic_display()));
    let _ = writeln!(out, "zeta function of f_d: {}", format_factors(&report.zeta.cyclotomic_display()));
    let _ = writeln!(out, "\nchecks:");
    for c in &report.checks {
        let _ = writeln!(out, "  [{}] {}: {}", status_label(c.status), c.name, c.detail);
    }
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

fn cmd_compute(path: &Path, flags: &GlobalFlags) -> Result<Outcome, CliError> {
    let spec = load_spec(path)?;
    let report = assemble(
        &spec,
        AssembleOptions {
            enumerate_cap: flags.enumerate_cap,
        },
    )?;
    let body = if flags.json {
        pretty(&report_json(&report))
    } else {
        report_text(&report)
    };
    let code = if report.all_passed() { EXIT_OK } else { EXIT_CHECK };
    Ok(Outcome { body, code })
}

fn cmd_bounds(path: &Path, flags: &GlobalFlags) -> Result<Outcome, CliError> {
    let spec = load_spec(path)?;
    let local = LocalData::from_spec(&spec)?;
    let chi = local.chi();
    let bounds: Vec<_> = (0..spec.d as usize).map(|s| local.bounds(&chi, s)).collect();
    let body = if flags.json {
        pretty(&json!({
            "chi": ints(&chi),
            "bounds": bounds.iter().map(|(l, u)| json!({
                "lower": bigint_json::to_repr(l),
                "upper": bigint_json::to_repr(u),
            })).collect::<Vec<_>>(),
        }))
    } else {
        let mut out = format!("{:>4}{:>8}{:>8}{:>8}\n", "s", "chi", "lower", "upper");
        for (s, (l, u)) in bounds.iter().enumerate() {
            let _ = writeln!(out, "{:>4}{:>8}{:>8}{:>8}", s, chi[s], l, u);
        }
        out
    };
    Ok(Outcome { body, code: EXIT_OK })
}

fn cmd_defect(
    path: &Path,
    degree: Option<i64>,
    nodal: Option<&[u64]>,
    flags: &GlobalFlags,
) -> Result<Outcome, CliError> {
    let text = read(path)?;
    let ambient = nodal.map(|v| v[0] as usize);
    let points = ProjectivePointSet::from_json(&text, ambient)?;
    let (value, text) = match (degree, nodal) {
        (Some(q), _) => {
            if q < 0 {
                return Err(CliError::Usage(format!("degree must be ≥ 0 (got {q})")));
            }
            let v = defect_of_system(&points, q as usize);
            (json!({ "degree": q, "defect": bigint_json::to_repr(&v) }), format!("{v}\n"))
        }
        (None, Some(nd)) => {
            let (n, d) = (nd[0], nd[1]);
            let n = u32::try_from(n).map_err(|_| CliError::Usage(format!("n = {n} is too large")))?;
            let beta = nodal_beta(&points, n, d)?;
            (json!({ "n": n, "d": d, "beta": ints(&beta) }), format!("beta = ({})\n", join(&beta).replace(' ', ", ")))
        }
        (None, None) => return Err(CliError::Usage("pass --degree or --nodal".into())),
    };
    let body = if flags.json { pretty(&value) } else { text };
    Ok(Outcome { body, code: EXIT_OK })
}

fn cmd_zeta(path: &Path, flags: &GlobalFlags) -> Result<Outcome, CliError> {
    let spec = load_spec(path)?;
    let local = LocalData::from_spec(&spec)?;
    let (product, by_chi) = zeta_forms(local.n, local.d, &local.milnor);
    let agree = product == by_chi;
    let body = if flags.json {
        pretty(&json!({
            "zeta": poly_json(&product),
            "chi_form": poly_json(&by_chi),
            "agree": agree,
        }))
    } else {
        let mut out = String::new();
        for (a, e) in by_chi.iter() {
            let _ = writeln!(out, "{:<18}{:>8}", root_label(a), e);
        }
        let _ = writeln!(out, "{}", format_factors(&product.cyclotomic_display()));
        let _ = writeln!(out, "forms agree: {agree}");
        out
    };
    Ok(Outcome {
        body,
        code: if agree { EXIT_OK } else { EXIT_CHECK },
    })
}

fn selftest_body(report: &SelftestReport, mode: &str, flags: &GlobalFlags) -> String {
    if flags.json {
        return pretty(&json!({
            "mode": mode,
            "checked": report.checked,
            "passed": report.passed(),
            "failures": report.failures,
        }));
    }
    let mut out = format!(
        "{mode}: {} cases, {} disagreements\n",
        report.checked,
        report.failures.len()
    );
    for f in &report.failures {
        let _ = writeln!(
            out,
            "counterexample: m = {}\n  input: {}\n  combinatorial: {}\n  matrix: {}",
            f.m,
            serde_json::to_string(&f.input).expect("structures serialize"),
            serde_json::to_string(&f.combinatorial).expect("structures serialize"),
            serde_json::to_string(&f.matrix).expect("structures serialize"),
        );
    }
    out
}

/// The oracle command with a pluggable combinatorial side, so a test
/// harness can feed in a faulty implementation.
pub fn cmd_oracle_with<F>(args: &OracleArgs, flags: &GlobalFlags, combinatorial: F) -> Result<Outcome, CliError>
where
    F: Fn(&JordanStructure, u64) -> JordanStructure + Sync,
{
    if args.max_dim > MAX_SELFTEST_DIM {
        return Err(OracleError::DimensionCap {
            got: args.max_dim,
            cap: MAX_SELFTEST_DIM,
        }
        .into());
    }
    if args.order == 0 || args.max_m == 0 || args.max_dim == 0 {
        return Err(CliError::Usage("--order, --max-m and --max-dim must be positive".into()));
    }
    let (cases, mode) = match args.seed {
        Some(seed) => (
            random_cases(args.cases, args.max_dim, args.order, args.max_m, seed),
            "random",
        ),
        None => {
            let structures = all_structures(args.max_dim, args.order);
            let cases: Vec<_> = structures
                .iter()
                .flat_map(|t| (1..=args.max_m).map(move |m| (t.clone(), m)))
                .collect();
            (cases, "exhaustive")
        }
    };
    let report = run_selftest(&cases, flags.oracle_level_cap, combinatorial)?;
    Ok(Outcome {
        body: selftest_body(&report, mode, flags),
        code: if report.passed() { EXIT_OK } else { EXIT_CHECK },
    })
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let flags = &cli.global;
    match &cli.command {
        Command::Compute { instance } => cmd_compute(instance, flags),
        Command::Bounds { instance } => cmd_bounds(instance, flags),
        Command::Defect {
            points,
            degree,
            nodal,
        } => cmd_defect(points, *degree, nodal.as_deref(), flags),
        Command::Zeta { instance } => cmd_zeta(instance, flags),
        Command::Oracle(args) => cmd_oracle_with(args, flags, cyclic_power),
    }
}

/// Runs a parsed command line, writing the report where asked, and
/// returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match execute(cli) {
        Ok(outcome) => {
            match &cli.global.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, &outcome.body) {
                        let err = CliError::Write {
                            path: path.clone(),
                            message: e.to_string(),
                        };
                        eprintln!("error: {err}");
                        return EXIT_INPUT;
                    }
                }
                None => print!("{}", outcome.body),
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
