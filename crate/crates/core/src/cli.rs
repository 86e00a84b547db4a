//! Command-line surface. Every command prints a JSON [`Report`] (or, for
//! `check paper`, a table unless `--json` is given) and maps failures to
//! distinct exit codes.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::One;

use crate::blowup::{
    chart, charts, discrepancy_of_weight, singular_points_on_e, strict_transform_factorization,
    val_e, BlowupError, ChartModel,
};
use crate::cax2::{certify_nash, CertifyOptions, Sign, Verdict};
use crate::dsl::{parse_polynomial, parse_singularity, parse_weight, DslError, SingularityFile};
use crate::lattice::{LatticeError, QuotientLattice, SimplicialCone, DEFAULT_BOX_BOUND};
use crate::num::{parse_q, Q};
use crate::poly::Weight;
use crate::report::{
    ChartDto, ChartsResult, CommandResult, ConeEcho, DiscrepancyRow, FactorizationDto, InputEcho,
    Report, ReproductionTable, RowStatus, ToricAnalysis, ToricNash, ValuationResult,
};
use crate::reproduction;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_INCOMPLETE: i32 = 5;

/// Environment variable holding the default toric box bound `K`.
pub const BOX_BOUND_ENV: &str = "NASHCERT_BOX_BOUND";

#[derive(Debug, Parser)]
#[command(name = "nashcert", version, about = "Exact certificates for toric and cAx/2 Nash valuations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Toric computations on a simplicial cone over N = Z^n + Z e.
    #[command(subcommand)]
    Toric(ToricCommand),
    /// Weighted blow-ups of a `.sing` hyperquotient.
    #[command(subcommand)]
    Blowup(BlowupCommand),
    /// cAx/2 Nash valuation certificates.
    #[command(subcommand)]
    Cax2(Cax2Command),
    /// Built-in reproduction suites.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Args)]
pub struct ConeArgs {
    /// `1/m(a,b,c)` or `Z^n`.
    pub lattice: String,
    /// `std`, or generators `(1,0,0);(0,1,0);(0,0,1)`.
    pub cone: String,
}

#[derive(Debug, Subcommand)]
pub enum ToricCommand {
    /// Terminality, Gorenstein dual vector and discrepancy table.
    Analyze(ConeArgs),
    /// Minimal elements of S_sigma with levels and a completeness flag.
    Nash {
        #[command(flatten)]
        cone: ConeArgs,
        /// Largest level reported.
        #[arg(long, default_value = "2")]
        bound: String,
        /// Initial box size K (default from NASHCERT_BOX_BOUND, else 1).
        #[arg(long = "box")]
        box_bound: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum BlowupCommand {
    /// Chart models, quotient actions, wt and discrepancy.
    Chart {
        file: PathBuf,
        /// `1/m(a,b,c,d)`; defaults to the file's weight.
        #[arg(long)]
        weight: Option<String>,
        /// Restrict to one chart (1..=4).
        #[arg(long)]
        chart: Option<usize>,
    },
    /// val_E(h) and its factorization in every chart.
    Valuation {
        file: PathBuf,
        #[arg(long)]
        weight: Option<String>,
        #[arg(long)]
        h: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Cax2Command {
    /// Full Nash certificate.
    Certify {
        file: PathBuf,
        /// Branch of the Case-2 change of coordinates.
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<Sign>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CheckCommand {
    /// Recomputes the cAx/2 reference computations and prints a table.
    Paper {
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Semantic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => EXIT_IO,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Semantic(_) => EXIT_SEMANTIC,
        }
    }
}

impl From<DslError> for CliError {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Syntax { .. } => CliError::Parse(e.to_string()),
            DslError::Semantic { ref witnesses, .. } => {
                let w: Vec<String> = witnesses
                    .iter()
                    .map(|w| format!("{} (class {})", w.monomial, w.class))
                    .collect();
                if w.is_empty() {
                    CliError::Semantic(e.to_string())
                } else {
                    CliError::Semantic(format!("{e}; witnesses: {}", w.join(", ")))
                }
            }
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

impl From<BlowupError> for CliError {
    fn from(e: BlowupError) -> Self {
        CliError::Semantic(e.to_string())
    }
}

/// What a command produced: the report, how to print it, and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub text: Option<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn json(report: Report, exit_code: i32) -> Self {
        Outcome {
            report,
            text: None,
            exit_code,
        }
    }

    pub fn rendered(&self) -> String {
        self.text.clone().unwrap_or_else(|| self.report.to_json())
    }
}

/// Parses `args` (including the program name), runs the command, prints the
/// result and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match run(cli.command, echo) {
        Ok(out) => {
            println!("{}", out.rendered());
            out.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(command: Command, arguments: Vec<String>) -> Result<Outcome, CliError> {
    let mut input = InputEcho {
        arguments,
        ..InputEcho::default()
    };
    match command {
        Command::Toric(ToricCommand::Analyze(c)) => {
            let cone = parse_cone(&c.lattice, &c.cone)?;
            let result = toric_analysis(&cone)?;
            Ok(Outcome::json(
                Report::new("toric analyze", input, CommandResult::ToricAnalysis(result)),
                EXIT_OK,
            ))
        }
        Command::Toric(ToricCommand::Nash {
            cone,
            bound,
            box_bound,
        }) => {
            let cone = parse_cone(&cone.lattice, &cone.cone)?;
            let bound = parse_q(&bound).map_err(|e| CliError::Parse(format!("--bound: {e}")))?;
            let k = match box_bound {
                Some(k) => k,
                None => default_box_bound()?,
            };
            let nash = cone.nash_valuations(&bound, k)?;
            let code = if nash.complete { EXIT_OK } else { EXIT_INCOMPLETE };
            let result = ToricNash {
                cone: ConeEcho::of(&cone),
                nash,
            };
            Ok(Outcome::json(
                Report::new("toric nash", input, CommandResult::ToricNash(result)),
                code,
            ))
        }
        Command::Blowup(BlowupCommand::Chart {
            file,
            weight,
            chart: only,
        }) => {
            let sing = load(&file, &mut input)?;
            let w = resolve_weight(weight.as_deref(), &sing)?;
            let models = match only {
                Some(i) => vec![chart(&sing.hq, &w, i)?],
                None => charts(&sing.hq, &w)?,
            };
            let result = ChartsResult {
                equation: sing.hq.phi().to_string(),
                action: sing.hq.action().to_string(),
                weight: w.to_string(),
                wt_phi: sing
                    .hq
                    .phi()
                    .weighted_order(&w)
                    .map_err(|e| CliError::Semantic(e.to_string()))?,
                discrepancy: discrepancy_of_weight(&sing.hq, &w)?,
                charts: chart_dtos(&models)?,
            };
            Ok(Outcome::json(
                Report::new("blowup chart", input, CommandResult::Charts(result)),
                EXIT_OK,
            ))
        }
        Command::Blowup(BlowupCommand::Valuation { file, weight, h }) => {
            let sing = load(&file, &mut input)?;
            let w = resolve_weight(weight.as_deref(), &sing)?;
            let hp = parse_polynomial(&h)?;
            let val = val_e(&hp, &w)?;
            let factorizations = (1..=4)
                .map(|i| strict_transform_factorization(&hp, &w, i).map(|f| FactorizationDto::from(&f)))
                .collect::<Result<Vec<_>, _>>()?;
            let result = ValuationResult {
                h: hp.to_string(),
                weight: w.to_string(),
                val_e: val,
                factorizations,
            };
            Ok(Outcome::json(
                Report::new("blowup valuation", input, CommandResult::Valuation(result)),
                EXIT_OK,
            ))
        }
        Command::Cax2(Cax2Command::Certify { file, sign }) => {
            let sing = load(&file, &mut input)?;
            let opts = CertifyOptions {
                sign,
                weight: sing.weight.clone(),
            };
            let cert =
                certify_nash(&sing.hq, &opts).map_err(|e| CliError::Semantic(e.to_string()))?;
            let code = match cert.verdict {
                Verdict::Verified => EXIT_OK,
                Verdict::Incomplete => EXIT_INCOMPLETE,
                Verdict::Failed => EXIT_VERIFICATION,
            };
            Ok(Outcome::json(
                Report::new(
                    "cax2 certify",
                    input,
                    CommandResult::Certificate((&cert).into()),
                ),
                code,
            ))
        }
        Command::Check(CheckCommand::Paper { json }) => {
            let table = reproduction::run();
            let code = if table.failed == 0 {
                EXIT_OK
            } else {
                EXIT_VERIFICATION
            };
            let text = (!json).then(|| render_table(&table));
            Ok(Outcome {
                report: Report::new("check paper", input, CommandResult::Reproduction(table)),
                text,
                exit_code: code,
            })
        }
    }
}

/// Box bound from `NASHCERT_BOX_BOUND`, else the library default.
pub fn default_box_bound() -> Result<u64, CliError> {
    match std::env::var(BOX_BOUND_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|e| CliError::Parse(format!("{BOX_BOUND_ENV}={v:?}: {e}"))),
        Err(_) => Ok(DEFAULT_BOX_BOUND),
    }
}

fn load(path: &Path, input: &mut InputEcho) -> Result<SingularityFile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let sing = parse_singularity(&text)?;
    input.file = Some(path.display().to_string());
    input.canonical = Some(sing.to_string());
    Ok(sing)
}

fn resolve_weight(arg: Option<&str>, sing: &SingularityFile) -> Result<Weight, CliError> {
    match (arg, &sing.weight) {
        (Some(text), _) => Ok(parse_weight(text)?),
        (None, Some(w)) => Ok(w.clone()),
        (None, None) => Err(CliError::Parse(
            "no weight: pass --weight or add a weight statement".to_string(),
        )),
    }
}

fn chart_dtos(models: &[ChartModel]) -> Result<Vec<ChartDto>, CliError> {
    models
        .iter()
        .map(|m| {
            let r = singular_points_on_e(m).map_err(|e| CliError::Semantic(e.to_string()))?;
            Ok(ChartDto::new(m, &r))
        })
        .collect()
}

fn toric_analysis(cone: &SimplicialCone) -> Result<ToricAnalysis, CliError> {
    let mut rows = Vec::new();
    for p in cone.enumerate_s(&Q::from_integer(2.into()))? {
        if cone.lattice().is_primitive(&p.coordinates)? {
            rows.push(DiscrepancyRow {
                minimal: cone.is_minimal(&p.coordinates)?,
                discrepancy: &p.level - Q::one(),
                point: p,
            });
        }
    }
    let minimal_discrepancy = rows.iter().map(|r| r.discrepancy.clone()).min();
    Ok(ToricAnalysis {
        cone: ConeEcho::of(cone),
        terminal: cone.is_terminal(),
        dual_vector: cone.gorenstein_dual().clone(),
        discrepancy_table: rows,
        minimal_discrepancy,
    })
}

/// `Z^n` or `1/m(a_1,...,a_n)` (spaces allowed).
pub fn parse_lattice(text: &str) -> Result<QuotientLattice, CliError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || CliError::Parse(format!("lattice {text:?}: expected Z^n or 1/m(a,...)"));
    if let Some(n) = s.strip_prefix("Z^") {
        let n: usize = n.parse().map_err(|_| bad())?;
        return Ok(QuotientLattice::standard(n)?);
    }
    let rest = s.strip_prefix("1/").ok_or_else(bad)?;
    let open = rest.find('(').ok_or_else(bad)?;
    let m: u64 = rest[..open].parse().map_err(|_| bad())?;
    let body = rest[open..]
        .strip_prefix('(')
        .and_then(|b| b.strip_suffix(')'))
        .ok_or_else(bad)?;
    let weights = body
        .split(',')
        .map(|w| w.parse::<i64>().map_err(|_| bad()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(QuotientLattice::cyclic(m, &weights)?)
}

/// `std`, or `;`-separated tuples of rationals.
pub fn parse_cone(lattice: &str, cone: &str) -> Result<SimplicialCone, CliError> {
    let lat = parse_lattice(lattice)?;
    if cone.trim() == "std" {
        return Ok(SimplicialCone::standard(lat)?);
    }
    let bad = |g: &str| CliError::Parse(format!("cone generator {g:?}: expected (q,...,q)"));
    let generators = cone
        .split(';')
        .map(|g| {
            let t = g.trim();
            let body = t
                .strip_prefix('(')
                .and_then(|b| b.strip_suffix(')'))
                .ok_or_else(|| bad(t))?;
            body.split(',')
                .map(|x| parse_q(x.trim()).map_err(|_| bad(t)))
                .collect::<Result<Vec<Q>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SimplicialCone::new(lat, generators)?)
}

/// Fixed-width pass/fail table.
pub fn render_table(t: &ReproductionTable) -> String {
    let width = t.rows.iter().map(|r| r.id.len()).max().unwrap_or(0);
    let mut out = String::new();
    for r in &t.rows {
        let status = match r.status {
            RowStatus::Pass => "PASS",
            RowStatus::Fail => "FAIL",
            RowStatus::ExpectedWarning => "WARN",
        };
        out.push_str(&format!("{status}  {:<width$}  {}\n", r.id, r.actual));
        if r.status != RowStatus::Pass {
            out.push_str(&format!("      {:<width$}  expected: {}\n", "", r.expected));
            if let Some(p) = &r.published {
                out.push_str(&format!("      {:<width$}  published: {p}\n", ""));
            }
            out.push_str(&format!("      {:<width$}  {}\n", "", r.note));
        }
    }
    out.push_str(&format!(
        "{} passed, {} failed, {} expected warnings",
        t.passed, t.failed, t.expected_warnings
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;
    use num_traits::Zero;

    #[test]
    fn lattice_syntax() {
        let l = parse_lattice("1/2(1,1,1)").unwrap();
        assert_eq!(l.index(), 2);
        assert_eq!(l.extra(), &[q(1, 2), q(1, 2), q(1, 2)]);
        assert_eq!(parse_lattice("Z^3").unwrap().index(), 1);
        assert!(matches!(parse_lattice("1/2[1,1]"), Err(CliError::Parse(_))));
        assert!(matches!(parse_lattice("1/0(1,1)"), Err(CliError::Semantic(_))));
    }

    #[test]
    fn cone_syntax() {
        let c = parse_cone("Z^2", "(1,0); (1,2)").unwrap();
        assert_eq!(c.multiplicity(), 2);
        assert!(matches!(parse_cone("Z^2", "(1,0);1,2"), Err(CliError::Parse(_))));
        assert!(matches!(parse_cone("Z^2", "(2,0);(0,1)"), Err(CliError::Semantic(_))));
    }

    #[test]
    fn analysis_of_half_cone() {
        let c = parse_cone("1/2(1,1,1)", "std").unwrap();
        let a = toric_analysis(&c).unwrap();
        assert!(a.terminal.terminal);
        assert_eq!(a.minimal_discrepancy, Some(q(1, 2)));
        assert!(a.discrepancy_table.iter().all(|r| r.minimal));
        assert!(Q::zero() < a.discrepancy_table[0].discrepancy);
    }
}
