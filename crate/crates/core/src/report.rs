//! JSON report schema. Every rational is a `"p/q"` string, polynomials and
//! actions use their canonical text form, and field order is fixed by the
//! struct declarations, so identical inputs give byte-identical reports.

use serde::{Deserialize, Serialize};

use crate::blowup::{
    AlgebraicBranch, ChartModel, SingularPoint, SingularPointReport, StrictFactorization,
};
use crate::cax2::{CheckStatus, NashCertificate, PointCheck, PointLocation};
use crate::lattice::{DualVector, LatticePoint, NashValuations, SimplicialCone, TerminalCheck};
use crate::num::{fmt_q, Q};

pub const TOOL: &str = "nashcert";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub input: InputEcho,
    pub result: CommandResult,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: InputEcho, result: CommandResult) -> Self {
        let warnings = result.warnings();
        Report {
            tool: TOOL.to_string(),
            version: VERSION.to_string(),
            command: command.to_string(),
            input,
            result,
            warnings,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report DTOs always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// The arguments and (for file inputs) the canonical text of the input.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub arguments: Vec<String>,
    pub file: Option<String>,
    pub canonical: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CommandResult {
    ToricAnalysis(ToricAnalysis),
    ToricNash(ToricNash),
    Charts(ChartsResult),
    Valuation(ValuationResult),
    Certificate(CertificateReport),
    Reproduction(ReproductionTable),
}

impl CommandResult {
    fn warnings(&self) -> Vec<String> {
        match self {
            CommandResult::ToricAnalysis(_) => vec![],
            CommandResult::ToricNash(t) if !t.nash.complete => vec![format!(
                "completeness check did not pass within box bound {}",
                t.nash.box_bound
            )],
            CommandResult::ToricNash(_) => vec![],
            CommandResult::Charts(c) => c
                .charts
                .iter()
                .flat_map(|ch| ch.singular_points.obstructions.iter())
                .cloned()
                .collect(),
            CommandResult::Valuation(_) => vec![],
            CommandResult::Certificate(c) => c.warnings.clone(),
            CommandResult::Reproduction(t) => t
                .rows
                .iter()
                .filter(|r| r.status == RowStatus::ExpectedWarning)
                .map(|r| format!("{}: {}", r.id, r.note))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeEcho {
    pub lattice: String,
    pub generators: Vec<Vec<String>>,
    pub multiplicity: usize,
}

impl ConeEcho {
    pub fn of(cone: &SimplicialCone) -> Self {
        ConeEcho {
            lattice: cone.lattice().to_string(),
            generators: cone.generators().iter().map(|g| strings(g)).collect(),
            multiplicity: cone.multiplicity(),
        }
    }
}

/// One row of the discrepancy table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyRow {
    pub point: LatticePoint,
    #[serde(with = "crate::num::serde_q")]
    pub discrepancy: Q,
    pub minimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricAnalysis {
    pub cone: ConeEcho,
    pub terminal: TerminalCheck,
    pub dual_vector: DualVector,
    /// Primitive points of `S_sigma` with discrepancy at most one.
    pub discrepancy_table: Vec<DiscrepancyRow>,
    #[serde(with = "crate::num::serde_opt_q")]
    pub minimal_discrepancy: Option<Q>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricNash {
    pub cone: ConeEcho,
    pub nash: NashValuations,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointDto {
    pub coordinates: Vec<String>,
    pub local_index: u64,
    pub origin: String,
}

impl From<&SingularPoint> for PointDto {
    fn from(p: &SingularPoint) -> Self {
        PointDto {
            coordinates: strings(&p.coordinates),
            local_index: p.local_index,
            origin: p.origin.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicDto {
    pub description: String,
    pub local_index: u64,
    pub origin: String,
}

impl From<&AlgebraicBranch> for AlgebraicDto {
    fn from(b: &AlgebraicBranch) -> Self {
        AlgebraicDto {
            description: b.describe(),
            local_index: b.local_index,
            origin: b.origin.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReportDto {
    pub smooth: bool,
    pub points: Vec<PointDto>,
    pub quotient_points: Vec<PointDto>,
    pub algebraic: Vec<AlgebraicDto>,
    pub obstructions: Vec<String>,
    pub notes: Vec<String>,
}

impl From<&SingularPointReport> for PointReportDto {
    fn from(r: &SingularPointReport) -> Self {
        PointReportDto {
            smooth: r.is_smooth(),
            points: r.points.iter().map(PointDto::from).collect(),
            quotient_points: r.quotient_points.iter().map(PointDto::from).collect(),
            algebraic: r.algebraic.iter().map(AlgebraicDto::from).collect(),
            obstructions: r
                .obstructions
                .iter()
                .map(|o| format!("chart {}: {o}", r.chart))
                .collect(),
            notes: r.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartDto {
    pub index: usize,
    pub exceptional: String,
    pub quotient_action: String,
    pub quotient_index: u64,
    pub strict_transform: String,
    #[serde(with = "crate::num::serde_q")]
    pub wt_phi: Q,
    pub empty: bool,
    pub misses_exceptional: bool,
    pub singular_points: PointReportDto,
}

impl ChartDto {
    pub fn new(model: &ChartModel, report: &SingularPointReport) -> Self {
        ChartDto {
            index: model.index,
            exceptional: model.exceptional.name().to_string(),
            quotient_action: model.quotient_action.to_string(),
            quotient_index: model.quotient_index(),
            strict_transform: model.strict_phi.to_string(),
            wt_phi: model.wt_phi.clone(),
            empty: model.empty,
            misses_exceptional: model.misses_exceptional,
            singular_points: PointReportDto::from(report),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartsResult {
    pub equation: String,
    pub action: String,
    pub weight: String,
    #[serde(with = "crate::num::serde_q")]
    pub wt_phi: Q,
    #[serde(with = "crate::num::serde_q")]
    pub discrepancy: Q,
    pub charts: Vec<ChartDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorizationDto {
    pub chart: usize,
    pub pullback: String,
    #[serde(with = "crate::num::serde_q")]
    pub k: Q,
    pub g: String,
}

impl From<&StrictFactorization> for FactorizationDto {
    fn from(f: &StrictFactorization) -> Self {
        FactorizationDto {
            chart: f.chart,
            pullback: f.pullback.to_string(),
            k: f.k.clone(),
            g: f.g.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationResult {
    pub h: String,
    pub weight: String,
    #[serde(with = "crate::num::serde_q")]
    pub val_e: Q,
    pub factorizations: Vec<FactorizationDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizationDto {
    pub sign: String,
    pub p: String,
    pub epsilon: i8,
    pub shifted: String,
    pub substitution: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDto {
    pub chart: usize,
    pub origin: String,
    pub location: String,
    pub local_index: u64,
    pub h: Option<String>,
    #[serde(with = "crate::num::serde_opt_q")]
    pub val_e_h: Option<Q>,
    #[serde(with = "crate::num::serde_opt_q")]
    pub k: Option<Q>,
    pub g: Option<String>,
    pub residue: Option<String>,
    pub conclusion: Option<String>,
    /// `passed`, `failed` or `unsupported`.
    pub status: String,
    pub detail: Option<String>,
}

impl From<&PointCheck> for CheckDto {
    fn from(c: &PointCheck) -> Self {
        let (status, detail) = match &c.status {
            CheckStatus::Passed => ("passed", None),
            CheckStatus::Failed(s) => ("failed", Some(s.clone())),
            CheckStatus::Unsupported(s) => ("unsupported", Some(s.clone())),
        };
        let location = match &c.location {
            PointLocation::Rational(p) => format!("({})", strings(p).join(", ")),
            PointLocation::Algebraic(_) => c.location.to_string(),
        };
        CheckDto {
            chart: c.chart,
            origin: c.origin.to_string(),
            location,
            local_index: c.local_index,
            h: c.h.as_ref().map(|p| p.to_string()),
            val_e_h: c.val_e_h.clone(),
            k: c.k.clone(),
            g: c.g.as_ref().map(|p| p.to_string()),
            residue: c.residue.as_ref().map(|p| p.to_string()),
            conclusion: c.conclusion.as_ref().map(|n| n.chain.clone()),
            status: status.to_string(),
            detail,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub equation: String,
    pub action: String,
    pub f: String,
    pub tau0: u64,
    pub case: String,
    pub leading_form: String,
    pub normalization: Option<NormalizationDto>,
    pub model: String,
    pub weight: String,
    #[serde(with = "crate::num::serde_q")]
    pub discrepancy: Q,
    #[serde(with = "crate::num::serde_q")]
    pub wt_phi: Q,
    pub charts: Vec<ChartDto>,
    pub checks: Vec<CheckDto>,
    pub verdict: String,
    pub issues: Vec<String>,
    pub warnings: Vec<String>,
}

impl From<&NashCertificate> for CertificateReport {
    fn from(c: &NashCertificate) -> Self {
        CertificateReport {
            equation: c.input.phi().to_string(),
            action: c.input.action().to_string(),
            f: c.form.f.to_string(),
            tau0: c.form.tau0,
            case: c.form.case.to_string(),
            leading_form: c.form.leading.poly().to_string(),
            normalization: c.normalization.as_ref().map(|n| NormalizationDto {
                sign: n.sign.to_string(),
                p: n.p.to_string(),
                epsilon: n.epsilon,
                shifted: n.shifted.name().to_string(),
                substitution: n.substitution.clone(),
            }),
            model: c.model.phi().to_string(),
            weight: c.weight.to_string(),
            discrepancy: c.discrepancy.clone(),
            wt_phi: c.wt_phi.clone(),
            charts: c
                .charts
                .iter()
                .zip(&c.reports)
                .map(|(m, r)| ChartDto::new(m, r))
                .collect(),
            checks: c.checks.iter().map(CheckDto::from).collect(),
            verdict: c.verdict.to_string(),
            issues: c.issues.clone(),
            warnings: c.warnings.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// The recomputed value differs from the published display exactly as
    /// recorded in the fixture.
    ExpectedWarning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproductionRow {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub published: Option<String>,
    pub status: RowStatus,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReproductionTable {
    pub rows: Vec<ReproductionRow>,
    pub passed: usize,
    pub failed: usize,
    pub expected_warnings: usize,
}

impl ReproductionTable {
    pub fn new(rows: Vec<ReproductionRow>) -> Self {
        let count = |s| rows.iter().filter(|r| r.status == s).count();
        ReproductionTable {
            passed: count(RowStatus::Pass),
            failed: count(RowStatus::Fail),
            expected_warnings: count(RowStatus::ExpectedWarning),
            rows,
        }
    }
}

fn strings(xs: &[Q]) -> Vec<String> {
    xs.iter().map(fmt_q).collect()
}
