//! The certificate pipeline: blow up with the minimal-discrepancy weight,
//! find every singular point of the blow-up on `E`, and exhibit for each one
//! an invariant `h` with `val_E(h) = 1` whose strict transform passes through
//! the point. By the valuation identity `val_F(h) = a a1 + c val_E(h) + d`
//! every divisor `F` centred at such a point has `val_F(h) > val_E(h)`, so no
//! such `F` dominates `E`.

use std::fmt;

use num_traits::{One, Zero};

use super::{
    normalize_case2, select_weight, validate_cax2, CAx2Error, CAx2Form, Case, Case2Normalization,
    Sign,
};
use crate::blowup::{
    cax2_action, charts, conclude_non_domination, discrepancy_of_weight, singular_points_on_e,
    strict_transform_factorization, val_e, verify_jacobian_point, verify_quotient_point,
    AlgebraicBranch, BranchOrigin, ChartModel, Hyperquotient, NonDomination, SingularPointReport,
    ValuationRelation,
};
use crate::num::{fmt_q, q, Q};
use crate::poly::{SparsePoly, UniPoly, Var, Weight};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every singular point on `E` is covered by a passing check.
    Verified,
    /// Some point could not be solved for or covered; nothing failed.
    Incomplete,
    /// A check that should hold did not.
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Verified => "verified",
            Verdict::Incomplete => "incomplete",
            Verdict::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct CertifyOptions {
    /// Branch of the Case-2 change of coordinates (default `+`).
    pub sign: Option<Sign>,
    /// Replaces the selected weight.
    pub weight: Option<Weight>,
}

/// A singular point on `E`: rational, or a branch of algebraic points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointLocation {
    Rational([Q; 4]),
    Algebraic(AlgebraicBranch),
}

impl fmt::Display for PointLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointLocation::Rational(p) => {
                let c: Vec<String> = p.iter().map(fmt_q).collect();
                write!(f, "({})", c.join(", "))
            }
            PointLocation::Algebraic(b) => write!(f, "{{{}}}", b.describe()),
        }
    }
}

/// One homogeneous coordinate of the `(z : u)` direction of a point on `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DirectionCoord {
    Rational(Q),
    /// A root of this monic quadratic.
    Quadratic(UniPoly),
    Unknown,
}

/// Direction `(z : u)` of a point of `E`: the chart variable contributes
/// `1`, the other of `z, u` its coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    pub z: DirectionCoord,
    pub u: DirectionCoord,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HError {
    #[error("chart index {0} is not in 1..=4")]
    InvalidChart(usize),
    #[error("algebraic point: {0}")]
    AlgebraicPoint(String),
}

fn coord(location: &PointLocation, v: Var) -> DirectionCoord {
    match location {
        PointLocation::Rational(p) => DirectionCoord::Rational(p[v.index()].clone()),
        PointLocation::Algebraic(b) => {
            if let Some(x) = &b.assigned[v.index()] {
                return DirectionCoord::Rational(x.clone());
            }
            match b.relation_for(v).and_then(|r| r.poly.to_univariate(v)) {
                Some(mu) if mu.degree() == Some(2) => DirectionCoord::Quadratic(mu.monic()),
                _ => DirectionCoord::Unknown,
            }
        }
    }
}

pub fn direction(chart: usize, location: &PointLocation) -> Result<Direction, HError> {
    let one = || DirectionCoord::Rational(Q::one());
    match chart {
        1 | 2 => Ok(Direction {
            z: coord(location, Var::Z),
            u: coord(location, Var::U),
        }),
        3 => Ok(Direction {
            z: one(),
            u: coord(location, Var::U),
        }),
        4 => Ok(Direction {
            z: coord(location, Var::Z),
            u: one(),
        }),
        _ => Err(HError::InvalidChart(chart)),
    }
}

/// Quadratic form in `(a, b)` vanishing at direction `(da : db)` where `da`
/// is rational and `db` is rational or quadratic.
fn vanishing_form(
    a: &SparsePoly,
    b: &SparsePoly,
    da: &Q,
    db: &DirectionCoord,
) -> Option<SparsePoly> {
    if da.is_zero() {
        return match db {
            DirectionCoord::Rational(x) if x.is_zero() => None,
            _ => Some(a.pow(2)),
        };
    }
    match db {
        DirectionCoord::Rational(x) => {
            let rho = x / da;
            Some(&b.pow(2) - &a.pow(2).scale(&(&rho * &rho)))
        }
        DirectionCoord::Quadratic(mu) => {
            // mu(t) = t^2 + beta t + gamma; homogenized at the scale of da.
            let beta = mu.coeff(1) / da;
            let gamma = mu.coeff(0) / (da * da);
            Some(b.pow(2) + (a * b).scale(&beta) + a.pow(2).scale(&gamma))
        }
        DirectionCoord::Unknown => None,
    }
}

/// Separating function `x^2 + y^2 + Q(z, u)` with `Q` a quadratic form
/// vanishing along the direction of the point: `u^2 - rho^2 z^2` in chart 3
/// at `u = rho`, `z^2 - rho^2 u^2` in chart 4 at `z = rho`, and
/// `z^2 + u^2` at the origin of charts 1 and 2. An irrational coordinate is
/// allowed when it is a root of a quadratic, whose homogenization replaces
/// `rho^2`.
pub fn construct_h(chart: usize, location: &PointLocation) -> Result<SparsePoly, HError> {
    let d = direction(chart, location)?;
    let x = SparsePoly::var(Var::X);
    let y = SparsePoly::var(Var::Y);
    let z = SparsePoly::var(Var::Z);
    let u = SparsePoly::var(Var::U);
    let by_z = || match &d.z {
        DirectionCoord::Rational(a) => vanishing_form(&z, &u, a, &d.u),
        _ => None,
    };
    let by_u = || match &d.u {
        DirectionCoord::Rational(b) => vanishing_form(&u, &z, b, &d.z),
        _ => None,
    };
    let form = match (&d.z, &d.u) {
        (DirectionCoord::Rational(a), DirectionCoord::Rational(b))
            if a.is_zero() && b.is_zero() =>
        {
            Some(z.pow(2) + u.pow(2))
        }
        // Chart 4 normalizes by its chart coordinate u, the others by z.
        _ if chart == 4 => by_u().or_else(by_z),
        _ => by_z().or_else(by_u),
    };
    let form = form.ok_or_else(|| {
        HError::AlgebraicPoint(format!(
            "no rational quadratic form vanishes at {location} in chart {chart}"
        ))
    })?;
    Ok(x.pow(2) + y.pow(2) + form)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed(String),
    Unsupported(String),
}

/// Evidence that one singular point on `E` is not the centre of a divisor
/// dominating `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheck {
    pub chart: usize,
    pub origin: BranchOrigin,
    pub location: PointLocation,
    pub local_index: u64,
    pub h: Option<SparsePoly>,
    pub val_e_h: Option<Q>,
    /// Exponent of the chart variable in the pull-back of `h`.
    pub k: Option<Q>,
    /// Strict transform of `h` in the chart.
    pub g: Option<SparsePoly>,
    /// `g` at the point (a constant for rational points, the normal form
    /// modulo the relations otherwise). Zero means `g` passes through it.
    pub residue: Option<SparsePoly>,
    pub conclusion: Option<NonDomination>,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NashCertificate {
    pub input: Hyperquotient,
    pub form: CAx2Form,
    pub normalization: Option<Case2Normalization>,
    /// The equation actually blown up.
    pub model: Hyperquotient,
    pub weight: Weight,
    pub discrepancy: Q,
    pub wt_phi: Q,
    pub charts: Vec<ChartModel>,
    pub reports: Vec<SingularPointReport>,
    pub checks: Vec<PointCheck>,
    pub verdict: Verdict,
    /// Reasons for a verdict other than verified.
    pub issues: Vec<String>,
    pub warnings: Vec<String>,
}

impl NashCertificate {
    pub fn case(&self) -> Case {
        self.form.case
    }
}

fn check_point(
    chart: &ChartModel,
    w: &Weight,
    origin: BranchOrigin,
    location: PointLocation,
    local_index: u64,
) -> PointCheck {
    let mut check = PointCheck {
        chart: chart.index,
        origin,
        location,
        local_index,
        h: None,
        val_e_h: None,
        k: None,
        g: None,
        residue: None,
        conclusion: None,
        status: CheckStatus::Passed,
    };
    let h = match construct_h(chart.index, &check.location) {
        Ok(h) => h,
        Err(e) => {
            check.status = CheckStatus::Unsupported(e.to_string());
            return check;
        }
    };
    check.h = Some(h.clone());
    match h.semiinvariant_class(&cax2_action()) {
        Ok(0) => {}
        Ok(c) => {
            check.status = CheckStatus::Failed(format!("h has class {c}, not invariant"));
            return check;
        }
        Err(e) => {
            check.status = CheckStatus::Failed(e.to_string());
            return check;
        }
    }
    let val = match val_e(&h, w) {
        Ok(v) => v,
        Err(e) => {
            check.status = CheckStatus::Failed(e.to_string());
            return check;
        }
    };
    check.val_e_h = Some(val.clone());
    let fact = match strict_transform_factorization(&h, w, chart.index) {
        Ok(f) => f,
        Err(e) => {
            check.status = CheckStatus::Failed(e.to_string());
            return check;
        }
    };
    check.k = Some(fact.k.clone());
    let residue = match &check.location {
        PointLocation::Rational(p) => fact.g.evaluate(p).map(SparsePoly::constant),
        PointLocation::Algebraic(b) => b.residue(&fact.g),
    };
    check.g = Some(fact.g);
    let residue = match residue {
        Ok(r) => r,
        Err(e) => {
            check.status = CheckStatus::Failed(e.to_string());
            return check;
        }
    };
    let vanishes = residue.is_zero();
    check.residue = Some(residue);
    if !val.is_one() {
        check.status = CheckStatus::Failed(format!("val_E(h) = {}, not 1", fmt_q(&val)));
    } else if fact.k != val {
        check.status = CheckStatus::Failed(format!(
            "factored exponent {} differs from val_E(h)",
            fmt_q(&fact.k)
        ));
    } else if !vanishes {
        check.status = CheckStatus::Failed("strict transform of h misses the point".into());
    } else {
        match conclude_non_domination(&ValuationRelation::symbolic(val)) {
            Ok(c) => check.conclusion = Some(c),
            Err(e) => check.status = CheckStatus::Failed(e.to_string()),
        }
    }
    check
}

/// Runs the whole pipeline on a cAx/2 hyperquotient.
pub fn certify_nash(
    hq: &Hyperquotient,
    opts: &CertifyOptions,
) -> Result<NashCertificate, CAx2Error> {
    let form = validate_cax2(hq)?;
    let mut warnings = Vec::new();
    let normalization = match form.case {
        Case::Case1 => {
            if opts.sign.is_some() {
                warnings.push("sign is only used in case 2; ignored".to_string());
            }
            None
        }
        Case::Case2 => Some(normalize_case2(&form, opts.sign.unwrap_or_default())?),
    };
    let model = normalization
        .as_ref()
        .map_or_else(|| hq.clone(), |n| n.model.clone());
    if let Some(n) = &normalization {
        warnings.extend(n.warnings.iter().cloned());
    }
    let weight = opts.weight.clone().unwrap_or_else(|| select_weight(&form));
    let discrepancy = discrepancy_of_weight(&model, &weight)?;
    let wt_phi = model.phi().weighted_order(&weight)?;
    let chart_models = charts(&model, &weight)?;

    let mut issues = Vec::new();
    let mut failed = false;
    if discrepancy != q(1, 2) {
        failed = true;
        issues.push(format!("discrepancy is {}, not 1/2", fmt_q(&discrepancy)));
    }
    let mut reports = Vec::new();
    let mut checks = Vec::new();
    for chart in &chart_models {
        let report = singular_points_on_e(chart)?;
        for p in &report.points {
            if !verify_jacobian_point(chart, &p.coordinates)? {
                failed = true;
                issues.push(format!(
                    "chart {}: reported point fails the Jacobian check",
                    chart.index
                ));
            }
        }
        for p in &report.quotient_points {
            if !verify_quotient_point(chart, &p.coordinates)? {
                failed = true;
                issues.push(format!(
                    "chart {}: reported quotient point fails its check",
                    chart.index
                ));
            }
        }
        for o in &report.obstructions {
            issues.push(format!("chart {}: {o}", chart.index));
        }
        let located = report
            .points
            .iter()
            .chain(&report.quotient_points)
            .map(|p| {
                (
                    p.origin,
                    PointLocation::Rational(p.coordinates.clone()),
                    p.local_index,
                )
            })
            .chain(
                report
                    .algebraic
                    .iter()
                    .map(|b| (b.origin, PointLocation::Algebraic(b.clone()), b.local_index)),
            );
        for (origin, location, index) in located {
            let c = check_point(chart, &weight, origin, location, index);
            match &c.status {
                CheckStatus::Passed => {}
                CheckStatus::Failed(r) => {
                    failed = true;
                    issues.push(format!("chart {}: {} {r}", c.chart, c.location));
                }
                CheckStatus::Unsupported(r) => {
                    issues.push(format!("chart {}: {r}", c.chart));
                }
            }
            checks.push(c);
        }
        reports.push(report);
    }
    let verdict = if failed {
        Verdict::Failed
    } else if issues.is_empty() {
        Verdict::Verified
    } else {
        Verdict::Incomplete
    };
    Ok(NashCertificate {
        input: hq.clone(),
        form,
        normalization,
        model,
        weight,
        discrepancy,
        wt_phi,
        charts: chart_models,
        reports,
        checks,
        verdict,
        issues,
        warnings,
    })
}
