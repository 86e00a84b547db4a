//! Weighted blow-ups of hyperquotient singularities `(phi = 0) in C^4 / Z_m`:
//! admissibility of weights, the four affine charts, the exceptional
//! valuation, discrepancies, strict transforms and singular points on the
//! exceptional divisor.

mod solver;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::num::{fmt_q, gcd_u64, qi, Q};
use crate::poly::{GroupAction, PolyError, SparsePoly, Var, Weight};

pub use solver::{
    singular_points_on_e, verify_jacobian_point, verify_quotient_point, AlgebraicBranch,
    BranchOrigin, Obstruction, Relation, SingularPoint, SingularPointReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BlowupError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("weight {weight} has modulus {found}, the action has modulus {expected}")]
    ModulusMismatch {
        weight: String,
        expected: u64,
        found: u64,
    },
    #[error("weight {weight} together with e1..e4 does not generate the lattice of {action}")]
    Inadmissible { weight: String, action: String },
    #[error("the equation does not vanish at the origin")]
    NotThroughOrigin,
    #[error("chart index {0} is not in 1..=4")]
    InvalidChart(usize),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

/// `(phi = 0) in C^4 / (1/m)(a1, a2, a3, a4)` with `phi` semi-invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperquotient {
    phi: SparsePoly,
    action: GroupAction,
    class: u64,
}

impl Hyperquotient {
    pub fn new(phi: SparsePoly, action: GroupAction) -> Result<Self, BlowupError> {
        if phi.is_zero() {
            return Err(PolyError::ZeroPolynomial.into());
        }
        if let Some((m, _)) = phi.terms().find(|(m, _)| !m.is_integral()) {
            let var = Var::ALL
                .into_iter()
                .find(|&v| !m.is_integral_in(v))
                .expect("fractional variable");
            return Err(PolyError::FractionalExponent {
                var,
                monomial: m.to_string(),
            }
            .into());
        }
        let class = phi.semiinvariant_class(&action)?;
        if !phi.constant_term().is_zero() {
            return Err(BlowupError::NotThroughOrigin);
        }
        Ok(Hyperquotient { phi, action, class })
    }

    pub fn phi(&self) -> &SparsePoly {
        &self.phi
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// Character of `phi` under the action.
    pub fn class(&self) -> u64 {
        self.class
    }
}

impl fmt::Display for Hyperquotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} = 0) in C^4/{}", self.phi, self.action)
    }
}

/// Order of `(1/m) v` in `(Q/Z)^4`.
fn order_mod(m: u64, v: [u64; 4]) -> u64 {
    m / v.iter().fold(m, |g, &x| gcd_u64(g, x))
}

/// True iff `Z^4 + Z sigma` equals `Z^4 + Z (1/m) alpha`: `sigma` lies in the
/// latter and both cyclic extensions of `Z^4` have the same index.
pub fn admissible_weight(act: &GroupAction, w: &Weight) -> Result<bool, BlowupError> {
    let m = act.modulus();
    if w.modulus() != m {
        return Err(BlowupError::ModulusMismatch {
            weight: w.to_string(),
            expected: m,
            found: w.modulus(),
        });
    }
    let sigma = w.entries().map(|e| e % m);
    let alpha = act.weights();
    let in_lattice = (0..m)
        .any(|k| (0..4).all(|i| (k as u128 * alpha[i] as u128 % m as u128) as u64 == sigma[i]));
    Ok(in_lattice && order_mod(m, sigma) == order_mod(m, alpha))
}

fn require_admissible(act: &GroupAction, w: &Weight) -> Result<(), BlowupError> {
    if admissible_weight(act, w)? {
        Ok(())
    } else {
        Err(BlowupError::Inadmissible {
            weight: w.to_string(),
            action: act.to_string(),
        })
    }
}

/// Cyclic quotient of chart `U_i`: `1/w_i` acting with weight `m` on the
/// chart variable and `-w_j` on the others.
pub fn chart_action(w: &Weight, chart: Var) -> GroupAction {
    let n = w.entry(chart);
    let mut ws = [0i64; 4];
    for v in Var::ALL {
        ws[v.index()] = if v == chart {
            w.modulus() as i64
        } else {
            -(w.entry(v) as i64)
        };
    }
    GroupAction::new(n, ws).expect("positive chart modulus")
}

/// Order of the subgroup of a cyclic action fixing every point whose
/// nonzero coordinates are flagged in `support`, modulo the kernel of the
/// action (elements acting trivially on all of `C^4`).
pub fn effective_stabilizer(act: &GroupAction, support: [bool; 4]) -> u64 {
    act.stabilizer_order(support) / act.stabilizer_order([true; 4])
}

/// One affine chart `U_i` of the weighted blow-up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartModel {
    pub index: usize,
    pub exceptional: Var,
    pub weight: Weight,
    pub quotient_action: GroupAction,
    /// `phi_i`: pull-back of `phi` divided by `chartvar^{wt(phi)}`.
    pub strict_phi: SparsePoly,
    pub wt_phi: Q,
    /// `strict_phi` is a nonzero constant: the strict transform misses
    /// this chart.
    pub empty: bool,
    /// `strict_phi` restricted to the exceptional divisor is a nonzero
    /// constant: `E` misses this chart.
    pub misses_exceptional: bool,
}

impl ChartModel {
    /// Effective order of the chart's cyclic quotient.
    pub fn quotient_index(&self) -> u64 {
        effective_stabilizer(&self.quotient_action, [false; 4])
    }
}

/// Chart `U_i` (`i` in `1..=4`) of the blow-up of `hq` with weight `w`.
pub fn chart(hq: &Hyperquotient, w: &Weight, i: usize) -> Result<ChartModel, BlowupError> {
    let v = Var::from_chart(i).ok_or(BlowupError::InvalidChart(i))?;
    require_admissible(hq.action(), w)?;
    let wt_phi = hq.phi().weighted_order(w)?;
    let (k, strict) = hq.phi().substitute_weighted(v, w).factor_out(v)?;
    if k != wt_phi {
        return Err(BlowupError::Inconsistent(format!(
            "chart {i}: factored exponent {} differs from wt = {}",
            fmt_q(&k),
            fmt_q(&wt_phi)
        )));
    }
    let empty = strict.is_constant();
    let on_e = strict.substitute_value(v, &Q::zero())?;
    let misses_exceptional = on_e.is_constant() && !on_e.is_zero();
    Ok(ChartModel {
        index: i,
        exceptional: v,
        weight: w.clone(),
        quotient_action: chart_action(w, v),
        strict_phi: strict,
        wt_phi,
        empty,
        misses_exceptional,
    })
}

/// All four charts in index order.
pub fn charts(hq: &Hyperquotient, w: &Weight) -> Result<Vec<ChartModel>, BlowupError> {
    (1..=4).map(|i| chart(hq, w, i)).collect()
}

/// `pull-back(h) = chartvar^k * g` with `g` not divisible by the chart variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictFactorization {
    pub chart: usize,
    pub pullback: SparsePoly,
    pub k: Q,
    pub g: SparsePoly,
}

pub fn strict_transform_factorization(
    h: &SparsePoly,
    w: &Weight,
    chart: usize,
) -> Result<StrictFactorization, BlowupError> {
    let v = Var::from_chart(chart).ok_or(BlowupError::InvalidChart(chart))?;
    let pullback = h.substitute_weighted(v, w);
    let (k, g) = pullback.factor_out(v)?;
    Ok(StrictFactorization {
        chart,
        pullback,
        k,
        g,
    })
}

/// Exceptional valuation `val_E(h) = wt_sigma(h)`, cross-checked against the
/// exponent factored out in each of the four charts.
pub fn val_e(h: &SparsePoly, w: &Weight) -> Result<Q, BlowupError> {
    let wt = h.weighted_order(w)?;
    for i in 1..=4 {
        let f = strict_transform_factorization(h, w, i)?;
        if f.k != wt {
            return Err(BlowupError::Inconsistent(format!(
                "chart {i}: factored exponent {} differs from wt = {}",
                fmt_q(&f.k),
                fmt_q(&wt)
            )));
        }
    }
    Ok(wt)
}

/// `(a + b + c + d)/m - 1 - wt_sigma(phi)`.
pub fn discrepancy_of_weight(hq: &Hyperquotient, w: &Weight) -> Result<Q, BlowupError> {
    require_admissible(hq.action(), w)?;
    Ok(w.total() - Q::one() - hq.phi().weighted_order(w)?)
}

/// Quantities of the valuation identity `val_F(h) = a a1 + c val_E(h) + d`
/// for a divisor `F` centred at a point of the blow-up. Only `val_E(h)` is
/// computed; the others are known by sign (`a, a1 >= 1`, `c > 0`, `d >= 0`)
/// and may optionally be pinned for bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationRelation {
    pub val_e_h: Q,
    pub a: Option<u64>,
    pub a1: Option<u64>,
    pub c: Option<Q>,
    pub d: Option<Q>,
}

impl ValuationRelation {
    /// Only `val_E(h)` known; the rest carried as sign constraints.
    pub fn symbolic(val_e_h: Q) -> Self {
        ValuationRelation {
            val_e_h,
            a: None,
            a1: None,
            c: None,
            d: None,
        }
    }
}

/// Conclusion `val_F(h) > val_E(h)` for every divisor `F` centred at the point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonDomination {
    /// The recorded inequality chain.
    pub chain: String,
    /// Exact value of `a a1 + c + d` when every quantity was pinned.
    pub val_f_h: Option<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("val_E(h) = {0}; the argument needs val_E(h) = 1")]
    ValueNotOne(String),
    #[error("sign constraint violated: {0}")]
    Sign(String),
}

pub fn conclude_non_domination(rel: &ValuationRelation) -> Result<NonDomination, RelationError> {
    if !rel.val_e_h.is_one() {
        return Err(RelationError::ValueNotOne(fmt_q(&rel.val_e_h)));
    }
    if rel.a == Some(0) || rel.a1 == Some(0) {
        return Err(RelationError::Sign("a, a1 >= 1".into()));
    }
    if rel.c.as_ref().is_some_and(|c| !c.is_positive()) {
        return Err(RelationError::Sign("c > 0".into()));
    }
    if rel.d.as_ref().is_some_and(Signed::is_negative) {
        return Err(RelationError::Sign("d >= 0".into()));
    }
    match (rel.a, rel.a1, &rel.c, &rel.d) {
        (Some(a), Some(a1), Some(c), Some(d)) => {
            let v = qi((a * a1) as i64) + c + d;
            let chain = format!(
                "val_F(h) = {a}*{a1} + {}*1 + {} = {} >= 1 + {} > 1 = val_E(h)",
                fmt_q(c),
                fmt_q(d),
                fmt_q(&v),
                fmt_q(c)
            );
            Ok(NonDomination {
                chain,
                val_f_h: Some(v),
            })
        }
        _ => Ok(NonDomination {
            chain: "val_F(h) = a*a1 + c*1 + d >= 1 + c > 1 = val_E(h)  (a, a1 >= 1, c > 0, d >= 0)"
                .into(),
            val_f_h: None,
        }),
    }
}

/// Convenience: the weight `(1/m)(a, b, c, d)`.
pub fn weight(m: u64, entries: [u64; 4]) -> Result<Weight, BlowupError> {
    Ok(Weight::new(m, entries)?)
}

/// `(1/2)(0,1,1,1)`.
pub fn cax2_action() -> GroupAction {
    GroupAction::new(2, [0, 1, 1, 1]).expect("valid action")
}
