//! Terminal singularities of type cAx/2, `x^2 + y^2 + f(z, u) = 0` in
//! `C^4 / (1/2)(0,1,1,1)` with `f` invariant in `(z, u)^4`: normal-form
//! validation, selection of the minimal-discrepancy weight, the change of
//! coordinates used when the leading form of `f` is a square, and the
//! certificate pipeline.

mod certificate;
mod mori;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::blowup::{cax2_action, BlowupError, Hyperquotient};
use crate::num::{fmt_q, qi, rational_sqrt, Q};
use crate::poly::{
    ideal_power_membership, tau0, BinaryForm, Monomial, PolyError, SparsePoly, SquareTest, Var,
    Weight,
};

pub use certificate::{
    certify_nash, construct_h, direction, CertifyOptions, CheckStatus, Direction, DirectionCoord,
    HError, NashCertificate, PointCheck, PointLocation, Verdict,
};
pub use mori::{classify_mori_type, MoriTypeTag};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CAx2Error {
    #[error("action is {found}; type cAx/2 requires 1/2(0,1,1,1)")]
    WrongAction { found: String },
    #[error(
        "coefficient of {var}^2 is {found}; the normal form needs 1 (no rescaling is attempted)"
    )]
    Coefficient { var: Var, found: String },
    #[error("term {monomial} involves x or y; the normal form is x^2 + y^2 + f(z,u)")]
    ExtraTerm { monomial: String },
    #[error("f is not invariant: monomial {monomial} has odd degree in z, u")]
    NotInvariant { monomial: String },
    #[error("f = 0: the singularity is not isolated")]
    ZeroF,
    #[error("f is not in (z,u)^4: minimal degree is {tau0}")]
    NotInIdealPower { tau0: u64 },
    #[error("minimal degree tau0 = {0} is odd")]
    OddTau0(u64),
    #[error("the leading form of f is not a square; there is no second normalization")]
    NotCase2,
    #[error("unsupported instance: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Blowup(#[from] BlowupError),
}

/// Whether the degree-`tau0` part of `f` is a square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Case {
    /// Leading form not a square.
    Case1,
    /// Leading form a square over `C`.
    Case2,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Case1 => "case1",
            Case::Case2 => "case2",
        })
    }
}

/// `f_tau0 = scalar * root^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingSquare {
    pub scalar: Q,
    pub root: SparsePoly,
}

impl LeadingSquare {
    /// `(epsilon, p)` with `f_tau0 = epsilon * p^2`, `epsilon = +-1` and `p`
    /// rational, when the scalar is plus or minus a rational square.
    pub fn signed_root(&self) -> Option<(i8, SparsePoly)> {
        if let Some(s) = rational_sqrt(&self.scalar) {
            return Some((1, self.root.scale(&s)));
        }
        rational_sqrt(&-self.scalar.clone()).map(|s| (-1, self.root.scale(&s)))
    }
}

/// Validated normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CAx2Form {
    pub f: SparsePoly,
    pub tau0: u64,
    pub case: Case,
    pub leading: BinaryForm,
    pub square: Option<LeadingSquare>,
}

impl CAx2Form {
    /// `f` minus its leading form.
    pub fn higher(&self) -> SparsePoly {
        &self.f - self.leading.poly()
    }

    pub fn half_tau0_even(&self) -> bool {
        (self.tau0 / 2).is_multiple_of(2)
    }
}

/// `+` or `-` in the Case-2 change of coordinates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> Q {
        match self {
            Sign::Plus => Q::one(),
            Sign::Minus => -Q::one(),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(format!("sign must be + or -, got {s:?}")),
        }
    }
}

fn x() -> SparsePoly {
    SparsePoly::var(Var::X)
}

fn y() -> SparsePoly {
    SparsePoly::var(Var::Y)
}

pub fn validate_cax2(hq: &Hyperquotient) -> Result<CAx2Form, CAx2Error> {
    if *hq.action() != cax2_action() {
        return Err(CAx2Error::WrongAction {
            found: hq.action().to_string(),
        });
    }
    let phi = hq.phi();
    for (var, m) in [(Var::X, [2, 0, 0, 0]), (Var::Y, [0, 2, 0, 0])] {
        let c = phi.coefficient(&Monomial::integral(m));
        if !c.is_one() {
            return Err(CAx2Error::Coefficient {
                var,
                found: fmt_q(&c),
            });
        }
    }
    let f = &(phi - &x().pow(2)) - &y().pow(2);
    if let Some((m, _)) = f
        .terms()
        .find(|(m, _)| m.involves(Var::X) || m.involves(Var::Y))
    {
        return Err(CAx2Error::ExtraTerm {
            monomial: m.to_string(),
        });
    }
    if f.is_zero() {
        return Err(CAx2Error::ZeroF);
    }
    if let Some((m, _)) = f
        .terms()
        .find(|(m, _)| !m.is_integral() || m.degree_in(&[Var::Z, Var::U]) % qi(2) != Q::zero())
    {
        return Err(CAx2Error::NotInvariant {
            monomial: m.to_string(),
        });
    }
    let t = tau0(&f)?;
    if t % 2 == 1 {
        return Err(CAx2Error::OddTau0(t));
    }
    if !ideal_power_membership(&f, 4) {
        return Err(CAx2Error::NotInIdealPower { tau0: t });
    }
    let leading = BinaryForm::leading_form(&f, t)?;
    let (case, square) = match leading.is_perfect_square()? {
        SquareTest::NotSquare => (Case::Case1, None),
        SquareTest::Square { root } => (
            Case::Case2,
            Some(LeadingSquare {
                scalar: Q::one(),
                root,
            }),
        ),
        SquareTest::SquareUpToScalar { scalar, root } => {
            (Case::Case2, Some(LeadingSquare { scalar, root }))
        }
    };
    Ok(CAx2Form {
        f,
        tau0: t,
        case,
        leading,
        square,
    })
}

/// The minimal-discrepancy weight by case and parity of `tau0/2`.
pub fn select_weight(form: &CAx2Form) -> Weight {
    let h = form.tau0 / 2;
    let even = h.is_multiple_of(2);
    let entries = match (form.case, even) {
        (Case::Case1, true) => [h, h + 1, 1, 1],
        (Case::Case1, false) => [h + 1, h, 1, 1],
        (Case::Case2, true) => [h + 2, h + 1, 1, 1],
        (Case::Case2, false) => [h + 1, h + 2, 1, 1],
    };
    Weight::new(2, entries).expect("positive entries")
}

/// Output of the Case-2 change of coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case2Normalization {
    /// `t^2 + s^2 +- 2 t p - epsilon f_>`, `t` the shifted variable.
    pub model: Hyperquotient,
    /// `p` with `f_tau0 = epsilon p^2`.
    pub p: SparsePoly,
    pub epsilon: i8,
    pub sign: Sign,
    /// `x` when `tau0/2` is even, `y` when odd (the shift must be invariant).
    pub shifted: Var,
    pub substitution: String,
    /// `wt_sigma` of the model under the Case-2 weight.
    pub wt_phi: Q,
    pub warnings: Vec<String>,
}

/// Rewrites a Case-2 form so that the leading square is absorbed into the
/// shifted variable. With `f_tau0 = -p^2` this is `t -> t +- p`; with
/// `f_tau0 = +p^2` the equation is first multiplied by `-1` after
/// `x -> i x, y -> i y`, which is an isomorphism over `C`.
pub fn normalize_case2(form: &CAx2Form, sign: Sign) -> Result<Case2Normalization, CAx2Error> {
    if form.case != Case::Case2 {
        return Err(CAx2Error::NotCase2);
    }
    let sq = form.square.as_ref().expect("case 2 carries its square");
    let Some((epsilon, p)) = sq.signed_root() else {
        return Err(CAx2Error::Unsupported(format!(
            "leading form is {} times a square; {} is not plus or minus a rational square",
            fmt_q(&sq.scalar),
            fmt_q(&sq.scalar)
        )));
    };
    let shifted = if form.half_tau0_even() {
        Var::X
    } else {
        Var::Y
    };
    let t = SparsePoly::var(shifted);
    let eps = qi(epsilon as i64);
    // x^2 + y^2 - eps f: equals phi when eps = -1, and -phi(ix, iy) when eps = +1.
    let base = &(x().pow(2) + y().pow(2)) - &form.f.scale(&eps);
    let shift = &t + &p.scale(&sign.value());
    let shifted_phi = base.substitute_poly(shifted, &shift)?;
    let expected = &(&(x().pow(2) + y().pow(2)) + &(&t * &p).scale(&(qi(2) * sign.value())))
        - &form.higher().scale(&eps);
    if shifted_phi != expected {
        return Err(BlowupError::Inconsistent(format!(
            "normalization identity failed: {shifted_phi} != {expected}"
        ))
        .into());
    }
    let model = Hyperquotient::new(expected, cax2_action())?;
    let w = select_weight(form);
    let wt_phi = model.phi().weighted_order(&w)?;
    let mut warnings = Vec::new();
    let target = qi((form.tau0 / 2 + 1) as i64);
    if wt_phi != target {
        warnings.push(format!(
            "wt of the normalized equation is {}, expected tau0/2 + 1 = {}",
            fmt_q(&wt_phi),
            fmt_q(&target)
        ));
    }
    let sgn = if sign == Sign::Plus { "+" } else { "-" };
    let substitution = if epsilon < 0 {
        format!("{shifted} -> {shifted} {sgn} ({p})")
    } else {
        let other = if shifted == Var::X { Var::Y } else { Var::X };
        let inv = if sign == Sign::Plus { "-" } else { "+" };
        format!("{shifted} -> i*{shifted} {inv} ({p}), {other} -> i*{other}, equation negated")
    };
    Ok(Case2Normalization {
        model,
        p,
        epsilon,
        sign,
        shifted,
        substitution,
        wt_phi,
        warnings,
    })
}
