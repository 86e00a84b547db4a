//! Syntactic recognition of the normal forms of 3-fold terminal singularities
//! of Gorenstein index greater than one. Variable roles are taken literally
//! and no coordinate change is attempted.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::blowup::Hyperquotient;
use crate::num::{qi, Q};
use crate::poly::{GroupAction, SparsePoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoriTypeTag {
    CAm,
    CAx2,
    CAx4,
    CD2_1,
    CD2_2,
    CD3_1,
    CD3_2,
    CD3_3,
    CE2,
    None,
}

impl MoriTypeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            MoriTypeTag::CAm => "cA/m",
            MoriTypeTag::CAx2 => "cAx/2",
            MoriTypeTag::CAx4 => "cAx/4",
            MoriTypeTag::CD2_1 => "cD/2-1",
            MoriTypeTag::CD2_2 => "cD/2-2",
            MoriTypeTag::CD3_1 => "cD/3-1",
            MoriTypeTag::CD3_2 => "cD/3-2",
            MoriTypeTag::CD3_3 => "cD/3-3",
            MoriTypeTag::CE2 => "cE/2",
            MoriTypeTag::None => "none",
        }
    }
}

impl fmt::Display for MoriTypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integral monomials with coefficients; `None` if any exponent is fractional.
fn integral_terms(phi: &SparsePoly) -> Option<Vec<([u64; 4], Q)>> {
    phi.terms()
        .map(|(m, c)| m.as_integral().map(|e| (e, c.clone())))
        .collect()
}

fn same_action(act: &GroupAction, m: u64, weights: [i64; 4]) -> bool {
    GroupAction::new(m, weights).is_ok_and(|b| b == *act)
}

/// Removes the listed monomials, each required with coefficient exactly 1,
/// and returns the remaining terms.
fn take_unit_terms(terms: &[([u64; 4], Q)], required: &[[u64; 4]]) -> Option<Vec<([u64; 4], Q)>> {
    for r in required {
        if !terms.iter().any(|(e, c)| e == r && c.is_one()) {
            return None;
        }
    }
    Some(
        terms
            .iter()
            .filter(|(e, _)| !required.contains(e))
            .cloned()
            .collect(),
    )
}

const X: usize = 0;
const Y: usize = 1;
const Z: usize = 2;
const U: usize = 3;

fn only_zu(e: &[u64; 4]) -> bool {
    e[X] == 0 && e[Y] == 0
}

fn only_yz(e: &[u64; 4]) -> bool {
    e[X] == 0 && e[U] == 0
}

fn is_cam(act: &GroupAction, terms: &[([u64; 4], Q)]) -> bool {
    let m = act.modulus();
    if m < 2 {
        return false;
    }
    let [a, b, c, d] = act.weights();
    if c != 1 % m || d != 0 || (a + b) % m != 0 || a.gcd(&m) != 1 {
        return false;
    }
    let Some(rest) = take_unit_terms(terms, &[[1, 1, 0, 0]]) else {
        return false;
    };
    rest.iter()
        .all(|(e, _)| only_zu(e) && act.class_of(*e) == 0)
}

fn is_cax(terms: &[([u64; 4], Q)], m: u64) -> bool {
    let Some(rest) = take_unit_terms(terms, &[[2, 0, 0, 0], [0, 2, 0, 0]]) else {
        return false;
    };
    if !rest.iter().all(|(e, _)| only_zu(e)) {
        return false;
    }
    match m {
        2 => rest.iter().all(|(e, _)| e[Z] + e[U] >= 4),
        _ => rest.iter().all(|(e, _)| *e != [0, 0, 0, 1]),
    }
}

fn is_cd2_1(terms: &[([u64; 4], Q)]) -> bool {
    let Some(rest) = take_unit_terms(terms, &[[0, 0, 0, 2], [1, 1, 1, 0]]) else {
        return false;
    };
    let pure = |i: usize, e: &[u64; 4]| (0..4).all(|j| j == i || e[j] == 0);
    let x = rest
        .iter()
        .filter(|(e, c)| pure(X, e) && e[X] >= 4 && e[X] % 2 == 0 && c.is_one());
    let y = rest
        .iter()
        .filter(|(e, c)| pure(Y, e) && e[Y] >= 4 && e[Y] % 2 == 0 && c.is_one());
    let z = rest
        .iter()
        .filter(|(e, c)| pure(Z, e) && e[Z] >= 3 && c.is_one());
    rest.len() == 3 && x.count() == 1 && y.count() == 1 && z.count() == 1
}

fn is_cd2_2(terms: &[([u64; 4], Q)]) -> bool {
    let Some(rest) = take_unit_terms(terms, &[[0, 0, 0, 2], [0, 2, 1, 0]]) else {
        return false;
    };
    let mut lambda_terms = 0;
    for (e, _) in &rest {
        let lambda = e[Y] == 1 && e[Z] == 0 && e[U] == 0 && e[X] >= 3 && e[X] % 2 == 1;
        let in_g = e[Y] == 0 && e[U] == 0 && (e[X] >= 4 || (e[X] >= 2 && e[Z] >= 2) || e[Z] >= 3);
        if lambda {
            lambda_terms += 1;
        } else if !in_g {
            return false;
        }
    }
    lambda_terms <= 1
}

fn is_cd3_1(terms: &[([u64; 4], Q)]) -> bool {
    take_unit_terms(
        terms,
        &[[3, 0, 0, 0], [0, 0, 0, 2], [0, 2, 1, 0], [0, 1, 2, 0]],
    )
    .is_some_and(|rest| rest.is_empty())
}

fn is_cd3_2(terms: &[([u64; 4], Q)]) -> bool {
    let Some(rest) = take_unit_terms(terms, &[[3, 0, 0, 0], [0, 0, 0, 2], [0, 1, 2, 0]]) else {
        return false;
    };
    let mut alpha0 = Q::zero();
    let mut beta0 = Q::zero();
    for (e, c) in &rest {
        if e[Z] != 0 || e[U] != 0 {
            return false;
        }
        match e[X] {
            1 if e[Y] >= 4 && (e[Y] - 4) % 3 == 0 => {
                if e[Y] == 4 {
                    alpha0 = c.clone();
                }
            }
            0 if e[Y] >= 6 && (e[Y] - 6) % 3 == 0 => {
                if e[Y] == 6 {
                    beta0 = c.clone();
                }
            }
            _ => return false,
        }
    }
    let disc = qi(4) * &alpha0 * &alpha0 * &alpha0 + qi(27) * &beta0 * &beta0;
    !disc.is_zero()
}

fn is_cd3_3(terms: &[([u64; 4], Q)]) -> bool {
    let Some(rest) = take_unit_terms(terms, &[[3, 0, 0, 0], [0, 0, 0, 2], [0, 3, 0, 0]]) else {
        return false;
    };
    rest.iter().all(|(e, _)| {
        let k = e[Z];
        e[U] == 0
            && match (e[X], e[Y]) {
                (1, 1) => k >= 3 && (k - 3) % 3 == 0,
                (1, 0) => k >= 4 && (k - 4) % 3 == 0,
                (0, 1) => k >= 5 && (k - 5) % 3 == 0,
                (0, 0) => k >= 6 && k % 3 == 0,
                _ => false,
            }
    })
}

fn is_ce2(terms: &[([u64; 4], Q)]) -> bool {
    let Some(rest) = take_unit_terms(terms, &[[3, 0, 0, 0], [0, 0, 0, 2]]) else {
        return false;
    };
    rest.iter().all(|(e, _)| only_yz(e) && e[Y] + e[Z] >= 4)
}

/// Matches the hyperquotient against the normal forms; the first matching
/// family wins (the patterns are mutually exclusive by action and leading
/// monomials).
pub fn classify_mori_type(hq: &Hyperquotient) -> MoriTypeTag {
    let act = hq.action();
    let Some(terms) = integral_terms(hq.phi()) else {
        return MoriTypeTag::None;
    };
    if hq.class() != 0 && !same_action(act, 4, [1, 3, 1, 2]) {
        return MoriTypeTag::None;
    }
    if is_cam(act, &terms) {
        return MoriTypeTag::CAm;
    }
    if same_action(act, 2, [0, 1, 1, 1]) {
        if is_cax(&terms, 2) {
            return MoriTypeTag::CAx2;
        }
        if is_ce2(&terms) {
            return MoriTypeTag::CE2;
        }
    }
    if same_action(act, 4, [1, 3, 1, 2]) && hq.class() == 2 && is_cax(&terms, 4) {
        return MoriTypeTag::CAx4;
    }
    if same_action(act, 2, [1, 1, 0, 1]) {
        if is_cd2_1(&terms) {
            return MoriTypeTag::CD2_1;
        }
        if is_cd2_2(&terms) {
            return MoriTypeTag::CD2_2;
        }
    }
    if same_action(act, 3, [1, 2, 2, 0]) {
        if is_cd3_1(&terms) {
            return MoriTypeTag::CD3_1;
        }
        if is_cd3_2(&terms) {
            return MoriTypeTag::CD3_2;
        }
        if is_cd3_3(&terms) {
            return MoriTypeTag::CD3_3;
        }
    }
    MoriTypeTag::None
}
