//! Exact sparse polynomials in `x, y, z, u` with exponents in `(1/D)Z>=0`,
//! cyclic-group gradings, weighted chart substitutions and binary-form
//! utilities.

mod action;
mod binary;
mod sparse;
mod univariate;

use std::fmt;

pub use action::{GroupAction, Weight};
pub use binary::{ideal_power_membership, tau0, BinaryForm, FactorData, LinearFactor, SquareTest};
pub use sparse::{Monomial, SparsePoly};
pub use univariate::UniPoly;

use crate::num::Q;

/// One of the four ambient coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    U,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::U];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Var> {
        Var::ALL.get(i).copied()
    }

    /// Chart numbering `1..=4` used throughout reports.
    pub fn from_chart(i: usize) -> Option<Var> {
        i.checked_sub(1).and_then(Var::from_index)
    }

    pub fn chart(self) -> usize {
        self.index() + 1
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z", "u"][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("fractional exponent of {var} in monomial {monomial}")]
    FractionalExponent { var: Var, monomial: String },
    #[error("not semi-invariant: {first} has class {first_class}, {second} has class {second_class} (mod {modulus})")]
    NotSemiInvariant {
        first: String,
        first_class: u64,
        second: String,
        second_class: u64,
        modulus: u64,
    },
    #[error("polynomial involves variables other than {expected}")]
    UnexpectedVariables { expected: String },
    #[error("not homogeneous of degree {degree}")]
    NotHomogeneous { degree: u64 },
    #[error("odd degree {0} binary form cannot be a square")]
    OddDegree(u64),
    #[error("group order must be positive")]
    InvalidModulus,
    #[error("weight entries must be positive")]
    NonPositiveWeight,
    #[error("cannot evaluate {monomial} at {value}: fractional power is not rational")]
    IncompatiblePoint { monomial: String, value: String },
}

/// Rational point in the ambient `C^4`.
pub type Point4 = [Q; 4];
