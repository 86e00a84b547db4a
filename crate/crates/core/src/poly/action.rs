use std::fmt;

use serde::{Deserialize, Serialize};

use super::{PolyError, Var};
use crate::num::{gcd_u64, modulo, q, Q};

/// Cyclic action `1/m (a1, a2, a3, a4)` of `Z_m` on `C^4`; weights are kept
/// reduced modulo `m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupAction {
    modulus: u64,
    weights: [u64; 4],
}

impl GroupAction {
    pub fn new(modulus: u64, weights: [i64; 4]) -> Result<Self, PolyError> {
        if modulus == 0 {
            return Err(PolyError::InvalidModulus);
        }
        Ok(GroupAction {
            modulus,
            weights: weights.map(|w| modulo(w, modulus)),
        })
    }

    pub fn trivial() -> Self {
        GroupAction {
            modulus: 1,
            weights: [0; 4],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn weights(&self) -> [u64; 4] {
        self.weights
    }

    pub fn weight(&self, v: Var) -> u64 {
        self.weights[v.index()]
    }

    /// Character of an integral monomial: `sum a_i e_i mod m`.
    pub fn class_of(&self, exps: [u64; 4]) -> u64 {
        let m = self.modulus as u128;
        let s: u128 = exps
            .iter()
            .zip(self.weights)
            .map(|(&e, w)| (e as u128 % m) * w as u128 % m)
            .sum();
        (s % m) as u64
    }

    /// Order of the stabilizer of a point whose non-zero coordinates are
    /// flagged in `support`.
    pub fn stabilizer_order(&self, support: [bool; 4]) -> u64 {
        self.weights
            .iter()
            .zip(support)
            .filter(|(_, s)| *s)
            .fold(self.modulus, |g, (&w, _)| gcd_u64(g, w))
    }

    /// The rational vector `(1/m)(a1..a4)` with each entry in `[0, 1)`.
    pub fn generator(&self) -> Vec<Q> {
        self.weights
            .iter()
            .map(|&w| q(w as i64, self.modulus as i64))
            .collect()
    }
}

impl fmt::Display for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.weights;
        write!(f, "1/{} ({},{},{},{})", self.modulus, a, b, c, d)
    }
}

/// Blow-up weight `sigma = (1/m)(a, b, c, d)` with positive entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight {
    modulus: u64,
    entries: [u64; 4],
}

impl Weight {
    pub fn new(modulus: u64, entries: [u64; 4]) -> Result<Self, PolyError> {
        if modulus == 0 {
            return Err(PolyError::InvalidModulus);
        }
        if entries.contains(&0) {
            return Err(PolyError::NonPositiveWeight);
        }
        Ok(Weight { modulus, entries })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn entries(&self) -> [u64; 4] {
        self.entries
    }

    pub fn entry(&self, v: Var) -> u64 {
        self.entries[v.index()]
    }

    /// `w_v / m`.
    pub fn of(&self, v: Var) -> Q {
        q(self.entry(v) as i64, self.modulus as i64)
    }

    /// `(a + b + c + d) / m`.
    pub fn total(&self) -> Q {
        q(self.entries.iter().sum::<u64>() as i64, self.modulus as i64)
    }

    pub fn as_point(&self) -> Vec<Q> {
        Var::ALL.iter().map(|&v| self.of(v)).collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "1/{} ({},{},{},{})", self.modulus, a, b, c, d)
    }
}
