use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::num::{common_denominator, fmt_q, Q};

/// Dense univariate polynomial over `Q`, coefficients low to high, no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        UniPoly::new(vec![c])
    }

    /// `t - r`.
    pub fn linear_root(r: &Q) -> Self {
        UniPoly::new(vec![-r, Q::one()])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Q) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        (0..n).fold(UniPoly::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&(Q::one() / self.leading()))
    }

    /// Monic greatest common divisor (`gcd(0, 0) = 0`).
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Exact quotient, assuming `d` divides `self`.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (qt, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact division");
        qt
    }

    /// Yun's square-free decomposition: `self = unit * prod f_i^i` with the
    /// returned factors monic, square-free and pairwise coprime.
    pub fn square_free_decomposition(&self) -> (Q, Vec<(UniPoly, u32)>) {
        let unit = self.leading();
        if self.degree().unwrap_or(0) == 0 {
            return (unit, vec![]);
        }
        let f = self.monic();
        let fp = f.derivative();
        let g = f.gcd(&fp);
        let mut a = f.exact_div(&g);
        let mut b = fp.exact_div(&g);
        let mut out = Vec::new();
        let mut mult = 1u32;
        loop {
            let c = b.sub(&a.derivative());
            if c.is_zero() {
                if a.degree().unwrap_or(0) > 0 {
                    out.push((a, mult));
                }
                break;
            }
            let d = a.gcd(&c);
            if d.degree().unwrap_or(0) > 0 {
                out.push((d.clone(), mult));
            }
            a = a.exact_div(&d);
            b = c.exact_div(&d);
            mult += 1;
            if a.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        (unit, out)
    }

    /// Product of the distinct irreducible factors.
    pub fn square_free_part(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// Distinct rational roots (ascending) and the monic cofactor of the
    /// square-free part that has no rational root found. Roots are searched
    /// with the rational root test; coefficient sizes beyond `u64` leave the
    /// corresponding roots in the cofactor.
    pub fn split_rational_roots(&self) -> (Vec<Q>, UniPoly) {
        if self.is_zero() {
            return (vec![], UniPoly::zero());
        }
        let mut rest = self.square_free_part();
        let mut roots = Vec::new();
        if rest.coeff(0).is_zero() && rest.degree().unwrap_or(0) > 0 {
            roots.push(Q::zero());
            rest = rest.exact_div(&UniPoly::linear_root(&Q::zero()));
        }
        if rest.degree().unwrap_or(0) > 0 {
            let den = common_denominator(rest.coeffs());
            let ints: Vec<BigInt> = rest
                .coeffs
                .iter()
                .map(|c| (c * Q::from_integer(den.clone())).to_integer())
                .collect();
            let a0 = ints[0]
                .abs()
                .to_u64()
                .filter(|&n| n <= DIVISOR_SEARCH_LIMIT);
            let an = ints
                .last()
                .unwrap()
                .abs()
                .to_u64()
                .filter(|&n| n <= DIVISOR_SEARCH_LIMIT);
            if let (Some(a0), Some(an)) = (a0, an) {
                let mut cands: Vec<Q> = Vec::new();
                for p in divisors(a0) {
                    for qd in divisors(an) {
                        let r = Q::new(BigInt::from(p), BigInt::from(qd));
                        cands.push(r.clone());
                        cands.push(-r);
                    }
                }
                cands.sort();
                cands.dedup();
                for r in cands {
                    if rest.degree().unwrap_or(0) == 0 {
                        break;
                    }
                    if rest.eval(&r).is_zero() {
                        rest = rest.exact_div(&UniPoly::linear_root(&r));
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        (roots, rest.monic())
    }

    /// If `self` is a non-zero multiple of `t^2 - r`, returns `r`.
    pub fn as_pure_quadratic(&self) -> Option<Q> {
        if self.degree() != Some(2) || !self.coeff(1).is_zero() {
            return None;
        }
        Some(-self.coeff(0) / self.leading())
    }

    /// Renders with the given variable name.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&fmt_q(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{mono}", fmt_q(&abs)));
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

/// Constant/leading coefficients above this bound are not factored; their
/// roots stay in the cofactor.
const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return vec![];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    debug_assert!(small.iter().all(|&d| n.is_multiple_of(d)));
    small
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::{q, qi};

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::new(cs.iter().map(|&c| qi(c)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let a = p(&[-1, 0, 1]); // t^2 - 1
        let b = p(&[1, 1]); // t + 1
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(p(&[1, 0, 1]).gcd(&p(&[0, 1])), UniPoly::one());
    }

    #[test]
    fn yun_decomposition() {
        // (t+1)^2 (t-2)^3 t
        let f = p(&[1, 1])
            .pow(2)
            .mul(&p(&[-2, 1]).pow(3))
            .mul(&p(&[0, 1]))
            .scale(&qi(5));
        let (unit, fs) = f.square_free_decomposition();
        assert_eq!(unit, qi(5));
        let rebuilt = fs
            .iter()
            .fold(UniPoly::constant(unit), |acc, (g, m)| acc.mul(&g.pow(*m)));
        assert_eq!(rebuilt, f);
        let mults: Vec<u32> = fs.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2, 3]);
    }

    #[test]
    fn rational_roots() {
        let f = p(&[1, 1]).pow(2).mul(&p(&[-1, 2])).mul(&p(&[2, 0, 1]));
        let (roots, rest) = f.split_rational_roots();
        assert_eq!(roots, vec![qi(-1), q(1, 2)]);
        assert_eq!(rest, p(&[2, 0, 1]));
        assert_eq!(rest.as_pure_quadratic(), Some(qi(-2)));
        let (roots, rest) = p(&[0, 0, 1]).split_rational_roots();
        assert_eq!(roots, vec![qi(0)]);
        assert_eq!(rest, UniPoly::one());
    }

    #[test]
    fn rendering() {
        assert_eq!(p(&[-1, 0, 2]).display_in("u"), "2*u^2 - 1");
        assert_eq!(p(&[]).to_string(), "0");
    }
}
