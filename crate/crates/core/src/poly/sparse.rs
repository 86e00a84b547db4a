use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{GroupAction, PolyError, UniPoly, Var, Weight};
use crate::num::{fmt_q, gcd_u64, lcm_u64, q, qi, qpow, rational_root, Q};

/// Exponent vector `num / den` for the four variables, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    num: [u64; 4],
    den: u64,
}

impl Monomial {
    pub fn new(num: [u64; 4], den: u64) -> Self {
        assert!(den > 0, "monomial denominator must be positive");
        let g = num.iter().fold(den, |g, &e| gcd_u64(g, e));
        Monomial {
            num: num.map(|e| e / g),
            den: den / g,
        }
    }

    pub fn integral(exps: [u64; 4]) -> Self {
        Monomial { num: exps, den: 1 }
    }

    pub fn one() -> Self {
        Monomial::integral([0; 4])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial::integral(e)
    }

    pub fn exponent(&self, v: Var) -> Q {
        q(self.num[v.index()] as i64, self.den as i64)
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn as_integral(&self) -> Option<[u64; 4]> {
        self.is_integral().then_some(self.num)
    }

    pub fn is_integral_in(&self, v: Var) -> bool {
        self.num[v.index()].is_multiple_of(self.den)
    }

    /// Integer exponent of `v`, if it is one.
    pub fn integral_exponent(&self, v: Var) -> Option<u64> {
        self.is_integral_in(v)
            .then(|| self.num[v.index()] / self.den)
    }

    /// `sum w_i e_i / m`.
    pub fn weight(&self, w: &Weight) -> Q {
        let s: u64 = Var::ALL
            .iter()
            .map(|&v| w.entry(v) * self.num[v.index()])
            .sum();
        q(s as i64, (w.modulus() * self.den) as i64)
    }

    pub fn degree_in(&self, vars: &[Var]) -> Q {
        let s: u64 = vars.iter().map(|v| self.num[v.index()]).sum();
        q(s as i64, self.den as i64)
    }

    pub fn total_degree(&self) -> Q {
        self.degree_in(&Var::ALL)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num[v.index()] != 0
    }

    fn scaled(&self, den: u64) -> [u64; 4] {
        let f = den / self.den;
        self.num.map(|e| e * f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e.is_zero() {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(v.name())?;
            if e.is_integer() {
                if !e.is_one() {
                    write!(f, "^{}", e.numer())?;
                }
            } else {
                write!(f, "^({})", fmt_q(&e))?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Exponents are stored as integer numerators over a shared denominator
/// `den`, which is kept minimal. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    den: u64,
    terms: BTreeMap<[u64; 4], Q>,
}

impl Default for SparsePoly {
    fn default() -> Self {
        SparsePoly::zero()
    }
}

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly {
            den: 1,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        SparsePoly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        SparsePoly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        SparsePoly::term(Q::one(), Monomial::var(v))
    }

    pub fn term(c: Q, m: Monomial) -> Self {
        SparsePoly::from_terms([(m, c)])
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(terms: I) -> Self {
        let terms: Vec<(Monomial, Q)> = terms.into_iter().collect();
        let den = terms.iter().fold(1, |d, (m, _)| lcm_u64(d, m.den));
        let mut map: BTreeMap<[u64; 4], Q> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m.scaled(den)).or_insert_with(Q::zero) += c;
        }
        SparsePoly { den, terms: map }.normalized()
    }

    /// Integer-exponent monomial `c * x^a y^b z^c u^d`.
    pub fn mono(c: Q, exps: [u64; 4]) -> Self {
        SparsePoly::term(c, Monomial::integral(exps))
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let g = self
            .terms
            .keys()
            .flatten()
            .fold(self.den, |g, &e| gcd_u64(g, e));
        if g > 1 {
            self.den /= g;
            self.terms = std::mem::take(&mut self.terms)
                .into_iter()
                .map(|(k, c)| (k.map(|e| e / g), c))
                .collect();
        }
        if self.terms.is_empty() {
            self.den = 1;
        }
        self
    }

    fn rescaled(&self, den: u64) -> BTreeMap<[u64; 4], Q> {
        let f = den / self.den;
        self.terms
            .iter()
            .map(|(k, c)| (k.map(|e| e * f), c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Shared exponent denominator `D`.
    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &Q)> + '_ {
        self.terms
            .iter()
            .map(move |(k, c)| (Monomial::new(*k, self.den), c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Q {
        if !self.den.is_multiple_of(m.den) {
            return Q::zero();
        }
        self.terms
            .get(&m.scaled(self.den))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|&e| e == 0))
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> Q {
        self.coefficient(&Monomial::one())
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.den == 1
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|k| k[v.index()] != 0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL.into_iter().filter(|&v| self.involves(v)).collect()
    }

    /// True if no variable outside `vars` occurs.
    pub fn only_in(&self, vars: &[Var]) -> bool {
        self.variables().iter().all(|v| vars.contains(v))
    }

    pub fn scale(&self, c: &Q) -> SparsePoly {
        SparsePoly {
            den: self.den,
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
        .normalized()
    }

    pub fn pow(&self, n: u32) -> SparsePoly {
        let mut acc = SparsePoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Formal partial derivative; every exponent of `v` must be an integer.
    pub fn partial_derivative(&self, v: Var) -> Result<SparsePoly, PolyError> {
        let i = v.index();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms() {
            let e = m
                .integral_exponent(v)
                .ok_or_else(|| PolyError::FractionalExponent {
                    var: v,
                    monomial: m.to_string(),
                })?;
            if e == 0 {
                continue;
            }
            let mut num = m.num;
            num[i] -= m.den;
            out.push((Monomial::new(num, m.den), c * qi(e as i64)));
        }
        Ok(SparsePoly::from_terms(out))
    }

    /// Common character of all monomials under `act`, or a witness pair.
    pub fn semiinvariant_class(&self, act: &GroupAction) -> Result<u64, PolyError> {
        let mut first: Option<(Monomial, u64)> = None;
        for (m, _) in self.terms() {
            let exps = m
                .as_integral()
                .ok_or_else(|| PolyError::FractionalExponent {
                    var: Var::ALL
                        .into_iter()
                        .find(|&v| !m.is_integral_in(v))
                        .unwrap_or(Var::X),
                    monomial: m.to_string(),
                })?;
            let class = act.class_of(exps);
            match &first {
                None => first = Some((m, class)),
                Some((fm, fc)) if *fc != class => {
                    return Err(PolyError::NotSemiInvariant {
                        first: fm.to_string(),
                        first_class: *fc,
                        second: m.to_string(),
                        second_class: class,
                        modulus: act.modulus(),
                    })
                }
                Some(_) => {}
            }
        }
        first.map(|(_, c)| c).ok_or(PolyError::ZeroPolynomial)
    }

    /// `wt_sigma`: minimum weighted degree over the support.
    pub fn weighted_order(&self, w: &Weight) -> Result<Q, PolyError> {
        self.terms()
            .map(|(m, _)| m.weight(w))
            .min()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Pull-back along the chart map of the weighted blow-up in which `chart`
    /// is the exceptional coordinate:
    /// `chart -> chart^(w_chart/m)`, `v -> chart^(w_v/m) * v` otherwise.
    /// Each monomial keeps its other exponents and acquires the chart
    /// exponent `wt(monomial)`.
    pub fn substitute_weighted(&self, chart: Var, w: &Weight) -> SparsePoly {
        let out = self.terms().map(|(m, c)| {
            // over the common denominator den * modulus, the chart exponent
            // numerator is sum w_i num_i
            let den = m.den * w.modulus();
            let mut num = m.num.map(|e| e * w.modulus());
            num[chart.index()] = Var::ALL
                .iter()
                .map(|&v| w.entry(v) * m.num[v.index()])
                .sum();
            (Monomial::new(num, den), c.clone())
        });
        SparsePoly::from_terms(out)
    }

    /// Smallest exponent of `v` over the support.
    pub fn min_exponent(&self, v: Var) -> Option<Q> {
        self.terms().map(|(m, _)| m.exponent(v)).min()
    }

    /// Writes `self = v^k * strict` with `strict` not divisible by any
    /// positive power of `v`.
    pub fn factor_out(&self, v: Var) -> Result<(Q, SparsePoly), PolyError> {
        let i = v.index();
        let kmin = self
            .terms
            .keys()
            .map(|k| k[i])
            .min()
            .ok_or(PolyError::ZeroPolynomial)?;
        let strict = SparsePoly {
            den: self.den,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut k = *k;
                    k[i] -= kmin;
                    (k, c.clone())
                })
                .collect(),
        }
        .normalized();
        Ok((q(kmin as i64, self.den as i64), strict))
    }

    /// Minimal degree in `vars` over the support.
    pub fn min_degree_in(&self, vars: &[Var]) -> Option<Q> {
        self.terms().map(|(m, _)| m.degree_in(vars)).min()
    }

    /// Terms whose degree in `vars` equals `d`.
    pub fn homogeneous_part(&self, vars: &[Var], d: &Q) -> SparsePoly {
        SparsePoly::from_terms(
            self.terms()
                .filter(|(m, _)| &m.degree_in(vars) == d)
                .map(|(m, c)| (m, c.clone())),
        )
    }

    /// Exact value at a rational point. Fractional powers are allowed when
    /// the coordinate is zero or the root is rational.
    pub fn evaluate(&self, point: &[Q; 4]) -> Result<Q, PolyError> {
        let mut total = Q::zero();
        for (m, c) in self.terms() {
            let mut t = c.clone();
            for v in Var::ALL {
                t *= power(&point[v.index()], &m.exponent(v)).ok_or_else(|| {
                    PolyError::IncompatiblePoint {
                        monomial: m.to_string(),
                        value: fmt_q(&point[v.index()]),
                    }
                })?;
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes a rational value for `v`, leaving other variables.
    pub fn substitute_value(&self, v: Var, value: &Q) -> Result<SparsePoly, PolyError> {
        let i = v.index();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms() {
            let f = power(value, &m.exponent(v)).ok_or_else(|| PolyError::IncompatiblePoint {
                monomial: m.to_string(),
                value: fmt_q(value),
            })?;
            let mut num = m.num;
            num[i] = 0;
            out.push((Monomial::new(num, m.den), c * f));
        }
        Ok(SparsePoly::from_terms(out))
    }

    /// Substitutes a polynomial for `v`; exponents of `v` must be integers.
    pub fn substitute_poly(&self, v: Var, p: &SparsePoly) -> Result<SparsePoly, PolyError> {
        let mut acc = SparsePoly::zero();
        for (e, coeff) in self.coefficients_in(v)? {
            acc = &acc + &(&coeff * &p.pow(e as u32));
        }
        Ok(acc)
    }

    /// Expansion `sum_e coeff_e * v^e` with coefficients free of `v`.
    pub fn coefficients_in(&self, v: Var) -> Result<BTreeMap<u64, SparsePoly>, PolyError> {
        let i = v.index();
        let mut groups: BTreeMap<u64, Vec<(Monomial, Q)>> = BTreeMap::new();
        for (m, c) in self.terms() {
            let e = m
                .integral_exponent(v)
                .ok_or_else(|| PolyError::FractionalExponent {
                    var: v,
                    monomial: m.to_string(),
                })?;
            let mut num = m.num;
            num[i] = 0;
            groups
                .entry(e)
                .or_default()
                .push((Monomial::new(num, m.den), c.clone()));
        }
        Ok(groups
            .into_iter()
            .map(|(e, ts)| (e, SparsePoly::from_terms(ts)))
            .collect())
    }

    /// Univariate view when `v` is the only variable and exponents are integers.
    pub fn to_univariate(&self, v: Var) -> Option<UniPoly> {
        if !self.only_in(&[v]) {
            return None;
        }
        let coeffs = self.coefficients_in(v).ok()?;
        let deg = coeffs.keys().next_back().copied().unwrap_or(0) as usize;
        let mut dense = vec![Q::zero(); deg + 1];
        for (e, c) in coeffs {
            dense[e as usize] = c.constant_term();
        }
        Some(UniPoly::new(dense))
    }

    pub fn from_univariate(p: &UniPoly, v: Var) -> SparsePoly {
        SparsePoly::from_terms(p.coeffs().iter().enumerate().map(|(e, c)| {
            let mut exps = [0; 4];
            exps[v.index()] = e as u64;
            (Monomial::integral(exps), c.clone())
        }))
    }

    /// Exchanges the roles of two variables.
    pub fn swap(&self, a: Var, b: Var) -> SparsePoly {
        SparsePoly {
            den: self.den,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    let mut k = *k;
                    k.swap(a.index(), b.index());
                    (k, c.clone())
                })
                .collect(),
        }
    }

    /// Terms in canonical print order: total degree ascending, then
    /// exponents descending in `x, y, z, u` order.
    pub fn sorted_terms(&self) -> Vec<(Monomial, Q)> {
        let mut ts: Vec<(Monomial, Q)> = self.terms().map(|(m, c)| (m, c.clone())).collect();
        ts.sort_by(|(a, _), (b, _)| print_order(a, b));
        ts
    }
}

fn print_order(a: &Monomial, b: &Monomial) -> Ordering {
    a.total_degree().cmp(&b.total_degree()).then_with(|| {
        for v in Var::ALL {
            match b.exponent(v).cmp(&a.exponent(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// `base^exp` for rational `exp >= 0`, when the result is rational.
fn power(base: &Q, exp: &Q) -> Option<Q> {
    if exp.is_zero() {
        return Some(Q::one());
    }
    if base.is_zero() {
        return Some(Q::zero());
    }
    let n = u64::try_from(exp.numer().clone()).ok()?;
    let d = u32::try_from(exp.denom().clone()).ok()?;
    let r = rational_root(base, d)?;
    Some(qpow(&r, n))
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.sorted_terms().iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_one = *m == Monomial::one();
            if is_one {
                f.write_str(&fmt_q(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_q(&abs))?;
            }
        }
        Ok(())
    }
}

impl Add<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let den = lcm_u64(self.den, rhs.den);
        let mut terms = self.rescaled(den);
        for (k, c) in rhs.rescaled(den) {
            *terms.entry(k).or_insert_with(Q::zero) += c;
        }
        SparsePoly { den, terms }.normalized()
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            den: self.den,
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Sub<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self + &(-rhs)
    }
}

impl Mul<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let den = lcm_u64(self.den, rhs.den);
        let a = self.rescaled(den);
        let b = rhs.rescaled(den);
        let mut terms: BTreeMap<[u64; 4], Q> = BTreeMap::new();
        for (ka, ca) in &a {
            for (kb, cb) in &b {
                let k = [ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ka[3] + kb[3]];
                *terms.entry(k).or_insert_with(Q::zero) += ca * cb;
            }
        }
        SparsePoly { den, terms }.normalized()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: SparsePoly) -> SparsePoly { (&self).$f(&rhs) }
        }
        impl $tr<&SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $f(self, rhs: &SparsePoly) -> SparsePoly { (&self).$f(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::qi;

    fn x() -> SparsePoly {
        SparsePoly::var(Var::X)
    }
    fn y() -> SparsePoly {
        SparsePoly::var(Var::Y)
    }
    fn z() -> SparsePoly {
        SparsePoly::var(Var::Z)
    }
    fn u() -> SparsePoly {
        SparsePoly::var(Var::U)
    }
    fn c(n: i64) -> SparsePoly {
        SparsePoly::constant(qi(n))
    }
    fn cax2(f: SparsePoly) -> SparsePoly {
        x().pow(2) + y().pow(2) + f
    }
    fn w2311() -> Weight {
        Weight::new(2, [2, 3, 1, 1]).unwrap()
    }

    #[test]
    fn ring_operations() {
        assert_eq!((x() + y()) * (x() - y()), x().pow(2) - y().pow(2));
        assert_eq!(x() + SparsePoly::zero(), x());
        let s = z().pow(2) + u().pow(2);
        assert_eq!(
            s.pow(2),
            z().pow(4) + c(2) * z().pow(2) * u().pow(2) + u().pow(4)
        );
        assert!((x() - x()).is_zero());
    }

    #[test]
    fn derivatives() {
        let p = x().pow(2) + y().pow(2) * z();
        assert_eq!(p.partial_derivative(Var::X).unwrap(), c(2) * x());
        assert_eq!(
            (y().pow(2) * z()).partial_derivative(Var::Z).unwrap(),
            y().pow(2)
        );
        // (1+u)^2 (1-u): expand-then-differentiate against the product rule
        let a = c(1) + u();
        let b = c(1) - u();
        let prod = a.pow(2) * b.clone();
        let lhs = prod.partial_derivative(Var::U).unwrap();
        let rhs = c(2) * a.clone() * b + a.pow(2) * c(-1);
        assert_eq!(lhs, rhs);
        let half = SparsePoly::term(Q::one(), Monomial::new([0, 0, 1, 0], 2));
        assert!(matches!(
            half.partial_derivative(Var::Z),
            Err(PolyError::FractionalExponent { var: Var::Z, .. })
        ));
    }

    #[test]
    fn semiinvariant_classes() {
        let act = GroupAction::new(2, [0, 1, 1, 1]).unwrap();
        let phi = cax2(z().pow(4) + u().pow(4));
        assert_eq!(phi.semiinvariant_class(&act).unwrap(), 0);
        assert_eq!(z().semiinvariant_class(&act).unwrap(), 1);
        match (x() + z()).semiinvariant_class(&act) {
            Err(PolyError::NotSemiInvariant {
                first_class,
                second_class,
                ..
            }) => {
                let mut cl = [first_class, second_class];
                cl.sort();
                assert_eq!(cl, [0, 1]);
            }
            other => panic!("expected mixed classes, got {other:?}"),
        }
    }

    #[test]
    fn weighted_order() {
        let w = w2311();
        let phi = cax2(z().pow(4) + u().pow(4));
        assert_eq!(phi.weighted_order(&w).unwrap(), qi(2));
        assert_eq!(z().weighted_order(&w).unwrap(), q(1, 2));
        let h = x().pow(2) + y().pow(2) + z().pow(2) + u().pow(2);
        assert_eq!(h.weighted_order(&w).unwrap(), qi(1));
        assert_eq!(
            SparsePoly::zero().weighted_order(&w),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn chart_substitution() {
        let w = w2311();
        let h = x().pow(2) + y().pow(2) + z().pow(2) + u().pow(2);
        let pulled = h.substitute_weighted(Var::Y, &w);
        let expect = x().pow(2) * y().pow(2) + y().pow(3) + z().pow(2) * y() + u().pow(2) * y();
        assert_eq!(pulled, expect);
        let (k, g) = pulled.factor_out(Var::Y).unwrap();
        assert_eq!(k, qi(1));
        assert_eq!(g, x().pow(2) * y() + y().pow(2) + z().pow(2) + u().pow(2));

        let zs = z().substitute_weighted(Var::Z, &w);
        assert_eq!(
            zs,
            SparsePoly::term(Q::one(), Monomial::new([0, 0, 1, 0], 2))
        );
        let (k, g) = zs.factor_out(Var::Z).unwrap();
        assert_eq!((k, g), (q(1, 2), SparsePoly::one()));

        assert_eq!(
            x().pow(2).substitute_weighted(Var::Z, &w),
            x().pow(2) * z().pow(2)
        );

        let phi = cax2(z().pow(4) + u().pow(4));
        let (k, g) = phi
            .substitute_weighted(Var::Z, &w)
            .factor_out(Var::Z)
            .unwrap();
        assert_eq!(k, qi(2));
        assert_eq!(g, x().pow(2) + y().pow(2) * z() + c(1) + u().pow(4));
    }

    #[test]
    fn evaluation() {
        let p = x().pow(2) + y().pow(2);
        let pt = [qi(1), qi(2), qi(0), qi(0)];
        assert_eq!(p.evaluate(&pt).unwrap(), qi(5));
        assert_eq!(SparsePoly::zero().evaluate(&pt).unwrap(), qi(0));
        let p = u().pow(2) - c(1);
        assert_eq!(p.evaluate(&[qi(0), qi(0), qi(0), qi(1)]).unwrap(), qi(0));
        let root = SparsePoly::term(Q::one(), Monomial::new([0, 0, 1, 0], 2));
        assert_eq!(root.evaluate(&[qi(0), qi(0), qi(4), qi(0)]).unwrap(), qi(2));
        assert_eq!(root.evaluate(&[qi(0), qi(0), qi(0), qi(0)]).unwrap(), qi(0));
        assert!(root.evaluate(&[qi(0), qi(0), qi(2), qi(0)]).is_err());
    }

    #[test]
    fn display_is_canonical() {
        let phi = cax2(z().pow(4) + u().pow(4));
        assert_eq!(phi.to_string(), "x^2 + y^2 + z^4 + u^4");
        let p = (z().pow(2) + u().pow(2)).pow(2);
        assert_eq!(p.to_string(), "z^4 + 2*z^2*u^2 + u^4");
        let r = SparsePoly::constant(q(-3, 2)) * x() - y();
        assert_eq!(r.to_string(), "-3/2*x - y");
        let half = SparsePoly::term(qi(1), Monomial::new([0, 0, 1, 0], 2));
        assert_eq!(half.to_string(), "z^(1/2)");
        assert_eq!(SparsePoly::constant(qi(-1)).to_string(), "-1");
    }

    #[test]
    fn substitution_of_polynomials() {
        let phi = x().pow(2) + y().pow(2);
        let p = z().pow(2) + u().pow(2);
        let shifted = phi.substitute_poly(Var::X, &(x() + p.clone())).unwrap();
        assert_eq!(
            shifted,
            x().pow(2) + c(2) * x() * p.clone() + p.pow(2) + y().pow(2)
        );
    }
}
