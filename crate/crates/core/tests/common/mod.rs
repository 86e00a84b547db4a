//! Oracles and property checks shared by the integration tests and the
//! acceptance target. The oracles are written against plain integer and
//! rational data, independently of the library's own algorithms.

#![allow(dead_code)]

use std::collections::BTreeMap;

use nashcert::num::{q, qi, Q};
use nashcert::poly::{BinaryForm, Monomial, SparsePoly, SquareTest, Var, Weight};
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub mod criteria;

// ---------------------------------------------------------------------------
// Toric oracle: standard cone over Z^n + Z (1/m)(a_1..a_n). Points are kept
// as integer numerators over the common denominator m.

pub struct CyclicOracle {
    pub m: i64,
    pub weights: Vec<i64>,
}

impl CyclicOracle {
    pub fn new(m: i64, weights: &[i64]) -> Self {
        CyclicOracle {
            m,
            weights: weights.to_vec(),
        }
    }

    fn residue(&self, k: i64) -> Vec<i64> {
        self.weights.iter().map(|a| (k * a).rem_euclid(self.m)).collect()
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        let r: Vec<i64> = p.iter().map(|x| x.rem_euclid(self.m)).collect();
        (0..self.m).any(|k| self.residue(k) == r)
    }

    /// A face (support mask) is singular when a nonzero class of `N / Z^n`
    /// has a representative supported on it.
    pub fn singular_face(&self, support: &[bool]) -> bool {
        (1..self.m).any(|k| {
            let r = self.residue(k);
            r.iter().any(|&x| x != 0) && r.iter().zip(support).all(|(&x, &s)| x == 0 || s)
        })
    }

    pub fn in_s(&self, p: &[i64]) -> bool {
        let support: Vec<bool> = p.iter().map(|&x| x > 0).collect();
        p.iter().all(|&x| x >= 0) && support.iter().any(|&s| s) && self.singular_face(&support)
    }

    /// Lattice points of `[0, k]^n`, as numerators over `m`.
    pub fn box_points(&self, k: i64) -> Vec<Vec<i64>> {
        let n = self.weights.len();
        let top = k * self.m;
        let mut out = Vec::new();
        let mut cur = vec![0i64; n];
        loop {
            if self.contains(&cur) {
                out.push(cur.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                cur[i] += 1;
                if cur[i] <= top {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Level `<(1,..,1), p>` as a rational.
    pub fn level(&self, p: &[i64]) -> Q {
        q(p.iter().sum(), self.m)
    }

    /// `p` minimal in `S`: no other `S` point `u` with `0 <= u <= p`
    /// componentwise.
    pub fn is_minimal(&self, p: &[i64]) -> bool {
        let n = p.len();
        let mut u = vec![0i64; n];
        loop {
            if u.as_slice() != p && self.contains(&u) && self.in_s(&u) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return true;
                }
                u[i] += 1;
                if u[i] <= p[i] {
                    break;
                }
                u[i] = 0;
                i += 1;
            }
        }
    }

    pub fn is_primitive(&self, p: &[i64]) -> bool {
        let mx = p.iter().copied().max().unwrap_or(0);
        p.iter().any(|&x| x != 0)
            && !(2..=mx.max(1)).any(|d| p.iter().all(|x| x % d == 0) && {
                let r: Vec<i64> = p.iter().map(|x| x / d).collect();
                self.contains(&r)
            })
    }

    pub fn to_q(&self, p: &[i64]) -> Vec<Q> {
        p.iter().map(|&x| q(x, self.m)).collect()
    }
}

/// `1/r(1, a, r - a)` with `r <= 12`, `gcd(a, r) = 1`.
pub fn terminal_family() -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for r in 2..=12i64 {
        for a in 1..r {
            if num_integer::gcd(a, r) == 1 {
                out.push((r, a));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Polynomial oracle: exponent vectors of rationals mapped to coefficients.

pub type OPoly = BTreeMap<[Q; 4], Q>;

pub fn oracle(p: &SparsePoly) -> OPoly {
    p.terms()
        .map(|(m, c)| (Var::ALL.map(|v| m.exponent(v)), c.clone()))
        .collect()
}

fn insert(acc: &mut OPoly, e: [Q; 4], c: Q) {
    let entry = acc.entry(e.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&e);
    }
}

pub fn o_mul(a: &OPoly, b: &OPoly) -> OPoly {
    let mut out = OPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [0, 1, 2, 3].map(|i| &ea[i] + &eb[i]);
            insert(&mut out, e, ca * cb);
        }
    }
    out
}

pub fn o_add(a: &OPoly, b: &OPoly) -> OPoly {
    let mut out = a.clone();
    for (e, c) in b {
        insert(&mut out, e.clone(), c.clone());
    }
    out
}

/// `chart -> chart^(w_chart/m)`, `v -> chart^(w_v/m) v`.
pub fn o_pullback(p: &OPoly, chart: usize, w: &Weight) -> OPoly {
    let mut out = OPoly::new();
    for (e, c) in p {
        let mut e2 = e.clone();
        e2[chart] = (0..4).map(|i| &e[i] * w.of(Var::ALL[i])).sum();
        insert(&mut out, e2, c.clone());
    }
    out
}

pub fn o_min_exponent(p: &OPoly, i: usize) -> Option<Q> {
    p.keys().map(|e| e[i].clone()).min()
}

/// Lowest weight of a monomial, from the definition.
pub fn o_wt(p: &OPoly, w: &Weight) -> Option<Q> {
    p.keys()
        .map(|e| (0..4).map(|i| &e[i] * w.of(Var::ALL[i])).sum::<Q>())
        .min()
}

pub fn o_eval(p: &OPoly, pt: &[Q; 4]) -> Q {
    p.iter()
        .map(|(e, c)| {
            let mut t = c.clone();
            for i in 0..4 {
                assert!(e[i].is_integer(), "evaluation needs integral exponents");
                let k = e[i].to_integer().to_u32().expect("small exponent");
                for _ in 0..k {
                    t *= &pt[i];
                }
            }
            t
        })
        .sum()
}

// ---------------------------------------------------------------------------
// Random data.

pub fn poly_strategy(max_terms: usize, max_exp: u64) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(
        (-6i64..=6, prop::array::uniform4(0u64..=max_exp)),
        0..=max_terms,
    )
    .prop_map(|ts| {
        SparsePoly::from_terms(
            ts.into_iter()
                .map(|(c, e)| (Monomial::integral(e), qi(c))),
        )
    })
}

pub fn nonzero_poly_strategy(max_terms: usize, max_exp: u64) -> impl Strategy<Value = SparsePoly> {
    poly_strategy(max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn weight_strategy() -> impl Strategy<Value = Weight> {
    (1u64..=6, prop::array::uniform4(1u64..=9)).prop_map(|(m, e)| Weight::new(m, e).unwrap())
}

/// Nonzero binary form of degree `d` in `z, u`.
pub fn binary_form_strategy() -> impl Strategy<Value = SparsePoly> {
    (1u64..=4)
        .prop_flat_map(|d| prop::collection::vec(-4i64..=4, (d + 1) as usize).prop_map(move |c| (d, c)))
        .prop_map(|(d, cs)| {
            SparsePoly::from_terms(cs.into_iter().enumerate().map(|(i, c)| {
                (
                    Monomial::integral([0, 0, i as u64, d - i as u64]),
                    qi(c),
                )
            }))
        })
        .prop_filter("nonzero", |p| !p.is_zero())
}

// ---------------------------------------------------------------------------
// The five algebraic properties.

pub fn check_substitution_homomorphism(
    p: &SparsePoly,
    r: &SparsePoly,
    w: &Weight,
    chart: usize,
) -> Result<(), TestCaseError> {
    let v = Var::ALL[chart];
    let sp = p.substitute_weighted(v, w);
    let sr = r.substitute_weighted(v, w);
    prop_assert_eq!((p * r).substitute_weighted(v, w), &sp * &sr);
    prop_assert_eq!((p + r).substitute_weighted(v, w), &sp + &sr);
    prop_assert_eq!(oracle(&sp), o_pullback(&oracle(p), chart, w));
    // substituting a polynomial for a variable is a ring map too
    let t = r.substitute_poly(Var::Z, p).unwrap();
    let lhs = (p * r).substitute_poly(Var::Z, p).unwrap();
    let rhs = &p.substitute_poly(Var::Z, p).unwrap() * &t;
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn check_wt_additivity(p: &SparsePoly, r: &SparsePoly, w: &Weight) -> Result<(), TestCaseError> {
    let wp = p.weighted_order(w).unwrap();
    let wr = r.weighted_order(w).unwrap();
    prop_assert_eq!(Some(wp.clone()), o_wt(&oracle(p), w));
    prop_assert_eq!((p * r).weighted_order(w).unwrap(), &wp + &wr);
    Ok(())
}

pub fn check_factor_exponent(p: &SparsePoly, w: &Weight, chart: usize) -> Result<(), TestCaseError> {
    let v = Var::ALL[chart];
    let pulled = p.substitute_weighted(v, w);
    let (k, g) = pulled.factor_out(v).unwrap();
    prop_assert_eq!(&k, &p.weighted_order(w).unwrap());
    prop_assert_eq!(Some(k.clone()), o_min_exponent(&oracle(&pulled), chart));
    prop_assert_eq!(o_min_exponent(&oracle(&g), chart), Some(Q::zero()));
    // chartvar^k * g reproduces the pull-back
    let mut ck = OPoly::new();
    let mut e = [Q::zero(), Q::zero(), Q::zero(), Q::zero()];
    e[chart] = k;
    ck.insert(e, Q::one());
    prop_assert_eq!(o_mul(&ck, &oracle(&g)), oracle(&pulled));
    Ok(())
}

pub fn check_leibniz(p: &SparsePoly, r: &SparsePoly) -> Result<(), TestCaseError> {
    for v in Var::ALL {
        let d = |s: &SparsePoly| s.partial_derivative(v).unwrap();
        prop_assert_eq!(d(&(p * r)), &(&d(p) * r) + &(p * &d(r)));
    }
    Ok(())
}

/// `c * p^2` is recognised as a square with a root that reproduces it, and
/// `z * u * p^2` is not a square.
pub fn check_perfect_square(p: &SparsePoly, s: i64, twist: bool) -> Result<(), TestCaseError> {
    let scalar = if twist { qi(2 * s * s) } else { qi(s * s) };
    let f = p.pow(2).scale(&scalar);
    match BinaryForm::new(f.clone()).unwrap().is_perfect_square().unwrap() {
        SquareTest::Square { root } => {
            prop_assert!(!twist);
            prop_assert_eq!(root.pow(2), f);
        }
        SquareTest::SquareUpToScalar { scalar: c, root } => {
            prop_assert!(twist);
            prop_assert_eq!(root.pow(2).scale(&c), f);
        }
        SquareTest::NotSquare => prop_assert!(false, "{} not recognised as a square", f),
    }
    let zu = SparsePoly::var(Var::Z) * SparsePoly::var(Var::U);
    let odd = &zu * &p.pow(2);
    prop_assert_eq!(
        BinaryForm::new(odd).unwrap().is_perfect_square().unwrap(),
        SquareTest::NotSquare
    );
    Ok(())
}

pub const PROPERTY_CASES: u32 = 200;

fn runner() -> TestRunner {
    TestRunner::new(Config {
        cases: PROPERTY_CASES,
        failure_persistence: None,
        ..Config::default()
    })
}

/// Runs one of the five properties for [`PROPERTY_CASES`] cases; returns the
/// number of cases run or the failure.
pub fn run_property(name: &str) -> Result<u32, String> {
    let mut runner = runner();
    let pair = || (nonzero_poly_strategy(4, 3), nonzero_poly_strategy(4, 3));
    let res = match name {
        "substitution homomorphism" => runner.run(
            &(pair(), weight_strategy(), 0usize..4),
            |((p, r), w, c)| check_substitution_homomorphism(&p, &r, &w, c),
        ).map_err(|e| e.to_string()),
        "wt additivity" => runner.run(&(pair(), weight_strategy()), |((p, r), w)| {
            check_wt_additivity(&p, &r, &w)
        }).map_err(|e| e.to_string()),
        "factorization exponent = wt" => runner.run(
            &(nonzero_poly_strategy(5, 4), weight_strategy(), 0usize..4),
            |(p, w, c)| check_factor_exponent(&p, &w, c),
        ).map_err(|e| e.to_string()),
        "Leibniz rule" => runner.run(&pair(), |(p, r)| check_leibniz(&p, &r)).map_err(|e| e.to_string()),
        "perfect-square round trip" => runner.run(
            &(binary_form_strategy(), 1i64..=5, any::<bool>()),
            |(p, s, t)| check_perfect_square(&p, s, t),
        ).map_err(|e| e.to_string()),
        other => return Err(format!("unknown property {other}")),
    };
    res.map(|_| PROPERTY_CASES)
}

pub const PROPERTIES: [&str; 5] = [
    "substitution homomorphism",
    "wt additivity",
    "factorization exponent = wt",
    "Leibniz rule",
    "perfect-square round trip",
];
