use num_traits::{One, Zero};

use super::{Monomial, PolyError, SparsePoly, UniPoly, Var};
use crate::num::{qi, rational_sqrt, Q};

const ZU: [Var; 2] = [Var::Z, Var::U];

fn require_zu(f: &SparsePoly) -> Result<(), PolyError> {
    if !f.only_in(&ZU) {
        return Err(PolyError::UnexpectedVariables {
            expected: "z, u".into(),
        });
    }
    if !f.has_integral_exponents() {
        let (m, _) = f
            .terms()
            .find(|(m, _)| !m.is_integral())
            .expect("fractional term");
        return Err(PolyError::FractionalExponent {
            var: if m.is_integral_in(Var::Z) {
                Var::U
            } else {
                Var::Z
            },
            monomial: m.to_string(),
        });
    }
    Ok(())
}

/// Minimal total degree over the support of `f(z, u)`.
pub fn tau0(f: &SparsePoly) -> Result<u64, PolyError> {
    require_zu(f)?;
    let d = f.min_degree_in(&ZU).ok_or(PolyError::ZeroPolynomial)?;
    Ok(u64::try_from(d.to_integer()).expect("non-negative degree"))
}

/// True iff every monomial has `z, u`-degree at least `k`, i.e. `f` lies in
/// `(z, u)^k`.
pub fn ideal_power_membership(f: &SparsePoly, k: u64) -> bool {
    f.terms().all(|(m, _)| m.degree_in(&ZU) >= qi(k as i64))
}

/// Homogeneous polynomial in `z, u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    poly: SparsePoly,
    degree: u64,
}

/// Rational linear factor `a z + b u` with multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactor {
    pub a: Q,
    pub b: Q,
    pub multiplicity: u32,
}

/// `F = unit * prod (a_t z + b_t u)^{m_t} * prod q_j^{n_j}` where the `q_j`
/// are homogeneous, square-free, and have no rational linear factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorData {
    pub unit: Q,
    pub linear: Vec<LinearFactor>,
    pub residual: Vec<(BinaryForm, u32)>,
}

/// Outcome of the perfect-square test over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SquareTest {
    /// Some irreducible factor has odd multiplicity.
    NotSquare,
    /// `F = root^2` with rational `root` (leading coefficient positive).
    Square { root: SparsePoly },
    /// All multiplicities are even but `F = scalar * root^2` where `scalar`
    /// is not a rational square; over `C` the form is still a square.
    SquareUpToScalar { scalar: Q, root: SparsePoly },
}

impl SquareTest {
    /// Square over `C`: every multiplicity is even.
    pub fn is_square(&self) -> bool {
        !matches!(self, SquareTest::NotSquare)
    }
}

impl BinaryForm {
    pub fn new(poly: SparsePoly) -> Result<Self, PolyError> {
        require_zu(&poly)?;
        let degree = tau0(&poly)?;
        let d = qi(degree as i64);
        if poly.terms().any(|(m, _)| m.degree_in(&ZU) != d) {
            return Err(PolyError::NotHomogeneous { degree });
        }
        Ok(BinaryForm { poly, degree })
    }

    /// Degree-`tau0` homogeneous part of `f`.
    pub fn leading_form(f: &SparsePoly, tau0: u64) -> Result<Self, PolyError> {
        require_zu(f)?;
        BinaryForm::new(f.homogeneous_part(&ZU, &qi(tau0 as i64)))
    }

    pub fn poly(&self) -> &SparsePoly {
        &self.poly
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// `F(t, 1)`; the multiplicity of `u` as a factor is `degree - deg`.
    pub fn dehomogenize(&self) -> UniPoly {
        let mut coeffs = vec![Q::zero(); self.degree as usize + 1];
        for (m, c) in self.poly.terms() {
            let i = m.integral_exponent(Var::Z).expect("integral form") as usize;
            coeffs[i] = c.clone();
        }
        UniPoly::new(coeffs)
    }

    /// `u^d g(z/u)`.
    pub fn homogenize(g: &UniPoly, degree: u64) -> SparsePoly {
        SparsePoly::from_terms(g.coeffs().iter().enumerate().map(|(i, c)| {
            (
                Monomial::integral([0, 0, i as u64, degree - i as u64]),
                c.clone(),
            )
        }))
    }

    fn u_multiplicity(&self, g: &UniPoly) -> u64 {
        self.degree - g.degree().unwrap_or(0) as u64
    }

    /// Rational linear factors and residual square-free factors.
    pub fn factor_data(&self) -> FactorData {
        let g = self.dehomogenize();
        let (unit, parts) = g.square_free_decomposition();
        let mut linear = Vec::new();
        let mut residual = Vec::new();
        let k = self.u_multiplicity(&g);
        if k > 0 {
            linear.push(LinearFactor {
                a: Q::zero(),
                b: Q::one(),
                multiplicity: k as u32,
            });
        }
        for (f, mult) in parts {
            let (roots, rest) = f.split_rational_roots();
            for r in roots {
                linear.push(LinearFactor {
                    a: Q::one(),
                    b: -r,
                    multiplicity: mult,
                });
            }
            if let Some(d) = rest.degree().filter(|&d| d > 0) {
                let form = BinaryForm {
                    poly: BinaryForm::homogenize(&rest, d as u64),
                    degree: d as u64,
                };
                residual.push((form, mult));
            }
        }
        FactorData {
            unit,
            linear,
            residual,
        }
    }

    /// Decides whether `F` is a square via square-free decomposition of the
    /// dehomogenized form.
    pub fn is_perfect_square(&self) -> Result<SquareTest, PolyError> {
        if self.degree % 2 == 1 {
            return Err(PolyError::OddDegree(self.degree));
        }
        let g = self.dehomogenize();
        let (unit, parts) = g.square_free_decomposition();
        let k = self.u_multiplicity(&g);
        if k % 2 == 1 || parts.iter().any(|(_, m)| m % 2 == 1) {
            return Ok(SquareTest::NotSquare);
        }
        let mut root = SparsePoly::var(Var::U).pow((k / 2) as u32);
        for (f, m) in &parts {
            let h = BinaryForm::homogenize(f, f.degree().unwrap_or(0) as u64);
            root = &root * &h.pow(m / 2);
        }
        debug_assert_eq!(&root.pow(2).scale(&unit), &self.poly);
        Ok(match rational_sqrt(&unit) {
            Some(s) => SquareTest::Square {
                root: root.scale(&s),
            },
            None => SquareTest::SquareUpToScalar { scalar: unit, root },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::q;

    fn z() -> SparsePoly {
        SparsePoly::var(Var::Z)
    }
    fn u() -> SparsePoly {
        SparsePoly::var(Var::U)
    }
    fn c(n: i64) -> SparsePoly {
        SparsePoly::constant(qi(n))
    }

    #[test]
    fn tau0_examples() {
        assert_eq!(tau0(&(z().pow(4) + u().pow(4))).unwrap(), 4);
        assert_eq!(tau0(&(z().pow(2) * u().pow(2) + z().pow(6))).unwrap(), 4);
        assert_eq!(tau0(&(z().pow(2) + u().pow(2)).pow(2)).unwrap(), 4);
        assert_eq!(tau0(&SparsePoly::zero()), Err(PolyError::ZeroPolynomial));
        assert!(tau0(&SparsePoly::var(Var::X)).is_err());
    }

    #[test]
    fn leading_forms() {
        let f = z().pow(4) + u().pow(4) + z().pow(6);
        assert_eq!(
            BinaryForm::leading_form(&f, 4).unwrap().poly(),
            &(z().pow(4) + u().pow(4))
        );
        let f = (z().pow(2) + u().pow(2)).pow(2) + u().pow(5);
        assert_eq!(
            BinaryForm::leading_form(&f, 4).unwrap().poly(),
            &(z().pow(4) + c(2) * z().pow(2) * u().pow(2) + u().pow(4))
        );
        let f = z().pow(2) * u().pow(2);
        assert_eq!(BinaryForm::leading_form(&f, 4).unwrap().poly(), &f);
    }

    #[test]
    fn perfect_squares() {
        let s = z().pow(2) + u().pow(2);
        let f = BinaryForm::new(s.pow(2)).unwrap();
        assert_eq!(
            f.is_perfect_square().unwrap(),
            SquareTest::Square { root: s }
        );
        let f = BinaryForm::new(z().pow(4) + u().pow(4)).unwrap();
        assert_eq!(f.is_perfect_square().unwrap(), SquareTest::NotSquare);
        let f = BinaryForm::new(z().pow(2) * u().pow(2)).unwrap();
        assert_eq!(
            f.is_perfect_square().unwrap(),
            SquareTest::Square { root: z() * u() }
        );
        let f = BinaryForm::new(c(2) * z().pow(2)).unwrap();
        assert_eq!(
            f.is_perfect_square().unwrap(),
            SquareTest::SquareUpToScalar {
                scalar: qi(2),
                root: z()
            }
        );
        let f = BinaryForm::new(z().pow(3)).unwrap();
        assert_eq!(f.is_perfect_square(), Err(PolyError::OddDegree(3)));
    }

    #[test]
    fn factorization_data() {
        // (z+u)^2 z u (z^2+u^2)
        let f = (z() + u()).pow(2) * z() * u() * (z().pow(2) + u().pow(2));
        let fd = BinaryForm::new(f).unwrap().factor_data();
        assert_eq!(fd.unit, qi(1));
        let mut lin: Vec<(Q, Q, u32)> = fd
            .linear
            .iter()
            .map(|l| (l.a.clone(), l.b.clone(), l.multiplicity))
            .collect();
        lin.sort();
        assert_eq!(
            lin,
            vec![(qi(0), qi(1), 1), (qi(1), qi(0), 1), (qi(1), qi(1), 2)]
        );
        assert_eq!(fd.residual.len(), 1);
        assert_eq!(fd.residual[0].0.poly(), &(z().pow(2) + u().pow(2)));
        let _ = q(1, 2);
    }

    #[test]
    fn ideal_powers() {
        assert!(ideal_power_membership(&z().pow(4), 4));
        assert!(!ideal_power_membership(&z().pow(3), 4));
        assert!(ideal_power_membership(&(z().pow(2) * u().pow(2)), 4));
    }
}
