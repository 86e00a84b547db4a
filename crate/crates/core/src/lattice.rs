//! Exact lattice and simplicial-cone computations for toric quotient
//! singularities: Gorenstein dual vectors, terminality, discrepancies and
//! the minimal elements of `S_sigma` (lattice points in relative interiors of
//! singular faces, ordered by `u <= w` iff `w - u` lies in the cone).

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::num::{ceil, common_denominator, floor, fmt_q, frac, qi, QVec, Q};

/// Default half-width `K` of the enumeration box `{sum t_i v_i : 0 <= t_i <= K}`.
pub const DEFAULT_BOX_BOUND: u64 = 1;

/// Largest box size the completeness loop will try before giving up.
const MAX_BOX_BOUND: u64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("lattice index must be positive")]
    InvalidIndex,
    #[error("extra generator {0} is not in (1/m)Z^n")]
    BadGenerator(String),
    #[error("point {0} is not in the lattice")]
    NotInLattice(String),
    #[error("the zero vector is not primitive")]
    ZeroPoint,
    #[error("generator {0} is not primitive")]
    NotPrimitive(String),
    #[error("a simplicial full-dimensional cone needs {rank} generators, got {count}")]
    WrongGeneratorCount { rank: usize, count: usize },
    #[error("unsupported cone: generators are linearly dependent")]
    Degenerate,
    #[error("point {0} is not in the relative interior of the cone")]
    NotInterior(String),
    #[error("point {0} is not in S_sigma")]
    NotInS(String),
    #[error("cone is not terminal: witness {0}")]
    NotTerminal(String),
    #[error("bound must be positive")]
    InvalidBound,
    #[error("rank {0} is outside the supported range 1..=16")]
    UnsupportedRank(usize),
}

/// `N = Z^n + Z e` with `m e` integral.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotientLattice {
    rank: usize,
    index: u64,
    extra: Vec<Q>,
}

impl QuotientLattice {
    pub fn new(rank: usize, index: u64, extra: Vec<Q>) -> Result<Self, LatticeError> {
        if !(1..=16).contains(&rank) {
            return Err(LatticeError::UnsupportedRank(rank));
        }
        if index == 0 {
            return Err(LatticeError::InvalidIndex);
        }
        if extra.len() != rank {
            return Err(LatticeError::DimensionMismatch {
                expected: rank,
                got: extra.len(),
            });
        }
        let m = qi(index as i64);
        if extra.iter().any(|e| !(e * &m).is_integer()) {
            return Err(LatticeError::BadGenerator(QVec(&extra).to_string()));
        }
        Ok(QuotientLattice {
            rank,
            index,
            extra: extra.iter().map(frac).collect(),
        })
    }

    /// `Z^n + Z (1/m)(a_1, ..., a_n)`.
    pub fn cyclic(index: u64, weights: &[i64]) -> Result<Self, LatticeError> {
        if index == 0 {
            return Err(LatticeError::InvalidIndex);
        }
        let extra = weights
            .iter()
            .map(|&a| Q::new(BigInt::from(a), BigInt::from(index)))
            .collect();
        QuotientLattice::new(weights.len(), index, extra)
    }

    pub fn standard(rank: usize) -> Result<Self, LatticeError> {
        QuotientLattice::new(rank, 1, vec![Q::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Extra generator reduced into `[0, 1)^n`.
    pub fn extra(&self) -> &[Q] {
        &self.extra
    }

    fn check_dim(&self, p: &[Q]) -> Result<(), LatticeError> {
        if p.len() != self.rank {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank,
                got: p.len(),
            });
        }
        Ok(())
    }

    /// Membership: `m p` integral and `p mod Z^n` is a multiple of `e`.
    pub fn contains(&self, p: &[Q]) -> Result<bool, LatticeError> {
        self.check_dim(p)?;
        let m = qi(self.index as i64);
        if p.iter().any(|x| !(x * &m).is_integer()) {
            return Ok(false);
        }
        let fp: Vec<Q> = p.iter().map(frac).collect();
        Ok((0..self.index).any(|k| {
            let k = qi(k as i64);
            fp.iter()
                .zip(&self.extra)
                .all(|(x, e)| *x == frac(&(e * &k)))
        }))
    }

    /// True iff no lattice point equals `p / k` for an integer `k >= 2`.
    pub fn is_primitive(&self, p: &[Q]) -> Result<bool, LatticeError> {
        if !self.contains(p)? {
            return Err(LatticeError::NotInLattice(QVec(p).to_string()));
        }
        if p.iter().all(Zero::is_zero) {
            return Err(LatticeError::ZeroPoint);
        }
        // `p / k` in the lattice forces `k | gcd(m p)`.
        let m = qi(self.index as i64);
        let g = p
            .iter()
            .map(|x| (x * &m).to_integer())
            .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
        let mut k = BigInt::from(2);
        while k <= g {
            if (&g % &k).is_zero() {
                let kq = Q::from_integer(k.clone());
                let scaled: Vec<Q> = p.iter().map(|x| x / &kq).collect();
                if self.contains(&scaled)? {
                    return Ok(false);
                }
            }
            k += 1;
        }
        Ok(true)
    }
}

impl fmt::Display for QuotientLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.index == 1 {
            return write!(f, "Z^{}", self.rank);
        }
        let m = qi(self.index as i64);
        let ws: Vec<String> = self.extra.iter().map(|e| fmt_q(&(e * &m))).collect();
        write!(f, "Z^{} + Z*1/{}({})", self.rank, self.index, ws.join(","))
    }
}

/// The element `m_tau` of `M_Q` with `<m_tau, v_i> = 1` for every generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualVector {
    #[serde(with = "crate::num::serde_qvec")]
    pub coordinates: Vec<Q>,
}

impl DualVector {
    pub fn pairing(&self, w: &[Q]) -> Q {
        self.coordinates.iter().zip(w).map(|(a, b)| a * b).sum()
    }
}

/// A lattice point with its level `<m_tau, w>` and its cone coordinates
/// `t` (so that `w = sum t_i v_i`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticePoint {
    #[serde(with = "crate::num::serde_qvec")]
    pub coordinates: Vec<Q>,
    #[serde(with = "crate::num::serde_q")]
    pub level: Q,
    #[serde(with = "crate::num::serde_qvec")]
    pub cone_coordinates: Vec<Q>,
}

impl LatticePoint {
    /// Indices `i` with `t_i > 0`, as a bit mask.
    pub fn support(&self) -> u32 {
        support_mask(&self.cone_coordinates)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", QVec(&self.coordinates))
    }
}

fn support_mask(t: &[Q]) -> u32 {
    t.iter()
        .enumerate()
        .filter(|(_, x)| x.is_positive())
        .fold(0, |acc, (i, _)| acc | (1 << i))
}

fn point_order(a: &LatticePoint, b: &LatticePoint) -> std::cmp::Ordering {
    a.level
        .cmp(&b.level)
        .then_with(|| a.coordinates.cmp(&b.coordinates))
}

/// Outcome of the terminality test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalCheck {
    pub terminal: bool,
    pub witness: Option<LatticePoint>,
}

/// A minimal element of `S_sigma` together with its discrepancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashValuation {
    pub point: LatticePoint,
    #[serde(with = "crate::num::serde_q")]
    pub discrepancy: Q,
}

/// Result of the Nash valuation search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NashValuations {
    pub valuations: Vec<NashValuation>,
    /// The cone passed the terminality test.
    pub terminal: bool,
    /// Every enumerated point of `S_sigma` within the checked level is
    /// dominated by a reported element.
    pub complete: bool,
    /// Box size `K` at which completeness was verified (or last tried).
    pub box_bound: u64,
    #[serde(with = "crate::num::serde_q")]
    pub search_bound: Q,
}

/// Full-dimensional simplicial cone over a `QuotientLattice`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCone {
    lattice: QuotientLattice,
    generators: Vec<Vec<Q>>,
    /// `inverse[j][i]`: coefficient of `w_j` in `t_i`.
    inverse: Vec<Vec<Q>>,
    dual: DualVector,
    /// Nonzero lattice points with cone coordinates in `[0, 1)^n`.
    representatives: Vec<LatticePoint>,
}

impl SimplicialCone {
    pub fn new(lattice: QuotientLattice, generators: Vec<Vec<Q>>) -> Result<Self, LatticeError> {
        let n = lattice.rank();
        if generators.len() != n {
            return Err(LatticeError::WrongGeneratorCount {
                rank: n,
                count: generators.len(),
            });
        }
        for v in &generators {
            if !lattice.contains(v)? {
                return Err(LatticeError::NotInLattice(QVec(v).to_string()));
            }
            if v.iter().all(Zero::is_zero) {
                return Err(LatticeError::Degenerate);
            }
            if !lattice.is_primitive(v)? {
                return Err(LatticeError::NotPrimitive(QVec(v).to_string()));
            }
        }
        // Rows of `inverse` solve `w = t V` where `V` has the generators as rows.
        let inverse = invert(&generators).ok_or(LatticeError::Degenerate)?;
        let ones = vec![Q::one(); n];
        let dual = DualVector {
            coordinates: solve(&generators, &ones).ok_or(LatticeError::Degenerate)?,
        };
        let mut cone = SimplicialCone {
            lattice,
            generators,
            inverse,
            dual,
            representatives: vec![],
        };
        cone.representatives = cone.fundamental_representatives();
        Ok(cone)
    }

    /// `cone(e_1, ..., e_n)`.
    pub fn standard(lattice: QuotientLattice) -> Result<Self, LatticeError> {
        let n = lattice.rank();
        let gens = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Q::one() } else { Q::zero() })
                    .collect()
            })
            .collect();
        SimplicialCone::new(lattice, gens)
    }

    pub fn lattice(&self) -> &QuotientLattice {
        &self.lattice
    }

    pub fn generators(&self) -> &[Vec<Q>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn gorenstein_dual(&self) -> &DualVector {
        &self.dual
    }

    /// Coordinates `t` with `w = sum t_i v_i`.
    pub fn cone_coordinates(&self, w: &[Q]) -> Result<Vec<Q>, LatticeError> {
        self.lattice.check_dim(w)?;
        let n = self.rank();
        Ok((0..n)
            .map(|i| (0..n).map(|j| &w[j] * &self.inverse[j][i]).sum())
            .collect())
    }

    pub fn level(&self, w: &[Q]) -> Q {
        self.dual.pairing(w)
    }

    /// Builds a `LatticePoint` after checking membership.
    pub fn point(&self, w: &[Q]) -> Result<LatticePoint, LatticeError> {
        if !self.lattice.contains(w)? {
            return Err(LatticeError::NotInLattice(QVec(w).to_string()));
        }
        Ok(LatticePoint {
            coordinates: w.to_vec(),
            level: self.level(w),
            cone_coordinates: self.cone_coordinates(w)?,
        })
    }

    fn from_cone_coordinates(&self, t: Vec<Q>) -> LatticePoint {
        let n = self.rank();
        let coordinates: Vec<Q> = (0..n)
            .map(|j| (0..n).map(|i| &t[i] * &self.generators[i][j]).sum())
            .collect();
        LatticePoint {
            level: t.iter().sum(),
            coordinates,
            cone_coordinates: t,
        }
    }

    /// Lattice points with `t in [0, 1)^n`, excluding the origin.
    fn fundamental_representatives(&self) -> Vec<LatticePoint> {
        let n = self.rank();
        let mut lo = vec![Q::zero(); n];
        let mut hi = vec![Q::zero(); n];
        for v in &self.generators {
            for j in 0..n {
                if v[j].is_negative() {
                    lo[j] += &v[j];
                } else {
                    hi[j] += &v[j];
                }
            }
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for k in 0..self.lattice.index() {
            let shift: Vec<Q> = self
                .lattice
                .extra()
                .iter()
                .map(|e| frac(&(e * qi(k as i64))))
                .collect();
            let ranges: Vec<(BigInt, BigInt)> = (0..n)
                .map(|j| (ceil(&(&lo[j] - &shift[j])), floor(&(&hi[j] - &shift[j]))))
                .collect();
            for z in IntegerBox::new(&ranges) {
                let w: Vec<Q> = z
                    .iter()
                    .zip(&shift)
                    .map(|(zi, s)| Q::from_integer(zi.clone()) + s)
                    .collect();
                if w.iter().all(Zero::is_zero) || seen.contains(&w) {
                    continue;
                }
                let t = self.cone_coordinates(&w).expect("dimension checked");
                if t.iter().all(|x| !x.is_negative() && x < &Q::one()) {
                    seen.insert(w.clone());
                    out.push(LatticePoint {
                        level: self.level(&w),
                        coordinates: w,
                        cone_coordinates: t,
                    });
                }
            }
        }
        out.sort_by(point_order);
        out
    }

    /// Number of lattice points in the half-open fundamental parallelepiped
    /// (the index of the sublattice spanned by the generators).
    pub fn multiplicity(&self) -> usize {
        self.representatives.len() + 1
    }

    /// All lattice points with `t in [0, K]^n`, sorted by level then
    /// coordinates.
    pub fn box_points(&self, k: u64) -> Vec<LatticePoint> {
        let n = self.rank();
        let kq = qi(k as i64);
        let zero = LatticePoint {
            coordinates: vec![Q::zero(); n],
            level: Q::zero(),
            cone_coordinates: vec![Q::zero(); n],
        };
        let ranges = vec![(BigInt::zero(), BigInt::from(k)); n];
        let mut out = Vec::new();
        for rep in std::iter::once(&zero).chain(&self.representatives) {
            for c in IntegerBox::new(&ranges) {
                let t: Vec<Q> = rep
                    .cone_coordinates
                    .iter()
                    .zip(&c)
                    .map(|(x, ci)| x + Q::from_integer(ci.clone()))
                    .collect();
                if t.iter().all(|x| x <= &kq) {
                    out.push(self.from_cone_coordinates(t));
                }
            }
        }
        out.sort_by(point_order);
        out
    }

    /// The face spanned by the generators in `mask` is singular iff a
    /// nonzero fundamental representative is supported inside it.
    pub fn is_singular_face(&self, mask: u32) -> bool {
        self.representatives
            .iter()
            .any(|r| r.support() & !mask == 0)
    }

    /// Membership in `S_sigma`.
    pub fn in_s(&self, w: &LatticePoint) -> bool {
        self.in_s_cone(&w.cone_coordinates)
    }

    fn in_s_cone(&self, t: &[Q]) -> bool {
        let s = support_mask(t);
        s != 0 && t.iter().all(|x| !x.is_negative()) && self.is_singular_face(s)
    }

    /// `Q`-Gorenstein terminality: the only lattice points of level at most
    /// one are the origin and the generators.
    pub fn is_terminal(&self) -> TerminalCheck {
        let witness = self
            .box_points(1)
            .into_iter()
            .filter(|p| p.level <= Q::one())
            .find(|p| {
                let ones = p.cone_coordinates.iter().filter(|x| x.is_one()).count();
                let zeros = p.cone_coordinates.iter().filter(|x| x.is_zero()).count();
                !(zeros == p.cone_coordinates.len()
                    || (ones == 1 && zeros + 1 == p.cone_coordinates.len()))
            });
        TerminalCheck {
            terminal: witness.is_none(),
            witness,
        }
    }

    /// Discrepancy `<m_tau, w> - 1` of the toric divisor attached to a
    /// primitive point in the interior of the cone.
    pub fn discrepancy(&self, w: &[Q]) -> Result<Q, LatticeError> {
        let p = self.point(w)?;
        if !p.cone_coordinates.iter().all(Signed::is_positive) {
            return Err(LatticeError::NotInterior(QVec(w).to_string()));
        }
        if !self.lattice.is_primitive(w)? {
            return Err(LatticeError::NotPrimitive(QVec(w).to_string()));
        }
        Ok(p.level - Q::one())
    }

    /// Points of `S_sigma` with level at most `bound`. Since every cone
    /// coordinate is bounded by the level, the box `[0, ceil(bound)]^n`
    /// contains them all.
    pub fn enumerate_s(&self, bound: &Q) -> Result<Vec<LatticePoint>, LatticeError> {
        if !bound.is_positive() {
            return Err(LatticeError::InvalidBound);
        }
        let k = ceil(bound).to_u64().ok_or(LatticeError::InvalidBound)?;
        Ok(self
            .box_points(k)
            .into_iter()
            .filter(|p| &p.level <= bound && self.in_s(p))
            .collect())
    }

    /// No other `u` in `S_sigma` with `w - u` in the cone. Any such `u` has
    /// `t(u) <= t(w)` componentwise, so only the lattice points of that
    /// sub-box are inspected.
    pub fn is_minimal(&self, w: &[Q]) -> Result<bool, LatticeError> {
        let p = self.point(w)?;
        if !self.in_s(&p) {
            return Err(LatticeError::NotInS(QVec(w).to_string()));
        }
        Ok(!self.s_point_below(&p.cone_coordinates))
    }

    /// Some `S_sigma` point other than `t` itself lies in `t - sigma`.
    fn s_point_below(&self, t: &[Q]) -> bool {
        let origin = vec![Q::zero(); t.len()];
        let reps = std::iter::once(&origin).chain(self.representatives.iter().map(|r| &r.cone_coordinates));
        for rep in reps {
            let ranges: Vec<(BigInt, BigInt)> = t
                .iter()
                .zip(rep)
                .map(|(ti, ri)| (BigInt::zero(), floor(&(ti - ri))))
                .collect();
            for c in IntegerBox::new(&ranges) {
                let u: Vec<Q> = rep
                    .iter()
                    .zip(&c)
                    .map(|(ri, ci)| ri + Q::from_integer(ci.clone()))
                    .collect();
                if u.as_slice() != t && self.in_s_cone(&u) {
                    return true;
                }
            }
        }
        false
    }

    /// Minimal elements of `S_sigma` of level at most `search_bound`,
    /// enumerated in the box `[0, K]^n` and followed by a completeness check:
    /// every `S_sigma` point of the box up to level `search_bound + 1` must
    /// be dominated by a reported element (or by a minimal element beyond the
    /// search bound). `K` grows until the check passes.
    pub fn nash_valuations(
        &self,
        search_bound: &Q,
        box_bound: u64,
    ) -> Result<NashValuations, LatticeError> {
        if !search_bound.is_positive() {
            return Err(LatticeError::InvalidBound);
        }
        let terminal = self.is_terminal().terminal;
        let mut k = box_bound.max(1);
        loop {
            let pts: Vec<LatticePoint> = self
                .box_points(k)
                .into_iter()
                .filter(|p| self.in_s(p))
                .collect();
            let minimal: Vec<&LatticePoint> = pts
                .iter()
                .filter(|w| {
                    !pts.iter()
                        .any(|u| u.coordinates != w.coordinates && dominated_by(w, u))
                })
                .collect();
            let check_level = search_bound + Q::one();
            let complete = pts.iter().filter(|p| p.level <= check_level).all(|p| {
                minimal
                    .iter()
                    .any(|mn| dominated_by(p, mn) || mn.coordinates == p.coordinates)
            });
            if complete || k >= MAX_BOX_BOUND {
                let valuations = minimal
                    .into_iter()
                    .filter(|p| &p.level <= search_bound)
                    .map(|p| NashValuation {
                        discrepancy: &p.level - Q::one(),
                        point: p.clone(),
                    })
                    .collect();
                return Ok(NashValuations {
                    valuations,
                    terminal,
                    complete,
                    box_bound: k,
                    search_bound: search_bound.clone(),
                });
            }
            k += 1;
        }
    }

    /// Primitive points of `S_sigma` with level at most two (discrepancy at
    /// most one). Each is asserted minimal before being returned.
    pub fn low_discrepancy_divisors(&self) -> Result<Vec<LatticePoint>, LatticeError> {
        let check = self.is_terminal();
        if let Some(w) = check.witness {
            return Err(LatticeError::NotTerminal(w.to_string()));
        }
        let mut out = Vec::new();
        for p in self.enumerate_s(&qi(2))? {
            if self.lattice.is_primitive(&p.coordinates)? {
                assert!(
                    self.is_minimal(&p.coordinates)?,
                    "low-discrepancy point {p} is not minimal"
                );
                out.push(p);
            }
        }
        Ok(out)
    }
}

/// `u <= w`: `t(w) - t(u)` is non-negative.
fn dominated_by(w: &LatticePoint, u: &LatticePoint) -> bool {
    w.cone_coordinates
        .iter()
        .zip(&u.cone_coordinates)
        .all(|(a, b)| a >= b)
}

/// Cartesian product of inclusive integer ranges.
struct IntegerBox {
    ranges: Vec<(BigInt, BigInt)>,
    current: Option<Vec<BigInt>>,
}

impl IntegerBox {
    fn new(ranges: &[(BigInt, BigInt)]) -> Self {
        let current = if ranges.iter().all(|(lo, hi)| lo <= hi) {
            Some(ranges.iter().map(|(lo, _)| lo.clone()).collect())
        } else {
            None
        };
        IntegerBox {
            ranges: ranges.to_vec(),
            current,
        }
    }
}

impl Iterator for IntegerBox {
    type Item = Vec<BigInt>;

    fn next(&mut self) -> Option<Vec<BigInt>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("present");
        let mut i = 0;
        loop {
            if i == cur.len() {
                self.current = None;
                break;
            }
            if cur[i] < self.ranges[i].1 {
                cur[i] += 1;
                break;
            }
            cur[i] = self.ranges[i].0.clone();
            i += 1;
        }
        Some(out)
    }
}

/// Solves `A x = b` for square `A` (rows given); `None` if singular.
pub(crate) fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let p = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=n {
                    let d = &f * &m[col][c];
                    m[r][c] -= d;
                }
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}

/// Inverse of a square matrix given by rows; `None` if singular.
pub(crate) fn invert(a: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = a.len();
    let cols: Option<Vec<Vec<Q>>> = (0..n)
        .map(|j| {
            let e: Vec<Q> = (0..n)
                .map(|i| if i == j { Q::one() } else { Q::zero() })
                .collect();
            solve(a, &e)
        })
        .collect();
    let cols = cols?;
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

/// Least common denominator of a point's coordinates (used for tie-breaking
/// and printing scaled integer coordinates).
pub fn scaled_coordinates(p: &[Q]) -> (BigInt, Vec<BigInt>) {
    let d = common_denominator(p);
    let dq = Q::from_integer(d.clone());
    (d, p.iter().map(|x| (x * &dq).to_integer()).collect())
}
