//! Singular points of a chart model on the exceptional divisor.
//!
//! Two sources are searched, both restricted to `E` (chart variable = 0):
//! Jacobian-singular points of the strict transform on the chart cover
//! `C^4`, and points of the strict transform fixed by a nontrivial subgroup
//! of the chart's cyclic quotient. The polynomial systems are solved by
//! substituting forced values (univariate polynomials in a single unknown,
//! split into exact rational roots) and carrying irrational solutions as
//! triangular relations. Systems outside this pattern are reported as
//! obstructions, never as empty.

use std::fmt;

use num_traits::{One, Zero};

use super::{effective_stabilizer, ChartModel};
use crate::num::{fmt_q, Q};
use crate::poly::{GroupAction, PolyError, SparsePoly, UniPoly, Var};

/// `poly(var, earlier relation variables) = 0`, monic in `var`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub var: Var,
    pub poly: SparsePoly,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.poly)
    }
}

/// Which system produced a solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BranchOrigin {
    /// `strict_phi` and all four partial derivatives vanish.
    Jacobian,
    /// `strict_phi` vanishes at a point with nontrivial stabilizer.
    Quotient,
}

impl fmt::Display for BranchOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchOrigin::Jacobian => "jacobian",
            BranchOrigin::Quotient => "quotient",
        })
    }
}

/// A rational point on `E` in chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub coordinates: [Q; 4],
    /// Effective stabilizer order in the chart's cyclic quotient.
    pub local_index: u64,
    pub origin: BranchOrigin,
}

/// Solutions that are not rational: some coordinates are fixed rationals,
/// the others satisfy a triangular chain of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicBranch {
    pub assigned: [Option<Q>; 4],
    pub relations: Vec<Relation>,
    /// Stabilizer order computed with every related coordinate nonzero.
    pub local_index: u64,
    pub origin: BranchOrigin,
}

impl AlgebraicBranch {
    /// True iff `p` vanishes at every point of the branch: after
    /// substituting the rational coordinates, `p` reduces to zero modulo the
    /// relations.
    pub fn vanishes(&self, p: &SparsePoly) -> Result<bool, PolyError> {
        Ok(self.residue(p)?.is_zero())
    }

    /// Normal form of `p` on the branch: rational coordinates substituted,
    /// then reduced modulo the relations.
    pub fn residue(&self, p: &SparsePoly) -> Result<SparsePoly, PolyError> {
        reduce(&substitute_assigned(p, &self.assigned)?, &self.relations)
    }

    /// The relation constraining `v`, if any.
    pub fn relation_for(&self, v: Var) -> Option<&Relation> {
        self.relations.iter().find(|r| r.var == v)
    }

    pub fn describe(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for v in Var::ALL {
            if let Some(x) = &self.assigned[v.index()] {
                parts.push(format!("{v} = {}", fmt_q(x)));
            }
        }
        for r in &self.relations {
            parts.push(r.to_string());
        }
        parts.join(", ")
    }
}

/// A system the solver cannot finish without general elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    RequiresElimination {
        origin: BranchOrigin,
        state: String,
        equations: Vec<String>,
    },
    /// Positive-dimensional solution set.
    NonIsolated {
        origin: BranchOrigin,
        state: String,
        free: Vec<Var>,
    },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::RequiresElimination {
                origin,
                state,
                equations,
            } => write!(
                f,
                "requires elimination ({origin}): at [{state}] remaining equations {}",
                equations.join("; ")
            ),
            Obstruction::NonIsolated {
                origin,
                state,
                free,
            } => {
                let fr: Vec<&str> = free.iter().map(|v| v.name()).collect();
                write!(
                    f,
                    "non-isolated solutions ({origin}): at [{state}] free variables {}",
                    fr.join(", ")
                )
            }
        }
    }
}

/// Singular points of one chart on the exceptional divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointReport {
    pub chart: usize,
    pub exceptional: Var,
    pub quotient_action: GroupAction,
    /// Rational Jacobian-singular points (each passes
    /// `verify_jacobian_point`).
    pub points: Vec<SingularPoint>,
    /// Rational points with nontrivial stabilizer where the cover is smooth
    /// (each passes `verify_quotient_point`).
    pub quotient_points: Vec<SingularPoint>,
    /// Non-rational solutions with their defining relations.
    pub algebraic: Vec<AlgebraicBranch>,
    pub obstructions: Vec<Obstruction>,
    pub notes: Vec<String>,
}

impl SingularPointReport {
    pub fn is_smooth(&self) -> bool {
        self.points.is_empty()
            && self.quotient_points.is_empty()
            && self.algebraic.is_empty()
            && self.obstructions.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.obstructions.is_empty()
    }
}

fn substitute_assigned(p: &SparsePoly, assigned: &[Option<Q>; 4]) -> Result<SparsePoly, PolyError> {
    let mut p = p.clone();
    for v in Var::ALL {
        if let Some(x) = &assigned[v.index()] {
            p = p.substitute_value(v, x)?;
        }
    }
    Ok(p)
}

fn reduce_one(p: &SparsePoly, r: &Relation) -> Result<SparsePoly, PolyError> {
    let d = r
        .poly
        .coefficients_in(r.var)?
        .keys()
        .next_back()
        .copied()
        .unwrap_or(0);
    let x = SparsePoly::var(r.var);
    let mut p = p.clone();
    loop {
        let coeffs = p.coefficients_in(r.var)?;
        let Some((&e, lc)) = coeffs.iter().next_back() else {
            break;
        };
        if e < d {
            break;
        }
        p = &p - &(&(lc * &x.pow((e - d) as u32)) * &r.poly);
    }
    Ok(p)
}

/// Reduces modulo a triangular chain (latest relation first).
fn reduce(p: &SparsePoly, rels: &[Relation]) -> Result<SparsePoly, PolyError> {
    let mut p = p.clone();
    for r in rels.iter().rev() {
        p = reduce_one(&p, r)?;
    }
    Ok(p)
}

#[derive(Clone, Debug)]
struct State {
    assigned: [Option<Q>; 4],
    relations: Vec<Relation>,
    /// `v = expr` with `v` absent from every equation and every other expr.
    eliminated: Vec<(Var, SparsePoly)>,
    polys: Vec<SparsePoly>,
}

impl State {
    fn new(assigned: [Option<Q>; 4], polys: Vec<SparsePoly>) -> Self {
        State {
            assigned,
            relations: vec![],
            eliminated: vec![],
            polys,
        }
    }

    fn describe(&self) -> String {
        AlgebraicBranch {
            assigned: self.assigned.clone(),
            relations: self.relations.clone(),
            local_index: 0,
            origin: BranchOrigin::Jacobian,
        }
        .describe()
    }

    fn is_related(&self, v: Var) -> bool {
        self.relations.iter().any(|r| r.var == v)
    }

    fn free_vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| {
                self.assigned[v.index()].is_none()
                    && !self.is_related(v)
                    && !self.eliminated.iter().any(|(w, _)| *w == v)
            })
            .collect()
    }

    /// Substitutes `v = expr` everywhere and records it.
    fn eliminate(&mut self, v: Var, expr: SparsePoly) -> Result<(), PolyError> {
        for p in &mut self.polys {
            *p = p.substitute_poly(v, &expr)?;
        }
        for (_, e) in &mut self.eliminated {
            *e = e.substitute_poly(v, &expr)?;
        }
        self.eliminated.push((v, expr));
        Ok(())
    }

    /// Resolves eliminated variables once everything else is determined: a
    /// constant value becomes an assignment, otherwise `v - expr` becomes a
    /// relation over the related variables.
    fn back_substitute(&mut self) -> Result<(), PolyError> {
        for (v, e) in std::mem::take(&mut self.eliminated) {
            let e = reduce(&substitute_assigned(&e, &self.assigned)?, &self.relations)?;
            if e.is_constant() {
                self.assigned[v.index()] = Some(e.constant_term());
            } else {
                self.relations.push(Relation {
                    var: v,
                    poly: &SparsePoly::var(v) - &e,
                });
            }
        }
        Ok(())
    }
}

/// A variable dividing `p` that can be split off: a free variable (the
/// caller branches on it vanishing), or a related variable whose univariate
/// relation excludes zero (it is a unit on the branch).
fn monomial_content(p: &SparsePoly, state: &State, free: &[Var]) -> (Vec<Var>, Vec<Var>) {
    let mut branching = Vec::new();
    let mut units = Vec::new();
    for v in Var::ALL {
        if !p.min_exponent(v).is_some_and(|e| e > Q::zero()) {
            continue;
        }
        if free.contains(&v) {
            branching.push(v);
        } else if let Some(r) = state.relations.iter().find(|r| r.var == v) {
            if r.poly.only_in(&[v]) && !r.poly.constant_term().is_zero() {
                units.push(v);
            }
        }
    }
    (branching, units)
}

#[derive(Default)]
struct Outcome {
    branches: Vec<(Option<[Q; 4]>, [Option<Q>; 4], Vec<Relation>)>,
    obstructions: Vec<Obstruction>,
}

fn solve(state: State, origin: BranchOrigin, out: &mut Outcome) -> Result<(), PolyError> {
    // Simplify: substitute, reduce, drop zeros, detect inconsistency.
    let mut polys: Vec<SparsePoly> = Vec::new();
    for p in &state.polys {
        let p = reduce(&substitute_assigned(p, &state.assigned)?, &state.relations)?;
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Ok(());
        }
        if !polys.contains(&p) {
            polys.push(p);
        }
    }
    let free = state.free_vars();
    let mut state = State { polys, ..state };

    // Equations only in related variables refine a univariate relation.
    if let Some(i) = state
        .polys
        .iter()
        .position(|p| p.variables().iter().all(|v| !free.contains(v)))
    {
        let p = state.polys[i].clone();
        let vars = p.variables();
        let target = (vars.len() == 1)
            .then(|| {
                state
                    .relations
                    .iter()
                    .position(|r| r.var == vars[0] && r.poly.only_in(&[vars[0]]))
            })
            .flatten();
        let Some(ri) = target else {
            out.obstructions.push(Obstruction::RequiresElimination {
                origin,
                state: state.describe(),
                equations: state.polys.iter().map(|p| p.to_string()).collect(),
            });
            return Ok(());
        };
        let v = vars[0];
        let rel = state.relations[ri]
            .poly
            .to_univariate(v)
            .expect("univariate relation");
        let g = rel.gcd(&p.to_univariate(v).expect("univariate equation"));
        if g.is_constant() {
            return Ok(());
        }
        state.relations[ri].poly = SparsePoly::from_univariate(&g, v);
        return solve(state, origin, out);
    }

    if state.polys.is_empty() {
        if free.is_empty() {
            state.back_substitute()?;
            let point = if state.relations.is_empty() {
                let coords = state.assigned.clone().map(|x| x.expect("assigned"));
                Some(coords)
            } else {
                None
            };
            out.branches.push((point, state.assigned, state.relations));
        } else {
            out.obstructions.push(Obstruction::NonIsolated {
                origin,
                state: state.describe(),
                free,
            });
        }
        return Ok(());
    }

    // Forced values: gcd of the univariate equations in a single unknown.
    let mut best: Option<(Var, UniPoly)> = None;
    for &v in &free {
        let unis: Vec<UniPoly> = state
            .polys
            .iter()
            .filter_map(|p| p.to_univariate(v))
            .collect();
        if unis.is_empty() {
            continue;
        }
        let g = unis
            .iter()
            .skip(1)
            .fold(unis[0].clone(), |acc, u| acc.gcd(u));
        if g.is_constant() {
            return Ok(());
        }
        if best.as_ref().is_none_or(|(_, b)| g.degree() < b.degree()) {
            best = Some((v, g));
        }
    }
    if let Some((v, g)) = best {
        let (roots, residual) = g.split_rational_roots();
        for r in roots {
            let mut next = state.clone();
            next.assigned[v.index()] = Some(r);
            solve(next, origin, out)?;
        }
        if residual.degree().unwrap_or(0) > 0 {
            let mut next = state.clone();
            next.relations.push(Relation {
                var: v,
                poly: SparsePoly::from_univariate(&residual, v),
            });
            solve(next, origin, out)?;
        }
        return Ok(());
    }

    // Linear elimination: an equation of degree one in a free variable with
    // constant coefficient determines it.
    for &v in &free {
        for p in &state.polys {
            let coeffs = p.coefficients_in(v)?;
            if coeffs.keys().next_back() != Some(&1) || !coeffs[&1].is_constant() {
                continue;
            }
            let c = coeffs[&1].constant_term();
            let rest = coeffs.get(&0).cloned().unwrap_or_default();
            let mut next = state.clone();
            next.eliminate(v, rest.scale(&(-Q::one() / c)))?;
            return solve(next, origin, out);
        }
    }

    // Monomial factors: branch on each free variable dividing an equation,
    // and drop related variables that cannot vanish.
    for (i, p) in state.polys.iter().enumerate() {
        let (branching, units) = monomial_content(p, &state, &free);
        if branching.is_empty() && units.is_empty() {
            continue;
        }
        for &v in &branching {
            let mut next = state.clone();
            next.assigned[v.index()] = Some(Q::zero());
            solve(next, origin, out)?;
        }
        let mut q = p.clone();
        for v in branching.iter().chain(&units) {
            q = q.factor_out(*v)?.1;
        }
        let mut next = state.clone();
        next.polys[i] = q;
        return solve(next, origin, out);
    }

    // A lone equation in one unknown over related variables becomes a
    // relation when its leading coefficient is a constant.
    for &v in &free {
        let involving: Vec<&SparsePoly> = state.polys.iter().filter(|p| p.involves(v)).collect();
        let only_v: Vec<&&SparsePoly> = involving
            .iter()
            .filter(|p| p.variables().iter().all(|u| *u == v || !free.contains(u)))
            .collect();
        if only_v.len() != 1 {
            continue;
        }
        let p = *only_v[0];
        let coeffs = p.coefficients_in(v)?;
        let (_, lc) = coeffs.iter().next_back().expect("involves v");
        if !lc.is_constant() {
            continue;
        }
        let monic = p.scale(&(Q::one() / lc.constant_term()));
        let mut next = state.clone();
        next.relations.push(Relation {
            var: v,
            poly: monic,
        });
        return solve(next, origin, out);
    }

    out.obstructions.push(Obstruction::RequiresElimination {
        origin,
        state: state.describe(),
        equations: state.polys.iter().map(|p| p.to_string()).collect(),
    });
    Ok(())
}

fn support_of(assigned: &[Option<Q>; 4]) -> [bool; 4] {
    assigned.clone().map(|x| x.is_none_or(|x| !x.is_zero()))
}

/// Singular points of `X-bar` on `E` within one chart.
pub fn singular_points_on_e(chart: &ChartModel) -> Result<SingularPointReport, PolyError> {
    let ex = chart.exceptional;
    let act = &chart.quotient_action;
    let f = &chart.strict_phi;
    let mut report = SingularPointReport {
        chart: chart.index,
        exceptional: ex,
        quotient_action: act.clone(),
        points: vec![],
        quotient_points: vec![],
        algebraic: vec![],
        obstructions: vec![],
        notes: vec![],
    };
    if chart.empty {
        report
            .notes
            .push("strict transform is a unit: chart is empty".into());
        return Ok(report);
    }
    if chart.misses_exceptional {
        report
            .notes
            .push("strict transform is a unit on E: E misses this chart".into());
        return Ok(report);
    }
    let mut on_e: [Option<Q>; 4] = Default::default();
    on_e[ex.index()] = Some(Q::zero());

    let mut jac = Outcome::default();
    let mut polys = vec![f.clone()];
    for v in Var::ALL {
        polys.push(f.partial_derivative(v)?);
    }
    solve(
        State::new(on_e.clone(), polys),
        BranchOrigin::Jacobian,
        &mut jac,
    )?;

    let mut quo = Outcome::default();
    let others: Vec<Var> = Var::ALL.into_iter().filter(|&v| v != ex).collect();
    for mask in 0u8..(1 << others.len()) {
        let mut support = [false; 4];
        let mut assigned = on_e.clone();
        for (j, &v) in others.iter().enumerate() {
            if mask & (1 << j) != 0 {
                support[v.index()] = true;
            } else {
                assigned[v.index()] = Some(Q::zero());
            }
        }
        if effective_stabilizer(act, support) <= 1 {
            continue;
        }
        solve(
            State::new(assigned, vec![f.clone()]),
            BranchOrigin::Quotient,
            &mut quo,
        )?;
    }

    for (origin, outcome) in [(BranchOrigin::Jacobian, jac), (BranchOrigin::Quotient, quo)] {
        for (point, assigned, relations) in outcome.branches {
            let local_index = effective_stabilizer(act, support_of(&assigned));
            match point {
                Some(coordinates) => {
                    let seen = report
                        .points
                        .iter()
                        .chain(&report.quotient_points)
                        .any(|p| p.coordinates == coordinates);
                    if seen {
                        continue;
                    }
                    let sp = SingularPoint {
                        coordinates,
                        local_index,
                        origin,
                    };
                    match origin {
                        BranchOrigin::Jacobian => report.points.push(sp),
                        BranchOrigin::Quotient => report.quotient_points.push(sp),
                    }
                }
                None => {
                    let seen = report
                        .algebraic
                        .iter()
                        .any(|b| b.assigned == assigned && b.relations == relations);
                    if !seen {
                        report.algebraic.push(AlgebraicBranch {
                            assigned,
                            relations,
                            local_index,
                            origin,
                        });
                    }
                }
            }
        }
        for o in outcome.obstructions {
            if !report.obstructions.contains(&o) {
                report.obstructions.push(o);
            }
        }
    }
    report
        .points
        .sort_by(|a, b| a.coordinates.cmp(&b.coordinates));
    report
        .quotient_points
        .sort_by(|a, b| a.coordinates.cmp(&b.coordinates));
    Ok(report)
}

/// `strict_phi` and its four partial derivatives vanish at `q`, and `q` lies
/// on `E`. Exact arithmetic.
pub fn verify_jacobian_point(chart: &ChartModel, q: &[Q; 4]) -> Result<bool, PolyError> {
    if !q[chart.exceptional.index()].is_zero() {
        return Ok(false);
    }
    let f = &chart.strict_phi;
    if !f.evaluate(q)?.is_zero() {
        return Ok(false);
    }
    for v in Var::ALL {
        if !f.partial_derivative(v)?.evaluate(q)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `q` lies on `E` and on the strict transform, and has a nontrivial
/// stabilizer in the chart's quotient.
pub fn verify_quotient_point(chart: &ChartModel, q: &[Q; 4]) -> Result<bool, PolyError> {
    if !q[chart.exceptional.index()].is_zero() || !chart.strict_phi.evaluate(q)?.is_zero() {
        return Ok(false);
    }
    let support = q.clone().map(|x| !x.is_zero());
    Ok(effective_stabilizer(&chart.quotient_action, support) > 1)
}
