//! Exact two-phase simplex over rationals.
//!
//! The solver accepts general problems (equality/inequality rows, free
//! or non-negative variables), converts them to equality form with
//! non-negative variables, and pivots with Bland's least-index rule so
//! termination is guaranteed. All arithmetic is rational, so `Optimal`
//! really means optimal: before returning, the engine re-checks primal
//! feasibility and that every reduced cost is non-negative, exactly.
//!
//! The tableau is dense. That is deliberate; the certification
//! workloads are desk-scale (tens of columns), and a dense exact
//! tableau is the easiest thing to trust.

use crate::linalg::{dot, Matrix, Vector};
use crate::rational::Rational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintSense {
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarBound {
    NonNegative,
    Free,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error("objective has {got} entries but the constraint matrix has {expected} columns")]
    ObjectiveLength { expected: usize, got: usize },
    #[error("{what} has {got} entries but the constraint matrix has {expected} rows")]
    RowCount {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("bounds list has {got} entries, expected {expected}")]
    BoundCount { expected: usize, got: usize },
    #[error("coordinate {index} out of range for {len} variables")]
    CoordinateOutOfRange { index: usize, len: usize },
    #[error("the pinned objective value is not attained by any feasible point")]
    EmptyOptimalFace,
}

/// `minimize objective . z` subject to `constraints z (sense) rhs` and
/// the per-variable bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: Vector,
    pub constraints: Matrix,
    pub rhs: Vector,
    pub senses: Vec<ConstraintSense>,
    pub bounds: Vec<VarBound>,
}

impl LpProblem {
    pub fn new(
        objective: Vector,
        constraints: Matrix,
        rhs: Vector,
        senses: Vec<ConstraintSense>,
        bounds: Vec<VarBound>,
    ) -> Result<Self, LpError> {
        if objective.len() != constraints.cols() {
            return Err(LpError::ObjectiveLength {
                expected: constraints.cols(),
                got: objective.len(),
            });
        }
        if rhs.len() != constraints.rows() {
            return Err(LpError::RowCount {
                what: "rhs",
                expected: constraints.rows(),
                got: rhs.len(),
            });
        }
        if senses.len() != constraints.rows() {
            return Err(LpError::RowCount {
                what: "senses",
                expected: constraints.rows(),
                got: senses.len(),
            });
        }
        if bounds.len() != constraints.cols() {
            return Err(LpError::BoundCount {
                expected: constraints.cols(),
                got: bounds.len(),
            });
        }
        Ok(LpProblem {
            objective,
            constraints,
            rhs,
            senses,
            bounds,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn is_standard(&self) -> bool {
        self.senses.iter().all(|s| *s == ConstraintSense::Eq)
            && self.bounds.iter().all(|b| *b == VarBound::NonNegative)
    }
}

/// Exact check that `z` satisfies every constraint and bound of `p`.
pub fn point_satisfies(p: &LpProblem, z: &[Rational]) -> bool {
    if z.len() != p.num_vars() {
        return false;
    }
    for (b, v) in p.bounds.iter().zip(z) {
        if *b == VarBound::NonNegative && v.is_negative() {
            return false;
        }
    }
    for i in 0..p.constraints.rows() {
        let lhs = dot(p.constraints.row(i), z);
        let ok = match p.senses[i] {
            ConstraintSense::Eq => lhs == p.rhs[i],
            ConstraintSense::Le => lhs <= p.rhs[i],
            ConstraintSense::Ge => lhs >= p.rhs[i],
        };
        if !ok {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpSolution {
    pub point: Vector,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

/// How an original variable appears in the standard form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarMapping {
    Kept(usize),
    Split { plus: usize, minus: usize },
}

/// Recovers original-variable values from standard-form points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariableMap {
    entries: Vec<VarMapping>,
}

impl VariableMap {
    pub fn entries(&self) -> &[VarMapping] {
        &self.entries
    }

    pub fn recover(&self, standard_point: &[Rational]) -> Vector {
        self.entries
            .iter()
            .map(|m| match *m {
                VarMapping::Kept(j) => standard_point[j].clone(),
                VarMapping::Split { plus, minus } => &standard_point[plus] - &standard_point[minus],
            })
            .collect()
    }
}

/// Rewrites `p` with only equality rows and non-negative variables.
/// Free variables are split as `u = u+ - u-`; `<=` rows gain a slack
/// and `>=` rows a surplus column. Optimal values coincide, and the
/// returned map sends standard-form points back to original variables.
pub fn to_standard_form(p: &LpProblem) -> (LpProblem, VariableMap) {
    if p.is_standard() {
        let map = VariableMap {
            entries: (0..p.num_vars()).map(VarMapping::Kept).collect(),
        };
        return (p.clone(), map);
    }
    let mut entries = Vec::with_capacity(p.num_vars());
    let mut next = 0usize;
    for b in &p.bounds {
        match b {
            VarBound::NonNegative => {
                entries.push(VarMapping::Kept(next));
                next += 1;
            }
            VarBound::Free => {
                entries.push(VarMapping::Split {
                    plus: next,
                    minus: next + 1,
                });
                next += 2;
            }
        }
    }
    let n_slacks = p
        .senses
        .iter()
        .filter(|s| **s != ConstraintSense::Eq)
        .count();
    let total = next + n_slacks;
    let mut objective = vec![Rational::zero(); total];
    for (j, mapping) in entries.iter().enumerate() {
        match *mapping {
            VarMapping::Kept(col) => objective[col] = p.objective[j].clone(),
            VarMapping::Split { plus, minus } => {
                objective[plus] = p.objective[j].clone();
                objective[minus] = -p.objective[j].clone();
            }
        }
    }
    let mut constraints = Matrix::zeros(p.constraints.rows(), total);
    let mut slack = next;
    for i in 0..p.constraints.rows() {
        for (j, mapping) in entries.iter().enumerate() {
            let coeff = p.constraints.get(i, j);
            if coeff.is_zero() {
                continue;
            }
            match *mapping {
                VarMapping::Kept(col) => constraints.set(i, col, coeff.clone()),
                VarMapping::Split { plus, minus } => {
                    constraints.set(i, plus, coeff.clone());
                    constraints.set(i, minus, -coeff.clone());
                }
            }
        }
        match p.senses[i] {
            ConstraintSense::Eq => {}
            ConstraintSense::Le => {
                constraints.set(i, slack, Rational::one());
                slack += 1;
            }
            ConstraintSense::Ge => {
                constraints.set(i, slack, -Rational::one());
                slack += 1;
            }
        }
    }
    let std = LpProblem {
        objective,
        rhs: p.rhs.clone(),
        senses: vec![ConstraintSense::Eq; p.constraints.rows()],
        bounds: vec![VarBound::NonNegative; total],
        constraints,
    };
    (std, VariableMap { entries })
}

/// Pivot accounting for one solve. Each phase visits distinct bases
/// under Bland's rule, so its pivot count is bounded by
/// `C(total columns, rows)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveStats {
    pub phase1_pivots: u64,
    pub phase2_pivots: u64,
    /// `C(total columns, rows)` of the phase-1 tableau, saturating.
    pub pivot_bound: u128,
    /// Reduced costs over the standard-form columns after phase 2;
    /// present exactly when the outcome is `Optimal`, all entries >= 0.
    pub reduced_costs: Option<Vector>,
    pub standard_rows: usize,
    pub standard_cols: usize,
}

fn binomial_saturating(n: u64, k: u64) -> u128 {
    let k = k.min(n.saturating_sub(k));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

struct Tableau {
    rows: usize,
    cols: usize,
    n_struct: usize,
    body: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    pivot_bound: u128,
}

enum Phase {
    Done,
    Unbounded,
}

impl Tableau {
    fn new(std: &LpProblem) -> Tableau {
        let rows = std.constraints.rows();
        let n_struct = std.num_vars();
        let cols = n_struct + rows;
        let mut body = Vec::with_capacity(rows);
        let mut rhs = Vec::with_capacity(rows);
        for i in 0..rows {
            let mut row: Vec<Rational> = std.constraints.row(i).to_vec();
            let mut b = std.rhs[i].clone();
            if b.is_negative() {
                for v in &mut row {
                    *v = -v.clone();
                }
                b = -b;
            }
            row.extend((0..rows).map(|j| {
                if j == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            body.push(row);
            rhs.push(b);
        }
        Tableau {
            rows,
            cols,
            n_struct,
            body,
            rhs,
            basis: (n_struct..cols).collect(),
            pivot_bound: binomial_saturating(cols as u64, rows as u64),
        }
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut r = cost[j].clone();
        for i in 0..self.rows {
            let cb = &cost[self.basis[i]];
            if !cb.is_zero() && !self.body[i][j].is_zero() {
                r -= cb * &self.body[i][j];
            }
        }
        r
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.body[row][col].clone();
        for v in &mut self.body[row] {
            *v = &*v / &inv;
        }
        self.rhs[row] = &self.rhs[row] / &inv;
        for i in 0..self.rows {
            if i == row || self.body[i][col].is_zero() {
                continue;
            }
            let factor = self.body[i][col].clone();
            for j in 0..self.cols {
                if !self.body[row][j].is_zero() {
                    let v = &self.body[i][j] - &factor * &self.body[row][j];
                    self.body[i][j] = v;
                }
            }
            let v = &self.rhs[i] - &factor * &self.rhs[row];
            self.rhs[i] = v;
        }
        self.basis[row] = col;
    }

    /// Bland's rule: entering column is the least index with a negative
    /// reduced cost; the leaving row is, among the minimum-ratio rows,
    /// the one whose basic variable has the least index.
    fn run(&mut self, cost: &[Rational], active_cols: usize, pivots: &mut u64) -> Phase {
        loop {
            let entering = (0..active_cols).find(|&j| {
                !self.basis.contains(&j) && self.reduced_cost(cost, j).is_negative()
            });
            let Some(col) = entering else {
                return Phase::Done;
            };
            let mut best: Option<(Rational, usize)> = None;
            for i in 0..self.rows {
                if !self.body[i][col].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.body[i][col];
                best = match best {
                    None => Some((ratio, i)),
                    Some((r, bi)) => {
                        if ratio < r || (ratio == r && self.basis[i] < self.basis[bi]) {
                            Some((ratio, i))
                        } else {
                            Some((r, bi))
                        }
                    }
                };
            }
            let Some((_, row)) = best else {
                return Phase::Unbounded;
            };
            self.pivot(row, col);
            *pivots += 1;
            assert!(
                u128::from(*pivots) <= self.pivot_bound,
                "simplex exceeded the finite-basis pivot bound"
            );
        }
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        let mut v = Rational::zero();
        for i in 0..self.rows {
            let cb = &cost[self.basis[i]];
            if !cb.is_zero() {
                v += cb * &self.rhs[i];
            }
        }
        v
    }

    /// After a zero-value phase 1, replace basic artificials by
    /// structural columns where possible and drop redundant rows.
    fn drive_out_artificials(&mut self) {
        let mut i = 0;
        while i < self.rows {
            if self.basis[i] < self.n_struct {
                i += 1;
                continue;
            }
            debug_assert!(self.rhs[i].is_zero());
            match (0..self.n_struct).find(|&j| !self.body[i][j].is_zero()) {
                Some(j) => {
                    self.pivot(i, j);
                    i += 1;
                }
                None => {
                    // 0 = 0 row; remove it
                    self.body.remove(i);
                    self.rhs.remove(i);
                    self.basis.remove(i);
                    self.rows -= 1;
                }
            }
        }
    }

    fn solution(&self) -> Vector {
        let mut x = vec![Rational::zero(); self.n_struct];
        for i in 0..self.rows {
            if self.basis[i] < self.n_struct {
                x[self.basis[i]] = self.rhs[i].clone();
            }
        }
        x
    }
}

/// Solves `p` exactly, returning pivot statistics alongside the outcome.
pub fn simplex_solve_with_stats(p: &LpProblem) -> (LpOutcome, SolveStats) {
    let (std, map) = to_standard_form(p);
    let mut tableau = Tableau::new(&std);
    let mut stats = SolveStats {
        phase1_pivots: 0,
        phase2_pivots: 0,
        pivot_bound: tableau.pivot_bound,
        reduced_costs: None,
        standard_rows: std.constraints.rows(),
        standard_cols: std.num_vars(),
    };

    let mut phase1_cost = vec![Rational::zero(); tableau.cols];
    for c in &mut phase1_cost[tableau.n_struct..] {
        *c = Rational::one();
    }
    match tableau.run(&phase1_cost, tableau.cols, &mut stats.phase1_pivots) {
        Phase::Done => {}
        Phase::Unbounded => unreachable!("phase 1 objective is bounded below by zero"),
    }
    if tableau.objective_value(&phase1_cost).is_positive() {
        return (LpOutcome::Infeasible, stats);
    }
    tableau.drive_out_artificials();

    let mut phase2_cost = std.objective.clone();
    phase2_cost.resize(tableau.cols, Rational::zero());
    if let Phase::Unbounded =
        tableau.run(&phase2_cost, tableau.n_struct, &mut stats.phase2_pivots)
    {
        return (LpOutcome::Unbounded, stats);
    }

    let std_point = tableau.solution();
    let reduced: Vector = (0..tableau.n_struct)
        .map(|j| tableau.reduced_cost(&phase2_cost, j))
        .collect();
    // exact optimality certificate: primal feasible + no negative reduced cost
    assert!(
        point_satisfies(&std, &std_point),
        "simplex returned an infeasible point"
    );
    assert!(
        reduced.iter().all(|r| !r.is_negative()),
        "simplex stopped with a negative reduced cost"
    );
    stats.reduced_costs = Some(reduced);

    let point = map.recover(&std_point);
    let value = dot(&p.objective, &point);
    debug_assert_eq!(value, tableau.objective_value(&phase2_cost));
    (LpOutcome::Optimal(LpSolution { point, value }), stats)
}

/// Solves `p` exactly.
pub fn simplex_solve(p: &LpProblem) -> LpOutcome {
    simplex_solve_with_stats(p).0
}

/// One side of a coordinate's range over the optimal face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FaceBound {
    Finite(Rational),
    Unbounded,
}

/// Exact min and max of coordinate `coord` over the optimal face
/// `{z feasible : objective . z = optimal_value}`.
///
/// This is the independent uniqueness probe: an optimum is unique if
/// and only if every coordinate has `min == max` over the face.
pub fn optimal_face_range(
    p: &LpProblem,
    coord: usize,
    optimal_value: &Rational,
) -> Result<(FaceBound, FaceBound), LpError> {
    if coord >= p.num_vars() {
        return Err(LpError::CoordinateOutOfRange {
            index: coord,
            len: p.num_vars(),
        });
    }
    let mut constraints_rows: Vec<Vector> = (0..p.constraints.rows())
        .map(|i| p.constraints.row(i).to_vec())
        .collect();
    constraints_rows.push(p.objective.clone());
    let constraints = Matrix::from_rows(constraints_rows).expect("rows share the problem width");
    let mut rhs = p.rhs.clone();
    rhs.push(optimal_value.clone());
    let mut senses = p.senses.clone();
    senses.push(ConstraintSense::Eq);

    let run = |direction: Rational| -> Result<FaceBound, LpError> {
        let mut objective = vec![Rational::zero(); p.num_vars()];
        objective[coord] = direction.clone();
        let face = LpProblem {
            objective,
            constraints: constraints.clone(),
            rhs: rhs.clone(),
            senses: senses.clone(),
            bounds: p.bounds.clone(),
        };
        match simplex_solve(&face) {
            LpOutcome::Optimal(sol) => Ok(FaceBound::Finite(sol.value / direction)),
            LpOutcome::Unbounded => Ok(FaceBound::Unbounded),
            LpOutcome::Infeasible => Err(LpError::EmptyOptimalFace),
        }
    };
    let min = run(Rational::one())?;
    let max = run(-Rational::one())?;
    Ok((min, max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, rat};

    fn nn(n: usize) -> Vec<VarBound> {
        vec![VarBound::NonNegative; n]
    }

    #[test]
    fn trivial_degenerate_problem_is_optimal() {
        // min 0 subject to 0 z = 0, z >= 0
        let p = LpProblem::new(
            vec![rat(0)],
            Matrix::zeros(1, 1),
            vec![rat(0)],
            vec![ConstraintSense::Eq],
            nn(1),
        )
        .unwrap();
        let got = simplex_solve(&p);
        let sol = got.optimal().expect("optimal");
        assert_eq!(sol.value, rat(0));
    }

    #[test]
    fn unconstrained_negative_cost_is_unbounded() {
        // min -z with only z >= 0
        let p = LpProblem::new(
            vec![rat(-1)],
            Matrix::zeros(0, 1),
            vec![],
            vec![],
            nn(1),
        )
        .unwrap();
        assert_eq!(simplex_solve(&p), LpOutcome::Unbounded);
    }

    #[test]
    fn infeasible_system_is_detected() {
        // z1 + z2 = -1 with z >= 0
        let p = LpProblem::new(
            vec![rat(0), rat(0)],
            Matrix::from_i64(&[&[1, 1]]),
            vec![rat(-1)],
            vec![ConstraintSense::Eq],
            nn(2),
        )
        .unwrap();
        assert_eq!(simplex_solve(&p), LpOutcome::Infeasible);
    }

    #[test]
    fn mixed_senses_and_free_variables() {
        // min x + y  s.t.  x - y >= 1, x + y <= 5, x free, y >= 0
        let p = LpProblem::new(
            vec![rat(1), rat(1)],
            Matrix::from_i64(&[&[1, -1], &[1, 1]]),
            vec![rat(1), rat(5)],
            vec![ConstraintSense::Ge, ConstraintSense::Le],
            vec![VarBound::Free, VarBound::NonNegative],
        )
        .unwrap();
        let sol = simplex_solve(&p).optimal().cloned().expect("optimal");
        assert_eq!(sol.point, vec![rat(1), rat(0)]);
        assert_eq!(sol.value, rat(1));
        assert!(point_satisfies(&p, &sol.point));

        // dropping the >= row lets the free variable run off
        let p2 = LpProblem::new(
            vec![rat(1), rat(1)],
            Matrix::from_i64(&[&[1, 1]]),
            vec![rat(5)],
            vec![ConstraintSense::Le],
            vec![VarBound::Free, VarBound::NonNegative],
        )
        .unwrap();
        assert_eq!(simplex_solve(&p2), LpOutcome::Unbounded);
    }

    #[test]
    fn standard_form_of_standard_problem_is_identity() {
        let p = LpProblem::new(
            vec![rat(1), rat(2)],
            Matrix::from_i64(&[&[1, 1]]),
            vec![rat(1)],
            vec![ConstraintSense::Eq],
            nn(2),
        )
        .unwrap();
        let (std, map) = to_standard_form(&p);
        assert_eq!(std, p);
        assert_eq!(
            map.entries(),
            &[VarMapping::Kept(0), VarMapping::Kept(1)]
        );
    }

    #[test]
    fn split_variables_round_trip() {
        // one free variable u with u = 3 - 2 = 1 in standard form
        let p = LpProblem::new(
            vec![rat(1)],
            Matrix::from_i64(&[&[1]]),
            vec![rat(1)],
            vec![ConstraintSense::Eq],
            vec![VarBound::Free],
        )
        .unwrap();
        let (std, map) = to_standard_form(&p);
        assert!(std.is_standard());
        assert_eq!(std.num_vars(), 2);
        assert_eq!(map.recover(&[rat(3), rat(2)]), vec![rat(1)]);
        assert_eq!(map.recover(&[rat(0), frac(5, 2)]), vec![frac(-5, 2)]);
    }

    #[test]
    fn face_range_of_unique_optimum_is_a_point() {
        // min z1 + z2 s.t. z1 + 2 z2 = 2, z >= 0 has unique optimum (0,1)
        let p = LpProblem::new(
            vec![rat(1), rat(1)],
            Matrix::from_i64(&[&[1, 2]]),
            vec![rat(2)],
            vec![ConstraintSense::Eq],
            nn(2),
        )
        .unwrap();
        let sol = simplex_solve(&p).optimal().cloned().unwrap();
        assert_eq!(sol.value, rat(1));
        for coord in 0..2 {
            let (min, max) = optimal_face_range(&p, coord, &sol.value).unwrap();
            assert_eq!(min, max);
            assert_eq!(min, FaceBound::Finite(sol.point[coord].clone()));
        }
    }

    #[test]
    fn face_range_spans_a_whole_face() {
        // min 0 over {z1 + z2 = 1, z >= 0}: coordinate z1 ranges over [0, 1]
        let p = LpProblem::new(
            vec![rat(0), rat(0)],
            Matrix::from_i64(&[&[1, 1]]),
            vec![rat(1)],
            vec![ConstraintSense::Eq],
            nn(2),
        )
        .unwrap();
        let (min, max) = optimal_face_range(&p, 0, &rat(0)).unwrap();
        assert_eq!(min, FaceBound::Finite(rat(0)));
        assert_eq!(max, FaceBound::Finite(rat(1)));
    }

    #[test]
    fn face_range_rejects_bad_coordinate() {
        let p = LpProblem::new(
            vec![rat(0)],
            Matrix::zeros(1, 1),
            vec![rat(0)],
            vec![ConstraintSense::Eq],
            nn(1),
        )
        .unwrap();
        assert!(matches!(
            optimal_face_range(&p, 3, &rat(0)),
            Err(LpError::CoordinateOutOfRange { index: 3, len: 1 })
        ));
    }

    #[test]
    fn outcomes_are_deterministic() {
        let p = LpProblem::new(
            vec![rat(3), rat(-1), rat(2), rat(0)],
            Matrix::from_i64(&[&[1, 1, 1, 1], &[2, -1, 0, 3]]),
            vec![rat(4), rat(2)],
            vec![ConstraintSense::Eq, ConstraintSense::Le],
            nn(4),
        )
        .unwrap();
        let a = simplex_solve(&p);
        let b = simplex_solve(&p);
        assert_eq!(a, b);
        assert!(a.optimal().is_some());
    }

    #[test]
    fn stats_expose_certificate_and_bland_bound() {
        let p = LpProblem::new(
            vec![rat(1), rat(2), rat(3)],
            Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]]),
            vec![rat(2), rat(3)],
            vec![ConstraintSense::Eq, ConstraintSense::Eq],
            nn(3),
        )
        .unwrap();
        let (outcome, stats) = simplex_solve_with_stats(&p);
        assert!(outcome.optimal().is_some());
        let reduced = stats.reduced_costs.expect("optimal outcomes carry reduced costs");
        assert!(reduced.iter().all(|r| !r.is_negative()));
        assert!(u128::from(stats.phase1_pivots) <= stats.pivot_bound);
        assert!(u128::from(stats.phase2_pivots) <= stats.pivot_bound);
    }

    #[test]
    fn binomial_saturates_instead_of_overflowing() {
        assert_eq!(binomial_saturating(6, 2), 15);
        assert_eq!(binomial_saturating(5, 0), 1);
        assert_eq!(binomial_saturating(200, 100), u128::MAX);
    }
}
