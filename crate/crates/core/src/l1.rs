//! Basis pursuit and the l0 side: exact minimum-l1 solves, the
//! inspectable LP reformulations used by the uniqueness analysis, and
//! the brute-force sparsest-solution enumerator.

use crate::linalg::{
    columns_independent, rank, solve_linear, LinearSolveOutcome, Matrix, Vector,
};
use crate::lp::{
    simplex_solve, ConstraintSense, LpOutcome, LpProblem, VarBound,
};
use crate::rational::{l0_norm, l1_norm, Rational};
use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum L1Error {
    #[error("the system A x = b has no solution")]
    InconsistentSystem,
    #[error("x is not a solution of A x = b")]
    NotASolution,
    #[error("x has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// The pair `(A, b)` defining `A x = b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    pub a: Matrix,
    pub b: Vector,
}

impl LinearSystem {
    pub fn new(a: Matrix, b: Vector) -> Result<Self, L1Error> {
        if b.len() != a.rows() {
            return Err(L1Error::LengthMismatch {
                expected: a.rows(),
                got: b.len(),
            });
        }
        Ok(LinearSystem { a, b })
    }

    /// Exact consistency test via ranks.
    pub fn is_consistent(&self) -> bool {
        let aug = self
            .a
            .augment_column(&self.b)
            .expect("b length checked at construction");
        rank(&aug) == rank(&self.a)
    }

    /// Whether `x` solves the system exactly.
    pub fn is_solution(&self, x: &[Rational]) -> bool {
        self.a
            .mul_vector(x)
            .map(|ax| ax == self.b)
            .unwrap_or(false)
    }

    fn require_solution(&self, x: &[Rational]) -> Result<(), L1Error> {
        if x.len() != self.a.cols() {
            return Err(L1Error::LengthMismatch {
                expected: self.a.cols(),
                got: x.len(),
            });
        }
        if self.is_solution(x) {
            Ok(())
        } else {
            Err(L1Error::NotASolution)
        }
    }
}

/// The basis-pursuit LP: variables `(x+, x-)`, minimize `e.(x+ + x-)`
/// subject to `A (x+ - x-) = b`, both halves non-negative.
pub fn basis_pursuit_lp(sys: &LinearSystem) -> LpProblem {
    let (m, n) = (sys.a.rows(), sys.a.cols());
    let mut constraints = Matrix::zeros(m, 2 * n);
    for i in 0..m {
        for j in 0..n {
            let v = sys.a.get(i, j).clone();
            constraints.set(i, n + j, -v.clone());
            constraints.set(i, j, v);
        }
    }
    LpProblem::new(
        vec![Rational::one(); 2 * n],
        constraints,
        sys.b.clone(),
        vec![ConstraintSense::Eq; m],
        vec![VarBound::NonNegative; 2 * n],
    )
    .expect("basis pursuit dimensions are consistent by construction")
}

/// Recovers `x = x+ - x-` from a basis-pursuit LP point.
pub fn split_point_to_x(point: &[Rational]) -> Vector {
    let n = point.len() / 2;
    (0..n).map(|j| &point[j] - &point[n + j]).collect()
}

/// Exact minimum-l1-norm solve of `A x = b`.
///
/// Returns the optimal point and its l1 norm; the minimality is
/// certified by the simplex engine's reduced-cost check.
pub fn solve_min_l1(sys: &LinearSystem) -> Result<(Vector, Rational), L1Error> {
    if !sys.is_consistent() {
        return Err(L1Error::InconsistentSystem);
    }
    match simplex_solve(&basis_pursuit_lp(sys)) {
        LpOutcome::Optimal(sol) => {
            let x = split_point_to_x(&sol.point);
            debug_assert_eq!(l1_norm(&x), sol.value);
            debug_assert!(sys.is_solution(&x));
            Ok((x, sol.value))
        }
        // consistent systems always admit a feasible split point, and
        // the objective is bounded below by zero
        other => unreachable!("basis pursuit cannot be {other:?} on a consistent system"),
    }
}

/// The feasibility program whose unique solvability at `(0, |x|)`
/// characterizes `x` being the unique minimum-l1 solution: variables
/// `(u, t)`, zero objective, constraints `A u = 0`,
/// `sum t <= |x|_1` and `|u_i + x_i| <= t_i` componentwise.
pub fn build_lp1(sys: &LinearSystem, x: &[Rational]) -> Result<LpProblem, L1Error> {
    sys.require_solution(x)?;
    let (m, n) = (sys.a.rows(), sys.a.cols());
    let rows = m + 1 + 2 * n;
    let mut constraints = Matrix::zeros(rows, 2 * n);
    let mut rhs = vec![Rational::zero(); rows];
    let mut senses = vec![ConstraintSense::Eq; rows];
    for i in 0..m {
        for j in 0..n {
            constraints.set(i, j, sys.a.get(i, j).clone());
        }
    }
    for j in 0..n {
        constraints.set(m, n + j, Rational::one());
    }
    senses[m] = ConstraintSense::Le;
    rhs[m] = l1_norm(x);
    for i in 0..n {
        // u_i - t_i <= -x_i  and  -u_i - t_i <= x_i
        let r1 = m + 1 + 2 * i;
        let r2 = r1 + 1;
        constraints.set(r1, i, Rational::one());
        constraints.set(r1, n + i, -Rational::one());
        senses[r1] = ConstraintSense::Le;
        rhs[r1] = -x[i].clone();
        constraints.set(r2, i, -Rational::one());
        constraints.set(r2, n + i, -Rational::one());
        senses[r2] = ConstraintSense::Le;
        rhs[r2] = x[i].clone();
    }
    Ok(LpProblem::new(
        vec![Rational::zero(); 2 * n],
        constraints,
        rhs,
        senses,
        vec![VarBound::Free; 2 * n],
    )
    .expect("dimensions are consistent by construction"))
}

/// The all-non-negative rewrite of the feasibility program, with the
/// shifted variable `u' = M e - u` and slack blocks, exposed with its
/// known canonical solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lp3Construction {
    /// Shift bound `M = 2 |x|_1 + 1`.
    pub big_m: Rational,
    /// `(2n + m + 1) x (4n + 1)` block matrix over `(u', t, alpha, beta, r)`.
    pub constraints: Matrix,
    pub rhs: Vector,
    /// `(M e, |x|, |x| - x, |x| + x, 0)`; satisfies the constraints
    /// exactly and is componentwise non-negative.
    pub canonical_point: Vector,
}

pub fn build_lp3(sys: &LinearSystem, x: &[Rational]) -> Result<Lp3Construction, L1Error> {
    sys.require_solution(x)?;
    let (m, n) = (sys.a.rows(), sys.a.cols());
    let norm = l1_norm(x);
    let big_m = &norm + &norm + Rational::one();
    let rows = 2 * n + m + 1;
    let cols = 4 * n + 1;
    let mut constraints = Matrix::zeros(rows, cols);
    let mut rhs = vec![Rational::zero(); rows];
    let (u_off, t_off, alpha_off, beta_off, r_col) = (0, n, 2 * n, 3 * n, 4 * n);
    for i in 0..n {
        // -u'_i - t_i + alpha_i = -x_i - M
        constraints.set(i, u_off + i, -Rational::one());
        constraints.set(i, t_off + i, -Rational::one());
        constraints.set(i, alpha_off + i, Rational::one());
        rhs[i] = -&x[i] - &big_m;
        // u'_i - t_i + beta_i = x_i + M
        constraints.set(n + i, u_off + i, Rational::one());
        constraints.set(n + i, t_off + i, -Rational::one());
        constraints.set(n + i, beta_off + i, Rational::one());
        rhs[n + i] = &x[i] + &big_m;
    }
    for r in 0..m {
        // -A u' = -M (A e)
        let mut row_sum = Rational::zero();
        for j in 0..n {
            constraints.set(2 * n + r, u_off + j, -sys.a.get(r, j).clone());
            row_sum += sys.a.get(r, j);
        }
        rhs[2 * n + r] = -&big_m * row_sum;
    }
    for j in 0..n {
        constraints.set(2 * n + m, t_off + j, Rational::one());
    }
    constraints.set(2 * n + m, r_col, Rational::one());
    rhs[2 * n + m] = norm;

    let mut canonical_point = Vec::with_capacity(cols);
    canonical_point.extend((0..n).map(|_| big_m.clone()));
    canonical_point.extend(x.iter().map(|v| v.abs()));
    canonical_point.extend(x.iter().map(|v| v.abs() - v));
    canonical_point.extend(x.iter().map(|v| v.abs() + v));
    canonical_point.push(Rational::zero());

    let built = Lp3Construction {
        big_m,
        constraints,
        rhs,
        canonical_point,
    };
    debug_assert!(built.canonical_point_is_feasible());
    Ok(built)
}

impl Lp3Construction {
    /// Exact check of the construction invariants: the canonical point
    /// is non-negative and satisfies every row.
    pub fn canonical_point_is_feasible(&self) -> bool {
        self.canonical_point.iter().all(|v| !v.is_negative())
            && self
                .constraints
                .mul_vector(&self.canonical_point)
                .map(|lhs| lhs == self.rhs)
                .unwrap_or(false)
    }
}

/// All sparsest solutions of a system, with their common support size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsestSet {
    pub k_star: usize,
    /// Sorted lexicographically by entries; duplicate-free.
    pub solutions: Vec<Vector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SparsestOutcome {
    Found(SparsestSet),
    /// No solution with at most `k_max` nonzeros exists.
    ExceededKmax { k_max: usize },
}

impl SparsestOutcome {
    pub fn found(self) -> Option<SparsestSet> {
        match self {
            SparsestOutcome::Found(s) => Some(s),
            SparsestOutcome::ExceededKmax { .. } => None,
        }
    }
}

/// Default enumeration depth: every consistent system has a solution
/// whose support columns are independent, hence of size at most
/// `min(rows, cols)`.
pub fn default_k_max(sys: &LinearSystem) -> usize {
    sys.a.rows().min(sys.a.cols())
}

/// Brute-force l0 oracle. For k = 0, 1, ... enumerates supports of
/// size k in lexicographic order, keeping supports with independent
/// columns whose (then unique) solution has no zero entry; the first k
/// that yields any record is `k_star`. Solutions that land on a
/// smaller support are skipped here and found at their own level, so
/// the output is duplicate-free.
pub fn sparsest_solutions(sys: &LinearSystem, k_max: usize) -> SparsestOutcome {
    let n = sys.a.cols();
    for k in 0..=k_max.min(n) {
        let mut found: Vec<Vector> = Vec::new();
        for support in (0..n).combinations(k) {
            if !columns_independent(&sys.a, &support).expect("in-range support") {
                continue;
            }
            let sub = sys.a.select_columns(&support).expect("in-range support");
            match solve_linear(&sub, &sys.b).expect("b length matches rows") {
                LinearSolveOutcome::Unique(z) => {
                    if z.iter().all(|v| !v.is_zero()) {
                        let mut x = vec![Rational::zero(); n];
                        for (slot, j) in support.iter().enumerate() {
                            x[*j] = z[slot].clone();
                        }
                        found.push(x);
                    }
                }
                LinearSolveOutcome::NoSolution => {}
                LinearSolveOutcome::WithFreeVariables { .. } => {
                    unreachable!("independent columns give a full-rank solve")
                }
            }
        }
        if !found.is_empty() {
            found.sort();
            debug_assert!(found.iter().all(|x| l0_norm(x) == k && sys.is_solution(x)));
            return SparsestOutcome::Found(SparsestSet {
                k_star: k,
                solutions: found,
            });
        }
    }
    SparsestOutcome::ExceededKmax {
        k_max: k_max.min(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{optimal_face_range, point_satisfies, FaceBound};
    use crate::rational::{frac, rat};

    pub(crate) fn system_34() -> LinearSystem {
        LinearSystem::new(
            Matrix::from_i64(&[&[1, 0, -2, 5], &[0, 1, 4, -9], &[1, 0, -2, 5]]),
            vec![rat(1), rat(-1), rat(1)],
        )
        .unwrap()
    }

    pub(crate) fn system_46() -> LinearSystem {
        LinearSystem::new(
            Matrix::from_i64(&[&[6, -4, 3, 4, -2], &[6, -4, -1, 4, 0], &[0, 2, 3, -1, -3]]),
            vec![rat(4), rat(4), rat(-1)],
        )
        .unwrap()
    }

    fn x6() -> Vector {
        vec![frac(4, 9), rat(0), rat(0), frac(1, 9)]
    }

    #[test]
    fn min_l1_recovers_known_optima() {
        let (x, value) = solve_min_l1(&system_46()).unwrap();
        assert_eq!(x, vec![frac(1, 3), frac(-1, 2), rat(0), rat(0), rat(0)]);
        assert_eq!(value, frac(5, 6));

        let (x, value) = solve_min_l1(&system_34()).unwrap();
        assert_eq!(x, x6());
        assert_eq!(value, frac(5, 9));
    }

    #[test]
    fn min_l1_of_zero_rhs_is_zero() {
        let sys = LinearSystem::new(Matrix::from_i64(&[&[1, 2, 3]]), vec![rat(0)]).unwrap();
        let (x, value) = solve_min_l1(&sys).unwrap();
        assert_eq!(x, vec![rat(0); 3]);
        assert_eq!(value, rat(0));
    }

    #[test]
    fn min_l1_rejects_inconsistent_systems() {
        let sys = LinearSystem::new(
            Matrix::from_i64(&[&[1, 1], &[1, 1]]),
            vec![rat(0), rat(1)],
        )
        .unwrap();
        assert_eq!(solve_min_l1(&sys), Err(L1Error::InconsistentSystem));
    }

    #[test]
    fn lp1_canonical_point_is_feasible() {
        let sys = system_34();
        for x in [x6(), vec![rat(1), rat(-1), rat(0), rat(0)]] {
            let lp1 = build_lp1(&sys, &x).unwrap();
            let mut point: Vector = vec![rat(0); x.len()];
            point.extend(x.iter().map(|v| v.abs()));
            assert!(point_satisfies(&lp1, &point), "(0, |x|) must be feasible");
        }
    }

    #[test]
    fn lp1_for_a_wasteful_solution_admits_nonzero_u() {
        // x1 = (1, -1, 0, 0) has norm 2 while x6 has norm 5/9, so
        // u = x6 - x1 (a null vector) with t = |x6| fits inside LP1.
        let sys = system_34();
        let x1 = vec![rat(1), rat(-1), rat(0), rat(0)];
        let lp1 = build_lp1(&sys, &x1).unwrap();
        let u: Vector = x6().iter().zip(&x1).map(|(a, b)| a - b).collect();
        assert!(u.iter().any(|v| !v.is_zero()));
        let mut point = u;
        point.extend(x6().iter().map(|v| v.abs()));
        assert!(point_satisfies(&lp1, &point));
    }

    #[test]
    fn lp1_rejects_non_solutions() {
        let sys = system_34();
        assert_eq!(
            build_lp1(&sys, &[rat(1), rat(1), rat(1), rat(1)]),
            Err(L1Error::NotASolution)
        );
    }

    #[test]
    fn lp3_matches_hand_computed_construction() {
        let sys = system_34();
        let built = build_lp3(&sys, &x6()).unwrap();
        assert_eq!(built.big_m, frac(19, 9));
        let (n, m) = (4, 3);
        assert_eq!(built.constraints.rows(), 2 * n + m + 1);
        assert_eq!(built.constraints.cols(), 4 * n + 1);
        let mut expected: Vector = vec![frac(19, 9); 4];
        expected.extend([frac(4, 9), rat(0), rat(0), frac(1, 9)]); // t = |x|
        expected.extend(vec![rat(0); 4]); // alpha = |x| - x
        expected.extend([frac(8, 9), rat(0), rat(0), frac(2, 9)]); // beta = |x| + x
        expected.push(rat(0)); // r
        assert_eq!(built.canonical_point, expected);
        assert!(built.canonical_point_is_feasible());
    }

    #[test]
    fn lp3_of_the_zero_system_is_the_unit_point() {
        let sys = LinearSystem::new(Matrix::from_i64(&[&[1, 1]]), vec![rat(0)]).unwrap();
        let built = build_lp3(&sys, &[rat(0), rat(0)]).unwrap();
        assert_eq!(built.big_m, rat(1));
        let expected: Vector = vec![
            rat(1),
            rat(1), // u' = M e
            rat(0),
            rat(0), // t
            rat(0),
            rat(0), // alpha
            rat(0),
            rat(0), // beta
            rat(0), // r
        ];
        assert_eq!(built.canonical_point, expected);
    }

    #[test]
    fn sparsest_set_of_example_with_multiple_answers() {
        let got = sparsest_solutions(&system_34(), default_k_max(&system_34()))
            .found()
            .unwrap();
        assert_eq!(got.k_star, 2);
        let mut expected = vec![
            vec![rat(1), rat(-1), rat(0), rat(0)],
            vec![rat(0), rat(1), frac(-1, 2), rat(0)],
            vec![rat(0), frac(4, 5), rat(0), frac(1, 5)],
            vec![rat(0), rat(0), rat(2), rat(1)],
            vec![frac(1, 2), rat(0), frac(-1, 4), rat(0)],
            x6(),
        ];
        expected.sort();
        assert_eq!(got.solutions, expected);
    }

    #[test]
    fn sparsest_set_of_unique_answer_system() {
        let got = sparsest_solutions(&system_46(), 3).found().unwrap();
        assert_eq!(got.k_star, 1);
        assert_eq!(
            got.solutions,
            vec![vec![rat(0), rat(0), rat(0), rat(1), rat(0)]]
        );
    }

    #[test]
    fn sparsest_of_zero_rhs_is_the_zero_vector() {
        let sys = LinearSystem::new(Matrix::from_i64(&[&[1, 2, 3]]), vec![rat(0)]).unwrap();
        let got = sparsest_solutions(&sys, 1).found().unwrap();
        assert_eq!(got.k_star, 0);
        assert_eq!(got.solutions, vec![vec![rat(0); 3]]);
    }

    #[test]
    fn sparsest_reports_exhausted_budget() {
        let got = sparsest_solutions(&system_34(), 1);
        assert_eq!(got, SparsestOutcome::ExceededKmax { k_max: 1 });
    }

    #[test]
    fn l1_value_lower_bounds_every_sparsest_solution() {
        for sys in [system_34(), system_46()] {
            let (_, value) = solve_min_l1(&sys).unwrap();
            let set = sparsest_solutions(&sys, default_k_max(&sys)).found().unwrap();
            for sol in &set.solutions {
                assert!(value <= l1_norm(sol));
            }
        }
    }

    #[test]
    fn face_probe_pins_the_unique_l1_solution() {
        // the optimal face of the basis-pursuit LP for system_34 is the
        // single split point of x6, so every coordinate is pinned
        let sys = system_34();
        let lp = basis_pursuit_lp(&sys);
        let value = frac(5, 9);
        let (min, max) = optimal_face_range(&lp, 0, &value).unwrap();
        assert_eq!(min, FaceBound::Finite(frac(4, 9)));
        assert_eq!(max, FaceBound::Finite(frac(4, 9)));
        for coord in 0..lp.num_vars() {
            let (min, max) = optimal_face_range(&lp, coord, &value).unwrap();
            assert_eq!(min, max);
        }
    }
}
