//! Range-space certificates for minimum-l1 uniqueness.
//!
//! The central object is the tau program of a sign pattern: find a row
//! combination `eta = A^T y` that is exactly +1 on the prescribed
//! positive set, exactly -1 on the negative set, and as small as
//! possible in infinity norm elsewhere. The pattern has a range-space
//! witness iff the optimal `tau` is strictly below 1 - a strict
//! rational comparison, which is why no floating point is allowed
//! anywhere near this module.
//!
//! On top of the tau program sit the uniqueness verdict (witness plus
//! full-rank support decides unique recovery), the explicit dual
//! certificate construction, and the system classifier.

use crate::l1::{
    default_k_max, solve_min_l1, sparsest_solutions, L1Error, LinearSystem, SparsestSet,
};
use crate::linalg::{columns_independent, dot, Matrix, Vector};
use crate::lp::{simplex_solve, ConstraintSense, LpOutcome, LpProblem, VarBound};
use crate::rational::{l0_norm, Rational};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RspError {
    #[error("x has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("x is not a solution of A x = b")]
    NotASolution,
    #[error("eta is not a range-space witness shape at index {index}")]
    EtaNotAWitness { index: usize },
}

/// Indices of `x` split by exact sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPartition {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    pub zero: Vec<usize>,
}

impl SupportPartition {
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        s.sort_unstable();
        s
    }
}

pub fn support_partition(x: &[Rational]) -> SupportPartition {
    let mut parts = SupportPartition {
        plus: Vec::new(),
        minus: Vec::new(),
        zero: Vec::new(),
    };
    for (i, v) in x.iter().enumerate() {
        if v.is_positive() {
            parts.plus.push(i);
        } else if v.is_negative() {
            parts.minus.push(i);
        } else {
            parts.zero.push(i);
        }
    }
    parts
}

/// Outcome of the tau program at a point or sign pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RspPointReport {
    /// False when the equality rows already have no solution; the
    /// pattern then has no witness at all.
    pub feasible: bool,
    /// Exact optimum of the tau program, when feasible.
    pub tau_star: Option<Rational>,
    /// Witness `eta = A^T multiplier` attaining `tau_star`.
    pub eta: Option<Vector>,
    /// The multiplier `y` behind `eta`, kept so range membership is
    /// self-evident.
    pub multiplier: Option<Vector>,
    /// Witness exists and `tau_star < 1`, both exact.
    pub holds: bool,
}

/// Solves the tau program for an explicit sign pattern: `eta_i = +1`
/// on `plus`, `-1` on `minus`, `|eta_i| <= tau` elsewhere, minimizing
/// `tau` over `y` free and `tau >= 0`.
///
/// An empty pattern short-circuits to the zero witness.
pub fn rsp_for_sign_pattern(a: &Matrix, plus: &[usize], minus: &[usize]) -> RspPointReport {
    let (m, n) = (a.rows(), a.cols());
    if plus.is_empty() && minus.is_empty() {
        return RspPointReport {
            feasible: true,
            tau_star: Some(Rational::zero()),
            eta: Some(vec![Rational::zero(); n]),
            multiplier: Some(vec![Rational::zero(); m]),
            holds: true,
        };
    }
    let fixed = plus.len() + minus.len();
    let zero: Vec<usize> = {
        let mut mask = vec![false; n];
        for &i in plus.iter().chain(minus) {
            mask[i] = true;
        }
        (0..n).filter(|&i| !mask[i]).collect()
    };
    // variables: y_0..y_{m-1} free, then tau >= 0
    let rows = fixed + 2 * zero.len();
    let mut constraints = Matrix::zeros(rows, m + 1);
    let mut rhs = vec![Rational::zero(); rows];
    let mut senses = vec![ConstraintSense::Eq; rows];
    let mut row = 0;
    for (sign, set) in [(Rational::one(), plus), (-Rational::one(), minus)] {
        for &i in set {
            for r in 0..m {
                constraints.set(row, r, a.get(r, i).clone());
            }
            rhs[row] = sign.clone();
            row += 1;
        }
    }
    for &i in &zero {
        // a_i . y - tau <= 0  and  -a_i . y - tau <= 0
        for r in 0..m {
            constraints.set(row, r, a.get(r, i).clone());
            constraints.set(row + 1, r, -a.get(r, i).clone());
        }
        constraints.set(row, m, -Rational::one());
        constraints.set(row + 1, m, -Rational::one());
        senses[row] = ConstraintSense::Le;
        senses[row + 1] = ConstraintSense::Le;
        row += 2;
    }
    let mut objective = vec![Rational::zero(); m + 1];
    objective[m] = Rational::one();
    let mut bounds = vec![VarBound::Free; m + 1];
    bounds[m] = VarBound::NonNegative;
    let lp = LpProblem::new(objective, constraints, rhs, senses, bounds)
        .expect("tau program dimensions are consistent");
    match simplex_solve(&lp) {
        LpOutcome::Optimal(sol) => {
            let y = sol.point[..m].to_vec();
            let eta: Vector = (0..n).map(|i| dot(&a.column(i), &y)).collect();
            debug_assert!(plus.iter().all(|&i| eta[i].is_one()));
            debug_assert!(minus.iter().all(|&i| eta[i] == -Rational::one()));
            let holds = sol.value < Rational::one();
            RspPointReport {
                feasible: true,
                tau_star: Some(sol.value),
                eta: Some(eta),
                multiplier: Some(y),
                holds,
            }
        }
        // the sign constraints admit no multiplier at all, so no
        // witness exists and the property fails
        LpOutcome::Infeasible => RspPointReport {
            feasible: false,
            tau_star: None,
            eta: None,
            multiplier: None,
            holds: false,
        },
        LpOutcome::Unbounded => unreachable!("tau is bounded below by zero"),
    }
}

/// The range-space test at a concrete point: the sign pattern is the
/// exact sign partition of `x`.
pub fn rsp_at_point(a: &Matrix, x: &[Rational]) -> Result<RspPointReport, RspError> {
    if x.len() != a.cols() {
        return Err(RspError::LengthMismatch {
            expected: a.cols(),
            got: x.len(),
        });
    }
    let parts = support_partition(x);
    Ok(rsp_for_sign_pattern(a, &parts.plus, &parts.minus))
}

/// The explicit dual triple that restates a witness: `omega = -1` and
/// componentwise, for `x_i = 0`, `omega < y_i + y'_i` with both
/// entries strictly negative; `(0, omega)` on negative entries and
/// `(omega, 0)` on positive ones. Always satisfies `y - y' = -eta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCertificate {
    pub y: Vector,
    pub y_prime: Vector,
    pub omega: Rational,
}

/// Builds the dual certificate from a witness `eta` at `x`, using the
/// interior margin `eps_i = (1 - |eta_i|) / 4` on zero coordinates.
pub fn dual_certificate_from_eta(
    x: &[Rational],
    eta: &[Rational],
) -> Result<DualCertificate, RspError> {
    if eta.len() != x.len() {
        return Err(RspError::LengthMismatch {
            expected: x.len(),
            got: eta.len(),
        });
    }
    let one = Rational::one();
    for (i, (xi, ei)) in x.iter().zip(eta).enumerate() {
        let ok = if xi.is_positive() {
            ei.is_one()
        } else if xi.is_negative() {
            *ei == -one.clone()
        } else {
            ei.abs() < one
        };
        if !ok {
            return Err(RspError::EtaNotAWitness { index: i });
        }
    }
    let omega = -one.clone();
    let mut y = Vec::with_capacity(x.len());
    let mut y_prime = Vec::with_capacity(x.len());
    for (xi, ei) in x.iter().zip(eta) {
        if xi.is_positive() {
            y.push(omega.clone());
            y_prime.push(Rational::zero());
        } else if xi.is_negative() {
            y.push(Rational::zero());
            y_prime.push(omega.clone());
        } else {
            let eps = (&one - ei.abs()) / crate::rational::rat(4);
            if ei.is_positive() {
                y.push(-&eps - ei);
                y_prime.push(-eps);
            } else {
                y.push(-eps.clone());
                y_prime.push(ei - &eps);
            }
        }
    }
    Ok(DualCertificate { y, y_prime, omega })
}

impl DualCertificate {
    /// Exact check of every clause of the dual system at `x`:
    /// sign/equality pattern per coordinate plus `y - y' = -eta`.
    /// Range membership of `y - y'` follows from the witness itself
    /// and is checked separately where the matrix is available.
    pub fn satisfies_conditions(&self, x: &[Rational], eta: &[Rational]) -> bool {
        if self.y.len() != x.len() || self.y_prime.len() != x.len() {
            return false;
        }
        for i in 0..x.len() {
            let (yi, ypi) = (&self.y[i], &self.y_prime[i]);
            let ok = if x[i].is_positive() {
                *yi == self.omega && ypi.is_zero()
            } else if x[i].is_negative() {
                yi.is_zero() && *ypi == self.omega
            } else {
                self.omega < yi + ypi && yi.is_negative() && ypi.is_negative()
            };
            if !ok {
                return false;
            }
            if yi - ypi != -&eta[i] {
                return false;
            }
        }
        true
    }
}

/// The two-condition uniqueness verdict at a feasible point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessVerdict {
    pub rsp: RspPointReport,
    pub support_full_rank: bool,
    pub is_unique: bool,
}

/// Decides whether `x` is the unique minimum-l1 solution of the
/// system: the range-space witness must exist with `tau < 1` and the
/// support columns must be independent. Both sides are exact, so the
/// verdict is a certificate, not a heuristic.
pub fn certify_unique_l1(sys: &LinearSystem, x: &[Rational]) -> Result<UniquenessVerdict, RspError> {
    if x.len() != sys.a.cols() {
        return Err(RspError::LengthMismatch {
            expected: sys.a.cols(),
            got: x.len(),
        });
    }
    if !sys.is_solution(x) {
        return Err(RspError::NotASolution);
    }
    let parts = support_partition(x);
    let rsp = rsp_for_sign_pattern(&sys.a, &parts.plus, &parts.minus);
    let support = parts.support();
    let support_full_rank =
        columns_independent(&sys.a, &support).expect("support indices are in range");
    let is_unique = rsp.holds && support_full_rank;
    // a unique optimum always has an independent support, which caps
    // the sparsity by the number of rows
    assert!(!is_unique || support.len() <= sys.a.rows());
    Ok(UniquenessVerdict {
        rsp,
        support_full_rank,
        is_unique,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemGroup {
    /// Unique minimum-l1 solution and unique sparsest solution.
    Group1,
    /// Unique minimum-l1 solution, multiple sparsest solutions.
    Group2,
    /// Multiple minimum-l1 solutions.
    Group3,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemClassification {
    pub group: SystemGroup,
    pub l1_solution: Vector,
    pub l1_value: Rational,
    pub l1_unique: bool,
    pub sparsest: SparsestSet,
    /// Some sparsest solution equals the unique minimum-l1 solution.
    pub equivalent: bool,
    /// The unique sparsest solution equals the unique minimum-l1 one.
    pub strongly_equivalent: bool,
}

/// Full classification of a consistent system: solve the l1 problem,
/// certify uniqueness at the optimum (any unique optimum necessarily
/// equals the one we found), and enumerate the sparsest solutions.
pub fn classify_system(sys: &LinearSystem) -> Result<SystemClassification, L1Error> {
    let (x_hat, l1_value) = solve_min_l1(sys)?;
    let verdict =
        certify_unique_l1(sys, &x_hat).expect("the solver returned a feasible point");
    let l1_unique = verdict.is_unique;
    let sparsest = sparsest_solutions(sys, default_k_max(sys))
        .found()
        .expect("a consistent system has a solution with independent support");
    let group = if !l1_unique {
        SystemGroup::Group3
    } else if sparsest.solutions.len() == 1 {
        SystemGroup::Group1
    } else {
        SystemGroup::Group2
    };
    let equivalent = l1_unique && sparsest.solutions.contains(&x_hat);
    let strongly_equivalent = equivalent && sparsest.solutions.len() == 1;
    debug_assert!(l0_norm(&x_hat) >= sparsest.k_star);
    Ok(SystemClassification {
        group,
        l1_solution: x_hat,
        l1_value,
        l1_unique,
        sparsest,
        equivalent,
        strongly_equivalent,
    })
}
