//! Matrix-level recovery analysis: coherence, spark, the order-K
//! range-space property and its weak variant, the paired rank-test
//! matrices, and the brute-force uniform-recovery oracle.
//!
//! Coherence is carried as `mu^2` so everything stays rational even
//! when `mu` itself is a surd; the order bound is recovered from
//! `(2K - 1)^2 mu^2 <= 1` by integer search.

use crate::l1::LinearSystem;
use crate::linalg::{columns_independent, dot, rank, Matrix, Vector};
use crate::rational::Rational;
use crate::rsp::{certify_unique_l1, rsp_for_sign_pattern};
use itertools::Itertools;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("column {index} is zero, coherence is undefined")]
    ZeroColumn { index: usize },
    #[error("order K = {k} out of range 1..={cols}")]
    OrderOutOfRange { k: usize, cols: usize },
    #[error("x has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
}

/// Squared mutual coherence and the order bound it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceReport {
    /// `max over i != j` of `(a_i . a_j)^2 / (|a_i|^2 |a_j|^2)`, exact.
    pub mu_squared: Rational,
    /// First column pair attaining the maximum.
    pub max_pair: (usize, usize),
    /// Largest K with `(2K - 1)^2 mu^2 <= 1`, capped at the column
    /// count (orthogonal columns give `mu = 0`, hence the cap).
    pub order_bound: usize,
}

pub fn mutual_coherence(a: &Matrix) -> Result<CoherenceReport, AnalysisError> {
    let n = a.cols();
    let columns: Vec<Vector> = (0..n).map(|j| a.column(j)).collect();
    let mut norms = Vec::with_capacity(n);
    for (j, col) in columns.iter().enumerate() {
        let sq = dot(col, col);
        if sq.is_zero() {
            return Err(AnalysisError::ZeroColumn { index: j });
        }
        norms.push(sq);
    }
    let mut mu_squared = Rational::zero();
    let mut max_pair = (0, 1);
    for i in 0..n {
        for j in (i + 1)..n {
            let inner = dot(&columns[i], &columns[j]);
            let ratio = (&inner * &inner) / (&norms[i] * &norms[j]);
            if ratio > mu_squared {
                mu_squared = ratio;
                max_pair = (i, j);
            }
        }
    }
    let order_bound = if mu_squared.is_zero() {
        n
    } else {
        let mut k = 1usize;
        while k + 1 <= n {
            let side = crate::rational::rat((2 * (k + 1)) as i64 - 1);
            if &side * &side * &mu_squared <= Rational::one() {
                k += 1;
            } else {
                break;
            }
        }
        k
    };
    Ok(CoherenceReport {
        mu_squared,
        max_pair,
        order_bound,
    })
}

/// Smallest number of linearly dependent columns; `cols + 1` when all
/// columns are independent.
pub fn spark(a: &Matrix) -> usize {
    let n = a.cols();
    for k in 1..=n {
        for subset in (0..n).combinations(k) {
            if !columns_independent(a, &subset).expect("in-range subset") {
                return k;
            }
        }
    }
    n + 1
}

/// Verdict of an order-K sweep of sign patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRspReport {
    pub k: usize,
    pub holds: bool,
    /// For the weak variant, whether some K independent columns exist
    /// (always true for the plain variant, which does not require it).
    pub rank_condition: bool,
    /// First failing `(S1, S2)` in canonical enumeration order:
    /// support sets ascending lexicographically, and within a support
    /// the negative side walks its non-leading elements in binary
    /// counting order, so the all-positive pattern comes first.
    pub failing_pair: Option<(Vec<usize>, Vec<usize>)>,
    /// Number of tau programs solved (after symmetry pruning).
    pub checked_pairs: usize,
}

fn check_range(k: usize, cols: usize) -> Result<(), AnalysisError> {
    if k == 0 || k > cols {
        return Err(AnalysisError::OrderOutOfRange { k, cols });
    }
    Ok(())
}

/// Enumerates the canonical sign patterns of the given size: the
/// leading support element always sits on the positive side, since
/// swapping the two sides only negates the witness.
fn canonical_patterns(n: usize, size: usize) -> impl Iterator<Item = (Vec<usize>, Vec<usize>)> {
    (0..n).combinations(size).flat_map(move |support| {
        let rest: Vec<usize> = support[1..].to_vec();
        let lead = support[0];
        (0..(1u32 << rest.len())).map(move |mask| {
            let mut plus = vec![lead];
            let mut minus = Vec::new();
            for (bit, &idx) in rest.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    minus.push(idx);
                } else {
                    plus.push(idx);
                }
            }
            (plus, minus)
        })
    })
}

fn sweep_patterns<F>(
    a: &Matrix,
    sizes: impl Iterator<Item = usize>,
    mut keep: F,
) -> (Option<(Vec<usize>, Vec<usize>)>, usize)
where
    F: FnMut(&[usize]) -> bool,
{
    let n = a.cols();
    let mut checked = 0usize;
    for size in sizes {
        for (plus, minus) in canonical_patterns(n, size) {
            let mut union: Vec<usize> = plus.iter().chain(&minus).copied().collect();
            union.sort_unstable();
            if !keep(&union) {
                continue;
            }
            checked += 1;
            let report = rsp_for_sign_pattern(a, &plus, &minus);
            if !report.holds {
                return (Some((plus, minus)), checked);
            }
        }
    }
    (None, checked)
}

/// The order-K range-space sweep. By default only patterns of size
/// exactly K are solved: a witness for any smaller pattern follows by
/// averaging the witnesses of two size-K extensions, so the size-K
/// sweep already decides the property. `strict` checks every size
/// `1..=K` anyway.
pub fn rsp_order(a: &Matrix, k: usize, strict: bool) -> Result<OrderRspReport, AnalysisError> {
    check_range(k, a.cols())?;
    let sizes: Vec<usize> = if strict { (1..=k).collect() } else { vec![k] };
    let (failing_pair, checked_pairs) = sweep_patterns(a, sizes.into_iter(), |_| true);
    Ok(OrderRspReport {
        k,
        holds: failing_pair.is_none(),
        rank_condition: true,
        failing_pair,
        checked_pairs,
    })
}

/// The weak variant: patterns are only required to have a witness when
/// their combined support columns are independent, and additionally
/// some K columns must be independent at all (`rank >= K`).
pub fn weak_rsp_order(a: &Matrix, k: usize) -> Result<OrderRspReport, AnalysisError> {
    check_range(k, a.cols())?;
    let rank_condition = rank(a) >= k;
    if !rank_condition {
        // no K independent columns exist; the verdict is already fixed
        return Ok(OrderRspReport {
            k,
            holds: false,
            rank_condition,
            failing_pair: None,
            checked_pairs: 0,
        });
    }
    let (failing_pair, checked_pairs) = sweep_patterns(a, 1..=k, |union| {
        columns_independent(a, union).expect("in-range union")
    });
    Ok(OrderRspReport {
        k,
        holds: failing_pair.is_none(),
        rank_condition,
        failing_pair,
        checked_pairs,
    })
}

/// The two block matrices whose full-column-rank statuses agree at any
/// point: `H` stacks the signed support columns over a `-/+` row of
/// ones, `G` embeds the same data in the four-block layout used by the
/// uniqueness analysis.
pub fn build_h_g(a: &Matrix, x: &[Rational]) -> Result<(Matrix, Matrix), AnalysisError> {
    if x.len() != a.cols() {
        return Err(AnalysisError::LengthMismatch {
            expected: a.cols(),
            got: x.len(),
        });
    }
    let parts = crate::rsp::support_partition(x);
    let (p, q, m) = (parts.plus.len(), parts.minus.len(), a.rows());
    let mut h = Matrix::zeros(m + 1, p + q);
    for (col, &j) in parts.plus.iter().enumerate() {
        for r in 0..m {
            h.set(r, col, a.get(r, j).clone());
        }
        h.set(m, col, -Rational::one());
    }
    for (col, &j) in parts.minus.iter().enumerate() {
        for r in 0..m {
            h.set(r, p + col, a.get(r, j).clone());
        }
        h.set(m, p + col, Rational::one());
    }

    let mut g = Matrix::zeros(p + q + m + 1, 2 * (p + q));
    for i in 0..p {
        g.set(i, i, -Rational::one()); // -I on (plus, plus)
        g.set(i, p + q + i, -Rational::one()); // -I on (plus, alpha)
    }
    for i in 0..q {
        g.set(p + i, p + i, Rational::one()); // I on (minus, minus)
        g.set(p + i, 2 * p + q + i, -Rational::one()); // -I on (minus, beta)
    }
    for (col, &j) in parts.plus.iter().enumerate() {
        for r in 0..m {
            g.set(p + q + r, col, a.get(r, j).clone());
        }
        g.set(p + q + m, p + q + col, Rational::one());
    }
    for (col, &j) in parts.minus.iter().enumerate() {
        for r in 0..m {
            g.set(p + q + r, p + col, a.get(r, j).clone());
        }
        g.set(p + q + m, 2 * p + q + col, Rational::one());
    }
    Ok((h, g))
}

/// Brute-force uniform-recovery check for sparsity `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveryReport {
    pub k: usize,
    pub all_recovered: bool,
    /// First probe (in size, support, then sign order) that is not the
    /// unique minimum-l1 solution of its own measurements.
    pub counterexample: Option<Vector>,
    pub probes: usize,
}

/// Probes every support of size `1..=k` with every +-1 sign pattern,
/// measures `y = A x`, and demands that `x` be certified as the unique
/// minimum-l1 solution of `A z = y`. Magnitude-one probes suffice
/// because the certificate depends only on the sign pattern and the
/// support.
pub fn uniform_recovery_oracle(a: &Matrix, k: usize) -> Result<RecoveryReport, AnalysisError> {
    check_range(k, a.cols())?;
    let n = a.cols();
    let mut probes = 0usize;
    for size in 1..=k {
        for support in (0..n).combinations(size) {
            for mask in 0..(1u32 << size) {
                let mut x = vec![Rational::zero(); n];
                for (slot, &j) in support.iter().enumerate() {
                    // leading support element is the most significant
                    // bit, so the all-plus probe comes first
                    let negative = mask & (1 << (size - 1 - slot)) != 0;
                    x[j] = if negative {
                        -Rational::one()
                    } else {
                        Rational::one()
                    };
                }
                probes += 1;
                let y = a.mul_vector(&x).expect("probe length matches");
                let sys = LinearSystem::new(a.clone(), y).expect("lengths agree");
                let verdict =
                    certify_unique_l1(&sys, &x).expect("probe solves its own measurements");
                if !verdict.is_unique {
                    return Ok(RecoveryReport {
                        k,
                        all_recovered: false,
                        counterexample: Some(x),
                        probes,
                    });
                }
            }
        }
    }
    Ok(RecoveryReport {
        k,
        all_recovered: true,
        counterexample: None,
        probes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, parse_rational, rat};

    fn small() -> Matrix {
        Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]])
    }

    fn example_34() -> Matrix {
        Matrix::from_i64(&[&[1, 0, -2, 5], &[0, 1, 4, -9], &[1, 0, -2, 5]])
    }

    fn example_46() -> Matrix {
        Matrix::from_i64(&[&[6, -4, 3, 4, -2], &[6, -4, -1, 4, 0], &[0, 2, 3, -1, -3]])
    }

    /// The 12-significant-digit decimal surrogate of the surd matrix.
    pub(crate) fn example_36() -> Matrix {
        let s2 = parse_rational("0.707106781187").unwrap();
        let s3 = parse_rational("0.577350269190").unwrap();
        let s6 = parse_rational("0.408248290464").unwrap();
        let z = Rational::zero;
        Matrix::from_rows(vec![
            vec![s2.clone(), z(), s3.clone(), -s2.clone(), s2.clone(), z()],
            vec![s2.clone(), s2.clone(), s3.clone(), -s3.clone(), z(), -s2.clone()],
            vec![z(), s2.clone(), s3.clone(), s6, -s2.clone(), -s2],
        ])
        .unwrap()
    }

    #[test]
    fn coherence_of_small_matrix() {
        let rep = mutual_coherence(&small()).unwrap();
        assert_eq!(rep.mu_squared, frac(1, 2));
        assert_eq!(rep.max_pair, (0, 2));
        assert_eq!(rep.order_bound, 1);
    }

    #[test]
    fn coherence_of_antiparallel_pair_is_one() {
        let rep = mutual_coherence(&example_36()).unwrap();
        assert_eq!(rep.mu_squared, rat(1));
        assert_eq!(rep.max_pair, (1, 5));
        assert_eq!(rep.order_bound, 1);
    }

    #[test]
    fn coherence_of_orthogonal_columns_is_zero() {
        let rep = mutual_coherence(&Matrix::identity(2)).unwrap();
        assert_eq!(rep.mu_squared, rat(0));
        assert_eq!(rep.order_bound, 2);
    }

    #[test]
    fn coherence_rejects_zero_columns() {
        let a = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(
            mutual_coherence(&a),
            Err(AnalysisError::ZeroColumn { index: 2 })
        );
    }

    #[test]
    fn spark_examples() {
        assert_eq!(spark(&example_36()), 2);
        // every pair independent, a3 = -2 a1 + 4 a2 kills a triple
        assert_eq!(spark(&example_34()), 3);
        assert_eq!(spark(&Matrix::identity(2)), 3);
        let with_zero = Matrix::from_i64(&[&[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(spark(&with_zero), 1);
    }

    #[test]
    fn order_one_holds_for_the_small_matrix() {
        let rep = rsp_order(&small(), 1, false).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.checked_pairs, 3);
        assert_eq!(rep.failing_pair, None);
    }

    #[test]
    fn order_two_fails_on_the_all_positive_pattern() {
        // eta_0 = eta_1 = 1 forces y = (1, 1), hence eta_2 = 2
        let rep = rsp_order(&small(), 2, false).unwrap();
        assert!(!rep.holds);
        assert_eq!(rep.failing_pair, Some((vec![0, 1], vec![])));
    }

    #[test]
    fn order_two_fails_for_the_antiparallel_matrix() {
        let rep = rsp_order(&example_36(), 2, false).unwrap();
        assert!(!rep.holds);
    }

    #[test]
    fn order_sweep_rejects_out_of_range_k() {
        assert_eq!(
            rsp_order(&small(), 0, false),
            Err(AnalysisError::OrderOutOfRange { k: 0, cols: 3 })
        );
        assert_eq!(
            rsp_order(&small(), 4, false),
            Err(AnalysisError::OrderOutOfRange { k: 4, cols: 3 })
        );
    }

    #[test]
    fn strict_sweep_covers_all_sizes() {
        let default = rsp_order(&small(), 2, false).unwrap();
        let strict = rsp_order(&small(), 2, true).unwrap();
        assert_eq!(default.holds, strict.holds);
        assert!(strict.checked_pairs > default.checked_pairs);
    }

    #[test]
    fn weak_order_one_fails_at_the_unrecoverable_column() {
        // column 3 is independent on its own, yet has no witness
        let rep = weak_rsp_order(&example_46(), 1).unwrap();
        assert!(rep.rank_condition);
        assert!(!rep.holds);
        assert_eq!(rep.failing_pair, Some((vec![3], vec![])));
    }

    #[test]
    fn weak_order_beyond_rank_fails_the_rank_condition() {
        let a = Matrix::from_i64(&[&[1, 0, 1], &[0, 1, 1]]);
        let rep = weak_rsp_order(&a, 3).unwrap();
        assert!(!rep.rank_condition);
        assert!(!rep.holds);
    }

    #[test]
    fn weak_order_one_holds_for_the_small_matrix() {
        let rep = weak_rsp_order(&small(), 1).unwrap();
        assert!(rep.holds);
    }

    #[test]
    fn h_and_g_blocks_for_the_recoverable_point() {
        let x = vec![frac(4, 9), rat(0), rat(0), frac(1, 9)];
        let (h, g) = build_h_g(&example_34(), &x).unwrap();
        assert_eq!((h.rows(), h.cols()), (4, 2));
        assert_eq!(h.column(0), vec![rat(1), rat(0), rat(1), rat(-1)]);
        assert_eq!(h.column(1), vec![rat(5), rat(-9), rat(5), rat(-1)]);
        assert_eq!((g.rows(), g.cols()), (2 + 3 + 1, 4));
        assert_eq!(rank(&h) == h.cols(), rank(&g) == g.cols());
    }

    #[test]
    fn h_and_g_of_the_zero_point_are_empty() {
        let (h, g) = build_h_g(&example_34(), &vec![rat(0); 4]).unwrap();
        assert_eq!((h.rows(), h.cols()), (4, 0));
        assert_eq!(g.cols(), 0);
        assert_eq!(rank(&h), 0);
    }

    #[test]
    fn h_and_g_rank_statuses_agree_at_a_mixed_point() {
        let x = vec![frac(1, 3), frac(-1, 2), rat(0), rat(0), rat(0)];
        let (h, g) = build_h_g(&example_46(), &x).unwrap();
        assert_eq!((h.rows(), h.cols()), (4, 2));
        assert_eq!(rank(&h), 2);
        assert_eq!(rank(&g), g.cols());
    }

    #[test]
    fn oracle_agrees_with_the_order_sweep_on_small() {
        let ok = uniform_recovery_oracle(&small(), 1).unwrap();
        assert!(ok.all_recovered);
        assert_eq!(ok.probes, 6);

        let bad = uniform_recovery_oracle(&small(), 2).unwrap();
        assert!(!bad.all_recovered);
        assert_eq!(
            bad.counterexample,
            Some(vec![rat(1), rat(1), rat(0)]),
            "first failing probe is the all-plus pattern on {{0, 1}}"
        );
    }

    #[test]
    fn oracle_rejects_recovery_on_the_antiparallel_matrix() {
        let rep = uniform_recovery_oracle(&example_36(), 1).unwrap();
        assert!(!rep.all_recovered);
    }
}
