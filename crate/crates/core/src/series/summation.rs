//! Direct summation of positive series with an integral-test truncation certificate.

use crate::error::{Error, Result};

pub const DEFAULT_REL_TOL: f64 = 1e-12;
pub const DEFAULT_K_MAX: u64 = 10_000_000;

/// Longest run of terms between two evaluations of the stopping rule.
const MAX_STRIDE: u64 = 4096;

/// Partial sum of a positive series together with its truncation certificate.
///
/// For positive terms the true value lies in `[value, value + tail_bound]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SumResult {
    pub value: f64,
    /// Index `K` of the last term included.
    pub truncation_index: u64,
    pub tail_bound: f64,
    /// Term evaluations spent, including any re-summation while locating `K`.
    pub terms_evaluated: u64,
}

/// Neumaier compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sums `term(1) + term(2) + ...` and stops at the smallest `K` with
/// `tail_bound(K) <= rel_tol * partial(K)`.
///
/// `tail_bound(K)` must bound `sum_{k > K} term(k)` from above; returning
/// `f64::INFINITY` where no bound is available is fine. The stopping condition
/// has to be monotone in `K` (true once, true thereafter), which holds for a
/// bound that is non-increasing past the point where it first becomes finite.
/// The rule is checked on a growing stride and the final stretch is re-summed
/// term by term, so the reported `K` is the smallest one.
pub fn direct_sum<T, B>(term: T, tail_bound: B, rel_tol: f64, k_max: u64) -> Result<SumResult>
where
    T: Fn(u64) -> f64,
    B: Fn(u64) -> f64,
{
    if !(rel_tol > 0.0) {
        return Err(Error::domain(format!("rel_tol must be positive, got {rel_tol}")));
    }
    if k_max == 0 {
        return Err(Error::domain("k_max must be at least 1"));
    }

    let mut acc = CompensatedSum::default();
    let mut evaluated = 0u64;
    let mut checkpoint = (0u64, acc);
    let mut next_check = 1u64;
    let mut k = 0u64;

    while k < k_max {
        k += 1;
        acc.add(term(k));
        evaluated += 1;
        if k != next_check {
            continue;
        }
        let bound = tail_bound(k);
        if bound <= rel_tol * acc.total() {
            // locate the first index in (checkpoint, k] that satisfies the rule
            let (k0, mut redo) = checkpoint;
            for j in k0 + 1..k {
                redo.add(term(j));
                evaluated += 1;
                let b = tail_bound(j);
                if b <= rel_tol * redo.total() {
                    return Ok(SumResult {
                        value: redo.total(),
                        truncation_index: j,
                        tail_bound: b,
                        terms_evaluated: evaluated,
                    });
                }
            }
            return Ok(SumResult {
                value: acc.total(),
                truncation_index: k,
                tail_bound: bound,
                terms_evaluated: evaluated,
            });
        }
        checkpoint = (k, acc);
        let stride = (k / 64).clamp(1, MAX_STRIDE);
        next_check = (k + stride).min(k_max);
    }

    Err(Error::Truncation {
        k_max,
        best: SumResult {
            value: acc.total(),
            truncation_index: k_max,
            tail_bound: tail_bound(k_max),
            terms_evaluated: evaluated,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let r = direct_sum(|k| (-(k as f64)).exp(), |k| (-(k as f64)).exp(), 1e-12, 1000).unwrap();
        let exact = 1.0 / (std::f64::consts::E - 1.0);
        assert!((r.value - exact).abs() < 1e-12 * exact);
        assert!((r.value - 0.581_976_706_9).abs() < 1e-10);
        assert!(r.tail_bound <= 1e-12 * r.value);
    }

    #[test]
    fn zero_series() {
        let r = direct_sum(|_| 0.0, |_| 0.0, 1e-12, 10).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.tail_bound, 0.0);
        assert_eq!(r.truncation_index, 1);
    }

    #[test]
    fn smallest_truncation_index() {
        // tail of sum 2^-k past K is 2^-K; partial is 1 - 2^-K
        let term = |k: u64| 0.5f64.powi(k as i32);
        let bound = |k: u64| 0.5f64.powi(k as i32);
        for tol in [1e-3, 1e-6, 1e-9, 1e-12] {
            let r = direct_sum(term, bound, tol, 1000).unwrap();
            let k = r.truncation_index;
            let partial = |k: u64| 1.0 - 0.5f64.powi(k as i32);
            assert!(bound(k) <= tol * partial(k));
            assert!(bound(k - 1) > tol * partial(k - 1) || k == 1);
        }
    }

    #[test]
    fn stride_refinement_finds_first_index() {
        // slowly decaying series, K lands well inside a stride
        let term = |k: u64| 1.0 / (k as f64).powi(4);
        let bound = |k: u64| 1.0 / (3.0 * (k as f64).powi(3));
        let r = direct_sum(term, bound, 1e-9, 100_000).unwrap();
        let k = r.truncation_index;
        let partial: f64 = (1..=k).map(term).sum();
        let partial_prev: f64 = (1..k).map(term).sum();
        assert!(bound(k) <= 1e-9 * partial);
        assert!(bound(k - 1) > 1e-9 * partial_prev);
        assert!((r.value - partial).abs() < 1e-14);
        let zeta4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!(r.value <= zeta4 && zeta4 <= r.value + r.tail_bound);
    }

    #[test]
    fn truncation_error_reports_best_estimate() {
        match direct_sum(|k| 1.0 / (k as f64).powi(2), |k| 1.0 / k as f64, 1e-12, 100) {
            Err(Error::Truncation { k_max, best }) => {
                assert_eq!(k_max, 100);
                assert_eq!(best.truncation_index, 100);
                assert!((best.tail_bound - 0.01).abs() < 1e-15);
                assert!(best.value > 1.6 && best.value < 1.645);
            }
            other => panic!("expected truncation error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(direct_sum(|_| 1.0, |_| 0.0, 0.0, 10).is_err());
        assert!(direct_sum(|_| 1.0, |_| 0.0, 1e-3, 0).is_err());
    }

    #[test]
    fn compensated_sum_beats_naive() {
        let mut c = CompensatedSum::default();
        c.add(1.0);
        for _ in 0..10_000 {
            c.add(1e-16);
        }
        assert!((c.total() - (1.0 + 1e-12)).abs() < 1e-16);
    }
}
