//! Numeric building blocks shared across the crate: compensated summation,
//! moment helpers, special functions and a small dense symmetric solver.

pub mod linalg;
pub mod special;

/// Pairwise (cascade) summation. Error grows like O(log n) instead of O(n),
/// and the reduction order is fixed, so results do not depend on how the
/// caller chunks or schedules the work.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const LEAF: usize = 64;
    if values.len() <= LEAF {
        let mut acc = 0.0;
        for &v in values {
            acc += v;
        }
        return acc;
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Pairwise sum of `f(i)` over `0..n` without materialising the values.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(n: usize, f: &F) -> f64 {
    pairwise_sum_range(0, n, f)
}

fn pairwise_sum_range<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
    const LEAF: usize = 64;
    if hi - lo <= LEAF {
        let mut acc = 0.0;
        for i in lo..hi {
            acc += f(i);
        }
        return acc;
    }
    let mid = lo + (hi - lo) / 2;
    pairwise_sum_range(lo, mid, f) + pairwise_sum_range(mid, hi, f)
}

/// Arithmetic mean with pairwise accumulation. Returns 0 for empty input.
pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    pairwise_sum(values) / values.len() as f64
}

/// Two-pass sample variance (n-1 denominator) with pairwise accumulation.
/// Returns 0 for fewer than two values.
pub fn sample_variance(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    pairwise_sum_by(n, &|i| {
        let d = values[i] - m;
        d * d
    }) / (n - 1) as f64
}

/// Two-pass sample covariance (n-1 denominator).
pub fn sample_covariance(xs: &[f64], ys: &[f64]) -> f64 {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    if n < 2 {
        return 0.0;
    }
    let mx = mean(xs);
    let my = mean(ys);
    pairwise_sum_by(n, &|i| (xs[i] - mx) * (ys[i] - my)) / (n - 1) as f64
}

/// Pearson correlation; 0 when either side is constant.
pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let vx = sample_variance(xs);
    let vy = sample_variance(ys);
    if vx <= 0.0 || vy <= 0.0 {
        return 0.0;
    }
    sample_covariance(xs, ys) / (vx * vy).sqrt()
}

/// Median of a slice (average of the central pair for even length).
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty());
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("non-finite value in median"));
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Linearly interpolated empirical quantile (the common "type 7" rule:
/// the k-th order statistic sits at probability k/(n-1), zero-based).
pub fn quantile(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty());
    assert!((0.0..=1.0).contains(&p));
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let pos = p * (n - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let frac = pos - lo as f64;
        sorted[lo] * (1.0 - frac) + sorted[hi] * frac
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pairwise_matches_naive_on_benign_data() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert_relative_eq!(pairwise_sum(&xs), naive, max_relative = 1e-12);
    }

    #[test]
    fn pairwise_beats_naive_on_ill_conditioned_data() {
        // Large head followed by many small tail terms; the exact sum is 1.0.
        let mut xs = vec![1e16, -1e16];
        xs.extend(std::iter::repeat(0.001).take(1000));
        assert_relative_eq!(pairwise_sum(&xs), 1.0, max_relative = 1e-9);
    }

    #[test]
    fn variance_of_constant_is_zero() {
        let xs = vec![3.5; 100];
        assert_eq!(sample_variance(&xs), 0.0);
    }

    #[test]
    fn quantile_endpoints_and_midpoint() {
        let xs: Vec<f64> = (1..=100).map(|i| i as f64).collect();
        assert_eq!(quantile(&xs, 0.0), 1.0);
        assert_eq!(quantile(&xs, 1.0), 100.0);
        assert_relative_eq!(quantile(&xs, 0.5), 50.5, max_relative = 1e-12);
        assert_relative_eq!(quantile(&xs, 0.95), 95.05, max_relative = 1e-12);
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn correlation_is_unit_for_linear_data() {
        let xs: Vec<f64> = (0..50).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        assert_relative_eq!(correlation(&xs, &ys), 1.0, max_relative = 1e-12);
    }
}
