//! Hypothesis-testing and confidence-interval machinery shared by every
//! estimator: the standard normal distribution functions and the two-sided
//! z-test used to turn an (estimate, standard error) pair into a report.
//!
//! The normal reference distribution is used everywhere (the target setting
//! is large n; below a few hundred units the intervals are mildly
//! anti-conservative compared to Student-t ones).

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InferenceError {
    #[error("normal quantile requires p in (0,1), got {0}")]
    DomainError(f64),
}

const FRAC_1_SQRT_PI: f64 = 0.564189583547756286948;
const SQRT_2: f64 = std::f64::consts::SQRT_2;

// Rational approximations for erf/erfc (Cody, "Rational Chebyshev
// approximation of the error function", Math. Comp. 1969). Relative error
// below 1e-16 in each regime.
const ERF_A: [f64; 5] = [
    3.16112374387056560e0,
    1.13864154151050156e2,
    3.77485237685302021e2,
    3.20937758913846947e3,
    1.85777706184603153e-1,
];
const ERF_B: [f64; 4] = [
    2.36012909523441209e1,
    2.44024637934444173e2,
    1.28261652607737228e3,
    2.84423683343917062e3,
];
const ERFC_C: [f64; 9] = [
    5.64188496988670089e-1,
    8.88314979438837594e0,
    6.61191906371416295e1,
    2.98635138197400131e2,
    8.81952221241769090e2,
    1.71204761263407058e3,
    2.05107837782607147e3,
    1.23033935479799725e3,
    2.15311535474403846e-8,
];
const ERFC_D: [f64; 8] = [
    1.57449261107098347e1,
    1.17693950891312499e2,
    5.37181101862009858e2,
    1.62138957456669019e3,
    3.29079923573345963e3,
    4.36261909014324716e3,
    3.43936767414372164e3,
    1.23033935480374942e3,
];
const ERFC_P: [f64; 6] = [
    3.05326634961232344e-1,
    3.60344899949804439e-1,
    1.25781726111229246e-1,
    1.60837851487422766e-2,
    6.58749161529837803e-4,
    1.63153871373020978e-2,
];
const ERFC_Q: [f64; 5] = [
    2.56852019228982242e0,
    1.87295284992346047e0,
    5.27905102951428412e-1,
    6.05183413124413191e-2,
    2.33520497626869185e-3,
];

fn erf_small(x: f64) -> f64 {
    let z = x * x;
    let mut num = ERF_A[4] * z;
    let mut den = z;
    for i in 0..3 {
        num = (num + ERF_A[i]) * z;
        den = (den + ERF_B[i]) * z;
    }
    x * (num + ERF_A[3]) / (den + ERF_B[3])
}

/// exp(-y*y) evaluated with the split trick that keeps the argument exact to
/// a 1/16 grid; reduces cancellation for large y.
fn exp_neg_sq(y: f64) -> f64 {
    let ysq = (y * 16.0).trunc() / 16.0;
    let del = (y - ysq) * (y + ysq);
    (-ysq * ysq).exp() * (-del).exp()
}

fn erfc_mid(y: f64) -> f64 {
    let mut num = ERFC_C[8] * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + ERFC_C[i]) * y;
        den = (den + ERFC_D[i]) * y;
    }
    exp_neg_sq(y) * (num + ERFC_C[7]) / (den + ERFC_D[7])
}

fn erfc_large(y: f64) -> f64 {
    let z = 1.0 / (y * y);
    let mut num = ERFC_P[5] * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + ERFC_P[i]) * z;
        den = (den + ERFC_Q[i]) * z;
    }
    let r = z * (num + ERFC_P[4]) / (den + ERFC_Q[4]);
    exp_neg_sq(y) / y * (FRAC_1_SQRT_PI - r)
}

/// Complementary error function for any finite x.
fn erfc(x: f64) -> f64 {
    let y = x.abs();
    let val = if y <= 0.46875 {
        1.0 - erf_small(y)
    } else if y <= 4.0 {
        erfc_mid(y)
    } else if y < 26.5 {
        erfc_large(y)
    } else {
        0.0
    };
    if x < 0.0 {
        2.0 - val
    } else {
        val
    }
}

/// Standard normal CDF, accurate to better than 1e-13 relative over |x| ≤ 8.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    const FRAC_1_SQRT_2PI: f64 = 0.398942280401432677939946;
    FRAC_1_SQRT_2PI * (-0.5 * x * x).exp()
}

// Acklam's rational approximation for the inverse normal CDF; a Halley
// refinement step against `normal_cdf` brings it to full double precision.
const INV_A: [f64; 6] = [
    -3.969683028665376e+01,
    2.209460984245205e+02,
    -2.759285104469687e+02,
    1.383577518672690e+02,
    -3.066479806614716e+01,
    2.506628277459239e+00,
];
const INV_B: [f64; 5] = [
    -5.447609879822406e+01,
    1.615858368580409e+02,
    -1.556989798598866e+02,
    6.680131188771972e+01,
    -1.328068155288572e+01,
];
const INV_C: [f64; 6] = [
    -7.784894002430293e-03,
    -3.223964580411365e-01,
    -2.400758277161838e+00,
    -2.549732539343734e+00,
    4.374664141464968e+00,
    2.938163982698783e+00,
];
const INV_D: [f64; 4] = [
    7.784695709041462e-03,
    3.224671290700398e-01,
    2.445134137142996e+00,
    3.754408661907416e+00,
];

/// Inverse of `normal_cdf` on (0, 1).
pub fn normal_quantile(p: f64) -> Result<f64, InferenceError> {
    if !(0.0..=1.0).contains(&p) || p == 0.0 || p == 1.0 || p.is_nan() {
        return Err(InferenceError::DomainError(p));
    }
    const P_LOW: f64 = 0.02425;
    let x = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((INV_C[0] * q + INV_C[1]) * q + INV_C[2]) * q + INV_C[3]) * q + INV_C[4]) * q + INV_C[5])
            / ((((INV_D[0] * q + INV_D[1]) * q + INV_D[2]) * q + INV_D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((INV_A[0] * r + INV_A[1]) * r + INV_A[2]) * r + INV_A[3]) * r + INV_A[4]) * r + INV_A[5]) * q
            / (((((INV_B[0] * r + INV_B[1]) * r + INV_B[2]) * r + INV_B[3]) * r + INV_B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((INV_C[0] * q + INV_C[1]) * q + INV_C[2]) * q + INV_C[3]) * q + INV_C[4]) * q + INV_C[5])
            / ((((INV_D[0] * q + INV_D[1]) * q + INV_D[2]) * q + INV_D[3]) * q + 1.0)
    };
    // One Halley step: e is tiny, so this converges to machine precision.
    let e = normal_cdf(x) - p;
    let u = e / normal_pdf(x);
    Ok(x - u / (1.0 + x * u / 2.0))
}

/// Result of a two-sided z-test of H0: effect = 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub alpha: f64,
    pub reject: bool,
}

/// Two-sided normal interval and p-value for an (estimate, se) pair.
///
/// With `se == 0` the interval degenerates to the point estimate and the
/// p-value is 0 unless the estimate itself is 0.
pub fn z_interval(estimate: f64, se: f64, alpha: f64) -> (f64, f64, f64) {
    assert!(se >= 0.0, "standard error must be non-negative");
    assert!(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    if se == 0.0 {
        let p = if estimate == 0.0 { 1.0 } else { 0.0 };
        return (estimate, estimate, p);
    }
    let z = normal_quantile(1.0 - alpha / 2.0).expect("alpha checked above");
    let stat = estimate / se;
    let p = 2.0 * normal_cdf(-stat.abs());
    (estimate - z * se, estimate + z * se, p.min(1.0))
}

/// `z_interval` packaged as a full test record.
pub fn z_test(estimate: f64, se: f64, alpha: f64) -> TestResult {
    let (_, _, p_value) = z_interval(estimate, se, alpha);
    let statistic = if se > 0.0 {
        estimate / se
    } else if estimate == 0.0 {
        0.0
    } else {
        f64::INFINITY * estimate.signum()
    };
    TestResult {
        statistic,
        p_value,
        alpha,
        reject: p_value < alpha,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Reference values computed with 30-digit arbitrary precision arithmetic.
    const CDF_CASES: [(f64, f64); 20] = [
        (-8.0, 6.220960574271784367e-16),
        (-6.5, 4.016000583859117808e-11),
        (-5.0, 2.866515718791939117e-7),
        (-4.0, 0.00003167124183311992125),
        (-3.25, 0.0005770250423907670429),
        (-2.0, 0.0227501319481792072),
        (-1.5, 0.066807201268858066),
        (-0.7, 0.2419636522230730147),
        (-0.3, 0.3820885778110473627),
        (0.0, 0.5),
        (0.25, 0.5987063256829237242),
        (0.5, 0.6914624612740131036),
        (1.0, 0.8413447460685429486),
        (1.644853626951472, 0.9499999999999999263),
        (2.5, 0.9937903346742238648),
        (3.0, 0.9986501019683699055),
        (4.2, 0.9999866542509840937),
        (5.5, 0.9999999810104375341),
        (7.0, 0.9999999999987201875),
        (8.0, 0.9999999999999993779),
    ];

    #[test]
    fn cdf_matches_reference_grid() {
        for (x, want) in CDF_CASES {
            let got = normal_cdf(x);
            assert!(
                (got - want).abs() <= 1e-13 * want.abs().max(1e-300) + 1e-18,
                "cdf({x}) = {got:e}, want {want:e}"
            );
        }
    }

    #[test]
    fn quantile_matches_reference_constants() {
        assert_relative_eq!(
            normal_quantile(0.975).unwrap(),
            1.9599639845400542355,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            normal_quantile(0.95).unwrap(),
            1.6448536269514727149,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            normal_quantile(0.99).unwrap(),
            2.3263478740408411009,
            max_relative = 1e-12
        );
        assert_eq!(normal_quantile(0.5).unwrap(), 0.0);
        assert_relative_eq!(
            normal_quantile(1e-10).unwrap(),
            -6.3613409024040562047,
            max_relative = 1e-10
        );
    }

    #[test]
    fn quantile_cdf_round_trip() {
        // Upper limit 5: beyond that 1-p is within a few ulps of 0 in f64,
        // so x is no longer recoverable from p at 1e-9 regardless of method.
        for i in 1..200 {
            let x = -8.0 + 13.0 * (i as f64) / 200.0;
            let p = normal_cdf(x);
            let back = normal_quantile(p).unwrap();
            assert!(
                (back - x).abs() <= 1e-9 * x.abs().max(1.0),
                "round trip at {x}: got {back}"
            );
        }
    }

    #[test]
    fn quantile_rejects_out_of_domain() {
        assert!(normal_quantile(0.0).is_err());
        assert!(normal_quantile(1.0).is_err());
        assert!(normal_quantile(-0.2).is_err());
        assert!(normal_quantile(1.2).is_err());
    }

    #[test]
    fn interval_at_null_estimate() {
        let (lo, hi, p) = z_interval(0.0, 1.0, 0.05);
        assert_relative_eq!(lo, -1.9599639845400542355, max_relative = 1e-9);
        assert_relative_eq!(hi, 1.9599639845400542355, max_relative = 1e-9);
        assert_eq!(p, 1.0);
    }

    #[test]
    fn p_value_at_the_quantile_is_alpha() {
        let (_, _, p) = z_interval(1.9599639845400545, 1.0, 0.05);
        assert_relative_eq!(p, 0.05, max_relative = 1e-10);
    }

    #[test]
    fn zero_se_degenerates() {
        let (lo, hi, p) = z_interval(2.0, 0.0, 0.05);
        assert_eq!((lo, hi), (2.0, 2.0));
        assert_eq!(p, 0.0);
        let (_, _, p0) = z_interval(0.0, 0.0, 0.05);
        assert_eq!(p0, 1.0);
    }

    #[test]
    fn ci_width_is_twice_z_times_se() {
        for (se, alpha) in [(0.5, 0.05), (2.0, 0.01), (1.0, 0.1)] {
            let (lo, hi, _) = z_interval(3.0, se, alpha);
            let z = normal_quantile(1.0 - alpha / 2.0).unwrap();
            assert_relative_eq!(hi - lo, 2.0 * z * se, max_relative = 1e-12);
        }
    }

    #[test]
    fn p_value_sign_symmetric() {
        let (_, _, p_pos) = z_interval(1.3, 0.7, 0.05);
        let (_, _, p_neg) = z_interval(-1.3, 0.7, 0.05);
        assert_eq!(p_pos, p_neg);
    }

    #[test]
    fn reject_iff_p_below_alpha() {
        let t = z_test(2.5, 1.0, 0.05);
        assert!(t.reject);
        let t2 = z_test(0.5, 1.0, 0.05);
        assert!(!t2.reject);
        assert_eq!(t2.reject, t2.p_value < t2.alpha);
    }
}
