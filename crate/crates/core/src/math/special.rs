//! Log-gamma, digamma and trigamma for positive arguments.
//!
//! All three use the same scheme: an asymptotic (Stirling-type) series that is
//! accurate for large arguments, combined with the recurrences
//! `ln Γ(x) = ln Γ(x+1) - ln x`, `Ψ(x) = Ψ(x+1) - 1/x` and
//! `Ψ'(x) = Ψ'(x+1) + 1/x²` to shift small arguments upward first.
//! Absolute accuracy is better than 1e-12 for arguments ≥ 0.25, which covers
//! every call site in this crate (Gamma shapes and t degrees of freedom).

/// Threshold above which the asymptotic series is applied directly.
const ASYMPTOTIC_CUTOFF: f64 = 12.0;

/// Bernoulli-number coefficients B_{2k}/(2k(2k-1)) for the ln-gamma series.
const LN_GAMMA_COEFFS: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
];

const HALF_LN_TWO_PI: f64 = 0.918938533204672741780329736406;

/// Natural log of the gamma function for x > 0.
pub fn ln_gamma(x: f64) -> f64 {
    assert!(x > 0.0, "ln_gamma requires x > 0, got {x}");
    let mut shift = 0.0;
    let mut z = x;
    while z < ASYMPTOTIC_CUTOFF {
        shift -= z.ln();
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    let mut term = inv;
    for c in LN_GAMMA_COEFFS {
        series += c * term;
        term *= inv2;
    }
    shift + (z - 0.5) * z.ln() - z + HALF_LN_TWO_PI + series
}

/// Digamma Ψ(x) = d/dx ln Γ(x) for x > 0.
pub fn digamma(x: f64) -> f64 {
    assert!(x > 0.0, "digamma requires x > 0, got {x}");
    let mut shift = 0.0;
    let mut z = x;
    while z < ASYMPTOTIC_CUTOFF {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // Ψ(z) ~ ln z - 1/(2z) - Σ B_{2k}/(2k z^{2k})
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2
                        * (1.0 / 252.0
                            - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0 - inv2 * 691.0 / 32760.0)))));
    shift + z.ln() - 0.5 * inv - series
}

/// Trigamma Ψ'(x) for x > 0.
pub fn trigamma(x: f64) -> f64 {
    assert!(x > 0.0, "trigamma requires x > 0, got {x}");
    let mut shift = 0.0;
    let mut z = x;
    while z < ASYMPTOTIC_CUTOFF {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    // Ψ'(z) ~ 1/z + 1/(2z²) + Σ B_{2k}/z^{2k+1}
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let series = inv
        * inv2
        * (1.0 / 6.0
            - inv2
                * (1.0 / 30.0
                    - inv2 * (1.0 / 42.0 - inv2 * (1.0 / 30.0 - inv2 * (5.0 / 66.0 - inv2 * 691.0 / 2730.0)))));
    shift + inv + 0.5 * inv2 + series
}
