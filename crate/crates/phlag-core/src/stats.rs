//! Correlations and one-sample location tests used to compare observed
//! topology against sampled random-graph baselines.
//!
//! The two-tailed Student-t p-value comes from the regularized incomplete
//! beta function, evaluated with the classical Lanczos log-gamma plus a
//! modified-Lentz continued fraction — both hand-rolled here because this
//! crate stays allocator-only, and pinned against externally computed
//! reference values in the tests below.

use alloc::vec::Vec;

use crate::diagram::BettiProfile;

/// Result of a one-sample two-tailed Student t test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TTestResult {
    /// The t statistic; `±∞` when the sample has zero variance and its
    /// mean differs from the tested value, `0` when it matches exactly.
    pub t: f64,
    /// Two-tailed p-value in `[0, 1]`.
    pub p: f64,
}

/// Why a statistic could not be computed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatsError {
    /// Paired series must have equal lengths.
    #[error("paired series have lengths {left} and {right}")]
    LengthMismatch {
        /// Length of the first series.
        left: usize,
        /// Length of the second series.
        right: usize,
    },
    /// Too few observations for the requested statistic.
    #[error("{observed} observation(s), need at least {required}")]
    TooFewObservations {
        /// Observations provided.
        observed: usize,
        /// Minimum required.
        required: usize,
    },
    /// A series was constant, so the correlation is undefined.
    #[error("correlation undefined for a constant series")]
    DegenerateInput,
}

/// One-sample two-tailed t test of `sample` against `expected_mean`.
///
/// Requires at least 2 observations. A zero-variance sample is resolved by
/// convention rather than division: `p = 1` when the sample mean equals
/// the tested value exactly, else `p = 0` with `t = ±∞`.
pub fn one_sample_t_test(sample: &[f64], expected_mean: f64) -> Result<TTestResult, StatsError> {
    let n = sample.len();
    if n < 2 {
        return Err(StatsError::TooFewObservations {
            observed: n,
            required: 2,
        });
    }
    let mean = sample.iter().sum::<f64>() / n as f64;
    let ss: f64 = sample.iter().map(|v| (v - mean) * (v - mean)).sum();
    if ss == 0.0 {
        return Ok(if mean == expected_mean {
            TTestResult { t: 0.0, p: 1.0 }
        } else {
            let sign = if mean > expected_mean { 1.0 } else { -1.0 };
            TTestResult {
                t: sign * f64::INFINITY,
                p: 0.0,
            }
        });
    }
    let std_err = libm::sqrt(ss / (n as f64 - 1.0)) / libm::sqrt(n as f64);
    let t = (mean - expected_mean) / std_err;
    let p = student_t_two_tailed_p(t, n as f64 - 1.0);
    Ok(TTestResult { t, p })
}

/// Tests one observed Betti number against the same dimension of sampled
/// baseline profiles (dimensions beyond a profile's cap count as 0).
pub fn betti_null_test(
    observed: &BettiProfile,
    samples: &[BettiProfile],
    dimension: usize,
) -> Result<TTestResult, StatsError> {
    let values: Vec<f64> = samples.iter().map(|p| p.betti(dimension) as f64).collect();
    one_sample_t_test(&values, observed.betti(dimension) as f64)
}

/// Two-tailed p-value of Student's t with `df` degrees of freedom:
/// `I_x(df/2, 1/2)` at `x = df / (df + t²)`.
pub fn student_t_two_tailed_p(t: f64, df: f64) -> f64 {
    if !t.is_finite() {
        return 0.0;
    }
    regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t))
}

/// Pearson product-moment correlation; errs on constant input.
pub fn pearson_correlation(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewObservations {
            observed: x.len(),
            required: 2,
        });
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(StatsError::DegenerateInput);
    }
    Ok(sxy / libm::sqrt(sxx * syy))
}

/// Spearman rank correlation: Pearson over mid-ranks (ties share the mean
/// of the rank positions they span). Requires at least 3 pairs.
pub fn spearman_correlation(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < 3 {
        return Err(StatsError::TooFewObservations {
            observed: x.len(),
            required: 3,
        });
    }
    let rx = mid_ranks(x);
    let ry = mid_ranks(y);
    pearson_correlation(&rx, &ry)
}

/// 1-based ranks with ties assigned the mean of their rank positions.
fn mid_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = alloc::vec![0.0f64; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // positions i..=j (0-based) share mean rank ((i+1) + (j+1)) / 2
        let shared = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = shared;
        }
        i = j + 1;
    }
    ranks
}

/// Regularized incomplete beta `I_x(a, b)` for `a, b > 0`, `x ∈ [0, 1]`.
fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_prefactor = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b)
        + a * libm::log(x)
        + b * libm::log(1.0 - x);
    let prefactor = libm::exp(ln_prefactor);
    // use the continued fraction on whichever side converges fast
    if x < (a + 1.0) / (a + b + 2.0) {
        prefactor * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - prefactor * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Modified-Lentz evaluation of the incomplete-beta continued fraction.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-15;
    const TINY: f64 = 1e-30;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Lanczos approximation of `ln Γ(x)` for `x > 0`.
fn ln_gamma(x: f64) -> f64 {
    const COEFFICIENTS: [f64; 6] = [
        76.180_091_729_471_46,
        -86.505_320_329_416_77,
        24.014_098_240_830_91,
        -1.231_739_572_450_155,
        0.120_865_097_386_617_9e-2,
        -0.539_523_938_495_3e-5,
    ];
    let tmp = x + 5.5;
    let tmp = tmp - (x + 0.5) * libm::log(tmp);
    let mut series = 1.000_000_000_190_015;
    for (j, &c) in COEFFICIENTS.iter().enumerate() {
        series += c / (x + 1.0 + j as f64);
    }
    -tmp + libm::log(2.506_628_274_631_000_5 * series / x)
}
