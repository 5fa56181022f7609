//! Discrete power-law fitting of integer samples (typically node degrees).
//!
//! The tail `x >= xmin` is modelled as `P(x) = x^-alpha / zeta(alpha, xmin)`
//! with `zeta` the Hurwitz zeta function. Goodness of fit is the
//! Kolmogorov-Smirnov distance between the empirical tail CDF and the fitted
//! CDF, taken as an exact supremum over all integers `>= xmin`.

use serde::{Deserialize, Serialize};

use crate::error::MetricsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XMin {
    /// Pick the candidate threshold that minimizes the KS distance.
    #[default]
    Auto,
    Fixed(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerLawEstimator {
    /// Numerical maximum of the exact discrete log-likelihood.
    #[default]
    ExactDiscrete,
    /// Closed form `1 + n / Σ ln(x / (xmin - 1/2))`. Biased low for small xmin.
    ContinuityCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub alpha: f64,
    pub xmin: u64,
    pub n_tail: usize,
    pub ks_statistic: f64,
    pub estimator: PowerLawEstimator,
}

// B_2 .. B_14
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// `ln ζ(s, q)` for `s > 1`, `q > 0`, via Euler-Maclaurin summation.
///
/// The sum is carried in units of `q^-s` so it neither underflows for large
/// `s` nor loses the leading term.
pub fn ln_hurwitz_zeta(s: f64, q: f64) -> f64 {
    debug_assert!(s > 1.0 && q > 0.0);
    let direct_terms = 10 + (s.ceil() as usize).min(200);
    let mut sum = 0.0;
    for k in 0..direct_terms {
        sum += (q / (q + k as f64)).powf(s);
    }
    let a = q + direct_terms as f64;
    let t = (q / a).powf(s);
    sum += a * t / (s - 1.0) + 0.5 * t;
    // rising factorial s(s+1)...(s+2j-2) / (2j)!, times a^{1-2j}
    let mut coef = s / a;
    let mut factorial = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let term = b / factorial * coef * t;
        sum += term;
        let m = 2.0 * j as f64 + 1.0;
        coef *= (s + m) * (s + m + 1.0) / (a * a);
        factorial *= (m + 2.0) * (m + 3.0);
    }
    -s * q.ln() + sum.ln()
}

pub fn hurwitz_zeta(s: f64, q: f64) -> f64 {
    ln_hurwitz_zeta(s, q).exp()
}

/// Continuity-corrected closed-form exponent for a tail already filtered to `>= xmin`.
pub fn continuity_corrected_alpha(tail: &[u64], xmin: u64) -> f64 {
    let shift = xmin as f64 - 0.5;
    let denom: f64 = tail.iter().map(|&x| (x as f64 / shift).ln()).sum();
    1.0 + tail.len() as f64 / denom
}

/// Maximizes `-alpha Σ ln x - n ln ζ(alpha, xmin)`, which is concave in alpha.
fn exact_discrete_alpha(tail: &[u64], xmin: u64) -> f64 {
    let n = tail.len() as f64;
    let log_sum: f64 = tail.iter().map(|&x| (x as f64).ln()).sum();
    let q = xmin as f64;
    let loglik = |a: f64| -a * log_sum - n * ln_hurwitz_zeta(a, q);

    let mut lo = 1.0 + 1e-9;
    let mut hi = 8.0;
    while hi < 1e4 && loglik(hi * 1.01) > loglik(hi) {
        lo = hi / 2.0;
        hi *= 2.0;
    }
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (loglik(x1), loglik(x2));
    while hi - lo > 1e-10 * hi {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = loglik(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = loglik(x1);
        }
    }
    0.5 * (lo + hi)
}

/// Exact sup over integers `v >= xmin` of |S(v) - F(v)| for an ascending tail.
fn ks_distance(sorted_tail: &[u64], xmin: u64, alpha: f64) -> f64 {
    let n = sorted_tail.len() as f64;
    let ln_norm = ln_hurwitz_zeta(alpha, xmin as f64);
    // fitted P(X <= v)
    let cdf = |v: u64| 1.0 - (ln_hurwitz_zeta(alpha, v as f64 + 1.0) - ln_norm).exp();
    let mut d: f64 = 0.0;
    let mut i = 0;
    let mut prev_empirical = 0.0;
    let mut prev_value = xmin;
    while i < sorted_tail.len() {
        let v = sorted_tail[i];
        // S is flat on [prev_value, v - 1] where F is largest at v - 1
        if v > prev_value {
            d = d.max((cdf(v - 1) - prev_empirical).abs());
        }
        while i < sorted_tail.len() && sorted_tail[i] == v {
            i += 1;
        }
        let empirical = i as f64 / n;
        d = d.max((empirical - cdf(v)).abs());
        prev_empirical = empirical;
        prev_value = v + 1;
    }
    d
}

fn fit_at(sorted: &[u64], xmin: u64, estimator: PowerLawEstimator) -> Result<PowerLawFit, MetricsError> {
    let tail = &sorted[sorted.partition_point(|&x| x < xmin)..];
    let distinct = tail.first().zip(tail.last()).is_some_and(|(a, b)| a != b);
    if tail.len() < 2 || !distinct {
        return Err(MetricsError::InsufficientTail { n_tail: tail.len() });
    }
    let alpha = match estimator {
        PowerLawEstimator::ExactDiscrete => exact_discrete_alpha(tail, xmin),
        PowerLawEstimator::ContinuityCorrected => continuity_corrected_alpha(tail, xmin),
    };
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(MetricsError::InsufficientTail { n_tail: tail.len() });
    }
    Ok(PowerLawFit {
        alpha,
        xmin,
        n_tail: tail.len(),
        ks_statistic: ks_distance(tail, xmin, alpha),
        estimator,
    })
}

pub fn fit_power_law(samples: &[u64], xmin: XMin) -> Result<PowerLawFit, MetricsError> {
    fit_power_law_with(samples, xmin, PowerLawEstimator::default())
}

/// Fits a discrete power law to the samples `>= xmin`.
///
/// With [`XMin::Auto`] every distinct sample value is tried as the threshold
/// and the smallest KS distance wins (ties go to the smaller threshold).
/// Thresholds strictly between two sample values share the upper value's
/// tail while adding model mass where no sample lies, so they are not tried.
pub fn fit_power_law_with(
    samples: &[u64],
    xmin: XMin,
    estimator: PowerLawEstimator,
) -> Result<PowerLawFit, MetricsError> {
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    match xmin {
        XMin::Fixed(0) => Err(MetricsError::DegenerateGraph("xmin must be positive".into())),
        XMin::Fixed(x) => fit_at(&sorted, x, estimator),
        XMin::Auto => {
            let mut candidates: Vec<u64> = sorted.iter().copied().filter(|&x| x >= 1).collect();
            candidates.dedup();
            let mut best: Option<PowerLawFit> = None;
            for x in candidates {
                let Ok(fit) = fit_at(&sorted, x, estimator) else {
                    continue;
                };
                if best.is_none_or(|b| fit.ks_statistic < b.ks_statistic) {
                    best = Some(fit);
                }
            }
            best.ok_or(MetricsError::InsufficientTail {
                n_tail: sorted.iter().filter(|&&x| x >= 1).count(),
            })
        }
    }
}
