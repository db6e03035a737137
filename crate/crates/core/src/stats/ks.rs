//! Two-sample Kolmogorov-Smirnov test.

use std::f64::consts::PI;

use super::StatsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KsMethod {
    /// Kolmogorov limiting distribution at effective size n1 n2 / (n1 + n2).
    Asymptotic,
    /// Permutation distribution of D, conditional on the pooled values.
    Exact,
}

impl KsMethod {
    pub fn name(self) -> &'static str {
        match self {
            KsMethod::Asymptotic => "asymptotic",
            KsMethod::Exact => "exact",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub d_statistic: f64,
    pub p_value: f64,
    pub n1: usize,
    pub n2: usize,
    pub method: KsMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KsOptions {
    /// Largest n1 + n2 accepted by the exact method.
    pub exact_limit: usize,
}

impl Default for KsOptions {
    fn default() -> Self {
        KsOptions { exact_limit: 20 }
    }
}

pub const MIN_SAMPLE: usize = 2;
const SERIES_EPS: f64 = 1e-12;

fn sorted(sample: &[f64]) -> Result<Vec<f64>, StatsError> {
    if sample.iter().any(|x| !x.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let mut v = sample.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Largest ECDF gap scaled by n1 n2, so that D = gap / (n1 n2) exactly.
/// Both one-sided differences are evaluated after every run of tied
/// pooled values.
fn scaled_statistic(a: &[f64], b: &[f64]) -> u64 {
    let (n1, n2) = (a.len() as i64, b.len() as i64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut best = 0i64;
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        best = best.max((i as i64 * n2 - j as i64 * n1).abs());
    }
    best as u64
}

/// The D statistic alone.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64, StatsError> {
    if a.is_empty() || b.is_empty() {
        return Err(StatsError::Empty);
    }
    let (a, b) = (sorted(a)?, sorted(b)?);
    Ok(scaled_statistic(&a, &b) as f64 / (a.len() * b.len()) as f64)
}

/// P(K > lambda) for the Kolmogorov distribution. Uses the alternating
/// series for large lambda and the theta-function form for small lambda;
/// both are truncated once terms drop below 1e-12.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let p = if lambda < 1.18 {
        let mut cdf = 0.0;
        let scale = (2.0 * PI).sqrt() / lambda;
        for k in 1.. {
            let odd = (2 * k - 1) as f64;
            let term = (-(odd * odd) * PI * PI / (8.0 * lambda * lambda)).exp();
            cdf += term;
            if term < SERIES_EPS {
                break;
            }
        }
        1.0 - scale * cdf
    } else {
        let mut sum = 0.0;
        for k in 1.. {
            let kf = k as f64;
            let term = (-2.0 * kf * kf * lambda * lambda).exp();
            sum += if k % 2 == 1 { term } else { -term };
            if term < SERIES_EPS {
                break;
            }
        }
        2.0 * sum
    };
    p.clamp(0.0, 1.0)
}

/// P(D >= observed) under random relabelling of the pooled sample.
///
/// Walks the lattice of (taken from a, taken from b) prefixes of the pooled
/// order, propagating the probability of each prefix under a uniformly
/// random split. Gaps are only checked between distinct pooled values, so
/// ties are handled the same way the statistic handles them. Mass that
/// crosses the observed gap is collected as the p-value.
fn exact_p(a: &[f64], b: &[f64], observed: u64) -> f64 {
    let (n1, n2) = (a.len(), b.len());
    let total = n1 + n2;
    let mut pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    pooled.sort_by(f64::total_cmp);

    let violates = |i: usize, j: usize| {
        (i as i64 * n2 as i64 - j as i64 * n1 as i64).unsigned_abs() >= observed
    };

    // layer[i] = probability of having taken i elements of `a` after k steps
    let mut layer = vec![0.0f64; n1 + 1];
    layer[0] = 1.0;
    let mut p = 0.0;
    for k in 0..total {
        let mut next = vec![0.0f64; n1 + 1];
        let remaining = (total - k) as f64;
        let lo = k.saturating_sub(n2);
        let hi = k.min(n1);
        for i in lo..=hi {
            let mass = layer[i];
            if mass == 0.0 {
                continue;
            }
            let j = k - i;
            if i < n1 {
                next[i + 1] += mass * (n1 - i) as f64 / remaining;
            }
            if j < n2 {
                next[i] += mass * (n2 - j) as f64 / remaining;
            }
        }
        let step = k + 1;
        if step == total || pooled[step - 1] < pooled[step] {
            let lo = step.saturating_sub(n2);
            let hi = step.min(n1);
            for (i, mass) in next.iter_mut().enumerate().take(hi + 1).skip(lo) {
                if *mass > 0.0 && violates(i, step - i) {
                    p += *mass;
                    *mass = 0.0;
                }
            }
        }
        layer = next;
    }
    p.clamp(0.0, 1.0)
}

pub fn ks_two_sample(a: &[f64], b: &[f64], method: KsMethod) -> Result<KsResult, StatsError> {
    ks_two_sample_with(a, b, method, &KsOptions::default())
}

pub fn ks_two_sample_with(
    a: &[f64],
    b: &[f64],
    method: KsMethod,
    options: &KsOptions,
) -> Result<KsResult, StatsError> {
    for s in [a, b] {
        if s.len() < MIN_SAMPLE {
            return Err(StatsError::UndersizedSample {
                n: s.len(),
                min: MIN_SAMPLE,
            });
        }
    }
    let (n1, n2) = (a.len(), b.len());
    if method == KsMethod::Exact && n1 + n2 > options.exact_limit {
        return Err(StatsError::ExactTooLarge {
            n: n1 + n2,
            limit: options.exact_limit,
        });
    }
    let (a, b) = (sorted(a)?, sorted(b)?);
    let scaled = scaled_statistic(&a, &b);
    let d = scaled as f64 / (n1 * n2) as f64;

    let p_value = if scaled == 0 {
        1.0
    } else {
        match method {
            KsMethod::Asymptotic => {
                let effective = (n1 * n2) as f64 / (n1 + n2) as f64;
                kolmogorov_survival(effective.sqrt() * d)
            }
            KsMethod::Exact => exact_p(&a, &b, scaled),
        }
    };
    Ok(KsResult {
        d_statistic: d,
        p_value,
        n1,
        n2,
        method,
    })
}

/// `**` below 0.05, `*` below 0.1, empty otherwise.
pub fn significance_stars(p: f64) -> Result<&'static str, StatsError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(StatsError::PValueOutOfRange(p));
    }
    Ok(if p < 0.05 {
        "**"
    } else if p < 0.1 {
        "*"
    } else {
        ""
    })
}
