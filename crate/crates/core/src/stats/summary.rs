use super::StatsError;

fn sorted(sample: &[f64]) -> Result<Vec<f64>, StatsError> {
    if sample.is_empty() {
        return Err(StatsError::Empty);
    }
    if sample.iter().any(|x| !x.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let mut v = sample.to_vec();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Median of sorted data; midpoint of the two central values for even n.
fn median_sorted(v: &[f64]) -> f64 {
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

pub fn median(sample: &[f64]) -> Result<f64, StatsError> {
    Ok(median_sorted(&sorted(sample)?))
}

/// Sample variance with divisor n - 1.
pub fn sample_variance(sample: &[f64]) -> Result<f64, StatsError> {
    if sample.len() < 2 {
        return Err(StatsError::UndefinedVariance);
    }
    if sample.iter().any(|x| !x.is_finite()) {
        return Err(StatsError::NonFinite);
    }
    let n = sample.len() as f64;
    let mean = sample.iter().sum::<f64>() / n;
    Ok(sample.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub n: usize,
    pub median: f64,
    variance: Option<f64>,
}

impl Summary {
    /// Undefined for a single observation.
    pub fn variance(&self) -> Result<f64, StatsError> {
        self.variance.ok_or(StatsError::UndefinedVariance)
    }
}

pub fn summarize(sample: &[f64]) -> Result<Summary, StatsError> {
    let median = median(sample)?;
    Ok(Summary {
        n: sample.len(),
        median,
        variance: sample_variance(sample).ok(),
    })
}

/// Five-number summary plus outliers for a box-and-whiskers plot.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxplotStats {
    pub min_whisker: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max_whisker: f64,
    /// Ascending.
    pub outliers: Vec<f64>,
}

/// Quartiles are the medians of the lower and upper halves, with the
/// median itself belonging to both halves when n is odd. Whiskers reach
/// the most extreme observations within 1.5 IQR of the quartiles.
pub fn boxplot_stats(sample: &[f64]) -> Result<BoxplotStats, StatsError> {
    let v = sorted(sample)?;
    let n = v.len();
    let half = n.div_ceil(2);
    let q1 = median_sorted(&v[..half]);
    let q3 = median_sorted(&v[n - half..]);
    let iqr = q3 - q1;
    let lo_fence = q1 - 1.5 * iqr;
    let hi_fence = q3 + 1.5 * iqr;

    let inside: Vec<f64> = v
        .iter()
        .copied()
        .filter(|&x| x >= lo_fence && x <= hi_fence)
        .collect();
    let outliers = v
        .iter()
        .copied()
        .filter(|&x| x < lo_fence || x > hi_fence)
        .collect();
    Ok(BoxplotStats {
        min_whisker: inside.first().copied().unwrap_or(q1),
        q1,
        median: median_sorted(&v),
        q3,
        max_whisker: inside.last().copied().unwrap_or(q3),
        outliers,
    })
}
