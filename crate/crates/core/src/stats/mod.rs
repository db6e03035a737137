//! Descriptive statistics, box-plot summaries, and the two-sample
//! Kolmogorov-Smirnov test.

mod ks;
mod summary;

use thiserror::Error;

pub use ks::{
    kolmogorov_survival, ks_statistic, ks_two_sample, ks_two_sample_with, significance_stars,
    KsMethod, KsOptions, KsResult, MIN_SAMPLE,
};
pub use summary::{boxplot_stats, median, sample_variance, summarize, BoxplotStats, Summary};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum StatsError {
    #[error("empty sample")]
    Empty,
    #[error("variance is undefined for fewer than two observations")]
    UndefinedVariance,
    #[error("sample contains NaN or infinite values")]
    NonFinite,
    #[error("sample of size {n} is below the minimum of {min}")]
    UndersizedSample { n: usize, min: usize },
    #[error("exact test requested for n1 + n2 = {n}, above the limit of {limit}")]
    ExactTooLarge { n: usize, limit: usize },
    #[error("p-value {0} is outside [0, 1]")]
    PValueOutOfRange(f64),
}
