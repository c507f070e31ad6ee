//! Replicated LCS statistics, variance scans and power-law fits.
//!
//! Replicate `r` always draws from stream `r` of the experiment's seed, and
//! per-replicate results are gathered in index order before any reduction,
//! so every summary is identical for any rayon pool size.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lcs::Engine;
use crate::rng::RngHandle;
use crate::seqgen::{DistributionSpec, PairSpec};

pub const SCAN_CSV_SCHEMA: &str = "lcsim.scan/1";
pub const SCAN_CSV_HEADER: &str = "n,reps,mean,variance,stderr";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.counts.len() as f64
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `(left edge, right edge, count)` for every bin.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64, u64)> + '_ {
        let w = self.bin_width();
        self.counts.iter().enumerate().map(move |(i, &c)| {
            let left = self.lo + w * i as f64;
            let right = if i + 1 == self.counts.len() {
                self.hi
            } else {
                self.lo + w * (i + 1) as f64
            };
            (left, right, c)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub n: usize,
    pub reps: usize,
    pub mean: f64,
    /// Unbiased, `reps - 1` denominator.
    pub variance: f64,
    pub std_error_mean: f64,
    pub histogram: Option<Histogram>,
}

impl SampleStats {
    pub fn from_samples(n: usize, samples: &[f64]) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::invalid("need at least two replicates"));
        }
        let (mean, variance) = mean_variance(samples);
        Ok(SampleStats {
            n,
            reps: samples.len(),
            mean,
            variance,
            std_error_mean: (variance / samples.len() as f64).sqrt(),
            histogram: None,
        })
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.n, self.reps, self.mean, self.variance, self.std_error_mean
        )
    }
}

/// Two-pass mean and unbiased variance.
pub fn mean_variance(samples: &[f64]) -> (f64, f64) {
    let len = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / len;
    if samples.len() < 2 {
        return (mean, 0.0);
    }
    let (ss, comp) = samples.iter().fold((0.0, 0.0), |(ss, comp), &x| {
        let d = x - mean;
        (ss + d * d, comp + d)
    });
    // Corrected two-pass: removes the rounding error left in `mean`.
    let variance = ((ss - comp * comp / len) / (len - 1.0)).max(0.0);
    (mean, variance)
}

/// LCS lengths of `reps` independent pairs, in replicate order.
pub fn lcs_samples(gen: &PairSpec, reps: usize, rng: RngHandle, engine: Engine) -> Result<Vec<usize>> {
    gen.validate()?;
    (0..reps)
        .into_par_iter()
        .map(|r| {
            let mut source = rng.stream(r as u64).rng();
            let (a, b) = gen.generate(&mut source)?;
            engine.lcs(&a, &b)
        })
        .collect()
}

pub fn estimate_stats(gen: &PairSpec, reps: usize, rng: RngHandle, engine: Engine) -> Result<SampleStats> {
    if reps < 2 {
        return Err(Error::invalid("need at least two replicates"));
    }
    let samples: Vec<f64> = lcs_samples(gen, reps, rng, engine)?
        .into_iter()
        .map(|v| v as f64)
        .collect();
    SampleStats::from_samples(gen.len(), &samples)
}

/// Estimates LCS statistics of i.i.d. pairs at each grid length.
///
/// Each grid point draws from its own seed, `rng.derive(n)`. `on_point` sees
/// every point as soon as it is finished.
pub fn variance_scan<F>(
    grid: &[usize],
    dist: &DistributionSpec,
    reps: usize,
    rng: RngHandle,
    engine: Engine,
    mut on_point: F,
) -> Result<Vec<SampleStats>>
where
    F: FnMut(&SampleStats) -> Result<()>,
{
    if grid.is_empty() {
        return Err(Error::invalid("length grid is empty"));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("length grid must be strictly increasing"));
    }
    let mut out = Vec::with_capacity(grid.len());
    for &n in grid {
        let gen = PairSpec::Iid { n, dist: dist.clone() };
        let stats = estimate_stats(&gen, reps, rng.derive(n as u64), engine)?;
        on_point(&stats)?;
        out.push(stats);
    }
    Ok(out)
}

/// `variance ~ coefficient * n^slope` fitted by least squares in log-log space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept_coeff: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

pub fn fit_power_law(points: &[(f64, f64)]) -> Result<RegressionFit> {
    if points.len() < 2 {
        return Err(Error::invalid("need at least two points to fit"));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite())) {
        return Err(Error::invalid("power-law fit needs positive finite values"));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let len = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / len;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::invalid("all abscissae coincide"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = logs
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - sse / syy).clamp(0.0, 1.0) };
    Ok(RegressionFit {
        slope,
        intercept_coeff: intercept.exp(),
        r_squared,
        points_used: points.len(),
    })
}

/// Equal-width bins over `[min, max]`; the maximum lands in the last bin.
pub fn histogram(samples: &[f64], bin_count: usize) -> Result<Histogram> {
    if samples.is_empty() {
        return Err(Error::invalid("histogram of an empty sample"));
    }
    if bin_count == 0 {
        return Err(Error::invalid("histogram needs at least one bin"));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("histogram samples must be finite"));
    }
    let lo = samples.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut counts = vec![0u64; bin_count];
    let width = (hi - lo) / bin_count as f64;
    for &x in samples {
        let bin = if width == 0.0 {
            0
        } else {
            (((x - lo) / width) as usize).min(bin_count - 1)
        };
        counts[bin] += 1;
    }
    Ok(Histogram { lo, hi, counts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::Sequence;

    #[test]
    fn constant_pair_has_zero_variance() {
        let a = Sequence::from_digits("0101", 2).unwrap();
        let gen = PairSpec::Fixed { a: a.clone(), b: a };
        let stats = estimate_stats(&gen, 10, RngHandle::new(1), Engine::Wmmm).unwrap();
        assert_eq!(stats.mean, 4.0);
        assert_eq!(stats.variance, 0.0);
        assert_eq!(stats.std_error_mean, 0.0);
    }

    #[test]
    fn length_one_mean_is_one_half() {
        // LC_1 is Bernoulli(1/2) for uniform binary letters.
        let gen = PairSpec::uniform(1, 2).unwrap();
        let reps = 20_000;
        let stats = estimate_stats(&gen, reps, RngHandle::new(3), Engine::Dp).unwrap();
        let sigma = (0.25f64 / reps as f64).sqrt();
        assert!((stats.mean - 0.5).abs() < 3.0 * sigma, "{}", stats.mean);
        assert!((stats.std_error_mean - (stats.variance / reps as f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_single_replicate() {
        let gen = PairSpec::uniform(4, 2).unwrap();
        assert!(estimate_stats(&gen, 1, RngHandle::new(0), Engine::Dp).is_err());
    }

    #[test]
    fn two_pass_variance_survives_large_offset() {
        let base = 1e9;
        let samples: Vec<f64> = (0..10_000).map(|i| base + (i % 7) as f64).collect();
        let (_, var) = mean_variance(&samples);
        let shifted: Vec<f64> = samples.iter().map(|x| x - base).collect();
        let (_, reference) = mean_variance(&shifted);
        assert!(((var - reference) / reference).abs() < 1e-9);
    }

    #[test]
    fn one_point_scan_is_estimate_stats() {
        let dist = DistributionSpec::uniform(2).unwrap();
        let h = RngHandle::new(42);
        let mut rows = Vec::new();
        let scan = variance_scan(&[64], &dist, 50, h, Engine::BitParallel, |s| {
            rows.push(s.csv_row());
            Ok(())
        })
        .unwrap();
        let direct = estimate_stats(
            &PairSpec::Iid { n: 64, dist },
            50,
            h.derive(64),
            Engine::BitParallel,
        )
        .unwrap();
        assert_eq!(scan, vec![direct]);
        assert_eq!(rows.len(), 1);
    }

    #[test]
    fn scan_grid_validation() {
        let dist = DistributionSpec::uniform(2).unwrap();
        let noop = |_: &SampleStats| Ok(());
        assert!(variance_scan(&[], &dist, 5, RngHandle::new(0), Engine::Dp, noop).is_err());
        assert!(variance_scan(&[10, 10], &dist, 5, RngHandle::new(0), Engine::Dp, noop).is_err());
    }

    #[test]
    fn exact_power_law_is_recovered() {
        let pts: Vec<(f64, f64)> = [1e3, 2e3, 5e3, 1e4, 1e5]
            .iter()
            .map(|&n| (n, 0.03 * f64::powf(n, 0.9)))
            .collect();
        let fit = fit_power_law(&pts).unwrap();
        assert!((fit.slope - 0.9).abs() < 1e-10);
        assert!((fit.intercept_coeff - 0.03).abs() < 1e-10);
        assert!((fit.r_squared - 1.0).abs() < 1e-10);
        assert_eq!(fit.points_used, 5);
    }

    #[test]
    fn two_points_fit_perfectly() {
        let fit = fit_power_law(&[(10.0, 3.0), (20.0, 5.0)]).unwrap();
        assert_eq!(fit.r_squared, 1.0);
    }

    #[test]
    fn fit_rejects_bad_points() {
        assert!(fit_power_law(&[(10.0, 3.0)]).is_err());
        assert!(fit_power_law(&[(10.0, 3.0), (20.0, 0.0)]).is_err());
        assert!(fit_power_law(&[(10.0, 3.0), (10.0, 4.0)]).is_err());
    }

    #[test]
    fn histogram_cases() {
        let h = histogram(&[3.5], 1).unwrap();
        assert_eq!(h.counts, vec![1]);
        let grid: Vec<f64> = (0..10).map(f64::from).collect();
        assert_eq!(histogram(&grid, 10).unwrap().counts, vec![1; 10]);
        assert!(histogram(&[], 3).is_err());
        assert!(histogram(&[1.0], 0).is_err());
        let h = histogram(&[1.0, 1.0, 1.0], 4).unwrap();
        assert_eq!(h.counts, vec![3, 0, 0, 0]);
    }
}
