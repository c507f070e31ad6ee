//! Z-test for the similarity of two equal-length words.
//!
//! Under the null both words are i.i.d. uniform, and the LCS length is
//! approximately normal with mean `gamma_star * n` and variance `c * n`.
//! High similarity inflates the LCS, so the test rejects in the upper tail:
//! `S > z_{1-alpha}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::lcs::Engine;
use crate::montecarlo::{lcs_samples, mean_variance};
use crate::rng::RngHandle;
use crate::sequence::{check_alphabet, Sequence};
use crate::seqgen::PairSpec;

pub const DEFAULT_ALPHA: f64 = 0.05;

/// Mean rate of the LCS of two uniform words over four letters, estimated
/// from 529 pairs of length 10^6.
pub const PUBLISHED_GAMMA_STAR_4: f64 = 0.654;
/// Variance rate from the same 529 pairs.
pub const PUBLISHED_C_4: f64 = 0.0075;
pub const PUBLISHED_N_CAL: usize = 1_000_000;
pub const PUBLISHED_REPS_CAL: usize = 529;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestParams {
    pub gamma_star: f64,
    pub c: f64,
    pub alpha: f64,
    pub n_cal: usize,
    pub reps_cal: usize,
    /// Seed of the calibration run; `None` for published constants.
    pub seed: Option<u64>,
}

impl TestParams {
    pub fn new(gamma_star: f64, c: f64, alpha: f64, n_cal: usize, reps_cal: usize) -> Result<Self> {
        let params = TestParams { gamma_star, c, alpha, n_cal, reps_cal, seed: None };
        params.validate()?;
        Ok(params)
    }

    /// The four-letter calibration reported for length 10^6, at `alpha = 0.05`.
    pub fn published_k4() -> Self {
        TestParams {
            gamma_star: PUBLISHED_GAMMA_STAR_4,
            c: PUBLISHED_C_4,
            alpha: DEFAULT_ALPHA,
            n_cal: PUBLISHED_N_CAL,
            reps_cal: PUBLISHED_REPS_CAL,
            seed: None,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Result<Self> {
        let params = TestParams { alpha, ..self };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma_star > 0.0 && self.gamma_star < 1.0) {
            return Err(Error::invalid(format!("gamma_star {} not in (0, 1)", self.gamma_star)));
        }
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(Error::invalid(format!("variance rate c = {} must be positive", self.c)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::invalid(format!("alpha {} not in (0, 1)", self.alpha)));
        }
        Ok(())
    }

    /// Upper-tail critical value `z_{1-alpha}`.
    pub fn critical_value(&self) -> Result<f64> {
        normal_quantile(1.0 - self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub lc_obs: usize,
    pub statistic_s: f64,
    pub critical_value: f64,
    pub reject_null: bool,
}

/// Inverse of the standard normal CDF.
pub fn normal_quantile(prob: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::invalid(format!("quantile level {prob} not in (0, 1)")));
    }
    let std = Normal::standard();
    Ok(std.inverse_cdf(prob))
}

/// `S = (lc_obs - gamma_star * n) / sqrt(c * n)`.
pub fn z_statistic(lc_obs: f64, n: usize, params: &TestParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("sequence length must be positive"));
    }
    if params.c.is_nan() || params.c <= 0.0 {
        return Err(Error::invalid("variance rate c must be positive"));
    }
    let n = n as f64;
    Ok((lc_obs - params.gamma_star * n) / (params.c * n).sqrt())
}

/// Estimates `(gamma_star, c)` from `reps_cal` uniform pairs of length `n_cal`.
pub fn calibrate(
    n_cal: usize,
    reps_cal: usize,
    alphabet_size: usize,
    alpha: f64,
    rng: RngHandle,
    engine: Engine,
) -> Result<TestParams> {
    check_alphabet(alphabet_size)?;
    if reps_cal < 2 {
        return Err(Error::invalid("calibration needs at least two pairs"));
    }
    if n_cal == 0 {
        return Err(Error::invalid("calibration length must be positive"));
    }
    let gen = PairSpec::uniform(n_cal, alphabet_size)?;
    let samples: Vec<f64> = lcs_samples(&gen, reps_cal, rng, engine)?
        .into_iter()
        .map(|v| v as f64)
        .collect();
    let (mean, variance) = mean_variance(&samples);
    let params = TestParams {
        gamma_star: mean / n_cal as f64,
        c: variance / n_cal as f64,
        alpha,
        n_cal,
        reps_cal,
        seed: Some(rng.master_seed),
    };
    params.validate()?;
    Ok(params)
}

pub fn run_test(x: &Sequence, y: &Sequence, params: &TestParams, engine: Engine) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "test needs equal lengths, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    params.validate()?;
    let lc_obs = engine.lcs(x, y)?;
    decide(lc_obs, x.len(), params)
}

/// Test decision for an already computed LCS length at nominal length `n`.
pub fn decide(lc_obs: usize, n: usize, params: &TestParams) -> Result<TestResult> {
    let statistic_s = z_statistic(lc_obs as f64, n, params)?;
    let critical_value = params.critical_value()?;
    Ok(TestResult {
        lc_obs,
        statistic_s,
        critical_value,
        reject_null: statistic_s > critical_value,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerEstimate {
    /// Fraction of replicates with `S <= critical value`.
    pub p: f64,
    pub reps: usize,
    pub non_rejections: usize,
    pub critical_value: f64,
    /// Per-replicate statistics, in replicate order.
    pub statistics: Vec<f64>,
}

/// Runs the test on `reps` pairs drawn from `gen` and reports how often the
/// null survives. The statistic uses the generator's nominal length.
pub fn power_estimate(
    gen: &PairSpec,
    params: &TestParams,
    reps: usize,
    rng: RngHandle,
    engine: Engine,
) -> Result<PowerEstimate> {
    if reps == 0 {
        return Err(Error::invalid("need at least one replicate"));
    }
    params.validate()?;
    let n = gen.len();
    let lengths = lcs_samples(gen, reps, rng, engine)?;
    let results: Vec<TestResult> = lengths
        .par_iter()
        .map(|&lc| decide(lc, n, params))
        .collect::<Result<_>>()?;
    let non_rejections = results.iter().filter(|r| !r.reject_null).count();
    Ok(PowerEstimate {
        p: non_rejections as f64 / reps as f64,
        reps,
        non_rejections,
        critical_value: params.critical_value()?,
        statistics: results.iter().map(|r| r.statistic_s).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn paper() -> TestParams {
        TestParams::published_k4()
    }

    #[test]
    fn statistic_examples() {
        let p = paper();
        assert_eq!(z_statistic(6540.0, 10_000, &p).unwrap(), 0.0);
        let s = z_statistic(6540.0 + 75f64.sqrt(), 10_000, &p).unwrap();
        assert!((s - 1.0).abs() < 1e-12, "{s}");
        let s = z_statistic(6626.60, 10_000, &p).unwrap();
        assert!((s - 10.0).abs() < 1e-3, "{s}");
        assert!(z_statistic(1.0, 0, &p).is_err());
        let bad = TestParams { c: 0.0, ..p };
        assert!(z_statistic(1.0, 10, &bad).is_err());
    }

    #[test]
    fn statistic_is_increasing_affine() {
        let p = paper();
        let s: Vec<f64> = (6000..6010).map(|v| z_statistic(v as f64, 10_000, &p).unwrap()).collect();
        let step = s[1] - s[0];
        for w in s.windows(2) {
            assert!(w[1] > w[0]);
            assert!((w[1] - w[0] - step).abs() < 1e-12);
        }
    }

    #[test]
    fn quantiles() {
        assert!(normal_quantile(0.5).unwrap().abs() < 1e-12);
        assert!((normal_quantile(0.95).unwrap() - 1.644_853_626_951_472_2).abs() < 1e-9);
        for i in 1..100 {
            let p = i as f64 / 100.0;
            let sum = normal_quantile(p).unwrap() + normal_quantile(1.0 - p).unwrap();
            assert!(sum.abs() < 1e-9, "{p}");
        }
        for bad in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(normal_quantile(bad).is_err());
        }
    }

    #[test]
    fn params_validation() {
        assert!(TestParams::new(0.654, 0.0075, 0.05, 10, 10).is_ok());
        assert!(TestParams::new(1.2, 0.0075, 0.05, 10, 10).is_err());
        assert!(TestParams::new(0.654, -1.0, 0.05, 10, 10).is_err());
        assert!(TestParams::new(0.654, 0.0075, 1.0, 10, 10).is_err());
    }

    #[test]
    fn identical_words_reject() {
        let gen = PairSpec::Identical { n: 2_000, alphabet_size: 4 };
        let (x, y) = gen.generate(&mut RngHandle::new(9).rng()).unwrap();
        let res = run_test(&x, &y, &paper(), Engine::BitParallel).unwrap();
        assert_eq!(res.lc_obs, 2_000);
        assert!(res.reject_null);
        assert_eq!(res.reject_null, res.statistic_s > res.critical_value);
    }

    #[test]
    fn length_mismatch_is_error() {
        let x = Sequence::from_digits("0123", 4).unwrap();
        let y = Sequence::from_digits("012", 4).unwrap();
        assert!(matches!(run_test(&x, &y, &paper(), Engine::Dp), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn identical_generator_has_zero_p() {
        let gen = PairSpec::Identical { n: 500, alphabet_size: 4 };
        let est = power_estimate(&gen, &paper(), 20, RngHandle::new(1), Engine::BitParallel).unwrap();
        assert_eq!(est.p, 0.0);
        assert_eq!(est.statistics.len(), 20);
    }

    #[test]
    fn calibrate_rejects_bad_alphabet() {
        assert!(calibrate(100, 10, 1, 0.05, RngHandle::new(0), Engine::Dp).is_err());
        assert!(calibrate(100, 1, 4, 0.05, RngHandle::new(0), Engine::Dp).is_err());
    }

    #[test]
    fn small_calibration_is_plausible() {
        let p = calibrate(2_000, 40, 4, 0.05, RngHandle::new(77), Engine::BitParallel).unwrap();
        assert!(p.gamma_star > 0.6 && p.gamma_star < 0.67, "{}", p.gamma_star);
        assert_eq!(p.seed, Some(77));
    }
}
