//! Random words and the constructions used to probe the similarity test.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{check_alphabet, Sequence};

const SUM_TOLERANCE: f64 = 1e-12;

/// Default number of pieces `Z` is cut into for the mixture alternatives.
pub const DEFAULT_MIXTURE_PIECES: usize = 100;

/// Default segment count for the common-insertion alternatives. With this
/// value the non-rejection rates of the `m_len` ladder at `n = 10^4` line up
/// with the published ones (0, 0.2284, 0.4286, 0.6119, 0.8541, 0.9884).
pub const DEFAULT_LADDER_SEGMENTS: usize = 68;

/// How mixture outputs are brought to their final length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum MixtureLength {
    /// Keep only `X'` plus the routed pieces. Outputs are generally shorter
    /// than `n` and differ in length; the test still uses the nominal `n`.
    #[default]
    Unpadded,
    /// Append fresh uniform symbols on the right until both reach `n`.
    PadRight,
}

/// Per-symbol probabilities of an i.i.d. letter source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct DistributionSpec {
    probs: Vec<f64>,
    cumulative: Vec<f64>,
    uniform: bool,
}

impl DistributionSpec {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_alphabet(probs.len())?;
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid("probabilities must be finite and nonnegative"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::invalid(format!("probabilities sum to {total}, not 1")));
        }
        let uniform = probs.iter().all(|&p| p == probs[0]);
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        Ok(DistributionSpec { probs, cumulative, uniform })
    }

    pub fn uniform(alphabet_size: usize) -> Result<Self> {
        check_alphabet(alphabet_size)?;
        Self::new(vec![1.0 / alphabet_size as f64; alphabet_size])
            .or_else(|_| {
                // 1/k may not sum to exactly 1 for awkward k; pin the last entry.
                let mut probs = vec![1.0 / alphabet_size as f64; alphabet_size];
                let head: f64 = probs[..alphabet_size - 1].iter().sum();
                probs[alphabet_size - 1] = 1.0 - head;
                Self::new(probs)
            })
            .map(|mut d| {
                d.uniform = true;
                d
            })
    }

    /// Binary source with `P(0) = p0`.
    pub fn bernoulli(p0: f64) -> Result<Self> {
        Self::new(vec![p0, 1.0 - p0])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn alphabet_size(&self) -> usize {
        self.probs.len()
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u8 {
        if self.uniform {
            return rng.random_range(0..self.probs.len() as u32) as u8;
        }
        let u: f64 = rng.random();
        let last = self.probs.len() - 1;
        self.cumulative[..last]
            .iter()
            .position(|&c| u < c)
            .unwrap_or(last) as u8
    }
}

impl TryFrom<Vec<f64>> for DistributionSpec {
    type Error = Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        DistributionSpec::new(probs)
    }
}

impl From<DistributionSpec> for Vec<f64> {
    fn from(d: DistributionSpec) -> Self {
        d.probs
    }
}

/// Routing probabilities for each piece of the shared word.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub p_both: f64,
    pub p_x_only: f64,
    pub p_y_only: f64,
    pub p_neither: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Route {
    Both,
    XOnly,
    YOnly,
    Neither,
}

impl MixtureSpec {
    pub fn new(p_both: f64, p_x_only: f64, p_y_only: f64, p_neither: f64) -> Result<Self> {
        let mix = MixtureSpec { p_both, p_x_only, p_y_only, p_neither };
        mix.validate()?;
        Ok(mix)
    }

    pub fn validate(&self) -> Result<()> {
        let ps = [self.p_both, self.p_x_only, self.p_y_only, self.p_neither];
        if ps.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::invalid("mixture probabilities must be finite and nonnegative"));
        }
        let total: f64 = ps.iter().sum();
        if (total - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::invalid(format!("mixture probabilities sum to {total}, not 1")));
        }
        Ok(())
    }

    fn route<R: Rng + ?Sized>(&self, rng: &mut R) -> Route {
        let u: f64 = rng.random();
        if u < self.p_both {
            Route::Both
        } else if u < self.p_both + self.p_x_only {
            Route::XOnly
        } else if u < self.p_both + self.p_x_only + self.p_y_only {
            Route::YOnly
        } else {
            Route::Neither
        }
    }
}

/// `n` symbols drawn independently from `dist`.
pub fn gen_iid<R: Rng + ?Sized>(n: usize, dist: &DistributionSpec, rng: &mut R) -> Sequence {
    let symbols = (0..n).map(|_| dist.sample(rng)).collect();
    Sequence::from_raw(symbols, dist.alphabet_size())
}

fn gen_uniform<R: Rng + ?Sized>(n: usize, alphabet_size: usize, rng: &mut R) -> Sequence {
    let symbols = (0..n)
        .map(|_| rng.random_range(0..alphabet_size as u32) as u8)
        .collect();
    Sequence::from_raw(symbols, alphabet_size)
}

/// Bounds of `parts` contiguous pieces of a length-`len` word. The first
/// `len % parts` pieces are one symbol longer than the rest.
fn split_points(len: usize, parts: usize) -> Vec<usize> {
    let (base, extra) = (len / parts, len % parts);
    let mut bounds = Vec::with_capacity(parts + 1);
    let mut at = 0;
    bounds.push(at);
    for i in 0..parts {
        at += base + usize::from(i < extra);
        bounds.push(at);
    }
    bounds
}

/// Cuts `z` into `s` pieces and `x` into `s + 1` pieces and interleaves
/// them as `x_1 z_1 x_2 z_2 .. z_s x_{s+1}`.
pub fn insert_segments(z: &Sequence, x: &Sequence, s: usize) -> Result<Sequence> {
    if z.alphabet_size() != x.alphabet_size() {
        return Err(Error::invalid("inserted word uses a different alphabet"));
    }
    if s == 0 || z.len() < s || x.len() < s + 1 {
        return Err(Error::invalid(format!(
            "segment count {s} needs |z| >= s and |x| >= s + 1 (|z| = {}, |x| = {})",
            z.len(),
            x.len()
        )));
    }
    let zb = split_points(z.len(), s);
    let xb = split_points(x.len(), s + 1);
    let (zs, xs) = (z.symbols(), x.symbols());
    let mut out = Vec::with_capacity(z.len() + x.len());
    for i in 0..s {
        out.extend_from_slice(&xs[xb[i]..xb[i + 1]]);
        out.extend_from_slice(&zs[zb[i]..zb[i + 1]]);
    }
    out.extend_from_slice(&xs[xb[s]..xb[s + 1]]);
    Ok(Sequence::from_raw(out, x.alphabet_size()))
}

fn check_alt_sizes(n: usize, m_len: usize, s: usize) -> Result<()> {
    if m_len == 0 || m_len >= n {
        return Err(Error::invalid(format!("need 0 < m_len < n, got m_len={m_len}, n={n}")));
    }
    if s == 0 || n - m_len < s || m_len < s + 1 {
        return Err(Error::invalid(format!(
            "segment count {s} incompatible with m_len={m_len}, n={n}"
        )));
    }
    Ok(())
}

/// Two uniform words of length `m_len` with the same uniform word of length
/// `n - m_len` spliced into both at `s` evenly spaced gaps.
pub fn gen_alt_common<R: Rng + ?Sized>(
    n: usize,
    m_len: usize,
    s: usize,
    alphabet_size: usize,
    rng: &mut R,
) -> Result<(Sequence, Sequence)> {
    check_alphabet(alphabet_size)?;
    check_alt_sizes(n, m_len, s)?;
    let x = gen_uniform(m_len, alphabet_size, rng);
    let y = gen_uniform(m_len, alphabet_size, rng);
    let z = gen_uniform(n - m_len, alphabet_size, rng);
    Ok((insert_segments(&z, &x, s)?, insert_segments(&z, &y, s)?))
}

/// Like [`gen_alt_common`], but each of the `s` pieces of the shared word is
/// routed independently to both words, one of them, or neither. `length`
/// decides whether the outputs are padded back to `n`.
pub fn gen_alt_mixture<R: Rng + ?Sized>(
    n: usize,
    m_len: usize,
    s: usize,
    mix: &MixtureSpec,
    length: MixtureLength,
    alphabet_size: usize,
    rng: &mut R,
) -> Result<(Sequence, Sequence)> {
    check_alphabet(alphabet_size)?;
    check_alt_sizes(n, m_len, s)?;
    mix.validate()?;
    let x = gen_uniform(m_len, alphabet_size, rng);
    let y = gen_uniform(m_len, alphabet_size, rng);
    let z = gen_uniform(n - m_len, alphabet_size, rng);
    let routes: Vec<Route> = (0..s).map(|_| mix.route(rng)).collect();

    let zb = split_points(z.len(), s);
    let xb = split_points(m_len, s + 1);
    let assemble = |base: &Sequence, keep: fn(Route) -> bool| {
        let mut out = Vec::with_capacity(n);
        for (i, &route) in routes.iter().enumerate() {
            out.extend_from_slice(&base.symbols()[xb[i]..xb[i + 1]]);
            if keep(route) {
                out.extend_from_slice(&z.symbols()[zb[i]..zb[i + 1]]);
            }
        }
        out.extend_from_slice(&base.symbols()[xb[s]..xb[s + 1]]);
        out
    };
    let mut xo = assemble(&x, |r| matches!(r, Route::Both | Route::XOnly));
    let mut yo = assemble(&y, |r| matches!(r, Route::Both | Route::YOnly));
    if length == MixtureLength::PadRight {
        for out in [&mut xo, &mut yo] {
            while out.len() < n {
                out.push(rng.random_range(0..alphabet_size as u32) as u8);
            }
        }
    }
    Ok((
        Sequence::from_raw(xo, alphabet_size),
        Sequence::from_raw(yo, alphabet_size),
    ))
}

/// A recipe for drawing one pair of words per replicate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairSpec {
    /// Two independent i.i.d. words.
    Iid { n: usize, dist: DistributionSpec },
    /// The same pair every time.
    Fixed { a: Sequence, b: Sequence },
    /// A uniform word paired with itself.
    Identical { n: usize, alphabet_size: usize },
    AltCommon { n: usize, m_len: usize, segments: usize, alphabet_size: usize },
    AltMixture {
        n: usize,
        m_len: usize,
        segments: usize,
        mix: MixtureSpec,
        #[serde(default)]
        length: MixtureLength,
        alphabet_size: usize,
    },
}

impl PairSpec {
    pub fn uniform(n: usize, alphabet_size: usize) -> Result<Self> {
        Ok(PairSpec::Iid { n, dist: DistributionSpec::uniform(alphabet_size)? })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            PairSpec::Iid { .. } => Ok(()),
            PairSpec::Fixed { a, b } => {
                if a.alphabet_size() != b.alphabet_size() {
                    return Err(Error::invalid("fixed pair uses two alphabets"));
                }
                Ok(())
            }
            PairSpec::Identical { alphabet_size, .. } => check_alphabet(*alphabet_size),
            PairSpec::AltCommon { n, m_len, segments, alphabet_size } => {
                check_alphabet(*alphabet_size)?;
                check_alt_sizes(*n, *m_len, *segments)
            }
            PairSpec::AltMixture { n, m_len, segments, mix, alphabet_size, .. } => {
                check_alphabet(*alphabet_size)?;
                check_alt_sizes(*n, *m_len, *segments)?;
                mix.validate()
            }
        }
    }

    /// Nominal length `n` of the generated words. Unpadded mixtures may
    /// produce shorter words.
    pub fn len(&self) -> usize {
        match self {
            PairSpec::Iid { n, .. }
            | PairSpec::Identical { n, .. }
            | PairSpec::AltCommon { n, .. }
            | PairSpec::AltMixture { n, .. } => *n,
            PairSpec::Fixed { a, .. } => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Sequence, Sequence)> {
        match self {
            PairSpec::Iid { n, dist } => Ok((gen_iid(*n, dist, rng), gen_iid(*n, dist, rng))),
            PairSpec::Fixed { a, b } => Ok((a.clone(), b.clone())),
            PairSpec::Identical { n, alphabet_size } => {
                check_alphabet(*alphabet_size)?;
                let x = gen_uniform(*n, *alphabet_size, rng);
                Ok((x.clone(), x))
            }
            PairSpec::AltCommon { n, m_len, segments, alphabet_size } => {
                gen_alt_common(*n, *m_len, *segments, *alphabet_size, rng)
            }
            PairSpec::AltMixture { n, m_len, segments, mix, length, alphabet_size } => {
                gen_alt_mixture(*n, *m_len, *segments, mix, *length, *alphabet_size, rng)
            }
        }
    }
}
