//! Classical reference walks: the binomial walk of a single coin, the
//! correlation coefficient of a coin pair, and walks driven by a correlated
//! coin pair, both exact and sampled.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, WalkError};
use crate::state::Distribution;

/// Joint outcome of one toss of a coin pair.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    HH,
    HT,
    TH,
    TT,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::HH, Outcome::HT, Outcome::TH, Outcome::TT];
}

const JOINT_TOL: f64 = 1e-12;

/// Probabilities of the four joint outcomes of a coin pair.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct JointCoinDistribution {
    p_hh: f64,
    p_ht: f64,
    p_th: f64,
    p_tt: f64,
}

impl JointCoinDistribution {
    pub fn new(p_hh: f64, p_ht: f64, p_th: f64, p_tt: f64) -> Result<Self> {
        let ps = [p_hh, p_ht, p_th, p_tt];
        if ps.iter().any(|p| !p.is_finite()) {
            return Err(WalkError::NonFinite);
        }
        if ps.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(WalkError::InvalidProbability(format!("outcome probabilities {ps:?} outside [0, 1]")));
        }
        let sum: f64 = ps.iter().sum();
        if (sum - 1.0).abs() > JOINT_TOL {
            return Err(WalkError::InvalidProbability(format!("outcome probabilities sum to {sum}")));
        }
        Ok(JointCoinDistribution { p_hh, p_ht, p_th, p_tt })
    }

    /// Pair of fair coins with correlation `rho`:
    /// `p_hh = p_tt = (1 + rho)/4`, `p_ht = p_th = (1 - rho)/4`.
    pub fn from_correlation(rho: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&rho) {
            return Err(WalkError::InvalidProbability(format!("correlation {rho} outside [-1, 1]")));
        }
        let same = (1.0 + rho) / 4.0;
        let diff = (1.0 - rho) / 4.0;
        Self::new(same, diff, diff, same)
    }

    /// Fair pair that always shows matching faces.
    pub fn maximally_correlated() -> Self {
        JointCoinDistribution { p_hh: 0.5, p_ht: 0.0, p_th: 0.0, p_tt: 0.5 }
    }

    pub fn independent_fair() -> Self {
        JointCoinDistribution { p_hh: 0.25, p_ht: 0.25, p_th: 0.25, p_tt: 0.25 }
    }

    pub fn prob(&self, o: Outcome) -> f64 {
        match o {
            Outcome::HH => self.p_hh,
            Outcome::HT => self.p_ht,
            Outcome::TH => self.p_th,
            Outcome::TT => self.p_tt,
        }
    }
}

/// Walker displacement for each joint outcome.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct MoveMap {
    pub hh: i64,
    pub ht: i64,
    pub th: i64,
    pub tt: i64,
}

impl Default for MoveMap {
    /// Matching faces move the walker one site, mixed faces rest.
    fn default() -> Self {
        MoveMap { hh: 1, ht: 0, th: 0, tt: -1 }
    }
}

impl MoveMap {
    pub fn get(&self, o: Outcome) -> i64 {
        match o {
            Outcome::HH => self.hh,
            Outcome::HT => self.ht,
            Outcome::TH => self.th,
            Outcome::TT => self.tt,
        }
    }

    fn max_abs(&self) -> i64 {
        Outcome::ALL.iter().map(|o| self.get(*o).abs()).max().unwrap_or(0)
    }
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `n`-step walk of a single coin stepping right with probability `p` and
/// left with `1 - p`:
/// `P(k) = C(n, (n+k)/2) p^((n+k)/2) (1-p)^((n-k)/2)` for `k ≡ n (mod 2)`,
/// `|k| ≤ n`, and zero elsewhere. Only the parity-matching sites are stored.
///
/// For `p = 1/2` the coefficient is computed exactly and divided by `2^n`;
/// otherwise the product is formed in log space from the exact coefficient.
pub fn binomial_walk_distribution(n: u64, p: f64) -> Result<Distribution<i64>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(WalkError::InvalidProbability(format!("step probability {p} outside [0, 1]")));
    }
    let q = 1.0 - p;
    let n_i = n as i64;
    let mut probs = BTreeMap::new();
    for right in 0..=n {
        let k = 2 * right as i64 - n_i;
        let left = n - right;
        let value = if p == 0.0 || p == 1.0 {
            let certain = if p == 1.0 { right == n } else { right == 0 };
            if certain { 1.0 } else { 0.0 }
        } else if p == 0.5 && n <= 1000 {
            binomial(n, right).to_f64().unwrap_or(f64::INFINITY) * 0.5f64.powi(n as i32)
        } else {
            (ln_big(&binomial(n, right)) + right as f64 * p.ln() + left as f64 * q.ln()).exp()
        };
        probs.insert(k, value);
    }
    Ok(Distribution::from_raw(probs))
}

/// Pearson correlation of the two coins, encoding heads as 0 and tails as 1.
pub fn correlation(j: &JointCoinDistribution) -> Result<f64> {
    let mean_first = j.p_th + j.p_tt;
    let mean_second = j.p_ht + j.p_tt;
    let var_first = mean_first * (1.0 - mean_first);
    let var_second = mean_second * (1.0 - mean_second);
    if var_first <= 1e-15 {
        return Err(WalkError::ZeroVariance(1));
    }
    if var_second <= 1e-15 {
        return Err(WalkError::ZeroVariance(2));
    }
    let cov = j.p_tt - mean_first * mean_second;
    Ok((cov / (var_first * var_second).sqrt()).clamp(-1.0, 1.0))
}

/// Exact `n`-step distribution of a walker moved by a coin pair, by
/// repeated convolution with the single-toss displacement distribution.
pub fn correlated_walk_distribution(n: u64, j: &JointCoinDistribution, moves: &MoveMap) -> Distribution<i64> {
    let reach = n as i64 * moves.max_abs();
    let width = (2 * reach + 1) as usize;
    let kernel: Vec<(i64, f64)> = Outcome::ALL
        .iter()
        .map(|o| (moves.get(*o), j.prob(*o)))
        .filter(|(_, p)| *p > 0.0)
        .collect();

    let mut cur = vec![0.0; width];
    cur[reach as usize] = 1.0;
    let mut next = vec![0.0; width];
    for _ in 0..n {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (idx, &mass) in cur.iter().enumerate() {
            if mass == 0.0 {
                continue;
            }
            for &(d, p) in &kernel {
                next[(idx as i64 + d) as usize] += mass * p;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let probs = cur
        .into_iter()
        .enumerate()
        .filter(|(_, p)| *p > 0.0)
        .map(|(idx, p)| (idx as i64 - reach, p))
        .collect();
    Distribution::from_raw(probs)
}

fn toss<R: Rng + ?Sized>(j: &JointCoinDistribution, rng: &mut R) -> Outcome {
    let u: f64 = rng.random();
    let mut acc = 0.0;
    for o in Outcome::ALL {
        acc += j.prob(o);
        if u < acc {
            return o;
        }
    }
    // u landed in the rounding gap above the cumulative sum
    *Outcome::ALL.iter().rev().find(|o| j.prob(**o) > 0.0).unwrap_or(&Outcome::TT)
}

/// Endpoint of one sampled `n`-step walk.
pub fn sample_walk<R: Rng + ?Sized>(n: u64, j: &JointCoinDistribution, moves: &MoveMap, rng: &mut R) -> i64 {
    (0..n).map(|_| moves.get(toss(j, rng))).sum()
}

/// [`sample_walk`] with a fresh generator seeded from `seed`.
pub fn sample_walk_seeded(n: u64, j: &JointCoinDistribution, moves: &MoveMap, seed: u64) -> i64 {
    sample_walk(n, j, moves, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Empirical endpoint distribution over `samples` seeded walks.
pub fn sample_histogram(
    n: u64,
    j: &JointCoinDistribution,
    moves: &MoveMap,
    samples: u64,
    seed: u64,
) -> Distribution<i64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for _ in 0..samples {
        *counts.entry(sample_walk(n, j, moves, &mut rng)).or_default() += 1;
    }
    let total = samples.max(1) as f64;
    Distribution::from_raw(counts.into_iter().map(|(k, c)| (k, c as f64 / total)).collect())
}
