//! Joint walker-coin state and the probability distributions read from it.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, WalkError};
use crate::linalg::{Amp, CoinState, MAX_QUBITS};

/// A lattice site, or a displacement between sites.
///
/// Ordering is lexicographic, which sorts 2D sites by `x` then `y`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Line(i64),
    Plane(i64, i64),
}

impl Site {
    pub fn origin(dims: usize) -> Result<Site> {
        match dims {
            1 => Ok(Site::Line(0)),
            2 => Ok(Site::Plane(0, 0)),
            _ => Err(WalkError::DimensionMismatch {
                context: "lattice",
                expected: 1,
                got: dims,
            }),
        }
    }

    /// Builds a site from its coordinate list (length 1 or 2).
    pub fn from_coords(coords: &[i64]) -> Result<Site> {
        match *coords {
            [x] => Ok(Site::Line(x)),
            [x, y] => Ok(Site::Plane(x, y)),
            _ => Err(WalkError::DimensionMismatch {
                context: "site coordinates",
                expected: 1,
                got: coords.len(),
            }),
        }
    }

    pub fn dims(&self) -> usize {
        match self {
            Site::Line(_) => 1,
            Site::Plane(..) => 2,
        }
    }

    pub fn coords(&self) -> Vec<i64> {
        match *self {
            Site::Line(x) => vec![x],
            Site::Plane(x, y) => vec![x, y],
        }
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> i64 {
        match *self {
            Site::Line(x) => x.abs(),
            Site::Plane(x, y) => x.abs().max(y.abs()),
        }
    }

    /// Translates by `by`. Both operands must have the same dimensionality.
    pub fn translate(self, by: Site) -> Site {
        match (self, by) {
            (Site::Line(x), Site::Line(dx)) => Site::Line(x + dx),
            (Site::Plane(x, y), Site::Plane(dx, dy)) => Site::Plane(x + dx, y + dy),
            _ => panic!("translating {self:?} by {by:?}: dimensionality differs"),
        }
    }

    pub fn negate(self) -> Site {
        match self {
            Site::Line(x) => Site::Line(-x),
            Site::Plane(x, y) => Site::Plane(-x, -y),
        }
    }

    fn offset_from(self, origin: Site) -> i64 {
        self.translate(origin.negate()).max_abs()
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Line(x) => write!(f, "{x}"),
            Site::Plane(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Amplitudes over `(site, coin basis index)` pairs.
///
/// Stored sparsely, one coin vector per occupied site. Amplitudes are never
/// pruned, so a site stays stored even when all of its amplitudes vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    dims: usize,
    qubits: usize,
    origin: Site,
    steps: usize,
    reach: i64,
    sites: BTreeMap<Site, Vec<Amp>>,
}

impl WalkState {
    /// State with no stored amplitudes.
    pub fn empty(dims: usize, qubits: usize) -> Result<Self> {
        if !(1..=MAX_QUBITS).contains(&qubits) {
            return Err(WalkError::UnsupportedCoinSize(qubits));
        }
        Ok(WalkState {
            dims,
            qubits,
            origin: Site::origin(dims)?,
            steps: 0,
            reach: 0,
            sites: BTreeMap::new(),
        })
    }

    /// `|site> ⊗ |coin>`.
    pub fn localized(site: Site, coin: &CoinState) -> Self {
        let mut sites = BTreeMap::new();
        sites.insert(site, coin.amplitudes().to_vec());
        WalkState {
            dims: site.dims(),
            qubits: coin.qubits(),
            origin: site,
            steps: 0,
            reach: 0,
            sites,
        }
    }

    /// Builds a state from explicit `(site, coin index, amplitude)` entries.
    /// Repeated keys accumulate.
    pub fn from_entries(
        dims: usize,
        qubits: usize,
        entries: impl IntoIterator<Item = (Site, usize, Amp)>,
    ) -> Result<Self> {
        let mut state = WalkState::empty(dims, qubits)?;
        let dim = 1 << qubits;
        for (site, coin, amp) in entries {
            if site.dims() != dims {
                return Err(WalkError::DimensionMismatch {
                    context: "state entry",
                    expected: dims,
                    got: site.dims(),
                });
            }
            if coin >= dim {
                return Err(WalkError::LengthMismatch { expected: dim, got: coin + 1 });
            }
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(WalkError::NonFinite);
            }
            state.sites.entry(site).or_insert_with(|| vec![Amp::new(0.0, 0.0); dim])[coin] += amp;
        }
        state.reach = state.sites.keys().map(|s| s.offset_from(state.origin)).max().unwrap_or(0);
        Ok(state)
    }

    pub(crate) fn advanced(&self, sites: BTreeMap<Site, Vec<Amp>>, stride: i64) -> Self {
        WalkState {
            dims: self.dims,
            qubits: self.qubits,
            origin: self.origin,
            steps: self.steps + 1,
            reach: self.reach + stride,
            sites,
        }
    }

    pub(crate) fn translated(&self, sites: BTreeMap<Site, Vec<Amp>>, stride: i64) -> Self {
        WalkState {
            reach: self.reach + stride,
            sites,
            ..self.clone()
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn coin_dim(&self) -> usize {
        1 << self.qubits
    }

    /// Number of walk steps applied since construction.
    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Site the walk started from.
    pub fn origin(&self) -> Site {
        self.origin
    }

    /// Bound on how far from the origin any stored site may lie: the sum of
    /// the largest displacement magnitude of every shift applied so far.
    pub fn reach(&self) -> i64 {
        self.reach
    }

    /// Checks that no stored site lies beyond [`reach`](Self::reach).
    pub fn within_window(&self) -> bool {
        self.sites.keys().all(|s| s.offset_from(self.origin) <= self.reach)
    }

    pub fn amplitude(&self, site: Site, coin: usize) -> Amp {
        self.sites
            .get(&site)
            .and_then(|v| v.get(coin).copied())
            .unwrap_or(Amp::new(0.0, 0.0))
    }

    /// Coin vector at `site`, if stored.
    pub fn coin_vector(&self, site: Site) -> Option<&[Amp]> {
        self.sites.get(&site).map(Vec::as_slice)
    }

    /// Stored sites with their coin vectors, in site order.
    pub fn sites(&self) -> impl Iterator<Item = (Site, &[Amp])> + '_ {
        self.sites.iter().map(|(s, v)| (*s, v.as_slice()))
    }

    /// All stored `(site, coin, amplitude)` entries.
    pub fn entries(&self) -> impl Iterator<Item = (Site, usize, Amp)> + '_ {
        self.sites
            .iter()
            .flat_map(|(s, v)| v.iter().enumerate().map(move |(c, a)| (*s, c, *a)))
    }

    /// Number of stored `(site, coin)` entries.
    pub fn len(&self) -> usize {
        self.sites.len() * self.coin_dim()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Σ |amplitude|².
    pub fn norm(&self) -> f64 {
        self.sites.values().flatten().map(|a| a.norm_sqr()).sum()
    }
}

/// Σ |amplitude|² over all stored entries; 0 for an empty state.
pub fn state_norm(s: &WalkState) -> f64 {
    s.norm()
}

/// Probability assignment over labels (sites, integer positions, or coin
/// basis indices). Labels without an entry have probability zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution<K: Ord> {
    probs: BTreeMap<K, f64>,
}

impl<K: Ord + Copy> Distribution<K> {
    /// Wraps non-negative finite weights without requiring them to sum to one.
    pub fn from_weights(probs: BTreeMap<K, f64>) -> Result<Self> {
        if probs.values().any(|p| !p.is_finite()) {
            return Err(WalkError::NonFinite);
        }
        if probs.values().any(|&p| p < 0.0) {
            return Err(WalkError::InvalidProbability("negative weight".into()));
        }
        Ok(Distribution { probs })
    }

    /// Like [`from_weights`](Self::from_weights) but also requires the total
    /// to be within `1e-10` of one.
    pub fn new(probs: BTreeMap<K, f64>) -> Result<Self> {
        let d = Self::from_weights(probs)?;
        if !d.is_normalized(1e-10) {
            return Err(WalkError::InvalidProbability(format!("weights sum to {}", d.total())));
        }
        Ok(d)
    }

    pub(crate) fn from_raw(probs: BTreeMap<K, f64>) -> Self {
        Distribution { probs }
    }

    pub fn delta(label: K) -> Self {
        Distribution { probs: BTreeMap::from([(label, 1.0)]) }
    }

    pub fn get(&self, label: &K) -> f64 {
        self.probs.get(label).copied().unwrap_or(0.0)
    }

    /// Entries in ascending label order, including stored zeros.
    pub fn iter(&self) -> impl Iterator<Item = (K, f64)> + '_ {
        self.probs.iter().map(|(k, p)| (*k, *p))
    }

    pub fn as_map(&self) -> &BTreeMap<K, f64> {
        &self.probs
    }

    /// Number of stored labels.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.total() - 1.0).abs() <= tol
    }

    /// Labels carrying strictly positive probability.
    pub fn support(&self) -> impl Iterator<Item = K> + '_ {
        self.probs.iter().filter(|(_, p)| **p > 0.0).map(|(k, _)| *k)
    }

    /// Largest `|self(k) - other(k)|` over the union of both label sets.
    pub fn max_abs_diff(&self, other: &Distribution<K>) -> f64 {
        self.probs
            .keys()
            .chain(other.probs.keys())
            .map(|k| (self.get(k) - other.get(k)).abs())
            .fold(0.0, f64::max)
    }

    /// Draws a label by inverse-CDF lookup. `None` when the total weight is
    /// zero.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<K> {
        let total = self.total();
        if total <= 0.0 {
            return None;
        }
        let target = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut last = None;
        for (k, p) in &self.probs {
            if *p <= 0.0 {
                continue;
            }
            acc += p;
            last = Some(*k);
            if target < acc {
                return last;
            }
        }
        last
    }

    /// Empirical distribution of `draws` seeded samples.
    pub fn resample(&self, draws: u64, seed: u64) -> Distribution<K> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<K, u64> = BTreeMap::new();
        for _ in 0..draws {
            match self.sample(&mut rng) {
                Some(k) => *counts.entry(k).or_default() += 1,
                None => break,
            }
        }
        let total = counts.values().sum::<u64>().max(1) as f64;
        Distribution { probs: counts.into_iter().map(|(k, c)| (k, c as f64 / total)).collect() }
    }
}
