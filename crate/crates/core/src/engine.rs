//! Walk evolution: the step operator `S · (C ⊗ I)` applied repeatedly to a
//! localized initial state, and the Born-rule marginals of the result.

use std::collections::BTreeMap;

use crate::error::{Result, WalkError};
use crate::linalg::{Amp, CoinOperator, CoinState};
use crate::shifts::{check_compatible, DisplacementTable};
use crate::state::{Distribution, Site, WalkState};

/// A fully specified walk.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkConfig {
    coin_state: CoinState,
    coin_op: CoinOperator,
    shift: DisplacementTable,
    steps: usize,
    initial_position: Site,
}

impl WalkConfig {
    /// Walk starting at the origin of the shift's lattice.
    pub fn new(
        coin_state: CoinState,
        coin_op: CoinOperator,
        shift: DisplacementTable,
        steps: usize,
    ) -> Result<Self> {
        let q = coin_state.qubits();
        if coin_op.qubits() != q {
            return Err(WalkError::QubitMismatch {
                context: "coin operator",
                expected: q,
                got: coin_op.qubits(),
            });
        }
        if shift.qubits() != q {
            return Err(WalkError::QubitMismatch {
                context: "shift operator",
                expected: q,
                got: shift.qubits(),
            });
        }
        let initial_position = Site::origin(shift.dims())?;
        Ok(WalkConfig { coin_state, coin_op, shift, steps, initial_position })
    }

    pub fn with_initial_position(mut self, site: Site) -> Result<Self> {
        if site.dims() != self.shift.dims() {
            return Err(WalkError::DimensionMismatch {
                context: "initial position",
                expected: self.shift.dims(),
                got: site.dims(),
            });
        }
        self.initial_position = site;
        Ok(self)
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }

    pub fn coin_state(&self) -> &CoinState {
        &self.coin_state
    }

    pub fn coin_op(&self) -> &CoinOperator {
        &self.coin_op
    }

    pub fn shift(&self) -> &DisplacementTable {
        &self.shift
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn initial_position(&self) -> Site {
        self.initial_position
    }
}

/// `|initial_position> ⊗ |coin_state>`.
pub fn initial_state(cfg: &WalkConfig) -> WalkState {
    WalkState::localized(cfg.initial_position, &cfg.coin_state)
}

/// One application of `S · (C ⊗ I)`: the coin operator acts on the coin
/// vector at every occupied site, then each component moves by its
/// displacement.
pub fn step(s: &WalkState, coin_op: &CoinOperator, shift: &DisplacementTable) -> Result<WalkState> {
    check_compatible(s, shift)?;
    if coin_op.qubits() != s.qubits() {
        return Err(WalkError::QubitMismatch {
            context: "coin operator",
            expected: s.qubits(),
            got: coin_op.qubits(),
        });
    }
    let dim = s.coin_dim();
    let zero = Amp::new(0.0, 0.0);
    let mut tossed = vec![zero; dim];
    let mut out: BTreeMap<Site, Vec<Amp>> = BTreeMap::new();
    for (site, coins) in s.sites() {
        coin_op.apply_to(coins, &mut tossed);
        for (c, amp) in tossed.iter().enumerate() {
            let target = site.translate(shift.displacement(c));
            out.entry(target).or_insert_with(|| vec![zero; dim])[c] = *amp;
        }
    }
    Ok(s.advanced(out, shift.max_displacement()))
}

/// State after `cfg.steps` steps.
pub fn evolve(cfg: &WalkConfig) -> WalkState {
    evolve_with(cfg, |_, _| {})
}

/// Like [`evolve`], calling `observe(n, state)` for the initial state
/// (`n = 0`) and after each step `n`.
pub fn evolve_with(cfg: &WalkConfig, mut observe: impl FnMut(usize, &WalkState)) -> WalkState {
    let mut state = initial_state(cfg);
    observe(0, &state);
    for n in 1..=cfg.steps {
        state = step(&state, &cfg.coin_op, &cfg.shift).expect("config components agree");
        observe(n, &state);
    }
    state
}

/// Marginal over the coin: `P(site) = Σ_c |amplitude(site, c)|²`.
pub fn position_distribution(s: &WalkState) -> Distribution<Site> {
    let probs = s
        .sites()
        .map(|(site, coins)| (site, coins.iter().map(|a| a.norm_sqr()).sum()))
        .collect();
    Distribution::from_raw(probs)
}

/// Marginal over position: `P(c) = Σ_site |amplitude(site, c)|²`, keyed by
/// coin basis index.
pub fn coin_distribution(s: &WalkState) -> Distribution<usize> {
    let mut probs = vec![0.0; s.coin_dim()];
    for (_, coins) in s.sites() {
        for (p, a) in probs.iter_mut().zip(coins) {
            *p += a.norm_sqr();
        }
    }
    if s.is_empty() {
        return Distribution::from_raw(BTreeMap::new());
    }
    Distribution::from_raw(probs.into_iter().enumerate().collect())
}
