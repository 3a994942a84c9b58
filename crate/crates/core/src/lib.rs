//! Discrete-time quantum walks on the line and the plane driven by one to
//! three qubit coins, which may be entangled, together with the classical
//! correlated-coin random walks they are compared against.
//!
//! ```
//! use qwalk_core::{coins, engine, shifts, Site};
//!
//! let coin = coins::build_initial_coin(&coins::CoinPreset::PhiPlus).unwrap();
//! let op = coins::build_coin_operator(&coins::CoinOperatorKind::HadamardN, 2).unwrap();
//! let shift = shifts::build_shift(shifts::ShiftPreset::Ec);
//! let cfg = engine::WalkConfig::new(coin, op, shift, 3).unwrap();
//! let p = engine::position_distribution(&engine::evolve(&cfg));
//! assert!((p.get(&Site::Line(0)) - 8.0 / 32.0).abs() < 1e-12);
//! ```

pub mod classical;
pub mod coins;
pub mod engine;
pub mod error;
pub mod linalg;
pub mod shifts;
pub mod state;

pub use error::{Result, WalkError};
pub use linalg::{check_unitary, tensor_product, Amp, CoinOperator, CoinState};
pub use state::{state_norm, Distribution, Site, WalkState};
