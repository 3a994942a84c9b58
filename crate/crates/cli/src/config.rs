//! Experiment configuration files.
//!
//! Configs are TOML. Top-level keys select the mode and output; the
//! `[coin]`, `[operator]`, `[shift]`, `[classical]` and `[compare]` tables
//! describe the walk. `[[batch]]` entries are tables merged over the
//! top-level document, one experiment each.

use std::str::FromStr;

use num_complex::Complex64;
use qwalk_core::classical::{JointCoinDistribution, MoveMap};
use qwalk_core::coins::{build_coin_operator, build_initial_coin, CoinOperatorKind, CoinPreset};
use qwalk_core::engine::WalkConfig;
use qwalk_core::shifts::{build_shift_for, DisplacementTable, ShiftPreset};
use qwalk_core::{CoinOperator, CoinState, Site};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Quantum,
    Classical,
    Compare,
    Entropy,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Gnuplot,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinSection {
    pub preset: String,
    /// `[re, im]` pairs in basis-index order, for `preset = "custom"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorSection {
    #[serde(default = "default_operator")]
    pub kind: String,
    /// Rows of `[re, im]` pairs, for `kind = "custom"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
}

fn default_operator() -> String {
    "hadamard_n".into()
}

impl Default for OperatorSection {
    fn default() -> Self {
        OperatorSection { kind: default_operator(), matrix: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShiftSection {
    pub preset: String,
    /// One displacement vector per coin basis state, for `preset = "custom"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MovesSection {
    pub hh: i64,
    pub ht: i64,
    pub th: i64,
    pub tt: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassicalSection {
    /// Number of steps; defaults to the top-level `steps`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Single-coin step probability, used when `rho` is absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Correlation of a fair coin pair; selects the coin-pair walk.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moves: Option<MovesSection>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSection {
    /// Positions to report; all positions in either support when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub positions: Option<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub mode: Mode,
    #[serde(default)]
    pub steps: u64,
    #[serde(default)]
    pub output_format: OutputFormat,
    /// Output file; standard output when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Replace exact distributions with histograms of this many seeded draws.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial_position: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coin: Option<CoinSection>,
    #[serde(default)]
    pub operator: OperatorSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<ShiftSection>,
    #[serde(default)]
    pub classical: ClassicalSection,
    #[serde(default)]
    pub compare: CompareSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub batch: Option<Vec<toml::Table>>,
}

/// Parses `key=value`, where `key` is a dotted path and `value` is any TOML
/// value. Bare words fall back to strings.
pub fn parse_override(arg: &str) -> Result<(Vec<String>, toml::Value), CliError> {
    let (key, raw) = arg
        .split_once('=')
        .ok_or_else(|| CliError::Parse(format!("override {arg:?} is not key=value")))?;
    let path: Vec<String> = key.trim().split('.').map(str::to_string).collect();
    if path.iter().any(String::is_empty) {
        return Err(CliError::Parse(format!("override key {key:?} is malformed")));
    }
    let raw = raw.trim();
    let value = toml::from_str::<toml::Table>(&format!("v = {raw}"))
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| toml::Value::String(raw.to_string()));
    Ok((path, value))
}

pub fn apply_override(doc: &mut toml::Table, path: &[String], value: toml::Value) -> Result<(), CliError> {
    let (last, parents) = path.split_last().expect("non-empty path");
    let mut table = doc;
    for key in parents {
        let entry = table
            .entry(key.clone())
            .or_insert_with(|| toml::Value::Table(toml::Table::new()));
        table = entry
            .as_table_mut()
            .ok_or_else(|| CliError::Parse(format!("override path {}: {key:?} is not a table", path.join("."))))?;
    }
    table.insert(last.clone(), value);
    Ok(())
}

/// Recursively overlays `top` onto `base`.
pub fn merge(base: &mut toml::Table, top: &toml::Table) {
    for (key, value) in top {
        match (base.get_mut(key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(t)) => merge(b, t),
            _ => {
                base.insert(key.clone(), value.clone());
            }
        }
    }
}

/// Parses a config document into the experiments it describes: one, or one
/// per `[[batch]]` entry.
pub fn load(text: &str, overrides: &[String]) -> Result<Vec<ExperimentConfig>, CliError> {
    let mut doc: toml::Table = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    for arg in overrides {
        let (path, value) = parse_override(arg)?;
        apply_override(&mut doc, &path, value)?;
    }
    let batch = doc.remove("batch");
    let is_batch = batch.is_some();
    let docs = match batch {
        None => vec![doc],
        Some(toml::Value::Array(entries)) => entries
            .into_iter()
            .enumerate()
            .map(|(i, entry)| match entry {
                toml::Value::Table(t) => {
                    let mut merged = doc.clone();
                    merge(&mut merged, &t);
                    Ok(merged)
                }
                _ => Err(CliError::Parse(format!("batch[{i}] is not a table"))),
            })
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(CliError::Parse("`batch` must be an array of tables".into())),
    };
    docs.into_iter()
        .enumerate()
        .map(|(i, d)| {
            let text = toml::to_string(&d).map_err(|e| CliError::Parse(e.to_string()))?;
            toml::from_str::<ExperimentConfig>(&text).map_err(|e| {
                if is_batch {
                    CliError::Parse(format!("batch[{i}]: {e}"))
                } else {
                    CliError::Parse(e.to_string())
                }
            })
        })
        .collect()
}

fn amp(pair: &[f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn missing(section: &str, mode: Mode) -> CliError {
    CliError::Validation(format!("mode {mode:?} requires a [{section}] section"))
}

impl ExperimentConfig {
    pub fn coin_state(&self) -> Result<CoinState, CliError> {
        let section = self.coin.as_ref().ok_or_else(|| missing("coin", self.mode))?;
        let preset = if section.preset == "custom" {
            let amps = section
                .amplitudes
                .as_ref()
                .ok_or_else(|| CliError::Validation("coin preset \"custom\" requires `amplitudes`".into()))?;
            CoinPreset::Custom(amps.iter().map(amp).collect())
        } else {
            CoinPreset::from_str(&section.preset)?
        };
        Ok(build_initial_coin(&preset)?)
    }

    pub fn coin_operator(&self, qubits: usize) -> Result<CoinOperator, CliError> {
        let section = &self.operator;
        let kind = if section.kind == "custom" {
            let rows = section
                .matrix
                .as_ref()
                .ok_or_else(|| CliError::Validation("operator kind \"custom\" requires `matrix`".into()))?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err(CliError::Validation("custom operator matrix is not square".into()));
            }
            CoinOperatorKind::Custom(rows.iter().flatten().map(amp).collect())
        } else {
            CoinOperatorKind::from_str(&section.kind)?
        };
        Ok(build_coin_operator(&kind, qubits)?)
    }

    pub fn shift(&self, qubits: usize) -> Result<DisplacementTable, CliError> {
        let section = self.shift.as_ref().ok_or_else(|| missing("shift", self.mode))?;
        if section.preset == "custom" {
            let rows = section
                .table
                .as_ref()
                .ok_or_else(|| CliError::Validation("shift preset \"custom\" requires `table`".into()))?;
            let sites = rows.iter().map(|r| Site::from_coords(r)).collect::<Result<Vec<_>, _>>()?;
            let table = DisplacementTable::new(sites)?;
            if table.qubits() != qubits {
                return Err(CliError::Validation(format!(
                    "custom shift table has {} entries but the coin has {qubits} qubits",
                    table.displacements().len()
                )));
            }
            Ok(table)
        } else {
            Ok(build_shift_for(ShiftPreset::from_str(&section.preset)?, qubits)?)
        }
    }

    /// Assembles and validates the quantum walk.
    pub fn walk(&self) -> Result<WalkConfig, CliError> {
        let coin = self.coin_state()?;
        let q = coin.qubits();
        let op = self.coin_operator(q)?;
        let shift = self.shift(q)?;
        let mut cfg = WalkConfig::new(coin, op, shift, self.steps as usize)?;
        if let Some(pos) = &self.initial_position {
            cfg = cfg.with_initial_position(Site::from_coords(pos)?)?;
        }
        Ok(cfg)
    }

    pub fn classical_steps(&self) -> u64 {
        self.classical.n.unwrap_or(self.steps)
    }

    pub fn moves(&self) -> MoveMap {
        self.classical
            .moves
            .as_ref()
            .map(|m| MoveMap { hh: m.hh, ht: m.ht, th: m.th, tt: m.tt })
            .unwrap_or_default()
    }

    /// The coin pair for the correlated walk, when `rho` is configured.
    pub fn coin_pair(&self) -> Result<Option<JointCoinDistribution>, CliError> {
        self.classical
            .rho
            .map(JointCoinDistribution::from_correlation)
            .transpose()
            .map_err(CliError::from)
    }

    pub fn step_probability(&self) -> Result<f64, CliError> {
        let p = self.classical.p.unwrap_or(0.5);
        if !(0.0..=1.0).contains(&p) {
            return Err(CliError::Validation(format!("classical.p = {p} is outside [0, 1]")));
        }
        Ok(p)
    }

    /// Checks everything the selected mode needs, without running it.
    pub fn validate(&self) -> Result<(), CliError> {
        match self.mode {
            Mode::Quantum => {
                self.walk()?;
            }
            Mode::Classical => {
                self.step_probability()?;
                self.coin_pair()?;
            }
            Mode::Compare => {
                let walk = self.walk()?;
                if walk.shift().dims() != 1 {
                    return Err(CliError::Validation("compare mode needs a one-dimensional shift".into()));
                }
                self.step_probability()?;
                self.coin_pair()?;
            }
            Mode::Entropy => {
                let coin = self.coin_state()?;
                if coin.qubits() < 2 {
                    return Err(CliError::Validation("entropy mode needs a coin of at least two qubits".into()));
                }
            }
        }
        Ok(())
    }
}
