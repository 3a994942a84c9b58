//! Conditional shift operators as per-basis displacement tables.
//!
//! A conditional shift translates the walker by a displacement chosen by the
//! coin basis state. It permutes `(site, coin)` basis states, so it is
//! unitary by construction and needs no numeric check.

use std::collections::BTreeMap;
use std::str::FromStr;

use crate::error::{Result, WalkError};
use crate::linalg::{qubits_for_dim, Amp};
use crate::state::{Site, WalkState};

/// Shift operators with fixed tables.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ShiftPreset {
    /// One qubit: |0> → +1, |1> → -1.
    Single,
    /// One qubit: |0> → +2, |1> → -2.
    SingleTwoStep,
    /// Two qubits: |00> → +1, |11> → -1, the mixed states rest.
    Ec,
    /// Two qubits: |00> → +2, |01> → +1, |10> → -1, |11> → -2.
    EcPrime,
    /// Three qubits: |000> → +1, |111> → -1, all others rest.
    ThreeA,
    /// Three qubits: +3, +2, +1, 0, 0, -1, -2, -3 in basis order.
    ThreeB,
    /// Three qubits on the plane: |000> → (+1, 0), |010> → (0, +1),
    /// |101> → (0, -1), |111> → (-1, 0), all others rest.
    Plane,
}

impl ShiftPreset {
    pub const ALL: [ShiftPreset; 7] = [
        ShiftPreset::Single,
        ShiftPreset::SingleTwoStep,
        ShiftPreset::Ec,
        ShiftPreset::EcPrime,
        ShiftPreset::ThreeA,
        ShiftPreset::ThreeB,
        ShiftPreset::Plane,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ShiftPreset::Single => "s_single",
            ShiftPreset::SingleTwoStep => "s_single_2step",
            ShiftPreset::Ec => "s_ec",
            ShiftPreset::EcPrime => "s_ec_prime",
            ShiftPreset::ThreeA => "s_3a",
            ShiftPreset::ThreeB => "s_3b",
            ShiftPreset::Plane => "s_2d",
        }
    }

    pub fn qubits(self) -> usize {
        match self {
            ShiftPreset::Single | ShiftPreset::SingleTwoStep => 1,
            ShiftPreset::Ec | ShiftPreset::EcPrime => 2,
            ShiftPreset::ThreeA | ShiftPreset::ThreeB | ShiftPreset::Plane => 3,
        }
    }
}

impl FromStr for ShiftPreset {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        ShiftPreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| WalkError::UnknownPreset(s.to_string()))
    }
}

/// Displacement applied for each coin basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisplacementTable {
    dims: usize,
    qubits: usize,
    table: Vec<Site>,
}

impl DisplacementTable {
    /// Entry `i` is the displacement for coin basis state `i`. The length
    /// must be 2, 4 or 8 and all entries must share one dimensionality.
    pub fn new(table: Vec<Site>) -> Result<Self> {
        let qubits = qubits_for_dim(table.len())
            .map_err(|_| WalkError::InvalidTable(format!("length {} is not 2, 4 or 8", table.len())))?;
        let dims = table[0].dims();
        if let Some(bad) = table.iter().find(|s| s.dims() != dims) {
            return Err(WalkError::InvalidTable(format!(
                "mixed dimensionality: {} vs {}",
                dims,
                bad.dims()
            )));
        }
        Ok(DisplacementTable { dims, qubits, table })
    }

    /// One-dimensional table from plain integer displacements.
    pub fn line(displacements: &[i64]) -> Result<Self> {
        Self::new(displacements.iter().map(|&d| Site::Line(d)).collect())
    }

    /// Table that moves nothing.
    pub fn zero(dims: usize, qubits: usize) -> Result<Self> {
        let origin = Site::origin(dims)?;
        Self::new(vec![origin; 1 << qubits])
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn displacement(&self, coin: usize) -> Site {
        self.table[coin]
    }

    pub fn displacements(&self) -> &[Site] {
        &self.table
    }

    /// Largest displacement magnitude (max-norm) in the table.
    pub fn max_displacement(&self) -> i64 {
        self.table.iter().map(Site::max_abs).max().unwrap_or(0)
    }

    /// Table with every displacement reversed; undoes `self`.
    pub fn negate(&self) -> Self {
        DisplacementTable {
            table: self.table.iter().map(|s| s.negate()).collect(),
            ..self.clone()
        }
    }
}

pub fn build_shift(preset: ShiftPreset) -> DisplacementTable {
    let line = |d: &[i64]| DisplacementTable::line(d).expect("preset table is well formed");
    match preset {
        ShiftPreset::Single => line(&[1, -1]),
        ShiftPreset::SingleTwoStep => line(&[2, -2]),
        ShiftPreset::Ec => line(&[1, 0, 0, -1]),
        ShiftPreset::EcPrime => line(&[2, 1, -1, -2]),
        ShiftPreset::ThreeA => line(&[1, 0, 0, 0, 0, 0, 0, -1]),
        ShiftPreset::ThreeB => line(&[3, 2, 1, 0, 0, -1, -2, -3]),
        ShiftPreset::Plane => {
            let rest = Site::Plane(0, 0);
            DisplacementTable::new(vec![
                Site::Plane(1, 0),  // 000
                rest,               // 001
                Site::Plane(0, 1),  // 010
                rest,               // 011
                rest,               // 100
                Site::Plane(0, -1), // 101
                rest,               // 110
                Site::Plane(-1, 0), // 111
            ])
            .expect("preset table is well formed")
        }
    }
}

/// [`build_shift`] for a walk whose coin has `qubits` qubits.
pub fn build_shift_for(preset: ShiftPreset, qubits: usize) -> Result<DisplacementTable> {
    if preset.qubits() != qubits {
        return Err(WalkError::QubitMismatch {
            context: preset.name(),
            expected: qubits,
            got: preset.qubits(),
        });
    }
    Ok(build_shift(preset))
}

pub(crate) fn check_compatible(s: &WalkState, t: &DisplacementTable) -> Result<()> {
    if s.dims() != t.dims {
        return Err(WalkError::DimensionMismatch {
            context: "shift",
            expected: s.dims(),
            got: t.dims,
        });
    }
    if s.qubits() != t.qubits {
        return Err(WalkError::QubitMismatch {
            context: "shift",
            expected: s.qubits(),
            got: t.qubits,
        });
    }
    Ok(())
}

/// Moves every amplitude at `(site, c)` to `(site + table[c], c)`.
pub fn apply_shift(s: &WalkState, t: &DisplacementTable) -> Result<WalkState> {
    check_compatible(s, t)?;
    let dim = s.coin_dim();
    let mut out: BTreeMap<Site, Vec<Amp>> = BTreeMap::new();
    for (site, coins) in s.sites() {
        for (c, amp) in coins.iter().enumerate() {
            let target = site.translate(t.table[c]);
            out.entry(target).or_insert_with(|| vec![Amp::new(0.0, 0.0); dim])[c] = *amp;
        }
    }
    Ok(s.translated(out, t.max_displacement()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coins::{build_initial_coin, CoinPreset};
    use crate::linalg::CoinState;

    fn one() -> Amp {
        Amp::new(1.0, 0.0)
    }

    #[test]
    fn preset_tables() {
        let lines = |p| -> Vec<i64> { build_shift(p).displacements().iter().map(|s| s.coords()[0]).collect() };
        assert_eq!(lines(ShiftPreset::Single), vec![1, -1]);
        assert_eq!(lines(ShiftPreset::SingleTwoStep), vec![2, -2]);
        assert_eq!(lines(ShiftPreset::Ec), vec![1, 0, 0, -1]);
        assert_eq!(lines(ShiftPreset::EcPrime), vec![2, 1, -1, -2]);
        assert_eq!(lines(ShiftPreset::ThreeA), vec![1, 0, 0, 0, 0, 0, 0, -1]);
        assert_eq!(lines(ShiftPreset::ThreeB), vec![3, 2, 1, 0, 0, -1, -2, -3]);
        let plane = build_shift(ShiftPreset::Plane);
        assert_eq!(plane.displacement(0b010), Site::Plane(0, 1));
        assert_eq!(plane.displacement(0b101), Site::Plane(0, -1));
        assert_eq!(plane.dims(), 2);
        for p in ShiftPreset::ALL {
            let t = build_shift(p);
            assert_eq!(t.qubits(), p.qubits());
            assert_eq!(p.name().parse::<ShiftPreset>().unwrap(), p);
        }
    }

    #[test]
    fn qubit_mismatch_is_rejected() {
        assert!(build_shift_for(ShiftPreset::Ec, 3).is_err());
        assert!(build_shift_for(ShiftPreset::Plane, 3).is_ok());
    }

    #[test]
    fn malformed_tables() {
        assert!(DisplacementTable::line(&[1, 0, -1]).is_err());
        assert!(DisplacementTable::new(vec![Site::Line(1), Site::Plane(0, 1)]).is_err());
        assert!(DisplacementTable::line(&[0; 16]).is_err());
    }

    #[test]
    fn moves_forward_on_00() {
        let s = WalkState::localized(Site::Line(0), &CoinState::basis(2, 0).unwrap());
        let out = apply_shift(&s, &build_shift(ShiftPreset::Ec)).unwrap();
        assert_eq!(out.amplitude(Site::Line(1), 0), one());
        assert_eq!(out.norm(), 1.0);
    }

    #[test]
    fn singlet_rests_under_ec() {
        let coin = build_initial_coin(&CoinPreset::PsiMinus).unwrap();
        let s = WalkState::localized(Site::Line(0), &coin);
        let out = apply_shift(&s, &build_shift(ShiftPreset::Ec)).unwrap();
        assert_eq!(out.coin_vector(Site::Line(0)).unwrap(), coin.amplitudes());
        assert_eq!(out.entries().filter(|e| e.2.norm() > 0.0).count(), 2);
    }

    #[test]
    fn plane_moves_111_left() {
        let s = WalkState::localized(Site::Plane(0, 0), &CoinState::basis(3, 7).unwrap());
        let out = apply_shift(&s, &build_shift(ShiftPreset::Plane)).unwrap();
        assert_eq!(out.amplitude(Site::Plane(-1, 0), 7), one());
    }

    #[test]
    fn mismatched_state_is_rejected() {
        let s = WalkState::localized(Site::Line(0), &CoinState::basis(2, 0).unwrap());
        assert!(apply_shift(&s, &build_shift(ShiftPreset::ThreeA)).is_err());
        assert!(apply_shift(&s, &DisplacementTable::zero(2, 2).unwrap()).is_err());
    }
}
