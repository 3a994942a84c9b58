//! Named coin states, coin operators, and the entropy of entanglement of a
//! coin state across a qubit bipartition.

use std::f64::consts::FRAC_1_SQRT_2;
use std::str::FromStr;

use crate::error::{Result, WalkError};
use crate::linalg::{tensor_power, Amp, CoinOperator, CoinState};

/// Initial coin states.
#[derive(Clone, Debug, PartialEq)]
pub enum CoinPreset {
    /// (|00> + |11>)/√2
    PhiPlus,
    /// (|00> - |11>)/√2
    PhiMinus,
    /// (|01> + |10>)/√2
    PsiPlus,
    /// (|01> - |10>)/√2
    PsiMinus,
    /// (|000> + |111>)/√2
    Ghz3,
    /// (|0> + |1>)(|0> + |1>)/2, a product state.
    Theta0,
    /// Partially entangled: (1/2, 1/2, (√3-1)/4, (√3+1)/4).
    Theta1,
    /// (|0> + i|1>)(|0> + i|1>)/2, a product state with complex coefficients.
    PlusIProduct,
    /// (i|00> + i|01> + |10> + |11>)/2
    InuiKonno,
    /// √0.85 |0> - √0.15 |1> on a single qubit.
    SingleHadamardBias,
    /// User-supplied amplitudes in basis-index order.
    Custom(Vec<Amp>),
}

impl CoinPreset {
    pub const NAMED: [CoinPreset; 10] = [
        CoinPreset::PhiPlus,
        CoinPreset::PhiMinus,
        CoinPreset::PsiPlus,
        CoinPreset::PsiMinus,
        CoinPreset::Ghz3,
        CoinPreset::Theta0,
        CoinPreset::Theta1,
        CoinPreset::PlusIProduct,
        CoinPreset::InuiKonno,
        CoinPreset::SingleHadamardBias,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CoinPreset::PhiPlus => "phi_plus",
            CoinPreset::PhiMinus => "phi_minus",
            CoinPreset::PsiPlus => "psi_plus",
            CoinPreset::PsiMinus => "psi_minus",
            CoinPreset::Ghz3 => "ghz3",
            CoinPreset::Theta0 => "theta0",
            CoinPreset::Theta1 => "theta1",
            CoinPreset::PlusIProduct => "plus_i_product",
            CoinPreset::InuiKonno => "inui_konno",
            CoinPreset::SingleHadamardBias => "single_hadamard_bias",
            CoinPreset::Custom(_) => "custom",
        }
    }
}

impl FromStr for CoinPreset {
    type Err = WalkError;

    /// Parses a named preset. `custom` is rejected here because it needs
    /// amplitudes.
    fn from_str(s: &str) -> Result<Self> {
        CoinPreset::NAMED
            .iter()
            .find(|p| p.name() == s)
            .cloned()
            .ok_or_else(|| WalkError::UnknownPreset(s.to_string()))
    }
}

fn re(x: f64) -> Amp {
    Amp::new(x, 0.0)
}

fn im(x: f64) -> Amp {
    Amp::new(0.0, x)
}

pub fn build_initial_coin(preset: &CoinPreset) -> Result<CoinState> {
    let h = FRAC_1_SQRT_2;
    let z = re(0.0);
    let s3 = 3f64.sqrt();
    let amps = match preset {
        CoinPreset::PhiPlus => vec![re(h), z, z, re(h)],
        CoinPreset::PhiMinus => vec![re(h), z, z, re(-h)],
        CoinPreset::PsiPlus => vec![z, re(h), re(h), z],
        CoinPreset::PsiMinus => vec![z, re(h), re(-h), z],
        CoinPreset::Ghz3 => vec![re(h), z, z, z, z, z, z, re(h)],
        CoinPreset::Theta0 => vec![re(0.5); 4],
        CoinPreset::Theta1 => vec![re(0.5), re(0.5), re((s3 - 1.0) / 4.0), re((s3 + 1.0) / 4.0)],
        CoinPreset::PlusIProduct => vec![re(0.5), im(0.5), im(0.5), re(-0.5)],
        CoinPreset::InuiKonno => vec![im(0.5), im(0.5), re(0.5), re(0.5)],
        CoinPreset::SingleHadamardBias => vec![re(0.85f64.sqrt()), re(-(0.15f64.sqrt()))],
        CoinPreset::Custom(amps) => amps.clone(),
    };
    CoinState::new(amps)
}

/// Coin operator families.
#[derive(Clone, Debug, PartialEq)]
pub enum CoinOperatorKind {
    /// H^⊗q with H = [[1, 1], [1, -1]]/√2.
    HadamardN,
    /// Y^⊗q with Y = [[1, i], [i, 1]]/√2.
    YN,
    /// Row-major `2^q × 2^q` matrix.
    Custom(Vec<Amp>),
}

impl CoinOperatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            CoinOperatorKind::HadamardN => "hadamard_n",
            CoinOperatorKind::YN => "y_n",
            CoinOperatorKind::Custom(_) => "custom",
        }
    }
}

impl FromStr for CoinOperatorKind {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hadamard_n" => Ok(CoinOperatorKind::HadamardN),
            "y_n" => Ok(CoinOperatorKind::YN),
            _ => Err(WalkError::UnknownPreset(s.to_string())),
        }
    }
}

/// Single-qubit Hadamard coin.
pub fn hadamard() -> CoinOperator {
    let h = FRAC_1_SQRT_2;
    CoinOperator::new(vec![re(h), re(h), re(h), re(-h)]).expect("Hadamard is unitary")
}

/// Single-qubit coin [[1, i], [i, 1]]/√2.
pub fn y_coin() -> CoinOperator {
    let h = FRAC_1_SQRT_2;
    CoinOperator::new(vec![re(h), im(h), im(h), re(h)]).expect("Y coin is unitary")
}

pub fn build_coin_operator(kind: &CoinOperatorKind, qubits: usize) -> Result<CoinOperator> {
    match kind {
        CoinOperatorKind::HadamardN => tensor_power(&hadamard(), qubits),
        CoinOperatorKind::YN => tensor_power(&y_coin(), qubits),
        CoinOperatorKind::Custom(entries) => {
            let op = CoinOperator::new(entries.clone())?;
            if op.qubits() != qubits {
                return Err(WalkError::QubitMismatch {
                    context: "custom coin operator",
                    expected: qubits,
                    got: op.qubits(),
                });
            }
            Ok(op)
        }
    }
}

/// Squared Schmidt coefficients of `state` split into its first `cut`
/// qubits and the remaining ones, largest first.
///
/// The amplitudes are reshaped into a `2^cut × 2^(q-cut)` coefficient
/// matrix `M`. For q ≤ 3 the smaller side is always two-dimensional, so
/// the reduced density matrix is 2×2 and its eigenvalues follow from its
/// trace and determinant. The determinant is taken as the sum of squared
/// 2×2 minors of `M` (Cauchy–Binet), which is non-negative and stays
/// accurate for nearly separable states.
pub fn schmidt_spectrum(state: &CoinState, cut: usize) -> Result<[f64; 2]> {
    let q = state.qubits();
    if q < 2 || cut == 0 || cut >= q {
        return Err(WalkError::InvalidCut { cut, qubits: q });
    }
    let rows = 1usize << cut;
    let cols = 1usize << (q - cut);
    let amps = state.amplitudes();
    let m = |r: usize, c: usize| amps[r * cols + c];

    // Make the two-dimensional side the row index.
    type Entry<'a> = Box<dyn Fn(usize, usize) -> Amp + 'a>;
    let (n_rows, n_cols, entry): (usize, usize, Entry) = if rows <= cols {
        (rows, cols, Box::new(m))
    } else {
        (cols, rows, Box::new(move |r, c| m(c, r)))
    };
    debug_assert_eq!(n_rows, 2);

    let trace: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let mut det = 0.0;
    for j in 0..n_cols {
        for k in j + 1..n_cols {
            det += (entry(0, j) * entry(1, k) - entry(0, k) * entry(1, j)).norm_sqr();
        }
    }
    let disc = (trace * trace - 4.0 * det).max(0.0).sqrt();
    let high = (trace + disc) / 2.0;
    let low = if high > 0.0 { det / high } else { 0.0 };
    Ok([high, low])
}

/// Entropy of entanglement in bits across the cut after qubit `cut`:
/// `-Σ λ log₂ λ` over the squared Schmidt coefficients, with `0 log 0 = 0`.
pub fn entanglement_entropy(state: &CoinState, cut: usize) -> Result<f64> {
    let spectrum = schmidt_spectrum(state, cut)?;
    Ok(spectrum
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * l.log2())
        .sum::<f64>()
        .max(0.0))
}
