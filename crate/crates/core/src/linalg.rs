//! Coin-space vectors and operators.
//!
//! Coin basis states are indexed by reading the ket label as a binary numeral
//! with the leftmost symbol most significant, so `|01>` is index 1 and `|10>`
//! is index 2. The same ordering is used for state vectors, operator rows and
//! columns, and displacement tables.

use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// Complex probability amplitude.
pub type Amp = Complex64;

/// Largest supported coin register.
pub const MAX_QUBITS: usize = 3;

/// Tolerance used when validating user-supplied operators.
pub const UNITARY_TOL: f64 = 1e-12;

/// Tolerance used when validating coin state normalization.
pub const NORM_TOL: f64 = 1e-12;

/// Number of qubits spanning a coin space of dimension `dim`.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    match dim {
        2 => Ok(1),
        4 => Ok(2),
        8 => Ok(3),
        _ if dim.is_power_of_two() => Err(WalkError::UnsupportedCoinSize(dim.trailing_zeros() as usize)),
        _ => Err(WalkError::InvalidLabel(format!("dimension {dim} is not a power of two"))),
    }
}

fn check_qubits(qubits: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&qubits) {
        Ok(())
    } else {
        Err(WalkError::UnsupportedCoinSize(qubits))
    }
}

/// Ket label (`"01"`) for a basis index.
pub fn basis_label(index: usize, qubits: usize) -> String {
    (0..qubits)
        .rev()
        .map(|bit| if index >> bit & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Basis index and qubit count for a ket label such as `"01"` or `"|110>"`.
pub fn basis_index(label: &str) -> Result<(usize, usize)> {
    let bits = label.trim().trim_start_matches('|').trim_end_matches(['>', '⟩']);
    if bits.is_empty() || bits.len() > MAX_QUBITS {
        return Err(WalkError::InvalidLabel(label.to_string()));
    }
    let mut index = 0;
    for ch in bits.chars() {
        index <<= 1;
        match ch {
            '0' => {}
            '1' => index |= 1,
            _ => return Err(WalkError::InvalidLabel(label.to_string())),
        }
    }
    Ok((index, bits.len()))
}

/// Normalized pure state of a 1 to 3 qubit coin.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinState {
    qubits: usize,
    amps: Vec<Amp>,
}

impl CoinState {
    /// Builds a coin state, rejecting vectors whose squared norm is more
    /// than [`NORM_TOL`] away from one.
    pub fn new(amps: Vec<Amp>) -> Result<Self> {
        let qubits = qubits_for_dim(amps.len())?;
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(WalkError::NonFinite);
        }
        let defect = (amps.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs();
        if defect > NORM_TOL {
            return Err(WalkError::NotNormalized { defect });
        }
        Ok(CoinState { qubits, amps })
    }

    /// Computational basis state `|index>`.
    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1 << qubits;
        if index >= dim {
            return Err(WalkError::InvalidLabel(format!("index {index} out of range for {qubits} qubits")));
        }
        let mut amps = vec![Amp::new(0.0, 0.0); dim];
        amps[index] = Amp::new(1.0, 0.0);
        Ok(CoinState { qubits, amps })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amp] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Tensor product `self ⊗ other`, `self` occupying the leading qubits.
    pub fn product(&self, other: &CoinState) -> Result<CoinState> {
        check_qubits(self.qubits + other.qubits)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(CoinState { qubits: self.qubits + other.qubits, amps })
    }

    pub fn apply(&self, op: &CoinOperator) -> Result<CoinState> {
        if op.qubits != self.qubits {
            return Err(WalkError::QubitMismatch {
                context: "coin operator",
                expected: self.qubits,
                got: op.qubits,
            });
        }
        let mut out = vec![Amp::new(0.0, 0.0); self.dim()];
        op.apply_to(&self.amps, &mut out);
        Ok(CoinState { qubits: self.qubits, amps: out })
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &CoinState) -> Amp {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }
}

/// Unitary operator on the coin space, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinOperator {
    qubits: usize,
    entries: Vec<Amp>,
}

impl CoinOperator {
    /// Builds an operator from `dim * dim` row-major entries, rejecting
    /// matrices that fail [`check_unitary`] at [`UNITARY_TOL`].
    pub fn new(entries: Vec<Amp>) -> Result<Self> {
        let dim = square_dim(entries.len()).ok_or(WalkError::LengthMismatch {
            expected: 4,
            got: entries.len(),
        })?;
        let qubits = qubits_for_dim(dim)?;
        if entries.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(WalkError::NonFinite);
        }
        let deviation = unitarity_defect(&entries, dim);
        if deviation > UNITARY_TOL {
            return Err(WalkError::NotUnitary { deviation });
        }
        Ok(CoinOperator { qubits, entries })
    }

    pub fn identity(qubits: usize) -> Result<Self> {
        check_qubits(qubits)?;
        let dim = 1 << qubits;
        let mut entries = vec![Amp::new(0.0, 0.0); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = Amp::new(1.0, 0.0);
        }
        Ok(CoinOperator { qubits, entries })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn get(&self, row: usize, col: usize) -> Amp {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Amp] {
        &self.entries
    }

    pub fn adjoint(&self) -> CoinOperator {
        let dim = self.dim();
        let mut entries = vec![Amp::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                entries[c * dim + r] = self.entries[r * dim + c].conj();
            }
        }
        CoinOperator { qubits: self.qubits, entries }
    }

    /// Writes `self · input` into `out`.
    pub fn apply_to(&self, input: &[Amp], out: &mut [Amp]) {
        let dim = self.dim();
        debug_assert_eq!(input.len(), dim);
        for (row, slot) in self.entries.chunks_exact(dim).zip(out.iter_mut()) {
            *slot = row.iter().zip(input).map(|(m, v)| m * v).sum();
        }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        check_unitary(&self.entries, tol)
    }
}

fn square_dim(len: usize) -> Option<usize> {
    let dim = (len as f64).sqrt().round() as usize;
    (dim * dim == len && dim > 0).then_some(dim)
}

/// Max entry of `|U U† - I|` for a row-major `dim × dim` matrix.
fn unitarity_defect(entries: &[Amp], dim: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let row_i = &entries[i * dim..(i + 1) * dim];
            let row_j = &entries[j * dim..(j + 1) * dim];
            let mut dot: Amp = row_i.iter().zip(row_j).map(|(a, b)| a * b.conj()).sum();
            if i == j {
                dot -= 1.0;
            }
            worst = worst.max(dot.norm());
        }
    }
    worst
}

/// True iff `entries` is a square row-major matrix with
/// `max |U U† - I| <= tol`.
pub fn check_unitary(entries: &[Amp], tol: f64) -> bool {
    match square_dim(entries.len()) {
        Some(dim) => unitarity_defect(entries, dim) <= tol,
        None => false,
    }
}

/// Kronecker product `a ⊗ b`. Row `(i_a, i_b)` maps to `i_a * dim_b + i_b`,
/// so the first factor acts on the most significant qubits.
pub fn tensor_product(a: &CoinOperator, b: &CoinOperator) -> Result<CoinOperator> {
    let qubits = a.qubits + b.qubits;
    check_qubits(qubits)?;
    let (da, db) = (a.dim(), b.dim());
    let dim = da * db;
    let mut entries = vec![Amp::new(0.0, 0.0); dim * dim];
    for ra in 0..da {
        for ca in 0..da {
            let x = a.get(ra, ca);
            for rb in 0..db {
                for cb in 0..db {
                    entries[(ra * db + rb) * dim + ca * db + cb] = x * b.get(rb, cb);
                }
            }
        }
    }
    Ok(CoinOperator { qubits, entries })
}

/// `op ⊗ op ⊗ ...` over `qubits` factors.
pub fn tensor_power(op: &CoinOperator, qubits: usize) -> Result<CoinOperator> {
    check_qubits(qubits)?;
    if op.qubits != 1 {
        return Err(WalkError::QubitMismatch {
            context: "tensor power factor",
            expected: 1,
            got: op.qubits,
        });
    }
    let mut acc = op.clone();
    for _ in 1..qubits {
        acc = tensor_product(&acc, op)?;
    }
    Ok(acc)
}
