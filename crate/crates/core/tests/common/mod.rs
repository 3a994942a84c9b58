//! Independent reference computations used by the integration tests.
#![allow(dead_code)]

use nalgebra as na;
use num_complex::Complex64;
use qwalk_core::coins::{build_coin_operator, build_initial_coin, CoinOperatorKind, CoinPreset};
use qwalk_core::shifts::{build_shift, ShiftPreset};
use qwalk_core::{CoinOperator, CoinState, Site, WalkState};

/// Dense `S · (C ⊗ I)` evolution on the box `[-w, w]^dims`, built as two
/// explicit matrices over the flattened `(site, coin)` basis.
pub struct DenseWalk {
    dims: usize,
    window: i64,
    coin_dim: usize,
    size: usize,
    coin_layer: Vec<Complex64>,
    shift_layer: Vec<Complex64>,
}

impl DenseWalk {
    pub fn new(op: &CoinOperator, displacements: &[Vec<i64>], window: i64) -> Self {
        let dims = displacements[0].len();
        let coin_dim = op.dim();
        let side = (2 * window + 1) as usize;
        let n_sites = side.pow(dims as u32);
        let size = n_sites * coin_dim;
        let zero = Complex64::new(0.0, 0.0);

        // C ⊗ I: block diagonal over sites.
        let mut coin_layer = vec![zero; size * size];
        for site in 0..n_sites {
            for r in 0..coin_dim {
                for c in 0..coin_dim {
                    coin_layer[(site * coin_dim + r) * size + site * coin_dim + c] = op.get(r, c);
                }
            }
        }

        // S: |site + d_c, c><site, c|, dropping moves that leave the box.
        let mut shift_layer = vec![zero; size * size];
        for site in 0..n_sites {
            let coords = Self::coords_of(site, dims, window);
            for (c, d) in displacements.iter().enumerate() {
                let moved: Vec<i64> = coords.iter().zip(d).map(|(x, dx)| x + dx).collect();
                if let Some(target) = Self::index_of(&moved, window) {
                    shift_layer[(target * coin_dim + c) * size + site * coin_dim + c] = Complex64::new(1.0, 0.0);
                }
            }
        }
        DenseWalk { dims, window, coin_dim, size, coin_layer, shift_layer }
    }

    fn coords_of(mut site: usize, dims: usize, window: i64) -> Vec<i64> {
        let side = (2 * window + 1) as usize;
        let mut out = vec![0; dims];
        for k in (0..dims).rev() {
            out[k] = (site % side) as i64 - window;
            site /= side;
        }
        out
    }

    fn index_of(coords: &[i64], window: i64) -> Option<usize> {
        let side = 2 * window + 1;
        let mut idx = 0i64;
        for &x in coords {
            if x.abs() > window {
                return None;
            }
            idx = idx * side + x + window;
        }
        Some(idx as usize)
    }

    pub fn localized(&self, coords: &[i64], coin: &CoinState) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.size];
        let site = Self::index_of(coords, self.window).expect("start inside window");
        v[site * self.coin_dim..(site + 1) * self.coin_dim].copy_from_slice(coin.amplitudes());
        v
    }

    fn matvec(m: &[Complex64], v: &[Complex64], size: usize) -> Vec<Complex64> {
        m.chunks_exact(size)
            .map(|row| row.iter().zip(v).filter(|(a, _)| a.re != 0.0 || a.im != 0.0).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn step(&self, v: &[Complex64]) -> Vec<Complex64> {
        let tossed = Self::matvec(&self.coin_layer, v, self.size);
        Self::matvec(&self.shift_layer, &tossed, self.size)
    }

    pub fn amplitude(&self, v: &[Complex64], coords: &[i64], coin: usize) -> Complex64 {
        match Self::index_of(coords, self.window) {
            Some(site) => v[site * self.coin_dim + coin],
            None => Complex64::new(0.0, 0.0),
        }
    }

    /// Largest per-amplitude deviation between a sparse state and a dense
    /// vector, over both supports.
    pub fn max_deviation(&self, v: &[Complex64], state: &WalkState) -> f64 {
        let mut worst: f64 = 0.0;
        for site in 0..self.size / self.coin_dim {
            let coords = Self::coords_of(site, self.dims, self.window);
            let key = Site::from_coords(&coords).unwrap();
            for c in 0..self.coin_dim {
                worst = worst.max((v[site * self.coin_dim + c] - state.amplitude(key, c)).norm());
            }
        }
        for (site, c, a) in state.entries() {
            let coords = site.coords();
            if Self::index_of(&coords, self.window).is_none() {
                worst = worst.max(a.norm());
            } else {
                worst = worst.max((self.amplitude(v, &coords, c) - a).norm());
            }
        }
        worst
    }
}

pub fn displacement_lists(shift: ShiftPreset) -> Vec<Vec<i64>> {
    build_shift(shift).displacements().iter().map(|s| s.coords()).collect()
}

/// Every named (coin state, coin operator, shift) combination with matching
/// coin sizes.
pub fn preset_combinations() -> Vec<(CoinPreset, CoinOperatorKind, ShiftPreset)> {
    let mut out = Vec::new();
    let ops = [CoinOperatorKind::HadamardN, CoinOperatorKind::YN];
    let mut coins: Vec<CoinPreset> = CoinPreset::NAMED.to_vec();
    // single-qubit basis state |0>
    coins.push(CoinPreset::Custom(vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]));
    for coin in &coins {
        let q = build_initial_coin(coin).unwrap().qubits();
        for op in &ops {
            for shift in ShiftPreset::ALL.into_iter().filter(|s| s.qubits() == q) {
                out.push((coin.clone(), op.clone(), shift));
            }
        }
    }
    out
}

pub fn operator(kind: &CoinOperatorKind, qubits: usize) -> CoinOperator {
    build_coin_operator(kind, qubits).unwrap()
}

/// Entropy in bits from the eigenvalues of the 2×2 Gram matrix of the
/// reshaped coefficient matrix, via nalgebra's Hermitian eigensolver.
pub fn gram_entropy(state: &CoinState, cut: usize) -> f64 {
    let q = state.qubits();
    let rows = 1usize << cut;
    let cols = 1usize << (q - cut);
    let m = na::DMatrix::from_row_slice(rows, cols, state.amplitudes());
    let gram = if rows <= cols { &m * m.adjoint() } else { m.adjoint() * &m };
    gram.symmetric_eigenvalues()
        .iter()
        .map(|&l| l.max(0.0))
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum()
}

/// Haar-style parametrized 2×2 unitary.
pub fn unitary2(alpha: f64, beta: f64, gamma: f64, theta: f64) -> CoinOperator {
    let e = |phi: f64| Complex64::from_polar(1.0, phi);
    let (c, s) = (theta.cos(), theta.sin());
    let g = e(alpha);
    CoinOperator::new(vec![
        g * e(beta) * c,
        g * e(gamma) * s,
        -g * e(-gamma) * s,
        g * e(-beta) * c,
    ])
    .unwrap()
}
