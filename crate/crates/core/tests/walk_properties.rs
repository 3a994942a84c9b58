mod common;

use common::{preset_combinations, unitary2};
use num_complex::Complex64;
use proptest::prelude::*;
use qwalk_core::classical::{binomial_walk_distribution, correlation, JointCoinDistribution};
use qwalk_core::coins::{
    build_coin_operator, build_initial_coin, entanglement_entropy, CoinOperatorKind, CoinPreset,
};
use qwalk_core::engine::{coin_distribution, evolve, evolve_with, position_distribution, WalkConfig};
use qwalk_core::linalg::tensor_product;
use qwalk_core::shifts::{apply_shift, build_shift, DisplacementTable, ShiftPreset};
use qwalk_core::{check_unitary, state_norm, CoinState, Site, WalkState};

fn walk(coin: CoinPreset, kind: CoinOperatorKind, shift: ShiftPreset, steps: usize) -> WalkConfig {
    let c = build_initial_coin(&coin).unwrap();
    let q = c.qubits();
    WalkConfig::new(c, build_coin_operator(&kind, q).unwrap(), build_shift(shift), steps).unwrap()
}

#[test]
fn every_line_preset_stays_normalized_for_200_steps() {
    for (coin, kind, shift) in preset_combinations().into_iter().filter(|c| c.2 != ShiftPreset::Plane) {
        let s = evolve(&walk(coin.clone(), kind.clone(), shift, 200));
        assert!((state_norm(&s) - 1.0).abs() < 1e-10, "{} {} {}", coin.name(), kind.name(), shift.name());
        assert!(s.within_window());
    }
}

#[test]
fn plane_walks_stay_normalized_for_200_steps() {
    for kind in [CoinOperatorKind::HadamardN, CoinOperatorKind::YN] {
        let s = evolve(&walk(CoinPreset::Ghz3, kind, ShiftPreset::Plane, 200));
        assert!((state_norm(&s) - 1.0).abs() < 1e-10);
        assert!(s.within_window());
    }
}

#[test]
fn per_step_norm_drift_is_tiny() {
    let cfg = walk(CoinPreset::Theta1, CoinOperatorKind::YN, ShiftPreset::EcPrime, 50);
    let mut prev = 1.0;
    evolve_with(&cfg, |_, s| {
        let norm = state_norm(s);
        assert!((norm - prev).abs() < 1e-14);
        prev = norm;
    });
}

#[test]
fn phi_plus_hadamard_walk_is_symmetric() {
    let p = position_distribution(&evolve(&walk(CoinPreset::PhiPlus, CoinOperatorKind::HadamardN, ShiftPreset::Ec, 100)));
    for k in 0..=100 {
        assert!((p.get(&Site::Line(k)) - p.get(&Site::Line(-k))).abs() < 1e-12, "k = {k}");
    }
}

#[test]
fn entangled_walk_has_no_parity_constraint() {
    for n in (3..=21).step_by(2) {
        let p = position_distribution(&evolve(&walk(CoinPreset::PhiPlus, CoinOperatorKind::HadamardN, ShiftPreset::Ec, n)));
        let odd: f64 = p.iter().filter(|(s, _)| s.coords()[0] % 2 != 0).map(|(_, v)| v).sum();
        let even: f64 = p.iter().filter(|(s, _)| s.coords()[0] % 2 == 0).map(|(_, v)| v).sum();
        assert!(odd > 0.0 && even > 0.0, "n = {n}");
    }
}

#[test]
fn singlet_coin_never_moves() {
    for kind in [CoinOperatorKind::HadamardN, CoinOperatorKind::YN] {
        evolve_with(&walk(CoinPreset::PsiMinus, kind, ShiftPreset::Ec, 60), |_, s| {
            let p = position_distribution(s);
            assert!((p.get(&Site::Line(0)) - 1.0).abs() < 1e-12);
            let c = coin_distribution(s);
            assert!((c.get(&1) - 0.5).abs() < 1e-12 && (c.get(&2) - 0.5).abs() < 1e-12);
        });
    }
}

#[test]
fn hadamard_leaves_phi_plus_coin_marginal() {
    let s = evolve(&walk(CoinPreset::PhiPlus, CoinOperatorKind::HadamardN, ShiftPreset::Ec, 1));
    let c = coin_distribution(&s);
    assert!((c.get(&0) - 0.5).abs() < 1e-15);
    assert!((c.get(&3) - 0.5).abs() < 1e-15);
    assert!(c.get(&1) < 1e-30 && c.get(&2) < 1e-30);
}

#[test]
fn classical_binomial_is_normalized_and_has_parity() {
    for n in 0..=200u64 {
        for p in [0.5, 0.1, 0.73] {
            assert!(binomial_walk_distribution(n, p).unwrap().is_normalized(1e-12), "n = {n}, p = {p}");
        }
    }
    for n in 1..=50u64 {
        let d = binomial_walk_distribution(n, 0.5).unwrap();
        assert!(d.support().all(|k| (k - n as i64).rem_euclid(2) == 0));
    }
}

fn angle() -> impl Strategy<Value = f64> {
    -std::f64::consts::PI..std::f64::consts::PI
}

fn arb_unitary() -> impl Strategy<Value = qwalk_core::CoinOperator> {
    (angle(), angle(), angle(), angle()).prop_map(|(a, b, c, t)| unitary2(a, b, c, t))
}

fn arb_qubit() -> impl Strategy<Value = CoinState> {
    (angle(), angle()).prop_map(|(t, phi)| {
        CoinState::new(vec![Complex64::new(t.cos(), 0.0), Complex64::from_polar(t.sin(), phi)]).unwrap()
    })
}

fn arb_state() -> impl Strategy<Value = WalkState> {
    prop::collection::vec((-5i64..5, 0usize..4, -1.0f64..1.0, -1.0f64..1.0), 1..12).prop_map(|entries| {
        WalkState::from_entries(1, 2, entries.into_iter().map(|(x, c, re, im)| (Site::Line(x), c, Complex64::new(re, im))))
            .unwrap()
    })
}

fn arb_table() -> impl Strategy<Value = DisplacementTable> {
    prop::collection::vec(-3i64..=3, 4).prop_map(|d| DisplacementTable::line(&d).unwrap())
}

fn pearson(j: &JointCoinDistribution, heads: f64, tails: f64) -> f64 {
    use qwalk_core::classical::Outcome::*;
    let v = |tail: bool| if tail { tails } else { heads };
    let cases = [(HH, false, false), (HT, false, true), (TH, true, false), (TT, true, true)];
    let e1: f64 = cases.iter().map(|(o, a, _)| j.prob(*o) * v(*a)).sum();
    let e2: f64 = cases.iter().map(|(o, _, b)| j.prob(*o) * v(*b)).sum();
    let e12: f64 = cases.iter().map(|(o, a, b)| j.prob(*o) * v(*a) * v(*b)).sum();
    let v1: f64 = cases.iter().map(|(o, a, _)| j.prob(*o) * (v(*a) - e1).powi(2)).sum();
    let v2: f64 = cases.iter().map(|(o, _, b)| j.prob(*o) * (v(*b) - e2).powi(2)).sum();
    (e12 - e1 * e2) / (v1 * v2).sqrt()
}

proptest! {
    #[test]
    fn tensor_product_is_associative(a in arb_unitary(), b in arb_unitary(), c in arb_unitary()) {
        let left = tensor_product(&tensor_product(&a, &b).unwrap(), &c).unwrap();
        let right = tensor_product(&a, &tensor_product(&b, &c).unwrap()).unwrap();
        for (x, y) in left.entries().iter().zip(right.entries()) {
            prop_assert!((x - y).norm() < 1e-15);
        }
    }

    #[test]
    fn tensor_product_stays_unitary(a in arb_unitary(), b in arb_unitary()) {
        prop_assert!(check_unitary(tensor_product(&a, &b).unwrap().entries(), 1e-12));
    }

    #[test]
    fn entropy_ignores_local_unitaries(u in arb_unitary(), v in arb_unitary(), which in 0usize..8) {
        let two_qubit: Vec<CoinPreset> = CoinPreset::NAMED
            .into_iter()
            .filter(|p| build_initial_coin(p).unwrap().qubits() == 2)
            .collect();
        let coin = &two_qubit[which];
        let s = build_initial_coin(coin).unwrap();
        let rotated = s.apply(&tensor_product(&u, &v).unwrap()).unwrap();
        let before = entanglement_entropy(&s, 1).unwrap();
        let after = entanglement_entropy(&rotated, 1).unwrap();
        prop_assert!((before - after).abs() < 1e-10, "{}: {} vs {}", coin.name(), before, after);
    }

    #[test]
    fn product_states_carry_no_entanglement(a in arb_qubit(), b in arb_qubit(), c in arb_qubit()) {
        let ab = a.product(&b).unwrap();
        prop_assert!(entanglement_entropy(&ab, 1).unwrap() < 1e-12);
        let abc = ab.product(&c).unwrap();
        prop_assert!(entanglement_entropy(&abc, 1).unwrap() < 1e-12);
        prop_assert!(entanglement_entropy(&abc, 2).unwrap() < 1e-12);
    }

    #[test]
    fn singlet_is_invariant_under_identical_local_unitaries(u in arb_unitary()) {
        let psi = build_initial_coin(&CoinPreset::PsiMinus).unwrap();
        let rotated = psi.apply(&tensor_product(&u, &u).unwrap()).unwrap();
        prop_assert!((psi.inner(&rotated).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shifts_preserve_amplitudes_exactly(s in arb_state(), t in arb_table()) {
        let moved = apply_shift(&s, &t).unwrap();
        // Bit patterns of the nonzero amplitudes; newly touched sites are
        // padded with zeros, which the filter drops.
        let bits = |st: &WalkState| {
            let mut v: Vec<(u64, u64)> = st
                .entries()
                .filter(|e| e.2.norm() > 0.0)
                .map(|e| (e.2.re.to_bits(), e.2.im.to_bits()))
                .collect();
            v.sort();
            v
        };
        prop_assert_eq!(bits(&s), bits(&moved));
        prop_assert!((state_norm(&moved) - state_norm(&s)).abs() <= 1e-15 * state_norm(&s));
        // Injective: each input key lands on its own translated key.
        for (site, c, a) in s.entries() {
            prop_assert_eq!(moved.amplitude(site.translate(t.displacement(c)), c), a);
        }
    }

    #[test]
    fn shifts_invert(s in arb_state(), t in arb_table()) {
        let back = apply_shift(&apply_shift(&s, &t).unwrap(), &t.negate()).unwrap();
        for (site, c, a) in back.entries() {
            prop_assert_eq!(s.amplitude(site, c), a);
        }
        for (site, c, a) in s.entries() {
            prop_assert_eq!(back.amplitude(site, c), a);
        }
    }

    #[test]
    fn zero_shift_is_identity(s in arb_state()) {
        let same = apply_shift(&s, &DisplacementTable::zero(1, 2).unwrap()).unwrap();
        prop_assert_eq!(same.entries().collect::<Vec<_>>(), s.entries().collect::<Vec<_>>());
    }

    #[test]
    fn correlation_ignores_affine_encoding(
        w in prop::collection::vec(0.05f64..1.0, 4),
        scale in prop_oneof![-5.0f64..-0.1, 0.1f64..5.0],
        offset in -3.0f64..3.0,
    ) {
        let total: f64 = w.iter().sum();
        let j = JointCoinDistribution::new(w[0] / total, w[1] / total, w[2] / total, w[3] / total);
        prop_assume!(j.is_ok());
        let j = j.unwrap();
        let rho = correlation(&j).unwrap();
        prop_assert!((pearson(&j, offset, scale + offset) - rho).abs() < 1e-9);
    }
}
