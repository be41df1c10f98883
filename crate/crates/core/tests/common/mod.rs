#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use proptest::prelude::*;
use yring::{EulerAngles, JunctionParams, RingConfig, SymmetryMode};

pub fn euler() -> impl Strategy<Value = EulerAngles> {
    prop::array::uniform6(0.0..TAU).prop_map(EulerAngles::from_array)
}

pub fn junction() -> impl Strategy<Value = JunctionParams> {
    (prop::array::uniform3(0.0..TAU), euler(), 0.2..5.0f64)
        .prop_map(|(t, e, l0)| JunctionParams::new(t, e, l0).unwrap())
}

/// Eigenphases in `{0, π}`, not all equal.
pub fn si_theta() -> impl Strategy<Value = [f64; 3]> {
    prop::array::uniform3(any::<bool>())
        .prop_filter("mixed eigenvalues", |b| !(b[0] == b[1] && b[1] == b[2]))
        .prop_map(|b| b.map(|x| if x { PI } else { 0.0 }))
}

pub fn si_junction() -> impl Strategy<Value = JunctionParams> {
    (si_theta(), euler(), 0.2..5.0f64).prop_map(|(t, e, l0)| JunctionParams::new(t, e, l0).unwrap())
}

pub fn positions() -> impl Strategy<Value = (f64, f64)> {
    (-3.0..3.0f64, 0.2..3.0f64).prop_map(|(xi2, d)| (xi2 + d, xi2))
}

pub fn ring() -> impl Strategy<Value = RingConfig> {
    (junction(), junction(), 0..3u8, positions()).prop_map(|(l, r, m, (x1, x2))| {
        let mode = match m {
            0 => SymmetryMode::Symmetric,
            1 => SymmetryMode::AntiSymmetric,
            _ => SymmetryMode::General(r),
        };
        RingConfig::new(l, mode, x1, x2).unwrap()
    })
}

/// `ξ₂ = 0`, so the ring phase `2kΔξ` and the node phases `2kξ₁`, `−2kξ₂`
/// are computed from identical floating-point arguments.
pub fn anchored_positions() -> impl Strategy<Value = (f64, f64)> {
    (0.2..3.0f64).prop_map(|d| (d, 0.0))
}

pub fn si_ring(mode_anti: bool) -> impl Strategy<Value = RingConfig> {
    (si_junction(), anchored_positions()).prop_map(move |(l, (x1, x2))| {
        let mode = if mode_anti {
            SymmetryMode::AntiSymmetric
        } else {
            SymmetryMode::Symmetric
        };
        RingConfig::new(l, mode, x1, x2).unwrap()
    })
}

pub fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// `|det(I − s s̃)|` at `k`; small values mean a near-singular ring where
/// every method loses accuracy in proportion.
pub fn conditioning(cfg: &RingConfig, k: f64) -> f64 {
    use yring::ring::{ring_matrices, SubBlocks};
    let (s1, s2) = ring_matrices(cfg, k).unwrap();
    let m = SubBlocks::new(&s1, &s2).round_trip();
    (yring::Mat2::identity() - m).determinant().norm()
}
