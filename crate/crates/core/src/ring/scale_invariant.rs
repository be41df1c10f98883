//! Closed-form amplitudes for rings of two identical scale-invariant
//! junctions, and the perfect-transmission condition of the anti-symmetric
//! ring.
//!
//! For a scale-invariant node `S₁(ξ₁) = e^{2ikξ₁} 𝒱 D_S 𝒱†` and the mirrored
//! node satisfies `S₂(ξ₂) = e^{2ikΔξ} S₁(ξ₁)†`, so every amplitude reduces to
//! a rational function of `e^{2ikΔξ}` and the entries `s_ij` of `S₁(ξ₁)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::junction::{
    check_wavenumber, is_scale_invariant, s_matrix, Orientation, DEFAULT_PREDICATE_TOL,
};

use super::{one_minus_cis, RingAmplitudes, RingConfig, SymmetryMode};

const DENOMINATOR_THRESHOLD: f64 = 1e-13;

fn require(cfg: &RingConfig, k: f64, mode: SymmetryMode, name: &str) -> Result<()> {
    check_wavenumber(k)?;
    if std::mem::discriminant(cfg.mode()) != std::mem::discriminant(&mode) {
        return Err(Error::invalid(format!("{name} requires a {mode:?} ring")));
    }
    if !is_scale_invariant(cfg.left(), DEFAULT_PREDICATE_TOL) {
        return Err(Error::invalid(format!(
            "{name} requires scale-invariant junction eigenphases (0 or pi), got {:?}",
            cfg.left().theta()
        )));
    }
    Ok(())
}

/// Entries `s_ij` (1-based) of `S₁(ξ₁)`.
struct Entries([[Complex64; 3]; 3]);

impl Entries {
    fn of(cfg: &RingConfig, k: f64, xi: f64) -> Result<Self> {
        Ok(Entries(
            s_matrix(cfg.left(), k, xi, Orientation::Inward)?.matrix().0,
        ))
    }

    #[inline]
    fn s(&self, i: usize, j: usize) -> Complex64 {
        self.0[i - 1][j - 1]
    }

    #[inline]
    fn c(&self, i: usize, j: usize) -> Complex64 {
        self.0[i - 1][j - 1].conj()
    }

    /// `s₂₂s₃₃* + s₂₃s₃₂* + s₃₂s₂₃* + s₃₃s₂₂*`
    fn cross_trace(&self) -> Complex64 {
        self.s(2, 2) * self.c(3, 3)
            + self.s(2, 3) * self.c(3, 2)
            + self.s(3, 2) * self.c(2, 3)
            + self.s(3, 3) * self.c(2, 2)
    }

    /// `Λ = −s₁₁·(cross trace) + s₁₂(s₃₃*s₂₁ + s₂₃*s₃₁) + s₁₃(s₃₂*s₂₁ + s₂₂*s₃₁)`
    fn lambda(&self) -> Complex64 {
        -self.s(1, 1) * self.cross_trace()
            + self.s(1, 2) * (self.c(3, 3) * self.s(2, 1) + self.c(2, 3) * self.s(3, 1))
            + self.s(1, 3) * (self.c(3, 2) * self.s(2, 1) + self.c(2, 2) * self.s(3, 1))
    }
}

/// Symmetric ring of scale-invariant junctions. With `e = e^{2ikΔξ}` and the
/// common denominator `1 − e|s₁₁|²`:
///
/// ```text
/// A = (1 − e)s₁₁   B = s₂₁   C = −e s₁₁ s₁₂*   D = s₃₁   E = −e s₁₁ s₁₃*
/// F = e(1 − |s₁₁|²)
/// ```
///
/// `A` vanishes exactly when `e = 1`; `F` only when the node is decoupled.
pub fn solve_symmetric_scale_invariant(cfg: &RingConfig, k: f64) -> Result<RingAmplitudes> {
    require(
        cfg,
        k,
        SymmetryMode::Symmetric,
        "symmetric scale-invariant solver",
    )?;
    let s = Entries::of(cfg, k, cfg.xi1())?;
    let phi = 2.0 * k * cfg.delta_xi();
    let e = Complex64::cis(phi);
    let r11 = s.s(1, 1).norm_sqr();
    let den = 1.0 - e * r11;
    if den.norm() < DENOMINATOR_THRESHOLD {
        return Err(Error::DegenerateRing {
            what: "1 - e^{2ik dxi}|s11|^2",
            magnitude: den.norm(),
        });
    }
    // 1 − |s₁₁|² written through column unitarity so a decoupled node gives
    // exactly zero.
    let leak = s.s(2, 1).norm_sqr() + s.s(3, 1).norm_sqr();
    Ok(RingAmplitudes {
        a: one_minus_cis(phi) * s.s(1, 1) / den,
        b: s.s(2, 1) / den,
        c: -e * s.s(1, 1) * s.c(1, 2) / den,
        d: s.s(3, 1) / den,
        e: -e * s.s(1, 1) * s.c(1, 3) / den,
        f: e * leak / den,
    })
}

/// Anti-symmetric ring of scale-invariant junctions, with
/// `𝒟 = 1 − e·(cross trace) + |s₁₁|² e²`.
///
/// `F ∝ (s₃₁*s₂₁ + s₂₁*s₃₁)(1 − e)`, so perfect reflection occurs at every
/// `e = 1` unless one of `s₂₁, s₃₁` vanishes.
pub fn solve_antisymmetric_scale_invariant(cfg: &RingConfig, k: f64) -> Result<RingAmplitudes> {
    require(
        cfg,
        k,
        SymmetryMode::AntiSymmetric,
        "anti-symmetric scale-invariant solver",
    )?;
    let s = Entries::of(cfg, k, cfg.xi1())?;
    let phi = 2.0 * k * cfg.delta_xi();
    let e = Complex64::cis(phi);
    let e2 = Complex64::cis(2.0 * phi);
    let trace = s.cross_trace();
    let big_d = 1.0 - e * trace + s.s(1, 1).norm_sqr() * e2;
    if big_d.norm() < DENOMINATOR_THRESHOLD {
        return Err(Error::DegenerateRing {
            what: "D",
            magnitude: big_d.norm(),
        });
    }
    let lambda = s.lambda();
    let (s11, s21, s31) = (s.s(1, 1), s.s(2, 1), s.s(3, 1));
    let a = s11 + s11 * e2 + e * lambda;
    let b = s21
        + e * (-s21 * (s.s(3, 2) * s.c(2, 3) + s.s(3, 3) * s.c(2, 2))
            + s31 * (s.s(2, 2) * s.c(2, 3) + s.c(2, 2) * s.s(2, 3)));
    let c = e * ((s.c(3, 3) * s21 + s.c(2, 3) * s31) + s11 * s.c(1, 2) * e);
    let d = s31
        + e * (-s31 * (s.s(2, 2) * s.c(3, 3) + s.s(2, 3) * s.c(3, 2))
            + s21 * (s.s(3, 2) * s.c(3, 3) + s.s(3, 3) * s.c(3, 2)));
    let e_amp = e * ((s.c(3, 2) * s21 + s.c(2, 2) * s31) + s11 * s.c(1, 3) * e);
    let f = e * (s.c(3, 1) * s21 + s.c(2, 1) * s31) * one_minus_cis(phi);
    Ok(RingAmplitudes {
        a: a / big_d,
        b: b / big_d,
        c: c / big_d,
        d: d / big_d,
        e: e_amp / big_d,
        f: f / big_d,
    })
}

/// Outcome of solving `A = 0` for an anti-symmetric scale-invariant ring,
/// which reads `cos(2kΔξ) = −Λ/(2s₁₁)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TransmissionTarget {
    /// Perfect transmission wherever `cos(2kΔξ)` equals this value.
    Cosine(f64),
    /// `−Λ/(2s₁₁)` is real but outside `[−1, 1]`: no perfect transmission.
    OutOfRange(f64),
    /// `−Λ/(2s₁₁)` has a non-negligible imaginary part.
    NotReal { re: f64, im: f64 },
    /// `s₁₁ = 0`: the condition degenerates.
    Degenerate,
    /// `s₂₁ = s₃₁ = 0`: the lead never enters the ring and `|A| = 1` at all `k`.
    Decoupled,
}

impl TransmissionTarget {
    pub fn cosine(&self) -> Option<f64> {
        match *self {
            TransmissionTarget::Cosine(c) => Some(c),
            _ => None,
        }
    }
}

const REALNESS_TOL: f64 = 1e-10;

/// The value `c*` with `cos(2kΔξ) = c*` at perfect transmission.
///
/// The position phases `e^{2ikξ₁}` cancel in `Λ/s₁₁`, so the ratio is formed
/// from the phase-stripped matrix `𝒱 D_S 𝒱†`.
pub fn perfect_transmission_target(cfg: &RingConfig) -> Result<TransmissionTarget> {
    require(
        cfg,
        1.0,
        SymmetryMode::AntiSymmetric,
        "perfect_transmission_target",
    )?;
    let s = Entries::of(cfg, 1.0, 0.0)?;
    let s11 = s.s(1, 1);
    if s11.norm() < 1e-12 {
        return Ok(TransmissionTarget::Degenerate);
    }
    if s.s(2, 1).norm() < 1e-12 && s.s(3, 1).norm() < 1e-12 {
        return Ok(TransmissionTarget::Decoupled);
    }
    let ratio = -s.lambda() / (2.0 * s11);
    Ok(if ratio.im.abs() >= REALNESS_TOL {
        TransmissionTarget::NotReal {
            re: ratio.re,
            im: ratio.im,
        }
    } else if ratio.re.abs() <= 1.0 {
        TransmissionTarget::Cosine(ratio.re)
    } else {
        TransmissionTarget::OutOfRange(ratio.re)
    })
}
