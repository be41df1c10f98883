//! A ring made of two Y-junctions joined by two internal wires.
//!
//! The left node at `ξ₁` has inward axes `x₁, x₂, x₃`; the right node at
//! `ξ₂ < ξ₁` has outward axes `x₂, x₃, x₄`. A unit wave enters on `x₁`:
//!
//! ```text
//! Φ₁ = e^{ikx} + A e^{−ikx}    Φ₂ = B e^{−ikx} + C e^{ikx}
//! Φ₃ = D e^{−ikx} + E e^{ikx}  Φ₄ = F e^{ikx}
//! ```
//!
//! so that `(A, B, D) = S₁·(1, C, E)` and `(F, C, E) = S₂·(0, B, D)`.

mod scale_invariant;
mod solvers;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::junction::{
    check_wavenumber, is_scale_invariant, s_matrix, JunctionParams, Orientation, ScatteringMatrix,
    DEFAULT_PREDICATE_TOL,
};
use crate::smallmat::{Mat2, Mat3, Vec2};

pub use scale_invariant::{
    perfect_transmission_target, solve_antisymmetric_scale_invariant,
    solve_symmetric_scale_invariant, TransmissionTarget,
};
pub use solvers::{
    algebraic_denominators, solve_algebraic, solve_closed_form, solve_series, SeriesSolution,
};

/// How the right-hand junction relates to the left one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymmetryMode {
    /// Same parameters as the left node, mirrored.
    Symmetric,
    /// Same parameters with arms 2 and 3 exchanged (`P·S₂·P⁻¹`).
    AntiSymmetric,
    /// An independent right junction.
    General(JunctionParams),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingConfig {
    left: JunctionParams,
    mode: SymmetryMode,
    xi1: f64,
    xi2: f64,
}

impl RingConfig {
    /// Requires finite positions with `xi1 > xi2`.
    pub fn new(left: JunctionParams, mode: SymmetryMode, xi1: f64, xi2: f64) -> Result<Self> {
        if !(xi1.is_finite() && xi2.is_finite()) {
            return Err(Error::invalid("node positions must be finite"));
        }
        if !(xi1 > xi2) {
            return Err(Error::invalid(format!(
                "ring requires xi1 > xi2, got xi1 = {xi1}, xi2 = {xi2}"
            )));
        }
        Ok(RingConfig {
            left,
            mode,
            xi1,
            xi2,
        })
    }

    pub fn left(&self) -> &JunctionParams {
        &self.left
    }

    pub fn mode(&self) -> &SymmetryMode {
        &self.mode
    }

    pub fn xi1(&self) -> f64 {
        self.xi1
    }

    pub fn xi2(&self) -> f64 {
        self.xi2
    }

    /// Length of the internal wires, `ξ₁ − ξ₂ > 0`.
    pub fn delta_xi(&self) -> f64 {
        self.xi1 - self.xi2
    }

    /// The right junction's parameters (before any arm swap).
    pub fn right(&self) -> &JunctionParams {
        match &self.mode {
            SymmetryMode::General(right) => right,
            _ => &self.left,
        }
    }

    /// True when the closed forms for scale-invariant symmetric or
    /// anti-symmetric rings apply.
    pub fn has_scale_invariant_fast_path(&self) -> bool {
        !matches!(self.mode, SymmetryMode::General(_))
            && is_scale_invariant(&self.left, DEFAULT_PREDICATE_TOL)
    }
}

/// Reflection `A`, transmission `F`, and the interior amplitudes `B..E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingAmplitudes {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub e: Complex64,
    pub f: Complex64,
}

impl RingAmplitudes {
    pub fn as_array(&self) -> [Complex64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    pub fn from_array([a, b, c, d, e, f]: [Complex64; 6]) -> Self {
        RingAmplitudes { a, b, c, d, e, f }
    }

    /// `|A|²`
    pub fn reflection(&self) -> f64 {
        self.a.norm_sqr()
    }

    /// `|F|²`
    pub fn transmission(&self) -> f64 {
        self.f.norm_sqr()
    }

    /// Largest entrywise modulus difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array().iter())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|z| z.is_finite())
    }
}

/// Components of `S₁(ξ₁)` (written `s_ij`) and of the effective right
/// matrix (written `s̃_ij`), with the 2×2 inner blocks `s` and `s̃`.
#[derive(Debug, Clone, Copy)]
pub struct SubBlocks {
    left: Mat3,
    right: Mat3,
}

impl SubBlocks {
    pub fn new(s1: &ScatteringMatrix, s2: &ScatteringMatrix) -> Self {
        SubBlocks {
            left: *s1.matrix(),
            right: *s2.matrix(),
        }
    }

    /// `s_ij`, 1-based.
    #[inline]
    pub fn s(&self, i: usize, j: usize) -> Complex64 {
        self.left[(i - 1, j - 1)]
    }

    /// `s̃_ij`, 1-based.
    #[inline]
    pub fn st(&self, i: usize, j: usize) -> Complex64 {
        self.right[(i - 1, j - 1)]
    }

    /// `s = [[s₂₂, s₂₃], [s₃₂, s₃₃]]`
    pub fn s_block(&self) -> Mat2 {
        self.left.inner_block()
    }

    /// `s̃ = [[s̃₂₂, s̃₂₃], [s̃₃₂, s̃₃₃]]`
    pub fn s_tilde_block(&self) -> Mat2 {
        self.right.inner_block()
    }

    /// `(s₂₁, s₃₁)ᵀ`: the amplitudes injected into the ring by the left node.
    pub fn injection(&self) -> Vec2 {
        crate::smallmat::CVec([self.s(2, 1), self.s(3, 1)])
    }

    /// `s·s̃`, the round-trip propagator of the internal wires.
    pub fn round_trip(&self) -> Mat2 {
        self.s_block() * self.s_tilde_block()
    }
}

/// `S₁ = S⁽ⁱⁿ⁾(ξ₁)` of the left junction and the effective right matrix:
/// `S⁽ᵒᵘᵗ⁾(ξ₂)` of the right junction, arm-swapped in anti-symmetric mode.
pub fn ring_matrices(cfg: &RingConfig, k: f64) -> Result<(ScatteringMatrix, ScatteringMatrix)> {
    check_wavenumber(k)?;
    let s1 = s_matrix(&cfg.left, k, cfg.xi1, Orientation::Inward)?;
    let s2 = match &cfg.mode {
        SymmetryMode::Symmetric => s_matrix(&cfg.left, k, cfg.xi2, Orientation::Outward)?,
        SymmetryMode::AntiSymmetric => {
            s_matrix(&cfg.left, k, cfg.xi2, Orientation::Outward)?.swap_arms_23()
        }
        SymmetryMode::General(right) => s_matrix(right, k, cfg.xi2, Orientation::Outward)?,
    };
    Ok((s1, s2))
}

/// Solves the ring at `k`, using the scale-invariant closed forms when the
/// configuration admits them and the general resolvent otherwise.
pub fn solve(cfg: &RingConfig, k: f64) -> Result<RingAmplitudes> {
    if cfg.has_scale_invariant_fast_path() {
        let fast = match cfg.mode {
            SymmetryMode::Symmetric => solve_symmetric_scale_invariant(cfg, k)?,
            _ => solve_antisymmetric_scale_invariant(cfg, k)?,
        };
        #[cfg(debug_assertions)]
        debug_check_fast_path(cfg, k, &fast);
        Ok(fast)
    } else {
        let (s1, s2) = ring_matrices(cfg, k)?;
        solve_closed_form(&s1, &s2)
    }
}

#[cfg(debug_assertions)]
fn debug_check_fast_path(cfg: &RingConfig, k: f64, fast: &RingAmplitudes) {
    let Ok((s1, s2)) = ring_matrices(cfg, k) else {
        return;
    };
    let blocks = SubBlocks::new(&s1, &s2);
    let det = (Mat2::identity() - blocks.round_trip())
        .determinant()
        .norm();
    if let Ok(general) = solve_closed_form(&s1, &s2) {
        // The resolvent loses accuracy like 1/|det|² near a singular point.
        let tol = 1e-10 * (1.0 + det.powi(-2));
        let diff = general.max_diff(fast);
        debug_assert!(
            diff <= tol,
            "fast path disagrees with resolvent by {diff:.3e} at k = {k}"
        );
    }
}

/// `1 − e^{iφ}` without cancellation near `φ ∈ 2πℤ`.
pub(crate) fn one_minus_cis(phi: f64) -> Complex64 {
    let h = (phi / 2.0).sin();
    Complex64::new(2.0 * h * h, -phi.sin())
}
