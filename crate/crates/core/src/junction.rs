//! A single Y-junction: the U(3) boundary condition, its S-matrices on inward
//! and outward axes, and the predicates that classify it.
//!
//! The unitary `U = 𝒱 · diag(e^{iθ₁}, e^{iθ₂}, e^{iθ₃}) · 𝒱†` is fixed by the
//! three eigenphases and six Euler angles of `𝒱`. The remaining Euler angles
//! of SU(3) and the overall U(1) phase commute with the diagonal factor and
//! drop out of `U`, so they are not stored.

use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::smallmat::{exp_i_generator, unitarity_error, Mat3, Vec3};

/// Default tolerance for the angle-based predicates.
pub const DEFAULT_PREDICATE_TOL: f64 = 1e-9;

/// Unitarity tolerance every constructed S-matrix is held to.
pub const UNITARITY_TOL: f64 = 1e-12;

/// Reduces an angle to `[0, 2π)`.
pub fn canonical_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, π]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    let d = canonical_angle(a - b);
    d.min(TAU - d)
}

/// Euler angles `(α, β, γ, δ, a, b)` of
/// `𝒱 = e^{iαλ₃} e^{iβλ₂} e^{iγλ₃} e^{iδλ₅} e^{iaλ₃} e^{ibλ₂}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EulerAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub a: f64,
    pub b: f64,
}

impl EulerAngles {
    pub fn as_array(&self) -> [f64; 6] {
        [
            self.alpha, self.beta, self.gamma, self.delta, self.a, self.b,
        ]
    }

    pub fn from_array([alpha, beta, gamma, delta, a, b]: [f64; 6]) -> Self {
        EulerAngles {
            alpha,
            beta,
            gamma,
            delta,
            a,
            b,
        }
    }
}

/// The nine junction angles plus the gauge length `L₀`.
///
/// Angles are stored reduced to `[0, 2π)`. The eigenphase order is kept as
/// given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionParams {
    theta: [f64; 3],
    euler: EulerAngles,
    l0: f64,
}

impl JunctionParams {
    pub fn new(theta: [f64; 3], euler: EulerAngles, l0: f64) -> Result<Self> {
        if !(l0.is_finite() && l0 > 0.0) {
            return Err(Error::invalid(format!(
                "L0 must be finite and > 0, got {l0}"
            )));
        }
        if theta
            .iter()
            .chain(euler.as_array().iter())
            .any(|x| !x.is_finite())
        {
            return Err(Error::invalid("junction angles must be finite"));
        }
        Ok(JunctionParams {
            theta: theta.map(canonical_angle),
            euler: EulerAngles::from_array(euler.as_array().map(canonical_angle)),
            l0,
        })
    }

    pub fn theta(&self) -> [f64; 3] {
        self.theta
    }

    pub fn euler(&self) -> EulerAngles {
        self.euler
    }

    pub fn l0(&self) -> f64 {
        self.l0
    }

    /// Effective lengths `Lᵢ = L₀ cot(θᵢ/2)`; infinite for `θᵢ = 0`.
    pub fn lengths(&self) -> [f64; 3] {
        self.theta.map(|t| {
            let (s, c) = (t / 2.0).sin_cos();
            if s == 0.0 {
                f64::INFINITY
            } else {
                self.l0 * c / s
            }
        })
    }
}

/// Direction of the wire axes relative to the node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// All axes point into the node.
    Inward,
    /// All axes point away from the node (`k → −k`).
    Outward,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Inward => 1.0,
            Orientation::Outward => -1.0,
        }
    }
}

/// A junction S-matrix mapping incoming amplitudes φ to outgoing ψ = S·φ,
/// tagged with the wavenumber, node position and axis orientation it was
/// built for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringMatrix {
    m: Mat3,
    k: f64,
    xi: f64,
    orientation: Orientation,
}

impl ScatteringMatrix {
    /// Wraps a matrix, checking it is finite and unitary to [`UNITARITY_TOL`].
    pub fn new(m: Mat3, k: f64, xi: f64, orientation: Orientation) -> Result<Self> {
        check_wavenumber(k)?;
        if !m.is_finite() || !xi.is_finite() {
            return Err(Error::invalid(
                "S-matrix entries and position must be finite",
            ));
        }
        let err = unitarity_error(&m);
        if err > UNITARITY_TOL {
            return Err(Error::invalid(format!(
                "S-matrix is not unitary (error {err:.3e})"
            )));
        }
        Ok(ScatteringMatrix {
            m,
            k,
            xi,
            orientation,
        })
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.m
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// `P·S·P⁻¹` with `P` swapping arms 2 and 3.
    pub fn swap_arms_23(&self) -> Self {
        let p = swap_23();
        ScatteringMatrix {
            m: p * self.m * p,
            ..*self
        }
    }
}

/// Permutation exchanging arms 2 and 3 (its own inverse).
pub fn swap_23() -> Mat3 {
    Mat3::from_real([[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
}

pub(crate) fn check_wavenumber(k: f64) -> Result<()> {
    if k.is_finite() && k > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "wavenumber k must be finite and > 0, got {k}"
        )))
    }
}

/// The diagonalizing unitary `𝒱` built from the six Euler angles.
pub fn build_v(p: &JunctionParams) -> Mat3 {
    let e = p.euler;
    // Generators 2, 3, 5 always have closed forms.
    let g = |idx, angle| exp_i_generator(idx, angle).expect("supported generator");
    g(3, e.alpha) * g(2, e.beta) * g(3, e.gamma) * g(5, e.delta) * g(3, e.a) * g(2, e.b)
}

/// The junction unitary `U = 𝒱 D 𝒱†`.
pub fn build_u(p: &JunctionParams) -> Mat3 {
    let v = build_v(p);
    let d = Mat3::from_diagonal(p.theta.map(Complex64::cis));
    v * d * v.dagger()
}

/// Diagonal of `S₀` for the given orientation.
///
/// Written as `(ikL₀cos(θ/2) ± sin(θ/2)) / (ikL₀cos(θ/2) ∓ sin(θ/2))`, which
/// equals `(ikLᵢ ± 1)/(ikLᵢ ∓ 1)` without ever forming `cot(θ/2)`.
fn s0_diagonal(p: &JunctionParams, k: f64, orientation: Orientation) -> [Complex64; 3] {
    let sign = orientation.sign();
    p.theta.map(|t| {
        let (s, c) = (t / 2.0).sin_cos();
        let ikl = Complex64::new(0.0, k * p.l0 * c);
        (ikl + sign * s) / (ikl - sign * s)
    })
}

/// S-matrix of the junction placed at `xi`:
/// inward `e^{2ikξ} 𝒱 S₀⁽ⁱⁿ⁾ 𝒱†`, outward `e^{−2ikξ} 𝒱 S₀⁽ᵒᵘᵗ⁾ 𝒱†`.
pub fn s_matrix(
    p: &JunctionParams,
    k: f64,
    xi: f64,
    orientation: Orientation,
) -> Result<ScatteringMatrix> {
    check_wavenumber(k)?;
    if !xi.is_finite() {
        return Err(Error::invalid("node position must be finite"));
    }
    let v = build_v(p);
    let s0 = Mat3::from_diagonal(s0_diagonal(p, k, orientation));
    let phase = Complex64::cis(2.0 * orientation.sign() * k * xi);
    let m = (v * s0 * v.dagger()).scale(phase);
    Ok(ScatteringMatrix {
        m,
        k,
        xi,
        orientation,
    })
}

/// Max-norm of `(U − I)Ψ + iL₀(U + I)Ψ′` for boundary data built from the
/// incoming amplitudes `phi` and outgoing amplitudes `psi`.
///
/// Inward axes: `Ψ = e^{ikξ}φ + e^{−ikξ}ψ`, `Ψ′ = ik(e^{ikξ}φ − e^{−ikξ}ψ)`;
/// outward axes use `k → −k`. Zero exactly when `psi` is the scattered
/// response to `phi`.
pub fn junction_residual(
    u: &Mat3,
    l0: f64,
    k: f64,
    xi: f64,
    phi: &Vec3,
    psi: &Vec3,
    orientation: Orientation,
) -> f64 {
    let kk = orientation.sign() * k;
    let fwd = Complex64::cis(kk * xi);
    let bwd = Complex64::cis(-kk * xi);
    let ik = Complex64::new(0.0, kk);
    let big_psi = phi.scale(fwd) + psi.scale(bwd);
    let big_psi_d = (phi.scale(fwd) - psi.scale(bwd)).scale(ik);
    let id = Mat3::identity();
    let lhs = (*u - id) * big_psi;
    let rhs = ((*u + id) * big_psi_d).scale(Complex64::new(0.0, l0));
    (lhs + rhs).max_norm()
}

/// Transition probabilities: entry `[j][i] = |S_ji|²` is `P(i → j)`.
pub fn probabilities(s: &ScatteringMatrix) -> [[f64; 3]; 3] {
    s.m.0.map(|row| row.map(|z| z.norm_sqr()))
}

/// Whether `U = Uᵀ` to within `tol` in max-norm.
///
/// `α, γ, a ∈ {0, π}` is sufficient: `𝒱` is then real.
pub fn is_time_reversal(p: &JunctionParams, tol: f64) -> bool {
    let u = build_u(p);
    (u - u.transpose()).max_norm() <= tol
}

/// Whether every eigenphase is within `tol` of `0` or `π`, i.e. the
/// eigenvalues of `U` are `±1` and the boundary condition has no length scale.
pub fn is_scale_invariant(p: &JunctionParams, tol: f64) -> bool {
    p.theta
        .iter()
        .all(|&t| angle_distance(t, 0.0) <= tol || angle_distance(t, PI) <= tol)
}

/// The symmetric three-port beam splitter parametrized by `b`.
pub fn buttiker_matrix(b: f64) -> Mat3 {
    let (s2, c2) = (2.0 * b).sin_cos();
    let t = s2 / 2f64.sqrt();
    Mat3::from_real([
        [-c2, t, t],
        [t, (c2 - 1.0) / 2.0, (c2 + 1.0) / 2.0],
        [t, (c2 + 1.0) / 2.0, (c2 - 1.0) / 2.0],
    ])
}

/// Junction parameters whose phase-stripped S-matrix is
/// [`buttiker_matrix`]`(b)`: `α = 0, β = 3π/2, γ = π, δ = π/4, a = 0`,
/// `θ = (0, π, π)`.
pub fn buttiker_params(b: f64, l0: f64) -> Result<JunctionParams> {
    JunctionParams::new(
        [0.0, PI, PI],
        EulerAngles {
            alpha: 0.0,
            beta: 1.5 * PI,
            gamma: PI,
            delta: FRAC_PI_4,
            a: 0.0,
            b,
        },
        l0,
    )
}

/// Moves the gauge length to `new_l0`, compensating the eigenphases so that
/// every `Lᵢ = L₀ cot(θᵢ/2)` and hence every S-matrix is unchanged.
pub fn gauge_shift(p: &JunctionParams, new_l0: f64) -> Result<JunctionParams> {
    if !(new_l0.is_finite() && new_l0 > 0.0) {
        return Err(Error::invalid(format!(
            "new L0 must be finite and > 0, got {new_l0}"
        )));
    }
    // tan(θ′/2) = (L₀′/L₀) tan(θ/2), solved on the branch θ/2 ∈ [0, π).
    let theta = p.theta.map(|t| {
        let (s, c) = (t / 2.0).sin_cos();
        2.0 * (new_l0 * s).atan2(p.l0 * c)
    });
    JunctionParams::new(theta, p.euler, new_l0)
}
