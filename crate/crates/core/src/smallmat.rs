//! Fixed-size complex linear algebra for the 2×2 and 3×3 matrices that show
//! up at a Y-junction, plus the Gell-Mann basis of su(3) and closed-form
//! exponentials of the four generators used in the Euler-angle
//! parametrization.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative determinant threshold below which [`inverse2`] reports a
/// singular matrix (scaled by the squared max-norm of the input).
pub const SINGULARITY_THRESHOLD: f64 = 1e-13;

/// Dense row-major complex `N × N` matrix.
#[derive(Clone, Copy, PartialEq)]
pub struct Mat<const N: usize>(pub [[Complex64; N]; N]);

/// Complex column vector of length `N`.
#[derive(Clone, Copy, PartialEq)]
pub struct CVec<const N: usize>(pub [Complex64; N]);

pub type Mat2 = Mat<2>;
pub type Mat3 = Mat<3>;
pub type Vec2 = CVec<2>;
pub type Vec3 = CVec<3>;

impl<const N: usize> Mat<N> {
    pub const fn zeros() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        Self::from_diagonal([ONE; N])
    }

    pub fn from_diagonal(diag: [Complex64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.0[i][i] = d;
        }
        m
    }

    /// Builds a matrix from rows, rejecting NaN or infinite entries.
    pub fn try_from_rows(rows: [[Complex64; N]; N]) -> Result<Self> {
        let m = Mat(rows);
        if m.is_finite() {
            Ok(m)
        } else {
            Err(Error::invalid("matrix entries must be finite"))
        }
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        Mat(rows.map(|r| r.map(|x| Complex64::new(x, 0.0))))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.0[j][i] = self.0[i][j].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.0[j][i] = self.0[i][j];
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Mat(self.0.map(|r| r.map(|z| z.conj())))
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Mat(self.0.map(|r| r.map(|x| x * z)))
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Induced ∞-norm (maximum absolute row sum).
    pub fn row_sum_norm(&self) -> f64 {
        self.0
            .iter()
            .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> [Complex64; N] {
        std::array::from_fn(|i| self.0[i][i])
    }

    pub fn row(&self, i: usize) -> CVec<N> {
        CVec(self.0[i])
    }

    pub fn column(&self, j: usize) -> CVec<N> {
        CVec(std::array::from_fn(|i| self.0[i][j]))
    }

    pub fn mul_vec(&self, v: &CVec<N>) -> CVec<N> {
        CVec(std::array::from_fn(|i| {
            (0..N).map(|j| self.0[i][j] * v.0[j]).sum()
        }))
    }
}

impl Mat2 {
    pub fn determinant(&self) -> Complex64 {
        let [[a, b], [c, d]] = self.0;
        a * d - b * c
    }
}

impl Mat3 {
    pub fn determinant(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Lower-right 2×2 block (rows and columns 2, 3 in 1-based indexing).
    pub fn inner_block(&self) -> Mat2 {
        let m = &self.0;
        Mat([[m[1][1], m[1][2]], [m[2][1], m[2][2]]])
    }
}

impl<const N: usize> CVec<N> {
    pub const fn zeros() -> Self {
        CVec([ZERO; N])
    }

    pub fn max_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Sum of entry moduli; the dual of the max-norm.
    pub fn l1_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Bilinear product `Σ aᵢ bᵢ` (no conjugation), i.e. a row vector times
    /// a column vector.
    pub fn dot(&self, other: &Self) -> Complex64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, z: Complex64) -> Self {
        CVec(self.0.map(|x| x * z))
    }

    /// Row vector times matrix.
    pub fn mul_mat(&self, m: &Mat<N>) -> Self {
        CVec(std::array::from_fn(|j| {
            (0..N).map(|i| self.0[i] * m.0[i][j]).sum()
        }))
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Index<usize> for CVec<N> {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                out.0[i][j] = (0..N).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

impl<const N: usize> Mul<CVec<N>> for Mat<N> {
    type Output = CVec<N>;
    fn mul(self, rhs: CVec<N>) -> CVec<N> {
        self.mul_vec(&rhs)
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        Mat(self.0.map(|r| r.map(|z| -z)))
    }
}

impl<const N: usize> Add for CVec<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        CVec(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl<const N: usize> Sub for CVec<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        CVec(std::array::from_fn(|i| self.0[i] - rhs.0[i]))
    }
}

impl<const N: usize> fmt::Debug for Mat<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat{N}[")?;
        for row in &self.0 {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:+.6e}{:+.6e}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl<const N: usize> fmt::Debug for CVec<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub fn mul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    *a * *b
}

pub fn dagger<const N: usize>(a: &Mat<N>) -> Mat<N> {
    a.dagger()
}

/// Inverse of a 2×2 matrix by the explicit adjugate formula.
///
/// Fails with [`Error::SingularMatrix`] when `|det a|` does not exceed
/// [`SINGULARITY_THRESHOLD`] times the squared max-norm of `a`.
pub fn inverse2(a: &Mat2) -> Result<Mat2> {
    let det = a.determinant();
    let scale = a.max_norm().powi(2);
    if !(det.norm() > SINGULARITY_THRESHOLD * scale) {
        return Err(Error::SingularMatrix { det: det.norm() });
    }
    let [[p, q], [r, s]] = a.0;
    let inv = det.inv();
    Ok(Mat([[s * inv, -q * inv], [-r * inv, p * inv]]))
}

/// Max-norm of `a·a† − I`.
pub fn unitarity_error<const N: usize>(a: &Mat<N>) -> f64 {
    (*a * a.dagger() - Mat::identity()).max_norm()
}

/// The Gell-Mann matrix λ_index, `index ∈ 1..=8`.
pub fn gell_mann(index: usize) -> Result<Mat3> {
    let i = Complex64::i();
    let z = ZERO;
    let o = ONE;
    let m = match index {
        1 => [[z, o, z], [o, z, z], [z, z, z]],
        2 => [[z, -i, z], [i, z, z], [z, z, z]],
        3 => [[o, z, z], [z, -o, z], [z, z, z]],
        4 => [[z, z, o], [z, z, z], [o, z, z]],
        5 => [[z, z, -i], [z, z, z], [i, z, z]],
        6 => [[z, z, z], [z, z, o], [z, o, z]],
        7 => [[z, z, z], [z, z, -i], [z, i, z]],
        8 => {
            let c = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
            [[c, z, z], [z, c, z], [z, z, -2.0 * c]]
        }
        _ => {
            return Err(Error::invalid(format!(
                "Gell-Mann index must be in 1..=8, got {index}"
            )))
        }
    };
    Ok(Mat(m))
}

/// `exp(i·angle·λ_index)` in closed form for the generators λ₂, λ₃, λ₅, λ₈.
///
/// λ₂ and λ₅ generate real rotations in the (1,2) and (1,3) planes; λ₃ and
/// λ₈ are diagonal and exponentiate to phases.
pub fn exp_i_generator(index: usize, angle: f64) -> Result<Mat3> {
    let (s, c) = angle.sin_cos();
    let m = match index {
        2 => Mat3::from_real([[c, s, 0.0], [-s, c, 0.0], [0.0, 0.0, 1.0]]),
        5 => Mat3::from_real([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]),
        3 => Mat3::from_diagonal([Complex64::cis(angle), Complex64::cis(-angle), ONE]),
        8 => {
            let t = angle / 3f64.sqrt();
            Mat3::from_diagonal([
                Complex64::cis(t),
                Complex64::cis(t),
                Complex64::cis(-2.0 * t),
            ])
        }
        _ => {
            return Err(Error::invalid(format!(
                "no closed-form exponential for generator {index}; supported: 2, 3, 5, 8"
            )))
        }
    };
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gell_mann_matches_table() {
        let l1 = gell_mann(1).unwrap();
        assert_eq!(
            l1,
            Mat3::from_real([[0.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        );
        let l8 = gell_mann(8).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert_eq!(
            l8,
            Mat3::from_real([[r, 0.0, 0.0], [0.0, r, 0.0], [0.0, 0.0, -2.0 * r]])
        );
    }

    #[test]
    fn gell_mann_orthonormal_hermitian_traceless() {
        for a in 1..=8 {
            let la = gell_mann(a).unwrap();
            assert!(la.trace().norm() < 1e-15);
            assert!((la - la.dagger()).max_norm() < 1e-15);
            for b in 1..=8 {
                let tr = (la * gell_mann(b).unwrap()).trace();
                let expect = if a == b { 2.0 } else { 0.0 };
                assert!((tr - expect).norm() < 1e-14, "tr(λ{a}λ{b}) = {tr}");
            }
        }
    }

    #[test]
    fn gell_mann_rejects_out_of_range() {
        assert!(matches!(gell_mann(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(gell_mann(9), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn exp_lambda3_at_pi() {
        let m = exp_i_generator(3, PI).unwrap();
        let want = Mat3::from_real([[-1.0, 0.0, 0.0], [0.0, -1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert!((m - want).max_norm() < 1e-15);
    }

    #[test]
    fn exp_rejects_unsupported_generators() {
        for idx in [0, 1, 4, 6, 7, 9] {
            assert!(exp_i_generator(idx, 0.3).is_err());
        }
    }

    #[test]
    fn exp_inverse_and_group_law() {
        for idx in [2, 3, 5, 8] {
            for &(t1, t2) in &[(0.3, -1.1), (2.5, 4.0), (-7.0, 0.01)] {
                let a = exp_i_generator(idx, t1).unwrap();
                let b = exp_i_generator(idx, t2).unwrap();
                let ab = exp_i_generator(idx, t1 + t2).unwrap();
                assert!((a * b - ab).max_norm() < 1e-13);
                let inv = exp_i_generator(idx, -t1).unwrap();
                assert!((a * inv - Mat3::identity()).max_norm() < 1e-13);
                assert!(unitarity_error(&a) < 1e-14);
            }
        }
    }

    #[test]
    fn inverse2_identity_and_product() {
        assert_eq!(inverse2(&Mat2::identity()).unwrap(), Mat2::identity());
        let a = Mat([[c(1.0, 2.0), c(-0.5, 0.1)], [c(0.3, 0.0), c(2.0, -1.0)]]);
        let inv = inverse2(&a).unwrap();
        assert!((a * inv - Mat2::identity()).max_norm() < 1e-12);
    }

    #[test]
    fn inverse2_reports_singular() {
        let a = Mat([[c(1.0, 1.0), c(2.0, 2.0)], [c(0.5, 0.5), c(1.0, 1.0)]]);
        assert!(matches!(inverse2(&a), Err(Error::SingularMatrix { .. })));
        assert!(inverse2(&Mat2::zeros()).is_err());
    }

    #[test]
    fn unitarity_error_examples() {
        assert_eq!(unitarity_error(&Mat3::identity()), 0.0);
        let two = Mat3::identity().scale(c(2.0, 0.0));
        assert_eq!(unitarity_error(&two), 3.0);
    }

    #[test]
    fn dagger_is_involution() {
        let a = Mat([[c(1.0, 2.0), c(0.0, -3.0)], [c(4.0, 0.5), c(-1.0, 1.0)]]);
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn non_finite_rows_rejected() {
        let mut rows = Mat3::identity().0;
        rows[1][2] = c(f64::NAN, 0.0);
        assert!(Mat3::try_from_rows(rows).is_err());
    }
}
