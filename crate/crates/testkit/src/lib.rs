//! Oracles for the yring test suites.
//!
//! Everything here works on raw complex arrays and shares no code with the
//! library, so it can check the library's results independently.

use num_complex::Complex64;
use rand::Rng;

pub type C = Complex64;
pub type Raw3 = [[C; 3]; 3];

/// `exp(X)` by a truncated Taylor series (`terms` terms).
pub fn exp_series(x: &Raw3, terms: usize) -> Raw3 {
    let mut out = identity();
    let mut term = identity();
    for n in 1..terms {
        term = matmul(&term, x);
        let inv = 1.0 / n as f64;
        for row in term.iter_mut() {
            for z in row.iter_mut() {
                *z *= inv;
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += term[i][j];
            }
        }
    }
    out
}

pub fn identity() -> Raw3 {
    let mut m = [[C::new(0.0, 0.0); 3]; 3];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = C::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Raw3, b: &Raw3) -> Raw3 {
    let mut out = [[C::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn max_diff(a: &Raw3, b: &Raw3) -> f64 {
    let mut m: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            m = m.max((a[i][j] - b[i][j]).norm());
        }
    }
    m
}

/// Characteristic polynomial `det(zI − M)` evaluated at `z` via the
/// coefficients `z³ − tr(M) z² + c₂ z − det M`.
pub fn char_poly_at(m: &Raw3, z: C) -> C {
    let tr = m[0][0] + m[1][1] + m[2][2];
    let c2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0]
        + m[1][1] * m[2][2]
        - m[1][2] * m[2][1];
    let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    z * z * z - tr * z * z + c2 * z - det
}

/// Solves `M x = r` by Gaussian elimination with partial pivoting.
pub fn gauss_solve<const N: usize>(mut m: [[C; N]; N], mut r: [C; N]) -> Option<[C; N]> {
    for col in 0..N {
        let pivot = (col..N).max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))?;
        if m[pivot][col].norm() < 1e-300 {
            return None;
        }
        m.swap(col, pivot);
        r.swap(col, pivot);
        for row in col + 1..N {
            let factor = m[row][col] / m[col][col];
            for j in col..N {
                let sub = factor * m[col][j];
                m[row][j] -= sub;
            }
            let sub = factor * r[col];
            r[row] -= sub;
        }
    }
    let mut x = [C::new(0.0, 0.0); N];
    for i in (0..N).rev() {
        let mut acc = r[i];
        for j in i + 1..N {
            acc -= m[i][j] * x[j];
        }
        x[i] = acc / m[i][i];
    }
    Some(x)
}

/// Ring amplitudes `[A, B, C, D, E, F]` from the six node equations
/// `(A, B, D) = S₁(1, C, E)` and `(F, C, E) = S₂(0, B, D)`, solved as one
/// 6×6 linear system.
pub fn ring_bruteforce(s1: &Raw3, s2: &Raw3) -> Option<[C; 6]> {
    const A: usize = 0;
    const B: usize = 1;
    const CC: usize = 2;
    const D: usize = 3;
    const E: usize = 4;
    const F: usize = 5;
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let mut m = [[zero; 6]; 6];
    let mut r = [zero; 6];
    for (row, lhs) in [A, B, D].into_iter().enumerate() {
        m[row][lhs] += one;
        m[row][CC] -= s1[row][1];
        m[row][E] -= s1[row][2];
        r[row] = s1[row][0];
    }
    for (row, lhs) in [F, CC, E].into_iter().enumerate() {
        m[3 + row][lhs] += one;
        m[3 + row][B] -= s2[row][1];
        m[3 + row][D] -= s2[row][2];
    }
    gauss_solve(m, r)
}

pub fn random_angle<R: Rng>(rng: &mut R) -> f64 {
    rng.gen_range(0.0..std::f64::consts::TAU)
}

/// Eigenphases drawn from `{0, π}`, never all equal.
pub fn random_scale_invariant_theta<R: Rng>(rng: &mut R) -> [f64; 3] {
    loop {
        let t: [f64; 3] = std::array::from_fn(|_| {
            if rng.gen_bool(0.5) {
                0.0
            } else {
                std::f64::consts::PI
            }
        });
        if !(t[0] == t[1] && t[1] == t[2]) {
            return t;
        }
    }
}

pub fn random_vec3<R: Rng>(rng: &mut R) -> [C; 3] {
    std::array::from_fn(|_| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}
