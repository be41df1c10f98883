//! The three general ring solvers: resummed resolvent, explicit path sum,
//! and the elimination formulas in terms of `A_ij`, `B_ij` and `Δ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::junction::ScatteringMatrix;
use crate::smallmat::{inverse2, CVec, Mat2, Vec2};

use super::{RingAmplitudes, SubBlocks};

/// Threshold on `|Δ|` below which the elimination formulas are refused.
const DELTA_THRESHOLD: f64 = 1e-13;

/// Orders summed one at a time before switching to doubling blocks.
const LINEAR_ORDERS: usize = 1024;

/// The linear functionals that turn the summed interior vector
/// `Σ (s s̃)ⁿ (s₂₁, s₃₁)ᵀ` into the six amplitudes.
struct Assembly {
    direct: [Complex64; 6],
    rows: [Vec2; 6],
}

impl Assembly {
    fn new(blocks: &SubBlocks) -> Self {
        let st = blocks.s_tilde_block();
        let m = blocks.round_trip();
        let row_a = CVec([blocks.s(1, 2), blocks.s(1, 3)]).mul_mat(&st);
        let zero = Complex64::new(0.0, 0.0);
        Assembly {
            direct: [
                blocks.s(1, 1),
                blocks.s(2, 1),
                zero,
                blocks.s(3, 1),
                zero,
                zero,
            ],
            rows: [
                row_a,
                // (s₂₂, s₂₃)·s̃ and (s₃₂, s₃₃)·s̃ are the rows of s·s̃.
                m.row(0),
                st.row(0),
                m.row(1),
                st.row(1),
                CVec([blocks.st(1, 2), blocks.st(1, 3)]),
            ],
        }
    }

    fn apply(&self, interior: &Vec2) -> RingAmplitudes {
        RingAmplitudes::from_array(std::array::from_fn(|i| {
            self.direct[i] + self.rows[i].dot(interior)
        }))
    }

    /// Bound on how much any amplitude moves per unit max-norm of the
    /// interior vector.
    fn gain(&self) -> f64 {
        self.rows.iter().map(|r| r.l1_norm()).fold(0.0, f64::max)
    }
}

/// Amplitudes from the resummed path series,
/// `A = s₁₁ + (s₁₂, s₁₃) s̃ (I₂ − s s̃)⁻¹ (s₂₁, s₃₁)ᵀ` and companions.
pub fn solve_closed_form(s1: &ScatteringMatrix, s2: &ScatteringMatrix) -> Result<RingAmplitudes> {
    let blocks = SubBlocks::new(s1, s2);
    let gap = Mat2::identity() - blocks.round_trip();
    // ‖s s̃‖ ≤ 1, so the ring scale is 1 whatever the size of I − s s̃ itself.
    let det = gap.determinant().norm();
    if det < DELTA_THRESHOLD {
        return Err(Error::DegenerateRing {
            what: "det(I - s s~)",
            magnitude: det,
        });
    }
    let resolvent = inverse2(&gap).map_err(|e| match e {
        Error::SingularMatrix { det } => Error::DegenerateRing {
            what: "det(I - s s~)",
            magnitude: det,
        },
        other => other,
    })?;
    let interior = resolvent * blocks.injection();
    Ok(Assembly::new(&blocks).apply(&interior))
}

#[derive(Debug, Clone, Copy)]
pub struct SeriesSolution {
    pub amplitudes: RingAmplitudes,
    /// Number of round-trip orders summed (the `I₂` term counts as one).
    pub terms_used: usize,
    /// Bound on the truncated remainder at exit, in amplitude max-norm.
    pub remainder_bound: f64,
}

/// Amplitudes by summing bounce paths order by order.
///
/// Order `n` contributes the paths that circle the ring `n` times; all six
/// amplitudes are linear in the propagated vector `wₙ = (s s̃)ⁿ (s₂₁, s₃₁)ᵀ`.
/// After each order the remainder `Σ_{j>n} wⱼ = (I₂ − s s̃)⁻¹ wₙ₊₁` is
/// bounded by `g·‖wₙ₊₁‖`, with `g` the smaller of `1/(1 − ‖s s̃‖∞)` (when
/// `‖s s̃‖∞ < 1`) and `‖(I₂ − s s̃)⁻¹‖∞`, scaled by the assembling row
/// vectors. When `I₂ − s s̃` is invertible the remainder is also evaluated
/// directly through the resolvent and the smaller of the two is used.
/// Summation stops once it is below `tol`.
///
/// The first 1024 orders are added one at a time. Beyond that, orders
/// `n..2n` are added as one block `(s s̃)ⁿ Σ_{j<n} wⱼ`, so slowly converging
/// rings need only logarithmically many further steps; `terms_used` still
/// counts orders and is then a power-of-two multiple of 1024.
pub fn solve_series(
    s1: &ScatteringMatrix,
    s2: &ScatteringMatrix,
    tol: f64,
    max_terms: usize,
) -> Result<SeriesSolution> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!(
            "series tolerance must be > 0, got {tol}"
        )));
    }
    if max_terms == 0 {
        return Err(Error::invalid("max_terms must be at least 1"));
    }
    let blocks = SubBlocks::new(s1, s2);
    let assembly = Assembly::new(&blocks);
    let m = blocks.round_trip();

    let row_norm = m.row_sum_norm();
    let geometric = if row_norm < 1.0 {
        1.0 / (1.0 - row_norm)
    } else {
        f64::INFINITY
    };
    let resolvent = inverse2(&(Mat2::identity() - m)).ok();
    let resolvent_norm = resolvent.map_or(f64::INFINITY, |r| r.row_sum_norm());
    let tail_gain = assembly.gain() * geometric.min(resolvent_norm);

    let bound_of = |w: &Vec2| {
        let size = w.max_norm();
        if size == 0.0 {
            return 0.0;
        }
        let norm_bound = tail_gain * size;
        match &resolvent {
            // The tail itself; tighter than the norm product once rounding
            // has seeded a non-decaying mode the injection does not excite.
            Some(r) => {
                let tail = *r * *w;
                let exact = assembly
                    .rows
                    .iter()
                    .map(|row| row.dot(&tail).norm())
                    .fold(0.0, f64::max);
                norm_bound.min(exact)
            }
            None => norm_bound,
        }
    };

    // x = Σ_{j<n} wⱼ, w = wₙ, power = (s s̃)ⁿ.
    let mut x = Vec2::zeros();
    let mut w = blocks.injection();
    let mut power = Mat2::identity();
    let mut n = 0;
    let mut bound = f64::INFINITY;
    while n < max_terms.min(LINEAR_ORDERS) {
        x = x + w;
        w = m * w;
        power = m * power;
        n += 1;
        bound = bound_of(&w);
        if bound < tol {
            return Ok(SeriesSolution {
                amplitudes: assembly.apply(&x),
                terms_used: n,
                remainder_bound: bound,
            });
        }
    }
    // Orders n..2n are (s s̃)ⁿ times orders 0..n.
    while n > 0 && n <= max_terms / 2 {
        x = x + power * x;
        w = power * w;
        power = power * power;
        n *= 2;
        bound = bound_of(&w);
        if bound < tol {
            return Ok(SeriesSolution {
                amplitudes: assembly.apply(&x),
                terms_used: n,
                remainder_bound: bound,
            });
        }
    }
    Err(Error::NotConverged {
        partial: Box::new(assembly.apply(&x)),
        bound,
        terms: n,
    })
}

/// `Δ` evaluated from `A_ij = Σₖ s_ki s̃_jk` and from `B_ij = Σₖ s̃_ki s_jk`
/// (k = 2, 3). The two agree identically.
pub fn algebraic_denominators(
    s1: &ScatteringMatrix,
    s2: &ScatteringMatrix,
) -> (Complex64, Complex64) {
    let blocks = SubBlocks::new(s1, s2);
    let x = Coupling::new(&blocks);
    (x.delta_a(), x.delta_b())
}

struct Coupling<'a> {
    blocks: &'a SubBlocks,
}

impl<'a> Coupling<'a> {
    fn new(blocks: &'a SubBlocks) -> Self {
        Coupling { blocks }
    }

    fn a(&self, i: usize, j: usize) -> Complex64 {
        (2..=3)
            .map(|k| self.blocks.s(k, i) * self.blocks.st(j, k))
            .sum()
    }

    fn b(&self, i: usize, j: usize) -> Complex64 {
        (2..=3)
            .map(|k| self.blocks.st(k, i) * self.blocks.s(j, k))
            .sum()
    }

    fn delta_a(&self) -> Complex64 {
        (1.0 - self.a(2, 2)) * (1.0 - self.a(3, 3)) - self.a(2, 3) * self.a(3, 2)
    }

    fn delta_b(&self) -> Complex64 {
        (1.0 - self.b(2, 2)) * (1.0 - self.b(3, 3)) - self.b(2, 3) * self.b(3, 2)
    }
}

/// Amplitudes from direct elimination of the two node equations.
pub fn solve_algebraic(s1: &ScatteringMatrix, s2: &ScatteringMatrix) -> Result<RingAmplitudes> {
    let blocks = SubBlocks::new(s1, s2);
    let x = Coupling::new(&blocks);
    let s = |i, j| blocks.s(i, j);
    let st = |i, j| blocks.st(i, j);
    let a = |i, j| x.a(i, j);
    let b = |i, j| x.b(i, j);

    let delta = x.delta_a();
    if delta.norm() < DELTA_THRESHOLD {
        return Err(Error::DegenerateRing {
            what: "Delta",
            magnitude: delta.norm(),
        });
    }
    debug_assert!(
        (delta - x.delta_b()).norm() <= 1e-12 * (1.0 + delta.norm()),
        "Δ from A_ij and B_ij disagree: {delta} vs {}",
        x.delta_b()
    );

    let one = Complex64::new(1.0, 0.0);
    let c_num = a(1, 2) * (one - a(3, 3)) + a(1, 3) * a(3, 2);
    let e_num = a(1, 3) * (one - a(2, 2)) + a(1, 2) * a(2, 3);
    let b_num = s(3, 1) * b(3, 2) + s(2, 1) * (one - b(3, 3));
    let d_num = s(2, 1) * b(2, 3) + s(3, 1) * (one - b(2, 2));

    Ok(RingAmplitudes {
        a: s(1, 1) + (s(1, 2) * c_num + s(1, 3) * e_num) / delta,
        b: b_num / delta,
        c: c_num / delta,
        d: d_num / delta,
        e: e_num / delta,
        f: (st(1, 2) * b_num + st(1, 3) * d_num) / delta,
    })
}
