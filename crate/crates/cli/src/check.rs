//! The invariant suite behind `yring check`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use yring::junction::{build_u, junction_residual, s_matrix};
use yring::ring::{
    ring_matrices, solve_algebraic, solve_antisymmetric_scale_invariant, solve_closed_form,
    solve_series, solve_symmetric_scale_invariant, SubBlocks,
};
use yring::smallmat::{unitarity_error, CVec};
use yring::{
    Complex64, Error, JunctionParams, Mat2, Orientation, RingAmplitudes, RingConfig, SymmetryMode,
};

use crate::config::Config;
use crate::csv::num;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const SAMPLES: usize = 16;
const DEFAULT_RANGE: (f64, f64) = (0.1, 20.0);
const UNITARITY_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-10;
const AGREEMENT_TOL: f64 = 1e-10;
const FLUX_TOL: f64 = 1e-10;
/// Draws with `|det(I − s s̃)|` below this are too close to a degenerate
/// ring for a fixed absolute agreement tolerance and are reported as skipped.
const CONDITIONING_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct Line {
    pub ok: bool,
    pub name: String,
    pub detail: String,
}

#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<Line>,
    pub skipped: Vec<String>,
}

impl Report {
    fn record(&mut self, name: impl Into<String>, worst: f64, tol: f64) {
        self.lines.push(Line {
            ok: worst <= tol,
            name: name.into(),
            detail: format!("worst {} (tol {tol:e})", num(worst)),
        });
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.ok).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            out.push_str(&format!(
                "{} {}: {}\n",
                if l.ok { "ok  " } else { "FAIL" },
                l.name,
                l.detail
            ));
        }
        for s in &self.skipped {
            out.push_str(&format!("skip {s}\n"));
        }
        out.push_str(&format!(
            "{} checks, {} failed\n",
            self.lines.len(),
            self.failures()
        ));
        out
    }
}

fn random_vec(rng: &mut ChaCha8Rng) -> CVec<3> {
    CVec(std::array::from_fn(|_| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }))
}

fn check_junction(
    report: &mut Report,
    name: &str,
    p: &JunctionParams,
    ks: &[f64],
    rng: &mut ChaCha8Rng,
) {
    let u = build_u(p);
    report.record(
        format!("junction {name}: U unitary"),
        unitarity_error(&u),
        UNITARITY_TOL,
    );
    let (mut unit, mut resid, mut adj) = (0.0f64, 0.0f64, 0.0f64);
    for &k in ks {
        let xi = rng.gen_range(-2.0..2.0);
        let sin = s_matrix(p, k, xi, Orientation::Inward).expect("k validated");
        let sout = s_matrix(p, k, xi, Orientation::Outward).expect("k validated");
        unit = unit
            .max(unitarity_error(sin.matrix()))
            .max(unitarity_error(sout.matrix()));
        adj = adj.max((*sout.matrix() - sin.matrix().dagger()).max_norm());
        for (s, o) in [(&sin, Orientation::Inward), (&sout, Orientation::Outward)] {
            let phi = random_vec(rng);
            let psi = *s.matrix() * phi;
            resid = resid.max(junction_residual(&u, p.l0(), k, xi, &phi, &psi, o));
        }
    }
    report.record(
        format!("junction {name}: S unitary at {} k", ks.len()),
        unit,
        UNITARITY_TOL,
    );
    report.record(
        format!("junction {name}: junction condition residual"),
        resid,
        RESIDUAL_TOL,
    );
    report.record(
        format!("junction {name}: outward S = inward S^dagger"),
        adj,
        UNITARITY_TOL,
    );
}

fn scale(a: &RingAmplitudes) -> f64 {
    a.as_array().iter().map(|z| z.norm()).fold(1.0, f64::max)
}

fn check_ring(report: &mut Report, ring: &RingConfig, ks: &[f64]) {
    let (mut agree, mut flux, mut fast) = (0.0f64, 0.0f64, 0.0f64);
    let mut fast_used = false;
    let mut used = 0;
    for &k in ks {
        let (s1, s2) = ring_matrices(ring, k).expect("k validated");
        let det = (Mat2::identity() - SubBlocks::new(&s1, &s2).round_trip())
            .determinant()
            .norm();
        if det < CONDITIONING_FLOOR {
            report
                .skipped
                .push(format!("ring at k = {}: |det(I - s s~)| = {det:e}", num(k)));
            continue;
        }
        let solved = (|| -> Result<_, Error> {
            Ok((
                solve_closed_form(&s1, &s2)?,
                match solve_series(&s1, &s2, 1e-12, 1 << 40) {
                    Ok(s) => s.amplitudes,
                    // Rounding floor above 1e-12 but within the agreement tolerance.
                    Err(Error::NotConverged { partial, bound, .. }) if bound < AGREEMENT_TOL => {
                        *partial
                    }
                    Err(e) => return Err(e),
                },
                solve_algebraic(&s1, &s2)?,
            ))
        })();
        let (closed, series, alg) = match solved {
            Ok(t) => t,
            Err(e) => {
                report.lines.push(Line {
                    ok: false,
                    name: format!("ring at k = {}", num(k)),
                    detail: e.to_string(),
                });
                continue;
            }
        };
        used += 1;
        let sc = scale(&closed);
        agree = agree
            .max(closed.max_diff(&series) / sc)
            .max(closed.max_diff(&alg) / sc)
            .max(series.max_diff(&alg) / sc);
        flux = flux.max((closed.reflection() + closed.transmission() - 1.0).abs());
        if ring.has_scale_invariant_fast_path() {
            let f = match ring.mode() {
                SymmetryMode::Symmetric => solve_symmetric_scale_invariant(ring, k),
                _ => solve_antisymmetric_scale_invariant(ring, k),
            };
            if let Ok(f) = f {
                fast_used = true;
                fast = fast.max(f.max_diff(&closed) / sc);
            }
        }
    }
    if used == 0 {
        report.lines.push(Line {
            ok: false,
            name: "ring".into(),
            detail: "no usable wavenumber".into(),
        });
        return;
    }
    report.record(
        format!("ring: closed/series/algebraic agreement at {used} k"),
        agree,
        AGREEMENT_TOL,
    );
    report.record("ring: flux |A|^2 + |F|^2 = 1", flux, FLUX_TOL);
    if fast_used {
        report.record("ring: scale-invariant closed forms", fast, AGREEMENT_TOL);
    }
}

/// Runs every check at `SAMPLES` seeded random wavenumbers in `range`
/// (default `(0.1, 20)`).
pub fn run(cfg: &Config, range: Option<(f64, f64)>, seed: u64) -> Report {
    let (lo, hi) = range.unwrap_or(DEFAULT_RANGE);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ks: Vec<f64> = (0..SAMPLES).map(|_| rng.gen_range(lo..hi)).collect();
    let mut report = Report::default();
    for (name, p) in &cfg.junctions {
        check_junction(&mut report, name, p, &ks, &mut rng);
    }
    if let Some(ring) = &cfg.ring {
        check_ring(&mut report, ring, &ks);
    }
    report
}
