//! Wavenumber sweeps of the ring probabilities and location of perfect
//! transmission (`A = 0`) and perfect reflection (`F = 0`).

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::junction::{check_wavenumber, JunctionParams};
use crate::ring::{
    self, perfect_transmission_target, RingAmplitudes, RingConfig, SymmetryMode, TransmissionTarget,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumPoint {
    pub k: f64,
    /// `|A|²`, NaN at a degenerate point.
    pub p_refl: f64,
    /// `|F|²`, NaN at a degenerate point.
    pub p_trans: f64,
    /// `None` where the ring is degenerate at this `k`.
    pub amps: Option<RingAmplitudes>,
}

impl SpectrumPoint {
    pub fn is_degenerate(&self) -> bool {
        self.amps.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    points: Vec<SpectrumPoint>,
    fingerprint: String,
}

impl Spectrum {
    pub fn points(&self) -> &[SpectrumPoint] {
        &self.points
    }

    /// Hex digest identifying the ring configuration that produced the sweep.
    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }
}

/// SHA-256 over the exact bit patterns of every configuration field.
pub fn config_fingerprint(cfg: &RingConfig) -> String {
    fn feed(h: &mut Sha256, p: &JunctionParams) {
        for x in p
            .theta()
            .iter()
            .chain(p.euler().as_array().iter())
            .chain([p.l0()].iter())
        {
            h.update(x.to_bits().to_le_bytes());
        }
    }
    let mut h = Sha256::new();
    feed(&mut h, cfg.left());
    match cfg.mode() {
        SymmetryMode::Symmetric => h.update([0u8]),
        SymmetryMode::AntiSymmetric => h.update([1u8]),
        SymmetryMode::General(right) => {
            h.update([2u8]);
            feed(&mut h, right);
        }
    }
    h.update(cfg.xi1().to_bits().to_le_bytes());
    h.update(cfg.xi2().to_bits().to_le_bytes());
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn check_range(k_min: f64, k_max: f64) -> Result<()> {
    check_wavenumber(k_min)?;
    if !(k_max.is_finite() && k_max > k_min) {
        return Err(Error::invalid(format!(
            "k range requires 0 < k_min < k_max, got ({k_min}, {k_max})"
        )));
    }
    Ok(())
}

fn grid(k_min: f64, k_max: f64, n: usize) -> impl IndexedParallelIterator<Item = f64> {
    let step = (k_max - k_min) / (n - 1) as f64;
    (0..n).into_par_iter().map(move |i| {
        if i + 1 == n {
            k_max
        } else {
            k_min + step * i as f64
        }
    })
}

fn point(cfg: &RingConfig, k: f64) -> Result<SpectrumPoint> {
    match ring::solve(cfg, k) {
        Ok(amps) => Ok(SpectrumPoint {
            k,
            p_refl: amps.reflection(),
            p_trans: amps.transmission(),
            amps: Some(amps),
        }),
        Err(Error::DegenerateRing { .. }) => Ok(SpectrumPoint {
            k,
            p_refl: f64::NAN,
            p_trans: f64::NAN,
            amps: None,
        }),
        Err(e) => Err(e),
    }
}

/// Solves the ring on `n` evenly spaced wavenumbers spanning
/// `[k_min, k_max]`. Degenerate points are kept and flagged.
pub fn sweep(cfg: &RingConfig, k_min: f64, k_max: f64, n: usize) -> Result<Spectrum> {
    check_range(k_min, k_max)?;
    if n < 2 {
        return Err(Error::invalid(format!(
            "sweep needs at least 2 points, got {n}"
        )));
    }
    let points = grid(k_min, k_max, n)
        .map(|k| point(cfg, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum {
        points,
        fingerprint: config_fingerprint(cfg),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResonanceKind {
    /// `A = 0`
    PerfectTransmission,
    /// `F = 0`
    PerfectReflection,
}

impl ResonanceKind {
    /// The probability that vanishes at this kind of resonance.
    pub fn target(self, amps: &RingAmplitudes) -> f64 {
        match self {
            ResonanceKind::PerfectTransmission => amps.reflection(),
            ResonanceKind::PerfectReflection => amps.transmission(),
        }
    }
}

impl fmt::Display for ResonanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResonanceKind::PerfectTransmission => "transmission",
            ResonanceKind::PerfectReflection => "reflection",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resonance {
    pub k_star: f64,
    pub kind: ResonanceKind,
    /// Minimized target probability at `k_star`.
    pub residual: f64,
}

#[derive(Debug, Clone, Default)]
pub struct ResonanceSearch {
    pub resonances: Vec<Resonance>,
    /// Mismatches with the analytic prediction and other diagnostics.
    pub warnings: Vec<String>,
}

/// Scan density used when the caller gives none: 2048 points per decade.
pub fn default_scan_points(k_min: f64, k_max: f64) -> usize {
    let decades = (k_max / k_min).log10().max(0.0);
    ((2048.0 * decades).ceil() as usize).max(64)
}

/// Analytic resonance positions in `(k_min, k_max)` for scale-invariant
/// symmetric and anti-symmetric rings; `None` when no prediction applies.
pub fn predicted_resonances(
    cfg: &RingConfig,
    kind: ResonanceKind,
    k_min: f64,
    k_max: f64,
) -> Result<Option<Vec<f64>>> {
    if !cfg.has_scale_invariant_fast_path() {
        return Ok(None);
    }
    let dxi = cfg.delta_xi();
    let lattice = || -> Vec<f64> {
        let first = (k_min * dxi / PI).ceil() as i64;
        (first.max(1)..)
            .map(|n| n as f64 * PI / dxi)
            .skip_while(|&k| k <= k_min)
            .take_while(|&k| k < k_max)
            .collect()
    };
    Ok(match (cfg.mode(), kind) {
        (SymmetryMode::Symmetric, ResonanceKind::PerfectTransmission) => Some(lattice()),
        (SymmetryMode::Symmetric, ResonanceKind::PerfectReflection) => Some(Vec::new()),
        (SymmetryMode::AntiSymmetric, ResonanceKind::PerfectReflection) => Some(lattice()),
        (SymmetryMode::AntiSymmetric, ResonanceKind::PerfectTransmission) => {
            match perfect_transmission_target(cfg)? {
                TransmissionTarget::Cosine(c) => {
                    Some(transmission_wavenumbers(c, dxi, k_min, k_max))
                }
                TransmissionTarget::OutOfRange(_) | TransmissionTarget::Decoupled => {
                    Some(Vec::new())
                }
                _ => None,
            }
        }
        (SymmetryMode::General(_), _) => None,
    })
}

/// All `k ∈ (k_min, k_max)` with `cos(2kΔξ) = c`, ascending.
pub fn transmission_wavenumbers(c: f64, delta_xi: f64, k_min: f64, k_max: f64) -> Vec<f64> {
    let base = c.clamp(-1.0, 1.0).acos();
    let period = PI / delta_xi;
    let mut out = Vec::new();
    let first = (k_min / period).floor() as i64 - 1;
    let mut n = first;
    loop {
        let shift = n as f64 * 2.0 * PI;
        let lo = (shift + base) / (2.0 * delta_xi);
        let hi = (shift + 2.0 * PI - base) / (2.0 * delta_xi);
        if lo >= k_max {
            break;
        }
        for k in [lo, hi] {
            if k > k_min && k < k_max && out.last().map_or(true, |&p: &f64| (k - p).abs() > 1e-14) {
                out.push(k);
            }
        }
        n += 1;
    }
    out
}

const INV_GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[a, b]` until the bracket is
/// narrower than `width`. Returns the best abscissa and its value.
pub fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> (f64, f64) {
    let mut c = b - INV_GOLDEN * (b - a);
    let mut d = a + INV_GOLDEN * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..500 {
        if b - a <= width {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_GOLDEN * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_GOLDEN * (b - a);
            fd = f(d);
        }
    }
    let mid = 0.5 * (a + b);
    [(c, fc), (d, fd), (mid, f(mid))]
        .into_iter()
        .fold((mid, f64::INFINITY), |best, cand| {
            if cand.1 < best.1 {
                cand
            } else {
                best
            }
        })
}

/// Scans the target probability on `scan_n` points, brackets each interior
/// local minimum, refines it by golden section to a bracket narrower than
/// `1e-12·(k_max − k_min)` and keeps minima below `tol`.
///
/// For scale-invariant symmetric and anti-symmetric rings every result is
/// compared with the analytic prediction; mismatches and predicted
/// resonances the scan missed are reported as warnings.
pub fn find_resonances(
    cfg: &RingConfig,
    k_min: f64,
    k_max: f64,
    kind: ResonanceKind,
    scan_n: usize,
    tol: f64,
) -> Result<ResonanceSearch> {
    check_range(k_min, k_max)?;
    if scan_n < 3 {
        return Err(Error::invalid(format!(
            "scan needs at least 3 points, got {scan_n}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance must be > 0, got {tol}")));
    }

    let target = |k: f64| -> Result<f64> {
        match ring::solve(cfg, k) {
            Ok(a) => Ok(kind.target(&a)),
            Err(Error::DegenerateRing { .. }) => Ok(f64::INFINITY),
            Err(e) => Err(e),
        }
    };

    let ks: Vec<f64> = grid(k_min, k_max, scan_n).collect();
    let values = ks
        .par_iter()
        .map(|&k| target(k))
        .collect::<Result<Vec<_>>>()?;

    let mut search = ResonanceSearch::default();
    if values.iter().filter(|v| v.is_finite()).all(|&v| v < tol) {
        search.warnings.push(format!(
            "{kind} target probability stays below {tol:e} across the whole range; \
             the ring is decoupled and has no isolated resonances"
        ));
        return Ok(search);
    }

    let range = k_max - k_min;
    let width = 1e-12 * range;
    let brackets: Vec<(f64, f64)> = (1..scan_n - 1)
        .filter(|&i| values[i - 1] > values[i] && values[i] <= values[i + 1])
        .map(|i| (ks[i - 1], ks[i + 1]))
        .collect();
    let refined = brackets
        .par_iter()
        .map(|&(lo, hi)| {
            // Degenerate points inside a bracket are mapped to +∞ above.
            let f = |k: f64| target(k).unwrap_or(f64::INFINITY);
            golden_section(f, lo, hi, width)
        })
        .collect::<Vec<_>>();
    for (k_star, residual) in refined {
        if residual < tol
            && search.resonances.last().map_or(true, |r: &Resonance| {
                (k_star - r.k_star).abs() > 1e-9 * range
            })
        {
            search.resonances.push(Resonance {
                k_star,
                kind,
                residual,
            });
        }
    }

    if let Some(predicted) = predicted_resonances(cfg, kind, k_min, k_max)? {
        cross_check(
            &mut search,
            &predicted,
            range / (scan_n - 1) as f64,
            k_min,
            k_max,
        );
    }
    Ok(search)
}

fn cross_check(search: &mut ResonanceSearch, predicted: &[f64], step: f64, k_min: f64, k_max: f64) {
    const REL: f64 = 1e-9;
    for r in &search.resonances {
        let nearest = predicted
            .iter()
            .map(|&p| ((r.k_star - p) / p).abs())
            .fold(f64::INFINITY, f64::min);
        if nearest > REL {
            search.warnings.push(format!(
                "resonance at k = {:.17e} has no analytic counterpart (nearest relative offset {nearest:.3e})",
                r.k_star
            ));
        }
    }
    for &p in predicted {
        // A minimum within one grid step of an end cannot be bracketed.
        if p - k_min < step || k_max - p < step {
            continue;
        }
        let found = search
            .resonances
            .iter()
            .any(|r| ((r.k_star - p) / p).abs() <= REL);
        if !found {
            search.warnings.push(format!(
                "predicted resonance at k = {p:.17e} not recovered; scan may be too coarse"
            ));
        }
    }
}
