use std::fmt::Write as _;
use std::io::Write as _;

use yring::junction::{
    build_u, is_scale_invariant, is_time_reversal, probabilities, s_matrix, DEFAULT_PREDICATE_TOL,
};
use yring::ring::{ring_matrices, solve, solve_algebraic, solve_closed_form, solve_series};
use yring::smallmat::unitarity_error;
use yring::spectrum::{default_scan_points, find_resonances, sweep};
use yring::{Complex64, Error, Orientation, RingAmplitudes, RingConfig, SymmetryMode};

use crate::config::{Config, KindSpec, OrientationSpec};
use crate::csv::{self, num};
use crate::error::CliError;
use crate::{check, Cli, Command, Method};

const DEFAULT_SWEEP_POINTS: usize = 512;
const DEFAULT_FIND_TOL: f64 = 1e-8;
const DEFAULT_SERIES_TOL: f64 = 1e-12;
const SERIES_MAX_TERMS: usize = 1 << 40;
const CROSS_CHECK_TOL: f64 = 1e-8;

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let path = cli
        .config
        .as_deref()
        .ok_or_else(|| CliError::Config("--config: a configuration file is required".into()))?;
    let cfg = Config::load(path)?;
    match &cli.command {
        Command::Junction {
            junction,
            xi,
            orientation,
        } => {
            let text = cmd_junction(&cfg, cli, junction.as_deref(), *xi, *orientation)?;
            print!("{text}");
            Ok(())
        }
        Command::Ring { method } => {
            print!("{}", cmd_ring(&cfg, cli, *method)?);
            Ok(())
        }
        Command::Sweep => emit(cli, &cmd_sweep(&cfg, cli)?),
        Command::Find { scan_n } => {
            let (table, warnings) = cmd_find(&cfg, cli, *scan_n)?;
            for w in warnings {
                eprintln!("warning: {w}");
            }
            emit(cli, &table)
        }
        Command::Check { seed } => {
            let seed = seed.or(cfg.task.seed).unwrap_or(check::DEFAULT_SEED);
            let report = check::run(&cfg, k_range(&cfg, cli).ok(), seed);
            print!("{}", report.render());
            match report.failures() {
                0 => Ok(()),
                n => Err(CliError::CheckFailed(n)),
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn required<T>(value: Option<T>, field: &str) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Config(format!(
            "task.{field}: missing (set it in the config or pass --{})",
            field.replace('_', "-")
        ))
    })
}

fn k_range(cfg: &Config, cli: &Cli) -> Result<(f64, f64), CliError> {
    let k_min = required(cli.k_min.or(cfg.task.k_min), "k_min")?;
    let k_max = required(cli.k_max.or(cfg.task.k_max), "k_max")?;
    if !(k_min > 0.0 && k_max > k_min && k_max.is_finite()) {
        return Err(CliError::Config(format!(
            "task.k_min/k_max: need 0 < k_min < k_max, got {k_min} and {k_max}"
        )));
    }
    Ok((k_min, k_max))
}

fn complex(z: Complex64) -> String {
    format!(
        "{} {}{}i",
        num(z.re),
        if z.im.is_sign_negative() { "-" } else { "+" },
        num(z.im.abs())
    )
}

fn flag(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

pub fn cmd_junction(
    cfg: &Config,
    cli: &Cli,
    name: Option<&str>,
    xi: Option<f64>,
    orientation: Option<OrientationSpec>,
) -> Result<String, CliError> {
    let (name, p) = cfg.junction(name)?;
    let k = required(cli.k.or(cfg.task.k), "k")?;
    let xi = xi.or(cfg.task.xi).unwrap_or(0.0);
    let orientation: Orientation = orientation
        .or(cfg.task.orientation)
        .unwrap_or(OrientationSpec::Inward)
        .into();
    let s = s_matrix(p, k, xi, orientation)?;
    let u = build_u(p);

    let mut out = String::new();
    let e = p.euler();
    let _ = writeln!(out, "junction {name}");
    let _ = writeln!(
        out,
        "theta = [{}, {}, {}]",
        num(p.theta()[0]),
        num(p.theta()[1]),
        num(p.theta()[2])
    );
    let _ = writeln!(
        out,
        "alpha = {}, beta = {}, gamma = {}, delta = {}, a = {}, b = {}",
        num(e.alpha),
        num(e.beta),
        num(e.gamma),
        num(e.delta),
        num(e.a),
        num(e.b)
    );
    let _ = writeln!(out, "l0 = {}", num(p.l0()));
    let _ = writeln!(
        out,
        "k = {}, xi = {}, orientation = {orientation:?}",
        num(k),
        num(xi)
    );
    let _ = writeln!(out, "S-matrix:");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| complex(s.matrix()[(i, j)])).collect();
        let _ = writeln!(out, "  {}", row.join("    "));
    }
    let _ = writeln!(
        out,
        "probabilities |S_ij|^2 (row i = outgoing arm, column j = incoming arm):"
    );
    for row in probabilities(&s) {
        let row: Vec<String> = row.iter().map(|&x| num(x)).collect();
        let _ = writeln!(out, "  {}", row.join("  "));
    }
    let _ = writeln!(out, "unitarity error (U) = {}", num(unitarity_error(&u)));
    let _ = writeln!(
        out,
        "unitarity error (S) = {}",
        num(unitarity_error(s.matrix()))
    );
    let _ = writeln!(
        out,
        "time-reversal = {}",
        flag(is_time_reversal(p, DEFAULT_PREDICATE_TOL))
    );
    let _ = writeln!(
        out,
        "scale-invariant = {}",
        flag(is_scale_invariant(p, DEFAULT_PREDICATE_TOL))
    );
    Ok(out)
}

fn mode_name(ring: &RingConfig) -> &'static str {
    match ring.mode() {
        SymmetryMode::Symmetric => "symmetric",
        SymmetryMode::AntiSymmetric => "anti_symmetric",
        SymmetryMode::General(_) => "general",
    }
}

pub fn cmd_ring(cfg: &Config, cli: &Cli, method: Method) -> Result<String, CliError> {
    let ring = cfg.ring()?;
    let k = required(cli.k.or(cfg.task.k), "k")?;
    let (s1, s2) = ring_matrices(ring, k)?;
    let mut notes = Vec::new();
    let amps: RingAmplitudes = match method {
        Method::Auto => solve(ring, k)?,
        Method::Closed => solve_closed_form(&s1, &s2)?,
        Method::Algebraic => solve_algebraic(&s1, &s2)?,
        Method::Series => {
            let tol = cli.tol.or(cfg.task.tol).unwrap_or(DEFAULT_SERIES_TOL);
            let series = solve_series(&s1, &s2, tol, SERIES_MAX_TERMS)?;
            notes.push(format!(
                "series terms = {}, remainder bound = {}",
                series.terms_used,
                num(series.remainder_bound)
            ));
            series.amplitudes
        }
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "ring mode = {}, xi1 = {}, xi2 = {}",
        mode_name(ring),
        num(ring.xi1()),
        num(ring.xi2())
    );
    let _ = writeln!(out, "k = {}, method = {method:?}", num(k));
    for (label, z) in ["A", "B", "C", "D", "E", "F"].iter().zip(amps.as_array()) {
        let _ = writeln!(
            out,
            "{label} = {}    |{label}|^2 = {}",
            complex(z),
            num(z.norm_sqr())
        );
    }
    let _ = writeln!(out, "reflection |A|^2 = {}", num(amps.reflection()));
    let _ = writeln!(out, "transmission |F|^2 = {}", num(amps.transmission()));
    let _ = writeln!(
        out,
        "flux error = {}",
        num(amps.reflection() + amps.transmission() - 1.0)
    );
    for n in notes {
        let _ = writeln!(out, "{n}");
    }
    if method != Method::Algebraic {
        match solve_algebraic(&s1, &s2) {
            Ok(alg) => {
                let diff = amps.max_diff(&alg);
                let scale = 1.0 + alg.as_array().iter().map(|z| z.norm()).fold(0.0, f64::max);
                let _ = writeln!(out, "algebraic cross-check max |diff| = {}", num(diff));
                if diff > CROSS_CHECK_TOL * scale {
                    eprintln!("warning: algebraic cross-check differs by {diff:e}");
                }
            }
            Err(Error::DegenerateRing { .. }) => {
                let _ = writeln!(
                    out,
                    "algebraic cross-check skipped: elimination formulas degenerate at this k"
                );
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(out)
}

pub fn cmd_sweep(cfg: &Config, cli: &Cli) -> Result<String, CliError> {
    let ring = cfg.ring()?;
    let (k_min, k_max) = k_range(cfg, cli)?;
    let n = cli.n.or(cfg.task.n).unwrap_or(DEFAULT_SWEEP_POINTS);
    if n < 2 {
        return Err(CliError::Config(format!(
            "task.n: need at least 2 points, got {n}"
        )));
    }
    Ok(csv::spectrum(&sweep(ring, k_min, k_max, n)?))
}

pub fn cmd_find(
    cfg: &Config,
    cli: &Cli,
    scan_n: Option<usize>,
) -> Result<(String, Vec<String>), CliError> {
    let ring = cfg.ring()?;
    let (k_min, k_max) = k_range(cfg, cli)?;
    let kind = cli.kind.or(cfg.task.kind).unwrap_or(KindSpec::Transmission);
    let tol = cli.tol.or(cfg.task.tol).unwrap_or(DEFAULT_FIND_TOL);
    if !(tol > 0.0) {
        return Err(CliError::Config(format!(
            "task.tol: must be > 0, got {tol}"
        )));
    }
    let scan_n = scan_n
        .or(cfg.task.scan_n)
        .unwrap_or_else(|| default_scan_points(k_min, k_max));
    if scan_n < 3 {
        return Err(CliError::Config(format!(
            "task.scan_n: need at least 3 points, got {scan_n}"
        )));
    }
    let search = find_resonances(ring, k_min, k_max, kind.into(), scan_n, tol)?;
    Ok((csv::resonances(&search.resonances), search.warnings))
}
