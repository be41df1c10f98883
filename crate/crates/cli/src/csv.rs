//! Fixed-format CSV output.

use std::fmt::Write;

use yring::{Resonance, Spectrum};

pub const SPECTRUM_HEADER: &str =
    "k,abs2_A,abs2_B,abs2_C,abs2_D,abs2_E,abs2_F,re_A,im_A,re_F,im_F,degenerate";

pub const RESONANCE_HEADER: &str = "k_star,kind,residual";

/// 17 significant digits in scientific notation; NaN and infinities spelled out.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub fn spectrum(s: &Spectrum) -> String {
    let mut out = String::with_capacity(256 * (s.points().len() + 1));
    out.push_str(SPECTRUM_HEADER);
    out.push('\n');
    for p in s.points() {
        let mut fields = vec![num(p.k)];
        match &p.amps {
            Some(a) => {
                fields.extend(a.as_array().iter().map(|z| num(z.norm_sqr())));
                fields.extend([a.a.re, a.a.im, a.f.re, a.f.im].map(num));
                fields.push("0".into());
            }
            None => {
                fields.extend(std::iter::repeat(num(f64::NAN)).take(10));
                fields.push("1".into());
            }
        }
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn resonances(list: &[Resonance]) -> String {
    let mut out = String::from(RESONANCE_HEADER);
    out.push('\n');
    for r in list {
        let _ = writeln!(out, "{},{},{}", num(r.k_star), r.kind, num(r.residual));
    }
    out
}
