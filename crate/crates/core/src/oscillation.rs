//! Truncated explicit-formula sums over zeros of zeta_K, the Jurkat-Peyerimhoff
//! smoothed means h*_{K,T}(t), extremum scans, and the explicit-formula residual.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::CoeffTables;
use crate::error::{Error, Result};
use crate::mstar::MStar;
use crate::quadfield::QuadField;
use crate::zeros::ZeroSet;

/// f(y) = (1 - y) cos(pi y) + sin(pi y)/pi on [0, 1], zero beyond.
pub fn jp_kernel(y: f64) -> f64 {
    if !(0.0..1.0).contains(&y) {
        return 0.0;
    }
    (1.0 - y) * (PI * y).cos() + (PI * y).sin() / PI
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OscKind {
    /// Unweighted sum over 0 < gamma <= T.
    Sharp,
    /// Weighted by jp_kernel(gamma / T) over 0 < gamma < T.
    JurkatPeyerimhoff,
}

/// t -> 2 Re sum_gamma w(gamma) e^{i gamma t} / (rho zeta_K'(rho)), the sum
/// running over zeros with gamma > 0 and the conjugates folded in by 2 Re.
#[derive(Debug, Clone)]
pub struct OscSum {
    pub field: QuadField,
    pub t_cut: f64,
    pub kind: OscKind,
    gammas: Vec<f64>,
    coefs: Vec<Complex64>,
}

impl OscSum {
    pub fn new(zeros: &ZeroSet, t_cut: f64, kind: OscKind) -> Result<Self> {
        if t_cut > zeros.t_max {
            return Err(Error::domain(format!(
                "T = {t_cut} exceeds the zero set height {}",
                zeros.t_max
            )));
        }
        zeros.check_simple()?;
        let mut gammas = Vec::new();
        let mut coefs = Vec::new();
        for r in zeros.up_to(t_cut) {
            let w = match kind {
                OscKind::Sharp => 1.0,
                OscKind::JurkatPeyerimhoff => jp_kernel(r.gamma / t_cut),
            };
            if w == 0.0 {
                continue;
            }
            gammas.push(r.gamma);
            coefs.push(w / r.rho_deriv()?);
        }
        Ok(Self {
            field: zeros.field,
            t_cut,
            kind,
            gammas,
            coefs,
        })
    }

    pub fn terms(&self) -> usize {
        self.gammas.len()
    }

    pub fn value_at(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for (g, c) in self.gammas.iter().zip(&self.coefs) {
            let (s, co) = (g * t).sin_cos();
            acc += c.re * co - c.im * s;
        }
        2.0 * acc
    }

    /// The same sum with each conjugate zero added as its own term; the
    /// imaginary part should vanish.
    pub fn value_unpaired(&self, t: f64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (g, c) in self.gammas.iter().zip(&self.coefs) {
            acc += c * Complex64::from_polar(1.0, g * t);
            acc += c.conj() * Complex64::from_polar(1.0, -g * t);
        }
        acc
    }

    /// sum_{|gamma| <= T} x^rho / (rho zeta_K'(rho)) for the sharp kind.
    pub fn at_x(&self, x: f64) -> f64 {
        x.sqrt() * self.value_at(x.ln())
    }
}

pub fn h_star(zeros: &ZeroSet, t_cut: f64, t: f64) -> Result<f64> {
    Ok(OscSum::new(zeros, t_cut, OscKind::JurkatPeyerimhoff)?.value_at(t))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub min: f64,
    pub argmin: f64,
    pub max: f64,
    pub argmax: f64,
    /// Whether max > 1 or min < -1.
    pub exceedance: bool,
    #[serde(skip)]
    pub samples: Vec<(f64, f64)>,
}

/// Golden-section search for an extremum of `f` on [a, b].
fn golden<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, maximize: bool) -> (f64, f64) {
    let g = |t: f64| if maximize { -f(t) } else { f(t) };
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while b - a > 1e-9 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = g(d);
        }
    }
    let t = 0.5 * (a + b);
    (t, f(t))
}

/// Grid extrema of h* over [lo, hi], each refined by golden-section search
/// within one grid step.
pub fn h_star_scan(zeros: &ZeroSet, t_cut: f64, lo: f64, hi: f64, step: f64) -> Result<ScanReport> {
    if !(step > 0.0) || !(hi >= lo) {
        return Err(Error::domain("scan needs step > 0 and lo <= hi"));
    }
    let sum = OscSum::new(zeros, t_cut, OscKind::JurkatPeyerimhoff)?;
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    let samples: Vec<(f64, f64)> = (0..=n)
        .into_par_iter()
        .map(|i| {
            let t = lo + i as f64 * step;
            (t, sum.value_at(t))
        })
        .collect();
    let imin = (0..samples.len())
        .min_by(|&a, &b| samples[a].1.total_cmp(&samples[b].1))
        .unwrap_or(0);
    let imax = (0..samples.len())
        .max_by(|&a, &b| samples[a].1.total_cmp(&samples[b].1).then(b.cmp(&a)))
        .unwrap_or(0);
    let refine = |i: usize, maximize: bool| {
        let t = samples[i].0;
        let (a, b) = ((t - step).max(lo), (t + step).min(hi));
        if b <= a {
            return samples[i];
        }
        let (tr, v) = golden(|u| sum.value_at(u), a, b, maximize);
        let better = if maximize { v > samples[i].1 } else { v < samples[i].1 };
        if better {
            (tr, v)
        } else {
            samples[i]
        }
    };
    let (argmin, min) = refine(imin, false);
    let (argmax, max) = refine(imax, true);
    Ok(ScanReport {
        min,
        argmin,
        max,
        argmax,
        exceedance: max > 1.0 || min < -1.0,
        samples,
    })
}

/// |M_K(x) + M_K*(x) - sum_{|gamma| <= T} x^rho / (rho zeta_K'(rho))|.
pub fn explicit_formula_residual(
    tables: &CoeffTables,
    mstar: &MStar,
    zeros: &ZeroSet,
    x: f64,
    t_cut: f64,
) -> Result<f64> {
    if tables.field() != zeros.field || mstar.field() != zeros.field {
        return Err(Error::domain("tables, M_K* and zeros belong to different fields"));
    }
    if x < 2.0 {
        return Err(Error::domain(format!("x = {x} must be at least 2")));
    }
    let m = tables.mertens(x)?;
    let ms = mstar.eval(x)?.value;
    let sharp = OscSum::new(zeros, t_cut, OscKind::Sharp)?.at_x(x);
    Ok((m + ms - sharp).abs())
}
