//! The logarithmic distribution of phi_K(y) = e^{-y/2} M_K(e^y): sampling,
//! histograms, logarithmic densities, the weak Mertens integral, and the
//! Bessel-product Fourier transform predicted by the zeros.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::CoeffTables;
use crate::error::{Error, Result};
use crate::quadfield::QuadField;
use crate::zeros::ZeroSet;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub masses: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalDist {
    pub field: QuadField,
    pub y0: f64,
    pub y_max: f64,
    pub step: f64,
    pub samples: Vec<f64>,
    /// max |phi_K| over the samples.
    pub c_emp: f64,
}

impl EmpiricalDist {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Fraction of samples in [a, b].
    pub fn mass_in(&self, a: f64, b: f64) -> f64 {
        let c = self.samples.iter().filter(|&&v| a <= v && v <= b).count();
        c as f64 / self.samples.len() as f64
    }

    /// Fraction of samples <= v.
    pub fn cdf(&self, v: f64) -> f64 {
        let c = self.samples.iter().filter(|&&s| s <= v).count();
        c as f64 / self.samples.len() as f64
    }

    /// Equal-width bins spanning [min, max] of the samples.
    pub fn histogram(&self, bins: usize) -> Histogram {
        let bins = bins.max(1);
        let lo = self.samples.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = self.samples.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let width = if hi > lo { (hi - lo) / bins as f64 } else { 1.0 };
        let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
        let mut counts = vec![0u64; bins];
        for &v in &self.samples {
            let i = (((v - lo) / width) as usize).min(bins - 1);
            counts[i] += 1;
        }
        let n = self.samples.len() as f64;
        Histogram {
            edges,
            masses: counts.iter().map(|&c| c as f64 / n).collect(),
        }
    }

    /// Sample mean of e^{-i xi phi}.
    pub fn char_fn(&self, xi: f64) -> Complex64 {
        if xi == 0.0 {
            return Complex64::new(1.0, 0.0);
        }
        let s: Complex64 = self
            .samples
            .iter()
            .map(|&v| Complex64::from_polar(1.0, -xi * v))
            .sum();
        s / self.samples.len() as f64
    }
}

/// phi_K on the grid y0, y0 + step, ..., up to Y.
pub fn sample_phi(tables: &CoeffTables, y0: f64, y_max: f64, step: f64) -> Result<EmpiricalDist> {
    if !(y0 > 0.0 && y0 < y_max && step > 0.0) {
        return Err(Error::domain("need 0 < y0 < Y and step > 0"));
    }
    if y_max.exp() > tables.limit() as f64 {
        return Err(Error::domain(format!(
            "e^Y = {:.1} exceeds the sieve bound {}",
            y_max.exp(),
            tables.limit()
        )));
    }
    let n = ((y_max - y0) / step + 1e-9).floor() as usize + 1;
    let samples = (0..n)
        .into_par_iter()
        .map(|i| {
            let y = y0 + i as f64 * step;
            Ok((-y / 2.0).exp() * tables.mertens(y.exp())?)
        })
        .collect::<Result<Vec<f64>>>()?;
    let c_emp = samples.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(EmpiricalDist {
        field: tables.field(),
        y0,
        y_max,
        step,
        samples,
        c_emp,
    })
}

/// (1 / log X) * integral over {t in [1, X] : |M_K(t)| <= beta sqrt t} of dt/t.
pub fn log_density(tables: &CoeffTables, beta: f64, x_max: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::domain("beta must be positive"));
    }
    if !(x_max > 1.0) || x_max > tables.limit() as f64 {
        return Err(Error::domain(format!("X = {x_max} outside (1, {}]", tables.limit())));
    }
    let prefix = tables.prefix();
    let mut acc = 0.0;
    let last = x_max.ceil() as usize;
    for n in 1..last {
        // M_K is constant on [n, n + 1)
        let m = prefix[n] as f64;
        let start = (n as f64).max((m / beta).powi(2));
        let end = ((n + 1) as f64).min(x_max);
        if end > start {
            acc += (end / start).ln();
        }
    }
    Ok(acc / x_max.ln())
}

/// integral_0^Y (e^{-y/2} M_K(e^y))^2 dy, exact on each step of M_K.
pub fn weak_mertens_integral(tables: &CoeffTables, y_max: f64) -> Result<f64> {
    if y_max < 0.0 {
        return Err(Error::domain("Y must be non-negative"));
    }
    let x_max = y_max.exp();
    if x_max > tables.limit() as f64 {
        return Err(Error::domain(format!("e^Y exceeds the sieve bound {}", tables.limit())));
    }
    let prefix = tables.prefix();
    let mut acc = 0.0;
    let mut n = 1usize;
    while (n as f64) < x_max {
        let m = prefix[n] as f64;
        let upper = ((n + 1) as f64).min(x_max);
        acc += m * m * (1.0 / n as f64 - 1.0 / upper);
        n += 1;
    }
    Ok(acc)
}

/// integral_0^1 e^{-i z cos 2 pi t} dt = J_0(z), by the trapezoid rule on the
/// periodic integrand.
pub fn bessel_j0_tilde(z: f64) -> f64 {
    let n = ((1.5 * z.abs()).ceil() as usize + 64).max(128);
    let s: f64 = (0..n)
        .map(|j| (z * (2.0 * PI * j as f64 / n as f64).cos()).cos())
        .sum();
    s / n as f64
}

/// prod over recorded zeros with gamma > 0 of J_0(2 xi / |rho zeta_K'(rho)|).
pub fn nu_hat_theoretical(zeros: &ZeroSet, xi: f64) -> Result<f64> {
    zeros.check_simple()?;
    Ok(zeros
        .records
        .iter()
        .map(|r| bessel_j0_tilde(2.0 * xi / (r.rho().norm() * r.zk_deriv_abs)))
        .product())
}

/// 2 sum_{0 < gamma <= T} |rho zeta_K'(rho)|^{-2}.
pub fn beta_series(zeros: &ZeroSet, t_cut: f64) -> Result<f64> {
    if t_cut > zeros.t_max {
        return Err(Error::domain(format!(
            "T = {t_cut} exceeds the zero set height {}",
            zeros.t_max
        )));
    }
    zeros.check_simple()?;
    Ok(2.0
        * zeros
            .up_to(t_cut)
            .iter()
            .map(|r| (r.rho().norm() * r.zk_deriv_abs).powi(-2))
            .sum::<f64>())
}
