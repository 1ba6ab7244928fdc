//! Special values entering the residue series: L(1, chi), L'/L(1, chi),
//! zeta_K and zeta_K'/zeta_K at integers, and shifted digamma values.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadfield::{Character, QuadField};
use crate::special::{harmonic, periodic_dirichlet, periodic_dirichlet_at_one, zeta};

pub use crate::special::EULER_GAMMA;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FiniteFormula,
    TruncatedSeries,
    EulerMaclaurin,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpecialValue {
    pub value: f64,
    pub abs_error_bound: f64,
    pub method: Method,
}

pub(crate) fn character_coeffs(chi: &Character) -> Vec<f64> {
    (0..chi.modulus())
        .map(|n| f64::from(chi.value_u(n)))
        .collect()
}

/// L(1, chi) by the closed finite formulas for odd and even characters.
pub fn l_at_one(chi: &Character) -> SpecialValue {
    let d = chi.modulus();
    let df = d as f64;
    let value = if chi.is_even() {
        let s: f64 = (1..d)
            .map(|a| f64::from(chi.value_u(a)) * (PI * a as f64 / df).sin().ln())
            .sum();
        -s / df.sqrt()
    } else {
        let s: f64 = (1..d).map(|a| f64::from(chi.value_u(a)) * a as f64).sum();
        -PI * s / (df * df.sqrt())
    };
    SpecialValue {
        value,
        abs_error_bound: 1e-16 * df * (1.0 + df.ln()) * value.abs().max(1.0),
        method: Method::FiniteFormula,
    }
}

/// L'(1, chi) / L(1, chi) for an even character.
pub fn l_log_deriv_at_one(chi: &Character) -> Result<SpecialValue> {
    if !chi.is_even() {
        return Err(Error::domain(
            "L'/L(1, chi) is only provided for even characters",
        ));
    }
    let (l, dl, err) = periodic_dirichlet_at_one(&character_coeffs(chi));
    let value = dl / l;
    Ok(SpecialValue {
        value,
        abs_error_bound: err / l.abs() * (1.0 + value.abs()),
        method: Method::EulerMaclaurin,
    })
}

/// zeta_K(m) = zeta(m) L(m, chi).
pub fn zeta_k_at_integer(field: &QuadField, m: u32) -> Result<SpecialValue> {
    if m < 2 {
        return Err(Error::domain("zeta_K(m) needs m >= 2"));
    }
    Ok(ZetaKCache::new(field, m).zeta_k(m))
}

/// zeta_K'/zeta_K(m) for odd m >= 3.
pub fn zeta_k_log_deriv(field: &QuadField, m: u32) -> Result<SpecialValue> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::domain("zeta_K'/zeta_K(m) needs odd m >= 3"));
    }
    Ok(ZetaKCache::new(field, m).log_deriv(m))
}

/// 2 Gamma'/Gamma(2k + 1) = 2 (H_{2k} - gamma).
pub fn digamma_shift(k: u32) -> SpecialValue {
    let value = 2.0 * (harmonic(2 * u64::from(k)) - EULER_GAMMA);
    SpecialValue {
        value,
        abs_error_bound: 4.0 * f64::EPSILON * value.abs().max(1.0),
        method: Method::FiniteFormula,
    }
}

/// zeta(m), L(m, chi) and their derivatives for m = 2..=max_m, computed once
/// per field for the residue series.
#[derive(Debug, Clone)]
pub(crate) struct ZetaKCache {
    // index m; entries 0 and 1 unused
    zeta: Vec<(f64, f64, f64)>,
    l: Vec<(f64, f64, f64)>,
}

impl ZetaKCache {
    pub(crate) fn new(field: &QuadField, max_m: u32) -> Self {
        let chi = field.character();
        let coeffs = character_coeffs(&chi);
        let mut zeta_vals = vec![(0.0, 0.0, 0.0); max_m as usize + 1];
        let mut l_vals = zeta_vals.clone();
        for m in 2..=max_m {
            let s = Complex64::new(f64::from(m), 0.0);
            let z = zeta(s);
            zeta_vals[m as usize] = (z.value.re, z.deriv.re, z.err);
            let l = periodic_dirichlet(&coeffs, s);
            l_vals[m as usize] = (l.value.re, l.deriv.re, l.err);
        }
        Self {
            zeta: zeta_vals,
            l: l_vals,
        }
    }

    pub(crate) fn max_m(&self) -> u32 {
        (self.zeta.len() - 1) as u32
    }

    pub(crate) fn zeta_k(&self, m: u32) -> SpecialValue {
        let (z, _, ez) = self.zeta[m as usize];
        let (l, _, el) = self.l[m as usize];
        SpecialValue {
            value: z * l,
            abs_error_bound: ez * l.abs() + el * z.abs() + 2.0 * f64::EPSILON,
            method: Method::EulerMaclaurin,
        }
    }

    pub(crate) fn log_deriv(&self, m: u32) -> SpecialValue {
        let (z, dz, ez) = self.zeta[m as usize];
        let (l, dl, el) = self.l[m as usize];
        SpecialValue {
            value: dz / z + dl / l,
            abs_error_bound: 2.0 * (ez + el) + 4.0 * f64::EPSILON,
            method: Method::EulerMaclaurin,
        }
    }
}
