//! The trivial completion M_K*(x) = -sum_k res_{s=-k} x^s / (s zeta_K(s)) for
//! quadratic K, its threshold bounds, and the table and counterexample scans
//! built on it.
//!
//! Imaginary fields have simple trivial zeros at every negative integer; real
//! fields have double zeros at the negative even integers and none at the odd
//! ones. In both cases the residue at s = 0 is the closed-form leading term.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffs::CoeffTables;
use crate::error::{Error, Result};
use crate::lvalues::{digamma_shift, l_at_one, l_log_deriv_at_one, ZetaKCache, EULER_GAMMA};
use crate::quadfield::{fundamental_discriminants, is_fundamental_discriminant, FieldKind, QuadField};

/// Series truncation used for the published tables.
pub const DEFAULT_K_MAX: u32 = 50;

/// Summation stops once a term (past the peak) drops below this.
const EARLY_EXIT: f64 = 1e-18;

const FOUR_PI_SQ: f64 = 4.0 * PI * PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MStarEval {
    pub delta: i64,
    pub x: f64,
    pub value: f64,
    pub k_max: u32,
    /// Last series index actually summed.
    pub k_used: u32,
    pub tail_bound: f64,
}

fn ln_factorial(k: u32) -> f64 {
    (1..=k).map(|j| f64::from(j).ln()).sum()
}

/// M_K* for one field with the L-values it needs precomputed, so that many x
/// can be evaluated cheaply.
#[derive(Debug, Clone)]
pub struct MStar {
    field: QuadField,
    k_max: u32,
    l1: f64,
    l1_log_deriv: f64,
    cache: ZetaKCache,
}

impl MStar {
    pub fn new(field: QuadField, k_max: u32) -> Result<Self> {
        if k_max < 1 {
            return Err(Error::domain("k_max must be at least 1"));
        }
        let chi = field.character();
        let l1 = l_at_one(&chi).value;
        let (l1_log_deriv, max_m) = if field.is_imaginary() {
            (0.0, k_max + 1)
        } else {
            (l_log_deriv_at_one(&chi)?.value, 2 * k_max + 1)
        };
        Ok(Self {
            field,
            k_max,
            l1,
            l1_log_deriv,
            cache: ZetaKCache::new(&field, max_m),
        })
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    fn sqrt_d(&self) -> f64 {
        (self.field.abs_disc() as f64).sqrt()
    }

    /// The residue at s = 0, negated.
    pub fn leading_term(&self, x: f64) -> f64 {
        let d = self.field.abs_disc() as f64;
        if self.field.is_imaginary() {
            2.0 * PI / (self.l1 * self.sqrt_d())
        } else {
            4.0 / (self.l1 * self.sqrt_d())
                * ((x * d / FOUR_PI_SQ).ln() - EULER_GAMMA + self.l1_log_deriv)
        }
    }

    /// k-th summand of the series part of M_K*(x), k >= 1. For imaginary
    /// fields it is minus the residue at -k, for real fields minus the residue
    /// at -2k.
    pub fn series_term(&self, x: f64, k: u32) -> f64 {
        let d = self.field.abs_disc() as f64;
        if self.field.is_imaginary() {
            let ln_mag = (f64::from(k) + 0.5) * (FOUR_PI_SQ / d).ln()
                - f64::from(k) * x.ln()
                - f64::from(k).ln()
                - 2.0 * ln_factorial(k);
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * ln_mag.exp() / self.zeta_k(k + 1)
        } else {
            let r = FOUR_PI_SQ / (x * d);
            let m = 2 * k + 1;
            let ln_mag = 2.0 * f64::from(k) * r.ln() - f64::from(k).ln() - 2.0 * ln_factorial(2 * k);
            let bracket = (x * d / FOUR_PI_SQ).ln()
                + 1.0 / (2.0 * f64::from(k))
                + self.log_deriv(m)
                + digamma_shift(k).value;
            2.0 / self.sqrt_d() * ln_mag.exp() / self.zeta_k(m) * bracket
        }
    }

    fn zeta_k(&self, m: u32) -> f64 {
        if m <= self.cache.max_m() {
            self.cache.zeta_k(m).value
        } else {
            ZetaKCache::new(&self.field, m).zeta_k(m).value
        }
    }

    fn log_deriv(&self, m: u32) -> f64 {
        if m <= self.cache.max_m() {
            self.cache.log_deriv(m).value
        } else {
            ZetaKCache::new(&self.field, m).log_deriv(m).value
        }
    }

    /// Rigorous bound on the sum of series terms with index > k.
    fn tail_majorant(&self, x: f64, k: u32) -> f64 {
        let d = self.field.abs_disc() as f64;
        let kf = f64::from(k);
        if self.field.is_imaginary() {
            // |term_j| <= sqrt(4pi^2/D) r^j / (j (j!)^2),  zeta_K >= 1
            let r = FOUR_PI_SQ / (x * d);
            let pref = (FOUR_PI_SQ / d).sqrt();
            let ln_next = (kf + 1.0) * r.ln() - (kf + 1.0).ln() - 2.0 * ln_factorial(k + 1);
            let next = pref * ln_next.exp();
            let q = r / ((kf + 2.0) * (kf + 2.0));
            let geometric = if q < 1.0 { next / (1.0 - q) } else { f64::INFINITY };
            // sum_{j>k} r^j/j! <= r^{k+1}/(k+1)! e^r
            let exp_bound = pref * ((kf + 1.0) * r.ln() - ln_factorial(k + 1) + r).exp();
            geometric.min(exp_bound)
        } else {
            // |zeta_K'/zeta_K(2j+1)| <= 1/(2j^2), 2 psi(2j+1) <= 2 log 2j + 2 - 2 gamma
            let r = FOUR_PI_SQ / (x * d);
            let j = kf + 1.0;
            let bracket = (x * d / FOUR_PI_SQ).ln().abs()
                + 1.0 / (2.0 * j)
                + 1.0 / (2.0 * j * j)
                + 2.0 * (2.0 * j).ln()
                + 2.0
                - 2.0 * EULER_GAMMA;
            let ln_next = 2.0 * j * r.ln() - j.ln() - 2.0 * ln_factorial(k + 1 + k + 1);
            let next = 2.0 / self.sqrt_d() * ln_next.exp() * bracket;
            let q = 2.0 * r * r / ((2.0 * j + 1.0) * (2.0 * j + 2.0)).powi(2);
            if q < 1.0 {
                next / (1.0 - q)
            } else {
                f64::INFINITY
            }
        }
    }

    pub fn eval(&self, x: f64) -> Result<MStarEval> {
        self.eval_with(x, self.k_max)
    }

    pub fn eval_with(&self, x: f64, k_max: u32) -> Result<MStarEval> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::domain(format!("x = {x} must be positive")));
        }
        if k_max < 1 {
            return Err(Error::domain("k_max must be at least 1"));
        }
        let d = self.field.abs_disc() as f64;
        let r = FOUR_PI_SQ / (x * d);
        // terms peak near k ~ sqrt(r) (imaginary) or sqrt(r)/2 (real)
        let peak = r.sqrt().ceil() as u32 + 1;
        let mut value = self.leading_term(x);
        let mut k_used = 0;
        for k in 1..=k_max {
            let t = self.series_term(x, k);
            value += t;
            k_used = k;
            if k > peak && t.abs() < EARLY_EXIT {
                break;
            }
        }
        Ok(MStarEval {
            delta: self.field.delta(),
            x,
            value,
            k_max,
            k_used,
            tail_bound: self.tail_majorant(x, k_used),
        })
    }

    /// res_{s=-k} x^s / (s zeta_K(s)).
    pub fn residue_at_negative(&self, x: f64, k: u32) -> Result<f64> {
        if k < 1 {
            return Err(Error::domain("residue index must be >= 1"));
        }
        if !(x > 0.0) {
            return Err(Error::domain("x must be positive"));
        }
        if self.field.is_imaginary() {
            Ok(-self.series_term(x, k))
        } else if k % 2 == 1 {
            Ok(0.0)
        } else {
            Ok(-self.series_term(x, k / 2))
        }
    }
}

fn require_kind(field: &QuadField, kind: FieldKind) -> Result<()> {
    if field.kind() != kind {
        return Err(Error::domain(format!(
            "{field} is not {}",
            match kind {
                FieldKind::Imaginary => "imaginary quadratic",
                FieldKind::Real => "real quadratic",
            }
        )));
    }
    Ok(())
}

pub fn mstar_imaginary(field: &QuadField, x: f64, k_max: u32) -> Result<MStarEval> {
    require_kind(field, FieldKind::Imaginary)?;
    MStar::new(*field, k_max)?.eval(x)
}

pub fn mstar_real(field: &QuadField, x: f64, k_max: u32) -> Result<MStarEval> {
    require_kind(field, FieldKind::Real)?;
    MStar::new(*field, k_max)?.eval(x)
}

pub fn mstar(field: &QuadField, x: f64, k_max: u32) -> Result<MStarEval> {
    MStar::new(*field, k_max)?.eval(x)
}

pub fn residue_at_negative_k(field: &QuadField, x: f64, k: u32) -> Result<f64> {
    let k_cache = if field.is_imaginary() { k } else { k.div_ceil(2) };
    MStar::new(*field, k_cache.max(1))?.residue_at_negative(x, k)
}

/// Right side of the trivial-zero residue bound with constant `c`:
/// c (2pi)^{2k} log(k x D)^{r1+r2} / (k x^k D^{k+1/2} (k!)^2).
pub fn residue_bound(field: &QuadField, x: f64, k: u32, c: f64) -> f64 {
    let d = field.abs_disc() as f64;
    let sig = field.signature();
    let kf = f64::from(k);
    let log_factor = (kf * x * d).ln().abs().powi((sig.r1 + sig.r2) as i32);
    let ln_rest = 2.0 * kf * (2.0 * PI).ln() - kf.ln() - kf * x.ln() - (kf + 0.5) * d.ln() - 2.0 * ln_factorial(k);
    c * log_factor * ln_rest.exp()
}

/// Smallest c for which the residue bound holds at (x, k).
pub fn residue_bound_constant(field: &QuadField, x: f64, k: u32) -> Result<f64> {
    let res = residue_at_negative_k(field, x, k)?;
    Ok(res.abs() / residue_bound(field, x, k, 1.0))
}

/// Closed-form lower bound for M_K*(1) when K = Q(sqrt(-D)).
pub fn mstar_lower_bound_imaginary(d: u64) -> Result<f64> {
    if !is_fundamental_discriminant(-(d as i64)) {
        return Err(Error::domain(format!("-{d} is not a fundamental discriminant")));
    }
    let df = d as f64;
    let pv = 0.5 * df.ln() + df.ln().ln() + 2.0 + 2f64.ln();
    Ok(2.0 * PI / df.sqrt() * (1.0 / pv - (FOUR_PI_SQ / df).exp() + 1.0))
}

/// Whether the sufficient inequality for M_K*(1) > 0, K = Q(sqrt(D)), holds at D.
pub fn mstar_threshold_check_real(d: u64) -> Result<bool> {
    if d < 5 || !is_fundamental_discriminant(d as i64) {
        return Err(Error::domain(format!("{d} is not a real fundamental discriminant")));
    }
    let df = d as f64;
    let ln_d = df.ln();
    let lhs = 2.0 * (0.5 * ln_d - 1.5 * PI.ln() - 2f64.ln() - 0.5 * EULER_GAMMA)
        / (0.5 * ln_d + ln_d.ln() + 2.0 + 2f64.ln());
    let rhs = ((FOUR_PI_SQ / df).cosh() - 1.0) * (0.5 * ln_d + 1.5 - EULER_GAMMA - PI.ln());
    Ok(lhs > rhs)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    /// |delta|
    pub d: u64,
    pub mstar: f64,
    pub tail_bound: f64,
}

/// M_K*(x) for every fundamental discriminant of the given sign with
/// 3 <= |delta| <= d_max, ordered by |delta|.
pub fn table_scan(kind: FieldKind, d_max: u64, x: f64, k_max: u32) -> Result<Vec<TableRow>> {
    fundamental_discriminants(kind, 3, d_max)
        .par_iter()
        .map(|field| {
            let e = MStar::new(*field, k_max)?.eval(x)?;
            Ok(TableRow {
                d: field.abs_disc(),
                mstar: e.value,
                tail_bound: e.tail_bound,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Counterexample {
    pub n: u64,
    /// (M_K(n+) + M_K*(n)) / sqrt(n)
    pub ratio: f64,
}

/// Smallest n <= n_max with M_K(n+) + M_K*(n) > sqrt(n).
pub fn counterexample_search(
    tables: &CoeffTables,
    n_max: u64,
    k_max: u32,
) -> Result<Option<Counterexample>> {
    if n_max > tables.limit() as u64 {
        return Err(Error::domain(format!(
            "n_max = {n_max} exceeds the sieve bound {}",
            tables.limit()
        )));
    }
    let ms = MStar::new(tables.field(), k_max)?;
    for n in 1..=n_max {
        let m = tables.mertens_right_limit(n)? as f64;
        let nf = n as f64;
        let ratio = (m + ms.eval(nf)?.value) / nf.sqrt();
        if ratio > 1.0 {
            return Ok(Some(Counterexample { n, ratio }));
        }
    }
    Ok(None)
}

/// Rounds to `places` decimals; the published M_K*(1) tables use this.
pub fn round_decimals(v: f64, places: u32) -> String {
    let out = format!("{v:.prec$}", prec = places as usize);
    match out.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => out,
    }
}

/// Truncates toward zero to `places` decimals; the published counterexample
/// ratios use this.
pub fn truncate_decimals(v: f64, places: u32) -> String {
    let scale = 10f64.powi(places as i32);
    let scaled = (v.abs() * scale).trunc() as u64;
    let sign = if v < 0.0 && scaled > 0 { "-" } else { "" };
    let int = scaled / 10u64.pow(places);
    let frac = scaled % 10u64.pow(places);
    format!("{sign}{int}.{frac:0width$}", width = places as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{periodic_dirichlet, recip_gamma};
    use num_complex::Complex64;

    fn field(d: i64) -> QuadField {
        QuadField::new(d).unwrap()
    }

    fn mstar1(d: i64) -> f64 {
        mstar(&field(d), 1.0, DEFAULT_K_MAX).unwrap().value
    }

    #[test]
    fn imaginary_anchors() {
        assert_eq!(round_decimals(mstar1(-3), 4), "-0.4851");
        assert_eq!(round_decimals(mstar1(-43), 4), "1.3179");
        assert_eq!(round_decimals(mstar1(-163), 4), "1.8941");
        assert_eq!(round_decimals(mstar1(-307), 4), "0.6279");
        let big = mstar1(-1_000_003);
        // the series part is negligible, leaving 2 pi / (L(1, chi) sqrt D)
        let chi = field(-1_000_003).character();
        let lead = 2.0 * PI / (l_at_one(&chi).value * 1_000_003f64.sqrt());
        assert!(big > 0.0 && (big - lead).abs() < 1e-3 * lead, "{big}");
        assert!(mstar_imaginary(&field(5), 1.0, 50).is_err());
    }

    #[test]
    fn real_anchors() {
        assert_eq!(round_decimals(mstar1(5), 4), "-0.4857");
        assert_eq!(round_decimals(mstar1(269), 4), "0.5460");
        assert_eq!(round_decimals(mstar1(173), 4), "1.2271");
        assert!(mstar_real(&field(-4), 1.0, 50).is_err());
    }

    /// Independent values from Hurwitz-zeta evaluations at 25 digits.
    #[test]
    fn high_precision_references() {
        let refs = [
            (-116i64, 0.235_932_956_460_674_9),
            (-276, 0.219_922_647_342_621_66),
            (5, -0.485_728_102_134_442_4),
            (69, 0.074_915_322_438_821_11),
            (168, 0.238_360_220_339_280_95),
            (269, 0.545_963_002_139_050_8),
        ];
        for (delta, want) in refs {
            let got = mstar1(delta);
            assert!((got - want).abs() < 1e-12, "{delta}: {got} vs {want}");
        }
    }

    #[test]
    fn tail_bounds_are_tiny_at_default_truncation() {
        for d in [-3i64, -4, -7, -163, -307, 5, 8, 12, 173, 269] {
            for x in [1.0, 2.5, 100.0] {
                let e = mstar(&field(d), x, DEFAULT_K_MAX).unwrap();
                assert!(e.tail_bound <= 1e-12 * e.value.abs().max(1.0), "{d} {x}: {e:?}");
            }
        }
    }

    #[test]
    fn truncation_stability() {
        for d in (20u64..400).filter(|d| is_fundamental_discriminant(-(*d as i64)) || is_fundamental_discriminant(*d as i64)) {
            for sign in [-1i64, 1] {
                let Ok(k) = QuadField::new(sign * d as i64) else { continue };
                for x in [1.0, 3.0, 40.0] {
                    let a = MStar::new(k, 50).unwrap().eval(x).unwrap().value;
                    let b = MStar::new(k, 100).unwrap().eval(x).unwrap().value;
                    assert!((a - b).abs() <= 1e-12, "{k} {x}");
                }
            }
        }
    }

    #[test]
    fn lower_bound_soundness() {
        for d in 4u64..=10_000 {
            let Ok(bound) = mstar_lower_bound_imaginary(d) else { continue };
            let v = mstar1(-(d as i64));
            assert!(bound <= v, "D {d}: bound {bound} > {v}");
        }
        assert!(mstar_lower_bound_imaginary(308).unwrap() > 0.0);
        assert!(mstar_lower_bound_imaginary(4).unwrap() < 0.0);
        assert!(mstar_lower_bound_imaginary(9).is_err());
    }

    #[test]
    fn real_threshold_examples() {
        assert!(mstar_threshold_check_real(273).unwrap());
        assert!(mstar_threshold_check_real(100_001).unwrap());
        assert!(!mstar_threshold_check_real(5).unwrap());
        assert!(mstar_threshold_check_real(9).is_err());
    }

    #[test]
    fn deviation_from_leading_constant() {
        for d in (30u64..300).filter(|d| is_fundamental_discriminant(-(*d as i64))) {
            let ms = MStar::new(field(-(d as i64)), 50).unwrap();
            let df = d as f64;
            let lead = ms.leading_term(1.0);
            for i in 0..40 {
                let x = 1.0 + 0.37 * f64::from(i);
                let dev = (ms.eval(x).unwrap().value - lead).abs();
                let bound = 2.0 * PI / df.sqrt() * ((FOUR_PI_SQ / (x * df)).exp() - 1.0);
                assert!(dev <= bound * (1.0 + 1e-12), "D {d} x {x}");
            }
        }
    }

    /// zeta_K(u) through the functional equation
    /// zeta_K(1-s) = zeta_K(s) (D/4pi^2)^{s-1/2} (pi/2)^{r1/2} Gamma(s)^{r2}
    ///               / (sin(pi s/2)^{r1} Gamma(1-s)^{r1+r2})
    /// with s = 1 - u, so only Re s > 1 Dirichlet series are needed.
    fn zeta_k_reflected(k: &QuadField, u: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        let s = one - u;
        let d = k.abs_disc() as f64;
        let chi = k.character();
        let coeffs: Vec<f64> = (0..chi.modulus()).map(|n| f64::from(chi.value_u(n))).collect();
        let zk_s = periodic_dirichlet(&[1.0], s).value * periodic_dirichlet(&coeffs, s).value;
        let sig = k.signature();
        let mut factor = (s - 0.5) * (d / FOUR_PI_SQ).ln();
        factor = factor.exp() * (PI / 2.0).powf(f64::from(sig.r1) / 2.0);
        let gamma_s = one / recip_gamma(s);
        for _ in 0..sig.r2 {
            factor *= gamma_s;
        }
        for _ in 0..sig.r1 {
            factor /= (s * PI / 2.0).sin();
        }
        // 1/Gamma(1-s)^{r1+r2}
        for _ in 0..(sig.r1 + sig.r2) {
            factor *= recip_gamma(one - s);
        }
        zk_s * factor
    }

    /// Residue by the trapezoid rule on a circle of radius 1/2 around -k.
    fn contour_residue(k: &QuadField, x: f64, pole: f64) -> f64 {
        let n = 256;
        let radius = 0.5;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            let theta = 2.0 * PI * j as f64 / n as f64;
            let e = Complex64::from_polar(radius, theta);
            let u = Complex64::new(pole, 0.0) + e;
            let f = (u * x.ln()).exp() / (u * zeta_k_reflected(k, u));
            acc += f * e;
        }
        (acc / n as f64).re
    }

    #[test]
    fn residues_match_contour_integrals() {
        let cases = [(-4i64, 1.0), (-3, 2.0), (-23, 0.7), (5, 1.0), (12, 3.0), (-163, 1.5), (173, 1.0)];
        for (delta, x) in cases {
            let k = field(delta);
            let ms = MStar::new(k, 10).unwrap();
            for j in 1..=6u32 {
                let closed = ms.residue_at_negative(x, j).unwrap();
                let contour = contour_residue(&k, x, -f64::from(j));
                let scale = closed.abs().max(1e-14);
                assert!(
                    (closed - contour).abs() <= 1e-9 * scale.max(contour.abs()) + 1e-13,
                    "{delta} x={x} k={j}: closed {closed} contour {contour}"
                );
            }
        }
    }

    #[test]
    fn leading_term_matches_contour_at_zero() {
        for (delta, x) in [(-4i64, 1.0), (-7, 3.0), (5, 1.0), (8, 2.0), (269, 1.0)] {
            let k = field(delta);
            let ms = MStar::new(k, 10).unwrap();
            let contour = contour_residue(&k, x, 0.0);
            let lead = ms.leading_term(x);
            assert!((lead + contour).abs() < 1e-9 * lead.abs().max(1.0), "{delta}: {lead} vs {}", -contour);
        }
    }

    #[test]
    fn residue_examples_and_bound_constant() {
        let k = field(-4);
        let r = residue_at_negative_k(&k, 1.0, 1).unwrap();
        let ms = MStar::new(k, 5).unwrap();
        assert_eq!(r, -ms.series_term(1.0, 1));
        let expect = -(-(FOUR_PI_SQ / 4.0) * (4.0 / FOUR_PI_SQ).powf(-0.5)
            / crate::lvalues::zeta_k_at_integer(&k, 2).unwrap().value);
        assert!((r - expect).abs() < 1e-13 * expect.abs());
        assert_eq!(residue_at_negative_k(&field(5), 1.0, 1).unwrap(), 0.0);
        let res = residue_at_negative_k(&k, 2.0, 3).unwrap();
        assert!(res.abs() <= residue_bound(&k, 2.0, 3, 10.0));
        assert!(residue_at_negative_k(&k, 1.0, 0).is_err());
        let c = residue_bound_constant(&k, 2.0, 3).unwrap();
        assert!(c > 0.0 && c < 10.0);
    }

    #[test]
    fn counterexample_examples() {
        let t = CoeffTables::build(field(-7), 100).unwrap();
        let c = counterexample_search(&t, 100, DEFAULT_K_MAX).unwrap().unwrap();
        assert_eq!(c.n, 22);
        assert_eq!(truncate_decimals(c.ratio, 4), "1.2138");
        let t = CoeffTables::build(field(-163), 10).unwrap();
        let c = counterexample_search(&t, 10, DEFAULT_K_MAX).unwrap().unwrap();
        assert_eq!(c.n, 1);
        assert!((c.ratio - (1.0 + mstar1(-163))).abs() < 1e-12);
        assert!(counterexample_search(&t, 11, DEFAULT_K_MAX).is_err());
        let t = CoeffTables::build(field(-4), 50).unwrap();
        assert_eq!(counterexample_search(&t, 50, DEFAULT_K_MAX).unwrap(), None);
    }

    #[test]
    fn scan_small() {
        let rows = table_scan(FieldKind::Imaginary, 8, 1.0, 50).unwrap();
        assert_eq!(rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![3, 4, 7, 8]);
        let rows = table_scan(FieldKind::Real, 12, 1.0, 50).unwrap();
        assert_eq!(rows.iter().map(|r| r.d).collect::<Vec<_>>(), vec![5, 8, 12]);
    }

    #[test]
    fn truncation_formatting() {
        assert_eq!(truncate_decimals(-0.485_19, 4), "-0.4851");
        assert_eq!(truncate_decimals(1.894_19, 4), "1.8941");
        assert_eq!(truncate_decimals(-0.000_01, 4), "0.0000");
        assert_eq!(truncate_decimals(0.05, 4), "0.0500");
        assert_eq!(round_decimals(-0.485_08, 4), "-0.4851");
        assert_eq!(round_decimals(-0.000_01, 4), "0.0000");
    }
}
