//! Numerical kernels shared by the L-value, zero-finding and distribution code:
//! complex log-gamma, harmonic numbers, and Euler-Maclaurin evaluation of
//! Dirichlet series with periodic coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;

/// Euler's constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082;

/// B_2, B_4, ..., B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// Correction terms kept in the Euler-Maclaurin tail.
const EM_TERMS: usize = 12;

/// Target absolute truncation error of the tail.
const EM_TOLERANCE: f64 = 1e-17;

fn bernoulli(two_j: usize) -> f64 {
    BERNOULLI_EVEN[two_j / 2 - 1]
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// H_n = 1 + 1/2 + ... + 1/n.
pub fn harmonic(n: u64) -> f64 {
    // summed from the small end for accuracy
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

/// Principal branch of log Gamma(z), analytic off the non-positive real axis.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // reflection; only used away from the upper-half-plane scans
        let pi = Complex64::new(PI, 0.0);
        return pi.ln() - (pi * z).sin().ln() - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut z = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 15.0 || z.re < 8.0 {
        shift += z.ln();
        z += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let z2 = z * z;
    let mut zpow = z;
    for j in 1..=10 {
        let b = bernoulli(2 * j);
        series += b / ((2 * j) as f64 * (2 * j - 1) as f64) / zpow;
        zpow *= z2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + series - shift
}

/// 1/Gamma(z), entire.
pub fn recip_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return (PI * z).sin() / PI * ln_gamma(one - z).exp();
    }
    (-ln_gamma(z)).exp()
}

/// A series value with its s-derivative and an error estimate.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: Complex64,
    pub deriv: Complex64,
    pub err: f64,
}

/// Log of the size of the first omitted Euler-Maclaurin term for a tail
/// starting at `w` periods of length `p`.
fn log_tail_estimate(s: Complex64, w: f64, p: usize) -> f64 {
    let m = 2 * EM_TERMS + 1;
    let mut log_poch = 0.0;
    for i in 0..m {
        log_poch += (s + i as f64).norm().ln();
    }
    let b = (bernoulli(2 * EM_TERMS + 2).abs() / factorial(2 * EM_TERMS + 2)).ln();
    let big_w = w * p as f64;
    -s.re * big_w.ln() + b + log_poch - m as f64 * w.ln() + (p as f64).ln()
}

fn periods_needed(s: Complex64, p: usize) -> usize {
    let cap = (0.7 * s.norm()).ceil() + 20.0;
    let tol = EM_TOLERANCE.ln();
    let mut w = 1.0f64;
    while w < cap && log_tail_estimate(s, w, p) > tol {
        w = (w * 1.2).ceil();
    }
    w.min(cap) as usize
}

/// Sum over j >= 0 of (W + j h)^{-s} and its s-derivative, via Euler-Maclaurin
/// with no explicit terms.
fn em_tail(s: Complex64, big_w: f64, h: f64) -> (Complex64, Complex64) {
    let x = big_w / h;
    let ln_w = big_w.ln();
    let w_pow = (-s * ln_w).exp();
    let sm1 = s - 1.0;
    let mut bracket = x / sm1 + 0.5;
    let mut dbracket = -x / (sm1 * sm1);

    // (s)_k rising factorial and its derivative
    let mut poch = s;
    let mut dpoch = Complex64::new(1.0, 0.0);
    let mut k = 1usize;
    let inv_x = 1.0 / x;
    let mut xp = inv_x;
    for j in 1..=EM_TERMS {
        let two_j = 2 * j;
        while k < two_j - 1 {
            dpoch = dpoch * (s + k as f64) + poch;
            poch *= s + k as f64;
            k += 1;
        }
        let coef = bernoulli(two_j) / factorial(two_j) * xp;
        bracket += poch * coef;
        dbracket += dpoch * coef;
        xp *= inv_x * inv_x;
    }
    let value = w_pow * bracket;
    let deriv = w_pow * (dbracket - ln_w * bracket);
    (value, deriv)
}

/// Plain partial sum when Re s is large enough that a short one suffices.
fn direct_sum(coeffs: &[f64], s: Complex64) -> Option<SeriesEval> {
    const MAX_TERMS: f64 = 4096.0;
    let sigma = s.re;
    if sigma < 3.0 {
        return None;
    }
    let cmax = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    // tail after N terms <= cmax N^{1-sigma} / (sigma - 1)
    let n = (cmax * 1e17 / (sigma - 1.0)).ln() / (sigma - 1.0);
    let n = n.exp().ceil().max(2.0);
    if n > MAX_TERMS {
        return None;
    }
    let n = n as usize;
    let p = coeffs.len();
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for k in (1..=n).rev() {
        let c = coeffs[k % p];
        if c == 0.0 {
            continue;
        }
        let ln_k = (k as f64).ln();
        let term = (-s * ln_k).exp() * c;
        value += term;
        deriv -= term * ln_k;
    }
    let nf = n as f64;
    let tail = cmax * nf.powf(1.0 - sigma) / (sigma - 1.0);
    let err = tail * (1.0 + nf.ln() + 1.0 / (sigma - 1.0)) + 4.0 * f64::EPSILON * value.norm();
    Some(SeriesEval { value, deriv, err })
}

/// Sum over n >= 1 of c(n) n^{-s} where c(n) = coeffs[n mod p], and its
/// derivative in s. Requires Re s > 1 or a zero-sum period.
pub fn periodic_dirichlet(coeffs: &[f64], s: Complex64) -> SeriesEval {
    let p = coeffs.len();
    assert!(p > 0, "empty coefficient period");
    if let Some(e) = direct_sum(coeffs, s) {
        return e;
    }
    let w = periods_needed(s, p);
    let n0 = w * p;
    let mut value = Complex64::new(0.0, 0.0);
    let mut deriv = Complex64::new(0.0, 0.0);
    for n in 1..n0 {
        let c = coeffs[n % p];
        if c == 0.0 {
            continue;
        }
        let ln_n = (n as f64).ln();
        let term = (-s * ln_n).exp() * c;
        value += term;
        deriv -= term * ln_n;
    }
    for big_w in n0..n0 + p {
        let c = coeffs[big_w % p];
        if c == 0.0 {
            continue;
        }
        let (v, d) = em_tail(s, big_w as f64, p as f64);
        value += v * c;
        deriv += d * c;
    }
    let err = log_tail_estimate(s, w as f64, p).exp() + n0 as f64 * 1e-16 * (value.norm() + 1.0);
    SeriesEval { value, deriv, err }
}

/// Value and s-derivative at s = 1 of a periodic series whose coefficients
/// sum to zero over a period. Returns (value, derivative, error estimate).
pub fn periodic_dirichlet_at_one(coeffs: &[f64]) -> (f64, f64, f64) {
    let p = coeffs.len();
    let period_sum: f64 = coeffs.iter().sum();
    assert!(
        period_sum.abs() < 1e-9,
        "series has a pole at s = 1 (period sum {period_sum})"
    );
    let h = p as f64;
    let w = 24usize;
    let n0 = w * p;
    let mut value = 0.0;
    let mut deriv = 0.0;
    for n in 1..n0 {
        let c = coeffs[n % p];
        if c == 0.0 {
            continue;
        }
        let ln_n = (n as f64).ln();
        value += c / n as f64;
        deriv -= c * ln_n / n as f64;
    }
    for big_w in n0..n0 + p {
        let c = coeffs[big_w % p];
        if c == 0.0 {
            continue;
        }
        let bw = big_w as f64;
        let ln_w = bw.ln();
        let x = bw / h;
        // regular part of W^{1-s}/(h(s-1)): -ln W / h, derivative (ln W)^2 / (2h)
        let mut b = 0.5;
        let mut db = 0.0;
        let mut xp = 1.0 / x;
        for j in 1..=EM_TERMS {
            let two_j = 2 * j;
            let coef = bernoulli(two_j) / two_j as f64 * xp;
            b += coef;
            db += coef * harmonic((two_j - 1) as u64);
            xp /= x * x;
        }
        value += c * (-ln_w / h + b / bw);
        deriv += c * (ln_w * ln_w / (2.0 * h) + (db - ln_w * b) / bw);
    }
    let err = n0 as f64 * 1e-16 * (1.0 + value.abs() + deriv.abs());
    (value, deriv, err)
}

/// Riemann zeta as a periodic series with period 1.
pub fn zeta(s: Complex64) -> SeriesEval {
    periodic_dirichlet(&[1.0], s)
}
