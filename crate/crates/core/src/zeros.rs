//! Zeros of zeta_K = zeta * L(s, chi) on the critical line: Hardy-type real
//! rotations of each factor, sign-change isolation, derivatives at the zeros,
//! count diagnostics and a CSV zero-list format.

use std::f64::consts::PI;
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lvalues::character_coeffs;
use crate::quadfield::{Character, QuadField};
use crate::special::{ln_gamma, periodic_dirichlet, SeriesEval};

pub const DEFAULT_GRID_STEP: f64 = 0.05;
pub const FALLBACK_GRID_STEP: f64 = 0.025;
/// Bisection stops once the bracket half-width is below this.
pub const REFINE_TOL: f64 = 1e-10;
/// Zeros closer than this are treated as a multiplicity violation.
pub const COLLISION_TOL: f64 = 1e-6;
/// Largest Euler-Maclaurin error accepted on the critical line.
pub const MAX_EVAL_ERR: f64 = 1e-9;
pub const MAX_HEIGHT: f64 = 1e4;
pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Component {
    Zeta,
    Chi,
}

impl Component {
    pub fn as_str(self) -> &'static str {
        match self {
            Component::Zeta => "zeta",
            Component::Chi => "chi",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Ingested,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Computed => "computed",
            Provenance::Ingested => "ingested",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRecord {
    pub component: Component,
    pub gamma: f64,
    pub zk_deriv_abs: f64,
    pub refine_err: f64,
    /// zeta_K'(1/2 + i gamma); absent for sets ingested without phase columns.
    #[serde(skip)]
    pub zk_deriv: Option<Complex64>,
}

impl ZeroRecord {
    pub fn rho(&self) -> Complex64 {
        Complex64::new(0.5, self.gamma)
    }

    /// rho * zeta_K'(rho), or a phase error if only the modulus is known.
    pub fn rho_deriv(&self) -> Result<Complex64> {
        self.zk_deriv.map(|d| self.rho() * d).ok_or(Error::PhaseMissing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroSet {
    pub field: QuadField,
    pub t_max: f64,
    pub records: Vec<ZeroRecord>,
    pub provenance: Provenance,
}

impl ZeroSet {
    /// Records with gamma <= t.
    pub fn up_to(&self, t: f64) -> &[ZeroRecord] {
        let end = self.records.partition_point(|r| r.gamma <= t);
        &self.records[..end]
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Errors on collisions or vanishing derivatives.
    pub fn check_simple(&self) -> Result<()> {
        for w in self.records.windows(2) {
            if w[1].gamma - w[0].gamma < COLLISION_TOL {
                return Err(Error::Multiplicity {
                    first: w[0].gamma,
                    second: w[1].gamma,
                    tolerance: COLLISION_TOL,
                });
            }
        }
        if let Some(r) = self.records.iter().find(|r| r.zk_deriv_abs <= 1e-12) {
            return Err(Error::Multiplicity {
                first: r.gamma,
                second: r.gamma,
                tolerance: COLLISION_TOL,
            });
        }
        Ok(())
    }
}

/// One factor of zeta_K restricted to the critical line, with the phase that
/// makes it real. zeta is the case q = 1, a = 0.
#[derive(Debug, Clone)]
pub struct CriticalLine {
    coeffs: Vec<f64>,
    q: f64,
    a: f64,
}

impl CriticalLine {
    pub fn zeta() -> Self {
        Self { coeffs: vec![1.0], q: 1.0, a: 0.0 }
    }

    pub fn dirichlet(chi: &Character) -> Self {
        Self {
            coeffs: character_coeffs(chi),
            q: chi.modulus() as f64,
            a: f64::from(chi.parity()),
        }
    }

    pub fn for_component(field: &QuadField, c: Component) -> Self {
        match c {
            Component::Zeta => Self::zeta(),
            Component::Chi => Self::dirichlet(&field.character()),
        }
    }

    pub fn eval(&self, s: Complex64) -> SeriesEval {
        periodic_dirichlet(&self.coeffs, s)
    }

    /// theta(t) = Im log Gamma((1/2 + a + it)/2) + (t/2) log(q/pi).
    pub fn theta(&self, t: f64) -> f64 {
        ln_gamma(Complex64::new((0.5 + self.a) / 2.0, t / 2.0)).im + 0.5 * t * (self.q / PI).ln()
    }

    pub fn hardy_z(&self, t: f64) -> Result<f64> {
        if !(0.0..=MAX_HEIGHT).contains(&t) {
            return Err(Error::domain(format!("t = {t} outside [0, {MAX_HEIGHT}]")));
        }
        let e = self.eval(Complex64::new(0.5, t));
        if e.err > MAX_EVAL_ERR {
            return Err(Error::Accuracy(format!(
                "series remainder {:e} at t = {t} exceeds {MAX_EVAL_ERR:e}",
                e.err
            )));
        }
        Ok((Complex64::from_polar(1.0, self.theta(t)) * e.value).re)
    }
}

/// Real rotation of zeta(1/2 + it).
pub fn hardy_z_zeta(t: f64) -> Result<f64> {
    CriticalLine::zeta().hardy_z(t)
}

/// Real rotation of L(1/2 + it, chi).
pub fn hardy_z_dirichlet(chi: &Character, t: f64) -> Result<f64> {
    CriticalLine::dirichlet(chi).hardy_z(t)
}

/// Sign changes of Z on the grid over (0, t_max], refined by bisection.
/// Returns (gamma, half-width of the final bracket).
fn isolate(line: &CriticalLine, t_max: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    let n = (t_max / step).ceil() as usize;
    let grid: Vec<f64> = (0..=n).map(|i| (i as f64 * step).min(t_max)).collect();
    let values = grid
        .par_iter()
        .map(|&t| line.hardy_z(t))
        .collect::<Result<Vec<f64>>>()?;
    let brackets: Vec<(f64, f64, f64)> = (0..n)
        .filter(|&i| grid[i + 1] > grid[i] && values[i] != 0.0 && values[i] * values[i + 1] <= 0.0)
        .map(|i| (grid[i], grid[i + 1], values[i]))
        .collect();
    brackets
        .par_iter()
        .map(|&(mut lo, mut hi, mut f_lo)| {
            while 0.5 * (hi - lo) > REFINE_TOL {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let f_mid = line.hardy_z(mid)?;
                if f_mid == 0.0 {
                    return Ok((mid, 0.0));
                }
                if (f_mid < 0.0) == (f_lo < 0.0) {
                    lo = mid;
                    f_lo = f_mid;
                } else {
                    hi = mid;
                }
            }
            Ok((0.5 * (lo + hi), 0.5 * (hi - lo)))
        })
        .collect()
}

/// zeta_K'(1/2 + i gamma) when `vanishing` is zero there: F'(rho) G(rho).
pub fn zk_deriv_at(field: &QuadField, vanishing: Component, gamma: f64) -> Complex64 {
    let rho = Complex64::new(0.5, gamma);
    let other = match vanishing {
        Component::Zeta => Component::Chi,
        Component::Chi => Component::Zeta,
    };
    let f = CriticalLine::for_component(field, vanishing).eval(rho);
    let g = CriticalLine::for_component(field, other).eval(rho);
    f.deriv * g.value
}

/// zeta_K'(1/2 + i gamma) by a vertical central difference with step h and
/// one Richardson extrapolation, for cross-checking.
pub fn zk_deriv_difference(field: &QuadField, gamma: f64, h: f64) -> Complex64 {
    let z = CriticalLine::zeta();
    let l = CriticalLine::dirichlet(&field.character());
    let zk = |t: f64| {
        let s = Complex64::new(0.5, t);
        z.eval(s).value * l.eval(s).value
    };
    let i = Complex64::new(0.0, 1.0);
    let diff = |h: f64| (zk(gamma + h) - zk(gamma - h)) / (2.0 * h * i);
    (4.0 * diff(h / 2.0) - diff(h)) / 3.0
}

fn find_zeros_with_step(field: &QuadField, t_max: f64, step: f64) -> Result<ZeroSet> {
    let mut records = Vec::new();
    for c in [Component::Zeta, Component::Chi] {
        let line = CriticalLine::for_component(field, c);
        let found = isolate(&line, t_max, step)?;
        let recs: Vec<ZeroRecord> = found
            .par_iter()
            .map(|&(gamma, err)| {
                let d = zk_deriv_at(field, c, gamma);
                ZeroRecord {
                    component: c,
                    gamma,
                    zk_deriv_abs: d.norm(),
                    refine_err: err,
                    zk_deriv: Some(d),
                }
            })
            .collect();
        records.extend(recs);
    }
    records.sort_by(|a, b| a.gamma.total_cmp(&b.gamma));
    let set = ZeroSet {
        field: *field,
        t_max,
        records,
        provenance: Provenance::Computed,
    };
    set.check_simple()?;
    Ok(set)
}

/// All zeros 0 < gamma <= t_max of both factors. A finer grid is used when
/// the count strays from the main term by more than 2%.
pub fn find_zeros(field: &QuadField, t_max: f64) -> Result<ZeroSet> {
    if !(t_max > 0.0) || t_max > 1e3 {
        return Err(Error::domain(format!("height {t_max} outside (0, 1000]")));
    }
    let set = find_zeros_with_step(field, t_max, DEFAULT_GRID_STEP)?;
    let main = count_main_term(field, t_max);
    let dev = (set.len() as f64 - main).abs() / main.max(1.0);
    if dev > 0.02 {
        let finer = find_zeros_with_step(field, t_max, FALLBACK_GRID_STEP)?;
        if finer.len() > set.len() {
            return Ok(finer);
        }
    }
    Ok(set)
}

/// Smooth main term (T / 2pi) log(D T^2 / (2 pi e)^2) of the number of zeros
/// of zeta_K with 0 < gamma <= T.
pub fn count_main_term(field: &QuadField, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    let d = field.abs_disc() as f64;
    let two_pi_e = 2.0 * PI * std::f64::consts::E;
    (t / (2.0 * PI) * (d * t * t / (two_pi_e * two_pi_e)).ln()).max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountReport {
    pub total: usize,
    pub main_term: f64,
    pub relative_deviation: f64,
    pub max_unit_window: usize,
    /// Start of a window attaining the maximum.
    pub max_window_start: f64,
    /// Smallest c0 with count([n, n+1)) <= c0 (log D + 2 log(n + 5)) for all n.
    pub c0_min: f64,
}

pub fn count_sanity(set: &ZeroSet) -> CountReport {
    let d = set.field.abs_disc() as f64;
    let windows = set.t_max.ceil() as usize + 1;
    let mut counts = vec![0usize; windows];
    for r in &set.records {
        counts[(r.gamma.floor() as usize).min(windows - 1)] += 1;
    }
    let (mut max_w, mut max_start, mut c0) = (0, 0.0, 0.0f64);
    for (n, &c) in counts.iter().enumerate() {
        if c > max_w {
            max_w = c;
            max_start = n as f64;
        }
        c0 = c0.max(c as f64 / (d.ln() + 2.0 * (n as f64 + 5.0).ln()));
    }
    let main = count_main_term(&set.field, set.t_max);
    CountReport {
        total: set.len(),
        main_term: main,
        relative_deviation: if main > 0.0 {
            (set.len() as f64 - main).abs() / main
        } else {
            0.0
        },
        max_unit_window: max_w,
        max_window_start: max_start,
        c0_min: c0,
    }
}

/// Sum of |zeta_K'(rho)|^{-2} over recorded zeros with 0 < gamma <= t.
pub fn j_minus_one_partial(set: &ZeroSet, t: f64) -> Result<f64> {
    if t > set.t_max {
        return Err(Error::domain(format!("T = {t} exceeds the zero set height {}", set.t_max)));
    }
    set.check_simple()?;
    Ok(set.up_to(t).iter().map(|r| r.zk_deriv_abs.powi(-2)).sum())
}

fn parse_header(line: &str) -> Result<(i64, f64)> {
    let body = line
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse { line: 1, message: "missing '# delta=.. T=..' line".into() })?;
    let (mut delta, mut t, mut version) = (None, None, None);
    for kv in body.split_whitespace() {
        let Some((k, v)) = kv.split_once('=') else { continue };
        let bad = |what: &str| Error::Parse { line: 1, message: format!("bad {what} '{v}'") };
        match k {
            "delta" => delta = Some(v.parse::<i64>().map_err(|_| bad("delta"))?),
            "T" => t = Some(v.parse::<f64>().map_err(|_| bad("T"))?),
            "version" => version = Some(v.to_string()),
            _ => {}
        }
    }
    if let Some(v) = version {
        if v.parse::<u32>().ok() != Some(FORMAT_VERSION) {
            return Err(Error::Version { found: v, expected: FORMAT_VERSION });
        }
    }
    match (delta, t) {
        (Some(d), Some(t)) => Ok((d, t)),
        _ => Err(Error::Parse { line: 1, message: "header needs delta= and T=".into() }),
    }
}

pub fn write_zeros<W: Write>(set: &ZeroSet, out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::io("<zero list>", e);
    let mut out = out;
    writeln!(
        out,
        "# delta={} T={} provenance={} version={FORMAT_VERSION}",
        set.field.delta(),
        set.t_max,
        set.provenance.as_str()
    )
    .map_err(io)?;
    let with_phase = set.records.iter().all(|r| r.zk_deriv.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["component", "gamma", "zk_deriv_abs", "refine_err"];
    if with_phase {
        header.extend(["zk_deriv_re", "zk_deriv_im"]);
    }
    let csv_err = |e: csv::Error| Error::io("<zero list>", e.into());
    w.write_record(&header).map_err(csv_err)?;
    for r in &set.records {
        let mut row = vec![
            r.component.as_str().to_string(),
            r.gamma.to_string(),
            r.zk_deriv_abs.to_string(),
            r.refine_err.to_string(),
        ];
        if let (true, Some(d)) = (with_phase, r.zk_deriv) {
            row.push(d.re.to_string());
            row.push(d.im.to_string());
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

pub fn read_zeros<R: Read>(input: R) -> Result<ZeroSet> {
    let mut input = BufReader::new(input);
    let mut first = String::new();
    input
        .read_line(&mut first)
        .map_err(|e| Error::io("<zero list>", e))?;
    let (delta, t_max) = parse_header(first.trim_end())?;
    let field = QuadField::new(delta).map_err(|e| Error::Parse { line: 1, message: e.to_string() })?;
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Parse { line: 2, message: e.to_string() })?
        .clone();
    let names: Vec<&str> = headers.iter().collect();
    let with_phase = match names.as_slice() {
        ["component", "gamma", "zk_deriv_abs", "refine_err"] => false,
        ["component", "gamma", "zk_deriv_abs", "refine_err", "zk_deriv_re", "zk_deriv_im"] => true,
        _ => {
            return Err(Error::Parse {
                line: 2,
                message: format!("unexpected columns {names:?}"),
            })
        }
    };
    let mut records = Vec::new();
    for (i, row) in rdr.records().enumerate() {
        let line = i as u64 + 3;
        let row = row.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        let num = |j: usize, name: &str| -> Result<f64> {
            row.get(j)
                .and_then(|v| v.trim().parse::<f64>().ok())
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    line,
                    message: format!("bad {name} '{}'", row.get(j).unwrap_or("")),
                })
        };
        let component = match row.get(0).map(str::trim) {
            Some("zeta") => Component::Zeta,
            Some("chi") => Component::Chi,
            other => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown component {other:?}"),
                })
            }
        };
        let gamma = num(1, "gamma")?;
        if gamma <= 0.0 {
            return Err(Error::Parse { line, message: format!("gamma {gamma} must be positive") });
        }
        if records.last().is_some_and(|r: &ZeroRecord| r.gamma >= gamma) {
            return Err(Error::Parse { line, message: "gamma values must increase".into() });
        }
        let zk_deriv = if with_phase {
            Some(Complex64::new(num(4, "zk_deriv_re")?, num(5, "zk_deriv_im")?))
        } else {
            None
        };
        records.push(ZeroRecord {
            component,
            gamma,
            zk_deriv_abs: num(2, "zk_deriv_abs")?,
            refine_err: num(3, "refine_err")?,
            zk_deriv,
        });
    }
    Ok(ZeroSet {
        field,
        t_max,
        records,
        provenance: Provenance::Ingested,
    })
}

pub fn save_zeros(set: &ZeroSet, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_zeros(set, std::io::BufWriter::new(f)).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

pub fn load_zeros(path: &Path) -> Result<ZeroSet> {
    let f = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_zeros(f).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}
