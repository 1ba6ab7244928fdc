use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use nfmertens::distribution::{beta_series, sample_phi, weak_mertens_integral};
use nfmertens::mstar::{
    counterexample_search, round_decimals, table_scan, truncate_decimals, DEFAULT_K_MAX,
};
use nfmertens::oscillation::{h_star, h_star_scan};
use nfmertens::zeros::{count_sanity, find_zeros, load_zeros, write_zeros, ZeroSet};
use nfmertens::{CoeffTables, Error, FieldKind, QuadField};

const EXIT_NOT_FOUND: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_ACCURACY: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Parser)]
#[command(name = "nfmertens", version, about = "Mertens functions over quadratic fields")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "NFMERTENS_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
    Json,
}

#[derive(Args)]
struct Kind {
    #[arg(long, conflicts_with = "real", required_unless_present = "real")]
    imaginary: bool,
    #[arg(long)]
    real: bool,
}

impl Kind {
    fn get(&self) -> FieldKind {
        if self.imaginary {
            FieldKind::Imaginary
        } else {
            FieldKind::Real
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// M_K(x), or the table of M_K(n+) for n <= n-max.
    Mertens {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long, required_unless_present = "n_max")]
        x: Option<f64>,
        /// Full weight at integer x.
        #[arg(long)]
        right_limit: bool,
        #[arg(long, conflicts_with = "x")]
        n_max: Option<u64>,
    },
    /// M_K*(x) for all fundamental discriminants up to dmax.
    Tables {
        #[command(flatten)]
        kind: Kind,
        #[arg(long)]
        dmax: u64,
        #[arg(long, default_value_t = 1.0)]
        x: f64,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: u32,
        /// Four decimals, as printed in the published tables.
        #[arg(long)]
        paper_parity: bool,
    },
    /// Smallest n with M_K(n+) + M_K*(n) > sqrt(n).
    Counterexamples {
        #[command(flatten)]
        kind: Kind,
        /// |delta| values to search; defaults to every field up to --dmax.
        #[arg(long = "d", num_args = 1..)]
        d: Vec<u64>,
        #[arg(long, default_value_t = 100)]
        dmax: u64,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
        #[arg(long)]
        paper_parity: bool,
        /// Exit 1 when no field has a counterexample.
        #[arg(long)]
        exit_status: bool,
    },
    /// Zeros of zeta_K with 0 < gamma <= T.
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long = "T")]
        t_max: f64,
    },
    /// Jurkat-Peyerimhoff means h*_{K,T}(t) at a point or over a range.
    Hstar {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long = "T")]
        t_max: f64,
        #[arg(long, allow_negative_numbers = true, required_unless_present = "from")]
        t: Option<f64>,
        #[arg(long, allow_negative_numbers = true, requires = "to", conflicts_with = "t")]
        from: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        to: Option<f64>,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Read zeros from a zero-list file instead of computing them.
        #[arg(long)]
        zeros: Option<PathBuf>,
        /// Exit 0 if |h*| > 1 somewhere, 1 otherwise.
        #[arg(long)]
        exit_status: bool,
    },
    /// Histogram of phi_K(y) = e^{-y/2} M_K(e^y) over [y0, Y].
    Dist {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long = "Y", default_value_t = 12.0)]
        y_max: f64,
        #[arg(long, default_value_t = 1.0)]
        y0: f64,
        #[arg(long, default_value_t = 1e-3)]
        step: f64,
        #[arg(long, default_value_t = 100)]
        bins: usize,
        /// Also report beta from zeros up to this height.
        #[arg(long = "beta-T")]
        beta_t: Option<f64>,
    },
}

enum Failure {
    Lib(Error),
    NotFound,
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn field(delta: i64) -> Result<QuadField, Failure> {
    Ok(QuadField::new(delta)?)
}

fn num(v: f64, places: Option<(u32, bool)>) -> String {
    match places {
        None => v.to_string(),
        Some((p, true)) => round_decimals(v, p),
        Some((p, false)) => truncate_decimals(v, p),
    }
}

/// Writes rows in the selected format.
fn emit(out: &mut dyn Write, format: Format, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(header)?;
            for r in rows {
                w.write_record(r)?;
            }
            w.flush()?;
        }
        Format::Text => {
            let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
            for r in rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for r in rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let m: serde_json::Map<String, serde_json::Value> = header
                        .iter()
                        .zip(r)
                        .map(|(h, c)| {
                            let v = if let Ok(i) = c.parse::<i64>() {
                                json!(i)
                            } else {
                                c.parse::<f64>()
                                    .ok()
                                    .and_then(serde_json::Number::from_f64)
                                    .map(serde_json::Value::Number)
                                    .unwrap_or_else(|| json!(c))
                            };
                            (h.to_string(), v)
                        })
                        .collect();
                    serde_json::Value::Object(m)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &objs).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn zero_set(delta: i64, t_max: f64, path: Option<&PathBuf>) -> Result<ZeroSet, Failure> {
    match path {
        Some(p) => {
            let zs = load_zeros(p)?;
            if zs.field.delta() != delta {
                return Err(Error::Domain(format!(
                    "zero list is for delta = {}, not {delta}",
                    zs.field.delta()
                ))
                .into());
            }
            Ok(zs)
        }
        None => Ok(find_zeros(&field(delta)?, t_max)?),
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Mertens { delta, x, right_limit, n_max } => {
            let k = field(*delta)?;
            if let Some(n_max) = n_max {
                let t = CoeffTables::build(k, *n_max as usize)?;
                let rows: Vec<Vec<String>> = (1..=*n_max)
                    .map(|n| Ok(vec![n.to_string(), t.mertens_right_limit(n)?.to_string()]))
                    .collect::<Result<_, Error>>()?;
                emit(out, fmt, &["n", "mertens"], &rows)
            } else {
                let x = x.expect("clap enforces x or n-max");
                if !(x > 0.0) || !x.is_finite() {
                    return Err(Error::Domain(format!("x = {x} must be positive")).into());
                }
                let t = CoeffTables::build(k, x.floor().max(1.0) as usize)?;
                let v = if *right_limit {
                    t.mertens_right_limit(x.floor() as u64)? as f64
                } else {
                    t.mertens(x)?
                };
                emit(out, fmt, &["delta", "x", "mertens"], &[vec![delta.to_string(), x.to_string(), v.to_string()]])
            }
        }
        Command::Tables { kind, dmax, x, k_max, paper_parity } => {
            let rows = table_scan(kind.get(), *dmax, *x, *k_max)?;
            let places = paper_parity.then_some((4, true));
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|r| vec![r.d.to_string(), num(r.mstar, places)])
                .collect();
            emit(out, fmt, &["D", "mstar"], &rows)
        }
        Command::Counterexamples { kind, d, dmax, n_max, paper_parity, exit_status } => {
            let kind = kind.get();
            let fields: Vec<QuadField> = if d.is_empty() {
                nfmertens::quadfield::fundamental_discriminants(kind, 3, *dmax)
            } else {
                d.iter()
                    .map(|&d| QuadField::from_abs(d, kind))
                    .collect::<Result<_, _>>()?
            };
            let places = paper_parity.then_some((4, false));
            let mut rows = Vec::new();
            for k in fields {
                let t = CoeffTables::build(k, *n_max as usize)?;
                if let Some(c) = counterexample_search(&t, *n_max, DEFAULT_K_MAX)? {
                    rows.push(vec![k.abs_disc().to_string(), c.n.to_string(), num(c.ratio, places)]);
                }
            }
            emit(out, fmt, &["D", "n", "ratio"], &rows)?;
            if *exit_status && rows.is_empty() {
                return Err(Failure::NotFound);
            }
            Ok(())
        }
        Command::Zeros { delta, t_max } => {
            let zs = find_zeros(&field(*delta)?, *t_max)?;
            let rep = count_sanity(&zs);
            eprintln!(
                "{} zeros; main term {:.2}, relative deviation {:.4}; max {} per unit window",
                rep.total, rep.main_term, rep.relative_deviation, rep.max_unit_window
            );
            match fmt {
                Format::Csv => write_zeros(&zs, &mut *out)?,
                _ => {
                    let rows: Vec<Vec<String>> = zs
                        .records
                        .iter()
                        .map(|r| {
                            vec![
                                r.component.to_string(),
                                r.gamma.to_string(),
                                r.zk_deriv_abs.to_string(),
                                r.refine_err.to_string(),
                            ]
                        })
                        .collect();
                    emit(out, fmt, &["component", "gamma", "zk_deriv_abs", "refine_err"], &rows)?;
                }
            }
            Ok(())
        }
        Command::Hstar { delta, t_max, t, from, to, step, zeros, exit_status } => {
            let zs = zero_set(*delta, *t_max, zeros.as_ref())?;
            let exceed = if let Some(t) = t {
                let v = h_star(&zs, *t_max, *t)?;
                emit(out, fmt, &["t", "h_star"], &[vec![t.to_string(), v.to_string()]])?;
                v.abs() > 1.0
            } else {
                let (lo, hi) = (from.expect("clap"), to.expect("clap"));
                let rep = h_star_scan(&zs, *t_max, lo, hi, *step)?;
                let rows: Vec<Vec<String>> = rep
                    .samples
                    .iter()
                    .map(|(t, v)| vec![t.to_string(), v.to_string()])
                    .collect();
                emit(out, fmt, &["t", "h_star"], &rows)?;
                eprintln!(
                    "min {} at {}, max {} at {}",
                    rep.min, rep.argmin, rep.max, rep.argmax
                );
                rep.exceedance
            };
            if *exit_status && !exceed {
                return Err(Failure::NotFound);
            }
            Ok(())
        }
        Command::Dist { delta, y_max, y0, step, bins, beta_t } => {
            let k = field(*delta)?;
            if !y_max.is_finite() || *y_max > 30.0 {
                return Err(Error::Domain(format!("Y = {y_max} too large")).into());
            }
            let t = CoeffTables::build(k, y_max.exp().ceil() as usize)?;
            let d = sample_phi(&t, *y0, *y_max, *step)?;
            let h = d.histogram(*bins);
            let rows: Vec<Vec<String>> = h
                .masses
                .iter()
                .enumerate()
                .map(|(i, m)| vec![h.edges[i].to_string(), h.edges[i + 1].to_string(), m.to_string()])
                .collect();
            emit(out, fmt, &["lo", "hi", "mass"], &rows)?;
            let weak = weak_mertens_integral(&t, *y_max)? / y_max;
            eprintln!(
                "{} samples, mean {:.4}, max |phi| {:.4}, mass in [-1,1] {:.4}, weak Mertens integral / Y {:.4}",
                d.len(),
                d.mean(),
                d.c_emp,
                d.mass_in(-1.0, 1.0),
                weak
            );
            if let Some(bt) = beta_t {
                let zs = find_zeros(&k, *bt)?;
                eprintln!("beta(T={bt}) {:.4}", beta_series(&zs, *bt)?);
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(EXIT_VALIDATION);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool already initialised");
    }
    let result = match &cli.out {
        Some(p) => match File::create(p) {
            Ok(f) => {
                let mut w = BufWriter::new(f);
                run(&cli, &mut w).and_then(|()| w.flush().map_err(Failure::from))
            }
            Err(e) => Err(Failure::Io(e)),
        },
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            run(&cli, &mut lock).and_then(|()| lock.flush().map_err(Failure::from))
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::NotFound) => ExitCode::from(EXIT_NOT_FOUND),
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_IO)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Accuracy(_) | Error::Multiplicity { .. } => EXIT_ACCURACY,
                Error::Io { .. } | Error::Parse { .. } | Error::Corrupt(_) | Error::Version { .. } => EXIT_IO,
                Error::Domain(_) | Error::Resource { .. } | Error::PhaseMissing => EXIT_VALIDATION,
            })
        }
    }
}
