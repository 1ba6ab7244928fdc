//! Dirichlet coefficients of zeta_K, 1/zeta_K and -zeta_K'/zeta_K for a
//! quadratic field, and the Mertens function built from them.
//!
//! All arrays are indexed by n directly; slot 0 is unused and holds zero.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::quadfield::{mobius_sieve, primes_up_to, QuadField};

/// Default allocation cap for [`CoeffTables::build`], in bytes.
pub const DEFAULT_MEMORY_CAP: u64 = 8 << 30;

const BYTES_PER_ENTRY: u64 = 4 + 4 + 8 + 8 + 2;

const DUMP_MAGIC: &[u8; 4] = b"MKCT";
const DUMP_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTables {
    field: QuadField,
    limit: usize,
    /// Number of ideals of norm n.
    a: Vec<u32>,
    /// Coefficients of 1/zeta_K.
    mu_k: Vec<i32>,
    /// Coefficients of -zeta_K'/zeta_K (non-negative).
    lambda_k: Vec<f64>,
    /// prefix[n] = sum of mu_k[m] for m <= n.
    prefix: Vec<i64>,
}

impl CoeffTables {
    pub fn build(field: QuadField, limit: usize) -> Result<Self> {
        Self::build_with_cap(field, limit, DEFAULT_MEMORY_CAP)
    }

    pub fn build_with_cap(field: QuadField, limit: usize, cap_bytes: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::domain("sieve bound must be at least 1"));
        }
        let requested = BYTES_PER_ENTRY.saturating_mul(limit as u64 + 1);
        if requested > cap_bytes {
            return Err(Error::Resource {
                what: "coefficient tables",
                requested,
                cap: cap_bytes,
            });
        }
        let chi = field.character();
        let n = limit;

        // a = 1 * chi
        let mut a = vec![0i32; n + 1];
        for d in 1..=n {
            let c = i32::from(chi.value_u(d as u64));
            if c == 0 {
                continue;
            }
            for m in (d..=n).step_by(d) {
                a[m] += c;
            }
        }
        let a: Vec<u32> = a
            .into_iter()
            .map(|v| u32::try_from(v).expect("ideal counts are non-negative"))
            .collect();

        // mu_k = mu * (mu chi)
        let mu = mobius_sieve(n);
        let twisted: Vec<(usize, i32)> = (1..=n)
            .filter_map(|e| {
                let v = i32::from(mu[e]) * i32::from(chi.value_u(e as u64));
                (v != 0).then_some((e, v))
            })
            .collect();
        let mut mu_k = vec![0i32; n + 1];
        for d in 1..=n {
            let md = i32::from(mu[d]);
            if md == 0 {
                continue;
            }
            let max_e = n / d;
            for &(e, v) in &twisted {
                if e > max_e {
                    break;
                }
                mu_k[d * e] += md * v;
            }
        }

        // Euler factor at each prime decides Lambda^K on its powers.
        let mut lambda_k = vec![0.0f64; n + 1];
        for p in primes_up_to(n) {
            let log_p = (p as f64).ln();
            let c = chi.value_u(p as u64);
            let mut pk = p;
            let mut k = 1u32;
            loop {
                lambda_k[pk] = match c {
                    1 => 2.0 * log_p,
                    -1 if k % 2 == 0 => 2.0 * log_p,
                    -1 => 0.0,
                    _ => log_p,
                };
                match pk.checked_mul(p) {
                    Some(next) if next <= n => {
                        pk = next;
                        k += 1;
                    }
                    _ => break,
                }
            }
        }

        let mut prefix = vec![0i64; n + 1];
        for m in 1..=n {
            prefix[m] = prefix[m - 1] + i64::from(mu_k[m]);
        }

        Ok(Self {
            field,
            limit,
            a,
            mu_k,
            lambda_k,
            prefix,
        })
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    /// Sieve bound N.
    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn ideal_counts(&self) -> &[u32] {
        &self.a
    }

    pub fn mu_k(&self) -> &[i32] {
        &self.mu_k
    }

    pub fn lambda_k(&self) -> &[f64] {
        &self.lambda_k
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// M_K(x) with half weight on mu_K(x) when x is an integer.
    pub fn mertens(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) || x > self.limit as f64 {
            return Err(Error::domain(format!(
                "x = {x} outside (0, {}]",
                self.limit
            )));
        }
        let floor = x.floor();
        let n = floor as usize;
        if floor == x {
            Ok(self.prefix[n - 1] as f64 + 0.5 * f64::from(self.mu_k[n]))
        } else {
            Ok(self.prefix[n] as f64)
        }
    }

    /// M_K(n+): the sum over norms up to and including n.
    pub fn mertens_right_limit(&self, n: u64) -> Result<i64> {
        if n == 0 || n > self.limit as u64 {
            return Err(Error::domain(format!(
                "n = {n} outside [1, {}]",
                self.limit
            )));
        }
        Ok(self.prefix[n as usize])
    }

    /// Largest a_n / d(n) and |mu_K(n)| / a_n over the table.
    pub fn growth_report(&self) -> GrowthReport {
        let d = crate::quadfield::divisor_counts(self.limit);
        let mut report = GrowthReport {
            max_a_over_divisors: 0.0,
            argmax_a_over_divisors: 1,
            max_mu_over_a: 0.0,
            argmax_mu_over_a: 1,
            mu_without_ideals: 0,
        };
        for n in 1..=self.limit {
            let r = f64::from(self.a[n]) / f64::from(d[n]);
            if r > report.max_a_over_divisors {
                report.max_a_over_divisors = r;
                report.argmax_a_over_divisors = n as u64;
            }
            let m = self.mu_k[n].unsigned_abs();
            if self.a[n] == 0 {
                if m != 0 {
                    report.mu_without_ideals += 1;
                }
                continue;
            }
            let r = f64::from(m) / f64::from(self.a[n]);
            if r > report.max_mu_over_a {
                report.max_mu_over_a = r;
                report.argmax_mu_over_a = n as u64;
            }
        }
        report
    }

    pub fn dump(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        self.write_to(&mut w).map_err(|e| Error::io(path, e))?;
        w.flush().map_err(|e| Error::io(path, e))
    }

    /// Little-endian dump: magic, version, delta, N, then a, mu_K, Lambda^K,
    /// prefix for n = 1..=N.
    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        w.write_all(DUMP_MAGIC)?;
        w.write_all(&DUMP_VERSION.to_le_bytes())?;
        w.write_all(&self.field.delta().to_le_bytes())?;
        w.write_all(&(self.limit as u64).to_le_bytes())?;
        for v in &self.a[1..] {
            w.write_all(&v.to_le_bytes())?;
        }
        for v in &self.mu_k[1..] {
            w.write_all(&v.to_le_bytes())?;
        }
        for v in &self.lambda_k[1..] {
            w.write_all(&v.to_le_bytes())?;
        }
        for v in &self.prefix[1..] {
            w.write_all(&v.to_le_bytes())?;
        }
        Ok(())
    }

    pub fn restore(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_from(&mut BufReader::new(file))
    }

    pub fn read_from(r: &mut impl Read) -> Result<Self> {
        fn take<const N: usize>(r: &mut impl Read) -> Result<[u8; N]> {
            let mut buf = [0u8; N];
            r.read_exact(&mut buf)
                .map_err(|e| Error::Corrupt(format!("truncated: {e}")))?;
            Ok(buf)
        }
        if &take::<4>(r)? != DUMP_MAGIC {
            return Err(Error::Corrupt("bad magic".into()));
        }
        let version = u32::from_le_bytes(take(r)?);
        if version != DUMP_VERSION {
            return Err(Error::Version {
                found: version.to_string(),
                expected: DUMP_VERSION,
            });
        }
        let field = QuadField::new(i64::from_le_bytes(take(r)?))?;
        let limit = usize::try_from(u64::from_le_bytes(take(r)?))
            .map_err(|_| Error::Corrupt("bound does not fit in memory".into()))?;
        if limit == 0 {
            return Err(Error::Corrupt("empty table".into()));
        }
        let mut a = vec![0u32; limit + 1];
        let mut mu_k = vec![0i32; limit + 1];
        let mut lambda_k = vec![0f64; limit + 1];
        let mut prefix = vec![0i64; limit + 1];
        for v in &mut a[1..] {
            *v = u32::from_le_bytes(take(r)?);
        }
        for v in &mut mu_k[1..] {
            *v = i32::from_le_bytes(take(r)?);
        }
        for v in &mut lambda_k[1..] {
            *v = f64::from_le_bytes(take(r)?);
        }
        for v in &mut prefix[1..] {
            *v = i64::from_le_bytes(take(r)?);
        }
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing).unwrap_or(0) != 0 {
            return Err(Error::Corrupt("trailing bytes".into()));
        }
        Ok(Self {
            field,
            limit,
            a,
            mu_k,
            lambda_k,
            prefix,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthReport {
    pub max_a_over_divisors: f64,
    pub argmax_a_over_divisors: u64,
    pub max_mu_over_a: f64,
    pub argmax_mu_over_a: u64,
    /// Count of n with mu_K(n) != 0 but no ideal of norm n; zero for valid tables.
    pub mu_without_ideals: u64,
}

impl GrowthReport {
    pub fn within_bounds(&self) -> bool {
        self.max_a_over_divisors <= 1.0 && self.max_mu_over_a <= 1.0 && self.mu_without_ideals == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tables(delta: i64, n: usize) -> CoeffTables {
        CoeffTables::build(QuadField::new(delta).unwrap(), n).unwrap()
    }

    #[test]
    fn small_tables_by_hand() {
        let t = tables(-4, 5);
        assert_eq!(&t.ideal_counts()[1..], &[1, 1, 0, 1, 2]);
        assert_eq!(&t.mu_k()[1..], &[1, -1, 0, 0, -2]);
        let t = tables(-3, 7);
        assert_eq!(&t.mu_k()[1..], &[1, 0, -1, -1, 0, 0, -2]);
    }

    #[test]
    fn mertens_conventions() {
        let t = tables(-4, 10);
        assert_eq!(t.mertens(0.5).unwrap(), 0.0);
        assert_eq!(t.mertens(1.0).unwrap(), 0.5);
        let t = tables(-3, 10);
        assert_eq!(t.mertens(7.0).unwrap(), -2.0);
        assert_eq!(t.mertens_right_limit(7).unwrap(), -3);
        assert_eq!(t.mertens_right_limit(1).unwrap(), 1);
        assert!(t.mertens(11.0).is_err());
        assert!(t.mertens(0.0).is_err());
        assert!(t.mertens_right_limit(11).is_err());
        let t = tables(5, 11);
        assert_eq!(t.mertens_right_limit(11).unwrap(), -4);
    }

    #[test]
    fn half_weight_gap() {
        let t = tables(13, 300);
        for n in 1..=300u64 {
            let gap = t.mertens_right_limit(n).unwrap() as f64 - t.mertens(n as f64).unwrap();
            assert_eq!(gap, 0.5 * f64::from(t.mu_k()[n as usize]));
        }
    }

    #[test]
    fn growth_bounds() {
        assert!(tables(-4, 10_000).growth_report().within_bounds());
        assert!(tables(8, 10_000).growth_report().within_bounds());
        let r = tables(-3, 1000).growth_report();
        assert!(r.within_bounds());
        assert_eq!(r.max_a_over_divisors, 1.0);
    }

    #[test]
    fn lambda_is_log_derivative() {
        // zeta_K * (-zeta_K'/zeta_K) = -zeta_K'  <=>  a * Lambda^K = a log n
        for delta in [-3, -4, 5, 8, -164, 229] {
            let t = tables(delta, 2000);
            let (a, lam) = (t.ideal_counts(), t.lambda_k());
            for n in 1..=2000usize {
                let mut conv = 0.0;
                for d in (1..=n).filter(|d| n % d == 0) {
                    conv += f64::from(a[n / d]) * lam[d];
                }
                let expect = f64::from(a[n]) * (n as f64).ln();
                assert!((conv - expect).abs() < 1e-9 * (1.0 + expect), "delta {delta} n {n}");
            }
        }
    }

    #[test]
    fn lambda_bounded_by_twice_von_mangoldt() {
        let t = tables(-7, 5000);
        let lam = t.lambda_k();
        for n in 2..=5000usize {
            let mut m = n;
            let mut p = 2;
            while m % p != 0 {
                p += 1;
            }
            while m % p == 0 {
                m /= p;
            }
            let vm = if m == 1 { (p as f64).ln() } else { 0.0 };
            assert!(lam[n] >= 0.0 && lam[n] <= 2.0 * vm + 1e-12, "n {n}");
        }
    }

    #[test]
    fn resource_cap() {
        let k = QuadField::new(-4).unwrap();
        assert!(matches!(
            CoeffTables::build_with_cap(k, 1_000_000, 1000),
            Err(Error::Resource { .. })
        ));
        assert!(CoeffTables::build(k, 0).is_err());
    }

    #[test]
    fn dump_round_trip() {
        let t = tables(-20, 777);
        let mut buf = Vec::new();
        t.write_to(&mut buf).unwrap();
        let back = CoeffTables::read_from(&mut buf.as_slice()).unwrap();
        assert_eq!(t, back);

        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(matches!(
            CoeffTables::read_from(&mut bad.as_slice()),
            Err(Error::Corrupt(_))
        ));
        let mut bad = buf.clone();
        bad[4] = 9;
        assert!(matches!(
            CoeffTables::read_from(&mut bad.as_slice()),
            Err(Error::Version { .. })
        ));
        assert!(CoeffTables::read_from(&mut &buf[..buf.len() - 3]).is_err());
    }
}
