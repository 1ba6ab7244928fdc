//! Quadratic field descriptors, the Kronecker character and small integer sieves.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest |d| accepted by [`is_fundamental_discriminant`].
pub const MAX_DISCRIMINANT: i64 = 1 << 31;

fn is_squarefree(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut m = m;
    if m % 4 == 0 {
        return false;
    }
    if m % 2 == 0 {
        m /= 2;
    }
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return false;
            }
        }
        p += 2;
    }
    true
}

/// True iff `d` is the discriminant of a quadratic field.
///
/// Values outside `|d| <= 2^31` are rejected.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 || d.unsigned_abs() > MAX_DISCRIMINANT as u64 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// (a/2) for odd `a`, indexed by `a & 7`.
const KRONECKER_TWO: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

/// The Kronecker symbol (a/n).
///
/// Binary algorithm: strip powers of two from `n` with the supplementary
/// law, then alternate reduction and reciprocity on odd values.
pub fn kronecker(a: i64, n: i64) -> i8 {
    let mut a = a as i128;
    let mut b = n as i128;
    if b == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let v = b.trailing_zeros();
    b >>= v;
    let mut k: i8 = if v % 2 == 0 {
        1
    } else {
        KRONECKER_TWO[(a & 7) as usize]
    };
    if b < 0 {
        b = -b;
        if a < 0 {
            k = -k;
        }
    }
    loop {
        if a == 0 {
            return if b > 1 { 0 } else { k };
        }
        let v = a.trailing_zeros();
        a >>= v;
        if v % 2 == 1 {
            k *= KRONECKER_TWO[(b & 7) as usize];
        }
        if a & b & 2 != 0 {
            k = -k;
        }
        let r = a.abs();
        a = b % r;
        b = r;
    }
}

/// Signature of the field: real embeddings and pairs of complex embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub r1: u32,
    pub r2: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Imaginary,
    Real,
}

impl FieldKind {
    pub fn sign(self) -> i64 {
        match self {
            FieldKind::Imaginary => -1,
            FieldKind::Real => 1,
        }
    }
}

/// A quadratic field K = Q(sqrt(delta)) identified by its fundamental discriminant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadField {
    delta: i64,
}

impl QuadField {
    pub fn new(delta: i64) -> Result<Self> {
        if !is_fundamental_discriminant(delta) {
            return Err(Error::domain(format!(
                "{delta} is not a fundamental discriminant"
            )));
        }
        Ok(Self { delta })
    }

    /// Field of discriminant `-d` (imaginary) or `d` (real), with `d > 0`.
    pub fn from_abs(d: u64, kind: FieldKind) -> Result<Self> {
        let d = i64::try_from(d).map_err(|_| Error::domain("discriminant out of range"))?;
        Self::new(kind.sign() * d)
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    /// D_K = |delta|.
    pub fn abs_disc(&self) -> u64 {
        self.delta.unsigned_abs()
    }

    pub fn kind(&self) -> FieldKind {
        if self.delta < 0 {
            FieldKind::Imaginary
        } else {
            FieldKind::Real
        }
    }

    pub fn is_imaginary(&self) -> bool {
        self.delta < 0
    }

    pub fn signature(&self) -> Signature {
        if self.is_imaginary() {
            Signature { r1: 0, r2: 1 }
        } else {
            Signature { r1: 2, r2: 0 }
        }
    }

    /// The quadratic character attached to the field.
    pub fn character(&self) -> Character {
        Character::new(self.delta)
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(sqrt({}))", self.delta)
    }
}

/// Primitive quadratic character n -> (delta/n) of conductor |delta|.
///
/// Values over one period are tabulated at construction.
#[derive(Debug, Clone)]
pub struct Character {
    delta: i64,
    table: Arc<[i8]>,
}

impl Character {
    /// Panics if `delta` is not a fundamental discriminant; go through
    /// [`QuadField::character`] or [`Character::try_new`] for checked input.
    pub fn new(delta: i64) -> Self {
        Self::try_new(delta).expect("character of a non-fundamental discriminant")
    }

    pub fn try_new(delta: i64) -> Result<Self> {
        if !is_fundamental_discriminant(delta) {
            return Err(Error::domain(format!(
                "{delta} is not a fundamental discriminant"
            )));
        }
        let modulus = delta.unsigned_abs() as i64;
        let table = (0..modulus).map(|n| kronecker(delta, n)).collect();
        Ok(Self { delta, table })
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn modulus(&self) -> u64 {
        self.delta.unsigned_abs()
    }

    /// chi(-1) = +1.
    pub fn is_even(&self) -> bool {
        self.delta > 0
    }

    /// 0 for even characters, 1 for odd ones.
    pub fn parity(&self) -> u32 {
        u32::from(!self.is_even())
    }

    #[inline]
    pub fn value(&self, n: i64) -> i8 {
        self.table[n.rem_euclid(self.table.len() as i64) as usize]
    }

    #[inline]
    pub fn value_u(&self, n: u64) -> i8 {
        self.table[(n % self.table.len() as u64) as usize]
    }
}

/// Moebius function on 0..=n (index 0 holds 0).
pub fn mobius_sieve(n: usize) -> Vec<i8> {
    let mut mu = vec![1i8; n + 1];
    if n == 0 {
        mu[0] = 0;
        return mu;
    }
    mu[0] = 0;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let m = i * p;
            if m > n {
                break;
            }
            composite[m] = true;
            if i % p == 0 {
                mu[m] = 0;
                break;
            }
            mu[m] = -mu[i];
        }
    }
    mu
}

/// Primes up to and including `n`.
pub fn primes_up_to(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut m = p * p;
            while m <= n {
                sieve[m] = false;
                m += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &is_p)| is_p.then_some(i))
        .collect()
}

/// Number of divisors of every n in 0..=limit (index 0 holds 0).
pub fn divisor_counts(limit: usize) -> Vec<u32> {
    let mut d = vec![0u32; limit + 1];
    for i in 1..=limit {
        for m in (i..=limit).step_by(i) {
            d[m] += 1;
        }
    }
    d
}

/// Fundamental discriminants of the given kind with |delta| in `[lo, hi]`, by |delta|.
pub fn fundamental_discriminants(kind: FieldKind, lo: u64, hi: u64) -> Vec<QuadField> {
    (lo.max(1)..=hi)
        .filter_map(|d| QuadField::from_abs(d, kind).ok())
        .collect()
}
