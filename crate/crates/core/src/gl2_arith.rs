//! Integer side of GL2: Hecke cosets, divisor sums, coprime pairs and
//! representatives of B(Z)\GL2(Z).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::Estimate;

/// Upper triangular coset representative `(a b; 0 d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetRep {
    pub a: u64,
    pub b: u64,
    pub d: u64,
}

impl CosetRep {
    pub fn det(&self) -> u64 {
        self.a * self.d
    }

    pub fn matrix(&self) -> IntMat2 {
        IntMat2::new(self.a as i64, self.b as i64, 0, self.d as i64)
    }
}

/// `(a b; c d)` over Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMat2 {
    pub const IDENTITY: IntMat2 = IntMat2 { a: 1, b: 0, c: 0, d: 1 };
    /// `(1 1; 0 1)`
    pub const T: IntMat2 = IntMat2 { a: 1, b: 1, c: 0, d: 1 };
    /// `(0 -1; 1 0)`
    pub const S: IntMat2 = IntMat2 { a: 0, b: -1, c: 1, d: 0 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &IntMat2) -> IntMat2 {
        IntMat2 {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [
            [self.a as f64, self.b as f64],
            [self.c as f64, self.d as f64],
        ]
    }
}

/// Primitive pair up to sign; stored with n > 0, or as (1, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CoprimePair {
    m: i64,
    n: i64,
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

impl CoprimePair {
    /// Canonicalizes the sign; rejects non-primitive pairs.
    pub fn new(m: i64, n: i64) -> Result<Self> {
        if gcd(m, n) != 1 {
            return Err(Error::domain("CoprimePair", format!("gcd({m}, {n}) != 1")));
        }
        let (m, n) = if n < 0 || (n == 0 && m < 0) { (-m, -n) } else { (m, n) };
        Ok(CoprimePair { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn height(&self) -> u64 {
        self.m.unsigned_abs().max(self.n.unsigned_abs())
    }
}

/// Sum of the positive divisors of n.
pub fn sigma(n: u64) -> u64 {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut rest = n;
    let mut total = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        if rest % p == 0 {
            let mut pk = 1u64;
            let mut acc = 1u64;
            while rest % p == 0 {
                rest /= p;
                pk *= p;
                acc += pk;
            }
            total *= acc;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        total *= rest + 1;
    }
    total
}

/// Upper triangular representatives of SL2(Z)\Mat2(Z) with determinant n,
/// in lexicographic (a, b) order.
pub fn hecke_cosets(n: u64) -> Vec<CosetRep> {
    assert!(n >= 1, "hecke_cosets needs n >= 1");
    let mut out = Vec::new();
    for a in 1..=n {
        if n % a == 0 {
            let d = n / a;
            out.extend((0..d).map(|b| CosetRep { a, b, d }));
        }
    }
    out
}

/// Coset count with determinant exactly n, grouped by the diagonal.
pub fn coset_count(n: u64) -> u64 {
    (1..=n).filter(|a| n % a == 0).map(|a| n / a).sum()
}

/// All primitive classes with max(|m|, |n|) <= H. Shells of equal height come
/// in increasing height, so the list for H is a prefix of the list for H + 1.
pub fn enumerate_coprime_pairs(h: u64) -> Vec<CoprimePair> {
    let mut out = Vec::new();
    let mut shell = Vec::new();
    for k in 1..=h as i64 {
        shell.clear();
        if k == 1 {
            shell.push((1, 0));
        }
        for m in -k..=k {
            shell.push((m, k));
        }
        for n in 1..k {
            shell.push((-k, n));
            shell.push((k, n));
        }
        shell.sort_by_key(|&(m, n)| (n, m));
        out.extend(
            shell
                .iter()
                .filter(|&&(m, n)| gcd(m, n) == 1)
                .map(|&(m, n)| CoprimePair { m, n }),
        );
    }
    out
}

/// Modular inverse of `a` mod `m` (m >= 1, gcd = 1), in [0, m).
fn mod_inverse(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m)
}

/// `(k l; m n)` with `kn - ml = 1`, `0 <= k < |m|` for m != 0, and `k = 1, l = 0`
/// for (0, 1).
pub fn bz_coset_rep(p: CoprimePair) -> IntMat2 {
    let (m, n) = (p.m, p.n);
    if m == 0 {
        return IntMat2::new(1, 0, 0, 1);
    }
    let am = m.abs();
    let k = if am == 1 { 0 } else { mod_inverse(n, am) };
    let l = (k * n - 1) / m;
    IntMat2::new(k, l, m, n)
}

/// `sum_{det <= cutoff} det^{-(s+1/2)}` over Hecke cosets, grouped by the
/// diagonal (each (a, d) carries d cosets). The error is a bound for the
/// omitted tail using `sigma(n) <= n (1 + ln n)`.
pub fn gl2_zeta(s: Complex64, det_cutoff: u64) -> Result<Estimate> {
    if s.re <= 1.5 {
        return Err(Error::domain("gl2_zeta", format!("Re(s) = {} <= 3/2", s.re)));
    }
    if det_cutoff == 0 {
        return Err(Error::invalid("gl2_zeta", "cutoff must be positive"));
    }
    let e = s + 0.5;
    let mut by_det = vec![0u64; det_cutoff as usize + 1];
    for a in 1..=det_cutoff {
        for d in 1..=det_cutoff / a {
            by_det[(a * d) as usize] += d;
        }
    }
    let mut sum = Complex64::new(0.0, 0.0);
    for (n, &count) in by_det.iter().enumerate().skip(1) {
        sum += count as f64 * (-e * (n as f64).ln()).exp();
    }
    let a = e.re;
    let nf = det_cutoff as f64;
    let ln = nf.ln();
    let tail = nf.powf(2.0 - a) * ((1.0 + ln) / (a - 2.0) + 1.0 / ((a - 2.0) * (a - 2.0)));
    Ok(Estimate::new(sum, tail))
}
