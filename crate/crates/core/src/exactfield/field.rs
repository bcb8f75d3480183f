//! GF(p^k) with deterministic moduli.
//!
//! Elements are stored as a single code `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` is the coefficient of `x^i` in the quotient `GF(p)[x]/(m)`.
//! The modulus `m` is the first monic irreducible of degree `k` when
//! candidates are enumerated by that same code (constant term fastest).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::rng::SeededRng;
use crate::error::{Error, Result};

/// Field element code. Meaningless without its [`Field`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fe(u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serializable description `{p, k, modulus}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    #[serde(default)]
    pub modulus: Vec<u32>,
}

const MUL_TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 256;
const MAX_ORDER: u64 = 1 << 31;

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    // exp has length 2(q-1) so log sums need no reduction
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
}

/// A finite field GF(p^k). Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.k == other.0.k)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.k)
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over GF(p) on raw residues; only used to pick the modulus.
mod primepoly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let c = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                let t = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
            r = trim(r);
        }
        trim(r)
    }

    pub fn mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let prod: Vec<u32> = prod.into_iter().map(|v| v as u32).collect();
        rem(&trim(prod), m, p)
    }

    pub fn powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut base = rem(a, m, p);
        let mut acc = vec![1u32];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        let mut r = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }
}

/// Rabin's irreducibility test for a monic polynomial over GF(p).
pub(crate) fn is_irreducible_over_prime(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // x^(p^j) for j = 0..=k
    let mut frob = vec![x.clone()];
    for j in 0..k {
        let next = primepoly::powmod(&frob[j], p as u64, f, p);
        frob.push(next);
    }
    if primepoly::sub(&frob[k], &x, p) != Vec::<u32>::new() {
        return false;
    }
    for r in prime_factors(k as u64) {
        let d = k / r as usize;
        let g = primepoly::gcd(f, &primepoly::sub(&frob[d], &x, p), p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    if k == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(k);
    for code in 0..count {
        let mut coeffs = Vec::with_capacity(k as usize + 1);
        let mut c = code;
        for _ in 0..k {
            coeffs.push((c % p as u64) as u32);
            c /= p as u64;
        }
        coeffs.push(1);
        if coeffs[0] != 0 && is_irreducible_over_prime(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// The canonical GF(p^k).
    pub fn new(p: u32, k: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 1 {
            return Err(Error::ZeroDegree);
        }
        let q64 = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let q = q64.ok_or(Error::FieldTooLarge { p, k })? as u32;
        let modulus = canonical_modulus(p, k);
        let pow_p = (0..=k).map(|i| p.pow(i.min(k))).take(k as usize + 1).collect();
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            pow_p,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
        };
        if k > 1 && (q as u64) <= MUL_TABLE_LIMIT {
            build_log_tables(&mut inner);
        }
        if k > 1 && p != 2 && (q as u64) <= ADD_TABLE_LIMIT {
            let mut add = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = digit_add(&inner, a, b);
                }
            }
            inner.add = add;
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1)
    }

    /// Rebuild from a serialized spec, insisting on the canonical modulus.
    pub fn from_spec(spec: &FieldSpec) -> Result<Field> {
        let f = Field::new(spec.p, spec.k)?;
        if !spec.modulus.is_empty() && spec.modulus != f.0.modulus {
            return Err(Error::NonCanonicalModulus {
                p: spec.p,
                k: spec.k,
                given: spec.modulus.clone(),
                expected: f.0.modulus.clone(),
            });
        }
        Ok(f)
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.0.p,
            k: self.0.k,
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        self.0.q as u64
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// GF(p^(k*m)).
    pub fn extension(&self, m: u32) -> Result<Field> {
        Field::new(self.0.p, self.0.k * m)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_code(&self, code: u32) -> Result<Fe> {
        if code < self.0.q {
            Ok(Fe(code))
        } else {
            Err(Error::Parse(format!("element code {code} out of range for {self}")))
        }
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Fe> {
        if coeffs.len() > self.0.k as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!("bad coefficient vector {coeffs:?} for {self}")));
        }
        Ok(Fe(coeffs
            .iter()
            .zip(&self.0.pow_p)
            .map(|(&c, &w)| c * w)
            .sum()))
    }

    /// Length-k coefficient vector, constant term first.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let p = self.0.p;
        let mut c = a.0;
        (0..self.0.k)
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn random(&self, rng: &mut SeededRng) -> Fe {
        Fe(rng.below(self.0.q as u64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if inner.p == 2 {
            Fe(a.0 ^ b.0)
        } else if inner.k == 1 {
            let s = a.0 + b.0;
            Fe(if s >= inner.p { s - inner.p } else { s })
        } else if !inner.add.is_empty() {
            Fe(inner.add[(a.0 * inner.q + b.0) as usize])
        } else {
            Fe(digit_add(inner, a.0, b.0))
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let inner = &*self.0;
        if inner.p == 2 || a.0 == 0 {
            a
        } else if inner.k == 1 {
            Fe(inner.p - a.0)
        } else {
            let p = inner.p;
            let mut c = a.0;
            let mut out = 0;
            for &w in &inner.pow_p[..inner.k as usize] {
                let d = c % p;
                c /= p;
                out += ((p - d) % p) * w;
            }
            Fe(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let inner = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        if inner.k == 1 {
            Fe((a.0 as u64 * b.0 as u64 % inner.p as u64) as u32)
        } else if !inner.log.is_empty() {
            let i = inner.log[a.0 as usize] + inner.log[b.0 as usize];
            Fe(inner.exp[i as usize])
        } else {
            Fe(slow_mul(inner, a.0, b.0))
        }
    }

    /// `acc + a*b`
    #[inline]
    pub fn mul_add(&self, acc: Fe, a: Fe, b: Fe) -> Fe {
        self.add(acc, self.mul(a, b))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: Fe) -> Fe {
        assert!(!a.is_zero(), "inverse of zero in {self}");
        let inner = &*self.0;
        if !inner.log.is_empty() {
            let n = inner.q - 1;
            Fe(inner.exp[((n - inner.log[a.0 as usize]) % n) as usize])
        } else {
            self.pow(a, inner.q as u64 - 2)
        }
    }

    pub fn div(&self, a: Fe, b: Fe) -> Fe {
        self.mul(a, self.inv(b))
    }

    /// x -> x^p
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.0.p as u64)
    }

    /// Inverse of the Frobenius map.
    pub fn pth_root(&self, a: Fe) -> Fe {
        let mut r = a;
        for _ in 1..self.0.k {
            r = self.frobenius(r);
        }
        r
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> u64 {
        assert!(!a.is_zero());
        let n = self.order() - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord % r == 0 && self.pow(a, ord / r) == Fe::ONE {
                ord /= r;
            }
        }
        ord
    }
}

fn digit_add(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p;
    let (mut x, mut y, mut out) = (a, b, 0);
    for &w in &inner.pow_p[..inner.k as usize] {
        let s = (x % p + y % p) % p;
        x /= p;
        y /= p;
        out += s * w;
    }
    out
}

fn slow_mul(inner: &Inner, a: u32, b: u32) -> u32 {
    let p = inner.p as u64;
    let k = inner.k as usize;
    let da = decode(inner, a);
    let db = decode(inner, b);
    let mut prod = vec![0u64; 2 * k - 1];
    for i in 0..k {
        if da[i] == 0 {
            continue;
        }
        for j in 0..k {
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        }
    }
    for i in (k..2 * k - 1).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let t = c * inner.modulus[j] as u64 % p;
            prod[i - k + j] = (prod[i - k + j] + p - t) % p;
        }
    }
    prod[..k]
        .iter()
        .zip(&inner.pow_p)
        .map(|(&c, &w)| c as u32 * w)
        .sum()
}

fn decode(inner: &Inner, a: u32) -> Vec<u64> {
    let p = inner.p;
    let mut c = a;
    (0..inner.k)
        .map(|_| {
            let d = c % p;
            c /= p;
            d as u64
        })
        .collect()
}

fn build_log_tables(inner: &mut Inner) {
    let q = inner.q;
    let n = (q - 1) as u64;
    let factors = prime_factors(n);
    let slow_pow = |inner: &Inner, a: u32, mut e: u64| {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = slow_mul(inner, acc, base);
            }
            base = slow_mul(inner, base, base);
            e >>= 1;
        }
        acc
    };
    let generator = (2..q)
        .find(|&g| factors.iter().all(|&r| slow_pow(inner, g, n / r) != 1))
        .expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; 2 * n as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for i in 0..n as usize {
        exp[i] = x;
        exp[i + n as usize] = x;
        log[x as usize] = i as u32;
        x = slow_mul(inner, x, generator);
    }
    inner.exp = exp;
    inner.log = log;
}
