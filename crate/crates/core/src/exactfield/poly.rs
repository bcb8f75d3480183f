//! Univariate polynomials over GF(q) and their factorization
//! (square-free, distinct-degree, then Cantor–Zassenhaus equal-degree).

use std::cmp::Ordering;
use std::fmt;

use super::field::{Fe, Field};
use super::matrix::Matrix;
use super::rng::SeededRng;
use crate::error::{Error, Result};

/// Default seed for equal-degree splitting. The factor list is sorted, so the
/// seed only affects running time.
pub const FACTOR_SEED: u64 = 0x5EED_FAC7;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    // constant term first, no trailing zeros
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            let cs = self.field.coeffs(c);
            let c_str = if self.field.k() == 1 {
                cs[0].to_string()
            } else {
                format!("{cs:?}")
            };
            match (i, c == Fe::ONE) {
                (0, _) => write!(out, "{c_str}")?,
                (1, true) => write!(out, "x")?,
                (1, false) => write!(out, "{c_str}*x")?,
                (_, true) => write!(out, "x^{i}")?,
                (_, false) => write!(out, "{c_str}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::new(field, vec![Fe::ONE])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![Fe::ZERO, Fe::ONE])
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// `x - a`
    pub fn linear(field: &Field, a: Fe) -> Poly {
        Poly::new(field, vec![field.neg(a), Fe::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().expect("zero polynomial has no degree")
    }

    pub fn leading(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.leading());
        self.scale(inv)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let f = &self.field;
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let dd = d.deg();
        let inv = f.inv(d.leading());
        let mut r = self.coeffs.clone();
        let mut q = vec![Fe::ZERO; r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = f.mul(r[i + dd], inv);
            q[i] = c;
            if c.is_zero() {
                continue;
            }
            let nc = f.neg(c);
            for (j, &dj) in d.coeffs.iter().enumerate() {
                r[i + j] = f.mul_add(r[i + j], nc, dj);
            }
        }
        (Poly::new(f, q), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other).exact_div(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, a: Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square());
        let f = &self.field;
        let n = m.rows();
        let mut acc = Matrix::zeros(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                acc.set(i, i, f.add(acc.get(i, i), c));
            }
        }
        acc
    }

    /// Companion matrix of a monic polynomial (column convention: `M e_i = e_{i+1}`).
    pub fn companion(&self) -> Matrix {
        let f = &self.field;
        let n = self.deg();
        assert_eq!(self.leading(), Fe::ONE, "companion matrix needs a monic polynomial");
        let mut m = Matrix::zeros(f, n, n);
        for i in 1..n {
            m.set(i, i - 1, Fe::ONE);
        }
        for i in 0..n {
            m.set(i, n - 1, f.neg(self.coeffs[i]));
        }
        m
    }

    /// Image under a field embedding.
    pub fn map_coeffs(&self, target: &Field, g: impl Fn(Fe) -> Fe) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|&c| g(c)).collect())
    }

    /// Ordering used to canonicalize factor lists: degree, then coefficients
    /// from the top down.
    pub fn canonical_cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    pub fn random(field: &Field, degree_below: usize, rng: &mut SeededRng) -> Poly {
        Poly::new(field, (0..degree_below).map(|_| field.random(rng)).collect())
    }

    /// Irreducibility by distinct-degree detection.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        let g = self.monic();
        let q = self.field.order();
        let x = Poly::x(&self.field);
        let mut h = x.clone();
        for _ in 1..=n / 2 {
            h = h.pow_mod(q, &g);
            if !g.gcd(&h.sub(&x)).is_one() {
                return false;
            }
        }
        true
    }
}

/// Factor a nonzero polynomial into monic irreducibles with multiplicities,
/// sorted canonically. The leading coefficient is dropped.
pub fn factor_poly(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    factor_poly_seeded(f, FACTOR_SEED)
}

pub fn factor_poly_seeded(f: &Poly, seed: u64) -> Result<Vec<(Poly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = SeededRng::new(seed);
    let mut out: Vec<(Poly, u32)> = Vec::new();
    for (sqf, mult) in square_free(&f.monic()) {
        for (g, d) in distinct_degree(&sqf) {
            for irr in equal_degree(&g, d, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    // merge repeated factors coming from different square-free layers
    let mut merged: Vec<(Poly, u32)> = Vec::new();
    for (p, m) in out {
        match merged.last_mut() {
            Some((last, lm)) if *last == p => *lm += m,
            _ => merged.push((p, m)),
        }
    }
    Ok(merged)
}

/// Square-free decomposition of a monic polynomial: pairs `(g_i, i)` with
/// `f = prod g_i^i` and each `g_i` square-free.
fn square_free(f: &Poly) -> Vec<(Poly, u32)> {
    let field = f.field().clone();
    let p = field.p() as u64;
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let df = f.derivative();
    if df.is_zero() {
        // f = g(x^p)
        let g = pth_root_poly(f);
        for (h, m) in square_free(&g) {
            out.push((h, m * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c);
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        for (h, m) in square_free(&pth_root_poly(&c.monic())) {
            out.push((h, m * p as u32));
        }
    }
    out
}

fn pth_root_poly(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pth_root(c))
        .collect();
    Poly::new(field, coeffs)
}

/// Splits a square-free monic polynomial into `(product of all irreducible
/// factors of degree d, d)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.order();
    let x = Poly::x(&field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0;
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            rest = rest.exact_div(&g).monic();
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.deg();
        out.push((rest, deg));
    }
    out
}

/// Cantor–Zassenhaus: split a product of distinct monic irreducibles of
/// degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut SeededRng) -> Vec<Poly> {
    let n = f.deg();
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field().clone();
    let q = field.order();
    loop {
        let a = Poly::random(&field, n, rng);
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // trace from GF(q^d) down to GF(2): a + a^2 + ... + a^(2^(kd-1))
            let steps = field.k() as usize * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2)
            let mut t = a.rem(f);
            let mut prod = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q, f);
                prod = prod.mul_mod(&t, f);
            }
            prod.pow_mod((q - 1) / 2, f).sub(&Poly::one(&field))
        };
        let g = f.gcd(&b);
        if let Some(gd) = g.degree() {
            if gd > 0 && gd < n {
                let mut out = equal_degree(&g, d, rng);
                out.extend(equal_degree(&f.exact_div(&g).monic(), d, rng));
                return out;
            }
        }
    }
}

/// Roots in the field, sorted by code.
pub fn roots(f: &Poly) -> Result<Vec<Fe>> {
    let mut out: Vec<Fe> = factor_poly(f)?
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| g.field().neg(g.coeff(0)))
        .collect();
    out.sort();
    Ok(out)
}
