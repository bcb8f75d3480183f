//! Characteristic and minimal polynomials by Krylov spin-up.

use super::field::Fe;
use super::matrix::{axpy, unit_vector, Echelon, Matrix};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Relative Krylov sequence of `v` modulo the invariant subspace in `base`.
/// Returns the monic polynomial `g` of least degree with `g(M) v ∈ base`,
/// and the raw Krylov vectors `v, Mv, ..., M^(deg g - 1) v`.
fn relative_min_poly(m: &Matrix, v: &[Fe], base: &Echelon) -> (Poly, Vec<Vec<Fe>>) {
    let f = m.field().clone();
    let n = m.rows();
    let mut rows: Vec<(Vec<Fe>, usize, Vec<Fe>)> = Vec::new();
    let mut raw = Vec::new();
    let mut current = v.to_vec();
    loop {
        let j = raw.len();
        let mut c = base.reduce(&current);
        let mut poly = vec![Fe::ZERO; j + 1];
        poly[j] = Fe::ONE;
        for (r, piv, p) in &rows {
            let a = c[*piv];
            if !a.is_zero() {
                let na = f.neg(a);
                axpy(&f, &mut c, na, r);
                axpy(&f, &mut poly[..p.len()], na, p);
            }
        }
        match c.iter().position(|x| !x.is_zero()) {
            None => return (Poly::new(&f, poly), raw),
            Some(piv) => {
                let inv = f.inv(c[piv]);
                let c: Vec<Fe> = c.iter().map(|&x| f.mul(x, inv)).collect();
                let poly: Vec<Fe> = poly.iter().map(|&x| f.mul(x, inv)).collect();
                rows.push((c, piv, poly));
                raw.push(current.clone());
                current = m.mul_vec(&current);
                debug_assert!(raw.len() <= n);
            }
        }
    }
}

pub fn char_poly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let f = m.field().clone();
    let n = m.rows();
    let mut base = Echelon::new(&f, n);
    let mut cp = Poly::one(&f);
    for i in 0..n {
        if base.len() == n {
            break;
        }
        let e = unit_vector(n, i);
        if base.contains(&e) {
            continue;
        }
        let (g, raw) = relative_min_poly(m, &e, &base);
        cp = cp.mul(&g);
        for v in raw {
            base.insert(&v);
        }
    }
    Ok(cp)
}

pub fn min_poly(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return Err(Error::Dimension("minimal polynomial of a non-square matrix".into()));
    }
    let f = m.field().clone();
    let n = m.rows();
    let empty = Echelon::new(&f, n);
    let mut mp = Poly::one(&f);
    for i in 0..n {
        let (g, _) = relative_min_poly(m, &unit_vector(n, i), &empty);
        mp = mp.lcm(&g);
    }
    Ok(mp)
}

/// Characteristic and minimal polynomial of a square matrix.
pub fn char_min_poly(m: &Matrix) -> Result<(Poly, Poly)> {
    Ok((char_poly(m)?, min_poly(m)?))
}
