//! Brute-force prime-field linear algebra for oracles. Shares no code with
//! the library: vectors are plain `u32` residues, matrices act on columns.
#![allow(dead_code)]

use std::collections::HashSet;

use hopfcert_core::algebra::ModuleRep;
use hopfcert_core::exactfield::Field;

pub type Vector = Vec<u32>;
/// Row-major square matrix.
pub type Mat = Vec<Vec<u32>>;

fn inv(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (a as u64 % p as u64, p as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Reduced row echelon basis of the span, pivots increasing.
pub fn span(p: u32, vs: impl IntoIterator<Item = Vector>) -> Vec<Vector> {
    let mut rows: Vec<Vector> = Vec::new();
    for v in vs {
        insert(p, &mut rows, v);
    }
    canonical(p, rows)
}

fn pivot(v: &[u32]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

fn reduce(p: u32, rows: &[Vector], mut v: Vector) -> Vector {
    for r in rows {
        let c = pivot(r).expect("nonzero row");
        let a = v[c];
        if a != 0 {
            for (x, y) in v.iter_mut().zip(r) {
                *x = (*x + (p - a) * y) % p;
            }
        }
    }
    v
}

fn insert(p: u32, rows: &mut Vec<Vector>, v: Vector) -> bool {
    let mut v = reduce(p, rows, v);
    let Some(c) = pivot(&v) else {
        return false;
    };
    let s = inv(v[c], p);
    for x in v.iter_mut() {
        *x = *x * s % p;
    }
    for r in rows.iter_mut() {
        let a = r[c];
        if a != 0 {
            for (x, y) in r.iter_mut().zip(&v) {
                *x = (*x + (p - a) * y) % p;
            }
        }
    }
    rows.push(v);
    true
}

fn canonical(_p: u32, mut rows: Vec<Vector>) -> Vec<Vector> {
    rows.sort_by_key(|r| pivot(r));
    rows
}

pub fn contains(p: u32, basis: &[Vector], v: &[u32]) -> bool {
    pivot(&reduce(p, basis, v.to_vec())).is_none()
}

pub fn contains_all(p: u32, big: &[Vector], small: &[Vector]) -> bool {
    small.iter().all(|v| contains(p, big, v))
}

pub fn sum(p: u32, a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    span(p, a.iter().chain(b).cloned())
}

pub fn apply(p: u32, m: &Mat, v: &[u32]) -> Vector {
    m.iter()
        .map(|row| (row.iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p as u64) as u32)
        .collect()
}

/// `{x : A x = 0}` for an `r × c` matrix given by rows.
pub fn kernel(p: u32, a: &[Vector], cols: usize) -> Vec<Vector> {
    let rows = span(p, a.iter().cloned());
    let pivots: Vec<usize> = rows.iter().map(|r| pivot(r).unwrap()).collect();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (r, &pc) in rows.iter().zip(&pivots) {
            v[pc] = (p - r[free]) % p;
        }
        out.push(v);
    }
    span(p, out)
}

pub fn intersect(p: u32, a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    // x = Σ s_i a_i = Σ t_j b_j
    let cols = a.len() + b.len();
    let rows: Vec<Vector> = (0..n)
        .map(|r| {
            a.iter()
                .map(|v| v[r])
                .chain(b.iter().map(|v| (p - v[r]) % p))
                .collect::<Vector>()
        })
        .collect();
    let ker = kernel(p, &rows, cols);
    span(
        p,
        ker.into_iter().map(|k| {
            let mut x = vec![0u32; n];
            for (s, v) in k.iter().zip(a) {
                for (xi, vi) in x.iter_mut().zip(v) {
                    *xi = (*xi + s * vi) % p;
                }
            }
            x
        }),
    )
}

/// Smallest subspace containing `v` and stable under every generator.
pub fn spin(p: u32, gens: &[Mat], v: Vector) -> Vec<Vector> {
    let mut rows: Vec<Vector> = Vec::new();
    let mut queue = vec![v];
    while let Some(w) = queue.pop() {
        if insert(p, &mut rows, w.clone()) {
            for g in gens {
                queue.push(apply(p, g, &w));
            }
        }
    }
    canonical(p, rows)
}

/// Every submodule: spin all `p^d` vectors, then close under sums.
pub fn submodules(p: u32, gens: &[Mat], d: usize) -> Vec<Vec<Vector>> {
    let total = (p as u64).pow(d as u32);
    let mut cyclic: Vec<Vec<Vector>> = Vec::new();
    let mut seen = HashSet::new();
    for code in 1..total {
        let mut v = vec![0u32; d];
        let mut x = code;
        for s in v.iter_mut() {
            *s = (x % p as u64) as u32;
            x /= p as u64;
        }
        // one vector per line suffices
        if v[pivot(&v).unwrap()] != 1 {
            continue;
        }
        let s = spin(p, gens, v);
        if seen.insert(s.clone()) {
            cyclic.push(s);
        }
    }
    let mut all: Vec<Vec<Vector>> = vec![Vec::new()];
    let mut keys: HashSet<Vec<Vector>> = HashSet::from([Vec::new()]);
    let mut i = 0;
    while i < all.len() {
        let u = all[i].clone();
        for c in &cyclic {
            let s = sum(p, &u, c);
            if keys.insert(s.clone()) {
                all.push(s);
            }
        }
        i += 1;
    }
    all
}

/// A maximal chain `0 = W_0 ⊂ … ⊂ W_r = M` of submodules.
pub fn maximal_chain(p: u32, lattice: &[Vec<Vector>], d: usize) -> Vec<Vec<Vector>> {
    let mut chain = vec![Vec::new()];
    while chain.last().unwrap().len() < d {
        let cur = chain.last().unwrap();
        let next = lattice
            .iter()
            .filter(|s| s.len() > cur.len() && contains_all(p, s, cur))
            .min_by_key(|s| s.len())
            .unwrap()
            .clone();
        chain.push(next);
    }
    chain
}

/// Composition factor dimensions, ascending.
pub fn factor_dims(p: u32, gens: &[Mat], d: usize) -> Vec<usize> {
    let lattice = submodules(p, gens, d);
    let chain = maximal_chain(p, &lattice, d);
    let mut dims: Vec<usize> = chain.windows(2).map(|w| w[1].len() - w[0].len()).collect();
    dims.sort_unstable();
    dims
}

/// Dimensions of the isomorphism classes of simple submodules of a
/// semisimple module, and whether the module is semisimple at all. Two
/// distinct simple submodules `S`, `T` are isomorphic exactly when `S + T`
/// contains a third simple submodule.
pub fn simple_classes(p: u32, gens: &[Mat], d: usize) -> (Vec<usize>, bool) {
    let lattice = submodules(p, gens, d);
    let minimal: Vec<&Vec<Vector>> = lattice
        .iter()
        .filter(|s| !s.is_empty())
        .filter(|s| {
            !lattice
                .iter()
                .any(|t| !t.is_empty() && t.len() < s.len() && contains_all(p, s, t))
        })
        .collect();
    let socle = minimal.iter().fold(Vec::new(), |acc, s| sum(p, &acc, s));
    let mut class: Vec<usize> = (0..minimal.len()).collect();
    for i in 0..minimal.len() {
        for j in 0..i {
            if class[j] != j || minimal[i].len() != minimal[j].len() {
                continue;
            }
            let st = sum(p, minimal[i], minimal[j]);
            let linked = minimal
                .iter()
                .enumerate()
                .any(|(k, r)| k != i && k != j && contains_all(p, &st, r));
            if linked {
                class[i] = j;
                break;
            }
        }
    }
    let mut dims: Vec<usize> = (0..minimal.len())
        .filter(|&i| class[i] == i)
        .map(|i| minimal[i].len())
        .collect();
    dims.sort_unstable();
    (dims, socle.len() == d)
}

/// `{c : Σ c_j B_j acts as zero on W_{i+1}/W_i for every link}`, the
/// intersection of the annihilators of all chain factors.
pub fn chain_annihilator(p: u32, action: &[Mat], chain: &[Vec<Vector>]) -> Vec<Vector> {
    let n = action.len();
    let mut rows: Vec<Vector> = Vec::new();
    for link in chain.windows(2) {
        let (lo, hi) = (&link[0], &link[1]);
        for w in hi {
            let images: Vec<Vector> = action.iter().map(|b| reduce(p, lo, apply(p, b, w))).collect();
            for r in 0..w.len() {
                rows.push(images.iter().map(|im| im[r]).collect());
            }
        }
    }
    kernel(p, &rows, n)
}

pub fn annihilator(p: u32, action: &[Mat]) -> Vec<Vector> {
    let d = action.first().map_or(0, |m| m.len());
    let whole: Vec<Vector> = (0..d).map(|i| (0..d).map(|j| (i == j) as u32).collect()).collect();
    chain_annihilator(p, action, &[Vec::new(), whole])
}

pub fn jacobson_radical(p: u32, action: &[Mat], d: usize) -> Vec<Vector> {
    let lattice = submodules(p, action, d);
    let chain = maximal_chain(p, &lattice, d);
    chain_annihilator(p, action, &chain)
}

pub fn residue(f: &Field, a: hopfcert_core::exactfield::Fe) -> u32 {
    assert_eq!(f.k(), 1, "oracle works over prime fields");
    f.coeffs(a)[0]
}

/// Every basis element's action as plain residues.
pub fn module_mats(m: &ModuleRep) -> Vec<Mat> {
    let f = m.field();
    m.actions()
        .iter()
        .map(|a| (0..a.rows()).map(|r| a.row(r).iter().map(|&x| residue(f, x)).collect()).collect())
        .collect()
}

pub fn to_residues(f: &Field, v: &[hopfcert_core::exactfield::Fe]) -> Vector {
    v.iter().map(|&x| residue(f, x)).collect()
}
