use std::collections::HashSet;

use super::spin::spin;
use crate::algebra::ModuleRep;
use crate::exactfield::{Fe, Subspace};

/// Largest number of lines the brute-force lattice enumeration accepts.
pub const LATTICE_VECTOR_LIMIT: u64 = 1 << 16;

fn key(s: &Subspace) -> Vec<u32> {
    let mut k = vec![s.dim() as u32];
    k.extend(s.basis().data().iter().map(|c| c.code()));
    k
}

/// Every submodule, found by spinning one vector from every line and
/// closing under sums. `None` when the module has more than
/// [`LATTICE_VECTOR_LIMIT`] lines.
pub fn submodule_lattice(m: &ModuleRep) -> Option<Vec<Subspace>> {
    let d = m.dim();
    let f = m.field();
    let q = f.order();
    let lines = q
        .checked_pow(d as u32)
        .map(|t| (t - 1) / (q - 1))
        .filter(|&t| t <= LATTICE_VECTOR_LIMIT)?;
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut cyclic = Vec::with_capacity(lines as usize);
    // lines with last nonzero coordinate 1 at position `lead`
    for lead in 0..d {
        for code in 0..q.pow(lead as u32) {
            let mut v = vec![Fe::ZERO; d];
            let mut x = code;
            for slot in v.iter_mut().take(lead) {
                *slot = f.from_code((x % q) as u32).expect("code below q");
                x /= q;
            }
            v[lead] = f.from_int(1);
            let s = spin(m, &[v]);
            if seen.insert(key(&s)) {
                cyclic.push(s);
            }
        }
    }
    let zero = Subspace::zero(f, d);
    let mut all: Vec<Subspace> = vec![zero.clone()];
    let mut all_keys: HashSet<Vec<u32>> = HashSet::from([key(&zero)]);
    let mut frontier = vec![zero];
    while let Some(u) = frontier.pop() {
        for c in &cyclic {
            let s = u.sum(c);
            if all_keys.insert(key(&s)) {
                all.push(s.clone());
                frontier.push(s);
            }
        }
    }
    all.sort_by_key(|s| (s.dim(), key(s)));
    Some(all)
}

/// Composition factor dimensions read off a maximal chain in the lattice.
pub fn lattice_factor_dims(m: &ModuleRep) -> Option<Vec<usize>> {
    let lattice = submodule_lattice(m)?;
    let mut current = Subspace::zero(m.field(), m.dim());
    let mut dims = Vec::new();
    while !current.is_full() {
        let next = lattice
            .iter()
            .filter(|s| s.dim() > current.dim() && s.contains_subspace(&current))
            .min_by_key(|s| s.dim())
            .expect("the whole module lies above");
        dims.push(next.dim() - current.dim());
        current = next.clone();
    }
    dims.sort_unstable();
    Some(dims)
}
