use crate::algebra::ModuleRep;
use crate::exactfield::{vec_is_zero, Echelon, Fe, Field, Matrix, Subspace};

/// Smallest subspace containing `seeds` and stable under `mats`.
pub(crate) fn spin_under(field: &Field, dim: usize, mats: &[&Matrix], seeds: &[Vec<Fe>]) -> Subspace {
    let mut span = Echelon::new(field, dim);
    let mut queue: Vec<Vec<Fe>> = Vec::new();
    for v in seeds {
        if span.insert(v) {
            queue.push(v.clone());
        }
    }
    while let Some(w) = queue.pop() {
        if span.len() == dim {
            break;
        }
        for m in mats {
            let x = m.mul_vec(&w);
            if span.insert(&x) {
                queue.push(x);
            }
        }
    }
    span.into_subspace()
}

/// Raw spin basis of `v`: breadth first over the generators, keeping each
/// image that is new. The result is the same for `v` and `φ v` up to `φ`.
pub(crate) fn spin_basis(field: &Field, dim: usize, mats: &[&Matrix], v: &[Fe]) -> Vec<Vec<Fe>> {
    let mut span = Echelon::new(field, dim);
    let mut basis = Vec::new();
    if vec_is_zero(v) {
        return basis;
    }
    span.insert(v);
    basis.push(v.to_vec());
    let mut i = 0;
    while i < basis.len() && basis.len() < dim {
        for m in mats {
            let x = m.mul_vec(&basis[i]);
            if span.insert(&x) {
                basis.push(x);
            }
        }
        i += 1;
    }
    basis
}

/// Submodule generated by the given vectors.
pub fn spin(m: &ModuleRep, vectors: &[Vec<Fe>]) -> Subspace {
    let gens = m.generator_actions();
    spin_under(m.field(), m.dim(), &gens, vectors)
}
