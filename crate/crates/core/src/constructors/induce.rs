use super::group::{GroupTable, Subgroup};
use crate::algebra::{ModuleRep, Subalgebra};
use crate::error::{Error, Result};
use crate::exactfield::{Fe, Matrix, Subspace};

/// `H ⊗_K U`: `H ⊗ U` (`b_i ⊗ u_l` at `i * dim U + l`) modulo
/// `hk ⊗ u − h ⊗ ku`. Fails unless `dim · dim K = dim H · dim U`.
pub fn induced_module(k: &Subalgebra, u: &ModuleRep) -> Result<ModuleRep> {
    if u.algebra() != k.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let h = k.ambient();
    let f = h.field();
    let (n, m, du) = (h.dim(), k.dim(), u.dim());
    let big = n * du;
    let action: Vec<Matrix> = (0..n)
        .map(|s| {
            let l = h.left_mul_matrix(s);
            Matrix::from_fn(f, big, big, |r, c| {
                if r % du == c % du {
                    l.get(r / du, c / du)
                } else {
                    Fe::ZERO
                }
            })
        })
        .collect();
    let tensor = ModuleRep::from_parts(h.clone(), action)?;
    let mut relations = Vec::with_capacity(n * m * du);
    for i in 0..n {
        for j in 0..m {
            let hk = h.mul(&h.basis_vector(i), k.space().vector(j));
            let kj = u.action(j);
            for l in 0..du {
                let mut v = vec![Fe::ZERO; big];
                for (t, &c) in hk.iter().enumerate() {
                    v[t * du + l] = c;
                }
                for (r, &c) in kj.col(l).iter().enumerate() {
                    let slot = &mut v[i * du + r];
                    *slot = f.sub(*slot, c);
                }
                relations.push(v);
            }
        }
    }
    let rel = Subspace::from_vectors(f, big, relations);
    let induced = tensor.quotient(&rel)?;
    if induced.dim() * m != n * du {
        return Err(Error::Verification(format!(
            "induced module has dimension {} but dim H · dim U / dim K = {}·{}/{}",
            induced.dim(),
            n,
            du,
            m
        )));
    }
    Ok(induced)
}

/// `V|_K` in the coordinates of the standalone `K`.
pub fn restrict_module(v: &ModuleRep, k: &Subalgebra) -> Result<ModuleRep> {
    k.restrict(v)
}

/// `^{α_g}U` for `U` over `kN`, `N ⊴ G`: `n` acts as `ρ_U(g⁻¹ n g)`. `U`
/// must be over an algebra whose basis is `N` in the subgroup's order.
pub fn conjugate_module(g: &GroupTable, n: &Subgroup, elem: usize, u: &ModuleRep) -> Result<ModuleRep> {
    if elem >= g.order() {
        return Err(Error::Group(format!("element {elem} out of range")));
    }
    if u.algebra().dim() != n.order() {
        return Err(Error::Dimension(format!(
            "module over an algebra of dimension {} for a subgroup of order {}",
            u.algebra().dim(),
            n.order()
        )));
    }
    let images = n
        .elements()
        .iter()
        .map(|&x| {
            let c = g.conjugate(x, elem);
            let local = n.local_index(c).ok_or_else(|| {
                Error::Group(format!(
                    "conjugating {} by {} leaves the subgroup",
                    g.label(x),
                    g.label(elem)
                ))
            })?;
            Ok(u.action(local).clone())
        })
        .collect::<Result<Vec<_>>>()?;
    ModuleRep::new(u.algebra().clone(), images)
}

/// The group algebra `kN` as a Hopf subalgebra space of `kG`.
pub fn subgroup_space(g: &GroupTable, n: &Subgroup, field: &crate::exactfield::Field) -> Subspace {
    let vs = n.elements().iter().map(|&x| crate::exactfield::unit_vector(g.order(), x));
    Subspace::from_vectors(field, g.order(), vs)
}
