use std::sync::Arc;

use super::group::GroupTable;
use crate::algebra::AlgebraData;
use crate::error::Result;
use crate::exactfield::{Fe, Field, Matrix};
use crate::hopf::HopfData;

/// `kG` with `Δg = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &GroupTable, field: &Field) -> Result<HopfData> {
    let n = g.order();
    let labels = g.labels().to_vec();
    let entries = (0..n).flat_map(|a| (0..n).map(move |b| (a, b, g.mul(a, b), Fe::ONE)));
    let mut unit = vec![Fe::ZERO; n];
    unit[g.identity()] = Fe::ONE;
    let algebra = AlgebraData::from_structconst(field, labels, entries, unit)?.validate()?;
    let coproduct = (0..n).map(|a| vec![(a * n + a, Fe::ONE)]).collect();
    let antipode = Matrix::from_fn(field, n, n, |r, c| if r == g.inv(c) { Fe::ONE } else { Fe::ZERO });
    HopfData::from_sparse(Arc::new(algebra), coproduct, vec![Fe::ONE; n], antipode)?.validate()
}

/// `k^G` on the delta functions `e_g`.
pub fn dual_group_algebra(g: &GroupTable, field: &Field) -> Result<HopfData> {
    let n = g.order();
    let labels = g.labels().iter().map(|l| format!("e_{l}")).collect();
    let entries = (0..n).map(|a| (a, a, a, Fe::ONE));
    let algebra = AlgebraData::from_structconst(field, labels, entries, vec![Fe::ONE; n])?.validate()?;
    let mut coproduct = vec![Vec::new(); n];
    for u in 0..n {
        for v in 0..n {
            coproduct[g.mul(u, v)].push((u * n + v, Fe::ONE));
        }
    }
    let mut counit = vec![Fe::ZERO; n];
    counit[g.identity()] = Fe::ONE;
    let antipode = Matrix::from_fn(field, n, n, |r, c| if r == g.inv(c) { Fe::ONE } else { Fe::ZERO });
    HopfData::from_sparse(Arc::new(algebra), coproduct, counit, antipode)?.validate()
}

fn dual_label(l: &str) -> String {
    match l.strip_suffix("^*") {
        Some(s) => s.to_string(),
        None => format!("{l}^*"),
    }
}

/// `H*` on the dual basis. Product is the transpose of `Δ`, coproduct the
/// transpose of the product, unit `ε`, counit evaluation at `1`, antipode
/// `Sᵀ`. Taking the dual twice returns the original structure constants.
pub fn dual_hopf(h: &HopfData) -> Result<HopfData> {
    h.require_validated()?;
    let n = h.dim();
    let a = h.algebra();
    let f = h.field();
    let labels = a.labels().iter().map(|l| dual_label(l)).collect();
    let entries: Vec<(usize, usize, usize, Fe)> = (0..n)
        .flat_map(|k| h.coproduct_terms(k).map(move |(i, j, c)| (i, j, k, c)))
        .collect();
    let algebra = AlgebraData::from_structconst(f, labels, entries, h.counit().to_vec())?.validate()?;
    let mut coproduct = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in a.product(i, j) {
                coproduct[k].push((i * n + j, c));
            }
        }
    }
    HopfData::from_sparse(Arc::new(algebra), coproduct, a.unit().to_vec(), h.antipode().transpose())?.validate()
}
