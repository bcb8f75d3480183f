use std::sync::Arc;

use super::algebras::{dual_group_algebra, group_algebra};
use super::group::{GroupTable, Subgroup};
use crate::algebra::AlgebraData;
use crate::error::{Error, Result};
use crate::exactfield::{Fe, Field, Matrix};
use crate::hopf::HopfData;

/// Action `b ⇀ a` of a Hopf algebra `B` on an algebra `A`. `matrices[i]`
/// has column `j` equal to `b_i ⇀ a_j`.
#[derive(Clone, Debug)]
pub struct ActionData {
    acting: Arc<HopfData>,
    on: Arc<HopfData>,
    matrices: Vec<Matrix>,
}

impl ActionData {
    /// Checks that `A` is a `B`-module (unit acts as the identity, action is
    /// associative) and that the measuring conditions hold.
    pub fn new(acting: Arc<HopfData>, on: Arc<HopfData>, matrices: Vec<Matrix>) -> Result<ActionData> {
        acting.require_validated()?;
        on.require_validated()?;
        if acting.field() != on.field() {
            return Err(Error::FieldMismatch(acting.field().to_string(), on.field().to_string()));
        }
        let (nb, na) = (acting.dim(), on.dim());
        if matrices.len() != nb || matrices.iter().any(|m| m.rows() != na || m.cols() != na) {
            return Err(Error::Dimension(format!("action needs {nb} matrices of size {na}x{na}")));
        }
        let act = ActionData { acting, on, matrices };
        act.check()?;
        Ok(act)
    }

    fn check(&self) -> Result<()> {
        let b = self.acting.algebra();
        let a = self.on.algebra();
        let f = a.field();
        let (nb, na) = (b.dim(), a.dim());
        if !self.act_by(b.unit()).is_identity() {
            return Err(Error::Action("unit of B does not act as the identity".into()));
        }
        for i in 0..nb {
            for k in 0..nb {
                let lhs = self.act_by(&b.product_dense(i, k));
                let rhs = self.matrices[i].mul(&self.matrices[k]);
                if lhs != rhs {
                    return Err(Error::Action(format!("(b{i} b{k})⇀a differs from b{i}⇀(b{k}⇀a)")));
                }
            }
        }
        for i in 0..nb {
            let eps = self.acting.counit()[i];
            let lhs = self.matrices[i].mul_vec(a.unit());
            let rhs: Vec<Fe> = a.unit().iter().map(|&u| f.mul(eps, u)).collect();
            if lhs != rhs {
                return Err(Error::Action(format!("b{i}⇀1 differs from ε(b{i})1")));
            }
            for j in 0..na {
                for l in 0..na {
                    let lhs = self.matrices[i].mul_vec(&a.product_dense(j, l));
                    let mut rhs = vec![Fe::ZERO; na];
                    for (x, y, c) in self.acting.coproduct_terms(i) {
                        let p = a.mul(&self.matrices[x].col(j), &self.matrices[y].col(l));
                        crate::exactfield::axpy(f, &mut rhs, c, &p);
                    }
                    if lhs != rhs {
                        return Err(Error::Action(format!(
                            "measuring fails at (b{i}, a{j}, a{l}): {} vs {}",
                            a.describe(&lhs),
                            a.describe(&rhs)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `b ⇀ a = ε(b) a`.
    pub fn trivial(acting: Arc<HopfData>, on: Arc<HopfData>) -> Result<ActionData> {
        let n = on.dim();
        let f = on.field().clone();
        let matrices = acting.counit().iter().map(|&e| Matrix::identity(&f, n).scale(e)).collect();
        ActionData::new(acting, on, matrices)
    }

    pub fn acting(&self) -> &Arc<HopfData> {
        &self.acting
    }

    pub fn on(&self) -> &Arc<HopfData> {
        &self.on
    }

    pub fn matrix(&self, i: usize) -> &Matrix {
        &self.matrices[i]
    }

    /// Matrix of `x ⇀ -` for `x ∈ B`.
    pub fn act_by(&self, x: &[Fe]) -> Matrix {
        let n = self.on.dim();
        let f = self.on.field();
        let mut m = Matrix::zeros(f, n, n);
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &self.matrices[i]);
            }
        }
        m
    }
}

/// `(kY)*` acting on `kX` for `X ≤ Y` by `e_y ⇀ x = δ_{y,x} x`.
pub fn translation_action(y: &GroupTable, x: &Subgroup, field: &Field) -> Result<ActionData> {
    let sub = Subgroup::new(y, x.elements())?;
    let b = Arc::new(dual_group_algebra(y, field)?);
    let a = Arc::new(group_algebra(sub.table(), field)?);
    let nx = sub.order();
    let matrices = (0..y.order())
        .map(|g| {
            Matrix::from_fn(field, nx, nx, |r, c| {
                if r == c && sub.elements()[c] == g {
                    Fe::ONE
                } else {
                    Fe::ZERO
                }
            })
        })
        .collect();
    ActionData::new(b, a, matrices)
}

/// Smash product `A # B` on `A ⊗ B` (`a_i # b_j` at `i * dim B + j`) with
/// `(a#b)(a'#b') = Σ a(b₁⇀a') # b₂b'`. Validated before return.
pub fn smash_algebra(act: &ActionData) -> Result<AlgebraData> {
    let a = act.on().algebra();
    let bh = act.acting();
    let b = bh.algebra();
    let f = a.field();
    let (na, nb) = (a.dim(), b.dim());
    let labels = a
        .labels()
        .iter()
        .flat_map(|x| b.labels().iter().map(move |y| format!("{x}#{y}")))
        .collect();
    let unit = a
        .unit()
        .iter()
        .flat_map(|&x| b.unit().iter().map(move |&y| f.mul(x, y)))
        .collect();
    let algebra = AlgebraData::from_product_fn(
        f,
        labels,
        |s, t| {
            let (i, j) = (s / nb, s % nb);
            let (k, l) = (t / nb, t % nb);
            let mut out = vec![Fe::ZERO; na * nb];
            for (x, y, c) in bh.coproduct_terms(j) {
                let left = a.mul(&a.basis_vector(i), &act.matrix(x).col(k));
                let right = b.product_dense(y, l);
                for (p, &u) in left.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    let cu = f.mul(c, u);
                    for (q, &v) in right.iter().enumerate() {
                        let slot = &mut out[p * nb + q];
                        *slot = f.mul_add(*slot, cu, v);
                    }
                }
            }
            out
        },
        unit,
    )?;
    algebra.validate()
}

/// Smash product with user-supplied coalgebra data, axiom-checked.
pub fn smash_hopf(act: &ActionData, coproduct: Vec<Vec<Fe>>, counit: Vec<Fe>, antipode: Matrix) -> Result<HopfData> {
    let a = Arc::new(smash_algebra(act)?);
    HopfData::new(a, coproduct, counit, antipode)?.validate()
}
