use std::fmt;
use std::sync::Arc;

use super::{AlgebraData, AxiomReport};
use crate::error::{Error, Result};
use crate::exactfield::{Embedding, Fe, Field, Matrix, Subspace};

/// Finite-dimensional left module: one action matrix per basis element.
#[derive(Clone)]
pub struct ModuleRep {
    algebra: Arc<AlgebraData>,
    dim: usize,
    action: Vec<Matrix>,
}

impl fmt::Debug for ModuleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleRep(dim {} over {:?})", self.dim, self.algebra)
    }
}

impl ModuleRep {
    /// Checked constructor: the algebra must be validated and the matrices
    /// must define an algebra homomorphism into `End(V)`.
    pub fn new(algebra: Arc<AlgebraData>, action: Vec<Matrix>) -> Result<ModuleRep> {
        algebra.require_validated()?;
        let m = Self::from_parts(algebra, action)?;
        check_module_axioms(&m).into_result()?;
        Ok(m)
    }

    /// Shape-checked only. Callers vouch for the module axioms.
    pub(crate) fn from_parts(algebra: Arc<AlgebraData>, action: Vec<Matrix>) -> Result<ModuleRep> {
        if action.len() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "{} action matrices for an algebra of dimension {}",
                action.len(),
                algebra.dim()
            )));
        }
        let dim = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Dimension(format!(
                    "action matrix is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch(
                    m.field().to_string(),
                    algebra.field().to_string(),
                ));
            }
        }
        Ok(ModuleRep { algebra, dim, action })
    }

    /// The zero module.
    pub fn zero(algebra: Arc<AlgebraData>) -> ModuleRep {
        let f = algebra.field().clone();
        let action = vec![Matrix::zeros(&f, 0, 0); algebra.dim()];
        ModuleRep { algebra, dim: 0, action }
    }

    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self, i: usize) -> &Matrix {
        &self.action[i]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    /// `rho(x)` for an arbitrary element.
    pub fn act(&self, x: &[Fe]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim, self.dim);
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                m.add_scaled(c, &self.action[i]);
            }
        }
        m
    }

    /// Action matrices of the algebra generators.
    pub fn generator_actions(&self) -> Vec<&Matrix> {
        self.algebra.generators().iter().map(|&g| &self.action[g]).collect()
    }

    pub fn is_submodule(&self, w: &Subspace) -> bool {
        w.ambient_dim() == self.dim
            && self.generator_actions().iter().all(|m| {
                (0..w.dim()).all(|r| w.contains(&m.mul_vec(w.vector(r))))
            })
    }

    /// Restriction of the action to an invariant subspace, in the echelon
    /// basis of `w`.
    pub fn submodule(&self, w: &Subspace) -> Result<ModuleRep> {
        if !self.is_submodule(w) {
            return Err(Error::Action("subspace is not invariant".into()));
        }
        let f = self.field();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = (0..w.dim())
                    .map(|r| w.coords(&m.mul_vec(w.vector(r))).expect("invariant"))
                    .collect();
                Matrix::from_cols(f, w.dim(), &cols)
            })
            .collect();
        Ok(ModuleRep {
            algebra: self.algebra.clone(),
            dim: w.dim(),
            action,
        })
    }

    /// Action on `V / w`, in the basis of standard vectors off the pivots.
    pub fn quotient(&self, w: &Subspace) -> Result<ModuleRep> {
        if !self.is_submodule(w) {
            return Err(Error::Action("subspace is not invariant".into()));
        }
        let f = self.field();
        let comp = w.complement_indices();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = comp
                    .iter()
                    .map(|&c| w.quotient_coords(&m.col(c)))
                    .collect();
                Matrix::from_cols(f, comp.len(), &cols)
            })
            .collect();
        Ok(ModuleRep {
            algebra: self.algebra.clone(),
            dim: comp.len(),
            action,
        })
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> Result<ModuleRep> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let (a, b) = (self.dim, other.dim);
        let f = self.field();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(x, y)| {
                Matrix::from_fn(f, a + b, a + b, |r, c| match (r < a, c < a) {
                    (true, true) => x.get(r, c),
                    (false, false) => y.get(r - a, c - a),
                    _ => Fe::ZERO,
                })
            })
            .collect();
        Ok(ModuleRep {
            algebra: self.algebra.clone(),
            dim: a + b,
            action,
        })
    }

    /// Module over `target` in which basis element `j` acts as
    /// `rho(images[j])`. `images` must describe an algebra homomorphism
    /// `target -> self.algebra()`; this is not rechecked.
    pub fn pull_back(&self, target: Arc<AlgebraData>, images: &[Vec<Fe>]) -> Result<ModuleRep> {
        if images.len() != target.dim() {
            return Err(Error::Dimension(format!(
                "{} images for an algebra of dimension {}",
                images.len(),
                target.dim()
            )));
        }
        if target.field() != self.field() {
            return Err(Error::FieldMismatch(
                target.field().to_string(),
                self.field().to_string(),
            ));
        }
        let action = images.iter().map(|x| self.act(x)).collect();
        Ok(ModuleRep {
            algebra: target,
            dim: self.dim,
            action,
        })
    }

    /// Same module with every matrix entry pushed through `emb`, over the
    /// extended algebra `ext` (which must have the same basis).
    pub fn extend_scalars(&self, emb: &Embedding, ext: Arc<AlgebraData>) -> Result<ModuleRep> {
        if ext.dim() != self.algebra.dim() || ext.field() != emb.target() {
            return Err(Error::AlgebraMismatch);
        }
        let t = emb.target().clone();
        let action = self
            .action
            .iter()
            .map(|m| m.map_entries(&t, |c| emb.apply(c)))
            .collect();
        Ok(ModuleRep {
            algebra: ext,
            dim: self.dim,
            action,
        })
    }
}

impl PartialEq for ModuleRep {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.action == other.action && self.algebra == other.algebra
    }
}

/// Multiplicativity on every basis pair and `rho(1) = I`.
pub fn check_module_axioms(m: &ModuleRep) -> AxiomReport {
    let a = &m.algebra;
    let n = a.dim();
    let mut report = AxiomReport::new();
    let mut hom = Ok(());
    'outer: for i in 0..n {
        for j in 0..n {
            let lhs = m.action[i].mul(&m.action[j]);
            let mut rhs = Matrix::zeros(m.field(), m.dim, m.dim);
            for &(k, c) in a.product(i, j) {
                rhs.add_scaled(c, &m.action[k]);
            }
            if lhs != rhs {
                hom = Err((
                    vec![i, j],
                    format!(
                        "rho({})rho({}) != rho({}*{})",
                        a.labels()[i],
                        a.labels()[j],
                        a.labels()[i],
                        a.labels()[j]
                    ),
                ));
                break 'outer;
            }
        }
    }
    report.record("module multiplicativity", hom);
    let one = m.act(a.unit());
    report.record(
        "module unit",
        if one.is_identity() {
            Ok(())
        } else {
            Err((vec![], "rho(1) is not the identity".into()))
        },
    );
    report
}

/// Left regular module `A` acting on itself.
pub fn regular_module(a: &Arc<AlgebraData>) -> Result<ModuleRep> {
    a.require_validated()?;
    let action = (0..a.dim()).map(|i| a.left_mul_matrix(i).clone()).collect();
    ModuleRep::from_parts(a.clone(), action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::tests_support::cyclic_algebra;
    use crate::exactfield::unit_vector;

    fn gf(p: u32) -> Field {
        Field::new(p, 1).unwrap()
    }

    #[test]
    fn regular_module_passes_axioms() {
        let a = Arc::new(cyclic_algebra(&gf(5), 4).validate().unwrap());
        let r = regular_module(&a).unwrap();
        assert!(check_module_axioms(&r).passed());
    }

    #[test]
    fn regular_module_refuses_unvalidated_algebra() {
        let a = Arc::new(cyclic_algebra(&gf(5), 4));
        assert!(matches!(regular_module(&a), Err(Error::Unvalidated(_))));
    }

    #[test]
    fn character_of_cyclic_group() {
        // g -> 2 is a character of C4 over GF(5) since 2^4 = 1.
        let f = gf(5);
        let a = Arc::new(cyclic_algebra(&f, 4).validate().unwrap());
        let action: Vec<Matrix> = (0..4)
            .map(|i| Matrix::from_data(&f, 1, 1, vec![f.pow(f.from_int(2), i)]))
            .collect();
        assert!(ModuleRep::new(a.clone(), action).is_ok());
        let bad: Vec<Matrix> = (0..4)
            .map(|i| Matrix::from_data(&f, 1, 1, vec![f.pow(f.from_int(3), i * i)]))
            .collect();
        let err = ModuleRep::new(a, bad).unwrap_err();
        assert!(matches!(err, Error::Axiom(_)));
    }

    #[test]
    fn submodule_and_quotient_dimensions() {
        let f = gf(3);
        let a = Arc::new(cyclic_algebra(&f, 3).validate().unwrap());
        let r = regular_module(&a).unwrap();
        // the trivial submodule spanned by g0+g1+g2
        let w = Subspace::from_vectors(&f, 3, [vec![Fe::ONE; 3]]);
        let s = r.submodule(&w).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.actions().iter().all(|m| m.is_identity()));
        let q = r.quotient(&w).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(check_module_axioms(&q).passed());
        let not_inv = Subspace::from_vectors(&f, 3, [unit_vector(3, 0)]);
        assert!(r.submodule(&not_inv).is_err());
    }

    #[test]
    fn direct_sum_is_a_module() {
        let f = gf(7);
        let a = Arc::new(cyclic_algebra(&f, 3).validate().unwrap());
        let r = regular_module(&a).unwrap();
        let s = r.direct_sum(&r).unwrap();
        assert_eq!(s.dim(), 6);
        assert!(check_module_axioms(&s).passed());
    }
}
