use std::sync::Arc;

use super::{describe_vector, AlgebraData, ModuleRep};
use crate::error::{Error, Result};
use crate::exactfield::{unit_vector, Echelon, Fe, Matrix, Subspace};

/// Two-sided ideal of a validated algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis {
    algebra: Arc<AlgebraData>,
    space: Subspace,
}

impl IdealBasis {
    /// Checks closure under left and right multiplication.
    pub fn from_subspace(algebra: Arc<AlgebraData>, space: Subspace) -> Result<IdealBasis> {
        algebra.require_validated()?;
        if space.ambient_dim() != algebra.dim() {
            return Err(Error::Dimension(format!(
                "subspace of F^{} in an algebra of dimension {}",
                space.ambient_dim(),
                algebra.dim()
            )));
        }
        if let Some(detail) = ideal_violation(&algebra, &space) {
            return Err(Error::NotIdeal(detail));
        }
        Ok(IdealBasis { algebra, space })
    }

    /// Smallest two-sided ideal containing the given elements.
    pub fn generated(
        algebra: Arc<AlgebraData>,
        vectors: impl IntoIterator<Item = Vec<Fe>>,
    ) -> Result<IdealBasis> {
        algebra.require_validated()?;
        let n = algebra.dim();
        let mut span = Echelon::new(algebra.field(), n);
        let mut queue = Vec::new();
        for v in vectors {
            if v.len() != n {
                return Err(Error::Dimension("generator length".into()));
            }
            if span.insert(&v) {
                queue.push(v);
            }
        }
        let gens = algebra.generators().to_vec();
        let right: Vec<Matrix> = gens
            .iter()
            .map(|&g| algebra.right_mul_by(&unit_vector(n, g)))
            .collect();
        while let Some(w) = queue.pop() {
            for &g in &gens {
                let v = algebra.left_mul_matrix(g).mul_vec(&w);
                if span.insert(&v) {
                    queue.push(v);
                }
            }
            for r in &right {
                let v = r.mul_vec(&w);
                if span.insert(&v) {
                    queue.push(v);
                }
            }
        }
        let space = span.into_subspace();
        debug_assert!(ideal_violation(&algebra, &space).is_none());
        Ok(IdealBasis { algebra, space })
    }

    pub fn zero(algebra: Arc<AlgebraData>) -> IdealBasis {
        let space = Subspace::zero(algebra.field(), algebra.dim());
        IdealBasis { algebra, space }
    }

    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn contains(&self, v: &[Fe]) -> bool {
        self.space.contains(v)
    }

    /// Recheck closure; true for every value built through this module.
    pub fn verify_closure(&self) -> bool {
        ideal_violation(&self.algebra, &self.space).is_none()
    }

    /// `A / I` on the basis of standard vectors off the pivots of `I`, with
    /// the projection matrix `A -> A/I`. Errors if `I` is the whole algebra.
    pub fn quotient_algebra(&self) -> Result<(AlgebraData, Matrix)> {
        let a = &self.algebra;
        let comp = self.space.complement_indices();
        if comp.is_empty() {
            return Err(Error::NotIdeal("quotient by the whole algebra is zero".into()));
        }
        let labels: Vec<String> = comp.iter().map(|&i| a.labels()[i].clone()).collect();
        let q = AlgebraData::from_product_fn(
            a.field(),
            labels,
            |i, j| self.space.quotient_coords(&a.product_dense(comp[i], comp[j])),
            self.space.quotient_coords(a.unit()),
        )?
        .validate()?;
        Ok((q, self.space.quotient_projection()))
    }
}

fn ideal_violation(a: &AlgebraData, space: &Subspace) -> Option<String> {
    let n = a.dim();
    for r in 0..space.dim() {
        let v = space.vector(r);
        for i in 0..n {
            let b = unit_vector(n, i);
            if !space.contains(&a.mul(&b, v)) {
                return Some(format!("{} * ({}) leaves the subspace", a.labels()[i], a.describe(v)));
            }
            if !space.contains(&a.mul(v, &b)) {
                return Some(format!("({}) * {} leaves the subspace", a.describe(v), a.labels()[i]));
            }
        }
    }
    None
}

/// `{x : rho(x) = 0}`.
pub fn annihilator(m: &ModuleRep) -> IdealBasis {
    let a = m.algebra().clone();
    let cols: Vec<Vec<Fe>> = m.actions().iter().map(|x| x.vectorize()).collect();
    let d2 = m.dim() * m.dim();
    let system = Matrix::from_cols(a.field(), d2, &cols);
    let space = Subspace::from_vectors(a.field(), a.dim(), system.kernel());
    IdealBasis { algebra: a, space }
}

pub fn ideal_sum(i: &IdealBasis, j: &IdealBasis) -> Result<IdealBasis> {
    if i.algebra != j.algebra {
        return Err(Error::AlgebraMismatch);
    }
    Ok(IdealBasis {
        algebra: i.algebra.clone(),
        space: i.space.sum(&j.space),
    })
}

/// `IJ`, spanned by products of basis vectors.
pub fn ideal_product(i: &IdealBasis, j: &IdealBasis) -> Result<IdealBasis> {
    if i.algebra != j.algebra {
        return Err(Error::AlgebraMismatch);
    }
    let a = &i.algebra;
    let vs = i.space.vectors();
    let ws = j.space.vectors();
    let products = vs
        .iter()
        .flat_map(|x| ws.iter().map(move |y| a.mul(x, y)));
    Ok(IdealBasis {
        algebra: a.clone(),
        space: Subspace::from_vectors(a.field(), a.dim(), products),
    })
}

impl IdealBasis {
    pub fn intersect(&self, other: &IdealBasis) -> Result<IdealBasis> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        Ok(IdealBasis {
            algebra: self.algebra.clone(),
            space: self.space.intersect(&other.space),
        })
    }
}

/// Unital subalgebra `K` of a validated algebra, carried with a standalone
/// copy of `K` whose basis is the echelon basis of the subspace.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    ambient: Arc<AlgebraData>,
    space: Subspace,
    algebra: Arc<AlgebraData>,
}

impl Subalgebra {
    pub fn new(ambient: Arc<AlgebraData>, space: Subspace) -> Result<Subalgebra> {
        ambient.require_validated()?;
        let n = ambient.dim();
        if space.ambient_dim() != n {
            return Err(Error::Dimension(format!(
                "subspace of F^{} in an algebra of dimension {n}",
                space.ambient_dim()
            )));
        }
        let unit = space
            .coords(ambient.unit())
            .ok_or_else(|| Error::NotSubalgebra("does not contain the unit".into()))?;
        let basis = space.vectors();
        let m = basis.len();
        let mut products = Vec::with_capacity(m * m);
        for (r, x) in basis.iter().enumerate() {
            for (s, y) in basis.iter().enumerate() {
                let xy = ambient.mul(x, y);
                let c = space.coords(&xy).ok_or_else(|| {
                    Error::NotSubalgebra(format!(
                        "product of basis vectors {r} and {s} ({}) leaves the subspace",
                        ambient.describe(&xy)
                    ))
                })?;
                products.push(c);
            }
        }
        let labels = basis
            .iter()
            .map(|v| describe_vector(ambient.field(), ambient.labels(), v))
            .collect();
        let mut it = products.into_iter();
        let k = AlgebraData::from_product_fn(ambient.field(), labels, |_, _| it.next().unwrap(), unit)?
            .validate()?;
        Ok(Subalgebra {
            ambient,
            space,
            algebra: Arc::new(k),
        })
    }

    pub fn ambient(&self) -> &Arc<AlgebraData> {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn to_ambient(&self, coords: &[Fe]) -> Vec<Fe> {
        self.space.combine(coords)
    }

    pub fn to_local(&self, v: &[Fe]) -> Option<Vec<Fe>> {
        self.space.coords(v)
    }

    /// Ambient images of the standalone basis, for restricting modules.
    pub fn inclusion_images(&self) -> Vec<Vec<Fe>> {
        self.space.vectors()
    }

    /// Restriction of an ambient module to this subalgebra.
    pub fn restrict(&self, m: &ModuleRep) -> Result<ModuleRep> {
        if m.algebra() != &self.ambient {
            return Err(Error::AlgebraMismatch);
        }
        m.pull_back(self.algebra.clone(), &self.inclusion_images())
    }
}

/// `P ∩ K` as an ideal of `K`, in the coordinates of the standalone `K`.
pub fn intersect_subspace(p: &IdealBasis, k: &Subalgebra) -> Result<IdealBasis> {
    if p.algebra != k.ambient {
        return Err(Error::AlgebraMismatch);
    }
    let inter = p.space.intersect(&k.space);
    let local = inter
        .vectors()
        .into_iter()
        .map(|v| k.to_local(&v).expect("intersection lies in K"));
    let space = Subspace::from_vectors(k.algebra.field(), k.dim(), local);
    Ok(IdealBasis {
        algebra: k.algebra.clone(),
        space,
    })
}

/// `span{a x : a in A, x in W}`.
pub fn left_multiples(a: &AlgebraData, w: &Subspace) -> Subspace {
    let vs = w.vectors();
    let n = a.dim();
    let prods = (0..n).flat_map(|i| vs.iter().map(move |x| a.left_mul_matrix(i).mul_vec(x)));
    Subspace::from_vectors(a.field(), n, prods)
}

/// `span{x a : a in A, x in W}`.
pub fn right_multiples(a: &AlgebraData, w: &Subspace) -> Subspace {
    let vs = w.vectors();
    let n = a.dim();
    let prods = (0..n).flat_map(|i| {
        let b = unit_vector(n, i);
        vs.iter().map(move |x| a.mul(x, &b)).collect::<Vec<_>>()
    });
    Subspace::from_vectors(a.field(), n, prods)
}
