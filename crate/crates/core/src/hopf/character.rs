use std::cmp::Ordering;
use std::sync::Arc;

use super::HopfData;
use crate::algebra::{regular_module, AlgebraData, ModuleRep};
use crate::error::{Error, Result};
use crate::exactfield::{Fe, Matrix};

/// Algebra homomorphism `H -> k`, stored as its values on the basis.
#[derive(Clone, Debug)]
pub struct Character {
    hopf: Arc<HopfData>,
    row: Vec<Fe>,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.row == other.row && self.hopf == other.hopf
    }
}

impl Eq for Character {}

impl PartialOrd for Character {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Character {
    fn cmp(&self, other: &Self) -> Ordering {
        let a: Vec<u32> = self.row.iter().map(|c| c.code()).collect();
        let b: Vec<u32> = other.row.iter().map(|c| c.code()).collect();
        a.cmp(&b)
    }
}

impl Character {
    /// Checks multiplicativity on basis pairs and `χ(1) = 1`.
    pub fn new(hopf: Arc<HopfData>, row: Vec<Fe>) -> Result<Character> {
        hopf.require_validated()?;
        let a = hopf.algebra();
        let f = a.field();
        let n = a.dim();
        if row.len() != n {
            return Err(Error::Dimension(format!("character row of length {}", row.len())));
        }
        let eval = |x: &[Fe]| crate::exactfield::dot(f, &row, x);
        if eval(a.unit()) != Fe::ONE {
            return Err(Error::Axiom("character does not send 1 to 1".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if eval(&a.product_dense(i, j)) != f.mul(row[i], row[j]) {
                    return Err(Error::Axiom(format!(
                        "character not multiplicative on ({}, {})",
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(Character { hopf, row })
    }

    pub fn counit(hopf: &Arc<HopfData>) -> Character {
        Character {
            hopf: hopf.clone(),
            row: hopf.counit().to_vec(),
        }
    }

    pub fn hopf(&self) -> &Arc<HopfData> {
        &self.hopf
    }

    pub fn row(&self) -> &[Fe] {
        &self.row
    }

    pub fn eval(&self, x: &[Fe]) -> Fe {
        crate::exactfield::dot(self.hopf.field(), &self.row, x)
    }

    pub fn is_counit(&self) -> bool {
        self.row == self.hopf.counit()
    }

    /// The one-dimensional module `k_χ`.
    pub fn module(&self) -> ModuleRep {
        let f = self.hopf.field();
        let action = self
            .row
            .iter()
            .map(|&c| Matrix::from_data(f, 1, 1, vec![c]))
            .collect();
        ModuleRep::from_parts(self.hopf.algebra().clone(), action).expect("shapes agree")
    }
}

/// `(χ * ψ)(h) = Σ χ(h₁) ψ(h₂)`.
pub fn convolution(chi: &Character, psi: &Character) -> Result<Character> {
    if chi.hopf != psi.hopf {
        return Err(Error::AlgebraMismatch);
    }
    let h = &chi.hopf;
    let f = h.field();
    let row = (0..h.dim())
        .map(|i| {
            h.coproduct_terms(i).fold(Fe::ZERO, |acc, (a, b, c)| {
                f.add(acc, f.mul(c, f.mul(chi.row[a], psi.row[b])))
            })
        })
        .collect();
    Ok(Character {
        hopf: h.clone(),
        row,
    })
}

/// `χ ∘ S`, checked to be a two-sided convolution inverse.
pub fn convolution_inverse(chi: &Character) -> Result<Character> {
    let h = &chi.hopf;
    let row = (0..h.dim()).map(|j| chi.eval(&h.antipode().col(j))).collect();
    let inv = Character {
        hopf: h.clone(),
        row,
    };
    if !convolution(chi, &inv)?.is_counit() || !convolution(&inv, chi)?.is_counit() {
        return Err(Error::Verification("χ ∘ S is not a convolution inverse of χ".into()));
    }
    Ok(inv)
}

/// Unital multiplicative linear map; column `j` of `matrix` is the image of
/// `b_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMorphism {
    source: Arc<AlgebraData>,
    target: Arc<AlgebraData>,
    matrix: Matrix,
    automorphism: bool,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<AlgebraData>, target: Arc<AlgebraData>, matrix: Matrix) -> Result<AlgebraMorphism> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::Dimension("morphism matrix shape".into()));
        }
        let n = source.dim();
        if matrix.mul_vec(source.unit()) != target.unit() {
            return Err(Error::Verification("morphism is not unital".into()));
        }
        let cols: Vec<Vec<Fe>> = (0..n).map(|j| matrix.col(j)).collect();
        for i in 0..n {
            for j in 0..n {
                let lhs = matrix.mul_vec(&source.product_dense(i, j));
                if lhs != target.mul(&cols[i], &cols[j]) {
                    return Err(Error::Verification(format!(
                        "morphism not multiplicative on ({}, {})",
                        source.labels()[i],
                        source.labels()[j]
                    )));
                }
            }
        }
        let automorphism = source == target && matrix.is_invertible();
        Ok(AlgebraMorphism {
            source,
            target,
            matrix,
            automorphism,
        })
    }

    pub fn source(&self) -> &Arc<AlgebraData> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraData> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_automorphism(&self) -> bool {
        self.automorphism
    }

    pub fn apply(&self, x: &[Fe]) -> Vec<Fe> {
        self.matrix.mul_vec(x)
    }

    /// Images of the source basis.
    pub fn images(&self) -> Vec<Vec<Fe>> {
        (0..self.matrix.cols()).map(|j| self.matrix.col(j)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if other.target != self.source {
            return Err(Error::AlgebraMismatch);
        }
        let matrix = self.matrix.mul(&other.matrix);
        let automorphism = other.source == self.target && matrix.is_invertible();
        Ok(AlgebraMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            matrix,
            automorphism,
        })
    }

    /// Pulls a module over the target back to the source along this map.
    pub fn pull_back(&self, m: &ModuleRep) -> Result<ModuleRep> {
        if m.algebra() != &self.target {
            return Err(Error::AlgebraMismatch);
        }
        m.pull_back(self.source.clone(), &self.images())
    }
}

/// `θ_χ(h) = Σ χ(h₁) h₂`, checked to be an automorphism whose inverse is
/// `θ_{χ∘S}`.
pub fn theta_automorphism(chi: &Character) -> Result<AlgebraMorphism> {
    let theta = theta_unchecked(chi);
    let a = chi.hopf.algebra().clone();
    let m = AlgebraMorphism::new(a.clone(), a, theta)?;
    let inv = theta_unchecked(&convolution_inverse(chi)?);
    if !m.matrix.mul(&inv).is_identity() || !inv.mul(&m.matrix).is_identity() {
        return Err(Error::Verification("θ_χ ∘ θ_(χ∘S) is not the identity".into()));
    }
    Ok(AlgebraMorphism {
        automorphism: true,
        ..m
    })
}

fn theta_unchecked(chi: &Character) -> Matrix {
    let h = &chi.hopf;
    let f = h.field();
    let n = h.dim();
    let cols: Vec<Vec<Fe>> = (0..n)
        .map(|i| {
            let mut v = vec![Fe::ZERO; n];
            for (a, b, c) in h.coproduct_terms(i) {
                v[b] = f.mul_add(v[b], c, chi.row[a]);
            }
            v
        })
        .collect();
    Matrix::from_cols(f, n, &cols)
}

/// `k_χ ⊗ V`: `h` acts by `Σ χ(h₁) ρ(h₂)`, which is `ρ ∘ θ_χ` on the nose.
pub fn twist_module(chi: &Character, v: &ModuleRep) -> Result<ModuleRep> {
    let a = chi.hopf.algebra();
    if v.algebra() != a {
        return Err(Error::AlgebraMismatch);
    }
    let theta = theta_unchecked(chi);
    let images: Vec<Vec<Fe>> = (0..a.dim()).map(|j| theta.col(j)).collect();
    v.pull_back(a.clone(), &images)
}

/// Every character of `H`: the one-dimensional composition factors of the
/// regular module, sorted by their value rows.
pub fn characters(h: &Arc<HopfData>, seed: u64) -> Result<Vec<Character>> {
    h.require_validated()?;
    let reg = regular_module(h.algebra())?;
    let series = crate::rep::meataxe_chop(&reg, seed)?;
    let mut out: Vec<Character> = series
        .factors
        .iter()
        .filter(|fct| fct.module.dim() == 1)
        .map(|fct| {
            let row = (0..h.dim()).map(|i| fct.module.action(i).get(0, 0)).collect();
            Character::new(h.clone(), row)
        })
        .collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}
