use std::sync::Arc;

use serde::Serialize;

use super::meataxe::{meataxe_chop, CompositionSeries};
use crate::algebra::{annihilator, ideal_product, regular_module, AlgebraData, IdealBasis, ModuleRep};
use crate::error::{Error, Result};
use crate::exactfield::{Embedding, FieldSpec};
use crate::hopf::HopfData;

/// `A ⊗ GF(q^m)`, with the embedding of the scalars.
pub fn extend_algebra(a: &AlgebraData, m: u32) -> Result<(Arc<AlgebraData>, Embedding)> {
    let target = a.field().extension(m)?;
    let emb = Embedding::new(a.field(), &target)?;
    Ok((Arc::new(a.extend_scalars(&emb)?), emb))
}

/// `V ⊗ GF(q^m)` over the extended algebra.
pub fn extend_module(v: &ModuleRep, m: u32) -> Result<ModuleRep> {
    let (ext, emb) = extend_algebra(v.algebra(), m)?;
    v.extend_scalars(&emb, ext)
}

pub fn extend_hopf(h: &HopfData, m: u32) -> Result<HopfData> {
    let target = h.field().extension(m)?;
    let emb = Embedding::new(h.field(), &target)?;
    h.extend_scalars(&emb)
}

/// Scalar extension over which every simple module of the algebra is
/// absolutely simple, with the chop of the extended regular module.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub degree: u32,
    pub algebra: Arc<AlgebraData>,
    pub embedding: Embedding,
    pub regular: CompositionSeries,
}

/// Extends by the endomorphism dimension of the first non-split simple and
/// re-chops until all simples are split. The total degree may not exceed
/// `dim A`.
pub fn splitting_field(a: &Arc<AlgebraData>, seed: u64) -> Result<Splitting> {
    a.require_validated()?;
    let cap = a.dim().max(1) as u32;
    let mut degree = 1u32;
    loop {
        let (ext, emb) = if degree == 1 {
            let emb = Embedding::new(a.field(), a.field())?;
            (a.clone(), emb)
        } else {
            extend_algebra(a, degree)?
        };
        let regular = meataxe_chop(&regular_module(&ext)?, seed)?;
        match regular.factors.iter().find(|f| f.endomorphism_dim > 1) {
            None => {
                return Ok(Splitting {
                    degree,
                    algebra: ext,
                    embedding: emb,
                    regular,
                })
            }
            Some(f) => {
                let next = degree * f.endomorphism_dim as u32;
                if next > cap {
                    return Err(Error::SplittingCap { degree: next, cap });
                }
                degree = next;
            }
        }
    }
}

/// Jacobson radical: the intersection of the annihilators of the simple
/// factors of the regular module. Nilpotency is checked before returning.
pub fn radical(a: &Arc<AlgebraData>, seed: u64) -> Result<IdealBasis> {
    a.require_validated()?;
    let series = meataxe_chop(&regular_module(a)?, seed)?;
    radical_from_series(a, &series)
}

pub(crate) fn radical_from_series(a: &Arc<AlgebraData>, series: &CompositionSeries) -> Result<IdealBasis> {
    let mut j = IdealBasis::from_subspace(a.clone(), crate::exactfield::Subspace::full(a.field(), a.dim()))?;
    for f in &series.factors {
        j = j.intersect(&annihilator(&f.module))?;
    }
    let mut power = j.clone();
    for _ in 0..=a.dim() {
        if power.dim() == 0 {
            return Ok(j);
        }
        power = ideal_product(&power, &j)?;
    }
    Err(Error::Verification(format!(
        "computed radical of dimension {} is not nilpotent",
        j.dim()
    )))
}

/// Dimensions of the simple modules after splitting, each with its
/// multiplicity in the regular module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleDimensions {
    pub extension_degree: u32,
    pub field: FieldSpec,
    pub simples: Vec<SimpleEntry>,
    pub semisimple: bool,
    pub radical_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleEntry {
    pub label: String,
    pub dim: usize,
    pub multiplicity: usize,
}

impl SimpleDimensions {
    pub fn dims(&self) -> Vec<usize> {
        self.simples.iter().map(|s| s.dim).collect()
    }
}

pub fn simple_dimensions(a: &Arc<AlgebraData>, seed: u64) -> Result<SimpleDimensions> {
    let split = splitting_field(a, seed)?;
    let rad = radical(a, seed)?;
    let simples: Vec<SimpleEntry> = split
        .regular
        .factors
        .iter()
        .map(|f| SimpleEntry {
            label: f.label.clone(),
            dim: f.module.dim(),
            multiplicity: f.multiplicity,
        })
        .collect();
    let semisimple = rad.dim() == 0;
    if semisimple {
        let sq: usize = simples.iter().map(|s| s.dim * s.dim).sum();
        if sq != a.dim() || simples.iter().any(|s| s.multiplicity != s.dim) {
            return Err(Error::Verification(format!(
                "split semisimple algebra of dimension {} has simple dimensions {:?}",
                a.dim(),
                simples.iter().map(|s| (s.dim, s.multiplicity)).collect::<Vec<_>>()
            )));
        }
    }
    Ok(SimpleDimensions {
        extension_degree: split.degree,
        field: split.algebra.field().spec(),
        simples,
        semisimple,
        radical_dim: rad.dim(),
    })
}
