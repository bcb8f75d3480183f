use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{AlgebraData, ModuleRep};
use crate::error::{Error, Result};
use crate::exactfield::{unit_vector, Fe, Field, FieldSpec, Matrix, Subspace};
use crate::hopf::HopfData;

/// Element as a length-`k` coefficient array, constant term first.
pub fn element_json(f: &Field, a: Fe) -> Value {
    Value::from(f.coeffs(a))
}

/// Accepts a coefficient array or a plain integer (read modulo `p`).
pub fn element_from_json(f: &Field, v: &Value) -> Result<Fe> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|n| f.from_int(n))
            .ok_or_else(|| Error::Parse(format!("field element {n} is not an integer"))),
        Value::Array(cs) => {
            let coeffs = cs
                .iter()
                .map(|c| {
                    c.as_u64()
                        .and_then(|c| u32::try_from(c).ok())
                        .ok_or_else(|| Error::Parse(format!("bad coefficient {c}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            f.from_coeffs(&coeffs)
        }
        other => Err(Error::Parse(format!("expected a field element, found {other}"))),
    }
}

pub fn vector_json(f: &Field, v: &[Fe]) -> Vec<Value> {
    v.iter().map(|&a| element_json(f, a)).collect()
}

pub fn vector_from_json(f: &Field, v: &[Value], len: usize) -> Result<Vec<Fe>> {
    if v.len() != len {
        return Err(Error::Parse(format!("vector of length {} where {len} was expected", v.len())));
    }
    v.iter().map(|x| element_from_json(f, x)).collect()
}

fn matrix_from_rows(f: &Field, rows: &[Vec<Value>], n: usize, m: usize) -> Result<Matrix> {
    if rows.len() != n {
        return Err(Error::Parse(format!("matrix with {} rows where {n} were expected", rows.len())));
    }
    let data = rows
        .iter()
        .map(|r| vector_from_json(f, r, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(f, m, &data))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default)]
    pub labels: Vec<String>,
    pub structconst: Vec<(usize, usize, usize, Value)>,
    pub unit: Vec<Value>,
}

impl AlgebraFile {
    pub fn from_algebra(a: &AlgebraData) -> AlgebraFile {
        let f = a.field();
        AlgebraFile {
            field: f.spec(),
            dim: a.dim(),
            labels: a.labels().to_vec(),
            structconst: a
                .structconst()
                .into_iter()
                .map(|(i, j, k, c)| (i, j, k, element_json(f, c)))
                .collect(),
            unit: vector_json(f, a.unit()),
        }
    }

    /// Unvalidated algebra.
    pub fn to_algebra(&self) -> Result<AlgebraData> {
        let f = Field::from_spec(&self.field)?;
        let labels = if self.labels.is_empty() {
            (0..self.dim).map(|i| format!("b{i}")).collect()
        } else if self.labels.len() == self.dim {
            self.labels.clone()
        } else {
            return Err(Error::Parse(format!("{} labels for dimension {}", self.labels.len(), self.dim)));
        };
        let entries = self
            .structconst
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, element_from_json(&f, c)?)))
            .collect::<Result<Vec<_>>>()?;
        let unit = vector_from_json(&f, &self.unit, self.dim)?;
        AlgebraData::from_structconst(&f, labels, entries, unit).map_err(|e| match e {
            Error::Dimension(s) => Error::Parse(s),
            other => other,
        })
    }
}

/// Row `i` of `coproduct` is `Δ(b_i)` over the `n²` tensor basis; row `i`
/// of `antipode` is `S(b_i)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HopfFile {
    #[serde(flatten)]
    pub algebra: AlgebraFile,
    pub coproduct: Vec<Vec<Value>>,
    pub counit: Vec<Value>,
    pub antipode: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

impl HopfFile {
    pub fn from_hopf(h: &HopfData) -> HopfFile {
        let f = h.field();
        let n = h.dim();
        HopfFile {
            algebra: AlgebraFile::from_algebra(h.algebra()),
            coproduct: (0..n).map(|i| vector_json(f, &h.coproduct_row(i))).collect(),
            counit: vector_json(f, h.counit()),
            antipode: (0..n).map(|i| vector_json(f, &h.antipode().col(i))).collect(),
            metadata: None,
        }
    }

    /// Unvalidated Hopf data; the algebra is validated only if it passes.
    pub fn to_hopf(&self) -> Result<HopfData> {
        let a = self.algebra.to_algebra()?;
        let f = a.field().clone();
        let n = a.dim();
        let a = match a.clone().validate() {
            Ok(v) => v,
            Err(_) => a,
        };
        let coproduct = self
            .coproduct
            .iter()
            .map(|r| vector_from_json(&f, r, n * n))
            .collect::<Result<Vec<_>>>()?;
        if coproduct.len() != n {
            return Err(Error::Parse(format!("coproduct has {} rows, expected {n}", coproduct.len())));
        }
        let counit = vector_from_json(&f, &self.counit, n)?;
        let antipode = matrix_from_rows(&f, &self.antipode, n, n)?.transpose();
        HopfData::new(Arc::new(a), coproduct, counit, antipode)
    }
}

/// `action[i]` is the matrix of `b_i`, row by row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dim: usize,
    pub action: Vec<Vec<Vec<Value>>>,
}

impl ModuleFile {
    pub fn from_module(m: &ModuleRep) -> ModuleFile {
        let f = m.field();
        ModuleFile {
            dim: m.dim(),
            action: m
                .actions()
                .iter()
                .map(|a| a.row_vectors().iter().map(|r| vector_json(f, r)).collect())
                .collect(),
        }
    }

    pub fn to_module(&self, a: &Arc<AlgebraData>) -> Result<ModuleRep> {
        let f = a.field();
        if self.action.len() != a.dim() {
            return Err(Error::Parse(format!(
                "module lists {} matrices for an algebra of dimension {}",
                self.action.len(),
                a.dim()
            )));
        }
        let mats = self
            .action
            .iter()
            .map(|m| matrix_from_rows(f, m, self.dim, self.dim))
            .collect::<Result<Vec<_>>>()?;
        ModuleRep::new(a.clone(), mats)
    }
}

/// A basis vector given either by its coordinates or by a basis label.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VectorSpec {
    Label(String),
    Coords(Vec<Value>),
}

/// A subspace: `"unit"`, `"all"`, or a list of spanning vectors.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubspaceSpec {
    Keyword(String),
    Vectors(Vec<VectorSpec>),
}

impl SubspaceSpec {
    pub fn resolve(&self, a: &AlgebraData) -> Result<Subspace> {
        let f = a.field();
        let n = a.dim();
        match self {
            SubspaceSpec::Keyword(k) if k == "unit" => Ok(Subspace::from_vectors(f, n, [a.unit().to_vec()])),
            SubspaceSpec::Keyword(k) if k == "all" => Ok(Subspace::full(f, n)),
            SubspaceSpec::Keyword(k) => Err(Error::Parse(format!("unknown subspace keyword {k:?}"))),
            SubspaceSpec::Vectors(vs) => {
                let vectors = vs
                    .iter()
                    .map(|v| match v {
                        VectorSpec::Label(l) => a
                            .labels()
                            .iter()
                            .position(|x| x == l)
                            .map(|i| unit_vector(n, i))
                            .ok_or_else(|| Error::Parse(format!("no basis element labelled {l:?}"))),
                        VectorSpec::Coords(c) => vector_from_json(f, c, n),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Subspace::from_vectors(f, n, vectors))
            }
        }
    }

    /// Echelon basis, written as coordinates.
    pub fn from_subspace(s: &Subspace) -> SubspaceSpec {
        let f = s.field();
        SubspaceSpec::Vectors(
            s.vectors()
                .iter()
                .map(|v| VectorSpec::Coords(vector_json(f, v)))
                .collect(),
        )
    }

    /// Span of basis elements named by label.
    pub fn labels<S: AsRef<str>>(labels: &[S]) -> SubspaceSpec {
        SubspaceSpec::Vectors(labels.iter().map(|l| VectorSpec::Label(l.as_ref().to_string())).collect())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubspaceFile {
    pub basis: SubspaceSpec,
}

/// Chain `k = H_0 ⊂ … ⊂ H_t = H`, smallest first.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesFile {
    pub chain: Vec<SubspaceSpec>,
}

impl SeriesFile {
    pub fn resolve(&self, a: &AlgebraData) -> Result<Vec<Subspace>> {
        self.chain.iter().map(|s| s.resolve(a)).collect()
    }
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
