//! Finite-dimensional associative unital algebras given by structure
//! constants, together with their modules and ideals.

mod ideal;
mod module;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

pub use ideal::{
    annihilator, ideal_product, ideal_sum, intersect_subspace, left_multiples, right_multiples,
    IdealBasis, Subalgebra,
};
pub use module::{check_module_axioms, regular_module, ModuleRep};

use crate::error::{Error, Result};
use crate::exactfield::{unit_vector, Echelon, Embedding, Fe, Field, Matrix, Subspace};

pub type SparseVec = Vec<(usize, Fe)>;

/// Outcome of an axiom check. Failures name the axiom and the basis indices
/// that witness the violation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub indices: Vec<usize>,
    pub detail: String,
}

impl AxiomReport {
    pub fn new() -> Self {
        AxiomReport { checks: Vec::new() }
    }

    pub fn pass(&mut self, axiom: &str) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            passed: true,
            violation: None,
        });
    }

    pub fn fail(&mut self, axiom: &str, indices: Vec<usize>, detail: impl Into<String>) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            passed: false,
            violation: Some(Violation {
                indices,
                detail: detail.into(),
            }),
        });
    }

    pub fn record(&mut self, axiom: &str, outcome: std::result::Result<(), (Vec<usize>, String)>) {
        match outcome {
            Ok(()) => self.pass(axiom),
            Err((idx, detail)) => self.fail(axiom, idx, detail),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    pub(crate) fn into_result(self) -> Result<()> {
        match self.first_failure() {
            None => Ok(()),
            Some(c) => {
                let v = c.violation.as_ref().expect("failed check carries a violation");
                Err(Error::Axiom(format!("{} at {:?}: {}", c.axiom, v.indices, v.detail)))
            }
        }
    }
}

impl Default for AxiomReport {
    fn default() -> Self {
        Self::new()
    }
}

/// Associative unital algebra over a finite field with basis `b_0..b_{n-1}`.
///
/// Products are kept sparse (`b_i b_j = sum c_k b_k`) and as dense
/// left-multiplication matrices. Operations that need the axioms to hold
/// refuse values that have not been through [`AlgebraData::validate`].
#[derive(Clone)]
pub struct AlgebraData {
    field: Field,
    labels: Vec<String>,
    products: Vec<SparseVec>,
    unit: Vec<Fe>,
    lmul: Vec<Matrix>,
    validated: bool,
    generators: OnceLock<Vec<usize>>,
}

impl fmt::Debug for AlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "AlgebraData(dim {}, over {}, labels {:?})",
            self.dim(),
            self.field,
            self.labels
        )
    }
}

impl PartialEq for AlgebraData {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.labels == other.labels
            && self.products == other.products
            && self.unit == other.unit
    }
}

impl AlgebraData {
    /// Unvalidated algebra from structure-constant entries `(i, j, k, c)`
    /// meaning `b_i b_j += c b_k`. Repeated entries accumulate.
    pub fn from_structconst(
        field: &Field,
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Fe)>,
        unit: Vec<Fe>,
    ) -> Result<AlgebraData> {
        let n = labels.len();
        let mut dense = vec![vec![Fe::ZERO; n]; n * n];
        for (i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::Dimension(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {n}"
                )));
            }
            let slot = &mut dense[i * n + j][k];
            *slot = field.add(*slot, c);
        }
        Self::from_dense_products(field, labels, dense, unit)
    }

    /// Unvalidated algebra from a product rule on basis indices.
    pub fn from_product_fn(
        field: &Field,
        labels: Vec<String>,
        mut product: impl FnMut(usize, usize) -> Vec<Fe>,
        unit: Vec<Fe>,
    ) -> Result<AlgebraData> {
        let n = labels.len();
        let mut dense = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = product(i, j);
                if v.len() != n {
                    return Err(Error::Dimension(format!(
                        "product b_{i} b_{j} has length {} (dim {n})",
                        v.len()
                    )));
                }
                dense.push(v);
            }
        }
        Self::from_dense_products(field, labels, dense, unit)
    }

    fn from_dense_products(
        field: &Field,
        labels: Vec<String>,
        dense: Vec<Vec<Fe>>,
        unit: Vec<Fe>,
    ) -> Result<AlgebraData> {
        let n = labels.len();
        if unit.len() != n {
            return Err(Error::Dimension(format!(
                "unit has length {} but dim is {n}",
                unit.len()
            )));
        }
        let mut lmul = vec![Matrix::zeros(field, n, n); n];
        let mut products = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let v = &dense[i * n + j];
                let sparse: SparseVec = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, &c)| (k, c))
                    .collect();
                for &(k, c) in &sparse {
                    lmul[i].set(k, j, c);
                }
                products.push(sparse);
            }
        }
        Ok(AlgebraData {
            field: field.clone(),
            labels,
            products,
            unit,
            lmul,
            validated: false,
            generators: OnceLock::new(),
        })
    }

    /// Runs [`check_algebra_axioms`] and marks the value as validated.
    pub fn validate(mut self) -> Result<AlgebraData> {
        check_algebra_axioms(&self).into_result()?;
        self.validated = true;
        Ok(self)
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn require_validated(&self) -> Result<()> {
        if self.validated {
            Ok(())
        } else {
            Err(Error::Unvalidated("algebra"))
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Fe] {
        &self.unit
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Fe> {
        unit_vector(self.dim(), i)
    }

    /// Sparse `b_i b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Fe)] {
        &self.products[i * self.dim() + j]
    }

    pub fn product_dense(&self, i: usize, j: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.dim()];
        for &(k, c) in self.product(i, j) {
            v[k] = c;
        }
        v
    }

    /// Product of two elements in basis coordinates.
    pub fn mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let n = self.dim();
        let mut out = vec![Fe::ZERO; n];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(k, c) in self.product(i, j) {
                    out[k] = f.mul_add(out[k], ab, c);
                }
            }
        }
        out
    }

    /// Matrix of `y -> b_i y`.
    pub fn left_mul_matrix(&self, i: usize) -> &Matrix {
        &self.lmul[i]
    }

    /// Matrix of `y -> x y`.
    pub fn left_mul_by(&self, x: &[Fe]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.field, n, n);
        for (i, &a) in x.iter().enumerate() {
            m.add_scaled(a, &self.lmul[i]);
        }
        m
    }

    /// Matrix of `y -> y x`.
    pub fn right_mul_by(&self, x: &[Fe]) -> Matrix {
        let n = self.dim();
        let cols: Vec<Vec<Fe>> = (0..n).map(|j| self.mul(&unit_vector(n, j), x)).collect();
        Matrix::from_cols(&self.field, n, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (i + 1..n).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Sparse structure constants sorted by `(i, j, k)`.
    pub fn structconst(&self) -> Vec<(usize, usize, usize, Fe)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for &(k, c) in self.product(i, j) {
                    out.push((i, j, k, c));
                }
            }
        }
        out
    }

    /// Scalar extension along a field embedding; revalidated.
    pub fn extend_scalars(&self, emb: &Embedding) -> Result<AlgebraData> {
        let t = emb.target();
        let entries = self
            .structconst()
            .into_iter()
            .map(|(i, j, k, c)| (i, j, k, emb.apply(c)));
        let unit = self.unit.iter().map(|&c| emb.apply(c)).collect();
        let a = AlgebraData::from_structconst(t, self.labels.clone(), entries, unit)?;
        if self.validated {
            a.validate()
        } else {
            Ok(a)
        }
    }

    /// Basis indices that generate the algebra (together with the unit),
    /// chosen greedily in index order.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let n = self.dim();
            let mut gens: Vec<usize> = Vec::new();
            let mut span = self.generated_span(&gens);
            for i in 0..n {
                if !span.contains(&unit_vector(n, i)) {
                    gens.push(i);
                    span = self.generated_span(&gens);
                }
                if span.len() == n {
                    break;
                }
            }
            gens
        })
    }

    fn generated_span(&self, gens: &[usize]) -> Echelon {
        let n = self.dim();
        let mut span = Echelon::new(&self.field, n);
        let mut queue = vec![self.unit.clone()];
        span.insert(&self.unit);
        while let Some(w) = queue.pop() {
            for &g in gens {
                let v = self.lmul[g].mul_vec(&w);
                if span.insert(&v) {
                    queue.push(v);
                }
            }
        }
        span
    }

    /// Human-readable name for an element.
    pub fn describe(&self, v: &[Fe]) -> String {
        describe_vector(&self.field, &self.labels, v)
    }

    /// Subspace spanned by the given elements.
    pub fn span(&self, vectors: impl IntoIterator<Item = Vec<Fe>>) -> Subspace {
        Subspace::from_vectors(&self.field, self.dim(), vectors)
    }
}

pub(crate) fn describe_vector(field: &Field, labels: &[String], v: &[Fe]) -> String {
    let terms: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, &c)| {
            if c == Fe::ONE {
                labels[i].clone()
            } else if field.k() == 1 {
                format!("{}*{}", c.code(), labels[i])
            } else {
                format!("{:?}*{}", field.coeffs(c), labels[i])
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Associativity on every basis triple and the two-sided unit law.
pub fn check_algebra_axioms(a: &AlgebraData) -> AxiomReport {
    let mut report = AxiomReport::new();
    report.record("associativity", associativity(a));
    report.record("unit", unit_law(a));
    report
}

fn associativity(a: &AlgebraData) -> std::result::Result<(), (Vec<usize>, String)> {
    let f = a.field();
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let mut lhs = vec![Fe::ZERO; n];
                for &(l, c) in ij {
                    for &(m, d) in a.product(l, k) {
                        lhs[m] = f.mul_add(lhs[m], c, d);
                    }
                }
                let mut rhs = vec![Fe::ZERO; n];
                for &(l, c) in a.product(j, k) {
                    for &(m, d) in a.product(i, l) {
                        rhs[m] = f.mul_add(rhs[m], c, d);
                    }
                }
                if lhs != rhs {
                    return Err((
                        vec![i, j, k],
                        format!(
                            "({}*{})*{} != {}*({}*{})",
                            a.labels[i], a.labels[j], a.labels[k], a.labels[i], a.labels[j], a.labels[k]
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}

fn unit_law(a: &AlgebraData) -> std::result::Result<(), (Vec<usize>, String)> {
    let n = a.dim();
    for i in 0..n {
        let b = unit_vector(n, i);
        if a.mul(&a.unit, &b) != b {
            return Err((vec![i], format!("1*{} != {}", a.labels[i], a.labels[i])));
        }
        if a.mul(&b, &a.unit) != b {
            return Err((vec![i], format!("{}*1 != {}", a.labels[i], a.labels[i])));
        }
    }
    Ok(())
}

/// The base field as a one-dimensional algebra.
pub fn base_field_algebra(field: &Field) -> Arc<AlgebraData> {
    let a = AlgebraData::from_structconst(
        field,
        vec!["1".into()],
        [(0, 0, 0, Fe::ONE)],
        vec![Fe::ONE],
    )
    .and_then(AlgebraData::validate)
    .expect("the field is an algebra over itself");
    Arc::new(a)
}
