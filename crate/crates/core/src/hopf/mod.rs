//! Hopf algebra data on top of [`AlgebraData`]: coproduct, counit, antipode,
//! Hopf subalgebras, normality, quotients and characters.

mod character;
mod sub;

use std::fmt;
use std::sync::Arc;

pub use character::{
    characters, convolution, convolution_inverse, theta_automorphism, twist_module, AlgebraMorphism,
    Character,
};
pub use sub::{
    commutative_mod_ideal, hopf_ideal_hk_plus, hopf_subalgebra, is_hopf_subalgebra, is_normal,
    normality_violation, quotient_hopf, HopfQuotient, HopfSubalgebra, SeriesStep, SolvableSeries,
};

use crate::algebra::{check_algebra_axioms, AlgebraData, AxiomReport, SparseVec};
use crate::error::{Error, Result};
use crate::exactfield::{unit_vector, Fe, Field, Matrix};

/// Hopf algebra with basis `b_0..b_{n-1}`. The coproduct of `b_i` is a
/// vector in `H ⊗ H` where `b_a ⊗ b_b` has index `a * n + b`.
#[derive(Clone)]
pub struct HopfData {
    algebra: Arc<AlgebraData>,
    coproduct: Vec<SparseVec>,
    counit: Vec<Fe>,
    // column j is S(b_j)
    antipode: Matrix,
    validated: bool,
}

impl fmt::Debug for HopfData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfData({:?})", self.algebra)
    }
}

impl PartialEq for HopfData {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra
            && self.coproduct == other.coproduct
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl HopfData {
    /// Shape-checked, unvalidated. `coproduct[i]` is `Δ(b_i)` as a dense
    /// vector of length `n²`; column `j` of `antipode` is `S(b_j)`.
    pub fn new(
        algebra: Arc<AlgebraData>,
        coproduct: Vec<Vec<Fe>>,
        counit: Vec<Fe>,
        antipode: Matrix,
    ) -> Result<HopfData> {
        let n = algebra.dim();
        if coproduct.len() != n || coproduct.iter().any(|r| r.len() != n * n) {
            return Err(Error::Dimension(format!("coproduct must be {n} rows of length {}", n * n)));
        }
        let sparse = coproduct
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect()
            })
            .collect();
        Self::from_sparse(algebra, sparse, counit, antipode)
    }

    pub fn from_sparse(
        algebra: Arc<AlgebraData>,
        coproduct: Vec<SparseVec>,
        counit: Vec<Fe>,
        antipode: Matrix,
    ) -> Result<HopfData> {
        let n = algebra.dim();
        if coproduct.len() != n || coproduct.iter().flatten().any(|&(t, _)| t >= n * n) {
            return Err(Error::Dimension("coproduct index out of range".into()));
        }
        if counit.len() != n {
            return Err(Error::Dimension(format!("counit has length {}, expected {n}", counit.len())));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(Error::Dimension(format!(
                "antipode is {}x{}, expected {n}x{n}",
                antipode.rows(),
                antipode.cols()
            )));
        }
        if antipode.field() != algebra.field() {
            return Err(Error::FieldMismatch(
                antipode.field().to_string(),
                algebra.field().to_string(),
            ));
        }
        let mut coproduct = coproduct;
        for r in coproduct.iter_mut() {
            r.sort_by_key(|&(t, _)| t);
        }
        Ok(HopfData {
            algebra,
            coproduct,
            counit,
            antipode,
            validated: false,
        })
    }

    /// Runs [`check_hopf_axioms`] and marks the value validated.
    pub fn validate(mut self) -> Result<HopfData> {
        check_hopf_axioms(&self).into_result()?;
        if !self.algebra.is_validated() {
            self.algebra = Arc::new((*self.algebra).clone().validate()?);
        }
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
            Err(Error::Unvalidated("Hopf algebra"))
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraData> {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Sweedler terms `(a, b, c)` of `Δ(b_i) = Σ c b_a ⊗ b_b`.
    pub fn coproduct_terms(&self, i: usize) -> impl Iterator<Item = (usize, usize, Fe)> + '_ {
        let n = self.dim();
        self.coproduct[i].iter().map(move |&(t, c)| (t / n, t % n, c))
    }

    pub fn coproduct_sparse(&self, i: usize) -> &[(usize, Fe)] {
        &self.coproduct[i]
    }

    /// `Δ(x)` as a dense `n × n` matrix with entry `(a, b)` the coefficient
    /// of `b_a ⊗ b_b`.
    pub fn coproduct_matrix(&self, x: &[Fe]) -> Matrix {
        let f = self.field();
        let n = self.dim();
        let mut m = Matrix::zeros(f, n, n);
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (a, b, c) in self.coproduct_terms(i) {
                let cur = m.get(a, b);
                m.set(a, b, f.mul_add(cur, xi, c));
            }
        }
        m
    }

    /// Dense row `Δ(b_i)` of length `n²`.
    pub fn coproduct_row(&self, i: usize) -> Vec<Fe> {
        let n = self.dim();
        let mut v = vec![Fe::ZERO; n * n];
        for &(t, c) in &self.coproduct[i] {
            v[t] = c;
        }
        v
    }

    pub fn counit(&self) -> &[Fe] {
        &self.counit
    }

    pub fn counit_of(&self, x: &[Fe]) -> Fe {
        crate::exactfield::dot(self.field(), &self.counit, x)
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_of(&self, x: &[Fe]) -> Vec<Fe> {
        self.antipode.mul_vec(x)
    }

    /// Scalar extension along an embedding; revalidated when the input was.
    pub fn extend_scalars(&self, emb: &crate::exactfield::Embedding) -> Result<HopfData> {
        let a = Arc::new(self.algebra.extend_scalars(emb)?);
        let t = emb.target();
        let coproduct = self
            .coproduct
            .iter()
            .map(|r| r.iter().map(|&(i, c)| (i, emb.apply(c))).collect())
            .collect();
        let counit = self.counit.iter().map(|&c| emb.apply(c)).collect();
        let antipode = self.antipode.map_entries(t, |c| emb.apply(c));
        let h = HopfData::from_sparse(a, coproduct, counit, antipode)?;
        if self.validated {
            h.validate()
        } else {
            Ok(h)
        }
    }
}

/// Product in `H ⊗ H` of two sparse tensors, returned dense.
fn tensor_mul(a: &AlgebraData, x: &[(usize, Fe)], y: &[(usize, Fe)]) -> Vec<Fe> {
    let f = a.field();
    let n = a.dim();
    let mut out = vec![Fe::ZERO; n * n];
    for &(s, c) in x {
        let (p, q) = (s / n, s % n);
        for &(t, d) in y {
            let (r, u) = (t / n, t % n);
            let cd = f.mul(c, d);
            for &(k, e) in a.product(p, r) {
                let ce = f.mul(cd, e);
                for &(l, g) in a.product(q, u) {
                    let idx = k * n + l;
                    out[idx] = f.mul_add(out[idx], ce, g);
                }
            }
        }
    }
    out
}

type Outcome = std::result::Result<(), (Vec<usize>, String)>;

/// Coassociativity, counit law, multiplicativity of `Δ` and `ε`, the
/// antipode law and invertibility of `S`. Includes the algebra axioms when
/// the underlying algebra has not been validated.
pub fn check_hopf_axioms(h: &HopfData) -> AxiomReport {
    let mut report = AxiomReport::new();
    if !h.algebra.is_validated() {
        let alg = check_algebra_axioms(&h.algebra);
        let ok = alg.passed();
        report.extend(alg);
        if !ok {
            return report;
        }
    }
    report.record("coassociativity", coassociativity(h));
    report.record("counit", counit_law(h));
    report.record("coproduct multiplicative", coproduct_multiplicative(h));
    report.record("counit multiplicative", counit_multiplicative(h));
    report.record("antipode", antipode_law(h));
    report.record(
        "antipode invertible",
        if h.antipode.is_invertible() {
            Ok(())
        } else {
            Err((vec![], "S is singular".into()))
        },
    );
    report
}

fn coassociativity(h: &HopfData) -> Outcome {
    let f = h.field();
    let n = h.dim();
    for i in 0..n {
        let mut lhs = vec![Fe::ZERO; n * n * n];
        let mut rhs = vec![Fe::ZERO; n * n * n];
        for (a, b, c) in h.coproduct_terms(i) {
            // (Δ ⊗ id): Δ(b_a) ⊗ b_b
            for (x, y, d) in h.coproduct_terms(a) {
                let idx = (x * n + y) * n + b;
                lhs[idx] = f.mul_add(lhs[idx], c, d);
            }
            // (id ⊗ Δ): b_a ⊗ Δ(b_b)
            for (x, y, d) in h.coproduct_terms(b) {
                let idx = (a * n + x) * n + y;
                rhs[idx] = f.mul_add(rhs[idx], c, d);
            }
        }
        if lhs != rhs {
            return Err((vec![i], format!("(Δ⊗id)Δ != (id⊗Δ)Δ on {}", h.algebra.labels()[i])));
        }
    }
    Ok(())
}

fn counit_law(h: &HopfData) -> Outcome {
    let f = h.field();
    let n = h.dim();
    for i in 0..n {
        let mut left = vec![Fe::ZERO; n];
        let mut right = vec![Fe::ZERO; n];
        for (a, b, c) in h.coproduct_terms(i) {
            left[b] = f.mul_add(left[b], c, h.counit[a]);
            right[a] = f.mul_add(right[a], c, h.counit[b]);
        }
        let e = unit_vector(n, i);
        if left != e || right != e {
            return Err((vec![i], format!("counit law fails on {}", h.algebra.labels()[i])));
        }
    }
    Ok(())
}

fn coproduct_multiplicative(h: &HopfData) -> Outcome {
    let a = &h.algebra;
    let f = a.field();
    let n = h.dim();
    let unit_tensor = {
        let m = h.coproduct_matrix(a.unit());
        let u = a.unit();
        (0..n).all(|x| (0..n).all(|y| m.get(x, y) == f.mul(u[x], u[y])))
    };
    if !unit_tensor {
        return Err((vec![], "Δ(1) != 1⊗1".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = tensor_mul(a, &h.coproduct[i], &h.coproduct[j]);
            let mut rhs = vec![Fe::ZERO; n * n];
            for &(k, c) in a.product(i, j) {
                for &(t, d) in &h.coproduct[k] {
                    rhs[t] = f.mul_add(rhs[t], c, d);
                }
            }
            if lhs != rhs {
                return Err((
                    vec![i, j],
                    format!("Δ({}*{}) != Δ({})Δ({})", a.labels()[i], a.labels()[j], a.labels()[i], a.labels()[j]),
                ));
            }
        }
    }
    Ok(())
}

fn counit_multiplicative(h: &HopfData) -> Outcome {
    let a = &h.algebra;
    let f = a.field();
    let n = h.dim();
    if h.counit_of(a.unit()) != Fe::ONE {
        return Err((vec![], "ε(1) != 1".into()));
    }
    for i in 0..n {
        for j in 0..n {
            let lhs = h.counit_of(&a.product_dense(i, j));
            if lhs != f.mul(h.counit[i], h.counit[j]) {
                return Err((vec![i, j], format!("ε({}*{}) != ε·ε", a.labels()[i], a.labels()[j])));
            }
        }
    }
    Ok(())
}

fn antipode_law(h: &HopfData) -> Outcome {
    let a = &h.algebra;
    let f = a.field();
    let n = h.dim();
    let s_cols: Vec<Vec<Fe>> = (0..n).map(|j| h.antipode.col(j)).collect();
    for i in 0..n {
        let mut left = vec![Fe::ZERO; n];
        let mut right = vec![Fe::ZERO; n];
        for (x, y, c) in h.coproduct_terms(i) {
            let l = a.mul(&s_cols[x], &unit_vector(n, y));
            crate::exactfield::axpy(f, &mut left, c, &l);
            let r = a.mul(&unit_vector(n, x), &s_cols[y]);
            crate::exactfield::axpy(f, &mut right, c, &r);
        }
        let expect: Vec<Fe> = a.unit().iter().map(|&u| f.mul(u, h.counit[i])).collect();
        if left != expect {
            return Err((vec![i], format!("Σ S(h1)h2 != ε(h)1 for h = {}", a.labels()[i])));
        }
        if right != expect {
            return Err((vec![i], format!("Σ h1 S(h2) != ε(h)1 for h = {}", a.labels()[i])));
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::algebra::tests_support::cyclic_algebra;

    /// kC_n with group-like basis, built by hand.
    pub(crate) fn cyclic_hopf(f: &Field, n: usize) -> HopfData {
        let a = Arc::new(cyclic_algebra(f, n).validate().unwrap());
        let coproduct = (0..n).map(|i| vec![(i * n + i, Fe::ONE)]).collect();
        let counit = vec![Fe::ONE; n];
        let antipode = Matrix::from_fn(f, n, n, |r, c| if r == (n - c) % n { Fe::ONE } else { Fe::ZERO });
        HopfData::from_sparse(a, coproduct, counit, antipode).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::cyclic_hopf;
    use super::*;

    #[test]
    fn cyclic_group_algebra_is_hopf() {
        for p in [2, 3, 5] {
            let f = Field::new(p, 1).unwrap();
            for n in 1..6 {
                let h = cyclic_hopf(&f, n);
                let r = check_hopf_axioms(&h);
                assert!(r.passed(), "{:?}", r.first_failure());
            }
        }
    }

    #[test]
    fn corrupted_antipode_fails_antipode_law() {
        let f = Field::new(3, 1).unwrap();
        let good = cyclic_hopf(&f, 2);
        let bad = HopfData::from_sparse(
            good.algebra().clone(),
            good.coproduct.clone(),
            good.counit.clone(),
            Matrix::identity(&f, 2),
        )
        .unwrap();
        // S = id is still the inverse for C2, so corrupt differently: S(g) = 2g
        assert!(check_hopf_axioms(&bad).passed());
        let mut s = Matrix::identity(&f, 2);
        s.set(1, 1, f.from_int(2));
        let bad = HopfData::from_sparse(good.algebra().clone(), good.coproduct.clone(), good.counit.clone(), s)
            .unwrap();
        let r = check_hopf_axioms(&bad);
        let fail = r.first_failure().unwrap();
        assert_eq!(fail.axiom, "antipode");
        assert_eq!(fail.violation.as_ref().unwrap().indices, vec![1]);
    }

    #[test]
    fn corrupted_coproduct_fails() {
        let f = Field::new(5, 1).unwrap();
        let good = cyclic_hopf(&f, 3);
        let mut cop = good.coproduct.clone();
        cop[1] = vec![(1 * 3 + 2, Fe::ONE)];
        let bad = HopfData::from_sparse(good.algebra().clone(), cop, good.counit.clone(), good.antipode.clone())
            .unwrap();
        let r = check_hopf_axioms(&bad);
        // Δ(g1) = g1⊗g2 is still coassociative; the counit law catches it
        assert!(!r.passed());
        assert_eq!(r.first_failure().unwrap().axiom, "counit");
    }

    #[test]
    fn unvalidated_is_refused_where_required() {
        let f = Field::new(2, 1).unwrap();
        let h = cyclic_hopf(&f, 2);
        assert!(h.require_validated().is_err());
        assert!(h.validate().unwrap().require_validated().is_ok());
    }
}
