use std::sync::Arc;

use serde::Serialize;

use super::HopfData;
use crate::algebra::{left_multiples, right_multiples, IdealBasis, Subalgebra};
use crate::error::{Error, Result};
use crate::exactfield::{unit_vector, Fe, Matrix, Subspace};

/// Hopf subalgebra `K ⊆ H` together with `K` as a standalone Hopf algebra
/// on the echelon basis of its subspace.
#[derive(Clone, Debug)]
pub struct HopfSubalgebra {
    ambient: Arc<HopfData>,
    sub: Subalgebra,
    hopf: Arc<HopfData>,
}

impl HopfSubalgebra {
    pub fn ambient(&self) -> &Arc<HopfData> {
        &self.ambient
    }

    pub fn subalgebra(&self) -> &Subalgebra {
        &self.sub
    }

    pub fn space(&self) -> &Subspace {
        self.sub.space()
    }

    pub fn hopf(&self) -> &Arc<HopfData> {
        &self.hopf
    }

    pub fn dim(&self) -> usize {
        self.sub.dim()
    }

    /// `K⁺ = ker ε ∩ K`, as ambient vectors.
    pub fn augmentation_ideal(&self) -> Subspace {
        let f = self.ambient.field();
        let eps: Vec<Fe> = (0..self.dim())
            .map(|r| self.ambient.counit_of(self.space().vector(r)))
            .collect();
        let row = Matrix::from_rows(f, self.dim(), &[eps]);
        let vs = row.kernel().into_iter().map(|c| self.sub.to_ambient(&c));
        Subspace::from_vectors(f, self.ambient.dim(), vs)
    }
}

/// Checks unit, closure, `Δ(K) ⊆ K⊗K` and `S(K) ⊆ K`. The error names the
/// first failing condition.
pub fn hopf_subalgebra(h: &Arc<HopfData>, space: Subspace) -> Result<HopfSubalgebra> {
    h.require_validated()?;
    let sub = Subalgebra::new(h.algebra().clone(), space)?;
    let space = sub.space();
    let m = space.dim();
    let f = h.field();
    let mut coproduct = Vec::with_capacity(m);
    for r in 0..m {
        let k = space.vector(r);
        let d = h.coproduct_matrix(k);
        for b in 0..h.dim() {
            if !space.contains(&d.col(b)) || !space.contains(d.row(b)) {
                return Err(Error::NotSubalgebra(format!(
                    "Δ({}) is not in K⊗K",
                    h.algebra().describe(k)
                )));
            }
        }
        let piv = space.pivots();
        let mut row = Vec::new();
        for (x, &px) in piv.iter().enumerate() {
            for (y, &py) in piv.iter().enumerate() {
                let c = d.get(px, py);
                if !c.is_zero() {
                    row.push((x * m + y, c));
                }
            }
        }
        coproduct.push(row);
    }
    let mut s_cols = Vec::with_capacity(m);
    for r in 0..m {
        let k = space.vector(r);
        let s = h.antipode_of(k);
        let c = space.coords(&s).ok_or_else(|| {
            Error::NotSubalgebra(format!("S({}) is not in K", h.algebra().describe(k)))
        })?;
        s_cols.push(c);
    }
    let counit = (0..m).map(|r| h.counit_of(space.vector(r))).collect();
    let antipode = Matrix::from_cols(f, m, &s_cols);
    let k = HopfData::from_sparse(sub.algebra().clone(), coproduct, counit, antipode)?.validate()?;
    Ok(HopfSubalgebra {
        ambient: h.clone(),
        sub,
        hopf: Arc::new(k),
    })
}

pub fn is_hopf_subalgebra(h: &Arc<HopfData>, space: &Subspace) -> bool {
    hopf_subalgebra(h, space.clone()).is_ok()
}

/// First basis pair `(h, k)` whose left or right adjoint action leaves `K`.
pub fn normality_violation(k: &HopfSubalgebra) -> Option<String> {
    let h = &k.ambient;
    let a = h.algebra();
    let n = h.dim();
    let f = h.field();
    let space = k.space();
    let s_cols: Vec<Vec<Fe>> = (0..n).map(|j| h.antipode().col(j)).collect();
    for i in 0..n {
        for r in 0..space.dim() {
            let kv = space.vector(r);
            let mut left = vec![Fe::ZERO; n];
            let mut right = vec![Fe::ZERO; n];
            for (x, y, c) in h.coproduct_terms(i) {
                let l = a.mul(&a.left_mul_matrix(x).mul_vec(kv), &s_cols[y]);
                crate::exactfield::axpy(f, &mut left, c, &l);
                let rr = a.mul(&a.mul(&s_cols[x], kv), &unit_vector(n, y));
                crate::exactfield::axpy(f, &mut right, c, &rr);
            }
            if !space.contains(&left) {
                return Some(format!(
                    "left adjoint of {} on {} leaves K",
                    a.labels()[i],
                    a.describe(kv)
                ));
            }
            if !space.contains(&right) {
                return Some(format!(
                    "right adjoint of {} on {} leaves K",
                    a.labels()[i],
                    a.describe(kv)
                ));
            }
        }
    }
    None
}

/// Stability under both adjoint actions.
pub fn is_normal(k: &HopfSubalgebra) -> bool {
    normality_violation(k).is_none()
}

/// `HK⁺`, checked equal to `K⁺H`.
pub fn hopf_ideal_hk_plus(k: &HopfSubalgebra) -> Result<IdealBasis> {
    if let Some(v) = normality_violation(k) {
        return Err(Error::NotNormal(v));
    }
    let a = k.ambient.algebra();
    let kp = k.augmentation_ideal();
    let hk = left_multiples(a, &kp);
    let kh = right_multiples(a, &kp);
    if hk != kh {
        return Err(Error::NotHopfIdeal(format!(
            "HK+ (dim {}) differs from K+H (dim {})",
            hk.dim(),
            kh.dim()
        )));
    }
    IdealBasis::from_subspace(a.clone(), hk)
}

/// `H/I` on the complement basis with the projection `H -> H/I`.
#[derive(Clone, Debug)]
pub struct HopfQuotient {
    pub hopf: Arc<HopfData>,
    pub projection: Matrix,
}

pub fn quotient_hopf(h: &Arc<HopfData>, i: &IdealBasis) -> Result<HopfQuotient> {
    h.require_validated()?;
    if i.algebra() != h.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let a = h.algebra();
    let space = i.space();
    let proj = space.quotient_projection();
    for r in 0..space.dim() {
        let v = space.vector(r);
        if !h.counit_of(v).is_zero() {
            return Err(Error::NotHopfIdeal(format!("ε({}) != 0", a.describe(v))));
        }
        if !space.contains(&h.antipode_of(v)) {
            return Err(Error::NotHopfIdeal(format!("S({}) is not in I", a.describe(v))));
        }
        let d = h.coproduct_matrix(v);
        if !proj.mul(&d).mul(&proj.transpose()).is_zero() {
            return Err(Error::NotHopfIdeal(format!("Δ({}) is not in I⊗H + H⊗I", a.describe(v))));
        }
    }
    let (q, proj) = i.quotient_algebra()?;
    let comp = space.complement_indices();
    let m = comp.len();
    let f = h.field();
    let coproduct = comp
        .iter()
        .map(|&c| {
            let d = proj.mul(&h.coproduct_matrix(&unit_vector(h.dim(), c))).mul(&proj.transpose());
            let mut row = Vec::new();
            for x in 0..m {
                for y in 0..m {
                    if !d.get(x, y).is_zero() {
                        row.push((x * m + y, d.get(x, y)));
                    }
                }
            }
            row
        })
        .collect();
    let counit = comp.iter().map(|&c| h.counit()[c]).collect();
    let s_cols: Vec<Vec<Fe>> = comp.iter().map(|&c| proj.mul_vec(&h.antipode().col(c))).collect();
    let antipode = Matrix::from_cols(f, m, &s_cols);
    let hq = HopfData::from_sparse(Arc::new(q), coproduct, counit, antipode)?.validate()?;
    Ok(HopfQuotient {
        hopf: Arc::new(hq),
        projection: proj,
    })
}

/// Whether every commutator of basis elements lies in `I`.
pub fn commutative_mod_ideal(i: &IdealBasis) -> bool {
    let a = i.algebra();
    let f = a.field();
    let n = a.dim();
    (0..n).all(|x| {
        (x + 1..n).all(|y| {
            let c = crate::exactfield::vec_sub(f, &a.product_dense(x, y), &a.product_dense(y, x));
            i.contains(&c)
        })
    })
}

/// Result of checking one link `H_{i-1} ⊂ H_i` of a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesStep {
    pub index: usize,
    pub dim_lower: usize,
    pub dim_upper: usize,
    pub hopf_subalgebra: bool,
    pub normal: bool,
    pub commutative_quotient: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl SeriesStep {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Chain `k = H_0 ⊂ H_1 ⊂ … ⊂ H_t = H` in which each `H_{i-1}` is a normal
/// Hopf subalgebra of `H_i` and `H_i / H_i H_{i-1}⁺` is commutative.
#[derive(Clone, Debug)]
pub struct SolvableSeries {
    hopf: Arc<HopfData>,
    chain: Vec<Subspace>,
    steps: Vec<SeriesStep>,
}

impl SolvableSeries {
    /// Checks every link and returns the per-step report alongside the
    /// first failure.
    pub fn check(h: &Arc<HopfData>, chain: &[Subspace]) -> Result<(Vec<SeriesStep>, Option<String>)> {
        h.require_validated()?;
        let n = h.dim();
        let unit = Subspace::from_vectors(h.field(), n, [h.algebra().unit().to_vec()]);
        if chain.is_empty() {
            return Ok((Vec::new(), Some("empty chain".into())));
        }
        if chain.iter().any(|s| s.ambient_dim() != n) {
            return Err(Error::Dimension(format!("chain members must live in F^{n}")));
        }
        if chain[0] != unit {
            return Ok((Vec::new(), Some("chain does not start at span(1)".into())));
        }
        if !chain[chain.len() - 1].is_full() {
            return Ok((Vec::new(), Some("chain does not end at H".into())));
        }
        let mut steps = Vec::new();
        let mut first_failure = None;
        for idx in 1..chain.len() {
            let step = check_step(h, idx, &chain[idx - 1], &chain[idx]);
            if first_failure.is_none() {
                if let Some(fail) = &step.failure {
                    first_failure = Some(format!("step {idx}: {fail}"));
                }
            }
            steps.push(step);
        }
        Ok((steps, first_failure))
    }

    pub fn new(h: &Arc<HopfData>, chain: Vec<Subspace>) -> Result<SolvableSeries> {
        let (steps, fail) = Self::check(h, &chain)?;
        if let Some(f) = fail {
            return Err(Error::Verification(f));
        }
        Ok(SolvableSeries {
            hopf: h.clone(),
            chain,
            steps,
        })
    }

    pub fn hopf(&self) -> &Arc<HopfData> {
        &self.hopf
    }

    pub fn chain(&self) -> &[Subspace] {
        &self.chain
    }

    pub fn steps(&self) -> &[SeriesStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.chain.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_step(h: &Arc<HopfData>, index: usize, lower: &Subspace, upper: &Subspace) -> SeriesStep {
    let mut step = SeriesStep {
        index,
        dim_lower: lower.dim(),
        dim_upper: upper.dim(),
        hopf_subalgebra: false,
        normal: false,
        commutative_quotient: false,
        quotient_dim: None,
        failure: None,
    };
    if !upper.contains_subspace(lower) {
        step.failure = Some("chain is not increasing".into());
        return step;
    }
    let hi = match hopf_subalgebra(h, upper.clone()) {
        Ok(x) => x,
        Err(e) => {
            step.failure = Some(format!("H_{index} is not a Hopf subalgebra: {e}"));
            return step;
        }
    };
    let local = Subspace::from_vectors(
        h.field(),
        hi.dim(),
        lower
            .vectors()
            .into_iter()
            .map(|v| hi.subalgebra().to_local(&v).expect("contained")),
    );
    let lo = match hopf_subalgebra(hi.hopf(), local) {
        Ok(x) => x,
        Err(e) => {
            step.failure = Some(format!("H_{} is not a Hopf subalgebra: {e}", index - 1));
            return step;
        }
    };
    step.hopf_subalgebra = true;
    let ideal = match hopf_ideal_hk_plus(&lo) {
        Ok(i) => i,
        Err(e) => {
            step.failure = Some(format!("H_{} is not normal in H_{index}: {e}", index - 1));
            return step;
        }
    };
    step.normal = true;
    step.quotient_dim = Some(hi.dim() - ideal.dim());
    step.commutative_quotient = commutative_mod_ideal(&ideal);
    if !step.commutative_quotient {
        step.failure = Some(format!("H_{index}/H_{index}H_{}+ is not commutative", index - 1));
    }
    step
}
