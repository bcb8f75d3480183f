use std::collections::BTreeMap;

use super::canon::{canonical_form, Canonical};
use super::hom::endomorphism_dim;
use super::spin::{spin, spin_under};
use crate::algebra::ModuleRep;
use crate::error::{Error, Result};
use crate::exactfield::{char_poly, factor_poly, vec_is_zero, Fe, Matrix, Poly, SeededRng, Subspace};

const RANDOM_BUDGET: usize = 200;
const PLAIN_ATTEMPTS: usize = 100;
/// Largest number of lines the exhaustive fallback will spin.
pub const LINE_LIMIT: u64 = 2_000_000;

/// Evidence for an irreducibility verdict that can be replayed against the
/// module it was produced for.
#[derive(Clone, Debug, PartialEq)]
pub enum IrreducibilityWitness {
    OneDimensional,
    /// `element` is an algebra element, `factor` an irreducible factor of
    /// the characteristic polynomial of its action whose kernel has
    /// dimension `deg factor`; `null_vector` spans the module and
    /// `dual_vector`, in the kernel of the transpose, spans under the
    /// transposed action.
    Norton {
        element: Vec<Fe>,
        factor: Poly,
        null_vector: Vec<Fe>,
        dual_vector: Vec<Fe>,
    },
    /// Every line was spun and reached the whole module.
    Exhaustive { lines: u64 },
    /// A proper nonzero submodule.
    Submodule(Subspace),
}

impl IrreducibilityWitness {
    pub fn is_irreducible(&self) -> bool {
        !matches!(self, IrreducibilityWitness::Submodule(_))
    }

    /// Recheck the certificate from scratch.
    pub fn replay(&self, m: &ModuleRep) -> bool {
        let d = m.dim();
        match self {
            IrreducibilityWitness::OneDimensional => d == 1,
            IrreducibilityWitness::Submodule(s) => {
                s.ambient_dim() == d && !s.is_zero() && !s.is_full() && m.is_submodule(s)
            }
            IrreducibilityWitness::Exhaustive { .. } => {
                d > 0 && matches!(exhaustive_split(m), Some(IrreducibilityWitness::Exhaustive { .. }))
            }
            IrreducibilityWitness::Norton {
                element,
                factor,
                null_vector,
                dual_vector,
            } => {
                if element.len() != m.algebra().dim() || null_vector.len() != d || dual_vector.len() != d {
                    return false;
                }
                if !factor.is_irreducible() || vec_is_zero(null_vector) || vec_is_zero(dual_vector) {
                    return false;
                }
                let ft = factor.eval_matrix(&m.act(element));
                let deg = factor.degree().unwrap_or(0);
                if ft.kernel().len() != deg {
                    return false;
                }
                if !vec_is_zero(&ft.mul_vec(null_vector)) || !vec_is_zero(&ft.vec_mul(dual_vector)) {
                    return false;
                }
                let gens_t: Vec<Matrix> = m.generator_actions().iter().map(|g| g.transpose()).collect();
                let gens_t: Vec<&Matrix> = gens_t.iter().collect();
                spin(m, &[null_vector.clone()]).is_full()
                    && spin_under(m.field(), d, &gens_t, &[dual_vector.clone()]).is_full()
            }
        }
    }

    /// The same certificate for `P⁻¹ ρ P`, given `P` and `P⁻¹`.
    pub(crate) fn rebase(&self, p: &Matrix, p_inv: &Matrix) -> IrreducibilityWitness {
        match self {
            IrreducibilityWitness::Norton {
                element,
                factor,
                null_vector,
                dual_vector,
            } => IrreducibilityWitness::Norton {
                element: element.clone(),
                factor: factor.clone(),
                null_vector: p_inv.mul_vec(null_vector),
                dual_vector: p.vec_mul(dual_vector),
            },
            IrreducibilityWitness::Submodule(s) => {
                let vs = s.vectors().iter().map(|v| p_inv.mul_vec(v)).collect::<Vec<_>>();
                IrreducibilityWitness::Submodule(Subspace::from_vectors(s.field(), s.ambient_dim(), vs))
            }
            other => other.clone(),
        }
    }
}

fn random_element(m: &ModuleRep, rng: &mut SeededRng) -> Vec<Fe> {
    let f = m.field();
    (0..m.algebra().dim()).map(|_| f.random(rng)).collect()
}

fn try_element(
    m: &ModuleRep,
    gens_t: &[&Matrix],
    element: &[Fe],
    rng: &mut SeededRng,
) -> Result<Option<IrreducibilityWitness>> {
    let f = m.field();
    let d = m.dim();
    let theta = m.act(element);
    let cp = char_poly(&theta)?;
    for (fac, _) in factor_poly(&cp)? {
        let ft = fac.eval_matrix(&theta);
        let null = Subspace::from_vectors(f, d, ft.kernel());
        let v = nonzero_vector(&null, rng);
        let s = spin(m, &[v.clone()]);
        if !s.is_full() {
            return Ok(Some(IrreducibilityWitness::Submodule(s)));
        }
        if null.dim() == fac.degree().unwrap_or(0) {
            let dual = Subspace::from_vectors(f, d, ft.transpose().kernel());
            let w = nonzero_vector(&dual, rng);
            let st = spin_under(f, d, gens_t, &[w.clone()]);
            if !st.is_full() {
                return Ok(Some(IrreducibilityWitness::Submodule(st.orthogonal())));
            }
            return Ok(Some(IrreducibilityWitness::Norton {
                element: element.to_vec(),
                factor: fac,
                null_vector: v,
                dual_vector: w,
            }));
        }
    }
    Ok(None)
}

fn nonzero_vector(s: &Subspace, rng: &mut SeededRng) -> Vec<Fe> {
    debug_assert!(!s.is_zero());
    loop {
        let v = s.random_vector(rng);
        if !vec_is_zero(&v) {
            return v;
        }
    }
}

/// Deterministic elements tried once the random budget is spent: basis
/// elements, sums of pairs and products of pairs.
fn structured_elements(m: &ModuleRep) -> Vec<Vec<Fe>> {
    let a = m.algebra();
    let f = a.field();
    let n = a.dim();
    let e = |i: usize| crate::exactfield::unit_vector(n, i);
    let mut out: Vec<Vec<Fe>> = (0..n).map(e).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(crate::exactfield::vec_add(f, &e(i), &e(j)));
        }
    }
    for i in 0..n {
        for j in 0..n {
            out.push(a.product_dense(i, j));
        }
    }
    out
}

fn line_count(q: u64, d: usize) -> Option<u64> {
    let mut total: u64 = 0;
    let mut pow: u64 = 1;
    for _ in 0..d {
        total = total.checked_add(pow)?;
        pow = pow.checked_mul(q)?;
    }
    Some(total)
}

/// Spin every line; `None` when there are more than [`LINE_LIMIT`].
pub(crate) fn exhaustive_split(m: &ModuleRep) -> Option<IrreducibilityWitness> {
    let d = m.dim();
    let f = m.field();
    let q = f.order();
    let lines = line_count(q, d).filter(|&l| l <= LINE_LIMIT)?;
    for lead in 0..d {
        let tail = d - lead - 1;
        let count = q.pow(tail as u32);
        for idx in 0..count {
            let mut v = vec![Fe::ZERO; d];
            v[lead] = Fe::ONE;
            let mut x = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = f.from_code((x % q) as u32).expect("code below q");
                x /= q;
            }
            let s = spin(m, &[v]);
            if !s.is_full() {
                return Some(IrreducibilityWitness::Submodule(s));
            }
        }
    }
    Some(IrreducibilityWitness::Exhaustive { lines })
}

/// Either a proper submodule or a certificate of irreducibility.
pub(crate) fn split(m: &ModuleRep, rng: &mut SeededRng) -> Result<IrreducibilityWitness> {
    let d = m.dim();
    if d == 0 {
        return Err(Error::Dimension("the zero module has no irreducibility verdict".into()));
    }
    if d == 1 {
        return Ok(IrreducibilityWitness::OneDimensional);
    }
    let gens_t_owned: Vec<Matrix> = m.generator_actions().iter().map(|g| g.transpose()).collect();
    let gens_t: Vec<&Matrix> = gens_t_owned.iter().collect();
    let a = m.algebra();
    for attempt in 0..RANDOM_BUDGET {
        let mut x = random_element(m, rng);
        if attempt >= PLAIN_ATTEMPTS {
            let extra = 1 + (attempt % 3);
            for _ in 0..extra {
                x = a.mul(&x, &random_element(m, rng));
            }
        }
        if let Some(w) = try_element(m, &gens_t, &x, rng)? {
            return Ok(w);
        }
    }
    for x in structured_elements(m) {
        if let Some(w) = try_element(m, &gens_t, &x, rng)? {
            return Ok(w);
        }
    }
    exhaustive_split(m).ok_or_else(|| {
        Error::BudgetExhausted(format!(
            "no verdict for a module of dimension {d} over {} within the search budget",
            m.field()
        ))
    })
}

pub fn is_irreducible(m: &ModuleRep, seed: u64) -> Result<(bool, IrreducibilityWitness)> {
    let mut rng = SeededRng::new(seed);
    let w = split(m, &mut rng)?;
    Ok((w.is_irreducible(), w))
}

/// One isomorphism class of composition factor.
#[derive(Clone, Debug)]
pub struct CompositionFactor {
    /// The simple module in canonical form.
    pub module: ModuleRep,
    pub multiplicity: usize,
    pub label: String,
    pub endomorphism_dim: usize,
    /// Irreducibility certificate for `module`.
    pub witness: IrreducibilityWitness,
}

/// Composition factors of a module, sorted by dimension and then by the
/// canonical action matrices.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub dim: usize,
    pub factors: Vec<CompositionFactor>,
}

impl CompositionSeries {
    /// Dimensions with multiplicity, ascending.
    pub fn dimensions(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat(f.module.dim()).take(f.multiplicity))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.module.dim() * f.multiplicity).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }
}

pub(crate) fn canonical_key(m: &ModuleRep) -> (usize, Vec<u32>) {
    let codes = m
        .actions()
        .iter()
        .flat_map(|a| a.data().iter().map(|c| c.code()))
        .collect();
    (m.dim(), codes)
}

/// Breaks `m` into simple pieces, canonicalizes them and counts each
/// isomorphism class. Deterministic in `(m, seed)`.
pub fn meataxe_chop(m: &ModuleRep, seed: u64) -> Result<CompositionSeries> {
    let mut rng = SeededRng::new(seed);
    let mut stack = vec![m.clone()];
    let mut simples: Vec<(ModuleRep, IrreducibilityWitness)> = Vec::new();
    while let Some(x) = stack.pop() {
        if x.dim() == 0 {
            continue;
        }
        match split(&x, &mut rng)? {
            IrreducibilityWitness::Submodule(s) => {
                let q = x.quotient(&s)?;
                let sub = x.submodule(&s)?;
                stack.push(q);
                stack.push(sub);
            }
            w => simples.push((x, w)),
        }
    }
    let mut classes: BTreeMap<(usize, Vec<u32>), (ModuleRep, usize, IrreducibilityWitness)> = BTreeMap::new();
    for (x, w) in simples {
        let Canonical { module, basis, basis_inv } = canonical_form(&x)?;
        let key = canonical_key(&module);
        classes
            .entry(key)
            .and_modify(|e| e.1 += 1)
            .or_insert_with(|| (module, 1, w.rebase(&basis, &basis_inv)));
    }
    let mut per_dim: BTreeMap<usize, usize> = BTreeMap::new();
    let factors: Vec<CompositionFactor> = classes
        .into_values()
        .map(|(module, multiplicity, witness)| {
            let d = module.dim();
            let idx = per_dim.entry(d).or_insert(0);
            let label = format!("{d}{}", letter_suffix(*idx));
            *idx += 1;
            CompositionFactor {
                endomorphism_dim: endomorphism_dim(&module),
                module,
                multiplicity,
                label,
                witness,
            }
        })
        .collect();
    let series = CompositionSeries {
        dim: m.dim(),
        factors,
    };
    assert_eq!(series.total_dim(), m.dim(), "composition factor dimensions must add up");
    Ok(series)
}

/// `a, b, …, z, aa, ab, …`
fn letter_suffix(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).expect("ascii")
}
