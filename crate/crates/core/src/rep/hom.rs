use crate::algebra::ModuleRep;
use crate::error::{Error, Result};
use crate::exactfield::{Fe, Matrix, SeededRng};

const ISO_SEED: u64 = 0x150_150;
const ISO_TRIES: usize = 64;

/// Basis of `Hom_A(V, W)`: all `T` with `T ρ_V(g) = ρ_W(g) T` for every
/// algebra generator `g`.
pub fn intertwiners(v: &ModuleRep, w: &ModuleRep) -> Result<Vec<Matrix>> {
    if v.algebra() != w.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let f = v.field();
    let (dv, dw) = (v.dim(), w.dim());
    let unknowns = dv * dw;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let gens = v.algebra().generators();
    // T[r][k] is unknown k * dw + r, matching column-major vectorization.
    let mut rows = Vec::with_capacity(gens.len() * unknowns);
    for &g in gens {
        let rv = v.action(g);
        let rw = w.action(g);
        for r in 0..dw {
            for c in 0..dv {
                let mut eq = vec![Fe::ZERO; unknowns];
                for k in 0..dv {
                    let x = rv.get(k, c);
                    if !x.is_zero() {
                        let idx = k * dw + r;
                        eq[idx] = f.add(eq[idx], x);
                    }
                }
                for k in 0..dw {
                    let x = rw.get(r, k);
                    if !x.is_zero() {
                        let idx = c * dw + k;
                        eq[idx] = f.sub(eq[idx], x);
                    }
                }
                rows.push(eq);
            }
        }
    }
    let system = Matrix::from_rows(f, unknowns, &rows);
    Ok(system
        .kernel()
        .into_iter()
        .map(|x| Matrix::unvectorize(f, dw, dv, &x))
        .collect())
}

pub fn endomorphism_dim(v: &ModuleRep) -> usize {
    intertwiners(v, v).expect("same algebra").len()
}

/// An invertible intertwiner `T` with `T ρ_V = ρ_W T`, or `None`. `None` is
/// certain when `Hom(V, W) = 0` or when one of the modules is simple; for
/// other inputs a fixed number of seeded combinations is tried.
pub fn module_iso(v: &ModuleRep, w: &ModuleRep) -> Result<Option<Matrix>> {
    if v.algebra() != w.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if v.dim() != w.dim() {
        return Ok(None);
    }
    if v.dim() == 0 {
        return Ok(Some(Matrix::identity(v.field(), 0)));
    }
    let basis = intertwiners(v, w)?;
    if basis.is_empty() {
        return Ok(None);
    }
    if let Some(t) = basis.iter().find(|t| t.is_invertible()) {
        return Ok(Some(t.clone()));
    }
    let f = v.field();
    let mut rng = SeededRng::new(ISO_SEED);
    for _ in 0..ISO_TRIES {
        let mut t = Matrix::zeros(f, w.dim(), v.dim());
        for b in &basis {
            t.add_scaled(f.random(&mut rng), b);
        }
        if t.is_invertible() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Whether `T` intertwines `V` and `W` on every basis element.
pub fn is_intertwiner(v: &ModuleRep, w: &ModuleRep, t: &Matrix) -> bool {
    t.rows() == w.dim()
        && t.cols() == v.dim()
        && (0..v.algebra().dim()).all(|i| t.mul(v.action(i)) == w.action(i).mul(t))
}
