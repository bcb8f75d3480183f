use super::hom::endomorphism_dim;
use super::spin::spin_basis;
use crate::algebra::ModuleRep;
use crate::error::{Error, Result};
use crate::exactfield::{char_poly, factor_poly, Fe, Matrix, SeededRng, Subspace};

const CANON_SEED: u64 = 0xCA40_0000;
const CANON_BUDGET: usize = 1000;

/// A simple module rewritten in a basis that depends only on its
/// isomorphism class, with the change of basis (columns are the new basis
/// in old coordinates) and its inverse.
pub(crate) struct Canonical {
    pub module: ModuleRep,
    pub basis: Matrix,
    pub basis_inv: Matrix,
}

/// Searches a fixed sequence of algebra elements for one with a factor `f`
/// whose kernel has dimension `dim End(V)`. That kernel is a single line
/// over `End(V)`, so spinning any nonzero vector in it gives a basis that
/// is unique up to a module automorphism.
pub(crate) fn canonical_form(v: &ModuleRep) -> Result<Canonical> {
    let d = v.dim();
    let f = v.field();
    let n = v.algebra().dim();
    if d == 1 {
        return Ok(Canonical {
            module: v.clone(),
            basis: Matrix::identity(f, 1),
            basis_inv: Matrix::identity(f, 1),
        });
    }
    let e = endomorphism_dim(v);
    let gens = v.generator_actions();
    let mut rng = SeededRng::new(CANON_SEED);
    for _ in 0..CANON_BUDGET {
        let x: Vec<Fe> = (0..n).map(|_| f.random(&mut rng)).collect();
        let theta = v.act(&x);
        for (fac, _) in factor_poly(&char_poly(&theta)?)? {
            let ker = fac.eval_matrix(&theta).kernel();
            if ker.len() != e {
                continue;
            }
            let null = Subspace::from_vectors(f, d, ker);
            let basis = spin_basis(f, d, &gens, null.vector(0));
            if basis.len() != d {
                return Err(Error::Verification("canonical form requested for a reducible module".into()));
            }
            let p = Matrix::from_cols(f, d, &basis);
            let p_inv = p.inverse().expect("spin basis is a basis");
            let action = v.actions().iter().map(|m| p_inv.mul(m).mul(&p)).collect();
            let module = ModuleRep::from_parts(v.algebra().clone(), action)?;
            return Ok(Canonical {
                module,
                basis: p,
                basis_inv: p_inv,
            });
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no canonical basis found for a simple module of dimension {d}"
    )))
}

/// Isomorphism test between two simple modules through their canonical
/// forms; returns `T` with `T ρ_V = ρ_W T`.
pub fn simple_iso(v: &ModuleRep, w: &ModuleRep) -> Result<Option<Matrix>> {
    if v.algebra() != w.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    if v.dim() != w.dim() {
        return Ok(None);
    }
    let cv = canonical_form(v)?;
    let cw = canonical_form(w)?;
    if cv.module.actions() != cw.module.actions() {
        return Ok(None);
    }
    Ok(Some(cw.basis.mul(&cv.basis_inv)))
}
