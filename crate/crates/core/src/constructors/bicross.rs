use std::sync::Arc;

use serde::Serialize;

use super::group::{GroupTable, Subgroup};
use crate::algebra::{AlgebraData, SparseVec};
use crate::error::{Error, Result};
use crate::exactfield::{Fe, Field, Matrix, Subspace};
use crate::hopf::{check_hopf_axioms, HopfData};

/// Matched pair of groups `(F, Q)` with `q▷f ∈ F` and `q◁f ∈ Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchedPair {
    f: GroupTable,
    q: GroupTable,
    // [q][f]
    tri: Vec<Vec<usize>>,
    ret: Vec<Vec<usize>>,
}

impl MatchedPair {
    /// Checks the compatibility identities on every pair and triple.
    pub fn new(f: GroupTable, q: GroupTable, tri: Vec<Vec<usize>>, ret: Vec<Vec<usize>>) -> Result<MatchedPair> {
        let (nf, nq) = (f.order(), q.order());
        let shape_ok = |t: &Vec<Vec<usize>>, bound: usize| {
            t.len() == nq && t.iter().all(|r| r.len() == nf && r.iter().all(|&x| x < bound))
        };
        if !shape_ok(&tri, nf) || !shape_ok(&ret, nq) {
            return Err(Error::MatchedPair(format!("action tables must be {nq}x{nf} with entries in range")));
        }
        let mp = MatchedPair { f, q, tri, ret };
        mp.check()?;
        Ok(mp)
    }

    fn check(&self) -> Result<()> {
        let (f, q) = (&self.f, &self.q);
        let err = |what: &str, idx: &[usize]| Err(Error::MatchedPair(format!("{what} fails at {idx:?}")));
        for x in 0..f.order() {
            if self.act(q.identity(), x) != x {
                return err("1▷f = f", &[x]);
            }
            if self.ret(q.identity(), x) != q.identity() {
                return err("1◁f = 1", &[x]);
            }
        }
        for y in 0..q.order() {
            if self.ret(y, f.identity()) != y {
                return err("q◁1 = q", &[y]);
            }
            if self.act(y, f.identity()) != f.identity() {
                return err("q▷1 = 1", &[y]);
            }
        }
        for y in 0..q.order() {
            for x in 0..f.order() {
                for y2 in 0..q.order() {
                    if self.act(q.mul(y, y2), x) != self.act(y, self.act(y2, x)) {
                        return err("(qq')▷f = q▷(q'▷f)", &[y, y2, x]);
                    }
                    let lhs = self.ret(q.mul(y, y2), x);
                    let rhs = q.mul(self.ret(y, self.act(y2, x)), self.ret(y2, x));
                    if lhs != rhs {
                        return err("(qq')◁f = (q◁(q'▷f))(q'◁f)", &[y, y2, x]);
                    }
                }
                for x2 in 0..f.order() {
                    if self.ret(y, f.mul(x, x2)) != self.ret(self.ret(y, x), x2) {
                        return err("q◁(ff') = (q◁f)◁f'", &[y, x, x2]);
                    }
                    let lhs = self.act(y, f.mul(x, x2));
                    let rhs = f.mul(self.act(y, x), self.act(self.ret(y, x), x2));
                    if lhs != rhs {
                        return err("q▷(ff') = (q▷f)((q◁f)▷f')", &[y, x, x2]);
                    }
                }
            }
        }
        Ok(())
    }

    /// From an exact factorization `G = F·Q`: writing `q·f = f'·q'` gives
    /// `q▷f = f'` and `q◁f = q'`.
    pub fn from_factorization(g: &GroupTable, f_elems: &[usize], q_elems: &[usize]) -> Result<MatchedPair> {
        let fs = Subgroup::new(g, f_elems)?;
        let qs = Subgroup::new(g, q_elems)?;
        if fs.order() * qs.order() != g.order() {
            return Err(Error::MatchedPair(format!(
                "|F|·|Q| = {} differs from |G| = {}",
                fs.order() * qs.order(),
                g.order()
            )));
        }
        let mut split = vec![None; g.order()];
        for (i, &x) in fs.elements().iter().enumerate() {
            for (j, &y) in qs.elements().iter().enumerate() {
                let s = &mut split[g.mul(x, y)];
                if s.is_some() {
                    return Err(Error::MatchedPair("F ∩ Q is not trivial".into()));
                }
                *s = Some((i, j));
            }
        }
        let mut tri = vec![vec![0; fs.order()]; qs.order()];
        let mut ret = vec![vec![0; fs.order()]; qs.order()];
        for (j, &y) in qs.elements().iter().enumerate() {
            for (i, &x) in fs.elements().iter().enumerate() {
                let (a, b) = split[g.mul(y, x)].expect("G = FQ");
                tri[j][i] = a;
                ret[j][i] = b;
            }
        }
        MatchedPair::new(fs.table().clone(), qs.table().clone(), tri, ret)
    }

    /// Both actions trivial: the direct product.
    pub fn trivial(f: GroupTable, q: GroupTable) -> MatchedPair {
        let tri = vec![(0..f.order()).collect(); q.order()];
        let ret = (0..q.order()).map(|y| vec![y; f.order()]).collect();
        MatchedPair::new(f, q, tri, ret).expect("trivial actions are compatible")
    }

    pub fn f(&self) -> &GroupTable {
        &self.f
    }

    pub fn q(&self) -> &GroupTable {
        &self.q
    }

    /// `q▷f`
    pub fn act(&self, q: usize, f: usize) -> usize {
        self.tri[q][f]
    }

    /// `q◁f`
    pub fn ret(&self, q: usize, f: usize) -> usize {
        self.ret[q][f]
    }

    /// Basis index of `e_q # f`.
    pub fn index(&self, q: usize, f: usize) -> usize {
        q * self.f.order() + f
    }

    /// `span{e_q # 1}`, the copy of `k^Q`.
    pub fn function_part(&self, field: &Field) -> Subspace {
        let n = self.f.order() * self.q.order();
        let vs = (0..self.q.order()).map(|y| crate::exactfield::unit_vector(n, self.index(y, self.f.identity())));
        Subspace::from_vectors(field, n, vs)
    }

    /// `span{Σ_q e_q # f}`, the copy of `kF`.
    pub fn group_part(&self, field: &Field) -> Subspace {
        let n = self.f.order() * self.q.order();
        let vs = (0..self.f.order()).map(|x| {
            let mut v = vec![Fe::ZERO; n];
            for y in 0..self.q.order() {
                v[self.index(y, x)] = Fe::ONE;
            }
            v
        });
        Subspace::from_vectors(field, n, vs)
    }
}

/// Conventions tried in order. The first is the default.
pub const BICROSS_CONVENTIONS: [&str; 4] = [
    "Δ over ab=q, product [q◁f = q']",
    "Δ over ba=q, product [q◁f = q']",
    "Δ over ab=q, product [q◁f⁻¹ = q']",
    "Δ over ba=q, product [q◁f⁻¹ = q']",
];

#[derive(Clone, Debug)]
pub struct Bicrossproduct {
    pub hopf: HopfData,
    pub convention: usize,
    /// `(convention, first failing axiom)` for each rejected convention.
    pub rejected: Vec<(usize, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConventionRecord {
    pub index: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Bicrossproduct {
    pub fn convention_name(&self) -> &'static str {
        BICROSS_CONVENTIONS[self.convention]
    }

    pub fn record(&self) -> Vec<ConventionRecord> {
        let mut out: Vec<ConventionRecord> = self
            .rejected
            .iter()
            .map(|(i, d)| ConventionRecord {
                index: *i,
                name: BICROSS_CONVENTIONS[*i],
                passed: false,
                detail: Some(d.clone()),
            })
            .collect();
        out.push(ConventionRecord {
            index: self.convention,
            name: self.convention_name(),
            passed: true,
            detail: None,
        });
        out
    }
}

fn candidate(m: &MatchedPair, field: &Field, variant: usize) -> Result<HopfData> {
    let (f, q) = (&m.f, &m.q);
    let (nf, nq) = (f.order(), q.order());
    let n = nf * nq;
    let swap = variant & 1 == 1;
    let inverse = variant & 2 == 2;
    let labels = (0..nq)
        .flat_map(|y| (0..nf).map(move |x| format!("e_{}#{}", q.label(y), f.label(x))))
        .collect();
    let mut entries = Vec::new();
    for y in 0..nq {
        for x in 0..nf {
            let target = if inverse { m.ret(y, f.inv(x)) } else { m.ret(y, x) };
            for x2 in 0..nf {
                entries.push((m.index(y, x), m.index(target, x2), m.index(y, f.mul(x, x2)), Fe::ONE));
            }
        }
    }
    let mut unit = vec![Fe::ZERO; n];
    for y in 0..nq {
        unit[m.index(y, f.identity())] = Fe::ONE;
    }
    let algebra = AlgebraData::from_structconst(field, labels, entries, unit)?;
    let mut coproduct: Vec<SparseVec> = vec![Vec::new(); n];
    for y in 0..nq {
        for x in 0..nf {
            let i = m.index(y, x);
            for a in 0..nq {
                for b in 0..nq {
                    let prod = if swap { q.mul(b, a) } else { q.mul(a, b) };
                    if prod == y {
                        let left = m.index(a, m.act(b, x));
                        let right = m.index(b, x);
                        coproduct[i].push((left * n + right, Fe::ONE));
                    }
                }
            }
        }
    }
    let mut counit = vec![Fe::ZERO; n];
    for x in 0..nf {
        counit[m.index(q.identity(), x)] = Fe::ONE;
    }
    let algebra = Arc::new(algebra);
    let antipode = if variant == 0 {
        // S(e_q # f) = e_{(q◁f)⁻¹} # (q▷f)⁻¹
        let mut s = Matrix::zeros(field, n, n);
        for y in 0..nq {
            for x in 0..nf {
                s.set(m.index(q.inv(m.ret(y, x)), f.inv(m.act(y, x))), m.index(y, x), Fe::ONE);
            }
        }
        s
    } else {
        match solve_antipode(&algebra, &coproduct, &counit) {
            Some(s) => s,
            None => return Err(Error::Axiom("antipode: no convolution inverse of the identity exists".into())),
        }
    };
    HopfData::from_sparse(algebra, coproduct, counit, antipode)
}

/// Solves `Σ S(x₁) x₂ = ε(x) 1` for `S` as a linear system.
fn solve_antipode(a: &AlgebraData, coproduct: &[SparseVec], counit: &[Fe]) -> Option<Matrix> {
    let n = a.dim();
    let f = a.field();
    // unknown S[r][col] sits at col * n + r; equation (i, t) at i * n + t
    let mut sys = Matrix::zeros(f, n * n, n * n);
    let mut rhs = vec![Fe::ZERO; n * n];
    for (i, terms) in coproduct.iter().enumerate() {
        for t in 0..n {
            rhs[i * n + t] = f.mul(counit[i], a.unit()[t]);
        }
        for &(idx, c) in terms {
            let (col, b) = (idx / n, idx % n);
            for r in 0..n {
                for &(t, d) in a.product(r, b) {
                    let cur = sys.get(i * n + t, col * n + r);
                    sys.set(i * n + t, col * n + r, f.mul_add(cur, c, d));
                }
            }
        }
    }
    let x = sys.solve(&rhs)?;
    Some(Matrix::from_fn(f, n, n, |r, c| x[c * n + r]))
}

/// Bicrossproduct `k^Q # kF`. Conventions are tried in the order of
/// [`BICROSS_CONVENTIONS`]; the first whose data passes the Hopf axioms is
/// returned.
pub fn bicrossproduct(m: &MatchedPair, field: &Field) -> Result<Bicrossproduct> {
    let mut rejected = Vec::new();
    for variant in 0..BICROSS_CONVENTIONS.len() {
        let detail = match candidate(m, field, variant) {
            Ok(h) => {
                let report = check_hopf_axioms(&h);
                match report.first_failure() {
                    None => {
                        return Ok(Bicrossproduct {
                            hopf: h.validate()?,
                            convention: variant,
                            rejected,
                        })
                    }
                    Some(c) => format!("{}: {}", c.axiom, c.violation.as_ref().map_or("", |v| v.detail.as_str())),
                }
            }
            Err(e) => e.to_string(),
        };
        rejected.push((variant, detail));
    }
    Err(Error::Axiom(format!(
        "no bicrossproduct convention passes: {}",
        rejected
            .iter()
            .map(|(i, d)| format!("[{}] {d}", BICROSS_CONVENTIONS[*i]))
            .collect::<Vec<_>>()
            .join("; ")
    )))
}
