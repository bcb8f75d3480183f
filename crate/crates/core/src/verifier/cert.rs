use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::io::{element_json, HopfFile, SeriesFile};
use super::report::{Kind, Report};
use crate::algebra::{
    annihilator, ideal_product, intersect_subspace, left_multiples, regular_module, right_multiples, AlgebraData,
    ModuleRep, Subalgebra,
};
use crate::constructors::induced_module;
use crate::error::{Error, Result};
use crate::exactfield::{Embedding, Field, Subspace};
use crate::hopf::{
    check_hopf_axioms, characters, hopf_subalgebra, twist_module, Character, HopfData, HopfSubalgebra, SeriesStep,
    SolvableSeries,
};
use crate::rep::{lattice_factor_dims, meataxe_chop, module_iso, radical, splitting_field, CompositionFactor};

#[derive(Clone, Copy, Debug, Default)]
pub struct CheckOptions {
    pub seed: u64,
    /// Cross-check chops against the brute-force submodule lattice.
    pub oracle: bool,
}

fn task_seed(seed: u64, index: usize) -> u64 {
    seed ^ index as u64
}

/// Records the seed a task ran with so the evidence can be replayed.
fn with_seed(mut ev: Value, seed: u64) -> Value {
    if let Value::Object(m) = &mut ev {
        m.insert("seed".into(), Value::from(seed));
    }
    ev
}

/// Reads and validates a Hopf file. Axiom failures surface as input errors.
pub fn load_hopf(text: &str) -> Result<Arc<HopfData>> {
    let file: HopfFile = super::io::parse_json(text, "Hopf file")?;
    let h = file.to_hopf()?;
    h.validate()
        .map(Arc::new)
        .map_err(|e| Error::Parse(format!("Hopf file fails its axioms: {e}")))
}

fn instance(h: &HopfData) -> Value {
    json!({"dim": h.dim(), "field": h.field().to_string()})
}

fn describe_space(a: &AlgebraData, s: &Subspace) -> Vec<String> {
    s.vectors().iter().map(|v| a.describe(v)).collect()
}

fn character_json(chi: &Character) -> Value {
    let h = chi.hopf();
    let f = h.field();
    let mut m = Map::new();
    for (l, &c) in h.algebra().labels().iter().zip(chi.row()) {
        m.insert(l.clone(), element_json(f, c));
    }
    Value::Object(m)
}

pub fn cmd_check_hopf(file: &HopfFile, opts: CheckOptions) -> Result<Report> {
    let h = file.to_hopf()?;
    let mut r = Report::new("check-hopf", opts.seed, instance(&h));
    for c in check_hopf_axioms(&h).checks {
        let ev = match &c.violation {
            None => Value::Null,
            Some(v) => json!({"indices": v.indices, "detail": v.detail}),
        };
        r.assert(c.axiom, c.passed, ev);
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateStep {
    #[serde(flatten)]
    pub step: SeriesStep,
    /// `dim H_i / dim H_{i-1}`, when integral.
    pub rank: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesCertificate {
    pub dims: Vec<usize>,
    pub steps: Vec<CertificateStep>,
    pub semisimple: Vec<bool>,
    pub valid: bool,
    pub failure: Option<String>,
}

fn member(h: &Arc<HopfData>, s: &Subspace) -> Result<HopfSubalgebra> {
    hopf_subalgebra(h, s.clone())
}

/// Nilpotent ideal witness: the radical of a member, its basis in `H`'s
/// coordinates and the least `r` with `J^r = 0`.
fn radical_witness(sub: &HopfSubalgebra, index: usize, seed: u64) -> Result<(bool, Value)> {
    let a = sub.subalgebra().algebra();
    let j = radical(a, seed)?;
    if j.dim() == 0 {
        return Ok((true, json!({"member": index, "dim": a.dim(), "radical_dim": 0})));
    }
    let mut power = j.clone();
    let mut r = 1;
    while power.dim() > 0 {
        power = ideal_product(&power, &j)?;
        r += 1;
    }
    let amb = sub.ambient().algebra();
    let basis: Vec<String> = j
        .space()
        .vectors()
        .iter()
        .map(|v| amb.describe(&sub.subalgebra().to_ambient(v)))
        .collect();
    Ok((
        false,
        json!({
            "member": index,
            "dim": a.dim(),
            "radical_dim": j.dim(),
            "nilpotent_ideal_basis": basis,
            "nilpotency_index": r,
        }),
    ))
}

fn certify(h: &Arc<HopfData>, chain: &[Subspace], seed: u64) -> Result<(SeriesCertificate, Vec<Option<Value>>)> {
    let (steps, failure) = SolvableSeries::check(h, chain)?;
    let steps: Vec<CertificateStep> = steps
        .into_iter()
        .map(|s| CertificateStep {
            rank: (s.dim_lower > 0 && s.dim_upper % s.dim_lower == 0).then(|| s.dim_upper / s.dim_lower),
            step: s,
        })
        .collect();
    let mut failure = failure;
    if failure.is_none() {
        if let Some(s) = steps.iter().find(|s| s.rank.is_none()) {
            failure = Some(format!("step {}: rank {}/{} is not integral", s.step.index, s.step.dim_upper, s.step.dim_lower));
        }
    }
    let mut semisimple = Vec::new();
    let mut witnesses = Vec::new();
    if failure.is_none() {
        let results = chain
            .par_iter()
            .enumerate()
            .map(|(i, s)| {
                let sub = member(h, s)?;
                radical_witness(&sub, i, task_seed(seed, i))
            })
            .collect::<Result<Vec<_>>>()?;
        for (ok, w) in results {
            semisimple.push(ok);
            witnesses.push((!ok).then_some(w));
        }
    }
    let cert = SeriesCertificate {
        dims: chain.iter().map(|s| s.dim()).collect(),
        valid: failure.is_none(),
        steps,
        semisimple,
        failure,
    };
    Ok((cert, witnesses))
}

pub fn cmd_series_check(h: &Arc<HopfData>, series: &SeriesFile, opts: CheckOptions) -> Result<Report> {
    let chain = series.resolve(h.algebra())?;
    let mut r = Report::new("series-check", opts.seed, instance(h));
    let (cert, _) = certify(h, &chain, opts.seed)?;
    if cert.steps.is_empty() {
        r.assert("chain runs from k to H", false, json!(cert.failure));
    }
    for s in &cert.steps {
        let ev = json!({"dims": [s.step.dim_lower, s.step.dim_upper], "failure": s.step.failure});
        r.assert(format!("step {}: Hopf subalgebra", s.step.index), s.step.hopf_subalgebra, ev.clone());
        if s.step.hopf_subalgebra {
            r.assert(format!("step {}: normal", s.step.index), s.step.normal, ev.clone());
        }
        if s.step.normal {
            r.assert(format!("step {}: commutative quotient", s.step.index), s.step.commutative_quotient, ev.clone());
        }
        r.assert(
            format!("step {}: rank is integral", s.step.index),
            s.rank.is_some(),
            json!({"rank": s.rank, "dims": [s.step.dim_lower, s.step.dim_upper]}),
        );
    }
    r.info("certificate", serde_json::to_value(&cert).expect("serializable"));
    Ok(r)
}

/// Common splitting degree of several algebras.
fn common_splitting_degree(algebras: &[Arc<AlgebraData>], seed: u64) -> Result<u32> {
    let degrees = algebras
        .par_iter()
        .enumerate()
        .map(|(i, a)| splitting_field(a, task_seed(seed, i)).map(|s| s.degree))
        .collect::<Result<Vec<u32>>>()?;
    Ok(degrees.into_iter().fold(1, lcm))
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn map_subspace(s: &Subspace, emb: &Embedding) -> Subspace {
    let vs = s
        .vectors()
        .into_iter()
        .map(|v| v.into_iter().map(|c| emb.apply(c)).collect::<Vec<_>>());
    Subspace::from_vectors(emb.target(), s.ambient_dim(), vs)
}

fn extend(h: &Arc<HopfData>, degree: u32) -> Result<(Arc<HopfData>, Embedding)> {
    let target: Field = h.field().extension(degree)?;
    let emb = Embedding::new(h.field(), &target)?;
    let ext = if degree == 1 { h.clone() } else { Arc::new(h.extend_scalars(&emb)?) };
    Ok((ext, emb))
}

/// `lower ⊂ upper` as a subalgebra of the standalone `upper`.
fn relative(h: &Arc<HopfData>, lower: &Subspace, upper: &Subspace) -> Result<Subalgebra> {
    let up = member(h, upper)?;
    let local = lower
        .vectors()
        .iter()
        .map(|v| {
            up.subalgebra()
                .to_local(v)
                .ok_or_else(|| Error::Verification("chain is not increasing".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let space = Subspace::from_vectors(h.field(), up.dim(), local);
    Subalgebra::new(up.subalgebra().algebra().clone(), space)
}

fn find_iso(v: &ModuleRep, candidates: &[CompositionFactor]) -> Result<bool> {
    for w in candidates {
        if w.module.dim() == v.dim() && module_iso(&w.module, v)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// For each simple `V` of the upper algebra, a simple `U` of the lower one
/// whose induction has `V` as a factor, with `dim V | m dim U`.
fn step_refinement(k: &Subalgebra, seed: u64) -> Result<Vec<(bool, Value)>> {
    let hi = k.ambient();
    let m = hi.dim() / k.dim();
    let us = meataxe_chop(&regular_module(k.algebra())?, seed)?.factors;
    let vs = meataxe_chop(&regular_module(hi)?, seed)?.factors;
    let induced = us
        .iter()
        .map(|u| Ok(meataxe_chop(&induced_module(k, &u.module)?, seed)?.factors))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for v in &vs {
        let mut found = None;
        for (ui, fs) in induced.iter().enumerate() {
            if find_iso(&v.module, fs)? {
                found = Some(ui);
                break;
            }
        }
        out.push(match found {
            Some(ui) => {
                let du = us[ui].module.dim();
                let ok = (m * du) % v.module.dim() == 0;
                (ok, json!({"V": v.label, "dim_V": v.module.dim(), "U": us[ui].label, "dim_U": du, "m": m}))
            }
            None => (false, json!({"V": v.label, "dim_V": v.module.dim(), "error": "no simple U induces V"})),
        });
    }
    Ok(out)
}

pub fn cmd_frobenius_check(h: &Arc<HopfData>, series: &SeriesFile, opts: CheckOptions) -> Result<Report> {
    let chain = series.resolve(h.algebra())?;
    let n = h.dim();
    let p = h.field().p() as usize;
    let mut r = Report::new("frobenius-check", opts.seed, instance(h));
    let (cert, witnesses) = certify(h, &chain, opts.seed)?;
    r.assert(
        "series certificate",
        cert.valid,
        json!({"dims": cert.dims, "failure": cert.failure}),
    );
    if !cert.valid {
        return Ok(r);
    }
    for (i, w) in witnesses.iter().enumerate() {
        let ev = w.clone().unwrap_or_else(|| json!({"member": i, "radical_dim": 0}));
        let ev = with_seed(ev, task_seed(opts.seed, i));
        r.assert(format!("H_{i} is semisimple"), w.is_none(), ev);
    }
    if r.exit_code != 0 {
        return Ok(r);
    }
    if n % p == 0 {
        r.note(format!(
            "characteristic divides dimension: p = {p} divides dim H = {n}, outside the coprime-characteristic regime"
        ));
    }
    let members = chain
        .iter()
        .map(|s| Ok(member(h, s)?.subalgebra().algebra().clone()))
        .collect::<Result<Vec<_>>>()?;
    let degree = common_splitting_degree(&members, opts.seed)?;
    let (hx, emb) = extend(h, degree)?;
    r.info("splitting field", json!({"degree": degree, "field": hx.field().to_string()}));

    let top = meataxe_chop(&regular_module(hx.algebra())?, opts.seed)?;
    let dims: Vec<Value> = top
        .factors
        .iter()
        .map(|f| json!({"label": f.label, "dim": f.module.dim(), "multiplicity": f.multiplicity}))
        .collect();
    r.info("simple modules of H", Value::from(dims));
    for f in &top.factors {
        let d = f.module.dim();
        r.assert(
            format!("dim {} = {d} divides dim H = {n}", f.label),
            n % d == 0,
            json!({"label": f.label, "dim": d, "dim_H": n}),
        );
    }
    let sq: usize = top.factors.iter().map(|f| f.module.dim() * f.module.dim()).sum();
    r.assert(
        "sum of squared simple dimensions equals dim H",
        sq == n,
        json!({"sum": sq, "dim_H": n}),
    );

    let xchain: Vec<Subspace> = chain.iter().map(|s| map_subspace(s, &emb)).collect();
    let steps = (1..xchain.len())
        .into_par_iter()
        .map(|i| {
            let k = relative(&hx, &xchain[i - 1], &xchain[i])?;
            step_refinement(&k, task_seed(opts.seed, i))
        })
        .collect::<Result<Vec<_>>>()?;
    for (i, entries) in steps.into_iter().enumerate() {
        for (ok, ev) in entries {
            let v = ev["V"].as_str().unwrap_or("?").to_string();
            let ev = with_seed(ev, task_seed(opts.seed, i + 1));
            r.assert(format!("step {}: dim V | m dim U for V = {v}", i + 1), ok, ev);
        }
    }

    if opts.oracle {
        let chop = meataxe_chop(&regular_module(h.algebra())?, opts.seed)?;
        match lattice_factor_dims(&regular_module(h.algebra())?) {
            Some(dims) => r.assert(
                "oracle: chop agrees with the submodule lattice",
                dims == chop.dimensions(),
                json!({"chop": chop.dimensions(), "lattice": dims}),
            ),
            None => r.note("oracle skipped: module too large for lattice enumeration"),
        }
    }
    Ok(r)
}

fn k_subalgebra(h: &Arc<HopfData>, k_space: &Subspace, r: &mut Report) -> Result<Option<HopfSubalgebra>> {
    match hopf_subalgebra(h, k_space.clone()) {
        Ok(k) => {
            r.assert("K is a Hopf subalgebra", true, json!({"dim": k.dim()}));
            Ok(Some(k))
        }
        Err(e @ (Error::NotSubalgebra(_) | Error::Axiom(_))) => {
            r.assert("K is a Hopf subalgebra", false, json!(e.to_string()));
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

struct CliffordEntry {
    verdicts: Vec<(String, bool, Kind, Value)>,
}

fn clifford_for_u(
    kx: &Subalgebra,
    u: &CompositionFactor,
    chars: &[Character],
    m: usize,
    semisimple: bool,
    seed: u64,
) -> Result<CliffordEntry> {
    let strict = if semisimple { Kind::Assertion } else { Kind::Info };
    let mut out = Vec::new();
    let ind = induced_module(kx, &u.module)?;
    let chop = meataxe_chop(&ind, seed)?;
    let du = u.module.dim();
    let dims: Vec<usize> = chop.factors.iter().map(|f| f.module.dim()).collect();
    let labels: Vec<&str> = chop.factors.iter().map(|f| f.label.as_str()).collect();
    out.push((
        format!("U = {}: induced factors share one dimension", u.label),
        dims.windows(2).all(|w| w[0] == w[1]),
        strict,
        json!({"U": u.label, "dim_U": du, "factors": labels, "dims": dims,
               "multiplicities": chop.factors.iter().map(|f| f.multiplicity).collect::<Vec<_>>()}),
    ));
    for f in &chop.factors {
        let d = f.module.dim();
        out.push((
            format!("U = {}: dim {} | m dim U", u.label, f.label),
            (m * du) % d == 0,
            Kind::Assertion,
            json!({"V": f.label, "dim_V": d, "m": m, "dim_U": du}),
        ));
    }
    if chop.factors.len() == 1 {
        out.push((
            format!("U = {}: twist chain", u.label),
            true,
            strict,
            json!({"pairs": [], "note": "single factor; χ = ε"}),
        ));
    }
    for pair in chop.factors.windows(2) {
        let (v1, v2) = (&pair[0], &pair[1]);
        let mut found = None;
        for chi in chars {
            let tw = twist_module(chi, &v2.module)?;
            if tw.dim() == v1.module.dim() && module_iso(&v1.module, &tw)?.is_some() {
                found = Some(chi);
                break;
            }
        }
        out.push((
            format!("U = {}: {} ≅ k_χ ⊗ {} for some character χ", u.label, v1.label, v2.label),
            found.is_some(),
            strict,
            json!({"V1": v1.label, "V2": v2.label, "chi": found.map(character_json)}),
        ));
    }
    Ok(CliffordEntry { verdicts: out })
}

pub fn cmd_clifford_report(h: &Arc<HopfData>, k_space: &Subspace, opts: CheckOptions) -> Result<Report> {
    let n = h.dim();
    let mut r = Report::new("clifford-report", opts.seed, instance(h));
    let Some(k) = k_subalgebra(h, k_space, &mut r)? else {
        return Ok(r);
    };
    let integral = n % k.dim() == 0;
    r.assert("dim K divides dim H", integral, json!({"dim_H": n, "dim_K": k.dim()}));
    if !integral {
        return Ok(r);
    }
    let m = n / k.dim();
    let rad = radical(h.algebra(), opts.seed)?;
    let semisimple = rad.dim() == 0;
    r.info("H semisimple", json!({"radical_dim": rad.dim()}));
    if !semisimple {
        r.note("warning: H is not semisimple; equal-dimension and twist checks are reported but not enforced");
    }
    let degree = common_splitting_degree(&[h.algebra().clone(), k.subalgebra().algebra().clone()], opts.seed)?;
    let (hx, emb) = extend(h, degree)?;
    r.info("splitting field", json!({"degree": degree, "field": hx.field().to_string()}));
    let kx = Subalgebra::new(hx.algebra().clone(), map_subspace(k.space(), &emb))?;
    let chars = characters(&hx, opts.seed)?;
    r.info(
        "characters of H",
        Value::from(chars.iter().map(character_json).collect::<Vec<_>>()),
    );
    let us = meataxe_chop(&regular_module(kx.algebra())?, opts.seed)?.factors;
    let entries = us
        .par_iter()
        .enumerate()
        .map(|(i, u)| clifford_for_u(&kx, u, &chars, m, semisimple, task_seed(opts.seed, i)))
        .collect::<Result<Vec<_>>>()?;
    for (i, e) in entries.into_iter().enumerate() {
        for (check, ok, kind, ev) in e.verdicts {
            r.push(check, ok, kind, with_seed(ev, task_seed(opts.seed, i)));
        }
    }
    Ok(r)
}

fn space_contains(big: &Subspace, small: &Subspace) -> bool {
    big.contains_subspace(small)
}

struct LiesOverEntry {
    verdicts: Vec<(String, bool, Value)>,
}

fn lies_over_for_v(h: &Arc<HopfData>, k: &Subalgebra, label: &str, v: &ModuleRep, seed: u64) -> Result<LiesOverEntry> {
    let a = h.algebra();
    let n = a.dim();
    let mut out = Vec::new();
    let p = annihilator(v);
    let pk = intersect_subspace(&p, k)?;
    let restricted = k.restrict(v)?;
    let chop = meataxe_chop(&restricted, seed)?;
    for u in &chop.factors {
        let q = annihilator(&u.module);
        let ok = space_contains(q.space(), pk.space());
        let q_amb = Subspace::from_vectors(a.field(), n, q.space().vectors().iter().map(|x| k.to_ambient(x)));
        out.push((
            format!("V = {label}, U = {}: Q ⊇ P ∩ K", u.label),
            ok,
            json!({"dim_P": p.dim(), "dim_Q": q.dim(), "dim_P_cap_K": pk.dim(),
                   "Q": describe_space(a, &q_amb)}),
        ));
        let hq = left_multiples(a, &q_amb);
        let qh = right_multiples(a, &q_amb);
        let left = p.space().sum(&hq).dim();
        let right = p.space().sum(&qh).dim();
        out.push((
            format!("V = {label}, U = {}: P + HQ ≠ H and P + QH ≠ H", u.label),
            left < n && right < n,
            json!({"dim_P_plus_HQ": left, "dim_P_plus_QH": right, "dim_H": n}),
        ));
        let kq = regular_module(k.algebra())?.quotient(q.space())?;
        let ind = induced_module(k, &kq)?;
        let ichop = meataxe_chop(&ind, seed)?;
        for w in &ichop.factors {
            let pw = annihilator(&w.module);
            let pwk = intersect_subspace(&pw, k)?;
            out.push((
                format!("V = {label}, U = {}: annihilator of {} in H ⊗_K K/Q lies over Q", u.label, w.label),
                space_contains(q.space(), pwk.space()),
                json!({"W": w.label, "dim_annihilator": pw.dim(), "dim_cap_K": pwk.dim(), "dim_Q": q.dim()}),
            ));
        }
    }
    Ok(LiesOverEntry { verdicts: out })
}

/// `modules` are `H`-modules whose composition factors are examined; when
/// empty, the simple factors of the regular module are used.
pub fn cmd_lies_over(
    h: &Arc<HopfData>,
    k_space: &Subspace,
    modules: &[ModuleRep],
    opts: CheckOptions,
) -> Result<Report> {
    let mut r = Report::new("lies-over", opts.seed, instance(h));
    let Some(k) = k_subalgebra(h, k_space, &mut r)? else {
        return Ok(r);
    };
    let krad = radical(k.subalgebra().algebra(), opts.seed)?;
    r.push(
        "K is semisimple",
        krad.dim() == 0,
        Kind::Assumption,
        json!({"radical_dim": krad.dim()}),
    );
    if krad.dim() != 0 {
        return Ok(r);
    }
    let mut simples: Vec<(String, ModuleRep)> = Vec::new();
    if modules.is_empty() {
        for f in meataxe_chop(&regular_module(h.algebra())?, opts.seed)?.factors {
            simples.push((f.label, f.module));
        }
    } else {
        for (i, m) in modules.iter().enumerate() {
            if m.algebra() != h.algebra() {
                return Err(Error::AlgebraMismatch);
            }
            for f in meataxe_chop(m, task_seed(opts.seed, i))?.factors {
                simples.push((format!("M{i}:{}", f.label), f.module));
            }
        }
    }
    let entries = simples
        .par_iter()
        .enumerate()
        .map(|(i, (label, v))| lies_over_for_v(h, k.subalgebra(), label, v, task_seed(opts.seed, i)))
        .collect::<Result<Vec<_>>>()?;
    for (i, e) in entries.into_iter().enumerate() {
        for (check, ok, ev) in e.verdicts {
            r.assert(check, ok, with_seed(ev, task_seed(opts.seed, i)));
        }
    }
    Ok(r)
}
