//! Acceptance criteria 1 to 11. Runs without the libtest harness so every
//! criterion prints one line whatever the outcome.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common as oracle;
use hopfcert_core::algebra::{regular_module, ModuleRep, Subalgebra};
use hopfcert_core::constructors::{
    bicrossproduct, builtin_group, commutator_subgroup, conjugate_module, dual_group_algebra, group_algebra,
    induced_module, subgroup_space, GroupTable, MatchedPair, Subgroup,
};
use hopfcert_core::exactfield::{Fe, Field, Matrix, Subspace};
use hopfcert_core::hopf::{
    characters, check_hopf_axioms, commutative_mod_ideal, convolution, hopf_ideal_hk_plus, hopf_subalgebra,
    is_normal, theta_automorphism, twist_module, Character, HopfData,
};
use hopfcert_core::rep::{meataxe_chop, module_iso, radical};
use hopfcert_core::verifier::*;

const SEED: u64 = 2024;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(x: E) -> String {
    x.to_string()
}

fn opts() -> CheckOptions {
    CheckOptions { seed: SEED, oracle: false }
}

fn field(p: u32) -> Field {
    Field::new(p, 1).unwrap()
}

fn kg(name: &str, p: u32) -> Arc<HopfData> {
    Arc::new(group_algebra(&builtin_group(name).unwrap(), &field(p)).unwrap())
}

fn dual(name: &str, p: u32) -> Arc<HopfData> {
    Arc::new(dual_group_algebra(&builtin_group(name).unwrap(), &field(p)).unwrap())
}

fn series(text: &str) -> SeriesFile {
    parse_json(text, "series").unwrap()
}

const S3_CHAIN: &str = r#"{"chain": ["unit", ["()", "(1,2,3)", "(1,3,2)"], "all"]}"#;
const C3_IN_S3: &str = r#"["()", "(1,2,3)", "(1,3,2)"]"#;

fn kc3(h: &HopfData) -> Subspace {
    parse_json::<SubspaceSpec>(C3_IN_S3, "k").unwrap().resolve(h.algebra()).unwrap()
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:?}, limit {:?}", t.elapsed(), limit))
}

fn s3_chain_ok(r: &Report) -> Result<(), String> {
    ensure(r.exit_code == 0, || r.to_text())
}

// 1
fn frobenius_coprime() -> Outcome {
    let t = Instant::now();
    let h = kg("S3", 7);
    let reg = regular_module(h.algebra()).map_err(e)?;
    let chop = meataxe_chop(&reg, SEED).map_err(e)?;
    let mut dims: Vec<usize> = chop.factors.iter().map(|f| f.module.dim()).collect();
    dims.sort_unstable();
    let (classes, semisimple) = oracle::simple_classes(7, &oracle::module_mats(&reg), 6);
    ensure(semisimple, || "oracle finds a non-semisimple regular module".into())?;
    ensure(classes == vec![1, 1, 2], || format!("oracle classes {classes:?}"))?;
    ensure(dims == classes, || format!("chop {dims:?} vs oracle {classes:?}"))?;
    ensure(dims.iter().all(|d| 6 % d == 0), || "a dimension does not divide 6".into())?;
    let r = cmd_frobenius_check(&h, &series(S3_CHAIN), opts()).map_err(e)?;
    s3_chain_ok(&r)?;
    within(t, Duration::from_secs(5))?;
    Ok(format!("kS3/GF(7) simple dims {dims:?}, oracle agrees, exit 0"))
}

// 2
fn frobenius_char_divides() -> Outcome {
    let t = Instant::now();
    let h = dual("S3", 2);
    let reg = regular_module(h.algebra()).map_err(e)?;
    let (classes, semisimple) = oracle::simple_classes(2, &oracle::module_mats(&reg), 6);
    ensure(semisimple && classes == vec![1; 6], || format!("oracle: semisimple {semisimple}, {classes:?}"))?;
    let r = cmd_frobenius_check(&h, &series(r#"{"chain": ["unit", "all"]}"#), opts()).map_err(e)?;
    ensure(r.exit_code == 0, || r.to_text())?;
    let flagged = r.notes.iter().any(|n| n.contains("characteristic divides dimension"));
    ensure(flagged, || "missing characteristic note".into())?;
    let simples = r
        .verdicts
        .iter()
        .find(|v| v.check == "simple modules of H")
        .map(|v| v.evidence.as_array().unwrap().len())
        .unwrap_or(0);
    ensure(simples == 6, || format!("{simples} simples reported"))?;
    within(t, Duration::from_secs(5))?;
    Ok("k^S3/GF(2) six 1-dim simples, flagged char | dim, exit 0".into())
}

// 3
fn negative_control() -> Outcome {
    let h = kg("S3", 3);
    let r = cmd_frobenius_check(&h, &series(S3_CHAIN), opts()).map_err(e)?;
    ensure(r.exit_code == 1, || r.to_text())?;
    let fail = r.first_failure().ok_or("no failing verdict")?;
    ensure(fail.check.contains("semisimple"), || format!("failed at {}", fail.check))?;
    // members of the chain as standalone group algebras
    let members = [None, Some("C3"), Some("S3")];
    let mut dims = Vec::new();
    for v in r.verdicts.iter().filter(|v| v.check.ends_with("is semisimple")) {
        let i = v.evidence["member"].as_u64().unwrap() as usize;
        let want = match members[i] {
            None => 0,
            Some(name) => {
                let reg = regular_module(kg(name, 3).algebra()).map_err(e)?;
                let d = reg.dim();
                oracle::jacobson_radical(3, &oracle::module_mats(&reg), d).len()
            }
        };
        let claimed = v.evidence["radical_dim"].as_u64().unwrap_or(0) as usize;
        ensure(v.passed == (want == 0) && claimed == want, || {
            format!("H_{i}: radical dim {claimed}, oracle {want}")
        })?;
        if !v.passed {
            let index = v.evidence["nilpotency_index"].as_u64().unwrap_or(0);
            let basis = v.evidence["nilpotent_ideal_basis"].as_array().map_or(0, |a| a.len());
            ensure(index >= 2 && basis == claimed, || format!("H_{i}: witness {basis} vectors, index {index}"))?;
        }
        dims.push(claimed);
    }
    ensure(dims.len() == 3, || format!("{} semisimplicity verdicts", dims.len()))?;
    Ok(format!(
        "kS3/GF(3) stops at the gate at {}: radical dims {dims:?} match the oracle, exit 1",
        fail.check
    ))
}

/// `Ind_{C3}^{S3} χ_w` built by hand: basis `r_i ⊗ 1` over coset
/// representatives `{1, (1,2)}`.
fn hand_induced(g: &GroupTable, w: u32) -> Vec<oracle::Mat> {
    let p = 7;
    let c = g.index_of("(1,2,3)").unwrap();
    let reps = [g.identity(), g.index_of("(1,2)").unwrap()];
    let power = |n: usize| (0..3).find(|&k| (0..k).fold(g.identity(), |a, _| g.mul(a, c)) == n);
    (0..g.order())
        .map(|x| {
            let mut m = vec![vec![0u32; 2]; 2];
            for (i, &ri) in reps.iter().enumerate() {
                let gr = g.mul(x, ri);
                for (j, &rj) in reps.iter().enumerate() {
                    let n = g.mul(g.inv(rj), gr);
                    if let Some(k) = power(n) {
                        m[j][i] = (w as u64).pow(k as u32) as u32 % p;
                    }
                }
            }
            m
        })
        .collect()
}

// 4
fn clifford_s3_c3() -> Outcome {
    let g = builtin_group("S3").unwrap();
    let h = kg("S3", 7);
    let r = cmd_clifford_report(&h, &kc3(&h), opts()).map_err(e)?;
    ensure(r.exit_code == 0, || r.to_text())?;
    let mut reported: Vec<Vec<usize>> = r
        .verdicts
        .iter()
        .filter(|v| v.check.ends_with("induced factors share one dimension"))
        .map(|v| serde_json::from_value(v.evidence["dims"].clone()).unwrap())
        .collect();
    reported.sort();
    let mut expected: Vec<Vec<usize>> = [1u32, 2, 4]
        .iter()
        .map(|&w| oracle::simple_classes(7, &hand_induced(&g, w), 2).0)
        .collect();
    expected.sort();
    ensure(reported == expected && expected == vec![vec![1, 1], vec![2], vec![2]], || {
        format!("reported {reported:?}, oracle {expected:?}")
    })?;
    let twists: Vec<_> = r.verdicts.iter().filter(|v| v.check.contains("k_χ")).collect();
    ensure(twists.len() == 1, || format!("{} twist verdicts", twists.len()))?;
    let chi = &twists[0].evidence["chi"];
    for l in g.labels() {
        let sign = if l.matches(',').count() == 1 { 6 } else { 1 };
        ensure(chi[l] == serde_json::json!([sign]), || format!("χ is not the sign character: {chi}"))?;
    }
    let divides = r.verdicts.iter().filter(|v| v.check.contains("| m dim U")).all(|v| v.passed);
    ensure(divides, || "a divisibility verdict failed".into())?;
    Ok("factor sets {1,1} (sign twist found) and {2} twice, dim V | 2 dim U, exit 0".into())
}

fn ambient_residues(h: &HopfData, s: &Subspace) -> Vec<oracle::Vector> {
    s.vectors().iter().map(|v| oracle::to_residues(h.field(), v)).collect()
}

fn products(g: &GroupTable, q: &[oracle::Vector], left: bool) -> Vec<oracle::Vector> {
    let mut out = Vec::new();
    for x in 0..g.order() {
        for v in q {
            let mut w = vec![0u32; g.order()];
            for (y, &c) in v.iter().enumerate() {
                let z = if left { g.mul(x, y) } else { g.mul(y, x) };
                w[z] = (w[z] + c) % 7;
            }
            out.push(w);
        }
    }
    oracle::span(7, out)
}

// 5
fn lies_over_s3_c3() -> Outcome {
    let g = builtin_group("S3").unwrap();
    let h = kg("S3", 7);
    let f = h.field().clone();
    let k = kc3(&h);
    let r = cmd_lies_over(&h, &k, &[], opts()).map_err(e)?;
    ensure(r.exit_code == 0, || r.to_text())?;
    let containments = r.verdicts.iter().filter(|v| v.check.ends_with("Q ⊇ P ∩ K")).count();
    ensure(containments == 4, || format!("{containments} (V, U) pairs"))?;

    // the 2-dim simple and the trivial module, by hand
    let two = hand_induced(&g, 2);
    let trivial: Vec<oracle::Mat> = (0..6).map(|_| vec![vec![1]]).collect();
    let kres = ambient_residues(&h, &k);
    let c = g.index_of("(1,2,3)").unwrap();
    let mut pairs = 0;
    for (v, ws) in [(&two, vec![2u32, 4]), (&trivial, vec![1])] {
        let pm = oracle::annihilator(7, v);
        let pk = oracle::intersect(7, &pm, &kres, 6);
        for w in ws {
            // Q = ker χ_w on kC3, ambient coordinates
            let mut chi = vec![0u32; 6];
            for k in 0..3 {
                let n = (0..k).fold(g.identity(), |a, _| g.mul(a, c));
                chi[n] = (w as u64).pow(k) as u32 % 7;
            }
            let q = oracle::intersect(7, &oracle::kernel(7, &[chi], 6), &kres, 6);
            ensure(q.len() == 2, || format!("Q has dim {}", q.len()))?;
            ensure(oracle::contains_all(7, &q, &pk), || "Q does not contain P ∩ K".into())?;
            let hq = oracle::sum(7, &pm, &products(&g, &q, true));
            let qh = oracle::sum(7, &pm, &products(&g, &q, false));
            ensure(hq.len() < 6 && qh.len() < 6, || format!("dim P+HQ {} P+QH {}", hq.len(), qh.len()))?;
            pairs += 1;
        }
    }
    // the same modules through the command
    let as_module = |mats: &[oracle::Mat]| {
        let d = mats[0].len();
        let ms = mats
            .iter()
            .map(|m| Matrix::from_rows(&f, d, &m.iter().map(|r| r.iter().map(|&x| f.from_int(x as i64)).collect()).collect::<Vec<_>>()))
            .collect();
        ModuleRep::new(h.algebra().clone(), ms).unwrap()
    };
    let r = cmd_lies_over(&h, &k, &[as_module(&two), as_module(&trivial)], opts()).map_err(e)?;
    ensure(r.exit_code == 0, || r.to_text())?;
    Ok(format!("{containments} containments Q ⊇ P∩K, {pairs} hand-checked pairs with dim(P+HQ) < 6, exit 0"))
}

/// Every subgroup generated by at most two elements.
fn small_subgroups(g: &GroupTable) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for a in 0..g.order() {
        for b in a..g.order() {
            let s = g.closure(vec![a, b]);
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out
}

fn corpus_modules(p: u32) -> Vec<(String, ModuleRep)> {
    let mut out: Vec<(String, ModuleRep)> = Vec::new();
    let mut hopfs: Vec<(String, Arc<HopfData>)> = Vec::new();
    for name in ["C2", "C3", "C4", "S3", "D4"] {
        hopfs.push((format!("k{name}"), kg(name, p)));
        hopfs.push((format!("k^{name}"), dual(name, p)));
    }
    for (name, h) in &hopfs {
        let mut base: Vec<(String, ModuleRep)> = Vec::new();
        let reg = regular_module(h.algebra()).unwrap();
        for f in meataxe_chop(&reg, SEED).unwrap().factors {
            base.push((format!("{name} simple {}", f.label), f.module));
        }
        base.push((format!("{name} regular"), reg));
        if let Some(g) = name.strip_prefix('k').filter(|g| !g.starts_with('^')) {
            let g = builtin_group(g).unwrap();
            for elems in small_subgroups(&g) {
                if elems.len() == g.order() {
                    continue;
                }
                let sub = Subgroup::new(&g, &elems).unwrap();
                let k = Subalgebra::new(h.algebra().clone(), subgroup_space(&g, &sub, h.field())).unwrap();
                let kreg = regular_module(k.algebra()).unwrap();
                let mut us: Vec<ModuleRep> = meataxe_chop(&kreg, SEED).unwrap().factors.into_iter().map(|f| f.module).collect();
                us.push(kreg);
                for (i, u) in us.iter().enumerate() {
                    if u.dim() * g.order() / elems.len() <= 5 {
                        let m = induced_module(&k, u).unwrap();
                        base.push((format!("{name} induced from order {} #{i}", elems.len()), m));
                    }
                }
            }
        }
        base.retain(|(_, m)| m.dim() <= 5);
        let chars = characters(h, SEED).unwrap();
        let mut twisted = Vec::new();
        for (label, m) in &base {
            for (j, chi) in chars.iter().enumerate().filter(|(_, c)| !c.is_counit()) {
                twisted.push((format!("{label} twisted by χ{j}"), twist_module(chi, m).unwrap()));
            }
        }
        out.extend(base);
        out.extend(twisted);
    }
    out
}

// 6
fn meataxe_vs_lattice() -> Outcome {
    let t = Instant::now();
    let mut checked = 0;
    for p in [2, 3] {
        for (label, m) in corpus_modules(p) {
            let chop = meataxe_chop(&m, SEED).map_err(e)?;
            let brute = oracle::factor_dims(p, &oracle::module_mats(&m), m.dim());
            ensure(chop.dimensions() == brute, || {
                format!("GF({p}) {label}: chop {:?} vs lattice {brute:?}", chop.dimensions())
            })?;
            checked += 1;
        }
    }
    ensure(checked >= 50, || format!("only {checked} modules"))?;
    within(t, Duration::from_secs(60))?;
    Ok(format!("{checked} modules of dim ≤ 5 over GF(2), GF(3) agree"))
}

fn corpus_hopf() -> Vec<(String, Arc<HopfData>)> {
    let mut out = Vec::new();
    for (p, k) in [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)] {
        let f = Field::new(p, k).unwrap();
        for name in ["C2", "C3", "C4", "S3", "D4", "Q8", "A4"] {
            let g = builtin_group(name).unwrap();
            out.push((format!("k{name}/{f}"), Arc::new(group_algebra(&g, &f).unwrap())));
            out.push((format!("k^{name}/{f}"), Arc::new(dual_group_algebra(&g, &f).unwrap())));
        }
        let s3 = builtin_group("S3").unwrap();
        let pair = MatchedPair::from_factorization(
            &s3,
            &s3.closure(vec![s3.index_of("(1,2,3)").unwrap()]),
            &s3.closure(vec![s3.index_of("(1,2)").unwrap()]),
        )
        .unwrap();
        out.push((format!("bicross S3/{f}"), Arc::new(bicrossproduct(&pair, &f).unwrap().hopf)));
    }
    out
}

/// `θ_χ` from its definition, column `i` = `Σ χ(b_a) c b_b`.
fn theta_by_hand(h: &HopfData, chi: &[Fe]) -> Matrix {
    let f = h.field();
    let n = h.dim();
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n {
        for (a, b, c) in h.coproduct_terms(i) {
            m.set(b, i, f.add(m.get(b, i), f.mul(c, chi[a])));
        }
    }
    m
}

fn convolve_by_hand(h: &HopfData, psi: &[Fe], chi: &[Fe]) -> Vec<Fe> {
    let f = h.field();
    (0..h.dim())
        .map(|i| {
            h.coproduct_terms(i)
                .fold(Fe::ZERO, |acc, (a, b, c)| f.add(acc, f.mul(c, f.mul(psi[a], chi[b]))))
        })
        .collect()
}

// 7
fn twist_laws() -> Outcome {
    let mut identities = 0usize;
    for (name, h) in corpus_hopf() {
        let n = h.dim();
        let chars = characters(&h, SEED).map_err(e)?;
        let eps = theta_automorphism(&Character::counit(&h)).map_err(e)?;
        ensure(eps.matrix().is_identity(), || format!("{name}: θ_ε ≠ id"))?;
        identities += 1;
        let reg = regular_module(h.algebra()).map_err(e)?;
        let mut modules = vec![reg.clone()];
        modules.extend(meataxe_chop(&reg, SEED).map_err(e)?.factors.into_iter().map(|x| x.module));
        let thetas: Vec<Matrix> = chars.iter().map(|c| theta_by_hand(&h, c.row())).collect();
        for (chi, th) in chars.iter().zip(&thetas) {
            let lib = theta_automorphism(chi).map_err(e)?;
            ensure(lib.matrix() == th, || format!("{name}: θ_χ disagrees with its definition"))?;
            let chi_s: Vec<Fe> = (0..n).map(|j| chi.eval(&h.antipode().col(j))).collect();
            let back = theta_by_hand(&h, &chi_s);
            ensure(th.mul(&back).is_identity() && back.mul(th).is_identity(), || {
                format!("{name}: θ_χ ∘ θ_(χ∘S) ≠ id")
            })?;
            identities += 1;
            for v in &modules {
                let tw = twist_module(chi, v).map_err(e)?;
                for i in 0..n {
                    let want = v.act(&th.col(i));
                    ensure(tw.action(i) == &want, || format!("{name}: twist ≠ ρ∘θ at basis {i}"))?;
                }
                identities += 1;
            }
        }
        for (chi, tc) in chars.iter().zip(&thetas) {
            for (psi, tp) in chars.iter().zip(&thetas) {
                let row = convolve_by_hand(&h, psi.row(), chi.row());
                let lib = convolution(psi, chi).map_err(e)?;
                ensure(lib.row() == &row[..], || format!("{name}: ψ*χ disagrees with its definition"))?;
                ensure(tc.mul(tp) == theta_by_hand(&h, &row), || format!("{name}: θ_χ∘θ_ψ ≠ θ_(ψ*χ)"))?;
                identities += 1;
            }
        }
    }
    Ok(format!("{identities} exact identities, zero failures"))
}

// 8
fn maschke() -> Outcome {
    let mut cells = 0;
    for name in ["C2", "C3", "C4", "S3", "D4", "A4"] {
        let order = builtin_group(name).unwrap().order();
        for p in [2u32, 3, 5, 7] {
            let rad = radical(kg(name, p).algebra(), SEED).map_err(e)?;
            let coprime = order % p as usize != 0;
            ensure((rad.dim() == 0) == coprime, || {
                format!("k{name}/GF({p}): radical dim {} with |G| = {order}", rad.dim())
            })?;
            let drad = radical(dual(name, p).algebra(), SEED).map_err(e)?;
            ensure(drad.dim() == 0, || format!("k^{name}/GF({p}) has a radical"))?;
            cells += 1;
        }
    }
    Ok(format!("{cells} cells: radical(kG) = 0 iff p ∤ |G|, k^G always semisimple"))
}

// 9
fn bicross_s3() -> Outcome {
    let text = r#"{"construct": "bicrossproduct", "field": {"p": 7, "k": 1},
        "pair": {"group": "S3", "f": ["(1,2,3)"], "q": ["(1,2)"]}}"#;
    let built = cmd_build(text, None).map_err(e)?.map_err(|r| r.to_text())?;
    let h = built.hopf.ok_or("no Hopf structure")?;
    let s = built.series.ok_or("no series")?;
    ensure(check_hopf_axioms(&h).passed(), || "axioms fail".into())?;
    let chain = s.resolve(h.algebra()).map_err(e)?;
    let n2 = hopf_subalgebra(&h, chain[1].clone()).map_err(e)?;
    ensure(n2.dim() == 2 && is_normal(&n2), || format!("middle term dim {} not normal", n2.dim()))?;
    ensure(commutative_mod_ideal(&hopf_ideal_hk_plus(&n2).map_err(e)?), || "quotient not commutative".into())?;
    let r = cmd_series_check(&h, &s, opts()).map_err(e)?;
    ensure(r.exit_code == 0, || r.to_text())?;
    let r = cmd_frobenius_check(&h, &s, opts()).map_err(e)?;
    ensure(r.exit_code == 0, || r.to_text())?;
    let reg = regular_module(h.algebra()).map_err(e)?;
    let dims = meataxe_chop(&reg, SEED).map_err(e)?.dimensions();
    let brute = oracle::factor_dims(7, &oracle::module_mats(&reg), 6);
    ensure(dims == brute, || format!("chop {dims:?} vs lattice {brute:?}"))?;
    ensure(dims.iter().all(|d| 6 % d == 0), || format!("{dims:?}"))?;
    Ok(format!("axioms, normal 2-dim k^C2 with commutative quotient, series and Frobenius pass, dims {dims:?}"))
}

/// `α_{g⁻¹}` on `kN` in local coordinates: `n ↦ g⁻¹ n g`.
fn conjugate_space(g: &GroupTable, sub: &Subgroup, x: usize, q: &[oracle::Vector], p: u32) -> Vec<oracle::Vector> {
    let els = sub.elements();
    oracle::span(
        p,
        q.iter().map(|v| {
            let mut w = vec![0u32; els.len()];
            for (i, &c) in v.iter().enumerate() {
                let j = sub.local_index(g.conjugate(els[i], x)).unwrap();
                w[j] = (w[j] + c) % p;
            }
            w
        }),
    )
}

// 10
fn group_clifford() -> Outcome {
    let mut factors = 0;
    for name in ["S3", "D4", "A4"] {
        for p in [7u32, 13] {
            let g = builtin_group(name).unwrap();
            let f = field(p);
            let h = Arc::new(group_algebra(&g, &f).unwrap());
            let n = commutator_subgroup(&g);
            let k = Subalgebra::new(h.algebra().clone(), subgroup_space(&g, &n, &f)).map_err(e)?;
            let index = g.order() / n.order();
            // coset representatives of G/N
            let mut reps: Vec<usize> = Vec::new();
            for x in 0..g.order() {
                if !reps.iter().any(|&r| n.contains(g.mul(g.inv(r), x))) {
                    reps.push(x);
                }
            }
            let us = meataxe_chop(&regular_module(k.algebra()).map_err(e)?, SEED).map_err(e)?;
            for u in &us.factors {
                let q = oracle::annihilator(p, &oracle::module_mats(&u.module));
                let mut predicted: Vec<Vec<oracle::Vector>> =
                    reps.iter().map(|&x| conjugate_space(&g, &n, g.inv(x), &q, p)).collect();
                predicted.sort();
                let orbit: Vec<ModuleRep> = reps
                    .iter()
                    .map(|&x| conjugate_module(&g, &n, x, &u.module))
                    .collect::<Result<_, _>>()
                    .map_err(e)?;
                let m = induced_module(&k, &u.module).map_err(e)?;
                let restricted = meataxe_chop(&k.restrict(&m).map_err(e)?, SEED).map_err(e)?;
                let mut observed: Vec<Vec<oracle::Vector>> = Vec::new();
                for w in &restricted.factors {
                    let ann = oracle::annihilator(p, &oracle::module_mats(&w.module));
                    observed.extend(std::iter::repeat(ann).take(w.multiplicity));
                    let in_orbit = orbit
                        .iter()
                        .any(|o| module_iso(o, &w.module).map(|x| x.is_some()).unwrap_or(false));
                    ensure(in_orbit, || format!("{name}/GF({p}): factor {} outside the orbit", w.label))?;
                }
                observed.sort();
                ensure(observed == predicted, || {
                    format!("{name}/GF({p}) U = {}: annihilators differ from the orbit", u.label)
                })?;
                for v in meataxe_chop(&m, SEED).map_err(e)?.factors {
                    ensure((index * u.module.dim()) % v.module.dim() == 0, || {
                        format!("{name}/GF({p}): dim {} ∤ {index}·{}", v.module.dim(), u.module.dim())
                    })?;
                    factors += 1;
                }
            }
        }
    }
    Ok(format!("orbits match on S3, D4, A4 over GF(7), GF(13); {factors} factors divide [G:G′] dim U"))
}

fn suite_reports() -> Vec<String> {
    let mut out = Vec::new();
    let h7 = kg("S3", 7);
    let d4 = kg("D4", 5);
    let c4: Subspace = parse_json::<SubspaceSpec>(r#"["1", "r", "r^2", "r^3"]"#, "k")
        .unwrap()
        .resolve(d4.algebra())
        .unwrap();
    out.push(cmd_frobenius_check(&h7, &series(S3_CHAIN), CheckOptions { seed: SEED, oracle: true }).unwrap().to_json());
    out.push(cmd_frobenius_check(&kg("S3", 3), &series(S3_CHAIN), opts()).unwrap().to_json());
    out.push(cmd_frobenius_check(&dual("S3", 2), &series(r#"{"chain": ["unit", "all"]}"#), opts()).unwrap().to_json());
    out.push(cmd_series_check(&h7, &series(S3_CHAIN), opts()).unwrap().to_json());
    out.push(cmd_clifford_report(&h7, &kc3(&h7), opts()).unwrap().to_json());
    out.push(cmd_clifford_report(&d4, &c4, opts()).unwrap().to_json());
    out.push(cmd_lies_over(&h7, &kc3(&h7), &[], opts()).unwrap().to_json());
    out.push(cmd_lies_over(&d4, &c4, &[], opts()).unwrap().to_json());
    let chop = meataxe_chop(&regular_module(kg("A4", 2).algebra()).unwrap(), SEED).unwrap();
    out.push(format!("{:?}", chop.factors.iter().map(|f| (&f.label, f.multiplicity, f.module.actions())).collect::<Vec<_>>()));
    out
}

// 11
fn determinism() -> Outcome {
    let mut runs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for threads in [1, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().map_err(e)?;
        for rep in 0..2 {
            runs.insert(format!("{threads} threads run {rep}"), pool.install(suite_reports));
        }
    }
    let first = runs.values().next().unwrap().clone();
    for (k, v) in &runs {
        ensure(v == &first, || format!("{k} differs"))?;
    }
    let bytes: usize = first.iter().map(|s| s.len()).sum();
    Ok(format!("{} runs × {} reports ({bytes} bytes) identical on 1 and 4 threads", runs.len(), first.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("Frobenius type, coprime characteristic", frobenius_coprime),
        ("Frobenius type, characteristic divides dimension", frobenius_char_divides),
        ("semisimplicity gate negative control", negative_control),
        ("Clifford report on (kS3, kC3)", clifford_s3_c3),
        ("lying over on (kS3, kC3)", lies_over_s3_c3),
        ("MeatAxe vs submodule lattice", meataxe_vs_lattice),
        ("twist laws", twist_laws),
        ("Maschke both directions", maschke),
        ("bicrossproduct S3 = C3·C2", bicross_s3),
        ("group-level Clifford oracle", group_clifford),
        ("determinism across runs and threads", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
