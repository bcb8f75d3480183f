use std::sync::Arc;

use hopfcert_core::algebra::{
    annihilator, ideal_sum, regular_module, IdealBasis, ModuleRep, Subalgebra,
};
use hopfcert_core::constructors::{
    builtin_group, commutator_subgroup, dual_group_algebra, dual_hopf, group_algebra, induced_module, subgroup_space,
    GroupTable, Subgroup,
};
use hopfcert_core::exactfield::{factor_poly_seeded, Field, Matrix, Poly, SeededRng};
use hopfcert_core::hopf::{
    characters, check_hopf_axioms, hopf_ideal_hk_plus, hopf_subalgebra, quotient_hopf, twist_module, HopfData,
};
use hopfcert_core::rep::{meataxe_chop, module_iso, splitting_field};
use proptest::prelude::*;

const FIELDS: [(u32, u32); 8] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1), (13, 1)];
const GROUPS: [&str; 8] = ["C2", "C3", "C4", "C5", "S3", "D4", "Q8", "A4"];

fn field(i: usize) -> Field {
    let (p, k) = FIELDS[i % FIELDS.len()];
    Field::new(p, k).unwrap()
}

fn group(i: usize) -> GroupTable {
    builtin_group(GROUPS[i % GROUPS.len()]).unwrap()
}

fn hopf(g: usize, f: usize, dual: bool) -> Arc<HopfData> {
    let (g, f) = (group(g), field(f));
    Arc::new(if dual { dual_group_algebra(&g, &f) } else { group_algebra(&g, &f) }.unwrap())
}

fn random_vector(f: &Field, n: usize, rng: &mut SeededRng) -> Vec<hopfcert_core::exactfield::Fe> {
    (0..n).map(|_| f.random(rng)).collect()
}

/// A module over the group algebra `h` of `g`: the regular module, one of
/// its factors, or an induction from the commutator subgroup.
fn corpus_module(h: &Arc<HopfData>, g: &GroupTable, pick: usize, seed: u64) -> ModuleRep {
    let reg = regular_module(h.algebra()).unwrap();
    let mut ms = vec![reg.clone()];
    ms.extend(meataxe_chop(&reg, seed).unwrap().factors.into_iter().map(|f| f.module));
    let d = commutator_subgroup(g);
    let k = Subalgebra::new(h.algebra().clone(), subgroup_space(g, &d, h.field())).unwrap();
    let kreg = regular_module(k.algebra()).unwrap();
    for u in meataxe_chop(&kreg, seed).unwrap().factors {
        ms.push(induced_module(&k, &u.module).unwrap());
    }
    ms.swap_remove(pick % ms.len())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_laws(fi in 0usize..8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = field(fi);
        let q = f.order() as u32;
        let (a, b, c) = (f.from_code(a % q).unwrap(), f.from_code(b % q).unwrap(), f.from_code(c % q).unwrap());
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.from_int(0));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a)), f.from_int(1));
        }
        prop_assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
        prop_assert_eq!(f.pth_root(f.frobenius(a)), a);
    }

    #[test]
    fn kernel_vectors_vanish(fi in 0usize..8, rows in 1usize..7, cols in 1usize..7, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = SeededRng::new(seed);
        let mut m = Matrix::random(&f, rows, cols, &mut rng);
        // force some dependence
        if rows > 1 {
            let r0 = m.row(0).to_vec();
            m.row_mut(rows - 1).copy_from_slice(&r0);
        }
        let ker = m.kernel();
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        prop_assert_eq!(m.rank() + ker.len(), cols);
    }

    #[test]
    fn factorization_remultiplies(fi in prop::sample::select(vec![0usize, 3, 1, 6, 4]), deg in 1usize..13, seed in any::<u64>()) {
        let f = field(fi);
        let mut rng = SeededRng::new(seed);
        let mut poly = Poly::random(&f, deg + 1, &mut rng);
        if poly.is_zero() {
            poly = Poly::x(&f);
        }
        let factors = factor_poly_seeded(&poly, seed).unwrap();
        let mut prod = Poly::constant(&f, poly.leading());
        for (g, e) in &factors {
            prop_assert!(g.is_irreducible());
            prop_assert!(g.leading() == f.from_int(1));
            prod = prod.mul(&g.pow(*e as u64));
        }
        prop_assert_eq!(prod, poly);
    }

    #[test]
    fn ideal_laws(gi in 0usize..8, fi in 0usize..8, dual in any::<bool>(), seed in any::<u64>()) {
        let h = hopf(gi, fi, dual);
        let a = h.algebra().clone();
        let f = a.field().clone();
        let mut rng = SeededRng::new(seed);
        let i = IdealBasis::generated(a.clone(), [random_vector(&f, a.dim(), &mut rng)]).unwrap();
        let j = IdealBasis::generated(a.clone(), [random_vector(&f, a.dim(), &mut rng)]).unwrap();
        let s = ideal_sum(&i, &j).unwrap();
        let t = i.intersect(&j).unwrap();
        for x in [&i, &j, &s, &t] {
            prop_assert!(x.verify_closure());
        }
        prop_assert_eq!(s.dim() + t.dim(), i.dim() + j.dim());
        prop_assert_eq!(annihilator(&regular_module(&a).unwrap()).dim(), 0);
    }

    #[test]
    fn quotient_by_annihilator_is_faithful(gi in 0usize..8, fi in 0usize..8, pick in any::<usize>(), seed in any::<u64>()) {
        let g = group(gi);
        let h = hopf(gi, fi, false);
        let m = corpus_module(&h, &g, pick, seed);
        let ann = annihilator(&m);
        prop_assert!(ann.verify_closure());
        let (q, _) = ann.quotient_algebra().unwrap();
        let comp = ann.space().complement_indices();
        let action = comp.iter().map(|&c| m.action(c).clone()).collect();
        let mq = ModuleRep::new(Arc::new(q), action).unwrap();
        prop_assert_eq!(annihilator(&mq).dim(), 0);
    }

    #[test]
    fn antipode_laws(gi in 0usize..8, fi in 0usize..8, dual in any::<bool>()) {
        let h = hopf(gi, fi, dual);
        let s = h.antipode();
        prop_assert!(s.is_invertible());
        let n = h.dim();
        let cocommutative = (0..n).all(|i| {
            let r = h.coproduct_row(i);
            (0..n).all(|a| (0..n).all(|b| r[a * n + b] == r[b * n + a]))
        });
        if cocommutative || h.algebra().is_commutative() {
            prop_assert!(s.mul(s).is_identity());
        }
        let dd = dual_hopf(&dual_hopf(&h).unwrap()).unwrap();
        prop_assert_eq!(&dd, &*h);
    }

    #[test]
    fn hk_plus_rank_and_quotient(gi in 0usize..8, fi in 0usize..8) {
        let g = group(gi);
        let f = field(fi);
        let h = Arc::new(group_algebra(&g, &f).unwrap());
        let d = commutator_subgroup(&g);
        let k = hopf_subalgebra(&h, subgroup_space(&g, &d, &f)).unwrap();
        let i = hopf_ideal_hk_plus(&k).unwrap();
        prop_assert_eq!((h.dim() - i.dim()) * k.dim(), h.dim());
        if i.dim() < h.dim() {
            let q = quotient_hopf(&h, &i).unwrap();
            prop_assert!(check_hopf_axioms(&q.hopf).passed());
            prop_assert!(q.hopf.algebra().is_commutative());
        }
    }

    #[test]
    fn chop_invariants(gi in 0usize..8, fi in 0usize..8, pick in any::<usize>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = group(gi);
        let h = hopf(gi, fi, false);
        let m = corpus_module(&h, &g, pick, 1);
        let a = meataxe_chop(&m, s1).unwrap();
        let b = meataxe_chop(&m, s1).unwrap();
        let c = meataxe_chop(&m, s2).unwrap();
        prop_assert_eq!(a.total_dim(), m.dim());
        let key = |x: &hopfcert_core::rep::CompositionSeries| {
            x.factors.iter().map(|f| (f.label.clone(), f.multiplicity, f.module.actions().to_vec())).collect::<Vec<_>>()
        };
        prop_assert_eq!(key(&a), key(&b));
        prop_assert_eq!(key(&a), key(&c));
    }

    #[test]
    fn twisting_commutes_with_chopping(gi in 0usize..8, fi in 0usize..8, pick in any::<usize>(), seed in any::<u64>()) {
        let g = group(gi);
        let h = hopf(gi, fi, false);
        let m = corpus_module(&h, &g, pick, seed);
        let chop = meataxe_chop(&m, seed).unwrap();
        for chi in characters(&h, seed).unwrap() {
            let tw = twist_module(&chi, &m).unwrap();
            prop_assert_eq!(tw.dim(), m.dim());
            let tchop = meataxe_chop(&tw, seed).unwrap();
            prop_assert_eq!(tchop.dimensions(), chop.dimensions());
            for v in &chop.factors {
                let tv = twist_module(&chi, &v.module).unwrap();
                let found = tchop
                    .factors
                    .iter()
                    .find(|w| module_iso(&w.module, &tv).unwrap().is_some())
                    .map(|w| w.multiplicity);
                prop_assert_eq!(found, Some(v.multiplicity));
            }
        }
    }

    #[test]
    fn split_semisimple_dimension_law(gi in 0usize..8, fi in 0usize..8, dual in any::<bool>(), seed in any::<u64>()) {
        let g = group(gi);
        let f = field(fi);
        prop_assume!(dual || g.order() % f.p() as usize != 0);
        let h = hopf(gi, fi, dual);
        let s = splitting_field(h.algebra(), seed).unwrap();
        let mut total = 0;
        for v in &s.regular.factors {
            prop_assert_eq!(v.multiplicity, v.module.dim());
            total += v.module.dim() * v.module.dim();
        }
        prop_assert_eq!(total, h.dim());
    }

    #[test]
    fn induced_dimension_law(gi in 0usize..8, fi in 0usize..8, gen in any::<usize>(), pick in any::<usize>(), seed in any::<u64>()) {
        let g = group(gi);
        let f = field(fi);
        let h = Arc::new(group_algebra(&g, &f).unwrap());
        let sub = Subgroup::new(&g, &g.closure(vec![gen % g.order()])).unwrap();
        let k = Subalgebra::new(h.algebra().clone(), subgroup_space(&g, &sub, &f)).unwrap();
        let factors = meataxe_chop(&regular_module(k.algebra()).unwrap(), seed).unwrap().factors;
        let u = &factors[pick % factors.len()].module;
        let m = induced_module(&k, u).unwrap();
        prop_assert_eq!(m.dim() * k.dim(), h.dim() * u.dim());
    }
}
