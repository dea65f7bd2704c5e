//! Structural invariants as properties over seeded random inputs.

use proptest::prelude::*;

use d2kit::algcore::{frobenius_coordinates, index_one_coordinates, is_separability_idempotent, Algebra, FrobeniusOutcome};
use d2kit::bialgd::{bialgebroid_a, bialgebroid_b, dual_bialgebroid, invariants_a, pairing_symmetries, smash_product, verify_action, DualKind};
use d2kit::exactla::{kernel, lin_comb, member, rank, Field, Mat, Scalar, Subspace};
use d2kit::extcore::examples::{algebra_pool, random_extension};
use d2kit::extcore::{classify, CentralizerChain, ExtensionProfile, RingExtension};
use d2kit::frobtower::{build_tower, find_frobenius_system, psi_isos, tower_extension, FrobeniusSearch};
use d2kit::morita::build_context;
use d2kit::quantum::{prepare, weak_hopf_verify};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(3)), Just(Field::Prime(5))]
}

fn rows(f: Field, r: usize, c: usize) -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    prop::collection::vec(prop::collection::vec(-3i64..4, c), r).prop_map(move |v| v.into_iter().map(|row| row.into_iter().map(|x| f.int(x)).collect()).collect())
}

/// Small pool algebras, where cubic checks stay cheap.
fn pool_algebra(f: Field) -> impl Strategy<Value = Algebra> {
    let pool: Vec<Algebra> = algebra_pool(f).into_iter().map(|(_, a)| a).filter(|a| a.dim() <= 4).collect();
    prop::sample::select(pool)
}

/// A random extension with `dim M ≤ max`, classified.
fn classified(f: Field, seed: u64, max: usize) -> Option<(RingExtension, ExtensionProfile, CentralizerChain)> {
    let (_, ext) = random_extension(f, seed);
    if ext.dim_m() > max {
        return None;
    }
    let (p, chain) = classify(&ext).expect("classification of a valid extension");
    Some((ext, p, chain))
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn member_reconstructs_the_vector(f in field(), basis in rows(Field::Rational, 3, 5), coeffs in prop::collection::vec(-3i64..4, 3)) {
        let basis: Vec<Vec<Scalar>> = basis.iter().map(|r| r.iter().map(|x| f.from_rat(x.as_rat().unwrap()).unwrap()).collect()).collect();
        let s = Subspace::from_rows(f, 5, &basis);
        let v = lin_comb(f, 5, basis.iter().zip(&coeffs).map(|(b, &c)| (f.int(c), b.clone())));
        let c = member(&s, &v).unwrap().expect("a combination of the rows is a member");
        prop_assert_eq!(lin_comb(f, 5, s.basis().into_iter().zip(c).map(|(b, c)| (c, b))), v);
    }

    #[test]
    fn subspace_echelon_form_is_canonical(f in field(), r in rows(Field::Rational, 4, 6), mix in prop::collection::vec(-2i64..3, 4)) {
        let r: Vec<Vec<Scalar>> = r.iter().map(|row| row.iter().map(|x| f.from_rat(x.as_rat().unwrap()).unwrap()).collect()).collect();
        let mut other: Vec<Vec<Scalar>> = r.iter().rev().cloned().collect();
        other.push(lin_comb(f, 6, r.iter().zip(&mix).map(|(b, &c)| (f.int(c), b.clone()))));
        prop_assert_eq!(Subspace::from_rows(f, 6, &r), Subspace::from_rows(f, 6, &other));
    }

    #[test]
    fn kernel_and_rank_are_complementary(f in field(), r in rows(Field::Rational, 4, 6)) {
        let m = Mat::from_fn(f, 4, 6, |i, j| f.from_rat(r[i][j].as_rat().unwrap()).unwrap());
        let k = kernel(&m);
        prop_assert_eq!(rank(&m) + k.dim(), 6);
        prop_assert!(k.basis().iter().all(|v| m.mul_vec(v).iter().all(|x| x.is_zero())));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn constructed_algebras_validate((a, b) in field().prop_flat_map(|f| (pool_algebra(f), pool_algebra(f)))) {
        prop_assert!(a.product(&b).validate().is_ok());
        prop_assert!(a.tensor(&b).validate().is_ok());
        prop_assert!(a.opposite().validate().is_ok());
    }

    #[test]
    fn frobenius_coordinates_are_dual_bases(a in field().prop_flat_map(pool_algebra), seed in 0u64..100) {
        if let FrobeniusOutcome::Found(c) = frobenius_coordinates(&a, seed) {
            prop_assert!(c.verify(&a).is_ok());
        }
        if let Ok(c) = index_one_coordinates(&a, seed) {
            prop_assert!(c.verify(&a).is_ok());
            prop_assert!(c.is_index_one(&a));
            prop_assert!(is_separability_idempotent(&a, &c.tensor(&a)));
        }
    }

    #[test]
    fn depth_two_tests_agree(f in field(), seed in 0u64..400) {
        let Some((ext, p, chain)) = classified(f, seed, 4) else { return Ok(()) };
        prop_assert!(chain.t2.verify(&ext).is_ok());
        prop_assert_eq!(p.left_d2(), p.left_d2_summand);
        prop_assert_eq!(p.right_d2(), p.right_d2_summand);
        for q in p.left_quasibasis.iter().chain(&p.right_quasibasis) {
            prop_assert!(q.verify(&ext, &chain));
        }
        prop_assert!(!p.h_separable || p.d2());
        prop_assert!(!p.centrally_projective || p.d2());
    }

    #[test]
    fn morita_context_is_consistent(f in field(), seed in 0u64..400) {
        let Some((ext, p, chain)) = classified(f, seed, 4) else { return Ok(()) };
        let Some(l) = &p.left_quasibasis else { return Ok(()) };
        let ctx = build_context(&ext, &chain, l).expect("left depth two gives a Morita context");
        prop_assert!(ctx.mu_r.is_surjective());
        prop_assert!(ctx.associativity && ctx.psi_bimodule_map && ctx.c_end_b && ctx.c_end_a_anti);
    }

    #[test]
    fn bialgebroid_laws_hold(f in field(), seed in 0u64..400) {
        let Some((ext, p, chain)) = classified(f, seed, 4) else { return Ok(()) };
        let (Some(l), Some(r)) = (&p.left_quasibasis, &p.right_quasibasis) else { return Ok(()) };
        let a = bialgebroid_a(&ext, &chain, l, r).unwrap();
        let b = bialgebroid_b(&ext, &chain, l).unwrap();
        prop_assert!(a.bg.verify_axioms().all_pass() && b.bg.verify_axioms().all_pass());
        prop_assert!(verify_action(&a.bg, &a.action).all_pass() && verify_action(&b.bg, &b.action).all_pass());
        prop_assert!(a.formulas_agree);
        let (_, inv) = invariants_a(&ext, &chain, &a);
        prop_assert!(inv.closed_under_product && inv.descriptions_agree);
        for kind in [DualKind::Right, DualKind::Left] {
            let d = dual_bialgebroid(&a.bg, kind).unwrap();
            prop_assert!(d.pairing_descends);
            prop_assert!(pairing_symmetries(&a.bg, &d).all());
        }
        let (_, sp) = smash_product(&a.bg, &a.action).unwrap();
        prop_assert!(sp.iota_m_injective && sp.relations_hold);
        prop_assert!(!sp.faithful_action || sp.iota_a_injective);
    }

    #[test]
    fn towers_satisfy_their_relations(f in field(), seed in 0u64..400) {
        let Some((ext, p, chain)) = classified(f, seed, 4) else { return Ok(()) };
        let FrobeniusSearch::Found(sys) = find_frobenius_system(&ext, seed) else { return Ok(()) };
        prop_assert!(sys.verify(&ext).is_ok());
        let tower = build_tower(&ext, &sys).unwrap();
        prop_assert!(tower.verify(&ext).all_pass());
        let (_, checks) = psi_isos(&ext, &chain, &tower).unwrap();
        prop_assert!(checks.all_pass());
        if p.left_d2() {
            let up = tower_extension(&ext, &tower).unwrap();
            let (q, _) = classify(&up).unwrap();
            prop_assert!(q.right_d2());
        }
    }

    #[test]
    fn weak_hopf_structures_are_consistent(f in field(), seed in 0u64..400) {
        let Some((ext, _, _)) = classified(f, seed, 4) else { return Ok(()) };
        let Ok(ctx) = prepare(&ext, seed) else { return Ok(()) };
        // a non-separable R has no weak Hopf lift; the weak-Hopf task refuses it
        let Ok(coords) = index_one_coordinates(&ctx.chain.r, seed) else { return Ok(()) };
        let rep = weak_hopf_verify(&ctx, &coords).unwrap();
        prop_assert!(rep.checks.all_pass(), "{:?}", rep.checks.failures());
        let one = rep.a.algebra.one();
        prop_assert_eq!(rep.a.pi_l(&one), one);
        for i in 0..rep.a.dim() {
            let x = rep.a.pi_l(&rep.a.algebra.e(i));
            prop_assert_eq!(rep.a.pi_l(&x), x);
        }
        prop_assert_eq!(rep.gram.rank(), rep.a.dim());
        prop_assert_eq!(rep.a.dim(), rep.b.dim());
        prop_assert!(rep.criteria.consistent());
    }
}
