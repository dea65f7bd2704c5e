//! Left and right bialgebroids with full axiom checks, the concrete bialgebroids `A` and `B`
//! of a depth-two extension, their actions and invariants, duals and smash products.

mod action;
mod concrete;
mod dual;
mod structure;

pub use action::{invariants, smash_product, verify_action, ActionData, SmashProduct, SmashReport};
pub use concrete::{bialgebroid_a, bialgebroid_b, invariants_a, ConcreteA, ConcreteB, InvariantsReport};
pub use dual::{
    double_dual_bijective, dual_bialgebroid, duality_pairing_check, left_dual_identification, pairing_symmetries,
    unmirrored_bracket_symmetries, DualBialgebroid, DualKind, DualityCheck, SymmetryReport,
};
pub use structure::{AxiomReport, AxiomResult, Bialgebroid, Handed, RTensor};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::Algebra;
    use crate::exactla::Field;
    use crate::extcore::examples::*;
    use crate::extcore::{d2_quasibasis, end_right, CentralizerChain, RingExtension, Side};

    const Q: Field = Field::Rational;

    struct Run {
        a: ConcreteA,
        b: ConcreteB,
        ext: RingExtension,
        chain: CentralizerChain,
    }

    fn run(ext: RingExtension) -> Run {
        let chain = CentralizerChain::new(&ext).unwrap();
        let l = d2_quasibasis(&ext, &chain, Side::Left).unwrap();
        let r = d2_quasibasis(&ext, &chain, Side::Right).unwrap();
        let a = bialgebroid_a(&ext, &chain, &l, &r).unwrap();
        let b = bialgebroid_b(&ext, &chain, &l).unwrap();
        Run { a, b, ext, chain }
    }

    #[test]
    fn group_bialgebra_is_a_bialgebroid() {
        let table: Vec<Vec<usize>> = (0..2).map(|g| (0..2).map(|h| (g + h) % 2).collect()).collect();
        let bg = Bialgebroid::group_bialgebra(Q, &table).unwrap();
        assert_eq!(bg.t2.dim(), 4);
        let rep = bg.verify_axioms();
        assert!(rep.all_pass(), "{:?}", rep.failures());
        assert_eq!(bg.takeuchi_product().dim(), 4);
    }

    #[test]
    fn perturbed_coproduct_is_caught() {
        let table: Vec<Vec<usize>> = (0..2).map(|g| (0..2).map(|h| (g + h) % 2).collect()).collect();
        let bg = Bialgebroid::group_bialgebra(Q, &table).unwrap();
        let bad = bg.perturbed(0, 1, &Q.one());
        let rep = bad.verify_axioms();
        let co = rep.get("coassociativity").unwrap();
        assert!(!co.pass);
        assert_eq!(co.witness, Some(vec![1]));
    }

    #[test]
    fn concrete_a_and_b_for_groups() {
        let r = run(c2_in_c4(Q));
        assert_eq!((r.a.bg.dim(), r.a.bg.base.dim(), r.b.bg.dim()), (8, 4, 8));
        assert!(r.a.formulas_agree && r.a.lu_identity);
        let ra = r.a.bg.verify_axioms();
        assert!(ra.all_pass(), "{:?}", ra.failures());
        assert!(verify_action(&r.a.bg, &r.a.action).all_pass());
        let rb = r.b.bg.verify_axioms();
        assert!(rb.all_pass(), "{:?}", rb.failures());
        assert!(verify_action(&r.b.bg, &r.b.action).all_pass());
        assert!(r.b.delta_via_iso && r.b.invariants_are_rho_m);
        assert_eq!(r.b.invariants_dim, 4);
        let (_, inv) = invariants_a(&r.ext, &r.chain, &r.a);
        assert!(inv.descriptions_agree && inv.closed_under_product && inv.equals_n);
    }

    #[test]
    fn upper_triangular_invariants() {
        let r = run(upper_triangular_in_m2(Q));
        let (_, inv) = invariants_a(&r.ext, &r.chain, &r.a);
        assert_eq!(inv.dim, 4);
        assert!(!inv.equals_n && inv.descriptions_agree);
        assert!(r.a.bg.verify_axioms().all_pass());
    }

    #[test]
    fn trivial_extension_collapses() {
        let r = run(RingExtension::identity(Algebra::cyclic_group(Q, 3)));
        assert_eq!((r.a.bg.dim(), r.b.bg.dim()), (3, 3));
        assert!(r.a.bg.verify_axioms().all_pass() && r.b.bg.verify_axioms().all_pass());
        let (_, inv) = invariants_a(&r.ext, &r.chain, &r.a);
        assert!(inv.equals_n);
    }

    #[test]
    fn duals_and_pairings() {
        let r = run(c2_in_c4(Q));
        let astar = dual_bialgebroid(&r.a.bg, DualKind::Right).unwrap();
        assert!(astar.pairing_descends);
        assert!(astar.bg.verify_axioms().all_pass(), "{:?}", astar.bg.verify_axioms().failures());
        assert!(pairing_symmetries(&r.a.bg, &astar).all());
        assert!(duality_pairing_check(&r.ext, &r.chain, &r.a, &r.b, &astar).unwrap().all());
        let ldual = dual_bialgebroid(&r.a.bg, DualKind::Left).unwrap();
        assert!(ldual.pairing_descends);
        assert!(ldual.bg.verify_axioms().all_pass(), "{:?}", ldual.bg.verify_axioms().failures());
        let sym = pairing_symmetries(&r.a.bg, &ldual);
        assert!(sym.all(), "{:?}", sym);
        assert!(double_dual_bijective(&r.a.bg, &ldual));
        assert!(left_dual_identification(&r.ext, &r.chain, &r.a, &r.b, &ldual).unwrap().all());
    }

    #[test]
    fn smash_product_is_end_m_n() {
        for ext in [c2_in_c4(Q), upper_triangular_in_m2(Q)] {
            let r = run(ext);
            let (sp, rep) = smash_product(&r.a.bg, &r.a.action).unwrap();
            assert!(rep.well_defined && rep.iota_m_injective && rep.relations_hold);
            assert!(sp.to_endomorphisms(&r.a.action, &end_right(&r.ext)));
            assert_eq!(rep.dim, end_right(&r.ext).dim());
        }
    }
}
