//! Hopf and weak Hopf algebra structure on the bialgebroids of a depth-two Frobenius extension:
//! weak bialgebra lifts over a separable base, antipodes, integrals, duality pairings and the
//! split/separable criteria.

mod duality;
mod hopf;
mod weak;

pub use duality::{
    biseparable_pairing_check, duality_checks, duality_checks_with, is_coordinate_sum, prepare, prepare_from, qf_instance_check, split_separable_criteria, weak_hopf_verify,
    D2Context, SplitSeparable, WeakHopfReport, weak_hopf_verify_with,
};
pub use hopf::{conjugation_identity, find_irreducible, hopf_from_irreducible, hopf_from_irreducible_with, HopfStructure};
pub use weak::{Antipode, WeakBialgebra};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::{index_one_coordinates, Algebra};
    use crate::bialgd::Bialgebroid;
    use crate::exactla::Field;
    use crate::extcore::examples::*;
    use crate::extcore::{ExtError, RingExtension};
    use crate::frobtower::{build_tower, psi_isos};

    const Q: Field = Field::Rational;

    #[test]
    fn weak_hopf_for_q_times_q() {
        let ext = RingExtension::over_scalars(Algebra::diagonal(Q, 2));
        let ctx = prepare(&ext, 1).unwrap();
        let coords = index_one_coordinates(&ctx.chain.r, 1).unwrap();
        assert!(is_coordinate_sum(&ctx.chain, &coords.phi));
        let rep = weak_hopf_verify(&ctx, &coords).unwrap();
        assert!(rep.checks.all_pass(), "{:?}", rep.checks.failures());
        assert!(rep.a_weak && rep.b_weak);
        assert!(rep.antipode_a.as_ref().unwrap().involutive);
        assert!(rep.criteria.split && rep.criteria.separable && rep.criteria.consistent());
    }

    #[test]
    fn weak_hopf_for_matrix_algebra() {
        let ext = RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2));
        let ctx = prepare(&ext, 1).unwrap();
        let coords = index_one_coordinates(&ctx.chain.r, 1).unwrap();
        let rep = weak_hopf_verify(&ctx, &coords).unwrap();
        assert!(rep.checks.all_pass(), "{:?}", rep.checks.failures());
        assert_eq!(rep.gram.rank(), 16);
    }

    #[test]
    fn trivial_hopf_algebra() {
        let ext = RingExtension::identity(Algebra::diagonal(Q, 1));
        let ctx = prepare(&ext, 1).unwrap();
        let h = hopf_from_irreducible(&ctx, 1).unwrap();
        assert!(h.checks.all_pass(), "{:?}", h.checks.failures());
        assert!(h.antipode.is_identity());
        let tower = build_tower(&ext, &ctx.sys).unwrap();
        let (maps, _) = psi_isos(&ext, &ctx.chain, &tower).unwrap();
        assert!(conjugation_identity(&ctx, &tower, &maps, &h).all_pass());
        assert!(biseparable_pairing_check(&ctx, &tower, &maps).unwrap().all_pass());
    }

    #[test]
    fn refusals_name_the_hypothesis() {
        match prepare(&upper_triangular_in_m2(Q), 1) {
            Err(ExtError::Hypothesis(w)) => assert!(w.contains("not Frobenius")),
            other => panic!("{other:?}"),
        }
        let ctx = prepare(&c2_in_c4(Q), 1).unwrap();
        assert!(matches!(hopf_from_irreducible(&ctx, 1), Err(ExtError::Hypothesis(_))));
    }

    #[test]
    fn group_bialgebra_antipode() {
        let table: Vec<Vec<usize>> = (0..2).map(|g| (0..2).map(|h| (g + h) % 2).collect()).collect();
        let bg = Bialgebroid::group_bialgebra(Q, &table).unwrap();
        let coords = index_one_coordinates(&bg.base, 1).unwrap();
        let w = WeakBialgebra::from_bialgebroid(&bg, &coords).unwrap();
        assert!(w.verify().all_pass());
        assert!(!w.is_genuinely_weak());
        let s = w.antipode().unwrap();
        assert!(s.involutive);
        assert!(w.normalized_left_integral().is_some());
        let bad = w.perturbed(0, 1, &Q.one());
        assert!(!bad.verify().passed("coassociativity"));
    }

    #[test]
    fn c4_criteria_and_qf() {
        let ctx = prepare(&c2_in_c4(Q), 1).unwrap();
        assert!(qf_instance_check(&ctx.profile).all_pass());
        let coords = index_one_coordinates(&ctx.chain.r, 1).unwrap();
        let rep = weak_hopf_verify(&ctx, &coords).unwrap();
        assert!(rep.checks.all_pass(), "{:?}", rep.checks.failures());
        assert!(rep.criteria.consistent());
    }
}
