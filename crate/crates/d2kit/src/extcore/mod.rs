//! Ring extensions, bimodules, tensor powers over `N`, the centralizer chain and the
//! decision procedures for depth two and related properties.

mod bimodule;
mod chain;
mod classify;
mod endiso;
pub mod examples;
mod extension;
mod quasibasis;
mod rtensor;

pub use bimodule::{h_equivalent, hom_bimodule, hom_matrices, similar_summand, Bimodule, SummandWitness};
pub use chain::{matrix_generators, restrict_op, space_mats, CentralizerChain};
pub use classify::{
    balanced, classify, end_left, end_right, left_d2_by_summand, left_depth_three, left_dual, m_central_tensors,
    right_d2_by_summand, right_depth_three, right_dual, separability_element, split_map, ExtensionProfile,
};
pub use endiso::{check_inverse, end_iso_props, EndIsoReport, IsoCheck};
pub use extension::{Ring, RingExtension, TensorPower};
pub use quasibasis::{d2_quasibasis, Quasibasis, Side};
pub use rtensor::TensorOver;

use thiserror::Error;

use crate::algcore::AlgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("N and M are defined over different fields")]
    FieldMismatch,
    #[error("acting rings do not match: {0}")]
    RingMismatch(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use crate::algcore::Algebra;
    use crate::exactla::{Field, Mat};

    const Q: Field = Field::Rational;

    #[test]
    fn centralizer_examples() {
        let ut = upper_triangular_in_m2(Q);
        let ch = CentralizerChain::new(&ut).unwrap();
        assert_eq!(ch.r.dim(), 1);
        let k = RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2));
        assert_eq!(CentralizerChain::new(&k).unwrap().r.dim(), 4);
        let c = c2_in_c4(Q);
        assert_eq!(CentralizerChain::new(&c).unwrap().r.dim(), 4);
    }

    #[test]
    fn hom_examples() {
        let ut = upper_triangular_in_m2(Q);
        let x = ut.bimod_m(Ring::N, Ring::N);
        assert_eq!(hom_bimodule(&x, &x).unwrap().dim(), 1);
        let k = RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2));
        let x = k.bimod_m(Ring::N, Ring::N);
        assert_eq!(hom_bimodule(&x, &x).unwrap().dim(), 16);
        let c = c2_in_c4(Q);
        let x = c.bimod_m(Ring::N, Ring::N);
        assert_eq!(hom_bimodule(&x, &x).unwrap().dim(), 8);
        assert!(hom_bimodule(&x, &c.bimod_m(Ring::M, Ring::N)).is_err());
    }

    #[test]
    fn tensor_square_dims() {
        let m = Algebra::matrix_algebra(Q, 2);
        let id = RingExtension::identity(m.clone());
        let t = TensorPower::new(&id, 2);
        assert_eq!(t.dim(), 4);
        t.verify(&id).unwrap();
        let k = RingExtension::over_scalars(m);
        assert_eq!(TensorPower::new(&k, 2).dim(), 16);
        let c = c2_in_c4(Q);
        let t2 = TensorPower::new(&c, 2);
        assert_eq!(t2.dim(), 8);
        t2.verify(&c).unwrap();
        let t3 = TensorPower::new(&c, 3);
        assert_eq!(t3.dim(), 16);
        t3.verify(&c).unwrap();
    }

    #[test]
    fn similar_summand_basics() {
        let c = c2_in_c4(Q);
        let x = c.bimod_m(Ring::N, Ring::M);
        let w = similar_summand(&x, &x).unwrap();
        assert!(w.verify(&x, &x));
        let zero = Bimodule::new(Q, 0, "N", vec![Mat::zeros(Q, 0, 0); x.left.len()], "M", vec![Mat::zeros(Q, 0, 0); x.right.len()]);
        assert!(similar_summand(&zero, &x).is_none());
        assert!(similar_summand(&x, &zero).is_some());
    }

    #[test]
    fn quasibasis_examples() {
        for ext in [upper_triangular_in_m2(Q), RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2)), c2_in_c4(Q)] {
            let ch = CentralizerChain::new(&ext).unwrap();
            ch.verify(&ext).unwrap();
            for side in [Side::Left, Side::Right] {
                let qb = d2_quasibasis(&ext, &ch, side).expect("depth two");
                assert!(qb.verify(&ext, &ch));
            }
        }
        let id = RingExtension::identity(Algebra::cyclic_group(Q, 3));
        let ch = CentralizerChain::new(&id).unwrap();
        let qb = d2_quasibasis(&id, &ch, Side::Left).unwrap();
        assert_eq!(qb.len(), 1);
        assert!(ch.a_mats[0].rank() > 0);
    }

    #[test]
    fn non_d2_has_no_quasibasis() {
        for ext in [non_d2_base(Q), non_d2_sample(Q, 7)] {
            let ch = CentralizerChain::new(&ext).unwrap();
            assert!(d2_quasibasis(&ext, &ch, Side::Left).is_none());
            assert!(d2_quasibasis(&ext, &ch, Side::Right).is_none());
            assert!(!left_d2_by_summand(&ext, &ch.t2));
            assert!(!right_d2_by_summand(&ext, &ch.t2));
        }
    }

    #[test]
    fn classify_upper_triangular() {
        let ext = upper_triangular_in_m2(Q);
        let (p, _) = classify(&ext).unwrap();
        assert!(p.h_separable && p.left_d2() && p.right_d2());
        assert!(p.left_d2_summand && p.right_d2_summand);
        assert!(!p.left_qf && !p.right_qf);
        assert!(!p.balanced);
        assert_eq!(p.dim_a, 1);
        assert_eq!(p.dim_end_m_n, 4);
        assert!(p.left_d3 && p.right_d3);
    }

    #[test]
    fn classify_trivial_and_group() {
        let (p, _) = classify(&RingExtension::identity(Algebra::matrix_algebra(Q, 2))).unwrap();
        assert!(p.d2() && p.split() && p.separable() && p.balanced && p.h_separable && p.centrally_projective);
        let (p, _) = classify(&c2_in_c4(Q)).unwrap();
        assert!(p.d2() && p.split() && p.separable() && p.balanced && p.left_qf && p.right_qf);
        assert!(p.left_d3 && p.right_d3);
        assert_eq!((p.dim_r, p.dim_a, p.dim_b), (4, 8, 8));
    }

    #[test]
    fn end_isos() {
        for ext in [RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2)), c2_in_c4(Q), RingExtension::identity(Algebra::cyclic_group(Q, 2))] {
            let ch = CentralizerChain::new(&ext).unwrap();
            let l = d2_quasibasis(&ext, &ch, Side::Left).unwrap();
            let r = d2_quasibasis(&ext, &ch, Side::Right).unwrap();
            let rep = end_iso_props(&ext, &ch, &l, &r).unwrap();
            assert_eq!(rep.end_left.domain_dim, rep.end_left.codomain_dim);
            assert!(rep.end_left_summand && rep.end_right_summand);
        }
        let ext = c2_in_c4(Q);
        let ch = CentralizerChain::new(&ext).unwrap();
        let l = d2_quasibasis(&ext, &ch, Side::Left).unwrap();
        let r = d2_quasibasis(&ext, &ch, Side::Right).unwrap();
        let rep = end_iso_props(&ext, &ch, &l, &r).unwrap();
        assert_eq!(rep.end_right.codomain_dim, 8);
        let ext = RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2));
        let ch = CentralizerChain::new(&ext).unwrap();
        let l = d2_quasibasis(&ext, &ch, Side::Left).unwrap();
        let r = d2_quasibasis(&ext, &ch, Side::Right).unwrap();
        assert_eq!(end_iso_props(&ext, &ch, &l, &r).unwrap().end_left.codomain_dim, 16);
    }
}
