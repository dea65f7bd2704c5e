//! Finite-dimensional algebras by structure constants and their algebra-level properties.

mod algebra;
mod frobenius;

pub use algebra::{Algebra, AlgebraMap};
pub use frobenius::{
    dual_right, dualize_via_phi, eval_form, form_candidates, frobenius_coordinates, gram, index_one_coordinates,
    is_separability_idempotent, m2_char2_coordinates, nondegenerate_form_check, preset_index_one, random_scalar,
    regular_right, separability_idempotent, FrobeniusCoordinates, FrobeniusOutcome, Nondegeneracy, PhiDuality,
    RightModule, RANDOM_CANDIDATES,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("associativity fails on basis triple ({i},{j},{k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("left unit law fails on basis element {i}")]
    LeftUnit { i: usize },
    #[error("right unit law fails on basis element {i}")]
    RightUnit { i: usize },
    #[error("the zero ring is not allowed (1 = 0)")]
    ZeroRing,
    #[error("malformed algebra data: {0}")]
    Shape(String),
    #[error("subspace not closed under the product at basis pair ({i},{j})")]
    NotClosed { i: usize, j: usize },
    #[error("map is not multiplicative on basis pair ({i},{j})")]
    NotMultiplicative { i: usize, j: usize },
    #[error("unit not preserved or not contained")]
    NotUnital,
    #[error("algebra is not separable")]
    NotSeparable,
    #[error("separable, index-one coordinates not found within the search budget")]
    IndexOneNotFound,
    #[error("Frobenius data check failed: {0}")]
    Frobenius(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{sparse_to_dense, Field, Scalar};
    use proptest::prelude::*;

    fn s3(f: Field) -> Algebra {
        // permutations of {0,1,2} in a fixed order, composed as (gh)(x) = g(h(x))
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|g| {
                perms
                    .iter()
                    .map(|h| {
                        let c = [g[h[0]], g[h[1]], g[h[2]]];
                        perms.iter().position(|p| *p == c).unwrap()
                    })
                    .collect()
            })
            .collect();
        Algebra::group_algebra(f, &table).unwrap()
    }

    #[test]
    fn matrix_algebra_basics() {
        let f = Field::Rational;
        let m = Algebra::matrix_algebra(f, 2);
        assert_eq!(m.dim(), 4);
        assert_eq!(m.one(), vec![f.one(), f.zero(), f.zero(), f.one()]);
        m.validate().unwrap();
        assert_eq!(m.center().dim(), 1);
    }

    #[test]
    fn opposite_transposes_products() {
        let f = Field::Rational;
        let op = Algebra::matrix_algebra(f, 2).opposite();
        // e_12 ∘op e_21 = e_21 e_12 = e_22
        assert_eq!(op.basis_product(1, 2), &vec![(3, f.one())]);
        op.validate().unwrap();
    }

    #[test]
    fn group_algebras() {
        let f = Field::Rational;
        let c2 = Algebra::cyclic_group(f, 2);
        assert_eq!(c2.dim(), 2);
        assert!(c2.is_commutative());
        let s = s3(f);
        assert!(!s.is_commutative());
        assert_eq!(s.center().dim(), 3);
    }

    #[test]
    fn validation_names_violations() {
        let f = Field::Rational;
        // e_0 = 1, e_1 e_1 = e_0 but unit vector missing
        let bad = Algebra::from_constants(f, 2, &[(0, 0, 0, f.one()), (1, 1, 0, f.one())], vec![f.zero(), f.zero()]);
        assert_eq!(bad, Err(AlgError::ZeroRing));
        let no_unit = Algebra::from_constants(f, 2, &[(0, 0, 0, f.one())], vec![f.one(), f.zero()]);
        assert!(matches!(no_unit, Err(AlgError::LeftUnit { i: 1 })));
        // 1, a, b with a² = b, ab = 0, ba = a: (aa)a = ba = a, a(aa) = ab = 0
        let one = f.one();
        let nonassoc = Algebra::from_constants(
            f,
            3,
            &[
                (0, 0, 0, one.clone()),
                (0, 1, 1, one.clone()),
                (1, 0, 1, one.clone()),
                (0, 2, 2, one.clone()),
                (2, 0, 2, one.clone()),
                (1, 1, 2, one.clone()),
                (2, 1, 1, one.clone()),
            ],
            vec![one.clone(), f.zero(), f.zero()],
        );
        assert!(matches!(nonassoc, Err(AlgError::NotAssociative { .. })));
    }

    #[test]
    fn center_of_product_is_everything() {
        let f = Field::Rational;
        let q2 = Algebra::diagonal(f, 2);
        assert_eq!(q2.center().dim(), 2);
    }

    #[test]
    fn separability_examples() {
        let f = Field::Rational;
        let q2 = Algebra::diagonal(f, 2);
        let e = separability_idempotent(&q2).unwrap();
        // (1,0)⊗(1,0) + (0,1)⊗(0,1)
        assert_eq!(e, vec![f.one(), f.zero(), f.zero(), f.one()]);
        let m2 = Algebra::matrix_algebra(f, 2);
        let e = separability_idempotent(&m2).unwrap();
        assert!(is_separability_idempotent(&m2, &e));
        // Σ_j e_j1 ⊗ e_1j checked by hand
        let mut hand = vec![f.zero(); 16];
        hand[0] = f.one(); // e_11 ⊗ e_11
        hand[2 * 4 + 1] = f.one(); // e_21 ⊗ e_12
        assert!(is_separability_idempotent(&m2, &hand));
        assert!(separability_idempotent(&Algebra::truncated_poly(f, 2)).is_none());
        let f2 = Field::prime(2).unwrap();
        assert!(separability_idempotent(&Algebra::cyclic_group(f2, 2)).is_none());
    }

    #[test]
    fn frobenius_examples() {
        let f = Field::Rational;
        let c2 = Algebra::cyclic_group(f, 2);
        let phi = vec![f.one(), f.zero()];
        let c = FrobeniusCoordinates::from_form(&c2, &phi).unwrap();
        c.verify(&c2).unwrap();
        assert_eq!(c.right, vec![c2.e(0), c2.e(1)]);
        let m2 = Algebra::matrix_algebra(f, 2);
        let trace = vec![f.one(), f.zero(), f.zero(), f.one()];
        let c = FrobeniusCoordinates::from_form(&m2, &trace).unwrap();
        c.verify(&m2).unwrap();
        // dual of e_ij is e_ji
        assert_eq!(c.right[1], m2.e(2));
        assert!(matches!(frobenius_coordinates(&m2, 1), FrobeniusOutcome::Found(_)));
        let t2 = Algebra::on_subspace(&Algebra::upper_triangular_in(f, 2), &m2.one(), |x, y| m2.mul(x, y)).unwrap();
        assert_eq!(t2.dim(), 3);
        assert_eq!(frobenius_coordinates(&t2, 1), FrobeniusOutcome::NotFrobenius);
    }

    #[test]
    fn upper_triangular_forms_all_degenerate_over_f3() {
        // exhaust the 27 forms on the 3-dim upper triangular algebra
        let f = Field::prime(3).unwrap();
        let m2 = Algebra::matrix_algebra(f, 2);
        let t2 = Algebra::on_subspace(&Algebra::upper_triangular_in(f, 2), &m2.one(), |x, y| m2.mul(x, y)).unwrap();
        for code in 0..27i64 {
            let phi = vec![f.int(code % 3), f.int(code / 3 % 3), f.int(code / 9)];
            let nd = nondegenerate_form_check(&t2, &phi);
            assert!(!nd.left && !nd.right);
        }
    }

    #[test]
    fn nondegeneracy_examples() {
        let f = Field::Rational;
        let m2 = Algebra::matrix_algebra(f, 2);
        let trace = vec![f.one(), f.zero(), f.zero(), f.one()];
        assert_eq!(nondegenerate_form_check(&m2, &trace), Nondegeneracy { left: true, right: true });
        assert_eq!(nondegenerate_form_check(&m2, &m2.zero()), Nondegeneracy { left: false, right: false });
        let dual = Algebra::truncated_poly(f, 2);
        assert_eq!(nondegenerate_form_check(&dual, &[f.zero(), f.one()]), Nondegeneracy { left: true, right: true });
        assert_eq!(gram(&dual, &[f.zero(), f.one()]), crate::exactla::Mat::from_ints(f, &[&[0, 1], &[1, 0]]));
    }

    #[test]
    fn index_one_examples() {
        let f = Field::Rational;
        let q3 = Algebra::diagonal(f, 3);
        let c = index_one_coordinates(&q3, 0).unwrap();
        assert_eq!(c.phi, vec![f.one(); 3]);
        assert!(c.is_index_one(&q3));
        let m2 = Algebra::matrix_algebra(f, 2);
        let c = index_one_coordinates(&m2, 0).unwrap();
        c.verify(&m2).unwrap();
        assert!(c.is_index_one(&m2));
        assert!(is_separability_idempotent(&m2, &c.tensor(&m2)));
        let f2 = Field::prime(2).unwrap();
        let m2f2 = Algebra::matrix_algebra(f2, 2);
        let c = index_one_coordinates(&m2f2, 0).unwrap();
        assert_eq!(c, m2_char2_coordinates(f2));
        c.verify(&m2f2).unwrap();
        assert!(c.is_index_one(&m2f2));
        let f3 = Field::prime(3).unwrap();
        let m3 = Algebra::matrix_algebra(f3, 3);
        let c = index_one_coordinates(&m3, 0).unwrap();
        c.verify(&m3).unwrap();
        assert!(c.is_index_one(&m3));
        assert_eq!(index_one_coordinates(&Algebra::truncated_poly(f, 2), 0), Err(AlgError::NotSeparable));
    }

    #[test]
    fn index_one_by_search_for_group_algebra() {
        let f = Field::Rational;
        let s = s3(f);
        let c = index_one_coordinates(&s, 3).unwrap();
        c.verify(&s).unwrap();
        assert!(c.is_index_one(&s));
        assert!(is_separability_idempotent(&s, &c.tensor(&s)));
    }

    #[test]
    fn phi_duality() {
        let f = Field::Rational;
        let q2 = Algebra::diagonal(f, 2);
        let c = index_one_coordinates(&q2, 0).unwrap();
        let d = dualize_via_phi(&q2, &RightModule::regular(&q2), &c).unwrap();
        assert_eq!(d.module_homs.len(), 2);
        assert_eq!(d.hom_k_dim, 2);
        let m2 = Algebra::matrix_algebra(f, 2);
        let c = FrobeniusCoordinates::from_form(&m2, &[f.one(), f.zero(), f.zero(), f.one()]).unwrap();
        let d = dualize_via_phi(&m2, &RightModule::regular(&m2), &c).unwrap();
        // identity-as-hom goes to φ itself
        let id_form: Vec<Scalar> = (0..4).map(|j| eval_form(&c.phi, &m2.e(j))).collect();
        let span = crate::exactla::Subspace::from_rows(f, 4, &d.forms);
        assert!(span.contains(&id_form));
    }

    #[test]
    fn tensor_and_product_constructions() {
        let f = Field::Rational;
        let a = Algebra::cyclic_group(f, 2).tensor(&Algebra::matrix_algebra(f, 2));
        a.validate().unwrap();
        assert_eq!(a.center().dim(), 2);
        let p = Algebra::diagonal(f, 1).product(&Algebra::matrix_algebra(f, 2));
        p.validate().unwrap();
        assert_eq!(p.dim(), 5);
        let _ = sparse_to_dense(f, p.basis_product(0, 0), 5);
    }

    proptest! {
        #[test]
        fn form_flags_agree(seed in 0u64..1000) {
            let f = Field::Rational;
            let a = s3(f);
            for phi in form_candidates(f, a.dim(), seed).into_iter().skip(a.dim() + 1).take(3) {
                let nd = nondegenerate_form_check(&a, &phi);
                prop_assert_eq!(nd.left, nd.right);
                if nd.left {
                    let c = FrobeniusCoordinates::from_form(&a, &phi).unwrap();
                    prop_assert!(c.verify(&a).is_ok());
                }
            }
        }
    }
}
