//! Frobenius systems, the Jones tower `N → M → M_1 → M_2` with its Temperley–Lieb and
//! Pimsner–Popa relations, and the identifications of `A`, `B` with centralizers in the tower.

mod maps;
mod props;
mod system;
mod tower;

pub use maps::{f_of, phi_of, psi_isos, TowerMaps};
pub use props::{d2_frobenius_props, os_actions, pairing_identity, right_action_on_end, tower_extension, D2FrobeniusReport};
pub use system::{e_in_m, find_frobenius_system, frobenius_homs, frobenius_obstruction, FrobeniusSearch, FrobeniusSystem};
pub use tower::{build_tower, Tower};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::Algebra;
    use crate::bialgd::bialgebroid_a;
    use crate::exactla::{Field, Mat};
    use crate::extcore::examples::*;
    use crate::extcore::{d2_quasibasis, CentralizerChain, RingExtension, Side};

    const Q: Field = Field::Rational;

    fn full(ext: &RingExtension) -> (Tower, crate::checks::CheckList) {
        let sys = find_frobenius_system(ext, 7).system().cloned().expect("Frobenius system");
        let tower = build_tower(ext, &sys).unwrap();
        let chain = CentralizerChain::new(ext).unwrap();
        let mut all = tower.verify(ext);
        let (maps, c) = psi_isos(ext, &chain, &tower).unwrap();
        all.extend(c);
        all.extend(os_actions(ext, &chain, &tower, &maps));
        if let (Some(l), Some(r)) = (d2_quasibasis(ext, &chain, Side::Left), d2_quasibasis(ext, &chain, Side::Right)) {
            let a = bialgebroid_a(ext, &chain, &l, &r).unwrap();
            let rep = d2_frobenius_props(ext, &chain, &tower, &maps, &a, &l).unwrap();
            all.extend(rep.checks);
            assert!(pairing_identity(ext, &chain, &tower, &maps, &maps.psi_b).is_none());
        }
        (tower, all)
    }

    #[test]
    fn c4_tower() {
        let ext = c2_in_c4(Q);
        let (t, checks) = full(&ext);
        assert!(checks.all_pass(), "{:?}", checks.failures());
        assert_eq!((t.dim_m1(), t.dim_m2()), (8, 16));
        assert_eq!((t.a_hat.dim(), t.b_hat.dim()), (8, 8));
        assert_eq!(t.sys.len(), 2);
    }

    #[test]
    fn upper_triangular_is_not_frobenius() {
        assert!(matches!(find_frobenius_system(&upper_triangular_in_m2(Q), 1), FrobeniusSearch::NotFrobenius(_)));
    }

    #[test]
    fn trivial_extension() {
        let ext = RingExtension::identity(Algebra::cyclic_group(Q, 3));
        let (t, checks) = full(&ext);
        assert!(checks.all_pass(), "{:?}", checks.failures());
        assert_eq!(t.dim_m1(), 3);
    }

    #[test]
    fn matrix_algebra_over_scalars() {
        let ext = RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2));
        let (t, checks) = full(&ext);
        assert!(checks.all_pass(), "{:?}", checks.failures());
        assert_eq!((t.dim_m1(), t.dim_m2()), (16, 64));
    }

    #[test]
    fn corrupted_psi_b_breaks_pairing() {
        let ext = c2_in_c4(Q);
        let sys = find_frobenius_system(&ext, 7).system().cloned().unwrap();
        let tower = build_tower(&ext, &sys).unwrap();
        let chain = CentralizerChain::new(&ext).unwrap();
        let (maps, _) = psi_isos(&ext, &chain, &tower).unwrap();
        let mut bad: Mat = maps.psi_b.clone();
        let x = bad.get(0, 1).clone();
        bad.set(0, 1, &x + &Q.one());
        assert!(pairing_identity(&ext, &chain, &tower, &maps, &bad).is_some());
    }
}
