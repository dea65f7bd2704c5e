use crate::algcore::AlgebraMap;
use crate::bialgd::{smash_product, ConcreteA};
use crate::checks::CheckList;
use crate::exactla::{unit_vec, vec_add, vec_scale, Mat, Scalar, Subspace};
use crate::extcore::{check_inverse, d2_quasibasis, CentralizerChain, ExtError, Quasibasis, RingExtension, Side, TensorOver};

use super::maps::{phi_of, TowerMaps};
use super::tower::{sum, Tower};

#[derive(Clone, Debug)]
pub struct D2FrobeniusReport {
    pub checks: CheckList,
    /// Depth two of `M_1 | M` on each side.
    pub tower_left_d2: bool,
    pub tower_right_d2: bool,
}

fn alpha_mat(chain: &CentralizerChain, c: &[Scalar]) -> Mat {
    let dm = chain.a_mats[0].rows();
    chain.a_mats.iter().zip(c).fold(Mat::zeros(chain.field(), dm, dm), |acc, (m, x)| acc.add(&m.scale(x)))
}

/// The extension `M → M_1`.
pub fn tower_extension(ext: &RingExtension, tower: &Tower) -> Result<RingExtension, ExtError> {
    RingExtension::new(ext.m.clone(), tower.m1.clone(), AlgebraMap::new(tower.m_to_m1.clone()))
}

/// Consequences of depth two together with a Frobenius system: dual bases of `E_M` from a
/// left quasibasis, `M ⊗_R Â ≅ M_1`, `M ⋊ A ≅ M_1`, `E_M(Â) ⊆ R`, depth two of `M_1 | M` and
/// `Ĉ = Â e_2 Â`.
pub fn d2_frobenius_props(
    ext: &RingExtension,
    chain: &CentralizerChain,
    tower: &Tower,
    maps: &TowerMaps,
    a: &ConcreteA,
    left: &Quasibasis,
) -> Result<D2FrobeniusReport, ExtError> {
    let fld = ext.field();
    let m = &ext.m;
    let (dm, d1) = (ext.dim_m(), tower.dim_m1());
    let m1 = &tower.m1;
    let na = chain.a.dim();
    let mut c = CheckList::new();

    let qb: Vec<(Vec<Scalar>, Vec<Scalar>)> = left
        .pairs
        .iter()
        .map(|(b, beta)| {
            let al = chain.a_coords(beta).ok_or_else(|| ExtError::Verification("quasibasis element outside A".into()))?;
            Ok((b.clone(), maps.psi_a_elem(tower, &al)))
        })
        .collect::<Result<_, ExtError>>()?;
    c.sweep("{b_i}, {ψ_A(β_i)} are dual bases for E_M", 0..d1, |&k| {
        let x = m1.e(k);
        let l = sum(fld, d1, qb.iter().map(|(b, p)| m1.mul(&tower.m_in_m1(&tower.em(&m1.mul(&x, b))), p)));
        let r = sum(fld, d1, qb.iter().map(|(b, p)| m1.mul(b, &tower.m_in_m1(&tower.em(&m1.mul(p, &x))))));
        l != x || r != x
    });
    c.push("b_i ∈ Â", qb.iter().all(|(b, _)| tower.a_hat.contains(b)));
    c.sweep("E_M(Â) ⊆ R", 0..tower.a_hat.dim(), |&j| !chain.r_space.contains(&tower.em(&tower.a_hat.basis_vec(j))));
    c.sweep("E_M restricted to Â is R-R-linear", (0..tower.a_hat.dim()).flat_map(|j| (0..chain.r_space.dim()).map(move |i| (j, i))), |&(j, i)| {
        let (x, r) = (tower.a_hat.basis_vec(j), tower.m_in_m1(&chain.r_elem(i)));
        tower.em(&m1.mul(&r, &x)) != m.mul(&chain.r_elem(i), &tower.em(&x)) || tower.em(&m1.mul(&x, &r)) != m.mul(&tower.em(&x), &chain.r_elem(i))
    });

    let na_hat = tower.a_hat.dim();
    let r_pairs: Vec<(Mat, Mat)> = (0..chain.r_space.dim())
        .map(|i| {
            let r = chain.r_elem(i);
            let rm1 = tower.m_in_m1(&r);
            let on_a = crate::extcore::restrict_op(&tower.a_hat, |x| m1.mul(&rm1, x));
            (m.rmat(&r), on_a)
        })
        .collect();
    let mra = TensorOver::new(fld, dm, na_hat, r_pairs);
    let fwd = mra.induced_map(d1, |i, j| m1.mul(&tower.m_in_m1(&m.e(i)), &tower.a_hat.basis_vec(j)));
    let iso = match fwd {
        None => Some("m ⊗ a ↦ ma is not R-balanced".to_string()),
        Some(fwd) => {
            let psi_beta: Vec<Vec<Scalar>> = left
                .pairs
                .iter()
                .map(|(_, beta)| maps.psi_a.mul_vec(&chain.a_coords(beta).unwrap_or_default()))
                .collect();
            let inv_cols: Vec<Vec<Scalar>> = (0..d1)
                .map(|k| {
                    let x = m1.e(k);
                    sum(fld, mra.dim(), qb.iter().zip(&psi_beta).map(|((b, _), pb)| mra.elem(&tower.em(&m1.mul(&x, b)), pb)))
                })
                .collect();
            let inv = Mat::from_cols(fld, mra.dim(), &inv_cols);
            check_inverse("M ⊗_R Â → M_1", &fwd, &inv).err().map(|e| e.to_string())
        }
    };
    c.push_witness("M ⊗_R Â ≅ M_1 via m ⊗ a ↦ ma, inverse X ↦ Σ E_M(X b_i) ⊗ ψ_A(β_i)", iso);

    let (sp, rep) = smash_product(&a.bg, &a.action)?;
    let pi_cols: Vec<Vec<Scalar>> = (0..sp.tensor.dim())
        .map(|q| {
            let (i, al) = sp.tensor.rep(q);
            m1.mul(&tower.m_in_m1(&m.e(i)), &maps.psi_a_elem(tower, &unit_vec(fld, na, al)))
        })
        .collect();
    let pi = Mat::from_cols(fld, d1, &pi_cols);
    c.push("Π: M ⋊ A → M_1, m ⋊ α ↦ m ψ_A(α) is bijective", rep.well_defined && pi.rank() == d1 && sp.tensor.dim() == d1);
    c.push("Π is unital", pi.mul_vec(&sp.algebra.one()) == m1.one());
    let ds = sp.algebra.dim();
    c.sweep("Π is multiplicative", (0..ds).flat_map(|i| (0..ds).map(move |j| (i, j))), |&(i, j)| {
        pi.mul_vec(&sp.algebra.mul(&sp.algebra.e(i), &sp.algebra.e(j))) != m1.mul(&pi.col(i), &pi.col(j))
    });
    c.sweep("Π = F ∘ (m ⋊ α ↦ λ(m)α)", 0..ds, |&q| {
        let (i, al) = sp.tensor.rep(q);
        super::maps::f_of(tower, &m.lmat(&m.e(i)).mul(&chain.a_mats[al])) != pi.col(q)
    });

    let ext1 = tower_extension(ext, tower)?;
    let chain1 = CentralizerChain::new(&ext1)?;
    let tower_left_d2 = d2_quasibasis(&ext1, &chain1, Side::Left).is_some();
    let tower_right_d2 = d2_quasibasis(&ext1, &chain1, Side::Right).is_some();
    let left_d2 = d2_quasibasis(ext, chain, Side::Left).is_some();
    let right_d2 = d2_quasibasis(ext, chain, Side::Right).is_some();
    c.push("left D2 of N ⊆ M implies right D2 of M ⊆ M_1", !left_d2 || tower_right_d2);
    c.push("right D2 of N ⊆ M implies left D2 of M ⊆ M_1", !right_d2 || tower_left_d2);

    let m2 = &tower.m2;
    let lifted: Vec<Vec<Scalar>> = (0..na_hat).map(|j| tower.m1_in_m2(&tower.a_hat.basis_vec(j))).collect();
    let mut prods = Vec::with_capacity(na_hat * na_hat);
    for x in &lifted {
        let xe = m2.mul(x, &tower.e2);
        for y in &lifted {
            prods.push(m2.mul(&xe, y));
        }
    }
    c.push("Ĉ = Â e_2 Â", Subspace::from_rows(fld, tower.dim_m2(), &prods) == tower.c_hat);

    Ok(D2FrobeniusReport { checks: c, tower_left_d2, tower_right_d2 })
}

/// `f ◁ b = (m ↦ b^1 f(b^2 m))` for `f ∈ End _N M` and `b ∈ B` in `M ⊗_N M`-coordinates.
pub fn right_action_on_end(ext: &RingExtension, chain: &CentralizerChain, f: &Mat, b: &[Scalar]) -> Mat {
    let m = &ext.m;
    let dm = ext.dim_m();
    let mut acc = Mat::zeros(ext.field(), dm, dm);
    for (t, c) in chain.t2.lift(b) {
        let d = chain.t2.radix.digits(t);
        acc = acc.add(&m.lmat(&m.e(d[0])).mul(f).mul(&m.lmat(&m.e(d[1]))).scale(&c));
    }
    acc
}

/// `E_M(a m e_1) = ψ_A^{-1}(a)(m)` and `E_{M_1}(φ_B(b) φ(f) e_2) = φ(f ◁ b)`.
pub fn os_actions(ext: &RingExtension, chain: &CentralizerChain, tower: &Tower, maps: &TowerMaps) -> CheckList {
    let fld = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let (m1, m2) = (&tower.m1, &tower.m2);
    let mut c = CheckList::new();

    let na_hat = tower.a_hat.dim();
    c.sweep("E_M(a m e_1) = ψ_A^{-1}(a) ▷ m", (0..na_hat).flat_map(|j| (0..dm).map(move |k| (j, k))), |&(j, k)| {
        let a = tower.a_hat.basis_vec(j);
        let lhs = tower.em(&m1.mul3(&a, &tower.m_in_m1(&m.e(k)), &tower.e1));
        let alpha = alpha_mat(chain, &maps.psi_a_inv.col(j));
        lhs != alpha.mul_vec(&m.e(k))
    });

    let nb = chain.b.dim();
    let nl = maps.end_l.dim();
    c.sweep("E_{M_1}(φ_B(b) φ(f) e_2) = φ(f ◁ b)", (0..nb).flat_map(|i| (0..nl).map(move |j| (i, j))), |&(i, j)| {
        let b = unit_vec(fld, nb, i);
        let f = Mat::from_flat(fld, dm, dm, maps.end_l.basis_vec(j));
        let lhs = tower.em1(&m2.mul3(&maps.phi_b_elem(tower, &b), &tower.m1_in_m2(&maps.phi.col(j)), &tower.e2));
        lhs != phi_of(tower, &right_action_on_end(ext, chain, &f, &chain.b_embed(&b)))
    });
    c
}

/// `E_M E_{M_1}(ψ_B(b) e_1 e_2 φ_A(α)) = b^1 α(b^2)` over basis pairs; `psi_b` may be replaced to
/// run a negative control. Returns the first failing `(b, α)`.
pub fn pairing_identity(ext: &RingExtension, chain: &CentralizerChain, tower: &Tower, maps: &TowerMaps, psi_b: &Mat) -> Option<(usize, usize)> {
    let fld = ext.field();
    let m = &ext.m;
    let m2 = &tower.m2;
    let (nb, na) = (chain.b.dim(), chain.a.dim());
    let e12 = m2.mul(&tower.m1_in_m2(&tower.e1), &tower.e2);
    (0..nb).flat_map(|i| (0..na).map(move |j| (i, j))).find(|&(i, j)| {
        let psib = tower.b_hat.element(&psi_b.col(i));
        let phia = tower.m1_in_m2(&maps.phi_a_elem(tower, &unit_vec(fld, na, j)));
        let lhs = tower.em(&tower.em1(&m2.mul3(&psib, &e12, &phia)));
        let b = chain.b_embed(&unit_vec(fld, nb, i));
        let mut rhs = m.zero();
        for (t, c) in chain.t2.lift(&b) {
            let d = chain.t2.radix.digits(t);
            let term = m.mul(&m.e(d[0]), &chain.a_mats[j].mul_vec(&m.e(d[1])));
            rhs = vec_add(&rhs, &vec_scale(&term, &c));
        }
        lhs != rhs
    })
}
