use crate::exactla::{collect_sparse, kron_sparse, sparse_from_dense, unit_vec, Mat, Scalar, Subspace};

use super::chain::{restrict_op, space_mats};
use super::classify::{end_left, end_right};
use super::{similar_summand, Bimodule, CentralizerChain, ExtError, Quasibasis, Ring, RingExtension, TensorOver};

/// A verified pair of mutually inverse maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub name: &'static str,
    pub domain_dim: usize,
    pub codomain_dim: usize,
}

#[derive(Clone, Debug)]
pub struct EndIsoReport {
    /// `End _N M ≅ A ⊗_R M`, `α ⊗ m ↦ ρ(m)α`.
    pub end_left: IsoCheck,
    /// `End M_N ≅ M ⊗_R A`, `m ⊗ α ↦ λ(m)α`.
    pub end_right: IsoCheck,
    /// `A ⊗_R A ≅ Hom_{N-N}(M ⊗_N M, M)`.
    pub tensor_square: IsoCheck,
    /// `_N End(_N M)_M ⊕ * ≅ ⊕ _N M_M`.
    pub end_left_summand: bool,
    /// `_M End(M_N)_N ⊕ * ≅ ⊕ _M M_N`.
    pub end_right_summand: bool,
}

/// Checks `F∘G = id` and `G∘F = id`, reporting the first failing basis column.
pub fn check_inverse(name: &'static str, fwd: &Mat, inv: &Mat) -> Result<IsoCheck, ExtError> {
    if fwd.rows() != inv.cols() || fwd.cols() != inv.rows() {
        return Err(ExtError::Verification(format!("{name}: shapes {}×{} and {}×{}", fwd.rows(), fwd.cols(), inv.rows(), inv.cols())));
    }
    let fg = fwd.mul(inv);
    let gf = inv.mul(fwd);
    for (what, p) in [("forward∘inverse", &fg), ("inverse∘forward", &gf)] {
        for j in 0..p.cols() {
            if p.col(j) != unit_vec(p.field(), p.rows(), j) {
                return Err(ExtError::Verification(format!("{name}: {what} differs from identity on basis element {j}")));
            }
        }
    }
    Ok(IsoCheck { name, domain_dim: fwd.cols(), codomain_dim: fwd.rows() })
}

fn coords(s: &Subspace, m: &Mat, what: &str) -> Result<Vec<Scalar>, ExtError> {
    s.coords(m.flat()).ok_or_else(|| ExtError::Verification(format!("{what} leaves its space")))
}

fn equivariant(name: &str, fwd: &Mat, pairs: &[(Mat, Mat)]) -> Result<(), ExtError> {
    for (k, (dom, cod)) in pairs.iter().enumerate() {
        if fwd.mul(dom) != cod.mul(fwd) {
            return Err(ExtError::Verification(format!("{name}: not equivariant for action generator {k}")));
        }
    }
    Ok(())
}

pub fn end_iso_props(ext: &RingExtension, chain: &CentralizerChain, left: &Quasibasis, right: &Quasibasis) -> Result<EndIsoReport, ExtError> {
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let na = chain.a_space.dim();
    let r_gens = chain.r_generators();
    let t2 = &chain.t2;

    // End _N M ≅ A ⊗_R M
    let pairs: Vec<(Mat, Mat)> = r_gens
        .iter()
        .map(|r| {
            let rho = m.rmat(r);
            (restrict_op(&chain.a_space, |v| rho.mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec()), m.lmat(r))
        })
        .collect();
    let am = TensorOver::new(f, na, dm, pairs);
    let e_left = end_left(ext);
    let fwd = am
        .induced_map(e_left.dim(), |i, j| e_left.coords(m.rmat(&m.e(j)).mul(&chain.a_mats[i]).flat()).expect("ρ(m)α is left N-linear"))
        .ok_or_else(|| ExtError::Verification("α ⊗ m ↦ ρ(m)α is not balanced over R".into()))?;
    let mut inv_cols = Vec::new();
    for fm in space_mats(f, dm, dm, &e_left) {
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (c, gamma) in &right.pairs {
            let mut x = m.zero();
            for (s, v) in t2.lift(c) {
                let (s1, s2) = (s / dm, s % dm);
                x = crate::exactla::vec_add(&x, &crate::exactla::vec_scale(&m.mul(&m.e(s1), &fm.col(s2)), &v));
            }
            let g = sparse_from_dense(&coords(&chain.a_space, gamma, "γ_i")?);
            acc.extend(kron_sparse(f, &am.radix, &[&g, &sparse_from_dense(&x)]));
        }
        inv_cols.push(am.project(&collect_sparse(acc)));
    }
    let inv = Mat::from_cols(f, am.dim(), &inv_cols);
    let end_left_check = check_inverse("End _N M ≅ A ⊗_R M", &fwd, &inv)?;
    let mut eq: Vec<(Mat, Mat)> = Vec::new();
    for g in ext.m_generators() {
        let dom = am.induced_map(am.dim(), |i, j| am.elem(&unit_vec(f, na, i), &m.mul(&m.e(j), g))).expect("right M-action descends");
        let cod = restrict_op(&e_left, |v| m.rmat(g).mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec());
        eq.push((dom, cod));
    }
    for g in ext.n_generators() {
        let dom = am.induced_map(am.dim(), |i, j| am.elem(&unit_vec(f, na, i), &m.mul(g, &m.e(j)))).expect("left N-action descends");
        let cod = restrict_op(&e_left, |v| Mat::from_flat(f, dm, dm, v.to_vec()).mul(&m.rmat(g)).flat().to_vec());
        eq.push((dom, cod));
    }
    equivariant("End _N M ≅ A ⊗_R M", &fwd, &eq)?;

    // End M_N ≅ M ⊗_R A
    let pairs: Vec<(Mat, Mat)> = r_gens
        .iter()
        .map(|r| {
            let lam = m.lmat(r);
            (m.rmat(r), restrict_op(&chain.a_space, |v| lam.mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec()))
        })
        .collect();
    let ma = TensorOver::new(f, dm, na, pairs);
    let e_right = end_right(ext);
    let fwd = ma
        .induced_map(e_right.dim(), |j, i| e_right.coords(m.lmat(&m.e(j)).mul(&chain.a_mats[i]).flat()).expect("λ(m)α is right N-linear"))
        .ok_or_else(|| ExtError::Verification("m ⊗ α ↦ λ(m)α is not balanced over R".into()))?;
    let mut inv_cols = Vec::new();
    for fm in space_mats(f, dm, dm, &e_right) {
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (b, beta) in &left.pairs {
            let mut x = m.zero();
            for (s, v) in t2.lift(b) {
                let (s1, s2) = (s / dm, s % dm);
                x = crate::exactla::vec_add(&x, &crate::exactla::vec_scale(&m.mul(&fm.col(s1), &m.e(s2)), &v));
            }
            let bc = sparse_from_dense(&coords(&chain.a_space, beta, "β_i")?);
            acc.extend(kron_sparse(f, &ma.radix, &[&sparse_from_dense(&x), &bc]));
        }
        inv_cols.push(ma.project(&collect_sparse(acc)));
    }
    let inv = Mat::from_cols(f, ma.dim(), &inv_cols);
    let end_right_check = check_inverse("End M_N ≅ M ⊗_R A", &fwd, &inv)?;
    let mut eq: Vec<(Mat, Mat)> = Vec::new();
    for g in ext.m_generators() {
        let dom = ma.induced_map(ma.dim(), |j, i| ma.elem(&m.mul(g, &m.e(j)), &unit_vec(f, na, i))).expect("left M-action descends");
        let cod = restrict_op(&e_right, |v| m.lmat(g).mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec());
        eq.push((dom, cod));
    }
    for g in ext.n_generators() {
        let dom = ma.induced_map(ma.dim(), |j, i| ma.elem(&m.mul(&m.e(j), g), &unit_vec(f, na, i))).expect("right N-action descends");
        let cod = restrict_op(&e_right, |v| Mat::from_flat(f, dm, dm, v.to_vec()).mul(&m.lmat(g)).flat().to_vec());
        eq.push((dom, cod));
    }
    equivariant("End M_N ≅ M ⊗_R A", &fwd, &eq)?;

    // A ⊗_R A ≅ Hom_{N-N}(M ⊗_N M, M)
    let pairs: Vec<(Mat, Mat)> = r_gens
        .iter()
        .map(|r| {
            let (rho, lam) = (m.rmat(r), m.lmat(r));
            (
                restrict_op(&chain.a_space, |v| rho.mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec()),
                restrict_op(&chain.a_space, |v| lam.mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec()),
            )
        })
        .collect();
    let aa = TensorOver::new(f, na, na, pairs);
    let hom = super::hom_bimodule(&t2.bimodule(ext, Ring::N, Ring::N), &ext.bimod_m(Ring::N, Ring::N))?;
    let dt = t2.dim();
    let fwd = aa
        .induced_map(hom.dim(), |i, j| {
            let (al, be) = (&chain.a_mats[i], &chain.a_mats[j]);
            let cols: Vec<Vec<Scalar>> = (0..dt)
                .map(|q| {
                    let t = t2.quot.rep(q);
                    let (s1, s2) = (t / dm, t % dm);
                    m.mul(&al.col(s1), &be.col(s2))
                })
                .collect();
            hom.coords(Mat::from_cols(f, dm, &cols).flat()).expect("α(m)β(m') is N-N-linear")
        })
        .ok_or_else(|| ExtError::Verification("α ⊗ β ↦ α(−)β(−) is not balanced over R".into()))?;
    let mut inv_cols = Vec::new();
    for fm in space_mats(f, dm, dt, &hom) {
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (b, beta) in &left.pairs {
            // m ↦ Σ f(m ⊗ b^1) b^2
            let cols: Vec<Vec<Scalar>> = (0..dm)
                .map(|k| {
                    let mut x = m.zero();
                    for (s, v) in t2.lift(b) {
                        let (s1, s2) = (s / dm, s % dm);
                        let y = fm.mul_vec(&t2.basis_tensor(&[k, s1]));
                        x = crate::exactla::vec_add(&x, &crate::exactla::vec_scale(&m.mul(&y, &m.e(s2)), &v));
                    }
                    x
                })
                .collect();
            let al = Mat::from_cols(f, dm, &cols);
            let ac = sparse_from_dense(&coords(&chain.a_space, &al, "f(− ⊗ b^1)b^2")?);
            let bc = sparse_from_dense(&coords(&chain.a_space, beta, "β_i")?);
            acc.extend(kron_sparse(f, &aa.radix, &[&ac, &bc]));
        }
        inv_cols.push(aa.project(&collect_sparse(acc)));
    }
    let inv = Mat::from_cols(f, aa.dim(), &inv_cols);
    let tensor_square = check_inverse("A ⊗_R A ≅ Hom_{N-N}(M ⊗_N M, M)", &fwd, &inv)?;

    // End _N M as N-M-bimodule: (n·η)(x) = η(xn), (η·m)(x) = η(x)m
    let el = Bimodule::new(
        f,
        e_left.dim(),
        "N",
        ext.n_generators().iter().map(|g| restrict_op(&e_left, |v| Mat::from_flat(f, dm, dm, v.to_vec()).mul(&m.rmat(g)).flat().to_vec())).collect(),
        "M",
        ext.m_generators().iter().map(|g| restrict_op(&e_left, |v| m.rmat(g).mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec())).collect(),
    );
    // End M_N as M-N-bimodule: (m·φ)(x) = mφ(x), (φ·n)(x) = φ(nx)
    let er = Bimodule::new(
        f,
        e_right.dim(),
        "M",
        ext.m_generators().iter().map(|g| restrict_op(&e_right, |v| m.lmat(g).mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec())).collect(),
        "N",
        ext.n_generators().iter().map(|g| restrict_op(&e_right, |v| Mat::from_flat(f, dm, dm, v.to_vec()).mul(&m.lmat(g)).flat().to_vec())).collect(),
    );
    let end_left_summand = similar_summand(&ext.bimod_m(Ring::N, Ring::M), &el).is_some();
    let end_right_summand = similar_summand(&ext.bimod_m(Ring::M, Ring::N), &er).is_some();
    Ok(EndIsoReport { end_left: end_left_check, end_right: end_right_check, tensor_square, end_left_summand, end_right_summand })
}
