use crate::checks::CheckList;
use crate::exactla::{unit_vec, Mat, Scalar, Subspace};
use crate::extcore::{check_inverse, end_left, end_right, space_mats, CentralizerChain, ExtError, RingExtension};

use super::tower::{sum, Tower};

/// The identifications of `End M_N`, `End _N M`, `A` and `B` with subalgebras of the tower.
#[derive(Clone, Debug)]
pub struct TowerMaps {
    pub end_r: Subspace,
    pub end_l: Subspace,
    /// `F: End M_N → M_1`, `f ↦ Σ f(x_i) ⊗ y_i`.
    pub f_iso: Mat,
    /// `φ: End _N M → M_1`, `f ↦ Σ x_i ⊗ f(y_i)`.
    pub phi: Mat,
    /// `ψ_A: A → Â` into `Â`-coordinates, and its inverse `a^1 e_1 a^2 ↦ λ(a^1) E λ(a^2)`.
    pub psi_a: Mat,
    pub psi_a_inv: Mat,
    /// `ψ_B: B → B̂` into `B̂`-coordinates, and its inverse `b^1 e_2 b^2 ↦ b^1 E_M(b^2 e_1)`.
    pub psi_b: Mat,
    pub psi_b_inv: Mat,
    /// `φ_A: A → Â`, `α ↦ Σ x_i e_1 α(y_i)`.
    pub phi_a: Mat,
    /// `φ_B: B → B̂`, `b ↦ Σ x_i e_1 e_2 b^1 e_1 b^2 y_i`.
    pub phi_b: Mat,
}

fn coords(s: &Subspace, v: &[Scalar], what: &str) -> Result<Vec<Scalar>, ExtError> {
    s.coords(v).ok_or_else(|| ExtError::Verification(format!("{what} leaves its target subspace")))
}

fn iso_witness(name: &'static str, fwd: &Mat, inv: &Mat) -> Option<String> {
    check_inverse(name, fwd, inv).err().map(|e| e.to_string())
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

impl TowerMaps {
    /// `ψ_A(α)` in `M_1`.
    pub fn psi_a_elem(&self, tower: &Tower, alpha: &[Scalar]) -> Vec<Scalar> {
        tower.a_hat.element(&self.psi_a.mul_vec(alpha))
    }

    /// `ψ_B(b)` in `M_2`.
    pub fn psi_b_elem(&self, tower: &Tower, b: &[Scalar]) -> Vec<Scalar> {
        tower.b_hat.element(&self.psi_b.mul_vec(b))
    }

    pub fn phi_a_elem(&self, tower: &Tower, alpha: &[Scalar]) -> Vec<Scalar> {
        tower.a_hat.element(&self.phi_a.mul_vec(alpha))
    }

    pub fn phi_b_elem(&self, tower: &Tower, b: &[Scalar]) -> Vec<Scalar> {
        tower.b_hat.element(&self.phi_b.mul_vec(b))
    }
}

/// `Σ f(x_i) ⊗ y_i` for a matrix `f` on `M`.
pub fn f_of(tower: &Tower, f: &Mat) -> Vec<Scalar> {
    let d1 = tower.dim_m1();
    sum(f.field(), d1, tower.sys.x.iter().zip(&tower.sys.y).map(|(x, y)| tower.t2.elem(&[&f.mul_vec(x), y])))
}

/// `Σ x_i ⊗ f(y_i)`.
pub fn phi_of(tower: &Tower, f: &Mat) -> Vec<Scalar> {
    let d1 = tower.dim_m1();
    sum(f.field(), d1, tower.sys.x.iter().zip(&tower.sys.y).map(|(x, y)| tower.t2.elem(&[x, &f.mul_vec(y)])))
}

/// `Σ x_i e_1 e_2 X y_i` for `X ∈ M_1`, i.e. `φ_B`.
fn phi_b_of(tower: &Tower, b: &[Scalar]) -> Vec<Scalar> {
    let m2 = &tower.m2;
    tower.sandwich2(&m2.mul3(&tower.m1_in_m2(&tower.e1), &tower.e2, &tower.m1_in_m2(b)))
}

/// `Σ x_i X e_2 e_1 y_i`, i.e. `ψ_B`.
fn psi_b_of(tower: &Tower, b: &[Scalar]) -> Vec<Scalar> {
    let m2 = &tower.m2;
    tower.sandwich2(&m2.mul3(&tower.m1_in_m2(b), &tower.e2, &tower.m1_in_m2(&tower.e1)))
}

pub fn psi_isos(ext: &RingExtension, chain: &CentralizerChain, tower: &Tower) -> Result<(TowerMaps, CheckList), ExtError> {
    let fld = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let d1 = tower.dim_m1();
    let (m1, m2) = (&tower.m1, &tower.m2);
    let r1: Vec<Vec<usize>> = (0..d1).map(|q| tower.t2.radix.digits(tower.t2.quot.rep(q))).collect();
    let r2: Vec<Vec<usize>> = (0..tower.dim_m2()).map(|q| tower.t3.radix.digits(tower.t3.quot.rep(q))).collect();
    let mut c = CheckList::new();

    let end_r = end_right(ext);
    let end_l = end_left(ext);
    let er = space_mats(fld, dm, dm, &end_r);
    let el = space_mats(fld, dm, dm, &end_l);

    let f_iso = Mat::from_cols(fld, d1, &er.iter().map(|x| f_of(tower, x)).collect::<Vec<_>>());
    let f_inv_cols: Vec<Vec<Scalar>> = r1
        .iter()
        .map(|d| coords(&end_r, m.lmat(&m.e(d[0])).mul(&tower.e_op).mul(&m.lmat(&m.e(d[1]))).flat(), "λ(m) E λ(m')"))
        .collect::<Result<_, _>>()?;
    let f_inv = Mat::from_cols(fld, end_r.dim(), &f_inv_cols);
    c.push_witness("End M_N ≅ M ⊗_N M via f ↦ Σ f(x_i) ⊗ y_i, inverse m ⊗ m' ↦ λ(m)Eλ(m')", iso_witness("F", &f_iso, &f_inv));
    c.sweep("F is multiplicative", pairs(er.len()), |&(i, j)| f_of(tower, &er[i].mul(&er[j])) != m1.mul(&f_iso.col(i), &f_iso.col(j)));

    let phi = Mat::from_cols(fld, d1, &el.iter().map(|x| phi_of(tower, x)).collect::<Vec<_>>());
    let phi_inv_cols: Vec<Vec<Scalar>> = r1
        .iter()
        .map(|d| coords(&end_l, m.rmat(&m.e(d[1])).mul(&tower.e_op).mul(&m.rmat(&m.e(d[0]))).flat(), "ρ(m') E ρ(m)"))
        .collect::<Result<_, _>>()?;
    let phi_inv = Mat::from_cols(fld, end_l.dim(), &phi_inv_cols);
    c.push_witness("End _N M ≅ M ⊗_N M via φ(f) = Σ x_i ⊗ f(y_i), inverse m ⊗ m' ↦ ρ(m')Eρ(m)", iso_witness("φ", &phi, &phi_inv));
    c.sweep("φ reverses products", pairs(el.len()), |&(i, j)| phi_of(tower, &el[i].mul(&el[j])) != m1.mul(&phi.col(j), &phi.col(i)));

    let na = chain.a.dim();
    let a_img: Vec<Vec<Scalar>> = chain.a_mats.iter().map(|a| f_of(tower, a)).collect();
    c.push("A ≅ (M ⊗_N M)^N via α ↦ Σ α(x_i) ⊗ y_i", Subspace::from_rows(fld, d1, &a_img) == chain.b_space && tower.a_hat.dim() == na);

    let psi_a_cols: Vec<Vec<Scalar>> = a_img.iter().map(|v| coords(&tower.a_hat, v, "ψ_A")).collect::<Result<_, _>>()?;
    let psi_a = Mat::from_cols(fld, tower.a_hat.dim(), &psi_a_cols);
    let psi_a_inv_cols: Vec<Vec<Scalar>> = (0..tower.a_hat.dim())
        .map(|j| {
            let x = tower.a_hat.basis_vec(j);
            let mut acc = Mat::zeros(fld, dm, dm);
            for (q, cq) in x.iter().enumerate() {
                if !cq.is_zero() {
                    let d = &r1[q];
                    acc = acc.add(&m.lmat(&m.e(d[0])).mul(&tower.e_op).mul(&m.lmat(&m.e(d[1]))).scale(cq));
                }
            }
            chain.a_coords(&acc).ok_or_else(|| ExtError::Verification("λ(a^1) E λ(a^2) is not in A".into()))
        })
        .collect::<Result<_, _>>()?;
    let psi_a_inv = Mat::from_cols(fld, na, &psi_a_inv_cols);
    c.push_witness("ψ_A: A → Â with inverse a^1 e_1 a^2 ↦ λ(a^1) E λ(a^2)", iso_witness("ψ_A", &psi_a, &psi_a_inv));
    c.sweep("ψ_A is multiplicative and unital", pairs(na), |&(i, j)| {
        let prod = chain.a.mul(&chain.a.e(i), &chain.a.e(j));
        tower.a_hat.element(&psi_a.mul_vec(&prod)) != m1.mul(&a_img[i], &a_img[j])
    });
    c.push("ψ_A(1) = 1_{M_1}", tower.a_hat.element(&psi_a.mul_vec(&chain.a.one())) == m1.one());
    c.sweep("E_M(ψ_A(α) e_1) = ε_A(α)", 0..na, |&i| tower.em(&m1.mul(&a_img[i], &tower.e1)) != chain.a_mats[i].mul_vec(&m.one()));

    let phi_a_img: Vec<Vec<Scalar>> = chain.a_mats.iter().map(|a| phi_of(tower, a)).collect();
    let phi_a_cols: Vec<Vec<Scalar>> = phi_a_img.iter().map(|v| coords(&tower.a_hat, v, "φ_A")).collect::<Result<_, _>>()?;
    let phi_a = Mat::from_cols(fld, tower.a_hat.dim(), &phi_a_cols);
    c.push("φ_A: A → Â is bijective", phi_a.rank() == na && tower.a_hat.dim() == na);
    c.sweep("φ_A reverses products", pairs(na), |&(i, j)| {
        let prod = chain.a.mul(&chain.a.e(i), &chain.a.e(j));
        tower.a_hat.element(&phi_a.mul_vec(&prod)) != m1.mul(&phi_a_img[j], &phi_a_img[i])
    });

    let nb = chain.b.dim();
    let b_m1: Vec<Vec<Scalar>> = (0..nb).map(|k| chain.b_embed(&unit_vec(fld, nb, k))).collect();
    let psi_b_img: Vec<Vec<Scalar>> = b_m1.iter().map(|b| psi_b_of(tower, b)).collect();
    let psi_b_cols: Vec<Vec<Scalar>> = psi_b_img.iter().map(|v| coords(&tower.b_hat, v, "ψ_B")).collect::<Result<_, _>>()?;
    let psi_b = Mat::from_cols(fld, tower.b_hat.dim(), &psi_b_cols);
    let inv_full = Mat::from_cols(
        fld,
        d1,
        &r2.iter().map(|d| tower.t2.elem(&[&m.e(d[0]), &m.mul(&m.e(d[1]), &tower.e_of(&m.e(d[2])))])).collect::<Vec<_>>(),
    );
    c.sweep("b^1 e_2 b^2 ↦ b^1 E_M(b^2 e_1) on M_1 e_2 M_1", pairs(d1), |&(i, j)| {
        let x = m2.mul3(&tower.m1_in_m2(&m1.e(i)), &tower.e2, &tower.m1_in_m2(&m1.e(j)));
        inv_full.mul_vec(&x) != m1.mul(&m1.e(i), &tower.m_in_m1(&tower.em(&m1.mul(&m1.e(j), &tower.e1))))
    });
    let psi_b_inv_cols: Vec<Vec<Scalar>> = (0..tower.b_hat.dim())
        .map(|j| chain.b_coords(&inv_full.mul_vec(&tower.b_hat.basis_vec(j))).ok_or_else(|| ExtError::Verification("ψ_B^{-1} leaves B".into())))
        .collect::<Result<_, _>>()?;
    let psi_b_inv = Mat::from_cols(fld, nb, &psi_b_inv_cols);
    c.push_witness("ψ_B: B → B̂ with inverse b^1 e_2 b^2 ↦ b^1 E_M(b^2 e_1)", iso_witness("ψ_B", &psi_b, &psi_b_inv));
    c.sweep("ψ_B is multiplicative for the product of B", pairs(nb), |&(i, j)| {
        let prod = chain.b.mul(&chain.b.e(i), &chain.b.e(j));
        tower.b_hat.element(&psi_b.mul_vec(&prod)) != m2.mul(&psi_b_img[i], &psi_b_img[j])
    });
    c.push("ψ_B(1) = 1_{M_2}", tower.b_hat.element(&psi_b.mul_vec(&chain.b.one())) == m2.one());

    let phi_b_img: Vec<Vec<Scalar>> = b_m1.iter().map(|b| phi_b_of(tower, b)).collect();
    let phi_b_cols: Vec<Vec<Scalar>> = phi_b_img.iter().map(|v| coords(&tower.b_hat, v, "φ_B")).collect::<Result<_, _>>()?;
    let phi_b = Mat::from_cols(fld, tower.b_hat.dim(), &phi_b_cols);
    c.push("φ_B: B → B̂ is bijective", phi_b.rank() == nb && tower.b_hat.dim() == nb);
    c.sweep("φ_B reverses products", pairs(nb), |&(i, j)| {
        let prod = chain.b.mul(&chain.b.e(i), &chain.b.e(j));
        tower.b_hat.element(&phi_b.mul_vec(&prod)) != m2.mul(&phi_b_img[j], &phi_b_img[i])
    });

    Ok((TowerMaps { end_r, end_l, f_iso, phi, psi_a, psi_a_inv, psi_b, psi_b_inv, phi_a, phi_b }, c))
}
