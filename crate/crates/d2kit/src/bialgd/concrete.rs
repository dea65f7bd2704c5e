use serde::Serialize;

use crate::exactla::{sparse_kernel, unit_vec, vec_add, vec_scale, Mat, SVec, Scalar, Subspace};
use crate::extcore::{
    check_inverse, end_left, space_mats, CentralizerChain, ExtError, IsoCheck, Quasibasis, RingExtension, Side, TensorPower,
};

use super::action::{invariants, ActionData};
use super::structure::{Bialgebroid, Handed};

fn need(q: &Quasibasis, side: Side, ext: &RingExtension, chain: &CentralizerChain) -> Result<(), ExtError> {
    if q.side != side || !q.verify(ext, chain) {
        return Err(ExtError::Hypothesis(format!("a verified {side:?} quasibasis is required")));
    }
    Ok(())
}

fn a_coords(chain: &CentralizerChain, x: &Mat, what: &str) -> Result<Vec<Scalar>, ExtError> {
    chain.a_coords(x).ok_or_else(|| ExtError::Verification(format!("{what} is not in A")))
}

fn r_coords(chain: &CentralizerChain, x: &[Scalar], what: &str) -> Result<Vec<Scalar>, ExtError> {
    chain.r_space.coords(x).ok_or_else(|| ExtError::Verification(format!("{what} is not in R")))
}

fn b_coords(chain: &CentralizerChain, x: &[Scalar], what: &str) -> Result<Vec<Scalar>, ExtError> {
    chain.b_coords(x).ok_or_else(|| ExtError::Verification(format!("{what} is not in B")))
}

/// `A = End_{N-N}(M)` as a left bialgebroid over `R` acting on `M`.
#[derive(Clone, Debug)]
pub struct ConcreteA {
    pub bg: Bialgebroid,
    pub action: ActionData,
    /// The two coproduct formulas agree in `A ⊗_R A`.
    pub formulas_agree: bool,
    /// `Δ(α)` seen in `Hom_{N-N}(M ⊗_N M, M)` is `m ⊗ m' ↦ α(mm')`.
    pub lu_identity: bool,
}

pub fn bialgebroid_a(ext: &RingExtension, chain: &CentralizerChain, left: &Quasibasis, right: &Quasibasis) -> Result<ConcreteA, ExtError> {
    need(left, Side::Left, ext, chain)?;
    need(right, Side::Right, ext, chain)?;
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let (nr, na) = (chain.r.dim(), chain.a_space.dim());
    let total = chain.a.clone();
    let base = chain.r.clone();
    let mut s_cols = Vec::new();
    let mut t_cols = Vec::new();
    for i in 0..nr {
        let r = chain.r_elem(i);
        s_cols.push(a_coords(chain, &m.lmat(&r), "λ(r)")?);
        t_cols.push(a_coords(chain, &m.rmat(&r), "ρ(r)")?);
    }
    let s = Mat::from_cols(f, na, &s_cols);
    let t = Mat::from_cols(f, na, &t_cols);
    let t2 = Bialgebroid::tensor_power(Handed::Left, &total, &base, &s, &t, 2);

    let lifts = |x: &[Scalar]| -> Vec<(usize, usize, Scalar)> { chain.t2.lift(x).into_iter().map(|(s, c)| (s / dm, s % dm, c)).collect() };
    let rights: Vec<(Vec<(usize, usize, Scalar)>, Vec<Scalar>)> = right
        .pairs
        .iter()
        .map(|(c, g)| Ok((lifts(c), a_coords(chain, g, "γ_i")?)))
        .collect::<Result<_, ExtError>>()?;
    let lefts: Vec<(Vec<(usize, usize, Scalar)>, Vec<Scalar>)> = left
        .pairs
        .iter()
        .map(|(b, g)| Ok((lifts(b), a_coords(chain, g, "β_i")?)))
        .collect::<Result<_, ExtError>>()?;
    let zero = Mat::zeros(f, dm, dm);
    let mut d1 = Vec::new();
    let mut d2 = Vec::new();
    for alpha in &chain.a_mats {
        // Σ γ_i ⊗ c_i^1 α(c_i^2 −)
        let mut acc = vec![f.zero(); t2.dim()];
        for (terms, gamma) in &rights {
            let mut x = zero.clone();
            for (i, j, c) in terms {
                x = x.add(&m.lmat(&m.e(*i)).mul(alpha).mul(&m.lmat(&m.e(*j))).scale(c));
            }
            acc = vec_add(&acc, &t2.elem(&[gamma, &a_coords(chain, &x, "c^1 α(c^2 −)")?]));
        }
        d1.push(acc);
        // Σ α(− b_i^1) b_i^2 ⊗ β_i
        let mut acc = vec![f.zero(); t2.dim()];
        for (terms, beta) in &lefts {
            let mut x = zero.clone();
            for (i, j, c) in terms {
                x = x.add(&m.rmat(&m.e(*j)).mul(alpha).mul(&m.rmat(&m.e(*i))).scale(c));
            }
            acc = vec_add(&acc, &t2.elem(&[&a_coords(chain, &x, "α(− b^1) b^2")?, beta]));
        }
        d2.push(acc);
    }
    let formulas_agree = d1 == d2;
    let delta = Mat::from_cols(f, t2.dim(), &d1);
    let eps_cols: Vec<Vec<Scalar>> = chain.a_mats.iter().map(|a| r_coords(chain, &a.mul_vec(&m.one()), "α(1)")).collect::<Result<_, _>>()?;
    let eps = Mat::from_cols(f, nr, &eps_cols);
    let bg = Bialgebroid::new("A", Handed::Left, total, base, s, t, t2, delta, eps);

    let dt = chain.t2.dim();
    let mut lu_identity = true;
    for (k, alpha) in chain.a_mats.iter().enumerate() {
        let terms = bg.delta_terms(&unit_vec(f, na, k));
        for j in 0..dt {
            let rep = chain.t2.quot.rep(j);
            let (s1, s2) = (rep / dm, rep % dm);
            let mut lhs = m.zero();
            for (p, q, c) in &terms {
                let u = chain.a_mats[*p].col(s1);
                let v = chain.a_mats[*q].col(s2);
                lhs = vec_add(&lhs, &vec_scale(&m.mul(&u, &v), c));
            }
            lu_identity &= lhs == alpha.mul_vec(&m.mul(&m.e(s1), &m.e(s2)));
        }
    }
    let action = ActionData { handed: Handed::Left, algebra: m.clone(), mats: chain.a_mats.clone() };
    Ok(ConcreteA { bg, action, formulas_agree, lu_identity })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantsReport {
    pub dim: usize,
    /// `α ▷ n = ε(α) n`, `[α, ρ(n)] = 0`, `[α, λ(n)] = 0` and the `s`/`t` forms agree.
    pub descriptions_agree: bool,
    pub closed_under_product: bool,
    pub equals_n: bool,
}

/// `M^A` by its equivalent descriptions, compared with `ι(N)`.
pub fn invariants_a(ext: &RingExtension, chain: &CentralizerChain, a: &ConcreteA) -> (Subspace, InvariantsReport) {
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let one = m.one();
    let mut rows1: Vec<SVec> = Vec::new();
    let mut rows2: Vec<SVec> = Vec::new();
    let mut rows3: Vec<SVec> = Vec::new();
    for alpha in &chain.a_mats {
        let e = alpha.mul_vec(&one);
        rows1.extend(alpha.sub(&m.rmat(&e)).sparse_rows().into_iter().filter(|r| !r.is_empty()));
        // n ↦ αρ(n) − ρ(n)α and n ↦ αλ(n) − λ(n)α, flattened
        let mut c2 = Vec::new();
        let mut c3 = Vec::new();
        for k in 0..dm {
            let (rk, lk) = (m.rmat(&m.e(k)), m.lmat(&m.e(k)));
            c2.push(alpha.mul(&rk).sub(&rk.mul(alpha)).flat().to_vec());
            c3.push(alpha.mul(&lk).sub(&lk.mul(alpha)).flat().to_vec());
        }
        rows2.extend(Mat::from_cols(f, dm * dm, &c2).sparse_rows().into_iter().filter(|r| !r.is_empty()));
        rows3.extend(Mat::from_cols(f, dm * dm, &c3).sparse_rows().into_iter().filter(|r| !r.is_empty()));
    }
    let s1 = sparse_kernel(f, dm, rows1);
    let s2 = sparse_kernel(f, dm, rows2);
    let s3 = sparse_kernel(f, dm, rows3);
    let g_s = invariants(&a.bg, &a.action, false);
    let g_t = invariants(&a.bg, &a.action, true);
    let descriptions_agree = s1 == s2 && s1 == s3 && s1 == g_s && s1 == g_t;
    let basis = s1.basis();
    let closed_under_product = basis.iter().all(|x| basis.iter().all(|y| s1.contains(&m.mul(x, y))));
    let equals_n = s1 == ext.image();
    let report = InvariantsReport { dim: s1.dim(), descriptions_agree, closed_under_product, equals_n };
    (s1, report)
}

/// `B = (M ⊗_N M)^N` as a right bialgebroid over `R` acting on `End _N M`.
#[derive(Clone, Debug)]
pub struct ConcreteB {
    pub bg: Bialgebroid,
    pub action: ActionData,
    pub end_space: Subspace,
    /// `B ⊗_R B ≅ (M ⊗_N M ⊗_N M)^N` with its explicit inverse.
    pub triple_iso: IsoCheck,
    /// `Δ_B(b) = ι^{-1}(b^1 ⊗ 1 ⊗ b^2)`.
    pub delta_via_iso: bool,
    /// Invariants of the action (`ξ ◁ b = λ(ε(b)) ξ`) equal `ρ(M)`; the generic `s`/`t` forms agree.
    pub invariants_are_rho_m: bool,
    pub invariants_dim: usize,
}

pub fn bialgebroid_b(ext: &RingExtension, chain: &CentralizerChain, left: &Quasibasis) -> Result<ConcreteB, ExtError> {
    need(left, Side::Left, ext, chain)?;
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let (nr, nb) = (chain.r.dim(), chain.b_space.dim());
    let t2m = &chain.t2;
    let total = chain.b.clone();
    let base = chain.r.clone();
    let one = m.one();
    let mut s_cols = Vec::new();
    let mut t_cols = Vec::new();
    for i in 0..nr {
        let r = chain.r_elem(i);
        s_cols.push(b_coords(chain, &t2m.elem(&[&one, &r]), "1 ⊗ r")?);
        t_cols.push(b_coords(chain, &t2m.elem(&[&r, &one]), "r ⊗ 1")?);
    }
    let s = Mat::from_cols(f, nb, &s_cols);
    let t = Mat::from_cols(f, nb, &t_cols);
    let t2 = Bialgebroid::tensor_power(Handed::Right, &total, &base, &s, &t, 2);
    let bs: Vec<Vec<Scalar>> = (0..nb).map(|p| chain.b_embed(&unit_vec(f, nb, p))).collect();
    let qb: Vec<(Vec<Scalar>, Mat)> = left.pairs.iter().map(|(b, beta)| Ok((b_coords(chain, b, "b_i")?, beta.clone()))).collect::<Result<_, ExtError>>()?;

    // Δ_B(b) = Σ_i b_i ⊗_R (β_i(b^1) ⊗ b^2)
    let mut cols = Vec::new();
    for b in &bs {
        let mut acc = vec![f.zero(); t2.dim()];
        for (bi, beta) in &qb {
            let mut y = vec![f.zero(); t2m.dim()];
            for (st, c) in t2m.lift(b) {
                y = vec_add(&y, &vec_scale(&t2m.elem(&[&beta.col(st / dm), &m.e(st % dm)]), &c));
            }
            acc = vec_add(&acc, &t2.elem(&[bi, &b_coords(chain, &y, "β_i(b^1) ⊗ b^2")?]));
        }
        cols.push(acc);
    }
    let delta = Mat::from_cols(f, t2.dim(), &cols);
    let mult = t2m.multiply_map(m);
    let eps_cols: Vec<Vec<Scalar>> = bs.iter().map(|b| r_coords(chain, &mult.mul_vec(b), "b^1 b^2")).collect::<Result<_, _>>()?;
    let eps = Mat::from_cols(f, nr, &eps_cols);
    let bg = Bialgebroid::new("B", Handed::Right, total, base, s, t, t2, delta, eps);

    // ι: B ⊗_R B → (M ⊗_N M ⊗_N M)^N, b ⊗ b' ↦ b^1 ⊗ b^2 b'^1 ⊗ b'^2
    let t3m = TensorPower::new(ext, 3);
    let mut rows: Vec<SVec> = Vec::new();
    for g in ext.n_generators() {
        let d = t3m.left_mul(m, g).sub(&t3m.right_mul(m, g));
        rows.extend(d.sparse_rows().into_iter().filter(|r| !r.is_empty()));
    }
    let inv3 = sparse_kernel(f, t3m.dim(), rows);
    let iota_of = |b: &[Scalar], b2: &[Scalar]| -> Vec<Scalar> {
        let mut acc = vec![f.zero(); t3m.dim()];
        for (s1, c1) in t2m.lift(b) {
            for (s2, c2) in t2m.lift(b2) {
                let mid = m.mul(&m.e(s1 % dm), &m.e(s2 / dm));
                let v = t3m.elem(&[&m.e(s1 / dm), &mid, &m.e(s2 % dm)]);
                acc = vec_add(&acc, &vec_scale(&v, &(&c1 * &c2)));
            }
        }
        acc
    };
    let mut cols = Vec::new();
    for q in 0..bg.t2.dim() {
        let rep = bg.t2.quot.rep(q);
        let v = iota_of(&bs[rep / nb], &bs[rep % nb]);
        cols.push(inv3.coords(&v).ok_or_else(|| ExtError::Verification("ι(b ⊗ b') is not N-central".into()))?);
    }
    let iota = Mat::from_cols(f, inv3.dim(), &cols);
    let iota_inv_of = |v: &[Scalar]| -> Result<Vec<Scalar>, ExtError> {
        let mut acc = vec![f.zero(); bg.t2.dim()];
        for (bi, beta) in &qb {
            let mut y = vec![f.zero(); t2m.dim()];
            for (st, c) in t3m.lift(v) {
                let d = t3m.radix.digits(st);
                let x = m.mul(&beta.col(d[0]), &m.e(d[1]));
                y = vec_add(&y, &vec_scale(&t2m.elem(&[&x, &m.e(d[2])]), &c));
            }
            acc = vec_add(&acc, &bg.t2.elem(&[bi, &b_coords(chain, &y, "β_i(t^1) t^2 ⊗ t^3")?]));
        }
        Ok(acc)
    };
    let inv_cols: Vec<Vec<Scalar>> = inv3.basis().iter().map(|v| iota_inv_of(v)).collect::<Result<_, _>>()?;
    let triple_iso = check_inverse("B ⊗_R B ≅ (M ⊗_N M ⊗_N M)^N", &iota, &Mat::from_cols(f, bg.t2.dim(), &inv_cols))?;
    let mut delta_via_iso = true;
    for (p, b) in bs.iter().enumerate() {
        let mut v = vec![f.zero(); t3m.dim()];
        for (st, c) in t2m.lift(b) {
            v = vec_add(&v, &vec_scale(&t3m.elem(&[&m.e(st / dm), &one, &m.e(st % dm)]), &c));
        }
        delta_via_iso &= iota_inv_of(&v)? == bg.delta_of(&unit_vec(f, nb, p));
    }

    // ξ ◁ b = b^1 ξ(b^2 −) on End _N M
    let end_space = end_left(ext);
    let de = end_space.dim();
    let end_mats = space_mats(f, dm, dm, &end_space);
    let end_alg = crate::algcore::Algebra::on_subspace(&end_space, Mat::identity(f, dm).flat(), |x, y| {
        Mat::from_flat(f, dm, dm, x.to_vec()).mul(&Mat::from_flat(f, dm, dm, y.to_vec())).flat().to_vec()
    })?;
    let mut mats = Vec::new();
    for b in &bs {
        let terms: Vec<(usize, Scalar)> = t2m.lift(b);
        let mut cols = Vec::new();
        for xi in &end_mats {
            let mut acc = Mat::zeros(f, dm, dm);
            for (st, c) in &terms {
                acc = acc.add(&m.lmat(&m.e(st / dm)).mul(xi).mul(&m.lmat(&m.e(st % dm))).scale(c));
            }
            cols.push(end_space.coords(acc.flat()).ok_or_else(|| ExtError::Verification("ξ ◁ b leaves End _N M".into()))?);
        }
        mats.push(Mat::from_cols(f, de, &cols));
    }
    let action = ActionData { handed: Handed::Right, algebra: end_alg, mats };

    let mut rows: Vec<SVec> = Vec::new();
    for (p, b) in bs.iter().enumerate() {
        let lam = m.lmat(&mult.mul_vec(b));
        let post: Vec<Vec<Scalar>> = end_mats.iter().map(|xi| end_space.coords(lam.mul(xi).flat()).expect("λ(r) ξ is left N-linear")).collect();
        let d = action.mats[p].sub(&Mat::from_cols(f, de, &post));
        rows.extend(d.sparse_rows().into_iter().filter(|r| !r.is_empty()));
    }
    let inv_direct = sparse_kernel(f, de, rows);
    let rho_m: Vec<Vec<Scalar>> =
        (0..dm).map(|k| end_space.coords(m.rmat(&m.e(k)).flat()).expect("ρ(m) is left N-linear")).collect();
    let rho_m = Subspace::from_rows(f, de, &rho_m);
    let invariants_are_rho_m =
        inv_direct == rho_m && invariants(&bg, &action, false) == rho_m && invariants(&bg, &action, true) == rho_m;
    Ok(ConcreteB { bg, action, end_space, triple_iso, delta_via_iso, invariants_are_rho_m, invariants_dim: inv_direct.dim() })
}
