use crate::algcore::index_one_coordinates;
use crate::checks::{CheckList, Sampler};
use crate::exactla::{sparse_from_dense, unit_vec, vec_add, vec_scale, Mat, Scalar};
use crate::extcore::{ExtError, RingExtension};
use crate::frobtower::{e_in_m, Tower, TowerMaps};

use super::duality::{duality_checks_with, prepare, split_separable_criteria, D2Context, SplitSeparable};
use super::weak::{Antipode, WeakBialgebra};

/// `A` and `B` as Hopf algebras over `K` for an irreducible depth-two Frobenius extension.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub a: WeakBialgebra,
    pub b: WeakBialgebra,
    /// `ψ(α) = Σ α(x_j) y_j` as a functional on `A`.
    pub psi: Vec<Scalar>,
    /// The left norm `E ∈ A`.
    pub norm: Vec<Scalar>,
    /// `S(a) = Σ_i ψ(a β_i) E(− b_i^1) b_i^2`.
    pub antipode: Mat,
    /// The antipode from the linear solve.
    pub solved: Option<Antipode>,
    pub criteria: SplitSeparable,
    pub checks: CheckList,
}

/// `c` with `v = c·1`.
fn scalar_of(one: &[Scalar], v: &[Scalar]) -> Option<Scalar> {
    let (i, o) = one.iter().enumerate().find(|(_, x)| !x.is_zero())?;
    let c = v[i].div(o)?;
    (vec_scale(one, &c) == v).then_some(c)
}

pub fn hopf_from_irreducible(ctx: &D2Context, seed: u64) -> Result<HopfStructure, ExtError> {
    hopf_from_irreducible_with(ctx, seed, &Sampler::full())
}

pub fn hopf_from_irreducible_with(ctx: &D2Context, seed: u64, sampler: &Sampler) -> Result<HopfStructure, ExtError> {
    if ctx.profile.dim_r != 1 {
        return Err(ExtError::Hypothesis(format!("the centralizer R has dimension {}, not 1", ctx.profile.dim_r)));
    }
    let f = ctx.ext.field();
    let m = &ctx.ext.m;
    let chain = &ctx.chain;
    let coords = index_one_coordinates(&chain.r, seed)?;
    let wa = WeakBialgebra::from_bialgebroid(&ctx.a.bg, &coords)?;
    let wb = WeakBialgebra::from_bialgebroid(&ctx.b.bg, &coords)?;
    let na = wa.dim();
    let aa = &wa.algebra;
    let one = m.one();
    let mut c = CheckList::new();
    c.push("Δ(1) = 1 ⊗ 1", !wa.is_genuinely_weak() && !wb.is_genuinely_weak());
    let mut ca = wa.verify_with(sampler);
    ca.extend(wb.verify_with(sampler));
    c.push("A and B are bialgebras over K", ca.all_pass());

    let mut psi = Vec::with_capacity(na);
    for al in &chain.a_mats {
        let v = ctx.sys.x.iter().zip(&ctx.sys.y).fold(m.zero(), |acc, (x, y)| vec_add(&acc, &m.mul(&al.mul_vec(x), y)));
        psi.push(scalar_of(&one, &v).ok_or_else(|| ExtError::Verification("ψ(α) is not a scalar".into()))?);
    }
    let psi_of = |v: &[Scalar]| -> Scalar { crate::algcore::eval_form(&psi, v) };

    let e_op = e_in_m(&ctx.ext, &ctx.sys.e);
    let t2 = &chain.t2;
    let mut us = Vec::new();
    let mut ws = Vec::new();
    let mut betas = Vec::new();
    for (b, beta) in &ctx.left.pairs {
        let dm = ctx.ext.dim_m();
        let mut u = Mat::zeros(f, dm, dm);
        let mut w = Mat::zeros(f, dm, dm);
        for (t, x) in t2.lift(b) {
            let d = t2.radix.digits(t);
            u = u.add(&m.lmat(&m.e(d[0])).mul(&e_op).mul(&m.lmat(&m.e(d[1]))).scale(&x));
            w = w.add(&m.rmat(&m.e(d[1])).mul(&e_op).mul(&m.rmat(&m.e(d[0]))).scale(&x));
        }
        let not_in_a = || ExtError::Verification("dual basis element outside A".into());
        us.push(chain.a_coords(&u).ok_or_else(not_in_a)?);
        ws.push(chain.a_coords(&w).ok_or_else(not_in_a)?);
        betas.push(chain.a_coords(beta).ok_or_else(not_in_a)?);
    }
    c.sweep("ψ is a Frobenius homomorphism with dual bases {b_i^1 E(b_i^2 −)}, {β_i}", 0..na, |&k| {
        let a = aa.e(k);
        let l = us.iter().zip(&betas).fold(aa.zero(), |acc, (u, be)| vec_add(&acc, &vec_scale(u, &psi_of(&aa.mul(be, &a)))));
        let r = us.iter().zip(&betas).fold(aa.zero(), |acc, (u, be)| vec_add(&acc, &vec_scale(be, &psi_of(&aa.mul(&a, u)))));
        l != a || r != a
    });
    c.sweep("a_(1) ψ(a_(2)) = ψ(a) 1", 0..na, |&k| {
        let mut acc = aa.zero();
        for (t, x) in sparse_from_dense(&wa.delta_of(&aa.e(k))) {
            acc = vec_add(&acc, &vec_scale(&aa.e(t / na), &(&x * &psi[t % na])));
        }
        acc != vec_scale(&aa.one(), &psi[k])
    });
    let norm = ctx.e_in_a()?;
    c.sweep("ψ(aE) = ε(a)", 0..na, |&k| psi_of(&aa.mul(&aa.e(k), &norm)) != wa.eps[k]);

    let cols: Vec<Vec<Scalar>> = (0..na)
        .map(|k| ws.iter().zip(&betas).fold(aa.zero(), |acc, (w, be)| vec_add(&acc, &vec_scale(w, &psi_of(&aa.mul(&aa.e(k), be))))))
        .collect();
    let antipode = Mat::from_cols(f, na, &cols);
    let sc = wa.antipode_checks(&antipode);
    c.push("S(a) = Σ ψ(a β_i) E(− b_i^1) b_i^2 satisfies S * id = id * S = ε", sc.items.iter().take(2).all(|x| x.pass));
    c.extend(sc);
    let solved = wa.antipode();
    c.push("the formula agrees with the solved antipode", solved.as_ref().is_some_and(|s| s.s == antipode));
    let gram = ctx.gram(&coords.phi)?;
    c.extend(duality_checks_with(&wa, &wb, &gram, sampler));
    let (criteria, cc) = split_separable_criteria(&ctx.profile, &wa, &wb);
    c.extend(cc);
    Ok(HopfStructure { a: wa, b: wb, psi, norm, antipode, solved, criteria, checks: c })
}

/// `E_M(a m e_1) = a_(1) m Ŝ(a_(2))` for `a ∈ Â`, `m ∈ M`, with `Δ` and `Ŝ` transported by `ψ_A`.
pub fn conjugation_identity(ctx: &D2Context, tower: &Tower, maps: &TowerMaps, hopf: &HopfStructure) -> CheckList {
    let f = ctx.ext.field();
    let m = &ctx.ext.m;
    let m1 = &tower.m1;
    let na = hopf.a.dim();
    let psi_a = |v: &[Scalar]| maps.psi_a_elem(tower, v);
    let mut c = CheckList::new();
    c.sweep("E_M(a m e_1) = a_(1) m Ŝ(a_(2))", (0..na).flat_map(|k| (0..ctx.ext.dim_m()).map(move |i| (k, i))), |&(k, i)| {
        let a = unit_vec(f, na, k);
        let mm = tower.m_in_m1(&m.e(i));
        let lhs = tower.em(&m1.mul3(&psi_a(&a), &mm, &tower.e1));
        let mut rhs = m1.zero();
        for (t, x) in sparse_from_dense(&hopf.a.delta_of(&a)) {
            let term = m1.mul3(&psi_a(&unit_vec(f, na, t / na)), &mm, &psi_a(&hopf.antipode.col(t % na)));
            rhs = vec_add(&rhs, &vec_scale(&term, &x));
        }
        tower.m_in_m1(&lhs) != rhs
    });
    c
}

/// Names of candidates that are irreducible depth-two Frobenius extensions.
pub fn find_irreducible(candidates: &[(String, RingExtension)], seed: u64) -> Vec<String> {
    candidates
        .iter()
        .filter(|(_, ext)| prepare(ext, seed).is_ok_and(|ctx| ctx.profile.dim_r == 1))
        .map(|(n, _)| n.clone())
        .collect()
}
