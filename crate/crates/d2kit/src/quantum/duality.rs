use serde::Serialize;

use crate::algcore::{eval_form, separability_idempotent, FrobeniusCoordinates};
use crate::bialgd::{bialgebroid_a, bialgebroid_b, ConcreteA, ConcreteB};
use crate::checks::{CheckList, Sampler};
use crate::exactla::{sparse_from_dense, unit_vec, vec_add, vec_scale, Mat, Scalar};
use crate::extcore::{classify, CentralizerChain, ExtError, ExtensionProfile, Quasibasis, RingExtension};
use crate::frobtower::{e_in_m, find_frobenius_system, pairing_identity, right_action_on_end, FrobeniusSearch, FrobeniusSystem, Tower, TowerMaps};

use super::weak::{Antipode, WeakBialgebra};

/// A depth-two Frobenius extension with its bialgebroids, the common input of the quantum checks.
#[derive(Clone, Debug)]
pub struct D2Context {
    pub ext: RingExtension,
    pub profile: ExtensionProfile,
    pub chain: CentralizerChain,
    pub sys: FrobeniusSystem,
    pub left: Quasibasis,
    pub right: Quasibasis,
    pub a: ConcreteA,
    pub b: ConcreteB,
}

/// Classifies, finds a Frobenius system and builds `A` and `B`; refuses with every failed hypothesis.
pub fn prepare(ext: &RingExtension, seed: u64) -> Result<D2Context, ExtError> {
    let (profile, chain) = classify(ext)?;
    let search = find_frobenius_system(ext, seed);
    prepare_from(ext, profile, chain, &search, None)
}

/// `prepare` from an existing classification, Frobenius search and, optionally, a built `A` and `B`.
pub fn prepare_from(
    ext: &RingExtension,
    profile: ExtensionProfile,
    chain: CentralizerChain,
    search: &FrobeniusSearch,
    built: Option<(ConcreteA, ConcreteB)>,
) -> Result<D2Context, ExtError> {
    let mut why = Vec::new();
    if !profile.left_d2() {
        why.push("not left depth two".to_string());
    }
    if !profile.right_d2() {
        why.push("not right depth two".to_string());
    }
    match search {
        FrobeniusSearch::Found(_) => {}
        FrobeniusSearch::NotFrobenius(r) => why.push(format!("not Frobenius: {r}")),
        FrobeniusSearch::Undecided => why.push("no Frobenius system found".to_string()),
    }
    let (Some(left), Some(right), Some(sys), true) = (profile.left_quasibasis.clone(), profile.right_quasibasis.clone(), search.system().cloned(), why.is_empty()) else {
        return Err(ExtError::Hypothesis(why.join("; ")));
    };
    let (a, b) = match built {
        Some(ab) => ab,
        None => (bialgebroid_a(ext, &chain, &left, &right)?, bialgebroid_b(ext, &chain, &left)?),
    };
    Ok(D2Context { ext: ext.clone(), profile, chain, sys, left, right, a, b })
}

impl D2Context {
    /// `E` as an element of `A`.
    pub fn e_in_a(&self) -> Result<Vec<Scalar>, ExtError> {
        self.chain.a_coords(&e_in_m(&self.ext, &self.sys.e)).ok_or_else(|| ExtError::Verification("E is not in A".into()))
    }

    /// `b^1 α(b^2) ∈ R` for basis elements, as elements of `M`.
    pub fn pairing_value(&self, b: usize, alpha: usize) -> Vec<Scalar> {
        let m = &self.ext.m;
        let t2 = &self.chain.t2;
        let bv = self.chain.b_embed(&unit_vec(self.ext.field(), self.chain.b.dim(), b));
        let mut acc = m.zero();
        for (t, c) in t2.lift(&bv) {
            let d = t2.radix.digits(t);
            acc = vec_add(&acc, &vec_scale(&m.mul(&m.e(d[0]), &self.chain.a_mats[alpha].mul_vec(&m.e(d[1]))), &c));
        }
        acc
    }

    /// Gram matrix `⟨b, α⟩ = φ(b^1 α(b^2))`, `dim B × dim A`.
    pub fn gram(&self, phi: &[Scalar]) -> Result<Mat, ExtError> {
        let (nb, na) = (self.chain.b.dim(), self.chain.a.dim());
        let mut g = Mat::zeros(self.ext.field(), nb, na);
        for i in 0..nb {
            for j in 0..na {
                let r = self.chain.r_space.coords(&self.pairing_value(i, j)).ok_or_else(|| ExtError::Verification("b^1 α(b^2) is not in R".into()))?;
                g.set(i, j, eval_form(phi, &r));
            }
        }
        Ok(g)
    }

    /// `E ◁ b = b^1 E(b^2 −)` in `A`-coordinates.
    pub fn e_action(&self, b: usize) -> Result<Vec<Scalar>, ExtError> {
        let bv = self.chain.b_embed(&unit_vec(self.ext.field(), self.chain.b.dim(), b));
        let x = right_action_on_end(&self.ext, &self.chain, &e_in_m(&self.ext, &self.sys.e), &bv);
        self.chain.a_coords(&x).ok_or_else(|| ExtError::Verification("E ◁ b is not in A".into()))
    }
}

/// `⟨b, a_(1)⟩⟨c, a_(2)⟩ = ⟨bc, a⟩`, `⟨b_(1), a⟩⟨b_(2), α⟩ = ⟨b, aα⟩`, `⟨1, a⟩ = ε(a)`, `⟨b, 1⟩ = ε(b)`.
pub fn duality_checks(wa: &WeakBialgebra, wb: &WeakBialgebra, gram: &Mat) -> CheckList {
    duality_checks_with(wa, wb, gram, &Sampler::full())
}

pub fn duality_checks_with(wa: &WeakBialgebra, wb: &WeakBialgebra, gram: &Mat, sampler: &Sampler) -> CheckList {
    let (na, nb) = (wa.dim(), wb.dim());
    let f = wa.algebra.field();
    let (aa, ba) = (&wa.algebra, &wb.algebra);
    let da = wa.delta.sparse_cols();
    let db = wb.delta.sparse_cols();
    let pair = |b: &[Scalar], a: &[Scalar]| -> Scalar {
        let mut s = f.zero();
        for (i, x) in sparse_from_dense(b) {
            for (j, y) in sparse_from_dense(a) {
                s += &(&(&x * &y) * gram.get(i, j));
            }
        }
        s
    };
    let mut c = CheckList::new();
    c.sweep("⟨b, a_(1)⟩⟨c, a_(2)⟩ = ⟨bc, a⟩", sampler.triples(nb, nb, na), |&(i, j, k)| {
        let mut s = f.zero();
        for (t, x) in &da[k] {
            s += &(&(x * gram.get(i, t / na)) * gram.get(j, t % na));
        }
        s != pair(&ba.mul(&ba.e(i), &ba.e(j)), &aa.e(k))
    });
    c.sweep("⟨b_(1), a⟩⟨b_(2), α⟩ = ⟨b, aα⟩", sampler.triples(nb, na, na), |&(i, j, k)| {
        let mut s = f.zero();
        for (t, x) in &db[i] {
            s += &(&(x * gram.get(t / nb, j)) * gram.get(t % nb, k));
        }
        s != pair(&ba.e(i), &aa.mul(&aa.e(j), &aa.e(k)))
    });
    c.sweep("⟨1, a⟩ = ε(a)", 0..na, |&k| pair(&ba.one(), &aa.e(k)) != wa.eps[k]);
    c.sweep("⟨b, 1⟩ = ε(b)", 0..nb, |&k| pair(&ba.e(k), &aa.one()) != wb.eps[k]);
    c.push("the pairing is nondegenerate", gram.rows() == gram.cols() && gram.rank() == gram.rows());
    c
}

/// Extension-side and quantum-side separability flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitSeparable {
    pub split: bool,
    pub a_separable: bool,
    pub a_normalized_left_integral: bool,
    pub separable: bool,
    pub b_separable: bool,
    pub b_normalized_right_integral: bool,
}

impl SplitSeparable {
    pub fn consistent(&self) -> bool {
        self.split == self.a_separable && self.a_separable == self.a_normalized_left_integral && self.separable == self.b_separable && self.b_separable == self.b_normalized_right_integral
    }
}

/// `split ⟺ A K-separable ⟺ A has a normalized left integral`, and the same for separable, `B`
/// and right integrals; each side computed independently.
pub fn split_separable_criteria(profile: &ExtensionProfile, wa: &WeakBialgebra, wb: &WeakBialgebra) -> (SplitSeparable, CheckList) {
    let s = SplitSeparable {
        split: profile.split(),
        a_separable: separability_idempotent(&wa.algebra).is_some(),
        a_normalized_left_integral: wa.normalized_left_integral().is_some(),
        separable: profile.separable(),
        b_separable: separability_idempotent(&wb.algebra).is_some(),
        b_normalized_right_integral: wb.normalized_right_integral().is_some(),
    };
    let mut c = CheckList::new();
    c.push("split ⟺ A is K-separable ⟺ A has a normalized left integral", s.split == s.a_separable && s.a_separable == s.a_normalized_left_integral);
    c.push("separable ⟺ B is K-separable ⟺ B has a normalized right integral", s.separable == s.b_separable && s.b_separable == s.b_normalized_right_integral);
    (s, c)
}

#[derive(Clone, Debug)]
pub struct WeakHopfReport {
    pub coords: FrobeniusCoordinates,
    pub a: WeakBialgebra,
    pub b: WeakBialgebra,
    pub gram: Mat,
    pub antipode_a: Option<Antipode>,
    pub antipode_b: Option<Antipode>,
    pub a_weak: bool,
    pub b_weak: bool,
    pub criteria: SplitSeparable,
    pub checks: CheckList,
}

fn prefixed(p: &str, c: CheckList) -> CheckList {
    let mut out = CheckList::new();
    for ch in c.items {
        out.push_witness(format!("{p}: {}", ch.name), if ch.pass { None } else { Some(ch.witness.unwrap_or_default()) });
    }
    out
}

/// The dual weak Hopf algebras `A` and `B` over index-one coordinates of `R`.
pub fn weak_hopf_verify(ctx: &D2Context, coords: &FrobeniusCoordinates) -> Result<WeakHopfReport, ExtError> {
    weak_hopf_verify_with(ctx, coords, &Sampler::full())
}

pub fn weak_hopf_verify_with(ctx: &D2Context, coords: &FrobeniusCoordinates, sampler: &Sampler) -> Result<WeakHopfReport, ExtError> {
    let wa = WeakBialgebra::from_bialgebroid(&ctx.a.bg, coords)?;
    let wb = WeakBialgebra::from_bialgebroid(&ctx.b.bg, coords)?;
    let (na, nb) = (wa.dim(), wb.dim());
    let f = ctx.ext.field();
    let aa = &wa.algebra;
    let mut checks = prefixed("A", wa.verify_with(sampler));
    checks.extend(prefixed("B", wb.verify_with(sampler)));
    let gram = ctx.gram(&coords.phi)?;
    checks.extend(duality_checks_with(&wa, &wb, &gram, sampler));

    let pl = wa.pi_l_mat();
    checks.sweep("Π^L(a) = λ(a(1))", 0..na, |&k| pl.col(k) != ctx.a.bg.s_of(&ctx.a.bg.eps_of(&aa.e(k))));
    checks.push("Π^L is idempotent with Π^L(1) = 1", pl.mul(&pl) == pl && pl.mul_vec(&aa.one()) == aa.one());
    let e = ctx.e_in_a()?;
    checks.push("E is a left integral in A", wa.is_left_integral(&e));
    let de = sparse_from_dense(&wa.delta_of(&e));
    let harp = |b: usize| -> Vec<Scalar> {
        let mut acc = vec![f.zero(); na];
        for (t, x) in &de {
            acc[t % na] += &(x * gram.get(b, t / na));
        }
        acc
    };
    let acts: Vec<Vec<Scalar>> = (0..nb).map(|b| ctx.e_action(b)).collect::<Result<_, _>>()?;
    checks.sweep("E ↼ b = E ◁ b", 0..nb, |&b| harp(b) != acts[b]);
    checks.push("b ↦ E ◁ b is onto A", Mat::from_cols(f, na, &acts).rank() == na);

    let antipode_a = wa.antipode();
    let antipode_b = wb.antipode();
    checks.push("A has an antipode", antipode_a.is_some());
    checks.push("B has an antipode", antipode_b.is_some());

    let (criteria, c) = split_separable_criteria(&ctx.profile, &wa, &wb);
    checks.extend(c);
    let (a_weak, b_weak) = (wa.is_genuinely_weak(), wb.is_genuinely_weak());
    Ok(WeakHopfReport { coords: coords.clone(), a: wa, b: wb, gram, antipode_a, antipode_b, a_weak, b_weak, criteria, checks })
}

/// `φ(r) = Σ_k r_k` in the coordinates of `M`, for every `r ∈ R`.
pub fn is_coordinate_sum(chain: &CentralizerChain, phi: &[Scalar]) -> bool {
    let f = chain.field();
    (0..chain.r_space.dim()).all(|i| {
        let r = chain.r_elem(i);
        let s = r.iter().fold(f.zero(), |acc, x| &acc + x);
        eval_form(phi, &unit_vec(f, chain.r_space.dim(), i)) == s
    })
}

/// The pairing `E_M E_{M_1}(ψ_B(b) e_1 e_2 φ_A(α)) = b^1 α(b^2)` and `E_{M_1}(e_2 ψ_B(b)) = ε_B(b) 1`,
/// under trivial centralizer, split and separable.
pub fn biseparable_pairing_check(ctx: &D2Context, tower: &Tower, maps: &TowerMaps) -> Result<CheckList, ExtError> {
    let mut why = Vec::new();
    if ctx.profile.dim_r != 1 {
        why.push(format!("centralizer has dimension {}", ctx.profile.dim_r));
    }
    if !ctx.profile.split() {
        why.push("not split".into());
    }
    if !ctx.profile.separable() {
        why.push("not separable".into());
    }
    if !why.is_empty() {
        return Err(ExtError::Hypothesis(why.join("; ")));
    }
    let f = ctx.ext.field();
    let nb = ctx.chain.b.dim();
    let mut c = CheckList::new();
    c.push_witness("E_M E_{M_1}(ψ_B(b) e_1 e_2 φ_A(α)) = b^1 α(b^2)", pairing_identity(&ctx.ext, &ctx.chain, tower, maps, &maps.psi_b).map(|w| format!("{w:?}")));
    let mult = ctx.chain.t2.multiply_map(&ctx.ext.m);
    c.sweep("E_{M_1}(e_2 ψ_B(b)) = ε_B(b) 1", 0..nb, |&i| {
        let b = unit_vec(f, nb, i);
        let lhs = tower.em1(&tower.m2.mul(&tower.e2, &maps.psi_b_elem(tower, &b)));
        let eb = mult.mul_vec(&ctx.chain.b_embed(&b));
        lhs != tower.m1.mul(&tower.m_in_m1(&eb), &tower.m1.one())
    });
    Ok(c)
}

/// D2 with biseparable implies QF, and D2 implies depth three.
pub fn qf_instance_check(profile: &ExtensionProfile) -> CheckList {
    let mut c = CheckList::new();
    c.push("D2 and biseparable imply QF", !(profile.d2() && profile.biseparable()) || (profile.left_qf && profile.right_qf));
    c.push("D2 implies depth three", !profile.d2() || (profile.left_d3 && profile.right_d3));
    c
}
