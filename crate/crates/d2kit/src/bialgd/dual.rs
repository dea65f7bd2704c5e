use serde::Serialize;

use crate::algcore::Algebra;
use crate::exactla::{intertwiners, rref, solve, unit_vec, vec_add, vec_scale, Mat, Scalar, Subspace};
use crate::extcore::{space_mats, CentralizerChain, ExtError, RingExtension};

use super::concrete::{ConcreteA, ConcreteB};
use super::structure::{Bialgebroid, Handed};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DualKind {
    /// `A* = Hom(A_R, R_R)` with `⟨b, a⟩ = b(a)`.
    Right,
    /// `*A = Hom(_R A, _R R)` with `[a, b] = b(a)`.
    Left,
}

/// A dual of a left bialgebroid: the right bialgebroid structure and the evaluation matrices
/// (`k × n`) of its basis elements.
#[derive(Clone, Debug)]
pub struct DualBialgebroid {
    pub kind: DualKind,
    pub bg: Bialgebroid,
    pub space: Subspace,
    pub mats: Vec<Mat>,
    /// The defining pairing map `D ⊗_R D → Hom(A ⊗ A, R)` kills the tensor relations and is injective.
    pub pairing_descends: bool,
}

impl DualBialgebroid {
    /// Pairing of a dual element (coordinates) with an element of `A`.
    pub fn pair(&self, b: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        Mat::from_flat(self.bg.field(), self.bg.base.dim(), a.len(), self.space.element(b)).mul_vec(a)
    }

    pub fn coords_of(&self, phi: &Mat) -> Option<Vec<Scalar>> {
        self.space.coords(phi.flat())
    }
}

/// Builds `A*` or `*A`; the coproduct is solved from its defining pairing identity.
pub fn dual_bialgebroid(a: &Bialgebroid, kind: DualKind) -> Result<DualBialgebroid, ExtError> {
    if a.handed != Handed::Left {
        return Err(ExtError::Hypothesis("duals are built for left bialgebroids".into()));
    }
    let f = a.field();
    let (n, k) = (a.dim(), a.base.dim());
    let r = &a.base;
    let er = |i| unit_vec(f, k, i);
    let ea = |i| unit_vec(f, n, i);
    let ops: Vec<(Mat, Mat)> = (0..k)
        .map(|g| match kind {
            DualKind::Right => (a.right_r(&er(g)), r.rmat(&er(g))),
            DualKind::Left => (a.left_r(&er(g)), r.lmat(&er(g))),
        })
        .collect();
    let pairs: Vec<(&Mat, &Mat)> = ops.iter().map(|(x, y)| (x, y)).collect();
    let space = intertwiners(f, n, k, &pairs);
    if space.dim() == 0 {
        return Err(ExtError::Hypothesis("the dual module is zero".into()));
    }
    let mats = space_mats(f, k, n, &space);
    let terms: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| a.delta_terms(&ea(i))).collect();
    let flat = |x: &[Scalar]| Mat::from_flat(f, k, n, x.to_vec());

    // ⟨bb', a⟩ = ⟨b', s(⟨b, a_(1)⟩) a_(2)⟩ and [a, bb'] = [t([a_(2), b]) a_(1), b']
    let product = |x: &[Scalar], y: &[Scalar]| -> Vec<Scalar> {
        let (b, b2) = (flat(x), flat(y));
        let cols: Vec<Vec<Scalar>> = terms
            .iter()
            .map(|ts| {
                let mut acc = r.zero();
                for (i, j, c) in ts {
                    let arg = match kind {
                        DualKind::Right => a.total.mul(&a.s_of(&b.col(*i)), &ea(*j)),
                        DualKind::Left => a.total.mul(&a.t_of(&b.col(*j)), &ea(*i)),
                    };
                    acc = vec_add(&acc, &vec_scale(&b2.mul_vec(&arg), c));
                }
                acc
            })
            .collect();
        Mat::from_cols(f, k, &cols).flat().to_vec()
    };
    let total = Algebra::on_subspace(&space, a.eps.flat(), product)?;
    let d = space.dim();
    let coords = |m: &Mat| space.coords(m.flat()).ok_or_else(|| ExtError::Verification("structure map leaves the dual".into()));

    // A*: s(r) = ε(− t(r)), t(r) = ε(s(r) −); *A: s(r) = ε(−) r, t(r) = ε(− s(r))
    let mut s_cols = Vec::new();
    let mut t_cols = Vec::new();
    for g in 0..k {
        let (sm, tm) = match kind {
            DualKind::Right => (a.eps.mul(&a.total.rmat(&a.t_of(&er(g)))), a.eps.mul(&a.total.lmat(&a.s_of(&er(g))))),
            DualKind::Left => (r.rmat(&er(g)).mul(&a.eps), a.eps.mul(&a.total.rmat(&a.s_of(&er(g))))),
        };
        s_cols.push(coords(&sm)?);
        t_cols.push(coords(&tm)?);
    }
    let s = Mat::from_cols(f, d, &s_cols);
    let t = Mat::from_cols(f, d, &t_cols);
    let t2 = Bialgebroid::tensor_power(Handed::Right, &total, r, &s, &t, 2);

    // A*: P(x ⊗ y)(a, a') = ⟨x, a t(⟨y, a'⟩)⟩;  *A: P(x ⊗ y)(a, a') = [a s([a', x]), y]
    let p_of = |x: &Mat, y: &Mat| -> Vec<Scalar> {
        let mut out = Vec::with_capacity(n * n * k);
        for i in 0..n {
            for j in 0..n {
                let v = match kind {
                    DualKind::Right => x.mul_vec(&a.total.mul(&ea(i), &a.t_of(&y.col(j)))),
                    DualKind::Left => y.mul_vec(&a.total.mul(&ea(i), &a.s_of(&x.col(j)))),
                };
                out.extend(v);
            }
        }
        out
    };
    let pm: Vec<Vec<Vec<Scalar>>> = mats.iter().map(|x| mats.iter().map(|y| p_of(x, y)).collect()).collect();
    let dd = t2.radix.dims[0];
    let p_amb = |t: usize| pm[t / dd][t % dd].clone();
    let pcols: Vec<Vec<Scalar>> = (0..t2.dim()).map(|q| p_amb(t2.quot.rep(q))).collect();
    let p = Mat::from_cols(f, n * n * k, &pcols);
    // independent rows of P; a full-rank square block gives every coproduct by one inverse
    let (_, rows) = rref(&p.transpose());
    let mut pairing_descends = rows.len() == t2.dim();
    for row in t2.quot.relations().rows() {
        let mut acc = vec![f.zero(); n * n * k];
        for (tt, c) in row {
            acc = vec_add(&acc, &vec_scale(&p_amb(*tt), c));
        }
        pairing_descends &= acc.iter().all(|x| x.is_zero());
    }
    let block_inv = if rows.len() == t2.dim() {
        Mat::from_rows(f, t2.dim(), rows.iter().map(|&i| p.row(i).to_vec()).collect()).inverse()
    } else {
        None
    };
    let mut dcols = Vec::new();
    for b in &mats {
        let mut target = Vec::with_capacity(n * n * k);
        for i in 0..n {
            for j in 0..n {
                target.extend(b.mul_vec(&a.total.mul(&ea(i), &ea(j))));
            }
        }
        let x = match &block_inv {
            Some(inv) => Some(inv.mul_vec(&rows.iter().map(|&i| target[i].clone()).collect::<Vec<_>>())).filter(|x| p.mul_vec(x) == target),
            None => solve(&p, &target).map_err(|e| ExtError::Verification(e.to_string()))?,
        };
        dcols.push(x.ok_or_else(|| ExtError::Verification("no coproduct satisfies the pairing identity".into()))?);
    }
    let delta = Mat::from_cols(f, t2.dim(), &dcols);
    let one = a.total.one();
    let eps = Mat::from_cols(f, k, &mats.iter().map(|b| b.mul_vec(&one)).collect::<Vec<_>>());
    let name = match kind {
        DualKind::Right => format!("{}*", a.name),
        DualKind::Left => format!("*{}", a.name),
    };
    let bg = Bialgebroid::new(&name, Handed::Right, total, r.clone(), s, t, t2, delta, eps);
    Ok(DualBialgebroid { kind, bg, space, mats, pairing_descends })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryReport {
    /// One flag per relation, in the order listed for the pairing.
    pub relations: Vec<(String, bool)>,
}

impl SymmetryReport {
    pub fn all(&self) -> bool {
        self.relations.iter().all(|(_, ok)| *ok)
    }
}

/// The five symmetry relations of a pairing on all basis triples. For `*A` the relations
/// that hold are the ones with the dual-side products mirrored; the unmirrored forms are
/// reported separately under names ending in `(unmirrored)`.
pub fn pairing_symmetries(a: &Bialgebroid, d: &DualBialgebroid) -> SymmetryReport {
    let f = a.field();
    let (n, k, nd) = (a.dim(), a.base.dim(), d.bg.dim());
    let r = &a.base;
    let dd = &d.bg;
    let mut flags: Vec<(String, bool)> = Vec::new();
    let all = |check: &dyn Fn(&[Scalar], &[Scalar], &[Scalar]) -> bool| {
        (0..nd).all(|b| (0..n).all(|x| (0..k).all(|g| check(&unit_vec(f, nd, b), &unit_vec(f, n, x), &unit_vec(f, k, g)))))
    };
    let m = &a.total;
    let dm = &dd.total;
    match d.kind {
        DualKind::Right => {
            let p = |b: &[Scalar], x: &[Scalar]| d.pair(b, x);
            flags.push(("⟨b, t(r)a⟩ = ⟨b, a⟩r".into(), all(&|b, x, g| p(b, &m.mul(&a.t_of(g), x)) == r.mul(&p(b, x), g))));
            flags.push(("⟨b, s(r)a⟩ = ⟨t*(r)b, a⟩".into(), all(&|b, x, g| p(b, &m.mul(&a.s_of(g), x)) == p(&dm.mul(&dd.t_of(g), b), x))));
            flags.push(("⟨b, a t(r)⟩ = ⟨b s*(r), a⟩".into(), all(&|b, x, g| p(b, &m.mul(x, &a.t_of(g))) == p(&dm.mul(b, &dd.s_of(g)), x))));
            flags.push(("⟨b, a s(r)⟩ = ⟨s*(r)b, a⟩".into(), all(&|b, x, g| p(b, &m.mul(x, &a.s_of(g))) == p(&dm.mul(&dd.s_of(g), b), x))));
            flags.push(("⟨b t*(r), a⟩ = r⟨b, a⟩".into(), all(&|b, x, g| p(&dm.mul(b, &dd.t_of(g)), x) == r.mul(g, &p(b, x)))));
        }
        DualKind::Left => {
            let p = |x: &[Scalar], b: &[Scalar]| d.pair(b, x);
            flags.push(("[s(r)a, b] = r[a, b]".into(), all(&|b, x, g| p(&m.mul(&a.s_of(g), x), b) == r.mul(g, &p(x, b)))));
            flags.push(("[t(r)a, b] = [a, s*(r)b]".into(), all(&|b, x, g| p(&m.mul(&a.t_of(g), x), b) == p(x, &dm.mul(&dd.s_of(g), b)))));
            flags.push(("[a s(r), b] = [a, b t*(r)]".into(), all(&|b, x, g| p(&m.mul(x, &a.s_of(g)), b) == p(x, &dm.mul(b, &dd.t_of(g))))));
            flags.push(("[a t(r), b] = [a, t*(r)b]".into(), all(&|b, x, g| p(&m.mul(x, &a.t_of(g)), b) == p(x, &dm.mul(&dd.t_of(g), b)))));
            flags.push(("[a, b s*(r)] = [a, b]r".into(), all(&|b, x, g| p(x, &dm.mul(b, &dd.s_of(g))) == r.mul(&p(x, b), g))));
        }
    }
    SymmetryReport { relations: flags }
}

/// The unmirrored forms of the four `[ , ]` relations that involve products in `*A`.
pub fn unmirrored_bracket_symmetries(a: &Bialgebroid, d: &DualBialgebroid) -> SymmetryReport {
    let f = a.field();
    let (n, k, nd) = (a.dim(), a.base.dim(), d.bg.dim());
    let r = &a.base;
    let dd = &d.bg;
    let m = &a.total;
    let dm = &dd.total;
    let p = |x: &[Scalar], b: &[Scalar]| d.pair(b, x);
    let all = |check: &dyn Fn(&[Scalar], &[Scalar], &[Scalar]) -> bool| {
        (0..nd).all(|b| (0..n).all(|x| (0..k).all(|g| check(&unit_vec(f, nd, b), &unit_vec(f, n, x), &unit_vec(f, k, g)))))
    };
    SymmetryReport {
        relations: vec![
            ("[t(r)a, b] = [a, b t*(r)] (unmirrored)".into(), all(&|b, x, g| p(&m.mul(&a.t_of(g), x), b) == p(x, &dm.mul(b, &dd.t_of(g))))),
            ("[a s(r), b] = [a, s*(r)b] (unmirrored)".into(), all(&|b, x, g| p(&m.mul(x, &a.s_of(g)), b) == p(x, &dm.mul(&dd.s_of(g), b)))),
            ("[a t(r), b] = [a, b s*(r)] (unmirrored)".into(), all(&|b, x, g| p(&m.mul(x, &a.t_of(g)), b) == p(x, &dm.mul(b, &dd.s_of(g))))),
            ("[a, t*(r)b] = [a, b]r (unmirrored)".into(), all(&|b, x, g| p(x, &dm.mul(&dd.t_of(g), b)) == r.mul(&p(x, b), g))),
        ],
    }
}

/// `A → (*A)*`, `a ↦ [a, −]`, is a bijection onto `Hom((*A)_R, R_R)` with `b·r = b s*(r)`.
pub fn double_dual_bijective(a: &Bialgebroid, d: &DualBialgebroid) -> bool {
    let f = a.field();
    let (n, k, nd) = (a.dim(), a.base.dim(), d.bg.dim());
    let r = &a.base;
    let ops: Vec<(Mat, Mat)> = (0..k).map(|g| (d.bg.total.rmat(&d.bg.s_of(&unit_vec(f, k, g))), r.rmat(&unit_vec(f, k, g)))).collect();
    let pairs: Vec<(&Mat, &Mat)> = ops.iter().map(|(x, y)| (x, y)).collect();
    let target = intertwiners(f, nd, k, &pairs);
    let mut cols = Vec::new();
    for x in 0..n {
        let ev: Vec<Vec<Scalar>> = (0..nd).map(|b| d.pair(&unit_vec(f, nd, b), &unit_vec(f, n, x))).collect();
        match target.coords(Mat::from_cols(f, k, &ev).flat()) {
            Some(c) => cols.push(c),
            None => return false,
        }
    }
    let map = Mat::from_cols(f, target.dim(), &cols);
    map.rows() == map.cols() && map.rank() == n
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityCheck {
    pub bijective: bool,
    pub multiplicative: bool,
    pub unit_and_base_maps: bool,
    pub comultiplicative: bool,
    pub counit: bool,
}

impl DualityCheck {
    pub fn all(&self) -> bool {
        self.bijective && self.multiplicative && self.unit_and_base_maps && self.comultiplicative && self.counit
    }
}

/// Checks that `map` (dual coordinates × `B` coordinates) is an isomorphism of right bialgebroids `B → D`.
fn compare_bialgebroids(b: &Bialgebroid, d: &Bialgebroid, map: &Mat) -> DualityCheck {
    let f = b.field();
    let (nb, k) = (b.dim(), b.base.dim());
    let bijective = map.rows() == map.cols() && map.rank() == nb;
    let e = |i| unit_vec(f, nb, i);
    let multiplicative = (0..nb).all(|i| (0..nb).all(|j| map.mul_vec(&b.total.mul(&e(i), &e(j))) == d.total.mul(&map.mul_vec(&e(i)), &map.mul_vec(&e(j)))));
    let unit_and_base_maps = map.mul_vec(&b.total.one()) == d.total.one()
        && (0..k).all(|g| {
            let r = unit_vec(f, k, g);
            map.mul_vec(&b.s_of(&r)) == d.s_of(&r) && map.mul_vec(&b.t_of(&r)) == d.t_of(&r)
        });
    let comultiplicative = (0..nb).all(|i| {
        let mut acc = vec![f.zero(); d.t2.dim()];
        for (p, q, c) in b.delta_terms(&e(i)) {
            acc = vec_add(&acc, &vec_scale(&d.t2.elem(&[&map.col(p), &map.col(q)]), &c));
        }
        acc == d.delta_of(&map.mul_vec(&e(i)))
    });
    let counit = (0..nb).all(|i| b.eps_of(&e(i)) == d.eps_of(&map.mul_vec(&e(i))));
    DualityCheck { bijective, multiplicative, unit_and_base_maps, comultiplicative, counit }
}

/// `η: B → A*`, `b ↦ ⟨b, −⟩ = (α ↦ b^1 α(b^2))`.
pub fn duality_pairing_check(ext: &RingExtension, chain: &CentralizerChain, a: &ConcreteA, b: &ConcreteB, astar: &DualBialgebroid) -> Result<DualityCheck, ExtError> {
    pairing_map(ext, chain, a, b, astar, |m, x, alpha| m.mul(&m.e(x.0), &alpha.col(x.1)))
}

/// `ψ: B → *A`, `b ↦ [−, b] = (α ↦ α(b^1) b^2)`.
pub fn left_dual_identification(ext: &RingExtension, chain: &CentralizerChain, a: &ConcreteA, b: &ConcreteB, adual: &DualBialgebroid) -> Result<DualityCheck, ExtError> {
    pairing_map(ext, chain, a, b, adual, |m, x, alpha| m.mul(&alpha.col(x.0), &m.e(x.1)))
}

fn pairing_map(
    ext: &RingExtension,
    chain: &CentralizerChain,
    a: &ConcreteA,
    b: &ConcreteB,
    d: &DualBialgebroid,
    term: impl Fn(&Algebra, (usize, usize), &Mat) -> Vec<Scalar>,
) -> Result<DualityCheck, ExtError> {
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let (nb, k) = (b.bg.dim(), a.bg.base.dim());
    let mut cols = Vec::new();
    for p in 0..nb {
        let x = chain.b_embed(&unit_vec(f, nb, p));
        let mut evs = Vec::new();
        for alpha in &chain.a_mats {
            let mut acc = m.zero();
            for (st, c) in chain.t2.lift(&x) {
                acc = vec_add(&acc, &vec_scale(&term(m, (st / dm, st % dm), alpha), &c));
            }
            evs.push(chain.r_space.coords(&acc).ok_or_else(|| ExtError::Verification("pairing value is not in R".into()))?);
        }
        let phi = Mat::from_cols(f, k, &evs);
        cols.push(d.coords_of(&phi).ok_or_else(|| ExtError::Verification("pairing of b is not in the dual".into()))?);
    }
    let map = Mat::from_cols(f, d.bg.dim(), &cols);
    Ok(compare_bialgebroids(&b.bg, &d.bg, &map))
}
