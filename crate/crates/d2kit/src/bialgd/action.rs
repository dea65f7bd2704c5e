use serde::Serialize;

use crate::algcore::Algebra;
use crate::exactla::{collect_sparse, sparse_from_dense, sparse_kernel, unit_vec, vec_add, vec_scale, Mat, SVec, Scalar, Subspace};
use crate::extcore::{ExtError, TensorOver};

use super::structure::{AxiomReport, AxiomResult, Bialgebroid, Handed};

/// An action of a bialgebroid on an algebra: `mats[i]` is the operator of basis element `i`
/// on the acted algebra (`x ↦ e_i ▷ x` or `x ↦ x ◁ e_i`).
#[derive(Clone, Debug)]
pub struct ActionData {
    pub handed: Handed,
    pub algebra: Algebra,
    pub mats: Vec<Mat>,
}

impl ActionData {
    /// Operator of an arbitrary element.
    pub fn op(&self, a: &[Scalar]) -> Mat {
        let n = self.algebra.dim();
        let f = self.algebra.field();
        let mut acc = Mat::zeros(f, n, n);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&self.mats[i].scale(c));
            }
        }
        acc
    }

    pub fn is_faithful(&self) -> bool {
        let f = self.algebra.field();
        let n = self.algebra.dim();
        let rows: Vec<Vec<Scalar>> = self.mats.iter().map(|m| m.flat().to_vec()).collect();
        Subspace::from_rows(f, n * n, &rows).dim() == self.mats.len()
    }
}

/// Module-algebroid laws: representation, product law through `Δ`, and the unit law.
pub fn verify_action(bg: &Bialgebroid, act: &ActionData) -> AxiomReport {
    assert_eq!(bg.handed, act.handed, "action and bialgebroid have different handedness");
    let f = bg.field();
    let n = bg.dim();
    let x = &act.algebra;
    let dx = x.dim();
    let e = |i| unit_vec(f, n, i);
    let mut results = Vec::new();

    let rep = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| {
        let lhs = act.op(&bg.total.mul(&e(i), &e(j)));
        let rhs = match act.handed {
            Handed::Left => act.mats[i].mul(&act.mats[j]),
            Handed::Right => act.mats[j].mul(&act.mats[i]),
        };
        lhs != rhs
    });
    results.push(AxiomResult { name: "representation", pass: rep.is_none(), witness: rep.map(|(i, j)| vec![i, j]) });

    let terms: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| bg.delta_terms(&e(i))).collect();
    let mut prod = None;
    'outer: for (a, ts) in terms.iter().enumerate() {
        for p in 0..dx {
            for q in 0..dx {
                let lhs = act.mats[a].mul_vec(&x.mul(&x.e(p), &x.e(q)));
                let mut rhs = x.zero();
                for (i, j, c) in ts {
                    let u = act.mats[*i].col(p);
                    let v = act.mats[*j].col(q);
                    rhs = vec_add(&rhs, &vec_scale(&x.mul(&u, &v), c));
                }
                if lhs != rhs {
                    prod = Some(vec![a, p, q]);
                    break 'outer;
                }
            }
        }
    }
    results.push(AxiomResult { name: "product law", pass: prod.is_none(), witness: prod });

    let one = x.one();
    let unit = (0..n).find(|&a| {
        let ea = bg.eps_of(&e(a));
        let via = match act.handed {
            Handed::Left => bg.s_of(&ea),
            Handed::Right => bg.t_of(&ea),
        };
        act.mats[a].mul_vec(&one) != act.op(&via).mul_vec(&one)
    });
    results.push(AxiomResult { name: "unit law", pass: unit.is_none(), witness: unit.map(|a| vec![a]) });
    AxiomReport { results }
}

/// `{x | e_a · x = (s or t)(ε(e_a)) · x for all a}`.
pub fn invariants(bg: &Bialgebroid, act: &ActionData, use_t: bool) -> Subspace {
    let f = bg.field();
    let n = bg.dim();
    let dx = act.algebra.dim();
    let mut rows: Vec<SVec> = Vec::new();
    for a in 0..n {
        let ea = bg.eps_of(&unit_vec(f, n, a));
        let via = if use_t { bg.t_of(&ea) } else { bg.s_of(&ea) };
        let d = act.mats[a].sub(&act.op(&via));
        rows.extend(d.sparse_rows().into_iter().filter(|r| !r.is_empty()));
    }
    sparse_kernel(f, dx, rows)
}

/// `M ⋊ A` on `M ⊗_R A` with `(m ⋊ a)(m' ⋊ a') = m (a_(1) ▷ m') ⋊ a_(2) a'`.
#[derive(Clone, Debug)]
pub struct SmashProduct {
    pub tensor: TensorOver,
    pub algebra: Algebra,
    /// `dim(M ⋊ A) × dim M` and `dim(M ⋊ A) × dim A`.
    pub iota_m: Mat,
    pub iota_a: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmashReport {
    pub dim: usize,
    pub well_defined: bool,
    pub iota_m_injective: bool,
    pub iota_a_injective: bool,
    pub faithful_action: bool,
    pub relations_hold: bool,
}

fn smash_ambient(bg: &Bialgebroid, act: &ActionData, terms: &[Vec<(usize, usize, Scalar)>], u: (usize, usize), v: (usize, usize)) -> SVec {
    let m = &act.algebra;
    let n = bg.dim();
    let mut acc: Vec<(usize, Scalar)> = Vec::new();
    for (i, j, c) in &terms[u.1] {
        let left = m.mul(&m.e(u.0), &act.mats[*i].col(v.0));
        let right = bg.total.mul(&bg.total.e(*j), &bg.total.e(v.1));
        for (p, x) in sparse_from_dense(&left) {
            for (q, y) in sparse_from_dense(&right) {
                acc.push((p * n + q, &(c * &x) * &y));
            }
        }
    }
    collect_sparse(acc)
}

pub fn smash_product(bg: &Bialgebroid, act: &ActionData) -> Result<(SmashProduct, SmashReport), ExtError> {
    if bg.handed != Handed::Left || act.handed != Handed::Left {
        return Err(ExtError::Hypothesis("the smash product needs a left action of a left bialgebroid".into()));
    }
    let f = bg.field();
    let m = &act.algebra;
    let (dm, n, k) = (m.dim(), bg.dim(), bg.base.dim());
    let one = m.one();
    let pairs = (0..k)
        .map(|r| {
            let j = act.op(&bg.s_of(&unit_vec(f, k, r))).mul_vec(&one);
            (m.rmat(&j), bg.left_r(&unit_vec(f, k, r)))
        })
        .collect();
    let tensor = TensorOver::new(f, dm, n, pairs);
    let d = tensor.dim();
    let terms: Vec<Vec<(usize, usize, Scalar)>> = (0..n).map(|i| bg.delta_terms(&unit_vec(f, n, i))).collect();
    let split = |t: usize| (t / n, t % n);
    let reps: Vec<(usize, usize)> = (0..d).map(|q| tensor.rep(q)).collect();

    let mut well_defined = true;
    for rel in tensor.quot.relations().rows() {
        for &u in &reps {
            let mut l: Vec<(usize, Scalar)> = Vec::new();
            let mut r: Vec<(usize, Scalar)> = Vec::new();
            for (t, c) in rel {
                for (p, x) in smash_ambient(bg, act, &terms, split(*t), u) {
                    l.push((p, c * &x));
                }
                for (p, x) in smash_ambient(bg, act, &terms, u, split(*t)) {
                    r.push((p, c * &x));
                }
            }
            well_defined &= tensor.project(&collect_sparse(l)).iter().all(|x| x.is_zero());
            well_defined &= tensor.project(&collect_sparse(r)).iter().all(|x| x.is_zero());
        }
    }
    if !well_defined {
        return Err(ExtError::Verification("smash product does not descend to M ⊗_R A".into()));
    }
    let table: Vec<SVec> = reps
        .iter()
        .flat_map(|&u| reps.iter().map(move |&v| (u, v)))
        .map(|(u, v)| sparse_from_dense(&tensor.project(&smash_ambient(bg, act, &terms, u, v))))
        .collect();
    let unit = tensor.elem(&one, &bg.total.one());
    let algebra = Algebra::from_table(f, d, table, unit)?;
    let iota_m = Mat::from_cols(f, d, &(0..dm).map(|i| tensor.elem(&m.e(i), &bg.total.one())).collect::<Vec<_>>());
    let iota_a = Mat::from_cols(f, d, &(0..n).map(|i| tensor.elem(&one, &bg.total.e(i))).collect::<Vec<_>>());

    let mut relations_hold = true;
    for i in 0..dm {
        for a in 0..n {
            let (xm, xa) = (iota_m.col(i), iota_a.col(a));
            relations_hold &= algebra.mul(&xm, &xa) == tensor.elem(&m.e(i), &bg.total.e(a));
            let mut rhs = vec![f.zero(); d];
            for (p, q, c) in &terms[a] {
                rhs = vec_add(&rhs, &vec_scale(&tensor.elem(&act.mats[*p].col(i), &bg.total.e(*q)), c));
            }
            relations_hold &= algebra.mul(&xa, &xm) == rhs;
        }
    }
    let report = SmashReport {
        dim: d,
        well_defined,
        iota_m_injective: iota_m.rank() == dm,
        iota_a_injective: iota_a.rank() == n,
        faithful_action: act.is_faithful(),
        relations_hold,
    };
    Ok((SmashProduct { tensor, algebra, iota_m, iota_a }, report))
}

impl SmashProduct {
    /// `m ⋊ a ↦ λ(m) (a ▷ −)` into `target` (matrices on `M`); true when it is a bijective
    /// algebra map onto `target`.
    pub fn to_endomorphisms(&self, act: &ActionData, target: &Subspace) -> bool {
        let m = &act.algebra;
        let f = m.field();
        let dm = m.dim();
        let imgs: Vec<Mat> = (0..self.tensor.dim())
            .map(|q| {
                let (i, a) = self.tensor.rep(q);
                m.lmat(&m.e(i)).mul(&act.mats[a])
            })
            .collect();
        let mut cols = Vec::new();
        for x in &imgs {
            match target.coords(x.flat()) {
                Some(c) => cols.push(c),
                None => return false,
            }
        }
        let pi = Mat::from_cols(f, target.dim(), &cols);
        if pi.rows() != pi.cols() || pi.rank() != pi.cols() {
            return false;
        }
        let d = self.tensor.dim();
        (0..d).all(|p| {
            (0..d).all(|q| {
                let prod = self.algebra.mul(&unit_vec(f, d, p), &unit_vec(f, d, q));
                let mut acc = Mat::zeros(f, dm, dm);
                for (k, c) in prod.iter().enumerate() {
                    if !c.is_zero() {
                        acc = acc.add(&imgs[k].scale(c));
                    }
                }
                acc == imgs[p].mul(&imgs[q])
            })
        })
    }
}
