use crate::algcore::{Algebra, AlgebraMap};
use crate::checks::CheckList;
use crate::exactla::{sparse_from_dense, vec_add, Field, Mat, SVec, Scalar, Subspace};
use crate::extcore::{ExtError, RingExtension, TensorPower};

use super::system::{e_in_m, FrobeniusSystem};

/// `N → M → M_1 → M_2` with `M_1 = M ⊗_N M` and `M_2 = M ⊗_N M ⊗_N M`, products induced by `E`.
#[derive(Clone, Debug)]
pub struct Tower {
    pub sys: FrobeniusSystem,
    /// `ι∘E` on `M`.
    pub e_op: Mat,
    pub t2: TensorPower,
    pub t3: TensorPower,
    pub m1: Algebra,
    pub m2: Algebra,
    pub m_to_m1: Mat,
    pub m1_to_m2: Mat,
    pub m_to_m2: Mat,
    pub e1: Vec<Scalar>,
    pub e2: Vec<Scalar>,
    /// `E_M = μ: M_1 → M`.
    pub e_m: Mat,
    /// `E_{M_1}: M_2 → M_1`, `a ⊗ b ⊗ c ↦ a E(b) ⊗ c`.
    pub e_m1: Mat,
    /// `Â = M_1^N`, `B̂ = M_2^M`, `Ĉ = M_2^N`.
    pub a_hat: Subspace,
    pub b_hat: Subspace,
    pub c_hat: Subspace,
}

fn digits(t: &TensorPower, q: usize) -> Vec<usize> {
    t.radix.digits(t.quot.rep(q))
}

pub(crate) fn sum(f: Field, n: usize, terms: impl IntoIterator<Item = Vec<Scalar>>) -> Vec<Scalar> {
    terms.into_iter().fold(vec![f.zero(); n], |acc, v| vec_add(&acc, &v))
}

pub fn build_tower(ext: &RingExtension, sys: &FrobeniusSystem) -> Result<Tower, ExtError> {
    sys.verify(ext)?;
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let e_op = e_in_m(ext, &sys.e);
    let one = m.one();
    // ιE(e_b e_c)
    let ebc: Vec<Vec<Scalar>> = (0..dm * dm).map(|t| e_op.mul_vec(&m.mul(&m.e(t / dm), &m.e(t % dm)))).collect();

    let t2 = TensorPower::new(ext, 2);
    let d1 = t2.dim();
    let r1: Vec<Vec<usize>> = (0..d1).map(|q| digits(&t2, q)).collect();
    let mut table1: Vec<SVec> = Vec::with_capacity(d1 * d1);
    for p in &r1 {
        for q in &r1 {
            let left = m.mul(&m.e(p[0]), &ebc[p[1] * dm + q[0]]);
            table1.push(sparse_from_dense(&t2.elem(&[&left, &m.e(q[1])])));
        }
    }
    let unit1 = sum(f, d1, sys.x.iter().zip(&sys.y).map(|(x, y)| t2.elem(&[x, y])));
    let m1 = Algebra::from_table(f, d1, table1, unit1)?;

    let t3 = TensorPower::new(ext, 3);
    let d2 = t3.dim();
    let r2: Vec<Vec<usize>> = (0..d2).map(|q| digits(&t3, q)).collect();
    let mut table2: Vec<SVec> = Vec::with_capacity(d2 * d2);
    for p in &r2 {
        for q in &r2 {
            let mid = m.mul3(&m.e(p[1]), &ebc[p[2] * dm + q[0]], &m.e(q[1]));
            table2.push(sparse_from_dense(&t3.elem(&[&m.e(p[0]), &mid, &m.e(q[2])])));
        }
    }
    let unit2 = sum(f, d2, sys.x.iter().zip(&sys.y).map(|(x, y)| t3.elem(&[x, &one, y])));
    let m2 = Algebra::from_table(f, d2, table2, unit2)?;

    let m_to_m1 = Mat::from_cols(
        f,
        d1,
        &(0..dm)
            .map(|k| sum(f, d1, sys.x.iter().zip(&sys.y).map(|(x, y)| t2.elem(&[&m.mul(&m.e(k), x), y]))))
            .collect::<Vec<_>>(),
    );
    let m1_to_m2 = Mat::from_cols(f, d2, &r1.iter().map(|d| t3.elem(&[&m.e(d[0]), &one, &m.e(d[1])])).collect::<Vec<_>>());
    AlgebraMap::new(m_to_m1.clone()).check(m, &m1)?;
    AlgebraMap::new(m1_to_m2.clone()).check(&m1, &m2)?;
    let m_to_m2 = m1_to_m2.mul(&m_to_m1);

    let e1 = t2.elem(&[&one, &one]);
    let mut e2 = vec![f.zero(); d2];
    for (xi, yi) in sys.x.iter().zip(&sys.y) {
        for (xj, yj) in sys.x.iter().zip(&sys.y) {
            e2 = vec_add(&e2, &t3.elem(&[xi, &m.mul(yi, xj), yj]));
        }
    }
    let e_m = t2.multiply_map(m);
    let e_m1 = Mat::from_cols(f, d1, &r2.iter().map(|d| t2.elem(&[&m.mul(&m.e(d[0]), &e_op.mul_vec(&m.e(d[1]))), &m.e(d[2])])).collect::<Vec<_>>());

    let n_in_m1: Vec<Vec<Scalar>> = ext.n_generators().iter().map(|g| m_to_m1.mul_vec(g)).collect();
    let a_hat = m1.centralizer(&n_in_m1);
    let m_in_m2: Vec<Vec<Scalar>> = ext.m_generators().iter().map(|g| m_to_m2.mul_vec(g)).collect();
    let b_hat = m2.centralizer(&m_in_m2);
    let n_in_m2: Vec<Vec<Scalar>> = ext.n_generators().iter().map(|g| m_to_m2.mul_vec(g)).collect();
    let c_hat = m2.centralizer(&n_in_m2);
    Ok(Tower { sys: sys.clone(), e_op, t2, t3, m1, m2, m_to_m1, m1_to_m2, m_to_m2, e1, e2, e_m, e_m1, a_hat, b_hat, c_hat })
}

impl Tower {
    pub fn dim_m1(&self) -> usize {
        self.m1.dim()
    }

    pub fn dim_m2(&self) -> usize {
        self.m2.dim()
    }

    /// `m ∈ M` inside `M_1`.
    pub fn m_in_m1(&self, m: &[Scalar]) -> Vec<Scalar> {
        self.m_to_m1.mul_vec(m)
    }

    pub fn m_in_m2(&self, m: &[Scalar]) -> Vec<Scalar> {
        self.m_to_m2.mul_vec(m)
    }

    pub fn m1_in_m2(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.m1_to_m2.mul_vec(x)
    }

    pub fn em(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.e_m.mul_vec(x)
    }

    pub fn em1(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.e_m1.mul_vec(x)
    }

    /// `ι(E(m))` for `m ∈ M`.
    pub fn e_of(&self, m: &[Scalar]) -> Vec<Scalar> {
        self.e_op.mul_vec(m)
    }

    /// Every tower identity, with the first failing basis tuple.
    pub fn verify(&self, ext: &RingExtension) -> CheckList {
        let m = &ext.m;
        let (dm, d1, d2) = (ext.dim_m(), self.dim_m1(), self.dim_m2());
        let (m1, m2) = (&self.m1, &self.m2);
        let (e1, e2) = (&self.e1, &self.e2);
        let e1_2 = self.m1_in_m2(e1);
        let mut c = CheckList::new();

        let unit1 = sum(ext.field(), d1, self.sys.x.iter().zip(&self.sys.y).map(|(x, y)| self.t2.elem(&[x, y])));
        c.push("M_1 is associative with unit Σ x_i ⊗ y_i", m1.one() == unit1);
        c.push("M_2 is associative with unit Σ x_i ⊗ 1 ⊗ y_i", m2.one() == self.m_to_m2.mul_vec(&m.one()));
        c.push(
            "M → M_1 → M_2 are unital algebra maps",
            AlgebraMap::new(self.m_to_m1.clone()).check(m, m1).is_ok() && AlgebraMap::new(self.m1_to_m2.clone()).check(m1, m2).is_ok(),
        );
        c.sweep("e_1 m e_1 = e_1 E(m) = E(m) e_1", 0..dm, |&k| {
            let x = self.m_in_m1(&m.e(k));
            let en = self.m_in_m1(&self.e_of(&m.e(k)));
            let lhs = m1.mul3(e1, &x, e1);
            lhs != m1.mul(e1, &en) || lhs != m1.mul(&en, e1)
        });
        c.sweep("E_M(m e_1 m') = m m'", (0..dm).flat_map(|a| (0..dm).map(move |b| (a, b))), |&(a, b)| {
            self.em(&m1.mul3(&self.m_in_m1(&m.e(a)), e1, &self.m_in_m1(&m.e(b)))) != m.mul(&m.e(a), &m.e(b))
        });
        c.sweep("E_M is an M-M-bimodule map", (0..dm).flat_map(|a| (0..d1).map(move |x| (a, x))), |&(a, x)| {
            let ma = self.m_in_m1(&m.e(a));
            let xv = m1.e(x);
            self.em(&m1.mul(&ma, &xv)) != m.mul(&m.e(a), &self.em(&xv)) || self.em(&m1.mul(&xv, &ma)) != m.mul(&self.em(&xv), &m.e(a))
        });
        c.sweep("{x_i e_1}, {e_1 y_i} are dual bases for E_M", 0..d1, |&x| {
            let xv = m1.e(x);
            let pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> =
                self.sys.x.iter().zip(&self.sys.y).map(|(xi, yi)| (m1.mul(&self.m_in_m1(xi), e1), m1.mul(e1, &self.m_in_m1(yi)))).collect();
            let l = sum(ext.field(), d1, pairs.iter().map(|(u, v)| m1.mul(u, &self.m_in_m1(&self.em(&m1.mul(v, &xv))))));
            let r = sum(ext.field(), d1, pairs.iter().map(|(u, v)| m1.mul(&self.m_in_m1(&self.em(&m1.mul(&xv, u))), v)));
            l != xv || r != xv
        });
        c.sweep("e_2 m_1 e_2 = e_2 E_M(m_1) = E_M(m_1) e_2", 0..d1, |&x| {
            let x2 = self.m1_in_m2(&m1.e(x));
            let em = self.m_in_m2(&self.em(&m1.e(x)));
            let lhs = m2.mul3(e2, &x2, e2);
            lhs != m2.mul(e2, &em) || lhs != m2.mul(&em, e2)
        });
        c.sweep("E_{M_1}(m_1 e_2 m_1') = m_1 m_1'", (0..d1).flat_map(|a| (0..d1).map(move |b| (a, b))), |&(a, b)| {
            self.em1(&m2.mul3(&self.m1_in_m2(&m1.e(a)), e2, &self.m1_in_m2(&m1.e(b)))) != m1.mul(&m1.e(a), &m1.e(b))
        });
        let gens1: Vec<Vec<Scalar>> = m1.generators().into_iter().map(|g| m1.e(g)).collect();
        c.sweep("E_{M_1} is an M_1-M_1-bimodule map", (0..gens1.len()).flat_map(|g| (0..d2).map(move |x| (g, x))), |&(g, x)| {
            let a = self.m1_in_m2(&gens1[g]);
            let xv = m2.e(x);
            self.em1(&m2.mul(&a, &xv)) != m1.mul(&gens1[g], &self.em1(&xv)) || self.em1(&m2.mul(&xv, &a)) != m1.mul(&self.em1(&xv), &gens1[g])
        });
        c.push("e_1 e_2 e_1 = e_1", m2.mul3(&e1_2, e2, &e1_2) == e1_2);
        c.push("e_2 e_1 e_2 = e_2", m2.mul3(e2, &e1_2, e2) == *e2);
        c.sweep("Pimsner–Popa relations in M_1", 0..d1, |&x| {
            let xv = m1.e(x);
            let l = m1.mul(&xv, e1);
            let r = m1.mul(e1, &xv);
            l != m1.mul(&self.m_in_m1(&self.em(&l)), e1) || r != m1.mul(e1, &self.m_in_m1(&self.em(&r)))
        });
        c.sweep("Pimsner–Popa relations in M_2", 0..d2, |&x| {
            let xv = m2.e(x);
            let l = m2.mul(&xv, e2);
            let r = m2.mul(e2, &xv);
            l != m2.mul(&self.m1_in_m2(&self.em1(&l)), e2) || r != m2.mul(e2, &self.m1_in_m2(&self.em1(&r)))
        });
        c
    }

    /// `Σ_i x_i X y_i` in `M_2`.
    pub(crate) fn sandwich2(&self, mid: &[Scalar]) -> Vec<Scalar> {
        let d2 = self.dim_m2();
        let f = self.m2.field();
        sum(f, d2, self.sys.x.iter().zip(&self.sys.y).map(|(x, y)| self.m2.mul3(&self.m_in_m2(x), mid, &self.m_in_m2(y))))
    }
}
