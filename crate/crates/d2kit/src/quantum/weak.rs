use crate::algcore::{eval_form, Algebra, FrobeniusCoordinates};
use crate::bialgd::{Bialgebroid, Handed};
use crate::checks::{CheckList, Sampler};
use crate::exactla::{
    collect_sparse, solve, sparse_from_dense, sparse_kernel, sparse_solve, sparse_to_dense, Accum, Mat, SVec, Scalar, Subspace,
};
use crate::extcore::ExtError;

/// A finite-dimensional weak bialgebra over `K`: `Δ: A → A ⊗_K A` (index `i·n + j`) and `ε: A → K`.
#[derive(Clone, Debug)]
pub struct WeakBialgebra {
    pub name: String,
    pub algebra: Algebra,
    /// `n² × n`.
    pub delta: Mat,
    pub eps: Vec<Scalar>,
}

/// An antipode from the linear solve, and whether `S * id * S` had to replace the raw solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Antipode {
    pub s: Mat,
    pub corrected: bool,
    pub involutive: bool,
}

impl WeakBialgebra {
    /// `Δ(a) = Σ t(e_i) a_(1) ⊗ s(f_i) a_(2)` for a left bialgebroid, `Δ(b) = Σ b_(1) s(e_i) ⊗ b_(2) t(f_i)`
    /// for a right one, and `ε = φ ∘ ε_R`, from index-one Frobenius coordinates `(φ, e_i, f_i)` on `R`.
    pub fn from_bialgebroid(bg: &Bialgebroid, c: &FrobeniusCoordinates) -> Result<WeakBialgebra, ExtError> {
        let f = bg.field();
        let n = bg.dim();
        if c.phi.len() != bg.base.dim() {
            return Err(ExtError::Hypothesis("Frobenius coordinates are not on the base algebra".into()));
        }
        if !c.is_index_one(&bg.base) || c.verify(&bg.base).is_err() {
            return Err(ExtError::Hypothesis("the base algebra needs index-one Frobenius coordinates".into()));
        }
        let tot = &bg.total;
        let mut lift_op = Mat::zeros(f, n * n, n * n);
        for (e, g) in c.left.iter().zip(&c.right) {
            let (x, y) = match bg.handed {
                Handed::Left => (tot.lmat(&bg.t_of(e)), tot.lmat(&bg.s_of(g))),
                Handed::Right => (tot.rmat(&bg.s_of(e)), tot.rmat(&bg.t_of(g))),
            };
            lift_op = lift_op.add(&x.kron(&y));
        }
        for rel in bg.t2.quot.relations().rows() {
            if !lift_op.mul_sparse(rel).is_empty() {
                return Err(ExtError::Verification("the lifted coproduct does not descend from A ⊗_R A".into()));
            }
        }
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|k| {
                let mut e = vec![f.zero(); n];
                e[k] = f.one();
                sparse_to_dense(f, &lift_op.mul_sparse(&bg.t2.lift(&bg.delta_of(&e))), n * n)
            })
            .collect();
        let eps = (0..n)
            .map(|k| {
                let mut e = vec![f.zero(); n];
                e[k] = f.one();
                eval_form(&c.phi, &bg.eps_of(&e))
            })
            .collect();
        Ok(WeakBialgebra { name: bg.name.clone(), algebra: tot.clone(), delta: Mat::from_cols(f, n * n, &cols), eps })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn delta_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.delta.mul_vec(a)
    }

    pub fn eps_of(&self, a: &[Scalar]) -> Scalar {
        eval_form(&self.eps, a)
    }

    /// Replaces one coefficient of `Δ`, for negative controls.
    pub fn perturbed(&self, row: usize, col: usize, by: &Scalar) -> WeakBialgebra {
        let mut w = self.clone();
        let x = w.delta.get(row, col) + by;
        w.delta.set(row, col, x);
        w
    }

    fn basis_deltas(&self) -> Vec<SVec> {
        self.delta.sparse_cols()
    }

    /// Factorwise product in `A^{⊗k}`.
    pub fn tensor_mul(&self, k: usize, x: &SVec, y: &SVec) -> SVec {
        let n = self.dim();
        let a = &self.algebra;
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (t, c) in x {
            for (u, d) in y {
                let mut cur: Vec<(usize, Scalar)> = vec![(0, c * d)];
                for p in (0..k).rev() {
                    let stride = n.pow(p as u32);
                    let prod = a.basis_product((t / stride) % n, (u / stride) % n);
                    let mut next = Vec::with_capacity(cur.len() * prod.len());
                    for (idx, coef) in &cur {
                        for (q, z) in prod {
                            next.push((idx * n + q, coef * z));
                        }
                    }
                    cur = next;
                }
                acc.extend(cur);
            }
        }
        collect_sparse(acc)
    }

    /// `(Δ ⊗ id)(x)` and `(id ⊗ Δ)(x)` for `x ∈ A ⊗ A`.
    fn delta_left(&self, dl: &[SVec], x: &SVec) -> SVec {
        let n = self.dim();
        let mut acc = Vec::new();
        for (t, c) in x {
            for (pq, d) in &dl[t / n] {
                acc.push((pq * n + t % n, c * d));
            }
        }
        collect_sparse(acc)
    }

    fn delta_right(&self, dl: &[SVec], x: &SVec) -> SVec {
        let n = self.dim();
        let mut acc = Vec::new();
        for (t, c) in x {
            for (pq, d) in &dl[t % n] {
                acc.push(((t / n) * n * n + pq, c * d));
            }
        }
        collect_sparse(acc)
    }

    /// `Π^L(a) = ε(1_(1) a) 1_(2)`.
    pub fn pi_l(&self, a: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let alg = &self.algebra;
        let mut acc = Accum::new(n);
        for (t, c) in sparse_from_dense(&self.delta_of(&alg.one())) {
            let w = &c * &self.eps_of(&alg.mul(&alg.e(t / n), a));
            acc.add(t % n, &w);
        }
        sparse_to_dense(alg.field(), &acc.take(), n)
    }

    /// `Π^R(a) = 1_(1) ε(a 1_(2))`.
    pub fn pi_r(&self, a: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let alg = &self.algebra;
        let mut acc = Accum::new(n);
        for (t, c) in sparse_from_dense(&self.delta_of(&alg.one())) {
            let w = &c * &self.eps_of(&alg.mul(a, &alg.e(t % n)));
            acc.add(t / n, &w);
        }
        sparse_to_dense(alg.field(), &acc.take(), n)
    }

    pub fn pi_l_mat(&self) -> Mat {
        let a = &self.algebra;
        Mat::from_cols(a.field(), self.dim(), &(0..self.dim()).map(|k| self.pi_l(&a.e(k))).collect::<Vec<_>>())
    }

    pub fn pi_r_mat(&self) -> Mat {
        let a = &self.algebra;
        Mat::from_cols(a.field(), self.dim(), &(0..self.dim()).map(|k| self.pi_r(&a.e(k))).collect::<Vec<_>>())
    }

    /// `Δ(1) ≠ 1 ⊗ 1`.
    pub fn is_genuinely_weak(&self) -> bool {
        let n = self.dim();
        let one = sparse_from_dense(&self.algebra.one());
        let mut oo = Vec::new();
        for (i, x) in &one {
            for (j, y) in &one {
                oo.push((i * n + j, x * y));
            }
        }
        sparse_from_dense(&self.delta_of(&self.algebra.one())) != collect_sparse(oo)
    }

    /// Coassociativity, counit laws, multiplicativity of `Δ`, the two forms of `Δ²(1)` and the weak
    /// multiplicativity of `ε`, each over basis elements.
    pub fn verify(&self) -> CheckList {
        self.verify_with(&Sampler::full())
    }

    /// `verify` with the cubic sweep restricted to the sampler's triples.
    pub fn verify_with(&self, sampler: &Sampler) -> CheckList {
        let n = self.dim();
        let f = self.algebra.field();
        let a = &self.algebra;
        let dl = self.basis_deltas();
        let mut c = CheckList::new();

        c.sweep("coassociativity", 0..n, |&k| self.delta_left(&dl, &dl[k]) != self.delta_right(&dl, &dl[k]));
        c.sweep("counit laws", 0..n, |&k| {
            let mut l = Accum::new(n);
            let mut r = Accum::new(n);
            for (t, x) in &dl[k] {
                l.add(t % n, &(x * &self.eps[t / n]));
                r.add(t / n, &(x * &self.eps[t % n]));
            }
            let e = vec![(k, f.one())];
            l.take() != e || r.take() != e
        });
        c.sweep("Δ is multiplicative", (0..n).flat_map(|i| (0..n).map(move |j| (i, j))), |&(i, j)| {
            let lhs = sparse_from_dense(&self.delta_of(&sparse_to_dense(f, a.basis_product(i, j), n)));
            lhs != self.tensor_mul(2, &dl[i], &dl[j])
        });

        let d1 = sparse_from_dense(&self.delta_of(&a.one()));
        let one = sparse_from_dense(&a.one());
        let mut d1_1 = Vec::new();
        let mut one_d1 = Vec::new();
        for (t, x) in &d1 {
            for (i, y) in &one {
                d1_1.push((t * n + i, x * y));
                one_d1.push((i * n * n + t, x * y));
            }
        }
        let (d1_1, one_d1) = (collect_sparse(d1_1), collect_sparse(one_d1));
        let d2 = self.delta_left(&dl, &d1);
        let w1 = self.tensor_mul(3, &d1_1, &one_d1);
        let w2 = self.tensor_mul(3, &one_d1, &d1_1);
        c.push_witness(
            "(Δ(1) ⊗ 1)(1 ⊗ Δ(1)) = (1 ⊗ Δ(1))(Δ(1) ⊗ 1) = Δ²(1)",
            if w1 != d2 { Some("left product".into()) } else if w2 != d2 { Some("right product".into()) } else { None },
        );

        let ep: Vec<Vec<Scalar>> = (0..n).map(|i| (0..n).map(|j| self.eps_of(&sparse_to_dense(f, a.basis_product(i, j), n))).collect()).collect();
        let eps3 = |i: usize, j: usize, k: usize| -> Scalar {
            let mut s = f.zero();
            for (p, x) in a.basis_product(i, j) {
                s += &(x * &ep[*p][k]);
            }
            s
        };
        let mut bad1 = None;
        let mut bad2 = None;
        for (i, j, k) in sampler.triples(n, n, n) {
            if bad1.is_some() && bad2.is_some() {
                break;
            }
            let mut s1 = f.zero();
            let mut s2 = f.zero();
            for (t, x) in &dl[j] {
                let (p, q) = (t / n, t % n);
                s1 += &(x * &(&ep[i][p] * &ep[q][k]));
                s2 += &(x * &(&ep[i][q] * &ep[p][k]));
            }
            let abc = eps3(i, j, k);
            if bad1.is_none() && s1 != abc {
                bad1 = Some(format!("{:?}", (i, j, k)));
            }
            if bad2.is_none() && s2 != abc {
                bad2 = Some(format!("{:?}", (i, j, k)));
            }
        }
        c.push_witness("ε(a b_(1)) ε(b_(2) c) = ε(abc)", bad1);
        c.push_witness("ε(a b_(2)) ε(b_(1) c) = ε(abc)", bad2);
        c
    }

    /// `(f * g)(a) = f(a_(1)) g(a_(2))` for linear maps given as `n × n` matrices.
    pub fn convolve(&self, f: &Mat, g: &Mat) -> Mat {
        let n = self.dim();
        let a = &self.algebra;
        let fs = f.sparse_cols();
        let gs = g.sparse_cols();
        let dl = self.basis_deltas();
        let cols: Vec<SVec> = (0..n)
            .map(|k| {
                let mut acc = Accum::new(n);
                for (t, x) in &dl[k] {
                    for (p, y) in &fs[t / n] {
                        for (q, z) in &gs[t % n] {
                            let w = &(x * y) * z;
                            acc.add_scaled(&w, a.basis_product(*p, *q));
                        }
                    }
                }
                acc.take()
            })
            .collect();
        Mat::from_sparse_cols(a.field(), n, &cols)
    }

    /// `a_(1) S(a_(2)) = Π^L(a)`, `S(a_(1)) a_(2) = Π^R(a)` and `S(a_(1)) a_(2) S(a_(3)) = S(a)`.
    pub fn antipode_checks(&self, s: &Mat) -> CheckList {
        let n = self.dim();
        let id = Mat::identity(self.algebra.field(), n);
        let (pl, pr) = (self.pi_l_mat(), self.pi_r_mat());
        let ids = self.convolve(&id, s);
        let sid = self.convolve(s, &id);
        let sids = self.convolve(&sid, s);
        let mut c = CheckList::new();
        c.sweep("a_(1) S(a_(2)) = Π^L(a)", 0..n, |&k| ids.col(k) != pl.col(k));
        c.sweep("S(a_(1)) a_(2) = Π^R(a)", 0..n, |&k| sid.col(k) != pr.col(k));
        c.sweep("S(a_(1)) a_(2) S(a_(3)) = S(a)", 0..n, |&k| sids.col(k) != s.col(k));
        c
    }

    /// Solves the two linear antipode axioms; if the solution misses the third axiom it is replaced
    /// by `S * id * S`, which satisfies all three whenever an antipode exists.
    pub fn antipode(&self) -> Option<Antipode> {
        let n = self.dim();
        let f = self.algebra.field();
        let a = &self.algebra;
        let dl = self.basis_deltas();
        let (pl, pr) = (self.pi_l_mat(), self.pi_r_mat());
        let mut rows: Vec<(SVec, Scalar)> = Vec::new();
        for k in 0..n {
            let mut lrows: Vec<Accum> = (0..n).map(|_| Accum::new(n * n)).collect();
            let mut rrows: Vec<Accum> = (0..n).map(|_| Accum::new(n * n)).collect();
            for (t, x) in &dl[k] {
                let (i, j) = (t / n, t % n);
                for l in 0..n {
                    for (p, y) in a.basis_product(i, l) {
                        lrows[*p].add(l * n + j, &(x * y));
                    }
                    for (p, y) in a.basis_product(l, j) {
                        rrows[*p].add(l * n + i, &(x * y));
                    }
                }
            }
            for (p, mut r) in lrows.into_iter().enumerate() {
                rows.push((r.take(), pl.get(p, k).clone()));
            }
            for (p, mut r) in rrows.into_iter().enumerate() {
                rows.push((r.take(), pr.get(p, k).clone()));
            }
        }
        let sol = sparse_solve(f, n * n, rows)?;
        let raw = Mat::from_flat(f, n, n, sol);
        let (s, corrected) = if self.antipode_checks(&raw).all_pass() {
            (raw, false)
        } else {
            let id = Mat::identity(f, n);
            (self.convolve(&self.convolve(&raw, &id), &raw), true)
        };
        if !self.antipode_checks(&s).all_pass() {
            return None;
        }
        let involutive = s.mul(&s).is_identity();
        Some(Antipode { s, corrected, involutive })
    }

    /// Left integrals `ℓ` with `aℓ = Π^L(a)ℓ` for all `a`.
    pub fn left_integrals(&self) -> Subspace {
        let a = &self.algebra;
        let mut rows = Vec::new();
        for k in 0..self.dim() {
            let op = a.lmat(&a.e(k)).sub(&a.lmat(&self.pi_l(&a.e(k))));
            rows.extend(op.sparse_rows().into_iter().filter(|r| !r.is_empty()));
        }
        sparse_kernel(a.field(), self.dim(), rows)
    }

    /// Right integrals `ℓ` with `ℓa = ℓΠ^R(a)` for all `a`.
    pub fn right_integrals(&self) -> Subspace {
        let a = &self.algebra;
        let mut rows = Vec::new();
        for k in 0..self.dim() {
            let op = a.rmat(&a.e(k)).sub(&a.rmat(&self.pi_r(&a.e(k))));
            rows.extend(op.sparse_rows().into_iter().filter(|r| !r.is_empty()));
        }
        sparse_kernel(a.field(), self.dim(), rows)
    }

    pub fn is_left_integral(&self, l: &[Scalar]) -> bool {
        let a = &self.algebra;
        (0..self.dim()).all(|k| a.mul(&a.e(k), l) == a.mul(&self.pi_l(&a.e(k)), l))
    }

    fn normalized(&self, space: &Subspace, proj: &Mat) -> Option<Vec<Scalar>> {
        if space.dim() == 0 {
            return None;
        }
        let basis = Mat::from_cols(self.algebra.field(), self.dim(), &space.basis());
        let c = solve(&proj.mul(&basis), &self.algebra.one()).ok()??;
        Some(basis.mul_vec(&c))
    }

    /// A left integral with `Π^L(ℓ) = 1`.
    pub fn normalized_left_integral(&self) -> Option<Vec<Scalar>> {
        self.normalized(&self.left_integrals(), &self.pi_l_mat())
    }

    /// A right integral with `Π^R(ℓ) = 1`.
    pub fn normalized_right_integral(&self) -> Option<Vec<Scalar>> {
        self.normalized(&self.right_integrals(), &self.pi_r_mat())
    }
}
