use serde::Serialize;

use crate::algcore::Algebra;
use crate::exactla::{
    collect_sparse, kron_sparse, sparse_from_dense, tensor_apply, tensor_relations, unit_vec, Field, Mat, Quotient, Radix,
    SVec, Scalar,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Handed {
    Left,
    Right,
}

/// `A ⊗_R … ⊗_R A` for the bimodule pattern of a left or right bialgebroid:
/// left `r·a·r' = s(r)t(r')a`, right `r·a·r' = a t(r) s(r')`.
#[derive(Clone, Debug)]
pub struct RTensor {
    pub pattern: Handed,
    pub k: usize,
    pub n: usize,
    pub radix: Radix,
    pub quot: Quotient,
}

impl RTensor {
    /// `pairs` are `(right R-action, left R-action)` operators on `A` for generators of `R`.
    pub fn new(field: Field, n: usize, pattern: Handed, pairs: &[(Mat, Mat)], k: usize) -> RTensor {
        let dims = vec![n; k];
        let cuts = vec![pairs.to_vec(); k - 1];
        RTensor { pattern, k, n, radix: Radix::new(&dims), quot: Quotient::new(tensor_relations(field, &dims, &cuts)) }
    }

    pub fn dim(&self) -> usize {
        self.quot.dim()
    }

    pub fn field(&self) -> Field {
        self.quot.field()
    }

    pub fn project(&self, v: &SVec) -> Vec<Scalar> {
        self.quot.project(v)
    }

    pub fn lift(&self, q: &[Scalar]) -> SVec {
        self.quot.lift(q)
    }

    pub fn elem(&self, factors: &[&[Scalar]]) -> Vec<Scalar> {
        let sp: Vec<SVec> = factors.iter().map(|x| sparse_from_dense(x)).collect();
        let refs: Vec<&SVec> = sp.iter().collect();
        self.project(&kron_sparse(self.field(), &self.radix, &refs))
    }

    /// Applies `op` to factor `f` of an ambient vector.
    pub fn on_factor(&self, v: &SVec, f: usize, op: &Mat) -> SVec {
        let cols = op.sparse_cols();
        let id: Vec<SVec> = (0..self.n).map(|i| vec![(i, self.field().one())]).collect();
        let images: Vec<(&[SVec], usize)> = (0..self.k).map(|j| if j == f { (&cols[..], self.n) } else { (&id[..], self.n) }).collect();
        tensor_apply(&self.radix, v, &images)
    }

    fn check_label(&self, h: Handed) {
        assert_eq!(self.pattern, h, "tensor built for a different bimodule pattern");
    }
}

/// A left or right bialgebroid `⟨A, R, s, t, Δ, ε⟩` given by matrices.
#[derive(Clone, Debug)]
pub struct Bialgebroid {
    pub name: String,
    pub handed: Handed,
    pub total: Algebra,
    pub base: Algebra,
    /// `n × k` matrices of `s: R → A` and `t: R^op → A`.
    pub s: Mat,
    pub t: Mat,
    pub t2: RTensor,
    pub t3: RTensor,
    /// `dim(A ⊗_R A) × n`.
    pub delta: Mat,
    /// `k × n`.
    pub eps: Mat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub name: &'static str,
    pub pass: bool,
    /// Basis indices of the first counterexample (elements of `A`, then of `R`).
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn get(&self, name: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.name == name)
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.results.iter().filter(|r| !r.pass).collect()
    }
}

fn first_failure<I: IntoIterator<Item = Vec<usize>>>(tuples: I, mut ok: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    tuples.into_iter().find(|t| !ok(t))
}

fn pairs(a: usize, b: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..a).flat_map(move |i| (0..b).map(move |j| vec![i, j]))
}

impl Bialgebroid {
    /// Operators `(right R-action, left R-action)` on `A` for every basis element of `R`.
    pub fn action_pairs(handed: Handed, total: &Algebra, base: &Algebra, s: &Mat, t: &Mat) -> Vec<(Mat, Mat)> {
        (0..base.dim())
            .map(|r| {
                let (sr, tr) = (s.col(r), t.col(r));
                match handed {
                    Handed::Left => (total.lmat(&tr), total.lmat(&sr)),
                    Handed::Right => (total.rmat(&sr), total.rmat(&tr)),
                }
            })
            .collect()
    }

    pub fn tensor_power(handed: Handed, total: &Algebra, base: &Algebra, s: &Mat, t: &Mat, k: usize) -> RTensor {
        let pairs = Bialgebroid::action_pairs(handed, total, base, s, t);
        RTensor::new(total.field(), total.dim(), handed, &pairs, k)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn new(name: &str, handed: Handed, total: Algebra, base: Algebra, s: Mat, t: Mat, t2: RTensor, delta: Mat, eps: Mat) -> Bialgebroid {
        t2.check_label(handed);
        assert_eq!(t2.k, 2, "coproduct lands in the tensor square");
        let t3 = Bialgebroid::tensor_power(handed, &total, &base, &s, &t, 3);
        Bialgebroid { name: name.to_string(), handed, total, base, s, t, t2, t3, delta, eps }
    }

    pub fn field(&self) -> Field {
        self.total.field()
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn s_of(&self, r: &[Scalar]) -> Vec<Scalar> {
        self.s.mul_vec(r)
    }

    pub fn t_of(&self, r: &[Scalar]) -> Vec<Scalar> {
        self.t.mul_vec(r)
    }

    pub fn delta_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.delta.mul_vec(a)
    }

    pub fn eps_of(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.eps.mul_vec(a)
    }

    /// `a ↦ r·a` in the bialgebroid's bimodule structure.
    pub fn left_r(&self, r: &[Scalar]) -> Mat {
        match self.handed {
            Handed::Left => self.total.lmat(&self.s_of(r)),
            Handed::Right => self.total.rmat(&self.t_of(r)),
        }
    }

    /// `a ↦ a·r`.
    pub fn right_r(&self, r: &[Scalar]) -> Mat {
        match self.handed {
            Handed::Left => self.total.lmat(&self.t_of(r)),
            Handed::Right => self.total.rmat(&self.s_of(r)),
        }
    }

    /// Representative terms `(i, j, c)` of `Δ(a) = Σ c e_i ⊗ e_j`.
    pub fn delta_terms(&self, a: &[Scalar]) -> Vec<(usize, usize, Scalar)> {
        let n = self.dim();
        self.t2.lift(&self.delta_of(a)).into_iter().map(|(t, c)| (t / n, t % n, c)).collect()
    }

    /// Class in `A ⊗_R A` of the componentwise product of representatives.
    pub fn tensor_product_of(&self, x: &SVec, y: &SVec) -> Vec<Scalar> {
        let n = self.dim();
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (t, c) in x {
            for (u, d) in y {
                let p0 = self.total.basis_product(t / n, u / n);
                let p1 = self.total.basis_product(t % n, u % n);
                let cd = c * d;
                for (i, x0) in p0 {
                    for (j, x1) in p1 {
                        acc.push((i * n + j, &cd * &(x0 * x1)));
                    }
                }
            }
        }
        self.t2.project(&collect_sparse(acc))
    }

    pub fn verify_axioms(&self) -> AxiomReport {
        let f = self.field();
        let (n, k) = (self.dim(), self.base.dim());
        let a = &self.total;
        let r = &self.base;
        let e = |i| unit_vec(f, n, i);
        let er = |i| unit_vec(f, k, i);
        let mut results = Vec::new();
        let mut push = |name, w: Option<Vec<usize>>| results.push(AxiomResult { name, pass: w.is_none(), witness: w });

        push("s is a ring homomorphism", {
            let unit = if self.s_of(&r.one()) == a.one() { None } else { Some(vec![]) };
            unit.or_else(|| first_failure(pairs(k, k), |p| self.s_of(&r.mul(&er(p[0]), &er(p[1]))) == a.mul(&self.s_of(&er(p[0])), &self.s_of(&er(p[1])))))
        });
        push("t is an anti-homomorphism", {
            let unit = if self.t_of(&r.one()) == a.one() { None } else { Some(vec![]) };
            unit.or_else(|| first_failure(pairs(k, k), |p| self.t_of(&r.mul(&er(p[0]), &er(p[1]))) == a.mul(&self.t_of(&er(p[1])), &self.t_of(&er(p[0])))))
        });
        push(
            "s and t commute",
            first_failure(pairs(k, k), |p| {
                let (x, y) = (self.s_of(&er(p[0])), self.t_of(&er(p[1])));
                a.mul(&x, &y) == a.mul(&y, &x)
            }),
        );

        let lifts: Vec<SVec> = (0..n).map(|i| self.t2.lift(&self.delta_of(&e(i)))).collect();
        let dl: Vec<SVec> = lifts.clone();
        let id: Vec<SVec> = (0..n).map(|i| vec![(i, f.one())]).collect();

        push(
            "Δ is an R-R-bimodule map",
            first_failure(pairs(n, k), |p| {
                let x = &lifts[p[0]];
                let l = self.left_r(&er(p[1]));
                let rr = self.right_r(&er(p[1]));
                self.delta_of(&l.col(p[0])) == self.t2.project(&self.t2.on_factor(x, 0, &l))
                    && self.delta_of(&rr.col(p[0])) == self.t2.project(&self.t2.on_factor(x, 1, &rr))
            }),
        );
        push(
            "ε is an R-R-bimodule map",
            first_failure(pairs(n, k), |p| {
                let l = self.left_r(&er(p[1]));
                let rr = self.right_r(&er(p[1]));
                let ea = self.eps_of(&e(p[0]));
                self.eps_of(&l.col(p[0])) == r.mul(&er(p[1]), &ea) && self.eps_of(&rr.col(p[0])) == r.mul(&ea, &er(p[1]))
            }),
        );
        push(
            "coassociativity",
            first_failure((0..n).map(|i| vec![i]), |p| {
                let x = &lifts[p[0]];
                let lhs = self.t3.project(&tensor_apply(&self.t2.radix, x, &[(&dl, n * n), (&id, n)]));
                let rhs = self.t3.project(&tensor_apply(&self.t2.radix, x, &[(&id, n), (&dl, n * n)]));
                lhs == rhs
            }),
        );
        push(
            "counit laws",
            first_failure((0..n).map(|i| vec![i]), |p| {
                let mut left = a.zero();
                let mut right = a.zero();
                for (t, c) in &lifts[p[0]] {
                    let (i, j) = (t / n, t % n);
                    let l = self.left_r(&self.eps_of(&e(i))).mul_vec(&e(j));
                    let rr = self.right_r(&self.eps_of(&e(j))).mul_vec(&e(i));
                    left = crate::exactla::vec_add(&left, &crate::exactla::vec_scale(&l, c));
                    right = crate::exactla::vec_add(&right, &crate::exactla::vec_scale(&rr, c));
                }
                left == e(p[0]) && right == e(p[0])
            }),
        );
        let (co, tau0, tau1): (fn(&Algebra, &[Scalar]) -> Mat, &Mat, &Mat) = match self.handed {
            Handed::Left => (|a, x| a.rmat(x), &self.t, &self.s),
            Handed::Right => (|a, x| a.lmat(x), &self.s, &self.t),
        };
        push(
            "Δ lands in the Takeuchi product",
            first_failure(pairs(n, k), |p| {
                let x = &lifts[p[0]];
                let lhs = self.t2.project(&self.t2.on_factor(x, 0, &co(a, &tau0.col(p[1]))));
                let rhs = self.t2.project(&self.t2.on_factor(x, 1, &co(a, &tau1.col(p[1]))));
                lhs == rhs
            }),
        );
        push(
            "Δ is multiplicative",
            first_failure(pairs(n, n), |p| self.delta_of(&a.mul(&e(p[0]), &e(p[1]))) == self.tensor_product_of(&lifts[p[0]], &lifts[p[1]])),
        );
        push("Δ(1) = 1 ⊗ 1", if self.delta_of(&a.one()) == self.t2.elem(&[&a.one(), &a.one()]) { None } else { Some(vec![]) });
        push("ε(1) = 1", if self.eps_of(&a.one()) == r.one() { None } else { Some(vec![]) });
        push(
            "ε is compatible with the product",
            first_failure(pairs(n, n), |p| {
                let (x, y) = (e(p[0]), e(p[1]));
                let mid = self.eps_of(&a.mul(&x, &y));
                match self.handed {
                    Handed::Left => {
                        let ey = self.eps_of(&y);
                        self.eps_of(&a.mul(&x, &self.s_of(&ey))) == mid && self.eps_of(&a.mul(&x, &self.t_of(&ey))) == mid
                    }
                    Handed::Right => {
                        let ex = self.eps_of(&x);
                        self.eps_of(&a.mul(&self.t_of(&ex), &y)) == mid && self.eps_of(&a.mul(&self.s_of(&ex), &y)) == mid
                    }
                }
            }),
        );
        push(
            "Δ on s(R) and t(R)",
            first_failure((0..k).map(|i| vec![i]), |p| {
                let (sr, tr) = (self.s.col(p[0]), self.t.col(p[0]));
                let one = a.one();
                match self.handed {
                    Handed::Left => self.delta_of(&sr) == self.t2.elem(&[&sr, &one]) && self.delta_of(&tr) == self.t2.elem(&[&one, &tr]),
                    Handed::Right => self.delta_of(&sr) == self.t2.elem(&[&one, &sr]) && self.delta_of(&tr) == self.t2.elem(&[&tr, &one]),
                }
            }),
        );
        AxiomReport { results }
    }

    /// `A ×_R A` inside `A ⊗_R A`.
    pub fn takeuchi_product(&self) -> crate::exactla::Subspace {
        let f = self.field();
        let a = &self.total;
        let d = self.t2.dim();
        let mut rows: Vec<SVec> = Vec::new();
        for r in 0..self.base.dim() {
            let (x0, x1) = match self.handed {
                Handed::Left => (a.rmat(&self.t.col(r)), a.rmat(&self.s.col(r))),
                Handed::Right => (a.lmat(&self.s.col(r)), a.lmat(&self.t.col(r))),
            };
            let cols: Vec<Vec<Scalar>> = (0..d)
                .map(|q| {
                    let x = self.t2.lift(&unit_vec(f, d, q));
                    let u = self.t2.project(&self.t2.on_factor(&x, 0, &x0));
                    let v = self.t2.project(&self.t2.on_factor(&x, 1, &x1));
                    crate::exactla::vec_sub(&u, &v)
                })
                .collect();
            rows.extend(Mat::from_cols(f, d, &cols).sparse_rows().into_iter().filter(|r| !r.is_empty()));
        }
        crate::exactla::sparse_kernel(f, d, rows)
    }

    /// A copy with one entry of `Δ` changed by `by`.
    pub fn perturbed(&self, row: usize, col: usize, by: &Scalar) -> Bialgebroid {
        let mut b = self.clone();
        let x = self.delta.get(row, col) + by;
        b.delta.set(row, col, x);
        b.name = format!("{} (perturbed)", self.name);
        b
    }

    /// The bialgebra `K[G]` as a bialgebroid over `K` with `Δ(g) = g ⊗ g`, `ε(g) = 1`.
    pub fn group_bialgebra(field: Field, table: &[Vec<usize>]) -> Result<Bialgebroid, crate::algcore::AlgError> {
        let total = Algebra::group_algebra(field, table)?;
        let n = total.dim();
        let base = Algebra::diagonal(field, 1);
        let one = Mat::from_cols(field, n, &[total.one()]);
        let t2 = Bialgebroid::tensor_power(Handed::Left, &total, &base, &one, &one, 2);
        let cols: Vec<Vec<Scalar>> = (0..n).map(|g| t2.elem(&[&total.e(g), &total.e(g)])).collect();
        let delta = Mat::from_cols(field, t2.dim(), &cols);
        let eps = Mat::from_fn(field, 1, n, |_, _| field.one());
        Ok(Bialgebroid::new("group bialgebra", Handed::Left, total, base, one.clone(), one, t2, delta, eps))
    }
}
