use crate::exactla::{kron_sparse, sparse_from_dense, tensor_relations, Field, Mat, Quotient, Radix, SVec, Scalar};

/// `V ⊗_R W` for a right `R`-module `V` and a left `R`-module `W`, given by the actions of
/// generators of `R` (pairs: right action on `V`, left action on `W`).
#[derive(Clone, Debug)]
pub struct TensorOver {
    pub radix: Radix,
    pub quot: Quotient,
}

impl TensorOver {
    pub fn new(field: Field, dv: usize, dw: usize, pairs: Vec<(Mat, Mat)>) -> TensorOver {
        let rel = tensor_relations(field, &[dv, dw], &[pairs]);
        TensorOver { radix: Radix::new(&[dv, dw]), quot: Quotient::new(rel) }
    }

    pub fn field(&self) -> Field {
        self.quot.field()
    }

    pub fn dim(&self) -> usize {
        self.quot.dim()
    }

    /// `(i, j)` such that quotient basis vector `q` is the class of `v_i ⊗ w_j`.
    pub fn rep(&self, q: usize) -> (usize, usize) {
        let t = self.quot.rep(q);
        (self.radix.digit(t, 0), self.radix.digit(t, 1))
    }

    pub fn elem(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let (a, b) = (sparse_from_dense(v), sparse_from_dense(w));
        self.quot.project(&kron_sparse(self.field(), &self.radix, &[&a, &b]))
    }

    pub fn project(&self, v: &SVec) -> Vec<Scalar> {
        self.quot.project(v)
    }

    /// Matrix of the linear map defined on pure basis tensors `v_i ⊗ w_j ↦ f(i, j)`,
    /// after checking that it kills the relations.
    pub fn induced_map(&self, target_dim: usize, f: impl Fn(usize, usize) -> Vec<Scalar>) -> Option<Mat> {
        let field = self.field();
        let total = self.radix.total();
        let images: Vec<Vec<Scalar>> = (0..total).map(|t| f(self.radix.digit(t, 0), self.radix.digit(t, 1))).collect();
        for row in self.quot.relations().rows() {
            let mut acc = vec![field.zero(); target_dim];
            for (t, c) in row {
                for (k, x) in images[*t].iter().enumerate() {
                    if !x.is_zero() {
                        acc[k] += &(c * x);
                    }
                }
            }
            if acc.iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|q| images[self.quot.rep(q)].clone()).collect();
        Some(Mat::from_cols(field, target_dim, &cols))
    }
}
