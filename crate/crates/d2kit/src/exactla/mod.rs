//! Exact linear algebra over `Q` and `F_p`.
//!
//! Public operations work on dense matrices; internally, large eliminations run on
//! sparse rows so that tensor-power relation spaces stay cheap.

mod dense;
mod echelon;
mod mat;
mod quotient;
mod scalar;
mod sparse;

pub use dense::{intertwiners, kernel, member, rank, rref, solve, span_of_products, sparse_solve};
pub use echelon::{sparse_kernel, Echelon, Subspace};
pub use mat::Mat;
pub use quotient::{kron_sparse, tensor_apply, tensor_relations, Quotient, Radix};
pub use scalar::{Field, Rat, Scalar, MAX_PRIME};
pub use sparse::{axpy, collect_sparse, scale, sparse_from_dense, sparse_to_dense, Accum, SVec};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0} is not a supported prime characteristic")]
    BadField(u64),
    #[error("empty input")]
    Empty,
}

/// Unit vector `e_i` of length `n`.
pub fn unit_vec(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

/// `Σ c_i v_i` for dense vectors of length `n`.
pub fn lin_comb(field: Field, n: usize, terms: impl IntoIterator<Item = (Scalar, Vec<Scalar>)>) -> Vec<Scalar> {
    let mut out = vec![field.zero(); n];
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(&v) {
            if !x.is_zero() {
                *o += &(&c * x);
            }
        }
    }
    out
}
