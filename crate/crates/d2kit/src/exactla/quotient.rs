use super::echelon::{Echelon, Subspace};
use super::scalar::{Field, Scalar};
use super::sparse::{sparse_to_dense, Accum, SVec};
use super::Mat;

const NONE: u32 = u32::MAX;

/// Quotient `K^n / W`. The quotient basis is the set of non-pivot columns of the
/// echelon form of `W`; the section sends a quotient basis vector to its unit vector.
#[derive(Clone, Debug)]
pub struct Quotient {
    rel: Subspace,
    free: Vec<usize>,
    free_pos: Vec<u32>,
    pivot_row: Vec<u32>,
}

impl Quotient {
    pub fn new(rel: Subspace) -> Quotient {
        let n = rel.ambient();
        let mut pivot_row = vec![NONE; n];
        for (k, &p) in rel.pivots().iter().enumerate() {
            pivot_row[p] = k as u32;
        }
        let mut free = Vec::new();
        let mut free_pos = vec![NONE; n];
        for c in 0..n {
            if pivot_row[c] == NONE {
                free_pos[c] = free.len() as u32;
                free.push(c);
            }
        }
        Quotient { rel, free, free_pos, pivot_row }
    }

    pub fn trivial(field: Field, n: usize) -> Quotient {
        Quotient::new(Subspace::zero(field, n))
    }

    pub fn field(&self) -> Field {
        self.rel.field()
    }

    pub fn dim(&self) -> usize {
        self.free.len()
    }

    pub fn ambient(&self) -> usize {
        self.rel.ambient()
    }

    pub fn relations(&self) -> &Subspace {
        &self.rel
    }

    /// Ambient index representing quotient basis vector `i`.
    pub fn rep(&self, i: usize) -> usize {
        self.free[i]
    }

    pub fn project(&self, v: &SVec) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (c, x) in v {
            let fp = self.free_pos[*c];
            if fp != NONE {
                out[fp as usize] += x;
            } else {
                let row = &self.rel.rows()[self.pivot_row[*c] as usize];
                for (c2, y) in &row[1..] {
                    out[self.free_pos[*c2] as usize] -= &(x * y);
                }
            }
        }
        out
    }

    pub fn project_dense(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.project(&super::sparse::sparse_from_dense(v))
    }

    /// Section: the representative supported on quotient basis columns.
    pub fn lift(&self, q: &[Scalar]) -> SVec {
        q.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (self.free[i], x.clone())).collect()
    }

    pub fn lift_dense(&self, q: &[Scalar]) -> Vec<Scalar> {
        sparse_to_dense(self.field(), &self.lift(q), self.ambient())
    }

    pub fn is_zero_class(&self, v: &SVec) -> bool {
        self.project(v).iter().all(|x| x.is_zero())
    }

    /// Matrix of the map induced on quotients by an ambient map given on ambient basis vectors.
    pub fn induced(&self, dst: &Quotient, f: impl Fn(usize) -> SVec) -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..self.dim()).map(|i| dst.project(&f(self.free[i]))).collect();
        Mat::from_cols(self.field(), dst.dim(), &cols)
    }
}

/// Mixed-radix index helper for `V_0 ⊗ … ⊗ V_{k-1}` with the first factor most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radix {
    pub dims: Vec<usize>,
    strides: Vec<usize>,
}

impl Radix {
    pub fn new(dims: &[usize]) -> Radix {
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        Radix { dims: dims.to_vec(), strides }
    }

    pub fn total(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn stride(&self, k: usize) -> usize {
        self.strides[k]
    }

    pub fn digit(&self, t: usize, k: usize) -> usize {
        (t / self.strides[k]) % self.dims[k]
    }

    pub fn digits(&self, t: usize) -> Vec<usize> {
        (0..self.dims.len()).map(|k| self.digit(t, k)).collect()
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }
}

/// Relations of `V_0 ⊗_{S_1} V_1 ⊗ …`: for cut `c` and each generator pair `(r, l)`
/// (right action on factor `c`, left action on factor `c+1`) all vectors
/// `… ⊗ v·g ⊗ w ⊗ … − … ⊗ v ⊗ g·w ⊗ …`.
pub fn tensor_relations(field: Field, dims: &[usize], cuts: &[Vec<(Mat, Mat)>]) -> Subspace {
    let radix = Radix::new(dims);
    let total = radix.total();
    let mut e = Echelon::new(field, total);
    for (c, gens) in cuts.iter().enumerate() {
        for (r, l) in gens {
            let rcols = r.sparse_cols();
            let lcols = l.sparse_cols();
            let (sc, sd) = (radix.stride(c), radix.stride(c + 1));
            for t in 0..total {
                let (i, j) = (radix.digit(t, c), radix.digit(t, c + 1));
                let base = t - i * sc - j * sd;
                let mut entries: Vec<(usize, Scalar)> = Vec::new();
                for (a, x) in &rcols[i] {
                    entries.push((base + a * sc + j * sd, x.clone()));
                }
                for (b, y) in &lcols[j] {
                    entries.push((base + i * sc + b * sd, -y));
                }
                let v = super::sparse::collect_sparse(entries);
                if !v.is_empty() {
                    e.insert(v);
                }
            }
        }
    }
    e.subspace()
}

/// Ambient vector of `x_0 ⊗ x_1 ⊗ …` for sparse factors.
pub fn kron_sparse(field: Field, radix: &Radix, factors: &[&SVec]) -> SVec {
    let mut cur: Vec<(usize, Scalar)> = vec![(0, field.one())];
    for (k, f) in factors.iter().enumerate() {
        let s = radix.stride(k);
        let mut next = Vec::with_capacity(cur.len() * f.len());
        for (t, x) in &cur {
            for (i, y) in f.iter() {
                next.push((t + i * s, x * y));
            }
        }
        cur = next;
    }
    super::sparse::collect_sparse(cur)
}

/// Applies factorwise linear maps to an ambient tensor vector. Factor `f` is sent by
/// `images[f].0` (images of its basis vectors) into a block of size `images[f].1`; the
/// output is the tensor product of the blocks, first block most significant.
pub fn tensor_apply(input: &Radix, v: &SVec, images: &[(&[SVec], usize)]) -> SVec {
    let k = input.dims.len();
    assert_eq!(images.len(), k, "one image table per factor");
    let mut strides = vec![1usize; k];
    for f in (0..k.saturating_sub(1)).rev() {
        strides[f] = strides[f + 1] * images[f + 1].1;
    }
    let total = strides.first().map_or(1, |s| s * images[0].1);
    let mut acc = Accum::new(total);
    for (t, x) in v {
        let mut cur: Vec<(usize, Scalar)> = vec![(0, x.clone())];
        for f in 0..k {
            let img = &images[f].0[input.digit(*t, f)];
            let mut next = Vec::with_capacity(cur.len() * img.len());
            for (o, c) in &cur {
                for (i, y) in img {
                    next.push((o + i * strides[f], c * y));
                }
            }
            cur = next;
            if cur.is_empty() {
                break;
            }
        }
        for (o, c) in cur {
            acc.add(o, &c);
        }
    }
    acc.take()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_projection_kills_relations() {
        let f = Field::Rational;
        let rel = Subspace::from_rows(f, 3, &[vec![f.int(1), f.int(-1), f.int(0)]]);
        let q = Quotient::new(rel.clone());
        assert_eq!(q.dim(), 2);
        for v in rel.basis() {
            assert!(q.project_dense(&v).iter().all(|x| x.is_zero()));
        }
        for i in 0..q.dim() {
            let mut e = vec![f.zero(); 2];
            e[i] = f.one();
            assert_eq!(q.project(&q.lift(&e)), e);
        }
    }

    #[test]
    fn radix_round_trip() {
        let r = Radix::new(&[2, 3, 4]);
        assert_eq!(r.total(), 24);
        assert_eq!(r.index(&r.digits(17)), 17);
        assert_eq!(r.digits(17), vec![1, 1, 1]);
    }
}
