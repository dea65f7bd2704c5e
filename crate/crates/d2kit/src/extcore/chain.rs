use crate::algcore::Algebra;
use crate::exactla::{collect_sparse, intertwiners, kron_sparse, Echelon, Field, Mat, Scalar, Subspace};

use super::{ExtError, RingExtension, TensorPower};

/// Basis matrices of a subspace of flattened `n × n` matrices.
pub fn space_mats(field: Field, rows: usize, cols: usize, s: &Subspace) -> Vec<Mat> {
    (0..s.dim()).map(|i| Mat::from_flat(field, rows, cols, s.basis_vec(i))).collect()
}

/// Matrix, in the basis of `s`, of a linear operator preserving `s`.
pub fn restrict_op(s: &Subspace, op: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Mat {
    let cols: Vec<Vec<Scalar>> = (0..s.dim()).map(|i| s.coords(&op(&s.basis_vec(i))).expect("operator preserves the subspace")).collect();
    Mat::from_cols(s.field(), s.dim(), &cols)
}

/// Indices of basis matrices that generate the (unital) matrix algebra they span.
pub fn matrix_generators(field: Field, n: usize, basis: &[Mat]) -> Vec<usize> {
    let target = basis.len();
    let mut gens: Vec<usize> = Vec::new();
    let closure = |gens: &[usize]| -> usize {
        let mut e = Echelon::new(field, n * n);
        let id = Mat::identity(field, n);
        e.insert(id.sparse_flat());
        let mut queue = vec![id];
        while let Some(v) = queue.pop() {
            for &g in gens {
                let w = v.mul(&basis[g]);
                if e.insert(w.sparse_flat()) {
                    queue.push(w);
                }
            }
        }
        e.rank()
    };
    let mut span = closure(&gens);
    let mut seen = Echelon::new(field, n * n);
    seen.insert(Mat::identity(field, n).sparse_flat());
    for i in 0..basis.len() {
        if span >= target {
            break;
        }
        if !seen.insert(basis[i].sparse_flat()) {
            continue;
        }
        gens.push(i);
        let d = closure(&gens);
        if d > span {
            span = d;
        } else {
            gens.pop();
        }
    }
    gens
}

/// `R = C_M(N)`, `A = End_{N-N}(M)`, `B = (M ⊗_N M)^N` and the tensor square.
#[derive(Clone, Debug)]
pub struct CentralizerChain {
    pub r_space: Subspace,
    pub r: Algebra,
    pub a_space: Subspace,
    pub a_mats: Vec<Mat>,
    pub a: Algebra,
    pub t2: TensorPower,
    pub b_space: Subspace,
    pub b: Algebra,
}

impl CentralizerChain {
    pub fn new(ext: &RingExtension) -> Result<CentralizerChain, ExtError> {
        let f = ext.field();
        let m = &ext.m;
        let dm = ext.dim_m();
        let r_space = m.centralizer(ext.n_generators());
        let r = Algebra::on_subspace(&r_space, &m.one(), |x, y| m.mul(x, y))?;
        let lops = ext.left_ops(super::Ring::N);
        let rops = ext.right_ops(super::Ring::N);
        let pairs: Vec<(&Mat, &Mat)> = lops.iter().map(|x| (x, x)).chain(rops.iter().map(|x| (x, x))).collect();
        let a_space = intertwiners(f, dm, dm, &pairs);
        let a_mats = space_mats(f, dm, dm, &a_space);
        let a = Algebra::on_subspace(&a_space, Mat::identity(f, dm).flat(), |x, y| {
            Mat::from_flat(f, dm, dm, x.to_vec()).mul(&Mat::from_flat(f, dm, dm, y.to_vec())).flat().to_vec()
        })?;
        let t2 = TensorPower::new(ext, 2);
        let mut rows: Vec<crate::exactla::SVec> = Vec::new();
        for g in ext.n_generators() {
            let d = t2.left_mul(m, g).sub(&t2.right_mul(m, g));
            rows.extend(d.sparse_rows().into_iter().filter(|r| !r.is_empty()));
        }
        let b_space = crate::exactla::sparse_kernel(f, t2.dim(), rows);
        let one_one = t2.elem(&[&m.one(), &m.one()]);
        let b = Algebra::on_subspace(&b_space, &one_one, |x, y| b_product_raw(m, &t2, x, y))?;
        Ok(CentralizerChain { r_space, r, a_space, a_mats, a, t2, b_space, b })
    }

    pub fn field(&self) -> Field {
        self.r_space.field()
    }

    pub fn dim_m(&self) -> usize {
        self.t2.dm
    }

    /// `R`-basis element as an element of `M`.
    pub fn r_elem(&self, i: usize) -> Vec<Scalar> {
        self.r_space.basis_vec(i)
    }

    /// Algebra generators of `R` as elements of `M`.
    pub fn r_generators(&self) -> Vec<Vec<Scalar>> {
        self.r.generators().into_iter().map(|i| self.r_elem(i)).collect()
    }

    pub fn r_embed(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.r_space.element(c)
    }

    pub fn a_embed(&self, c: &[Scalar]) -> Mat {
        Mat::from_flat(self.field(), self.dim_m(), self.dim_m(), self.a_space.element(c))
    }

    pub fn a_coords(&self, x: &Mat) -> Option<Vec<Scalar>> {
        self.a_space.coords(x.flat())
    }

    /// `B`-coordinates to `M ⊗_N M`-coordinates.
    pub fn b_embed(&self, c: &[Scalar]) -> Vec<Scalar> {
        self.b_space.element(c)
    }

    pub fn b_coords(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        self.b_space.coords(x)
    }

    /// `b b' = b'^1 b^1 ⊗ b^2 b'^2` on `M ⊗_N M`-coordinates.
    pub fn b_product(&self, m: &Algebra, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        b_product_raw(m, &self.t2, x, y)
    }

    /// `λ(r), ρ(r) ∈ A`; `R ≅ End_{N-M}(M)`; `B`'s product independent of representatives.
    pub fn verify(&self, ext: &RingExtension) -> Result<(), ExtError> {
        let m = &ext.m;
        let f = self.field();
        for i in 0..self.r_space.dim() {
            let r = self.r_elem(i);
            if self.a_coords(&m.lmat(&r)).is_none() || self.a_coords(&m.rmat(&r)).is_none() {
                return Err(ExtError::Verification(format!("λ or ρ of R-basis {i} is not in A")));
            }
        }
        let dm = self.dim_m();
        let lops = ext.left_ops(super::Ring::N);
        let rops = ext.right_ops(super::Ring::M);
        let pairs: Vec<(&Mat, &Mat)> = lops.iter().map(|x| (x, x)).chain(rops.iter().map(|x| (x, x))).collect();
        let end_nm = intertwiners(f, dm, dm, &pairs);
        let lam_r = Subspace::from_rows(f, dm * dm, &(0..self.r_space.dim()).map(|i| m.lmat(&self.r_elem(i)).flat().to_vec()).collect::<Vec<_>>());
        if end_nm != lam_r {
            return Err(ExtError::Verification("r ↦ λ(r) is not onto End_{N-M}(M)".into()));
        }
        // b'^1 x^1 ⊗ x^2 b'^2 with x a relation and b' ∈ B must vanish
        for bi in 0..self.b_space.dim() {
            let bl = self.t2.lift(&self.b_embed(&crate::exactla::unit_vec(f, self.b_space.dim(), bi)));
            for row in self.t2.quot.relations().rows() {
                let p = ambient_b_product(m, &self.t2, row, &bl);
                if !self.t2.quot.is_zero_class(&p) {
                    return Err(ExtError::Verification(format!("B product depends on representatives (B-basis {bi})")));
                }
                let p = ambient_b_product(m, &self.t2, &bl, row);
                if !self.t2.quot.is_zero_class(&p) {
                    return Err(ExtError::Verification(format!("B product depends on representatives (B-basis {bi})")));
                }
            }
        }
        Ok(())
    }
}

fn ambient_b_product(m: &Algebra, t2: &TensorPower, x: &crate::exactla::SVec, y: &crate::exactla::SVec) -> crate::exactla::SVec {
    let f = m.field();
    let dm = t2.dm;
    let mut out: Vec<(usize, Scalar)> = Vec::new();
    for (s, c) in x {
        let (i, j) = (s / dm, s % dm);
        for (t, d) in y {
            let (k, l) = (t / dm, t % dm);
            let left = m.basis_product(k, i);
            let right = m.basis_product(j, l);
            let cd = c * d;
            for (p, v) in kron_sparse(f, &t2.radix, &[left, right]) {
                out.push((p, &cd * &v));
            }
        }
    }
    collect_sparse(out)
}

fn b_product_raw(m: &Algebra, t2: &TensorPower, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let p = ambient_b_product(m, t2, &t2.lift(x), &t2.lift(y));
    t2.project(&p)
}
