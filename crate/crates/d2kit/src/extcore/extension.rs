use crate::algcore::{Algebra, AlgebraMap};
use crate::exactla::{kron_sparse, sparse_from_dense, tensor_relations, Field, Mat, Quotient, Radix, SVec, Scalar, Subspace};

use super::{Bimodule, ExtError};

/// Which ring acts on one side of a module built from `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    K,
    N,
    M,
}

impl Ring {
    pub fn tag(self) -> &'static str {
        match self {
            Ring::K => "K",
            Ring::N => "N",
            Ring::M => "M",
        }
    }
}

/// A unital algebra map `ι: N → M`.
#[derive(Clone, Debug)]
pub struct RingExtension {
    pub n: Algebra,
    pub m: Algebra,
    pub iota: AlgebraMap,
    pub proper: bool,
    n_gens: Vec<Vec<Scalar>>,
    m_gens: Vec<Vec<Scalar>>,
}

impl RingExtension {
    pub fn new(n: Algebra, m: Algebra, iota: AlgebraMap) -> Result<RingExtension, ExtError> {
        if n.field() != m.field() {
            return Err(ExtError::FieldMismatch);
        }
        iota.check(&n, &m)?;
        let proper = iota.is_injective();
        let n_gens = n.generators().into_iter().map(|g| iota.apply(&n.e(g))).collect();
        let m_gens = m.generators().into_iter().map(|g| m.e(g)).collect();
        Ok(RingExtension { n, m, iota, proper, n_gens, m_gens })
    }

    /// `M | M` with the identity map.
    pub fn identity(m: Algebra) -> RingExtension {
        let iota = AlgebraMap::new(Mat::identity(m.field(), m.dim()));
        RingExtension::new(m.clone(), m, iota).expect("identity is an algebra map")
    }

    /// `M | K·1`.
    pub fn over_scalars(m: Algebra) -> RingExtension {
        let f = m.field();
        let k = Algebra::diagonal(f, 1);
        let iota = AlgebraMap::new(Mat::from_cols(f, m.dim(), &[m.one()]));
        RingExtension::new(k, m, iota).expect("unit map is an algebra map")
    }

    /// `M | N` for `N` a subalgebra of `M` given by a subspace, in its echelon basis.
    pub fn from_subalgebra(m: Algebra, sub: &Subspace) -> Result<RingExtension, ExtError> {
        let n = Algebra::on_subspace(sub, &m.one(), |x, y| m.mul(x, y))?;
        let iota = AlgebraMap::new(sub.to_mat().transpose());
        RingExtension::new(n, m, iota)
    }

    pub fn field(&self) -> Field {
        self.m.field()
    }

    pub fn dim_m(&self) -> usize {
        self.m.dim()
    }

    pub fn dim_n(&self) -> usize {
        self.n.dim()
    }

    /// Images in `M` of algebra generators of `N`.
    pub fn n_generators(&self) -> &[Vec<Scalar>] {
        &self.n_gens
    }

    pub fn m_generators(&self) -> &[Vec<Scalar>] {
        &self.m_gens
    }

    pub fn image(&self) -> Subspace {
        self.iota.image()
    }

    fn gens(&self, r: Ring) -> &[Vec<Scalar>] {
        match r {
            Ring::K => &[],
            Ring::N => &self.n_gens,
            Ring::M => &self.m_gens,
        }
    }

    /// Left multiplications by the generators of the given ring.
    pub fn left_ops(&self, r: Ring) -> Vec<Mat> {
        self.gens(r).iter().map(|x| self.m.lmat(x)).collect()
    }

    /// Right multiplications by the generators of the given ring.
    pub fn right_ops(&self, r: Ring) -> Vec<Mat> {
        self.gens(r).iter().map(|x| self.m.rmat(x)).collect()
    }

    /// `M` as an `l`-`r`-bimodule.
    pub fn bimod_m(&self, l: Ring, r: Ring) -> Bimodule {
        Bimodule::new(self.field(), self.dim_m(), l.tag(), self.left_ops(l), r.tag(), self.right_ops(r))
    }

    /// `N` as an `N`-`N`-bimodule.
    pub fn bimod_n(&self) -> Bimodule {
        let gens: Vec<Vec<Scalar>> = self.n.generators().into_iter().map(|g| self.n.e(g)).collect();
        Bimodule::new(
            self.field(),
            self.dim_n(),
            "N",
            gens.iter().map(|x| self.n.lmat(x)).collect(),
            "N",
            gens.iter().map(|x| self.n.rmat(x)).collect(),
        )
    }

    /// `N` as a right `N`-module (left ring `K`).
    pub fn bimod_n_right(&self) -> Bimodule {
        let gens: Vec<Vec<Scalar>> = self.n.generators().into_iter().map(|g| self.n.e(g)).collect();
        Bimodule::new(self.field(), self.dim_n(), "K", Vec::new(), "N", gens.iter().map(|x| self.n.rmat(x)).collect())
    }

    /// `N` as a left `N`-module (right ring `K`).
    pub fn bimod_n_left(&self) -> Bimodule {
        let gens: Vec<Vec<Scalar>> = self.n.generators().into_iter().map(|g| self.n.e(g)).collect();
        Bimodule::new(self.field(), self.dim_n(), "N", gens.iter().map(|x| self.n.lmat(x)).collect(), "K", Vec::new())
    }
}

/// `M ⊗_N … ⊗_N M` (`k` factors) as a quotient of `M^{⊗_K k}`, first factor most significant.
#[derive(Clone, Debug)]
pub struct TensorPower {
    pub k: usize,
    pub dm: usize,
    pub radix: Radix,
    pub quot: Quotient,
}

impl TensorPower {
    pub fn new(ext: &RingExtension, k: usize) -> TensorPower {
        assert!(k >= 1, "tensor power needs a factor");
        let dm = ext.dim_m();
        let dims = vec![dm; k];
        let pairs: Vec<(Mat, Mat)> = ext.n_generators().iter().map(|g| (ext.m.rmat(g), ext.m.lmat(g))).collect();
        let cuts = vec![pairs; k - 1];
        let rel = tensor_relations(ext.field(), &dims, &cuts);
        TensorPower { k, dm, radix: Radix::new(&dims), quot: Quotient::new(rel) }
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

    /// Class of `x_0 ⊗ x_1 ⊗ …`.
    pub fn elem(&self, factors: &[&[Scalar]]) -> Vec<Scalar> {
        let sp: Vec<SVec> = factors.iter().map(|x| sparse_from_dense(x)).collect();
        let refs: Vec<&SVec> = sp.iter().collect();
        self.project(&kron_sparse(self.field(), &self.radix, &refs))
    }

    /// Class of `e_{i_0} ⊗ e_{i_1} ⊗ …`.
    pub fn basis_tensor(&self, idx: &[usize]) -> Vec<Scalar> {
        self.project(&vec![(self.radix.index(idx), self.field().one())])
    }

    /// Ambient image of a basis tensor under `mat` applied to one factor.
    fn factor_image(&self, t: usize, f: usize, cols: &[SVec]) -> SVec {
        let d = self.radix.digit(t, f);
        let base = t - d * self.radix.stride(f);
        cols[d].iter().map(|(a, x)| (base + a * self.radix.stride(f), x.clone())).collect()
    }

    /// The map induced on the quotient by `mat` on factor `f`. Only meaningful when that map
    /// respects the relations at the adjacent cuts.
    pub fn factor_map(&self, f: usize, mat: &Mat) -> Mat {
        let cols = mat.sparse_cols();
        self.quot.induced(&self.quot, |t| self.factor_image(t, f, &cols))
    }

    /// Applies `mat` on factor `f` to a quotient vector.
    pub fn apply_factor(&self, f: usize, mat: &Mat, q: &[Scalar]) -> Vec<Scalar> {
        let cols = mat.sparse_cols();
        let mut out: Vec<(usize, Scalar)> = Vec::new();
        for (t, x) in self.lift(q) {
            for (i, y) in self.factor_image(t, f, &cols) {
                out.push((i, &x * &y));
            }
        }
        self.project(&crate::exactla::collect_sparse(out))
    }

    pub fn left_mul(&self, m: &Algebra, x: &[Scalar]) -> Mat {
        self.factor_map(0, &m.lmat(x))
    }

    pub fn right_mul(&self, m: &Algebra, x: &[Scalar]) -> Mat {
        self.factor_map(self.k - 1, &m.rmat(x))
    }

    /// The tensor power as an `l`-`r`-bimodule.
    pub fn bimodule(&self, ext: &RingExtension, l: Ring, r: Ring) -> Bimodule {
        let left = ext.left_ops(l).iter().map(|x| self.factor_map(0, x)).collect();
        let right = ext.right_ops(r).iter().map(|x| self.factor_map(self.k - 1, x)).collect();
        Bimodule::new(self.field(), self.dim(), l.tag(), left, r.tag(), right)
    }

    /// Multiplication `x_0 ⊗ … ⊗ x_{k-1} ↦ x_0 ⋯ x_{k-1}` as a matrix to `M`.
    pub fn multiply_map(&self, m: &Algebra) -> Mat {
        let f = self.field();
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|i| {
                let digits = self.radix.digits(self.quot.rep(i));
                let mut acc = m.e(digits[0]);
                for d in &digits[1..] {
                    acc = m.mul(&acc, &m.e(*d));
                }
                acc
            })
            .collect();
        Mat::from_cols(f, m.dim(), &cols)
    }

    /// Section followed by projection is the identity; relations vanish; `M`-actions descend.
    pub fn verify(&self, ext: &RingExtension) -> Result<(), ExtError> {
        let f = self.field();
        for i in 0..self.dim() {
            let e = crate::exactla::unit_vec(f, self.dim(), i);
            if self.project(&self.lift(&e)) != e {
                return Err(ExtError::Verification(format!("projection∘section fails on quotient basis {i}")));
            }
        }
        for c in 0..self.k.saturating_sub(1) {
            for nb in 0..ext.dim_n() {
                let g = ext.iota.apply(&ext.n.e(nb));
                let (r, l) = (ext.m.rmat(&g), ext.m.lmat(&g));
                for t in 0..self.radix.total() {
                    let mut v = self.factor_image(t, c, &r.sparse_cols());
                    for (a, x) in self.factor_image(t, c + 1, &l.sparse_cols()) {
                        v.push((a, -x));
                    }
                    let v = crate::exactla::collect_sparse(v);
                    if !self.quot.is_zero_class(&v) {
                        return Err(ExtError::Verification(format!("relation at cut {c}, tensor {t}, N-basis {nb} survives")));
                    }
                }
            }
        }
        for (side, ops) in [(0usize, ext.left_ops(Ring::M)), (self.k - 1, ext.right_ops(Ring::M))] {
            for op in &ops {
                let cols = op.sparse_cols();
                for row in self.quot.relations().rows() {
                    let mut img: Vec<(usize, Scalar)> = Vec::new();
                    for (t, x) in row {
                        for (a, y) in self.factor_image(*t, side, &cols) {
                            img.push((a, x * &y));
                        }
                    }
                    if !self.quot.is_zero_class(&crate::exactla::collect_sparse(img)) {
                        return Err(ExtError::Verification(format!("M-action on factor {side} does not preserve relations")));
                    }
                }
            }
        }
        Ok(())
    }
}
