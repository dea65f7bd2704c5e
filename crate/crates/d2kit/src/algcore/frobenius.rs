use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{
    intertwiners, lin_comb, rank, solve, sparse_solve, sparse_to_dense, Field, Mat, SVec, Scalar,
};
use crate::extcore::{similar_summand, Bimodule};

use super::{AlgError, Algebra};

/// Linear form on an algebra, as its values on the basis.
pub fn eval_form(phi: &[Scalar], x: &[Scalar]) -> Scalar {
    let f = phi.first().map(|s| s.field()).unwrap_or(Field::Rational);
    let mut s = f.zero();
    for (a, b) in phi.iter().zip(x) {
        if !a.is_zero() && !b.is_zero() {
            s += &(a * b);
        }
    }
    s
}

/// Frobenius coordinates `(φ, e_i, f_i)` with `Σ φ(r e_i) f_i = r = Σ e_i φ(f_i r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusCoordinates {
    pub phi: Vec<Scalar>,
    pub left: Vec<Vec<Scalar>>,
    pub right: Vec<Vec<Scalar>>,
}

impl FrobeniusCoordinates {
    /// Dual bases for `φ` taking `e_i` to be the standard basis; `None` when `φ` is degenerate.
    pub fn from_form(a: &Algebra, phi: &[Scalar]) -> Option<FrobeniusCoordinates> {
        let n = a.dim();
        let g = gram(a, phi);
        let inv = g.transpose().inverse()?;
        let left = (0..n).map(|i| a.e(i)).collect();
        let right = (0..n).map(|i| inv.col(i)).collect();
        Some(FrobeniusCoordinates { phi: phi.to_vec(), left, right })
    }

    pub fn verify(&self, a: &Algebra) -> Result<(), AlgError> {
        let n = a.dim();
        for k in 0..n {
            let r = a.e(k);
            let s1 = lin_comb(a.field(), n, self.left.iter().zip(&self.right).map(|(e, f)| (eval_form(&self.phi, &a.mul(&r, e)), f.clone())));
            if s1 != r {
                return Err(AlgError::Frobenius(format!("Σ φ(r e_i) f_i ≠ r at basis element {k}")));
            }
            let s2 = lin_comb(a.field(), n, self.left.iter().zip(&self.right).map(|(e, f)| (eval_form(&self.phi, &a.mul(f, &r)), e.clone())));
            if s2 != r {
                return Err(AlgError::Frobenius(format!("Σ e_i φ(f_i r) ≠ r at basis element {k}")));
            }
        }
        Ok(())
    }

    /// `Σ e_i f_i`.
    pub fn index(&self, a: &Algebra) -> Vec<Scalar> {
        let mut s = a.zero();
        for (e, f) in self.left.iter().zip(&self.right) {
            s = crate::exactla::vec_add(&s, &a.mul(e, f));
        }
        s
    }

    pub fn is_index_one(&self, a: &Algebra) -> bool {
        self.index(a) == a.one()
    }

    /// `Σ e_i ⊗ f_i` in `A ⊗_K A` (index `i·n + j`).
    pub fn tensor(&self, a: &Algebra) -> Vec<Scalar> {
        let n = a.dim();
        let mut t = vec![a.field().zero(); n * n];
        for (e, f) in self.left.iter().zip(&self.right) {
            for (i, x) in e.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (j, y) in f.iter().enumerate() {
                    if !y.is_zero() {
                        t[i * n + j] += &(x * y);
                    }
                }
            }
        }
        t
    }
}

/// Gram matrix `G[i][j] = φ(e_i e_j)`.
pub fn gram(a: &Algebra, phi: &[Scalar]) -> Mat {
    let n = a.dim();
    Mat::from_fn(a.field(), n, n, |i, j| eval_form(phi, &sparse_to_dense(a.field(), a.basis_product(i, j), n)))
}

/// Left and right nondegeneracy of a form, decided separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Nondegeneracy {
    pub left: bool,
    pub right: bool,
}

pub fn nondegenerate_form_check(a: &Algebra, phi: &[Scalar]) -> Nondegeneracy {
    let n = a.dim();
    let g = gram(a, phi);
    // left: x ↦ φ(x·−) injective, i.e. the rows x^T G are independent
    let left = rank(&g.transpose()) == n;
    // right: y ↦ φ(−·y) injective, i.e. G y = 0 only for y = 0
    let right = crate::exactla::kernel(&g).dim() == 0;
    assert_eq!(left, right, "left and right nondegeneracy disagree");
    Nondegeneracy { left, right }
}

/// Outcome of the Frobenius-form search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusOutcome {
    Found(FrobeniusCoordinates),
    /// Certified absence: the regular module and its dual are not even H-equivalent.
    NotFrobenius,
    /// Search failed although no obstruction was found.
    Undecided,
}

pub const RANDOM_CANDIDATES: usize = 64;

/// Candidate forms: coordinate forms, the all-ones form, seeded random forms, and the
/// whole form space for tiny prime fields in dimension at most 4.
pub fn form_candidates(field: Field, n: usize, seed: u64) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = (0..n).map(|k| crate::exactla::unit_vec(field, n, k)).collect();
    out.push(vec![field.one(); n]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_CANDIDATES {
        out.push((0..n).map(|_| random_scalar(field, &mut rng)).collect());
    }
    if let Field::Prime(p) = field {
        if n <= 4 && p.pow(n as u32) <= 4096 {
            let total = p.pow(n as u32);
            for code in 0..total {
                let mut c = code;
                out.push(
                    (0..n)
                        .map(|_| {
                            let v = c % p;
                            c /= p;
                            field.int(v as i64)
                        })
                        .collect(),
                );
            }
        }
    }
    out
}

pub fn random_scalar(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    match field {
        Field::Rational => field.int(rng.gen_range(-5..=5)),
        Field::Prime(p) => field.int(rng.gen_range(0..p) as i64),
    }
}

/// The regular right module `A_A` as a bimodule over `(K, A)` on algebra generators.
pub fn regular_right(a: &Algebra) -> Bimodule {
    let gens = a.generators();
    Bimodule::new(a.field(), a.dim(), "K", Vec::new(), "A", gens.iter().map(|&g| a.rmat(&a.e(g))).collect())
}

/// `Hom_K(A, K)` with right action `(φ·a)(x) = φ(a x)`.
pub fn dual_right(a: &Algebra) -> Bimodule {
    let gens = a.generators();
    Bimodule::new(a.field(), a.dim(), "K", Vec::new(), "A", gens.iter().map(|&g| a.lmat(&a.e(g)).transpose()).collect())
}

pub fn frobenius_coordinates(a: &Algebra, seed: u64) -> FrobeniusOutcome {
    for phi in form_candidates(a.field(), a.dim(), seed) {
        if let Some(c) = FrobeniusCoordinates::from_form(a, &phi) {
            if c.verify(a).is_ok() {
                return FrobeniusOutcome::Found(c);
            }
        }
    }
    let (x, y) = (regular_right(a), dual_right(a));
    if similar_summand(&x, &y).is_none() || similar_summand(&y, &x).is_none() {
        FrobeniusOutcome::NotFrobenius
    } else {
        FrobeniusOutcome::Undecided
    }
}

/// Separability idempotent `e = Σ x⊗y` (index `i·n + j`) with `a·e = e·a` and `μ(e) = 1`.
pub fn separability_idempotent(a: &Algebra) -> Option<Vec<Scalar>> {
    let n = a.dim();
    let f = a.field();
    let mut rows: Vec<(SVec, Scalar)> = Vec::new();
    for g in a.generators() {
        let l = a.lmat(&a.e(g));
        let r = a.rmat(&a.e(g));
        // (L_g ⊗ 1 − 1 ⊗ R_g) e = 0
        let op = l.kron(&Mat::identity(f, n)).sub(&Mat::identity(f, n).kron(&r));
        for row in op.sparse_rows() {
            if !row.is_empty() {
                rows.push((row, f.zero()));
            }
        }
    }
    for k in 0..n {
        let mut row = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if let Some((_, c)) = a.basis_product(i, j).iter().find(|(kk, _)| *kk == k) {
                    row.push((i * n + j, c.clone()));
                }
            }
        }
        rows.push((row, a.one()[k].clone()));
    }
    let e = sparse_solve(f, n * n, rows)?;
    debug_assert!(is_separability_idempotent(a, &e));
    Some(e)
}

pub fn is_separability_idempotent(a: &Algebra, e: &[Scalar]) -> bool {
    let n = a.dim();
    let f = a.field();
    let mut mu = a.zero();
    for i in 0..n {
        for j in 0..n {
            let c = &e[i * n + j];
            if !c.is_zero() {
                for (k, x) in a.basis_product(i, j) {
                    mu[*k] += &(c * x);
                }
            }
        }
    }
    if mu != a.one() {
        return false;
    }
    (0..n).all(|g| {
        let l = a.lmat(&a.e(g)).kron(&Mat::identity(f, n));
        let r = Mat::identity(f, n).kron(&a.rmat(&a.e(g)));
        l.mul_vec(e) == r.mul_vec(e)
    })
}

fn matrix_size(a: &Algebra) -> Option<usize> {
    let d = a.dim();
    let n = (1..=d).find(|n| n * n == d)?;
    if *a == Algebra::matrix_algebra(a.field(), n) {
        Some(n)
    } else {
        None
    }
}

fn is_diagonal_basis(a: &Algebra) -> bool {
    let n = a.dim();
    a.one() == vec![a.field().one(); n]
        && (0..n).all(|i| (0..n).all(|j| *a.basis_product(i, j) == if i == j { vec![(i, a.field().one())] } else { Vec::new() }))
}

/// Preset index-one coordinates for `K^n` and matrix algebras.
pub fn preset_index_one(a: &Algebra) -> Option<FrobeniusCoordinates> {
    let f = a.field();
    let d = a.dim();
    if is_diagonal_basis(a) {
        let basis: Vec<Vec<Scalar>> = (0..d).map(|i| a.e(i)).collect();
        return Some(FrobeniusCoordinates { phi: vec![f.one(); d], left: basis.clone(), right: basis });
    }
    let n = matrix_size(a)?;
    let unit = |i: usize, j: usize| a.e(i * n + j);
    let p = f.characteristic();
    if p == 0 || !(n as u64).is_multiple_of(p) {
        let nn = f.int(n as i64);
        let inv = nn.inv()?;
        let mut phi = vec![f.zero(); d];
        for i in 0..n {
            phi[i * n + i] = nn.clone();
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in 0..n {
            for j in 0..n {
                left.push(unit(i, j));
                right.push(crate::exactla::vec_scale(&unit(j, i), &inv));
            }
        }
        return Some(FrobeniusCoordinates { phi, left, right });
    }
    if p >= 3 {
        // D = diag(2, 1, …, 1); φ(X) = tr(D^{-1} X); dual bases e_ij, D e_ji
        let dvals: Vec<Scalar> = (0..n).map(|i| if i == 0 { f.int(2) } else { f.one() }).collect();
        let mut phi = vec![f.zero(); d];
        for i in 0..n {
            phi[i * n + i] = dvals[i].inv()?;
        }
        let mut left = Vec::new();
        let mut right = Vec::new();
        for i in 0..n {
            for j in 0..n {
                left.push(unit(i, j));
                right.push(crate::exactla::vec_scale(&unit(j, i), &dvals[j]));
            }
        }
        return Some(FrobeniusCoordinates { phi, left, right });
    }
    if p == 2 && n == 2 {
        return Some(m2_char2_coordinates(f));
    }
    None
}

/// `φ(X) = X_11 + X_12 + X_21` on `M_2` in characteristic 2, with its six-term dual basis tensor.
pub fn m2_char2_coordinates(f: Field) -> FrobeniusCoordinates {
    let e = |i: usize, j: usize| crate::exactla::unit_vec(f, 4, (i - 1) * 2 + (j - 1));
    let pairs = [((1, 1), (2, 1)), ((1, 2), (1, 1)), ((1, 2), (2, 1)), ((2, 2), (1, 2)), ((2, 2), (2, 2)), ((2, 1), (2, 2))];
    FrobeniusCoordinates {
        phi: vec![f.one(), f.one(), f.one(), f.zero()],
        left: pairs.iter().map(|((a, b), _)| e(*a, *b)).collect(),
        right: pairs.iter().map(|(_, (c, d))| e(*c, *d)).collect(),
    }
}

/// Index-one Frobenius coordinates of a separable algebra: presets first, then a search
/// over nondegenerate forms corrected by an invertible `d` with `Σ e_i d f_i = 1`.
pub fn index_one_coordinates(a: &Algebra, seed: u64) -> Result<FrobeniusCoordinates, AlgError> {
    if separability_idempotent(a).is_none() {
        return Err(AlgError::NotSeparable);
    }
    if let Some(c) = preset_index_one(a) {
        if c.verify(a).is_ok() && c.is_index_one(a) {
            return Ok(c);
        }
    }
    let n = a.dim();
    let f = a.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1d);
    for phi in form_candidates(f, n, seed) {
        let Some(c) = FrobeniusCoordinates::from_form(a, &phi) else { continue };
        // d ↦ Σ e_i d f_i
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|k| {
                let dk = a.e(k);
                let mut s = a.zero();
                for (e, fi) in c.left.iter().zip(&c.right) {
                    s = crate::exactla::vec_add(&s, &a.mul3(e, &dk, fi));
                }
                s
            })
            .collect();
        let m = Mat::from_cols(f, n, &cols);
        let Ok(Some(d0)) = solve(&m, &a.one()) else { continue };
        let ker = crate::exactla::kernel(&m);
        for attempt in 0..16 {
            let mut d = d0.clone();
            if attempt > 0 {
                for b in ker.basis() {
                    let c = random_scalar(f, &mut rng);
                    d = crate::exactla::vec_add(&d, &crate::exactla::vec_scale(&b, &c));
                }
            }
            let Some(dinv) = a.inverse(&d) else { continue };
            let phi2: Vec<Scalar> = (0..n).map(|k| eval_form(&phi, &a.mul(&a.e(k), &dinv))).collect();
            let cand = FrobeniusCoordinates {
                phi: phi2,
                left: c.left.iter().map(|e| a.mul(e, &d)).collect(),
                right: c.right.clone(),
            };
            if cand.verify(a).is_ok() && cand.is_index_one(a) {
                return Ok(cand);
            }
        }
    }
    Err(AlgError::IndexOneNotFound)
}

/// A right module over an algebra, with the action matrix of every basis element.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub dim: usize,
    pub action: Vec<Mat>,
}

impl RightModule {
    pub fn regular(a: &Algebra) -> RightModule {
        RightModule { dim: a.dim(), action: (0..a.dim()).map(|k| a.rmat(&a.e(k))).collect() }
    }
}

/// The identification `Hom_A(V, A) ≅ Hom_K(V, K)`, `f ↦ φ∘f`, inverse `g ↦ Σ g(−e_i) f_i`.
#[derive(Clone, Debug)]
pub struct PhiDuality {
    /// Basis of `Hom_A(V, A)` as `dim A × dim V` matrices.
    pub module_homs: Vec<Mat>,
    /// Images `φ∘f` as row vectors.
    pub forms: Vec<Vec<Scalar>>,
    pub hom_k_dim: usize,
}

pub fn dualize_via_phi(a: &Algebra, v: &RightModule, c: &FrobeniusCoordinates) -> Result<PhiDuality, AlgError> {
    let f = a.field();
    let (dv, da) = (v.dim, a.dim());
    let pairs_owned: Vec<(Mat, Mat)> = (0..da).map(|k| (v.action[k].clone(), a.rmat(&a.e(k)))).collect();
    let pairs: Vec<(&Mat, &Mat)> = pairs_owned.iter().map(|(x, y)| (x, y)).collect();
    let homs = intertwiners(f, dv, da, &pairs);
    let to_form = |m: &Mat| -> Vec<Scalar> { (0..dv).map(|j| eval_form(&c.phi, &m.col(j))).collect() };
    let from_form = |g: &[Scalar]| -> Mat {
        let cols: Vec<Vec<Scalar>> = (0..dv)
            .map(|j| {
                let vj = crate::exactla::unit_vec(f, dv, j);
                lin_comb(
                    f,
                    da,
                    c.left.iter().zip(&c.right).map(|(e, fi)| {
                        let act = lin_comb(f, dv, e.iter().enumerate().map(|(k, x)| (x.clone(), v.action[k].mul_vec(&vj))));
                        (eval_form(g, &act), fi.clone())
                    }),
                )
            })
            .collect();
        Mat::from_cols(f, da, &cols)
    };
    let module_homs: Vec<Mat> = (0..homs.dim()).map(|i| Mat::from_flat(f, da, dv, homs.basis_vec(i))).collect();
    for (i, m) in module_homs.iter().enumerate() {
        if from_form(&to_form(m)) != *m {
            return Err(AlgError::Frobenius(format!("g ↦ Σ g(−e_i)f_i does not invert φ∘− on hom {i}")));
        }
    }
    for j in 0..dv {
        let g = crate::exactla::unit_vec(f, dv, j);
        let m = from_form(&g);
        if !homs.contains(m.flat()) {
            return Err(AlgError::Frobenius(format!("Σ g(−e_i)f_i is not A-linear for form {j}")));
        }
        if to_form(&m) != g {
            return Err(AlgError::Frobenius(format!("φ∘− does not invert Σ g(−e_i)f_i on form {j}")));
        }
    }
    let forms = module_homs.iter().map(to_form).collect();
    Ok(PhiDuality { module_homs, forms, hom_k_dim: dv })
}
