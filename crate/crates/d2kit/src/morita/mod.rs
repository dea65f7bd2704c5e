//! The Morita context between the step-three centralizer `C` and `R` for a depth-two
//! extension, with every map checked against its explicit inverse.

use crate::exactla::{collect_sparse, intertwiners, kron_sparse, sparse_from_dense, unit_vec, vec_add, Mat, Scalar, Subspace};
use crate::extcore::{
    check_inverse, restrict_op, similar_summand, space_mats, Bimodule, CentralizerChain, ExtError, IsoCheck, Quasibasis,
    Ring, RingExtension, Side, TensorOver,
};

/// `C = End_N(M ⊗_N M)_M` as matrices on `M ⊗_N M`.
pub fn step_three_centralizer(ext: &RingExtension, chain: &CentralizerChain) -> Subspace {
    let x = chain.t2.bimodule(ext, Ring::N, Ring::M);
    crate::extcore::hom_bimodule(&x, &x).expect("same rings")
}

/// `C' = End_M(M ⊗_N M)_N`.
pub fn step_three_centralizer_right(ext: &RingExtension, chain: &CentralizerChain) -> Subspace {
    let x = chain.t2.bimodule(ext, Ring::M, Ring::N);
    crate::extcore::hom_bimodule(&x, &x).expect("same rings")
}

/// Shared module structures over `R`.
struct RActions {
    /// Generators of `R` as `(R-coordinates, element of M)`.
    gens: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

impl RActions {
    fn new(chain: &CentralizerChain) -> RActions {
        let nr = chain.r.dim();
        let f = chain.field();
        let gens = chain.r.generators().into_iter().map(|i| (unit_vec(f, nr, i), chain.r_elem(i))).collect();
        RActions { gens }
    }

    /// `r·α = λ(r)∘α` on `A`-coordinates.
    fn a_left(&self, m: &crate::algcore::Algebra, chain: &CentralizerChain, r: &[Scalar]) -> Mat {
        let f = chain.field();
        let dm = chain.dim_m();
        let l = m.lmat(r);
        restrict_op(&chain.a_space, |v| l.mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec())
    }

    /// `α·r = ρ(r)∘α` on `A`-coordinates.
    fn a_right(&self, m: &crate::algcore::Algebra, chain: &CentralizerChain, r: &[Scalar]) -> Mat {
        let f = chain.field();
        let dm = chain.dim_m();
        let rr = m.rmat(r);
        restrict_op(&chain.a_space, |v| rr.mul(&Mat::from_flat(f, dm, dm, v.to_vec())).flat().to_vec())
    }

    /// `b·r = b^1 ⊗ b^2 r` on `B`-coordinates.
    fn b_right(&self, m: &crate::algcore::Algebra, chain: &CentralizerChain, r: &[Scalar]) -> Mat {
        let op = chain.t2.right_mul(m, r);
        restrict_op(&chain.b_space, |v| op.mul_vec(v))
    }

    /// `r·b = r b^1 ⊗ b^2` on `B`-coordinates.
    fn b_left(&self, m: &crate::algcore::Algebra, chain: &CentralizerChain, r: &[Scalar]) -> Mat {
        let op = chain.t2.left_mul(m, r);
        restrict_op(&chain.b_space, |v| op.mul_vec(v))
    }
}

/// `μ(α ⊗ id)(x) = Σ α(x^1) x^2` for `x ∈ M ⊗_N M`.
fn mu_alpha_id(m: &crate::algcore::Algebra, chain: &CentralizerChain, alpha: &Mat, x: &[Scalar]) -> Vec<Scalar> {
    let dm = chain.dim_m();
    let mut acc = m.zero();
    for (s, c) in chain.t2.lift(x) {
        acc = vec_add(&acc, &crate::exactla::vec_scale(&m.mul(&alpha.col(s / dm), &m.e(s % dm)), &c));
    }
    acc
}

/// `μ(id ⊗ α)(x) = Σ x^1 α(x^2)`.
fn mu_id_alpha(m: &crate::algcore::Algebra, chain: &CentralizerChain, alpha: &Mat, x: &[Scalar]) -> Vec<Scalar> {
    let dm = chain.dim_m();
    let mut acc = m.zero();
    for (s, c) in chain.t2.lift(x) {
        acc = vec_add(&acc, &crate::exactla::vec_scale(&m.mul(&m.e(s / dm), &alpha.col(s % dm)), &c));
    }
    acc
}

fn r_coords(chain: &CentralizerChain, x: &[Scalar], what: &str) -> Result<Vec<Scalar>, ExtError> {
    chain.r_space.coords(x).ok_or_else(|| ExtError::Verification(format!("{what} is not in R")))
}

fn b_coords(chain: &CentralizerChain, x: &[Scalar], what: &str) -> Result<Vec<Scalar>, ExtError> {
    chain.b_coords(x).ok_or_else(|| ExtError::Verification(format!("{what} is not in B")))
}

fn a_coords(chain: &CentralizerChain, x: &Mat, what: &str) -> Result<Vec<Scalar>, ExtError> {
    chain.a_coords(x).ok_or_else(|| ExtError::Verification(format!("{what} is not in A")))
}

fn space_coords(s: &Subspace, x: &[Scalar], what: &str) -> Result<Vec<Scalar>, ExtError> {
    s.coords(x).ok_or_else(|| ExtError::Verification(format!("{what} leaves its space")))
}

/// `B ⊗_R A` and the pairing `μ_R: B ⊗_R A → C`, `b ⊗ α ↦ (m ⊗ m' ↦ b α(m) m')`.
pub struct MuR {
    pub c_space: Subspace,
    pub ba: TensorOver,
    /// `dim C × dim(B ⊗_R A)`.
    pub matrix: Mat,
}

impl MuR {
    pub fn new(ext: &RingExtension, chain: &CentralizerChain) -> Result<MuR, ExtError> {
        let f = ext.field();
        let m = &ext.m;
        let ra = RActions::new(chain);
        let (nb, na, dt) = (chain.b_space.dim(), chain.a_space.dim(), chain.t2.dim());
        let pairs = ra.gens.iter().map(|(_, r)| (ra.b_right(m, chain, r), ra.a_left(m, chain, r))).collect();
        let ba = TensorOver::new(f, nb, na, pairs);
        let c_space = step_three_centralizer(ext, chain);
        let bs: Vec<Vec<Scalar>> = (0..nb).map(|p| chain.b_embed(&unit_vec(f, nb, p))).collect();
        let bad = std::cell::Cell::new(None);
        let matrix = ba
            .induced_map(c_space.dim(), |p, q| {
                let alpha = &chain.a_mats[q];
                let cols: Vec<Vec<Scalar>> = (0..dt)
                    .map(|j| {
                        let t = chain.t2.quot.rep(j);
                        let x = m.mul(&alpha.col(t / ext.dim_m()), &m.e(t % ext.dim_m()));
                        chain.t2.right_mul(m, &x).mul_vec(&bs[p])
                    })
                    .collect();
                let c = Mat::from_cols(f, dt, &cols);
                c_space.coords(c.flat()).unwrap_or_else(|| {
                    bad.set(Some((p, q)));
                    vec![f.zero(); c_space.dim()]
                })
            })
            .ok_or_else(|| ExtError::Verification("μ_R is not balanced over R".into()))?;
        if let Some((p, q)) = bad.get() {
            return Err(ExtError::Verification(format!("μ_R(b_{p} ⊗ α_{q}) is not in C")));
        }
        Ok(MuR { c_space, ba, matrix })
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.c_space.dim()
    }
}

/// The verified Morita context of a left depth-two extension.
pub struct MoritaContext {
    pub dim_c: usize,
    pub dim_r: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub mu_r: MuR,
    pub checks: Vec<IsoCheck>,
    /// `C → End B_R` is a bijective algebra map.
    pub c_end_b: bool,
    /// `C → End _R A` is bijective and reverses products.
    pub c_end_a_anti: bool,
    /// Morita associativity and the action compatibilities hold on basis triples.
    pub associativity: bool,
    /// `ψ(c·b·r) = c·ψ(b)·r` on basis elements.
    pub psi_bimodule_map: bool,
    pub left: Quasibasis,
}

/// Builds `μ_R`, `ψ`, `τ`, `ι`, the identifications of `C`, and checks each against its inverse.
pub fn build_context(ext: &RingExtension, chain: &CentralizerChain, left: &Quasibasis) -> Result<MoritaContext, ExtError> {
    if left.side != Side::Left || !left.verify(ext, chain) {
        return Err(ExtError::Hypothesis("a verified left quasibasis is required".into()));
    }
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let ra = RActions::new(chain);
    let (nr, na, nb, dt) = (chain.r.dim(), chain.a_space.dim(), chain.b_space.dim(), chain.t2.dim());
    let mut checks = Vec::new();

    // μ_R and its inverse c ↦ Σ_i c(b_i) ⊗ β_i
    let mu_r = MuR::new(ext, chain)?;
    let c_mats = space_mats(f, dt, dt, &mu_r.c_space);
    let mut cols = Vec::new();
    for c in &c_mats {
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (b, beta) in &left.pairs {
            let cb = b_coords(chain, &c.mul_vec(b), "c(b_i)")?;
            let bc = a_coords(chain, beta, "β_i")?;
            acc.extend(kron_sparse(f, &mu_r.ba.radix, &[&sparse_from_dense(&cb), &sparse_from_dense(&bc)]));
        }
        cols.push(mu_r.ba.project(&collect_sparse(acc)));
    }
    let inv = Mat::from_cols(f, mu_r.ba.dim(), &cols);
    checks.push(check_inverse("μ_R: B ⊗_R A → C", &mu_r.matrix, &inv)?);

    // ψ: B → Hom(_R A, _R R), b ↦ (α ↦ α(b^1) b^2)
    let pairs_owned: Vec<(Mat, Mat)> = ra.gens.iter().map(|(rc, r)| (ra.a_left(m, chain, r), chain.r.lmat(rc))).collect();
    let pairs: Vec<(&Mat, &Mat)> = pairs_owned.iter().map(|(a, b)| (a, b)).collect();
    let hom_ar = intertwiners(f, na, nr, &pairs);
    let bs: Vec<Vec<Scalar>> = (0..nb).map(|p| chain.b_embed(&unit_vec(f, nb, p))).collect();
    let psi_of = |b: &[Scalar]| -> Result<Mat, ExtError> {
        let cols: Vec<Vec<Scalar>> =
            chain.a_mats.iter().map(|alpha| r_coords(chain, &mu_alpha_id(m, chain, alpha, b), "α(b^1)b^2")).collect::<Result<_, _>>()?;
        Ok(Mat::from_cols(f, nr, &cols))
    };
    let mut psi_cols = Vec::new();
    for b in &bs {
        psi_cols.push(space_coords(&hom_ar, psi_of(b)?.flat(), "ψ(b)")?);
    }
    let psi = Mat::from_cols(f, hom_ar.dim(), &psi_cols);
    let mut cols = Vec::new();
    for phi in space_mats(f, nr, na, &hom_ar) {
        let mut acc = vec![f.zero(); dt];
        for (b, beta) in &left.pairs {
            let r = chain.r_embed(&phi.mul_vec(&a_coords(chain, beta, "β_i")?));
            acc = vec_add(&acc, &chain.t2.right_mul(m, &r).mul_vec(b));
        }
        cols.push(b_coords(chain, &acc, "ψ^{-1}(φ)")?);
    }
    checks.push(check_inverse("ψ: B_R → Hom(_R A, _R R)", &psi, &Mat::from_cols(f, nb, &cols))?);

    // τ: B ⊗_R M → M ⊗_N M, b ⊗ m ↦ bm
    let pairs = ra.gens.iter().map(|(_, r)| (ra.b_right(m, chain, r), m.lmat(r))).collect();
    let bm = TensorOver::new(f, nb, dm, pairs);
    let tau = bm
        .induced_map(dt, |p, k| chain.t2.right_mul(m, &m.e(k)).mul_vec(&bs[p]))
        .ok_or_else(|| ExtError::Verification("τ is not balanced over R".into()))?;
    let mut cols = Vec::new();
    for j in 0..dt {
        let t = chain.t2.quot.rep(j);
        let (s1, s2) = (t / dm, t % dm);
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (b, beta) in &left.pairs {
            let bc = b_coords(chain, b, "b_i")?;
            let x = m.mul(&beta.col(s1), &m.e(s2));
            acc.extend(kron_sparse(f, &bm.radix, &[&sparse_from_dense(&bc), &sparse_from_dense(&x)]));
        }
        cols.push(bm.project(&collect_sparse(acc)));
    }
    checks.push(check_inverse("τ: B ⊗_R M → M ⊗_N M", &tau, &Mat::from_cols(f, bm.dim(), &cols))?);

    // ι: M ⊗_N M → Hom(_R A, _R M), ι(m ⊗ m')(α) = α(m) m'
    let pairs_owned: Vec<(Mat, Mat)> = ra.gens.iter().map(|(_, r)| (ra.a_left(m, chain, r), m.lmat(r))).collect();
    let pairs: Vec<(&Mat, &Mat)> = pairs_owned.iter().map(|(a, b)| (a, b)).collect();
    let hom_am = intertwiners(f, na, dm, &pairs);
    let mut cols = Vec::new();
    for j in 0..dt {
        let t = chain.t2.quot.rep(j);
        let (s1, s2) = (t / dm, t % dm);
        let img: Vec<Vec<Scalar>> = chain.a_mats.iter().map(|alpha| m.mul(&alpha.col(s1), &m.e(s2))).collect();
        cols.push(space_coords(&hom_am, Mat::from_cols(f, dm, &img).flat(), "ι(m ⊗ m')")?);
    }
    let iota = Mat::from_cols(f, hom_am.dim(), &cols);
    let mut cols = Vec::new();
    for g in space_mats(f, dm, na, &hom_am) {
        let mut acc = vec![f.zero(); dt];
        for (b, beta) in &left.pairs {
            let x = g.mul_vec(&a_coords(chain, beta, "β_i")?);
            acc = vec_add(&acc, &chain.t2.right_mul(m, &x).mul_vec(b));
        }
        cols.push(acc);
    }
    checks.push(check_inverse("ι: M ⊗_N M → Hom(_R A, _R M)", &iota, &Mat::from_cols(f, dt, &cols))?);

    // C ≅ End B_R by restriction
    let pairs_owned: Vec<Mat> = ra.gens.iter().map(|(_, r)| ra.b_right(m, chain, r)).collect();
    let pairs: Vec<(&Mat, &Mat)> = pairs_owned.iter().map(|x| (x, x)).collect();
    let end_b = intertwiners(f, nb, nb, &pairs);
    let restrict: Vec<Mat> = c_mats.iter().map(|c| restrict_op(&chain.b_space, |v| c.mul_vec(v))).collect();
    let mut cols = Vec::new();
    for r in &restrict {
        cols.push(space_coords(&end_b, r.flat(), "c|_B")?);
    }
    let to_end_b = Mat::from_cols(f, end_b.dim(), &cols);
    let mut c_end_b = to_end_b.rows() == to_end_b.cols() && to_end_b.rank() == to_end_b.cols();
    for i in 0..c_mats.len() {
        for j in 0..c_mats.len() {
            let prod = restrict_op(&chain.b_space, |v| c_mats[i].mul(&c_mats[j]).mul_vec(v));
            c_end_b &= prod == restrict[i].mul(&restrict[j]);
        }
    }

    // C ≅ End _R A, c ↦ (α ↦ μ(α ⊗ id) c ι_1)
    let pairs_owned: Vec<Mat> = ra.gens.iter().map(|(_, r)| ra.a_left(m, chain, r)).collect();
    let pairs: Vec<(&Mat, &Mat)> = pairs_owned.iter().map(|x| (x, x)).collect();
    let end_a = intertwiners(f, na, na, &pairs);
    let iota1: Vec<Vec<Scalar>> = (0..dm).map(|k| chain.t2.elem(&[&m.e(k), &m.one()])).collect();
    let phi_c = |c: &Mat| -> Result<Mat, ExtError> {
        let cols: Vec<Vec<Scalar>> = chain
            .a_mats
            .iter()
            .map(|alpha| {
                let img: Vec<Vec<Scalar>> = iota1.iter().map(|x| mu_alpha_id(m, chain, alpha, &c.mul_vec(x))).collect();
                a_coords(chain, &Mat::from_cols(f, dm, &img), "μ(α ⊗ id)cι_1")
            })
            .collect::<Result<_, _>>()?;
        Ok(Mat::from_cols(f, na, &cols))
    };
    let phis: Vec<Mat> = c_mats.iter().map(phi_c).collect::<Result<_, _>>()?;
    let mut cols = Vec::new();
    for p in &phis {
        cols.push(space_coords(&end_a, p.flat(), "End _R A image")?);
    }
    let to_end_a = Mat::from_cols(f, end_a.dim(), &cols);
    let mut c_end_a_anti = to_end_a.rows() == to_end_a.cols() && to_end_a.rank() == to_end_a.cols();
    for i in 0..c_mats.len() {
        for j in 0..c_mats.len() {
            c_end_a_anti &= phi_c(&c_mats[i].mul(&c_mats[j]))? == phis[j].mul(&phis[i]);
        }
    }

    // (b ⊗ α)·b' = b·[α, b'] and α·(b ⊗ α') = [α, b]·α'
    let psi_mats: Vec<Mat> = bs.iter().map(|b| psi_of(b)).collect::<Result<_, _>>()?;
    let c_of = |p: usize, q: usize| -> Mat {
        let v = mu_r.matrix.mul_vec(&mu_r.ba.elem(&unit_vec(f, nb, p), &unit_vec(f, na, q)));
        Mat::from_flat(f, dt, dt, mu_r.c_space.element(&v))
    };
    let mut associativity = true;
    for p in 0..nb {
        for q in 0..na {
            let c = c_of(p, q);
            for p2 in 0..nb {
                let lhs = c.mul_vec(&bs[p2]);
                let r = chain.r_embed(&psi_mats[p2].col(q));
                associativity &= lhs == chain.t2.right_mul(m, &r).mul_vec(&bs[p]);
            }
            for q2 in 0..na {
                let lhs = phi_c(&c)?.mul_vec(&unit_vec(f, na, q2));
                let r = chain.r_embed(&psi_mats[p].col(q2));
                associativity &= lhs == ra.a_left(m, chain, &r).mul_vec(&unit_vec(f, na, q));
            }
        }
    }

    // ψ(c·b·r) = c·ψ(b)·r with (c·φ)(α) = φ(α·c), (φ·r)(α) = φ(α) r
    let mut psi_bimodule_map = true;
    for (p, b) in bs.iter().enumerate() {
        for (ci, c) in c_mats.iter().enumerate() {
            let lhs = psi_of(&c.mul_vec(b))?;
            let rhs = psi_mats[p].mul(&phis[ci]);
            psi_bimodule_map &= lhs == rhs;
        }
        for (rc, r) in &ra.gens {
            let lhs = psi_of(&chain.t2.right_mul(m, r).mul_vec(b))?;
            let rhs = chain.r.rmat(rc).mul(&psi_mats[p]);
            psi_bimodule_map &= lhs == rhs;
        }
    }

    Ok(MoritaContext {
        dim_c: mu_r.c_space.dim(),
        dim_r: nr,
        dim_a: na,
        dim_b: nb,
        mu_r,
        checks,
        c_end_b,
        c_end_a_anti,
        associativity,
        psi_bimodule_map,
        left: left.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProgeneratorReport {
    /// `Σ_i ψ(b_i)(α) β_i = α` for every basis `α`.
    pub dual_basis: bool,
    pub a_projective: bool,
    pub a_generator: bool,
    pub b_projective: bool,
    pub b_generator: bool,
}

impl ProgeneratorReport {
    pub fn all(&self) -> bool {
        self.dual_basis && self.a_projective && self.a_generator && self.b_projective && self.b_generator
    }
}

pub fn progenerator_checks(ext: &RingExtension, chain: &CentralizerChain, ctx: &MoritaContext) -> ProgeneratorReport {
    let f = ext.field();
    let m = &ext.m;
    let ra = RActions::new(chain);
    let na = chain.a_space.dim();
    let dual_basis = (0..na).all(|q| {
        let alpha = &chain.a_mats[q];
        let mut acc = Mat::zeros(f, ext.dim_m(), ext.dim_m());
        for (b, beta) in &ctx.left.pairs {
            let r = mu_alpha_id(m, chain, alpha, b);
            acc = acc.add(&m.lmat(&r).mul(beta));
        }
        acc == *alpha
    });
    let ra_mod = Bimodule::new(f, chain.r.dim(), "R", ra.gens.iter().map(|(rc, _)| chain.r.lmat(rc)).collect(), "K", Vec::new());
    let a_mod = Bimodule::new(f, na, "R", ra.gens.iter().map(|(_, r)| ra.a_left(m, chain, r)).collect(), "K", Vec::new());
    let rr_mod = Bimodule::new(f, chain.r.dim(), "K", Vec::new(), "R", ra.gens.iter().map(|(rc, _)| chain.r.rmat(rc)).collect());
    let b_mod = Bimodule::new(f, chain.b_space.dim(), "K", Vec::new(), "R", ra.gens.iter().map(|(_, r)| ra.b_right(m, chain, r)).collect());
    ProgeneratorReport {
        dual_basis,
        a_projective: similar_summand(&ra_mod, &a_mod).is_some(),
        a_generator: similar_summand(&a_mod, &ra_mod).is_some(),
        b_projective: similar_summand(&rr_mod, &b_mod).is_some(),
        b_generator: similar_summand(&b_mod, &rr_mod).is_some(),
    }
}

#[derive(Clone, Debug)]
pub struct RightDualReport {
    pub checks: Vec<IsoCheck>,
    pub dim_c: usize,
    pub dim_c_right: usize,
    /// `End_M(M ⊗_N M)_N → End A_R`, `c ↦ (α ↦ μ(id ⊗ α) c ι_2)`, is bijective.
    pub c_end_a: bool,
}

/// `B ≅ Hom(A_R, R_R)`, `M ⊗_R B ≅ M ⊗_N M` and the identification of the step-three
/// centralizer with `End A_R`, from a right quasibasis.
pub fn right_side_duals(ext: &RingExtension, chain: &CentralizerChain, right: &Quasibasis) -> Result<RightDualReport, ExtError> {
    if right.side != Side::Right || !right.verify(ext, chain) {
        return Err(ExtError::Hypothesis("a verified right quasibasis is required".into()));
    }
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let ra = RActions::new(chain);
    let (nr, na, nb, dt) = (chain.r.dim(), chain.a_space.dim(), chain.b_space.dim(), chain.t2.dim());
    let bs: Vec<Vec<Scalar>> = (0..nb).map(|p| chain.b_embed(&unit_vec(f, nb, p))).collect();
    let mut checks = Vec::new();

    // B → Hom(A_R, R_R), b ↦ (α ↦ b^1 α(b^2)); inverse φ ↦ Σ_i φ(γ_i) c_i
    let pairs_owned: Vec<(Mat, Mat)> = ra.gens.iter().map(|(rc, r)| (ra.a_right(m, chain, r), chain.r.rmat(rc))).collect();
    let pairs: Vec<(&Mat, &Mat)> = pairs_owned.iter().map(|(a, b)| (a, b)).collect();
    let hom = intertwiners(f, na, nr, &pairs);
    let mut cols = Vec::new();
    for b in &bs {
        let img: Vec<Vec<Scalar>> =
            chain.a_mats.iter().map(|alpha| r_coords(chain, &mu_id_alpha(m, chain, alpha, b), "b^1 α(b^2)")).collect::<Result<_, _>>()?;
        cols.push(space_coords(&hom, Mat::from_cols(f, nr, &img).flat(), "b ↦ b^1 α(b^2)")?);
    }
    let fwd = Mat::from_cols(f, hom.dim(), &cols);
    let mut cols = Vec::new();
    for phi in space_mats(f, nr, na, &hom) {
        let mut acc = vec![f.zero(); dt];
        for (c, gamma) in &right.pairs {
            let r = chain.r_embed(&phi.mul_vec(&a_coords(chain, gamma, "γ_i")?));
            acc = vec_add(&acc, &chain.t2.left_mul(m, &r).mul_vec(c));
        }
        cols.push(b_coords(chain, &acc, "Σ φ(γ_i) c_i")?);
    }
    checks.push(check_inverse("B ≅ Hom(A_R, R_R)", &fwd, &Mat::from_cols(f, nb, &cols))?);

    // M ⊗_R B → M ⊗_N M, m ⊗ b ↦ mb; inverse m ⊗ m' ↦ Σ_i m γ_i(m') ⊗ c_i
    let pairs = ra.gens.iter().map(|(_, r)| (m.rmat(r), ra.b_left(m, chain, r))).collect();
    let mb = TensorOver::new(f, dm, nb, pairs);
    let fwd = mb
        .induced_map(dt, |k, p| chain.t2.left_mul(m, &m.e(k)).mul_vec(&bs[p]))
        .ok_or_else(|| ExtError::Verification("m ⊗ b ↦ mb is not balanced over R".into()))?;
    let mut cols = Vec::new();
    for j in 0..dt {
        let t = chain.t2.quot.rep(j);
        let (s1, s2) = (t / dm, t % dm);
        let mut acc: Vec<(usize, Scalar)> = Vec::new();
        for (c, gamma) in &right.pairs {
            let x = m.mul(&m.e(s1), &gamma.col(s2));
            let cc = b_coords(chain, c, "c_i")?;
            acc.extend(kron_sparse(f, &mb.radix, &[&sparse_from_dense(&x), &sparse_from_dense(&cc)]));
        }
        cols.push(mb.project(&collect_sparse(acc)));
    }
    checks.push(check_inverse("M ⊗_R B ≅ M ⊗_N M", &fwd, &Mat::from_cols(f, mb.dim(), &cols))?);

    // End_M(M ⊗_N M)_N → End A_R
    let c_right = step_three_centralizer_right(ext, chain);
    let pairs_owned: Vec<Mat> = ra.gens.iter().map(|(_, r)| ra.a_right(m, chain, r)).collect();
    let pairs: Vec<(&Mat, &Mat)> = pairs_owned.iter().map(|x| (x, x)).collect();
    let end_a = intertwiners(f, na, na, &pairs);
    let iota2: Vec<Vec<Scalar>> = (0..dm).map(|k| chain.t2.elem(&[&m.one(), &m.e(k)])).collect();
    let mut cols = Vec::new();
    for c in space_mats(f, dt, dt, &c_right) {
        let img: Vec<Vec<Scalar>> = chain
            .a_mats
            .iter()
            .map(|alpha| {
                let v: Vec<Vec<Scalar>> = iota2.iter().map(|x| mu_id_alpha(m, chain, alpha, &c.mul_vec(x))).collect();
                a_coords(chain, &Mat::from_cols(f, dm, &v), "μ(id ⊗ α)cι_2")
            })
            .collect::<Result<_, _>>()?;
        cols.push(space_coords(&end_a, Mat::from_cols(f, na, &img).flat(), "End A_R image")?);
    }
    let map = Mat::from_cols(f, end_a.dim(), &cols);
    let c_end_a = map.rows() == map.cols() && map.rank() == map.cols();
    Ok(RightDualReport { checks, dim_c: step_three_centralizer(ext, chain).dim(), dim_c_right: c_right.dim(), c_end_a })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::algcore::Algebra;
    use crate::extcore::examples::*;
    use crate::extcore::d2_quasibasis;

    const Q: Field = Field::Rational;

    fn run(ext: &RingExtension) -> (MoritaContext, ProgeneratorReport, RightDualReport) {
        let chain = CentralizerChain::new(ext).unwrap();
        let l = d2_quasibasis(ext, &chain, Side::Left).unwrap();
        let r = d2_quasibasis(ext, &chain, Side::Right).unwrap();
        let ctx = build_context(ext, &chain, &l).unwrap();
        let pg = progenerator_checks(ext, &chain, &ctx);
        let rd = right_side_duals(ext, &chain, &r).unwrap();
        (ctx, pg, rd)
    }

    #[test]
    fn trivial_extension() {
        let (ctx, pg, rd) = run(&RingExtension::identity(Algebra::cyclic_group(Q, 2)));
        assert_eq!((ctx.dim_b, ctx.dim_r, ctx.dim_c), (2, 2, 2));
        assert!(ctx.c_end_b && ctx.c_end_a_anti && ctx.associativity && ctx.psi_bimodule_map);
        assert!(pg.all());
        assert!(rd.c_end_a);
    }

    #[test]
    fn matrix_over_scalars() {
        let (ctx, pg, rd) = run(&RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2)));
        // M ⊗_K M is free of rank 4 as a right M-module, so C ≅ M_4(M_2(Q))
        assert_eq!(ctx.dim_c, 4 * 4 * 4);
        assert_eq!(ctx.mu_r.ba.dim(), ctx.dim_b * ctx.dim_a / ctx.dim_r);
        assert!(ctx.mu_r.is_surjective());
        assert!(pg.all());
        assert_eq!(rd.checks[0].domain_dim, 16);
    }

    #[test]
    fn group_pipeline() {
        let (ctx, pg, rd) = run(&c2_in_c4(Q));
        assert_eq!((ctx.dim_b, ctx.dim_a, ctx.dim_r), (8, 8, 4));
        assert!(ctx.mu_r.is_surjective());
        assert_eq!(ctx.checks.len(), 4);
        assert!(ctx.c_end_b && ctx.c_end_a_anti && ctx.associativity && ctx.psi_bimodule_map);
        assert!(pg.all());
        assert!(rd.c_end_a);
    }

    #[test]
    fn upper_triangular_progenerator() {
        let (ctx, pg, _) = run(&upper_triangular_in_m2(Q));
        assert_eq!((ctx.dim_a, ctx.dim_r), (1, 1));
        assert!(pg.all());
    }

    #[test]
    fn non_d2_mu_r_not_onto() {
        let ext = non_d2_sample(Q, 3);
        let chain = CentralizerChain::new(&ext).unwrap();
        assert!(!MuR::new(&ext, &chain).unwrap().is_surjective());
    }
}
