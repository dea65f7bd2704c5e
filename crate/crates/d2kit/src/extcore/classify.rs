use crate::exactla::{intertwiners, solve, sparse_kernel, sparse_solve, Field, Mat, SVec, Scalar, Subspace};

use super::chain::{matrix_generators, restrict_op, space_mats};
use super::{
    d2_quasibasis, similar_summand, Bimodule, CentralizerChain, Quasibasis, Ring, RingExtension, Side, TensorPower,
};

/// Every flag of a ring extension together with its witness or certificate of absence.
#[derive(Clone, Debug)]
pub struct ExtensionProfile {
    pub proper: bool,
    pub dim_n: usize,
    pub dim_m: usize,
    pub dim_r: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_t2: usize,
    pub left_quasibasis: Option<Quasibasis>,
    pub right_quasibasis: Option<Quasibasis>,
    pub left_d2_summand: bool,
    pub right_d2_summand: bool,
    pub h_separable: bool,
    pub centrally_projective: bool,
    /// `E ∈ Hom_{N-N}(M, N)` with `E∘ι = id`, as a `dim N × dim M` matrix.
    pub split_map: Option<Mat>,
    /// Separability element in `M ⊗_N M`-coordinates.
    pub separability_element: Option<Vec<Scalar>>,
    pub projective_left: bool,
    pub projective_right: bool,
    pub left_qf: bool,
    pub right_qf: bool,
    pub balanced: bool,
    pub dim_end_m_n: usize,
    pub left_d3: bool,
    pub right_d3: bool,
}

impl ExtensionProfile {
    pub fn left_d2(&self) -> bool {
        self.left_quasibasis.is_some()
    }

    pub fn right_d2(&self) -> bool {
        self.right_quasibasis.is_some()
    }

    pub fn d2(&self) -> bool {
        self.left_d2() && self.right_d2()
    }

    pub fn split(&self) -> bool {
        self.split_map.is_some()
    }

    pub fn separable(&self) -> bool {
        self.separability_element.is_some()
    }

    pub fn biseparable(&self) -> bool {
        self.projective_left && self.projective_right && self.split() && self.separable()
    }
}

/// `E ∈ Hom_{N-N}(M, N)` with `E∘ι = id_N`.
pub fn split_map(ext: &RingExtension) -> Option<Mat> {
    let f = ext.field();
    let (dm, dn) = (ext.dim_m(), ext.dim_n());
    let homs = intertwiners_bimod(&ext.bimod_m(Ring::N, Ring::N), &ext.bimod_n());
    let mats = space_mats(f, dn, dm, &homs);
    if mats.is_empty() {
        return None;
    }
    let cols: Vec<Vec<Scalar>> = mats.iter().map(|e| e.mul(&ext.iota.matrix).flat().to_vec()).collect();
    let sys = Mat::from_cols(f, dn * dn, &cols);
    let c = solve(&sys, Mat::identity(f, dn).flat()).ok()??;
    let mut e = Mat::zeros(f, dn, dm);
    for (ci, mi) in c.iter().zip(&mats) {
        e = e.add(&mi.scale(ci));
    }
    Some(e)
}

fn intertwiners_bimod(x: &Bimodule, y: &Bimodule) -> Subspace {
    super::hom_bimodule(x, y).expect("matching rings")
}

/// `e ∈ (M ⊗_N M)^M` with `μ(e) = 1`.
pub fn separability_element(ext: &RingExtension, t2: &TensorPower) -> Option<Vec<Scalar>> {
    let f = ext.field();
    let m = &ext.m;
    let mut rows: Vec<(SVec, Scalar)> = Vec::new();
    for g in ext.m_generators() {
        let d = t2.left_mul(m, g).sub(&t2.right_mul(m, g));
        rows.extend(d.sparse_rows().into_iter().filter(|r| !r.is_empty()).map(|r| (r, f.zero())));
    }
    let mu = t2.multiply_map(m);
    let one = m.one();
    for (k, r) in mu.sparse_rows().into_iter().enumerate() {
        rows.push((r, one[k].clone()));
    }
    sparse_solve(f, t2.dim(), rows)
}

/// `M* = Hom(M_N, N_N)` as an `N`-`M`-bimodule, `(n·φ·m)(x) = n φ(m x)`.
pub fn left_dual(ext: &RingExtension) -> Bimodule {
    let f = ext.field();
    let (dm, dn) = (ext.dim_m(), ext.dim_n());
    let nr = ext.bimod_n_right();
    let mr = ext.bimod_m(Ring::K, Ring::N);
    let space = intertwiners_bimod(&mr, &nr);
    let ngens: Vec<Vec<Scalar>> = ext.n.generators().into_iter().map(|g| ext.n.e(g)).collect();
    let left = ngens
        .iter()
        .map(|g| {
            let l = ext.n.lmat(g);
            restrict_op(&space, |v| l.mul(&Mat::from_flat(f, dn, dm, v.to_vec())).flat().to_vec())
        })
        .collect();
    let right = ext
        .m_generators()
        .iter()
        .map(|g| {
            let l = ext.m.lmat(g);
            restrict_op(&space, |v| Mat::from_flat(f, dn, dm, v.to_vec()).mul(&l).flat().to_vec())
        })
        .collect();
    Bimodule::new(f, space.dim(), "N", left, "M", right)
}

/// `*M = Hom(_N M, _N N)` as an `M`-`N`-bimodule, `(m·φ·n)(x) = φ(x m) n`.
pub fn right_dual(ext: &RingExtension) -> Bimodule {
    let f = ext.field();
    let (dm, dn) = (ext.dim_m(), ext.dim_n());
    let nl = ext.bimod_n_left();
    let ml = ext.bimod_m(Ring::N, Ring::K);
    let space = intertwiners_bimod(&ml, &nl);
    let ngens: Vec<Vec<Scalar>> = ext.n.generators().into_iter().map(|g| ext.n.e(g)).collect();
    let left = ext
        .m_generators()
        .iter()
        .map(|g| {
            let r = ext.m.rmat(g);
            restrict_op(&space, |v| Mat::from_flat(f, dn, dm, v.to_vec()).mul(&r).flat().to_vec())
        })
        .collect();
    let right = ngens
        .iter()
        .map(|g| {
            let r = ext.n.rmat(g);
            restrict_op(&space, |v| r.mul(&Mat::from_flat(f, dn, dm, v.to_vec())).flat().to_vec())
        })
        .collect();
    Bimodule::new(f, space.dim(), "M", left, "N", right)
}

/// `End M_N` (maps commuting with right `N`-multiplication).
pub fn end_right(ext: &RingExtension) -> Subspace {
    let ops = ext.right_ops(Ring::N);
    let pairs: Vec<(&Mat, &Mat)> = ops.iter().map(|x| (x, x)).collect();
    intertwiners(ext.field(), ext.dim_m(), ext.dim_m(), &pairs)
}

/// `End _N M` (maps commuting with left `N`-multiplication).
pub fn end_left(ext: &RingExtension) -> Subspace {
    let ops = ext.left_ops(Ring::N);
    let pairs: Vec<(&Mat, &Mat)> = ops.iter().map(|x| (x, x)).collect();
    intertwiners(ext.field(), ext.dim_m(), ext.dim_m(), &pairs)
}

fn generators_of(field: Field, n: usize, space: &Subspace) -> Vec<Mat> {
    let mats = space_mats(field, n, n, space);
    matrix_generators(field, n, &mats).into_iter().map(|i| mats[i].clone()).collect()
}

/// `M_N` is balanced: the maps on `M` commuting with `E = End M_N` are exactly `ρ(N)`.
pub fn balanced(ext: &RingExtension, e: &Subspace) -> bool {
    let f = ext.field();
    let dm = ext.dim_m();
    let gens = generators_of(f, dm, e);
    let pairs: Vec<(&Mat, &Mat)> = gens.iter().map(|x| (x, x)).collect();
    let bicomm = intertwiners(f, dm, dm, &pairs);
    let rho_n: Vec<Vec<Scalar>> = (0..ext.dim_n()).map(|i| ext.m.rmat(&ext.iota.apply(&ext.n.e(i))).flat().to_vec()).collect();
    bicomm == Subspace::from_rows(f, dm * dm, &rho_n)
}

/// Right depth three: `_E M⊗_N M⊗_N M_N` and `_E M⊗_N M_N` are H-equivalent.
pub fn right_depth_three(ext: &RingExtension, t2: &TensorPower, t3: &TensorPower, e: &Subspace) -> bool {
    let f = ext.field();
    let gens = generators_of(f, ext.dim_m(), e);
    let nr = ext.right_ops(Ring::N);
    let build = |t: &TensorPower| {
        Bimodule::new(
            f,
            t.dim(),
            "E",
            gens.iter().map(|g| t.factor_map(0, g)).collect(),
            "N",
            nr.iter().map(|g| t.factor_map(t.k - 1, g)).collect(),
        )
    };
    let (x3, x2) = (build(t3), build(t2));
    similar_summand(&x2, &x3).is_some() && similar_summand(&x3, &x2).is_some()
}

/// Left depth three: `_N M⊗_N M⊗_N M_E'` and `_N M⊗_N M_E'` are H-equivalent.
pub fn left_depth_three(ext: &RingExtension, t2: &TensorPower, t3: &TensorPower, e: &Subspace) -> bool {
    let f = ext.field();
    let gens = generators_of(f, ext.dim_m(), e);
    let nl = ext.left_ops(Ring::N);
    let build = |t: &TensorPower| {
        Bimodule::new(
            f,
            t.dim(),
            "N",
            nl.iter().map(|g| t.factor_map(0, g)).collect(),
            "E'",
            gens.iter().map(|g| t.factor_map(t.k - 1, g)).collect(),
        )
    };
    let (x3, x2) = (build(t3), build(t2));
    similar_summand(&x2, &x3).is_some() && similar_summand(&x3, &x2).is_some()
}

/// Left D2 in its module form: `_N M⊗_N M_M ⊕ * ≅ ⊕^n _N M_M`.
pub fn left_d2_by_summand(ext: &RingExtension, t2: &TensorPower) -> bool {
    similar_summand(&ext.bimod_m(Ring::N, Ring::M), &t2.bimodule(ext, Ring::N, Ring::M)).is_some()
}

/// Right D2 in its module form: `_M M⊗_N M_N ⊕ * ≅ ⊕^n _M M_N`.
pub fn right_d2_by_summand(ext: &RingExtension, t2: &TensorPower) -> bool {
    similar_summand(&ext.bimod_m(Ring::M, Ring::N), &t2.bimodule(ext, Ring::M, Ring::N)).is_some()
}

pub fn classify(ext: &RingExtension) -> Result<(ExtensionProfile, CentralizerChain), super::ExtError> {
    let chain = CentralizerChain::new(ext)?;
    let t2 = &chain.t2;
    let t3 = TensorPower::new(ext, 3);
    let left_quasibasis = d2_quasibasis(ext, &chain, Side::Left);
    let right_quasibasis = d2_quasibasis(ext, &chain, Side::Right);
    let h_separable = similar_summand(&ext.bimod_m(Ring::M, Ring::M), &t2.bimodule(ext, Ring::M, Ring::M)).is_some();
    let centrally_projective = similar_summand(&ext.bimod_n(), &ext.bimod_m(Ring::N, Ring::N)).is_some();
    let projective_right = similar_summand(&ext.bimod_n_right(), &ext.bimod_m(Ring::K, Ring::N)).is_some();
    let projective_left = similar_summand(&ext.bimod_n_left(), &ext.bimod_m(Ring::N, Ring::K)).is_some();
    let left_qf = projective_left
        && projective_right
        && similar_summand(&ext.bimod_m(Ring::N, Ring::M), &left_dual(ext)).is_some();
    let right_qf = projective_left
        && projective_right
        && similar_summand(&ext.bimod_m(Ring::M, Ring::N), &right_dual(ext)).is_some();
    let e = end_right(ext);
    let e_prime = end_left(ext);
    let profile = ExtensionProfile {
        proper: ext.proper,
        dim_n: ext.dim_n(),
        dim_m: ext.dim_m(),
        dim_r: chain.r.dim(),
        dim_a: chain.a.dim(),
        dim_b: chain.b.dim(),
        dim_t2: t2.dim(),
        left_d2_summand: left_d2_by_summand(ext, t2),
        right_d2_summand: right_d2_by_summand(ext, t2),
        left_quasibasis,
        right_quasibasis,
        h_separable,
        centrally_projective,
        split_map: split_map(ext),
        separability_element: separability_element(ext, t2),
        projective_left,
        projective_right,
        left_qf,
        right_qf,
        balanced: balanced(ext, &e),
        dim_end_m_n: e.dim(),
        left_d3: left_depth_three(ext, t2, &t3, &e_prime),
        right_d3: right_depth_three(ext, t2, &t3, &e),
    };
    Ok((profile, chain))
}

/// Elements of `M ⊗_N M` commuting with `M`.
pub fn m_central_tensors(ext: &RingExtension, t2: &TensorPower) -> Subspace {
    let mut rows: Vec<SVec> = Vec::new();
    for g in ext.m_generators() {
        let d = t2.left_mul(&ext.m, g).sub(&t2.right_mul(&ext.m, g));
        rows.extend(d.sparse_rows().into_iter().filter(|r| !r.is_empty()));
    }
    sparse_kernel(ext.field(), t2.dim(), rows)
}
