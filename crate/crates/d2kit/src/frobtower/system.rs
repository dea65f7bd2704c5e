use crate::algcore::form_candidates;
use crate::exactla::{intertwiners, solve, vec_add, Echelon, Mat, Scalar, Subspace};
use crate::extcore::{left_dual, similar_summand, ExtError, Ring, RingExtension};

/// `E ∈ Hom_{N-N}(M, N)` with dual bases `x_i, y_i`:
/// `Σ x_i E(y_i m) = m = Σ E(m x_i) y_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusSystem {
    /// `dim N × dim M`.
    pub e: Mat,
    pub x: Vec<Vec<Scalar>>,
    pub y: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusSearch {
    Found(FrobeniusSystem),
    /// `M` and `Hom(M_N, N_N)` are not isomorphic `N`-`M`-bimodules.
    NotFrobenius(String),
    /// Search failed and the bimodule criterion found no obstruction.
    Undecided,
}

impl FrobeniusSearch {
    pub fn system(&self) -> Option<&FrobeniusSystem> {
        match self {
            FrobeniusSearch::Found(s) => Some(s),
            _ => None,
        }
    }
}

/// `Hom_{N-N}(M, N)` as `dim N × dim M` matrices flattened row-major.
pub fn frobenius_homs(ext: &RingExtension) -> Subspace {
    let pairs: Vec<(Mat, Mat)> = ext
        .n
        .generators()
        .into_iter()
        .flat_map(|g| {
            let x = ext.n.e(g);
            let im = ext.iota.apply(&x);
            [(ext.m.lmat(&im), ext.n.lmat(&x)), (ext.m.rmat(&im), ext.n.rmat(&x))]
        })
        .collect();
    let refs: Vec<(&Mat, &Mat)> = pairs.iter().map(|(a, b)| (a, b)).collect();
    intertwiners(ext.field(), ext.dim_m(), ext.dim_n(), &refs)
}

/// `ι∘E` as an operator on `M`.
pub fn e_in_m(ext: &RingExtension, e: &Mat) -> Mat {
    ext.iota.matrix.mul(e)
}

/// Basis elements of `M` generating `M_N`, chosen greedily.
fn right_generators(ext: &RingExtension) -> Vec<usize> {
    let dm = ext.dim_m();
    let nimg: Vec<Vec<Scalar>> = (0..ext.dim_n()).map(|j| ext.iota.apply(&ext.n.e(j))).collect();
    let mut ech = Echelon::new(ext.field(), dm);
    let mut out = Vec::new();
    for k in 0..dm {
        let before = ech.rank();
        for n in &nimg {
            ech.insert_dense(&ext.m.mul(&ext.m.e(k), n));
        }
        if ech.rank() > before {
            out.push(k);
        }
        if ech.rank() == dm {
            break;
        }
    }
    out
}

/// Solves `Σ x_i E(y_i m) = m` for `y` with `x` a list of basis elements.
fn solve_y(ext: &RingExtension, em: &Mat, xs: &[usize]) -> Option<Vec<Vec<Scalar>>> {
    let f = ext.field();
    let m = &ext.m;
    let dm = ext.dim_m();
    let g = xs.len();
    let mut big = Mat::zeros(f, dm * dm, g * dm);
    let mut rhs = Vec::with_capacity(dm * dm);
    for k in 0..dm {
        let rk = m.rmat(&m.e(k));
        for (i, &xi) in xs.iter().enumerate() {
            let block = m.lmat(&m.e(xi)).mul(em).mul(&rk);
            for r in 0..dm {
                for c in 0..dm {
                    big.set(k * dm + r, i * dm + c, block.get(r, c).clone());
                }
            }
        }
        rhs.extend(m.e(k));
    }
    let sol = solve(&big, &rhs).ok()??;
    Some((0..g).map(|i| sol[i * dm..(i + 1) * dm].to_vec()).collect())
}

impl FrobeniusSystem {
    /// Dual bases for a given `E`, or `None` when `E` is not a Frobenius homomorphism.
    pub fn from_hom(ext: &RingExtension, e: &Mat) -> Option<FrobeniusSystem> {
        let em = e_in_m(ext, e);
        let dm = ext.dim_m();
        let cols: Vec<Vec<Scalar>> = (0..dm).map(|k| e.mul(&ext.m.lmat(&ext.m.e(k))).flat().to_vec()).collect();
        if Mat::from_cols(ext.field(), ext.dim_n() * dm, &cols).rank() != dm {
            return None;
        }
        let gens = right_generators(ext);
        let all: Vec<usize> = (0..dm).collect();
        for xs in [gens, all] {
            if let Some(y) = solve_y(ext, &em, &xs) {
                let sys = FrobeniusSystem { e: e.clone(), x: xs.iter().map(|&k| ext.m.e(k)).collect(), y };
                if sys.verify(ext).is_ok() {
                    return Some(sys);
                }
            }
        }
        None
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// `E(m)` as an element of `M`.
    pub fn apply(&self, ext: &RingExtension, m: &[Scalar]) -> Vec<Scalar> {
        ext.iota.apply(&self.e.mul_vec(m))
    }

    pub fn verify(&self, ext: &RingExtension) -> Result<(), ExtError> {
        let m = &ext.m;
        if !frobenius_homs(ext).contains(self.e.flat()) {
            return Err(ExtError::Verification("E is not an N-N-bimodule map".into()));
        }
        for k in 0..ext.dim_m() {
            let v = m.e(k);
            let mut l = m.zero();
            let mut r = m.zero();
            for (x, y) in self.x.iter().zip(&self.y) {
                l = vec_add(&l, &m.mul(x, &self.apply(ext, &m.mul(y, &v))));
                r = vec_add(&r, &m.mul(&self.apply(ext, &m.mul(&v, x)), y));
            }
            if l != v {
                return Err(ExtError::Verification(format!("Σ x_i E(y_i m) ≠ m at basis element {k}")));
            }
            if r != v {
                return Err(ExtError::Verification(format!("Σ E(m x_i) y_i ≠ m at basis element {k}")));
            }
        }
        Ok(())
    }
}

/// Certificate of absence: `_N M_M` and `_N M*_M` are not mutually similar summands of the
/// same dimension. `None` when the criterion finds no obstruction.
pub fn frobenius_obstruction(ext: &RingExtension) -> Option<String> {
    let mb = ext.bimod_m(Ring::N, Ring::M);
    let dual = left_dual(ext);
    if dual.dim != mb.dim {
        return Some(format!("dim Hom(M_N, N_N) = {} but dim M = {}", dual.dim, mb.dim));
    }
    if similar_summand(&mb, &dual).is_none() {
        return Some("M is not a summand of copies of Hom(M_N, N_N)".into());
    }
    if similar_summand(&dual, &mb).is_none() {
        return Some("Hom(M_N, N_N) is not a summand of copies of M".into());
    }
    None
}

/// Basis homomorphisms, their sum, then seeded random combinations; absence is certified
/// only by [`frobenius_obstruction`].
pub fn find_frobenius_system(ext: &RingExtension, seed: u64) -> FrobeniusSearch {
    let f = ext.field();
    let homs = frobenius_homs(ext);
    if homs.dim() > 0 && left_dual(ext).dim == ext.dim_m() {
        for c in form_candidates(f, homs.dim(), seed) {
            let e = Mat::from_flat(f, ext.dim_n(), ext.dim_m(), homs.element(&c));
            if let Some(sys) = FrobeniusSystem::from_hom(ext, &e) {
                return FrobeniusSearch::Found(sys);
            }
        }
    }
    match frobenius_obstruction(ext) {
        Some(why) => FrobeniusSearch::NotFrobenius(why),
        None => FrobeniusSearch::Undecided,
    }
}
