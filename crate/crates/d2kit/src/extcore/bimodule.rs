use crate::exactla::{intertwiners, sparse_from_dense, Echelon, Field, Mat, Scalar, Subspace};

use super::ExtError;

/// A bimodule `_L V_R'` given by action matrices of algebra generators. Right actions are
/// stored as the matrices of `v ↦ v·r`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub field: Field,
    pub dim: usize,
    pub left_tag: String,
    pub left: Vec<Mat>,
    pub right_tag: String,
    pub right: Vec<Mat>,
}

impl Bimodule {
    pub fn new(field: Field, dim: usize, left_tag: &str, left: Vec<Mat>, right_tag: &str, right: Vec<Mat>) -> Bimodule {
        for m in left.iter().chain(&right) {
            assert_eq!((m.rows(), m.cols()), (dim, dim), "action matrix of wrong size");
        }
        Bimodule { field, dim, left_tag: left_tag.into(), left, right_tag: right_tag.into(), right }
    }

    /// Left and right generator actions commute.
    pub fn actions_commute(&self) -> bool {
        self.left.iter().all(|l| self.right.iter().all(|r| l.mul(r) == r.mul(l)))
    }

    fn same_rings(&self, o: &Bimodule) -> Result<(), ExtError> {
        if self.left_tag != o.left_tag
            || self.right_tag != o.right_tag
            || self.left.len() != o.left.len()
            || self.right.len() != o.right.len()
        {
            return Err(ExtError::RingMismatch(format!(
                "{}-{} against {}-{}",
                self.left_tag, self.right_tag, o.left_tag, o.right_tag
            )));
        }
        Ok(())
    }
}

/// Bimodule maps `X → Y` as a subspace of `dim Y × dim X` matrices flattened row-major.
pub fn hom_bimodule(x: &Bimodule, y: &Bimodule) -> Result<Subspace, ExtError> {
    x.same_rings(y)?;
    let field = x.field;
    let pairs: Vec<(&Mat, &Mat)> = x.left.iter().zip(&y.left).chain(x.right.iter().zip(&y.right)).collect();
    Ok(intertwiners(field, x.dim, y.dim, &pairs))
}

pub fn hom_matrices(x: &Bimodule, y: &Bimodule) -> Result<Vec<Mat>, ExtError> {
    let s = hom_bimodule(x, y)?;
    let field = x.field;
    Ok((0..s.dim()).map(|i| Mat::from_flat(field, y.dim, x.dim, s.basis_vec(i))).collect())
}

/// `Σ c·f∘g = id_Y` with `f: X → Y`, `g: Y → X` bimodule maps.
#[derive(Clone, Debug)]
pub struct SummandWitness {
    pub terms: Vec<(Scalar, Mat, Mat)>,
}

impl SummandWitness {
    pub fn verify(&self, x: &Bimodule, y: &Bimodule) -> bool {
        let field = y.field;
        let mut s = Mat::zeros(field, y.dim, y.dim);
        for (c, f, g) in &self.terms {
            let hom = |m: &Mat, src: &Bimodule, dst: &Bimodule| {
                src.left.iter().zip(&dst.left).chain(src.right.iter().zip(&dst.right)).all(|(a, b)| m.mul(a) == b.mul(m))
            };
            if !hom(f, x, y) || !hom(g, y, x) {
                return false;
            }
            s = s.add(&f.mul(g).scale(c));
        }
        s.is_identity()
    }
}

/// Decides whether `Y ⊕ * ≅ ⊕^n X` for some `n`. The composites `f∘g` span a two-sided
/// ideal of `End(Y)`, so `id_Y` lies in it exactly when it is all of `End(Y)`.
pub fn similar_summand(x: &Bimodule, y: &Bimodule) -> Option<SummandWitness> {
    let field = y.field;
    if y.dim == 0 {
        return Some(SummandWitness { terms: Vec::new() });
    }
    let end_dim = hom_bimodule(y, y).ok()?.dim();
    let fs = hom_matrices(x, y).ok()?;
    let gs = hom_matrices(y, x).ok()?;
    let mut ech = Echelon::tracked(field, y.dim * y.dim);
    let mut index: Vec<(usize, usize)> = Vec::new();
    'outer: for (i, f) in fs.iter().enumerate() {
        for (j, g) in gs.iter().enumerate() {
            index.push((i, j));
            ech.insert(f.mul(g).sparse_flat());
            if ech.rank() == end_dim {
                break 'outer;
            }
        }
    }
    if ech.rank() < end_dim {
        return None;
    }
    let id = sparse_from_dense(Mat::identity(field, y.dim).flat());
    let coeffs = ech.express(&id).expect("full ideal contains the identity");
    let terms = coeffs.into_iter().map(|(k, c)| (c, fs[index[k].0].clone(), gs[index[k].1].clone())).collect();
    Some(SummandWitness { terms })
}

/// Mutual similar summands.
pub fn h_equivalent(x: &Bimodule, y: &Bimodule) -> bool {
    similar_summand(x, y).is_some() && similar_summand(y, x).is_some()
}
