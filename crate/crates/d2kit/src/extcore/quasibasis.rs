use crate::exactla::{sparse_from_dense, unit_vec, Echelon, Mat, Scalar};

use super::{CentralizerChain, RingExtension};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Pairs `(b_i, β_i)` with `b_i ∈ B` in `M ⊗_N M`-coordinates and `β_i ∈ A` as matrices on `M`.
#[derive(Clone, Debug)]
pub struct Quasibasis {
    pub side: Side,
    pub pairs: Vec<(Vec<Scalar>, Mat)>,
}

impl Quasibasis {
    /// Left: `Σ b_i^1 ⊗ b_i^2 β_i(m) = m ⊗ 1`; right: `Σ γ_i(m) c_i^1 ⊗ c_i^2 = 1 ⊗ m`.
    pub fn verify(&self, ext: &RingExtension, chain: &CentralizerChain) -> bool {
        let m = &ext.m;
        let f = ext.field();
        let t2 = &chain.t2;
        for (b, beta) in &self.pairs {
            if chain.b_coords(b).is_none() || chain.a_coords(beta).is_none() {
                return false;
            }
        }
        (0..ext.dim_m()).all(|k| {
            let x = m.e(k);
            let mut acc = vec![f.zero(); t2.dim()];
            for (b, beta) in &self.pairs {
                let y = beta.mul_vec(&x);
                let term = match self.side {
                    Side::Left => t2.right_mul(m, &y).mul_vec(b),
                    Side::Right => t2.left_mul(m, &y).mul_vec(b),
                };
                acc = crate::exactla::vec_add(&acc, &term);
            }
            let target = match self.side {
                Side::Left => t2.elem(&[&x, &m.one()]),
                Side::Right => t2.elem(&[&m.one(), &x]),
            };
            acc == target
        })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Searches `Σ b^1 ⊗ b^2 β(−)` (left) or `Σ γ(−) c^1 ⊗ c^2` (right) over basis pairs of
/// `B × A` for the map `m ↦ m ⊗ 1` (resp. `1 ⊗ m`). `None` certifies that it is not in the span.
pub fn d2_quasibasis(ext: &RingExtension, chain: &CentralizerChain, side: Side) -> Option<Quasibasis> {
    let m = &ext.m;
    let f = ext.field();
    let t2 = &chain.t2;
    let (dm, dt) = (ext.dim_m(), t2.dim());
    let (nb, na) = (chain.b_space.dim(), chain.a_space.dim());
    let acts: Vec<Mat> = (0..dm)
        .map(|k| match side {
            Side::Left => t2.right_mul(m, &m.e(k)),
            Side::Right => t2.left_mul(m, &m.e(k)),
        })
        .collect();
    let bs: Vec<Vec<Scalar>> = (0..nb).map(|p| chain.b_embed(&unit_vec(f, nb, p))).collect();
    // acted[p][k] = e_k acting on b_p
    let acted: Vec<Vec<Vec<Scalar>>> = bs.iter().map(|b| acts.iter().map(|a| a.mul_vec(b)).collect()).collect();
    let mut target: Vec<(usize, Scalar)> = Vec::new();
    for j in 0..dm {
        let x = m.e(j);
        let v = match side {
            Side::Left => t2.elem(&[&x, &m.one()]),
            Side::Right => t2.elem(&[&m.one(), &x]),
        };
        for (i, c) in sparse_from_dense(&v) {
            target.push((j * dt + i, c));
        }
    }
    let mut ech = Echelon::tracked(f, dm * dt);
    let mut index: Vec<(usize, usize)> = Vec::new();
    let mut found = None;
    'outer: for p in 0..nb {
        for q in 0..na {
            let beta = &chain.a_mats[q];
            let mut v: Vec<(usize, Scalar)> = Vec::new();
            for j in 0..dm {
                let mut col = vec![f.zero(); dt];
                for k in 0..dm {
                    let c = beta.get(k, j);
                    if !c.is_zero() {
                        col = crate::exactla::vec_add(&col, &crate::exactla::vec_scale(&acted[p][k], c));
                    }
                }
                for (i, c) in sparse_from_dense(&col) {
                    v.push((j * dt + i, c));
                }
            }
            index.push((p, q));
            if ech.insert(v) {
                if let Some(coeffs) = ech.express(&target) {
                    found = Some(coeffs);
                    break 'outer;
                }
            }
        }
    }
    let coeffs = found?;
    let mut grouped: Vec<Option<Mat>> = vec![None; nb];
    for (k, c) in coeffs {
        let (p, q) = index[k];
        let term = chain.a_mats[q].scale(&c);
        grouped[p] = Some(match grouped[p].take() {
            Some(acc) => acc.add(&term),
            None => term,
        });
    }
    let pairs = grouped.into_iter().enumerate().filter_map(|(p, beta)| beta.map(|b| (bs[p].clone(), b))).collect();
    let qb = Quasibasis { side, pairs };
    debug_assert!(qb.verify(ext, chain));
    Some(qb)
}
