use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algcore::{Algebra, AlgebraMap};
use crate::exactla::{unit_vec, Field, Mat, Scalar, Subspace};

use super::RingExtension;

/// The symmetric group on three letters; the first three elements form `C_3`.
pub fn s3(field: Field) -> Algebra {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 2, 0], [2, 0, 1], [1, 0, 2], [0, 2, 1], [2, 1, 0]];
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|g| perms.iter().map(|h| perms.iter().position(|p| *p == [g[h[0]], g[h[1]], g[h[2]]]).expect("closed")).collect())
        .collect();
    Algebra::group_algebra(field, &table).expect("S3")
}

/// `K[C_2 × C_2]`.
pub fn klein(field: Field) -> Algebra {
    let table: Vec<Vec<usize>> = (0..4).map(|g| (0..4).map(|h| g ^ h).collect()).collect();
    Algebra::group_algebra(field, &table).expect("Klein four group")
}

/// Upper triangular `2×2` matrices.
pub fn upper_triangular(field: Field) -> Algebra {
    let m2 = Algebra::matrix_algebra(field, 2);
    Algebra::on_subspace(&Algebra::upper_triangular_in(field, 2), &m2.one(), |x, y| m2.mul(x, y)).expect("T2")
}

fn span(field: Field, n: usize, idx: &[usize]) -> Subspace {
    Subspace::from_rows(field, n, &idx.iter().map(|&i| unit_vec(field, n, i)).collect::<Vec<_>>())
}

/// `M_2(K) ⊃` upper triangular matrices.
pub fn upper_triangular_in_m2(field: Field) -> RingExtension {
    RingExtension::from_subalgebra(Algebra::matrix_algebra(field, 2), &Algebra::upper_triangular_in(field, 2)).expect("subalgebra")
}

/// `K[C_2] ⊂ K[C_4]`.
pub fn c2_in_c4(field: Field) -> RingExtension {
    RingExtension::from_subalgebra(Algebra::cyclic_group(field, 4), &span(field, 4, &[0, 2])).expect("subalgebra")
}

/// `K[C_3] ⊂ K[S_3]`.
pub fn c3_in_s3(field: Field) -> RingExtension {
    RingExtension::from_subalgebra(s3(field), &span(field, 6, &[0, 1, 2])).expect("subalgebra")
}

/// `K ⊂ K × M_2(K)` sending `(a, b) ∈ K × K` to `(a, diag(a, b))`; not depth two.
pub fn non_d2_base(field: Field) -> RingExtension {
    let m = Algebra::diagonal(field, 1).product(&Algebra::matrix_algebra(field, 2));
    let n = Algebra::diagonal(field, 2);
    let mut iota = Mat::zeros(field, 5, 2);
    iota.set(0, 0, field.one());
    iota.set(1, 0, field.one());
    iota.set(4, 1, field.one());
    RingExtension::new(n, m, AlgebraMap::new(iota)).expect("algebra map")
}

fn small(field: Field, rng: &mut ChaCha8Rng) -> Scalar {
    field.int(rng.gen_range(-2i64..=2))
}

/// A seeded random conjugate of [`non_d2_base`].
pub fn non_d2_sample(field: Field, seed: u64) -> RingExtension {
    let base = non_d2_base(field);
    let m = base.m.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let u: Vec<Scalar> = (0..m.dim()).map(|_| small(field, &mut rng)).collect();
        if let Some(ui) = m.inverse(&u) {
            let conj = m.lmat(&u).mul(&m.rmat(&ui));
            let iota = AlgebraMap::new(conj.mul(&base.iota.matrix));
            return RingExtension::new(base.n.clone(), m, iota).expect("conjugate of an algebra map");
        }
    }
}

/// Algebras of dimension at most six used for random extensions.
pub fn algebra_pool(field: Field) -> Vec<(&'static str, Algebra)> {
    vec![
        ("K^2", Algebra::diagonal(field, 2)),
        ("K^3", Algebra::diagonal(field, 3)),
        ("K^4", Algebra::diagonal(field, 4)),
        ("M_2", Algebra::matrix_algebra(field, 2)),
        ("M_2×K", Algebra::matrix_algebra(field, 2).product(&Algebra::diagonal(field, 1))),
        ("T_2", upper_triangular(field)),
        ("K[x]/x^3", Algebra::truncated_poly(field, 3)),
        ("K[x]/x^4", Algebra::truncated_poly(field, 4)),
        ("K[C_2]", Algebra::cyclic_group(field, 2)),
        ("K[C_3]", Algebra::cyclic_group(field, 3)),
        ("K[C_4]", Algebra::cyclic_group(field, 4)),
        ("K[C_5]", Algebra::cyclic_group(field, 5)),
        ("K[C_6]", Algebra::cyclic_group(field, 6)),
        ("K[S_3]", s3(field)),
        ("K[C_2×C_2]", klein(field)),
    ]
}

/// A seeded random extension: `M` from the pool, `N` generated by up to two small random
/// elements (or `N = K` one time in five).
pub fn random_extension(field: Field, seed: u64) -> (String, RingExtension) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = algebra_pool(field);
    let (name, m) = pool[rng.gen_range(0..pool.len())].clone();
    if rng.gen_range(0..5) == 0 {
        return (format!("K ⊂ {name}"), RingExtension::over_scalars(m));
    }
    let k = rng.gen_range(1..=2);
    let gens: Vec<Vec<Scalar>> = (0..k).map(|_| (0..m.dim()).map(|_| small(field, &mut rng)).collect()).collect();
    let sub = m.generated(&gens);
    let label = format!("⟨{} random⟩ ⊂ {name} (dim N = {})", k, sub.dim());
    (label, RingExtension::from_subalgebra(m, &sub).expect("generated subalgebra"))
}
