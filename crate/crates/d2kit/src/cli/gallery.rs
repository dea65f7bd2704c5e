use crate::algcore::Algebra;
use crate::exactla::Field;
use crate::extcore::examples::{c2_in_c4, c3_in_s3, non_d2_sample, upper_triangular_in_m2};
use crate::extcore::RingExtension;

use super::job::{spec_of, JobSpec, Task};

const Q: Field = Field::Rational;

/// Seed of the random non-depth-two sample.
pub const RANDOM_NON_D2_SEED: u64 = 7;

const ENTRIES: [(&str, &str); 10] = [
    ("trivial", "N = M = Q with the identity map"),
    ("upper-triangular-in-M2", "upper triangular matrices in M_2(Q)"),
    ("upper-triangular-in-M2-F2", "upper triangular matrices in M_2(F_2)"),
    ("scalars-in-M2", "Q·1 in M_2(Q)"),
    ("scalars-in-QxQ", "Q·1 in Q × Q"),
    ("kC2-in-kC4", "Q[C_2] in Q[C_4]"),
    ("kC3-in-kS3", "Q[C_3] in Q[S_3]"),
    ("centrally-projective", "Q·1 in Q × Q × Q"),
    ("random-non-D2", "a seeded conjugate of Q × Q in Q × M_2(Q), not depth two"),
    ("scalars-in-M2-F2", "F_2·1 in M_2(F_2)"),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|(n, _)| *n).collect()
}

pub fn describe(name: &str) -> Option<&'static str> {
    let key = canonical(name)?;
    ENTRIES.iter().find(|(n, _)| *n == key).map(|(_, d)| *d)
}

/// The gallery name matching `name` up to case and `_`/`-`.
pub fn canonical(name: &str) -> Option<&'static str> {
    let norm = |s: &str| s.to_lowercase().replace('_', "-");
    let key = norm(name);
    ENTRIES.iter().map(|(n, _)| *n).find(|n| norm(n) == key)
}

pub fn extension(name: &str) -> Option<RingExtension> {
    let f2 = Field::Prime(2);
    Some(match canonical(name)? {
        "trivial" => RingExtension::identity(Algebra::diagonal(Q, 1)),
        "upper-triangular-in-M2" => upper_triangular_in_m2(Q),
        "upper-triangular-in-M2-F2" => upper_triangular_in_m2(f2),
        "scalars-in-M2" => RingExtension::over_scalars(Algebra::matrix_algebra(Q, 2)),
        "scalars-in-M2-F2" => RingExtension::over_scalars(Algebra::matrix_algebra(f2, 2)),
        "scalars-in-QxQ" => RingExtension::over_scalars(Algebra::diagonal(Q, 2)),
        "kC2-in-kC4" => c2_in_c4(Q),
        "kC3-in-kS3" => c3_in_s3(Q),
        "centrally-projective" => RingExtension::over_scalars(Algebra::diagonal(Q, 3)),
        "random-non-D2" => non_d2_sample(Q, RANDOM_NON_D2_SEED),
        _ => return None,
    })
}

/// The gallery entry as a self-contained job running every task.
pub fn job(name: &str) -> Option<JobSpec> {
    let key = canonical(name)?;
    Some(spec_of(key, &extension(key)?, vec![Task::All], 0))
}

/// Every gallery extension with its name.
pub fn all() -> Vec<(String, RingExtension)> {
    names().into_iter().map(|n| (n.to_string(), extension(n).expect("listed"))).collect()
}
