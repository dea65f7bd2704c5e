use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Zero};

use super::echelon::{check_len, sparse_kernel, Echelon, Subspace};
use super::scalar::{Field, Rat, Scalar};
use super::sparse::{collect_sparse, sparse_from_dense, SVec};
use super::{LaError, Mat};

/// Fraction-free (Bareiss) forward elimination on an integer matrix. Returns the
/// echelon rows and their pivot columns.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                for j in c + 1..cols {
                    let t = &a[i][j] * &a[r][c];
                    a[i][j] = t / &prev;
                }
            } else {
                for j in c + 1..cols {
                    let t = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                    a[i][j] = t / &prev;
                }
                a[i][c] = BigInt::zero();
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

fn rref_rational(m: &Mat) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let cols = m.cols();
    let ints: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(&x.as_rat().expect("rational entry").denom()));
            row.iter()
                .map(|x| {
                    let r = x.as_rat().unwrap();
                    r.numer() * (&l / r.denom())
                })
                .collect()
        })
        .collect();
    let (ech, pivots) = bareiss(ints, cols);
    let mut rows: Vec<Vec<Scalar>> = ech
        .iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let lead = row[p].clone();
            row.iter().map(|x| Scalar::Q(Rat::from_big(BigRational::new(x.clone(), lead.clone())))).collect()
        })
        .collect();
    back_substitute(&mut rows, &pivots);
    (rows, pivots)
}

fn back_substitute(rows: &mut [Vec<Scalar>], pivots: &[usize]) {
    for k in (0..rows.len()).rev() {
        let p = pivots[k];
        for i in 0..k {
            let c = rows[i][p].clone();
            if c.is_zero() {
                continue;
            }
            let (top, bottom) = rows.split_at_mut(k);
            for (x, y) in top[i].iter_mut().zip(&bottom[0]).skip(p) {
                if !y.is_zero() {
                    *x -= &(&c * y);
                }
            }
        }
    }
}

fn rref_prime(m: &Mat) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut a: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.cols();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in r + 1..a.len() {
            let f = a[i][c].clone();
            if f.is_zero() {
                continue;
            }
            let (top, bottom) = a.split_at_mut(i);
            for (x, y) in bottom[0].iter_mut().zip(&top[r]).skip(c) {
                *x -= &(&f * y);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    back_substitute(&mut a, &pivots);
    (a, pivots)
}

/// Reduced row echelon form (nonzero rows only) and pivot columns.
pub fn rref(m: &Mat) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    match m.field() {
        Field::Rational => rref_rational(m),
        Field::Prime(_) => rref_prime(m),
    }
}

pub fn rank(a: &Mat) -> usize {
    rref(a).1.len()
}

/// One solution of `A·x = b`, or `None` when `b` is outside the column space.
pub fn solve(a: &Mat, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LaError> {
    check_len(a.rows(), b.len())?;
    let n = a.cols();
    let aug = Mat::from_fn(a.field(), a.rows(), n + 1, |i, j| if j < n { a.get(i, j).clone() } else { b[i].clone() });
    let (rows, pivots) = rref(&aug);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![a.field().zero(); n];
    for (row, &p) in rows.iter().zip(&pivots) {
        x[p] = row[n].clone();
    }
    Ok(Some(x))
}

/// Canonical basis of `{x : A·x = 0}`.
pub fn kernel(a: &Mat) -> Subspace {
    let (rows, pivots) = rref(a);
    let n = a.cols();
    let f = a.field();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let basis: Vec<Vec<Scalar>> = (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|c| {
            let mut v = vec![f.zero(); n];
            v[c] = f.one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -&row[c];
            }
            v
        })
        .collect();
    Subspace::from_rows(f, n, &basis)
}

/// Coefficients of `v` in the echelon basis of `s`, or `None`.
pub fn member(s: &Subspace, v: &[Scalar]) -> Result<Option<Vec<Scalar>>, LaError> {
    check_len(s.ambient(), v.len())?;
    Ok(s.coords(v))
}

/// Span of all composites `F_i·G_j`, flattened row-major.
pub fn span_of_products(f: &[Mat], g: &[Mat]) -> Result<Subspace, LaError> {
    let shape = match (f.first(), g.first()) {
        (Some(a), Some(b)) => (a.rows(), b.cols(), a.field()),
        _ => return Err(LaError::Empty),
    };
    let mut e = Echelon::new(shape.2, shape.0 * shape.1);
    for a in f {
        for b in g {
            let p = a.try_mul(b)?;
            if (p.rows(), p.cols()) != (shape.0, shape.1) {
                return Err(LaError::Dimension { expected: shape.0 * shape.1, got: p.rows() * p.cols() });
            }
            e.insert(sparse_from_dense(p.flat()));
        }
    }
    Ok(e.subspace())
}

/// Linear maps `F: X → Y` with `F·x_g = y_g·F` for every pair `(x_g, y_g)`. The result
/// lives in `K^{dim Y · dim X}`, flattened row-major (`F[a][b]` at `a·dim X + b`).
pub fn intertwiners(field: Field, dx: usize, dy: usize, pairs: &[(&Mat, &Mat)]) -> Subspace {
    let mut eqs: Vec<SVec> = Vec::new();
    for (xg, yg) in pairs {
        assert_eq!((xg.rows(), xg.cols(), yg.rows(), yg.cols()), (dx, dx, dy, dy), "action shape mismatch");
        let xcols = xg.sparse_cols();
        let yrows = yg.sparse_rows();
        for a in 0..dy {
            for c in 0..dx {
                let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(xcols[c].len() + yrows[a].len());
                for (b, x) in &xcols[c] {
                    entries.push((a * dx + b, x.clone()));
                }
                for (b, y) in &yrows[a] {
                    entries.push((b * dx + c, -y));
                }
                let row = collect_sparse(entries);
                if !row.is_empty() {
                    eqs.push(row);
                }
            }
        }
    }
    sparse_kernel(field, dx * dy, eqs)
}

/// One solution of a sparse system given as rows `(coefficients, right-hand side)`.
pub fn sparse_solve(field: Field, ncols: usize, rows: Vec<(SVec, Scalar)>) -> Option<Vec<Scalar>> {
    let mut e = Echelon::new(field, ncols + 1);
    for (mut r, b) in rows {
        if !b.is_zero() {
            r.push((ncols, b));
        }
        e.insert(r);
    }
    let s = e.subspace();
    if s.pivots().last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (row, &p) in s.rows().iter().zip(s.pivots()) {
        if let Some((c, v)) = row.last() {
            if *c == ncols {
                x[p] = v.clone();
            }
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Field::Rational.ratio(n, d).unwrap()
    }

    #[test]
    fn solve_examples() {
        let f = Field::Rational;
        let a = Mat::from_ints(f, &[&[1, 2], &[3, 4]]);
        assert_eq!(solve(&a, &[f.int(5), f.int(6)]).unwrap().unwrap(), vec![q(-4, 1), q(9, 2)]);
        let b = vec![f.int(3), f.int(-7)];
        assert_eq!(solve(&Mat::identity(f, 2), &b).unwrap().unwrap(), b);
        assert!(solve(&Mat::zeros(f, 2, 2), &b).unwrap().is_none());
        assert!(solve(&a, &[f.int(1)]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f = Field::Rational;
        assert_eq!(kernel(&Mat::identity(f, 3)).dim(), 0);
        assert_eq!(kernel(&Mat::zeros(f, 3, 3)).dim(), 3);
        assert_eq!(kernel(&Mat::from_ints(f, &[&[1, 1]])).basis(), vec![vec![f.int(1), f.int(-1)]]);
    }

    #[test]
    fn member_examples() {
        let f = Field::Rational;
        let s = Subspace::from_rows(f, 2, &[vec![f.int(1), f.int(1)], vec![f.int(0), f.int(1)]]);
        let c = member(&s, &[f.int(2), f.int(3)]).unwrap().unwrap();
        let b = [vec![f.int(1), f.int(1)], vec![f.int(0), f.int(1)]];
        let mut e = Echelon::tracked(f, 2);
        for v in &b {
            e.insert_dense(v);
        }
        let in_gens = e.express(&sparse_from_dense(&[f.int(2), f.int(3)])).unwrap();
        assert_eq!(in_gens, vec![(0, f.int(2)), (1, f.int(1))]);
        assert_eq!(s.element(&c), vec![f.int(2), f.int(3)]);
        assert!(member(&Subspace::zero(f, 2), &[f.int(1), f.int(0)]).unwrap().is_none());
    }

    #[test]
    fn span_of_products_examples() {
        let f = Field::Rational;
        let units: Vec<Mat> = (0..4)
            .map(|k| Mat::from_fn(f, 2, 2, |i, j| if i * 2 + j == k { f.one() } else { f.zero() }))
            .collect();
        assert_eq!(span_of_products(&units, &units).unwrap().dim(), 4);
        let id = Mat::identity(f, 2);
        let s = span_of_products(std::slice::from_ref(&id), std::slice::from_ref(&id)).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(id.flat()));
        assert_eq!(span_of_products(&[Mat::zeros(f, 2, 2)], &[id]).unwrap().dim(), 0);
    }

    #[test]
    fn intertwiners_of_matrix_units() {
        let f = Field::Rational;
        let e12 = Mat::from_ints(f, &[&[0, 1], &[0, 0]]);
        let s = intertwiners(f, 2, 2, &[(&e12, &e12)]);
        assert_eq!(s.dim(), 2);
    }

    fn small_mat(f: Field) -> impl Strategy<Value = Mat> {
        (1usize..5, 1usize..6).prop_flat_map(move |(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |v| Mat::from_fn(f, r, c, |i, j| f.int(v[i * c + j])))
        })
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(a in small_mat(Field::Rational)) {
            let k = kernel(&a);
            prop_assert_eq!(rank(&a) + k.dim(), a.cols());
            for v in k.basis() {
                prop_assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn dense_and_sparse_kernels_agree(a in small_mat(Field::Prime(5))) {
            let sk = sparse_kernel(a.field(), a.cols(), a.sparse_rows());
            prop_assert_eq!(kernel(&a), sk);
        }

        #[test]
        fn bareiss_matches_sparse_elimination(a in small_mat(Field::Rational)) {
            let (rows, _) = rref(&a);
            let s = Subspace::from_rows(a.field(), a.cols(), &(0..a.rows()).map(|i| a.row(i).to_vec()).collect::<Vec<_>>());
            prop_assert_eq!(s.basis(), rows);
        }

        #[test]
        fn row_order_does_not_matter(a in small_mat(Field::Rational)) {
            let rows: Vec<Vec<Scalar>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
            let mut rev = rows.clone();
            rev.reverse();
            prop_assert_eq!(Subspace::from_rows(a.field(), a.cols(), &rows), Subspace::from_rows(a.field(), a.cols(), &rev));
        }

        #[test]
        fn member_reconstructs(a in small_mat(Field::Rational), c in prop::collection::vec(-3i64..4, 5)) {
            let rows: Vec<Vec<Scalar>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
            let s = Subspace::from_rows(a.field(), a.cols(), &rows);
            let mut v = vec![Field::Rational.zero(); a.cols()];
            for (row, k) in rows.iter().zip(&c) {
                for (x, y) in v.iter_mut().zip(row) {
                    *x += &(y * &Field::Rational.int(*k));
                }
            }
            let coeffs = member(&s, &v).unwrap().unwrap();
            prop_assert_eq!(s.element(&coeffs), v);
        }

        #[test]
        fn solve_round_trip(a in small_mat(Field::Rational), seed in prop::collection::vec(-3i64..4, 6)) {
            let x: Vec<Scalar> = (0..a.cols()).map(|i| Field::Rational.int(seed[i])).collect();
            let b = a.mul_vec(&x);
            let y = solve(&a, &b).unwrap().unwrap();
            prop_assert_eq!(a.mul_vec(&y), b);
        }
    }
}
