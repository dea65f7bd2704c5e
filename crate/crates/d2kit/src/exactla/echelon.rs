use super::scalar::{Field, Scalar};
use super::sparse::{sparse_from_dense, sparse_to_dense, Accum, SVec};
use super::{LaError, Mat};

const NONE: u32 = u32::MAX;

/// `v[..at]` followed by `v[at..] + c·row`, where every index of `row` is at least `v[at].0`.
fn axpy_tail(v: &SVec, at: usize, c: &Scalar, row: &SVec) -> SVec {
    let mut out: SVec = Vec::with_capacity(v.len() + row.len());
    out.extend_from_slice(&v[..at]);
    let (mut i, mut j) = (at, 0);
    while i < v.len() || j < row.len() {
        if j == row.len() || (i < v.len() && v[i].0 < row[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || row[j].0 < v[i].0 {
            out.push((row[j].0, c * &row[j].1));
            j += 1;
        } else {
            let s = &v[i].1 + &(c * &row[j].1);
            if !s.is_zero() {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental sparse row echelon form. Optionally records every stored row as a
/// combination of the inserted vectors, so membership can be expressed in terms of them.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    ncols: usize,
    rows: Vec<SVec>,
    combos: Vec<SVec>,
    track: bool,
    inserted: usize,
    pivot_row: Vec<u32>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize) -> Echelon {
        Echelon { field, ncols, rows: Vec::new(), combos: Vec::new(), track: false, inserted: 0, pivot_row: vec![NONE; ncols] }
    }

    pub fn tracked(field: Field, ncols: usize) -> Echelon {
        Echelon { track: true, ..Echelon::new(field, ncols) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Eliminates every pivot column of `v`; returns the remainder and the steps `(row, coefficient)`.
    fn reduce(&self, mut v: SVec) -> (SVec, Vec<(usize, Scalar)>) {
        let mut steps = Vec::new();
        let mut idx = 0;
        while idx < v.len() {
            let r = self.pivot_row[v[idx].0];
            if r == NONE {
                idx += 1;
                continue;
            }
            let r = r as usize;
            let c = v[idx].1.clone();
            v = axpy_tail(&v, idx, &-&c, &self.rows[r]);
            steps.push((r, c));
        }
        (v, steps)
    }

    /// Inserts a vector; returns whether it raised the rank.
    pub fn insert(&mut self, v: SVec) -> bool {
        debug_assert!(v.iter().all(|(i, _)| *i < self.ncols));
        let g = self.inserted;
        self.inserted += 1;
        let (rem, steps) = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        let inv = rem[0].1.inv().expect("nonzero pivot");
        let row: SVec = rem.iter().map(|(i, x)| (*i, x * &inv)).collect();
        if self.track {
            let mut acc = Accum::new(self.inserted);
            acc.add(g, &self.field.one());
            for (r, c) in &steps {
                acc.add_scaled(&-c, &self.combos[*r]);
            }
            let combo = acc.take().into_iter().map(|(i, x)| (i, &x * &inv)).collect();
            self.combos.push(combo);
        }
        self.pivot_row[row[0].0] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(sparse_from_dense(v))
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v.clone()).0.is_empty()
    }

    /// Coefficients over the inserted vectors expressing `v`, when `v` lies in their span.
    pub fn express(&self, v: &SVec) -> Option<SVec> {
        assert!(self.track, "express needs a tracked echelon");
        let (rem, steps) = self.reduce(v.clone());
        if !rem.is_empty() {
            return None;
        }
        let mut acc = Accum::new(self.inserted.max(1));
        for (r, c) in &steps {
            acc.add_scaled(c, &self.combos[*r]);
        }
        Some(acc.take())
    }

    /// Canonical reduced echelon form of the span.
    pub fn subspace(&self) -> Subspace {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut work = Echelon {
            field: self.field,
            ncols: self.ncols,
            rows: self.rows.clone(),
            combos: Vec::new(),
            track: false,
            inserted: self.inserted,
            pivot_row: self.pivot_row.clone(),
        };
        for &r in order.iter().rev() {
            let row = std::mem::take(&mut work.rows[r]);
            let lead = row[0].clone();
            let (tail, _) = work.reduce(row[1..].to_vec());
            let mut full = vec![lead];
            full.extend(tail);
            work.rows[r] = full;
        }
        let pivots: Vec<usize> = order.iter().map(|&r| self.rows[r][0].0).collect();
        let rows = order.into_iter().map(|r| std::mem::take(&mut work.rows[r])).collect();
        Subspace { field: self.field, ambient: self.ncols, rows, pivots }
    }
}

/// A subspace of `K^n` stored by its reduced row echelon basis. Two subspaces are
/// equal exactly when their echelon data are identical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<SVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        let one = field.one();
        Subspace { field, ambient, rows: (0..ambient).map(|i| vec![(i, one.clone())]).collect(), pivots: (0..ambient).collect() }
    }

    pub fn from_sparse_rows<I: IntoIterator<Item = SVec>>(field: Field, ambient: usize, rows: I) -> Subspace {
        let mut e = Echelon::new(field, ambient);
        for r in rows {
            e.insert(r);
        }
        e.subspace()
    }

    pub fn from_rows(field: Field, ambient: usize, rows: &[Vec<Scalar>]) -> Subspace {
        Subspace::from_sparse_rows(field, ambient, rows.iter().map(|r| sparse_from_dense(r)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SVec] {
        &self.rows
    }

    pub fn basis_vec(&self, i: usize) -> Vec<Scalar> {
        sparse_to_dense(self.field, &self.rows[i], self.ambient)
    }

    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis_vec(i)).collect()
    }

    pub fn to_mat(&self) -> Mat {
        Mat::from_rows(self.field, self.ambient, self.basis())
    }

    /// Coordinates with respect to the echelon basis, or `None` when outside.
    pub fn coords_sparse(&self, v: &SVec) -> Option<Vec<Scalar>> {
        let mut c = vec![self.field.zero(); self.dim()];
        let mut acc = Accum::new(self.ambient);
        for (i, x) in v {
            acc.add(*i, x);
            if let Ok(k) = self.pivots.binary_search(i) {
                c[k] = x.clone();
            }
        }
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                acc.add_scaled(&-ck, &self.rows[k]);
            }
        }
        if acc.take().is_empty() {
            Some(c)
        } else {
            None
        }
    }

    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.coords_sparse(&sparse_from_dense(v))
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn element_sparse(&self, c: &[Scalar]) -> SVec {
        let mut acc = Accum::new(self.ambient);
        for (k, ck) in c.iter().enumerate() {
            if !ck.is_zero() {
                acc.add_scaled(ck, &self.rows[k]);
            }
        }
        acc.take()
    }

    pub fn element(&self, c: &[Scalar]) -> Vec<Scalar> {
        sparse_to_dense(self.field, &self.element_sparse(c), self.ambient)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.coords_sparse(r).is_some())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::from_sparse_rows(self.field, self.ambient, self.rows.iter().chain(other.rows.iter()).cloned())
    }

    /// Intersection, computed as the kernel of the stacked coordinate map.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let (a, b) = (self.dim(), other.dim());
        let mut eqs: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ambient];
        for (k, r) in self.rows.iter().enumerate() {
            for (i, x) in r {
                eqs[*i].push((k, x.clone()));
            }
        }
        for (k, r) in other.rows.iter().enumerate() {
            for (i, x) in r {
                eqs[*i].push((a + k, -x));
            }
        }
        let ker = sparse_kernel(self.field, a + b, eqs.into_iter().filter(|e| !e.is_empty()).collect());
        Subspace::from_sparse_rows(
            self.field,
            self.ambient,
            ker.rows.iter().map(|kv| {
                let c: Vec<Scalar> = (0..a)
                    .map(|k| kv.iter().find(|(i, _)| *i == k).map(|(_, x)| x.clone()).unwrap_or_else(|| self.field.zero()))
                    .collect();
                self.element_sparse(&c)
            }),
        )
    }
}

/// Kernel of the sparse system whose equations are `rows` (each a row of the coefficient matrix).
pub fn sparse_kernel(field: Field, ncols: usize, rows: Vec<SVec>) -> Subspace {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    let rref = e.subspace();
    let mut is_pivot = vec![false; ncols];
    for &p in rref.pivots() {
        is_pivot[p] = true;
    }
    let mut kv: Vec<SVec> = Vec::new();
    let mut slot = vec![usize::MAX; ncols];
    for f in 0..ncols {
        if !is_pivot[f] {
            slot[f] = kv.len();
            kv.push(vec![(f, field.one())]);
        }
    }
    for (k, row) in rref.rows().iter().enumerate() {
        let p = rref.pivots()[k];
        for (c, x) in &row[1..] {
            kv[slot[*c]].push((p, -x));
        }
    }
    for v in kv.iter_mut() {
        v.sort_by_key(|e| e.0);
    }
    Subspace::from_sparse_rows(field, ncols, kv)
}

pub fn check_len(expected: usize, got: usize) -> Result<(), LaError> {
    if expected == got {
        Ok(())
    } else {
        Err(LaError::Dimension { expected, got })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.int(x)).collect()
    }

    #[test]
    fn canonical_regardless_of_order() {
        let f = Field::Rational;
        let a = Subspace::from_rows(f, 3, &[v(f, &[1, 2, 3]), v(f, &[0, 1, 1])]);
        let b = Subspace::from_rows(f, 3, &[v(f, &[1, 3, 4]), v(f, &[2, 4, 6]), v(f, &[1, 2, 3])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.pivots(), &[0, 1]);
    }

    #[test]
    fn tracked_express() {
        let f = Field::Rational;
        let mut e = Echelon::tracked(f, 2);
        e.insert_dense(&v(f, &[1, 1]));
        e.insert_dense(&v(f, &[0, 1]));
        let c = e.express(&sparse_from_dense(&v(f, &[2, 3]))).unwrap();
        assert_eq!(c, vec![(0, f.int(2)), (1, f.int(1))]);
    }

    #[test]
    fn kernel_and_intersection() {
        let f = Field::Rational;
        let k = sparse_kernel(f, 2, vec![vec![(0, f.int(1)), (1, f.int(1))]]);
        assert_eq!(k.basis(), vec![v(f, &[1, -1])]);
        let x = Subspace::from_rows(f, 3, &[v(f, &[1, 0, 0]), v(f, &[0, 1, 0])]);
        let y = Subspace::from_rows(f, 3, &[v(f, &[0, 1, 0]), v(f, &[0, 0, 1])]);
        assert_eq!(x.intersect(&y).basis(), vec![v(f, &[0, 1, 0])]);
    }
}
