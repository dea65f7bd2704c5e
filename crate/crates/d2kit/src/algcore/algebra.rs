use crate::exactla::{
    collect_sparse, sparse_from_dense, sparse_kernel, sparse_to_dense, unit_vec, Accum, Echelon, Field, Mat, SVec, Scalar,
    Subspace,
};

use super::AlgError;

/// Finite-dimensional unital associative algebra given by structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Vec<SVec>,
    unit: Vec<Scalar>,
}

impl Algebra {
    /// Builds and validates an algebra from the products `e_i e_j` (at `i·dim + j`) and the unit.
    pub fn from_table(field: Field, dim: usize, table: Vec<SVec>, unit: Vec<Scalar>) -> Result<Algebra, AlgError> {
        let a = Algebra::from_table_unchecked(field, dim, table, unit)?;
        a.validate()?;
        Ok(a)
    }

    /// Builds without the cubic associativity sweep; shape and unit laws are still checked.
    pub fn from_table_unchecked(field: Field, dim: usize, table: Vec<SVec>, unit: Vec<Scalar>) -> Result<Algebra, AlgError> {
        if dim == 0 {
            return Err(AlgError::ZeroRing);
        }
        if table.len() != dim * dim || unit.len() != dim {
            return Err(AlgError::Shape(format!("table of {} entries and unit of length {} for dimension {dim}", table.len(), unit.len())));
        }
        if table.iter().flatten().any(|(k, _)| *k >= dim) {
            return Err(AlgError::Shape("structure constant index out of range".into()));
        }
        let a = Algebra { field, dim, table, unit };
        a.check_unit()?;
        Ok(a)
    }

    /// Structure constants as `(i, j, k, c)` meaning `e_i e_j` has coefficient `c` on `e_k`.
    pub fn from_constants(field: Field, dim: usize, consts: &[(usize, usize, usize, Scalar)], unit: Vec<Scalar>) -> Result<Algebra, AlgError> {
        let mut entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); dim * dim];
        for (i, j, k, c) in consts {
            if *i >= dim || *j >= dim {
                return Err(AlgError::Shape(format!("structure constant ({i},{j},{k}) out of range")));
            }
            entries[i * dim + j].push((*k, c.clone()));
        }
        Algebra::from_table(field, dim, entries.into_iter().map(collect_sparse).collect(), unit)
    }

    /// The algebra structure induced on a subspace closed under `product`, in the echelon basis.
    pub fn on_subspace(
        space: &Subspace,
        unit: &[Scalar],
        product: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>,
    ) -> Result<Algebra, AlgError> {
        let n = space.dim();
        let basis = space.basis();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = product(&basis[i], &basis[j]);
                let c = space.coords(&p).ok_or(AlgError::NotClosed { i, j })?;
                table.push(sparse_from_dense(&c));
            }
        }
        let u = space.coords(unit).ok_or(AlgError::NotUnital)?;
        Algebra::from_table_unchecked(space.field(), n, table, u)
    }

    pub fn validate(&self) -> Result<(), AlgError> {
        self.check_unit()?;
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = &self.table[i * n + j];
                for k in 0..n {
                    let left = self.mul_sparse(ij, &vec![(k, self.field.one())]);
                    let jk = &self.table[j * n + k];
                    let right = self.mul_sparse(&vec![(i, self.field.one())], jk);
                    if left != right {
                        return Err(AlgError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    fn check_unit(&self) -> Result<(), AlgError> {
        if self.unit.iter().all(|x| x.is_zero()) {
            return Err(AlgError::ZeroRing);
        }
        let u = sparse_from_dense(&self.unit);
        for i in 0..self.dim {
            let e = vec![(i, self.field.one())];
            if self.mul_sparse(&u, &e) != e {
                return Err(AlgError::LeftUnit { i });
            }
            if self.mul_sparse(&e, &u) != e {
                return Err(AlgError::RightUnit { i });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> Vec<Scalar> {
        self.unit.clone()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec![self.field.zero(); self.dim]
    }

    pub fn e(&self, i: usize) -> Vec<Scalar> {
        unit_vec(self.field, self.dim, i)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SVec {
        &self.table[i * self.dim + j]
    }

    pub fn table(&self) -> &[SVec] {
        &self.table
    }

    pub fn mul_sparse(&self, x: &SVec, y: &SVec) -> SVec {
        let mut acc = Accum::new(self.dim);
        for (i, a) in x {
            for (j, b) in y {
                let ab = a * b;
                acc.add_scaled(&ab, &self.table[i * self.dim + j]);
            }
        }
        acc.take()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        sparse_to_dense(self.field, &self.mul_sparse(&sparse_from_dense(x), &sparse_from_dense(y)), self.dim)
    }

    pub fn mul3(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.mul(&self.mul(x, y), z)
    }

    /// Matrix of `y ↦ x·y`.
    pub fn lmat(&self, x: &[Scalar]) -> Mat {
        let xs = sparse_from_dense(x);
        let cols: Vec<SVec> = (0..self.dim).map(|j| self.mul_sparse(&xs, &vec![(j, self.field.one())])).collect();
        Mat::from_sparse_cols(self.field, self.dim, &cols)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn rmat(&self, x: &[Scalar]) -> Mat {
        let xs = sparse_from_dense(x);
        let cols: Vec<SVec> = (0..self.dim).map(|j| self.mul_sparse(&vec![(j, self.field.one())], &xs)).collect();
        Mat::from_sparse_cols(self.field, self.dim, &cols)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.table[i * self.dim + j] == self.table[j * self.dim + i]))
    }

    /// Subalgebra generated by the given elements (always contains 1).
    pub fn generated(&self, elems: &[Vec<Scalar>]) -> Subspace {
        let gens: Vec<SVec> = elems.iter().map(|g| sparse_from_dense(g)).collect();
        let mut e = Echelon::new(self.field, self.dim);
        let mut queue = vec![sparse_from_dense(&self.unit)];
        e.insert(queue[0].clone());
        while let Some(v) = queue.pop() {
            for g in &gens {
                let w = self.mul_sparse(&v, g);
                if e.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        e.subspace()
    }

    /// Greedy algebra generators chosen among the basis vectors.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = self.generated(&[]);
        for i in 0..self.dim {
            if span.dim() == self.dim {
                break;
            }
            if !span.contains(&self.e(i)) {
                gens.push(i);
                let g: Vec<Vec<Scalar>> = gens.iter().map(|&k| self.e(k)).collect();
                span = self.generated(&g);
            }
        }
        gens
    }

    /// Elements commuting with every element of `elems`.
    pub fn centralizer(&self, elems: &[Vec<Scalar>]) -> Subspace {
        let mut rows: Vec<SVec> = Vec::new();
        for s in elems {
            let d = self.rmat(s).sub(&self.lmat(s));
            rows.extend(d.sparse_rows().into_iter().filter(|r| !r.is_empty()));
        }
        sparse_kernel(self.field, self.dim, rows)
    }

    pub fn center(&self) -> Subspace {
        let gens: Vec<Vec<Scalar>> = self.generators().into_iter().map(|i| self.e(i)).collect();
        self.centralizer(&gens)
    }

    /// Whether the subspace contains 1 and is closed under multiplication.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        if !s.contains(&self.unit) {
            return false;
        }
        let b = s.basis();
        b.iter().all(|x| b.iter().all(|y| s.contains(&self.mul(x, y))))
    }

    pub fn is_invertible(&self, x: &[Scalar]) -> bool {
        self.inverse(x).is_some()
    }

    pub fn inverse(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let y = crate::exactla::solve(&self.lmat(x), &self.unit).ok()??;
        if self.mul(&y, x) == self.unit {
            Some(y)
        } else {
            None
        }
    }

    pub fn matrix_algebra(field: Field, n: usize) -> Algebra {
        let d = n * n;
        let mut table = vec![Vec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    table[(i * n + j) * d + (j * n + l)] = vec![(i * n + l, field.one())];
                }
            }
        }
        let mut unit = vec![field.zero(); d];
        for i in 0..n {
            unit[i * n + i] = field.one();
        }
        Algebra::from_table_unchecked(field, d, table, unit).expect("matrix algebra")
    }

    /// Group algebra from a multiplication table `table[g][h] = gh` on `0..n`.
    pub fn group_algebra(field: Field, table: &[Vec<usize>]) -> Result<Algebra, AlgError> {
        let n = table.len();
        if table.iter().any(|r| r.len() != n || r.iter().any(|&k| k >= n)) {
            return Err(AlgError::Shape("group table must be square with entries in range".into()));
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| AlgError::Shape("group table has no identity".into()))?;
        let t = (0..n * n).map(|ij| vec![(table[ij / n][ij % n], field.one())]).collect();
        Algebra::from_table(field, n, t, unit_vec(field, n, id))
    }

    /// Cyclic group algebra `K[C_n]` with basis `g^0, …, g^{n-1}`.
    pub fn cyclic_group(field: Field, n: usize) -> Algebra {
        let t: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Algebra::group_algebra(field, &t).expect("cyclic group")
    }

    /// `K^n` with its standard idempotent basis.
    pub fn diagonal(field: Field, n: usize) -> Algebra {
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            table[i * n + i] = vec![(i, field.one())];
        }
        Algebra::from_table_unchecked(field, n, table, vec![field.one(); n]).expect("diagonal algebra")
    }

    /// `K[x]/(x^n)` with basis `1, x, …, x^{n-1}`.
    pub fn truncated_poly(field: Field, n: usize) -> Algebra {
        let mut table = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                if i + j < n {
                    table[i * n + j] = vec![(i + j, field.one())];
                }
            }
        }
        Algebra::from_table_unchecked(field, n, table, unit_vec(field, n, 0)).expect("truncated polynomial algebra")
    }

    pub fn product(&self, o: &Algebra) -> Algebra {
        let (a, b) = (self.dim, o.dim);
        let n = a + b;
        let mut table = vec![Vec::new(); n * n];
        for i in 0..a {
            for j in 0..a {
                table[i * n + j] = self.table[i * a + j].clone();
            }
        }
        for i in 0..b {
            for j in 0..b {
                table[(a + i) * n + a + j] = o.table[i * b + j].iter().map(|(k, x)| (a + k, x.clone())).collect();
            }
        }
        let mut unit = self.unit.clone();
        unit.extend(o.unit.iter().cloned());
        Algebra::from_table_unchecked(self.field, n, table, unit).expect("product algebra")
    }

    pub fn tensor(&self, o: &Algebra) -> Algebra {
        let (a, b) = (self.dim, o.dim);
        let n = a * b;
        let mut table = vec![Vec::new(); n * n];
        for i in 0..a {
            for j in 0..b {
                for k in 0..a {
                    for l in 0..b {
                        let mut entries = Vec::new();
                        for (p, x) in &self.table[i * a + k] {
                            for (q, y) in &o.table[j * b + l] {
                                entries.push((p * b + q, x * y));
                            }
                        }
                        table[(i * b + j) * n + k * b + l] = collect_sparse(entries);
                    }
                }
            }
        }
        let mut unit = vec![self.field.zero(); n];
        for (i, x) in self.unit.iter().enumerate() {
            for (j, y) in o.unit.iter().enumerate() {
                unit[i * b + j] = x * y;
            }
        }
        Algebra::from_table_unchecked(self.field, n, table, unit).expect("tensor algebra")
    }

    pub fn opposite(&self) -> Algebra {
        let n = self.dim;
        let table = (0..n * n).map(|ij| self.table[(ij % n) * n + ij / n].clone()).collect();
        Algebra { field: self.field, dim: n, table, unit: self.unit.clone() }
    }

    /// Upper triangular `n×n` matrices as a subspace of the matrix units of `M_n`.
    pub fn upper_triangular_in(field: Field, n: usize) -> Subspace {
        let rows: Vec<Vec<Scalar>> = (0..n)
            .flat_map(|i| (i..n).map(move |j| i * n + j))
            .map(|k| unit_vec(field, n * n, k))
            .collect();
        Subspace::from_rows(field, n * n, &rows)
    }
}

/// Unital algebra homomorphism given by its matrix (codomain × domain).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    pub matrix: Mat,
}

impl AlgebraMap {
    pub fn new(matrix: Mat) -> AlgebraMap {
        AlgebraMap { matrix }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x)
    }

    pub fn check(&self, dom: &Algebra, cod: &Algebra) -> Result<(), AlgError> {
        if self.matrix.rows() != cod.dim() || self.matrix.cols() != dom.dim() {
            return Err(AlgError::Shape(format!(
                "map matrix is {}×{}, expected {}×{}",
                self.matrix.rows(),
                self.matrix.cols(),
                cod.dim(),
                dom.dim()
            )));
        }
        if self.apply(&dom.one()) != cod.one() {
            return Err(AlgError::NotUnital);
        }
        let img: Vec<Vec<Scalar>> = (0..dom.dim()).map(|i| self.matrix.col(i)).collect();
        for i in 0..dom.dim() {
            for j in 0..dom.dim() {
                let lhs = self.apply(&sparse_to_dense(dom.field(), dom.basis_product(i, j), dom.dim()));
                if lhs != cod.mul(&img[i], &img[j]) {
                    return Err(AlgError::NotMultiplicative { i, j });
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.matrix.cols()
    }

    /// Image as a subspace of the codomain.
    pub fn image(&self) -> Subspace {
        let cols: Vec<Vec<Scalar>> = (0..self.matrix.cols()).map(|j| self.matrix.col(j)).collect();
        Subspace::from_rows(self.matrix.field(), self.matrix.rows(), &cols)
    }
}
