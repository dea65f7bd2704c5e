use super::scalar::{Field, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SVec = Vec<(usize, Scalar)>;

pub fn sparse_from_dense(v: &[Scalar]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(field: Field, v: &SVec, len: usize) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `x + c·y`.
pub fn axpy(x: &SVec, c: &Scalar, y: &SVec) -> SVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, c * &y[j].1));
            j += 1;
        } else {
            let s = &x[i].1 + &(c * &y[j].1);
            if !s.is_zero() {
                out.push((x[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SVec, c: &Scalar) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn collect_sparse(mut entries: Vec<(usize, Scalar)>) -> SVec {
    entries.sort_by_key(|e| e.0);
    let mut out: SVec = Vec::with_capacity(entries.len());
    for (i, x) in entries {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y += &x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !x.is_zero());
    out
}

/// Accumulator for sums of many sparse vectors with a dense scratch buffer.
pub struct Accum {
    vals: Vec<Option<Scalar>>,
    touched: Vec<usize>,
}

impl Accum {
    pub fn new(len: usize) -> Accum {
        Accum { vals: vec![None; len], touched: Vec::new() }
    }

    pub fn add(&mut self, i: usize, x: &Scalar) {
        match &mut self.vals[i] {
            Some(y) => *y += x,
            slot @ None => {
                *slot = Some(x.clone());
                self.touched.push(i);
            }
        }
    }

    pub fn add_scaled(&mut self, c: &Scalar, v: &SVec) {
        for (i, x) in v {
            let t = c * x;
            self.add(*i, &t);
        }
    }

    pub fn take(&mut self) -> SVec {
        self.touched.sort_unstable();
        let mut out = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            if let Some(x) = self.vals[i].take() {
                if !x.is_zero() {
                    out.push((i, x));
                }
            }
        }
        self.touched.clear();
        out
    }
}
