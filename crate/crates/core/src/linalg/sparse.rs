use std::collections::BTreeMap;

use super::matrix::Matrix;
use crate::scalar::ExactField;

/// Sparse vector as a sorted list of (index, nonzero value).
pub type SparseVec<F> = Vec<(usize, F)>;

pub fn sparse_from_dense<F: ExactField>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse<F: ExactField>(v: &SparseVec<F>, len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a - f * b`, merged.
pub fn axpy<F: ExactField>(a: &SparseVec<F>, f: &F, b: &SparseVec<F>) -> SparseVec<F> {
    if f.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, -f.mul_ref(&b[j].1)));
            j += 1;
        } else {
            let mut v = a[i].1.clone();
            v.sub_mul_assign(f, &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale_sparse<F: ExactField>(v: &SparseVec<F>, s: &F) -> SparseVec<F> {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul_ref(s))).collect()
}

/// Sum of scaled sparse vectors, accumulated column-wise.
pub fn combine<F: ExactField>(terms: impl IntoIterator<Item = (F, SparseVec<F>)>) -> SparseVec<F> {
    let mut acc: BTreeMap<usize, F> = BTreeMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (i, x) in v {
            let e = acc.entry(i).or_insert_with(F::zero);
            *e = e.add_ref(&c.mul_ref(&x));
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Row-sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<SparseVec<F>>,
}

impl<F: ExactField> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_dense(m: &Matrix<F>) -> Self {
        SparseMatrix { rows: m.rows(), cols: m.cols(), data: (0..m.rows()).map(|i| sparse_from_dense(m.row(i))).collect() }
    }

    pub fn to_dense(&self) -> Matrix<F> {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    /// Builds from columns given as sparse vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[SparseVec<F>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m.data[*i].push((j, x.clone()));
            }
        }
        m
    }

    /// Adds `x` to entry (i, j).
    pub fn add_entry(&mut self, i: usize, j: usize, x: F) {
        if x.is_zero() {
            return;
        }
        let row = &mut self.data[i];
        match row.binary_search_by_key(&j, |e| e.0) {
            Ok(p) => {
                let v = row[p].1.add_ref(&x);
                if v.is_zero() {
                    row.remove(p);
                } else {
                    row[p].1 = v;
                }
            }
            Err(p) => row.insert(p, (j, x)),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        match self.data[i].binary_search_by_key(&j, |e| e.0) {
            Ok(p) => self.data[i][p].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r {
                t.data[*j].push((i, x.clone()));
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch in sparse mul");
        let data = self
            .data
            .iter()
            .map(|r| combine(r.iter().map(|(k, a)| (a.clone(), o.data[*k].clone()))))
            .collect();
        SparseMatrix { rows: self.rows, cols: o.cols, data }
    }

    /// Image of a sparse vector: `self * v`.
    pub fn apply(&self, v: &SparseVec<F>) -> SparseVec<F> {
        assert!(v.iter().all(|(i, _)| *i < self.cols));
        let mut out = Vec::new();
        for (i, r) in self.data.iter().enumerate() {
            let mut s = F::zero();
            let (mut a, mut b) = (0, 0);
            while a < r.len() && b < v.len() {
                if r[a].0 < v[b].0 {
                    a += 1;
                } else if v[b].0 < r[a].0 {
                    b += 1;
                } else {
                    s = s.add_ref(&r[a].1.mul_ref(&v[b].1));
                    a += 1;
                    b += 1;
                }
            }
            if !s.is_zero() {
                out.push((i, s));
            }
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| axpy(a, &F::one(), b)).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        let mut order: Vec<usize> = (0..self.rows).collect();
        order.sort_by_key(|&i| self.data[i].len());
        for i in order {
            e.insert(self.data[i].clone());
        }
        e.rank()
    }

    /// Basis of the right kernel, as sparse vectors of length `cols`.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        let mut e = Echelon::new(self.cols);
        for r in &self.data {
            e.insert(r.clone());
        }
        e.complement_kernel()
    }
}

/// Incremental row echelon form with pivot rows normalized to leading 1.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub cols: usize,
    pivots: BTreeMap<usize, SparseVec<F>>,
}

impl<F: ExactField> Echelon<F> {
    pub fn new(cols: usize) -> Self {
        Echelon { cols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivots.contains_key(&c)
    }

    /// Reduces until the leading entry is not a pivot column. Returns the
    /// partially reduced vector (empty if it lies in the span).
    fn reduce_leading(&self, mut v: SparseVec<F>) -> SparseVec<F> {
        while let Some((c, x)) = v.first().cloned() {
            match self.pivots.get(&c) {
                Some(p) => v = axpy(&v, &x, p),
                None => break,
            }
        }
        v
    }

    /// Inserts a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: SparseVec<F>) -> bool {
        let v = self.reduce_leading(v);
        match v.first() {
            None => false,
            Some((c, x)) => {
                let c = *c;
                let inv = x.inv();
                self.pivots.insert(c, scale_sparse(&v, &inv));
                true
            }
        }
    }

    pub fn insert_dense(&mut self, v: &[F]) -> bool {
        self.insert(sparse_from_dense(v))
    }

    /// Full reduction: the result has no entries in pivot columns, and is
    /// the canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut v = v.clone();
        let mut k = 0;
        while k < v.len() {
            let (c, x) = v[k].clone();
            if let Some(p) = self.pivots.get(&c) {
                v = axpy(&v, &x, p);
            } else {
                k += 1;
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce_leading(v.clone()).is_empty()
    }

    /// Back-substitutes so that every pivot row has zeros in other pivot
    /// columns. The result is the unique reduced echelon basis.
    pub fn make_reduced(&mut self) {
        let keys: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &c in &keys {
            let row = self.pivots[&c].clone();
            let mut r = vec![row[0].clone()];
            let tail: SparseVec<F> = row[1..].to_vec();
            let tail = self.reduce(&tail);
            r.extend(tail);
            self.pivots.insert(c, r);
        }
    }

    /// Pivot rows in increasing pivot order (call `make_reduced` first for
    /// the canonical form).
    pub fn rows(&self) -> Vec<SparseVec<F>> {
        self.pivots.values().cloned().collect()
    }

    pub fn pivot_row(&self, c: usize) -> Option<&SparseVec<F>> {
        self.pivots.get(&c)
    }

    /// Kernel of the matrix whose rows span this echelon form.
    pub fn complement_kernel(&self) -> Vec<SparseVec<F>> {
        let mut red = self.clone();
        red.make_reduced();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !red.pivots.contains_key(c)) {
            let mut v: SparseVec<F> = Vec::new();
            for (&p, row) in &red.pivots {
                if let Ok(k) = row.binary_search_by_key(&free, |e| e.0) {
                    v.push((p, -row[k].1.clone()));
                }
            }
            v.push((free, F::one()));
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn dense(rows: &[Vec<i64>]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect())
    }

    // Rank via minors of a small matrix: the largest k with a nonzero k x k minor.
    fn rank_by_minors(m: &Matrix<BigRational>) -> usize {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut best = 0;
        for k in 1..=m.rows().min(m.cols()) {
            let mut found = false;
            'outer: for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    let sub = Matrix::from_fn(k, k, |i, j| m[(rs[i], cs[j])].clone());
                    if sub.determinant() != q(0) {
                        found = true;
                        break 'outer;
                    }
                }
            }
            if found {
                best = k;
            } else {
                break;
            }
        }
        best
    }

    proptest! {
        #[test]
        fn rank_matches_minor_oracle(rows in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 1..5)) {
            let m = dense(&rows);
            let r = rank_by_minors(&m);
            prop_assert_eq!(m.rank(), r);
            prop_assert_eq!(m.rref().1.len(), r);
            let s = SparseMatrix::from_dense(&m);
            prop_assert_eq!(s.transpose().rank(), r);
            let k = s.kernel();
            prop_assert_eq!(k.len(), m.cols() - r);
            for v in &k {
                prop_assert!(s.apply(v).is_empty());
            }
        }

        #[test]
        fn reduce_is_canonical(rows in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 1..4),
                               c in prop::collection::vec(-2i64..3, 4)) {
            let m = dense(&rows);
            let mut e = Echelon::new(5);
            for i in 0..m.rows() {
                e.insert_dense(m.row(i));
            }
            // any vector plus a span element reduces to the same remainder
            let v: SparseVec<BigRational> = sparse_from_dense(&[q(1), q(-1), q(2), q(0), q(3)]);
            let mut w = v.clone();
            for (i, ci) in c.iter().enumerate().take(m.rows()) {
                w = axpy(&w, &q(-*ci), &sparse_from_dense(m.row(i)));
            }
            prop_assert_eq!(e.reduce(&v), e.reduce(&w));
        }
    }
}
