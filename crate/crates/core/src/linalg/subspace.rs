use super::matrix::Matrix;
use super::sparse::{dense_from_sparse, sparse_from_dense, Echelon};
use crate::scalar::ExactField;

/// A linear subspace of F^n stored by its reduced row echelon basis, which
/// makes equality of subspaces equality of representations.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<Vec<F>>,
}

impl<F: ExactField> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
        Subspace { ambient, basis }
    }

    pub fn span<I: IntoIterator<Item = Vec<F>>>(ambient: usize, vectors: I) -> Self {
        let mut e = Echelon::new(ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            e.insert(sparse_from_dense(&v));
        }
        e.make_reduced();
        let basis = e.rows().iter().map(|r| dense_from_sparse(r, ambient)).collect();
        Subspace { ambient, basis }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix<F>) -> Self {
        Self::span(m.rows(), (0..m.cols()).map(|j| m.column(j)))
    }

    pub fn kernel_of(m: &Matrix<F>) -> Self {
        Self::span(m.cols(), m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<F>] {
        &self.basis
    }

    /// Basis vectors as the columns of an ambient x dim matrix.
    pub fn basis_matrix(&self) -> Matrix<F> {
        Matrix::from_rows_with_cols(self.basis.clone(), self.ambient).transpose()
    }

    pub fn contains(&self, v: &[F]) -> bool {
        let mut e = Echelon::new(self.ambient);
        for b in &self.basis {
            e.insert_dense(b);
        }
        e.contains(&sparse_from_dense(v))
    }

    pub fn contains_subspace(&self, o: &Self) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Self) -> Self {
        assert_eq!(self.ambient, o.ambient);
        Self::span(self.ambient, self.basis.iter().chain(&o.basis).cloned())
    }

    /// Vectors orthogonal to the subspace under the standard pairing.
    pub fn annihilator(&self) -> Self {
        let m = Matrix::from_rows_with_cols(self.basis.clone(), self.ambient);
        Self::kernel_of(&m)
    }

    pub fn intersect(&self, o: &Self) -> Self {
        assert_eq!(self.ambient, o.ambient);
        self.annihilator().sum(&o.annihilator()).annihilator()
    }

    /// {x : m x ∈ self}, for m: F^k -> F^ambient.
    pub fn preimage(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.rows(), self.ambient, "preimage: matrix target does not match");
        let ann = self.annihilator();
        if ann.is_zero() {
            return Self::full(m.cols());
        }
        let a = Matrix::from_rows_with_cols(ann.basis.clone(), self.ambient);
        Self::kernel_of(&a.mul(m))
    }

    /// m(self), for m: F^ambient -> F^k.
    pub fn image(&self, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), self.ambient, "image: matrix source does not match");
        Self::span(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn vecs(raw: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
        raw.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = Subspace::span(3, vecs(&[vec![1, 1, 0], vec![0, 1, 1]]));
        let b = Subspace::span(3, vecs(&[vec![1, 2, 1], vec![1, 0, -1]]));
        assert_eq!(a, b);
    }

    proptest! {
        #[test]
        fn dimension_formula(u in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..4),
                             w in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..4)) {
            let u = Subspace::span(4, vecs(&u));
            let w = Subspace::span(4, vecs(&w));
            let s = u.sum(&w);
            let i = u.intersect(&w);
            prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
            prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
            prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
            prop_assert_eq!(u.annihilator().annihilator(), u);
        }

        #[test]
        fn preimage_image(m in prop::collection::vec(prop::collection::vec(-2i64..3, 3), 4),
                          s in prop::collection::vec(prop::collection::vec(-2i64..3, 4), 0..3)) {
            let m = Matrix::from_rows(vecs(&m));
            let s = Subspace::span(4, vecs(&s));
            let p = s.preimage(&m);
            prop_assert!(s.contains_subspace(&p.image(&m)));
            // maximality: dim p = dim ker m + dim (s ∩ im m)
            let k = Subspace::kernel_of(&m);
            let im = Subspace::column_space(&m);
            prop_assert_eq!(p.dim(), k.dim() + s.intersect(&im).dim());
        }
    }
}
