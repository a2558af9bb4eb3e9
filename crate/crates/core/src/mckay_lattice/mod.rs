//! McKay quivers, affine Cartan lattices, the minuscule decomposition of
//! dimension-one classes, and genericity of parameters.

pub mod dynkin;
mod roots;

use std::sync::Arc;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::charrep::{class_product, CharacterTable, ClassVector, GroupDescriptor};
use crate::error::LatticeError;
use crate::linalg::Matrix;
use crate::scalar::{fmt_rational, parse_rational, ParseRationalError};

pub use roots::{finite_roots, is_generic};

/// An arrow of the chosen orientation Q; its reverse a* goes `inn -> out`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub out: usize,
    pub inn: usize,
}

#[derive(Debug, Clone)]
pub struct McKayQuiver {
    table: Arc<CharacterTable>,
    a: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    delta: Vec<i64>,
    special: Vec<usize>,
    arrows: Vec<Arrow>,
    /// (det·C⁻¹, det) of the finite Cartan matrix at each special vertex
    lifts: Vec<Option<(Vec<Vec<i64>>, i64)>>,
}

pub fn mckay_quiver(table: &Arc<CharacterTable>) -> Result<McKayQuiver, LatticeError> {
    let n = table.num_irreps();
    let a: Vec<Vec<i64>> = table.mckay_matrix().to_vec();
    for i in 0..n {
        for j in 0..n {
            if a[i][j] < 0 || a[i][j] != a[j][i] {
                return Err(LatticeError::NotAde("McKay matrix is not symmetric nonnegative".into()));
            }
        }
    }
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 2 - a[i][j] } else { -a[i][j] }).collect())
        .collect();
    let delta = table.dims().to_vec();
    let special: Vec<usize> = (0..n).filter(|&i| delta[i] == 1).collect();

    let mut arrows = Vec::new();
    for i in 0..n {
        if a[i][i] == 2 {
            // the trivial group: one loop with a formal reverse
            arrows.push(Arrow { out: i, inn: i });
        } else if a[i][i] != 0 {
            return Err(LatticeError::NotAde(format!("unexpected loop multiplicity at vertex {i}")));
        }
        for j in i + 1..n {
            for _ in 0..a[i][j] {
                arrows.push(Arrow { out: i, inn: j });
            }
        }
    }
    let mut q = McKayQuiver { table: table.clone(), a, cartan, delta, special, arrows, lifts: vec![None; n] };
    q.validate()?;
    for &s in &q.special.clone() {
        q.lifts[s] = q.adjugate(s);
    }
    Ok(q)
}

impl McKayQuiver {
    fn validate(&self) -> Result<(), LatticeError> {
        let n = self.num_vertices();
        if self.apply_cartan(&self.delta).iter().any(|&x| x != 0) {
            return Err(LatticeError::NotAde("Cartan matrix does not annihilate delta".into()));
        }
        let g = self.delta.iter().fold(0i64, |g, &d| g.gcd(&d));
        if g != 1 || self.delta.iter().any(|&d| d <= 0) {
            return Err(LatticeError::NotAde("delta is not the minimal positive kernel vector".into()));
        }
        if self.cartan_matrix().rank() != n - 1 {
            return Err(LatticeError::NotAde("affine Cartan matrix does not have corank one".into()));
        }
        for &s in &self.special {
            if !self.finite_cartan(s).determinant().is_positive() && n > 1 {
                return Err(LatticeError::NotAde(format!("deleting special vertex {s} is not of finite type")));
            }
        }
        Ok(())
    }

    pub fn table(&self) -> &Arc<CharacterTable> {
        &self.table
    }
    pub fn group(&self) -> GroupDescriptor {
        self.table.group()
    }
    pub fn num_vertices(&self) -> usize {
        self.delta.len()
    }
    pub fn multiplicities(&self) -> &[Vec<i64>] {
        &self.a
    }
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }
    pub fn delta(&self) -> &[i64] {
        &self.delta
    }
    pub fn special(&self) -> &[usize] {
        &self.special
    }
    /// Arrows of Q; index k also names the pair (a_k, a_k*) of Q̄.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn trivial_vertex(&self) -> usize {
        self.table.trivial_index()
    }

    pub fn apply_cartan(&self, v: &[i64]) -> Vec<i64> {
        self.cartan.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn cartan_matrix(&self) -> Matrix<BigRational> {
        let n = self.num_vertices();
        Matrix::from_fn(n, n, |i, j| BigRational::from_integer(self.cartan[i][j].into()))
    }

    /// Cartan matrix with vertex `v` deleted, rows/cols in increasing order.
    pub fn finite_cartan(&self, v: usize) -> Matrix<BigRational> {
        let keep: Vec<usize> = (0..self.num_vertices()).filter(|&i| i != v).collect();
        Matrix::from_fn(keep.len(), keep.len(), |i, j| BigRational::from_integer(self.cartan[keep[i]][keep[j]].into()))
    }

    fn adjugate(&self, v: usize) -> Option<(Vec<Vec<i64>>, i64)> {
        let c = self.finite_cartan(v);
        let det = c.determinant();
        let inv = c.inverse()?;
        let adj = (0..inv.rows())
            .map(|i| (0..inv.cols()).map(|j| (&inv[(i, j)] * &det).to_integer().to_i64()).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some((adj, det.to_integer().to_i64()?))
    }

    pub fn affine_type(&self) -> dynkin::AffineType {
        dynkin::affine_type_of(self.group())
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            group: self.group().to_string(),
            affine_type: self.affine_type().to_string(),
            vertices: (0..self.num_vertices()).collect(),
            edges: self.a.clone(),
            arrows: self.arrows.clone(),
            cartan: self.cartan.clone(),
            delta: self.delta.clone(),
            special: self.special.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverJson {
    pub group: String,
    pub affine_type: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<Vec<i64>>,
    pub arrows: Vec<Arrow>,
    pub cartan: Vec<Vec<i64>>,
    pub delta: Vec<i64>,
    pub special: Vec<usize>,
}

/// Rational parameter τ indexed by vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauVector(pub Vec<BigRational>);

impl TauVector {
    pub fn zero(n: usize) -> Self {
        TauVector(vec![BigRational::zero(); n])
    }

    pub fn from_ints(v: &[i64]) -> Self {
        TauVector(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn parse(s: &str) -> Result<Self, ParseRationalError> {
        if s.trim().is_empty() {
            return Ok(TauVector(Vec::new()));
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>().map(TauVector)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pair(&self, v: &[i64]) -> BigRational {
        self.0.iter().zip(v).map(|(t, &x)| t * BigRational::from_integer(x.into())).sum()
    }

    /// τ·δ = 0.
    pub fn is_trace_zero(&self, q: &McKayQuiver) -> bool {
        self.pair(q.delta()).is_zero()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(fmt_rational).collect()
    }
}

/// Decomposition result ω = e_i − Ĉ·ω₀.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub vertex: usize,
    pub omega0: Vec<i64>,
}

/// Solves C x = rhs on the complement of `i` exactly; returns the lift with
/// x_i = 0 when the solution is integral.
fn integral_lift(q: &McKayQuiver, i: usize, rhs: &[i64]) -> Option<Vec<i64>> {
    let n = q.num_vertices();
    let keep: Vec<usize> = (0..n).filter(|&k| k != i).collect();
    let mut out = vec![0i64; n];
    if keep.is_empty() {
        return Some(out);
    }
    if let Some((adj, det)) = &q.lifts[i] {
        for (r, k) in adj.iter().zip(&keep) {
            let s: i64 = r.iter().zip(&keep).map(|(a, &m)| a * rhs[m]).sum();
            if s % det != 0 {
                return None;
            }
            out[*k] = s / det;
        }
        return Some(out);
    }
    let c = q.finite_cartan(i);
    let inv = c.inverse()?;
    let b: Vec<BigRational> = keep.iter().map(|&k| BigRational::from_integer(rhs[k].into())).collect();
    let x = inv.mul_vec(&b);
    for (k, xk) in keep.iter().zip(x) {
        if !xk.is_integer() {
            return None;
        }
        out[*k] = xk.to_integer().to_i64()?;
    }
    Some(out)
}

/// Adds the multiple of δ that makes min_j ⌊v_j/δ_j⌋ = 0.
pub fn normalize_mod_delta(q: &McKayQuiver, v: &[i64]) -> Vec<i64> {
    let d = q.delta();
    let m = v.iter().zip(d).map(|(a, b)| a.div_floor(b)).min().unwrap_or(0);
    v.iter().zip(d).map(|(a, b)| a - m * b).collect()
}

/// Whether ω − e_i lies in the image of Ĉ.
pub fn in_cartan_coset(q: &McKayQuiver, omega: &[i64], i: usize) -> bool {
    let rhs: Vec<i64> = (0..q.num_vertices()).map(|k| i64::from(k == i) - omega[k]).collect();
    integral_lift(q, i, &rhs).is_some()
}

pub fn minuscule_decompose(q: &McKayQuiver, omega: &ClassVector) -> Result<Decomposition, LatticeError> {
    let n = q.num_vertices();
    if omega.len() != n {
        return Err(LatticeError::Length { expected: n, got: omega.len() });
    }
    let d: i64 = omega.coeffs.iter().zip(q.delta()).map(|(a, b)| a * b).sum();
    if d != 1 {
        return Err(LatticeError::NotDimensionOne(d));
    }
    let mut found = Vec::new();
    for &i in q.special() {
        // Ĉ ω₀ = e_i − ω; row i follows from the others since δ spans the left kernel
        let rhs: Vec<i64> = (0..n).map(|k| i64::from(k == i) - omega.coeffs[k]).collect();
        if let Some(x) = integral_lift(q, i, &rhs) {
            found.push(Decomposition { vertex: i, omega0: normalize_mod_delta(q, &x) });
        }
    }
    if found.len() != 1 {
        return Err(LatticeError::Uniqueness(found.len()));
    }
    Ok(found.pop().unwrap())
}

/// [N] = [W] + [V⊗L] − 2[V].
pub fn projective_class(q: &McKayQuiver, v: &ClassVector, w: &ClassVector) -> Result<ClassVector, LatticeError> {
    let t = q.table();
    let vl = class_product(t, v, &t.l_class())?;
    Ok(w.add(&vl)?.sub(&v.scale(2))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charrep::build_group;
    use dynkin::{affine_diagram, find_isomorphism};

    pub(crate) fn quiver(g: GroupDescriptor) -> McKayQuiver {
        mckay_quiver(&build_group(g).unwrap()).unwrap()
    }

    #[test]
    fn small_quivers() {
        let q = quiver(GroupDescriptor::Cyclic(2));
        assert_eq!(q.cartan(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(q.arrows().len(), 2);
        let q = quiver(GroupDescriptor::Trivial);
        assert_eq!(q.cartan(), &[vec![0]]);
        assert_eq!(q.arrows(), &[Arrow { out: 0, inn: 0 }]);
        let q = quiver(GroupDescriptor::Cyclic(5));
        assert_eq!(q.delta(), &[1, 1, 1, 1, 1]);
        assert_eq!(q.arrows().len(), 5);
    }

    #[test]
    fn matches_embedded_diagrams() {
        use GroupDescriptor::*;
        let mut groups = vec![Trivial, BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral];
        groups.extend((1..=8).map(Cyclic));
        groups.extend((2..=5).map(BinaryDihedral));
        for g in groups {
            let q = quiver(g);
            let d = affine_diagram(q.affine_type());
            assert!(find_isomorphism(q.cartan(), q.delta(), &d.cartan, &d.marks).is_some(), "{g}");
        }
    }

    #[test]
    fn decomposition_examples() {
        let q = quiver(GroupDescriptor::Cyclic(2));
        let t = q.table().clone();
        let d = minuscule_decompose(&q, &t.class_vector(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(d, Decomposition { vertex: 0, omega0: vec![0, 0] });
        let d = minuscule_decompose(&q, &t.class_vector(vec![2, -1]).unwrap()).unwrap();
        assert_eq!(d, Decomposition { vertex: 1, omega0: vec![0, 1] });
        assert!(matches!(
            minuscule_decompose(&q, &t.class_vector(vec![1, 1]).unwrap()),
            Err(LatticeError::NotDimensionOne(2))
        ));
        let q = quiver(GroupDescriptor::Trivial);
        let t = q.table().clone();
        let d = minuscule_decompose(&q, &t.class_vector(vec![1]).unwrap()).unwrap();
        assert_eq!(d, Decomposition { vertex: 0, omega0: vec![0] });
    }

    #[test]
    fn projective_class_examples() {
        let q = quiver(GroupDescriptor::Trivial);
        let t = q.table().clone();
        for k in 0..4 {
            let n = projective_class(&q, &t.class_vector(vec![k]).unwrap(), &t.trivial_class()).unwrap();
            assert_eq!(n.coeffs, vec![1]);
        }
        let q = quiver(GroupDescriptor::Cyclic(2));
        let t = q.table().clone();
        let e0 = t.class_vector(vec![1, 0]).unwrap();
        assert_eq!(projective_class(&q, &e0, &e0).unwrap().coeffs, vec![-1, 2]);
        let q = quiver(GroupDescriptor::BinaryOctahedral);
        let t = q.table().clone();
        let w = t.basis_class(3);
        assert_eq!(projective_class(&q, &t.regular_class(), &w).unwrap(), w);
    }

    #[test]
    fn tau_pairing() {
        let q = quiver(GroupDescriptor::Cyclic(3));
        let t = TauVector::parse("1, -1/2, -1/2").unwrap();
        assert!(t.is_trace_zero(&q));
        assert_eq!(t.to_strings(), vec!["1", "-1/2", "-1/2"]);
    }
}
