use num_traits::Zero;

use super::presentation::{doubled_generators, preprojective_presentation, QuadraticPresentation, TensorBasis};
use super::{BasisElement, GradedAlgebra};
use crate::charrep::{sym_multiplicity, CharacterTable};
use crate::error::AlgebraError;
use crate::linalg::sparse::combine;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::mckay_lattice::{McKayQuiver, TauVector};
use crate::scalar::q;
use crate::Rational;

/// Degreewise quotient T(A₁)/(R) up to degree `cutoff`:
/// A_k = (A_{k−1} ⊗ A₁) / image(A_{k−2} ⊗ R), keeping the non-pivot
/// pairs (b, g) of a reduced echelon form as the basis of A_k.
pub fn quotient_algebra(p: &QuadraticPresentation, cutoff: usize) -> GradedAlgebra {
    let n = p.num_vertices;
    let gens = &p.generators;
    let ng = gens.len();
    let t2 = TensorBasis::new(gens, 2);

    let mut bases: Vec<Vec<BasisElement>> = Vec::new();
    // (parent index in degree k−1, last generator) for degree ≥ 1
    let mut parents: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    bases.push((0..n).map(|i| BasisElement { word: Vec::new(), left: i, right: i }).collect());
    let mut left_mult: Vec<Vec<SparseMatrix<Rational>>> = Vec::new();
    let mut right_mult: Vec<Vec<SparseMatrix<Rational>>> = Vec::new();
    if cutoff == 0 {
        return GradedAlgebra { num_vertices: n, generators: gens.clone(), cutoff, bases, left_mult, right_mult };
    }

    bases.push(gens.iter().enumerate().map(|(g, x)| BasisElement { word: vec![g], left: x.source, right: x.target }).collect());
    parents.push(gens.iter().enumerate().map(|(g, x)| (x.source, g)).collect());
    let unit = |i: usize| -> SparseVec<Rational> { vec![(i, q(1))] };
    right_mult.push(
        (0..ng)
            .map(|g| {
                let cols: Vec<SparseVec<Rational>> =
                    (0..n).map(|i| if i == gens[g].source { unit(g) } else { Vec::new() }).collect();
                SparseMatrix::from_columns(ng, &cols)
            })
            .collect(),
    );
    left_mult.push(
        (0..ng)
            .map(|g| {
                let cols: Vec<SparseVec<Rational>> =
                    (0..n).map(|i| if i == gens[g].target { unit(g) } else { Vec::new() }).collect();
                SparseMatrix::from_columns(ng, &cols)
            })
            .collect(),
    );

    for k in 2..=cutoff {
        let prev = &bases[k - 1];
        // pairs (b, g) spanning A_{k−1} ⊗_{A₀} A₁
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut pair_index = vec![vec![usize::MAX; ng]; prev.len()];
        for (b, be) in prev.iter().enumerate() {
            for (g, gen) in gens.iter().enumerate() {
                if gen.source == be.right {
                    pair_index[b][g] = pairs.len();
                    pairs.push((b, g));
                }
            }
        }
        let mut ech = Echelon::new(pairs.len());
        for c in 0..bases[k - 2].len() {
            for r in &p.relations {
                let terms = r.iter().filter_map(|(idx, coef)| {
                    let w = &t2.words[*idx];
                    let img = right_mult[k - 2][w[0]].apply(&vec![(c, q(1))]);
                    if img.is_empty() {
                        return None;
                    }
                    let v: SparseVec<Rational> = img.into_iter().map(|(b, x)| (pair_index[b][w[1]], x)).collect();
                    Some((coef.clone(), sorted(v)))
                });
                let v = combine(terms);
                if !v.is_empty() {
                    ech.insert(v);
                }
            }
        }
        ech.make_reduced();
        let mut new_index = vec![usize::MAX; pairs.len()];
        let mut basis = Vec::new();
        let mut par = Vec::new();
        for (pi, &(b, g)) in pairs.iter().enumerate() {
            if !ech.is_pivot(pi) {
                new_index[pi] = basis.len();
                let mut word = prev[b].word.clone();
                word.push(g);
                basis.push(BasisElement { word, left: prev[b].left, right: gens[g].target });
                par.push((b, g));
            }
        }
        let dim = basis.len();
        let rm: Vec<SparseMatrix<Rational>> = (0..ng)
            .map(|g| {
                let cols: Vec<SparseVec<Rational>> = (0..prev.len())
                    .map(|b| {
                        let pi = pair_index[b][g];
                        if pi == usize::MAX {
                            return Vec::new();
                        }
                        let red = ech.reduce(&vec![(pi, q(1))]);
                        sorted(red.into_iter().map(|(i, x)| (new_index[i], x)).collect())
                    })
                    .collect();
                SparseMatrix::from_columns(dim, &cols)
            })
            .collect();
        right_mult.push(rm);
        // u·(b'·h) = (u·b')·h
        let lm: Vec<SparseMatrix<Rational>> = (0..ng)
            .map(|u| {
                let cols: Vec<SparseVec<Rational>> = parents[k - 1]
                    .iter()
                    .map(|&(bp, h)| {
                        let ub = left_mult[k - 2][u].apply(&vec![(bp, q(1))]);
                        right_mult[k - 1][h].apply(&ub)
                    })
                    .collect();
                SparseMatrix::from_columns(dim, &cols)
            })
            .collect();
        left_mult.push(lm);
        bases.push(basis);
        parents.push(par);
    }
    GradedAlgebra { num_vertices: n, generators: gens.clone(), cutoff, bases, left_mult, right_mult }
}

fn sorted(mut v: SparseVec<Rational>) -> SparseVec<Rational> {
    v.sort_by_key(|e| e.0);
    v.retain(|e| !e.1.is_zero());
    v
}

/// Graded preprojective algebra P^τ(Q) up to degree `cutoff`.
pub fn build_preprojective(quiver: &McKayQuiver, tau: &TauVector, cutoff: usize) -> Result<GradedAlgebra, AlgebraError> {
    let p = preprojective_presentation(quiver, tau)?;
    Ok(quotient_algebra(&p, cutoff))
}

/// Multiplicity of R_i in R_j ⊗ Sym^k(L ⊕ triv).
pub fn preprojective_dim_oracle(table: &CharacterTable, i: usize, j: usize, k: usize) -> Result<i64, AlgebraError> {
    sym_multiplicity(table, i, j, k).map_err(|e| AlgebraError::Lattice(e.into()))
}

/// For each vertex i the degree-three element
/// κ_i = τ_i fff + Σ_{out(a)=i} (a f a* − f a a* − a a* f) + Σ_{in(a)=i} (−a* f a + f a* a + a* a f)
/// of T³, together with the verdict of κ_i ∈ (R ⊗ A₁) ∩ (A₁ ⊗ R).
pub fn preprojective_k3_elements(
    quiver: &McKayQuiver,
    tau: &TauVector,
) -> Result<Vec<(SparseVec<Rational>, bool)>, AlgebraError> {
    let p = preprojective_presentation(quiver, tau)?;
    let gens = doubled_generators(quiver);
    let na = quiver.arrows().len();
    let t2 = TensorBasis::new(&gens, 2);
    let t3 = TensorBasis::new(&gens, 3);
    let mut left = Echelon::new(t3.len());
    let mut right = Echelon::new(t3.len());
    for r in &p.relations {
        for (g, gen) in gens.iter().enumerate() {
            let lv: SparseVec<Rational> = r
                .iter()
                .filter_map(|(i, c)| {
                    let mut w = t2.words[*i].clone();
                    if gens[w[1]].target != gen.source {
                        return None;
                    }
                    w.push(g);
                    Some((t3.index_of(&w).unwrap(), c.clone()))
                })
                .collect();
            left.insert(sorted(lv));
            let rv: SparseVec<Rational> = r
                .iter()
                .filter_map(|(i, c)| {
                    let w = &t2.words[*i];
                    if gens[w[0]].source != gen.target {
                        return None;
                    }
                    let mut x = vec![g];
                    x.extend(w);
                    Some((t3.index_of(&x).unwrap(), c.clone()))
                })
                .collect();
            right.insert(sorted(rv));
        }
    }
    let f = |i: usize| 2 * na + i;
    let mut out = Vec::new();
    for i in 0..quiver.num_vertices() {
        let mut terms: Vec<(Rational, [usize; 3])> = Vec::new();
        if !tau.0[i].is_zero() {
            terms.push((tau.0[i].clone(), [f(i), f(i), f(i)]));
        }
        for (k, a) in quiver.arrows().iter().enumerate() {
            let (x, xs) = (2 * k, 2 * k + 1);
            if a.out == i {
                let j = a.inn;
                terms.push((q(1), [x, f(j), xs]));
                terms.push((q(-1), [f(i), x, xs]));
                terms.push((q(-1), [x, xs, f(i)]));
            }
            if a.inn == i {
                let j = a.out;
                terms.push((q(-1), [xs, f(j), x]));
                terms.push((q(1), [f(i), xs, x]));
                terms.push((q(1), [xs, x, f(i)]));
            }
        }
        let v = combine(terms.into_iter().map(|(c, w)| (c, vec![(t3.index_of(&w).unwrap(), q(1))])));
        let ok = !v.is_empty() && left.contains(&v) && right.contains(&v);
        out.push((v, ok));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::presentation::polynomial_presentation;
    use super::*;
    use crate::charrep::GroupDescriptor;
    use crate::quiver_data::quiver_for;

    fn binom2(k: usize) -> usize {
        (k + 1) * (k + 2) / 2
    }

    #[test]
    fn polynomial_ring_dims() {
        let a = quotient_algebra(&polynomial_presentation(3), 6);
        assert_eq!(a.dims(), (0..=6).map(binom2).collect::<Vec<_>>());
        a.check_associativity().unwrap();
    }

    #[test]
    fn preprojective_degree_one() {
        for g in [GroupDescriptor::Trivial, GroupDescriptor::Cyclic(4), GroupDescriptor::BinaryDihedral(3)] {
            let q = quiver_for(g).unwrap();
            let a = build_preprojective(&q, &TauVector::zero(q.num_vertices()), 1).unwrap();
            let t = a.vertex_dims(1);
            for i in 0..q.num_vertices() {
                for j in 0..q.num_vertices() {
                    assert_eq!(t[i][j] as i64, q.multiplicities()[i][j] + (i == j) as i64);
                }
            }
        }
    }

    #[test]
    fn preprojective_a1_degree_two() {
        let q = quiver_for(GroupDescriptor::Cyclic(2)).unwrap();
        let a = build_preprojective(&q, &TauVector::zero(2), 2).unwrap();
        assert_eq!(a.vertex_dims(2)[0][0], 4);
        assert_eq!(preprojective_dim_oracle(q.table(), 0, 0, 2).unwrap(), 4);
        a.check_associativity().unwrap();
    }

    #[test]
    fn k3_elements_lie_in_both_products() {
        for (g, tau) in [
            (GroupDescriptor::Trivial, vec![2]),
            (GroupDescriptor::Cyclic(2), vec![1, -1]),
            (GroupDescriptor::Cyclic(3), vec![0, 0, 0]),
            (GroupDescriptor::BinaryDihedral(2), vec![1, 2, 3, 4, 5]),
        ] {
            let q = quiver_for(g).unwrap();
            for (_, ok) in preprojective_k3_elements(&q, &TauVector::from_ints(&tau)).unwrap() {
                assert!(ok, "{g}");
            }
        }
    }
}
