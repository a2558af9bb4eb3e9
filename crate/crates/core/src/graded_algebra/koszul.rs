use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::atau::atau_presentation;
use super::presentation::{quadratic_dual, QuadraticPresentation, TensorBasis};
use super::quotient::quotient_algebra;
use super::GradedAlgebra;
use crate::error::AlgebraError;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::mckay_lattice::TauVector;
use crate::scalar::q;
use crate::Rational;

/// The spaces K_j = ∩_s T^s ⊗ R ⊗ T^{j−2−s} ⊂ T^j (K₀ = A₀, K₁ = A₁,
/// K₂ = R) in reduced echelon form, each basis vector lying in a single
/// vertex block (s, t).
#[derive(Clone, Debug)]
pub struct KoszulTerms {
    pub presentation: QuadraticPresentation,
    pub tensors: Vec<Option<TensorBasis>>,
    pub spaces: Vec<Vec<SparseVec<Rational>>>,
    pub blocks: Vec<Vec<(usize, usize)>>,
}

impl KoszulTerms {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.len()).collect()
    }

    pub fn top(&self) -> usize {
        self.dims().iter().rposition(|&d| d > 0).unwrap_or(0)
    }

    /// Writes basis vector `p` of K_j (j ≥ 1) as Σ_g κ_g ⊗ g, returning for
    /// each g with κ_g ≠ 0 the coordinates of κ_g in the basis of K_{j−1}.
    fn split(&self, j: usize, p: usize) -> Vec<(usize, SparseVec<Rational>)> {
        let gens = &self.presentation.generators;
        if j == 1 {
            let (idx, c) = self.spaces[1][p][0].clone();
            return vec![(idx, vec![(gens[idx].source, c)])];
        }
        let tj = self.tensors[j].as_ref().unwrap();
        let tp = self.tensors[j - 1].as_ref().unwrap();
        let mut by_letter: BTreeMap<usize, SparseVec<Rational>> = BTreeMap::new();
        for (idx, c) in &self.spaces[j][p] {
            let w = &tj.words[*idx];
            let (g, prefix) = w.split_last().unwrap();
            by_letter.entry(*g).or_default().push((tp.index_of(prefix).unwrap(), c.clone()));
        }
        let pivots: BTreeMap<usize, usize> =
            self.spaces[j - 1].iter().enumerate().map(|(r, v)| (v[0].0, r)).collect();
        by_letter
            .into_iter()
            .map(|(g, mut v)| {
                v.sort_by_key(|e| e.0);
                let coords: SparseVec<Rational> =
                    v.iter().filter_map(|(col, c)| pivots.get(col).map(|&r| (r, c.clone()))).collect();
                let mut coords = coords;
                coords.sort_by_key(|e| e.0);
                (g, coords)
            })
            .collect()
    }
}

fn block_of(p: &QuadraticPresentation, w: &[usize]) -> (usize, usize) {
    (p.generators[w[0]].source, p.generators[*w.last().unwrap()].target)
}

/// Vectors of span(a) ∩ span(b) in reduced echelon form.
fn intersect_spans(a: &[SparseVec<Rational>], b: &[SparseVec<Rational>], dim: usize) -> Vec<SparseVec<Rational>> {
    let mut ea = Echelon::new(dim);
    for v in a {
        ea.insert(v.clone());
    }
    let a = ea.rows();
    let mut eb = Echelon::new(dim);
    for v in b {
        eb.insert(v.clone());
    }
    let ann = eb.complement_kernel();
    // pairing matrix ⟨ann_k, a_i⟩
    let mut m = SparseMatrix::zeros(ann.len(), a.len());
    for (k, u) in ann.iter().enumerate() {
        let um: BTreeMap<usize, &Rational> = u.iter().map(|(i, x)| (*i, x)).collect();
        for (i, v) in a.iter().enumerate() {
            let mut s = Rational::zero();
            for (c, x) in v {
                if let Some(y) = um.get(c) {
                    s += x * *y;
                }
            }
            m.add_entry(k, i, s);
        }
    }
    let mut out = Echelon::new(dim);
    for alpha in m.kernel() {
        let v = crate::linalg::sparse::combine(alpha.into_iter().map(|(i, c)| (c, a[i].clone())));
        out.insert(v);
    }
    out.make_reduced();
    out.rows()
}

/// K_0 … K_{max_j} of a quadratic presentation.
pub fn koszul_complex_terms(p: &QuadraticPresentation, max_j: usize) -> KoszulTerms {
    let n = p.num_vertices;
    let ng = p.generators.len();
    let mut tensors: Vec<Option<TensorBasis>> = vec![None];
    let mut spaces: Vec<Vec<SparseVec<Rational>>> = vec![(0..n).map(|i| vec![(i, q(1))]).collect()];
    let mut blocks: Vec<Vec<(usize, usize)>> = vec![(0..n).map(|i| (i, i)).collect()];
    if max_j >= 1 {
        tensors.push(Some(p.tensor_basis(1)));
        spaces.push((0..ng).map(|g| vec![(g, q(1))]).collect());
        blocks.push(p.generators.iter().map(|g| (g.source, g.target)).collect());
    }
    let t2 = p.tensor_basis(2);
    for j in 2..=max_j {
        let tj = p.tensor_basis(j);
        let space = if j == 2 {
            p.relations.clone()
        } else {
            let tp = tensors[j - 1].as_ref().unwrap();
            let mut left = Vec::new();
            for kv in &spaces[j - 1] {
                let t = p.generators[*tp.words[kv[0].0].last().unwrap()].target;
                for (g, gen) in p.generators.iter().enumerate() {
                    if gen.source != t {
                        continue;
                    }
                    let mut v: SparseVec<Rational> = kv
                        .iter()
                        .map(|(i, c)| {
                            let mut w = tp.words[*i].clone();
                            w.push(g);
                            (tj.index_of(&w).unwrap(), c.clone())
                        })
                        .collect();
                    v.sort_by_key(|e| e.0);
                    left.push(v);
                }
            }
            let tu = p.tensor_basis(j - 2);
            let mut right = Vec::new();
            for u in &tu.words {
                let t = p.generators[*u.last().unwrap()].target;
                for r in &p.relations {
                    let w0 = &t2.words[r[0].0];
                    if p.generators[w0[0]].source != t {
                        continue;
                    }
                    let mut v: SparseVec<Rational> = r
                        .iter()
                        .map(|(i, c)| {
                            let mut w = u.clone();
                            w.extend(&t2.words[*i]);
                            (tj.index_of(&w).unwrap(), c.clone())
                        })
                        .collect();
                    v.sort_by_key(|e| e.0);
                    right.push(v);
                }
            }
            intersect_spans(&left, &right, tj.len())
        };
        blocks.push(space.iter().map(|v| block_of(p, &tj.words[v[0].0])).collect());
        spaces.push(space);
        tensors.push(Some(tj));
    }
    KoszulTerms { presentation: p.clone(), tensors, spaces, blocks }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    /// dim K_j ⊗ A_{d−j} for j = 0, 1, …
    pub term_dims: Vec<usize>,
    /// rank of d_j : K_j ⊗ A_{d−j} → K_{j−1} ⊗ A_{d−j+1} for j = 1, 2, …
    pub ranks: Vec<usize>,
    pub homology: Vec<usize>,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct KoszulReport {
    pub koszul_dims: Vec<usize>,
    pub degrees: Vec<DegreeReport>,
    pub exact: bool,
    /// K_j vanishes for the largest computed j
    pub bounded: bool,
    pub co_koszul: CoKoszulReport,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct WeightReport {
    pub weight: i64,
    /// first j with a term
    pub start: usize,
    pub term_dims: Vec<usize>,
    pub ranks: Vec<usize>,
    pub homology: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CoKoszulReport {
    pub top: usize,
    pub weights: Vec<WeightReport>,
    pub top_homology: usize,
    pub concentrated: bool,
}

/// Right Koszul complex ⊕_j K_j ⊗_{A₀} A_{d−j} with
/// d(κ ⊗ a) = Σ_g κ_g ⊗ g·a, checked for internal degrees 1..=cutoff, and
/// the co-Koszul complex Hom_{A₀}(K_j, A_m) with (d f)(κ) = Σ_g f(κ_g)·g.
pub fn koszul_exactness(
    p: &QuadraticPresentation,
    alg: &GradedAlgebra,
    cutoff: usize,
) -> Result<KoszulReport, AlgebraError> {
    if alg.generators != p.generators {
        return Err(AlgebraError::MissingDual);
    }
    if alg.cutoff < cutoff {
        return Err(AlgebraError::Degree(cutoff, alg.cutoff));
    }
    let terms = koszul_complex_terms(p, cutoff.max(4));
    let kd = terms.dims();
    let mut degrees = Vec::new();
    for d in 1..=cutoff {
        let jmax = d.min(kd.len() - 1);
        // basis of K_j ⊗ A_{d−j}: (p, b) with t(κ_p) = left(b)
        let mut bases: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut index: Vec<BTreeMap<(usize, usize), usize>> = Vec::new();
        for j in 0..=jmax {
            let m = d - j;
            let mut bl = Vec::new();
            for (pi, &(_, t)) in terms.blocks[j].iter().enumerate() {
                for (bi, b) in alg.bases[m].iter().enumerate() {
                    if b.left == t {
                        bl.push((pi, bi));
                    }
                }
            }
            index.push(bl.iter().enumerate().map(|(i, x)| (*x, i)).collect());
            bases.push(bl);
        }
        let mut ranks = vec![0usize; jmax + 1];
        for j in 1..=jmax {
            let m = d - j;
            let splits: Vec<_> = (0..terms.spaces[j].len()).map(|pi| terms.split(j, pi)).collect();
            let cols: Vec<SparseVec<Rational>> = bases[j]
                .iter()
                .map(|&(pi, bi)| {
                    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                    for (g, coords) in &splits[pi] {
                        let ga = alg.left_mult[m][*g].apply(&vec![(bi, q(1))]);
                        for (r, c) in coords {
                            for (b2, x) in &ga {
                                let row = index[j - 1][&(*r, *b2)];
                                *acc.entry(row).or_insert_with(Rational::zero) += c * x;
                            }
                        }
                    }
                    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
                })
                .collect();
            // the complex rank of d_j sits at the source position j
            ranks[j] = SparseMatrix::from_columns(bases[j - 1].len(), &cols).rank();
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        // homology at j: dims[j] − rank(d_j) − rank(d_{j+1}), d_0 = 0
        let homology: Vec<usize> =
            (0..=jmax).map(|j| dims[j] - ranks[j] - ranks.get(j + 1).copied().unwrap_or(0)).collect();
        let exact = homology.iter().all(|&h| h == 0);
        degrees.push(DegreeReport { degree: d, term_dims: dims, ranks: ranks[1..].to_vec(), homology, exact });
    }
    let exact = degrees.iter().all(|d| d.exact);
    let bounded = kd.last() == Some(&0);
    let co_koszul = co_koszul_report(&terms, alg, cutoff)?;
    Ok(KoszulReport { koszul_dims: kd, degrees, exact, bounded, co_koszul })
}

/// Co-Koszul check on Hom_{A₀}(K_j, A_{w+j}) for weights w = −top..=cutoff−top:
/// passes iff the only homology is at j = top, w = −top, of dimension dim K_top.
pub fn co_koszul_report(
    terms: &KoszulTerms,
    alg: &GradedAlgebra,
    cutoff: usize,
) -> Result<CoKoszulReport, AlgebraError> {
    let top = terms.top();
    if alg.cutoff < cutoff || cutoff < top {
        return Err(AlgebraError::Degree(cutoff, alg.cutoff));
    }
    let splits: Vec<Vec<Vec<(usize, SparseVec<Rational>)>>> = (0..=top)
        .map(|j| if j == 0 { Vec::new() } else { (0..terms.spaces[j].len()).map(|p| terms.split(j, p)).collect() })
        .collect();
    let mut weights = Vec::new();
    let mut top_homology = 0;
    let mut concentrated = true;
    for w in -(top as i64)..=(cutoff as i64 - top as i64) {
        let start = (-w).max(0) as usize;
        // basis of Hom(K_j, A_m): (p, b) with right(b) = t(κ_p)
        let mut bases: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut index: Vec<BTreeMap<(usize, usize), usize>> = Vec::new();
        for j in start..=top {
            let m = (w + j as i64) as usize;
            let mut bl = Vec::new();
            for (pi, &(_, t)) in terms.blocks[j].iter().enumerate() {
                for (bi, b) in alg.bases[m].iter().enumerate() {
                    if b.right == t {
                        bl.push((pi, bi));
                    }
                }
            }
            index.push(bl.iter().enumerate().map(|(i, x)| (*x, i)).collect());
            bases.push(bl);
        }
        // ranks[r] = rank of the map out of position start + r
        let len = bases.len();
        let mut ranks = vec![0usize; len];
        for r in 0..len.saturating_sub(1) {
            let j = start + r;
            let m = (w + j as i64) as usize;
            let mut mat = SparseMatrix::zeros(bases[r + 1].len(), bases[r].len());
            for (qi, sp) in splits[j + 1].iter().enumerate() {
                for (g, coords) in sp {
                    for (pi, c) in coords {
                        for (bi, b) in alg.bases[m].iter().enumerate() {
                            if b.right != terms.blocks[j][*pi].1 {
                                continue;
                            }
                            let col = index[r][&(*pi, bi)];
                            for (b2, x) in alg.right_mult[m][*g].apply(&vec![(bi, q(1))]) {
                                mat.add_entry(index[r + 1][&(qi, b2)], col, c * &x);
                            }
                        }
                    }
                }
            }
            ranks[r] = mat.rank();
        }
        let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
        let homology: Vec<usize> =
            (0..len).map(|r| dims[r] - ranks[r] - if r > 0 { ranks[r - 1] } else { 0 }).collect();
        for (r, &h) in homology.iter().enumerate() {
            let at_top = start + r == top && w == -(top as i64);
            if at_top {
                top_homology = h;
            } else if h != 0 {
                concentrated = false;
            }
        }
        ranks.truncate(len.saturating_sub(1));
        weights.push(WeightReport { weight: w, start, term_dims: dims, ranks, homology });
    }
    concentrated &= top_homology == terms.spaces[top].len() && top_homology > 0;
    Ok(CoKoszulReport { top, weights, top_homology, concentrated })
}

/// Dimensions of the quadratic dual of A^τ in degrees 0..=max_degree.
pub fn koszul_dual_dims(n: u32, tau: &TauVector, max_degree: usize) -> Result<Vec<usize>, AlgebraError> {
    let p = atau_presentation(n, tau)?;
    Ok(quotient_algebra(&quadratic_dual(&p), max_degree).dims())
}

#[cfg(test)]
mod tests {
    use super::super::atau::build_atau;
    use super::super::presentation::{polynomial_presentation, Generator};
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn polynomial_ring_is_koszul() {
        let p = polynomial_presentation(3);
        let a = quotient_algebra(&p, 5);
        let r = koszul_exactness(&p, &a, 5).unwrap();
        assert_eq!(r.koszul_dims[..5], [1, 3, 3, 1, 0]);
        assert!(r.exact, "{r:?}");
        assert!(r.co_koszul.concentrated, "{:?}", r.co_koszul);
        assert_eq!(r.co_koszul.top_homology, 1);
    }

    #[test]
    fn atau_cyclic_two_is_koszul() {
        let tau = TauVector::from_ints(&[1, -1]);
        let p = atau_presentation(2, &tau).unwrap();
        let a = build_atau(2, &tau, 5).unwrap();
        let r = koszul_exactness(&p, &a, 5).unwrap();
        assert!(r.exact);
        assert_eq!(r.koszul_dims[..5], [2, 6, 6, 2, 0]);
        assert!(r.co_koszul.concentrated);
        assert_eq!(r.co_koszul.top_homology, 2);
    }

    #[test]
    fn dual_dims() {
        assert_eq!(koszul_dual_dims(1, &TauVector::zero(1), 5).unwrap(), vec![1, 3, 3, 1, 0, 0]);
        assert_eq!(koszul_dual_dims(2, &TauVector(vec![qf(2, 3), qf(-1, 5)]), 4).unwrap(), vec![2, 6, 6, 2, 0]);
        assert_eq!(koszul_dual_dims(3, &TauVector::from_ints(&[1, 1, 1]), 4).unwrap(), vec![3, 9, 9, 3, 0]);
    }

    #[test]
    fn free_and_truncated_algebras() {
        let gens = || vec![Generator::new("x", 0, 0), Generator::new("y", 0, 0)];
        let free = QuadraticPresentation::from_terms(1, gens(), &[]).unwrap();
        let a = quotient_algebra(&free, 4);
        assert_eq!(a.dims(), vec![1, 2, 4, 8, 16]);
        let r = koszul_exactness(&free, &a, 4).unwrap();
        assert!(r.exact && r.bounded);
        assert_eq!(r.koszul_dims[..3], [1, 2, 0]);
        // every quadratic monomial is a relation: the dual is the free algebra
        let rels: Vec<_> = [[0, 0], [0, 1], [1, 0], [1, 1]].iter().map(|w| vec![(q(1), *w)]).collect();
        let trunc = QuadraticPresentation::from_terms(1, gens(), &rels).unwrap();
        let a = quotient_algebra(&trunc, 4);
        assert_eq!(a.dims(), vec![1, 2, 0, 0, 0]);
        let r = koszul_exactness(&trunc, &a, 4).unwrap();
        assert!(r.exact && !r.bounded);
        assert_eq!(r.koszul_dims, vec![1, 2, 4, 8, 16]);
    }
}
