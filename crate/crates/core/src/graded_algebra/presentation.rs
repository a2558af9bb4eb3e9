use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::AlgebraError;
use crate::linalg::{Echelon, SparseMatrix, SparseVec};
use crate::mckay_lattice::{McKayQuiver, TauVector};
use crate::scalar::{fmt_rational, q};
use crate::Rational;

/// A degree-one generator e_source · g · e_target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

impl Generator {
    pub fn new(label: impl Into<String>, source: usize, target: usize) -> Self {
        Generator { label: label.into(), source, target }
    }
}

/// Composable words of a fixed length k ≥ 1 (g₁…g_k with t(g_r) = s(g_{r+1})),
/// in lexicographic order.
#[derive(Clone, Debug)]
pub struct TensorBasis {
    pub words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl TensorBasis {
    pub fn new(generators: &[Generator], k: usize) -> Self {
        assert!(k >= 1);
        let mut words: Vec<Vec<usize>> = (0..generators.len()).map(|g| vec![g]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for w in &words {
                let t = generators[*w.last().unwrap()].target;
                for (g, gen) in generators.iter().enumerate() {
                    if gen.source == t {
                        let mut x = w.clone();
                        x.push(g);
                        next.push(x);
                    }
                }
            }
            words = next;
        }
        words.sort();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        TensorBasis { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Quadratic algebra T_{A₀}(A₁)/(R) on a quiver: A₀ = ⊕ C e_i, A₁ spanned
/// by the generators, R a subspace of T² stored in reduced echelon form.
#[derive(Clone, Debug)]
pub struct QuadraticPresentation {
    pub num_vertices: usize,
    pub generators: Vec<Generator>,
    pub relations: Vec<SparseVec<Rational>>,
}

impl QuadraticPresentation {
    /// Builds from relations written as (coefficient, [g₁, g₂]) terms.
    pub fn from_terms(
        num_vertices: usize,
        generators: Vec<Generator>,
        relations: &[Vec<(Rational, [usize; 2])>],
    ) -> Result<Self, AlgebraError> {
        let t2 = TensorBasis::new(&generators, 2);
        let mut vecs = Vec::new();
        for r in relations {
            let mut v: SparseVec<Rational> = Vec::new();
            for (c, w) in r {
                let idx = t2.index_of(w).ok_or_else(|| {
                    AlgebraError::Invalid(format!(
                        "relation term {}{} is not composable",
                        generators[w[0]].label, generators[w[1]].label
                    ))
                })?;
                v.push((idx, c.clone()));
            }
            vecs.push(crate::linalg::sparse::combine(v.into_iter().map(|(i, c)| (c, vec![(i, q(1))]))));
        }
        Self::from_vectors(num_vertices, generators, vecs)
    }

    pub fn from_vectors(
        num_vertices: usize,
        generators: Vec<Generator>,
        relations: Vec<SparseVec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        if let Some(g) = generators.iter().find(|g| g.source >= num_vertices || g.target >= num_vertices) {
            return Err(AlgebraError::Invalid(format!("generator {} has an out-of-range vertex", g.label)));
        }
        let t2 = TensorBasis::new(&generators, 2);
        let mut e = Echelon::new(t2.len());
        for r in relations {
            let block = |i: usize| {
                let w = &t2.words[i];
                (generators[w[0]].source, generators[w[1]].target)
            };
            if let Some((first, _)) = r.first() {
                let b = block(*first);
                if r.iter().any(|(i, _)| block(*i) != b) {
                    return Err(AlgebraError::Invalid("relation mixes vertex blocks".into()));
                }
            }
            e.insert(r);
        }
        e.make_reduced();
        Ok(QuadraticPresentation { num_vertices, generators, relations: e.rows() })
    }

    pub fn tensor_basis(&self, k: usize) -> TensorBasis {
        TensorBasis::new(&self.generators, k)
    }

    pub fn relation_dim(&self) -> usize {
        self.relations.len()
    }

    pub fn relation_echelon(&self) -> Echelon<Rational> {
        let mut e = Echelon::new(self.tensor_basis(2).len());
        for r in &self.relations {
            e.insert(r.clone());
        }
        e.make_reduced();
        e
    }

    /// Human-readable relations, one string per basis relation.
    pub fn relation_strings(&self) -> Vec<String> {
        let t2 = self.tensor_basis(2);
        self.relations
            .iter()
            .map(|r| {
                let terms: Vec<(Rational, String)> = r
                    .iter()
                    .map(|(i, c)| {
                        let w = &t2.words[*i];
                        (c.clone(), format!("{}·{}", self.generators[w[0]].label, self.generators[w[1]].label))
                    })
                    .collect();
                format_terms(&terms)
            })
            .collect()
    }
}

pub(crate) fn format_terms(terms: &[(Rational, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, (c, m)) in terms.iter().enumerate() {
        let neg = c < &Rational::zero();
        let a = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !a.is_one() {
            s.push_str(&fmt_rational(&a));
            s.push(' ');
        }
        s.push_str(m);
    }
    s
}

/// Presentation on the same quiver with relation space the annihilator of R
/// under the pairing in which composable words of length two are orthonormal.
/// Reading words backwards turns this into the dual on A₁*; dimensions are
/// unaffected.
pub fn quadratic_dual(p: &QuadraticPresentation) -> QuadraticPresentation {
    let t2 = p.tensor_basis(2);
    let m = SparseMatrix { rows: p.relations.len(), cols: t2.len(), data: p.relations.clone() };
    let generators =
        p.generators.iter().map(|g| Generator::new(dual_label(&g.label), g.source, g.target)).collect();
    QuadraticPresentation::from_vectors(p.num_vertices, generators, m.kernel())
        .expect("annihilator is block homogeneous")
}

fn dual_label(l: &str) -> String {
    match l.strip_prefix('ˇ') {
        Some(rest) => rest.to_string(),
        None => format!("ˇ{l}"),
    }
}

/// Commutative polynomial ring in `k` variables, on one vertex.
pub fn polynomial_presentation(k: usize) -> QuadraticPresentation {
    let names = ["x", "y", "z", "u", "v", "w"];
    let gens: Vec<Generator> =
        (0..k).map(|i| Generator::new(names.get(i).map_or(format!("t{i}"), |s| s.to_string()), 0, 0)).collect();
    let mut rels = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            rels.push(vec![(q(1), [i, j]), (q(-1), [j, i])]);
        }
    }
    QuadraticPresentation::from_terms(1, gens, &rels).unwrap()
}

/// Generators of the doubled quiver plus the loops f_i: arrow k of Q gives
/// generator 2k (out → in) and 2k+1 (its reverse a*), then f_i follow.
pub(crate) fn doubled_generators(quiver: &McKayQuiver) -> Vec<Generator> {
    let mut g = Vec::new();
    for (k, a) in quiver.arrows().iter().enumerate() {
        g.push(Generator::new(format!("a{k}"), a.out, a.inn));
        g.push(Generator::new(format!("a{k}*"), a.inn, a.out));
    }
    for i in 0..quiver.num_vertices() {
        g.push(Generator::new(format!("f{i}"), i, i));
    }
    g
}

/// Homogeneous preprojective relations on Q̄ ∪ {f_i}:
/// f_i·a − a·f_j for every arrow of Q̄, and
/// Σ_{out(a)=i} a·a* − Σ_{in(a)=i} a*·a − τ_i f_i·f_i at every vertex.
pub fn preprojective_presentation(quiver: &McKayQuiver, tau: &TauVector) -> Result<QuadraticPresentation, AlgebraError> {
    let n = quiver.num_vertices();
    if tau.len() != n {
        return Err(AlgebraError::TauLength { expected: n, got: tau.len() });
    }
    let gens = doubled_generators(quiver);
    let na = quiver.arrows().len();
    let f = |i: usize| 2 * na + i;
    let mut rels = Vec::new();
    for g in 0..2 * na {
        let (s, t) = (gens[g].source, gens[g].target);
        rels.push(vec![(q(1), [f(s), g]), (q(-1), [g, f(t)])]);
    }
    for i in 0..n {
        rels.push(moment_terms(quiver, i, tau));
    }
    QuadraticPresentation::from_terms(n, gens, &rels)
}

fn moment_terms(quiver: &McKayQuiver, i: usize, tau: &TauVector) -> Vec<(Rational, [usize; 2])> {
    let na = quiver.arrows().len();
    let mut r = Vec::new();
    for (k, a) in quiver.arrows().iter().enumerate() {
        if a.out == i {
            r.push((q(1), [2 * k, 2 * k + 1]));
        }
        if a.inn == i {
            r.push((q(-1), [2 * k + 1, 2 * k]));
        }
    }
    if !tau.0[i].is_zero() {
        r.push((-tau.0[i].clone(), [2 * na + i, 2 * na + i]));
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct InhomogeneousRelation {
    pub vertex: usize,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip)]
    pub terms: Vec<(Rational, [usize; 2])>,
    #[serde(skip)]
    pub constant: Rational,
}

/// Π^τ = P^τ/(f − τ): generators are the arrows of Q̄ only, and at each
/// vertex Σ_{out(a)=i} a·a* − Σ_{in(a)=i} a*·a = τ_i e_i.
#[derive(Clone, Debug, Serialize)]
pub struct DeformedPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<InhomogeneousRelation>,
}

pub fn deformed_preprojective_presentation(
    quiver: &McKayQuiver,
    tau: &TauVector,
) -> Result<DeformedPresentation, AlgebraError> {
    let n = quiver.num_vertices();
    if tau.len() != n {
        return Err(AlgebraError::TauLength { expected: n, got: tau.len() });
    }
    let mut gens = doubled_generators(quiver);
    gens.truncate(2 * quiver.arrows().len());
    let zero = TauVector::zero(n);
    let relations = (0..n)
        .map(|i| {
            let terms = moment_terms(quiver, i, &zero);
            let named: Vec<(Rational, String)> = terms
                .iter()
                .map(|(c, w)| (c.clone(), format!("{}·{}", gens[w[0]].label, gens[w[1]].label)))
                .collect();
            let rhs = if tau.0[i].is_zero() { "0".to_string() } else { format!("{} e{i}", fmt_rational(&tau.0[i])) };
            InhomogeneousRelation { vertex: i, lhs: format_terms(&named), rhs, terms, constant: tau.0[i].clone() }
        })
        .collect();
    Ok(DeformedPresentation { generators: gens, relations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charrep::GroupDescriptor;
    use crate::quiver_data::quiver_for;

    #[test]
    fn polynomial_dual_is_exterior() {
        let p = polynomial_presentation(3);
        assert_eq!(p.relation_dim(), 3);
        let d = quadratic_dual(&p);
        assert_eq!(d.relation_dim(), 6);
        // x⊗x is a dual relation
        let t2 = d.tensor_basis(2);
        let xx = vec![(t2.index_of(&[0, 0]).unwrap(), q(1))];
        assert!(d.relation_echelon().contains(&xx));
        let dd = quadratic_dual(&d);
        assert_eq!(dd.relations, p.relations);
    }

    #[test]
    fn tensor_basis_counts() {
        let q = quiver_for(GroupDescriptor::Cyclic(3)).unwrap();
        let gens = doubled_generators(&q);
        // every vertex has out-degree 3 in the doubled quiver with loops
        for k in 1..4 {
            assert_eq!(TensorBasis::new(&gens, k).len(), 3 * 3usize.pow(k as u32));
        }
    }

    #[test]
    fn mixed_block_relation_is_rejected() {
        let gens = vec![Generator::new("a", 0, 1), Generator::new("b", 1, 0), Generator::new("c", 1, 1)];
        let r = QuadraticPresentation::from_terms(2, gens, &[vec![(q(1), [0, 1]), (q(1), [1, 0])]]);
        assert!(r.is_err());
    }

    #[test]
    fn deformed_presentations() {
        let q1 = quiver_for(GroupDescriptor::Trivial).unwrap();
        let d = deformed_preprojective_presentation(&q1, &TauVector::from_ints(&[3])).unwrap();
        assert_eq!(d.relations.len(), 1);
        // with y = a0 and x = a0* this reads yx − xy = τ
        assert_eq!(d.relations[0].lhs, "a0·a0* - a0*·a0");
        assert_eq!(d.relations[0].rhs, "3 e0");
        let q3 = quiver_for(GroupDescriptor::Cyclic(3)).unwrap();
        let d = deformed_preprojective_presentation(&q3, &TauVector::from_ints(&[1, 0, -1])).unwrap();
        let rhs: Vec<&str> = d.relations.iter().map(|r| r.rhs.as_str()).collect();
        assert_eq!(rhs, ["1 e0", "0", "-1 e2"]);
        let q2 = quiver_for(GroupDescriptor::Cyclic(2)).unwrap();
        let d = deformed_preprojective_presentation(&q2, &TauVector::zero(2)).unwrap();
        assert!(d.relations.iter().all(|r| r.rhs == "0" && r.terms.len() == 2));
    }
}
