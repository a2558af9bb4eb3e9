use std::collections::HashMap;

use num_traits::Zero;

use super::presentation::{Generator, QuadraticPresentation};
use super::quotient::quotient_algebra;
use super::{BasisElement, GradedAlgebra};
use crate::error::AlgebraError;
use crate::linalg::sparse::combine;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::mckay_lattice::TauVector;
use crate::scalar::q;
use crate::Rational;

/// Quiver generators of A^τ over ℤ/n: X_j = e_{j+1} x e_j, Y_j = e_{j−1} y e_j,
/// Z_j = e_j z e_j, indexed j, n + j, 2n + j.
pub(crate) fn atau_generators(n: usize) -> Vec<Generator> {
    let name = |c: &str, j: usize| if n == 1 { c.to_string() } else { format!("{c}{j}") };
    let mut g = Vec::with_capacity(3 * n);
    for j in 0..n {
        g.push(Generator::new(name("x", j), (j + 1) % n, j));
    }
    for j in 0..n {
        g.push(Generator::new(name("y", j), (j + n - 1) % n, j));
    }
    for j in 0..n {
        g.push(Generator::new(name("z", j), j, j));
    }
    g
}

fn check(n: u32, tau: &TauVector, cutoff: i64) -> Result<usize, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::NotCyclic("cyclic:0".into()));
    }
    if tau.len() != n as usize {
        return Err(AlgebraError::TauLength { expected: n as usize, got: tau.len() });
    }
    usize::try_from(cutoff).map_err(|_| AlgebraError::NegativeCutoff(cutoff))
}

/// Quadratic presentation of A^τ: for every j,
/// Z_{j+1}X_j − X_jZ_j, Z_{j−1}Y_j − Y_jZ_j and Y_{j+1}X_j − X_{j−1}Y_j − τ_j Z_jZ_j.
pub fn atau_presentation(n: u32, tau: &TauVector) -> Result<QuadraticPresentation, AlgebraError> {
    check(n, tau, 0)?;
    let n = n as usize;
    let (x, y, z) = (|j: usize| j % n, |j: usize| n + j % n, |j: usize| 2 * n + j % n);
    let mut rels = Vec::new();
    for j in 0..n {
        rels.push(vec![(q(1), [z(j + 1), x(j)]), (q(-1), [x(j), z(j)])]);
        rels.push(vec![(q(1), [z(j + n - 1), y(j)]), (q(-1), [y(j), z(j)])]);
        let mut r = vec![(q(1), [y(j + 1), x(j)]), (q(-1), [x(j + n - 1), y(j)])];
        if !tau.0[j].is_zero() {
            r.push((-tau.0[j].clone(), [z(j), z(j)]));
        }
        rels.push(r);
    }
    QuadraticPresentation::from_terms(n, atau_generators(n), &rels)
}

/// Monomials x^a y^b z^c e_j of one degree, in a fixed order.
struct Monomials {
    n: usize,
    list: Vec<(usize, usize, usize, usize)>,
    index: HashMap<(usize, usize, usize, usize), usize>,
}

impl Monomials {
    fn new(n: usize, k: usize) -> Self {
        let mut list = Vec::new();
        for a in (0..=k).rev() {
            for b in (0..=k - a).rev() {
                for j in 0..n {
                    list.push((a, b, k - a - b, j));
                }
            }
        }
        let index = list.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Monomials { n, list, index }
    }

    fn left(&self, m: (usize, usize, usize, usize)) -> usize {
        let n = self.n as i64;
        (m.3 as i64 + m.0 as i64 - m.1 as i64).rem_euclid(n) as usize
    }

    fn word(&self, (a, b, c, j): (usize, usize, usize, usize)) -> Vec<usize> {
        let n = self.n as i64;
        let md = |v: i64| v.rem_euclid(n) as usize;
        let (j, a, b) = (j as i64, a as i64, b as i64);
        let mut w = Vec::new();
        for r in (0..a).rev() {
            w.push(md(j - b + r));
        }
        for r in (0..b).rev() {
            w.push(self.n + md(j - r));
        }
        for _ in 0..c {
            w.push(2 * self.n + j as usize);
        }
        w
    }
}

/// A^τ up to degree `cutoff` by PBW rewriting on the monomials
/// x^a y^b z^c e_j: z is central and y·x = x·y + τ z² with τ = Σ τ_j e_j.
pub fn build_atau(n: u32, tau: &TauVector, cutoff: i64) -> Result<GradedAlgebra, AlgebraError> {
    let cutoff = check(n, tau, cutoff)?;
    let n = n as usize;
    let mon: Vec<Monomials> = (0..=cutoff + 1).map(|k| Monomials::new(n, k)).collect();
    let unit = |k: usize, m: (usize, usize, usize, usize)| -> SparseVec<Rational> { vec![(mon[k].index[&m], q(1))] };
    let shift_x = |k: usize, v: &SparseVec<Rational>| -> SparseVec<Rational> {
        let mut out: SparseVec<Rational> = v
            .iter()
            .map(|(i, c)| {
                let (a, b, cc, j) = mon[k].list[*i];
                (mon[k + 1].index[&(a + 1, b, cc, j)], c.clone())
            })
            .collect();
        out.sort_by_key(|e| e.0);
        out
    };

    // ly[k][m] = y·m for m in degree k
    let mut ly: Vec<Vec<SparseVec<Rational>>> = Vec::new();
    for k in 0..cutoff {
        let mut row = Vec::with_capacity(mon[k].list.len());
        for &(a, b, c, j) in &mon[k].list {
            let v = if a == 0 {
                unit(k + 1, (0, b + 1, c, j))
            } else {
                let prev = mon[k - 1].index[&(a - 1, b, c, j)];
                let t = &tau.0[mon[k - 1].left((a - 1, b, c, j))];
                let xy = shift_x(k, &ly[k - 1][prev]);
                if t.is_zero() {
                    xy
                } else {
                    combine([(q(1), xy), (t.clone(), unit(k + 1, (a - 1, b, c + 2, j)))])
                }
            };
            row.push(v);
        }
        ly.push(row);
    }

    let gens = atau_generators(n);
    let mut left_mult = Vec::new();
    for k in 0..cutoff {
        let rows = mon[k + 1].list.len();
        let mats: Vec<SparseMatrix<Rational>> = (0..3 * n)
            .map(|g| {
                let (kind, i) = (g / n, g % n);
                let cols: Vec<SparseVec<Rational>> = mon[k]
                    .list
                    .iter()
                    .enumerate()
                    .map(|(idx, &(a, b, c, j))| {
                        if mon[k].left((a, b, c, j)) != i {
                            return Vec::new();
                        }
                        match kind {
                            0 => unit(k + 1, (a + 1, b, c, j)),
                            1 => ly[k][idx].clone(),
                            _ => unit(k + 1, (a, b, c + 1, j)),
                        }
                    })
                    .collect();
                SparseMatrix::from_columns(rows, &cols)
            })
            .collect();
        left_mult.push(mats);
    }

    // m·g = w₁·(tail(m)·g), where w₁ is the first letter of m
    let mut right_mult: Vec<Vec<SparseMatrix<Rational>>> = Vec::new();
    for k in 0..cutoff {
        let rows = mon[k + 1].list.len();
        let mut mats = Vec::with_capacity(3 * n);
        for (g, gen) in gens.iter().enumerate() {
            let cols: Vec<SparseVec<Rational>> = mon[k]
                .list
                .iter()
                .map(|&m| {
                    if m.3 != gen.source {
                        return Vec::new();
                    }
                    if k == 0 {
                        return left_mult[0][g].apply(&unit(0, (0, 0, 0, gen.target)));
                    }
                    let w = mon[k].word(m);
                    let (a, b, c, j) = m;
                    let tail = if a > 0 {
                        (a - 1, b, c, j)
                    } else if b > 0 {
                        (0, b - 1, c, j)
                    } else {
                        (0, 0, c - 1, j)
                    };
                    let t = right_mult[k - 1][g].apply(&unit(k - 1, tail));
                    left_mult[k][w[0]].apply(&t)
                })
                .collect();
            mats.push(SparseMatrix::from_columns(rows, &cols));
        }
        right_mult.push(mats);
    }

    let bases = (0..=cutoff)
        .map(|k| {
            mon[k]
                .list
                .iter()
                .map(|&m| BasisElement { word: mon[k].word(m), left: mon[k].left(m), right: m.3 })
                .collect()
        })
        .collect();
    Ok(GradedAlgebra { num_vertices: n, generators: gens, cutoff, bases, left_mult, right_mult })
}

/// The same algebra computed by the general quotient engine.
pub fn build_atau_by_quotient(n: u32, tau: &TauVector, cutoff: i64) -> Result<GradedAlgebra, AlgebraError> {
    let c = check(n, tau, cutoff)?;
    Ok(quotient_algebra(&atau_presentation(n, tau)?, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qf;

    #[test]
    fn dims_match_closed_form() {
        for n in 1..=3u32 {
            for tau in [TauVector::zero(n as usize), TauVector((0..n).map(|j| qf(j as i64 * 2 - 1, 3)).collect())] {
                let a = build_atau(n, &tau, 6).unwrap();
                for k in 0..=6 {
                    assert_eq!(a.dim(k), n as usize * (k + 1) * (k + 2) / 2);
                }
                a.check_associativity().unwrap();
                assert!(a.satisfies(&atau_presentation(n, &tau).unwrap()));
            }
        }
    }

    #[test]
    fn pbw_and_quotient_engines_agree() {
        for (n, t) in [(1u32, vec![3]), (2, vec![1, -1]), (3, vec![1, 2, -3])] {
            let tau = TauVector::from_ints(&t);
            let a = build_atau(n, &tau, 5).unwrap();
            let b = build_atau_by_quotient(n, &tau, 5).unwrap();
            for k in 0..=5 {
                assert_eq!(a.vertex_dims(k), b.vertex_dims(k));
            }
            b.check_associativity().unwrap();
        }
    }

    #[test]
    fn cyclic_two_commutator() {
        let a = build_atau(2, &TauVector::from_ints(&[1, -1]), 3).unwrap();
        assert_eq!(a.dim(2), 12);
        let find = |w: &[usize]| a.bases[2].iter().position(|b| b.word == w).unwrap();
        // generators: x0 x1 y0 y1 z0 z1
        for j in 0..2usize {
            let xj = a.generator_vector(j);
            let yx = a.left_mult[1][2 + (j + 1) % 2].apply(&xj);
            let xy = find(&[(j + 1) % 2, 2 + j]);
            let zz = find(&[4 + j, 4 + j]);
            let sign = if j == 0 { 1 } else { -1 };
            let mut expect = vec![(xy, q(1)), (zz, q(sign))];
            expect.sort_by_key(|e| e.0);
            assert_eq!(yx, expect);
        }
    }

    #[test]
    fn negative_cutoff_and_bad_tau() {
        assert!(matches!(build_atau(2, &TauVector::zero(2), -1), Err(AlgebraError::NegativeCutoff(-1))));
        assert!(matches!(build_atau(2, &TauVector::zero(3), 2), Err(AlgebraError::TauLength { .. })));
    }
}
