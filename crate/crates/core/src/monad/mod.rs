//! The monad V⊗O(−1) → (V⊗L ⊕ W)⊗O → V⊗O(1) attached to quiver data over a
//! cyclic group, assembled degree by degree over A^τ.

mod analysis;

use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::charrep::GroupDescriptor;
use crate::error::MonadError;
use crate::graded_algebra::{build_atau, GradedAlgebra};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::quiver_data::{moment_residual, QuiverData};
use crate::scalar::q;
use crate::{QMatrix, Rational};

pub use analysis::{
    cohomology_dims, framing_check, hilbert_fit, hilbert_fit_with, hilbert_value, monad_report, z_injectivity_check,
    CohomologyDims, FramingReport, HilbertFit, MonadReport, ZInjectivityReport,
};

/// Which coordinate of L an arrow of Q feeds: x lowers the vertex index,
/// y raises it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrowRole {
    X,
    Y,
}

pub(crate) fn arrow_roles(d: &QuiverData) -> Vec<ArrowRole> {
    let n = d.num_vertices();
    d.quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(k, a)| match n {
            1 => ArrowRole::X,
            2 => {
                if k == 0 {
                    ArrowRole::Y
                } else {
                    ArrowRole::X
                }
            }
            _ => {
                if a.inn == (a.out + 1) % n {
                    ArrowRole::Y
                } else {
                    ArrowRole::X
                }
            }
        })
        .collect()
}

/// B_x|V_i : V_i → V_{i−1} and B_y|V_i : V_i → V_{i+1}, read off the arrows
/// of Q. An arrow of role y from i gives B_y|V_i = B_a and B_x|V_{i+1} = −B_{a*};
/// an arrow of role x from i gives B_x|V_i = B_a and B_y|V_{i−1} = B_{a*}.
pub fn directional_maps(d: &QuiverData) -> (Vec<QMatrix>, Vec<QMatrix>) {
    let n = d.num_vertices();
    let v = &d.v;
    let mut bx: Vec<QMatrix> = (0..n).map(|i| QMatrix::zeros(v[(i + n - 1) % n], v[i])).collect();
    let mut by: Vec<QMatrix> = (0..n).map(|i| QMatrix::zeros(v[(i + 1) % n], v[i])).collect();
    for (k, (a, role)) in d.quiver.arrows().iter().zip(arrow_roles(d)).enumerate() {
        match role {
            ArrowRole::Y => {
                by[a.out] = d.b[k].clone();
                bx[a.inn] = d.b_star[k].scale(&q(-1));
            }
            ArrowRole::X => {
                bx[a.out] = d.b[k].clone();
                by[a.inn] = d.b_star[k].clone();
            }
        }
    }
    (bx, by)
}

/// Index layout of ⊕_seg (multiplicity space) ⊗ e_{left(seg)} A_k, with
/// segments stored as (offset, multiplicity, left vertex).
#[derive(Clone, Debug)]
pub(crate) struct Space {
    pub segs: Vec<(usize, usize, usize)>,
    pub dim: usize,
}

pub(crate) struct DegreeIndex {
    pub by_left: Vec<Vec<usize>>,
    pub pos: Vec<usize>,
}

impl DegreeIndex {
    pub(crate) fn new(alg: &GradedAlgebra, k: usize) -> Self {
        let mut by_left = vec![Vec::new(); alg.num_vertices];
        let mut pos = vec![0; alg.dim(k)];
        for (i, b) in alg.bases[k].iter().enumerate() {
            pos[i] = by_left[b.left].len();
            by_left[b.left].push(i);
        }
        DegreeIndex { by_left, pos }
    }
}

impl Space {
    /// `segs` lists (multiplicity, left vertex) pairs.
    fn new(idx: &DegreeIndex, segs: &[(usize, usize)]) -> Self {
        let mut out = Vec::new();
        let mut off = 0;
        for &(mult, left) in segs {
            out.push((off, mult, left));
            off += mult * idx.by_left[left].len();
        }
        Space { segs: out, dim: off }
    }

    fn index(&self, ix: &DegreeIndex, seg: usize, r: usize, m: usize) -> usize {
        let (off, _, left) = self.segs[seg];
        off + r * ix.by_left[left].len() + ix.pos[m]
    }
}

/// Matrices and ranks at one internal degree k.
#[derive(Clone, Debug)]
pub struct MonadDegree {
    pub degree: usize,
    pub dom_dim: usize,
    pub mid_dim: usize,
    pub cod_dim: usize,
    /// a_k : V⊗A_{k−1} → (V⊗L ⊕ W)⊗A_k
    pub a: SparseMatrix<Rational>,
    /// b_k : (V⊗L ⊕ W)⊗A_k → V⊗A_{k+1}
    pub b: SparseMatrix<Rational>,
    /// left multiplication by (μ − τ)z² : V⊗A_{k−1} → V⊗A_{k+1}
    pub expected_ba: SparseMatrix<Rational>,
    pub dom_right: Vec<usize>,
    pub mid_right: Vec<usize>,
    pub cod_right: Vec<usize>,
    pub rank_a: usize,
    pub rank_b: usize,
    /// ranks of a_k and b_k restricted to each right-vertex (isotypic) block
    pub rank_a_blocks: Vec<usize>,
    pub rank_b_blocks: Vec<usize>,
}

impl MonadDegree {
    pub fn composition(&self) -> SparseMatrix<Rational> {
        self.b.mul(&self.a)
    }

    pub fn composition_matches(&self) -> bool {
        self.composition() == self.expected_ba
    }

    pub fn is_equivariant(&self) -> bool {
        let check = |m: &SparseMatrix<Rational>, rows: &[usize], cols: &[usize]| {
            m.data.iter().enumerate().all(|(i, r)| r.iter().all(|(j, _)| rows[i] == cols[*j]))
        };
        check(&self.a, &self.mid_right, &self.dom_right) && check(&self.b, &self.cod_right, &self.mid_right)
    }

    pub fn cohomology(&self) -> usize {
        self.mid_dim.saturating_sub(self.rank_a + self.rank_b)
    }

    pub fn injective(&self) -> bool {
        self.rank_a == self.dom_dim
    }

    pub fn surjective(&self) -> bool {
        self.rank_b == self.cod_dim
    }
}

#[derive(Clone, Debug)]
pub struct MonadModel {
    pub data: QuiverData,
    pub cutoff: usize,
    pub algebra: Arc<GradedAlgebra>,
    pub degrees: Vec<MonadDegree>,
    pub(crate) mid_spaces: Vec<Space>,
}

fn block_ranks(m: &SparseMatrix<Rational>, col_right: &[usize], n: usize) -> Vec<usize> {
    let t = m.transpose();
    (0..n)
        .map(|j| {
            let cols: Vec<SparseVec<Rational>> =
                t.data.iter().enumerate().filter(|(c, _)| col_right[*c] == j).map(|(_, v)| v.clone()).collect();
            SparseMatrix { rows: cols.len(), cols: m.rows, data: cols }.rank()
        })
        .collect()
}

fn accumulate(col: &mut std::collections::BTreeMap<usize, Rational>, row: usize, x: Rational) {
    if x.is_zero() {
        return;
    }
    let e = col.entry(row).or_insert_with(Rational::zero);
    *e += x;
}

fn finish(col: std::collections::BTreeMap<usize, Rational>) -> SparseVec<Rational> {
    col.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Assembles a_k, b_k for k = 0..=cutoff.
pub fn assemble(d: &QuiverData, cutoff: usize) -> Result<MonadModel, MonadError> {
    d.check_shapes()?;
    let n = match d.quiver.group() {
        GroupDescriptor::Trivial => 1,
        GroupDescriptor::Cyclic(n) => n,
        g => {
            return Err(MonadError::Unsupported(format!(
                "{g}: the exact engine needs one-dimensional irreducibles; non-cyclic groups would go through the preprojective algebra"
            )))
        }
    };
    let alg = Arc::new(build_atau(n, &d.tau, cutoff as i64 + 1)?);
    let n = n as usize;
    let (bx, by) = directional_maps(d);
    let rho = moment_residual(d)?;
    let v = &d.v;
    let w = &d.w;
    let prev = |i: usize| (i + n - 1) % n;
    let next = |i: usize| (i + 1) % n;
    let idx: Vec<DegreeIndex> = (0..=cutoff + 1).map(|k| DegreeIndex::new(&alg, k)).collect();
    let lmul = |k: usize, kind: usize, m: usize| -> SparseVec<Rational> {
        let left = alg.bases[k][m].left;
        alg.left_mult[k][kind * n + left].apply(&vec![(m, q(1))])
    };
    let vsegs: Vec<(usize, usize)> = (0..n).map(|i| (v[i], i)).collect();
    let mut msegs: Vec<(usize, usize)> = (0..n).map(|j| (v[j], next(j))).collect();
    msegs.extend((0..n).map(|j| (v[j], prev(j))));
    msegs.extend((0..n).map(|i| (w[i], i)));
    let (px, py, pw) = (0, n, 2 * n);

    let mut degrees = Vec::new();
    let mut mid_spaces = Vec::new();
    for k in 0..=cutoff {
        let dom = if k == 0 { None } else { Some(Space::new(&idx[k - 1], &vsegs)) };
        let mid = Space::new(&idx[k], &msegs);
        let cod = Space::new(&idx[k + 1], &vsegs);
        let rights = |space: &Space, kk: usize| -> Vec<usize> {
            let mut r = Vec::with_capacity(space.dim);
            for &(_, mult, left) in &space.segs {
                for _ in 0..mult {
                    for &m in &idx[kk].by_left[left] {
                        r.push(alg.bases[kk][m].right);
                    }
                }
            }
            r
        };
        let mid_right = rights(&mid, k);
        let cod_right = rights(&cod, k + 1);

        let mut a_cols = Vec::new();
        let mut e_cols = Vec::new();
        let mut dom_right = Vec::new();
        if let Some(dom) = &dom {
            dom_right = rights(dom, k - 1);
            for i in 0..n {
                for r in 0..v[i] {
                    for &m in &idx[k - 1].by_left[i] {
                        let (xm, ym, zm) = (lmul(k - 1, 0, m), lmul(k - 1, 1, m), lmul(k - 1, 2, m));
                        let mut col = std::collections::BTreeMap::new();
                        for s in 0..v[prev(i)] {
                            let c = &bx[i][(s, r)];
                            for (m2, x) in &zm {
                                accumulate(&mut col, mid.index(&idx[k], px + prev(i), s, *m2), c * x);
                            }
                        }
                        for (m2, x) in &xm {
                            accumulate(&mut col, mid.index(&idx[k], px + i, r, *m2), -x.clone());
                        }
                        for s in 0..v[next(i)] {
                            let c = &by[i][(s, r)];
                            for (m2, x) in &zm {
                                accumulate(&mut col, mid.index(&idx[k], py + next(i), s, *m2), c * x);
                            }
                        }
                        for (m2, x) in &ym {
                            accumulate(&mut col, mid.index(&idx[k], py + i, r, *m2), -x.clone());
                        }
                        for s in 0..w[i] {
                            let c = &d.j[i][(s, r)];
                            for (m2, x) in &zm {
                                accumulate(&mut col, mid.index(&idx[k], pw + i, s, *m2), c * x);
                            }
                        }
                        a_cols.push(finish(col));
                        // (μ − τ) z² on this basis vector
                        let zzm = alg.left_mult[k][2 * n + i].apply(&zm);
                        let mut ecol = std::collections::BTreeMap::new();
                        for s in 0..v[i] {
                            let c = &rho[i][(s, r)];
                            for (m2, x) in &zzm {
                                accumulate(&mut ecol, cod.index(&idx[k + 1], i, s, *m2), c * x);
                            }
                        }
                        e_cols.push(finish(ecol));
                    }
                }
            }
        }
        let dom_dim = dom.as_ref().map_or(0, |s| s.dim);
        let a = SparseMatrix::from_columns(mid.dim, &a_cols);
        let expected_ba = SparseMatrix::from_columns(cod.dim, &e_cols);

        let mut b_cols = Vec::new();
        for j in 0..n {
            for r in 0..v[j] {
                for &m in &idx[k].by_left[next(j)] {
                    let (ym, zm) = (lmul(k, 1, m), lmul(k, 2, m));
                    let mut col = std::collections::BTreeMap::new();
                    for s in 0..v[next(j)] {
                        let c = &by[j][(s, r)];
                        for (m2, x) in &zm {
                            accumulate(&mut col, cod.index(&idx[k + 1], next(j), s, *m2), -(c * x));
                        }
                    }
                    for (m2, x) in &ym {
                        accumulate(&mut col, cod.index(&idx[k + 1], j, r, *m2), x.clone());
                    }
                    b_cols.push(finish(col));
                }
            }
        }
        for j in 0..n {
            for r in 0..v[j] {
                for &m in &idx[k].by_left[prev(j)] {
                    let (xm, zm) = (lmul(k, 0, m), lmul(k, 2, m));
                    let mut col = std::collections::BTreeMap::new();
                    for s in 0..v[prev(j)] {
                        let c = &bx[j][(s, r)];
                        for (m2, x) in &zm {
                            accumulate(&mut col, cod.index(&idx[k + 1], prev(j), s, *m2), c * x);
                        }
                    }
                    for (m2, x) in &xm {
                        accumulate(&mut col, cod.index(&idx[k + 1], j, r, *m2), -x.clone());
                    }
                    b_cols.push(finish(col));
                }
            }
        }
        for i in 0..n {
            for r in 0..w[i] {
                for &m in &idx[k].by_left[i] {
                    let zm = lmul(k, 2, m);
                    let mut col = std::collections::BTreeMap::new();
                    for s in 0..v[i] {
                        let c = &d.i[i][(s, r)];
                        for (m2, x) in &zm {
                            accumulate(&mut col, cod.index(&idx[k + 1], i, s, *m2), c * x);
                        }
                    }
                    b_cols.push(finish(col));
                }
            }
        }
        let b = SparseMatrix::from_columns(cod.dim, &b_cols);
        let rank_a_blocks = block_ranks(&a, &dom_right, n);
        let rank_b_blocks = block_ranks(&b, &mid_right, n);
        degrees.push(MonadDegree {
            degree: k,
            dom_dim,
            mid_dim: mid.dim,
            cod_dim: cod.dim,
            rank_a: rank_a_blocks.iter().sum(),
            rank_b: rank_b_blocks.iter().sum(),
            a,
            b,
            expected_ba,
            dom_right,
            mid_right,
            cod_right,
            rank_a_blocks,
            rank_b_blocks,
        });
        mid_spaces.push(mid);
    }
    Ok(MonadModel { data: d.clone(), cutoff, algebra: alg, degrees, mid_spaces })
}

pub const DEFAULT_MIN_WINDOW: usize = 3;

/// Per-degree injectivity of a and surjectivity of b. On global sections b_k
/// can only be onto from some degree on, so surjectivity is certified on a
/// final window [surjective_from, N] of at least `min_window` degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadCertificate {
    pub composition_zero: bool,
    /// first degree where b∘a is nonzero
    pub composition_failure: Option<usize>,
    pub injective: Vec<bool>,
    pub surjective: Vec<bool>,
    pub first_non_injective: Option<usize>,
    pub last_non_surjective: Option<usize>,
    pub surjective_from: Option<usize>,
    pub min_window: usize,
    pub certified: bool,
}

impl MonadCertificate {
    pub fn diagnostic(&self) -> Option<String> {
        if let Some(k) = self.composition_failure {
            return Some(format!("b∘a is nonzero in degree {k}"));
        }
        if let Some(k) = self.first_non_injective {
            return Some(format!("a is not injective in degree {k}"));
        }
        if self.surjective_from.is_none() {
            return Some(match self.last_non_surjective {
                Some(k) => format!("b is not surjective in degree {k}"),
                None => "surjectivity window too short".into(),
            });
        }
        None
    }
}

pub fn certify(m: &MonadModel) -> MonadCertificate {
    certify_with(m, DEFAULT_MIN_WINDOW)
}

pub fn certify_with(m: &MonadModel, min_window: usize) -> MonadCertificate {
    let composition_failure = m.degrees.iter().find(|d| !d.composition().is_zero()).map(|d| d.degree);
    let injective: Vec<bool> = m.degrees.iter().map(|d| d.injective()).collect();
    let surjective: Vec<bool> = m.degrees.iter().map(|d| d.surjective()).collect();
    let first_non_injective = injective.iter().position(|x| !x);
    let last_non_surjective = surjective.iter().rposition(|x| !x);
    let start = last_non_surjective.map_or(0, |k| k + 1);
    let surjective_from = (m.cutoff + 1 >= start + min_window).then_some(start);
    let composition_zero = composition_failure.is_none();
    MonadCertificate {
        composition_zero,
        composition_failure,
        certified: composition_zero && first_non_injective.is_none() && surjective_from.is_some(),
        injective,
        surjective,
        first_non_injective,
        last_non_surjective,
        surjective_from,
        min_window,
    }
}
