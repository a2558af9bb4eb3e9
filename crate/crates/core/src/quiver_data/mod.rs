//! Equivariant triples (B, I, J) in quiver coordinates: moment map,
//! stability and costability, gauge action and explicit solutions.

mod stability;
mod witnesses;

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::charrep::{build_group, GroupDescriptor};
use crate::error::QuiverError;
use crate::linalg::SparseMatrix;
use crate::mckay_lattice::{mckay_quiver, McKayQuiver, TauVector};
use crate::scalar::{fmt_rational, parse_rational};
use crate::{QMatrix, Rational};

pub use stability::{is_costable, is_stable, ClosureCertificate};
pub use witnesses::{cm_point, cycle_point, random_gauge, random_quiver_data, random_rational};

/// Builds the McKay quiver of a group descriptor.
pub fn quiver_for(g: GroupDescriptor) -> Result<Arc<McKayQuiver>, QuiverError> {
    let t = build_group(g).map_err(|e| QuiverError::Lattice(e.into()))?;
    Ok(Arc::new(mckay_quiver(&t)?))
}

/// B_k is the matrix of the Q-arrow k (shape v_inn x v_out), B*_k that of
/// its reverse (shape v_out x v_inn).
#[derive(Clone, Debug)]
pub struct QuiverData {
    pub quiver: Arc<McKayQuiver>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub b: Vec<QMatrix>,
    pub b_star: Vec<QMatrix>,
    pub i: Vec<QMatrix>,
    pub j: Vec<QMatrix>,
    pub tau: TauVector,
}

impl QuiverData {
    pub fn zeros(quiver: Arc<McKayQuiver>, v: Vec<usize>, w: Vec<usize>, tau: TauVector) -> Result<Self, QuiverError> {
        let n = quiver.num_vertices();
        if v.len() != n || w.len() != n || tau.len() != n {
            return Err(QuiverError::Shape(format!("expected {n} entries in v, w and tau")));
        }
        let b = quiver.arrows().iter().map(|a| QMatrix::zeros(v[a.inn], v[a.out])).collect();
        let b_star = quiver.arrows().iter().map(|a| QMatrix::zeros(v[a.out], v[a.inn])).collect();
        let i = (0..n).map(|k| QMatrix::zeros(v[k], w[k])).collect();
        let j = (0..n).map(|k| QMatrix::zeros(w[k], v[k])).collect();
        Ok(QuiverData { quiver, v, w, b, b_star, i, j, tau })
    }

    pub fn num_vertices(&self) -> usize {
        self.v.len()
    }

    pub fn check_shapes(&self) -> Result<(), QuiverError> {
        let q = &self.quiver;
        let n = q.num_vertices();
        let bad = |s: String| Err(QuiverError::Shape(s));
        if self.v.len() != n || self.w.len() != n || self.tau.len() != n || self.i.len() != n || self.j.len() != n {
            return bad(format!("per-vertex data must have {n} entries"));
        }
        if self.b.len() != q.arrows().len() || self.b_star.len() != q.arrows().len() {
            return bad(format!("expected {} arrow matrices", q.arrows().len()));
        }
        for (k, a) in q.arrows().iter().enumerate() {
            if self.b[k].shape() != (self.v[a.inn], self.v[a.out]) {
                return bad(format!("B[{k}] has shape {:?}", self.b[k].shape()));
            }
            if self.b_star[k].shape() != (self.v[a.out], self.v[a.inn]) {
                return bad(format!("B*[{k}] has shape {:?}", self.b_star[k].shape()));
            }
        }
        for k in 0..n {
            if self.i[k].shape() != (self.v[k], self.w[k]) {
                return bad(format!("I[{k}] has shape {:?}", self.i[k].shape()));
            }
            if self.j[k].shape() != (self.w[k], self.v[k]) {
                return bad(format!("J[{k}] has shape {:?}", self.j[k].shape()));
            }
        }
        Ok(())
    }

    /// μ_i = Σ_{in(a)=i} B_a B_a* − Σ_{out(a)=i} B_a* B_a + I_i J_i.
    pub fn moment_map(&self) -> Result<Vec<QMatrix>, QuiverError> {
        self.check_shapes()?;
        let mut mu: Vec<QMatrix> = (0..self.num_vertices()).map(|k| self.i[k].mul(&self.j[k])).collect();
        for (k, a) in self.quiver.arrows().iter().enumerate() {
            mu[a.inn] = mu[a.inn].add(&self.b[k].mul(&self.b_star[k]));
            mu[a.out] = mu[a.out].sub(&self.b_star[k].mul(&self.b[k]));
        }
        Ok(mu)
    }

    /// The transpose-dual triple (B*, J*, I*) on the dual spaces.
    pub fn dual(&self) -> QuiverData {
        QuiverData {
            quiver: self.quiver.clone(),
            v: self.v.clone(),
            w: self.w.clone(),
            b: self.b_star.iter().map(|m| m.transpose()).collect(),
            b_star: self.b.iter().map(|m| m.transpose()).collect(),
            i: self.j.iter().map(|m| m.transpose()).collect(),
            j: self.i.iter().map(|m| m.transpose()).collect(),
            tau: self.tau.clone(),
        }
    }

    pub fn to_json(&self) -> QuiverDataJson {
        let m = |x: &QMatrix| MatrixJson::from(x);
        QuiverDataJson {
            group: self.quiver.group().to_string(),
            v: self.v.clone(),
            w: self.w.clone(),
            tau: self.tau.to_strings(),
            arrows: self
                .quiver
                .arrows()
                .iter()
                .enumerate()
                .map(|(k, a)| ArrowData { out: a.out, inn: a.inn, b: m(&self.b[k]), b_star: m(&self.b_star[k]) })
                .collect(),
            i: self.i.iter().map(m).collect(),
            j: self.j.iter().map(m).collect(),
        }
    }

    pub fn from_json(js: &QuiverDataJson) -> Result<Self, QuiverError> {
        let g: GroupDescriptor = js.group.parse().map_err(|e: crate::error::CharrepError| QuiverError::Parse(e.to_string()))?;
        let quiver = quiver_for(g)?;
        let tau = TauVector(
            js.tau.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>().map_err(|e| QuiverError::Parse(e.to_string()))?,
        );
        let n = quiver.num_vertices();
        if js.arrows.len() != quiver.arrows().len() {
            return Err(QuiverError::Parse(format!("expected {} arrows", quiver.arrows().len())));
        }
        for (k, (a, d)) in quiver.arrows().iter().zip(&js.arrows).enumerate() {
            if a.out != d.out || a.inn != d.inn {
                return Err(QuiverError::Parse(format!("arrow {k} does not match the quiver orientation")));
            }
        }
        let parse = |m: &MatrixJson| m.to_matrix();
        let d = QuiverData {
            quiver,
            v: js.v.clone(),
            w: js.w.clone(),
            b: js.arrows.iter().map(|a| parse(&a.b)).collect::<Result<_, _>>()?,
            b_star: js.arrows.iter().map(|a| parse(&a.b_star)).collect::<Result<_, _>>()?,
            i: js.i.iter().map(parse).collect::<Result<_, _>>()?,
            j: js.j.iter().map(parse).collect::<Result<_, _>>()?,
            tau,
        };
        if d.v.len() != n {
            return Err(QuiverError::Parse(format!("v must have {n} entries")));
        }
        d.check_shapes()?;
        Ok(d)
    }
}

impl PartialEq for QuiverData {
    fn eq(&self, o: &Self) -> bool {
        self.quiver.group() == o.quiver.group()
            && self.v == o.v
            && self.w == o.w
            && self.b == o.b
            && self.b_star == o.b_star
            && self.i == o.i
            && self.j == o.j
            && self.tau == o.tau
    }
}

/// μ_i − τ_i·Id per vertex.
pub fn moment_residual(d: &QuiverData) -> Result<Vec<QMatrix>, QuiverError> {
    let mu = d.moment_map()?;
    Ok(mu
        .into_iter()
        .enumerate()
        .map(|(k, m)| m.sub(&QMatrix::scalar(d.v[k], d.tau.0[k].clone())))
        .collect())
}

pub fn residual_is_zero(d: &QuiverData) -> Result<bool, QuiverError> {
    Ok(moment_residual(d)?.iter().all(|m| m.is_zero()))
}

/// Rank of [B, B*]_i − τ_i·Id per vertex; at a solution this is rank(I_i J_i) ≤ w_i.
pub fn defect_ranks(d: &QuiverData) -> Result<Vec<usize>, QuiverError> {
    let res = moment_residual(d)?;
    Ok(res.iter().enumerate().map(|(k, r)| r.sub(&d.i[k].mul(&d.j[k])).rank()).collect())
}

/// Per-vertex invertible matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeElement {
    pub g: Vec<QMatrix>,
}

impl GaugeElement {
    pub fn identity(v: &[usize]) -> Self {
        GaugeElement { g: v.iter().map(|&k| QMatrix::identity(k)).collect() }
    }

    pub fn inverse(&self) -> Result<Vec<QMatrix>, QuiverError> {
        self.g.iter().enumerate().map(|(k, m)| m.inverse().ok_or(QuiverError::Singular(k))).collect()
    }
}

/// g·(B, I, J) = (g B g⁻¹, g I, J g⁻¹).
pub fn act(g: &GaugeElement, d: &QuiverData) -> Result<QuiverData, QuiverError> {
    d.check_shapes()?;
    if g.g.len() != d.num_vertices() || g.g.iter().zip(&d.v).any(|(m, &k)| m.shape() != (k, k)) {
        return Err(QuiverError::Shape("gauge element does not match the dimension vector".into()));
    }
    let gi = g.inverse()?;
    let mut out = d.clone();
    for (k, a) in d.quiver.arrows().iter().enumerate() {
        out.b[k] = g.g[a.inn].mul(&d.b[k]).mul(&gi[a.out]);
        out.b_star[k] = g.g[a.out].mul(&d.b_star[k]).mul(&gi[a.inn]);
    }
    for k in 0..d.num_vertices() {
        out.i[k] = g.g[k].mul(&d.i[k]);
        out.j[k] = d.j[k].mul(&gi[k]);
    }
    Ok(out)
}

/// 2 Σ_{a∈Q} v_out v_in + 2 Σ v_i w_i − 2 Σ v_i².
pub fn expected_dim(q: &McKayQuiver, v: &[usize], w: &[usize]) -> i64 {
    let arrows: i64 = q.arrows().iter().map(|a| (v[a.out] * v[a.inn]) as i64).sum();
    let vw: i64 = v.iter().zip(w).map(|(a, b)| (a * b) as i64).sum();
    let vv: i64 = v.iter().map(|a| (a * a) as i64).sum();
    2 * arrows + 2 * vw - 2 * vv
}

/// Exact rank of dμ at d, as a map from all (δB, δB*, δI, δJ) to ⊕ End(V_i).
pub fn moment_jacobian_rank(d: &QuiverData) -> Result<usize, QuiverError> {
    d.check_shapes()?;
    let n = d.num_vertices();
    let mut offset = vec![0usize; n + 1];
    for k in 0..n {
        offset[k + 1] = offset[k] + d.v[k] * d.v[k];
    }
    let target = offset[n];
    let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();
    let push = |cols: &mut Vec<Vec<(usize, Rational)>>, parts: Vec<(usize, QMatrix)>| {
        let mut col = Vec::new();
        for (vert, m) in parts {
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    if !m[(r, c)].is_zero() {
                        col.push((offset[vert] + r * m.cols() + c, m[(r, c)].clone()));
                    }
                }
            }
        }
        col.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, Rational)> = Vec::new();
        for (i, x) in col {
            match merged.last_mut() {
                Some(l) if l.0 == i => l.1 += x,
                _ => merged.push((i, x)),
            }
        }
        merged.retain(|e| !e.1.is_zero());
        cols.push(merged);
    };
    let unit = |r: usize, c: usize, rr: usize, cc: usize| {
        let mut m = QMatrix::zeros(r, c);
        m[(rr, cc)] = crate::scalar::q(1);
        m
    };
    for (k, a) in d.quiver.arrows().iter().enumerate() {
        let (vo, vi) = (d.v[a.out], d.v[a.inn]);
        for r in 0..vi {
            for c in 0..vo {
                let e = unit(vi, vo, r, c);
                push(&mut cols, vec![(a.inn, e.mul(&d.b_star[k])), (a.out, d.b_star[k].mul(&e).scale(&crate::scalar::q(-1)))]);
            }
        }
        for r in 0..vo {
            for c in 0..vi {
                let e = unit(vo, vi, r, c);
                push(&mut cols, vec![(a.inn, d.b[k].mul(&e)), (a.out, e.mul(&d.b[k]).scale(&crate::scalar::q(-1)))]);
            }
        }
    }
    for k in 0..n {
        for r in 0..d.v[k] {
            for c in 0..d.w[k] {
                push(&mut cols, vec![(k, unit(d.v[k], d.w[k], r, c).mul(&d.j[k]))]);
            }
        }
        for r in 0..d.w[k] {
            for c in 0..d.v[k] {
                push(&mut cols, vec![(k, d.i[k].mul(&unit(d.w[k], d.v[k], r, c)))]);
            }
        }
    }
    Ok(SparseMatrix::from_columns(target, &cols).rank())
}

/// Matrix as rows of `p/q` strings, with explicit shape so empty matrices
/// keep their dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl From<&QMatrix> for MatrixJson {
    fn from(m: &QMatrix) -> Self {
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries: (0..m.rows()).map(|r| m.row(r).iter().map(fmt_rational).collect()).collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<QMatrix, QuiverError> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(QuiverError::Parse(format!("matrix entries do not match shape {}x{}", self.rows, self.cols)));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| QuiverError::Parse(e.to_string()))?;
        Ok(QMatrix::from_rows_with_cols(rows, self.cols))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowData {
    pub out: usize,
    pub inn: usize,
    pub b: MatrixJson,
    pub b_star: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDataJson {
    pub group: String,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub tau: Vec<String>,
    pub arrows: Vec<ArrowData>,
    pub i: Vec<MatrixJson>,
    pub j: Vec<MatrixJson>,
}
