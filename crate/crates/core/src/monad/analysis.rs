use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::{certify, DegreeIndex, MonadCertificate, MonadModel, DEFAULT_MIN_WINDOW};
use crate::error::MonadError;
use crate::graded_algebra::{cohomology_of_twist, euler_characteristic};
use crate::linalg::{SparseMatrix, SparseVec};
use crate::scalar::{fmt_rational, q};
use crate::Rational;

fn require_certified(m: &MonadModel) -> Result<MonadCertificate, MonadError> {
    let c = certify(m);
    match c.diagnostic() {
        None => Ok(c),
        Some(d) => Err(MonadError::Uncertified(d)),
    }
}

fn block_dims(right: &[usize], n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for &r in right {
        d[r] += 1;
    }
    d
}

/// dim ker b_k / im a_k per degree, total and per right-vertex block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub total: Vec<usize>,
    pub isotypic: Vec<Vec<usize>>,
}

fn raw_cohomology(m: &MonadModel) -> CohomologyDims {
    let n = m.algebra.num_vertices;
    let isotypic: Vec<Vec<usize>> = m
        .degrees
        .iter()
        .map(|d| {
            let mid = block_dims(&d.mid_right, n);
            (0..n).map(|j| mid[j] - d.rank_a_blocks[j] - d.rank_b_blocks[j]).collect()
        })
        .collect();
    CohomologyDims { total: isotypic.iter().map(|v| v.iter().sum()).collect(), isotypic }
}

pub fn cohomology_dims(m: &MonadModel) -> Result<CohomologyDims, MonadError> {
    require_certified(m)?;
    Ok(raw_cohomology(m))
}

/// h_E(t) = c0 + c1 t + c2 t², with r = 2 c2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFit {
    pub coefficients: [String; 3],
    pub rank: i64,
    pub h_at_minus1: i64,
    /// h_E(t) for t = 0..=N
    pub values: Vec<i64>,
    /// first degree from which the computed dimensions agree with h_E through N
    pub stabilization_degree: Option<usize>,
    pub matches: bool,
}

/// h_E(t) = dim(V⊗L ⊕ W)·χ(O(t)) − dim V·(χ(O(t−1)) + χ(O(t+1))), where
/// χ(O(i)) is read from the twist cohomology divided by |Γ|.
pub fn hilbert_value(m: &MonadModel, t: i64) -> i64 {
    let table = m.data.quiver.table();
    let order = table.order() as i64;
    let chi = |i: i64| euler_characteristic(table, &cohomology_of_twist(table, i)) / order;
    let dv: i64 = m.data.v.iter().sum::<usize>() as i64;
    let dw: i64 = m.data.w.iter().sum::<usize>() as i64;
    (2 * dv + dw) * chi(t) - dv * (chi(t - 1) + chi(t + 1))
}

pub fn hilbert_fit(m: &MonadModel) -> HilbertFit {
    hilbert_fit_with(m, DEFAULT_MIN_WINDOW)
}

pub fn hilbert_fit_with(m: &MonadModel, min_window: usize) -> HilbertFit {
    let h = |t: i64| Rational::from_integer(hilbert_value(m, t).into());
    let (h0, h1, h2) = (h(0), h(1), h(2));
    let two = q(2);
    let c2 = (&h2 - &h1 * &two + &h0) / &two;
    let c1 = &h1 - &h0 - &c2;
    let rank = (&c2 * &two).to_integer().to_i64().unwrap();
    let values: Vec<i64> = (0..=m.cutoff as i64).map(|t| hilbert_value(m, t)).collect();
    let composition_zero = m.degrees.iter().all(|d| d.composition().is_zero());
    let mut start = None;
    if composition_zero {
        let dims = raw_cohomology(m).total;
        let mut t0 = m.cutoff + 1;
        while t0 > 0 && dims[t0 - 1] as i64 == values[t0 - 1] {
            t0 -= 1;
        }
        if m.cutoff + 1 >= t0 + min_window {
            start = Some(t0);
        }
    }
    HilbertFit {
        coefficients: [fmt_rational(&h0), fmt_rational(&c1), fmt_rational(&c2)],
        rank,
        h_at_minus1: hilbert_value(m, -1),
        values,
        stabilization_degree: start,
        matches: start.is_some(),
    }
}

/// Left multiplication by z on the middle term, degree k−1 → k.
fn z_on_middle(m: &MonadModel, k: usize) -> SparseMatrix<Rational> {
    let alg = &m.algebra;
    let n = alg.num_vertices;
    let (ia, ib) = (DegreeIndex::new(alg, k - 1), DegreeIndex::new(alg, k));
    let (sa, sb) = (&m.mid_spaces[k - 1], &m.mid_spaces[k]);
    let mut cols = Vec::with_capacity(sa.dim);
    for (seg, &(_, mult, left)) in sa.segs.iter().enumerate() {
        for r in 0..mult {
            for &mm in &ia.by_left[left] {
                let zm = alg.left_mult[k - 1][2 * n + left].apply(&vec![(mm, q(1))]);
                let mut col: SparseVec<Rational> = zm.into_iter().map(|(m2, x)| (sb.index(&ib, seg, r, m2), x)).collect();
                col.sort_by_key(|e| e.0);
                cols.push(col);
            }
        }
    }
    SparseMatrix::from_columns(sb.dim, &cols)
}

/// Per right-vertex block rank of span(im a_k + z·ker b_{k−1}) inside Mid_k.
fn z_span_blocks(m: &MonadModel, k: usize) -> Vec<usize> {
    let n = m.algebra.num_vertices;
    let d = &m.degrees[k];
    let prev = &m.degrees[k - 1];
    let z = z_on_middle(m, k);
    let ker = prev.b.kernel();
    let mut per_block: BTreeMap<usize, Vec<SparseVec<Rational>>> = BTreeMap::new();
    let at = d.a.transpose();
    for (c, col) in at.data.iter().enumerate() {
        per_block.entry(d.dom_right[c]).or_default().push(col.clone());
    }
    for v in ker {
        let zv = z.apply(&v);
        if let Some((i, _)) = zv.first() {
            per_block.entry(d.mid_right[*i]).or_default().push(zv);
        }
    }
    (0..n)
        .map(|j| {
            let rows = per_block.remove(&j).unwrap_or_default();
            SparseMatrix { rows: rows.len(), cols: d.mid_dim, data: rows }.rank()
        })
        .collect()
}

/// Dimensions of the framing quotient E_k / z·E_{k−1} near the cutoff,
/// compared with W ⊗ Sym^k⟨x, y⟩ block by block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FramingReport {
    pub degrees: Vec<usize>,
    pub dims: Vec<usize>,
    pub expected: Vec<usize>,
    pub isotypic_dims: Vec<Vec<usize>>,
    pub isotypic_expected: Vec<Vec<usize>>,
    pub ok: bool,
}

fn framing_expected(m: &MonadModel, k: usize) -> Vec<usize> {
    let n = m.algebra.num_vertices;
    (0..n)
        .map(|j| {
            (0..=k)
                .map(|a| {
                    let i = (j as i64 + a as i64 - (k - a) as i64).rem_euclid(n as i64) as usize;
                    m.data.w[i]
                })
                .sum()
        })
        .collect()
}

pub fn framing_check(m: &MonadModel, window: usize) -> Result<FramingReport, MonadError> {
    require_certified(m)?;
    let n = m.algebra.num_vertices;
    let lo = (m.cutoff + 1).saturating_sub(window.max(1)).max(1);
    let mut rep = FramingReport {
        degrees: Vec::new(),
        dims: Vec::new(),
        expected: Vec::new(),
        isotypic_dims: Vec::new(),
        isotypic_expected: Vec::new(),
        ok: true,
    };
    for k in lo..=m.cutoff {
        let d = &m.degrees[k];
        let mid = block_dims(&d.mid_right, n);
        let span = z_span_blocks(m, k);
        let iso: Vec<usize> = (0..n).map(|j| mid[j] - d.rank_b_blocks[j] - span[j]).collect();
        let exp = framing_expected(m, k);
        rep.ok &= iso == exp;
        rep.degrees.push(k);
        rep.dims.push(iso.iter().sum());
        rep.expected.push(exp.iter().sum());
        rep.isotypic_dims.push(iso);
        rep.isotypic_expected.push(exp);
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZInjectivityReport {
    pub degrees: Vec<usize>,
    pub source_dims: Vec<usize>,
    pub image_dims: Vec<usize>,
    pub injective: bool,
}

/// z : E_{k−1} → E_k for k = 1..=N.
pub fn z_injectivity_check(m: &MonadModel) -> Result<ZInjectivityReport, MonadError> {
    require_certified(m)?;
    let coh = raw_cohomology(m);
    let mut rep = ZInjectivityReport { degrees: Vec::new(), source_dims: Vec::new(), image_dims: Vec::new(), injective: true };
    for k in 1..=m.cutoff {
        let span: usize = z_span_blocks(m, k).iter().sum();
        let image = span - m.degrees[k].rank_a;
        rep.injective &= image == coh.total[k - 1];
        rep.degrees.push(k);
        rep.source_dims.push(coh.total[k - 1]);
        rep.image_dims.push(image);
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonadReport {
    pub degrees: Vec<usize>,
    pub ranks_a: Vec<usize>,
    pub ranks_b: Vec<usize>,
    pub cohomology_dims: Option<Vec<usize>>,
    pub isotypic_cohomology: Option<Vec<Vec<usize>>>,
    pub hilbert_poly: [String; 3],
    pub rank: i64,
    pub h_at_minus1: i64,
    pub h1_at_minus1: i64,
    pub framing_ok: Option<bool>,
    pub framing: Option<FramingReport>,
    pub z_injective: Option<bool>,
    pub stabilization_degree: Option<usize>,
    pub certificate: MonadCertificate,
    pub equivariant: bool,
}

pub fn monad_report(m: &MonadModel, window: usize) -> MonadReport {
    let cert = certify(m);
    let fit = hilbert_fit(m);
    let certified = cert.diagnostic().is_none();
    let coh = certified.then(|| raw_cohomology(m));
    let framing = framing_check(m, window).ok();
    let z = z_injectivity_check(m).ok();
    MonadReport {
        degrees: m.degrees.iter().map(|d| d.degree).collect(),
        ranks_a: m.degrees.iter().map(|d| d.rank_a).collect(),
        ranks_b: m.degrees.iter().map(|d| d.rank_b).collect(),
        cohomology_dims: coh.as_ref().map(|c| c.total.clone()),
        isotypic_cohomology: coh.map(|c| c.isotypic),
        hilbert_poly: fit.coefficients.clone(),
        rank: fit.rank,
        h_at_minus1: fit.h_at_minus1,
        h1_at_minus1: -fit.h_at_minus1,
        framing_ok: framing.as_ref().map(|f| f.ok),
        framing,
        z_injective: z.map(|r| r.injective),
        stabilization_degree: if certified { fit.stabilization_degree } else { None },
        certificate: cert,
        equivariant: m.degrees.iter().all(|d| d.is_equivariant()),
    }
}
