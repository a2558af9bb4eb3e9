use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use nakajima_core::charrep::{dim_class, ClassVector};
use nakajima_core::graded_algebra::{
    atau_presentation, build_atau, build_preprojective, cohomology_of_twist, euler_characteristic, koszul_dual_dims,
    koszul_exactness, preprojective_dim_oracle, KoszulReport, TwistCohomology,
};
use nakajima_core::mckay_lattice::{
    is_generic, minuscule_decompose, normalize_mod_delta, projective_class, Decomposition, McKayQuiver, QuiverJson,
    TauVector,
};
use nakajima_core::monad::{assemble, monad_report, MonadReport};
use nakajima_core::quiver_data::{
    cm_point, cycle_point, defect_ranks, expected_dim, is_costable, is_stable, moment_jacobian_rank, moment_residual,
    quiver_for, random_quiver_data, random_rational, MatrixJson, QuiverData, QuiverDataJson,
};
use nakajima_core::scalar::q;
use nakajima_core::charrep::GroupDescriptor;

use crate::config::{parse_ints, read_json, Format, RunConfig};

/// Rendered output and whether every certificate in it passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn json<T: Serialize>(v: &T, ok: bool) -> Result<Outcome> {
    Ok(Outcome { text: serde_json::to_string_pretty(v)? + "\n", ok })
}

fn json_only(cfg: &RunConfig, cmd: &str) -> Result<()> {
    if cfg.format(Format::Json) == Format::Tsv {
        bail!("tsv output is not available for `{cmd}`");
    }
    Ok(())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    Cm,
    Cycle,
    Random,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraKind {
    Atau,
    Preprojective,
}

pub fn mckay(cfg: &RunConfig) -> Result<Outcome> {
    json_only(cfg, "mckay")?;
    let quiver = cfg.quiver()?;
    let out: QuiverJson = quiver.to_json();
    json(&out, true)
}

#[derive(Serialize)]
struct DecomposeOut {
    group: String,
    omega: Vec<i64>,
    vertex: usize,
    omega0: Vec<i64>,
}

pub fn decompose(cfg: &RunConfig, omega: &str) -> Result<Outcome> {
    json_only(cfg, "decompose")?;
    let quiver = cfg.quiver()?;
    let coeffs = parse_ints(omega, "omega")?;
    let w = quiver.table().class_vector(coeffs.clone())?;
    let d = minuscule_decompose(&quiver, &w).context("precondition dim(omega) = 1 violated or decomposition failed")?;
    json(&DecomposeOut { group: quiver.group().to_string(), omega: coeffs, vertex: d.vertex, omega0: d.omega0 }, true)
}

#[derive(Serialize)]
struct ClassifyOut {
    group: String,
    v: Vec<usize>,
    w: Vec<usize>,
    class: Vec<i64>,
    dim: i64,
    decomposition: Option<Decomposition>,
    /// decomposition recovers (W, V) for normalized V and special W of dimension 1
    roundtrip: Option<bool>,
}

fn class_of(quiver: &McKayQuiver, d: &[usize]) -> Result<ClassVector> {
    Ok(quiver.table().class_vector(d.iter().map(|&x| x as i64).collect())?)
}

pub fn classify(cfg: &RunConfig) -> Result<Outcome> {
    json_only(cfg, "classify")?;
    let quiver = cfg.quiver()?;
    let (v, w) = (cfg.dims_for(&quiver, "v")?, cfg.dims_for(&quiver, "w")?);
    let cls = projective_class(&quiver, &class_of(&quiver, &v)?, &class_of(&quiver, &w)?)?;
    let dim = dim_class(quiver.table(), &cls);
    let decomposition = if dim == 1 { Some(minuscule_decompose(&quiver, &cls)?) } else { None };
    let vi: Vec<i64> = v.iter().map(|&x| x as i64).collect();
    let special_w = w.iter().sum::<usize>() == 1 && quiver.special().iter().any(|&i| w[i] == 1);
    let roundtrip = (special_w && normalize_mod_delta(&quiver, &vi) == vi).then(|| {
        let d = decomposition.as_ref().expect("dimension one");
        w[d.vertex] == 1 && d.omega0 == vi
    });
    let out = ClassifyOut {
        group: quiver.group().to_string(),
        v,
        w,
        class: cls.coeffs,
        dim,
        decomposition,
        roundtrip,
    };
    let ok = out.roundtrip != Some(false);
    json(&out, ok)
}

fn random_tau(quiver: &McKayQuiver, rng: &mut ChaCha8Rng, generic: bool) -> TauVector {
    loop {
        let t = TauVector((0..quiver.num_vertices()).map(|_| random_rational(rng)).collect());
        if !generic || is_generic(quiver, &t) {
            return t;
        }
    }
}

/// Witness data for `sample` and `monad --from`.
pub fn sample_data(cfg: &RunConfig, kind: SampleKind, k: Option<usize>) -> Result<QuiverData> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed());
    Ok(match kind {
        SampleKind::Cm => {
            if cfg.group()? != GroupDescriptor::Trivial {
                bail!("cm samples live over the trivial group");
            }
            let k = k.unwrap_or(2);
            let tau = match cfg.tau_raw()? {
                None => q(1),
                Some(t) if t.len() == 1 => t.0[0].clone(),
                Some(t) => bail!("cm samples take a single --tau value, got {}", t.len()),
            };
            let x: Vec<_> = (0..k).map(|i| q(i as i64)).collect();
            let p: Vec<_> = (0..k).map(|_| random_rational(&mut rng)).collect();
            cm_point(&x, &p, &tau)?
        }
        SampleKind::Cycle => {
            let n = match (&cfg.group, k) {
                (Some(_), _) => match cfg.group()? {
                    GroupDescriptor::Cyclic(n) => n,
                    g => bail!("cycle samples need a cyclic group, got {g}"),
                },
                (None, k) => k.unwrap_or(2) as u32,
            };
            let quiver = quiver_for(GroupDescriptor::Cyclic(n))?;
            let tau = match cfg.tau_raw()? {
                Some(_) => cfg.tau_for(&quiver)?,
                None => random_tau(&quiver, &mut rng, true),
            };
            cycle_point(n, &tau)?
        }
        SampleKind::Random => {
            let quiver = cfg.quiver()?;
            let v = cfg.dims_for(&quiver, "v")?;
            let w = cfg.dims_for(&quiver, "w")?;
            let tau = match cfg.tau_raw()? {
                Some(_) => cfg.tau_for(&quiver)?,
                None => random_tau(&quiver, &mut rng, false),
            };
            random_quiver_data(&quiver, &v, &w, &tau, &mut rng)?
        }
    })
}

pub fn sample(cfg: &RunConfig, kind: SampleKind, k: Option<usize>) -> Result<Outcome> {
    json_only(cfg, "sample")?;
    let d = sample_data(cfg, kind, k)?;
    let out: QuiverDataJson = d.to_json();
    json(&out, true)
}

fn load_data(path: &str) -> Result<QuiverData> {
    let js: QuiverDataJson = read_json(path)?;
    QuiverData::from_json(&js).with_context(|| format!("{path}: inconsistent quiver data"))
}

#[derive(Serialize)]
struct ClosureOut {
    holds: bool,
    dims: Vec<usize>,
}

#[derive(Serialize)]
struct VerifyOut {
    group: String,
    v: Vec<usize>,
    w: Vec<usize>,
    tau: Vec<String>,
    tau_generic: bool,
    residual_zero: bool,
    residual: Vec<MatrixJson>,
    /// rank of [B, B*] − τ per vertex
    defect_ranks: Vec<usize>,
    stable: ClosureOut,
    costable: ClosureOut,
    jacobian_rank: usize,
    expected_dim: i64,
}

pub fn verify(cfg: &RunConfig, data: &str) -> Result<Outcome> {
    json_only(cfg, "verify")?;
    let d = load_data(data)?;
    let res = moment_residual(&d)?;
    let residual_zero = res.iter().all(|m| m.is_zero());
    let st = is_stable(&d)?;
    let co = is_costable(&d)?;
    let out = VerifyOut {
        group: d.quiver.group().to_string(),
        v: d.v.clone(),
        w: d.w.clone(),
        tau: d.tau.to_strings(),
        tau_generic: is_generic(&d.quiver, &d.tau),
        residual_zero,
        residual: res.iter().map(MatrixJson::from).collect(),
        defect_ranks: defect_ranks(&d)?,
        stable: ClosureOut { holds: st.holds, dims: st.subspaces.iter().map(|s| s.dim()).collect() },
        costable: ClosureOut { holds: co.holds, dims: co.subspaces.iter().map(|s| s.dim()).collect() },
        jacobian_rank: moment_jacobian_rank(&d)?,
        expected_dim: expected_dim(&d.quiver, &d.v, &d.w),
    };
    let ok = out.residual_zero && out.stable.holds && out.costable.holds;
    json(&out, ok)
}

pub struct MonadArgs<'a> {
    pub data: Option<&'a str>,
    pub from: Option<SampleKind>,
    pub k: Option<usize>,
    pub window: usize,
}

#[derive(Serialize)]
struct MonadOut {
    group: String,
    v: Vec<usize>,
    w: Vec<usize>,
    #[serde(rename = "N")]
    cutoff: usize,
    #[serde(flatten)]
    report: MonadReport,
}

pub fn monad(cfg: &RunConfig, a: &MonadArgs) -> Result<Outcome> {
    let d = match (a.data, a.from) {
        (Some(p), None) => load_data(p)?,
        (None, Some(kind)) => sample_data(cfg, kind, a.k)?,
        (None, None) => load_data("-")?,
        (Some(_), Some(_)) => bail!("--data and --from are mutually exclusive"),
    };
    let cutoff = cfg.cutoff(8);
    let m = assemble(&d, cutoff)?;
    let report = monad_report(&m, a.window);
    let ok = report.certificate.certified
        && report.framing_ok == Some(true)
        && report.z_injective == Some(true)
        && report.stabilization_degree.is_some();
    if cfg.format(Format::Json) == Format::Tsv {
        let mut s = String::from("degree\tdom\tmid\tcod\trank_a\trank_b\tcohomology\thilbert\n");
        for (i, deg) in m.degrees.iter().enumerate() {
            let h = report.cohomology_dims.as_ref().map_or("NA".to_string(), |c| c[i].to_string());
            let hv = nakajima_core::monad::hilbert_value(&m, i as i64);
            s += &format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                deg.degree, deg.dom_dim, deg.mid_dim, deg.cod_dim, deg.rank_a, deg.rank_b, h, hv
            );
        }
        return Ok(Outcome { text: s, ok });
    }
    let out = MonadOut { group: d.quiver.group().to_string(), v: d.v.clone(), w: d.w.clone(), cutoff, report };
    json(&out, ok)
}

fn cyclic_order(cfg: &RunConfig) -> Result<u32> {
    let g = cfg.group()?;
    g.cyclic_order().with_context(|| format!("A^tau is only built for cyclic groups, got {g}"))
}

#[derive(Serialize)]
struct KoszulOut {
    group: String,
    tau: Vec<String>,
    degree: usize,
    dual_dims: Vec<usize>,
    #[serde(flatten)]
    report: KoszulReport,
}

pub fn koszul(cfg: &RunConfig) -> Result<Outcome> {
    let n = cyclic_order(cfg)?;
    let quiver = cfg.quiver()?;
    let tau = cfg.tau_for(&quiver)?;
    let cutoff = cfg.cutoff(6);
    let p = atau_presentation(n, &tau)?;
    let alg = build_atau(n, &tau, cutoff as i64)?;
    let report = koszul_exactness(&p, &alg, cutoff)?;
    let dual_dims = koszul_dual_dims(n, &tau, 4)?;
    let ok = report.exact && report.co_koszul.concentrated;
    if cfg.format(Format::Json) == Format::Tsv {
        let list = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut s = String::from("degree\tterm_dims\tranks\thomology\texact\n");
        for d in &report.degrees {
            s += &format!("{}\t{}\t{}\t{}\t{}\n", d.degree, list(&d.term_dims), list(&d.ranks), list(&d.homology), d.exact);
        }
        return Ok(Outcome { text: s, ok });
    }
    let out = KoszulOut { group: quiver.group().to_string(), tau: tau.to_strings(), degree: cutoff, dual_dims, report };
    json(&out, ok)
}

#[derive(Serialize)]
struct HilbertRow {
    degree: usize,
    dim: usize,
    expected: i64,
    /// dim e_i A_k e_j
    blocks: Vec<Vec<usize>>,
    matches: bool,
}

#[derive(Serialize)]
struct HilbertOut {
    group: String,
    algebra: String,
    rows: Vec<HilbertRow>,
}

pub fn hilbert(cfg: &RunConfig, kind: Option<AlgebraKind>) -> Result<Outcome> {
    let quiver = cfg.quiver()?;
    let tau = cfg.tau_for(&quiver)?;
    let cutoff = cfg.cutoff(4);
    let kind = kind.unwrap_or(if quiver.group().cyclic_order().is_some() { AlgebraKind::Atau } else { AlgebraKind::Preprojective });
    let table = quiver.table();
    let nv = quiver.num_vertices();
    let (alg, name) = match kind {
        AlgebraKind::Atau => (build_atau(cyclic_order(cfg)?, &tau, cutoff as i64)?, "atau"),
        AlgebraKind::Preprojective => (build_preprojective(&quiver, &tau, cutoff)?, "preprojective"),
    };
    let mut rows = Vec::new();
    for k in 0..=cutoff {
        let blocks = alg.vertex_dims(k);
        let (expected, matches) = match kind {
            AlgebraKind::Atau => {
                let e = (table.order() as usize * (k + 1) * (k + 2) / 2) as i64;
                (e, alg.dim(k) as i64 == e)
            }
            AlgebraKind::Preprojective => {
                let mut total = 0;
                let mut all = true;
                for (i, row) in blocks.iter().enumerate().take(nv) {
                    for (j, &b) in row.iter().enumerate() {
                        let o = preprojective_dim_oracle(table, i, j, k)?;
                        total += o;
                        all &= b as i64 == o;
                    }
                }
                (total, all)
            }
        };
        rows.push(HilbertRow { degree: k, dim: alg.dim(k), expected, blocks, matches });
    }
    let ok = rows.iter().all(|r| r.matches);
    if cfg.format(Format::Tsv) == Format::Tsv {
        let mut s = String::from("degree\tdim\texpected\tmatches\tblocks\n");
        for r in &rows {
            let b: Vec<String> =
                r.blocks.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")).collect();
            s += &format!("{}\t{}\t{}\t{}\t{}\n", r.degree, r.dim, r.expected, r.matches, b.join(";"));
        }
        return Ok(Outcome { text: s, ok });
    }
    json(&HilbertOut { group: quiver.group().to_string(), algebra: name.into(), rows }, ok)
}

#[derive(Serialize)]
struct CohomologyRow {
    #[serde(flatten)]
    classes: TwistCohomology,
    euler_characteristic: i64,
}

pub fn cohomology(cfg: &RunConfig, min: i64, max: i64) -> Result<Outcome> {
    if min > max {
        bail!("--min must not exceed --max");
    }
    let quiver = cfg.quiver()?;
    let table = quiver.table();
    let rows: Vec<CohomologyRow> = (min..=max)
        .map(|i| {
            let c = cohomology_of_twist(table, i);
            let e = euler_characteristic(table, &c);
            CohomologyRow { classes: c, euler_characteristic: e }
        })
        .collect();
    if cfg.format(Format::Json) == Format::Tsv {
        let list = |c: &ClassVector| c.coeffs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let mut s = String::from("twist\th0\th1\th2\teuler\n");
        for r in &rows {
            let c = &r.classes;
            s += &format!("{}\t{}\t{}\t{}\t{}\n", c.twist, list(&c.h0), list(&c.h1), list(&c.h2), r.euler_characteristic);
        }
        return Ok(Outcome { text: s, ok: true });
    }
    json(&rows, true)
}
