use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use nakajima_core::charrep::GroupDescriptor;
use nakajima_core::mckay_lattice::{McKayQuiver, TauVector};
use nakajima_core::quiver_data::quiver_for;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
}

/// Flags shared by every subcommand. Any of them may also come from the
/// `--config` file; flags win.
#[derive(Args, Clone, Debug, Default)]
pub struct CommonArgs {
    /// JSON file with default values for the flags below
    #[arg(long, global = true)]
    pub config: Option<String>,
    /// trivial, cyclic:n, BD:n, BT, BO or BI
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// comma-separated rationals, one per vertex
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tau: Option<String>,
    /// comma-separated dimension vector
    #[arg(long, global = true)]
    pub v: Option<String>,
    #[arg(long, global = true)]
    pub w: Option<String>,
    /// degree cutoff
    #[arg(long = "N", visible_alias = "degree", global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

/// Config file contents and the merged run configuration.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<usize>>,
    #[serde(default, rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default)]
    pub verbosity: u8,
}

fn parse_dims(s: &str, what: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().with_context(|| format!("--{what}: `{x}` is not a nonnegative integer")))
        .collect()
}

pub fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("--{what}: `{x}` is not an integer")))
        .collect()
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        s
    } else {
        std::fs::read_to_string(Path::new(path)).with_context(|| format!("cannot read {path}"))?
    };
    let de = &mut serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let at = e.path().to_string();
        anyhow::anyhow!("{path}: invalid input at `{at}`: {}", e.into_inner())
    })
}

impl RunConfig {
    pub fn from_args(a: &CommonArgs) -> Result<Self> {
        let mut c: RunConfig = match &a.config {
            Some(p) => read_json(p)?,
            None => RunConfig::default(),
        };
        if let Some(g) = &a.group {
            c.group = Some(g.clone());
        }
        if let Some(t) = &a.tau {
            c.tau = Some(t.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect());
        }
        if let Some(v) = &a.v {
            c.v = Some(parse_dims(v, "v")?);
        }
        if let Some(w) = &a.w {
            c.w = Some(parse_dims(w, "w")?);
        }
        c.n = a.n.or(c.n);
        c.seed = a.seed.or(c.seed);
        c.format = a.format.or(c.format);
        c.verbosity = c.verbosity.max(a.verbose);
        Ok(c)
    }

    pub fn group(&self) -> Result<GroupDescriptor> {
        let g = self.group.as_deref().unwrap_or("trivial");
        Ok(g.parse::<GroupDescriptor>()?)
    }

    pub fn quiver(&self) -> Result<Arc<McKayQuiver>> {
        Ok(quiver_for(self.group()?)?)
    }

    pub fn tau_raw(&self) -> Result<Option<TauVector>> {
        match &self.tau {
            None => Ok(None),
            Some(t) => Ok(Some(TauVector::parse(&t.join(","))?)),
        }
    }

    /// τ checked against the vertex count; zero when absent.
    pub fn tau_for(&self, q: &McKayQuiver) -> Result<TauVector> {
        let n = q.num_vertices();
        let t = self.tau_raw()?.unwrap_or_else(|| TauVector::zero(n));
        if t.len() != n {
            bail!("--tau has {} entries but the quiver has {n} vertices", t.len());
        }
        Ok(t)
    }

    pub fn dims_for(&self, q: &McKayQuiver, which: &str) -> Result<Vec<usize>> {
        let n = q.num_vertices();
        let d = match which {
            "v" => self.v.clone(),
            _ => self.w.clone(),
        };
        let d = d.with_context(|| format!("--{which} is required"))?;
        if d.len() != n {
            bail!("--{which} has {} entries but the quiver has {n} vertices", d.len());
        }
        Ok(d)
    }

    pub fn cutoff(&self, default: usize) -> usize {
        self.n.unwrap_or(default)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_config() {
        let dir = std::env::temp_dir().join("nakajima-config-test.json");
        std::fs::write(&dir, r#"{"group":"cyclic:3","tau":["1","2","3"],"N":4,"seed":9}"#).unwrap();
        let a = CommonArgs {
            config: Some(dir.to_string_lossy().into_owned()),
            n: Some(6),
            ..Default::default()
        };
        let c = RunConfig::from_args(&a).unwrap();
        assert_eq!(c.group.as_deref(), Some("cyclic:3"));
        assert_eq!(c.n, Some(6));
        assert_eq!(c.seed, Some(9));
        let q = c.quiver().unwrap();
        assert_eq!(c.tau_for(&q).unwrap().len(), 3);
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let c = RunConfig { group: Some("cyclic:2".into()), tau: Some(vec!["1".into()]), ..Default::default() };
        let q = c.quiver().unwrap();
        assert!(c.tau_for(&q).is_err());
        assert!(c.dims_for(&q, "v").is_err());
    }
}
