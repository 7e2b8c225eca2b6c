//! Run configuration shared by the CLI and the self-test.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::besov::BesovParams;
use crate::error::{Error, Result};
use crate::gelfand::{GelfandGrid, GridSpec};
use crate::heisenberg::{RadialMesh, DEFAULT_CONVOLUTION_BUDGET};
use crate::littlewood_paley::{build_partition, SmoothPartition};

/// Integrability exponent as written in a config file: a number or the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QValue(pub f64);

impl Serialize for QValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() { s.serialize_str("inf") } else { s.serialize_f64(self.0) }
    }
}

impl<'de> Deserialize<'de> for QValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Self(x)),
            Raw::Text(s) if s.eq_ignore_ascii_case("inf") => Ok(Self(f64::INFINITY)),
            Raw::Text(s) => Err(serde::de::Error::custom(format!("q must be a number or \"inf\", got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub t_max: f64,
    pub n_t: usize,
    pub r_max: f64,
    pub n_r: usize,
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub kappa: usize,
    pub m_max: usize,
    pub n: usize,
    pub partition_levels: usize,
    pub besov_alphas: Vec<f64>,
    pub besov_qs: Vec<QValue>,
    pub besov_r: u32,
    pub tolerance_scale: f64,
    pub ratio_bound: f64,
    pub convolution_budget: u64,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            t_max: 20.0,
            n_t: 256,
            r_max: 10.0,
            n_r: 64,
            lambda_min: 1.0 / 16.0,
            lambda_max: 64.0,
            kappa: 8,
            m_max: 32,
            n: 1,
            partition_levels: 6,
            besov_alphas: vec![0.5, 1.0, 1.5],
            besov_qs: vec![QValue(1.0), QValue(2.0), QValue(f64::INFINITY)],
            besov_r: 4,
            tolerance_scale: 1.0,
            ratio_bound: 100.0,
            convolution_budget: DEFAULT_CONVOLUTION_BUDGET as u64,
            output_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.n != 1 && self.n != 2 {
            return bad(format!("n must be 1 or 2, got {}", self.n));
        }
        if self.n_t == 0 || self.n_r == 0 || self.kappa == 0 || self.partition_levels == 0 {
            return bad("counts must be positive".into());
        }
        if !(self.t_max > 0.0 && self.r_max > 0.0) {
            return bad("t_max and r_max must be positive".into());
        }
        if !(self.lambda_min > 0.0 && self.lambda_min < self.lambda_max) {
            return bad(format!("need 0 < lambda_min < lambda_max, got {} and {}", self.lambda_min, self.lambda_max));
        }
        if !(self.tolerance_scale > 0.0) || !(self.ratio_bound > 1.0) {
            return bad("tolerance_scale must be positive and ratio_bound above 1".into());
        }
        self.besov_params().map(|_| ())
    }

    pub fn grid(&self) -> Result<Arc<GelfandGrid<f64>>> {
        Ok(Arc::new(GelfandGrid::new(GridSpec {
            n: self.n,
            kappa: self.kappa,
            lambda_min: self.lambda_min,
            lambda_max: self.lambda_max,
            m_max: self.m_max,
        })?))
    }

    pub fn mesh(&self) -> Result<Arc<RadialMesh<f64>>> {
        Ok(Arc::new(RadialMesh::new(self.n, self.r_max, self.n_r, self.t_max, self.n_t)?))
    }

    pub fn partition(&self) -> Result<SmoothPartition<f64>> {
        build_partition(self.partition_levels)
    }

    /// Every `(α, q)` combination with the configured `r`.
    pub fn besov_params(&self) -> Result<Vec<BesovParams<f64>>> {
        let mut out = Vec::new();
        for &alpha in &self.besov_alphas {
            for q in &self.besov_qs {
                out.push(BesovParams::new(alpha, q.0, self.besov_r)?);
            }
        }
        Ok(out)
    }
}
