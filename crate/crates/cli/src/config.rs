use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Everything a run depends on. Flags fill it in; `--config` loads it from
/// a file and explicit flags override the loaded values.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub field: Option<PathBuf>,
    pub form: Option<PathBuf>,
    pub vector: Option<PathBuf>,
    /// Inline vector parameters: sign per place for a quadratic zero.
    pub signs: Option<String>,
    /// Corollary parameters: rational alphas, their signs, `f` and `e` coordinates.
    pub alphas: Option<Vec<String>>,
    pub alpha_signs: Option<String>,
    pub f: Option<Vec<String>>,
    pub e: Option<Vec<String>>,
    /// Circle angles for exploratory Hermitian points.
    pub angles: Option<Vec<f64>>,
    /// Field-element target, power-basis coordinates.
    pub point: Option<Vec<String>>,
    pub precision: Option<u32>,
    pub max_precision: Option<u32>,
    pub norm_height: Option<u32>,
    pub bound: Option<f64>,
    pub thresholds: Option<Vec<f64>>,
    pub tmin: Option<f64>,
    pub tmax: Option<f64>,
    pub step: Option<f64>,
    pub dip_threshold: Option<f64>,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    /// Fill unset fields from `base`.
    pub fn or(self, base: RunConfig) -> RunConfig {
        macro_rules! pick {
            ($($f:ident),*) => { RunConfig { $($f: self.$f.or(base.$f)),* } };
        }
        pick!(
            field,
            form,
            vector,
            signs,
            alphas,
            alpha_signs,
            f,
            e,
            angles,
            point,
            precision,
            max_precision,
            norm_height,
            bound,
            thresholds,
            tmin,
            tmax,
            step,
            dip_threshold,
            out,
            svg,
            seed
        )
    }

    pub fn precision(&self) -> u32 {
        self.precision.unwrap_or(256)
    }

    pub fn settings(&self) -> nfapprox::Settings {
        let d = nfapprox::Settings::default();
        nfapprox::Settings {
            prec: self.precision(),
            max_prec: self.max_precision.unwrap_or(d.max_prec),
            norm_height: self.norm_height.unwrap_or(d.norm_height),
            ..d
        }
    }

    /// SHA-256 over the canonical JSON of the config and the bytes of every
    /// input file it names. Output paths do not enter the hash.
    pub fn hash(&self, command: &str) -> anyhow::Result<String> {
        let mut canon = self.clone();
        canon.out = None;
        canon.svg = None;
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        h.update([0]);
        h.update(serde_json::to_vec(&canon)?);
        for p in [&self.field, &self.form, &self.vector].into_iter().flatten() {
            h.update([0]);
            h.update(fs::read(p).with_context(|| format!("reading {}", p.display()))?);
        }
        Ok(hex::encode(h.finalize()))
    }
}

/// Parse a TOML or JSON file, chosen by extension.
pub fn load<T: DeserializeOwned>(path: &Path) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&text, path)
}

pub fn parse<T: DeserializeOwned>(text: &str, path: &Path) -> anyhow::Result<T> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => serde_json::from_str(text).with_context(|| format!("parsing {}", path.display())),
        Some("toml") | None => toml::from_str(text).with_context(|| format!("parsing {}", path.display())),
        Some(other) => bail!("unsupported file type '.{other}' for {}", path.display()),
    }
}

/// Serialize as TOML or JSON, chosen by extension.
pub fn render<T: Serialize>(value: &T, path: &Path) -> anyhow::Result<String> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("toml") => Ok(toml::to_string_pretty(value)?),
        _ => Ok(serde_json::to_string_pretty(value)? + "\n"),
    }
}
