//! Optional key = value configuration file. Recognized keys: `N`, `gamma`,
//! `terms`, `order`, `quad_tol`. Command-line flags always win.

use anyhow::{bail, Context, Result};
use std::path::Path;

#[derive(Debug, Clone, Default)]
pub struct Config {
    pub n: Option<f64>,
    pub gamma: Option<f64>,
    pub terms: Option<usize>,
    pub order: Option<u32>,
    pub quad_tol: Option<f64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config `{}`", path.display()))?;
        let mut cfg = Config::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key = value", lineno + 1))?;
            let value = value.trim();
            match key.trim() {
                "N" => cfg.n = Some(value.parse().context("bad N")?),
                "gamma" => cfg.gamma = Some(value.parse().context("bad gamma")?),
                "terms" => cfg.terms = Some(value.parse().context("bad terms")?),
                "order" => cfg.order = Some(value.parse().context("bad order")?),
                "quad_tol" => cfg.quad_tol = Some(value.parse().context("bad quad_tol")?),
                other => bail!("line {}: unknown config key `{other}`", lineno + 1),
            }
        }
        Ok(cfg)
    }
}
