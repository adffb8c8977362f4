//! Effective configuration: command-line flags over a TOML file over defaults.

use std::fs;
use std::path::{Path, PathBuf};

use hlslab_core::{Caps, Family};
use serde::Deserialize;

use crate::cache::default_cache_dir;
use crate::error::{AppError, Result};
use crate::report::Report;

/// Keys accepted in a `--config` file. Unknown keys are rejected.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub family: Option<String>,
    pub n_max: Option<usize>,
    pub radius: Option<usize>,
    pub margin: Option<f64>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub element: Option<String>,
    pub epsilon: Option<f64>,
    pub caps: Option<FileCaps>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileCaps {
    pub fiber_order: Option<u64>,
    pub ball_size: Option<u64>,
    pub hom_level: Option<usize>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| AppError::unreadable(path, e))?;
        toml::from_str(&text).map_err(|e| AppError::format(path.display().to_string(), e))
    }
}

/// Flag values before merging; `None` means "not given".
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub family: Option<String>,
    pub n_max: Option<usize>,
    pub radius: Option<usize>,
    pub margin: Option<f64>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub element: Option<String>,
    pub epsilon: Option<f64>,
    pub fiber_cap: Option<u64>,
    pub ball_cap: Option<u64>,
    pub hom_cap: Option<usize>,
}

/// Per-command defaults for the knobs whose sensible value differs.
#[derive(Clone, Copy, Debug)]
pub struct Defaults {
    pub family: Option<Family>,
    pub n_max: usize,
    pub radius: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub family: Option<Family>,
    pub n_max: usize,
    pub radius: usize,
    pub margin: f64,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub caps: Caps,
    pub element: Option<String>,
    pub epsilon: f64,
    pub out: Option<PathBuf>,
    pub cache_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn resolve(flags: Overrides, file: Option<FileConfig>, defaults: Defaults) -> Result<Self> {
        let file = file.unwrap_or_default();
        let caps_file = file.caps.unwrap_or_default();
        let base = Caps::default();
        let family = match flags.family.or(file.family) {
            Some(s) => Some(s.parse::<Family>()?),
            None => defaults.family,
        };
        let cfg = ExperimentConfig {
            family,
            n_max: flags.n_max.or(file.n_max).unwrap_or(defaults.n_max),
            radius: flags.radius.or(file.radius).unwrap_or(defaults.radius),
            margin: flags.margin.or(file.margin).unwrap_or(0.25),
            jobs: flags.jobs.or(file.jobs).unwrap_or(0),
            caps: Caps {
                fiber_order: flags.fiber_cap.or(caps_file.fiber_order).unwrap_or(base.fiber_order),
                ball_size: flags.ball_cap.or(caps_file.ball_size).unwrap_or(base.ball_size),
                hom_level: flags.hom_cap.or(caps_file.hom_level).unwrap_or(base.hom_level),
            },
            element: flags.element.or(file.element),
            epsilon: flags.epsilon.or(file.epsilon).unwrap_or(0.05),
            out: flags.out.or(file.out),
            cache_dir: flags.cache_dir.or(file.cache_dir).unwrap_or_else(default_cache_dir),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(AppError::Input("n-max must be at least 1".into()));
        }
        if self.caps.fiber_order == 0 || self.caps.ball_size == 0 || self.caps.hom_level == 0 {
            return Err(AppError::Input("caps must be positive".into()));
        }
        if !(self.margin.is_finite() && self.margin >= 0.0) {
            return Err(AppError::Input("margin must be a non-negative number".into()));
        }
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(AppError::Input("epsilon must be positive".into()));
        }
        Ok(())
    }

    pub fn family_or_err(&self) -> Result<Family> {
        self.family.ok_or_else(|| AppError::Input("--family is required".into()))
    }

    /// Writes the configuration into a report header.
    pub fn echo(&self, report: &mut Report, command: &str) {
        report.header("hlslab", env!("CARGO_PKG_VERSION"));
        report.header("command", command);
        report.header("family", self.family.map_or("all", |f| f.as_str()));
        report.header("n-max", self.n_max);
        report.header("radius", self.radius);
        report.header("margin", self.margin);
        report.header("epsilon", self.epsilon);
        report.header("fiber-cap", self.caps.fiber_order);
        report.header("ball-cap", self.caps.ball_size);
        report.header("hom-cap", self.caps.hom_level);
        report.header("element", self.element.as_deref().unwrap_or("generator-sum"));
        report.header("cache-dir", self.cache_dir.display());
    }
}
