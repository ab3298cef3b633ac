//! Job configuration assembled from command-line flags.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use minind_core::cartan::{parse_gcm_json, parse_weight_json, presets, CartanDatum, ParabolicType, Weight};
use minind_core::wmod::Window;
use minind_core::{Error, Result};

pub const DEFAULT_DEPTH: i64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Rows,
    Json,
}

/// Flags shared by every verb.
#[derive(Debug, Clone, Args)]
pub struct JobArgs {
    /// Path to a JSON Cartan matrix (`[[2,-1],[-1,2]]` or `{"cartan": ..., "labels": ...}`).
    #[arg(long, global = true, conflicts_with_all = ["matrix", "preset"])]
    pub gcm: Option<PathBuf>,
    /// Inline JSON Cartan matrix.
    #[arg(long, global = true, conflicts_with = "preset")]
    pub matrix: Option<String>,
    /// Named Cartan matrix: sl2, sl3, b2, g2, affine-sl2, affine-sl3, affine-d4, affine-e8.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Height cutoff for root spaces; defaults to the reach of the window.
    #[arg(long, global = true)]
    pub height: Option<usize>,
    /// Box depth of the window below the highest weight (default 3; suites use their own defaults).
    #[arg(long, global = true)]
    pub depth: Option<i64>,
    /// Comma-separated labels of the parabolic type.
    #[arg(long, global = true, default_value = "")]
    pub xi: String,
    /// Highest weight: `{"evals": ["1", "-1/2"], "offset": [0, 0]}`.
    #[arg(long, global = true)]
    pub weight: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Rows)]
    pub format: Format,
    /// Directory for cached structure-constant tables.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
}

/// Validated inputs for one run.
pub struct JobConfig {
    pub datum: CartanDatum,
    pub height: usize,
    pub depth: i64,
    pub xi: ParabolicType,
    pub weight: Weight,
    pub format: Format,
    pub cache: Option<PathBuf>,
}

impl JobArgs {
    pub fn datum(&self) -> Result<CartanDatum> {
        if let Some(p) = &self.gcm {
            let text =
                std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?;
            return parse_gcm_json(&text);
        }
        if let Some(m) = &self.matrix {
            return parse_gcm_json(m);
        }
        if let Some(name) = &self.preset {
            return presets::by_name(name).ok_or_else(|| Error::Parse(format!("unknown preset {name:?}")));
        }
        Err(Error::Parse("give one of --gcm, --matrix or --preset".into()))
    }

    pub fn config(&self) -> Result<JobConfig> {
        let datum = self.datum()?;
        let n = datum.rank();
        let depth = self.depth.unwrap_or(DEFAULT_DEPTH);
        if depth < 0 {
            return Err(Error::Parse("--depth must be non-negative".into()));
        }
        let weight = match &self.weight {
            Some(w) => parse_weight_json(w, n)?,
            None => Weight::zero(n),
        };
        let xi = ParabolicType::parse(&datum, &self.xi)?;
        let reach = (n as i64 * depth).max(1) as usize;
        Ok(JobConfig {
            height: self.height.unwrap_or(reach),
            depth,
            xi,
            weight,
            format: self.format,
            cache: self.cache.clone(),
            datum,
        })
    }
}

impl JobConfig {
    pub fn window(&self) -> Window {
        Window::boxed(&self.weight.offset, self.depth)
    }
}
