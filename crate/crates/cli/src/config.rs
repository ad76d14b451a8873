use std::fs;
use std::path::Path;

use dcsim_core::EraserConfig;

use crate::failure::{io_failure, Failure};

/// Parses a flat `key = value` config. Missing keys take their defaults;
/// unknown keys are rejected.
pub fn parse_config(text: &str) -> Result<EraserConfig, Failure> {
    let cfg: EraserConfig =
        toml::from_str(text).map_err(|e| Failure::Usage(format!("config: {}", e.message())))?;
    cfg.validate()?;
    Ok(cfg)
}

/// Renders a config in the same flat format `parse_config` reads.
pub fn render_config(cfg: &EraserConfig) -> String {
    toml::to_string(cfg).expect("flat struct of scalars always serializes")
}

/// Defaults, overlaid by the config file, overlaid by `--n`.
pub fn load_config(path: Option<&Path>, n: Option<usize>) -> Result<EraserConfig, Failure> {
    let mut cfg = match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| io_failure(p, e))?;
            parse_config(&text)?
        }
        None => EraserConfig::default(),
    };
    if let Some(n) = n {
        cfg.n = n;
    }
    cfg.validate()?;
    Ok(cfg)
}
