use std::fs;
use std::path::Path;

use dcsim_core::{EraserConfig, Experiment};
use serde::{Deserialize, Serialize};

use crate::failure::{io_failure, Failure};

pub const MANIFEST_FILE: &str = "manifest.json";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Everything needed to reproduce a command's outputs. Output paths are
/// relative to the directory holding the manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunManifest {
    pub command: String,
    pub experiment: Experiment,
    /// `null` for Wheeler experiments, which have no tunable parameters.
    pub config: Option<EraserConfig>,
    pub n_runs: Option<u64>,
    pub seed: Option<u64>,
    pub format: String,
    pub tool_version: String,
    pub output_paths: Vec<String>,
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<(), Failure> {
        let path = dir.join(MANIFEST_FILE);
        let mut json = serde_json::to_string_pretty(self).expect("manifest serializes");
        json.push('\n');
        fs::write(&path, json).map_err(|e| io_failure(&path, e))
    }

    pub fn read(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
        let m: RunManifest = serde_json::from_str(&text).map_err(|e| io_failure(path, e))?;
        if let Some(cfg) = m.config.as_ref() {
            cfg.validate()?;
        }
        if m.experiment.is_eraser() != m.config.is_some() {
            return Err(Failure::Usage(format!(
                "{}: config does not match experiment {}",
                path.display(),
                m.experiment
            )));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dcsim_core::{EraserExperiment, Scenario};

    fn sample(experiment: Experiment, config: Option<EraserConfig>) -> RunManifest {
        RunManifest {
            command: "run".into(),
            experiment,
            config,
            n_runs: Some(10),
            seed: Some(3),
            format: "csv".into(),
            tool_version: TOOL_VERSION.into(),
            output_paths: vec!["events.csv".into()],
        }
    }

    #[test]
    fn round_trips_both_kinds() {
        let dir = tempfile::tempdir().unwrap();
        for m in [
            sample(
                Experiment::Eraser(EraserExperiment::Erasing),
                Some(EraserConfig::with_n(16)),
            ),
            sample(Experiment::Wheeler(Scenario::DelayedChoice), None),
        ] {
            m.write(dir.path()).unwrap();
            assert_eq!(
                RunManifest::read(&dir.path().join(MANIFEST_FILE)).unwrap(),
                m
            );
        }
    }

    #[test]
    fn mismatched_config_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        sample(Experiment::Eraser(EraserExperiment::Erasing), None)
            .write(dir.path())
            .unwrap();
        let err = RunManifest::read(&dir.path().join(MANIFEST_FILE)).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
