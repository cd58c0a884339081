use std::path::Path;
use std::sync::Arc;

use weyl_core::automorphism::Mode;
use weyl_core::json::{from_str, ConfigJson};
use weyl_core::Signature;

use crate::error::{CliError, CliResult};

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_BOUND: i64 = 2;

#[derive(Clone, Debug)]
pub struct SessionConfig {
    pub signature: Option<Arc<Signature>>,
    pub mode: Option<Mode>,
    pub seed: u64,
    pub bound: i64,
    pub trials: usize,
}

impl Default for SessionConfig {
    fn default() -> Self {
        SessionConfig {
            signature: None,
            mode: None,
            seed: 0,
            bound: DEFAULT_BOUND,
            trials: DEFAULT_TRIALS,
        }
    }
}

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_signature(path: &Path) -> CliResult<(Arc<Signature>, ConfigJson)> {
    let cfg: ConfigJson = from_str(&read_file(path)?).map_err(|e| in_file(path, e))?;
    let sig = cfg.signature().map_err(|e| in_file(path, e))?;
    Ok((sig, cfg))
}

fn in_file(path: &Path, e: weyl_core::WeylError) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

impl SessionConfig {
    /// Flag values win over the config file; `seed` has already been
    /// resolved against `WEYL_SEED` by the argument parser.
    pub fn load(config: Option<&Path>, mode: Option<Mode>, seed: Option<u64>) -> CliResult<SessionConfig> {
        let mut out = SessionConfig::default();
        if let Some(path) = config {
            let (sig, cfg) = load_signature(path)?;
            out.signature = Some(sig);
            out.mode = cfg.mode;
            out.seed = cfg.seed.unwrap_or(0);
            out.bound = cfg.bound.unwrap_or(DEFAULT_BOUND);
            out.trials = cfg.trials.unwrap_or(DEFAULT_TRIALS);
        }
        if mode.is_some() {
            out.mode = mode;
        }
        if let Some(s) = seed {
            out.seed = s;
        }
        Ok(out)
    }

    pub fn require_signature(&self) -> CliResult<&Arc<Signature>> {
        self.signature
            .as_ref()
            .ok_or_else(|| CliError::Usage("this command needs a signature: pass --config FILE".into()))
    }
}
