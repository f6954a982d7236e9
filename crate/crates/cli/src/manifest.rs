//! Run manifest embedded into every emitted artifact.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub mode: Option<String>,
    /// Scalars as full-precision decimal strings.
    pub gamma: Option<String>,
    pub alpha: Option<String>,
    pub kappa: Option<String>,
    pub beta: Option<String>,
    pub size: Option<usize>,
    pub bits: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kite_spread: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_residual: Option<f64>,
    pub wall_ms: u128,
}

impl RunManifest {
    pub fn new(command: &str, bits: u32) -> Self {
        RunManifest {
            tool: "zgamma".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            mode: None,
            gamma: None,
            alpha: None,
            kappa: None,
            beta: None,
            size: None,
            bits,
            kite_spread: None,
            constraint_residual: None,
            wall_ms: 0,
        }
    }
}
