//! Versioned JSON schema for patterns.
//!
//! Scalars are serialized as decimal strings carrying the full working
//! precision, so exported values re-import bit-exactly at the declared
//! mantissa width; binary float fields are avoided on purpose.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use zgamma_core::complex::Complex;
use zgamma_core::pattern::{
    extract_radius_field, CirclePattern, GridMap, PatternConfig, PatternMode, RadiusField,
};
use zgamma_core::real::Real;

use crate::manifest::RunManifest;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
pub struct PatternFile {
    pub schema: u32,
    pub manifest: RunManifest,
    /// Map values, row-major by `(n, m)`.
    pub grid: Vec<GridEntry>,
    /// Radius field, ordered by `(N, M)`.
    pub radii: Vec<RadiusEntry>,
    /// Circles, ordered by `(N, M)`.
    pub circles: Vec<CircleJson>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GridEntry {
    pub n: u32,
    pub m: u32,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct RadiusEntry {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "M")]
    pub m: i64,
    #[serde(rename = "R")]
    pub r: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CircleJson {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "M")]
    pub m: i64,
    pub cx: String,
    pub cy: String,
    pub r: String,
}

pub fn mode_name(mode: PatternMode) -> &'static str {
    match mode {
        PatternMode::ZGamma => "zgamma",
        PatternMode::Z2 => "z2",
        PatternMode::Log => "log",
        PatternMode::KappaVariant => "kappa",
    }
}

pub fn mode_from_name(s: &str) -> Result<PatternMode> {
    Ok(match s {
        "zgamma" => PatternMode::ZGamma,
        "z2" => PatternMode::Z2,
        "log" => PatternMode::Log,
        "kappa" => PatternMode::KappaVariant,
        other => bail!("unknown mode `{other}`"),
    })
}

/// Assemble the export structure for a generated map.
pub fn pattern_file(
    map: &GridMap,
    kite_tol: &Real,
    mut manifest: RunManifest,
) -> Result<PatternFile> {
    let cfg = &map.config;
    manifest.mode = Some(mode_name(cfg.mode).into());
    manifest.gamma = Some(cfg.gamma.to_decimal_string());
    manifest.alpha = Some(cfg.alpha.to_decimal_string());
    manifest.kappa = Some(cfg.kappa.to_decimal_string());
    manifest.beta = Some(cfg.beta.to_decimal_string());
    manifest.size = Some(cfg.size);
    manifest.bits = cfg.prec;
    let mut grid = Vec::new();
    for (n, m, f) in map.vertices() {
        grid.push(GridEntry {
            n,
            m,
            re: f.re.to_decimal_string(),
            im: f.im.to_decimal_string(),
        });
    }
    grid.sort_by_key(|e| (e.n, e.m));
    let mut radii = Vec::new();
    let mut circles = Vec::new();
    if cfg.mode != PatternMode::KappaVariant && !cfg.skew {
        let field: RadiusField = extract_radius_field(map, kite_tol)?;
        for (z, r) in field.entries() {
            if !field.is_valid_entry(z) {
                continue;
            }
            radii.push(RadiusEntry {
                n: z.re,
                m: z.im,
                r: r.to_decimal_string(),
            });
        }
        radii.sort_by_key(|e| (e.n, e.m));
        let pat = CirclePattern::from_map(map, kite_tol)?;
        for c in &pat.circles {
            circles.push(CircleJson {
                n: c.z.re,
                m: c.z.im,
                cx: c.center.re.to_decimal_string(),
                cy: c.center.im.to_decimal_string(),
                r: c.radius.to_decimal_string(),
            });
        }
        circles.sort_by_key(|e| (e.n, e.m));
    }
    Ok(PatternFile {
        schema: SCHEMA_VERSION,
        manifest,
        grid,
        radii,
        circles,
    })
}

/// Rebuild the map (and config) from an exported file.
pub fn import_map(file: &PatternFile) -> Result<GridMap> {
    let man = &file.manifest;
    let bits = man.bits;
    if bits < 53 {
        bail!("manifest declares {bits} mantissa bits; the minimum is 53");
    }
    let parse = |s: &Option<String>, what: &str| -> Result<Real> {
        let s = s
            .as_ref()
            .ok_or_else(|| anyhow!("manifest missing {what}"))?;
        Real::from_decimal_str(s, bits).map_err(|e| anyhow!("bad {what}: {e}"))
    };
    let mode = mode_from_name(man.mode.as_deref().unwrap_or("zgamma"))?;
    let gamma = parse(&man.gamma, "gamma")?;
    let alpha = parse(&man.alpha, "alpha")?;
    let size = man.size.ok_or_else(|| anyhow!("manifest missing size"))?;
    let mut cfg =
        PatternConfig::new(mode, gamma, alpha, size, bits).map_err(|e| anyhow!("config: {e}"))?;
    if let Some(k) = &man.kappa {
        cfg = cfg
            .with_kappa(Real::from_decimal_str(k, bits)?)
            .map_err(|e| anyhow!("kappa: {e}"))?;
    }
    if let Some(b) = &man.beta {
        cfg = cfg.with_beta(Real::from_decimal_str(b, bits)?);
    }
    let mut map = GridMap::empty(cfg);
    for e in &file.grid {
        if e.n as usize + e.m as usize > size {
            bail!("grid entry ({}, {}) outside the declared size", e.n, e.m);
        }
        let re = Real::from_decimal_str(&e.re, bits)?;
        let im = Real::from_decimal_str(&e.im, bits)?;
        map.set(e.n, e.m, Complex::new(re, im));
    }
    Ok(map)
}

pub fn write_file(path: &std::path::Path, file: &PatternFile) -> Result<()> {
    let body = serde_json::to_string_pretty(file)?;
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

pub fn read_file(path: &std::path::Path) -> Result<PatternFile> {
    let body =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&body)?)
}
