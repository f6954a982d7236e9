//! CSV artifacts. The manifest rides along as a `#`-prefixed header line so
//! every emitted file is self-describing.

use std::io::Write;

use anyhow::Result;

use crate::manifest::RunManifest;

pub struct CsvWriter<W: Write> {
    out: W,
}

impl<W: Write> CsvWriter<W> {
    pub fn new(mut out: W, manifest: &RunManifest, columns: &[&str]) -> Result<Self> {
        writeln!(out, "# manifest: {}", serde_json::to_string(manifest)?)?;
        writeln!(out, "{}", columns.join(","))?;
        Ok(CsvWriter { out })
    }

    pub fn row(&mut self, fields: &[String]) -> Result<()> {
        writeln!(self.out, "{}", fields.join(","))?;
        Ok(())
    }
}
