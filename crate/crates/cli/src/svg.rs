//! SVG rendering of patterns: stroked circles, optional quad mesh and axes.
//! Write-only; figures are terminal artifacts.

use std::fmt::Write as _;

use anyhow::Result;

use zgamma_core::pattern::{CirclePattern, GridMap};

pub struct SvgOptions {
    pub circles: bool,
    pub mesh: bool,
    pub axes: bool,
    pub stroke_width_frac: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            circles: true,
            mesh: false,
            axes: false,
            stroke_width_frac: 0.002,
        }
    }
}

fn fmt12(v: f64) -> String {
    // 12 significant digits, scientific notation (valid SVG numbers)
    format!("{:.11e}", v)
}

pub fn render(map: &GridMap, pattern: Option<&CirclePattern>, opts: &SvgOptions) -> Result<String> {
    let mut min_x = f64::INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    let mut expand = |x: f64, y: f64, r: f64| {
        min_x = min_x.min(x - r);
        min_y = min_y.min(y - r);
        max_x = max_x.max(x + r);
        max_y = max_y.max(y + r);
    };
    for (_, _, f) in map.vertices() {
        expand(f.re.to_f64(), f.im.to_f64(), 0.0);
    }
    if let Some(p) = pattern {
        if opts.circles {
            for c in &p.circles {
                expand(
                    c.center.re.to_f64(),
                    c.center.im.to_f64(),
                    c.radius.to_f64(),
                );
            }
        }
    }
    if !min_x.is_finite() {
        min_x = 0.0;
        min_y = 0.0;
        max_x = 1.0;
        max_y = 1.0;
    }
    let w = (max_x - min_x).max(1e-12);
    let h = (max_y - min_y).max(1e-12);
    let pad = 0.03 * w.max(h);
    let stroke = opts.stroke_width_frac * w.max(h);
    let mut s = String::new();
    // SVG y grows downward: flip with a transform so the figure reads in
    // mathematical orientation.
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        fmt12(min_x - pad),
        fmt12(-(max_y + pad)),
        fmt12(w + 2.0 * pad),
        fmt12(h + 2.0 * pad)
    )?;
    writeln!(
        s,
        r#"<g transform="scale(1,-1)" fill="none" stroke-width="{}">"#,
        fmt12(stroke)
    )?;
    if opts.axes {
        writeln!(
            s,
            r##"<path d="M {} 0 H {} M 0 {} V {}" stroke="#bbbbbb"/>"##,
            fmt12(min_x - pad),
            fmt12(max_x + pad),
            fmt12(min_y - pad),
            fmt12(max_y + pad)
        )?;
    }
    if opts.mesh {
        let mut d = String::new();
        for (n, m) in map.quad_bases() {
            let q = map.quad(n, m).unwrap();
            write!(
                d,
                "M {} {} L {} {} L {} {} L {} {} Z ",
                fmt12(q[0].re.to_f64()),
                fmt12(q[0].im.to_f64()),
                fmt12(q[1].re.to_f64()),
                fmt12(q[1].im.to_f64()),
                fmt12(q[2].re.to_f64()),
                fmt12(q[2].im.to_f64()),
                fmt12(q[3].re.to_f64()),
                fmt12(q[3].im.to_f64())
            )?;
        }
        writeln!(s, r##"<path d="{}" stroke="#2060c0"/>"##, d.trim_end())?;
    }
    if opts.circles {
        if let Some(p) = pattern {
            for c in &p.circles {
                writeln!(
                    s,
                    r##"<circle cx="{}" cy="{}" r="{}" stroke="#202020"/>"##,
                    fmt12(c.center.re.to_f64()),
                    fmt12(c.center.im.to_f64()),
                    fmt12(c.radius.to_f64())
                )?;
            }
        }
    }
    writeln!(s, "</g>")?;
    writeln!(s, "</svg>")?;
    Ok(s)
}
