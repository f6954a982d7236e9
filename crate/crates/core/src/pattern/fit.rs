//! Power-law fits of the boundary growth plus the (diagnostic-only)
//! whole-plane comparison against `c (n + e^{i alpha} m)^gamma`.

use super::{GridMap, PatternError};
use crate::complex::Complex;
use crate::functions::{atan2, exp, ln, sin_cos};
use crate::real::Real;

#[derive(Debug, Clone)]
pub struct FitResult {
    pub c_fit: Real,
    pub gamma_fit: Real,
    /// Worst relative deviation from the fitted power law over the whole
    /// generated triangle. Reported, never asserted.
    pub conjecture_residual: Option<f64>,
}

/// Least-squares fit of `ln f_{n,0}` against `ln n` over the upper half of
/// the axis, plus the whole-plane residual diagnostic.
pub fn fit_asymptotics(map: &GridMap) -> Result<FitResult, PatternError> {
    let size = map.config.size;
    if size < 40 {
        return Err(PatternError::BadConfig("fit needs size >= 40"));
    }
    let prec = map.config.prec;
    let mut xs = alloc::vec::Vec::new();
    let mut ys = alloc::vec::Vec::new();
    for n in size / 2..=size {
        if let Some(f) = map.get(n as u32, 0) {
            xs.push(ln(&Real::from_i64(n as i64, prec)));
            ys.push(ln(&f.abs()));
        }
    }
    let (slope, intercept) = least_squares(&xs, &ys, prec);
    let c_fit = exp(&intercept);
    let residual = conjecture_residual(map, &c_fit, &slope);
    Ok(FitResult {
        c_fit,
        gamma_fit: slope,
        conjecture_residual: Some(residual),
    })
}

/// Axis-only fit: builds boundary radii up to `n_max` and fits the partial
/// sums, never generating the interior.
pub fn fit_axis_only(gamma: &Real, n_max: usize) -> Result<FitResult, PatternError> {
    let prec = gamma.prec();
    let r = super::gen::axis_radii(gamma, n_max / 2 + 2)?;
    let mut ax = alloc::vec![Real::zero(prec)];
    for k in 1..=n_max {
        let n = (k - 1) / 2;
        let step = if k % 2 == 1 { &r[n] } else { &r[n + 1] };
        let prev = ax[k - 1].clone();
        ax.push(&prev + step);
    }
    let mut xs = alloc::vec::Vec::new();
    let mut ys = alloc::vec::Vec::new();
    for (n, v) in ax.iter().enumerate().take(n_max + 1).skip(n_max / 2) {
        xs.push(ln(&Real::from_i64(n as i64, prec)));
        ys.push(ln(v));
    }
    let (slope, intercept) = least_squares(&xs, &ys, prec);
    Ok(FitResult {
        c_fit: exp(&intercept),
        gamma_fit: slope,
        conjecture_residual: None,
    })
}

fn least_squares(xs: &[Real], ys: &[Real], prec: u32) -> (Real, Real) {
    let n = Real::from_i64(xs.len() as i64, prec);
    let mut sx = Real::zero(prec);
    let mut sy = Real::zero(prec);
    let mut sxx = Real::zero(prec);
    let mut sxy = Real::zero(prec);
    for (x, y) in xs.iter().zip(ys) {
        sx = &sx + x;
        sy = &sy + y;
        sxx = &sxx + &(x * x);
        sxy = &sxy + &(x * y);
    }
    let det = &(&n * &sxx) - &(&sx * &sx);
    let slope = &(&(&n * &sxy) - &(&sx * &sy)) / &det;
    let intercept = &(&sy - &(&slope * &sx)) / &n;
    (slope, intercept)
}

/// `max |f_{n,m} - c (n + e^{i alpha} m)^g| / |f_{n,m}|` over the triangle.
fn conjecture_residual(map: &GridMap, c: &Real, g: &Real) -> f64 {
    let prec = map.config.prec;
    let (sa, ca) = sin_cos(&map.config.alpha);
    let mut worst: f64 = 0.0;
    for (n, m, f) in map.vertices() {
        if n + m == 0 || f.is_zero() {
            continue;
        }
        let w = Complex::new(
            &Real::from_i64(n as i64, prec) + &(&Real::from_i64(m as i64, prec) * &ca),
            &Real::from_i64(m as i64, prec) * &sa,
        );
        // w^g = exp(g ln|w|) cis(g arg w)
        let modulus = exp(&(g * &ln(&w.abs())));
        let angle = g * &atan2(&w.im, &w.re);
        let power = Complex::from_polar(&modulus, &angle);
        let model = power.scale(c);
        let rel = (&(f - &model).abs() / &f.abs()).to_f64();
        worst = worst.max(rel);
    }
    worst
}
