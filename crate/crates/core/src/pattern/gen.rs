//! Axis construction and cross-ratio propagation.

use alloc::vec::Vec;

use super::{GridMap, PatternConfig, PatternError, PatternMode};
use crate::complex::Complex;
use crate::functions::{atan2, sin_cos};
use crate::lattice::solve_fourth_point;
use crate::real::Real;
use crate::riccati::g_coeff;
use crate::special::rising_factorial;

/// Boundary radii `r_0 .. r_{n_max}` from the two-term recurrence
/// `r_{n+1} = g_n(gamma) r_n`, `r_0 = 1`, verified against the closed form
/// `r_n = [G(n+g/2)/G(g/2)] [G(1-g/2)/G(n+1-g/2)]` to `100 eps`.
pub fn axis_radii(gamma: &Real, n_max: usize) -> Result<Vec<Real>, PatternError> {
    let prec = gamma.prec();
    let one = Real::from_i64(1, prec);
    let mut r = Vec::with_capacity(n_max + 1);
    r.push(one.clone());
    for n in 0..n_max {
        let g = g_coeff(n, gamma)?;
        let prev = r[n].clone();
        r.push(&prev * &g);
    }
    // closed form: rising(g/2, n) / rising(1 - g/2, n)
    let half_gamma = gamma.scale2(-1);
    let one_minus = &one - &half_gamma;
    let tol = Real::exp2(8 - prec as i64, prec); // ~100 eps
    for (n, rn) in r.iter().enumerate() {
        let closed =
            &rising_factorial(&half_gamma, n as i64) / &rising_factorial(&one_minus, n as i64);
        let rel = (&closed - rn).abs() / rn;
        if rel > tol {
            return Err(PatternError::AxisMismatch(n));
        }
    }
    Ok(r)
}

/// Diagnostics captured during generation.
#[derive(Debug, Clone)]
pub struct GenDiagnostics {
    /// Worst relative residual of the boundary constraint over interior
    /// vertices.
    pub constraint_residual: f64,
    /// Worst relative kite edge spread over even vertices (None for the
    /// kappa variant, which has no kites).
    pub kite_spread: Option<f64>,
    /// Mantissa width actually used.
    pub bits: u32,
}

/// A generated map plus its quality metrics.
#[derive(Debug, Clone)]
pub struct Generated {
    pub map: GridMap,
    pub diagnostics: GenDiagnostics,
}

/// Build the axes and fill the interior by cross-ratio propagation in
/// diagonal fronts.
pub fn generate(config: &PatternConfig) -> Result<Generated, PatternError> {
    let mut map = GridMap::empty(config.clone());
    build_axes(&mut map)?;
    seed_corner(&mut map)?;
    propagate_interior(&mut map)?;
    let constraint_residual = constraint_residual(&map);
    let kite_spread = match config.mode {
        PatternMode::KappaVariant => None,
        _ => Some(kite_spread(&map)),
    };
    Ok(Generated {
        map,
        diagnostics: GenDiagnostics {
            constraint_residual,
            kite_spread,
            bits: config.prec,
        },
    })
}

/// Retry generation over widening mantissas until the kite spread meets
/// `target` (skew and kappa runs fall back to the constraint residual).
pub fn generate_with_ladder(
    config: &PatternConfig,
    target: f64,
) -> Result<Generated, PatternError> {
    let ladder: [u32; 4] = [53, 106, 212, 424];
    let mut last_err = None;
    for bits in ladder {
        if bits < config.prec {
            continue;
        }
        let mut cfg = config.clone();
        cfg.prec = bits;
        cfg.gamma = config.gamma.with_prec(bits);
        cfg.alpha = config.alpha.with_prec(bits);
        cfg.kappa = config.kappa.with_prec(bits);
        cfg.beta = config.beta.with_prec(bits);
        match generate(&cfg) {
            Ok(g) => {
                let metric = g
                    .diagnostics
                    .kite_spread
                    .unwrap_or(g.diagnostics.constraint_residual);
                if metric < target {
                    return Ok(g);
                }
                last_err = Some(PatternError::LadderExhausted(bits));
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap_or(PatternError::LadderExhausted(424)))
}

fn build_axes(map: &mut GridMap) -> Result<(), PatternError> {
    let cfg = map.config.clone();
    let prec = cfg.prec;
    let size = cfg.size;
    let zero = Real::zero(prec);
    match cfg.mode {
        PatternMode::ZGamma | PatternMode::KappaVariant => {
            let r = axis_radii(&cfg.gamma, size / 2 + 2)?;
            let ax = axis_partial_sums(&r, size, &zero);
            place_axes(map, &ax, &cfg, false);
        }
        PatternMode::Z2 => {
            // r_0 = 0, r_1 = 1, r_{n+1} = (n+1)/n r_n  =>  r_n = n
            let mut r = alloc::vec![zero.clone(), Real::from_i64(1, prec)];
            for n in 1..size / 2 + 2 {
                r.push(Real::from_i64(n as i64 + 1, prec));
            }
            let ax = axis_partial_sums(&r, size, &zero);
            place_axes(map, &ax, &cfg, false);
        }
        PatternMode::Log => {
            // reciprocal boundary radii; the first step (from the origin)
            // is infinite, so the axis is anchored at f_{1,0} = 0.
            let mut r = alloc::vec![Real::zero(prec), Real::from_i64(1, prec)];
            for n in 1..size / 2 + 2 {
                r.push(&Real::from_i64(1, prec) / &Real::from_i64(n as i64 + 1, prec));
            }
            let ax = axis_partial_sums(&r, size, &zero);
            place_axes(map, &ax, &cfg, true);
        }
    }
    Ok(())
}

/// `f_{k,0}` from the equidistant steps: odd steps use `r_n`, even steps
/// `r_{n+1}`.
fn axis_partial_sums(r: &[Real], size: usize, zero: &Real) -> Vec<Real> {
    let mut ax = Vec::with_capacity(size + 1);
    ax.push(zero.clone());
    for k in 1..=size {
        let n = (k - 1) / 2;
        let step = if k % 2 == 1 { &r[n] } else { &r[n + 1] };
        let prev = ax[k - 1].clone();
        ax.push(&prev + step);
    }
    ax
}

fn place_axes(map: &mut GridMap, ax: &[Real], cfg: &PatternConfig, log_mode: bool) {
    let size = cfg.size;
    if log_mode {
        // origin is at infinity: leave (0,0) unset, anchor f_{1,0} = 0 and
        // shift the axis accordingly (ax was accumulated with a zero first
        // step, so it already starts 0, 0, ...; drop the first entry).
        for n in 1..=size as u32 {
            map.set(n, 0, Complex::from_real(ax[n as usize].clone()));
        }
        // left boundary: horizontal translate of the axis at height 2 alpha
        let strip = cfg.alpha.scale2(1);
        for m in 1..=size as u32 {
            map.set(0, m, Complex::new(ax[m as usize].clone(), strip.clone()));
        }
        return;
    }
    for n in 0..=size as u32 {
        map.set(n, 0, Complex::from_real(ax[n as usize].clone()));
    }
    let (sb, cb) = sin_cos(&cfg.beta);
    let dir = Complex::new(cb, sb);
    for m in 1..=size as u32 {
        let scaled = &ax[m as usize] / &cfg.kappa;
        map.set(0, m, dir.scale(&scaled));
    }
}

/// Place the corner circle center `f_{1,1}` for the modes whose quad at the
/// origin is degenerate; regular modes get it from the propagation sweep.
fn seed_corner(map: &mut GridMap) -> Result<(), PatternError> {
    let cfg = map.config.clone();
    match cfg.mode {
        PatternMode::Z2 => {
            // R_i = sin(alpha)/alpha, center on the ray of angle alpha
            let (sa, _) = sin_cos(&cfg.alpha);
            let ri = &sa / &cfg.alpha;
            map.set(1, 1, Complex::from_polar(&ri, &cfg.alpha));
        }
        PatternMode::Log => {
            // |f11| = |f11 - 2 i alpha| = alpha/sin(alpha):
            // f11 = alpha cot(alpha) + i alpha
            let (sa, ca) = sin_cos(&cfg.alpha);
            let x = &(&cfg.alpha * &ca) / &sa;
            map.set(1, 1, Complex::new(x, cfg.alpha.clone()));
        }
        PatternMode::ZGamma | PatternMode::KappaVariant => {}
    }
    Ok(())
}

fn propagate_interior(map: &mut GridMap) -> Result<(), PatternError> {
    let cfg = map.config.clone();
    let size = cfg.size as u32;
    let lambda = cfg.lambda();
    for s in 2..=size {
        for n in 1..s {
            let m = s - n;
            if map.contains(n, m) {
                continue; // seeded corner
            }
            let f1 = map.get(n - 1, m - 1);
            let (f1, f2, f4) = match (f1, map.get(n, m - 1), map.get(n - 1, m)) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                _ => continue, // quads touching an unset origin
            };
            let v = solve_fourth_point(f1, f2, f4, &lambda)
                .map_err(|_| PatternError::Degenerate { n: n - 1, m: m - 1 })?;
            map.set(n, m, v);
        }
    }
    Ok(())
}

/// Worst relative residual of the boundary constraint
/// `gamma f = 2n (f_E - f)(f - f_W)/(f_E - f_W) + 2m (f_N - f)(f - f_S)/(f_N - f_S)`
/// over vertices with all needed neighbors generated. The log map is the
/// renormalized `gamma -> 0` limit and satisfies the inhomogeneous form
/// with constant right side instead (equal to 2 at this crate's dual
/// normalization of the log radii).
pub fn constraint_residual(map: &GridMap) -> f64 {
    let cfg = &map.config;
    let prec = cfg.prec;
    let mut worst: f64 = 0.0;
    let size = cfg.size as u32;
    for m in 0..size {
        for n in 0..size - m {
            if n + m == 0 {
                continue;
            }
            let f = match map.get(n, m) {
                Some(f) => f,
                None => continue,
            };
            let mut rhs = Complex::zero(prec);
            if n > 0 {
                let (e, w) = match (map.get(n + 1, m), map.get(n - 1, m)) {
                    (Some(e), Some(w)) => (e, w),
                    _ => continue,
                };
                let den = e - w;
                if den.is_zero() {
                    continue;
                }
                let num = &(e - f) * &(f - w);
                rhs = &rhs + &(&num / &den).scale(&Real::from_i64(2 * n as i64, prec));
            }
            if m > 0 {
                let (nn, ss) = match (map.get(n, m + 1), map.get(n, m - 1)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => continue,
                };
                let den = nn - ss;
                if den.is_zero() {
                    continue;
                }
                let num = &(nn - f) * &(f - ss);
                rhs = &rhs + &(&num / &den).scale(&Real::from_i64(2 * m as i64, prec));
            }
            let lhs = match cfg.mode {
                PatternMode::Log => Complex::from_real(Real::from_i64(2, prec)),
                _ => f.scale(&cfg.gamma),
            };
            let scale = &Real::from_i64(1, prec) + &f.abs();
            let res = (&(&lhs - &rhs).abs() / &scale).to_f64();
            worst = worst.max(res);
        }
    }
    worst
}

/// Worst relative spread of incident edge lengths over even vertices.
pub fn kite_spread(map: &GridMap) -> f64 {
    let size = map.config.size as u32;
    let mut worst: f64 = 0.0;
    for m in 0..=size {
        for n in 0..=size - m {
            if (n + m) % 2 != 0 {
                continue;
            }
            if let Some(spread) = vertex_edge_spread(map, n, m) {
                worst = worst.max(spread);
            }
        }
    }
    worst
}

/// Relative spread of the incident edge lengths at an even vertex, when at
/// least two incident edges exist.
pub fn vertex_edge_spread(map: &GridMap, n: u32, m: u32) -> Option<f64> {
    let f = map.get(n, m)?;
    let mut lens: Vec<Real> = Vec::with_capacity(4);
    if n > 0 {
        if let Some(w) = map.get(n - 1, m) {
            lens.push((w - f).abs());
        }
    }
    if m > 0 {
        if let Some(s) = map.get(n, m - 1) {
            lens.push((s - f).abs());
        }
    }
    if let Some(e) = map.get(n + 1, m) {
        lens.push((e - f).abs());
    }
    if let Some(t) = map.get(n, m + 1) {
        lens.push((t - f).abs());
    }
    if lens.len() < 2 {
        return None;
    }
    let mut max = lens[0].clone();
    let mut min = lens[0].clone();
    for l in &lens[1..] {
        if *l > max {
            max = l.clone();
        }
        if *l < min {
            min = l.clone();
        }
    }
    if !max.is_positive() {
        return None; // degenerate z2 origin
    }
    Some((&(&max - &min) / &max).to_f64())
}

/// Worst violation of the equidistant axis property
/// `f_{2n+1,0} - f_{2n,0} = f_{2n,0} - f_{2n-1,0}` (and the m-axis twin).
pub fn equidistant_residual(map: &GridMap) -> f64 {
    let size = map.config.size as u32;
    let mut worst: f64 = 0.0;
    let mut check = |a: Option<&Complex>, b: Option<&Complex>, c: Option<&Complex>| {
        if let (Some(a), Some(b), Some(c)) = (a, b, c) {
            let d1 = b - a;
            let d2 = c - b;
            let num = (&d2 - &d1).abs();
            let den = d1.abs().max(d2.abs());
            if den.is_positive() {
                worst = worst.max((&num / &den).to_f64());
            }
        }
    };
    for k in (2..size).step_by(2) {
        check(map.get(k - 1, 0), map.get(k, 0), map.get(k + 1, 0));
        check(map.get(0, k - 1), map.get(0, k), map.get(0, k + 1));
    }
    worst
}

/// Convenience: `atan2`-based direction of the m-axis of a generated map
/// (used to confirm the homogeneity relation for skew and kappa runs).
pub fn m_axis_direction(map: &GridMap) -> Option<Real> {
    let f = map.get(0, 1)?;
    Some(atan2(&f.im, &f.re))
}
