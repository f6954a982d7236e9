//! Map reconstruction from a radius field.
//!
//! Even vertices are placed through the tangency collinearity: at every odd
//! vertex the horizontal (and vertical) neighbor triple is collinear with
//! length ratio equal to the adjacent radius ratio. Odd vertices are filled
//! by the cross-ratio relation. Together the two rules consume every
//! interior radius, so agreement with a map built by pure cross-ratio
//! propagation is a genuine two-route check.

use super::gen::axis_radii;
use super::{GridMap, OriginKind, PatternConfig, PatternError, RadiusField};
use crate::complex::Complex;
use crate::lattice::{solve_fourth_point, LatticeIndex, SublatticeIndex};
use crate::real::Real;

/// Rebuild the map of a positive radius field. The global position/rotation
/// is fixed by `f_{0,0} = 0`, `f_{1,0} = R_0` on the positive axis and the
/// boundary direction `beta` from the config.
pub fn reconstruct_map(
    field: &RadiusField,
    config: &PatternConfig,
) -> Result<GridMap, PatternError> {
    if field.origin != OriginKind::Regular {
        return Err(PatternError::ExcludedOrigin);
    }
    let prec = config.prec;
    let size = (2 * field.m_max() as usize).min(config.size);
    let mut cfg = config.clone();
    cfg.size = size;
    let mut map = GridMap::empty(cfg.clone());
    // axes from the diagonal radii
    let r0 = field.get(SublatticeIndex::new(0, 0)).unwrap().clone();
    let r = axis_radii(&field.gamma, size / 2 + 2)?;
    let mut ax = alloc::vec![Real::zero(prec)];
    for k in 1..=size {
        let n = (k - 1) / 2;
        let step = if k % 2 == 1 { &r[n] } else { &r[n + 1] };
        let prev = ax[k - 1].clone();
        ax.push(&prev + &(step * &r0));
    }
    for n in 0..=size as u32 {
        map.set(n, 0, Complex::from_real(ax[n as usize].clone()));
    }
    let dir = Complex::cis(&cfg.beta);
    for m in 1..=size as u32 {
        map.set(0, m, dir.scale(&ax[m as usize]));
    }
    // corner circle center: |f11 - f10| = R_i fixes rho = |f11| through
    // rho^2 - 2 rho R_0 cos(beta/2) + R_0^2 = R_i^2
    let ri = field.get(SublatticeIndex::new(0, 1)).unwrap();
    let half_beta = cfg.beta.scale2(-1);
    let (_, cb) = crate::functions::sin_cos(&half_beta);
    let rb = &r0 * &cb;
    let inner = &(&(ri * ri) - &(&r0 * &r0)) + &(&rb * &rb);
    if inner.is_negative() {
        return Err(PatternError::BadConfig("kite seed has no real solution"));
    }
    let rho = &rb + &inner.sqrt();
    map.set(1, 1, Complex::from_polar(&rho, &half_beta));
    // sweep by increasing n+m
    let lambda = cfg.lambda();
    for s in 3..=size as u32 {
        for n in 1..s {
            let m = s - n;
            if n as usize + m as usize > size {
                continue;
            }
            if (n + m) % 2 == 0 {
                // even vertex: collinear triple through the odd neighbor
                let v = if n >= 2 {
                    let here = center_z(n, m);
                    let back = center_z(n - 2, m);
                    let ratio = radius_ratio(field, here, back)?;
                    let f1 = map.at(n - 1, m).clone();
                    let f0 = map.at(n - 2, m).clone();
                    &f1 + &(&f1 - &f0).scale(&ratio)
                } else {
                    let here = center_z(n, m);
                    let back = center_z(n, m - 2);
                    let ratio = radius_ratio(field, here, back)?;
                    let f1 = map.at(n, m - 1).clone();
                    let f0 = map.at(n, m - 2).clone();
                    &f1 + &(&f1 - &f0).scale(&ratio)
                };
                map.set(n, m, v);
            } else {
                let f1 = map.at(n - 1, m - 1);
                let f2 = map.at(n, m - 1);
                let f4 = map.at(n - 1, m);
                let v = solve_fourth_point(f1, f2, f4, &lambda)
                    .map_err(|_| PatternError::Degenerate { n: n - 1, m: m - 1 })?;
                map.set(n, m, v);
            }
        }
    }
    Ok(map)
}

fn center_z(n: u32, m: u32) -> SublatticeIndex {
    LatticeIndex::new(n, m)
        .to_sublattice()
        .expect("even vertex")
}

fn radius_ratio(
    field: &RadiusField,
    num: SublatticeIndex,
    den: SublatticeIndex,
) -> Result<Real, PatternError> {
    let rn = field.get(num).ok_or(PatternError::SignLoss {
        n: num.re,
        m: num.im,
    })?;
    let rd = field.get(den).ok_or(PatternError::SignLoss {
        n: den.re,
        m: den.im,
    })?;
    if !rd.is_positive() {
        return Err(PatternError::SignLoss {
            n: den.re,
            m: den.im,
        });
    }
    Ok(rn / rd)
}
