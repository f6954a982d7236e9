//! Radius-field extraction, the square/vertex evolution over `V`, the
//! renormalized `Z2` seed, and duality.

use alloc::vec::Vec;

use super::gen::axis_radii;
use super::{GridMap, OriginKind, PatternError, PatternMode, RadiusField};
use crate::lattice::SublatticeIndex;
use crate::real::Real;

/// Read the radius field off a kite map: at each even vertex the radius is
/// the mean incident edge length; a spread beyond `kite_tol` is an error
/// (the map is not a circle pattern to that tolerance).
pub fn extract_radius_field(map: &GridMap, kite_tol: &Real) -> Result<RadiusField, PatternError> {
    let cfg = &map.config;
    let prec = cfg.prec;
    let origin = match cfg.mode {
        PatternMode::Z2 => OriginKind::Zero,
        PatternMode::Log => OriginKind::Infinite,
        _ => OriginKind::Regular,
    };
    // the log radii solve the radius system at gamma = 0 (dual of z^2)
    let field_gamma = match cfg.mode {
        PatternMode::Log => Real::zero(cfg.prec),
        _ => cfg.gamma.clone(),
    };
    let mut field = RadiusField::new(field_gamma, cfg.alpha.clone(), origin);
    // Radii are defined where the center and at least two neighbors exist;
    // rows are complete for M <= (size - 1) / 2.
    let m_cap = (cfg.size.saturating_sub(1)) / 2;
    for mi in 0..=m_cap as i64 {
        let mut row = Vec::with_capacity(2 * mi as usize + 1);
        for ni in -mi..=mi {
            let z = SublatticeIndex::new(ni, mi);
            let l = z.to_lattice().expect("row is inside V");
            if z.re == 0 && z.im == 0 && origin != OriginKind::Regular {
                row.push(Real::zero(prec)); // placeholder
                continue;
            }
            let (r, spread) =
                mean_edge(map, l.n, l.m).ok_or(PatternError::Degenerate { n: l.n, m: l.m })?;
            if spread > kite_tol.to_f64() {
                return Err(PatternError::NotAKite {
                    n: l.n,
                    m: l.m,
                    spread,
                });
            }
            row.push(r);
        }
        field.push_row(row);
    }
    Ok(field)
}

fn mean_edge(map: &GridMap, n: u32, m: u32) -> Option<(Real, f64)> {
    let f = map.get(n, m)?;
    let prec = map.config.prec;
    let mut lens: Vec<Real> = Vec::with_capacity(4);
    if n > 0 {
        lens.push((map.get(n - 1, m)? - f).abs());
    }
    if m > 0 {
        lens.push((map.get(n, m - 1)? - f).abs());
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
    let mut sum = Real::zero(prec);
    let mut max = lens[0].clone();
    let mut min = lens[0].clone();
    for l in &lens {
        sum = &sum + l;
        if *l > max {
            max = l.clone();
        }
        if *l < min {
            min = l.clone();
        }
    }
    let mean = &sum / &Real::from_i64(lens.len() as i64, prec);
    let spread = if max.is_positive() {
        (&(&max - &min) / &max).to_f64()
    } else {
        0.0
    };
    Some((mean, spread))
}

/// Solve the square-type equation for the north-east corner `R_{z+1+i}`
/// given the other three corners at `z = N + iM`.
fn square_solve_ne(
    rz: &Real,
    rz1: &Real,
    rzi: &Real,
    n: i64,
    m: i64,
    gamma: &Real,
) -> Option<Real> {
    let prec = gamma.prec();
    let nf = Real::from_i64(n, prec);
    let mf = Real::from_i64(m, prec);
    let half_g = gamma.scale2(-1);
    let sum_ri = rz1 + rzi;
    let num = rz * &(&(&(&mf * rz1) + &(&nf * rzi)) + &(&half_g * &sum_ri));
    let den = &(&(&(&nf + &Real::from_i64(1, prec)) * rz1)
        + &(&(&mf + &Real::from_i64(1, prec)) * rzi))
        - &(&half_g * &sum_ri);
    if !den.is_positive() {
        return None;
    }
    Some(&num / &den)
}

/// Solve the square-type equation for the north corner `R_{z+i}` on the
/// left edge (`z = -M + iM`).
fn square_solve_n(
    rz: &Real,
    rz1: &Real,
    rz1i: &Real,
    n: i64,
    m: i64,
    gamma: &Real,
) -> Option<Real> {
    let prec = gamma.prec();
    let nf = Real::from_i64(n, prec);
    let mf = Real::from_i64(m, prec);
    let half_g = gamma.scale2(-1);
    let sum_o = rz + rz1i;
    let num =
        rz1 * &(&(&(&mf * rz) - &(&(&nf + &Real::from_i64(1, prec)) * rz1i)) + &(&half_g * &sum_o));
    let den = &(&(&(&mf + &Real::from_i64(1, prec)) * rz1i) - &(&nf * rz)) - &(&half_g * &sum_o);
    if !den.is_positive() {
        return None;
    }
    Some(&num / &den)
}

/// Solve the vertex-type equation for `R_{z+i}` at interior `z`.
fn ri_solve_n(rz: &Real, rz1: &Real, rzmi: &Real, n: i64, m: i64, t: &Real) -> Option<Real> {
    let prec = rz.prec().max(t.prec());
    let a = &(&(rz * rz) - &(rz1 * rzmi)) + &(&(t * rz) * &(rzmi - rz1));
    let c = Real::from_i64(n + m, prec);
    let b = &Real::from_i64(m - n, prec) * &(rzmi + rz1);
    let num = -&(&(&(&c * rz1) * &a) + &(&(&b * rz) * &(rz - &(t * rz1))));
    let den = &(&c * &a) + &(&b * &(&(t * rz) - rz1));
    if den.is_zero() {
        return None;
    }
    Some(&num / &den)
}

/// Propagate a radius field over `V` up to row `m_max` from the seeds
/// `R_0` and `R_i`, with diagonal values pinned to the boundary radii
/// sequence scaled by `R_0`.
pub fn radii_evolution(
    r0: &Real,
    ri: &Real,
    gamma: &Real,
    alpha: &Real,
    m_max: usize,
) -> Result<RadiusField, PatternError> {
    let diag = scaled_diag(r0, gamma, m_max)?;
    evolve(&diag, r0, ri, gamma, alpha, m_max, OriginKind::Regular)
}

fn scaled_diag(r0: &Real, gamma: &Real, m_max: usize) -> Result<Vec<Real>, PatternError> {
    let base = axis_radii(gamma, m_max + 1)?;
    Ok(base.iter().map(|r| r * r0).collect())
}

/// Radius field of the renormalized `Z2` pattern: `R_0 = 0`, `R_{1+i} = 1`,
/// `R_i = sin(alpha)/alpha`.
pub fn z2_field(alpha: &Real, m_max: usize) -> Result<RadiusField, PatternError> {
    let prec = alpha.prec();
    let gamma = Real::from_i64(2, prec);
    // diagonal radii r_n = n (the gamma = 2 recurrence seeded past its pole)
    let diag: Vec<Real> = (0..=m_max as i64 + 1)
        .map(|n| Real::from_i64(n, prec))
        .collect();
    let (sa, _) = crate::functions::sin_cos(alpha);
    let ri = &sa / alpha;
    evolve(
        &diag,
        &Real::zero(prec),
        &ri,
        &gamma,
        alpha,
        m_max,
        OriginKind::Zero,
    )
}

fn evolve(
    diag: &[Real],
    r0: &Real,
    ri: &Real,
    gamma: &Real,
    alpha: &Real,
    m_max: usize,
    origin: OriginKind,
) -> Result<RadiusField, PatternError> {
    let t = crate::functions::cos(alpha);
    let mut field = RadiusField::new(gamma.clone(), alpha.clone(), origin);
    field.push_row(alloc::vec![r0.clone()]);
    if m_max == 0 {
        return Ok(field);
    }
    field.push_row(alloc::vec![diag[1].clone(), ri.clone(), diag[1].clone()]);
    for m in 1..m_max as i64 {
        let mut next = alloc::vec![Real::zero(gamma.prec()); 2 * m as usize + 3];
        // interior columns via the vertex equation
        for nn in -(m - 1)..=(m - 1) {
            let rz = field.get(SublatticeIndex::new(nn, m)).unwrap();
            let rz1 = field.get(SublatticeIndex::new(nn + 1, m)).unwrap();
            let rzmi = field.get(SublatticeIndex::new(nn, m - 1)).unwrap();
            let y = ri_solve_n(rz, rz1, rzmi, nn, m, &t)
                .ok_or(PatternError::SignLoss { n: nn, m: m + 1 })?;
            next[(nn + m + 1) as usize] = y;
        }
        // right next-to-diagonal via the square equation at z = (M-1) + iM
        {
            let rz = field.get(SublatticeIndex::new(m - 1, m)).unwrap();
            let rz1 = field.get(SublatticeIndex::new(m, m)).unwrap();
            let rzi = next[(m - 1 + m + 1) as usize].clone();
            let x = square_solve_ne(rz, rz1, &rzi, m - 1, m, gamma)
                .ok_or(PatternError::SignLoss { n: m, m: m + 1 })?;
            next[(m + m + 1) as usize] = x;
        }
        // left next-to-diagonal via the square equation at z = -M + iM
        {
            let rz = field.get(SublatticeIndex::new(-m, m)).unwrap();
            let rz1 = field.get(SublatticeIndex::new(-m + 1, m)).unwrap();
            let rz1i = next[(-m + 1 + m + 1) as usize].clone();
            let y = square_solve_n(rz, rz1, &rz1i, -m, m, gamma)
                .ok_or(PatternError::SignLoss { n: -m, m: m + 1 })?;
            next[(-m + m + 1) as usize] = y;
        }
        // diagonals
        next[0] = diag[m as usize + 1].clone();
        next[2 * m as usize + 2] = diag[m as usize + 1].clone();
        // positivity audit
        for (idx, v) in next.iter().enumerate() {
            if !v.is_positive() {
                return Err(PatternError::SignLoss {
                    n: idx as i64 - (m + 1),
                    m: m + 1,
                });
            }
        }
        field.push_row(next);
    }
    Ok(field)
}

/// Pointwise reciprocal with `gamma -> 2 - gamma`.
///
/// A dual of a nominal-width field is stored 64 guard bits wide; dualing a
/// guarded field rounds back to the nominal width. The guarded reciprocal
/// sits well inside the rounding basin of the original value, so
/// `dual(dual(field)) == field` bit for bit.
pub fn dual_field(field: &RadiusField) -> Result<RadiusField, PatternError> {
    let nominal = field.nominal_prec;
    let guarded_input = field.gamma.prec() > nominal;
    let prec = if guarded_input { nominal } else { nominal + 64 };
    let work = field.gamma.prec() + 64;
    let one = Real::from_i64(1, work);
    let gamma = (&Real::from_i64(2, work) - &field.gamma.with_prec(work)).with_prec(prec);
    let origin = match field.origin {
        OriginKind::Regular => OriginKind::Regular,
        OriginKind::Zero => OriginKind::Infinite,
        OriginKind::Infinite => OriginKind::Zero,
    };
    let mut dual = RadiusField::new(gamma, field.alpha.with_prec(prec), origin);
    dual.nominal_prec = nominal;
    for m in 0..=field.m_max() {
        let mut row = Vec::with_capacity(2 * m as usize + 1);
        for nn in -m..=m {
            let z = SublatticeIndex::new(nn, m);
            let r = field.get(z).unwrap();
            if !field.is_valid_entry(z) {
                // the origin placeholder stays a placeholder in the dual
                row.push(match origin {
                    OriginKind::Zero => Real::zero(prec),
                    _ => Real::zero(prec),
                });
                continue;
            }
            if r.is_zero() {
                // zero radius dualizes to the infinite placeholder
                row.push(Real::zero(prec));
                continue;
            }
            row.push((&one / &r.with_prec(work)).with_prec(prec));
        }
        dual.push_row(row);
    }
    Ok(dual)
}

/// Residual summary of the two defining equations over a field.
#[derive(Debug, Clone)]
pub struct FieldResiduals {
    /// Worst relative residual of the square-type equation over `V_l`
    /// (diagonal instances use the mirror convention).
    pub square: f64,
    /// Worst relative residual of the vertex-type equation over `V_rint`.
    pub vertex: f64,
    pub worst_square_at: Option<SublatticeIndex>,
    pub worst_vertex_at: Option<SublatticeIndex>,
}

impl RadiusField {
    /// Relative residual of the square-type equation whose lower-left
    /// corner is `z` (mirror-extended at the diagonals), when all corners
    /// are available and valid.
    pub fn square_residual(&self, z: SublatticeIndex) -> Option<Real> {
        let prec = self.gamma.prec();
        let corners = [z, z.translate(1, 0), z.translate(0, 1), z.translate(1, 1)];
        let mut vals = Vec::with_capacity(4);
        for c in corners {
            // the infinite origin placeholder cannot enter an equation;
            // the exact zero of the z^2 seed can.
            if c.re == 0 && c.im == 0 && self.origin == OriginKind::Infinite {
                return None;
            }
            vals.push(self.get_mirrored(c)?.clone());
        }
        let (rz, rz1, rzi, rz1i) = (&vals[0], &vals[1], &vals[2], &vals[3]);
        let nf = Real::from_i64(z.re, prec);
        let mf = Real::from_i64(z.im, prec);
        let one = Real::from_i64(1, prec);
        let t1 = &(&mf * rz) * rz1;
        let t2 = &(&(&nf + &one) * rz1) * rz1i;
        let t3 = &(&(&mf + &one) * rz1i) * rzi;
        let t4 = &(&nf * rzi) * rz;
        let lhs = &(&(&t2 + &t3) - &t1) - &t4;
        let rhs = &(&self.gamma.scale2(-1) * &(rz + rz1i)) * &(rz1 + rzi);
        let scale = &(&(&t1.abs() + &t2.abs()) + &(&t3.abs() + &t4.abs())) + &rhs.abs();
        if !scale.is_positive() {
            return None;
        }
        Some(&(&lhs - &rhs).abs() / &scale)
    }

    /// Relative residual of the vertex-type equation centered at interior
    /// `z`.
    pub fn vertex_residual(&self, z: SublatticeIndex) -> Option<Real> {
        if !z.in_v_rint() {
            return None;
        }
        let prec = self.gamma.prec();
        let rz = self.get(z)?;
        let rz1 = self.get(z.translate(1, 0))?;
        let rzi = self.get(z.translate(0, 1))?;
        let rzmi = self.get(z.translate(0, -1))?;
        for c in [z, z.translate(1, 0), z.translate(0, 1), z.translate(0, -1)] {
            if c.re == 0 && c.im == 0 && self.origin == OriginKind::Infinite {
                return None;
            }
        }
        let t = &self.t;
        let a_down = &(&(rz * rz) - &(rz1 * rzmi)) + &(&(t * rz) * &(rzmi - rz1));
        let a_up = &(&(rz * rz) - &(rz1 * rzi)) + &(&(t * rz) * &(rzi - rz1));
        let term1 = &(&Real::from_i64(z.re + z.im, prec) * &(rzi + rz1)) * &a_down;
        let term2 = &(&Real::from_i64(z.im - z.re, prec) * &(rzmi + rz1)) * &a_up;
        let lhs = &term1 + &term2;
        let scale = term1.abs() + term2.abs();
        if !scale.is_positive() {
            return None;
        }
        Some(&lhs.abs() / &scale)
    }

    /// Worst residuals across the whole field.
    pub fn residuals(&self) -> FieldResiduals {
        let mut out = FieldResiduals {
            square: 0.0,
            vertex: 0.0,
            worst_square_at: None,
            worst_vertex_at: None,
        };
        let m_max = self.m_max();
        for m in 0..m_max {
            for nn in -(m + 1)..=m {
                let z = SublatticeIndex::new(nn, m);
                if !z.in_v_l() {
                    continue;
                }
                if let Some(r) = self.square_residual(z) {
                    let v = r.to_f64();
                    if v > out.square {
                        out.square = v;
                        out.worst_square_at = Some(z);
                    }
                }
            }
        }
        for m in 1..m_max {
            for nn in -(m - 1)..=(m - 1) {
                let z = SublatticeIndex::new(nn, m);
                if let Some(r) = self.vertex_residual(z) {
                    let v = r.to_f64();
                    if v > out.vertex {
                        out.vertex = v;
                        out.worst_vertex_at = Some(z);
                    }
                }
            }
        }
        out
    }
}
