//! The discrete Riccati recursion for boundary radius ratios, its
//! linearization, and two independent closed forms for the unique
//! positivity-preserving initial value.
//!
//! The boundary circles of a `z^gamma` pattern have radii whose ratio
//! `p_n = R_n / r_n` obeys the Moebius step
//! `p_{n+1} = (g_n - t p_n) / (p_n - t g_n)` with `t = cos(alpha)` and
//! `g_n = (2n + gamma) / (2(n+1) - gamma)`. For `t > 0` the all-positive
//! solution is a separatrix: the one-parameter solution family divides into
//! a dominant branch with ratio asymptote `-(1+t)` and a subdominant branch
//! with asymptote `1-t`, and only the pure subdominant solution stays
//! positive. For `t <= 0` the step maps positives to positives outright, so
//! every positive seed yields a positive trajectory; the closed-form seed is
//! then distinguished by the geometry, not by sign survival.

use alloc::vec::Vec;

use crate::functions::{exp, lgamma, pi, sin};
use crate::real::Real;
use crate::special::{hyp2f1, hyp2f1_with_derivative, HypergeometricParams, SpecialFnError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RiccatiError {
    #[error("g_n pole: gamma = 2(n+1) at n = {0}")]
    GPole(usize),
    #[error("parameter out of range: {0}")]
    BadParams(&'static str),
    #[error(transparent)]
    Special(#[from] SpecialFnError),
}

/// Parameters of the boundary recursion.
#[derive(Debug, Clone)]
pub struct RiccatiParams {
    pub gamma: Real,
    pub alpha: Real,
    /// `cos(alpha)`, cached.
    pub t: Real,
}

impl RiccatiParams {
    pub fn new(gamma: Real, alpha: Real) -> Result<Self, RiccatiError> {
        let prec = gamma.prec().max(alpha.prec());
        let zero = Real::zero(prec);
        let two = Real::from_i64(2, prec);
        if !(gamma > zero && gamma < two) {
            return Err(RiccatiError::BadParams("gamma must lie in (0, 2)"));
        }
        if !(alpha > zero && alpha < pi(prec)) {
            return Err(RiccatiError::BadParams("alpha must lie in (0, pi)"));
        }
        let t = crate::functions::cos(&alpha);
        Ok(RiccatiParams { gamma, alpha, t })
    }

    pub fn prec(&self) -> u32 {
        self.gamma.prec().max(self.alpha.prec())
    }
}

/// `g_n(gamma) = (2n + gamma) / (2(n+1) - gamma)`.
pub fn g_coeff(n: usize, gamma: &Real) -> Result<Real, RiccatiError> {
    let prec = gamma.prec();
    let num = &Real::from_i64(2 * n as i64, prec) + gamma;
    let den = &Real::from_i64(2 * (n as i64 + 1), prec) - gamma;
    if den.is_zero() {
        return Err(RiccatiError::GPole(n));
    }
    Ok(&num / &den)
}

/// A recorded forward iteration of the Riccati step.
#[derive(Debug, Clone)]
pub struct RiccatiTrajectory {
    /// `p_0 ..= p_n_max` (shorter if a pole crossing stopped iteration).
    pub p: Vec<Real>,
    /// First index with `p_n <= 0`, if any.
    pub first_nonpositive: Option<usize>,
    /// Step at which `|p_n - t g_n|` fell below `eps (1 + |p_n|)` — a
    /// Moebius pass through infinity; iteration stops there.
    pub pole_at: Option<usize>,
    pub params: RiccatiParams,
}

impl RiccatiTrajectory {
    pub fn all_positive(&self) -> bool {
        self.first_nonpositive.is_none() && self.pole_at.is_none()
    }
}

/// Iterate `p_{n+1} = (g_n - t p_n)/(p_n - t g_n)` from `p0` up to `n_max`.
///
/// Sign loss does not stop the iteration (the post-loss approach to the
/// negative fixed point is itself of interest); only a pole crossing does.
pub fn riccati_iterate(
    p0: &Real,
    params: &RiccatiParams,
    n_max: usize,
) -> Result<RiccatiTrajectory, RiccatiError> {
    let prec = params.prec().max(p0.prec());
    let eps = Real::exp2(1 - prec as i64, prec);
    let mut p = p0.with_prec(prec);
    let mut traj = Vec::with_capacity(n_max + 1);
    let mut first_nonpositive = if p.is_positive() { None } else { Some(0) };
    let mut pole_at = None;
    traj.push(p.clone());
    for n in 0..n_max {
        let g = g_coeff(n, &params.gamma)?;
        let den = &p - &(&params.t * &g);
        let blowup = &eps * &(&Real::from_i64(1, prec) + &p.abs());
        if den.abs() < blowup {
            pole_at = Some(n);
            break;
        }
        p = &(&g - &(&params.t * &p)) / &den;
        traj.push(p.clone());
        if first_nonpositive.is_none() && !p.is_positive() {
            first_nonpositive = Some(n + 1);
        }
    }
    Ok(RiccatiTrajectory {
        p: traj,
        first_nonpositive,
        pole_at,
        params: params.clone(),
    })
}

/// The unique positivity-compatible seed
/// `p_0 = sin(gamma alpha / 2) / sin((2 - gamma) alpha / 2)`.
pub fn p0_closed(params: &RiccatiParams) -> Real {
    let prec = params.prec();
    let half_a = params.alpha.scale2(-1);
    let num = sin(&(&params.gamma * &half_a));
    let den = sin(&(&(&Real::from_i64(2, prec) - &params.gamma) * &half_a));
    &num / &den
}

/// The same seed expressed through a hypergeometric logarithmic derivative:
/// with `z = (1 + cos alpha)/2` and `s(z) = F((3-gamma)/2, (gamma-1)/2, 3/2, 1-z)`,
///
/// `p_0 = 1 + 2(gamma-1) z/(2-gamma) + 4 z(z-1)/(2-gamma) * s'(z)/s(z)`.
///
/// The series parameter worth noting: the function fed to the formula has
/// third parameter `3/2` and argument `1 - z = sin^2(alpha/2)`. With the
/// regular `c = 1/2` solution at argument `z` (or `-z`) the identity fails
/// everywhere; the closed form has a square-root branch at `z = 1` (i.e.
/// `alpha = pi`), which selects this second solution of the same
/// hypergeometric equation. Verified against [`p0_closed`] on a dense
/// `(gamma, alpha)` grid.
pub fn p0_hypergeometric(params: &RiccatiParams) -> Result<Real, RiccatiError> {
    let prec = params.prec();
    let one = Real::from_i64(1, prec);
    let z = (&one + &params.t).scale2(-1);
    let v = &one - &z; // sin^2(alpha/2)
    let a = (&Real::from_i64(3, prec) - &params.gamma).scale2(-1);
    let b = (&params.gamma - &one).scale2(-1);
    let c = &one + &Real::exp2(-1, prec);
    let (s, ds_dv) = hyp2f1_with_derivative(&HypergeometricParams::new(a, b, c, v))?;
    // d/dz s(1-z) = -s'(v)
    let sprime_over_s = &(-&ds_dv) / &s;
    let two_minus_gamma = &Real::from_i64(2, prec) - &params.gamma;
    let lin = &(&(&params.gamma - &one).scale2(1) * &z) / &two_minus_gamma;
    let quad = &(&(&z * &(&z - &one)).scale2(2) * &sprime_over_s) / &two_minus_gamma;
    Ok(&(&one + &lin) + &quad)
}

/// General solution data for the linearized recursion
/// `y_{n+2} + t (g_{n+1} + 1) y_{n+1} + (t^2 - 1) g_n y_n = 0`.
///
/// The two basis solutions are hypergeometric with a contiguous third
/// parameter:
///
/// `y(1)_n = (-1)^n C_n (1+t)^x F(a, b, n + 3/2, (1+t)/2)` (dominant for t > 0)
/// `y(2)_n =        C_n (1-t)^x F(a, b, n + 3/2, (1-t)/2)` (subdominant)
///
/// with `x = n + 1 - gamma/2`, `a = (3-gamma)/2`, `b = (gamma-1)/2` and the
/// prefactor `C_n = Gamma(n + gamma/2) (n + 1 - gamma/2) / Gamma(n + 3/2)`
/// (fixed by matching the contiguous relation of `F` in its third parameter
/// against the recursion). The oscillating branch evaluates the formal
/// power `lambda_1^x` of the negative root as `(-1)^n |1+t|^x`; a global
/// sign is absorbed into `c1`. The `c1 = 0` solution is the linearization
/// of the positivity separatrix: its consecutive ratios reproduce
/// [`riccati_iterate`] from [`p0_closed`].
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub c1: Real,
    pub c2: Real,
    pub y: Vec<Real>,
    pub params: RiccatiParams,
}

pub fn linear_solution(
    c1: &Real,
    c2: &Real,
    params: &RiccatiParams,
    n_max: usize,
) -> Result<LinearSolution, RiccatiError> {
    let prec = params.prec();
    let w = prec + 32;
    let one = Real::from_i64(1, w);
    let half = Real::exp2(-1, w);
    let gamma = params.gamma.with_prec(w);
    let t = params.t.with_prec(w);
    let a = (&Real::from_i64(3, w) - &gamma).scale2(-1);
    let b = (&gamma - &one).scale2(-1);
    let half_gamma = gamma.scale2(-1);
    let v1 = (&one + &t).scale2(-1);
    let v2 = (&one - &t).scale2(-1);
    let l1 = (&one + &t).with_prec(w); // |lambda_1|
    let l2 = (&one - &t).with_prec(w);
    // C_0 = Gamma(gamma/2) (1 - gamma/2) / Gamma(3/2)
    let c0_gamma = exp(&(&lgamma(&half_gamma) - &lgamma(&(&one + &half))));
    let mut c_n = &c0_gamma * &(&one - &half_gamma);
    // lambda^x at n = 0: x_0 = 1 - gamma/2
    let x0 = &one - &half_gamma;
    let mut l1_pow = crate::functions::pow(&l1, &x0);
    let mut l2_pow = crate::functions::pow(&l2, &x0);
    let mut y = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let nf = Real::from_i64(n as i64, w);
        let c_param = &(&nf + &one) + &half;
        let f1 = hyp2f1(&HypergeometricParams::new(
            a.clone(),
            b.clone(),
            c_param.clone(),
            v1.clone(),
        ))?;
        let f2 = hyp2f1(&HypergeometricParams::new(
            a.clone(),
            b.clone(),
            c_param,
            v2.clone(),
        ))?;
        let sign = if n % 2 == 0 { 1i64 } else { -1 };
        let term1 =
            &(&(&c1.with_prec(w) * &Real::from_i64(sign, w)) * &(&c_n * &l1_pow)) * &f1.value;
        let term2 = &(&c2.with_prec(w) * &(&c_n * &l2_pow)) * &f2.value;
        y.push((&term1 + &term2).with_prec(prec));
        // C_{n+1}/C_n = (n + gamma/2)(n + 2 - gamma/2) / ((n + 3/2)(n + 1 - gamma/2))
        let num = &(&nf + &half_gamma) * &(&(&nf + &Real::from_i64(2, w)) - &half_gamma);
        let den = &(&(&nf + &one) + &half) * &(&(&nf + &one) - &half_gamma);
        c_n = &c_n * &(&num / &den);
        l1_pow = &l1_pow * &l1;
        l2_pow = &l2_pow * &l2;
    }
    Ok(LinearSolution {
        c1: c1.clone(),
        c2: c2.clone(),
        y,
        params: params.clone(),
    })
}

impl LinearSolution {
    /// Residual of the three-term recursion at index `n`, relative to the
    /// largest of the three values involved.
    pub fn residual(&self, n: usize) -> Result<Real, RiccatiError> {
        let prec = self.params.prec();
        let t = &self.params.t;
        let g0 = g_coeff(n, &self.params.gamma)?;
        let g1 = g_coeff(n + 1, &self.params.gamma)?;
        let one = Real::from_i64(1, prec);
        let y0 = &self.y[n];
        let y1 = &self.y[n + 1];
        let y2 = &self.y[n + 2];
        let lhs = &(y2 + &(&(t * &(&g1 + &one)) * y1)) + &(&(&(&(t * t) - &one) * &g0) * y0);
        let scale = y0.abs().max(y1.abs()).max(y2.abs());
        Ok(&lhs.abs() / &scale)
    }

    /// `p_n = y_{n+1}/y_n + t g_n` (defined where `y_n` is nonzero).
    pub fn ansatz_ratio(&self, n: usize) -> Result<Real, RiccatiError> {
        let g = g_coeff(n, &self.params.gamma)?;
        Ok(&(&self.y[n + 1] / &self.y[n]) + &(&self.params.t * &g))
    }
}

/// Smallest `n` with `p_n <= 0` when iterating from `p0_closed + delta`;
/// `n_max + 1` when positivity survives the whole range. A pole crossing
/// counts as leaving the positive regime at its index.
pub fn positivity_horizon(
    delta: &Real,
    params: &RiccatiParams,
    n_max: usize,
) -> Result<usize, RiccatiError> {
    let p0 = &p0_closed(params) + delta;
    let traj = riccati_iterate(&p0, params, n_max)?;
    if let Some(n) = traj.first_nonpositive {
        return Ok(n);
    }
    if let Some(n) = traj.pole_at {
        return Ok(n);
    }
    Ok(n_max + 1)
}
