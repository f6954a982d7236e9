//! The `(P, Q)` dynamical system for interior circle radii, its invariant
//! domain, separatrix shooting by nested bisection, and the unitary
//! discrete-Painleve step.
//!
//! For a positive radius field, `P = R_{z+1}/R_{z-i}` and `Q = R_z/R_{z-i}`
//! evolve in `M` along a fixed column `N`. The embedded-pattern trajectory
//! is the one that never leaves `D0 = { P > 0, 0 <= Q <= F(P) }`; every
//! other seed exits through `Q > F(P)` or `Q < 0` after finitely many
//! steps, which is what the shooting routine exploits.

use alloc::vec::Vec;

use crate::complex::Complex;
use crate::real::Real;
use crate::riccati::{g_coeff, RiccatiError, RiccatiParams};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PainleveError {
    #[error("singular step: {0} denominator below threshold")]
    StepSingular(&'static str),
    #[error("no surviving sub-interval at M = {0}; raise mantissa_bits")]
    BracketLost(i64),
    #[error(transparent)]
    Riccati(#[from] RiccatiError),
}

/// Column parameters for the `(P, Q)` system.
#[derive(Debug, Clone)]
pub struct PainleveParams {
    pub base: RiccatiParams,
    /// Column index `N >= 0`.
    pub n_col: i64,
}

/// One state of the dynamical system.
#[derive(Debug, Clone)]
pub struct PQState {
    pub p: Real,
    pub q: Real,
    pub m: i64,
}

/// `S = Q^2 - P + Q (1 - P) cos(alpha)`.
pub fn s_aux(p: &Real, q: &Real, t: &Real) -> Real {
    &(&(q * q) - p) + &(&(q * &(&Real::from_i64(1, p.prec().max(q.prec())) - p)) * t)
}

/// Boundary curve of the invariant domain: the nonnegative root of
/// `F^2 - P + F (1 - P) cos(alpha) = 0` for `0 <= P <= 1`, and `1` beyond.
pub fn f_boundary(p: &Real, t: &Real) -> Real {
    let prec = p.prec().max(t.prec());
    let one = Real::from_i64(1, prec);
    if *p >= one {
        return one;
    }
    let b = &(&one - p) * t;
    let disc = &(&b * &b) + &p.scale2(2);
    (&disc.sqrt() - &b).scale2(-1)
}

/// Domain classification of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `P > 0, 0 <= Q <= F(P)`
    D0,
    /// `P > 0, Q > F(P)`
    Up,
    /// `Q < 0`
    Down,
    /// `P <= 0, Q >= 0`
    Forbidden,
}

pub fn classify(p: &Real, q: &Real, t: &Real) -> Domain {
    if q.is_negative() {
        return Domain::Down;
    }
    if !p.is_positive() {
        return Domain::Forbidden;
    }
    if *q <= f_boundary(p, t) {
        Domain::D0
    } else {
        Domain::Up
    }
}

pub fn in_d0(p: &Real, q: &Real, t: &Real) -> bool {
    classify(p, q, t) == Domain::D0
}

/// One step `M -> M+1` of the radius-ratio system at column `N`.
pub fn painleve_step(state: &PQState, params: &PainleveParams) -> Result<PQState, PainleveError> {
    let prec = params.base.prec().max(state.p.prec()).max(state.q.prec());
    let t = &params.base.t;
    let gamma = &params.base.gamma;
    let one = Real::from_i64(1, prec);
    let nf = Real::from_i64(params.n_col, prec);
    let mf = Real::from_i64(state.m, prec);
    let p = &state.p;
    let q = &state.q;
    let s = s_aux(p, q, t);
    let num = &(&(&(&nf - &mf) * q) * &(&one + p)) * &(q - &(p * t));
    let num = &num - &(&(&(&mf + &nf) * p) * &s);
    let den_inner = &(&(&mf + &nf) * &s) - &(&(&(&mf - &nf) * &(&one + p)) * &(p - &(q * t)));
    let den = q * &den_inner;
    let scale = (p.abs().max(q.abs()).max(one.clone())) * (&mf + &one).abs();
    let floor = &(&scale * &scale) * &Real::exp2(8 - prec as i64, prec);
    if den.abs() <= floor {
        return Err(PainleveError::StepSingular("Q-update"));
    }
    let q_next = &num / &den;
    let two_m_g = &mf.scale2(1) + gamma;
    let two_n_g = &nf.scale2(1) + gamma;
    let den2_a = &(&nf + &one).scale2(1) - gamma;
    let den2_b = &(&mf + &one).scale2(1) - gamma;
    let qq = &(q * &q_next);
    let p_den = &(&den2_a * p) + &(&den2_b * qq);
    if p_den.abs() <= floor {
        return Err(PainleveError::StepSingular("P-update"));
    }
    let p_next = &(&(&two_m_g * p) + &(&two_n_g * qq)) / &p_den;
    Ok(PQState {
        p: p_next,
        q: q_next,
        m: state.m + 1,
    })
}

/// Seed value `P_{N, N+1} = r_{N+1}/r_N = (2N + gamma)/(2(N+1) - gamma)`,
/// the first state off the diagonal of column `N`.
pub fn initial_p(params: &PainleveParams) -> Result<Real, PainleveError> {
    Ok(g_coeff(params.n_col as usize, &params.base.gamma)?)
}

/// Result of a separatrix shooting run.
///
/// Both endpoints are seeds whose trajectories stay in `D0` through
/// `m_reached`; the true surviving segment may extend past them by up to
/// one scan cell, so callers comparing against an external seed should
/// allow that much slack on top of the bracket width.
#[derive(Debug, Clone)]
pub struct ShootingResult {
    pub q_lo: Real,
    pub q_hi: Real,
    pub m_reached: i64,
    pub iterations: usize,
    /// Whether the bracket width reached the requested tolerance.
    pub achieved_tol: bool,
    /// True when the run was carried out on the reciprocal (dual) system
    /// because `gamma > 1`, and the bracket mapped back.
    pub dual_solved: bool,
}

/// Options for [`separatrix_bisect`].
#[derive(Debug, Clone, Copy)]
pub struct ShootingOptions {
    /// Number of seed points scanned per refinement pass.
    pub seed_grid: usize,
    /// Cap on refinement passes.
    pub max_passes: usize,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        ShootingOptions {
            seed_grid: 64,
            max_passes: 200,
        }
    }
}

fn survives(q0: &Real, p0: &Real, params: &PainleveParams, m_end: i64) -> bool {
    let t = &params.base.t;
    if !in_d0(p0, q0, t) {
        return false;
    }
    let mut st = PQState {
        p: p0.clone(),
        q: q0.clone(),
        m: params.n_col + 1,
    };
    while st.m < m_end {
        st = match painleve_step(&st, params) {
            Ok(s) => s,
            Err(_) => return false,
        };
        if !in_d0(&st.p, &st.q, t) {
            return false;
        }
    }
    true
}

/// Nested bisection for the seed `q_N` whose trajectory stays in `D0`
/// through `M <= m_max`.
///
/// The surviving seed set at depth `M` may be a union of segments; a
/// uniform grid is scanned and the widest surviving run is refined, with
/// one failing neighbor kept on each side so the nested segment cannot be
/// dropped. For `gamma > 1` the domain `D0` encodes the wrong sign of the
/// embeddedness condition, so the dual system (`gamma -> 2 - gamma`,
/// radii reciprocated, `(P,Q) -> (1/P, 1/Q)`) is shot instead and the
/// bracket inverted back.
pub fn separatrix_bisect(
    params: &PainleveParams,
    m_max: i64,
    q_tol: &Real,
    opts: ShootingOptions,
) -> Result<ShootingResult, PainleveError> {
    let prec = params.base.prec();
    let one = Real::from_i64(1, prec);
    if params.base.gamma > one {
        let dual_gamma = &Real::from_i64(2, prec) - &params.base.gamma;
        let dual = PainleveParams {
            base: RiccatiParams::new(dual_gamma, params.base.alpha.clone())?,
            n_col: params.n_col,
        };
        // A bracket of width w around q maps to width ~ w/q^2 around 1/q;
        // shrink the dual tolerance accordingly (q_N < 1 on the dual side
        // would loosen it, so take the safe minimum).
        let capped = if *q_tol < one {
            q_tol.clone()
        } else {
            one.clone()
        };
        let dual_tol = q_tol * &capped;
        let r = separatrix_bisect(&dual, m_max, &dual_tol, opts)?;
        return Ok(ShootingResult {
            q_lo: &one / &r.q_hi,
            q_hi: &one / &r.q_lo,
            m_reached: r.m_reached,
            iterations: r.iterations,
            achieved_tol: r.achieved_tol,
            dual_solved: true,
        });
    }
    let p_start = initial_p(params)?;
    let f_max = f_boundary(&p_start, &params.base.t);
    let mut lo = Real::zero(prec);
    let mut hi = f_max;
    let mut iterations = 0usize;
    let grid = opts.seed_grid.max(8);
    let mut m_reached = params.n_col + 1;
    // Progressive deepening keeps the surviving run wide enough to be seen
    // on the grid at every stage.
    let mut m_end = params.n_col + 2;
    while m_end <= m_max {
        let mut pass_grid = grid;
        loop {
            iterations += 1;
            if iterations > opts.max_passes {
                return Ok(ShootingResult {
                    q_lo: lo,
                    q_hi: hi,
                    m_reached,
                    iterations,
                    achieved_tol: false,
                    dual_solved: false,
                });
            }
            let qs = linspace(&lo, &hi, pass_grid);
            let alive: Vec<bool> = qs
                .iter()
                .map(|q| survives(q, &p_start, params, m_end))
                .collect();
            if let Some((i, j)) = widest_run(&alive) {
                let new_lo = if i > 0 {
                    qs[i - 1].clone()
                } else {
                    qs[0].clone()
                };
                let new_hi = if j + 1 < qs.len() {
                    qs[j + 1].clone()
                } else {
                    qs[j].clone()
                };
                lo = new_lo;
                hi = new_hi;
                m_reached = m_end;
                break;
            }
            // No survivor visible: refine the scan before giving up.
            if pass_grid >= 1 << 16 {
                return Err(PainleveError::BracketLost(m_end));
            }
            pass_grid *= 4;
        }
        m_end += 1;
    }
    // Final sharpening at full depth until the surviving bracket is tight.
    loop {
        let width = &hi - &lo;
        if width <= *q_tol || iterations > opts.max_passes {
            break;
        }
        iterations += 1;
        let qs = linspace(&lo, &hi, grid);
        let alive: Vec<bool> = qs
            .iter()
            .map(|q| survives(q, &p_start, params, m_max))
            .collect();
        match widest_run(&alive) {
            Some((i, j)) => {
                let new_lo = if i > 0 {
                    qs[i - 1].clone()
                } else {
                    qs[0].clone()
                };
                let new_hi = if j + 1 < qs.len() {
                    qs[j + 1].clone()
                } else {
                    qs[j].clone()
                };
                if &new_hi - &new_lo >= &hi - &lo {
                    break; // no further progress at this precision
                }
                lo = new_lo;
                hi = new_hi;
            }
            None => return Err(PainleveError::BracketLost(m_max)),
        }
    }
    // Report the surviving run itself: both returned endpoints stay in D0.
    let qs = linspace(&lo, &hi, grid);
    let alive: Vec<bool> = qs
        .iter()
        .map(|q| survives(q, &p_start, params, m_max))
        .collect();
    let (i, j) = widest_run(&alive).ok_or(PainleveError::BracketLost(m_max))?;
    let q_lo = qs[i].clone();
    let q_hi = qs[j].clone();
    let achieved = &q_hi - &q_lo <= *q_tol;
    Ok(ShootingResult {
        q_lo,
        q_hi,
        m_reached: m_max,
        iterations,
        achieved_tol: achieved,
        dual_solved: false,
    })
}

fn linspace(lo: &Real, hi: &Real, n: usize) -> Vec<Real> {
    let prec = lo.prec().max(hi.prec());
    let span = hi - lo;
    (0..n)
        .map(|i| {
            let step =
                &(&span * &Real::from_i64(i as i64, prec)) / &Real::from_i64(n as i64 - 1, prec);
            lo + &step
        })
        .collect()
}

fn widest_run(alive: &[bool]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for (idx, &a) in alive.iter().enumerate() {
        if a && start.is_none() {
            start = Some(idx);
        }
        if (!a || idx + 1 == alive.len()) && start.is_some() {
            let s = start.take().unwrap();
            let e = if a { idx } else { idx - 1 };
            if best.is_none_or(|(bs, be)| e - s > be - bs) {
                best = Some((s, e));
            }
        }
    }
    best
}

/// One step of the unitary discrete-Painleve recursion on the circle
/// `|x| = 1`, with `epsilon = e^{i alpha}`:
///
/// `(n+1)(x_n^2 - 1) (x_{n+1} + x_n/eps)/(eps + x_n x_{n+1}) -
/// n (1 - x_n^2/eps^2) (x_{n-1} + eps x_n)/(eps + x_{n-1} x_n) =
/// gamma x_n (eps^2 - 1)/(2 eps^2)`
///
/// solved for `x_{n+1}` and projected back to the unit circle; the
/// pre-projection deviation `| |x| - 1 |` is returned alongside.
pub fn dpii_step(
    x_prev: Option<&Complex>,
    x_cur: &Complex,
    n: usize,
    gamma: &Real,
    alpha: &Real,
) -> Result<(Complex, Real), PainleveError> {
    let prec = gamma.prec().max(alpha.prec()).max(x_cur.prec());
    let one = Complex::one(prec);
    let eps = Complex::cis(alpha);
    let eps2 = &eps * &eps;
    let x2 = x_cur * x_cur;
    let gamma_c = Complex::from_real(gamma.clone());
    let half = Complex::from_real(Real::exp2(-1, prec));
    let mut k = &(&(&gamma_c * x_cur) * &(&eps2 - &one)) * &(&half / &eps2);
    if n > 0 {
        let xp = x_prev.expect("x_prev required for n >= 1");
        let den = &eps + &(xp * x_cur);
        if den.abs() < Real::exp2(8 - prec as i64, prec) {
            return Err(PainleveError::StepSingular("previous-term"));
        }
        let nf = Complex::from_real(Real::from_i64(n as i64, prec));
        let frac = &(xp + &(&eps * x_cur)) / &den;
        k = &k + &(&(&nf * &(&one - &(&x2 / &eps2))) * &frac);
    }
    let a = Complex::from_real(Real::from_i64(n as i64 + 1, prec)) * (&x2 - &one);
    let den = &a - &(&k * x_cur);
    let scale = a.abs().max(k.abs()).max(Real::from_i64(1, prec));
    if den.abs() <= &scale * &Real::exp2(8 - prec as i64, prec) {
        return Err(PainleveError::StepSingular("next-term"));
    }
    let num = &(&k * &eps) - &(&(&a * x_cur) / &eps);
    let raw = &num / &den;
    let modulus = raw.abs();
    let drift = (&modulus - &Real::from_i64(1, prec)).abs();
    let projected = Complex::new(&raw.re / &modulus, &raw.im / &modulus);
    Ok((projected, drift))
}

/// Forward dPII orbit from `x_0 = e^{i gamma alpha / 2}`.
pub struct DpiiTrajectory {
    pub x: Vec<Complex>,
    /// Pre-projection unitarity deviation at each produced step.
    pub drift: Vec<Real>,
}

pub fn dpii_trajectory(
    gamma: &Real,
    alpha: &Real,
    n_max: usize,
) -> Result<DpiiTrajectory, PainleveError> {
    let x0 = Complex::cis(&(gamma * alpha).scale2(-1));
    let mut xs = alloc::vec![x0];
    let mut drift = Vec::new();
    let mut prev: Option<Complex> = None;
    for n in 0..n_max {
        let (next, d) = dpii_step(prev.as_ref(), &xs[n], n, gamma, alpha)?;
        drift.push(d);
        prev = Some(xs[n].clone());
        xs.push(next);
    }
    Ok(DpiiTrajectory { x: xs, drift })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::pi;
    use crate::real::PrecisionContext;
    use crate::riccati::p0_closed;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::new(bits).unwrap()
    }

    fn pq_params(gamma: f64, alpha_frac_pi: f64, n_col: i64, bits: u32) -> PainleveParams {
        let c = ctx(bits);
        let alpha = &pi(bits) * &c.from_f64(alpha_frac_pi);
        PainleveParams {
            base: RiccatiParams::new(c.from_f64(gamma), alpha).unwrap(),
            n_col,
        }
    }

    #[test]
    fn f_boundary_values() {
        let c = ctx(106);
        // F(1) = 1 and F stays 1 beyond
        let t = crate::functions::cos(&(&pi(106) / &c.from_i64(3)));
        assert_eq!(f_boundary(&c.one(), &t), c.one());
        assert_eq!(f_boundary(&c.from_f64(1.7), &t), c.one());
        // F(0) at alpha = pi/3 (t = 1/2): root of F^2 + F/2 = 0 -> 0
        assert!(f_boundary(&c.zero(), &t).is_zero());
        // F(0) at alpha = 2pi/3 (t = -1/2): (1/2 + 1/2)/2 = 1/2
        let t = c.from_f64(-0.5);
        assert_eq!(f_boundary(&c.zero(), &t), c.from_f64(0.5));
    }

    #[test]
    fn domain_classification() {
        let c = ctx(106);
        let t = c.zero(); // alpha = pi/2
        assert_eq!(classify(&c.one(), &c.from_f64(0.5), &t), Domain::D0);
        assert_eq!(classify(&c.one(), &c.from_f64(-0.1), &t), Domain::Down);
        assert_eq!(
            classify(&c.from_f64(-0.5), &c.from_f64(0.2), &t),
            Domain::Forbidden
        );
        assert_eq!(
            classify(&c.from_f64(0.25), &c.from_f64(0.9), &t),
            Domain::Up
        );
    }

    #[test]
    fn gamma_one_fixed_point() {
        // R == const gives P = Q = 1; the step must keep it for gamma = 1.
        for (af, n_col, m) in [(0.3, 1i64, 4i64), (0.5, 0, 2), (0.66, 3, 7)] {
            let params = pq_params(1.0, af, n_col, 106);
            let c = ctx(106);
            let st = PQState {
                p: c.one(),
                q: c.one(),
                m,
            };
            let next = painleve_step(&st, &params).unwrap();
            assert!((&next.p - &c.one()).abs().to_f64() < 1e-28, "af={}", af);
            assert!((&next.q - &c.one()).abs().to_f64() < 1e-28);
        }
    }

    #[test]
    fn no_jump_into_forbidden() {
        // From 10^4 sampled D0 states the image never lies in the
        // forbidden quadrant {P <= 0, Q >= 0}.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let c = ctx(106);
        let mut tested = 0;
        while tested < 10_000 {
            let gamma = 0.1 + 1.8 * rnd();
            let af = 0.1 + 0.8 * rnd();
            let n_col = (rnd() * 6.0) as i64;
            let m = n_col + 1 + (rnd() * 5.0) as i64;
            let params = pq_params(gamma, af, n_col, 106);
            let p = c.from_f64(rnd() * 2.0);
            if !p.is_positive() {
                continue;
            }
            let fb = f_boundary(&p, &params.base.t);
            let q = &fb * &c.from_f64(rnd());
            if !in_d0(&p, &q, &params.base.t) {
                continue;
            }
            let st = PQState { p, q, m };
            if let Ok(next) = painleve_step(&st, &params) {
                let dom = classify(&next.p, &next.q, &params.base.t);
                assert_ne!(dom, Domain::Forbidden, "jumped D0 -> Df");
                tested += 1;
            }
        }
    }

    #[test]
    fn boundary_mapping_directions() {
        // Just inside the top boundary steps out through Up; just above the
        // bottom edge steps out through Down (margin 1e-8 off each).
        let mut state = 0x2545f4914f6cdd1du64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let c = ctx(106);
        let mut top_exits = 0usize;
        let mut bottom_exits = 0usize;
        let mut tested = 0usize;
        while tested < 300 {
            let gamma = 0.2 + 0.7 * rnd(); // gamma < 1 regime
            let af = 0.15 + 0.7 * rnd();
            let n_col = (rnd() * 4.0) as i64;
            let m = n_col + 1 + (rnd() * 4.0) as i64;
            let params = pq_params(gamma, af, n_col, 106);
            let p = c.from_f64(0.05 + 0.9 * rnd()); // P in (0, 1)
            let fb = f_boundary(&p, &params.base.t);
            let margin = c.from_f64(1e-8);
            let q_top = &fb - &margin;
            let q_bot = margin.clone();
            if !in_d0(&p, &q_top, &params.base.t) {
                continue;
            }
            tested += 1;
            if let Ok(next) = painleve_step(
                &PQState {
                    p: p.clone(),
                    q: q_top,
                    m,
                },
                &params,
            ) {
                if classify(&next.p, &next.q, &params.base.t) == Domain::Up {
                    top_exits += 1;
                }
            }
            if let Ok(next) = painleve_step(&PQState { p, q: q_bot, m }, &params) {
                if classify(&next.p, &next.q, &params.base.t) == Domain::Down {
                    bottom_exits += 1;
                }
            }
        }
        // within the numerical margin nearly every boundary state exits on
        // the predicted side
        assert!(top_exits * 10 >= tested * 9, "{}/{}", top_exits, tested);
        assert!(
            bottom_exits * 10 >= tested * 9,
            "{}/{}",
            bottom_exits,
            tested
        );
    }

    #[test]
    fn shooting_brackets_closed_form_seed() {
        // N = 0: the surviving seed is R_i = p0_closed.
        let params = pq_params(0.5, 0.5, 0, 212);
        let c = ctx(212);
        let oracle = p0_closed(&params.base);
        let r =
            separatrix_bisect(&params, 30, &c.from_f64(1e-8), ShootingOptions::default()).unwrap();
        assert!(r.achieved_tol);
        for endpoint in [&r.q_lo, &r.q_hi] {
            assert!(
                (endpoint - &oracle).abs().to_f64() < 1e-8,
                "bracket [{}, {}] is not within 1e-8 of {}",
                r.q_lo.to_f64(),
                r.q_hi.to_f64(),
                oracle.to_f64()
            );
        }
        assert!((&r.q_hi - &r.q_lo).to_f64() < 1e-8);
    }

    #[test]
    fn shooting_bracket_width_nonincreasing() {
        let params = pq_params(0.5, 0.5, 0, 212);
        let c = ctx(212);
        let mut prev_width = f64::INFINITY;
        for m_max in [6i64, 10, 14] {
            let r = separatrix_bisect(
                &params,
                m_max,
                &c.from_f64(1e-30),
                ShootingOptions::default(),
            )
            .unwrap();
            let w = (&r.q_hi - &r.q_lo).to_f64();
            assert!(
                w <= prev_width * 1.0001,
                "width grew: {} -> {}",
                prev_width,
                w
            );
            prev_width = w;
        }
    }

    #[test]
    fn shooting_gamma_one_contains_unity() {
        for (af, n_col) in [(0.25, 0i64), (0.5, 1), (2.0 / 3.0, 3)] {
            let params = pq_params(1.0, af, n_col, 212);
            let c = ctx(212);
            let r = separatrix_bisect(&params, 18, &c.from_f64(1e-6), ShootingOptions::default())
                .unwrap();
            for endpoint in [&r.q_lo, &r.q_hi] {
                assert!(
                    (endpoint - &c.one()).abs().to_f64() < 1e-6,
                    "af={} N={}: [{}, {}]",
                    af,
                    n_col,
                    r.q_lo.to_f64(),
                    r.q_hi.to_f64()
                );
            }
        }
    }

    #[test]
    fn shooting_dual_route_for_large_gamma() {
        let params = pq_params(1.5, 0.5, 0, 212);
        let c = ctx(212);
        let oracle = p0_closed(&params.base); // > 1 for gamma > 1
        let r =
            separatrix_bisect(&params, 24, &c.from_f64(1e-6), ShootingOptions::default()).unwrap();
        assert!(r.dual_solved);
        for endpoint in [&r.q_lo, &r.q_hi] {
            assert!((endpoint - &oracle).abs().to_f64() < 1e-6);
        }
    }

    #[test]
    fn dpii_sector_confinement() {
        // gamma = 1, alpha = pi/2, x0 = e^{i pi/4}: the orbit stays in the
        // open sector (0, alpha) at 212 bits for 50 steps.
        let c = ctx(212);
        let alpha = pi(212).scale2(-1);
        let traj = dpii_trajectory(&c.one(), &alpha, 50).unwrap();
        for (n, x) in traj.x.iter().enumerate() {
            let a = x.arg();
            assert!(
                a.is_positive() && a < alpha,
                "n={}: arg = {}",
                n,
                a.to_f64()
            );
        }
        for d in &traj.drift {
            assert!(d.to_f64() < 1e-15);
        }
    }

    #[test]
    fn dpii_seed_is_half_gamma_alpha() {
        let c = ctx(106);
        let alpha = &pi(106) / &c.from_i64(3);
        let traj = dpii_trajectory(&c.from_f64(0.8), &alpha, 1).unwrap();
        let want = (&c.from_f64(0.8) * &alpha).scale2(-1);
        assert!((&traj.x[0].arg() - &want).abs().to_f64() < 1e-30);
    }
}
