//! Independent geometric validation of generated patterns: kite shape and
//! quadrilateral classification, orientation uniformity, circle
//! intersection angles and tangency, embeddedness by brute force, and the
//! radius-field sign condition.
//!
//! The brute-force embeddedness test evaluates orientation predicates
//! exactly (map coordinates are binary rationals, so signs of the 2x2
//! difference determinants are computed in integer arithmetic with no
//! rounding at all).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::complex::Complex;
use crate::functions::atan2;
use crate::lattice::SublatticeIndex;
use crate::pattern::{AdjacencyKind, CirclePattern, GridMap, OriginKind, RadiusField};
use crate::real::Real;

/// Where a residual or failure was observed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Vertex { n: u32, m: u32 },
    Sublattice { n: i64, m: i64 },
    QuadPair { a: (u32, u32), b: (u32, u32) },
}

/// Outcome of one validation pass. A failed check always carries a
/// location.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub name: &'static str,
    pub passed: bool,
    pub worst_residual: f64,
    pub worst_location: Option<Location>,
    /// Named tallies (kite case counts, orientation signs, pair counts).
    pub counts: Vec<(String, usize)>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    fn new(name: &'static str) -> Self {
        ValidationReport {
            name,
            passed: true,
            worst_residual: 0.0,
            worst_location: None,
            counts: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// A report that failed before the check could run (for callers that
    /// need to surface setup errors uniformly).
    pub fn failed_stub(name: &'static str, note: String) -> Self {
        let mut r = ValidationReport::new(name);
        r.passed = false;
        r.notes.push(note);
        r
    }

    fn fail(&mut self, loc: Location, note: String) {
        self.passed = false;
        if self.worst_location.is_none() {
            self.worst_location = Some(loc);
        }
        self.notes.push(note);
    }

    fn track(&mut self, residual: f64, loc: Location) {
        if residual > self.worst_residual {
            self.worst_residual = residual;
            self.worst_location = Some(loc);
        }
    }

    fn bump(&mut self, key: &str) {
        if let Some(e) = self.counts.iter_mut().find(|(k, _)| k == key) {
            e.1 += 1;
        } else {
            self.counts.push((String::from(key), 1));
        }
    }
}

/// Kite check: the incident edges at every even vertex agree to `tol`
/// relative spread, and every complete quadrilateral matches one of the
/// four kite configurations (edge-equal at an even corner, or angle
/// `alpha` / `pi - alpha` at an odd corner, by orientation).
pub fn check_kites(map: &GridMap, tol: f64) -> ValidationReport {
    let mut rep = ValidationReport::new("kites");
    let size = map.config.size as u32;
    for m in 0..=size {
        for n in 0..=size - m {
            if (n + m) % 2 != 0 {
                continue;
            }
            if let Some(spread) = crate::pattern::vertex_edge_spread(map, n, m) {
                rep.track(spread, Location::Vertex { n, m });
                if spread > tol {
                    rep.fail(
                        Location::Vertex { n, m },
                        format!("edge spread {spread:.3e} at ({n},{m})"),
                    );
                }
            }
        }
    }
    // classification
    let atol = Real::from_f64(tol.max(0.0), 64).sqrt().to_f64().max(1e-12);
    for (n, m) in map.quad_bases() {
        match classify_quad(map, n, m, atol) {
            Some(case) => rep.bump(case),
            None => {
                rep.bump("unclassified");
                rep.fail(
                    Location::Vertex { n, m },
                    format!("unclassified quad at ({n},{m})"),
                );
            }
        }
    }
    rep
}

fn classify_quad(map: &GridMap, n: u32, m: u32, atol: f64) -> Option<&'static str> {
    let [f1, f2, f3, f4] = map.quad(n, m)?;
    let e12 = (f2 - f1).abs();
    let e14 = (f4 - f1).abs();
    let e32 = (f2 - f3).abs();
    let e34 = (f4 - f3).abs();
    if !e12.is_positive() || !e14.is_positive() {
        return Some("degenerate-origin"); // z2 corner cluster
    }
    let scale = e12.clone().max(e14.clone());
    let orient = (&(f4 - f1) / &(f2 - f1)).im;
    let positive = orient.is_positive();
    let alpha = map.config.alpha.to_f64();
    if (n + m).is_multiple_of(2) {
        // even corner at f1: adjacent edges equal there and at f3
        let d1 = (&(&e12 - &e14) / &scale).to_f64().abs();
        let d3 = (&(&e32 - &e34) / &scale).to_f64().abs();
        if d1 < atol && d3 < atol {
            return Some(if positive {
                "even-positive"
            } else {
                "even-negative"
            });
        }
        None
    } else {
        // odd corner at f1: the corner angle is alpha (positive
        // orientation) or pi - alpha (negative), with cross-equal edges
        let ang = (&(f4 - f1) / &(f2 - f1)).arg().to_f64().abs();
        let d32 = (&(&e32 - &e12) / &scale).to_f64().abs();
        let d34 = (&(&e34 - &e14) / &scale).to_f64().abs();
        if d32 >= atol || d34 >= atol {
            return None;
        }
        if (ang - alpha).abs() < atol && positive {
            return Some("odd-alpha");
        }
        if (ang - (core::f64::consts::PI - alpha)).abs() < atol && !positive {
            return Some("odd-pi-minus-alpha");
        }
        // the reflex corner of a sector wider than pi shows up here with
        // swapped orientation
        if (ang - alpha).abs() < atol || (ang - (core::f64::consts::PI - alpha)).abs() < atol {
            return Some("odd-reflex");
        }
        None
    }
}

/// Orientation uniformity: the sign of
/// `Im[(f_{n,m+1} - f_{n,m}) / (f_{n+1,m} - f_{n,m})]` over all complete
/// quadrilaterals. Signs within `eps * scale` of zero are flagged
/// separately, not failed. When the image sector opens wider than `pi`
/// the corner quadrilateral has a reflex vertex at the origin and its
/// diagonal triangle legitimately flips; it is judged by the quadrilateral
/// signed area instead and reported under `reflex-corner`.
pub fn check_orientation(map: &GridMap) -> ValidationReport {
    let mut rep = ValidationReport::new("orientation");
    let prec = map.config.prec;
    let eps_band = Real::exp2(8 - prec as i64, prec);
    let mut signs: Vec<(u32, u32, i8)> = Vec::new();
    let mut degenerate = 0usize;
    for (n, m) in map.quad_bases() {
        let f = map.at(n, m);
        let fe = map.at(n + 1, m);
        let fn_ = map.at(n, m + 1);
        let num = fn_ - f;
        let den = fe - f;
        if den.is_zero() || num.is_zero() {
            // coincident corners (the renormalized z^2 origin cluster)
            degenerate += 1;
            continue;
        }
        let ratio = &num / &den;
        let s = if ratio.im.abs() <= &eps_band * &ratio.abs().max(Real::from_i64(1, prec)) {
            0
        } else {
            ratio.im.signum()
        };
        signs.push((n, m, s));
    }
    if degenerate > 0 {
        rep.counts
            .push((String::from("degenerate-skipped"), degenerate));
    }
    // consensus from non-corner quads
    let mut pos = 0usize;
    let mut neg = 0usize;
    for &(n, m, s) in &signs {
        if (n, m) == (0, 0) {
            continue;
        }
        match s {
            1 => pos += 1,
            -1 => neg += 1,
            _ => {}
        }
    }
    let consensus: i8 = if pos >= neg { 1 } else { -1 };
    rep.counts.push((String::from("positive"), pos));
    rep.counts.push((String::from("negative"), neg));
    let gamma_alpha = (&map.config.gamma * &map.config.alpha).to_f64();
    for &(n, m, s) in &signs {
        if s == 0 {
            rep.bump("zero-flagged");
            continue;
        }
        if s != consensus {
            if (n, m) == (0, 0) && gamma_alpha >= core::f64::consts::PI {
                // reflex sector corner: fall back to the quad signed area
                if let Some(corners) = map.quad(0, 0) {
                    if quad_area_sign(&corners) == consensus {
                        rep.bump("reflex-corner");
                        continue;
                    }
                }
            }
            rep.fail(
                Location::Vertex { n, m },
                format!("orientation flip at quad ({n},{m})"),
            );
        }
    }
    rep
}

fn quad_area_sign(c: &[&Complex; 4]) -> i8 {
    // shoelace over the four corners
    let prec = c[0].prec();
    let mut acc = Real::zero(prec);
    for i in 0..4 {
        let a = c[i];
        let b = c[(i + 1) % 4];
        acc = &acc + &(&(&a.re * &b.im) - &(&b.re * &a.im));
    }
    acc.signum()
}

/// Circle-pair validation: neighbor circles intersect at `alpha`
/// (vertical pairs) or `pi - alpha` (horizontal pairs), diagonal
/// half-neighbors are tangent, all within `tol`.
pub fn check_angles(pattern: &CirclePattern, tol: f64) -> ValidationReport {
    let mut rep = ValidationReport::new("angles");
    let prec = pattern.alpha.prec();
    let alpha = pattern.alpha.to_f64();
    for (i, j, kind) in pattern.adjacencies() {
        let a = &pattern.circles[i];
        let b = &pattern.circles[j];
        let d = (&a.center - &b.center).abs();
        let loc = Location::Sublattice {
            n: a.z.re,
            m: a.z.im,
        };
        match kind {
            AdjacencyKind::Diagonal => {
                let sum = &a.radius + &b.radius;
                let res = ((&d - &sum).abs() / &sum).to_f64();
                rep.track(res, loc);
                rep.bump("tangent-pairs");
                if res > tol {
                    rep.fail(loc, format!("tangency off by {res:.3e}"));
                }
            }
            AdjacencyKind::Vertical | AdjacencyKind::Horizontal => {
                let theta = intersection_angle(&d, &a.radius, &b.radius, prec);
                let want = if kind == AdjacencyKind::Vertical {
                    alpha
                } else {
                    core::f64::consts::PI - alpha
                };
                let res = (theta.to_f64() - want).abs();
                rep.track(res, loc);
                rep.bump(if kind == AdjacencyKind::Vertical {
                    "alpha-pairs"
                } else {
                    "pi-minus-alpha-pairs"
                });
                if res > tol {
                    rep.fail(loc, format!("intersection angle off by {res:.3e}"));
                }
            }
        }
    }
    rep
}

/// Lens-corner intersection angle of two circles:
/// `cos(theta) = (d^2 - R1^2 - R2^2) / (2 R1 R2)`, the convention fixed by
/// the regular rhombic pattern where vertical neighbors must give exactly
/// `alpha`.
pub fn intersection_angle(d: &Real, r1: &Real, r2: &Real, prec: u32) -> Real {
    let num = &(&(d * d) - &(r1 * r1)) - &(r2 * r2);
    let den = (r1 * r2).scale2(1);
    let x = &num / &den;
    let one = Real::from_i64(1, prec);
    // clamp against tangency-adjacent rounding
    let x = x.min(one.clone()).max(-&one);
    // acos via atan2(sqrt(1-x^2), x)
    let s = (&(&one - &x) * &(&one + &x)).sqrt();
    atan2(&s, &x)
}

/// Pairwise open-interior intersection test over all quadrilaterals with
/// corner indices summing to at most `n_cap`. Shared vertices and edges
/// are allowed; proper edge crossings and strict containment are not.
type QuadRecord = ((u32, u32), [Complex; 4], [f64; 4]);

pub fn check_embedded_bruteforce(map: &GridMap, n_cap: u32) -> ValidationReport {
    let mut rep = ValidationReport::new("embedded");
    let mut quads: Vec<QuadRecord> = Vec::new();
    for (n, m) in map.quad_bases() {
        if n + m + 2 > n_cap {
            continue;
        }
        let c = map.quad(n, m).unwrap();
        let owned = [c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()];
        let bbox = bbox_of(&owned);
        quads.push(((n, m), owned, bbox));
    }
    rep.counts.push((String::from("quads"), quads.len()));
    let mut pairs = 0usize;
    for i in 0..quads.len() {
        for j in i + 1..quads.len() {
            if !bbox_overlap(&quads[i].2, &quads[j].2) {
                continue;
            }
            pairs += 1;
            if interiors_intersect(&quads[i].1, &quads[j].1) {
                rep.fail(
                    Location::QuadPair {
                        a: quads[i].0,
                        b: quads[j].0,
                    },
                    format!("quads {:?} and {:?} overlap", quads[i].0, quads[j].0),
                );
            }
        }
    }
    rep.counts.push((String::from("pairs-tested"), pairs));
    rep
}

fn bbox_of(c: &[Complex; 4]) -> [f64; 4] {
    let mut b = [
        f64::INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::NEG_INFINITY,
    ];
    for p in c {
        let (x, y) = (p.re.to_f64(), p.im.to_f64());
        b[0] = b[0].min(x);
        b[1] = b[1].min(y);
        b[2] = b[2].max(x);
        b[3] = b[3].max(y);
    }
    // inflate by a conservative margin so the f64 prefilter can never
    // discard a genuinely touching pair
    let pad = 1e-9 * (1.0 + b[2].abs().max(b[3].abs()).max(b[0].abs()).max(b[1].abs()));
    [b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad]
}

fn bbox_overlap(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a[0] <= b[2] && b[0] <= a[2] && a[1] <= b[3] && b[1] <= a[3]
}

/// Exact coordinates of the eight corners on a common dyadic grid.
struct ExactQuad {
    x: [BigInt; 4],
    y: [BigInt; 4],
}

fn exact_pair(a: &[Complex; 4], b: &[Complex; 4]) -> (ExactQuad, ExactQuad) {
    let refs: Vec<&Real> = a
        .iter()
        .chain(b.iter())
        .flat_map(|c| [&c.re, &c.im])
        .collect();
    let ints = Real::common_scaled_integers(&refs);
    let grab = |off: usize| ExactQuad {
        x: [
            ints[off].clone(),
            ints[off + 2].clone(),
            ints[off + 4].clone(),
            ints[off + 6].clone(),
        ],
        y: [
            ints[off + 1].clone(),
            ints[off + 3].clone(),
            ints[off + 5].clone(),
            ints[off + 7].clone(),
        ],
    };
    (grab(0), grab(8))
}

fn orient(ax: &BigInt, ay: &BigInt, bx: &BigInt, by: &BigInt, cx: &BigInt, cy: &BigInt) -> i8 {
    let v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}

/// Proper crossing: the open interiors of the two segments meet.
#[allow(clippy::too_many_arguments)]
fn segments_cross(
    ax: &BigInt,
    ay: &BigInt,
    bx: &BigInt,
    by: &BigInt,
    cx: &BigInt,
    cy: &BigInt,
    dx: &BigInt,
    dy: &BigInt,
) -> bool {
    let d1 = orient(cx, cy, dx, dy, ax, ay);
    let d2 = orient(cx, cy, dx, dy, bx, by);
    let d3 = orient(ax, ay, bx, by, cx, cy);
    let d4 = orient(ax, ay, bx, by, dx, dy);
    d1 * d2 < 0 && d3 * d4 < 0
}

/// Strictly-inside test for a simple polygon by exact crossing counting;
/// points on the boundary report false.
fn strictly_inside(q: &ExactQuad, px: &BigInt, py: &BigInt) -> bool {
    // boundary rejection first
    for i in 0..4 {
        let j = (i + 1) % 4;
        if on_segment(&q.x[i], &q.y[i], &q.x[j], &q.y[j], px, py) {
            return false;
        }
    }
    // crossing count with the half-open rule on a horizontal ray
    let mut crossings = 0;
    for i in 0..4 {
        let j = (i + 1) % 4;
        let (x1, y1, x2, y2) = (&q.x[i], &q.y[i], &q.x[j], &q.y[j]);
        let upward = y1 <= py && py < y2;
        let downward = y2 <= py && py < y1;
        if !(upward || downward) {
            continue;
        }
        // side of (x1,y1)-(x2,y2) the point lies on
        let side = orient(x1, y1, x2, y2, px, py);
        if (upward && side > 0) || (downward && side < 0) {
            crossings += 1;
        }
    }
    crossings % 2 == 1
}

fn on_segment(
    x1: &BigInt,
    y1: &BigInt,
    x2: &BigInt,
    y2: &BigInt,
    px: &BigInt,
    py: &BigInt,
) -> bool {
    if orient(x1, y1, x2, y2, px, py) != 0 {
        return false;
    }
    let within = |a: &BigInt, b: &BigInt, p: &BigInt| (a.min(b) <= p) && (p <= a.max(b));
    within(x1, x2, px) && within(y1, y2, py)
}

fn interiors_intersect(a: &[Complex; 4], b: &[Complex; 4]) -> bool {
    let (qa, qb) = exact_pair(a, b);
    for i in 0..4 {
        let i2 = (i + 1) % 4;
        for j in 0..4 {
            let j2 = (j + 1) % 4;
            if segments_cross(
                &qa.x[i], &qa.y[i], &qa.x[i2], &qa.y[i2], &qb.x[j], &qb.y[j], &qb.x[j2], &qb.y[j2],
            ) {
                return true;
            }
        }
    }
    for i in 0..4 {
        if strictly_inside(&qb, &qa.x[i], &qa.y[i]) || strictly_inside(&qa, &qb.x[i], &qb.y[i]) {
            return true;
        }
    }
    false
}

/// Embeddedness sign condition on the radius field:
/// `(gamma - 1)(R_z^2 - R_{z+1} R_{z-i} + cos(alpha) R_z (R_{z-i} - R_{z+1})) >= 0`
/// over interior labels, with `|expr| < 1e-8 * scale` counted as a
/// satisfied near-zero (the product vanishes identically at gamma = 1).
pub fn check_sign_condition(field: &RadiusField, gamma: &Real) -> ValidationReport {
    let mut rep = ValidationReport::new("sign-condition");
    let prec = gamma.prec();
    let one = Real::from_i64(1, prec);
    let gm1 = gamma - &one;
    let m_max = field.m_max();
    for m in 1..=m_max {
        for nn in -(m - 1)..=(m - 1) {
            let z = SublatticeIndex::new(nn, m);
            if field.origin == OriginKind::Infinite {
                let touches_origin =
                    (nn == 0 && m == 1) || (nn == -1 && m == 1) || (nn == 0 && m == 0);
                if touches_origin {
                    continue;
                }
            }
            let (rz, rz1, rzmi) = match (
                field.get(z),
                field.get(z.translate(1, 0)),
                field.get(z.translate(0, -1)),
            ) {
                (Some(a), Some(b), Some(c)) => (a, b, c),
                _ => continue,
            };
            if field.origin == OriginKind::Zero && nn == 0 && m == 1 {
                // expression involves R_0 = 0 legitimately; keep it
            }
            let e = &(&(rz * rz) - &(rz1 * rzmi)) + &(&(&field.t * rz) * &(rzmi - rz1));
            let scale = (rz * rz)
                .max(&rz1.abs() * &rzmi.abs())
                .max(Real::exp2(-60, prec));
            let band = &scale * &Real::from_f64(1e-8, prec);
            let val = &gm1 * &e;
            let loc = Location::Sublattice { n: nn, m };
            if val.abs() <= band {
                rep.bump("near-zero");
                continue;
            }
            if val.is_negative() {
                let rel = (&val.abs() / &scale).to_f64();
                rep.track(rel, loc);
                rep.fail(
                    loc,
                    format!("sign condition violated by {rel:.3e} at z={nn}+{m}i"),
                );
            } else {
                rep.bump("strict");
            }
        }
    }
    rep
}
