//! Elementary transcendental functions on [`Real`].
//!
//! Each function evaluates internally with guard bits and rounds the result
//! back to the operand's precision, so results are accurate to a few ulps.
//! Arguments here are always modest in magnitude (lattice sizes, angles,
//! radii), which keeps the argument reductions simple.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::real::Real;

const GUARD: u32 = 48;

/// pi at the requested width (Machin's formula).
pub fn pi(prec: u32) -> Real {
    let w = prec + GUARD;
    let a = atan_inv_fixed(5, w);
    let b = atan_inv_fixed(239, w);
    let scaled = (&a.scale2(4) - &b.scale2(2)).with_prec(prec + GUARD);
    scaled.with_prec(prec)
}

/// ln 2 at the requested width.
pub fn ln2(prec: u32) -> Real {
    // ln 2 = 2 atanh(1/3)
    atanh_inv_fixed(3, prec + GUARD).scale2(1).with_prec(prec)
}

/// atan(1/m) by fixed-point series, exact integer arithmetic.
fn atan_inv_fixed(m: u64, w: u32) -> Real {
    let one = BigUint::one() << w;
    let m2 = BigUint::from(m) * BigUint::from(m);
    let mut term = one / BigUint::from(m);
    let mut acc_pos = BigUint::zero();
    let mut acc_neg = BigUint::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let contrib = &term / BigUint::from(2 * k + 1);
        if k.is_multiple_of(2) {
            acc_pos += contrib;
        } else {
            acc_neg += contrib;
        }
        term /= &m2;
        k += 1;
    }
    let mag = acc_pos - acc_neg;
    real_from_fixed(mag, w)
}

/// atanh(1/m) by fixed-point series.
fn atanh_inv_fixed(m: u64, w: u32) -> Real {
    let one = BigUint::one() << w;
    let m2 = BigUint::from(m) * BigUint::from(m);
    let mut term = one / BigUint::from(m);
    let mut acc = BigUint::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        acc += &term / BigUint::from(2 * k + 1);
        term /= &m2;
        k += 1;
    }
    real_from_fixed(acc, w)
}

fn real_from_fixed(mag: BigUint, w: u32) -> Real {
    big_to_real(&mag, w).scale2(-(w as i64))
}

/// e^x.
pub fn exp(x: &Real) -> Real {
    let prec = x.prec();
    let w = prec + GUARD;
    let xw = x.with_prec(w);
    if x.is_zero() {
        return Real::from_i64(1, prec);
    }
    let l2 = ln2(w);
    let k = (&xw / &l2).to_i64_rounded();
    let r = &xw - &(&l2 * &Real::from_i64(k, w));
    // halve the reduced argument j times, then Taylor, then square back
    let j = 16i64.min((w as i64) / 4);
    let rs = r.scale2(-j);
    let mut term = Real::from_i64(1, w);
    let mut sum = Real::from_i64(1, w);
    let mut i = 1i64;
    loop {
        term = &(&term * &rs) / &Real::from_i64(i, w);
        sum = &sum + &term;
        if term.is_zero() || term.msb_exp() < sum.msb_exp() - w as i64 - 4 {
            break;
        }
        i += 1;
    }
    let mut sq = sum;
    for _ in 0..j {
        sq = &sq * &sq;
    }
    sq.scale2(k).with_prec(prec)
}

/// Natural logarithm, `x > 0`.
pub fn ln(x: &Real) -> Real {
    assert!(x.is_positive(), "ln of a non-positive value");
    let prec = x.prec();
    let w = prec + GUARD;
    let xw = x.with_prec(w);
    // x = u * 2^e with u in [1, 2)
    let e = xw.msb_exp() - 1;
    let u = xw.scale2(-e);
    // two square roots bring u into [1, 2^(1/4))
    let v = u.sqrt().sqrt();
    let one = Real::from_i64(1, w);
    let t = &(&v - &one) / &(&v + &one);
    // ln v = 2 atanh t
    let t2 = &t * &t;
    let mut term = t.clone();
    let mut sum = t.clone();
    let mut k = 1i64;
    loop {
        term = &term * &t2;
        let contrib = &term / &Real::from_i64(2 * k + 1, w);
        sum = &sum + &contrib;
        if contrib.is_zero() || contrib.msb_exp() < sum.msb_exp() - w as i64 - 4 {
            break;
        }
        k += 1;
    }
    let ln_u = sum.scale2(3); // * 2 (atanh) * 4 (two sqrt halvings)
    let res = &ln_u + &(&ln2(w) * &Real::from_i64(e, w));
    res.with_prec(prec)
}

/// Simultaneous sine and cosine.
pub fn sin_cos(x: &Real) -> (Real, Real) {
    let prec = x.prec();
    let w = prec + GUARD;
    let xw = x.with_prec(w);
    let half_pi = pi(w).scale2(-1);
    let q = (&xw / &half_pi).to_i64_rounded();
    let r = &xw - &(&half_pi * &Real::from_i64(q, w));
    let (s, c) = sin_cos_taylor(&r, w);
    let (s, c) = match q.rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    };
    (s.with_prec(prec), c.with_prec(prec))
}

pub fn sin(x: &Real) -> Real {
    sin_cos(x).0
}

pub fn cos(x: &Real) -> Real {
    sin_cos(x).1
}

fn sin_cos_taylor(r: &Real, w: u32) -> (Real, Real) {
    // |r| <= pi/4 + ulp
    let r2 = r * r;
    let mut s = r.clone();
    let mut c = Real::from_i64(1, w);
    let mut term_s = r.clone();
    let mut term_c = Real::from_i64(1, w);
    let mut k = 1i64;
    loop {
        term_c = &(&term_c * &r2) / &Real::from_i64((2 * k - 1) * (2 * k), w);
        term_s = &(&term_s * &r2) / &Real::from_i64((2 * k) * (2 * k + 1), w);
        let (sc, ss) = (term_c.clone(), term_s.clone());
        if k % 2 == 1 {
            c = &c - &sc;
            s = &s - &ss;
        } else {
            c = &c + &sc;
            s = &s + &ss;
        }
        if term_c.is_zero() || term_c.msb_exp() < -(w as i64) - 4 {
            break;
        }
        k += 1;
    }
    (s, c)
}

/// arctangent.
pub fn atan(x: &Real) -> Real {
    let prec = x.prec();
    if x.is_zero() {
        return Real::zero(prec);
    }
    let w = prec + GUARD;
    let xw = x.abs().with_prec(w);
    let one = Real::from_i64(1, w);
    // reciprocal reduction to [0, 1]
    let (y, complement) = if xw > one {
        (&one / &xw, true)
    } else {
        (xw, false)
    };
    // halving reduction: atan y = 2 atan(y / (1 + sqrt(1 + y^2)))
    let mut y = y;
    let mut halvings = 0u32;
    let threshold = Real::exp2(-6, w);
    while y > threshold {
        let root = (&one + &(&y * &y)).sqrt();
        y = &y / &(&one + &root);
        halvings += 1;
    }
    let y2 = &y * &y;
    let mut term = y.clone();
    let mut sum = y.clone();
    let mut k = 1i64;
    loop {
        term = &term * &y2;
        let contrib = &term / &Real::from_i64(2 * k + 1, w);
        if k % 2 == 1 {
            sum = &sum - &contrib;
        } else {
            sum = &sum + &contrib;
        }
        if contrib.is_zero() || contrib.msb_exp() < sum.msb_exp() - w as i64 - 4 {
            break;
        }
        k += 1;
    }
    let mut res = sum.scale2(halvings as i64);
    if complement {
        res = &pi(w).scale2(-1) - &res;
    }
    if x.is_negative() {
        res = -res;
    }
    res.with_prec(prec)
}

/// Four-quadrant arctangent of `y/x`.
pub fn atan2(y: &Real, x: &Real) -> Real {
    let prec = y.prec().max(x.prec());
    if x.is_zero() && y.is_zero() {
        return Real::zero(prec);
    }
    if x.is_zero() {
        let h = pi(prec).scale2(-1);
        return if y.is_positive() { h } else { -h };
    }
    let base = atan(&(y / x));
    if x.is_positive() {
        base
    } else if y.is_negative() {
        &base - &pi(prec)
    } else {
        &base + &pi(prec)
    }
}

/// `x^y` for positive `x`.
pub fn pow(x: &Real, y: &Real) -> Real {
    assert!(x.is_positive(), "pow of non-positive base");
    let prec = x.prec().max(y.prec());
    let w = prec + GUARD;
    exp(&(&ln(&x.with_prec(w)) * &y.with_prec(w))).with_prec(prec)
}

/// Integer power by repeated squaring (any sign of base).
pub fn powi(x: &Real, n: i64) -> Real {
    let prec = x.prec();
    if n == 0 {
        return Real::from_i64(1, prec);
    }
    let w = prec + GUARD;
    let mut base = x.with_prec(w);
    let mut e = n.unsigned_abs();
    let mut acc = Real::from_i64(1, w);
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    if n < 0 {
        acc = &Real::from_i64(1, w) / &acc;
    }
    acc.with_prec(prec)
}

/// ln Gamma(x) for `x > 0`: argument shift plus Stirling series with exact
/// Bernoulli numbers.
pub fn lgamma(x: &Real) -> Real {
    assert!(x.is_positive(), "lgamma requires a positive argument");
    let prec = x.prec();
    let w = prec + GUARD + 16;
    let xw = x.with_prec(w);
    // Shift the argument so the asymptotic series reaches 2^-w.
    let x0 = (w as i64 * 3 / 8).max(24);
    let k = (x0 - xw.floor_i64()).max(0);
    let mut shift_log = Real::zero(w);
    let mut t = xw.clone();
    for _ in 0..k {
        shift_log = &shift_log + &ln(&t);
        t = &t + &Real::from_i64(1, w);
    }
    // Stirling at z = x + k:
    // (z - 1/2) ln z - z + ln(2 pi)/2 + sum B_2j / (2j(2j-1) z^(2j-1))
    let z = t;
    let ln_z = ln(&z);
    let half = Real::exp2(-1, w);
    let mut acc = &(&(&z - &half) * &ln_z) - &z;
    let two_pi = pi(w).scale2(1);
    acc = &acc + &ln(&two_pi).scale2(-1);
    let z2 = &z * &z;
    let mut zpow = z.clone(); // z^(2j-1)
    let mut bern = Bernoulli::new();
    let mut j = 1u32;
    loop {
        let b = bern.get(2 * j as usize);
        let denom = &Real::from_i64((2 * j as i64) * (2 * j as i64 - 1), w) * &zpow;
        let term = &b.to_real(w) / &denom;
        acc = &acc + &term;
        if term.is_zero() || term.msb_exp() < acc.msb_exp() - w as i64 - 4 {
            break;
        }
        zpow = &zpow * &z2;
        j += 1;
        // The series is asymptotic; with z >= 3w/8 it reaches 2^-w long
        // before terms can turn around, but cap defensively.
        if j > w {
            break;
        }
    }
    (&acc - &shift_log).with_prec(prec)
}

/// Exact rational Bernoulli numbers B_0, B_1, B_2, ... computed on demand
/// from the defining recurrence.
struct Bernoulli {
    // fractions (num, den, negative)
    values: Vec<(BigUint, BigUint, bool)>,
}

impl Bernoulli {
    fn new() -> Self {
        Bernoulli {
            values: vec![
                (BigUint::one(), BigUint::one(), false),     // B_0 = 1
                (BigUint::one(), BigUint::from(2u32), true), // B_1 = -1/2
            ],
        }
    }

    fn get(&mut self, m: usize) -> Frac {
        while self.values.len() <= m {
            let m_new = self.values.len();
            // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1, k) B_k
            let mut sum = Frac::zero();
            let mut binom = BigUint::one(); // C(m+1, 0)
            for (k, v) in self.values.iter().enumerate() {
                let term = Frac {
                    num: &binom * &v.0,
                    den: v.1.clone(),
                    neg: v.2,
                };
                sum = sum.add(&term);
                // C(m+1, k+1) = C(m+1, k) * (m+1-k) / (k+1)
                binom = binom * BigUint::from(m_new + 1 - k) / BigUint::from(k + 1);
            }
            let mut b = sum.div_int(m_new as u64 + 1);
            b.neg = !b.neg && !b.num.is_zero();
            b.reduce();
            self.values.push((b.num, b.den, b.neg));
        }
        let v = &self.values[m];
        Frac {
            num: v.0.clone(),
            den: v.1.clone(),
            neg: v.2,
        }
    }
}

struct Frac {
    num: BigUint,
    den: BigUint,
    neg: bool,
}

impl Frac {
    fn zero() -> Frac {
        Frac {
            num: BigUint::zero(),
            den: BigUint::one(),
            neg: false,
        }
    }

    fn add(&self, other: &Frac) -> Frac {
        let a = &self.num * &other.den;
        let b = &other.num * &self.den;
        let den = &self.den * &other.den;
        let (num, neg) = if self.neg == other.neg {
            (a + b, self.neg)
        } else if a >= b {
            (a - b, self.neg)
        } else {
            (b - a, other.neg)
        };
        let mut f = Frac { num, den, neg };
        f.reduce();
        f
    }

    fn div_int(&self, d: u64) -> Frac {
        Frac {
            num: self.num.clone(),
            den: &self.den * &BigUint::from(d),
            neg: self.neg,
        }
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = BigUint::one();
            self.neg = false;
            return;
        }
        let g = num_integer::Integer::gcd(&self.num, &self.den);
        if g > BigUint::one() {
            self.num = &self.num / &g;
            self.den = &self.den / &g;
        }
    }

    fn to_real(&self, w: u32) -> Real {
        let num = big_to_real(&self.num, w);
        let den = big_to_real(&self.den, w);
        let v = &num / &den;
        if self.neg {
            -v
        } else {
            v
        }
    }
}

fn big_to_real(n: &BigUint, w: u32) -> Real {
    let mut acc = Real::zero(w);
    for (i, limb) in n.to_u64_digits().iter().enumerate() {
        acc = &acc + &Real::from_u64(*limb, w).scale2(64 * i as i64);
    }
    acc
}
