//! Configurable-mantissa binary floating point.
//!
//! A [`Real`] is `sign * mag * 2^exp` with `mag` normalized to exactly
//! `prec` significant bits. All arithmetic rounds to nearest (ties to even)
//! at the precision of the widest operand, so a computation seeded from a
//! [`PrecisionContext`] stays at that context's width throughout.
//!
//! There are no infinities or NaNs: dividing by an exact zero or taking the
//! square root of a negative value panics, which in this crate always
//! indicates a caller bug (geometric degeneracies are screened with
//! scale-relative thresholds before any division).

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Errors from context construction and decimal parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RealError {
    #[error("mantissa width {0} is below the minimum of 53 bits")]
    InvalidPrecision(u32),
    #[error("cannot parse `{0}` as a decimal number")]
    Parse(String),
}

/// Mantissa-width context under which scalars are created.
///
/// `eps` is the unit roundoff `2^(1-bits)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    bits: u32,
}

impl PrecisionContext {
    pub const MIN_BITS: u32 = 53;

    pub fn new(bits: u32) -> Result<Self, RealError> {
        if bits < Self::MIN_BITS {
            return Err(RealError::InvalidPrecision(bits));
        }
        Ok(PrecisionContext { bits })
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// Unit roundoff `2^(1-bits)`.
    pub fn eps(self) -> Real {
        Real::exp2(1 - self.bits as i64, self.bits)
    }

    pub fn zero(self) -> Real {
        Real::zero(self.bits)
    }

    pub fn one(self) -> Real {
        Real::from_i64(1, self.bits)
    }

    pub fn from_i64(self, v: i64) -> Real {
        Real::from_i64(v, self.bits)
    }

    pub fn from_f64(self, v: f64) -> Real {
        Real::from_f64(v, self.bits)
    }

    /// `p/q` rounded to the context width.
    pub fn from_ratio(self, p: i64, q: i64) -> Real {
        &Real::from_i64(p, self.bits) / &Real::from_i64(q, self.bits)
    }

    pub fn parse(self, s: &str) -> Result<Real, RealError> {
        Real::from_decimal_str(s, self.bits)
    }
}

#[derive(Clone)]
pub struct Real {
    sign: i8,
    mag: BigUint,
    exp: i64,
    prec: u32,
}

fn bits_of(m: &BigUint) -> i64 {
    m.bits() as i64
}

impl Real {
    pub fn zero(prec: u32) -> Real {
        Real {
            sign: 0,
            mag: BigUint::zero(),
            exp: 0,
            prec,
        }
    }

    pub fn from_i64(v: i64, prec: u32) -> Real {
        if v == 0 {
            return Real::zero(prec);
        }
        let sign = if v < 0 { -1 } else { 1 };
        Real::normalized(sign, BigUint::from(v.unsigned_abs()), 0, prec)
    }

    pub fn from_u64(v: u64, prec: u32) -> Real {
        if v == 0 {
            return Real::zero(prec);
        }
        Real::normalized(1, BigUint::from(v), 0, prec)
    }

    /// Exact power of two `2^k`.
    pub fn exp2(k: i64, prec: u32) -> Real {
        Real::normalized(1, BigUint::one(), k, prec)
    }

    /// Exact conversion from an `f64` (then rounded to `prec`).
    pub fn from_f64(v: f64, prec: u32) -> Real {
        assert!(v.is_finite(), "cannot convert a non-finite f64");
        if v == 0.0 {
            return Real::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Real::normalized(sign, BigUint::from(mant), exp, prec)
    }

    /// Normalize `sign * mag * 2^exp` to exactly `prec` mantissa bits,
    /// rounding to nearest, ties to even. The low dropped bit may carry
    /// sticky information (callers fold remainders into it).
    fn normalized(sign: i8, mut mag: BigUint, mut exp: i64, prec: u32) -> Real {
        if mag.is_zero() || sign == 0 {
            return Real::zero(prec);
        }
        let len = bits_of(&mag);
        let p = prec as i64;
        if len < p {
            let shift = (p - len) as u64;
            mag <<= shift;
            exp -= shift as i64;
        } else if len > p {
            let drop = (len - p) as u64;
            let guard = mag.bit(drop - 1);
            let sticky = if drop > 1 {
                let low = &mag & ((BigUint::one() << (drop - 1)) - 1u32);
                !low.is_zero()
            } else {
                false
            };
            mag >>= drop;
            exp += drop as i64;
            if guard && (sticky || mag.bit(0)) {
                mag += 1u32;
                if bits_of(&mag) > p {
                    mag >>= 1;
                    exp += 1;
                }
            }
        }
        Real {
            sign,
            mag,
            exp,
            prec,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Re-round to a different mantissa width.
    pub fn with_prec(&self, prec: u32) -> Real {
        Real::normalized(self.sign, self.mag.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn is_positive(&self) -> bool {
        self.sign > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign < 0
    }

    pub fn signum(&self) -> i8 {
        self.sign
    }

    pub fn abs(&self) -> Real {
        let mut r = self.clone();
        if r.sign < 0 {
            r.sign = 1;
        }
        r
    }

    /// Exponent of the most significant bit: the value lies in
    /// `[2^(e-1), 2^e)`. Zero returns `i64::MIN`.
    pub fn msb_exp(&self) -> i64 {
        if self.sign == 0 {
            i64::MIN
        } else {
            self.exp + bits_of(&self.mag)
        }
    }

    /// Exact multiplication by `2^k`.
    pub fn scale2(&self, k: i64) -> Real {
        if self.sign == 0 {
            return self.clone();
        }
        let mut r = self.clone();
        r.exp += k;
        r
    }

    fn cmp_abs(&self, other: &Real) -> Ordering {
        match (self.sign == 0, other.sign == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let ma = self.msb_exp();
        let mb = other.msb_exp();
        if ma != mb {
            return ma.cmp(&mb);
        }
        // Align least significant bits and compare mantissas exactly.
        let la = bits_of(&self.mag);
        let lb = bits_of(&other.mag);
        if la == lb {
            self.mag.cmp(&other.mag)
        } else if la < lb {
            (&self.mag << ((lb - la) as u64)).cmp(&other.mag)
        } else {
            self.mag.cmp(&(&other.mag << ((la - lb) as u64)))
        }
    }

    fn add_signed(&self, other: &Real, negate_other: bool) -> Real {
        let osign = if negate_other {
            -other.sign
        } else {
            other.sign
        };
        let prec = self.prec.max(other.prec);
        if self.sign == 0 {
            let mut r = other.with_prec(prec);
            r.sign = osign;
            return r;
        }
        if osign == 0 {
            return self.with_prec(prec);
        }
        // Order by magnitude so a dominates.
        let (asign, amag, aexp, bsign, bmag, bexp);
        if self.cmp_abs(other) >= Ordering::Equal {
            asign = self.sign;
            amag = &self.mag;
            aexp = self.exp;
            bsign = osign;
            bmag = &other.mag;
            bexp = other.exp;
        } else {
            asign = osign;
            amag = &other.mag;
            aexp = other.exp;
            bsign = self.sign;
            bmag = &self.mag;
            bexp = self.exp;
        }
        let gap = (aexp + bits_of(amag)) - (bexp + bits_of(bmag));
        debug_assert!(gap >= 0);
        if gap > prec as i64 + 4 {
            // b only matters as a sticky nudge below the rounding bit.
            let mut m = amag << 3u32;
            if asign == bsign {
                m |= BigUint::one();
            } else {
                m -= 1u32;
            }
            return Real::normalized(asign, m, aexp - 3, prec);
        }
        // Exact alignment.
        let shift_a = (aexp - aexp.min(bexp)) as u64;
        let shift_b = (bexp - aexp.min(bexp)) as u64;
        let ma = amag << shift_a;
        let mb = bmag << shift_b;
        let exp = aexp.min(bexp);
        if asign == bsign {
            Real::normalized(asign, ma + mb, exp, prec)
        } else {
            match ma.cmp(&mb) {
                Ordering::Equal => Real::zero(prec),
                Ordering::Greater => Real::normalized(asign, ma - mb, exp, prec),
                Ordering::Less => Real::normalized(-asign, mb - ma, exp, prec),
            }
        }
    }

    fn mul_impl(&self, other: &Real) -> Real {
        let prec = self.prec.max(other.prec);
        if self.sign == 0 || other.sign == 0 {
            return Real::zero(prec);
        }
        Real::normalized(
            self.sign * other.sign,
            &self.mag * &other.mag,
            self.exp + other.exp,
            prec,
        )
    }

    fn div_impl(&self, other: &Real) -> Real {
        let prec = self.prec.max(other.prec);
        assert!(other.sign != 0, "division by zero");
        if self.sign == 0 {
            return Real::zero(prec);
        }
        // Scale the numerator so the quotient carries prec + 3 bits, then
        // fold the remainder into a sticky bit.
        let k = prec as i64 + 3 + (bits_of(&other.mag) - bits_of(&self.mag)).max(0);
        let num = &self.mag << (k as u64);
        let (q, r) = num_integer::Integer::div_rem(&num, &other.mag);
        let mut m = q << 1u32;
        if !r.is_zero() {
            m |= BigUint::one();
        }
        Real::normalized(
            self.sign * other.sign,
            m,
            self.exp - other.exp - k - 1,
            prec,
        )
    }

    /// Square root, rounding to nearest.
    pub fn sqrt(&self) -> Real {
        assert!(self.sign >= 0, "sqrt of a negative value");
        if self.sign == 0 {
            return self.clone();
        }
        let p = self.prec as i64;
        // Shift so the scaled mantissa yields >= p+2 root bits and the
        // shifted exponent is even.
        let mut extra = 2 * p + 4 - bits_of(&self.mag);
        if extra < 0 {
            extra = 0;
        }
        if (self.exp - extra) % 2 != 0 {
            extra += 1;
        }
        let m = &self.mag << (extra as u64);
        let root = m.sqrt();
        let rem = &m - &root * &root;
        let mut mag = root << 1u32;
        if !rem.is_zero() {
            mag |= BigUint::one();
        }
        Real::normalized(1, mag, (self.exp - extra) / 2 - 1, self.prec)
    }

    /// Nearest `f64` (saturating on overflow of the f64 range).
    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let r53 = self.with_prec(53);
        let top = r53.msb_exp();
        if top > 1024 {
            return if self.sign > 0 { f64::MAX } else { -f64::MAX };
        }
        if top < -1070 {
            return 0.0;
        }
        let m = r53.mag.to_u64().expect("53-bit mantissa fits u64") as f64;
        let v = m * libm_exp2(r53.exp);
        if self.sign < 0 {
            -v
        } else {
            v
        }
    }

    /// Nearest integer as i64 (ties to even). Panics if out of range.
    pub fn to_i64_rounded(&self) -> i64 {
        if self.sign == 0 {
            return 0;
        }
        if self.exp >= 0 {
            let v = (&self.mag << (self.exp as u64))
                .to_i64()
                .expect("rounded value exceeds i64");
            return v * self.sign as i64;
        }
        let shift = (-self.exp) as u64;
        if shift > self.mag.bits() {
            return 0; // |x| < 1/2
        }
        let int = &self.mag >> shift;
        let frac_top = self.mag.bit(shift - 1);
        let low = if shift >= 2 {
            &self.mag & ((BigUint::one() << (shift - 1)) - 1u32)
        } else {
            BigUint::zero()
        };
        let mut v = int.to_i64().expect("rounded value exceeds i64");
        if frac_top && (!low.is_zero() || v & 1 == 1) {
            v += 1;
        }
        v * self.sign as i64
    }

    /// Largest integer `<= self`, as i64.
    pub fn floor_i64(&self) -> i64 {
        if self.sign == 0 {
            return 0;
        }
        if self.exp >= 0 {
            let v = (&self.mag << (self.exp as u64))
                .to_i64()
                .expect("floor exceeds i64");
            return v * self.sign as i64;
        }
        let shift = (-self.exp) as u64;
        let int = if shift >= 64 + self.mag.bits() {
            BigUint::zero()
        } else {
            &self.mag >> shift
        };
        let frac_nonzero = (&self.mag & ((BigUint::one() << shift) - 1u32)) != BigUint::zero();
        let v = int.to_i64().expect("floor exceeds i64");
        if self.sign > 0 {
            v
        } else if frac_nonzero {
            -v - 1
        } else {
            -v
        }
    }

    /// Exact representation of a batch of values as integers on a common
    /// power-of-two grid (the minimum exponent among the nonzero inputs).
    /// Used by exact geometric predicates.
    pub fn common_scaled_integers(vals: &[&Real]) -> Vec<num_bigint::BigInt> {
        use num_bigint::BigInt;
        let floor = vals
            .iter()
            .filter(|v| v.sign != 0)
            .map(|v| v.exp)
            .min()
            .unwrap_or(0);
        vals.iter()
            .map(|v| {
                if v.sign == 0 {
                    BigInt::from(0)
                } else {
                    let shifted = &v.mag << ((v.exp - floor) as u64);
                    let b = BigInt::from(shifted);
                    if v.sign < 0 {
                        -b
                    } else {
                        b
                    }
                }
            })
            .collect()
    }

    // ------------------------------------------------------------------
    // Decimal conversion (exact rounding both ways, so that printing with
    // full precision and re-parsing is the identity).
    // ------------------------------------------------------------------

    /// Number of decimal digits that uniquely identify a `prec`-bit value.
    pub fn decimal_digits(prec: u32) -> u32 {
        // ceil(prec * log10(2)) + 2
        (prec as u64 * 30103 / 100000) as u32 + 3
    }

    /// Scientific-notation decimal string with enough digits to round-trip.
    pub fn to_decimal_string(&self) -> String {
        if self.sign == 0 {
            return String::from("0");
        }
        let digits = Real::decimal_digits(self.prec) as i64;
        // First decimal-exponent estimate from the binary magnitude.
        let mut d10 = (self.msb_exp() as i128 * 30103 / 100000) as i64;
        loop {
            // weight of the last requested digit
            let q = d10 - digits;
            let scaled = self.scale_pow10(-q);
            let n = scaled;
            let len = decimal_len(&n);
            if len > digits {
                d10 += 1;
                continue;
            }
            if len < digits {
                d10 -= 1;
                continue;
            }
            let s = n.to_str_radix(10);
            let mut out = String::new();
            if self.sign < 0 {
                out.push('-');
            }
            out.push_str(&s[0..1]);
            out.push('.');
            out.push_str(&s[1..]);
            out.push('e');
            if d10 > 0 {
                out.push('+');
            }
            let buf = itoa_i64(d10 - 1);
            out.push_str(&buf);
            return out;
        }
    }

    /// `round(|self| * 10^k)` as an integer.
    fn scale_pow10(&self, k: i64) -> BigUint {
        let ten_k = BigUint::from(10u32).pow(k.unsigned_abs() as u32);
        // |self| = mag * 2^exp
        let (num, den): (BigUint, BigUint) = if k >= 0 {
            if self.exp >= 0 {
                return (&self.mag * ten_k) << (self.exp as u64);
            }
            (&self.mag * ten_k, BigUint::one() << ((-self.exp) as u64))
        } else if self.exp >= 0 {
            (&self.mag << (self.exp as u64), ten_k)
        } else {
            (self.mag.clone(), ten_k << ((-self.exp) as u64))
        };
        round_div_nearest(&num, &den)
    }

    /// Parse a decimal string (`[-]d[.ddd][e[+-]x]`) with exact rounding.
    pub fn from_decimal_str(s: &str, prec: u32) -> Result<Real, RealError> {
        let err = || RealError::Parse(String::from(s));
        let t = s.trim();
        if t.is_empty() {
            return Err(err());
        }
        let (sign, t) = match t.as_bytes()[0] {
            b'-' => (-1i8, &t[1..]),
            b'+' => (1, &t[1..]),
            _ => (1, t),
        };
        let (mant_str, exp10) = match t.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = t[i + 1..].parse().map_err(|_| err())?;
                (&t[..i], e)
            }
            None => (t, 0),
        };
        let mut digits = String::new();
        let mut frac_len: i64 = 0;
        let mut seen_dot = false;
        for ch in mant_str.chars() {
            match ch {
                '0'..='9' => {
                    digits.push(ch);
                    if seen_dot {
                        frac_len += 1;
                    }
                }
                '.' if !seen_dot => seen_dot = true,
                _ => return Err(err()),
            }
        }
        if digits.is_empty() {
            return Err(err());
        }
        let d = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or_else(err)?;
        if d.is_zero() {
            return Ok(Real::zero(prec));
        }
        let k = exp10 - frac_len; // value = d * 10^k
        if k >= 0 {
            let n = d * BigUint::from(10u32).pow(k as u32);
            return Ok(Real::normalized(sign, n, 0, prec));
        }
        let den = BigUint::from(10u32).pow((-k) as u32);
        // Scaled division with sticky, exactly as in div_impl.
        let shift = prec as i64 + 3 + (bits_of(&den) - bits_of(&d)).max(0);
        let num = d << (shift as u64);
        let (q, r) = num_integer::Integer::div_rem(&num, &den);
        let mut m = q << 1u32;
        if !r.is_zero() {
            m |= BigUint::one();
        }
        Ok(Real::normalized(sign, m, -shift - 1, prec))
    }
}

/// Round-to-nearest (ties to even) integer division.
fn round_div_nearest(num: &BigUint, den: &BigUint) -> BigUint {
    let (q, r) = num_integer::Integer::div_rem(num, den);
    let twice = &r << 1u32;
    match twice.cmp(den) {
        Ordering::Greater => q + 1u32,
        Ordering::Less => q,
        Ordering::Equal => {
            if (&q & BigUint::one()) == BigUint::one() {
                q + 1u32
            } else {
                q
            }
        }
    }
}

fn decimal_len(n: &BigUint) -> i64 {
    if n.is_zero() {
        return 1;
    }
    n.to_str_radix(10).len() as i64
}

fn itoa_i64(v: i64) -> String {
    let mut s = String::new();
    fmt::Write::write_fmt(&mut s, format_args!("{}", v)).unwrap();
    s
}

/// `2^k` as f64 without std.
fn libm_exp2(k: i64) -> f64 {
    if (-1022..=1023).contains(&k) {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else if k < -1022 && k > -1075 {
        f64::from_bits(1u64 << (k + 1074) as u64)
    } else if k <= -1075 {
        0.0
    } else {
        f64::MAX
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sign.cmp(&other.sign) {
            Ordering::Equal => {}
            o => return o,
        }
        if self.sign == 0 {
            return Ordering::Equal;
        }
        let abs = self.cmp_abs(other);
        if self.sign > 0 {
            abs
        } else {
            abs.reverse()
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({} @{})", self.to_decimal_string(), self.prec)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl<'a, 'b> $trait<&'b Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: &'b Real) -> Real {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$impl_fn(&rhs)
            }
        }
        impl<'a> $trait<&'a Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &'a Real) -> Real {
                (&self).$impl_fn(rhs)
            }
        }
        impl<'a> $trait<Real> for &'a Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$impl_fn(&rhs)
            }
        }
    };
}

impl Real {
    fn add_op(&self, rhs: &Real) -> Real {
        self.add_signed(rhs, false)
    }
    fn sub_op(&self, rhs: &Real) -> Real {
        self.add_signed(rhs, true)
    }
}

binop!(Add, add, add_op);
binop!(Sub, sub, sub_op);
binop!(Mul, mul, mul_impl);
binop!(Div, div, div_impl);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }
}
impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(v: f64) -> Real {
        Real::from_f64(v, 53)
    }

    #[test]
    fn context_rejects_narrow_mantissa() {
        assert!(PrecisionContext::new(52).is_err());
        assert_eq!(PrecisionContext::new(53).unwrap().bits(), 53);
    }

    #[test]
    fn eps_is_two_to_one_minus_bits() {
        let ctx = PrecisionContext::new(53).unwrap();
        assert_eq!(ctx.eps().to_f64(), (2.0f64).powi(-52));
    }

    #[test]
    fn f64_round_trip_exact() {
        for v in [0.0, 1.0, -1.5, 0.1, 1e300, -3e-200, core::f64::consts::PI] {
            assert_eq!(Real::from_f64(v, 53).to_f64(), v);
        }
    }

    #[test]
    fn arithmetic_matches_f64_when_exact() {
        let a = r(3.5);
        let b = r(-1.25);
        assert_eq!((&a + &b).to_f64(), 2.25);
        assert_eq!((&a - &b).to_f64(), 4.75);
        assert_eq!((&a * &b).to_f64(), -4.375);
        assert_eq!((&a / &b).to_f64(), -2.8);
    }

    #[test]
    fn sqrt_exact_squares() {
        assert_eq!(r(144.0).sqrt().to_f64(), 12.0);
        assert_eq!(r(2.25).sqrt().to_f64(), 1.5);
        let s = r(2.0).sqrt();
        assert!((s.to_f64() - core::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn comparison_across_precisions() {
        let a = Real::from_i64(1, 53);
        let b = Real::from_i64(1, 212);
        assert_eq!(a, b);
        assert!(Real::from_f64(1.5, 212) > a);
    }

    #[test]
    fn floor_and_round() {
        assert_eq!(r(2.7).floor_i64(), 2);
        assert_eq!(r(-2.7).floor_i64(), -3);
        assert_eq!(r(-2.0).floor_i64(), -2);
        assert_eq!(r(2.5).to_i64_rounded(), 2); // ties to even
        assert_eq!(r(3.5).to_i64_rounded(), 4);
        assert_eq!(r(-2.49).to_i64_rounded(), -2);
    }

    #[test]
    fn decimal_string_round_trip_known() {
        let x = Real::from_f64(0.1, 212);
        let s = x.to_decimal_string();
        let y = Real::from_decimal_str(&s, 212).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn parse_forms() {
        let ctx = PrecisionContext::new(106).unwrap();
        assert_eq!(ctx.parse("1.5e2").unwrap().to_f64(), 150.0);
        assert_eq!(ctx.parse("-0.25").unwrap().to_f64(), -0.25);
        assert_eq!(ctx.parse("42").unwrap().to_f64(), 42.0);
        assert!(ctx.parse("abc").is_err());
    }

    proptest! {
        #[test]
        fn decimal_round_trip(v in prop::num::f64::NORMAL, bits in prop_oneof![Just(53u32), Just(106), Just(212), Just(424)]) {
            let x = Real::from_f64(v, bits);
            let back = Real::from_decimal_str(&x.to_decimal_string(), bits).unwrap();
            prop_assert_eq!(x, back);
        }

        #[test]
        fn add_sub_inverse(a in -1e12f64..1e12, b in -1e12f64..1e12) {
            let (x, y) = (Real::from_f64(a, 106), Real::from_f64(b, 106));
            let z = &(&x + &y) - &y;
            // one rounding each way: relative error bounded by 4 eps
            let diff = (&z - &x).abs();
            let tol = x.abs().max(y.abs()) * Real::exp2(-100, 106);
            prop_assert!(diff <= tol, "diff {} tol {}", diff.to_f64(), tol.to_f64());
        }

        #[test]
        fn mul_div_inverse(a in 1e-12f64..1e12, b in 1e-12f64..1e12) {
            let (x, y) = (Real::from_f64(a, 106), Real::from_f64(b, 106));
            let z = &(&x * &y) / &y;
            let diff = (&z - &x).abs();
            let tol = x.abs() * Real::exp2(-100, 106);
            prop_assert!(diff <= tol);
        }

        #[test]
        fn matches_ieee_double_exactly(a in prop::num::f64::NORMAL, b in prop::num::f64::NORMAL) {
            // at 53 bits every operation must agree with hardware
            // round-to-nearest-even doubles whenever the f64 result is
            // itself normal
            let (x, y) = (Real::from_f64(a, 53), Real::from_f64(b, 53));
            let cases = [
                (a + b, &x + &y),
                (a - b, &x - &y),
                (a * b, &x * &y),
                (a / b, &x / &y),
            ];
            for (want, got) in cases {
                if want.is_finite() && want.is_normal() || want == 0.0 {
                    prop_assert_eq!(got.to_f64(), want);
                }
            }
            if a > 0.0 && a.sqrt().is_normal() {
                prop_assert_eq!(x.sqrt().to_f64(), a.sqrt());
            }
        }

        #[test]
        fn sqrt_squares_back(a in 1e-100f64..1e100) {
            let x = Real::from_f64(a, 212);
            let s = x.sqrt();
            let diff = (&(&s * &s) - &x).abs();
            prop_assert!(diff <= x * Real::exp2(-205, 212));
        }
    }
}
