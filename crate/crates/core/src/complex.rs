//! Complex points on the pattern plane.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::functions::{atan2, sin_cos};
use crate::real::Real;

/// A complex number whose parts share a mantissa width.
#[derive(Clone, PartialEq, Eq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Complex {
        Complex { re, im }
    }

    pub fn zero(prec: u32) -> Complex {
        Complex {
            re: Real::zero(prec),
            im: Real::zero(prec),
        }
    }

    pub fn one(prec: u32) -> Complex {
        Complex {
            re: Real::from_i64(1, prec),
            im: Real::zero(prec),
        }
    }

    pub fn from_real(re: Real) -> Complex {
        let prec = re.prec();
        Complex {
            re,
            im: Real::zero(prec),
        }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Complex {
        Complex {
            re: Real::from_f64(re, prec),
            im: Real::from_f64(im, prec),
        }
    }

    /// `r * e^(i theta)`.
    pub fn from_polar(r: &Real, theta: &Real) -> Complex {
        let (s, c) = sin_cos(theta);
        Complex {
            re: r * &c,
            im: r * &s,
        }
    }

    /// `e^(i theta)`.
    pub fn cis(theta: &Real) -> Complex {
        let (s, c) = sin_cos(theta);
        Complex { re: c, im: s }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Squared modulus.
    pub fn abs_sq(&self) -> Real {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    /// Modulus.
    pub fn abs(&self) -> Real {
        self.abs_sq().sqrt()
    }

    /// Argument in (-pi, pi].
    pub fn arg(&self) -> Real {
        atan2(&self.im, &self.re)
    }

    pub fn scale(&self, s: &Real) -> Complex {
        Complex {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    fn mul_impl(&self, o: &Complex) -> Complex {
        Complex {
            re: &(&self.re * &o.re) - &(&self.im * &o.im),
            im: &(&self.re * &o.im) + &(&self.im * &o.re),
        }
    }

    fn div_impl(&self, o: &Complex) -> Complex {
        let d = o.abs_sq();
        assert!(!d.is_zero(), "complex division by zero");
        Complex {
            re: &(&(&self.re * &o.re) + &(&self.im * &o.im)) / &d,
            im: &(&(&self.im * &o.re) - &(&self.re * &o.im)) / &d,
        }
    }

    fn add_impl(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }

    fn sub_impl(&self, o: &Complex) -> Complex {
        Complex {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

macro_rules! cbinop {
    ($trait:ident, $method:ident, $impl_fn:ident) => {
        impl<'a, 'b> $trait<&'b Complex> for &'a Complex {
            type Output = Complex;
            fn $method(self, rhs: &'b Complex) -> Complex {
                self.$impl_fn(rhs)
            }
        }
        impl $trait<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$impl_fn(&rhs)
            }
        }
    };
}

cbinop!(Add, add, add_impl);
cbinop!(Sub, sub, sub_impl);
cbinop!(Mul, mul, mul_impl);
cbinop!(Div, div, div_impl);

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}
impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        -&self
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::pi;

    fn c(re: f64, im: f64) -> Complex {
        Complex::from_f64(re, im, 53)
    }

    #[test]
    fn field_ops() {
        let a = c(1.0, 2.0);
        let b = c(3.0, -1.0);
        let p = &a * &b;
        assert_eq!(p.re.to_f64(), 5.0);
        assert_eq!(p.im.to_f64(), 5.0);
        let q = &p / &b;
        assert!((&q - &a).abs().to_f64() < 1e-15);
    }

    #[test]
    fn polar_and_arg() {
        let theta = &pi(106) / &Real::from_i64(6, 106);
        let z = Complex::from_polar(&Real::from_i64(2, 106), &theta);
        assert!((z.abs().to_f64() - 2.0).abs() < 1e-15);
        assert!((z.arg().to_f64() - core::f64::consts::FRAC_PI_6).abs() < 1e-15);
    }

    #[test]
    fn conj_mul_is_abs_sq() {
        let z = c(3.0, 4.0);
        let w = &z * &z.conj();
        assert_eq!(w.re.to_f64(), 25.0);
        assert_eq!(w.im.to_f64(), 0.0);
        assert_eq!(z.abs().to_f64(), 5.0);
    }
}
