//! Lattice index conventions and the cross-ratio primitive.
//!
//! Map values live on the quadrant `(n, m)`, `n, m >= 0`. Even-parity
//! vertices (`n + m` even) are circle centers and carry complex sublattice
//! labels `z = N + iM` with `N = (n-m)/2`, `M = (n+m)/2`; the quadrant maps
//! onto `V = { M >= |N| }`.

use crate::complex::Complex;
use crate::real::Real;

/// Quadrant vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeIndex {
    pub n: u32,
    pub m: u32,
}

/// Vertex parity: even vertices are circle centers, odd vertices are
/// intersection points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl LatticeIndex {
    pub fn new(n: u32, m: u32) -> Self {
        LatticeIndex { n, m }
    }

    pub fn parity(self) -> Parity {
        if (self.n + self.m).is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Sublattice label of an even vertex.
    pub fn to_sublattice(self) -> Option<SublatticeIndex> {
        if self.parity() != Parity::Even {
            return None;
        }
        let n = self.n as i64;
        let m = self.m as i64;
        Some(SublatticeIndex {
            re: (n - m) / 2,
            im: (n + m) / 2,
        })
    }
}

/// Label `z = N + iM` on the even sublattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SublatticeIndex {
    /// N
    pub re: i64,
    /// M
    pub im: i64,
}

impl SublatticeIndex {
    pub fn new(re: i64, im: i64) -> Self {
        SublatticeIndex { re, im }
    }

    /// Inverse of [`LatticeIndex::to_sublattice`]; `None` outside the
    /// quadrant image.
    pub fn to_lattice(self) -> Option<LatticeIndex> {
        let n = self.im + self.re;
        let m = self.im - self.re;
        if n < 0 || m < 0 {
            return None;
        }
        Some(LatticeIndex {
            n: n as u32,
            m: m as u32,
        })
    }

    /// `V`: the image of the quadrant, `M >= |N|`.
    pub fn in_v(self) -> bool {
        self.im >= self.re.abs()
    }

    /// `V_l`: `V` plus the phantom row `-N + i(N-1)` just under the left
    /// diagonal (used to index the boundary instances of the square-type
    /// radius equation).
    pub fn in_v_l(self) -> bool {
        self.in_v() || (self.re <= -1 && self.im == -self.re - 1)
    }

    /// `V_rint`: `V` minus both diagonals, i.e. `M > |N|`.
    pub fn in_v_rint(self) -> bool {
        self.im > self.re.abs()
    }

    /// Interior labels where the `(P, Q)` variables and the sign condition
    /// live; coincides with `V_rint` on the integer lattice.
    pub fn in_v_int(self) -> bool {
        self.in_v_rint()
    }

    pub fn translate(self, dn: i64, dm: i64) -> SublatticeIndex {
        SublatticeIndex {
            re: self.re + dn,
            im: self.im + dm,
        }
    }
}

/// Errors from the cross-ratio primitives.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("degenerate quadrilateral: |denominator| below eps * scale")]
    DegenerateQuad,
}

fn degenerate(d: &Real, scale: &Real, prec: u32) -> bool {
    let eps = Real::exp2(1 - prec as i64, prec);
    *d < &eps * scale
}

/// Cross-ratio `(f1-f2)(f3-f4) / ((f2-f3)(f4-f1))`.
pub fn cross_ratio(
    f1: &Complex,
    f2: &Complex,
    f3: &Complex,
    f4: &Complex,
) -> Result<Complex, LatticeError> {
    let prec = f1.prec().max(f2.prec()).max(f3.prec()).max(f4.prec());
    let scale = f1.abs().max(f2.abs()).max(f3.abs()).max(f4.abs());
    let a = f1 - f2;
    let b = f3 - f4;
    let c = f2 - f3;
    let d = f4 - f1;
    // No two consecutive corners may coincide.
    for side in [&a, &b, &c, &d] {
        if degenerate(&side.abs(), &scale, prec) {
            return Err(LatticeError::DegenerateQuad);
        }
    }
    Ok(&(&a * &b) / &(&c * &d))
}

/// Solve `cross_ratio(f1, f2, f3, f4) = lambda` for the third point:
/// `f3 = ((f1-f2) f4 + lambda f2 (f4-f1)) / ((f1-f2) + lambda (f4-f1))`.
pub fn solve_fourth_point(
    f1: &Complex,
    f2: &Complex,
    f4: &Complex,
    lambda: &Complex,
) -> Result<Complex, LatticeError> {
    let prec = f1.prec().max(f2.prec()).max(f4.prec()).max(lambda.prec());
    let a = f1 - f2;
    let b = f4 - f1;
    let den = &a + &(lambda * &b);
    let scale = a.abs().max(b.abs().max(lambda.abs()));
    if degenerate(&den.abs(), &scale, prec) {
        return Err(LatticeError::DegenerateQuad);
    }
    Ok(&(&(&a * f4) + &(&(lambda * f2) * &b)) / &den)
}
