//! Construction of the discrete maps and their radius fields.
//!
//! A pattern is built in two independent ways that cross-check each other:
//! the map route (axis values from the boundary constraint, interior filled
//! by cross-ratio propagation, radii read off the kites) and the radius
//! route (the square/vertex evolution over the sublattice, seeded by the
//! closed-form boundary data, with the map rebuilt from similarity ratios).

mod fit;
mod gen;
mod radii;
mod reconstruct;

pub use fit::{fit_asymptotics, fit_axis_only, FitResult};
pub use gen::{
    axis_radii, constraint_residual, equidistant_residual, generate, generate_with_ladder,
    kite_spread, m_axis_direction, vertex_edge_spread, GenDiagnostics, Generated,
};
pub use radii::{dual_field, extract_radius_field, radii_evolution, z2_field, FieldResiduals};
pub use reconstruct::reconstruct_map;

use alloc::vec::Vec;

use crate::complex::Complex;
use crate::functions::pi;
use crate::lattice::SublatticeIndex;
use crate::real::Real;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PatternError {
    #[error("bad configuration: {0}")]
    BadConfig(&'static str),
    #[error("degenerate quadrilateral while propagating at (n={n}, m={m})")]
    Degenerate { n: u32, m: u32 },
    #[error("not a kite: relative edge spread {spread} at (n={n}, m={m})")]
    NotAKite { n: u32, m: u32, spread: f64 },
    #[error("radius turned non-positive at z = {n} + {m}i (separatrix instability; raise mantissa_bits)")]
    SignLoss { n: i64, m: i64 },
    #[error("axis radii recurrence and closed form disagree at n = {0}")]
    AxisMismatch(usize),
    #[error("operation requires a field with a regular origin")]
    ExcludedOrigin,
    #[error("precision ladder exhausted at {0} bits without meeting the target residual")]
    LadderExhausted(u32),
    #[error(transparent)]
    Riccati(#[from] crate::riccati::RiccatiError),
    #[error(transparent)]
    Lattice(#[from] crate::lattice::LatticeError),
}

/// Which discrete map to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternMode {
    /// `z^gamma`, `0 < gamma < 2`.
    ZGamma,
    /// Renormalized `z^2` (zero circle at the origin).
    Z2,
    /// Dual of `Z2` (infinite circle at the origin).
    Log,
    /// Cross-ratio modulus `kappa^2 e^{-2 i alpha}`: a parallelogram-lattice
    /// analog without a circle structure.
    KappaVariant,
}

/// Full generation request.
#[derive(Debug, Clone)]
pub struct PatternConfig {
    pub mode: PatternMode,
    pub gamma: Real,
    pub alpha: Real,
    pub kappa: Real,
    /// Initial boundary direction; `gamma * alpha` unless explicitly skewed.
    pub beta: Real,
    /// True when `beta` was overridden: validation downgrades to warnings.
    pub skew: bool,
    /// Generate all vertices with `n + m <= size`.
    pub size: usize,
    pub prec: u32,
}

impl PatternConfig {
    pub fn new(
        mode: PatternMode,
        gamma: Real,
        alpha: Real,
        size: usize,
        prec: u32,
    ) -> Result<Self, PatternError> {
        let p = pi(prec);
        let window = Real::from_f64(1e-3, prec);
        if alpha < window || alpha > &p - &window {
            return Err(PatternError::BadConfig("alpha outside [1e-3, pi - 1e-3]"));
        }
        let gamma = match mode {
            PatternMode::Z2 | PatternMode::Log => Real::from_i64(2, prec),
            _ => gamma,
        };
        if matches!(mode, PatternMode::ZGamma | PatternMode::KappaVariant) {
            let zero = Real::zero(prec);
            let two = Real::from_i64(2, prec);
            if !(gamma > zero && gamma < two) {
                return Err(PatternError::BadConfig(
                    "gamma must lie in (0, 2) for this mode",
                ));
            }
        }
        if size < 2 {
            return Err(PatternError::BadConfig("size must be at least 2"));
        }
        let beta = &gamma * &alpha;
        Ok(PatternConfig {
            mode,
            gamma,
            alpha,
            kappa: Real::from_i64(1, prec),
            beta,
            skew: false,
            size,
            prec,
        })
    }

    pub fn with_kappa(mut self, kappa: Real) -> Result<Self, PatternError> {
        if !kappa.is_positive() {
            return Err(PatternError::BadConfig("kappa must be positive"));
        }
        self.kappa = kappa;
        Ok(self)
    }

    /// Override the boundary direction (generic skew initial data).
    pub fn with_beta(mut self, beta: Real) -> Self {
        self.skew = (&beta - &(&self.gamma * &self.alpha)).abs()
            > Real::exp2(-(self.prec as i64) + 8, self.prec);
        self.beta = beta;
        self
    }

    /// Cross-ratio value imposed on every elementary quadrilateral.
    pub fn lambda(&self) -> Complex {
        let k2 = &self.kappa * &self.kappa;
        Complex::cis(&-self.alpha.scale2(1)).scale(&k2)
    }
}

/// The discrete map on the triangle `n + m <= size`.
///
/// `Log` leaves the origin vertex unset (its image is at infinity).
#[derive(Debug, Clone)]
pub struct GridMap {
    pub config: PatternConfig,
    rows: Vec<Vec<Option<Complex>>>,
}

impl GridMap {
    /// An all-unset map (used by generation and by deserializers).
    pub fn empty(config: PatternConfig) -> GridMap {
        let size = config.size;
        let rows = (0..=size)
            .map(|m| alloc::vec![None; size + 1 - m])
            .collect();
        GridMap { config, rows }
    }

    pub fn size(&self) -> usize {
        self.config.size
    }

    pub fn get(&self, n: u32, m: u32) -> Option<&Complex> {
        self.rows.get(m as usize)?.get(n as usize)?.as_ref()
    }

    /// Value at a vertex known to exist.
    pub fn at(&self, n: u32, m: u32) -> &Complex {
        self.get(n, m).expect("vertex not generated")
    }

    pub fn set(&mut self, n: u32, m: u32, v: Complex) {
        self.rows[m as usize][n as usize] = Some(v);
    }

    pub fn contains(&self, n: u32, m: u32) -> bool {
        (n as usize + m as usize) <= self.config.size && self.get(n, m).is_some()
    }

    /// All generated vertices, row-major by `(n, m)`.
    pub fn vertices(&self) -> impl Iterator<Item = (u32, u32, &Complex)> {
        self.rows.iter().enumerate().flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(n, v)| v.as_ref().map(|c| (n as u32, m as u32, c)))
        })
    }

    /// Quadrilateral corners `(f_{n,m}, f_{n+1,m}, f_{n+1,m+1}, f_{n,m+1})`
    /// when all four are generated.
    pub fn quad(&self, n: u32, m: u32) -> Option<[&Complex; 4]> {
        Some([
            self.get(n, m)?,
            self.get(n + 1, m)?,
            self.get(n + 1, m + 1)?,
            self.get(n, m + 1)?,
        ])
    }

    /// Bases `(n, m)` of complete quadrilaterals.
    pub fn quad_bases(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        let size = self.config.size as u32;
        for m in 0..size {
            for n in 0..size - m {
                if self.quad(n, m).is_some() {
                    out.push((n, m));
                }
            }
        }
        out
    }
}

/// How the origin entry of a radius field is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OriginKind {
    Regular,
    /// `R_0 = 0` exactly (the `Z2` seed); excluded from positivity checks.
    Zero,
    /// `R_0` infinite (the `Log` field); the stored slot is a placeholder
    /// and every equation instance touching the origin is skipped.
    Infinite,
}

/// Radii over the sublattice `V`, rows `M = 0..=m_max`, `N in -M..=M`.
#[derive(Debug, Clone)]
pub struct RadiusField {
    pub gamma: Real,
    pub alpha: Real,
    /// `cos(alpha)`, cached.
    pub t: Real,
    pub origin: OriginKind,
    /// Mantissa width the field is nominally accurate to. Duals are stored
    /// with guard bits beyond this so that the double dual collapses back
    /// to the original values exactly.
    pub nominal_prec: u32,
    rows: Vec<Vec<Real>>,
}

impl RadiusField {
    pub(crate) fn new(gamma: Real, alpha: Real, origin: OriginKind) -> RadiusField {
        let t = crate::functions::cos(&alpha);
        let nominal_prec = gamma.prec();
        RadiusField {
            gamma,
            alpha,
            t,
            origin,
            nominal_prec,
            rows: Vec::new(),
        }
    }

    pub(crate) fn push_row(&mut self, row: Vec<Real>) {
        debug_assert_eq!(row.len(), 2 * self.rows.len() + 1);
        self.rows.push(row);
    }

    pub fn m_max(&self) -> i64 {
        self.rows.len() as i64 - 1
    }

    pub fn get(&self, z: SublatticeIndex) -> Option<&Real> {
        if !z.in_v() || z.im > self.m_max() {
            return None;
        }
        self.rows.get(z.im as usize)?.get((z.re + z.im) as usize)
    }

    /// Radius with the diagonal mirror convention extended one step past
    /// both diagonals (used by boundary instances of the square equation).
    pub fn get_mirrored(&self, z: SublatticeIndex) -> Option<&Real> {
        if z.in_v() {
            return self.get(z);
        }
        if z.re >= 1 && z.im == z.re - 1 {
            return self.get(SublatticeIndex::new(z.im, z.re));
        }
        if z.re <= -1 && z.im == -z.re - 1 {
            return self.get(SublatticeIndex::new(-z.im, -z.re));
        }
        None
    }

    /// True when the entry at `z` is a real radius (not an excluded
    /// origin placeholder).
    pub fn is_valid_entry(&self, z: SublatticeIndex) -> bool {
        if z.re == 0 && z.im == 0 {
            self.origin == OriginKind::Regular
        } else {
            true
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (SublatticeIndex, &Real)> {
        self.rows.iter().enumerate().flat_map(|(m, row)| {
            row.iter()
                .enumerate()
                .map(move |(idx, r)| (SublatticeIndex::new(idx as i64 - m as i64, m as i64), r))
        })
    }

    /// `(P, Q) = (R_{z+1}/R_{z-i}, R_z/R_{z-i})` at an interior label.
    pub fn pq_at(&self, z: SublatticeIndex) -> Option<(Real, Real)> {
        if !z.in_v_int() {
            return None;
        }
        let below = self.get(z.translate(0, -1))?;
        if !below.is_positive() {
            return None;
        }
        let right = self.get(z.translate(1, 0))?;
        let here = self.get(z)?;
        Some((right / below, here / below))
    }
}

/// One circle of a pattern.
#[derive(Debug, Clone)]
pub struct CircleEntry {
    pub z: SublatticeIndex,
    pub center: Complex,
    pub radius: Real,
}

/// A square grid circle pattern: circles indexed by `V` plus the adjacency
/// implied by the lattice (neighbors intersect at `alpha` or `pi - alpha`,
/// diagonal half-neighbors are tangent).
#[derive(Debug, Clone)]
pub struct CirclePattern {
    pub alpha: Real,
    pub circles: Vec<CircleEntry>,
}

/// Kind of adjacency between two circles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdjacencyKind {
    /// `z, z+i`: intersection angle `alpha`.
    Vertical,
    /// `z, z+1`: intersection angle `pi - alpha`.
    Horizontal,
    /// `z, z+1+i` or `z, z-1+i`: tangent.
    Diagonal,
}

impl CirclePattern {
    /// Build the pattern of a kite map: centers at even vertices, radii the
    /// mean incident edge length. Degenerate origins are skipped.
    pub fn from_map(map: &GridMap, kite_tol: &Real) -> Result<CirclePattern, PatternError> {
        let field = extract_radius_field(map, kite_tol)?;
        let mut circles = Vec::new();
        for (z, r) in field.entries() {
            if !field.is_valid_entry(z) || !r.is_positive() {
                continue;
            }
            let l = z.to_lattice().expect("V maps into the quadrant");
            if let Some(center) = map.get(l.n, l.m) {
                circles.push(CircleEntry {
                    z,
                    center: center.clone(),
                    radius: r.clone(),
                });
            }
        }
        Ok(CirclePattern {
            alpha: map.config.alpha.clone(),
            circles,
        })
    }

    /// All adjacent index pairs present in the pattern.
    pub fn adjacencies(&self) -> Vec<(usize, usize, AdjacencyKind)> {
        use alloc::collections::BTreeMap;
        let mut index: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (i, c) in self.circles.iter().enumerate() {
            index.insert((c.z.re, c.z.im), i);
        }
        let mut out = Vec::new();
        for (i, c) in self.circles.iter().enumerate() {
            let z = c.z;
            let neighbors = [
                (z.translate(0, 1), AdjacencyKind::Vertical),
                (z.translate(1, 0), AdjacencyKind::Horizontal),
                (z.translate(1, 1), AdjacencyKind::Diagonal),
                (z.translate(-1, 1), AdjacencyKind::Diagonal),
            ];
            for (w, kind) in neighbors {
                if let Some(&j) = index.get(&(w.re, w.im)) {
                    out.push((i, j, kind));
                }
            }
        }
        out
    }
}
