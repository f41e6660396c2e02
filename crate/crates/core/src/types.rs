//! Domain types: evaluation points, spectral parameters and the coordinate
//! conventions on the zero-sum hyperplane.

use crate::error::{DunklError, Result};

/// Relative tolerance for membership in the zero-sum hyperplane.
pub const HYPERPLANE_TOL: f64 = 1e-12;

/// Default chamber-wall guard, scaled by the norm of the spectral point.
pub const WALL_GUARD: f64 = 1e-9;

/// The six permutations of three letters, paired with their signs.
/// Order: identity first, then transpositions, then the two 3-cycles.
pub const S3: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 0, 2], -1.0),
    ([2, 1, 0], -1.0),
    ([0, 2, 1], -1.0),
    ([2, 0, 1], 1.0),
    ([1, 2, 0], 1.0),
];

/// An evaluation argument in R^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    coords: [f64; 3],
}

impl Point3 {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self> {
        for v in [x1, x2, x3] {
            if !v.is_finite() {
                return Err(DunklError::NonFinite { value: v });
            }
        }
        Ok(Self {
            coords: [x1, x2, x3],
        })
    }

    pub const fn coords(&self) -> [f64; 3] {
        self.coords
    }

    pub const fn get(&self, i: usize) -> f64 {
        self.coords[i]
    }

    pub fn dot(&self, other: &Point3) -> f64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, c: f64) -> Point3 {
        Point3 {
            coords: [c * self.coords[0], c * self.coords[1], c * self.coords[2]],
        }
    }

    /// Coordinates permuted by `perm`: the result's i-th coordinate is the
    /// `perm[i]`-th coordinate of `self`.
    pub fn permuted(&self, perm: &[usize; 3]) -> Point3 {
        Point3 {
            coords: [
                self.coords[perm[0]],
                self.coords[perm[1]],
                self.coords[perm[2]],
            ],
        }
    }

    /// Swap coordinates `i` and `j` (the reflection in the root `e_i - e_j`).
    pub fn swapped(&self, i: usize, j: usize) -> Point3 {
        let mut c = self.coords;
        c.swap(i, j);
        Point3 { coords: c }
    }

    /// Shift coordinate `i` by `h`.
    pub fn shifted(&self, i: usize, h: f64) -> Point3 {
        let mut c = self.coords;
        c[i] += h;
        Point3 { coords: c }
    }

    pub fn zero() -> Point3 {
        Point3 { coords: [0.0; 3] }
    }
}

/// Product of the positive-root evaluations, for an arbitrary point.
pub fn vandermonde_point(p: &Point3) -> f64 {
    let [x1, x2, x3] = p.coords();
    (x1 - x2) * (x1 - x3) * (x2 - x3)
}

/// Spectral parameter: a strictly ordered, zero-sum triple in the open
/// chamber `l3 < l2 < l1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChamberPoint {
    lambda: [f64; 3],
}

impl ChamberPoint {
    pub fn new(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        Self::with_guard(l1, l2, l3, WALL_GUARD)
    }

    /// Build with an explicit relative wall guard: both chamber gaps must
    /// exceed `guard * max(1, ||lambda||)`.
    pub fn with_guard(l1: f64, l2: f64, l3: f64, guard: f64) -> Result<Self> {
        for v in [l1, l2, l3] {
            if !v.is_finite() {
                return Err(DunklError::NonFinite { value: v });
            }
        }
        let max_abs = l1.abs().max(l2.abs()).max(l3.abs());
        let sum = l1 + l2 + l3;
        if sum.abs() > HYPERPLANE_TOL * max_abs.max(1.0) {
            return Err(DunklError::ChamberViolation {
                reason: format!("coordinates must sum to zero, got sum {sum:e}"),
            });
        }
        let norm = (l1 * l1 + l2 * l2 + l3 * l3).sqrt();
        let wall = guard * norm.max(1.0);
        if !(l1 - l2 > wall && l2 - l3 > wall) {
            return Err(DunklError::ChamberViolation {
                reason: format!(
                    "strict ordering l3 < l2 < l1 violated or too close to a wall \
                     (gaps {:e}, {:e}, guard {wall:e})",
                    l1 - l2,
                    l2 - l3
                ),
            });
        }
        Ok(Self {
            lambda: [l1, l2, l3],
        })
    }

    pub const fn coords(&self) -> [f64; 3] {
        self.lambda
    }

    pub const fn l1(&self) -> f64 {
        self.lambda[0]
    }

    pub const fn l2(&self) -> f64 {
        self.lambda[1]
    }

    pub const fn l3(&self) -> f64 {
        self.lambda[2]
    }

    pub fn as_point(&self) -> Point3 {
        Point3 {
            coords: self.lambda,
        }
    }

    pub fn norm(&self) -> f64 {
        self.as_point().norm()
    }

    /// Positive scaling stays inside the chamber.
    pub fn scaled(&self, c: f64) -> Result<ChamberPoint> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(DunklError::NonFinite { value: c });
        }
        ChamberPoint::new(c * self.l1(), c * self.l2(), c * self.l3())
    }

    /// Vandermonde product `(l1-l2)(l1-l3)(l2-l3)`, strictly positive on the
    /// open chamber.
    pub fn vandermonde(&self) -> f64 {
        vandermonde_point(&self.as_point())
    }

    pub fn invariants(&self) -> ChamberInvariants {
        let [l1, l2, l3] = self.lambda;
        ChamberInvariants {
            vandermonde: self.vandermonde(),
            a: l1 * l2 + l1 * l3 + l2 * l3,
            b: -l1 * l2 * l3,
        }
    }
}

/// Symmetric functions of the spectral point that appear throughout the
/// kernel integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChamberInvariants {
    /// `(l1-l2)(l1-l3)(l2-l3)`, positive on the open chamber.
    pub vandermonde: f64,
    /// Second elementary symmetric function `l1 l2 + l1 l3 + l2 l3`.
    pub a: f64,
    /// Negated third elementary symmetric function `-l1 l2 l3`.
    pub b: f64,
}

/// Positive multiplicity parameter on the reflection terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultiplicityParam {
    k: f64,
}

impl MultiplicityParam {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(DunklError::NonFinite { value: k });
        }
        if k <= 0.0 {
            return Err(DunklError::InvalidMultiplicity { k });
        }
        Ok(Self { k })
    }

    pub const fn get(&self) -> f64 {
        self.k
    }

    /// Shifted parameter `k + 1`, used by the moment identities.
    pub fn raised(&self) -> MultiplicityParam {
        MultiplicityParam { k: self.k + 1.0 }
    }
}

/// Order of a normalized one-variable Bessel function; the integral
/// representation requires `alpha > -1/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselOrder {
    alpha: f64,
}

impl BesselOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(DunklError::NonFinite { value: alpha });
        }
        if alpha <= -0.5 {
            return Err(DunklError::InvalidBesselOrder { alpha });
        }
        Ok(Self { alpha })
    }

    pub const fn get(&self) -> f64 {
        self.alpha
    }
}

/// Coordinates of a point of the zero-sum hyperplane in the basis
/// `(e1 - e3, e2 - e3)`, together with the rotated pair
/// `x = (n1+n2)/2, y = (n1-n2)/2` used by the density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitCoordinates {
    pub nu1: f64,
    pub nu2: f64,
}

impl OrbitCoordinates {
    pub fn new(nu1: f64, nu2: f64) -> Self {
        Self { nu1, nu2 }
    }

    pub fn from_xy(x: f64, y: f64) -> Self {
        Self {
            nu1: x + y,
            nu2: x - y,
        }
    }

    /// Ambient representative `nu1 (e1-e3) + nu2 (e2-e3) = (nu1, nu2, -nu1-nu2)`.
    pub fn embedded(&self) -> Point3 {
        Point3 {
            coords: [self.nu1, self.nu2, -self.nu1 - self.nu2],
        }
    }

    pub fn xy(&self) -> (f64, f64) {
        ((self.nu1 + self.nu2) / 2.0, (self.nu1 - self.nu2) / 2.0)
    }

    /// Pairing with an ambient point; algebraically equal to
    /// `(m1+m2-2m3) x + (m1-m2) y`.
    pub fn pairing(&self, mu: &Point3) -> f64 {
        mu.dot(&self.embedded())
    }

    /// Membership in the hull of the orbit of `lambda`: every coordinate of
    /// the embedded representative lies in `[l3, l1]`.
    pub fn in_orbit_hull(&self, lambda: &ChamberPoint) -> bool {
        let p = self.embedded();
        (0..3).all(|i| p.get(i) >= lambda.l3() && p.get(i) <= lambda.l1())
    }
}
