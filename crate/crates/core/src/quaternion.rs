//! Quaternion algebra and rotations of R^3.
//!
//! Rotations follow `R_q(p) = q^{-1} p q`; the opposite convention
//! `L_q(p) = q p q^{-1}` is available as [`rotate_left`]. For
//! `q = cos t + u sin t` the map `R_q` turns space by `2t` about `u` in the
//! clockwise (left-hand) sense, while `L_q` turns it counter-clockwise.

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{GeomError, Result};
use crate::tol;

/// A point or vector of R^3, identified with the pure quaternion `x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn distance(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self * (1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// `a + b i + c j + d k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Quaternion {
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    pub fn from_pure(v: Vec3) -> Self {
        Self::new(0.0, v.x, v.y, v.z)
    }

    pub fn from_array(x: [f64; 4]) -> Self {
        Self::new(x[0], x[1], x[2], x[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn real(self) -> f64 {
        self.a
    }

    pub fn pure(self) -> Vec3 {
        Vec3::new(self.b, self.c, self.d)
    }

    pub fn conj(self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    pub fn norm_sqr(self) -> f64 {
        self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Euclidean inner product on R^4.
    pub fn dot(self, o: Quaternion) -> f64 {
        self.a * o.a + self.b * o.b + self.c * o.c + self.d * o.d
    }

    /// `conj(q) / |q|^2`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(GeomError::ZeroQuaternion);
        }
        Ok(self.conj() * (1.0 / n))
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        Quaternion::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    /// Hamilton product: `ij = k`, `jk = i`, `ki = j` and `i^2 = j^2 = k^2 = -1`.
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (self.a, self.b, self.c, self.d);
        let (a2, b2, c2, d2) = (o.a, o.b, o.c, o.d);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

/// A quaternion of norm 1, i.e. a point of S^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const IDENTITY: UnitQuaternion = UnitQuaternion(Quaternion::ONE);

    /// Accepts `q` whose norm is within the geometric tolerance of 1 and
    /// renormalizes it.
    pub fn new(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if !n.is_finite() || (n - 1.0).abs() > tol::GEOMETRIC {
            return Err(GeomError::NotUnit(n));
        }
        Ok(Self(q * (1.0 / n)))
    }

    /// Scales any nonzero quaternion onto S^3.
    pub fn normalize(q: Quaternion) -> Result<Self> {
        let n = q.norm();
        if n == 0.0 {
            return Err(GeomError::ZeroQuaternion);
        }
        if !n.is_finite() {
            return Err(GeomError::NonFinite("quaternion"));
        }
        Ok(Self(q * (1.0 / n)))
    }

    pub fn get(self) -> Quaternion {
        self.0
    }

    pub fn conj(self) -> Self {
        Self(self.0.conj())
    }

    pub fn neg(self) -> Self {
        Self(-self.0)
    }

    pub fn mul(self, o: UnitQuaternion) -> Self {
        Self(self.0 * o.0)
    }
}

fn check_pure(q: Quaternion, scale: f64) -> Vec3 {
    debug_assert!(q.a.abs() <= 1e-12 * (1.0 + scale), "real part {} survived", q.a);
    q.pure()
}

/// `R_q(p) = q^{-1} p q`.
pub fn rotate_right(q: Quaternion, p: Vec3) -> Result<Vec3> {
    let r = q.inverse()? * Quaternion::from_pure(p) * q;
    Ok(check_pure(r, p.norm()))
}

/// `L_q(p) = q p q^{-1}`, equal to `R_{conj q}`.
pub fn rotate_left(q: Quaternion, p: Vec3) -> Result<Vec3> {
    let r = q * Quaternion::from_pure(p) * q.inverse()?;
    Ok(check_pure(r, p.norm()))
}

/// Writes `q = cos t + u sin t` and returns `(u, 2t)` with the angle in
/// `[0, 2 pi)`. The axis is flipped so its first nonzero component is
/// positive, which makes `q` and `-q` canonicalize identically. Near the
/// identity the axis defaults to `(1, 0, 0)` with angle 0.
pub fn axis_angle(q: UnitQuaternion) -> (Vec3, f64) {
    let q = q.get();
    let v = q.pure();
    let s = v.norm();
    if s < tol::GEOMETRIC {
        return (Vec3::X, 0.0);
    }
    let mut axis = v * (1.0 / s);
    let mut half = s.atan2(q.a);
    let first = [axis.x, axis.y, axis.z]
        .into_iter()
        .find(|c| c.abs() > tol::ARITHMETIC)
        .unwrap_or(0.0);
    if first < 0.0 {
        axis = -axis;
        half = -half;
    }
    let angle = (2.0 * half).rem_euclid(TAU);
    // rem_euclid can land on TAU itself for tiny negative inputs
    (axis, if angle >= TAU { 0.0 } else { angle })
}

/// `cos(angle/2) + u sin(angle/2)` for the normalized `axis`.
pub fn from_axis_angle(axis: Vec3, angle: f64) -> Result<UnitQuaternion> {
    let u = axis
        .normalized()
        .ok_or_else(|| GeomError::InvalidArgument("rotation axis must be nonzero".into()))?;
    let (s, c) = (angle / 2.0).sin_cos();
    UnitQuaternion::normalize(Quaternion::new(c, u.x * s, u.y * s, u.z * s))
}

/// 2x2 complex matrix `[[z1, conj z2], [-z2, conj z1]]`.
///
/// The housed quaternion is `a + b i + c j + d k` with `z1 = a + b i` and
/// `z2 = c - d i`; with this pairing the matrix product follows the
/// quaternion product in the same order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Matrix {
    pub m: [[Complex; 2]; 2],
}

impl Su2Matrix {
    pub fn mul(&self, o: &Su2Matrix) -> Su2Matrix {
        let (p, q) = (&self.m, &o.m);
        Su2Matrix {
            m: [
                [
                    p[0][0] * q[0][0] + p[0][1] * q[1][0],
                    p[0][0] * q[0][1] + p[0][1] * q[1][1],
                ],
                [
                    p[1][0] * q[0][0] + p[1][1] * q[1][0],
                    p[1][0] * q[0][1] + p[1][1] * q[1][1],
                ],
            ],
        }
    }

    pub fn add(&self, o: &Su2Matrix) -> Su2Matrix {
        let mut m = self.m;
        for (r, row) in m.iter_mut().enumerate() {
            for (c, v) in row.iter_mut().enumerate() {
                *v += o.m[r][c];
            }
        }
        Su2Matrix { m }
    }

    pub fn determinant(&self) -> Complex {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn max_abs_diff(&self, o: &Su2Matrix) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - o.m[r][c]).norm());
            }
        }
        worst
    }
}

pub fn to_su2(q: Quaternion) -> Su2Matrix {
    let z1 = Complex::new(q.a, q.b);
    let z2 = Complex::new(q.c, -q.d);
    Su2Matrix {
        m: [[z1, z2.conj()], [-z2, z1.conj()]],
    }
}

pub fn from_su2(m: &Su2Matrix) -> Result<Quaternion> {
    let [[z1, w], [neg_z2, z1c]] = m.m;
    let t = tol::ARITHMETIC * (1.0 + z1.norm() + w.norm());
    if (z1c - z1.conj()).norm() > t || (neg_z2 + w.conj()).norm() > t {
        return Err(GeomError::MalformedMatrix);
    }
    // w = conj z2 = c + d i
    Ok(Quaternion::new(z1.re, z1.im, w.re, w.im))
}

/// `q -> g q h`, an isometry of R^4 preserving S^3.
pub fn so4_action(g: UnitQuaternion, h: UnitQuaternion, q: Quaternion) -> Quaternion {
    g.get() * q * h.get()
}

/// Angle between two nonzero quaternions as vectors of R^4.
pub fn angle_between(p: Quaternion, q: Quaternion) -> f64 {
    (p.dot(q) / (p.norm() * q.norm())).clamp(-1.0, 1.0).acos()
}
