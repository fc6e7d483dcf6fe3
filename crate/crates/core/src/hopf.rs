//! The Hopf fibration `S^3 -> S^2`, as `(z1, z2) -> z2 / z1` on the Riemann
//! sphere and as the quaternionic maps `q -> q^-1 p q` and `q -> q p q^-1`,
//! with fibers, latitudinal tori, handedness and the Villarceau section.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::complex::{arg, Complex};
use crate::error::{GeomError, Result};
use crate::fit::{fit_torus_of_revolution, TorusFit};
use crate::inversion::{apollonian_families, Family, GeneralizedCircle};
use crate::moebius::RiemannPoint;
use crate::point::ExtPoint;
use crate::quaternion::{rotate_left, rotate_right, Quaternion, UnitQuaternion, Vec3};
use crate::scene::Curve3;
use crate::stereo::{S2Point, SpherePoint, StereoChart};
use crate::tol;

pub const CHART_DESCRIPTION: &str =
    "unit spheres projected from the last-coordinate pole onto the equatorial hyperplane";

/// Sign of the linking number of two distinct right-handed fibers, both
/// oriented by increasing phase.
pub const LINK_SIGN: i64 = 1;

/// Default half length of the line a fiber through the projection pole becomes.
pub const DEFAULT_CLIP_RADIUS: f64 = 10.0;

/// Point of S^3 as a pair of complex numbers, `z1 = x1 + i x2`, `z2 = x3 + i x4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct S3Point {
    pub z1: Complex,
    pub z2: Complex,
}

impl S3Point {
    /// Accepts pairs with `|z1|^2 + |z2|^2` within `1e-9` of 1 and renormalizes.
    pub fn new(z1: Complex, z2: Complex) -> Result<Self> {
        let n = (z1.norm_sqr() + z2.norm_sqr()).sqrt();
        if !n.is_finite() {
            return Err(GeomError::NonFinite("S^3 point"));
        }
        if (n - 1.0).abs() > tol::GEOMETRIC {
            return Err(GeomError::NotUnit(n));
        }
        Ok(Self { z1: z1 / n, z2: z2 / n })
    }

    pub fn from_coords(x: [f64; 4]) -> Result<Self> {
        Self::new(Complex::new(x[0], x[1]), Complex::new(x[2], x[3]))
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.z1.re, self.z1.im, self.z2.re, self.z2.im]
    }

    pub fn sphere_point(&self) -> SpherePoint<4> {
        SpherePoint(self.coords())
    }

    /// `a + b i + c j + d k` read as `(a + b i, c + d i)`.
    pub fn from_quaternion(q: UnitQuaternion) -> Self {
        let q = q.get();
        Self {
            z1: Complex::new(q.a, q.b),
            z2: Complex::new(q.c, q.d),
        }
    }

    pub fn to_quaternion(&self) -> UnitQuaternion {
        UnitQuaternion::normalize(Quaternion::from_array(self.coords())).expect("unit by construction")
    }

    fn unchecked(x: [f64; 4]) -> Self {
        Self {
            z1: Complex::new(x[0], x[1]),
            z2: Complex::new(x[2], x[3]),
        }
    }
}

/// `z2 / z1`, infinite when `z1 = 0`.
pub fn riemann_value(p: &S3Point) -> RiemannPoint {
    if p.z1.norm_sqr() == 0.0 {
        RiemannPoint::Infinity
    } else {
        RiemannPoint::Finite(p.z2 / p.z1)
    }
}

/// Riemann-sphere value of a point of S^2 through the stereographic chart.
pub fn riemann_of_base(b: &S2Point) -> RiemannPoint {
    match StereoChart::<2>::project(b) {
        ExtPoint::Finite([x, y]) => RiemannPoint::finite(x, y),
        ExtPoint::Infinity => RiemannPoint::Infinity,
    }
}

/// The Hopf map in real coordinates:
/// `(2(x1 x3 + x2 x4), 2(x1 x4 - x2 x3), x3^2 + x4^2 - x1^2 - x2^2)`.
pub fn hopf_map(p: &S3Point) -> S2Point {
    let [x1, x2, x3, x4] = p.coords();
    let v = [
        2.0 * (x1 * x3 + x2 * x4),
        2.0 * (x1 * x4 - x2 * x3),
        x3 * x3 + x4 * x4 - x1 * x1 - x2 * x2,
    ];
    SpherePoint::normalize(v).expect("image of a unit pair has unit norm")
}

/// Which presentation of the fibration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HopfVariant {
    /// `(z1, z2) -> z2 / z1`.
    Riemann,
    /// `q -> q^-1 p q`.
    QuatRight,
    /// `q -> q p q^-1`.
    QuatLeft,
}

impl HopfVariant {
    pub const ALL: [HopfVariant; 3] = [HopfVariant::Riemann, HopfVariant::QuatRight, HopfVariant::QuatLeft];

    pub fn name(self) -> &'static str {
        match self {
            HopfVariant::Riemann => "riemann",
            HopfVariant::QuatRight => "quat-right",
            HopfVariant::QuatLeft => "quat-left",
        }
    }

    pub fn handedness(self) -> Handedness {
        match self {
            HopfVariant::Riemann | HopfVariant::QuatRight => Handedness::Right,
            HopfVariant::QuatLeft => Handedness::Left,
        }
    }
}

impl fmt::Display for HopfVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HopfVariant {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "riemann" => Ok(HopfVariant::Riemann),
            "quat-right" | "quat_right" => Ok(HopfVariant::QuatRight),
            "quat-left" | "quat_left" => Ok(HopfVariant::QuatLeft),
            _ => Err(GeomError::InvalidArgument(format!("unknown variant {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Handedness {
    Right,
    Left,
}

impl Handedness {
    pub fn name(self) -> &'static str {
        match self {
            Handedness::Right => "right",
            Handedness::Left => "left",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartPole {
    North,
    South,
}

/// Signed coordinate permutation carrying pure quaternions `(i, j, k)` onto
/// base-sphere coordinates: `out[k] = signs[k] * v[perm[k]]`, followed by a
/// flip of the last coordinate when the base chart projects from the south
/// pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Alignment {
    pub perm: [usize; 3],
    pub signs: [f64; 3],
    pub pole: ChartPole,
}

/// Result of [`calibrate_alignment`], frozen.
pub const CANONICAL_ALIGNMENT: Alignment = Alignment {
    perm: [2, 1, 0],
    signs: [1.0, -1.0, -1.0],
    pole: ChartPole::North,
};

impl Alignment {
    pub fn apply(&self, v: Vec3) -> Vec3 {
        let g = v.to_array();
        let mut out: [f64; 3] = std::array::from_fn(|k| self.signs[k] * g[self.perm[k]]);
        if self.pole == ChartPole::South {
            out[2] = -out[2];
        }
        Vec3::from_array(out)
    }

    pub fn unapply(&self, b: Vec3) -> Vec3 {
        let mut b = b.to_array();
        if self.pole == ChartPole::South {
            b[2] = -b[2];
        }
        let mut g = [0.0; 3];
        for k in 0..3 {
            g[self.perm[k]] = self.signs[k] * b[k];
        }
        Vec3::from_array(g)
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Searches the signed coordinate permutations (north chart first, then
/// south) for the first alignment under which `q -> q^-1 i q` equals the Hopf
/// map to `1e-10` on `samples` random unit quaternions.
pub fn calibrate_alignment(samples: usize, seed: u64) -> Option<Alignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<(Vec3, [f64; 3])> = (0..samples)
        .map(|_| {
            let x: [f64; 4] = std::array::from_fn(|_| StandardNormal.sample(&mut rng));
            let q = UnitQuaternion::normalize(Quaternion::from_array(x)).expect("nonzero sample");
            let g = rotate_right(q.get(), Vec3::X).expect("unit quaternion");
            (g, hopf_map(&S3Point::from_quaternion(q)).coords())
        })
        .collect();
    for pole in [ChartPole::North, ChartPole::South] {
        for perm in PERMUTATIONS {
            for bits in 0..8u32 {
                let signs = std::array::from_fn(|k| if bits >> (2 - k) & 1 == 1 { -1.0 } else { 1.0 });
                let a = Alignment { perm, signs, pole };
                let fits = data.iter().all(|(g, f)| {
                    let out = a.apply(*g).to_array();
                    (0..3).all(|k| (out[k] - f[k]).abs() <= 1e-10)
                });
                if fits {
                    return Some(a);
                }
            }
        }
    }
    None
}

/// A presentation of the fibration together with its frozen alignment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopfConvention {
    pub variant: HopfVariant,
    /// The point `p` of the quaternionic maps, a unit pure quaternion.
    pub base_point: Vec3,
    pub alignment: Alignment,
}

impl Default for HopfConvention {
    fn default() -> Self {
        Self::new(HopfVariant::Riemann)
    }
}

impl HopfConvention {
    pub fn new(variant: HopfVariant) -> Self {
        Self {
            variant,
            base_point: Vec3::X,
            alignment: CANONICAL_ALIGNMENT,
        }
    }

    pub fn with_base_point(mut self, p: Vec3) -> Result<Self> {
        self.base_point = p
            .normalized()
            .ok_or_else(|| GeomError::InvalidArgument("base point must be nonzero".into()))?;
        Ok(self)
    }
}

/// `q^-1 p q` (right variant) or `q p q^-1` (left variant), in quaternion
/// coordinates; the Riemann variant returns the Hopf map of `q` read as a pair.
pub fn quat_hopf(conv: &HopfConvention, q: UnitQuaternion) -> Vec3 {
    match conv.variant {
        HopfVariant::Riemann => Vec3::from_array(hopf_map(&S3Point::from_quaternion(q)).coords()),
        HopfVariant::QuatRight => rotate_right(q.get(), conv.base_point).expect("unit quaternion"),
        HopfVariant::QuatLeft => rotate_left(q.get(), conv.base_point).expect("unit quaternion"),
    }
}

/// Base point of `x` under the convention, in base-sphere coordinates.
pub fn project_to_base(conv: &HopfConvention, x: &S3Point) -> S2Point {
    match conv.variant {
        HopfVariant::Riemann => hopf_map(x),
        _ => {
            let v = conv.alignment.apply(quat_hopf(conv, x.to_quaternion()));
            SpherePoint::normalize(v.to_array()).expect("rotation preserves norm")
        }
    }
}

/// A unit `q` with `q^-1 p q = t`.
fn rotation_taking(p: Vec3, t: Vec3) -> Quaternion {
    let direct = |p: Vec3, t: Vec3| {
        let q = Quaternion::ONE - Quaternion::from_pure(p) * Quaternion::from_pure(t);
        q * (1.0 / q.norm())
    };
    if p.dot(t) >= 0.0 {
        direct(p, t)
    } else {
        // turn p to -p about a perpendicular axis first
        let helper = [Vec3::X, Vec3::Y, Vec3::Z]
            .into_iter()
            .min_by(|a, b| a.dot(p).abs().total_cmp(&b.dot(p).abs()))
            .expect("three axes");
        let w = p.cross(helper).normalized().expect("helper is not parallel to p");
        Quaternion::from_pure(w) * direct(-p, t)
    }
}

/// One sampled fiber: `cos(t) representative + sin(t) direction`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberCurve {
    pub base: S2Point,
    pub variant: HopfVariant,
    pub representative: S3Point,
    /// Unit tangent at the representative; orthogonal to it.
    pub direction: S3Point,
    pub samples: Vec<S3Point>,
}

impl FiberCurve {
    pub fn point_at(&self, t: f64) -> S3Point {
        let (s, c) = t.sin_cos();
        let (u, v) = (self.representative.coords(), self.direction.coords());
        S3Point::unchecked(std::array::from_fn(|k| c * u[k] + s * v[k]))
    }

    /// The sampled points in R^4.
    pub fn coords(&self) -> Vec<[f64; 4]> {
        self.samples.iter().map(S3Point::coords).collect()
    }
}

/// The full fiber over `base` sampled at `n >= 8` equally spaced phases.
///
/// For the Riemann variant the representative is `(1, z) / sqrt(1 + |z|^2)`,
/// or `(0, 1)` over infinity, and the fiber is `(e^(it) z1, e^(it) z2)`.
pub fn fiber(conv: &HopfConvention, base: &S2Point, n: usize) -> Result<FiberCurve> {
    if n < 8 {
        return Err(GeomError::InvalidArgument(format!("a fiber needs at least 8 samples, got {n}")));
    }
    let ident = |q: Quaternion| S3Point::unchecked(q.to_array());
    let (rep, dir) = match conv.variant {
        HopfVariant::Riemann => {
            let rep = match riemann_of_base(base) {
                RiemannPoint::Infinity => S3Point::unchecked([0.0, 0.0, 1.0, 0.0]),
                RiemannPoint::Finite(z) => {
                    let s = (1.0 + z.norm_sqr()).sqrt();
                    S3Point {
                        z1: Complex::new(1.0 / s, 0.0),
                        z2: z / s,
                    }
                }
            };
            let i = Complex::new(0.0, 1.0);
            (rep, S3Point { z1: rep.z1 * i, z2: rep.z2 * i })
        }
        HopfVariant::QuatRight | HopfVariant::QuatLeft => {
            let target = conv.alignment.unapply(Vec3::from_array(base.coords()));
            let q0 = rotation_taking(conv.base_point, target);
            let p = Quaternion::from_pure(conv.base_point);
            if conv.variant == HopfVariant::QuatRight {
                // q^-1 p q is unchanged by q -> e^(s p) q
                (ident(q0), ident(p * q0))
            } else {
                (ident(q0.conj()), ident(q0.conj() * p))
            }
        }
    };
    let mut f = FiberCurve {
        base: *base,
        variant: conv.variant,
        representative: rep,
        direction: dir,
        samples: Vec::with_capacity(n),
    };
    f.samples = (0..n).map(|k| f.point_at(2.0 * PI * k as f64 / n as f64)).collect();
    Ok(f)
}

/// Plane and complex-line test for a sampled closed curve in S^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatCircleCheck {
    pub is_great: bool,
    /// Largest deviation of a sample norm from 1.
    pub norm_residual: f64,
    /// Third and fourth singular values of the sample matrix over `sqrt(n)`.
    pub plane_residual: f64,
    /// Coefficients `(a, b)` of the fitted complex line `a z1 + b z2 = 0`.
    pub line: (Complex, Complex),
    pub line_residual: f64,
    pub is_complex_line: bool,
}

/// Whether the samples lie on a great circle: unit norm and a 2-plane through
/// the origin of R^4, both to `1e-9`. Also fits the complex line through them.
pub fn is_great_circle(samples: &[S3Point]) -> Result<GreatCircleCheck> {
    if samples.len() < 8 {
        return Err(GeomError::InvalidArgument("great-circle test needs at least 8 samples".into()));
    }
    let n = samples.len() as f64;
    let m = DMatrix::from_fn(samples.len(), 4, |i, j| samples[i].coords()[j]);
    let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    if sv[1] / n.sqrt() <= 1e-6 {
        return Err(GeomError::RankDeficient("samples do not span a plane"));
    }
    let plane_residual = sv[2] / n.sqrt();
    let norm_residual = samples
        .iter()
        .map(|p| ((p.z1.norm_sqr() + p.z2.norm_sqr()).sqrt() - 1.0).abs())
        .fold(0.0, f64::max);

    // smallest eigenvector y of sum Z Z^H minimizes sum |y^H Z|^2; then (a, b) = conj(y)
    let (mut p, mut q, mut s) = (0.0, Complex::new(0.0, 0.0), 0.0);
    for x in samples {
        p += x.z1.norm_sqr();
        q += x.z1 * x.z2.conj();
        s += x.z2.norm_sqr();
    }
    let lambda = (p + s) / 2.0 - (((p - s) / 2.0).powi(2) + q.norm_sqr()).sqrt();
    let y1 = (q, Complex::new(lambda - p, 0.0));
    let y2 = (Complex::new(lambda - s, 0.0), q.conj());
    let y = if y1.0.norm_sqr() + y1.1.norm_sqr() >= y2.0.norm_sqr() + y2.1.norm_sqr() { y1 } else { y2 };
    let ny = (y.0.norm_sqr() + y.1.norm_sqr()).sqrt();
    let line = if ny > 0.0 { (y.0.conj() / ny, y.1.conj() / ny) } else { (Complex::new(1.0, 0.0), Complex::new(0.0, 0.0)) };
    let line_residual = (samples.iter().map(|x| (line.0 * x.z1 + line.1 * x.z2).norm_sqr()).sum::<f64>() / n).sqrt();

    Ok(GreatCircleCheck {
        is_great: plane_residual < tol::GEOMETRIC && norm_residual < tol::GEOMETRIC,
        norm_residual,
        plane_residual,
        line,
        line_residual,
        is_complex_line: line_residual < tol::GEOMETRIC,
    })
}

/// The unit `lambda` with `b = lambda a`, if there is one within `tol`.
pub fn same_fiber_phase(a: &S3Point, b: &S3Point, tol: f64) -> Option<Complex> {
    let lambda = a.z1.conj() * b.z1 + a.z2.conj() * b.z2;
    let lambda = lambda / lambda.norm();
    let ok = (b.z1 - lambda * a.z1).norm() <= tol && (b.z2 - lambda * a.z2).norm() <= tol;
    (ok && lambda.norm().is_finite()).then_some(lambda)
}

/// The two points where a fiber crosses the equatorial sphere `x4 = 0`,
/// or `None` for the fiber lying inside it.
pub fn equator_crossings(f: &FiberCurve) -> Option<[S3Point; 2]> {
    let (u4, v4) = (f.representative.coords()[3], f.direction.coords()[3]);
    if u4.hypot(v4) <= tol::ARITHMETIC {
        return None;
    }
    let t = (-u4).atan2(v4);
    let mut a = f.point_at(t);
    let mut b = f.point_at(t + PI);
    a.z2.im = 0.0;
    b.z2.im = 0.0;
    Some([a, b])
}

/// Whether the plane of the fiber contains the projection pole `(0, 0, 0, 1)`.
pub fn passes_through_pole(f: &FiberCurve) -> bool {
    let (u4, v4) = (f.representative.coords()[3], f.direction.coords()[3]);
    u4 * u4 + v4 * v4 >= 1.0 - 1e-12
}

/// Torus radii `(R, r)` on which the fibers over `|z| = rho` project.
pub fn torus_radii(rho: f64) -> (f64, f64) {
    ((1.0 + rho * rho).sqrt(), rho)
}

/// Projects a fiber into R^3. A fiber through the pole becomes the segment of
/// its image line within `clip_radius` of the origin, flagged as containing
/// infinity.
pub fn project_fiber(f: &FiberCurve, clip_radius: f64) -> Curve3 {
    let b = f.base.coords();
    let mut curve = if passes_through_pole(f) {
        let (u, v) = (f.representative.coords(), f.direction.coords());
        let w: [f64; 3] = std::array::from_fn(|k| -v[3] * u[k] + u[3] * v[k]);
        let n = f.samples.len();
        let points = (0..n)
            .map(|i| {
                let s = clip_radius * (2.0 * i as f64 / (n - 1) as f64 - 1.0);
                [s * w[0], s * w[1], s * w[2]]
            })
            .collect();
        let mut c = Curve3::open(points);
        c.contains_infinity = true;
        c
    } else {
        Curve3::closed(
            f.samples
                .iter()
                .map(|p| StereoChart::<3>::project(&p.sphere_point()).as_finite().expect("pole excluded"))
                .collect(),
        )
    };
    curve = curve
        .with_meta("kind", "fiber")
        .with_meta("base", format!("{},{},{}", b[0], b[1], b[2]))
        .with_meta("variant", f.variant)
        .with_meta("handedness", f.variant.handedness().name());
    let (r1, r2) = (f.representative.z1.norm(), f.representative.z2.norm());
    if let Ok((_, slope)) = handedness(r2 / r1, f) {
        let rho = r2 / r1;
        let (major, minor) = torus_radii(rho);
        curve = curve
            .with_meta("latitude", rho)
            .with_meta("torus_major", major)
            .with_meta("torus_minor", minor)
            .with_meta("slope", slope.round());
    }
    curve
}

fn unwrap_angles(angles: impl Iterator<Item = f64>) -> Vec<f64> {
    let mut out: Vec<f64> = Vec::new();
    for a in angles {
        match out.last() {
            None => out.push(a),
            Some(&prev) => {
                let mut d = a - prev;
                d -= (d / (2.0 * PI)).round() * 2.0 * PI;
                out.push(prev + d);
            }
        }
    }
    out
}

/// Winding slope of a fiber on the torus `|z2 / z1| = rho`: the least-squares
/// slope of the unwrapped `arg z2` against `arg z1`; `+1` is right-handed.
pub fn handedness(rho: f64, f: &FiberCurve) -> Result<(Handedness, f64)> {
    let mut spread: f64 = 0.0;
    for p in &f.samples {
        let (a, b) = (p.z1.norm(), p.z2.norm());
        if a <= tol::GEOMETRIC || b <= tol::GEOMETRIC {
            return Err(GeomError::NotOnTorus(f64::INFINITY));
        }
        spread = spread.max((b / a - rho).abs());
    }
    if spread > tol::GEOMETRIC * (1.0 + rho) {
        return Err(GeomError::NotOnTorus(spread));
    }
    let t1 = unwrap_angles(f.samples.iter().map(|p| arg(p.z1)));
    let t2 = unwrap_angles(f.samples.iter().map(|p| arg(p.z2)));
    let n = t1.len() as f64;
    let (m1, m2) = (t1.iter().sum::<f64>() / n, t2.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (a, b) in t1.iter().zip(&t2) {
        sxy += (a - m1) * (b - m2);
        sxx += (a - m1) * (a - m1);
    }
    let slope = sxy / sxx;
    Ok((if slope > 0.0 { Handedness::Right } else { Handedness::Left }, slope))
}

/// Fitted torus carrying the projected fibers over one latitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatitudinalTorus {
    pub rho: f64,
    pub major: f64,
    pub minor: f64,
    pub residual: f64,
}

impl LatitudinalTorus {
    /// The meridian circle in the half plane `(distance to axis) + i x3`,
    /// and its family among the Apollonian circles of `-1, 1`. Revolving the
    /// hyperbolic members about their line member (the axis) gives the tori.
    pub fn apollonian_profile(&self) -> Result<(GeneralizedCircle, Option<Family>)> {
        let profile = GeneralizedCircle::circle(Complex::new(self.major, 0.0), self.minor)?;
        let cfg = apollonian_families(Complex::new(-1.0, 0.0), Complex::new(1.0, 0.0), 1, 1)?;
        Ok((profile, cfg.family_of(&profile, 1e-6)))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TorusFibers {
    pub torus: LatitudinalTorus,
    pub fibers: Vec<FiberCurve>,
    pub curves: Vec<Curve3>,
}

/// Base point with Riemann value `rho e^(i phi)`.
pub fn latitude_base(rho: f64, phi: f64) -> S2Point {
    let z = Complex::from_polar(rho, phi);
    StereoChart::<2>::unproject(&ExtPoint::Finite([z.re, z.im]))
}

/// Samples the fibers over `n_fibers` points of the latitude `|z| = rho`,
/// projects them, and fits a torus of revolution about the x3 axis.
pub fn latitudinal_torus(rho: f64, n_fibers: usize, n_samples: usize) -> Result<TorusFibers> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(GeomError::InvalidArgument(format!("latitude must be positive and finite, got {rho}")));
    }
    if n_fibers == 0 || n_fibers * n_samples < 64 {
        return Err(GeomError::InvalidArgument("torus fit needs at least 64 projected points".into()));
    }
    let conv = HopfConvention::default();
    let fibers = (0..n_fibers)
        .map(|k| fiber(&conv, &latitude_base(rho, 2.0 * PI * k as f64 / n_fibers as f64), n_samples))
        .collect::<Result<Vec<_>>>()?;
    let curves: Vec<Curve3> = fibers
        .iter()
        .map(|f| project_fiber(f, DEFAULT_CLIP_RADIUS))
        .collect();
    let points: Vec<[f64; 3]> = curves.iter().flat_map(|c| c.points.iter().copied()).collect();
    let TorusFit { major, minor, residual } = fit_torus_of_revolution(&points, [0.0, 0.0, 1.0])?;
    Ok(TorusFibers {
        torus: LatitudinalTorus { rho, major, minor, residual },
        fibers,
        curves,
    })
}

/// Intersection of the torus `(|x|^2 + R^2 - r^2)^2 = 4 R^2 (x1^2 + x2^2)` with a
/// plane through the origin, as two closed point lists.
///
/// Along each ray from the origin in the plane the torus is met twice; when
/// the plane is bitangent the two branches cross at the tangency directions
/// and are regrouped there so each list traces one circle.
pub fn torus_plane_section(major: f64, minor: f64, normal: [f64; 3], n: usize) -> Result<[Vec<[f64; 3]>; 2]> {
    if !(minor > 0.0 && major > minor) || !major.is_finite() {
        return Err(GeomError::InvalidArgument(format!(
            "torus radii must satisfy R > r > 0, got R = {major}, r = {minor}"
        )));
    }
    if n < 8 {
        return Err(GeomError::InvalidArgument("section needs at least 8 samples".into()));
    }
    let nv = Vec3::from_array(normal)
        .normalized()
        .ok_or_else(|| GeomError::InvalidArgument("plane normal must be nonzero".into()))?;
    let (ea, eb) = match Vec3::Z.cross(nv).normalized() {
        Some(eb) if Vec3::Z.cross(nv).norm() > 1e-12 => (nv.cross(eb), eb),
        _ => (Vec3::X, Vec3::Y),
    };
    // height along the axis of the in-plane direction at angle phi is a cos(phi)
    let a = ea.z;
    let tangent = (minor * minor - major * major * a * a).abs() <= 1e-12 * major * major;
    if !tangent && major * a.abs() > minor {
        return Err(GeomError::InvalidArgument("plane does not cut the torus in two closed curves".into()));
    }
    let (mut first, mut second) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for j in 0..n {
        let phi = 2.0 * PI * j as f64 / n as f64;
        let d = ea * phi.cos() + eb * phi.sin();
        let h = d.z;
        let w = (1.0 - h * h).max(0.0).sqrt();
        let disc = ((minor - major * h) * (minor + major * h)).max(0.0).sqrt();
        let (lo, hi) = (major * w - disc, major * w + disc);
        let (s1, s2) = if tangent && phi > PI { (lo, hi) } else { (hi, lo) };
        first.push((d * s1).to_array());
        second.push((d * s2).to_array());
    }
    Ok([first, second])
}

/// The Villarceau circles: the section of the torus by the bitangent plane
/// `x3 = (r / sqrt(R^2 - r^2)) x1`.
pub fn villarceau_section(major: f64, minor: f64, n: usize) -> Result<[Vec<[f64; 3]>; 2]> {
    if !(minor > 0.0 && major > minor) {
        return Err(GeomError::InvalidArgument(format!(
            "Villarceau section needs R > r > 0, got R = {major}, r = {minor}"
        )));
    }
    let k = minor / (major * major - minor * minor).sqrt();
    torus_plane_section(major, minor, [-k, 0.0, 1.0], n)
}
