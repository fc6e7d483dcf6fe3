//! Invariant suites behind `hopfkit verify`. Each check runs on seeded random
//! instances and reports the worst error seen against its tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::complex::{count_roots_by_winding, from_polar, map_path, to_polar, winding_number, ClosedPath, Complex, Polynomial};
use crate::error::GeomError;
use crate::fit::{fit_circle_3d, fit_generalized_circle, torus_implicit};
use crate::hopf::{
    calibrate_alignment, fiber, handedness, hopf_map, is_great_circle, latitudinal_torus, project_fiber, project_to_base,
    same_fiber_phase, torus_radii, villarceau_section, HopfConvention, HopfVariant, S3Point, CANONICAL_ALIGNMENT, LINK_SIGN,
};
use crate::inversion::{apollonian_families, circles_orthogonal, compose_inversions, invert_circle, Circle, GeneralizedCircle};
use crate::linking::linking_number;
use crate::moebius::{between_triples, cross_ratio, from_three_points, MoebiusMap, RiemannPoint};
use crate::point::ExtPoint;
use crate::quaternion::{rotate_right, to_su2, Quaternion, UnitQuaternion, Vec3};
use crate::stereo::{S2Point, SpherePoint, StereoChart};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Complex,
    Moebius,
    Inversion,
    Stereo,
    Quaternion,
    Hopf,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Complex, Suite::Moebius, Suite::Inversion, Suite::Stereo, Suite::Quaternion, Suite::Hopf];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Complex => "complex",
            Suite::Moebius => "moebius",
            Suite::Inversion => "inversion",
            Suite::Stereo => "stereo",
            Suite::Quaternion => "quaternion",
            Suite::Hopf => "hopf",
        }
    }
}

impl FromStr for Suite {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Self, GeomError> {
        std::iter::once(Suite::All)
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| GeomError::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<11} {:<34} {:>11.3e} {:>9.1e}  {}",
            self.suite,
            self.name,
            self.worst,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.name(),
            checks: Vec::new(),
        }
    }

    /// Records `worst < tolerance`; a NaN worst fails.
    fn bound(&mut self, name: &'static str, worst: f64, tolerance: f64) {
        self.checks.push(Check {
            suite: self.suite,
            name,
            worst,
            tolerance,
            passed: worst < tolerance,
        });
    }

    /// Records a yes/no property as 0 or 1 against tolerance 1/2.
    fn holds(&mut self, name: &'static str, ok: bool) {
        self.bound(name, if ok { 0.0 } else { 1.0 }, 0.5);
    }
}

pub fn run(suite: Suite, seed: u64) -> Vec<Check> {
    match suite {
        Suite::All => Suite::EACH.iter().flat_map(|&s| run(s, seed)).collect(),
        Suite::Complex => complex_suite(seed),
        Suite::Moebius => moebius_suite(seed),
        Suite::Inversion => inversion_suite(seed),
        Suite::Stereo => stereo_suite(seed),
        Suite::Quaternion => quaternion_suite(seed),
        Suite::Hopf => hopf_suite(seed),
    }
}

pub fn report(checks: &[Check]) -> String {
    let mut s = format!("{:<11} {:<34} {:>11} {:>9}  result\n", "suite", "check", "worst", "tol");
    for c in checks {
        s.push_str(&c.to_string());
        s.push('\n');
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    s.push_str(&format!("{} checks, {} failed\n", checks.len(), failed));
    s
}

fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn gauss(r: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(r)
}

fn rand_complex(r: &mut ChaCha8Rng, scale: f64) -> Complex {
    Complex::new(r.random_range(-scale..scale), r.random_range(-scale..scale))
}

fn rand_unit_quaternion(r: &mut ChaCha8Rng) -> UnitQuaternion {
    UnitQuaternion::normalize(Quaternion::new(gauss(r), gauss(r), gauss(r), gauss(r))).expect("nonzero sample")
}

fn rand_s2(r: &mut ChaCha8Rng) -> S2Point {
    SpherePoint::normalize([gauss(r), gauss(r), gauss(r)]).expect("nonzero sample")
}

fn rand_s3(r: &mut ChaCha8Rng) -> S3Point {
    S3Point::from_quaternion(rand_unit_quaternion(r))
}

fn riemann_dist(a: RiemannPoint, b: RiemannPoint) -> f64 {
    match (a, b) {
        (RiemannPoint::Finite(x), RiemannPoint::Finite(y)) => (x - y).norm() / (1.0 + x.norm().max(y.norm())),
        (RiemannPoint::Infinity, RiemannPoint::Infinity) => 0.0,
        _ => f64::INFINITY,
    }
}

fn complex_suite(seed: u64) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Complex);
    let mut r = rng(seed, 1);
    let (mut modulus, mut polar) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let (z, w) = (rand_complex(&mut r, 10.0), rand_complex(&mut r, 10.0));
        modulus = modulus.max(((z * w).norm() - z.norm() * w.norm()).abs() / (1.0 + z.norm() * w.norm()));
        let (pz, pw) = (to_polar(z), to_polar(w));
        let law = from_polar(crate::complex::PolarForm { r: pz.r * pw.r, theta: pz.theta + pw.theta });
        polar = polar.max((law - z * w).norm() / (1.0 + z.norm() * w.norm()));
    }
    rec.bound("modulus is multiplicative", modulus, 1e-12);
    rec.bound("polar product law", polar, 1e-12);

    let circle = |c: f64| ClosedPath::circle(Complex::new(c, 0.0), 1.0, 256).expect("valid circle");
    let wn = |p: &ClosedPath, f: fn(Complex) -> Complex| map_path(f, p).and_then(|q| winding_number(&q)).ok();
    let windings = [
        (wn(&circle(0.0), |z| z), 1),
        (wn(&circle(2.0), |z| z), 0),
        (wn(&circle(0.0), |z| z * z), 2),
        (wn(&circle(0.0), |z| z * (z - 2.0)), 1),
    ];
    rec.holds("winding examples", windings.iter().all(|(w, e)| *w == Some(*e)));

    let mut ok = true;
    for _ in 0..50 {
        let deg = r.random_range(1..=6);
        let coeffs: Vec<Complex> = (0..=deg).map(|_| rand_complex(&mut r, 2.0)).collect();
        let p = Polynomial::new(coeffs).expect("random coefficients are nonzero");
        ok &= count_roots_by_winding(&p, p.root_bound()).ok() == Some(p.degree());
    }
    rec.holds("root count equals degree", ok);
    rec.checks
}

fn rand_moebius(r: &mut ChaCha8Rng) -> MoebiusMap {
    loop {
        let [a, b, c, d] = std::array::from_fn(|_| rand_complex(r, 2.0));
        if (a * d - b * c).norm() > 0.1 {
            return MoebiusMap::new(a, b, c, d).expect("nondegenerate");
        }
    }
}

fn moebius_suite(seed: u64) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Moebius);
    let mut r = rng(seed, 2);
    let mut invariance = 0.0f64;
    let mut conditions = 0.0f64;
    let mut composition = 0.0f64;
    for _ in 0..1000 {
        let m = rand_moebius(&mut r);
        let z: [RiemannPoint; 4] = std::array::from_fn(|_| RiemannPoint::Finite(rand_complex(&mut r, 3.0)));
        let before = cross_ratio(z[0], z[1], z[2], z[3]);
        let after = cross_ratio(m.apply(z[0]), m.apply(z[1]), m.apply(z[2]), m.apply(z[3]));
        if let (Ok(a), Ok(b)) = (before, after) {
            invariance = invariance.max((a - b).norm() / (1.0 + a.norm()));
        }

        if let Ok(f) = from_three_points(z[0], z[1], z[2]) {
            conditions = conditions
                .max(riemann_dist(f.apply(z[0]), RiemannPoint::finite(0.0, 0.0)))
                .max(riemann_dist(f.apply(z[1]), RiemannPoint::finite(1.0, 0.0)))
                .max(riemann_dist(f.apply(z[2]), RiemannPoint::Infinity));
        }

        let g = rand_moebius(&mut r);
        let gm = g.compose(&m);
        composition = composition.max(riemann_dist(gm.apply(z[3]), g.apply(m.apply(z[3]))));
    }
    rec.bound("cross ratio is invariant", invariance, 1e-9);
    rec.bound("three-point map conditions", conditions, 1e-12);
    rec.bound("compose matches pointwise", composition, 1e-10);
    rec.checks
}

fn inversion_suite(seed: u64) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Inversion);
    let mut r = rng(seed, 3);
    let (mut involution, mut product) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let a = rand_complex(&mut r, 2.0);
        let radius = r.random_range(0.2..3.0);
        let s = Circle::circle(a, radius).expect("positive radius");
        let p = a + from_polar(crate::complex::PolarForm { r: r.random_range(0.05..5.0), theta: r.random_range(0.0..2.0 * PI) });
        let q = s.invert_complex(p.into());
        let back = s.invert_complex(q);
        involution = involution.max(riemann_dist(back, p.into()));
        if let RiemannPoint::Finite(q) = q {
            product = product.max(((p - a).norm() * (q - a).norm() - radius * radius).abs() / (radius * radius));
        }
    }
    rec.bound("inversion is an involution", involution, 1e-10);
    rec.bound("|ap| |aq| = r^2", product, 1e-10);

    let mut fit = 0.0f64;
    let mut agree = 0.0f64;
    for case in 0..200 {
        let s = Circle::circle(rand_complex(&mut r, 1.0), r.random_range(0.5..2.0)).expect("positive radius");
        let k = if case % 4 == 0 {
            // through the center of inversion
            let rad: f64 = r.random_range(0.3..2.0);
            let t: f64 = r.random_range(0.0..2.0 * PI);
            GeneralizedCircle::circle(s.center_complex() + Complex::from_polar(rad, t), rad).expect("positive radius")
        } else {
            GeneralizedCircle::circle(rand_complex(&mut r, 3.0), r.random_range(0.2..2.0)).expect("positive radius")
        };
        let image: Vec<Complex> = k
            .sample(64, 5.0)
            .into_iter()
            .filter_map(|z| s.invert_complex(z.into()).as_finite())
            .filter(|w| w.norm() < 1e6)
            .collect();
        match fit_generalized_circle(&image) {
            Ok((_, res)) => {
                let scale = image.iter().map(|w| w.norm()).fold(1.0, f64::max);
                fit = fit.max(res / scale);
                let predicted = invert_circle(&s, &k);
                agree = agree.max(image.iter().map(|&w| predicted.distance(w) / scale).fold(0.0, f64::max));
            }
            Err(_) => fit = f64::INFINITY,
        }
    }
    rec.bound("inverted circles fit a circle", fit, 1e-8);
    rec.bound("image matches analytic locus", agree, 1e-8);

    let mut composed = 0.0f64;
    for _ in 0..200 {
        let c = Circle::circle(rand_complex(&mut r, 2.0), r.random_range(0.3..2.0)).expect("positive radius");
        let k = Circle::circle(rand_complex(&mut r, 2.0), r.random_range(0.3..2.0)).expect("positive radius");
        let pointwise = |z: Complex| c.invert_complex(k.invert_complex(z.into()));
        let pts: [Complex; 4] = std::array::from_fn(|_| rand_complex(&mut r, 3.0));
        let from = [pts[0].into(), pts[1].into(), pts[2].into()];
        let to = [pointwise(pts[0]), pointwise(pts[1]), pointwise(pts[2])];
        match between_triples(from, to) {
            Ok(m) => {
                composed = composed
                    .max(riemann_dist(m.apply(pts[3].into()), pointwise(pts[3])))
                    .max(riemann_dist(compose_inversions(&c, &k).apply(pts[3].into()), pointwise(pts[3])));
            }
            Err(_) => composed = f64::INFINITY,
        }
    }
    rec.bound("two inversions are a Moebius map", composed, 1e-9);

    let (p, p2) = (Complex::new(-1.0, 0.3), Complex::new(1.5, -0.2));
    let cfg = apollonian_families(p, p2, 8, 8).expect("distinct points");
    let mut member = 0.0f64;
    for e in &cfg.elliptic {
        member = member.max(e.distance(p)).max(e.distance(p2));
    }
    for h in &cfg.hyperbolic {
        let ratios: Vec<f64> = h.sample(32, 3.0).iter().map(|z| (z - p).norm() / (z - p2).norm()).collect();
        let spread = ratios.iter().fold(0.0f64, |m, x| m.max((x - ratios[0]).abs()));
        member = member.max(spread);
    }
    rec.bound("Apollonian membership", member, 1e-10);
    let mut ortho = 0.0f64;
    for e in &cfg.elliptic {
        for h in &cfg.hyperbolic {
            ortho = ortho.max(match circles_orthogonal(e, h, 1e-9) {
                Ok((angle, _)) => (angle - PI / 2.0).abs(),
                Err(_) => f64::INFINITY,
            });
        }
    }
    rec.bound("Apollonian families are orthogonal", ortho, 1e-9);
    rec.checks
}

fn stereo_suite(seed: u64) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Stereo);
    let mut r = rng(seed, 4);
    let (mut s2, mut s3) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let p = rand_s2(&mut r);
        s2 = s2.max(dist(&StereoChart::<2>::unproject(&StereoChart::<2>::project(&p)).coords(), &p.coords()));
        let q = rand_s3(&mut r).sphere_point();
        s3 = s3.max(dist(&StereoChart::<3>::unproject(&StereoChart::<3>::project(&q)).coords(), &q.coords()));
    }
    rec.bound("S^2 round trip", s2, 1e-12);
    rec.bound("S^3 round trip", s3, 1e-12);

    let mut circles = 0.0f64;
    for _ in 0..200 {
        let n = rand_s2(&mut r).coords();
        let h: f64 = r.random_range(-0.9..0.9);
        let n3 = Vec3::from_array(n);
        let helper = if n3.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
        let e1 = n3.cross(helper).normalized().expect("helper not parallel");
        let e2 = n3.cross(e1);
        let rad = (1.0 - h * h).sqrt();
        let pts: Vec<Complex> = (0..64)
            .filter_map(|k| {
                let t = 2.0 * PI * (k as f64 + 0.5) / 64.0;
                let x = n3 * h + e1 * (rad * t.cos()) + e2 * (rad * t.sin());
                let p = SpherePoint::normalize(x.to_array()).ok()?;
                match StereoChart::<2>::project(&p) {
                    ExtPoint::Finite([u, v]) if u.hypot(v) < 1e6 => Some(Complex::new(u, v)),
                    _ => None,
                }
            })
            .collect();
        let scale = pts.iter().map(|z| z.norm()).fold(1.0, f64::max);
        circles = circles.max(fit_generalized_circle(&pts).map(|(_, res)| res / scale).unwrap_or(f64::INFINITY));
    }
    rec.bound("circles project to circles", circles, 1e-8);

    let mut equator = 0.0f64;
    for k in 0..360 {
        let t = 2.0 * PI * k as f64 / 360.0;
        let p = S2Point::new([t.cos(), t.sin(), 0.0]).expect("unit");
        if let ExtPoint::Finite([u, v]) = StereoChart::<2>::project(&p) {
            equator = equator.max((u - t.cos()).abs().max((v - t.sin()).abs()));
        } else {
            equator = f64::INFINITY;
        }
    }
    rec.bound("equator is fixed", equator, 1e-12);
    rec.checks
}

fn dist<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    crate::point::distance(a, b)
}

fn quaternion_suite(seed: u64) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Quaternion);
    let mut r = rng(seed, 5);
    let (mut comp, mut cover, mut axis, mut norm, mut angle, mut su2) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let (q, q2) = (rand_unit_quaternion(&mut r), rand_unit_quaternion(&mut r));
        let v = Vec3::new(gauss(&mut r), gauss(&mut r), gauss(&mut r));
        let rot = |q: UnitQuaternion, v: Vec3| rotate_right(q.get(), v).expect("unit quaternion");
        let scale = 1.0 + v.norm();
        comp = comp.max(rot(q2, rot(q, v)).distance(rot(q.mul(q2), v)) / scale);
        cover = cover.max(rot(q.neg(), v).distance(rot(q, v)) / scale);
        if let Some(u) = q.get().pure().normalized() {
            axis = axis.max(rot(q, u).distance(u));
            let helper = if u.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
            let w = u.cross(helper).normalized().expect("helper not parallel");
            let turned = rot(q, w);
            let measured = w.dot(turned).clamp(-1.0, 1.0).acos();
            let a = q.get().a;
            angle = angle.max((measured - (2.0 * a * a - 1.0).clamp(-1.0, 1.0).acos()).abs());
        }
        norm = norm.max((rot(q, v).norm() - v.norm()).abs() / scale);
        let (m, m2) = (to_su2(q.get()), to_su2(q2.get()));
        su2 = su2
            .max(to_su2(q.get() * q2.get()).max_abs_diff(&m.mul(&m2)))
            .max((m.determinant() - Complex::new(1.0, 0.0)).norm());
    }
    rec.bound("composition law", comp, 1e-10);
    rec.bound("q and -q rotate alike", cover, 1e-10);
    rec.bound("axis is fixed", axis, 1e-10);
    rec.bound("norm is preserved", norm, 1e-10);
    rec.bound("angle is arccos(2a^2 - 1)", angle, 1e-10);
    rec.bound("SU(2) homomorphism", su2, 1e-10);
    rec.checks
}

fn hopf_suite(seed: u64) -> Vec<Check> {
    let mut rec = Recorder::new(Suite::Hopf);
    let mut r = rng(seed, 6);
    let conv = HopfConvention::default();

    let (mut great, mut over) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let b = rand_s2(&mut r);
        match fiber(&conv, &b, 64) {
            Ok(f) => {
                let c = is_great_circle(&f.samples);
                great = great.max(c.map(|c| c.plane_residual.max(c.norm_residual)).unwrap_or(f64::INFINITY));
                over = over.max(f.samples.iter().map(|x| dist(&hopf_map(x).coords(), &b.coords())).fold(0.0, f64::max));
            }
            Err(_) => great = f64::INFINITY,
        }
    }
    rec.bound("fibers are great circles", great, 1e-9);
    rec.bound("fibers lie over their base", over, 1e-10);

    let mut unique = 0.0f64;
    let mut separated = true;
    for _ in 0..1000 {
        let x = rand_s3(&mut r);
        let lambda = Complex::from_polar(1.0, r.random_range(0.0..2.0 * PI));
        let y = S3Point { z1: lambda * x.z1, z2: lambda * x.z2 };
        let image_err = dist(&hopf_map(&x).coords(), &hopf_map(&y).coords());
        let solved = if x.z1.norm() > x.z2.norm() { y.z1 / x.z1 } else { y.z2 / x.z2 };
        unique = unique
            .max(image_err)
            .max((y.z1 - solved * x.z1).norm())
            .max((y.z2 - solved * x.z2).norm());
        let other = rand_s3(&mut r);
        if dist(&hopf_map(&x).coords(), &hopf_map(&other).coords()) > 1e-6 {
            separated &= same_fiber_phase(&x, &other, 1e-9).is_none();
        }
    }
    rec.bound("same fiber iff unit multiple", unique, 1e-10);
    rec.holds("different fibers are not multiples", separated);

    let calibrated = calibrate_alignment(1000, seed);
    rec.holds("calibration finds frozen alignment", calibrated == Some(CANONICAL_ALIGNMENT));
    let right = HopfConvention::new(HopfVariant::QuatRight);
    let mut aligned = 0.0f64;
    for _ in 0..1000 {
        let x = rand_s3(&mut r);
        aligned = aligned.max(dist(&project_to_base(&right, &x).coords(), &hopf_map(&x).coords()));
    }
    rec.bound("quaternion map matches after alignment", aligned, 1e-10);

    let mut link_ok = true;
    for _ in 0..20 {
        let curves: Vec<Vec<[f64; 3]>> = (0..2)
            .map(|_| project_fiber(&fiber(&conv, &rand_s2(&mut r), 512).expect("valid samples"), 10.0).points)
            .collect();
        link_ok &= linking_number(&curves[0], &curves[1]).map(|l| l.value) == Ok(LINK_SIGN);
    }
    rec.holds("distinct fibers link once", link_ok);

    let mut torus_res = 0.0f64;
    let mut identity = 0.0f64;
    let mut fitted = Vec::new();
    for rho in [0.5, 1.0, 2.0] {
        match latitudinal_torus(rho, 16, 128) {
            Ok(t) => {
                torus_res = torus_res.max(t.torus.residual);
                identity = identity.max((t.torus.major.powi(2) - t.torus.minor.powi(2) - 1.0).abs());
                fitted.push(t);
            }
            Err(_) => torus_res = f64::INFINITY,
        }
    }
    rec.bound("latitude tori fit", torus_res, 1e-8);
    rec.bound("R^2 - r^2 = 1", identity, 1e-6);
    let nested = fitted.windows(2).all(|w| {
        let (inner, outer) = (&w[0], &w[1]);
        let (ri, ro) = (torus_radii(inner.torus.rho), torus_radii(outer.torus.rho));
        inner.curves.iter().flat_map(|c| &c.points).all(|p| torus_implicit(ro.0, ro.1, [0.0, 0.0, 1.0], *p) < 0.0)
            && outer.curves.iter().flat_map(|c| &c.points).all(|p| torus_implicit(ri.0, ri.1, [0.0, 0.0, 1.0], *p) > 0.0)
    });
    rec.holds("tori are strictly nested", fitted.len() == 3 && nested);

    let mut villarceau = 0.0f64;
    match villarceau_section(2f64.sqrt(), 1.0, 256) {
        Ok(curves) => {
            for c in &curves {
                villarceau = villarceau.max(fit_circle_3d(c).map(|f| f.residual).unwrap_or(f64::INFINITY));
            }
        }
        Err(_) => villarceau = f64::INFINITY,
    }
    rec.bound("Villarceau sections are circles", villarceau, 1e-6);

    let rho = 0.8;
    let base = crate::hopf::latitude_base(rho, 0.4);
    let mut slopes = 0.0f64;
    for (variant, expected) in [(HopfVariant::QuatRight, 1.0), (HopfVariant::QuatLeft, -1.0)] {
        let f = fiber(&HopfConvention::new(variant), &base, 128);
        slopes = slopes.max(match f.and_then(|f| handedness(rho, &f)) {
            Ok((_, s)) => (s - expected).abs(),
            Err(_) => f64::INFINITY,
        });
    }
    rec.bound("handedness slopes are +1 and -1", slopes, 1e-9);
    rec.checks
}
