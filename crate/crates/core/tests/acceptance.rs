//! Acceptance gate. Each criterion runs once, in order, against its error
//! bound and wall-clock budget, and prints one PASS/FAIL line.
//!
//! Expected values come from formulas written out here (Hamilton products,
//! inversion and stereographic formulas, the real Hopf map, circle
//! incidence), not from the library paths under test.

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use hopfkit::complex::{
    count_roots_by_winding, from_polar, map_path, to_polar, winding_number, ClosedPath, Complex, PolarForm, Polynomial,
};
use hopfkit::fit::{fit_circle_3d, fit_generalized_circle};
use hopfkit::hopf::{
    calibrate_alignment, fiber, handedness, hopf_map, latitudinal_torus, latitude_base, project_fiber, same_fiber_phase,
    villarceau_section, HopfConvention, HopfVariant, S3Point,
};
use hopfkit::inversion::{apollonian_families, compose_inversions, Circle, GeneralizedCircle};
use hopfkit::linking::linking_number;
use hopfkit::moebius::{cross_ratio, from_three_points, MoebiusMap, RiemannPoint};
use hopfkit::point::ExtPoint;
use hopfkit::quaternion::{rotate_right, to_su2, Quaternion, UnitQuaternion, Vec3};
use hopfkit::stereo::{S2Point, SpherePoint, StereoChart};

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn criterion(name: &'static str, budget_s: f64, body: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (ok, detail) = body();
    let elapsed = start.elapsed();
    let budget = Duration::from_secs_f64(budget_s);
    Outcome {
        name,
        passed: ok && elapsed < budget,
        detail,
        elapsed,
        budget,
    }
}

/// Collects named error bounds for one criterion.
#[derive(Default)]
struct Bounds {
    parts: Vec<String>,
    ok: bool,
    started: bool,
}

impl Bounds {
    fn le(&mut self, name: &str, worst: f64, tol: f64) -> &mut Self {
        self.check(worst < tol, format!("{name} {worst:.2e} < {tol:.0e}"))
    }

    fn holds(&mut self, name: &str, ok: bool) -> &mut Self {
        self.check(ok, format!("{name} {}", if ok { "yes" } else { "NO" }))
    }

    fn check(&mut self, ok: bool, text: String) -> &mut Self {
        self.ok = if self.started { self.ok && ok } else { ok };
        self.started = true;
        self.parts.push(text);
        self
    }

    fn finish(&self) -> (bool, String) {
        (self.started && self.ok, self.parts.join("; "))
    }
}

fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x00AC_CE97 + salt)
}

fn gauss(r: &mut ChaCha8Rng) -> f64 {
    StandardNormal.sample(r)
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn rand_c(r: &mut ChaCha8Rng, s: f64) -> Complex {
    c(r.random_range(-s..s), r.random_range(-s..s))
}

fn rand_s2(r: &mut ChaCha8Rng) -> [f64; 3] {
    let v = [gauss(r), gauss(r), gauss(r)];
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    v.map(|x| x / n)
}

fn rand_s3(r: &mut ChaCha8Rng) -> [f64; 4] {
    let v = [gauss(r), gauss(r), gauss(r), gauss(r)];
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

fn dist<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Chordal-style distance on the Riemann sphere, infinite when exactly one side is infinite.
fn rdist(a: RiemannPoint, b: RiemannPoint) -> f64 {
    match (a, b) {
        (RiemannPoint::Finite(x), RiemannPoint::Finite(y)) => (x - y).norm() / (1.0 + x.norm().max(y.norm())),
        (RiemannPoint::Infinity, RiemannPoint::Infinity) => 0.0,
        _ => f64::INFINITY,
    }
}

/// Hamilton product on `[a, b, c, d]`.
fn hamilton(p: [f64; 4], q: [f64; 4]) -> [f64; 4] {
    let [a1, b1, c1, d1] = p;
    let [a2, b2, c2, d2] = q;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

fn qconj(q: [f64; 4]) -> [f64; 4] {
    [q[0], -q[1], -q[2], -q[3]]
}

/// `q^-1 v q` for unit `q`.
fn rot_oracle(q: [f64; 4], v: [f64; 3]) -> [f64; 3] {
    let r = hamilton(hamilton(qconj(q), [0.0, v[0], v[1], v[2]]), q);
    [r[1], r[2], r[3]]
}

/// `(2(x1 x3 + x2 x4), 2(x1 x4 - x2 x3), x3^2 + x4^2 - x1^2 - x2^2)`.
fn hopf_oracle(x: [f64; 4]) -> [f64; 3] {
    let [x1, x2, x3, x4] = x;
    [2.0 * (x1 * x3 + x2 * x4), 2.0 * (x1 * x4 - x2 * x3), x3 * x3 + x4 * x4 - x1 * x1 - x2 * x2]
}

/// Inverse stereographic projection from `(0, 0, 0, 1)`.
fn unproject3(u: [f64; 3]) -> [f64; 4] {
    let s = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    [2.0 * u[0] / (s + 1.0), 2.0 * u[1] / (s + 1.0), 2.0 * u[2] / (s + 1.0), (s - 1.0) / (s + 1.0)]
}

fn max_spread(points: &[[f64; 3]]) -> f64 {
    points.iter().map(|p| dist(p, &points[0])).fold(0.0, f64::max)
}

fn complex_algebra() -> (bool, String) {
    let mut r = rng(1);
    let (mut modulus, mut polar) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let (z, w) = (rand_c(&mut r, 10.0), rand_c(&mut r, 10.0));
        // product by hand
        let zw = c(z.re * w.re - z.im * w.im, z.re * w.im + z.im * w.re);
        let scale = 1.0 + z.norm() * w.norm();
        modulus = modulus.max(((z * w).norm() - z.re.hypot(z.im) * w.re.hypot(w.im)).abs() / scale);
        let (pz, pw) = (to_polar(z), to_polar(w));
        let law = from_polar(PolarForm { r: pz.r * pw.r, theta: pz.theta + pw.theta });
        polar = polar.max((law - zw).norm() / scale);
    }
    Bounds::default().le("modulus", modulus, 1e-12).le("polar law", polar, 1e-12).finish()
}

fn winding() -> (bool, String) {
    let circle = |x: f64| ClosedPath::circle(c(x, 0.0), 1.0, 256).unwrap();
    let wn = |p: ClosedPath, f: fn(Complex) -> Complex| map_path(f, &p).and_then(|q| winding_number(&q)).ok();
    let got = [
        wn(circle(0.0), |z| z),
        wn(circle(2.0), |z| z),
        wn(circle(0.0), |z| z * z),
        wn(circle(0.0), |z| z * (z - 2.0)),
    ];
    let mut r = rng(2);
    let mut recovered = 0;
    for _ in 0..50 {
        let deg = r.random_range(1..=6usize);
        let coeffs: Vec<Complex> = (0..=deg).map(|_| rand_c(&mut r, 3.0)).collect();
        // every root has modulus below 1 + sum |c_k| / |c_n|
        let radius = 1.0 + coeffs.iter().map(|z| z.norm()).sum::<f64>() / coeffs[deg].norm();
        let p = Polynomial::new(coeffs).unwrap();
        if count_roots_by_winding(&p, radius).ok() == Some(deg) {
            recovered += 1;
        }
    }
    Bounds::default()
        .holds("examples 1,0,2,1", got == [Some(1), Some(0), Some(2), Some(1)])
        .holds(&format!("degree recovered {recovered}/50"), recovered == 50)
        .finish()
}

fn moebius() -> (bool, String) {
    let mut r = rng(3);
    let apply = |m: [Complex; 4], z: Complex| (m[0] * z + m[1]) / (m[2] * z + m[3]);
    let cr = |a: Complex, b: Complex, cc: Complex, d: Complex| ((a - cc) * (b - d)) / ((a - d) * (b - cc));
    let (mut inv, mut cond, mut comp) = (0.0f64, 0.0f64, 0.0f64);
    let mut n = 0;
    while n < 1000 {
        let m: [Complex; 4] = std::array::from_fn(|_| rand_c(&mut r, 2.0));
        if (m[0] * m[3] - m[1] * m[2]).norm() < 0.1 {
            continue;
        }
        n += 1;
        let map = MoebiusMap::new(m[0], m[1], m[2], m[3]).unwrap();
        let z: [Complex; 4] = std::array::from_fn(|_| rand_c(&mut r, 3.0));
        let before = cr(z[0], z[1], z[2], z[3]);
        let imgs = z.map(|x| map.apply(x.into()));
        if let Ok(after) = cross_ratio(imgs[0], imgs[1], imgs[2], imgs[3]) {
            inv = inv.max((after - before).norm() / (1.0 + before.norm()));
        } else {
            inv = f64::INFINITY;
        }
        let f = from_three_points(z[0].into(), z[1].into(), z[2].into()).unwrap();
        cond = cond
            .max(rdist(f.apply(z[0].into()), RiemannPoint::Finite(c(0.0, 0.0))))
            .max(rdist(f.apply(z[1].into()), RiemannPoint::Finite(c(1.0, 0.0))))
            .max(rdist(f.apply(z[2].into()), RiemannPoint::Infinity));

        let g: [Complex; 4] = std::array::from_fn(|_| rand_c(&mut r, 2.0));
        let gm = MoebiusMap::new(g[0], g[1], g[2], g[3]).unwrap().compose(&map);
        let direct = apply(g, apply(m, z[3]));
        comp = comp.max(rdist(gm.apply(z[3].into()), RiemannPoint::Finite(direct)));
    }
    Bounds::default()
        .le("cross ratio", inv, 1e-9)
        .le("three-point conditions", cond, 1e-12)
        .le("compose", comp, 1e-10)
        .finish()
}

fn invert_oracle(a: Complex, radius: f64, p: Complex) -> Complex {
    a + (p - a) * (radius * radius / (p - a).norm_sqr())
}

fn inversion() -> (bool, String) {
    let mut r = rng(4);
    let (mut invol, mut prod, mut formula) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let a = rand_c(&mut r, 2.0);
        let rad = r.random_range(0.2..3.0);
        let s = Circle::circle(a, rad).unwrap();
        let p = a + Complex::from_polar(r.random_range(0.05..5.0), r.random_range(0.0..2.0 * PI));
        let q = s.invert_complex(p.into());
        formula = formula.max(rdist(q, invert_oracle(a, rad, p).into()));
        invol = invol.max(rdist(s.invert_complex(q), p.into()));
        if let RiemannPoint::Finite(q) = q {
            prod = prod.max(((p - a).norm() * (q - a).norm() - rad * rad).abs() / (rad * rad));
        } else {
            prod = f64::INFINITY;
        }
    }

    let (mut fit_res, mut oracle_gap) = (0.0f64, 0.0f64);
    for case in 0..200 {
        let a = rand_c(&mut r, 1.0);
        let rad = r.random_range(0.5..2.0);
        let s = Circle::circle(a, rad).unwrap();
        let through = case % 4 == 0;
        let line = case % 10 == 5;
        // source samples, avoiding a small disk about the center of inversion
        let src: Vec<Complex> = if line {
            let foot = rand_c(&mut r, 2.0);
            let dir = Complex::from_polar(1.0, r.random_range(0.0..PI));
            (0..64).map(|k| foot + dir * (-4.0 + 8.0 * k as f64 / 63.0)).filter(|z| (z - a).norm() > 0.1).collect()
        } else {
            let (ctr, rho) = if through {
                let rho: f64 = r.random_range(0.3..2.0);
                (a + Complex::from_polar(rho, r.random_range(0.0..2.0 * PI)), rho)
            } else {
                (rand_c(&mut r, 3.0), r.random_range(0.2..2.0))
            };
            let pts: Vec<Complex> = (0..64).map(|k| ctr + Complex::from_polar(rho, 2.0 * PI * (k as f64 + 0.5) / 64.0)).collect();
            let pts: Vec<Complex> = pts.into_iter().filter(|z| (z - a).norm() > 0.1).collect();
            // predicted image: a line at distance r^2 / (2 rho) from a, normal to ctr - a, or a circle
            let d2 = (ctr - a).norm_sqr() - rho * rho;
            let predicted = if through {
                let n = (ctr - a) / (ctr - a).norm();
                let foot = a + n * (rad * rad / (2.0 * rho));
                GeneralizedCircle::line(foot, n * c(0.0, 1.0)).unwrap()
            } else {
                GeneralizedCircle::circle(a + (ctr - a) * (rad * rad / d2), rad * rad * rho / d2.abs()).unwrap()
            };
            for z in &pts {
                oracle_gap = oracle_gap.max(predicted.distance(invert_oracle(a, rad, *z)));
            }
            pts
        };
        let image: Vec<Complex> = src.iter().map(|z| s.invert_complex((*z).into()).as_finite().unwrap()).collect();
        fit_res = fit_res.max(fit_generalized_circle(&image).map(|(_, res)| res).unwrap_or(f64::INFINITY));
    }

    let mut composed = 0.0f64;
    for _ in 0..200 {
        let (ca, ra) = (rand_c(&mut r, 2.0), r.random_range(0.3..2.0));
        let (ka, rk) = (rand_c(&mut r, 2.0), r.random_range(0.3..2.0));
        let twice = |z: Complex| invert_oracle(ca, ra, invert_oracle(ka, rk, z));
        let z: [Complex; 6] = std::array::from_fn(|_| rand_c(&mut r, 3.0));
        // Moebius map fitted through three image pairs by cross ratio:
        // (w, w0; w1, w2) = (z, z0; z1, z2)
        let w: [Complex; 3] = std::array::from_fn(|k| twice(z[k]));
        let fitted = |x: Complex| {
            let lambda = ((x - z[1]) * (z[0] - z[2])) / ((x - z[2]) * (z[0] - z[1]));
            // solve (y - w1)(w0 - w2) = lambda (y - w2)(w0 - w1) for y
            let (p, q) = (w[0] - w[2], lambda * (w[0] - w[1]));
            (w[1] * p - w[2] * q) / (p - q)
        };
        let lib = compose_inversions(&Circle::circle(ca, ra).unwrap(), &Circle::circle(ka, rk).unwrap());
        for x in &z[3..] {
            let expect = RiemannPoint::Finite(twice(*x));
            composed = composed.max(rdist(RiemannPoint::Finite(fitted(*x)), expect)).max(rdist(lib.apply((*x).into()), expect));
        }
    }
    Bounds::default()
        .le("inversion formula", formula, 1e-10)
        .le("involution", invol, 1e-10)
        .le("|ap||aq| = r^2", prod, 1e-10)
        .le("circle image fit", fit_res, 1e-8)
        .le("image on predicted locus", oracle_gap, 1e-8)
        .le("composed inversions", composed, 1e-9)
        .finish()
}

/// Unit normal direction and a point of a line member, from two samples.
fn line_of(g: &GeneralizedCircle) -> (Complex, Complex) {
    let s = g.sample(2, 1.0);
    let d = s[1] - s[0];
    (s[0], d / d.norm())
}

fn apollonius() -> (bool, String) {
    let (p, p2) = (c(-1.0, 0.3), c(1.5, -0.2));
    let cfg = apollonian_families(p, p2, 8, 8).unwrap();
    let mut member = 0.0f64;
    let mut shape_ok = cfg.elliptic.len() == 8 && cfg.hyperbolic.len() == 8;
    for e in &cfg.elliptic {
        match e.center_radius() {
            Some((ctr, rho)) => member = member.max(((p - ctr).norm() - rho).abs()).max(((p2 - ctr).norm() - rho).abs()),
            None => {
                let (o, d) = line_of(e);
                for z in [p, p2] {
                    member = member.max(((z - o) * d.conj()).im.abs());
                }
            }
        }
    }
    for h in &cfg.hyperbolic {
        match h.center_radius() {
            Some((ctr, rho)) => {
                // p and p2 are inverse points: collinear with the center and |cp||cp2| = rho^2
                let (u, v) = (p - ctr, p2 - ctr);
                member = member.max((u.norm() * v.norm() - rho * rho).abs()).max((u * v.conj()).im.abs());
                member = member.max((u * v.conj()).re.min(0.0).abs());
            }
            None => {
                let (o, _) = line_of(h);
                member = member.max(((o - p).norm() - (o - p2).norm()).abs());
                let far = h.sample(2, 3.0)[1];
                member = member.max(((far - p).norm() - (far - p2).norm()).abs());
            }
        }
    }
    let mut ortho = 0.0f64;
    for e in &cfg.elliptic {
        for h in &cfg.hyperbolic {
            let err = match (e.center_radius(), h.center_radius()) {
                (Some((c1, r1)), Some((c2, r2))) => ((c1 - c2).norm_sqr() - r1 * r1 - r2 * r2).abs() / (r1 * r2),
                (Some((c1, r1)), None) | (None, Some((c1, r1))) => {
                    let (o, d) = if e.is_line() { line_of(e) } else { line_of(h) };
                    ((c1 - o) * d.conj()).im.abs() / r1
                }
                (None, None) => {
                    let (d1, d2) = (line_of(e).1, line_of(h).1);
                    (d1 * d2.conj()).re.abs()
                }
            };
            ortho = ortho.max(err);
        }
    }
    shape_ok &= cfg.elliptic.iter().filter(|g| g.is_line()).count() == 1;
    Bounds::default()
        .holds("8x8 grid with one line each", shape_ok)
        .le("membership", member, 1e-10)
        .le("orthogonality", ortho, 1e-9)
        .finish()
}

fn stereographic() -> (bool, String) {
    let mut r = rng(6);
    let (mut s2, mut s3) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let x = rand_s2(&mut r);
        let p = S2Point::new(x).unwrap();
        let proj = StereoChart::<2>::project(&p).as_finite().unwrap();
        // projection from (0, 0, 1): u = (x, y) / (1 - z)
        let oracle = [x[0] / (1.0 - x[2]), x[1] / (1.0 - x[2])];
        s2 = s2.max(dist(&proj, &oracle) / (1.0 + oracle[0].hypot(oracle[1])));
        s2 = s2.max(dist(&StereoChart::<2>::unproject(&ExtPoint::Finite(proj)).coords(), &x));
        let y = rand_s3(&mut r);
        let q = SpherePoint::new(y).unwrap();
        let proj = StereoChart::<3>::project(&q).as_finite().unwrap();
        s3 = s3.max(dist(&unproject3(proj), &y));
        s3 = s3.max(dist(&StereoChart::<3>::unproject(&ExtPoint::Finite(proj)).coords(), &y));
    }

    let (mut fit_res, mut on_oracle) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let n = rand_s2(&mut r);
        let h: f64 = r.random_range(-0.9..0.9);
        let nv = Vec3::from_array(n);
        let e1 = nv.cross(if n[0].abs() < 0.9 { Vec3::X } else { Vec3::Y }).normalized().unwrap();
        let e2 = nv.cross(e1);
        let rho = (1.0 - h * h).sqrt();
        let mut img = Vec::new();
        for k in 0..64 {
            let t = 2.0 * PI * (k as f64 + 0.5) / 64.0;
            let x = nv * h + e1 * (rho * t.cos()) + e2 * (rho * t.sin());
            let p = SpherePoint::normalize(x.to_array()).unwrap();
            if let ExtPoint::Finite([u, v]) = StereoChart::<2>::project(&p) {
                if u.hypot(v) < 1e3 {
                    img.push(c(u, v));
                    // n . x = h pulls back to (n3 - h)|u|^2 + 2 (n1 u + n2 v) - (n3 + h) = 0
                    let lhs = (n[2] - h) * (u * u + v * v) + 2.0 * (n[0] * u + n[1] * v) - (n[2] + h);
                    on_oracle = on_oracle.max(lhs.abs() / (1.0 + u * u + v * v));
                }
            }
        }
        fit_res = fit_res.max(fit_generalized_circle(&img).map(|(_, res)| res).unwrap_or(f64::INFINITY));
    }
    let mut equator = 0.0f64;
    for k in 0..1000 {
        let t = 2.0 * PI * k as f64 / 1000.0;
        let p = S2Point::new([t.cos(), t.sin(), 0.0]).unwrap();
        equator = equator.max(dist(&StereoChart::<2>::project(&p).as_finite().unwrap(), &[t.cos(), t.sin()]));
    }
    Bounds::default()
        .le("S^2 round trip", s2, 1e-12)
        .le("S^3 round trip", s3, 1e-12)
        .le("circle fit", fit_res, 1e-8)
        .le("image on pulled-back circle", on_oracle, 1e-10)
        .le("equator fixed", equator, 1e-12)
        .finish()
}

fn quaternions() -> (bool, String) {
    let mut r = rng(7);
    let (mut comp, mut cover, mut axis, mut norm, mut angle, mut su2) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut oracle_gap = 0.0f64;
    for _ in 0..1000 {
        let (q, q2) = (rand_s3(&mut r), rand_s3(&mut r));
        let (uq, uq2) = (UnitQuaternion::normalize(Quaternion::from_array(q)).unwrap(), UnitQuaternion::normalize(Quaternion::from_array(q2)).unwrap());
        let v = [gauss(&mut r), gauss(&mut r), gauss(&mut r)];
        let lib = |q: UnitQuaternion, v: [f64; 3]| rotate_right(q.get(), Vec3::from_array(v)).unwrap().to_array();
        let scale = 1.0 + dist(&v, &[0.0; 3]);
        oracle_gap = oracle_gap.max(dist(&lib(uq, v), &rot_oracle(q, v)) / scale);
        comp = comp.max(dist(&lib(uq2, lib(uq, v)), &rot_oracle(hamilton(q, q2), v)) / scale);
        cover = cover.max(dist(&lib(uq.neg(), v), &lib(uq, v)) / scale);
        let s = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
        let u = [q[1] / s, q[2] / s, q[3] / s];
        axis = axis.max(dist(&lib(uq, u), &u));
        norm = norm.max((dist(&lib(uq, v), &[0.0; 3]) - dist(&v, &[0.0; 3])).abs() / scale);
        let w = Vec3::from_array(u).cross(if u[0].abs() < 0.9 { Vec3::X } else { Vec3::Y }).normalized().unwrap();
        let turned = lib(uq, w.to_array());
        let measured = (w.x * turned[0] + w.y * turned[1] + w.z * turned[2]).clamp(-1.0, 1.0).acos();
        angle = angle.max((measured - (2.0 * q[0] * q[0] - 1.0).clamp(-1.0, 1.0).acos()).abs());
        // matrix product against the matrix of the Hamilton product, and det = |q|^2 = 1
        let (m1, m2) = (to_su2(uq.get()), to_su2(uq2.get()));
        let m12 = to_su2(Quaternion::from_array(hamilton(q, q2)));
        let mut prod_gap = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let e = m1.m[i][0] * m2.m[0][j] + m1.m[i][1] * m2.m[1][j];
                prod_gap = prod_gap.max((e - m12.m[i][j]).norm());
            }
        }
        let det = m1.m[0][0] * m1.m[1][1] - m1.m[0][1] * m1.m[1][0];
        su2 = su2.max(prod_gap).max((det - c(1.0, 0.0)).norm());
    }
    Bounds::default()
        .le("rotation vs Hamilton oracle", oracle_gap, 1e-10)
        .le("composition", comp, 1e-10)
        .le("double cover", cover, 1e-10)
        .le("axis fixed", axis, 1e-10)
        .le("norm", norm, 1e-10)
        .le("angle", angle, 1e-10)
        .le("SU(2)", su2, 1e-10)
        .finish()
}

fn hopf() -> (bool, String) {
    let mut r = rng(8);
    let conv = HopfConvention::default();
    let (mut plane, mut over) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let b = rand_s2(&mut r);
        let f = fiber(&conv, &S2Point::new(b).unwrap(), 64).unwrap();
        let rows: Vec<[f64; 4]> = f.samples.iter().map(S3Point::coords).collect();
        let m = DMatrix::from_fn(rows.len(), 4, |i, j| rows[i][j]);
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        plane = plane.max(sv[2] / (rows.len() as f64).sqrt());
        for x in &rows {
            plane = plane.max((dist(x, &[0.0; 4]) - 1.0).abs());
            over = over.max(dist(&hopf_oracle(*x), &b));
        }
    }

    let mut lambda_err = 0.0f64;
    let mut distinct_ok = true;
    for _ in 0..1000 {
        let x = rand_s3(&mut r);
        let lam = Complex::from_polar(1.0, r.random_range(0.0..2.0 * PI));
        let (z1, z2) = (c(x[0], x[1]), c(x[2], x[3]));
        let (w1, w2) = (lam * z1, lam * z2);
        let y = [w1.re, w1.im, w2.re, w2.im];
        lambda_err = lambda_err.max(dist(&hopf_oracle(x), &hopf_oracle(y)));
        let solved = w1 / z1;
        lambda_err = lambda_err.max((solved.norm() - 1.0).abs()).max((w2 - solved * z2).norm());
        let (px, py) = (S3Point::from_coords(x).unwrap(), S3Point::from_coords(y).unwrap());
        lambda_err = lambda_err.max(same_fiber_phase(&px, &py, 1e-10).map(|l| (l - lam).norm()).unwrap_or(f64::INFINITY));
        let other = rand_s3(&mut r);
        if dist(&hopf_oracle(other), &hopf_oracle(x)) > 1e-6 {
            distinct_ok &= same_fiber_phase(&px, &S3Point::from_coords(other).unwrap(), 1e-9).is_none();
        }
    }

    let align = calibrate_alignment(1000, 11);
    let mut calib = f64::INFINITY;
    if let Some(a) = align {
        calib = 0.0;
        for _ in 0..1000 {
            let q = rand_s3(&mut r);
            let g = Vec3::from_array(rot_oracle(q, [1.0, 0.0, 0.0]));
            calib = calib
                .max(dist(&a.apply(g).to_array(), &hopf_oracle(q)))
                .max(dist(&hopf_map(&S3Point::from_coords(q).unwrap()).coords(), &hopf_oracle(q)));
        }
    }
    Bounds::default()
        .le("great circle residual", plane, 1e-9)
        .le("fiber over base", over, 1e-10)
        .le("unit lambda", lambda_err, 1e-10)
        .holds("other fibers rejected", distinct_ok)
        .le("calibrated g_(1,0,0)", calib, 1e-10)
        .finish()
}

/// Midpoint Gauss double sum over two closed polylines.
fn gauss_midpoint(a: &[[f64; 3]], b: &[[f64; 3]]) -> f64 {
    let mut s = 0.0;
    for i in 0..a.len() {
        let (p, p2) = (a[i], a[(i + 1) % a.len()]);
        let da = [p2[0] - p[0], p2[1] - p[1], p2[2] - p[2]];
        for j in 0..b.len() {
            let (q, q2) = (b[j], b[(j + 1) % b.len()]);
            let db = [q2[0] - q[0], q2[1] - q[1], q2[2] - q[2]];
            let rr: [f64; 3] = std::array::from_fn(|k| (p[k] + p2[k] - q[k] - q2[k]) / 2.0);
            let cr = [da[1] * db[2] - da[2] * db[1], da[2] * db[0] - da[0] * db[2], da[0] * db[1] - da[1] * db[0]];
            let d = (rr[0] * rr[0] + rr[1] * rr[1] + rr[2] * rr[2]).powf(1.5);
            s += (cr[0] * rr[0] + cr[1] * rr[1] + cr[2] * rr[2]) / d;
        }
    }
    s / (4.0 * PI)
}

fn linking() -> (bool, String) {
    let mut r = rng(9);
    let conv = HopfConvention::default();
    let (mut worst, mut unit, mut agree) = (0.0f64, true, true);
    for _ in 0..50 {
        let curves: Vec<Vec<[f64; 3]>> = (0..2)
            .map(|_| project_fiber(&fiber(&conv, &S2Point::new(rand_s2(&mut r)).unwrap(), 512).unwrap(), 10.0).points)
            .collect();
        match linking_number(&curves[0], &curves[1]) {
            Ok(l) => {
                worst = worst.max(l.residual);
                unit &= l.value.abs() == 1;
                agree &= gauss_midpoint(&curves[0], &curves[1]).round() as i64 == l.value;
            }
            Err(_) => {
                worst = f64::INFINITY;
                unit = false;
            }
        }
    }
    Bounds::default()
        .le("distance to integer", worst, 0.05)
        .holds("|Lk| = 1", unit)
        .holds("midpoint sum agrees", agree)
        .finish()
}

fn tori() -> (bool, String) {
    let mut b = Bounds::default();
    let (mut res, mut rel) = (0.0f64, 0.0f64);
    let mut fitted = Vec::new();
    for rho in [0.5, 1.0, 2.0] {
        let t = latitudinal_torus(rho, 16, 128).unwrap();
        res = res.max(t.torus.residual);
        rel = rel.max((t.torus.major.powi(2) - t.torus.minor.powi(2) - 1.0).abs());
        fitted.push(t);
    }
    b.le("torus residual", res, 1e-8).le("R^2 - r^2 - 1", rel, 1e-6);

    // signed quartic: negative strictly inside the tube
    let quartic = |big: f64, small: f64, p: &[f64; 3]| {
        let s = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
        (s + big * big - small * small).powi(2) - 4.0 * big * big * (p[0] * p[0] + p[1] * p[1])
    };
    let mut nested = true;
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let (big, small) = (fitted[j].torus.major, fitted[j].torus.minor);
            let sign = if i < j { -1.0 } else { 1.0 };
            nested &= fitted[i].curves.iter().flat_map(|cv| &cv.points).all(|p| sign * quartic(big, small, p) > 0.0);
        }
    }
    b.holds("strictly nested", nested);

    let [sa, sb] = villarceau_section(2f64.sqrt(), 1.0, 256).unwrap();
    let circ = fit_circle_3d(&sa).unwrap().residual.max(fit_circle_3d(&sb).unwrap().residual);
    b.le("Villarceau circle fit", circ, 1e-6);
    // right fibers are level sets of the Hopf map; left fibers of q -> q i conj(q)
    let right = |pts: &[[f64; 3]]| max_spread(&pts.iter().map(|p| hopf_oracle(unproject3(*p))).collect::<Vec<_>>());
    let left = |pts: &[[f64; 3]]| {
        max_spread(
            &pts.iter()
                .map(|p| {
                    let q = unproject3(*p);
                    let v = hamilton(hamilton(q, [0.0, 1.0, 0.0, 0.0]), qconj(q));
                    [v[1], v[2], v[3]]
                })
                .collect::<Vec<_>>(),
        )
    };
    let coincide = right(&sa).max(left(&sb)).min(right(&sb).max(left(&sa)));
    b.le("sections are a right and a left fiber", coincide, 1e-6);

    let rho = 0.8;
    let base = latitude_base(rho, 0.4);
    let mut slope_err = 0.0f64;
    for (variant, expected) in [(HopfVariant::Riemann, 1.0), (HopfVariant::QuatRight, 1.0), (HopfVariant::QuatLeft, -1.0)] {
        let f = fiber(&HopfConvention::new(variant), &base, 128).unwrap();
        // slope of unwrapped arg z2 against arg z1, by hand
        let (mut a1, mut a2) = (Vec::new(), Vec::new());
        for x in f.samples.iter().map(S3Point::coords) {
            let (t1, t2) = (x[1].atan2(x[0]), x[3].atan2(x[2]));
            let unwrap = |v: &mut Vec<f64>, t: f64| {
                let t = match v.last() {
                    Some(&prev) => prev + (t - prev + PI).rem_euclid(2.0 * PI) - PI,
                    None => t,
                };
                v.push(t);
            };
            unwrap(&mut a1, t1);
            unwrap(&mut a2, t2);
        }
        let n = a1.len() as f64;
        let (m1, m2) = (a1.iter().sum::<f64>() / n, a2.iter().sum::<f64>() / n);
        let num: f64 = a1.iter().zip(&a2).map(|(x, y)| (x - m1) * (y - m2)).sum();
        let den: f64 = a1.iter().map(|x| (x - m1) * (x - m1)).sum();
        slope_err = slope_err.max((num / den - expected).abs());
        slope_err = slope_err.max(handedness(rho, &f).map(|(_, s)| (s - expected).abs()).unwrap_or(f64::INFINITY));
    }
    b.le("handedness slopes", slope_err, 1e-9);
    b.finish()
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hopfkit")).args(args).output().expect("cli runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn determinism() -> (bool, String) {
    let (code, table) = cli(&["verify", "--suite", "all"]);
    let text = String::from_utf8_lossy(&table);
    let runs: [&[&str]; 6] = [
        &["fiber", "--base", "0.3,-0.4,0.5", "--variant", "quat-right", "--format", "json"],
        &["fiber", "--base", "0,0,1", "--format", "obj"],
        &["tori", "--latitudes", "0.5,1,2", "--fibers-per-torus", "6", "--format", "obj"],
        &["apollonius", "--p", "-1,0", "--p2", "1,0.5", "--count", "5", "--format", "svg"],
        &["apollonius", "--p", "-1,0", "--p2", "1,0.5", "--format", "json"],
        &["hypercube", "--format", "obj"],
    ];
    let mut identical = true;
    for args in runs {
        let (c1, a) = cli(args);
        let (c2, b) = cli(args);
        identical &= c1 == 0 && c2 == 0 && !a.is_empty() && a == b;
    }
    let (bad, _) = cli(&["fiber", "--base", "0,0,0"]);
    Bounds::default()
        .holds("verify --suite all exits 0", code == 0 && text.contains(" 0 failed"))
        .holds("exports byte-identical", identical)
        .holds("usage error exits 2", bad == 2)
        .finish()
}

#[test]
fn acceptance() {
    let results = vec![
        criterion("complex algebra", 1.0, complex_algebra),
        criterion("winding and root counting", 2.0, winding),
        criterion("Moebius cross ratio", 2.0, moebius),
        criterion("inversion", 5.0, inversion),
        criterion("Apollonian families", 2.0, apollonius),
        criterion("stereographic projection", 3.0, stereographic),
        criterion("quaternion rotations", 2.0, quaternions),
        criterion("Hopf fibers", 5.0, hopf),
        criterion("fiber linking", 30.0, linking),
        criterion("latitudinal tori", 10.0, tori),
        criterion("determinism", 60.0, determinism),
    ];
    // written to stderr directly so the table shows without --nocapture
    let mut err = std::io::stderr().lock();
    for o in &results {
        writeln!(
            err,
            "[{}] {:<26} {:>8.3}s / {:>4.0}s  {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs_f64(),
            o.detail
        )
        .unwrap();
    }
    let failed: Vec<&str> = results.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
