//! Inversion in circles and spheres, generalized circles (circles or lines)
//! in one algebraic form, and the two Apollonian circle families of a point
//! pair.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::complex::Complex;
use crate::error::{GeomError, Result};
use crate::moebius::{MoebiusMap, RiemannPoint};
use crate::point::{norm_sqr, ExtPoint};
use crate::tol;

/// Sphere in R^N (a circle when N = 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere<const N: usize> {
    pub center: [f64; N],
    pub radius: f64,
}

pub type Circle = Sphere<2>;

impl<const N: usize> Sphere<N> {
    pub fn new(center: [f64; N], radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidArgument(format!(
                "sphere radius must be positive, got {radius}"
            )));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(GeomError::NonFinite("sphere center"));
        }
        Ok(Self { center, radius })
    }

    /// `a + (r / |p - a|)^2 (p - a)`, exchanging the center with infinity.
    pub fn invert_point(&self, p: &ExtPoint<N>) -> ExtPoint<N> {
        match p {
            ExtPoint::Infinity => ExtPoint::Finite(self.center),
            ExtPoint::Finite(x) => {
                let mut d = [0.0; N];
                for i in 0..N {
                    d[i] = x[i] - self.center[i];
                }
                let n2 = norm_sqr(&d);
                if n2 == 0.0 {
                    return ExtPoint::Infinity;
                }
                let k = self.radius * self.radius / n2;
                let mut out = [0.0; N];
                for i in 0..N {
                    out[i] = self.center[i] + k * d[i];
                }
                ExtPoint::Finite(out)
            }
        }
    }
}

impl Sphere<2> {
    pub fn circle(center: Complex, radius: f64) -> Result<Self> {
        Self::new([center.re, center.im], radius)
    }

    pub fn center_complex(&self) -> Complex {
        Complex::new(self.center[0], self.center[1])
    }

    pub fn invert_complex(&self, z: RiemannPoint) -> RiemannPoint {
        match self.invert_point(&to_ext(z)) {
            ExtPoint::Finite([x, y]) => RiemannPoint::finite(x, y),
            ExtPoint::Infinity => RiemannPoint::Infinity,
        }
    }
}

fn to_ext(z: RiemannPoint) -> ExtPoint<2> {
    match z {
        RiemannPoint::Finite(z) => ExtPoint::Finite([z.re, z.im]),
        RiemannPoint::Infinity => ExtPoint::Infinity,
    }
}

/// The locus `alpha |z|^2 + conj(beta) z + beta conj(z) + gamma = 0`.
///
/// Normalized so that `alpha` is 1 (a circle with center `-beta` and radius
/// `sqrt(|beta|^2 - gamma)`) or 0 (a line with unit normal `beta`, sign
/// fixed so the normal points into the half plane `Re > 0`, or `Im > 0` for
/// horizontal normals).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedCircle {
    pub alpha: f64,
    pub beta: Complex,
    pub gamma: f64,
}

/// Relative size below which the `|z|^2` coefficient is treated as zero.
const LINE_THRESHOLD: f64 = 1e-10;

impl GeneralizedCircle {
    pub fn new(alpha: f64, beta: Complex, gamma: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.re.is_finite() || !beta.im.is_finite() || !gamma.is_finite() {
            return Err(GeomError::NonFinite("generalized circle coefficient"));
        }
        let bn = beta.norm();
        let g = if alpha.abs() > LINE_THRESHOLD * bn && alpha != 0.0 {
            Self {
                alpha: 1.0,
                beta: beta / alpha,
                gamma: gamma / alpha,
            }
        } else {
            if bn == 0.0 {
                return Err(GeomError::InvalidArgument(
                    "generalized circle has no |z|^2 or linear term".into(),
                ));
            }
            let mut beta = beta / bn;
            let mut gamma = gamma / bn;
            if beta.re < -tol::ARITHMETIC || (beta.re.abs() <= tol::ARITHMETIC && beta.im < 0.0) {
                beta = -beta;
                gamma = -gamma;
            }
            Self {
                alpha: 0.0,
                beta,
                gamma,
            }
        };
        let disc = g.beta.norm_sqr() - g.alpha * g.gamma;
        if !(disc > tol::ARITHMETIC * (1.0 + g.gamma.abs())) {
            return Err(GeomError::InvalidArgument(
                "locus is empty or a single point".into(),
            ));
        }
        Ok(g)
    }

    pub fn circle(center: Complex, radius: f64) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(GeomError::InvalidArgument(format!(
                "circle radius must be positive, got {radius}"
            )));
        }
        Self::new(1.0, -center, center.norm_sqr() - radius * radius)
    }

    /// Line through `point` with the given nonzero direction.
    pub fn line(point: Complex, direction: Complex) -> Result<Self> {
        let n = direction * Complex::new(0.0, 1.0);
        Self::new(0.0, n, -2.0 * (n.conj() * point).re)
    }

    pub fn line_through(p: Complex, q: Complex) -> Result<Self> {
        if (p - q).norm() == 0.0 {
            return Err(GeomError::CoincidentPoints);
        }
        Self::line(p, q - p)
    }

    pub fn is_line(&self) -> bool {
        self.alpha == 0.0
    }

    /// Center and radius, or `None` for a line.
    pub fn center_radius(&self) -> Option<(Complex, f64)> {
        (!self.is_line()).then(|| (-self.beta, (self.beta.norm_sqr() - self.gamma).sqrt()))
    }

    /// Value of the defining form at `z`.
    pub fn eval(&self, z: Complex) -> f64 {
        self.alpha * z.norm_sqr() + 2.0 * (self.beta.conj() * z).re + self.gamma
    }

    /// Euclidean distance from `z` to the locus.
    pub fn distance(&self, z: Complex) -> f64 {
        match self.center_radius() {
            Some((c, r)) => ((z - c).norm() - r).abs(),
            None => self.eval(z).abs() / (2.0 * self.beta.norm()),
        }
    }

    pub fn contains(&self, z: Complex, tol: f64) -> bool {
        self.distance(z) <= tol
    }

    /// Point of a line closest to the origin.
    fn foot(&self) -> Complex {
        self.beta * (-self.gamma / (2.0 * self.beta.norm_sqr()))
    }

    /// `n` points on a circle, or `n` points spread over `[-half_length, half_length]` of a line
    /// around its point closest to the origin.
    pub fn sample(&self, n: usize, half_length: f64) -> Vec<Complex> {
        match self.center_radius() {
            Some((c, r)) => (0..n)
                .map(|k| c + Complex::from_polar(r, 2.0 * PI * k as f64 / n as f64))
                .collect(),
            None => {
                let dir = self.beta * Complex::new(0.0, 1.0) / self.beta.norm();
                let f = self.foot();
                let den = (n.max(2) - 1) as f64;
                (0..n)
                    .map(|k| f + dir * (half_length * (2.0 * k as f64 / den - 1.0)))
                    .collect()
            }
        }
    }

    /// Same locus within a relative tolerance.
    pub fn approx_eq(&self, other: &GeneralizedCircle, tol: f64) -> bool {
        match (self.center_radius(), other.center_radius()) {
            (Some((c1, r1)), Some((c2, r2))) => {
                let scale = 1.0 + c1.norm().max(c2.norm()) + r1.max(r2);
                (c1 - c2).norm() <= tol * scale && (r1 - r2).abs() <= tol * scale
            }
            (None, None) => {
                let scale = 1.0 + self.gamma.abs().max(other.gamma.abs());
                let same = (self.beta - other.beta).norm() <= tol && (self.gamma - other.gamma).abs() <= tol * scale;
                let flipped = (self.beta + other.beta).norm() <= tol && (self.gamma + other.gamma).abs() <= tol * scale;
                same || flipped
            }
            _ => false,
        }
    }

    /// Inversion in this circle, or reflection when it is a line.
    pub fn invert(&self, z: RiemannPoint) -> RiemannPoint {
        match self.center_radius() {
            Some((c, r)) => Sphere::<2> {
                center: [c.re, c.im],
                radius: r,
            }
            .invert_complex(z),
            None => match z {
                RiemannPoint::Infinity => RiemannPoint::Infinity,
                RiemannPoint::Finite(z) => {
                    RiemannPoint::Finite(z - self.beta * (self.eval(z) / self.beta.norm_sqr()))
                }
            },
        }
    }

    /// Image of `other` under inversion in (or reflection across) `self`.
    pub fn invert_locus(&self, other: &GeneralizedCircle) -> GeneralizedCircle {
        match self.center_radius() {
            Some((c, r)) => invert_circle(&Sphere { center: [c.re, c.im], radius: r }, other),
            None => {
                // reflection z -> z - beta (2 Re(conj(beta) z) + gamma) with |beta| = 1,
                // i.e. z' = -beta^2 conj(z) - gamma beta
                let (b, g) = (self.beta, self.gamma);
                let rot = -(b * b);
                let shift = -b * g;
                // substitute z = rot conj(z') + shift (the reflection is an involution)
                let o = other;
                let beta = rot * (o.beta + shift * o.alpha).conj();
                let gamma = o.alpha * shift.norm_sqr() + 2.0 * (o.beta.conj() * shift).re + o.gamma;
                GeneralizedCircle::new(o.alpha, beta, gamma)
                    .expect("reflection preserves nondegenerate loci")
            }
        }
    }
}

/// Image of a circle or line under inversion in the circle `s`.
///
/// Circles through the center of `s` become lines and lines missing the
/// center become circles through it; lines through the center are fixed.
pub fn invert_circle(s: &Circle, k: &GeneralizedCircle) -> GeneralizedCircle {
    let a = s.center_complex();
    let r2 = s.radius * s.radius;
    // translate so the center of inversion is the origin
    let beta_t = k.beta + k.alpha * a;
    let gamma_t = k.alpha * a.norm_sqr() + 2.0 * (k.beta.conj() * a).re + k.gamma;
    // w -> r^2 / conj(w) swaps the |w|^2 and constant coefficients
    let alpha_i = gamma_t;
    let beta_i = beta_t * r2;
    let gamma_i = k.alpha * r2 * r2;
    // translate back
    let beta = beta_i - alpha_i * a;
    let gamma = alpha_i * a.norm_sqr() - 2.0 * (beta_i.conj() * a).re + gamma_i;
    GeneralizedCircle::new(alpha_i, beta, gamma).expect("inversion preserves nondegenerate loci")
}

/// The Moebius map equal to `i_c(i_k(z))`; the two conjugations cancel.
pub fn compose_inversions(c: &Circle, k: &Circle) -> MoebiusMap {
    let (ac, ak) = (c.center_complex(), k.center_complex());
    let (rc2, rk2) = (c.radius * c.radius, k.radius * k.radius);
    let delta = ak.conj() - ac.conj();
    let rk = Complex::new(rk2, 0.0);
    MoebiusMap {
        a: ac * delta + rc2,
        b: ac * (rk - delta * ak) - ak * rc2,
        c: delta,
        d: rk - delta * ak,
    }
}

/// Angle between the tangent lines at an intersection point, in `[0, pi/2]`,
/// and whether it is a right angle within `tol`. Parallel lines meet at
/// infinity with angle 0.
pub fn circles_orthogonal(c1: &GeneralizedCircle, c2: &GeneralizedCircle, tol: f64) -> Result<(f64, bool)> {
    let d1 = c1.beta.norm_sqr() - c1.alpha * c1.gamma;
    let d2 = c2.beta.norm_sqr() - c2.alpha * c2.gamma;
    let num = 2.0 * (c1.beta * c2.beta.conj()).re - c1.alpha * c2.gamma - c2.alpha * c1.gamma;
    let cos = num / (2.0 * (d1 * d2).sqrt());
    if cos.abs() > 1.0 + tol::GEOMETRIC {
        return Err(GeomError::DisjointLoci);
    }
    let angle = cos.abs().min(1.0).acos();
    Ok((angle, (angle - FRAC_PI_2).abs() <= tol))
}

/// Which Apollonian family a locus belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Passes through both points.
    Elliptic,
    /// Exchanges the two points under inversion.
    Hyperbolic,
}

/// Both Apollonian families of a point pair, each starting with its line member.
#[derive(Debug, Clone, PartialEq)]
pub struct ApollonianConfig {
    pub p: Complex,
    pub p2: Complex,
    pub elliptic: Vec<GeneralizedCircle>,
    pub hyperbolic: Vec<GeneralizedCircle>,
}

/// Spacing of `ln(|z - p| / |z - p2|)` between consecutive hyperbolic members.
pub const HYPERBOLIC_LOG_STEP: f64 = 0.6;

/// Generates `n_elliptic` circles through `p` and `p2` and `n_hyperbolic`
/// circles for which `p` and `p2` are inverse points.
///
/// Elliptic member `k` has its center on the perpendicular bisector at
/// `h cot(k pi / n)` from the midpoint (`h` is half the distance between the
/// points), so member 0 is the line through both points and the family is
/// closed under inversion in any of its members. Hyperbolic members are the
/// level sets `|z - p| = kappa |z - p2|` with `ln kappa` in the order
/// `0, +s, -s, +2s, -2s, ...`; member 0 is the perpendicular bisector.
pub fn apollonian_families(p: Complex, p2: Complex, n_elliptic: usize, n_hyperbolic: usize) -> Result<ApollonianConfig> {
    if (p - p2).norm() <= tol::GEOMETRIC * (1.0 + p.norm()) {
        return Err(GeomError::CoincidentPoints);
    }
    let m = (p + p2) * 0.5;
    let h = (p2 - p).norm() / 2.0;
    let u = (p2 - p) / (2.0 * h);
    let v = u * Complex::new(0.0, 1.0);

    let mut elliptic = Vec::with_capacity(n_elliptic);
    for k in 0..n_elliptic {
        if k == 0 {
            elliptic.push(GeneralizedCircle::line_through(p, p2)?);
        } else {
            let theta = k as f64 * PI / n_elliptic as f64;
            let center = m + v * (h * theta.cos() / theta.sin());
            elliptic.push(GeneralizedCircle::circle(center, h / theta.sin())?);
        }
    }

    let mut hyperbolic = Vec::with_capacity(n_hyperbolic);
    for k in 0..n_hyperbolic {
        if k == 0 {
            hyperbolic.push(GeneralizedCircle::line(m, v)?);
        } else {
            let step = k.div_ceil(2) as f64;
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let kappa = (sign * step * HYPERBOLIC_LOG_STEP).exp();
            let k2 = kappa * kappa;
            let center = (p - p2 * k2) / (1.0 - k2);
            let radius = kappa * 2.0 * h / (1.0 - k2).abs();
            hyperbolic.push(GeneralizedCircle::circle(center, radius)?);
        }
    }

    Ok(ApollonianConfig {
        p,
        p2,
        elliptic,
        hyperbolic,
    })
}

impl ApollonianConfig {
    /// Classifies an arbitrary locus against the (continuous) configuration.
    pub fn family_of(&self, c: &GeneralizedCircle, tol: f64) -> Option<Family> {
        if c.contains(self.p, tol) && c.contains(self.p2, tol) {
            return Some(Family::Elliptic);
        }
        match c.invert(self.p.into()) {
            RiemannPoint::Finite(q) if (q - self.p2).norm() <= tol * (1.0 + self.p2.norm()) => {
                Some(Family::Hyperbolic)
            }
            _ => None,
        }
    }

    pub fn circles(&self) -> impl Iterator<Item = (Family, &GeneralizedCircle)> {
        self.elliptic
            .iter()
            .map(|c| (Family::Elliptic, c))
            .chain(self.hyperbolic.iter().map(|c| (Family::Hyperbolic, c)))
    }
}
