//! The complex projective line, cross ratios and Moebius transformations.
//!
//! The point at infinity is a variant of [`RiemannPoint`], never a large
//! finite number. Maps are stored as raw matrices; determinant normalization
//! happens only when comparing.

use crate::complex::Complex;
use crate::error::{GeomError, Result};
use crate::tol;

/// A point of the complex projective line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RiemannPoint {
    Finite(Complex),
    Infinity,
}

impl RiemannPoint {
    pub fn finite(re: f64, im: f64) -> Self {
        RiemannPoint::Finite(Complex::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RiemannPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex> {
        match *self {
            RiemannPoint::Finite(z) => Some(z),
            RiemannPoint::Infinity => None,
        }
    }

    /// Finite points compare with a mixed absolute/relative tolerance;
    /// infinity only equals infinity.
    pub fn approx_eq(&self, other: &RiemannPoint, tol: f64) -> bool {
        match (self, other) {
            (RiemannPoint::Infinity, RiemannPoint::Infinity) => true,
            (RiemannPoint::Finite(a), RiemannPoint::Finite(b)) => {
                (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
            }
            _ => false,
        }
    }
}

impl From<Complex> for RiemannPoint {
    fn from(z: Complex) -> Self {
        RiemannPoint::Finite(z)
    }
}

/// `z -> (a z + b) / (c z + d)` with `ad - bc != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub a: Complex,
    pub b: Complex,
    pub c: Complex,
    pub d: Complex,
}

fn scale(m: &MoebiusMap) -> f64 {
    m.a.norm().max(m.b.norm()).max(m.c.norm()).max(m.d.norm())
}

impl MoebiusMap {
    pub fn new(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<Self> {
        let m = Self { a, b, c, d };
        let s = scale(&m);
        if !s.is_finite() {
            return Err(GeomError::NonFinite("Moebius coefficient"));
        }
        if s == 0.0 || m.determinant().norm() <= tol::ARITHMETIC * s * s {
            return Err(GeomError::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        Self {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    pub fn determinant(&self) -> Complex {
        self.a * self.d - self.b * self.c
    }

    pub fn apply(&self, p: RiemannPoint) -> RiemannPoint {
        match p {
            RiemannPoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den.norm() <= tol::ARITHMETIC * (self.c.norm() * z.norm() + self.d.norm()) {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite((self.a * z + self.b) / den)
                }
            }
            RiemannPoint::Infinity => {
                if self.c.norm() <= tol::ARITHMETIC * scale(self) {
                    RiemannPoint::Infinity
                } else {
                    RiemannPoint::Finite(self.a / self.c)
                }
            }
        }
    }

    pub fn apply_complex(&self, z: Complex) -> RiemannPoint {
        self.apply(RiemannPoint::Finite(z))
    }

    /// `self . other`, i.e. the matrix product `M_self M_other`.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// Scaled to determinant 1, with the sign chosen so the first nonzero
    /// entry has positive real part (positive imaginary part on a tie).
    pub fn canonical(&self) -> MoebiusMap {
        let k = Complex::new(1.0, 0.0) / self.determinant().sqrt();
        let mut m = MoebiusMap {
            a: self.a * k,
            b: self.b * k,
            c: self.c * k,
            d: self.d * k,
        };
        let eps = tol::ARITHMETIC * scale(&m);
        let lead = [m.a, m.b, m.c, m.d]
            .into_iter()
            .find(|z| z.norm() > eps)
            .unwrap_or(m.a);
        let flip = if lead.re.abs() > eps {
            lead.re < 0.0
        } else {
            lead.im < 0.0
        };
        if flip {
            m = MoebiusMap {
                a: -m.a,
                b: -m.b,
                c: -m.c,
                d: -m.d,
            };
        }
        m
    }

    /// Equality up to a nonzero scalar.
    pub fn approx_eq(&self, other: &MoebiusMap, tol: f64) -> bool {
        let (p, q) = (self.canonical(), other.canonical());
        [(p.a, q.a), (p.b, q.b), (p.c, q.c), (p.d, q.d)]
            .iter()
            .all(|(x, y)| (x - y).norm() <= tol * (1.0 + x.norm().max(y.norm())))
    }
}

fn distinct(points: &[RiemannPoint]) -> Result<()> {
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].approx_eq(&points[j], tol::GEOMETRIC) {
                return Err(GeomError::CoincidentPoints);
            }
        }
    }
    Ok(())
}

/// The map sending `z1 -> 0`, `z2 -> 1`, `z3 -> infinity`.
pub fn from_three_points(z1: RiemannPoint, z2: RiemannPoint, z3: RiemannPoint) -> Result<MoebiusMap> {
    use RiemannPoint::{Finite, Infinity};
    distinct(&[z1, z2, z3])?;
    let one = Complex::new(1.0, 0.0);
    let zero = Complex::new(0.0, 0.0);
    // With one input at infinity, divide through by it and take the limit.
    let (a, b, c, d) = match (z1, z2, z3) {
        (Infinity, Finite(z2), Finite(z3)) => (zero, z2 - z3, one, -z3),
        (Finite(z1), Infinity, Finite(z3)) => (one, -z1, one, -z3),
        (Finite(z1), Finite(z2), Infinity) => (one, -z1, zero, z2 - z1),
        (Finite(z1), Finite(z2), Finite(z3)) => {
            (z2 - z3, -z1 * (z2 - z3), z2 - z1, -z3 * (z2 - z1))
        }
        _ => return Err(GeomError::CoincidentPoints),
    };
    MoebiusMap::new(a, b, c, d)
}

/// The unique map sending each `from[k]` to `to[k]`.
pub fn between_triples(from: [RiemannPoint; 3], to: [RiemannPoint; 3]) -> Result<MoebiusMap> {
    let h = from_three_points(from[0], from[1], from[2])?;
    let g = from_three_points(to[0], to[1], to[2])?;
    Ok(g.inverse().compose(&h))
}

/// `(a, b; c, d) = (a - c)(b - d) / ((a - d)(b - c))`. A point at infinity
/// cancels the two factors that contain it.
pub fn cross_ratio(a: RiemannPoint, b: RiemannPoint, c: RiemannPoint, d: RiemannPoint) -> Result<Complex> {
    use RiemannPoint::{Finite, Infinity};
    distinct(&[a, b, c, d])?;
    let v = match (a, b, c, d) {
        (Infinity, Finite(b), Finite(c), Finite(d)) => (b - d) / (b - c),
        (Finite(a), Infinity, Finite(c), Finite(d)) => (a - c) / (a - d),
        (Finite(a), Finite(b), Infinity, Finite(d)) => (b - d) / (a - d),
        (Finite(a), Finite(b), Finite(c), Infinity) => (a - c) / (b - c),
        (Finite(a), Finite(b), Finite(c), Finite(d)) => ((a - c) * (b - d)) / ((a - d) * (b - c)),
        _ => return Err(GeomError::CoincidentPoints),
    };
    Ok(v)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                for l in 0..4 {
                    let p = [i, j, k, l];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// All values the cross ratio takes under reordering of a quadruple whose
/// cross ratio is `lambda`, found by evaluating the 24 permutations of the
/// witness `(inf, 0; 1, lambda)`. Sorted by real then imaginary part.
pub fn cross_ratio_orbit(lambda: Complex) -> Result<Vec<Complex>> {
    if !lambda.re.is_finite() || !lambda.im.is_finite() {
        return Err(GeomError::NonFinite("cross ratio"));
    }
    let witness = [
        RiemannPoint::Infinity,
        RiemannPoint::finite(0.0, 0.0),
        RiemannPoint::finite(1.0, 0.0),
        RiemannPoint::Finite(lambda),
    ];
    distinct(&witness).map_err(|_| {
        GeomError::InvalidArgument(format!("cross ratio {lambda} is degenerate (0 or 1)"))
    })?;
    let mut values: Vec<Complex> = Vec::new();
    for p in permutations4() {
        let v = cross_ratio(witness[p[0]], witness[p[1]], witness[p[2]], witness[p[3]])?;
        if !values
            .iter()
            .any(|u| (u - v).norm() <= tol::GEOMETRIC * (1.0 + v.norm()))
        {
            values.push(v);
        }
    }
    values.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(values)
}
