//! Stereographic projection of the unit spheres S^1, S^2, S^3 from their
//! last-coordinate pole onto the equatorial hyperplane, plus small spherical
//! utilities and the projected hypercube.

use crate::error::{GeomError, Result};
use crate::inversion::GeneralizedCircle;
use crate::point::ExtPoint;
use crate::scene::Curve3;
use crate::tol;

/// Unit vector in R^D, a point of the sphere S^(D-1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint<const D: usize>(pub(crate) [f64; D]);

pub type S1Point = SpherePoint<2>;
pub type S2Point = SpherePoint<3>;

impl<const D: usize> SpherePoint<D> {
    /// Accepts coordinates whose norm is within `1e-9` of 1 and renormalizes them.
    pub fn new(coords: [f64; D]) -> Result<Self> {
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite("sphere point"));
        }
        let n = norm(&coords);
        if (n - 1.0).abs() > tol::GEOMETRIC {
            return Err(GeomError::NotUnit(n));
        }
        Ok(Self(coords.map(|x| x / n)))
    }

    /// Radial projection of a nonzero vector onto the sphere.
    pub fn normalize(coords: [f64; D]) -> Result<Self> {
        if coords.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::NonFinite("sphere point"));
        }
        let n = norm(&coords);
        if n <= tol::GEOMETRIC {
            return Err(GeomError::InvalidArgument("cannot normalize a zero vector".into()));
        }
        Ok(Self(coords.map(|x| x / n)))
    }

    pub fn coords(&self) -> [f64; D] {
        self.0
    }

    /// The projection pole `(0, ..., 0, 1)`.
    pub fn north() -> Self {
        let mut c = [0.0; D];
        c[D - 1] = 1.0;
        Self(c)
    }

    pub fn south() -> Self {
        let mut c = [0.0; D];
        c[D - 1] = -1.0;
        Self(c)
    }

    pub fn dot(&self, o: &SpherePoint<D>) -> f64 {
        self.0.iter().zip(&o.0).map(|(a, b)| a * b).sum()
    }

    pub fn approx_eq(&self, o: &SpherePoint<D>, tol: f64) -> bool {
        crate::point::distance(&self.0, &o.0) <= tol
    }
}

fn norm<const D: usize>(x: &[f64; D]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Great-circle distance in radians, in `[0, pi]`.
pub fn arc_distance<const D: usize>(p: &SpherePoint<D>, q: &SpherePoint<D>) -> f64 {
    let mut diff = [0.0; D];
    let mut sum = [0.0; D];
    for i in 0..D {
        diff[i] = p.0[i] - q.0[i];
        sum[i] = p.0[i] + q.0[i];
    }
    2.0 * norm(&diff).atan2(norm(&sum))
}

/// Area of a spherical triangle on the unit sphere from its angles (the angle excess).
pub fn spherical_triangle_area(alpha: f64, beta: f64, gamma: f64) -> Result<f64> {
    let excess = alpha + beta + gamma - std::f64::consts::PI;
    if !excess.is_finite() || excess <= 0.0 {
        return Err(GeomError::InvalidArgument(format!(
            "angles sum to at most pi (excess {excess})"
        )));
    }
    Ok(excess)
}

/// Stereographic chart of the unit sphere in R^(N+1) from `(0, ..., 0, 1)`
/// onto the hyperplane `x_(N+1) = 0`.
pub struct StereoChart<const N: usize>;

fn project_slice(x: &[f64], out: &mut [f64]) -> bool {
    let n = out.len();
    let last = x[n];
    let s: f64 = x[..n].iter().map(|v| v * v).sum();
    if last >= 0.0 {
        if s == 0.0 {
            return false;
        }
        // 1 - last = s / (1 + last) on the unit sphere, without cancellation
        let k = (1.0 + last) / s;
        for i in 0..n {
            out[i] = x[i] * k;
        }
    } else {
        let k = 1.0 / (1.0 - last);
        for i in 0..n {
            out[i] = x[i] * k;
        }
    }
    true
}

fn unproject_slice(y: &[f64], out: &mut [f64]) {
    let n = y.len();
    let s: f64 = y.iter().map(|v| v * v).sum();
    if !s.is_finite() {
        out.iter_mut().for_each(|v| *v = 0.0);
        out[n] = 1.0;
        return;
    }
    for i in 0..n {
        out[i] = 2.0 * y[i] / (s + 1.0);
    }
    out[n] = (s - 1.0) / (s + 1.0);
}

macro_rules! stereo_chart {
    ($n:literal, $d:literal) => {
        impl StereoChart<$n> {
            pub fn project(p: &SpherePoint<$d>) -> ExtPoint<$n> {
                let mut out = [0.0; $n];
                if project_slice(&p.0, &mut out) {
                    ExtPoint::Finite(out)
                } else {
                    ExtPoint::Infinity
                }
            }

            pub fn unproject(y: &ExtPoint<$n>) -> SpherePoint<$d> {
                match y {
                    ExtPoint::Infinity => SpherePoint::north(),
                    ExtPoint::Finite(y) => {
                        let mut out = [0.0; $d];
                        unproject_slice(y, &mut out);
                        SpherePoint(out)
                    }
                }
            }
        }
    };
}

stereo_chart!(1, 2);
stereo_chart!(2, 3);
stereo_chart!(3, 4);

/// Whether the circle or line is the projection of a great circle of S^2,
/// i.e. meets the unit circle in two antipodal points: lines must pass
/// through the origin and circles must satisfy `r^2 = 1 + |c|^2`.
pub fn is_great_circle_image(c: &GeneralizedCircle) -> bool {
    if c.is_line() {
        c.gamma.abs() <= tol::GEOMETRIC
    } else {
        (c.gamma + 1.0).abs() <= tol::GEOMETRIC * (1.0 + c.beta.norm_sqr())
    }
}

/// The 16 points `(+-1/2, +-1/2, +-1/2, +-1/2)`; bit `k` of the index set means a
/// negative coordinate `k`.
pub fn hypercube_vertices() -> Vec<SpherePoint<4>> {
    (0..16u32)
        .map(|m| SpherePoint(std::array::from_fn(|k| if m >> k & 1 == 1 { -0.5 } else { 0.5 })))
        .collect()
}

/// Index pairs of vertices differing in exactly one sign.
pub fn hypercube_edges() -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(32);
    for a in 0..16usize {
        for k in 0..4 {
            let b = a ^ (1 << k);
            if a < b {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// The 8 cubical cells: for each axis and sign, the vertices with that sign in that coordinate.
pub fn hypercube_cells() -> Vec<(usize, f64, Vec<usize>)> {
    let mut cells = Vec::with_capacity(8);
    for axis in 0..4 {
        for sign in [1.0, -1.0] {
            let members = (0..16usize)
                .filter(|&m| (m >> axis & 1 == 1) == (sign < 0.0))
                .collect();
            cells.push((axis, sign, members));
        }
    }
    cells
}

/// Points of the great arc between two non-antipodal sphere points, sampled
/// along the chord and pushed back onto the sphere.
pub fn great_arc<const D: usize>(a: &SpherePoint<D>, b: &SpherePoint<D>, samples: usize) -> Vec<SpherePoint<D>> {
    let n = samples.max(2);
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            let chord: [f64; D] = std::array::from_fn(|k| (1.0 - t) * a.0[k] + t * b.0[k]);
            let len = norm(&chord);
            SpherePoint(chord.map(|x| x / len))
        })
        .collect()
}

/// The 32 hypercube edges as great arcs of S^3, stereographically projected.
pub fn hypercube_scene(samples_per_edge: usize) -> Vec<Curve3> {
    let verts = hypercube_vertices();
    hypercube_edges()
        .into_iter()
        .map(|(a, b)| {
            let points = great_arc(&verts[a], &verts[b], samples_per_edge)
                .iter()
                .map(|p| {
                    StereoChart::<3>::project(p)
                        .as_finite()
                        .expect("hypercube edges avoid the pole")
                })
                .collect();
            let mut curve = Curve3::open(points);
            curve.metadata.insert("kind".into(), "hypercube-edge".into());
            curve.metadata.insert("from".into(), a.to_string());
            curve.metadata.insert("to".into(), b.to_string());
            curve
        })
        .collect()
}
