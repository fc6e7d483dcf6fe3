//! Linking number of two closed polygonal space curves.

use std::f64::consts::PI;

use crate::error::{GeomError, Result};

/// Outcome of a linking computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Linking {
    pub value: i64,
    /// The Gauss sum before rounding.
    pub raw: f64,
    /// Distance from `raw` to `value`.
    pub residual: f64,
}

pub const MIN_SAMPLES: usize = 64;
pub const MIN_SEPARATION: f64 = 1e-6;
pub const MAX_RESIDUAL: f64 = 0.05;

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn unit(a: [f64; 3]) -> Option<[f64; 3]> {
    let n = dot(a, a).sqrt();
    (n > 1e-300).then(|| [a[0] / n, a[1] / n, a[2] / n])
}

/// Signed solid angle subtended by segment pair `(p1, p2)`, `(p3, p4)`, divided
/// by `4 pi`: the exact Gauss integral over the two straight segments.
fn segment_pair(p1: [f64; 3], p2: [f64; 3], p3: [f64; 3], p4: [f64; 3]) -> f64 {
    let r13 = sub(p3, p1);
    let r14 = sub(p4, p1);
    let r23 = sub(p3, p2);
    let r24 = sub(p4, p2);
    let (Some(n1), Some(n2), Some(n3), Some(n4)) = (
        unit(cross(r13, r14)),
        unit(cross(r14, r24)),
        unit(cross(r24, r23)),
        unit(cross(r23, r13)),
    ) else {
        return 0.0;
    };
    let omega = dot(n1, n2).clamp(-1.0, 1.0).asin()
        + dot(n2, n3).clamp(-1.0, 1.0).asin()
        + dot(n3, n4).clamp(-1.0, 1.0).asin()
        + dot(n4, n1).clamp(-1.0, 1.0).asin();
    let orient = dot(cross(sub(p4, p3), sub(p2, p1)), r13);
    if orient == 0.0 {
        0.0
    } else {
        omega.copysign(orient) / (4.0 * PI)
    }
}

/// Gauss linking number of two closed polylines (each given without a
/// repeated endpoint), summed exactly over segment pairs and rounded.
///
/// Positive when the curves link like the fibers of the Hopf map with both
/// oriented by increasing phase.
pub fn linking_number(c1: &[[f64; 3]], c2: &[[f64; 3]]) -> Result<Linking> {
    if c1.len() < MIN_SAMPLES || c2.len() < MIN_SAMPLES {
        return Err(GeomError::InvalidArgument(format!(
            "linking needs at least {MIN_SAMPLES} samples per curve"
        )));
    }
    if c1.iter().chain(c2).flatten().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite("curve sample"));
    }
    let mut closest = f64::INFINITY;
    for a in c1 {
        for b in c2 {
            let d = sub(*a, *b);
            closest = closest.min(dot(d, d));
        }
    }
    let closest = closest.sqrt();
    if closest <= MIN_SEPARATION {
        return Err(GeomError::CurvesTouching(closest));
    }
    let (n, m) = (c1.len(), c2.len());
    let mut raw = 0.0;
    for i in 0..n {
        let (p1, p2) = (c1[i], c1[(i + 1) % n]);
        for j in 0..m {
            raw += segment_pair(p1, p2, c2[j], c2[(j + 1) % m]);
        }
    }
    let value = raw.round();
    let residual = (raw - value).abs();
    if residual >= MAX_RESIDUAL {
        return Err(GeomError::LinkingUnresolved { value: raw, residual });
    }
    Ok(Linking {
        value: value as i64,
        raw,
        residual,
    })
}
