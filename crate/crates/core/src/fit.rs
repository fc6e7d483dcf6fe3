//! Least-squares fitting of circles (planar and in space), lines and tori of
//! revolution.

use nalgebra::{DMatrix, Matrix3, Vector3};

use crate::complex::Complex;
use crate::error::{GeomError, Result};
use crate::inversion::GeneralizedCircle;

/// Circle in R^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit3 {
    pub center: [f64; 3],
    pub radius: f64,
    /// Unit normal of the supporting plane.
    pub normal: [f64; 3],
    /// Root-mean-square distance from the samples to the fitted circle.
    pub residual: f64,
}

/// Torus of revolution about an axis through the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusFit {
    pub major: f64,
    pub minor: f64,
    /// Root-mean-square of the implicit quartic over the samples.
    pub residual: f64,
}

fn smallest_right_singular(m: DMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let cols = m.ncols();
    let svd = m.svd(false, true);
    let vt = svd.v_t.expect("requested right singular vectors");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[a].total_cmp(&svd.singular_values[b]));
    let sv: Vec<f64> = order.iter().map(|&i| svd.singular_values[i]).collect();
    let v: Vec<f64> = (0..cols).map(|j| vt[(order[0], j)]).collect();
    (v, sv)
}

/// Fits a circle or a line to planar points.
///
/// Points are centered and scaled before an algebraic fit of
/// `a |z|^2 + b x + c y + d = 0`; a total least-squares line is preferred
/// whenever it explains the data at least as well. Returns the locus and the
/// root-mean-square Euclidean distance of the points to it.
pub fn fit_generalized_circle(points: &[Complex]) -> Result<(GeneralizedCircle, f64)> {
    if points.len() < 3 {
        return Err(GeomError::InvalidArgument("need at least 3 points".into()));
    }
    if points.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(GeomError::NonFinite("fit input"));
    }
    let n = points.len() as f64;
    let mean = points.iter().sum::<Complex>() / n;
    let scale = (points.iter().map(|z| (z - mean).norm_sqr()).sum::<f64>() / n).sqrt();
    if scale == 0.0 {
        return Err(GeomError::RankDeficient("all points coincide"));
    }
    let w: Vec<Complex> = points.iter().map(|z| (z - mean) / scale).collect();
    let rms = |g: &GeneralizedCircle| {
        (points.iter().map(|z| g.distance(*z).powi(2)).sum::<f64>() / n).sqrt()
    };

    // total least-squares line through the centroid
    let m = DMatrix::from_fn(w.len(), 2, |i, j| if j == 0 { w[i].re } else { w[i].im });
    let (normal, _) = smallest_right_singular(m);
    let line = GeneralizedCircle::line(mean, Complex::new(normal[0], normal[1]) * Complex::new(0.0, -1.0))?;
    let line_res = rms(&line);

    let m = DMatrix::from_fn(w.len(), 4, |i, j| match j {
        0 => w[i].norm_sqr(),
        1 => w[i].re,
        2 => w[i].im,
        _ => 1.0,
    });
    let (v, sv) = smallest_right_singular(m);
    if sv[1] <= 1e-12 * sv[3] {
        return Err(GeomError::RankDeficient("points do not determine a circle"));
    }
    let (a, bw, c) = (v[0], Complex::new(v[1] / 2.0, v[2] / 2.0), v[3]);
    let alpha = a / (scale * scale);
    let beta = bw / scale - mean * alpha;
    let gamma = alpha * mean.norm_sqr() - 2.0 * (bw.conj() * mean).re / scale + c;
    let circle = GeneralizedCircle::new(alpha, beta, gamma);
    match circle {
        Ok(circle) => {
            let circle_res = rms(&circle);
            if line_res <= circle_res + 1e-12 * scale {
                Ok((line, line_res))
            } else {
                Ok((circle, circle_res))
            }
        }
        Err(_) => Ok((line, line_res)),
    }
}

/// Orthonormal frame `(e1, e2, normal)` of the best-fit plane and the centroid.
fn best_plane(points: &[[f64; 3]]) -> Result<([f64; 3], Vector3<f64>, Vector3<f64>, Vector3<f64>)> {
    let n = points.len() as f64;
    let mut c = [0.0; 3];
    for p in points {
        for k in 0..3 {
            c[k] += p[k] / n;
        }
    }
    let mut cov = Matrix3::zeros();
    for p in points {
        let d = Vector3::new(p[0] - c[0], p[1] - c[1], p[2] - c[2]);
        cov += d * d.transpose();
    }
    let eig = cov.symmetric_eigen();
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    if eig.eigenvalues[order[1]] <= 1e-24 * eig.eigenvalues[order[0]].max(f64::MIN_POSITIVE) {
        return Err(GeomError::RankDeficient("points are collinear"));
    }
    let e1 = eig.eigenvectors.column(order[0]).into_owned();
    let normal = eig.eigenvectors.column(order[2]).into_owned();
    let e2 = normal.cross(&e1);
    Ok((c, e1, e2, normal))
}

/// Fits a circle in space: best plane, then an algebraic circle in that plane
/// refined by Gauss-Newton on the geometric distance.
pub fn fit_circle_3d(points: &[[f64; 3]]) -> Result<CircleFit3> {
    if points.len() < 8 {
        return Err(GeomError::InvalidArgument("circle fit needs at least 8 points".into()));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite("fit input"));
    }
    let (c, e1, e2, normal) = best_plane(points)?;
    let planar: Vec<(f64, f64, f64)> = points
        .iter()
        .map(|p| {
            let d = Vector3::new(p[0] - c[0], p[1] - c[1], p[2] - c[2]);
            (d.dot(&e1), d.dot(&e2), d.dot(&normal))
        })
        .collect();
    let zs: Vec<Complex> = planar.iter().map(|&(x, y, _)| Complex::new(x, y)).collect();
    let (g, _) = fit_generalized_circle(&zs)?;
    let (mut center, mut radius) = g
        .center_radius()
        .ok_or(GeomError::RankDeficient("points are collinear"))?;

    for _ in 0..20 {
        // residual d_i = |z_i - c| - r, jacobian rows (-(z_i - c)/|z_i - c|, -1)
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for z in &zs {
            let dz = z - center;
            let dist = dz.norm();
            if dist == 0.0 {
                continue;
            }
            let row = Vector3::new(-dz.re / dist, -dz.im / dist, -1.0);
            let res = dist - radius;
            jtj += row * row.transpose();
            jtr += row * res;
        }
        let Some(step) = jtj.lu().solve(&(-jtr)) else { break };
        center += Complex::new(step[0], step[1]);
        radius += step[2];
        if step.norm() <= 1e-15 * (1.0 + radius) {
            break;
        }
    }

    let residual = (planar
        .iter()
        .map(|&(x, y, h)| ((Complex::new(x, y) - center).norm() - radius).powi(2) + h * h)
        .sum::<f64>()
        / points.len() as f64)
        .sqrt();
    let c3 = Vector3::from(c) + e1 * center.re + e2 * center.im;
    Ok(CircleFit3 {
        center: c3.into(),
        radius,
        normal: normal.into(),
        residual,
    })
}

/// Value of `(|x|^2 + R^2 - r^2)^2 - 4 R^2 s^2`, where `s` is the distance from
/// `x` to the axis (a unit vector through the origin).
pub fn torus_implicit(major: f64, minor: f64, axis: [f64; 3], x: [f64; 3]) -> f64 {
    let (s2, n2) = axial(axis, x);
    let k = n2 + major * major - minor * minor;
    k * k - 4.0 * major * major * s2
}

/// Squared distance to the axis and squared norm.
fn axial(axis: [f64; 3], x: [f64; 3]) -> (f64, f64) {
    let n2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    let h = x[0] * axis[0] + x[1] * axis[1] + x[2] * axis[2];
    ((n2 - h * h).max(0.0), n2)
}

/// Fits the radii of a torus of revolution centered at the origin with the
/// given axis, by Gauss-Newton on the implicit quartic starting from the
/// extreme distances to the axis.
pub fn fit_torus_of_revolution(points: &[[f64; 3]], axis: [f64; 3]) -> Result<TorusFit> {
    if points.len() < 64 {
        return Err(GeomError::InvalidArgument("torus fit needs at least 64 points".into()));
    }
    if points.iter().flatten().chain(axis.iter()).any(|x| !x.is_finite()) {
        return Err(GeomError::NonFinite("fit input"));
    }
    let an = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if an == 0.0 {
        return Err(GeomError::InvalidArgument("torus axis is zero".into()));
    }
    let axis = [axis[0] / an, axis[1] / an, axis[2] / an];
    let data: Vec<(f64, f64)> = points.iter().map(|&p| axial(axis, p)).collect();
    let (smin, smax) = data.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &(s2, _)| {
        (lo.min(s2.sqrt()), hi.max(s2.sqrt()))
    });
    if smax - smin <= 1e-12 * smax {
        return Err(GeomError::RankDeficient("samples do not span the tube"));
    }
    let (mut major, mut minor) = ((smax + smin) / 2.0, (smax - smin) / 2.0);

    let cost = |big: f64, small: f64| {
        data.iter()
            .map(|&(s2, n2)| {
                let k = n2 + big * big - small * small;
                (k * k - 4.0 * big * big * s2).powi(2)
            })
            .sum::<f64>()
    };
    let mut current = cost(major, minor);
    let mut damping = 1e-6;
    for _ in 0..200 {
        let (mut a11, mut a12, mut a22, mut g1, mut g2) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(s2, n2) in &data {
            let k = n2 + major * major - minor * minor;
            let f = k * k - 4.0 * major * major * s2;
            let d_big = 4.0 * k * major - 8.0 * major * s2;
            let d_small = -4.0 * k * minor;
            a11 += d_big * d_big;
            a12 += d_big * d_small;
            a22 += d_small * d_small;
            g1 += d_big * f;
            g2 += d_small * f;
        }
        let mut improved = false;
        while damping < 1e12 {
            let (b11, b22) = (a11 * (1.0 + damping), a22 * (1.0 + damping));
            let det = b11 * b22 - a12 * a12;
            if det == 0.0 {
                break;
            }
            let step_big = -(b22 * g1 - a12 * g2) / det;
            let step_small = -(b11 * g2 - a12 * g1) / det;
            let trial = cost(major + step_big, minor + step_small);
            if trial <= current {
                major += step_big;
                minor += step_small;
                let gain = current - trial;
                current = trial;
                damping = (damping / 10.0).max(1e-15);
                improved = gain > 1e-30 * (1.0 + current);
                break;
            }
            damping *= 10.0;
        }
        if !improved {
            break;
        }
    }
    let minor = minor.abs();
    Ok(TorusFit {
        major,
        minor,
        residual: (current / data.len() as f64).sqrt(),
    })
}
