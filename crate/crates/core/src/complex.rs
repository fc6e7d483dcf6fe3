//! Complex plane: polar form, roots of unity, sampled closed paths and
//! winding-number root counting.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{GeomError, Result};

pub use num_complex::Complex64 as Complex;

/// Modulus and argument of a complex number. The argument lives in (-pi, pi]
/// and the zero value is canonically `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub r: f64,
    pub theta: f64,
}

impl PolarForm {
    pub fn to_complex(self) -> Complex {
        from_polar(self)
    }
}

/// Argument in (-pi, pi]. `atan2` may return -pi for a negative zero imaginary part.
pub fn arg(z: Complex) -> f64 {
    let t = z.im.atan2(z.re);
    if t <= -PI {
        PI
    } else {
        t
    }
}

pub fn to_polar(z: Complex) -> PolarForm {
    let r = z.norm();
    if r == 0.0 {
        return PolarForm { r: 0.0, theta: 0.0 };
    }
    PolarForm { r, theta: arg(z) }
}

pub fn from_polar(p: PolarForm) -> Complex {
    Complex::new(p.r * p.theta.cos(), p.r * p.theta.sin())
}

/// The `n` solutions of `z^n = 1`, starting at 1 and proceeding counter-clockwise.
pub fn roots_of_unity(n: usize) -> Result<Vec<Complex>> {
    if n == 0 {
        return Err(GeomError::InvalidArgument(
            "roots of unity need n >= 1".into(),
        ));
    }
    Ok((0..n)
        .map(|k| {
            if k == 0 {
                Complex::new(1.0, 0.0)
            } else {
                Complex::from_polar(1.0, TAU * k as f64 / n as f64)
            }
        })
        .collect())
}

/// A closed path stored as a snapshot of samples. The last sample is
/// implicitly joined back to the first.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedPath {
    samples: Vec<Complex>,
}

impl ClosedPath {
    pub fn new(samples: Vec<Complex>) -> Result<Self> {
        if samples.len() < 3 {
            return Err(GeomError::InvalidArgument(format!(
                "a closed path needs at least 3 samples, got {}",
                samples.len()
            )));
        }
        if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GeomError::NonFinite("path sample"));
        }
        Ok(Self { samples })
    }

    /// `center + radius * e^{2 pi i t}` at `n` uniform parameter values.
    pub fn circle(center: Complex, radius: f64, n: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidArgument(format!(
                "circle radius must be positive, got {radius}"
            )));
        }
        let samples = (0..n)
            .map(|k| center + Complex::from_polar(radius, TAU * k as f64 / n as f64))
            .collect();
        Self::new(samples)
    }

    pub fn samples(&self) -> &[Complex] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// Total wrapped argument change around the origin, in turns, without rounding.
pub fn winding_sum(path: &ClosedPath) -> Result<f64> {
    let s = path.samples();
    let n = s.len();
    let mut total = 0.0;
    for k in 0..n {
        let z = s[k];
        if z.norm_sqr() == 0.0 {
            return Err(GeomError::DegeneratePath { index: k });
        }
        let w = s[(k + 1) % n];
        if w.norm_sqr() == 0.0 {
            return Err(GeomError::DegeneratePath { index: (k + 1) % n });
        }
        let inc = arg(w / z);
        if inc.abs() >= FRAC_PI_2 {
            return Err(GeomError::Undersampled {
                index: k,
                increment: inc,
            });
        }
        total += inc;
    }
    Ok(total / TAU)
}

/// Number of counter-clockwise turns the path makes around 0.
pub fn winding_number(path: &ClosedPath) -> Result<i64> {
    let value = winding_sum(path)?;
    let nearest = value.round();
    let residual = (value - nearest).abs();
    if residual >= 0.01 {
        return Err(GeomError::WindingInconsistent { value, residual });
    }
    Ok(nearest as i64)
}

/// Pointwise image of a path. Resampling is left to the caller.
pub fn map_path<F>(f: F, path: &ClosedPath) -> Result<ClosedPath>
where
    F: Fn(Complex) -> Complex,
{
    let samples: Vec<Complex> = path.samples().iter().map(|&z| f(z)).collect();
    if samples.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(GeomError::NonFinite("image of path sample"));
    }
    ClosedPath::new(samples)
}

/// Polynomial with complex coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex>,
}

impl Polynomial {
    /// Trailing zero coefficients are dropped; the zero polynomial is rejected.
    pub fn new(mut coeffs: Vec<Complex>) -> Result<Self> {
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(GeomError::NonFinite("polynomial coefficient"));
        }
        while coeffs.last().is_some_and(|c| c.norm_sqr() == 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(GeomError::InvalidArgument(
                "the zero polynomial has no degree".into(),
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `1 + sum |c_k| / |c_n|`; every root lies strictly inside this radius.
    pub fn root_bound(&self) -> f64 {
        let lead = self.coeffs[self.degree()].norm();
        1.0 + self.coeffs.iter().map(|c| c.norm()).sum::<f64>() / lead
    }
}

const MAX_COUNT_SAMPLES: usize = 1 << 18;

/// Roots of `p` strictly inside `|z| < radius`, counted with multiplicity,
/// as the winding number of the image of that circle under `p`.
///
/// Starts at `max(256, 64 (deg + 1))` samples and doubles only while the image
/// is undersampled; any other winding error is returned as is.
pub fn count_roots_by_winding(p: &Polynomial, radius: f64) -> Result<usize> {
    let mut n = (64 * (p.degree() + 1)).max(256);
    loop {
        let circle = ClosedPath::circle(Complex::new(0.0, 0.0), radius, n)?;
        let image = map_path(|z| p.eval(z), &circle)?;
        match winding_number(&image) {
            Ok(w) => {
                return usize::try_from(w).map_err(|_| GeomError::WindingInconsistent {
                    value: w as f64,
                    residual: 0.0,
                })
            }
            Err(GeomError::Undersampled { .. }) if n < MAX_COUNT_SAMPLES => n *= 2,
            Err(e) => return Err(e),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn polar_examples() {
        let p = to_polar(c(1.0, 1.0) / 2f64.sqrt());
        assert!((p.r - 1.0).abs() < 1e-15 && (p.theta - PI / 4.0).abs() < 1e-15);
        let p = to_polar(c(1.0, 3f64.sqrt()));
        assert!((p.r - 2.0).abs() < 1e-15 && (p.theta - PI / 3.0).abs() < 1e-15);
        let p = to_polar(c(-1.0, 0.0));
        assert_eq!((p.r, p.theta), (1.0, PI));
        // negative zero imaginary part stays on the +pi side of the cut
        assert_eq!(to_polar(c(-1.0, -0.0)).theta, PI);
        assert_eq!(to_polar(c(0.0, 0.0)), PolarForm { r: 0.0, theta: 0.0 });
    }

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(roots_of_unity(1).unwrap(), vec![c(1.0, 0.0)]);
        let four = roots_of_unity(4).unwrap();
        for (z, e) in four.iter().zip([c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]) {
            assert!((z - e).norm() < 1e-15);
        }
        for z in roots_of_unity(3).unwrap() {
            assert!((z * z * z - 1.0).norm() < 1e-12);
        }
        assert!(matches!(roots_of_unity(0), Err(GeomError::InvalidArgument(_))));
    }

    #[test]
    fn winding_examples() {
        let unit = ClosedPath::circle(c(0.0, 0.0), 1.0, 256).unwrap();
        assert_eq!(winding_number(&unit).unwrap(), 1);
        let shifted = ClosedPath::circle(c(2.0, 0.0), 1.0, 256).unwrap();
        assert_eq!(winding_number(&shifted).unwrap(), 0);
        let squared = map_path(|z| z * z, &unit).unwrap();
        assert_eq!(winding_number(&squared).unwrap(), 2);
        let both = map_path(|z| z * (z - 2.0), &unit).unwrap();
        assert_eq!(winding_number(&both).unwrap(), 1);
    }

    #[test]
    fn winding_errors() {
        let through_origin = ClosedPath::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]).unwrap();
        assert_eq!(
            winding_number(&through_origin),
            Err(GeomError::DegeneratePath { index: 1 })
        );
        // three samples of the unit circle step by 2 pi / 3
        let coarse = ClosedPath::circle(c(0.0, 0.0), 1.0, 3).unwrap();
        assert!(matches!(
            winding_number(&coarse),
            Err(GeomError::Undersampled { .. })
        ));
        // exactly pi/2 steps are rejected too
        let square = ClosedPath::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]).unwrap();
        assert!(matches!(
            winding_number(&square),
            Err(GeomError::Undersampled { .. })
        ));
        assert!(ClosedPath::new(vec![c(1.0, 0.0), c(0.0, 1.0)]).is_err());
        assert!(ClosedPath::new(vec![c(1.0, 0.0), c(f64::NAN, 1.0), c(0.0, 1.0)]).is_err());
    }

    #[test]
    fn map_path_examples() {
        let square = ClosedPath::new(vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)]).unwrap();
        assert_eq!(map_path(|z| z, &square).unwrap(), square);
        let img = map_path(|z| z * z, &square).unwrap();
        for (z, e) in img.samples().iter().zip([1.0, -1.0, 1.0, -1.0]) {
            assert!((z - c(e, 0.0)).norm() < 1e-15);
        }
        assert_eq!(
            map_path(|z| 1.0 / z, &ClosedPath::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]).unwrap()),
            Err(GeomError::NonFinite("image of path sample"))
        );
    }

    #[test]
    fn count_roots_examples() {
        // roots -1 and -3
        let p = Polynomial::from_real(&[3.0, 4.0, 1.0]).unwrap();
        for r in [-1.0, -3.0] {
            assert!(p.eval(c(r, 0.0)).norm() < 1e-12);
        }
        assert_eq!(count_roots_by_winding(&p, 2.0).unwrap(), 1);
        assert_eq!(count_roots_by_winding(&p, 10.0).unwrap(), 2);
        // roots 1, 1 + i, 1 - i
        let q = Polynomial::from_real(&[-2.0, 4.0, -3.0, 1.0]).unwrap();
        for r in [c(1.0, 0.0), c(1.0, 1.0), c(1.0, -1.0)] {
            assert!(q.eval(r).norm() < 1e-12);
        }
        assert_eq!(count_roots_by_winding(&q, 5.0).unwrap(), 3);
        assert_eq!(count_roots_by_winding(&q, 0.5).unwrap(), 0);
        assert_eq!(count_roots_by_winding(&q, 1.2).unwrap(), 1);
    }

    #[test]
    fn root_on_circle_is_an_error() {
        // z - 1 has its root on the unit circle, hit exactly by the first sample
        let p = Polynomial::from_real(&[-1.0, 1.0]).unwrap();
        assert_eq!(
            count_roots_by_winding(&p, 1.0),
            Err(GeomError::DegeneratePath { index: 0 })
        );
    }

    #[test]
    fn polynomial_trims_and_rejects_zero() {
        let p = Polynomial::from_real(&[1.0, 2.0, 0.0, 0.0]).unwrap();
        assert_eq!(p.degree(), 1);
        assert!(Polynomial::from_real(&[0.0, 0.0]).is_err());
        assert_eq!(count_roots_by_winding(&Polynomial::from_real(&[5.0]).unwrap(), 3.0).unwrap(), 0);
    }

    #[test]
    fn product_of_roots_of_unity() {
        for n in 1..=12usize {
            let prod = roots_of_unity(n).unwrap().into_iter().fold(c(1.0, 0.0), |a, z| a * z);
            let expected = if n % 2 == 1 { 1.0 } else { -1.0 };
            assert!((prod - c(expected, 0.0)).norm() < 1e-10, "n = {n}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn cplx() -> impl Strategy<Value = Complex> {
            (-10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b)| Complex::new(a, b))
        }

        proptest! {
            #[test]
            fn modulus_is_multiplicative(z in cplx(), w in cplx()) {
                prop_assert!(((z * w).norm() - z.norm() * w.norm()).abs() <= 1e-12 * (1.0 + z.norm() * w.norm()));
            }

            #[test]
            fn arguments_add(z in cplx(), w in cplx()) {
                prop_assume!(z.norm() > 1e-3 && w.norm() > 1e-3);
                let d = arg(z * w) - arg(z) - arg(w);
                let wrapped = d - TAU * (d / TAU).round();
                prop_assert!(wrapped.abs() < 1e-12);
            }

            #[test]
            fn conjugate_product_is_modulus_squared(z in cplx()) {
                let p = z * z.conj();
                prop_assert!((p.re - z.norm_sqr()).abs() <= 1e-15 * (1.0 + z.norm_sqr()));
                prop_assert_eq!(p.im, 0.0);
            }

            #[test]
            fn division_inverts_multiplication(z in cplx(), w in cplx()) {
                prop_assume!(w.norm() > 1e-3);
                prop_assert!(((z / w) * w - z).norm() < 1e-12 * (1.0 + z.norm()));
            }

            #[test]
            fn polar_round_trip(z in cplx()) {
                let back = from_polar(to_polar(z));
                prop_assert!((back - z).norm() < 1e-12 * (1.0 + z.norm()));
                let t = to_polar(z).theta;
                prop_assert!(t > -PI && t <= PI);
            }

            #[test]
            fn root_count_is_monotone(coeffs in proptest::collection::vec(-5.0..5.0f64, 2..6)) {
                prop_assume!(coeffs.last().unwrap().abs() > 0.1);
                let p = Polynomial::from_real(&coeffs).unwrap();
                let bound = p.root_bound();
                let mut prev = 0;
                for k in 1..=8 {
                    let r = bound * k as f64 / 8.0;
                    match count_roots_by_winding(&p, r) {
                        Ok(n) => { prop_assert!(n >= prev); prev = n; }
                        // a root landing on a probe circle is possible but never at the bound
                        Err(_) => prop_assert!(k < 8),
                    }
                }
                prop_assert_eq!(count_roots_by_winding(&p, bound).unwrap(), p.degree());
            }
        }
    }
}
