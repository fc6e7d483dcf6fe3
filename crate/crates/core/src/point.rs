/// A point of R^N or the single point at infinity added to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint<const N: usize> {
    Finite([f64; N]),
    Infinity,
}

impl<const N: usize> ExtPoint<N> {
    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtPoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<[f64; N]> {
        match *self {
            ExtPoint::Finite(x) => Some(x),
            ExtPoint::Infinity => None,
        }
    }

    /// Finite points compare by Euclidean distance; infinity only equals itself.
    pub fn approx_eq(&self, other: &ExtPoint<N>, tol: f64) -> bool {
        match (self, other) {
            (ExtPoint::Infinity, ExtPoint::Infinity) => true,
            (ExtPoint::Finite(a), ExtPoint::Finite(b)) => distance(a, b) <= tol,
            _ => false,
        }
    }
}

pub fn distance<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn norm_sqr<const N: usize>(a: &[f64; N]) -> f64 {
    a.iter().map(|x| x * x).sum()
}
