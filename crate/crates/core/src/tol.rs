//! Numerical tolerances shared across modules.

/// Default tolerance for geometric predicates (incidence, orthogonality, equality of loci).
pub const GEOMETRIC: f64 = 1e-9;

/// Default tolerance for pure arithmetic identities.
pub const ARITHMETIC: f64 = 1e-12;

/// Tolerance pair threaded through predicates that accept an override.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub geometric: f64,
    pub arithmetic: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            geometric: GEOMETRIC,
            arithmetic: ARITHMETIC,
        }
    }
}
