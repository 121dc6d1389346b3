//! The Z_k-graded truncated Fock space and tolerance configuration.
//!
//! States are labelled `|n, s>` with a boson level `n = 0..d-1` and a grade
//! `s = 0..k-1`. The flat ordering is grade-major: `index = s * d + n`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WkError};

/// Identifies the linear space an operator acts on. Operator arithmetic
/// refuses to mix spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceId {
    /// Graded Fock space of dimension k * d.
    Graded { k: usize, d: usize },
    /// Single k-fermion mode, dimension k.
    KFermion { k: usize },
    /// Plain deformed-boson Fock space truncated at `depth` levels.
    Fock { depth: usize },
    /// Weight space of a k-dimensional quantum-algebra representation.
    WeightLattice { k: usize },
    /// One-generator Grassmann algebra, dimension k.
    Grassmann { k: usize },
    /// Two-generator Grassmann algebra on normal-ordered monomials, dimension k^2.
    BiGrassmann { k: usize },
    /// Laurent monomials x^m (|m| <= half_width) tensored with theta-grades.
    Laurent { half_width: i64, k: usize },
}

impl SpaceId {
    pub fn dim(&self) -> usize {
        match *self {
            SpaceId::Graded { k, d } => k * d,
            SpaceId::KFermion { k } => k,
            SpaceId::Fock { depth } => depth,
            SpaceId::WeightLattice { k } => k,
            SpaceId::Grassmann { k } => k,
            SpaceId::BiGrassmann { k } => k * k,
            SpaceId::Laurent { half_width, k } => (2 * half_width as usize + 1) * k,
        }
    }
}

/// The graded truncated Fock space: grading order k, boson depth d.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradedBasis {
    k: usize,
    d: usize,
}

impl GradedBasis {
    pub fn new(k: usize, d: usize) -> Result<Self> {
        if k < 2 || d < 4 {
            return Err(WkError::InvalidBasis { k, d });
        }
        Ok(Self { k, d })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.k * self.d
    }

    pub fn space(&self) -> SpaceId {
        SpaceId::Graded { k: self.k, d: self.d }
    }

    /// Flat index of `|n, s>`; grade-major so each sector is contiguous.
    pub fn flat_index(&self, n: usize, s: usize) -> Result<usize> {
        if n >= self.d || s >= self.k {
            return Err(WkError::IndexOutOfRange { n, s, k: self.k, d: self.d });
        }
        Ok(s * self.d + n)
    }

    /// Inverse of `flat_index`.
    pub fn labels(&self, index: usize) -> (usize, usize) {
        (index % self.d, index / self.d)
    }

    /// Iterate all `(n, s)` label pairs in flat order.
    pub fn iter_labels(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.dim()).map(|i| self.labels(i))
    }

    /// Grade arithmetic mod k.
    pub fn grade(&self, s: i64) -> usize {
        s.rem_euclid(self.k as i64) as usize
    }
}

/// Residual tolerances shared by every verification routine.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    /// Relative residual bound for pass/fail decisions.
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    /// Absolute floor protecting denominators of near-zero scale.
    #[serde(default = "default_abs_floor")]
    pub abs_floor: f64,
}

fn default_rel_tol() -> f64 {
    1e-10
}

fn default_abs_floor() -> f64 {
    1e-12
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_floor: 1e-12 }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rel_tol <= 0.0 || self.abs_floor <= 0.0 {
            return Err(WkError::Config {
                path: "tolerances".into(),
                message: "rel_tol and abs_floor must be positive".into(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_index_examples() {
        let b = GradedBasis::new(3, 10).unwrap();
        assert_eq!(b.flat_index(0, 0).unwrap(), 0);
        assert_eq!(b.flat_index(2, 1).unwrap(), 12);
        assert!(b.flat_index(10, 0).is_err());
        assert!(b.flat_index(0, 3).is_err());
    }

    #[test]
    fn flat_index_round_trip_k4_d7() {
        let b = GradedBasis::new(4, 7).unwrap();
        for n in 0..7 {
            for s in 0..4 {
                let i = b.flat_index(n, s).unwrap();
                assert_eq!(b.labels(i), (n, s));
            }
        }
        // bijection onto 0..k*d-1
        let mut seen = vec![false; b.dim()];
        for (n, s) in b.iter_labels() {
            seen[b.flat_index(n, s).unwrap()] = true;
        }
        assert!(seen.iter().all(|&x| x));
    }

    #[test]
    fn rejects_degenerate_shapes() {
        assert!(GradedBasis::new(1, 10).is_err());
        assert!(GradedBasis::new(3, 3).is_err());
    }
}
