//! Finite-difference cross-check of the two-sector oscillator in coordinate
//! form: `H = -1/2 d^2/dx^2 + 1/2 x^2 -+ 1/2` on the two grading components.
//!
//! Second-order central differences on a uniform grid give a real symmetric
//! tridiagonal matrix; eigenvalues come from Sturm-sequence bisection, which
//! is deterministic and needs no dense factorization.

use crate::error::{Result, WkError};

/// Symmetric grid on `[-l, l]` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdGrid {
    pub l: f64,
    pub points: usize,
}

impl FdGrid {
    pub fn new(l: f64, points: usize) -> Result<Self> {
        if !(l >= 6.0) {
            return Err(WkError::FdGrid(format!("half-width {l} below 6")));
        }
        if points < 1001 {
            return Err(WkError::FdGrid(format!("{points} points is too coarse, need >= 1001")));
        }
        Ok(Self { l, points })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.l / (self.points as f64 - 1.0)
    }

    /// Grid with the spacing halved on the same domain.
    pub fn refined(&self) -> Self {
        Self { l: self.l, points: 2 * (self.points - 1) + 1 }
    }
}

/// Count of eigenvalues of the symmetric tridiagonal matrix below `lambda`,
/// by the sign changes of the Sturm factorization.
fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    let mut count = 0;
    // a vanishing pivot means lambda is an eigenvalue of a leading block;
    // nudging it negative keeps the count consistent
    let mut d = diag[0] - lambda;
    if d.abs() < 1e-300 {
        d = -1e-300;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..n {
        d = diag[i] - lambda - off[i - 1] * off[i - 1] / d;
        if d.abs() < 1e-300 {
            d = -1e-300;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `howmany` smallest eigenvalues by bisection on Gershgorin bounds.
pub fn tridiagonal_lowest_eigenvalues(diag: &[f64], off: &[f64], howmany: usize) -> Vec<f64> {
    let n = diag.len();
    assert!(off.len() + 1 == n && howmany <= n);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let radius = if i == 0 {
            off.first().map(|b| b.abs()).unwrap_or(0.0)
        } else if i == n - 1 {
            off[n - 2].abs()
        } else {
            off[i - 1].abs() + off[i].abs()
        };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let scale = hi.abs().max(lo.abs()).max(1.0);
    let mut out = Vec::with_capacity(howmany);
    for j in 0..howmany {
        let mut a = lo;
        let mut b = hi;
        // find the j-th smallest: smallest lambda with count(lambda) >= j + 1
        while b - a > 1e-13 * scale {
            let mid = 0.5 * (a + b);
            if sturm_count(diag, off, mid) >= j + 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Lowest `howmany` eigenvalues of the two-component super-oscillator.
///
/// The grading splits the problem into two decoupled scalar operators with
/// potentials `x^2/2 - 1/2` and `x^2/2 + 1/2`; their union is the spectrum.
pub fn fd_spectrum_super_oscillator(grid: FdGrid, howmany: usize) -> Result<Vec<f64>> {
    let h = grid.spacing();
    let n = grid.points;
    let kinetic = 1.0 / (h * h);
    let mut merged = Vec::with_capacity(2 * howmany);
    for sign in [-1.0, 1.0] {
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            let x = -grid.l + i as f64 * h;
            diag.push(kinetic + 0.5 * x * x + 0.5 * sign);
        }
        let off = vec![-0.5 * kinetic; n - 1];
        merged.extend(tridiagonal_lowest_eigenvalues(&diag, &off, howmany));
    }
    merged.sort_by(|a, b| a.partial_cmp(b).unwrap());
    merged.truncate(howmany);
    Ok(merged)
}

/// Convergence experiment: max error of the lowest levels against the exact
/// integers, on the base grid and the spacing-halved grid.
#[derive(Debug, Clone)]
pub struct FdConvergence {
    pub coarse_error: f64,
    pub fine_error: f64,
    /// `coarse_error / fine_error`; second-order schemes give about 4.
    pub ratio: f64,
}

pub fn fd_convergence_study(grid: FdGrid, howmany: usize) -> Result<FdConvergence> {
    let exact = exact_super_oscillator_levels(howmany);
    let err = |levels: &[f64]| -> f64 {
        levels
            .iter()
            .zip(&exact)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    };
    let coarse = fd_spectrum_super_oscillator(grid, howmany)?;
    let fine = fd_spectrum_super_oscillator(grid.refined(), howmany)?;
    let coarse_error = err(&coarse);
    let fine_error = err(&fine);
    Ok(FdConvergence { coarse_error, fine_error, ratio: coarse_error / fine_error })
}

/// `{0, 1, 1, 2, 2, ...}`: component `-` contributes n, component `+`
/// contributes n + 1.
pub fn exact_super_oscillator_levels(howmany: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * howmany);
    for n in 0..howmany {
        out.push(n as f64);
        out.push(n as f64 + 1.0);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.truncate(howmany);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_counts_on_a_known_matrix() {
        // 2x2 [[2, 1], [1, 2]] has eigenvalues 1 and 3
        let diag = [2.0, 2.0];
        let off = [1.0];
        assert_eq!(sturm_count(&diag, &off, 0.0), 0);
        assert_eq!(sturm_count(&diag, &off, 2.0), 1);
        assert_eq!(sturm_count(&diag, &off, 4.0), 2);
        let eigs = tridiagonal_lowest_eigenvalues(&diag, &off, 2);
        assert!((eigs[0] - 1.0).abs() < 1e-10);
        assert!((eigs[1] - 3.0).abs() < 1e-10);
    }

    #[test]
    fn grid_validation() {
        assert!(FdGrid::new(4.0, 2001).is_err());
        assert!(FdGrid::new(8.0, 200).is_err());
        let g = FdGrid::new(8.0, 2001).unwrap();
        assert!((g.spacing() - 0.008).abs() < 1e-15);
    }

    #[test]
    fn super_oscillator_lowest_five() {
        let grid = FdGrid::new(8.0, 2001).unwrap();
        let levels = fd_spectrum_super_oscillator(grid, 5).unwrap();
        let exact = [0.0, 1.0, 1.0, 2.0, 2.0];
        for (got, want) in levels.iter().zip(exact.iter()) {
            assert!((got - want).abs() < 1e-3, "got {got}, want {want}");
        }
    }

    #[test]
    fn single_component_ground_state() {
        // the lower component alone has harmonic levels shifted to 0, 1, 2, ...
        let grid = FdGrid::new(8.0, 1201).unwrap();
        let h = grid.spacing();
        let n = grid.points;
        let kinetic = 1.0 / (h * h);
        let diag: Vec<f64> = (0..n)
            .map(|i| {
                let x = -grid.l + i as f64 * h;
                kinetic + 0.5 * x * x - 0.5
            })
            .collect();
        let off = vec![-0.5 * kinetic; n - 1];
        let eigs = tridiagonal_lowest_eigenvalues(&diag, &off, 3);
        for (n_level, e) in eigs.iter().enumerate() {
            assert!((e - n_level as f64).abs() < 1e-3, "level {n_level}: {e}");
        }
    }

    #[test]
    fn halving_the_spacing_quarters_the_error() {
        let grid = FdGrid::new(8.0, 1001).unwrap();
        let conv = fd_convergence_study(grid, 5).unwrap();
        assert!(
            conv.ratio > 3.5 && conv.ratio < 4.5,
            "ratio {} (coarse {:e}, fine {:e})",
            conv.ratio,
            conv.coarse_error,
            conv.fine_error
        );
    }
}
