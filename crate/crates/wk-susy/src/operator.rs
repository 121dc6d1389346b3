//! Dense complex operator matrices and the relation-residual machinery.
//!
//! Every algebraic claim in this crate is reduced to a statement of the form
//! `lhs == rhs` between two operator matrices, measured as a windowed relative
//! Frobenius residual. Windows are orthogonal projectors that cut away rows
//! and columns corrupted by the truncation edge.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use crate::error::{Result, WkError};
use crate::fock::{GradedBasis, SpaceId, ToleranceConfig};

/// Dense complex matrix tagged with the space it acts on.
///
/// A conservatively tracked diagonality flag lets products against the many
/// diagonal operators in this domain (projectors, gradings, number and
/// window operators) skip the cubic path.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    space: SpaceId,
    diag: bool,
    mat: Array2<C64>,
}

impl OperatorMatrix {
    pub fn zeros(space: SpaceId) -> Self {
        let n = space.dim();
        Self { space, diag: true, mat: Array2::zeros((n, n)) }
    }

    pub fn identity(space: SpaceId) -> Self {
        let n = space.dim();
        Self { space, diag: true, mat: Array2::eye(n) }
    }

    /// Diagonal operator from a per-index value function.
    pub fn diagonal(space: SpaceId, f: impl Fn(usize) -> C64) -> Self {
        let n = space.dim();
        let mut mat = Array2::zeros((n, n));
        for i in 0..n {
            mat[(i, i)] = f(i);
        }
        Self { space, diag: true, mat }
    }

    /// Diagonal operator over a graded basis from a per-(n, s) value.
    pub fn diagonal_graded(basis: &GradedBasis, f: impl Fn(usize, usize) -> C64) -> Self {
        Self::diagonal(basis.space(), |i| {
            let (n, s) = basis.labels(i);
            f(n, s)
        })
    }

    pub fn from_array(space: SpaceId, mat: Array2<C64>) -> Result<Self> {
        let n = space.dim();
        if mat.nrows() != n || mat.ncols() != n {
            return Err(WkError::SpaceMismatch(space, SpaceId::Fock { depth: mat.nrows() }));
        }
        let diag = mat.indexed_iter().all(|((i, j), v)| i == j || v.norm() == 0.0);
        Ok(Self { space, diag, mat })
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn array(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.mat[(row, col)]
    }

    pub fn set(&mut self, row: usize, col: usize, v: C64) {
        if row != col && v.norm() != 0.0 {
            self.diag = false;
        }
        self.mat[(row, col)] = v;
    }

    fn check_space(&self, other: &Self) -> Result<()> {
        if self.space != other.space {
            return Err(WkError::SpaceMismatch(self.space, other.space));
        }
        Ok(())
    }

    pub fn assert_finite(&self) -> Result<()> {
        if self.mat.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(())
        } else {
            Err(WkError::NonFinite)
        }
    }

    /// Hermitean conjugate.
    pub fn dagger(&self) -> Self {
        let mut out = Array2::zeros(self.mat.raw_dim());
        for ((i, j), v) in self.mat.indexed_iter() {
            out[(j, i)] = v.conj();
        }
        Self { space: self.space, diag: self.diag, mat: out }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        let n = self.dim();
        let mat = if self.diag {
            // row scaling: entries off the left factor's diagonal are exact
            // zeros and contribute nothing to the full product
            let mut out = other.mat.clone();
            for i in 0..n {
                let factor = self.mat[(i, i)];
                out.row_mut(i).mapv_inplace(|z| z * factor);
            }
            out
        } else if other.diag {
            let mut out = self.mat.clone();
            for j in 0..n {
                let factor = other.mat[(j, j)];
                out.column_mut(j).mapv_inplace(|z| z * factor);
            }
            out
        } else {
            self.mat.dot(&other.mat)
        };
        Ok(Self { space: self.space, diag: self.diag && other.diag, mat })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        Ok(Self { space: self.space, diag: self.diag && other.diag, mat: &self.mat + &other.mat })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_space(other)?;
        Ok(Self { space: self.space, diag: self.diag && other.diag, mat: &self.mat - &other.mat })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { space: self.space, diag: self.diag, mat: self.mat.mapv(|z| z * c) }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    pub fn frobenius(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_space(other)?;
        Ok(self
            .mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Powers `[I, A, A^2, ..., A^max]`.
    pub fn powers(&self, max: usize) -> Result<Vec<Self>> {
        let mut out = vec![Self::identity(self.space)];
        for m in 1..=max {
            let next = out[m - 1].matmul(self)?;
            out.push(next);
        }
        Ok(out)
    }
}

/// Deformed bracket `[A, B]_Q = AB - Q BA`. `Q = 1` is the commutator,
/// `Q = -1` the anticommutator.
pub fn q_commutator(a: &OperatorMatrix, b: &OperatorMatrix, q: C64) -> Result<OperatorMatrix> {
    let ab = a.matmul(b)?;
    let ba = b.matmul(a)?;
    ab.sub(&ba.scale(q))
}

pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    q_commutator(a, b, C64::new(1.0, 0.0))
}

pub fn anticommutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    q_commutator(a, b, C64::new(-1.0, 0.0))
}

/// Orthogonal projector onto the span of `|n, s>` with `n <= d - 1 - r`.
///
/// Relations whose assembly raises the level by up to `r` steps are corrupted
/// in the top `r` levels of a truncated space; sandwiching both sides with
/// this window removes exactly those rows and columns.
pub fn interior_window(basis: &GradedBasis, r: usize) -> Result<OperatorMatrix> {
    if r >= basis.d() {
        return Err(WkError::WindowTooLarge { r, d: basis.d() });
    }
    let keep = basis.d() - 1 - r;
    Ok(OperatorMatrix::diagonal_graded(basis, |n, _| {
        if n <= keep {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// Same truncation guard on a plain Fock space.
pub fn interior_window_fock(depth: usize, r: usize) -> Result<OperatorMatrix> {
    if r >= depth {
        return Err(WkError::WindowTooLarge { r, d: depth });
    }
    let keep = depth - 1 - r;
    Ok(OperatorMatrix::diagonal(SpaceId::Fock { depth }, |n| {
        if n <= keep {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// Outcome of a single windowed relation check.
#[derive(Debug, Clone)]
pub struct RelationCheck {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
}

/// A named collection of relation checks.
#[derive(Debug, Clone, Default)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn push(&mut self, name: impl Into<String>, residual: f64, tol: &ToleranceConfig) {
        let residual = if residual.is_finite() { residual } else { f64::INFINITY };
        self.checks.push(RelationCheck {
            name: name.into(),
            residual,
            pass: residual <= tol.rel_tol,
        });
    }

    pub fn push_with_tol(&mut self, name: impl Into<String>, residual: f64, tol: f64) {
        let residual = if residual.is_finite() { residual } else { f64::INFINITY };
        self.checks.push(RelationCheck { name: name.into(), residual, pass: residual <= tol });
    }

    pub fn extend(&mut self, other: RelationReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }

    pub fn find(&self, name: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Windowed relative residual
/// `|W (lhs - rhs) W|_F / max(|W lhs W|_F, |W rhs W|_F, abs_floor)`.
pub fn relation_residual(
    lhs: &OperatorMatrix,
    rhs: &OperatorMatrix,
    window: &OperatorMatrix,
    tol: &ToleranceConfig,
) -> Result<(f64, bool)> {
    relation_residual_scaled(lhs, rhs, window, tol, 0.0)
}

/// As [`relation_residual`], with an extra floor on the denominator.
///
/// Identities whose two sides cancel to zero by projector algebra would
/// otherwise divide roundoff haze by the absolute floor; the natural scale is
/// the norm of the unprojected operator products they came from.
pub fn relation_residual_scaled(
    lhs: &OperatorMatrix,
    rhs: &OperatorMatrix,
    window: &OperatorMatrix,
    tol: &ToleranceConfig,
    scale_floor: f64,
) -> Result<(f64, bool)> {
    let wl = window.matmul(lhs)?.matmul(window)?;
    let wr = window.matmul(rhs)?.matmul(window)?;
    let num = wl.sub(&wr)?.frobenius();
    let denom = wl.frobenius().max(wr.frobenius()).max(scale_floor).max(tol.abs_floor);
    let residual = num / denom;
    Ok((residual, residual <= tol.rel_tol))
}

/// Residual of `op ~ 0` measured against an externally supplied scale.
///
/// Nilpotency statements compare a product against zero; the meaningful scale
/// is the product of the factors' norms, not the (vanishing) result itself.
pub fn residual_against_zero(
    op: &OperatorMatrix,
    window: &OperatorMatrix,
    scale: f64,
    tol: &ToleranceConfig,
) -> Result<(f64, bool)> {
    let w = window.matmul(op)?.matmul(window)?;
    let residual = w.frobenius() / scale.max(tol.abs_floor);
    Ok((residual, residual <= tol.rel_tol))
}

/// Sorted real diagonal of an (asserted) diagonal operator with labels.
///
/// Fails if the off-diagonal Frobenius mass exceeds `abs_floor * |H|_F`.
pub fn diagonal_spectrum(
    h: &OperatorMatrix,
    basis: &GradedBasis,
    tol: &ToleranceConfig,
) -> Result<Vec<(f64, usize, usize)>> {
    let total = h.frobenius();
    let mut off = 0.0;
    for ((i, j), v) in h.array().indexed_iter() {
        if i != j {
            off += v.norm_sqr();
        }
    }
    let off = off.sqrt();
    let floor = tol.abs_floor * total.max(1.0);
    if off > floor {
        return Err(WkError::NotDiagonal { off, floor });
    }
    let mut out: Vec<(f64, usize, usize)> = (0..h.dim())
        .map(|i| {
            let (n, s) = basis.labels(i);
            (h.get(i, i).re, n, s)
        })
        .collect();
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    Ok(out)
}
