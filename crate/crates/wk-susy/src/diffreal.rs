//! Differential realizations of the single-parameter graded oscillator on a
//! Laurent-windowed function space `x^m theta^s`.
//!
//! `d/dx`, multiplication by `x` and by `1/x` act as exact shift/scale maps
//! on Laurent monomials; everything singular about `1/x` is avoided by never
//! discretizing. The theta factor carries the conjugate-deformation
//! calculus. All relation checks run on an interior window in `m` because the
//! Laurent truncation corrupts the outermost monomials.

use num_complex::Complex64 as C64;

use crate::error::{Result, WkError};
use crate::fock::{SpaceId, ToleranceConfig};
use crate::grassmann::{build_theta_ops, Deformation, ThetaOps};
use crate::operator::{
    commutator, relation_residual, residual_against_zero, OperatorMatrix, RelationReport,
};
use crate::qcalc::RootOfUnity;

/// Which operator pair realizes the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealizationVariant {
    /// `X- = d/dx (d_theta + theta^{k-1}/[[k-1]]!)^{k-1} - (c/x) theta`,
    /// `X+ = x (d_theta + theta^{k-1}/[[k-1]]!)`.
    First,
    /// Same template over the canonically conjugate pair
    /// `P = (x + d/dx - (c/2x) K)/sqrt(2)`, `X = (x - d/dx + (c/2x) K)/sqrt(2)`.
    /// The commutation target `[X-, X+] = 1 + c K` holds exactly only at
    /// c = 0; the c-dependent correction of this form requires the formal
    /// inverse of `X`, which is deliberately not constructed.
    Canonical,
}

/// Monomial space `x^m theta^s`, `|m| <= half_width`, `s < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaurentGrassmannSpace {
    pub half_width: i64,
    pub k: usize,
}

impl LaurentGrassmannSpace {
    pub fn new(half_width: i64, k: usize) -> Result<Self> {
        if half_width < 4 {
            return Err(WkError::LaurentWindow {
                m: half_width,
                why: "need half-width of at least 4".into(),
            });
        }
        if k < 2 {
            return Err(WkError::LaurentWindow { m: half_width, why: format!("k = {k} below 2") });
        }
        Ok(Self { half_width, k })
    }

    pub fn space(&self) -> SpaceId {
        SpaceId::Laurent { half_width: self.half_width, k: self.k }
    }

    pub fn width(&self) -> usize {
        2 * self.half_width as usize + 1
    }

    pub fn index(&self, m: i64, s: usize) -> usize {
        s * self.width() + (m + self.half_width) as usize
    }

    /// `d/dx`: x^m -> m x^{m-1}; the bottom edge is dropped.
    pub fn d_dx(&self) -> OperatorMatrix {
        let mut op = OperatorMatrix::zeros(self.space());
        for s in 0..self.k {
            for m in (-self.half_width + 1)..=self.half_width {
                op.set(self.index(m - 1, s), self.index(m, s), C64::new(m as f64, 0.0));
            }
        }
        op
    }

    /// Multiplication by x; the top edge is dropped.
    pub fn x_mult(&self) -> OperatorMatrix {
        let mut op = OperatorMatrix::zeros(self.space());
        for s in 0..self.k {
            for m in -self.half_width..self.half_width {
                op.set(self.index(m + 1, s), self.index(m, s), C64::new(1.0, 0.0));
            }
        }
        op
    }

    /// Multiplication by 1/x, exact on monomials; the bottom edge is dropped.
    pub fn x_inv(&self) -> OperatorMatrix {
        let mut op = OperatorMatrix::zeros(self.space());
        for s in 0..self.k {
            for m in (-self.half_width + 1)..=self.half_width {
                op.set(self.index(m - 1, s), self.index(m, s), C64::new(1.0, 0.0));
            }
        }
        op
    }

    /// Lift a k x k theta-space operator to the product space.
    pub fn lift_theta(&self, op: &OperatorMatrix) -> OperatorMatrix {
        let mut out = OperatorMatrix::zeros(self.space());
        for s in 0..self.k {
            for t in 0..self.k {
                let amp = op.get(t, s);
                if amp.norm() > 0.0 {
                    for m in -self.half_width..=self.half_width {
                        out.set(self.index(m, t), self.index(m, s), amp);
                    }
                }
            }
        }
        out
    }

    /// Projector onto `|m| <= half_width - margin`, all grades.
    pub fn window(&self, margin: i64) -> Result<OperatorMatrix> {
        if margin >= self.half_width {
            return Err(WkError::LaurentWindow {
                m: self.half_width,
                why: format!("margin {margin} swallows the whole window"),
            });
        }
        let keep = self.half_width - margin;
        let width = self.width();
        let half = self.half_width;
        Ok(OperatorMatrix::diagonal(self.space(), move |i| {
            let m = (i % width) as i64 - half;
            if m.abs() <= keep {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }))
    }
}

/// Assembled differential realization.
#[derive(Debug, Clone)]
pub struct DiffRealization {
    pub space: LaurentGrassmannSpace,
    pub variant: RealizationVariant,
    pub c: f64,
    pub root: RootOfUnity,
    pub x_minus: OperatorMatrix,
    pub x_plus: OperatorMatrix,
    pub grading: OperatorMatrix,
    pub theta_ops: ThetaOps,
}

/// Build the chosen realization with the conjugate-deformation calculus.
pub fn build_differential_realization(
    k: usize,
    c: f64,
    half_width: i64,
    variant: RealizationVariant,
) -> Result<DiffRealization> {
    let space = LaurentGrassmannSpace::new(half_width, k)?;
    let theta_ops = build_theta_ops(k, Deformation::QBar)?;
    let root = theta_ops.root;

    let combo = theta_ops.shift_combo()?;
    let combo_pow = combo.powers(k - 1)?.pop().unwrap();
    let combo_lift = space.lift_theta(&combo);
    let combo_pow_lift = space.lift_theta(&combo_pow);
    let theta_lift = space.lift_theta(&theta_ops.theta);
    let grading = space.lift_theta(&theta_ops.grading);

    let d = space.d_dx();
    let x = space.x_mult();
    let xinv = space.x_inv();
    let c_term = xinv.matmul(&theta_lift)?.scale_re(c);

    let (x_minus, x_plus) = match variant {
        RealizationVariant::First => {
            let xm = d.matmul(&combo_pow_lift)?.sub(&c_term)?;
            let xp = x.matmul(&combo_lift)?;
            (xm, xp)
        }
        RealizationVariant::Canonical => {
            let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
            let ck = xinv.matmul(&grading)?.scale_re(c / 2.0);
            let p_op = d.add(&x)?.sub(&ck)?.scale_re(inv_sqrt2);
            let x_op = x.sub(&d)?.add(&ck)?.scale_re(inv_sqrt2);
            let xm = p_op.matmul(&combo_pow_lift)?.sub(&c_term)?;
            let xp = x_op.matmul(&combo_lift)?;
            (xm, xp)
        }
    };

    Ok(DiffRealization { space, variant, c, root, x_minus, x_plus, grading, theta_ops })
}

/// Relation checks for the realization on the interior Laurent window.
pub fn verify_differential_realization(
    real: &DiffRealization,
    margin: i64,
    tol: &ToleranceConfig,
) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    let space = real.space;
    let k = space.k;
    let w = space.window(margin)?;
    let id = OperatorMatrix::identity(space.space());

    // [X-, X+] = 1 + c K
    let lhs = commutator(&real.x_minus, &real.x_plus)?;
    let rhs = id.add(&real.grading.scale_re(real.c))?;
    let (r, _) = relation_residual(&lhs, &rhs, &w, tol)?;
    report.push("diffreal.ladder_commutator", r, tol);

    // K^k = 1
    let kk = real.grading.powers(k)?.pop().unwrap();
    let (r, _) = relation_residual(&kk, &id, &w, tol)?;
    report.push("diffreal.grading_cyclic", r, tol);

    // K X+ = q K-twisted, K X- = qbar-twisted
    let lhs = real.grading.matmul(&real.x_plus)?;
    let rhs = real.x_plus.matmul(&real.grading)?.scale(real.root.q);
    let (r, _) = relation_residual(&lhs, &rhs, &w, tol)?;
    report.push("diffreal.grading_twists_raising", r, tol);
    let lhs = real.grading.matmul(&real.x_minus)?;
    let rhs = real.x_minus.matmul(&real.grading)?.scale(real.root.qbar());
    let (r, _) = relation_residual(&lhs, &rhs, &w, tol)?;
    report.push("diffreal.grading_twists_lowering", r, tol);

    Ok(report)
}

/// The k = 2 supercharges of the first realization:
/// `Q- = (d/dx - c/x) theta`, `Q+ = x d_theta`.
pub fn k2_supercharges(real: &DiffRealization) -> Result<(OperatorMatrix, OperatorMatrix)> {
    if real.space.k != 2 || real.variant != RealizationVariant::First {
        return Err(WkError::UnsupportedModel(
            "closed-form supercharges exist for k = 2 in the first realization".into(),
        ));
    }
    let space = real.space;
    let theta_lift = space.lift_theta(&real.theta_ops.theta);
    let deriv_lift = space.lift_theta(&real.theta_ops.deriv);
    let q_minus = space
        .d_dx()
        .sub(&space.x_inv().scale_re(real.c))?
        .matmul(&theta_lift)?;
    let q_plus = space.x_mult().matmul(&deriv_lift)?;
    Ok((q_minus, q_plus))
}

/// Nilpotency and consistency checks for the k = 2 supercharges.
pub fn verify_k2_supercharges(
    real: &DiffRealization,
    margin: i64,
    tol: &ToleranceConfig,
) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    let (q_minus, q_plus) = k2_supercharges(real)?;
    let w = real.space.window(margin)?;

    let q2 = q_minus.matmul(&q_minus)?;
    let scale = q_minus.frobenius().powi(2);
    let (r, _) = residual_against_zero(&q2, &w, scale, tol)?;
    report.push("diffreal.supercharge_minus_square", r, tol);
    let q2 = q_plus.matmul(&q_plus)?;
    let scale = q_plus.frobenius().powi(2);
    let (r, _) = residual_against_zero(&q2, &w, scale, tol)?;
    report.push("diffreal.supercharge_plus_square", r, tol);

    // Q- agrees with the ladder form X- (1 - P_1)
    let projectors = crate::wk::build_projectors(&real.grading, 2)?;
    let id = OperatorMatrix::identity(real.space.space());
    let from_ladder = real.x_minus.matmul(&id.sub(&projectors[1])?)?;
    let (r, _) = relation_residual(&q_minus, &from_ladder, &w, tol)?;
    report.push("diffreal.supercharge_minus_from_ladder", r, tol);
    let from_ladder = real.x_plus.matmul(&id.sub(&projectors[0])?)?;
    let (r, _) = relation_residual(&q_plus, &from_ladder, &w, tol)?;
    report.push("diffreal.supercharge_plus_from_ladder", r, tol);

    Ok(report)
}
