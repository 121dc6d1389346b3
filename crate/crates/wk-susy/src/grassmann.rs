//! Generalized Grassmann calculus: one nilpotent generator of order k, its
//! deformed derivatives and Berezin integration, plus the two-generator
//! algebra on normal-ordered monomials.
//!
//! Two deformation conventions coexist for the derivative bracket:
//! `d theta - qbar theta d = 1` and `d theta - q theta d = 1`. They are kept
//! behind an explicit flag and never mixed inside one identity.

use num_complex::Complex64 as C64;

use crate::error::{Result, WkError};
use crate::fock::{SpaceId, ToleranceConfig};
use crate::operator::{OperatorMatrix, RelationReport};
use crate::qcalc::{box_bracket, box_factorial, RootOfUnity};

/// Which deformation the derivative carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deformation {
    Q,
    QBar,
}

impl Deformation {
    pub fn value(&self, root: &RootOfUnity) -> C64 {
        match self {
            Deformation::Q => root.q,
            Deformation::QBar => root.qbar(),
        }
    }
}

/// Element of the one-generator algebra: `sum_s c_s theta^s`, `theta^k = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannElement {
    pub k: usize,
    pub coeffs: Vec<C64>,
}

impl GrassmannElement {
    pub fn zero(k: usize) -> Self {
        Self { k, coeffs: vec![C64::new(0.0, 0.0); k] }
    }

    pub fn one(k: usize) -> Self {
        let mut e = Self::zero(k);
        e.coeffs[0] = C64::new(1.0, 0.0);
        e
    }

    /// The generator itself.
    pub fn theta(k: usize) -> Self {
        let mut e = Self::zero(k);
        e.coeffs[1] = C64::new(1.0, 0.0);
        e
    }

    /// Pure monomial `c theta^s`.
    pub fn monomial(k: usize, s: usize, c: C64) -> Self {
        let mut e = Self::zero(k);
        e.coeffs[s] = c;
        e
    }

    pub fn add(&self, other: &Self) -> Self {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Self { k: self.k, coeffs }
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { k: self.k, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Product in the commutative truncated algebra; powers at or above k
    /// vanish.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.k);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.norm() == 0.0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < self.k {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// Deformed derivative: `d theta^s = [[s]]_p theta^{s-1}`, constants to zero.
pub fn q_derivative(e: &GrassmannElement, deform: Deformation) -> GrassmannElement {
    let root = RootOfUnity::new(e.k);
    let p = deform.value(&root);
    let mut out = GrassmannElement::zero(e.k);
    for s in 1..e.k {
        out.coeffs[s - 1] = e.coeffs[s] * box_bracket(s, p);
    }
    out
}

/// Berezin integration: the linear functional extracting the top coefficient.
pub fn berezin_integrate(e: &GrassmannElement) -> C64 {
    e.coeffs[e.k - 1]
}

/// Matrix calculus over the monomial basis `{1, theta, ..., theta^{k-1}}`.
#[derive(Debug, Clone)]
pub struct ThetaOps {
    pub k: usize,
    pub root: RootOfUnity,
    pub deform: Deformation,
    /// Left multiplication by theta.
    pub theta: OperatorMatrix,
    /// The deformed derivative.
    pub deriv: OperatorMatrix,
    /// The grading operator `[d, theta]` (plain commutator).
    pub grading: OperatorMatrix,
}

pub fn build_theta_ops(k: usize, deform: Deformation) -> Result<ThetaOps> {
    if k < 2 {
        return Err(WkError::RepresentationConstruction(format!("k = {k} below 2")));
    }
    let root = RootOfUnity::new(k);
    let p = deform.value(&root);
    let space = SpaceId::Grassmann { k };
    let mut theta = OperatorMatrix::zeros(space);
    let mut deriv = OperatorMatrix::zeros(space);
    for s in 1..k {
        theta.set(s, s - 1, C64::new(1.0, 0.0));
        deriv.set(s - 1, s, box_bracket(s, p));
    }
    let grading = crate::operator::commutator(&deriv, &theta)?;
    Ok(ThetaOps { k, root, deform, theta, deriv, grading })
}

impl ThetaOps {
    /// `d + theta^{k-1} / [[k-1]]_p!`, a k-th root of the identity.
    pub fn shift_combo(&self) -> Result<OperatorMatrix> {
        let p = self.deform.value(&self.root);
        let top = self.theta.powers(self.k - 1)?.pop().unwrap();
        let fact = box_factorial(self.k - 1, p);
        self.deriv.add(&top.scale(C64::new(1.0, 0.0) / fact))
    }
}

/// Operators of the two-generator algebra on normal-ordered monomials
/// `thetabar^t theta^s` (index `t * k + s`).
///
/// Left multiplication by theta crosses the thetabar block with one factor
/// `q^{1/2}` per generator; the theta-derivative crosses with factor one and
/// the thetabar-derivative with `q^{-1/2}` per theta. These crossing weights
/// are the unique family (up to rescaling) compatible with the reordering
/// rule and the cross-derivative relation.
#[derive(Debug, Clone)]
pub struct BiThetaOps {
    pub k: usize,
    pub root: RootOfUnity,
    pub theta: OperatorMatrix,
    pub thetabar: OperatorMatrix,
    pub d_theta: OperatorMatrix,
    pub d_thetabar: OperatorMatrix,
}

pub fn build_bi_theta_ops(k: usize) -> Result<BiThetaOps> {
    if k < 2 {
        return Err(WkError::RepresentationConstruction(format!("k = {k} below 2")));
    }
    let root = RootOfUnity::new(k);
    let half = root.q.sqrt();
    let half_inv = C64::new(1.0, 0.0) / half;
    let space = SpaceId::BiGrassmann { k };
    let idx = |t: usize, s: usize| t * k + s;

    let mut theta = OperatorMatrix::zeros(space);
    let mut thetabar = OperatorMatrix::zeros(space);
    let mut d_theta = OperatorMatrix::zeros(space);
    let mut d_thetabar = OperatorMatrix::zeros(space);
    for t in 0..k {
        for s in 0..k {
            if s + 1 < k {
                theta.set(idx(t, s + 1), idx(t, s), half.powu(t as u32));
            }
            if t + 1 < k {
                thetabar.set(idx(t + 1, s), idx(t, s), C64::new(1.0, 0.0));
            }
            if s >= 1 {
                d_theta.set(idx(t, s - 1), idx(t, s), box_bracket(s, root.q));
            }
            if t >= 1 {
                d_thetabar.set(
                    idx(t - 1, s),
                    idx(t, s),
                    box_bracket(t, root.qbar()) * half_inv.powu(s as u32),
                );
            }
        }
    }
    Ok(BiThetaOps { k, root, theta, thetabar, d_theta, d_thetabar })
}

/// Element of the two-generator algebra in normal order: coefficient of
/// `thetabar^t theta^s` at `(t, s)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiGrassmannElement {
    pub k: usize,
    pub coeffs: Vec<C64>,
}

impl BiGrassmannElement {
    pub fn zero(k: usize) -> Self {
        Self { k, coeffs: vec![C64::new(0.0, 0.0); k * k] }
    }

    pub fn coeff(&self, t: usize, s: usize) -> C64 {
        self.coeffs[t * self.k + s]
    }

    pub fn set_coeff(&mut self, t: usize, s: usize, c: C64) {
        self.coeffs[t * self.k + s] = c;
    }

    /// Reorder into theta-major form `theta^s thetabar^t`: each crossing of a
    /// theta past a thetabar contributes `q^{1/2}`.
    pub fn to_theta_major(&self) -> Self {
        let root = RootOfUnity::new(self.k);
        let half = root.q.sqrt();
        let mut out = Self::zero(self.k);
        for t in 0..self.k {
            for s in 0..self.k {
                let factor = half.powu((s * t) as u32);
                out.set_coeff(t, s, self.coeff(t, s) * factor);
            }
        }
        out
    }

    /// Inverse reordering back to normal order.
    pub fn from_theta_major(major: &Self) -> Self {
        let root = RootOfUnity::new(major.k);
        let half = root.q.sqrt();
        let mut out = Self::zero(major.k);
        for t in 0..major.k {
            for s in 0..major.k {
                let factor = half.powu((s * t) as u32);
                out.set_coeff(t, s, major.coeff(t, s) / factor);
            }
        }
        out
    }
}

/// The single- and two-generator identities, both deformation conventions.
pub fn verify_grassmann_relations(k: usize, tol: &ToleranceConfig) -> Result<RelationReport> {
    let mut report = RelationReport::default();
    let root = RootOfUnity::new(k);
    let space = SpaceId::Grassmann { k };
    let id = OperatorMatrix::identity(space);

    for (tag, deform) in [("qbar", Deformation::QBar), ("q", Deformation::Q)] {
        let ops = build_theta_ops(k, deform)?;
        let p = deform.value(&root);

        // d theta - p theta d = 1
        let bracket = crate::operator::q_commutator(&ops.deriv, &ops.theta, p)?;
        let num = bracket.sub(&id)?.frobenius();
        report.push(
            format!("grassmann.derivative_bracket_{tag}"),
            num / (k as f64).sqrt(),
            tol,
        );

        // nilpotency of both generators
        let theta_k = ops.theta.powers(k)?.pop().unwrap();
        report.push(format!("grassmann.theta_nilpotent_{tag}"), theta_k.frobenius(), tol);
        let deriv_k = ops.deriv.powers(k)?.pop().unwrap();
        let scale = ops.deriv.frobenius().powi(k as i32).max(1.0);
        report.push(format!("grassmann.derivative_nilpotent_{tag}"), deriv_k.frobenius() / scale, tol);

        // (d + theta^{k-1}/[[k-1]]_p!)^k = 1
        let combo = ops.shift_combo()?;
        let combo_k = combo.powers(k)?.pop().unwrap();
        let num = combo_k.sub(&id)?.frobenius();
        report.push(format!("grassmann.shift_combo_power_{tag}"), num / (k as f64).sqrt(), tol);

        // (d theta - theta d)^k = 1
        let grading_k = ops.grading.powers(k)?.pop().unwrap();
        let num = grading_k.sub(&id)?.frobenius();
        report.push(format!("grassmann.grading_power_{tag}"), num / (k as f64).sqrt(), tol);
    }

    // two-generator cross-relations
    let bi = build_bi_theta_ops(k)?;
    let half = root.q.sqrt();
    let half_inv = C64::new(1.0, 0.0) / half;

    let lhs = bi.d_theta.matmul(&bi.d_thetabar)?;
    let rhs = bi.d_thetabar.matmul(&bi.d_theta)?.scale(half_inv);
    let scale = bi.d_theta.frobenius() * bi.d_thetabar.frobenius();
    let num = lhs.sub(&rhs)?.frobenius();
    report.push("grassmann.cross_derivatives", num / scale.max(tol.abs_floor), tol);

    let lhs = bi.theta.matmul(&bi.thetabar)?;
    let rhs = bi.thetabar.matmul(&bi.theta)?.scale(half);
    let scale = bi.theta.frobenius() * bi.thetabar.frobenius();
    let num = lhs.sub(&rhs)?.frobenius();
    report.push("grassmann.cross_variables", num / scale.max(tol.abs_floor), tol);

    // conjugate-generator calculus on its own line
    let bracket = crate::operator::q_commutator(&bi.d_thetabar, &bi.thetabar, root.qbar())?;
    let line = OperatorMatrix::diagonal(SpaceId::BiGrassmann { k }, |i| {
        if i % k == 0 {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let sandwich = line.matmul(&bracket)?.matmul(&line)?;
    let num = sandwich.sub(&line)?.frobenius();
    report.push("grassmann.conjugate_derivative_bracket", num / (k as f64).sqrt(), tol);

    Ok(report)
}
