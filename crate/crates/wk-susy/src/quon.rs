//! Generic deformed oscillators and their degeneration into an ordinary
//! boson paired with a k-fermion as the deformation approaches a root of
//! unity.

use num_complex::Complex64 as C64;

use crate::error::{Result, WkError};
use crate::fock::{SpaceId, ToleranceConfig};
use crate::operator::{interior_window_fock, q_commutator, relation_residual, OperatorMatrix};
use crate::qcalc::{box_bracket, checked_box_factorial, RootOfUnity};

/// A deformed oscillator `[a-, a+]_Q = 1` on a truncated Fock space, with the
/// general split of the deformed amplitude between lowering and raising:
/// `a- |n> = [[n]]_Q^alpha |n-1>`, `a+ |n> = [[n+1]]_Q^beta |n+1>`,
/// `alpha + beta = 1`.
#[derive(Debug, Clone)]
pub struct QuonAlgebra {
    pub deformation: C64,
    pub alpha: f64,
    pub beta: f64,
    pub depth: usize,
    pub a_minus: OperatorMatrix,
    pub a_plus: OperatorMatrix,
    pub number: OperatorMatrix,
}

impl QuonAlgebra {
    pub fn new(deformation: C64, alpha: f64, beta: f64, depth: usize) -> Result<Self> {
        if (alpha + beta - 1.0).abs() > 1e-12 || !(0.0..=1.0).contains(&alpha) {
            return Err(WkError::Config {
                path: "quon.alpha".into(),
                message: "action exponents must satisfy alpha + beta = 1 within [0, 1]".into(),
            });
        }
        if depth < 4 {
            return Err(WkError::Config {
                path: "quon.depth".into(),
                message: "need at least 4 levels".into(),
            });
        }
        let space = SpaceId::Fock { depth };
        let mut a_minus = OperatorMatrix::zeros(space);
        let mut a_plus = OperatorMatrix::zeros(space);
        for n in 1..depth {
            let bracket = box_bracket(n, deformation);
            a_minus.set(n - 1, n, bracket.powc(C64::new(alpha, 0.0)));
            a_plus.set(n, n - 1, bracket.powc(C64::new(beta, 0.0)));
        }
        let number = OperatorMatrix::diagonal(space, |n| C64::new(n as f64, 0.0));
        Ok(Self { deformation, alpha, beta, depth, a_minus, a_plus, number })
    }

    /// Symmetric split, the convention coherent states are built in.
    pub fn symmetric(deformation: C64, depth: usize) -> Result<Self> {
        Self::new(deformation, 0.5, 0.5, depth)
    }

    /// Windowed residual of the defining bracket `[a-, a+]_Q = 1`.
    pub fn bracket_residual(&self, tol: &ToleranceConfig) -> Result<f64> {
        let bracket = q_commutator(&self.a_minus, &self.a_plus, self.deformation)?;
        let id = OperatorMatrix::identity(self.a_minus.space());
        let w = interior_window_fock(self.depth, 1)?;
        let (r, _) = relation_residual(&bracket, &id, &w, tol)?;
        Ok(r)
    }
}

/// One row of the root-of-unity limit experiment.
#[derive(Debug, Clone, Copy)]
pub struct QuonLimitRow {
    pub epsilon: f64,
    pub residual: f64,
}

/// Report of the `Q -> q` degeneration experiment.
#[derive(Debug, Clone)]
pub struct QuonLimitReport {
    pub k: usize,
    pub depth: usize,
    pub rows: Vec<QuonLimitRow>,
    pub strictly_decreasing: bool,
    /// Least-squares slope of log r against log epsilon.
    pub order_estimate: f64,
}

/// Drive `Q = q exp(eps)` toward the k-th root of unity and measure how far
/// the collapsed k-step ladder `b+- = a+-^k / sqrt([[k]]_Q!)` is from an
/// ordinary boson pair.
pub fn quon_limit_study(k: usize, depth: usize, epsilons: &[f64]) -> Result<QuonLimitReport> {
    if k < 2 {
        return Err(WkError::Config { path: "quon.k".into(), message: "k must be >= 2".into() });
    }
    if depth < 2 * k + 2 {
        return Err(WkError::Config {
            path: "quon.depth".into(),
            message: format!("depth {depth} too small for k = {k}"),
        });
    }
    let root = RootOfUnity::new(k);
    let tol = ToleranceConfig::default();
    let mut rows = Vec::with_capacity(epsilons.len());
    for &eps in epsilons {
        if eps <= 0.0 {
            return Err(WkError::Config {
                path: "quon.epsilons".into(),
                message: "epsilons must be positive".into(),
            });
        }
        let deformation = root.q * C64::new(eps.exp(), 0.0);
        let quon = QuonAlgebra::symmetric(deformation, depth)?;
        let fact = checked_box_factorial(k, deformation)?;
        let norm = fact.sqrt();
        let a_m_k = quon.a_minus.powers(k)?.pop().unwrap();
        let a_p_k = quon.a_plus.powers(k)?.pop().unwrap();
        let b_minus = a_m_k.scale(C64::new(1.0, 0.0) / norm);
        let b_plus = a_p_k.scale(C64::new(1.0, 0.0) / norm);
        let bracket = q_commutator(&b_minus, &b_plus, C64::new(1.0, 0.0))?;
        let id = OperatorMatrix::identity(bracket.space());
        let w = interior_window_fock(depth, k)?;
        let (residual, _) = relation_residual(&bracket, &id, &w, &tol)?;
        rows.push(QuonLimitRow { epsilon: eps, residual });
    }
    let strictly_decreasing = rows.windows(2).all(|w| w[1].residual < w[0].residual);
    let order_estimate = estimate_order(&rows);
    Ok(QuonLimitReport { k, depth, rows, strictly_decreasing, order_estimate })
}

fn estimate_order(rows: &[QuonLimitRow]) -> f64 {
    if rows.len() < 2 {
        return f64::NAN;
    }
    let pts: Vec<(f64, f64)> =
        rows.iter().map(|r| (r.epsilon.ln(), r.residual.max(1e-300).ln())).collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_real_deformation_satisfies_bracket() {
        let quon = QuonAlgebra::symmetric(C64::new(0.7, 0.0), 16).unwrap();
        let r = quon.bracket_residual(&ToleranceConfig::default()).unwrap();
        assert!(r <= 1e-12, "residual {r:e}");
        // shift split obeys the same bracket
        let quon = QuonAlgebra::new(C64::new(0.7, 0.0), 0.0, 1.0, 16).unwrap();
        let r = quon.bracket_residual(&ToleranceConfig::default()).unwrap();
        assert!(r <= 1e-12, "residual {r:e}");
    }

    #[test]
    fn number_operator_grades_the_ladder() {
        let quon = QuonAlgebra::symmetric(C64::new(0.9, 0.0), 12).unwrap();
        let comm = q_commutator(&quon.number, &quon.a_plus, C64::new(1.0, 0.0)).unwrap();
        assert!(comm.max_abs_diff(&quon.a_plus).unwrap() < 1e-13);
        let comm = q_commutator(&quon.number, &quon.a_minus, C64::new(1.0, 0.0)).unwrap();
        assert!(comm.max_abs_diff(&quon.a_minus.scale_re(-1.0)).unwrap() < 1e-13);
    }

    #[test]
    fn limit_residual_decreases_for_k2_and_k3() {
        // the window keeps deep levels whose deviation grows with n, so the
        // approach to the limit is fast in epsilon but carries a sizeable
        // depth-dependent constant
        for k in [2usize, 3] {
            let report = quon_limit_study(k, 24, &[1e-1, 1e-2, 1e-3]).unwrap();
            assert!(report.strictly_decreasing, "k={k} rows {:?}", report.rows);
            assert!(
                report.rows[2].residual < 0.1 * report.rows[0].residual,
                "k={k} rows {:?}",
                report.rows
            );
            assert!(report.order_estimate > 0.5, "k={k} order {}", report.order_estimate);
        }
    }

    #[test]
    fn invalid_epsilons_are_rejected() {
        assert!(quon_limit_study(2, 24, &[0.1, -0.1]).is_err());
        assert!(quon_limit_study(2, 4, &[0.1]).is_err());
    }
}
