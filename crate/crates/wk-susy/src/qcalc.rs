//! Deformed integers, factorials and the primitive root of unity.
//!
//! Two bracket conventions appear throughout: the "box" bracket
//! `[[x]]_q = (1 - q^x)/(1 - q)` and the symmetric bracket
//! `[x]_q = (q^x - q^{-x})/(q - q^{-1})`.

use num_complex::Complex64 as C64;

use crate::error::{Result, WkError};

/// Primitive k-th root of unity `q = exp(2 pi i / k)` together with its order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOfUnity {
    pub k: usize,
    pub q: C64,
}

impl RootOfUnity {
    pub fn new(k: usize) -> Self {
        Self { k, q: phase(1, k) }
    }

    pub fn qbar(&self) -> C64 {
        self.q.conj()
    }

    /// `q^e` computed from the angle so that powers stay exactly on the circle.
    pub fn pow(&self, e: i64) -> C64 {
        phase(e, self.k)
    }

    /// `qbar^e`.
    pub fn pow_bar(&self, e: i64) -> C64 {
        phase(-e, self.k)
    }
}

/// `exp(2 pi i e / k)` reduced mod k before evaluating.
fn phase(e: i64, k: usize) -> C64 {
    let k_i = k as i64;
    let r = e.rem_euclid(k_i);
    C64::from_polar(1.0, 2.0 * std::f64::consts::PI * r as f64 / k as f64)
}

/// Box bracket `[[n]]_p = 1 + p + ... + p^{n-1}` for a complex deformation p.
///
/// The summed form is used instead of `(1 - p^n)/(1 - p)` so that p -> 1 and
/// exact roots of unity need no special-casing.
pub fn box_bracket(n: usize, p: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    let mut pw = C64::new(1.0, 0.0);
    for _ in 0..n {
        acc += pw;
        pw *= p;
    }
    acc
}

/// Box factorial `[[n]]_p! = [[1]] [[2]] ... [[n]]`, with `[[0]]! = 1`.
pub fn box_factorial(n: usize, p: C64) -> C64 {
    (1..=n).fold(C64::new(1.0, 0.0), |acc, j| acc * box_bracket(j, p))
}

/// Running product of principal square roots of box brackets:
/// `gamma_n = sqrt([[1]]) sqrt([[2]]) ... sqrt([[n]])`.
///
/// `gamma_n^2 = [[n]]!` but the phase of `gamma_n` is fixed by the product of
/// principal branches, which is the convention every coherent-state formula
/// here relies on.
pub fn sqrt_box_factorial_chain(n_max: usize, p: C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = C64::new(1.0, 0.0);
    out.push(acc);
    for j in 1..=n_max {
        acc *= box_bracket(j, p).sqrt();
        out.push(acc);
    }
    out
}

/// Symmetric bracket `[m]_q = sin(2 pi m / k) / sin(2 pi / k)` at the
/// primitive k-th root of unity.
///
/// At k = 2 the defining ratio degenerates to 0/0; on an integer grading the
/// numerator vanishes identically, so the bracket is taken to be zero there.
/// Arguments with `k | 2m` sit exactly on a sine zero and return exact zero
/// rather than roundoff dust (structure functions built from these values
/// must telescope to the last bit).
pub fn sym_bracket(m: i64, k: usize) -> f64 {
    if k == 2 || (2 * m).rem_euclid(k as i64) == 0 {
        return 0.0;
    }
    let denom = (2.0 * std::f64::consts::PI / k as f64).sin();
    let num = (2.0 * std::f64::consts::PI * m as f64 / k as f64).sin();
    num / denom
}

/// Factorial of an ordinary integer as f64 (exact through 170!).
pub fn real_factorial(n: usize) -> f64 {
    (1..=n).fold(1.0_f64, |acc, j| acc * j as f64)
}

/// Product of principal square roots of `sqrt(n!)` style chains for bosons.
pub fn sqrt_factorial_chain(n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut acc = 1.0_f64;
    out.push(acc);
    for j in 1..=n_max {
        acc *= (j as f64).sqrt();
        out.push(acc);
    }
    out
}

/// Guard for deformed factorials used as denominators.
pub fn checked_box_factorial(n: usize, p: C64) -> Result<C64> {
    let v = box_factorial(n, p);
    if v.norm() < 1e-300 {
        return Err(WkError::FactorialUnderflow { magnitude: v.norm() });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn root_powers_close_cycle() {
        for k in 2..=12 {
            let root = RootOfUnity::new(k);
            assert!((root.q.norm() - 1.0).abs() < 1e-15);
            assert!((root.pow(k as i64) - C64::new(1.0, 0.0)).norm() < 1e-12);
            // geometric character sum: sum_t q^{s t} = k delta_{s,0 mod k}
            for s in 0..k {
                let sum: C64 = (0..k).map(|t| root.pow((s * t) as i64)).sum();
                let expect = if s == 0 { k as f64 } else { 0.0 };
                assert!(
                    (sum - C64::new(expect, 0.0)).norm() < 1e-12,
                    "k={k} s={s} sum={sum}"
                );
            }
        }
    }

    #[test]
    fn box_bracket_matches_ratio_form() {
        let p = C64::new(0.7, 0.0);
        for n in 0..8 {
            let ratio = (C64::new(1.0, 0.0) - p.powu(n as u32)) / (C64::new(1.0, 0.0) - p);
            assert!((box_bracket(n, p) - ratio).norm() < 1e-13);
        }
    }

    #[test]
    fn box_bracket_vanishes_at_order() {
        for k in 2..=8 {
            let root = RootOfUnity::new(k);
            assert!(box_bracket(k, root.q).norm() < 1e-12, "[[k]]_q should vanish, k={k}");
        }
    }

    #[test]
    fn sym_bracket_k3_values() {
        // direct sine-ratio evaluation for k = 3
        assert!((sym_bracket(0, 3) - 0.0).abs() < 1e-15);
        assert!((sym_bracket(2, 3) - (-1.0)).abs() < 1e-12);
        assert!((sym_bracket(4, 3) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sqrt_chain_squares_to_factorial() {
        let root = RootOfUnity::new(5);
        let chain = sqrt_box_factorial_chain(4, root.q);
        for n in 0..=4 {
            let sq = chain[n] * chain[n];
            assert!((sq - box_factorial(n, root.q)).norm() < 1e-12);
        }
    }
}
