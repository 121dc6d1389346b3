//! k-fermion matrices and the deformed-boson + k-fermion realization of the
//! graded ladder algebra.
//!
//! A k-fermion is a single mode with nilpotency order k. Two Fock-action
//! conventions are provided: the shift convention (lowering amplitude 1,
//! raising amplitude `[[s+1]]_q`) and the symmetric convention (both
//! amplitudes are principal square roots `sqrt([[.]]_q)`). The deformed
//! bracket `[f-, f+]_q = 1` and the order-k nilpotency hold in both; the
//! adjoint cross-relations single out the symmetric one.

use num_complex::Complex64 as C64;

use crate::error::{Result, WkError};
use crate::fock::{GradedBasis, SpaceId, ToleranceConfig};
use crate::operator::{q_commutator, OperatorMatrix, RelationReport};
use crate::qcalc::{box_bracket, box_factorial, RootOfUnity};
use crate::wk::{solve_structure_function, StructureSpec, WkGenerators};

/// Which Fock action realizes the mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KFermionConvention {
    /// `f- |s> = |s-1>`, `f+ |s> = [[s+1]]_q |s+1>`.
    Shift,
    /// `f- |s> = sqrt([[s]]_q) |s-1>`, `f+ |s> = sqrt([[s+1]]_q) |s+1>`.
    Symmetric,
}

/// One k-fermion mode: the pair, their adjoints and the mode number operator.
#[derive(Debug, Clone)]
pub struct KFermionOps {
    pub k: usize,
    pub root: RootOfUnity,
    pub convention: KFermionConvention,
    pub f_minus: OperatorMatrix,
    pub f_plus: OperatorMatrix,
    pub f_minus_dag: OperatorMatrix,
    pub f_plus_dag: OperatorMatrix,
    pub number: OperatorMatrix,
}

fn build_mode(k: usize, convention: KFermionConvention) -> KFermionOps {
    let root = RootOfUnity::new(k);
    let space = SpaceId::KFermion { k };
    let mut f_minus = OperatorMatrix::zeros(space);
    let mut f_plus = OperatorMatrix::zeros(space);
    for s in 1..k {
        let (lo, hi) = match convention {
            KFermionConvention::Shift => (C64::new(1.0, 0.0), box_bracket(s, root.q)),
            KFermionConvention::Symmetric => {
                let a = box_bracket(s, root.q).sqrt();
                (a, a)
            }
        };
        f_minus.set(s - 1, s, lo);
        f_plus.set(s, s - 1, hi);
    }
    let number = OperatorMatrix::diagonal(space, |s| C64::new(s as f64, 0.0));
    KFermionOps {
        k,
        root,
        convention,
        f_minus_dag: f_minus.dagger(),
        f_plus_dag: f_plus.dagger(),
        f_minus,
        f_plus,
        number,
    }
}

/// Shift-convention mode (the default Fock action).
pub fn build_kfermions(k: usize) -> Result<KFermionOps> {
    if k < 2 {
        return Err(WkError::RepresentationConstruction(format!("k = {k} below 2")));
    }
    Ok(build_mode(k, KFermionConvention::Shift))
}

/// Symmetric-convention mode; satisfies the full relation set including the
/// adjoint cross-relations for every k.
pub fn build_kfermions_symmetric(k: usize) -> Result<KFermionOps> {
    if k < 2 {
        return Err(WkError::RepresentationConstruction(format!("k = {k} below 2")));
    }
    Ok(build_mode(k, KFermionConvention::Symmetric))
}

impl KFermionOps {
    /// The cyclic combination `f- + f+^{k-1} / [[k-1]]_q!`; its k-th power is
    /// the identity.
    pub fn cyclic_combo(&self) -> Result<OperatorMatrix> {
        let top = self.f_plus.powers(self.k - 1)?.pop().unwrap();
        let fact = box_factorial(self.k - 1, self.root.q);
        self.f_minus.add(&top.scale(C64::new(1.0, 0.0) / fact))
    }
}

/// Relation suite for one mode. The adjoint cross-relations
/// `f- f+^dag = q^{-1/2} f+^dag f-` and `f+ f-^dag = q^{+1/2} f-^dag f+`
/// hold identically only in the symmetric convention (and for k <= 3 in the
/// shift convention), so they are reported only where they are claims.
pub fn verify_kfermion_relations(ops: &KFermionOps, tol: &ToleranceConfig) -> Result<RelationReport> {
    let k = ops.k;
    let space = SpaceId::KFermion { k };
    let id = OperatorMatrix::identity(space);
    let mut report = RelationReport::default();

    let push_eq = |report: &mut RelationReport, name: &str, lhs: &OperatorMatrix, rhs: &OperatorMatrix, scale: f64| {
        let num = lhs.sub(rhs).unwrap().frobenius();
        let denom = lhs.frobenius().max(rhs.frobenius()).max(scale).max(tol.abs_floor);
        report.push(name.to_string(), num / denom, tol);
    };

    let bracket = q_commutator(&ops.f_minus, &ops.f_plus, ops.root.q)?;
    push_eq(&mut report, "kfermion.deformed_bracket", &bracket, &id, 1.0);

    let fm_k = ops.f_minus.powers(k)?.pop().unwrap();
    let fp_k = ops.f_plus.powers(k)?.pop().unwrap();
    let scale_m = ops.f_minus.frobenius().powi(k as i32);
    let scale_p = ops.f_plus.frobenius().powi(k as i32);
    report.push("kfermion.lowering_nilpotent", fm_k.frobenius() / scale_m.max(tol.abs_floor), tol);
    report.push("kfermion.raising_nilpotent", fp_k.frobenius() / scale_p.max(tol.abs_floor), tol);

    let bracket_dag = q_commutator(&ops.f_plus_dag, &ops.f_minus_dag, ops.root.qbar())?;
    push_eq(&mut report, "kfermion.adjoint_deformed_bracket", &bracket_dag, &id, 1.0);

    let nm = q_commutator(&ops.number, &ops.f_minus, C64::new(1.0, 0.0))?;
    push_eq(&mut report, "kfermion.number_lowers", &nm, &ops.f_minus.scale_re(-1.0), 1.0);
    let np = q_commutator(&ops.number, &ops.f_plus, C64::new(1.0, 0.0))?;
    push_eq(&mut report, "kfermion.number_raises", &np, &ops.f_plus, 1.0);

    if matches!(ops.convention, KFermionConvention::Symmetric) || k <= 3 {
        let half = ops.root.q.sqrt();
        let lhs = ops.f_minus.matmul(&ops.f_plus_dag)?;
        let rhs = ops.f_plus_dag.matmul(&ops.f_minus)?.scale(C64::new(1.0, 0.0) / half);
        let scale = ops.f_minus.frobenius() * ops.f_plus_dag.frobenius();
        push_eq(&mut report, "kfermion.cross_lowering_adjoint", &lhs, &rhs, scale);
        let lhs = ops.f_plus.matmul(&ops.f_minus_dag)?;
        let rhs = ops.f_minus_dag.matmul(&ops.f_plus)?.scale(half);
        let scale = ops.f_plus.frobenius() * ops.f_minus_dag.frobenius();
        push_eq(&mut report, "kfermion.cross_raising_adjoint", &lhs, &rhs, scale);
    }

    let combo = ops.cyclic_combo()?;
    let combo_k = combo.powers(k)?.pop().unwrap();
    push_eq(&mut report, "kfermion.cyclic_combo_power", &combo_k, &id, 1.0);

    Ok(report)
}

/// Ladder generators assembled from a deformed-boson factor and the k-fermion
/// cyclic combination, remapped onto the graded basis.
///
/// The boson factor acts sector-wise with amplitude `sqrt(F_s(n))`; the
/// k-fermion combination supplies the grade shift with unit amplitude. The
/// grade shift is applied before the boson factor on the lowering side and
/// after it on the raising side, which is the ordering that makes the two
/// ladder operators mutually adjoint; the result agrees entrywise with the
/// abstract construction for every model.
pub fn build_realized_generators(spec: &StructureSpec, basis: &GradedBasis) -> Result<WkGenerators> {
    let k = basis.k();
    let d = basis.d();
    let table = solve_structure_function(spec, basis)?;
    let root = RootOfUnity::new(k);
    let fermions = build_kfermions(k)?;
    let combo = fermions.cyclic_combo()?;

    // grade-diagonal deformed boson: B- |n, s> = sqrt(F_s(n)) |n-1, s>
    let mut b_minus = OperatorMatrix::zeros(basis.space());
    let mut b_plus = OperatorMatrix::zeros(basis.space());
    for s in 0..k {
        for n in 1..d {
            let amp = C64::new(table.value(s, n), 0.0).sqrt();
            let from = basis.flat_index(n, s)?;
            let to = basis.flat_index(n - 1, s)?;
            b_minus.set(to, from, amp);
            b_plus.set(from, to, amp);
        }
    }

    // the k-fermion combination extended over boson levels
    let mut shift_down = OperatorMatrix::zeros(basis.space());
    for n in 0..d {
        for s in 0..k {
            for t in 0..k {
                let amp = combo.get(t, s);
                if amp.norm() > 0.0 {
                    let from = basis.flat_index(n, s)?;
                    let to = basis.flat_index(n, t)?;
                    shift_down.set(to, from, amp);
                }
            }
        }
    }
    let shift_up = shift_down.powers(k - 1)?.pop().unwrap();

    let x_minus = shift_down.matmul(&b_minus)?;
    let x_plus = b_plus.matmul(&shift_up)?;

    // grading operator from the k-fermion bracket K = [f-, f+]
    let kf_bracket = q_commutator(&fermions.f_minus, &fermions.f_plus, C64::new(1.0, 0.0))?;
    let mut grading = OperatorMatrix::zeros(basis.space());
    for n in 0..d {
        for s in 0..k {
            for t in 0..k {
                let amp = kf_bracket.get(t, s);
                if amp.norm() > 0.0 {
                    let from = basis.flat_index(n, s)?;
                    let to = basis.flat_index(n, t)?;
                    grading.set(to, from, amp);
                }
            }
        }
    }

    let number = OperatorMatrix::diagonal_graded(basis, |n, _| C64::new(n as f64, 0.0));
    let projectors = crate::wk::build_projectors(&grading, k)?;
    let hermitian = table.min_entry().0 >= 0.0;
    Ok(WkGenerators {
        basis: *basis,
        spec: spec.clone(),
        root,
        x_minus,
        x_plus,
        number,
        grading,
        projectors,
        table,
        hermitian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{commutator, interior_window, relation_residual};
    use crate::wk::{build_generators_balanced, StructureSpec};

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn k2_shift_mode_is_ordinary_fermion() {
        let ops = build_kfermions(2).unwrap();
        assert!(ops.f_plus.max_abs_diff(&ops.f_minus.dagger()).unwrap() < 1e-15);
        let anti = q_commutator(&ops.f_minus, &ops.f_plus, ops.root.q).unwrap();
        let id = OperatorMatrix::identity(SpaceId::KFermion { k: 2 });
        assert!(anti.max_abs_diff(&id).unwrap() < 1e-15);
    }

    #[test]
    fn raising_is_not_adjoint_beyond_k2() {
        for k in 3..=6 {
            let ops = build_kfermions(k).unwrap();
            assert!(ops.f_plus.max_abs_diff(&ops.f_minus.dagger()).unwrap() > 1e-3, "k={k}");
            let sym = build_kfermions_symmetric(k).unwrap();
            assert!(sym.f_plus.max_abs_diff(&sym.f_minus.dagger()).unwrap() > 1e-3, "k={k}");
        }
    }

    #[test]
    fn k3_deformed_bracket_is_identity() {
        let ops = build_kfermions(3).unwrap();
        let bracket = q_commutator(&ops.f_minus, &ops.f_plus, ops.root.q).unwrap();
        let id = OperatorMatrix::identity(SpaceId::KFermion { k: 3 });
        assert!(bracket.max_abs_diff(&id).unwrap() < 1e-14);
    }

    #[test]
    fn relation_suite_passes_both_conventions() {
        for k in 2..=8 {
            for ops in [build_kfermions(k).unwrap(), build_kfermions_symmetric(k).unwrap()] {
                let report = verify_kfermion_relations(&ops, &tol()).unwrap();
                assert!(
                    report.all_pass(),
                    "k={k} conv={:?} max residual {:e}",
                    ops.convention,
                    report.max_residual()
                );
                assert!(report.max_residual() <= 1e-12);
            }
        }
    }

    #[test]
    fn cross_relations_fail_in_shift_convention_above_k3() {
        // the adjoint cross-relation needs 2 cos(pi/k) = 1, true only at k = 3
        let ops = build_kfermions(4).unwrap();
        let half = ops.root.q.sqrt();
        let lhs = ops.f_minus.matmul(&ops.f_plus_dag).unwrap();
        let rhs = ops.f_plus_dag.matmul(&ops.f_minus).unwrap().scale(C64::new(1.0, 0.0) / half);
        assert!(lhs.max_abs_diff(&rhs).unwrap() > 1e-2);
    }

    #[test]
    fn combo_is_unit_cyclic_shift_in_shift_convention() {
        for k in 2..=6 {
            let ops = build_kfermions(k).unwrap();
            let combo = ops.cyclic_combo().unwrap();
            for s in 0..k {
                let target = (s + k - 1) % k;
                for t in 0..k {
                    let expect = if t == target { 1.0 } else { 0.0 };
                    assert!(
                        (combo.get(t, s) - C64::new(expect, 0.0)).norm() < 1e-12,
                        "k={k} s={s} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn projector_shuffle_through_combo_powers() {
        // P_s C^n = C^n P_{s+n}
        let k = 4;
        let ops = build_kfermions(k).unwrap();
        let combo = ops.cyclic_combo().unwrap();
        let grading = q_commutator(&ops.f_minus, &ops.f_plus, C64::new(1.0, 0.0)).unwrap();
        let projectors = crate::wk::build_projectors(&grading, k).unwrap();
        let powers = combo.powers(k).unwrap();
        for s in 0..k {
            for n in 0..=k {
                let lhs = projectors[s].matmul(&powers[n]).unwrap();
                let rhs = powers[n].matmul(&projectors[(s + n) % k]).unwrap();
                assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12, "s={s} n={n}");
            }
        }
    }

    #[test]
    fn k3_lowering_matches_compact_form() {
        // f- + f+^2 / [[2]]_q! equals f- - q f+^2 at k = 3
        let ops = build_kfermions(3).unwrap();
        let combo = ops.cyclic_combo().unwrap();
        let fp2 = ops.f_plus.matmul(&ops.f_plus).unwrap();
        let alt = ops.f_minus.sub(&fp2.scale(ops.root.q)).unwrap();
        assert!(combo.max_abs_diff(&alt).unwrap() < 1e-14);
    }

    #[test]
    fn realized_equals_abstract_for_catalog_models() {
        let specs: Vec<(&str, StructureSpec)> = vec![
            ("oscillator", StructureSpec::Oscillator),
            ("c_lambda", StructureSpec::c_lambda_single(3, 0.5)),
            ("linear", StructureSpec::LinearG { a: 0.1, b: 1.0 }),
            ("uq_sl2", StructureSpec::UqSl2),
        ];
        let basis = GradedBasis::new(3, 20).unwrap();
        for (name, spec) in specs {
            let realized = build_realized_generators(&spec, &basis).unwrap();
            let abstract_gen = build_generators_balanced(&spec, &basis).unwrap();
            assert!(
                realized.x_minus.max_abs_diff(&abstract_gen.x_minus).unwrap() < 1e-12,
                "{name} lowering"
            );
            assert!(
                realized.x_plus.max_abs_diff(&abstract_gen.x_plus).unwrap() < 1e-12,
                "{name} raising"
            );
            assert!(
                realized.grading.max_abs_diff(&abstract_gen.grading).unwrap() < 1e-12,
                "{name} grading"
            );
        }
    }

    #[test]
    fn realized_ladder_commutator_matches_boson_bracket_for_uniform_models() {
        // [X-, X+] = [b-, b+] requires a sector-independent structure function
        let basis = GradedBasis::new(3, 20).unwrap();
        let gen = build_realized_generators(&StructureSpec::Oscillator, &basis).unwrap();
        let lhs = commutator(&gen.x_minus, &gen.x_plus).unwrap();
        let id = OperatorMatrix::identity(basis.space());
        let w = interior_window(&basis, 1).unwrap();
        let (r, pass) = relation_residual(&lhs, &id, &w, &tol()).unwrap();
        assert!(pass, "residual {r:e}");
    }
}
