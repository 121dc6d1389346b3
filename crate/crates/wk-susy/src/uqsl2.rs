//! k-dimensional representations of the quantum algebra with deformation at a
//! primitive k-th root of unity, and their embedding into the graded ladder
//! algebra.
//!
//! The weight operator is `J_3 = diag(0..k-1)`, so `q^{J_3}` has integer
//! exponents and its k-th power is exactly the identity. Ladder amplitudes
//! are solved from the link recursion `u_m - u_{m+1} = [2m]_q` where
//! `u_m = beta_{m-1} a_m` is the product of the raising and lowering
//! amplitudes across link m; the boundary condition distinguishes the three
//! representation types `J-^k = A, J+^k = B`:
//! nilpotent (0,0), cyclic (1,1), semi-periodic (0,1).

use num_complex::Complex64 as C64;

use crate::error::{Result, WkError};
use crate::fock::{SpaceId, ToleranceConfig};
use crate::operator::{q_commutator, relation_residual, OperatorMatrix, RelationReport};
use crate::qcalc::{sym_bracket, RootOfUnity};
use crate::wk::{build_projectors, verify_projectors};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepType {
    Nilpotent,
    Cyclic,
    SemiPeriodic,
}

impl RepType {
    /// The constants (A, B) with `J-^k = A` and `J+^k = B`.
    pub fn boundary(&self) -> (f64, f64) {
        match self {
            RepType::Nilpotent => (0.0, 0.0),
            RepType::Cyclic => (1.0, 1.0),
            RepType::SemiPeriodic => (0.0, 1.0),
        }
    }
}

/// One k-dimensional representation with its Casimir invariant.
#[derive(Debug, Clone)]
pub struct UqSl2Rep {
    pub k: usize,
    pub root: RootOfUnity,
    pub rep_type: RepType,
    pub j_minus: OperatorMatrix,
    pub j_plus: OperatorMatrix,
    pub j3: OperatorMatrix,
    pub q_j3: OperatorMatrix,
    pub q_j3_inv: OperatorMatrix,
    /// The two algebraically equal Casimir assemblies.
    pub casimir: OperatorMatrix,
    pub casimir_alt: OperatorMatrix,
}

/// Partial sums `r_m = sum_{j=0}^{m-1} [2j]_q`; also equal to
/// `[m]_q [m-1]_q`.
fn link_offsets(k: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(k);
    let mut acc = 0.0;
    for m in 0..k {
        out.push(acc);
        acc += sym_bracket(2 * m as i64, k);
    }
    out
}

/// Durand-Kerner roots of the monic polynomial `prod_m (u - r_m) - 1`.
fn cyclic_link_constant(offsets: &[f64]) -> C64 {
    let k = offsets.len();
    let eval = |u: C64| -> C64 {
        offsets.iter().fold(C64::new(1.0, 0.0), |acc, &r| acc * (u - C64::new(r, 0.0)))
            - C64::new(1.0, 0.0)
    };
    let seed = C64::new(0.4, 0.9);
    let mut roots: Vec<C64> = (0..k).map(|j| seed.powu(j as u32 + 1)).collect();
    for _ in 0..400 {
        let snapshot = roots.clone();
        for i in 0..k {
            let mut denom = C64::new(1.0, 0.0);
            for (j, r) in snapshot.iter().enumerate() {
                if j != i {
                    denom *= snapshot[i] - r;
                }
            }
            roots[i] -= eval(snapshot[i]) / denom;
        }
    }
    // deterministic choice: best-conditioned root, ties broken lexically
    let mut best = roots[0];
    let mut best_key = (f64::NEG_INFINITY, 0.0, 0.0);
    for &r in &roots {
        let min_dist = offsets
            .iter()
            .map(|&o| (r - C64::new(o, 0.0)).norm())
            .fold(f64::INFINITY, f64::min);
        let key = (min_dist, -r.re, -r.im);
        if key > best_key {
            best_key = key;
            best = r;
        }
    }
    best
}

/// Build one representation and verify its defining relations at build time.
pub fn build_uqsl2_rep(k: usize, rep_type: RepType) -> Result<UqSl2Rep> {
    if k < 2 {
        return Err(WkError::RepresentationConstruction(format!("k = {k} below 2")));
    }
    let root = RootOfUnity::new(k);
    let space = SpaceId::WeightLattice { k };
    let offsets = link_offsets(k);

    // link products u_m = u_0 - r_m, then split into raising and lowering
    // amplitudes according to the boundary condition
    let mut lowering = vec![C64::new(0.0, 0.0); k];
    let mut raising = vec![C64::new(0.0, 0.0); k];
    match rep_type {
        RepType::Nilpotent => {
            for m in 1..k {
                let amp = (-C64::new(offsets[m], 0.0)).sqrt();
                lowering[m] = amp;
                raising[m - 1] = amp;
            }
        }
        RepType::SemiPeriodic => {
            // raising amplitudes all one (including the wrap), lowering
            // carries the full link product; a_0 = u_0 = 0 breaks the cycle
            for m in 0..k {
                raising[m] = C64::new(1.0, 0.0);
            }
            for m in 1..k {
                lowering[m] = -C64::new(offsets[m], 0.0);
            }
        }
        RepType::Cyclic => {
            let u0 = cyclic_link_constant(&offsets);
            let amps: Vec<C64> = (0..k).map(|m| (u0 - C64::new(offsets[m], 0.0)).sqrt()).collect();
            for m in 0..k {
                lowering[m] = amps[m];
                raising[(m + k - 1) % k] = amps[m];
            }
            // the product of principal roots squares to one; flip a link pair
            // if it landed on the negative branch
            let w: C64 = amps.iter().product();
            if (w + C64::new(1.0, 0.0)).norm() < 1e-6 {
                lowering[1] = -lowering[1];
                raising[0] = -raising[0];
            }
        }
    }

    let mut j_minus = OperatorMatrix::zeros(space);
    let mut j_plus = OperatorMatrix::zeros(space);
    for m in 0..k {
        if lowering[m].norm() > 0.0 {
            j_minus.set((m + k - 1) % k, m, lowering[m]);
        }
        if raising[m].norm() > 0.0 {
            j_plus.set((m + 1) % k, m, raising[m]);
        }
    }
    let j3 = OperatorMatrix::diagonal(space, |m| C64::new(m as f64, 0.0));
    let q_j3 = OperatorMatrix::diagonal(space, |m| root.pow(m as i64));
    let q_j3_inv = OperatorMatrix::diagonal(space, |m| root.pow(-(m as i64)));

    let (casimir, casimir_alt) = build_casimir(&j_minus, &j_plus, &root, k)?;

    let rep = UqSl2Rep { k, root, rep_type, j_minus, j_plus, j3, q_j3, q_j3_inv, casimir, casimir_alt };
    validate_rep(&rep)?;
    Ok(rep)
}

/// Both closed forms of the Casimir. At k = 2 the deformation-dependent tail
/// degenerates to a divergent multiple of the identity; only the regular part
/// is kept there, which leaves centrality and the equality of the two forms
/// intact.
fn build_casimir(
    j_minus: &OperatorMatrix,
    j_plus: &OperatorMatrix,
    root: &RootOfUnity,
    k: usize,
) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let space = j_minus.space();
    let a = j_minus.matmul(j_plus)?;
    let b = j_plus.matmul(j_minus)?;
    if k == 2 {
        return Ok((a, b));
    }
    let denom = (root.q - root.qbar()).powu(2);
    let tail_a = OperatorMatrix::diagonal(space, |m| {
        (root.q * root.pow(2 * m as i64) + root.qbar() * root.pow(-2 * (m as i64))) / denom
    });
    let tail_b = OperatorMatrix::diagonal(space, |m| {
        (root.qbar() * root.pow(2 * m as i64) + root.q * root.pow(-2 * (m as i64))) / denom
    });
    Ok((a.add(&tail_a)?, b.add(&tail_b)?))
}

fn validate_rep(rep: &UqSl2Rep) -> Result<()> {
    let report = verify_uqsl2_relations(rep, &ToleranceConfig::default())?;
    if !report.all_pass() {
        let worst = report
            .checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| format!("{} ({:.2e})", c.name, c.residual))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(WkError::RepresentationConstruction(format!(
            "defining relations violated: {worst}"
        )));
    }
    Ok(())
}

/// Defining relations of the representation itself.
pub fn verify_uqsl2_relations(rep: &UqSl2Rep, tol: &ToleranceConfig) -> Result<RelationReport> {
    let k = rep.k;
    let space = rep.j_minus.space();
    let id = OperatorMatrix::identity(space);
    let full = OperatorMatrix::identity(space);
    let mut report = RelationReport::default();

    // [J+, J-] = [2 J_3]_q
    let bracket = q_commutator(&rep.j_plus, &rep.j_minus, C64::new(1.0, 0.0))?;
    let rhs = OperatorMatrix::diagonal(space, |m| C64::new(sym_bracket(2 * m as i64, k), 0.0));
    let num = bracket.sub(&rhs)?.frobenius();
    let scale = rep.j_plus.frobenius() * rep.j_minus.frobenius();
    report.push("uq.ladder_bracket", num / scale.max(1.0).max(tol.abs_floor), tol);

    // q^{J3} J+- q^{-J3} = q^{+-1} J+-
    let twist = rep.q_j3.matmul(&rep.j_plus)?.matmul(&rep.q_j3_inv)?;
    let (r, _) = relation_residual(&twist, &rep.j_plus.scale(rep.root.q), &full, tol)?;
    report.push("uq.grading_twists_raising", r, tol);
    let twist = rep.q_j3.matmul(&rep.j_minus)?.matmul(&rep.q_j3_inv)?;
    let (r, _) = relation_residual(&twist, &rep.j_minus.scale(rep.root.qbar()), &full, tol)?;
    report.push("uq.grading_twists_lowering", r, tol);

    // q^{J3} q^{-J3} = 1 and (q^{J3})^k = 1
    let prod = rep.q_j3.matmul(&rep.q_j3_inv)?;
    let (r, _) = relation_residual(&prod, &id, &full, tol)?;
    report.push("uq.grading_inverse", r, tol);
    let cyc = rep.q_j3.powers(k)?.pop().unwrap();
    let (r, _) = relation_residual(&cyc, &id, &full, tol)?;
    report.push("uq.grading_cyclic", r, tol);

    // boundary constants
    let (a_const, b_const) = rep.rep_type.boundary();
    let jm_k = rep.j_minus.powers(k)?.pop().unwrap();
    let jp_k = rep.j_plus.powers(k)?.pop().unwrap();
    let scale_m = rep.j_minus.frobenius().powi(k as i32).max(1.0);
    let num = jm_k.sub(&id.scale_re(a_const))?.frobenius();
    report.push("uq.lowering_boundary_power", num / scale_m, tol);
    let scale_p = rep.j_plus.frobenius().powi(k as i32).max(1.0);
    let num = jp_k.sub(&id.scale_re(b_const))?.frobenius();
    report.push("uq.raising_boundary_power", num / scale_p, tol);

    // Casimir: the two assemblies agree and are central. Degenerate orders
    // can make the invariant vanish identically, so the scale never drops
    // below one.
    let num = rep.casimir.sub(&rep.casimir_alt)?.frobenius();
    let scale = rep.casimir.frobenius().max(rep.casimir_alt.frobenius()).max(1.0);
    report.push("uq.casimir_forms_agree", num / scale, tol);
    for (name, op) in [
        ("uq.casimir_central_lowering", &rep.j_minus),
        ("uq.casimir_central_raising", &rep.j_plus),
        ("uq.casimir_central_grading", &rep.q_j3),
    ] {
        let lhs = rep.casimir.matmul(op)?;
        let rhs = op.matmul(&rep.casimir)?;
        let num = lhs.sub(&rhs)?.frobenius();
        let scale = (rep.casimir.frobenius() * op.frobenius()).max(1.0);
        report.push(name, num / scale, tol);
    }

    Ok(report)
}

/// Embed `X+- = J+-, N = J_3, K = q^{J_3}` and verify the graded
/// ladder-algebra relations with `f_s = -[2s]_q`.
///
/// For cyclic and semi-periodic representations the wrap-around link is
/// excluded from the number-operator relations: an integer-valued `J_3` can
/// only satisfy `[N, X+-] = +-X+-` modulo k across the wrap.
pub fn verify_uqsl2_embedding(rep: &UqSl2Rep, tol: &ToleranceConfig) -> Result<RelationReport> {
    let k = rep.k;
    let space = rep.j_minus.space();
    let id = OperatorMatrix::identity(space);
    let full = OperatorMatrix::identity(space);
    let mut report = RelationReport::default();

    let projectors = build_projectors(&rep.q_j3, k)?;

    // [X-, X+] = sum_s f_s P_s with f_s = -[2s]_q
    let bracket = q_commutator(&rep.j_minus, &rep.j_plus, C64::new(1.0, 0.0))?;
    let mut rhs = OperatorMatrix::zeros(space);
    for (s, p) in projectors.iter().enumerate() {
        rhs = rhs.add(&p.scale_re(-sym_bracket(2 * s as i64, k)))?;
    }
    let num = bracket.sub(&rhs)?.frobenius();
    let scale = rep.j_plus.frobenius() * rep.j_minus.frobenius();
    report.push("uq.embed_ladder_commutator", num / scale.max(1.0).max(tol.abs_floor), tol);

    // number relations, wrap link masked out for cyclic boundaries
    let mask_col = |col: usize| {
        OperatorMatrix::diagonal(space, move |m| {
            if m == col {
                C64::new(0.0, 0.0)
            } else {
                C64::new(1.0, 0.0)
            }
        })
    };
    let w_minus = match rep.rep_type {
        RepType::Nilpotent => full.clone(),
        _ => mask_col(0),
    };
    let w_plus = match rep.rep_type {
        RepType::Nilpotent => full.clone(),
        _ => mask_col(k - 1),
    };
    let comm = q_commutator(&rep.j3, &rep.j_minus, C64::new(1.0, 0.0))?;
    let (r, _) = relation_residual(&comm, &rep.j_minus.scale_re(-1.0), &w_minus, tol)?;
    report.push("uq.embed_number_lowers", r, tol);
    let comm = q_commutator(&rep.j3, &rep.j_plus, C64::new(1.0, 0.0))?;
    let (r, _) = relation_residual(&comm, &rep.j_plus, &w_plus, tol)?;
    report.push("uq.embed_number_raises", r, tol);

    // grading relations hold exactly, wrap included
    let lhs = rep.q_j3.matmul(&rep.j_plus)?;
    let rhs = rep.j_plus.matmul(&rep.q_j3)?.scale(rep.root.q);
    let (r, _) = relation_residual(&lhs, &rhs, &full, tol)?;
    report.push("uq.embed_grading_twists_raising", r, tol);
    let lhs = rep.q_j3.matmul(&rep.j_minus)?;
    let rhs = rep.j_minus.matmul(&rep.q_j3)?.scale(rep.root.qbar());
    let (r, _) = relation_residual(&lhs, &rhs, &full, tol)?;
    report.push("uq.embed_grading_twists_lowering", r, tol);
    let cyc = rep.q_j3.powers(k)?.pop().unwrap();
    let (r, _) = relation_residual(&cyc, &id, &full, tol)?;
    report.push("uq.embed_grading_cyclic", r, tol);
    let kn = rep.q_j3.matmul(&rep.j3)?;
    let nk = rep.j3.matmul(&rep.q_j3)?;
    let (r, _) = relation_residual(&kn, &nk, &full, tol)?;
    report.push("uq.embed_grading_commutes_number", r, tol);

    // projector shuffle P_s X+ = X+ P_{s-1}, exact across the wrap
    let mut worst = 0.0_f64;
    for s in 0..k {
        let lhs = projectors[s].matmul(&rep.j_plus)?;
        let rhs = rep.j_plus.matmul(&projectors[(s + k - 1) % k])?;
        let num = lhs.sub(&rhs)?.frobenius();
        worst = worst.max(num / rep.j_plus.frobenius().max(tol.abs_floor));
    }
    report.push("uq.embed_projector_shuffle", worst, tol);

    report.extend(verify_projectors(&projectors, &rep.q_j3, &rep.root, tol)?);

    Ok(report)
}
