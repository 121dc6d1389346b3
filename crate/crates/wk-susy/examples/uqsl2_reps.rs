//! The three k-dimensional representation types of the quantum algebra at a
//! root of unity, and their embedding into the graded ladder algebra.
//!
//! ```bash
//! cargo run --example uqsl2_reps
//! ```

use wk_susy::fock::ToleranceConfig;
use wk_susy::uqsl2::{build_uqsl2_rep, verify_uqsl2_embedding, verify_uqsl2_relations, RepType};

fn main() -> wk_susy::Result<()> {
    let tol = ToleranceConfig::default();
    for k in [3usize, 4, 5] {
        println!("k = {k}");
        for rep_type in [RepType::Nilpotent, RepType::Cyclic, RepType::SemiPeriodic] {
            let rep = build_uqsl2_rep(k, rep_type)?;
            let defining = verify_uqsl2_relations(&rep, &tol)?;
            let embedding = verify_uqsl2_embedding(&rep, &tol)?;
            let (a, b) = rep_type.boundary();
            println!(
                "  {rep_type:?}: boundary powers (J-^k, J+^k) = ({a}, {b}); defining {:.2e}, embedding {:.2e}",
                defining.max_residual(),
                embedding.max_residual()
            );
        }
    }
    println!("\nthe ladder commutator reproduces the sector values -[2s]_q; for");
    println!("k = 3 those are (0, +1, -1) on the three grades.");
    Ok(())
}
