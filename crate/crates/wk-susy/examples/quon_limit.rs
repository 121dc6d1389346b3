//! Drive a generic deformed oscillator toward a root of unity and watch the
//! collapsed k-step ladder turn into an ordinary boson pair.
//!
//! ```bash
//! cargo run --example quon_limit
//! ```

use num_complex::Complex64 as C64;
use wk_susy::fock::ToleranceConfig;
use wk_susy::quon::{quon_limit_study, QuonAlgebra};

fn main() -> wk_susy::Result<()> {
    // away from roots of unity the deformed bracket holds directly
    let quon = QuonAlgebra::symmetric(C64::new(0.7, 0.0), 24)?;
    println!(
        "generic deformation 0.7: bracket residual {:.3e}",
        quon.bracket_residual(&ToleranceConfig::default())?
    );

    for k in [2usize, 3] {
        let study = quon_limit_study(k, 24, &[1e-1, 3e-2, 1e-2, 3e-3, 1e-3])?;
        println!("\nk = {k}, depth {}:", study.depth);
        println!("  {:>9}  {:>12}", "epsilon", "residual");
        for row in &study.rows {
            println!("  {:>9.1e}  {:>12.4e}", row.epsilon, row.residual);
        }
        println!(
            "  strictly decreasing: {}, convergence order ~ {:.2}",
            study.strictly_decreasing, study.order_estimate
        );
    }
    Ok(())
}
