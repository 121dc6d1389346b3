//! Generalized Grassmann calculus: deformed derivatives, Berezin integration
//! and the operator identities behind the differential realizations.
//!
//! ```bash
//! cargo run --example grassmann_calculus
//! ```

use num_complex::Complex64 as C64;
use wk_susy::fock::ToleranceConfig;
use wk_susy::grassmann::{
    berezin_integrate, q_derivative, verify_grassmann_relations, Deformation, GrassmannElement,
};

fn main() -> wk_susy::Result<()> {
    let k = 4;
    // a generic element sum_s c_s theta^s with theta^4 = 0
    let e = GrassmannElement {
        k,
        coeffs: vec![
            C64::new(1.0, 0.0),
            C64::new(0.5, -1.0),
            C64::new(0.0, 2.0),
            C64::new(-1.5, 0.25),
        ],
    };
    let de = q_derivative(&e, Deformation::Q);
    println!("element coefficients:    {:?}", e.coeffs);
    println!("deformed derivative:     {:?}", de.coeffs);
    println!("berezin integral:        {}", berezin_integrate(&e));
    println!("integral of derivative:  {}", berezin_integrate(&de));

    println!("\nidentity suite (both deformation conventions + cross relations):");
    let tol = ToleranceConfig { rel_tol: 1e-12, abs_floor: 1e-12 };
    for k in 2..=6 {
        let report = verify_grassmann_relations(k, &tol)?;
        println!(
            "  k = {k}: {} checks, max residual {:.2e}, {}",
            report.checks.len(),
            report.max_residual(),
            if report.all_pass() { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
