//! Build a graded ladder-algebra model and verify its defining relations.
//!
//! ```bash
//! cargo run --example verify_algebra
//! ```

use wk_susy::fock::{GradedBasis, ToleranceConfig};
use wk_susy::wk::{build_generators, verify_wk_relations, StructureSpec};

fn main() -> wk_susy::Result<()> {
    let tol = ToleranceConfig::default();
    let basis = GradedBasis::new(3, 30)?;

    for (name, spec) in [
        ("oscillator", StructureSpec::Oscillator),
        ("grading-extended (c = 0.5)", StructureSpec::c_lambda_single(3, 0.5)),
        ("linear (a = 0.1, b = 1)", StructureSpec::LinearG { a: 0.1, b: 1.0 }),
    ] {
        let gen = build_generators(&spec, &basis)?;
        let report = verify_wk_relations(&gen, &tol)?;
        println!("model: {name}  (k = {}, d = {})", basis.k(), basis.d());
        for check in &report.checks {
            println!("  {:<42} {:>12.3e}  {}", check.name, check.residual, if check.pass { "pass" } else { "FAIL" });
        }
        println!("  => {}\n", if report.all_pass() { "all relations hold" } else { "FAILURES" });
    }

    // a terminating family truncated too deep fails loudly, naming the level
    let morse_like = StructureSpec::LinearG { a: -0.2, b: 2.0 };
    match build_generators(&morse_like, &GradedBasis::new(2, 40)?) {
        Err(e) => println!("deep truncation of a terminating family: {e}"),
        Ok(_) => println!("unexpectedly built"),
    }
    Ok(())
}
