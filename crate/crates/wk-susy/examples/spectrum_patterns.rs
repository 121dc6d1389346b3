//! Degeneracy patterns of the order-k graded oscillator: a singlet ground
//! state, then multiplets growing up to k, then k-plets forever.
//!
//! ```bash
//! cargo run --example spectrum_patterns
//! ```

use wk_susy::fock::{GradedBasis, ToleranceConfig};
use wk_susy::susy::{build_hamiltonian_general, degeneracy_pattern};
use wk_susy::wk::{build_generators, StructureSpec};

fn main() -> wk_susy::Result<()> {
    let tol = ToleranceConfig::default();
    for k in [2usize, 3, 5] {
        let basis = GradedBasis::new(k, 40)?;
        let gen = build_generators(&StructureSpec::Oscillator, &basis)?;
        let (h, table, _) = build_hamiltonian_general(&gen)?;
        println!("k = {k}: sector energies H_s(n), s = 1..{k}");
        for s in 1..=k {
            println!("  H_{s}(n) = {:+.1} + {:.1} n", table.value(s, 0), table.value(s, 1) - table.value(s, 0));
        }
        let pattern = degeneracy_pattern(&h, &basis, 2 * k, &tol)?;
        let rendered: Vec<String> =
            pattern.levels.iter().take(8).map(|(e, m)| format!("{e:+.0}({m})")).collect();
        println!("  spectrum (energy(multiplicity)): {} ...\n", rendered.join("  "));
    }
    Ok(())
}
