//! Finite-difference cross-check: the two-sector oscillator in coordinate
//! form reproduces the algebraic spectrum 0, 1, 1, 2, 2 and converges at
//! second order.
//!
//! ```bash
//! cargo run --example fd_crosscheck
//! ```

use wk_susy::fd::{
    exact_super_oscillator_levels, fd_convergence_study, fd_spectrum_super_oscillator, FdGrid,
};

fn main() -> wk_susy::Result<()> {
    let grid = FdGrid::new(8.0, 2001)?;
    let levels = fd_spectrum_super_oscillator(grid, 5)?;
    let exact = exact_super_oscillator_levels(5);
    println!("domain [-8, 8], {} points (h = {:.4}):", grid.points, grid.spacing());
    println!("  {:>12}  {:>7}  {:>10}", "computed", "exact", "error");
    for (got, want) in levels.iter().zip(exact.iter()) {
        println!("  {got:>12.8}  {want:>7.1}  {:>10.2e}", (got - want).abs());
    }
    let conv = fd_convergence_study(grid, 5)?;
    println!(
        "\nhalving the spacing: error {:.2e} -> {:.2e}, ratio {:.3} (expect about 4)",
        conv.coarse_error, conv.fine_error, conv.ratio
    );
    Ok(())
}
