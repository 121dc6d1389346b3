//! Truncated matrix models of Z_k-graded ladder algebras and fractional
//! supersymmetric quantum mechanics.
//!
//! The crate builds dense complex matrix representations of a graded
//! Weyl-Heisenberg-type algebra on a truncated Fock space `|n, s>` (boson
//! level n, grade s), derives nilpotent supercharges and the associated
//! Hamiltonian, and verifies every algebraic identity as a windowed
//! relation residual. Around that core sit:
//!
//! - k-fermion matrix modes and a deformed-boson + k-fermion realization of
//!   the same generators ([`kfermion`]);
//! - generic deformed oscillators and their degeneration into boson +
//!   k-fermion pairs at roots of unity ([`quon`]);
//! - k-dimensional quantum-algebra representations at roots of unity and
//!   their embedding into the graded algebra ([`uqsl2`]);
//! - generalized Grassmann calculus with deformed derivatives and Berezin
//!   integration, and differential realizations on a Laurent-monomial space
//!   ([`grassmann`], [`diffreal`]);
//! - a finite-difference cross-check of the two-sector oscillator spectrum
//!   ([`fd`]);
//! - deformed Glauber and fractional supercoherent states ([`coherent`]).
//!
//! Everything is pure and deterministic; see the `examples/` directory for
//! one runnable walk-through per capability and [`scenario`] for the
//! config-driven runner behind the `wk-susy` binary.

pub mod coherent;
pub mod diffreal;
pub mod error;
pub mod fd;
pub mod fock;
pub mod grassmann;
pub mod kfermion;
pub mod operator;
pub mod qcalc;
pub mod quon;
pub mod report;
pub mod scenario;
pub mod susy;
pub mod uqsl2;
pub mod wk;

pub use error::{Result, WkError};
pub use fock::{GradedBasis, SpaceId, ToleranceConfig};
pub use operator::{
    anticommutator, commutator, diagonal_spectrum, interior_window, q_commutator,
    relation_residual, OperatorMatrix, RelationCheck, RelationReport,
};
pub use qcalc::RootOfUnity;
pub use wk::{
    build_generators, build_generators_balanced, build_projectors, solve_structure_function,
    verify_wk_relations, StructureFunctionTable, StructureSpec, WkGenerators,
};
