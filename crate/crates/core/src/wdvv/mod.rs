//! Recursive reconstruction of the integrals from the WDVV equations.

pub mod corollary;
pub mod identity;
pub mod linear;
pub mod s4;
pub mod seed;

pub use corollary::{corollary_symmetry_check, s4_pde_residual, series_from_table, CorollaryReport};
pub use identity::{
    evaluate_identity, generate_identity, linearize, EntrySource, IdentityTerm, TableSource, WdvvIdentity,
};
pub use linear::{a4_determinant, solve_a4, solve_z2z2, LengthReport, Solved, SolverReport};
pub use s4::{auxiliary_residuals, recover_cd, solve_s4, BranchGuard, CdReport, S4Solution, S4Step};
pub use seed::SeedData;
