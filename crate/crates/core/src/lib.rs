//! Exact Hurwitz-Hodge integrals for the rotation groups Z2xZ2, A4 and S4.
//!
//! Two independent routes produce the same tables: expanding trigonometric
//! closed forms (including the root-system formula over D4 and E6), and
//! solving the WDVV equations from group-theoretic seed data.

pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod hkernel;
pub mod linalg;
pub mod potentials;
pub mod rational;
pub mod roots;
pub mod series;
pub mod table;
pub mod verify;
pub mod wdvv;

pub use cyclotomic::CycNumber;
pub use error::{Error, Result};
pub use group::{group_table, GroupData, GroupName};
pub use hkernel::{HTerm, Phase};
pub use rational::Rational;
pub use roots::{RootSystemData, RootType};
pub use series::MultiSeries;
pub use table::HurwitzTable;
