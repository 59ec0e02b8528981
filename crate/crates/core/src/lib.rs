//! Condensation algebras and bimodules over ℚ, their relative tensor products,
//! unitalization and Morita comparison, and the commuting-projector chains they
//! define. Every computation is exact.

pub mod algebra;
pub mod anchors;
pub mod battery;
pub mod bimodule;
pub mod check;
pub mod error;
pub mod exactlin;
pub mod hamiltonian;
pub mod io;
pub mod karoubi;
mod par;

pub use error::{Error, Result};
pub use par::{current_threads, with_single_thread};
