//! Linear eigenvalue inequalities between a Hermitian operator on `A ⊗ B`
//! and its partial trace on `A`, generated with Schubert calculus, pruned by
//! exact linear programming and checked numerically; plus Horn-problem and
//! majorization tools.

pub mod error;
pub mod horn;
pub mod inequalities;
pub mod lp;
pub mod majorization;
pub mod numeric;
pub mod partition;
pub mod phi;
pub mod schubert;
pub mod symfun;

pub use error::{Error, Result};
