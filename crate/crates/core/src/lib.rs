//! Exact homology of simplicial pairs, filtration complexes, Čech models and
//! Tannaka duality for finite diagrams, with checkable certificates.

pub mod bialgebra;
pub mod comodule;
pub mod filtration;
pub mod linalg;
pub mod simplicial;
pub mod tannaka;

pub use bialgebra::BialgebraError;
pub use comodule::{Comodule, ComoduleError};
pub use filtration::{Filtration, FiltrationError};
pub use linalg::{
    FgModule, Int, IntMatrix, LinalgError, ModuleMap, Rat, RatMatrix, Ring, SmithForm,
};
pub use simplicial::{SimplicialComplex, SimplicialError, SimplicialMap, SimplicialPair};
pub use tannaka::{CoalgebraTrunc, DiagramRep, EndAlgebra, Subdiagram, TannakaError, Truncation};
