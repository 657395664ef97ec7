//! Diagram representations, their algebras of compatible endomorphisms,
//! the dual coalgebras and the coactions on vertex modules.

mod coalgebra;
mod diagram;
mod endo;
mod truncation;

pub use coalgebra::{dual_coalgebra, middle_swap, swap_matrix, CoalgebraTrunc};
pub use diagram::{
    build_pairs_diagram, Diagram, DiagramEdge, DiagramRep, EdgeKind, PairVertex, PairsDiagram,
    PairsDiagramInput, RepEdge, RepVertex, Subdiagram,
};
pub use endo::{commutation_constraints, end_algebra, EndAlgebra};
pub use truncation::{
    coaction, factorization_check, restriction_matrix, transition_between, transition_map,
    Coaction, FactorizationCertificate, TransitionMap, Truncation,
};

use thiserror::Error;

use crate::comodule::ComoduleError;
use crate::linalg::LinalgError;
use crate::simplicial::SimplicialError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TannakaError {
    #[error("vertex {0} has torsion in its module")]
    NonFreeVertex(String),
    #[error("coalgebra axiom violated: {0}")]
    AxiomViolation(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("name {0} is used twice")]
    DuplicateName(String),
    #[error("not a subdiagram: {0}")]
    NotASubdiagram(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("edge {0} does not come from a triple")]
    NotATriple(String),
    #[error("vertex {0} carries no pair")]
    NotAPairVertex(String),
    #[error("edge {0} carries no simplicial map")]
    NotAMapEdge(String),
    #[error("vertex {0} is not the one-point space in degree 0")]
    NotAPoint(String),
    #[error("no product vertex registered for {0}")]
    MissingProduct(String),
    #[error(transparent)]
    Comodule(#[from] ComoduleError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
