//! Finite simplicial complexes on a shared labelled vertex set, relative
//! chains and homology, products, cup products and Čech models.

mod cech;
mod chain;
mod complex;
mod cup;
pub mod models;
mod product;

pub use cech::{cech_comparison, cech_total_complex, CechData};
pub use chain::{
    chain_vector, connecting_matrix, induced_map_between, induced_map_on_homology, les_exactness,
    relative_homology, triple_boundary, triple_boundary_between, ChainComplex, ExactnessNode,
    LesReport, PairHomology, PairMap, RelativeChains, Triple,
};
pub use complex::{Simplex, SimplicialComplex, SimplicialMap, SimplicialPair, Vertex};
pub use cup::{
    cup_cochains, cup_comparison, relative_cup_product, CupSetting, CupTable, PairCohomology,
};
pub use product::{
    ez_aw_maps, kunneth_ranks, product_complex, product_pair, product_vertex, shuffle_product,
    split_vertex, ProductChains, TensorChains,
};

use thiserror::Error;

use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimplicialError {
    #[error("simplex has a repeated vertex: {0:?}")]
    RepeatedVertex(Vec<Vertex>),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("simplices are not contained in the ambient complex")]
    NotASubcomplex,
    #[error("second complex is not a subcomplex of the first")]
    InvalidPair,
    #[error("bad vertex map: {0}")]
    BadVertexMap(String),
    #[error("vertex map sends simplex {0:?} outside the target")]
    NotSimplicial(Vec<String>),
    #[error("map does not send the subcomplex into the target subcomplex")]
    NotPairMap,
    #[error("complexes are not nested")]
    NotNested,
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
