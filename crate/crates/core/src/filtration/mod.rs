//! Filtrations by subcomplexes of bounded dimension, the complexes they
//! induce on relative homology, and a search for very good refinements.

mod complex;
mod search;

pub use complex::{
    compare_filtration_homology, filtration_complex, product_filtration, pushforward_filtration,
    DegreeComparison, FiltrationComparison, FiltrationComplex, ModuleComplex, ProductFiltration,
    Pushforward,
};
pub use search::{
    find_very_good_refinement, is_very_good_filtration, is_very_good_pair, PairVerdict,
    SearchOutcome, VeryGoodReport,
};

use thiserror::Error;

use crate::linalg::LinalgError;
use crate::simplicial::{SimplicialComplex, SimplicialError, SimplicialPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FiltrationError {
    #[error("levels are not nested at level {0}")]
    NotNested(usize),
    #[error("level {level} has dimension {dim}")]
    DimensionTooLarge { level: usize, dim: isize },
    #[error("last level is not the whole complex")]
    TopLevelNotSpace,
    #[error("a filtration needs at least one level")]
    NoLevels,
    #[error("term in degree {0} has torsion")]
    TorsionTerm(usize),
    #[error("search budget of {0} candidates exceeded")]
    BudgetExceeded(usize),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `F₀ ⊆ F₁ ⊆ … ⊆ F_n = X` with `dim F_i ≤ i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    space: SimplicialComplex,
    levels: Vec<SimplicialComplex>,
}

impl Filtration {
    pub fn new(
        space: SimplicialComplex,
        levels: Vec<SimplicialComplex>,
    ) -> Result<Self, FiltrationError> {
        let Some(last) = levels.last() else {
            return Err(FiltrationError::NoLevels);
        };
        if last != &space {
            return Err(FiltrationError::TopLevelNotSpace);
        }
        for (i, f) in levels.iter().enumerate() {
            if f.dim() > i as isize {
                return Err(FiltrationError::DimensionTooLarge {
                    level: i,
                    dim: f.dim(),
                });
            }
            if i > 0 && !levels[i - 1].is_subcomplex_of(f) {
                return Err(FiltrationError::NotNested(i));
            }
        }
        if !levels[0].is_subcomplex_of(&space) {
            return Err(FiltrationError::NotNested(0));
        }
        Ok(Filtration { space, levels })
    }

    /// `∅ = F₀ = … = F_{n-1} ⊆ F_n = X` with `n = max(dim X, 0)`.
    pub fn trivial(space: SimplicialComplex) -> Self {
        let n = space.dim().max(0) as usize;
        let empty = SimplicialComplex::empty(space.labels().clone());
        let mut levels = vec![empty; n];
        levels.push(space.clone());
        Filtration { space, levels }
    }

    /// The skeletal filtration `F_i = X^{(i)}`.
    pub fn skeletal(space: SimplicialComplex) -> Self {
        let n = space.dim().max(0) as usize;
        let levels = (0..=n).map(|i| space.skeleton(i)).collect();
        Filtration { space, levels }
    }

    pub fn space(&self) -> &SimplicialComplex {
        &self.space
    }

    pub fn levels(&self) -> &[SimplicialComplex] {
        &self.levels
    }

    /// Index of the last level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    /// `F_i`, with `F_i = X` past the top and `F_{-1} = ∅`.
    pub fn level(&self, i: isize) -> SimplicialComplex {
        if i < 0 {
            SimplicialComplex::empty(self.space.labels().clone())
        } else {
            self.levels
                .get(i as usize)
                .cloned()
                .unwrap_or_else(|| self.space.clone())
        }
    }

    /// The graded piece `(F_i, F_{i-1})`.
    pub fn graded_pair(&self, i: usize) -> SimplicialPair {
        SimplicialPair::new(self.level(i as isize), self.level(i as isize - 1))
            .expect("levels are nested")
    }

    /// The same filtration extended by copies of `X` up to level `n`.
    pub fn padded(&self, n: usize) -> Self {
        let mut levels = self.levels.clone();
        while levels.len() <= n {
            levels.push(self.space.clone());
        }
        Filtration {
            space: self.space.clone(),
            levels,
        }
    }

    /// True if every level of `self` contains the corresponding level of `other`.
    pub fn refines(&self, other: &Filtration) -> bool {
        let n = self.top().max(other.top());
        (0..=n as isize).all(|i| other.level(i).is_subcomplex_of(&self.level(i)))
    }
}
