//! Finite free coalgebras and the dual of an endomorphism algebra.

use super::endo::EndAlgebra;
use super::TannakaError;
use crate::linalg::{Rat, RatMatrix, Ring};

/// A coalgebra structure on `Rʳ`; `C⊗C` is indexed by `i·r + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraTrunc {
    ring: Ring,
    rank: usize,
    /// `r² × r`.
    delta: RatMatrix,
    /// `1 × r`.
    counit: RatMatrix,
}

/// Permutation matrix of `A⊗B → B⊗A` for ranks `a` and `b`.
pub fn swap_matrix(a: usize, b: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            m.set(j * a + i, i * b + j, Rat::from_integer(1.into()));
        }
    }
    m
}

/// Permutation `(C⊗V)⊗(D⊗W) → (C⊗D)⊗(V⊗W)`.
pub fn middle_swap(c: usize, v: usize, d: usize, w: usize) -> RatMatrix {
    let n = c * v * d * w;
    let mut p = RatMatrix::zeros(n, n);
    for i in 0..c {
        for a in 0..v {
            for j in 0..d {
                for b in 0..w {
                    let src = (i * v + a) * (d * w) + (j * w + b);
                    let dst = (i * d + j) * (v * w) + (a * w + b);
                    p.set(dst, src, Rat::from_integer(1.into()));
                }
            }
        }
    }
    p
}

impl CoalgebraTrunc {
    /// Checks coassociativity and both counit laws.
    pub fn new(ring: Ring, delta: RatMatrix, counit: RatMatrix) -> Result<Self, TannakaError> {
        let r = delta.cols();
        if delta.rows() != r * r || counit.shape() != (1, r) {
            return Err(TannakaError::AxiomViolation(format!(
                "shapes {:?} and {:?} do not fit rank {r}",
                delta.shape(),
                counit.shape()
            )));
        }
        let c = CoalgebraTrunc {
            ring,
            rank: r,
            delta,
            counit,
        };
        if !c.is_coassociative() {
            return Err(TannakaError::AxiomViolation(
                "comultiplication is not coassociative".into(),
            ));
        }
        if !c.is_counital() {
            return Err(TannakaError::AxiomViolation("counit law fails".into()));
        }
        Ok(c)
    }

    /// The rank-one coalgebra `Δ(1) = 1⊗1`, `ε(1) = 1`.
    pub fn trivial(ring: Ring) -> Self {
        let one = RatMatrix::identity(1);
        CoalgebraTrunc {
            ring,
            rank: 1,
            delta: one.clone(),
            counit: one,
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn delta(&self) -> &RatMatrix {
        &self.delta
    }

    pub fn counit(&self) -> &RatMatrix {
        &self.counit
    }

    pub fn is_coassociative(&self) -> bool {
        let id = RatMatrix::identity(self.rank);
        self.delta.kron(&id).mul(&self.delta) == id.kron(&self.delta).mul(&self.delta)
    }

    pub fn is_counital(&self) -> bool {
        let id = RatMatrix::identity(self.rank);
        self.counit.kron(&id).mul(&self.delta) == id && id.kron(&self.counit).mul(&self.delta) == id
    }

    /// True if `f: self → other` commutes with comultiplication and counit.
    pub fn is_morphism_to(&self, other: &CoalgebraTrunc, f: &RatMatrix) -> bool {
        f.shape() == (other.rank, self.rank)
            && other.delta.mul(f) == f.kron(f).mul(&self.delta)
            && other.counit.mul(f) == self.counit
    }

    /// `Δx`, as a vector in `C⊗C`.
    pub fn comultiply(&self, x: &[Rat]) -> Vec<Rat> {
        self.delta.mul_vec(x)
    }

    pub fn counit_of(&self, x: &[Rat]) -> Rat {
        self.counit.mul_vec(x).remove(0)
    }

    /// True if `Δx = x⊗x` and `ε(x) = 1`.
    pub fn is_group_like(&self, x: &[Rat]) -> bool {
        let xx = RatMatrix::column_vector(x);
        self.comultiply(x) == xx.kron(&xx).column(0)
            && self.counit_of(x) == Rat::from_integer(1.into())
    }
}

/// `A = E^∨` with `Δ(e_k^*) = Σ_{i,j} c_{ij}^k e_j^*⊗e_i^*` and `ε(e_k^*)` the
/// `k`-th coordinate of the unit. The factor order makes `ρ(x) = Σ e_i^*⊗e_i x`
/// a left coaction.
pub fn dual_coalgebra(e: &EndAlgebra) -> Result<CoalgebraTrunc, TannakaError> {
    let d = e.dim();
    let mut delta = RatMatrix::zeros(d * d, d);
    for k in 0..d {
        for i in 0..d {
            for j in 0..d {
                delta.set(j * d + i, k, e.structure_constant(i, j, k).clone());
            }
        }
    }
    let counit = RatMatrix::from_rows(vec![e.unit().to_vec()], d);
    CoalgebraTrunc::new(e.ring(), delta, counit)
}
