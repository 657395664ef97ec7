//! The algebra of compatible endomorphism families on a finite subdiagram.

use num_traits::{One, Zero};

use super::diagram::{DiagramRep, Subdiagram};
use super::TannakaError;
use crate::linalg::rational::nullspace;
use crate::linalg::{integer_kernel, is_saturated, Rat, RatMatrix, Ring, SubmoduleSolver};

/// `End(T|_F)` as a submodule of `⊕_v End(T(v))`, with `φ_v` stored row-major
/// at `offset(v)`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    ring: Ring,
    subdiagram: Subdiagram,
    ranks: Vec<usize>,
    offsets: Vec<usize>,
    ambient_dim: usize,
    /// Columns are the basis families.
    basis: RatMatrix,
    /// `mult[k][i·d + j] = c_{ij}^k` for `e_i·e_j = Σ c_{ij}^k e_k`.
    mult: RatMatrix,
    unit: Vec<Rat>,
    solver: SubmoduleSolver,
}

impl EndAlgebra {
    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn subdiagram(&self) -> &Subdiagram {
        &self.subdiagram
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Rank of `T(v)` for the `k`-th vertex of the subdiagram.
    pub fn vertex_rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// `c_{ij}^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rat {
        self.mult.get(k, i * self.dim() + j)
    }

    /// `d × d²` matrix of the multiplication `E ⊗ E → E`.
    pub fn multiplication(&self) -> &RatMatrix {
        &self.mult
    }

    /// Coordinates of the identity family.
    pub fn unit(&self) -> &[Rat] {
        &self.unit
    }

    /// Component of a family at the vertex `v` of the ambient diagram.
    pub fn component(&self, family: &[Rat], v: usize) -> Option<RatMatrix> {
        let k = self.subdiagram.position(v)?;
        let (r, off) = (self.ranks[k], self.offsets[k]);
        Some(RatMatrix::from_fn(r, r, |a, b| {
            family[off + a * r + b].clone()
        }))
    }

    /// `v`-component of the `i`-th basis family.
    pub fn basis_component(&self, i: usize, v: usize) -> Option<RatMatrix> {
        self.component(&self.basis.column(i), v)
    }

    /// Coordinates of an ambient family in the basis, if it lies in the algebra.
    pub fn coordinates(&self, family: &[Rat]) -> Option<Vec<Rat>> {
        self.solver.solve(family)
    }

    /// Blockwise composition `φ ∘ ψ` of ambient families.
    pub fn compose(&self, phi: &[Rat], psi: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.ambient_dim];
        for (k, &r) in self.ranks.iter().enumerate() {
            let off = self.offsets[k];
            for a in 0..r {
                for b in 0..r {
                    let mut s = Rat::zero();
                    for c in 0..r {
                        s += &phi[off + a * r + c] * &psi[off + c * r + b];
                    }
                    out[off + a * r + b] = s;
                }
            }
        }
        out
    }

    /// True if the basis spans a saturated sublattice (always over ℚ).
    pub fn is_saturated(&self) -> bool {
        match (self.ring, self.basis.to_int()) {
            (Ring::Q, _) => true,
            (Ring::Z, Some(b)) => b.cols() == 0 || is_saturated(&b),
            (Ring::Z, None) => false,
        }
    }
}

/// Layout of `⊕_v End(T(v))` for a subdiagram: ranks and offsets.
pub(crate) fn ambient_layout(rep: &DiagramRep, f: &Subdiagram) -> (Vec<usize>, Vec<usize>, usize) {
    let ranks: Vec<usize> = f.vertices().iter().map(|&v| rep.rank(v)).collect();
    let mut offsets = Vec::with_capacity(ranks.len());
    let mut acc = 0;
    for &r in &ranks {
        offsets.push(acc);
        acc += r * r;
    }
    (ranks, offsets, acc)
}

/// The linear system `T(e)∘φ_v − φ_w∘T(e) = 0`, one block of rows per edge.
pub fn commutation_constraints(rep: &DiagramRep, f: &Subdiagram) -> RatMatrix {
    let (ranks, offsets, dim) = ambient_layout(rep, f);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for &e in f.edges() {
        let edge = rep.edge(e);
        let (kv, kw) = (
            f.position(edge.source).expect("edge in F"),
            f.position(edge.target).expect("edge in F"),
        );
        let (rv, rw) = (ranks[kv], ranks[kw]);
        let (ov, ow) = (offsets[kv], offsets[kw]);
        let t = edge.map.matrix();
        for a in 0..rw {
            for b in 0..rv {
                let mut row = vec![Rat::zero(); dim];
                for k in 0..rv {
                    row[ov + k * rv + b] += t.get(a, k);
                }
                for k in 0..rw {
                    row[ow + a * rw + k] -= t.get(k, b);
                }
                rows.push(row);
            }
        }
    }
    RatMatrix::from_rows(rows, dim)
}

/// `End(T|_F)`: families `(φ_v)` commuting with every edge of `F`.
pub fn end_algebra(rep: &DiagramRep, f: &Subdiagram) -> Result<EndAlgebra, TannakaError> {
    if let Some(&v) = f.vertices().iter().find(|&&v| !rep.is_free(v)) {
        return Err(TannakaError::NonFreeVertex(rep.vertex(v).name.clone()));
    }
    let ring = rep.ring();
    let (ranks, offsets, ambient_dim) = ambient_layout(rep, f);
    let constraints = commutation_constraints(rep, f);
    let basis = match ring {
        Ring::Q => nullspace(&constraints),
        Ring::Z => {
            let c = constraints
                .to_int()
                .ok_or(crate::linalg::LinalgError::NonIntegral)?;
            integer_kernel(&c).to_rat()
        }
    };
    let d = basis.cols();
    let solver = SubmoduleSolver::new(ring, &basis);
    let mut alg = EndAlgebra {
        ring,
        subdiagram: f.clone(),
        ranks,
        offsets,
        ambient_dim,
        basis,
        mult: RatMatrix::zeros(d, d * d),
        unit: Vec::new(),
        solver,
    };
    let cols = alg.basis.columns();
    for i in 0..d {
        for j in 0..d {
            let prod = alg.compose(&cols[i], &cols[j]);
            let c = alg.coordinates(&prod).ok_or_else(|| {
                TannakaError::AxiomViolation(format!(
                    "product of basis families {i} and {j} leaves the algebra"
                ))
            })?;
            for (k, x) in c.into_iter().enumerate() {
                alg.mult.set(k, i * d + j, x);
            }
        }
    }
    let mut id = vec![Rat::zero(); ambient_dim];
    for (k, &r) in alg.ranks.iter().enumerate() {
        for a in 0..r {
            id[alg.offsets[k] + a * r + a] = Rat::one();
        }
    }
    alg.unit = alg
        .coordinates(&id)
        .ok_or_else(|| TannakaError::AxiomViolation("identity family is not compatible".into()))?;
    Ok(alg)
}
