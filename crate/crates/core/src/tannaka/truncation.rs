//! Coactions of `A(T|_F)` on the vertex modules, transition maps between
//! truncations, and the factorization certificate.

use super::coalgebra::{dual_coalgebra, CoalgebraTrunc};
use super::diagram::{DiagramRep, Subdiagram};
use super::endo::{end_algebra, EndAlgebra};
use super::TannakaError;
use crate::comodule::{check_comodule_axioms, Comodule, ComoduleCertificate};
use crate::linalg::{FgModule, RatMatrix};

/// `ρ: V → A⊗V`, rows indexed by `i·dim V + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coaction {
    pub vertex: usize,
    pub module: FgModule,
    pub rho: RatMatrix,
}

impl Coaction {
    pub fn as_comodule(&self, coalgebra: &CoalgebraTrunc) -> Result<Comodule, TannakaError> {
        Ok(Comodule::new(
            coalgebra.clone(),
            self.module.clone(),
            self.rho.clone(),
        )?)
    }
}

/// Everything computed for one finite subdiagram.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub subdiagram: Subdiagram,
    pub algebra: EndAlgebra,
    pub coalgebra: CoalgebraTrunc,
}

impl Truncation {
    pub fn new(rep: &DiagramRep, f: &Subdiagram) -> Result<Self, TannakaError> {
        let algebra = end_algebra(rep, f)?;
        let coalgebra = dual_coalgebra(&algebra)?;
        Ok(Truncation {
            subdiagram: f.clone(),
            algebra,
            coalgebra,
        })
    }

    pub fn rank(&self) -> usize {
        self.coalgebra.rank()
    }

    /// `ρ(x) = Σ_i e_i^*⊗π_v(e_i)(x)`.
    pub fn coaction(&self, rep: &DiagramRep, v: usize) -> Result<Coaction, TannakaError> {
        if !self.subdiagram.contains_vertex(v) {
            return Err(TannakaError::NotASubdiagram(format!(
                "vertex {} is not in F",
                rep.vertex(v).name
            )));
        }
        let r = rep.rank(v);
        let d = self.algebra.dim();
        let mut rho = RatMatrix::zeros(d * r, r);
        for i in 0..d {
            let m = self.algebra.basis_component(i, v).expect("vertex in F");
            for a in 0..r {
                for b in 0..r {
                    rho.set(i * r + a, b, m.get(a, b).clone());
                }
            }
        }
        Ok(Coaction {
            vertex: v,
            module: rep.module(v).clone(),
            rho,
        })
    }

    /// Checks the three factorization clauses against the edge maps of `rep`,
    /// which may differ from the representation this truncation came from.
    pub fn factorization_check(
        &self,
        rep: &DiagramRep,
    ) -> Result<FactorizationCertificate, TannakaError> {
        let mut comodules = Vec::new();
        let mut coactions = Vec::new();
        for &v in self.subdiagram.vertices() {
            let c = self.coaction(rep, v)?;
            comodules.push((
                rep.vertex(v).name.clone(),
                check_comodule_axioms(&c.as_comodule(&self.coalgebra)?)?,
            ));
            coactions.push(c);
        }
        let id_a = RatMatrix::identity(self.rank());
        let mut naturality = Vec::new();
        let mut forgetful = true;
        for &e in self.subdiagram.edges() {
            let edge = rep.edge(e);
            let rv = &coactions[self.subdiagram.position(edge.source).expect("in F")];
            let rw = &coactions[self.subdiagram.position(edge.target).expect("in F")];
            let t = edge.map.matrix();
            forgetful &= edge.map.source() == &rv.module && edge.map.target() == &rw.module;
            let ok = rw.rho.mul(t) == id_a.kron(t).mul(&rv.rho);
            naturality.push((edge.name.clone(), ok));
        }
        Ok(FactorizationCertificate {
            comodules,
            naturality,
            forgetful,
        })
    }
}

#[derive(Clone, Debug)]
pub struct FactorizationCertificate {
    /// Comodule axioms per vertex.
    pub comodules: Vec<(String, ComoduleCertificate)>,
    /// `ρ_w∘T(e) = (id⊗T(e))∘ρ_v` per edge.
    pub naturality: Vec<(String, bool)>,
    /// Underlying modules and maps are those of `T`.
    pub forgetful: bool,
}

impl FactorizationCertificate {
    pub fn passed(&self) -> bool {
        self.forgetful
            && self.comodules.iter().all(|(_, c)| c.passed())
            && self.naturality.iter().all(|(_, ok)| *ok)
    }

    /// Names of edges that are not comodule morphisms.
    pub fn failing_edges(&self) -> Vec<&str> {
        self.naturality
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

pub fn coaction(rep: &DiagramRep, f: &Subdiagram, v: usize) -> Result<Coaction, TannakaError> {
    Truncation::new(rep, f)?.coaction(rep, v)
}

pub fn factorization_check(
    rep: &DiagramRep,
    f: &Subdiagram,
) -> Result<FactorizationCertificate, TannakaError> {
    Truncation::new(rep, f)?.factorization_check(rep)
}

/// The coalgebra map `A_F → A_{F'}` dual to restricting families from `F'` to `F`.
#[derive(Clone, Debug)]
pub struct TransitionMap {
    pub matrix: RatMatrix,
    pub is_coalgebra_morphism: bool,
    /// `(transition⊗id)∘ρ_v^F = ρ_v^{F'}` for every vertex of `F`.
    pub intertwines_coactions: bool,
}

/// Restriction `End_{F'} → End_F` in the chosen bases.
pub fn restriction_matrix(small: &Truncation, big: &Truncation) -> Result<RatMatrix, TannakaError> {
    let (f, g) = (&small.subdiagram, &big.subdiagram);
    let mut m = RatMatrix::zeros(small.algebra.dim(), big.algebra.dim());
    for k in 0..big.algebra.dim() {
        let family = big.algebra.basis().column(k);
        let mut restricted = Vec::with_capacity(small.algebra.ambient_dim());
        for &v in f.vertices() {
            restricted.extend(
                big.algebra
                    .component(&family, v)
                    .expect("F ⊆ F'")
                    .entries()
                    .iter()
                    .cloned(),
            );
        }
        let c = small.algebra.coordinates(&restricted).ok_or_else(|| {
            TannakaError::AxiomViolation(format!(
                "restriction of basis family {k} of {g:?} leaves End(T|_F)"
            ))
        })?;
        for (i, x) in c.into_iter().enumerate() {
            m.set(i, k, x);
        }
    }
    Ok(m)
}

pub fn transition_between(
    rep: &DiagramRep,
    small: &Truncation,
    big: &Truncation,
) -> Result<TransitionMap, TannakaError> {
    if !small.subdiagram.is_subdiagram_of(&big.subdiagram) {
        return Err(TannakaError::NotASubdiagram(
            "F is not contained in F'".into(),
        ));
    }
    let matrix = restriction_matrix(small, big)?.transpose();
    let is_coalgebra_morphism = small.coalgebra.is_morphism_to(&big.coalgebra, &matrix);
    let mut intertwines_coactions = true;
    for &v in small.subdiagram.vertices() {
        let (a, b) = (small.coaction(rep, v)?, big.coaction(rep, v)?);
        let id = RatMatrix::identity(rep.rank(v));
        intertwines_coactions &= matrix.kron(&id).mul(&a.rho) == b.rho;
    }
    Ok(TransitionMap {
        matrix,
        is_coalgebra_morphism,
        intertwines_coactions,
    })
}

pub fn transition_map(
    rep: &DiagramRep,
    f: &Subdiagram,
    f2: &Subdiagram,
) -> Result<TransitionMap, TannakaError> {
    transition_between(rep, &Truncation::new(rep, f)?, &Truncation::new(rep, f2)?)
}
