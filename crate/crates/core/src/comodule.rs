//! Comodules over finite free coalgebras: axiom checks, extended and tensor
//! comodules, and torsion-free covers of comodules over ℤ.

use num_integer::Integer;
use thiserror::Error;

use crate::linalg::{
    lattice_basis, FgModule, LinalgError, ModuleMap, Rat, RatMatrix, Ring, SubmoduleSolver,
};
use crate::tannaka::{middle_swap, CoalgebraTrunc};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComoduleError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no product covers {0}")]
    MissingProducts(String),
    #[error("{0} must be free")]
    NotFree(String),
    #[error("sub-lattice is not a subcomodule: {0}")]
    NotASubcomodule(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A left comodule: `ρ: V → C⊗V` with rows indexed by `i·dim V + a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    coalgebra: CoalgebraTrunc,
    module: FgModule,
    rho: RatMatrix,
}

impl Comodule {
    /// Checks shapes only; use [`check_comodule_axioms`] for the axioms.
    pub fn new(
        coalgebra: CoalgebraTrunc,
        module: FgModule,
        rho: RatMatrix,
    ) -> Result<Self, ComoduleError> {
        let n = module.generators();
        if rho.shape() != (coalgebra.rank() * n, n) {
            return Err(ComoduleError::DimensionMismatch(format!(
                "coaction is {:?}, expected {}×{n}",
                rho.shape(),
                coalgebra.rank() * n
            )));
        }
        if coalgebra.ring() != module.ring() {
            return Err(LinalgError::RingMismatch(coalgebra.ring(), module.ring()).into());
        }
        Ok(Comodule {
            coalgebra,
            module,
            rho,
        })
    }

    /// `Λ` with `ρ(1) = g⊗1` for a group-like `g`.
    pub fn rank_one(coalgebra: CoalgebraTrunc, g: &[Rat]) -> Result<Self, ComoduleError> {
        let module = FgModule::free(coalgebra.ring(), 1);
        Self::new(coalgebra, module, RatMatrix::column_vector(g))
    }

    pub fn coalgebra(&self) -> &CoalgebraTrunc {
        &self.coalgebra
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn rho(&self) -> &RatMatrix {
        &self.rho
    }

    pub fn dim(&self) -> usize {
        self.module.generators()
    }

    /// Same data with a different coaction matrix; used for negative controls.
    pub fn with_rho(&self, rho: RatMatrix) -> Result<Self, ComoduleError> {
        Self::new(self.coalgebra.clone(), self.module.clone(), rho)
    }

    /// True if `f: self → other` (on underlying modules) commutes with the coactions.
    pub fn is_morphism_to(&self, other: &Comodule, f: &RatMatrix) -> bool {
        let id = RatMatrix::identity(self.coalgebra.rank());
        let diff = other.rho.mul(f).sub(&id.kron(f).mul(&self.rho));
        reduce_rows(&diff, &other.module).is_zero()
    }
}

/// Reduces each row modulo the order of the module generator it lands on;
/// rows are indexed by `(…)·dim V + a`.
fn reduce_rows(m: &RatMatrix, v: &FgModule) -> RatMatrix {
    let n = v.generators();
    if v.is_free() || n == 0 {
        return m.clone();
    }
    RatMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        let x = m.get(r, c);
        match v.order(r % n) {
            Some(t) if x.is_integer() => Rat::from_integer(x.to_integer().mod_floor(t)),
            _ => x.clone(),
        }
    })
}

/// Outcome of the comodule axiom check, with the offending composites.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComoduleCertificate {
    pub coassociative: bool,
    pub counital: bool,
    /// `(Δ⊗id)∘ρ − (id⊗ρ)∘ρ` when nonzero.
    pub coassociativity_defect: Option<RatMatrix>,
    /// `(ε⊗id)∘ρ − id` when nonzero.
    pub counit_defect: Option<RatMatrix>,
}

impl ComoduleCertificate {
    pub fn passed(&self) -> bool {
        self.coassociative && self.counital
    }
}

pub fn check_comodule_axioms(m: &Comodule) -> Result<ComoduleCertificate, ComoduleError> {
    let c = &m.coalgebra;
    let n = m.dim();
    if m.rho.shape() != (c.rank() * n, n) {
        return Err(ComoduleError::DimensionMismatch("coaction shape".into()));
    }
    let id_v = RatMatrix::identity(n);
    let id_c = RatMatrix::identity(c.rank());
    let lhs = c.delta().kron(&id_v).mul(&m.rho);
    let rhs = id_c.kron(&m.rho).mul(&m.rho);
    let coassoc = reduce_rows(&lhs.sub(&rhs), &m.module);
    let counit = reduce_rows(&c.counit().kron(&id_v).mul(&m.rho).sub(&id_v), &m.module);
    Ok(ComoduleCertificate {
        coassociative: coassoc.is_zero(),
        counital: counit.is_zero(),
        coassociativity_defect: (!coassoc.is_zero()).then_some(coassoc),
        counit_defect: (!counit.is_zero()).then_some(counit),
    })
}

/// `C⊗E` with coaction `Δ⊗id_E`, for a free module `E`.
pub fn extended_comodule(c: &CoalgebraTrunc, e: &FgModule) -> Result<Comodule, ComoduleError> {
    if !e.is_free() {
        return Err(ComoduleError::NotFree("the extended module".into()));
    }
    let n = e.generators();
    let rho = c.delta().kron(&RatMatrix::identity(n));
    Comodule::new(c.clone(), FgModule::free(c.ring(), c.rank() * n), rho)
}

/// The canonical map `M → C⊗V(M)`, which is `ρ` itself.
pub fn canonical_embedding(m: &Comodule) -> RatMatrix {
    m.rho.clone()
}

/// `ρ_{M⊗N} = (μ⊗id)∘(swap middle factors)∘(ρ_M⊗ρ_N)`, with `μ: C⊗D → target`.
pub fn tensor_comodules(
    m: &Comodule,
    n: &Comodule,
    mu: &RatMatrix,
    target: &CoalgebraTrunc,
) -> Result<Comodule, ComoduleError> {
    let (c, d) = (m.coalgebra.rank(), n.coalgebra.rank());
    if mu.shape() != (target.rank(), c * d) {
        return Err(ComoduleError::MissingProducts(format!(
            "a product {c}·{d} → {} (got {:?})",
            target.rank(),
            mu.shape()
        )));
    }
    if !m.module.is_free() || !n.module.is_free() {
        return Err(ComoduleError::NotFree("tensor factors".into()));
    }
    let (v, w) = (m.dim(), n.dim());
    let rho = mu
        .kron(&RatMatrix::identity(v * w))
        .mul(&middle_swap(c, v, d, w))
        .mul(&m.rho.kron(&n.rho));
    Comodule::new(target.clone(), FgModule::free(target.ring(), v * w), rho)
}

/// A torsion-free comodule covering `E`, sitting inside `C⊗F(E)`.
#[derive(Clone, Debug)]
pub struct TorsionfreeCover {
    /// `E′`, free.
    pub cover: Comodule,
    /// `F(E)`: free on the generators of `E`.
    pub free_module: FgModule,
    /// `E′ → C⊗F(E)`: columns are the basis of `E′`.
    pub embedding: RatMatrix,
    /// `E′ → E`.
    pub surjection: ModuleMap,
    pub torsion_free: bool,
    pub axioms: bool,
    pub surjective: bool,
    pub injective_embedding: bool,
    pub embedding_is_morphism: bool,
    pub surjection_is_morphism: bool,
}

impl TorsionfreeCover {
    pub fn passed(&self) -> bool {
        self.torsion_free
            && self.axioms
            && self.surjective
            && self.injective_embedding
            && self.embedding_is_morphism
            && self.surjection_is_morphism
    }
}

/// Pullback of `ρ: E → C⊗E` along `id⊗η: C⊗F(E) → C⊗E`, realized as the
/// preimage of `ρ(E)` in `C⊗F(E)`: the lattice spanned by lifts of `ρ(gens)`
/// and by `C⊗ker η`.
pub fn torsionfree_cover(m: &Comodule) -> Result<TorsionfreeCover, ComoduleError> {
    let c = &m.coalgebra;
    let ring = c.ring();
    let (r, g) = (c.rank(), m.dim());
    let e = &m.module;
    let relations = e.relations().to_rat();
    let kernel_gens = RatMatrix::identity(r).kron(&relations);
    let gens = m.rho.hstack(&kernel_gens);
    let basis = match ring {
        Ring::Z => lattice_basis(&gens.to_int().ok_or(LinalgError::NonIntegral)?).to_rat(),
        Ring::Q => gens.select_columns(&crate::linalg::rational::rref(&gens).1),
    };
    let p = basis.cols();
    // Coaction on E′ as a subcomodule of the extended comodule.
    let ext = extended_comodule(c, &FgModule::free(ring, g))?;
    let in_c_p = RatMatrix::identity(r).kron(&basis);
    let solver = SubmoduleSolver::new(ring, &in_c_p);
    let image = ext.rho.mul(&basis);
    let mut rho = RatMatrix::zeros(r * p, p);
    for k in 0..p {
        let coords = solver.solve(&image.column(k)).ok_or_else(|| {
            ComoduleError::NotASubcomodule(format!("basis vector {k} of the pullback"))
        })?;
        for (i, x) in coords.into_iter().enumerate() {
            rho.set(i, k, x);
        }
    }
    let cover = Comodule::new(c.clone(), FgModule::free(ring, p), rho)?;
    // (ε⊗id_F) followed by η = id on generators.
    let surj = c.counit().kron(&RatMatrix::identity(g)).mul(&basis);
    let surjection = ModuleMap::new(cover.module.clone(), e.clone(), surj.clone())?;
    let injective_embedding = crate::linalg::rational::rank(&basis) == p;
    let embedding_is_morphism =
        ext.rho.mul(&basis) == RatMatrix::identity(r).kron(&basis).mul(&cover.rho);
    let surjection_is_morphism = cover.is_morphism_to(m, &surj);
    let surjective = surjection.cokernel()?.is_zero();
    let torsion_free = cover.module.is_free();
    let axioms = check_comodule_axioms(&cover)?.passed();
    Ok(TorsionfreeCover {
        cover,
        free_module: FgModule::free(ring, g),
        embedding: basis,
        surjection,
        torsion_free,
        axioms,
        surjective,
        injective_embedding,
        embedding_is_morphism,
        surjection_is_morphism,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use crate::tannaka::{dual_coalgebra, end_algebra, DiagramRep, Subdiagram, Truncation};

    fn matrix_coalgebra(n: usize) -> (DiagramRep, Truncation) {
        let rep = DiagramRep::from_matrices(Ring::Z, &[n], &[]).unwrap();
        let t = Truncation::new(&rep, &Subdiagram::all(&rep)).unwrap();
        (rep, t)
    }

    #[test]
    fn trivial_coaction_passes() {
        let c = CoalgebraTrunc::trivial(Ring::Z);
        let m = Comodule::rank_one(c, &[rat(1)]).unwrap();
        assert!(check_comodule_axioms(&m).unwrap().passed());
    }

    #[test]
    fn matrix_coaction_passes_and_scaling_breaks_the_counit() {
        let (rep, t) = matrix_coalgebra(2);
        let m = t
            .coaction(&rep, 0)
            .unwrap()
            .as_comodule(&t.coalgebra)
            .unwrap();
        assert!(check_comodule_axioms(&m).unwrap().passed());
        let bad = m.with_rho(m.rho().scale(&rat(2))).unwrap();
        let cert = check_comodule_axioms(&bad).unwrap();
        assert!(!cert.counital);
        assert!(cert.counit_defect.is_some());
    }

    #[test]
    fn shape_errors() {
        let c = CoalgebraTrunc::trivial(Ring::Z);
        let r = Comodule::new(c, FgModule::free(Ring::Z, 2), RatMatrix::identity(1));
        assert!(matches!(r, Err(ComoduleError::DimensionMismatch(_))));
    }

    #[test]
    fn extended_comodules() {
        let (_, t) = matrix_coalgebra(2);
        let c = &t.coalgebra;
        let e1 = extended_comodule(c, &FgModule::free(Ring::Z, 1)).unwrap();
        assert_eq!(e1.rho(), c.delta());
        let e2 = extended_comodule(c, &FgModule::free(Ring::Z, 2)).unwrap();
        assert_eq!(e2.dim(), 8);
        assert!(check_comodule_axioms(&e2).unwrap().passed());
    }

    #[test]
    fn canonical_map_into_the_extended_comodule() {
        let (rep, t) = matrix_coalgebra(2);
        let m = t
            .coaction(&rep, 0)
            .unwrap()
            .as_comodule(&t.coalgebra)
            .unwrap();
        let ext = extended_comodule(&t.coalgebra, m.module()).unwrap();
        let eta = canonical_embedding(&m);
        assert!(m.is_morphism_to(&ext, &eta));
        assert_eq!(crate::linalg::rational::rank(&eta), m.dim());
    }

    #[test]
    fn tensor_with_the_unit() {
        let c = CoalgebraTrunc::trivial(Ring::Q);
        let one = Comodule::rank_one(c.clone(), &[rat(1)]).unwrap();
        let t = tensor_comodules(&one, &one, &RatMatrix::identity(1), &c).unwrap();
        assert_eq!(t, one);
        let rep = DiagramRep::from_matrices(Ring::Q, &[2], &[]).unwrap();
        let e = end_algebra(&rep, &Subdiagram::all(&rep)).unwrap();
        let a = dual_coalgebra(&e).unwrap();
        let mu = RatMatrix::identity(4);
        let tr = Truncation::new(&rep, &Subdiagram::all(&rep)).unwrap();
        let m = Comodule::new(
            a.clone(),
            FgModule::free(Ring::Q, 2),
            tr.coaction(&rep, 0).unwrap().rho,
        )
        .unwrap();
        let um = tensor_comodules(&one, &m, &mu, &a).unwrap();
        assert_eq!(um, m);
        assert!(matches!(
            tensor_comodules(&m, &m, &mu, &a),
            Err(ComoduleError::MissingProducts(_))
        ));
    }

    #[test]
    fn cover_of_a_free_comodule_has_the_same_rank() {
        let (rep, t) = matrix_coalgebra(2);
        let m = t
            .coaction(&rep, 0)
            .unwrap()
            .as_comodule(&t.coalgebra)
            .unwrap();
        let cov = torsionfree_cover(&m).unwrap();
        assert!(cov.passed());
        assert_eq!(cov.cover.dim(), 2);
    }

    #[test]
    fn cover_of_z_mod_2() {
        let c = CoalgebraTrunc::trivial(Ring::Z);
        let e = FgModule::new(Ring::Z, 0, vec![2.into()]).unwrap();
        let m = Comodule::new(c, e, RatMatrix::identity(1)).unwrap();
        let cov = torsionfree_cover(&m).unwrap();
        assert!(cov.passed());
        assert_eq!(cov.cover.module(), &FgModule::free(Ring::Z, 1));
        assert_eq!(cov.surjection.matrix().get(0, 0), &rat(1));
    }

    #[test]
    fn cover_of_zero() {
        let c = CoalgebraTrunc::trivial(Ring::Z);
        let m = Comodule::new(c, FgModule::zero(Ring::Z), RatMatrix::zeros(0, 0)).unwrap();
        let cov = torsionfree_cover(&m).unwrap();
        assert!(cov.passed());
        assert_eq!(cov.cover.dim(), 0);
    }
}
