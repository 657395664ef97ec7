use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::lattice::{integer_kernel, lattice_basis, IntSolver};
use super::matrix::{Int, IntMatrix, Rat, RatMatrix};
use super::rational::RatSolver;
use super::smith::{smith_normal_form, unimodular_inverse};

/// Coefficient ring: the integers or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Z,
    Q,
}

impl Ring {
    pub fn symbol(self) -> &'static str {
        match self {
            Ring::Z => "Z",
            Ring::Q => "Q",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("composite d_out ∘ d_in is nonzero")]
    CompositionNonzero,
    #[error("module has torsion; dual is only defined between free modules")]
    TorsionPresent,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("map does not send the relation of torsion generator {0} into relations")]
    NotWellDefined(usize),
    #[error("non-integral entry in a map over Z")]
    NonIntegral,
    #[error("torsion list {0:?} is not a divisibility chain of integers > 1")]
    BadTorsion(Vec<String>),
    #[error("vector is not a cycle of the subquotient")]
    NotACycle,
    #[error("ring mismatch between {0} and {1}")]
    RingMismatch(Ring, Ring),
}

/// A finitely generated module `Rᶠ ⊕ ⊕ R/tᵢ`, presented on `f + #t` generators,
/// free generators first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgModule {
    ring: Ring,
    free_rank: usize,
    torsion: Vec<Int>,
}

impl FgModule {
    pub fn new(ring: Ring, free_rank: usize, torsion: Vec<Int>) -> Result<Self, LinalgError> {
        let chain_ok = torsion.iter().all(|t| *t > Int::one())
            && torsion.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
        if !chain_ok || (ring == Ring::Q && !torsion.is_empty()) {
            return Err(LinalgError::BadTorsion(
                torsion.iter().map(|t| t.to_string()).collect(),
            ));
        }
        Ok(FgModule {
            ring,
            free_rank,
            torsion,
        })
    }

    pub fn free(ring: Ring, rank: usize) -> Self {
        FgModule {
            ring,
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn zero(ring: Ring) -> Self {
        Self::free(ring, 0)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    /// Number of generators in the normalized presentation.
    pub fn generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.generators() == 0
    }

    /// Order of generator `i`, `None` for a free generator.
    pub fn order(&self, i: usize) -> Option<&Int> {
        i.checked_sub(self.free_rank).map(|k| &self.torsion[k])
    }

    /// Relation matrix: one column `tᵢ·e` per torsion generator.
    pub fn relations(&self) -> IntMatrix {
        let g = self.generators();
        IntMatrix::from_fn(g, self.torsion.len(), |r, c| {
            if r == self.free_rank + c {
                self.torsion[c].clone()
            } else {
                Int::zero()
            }
        })
    }

    /// Reduces coordinates on torsion generators into `[0, t)`.
    pub fn normalize(&self, v: &mut [Rat]) {
        for (k, t) in self.torsion.iter().enumerate() {
            let x = &mut v[self.free_rank + k];
            if x.is_integer() {
                *x = BigRational::from_integer(x.to_integer().mod_floor(t));
            }
        }
    }
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.ring.symbol();
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push(r.to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("{r}^{}", self.free_rank));
        }
        for t in &self.torsion {
            parts.push(format!("{r}/{t}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Homomorphism of finitely generated modules, stored against the normalized
/// presentations of source and target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: FgModule,
    target: FgModule,
    matrix: RatMatrix,
}

impl ModuleMap {
    pub fn new(source: FgModule, target: FgModule, matrix: RatMatrix) -> Result<Self, LinalgError> {
        if source.ring != target.ring {
            return Err(LinalgError::RingMismatch(source.ring, target.ring));
        }
        if matrix.shape() != (target.generators(), source.generators()) {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix is {}x{}, modules have {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.generators(),
                target.generators()
            )));
        }
        if source.ring == Ring::Z && !matrix.is_integral() {
            return Err(LinalgError::NonIntegral);
        }
        let mut matrix = matrix;
        for c in 0..matrix.cols() {
            let mut col = matrix.column(c);
            if let Some(t) = source.order(c) {
                let t = BigRational::from_integer(t.clone());
                let scaled: Vec<Rat> = col.iter().map(|x| x * &t).collect();
                if !in_relations(&target, &scaled) {
                    return Err(LinalgError::NotWellDefined(c));
                }
            }
            target.normalize(&mut col);
            for (r, x) in col.into_iter().enumerate() {
                matrix.set(r, c, x);
            }
        }
        Ok(ModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(m: &FgModule) -> Self {
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            matrix: RatMatrix::identity(m.generators()),
        }
    }

    pub fn zero(source: &FgModule, target: &FgModule) -> Self {
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            matrix: RatMatrix::zeros(target.generators(), source.generators()),
        }
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ModuleMap) -> Result<ModuleMap, LinalgError> {
        if self.target != next.source {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, next.source, next.target
            )));
        }
        ModuleMap::new(
            self.source.clone(),
            next.target.clone(),
            next.matrix.mul(&self.matrix),
        )
    }

    pub fn kernel(&self) -> Result<FgModule, LinalgError> {
        let zero = FgModule::zero(self.ring());
        subquotient(&ModuleMap::zero(&zero, &self.source), self)
    }

    pub fn cokernel(&self) -> Result<FgModule, LinalgError> {
        let zero = FgModule::zero(self.ring());
        subquotient(self, &ModuleMap::zero(&self.target, &zero))
    }

    pub fn is_isomorphism(&self) -> Result<bool, LinalgError> {
        Ok(self.kernel()?.is_zero() && self.cokernel()?.is_zero())
    }
}

/// True if `v` lies in the relation submodule of `m`.
fn in_relations(m: &FgModule, v: &[Rat]) -> bool {
    v.iter().enumerate().all(|(i, x)| match m.order(i) {
        None => x.is_zero(),
        Some(t) => x.is_integer() && x.to_integer().is_multiple_of(t),
    })
}

/// Dual of a map between free modules: the transpose in dual bases.
pub fn dual_map(f: &ModuleMap) -> Result<ModuleMap, LinalgError> {
    if !f.source.is_free() || !f.target.is_free() {
        return Err(LinalgError::TorsionPresent);
    }
    Ok(ModuleMap {
        source: f.target.clone(),
        target: f.source.clone(),
        matrix: f.matrix.transpose(),
    })
}

/// Coordinates `c` with `gens·c = v` over the given ring, or `None` if `v`
/// lies outside the submodule spanned by the columns of `gens`.
pub fn solve_in_submodule(ring: Ring, gens: &RatMatrix, v: &[Rat]) -> Option<Vec<Rat>> {
    SubmoduleSolver::new(ring, gens).solve(v)
}

/// Cached membership solver for a fixed generating set.
#[derive(Clone, Debug)]
pub enum SubmoduleSolver {
    Integral(IntSolver),
    Rational(RatSolver),
    /// Over ℤ with non-integral generators; only the zero vector is tested.
    Degenerate(RatSolver),
}

impl SubmoduleSolver {
    pub fn new(ring: Ring, gens: &RatMatrix) -> Self {
        match (ring, gens.to_int()) {
            (Ring::Z, Some(g)) => SubmoduleSolver::Integral(IntSolver::new(&g)),
            (Ring::Z, None) => SubmoduleSolver::Degenerate(RatSolver::new(gens)),
            (Ring::Q, _) => SubmoduleSolver::Rational(RatSolver::new(gens)),
        }
    }

    pub fn solve(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        match self {
            SubmoduleSolver::Integral(s) => {
                if !v.iter().all(|x| x.is_integer()) {
                    return None;
                }
                let iv: Vec<Int> = v.iter().map(|x| x.to_integer()).collect();
                s.solve(&iv)
                    .map(|c| c.into_iter().map(BigRational::from_integer).collect())
            }
            SubmoduleSolver::Rational(s) => s.solve(v),
            SubmoduleSolver::Degenerate(s) => {
                s.solve(v).filter(|c| c.iter().all(|x| x.is_integer()))
            }
        }
    }
}

fn lcm_of_denominators<'a>(xs: impl Iterator<Item = &'a Rat>) -> Int {
    xs.fold(Int::one(), |acc, x| acc.lcm(x.denom()))
}

/// Clears denominators row by row (kernel-preserving).
fn integral_rows(m: &RatMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        let l = BigRational::from_integer(lcm_of_denominators(m.row(r).iter()));
        for c in 0..m.cols() {
            out.set(r, c, (m.get(r, c) * &l).to_integer());
        }
    }
    out
}

/// Clears denominators column by column (span-preserving over ℚ).
fn integral_cols(m: &RatMatrix) -> IntMatrix {
    integral_rows(&m.transpose()).transpose()
}

/// `ker(d_out) / im(d_in)` with the data needed to map cycles to classes.
#[derive(Clone, Debug)]
pub struct Subquotient {
    module: FgModule,
    ambient: FgModule,
    /// Basis of the cycle lattice (columns, ambient coordinates).
    cycles: RatMatrix,
    cycle_solver: RatSolver,
    /// Unimodular change of basis from Smith form of the boundary coordinates.
    change: RatMatrix,
    units: usize,
    rank: usize,
    /// Representative cycles of the generators, normalized order.
    generators: RatMatrix,
}

impl Subquotient {
    pub fn new(d_in: &ModuleMap, d_out: &ModuleMap) -> Result<Self, LinalgError> {
        if d_in.target != d_out.source {
            return Err(LinalgError::DimensionMismatch(format!(
                "d_in lands in {} but d_out starts at {}",
                d_in.target, d_out.source
            )));
        }
        if !d_in.then(d_out)?.is_zero() {
            return Err(LinalgError::CompositionNonzero);
        }
        let ring = d_in.ring();
        let middle = &d_in.target;
        let g = middle.generators();

        let cycles_int: IntMatrix = match ring {
            Ring::Q => integer_kernel(&integral_rows(&d_out.matrix)),
            Ring::Z => {
                let out = d_out.matrix.to_int().ok_or(LinalgError::NonIntegral)?;
                let rel = d_out.target.relations();
                if rel.cols() == 0 {
                    integer_kernel(&out)
                } else {
                    let k = integer_kernel(&out.hstack(&rel.neg()));
                    let top: Vec<usize> = (0..g).collect();
                    lattice_basis(&k.select_rows(&top))
                }
            }
        };
        let z = cycles_int.cols();
        let cycles = cycles_int.to_rat();
        let cycle_solver = RatSolver::new(&cycles);

        let bounding = match ring {
            Ring::Q => integral_cols(&d_in.matrix),
            Ring::Z => d_in
                .matrix
                .to_int()
                .ok_or(LinalgError::NonIntegral)?
                .hstack(&middle.relations()),
        };
        let mut coords = IntMatrix::zeros(z, bounding.cols());
        for c in 0..bounding.cols() {
            let col: Vec<Rat> = bounding
                .column(c)
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            let y = cycle_solver
                .solve(&col)
                .ok_or(LinalgError::CompositionNonzero)?;
            for (r, x) in y.into_iter().enumerate() {
                if !x.is_integer() {
                    return Err(LinalgError::CompositionNonzero);
                }
                coords.set(r, c, x.to_integer());
            }
        }

        let sf = smith_normal_form(&coords);
        let rank = sf.rank();
        let (units, torsion) = match ring {
            Ring::Z => (
                sf.unit_count(),
                sf.invariant_factors[sf.unit_count()..].to_vec(),
            ),
            Ring::Q => (rank, Vec::new()),
        };
        let basis = cycles_int.mul(&unimodular_inverse(&sf.u));
        let mut order: Vec<usize> = (rank..z).collect();
        if ring == Ring::Z {
            order.extend(units..rank);
        }
        let generators = basis.select_columns(&order).to_rat();
        let module = FgModule::new(ring, z - rank, torsion)?;
        Ok(Subquotient {
            module,
            ambient: middle.clone(),
            cycles,
            cycle_solver,
            change: sf.u.to_rat(),
            units,
            rank,
            generators,
        })
    }

    /// Homology of a complex of free modules at the middle term.
    pub fn of_free(ring: Ring, d_in: &RatMatrix, d_out: &RatMatrix) -> Result<Self, LinalgError> {
        let mid = FgModule::free(ring, d_in.rows());
        if d_out.cols() != d_in.rows() {
            return Err(LinalgError::DimensionMismatch(format!(
                "d_in has {} rows but d_out has {} columns",
                d_in.rows(),
                d_out.cols()
            )));
        }
        let din = ModuleMap::new(FgModule::free(ring, d_in.cols()), mid.clone(), d_in.clone())?;
        let dout = ModuleMap::new(mid, FgModule::free(ring, d_out.rows()), d_out.clone())?;
        Subquotient::new(&din, &dout)
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn ambient(&self) -> &FgModule {
        &self.ambient
    }

    /// Representative cycles, one column per generator of [`Self::module`].
    pub fn generators(&self) -> &RatMatrix {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> Vec<Rat> {
        self.generators.column(i)
    }

    pub fn is_cycle(&self, v: &[Rat]) -> bool {
        self.cycle_coordinates(v).is_some()
    }

    fn cycle_coordinates(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let y = self.cycle_solver.solve(v)?;
        if self.module.ring() == Ring::Z && !y.iter().all(|x| x.is_integer()) {
            return None;
        }
        Some(y)
    }

    /// Coordinates of the class of a cycle in the normalized generators.
    pub fn class_of(&self, v: &[Rat]) -> Result<Vec<Rat>, LinalgError> {
        if v.len() != self.cycles.rows() {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} in ambient of {} generators",
                v.len(),
                self.cycles.rows()
            )));
        }
        let y = self.cycle_coordinates(v).ok_or(LinalgError::NotACycle)?;
        let w = self.change.mul_vec(&y);
        let mut out: Vec<Rat> = w[self.rank..].to_vec();
        if self.module.ring() == Ring::Z {
            out.extend(w[self.units..self.rank].iter().cloned());
        }
        self.module.normalize(&mut out);
        Ok(out)
    }

    /// Map on subquotients induced by an ambient-level map sending cycles to cycles.
    pub fn induced_map(
        &self,
        target: &Subquotient,
        ambient_map: &RatMatrix,
    ) -> Result<ModuleMap, LinalgError> {
        let n = self.module.generators();
        let mut cols = Vec::with_capacity(n);
        for i in 0..n {
            cols.push(target.class_of(&ambient_map.mul_vec(&self.generator(i)))?);
        }
        let m = RatMatrix::from_columns(&cols, target.module.generators());
        ModuleMap::new(self.module.clone(), target.module.clone(), m)
    }
}

/// `ker(d_out) / im(d_in)` as an abstract module.
pub fn subquotient(d_in: &ModuleMap, d_out: &ModuleMap) -> Result<FgModule, LinalgError> {
    Subquotient::new(d_in, d_out).map(|s| s.module)
}

/// Integer-valued helper for building torsion lists in tests and fixtures.
pub fn torsion_list(xs: &[i64]) -> Vec<Int> {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}
