//! Relative simplicial cochains and the front-face/back-face cup product.

use num_traits::Zero;

use super::chain::RelativeChains;
use super::complex::{SimplicialComplex, SimplicialPair};
use super::SimplicialError;
use crate::linalg::{FgModule, ModuleMap, Rat, RatMatrix, Ring, Subquotient};

/// Cohomology of a pair computed from the transposed boundary matrices.
#[derive(Clone, Debug)]
pub struct PairCohomology {
    chains: RelativeChains,
    groups: Vec<Subquotient>,
}

impl PairCohomology {
    pub fn new(pair: &SimplicialPair, ring: Ring) -> Result<Self, SimplicialError> {
        let chains = RelativeChains::new(pair, ring);
        let c = chains.complex();
        let groups = (0..c.len())
            .map(|p| {
                let d_in = c.boundary(p).transpose().to_rat();
                let d_out = c.boundary(p + 1).transpose().to_rat();
                Subquotient::of_free(ring, &d_in, &d_out)
            })
            .collect::<Result<_, _>>()?;
        Ok(PairCohomology { chains, groups })
    }

    pub fn chains(&self) -> &RelativeChains {
        &self.chains
    }

    pub fn ring(&self) -> Ring {
        self.chains.complex().ring()
    }

    pub fn group(&self, p: usize) -> Subquotient {
        self.groups.get(p).cloned().unwrap_or_else(|| {
            Subquotient::of_free(
                self.ring(),
                &RatMatrix::zeros(0, 0),
                &RatMatrix::zeros(0, 0),
            )
            .expect("zero")
        })
    }

    pub fn module(&self, p: usize) -> FgModule {
        self.groups
            .get(p)
            .map_or_else(|| FgModule::zero(self.ring()), |g| g.module().clone())
    }

    /// Coboundary `C^p → C^{p+1}`.
    pub fn coboundary(&self, p: usize) -> RatMatrix {
        self.chains.complex().boundary(p + 1).transpose().to_rat()
    }
}

/// `(α ∪ β)(σ) = α(front_p σ)·β(back_q σ)` on the basis of `target`.
pub fn cup_cochains(
    left: &RelativeChains,
    alpha: &[Rat],
    p: usize,
    right: &RelativeChains,
    beta: &[Rat],
    q: usize,
    target: &RelativeChains,
) -> Vec<Rat> {
    target
        .basis(p + q)
        .iter()
        .map(|s| {
            let a = left
                .index(p, &s.front(p))
                .map_or_else(Rat::zero, |i| alpha[i].clone());
            if a.is_zero() {
                return a;
            }
            let b = right
                .index(q, &s.back(p))
                .map_or_else(Rat::zero, |j| beta[j].clone());
            a * b
        })
        .collect()
}

/// The cup product `H^p(X,Z₁) ⊗ H^q(X,Z₂) → H^{p+q}(X,Z₁∪Z₂)` on generators.
#[derive(Clone, Debug)]
pub struct CupTable {
    pub p: usize,
    pub q: usize,
    pub left: FgModule,
    pub right: FgModule,
    pub target: FgModule,
    /// `entries[i][j]`: coordinates of `gᵢ ∪ hⱼ` in the target.
    pub entries: Vec<Vec<Vec<Rat>>>,
}

/// Cohomologies of `(X,Z₁)`, `(X,Z₂)` and `(X,Z₁∪Z₂)` for cup products.
#[derive(Clone, Debug)]
pub struct CupSetting {
    pub left: PairCohomology,
    pub right: PairCohomology,
    pub target: PairCohomology,
}

impl CupSetting {
    pub fn new(
        x: &SimplicialComplex,
        z1: &SimplicialComplex,
        z2: &SimplicialComplex,
        ring: Ring,
    ) -> Result<Self, SimplicialError> {
        let pair = |z: &SimplicialComplex| SimplicialPair::new(x.clone(), z.clone());
        Ok(CupSetting {
            left: PairCohomology::new(&pair(z1)?, ring)?,
            right: PairCohomology::new(&pair(z2)?, ring)?,
            target: PairCohomology::new(&pair(&z1.union(z2))?, ring)?,
        })
    }

    pub fn cup(&self, alpha: &[Rat], p: usize, beta: &[Rat], q: usize) -> Vec<Rat> {
        cup_cochains(
            self.left.chains(),
            alpha,
            p,
            self.right.chains(),
            beta,
            q,
            self.target.chains(),
        )
    }

    pub fn table(&self, p: usize, q: usize) -> Result<CupTable, SimplicialError> {
        let (gl, gr, gt) = (
            self.left.group(p),
            self.right.group(q),
            self.target.group(p + q),
        );
        let mut entries = Vec::new();
        for i in 0..gl.module().generators() {
            let a = gl.generator(i);
            let mut row = Vec::new();
            for j in 0..gr.module().generators() {
                let c = self.cup(&a, p, &gr.generator(j), q);
                row.push(gt.class_of(&c)?);
            }
            entries.push(row);
        }
        Ok(CupTable {
            p,
            q,
            left: gl.module().clone(),
            right: gr.module().clone(),
            target: gt.module().clone(),
            entries,
        })
    }
}

/// Cup product table for `X` relative to `Z₁` and `Z₂`.
pub fn relative_cup_product(
    x: &SimplicialComplex,
    z1: &SimplicialComplex,
    z2: &SimplicialComplex,
    p: usize,
    q: usize,
    ring: Ring,
) -> Result<CupTable, SimplicialError> {
    CupSetting::new(x, z1, z2, ring)?.table(p, q)
}

/// The cochain comparison `C^•(X, Z₁∪Z₂) → C^•(X, Z₁+Z₂)` in degree `n`,
/// where the latter is built on simplices lying in neither `Z₁` nor `Z₂`,
/// together with the map it induces on cohomology.
pub fn cup_comparison(
    x: &SimplicialComplex,
    z1: &SimplicialComplex,
    z2: &SimplicialComplex,
    n: usize,
    ring: Ring,
) -> Result<ModuleMap, SimplicialError> {
    let union = PairCohomology::new(&SimplicialPair::new(x.clone(), z1.union(z2))?, ring)?;
    let literal = |d: usize| -> Vec<super::Simplex> {
        x.simplices(d)
            .iter()
            .filter(|s| !z1.contains(s) && !z2.contains(s))
            .cloned()
            .collect()
    };
    // Cochains on the literal basis; the coboundary is the transpose of the
    // boundary restricted to that basis.
    let basis: Vec<Vec<super::Simplex>> = (0..=n + 1).map(literal).collect();
    let boundary = |d: usize| -> RatMatrix {
        if d == 0 {
            return RatMatrix::zeros(0, basis[0].len());
        }
        let mut m = RatMatrix::zeros(basis[d - 1].len(), basis[d].len());
        for (c, s) in basis[d].iter().enumerate() {
            for (sign, f) in s.boundary() {
                if let Ok(r) = basis[d - 1].binary_search(&f) {
                    m.set(r, c, Rat::from_integer(sign.into()));
                }
            }
        }
        m
    };
    let lit = Subquotient::of_free(ring, &boundary(n).transpose(), &boundary(n + 1).transpose())?;
    // Restriction of cochains: a cochain on the union basis, read on the literal basis.
    let src = union.chains().basis(n);
    let mut proj = RatMatrix::zeros(basis[n].len(), src.len());
    for (r, s) in basis[n].iter().enumerate() {
        if let Ok(c) = src.binary_search(s) {
            proj.set(r, c, Rat::from_integer(1.into()));
        }
    }
    Ok(union.group(n).induced_map(&lit, &proj)?)
}
