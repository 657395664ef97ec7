use num_traits::Zero;

use super::complex::{Simplex, SimplicialComplex, SimplicialMap, SimplicialPair};
use super::SimplicialError;
use crate::linalg::{FgModule, Int, IntMatrix, ModuleMap, Rat, RatMatrix, Ring, Subquotient};

/// A bounded chain complex of free modules with integer differentials.
///
/// Homological grading: `boundary(n)` maps degree `n` to degree `n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    ranks: Vec<usize>,
    /// `diffs[n - 1]` is the boundary out of degree `n`.
    diffs: Vec<IntMatrix>,
}

impl ChainComplex {
    /// Builds a complex, asserting shapes and `∂∘∂ = 0`.
    pub fn new(
        ring: Ring,
        ranks: Vec<usize>,
        diffs: Vec<IntMatrix>,
    ) -> Result<Self, SimplicialError> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(SimplicialError::NotAComplex(format!(
                "{} differentials for {} degrees",
                diffs.len(),
                ranks.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            let n = i + 1;
            if d.shape() != (ranks[n - 1], ranks[n]) {
                return Err(SimplicialError::NotAComplex(format!(
                    "boundary out of degree {n} has wrong shape"
                )));
            }
        }
        for n in 2..ranks.len() {
            if !diffs[n - 2].mul(&diffs[n - 1]).is_zero() {
                return Err(SimplicialError::NotAComplex(format!(
                    "∂∘∂ ≠ 0 at degree {n}"
                )));
            }
        }
        Ok(ChainComplex { ring, ranks, diffs })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(&self, ring: Ring) -> Self {
        ChainComplex {
            ring,
            ..self.clone()
        }
    }

    /// Highest degree with a nonzero chain group, `-1` if none.
    pub fn top_degree(&self) -> isize {
        self.ranks
            .iter()
            .rposition(|&r| r > 0)
            .map_or(-1, |p| p as isize)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Boundary `C_n → C_{n-1}`; empty-shaped outside the stored range.
    pub fn boundary(&self, n: usize) -> IntMatrix {
        if n == 0 {
            return IntMatrix::zeros(0, self.rank(0));
        }
        match self.diffs.get(n - 1) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(self.rank(n - 1), self.rank(n)),
        }
    }

    /// `H_n` with class-mapping data.
    pub fn homology(&self, n: usize) -> Result<Subquotient, SimplicialError> {
        let d_in = self.boundary(n + 1).to_rat();
        let d_out = self.boundary(n).to_rat();
        Ok(Subquotient::of_free(self.ring, &d_in, &d_out)?)
    }

    /// Homology modules in degrees `0..=top`.
    pub fn homology_modules(&self) -> Result<Vec<FgModule>, SimplicialError> {
        (0..self.ranks.len())
            .map(|n| self.homology(n).map(|h| h.module().clone()))
            .collect()
    }

    /// Number of stored degrees (degrees beyond are zero).
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Chains of `X` modulo chains of `Z`, with the simplex basis in each degree.
#[derive(Clone, Debug)]
pub struct RelativeChains {
    pair: SimplicialPair,
    basis: Vec<Vec<Simplex>>,
    complex: ChainComplex,
}

impl RelativeChains {
    pub fn new(pair: &SimplicialPair, ring: Ring) -> Self {
        let x = pair.space();
        let z = pair.sub();
        let top = x.dim().max(-1);
        let basis: Vec<Vec<Simplex>> = (0..=top)
            .map(|d| {
                x.simplices(d as usize)
                    .iter()
                    .filter(|s| !z.contains(s))
                    .cloned()
                    .collect()
            })
            .collect();
        let ranks: Vec<usize> = basis.iter().map(Vec::len).collect();
        let mut diffs = Vec::new();
        for n in 1..basis.len() {
            let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for (c, s) in basis[n].iter().enumerate() {
                for (sign, f) in s.boundary() {
                    if let Ok(r) = basis[n - 1].binary_search(&f) {
                        m.set(r, c, Int::from(sign));
                    }
                }
            }
            diffs.push(m);
        }
        let complex =
            ChainComplex::new(ring, ranks, diffs).expect("simplicial boundary squares to zero");
        RelativeChains {
            pair: pair.clone(),
            basis,
            complex,
        }
    }

    pub fn pair(&self) -> &SimplicialPair {
        &self.pair
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn basis(&self, n: usize) -> &[Simplex] {
        self.basis.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn index(&self, n: usize, s: &Simplex) -> Option<usize> {
        self.basis.get(n)?.binary_search(s).ok()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.complex.rank(n)
    }

    /// Matrix of the chain map induced by `f` in degree `n`, into `target`'s basis.
    pub fn map_matrix(&self, f: &SimplicialMap, target: &RelativeChains, n: usize) -> RatMatrix {
        let mut m = RatMatrix::zeros(target.rank(n), self.rank(n));
        for (c, s) in self.basis(n).iter().enumerate() {
            if let Some((sign, img)) = f.chain_image(s) {
                if let Some(r) = target.index(n, &img) {
                    let v = m.get(r, c) + Rat::from_integer(Int::from(sign));
                    m.set(r, c, v);
                }
            }
        }
        m
    }
}

/// Relative homology of a pair in all degrees, with cycle representatives.
#[derive(Clone, Debug)]
pub struct PairHomology {
    chains: RelativeChains,
    groups: Vec<Subquotient>,
}

impl PairHomology {
    pub fn new(pair: &SimplicialPair, ring: Ring) -> Result<Self, SimplicialError> {
        let chains = RelativeChains::new(pair, ring);
        let groups = (0..chains.complex().len())
            .map(|n| chains.complex().homology(n))
            .collect::<Result<_, _>>()?;
        Ok(PairHomology { chains, groups })
    }

    pub fn ring(&self) -> Ring {
        self.chains.complex().ring()
    }

    pub fn chains(&self) -> &RelativeChains {
        &self.chains
    }

    /// `H_n`; zero beyond the dimension of `X`.
    pub fn group(&self, n: usize) -> Subquotient {
        match self.groups.get(n) {
            Some(g) => g.clone(),
            None => Subquotient::of_free(
                self.ring(),
                &RatMatrix::zeros(0, 0),
                &RatMatrix::zeros(0, 0),
            )
            .expect("zero subquotient"),
        }
    }

    pub fn module(&self, n: usize) -> FgModule {
        self.groups
            .get(n)
            .map_or_else(|| FgModule::zero(self.ring()), |g| g.module().clone())
    }

    /// Modules in degrees `0..=dim X`.
    pub fn modules(&self) -> Vec<FgModule> {
        self.groups.iter().map(|g| g.module().clone()).collect()
    }

    /// Number of stored degrees, `dim X + 1`.
    pub fn degrees(&self) -> usize {
        self.groups.len()
    }
}

/// `h_n(X, Z)` over the given ring.
pub fn relative_homology(
    pair: &SimplicialPair,
    n: usize,
    ring: Ring,
) -> Result<FgModule, SimplicialError> {
    Ok(PairHomology::new(pair, ring)?.module(n))
}

/// A simplicial map of pairs `(X, Z) → (X', Z')`.
#[derive(Clone, Debug)]
pub struct PairMap {
    source: SimplicialPair,
    target: SimplicialPair,
    map: SimplicialMap,
}

impl PairMap {
    pub fn new(
        source: SimplicialPair,
        target: SimplicialPair,
        map: SimplicialMap,
    ) -> Result<Self, SimplicialError> {
        if map.source() != source.space() || map.target() != target.space() {
            return Err(SimplicialError::BadVertexMap(
                "map does not match the spaces of the pairs".into(),
            ));
        }
        if !map
            .image_complex(source.sub())
            .is_subcomplex_of(target.sub())
        {
            return Err(SimplicialError::NotPairMap);
        }
        Ok(PairMap {
            source,
            target,
            map,
        })
    }

    pub fn identity(pair: &SimplicialPair) -> Self {
        PairMap {
            source: pair.clone(),
            target: pair.clone(),
            map: SimplicialMap::identity(pair.space()),
        }
    }

    pub fn source(&self) -> &SimplicialPair {
        &self.source
    }

    pub fn target(&self) -> &SimplicialPair {
        &self.target
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn then(&self, next: &PairMap) -> Result<PairMap, SimplicialError> {
        PairMap::new(
            self.source.clone(),
            next.target.clone(),
            self.map.then(&next.map)?,
        )
    }
}

/// `h_n(f)` between precomputed homologies.
pub fn induced_map_between(
    f: &PairMap,
    source: &PairHomology,
    target: &PairHomology,
    n: usize,
) -> Result<ModuleMap, SimplicialError> {
    let m = source.chains().map_matrix(f.map(), target.chains(), n);
    Ok(source.group(n).induced_map(&target.group(n), &m)?)
}

/// `h_n(f) : h_n(X, Z) → h_n(X', Z')`.
pub fn induced_map_on_homology(
    f: &PairMap,
    n: usize,
    ring: Ring,
) -> Result<ModuleMap, SimplicialError> {
    let src = PairHomology::new(f.source(), ring)?;
    let tgt = PairHomology::new(f.target(), ring)?;
    induced_map_between(f, &src, &tgt, n)
}

/// Nested subcomplexes `X ⊇ Z ⊇ W`.
#[derive(Clone, Debug)]
pub struct Triple {
    pub x: SimplicialComplex,
    pub z: SimplicialComplex,
    pub w: SimplicialComplex,
}

impl Triple {
    pub fn new(
        x: SimplicialComplex,
        z: SimplicialComplex,
        w: SimplicialComplex,
    ) -> Result<Self, SimplicialError> {
        if !z.is_subcomplex_of(&x) || !w.is_subcomplex_of(&z) {
            return Err(SimplicialError::NotNested);
        }
        Ok(Triple { x, z, w })
    }

    pub fn upper(&self) -> SimplicialPair {
        SimplicialPair::new(self.x.clone(), self.z.clone()).expect("nested")
    }

    pub fn lower(&self) -> SimplicialPair {
        SimplicialPair::new(self.z.clone(), self.w.clone()).expect("nested")
    }
}

/// Degree-`n` chain-level boundary `C_n(X, Z) → C_{n-1}(Z, W)`: lift, take the
/// boundary, keep the faces in `Z` but not in `W`.
pub fn connecting_matrix(upper: &RelativeChains, lower: &RelativeChains, n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(if n == 0 { 0 } else { lower.rank(n - 1) }, upper.rank(n));
    if n == 0 {
        return m;
    }
    for (c, s) in upper.basis(n).iter().enumerate() {
        for (sign, f) in s.boundary() {
            if let Some(r) = lower.index(n - 1, &f) {
                m.set(r, c, Rat::from_integer(Int::from(sign)));
            }
        }
    }
    m
}

/// Boundary map of the triple `h_n(X, Z) → h_{n-1}(Z, W)` between precomputed homologies.
pub fn triple_boundary_between(
    upper: &PairHomology,
    lower: &PairHomology,
    n: usize,
) -> Result<ModuleMap, SimplicialError> {
    if n == 0 {
        return Ok(ModuleMap::zero(
            &upper.module(0),
            &FgModule::zero(upper.ring()),
        ));
    }
    let m = connecting_matrix(upper.chains(), lower.chains(), n);
    Ok(upper.group(n).induced_map(&lower.group(n - 1), &m)?)
}

/// Boundary map of the long exact sequence of a triple.
pub fn triple_boundary(t: &Triple, n: usize, ring: Ring) -> Result<ModuleMap, SimplicialError> {
    let upper = PairHomology::new(&t.upper(), ring)?;
    let lower = PairHomology::new(&t.lower(), ring)?;
    triple_boundary_between(&upper, &lower, n)
}

/// Coefficients of a chain as a dense vector in the relative basis; simplices
/// of `Z` are dropped.
pub fn chain_vector(chains: &RelativeChains, n: usize, terms: &[(i64, Simplex)]) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); chains.rank(n)];
    for (c, s) in terms {
        if let Some(i) = chains.index(n, s) {
            v[i] += Rat::from_integer(Int::from(*c));
        }
    }
    v
}

/// One node `A --f--> B --g--> C` of a long exact sequence, checked at `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessNode {
    /// Name of the middle term, e.g. `h_1(X,Z)`.
    pub node: String,
    pub composite_zero: bool,
    /// `ker g / im f`; zero iff the sequence is exact here.
    pub defect: FgModule,
    pub exact: bool,
}

/// Exactness of `… → h_n(Z) → h_n(X) → h_n(X,Z) → h_{n-1}(Z) → …` at every node.
#[derive(Clone, Debug)]
pub struct LesReport {
    pub ring: Ring,
    pub nodes: Vec<ExactnessNode>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

fn check_node(
    name: String,
    f: &ModuleMap,
    g: &ModuleMap,
) -> Result<ExactnessNode, SimplicialError> {
    let composite_zero = f.then(g)?.is_zero();
    let defect = if composite_zero {
        Subquotient::new(f, g)?.module().clone()
    } else {
        FgModule::zero(f.ring())
    };
    let exact = composite_zero && defect.is_zero();
    Ok(ExactnessNode {
        node: name,
        composite_zero,
        defect,
        exact,
    })
}

/// Long exact sequence of the pair, checked node by node.
pub fn les_exactness(pair: &SimplicialPair, ring: Ring) -> Result<LesReport, SimplicialError> {
    let x = pair.space();
    let z = pair.sub();
    let hz = PairHomology::new(&SimplicialPair::absolute(z.clone()), ring)?;
    let hx = PairHomology::new(&SimplicialPair::absolute(x.clone()), ring)?;
    let hxz = PairHomology::new(pair, ring)?;
    let incl = PairMap::new(
        SimplicialPair::absolute(z.clone()),
        SimplicialPair::absolute(x.clone()),
        SimplicialMap::inclusion(z, x)?,
    )?;
    let quot = PairMap::new(
        SimplicialPair::absolute(x.clone()),
        pair.clone(),
        SimplicialMap::identity(x),
    )?;
    let top = (x.dim().max(0) + 1) as usize;

    // maps[n] = (h_n(Z) → h_n(X), h_n(X) → h_n(X,Z), h_n(X,Z) → h_{n-1}(Z))
    let mut maps = Vec::new();
    for n in 0..=top {
        let i = induced_map_between(&incl, &hz, &hx, n)?;
        let j = induced_map_between(&quot, &hx, &hxz, n)?;
        let d = if n == 0 {
            ModuleMap::zero(&hxz.module(0), &FgModule::zero(ring))
        } else {
            let m = connecting_matrix(hxz.chains(), hz.chains(), n);
            hxz.group(n).induced_map(&hz.group(n - 1), &m)?
        };
        maps.push((i, j, d));
    }
    let mut nodes = Vec::new();
    for n in (0..=top).rev() {
        let (i, j, d) = &maps[n];
        let incoming = match maps.get(n + 1) {
            Some(next) => next.2.clone(),
            None => ModuleMap::zero(&FgModule::zero(ring), i.source()),
        };
        nodes.push(check_node(format!("h_{n}(Z)"), &incoming, i)?);
        nodes.push(check_node(format!("h_{n}(X)"), i, j)?);
        nodes.push(check_node(format!("h_{n}(X,Z)"), j, d)?);
    }
    Ok(LesReport { ring, nodes })
}
