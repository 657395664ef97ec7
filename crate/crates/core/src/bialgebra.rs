//! Products on coalgebra truncations through Künneth isomorphisms, the
//! bialgebra compatibilities, and the element `σ` with its multiplication system.

use std::cell::RefCell;
use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::rational::{inverse, nullspace};
use crate::linalg::{LinalgError, Rat, RatMatrix, Ring, SubmoduleSolver};
use crate::simplicial::{ez_aw_maps, SimplicialError};
use crate::tannaka::{
    middle_swap, swap_matrix, transition_between, transition_map, DiagramRep, EdgeKind, Subdiagram,
    TannakaError, Truncation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BialgebraError {
    #[error("{0} is not a good pair")]
    NotGoodPair(String),
    #[error("restriction of basis family {basis} to {product} leaves End(T|_F)⊗End(T|_G)")]
    ProductEscape { basis: usize, product: String },
    #[error("restriction of basis family {basis} to {product} has no integral coordinates")]
    IntegralEscape { basis: usize, product: String },
    #[error("vertex {vertex} has rank {rank}, expected 1")]
    WrongRank { vertex: String, rank: usize },
    #[error("missing product: {0}")]
    MissingProducts(String),
    #[error(transparent)]
    Tannaka(#[from] TannakaError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `τ: T(v×w) → T(v)⊗T(w)` with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauIso {
    pub left: usize,
    pub right: usize,
    pub product: usize,
    pub matrix: RatMatrix,
    pub inverse: RatMatrix,
}

fn check_good(rep: &DiagramRep, v: usize) -> Result<(), BialgebraError> {
    let vx = rep.vertex(v);
    let pv = vx
        .pair
        .as_ref()
        .ok_or_else(|| BialgebraError::NotGoodPair(vx.name.clone()))?;
    let ok = pv.homology.modules().iter().enumerate().all(|(d, h)| {
        if d == pv.degree {
            h.is_free()
        } else {
            h.is_zero()
        }
    });
    if ok {
        Ok(())
    } else {
        Err(BialgebraError::NotGoodPair(vx.name.clone()))
    }
}

/// The Künneth isomorphism induced by the front/back-face map on relative chains;
/// its inverse is the one induced by the shuffle map.
pub fn kunneth_tau(rep: &DiagramRep, v: usize, w: usize) -> Result<TauIso, BialgebraError> {
    let vw = rep.product(v, w).ok_or_else(|| {
        BialgebraError::MissingProducts(format!("{} × {}", rep.vertex(v).name, rep.vertex(w).name))
    })?;
    for x in [v, w, vw] {
        check_good(rep, x)?;
    }
    let (pv, pw, pvw) = (
        rep.vertex(v).pair.as_ref().expect("checked"),
        rep.vertex(w).pair.as_ref().expect("checked"),
        rep.vertex(vw).pair.as_ref().expect("checked"),
    );
    let (n, m) = (pv.degree, pw.degree);
    let big_n = n + m;
    let chains = ez_aw_maps(&pv.pair, &pw.pair, rep.ring());
    let tensor_h = chains.tensor.complex().homology(big_n)?;
    let (gv, gw, gvw) = (
        pv.homology.group(n),
        pw.homology.group(m),
        pvw.homology.group(big_n),
    );
    let (rv, rw, rvw) = (
        gv.module().generators(),
        gw.module().generators(),
        gvw.module().generators(),
    );
    if rv * rw != rvw {
        return Err(BialgebraError::NotGoodPair(format!(
            "{}: rank {rvw} is not {rv}·{rw}",
            rep.vertex(vw).name
        )));
    }
    let dim_n = chains.tensor.rank(big_n);
    // Classes of g_i ⊗ h_j in the tensor homology, and their shuffle images.
    let mut basis = RatMatrix::zeros(rvw, rv * rw);
    let mut ez_classes = RatMatrix::zeros(rvw, rv * rw);
    let ez = if big_n < chains.ez.len() {
        chains.ez[big_n].to_rat()
    } else {
        RatMatrix::zeros(0, dim_n)
    };
    for i in 0..rv {
        let g = gv.generator(i);
        for j in 0..rw {
            let h = gw.generator(j);
            let mut x = vec![Rat::zero(); dim_n];
            for (a, ga) in g.iter().enumerate() {
                if ga.is_zero() {
                    continue;
                }
                for (b, hb) in h.iter().enumerate() {
                    x[chains.tensor.index(big_n, n, a, b)] = ga * hb;
                }
            }
            let col = i * rw + j;
            for (r, c) in tensor_h.class_of(&x)?.into_iter().enumerate() {
                basis.set(r, col, c);
            }
            for (r, c) in gvw.class_of(&ez.mul_vec(&x))?.into_iter().enumerate() {
                ez_classes.set(r, col, c);
            }
        }
    }
    let basis_inv = inverse(&basis)
        .ok_or_else(|| BialgebraError::NotGoodPair("tensor classes are dependent".into()))?;
    let aw = if big_n < chains.aw.len() {
        chains.aw[big_n].to_rat()
    } else {
        RatMatrix::zeros(dim_n, 0)
    };
    let mut tau = RatMatrix::zeros(rv * rw, rvw);
    for k in 0..rvw {
        let cls = tensor_h.class_of(&aw.mul_vec(&gvw.generator(k)))?;
        for (r, x) in basis_inv.mul_vec(&cls).into_iter().enumerate() {
            tau.set(r, k, x);
        }
    }
    if tau.mul(&ez_classes) != RatMatrix::identity(rv * rw) {
        return Err(BialgebraError::NotGoodPair(format!(
            "{}: τ is not invertible",
            rep.vertex(vw).name
        )));
    }
    Ok(TauIso {
        left: v,
        right: w,
        product: vw,
        matrix: tau,
        inverse: ez_classes,
    })
}

/// Lazily computed `τ` data, with optional overrides for negative controls.
#[derive(Debug, Default)]
pub struct TauTable {
    cache: RefCell<BTreeMap<(usize, usize), TauIso>>,
}

impl TauTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, rep: &DiagramRep, v: usize, w: usize) -> Result<TauIso, BialgebraError> {
        if let Some(t) = self.cache.borrow().get(&(v, w)) {
            return Ok(t.clone());
        }
        let t = kunneth_tau(rep, v, w)?;
        self.cache.borrow_mut().insert((v, w), t.clone());
        Ok(t)
    }

    /// Replaces `τ_{v,w}` by `m` (and its inverse).
    pub fn set(
        &self,
        rep: &DiagramRep,
        v: usize,
        w: usize,
        m: RatMatrix,
    ) -> Result<(), BialgebraError> {
        let inv = inverse(&m)
            .ok_or_else(|| BialgebraError::NotGoodPair("override is not invertible".into()))?;
        let product = rep
            .product(v, w)
            .ok_or_else(|| BialgebraError::MissingProducts(format!("{v} × {w}")))?;
        self.cache.borrow_mut().insert(
            (v, w),
            TauIso {
                left: v,
                right: w,
                product,
                matrix: m,
                inverse: inv,
            },
        );
        Ok(())
    }
}

/// `μ: A_F⊗A_G → A_H`, the dual of `π: End(T|_H) → End(T|_F)⊗End(T|_G)`.
#[derive(Clone, Debug)]
pub struct ProductFragment {
    pub left: Subdiagram,
    pub right: Subdiagram,
    pub target: Subdiagram,
    /// `dim A_H × (dim A_F · dim A_G)`.
    pub mu: RatMatrix,
}

pub fn product_on_truncations(
    rep: &DiagramRep,
    f: &Truncation,
    g: &Truncation,
    h: &Truncation,
    taus: &TauTable,
) -> Result<ProductFragment, BialgebraError> {
    let (ef, eg, eh) = (&f.algebra, &g.algebra, &h.algebra);
    let (af, ag) = (ef.ambient_dim(), eg.ambient_dim());
    let mut pieces = Vec::new();
    for (kv, &v) in f.subdiagram.vertices().iter().enumerate() {
        for (kw, &w) in g.subdiagram.vertices().iter().enumerate() {
            let name = format!("{} × {}", rep.vertex(v).name, rep.vertex(w).name);
            let vw = rep
                .product(v, w)
                .ok_or_else(|| BialgebraError::MissingProducts(name.clone()))?;
            if !h.subdiagram.contains_vertex(vw) {
                return Err(BialgebraError::MissingProducts(format!(
                    "{name} is not in the target"
                )));
            }
            pieces.push((kv, kw, v, w, vw, name, taus.get(rep, v, w)?));
        }
    }
    let offsets = |e: &crate::tannaka::EndAlgebra, k: usize| -> usize {
        (0..k).map(|i| e.vertex_rank(i) * e.vertex_rank(i)).sum()
    };
    let gens = ef.basis().kron(eg.basis());
    let solver = SubmoduleSolver::new(rep.ring(), &gens);
    let rational = (rep.ring() == Ring::Z).then(|| SubmoduleSolver::new(Ring::Q, &gens));
    let (df, dg) = (ef.dim(), eg.dim());
    let mut pi = RatMatrix::zeros(df * dg, eh.dim());
    for k in 0..eh.dim() {
        let family = eh.basis().column(k);
        let mut x = vec![Rat::zero(); af * ag];
        for (kv, kw, v, w, vw, _, tau) in &pieces {
            let (rv, rw) = (rep.rank(*v), rep.rank(*w));
            let phi = eh.component(&family, *vw).expect("product vertex in H");
            let m = tau.matrix.mul(&phi).mul(&tau.inverse);
            let (ov, ow) = (offsets(ef, *kv), offsets(eg, *kw));
            for a in 0..rv {
                for b in 0..rv {
                    for c in 0..rw {
                        for d in 0..rw {
                            let alpha = ov + a * rv + b;
                            let beta = ow + c * rw + d;
                            x[alpha * ag + beta] = m.get(a * rw + c, b * rw + d).clone();
                        }
                    }
                }
            }
        }
        let coords = solver.solve(&x).ok_or_else(|| {
            let product = pieces
                .iter()
                .map(|p| p.5.clone())
                .collect::<Vec<_>>()
                .join(", ");
            match &rational {
                Some(q) if q.solve(&x).is_some() => {
                    BialgebraError::IntegralEscape { basis: k, product }
                }
                _ => BialgebraError::ProductEscape { basis: k, product },
            }
        })?;
        for (r, c) in coords.into_iter().enumerate() {
            pi.set(r, k, c);
        }
    }
    Ok(ProductFragment {
        left: f.subdiagram.clone(),
        right: g.subdiagram.clone(),
        target: h.subdiagram.clone(),
        mu: pi.transpose(),
    })
}

/// Outcome of the bialgebra compatibilities for one fragment.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BialgebraCertificate {
    /// `Δ∘μ = (μ⊗μ)∘(id⊗swap⊗id)∘(Δ⊗Δ)`.
    pub comultiplicative: bool,
    /// `ε∘μ = ε⊗ε`.
    pub counit_multiplicative: bool,
    /// Unit element group-like; `None` without a unit vertex.
    pub unit_group_like: Option<bool>,
    /// `μ(1⊗a) = a` after transition; `None` when not applicable.
    pub unit_law: Option<bool>,
    /// `μ∘swap = μ`; `None` unless both factors are the same truncation.
    pub commutative: Option<bool>,
    /// Defect matrices of the failed identities.
    pub witnesses: Vec<(String, RatMatrix)>,
}

impl BialgebraCertificate {
    pub fn passed(&self) -> bool {
        self.comultiplicative
            && self.counit_multiplicative
            && self.unit_group_like.unwrap_or(true)
            && self.unit_law.unwrap_or(true)
            && self.commutative.unwrap_or(true)
    }
}

/// The coaction coefficient of a rank-one vertex: `ρ(g) = x⊗g`.
pub fn rank_one_coefficient(
    rep: &DiagramRep,
    t: &Truncation,
    v: usize,
) -> Result<Vec<Rat>, BialgebraError> {
    if rep.rank(v) != 1 {
        return Err(BialgebraError::WrongRank {
            vertex: rep.vertex(v).name.clone(),
            rank: rep.rank(v),
        });
    }
    Ok(t.coaction(rep, v)?.rho.column(0))
}

/// Checks a fragment `μ: A_F⊗A_G → A_H`. `unit` is a one-point vertex of `F`,
/// if any; the unit law is checked when additionally `G ⊆ H`.
pub fn bialgebra_axiom_check(
    rep: &DiagramRep,
    f: &Truncation,
    g: &Truncation,
    h: &Truncation,
    fragment: &ProductFragment,
    unit: Option<usize>,
) -> Result<BialgebraCertificate, BialgebraError> {
    let mu = &fragment.mu;
    let (df, dg) = (f.rank(), g.rank());
    let mut cert = BialgebraCertificate::default();
    let lhs = h.coalgebra.delta().mul(mu);
    let rhs = mu
        .kron(mu)
        .mul(&middle_swap(df, df, dg, dg))
        .mul(&f.coalgebra.delta().kron(g.coalgebra.delta()));
    cert.comultiplicative = lhs == rhs;
    if !cert.comultiplicative {
        cert.witnesses
            .push(("comultiplication".into(), lhs.sub(&rhs)));
    }
    let lhs = h.coalgebra.counit().mul(mu);
    let rhs = f.coalgebra.counit().kron(g.coalgebra.counit());
    cert.counit_multiplicative = lhs == rhs;
    if !cert.counit_multiplicative {
        cert.witnesses.push(("counit".into(), lhs.sub(&rhs)));
    }
    if let Some(p) = unit.filter(|&p| f.subdiagram.contains_vertex(p)) {
        let one = rank_one_coefficient(rep, f, p)?;
        cert.unit_group_like = Some(f.coalgebra.is_group_like(&one));
        if g.subdiagram.is_subdiagram_of(&h.subdiagram) {
            let t = transition_between(rep, g, h)?.matrix;
            let times_one = mu.mul(&RatMatrix::column_vector(&one).kron(&RatMatrix::identity(dg)));
            cert.unit_law = Some(times_one == t);
            if times_one != t {
                cert.witnesses.push(("unit law".into(), times_one.sub(&t)));
            }
        }
    }
    if f.subdiagram == g.subdiagram {
        let swapped = mu.mul(&swap_matrix(df, df));
        cert.commutative = Some(&swapped == mu);
        if &swapped != mu {
            cert.witnesses
                .push(("commutativity".into(), swapped.sub(mu)));
        }
    }
    Ok(cert)
}

/// `t_H ∘ μ' = μ ∘ (t_F ⊗ t_G)` for fragments `μ': A_F'⊗A_G' → A_H'` and
/// `μ: A_F⊗A_G → A_H` with `F' ⊆ F`, `G' ⊆ G`, `H' ⊆ H`.
#[allow(clippy::too_many_arguments)]
pub fn transition_compatible(
    rep: &DiagramRep,
    small: (&Truncation, &Truncation, &Truncation),
    big: (&Truncation, &Truncation, &Truncation),
    mu_small: &ProductFragment,
    mu_big: &ProductFragment,
) -> Result<bool, BialgebraError> {
    let tf = transition_between(rep, small.0, big.0)?.matrix;
    let tg = transition_between(rep, small.1, big.1)?.matrix;
    let th = transition_between(rep, small.2, big.2)?.matrix;
    Ok(th.mul(&mu_small.mu) == mu_big.mu.mul(&tf.kron(&tg)))
}

/// `μ(μ⊗id) = μ(id⊗μ)` after transition into a common truncation.
///
/// The fragments are `F·G → P`, `P·K → Q`, `G·K → R` and `F·R → S`;
/// `common` must contain both `Q` and `S`.
pub fn associativity_check(
    rep: &DiagramRep,
    fg: &ProductFragment,
    fg_k: &ProductFragment,
    gk: &ProductFragment,
    f_gk: &ProductFragment,
    common: &Truncation,
) -> Result<bool, BialgebraError> {
    let dk = fg_k.mu.cols() / fg.mu.rows().max(1);
    let df = f_gk.mu.cols() / gk.mu.rows().max(1);
    let left = transition_map(rep, &fg_k.target, &common.subdiagram)?
        .matrix
        .mul(&fg_k.mu)
        .mul(&fg.mu.kron(&RatMatrix::identity(dk)));
    let right = transition_map(rep, &f_gk.target, &common.subdiagram)?
        .matrix
        .mul(&f_gk.mu)
        .mul(&RatMatrix::identity(df).kron(&gk.mu));
    Ok(left == right)
}

/// One coherence identity between `τ` and a structural edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coherence {
    pub edge: String,
    pub kind: EdgeKind,
    pub holds: bool,
}

/// Checks `τ` against the associator, swap and unit edges among `edges`:
///
/// * associator `a: (u×v)×w → u×(v×w)`: `(τ_{u,v}⊗1)·τ_{uv,w} = (1⊗τ_{v,w})·τ_{u,vw}·T(a)`;
/// * swap `s: v×w → w×v` in degrees `n, m`: `τ_{w,v}·T(s) = (-1)^{nm}·S·τ_{v,w}`;
/// * unit `pt×w → w` or `w×pt → w`: `τ = T(unit)` under `Λ⊗T(w) = T(w)`.
///
/// Other edges are skipped.
pub fn tau_coherence(
    rep: &DiagramRep,
    taus: &TauTable,
    edges: &[usize],
) -> Result<Vec<Coherence>, BialgebraError> {
    let missing = |x: usize| BialgebraError::MissingProducts(rep.vertex(x).name.clone());
    let degree = |x: usize| rep.vertex(x).pair.as_ref().map_or(0, |p| p.degree);
    let mut out = Vec::new();
    for &e in edges {
        let edge = rep.edge(e);
        let t = edge.map.matrix();
        let holds = match edge.kind {
            EdgeKind::Associator => {
                let (uv, w) = rep
                    .factors(edge.source)
                    .ok_or_else(|| missing(edge.source))?;
                let (u, vw) = rep
                    .factors(edge.target)
                    .ok_or_else(|| missing(edge.target))?;
                let (_, v) = rep.factors(uv).ok_or_else(|| missing(uv))?;
                let lhs = taus
                    .get(rep, u, v)?
                    .matrix
                    .kron(&RatMatrix::identity(rep.rank(w)))
                    .mul(&taus.get(rep, uv, w)?.matrix);
                let rhs = RatMatrix::identity(rep.rank(u))
                    .kron(&taus.get(rep, v, w)?.matrix)
                    .mul(&taus.get(rep, u, vw)?.matrix)
                    .mul(t);
                lhs == rhs
            }
            EdgeKind::Swap => {
                let (v, w) = rep
                    .factors(edge.source)
                    .ok_or_else(|| missing(edge.source))?;
                let lhs = taus.get(rep, w, v)?.matrix.mul(t);
                let mut rhs =
                    swap_matrix(rep.rank(v), rep.rank(w)).mul(&taus.get(rep, v, w)?.matrix);
                if degree(v) * degree(w) % 2 == 1 {
                    rhs = rhs.neg();
                }
                lhs == rhs
            }
            EdgeKind::Unit => {
                let (a, b) = rep
                    .factors(edge.source)
                    .ok_or_else(|| missing(edge.source))?;
                &taus.get(rep, a, b)?.matrix == t
            }
            _ => continue,
        };
        out.push(Coherence {
            edge: edge.name.clone(),
            kind: edge.kind,
            holds,
        });
    }
    Ok(out)
}

/// `σ ∈ A_F` with `ρ(g) = σ⊗g` on the rank-one vertex `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaElement {
    pub vertex: usize,
    pub coordinates: Vec<Rat>,
    /// Recomputed with the generator `−g`, from scratch.
    pub sign_independent: bool,
    pub group_like: bool,
}

pub fn sigma_element(
    rep: &DiagramRep,
    f: &Subdiagram,
    v: usize,
) -> Result<SigmaElement, BialgebraError> {
    let t = Truncation::new(rep, f)?;
    let sigma = rank_one_coefficient(rep, &t, v)?;
    let flipped = rep.with_vertex_basis(
        v,
        &RatMatrix::identity(1).scale(&Rat::from_integer((-1).into())),
    )?;
    let t2 = Truncation::new(&flipped, f)?;
    let sigma2 = rank_one_coefficient(&flipped, &t2, v)?;
    let group_like = t.coalgebra.is_group_like(&sigma);
    Ok(SigmaElement {
        vertex: v,
        sign_independent: sigma == sigma2 && t.algebra.basis() == t2.algebra.basis(),
        coordinates: sigma,
        group_like,
    })
}

/// One step `×σ: A_{F_k} → A_{F_{k+1}}`.
#[derive(Clone, Debug)]
pub struct SigmaStep {
    pub matrix: RatMatrix,
    /// Basis of the kernel of this step.
    pub kernel: RatMatrix,
    /// Basis of the kernel of the composite up to the last level.
    pub eventual_kernel: RatMatrix,
}

#[derive(Clone, Debug, Default)]
pub struct SigmaSystem {
    pub sigma: Vec<Rat>,
    pub steps: Vec<SigmaStep>,
}

/// The directed system `A_{F_0} → A_{F_1} → …` of multiplications by `σ`,
/// with `σ` taken in the truncation on the circle vertex alone.
pub fn sigma_directed_system(
    rep: &DiagramRep,
    chain: &[Subdiagram],
    circle: usize,
    depth: usize,
    taus: &TauTable,
) -> Result<SigmaSystem, BialgebraError> {
    let steps = depth.min(chain.len().saturating_sub(1));
    if steps == 0 {
        return Ok(SigmaSystem::default());
    }
    let single = Subdiagram::full(rep, &[circle]);
    let tc = Truncation::new(rep, &single)?;
    let sigma = rank_one_coefficient(rep, &tc, circle)?;
    let truncs = chain[..=steps]
        .iter()
        .map(|f| Truncation::new(rep, f))
        .collect::<Result<Vec<_>, _>>()?;
    let mut mats = Vec::new();
    for k in 0..steps {
        let frag = product_on_truncations(rep, &tc, &truncs[k], &truncs[k + 1], taus).map_err(
            |e| match e {
                BialgebraError::MissingProducts(s) => {
                    BialgebraError::MissingProducts(format!("level {k}: {s}"))
                }
                other => other,
            },
        )?;
        let m = frag
            .mu
            .mul(&RatMatrix::column_vector(&sigma).kron(&RatMatrix::identity(truncs[k].rank())));
        mats.push(m);
    }
    let mut out = Vec::new();
    for k in 0..steps {
        let mut composite = mats[k].clone();
        for m in &mats[k + 1..] {
            composite = m.mul(&composite);
        }
        out.push(SigmaStep {
            kernel: nullspace(&mats[k]),
            eventual_kernel: nullspace(&composite),
            matrix: mats[k].clone(),
        });
    }
    Ok(SigmaSystem { sigma, steps: out })
}
