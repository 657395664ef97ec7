//! Products of pairs via the staircase triangulation, and the shuffle and
//! front/back-face chain maps between `C(X) ⊗ C(Y)` and `C(X × Y)`.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;

use super::chain::{ChainComplex, PairHomology, RelativeChains};
use super::complex::{Simplex, SimplicialComplex, SimplicialPair, Vertex};
use super::SimplicialError;
use crate::linalg::{Int, IntMatrix, Ring};

/// Vertex id of `(a, b)` in a product whose right factor has `right_size` vertices.
pub fn product_vertex(a: Vertex, b: Vertex, right_size: usize) -> Vertex {
    a * right_size as Vertex + b
}

/// Inverse of [`product_vertex`].
pub fn split_vertex(v: Vertex, right_size: usize) -> (Vertex, Vertex) {
    (v / right_size as Vertex, v % right_size as Vertex)
}

/// Lattice paths from `(0,0)` to `(p,q)`, as step lists (`false` = left step).
fn shuffles(p: usize, q: usize) -> Vec<Vec<bool>> {
    fn go(p: usize, q: usize, acc: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        if p == 0 && q == 0 {
            out.push(acc.clone());
            return;
        }
        if p > 0 {
            acc.push(false);
            go(p - 1, q, acc, out);
            acc.pop();
        }
        if q > 0 {
            acc.push(true);
            go(p, q - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(p, q, &mut Vec::new(), &mut out);
    out
}

/// Sign of the shuffle: one factor of `-1` for every (right step, later left step) pair.
fn shuffle_sign(path: &[bool]) -> i64 {
    let mut rights = 0usize;
    let mut inversions = 0usize;
    for &step in path {
        if step {
            rights += 1;
        } else {
            inversions += rights;
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Vertices of the prism simplex walking `path` through `σ × τ`.
fn walk(s: &Simplex, t: &Simplex, path: &[bool], right_size: usize) -> Vec<Vertex> {
    let (mut i, mut j) = (0, 0);
    let mut out = vec![product_vertex(s.vertices()[0], t.vertices()[0], right_size)];
    for &step in path {
        if step {
            j += 1;
        } else {
            i += 1;
        }
        out.push(product_vertex(s.vertices()[i], t.vertices()[j], right_size));
    }
    out
}

/// Shuffle (Eilenberg–Zilber) product of two simplices, as signed prism simplices.
pub fn shuffle_product(s: &Simplex, t: &Simplex, right_size: usize) -> Vec<(i64, Simplex)> {
    shuffles(s.dim(), t.dim())
        .into_iter()
        .map(|path| {
            (
                shuffle_sign(&path),
                Simplex::from_sorted(walk(s, t, &path, right_size)),
            )
        })
        .collect()
}

pub(crate) fn product_labels(x: &SimplicialComplex, y: &SimplicialComplex) -> Arc<[String]> {
    let mut labels = Vec::with_capacity(x.universe_size() * y.universe_size());
    for a in x.labels().iter() {
        for b in y.labels().iter() {
            labels.push(format!("({a},{b})"));
        }
    }
    labels.into()
}

pub(crate) fn staircase(
    labels: Arc<[String]>,
    x: &SimplicialComplex,
    y: &SimplicialComplex,
) -> SimplicialComplex {
    let ny = y.universe_size();
    let mut set = BTreeSet::new();
    for s in x.facets() {
        for t in y.facets() {
            for path in shuffles(s.dim(), t.dim()) {
                set.extend(Simplex::from_sorted(walk(&s, &t, &path, ny)).all_faces());
            }
        }
    }
    SimplicialComplex::from_set(labels, set)
}

/// `X × Y` on the universe of vertex pairs, ordered lexicographically.
pub fn product_complex(x: &SimplicialComplex, y: &SimplicialComplex) -> SimplicialComplex {
    staircase(product_labels(x, y), x, y)
}

/// `(X₁ × X₂, Z₁ × X₂ ∪ X₁ × Z₂)`.
pub fn product_pair(p1: &SimplicialPair, p2: &SimplicialPair) -> SimplicialPair {
    let (x1, x2) = (p1.space(), p2.space());
    let labels = product_labels(x1, x2);
    let x = staircase(labels.clone(), x1, x2);
    let z = staircase(labels.clone(), p1.sub(), x2).union(&staircase(labels, x1, p2.sub()));
    SimplicialPair::new(x, z).expect("product of subcomplexes is a subcomplex")
}

/// The tensor product of two relative chain complexes with its block layout.
#[derive(Clone, Debug)]
pub struct TensorChains {
    left: RelativeChains,
    right: RelativeChains,
    /// `offsets[n][p]`: start of the `C_p ⊗ C_{n-p}` block in degree `n`.
    offsets: Vec<Vec<usize>>,
    complex: ChainComplex,
}

impl TensorChains {
    pub fn new(left: RelativeChains, right: RelativeChains) -> Self {
        let ring = left.complex().ring();
        let top = left.complex().len() + right.complex().len();
        let top = top.saturating_sub(1);
        let mut offsets = Vec::new();
        let mut ranks = Vec::new();
        for n in 0..top {
            let mut off = Vec::with_capacity(n + 1);
            let mut acc = 0;
            for p in 0..=n {
                off.push(acc);
                acc += left.rank(p) * right.rank(n - p);
            }
            offsets.push(off);
            ranks.push(acc);
        }
        let mut t = TensorChains {
            left,
            right,
            offsets,
            complex: ChainComplex::new(ring, vec![], vec![]).unwrap(),
        };
        let mut diffs = Vec::new();
        for n in 1..ranks.len() {
            let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for p in 0..=n {
                let q = n - p;
                let dl = t.left.complex().boundary(p);
                let dr = t.right.complex().boundary(q);
                let sign = if p % 2 == 0 {
                    Int::from(1)
                } else {
                    Int::from(-1)
                };
                for i in 0..t.left.rank(p) {
                    for j in 0..t.right.rank(q) {
                        let c = t.index(n, p, i, j);
                        if p > 0 {
                            for r in 0..t.left.rank(p - 1) {
                                let e = dl.get(r, i);
                                if !e.is_zero() {
                                    let row = t.index(n - 1, p - 1, r, j);
                                    let v = m.get(row, c) + e;
                                    m.set(row, c, v);
                                }
                            }
                        }
                        if q > 0 {
                            for r in 0..t.right.rank(q - 1) {
                                let e = dr.get(r, j);
                                if !e.is_zero() {
                                    let row = t.index(n - 1, p, i, r);
                                    let v = m.get(row, c) + &sign * e;
                                    m.set(row, c, v);
                                }
                            }
                        }
                    }
                }
            }
            diffs.push(m);
        }
        t.complex =
            ChainComplex::new(ring, ranks, diffs).expect("tensor differential squares to zero");
        t
    }

    pub fn left(&self) -> &RelativeChains {
        &self.left
    }

    pub fn right(&self) -> &RelativeChains {
        &self.right
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn rank(&self, n: usize) -> usize {
        self.complex.rank(n)
    }

    /// Position of `left_basis(p)[i] ⊗ right_basis(n-p)[j]` in degree `n`.
    pub fn index(&self, n: usize, p: usize, i: usize, j: usize) -> usize {
        self.offsets[n][p] + i * self.right.rank(n - p) + j
    }

    /// Inverse of [`TensorChains::index`].
    pub fn locate(&self, n: usize, idx: usize) -> (usize, usize, usize) {
        let p = (0..=n)
            .rev()
            .find(|&p| self.offsets[n][p] <= idx && self.left.rank(p) * self.right.rank(n - p) > 0)
            .expect("index inside the degree");
        let local = idx - self.offsets[n][p];
        let w = self.right.rank(n - p);
        (p, local / w, local % w)
    }
}

/// Chains of a product pair together with the shuffle (EZ) and front/back (AW) maps.
#[derive(Clone, Debug)]
pub struct ProductChains {
    pub tensor: TensorChains,
    pub product: RelativeChains,
    /// Degreewise `C(X)⊗C(Y) → C(X×Y)`.
    pub ez: Vec<IntMatrix>,
    /// Degreewise `C(X×Y) → C(X)⊗C(Y)`.
    pub aw: Vec<IntMatrix>,
}

/// EZ and AW between the relative chains of `p1 ⊗ p2` and of their product pair.
pub fn ez_aw_maps(p1: &SimplicialPair, p2: &SimplicialPair, ring: Ring) -> ProductChains {
    let tensor = TensorChains::new(RelativeChains::new(p1, ring), RelativeChains::new(p2, ring));
    let product = RelativeChains::new(&product_pair(p1, p2), ring);
    let ny = p2.space().universe_size();
    let top = tensor.complex().len().max(product.complex().len());
    let mut ez = Vec::with_capacity(top);
    let mut aw = Vec::with_capacity(top);
    for n in 0..top {
        let mut e = IntMatrix::zeros(product.rank(n), tensor.rank(n));
        for p in 0..=n {
            let q = n - p;
            for (i, s) in tensor.left().basis(p).iter().enumerate() {
                for (j, t) in tensor.right().basis(q).iter().enumerate() {
                    let c = tensor.index(n, p, i, j);
                    for (sign, simplex) in shuffle_product(s, t, ny) {
                        if let Some(r) = product.index(n, &simplex) {
                            let v = e.get(r, c) + Int::from(sign);
                            e.set(r, c, v);
                        }
                    }
                }
            }
        }
        ez.push(e);

        let mut a = IntMatrix::zeros(tensor.rank(n), product.rank(n));
        for (c, s) in product.basis(n).iter().enumerate() {
            let pairs: Vec<(Vertex, Vertex)> =
                s.vertices().iter().map(|&v| split_vertex(v, ny)).collect();
            for k in 0..=n {
                let front: Vec<Vertex> = pairs[..=k].iter().map(|x| x.0).collect();
                let back: Vec<Vertex> = pairs[k..].iter().map(|x| x.1).collect();
                if front.windows(2).any(|w| w[0] == w[1]) || back.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let (f, b) = (Simplex::from_sorted(front), Simplex::from_sorted(back));
                if let (Some(i), Some(j)) =
                    (tensor.left().index(k, &f), tensor.right().index(n - k, &b))
                {
                    let r = tensor.index(n, k, i, j);
                    let v = a.get(r, c) + Int::from(1);
                    a.set(r, c, v);
                }
            }
        }
        aw.push(a);
    }
    ProductChains {
        tensor,
        product,
        ez,
        aw,
    }
}

impl ProductChains {
    /// `∂ ∘ f = f ∘ ∂` in every degree for the given degreewise maps.
    fn commutes(&self, maps: &[IntMatrix], src: &ChainComplex, dst: &ChainComplex) -> bool {
        (1..maps.len()).all(|n| dst.boundary(n).mul(&maps[n]) == maps[n - 1].mul(&src.boundary(n)))
    }

    pub fn ez_is_chain_map(&self) -> bool {
        self.commutes(&self.ez, self.tensor.complex(), self.product.complex())
    }

    pub fn aw_is_chain_map(&self) -> bool {
        self.commutes(&self.aw, self.product.complex(), self.tensor.complex())
    }

    /// `AW ∘ EZ = id` exactly, in every degree.
    pub fn aw_ez_is_identity(&self) -> bool {
        self.ez
            .iter()
            .zip(&self.aw)
            .all(|(e, a)| a.mul(e) == IntMatrix::identity(e.cols()))
    }

    /// `EZ ∘ AW` induces the identity on homology in every degree.
    pub fn ez_aw_is_identity_on_homology(&self) -> Result<bool, SimplicialError> {
        let c = self.product.complex();
        for n in 0..self.ez.len() {
            let h = c.homology(n)?;
            let m = self.ez[n].mul(&self.aw[n]).to_rat();
            let induced = h.induced_map(&h, &m)?;
            if induced.matrix() != &crate::linalg::RatMatrix::identity(h.module().generators()) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Per-degree ranks `(rank h_n(X×Y), Σ_{p+q=n} rank h_p(X)·rank h_q(Y))` over ℚ.
pub fn kunneth_ranks(
    p1: &SimplicialPair,
    p2: &SimplicialPair,
) -> Result<Vec<(usize, usize)>, SimplicialError> {
    let h1 = PairHomology::new(p1, Ring::Q)?;
    let h2 = PairHomology::new(p2, Ring::Q)?;
    let hp = PairHomology::new(&product_pair(p1, p2), Ring::Q)?;
    let degrees = (h1.degrees() + h2.degrees()).saturating_sub(1);
    Ok((0..degrees)
        .map(|n| {
            let rhs = (0..=n)
                .map(|p| h1.module(p).free_rank() * h2.module(n - p).free_rank())
                .sum();
            (hp.module(n).free_rank(), rhs)
        })
        .collect())
}
