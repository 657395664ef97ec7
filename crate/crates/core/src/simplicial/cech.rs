//! Total complex of the Čech/divisor tricomplex of a covered pair.

use std::collections::BTreeMap;

use super::chain::{ChainComplex, PairHomology};
use super::complex::{SimplicialComplex, SimplicialPair};
use super::SimplicialError;
use crate::linalg::{FgModule, Int, IntMatrix, Ring};

/// Nonempty subsets of `0..n`, as increasing index lists, by size then lexicographically.
fn subsets(n: usize, allow_empty: bool) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| allow_empty || !s.is_empty())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn without(s: &[usize], l: usize) -> Vec<usize> {
    let mut v = s.to_vec();
    v.remove(l);
    v
}

fn sign(e: usize) -> Int {
    if e.is_multiple_of(2) {
        Int::from(1)
    } else {
        Int::from(-1)
    }
}

/// A covered space with a decomposition of its subcomplex into components.
#[derive(Clone, Debug)]
pub struct CechData {
    x: SimplicialComplex,
    cover: Vec<SimplicialComplex>,
    components: Vec<SimplicialComplex>,
}

impl CechData {
    pub fn new(
        x: SimplicialComplex,
        cover: Vec<SimplicialComplex>,
        components: Vec<SimplicialComplex>,
    ) -> Result<Self, SimplicialError> {
        if cover.is_empty() && !x.is_empty() {
            return Err(SimplicialError::NotACover("no cover sets".into()));
        }
        let mut union = SimplicialComplex::empty(x.labels().clone());
        for (a, y) in cover.iter().enumerate() {
            if !y.is_subcomplex_of(&x) {
                return Err(SimplicialError::NotACover(format!(
                    "cover set {a} is not a subcomplex"
                )));
            }
            union = union.union(y);
        }
        if union != x {
            return Err(SimplicialError::NotACover(
                "cover sets do not exhaust the complex".into(),
            ));
        }
        if components.iter().any(|z| !z.is_subcomplex_of(&x)) {
            return Err(SimplicialError::NotASubcomplex);
        }
        Ok(CechData {
            x,
            cover,
            components,
        })
    }

    pub fn space(&self) -> &SimplicialComplex {
        &self.x
    }

    /// Union of the components.
    pub fn divisor(&self) -> SimplicialComplex {
        self.components.iter().fold(
            SimplicialComplex::empty(self.x.labels().clone()),
            |acc, z| acc.union(z),
        )
    }

    pub fn pair(&self) -> SimplicialPair {
        SimplicialPair::new(self.x.clone(), self.divisor()).expect("components lie in x")
    }

    /// `Y_A ∩ Z_B`, with the empty intersection of components meaning `X`.
    fn piece(&self, a: &[usize], b: &[usize]) -> SimplicialComplex {
        let mut k = self.cover[a[0]].clone();
        for &i in &a[1..] {
            k = k.intersection(&self.cover[i]);
        }
        for &j in b {
            k = k.intersection(&self.components[j]);
        }
        k
    }

    /// The total complex: the `(i, j, k)` term is `C_k(Y_{a₀…aᵢ} ∩ Z_{b₁…b_j})` in degree `i + j + k`,
    /// with differential `∂ + (−1)^k d_Čech + (−1)^{k+i} d_div`.
    pub fn total_complex(&self, ring: Ring) -> ChainComplex {
        let aa = subsets(self.cover.len(), false);
        let bb = subsets(self.components.len(), true);
        let mut pieces = BTreeMap::new();
        for a in &aa {
            for b in &bb {
                pieces.insert((a.clone(), b.clone()), self.piece(a, b));
            }
        }
        let top = (self.x.dim() + 1).max(0) as usize + self.cover.len() + self.components.len();
        // blocks[n]: ((A, B, k), offset), in canonical order.
        let mut blocks: Vec<BTreeMap<(Vec<usize>, Vec<usize>, usize), usize>> =
            vec![BTreeMap::new(); top];
        let mut ranks = vec![0usize; top];
        for a in &aa {
            for b in &bb {
                let piece = &pieces[&(a.clone(), b.clone())];
                if piece.is_empty() {
                    continue;
                }
                for k in 0..=piece.dim() as usize {
                    let n = a.len() - 1 + b.len() + k;
                    blocks[n].insert((a.clone(), b.clone(), k), 0);
                }
            }
        }
        for n in 0..top {
            let mut acc = 0;
            for ((a, b, k), off) in blocks[n].iter_mut() {
                *off = acc;
                acc += pieces[&(a.clone(), b.clone())].count(*k);
            }
            ranks[n] = acc;
        }
        while ranks.last() == Some(&0) {
            ranks.pop();
        }
        let mut diffs = Vec::new();
        for n in 1..ranks.len() {
            let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
            for ((a, b, k), &off) in &blocks[n] {
                let (k, i) = (*k, a.len() - 1);
                let piece = &pieces[&(a.clone(), b.clone())];
                for (c, s) in piece.simplices(k).iter().enumerate() {
                    let col = off + c;
                    if k > 0 {
                        let tgt = &blocks[n - 1][&(a.clone(), b.clone(), k - 1)];
                        for (e, f) in s.boundary() {
                            let r = tgt + piece.index_of(&f).expect("faces stay in the piece");
                            m.set(r, col, Int::from(e));
                        }
                    }
                    if a.len() > 1 {
                        for l in 0..a.len() {
                            let a2 = without(a, l);
                            let bigger = &pieces[&(a2.clone(), b.clone())];
                            let r = blocks[n - 1][&(a2, b.clone(), k)]
                                + bigger.index_of(s).expect("inclusion");
                            m.set(r, col, sign(k + l));
                        }
                    }
                    for l in 0..b.len() {
                        let b2 = without(b, l);
                        let bigger = &pieces[&(a.clone(), b2.clone())];
                        let r = blocks[n - 1][&(a.clone(), b2, k)]
                            + bigger.index_of(s).expect("inclusion");
                        m.set(r, col, sign(k + i + l));
                    }
                }
            }
            diffs.push(m);
        }
        ChainComplex::new(ring, ranks, diffs).expect("tricomplex differential squares to zero")
    }
}

/// Homology of the total complex, degree by degree.
pub fn cech_total_complex(
    x: &SimplicialComplex,
    cover: &[SimplicialComplex],
    components: &[SimplicialComplex],
    ring: Ring,
) -> Result<ChainComplex, SimplicialError> {
    Ok(CechData::new(x.clone(), cover.to_vec(), components.to_vec())?.total_complex(ring))
}

/// Per-degree `(total-complex homology, h_n(X, ∪Z_b))`, over all degrees of either.
pub fn cech_comparison(
    data: &CechData,
    ring: Ring,
) -> Result<Vec<(FgModule, FgModule)>, SimplicialError> {
    let tot = data.total_complex(ring).homology_modules()?;
    let rel = PairHomology::new(&data.pair(), ring)?;
    let n = tot.len().max(rel.degrees());
    Ok((0..n)
        .map(|d| {
            (
                tot.get(d).cloned().unwrap_or_else(|| FgModule::zero(ring)),
                rel.module(d),
            )
        })
        .collect())
}
