//! Independent reference computations for the test suites: homology from raw
//! boundary matrices with a small machine-integer Smith reduction, and the
//! commutant of a quiver representation by direct elimination.

#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// All faces of the given facets, grouped by dimension and sorted.
pub fn closure(facets: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let mut all: BTreeSet<Vec<u32>> = BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        let n = f.len();
        for mask in 1u32..(1 << n) {
            all.insert(
                (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect(),
            );
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut by_dim = vec![Vec::new(); top];
    for s in all {
        by_dim[s.len() - 1].push(s);
    }
    by_dim
}

/// Boundary `C_n → C_{n-1}` of the relative chains, rows indexed by `(n-1)`-faces.
fn boundary(space: &[Vec<Vec<u32>>], sub: &BTreeSet<Vec<u32>>, n: usize) -> Vec<Vec<i128>> {
    let basis = |d: usize| -> Vec<&Vec<u32>> {
        space
            .get(d)
            .map(|v| v.iter().filter(|s| !sub.contains(*s)).collect())
            .unwrap_or_default()
    };
    let (cols, rows) = (basis(n), if n == 0 { Vec::new() } else { basis(n - 1) });
    let mut m = vec![vec![0i128; cols.len()]; rows.len()];
    for (j, s) in cols.iter().enumerate() {
        for i in 0..s.len() {
            let mut f = (*s).clone();
            f.remove(i);
            if let Some(r) = rows.iter().position(|t| **t == f) {
                m[r][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// Nonzero diagonal of a Smith form of a small integer matrix, by repeated
/// extraction of the least entry.
pub fn smith_diagonal(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if a[r][c] != 0 && best.is_none_or(|(br, bc)| a[r][c].abs() < a[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for r in t + 1..rows {
                let q = a[r][t] / p;
                for c in t..cols {
                    a[r][c] -= q * a[t][c];
                }
                dirty |= a[r][t] != 0;
            }
            for c in t + 1..cols {
                let q = a[t][c] / p;
                for row in a.iter_mut().skip(t) {
                    row[c] -= q * row[t];
                }
                dirty |= a[t][c] != 0;
            }
            if !dirty {
                // Divisibility: fold any entry of the block not divisible by p into row t.
                let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a[r][c] % p != 0));
                match bad {
                    Some(r) => {
                        for c in t..cols {
                            a[t][c] += a[r][c];
                        }
                    }
                    None => break,
                }
                continue;
            }
            // Move the least nonzero entry of row/column t to the pivot.
            let mut best = (t, t);
            for r in t..rows {
                if a[r][t] != 0 && a[r][t].abs() < a[best.0][best.1].abs() {
                    best = (r, t);
                }
            }
            for c in t..cols {
                if a[t][c] != 0 && a[t][c].abs() < a[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

/// `(free rank, torsion orders > 1)` of `H_n(X, Z; ℤ)` for every `n` up to the
/// dimension of `X`.
pub fn integral_homology(facets: &[Vec<u32>], sub_facets: &[Vec<u32>]) -> Vec<(usize, Vec<i128>)> {
    let space = closure(facets);
    let sub: BTreeSet<Vec<u32>> = closure(sub_facets).into_iter().flatten().collect();
    let chain_rank = |n: usize| {
        space
            .get(n)
            .map_or(0, |v| v.iter().filter(|s| !sub.contains(*s)).count())
    };
    (0..space.len())
        .map(|n| {
            let out_rank = if n == 0 {
                0
            } else {
                smith_diagonal(boundary(&space, &sub, n)).len()
            };
            let incoming = smith_diagonal(boundary(&space, &sub, n + 1));
            let free = chain_rank(n) - out_rank - incoming.len();
            (free, incoming.into_iter().filter(|&d| d != 1).collect())
        })
        .collect()
}

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rank of a rational matrix given by rows.
pub fn rank(mut m: Vec<Vec<Q>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for k in c..cols {
                    let v = &f * &m[r][k];
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// A quiver representation over ℚ: ranks per vertex and `(source, target, rows)`
/// edges with `target rank × source rank` integer matrices.
#[derive(Clone, Debug)]
pub struct Quiver {
    pub ranks: Vec<usize>,
    pub edges: Vec<(usize, usize, Vec<Vec<i64>>)>,
}

impl Quiver {
    fn offsets(&self) -> Vec<usize> {
        self.ranks
            .iter()
            .scan(0, |acc, r| {
                let o = *acc;
                *acc += r * r;
                Some(o)
            })
            .collect()
    }

    /// One linear equation per entry of `M·φ_s − φ_t·M`, in the unknowns
    /// `φ_v[a][b]` laid out vertex by vertex, row-major.
    pub fn commutation_equations(&self) -> Vec<Vec<Q>> {
        let off = self.offsets();
        let n: usize = self.ranks.iter().map(|r| r * r).sum();
        let mut eqs = Vec::new();
        for (s, t, m) in &self.edges {
            let (rs, rt) = (self.ranks[*s], self.ranks[*t]);
            for i in 0..rt {
                for j in 0..rs {
                    let mut e = vec![q(0); n];
                    for k in 0..rs {
                        e[off[*s] + k * rs + j] += q(m[i][k]);
                    }
                    for k in 0..rt {
                        e[off[*t] + i * rt + k] -= q(m[k][j]);
                    }
                    eqs.push(e);
                }
            }
        }
        eqs
    }

    /// Dimension of the commutant: unknowns minus the rank of the equations.
    pub fn commutant_dim(&self) -> usize {
        let n: usize = self.ranks.iter().map(|r| r * r).sum();
        n - rank(self.commutation_equations())
    }

    /// Whether a family `φ_v` (per-vertex square matrices) commutes with every edge.
    pub fn commutes(&self, family: &[Vec<Vec<Q>>]) -> bool {
        self.edges.iter().all(|(s, t, m)| {
            let (rs, rt) = (self.ranks[*s], self.ranks[*t]);
            (0..rt).all(|i| {
                (0..rs).all(|j| {
                    let lhs: Q = (0..rs).map(|k| q(m[i][k]) * &family[*s][k][j]).sum();
                    let rhs: Q = (0..rt).map(|k| &family[*t][i][k] * q(m[k][j])).sum();
                    lhs == rhs
                })
            })
        })
    }
}
