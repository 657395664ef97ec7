//! Gauss–Jordan elimination over ℚ.

use num_traits::{One, Zero};

use super::matrix::{Rat, RatMatrix};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a.get(r, c).recip();
        for j in 0..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i != r && !a.get(i, c).is_zero() {
                let k = -a.get(i, c).clone();
                a.add_row_multiple(i, r, &k);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).1.len()
}

/// Basis of `{x : m·x = 0}` as the columns of the result, one per free column.
pub fn nullspace(m: &RatMatrix) -> RatMatrix {
    let (r, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    RatMatrix::from_fn(cols, free.len(), |row, k| {
        let f = free[k];
        if row == f {
            Rat::one()
        } else if let Some(pi) = pivots.iter().position(|&p| p == row) {
            -r.get(pi, f).clone()
        } else {
            Rat::zero()
        }
    })
}

pub fn determinant(m: &RatMatrix) -> Rat {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            a.swap_rows(p, c);
            det = -det;
        }
        let piv = a.get(c, c).clone();
        det *= &piv;
        for i in c + 1..n {
            if !a.get(i, c).is_zero() {
                let k = -(a.get(i, c) / &piv);
                a.add_row_multiple(i, c, &k);
            }
        }
    }
    det
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    if !m.is_square() {
        return None;
    }
    let n = m.rows();
    let (r, pivots) = rref(&m.hstack(&RatMatrix::identity(n)));
    if pivots.len() < n || (n > 0 && pivots[n - 1] != n - 1) {
        return None;
    }
    Some(RatMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

/// Some solution of `a·x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    RatSolver::new(a).solve(b)
}

/// Caches the elimination of a coefficient matrix for repeated solves.
#[derive(Clone, Debug)]
pub struct RatSolver {
    cols: usize,
    /// Transform `T` with `T·a = R` in reduced echelon form.
    transform: RatMatrix,
    pivots: Vec<usize>,
}

impl RatSolver {
    pub fn new(a: &RatMatrix) -> Self {
        let rows = a.rows();
        let (r, pivots) = rref(&a.hstack(&RatMatrix::identity(rows)));
        let pivots: Vec<usize> = pivots.into_iter().filter(|&p| p < a.cols()).collect();
        let transform = RatMatrix::from_fn(rows, rows, |i, j| r.get(i, a.cols() + j).clone());
        RatSolver {
            cols: a.cols(),
            transform,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        let tb = self.transform.mul_vec(b);
        if tb[self.pivots.len()..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = tb[i].clone();
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_vec};

    #[test]
    fn nullspace_annihilates() {
        let m = RatMatrix::from_i64(2, 4, &[1, 2, 0, 1, 2, 4, 1, 0]);
        let k = nullspace(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn inverse_and_det() {
        let m = RatMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(determinant(&m), rat(1));
        let inv = inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(inverse(&RatMatrix::from_i64(2, 2, &[1, 2, 2, 4])).is_none());
    }

    #[test]
    fn solver_consistency() {
        let a = RatMatrix::from_i64(3, 2, &[1, 0, 0, 1, 1, 1]);
        let s = RatSolver::new(&a);
        assert_eq!(s.solve(&rat_vec(&[2, 3, 5])), Some(rat_vec(&[2, 3])));
        assert_eq!(s.solve(&rat_vec(&[2, 3, 4])), None);
    }
}
