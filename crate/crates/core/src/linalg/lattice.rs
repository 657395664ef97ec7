//! Integer lattices: Hermite normal form, saturated kernels, membership.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, IntMatrix};
use super::smith::{smith_normal_form, SmithForm};

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into `[0, pivot)`, zero rows last. Two matrices have the same row
/// lattice iff their forms agree.
pub fn row_hnf(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if a.get(i, c).is_zero() {
                continue;
            }
            if a.get(r, c).is_zero() {
                a.swap_rows(r, i);
                continue;
            }
            let (x0, y0) = (a.get(r, c).clone(), a.get(i, c).clone());
            let eg = x0.extended_gcd(&y0);
            let (p, q) = (&x0 / &eg.gcd, &y0 / &eg.gcd);
            for j in c..cols {
                let (s, t) = (a.get(r, j).clone(), a.get(i, j).clone());
                a.set(r, j, &eg.x * &s + &eg.y * &t);
                a.set(i, j, &p * &t - &q * &s);
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            a.negate_row(r);
        }
        let piv = a.get(r, c).clone();
        for i in 0..r {
            let k = -a.get(i, c).div_floor(&piv);
            a.add_row_multiple(i, r, &k);
        }
        r += 1;
    }
    a
}

fn nonzero_rows(m: &IntMatrix) -> IntMatrix {
    let keep: Vec<usize> = (0..m.rows())
        .filter(|&r| m.row(r).iter().any(|x| !x.is_zero()))
        .collect();
    m.select_rows(&keep)
}

/// Canonical basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn lattice_basis(gens: &IntMatrix) -> IntMatrix {
    nonzero_rows(&row_hnf(&gens.transpose())).transpose()
}

/// Saturated basis of `{x ∈ ℤⁿ : a·x = 0}` as columns, in Hermite form.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let sf = smith_normal_form(a);
    let r = sf.rank();
    let idx: Vec<usize> = (r..a.cols()).collect();
    let raw = sf.v.select_columns(&idx);
    if raw.cols() == 0 {
        return raw;
    }
    lattice_basis(&raw)
}

/// True if the column lattice of `basis` equals its rational span intersected with ℤⁿ.
pub fn is_saturated(basis: &IntMatrix) -> bool {
    let sf = smith_normal_form(basis);
    sf.invariant_factors.iter().all(|d| d.abs() == Int::from(1))
}

/// Solves `gens·c = v` over ℤ using a cached Smith form of `gens`.
#[derive(Clone, Debug)]
pub struct IntSolver {
    smith: SmithForm,
}

impl IntSolver {
    pub fn new(gens: &IntMatrix) -> Self {
        IntSolver {
            smith: smith_normal_form(gens),
        }
    }

    pub fn rank(&self) -> usize {
        self.smith.rank()
    }

    /// Integer coordinates `c` with `gens·c = v`, or `None` if `v` is not in the lattice.
    pub fn solve(&self, v: &[Int]) -> Option<Vec<Int>> {
        let w = self.smith.u.mul_vec(v);
        let r = self.smith.rank();
        if w[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![Int::zero(); self.smith.v.rows()];
        for i in 0..r {
            let d = self.smith.d.get(i, i);
            if !w[i].is_multiple_of(d) {
                return None;
            }
            y[i] = &w[i] / d;
        }
        Some(self.smith.v.mul_vec(&y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    #[test]
    fn hnf_is_canonical() {
        let a = IntMatrix::from_i64(2, 3, &[2, 4, 6, 1, 1, 1]);
        let b = IntMatrix::from_i64(2, 3, &[3, 5, 7, 1, 1, 1]);
        assert_eq!(row_hnf(&a), row_hnf(&b));
    }

    #[test]
    fn kernel_is_saturated() {
        let a = IntMatrix::from_i64(1, 3, &[2, 4, 6]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert!(is_saturated(&k));
    }

    #[test]
    fn membership_over_integers() {
        let gens = IntMatrix::from_i64(2, 2, &[2, 0, 0, 2]);
        let s = IntSolver::new(&gens);
        assert_eq!(s.solve(&[int(2), int(4)]), Some(vec![int(1), int(2)]));
        assert_eq!(s.solve(&[int(0), int(0)]), Some(vec![int(0), int(0)]));
        assert_eq!(s.solve(&[int(1), int(0)]), None);
    }
}
