use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{Int, IntMatrix};

/// Smith normal form `U·A·V = D` with unimodular `U`, `V`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `d`, each dividing the next.
    pub invariant_factors: Vec<Int>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Number of leading invariant factors equal to one.
    pub fn unit_count(&self) -> usize {
        self.invariant_factors
            .iter()
            .take_while(|d| d.is_one_abs())
            .count()
    }
}

trait AbsOne {
    fn is_one_abs(&self) -> bool;
}

impl AbsOne for Int {
    fn is_one_abs(&self) -> bool {
        self.abs() == Int::from(1)
    }
}

/// Position of the nonzero entry of least absolute value in the trailing block.
fn smallest_in_block(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for r in t..d.rows() {
        for c in t..d.cols() {
            let x = d.get(r, c);
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| a < *b) {
                best = Some((r, c, a));
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

/// Smallest nonzero entry among the pivot row and pivot column.
fn smallest_in_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, d.get(t, t).abs());
    for r in t + 1..d.rows() {
        let a = d.get(r, t).abs();
        if !a.is_zero() && (best.2.is_zero() || a < best.2) {
            best = (r, t, a);
        }
    }
    for c in t + 1..d.cols() {
        let a = d.get(t, c).abs();
        if !a.is_zero() && (best.2.is_zero() || a < best.2) {
            best = (t, c, a);
        }
    }
    (best.0, best.1)
}

/// Computes the Smith normal form of an integer matrix.
///
/// Pivots are chosen by least absolute value to limit coefficient growth.
/// Row operations are mirrored on `U` and column operations on `V`, so the
/// returned triple satisfies `U·A·V = D` exactly.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    let mut t = 0;
    while t < m.min(n) {
        let Some((pr, pc)) = smallest_in_block(&d, t) else {
            break;
        };
        d.swap_rows(t, pr);
        u.swap_rows(t, pr);
        d.swap_cols(t, pc);
        v.swap_cols(t, pc);

        loop {
            let pivot = d.get(t, t).clone();
            let mut clean = true;
            for r in t + 1..m {
                if d.get(r, t).is_zero() {
                    continue;
                }
                let q = -d.get(r, t).div_floor(&pivot);
                d.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                if !d.get(r, t).is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..n {
                if d.get(t, c).is_zero() {
                    continue;
                }
                let q = -d.get(t, c).div_floor(&pivot);
                d.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                if !d.get(t, c).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (r, c) = smallest_in_cross(&d, t);
                d.swap_rows(t, r);
                u.swap_rows(t, r);
                d.swap_cols(t, c);
                v.swap_cols(t, c);
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending =
                (t + 1..m).find(|&r| (t + 1..n).any(|c| !d.get(r, c).is_multiple_of(&pivot)));
            match offending {
                Some(r) => {
                    let one = Int::from(1);
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let invariant_factors = (0..m.min(n))
        .map(|i| d.get(i, i).clone())
        .filter(|x| !x.is_zero())
        .collect();
    SmithForm {
        u,
        d,
        v,
        invariant_factors,
    }
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let inv = super::rational::inverse(&u.to_rat()).expect("unimodular matrix must be invertible");
    inv.to_int()
        .expect("inverse of a unimodular matrix is integral")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::determinant;

    fn check(a: &IntMatrix) -> SmithForm {
        let sf = smith_normal_form(a);
        assert_eq!(sf.u.mul(a).mul(&sf.v), sf.d);
        assert_eq!(determinant(&sf.u.to_rat()).abs(), crate::linalg::rat(1));
        assert_eq!(determinant(&sf.v.to_rat()).abs(), crate::linalg::rat(1));
        for w in sf.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        sf
    }

    #[test]
    fn diag_two_three() {
        let sf = check(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(sf.invariant_factors, vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn identity_and_zero() {
        let sf = check(&IntMatrix::identity(3));
        assert_eq!(sf.d, IntMatrix::identity(3));
        assert_eq!(sf.invariant_factors, vec![Int::from(1); 3]);
        let sf = check(&IntMatrix::zeros(2, 2));
        assert!(sf.d.is_zero());
        assert!(sf.invariant_factors.is_empty());
    }

    #[test]
    fn rectangular_and_empty() {
        let sf = check(&IntMatrix::from_i64(2, 3, &[2, 4, 4, -6, 6, 12]));
        assert_eq!(sf.invariant_factors, vec![Int::from(2), Int::from(6)]);
        let sf = check(&IntMatrix::zeros(0, 3));
        assert!(sf.invariant_factors.is_empty());
        check(&IntMatrix::zeros(4, 0));
    }
}
