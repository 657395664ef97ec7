//! Property tests for the exact linear algebra and simplicial layers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use nori_core::linalg::{
    dual_map, int, rat, smith_normal_form, FgModule, Int, IntMatrix, ModuleMap, RatMatrix, Ring,
    Subquotient,
};
use nori_core::simplicial::{
    cup_cochains, les_exactness, models, relative_homology, RelativeChains, SimplicialComplex,
    SimplicialPair,
};

/// Determinant by fraction-free elimination.
fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a: Vec<Vec<BigInt>> = m.to_rows();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &a[n - 1][n - 1]
    }
}

fn int_matrix(max: usize, entry: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-entry..=entry, r * c)
            .prop_map(move |d| IntMatrix::from_i64(r, c, &d))
    })
}

fn check_smith(a: &IntMatrix) -> Result<(), TestCaseError> {
    let s = smith_normal_form(a);
    prop_assert_eq!(&s.u.mul(a).mul(&s.v), &s.d);
    prop_assert!(det(&s.u).abs().is_one());
    prop_assert!(det(&s.v).abs().is_one());
    let mut diag = Vec::new();
    for r in 0..s.d.rows() {
        for c in 0..s.d.cols() {
            let x = s.d.get(r, c);
            if r != c {
                prop_assert!(x.is_zero());
            } else if !x.is_zero() {
                prop_assert!(x.is_positive());
                prop_assert_eq!(diag.len(), r, "zero diagonal entry before a nonzero one");
                diag.push(x.clone());
            }
        }
    }
    for w in diag.windows(2) {
        prop_assert!((&w[1] % &w[0]).is_zero());
    }
    prop_assert_eq!(diag, s.invariant_factors);
    Ok(())
}

/// Elementary row operations `(i, j, k)`: row i += k·row j.
fn unimodular(n: usize) -> impl Strategy<Value = (IntMatrix, IntMatrix)> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..3 * n).prop_map(move |ops| {
        let mut p = IntMatrix::identity(n);
        let mut inv = IntMatrix::identity(n);
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            p.add_row_multiple(i, j, &int(k));
            inv.add_col_multiple(j, i, &int(-k));
        }
        (p, inv)
    })
}

/// `(gcd, lcm)` normalisation of a diagonal into invariant factors, ones dropped.
fn invariant_factors(mut d: Vec<Int>) -> Vec<Int> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (g, l) = (d[i].gcd(&d[j]), d[i].lcm(&d[j]));
            d[i] = g;
            d[j] = l;
        }
    }
    d.into_iter().filter(|x| !x.is_one()).collect()
}

/// A free ambient module with a cycle submodule of rank `cycles` and
/// boundaries `diag(factors)` inside it, hidden behind random base changes.
#[derive(Debug, Clone)]
struct Hidden {
    d_in: IntMatrix,
    d_out: IntMatrix,
    cycles: usize,
    factors: Vec<i64>,
}

fn hidden_subquotient() -> impl Strategy<Value = Hidden> {
    (2usize..=5)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, c)| {
            (
                Just(n),
                Just(c),
                prop::collection::vec(1i64..=6, 0..=c),
                0usize..=2,
                0usize..=2,
            )
        })
        .prop_flat_map(|(n, c, factors, extra_cols, extra_rows)| {
            let k = factors.len() + extra_cols;
            let m = n - c + extra_rows;
            (
                Just((n, c, factors, k, m)),
                unimodular(n),
                unimodular(k.max(1)),
                prop::collection::vec(-3i64..=3, extra_rows * (n - c)),
            )
        })
        .prop_map(|((n, c, factors, k, m), (p, p_inv), (q, _), tail)| {
            let mut d = IntMatrix::zeros(n, k);
            for (i, f) in factors.iter().enumerate() {
                d.set(i, i, int(*f));
            }
            let q = if k == 0 { IntMatrix::zeros(0, 0) } else { q };
            let d_in = p.mul(&d).mul(&q);
            let mut e = IntMatrix::zeros(m, n);
            for i in 0..n - c {
                e.set(i, c + i, int(1));
            }
            for (t, x) in tail.iter().enumerate() {
                e.set(n - c + t / (n - c), c + t % (n - c), int(*x));
            }
            Hidden {
                d_in,
                d_out: e.mul(&p_inv),
                cycles: c,
                factors,
            }
        })
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n as u32, 1..=4), 1..=6).prop_map(
            move |facets| {
                let labels = (0..n).map(|i| format!("x{i}")).collect();
                let facets: Vec<Vec<u32>> = facets
                    .into_iter()
                    .map(|s| s.into_iter().collect())
                    .collect();
                SimplicialComplex::from_facets(labels, &facets).unwrap()
            },
        )
    })
}

/// A complex together with a subcomplex generated by some of its faces.
fn random_pair() -> impl Strategy<Value = SimplicialPair> {
    random_complex().prop_flat_map(|x| {
        let faces: Vec<Vec<u32>> = x.iter().map(|s| s.vertices().to_vec()).collect();
        let len = faces.len();
        prop::collection::btree_set(0..len, 0..=len.min(4)).prop_map(
            move |pick: BTreeSet<usize>| {
                let gens: Vec<Vec<u32>> = pick.iter().map(|&i| faces[i].clone()).collect();
                let z = x.subcomplex(&gens).unwrap();
                SimplicialPair::new(x.clone(), z).unwrap()
            },
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn smith_form_is_certified(a in int_matrix(6, 9)) {
        check_smith(&a)?;
    }

    #[test]
    fn smith_form_of_wide_entries(a in int_matrix(4, 1000)) {
        check_smith(&a)?;
    }

    #[test]
    fn dual_reverses_composition(
        (f, g) in (1usize..=4, 1usize..=4, 1usize..=4).prop_flat_map(|(a, b, c)| (
            prop::collection::vec(-5i64..=5, a * b).prop_map(move |d| (a, b, d)),
            prop::collection::vec(-5i64..=5, b * c).prop_map(move |d| (b, c, d)),
        ))
    ) {
        let (a, b, fd) = f;
        let (_, c, gd) = g;
        let free = |n| FgModule::free(Ring::Z, n);
        let f = ModuleMap::new(free(a), free(b), RatMatrix::from_i64(b, a, &fd)).unwrap();
        let g = ModuleMap::new(free(b), free(c), RatMatrix::from_i64(c, b, &gd)).unwrap();
        let lhs = dual_map(&f.then(&g).unwrap()).unwrap();
        let rhs = dual_map(&g).unwrap().then(&dual_map(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs.matrix(), rhs.matrix());
        let id = dual_map(&ModuleMap::identity(&free(a))).unwrap();
        prop_assert_eq!(id.matrix(), &RatMatrix::identity(a));
    }

    #[test]
    fn cup_is_associative_on_cochains(
        degrees in prop::sample::select(vec![(0usize, 0usize, 2usize), (0, 1, 1), (1, 0, 1), (1, 1, 0), (0, 2, 0), (0, 0, 0)]),
        seed in prop::collection::vec(-3i64..=3, 64),
    ) {
        let chains = RelativeChains::new(&SimplicialPair::absolute(models::torus()), Ring::Z);
        let (p, q, r) = degrees;
        let mut it = seed.iter().cycle();
        let mut cochain = |d: usize| (0..chains.rank(d)).map(|_| rat(*it.next().unwrap())).collect::<Vec<_>>();
        let (a, b, c) = (cochain(p), cochain(q), cochain(r));
        let ab = cup_cochains(&chains, &a, p, &chains, &b, q, &chains);
        let bc = cup_cochains(&chains, &b, q, &chains, &c, r, &chains);
        let left = cup_cochains(&chains, &ab, p + q, &chains, &c, r, &chains);
        let right = cup_cochains(&chains, &a, p, &chains, &bc, q + r, &chains);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn subquotient_recovers_hidden_structure(h in hidden_subquotient()) {
        let sz = Subquotient::of_free(Ring::Z, &h.d_in.to_rat(), &h.d_out.to_rat()).unwrap();
        let expected = invariant_factors(h.factors.iter().map(|&f| int(f)).collect());
        prop_assert_eq!(sz.module().free_rank(), h.cycles - h.factors.len());
        prop_assert_eq!(sz.module().torsion(), &expected[..]);
        let sq = Subquotient::of_free(Ring::Q, &h.d_in.to_rat(), &h.d_out.to_rat()).unwrap();
        prop_assert_eq!(sq.module(), &FgModule::free(Ring::Q, h.cycles - h.factors.len()));
    }

    #[test]
    fn long_exact_sequence_is_exact(pair in random_pair(), field in any::<bool>()) {
        let ring = if field { Ring::Q } else { Ring::Z };
        prop_assert!(les_exactness(&pair, ring).unwrap().is_exact());
    }

    #[test]
    fn euler_characteristic_matches_rational_homology(x in random_complex()) {
        let pair = SimplicialPair::absolute(x.clone());
        let top = x.dim().max(0) as usize;
        let chi: i64 = (0..=top)
            .map(|n| {
                let r = relative_homology(&pair, n, Ring::Q).unwrap().free_rank() as i64;
                if n % 2 == 0 { r } else { -r }
            })
            .sum();
        prop_assert_eq!(chi, x.euler_characteristic());
    }
}
