use super::{Filtration, FiltrationError};
use crate::linalg::{FgModule, Ring};
use crate::simplicial::{PairHomology, Simplex, SimplicialComplex, SimplicialPair};

/// Outcome of the very-good test for `(X, Z, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub very_good: bool,
    /// Integral homology of the pair, degrees `0..=dim X`.
    pub homology: Vec<FgModule>,
    /// Degrees where the homology is nonzero off `n` or has torsion.
    pub offending_degrees: Vec<usize>,
    pub reason: Option<String>,
}

/// `(X, Z, n)` is very good when `dim X = n`, `dim Z ≤ n - 1` and
/// `h_•(X, Z; ℤ)` is free and concentrated in degree `n`, or when `X = Z`
/// with `dim X < n`.
pub fn is_very_good_pair(
    x: &SimplicialComplex,
    z: &SimplicialComplex,
    n: usize,
) -> Result<PairVerdict, FiltrationError> {
    let pair = SimplicialPair::new(x.clone(), z.clone())?;
    let n_i = n as isize;
    if x == z {
        let ok = x.dim() < n_i;
        return Ok(PairVerdict {
            very_good: ok,
            homology: Vec::new(),
            offending_degrees: Vec::new(),
            reason: (!ok).then(|| format!("X = Z has dimension {} ≥ {n}", x.dim())),
        });
    }
    if x.dim() != n_i {
        return Ok(PairVerdict {
            very_good: false,
            homology: Vec::new(),
            offending_degrees: Vec::new(),
            reason: Some(format!("dim X = {} ≠ {n}", x.dim())),
        });
    }
    if z.dim() > n_i - 1 {
        return Ok(PairVerdict {
            very_good: false,
            homology: Vec::new(),
            offending_degrees: Vec::new(),
            reason: Some(format!("dim Z = {} > {}", z.dim(), n_i - 1)),
        });
    }
    let homology = PairHomology::new(&pair, Ring::Z)?.modules();
    let offending: Vec<usize> = homology
        .iter()
        .enumerate()
        .filter(|(d, h)| if *d == n { !h.is_free() } else { !h.is_zero() })
        .map(|(d, _)| d)
        .collect();
    let very_good = offending.is_empty();
    let reason = (!very_good).then(|| format!("homology not free and concentrated in degree {n}"));
    Ok(PairVerdict {
        very_good,
        homology,
        offending_degrees: offending,
        reason,
    })
}

/// Per-level verdicts for `(F_i, F_{i-1}, i)`.
#[derive(Clone, Debug)]
pub struct VeryGoodReport {
    pub levels: Vec<PairVerdict>,
}

impl VeryGoodReport {
    pub fn is_very_good(&self) -> bool {
        self.levels.iter().all(|v| v.very_good)
    }
}

pub fn is_very_good_filtration(f: &Filtration) -> Result<VeryGoodReport, FiltrationError> {
    let levels = (0..=f.top())
        .map(|i| is_very_good_pair(&f.level(i as isize), &f.level(i as isize - 1), i))
        .collect::<Result<_, _>>()?;
    Ok(VeryGoodReport { levels })
}

/// Result of a refinement search.
#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub filtration: Option<Filtration>,
    /// Candidate subcomplexes examined.
    pub examined: usize,
}

struct Search {
    budget: usize,
    examined: usize,
}

impl Search {
    fn charge(&mut self) -> Result<(), FiltrationError> {
        self.examined += 1;
        if self.examined > self.budget {
            return Err(FiltrationError::BudgetExceeded(self.budget));
        }
        Ok(())
    }

    /// Finds `G_0 ⊆ … ⊆ G_level = top` with `G_i ⊇ F_i` and every graded
    /// piece very good; `None` if no choice works.
    fn refine(
        &mut self,
        f: &Filtration,
        level: usize,
        top: &SimplicialComplex,
    ) -> Result<Option<Vec<SimplicialComplex>>, FiltrationError> {
        if level == 0 {
            self.charge()?;
            let empty = SimplicialComplex::empty(top.labels().clone());
            return Ok(is_very_good_pair(top, &empty, 0)?
                .very_good
                .then(|| vec![top.clone()]));
        }
        let floor = f.level(level as isize - 1);
        if top.dim() < level as isize {
            // Only `Z = top` can satisfy the dimension clause.
            self.charge()?;
            if !floor.is_subcomplex_of(top) {
                return Ok(None);
            }
            return Ok(self.refine(f, level - 1, top)?.map(|mut g| {
                g.push(top.clone());
                g
            }));
        }
        let pool: Vec<Simplex> = top
            .skeleton(level - 1)
            .iter()
            .filter(|s| !floor.contains(s))
            .cloned()
            .collect();
        for extra in 0..=pool.len() {
            let mut found = None;
            let mut chosen = Vec::new();
            self.subsets(&pool, &floor, extra, 0, &mut chosen, &mut |this, z| {
                this.charge()?;
                if !is_very_good_pair(top, z, level)?.very_good {
                    return Ok(false);
                }
                if let Some(mut g) = this.refine(f, level - 1, z)? {
                    g.push(top.clone());
                    found = Some(g);
                    return Ok(true);
                }
                Ok(false)
            })?;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Visits closed complexes `floor ∪ S`, `|S| = k`, `S ⊆ pool`, in
    /// lexicographic order of `S`; stops when `visit` returns `true`.
    fn subsets(
        &mut self,
        pool: &[Simplex],
        floor: &SimplicialComplex,
        k: usize,
        start: usize,
        chosen: &mut Vec<Simplex>,
        visit: &mut dyn FnMut(&mut Self, &SimplicialComplex) -> Result<bool, FiltrationError>,
    ) -> Result<bool, FiltrationError> {
        if chosen.len() == k {
            let set = floor.iter().chain(chosen.iter()).cloned().collect();
            let z = SimplicialComplex::from_set(floor.labels().clone(), set);
            return visit(self, &z);
        }
        let remaining = k - chosen.len();
        for i in start..pool.len() {
            if pool.len() - i < remaining {
                break;
            }
            let s = &pool[i];
            let faces_present = s
                .boundary()
                .all(|(_, f)| floor.contains(&f) || chosen.contains(&f));
            if !faces_present {
                continue;
            }
            chosen.push(s.clone());
            if self.subsets(pool, floor, k, i + 1, chosen, visit)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

/// Searches for a very good filtration refining `f` levelwise, descending
/// from the top level: at level `i` it picks the first closed `Z` with
/// `F_{i-1} ⊆ Z ⊆ G_i^{(i-1)}` (fewest simplices, then lexicographic) making
/// `(G_i, Z, i)` very good and for which the lower levels can be completed.
pub fn find_very_good_refinement(
    f: &Filtration,
    budget: usize,
) -> Result<SearchOutcome, FiltrationError> {
    let mut search = Search {
        budget,
        examined: 0,
    };
    let top = f.top();
    let found = search.refine(f, top, f.space())?;
    let filtration = found.map(|levels| {
        Filtration::new(f.space().clone(), levels).expect("search keeps the invariants")
    });
    Ok(SearchOutcome {
        filtration,
        examined: search.examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::models;

    fn search(x: SimplicialComplex) -> Filtration {
        find_very_good_refinement(&Filtration::trivial(x), 100_000)
            .unwrap()
            .filtration
            .unwrap()
    }

    #[test]
    fn edge_pair_is_very_good() {
        let x = models::simplex(1);
        let ends = x.subcomplex(&[vec![0], vec![1]]).unwrap();
        let v = is_very_good_pair(&x, &ends, 1).unwrap();
        assert!(v.very_good);
        assert!(is_very_good_pair(&ends, &ends, 1).unwrap().very_good);
        assert!(!is_very_good_pair(&x, &x, 1).unwrap().very_good);
    }

    #[test]
    fn search_on_the_edge_takes_the_first_vertex() {
        let x = models::simplex(1);
        let f = search(x.clone());
        assert_eq!(f.level(0), x.subcomplex(&[vec![0]]).unwrap());
        let ends = x.subcomplex(&[vec![0], vec![1]]).unwrap();
        assert!(
            is_very_good_filtration(&Filtration::new(x.clone(), vec![ends, x]).unwrap())
                .unwrap()
                .is_very_good()
        );
    }

    #[test]
    fn very_good_input_is_returned_unchanged() {
        let x = models::sphere(1);
        let f0 = x.subcomplex(&[vec![0], vec![2]]).unwrap();
        let f = Filtration::new(x.clone(), vec![f0, x]).unwrap();
        let out = find_very_good_refinement(&f, 10).unwrap();
        assert_eq!(out.filtration.unwrap(), f);
    }

    #[test]
    fn every_vertex_pair_of_the_circle_works() {
        let x = models::sphere(1);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let z = x.subcomplex(&[vec![a], vec![b]]).unwrap();
            assert!(is_very_good_pair(&x, &z, 1).unwrap().very_good);
        }
        let f = search(x.clone());
        assert!(is_very_good_filtration(&f).unwrap().is_very_good());
    }

    #[test]
    fn budget_is_enforced() {
        let f = Filtration::trivial(models::projective_plane());
        assert_eq!(
            find_very_good_refinement(&f, 3).unwrap_err(),
            FiltrationError::BudgetExceeded(3)
        );
    }

    #[test]
    fn refinements_contain_the_input() {
        let x = models::simplex(2);
        let f1 = x.subcomplex(&[vec![1, 2]]).unwrap();
        let f0 = x.subcomplex(&[vec![1]]).unwrap();
        let f = Filtration::new(x.clone(), vec![f0, f1, x]).unwrap();
        let g = find_very_good_refinement(&f, 10_000)
            .unwrap()
            .filtration
            .unwrap();
        assert!(g.refines(&f));
        assert!(is_very_good_filtration(&g).unwrap().is_very_good());
    }

    #[test]
    fn search_on_standard_spaces() {
        for x in [
            models::point(),
            models::polygon(6),
            models::sphere(2),
            models::projective_plane(),
            models::moebius_band(),
            models::simplex(3),
            models::bowtie(),
            models::figure_eight(),
            models::annulus(),
        ] {
            let out =
                find_very_good_refinement(&Filtration::trivial(x.clone()), 1_000_000).unwrap();
            let f = out.filtration.expect("found");
            assert!(is_very_good_filtration(&f).unwrap().is_very_good());
        }
    }
}
