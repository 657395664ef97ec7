use num_traits::{One, Zero};

use super::search::is_very_good_filtration;
use super::{Filtration, FiltrationError};
use crate::linalg::{FgModule, ModuleMap, Rat, RatMatrix, Ring, Subquotient};
use crate::simplicial::{
    induced_map_between, product_complex, shuffle_product, triple_boundary_between, PairHomology,
    PairMap, RelativeChains, SimplicialComplex, SimplicialMap, SimplicialPair,
};

/// A bounded chain complex of finitely generated modules; `diffs[i - 1]` maps
/// degree `i` to degree `i - 1`.
#[derive(Clone, Debug)]
pub struct ModuleComplex {
    pub terms: Vec<FgModule>,
    pub diffs: Vec<ModuleMap>,
}

impl ModuleComplex {
    pub fn ring(&self) -> Ring {
        self.terms.first().map_or(Ring::Z, FgModule::ring)
    }

    pub fn term(&self, i: usize) -> FgModule {
        self.terms
            .get(i)
            .cloned()
            .unwrap_or_else(|| FgModule::zero(self.ring()))
    }

    /// Differential out of degree `i`, zero outside the stored range.
    pub fn diff(&self, i: usize) -> ModuleMap {
        if i >= 1 && i <= self.diffs.len() {
            return self.diffs[i - 1].clone();
        }
        let target = if i == 0 {
            FgModule::zero(self.ring())
        } else {
            self.term(i - 1)
        };
        ModuleMap::zero(&self.term(i), &target)
    }

    /// `d ∘ d = 0` in every degree.
    pub fn squares_to_zero(&self) -> Result<bool, FiltrationError> {
        for i in 2..=self.diffs.len() {
            if !self.diff(i).then(&self.diff(i - 1))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn homology(&self, i: usize) -> Result<Subquotient, FiltrationError> {
        Ok(Subquotient::new(&self.diff(i + 1), &self.diff(i))?)
    }

    pub fn homology_modules(&self) -> Result<Vec<FgModule>, FiltrationError> {
        (0..self.terms.len())
            .map(|i| self.homology(i).map(|h| h.module().clone()))
            .collect()
    }

    /// Checks that degreewise maps `maps[i]: self_i → other_i` commute with the differentials.
    pub fn is_chain_map(
        &self,
        other: &ModuleComplex,
        maps: &[ModuleMap],
    ) -> Result<bool, FiltrationError> {
        for i in 1..maps.len() {
            let a = maps[i].then(&other.diff(i))?;
            let b = self.diff(i).then(&maps[i - 1])?;
            if a.matrix() != b.matrix() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `h_i(F_i, F_{i-1})` with the triple boundaries as differentials.
#[derive(Clone, Debug)]
pub struct FiltrationComplex {
    pub filtration: Filtration,
    pub graded: Vec<PairHomology>,
    pub complex: ModuleComplex,
}

/// The complex `h_•(X, F_•)`; with `require_free` set, torsion in a term is an error.
pub fn filtration_complex(
    f: &Filtration,
    ring: Ring,
    require_free: bool,
) -> Result<FiltrationComplex, FiltrationError> {
    let graded = (0..=f.top())
        .map(|i| PairHomology::new(&f.graded_pair(i), ring))
        .collect::<Result<Vec<_>, _>>()?;
    let terms: Vec<FgModule> = graded
        .iter()
        .enumerate()
        .map(|(i, h)| h.module(i))
        .collect();
    if require_free {
        if let Some(i) = terms.iter().position(|t| !t.is_free()) {
            return Err(FiltrationError::TorsionTerm(i));
        }
    }
    let diffs = (1..graded.len())
        .map(|i| triple_boundary_between(&graded[i], &graded[i - 1], i))
        .collect::<Result<Vec<_>, _>>()?;
    let complex = ModuleComplex { terms, diffs };
    assert!(
        complex.squares_to_zero()?,
        "consecutive triple boundaries compose to zero"
    );
    Ok(FiltrationComplex {
        filtration: f.clone(),
        graded,
        complex,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub from_filtration: FgModule,
    pub from_space: FgModule,
    pub matches: bool,
}

#[derive(Clone, Debug)]
pub struct FiltrationComparison {
    /// False when the filtration is not very good; the comparison is then advisory.
    pub very_good: bool,
    pub degrees: Vec<DegreeComparison>,
}

impl FiltrationComparison {
    pub fn all_match(&self) -> bool {
        self.degrees.iter().all(|d| d.matches)
    }
}

/// Degreewise comparison of `H_i(h_•(X, F_•))` with `h_i(X)`.
pub fn compare_filtration_homology(
    f: &Filtration,
    ring: Ring,
) -> Result<FiltrationComparison, FiltrationError> {
    let very_good = is_very_good_filtration(f)?.is_very_good();
    let fc = filtration_complex(f, ring, false)?;
    let lhs = fc.complex.homology_modules()?;
    let rhs = PairHomology::new(&SimplicialPair::absolute(f.space().clone()), ring)?;
    let n = lhs.len().max(rhs.degrees());
    let degrees = (0..n)
        .map(|i| {
            let a = lhs.get(i).cloned().unwrap_or_else(|| FgModule::zero(ring));
            let b = rhs.module(i);
            DegreeComparison {
                degree: i,
                matches: a == b,
                from_filtration: a,
                from_space: b,
            }
        })
        .collect();
    Ok(FiltrationComparison { very_good, degrees })
}

/// The image filtration with the induced morphism of filtration complexes.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub filtration: Filtration,
    pub source: FiltrationComplex,
    pub target: FiltrationComplex,
    pub maps: Vec<ModuleMap>,
    pub is_chain_map: bool,
}

/// `G_i = f(F_i)` below `dim Y`, `G_i = Y` from there on.
pub fn pushforward_filtration(
    f: &SimplicialMap,
    filt: &Filtration,
    ring: Ring,
) -> Result<Pushforward, FiltrationError> {
    let y = f.target();
    let dim_y = y.dim().max(0) as usize;
    let n = filt.top().max(dim_y);
    let levels: Vec<SimplicialComplex> = (0..=n)
        .map(|i| {
            if i < dim_y {
                f.image_complex(&filt.level(i as isize))
            } else {
                y.clone()
            }
        })
        .collect();
    let g = Filtration::new(y.clone(), levels)?;
    let src_filt = filt.padded(n);
    let source = filtration_complex(&src_filt, ring, false)?;
    let target = filtration_complex(&g, ring, false)?;
    let mut maps = Vec::new();
    for i in 0..=n {
        let sp = src_filt.graded_pair(i);
        let tp = g.graded_pair(i);
        let restricted = SimplicialMap::new(
            sp.space().clone(),
            tp.space().clone(),
            f.vertex_map().to_vec(),
        )?;
        let pm = PairMap::new(sp, tp, restricted)?;
        maps.push(induced_map_between(
            &pm,
            &source.graded[i],
            &target.graded[i],
            i,
        )?);
    }
    let is_chain_map = source.complex.is_chain_map(&target.complex, &maps)?;
    Ok(Pushforward {
        filtration: g,
        source,
        target,
        maps,
        is_chain_map,
    })
}

/// `(F × G)_i = ∪_{p+q=i} F_p × G_q` with the cross-product morphism
/// `h(X,F) ⊗ h(Y,G) → h(X×Y, F×G)`.
#[derive(Clone, Debug)]
pub struct ProductFiltration {
    pub filtration: Filtration,
    pub tensor: ModuleComplex,
    pub product: FiltrationComplex,
    pub maps: Vec<ModuleMap>,
    pub is_chain_map: bool,
}

/// Tensor product of two complexes of free modules; block `(p, i, j)` of
/// degree `n` sits at `offset(n, p) + i·rank(B_{n-p}) + j`.
fn tensor_complex(
    a: &ModuleComplex,
    b: &ModuleComplex,
) -> Result<(ModuleComplex, Vec<Vec<usize>>), FiltrationError> {
    let ring = a.ring();
    for (i, t) in a.terms.iter().chain(&b.terms).enumerate() {
        if !t.is_free() {
            return Err(FiltrationError::TorsionTerm(i));
        }
    }
    let top = a.terms.len() + b.terms.len() - 1;
    let rk = |m: &ModuleComplex, i: usize| m.term(i).generators();
    let mut offsets = Vec::new();
    let mut terms = Vec::new();
    for n in 0..top {
        let mut off = Vec::new();
        let mut acc = 0;
        for p in 0..=n {
            off.push(acc);
            acc += rk(a, p) * rk(b, n - p);
        }
        offsets.push(off);
        terms.push(FgModule::free(ring, acc));
    }
    let mut diffs = Vec::new();
    for n in 1..top {
        let mut m = RatMatrix::zeros(terms[n - 1].generators(), terms[n].generators());
        for p in 0..=n {
            let q = n - p;
            let da = a.diff(p);
            let db = b.diff(q);
            let sign = if p % 2 == 0 { Rat::one() } else { -Rat::one() };
            for i in 0..rk(a, p) {
                for j in 0..rk(b, q) {
                    let c = offsets[n][p] + i * rk(b, q) + j;
                    if p > 0 {
                        for r in 0..rk(a, p - 1) {
                            let e = da.matrix().get(r, i);
                            if !e.is_zero() {
                                let row = offsets[n - 1][p - 1] + r * rk(b, q) + j;
                                let v = m.get(row, c) + e;
                                m.set(row, c, v);
                            }
                        }
                    }
                    if q > 0 {
                        for r in 0..rk(b, q - 1) {
                            let e = db.matrix().get(r, j);
                            if !e.is_zero() {
                                let row = offsets[n - 1][p] + i * rk(b, q - 1) + r;
                                let v = m.get(row, c) + &sign * e;
                                m.set(row, c, v);
                            }
                        }
                    }
                }
            }
        }
        diffs.push(ModuleMap::new(terms[n].clone(), terms[n - 1].clone(), m)?);
    }
    Ok((ModuleComplex { terms, diffs }, offsets))
}

pub fn product_filtration(
    f: &Filtration,
    g: &Filtration,
    ring: Ring,
) -> Result<ProductFiltration, FiltrationError> {
    let (x, y) = (f.space(), g.space());
    let prod = product_complex(x, y);
    let labels = prod.labels().clone();
    let top = f.top() + g.top();
    let levels: Vec<SimplicialComplex> = (0..=top)
        .map(|i| {
            (0..=i).fold(SimplicialComplex::empty(labels.clone()), |acc, p| {
                let piece = product_complex(&f.level(p as isize), &g.level((i - p) as isize));
                acc.union(&SimplicialComplex::from_set(
                    labels.clone(),
                    piece.iter().cloned().collect(),
                ))
            })
        })
        .collect();
    let filtration = Filtration::new(prod, levels)?;
    let ff = filtration_complex(f, ring, false)?;
    let gg = filtration_complex(g, ring, false)?;
    let product = filtration_complex(&filtration, ring, false)?;
    let (tensor, offsets) = tensor_complex(&ff.complex, &gg.complex)?;
    let ny = y.universe_size();
    let mut maps = Vec::new();
    for n in 0..tensor.terms.len() {
        let target_group = product.graded.get(n).map(|h| h.group(n));
        let target_chains: Option<&RelativeChains> = product.graded.get(n).map(|h| h.chains());
        let target_module = product.complex.term(n);
        let mut m = RatMatrix::zeros(target_module.generators(), tensor.terms[n].generators());
        for p in 0..=n {
            let q = n - p;
            let (Some(hf), Some(hg)) = (ff.graded.get(p), gg.graded.get(q)) else {
                continue;
            };
            let (gf, gq) = (hf.group(p), hg.group(q));
            for i in 0..gf.module().generators() {
                let a = gf.generator(i);
                for j in 0..gq.module().generators() {
                    let b = gq.generator(j);
                    let (Some(tg), Some(tc)) = (&target_group, target_chains) else {
                        continue;
                    };
                    let mut chain = vec![Rat::zero(); tc.rank(n)];
                    for (ia, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                        let s = &hf.chains().basis(p)[ia];
                        for (jb, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                            let t = &hg.chains().basis(q)[jb];
                            for (sign, simplex) in shuffle_product(s, t, ny) {
                                if let Some(r) = tc.index(n, &simplex) {
                                    chain[r] += ca * cb * Rat::from_integer(sign.into());
                                }
                            }
                        }
                    }
                    let class = tg.class_of(&chain)?;
                    let col = offsets[n][p] + i * gq.module().generators() + j;
                    for (r, v) in class.into_iter().enumerate() {
                        m.set(r, col, v);
                    }
                }
            }
        }
        maps.push(ModuleMap::new(tensor.terms[n].clone(), target_module, m)?);
    }
    let is_chain_map = tensor.is_chain_map(&product.complex, &maps)?;
    Ok(ProductFiltration {
        filtration,
        tensor,
        product,
        maps,
        is_chain_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::{find_very_good_refinement, is_very_good_pair};
    use crate::simplicial::models;

    #[test]
    fn edge_filtration_complex() {
        let x = models::simplex(1);
        let ends = x.subcomplex(&[vec![0], vec![1]]).unwrap();
        let f = Filtration::new(x.clone(), vec![ends, x]).unwrap();
        let fc = filtration_complex(&f, Ring::Z, true).unwrap();
        assert_eq!(
            fc.complex.terms,
            vec![FgModule::free(Ring::Z, 2), FgModule::free(Ring::Z, 1)]
        );
        let d = fc.complex.diff(1);
        let (a, b) = (d.matrix().get(0, 0).clone(), d.matrix().get(1, 0).clone());
        assert_eq!(a, -b.clone());
        assert!(a == Rat::one() || a == -Rat::one());
        assert!(compare_filtration_homology(&f, Ring::Z)
            .unwrap()
            .all_match());
    }

    #[test]
    fn circle_filtration() {
        let x = models::sphere(1);
        let f0 = x.subcomplex(&[vec![0], vec![1]]).unwrap();
        let f = Filtration::new(x.clone(), vec![f0, x]).unwrap();
        let fc = filtration_complex(&f, Ring::Z, true).unwrap();
        assert_eq!(
            fc.complex.terms,
            vec![FgModule::free(Ring::Z, 2), FgModule::free(Ring::Z, 2)]
        );
        let cmp = compare_filtration_homology(&f, Ring::Z).unwrap();
        assert!(cmp.very_good && cmp.all_match());
    }

    #[test]
    fn point_filtration() {
        let f = Filtration::trivial(models::point());
        assert_eq!(f.top(), 0);
        let fc = filtration_complex(&f, Ring::Z, true).unwrap();
        assert_eq!(fc.complex.terms, vec![FgModule::free(Ring::Z, 1)]);
        assert!(compare_filtration_homology(&f, Ring::Z)
            .unwrap()
            .all_match());
    }

    #[test]
    fn projective_plane_is_not_very_good() {
        let x = models::projective_plane();
        let f = Filtration::skeletal(x.clone());
        assert!(filtration_complex(&f, Ring::Z, true).is_ok());
        assert!(compare_filtration_homology(&f, Ring::Z)
            .unwrap()
            .all_match());
        assert!(
            !is_very_good_pair(&x, &SimplicialComplex::empty(x.labels().clone()), 2)
                .unwrap()
                .very_good
        );
    }

    #[test]
    fn pushforward_to_a_point() {
        let x = models::sphere(1);
        let f = find_very_good_refinement(&Filtration::trivial(x.clone()), 1000)
            .unwrap()
            .filtration
            .unwrap();
        let pt = models::point();
        let c = SimplicialMap::new(x, pt.clone(), vec![0, 0, 0]).unwrap();
        let pf = pushforward_filtration(&c, &f, Ring::Z).unwrap();
        assert_eq!(pf.filtration.level(0), pt);
        assert!(pf.is_chain_map);
        assert!(pf.maps[1].is_zero());
    }

    #[test]
    fn circle_into_disk() {
        let disk = models::simplex(2);
        let circle = disk.skeleton(1);
        let incl = SimplicialMap::inclusion(&circle, &disk).unwrap();
        let f = Filtration::skeletal(circle);
        let pf = pushforward_filtration(&incl, &f, Ring::Z).unwrap();
        assert!(pf.is_chain_map);
        assert!(compare_filtration_homology(&pf.filtration, Ring::Z)
            .unwrap()
            .all_match());
        let hom = pf.source.complex.homology(1).unwrap();
        let tgt = pf.target.complex.homology(1).unwrap();
        let m = hom.induced_map(&tgt, pf.maps[1].matrix()).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn square_from_two_edges() {
        let x = models::simplex(1);
        let ends = x.subcomplex(&[vec![0], vec![1]]).unwrap();
        let f = Filtration::new(x.clone(), vec![ends, x]).unwrap();
        let pf = product_filtration(&f, &f, Ring::Z).unwrap();
        let sq = pf.filtration.space();
        assert_eq!(pf.filtration.level(0).count(0), 4);
        let f1 = pf.filtration.level(1);
        assert_eq!((f1.count(1), f1.dim()), (4, 1));
        assert_eq!(pf.filtration.level(2), sq.clone());
        assert!(pf.is_chain_map);
    }

    #[test]
    fn torus_kunneth_map() {
        let c = models::sphere(1);
        let f = Filtration::new(
            c.clone(),
            vec![c.subcomplex(&[vec![0], vec![1]]).unwrap(), c],
        )
        .unwrap();
        let pf = product_filtration(&f, &f, Ring::Q).unwrap();
        assert!(pf.is_chain_map);
        for n in 0..pf.tensor.terms.len() {
            let a = pf.tensor.homology(n).unwrap();
            let b = pf.product.complex.homology(n).unwrap();
            assert!(a
                .induced_map(&b, pf.maps[n].matrix())
                .unwrap()
                .is_isomorphism()
                .unwrap());
        }
    }
}
