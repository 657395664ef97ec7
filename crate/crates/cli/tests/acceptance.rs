//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
//!
//! Reference values come from the oracles in `core/tests/oracle`, which share
//! no code with the library.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::process::Command as Process;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nori_cli::{Corpus, BUNDLED_CORPUS};
use nori_core::bialgebra::{
    associativity_check, bialgebra_axiom_check, product_on_truncations, sigma_element,
    tau_coherence, transition_compatible, BialgebraError, TauTable,
};
use nori_core::comodule::check_comodule_axioms;
use nori_core::filtration::{compare_filtration_homology, find_very_good_refinement, Filtration};
use nori_core::linalg::{int, smith_normal_form, FgModule, IntMatrix, RatMatrix, Ring};
use nori_core::simplicial::{
    cech_comparison, ez_aw_maps, kunneth_ranks, les_exactness, product_pair, relative_homology,
    CechData, SimplicialComplex, SimplicialPair,
};
use nori_core::tannaka::{end_algebra, DiagramRep, Subdiagram, Truncation};

const SEED: u64 = 0x5eed_0001;
const SNF_CASES: usize = 1000;
const SNF_MAX_DIM: usize = 6;
const SNF_MAX_ENTRY: i64 = 9;
const SNF_SECONDS: f64 = 5.0;
const HOMOLOGY_SECONDS: f64 = 2.0;
const LES_PAIRS: usize = 20;
const SEARCH_INSTANCES: usize = 10;
const SEARCH_SECONDS: f64 = 30.0;
const SEARCH_BUDGET: usize = 100_000;
const CECH_INSTANCES: usize = 8;
const QUIVER_CASES: usize = 200;
const QUIVER_MAX_VERTICES: usize = 3;
const QUIVER_MAX_RANK: usize = 3;
const QUIVER_SECONDS: f64 = 60.0;
const PRODUCT_MAX_DIM: isize = 3;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus() -> Corpus {
    Corpus::parse(BUNDLED_CORPUS).expect("bundled corpus parses")
}

fn facets(x: &SimplicialComplex) -> Vec<Vec<u32>> {
    x.facets().iter().map(|s| s.vertices().to_vec()).collect()
}

/// Oracle homology as modules, padded with zeros to `len` degrees.
fn oracle_homology(pair: &SimplicialPair, len: usize) -> Vec<FgModule> {
    let mut out: Vec<FgModule> =
        oracle::integral_homology(&facets(pair.space()), &facets(pair.sub()))
            .into_iter()
            .map(|(f, t)| {
                FgModule::new(Ring::Z, f, t.iter().map(|&x| int(x as i64)).collect()).unwrap()
            })
            .collect();
    while out.len() < len {
        out.push(FgModule::zero(Ring::Z));
    }
    out
}

fn library_homology(pair: &SimplicialPair, len: usize) -> Vec<FgModule> {
    (0..len)
        .map(|n| relative_homology(pair, n, Ring::Z).unwrap())
        .collect()
}

fn det(m: &IntMatrix) -> BigInt {
    let n = m.rows();
    let mut a = m.to_rows();
    let (mut sign, mut prev) = (BigInt::one(), BigInt::one());
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
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

fn snf_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let start = Instant::now();
    for case in 0..SNF_CASES {
        let (r, c) = (
            rng.gen_range(1..=SNF_MAX_DIM),
            rng.gen_range(1..=SNF_MAX_DIM),
        );
        let data: Vec<i64> = (0..r * c)
            .map(|_| rng.gen_range(-SNF_MAX_ENTRY..=SNF_MAX_ENTRY))
            .collect();
        let a = IntMatrix::from_i64(r, c, &data);
        let s = smith_normal_form(&a);
        ensure(s.u.mul(&a).mul(&s.v) == s.d, || {
            format!("case {case}: U·A·V ≠ D")
        })?;
        ensure(det(&s.u).abs().is_one() && det(&s.v).abs().is_one(), || {
            format!("case {case}: not unimodular")
        })?;
        let mut diag = Vec::new();
        for i in 0..r {
            for j in 0..c {
                let x = s.d.get(i, j);
                if i != j {
                    ensure(x.is_zero(), || format!("case {case}: off-diagonal entry"))?;
                } else if !x.is_zero() {
                    ensure(x.is_positive() && diag.len() == i, || {
                        format!("case {case}: diagonal out of order")
                    })?;
                    diag.push(x.clone());
                }
            }
        }
        ensure(diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()), || {
            format!("case {case}: divisibility chain")
        })?;
    }
    let t = start.elapsed().as_secs_f64();
    ensure(t < SNF_SECONDS, || format!("took {t:.2}s"))?;
    Ok(format!("{SNF_CASES} matrices in {t:.2}s"))
}

fn homology_golden_set() -> Outcome {
    let c = corpus();
    let start = Instant::now();
    let free = |r| FgModule::free(Ring::Z, r);
    let z2 = |r| FgModule::new(Ring::Z, r, vec![int(2)]).unwrap();
    let golden = [
        ("point", vec![free(1)]),
        ("circle", vec![free(1), free(1)]),
        ("sphere", vec![free(1), free(0), free(1)]),
        ("torus", vec![free(1), free(2), free(1)]),
        ("rp2", vec![free(1), z2(0), free(0)]),
        ("klein", vec![free(1), z2(1), free(0)]),
    ];
    for (name, want) in golden {
        let pair = c.pair(name).map_err(|e| e.to_string())?;
        let got = library_homology(pair, want.len());
        ensure(got == want, || format!("{name}: library {got:?}"))?;
        ensure(oracle_homology(pair, want.len()) == want, || {
            format!("{name}: oracle disagrees")
        })?;
    }
    let t = start.elapsed().as_secs_f64();
    ensure(t < HOMOLOGY_SECONDS, || format!("took {t:.2}s"))?;
    Ok(format!("6 spaces in {t:.2}s"))
}

fn circle_with_point() -> Outcome {
    let c = corpus();
    let pair = c.pair("circle_with_point").map_err(|e| e.to_string())?;
    let h = library_homology(pair, 2);
    ensure(h[0].is_zero(), || format!("h0 = {:?}", h[0]))?;
    ensure(h[1] == FgModule::free(Ring::Z, 1), || {
        format!("h1 = {:?}", h[1])
    })?;
    Ok("h0 = 0, h1 free of rank 1".into())
}

fn les_suite() -> Outcome {
    let c = corpus();
    let names: Vec<&str> = c.file.pair.iter().map(|p| p.name.as_str()).collect();
    ensure(names.len() >= LES_PAIRS, || {
        format!("only {} pairs", names.len())
    })?;
    for name in &names {
        for ring in [Ring::Z, Ring::Q] {
            let report = les_exactness(c.pair(name).unwrap(), ring).map_err(|e| e.to_string())?;
            ensure(report.is_exact(), || format!("{name} over {ring:?}"))?;
        }
    }
    Ok(format!("{} pairs over Z and Q", names.len()))
}

fn filtration_suite() -> Outcome {
    let c = corpus();
    let start = Instant::now();
    let mut found = 0;
    for s in &c.file.search {
        let x = c.complex(&s.space).map_err(|e| e.to_string())?.clone();
        let init = match &s.start {
            Some(f) => c.filtration(f).map_err(|e| e.to_string())?,
            None => Filtration::trivial(x.clone()),
        };
        let out = find_very_good_refinement(&init, SEARCH_BUDGET)
            .map_err(|e| format!("{}: {e}", s.name))?;
        let f = out
            .filtration
            .ok_or_else(|| format!("{}: nothing found", s.name))?;
        let cmp = compare_filtration_homology(&f, Ring::Z).map_err(|e| e.to_string())?;
        ensure(cmp.very_good && cmp.all_match(), || {
            format!("{}: comparison failed", s.name)
        })?;
        let want = oracle_homology(&SimplicialPair::absolute(x), cmp.degrees.len());
        for d in &cmp.degrees {
            ensure(d.from_filtration == want[d.degree], || {
                format!("{}: degree {} vs oracle", s.name, d.degree)
            })?;
        }
        found += 1;
    }
    ensure(found >= SEARCH_INSTANCES, || {
        format!("only {found} instances")
    })?;
    let t = start.elapsed().as_secs_f64();
    ensure(t < SEARCH_SECONDS, || format!("took {t:.2}s"))?;
    Ok(format!("{found} filtrations in {t:.2}s"))
}

fn cech_suite() -> Outcome {
    let c = corpus();
    for spec in &c.file.cech {
        let x = c.complex(&spec.space).map_err(|e| e.to_string())?.clone();
        let sets = |fs: &[nori_cli::corpus::Facets]| -> Result<Vec<SimplicialComplex>, String> {
            fs.iter()
                .map(|f| c.subcomplex(&x, f, &spec.name).map_err(|e| e.to_string()))
                .collect()
        };
        let data = CechData::new(x.clone(), sets(&spec.cover)?, sets(&spec.components)?)
            .map_err(|e| e.to_string())?;
        let cmp = cech_comparison(&data, Ring::Z).map_err(|e| e.to_string())?;
        let want = oracle_homology(&data.pair(), cmp.len());
        for (n, (tot, rel)) in cmp.iter().enumerate() {
            ensure(tot == rel && *rel == want[n], || {
                format!("{} degree {n}: {tot:?} vs {rel:?}", spec.name)
            })?;
        }
    }
    let n = c.file.cech.len();
    ensure(n >= CECH_INSTANCES, || format!("only {n} instances"))?;
    Ok(format!("{n} cover instances"))
}

fn random_quiver(rng: &mut ChaCha8Rng) -> oracle::Quiver {
    let n = rng.gen_range(1..=QUIVER_MAX_VERTICES);
    let ranks: Vec<usize> = (0..n).map(|_| rng.gen_range(0..=QUIVER_MAX_RANK)).collect();
    let edges = (0..rng.gen_range(0..=4))
        .map(|_| {
            let (s, t) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let m = (0..ranks[t])
                .map(|_| (0..ranks[s]).map(|_| rng.gen_range(-2..=2)).collect())
                .collect();
            (s, t, m)
        })
        .collect();
    oracle::Quiver { ranks, edges }
}

fn representation(q: &oracle::Quiver) -> DiagramRep {
    let edges: Vec<_> = q
        .edges
        .iter()
        .map(|(s, t, m)| {
            let flat: Vec<i64> = m.iter().flatten().copied().collect();
            (*s, *t, RatMatrix::from_i64(q.ranks[*t], q.ranks[*s], &flat))
        })
        .collect();
    DiagramRep::from_matrices(Ring::Q, &q.ranks, &edges).unwrap()
}

fn tannaka_oracle_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let start = Instant::now();
    for case in 0..QUIVER_CASES {
        let q = random_quiver(&mut rng);
        let rep = representation(&q);
        let e = end_algebra(&rep, &Subdiagram::all(&rep)).map_err(|e| e.to_string())?;
        ensure(e.dim() == q.commutant_dim(), || {
            format!("case {case}: {} vs {}", e.dim(), q.commutant_dim())
        })?;
        let families: Vec<Vec<Vec<Vec<BigRational>>>> = (0..e.dim())
            .map(|i| {
                (0..q.ranks.len())
                    .map(|v| e.basis_component(i, v).unwrap().to_rows())
                    .collect()
            })
            .collect();
        ensure(families.iter().all(|f| q.commutes(f)), || {
            format!("case {case}: basis does not commute")
        })?;
        let flat = families
            .iter()
            .map(|f| f.iter().flatten().flatten().cloned().collect())
            .collect();
        ensure(oracle::rank(flat) == e.dim(), || {
            format!("case {case}: basis dependent")
        })?;
    }
    let t = start.elapsed().as_secs_f64();
    ensure(t < QUIVER_SECONDS, || format!("took {t:.2}s"))?;
    Ok(format!("{QUIVER_CASES} random diagrams in {t:.2}s"))
}

fn check_truncation(rep: &DiagramRep, t: &Truncation, label: &str) -> Result<(), String> {
    ensure(
        t.coalgebra.is_coassociative() && t.coalgebra.is_counital(),
        || format!("{label}: coalgebra"),
    )?;
    for &v in t.subdiagram.vertices() {
        let m = t
            .coaction(rep, v)
            .and_then(|c| c.as_comodule(&t.coalgebra))
            .map_err(|e| e.to_string())?;
        ensure(
            check_comodule_axioms(&m)
                .map_err(|e| e.to_string())?
                .passed(),
            || format!("{label}: vertex {v}"),
        )?;
    }
    ensure(
        t.factorization_check(rep)
            .map_err(|e| e.to_string())?
            .passed(),
        || format!("{label}: naturality"),
    )
}

fn axiom_suite() -> Outcome {
    let c = corpus();
    let mut count = 0;
    for ring in [Ring::Q, Ring::Z] {
        for spec in &c.file.truncation {
            let rep = c.diagram(&spec.diagram, ring).map_err(|e| e.to_string())?;
            let sub = c.subdiagram(&rep, &spec.name).map_err(|e| e.to_string())?;
            let t = Truncation::new(&rep, &sub).map_err(|e| e.to_string())?;
            check_truncation(&rep, &t, &spec.name)?;
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 8);
    for case in 0..QUIVER_CASES {
        let rep = representation(&random_quiver(&mut rng));
        let t = Truncation::new(&rep, &Subdiagram::all(&rep)).map_err(|e| e.to_string())?;
        check_truncation(&rep, &t, &format!("random {case}"))?;
        count += 1;
    }
    Ok(format!("{count} truncations"))
}

fn bialgebra_suite() -> Outcome {
    let c = corpus();
    let (mut checked, mut associative, mut coherent) = (0, 0, 0);
    for spec in &c.file.bialgebra {
        let diagram = &c
            .truncation_spec(&spec.left)
            .map_err(|e| e.to_string())?
            .diagram;
        let rep = c.diagram(diagram, Ring::Q).map_err(|e| e.to_string())?;
        let sub = |n: &str| {
            let s = c.subdiagram(&rep, n).map_err(|e| e.to_string())?;
            Truncation::new(&rep, &s).map_err(|e| e.to_string())
        };
        let (f, g, h) = (sub(&spec.left)?, sub(&spec.right)?, sub(&spec.target)?);
        let unit = spec.unit.as_ref().map(|u| rep.vertex_index(u).unwrap());
        let taus = TauTable::new();
        let frag = match product_on_truncations(&rep, &f, &g, &h, &taus) {
            Err(
                e @ (BialgebraError::ProductEscape { .. } | BialgebraError::IntegralEscape { .. }),
            ) => return Err(format!("{}: {e}", spec.name)),
            other => other.map_err(|e| e.to_string())?,
        };
        let cert =
            bialgebra_axiom_check(&rep, &f, &g, &h, &frag, unit).map_err(|e| e.to_string())?;
        ensure(cert.comultiplicative && cert.counit_multiplicative, || {
            format!("{}: Δ∘μ or ε", spec.name)
        })?;
        ensure(cert.commutative != Some(false), || {
            format!("{}: not commutative", spec.name)
        })?;
        ensure(cert.passed(), || {
            format!(
                "{}: {:?}",
                spec.name,
                cert.witnesses.iter().map(|w| &w.0).collect::<Vec<_>>()
            )
        })?;
        if let Some(s) = &spec.small {
            let (fs, gs, hs) = (sub(&s.left)?, sub(&s.right)?, sub(&s.target)?);
            let small =
                product_on_truncations(&rep, &fs, &gs, &hs, &taus).map_err(|e| e.to_string())?;
            let ok = transition_compatible(&rep, (&fs, &gs, &hs), (&f, &g, &h), &small, &frag)
                .map_err(|e| e.to_string())?;
            ensure(ok, || format!("{}: transitions", spec.name))?;
        }
        let mut structural = h.subdiagram.edges().to_vec();
        if let Some(a) = &spec.associativity {
            let (k, common) = (sub(&a.third)?, sub(&a.common)?);
            let fg_k = product_on_truncations(&rep, &h, &k, &sub(&a.left_target)?, &taus)
                .map_err(|e| e.to_string())?;
            let gk = sub(&a.right_inner)?;
            let g_k =
                product_on_truncations(&rep, &g, &k, &gk, &taus).map_err(|e| e.to_string())?;
            let f_gk = product_on_truncations(&rep, &f, &gk, &sub(&a.right_target)?, &taus)
                .map_err(|e| e.to_string())?;
            let ok = associativity_check(&rep, &frag, &fg_k, &g_k, &f_gk, &common)
                .map_err(|e| e.to_string())?;
            ensure(ok, || format!("{}: not associative", spec.name))?;
            structural.extend(common.subdiagram.edges());
            associative += 1;
        }
        structural.sort_unstable();
        structural.dedup();
        for x in tau_coherence(&rep, &taus, &structural).map_err(|e| e.to_string())? {
            ensure(x.holds, || {
                format!("{}: tau incoherent on {}", spec.name, x.edge)
            })?;
            coherent += 1;
        }
        checked += 1;
    }
    let commutative = c
        .file
        .bialgebra
        .iter()
        .filter(|b| b.left == b.right)
        .count();
    ensure(commutative > 0, || "no symmetric fragment".into())?;
    ensure(associative > 0, || "no associativity instance".into())?;
    Ok(format!(
        "{checked} fragments, no escapes, {associative} associative, {coherent} coherence edges"
    ))
}

fn sigma_suite() -> Outcome {
    let c = corpus();
    let mut count = 0;
    for spec in &c.file.sigma {
        let diagram = &c
            .truncation_spec(&spec.truncations[0])
            .map_err(|e| e.to_string())?
            .diagram;
        let rep = c.diagram(diagram, Ring::Q).map_err(|e| e.to_string())?;
        let v = rep.vertex_index(&spec.vertex).ok_or("unknown vertex")?;
        for name in &spec.truncations {
            let sub = c.subdiagram(&rep, name).map_err(|e| e.to_string())?;
            let s = sigma_element(&rep, &sub, v).map_err(|e| e.to_string())?;
            let t = Truncation::new(&rep, &sub).map_err(|e| e.to_string())?;
            let x = &s.coordinates;
            let tensor: Vec<BigRational> = x
                .iter()
                .flat_map(|a| x.iter().map(move |b| a * b))
                .collect();
            ensure(s.sign_independent, || {
                format!("{name}: depends on the sign")
            })?;
            ensure(t.coalgebra.comultiply(x) == tensor, || {
                format!("{name}: Δσ ≠ σ⊗σ")
            })?;
            ensure(t.coalgebra.counit_of(x).is_one(), || {
                format!("{name}: ε(σ) ≠ 1")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} truncations"))
}

fn ez_aw_suite() -> Outcome {
    let c = corpus();
    let mut count = 0;
    for spec in &c.file.product {
        let (p1, p2) = (c.pair(&spec.left).unwrap(), c.pair(&spec.right).unwrap());
        if p1.space().dim() + p2.space().dim() > PRODUCT_MAX_DIM {
            continue;
        }
        for ring in [Ring::Z, Ring::Q] {
            let pc = ez_aw_maps(p1, p2, ring);
            ensure(pc.aw_ez_is_identity(), || {
                format!("{}: AW∘EZ ≠ id", spec.name)
            })?;
        }
        count += 1;
    }
    ensure(count > 0, || "no products".into())?;
    let circle = c.pair("circle").unwrap();
    let ranks = kunneth_ranks(circle, circle).map_err(|e| e.to_string())?;
    let want = [(1, 1), (2, 2), (1, 1)];
    ensure(ranks == want, || format!("circle squared ranks {ranks:?}"))?;
    let torus = oracle_homology(&product_pair(circle, circle), 3);
    ensure(
        torus.iter().map(FgModule::free_rank).collect::<Vec<_>>() == [1, 2, 1],
        || "oracle ranks".into(),
    )?;
    Ok(format!("{count} products; circle squared ranks 1, 2, 1"))
}

fn determinism() -> Outcome {
    let dir = std::env::temp_dir().join(format!("nori-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let mut bytes = Vec::new();
    for k in 0..2 {
        let out = dir.join(format!("run{k}.json"));
        let status = Process::new(env!("CARGO_BIN_EXE_nori"))
            .args(["all", "--out", out.to_str().unwrap()])
            .output()
            .map_err(|e| e.to_string())?
            .status;
        ensure(status.code() == Some(0), || {
            format!("run {k} exited with {status}")
        })?;
        bytes.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    let _ = std::fs::remove_dir_all(&dir);
    ensure(bytes[0] == bytes[1], || "certificates differ".into())?;
    Ok(format!("{} identical bytes", bytes[0].len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("Smith normal form suite", snf_suite),
        ("integral homology golden set", homology_golden_set),
        ("circle relative to a point", circle_with_point),
        ("long exact sequences", les_suite),
        ("very good filtrations", filtration_suite),
        ("Čech models", cech_suite),
        ("endomorphism algebra oracle", tannaka_oracle_suite),
        ("coalgebra and comodule axioms", axiom_suite),
        ("bialgebra fragments", bialgebra_suite),
        ("circle element", sigma_suite),
        ("shuffle and front/back maps", ez_aw_suite),
        ("certificate determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
