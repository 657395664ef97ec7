use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use nori_bench::{corpus, random_matrices, truncation};
use nori_cli::{certify, Cli, Command};
use nori_core::bialgebra::{product_on_truncations, TauTable};
use nori_core::filtration::{find_very_good_refinement, Filtration};
use nori_core::linalg::{smith_normal_form, Ring};
use nori_core::simplicial::{ez_aw_maps, les_exactness, models, PairHomology, SimplicialPair};
use nori_core::tannaka::{end_algebra, DiagramRep};

fn linalg(c: &mut Criterion) {
    let small = random_matrices(64, 6, 6, 9, 1);
    c.bench_function("smith 6x6 (64 matrices)", |b| {
        b.iter(|| {
            small
                .iter()
                .map(|a| smith_normal_form(black_box(a)).rank())
                .sum::<usize>()
        })
    });
    let big = random_matrices(1, 24, 24, 9, 2).remove(0);
    c.bench_function("smith 24x24", |b| {
        b.iter(|| smith_normal_form(black_box(&big)))
    });
}

fn homology(c: &mut Criterion) {
    let torus = SimplicialPair::absolute(models::torus());
    c.bench_function("homology torus over Z", |b| {
        b.iter(|| PairHomology::new(black_box(&torus), Ring::Z).unwrap())
    });
    let rp2 = SimplicialPair::absolute(models::projective_plane());
    c.bench_function("exact sequence rp2 over Z", |b| {
        b.iter(|| les_exactness(black_box(&rp2), Ring::Z).unwrap())
    });
    let circle = SimplicialPair::absolute(models::sphere(1));
    c.bench_function("shuffle and front/back maps circle x circle", |b| {
        b.iter(|| ez_aw_maps(black_box(&circle), black_box(&circle), Ring::Z))
    });
    let sphere = Filtration::trivial(models::sphere(2));
    c.bench_function("very good search sphere", |b| {
        b.iter(|| find_very_good_refinement(black_box(&sphere), 100_000).unwrap())
    });
}

fn diagrams(c: &mut Criterion) {
    let corpus = corpus();
    let (rep, products) = truncation(&corpus, "products", Ring::Q);
    c.bench_function("endomorphisms of the product tower", |b| {
        b.iter(|| end_algebra(black_box(&rep), &products.subdiagram).unwrap())
    });
    let (_, factors) = truncation(&corpus, "factors", Ring::Q);
    c.bench_function("product on the tower", |b| {
        b.iter_batched(
            TauTable::new,
            |taus| {
                product_on_truncations(black_box(&rep), &factors, &factors, &products, &taus)
                    .unwrap()
            },
            BatchSize::SmallInput,
        )
    });
    c.bench_function("build the tower diagram", |b| {
        b.iter(|| -> DiagramRep { corpus.diagram(black_box("tower"), Ring::Q).unwrap() })
    });
}

fn cli(c: &mut Criterion) {
    let corpus = corpus();
    let cli = Cli {
        command: Command::All,
        instance: None,
        corpus: None,
        ring: None,
        out: None,
        budget: nori_cli::DEFAULT_BUDGET,
        depth: None,
    };
    let mut group = c.benchmark_group("cli");
    group.sample_size(10);
    group.bench_function("all commands on the bundled corpus", |b| {
        b.iter(|| certify(&cli, &corpus).unwrap())
    });
    group.finish();
}

criterion_group!(benches, linalg, homology, diagrams, cli);
criterion_main!(benches);
