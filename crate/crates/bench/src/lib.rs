//! Inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use nori_cli::{Corpus, BUNDLED_CORPUS};
use nori_core::linalg::{IntMatrix, Ring};
use nori_core::tannaka::{DiagramRep, Truncation};

/// Deterministic integer matrices with entries in `[-bound, bound]`.
pub fn random_matrices(
    count: usize,
    rows: usize,
    cols: usize,
    bound: i64,
    seed: u64,
) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let data: Vec<i64> = (0..rows * cols)
                .map(|_| rng.gen_range(-bound..=bound))
                .collect();
            IntMatrix::from_i64(rows, cols, &data)
        })
        .collect()
}

pub fn corpus() -> Corpus {
    Corpus::parse(BUNDLED_CORPUS).expect("bundled corpus parses")
}

/// A diagram of the bundled corpus with one of its truncations.
pub fn truncation(corpus: &Corpus, name: &str, ring: Ring) -> (DiagramRep, Truncation) {
    let diagram = corpus
        .truncation_spec(name)
        .expect("known truncation")
        .diagram
        .clone();
    let rep = corpus.diagram(&diagram, ring).expect("diagram builds");
    let sub = corpus.subdiagram(&rep, name).expect("subdiagram");
    let t = Truncation::new(&rep, &sub).expect("truncation");
    (rep, t)
}
