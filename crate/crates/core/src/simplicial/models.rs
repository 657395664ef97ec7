//! Small standard triangulations.

use std::collections::BTreeMap;

use super::complex::{Simplex, SimplicialComplex, SimplicialPair, Vertex};

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn build(n: usize, facets: &[Vec<Vertex>]) -> SimplicialComplex {
    SimplicialComplex::from_facets(numbered(n), facets).expect("valid model triangulation")
}

pub fn point() -> SimplicialComplex {
    build(1, &[])
}

/// The full `n`-simplex.
pub fn simplex(n: usize) -> SimplicialComplex {
    build(n + 1, &[(0..=n as Vertex).collect()])
}

/// Boundary of the `(n + 1)`-simplex, a triangulated `n`-sphere.
pub fn sphere(n: usize) -> SimplicialComplex {
    let full: Vec<Vertex> = (0..=n as Vertex + 1).collect();
    let facets: Vec<Vec<Vertex>> = (0..full.len())
        .map(|i| {
            Simplex::new(full.clone())
                .unwrap()
                .face(i)
                .vertices()
                .to_vec()
        })
        .collect();
    build(n + 2, &facets)
}

/// A cycle of `n ≥ 3` edges.
pub fn polygon(n: usize) -> SimplicialComplex {
    assert!(n >= 3, "a polygon needs at least three vertices");
    let facets: Vec<Vec<Vertex>> = (0..n as Vertex)
        .map(|i| vec![i, (i + 1) % n as Vertex])
        .collect();
    build(n, &facets)
}

/// The circle with a marked vertex: a model of the multiplicative group relative to `{1}`.
pub fn circle_with_point() -> SimplicialPair {
    let x = sphere(1);
    let z = x.subcomplex(&[vec![0]]).unwrap();
    SimplicialPair::new(x, z).unwrap()
}

/// The 7-vertex torus.
pub fn torus() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    build(7, &facets)
}

/// The 6-vertex real projective plane.
pub fn projective_plane() -> SimplicialComplex {
    let facets: Vec<Vec<Vertex>> = [
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 5, 1],
        [1, 2, 4],
        [2, 3, 5],
        [3, 4, 1],
        [4, 5, 2],
        [5, 1, 3],
    ]
    .iter()
    .map(|f| f.to_vec())
    .collect();
    build(6, &facets)
}

/// Triangulated quotient of an `m × n` grid of squares.  Columns wrap
/// plainly; rows wrap with a reflection when `twist` is set.
fn grid_surface(m: usize, n: usize, twist: bool) -> SimplicialComplex {
    let id = |i: usize, j: usize| -> Vertex {
        let (mut i, mut j) = (i % m, j);
        if j == n {
            j = 0;
            if twist {
                i = (m - i) % m;
            }
        }
        (j * m + i) as Vertex
    };
    let mut facets = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i, j + 1), id(i + 1, j + 1));
            facets.push(vec![a, b, d]);
            facets.push(vec![a, c, d]);
        }
    }
    build(m * n, &facets)
}

/// A Klein bottle on a 4 × 4 grid.
pub fn klein_bottle() -> SimplicialComplex {
    grid_surface(4, 4, true)
}

/// The 5-vertex Möbius band.
pub fn moebius_band() -> SimplicialComplex {
    let facets: Vec<Vec<Vertex>> = (0..5u32)
        .map(|i| vec![i, (i + 1) % 5, (i + 2) % 5])
        .collect();
    build(5, &facets)
}

/// Codimension-one faces lying in exactly one facet of top dimension.
pub fn pseudo_boundary(x: &SimplicialComplex) -> SimplicialComplex {
    let top = x.dim();
    if top < 1 {
        return SimplicialComplex::empty(x.labels().clone());
    }
    let mut count: BTreeMap<Simplex, usize> = BTreeMap::new();
    for s in x.simplices(top as usize) {
        for (_, f) in s.boundary() {
            *count.entry(f).or_default() += 1;
        }
    }
    let facets: Vec<Vec<Vertex>> = count
        .into_iter()
        .filter(|(_, c)| *c == 1)
        .map(|(f, _)| f.vertices().to_vec())
        .collect();
    x.subcomplex(&facets).expect("faces of x")
}

/// Two triangles sharing a vertex.
pub fn bowtie() -> SimplicialComplex {
    build(5, &[vec![0, 1, 2], vec![0, 3, 4]])
}

/// Two circles glued at a vertex.
pub fn figure_eight() -> SimplicialComplex {
    build(
        5,
        &[
            vec![0, 1],
            vec![1, 2],
            vec![0, 2],
            vec![0, 3],
            vec![3, 4],
            vec![0, 4],
        ],
    )
}

/// A triangulated annulus (two triangles wide).
pub fn annulus() -> SimplicialComplex {
    let mut facets = Vec::new();
    for i in 0..3u32 {
        let j = (i + 1) % 3;
        facets.push(vec![i, j, i + 3]);
        facets.push(vec![j, i + 3, j + 3]);
    }
    build(6, &facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_closed_surface(x: &SimplicialComplex) -> bool {
        x.dim() == 2 && pseudo_boundary(x).is_empty()
    }

    #[test]
    fn surface_counts() {
        assert_eq!(torus().euler_characteristic(), 0);
        assert_eq!(projective_plane().euler_characteristic(), 1);
        assert_eq!(klein_bottle().euler_characteristic(), 0);
        assert_eq!(moebius_band().euler_characteristic(), 0);
        assert_eq!(sphere(2).euler_characteristic(), 2);
        assert_eq!(annulus().euler_characteristic(), 0);
        for x in [torus(), projective_plane(), klein_bottle(), sphere(2)] {
            assert!(is_closed_surface(&x));
        }
        assert_eq!(klein_bottle().count(2), 32);
    }

    #[test]
    fn moebius_boundary_is_a_pentagon() {
        let b = pseudo_boundary(&moebius_band());
        assert_eq!((b.count(0), b.count(1), b.dim()), (5, 5, 1));
    }
}
