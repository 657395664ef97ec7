use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::SimplicialError;

pub type Vertex = u32;

/// An oriented simplex: strictly increasing vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Sorts the vertices; fails on repeated vertices.
    pub fn new(mut vertices: Vec<Vertex>) -> Result<Self, SimplicialError> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(SimplicialError::RepeatedVertex(vertices));
        }
        Ok(Simplex(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<Vertex>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Face opposite to the `i`-th vertex.
    pub fn face(&self, i: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(i);
        Simplex(v)
    }

    /// Faces with their boundary signs `(-1)^i`.
    pub fn boundary(&self) -> impl Iterator<Item = (i64, Simplex)> + '_ {
        let n = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..n).map(move |i| (if i % 2 == 0 { 1 } else { -1 }, self.face(i)))
    }

    /// Front face `[v₀ … v_k]`.
    pub fn front(&self, k: usize) -> Simplex {
        Simplex(self.0[..=k].to_vec())
    }

    /// Back face `[v_k … v_n]`.
    pub fn back(&self, k: usize) -> Simplex {
        Simplex(self.0[k..].to_vec())
    }

    /// All nonempty faces, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }
}

/// A finite simplicial complex on a labelled, totally ordered vertex universe.
///
/// Subcomplexes share the universe of their ambient complex; vertex ids are
/// positions in the label list and the global order is the id order.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    labels: Arc<[String]>,
    /// Simplices grouped by dimension, each group sorted.
    faces: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    pub fn empty(labels: Arc<[String]>) -> Self {
        SimplicialComplex {
            labels,
            faces: Vec::new(),
        }
    }

    /// Closes the given facets under faces and adds every label as a vertex.
    pub fn from_facets(
        labels: Vec<String>,
        facets: &[Vec<Vertex>],
    ) -> Result<Self, SimplicialError> {
        let mut seen = BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(SimplicialError::DuplicateLabel(l.clone()));
            }
        }
        let labels: Arc<[String]> = labels.into();
        let mut all: Vec<Vec<Vertex>> = facets.to_vec();
        all.extend((0..labels.len() as Vertex).map(|v| vec![v]));
        Self::closure(labels, &all)
    }

    /// Subcomplex of `self` generated by the given facets (no extra vertices).
    pub fn subcomplex(&self, facets: &[Vec<Vertex>]) -> Result<Self, SimplicialError> {
        let sub = Self::closure(self.labels.clone(), facets)?;
        if !sub.is_subcomplex_of(self) {
            return Err(SimplicialError::NotASubcomplex);
        }
        Ok(sub)
    }

    pub(crate) fn closure(
        labels: Arc<[String]>,
        facets: &[Vec<Vertex>],
    ) -> Result<Self, SimplicialError> {
        let n = labels.len() as Vertex;
        let mut set: BTreeSet<Simplex> = BTreeSet::new();
        for f in facets {
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(SimplicialError::UnknownVertex(v));
            }
            let s = Simplex::new(f.clone())?;
            set.extend(s.all_faces());
        }
        Ok(Self::from_set(labels, set))
    }

    pub(crate) fn from_set(labels: Arc<[String]>, set: BTreeSet<Simplex>) -> Self {
        let mut faces: Vec<Vec<Simplex>> = Vec::new();
        for s in set {
            let d = s.dim();
            if faces.len() <= d {
                faces.resize(d + 1, Vec::new());
            }
            faces[d].push(s);
        }
        for f in &mut faces {
            f.sort();
        }
        SimplicialComplex { labels, faces }
    }

    pub fn labels(&self) -> &Arc<[String]> {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v as usize]
    }

    pub fn vertex_id(&self, label: &str) -> Option<Vertex> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as Vertex)
    }

    pub fn universe_size(&self) -> usize {
        self.labels.len()
    }

    /// Maximal simplex dimension, `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 1
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn simplices(&self, d: usize) -> &[Simplex] {
        self.faces.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices(d).len()
    }

    pub fn total_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter().flatten()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.index_of(s).is_some()
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        self.faces.get(s.dim())?.binary_search(s).ok()
    }

    pub fn same_universe(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.same_universe(other) && self.iter().all(|s| other.contains(s))
    }

    /// Maximal simplices, in (dimension, lexicographic) order.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut cofaces: BTreeSet<Simplex> = BTreeSet::new();
        for d in 1..self.faces.len() {
            for s in &self.faces[d] {
                for (_, f) in s.boundary() {
                    cofaces.insert(f);
                }
            }
        }
        self.iter()
            .filter(|s| !cofaces.contains(*s))
            .cloned()
            .collect()
    }

    pub fn union(&self, other: &Self) -> Self {
        assert!(
            self.same_universe(other),
            "union of complexes on different universes"
        );
        let set: BTreeSet<Simplex> = self.iter().chain(other.iter()).cloned().collect();
        Self::from_set(self.labels.clone(), set)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert!(
            self.same_universe(other),
            "intersection of complexes on different universes"
        );
        let set: BTreeSet<Simplex> = self.iter().filter(|s| other.contains(s)).cloned().collect();
        Self::from_set(self.labels.clone(), set)
    }

    pub fn skeleton(&self, k: usize) -> Self {
        SimplicialComplex {
            labels: self.labels.clone(),
            faces: self.faces.iter().take(k + 1).cloned().collect(),
        }
    }

    /// Simplices as label lists, for display and certificates.
    pub fn describe(&self, s: &Simplex) -> Vec<String> {
        s.vertices()
            .iter()
            .map(|&v| self.label(v).to_string())
            .collect()
    }

    /// Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .iter()
            .enumerate()
            .map(|(d, f)| {
                if d % 2 == 0 {
                    f.len() as i64
                } else {
                    -(f.len() as i64)
                }
            })
            .sum()
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        write!(
            f,
            "SimplicialComplex(universe {}, f-vector {:?})",
            self.labels.len(),
            counts
        )
    }
}

/// A complex with a distinguished subcomplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPair {
    x: SimplicialComplex,
    z: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(x: SimplicialComplex, z: SimplicialComplex) -> Result<Self, SimplicialError> {
        if !z.is_subcomplex_of(&x) {
            return Err(SimplicialError::InvalidPair);
        }
        Ok(SimplicialPair { x, z })
    }

    /// The pair `(X, ∅)`.
    pub fn absolute(x: SimplicialComplex) -> Self {
        let z = SimplicialComplex::empty(x.labels().clone());
        SimplicialPair { x, z }
    }

    pub fn space(&self) -> &SimplicialComplex {
        &self.x
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.z
    }
}

/// A vertex map between two complexes sending simplices to simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: Vec<Vertex>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: Vec<Vertex>,
    ) -> Result<Self, SimplicialError> {
        if vertex_map.len() != source.universe_size() {
            return Err(SimplicialError::BadVertexMap(format!(
                "{} images for a universe of {} vertices",
                vertex_map.len(),
                source.universe_size()
            )));
        }
        if let Some(&v) = vertex_map
            .iter()
            .find(|&&v| v as usize >= target.universe_size())
        {
            return Err(SimplicialError::UnknownVertex(v));
        }
        let map = SimplicialMap {
            source,
            target,
            vertex_map,
        };
        for s in map.source.iter() {
            let img = map.image(s);
            if !map.target.contains(&img) {
                return Err(SimplicialError::NotSimplicial(map.source.describe(s)));
            }
        }
        Ok(map)
    }

    pub fn identity(x: &SimplicialComplex) -> Self {
        SimplicialMap {
            source: x.clone(),
            target: x.clone(),
            vertex_map: (0..x.universe_size() as Vertex).collect(),
        }
    }

    /// Inclusion of a subcomplex.
    pub fn inclusion(
        sub: &SimplicialComplex,
        x: &SimplicialComplex,
    ) -> Result<Self, SimplicialError> {
        if !sub.is_subcomplex_of(x) {
            return Err(SimplicialError::NotASubcomplex);
        }
        Ok(SimplicialMap {
            source: sub.clone(),
            target: x.clone(),
            vertex_map: (0..x.universe_size() as Vertex).collect(),
        })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &[Vertex] {
        &self.vertex_map
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.vertex_map[v as usize]
    }

    /// Image simplex with repeated vertices collapsed.
    pub fn image(&self, s: &Simplex) -> Simplex {
        let mut v: Vec<Vertex> = s.vertices().iter().map(|&x| self.apply(x)).collect();
        v.sort_unstable();
        v.dedup();
        Simplex::from_sorted(v)
    }

    /// Image on oriented chains: `None` if degenerate, otherwise the sign of the
    /// sorting permutation and the image simplex.
    pub fn chain_image(&self, s: &Simplex) -> Option<(i64, Simplex)> {
        let mut v: Vec<Vertex> = s.vertices().iter().map(|&x| self.apply(x)).collect();
        let mut sign = 1;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                } else if v[j] == v[j + 1] {
                    return None;
                }
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((sign, Simplex::from_sorted(v)))
    }

    /// Image subcomplex of a subcomplex of the source.
    pub fn image_complex(&self, sub: &SimplicialComplex) -> SimplicialComplex {
        let set: BTreeSet<Simplex> = sub.iter().map(|s| self.image(s)).collect();
        SimplicialComplex::from_set(self.target.labels().clone(), set)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SimplicialMap) -> Result<SimplicialMap, SimplicialError> {
        if !self.target.same_universe(&next.source) {
            return Err(SimplicialError::BadVertexMap(
                "composition across different universes".into(),
            ));
        }
        let vm = self.vertex_map.iter().map(|&v| next.apply(v)).collect();
        SimplicialMap::new(self.source.clone(), next.target.clone(), vm)
    }

    /// Weakly monotone on the vertices of every simplex.
    pub fn is_order_preserving(&self) -> bool {
        self.source.iter().all(|s| {
            s.vertices()
                .windows(2)
                .all(|w| self.apply(w[0]) <= self.apply(w[1]))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn closure_counts() {
        let tri = SimplicialComplex::from_facets(labels(3), &[vec![0, 1, 2]]).unwrap();
        assert_eq!((tri.count(0), tri.count(1), tri.count(2)), (3, 3, 1));
        assert_eq!(tri.dim(), 2);
        assert_eq!(tri.euler_characteristic(), 1);
        assert_eq!(tri.facets().len(), 1);
    }

    #[test]
    fn subcomplex_checks() {
        let edge = SimplicialComplex::from_facets(labels(3), &[vec![0, 1]]).unwrap();
        assert!(edge.subcomplex(&[vec![0]]).is_ok());
        assert_eq!(
            edge.subcomplex(&[vec![1, 2]]).unwrap_err(),
            SimplicialError::NotASubcomplex
        );
        let other = SimplicialComplex::from_facets(labels(3), &[vec![1, 2]]).unwrap();
        assert_eq!(
            SimplicialPair::new(edge, other).unwrap_err(),
            SimplicialError::InvalidPair
        );
    }

    #[test]
    fn chain_image_signs() {
        let tri = SimplicialComplex::from_facets(labels(3), &[vec![0, 1, 2]]).unwrap();
        let flip = SimplicialMap::new(tri.clone(), tri.clone(), vec![1, 0, 2]).unwrap();
        let e = Simplex::new(vec![0, 1]).unwrap();
        assert_eq!(flip.chain_image(&e), Some((-1, e.clone())));
        let collapse = SimplicialMap::new(tri.clone(), tri, vec![0, 0, 2]).unwrap();
        assert_eq!(collapse.chain_image(&e), None);
        assert!(!flip.is_order_preserving());
        assert!(collapse.is_order_preserving());
    }
}
