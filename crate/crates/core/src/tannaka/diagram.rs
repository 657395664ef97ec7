//! Diagrams, their representations in finitely generated modules, and the
//! pairs diagram with its homology representation.

use std::collections::BTreeMap;

use super::TannakaError;
use crate::linalg::{FgModule, ModuleMap, RatMatrix, Ring};
use crate::simplicial::{
    induced_map_between, product_pair, product_vertex, split_vertex, triple_boundary_between,
    PairHomology, PairMap, SimplicialMap, SimplicialPair, Vertex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    /// Induced by a morphism of pairs.
    Map,
    /// Boundary map of a triple.
    Triple,
    /// A map edge of the form `f × id` or `id × f` between product vertices.
    Product,
    /// The factor swap `X × Y → Y × X`.
    Swap,
    /// The identification `pt × X → X` or `X × pt → X`.
    Unit,
    /// The identification `(U × V) × W → U × (V × W)`.
    Associator,
    /// A bare linear map, not coming from topology.
    Linear,
}

impl EdgeKind {
    pub fn name(self) -> &'static str {
        match self {
            EdgeKind::Map => "map",
            EdgeKind::Triple => "triple",
            EdgeKind::Product => "product",
            EdgeKind::Swap => "swap",
            EdgeKind::Unit => "unit",
            EdgeKind::Associator => "associator",
            EdgeKind::Linear => "linear",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramEdge {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub kind: EdgeKind,
}

/// A finite directed multigraph with named vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Diagram {
    pub vertices: Vec<String>,
    pub edges: Vec<DiagramEdge>,
}

/// Topological data behind a vertex `(X, Z, n)` of the pairs diagram.
#[derive(Clone, Debug)]
pub struct PairVertex {
    pub pair: SimplicialPair,
    pub degree: usize,
    pub homology: PairHomology,
}

#[derive(Clone, Debug)]
pub struct RepVertex {
    pub name: String,
    pub module: FgModule,
    pub pair: Option<PairVertex>,
}

#[derive(Clone, Debug)]
pub struct RepEdge {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub kind: EdgeKind,
    pub map: ModuleMap,
    /// Underlying simplicial map for topological map edges.
    pub simplicial: Option<SimplicialMap>,
}

/// A representation: a module per vertex and a module map per edge.
#[derive(Clone, Debug)]
pub struct DiagramRep {
    ring: Ring,
    vertices: Vec<RepVertex>,
    edges: Vec<RepEdge>,
    /// `(v, w) ↦ v×w` for product vertices.
    products: BTreeMap<(usize, usize), usize>,
}

impl DiagramRep {
    pub fn new(ring: Ring) -> Self {
        DiagramRep {
            ring,
            vertices: Vec::new(),
            edges: Vec::new(),
            products: BTreeMap::new(),
        }
    }

    /// A representation given by free ranks and edge matrices `(source, target, matrix)`.
    pub fn from_matrices(
        ring: Ring,
        ranks: &[usize],
        edges: &[(usize, usize, RatMatrix)],
    ) -> Result<Self, TannakaError> {
        let mut rep = DiagramRep::new(ring);
        for (i, &r) in ranks.iter().enumerate() {
            rep.add_vertex(&format!("v{i}"), FgModule::free(ring, r));
        }
        for (k, (s, t, m)) in edges.iter().enumerate() {
            rep.add_linear_edge(&format!("e{k}"), *s, *t, m.clone())?;
        }
        Ok(rep)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn vertices(&self) -> &[RepVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[RepEdge] {
        &self.edges
    }

    pub fn vertex(&self, v: usize) -> &RepVertex {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &RepEdge {
        &self.edges[e]
    }

    pub fn module(&self, v: usize) -> &FgModule {
        &self.vertices[v].module
    }

    pub fn rank(&self, v: usize) -> usize {
        self.vertices[v].module.generators()
    }

    pub fn is_free(&self, v: usize) -> bool {
        self.vertices[v].module.is_free()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    fn require_vertex(&self, name: &str) -> Result<usize, TannakaError> {
        self.vertex_index(name)
            .ok_or_else(|| TannakaError::UnknownVertex(name.to_string()))
    }

    /// The product vertex registered for `(v, w)`.
    pub fn product(&self, v: usize, w: usize) -> Option<usize> {
        self.products.get(&(v, w)).copied()
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), usize> {
        &self.products
    }

    pub fn diagram(&self) -> Diagram {
        Diagram {
            vertices: self.vertices.iter().map(|v| v.name.clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| DiagramEdge {
                    name: e.name.clone(),
                    source: e.source,
                    target: e.target,
                    kind: e.kind,
                })
                .collect(),
        }
    }

    fn check_name(&self, name: &str) -> Result<(), TannakaError> {
        if self.vertex_index(name).is_some() || self.edge_index(name).is_some() {
            return Err(TannakaError::DuplicateName(name.to_string()));
        }
        Ok(())
    }

    /// Adds a vertex carrying an abstract module.
    pub fn add_vertex(&mut self, name: &str, module: FgModule) -> usize {
        self.vertices.push(RepVertex {
            name: name.to_string(),
            module,
            pair: None,
        });
        self.vertices.len() - 1
    }

    /// Adds an edge carrying an explicit matrix between free vertices.
    pub fn add_linear_edge(
        &mut self,
        name: &str,
        source: usize,
        target: usize,
        m: RatMatrix,
    ) -> Result<usize, TannakaError> {
        self.check_name(name)?;
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(TannakaError::UnknownVertex(format!("{source} or {target}")));
        }
        let map = ModuleMap::new(self.module(source).clone(), self.module(target).clone(), m)?;
        self.push_edge(name, source, target, EdgeKind::Linear, map, None)
    }

    fn push_edge(
        &mut self,
        name: &str,
        source: usize,
        target: usize,
        kind: EdgeKind,
        map: ModuleMap,
        simplicial: Option<SimplicialMap>,
    ) -> Result<usize, TannakaError> {
        self.edges.push(RepEdge {
            name: name.to_string(),
            source,
            target,
            kind,
            map,
            simplicial,
        });
        Ok(self.edges.len() - 1)
    }

    /// Adds the vertex `(X, Z, n)` with `T = h_n(X, Z)`.
    pub fn add_pair_vertex(
        &mut self,
        name: &str,
        pair: SimplicialPair,
        degree: usize,
    ) -> Result<usize, TannakaError> {
        self.check_name(name)?;
        let homology = PairHomology::new(&pair, self.ring)?;
        let module = homology.module(degree);
        self.vertices.push(RepVertex {
            name: name.to_string(),
            module,
            pair: Some(PairVertex {
                pair,
                degree,
                homology,
            }),
        });
        Ok(self.vertices.len() - 1)
    }

    fn pair_vertex(&self, v: usize) -> Result<&PairVertex, TannakaError> {
        self.vertices[v]
            .pair
            .as_ref()
            .ok_or_else(|| TannakaError::NotAPairVertex(self.vertices[v].name.clone()))
    }

    /// Adds a map edge induced by a simplicial map of pairs.
    pub fn add_map_edge(
        &mut self,
        name: &str,
        source: usize,
        target: usize,
        map: SimplicialMap,
    ) -> Result<usize, TannakaError> {
        self.add_map_edge_of_kind(name, source, target, map, EdgeKind::Map)
    }

    fn add_map_edge_of_kind(
        &mut self,
        name: &str,
        source: usize,
        target: usize,
        map: SimplicialMap,
        kind: EdgeKind,
    ) -> Result<usize, TannakaError> {
        self.check_name(name)?;
        let (s, t) = (self.pair_vertex(source)?, self.pair_vertex(target)?);
        if s.degree != t.degree {
            return Err(TannakaError::DegreeMismatch(format!(
                "map edge {name} joins degrees {} and {}",
                s.degree, t.degree
            )));
        }
        let pm = PairMap::new(s.pair.clone(), t.pair.clone(), map.clone())?;
        let m = induced_map_between(&pm, &s.homology, &t.homology, s.degree)?;
        self.push_edge(name, source, target, kind, m, Some(map))
    }

    /// Adds the triple edge `(X, Z, n) → (Z, W, n-1)`.
    pub fn add_triple_edge(
        &mut self,
        name: &str,
        source: usize,
        target: usize,
    ) -> Result<usize, TannakaError> {
        self.check_name(name)?;
        let (s, t) = (self.pair_vertex(source)?, self.pair_vertex(target)?);
        if s.degree != t.degree + 1 {
            return Err(TannakaError::DegreeMismatch(format!(
                "triple edge {name} goes from degree {} to {}",
                s.degree, t.degree
            )));
        }
        if s.pair.sub() != t.pair.space() {
            return Err(TannakaError::NotATriple(name.to_string()));
        }
        let m = triple_boundary_between(&s.homology, &t.homology, s.degree)?;
        self.push_edge(name, source, target, EdgeKind::Triple, m, None)
    }

    /// Adds the vertex `v × w` (product pair in degree `n + m`) and registers it.
    pub fn add_product_vertex(
        &mut self,
        name: &str,
        v: usize,
        w: usize,
    ) -> Result<usize, TannakaError> {
        let (a, b) = (self.pair_vertex(v)?, self.pair_vertex(w)?);
        let pair = product_pair(&a.pair, &b.pair);
        let degree = a.degree + b.degree;
        let id = self.add_pair_vertex(name, pair, degree)?;
        self.products.insert((v, w), id);
        Ok(id)
    }

    fn registered_product(&self, v: usize, w: usize) -> Result<usize, TannakaError> {
        self.product(v, w).ok_or_else(|| {
            TannakaError::MissingProduct(format!(
                "{} × {}",
                self.vertices[v].name, self.vertices[w].name
            ))
        })
    }

    /// For a map edge `e: v → v'` and a vertex `w`, adds `e × id: v×w → v'×w`
    /// (`left = true`) or `id × e: w×v → w×v'`.
    pub fn add_product_edge(
        &mut self,
        name: &str,
        edge: usize,
        w: usize,
        left: bool,
    ) -> Result<usize, TannakaError> {
        let e = &self.edges[edge];
        let f = e
            .simplicial
            .clone()
            .ok_or_else(|| TannakaError::NotAMapEdge(e.name.clone()))?;
        let (v, v2) = (e.source, e.target);
        let other = self.pair_vertex(w)?.pair.space().clone();
        let (src, tgt) = if left {
            (
                self.registered_product(v, w)?,
                self.registered_product(v2, w)?,
            )
        } else {
            (
                self.registered_product(w, v)?,
                self.registered_product(w, v2)?,
            )
        };
        let n_other = other.universe_size();
        let (src_space, tgt_space) = (
            self.pair_vertex(src)?.pair.space().clone(),
            self.pair_vertex(tgt)?.pair.space().clone(),
        );
        let vertex_map: Vec<Vertex> = if left {
            let n_tgt = n_other;
            (0..src_space.universe_size() as Vertex)
                .map(|p| {
                    let (a, b) = split_vertex(p, n_other);
                    product_vertex(f.apply(a), b, n_tgt)
                })
                .collect()
        } else {
            let (n_src, n_tgt) = (f.source().universe_size(), f.target().universe_size());
            (0..src_space.universe_size() as Vertex)
                .map(|p| {
                    let (a, b) = split_vertex(p, n_src);
                    product_vertex(a, f.apply(b), n_tgt)
                })
                .collect()
        };
        let map = SimplicialMap::new(src_space, tgt_space, vertex_map)?;
        self.add_map_edge_of_kind(name, src, tgt, map, EdgeKind::Product)
    }

    /// Adds the swap edge `v×w → w×v`.
    pub fn add_swap_edge(&mut self, name: &str, v: usize, w: usize) -> Result<usize, TannakaError> {
        let (src, tgt) = (
            self.registered_product(v, w)?,
            self.registered_product(w, v)?,
        );
        let nv = self.pair_vertex(v)?.pair.space().universe_size();
        let nw = self.pair_vertex(w)?.pair.space().universe_size();
        let src_space = self.pair_vertex(src)?.pair.space().clone();
        let tgt_space = self.pair_vertex(tgt)?.pair.space().clone();
        let vertex_map = (0..src_space.universe_size() as Vertex)
            .map(|p| {
                let (a, b) = split_vertex(p, nw);
                product_vertex(b, a, nv)
            })
            .collect();
        let map = SimplicialMap::new(src_space, tgt_space, vertex_map)?;
        self.add_map_edge_of_kind(name, src, tgt, map, EdgeKind::Swap)
    }

    /// Adds the unit edge `p×w → w` (`left = true`) or `w×p → w` for a
    /// one-point vertex `p`.
    pub fn add_unit_edge(
        &mut self,
        name: &str,
        p: usize,
        w: usize,
        left: bool,
    ) -> Result<usize, TannakaError> {
        let point = self.pair_vertex(p)?;
        if point.pair.space().total_count() != 1
            || !point.pair.sub().is_empty()
            || point.degree != 0
        {
            return Err(TannakaError::NotAPoint(self.vertices[p].name.clone()));
        }
        let np = point.pair.space().universe_size();
        let src = if left {
            self.registered_product(p, w)?
        } else {
            self.registered_product(w, p)?
        };
        let nw = self.pair_vertex(w)?.pair.space().universe_size();
        let src_space = self.pair_vertex(src)?.pair.space().clone();
        let tgt_space = self.pair_vertex(w)?.pair.space().clone();
        let vertex_map = (0..src_space.universe_size() as Vertex)
            .map(|q| {
                if left {
                    split_vertex(q, nw).1
                } else {
                    split_vertex(q, np).0
                }
            })
            .collect();
        let map = SimplicialMap::new(src_space, tgt_space, vertex_map)?;
        self.add_map_edge_of_kind(name, src, w, map, EdgeKind::Unit)
    }

    /// Adds the associator edge `(u×v)×w → u×(v×w)`; all four products must be registered.
    pub fn add_associator_edge(
        &mut self,
        name: &str,
        u: usize,
        v: usize,
        w: usize,
    ) -> Result<usize, TannakaError> {
        let (uv, vw) = (
            self.registered_product(u, v)?,
            self.registered_product(v, w)?,
        );
        let (src, tgt) = (
            self.registered_product(uv, w)?,
            self.registered_product(u, vw)?,
        );
        let size = |x: usize| self.pair_vertex(x).map(|p| p.pair.space().universe_size());
        let (nv, nw) = (size(v)?, size(w)?);
        let src_space = self.pair_vertex(src)?.pair.space().clone();
        let tgt_space = self.pair_vertex(tgt)?.pair.space().clone();
        let vertex_map = (0..src_space.universe_size() as Vertex)
            .map(|q| {
                let (ab, c) = split_vertex(q, nw);
                let (a, b) = split_vertex(ab, nv);
                product_vertex(a, product_vertex(b, c, nw), nv * nw)
            })
            .collect();
        let map = SimplicialMap::new(src_space, tgt_space, vertex_map)?;
        self.add_map_edge_of_kind(name, src, tgt, map, EdgeKind::Associator)
    }

    /// The factors `(v, w)` of a registered product vertex.
    pub fn factors(&self, product: usize) -> Option<(usize, usize)> {
        self.products
            .iter()
            .find(|(_, &p)| p == product)
            .map(|(&k, _)| k)
    }

    /// Copy with one edge matrix replaced; used to build negative controls.
    pub fn with_edge_matrix(&self, edge: usize, m: RatMatrix) -> Result<Self, TannakaError> {
        let mut out = self.clone();
        let e = &mut out.edges[edge];
        e.map = ModuleMap::new(e.map.source().clone(), e.map.target().clone(), m)?;
        e.simplicial = None;
        Ok(out)
    }

    /// Copy in which `T(v)` uses the columns of the invertible `p` as its basis.
    /// The vertex loses its pair data, whose homology basis no longer applies.
    pub fn with_vertex_basis(&self, v: usize, p: &RatMatrix) -> Result<Self, TannakaError> {
        let p_inv = crate::linalg::rational::inverse(p)
            .ok_or_else(|| TannakaError::AxiomViolation("basis change is not invertible".into()))?;
        let mut out = self.clone();
        for e in out.edges.iter_mut() {
            let mut m = e.map.matrix().clone();
            if e.source == v {
                m = m.mul(p);
            }
            if e.target == v {
                m = p_inv.mul(&m);
            }
            if e.source == v || e.target == v {
                e.map = ModuleMap::new(e.map.source().clone(), e.map.target().clone(), m)?;
                e.simplicial = None;
            }
        }
        out.vertices[v].pair = None;
        Ok(out)
    }

    /// Looks up vertex names and returns the full subdiagram on them.
    pub fn full_subdiagram(&self, names: &[&str]) -> Result<Subdiagram, TannakaError> {
        let ids = names
            .iter()
            .map(|n| self.require_vertex(n))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Subdiagram::full(self, &ids))
    }
}

/// A finite subdiagram: a vertex set with a subset of the edges between them.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subdiagram {
    vertices: Vec<usize>,
    edges: Vec<usize>,
}

impl Subdiagram {
    /// All edges of `rep` with both ends in `vertices`.
    pub fn full(rep: &DiagramRep, vertices: &[usize]) -> Self {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let edges = (0..rep.edges.len())
            .filter(|&e| {
                vs.binary_search(&rep.edges[e].source).is_ok()
                    && vs.binary_search(&rep.edges[e].target).is_ok()
            })
            .collect();
        Subdiagram {
            vertices: vs,
            edges,
        }
    }

    /// The whole diagram.
    pub fn all(rep: &DiagramRep) -> Self {
        Self::full(rep, &(0..rep.vertices.len()).collect::<Vec<_>>())
    }

    /// Explicit vertices and edges; edges must stay inside the vertex set.
    pub fn with_edges(
        rep: &DiagramRep,
        vertices: &[usize],
        edges: &[usize],
    ) -> Result<Self, TannakaError> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut es = edges.to_vec();
        es.sort_unstable();
        es.dedup();
        if let Some(&v) = vs.iter().find(|&&v| v >= rep.vertices.len()) {
            return Err(TannakaError::UnknownVertex(v.to_string()));
        }
        for &e in &es {
            let edge = rep
                .edges
                .get(e)
                .ok_or_else(|| TannakaError::NotASubdiagram(format!("no edge {e}")))?;
            if vs.binary_search(&edge.source).is_err() || vs.binary_search(&edge.target).is_err() {
                return Err(TannakaError::NotASubdiagram(format!(
                    "edge {} leaves the vertex set",
                    edge.name
                )));
            }
        }
        Ok(Subdiagram {
            vertices: vs,
            edges: es,
        })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Position of `v` in the vertex list.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn is_subdiagram_of(&self, other: &Subdiagram) -> bool {
        self.vertices
            .iter()
            .all(|v| other.vertices.binary_search(v).is_ok())
            && self
                .edges
                .iter()
                .all(|e| other.edges.binary_search(e).is_ok())
    }
}

/// Topological input for [`build_pairs_diagram`]: named pair vertices, map
/// edges and triple edges, with endpoints given by vertex name.
#[derive(Clone, Debug, Default)]
pub struct PairsDiagramInput {
    pub vertices: Vec<(String, SimplicialPair, usize)>,
    pub maps: Vec<(String, String, String, SimplicialMap)>,
    pub triples: Vec<(String, String, String)>,
}

#[derive(Clone, Debug)]
pub struct PairsDiagram {
    pub diagram: Diagram,
    pub rep: DiagramRep,
    /// Vertices whose homology module has torsion.
    pub non_free: Vec<String>,
}

/// Builds the pairs diagram and its homology representation. Torsion in a
/// vertex module is flagged, not rejected.
pub fn build_pairs_diagram(
    input: &PairsDiagramInput,
    ring: Ring,
) -> Result<PairsDiagram, TannakaError> {
    let mut rep = DiagramRep::new(ring);
    for (name, pair, degree) in &input.vertices {
        rep.add_pair_vertex(name, pair.clone(), *degree)?;
    }
    let find = |rep: &DiagramRep, n: &str| {
        rep.vertex_index(n)
            .ok_or_else(|| TannakaError::UnknownVertex(n.to_string()))
    };
    for (name, s, t, map) in &input.maps {
        let (s, t) = (find(&rep, s)?, find(&rep, t)?);
        rep.add_map_edge(name, s, t, map.clone())?;
    }
    for (name, s, t) in &input.triples {
        let (s, t) = (find(&rep, s)?, find(&rep, t)?);
        rep.add_triple_edge(name, s, t)?;
    }
    let non_free = (0..rep.vertices().len())
        .filter(|&v| !rep.is_free(v))
        .map(|v| rep.vertex(v).name.clone())
        .collect();
    Ok(PairsDiagram {
        diagram: rep.diagram(),
        rep,
        non_free,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, Rat};
    use crate::simplicial::models;
    use num_traits::Signed;

    #[test]
    fn point_vertex_is_the_ring() {
        let mut rep = DiagramRep::new(Ring::Z);
        let p = rep
            .add_pair_vertex("pt", SimplicialPair::absolute(models::point()), 0)
            .unwrap();
        assert_eq!(rep.module(p), &FgModule::free(Ring::Z, 1));
    }

    #[test]
    fn circle_and_point_are_rank_one() {
        let mut rep = DiagramRep::new(Ring::Z);
        let gm = models::circle_with_point();
        let c = rep.add_pair_vertex("gm", gm.clone(), 1).unwrap();
        let p = rep
            .add_pair_vertex("base", SimplicialPair::absolute(gm.sub().clone()), 0)
            .unwrap();
        let e = rep.add_triple_edge("d", c, p).unwrap();
        assert_eq!((rep.rank(c), rep.rank(p)), (1, 1));
        assert!(rep.edge(e).map.is_zero());
    }

    #[test]
    fn edge_triple_carries_an_isomorphism() {
        let mut rep = DiagramRep::new(Ring::Z);
        let x = models::simplex(1);
        let ends = x.subcomplex(&[vec![0], vec![1]]).unwrap();
        let w = x.subcomplex(&[vec![0]]).unwrap();
        let a = rep
            .add_pair_vertex("a", SimplicialPair::new(x, ends.clone()).unwrap(), 1)
            .unwrap();
        let b = rep
            .add_pair_vertex("b", SimplicialPair::new(ends, w).unwrap(), 0)
            .unwrap();
        let e = rep.add_triple_edge("d", a, b).unwrap();
        assert_eq!(rep.edge(e).map.matrix().get(0, 0).abs(), rat(1));
        assert!(rep.add_triple_edge("d2", b, a).is_err());
    }

    #[test]
    fn non_free_vertices_are_flagged() {
        let mut rep = DiagramRep::new(Ring::Z);
        let v = rep
            .add_pair_vertex(
                "rp2",
                SimplicialPair::absolute(models::projective_plane()),
                1,
            )
            .unwrap();
        assert!(!rep.is_free(v));
        let mut q = DiagramRep::new(Ring::Q);
        let v = q
            .add_pair_vertex(
                "rp2",
                SimplicialPair::absolute(models::projective_plane()),
                1,
            )
            .unwrap();
        assert!(q.is_free(v));
    }

    #[test]
    fn product_swap_and_unit_edges() {
        let mut rep = DiagramRep::new(Ring::Q);
        let c = rep
            .add_pair_vertex("c", models::circle_with_point(), 1)
            .unwrap();
        let p = rep
            .add_pair_vertex("p", SimplicialPair::absolute(models::point()), 0)
            .unwrap();
        let cc = rep.add_product_vertex("cc", c, c).unwrap();
        let pc = rep.add_product_vertex("pc", p, c).unwrap();
        assert_eq!((rep.rank(cc), rep.rank(pc)), (1, 1));
        let s = rep.add_swap_edge("s", c, c).unwrap();
        assert_eq!(rep.edge(s).map.matrix().get(0, 0), &rat(-1));
        let u = rep.add_unit_edge("u", p, c, true).unwrap();
        assert_eq!(
            rep.edge(u).map.matrix().get(0, 0).abs(),
            Rat::from_integer(1.into())
        );
        assert!(matches!(
            rep.add_swap_edge("s2", p, c),
            Err(TannakaError::MissingProduct(_))
        ));
    }

    #[test]
    fn subdiagrams() {
        let rep = DiagramRep::from_matrices(
            Ring::Q,
            &[1, 1, 1],
            &[
                (0, 1, RatMatrix::identity(1)),
                (1, 2, RatMatrix::identity(1)),
            ],
        )
        .unwrap();
        let f = Subdiagram::full(&rep, &[1, 0]);
        assert_eq!((f.vertices(), f.edges()), (&[0, 1][..], &[0][..]));
        assert!(f.is_subdiagram_of(&Subdiagram::all(&rep)));
        assert!(Subdiagram::with_edges(&rep, &[0, 1], &[1]).is_err());
        let bare = Subdiagram::with_edges(&rep, &[0, 1], &[]).unwrap();
        assert!(bare.is_subdiagram_of(&f));
    }

    #[test]
    fn pairs_diagram_from_named_input() {
        let gm = models::circle_with_point();
        let base = SimplicialPair::absolute(gm.sub().clone());
        let x = models::simplex(1);
        let ends = x.subcomplex(&[vec![0], vec![1]]).unwrap();
        let w = x.subcomplex(&[vec![0]]).unwrap();
        let input = PairsDiagramInput {
            vertices: vec![
                ("gm".into(), gm.clone(), 1),
                ("pt".into(), base, 0),
                (
                    "seg".into(),
                    SimplicialPair::new(x, ends.clone()).unwrap(),
                    1,
                ),
                ("ends".into(), SimplicialPair::new(ends, w).unwrap(), 0),
                (
                    "rp2".into(),
                    SimplicialPair::absolute(models::projective_plane()),
                    1,
                ),
            ],
            maps: vec![(
                "id".into(),
                "gm".into(),
                "gm".into(),
                SimplicialMap::identity(gm.space()),
            )],
            triples: vec![("d".into(), "seg".into(), "ends".into())],
        };
        let d = build_pairs_diagram(&input, Ring::Z).unwrap();
        assert_eq!(d.diagram.vertices.len(), 5);
        assert_eq!(d.diagram.edges.len(), 2);
        assert_eq!((d.rep.rank(0), d.rep.rank(1)), (1, 1));
        assert_eq!(d.rep.edge(1).map.matrix().get(0, 0).abs(), rat(1));
        assert_eq!(d.non_free, vec!["rp2".to_string()]);

        let mut bad = input.clone();
        bad.triples[0].2 = "nowhere".into();
        assert!(matches!(
            build_pairs_diagram(&bad, Ring::Z),
            Err(TannakaError::UnknownVertex(_))
        ));
    }
}
