//! The corpus file: a TOML document of named complexes, pairs, maps,
//! filtrations, covers, diagrams and truncation selections.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use nori_core::filtration::Filtration;
use nori_core::linalg::{FgModule, Int, Rat, RatMatrix, Ring};
use nori_core::simplicial::{models, SimplicialComplex, SimplicialMap, SimplicialPair, Vertex};
use nori_core::tannaka::{DiagramRep, Subdiagram};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read corpus: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed corpus: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("duplicate {kind} `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("{context}: {message}")]
    Invalid { context: String, message: String },
}

fn invalid(context: impl Into<String>, message: impl ToString) -> CorpusError {
    CorpusError::Invalid {
        context: context.into(),
        message: message.to_string(),
    }
}

/// Facets given by vertex labels.
pub type Facets = Vec<Vec<String>>;

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

impl Entry {
    fn to_rat(&self) -> Result<Rat, String> {
        match self {
            Entry::Int(n) => Ok(Rat::from_integer((*n).into())),
            Entry::Text(s) => {
                Rat::from_str(s.trim()).map_err(|_| format!("`{s}` is not a rational number"))
            }
        }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    #[serde(default)]
    pub complex: Vec<ComplexSpec>,
    #[serde(default)]
    pub pair: Vec<PairSpec>,
    #[serde(default)]
    pub map: Vec<MapSpec>,
    #[serde(default)]
    pub triple: Vec<TripleSpec>,
    #[serde(default)]
    pub product: Vec<ProductSpec>,
    #[serde(default)]
    pub cup: Vec<CupSpec>,
    #[serde(default)]
    pub cech: Vec<CechSpec>,
    #[serde(default)]
    pub filtration: Vec<FiltrationSpec>,
    #[serde(default)]
    pub search: Vec<SearchSpec>,
    #[serde(default)]
    pub diagram: Vec<DiagramSpec>,
    #[serde(default)]
    pub truncation: Vec<TruncationSpec>,
    #[serde(default)]
    pub transition: Vec<TransitionSpec>,
    #[serde(default)]
    pub bialgebra: Vec<BialgebraSpec>,
    #[serde(default)]
    pub sigma: Vec<SigmaSpec>,
    #[serde(default)]
    pub sigma_system: Vec<SigmaSystemSpec>,
    #[serde(default)]
    pub comodule: Vec<ComoduleSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    pub name: String,
    /// A built-in triangulation; its vertices are labelled `v0, v1, …`.
    pub model: Option<String>,
    #[serde(default)]
    pub vertices: Vec<String>,
    #[serde(default)]
    pub facets: Facets,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub name: String,
    pub space: String,
    /// Replaces the space by the subcomplex on these facets.
    pub restrict: Option<Facets>,
    #[serde(default)]
    pub sub: Facets,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub name: String,
    pub source: String,
    pub target: String,
    /// Vertex images by label; unlisted vertices keep their label.
    #[serde(default)]
    pub images: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpec {
    pub name: String,
    pub space: String,
    pub middle: Facets,
    #[serde(default)]
    pub lower: Facets,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductSpec {
    pub name: String,
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CupSpec {
    pub name: String,
    pub space: String,
    #[serde(default)]
    pub first: Facets,
    #[serde(default)]
    pub second: Facets,
    pub p: usize,
    pub q: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CechSpec {
    pub name: String,
    pub space: String,
    pub cover: Vec<Facets>,
    #[serde(default)]
    pub components: Vec<Facets>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiltrationSpec {
    pub name: String,
    pub space: String,
    /// `skeletal`, `trivial`, or absent for explicit levels.
    pub kind: Option<String>,
    /// `F_0, …, F_{n-1}`; the top level is the whole space.
    #[serde(default)]
    pub levels: Vec<Facets>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpec {
    pub name: String,
    pub space: String,
    /// A filtration to refine; the trivial one when absent.
    pub start: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub name: String,
    pub rank: Option<usize>,
    #[serde(default)]
    pub torsion: Vec<i64>,
    pub pair: Option<String>,
    pub degree: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub name: String,
    /// `linear`, `map`, `triple`, `product`, `swap` or `unit`; inferred when absent.
    pub kind: Option<String>,
    pub source: Option<String>,
    pub target: Option<String>,
    pub matrix: Option<Vec<Vec<Entry>>>,
    pub map: Option<String>,
    /// For product edges: the map edge and the other factor.
    pub edge: Option<String>,
    pub other: Option<String>,
    /// `left` or `right`, for product and unit edges.
    pub side: Option<String>,
    /// For unit edges: the one-point vertex.
    pub point: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductVertexSpec {
    pub name: String,
    pub left: String,
    pub right: String,
}

/// Generates every product of the factors, the product edges of the map edges
/// between them, all swaps, with a unit both unit identifications, and an
/// associator `(u*v)*w → u*(v*w)` wherever both bracketings are present.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalSpec {
    pub factors: Vec<String>,
    pub unit: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramSpec {
    pub name: String,
    pub vertices: Vec<VertexSpec>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub products: Vec<ProductVertexSpec>,
    pub monoidal: Option<MonoidalSpec>,
    /// Edges added after the generated ones.
    #[serde(default)]
    pub extra_edges: Vec<EdgeSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationSpec {
    pub name: String,
    pub diagram: String,
    pub vertices: Vec<String>,
    /// Restricts the edges; all edges between the vertices when absent.
    pub edges: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitionSpec {
    pub name: String,
    pub small: String,
    pub big: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FragmentSpec {
    pub left: String,
    pub right: String,
    pub target: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebraSpec {
    pub name: String,
    pub left: String,
    pub right: String,
    pub target: String,
    pub unit: Option<String>,
    /// A fragment on smaller truncations, for transition compatibility.
    pub small: Option<FragmentSpec>,
    pub associativity: Option<AssociativitySpec>,
}

/// Truncations for comparing `(x·y)·z` with `x·(y·z)`, where `x` and `y` range
/// over the `left` and `right` truncations of the fragment.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssociativitySpec {
    /// Where `z` ranges.
    pub third: String,
    /// Receives `(target)·(third)`.
    pub left_target: String,
    /// Receives `(right)·(third)`.
    pub right_inner: String,
    /// Receives `(left)·(right_inner)`.
    pub right_target: String,
    /// Contains both `left_target` and `right_target`.
    pub common: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaSpec {
    pub name: String,
    pub vertex: String,
    pub truncations: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaSystemSpec {
    pub name: String,
    pub vertex: String,
    pub chain: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleSpec {
    pub name: String,
    /// Supplies the coalgebra.
    pub truncation: String,
    /// Use the coaction on this vertex.
    pub vertex: Option<String>,
    /// Explicit module and coaction matrix, rows indexed by `i·dim V + a`.
    pub module: Option<ModuleSpec>,
    pub rho: Option<Vec<Vec<Entry>>>,
    /// The extended comodule `C⊗E` on this module.
    pub extended: Option<ModuleSpec>,
}

/// A parsed corpus with its complexes resolved.
#[derive(Debug, Clone)]
pub struct Corpus {
    pub file: CorpusFile,
    /// SHA-256 of the source text.
    pub digest: String,
    complexes: BTreeMap<String, SimplicialComplex>,
    pairs: BTreeMap<String, SimplicialPair>,
}

fn model(name: &str) -> Option<SimplicialComplex> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => (b, a.parse::<usize>().ok()),
        None => (name, None),
    };
    Some(match (base, arg) {
        ("point", None) => models::point(),
        ("simplex", Some(n)) => models::simplex(n),
        ("sphere", Some(n)) => models::sphere(n),
        ("polygon", Some(n)) if n >= 3 => models::polygon(n),
        ("torus", None) => models::torus(),
        ("projective_plane", None) => models::projective_plane(),
        ("klein_bottle", None) => models::klein_bottle(),
        ("moebius_band", None) => models::moebius_band(),
        ("bowtie", None) => models::bowtie(),
        ("figure_eight", None) => models::figure_eight(),
        ("annulus", None) => models::annulus(),
        _ => return None,
    })
}

fn unique<'a, I: IntoIterator<Item = &'a String>>(
    kind: &'static str,
    names: I,
) -> Result<(), CorpusError> {
    let mut seen = std::collections::BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(CorpusError::Duplicate {
                kind,
                name: n.clone(),
            });
        }
    }
    Ok(())
}

pub fn parse_matrix(
    rows: &[Vec<Entry>],
    cols: usize,
    context: &str,
) -> Result<RatMatrix, CorpusError> {
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != cols {
            return Err(invalid(
                context,
                format!("row of length {} where {cols} was expected", row.len()),
            ));
        }
        out.push(
            row.iter()
                .map(|e| e.to_rat().map_err(|m| invalid(context, m)))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    Ok(RatMatrix::from_rows(out, cols))
}

pub fn module_of(spec: &ModuleSpec, ring: Ring, context: &str) -> Result<FgModule, CorpusError> {
    let torsion = if ring == Ring::Q {
        Vec::new()
    } else {
        spec.torsion.iter().map(|&t| Int::from(t)).collect()
    };
    FgModule::new(ring, spec.rank, torsion).map_err(|e| invalid(context, e))
}

impl Corpus {
    pub fn from_path(path: &std::path::Path) -> Result<Self, CorpusError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Parses the text and validates every complex and pair.
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let file: CorpusFile = toml::from_str(text)?;
        let digest = hex::encode(Sha256::digest(text.as_bytes()));
        unique("complex", file.complex.iter().map(|c| &c.name))?;
        unique("pair", file.pair.iter().map(|c| &c.name))?;
        unique("map", file.map.iter().map(|c| &c.name))?;
        unique("filtration", file.filtration.iter().map(|c| &c.name))?;
        unique("diagram", file.diagram.iter().map(|c| &c.name))?;
        unique("truncation", file.truncation.iter().map(|c| &c.name))?;
        let mut complexes = BTreeMap::new();
        for c in &file.complex {
            let x = match &c.model {
                Some(m) => {
                    if !c.vertices.is_empty() || !c.facets.is_empty() {
                        return Err(invalid(
                            &c.name,
                            "a model complex takes no vertices or facets",
                        ));
                    }
                    model(m).ok_or_else(|| CorpusError::Unknown {
                        kind: "model",
                        name: m.clone(),
                    })?
                }
                None => {
                    let labels = c.vertices.clone();
                    let index: BTreeMap<&str, Vertex> = labels
                        .iter()
                        .enumerate()
                        .map(|(i, l)| (l.as_str(), i as Vertex))
                        .collect();
                    let facets = c
                        .facets
                        .iter()
                        .map(|f| {
                            f.iter()
                                .map(|l| {
                                    index.get(l.as_str()).copied().ok_or_else(|| {
                                        CorpusError::Unknown {
                                            kind: "vertex",
                                            name: format!("{}:{l}", c.name),
                                        }
                                    })
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    SimplicialComplex::from_facets(labels, &facets)
                        .map_err(|e| invalid(&c.name, e))?
                }
            };
            complexes.insert(c.name.clone(), x);
        }
        let mut corpus = Corpus {
            file,
            digest,
            complexes,
            pairs: BTreeMap::new(),
        };
        for p in corpus.file.pair.clone() {
            let mut x = corpus.complex(&p.space)?.clone();
            if let Some(r) = &p.restrict {
                x = corpus.subcomplex(&x, r, &p.name)?;
            }
            let z = corpus.subcomplex(&x, &p.sub, &p.name)?;
            let pair = SimplicialPair::new(x, z).map_err(|e| invalid(&p.name, e))?;
            corpus.pairs.insert(p.name.clone(), pair);
        }
        for m in &corpus.file.map {
            corpus.map(&m.name)?;
        }
        Ok(corpus)
    }

    pub fn complex(&self, name: &str) -> Result<&SimplicialComplex, CorpusError> {
        self.complexes
            .get(name)
            .ok_or_else(|| CorpusError::Unknown {
                kind: "complex",
                name: name.into(),
            })
    }

    pub fn pair(&self, name: &str) -> Result<&SimplicialPair, CorpusError> {
        self.pairs.get(name).ok_or_else(|| CorpusError::Unknown {
            kind: "pair",
            name: name.into(),
        })
    }

    /// The subcomplex of `x` generated by facets given as labels.
    pub fn subcomplex(
        &self,
        x: &SimplicialComplex,
        facets: &Facets,
        context: &str,
    ) -> Result<SimplicialComplex, CorpusError> {
        let ids = facets
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| {
                        x.vertex_id(l).ok_or_else(|| CorpusError::Unknown {
                            kind: "vertex",
                            name: format!("{context}:{l}"),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        x.subcomplex(&ids).map_err(|e| invalid(context, e))
    }

    pub fn map(&self, name: &str) -> Result<SimplicialMap, CorpusError> {
        let spec = self
            .file
            .map
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| CorpusError::Unknown {
                kind: "map",
                name: name.into(),
            })?;
        let (x, y) = (self.complex(&spec.source)?, self.complex(&spec.target)?);
        for l in spec.images.keys() {
            if x.vertex_id(l).is_none() {
                return Err(CorpusError::Unknown {
                    kind: "vertex",
                    name: format!("{name}:{l}"),
                });
            }
        }
        let images = x
            .labels()
            .iter()
            .map(|l| {
                let img = spec.images.get(l).unwrap_or(l);
                y.vertex_id(img).ok_or_else(|| CorpusError::Unknown {
                    kind: "vertex",
                    name: format!("{name}:{img}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        SimplicialMap::new(x.clone(), y.clone(), images).map_err(|e| invalid(name, e))
    }

    pub fn filtration(&self, name: &str) -> Result<Filtration, CorpusError> {
        let spec = self
            .file
            .filtration
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| CorpusError::Unknown {
                kind: "filtration",
                name: name.into(),
            })?;
        let x = self.complex(&spec.space)?.clone();
        match spec.kind.as_deref() {
            Some("skeletal") => Ok(Filtration::skeletal(x)),
            Some("trivial") => Ok(Filtration::trivial(x)),
            Some(other) => Err(invalid(name, format!("unknown filtration kind `{other}`"))),
            None => {
                let mut levels = spec
                    .levels
                    .iter()
                    .map(|f| self.subcomplex(&x, f, name))
                    .collect::<Result<Vec<_>, _>>()?;
                levels.push(x.clone());
                Filtration::new(x, levels).map_err(|e| invalid(name, e))
            }
        }
    }

    pub fn diagram_spec(&self, name: &str) -> Result<&DiagramSpec, CorpusError> {
        self.file
            .diagram
            .iter()
            .find(|d| d.name == name)
            .ok_or_else(|| CorpusError::Unknown {
                kind: "diagram",
                name: name.into(),
            })
    }

    /// Builds the representation of a diagram over `ring`.
    pub fn diagram(&self, name: &str, ring: Ring) -> Result<DiagramRep, CorpusError> {
        let spec = self.diagram_spec(name)?;
        let mut rep = DiagramRep::new(ring);
        let ctx = |what: &str| format!("diagram {name}, {what}");
        for v in &spec.vertices {
            match (&v.pair, v.rank) {
                (Some(p), None) => {
                    let degree = v
                        .degree
                        .ok_or_else(|| invalid(ctx(&v.name), "a pair vertex needs a degree"))?;
                    rep.add_pair_vertex(&v.name, self.pair(p)?.clone(), degree)
                        .map_err(|e| invalid(ctx(&v.name), e))?;
                }
                (None, Some(r)) => {
                    let m = module_of(
                        &ModuleSpec {
                            rank: r,
                            torsion: v.torsion.clone(),
                        },
                        ring,
                        &ctx(&v.name),
                    )?;
                    if rep.vertex_index(&v.name).is_some() {
                        return Err(CorpusError::Duplicate {
                            kind: "vertex",
                            name: v.name.clone(),
                        });
                    }
                    rep.add_vertex(&v.name, m);
                }
                _ => {
                    return Err(invalid(
                        ctx(&v.name),
                        "give exactly one of `pair` or `rank`",
                    ))
                }
            }
        }
        let factors = match &spec.monoidal {
            Some(m) => m
                .factors
                .iter()
                .map(|f| vertex(&rep, name, f))
                .collect::<Result<Vec<_>, _>>()?,
            None => Vec::new(),
        };
        for &a in &factors {
            for &b in &factors {
                if rep.product(a, b).is_none() {
                    let n = format!("{}*{}", rep.vertex(a).name, rep.vertex(b).name);
                    rep.add_product_vertex(&n, a, b)
                        .map_err(|e| invalid(ctx(&n), e))?;
                }
            }
        }
        for p in &spec.products {
            let (a, b) = (vertex(&rep, name, &p.left)?, vertex(&rep, name, &p.right)?);
            rep.add_product_vertex(&p.name, a, b)
                .map_err(|e| invalid(ctx(&p.name), e))?;
        }
        for e in &spec.edges {
            self.add_edge(&mut rep, name, e)?;
        }
        if let Some(m) = &spec.monoidal {
            let map_edges: Vec<usize> = (0..rep.edges().len())
                .filter(|&e| {
                    let edge = rep.edge(e);
                    edge.simplicial.is_some()
                        && factors.contains(&edge.source)
                        && factors.contains(&edge.target)
                })
                .collect();
            for e in map_edges {
                for &x in &factors {
                    let (en, xn) = (rep.edge(e).name.clone(), rep.vertex(x).name.clone());
                    rep.add_product_edge(&format!("{en}*{xn}"), e, x, true)
                        .map_err(|err| invalid(ctx(&en), err))?;
                    rep.add_product_edge(&format!("{xn}*{en}"), e, x, false)
                        .map_err(|err| invalid(ctx(&en), err))?;
                }
            }
            for &a in &factors {
                for &b in &factors {
                    let n = format!("swap:{}*{}", rep.vertex(a).name, rep.vertex(b).name);
                    rep.add_swap_edge(&n, a, b)
                        .map_err(|e| invalid(ctx(&n), e))?;
                }
            }
            if let Some(u) = &m.unit {
                let p = vertex(&rep, name, u)?;
                for &x in &factors {
                    let xn = rep.vertex(x).name.clone();
                    let left = format!("left_unit:{u}*{xn}");
                    rep.add_unit_edge(&left, p, x, true)
                        .map_err(|e| invalid(ctx(&left), e))?;
                    let right = format!("right_unit:{xn}*{u}");
                    rep.add_unit_edge(&right, p, x, false)
                        .map_err(|e| invalid(ctx(&right), e))?;
                }
            }
            for src in 0..rep.vertices().len() {
                let Some((uv, w)) = rep.factors(src) else {
                    continue;
                };
                let Some((u, v)) = rep.factors(uv) else {
                    continue;
                };
                let Some(vw) = rep.product(v, w) else {
                    continue;
                };
                if rep.product(u, vw).is_some() {
                    let n = format!("associator:{}", rep.vertex(src).name);
                    rep.add_associator_edge(&n, u, v, w)
                        .map_err(|e| invalid(ctx(&n), e))?;
                }
            }
        }
        for e in &spec.extra_edges {
            self.add_edge(&mut rep, name, e)?;
        }
        Ok(rep)
    }

    fn add_edge(
        &self,
        rep: &mut DiagramRep,
        diagram: &str,
        e: &EdgeSpec,
    ) -> Result<(), CorpusError> {
        let ctx = format!("diagram {diagram}, edge {}", e.name);
        let kind = match &e.kind {
            Some(k) => k.as_str(),
            None if e.matrix.is_some() => "linear",
            None if e.map.is_some() => "map",
            None => return Err(invalid(&ctx, "cannot infer the edge kind")),
        };
        let end = |x: &Option<String>, what: &str| -> Result<usize, CorpusError> {
            let n = x
                .as_ref()
                .ok_or_else(|| invalid(&ctx, format!("missing `{what}`")))?;
            vertex(rep, diagram, n)
        };
        let left_side = || -> Result<bool, CorpusError> {
            match e.side.as_deref() {
                Some("left") | None => Ok(true),
                Some("right") => Ok(false),
                Some(other) => Err(invalid(
                    &ctx,
                    format!("side must be `left` or `right`, not `{other}`"),
                )),
            }
        };
        let result = match kind {
            "linear" => {
                let (s, t) = (end(&e.source, "source")?, end(&e.target, "target")?);
                let rows = e
                    .matrix
                    .as_ref()
                    .ok_or_else(|| invalid(&ctx, "missing `matrix`"))?;
                let m = parse_matrix(rows, rep.rank(s), &ctx)?;
                if m.rows() != rep.rank(t) {
                    return Err(invalid(
                        &ctx,
                        format!(
                            "matrix has {} rows, target rank is {}",
                            m.rows(),
                            rep.rank(t)
                        ),
                    ));
                }
                rep.add_linear_edge(&e.name, s, t, m)
            }
            "map" => {
                let (s, t) = (end(&e.source, "source")?, end(&e.target, "target")?);
                let m = self.map(
                    e.map
                        .as_ref()
                        .ok_or_else(|| invalid(&ctx, "missing `map`"))?,
                )?;
                rep.add_map_edge(&e.name, s, t, m)
            }
            "triple" => rep.add_triple_edge(
                &e.name,
                end(&e.source, "source")?,
                end(&e.target, "target")?,
            ),
            "product" => {
                let edge_name = e
                    .edge
                    .as_ref()
                    .ok_or_else(|| invalid(&ctx, "missing `edge`"))?;
                let edge = rep
                    .edge_index(edge_name)
                    .ok_or_else(|| CorpusError::Unknown {
                        kind: "edge",
                        name: format!("{diagram}:{edge_name}"),
                    })?;
                rep.add_product_edge(&e.name, edge, end(&e.other, "other")?, left_side()?)
            }
            "swap" => rep.add_swap_edge(
                &e.name,
                end(&e.source, "source")?,
                end(&e.target, "target")?,
            ),
            "unit" => rep.add_unit_edge(
                &e.name,
                end(&e.point, "point")?,
                end(&e.other, "other")?,
                left_side()?,
            ),
            other => return Err(invalid(&ctx, format!("unknown edge kind `{other}`"))),
        };
        result.map(|_| ()).map_err(|err| invalid(&ctx, err))
    }

    pub fn truncation_spec(&self, name: &str) -> Result<&TruncationSpec, CorpusError> {
        self.file
            .truncation
            .iter()
            .find(|t| t.name == name)
            .ok_or_else(|| CorpusError::Unknown {
                kind: "truncation",
                name: name.into(),
            })
    }

    pub fn subdiagram(&self, rep: &DiagramRep, name: &str) -> Result<Subdiagram, CorpusError> {
        let spec = self.truncation_spec(name)?;
        let vs = spec
            .vertices
            .iter()
            .map(|v| vertex(rep, &spec.diagram, v))
            .collect::<Result<Vec<_>, _>>()?;
        match &spec.edges {
            None => Ok(Subdiagram::full(rep, &vs)),
            Some(es) => {
                let es = es
                    .iter()
                    .map(|e| {
                        rep.edge_index(e).ok_or_else(|| CorpusError::Unknown {
                            kind: "edge",
                            name: format!("{}:{e}", spec.diagram),
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Subdiagram::with_edges(rep, &vs, &es).map_err(|e| invalid(name, e))
            }
        }
    }
}

pub fn vertex(rep: &DiagramRep, diagram: &str, name: &str) -> Result<usize, CorpusError> {
    rep.vertex_index(name).ok_or_else(|| CorpusError::Unknown {
        kind: "vertex",
        name: format!("{diagram}:{name}"),
    })
}
