//! JSON documents for spaces, morphisms, partitions, diagrams, and pair
//! sets.
//!
//! Readers are strict: a space matrix must already be symmetric with a zero
//! diagonal — nothing is symmetrized or repaired silently. Finite distances
//! are JSON numbers (bit-exact round trip); the only non-numeric token is
//! the string `"inf"`.
//!
//! Spaces referenced from other documents may be inline or a file path;
//! paths resolve relative to the directory of the referencing file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use metricglue_core::diagram::{DiagramError, SpaceDiagram};
use metricglue_core::dist::DistError;
use metricglue_core::gluing::{EquivRelation, GlueDiagram, GluingError};
use metricglue_core::graph::{GraphError, OrientedGraph};
use metricglue_core::hom::HomSpace;
use metricglue_core::morphism::{MorphismError, PointMap};
use metricglue_core::pathconvex::{PairSet, PathConvexError};
use metricglue_core::space::{DistMatrix, MetricViolations, SemiMetricSpace, SpaceError};
use metricglue_core::{ExtDist, MetricSpace, PointId};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error("'{0}' is not a distance; expected a number or \"inf\"")]
    BadToken(String),
    #[error(transparent)]
    Dist(#[from] DistError),
    #[error(transparent)]
    Axioms(#[from] MetricViolations),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    PathConvex(#[from] PathConvexError),
}

/// One matrix entry: a JSON number, or the string `"inf"`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistJson {
    Num(f64),
    Word(String),
}

impl From<ExtDist> for DistJson {
    fn from(d: ExtDist) -> DistJson {
        if d.is_finite() {
            DistJson::Num(d.as_f64())
        } else {
            DistJson::Word("inf".into())
        }
    }
}

impl TryFrom<&DistJson> for ExtDist {
    type Error = FormatError;

    fn try_from(d: &DistJson) -> Result<ExtDist, FormatError> {
        match d {
            DistJson::Num(v) => Ok(ExtDist::new(*v)?),
            DistJson::Word(w) if w == "inf" => Ok(ExtDist::INF),
            DistJson::Word(w) => Err(FormatError::BadToken(w.clone())),
        }
    }
}

/// `{ "points": ["a", ...], "dist": [[0, 1.0, "inf"], ...] }`
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct SpaceDoc {
    pub points: Vec<String>,
    pub dist: Vec<Vec<DistJson>>,
}

impl SpaceDoc {
    pub fn from_semi(space: &SemiMetricSpace) -> SpaceDoc {
        SpaceDoc {
            points: space
                .points()
                .iter()
                .map(|p| p.as_str().to_owned())
                .collect(),
            dist: space
                .matrix()
                .rows()
                .map(|row| row.iter().map(|&d| DistJson::from(d)).collect())
                .collect(),
        }
    }

    /// Labels and matrix as written, shape-checked only (no axiom checks):
    /// this is what `validate` reports on.
    pub fn to_parts(&self) -> Result<(Vec<PointId>, DistMatrix), FormatError> {
        let points = self
            .points
            .iter()
            .map(PointId::new)
            .collect::<Result<Vec<_>, _>>()?;
        let rows = self
            .dist
            .iter()
            .map(|row| row.iter().map(ExtDist::try_from).collect())
            .collect::<Result<Vec<Vec<ExtDist>>, _>>()?;
        Ok((points, DistMatrix::from_rows(rows)?))
    }

    /// Validates the full semi-metric axioms; asymmetric input is rejected.
    pub fn to_semi(&self, tol: f64) -> Result<SemiMetricSpace, FormatError> {
        let (points, dist) = self.to_parts()?;
        Ok(SemiMetricSpace::new(points, dist, tol)?)
    }

    /// Validates the full metric axioms; asymmetric input is rejected.
    pub fn to_metric(&self, tol: f64) -> Result<MetricSpace, FormatError> {
        let (points, dist) = self.to_parts()?;
        Ok(MetricSpace::new(points, dist, tol)?)
    }
}

/// A space given inline, or as a path relative to the referencing file.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpaceRef {
    Path(String),
    Inline(SpaceDoc),
}

impl SpaceRef {
    pub fn doc(&self, base: &Path) -> Result<SpaceDoc, FormatError> {
        match self {
            SpaceRef::Inline(doc) => Ok(doc.clone()),
            SpaceRef::Path(p) => read_json(&base.join(p)),
        }
    }

    pub fn to_metric(&self, base: &Path, tol: f64) -> Result<MetricSpace, FormatError> {
        self.doc(base)?.to_metric(tol)
    }
}

fn label_pairs(map: &BTreeMap<String, String>) -> Result<Vec<(PointId, PointId)>, FormatError> {
    map.iter()
        .map(|(from, to)| Ok((PointId::new(from)?, PointId::new(to)?)))
        .collect()
}

/// A morphism's assignment as a label-to-label object.
pub fn map_doc(map: &PointMap) -> BTreeMap<String, String> {
    map.source()
        .points()
        .iter()
        .zip(map.indices())
        .map(|(p, &t)| {
            (
                p.as_str().to_owned(),
                map.target().point(t).as_str().to_owned(),
            )
        })
        .collect()
}

/// `{ "source": <space or path>, "target": ..., "map": {"a": "x", ...} }`
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub source: SpaceRef,
    pub target: SpaceRef,
    pub map: BTreeMap<String, String>,
}

impl MorphismDoc {
    pub fn from_map(map: &PointMap) -> MorphismDoc {
        MorphismDoc {
            source: SpaceRef::Inline(SpaceDoc::from_semi(map.source())),
            target: SpaceRef::Inline(SpaceDoc::from_semi(map.target())),
            map: map_doc(map),
        }
    }

    pub fn to_point_map(&self, base: &Path, tol: f64) -> Result<PointMap, FormatError> {
        let source = self.source.to_metric(base, tol)?;
        let target = self.target.to_metric(base, tol)?;
        Ok(PointMap::from_pairs(
            source.semi_arc(),
            target.semi_arc(),
            &label_pairs(&self.map)?,
        )?)
    }
}

/// `{ "hub": <space>, "arms": [{"target": <space>, "map": {...}}, ...] }`
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct GlueDoc {
    pub hub: SpaceRef,
    pub arms: Vec<ArmDoc>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ArmDoc {
    pub target: SpaceRef,
    pub map: BTreeMap<String, String>,
}

impl GlueDoc {
    pub fn to_diagram(&self, base: &Path, tol: f64) -> Result<GlueDiagram, FormatError> {
        let hub = self.hub.to_metric(base, tol)?;
        let arms = self
            .arms
            .iter()
            .map(|arm| {
                let target = arm.target.to_metric(base, tol)?;
                Ok(PointMap::from_pairs(
                    hub.semi_arc(),
                    target.semi_arc(),
                    &label_pairs(&arm.map)?,
                )?)
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(GlueDiagram::new(hub, arms)?)
    }
}

/// `{ "blocks": [["a", "b"], ["c"]] }`
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PartitionDoc {
    pub blocks: Vec<Vec<String>>,
}

impl PartitionDoc {
    pub fn to_relation(&self, space: &SemiMetricSpace) -> Result<EquivRelation, FormatError> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(PointId::new).collect())
            .collect::<Result<Vec<Vec<PointId>>, _>>()?;
        Ok(EquivRelation::from_blocks(space, &blocks)?)
    }
}

/// `{ "pairs": [["a", "b"], ...] }`
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct PairsDoc {
    pub pairs: Vec<(String, String)>,
}

impl PairsDoc {
    pub fn from_pair_set(set: &PairSet) -> PairsDoc {
        PairsDoc {
            pairs: set
                .pairs()
                .iter()
                .map(|(a, b)| (a.as_str().to_owned(), b.as_str().to_owned()))
                .collect(),
        }
    }

    pub fn to_pair_set(&self, space: &MetricSpace) -> Result<PairSet, FormatError> {
        let pairs = self
            .pairs
            .iter()
            .map(|(a, b)| Ok((PointId::new(a)?, PointId::new(b)?)))
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(PairSet::new(space, pairs)?)
    }
}

/// `{ "vertices": {"A": <space>}, "edges": [{"id": "e1", "src": "A",
/// "dst": "B", "map": {...}}] }`
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub vertices: BTreeMap<String, SpaceRef>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
    pub map: BTreeMap<String, String>,
}

impl DiagramDoc {
    pub fn to_diagram(&self, base: &Path, tol: f64) -> Result<SpaceDiagram, FormatError> {
        let names: Vec<String> = self.vertices.keys().cloned().collect();
        let spaces = self
            .vertices
            .values()
            .map(|r| r.to_metric(base, tol))
            .collect::<Result<Vec<_>, _>>()?;
        let graph = OrientedGraph::new(
            names.clone(),
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.src.clone(), e.dst.clone()))
                .collect(),
        )?;
        let maps = self
            .edges
            .iter()
            .map(|e| {
                // The graph constructor has already vetted the vertex names.
                let si = graph.vertex_index(&e.src).expect("src exists");
                let ti = graph.vertex_index(&e.dst).expect("dst exists");
                Ok(PointMap::from_pairs(
                    spaces[si].semi_arc(),
                    spaces[ti].semi_arc(),
                    &label_pairs(&e.map)?,
                )?)
            })
            .collect::<Result<Vec<_>, FormatError>>()?;
        Ok(SpaceDiagram::new(graph, spaces, maps, tol)?)
    }
}

/// The graph shape shared by diagram files and bare graph files: vertices
/// as a name list or a name-to-space object, edge maps ignored.
#[derive(Deserialize)]
pub struct GraphDoc {
    vertices: VerticesDoc,
    edges: Vec<GraphEdgeDoc>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum VerticesDoc {
    Names(Vec<String>),
    Spaces(BTreeMap<String, serde_json::Value>),
}

#[derive(Deserialize)]
struct GraphEdgeDoc {
    id: String,
    src: String,
    dst: String,
}

impl GraphDoc {
    pub fn to_graph(&self) -> Result<OrientedGraph, FormatError> {
        let names = match &self.vertices {
            VerticesDoc::Names(v) => v.clone(),
            VerticesDoc::Spaces(m) => m.keys().cloned().collect(),
        };
        Ok(OrientedGraph::new(
            names,
            self.edges
                .iter()
                .map(|e| (e.id.clone(), e.src.clone(), e.dst.clone()))
                .collect(),
        )?)
    }
}

/// The base space plus a `"catalog"` object mapping each point label to
/// the contraction it stands for.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct HomDoc {
    #[serde(flatten)]
    pub base: SpaceDoc,
    pub catalog: BTreeMap<String, BTreeMap<String, String>>,
}

impl HomDoc {
    pub fn from_hom(hom: &HomSpace) -> HomDoc {
        HomDoc {
            base: SpaceDoc::from_semi(hom.base().as_semi()),
            catalog: hom
                .base()
                .points()
                .iter()
                .zip(hom.maps())
                .map(|(label, map)| (label.as_str().to_owned(), map_doc(map)))
                .collect(),
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FormatError::Json {
        path: path.to_owned(),
        source,
    })
}

/// Directory against which a file's internal references resolve.
pub fn base_dir(path: &Path) -> PathBuf {
    path.parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."))
}

pub fn load_metric_space(path: &Path, tol: f64) -> Result<MetricSpace, FormatError> {
    read_json::<SpaceDoc>(path)?.to_metric(tol)
}

pub fn load_point_map(path: &Path, tol: f64) -> Result<PointMap, FormatError> {
    read_json::<MorphismDoc>(path)?.to_point_map(&base_dir(path), tol)
}

pub fn load_glue_diagram(path: &Path, tol: f64) -> Result<GlueDiagram, FormatError> {
    read_json::<GlueDoc>(path)?.to_diagram(&base_dir(path), tol)
}

pub fn load_space_diagram(path: &Path, tol: f64) -> Result<SpaceDiagram, FormatError> {
    read_json::<DiagramDoc>(path)?.to_diagram(&base_dir(path), tol)
}
