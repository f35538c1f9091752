//! Diagrams of metric spaces over an oriented graph, and their colimits.
//!
//! A [`SpaceDiagram`] assigns a space to every vertex and a contractive
//! point map to every edge. Its [`colimit`] glues the disjoint union of
//! the vertex spaces by the equivalence generated by `x ∼ F(e)(x)`; the
//! metric infimum over chains is then taken by the quotient machinery.
//! Because the indexing category of a graph is free, there are no
//! commutation conditions to check on the diagram itself.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dist::ExtDist;
use crate::gluing::{quotient, EquivRelation, GluingError};
use crate::graph::{graph_diameter, OrientedGraph};
use crate::morphism::PointMap;
use crate::space::{disjoint_union, MetricSpace, SemiMetricSpace};
use crate::unionfind::UnionFind;

/// A graph-shaped diagram of metric spaces and contractions.
#[derive(Clone, Debug)]
pub struct SpaceDiagram {
    graph: OrientedGraph,
    spaces: Vec<MetricSpace>,
    maps: Vec<PointMap>,
}

#[derive(Clone, PartialEq, Debug)]
pub enum DiagramError {
    /// `spaces` must list one space per vertex, `maps` one map per edge.
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    /// The edge's map does not run between its endpoint spaces.
    EdgeEndpointMismatch {
        edge: String,
    },
    /// Edge maps must not increase distances.
    NotContractive {
        edge: String,
        lipschitz: ExtDist,
    },
    Gluing(GluingError),
}

impl From<GluingError> for DiagramError {
    fn from(e: GluingError) -> Self {
        DiagramError::Gluing(e)
    }
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::CountMismatch {
                what,
                expected,
                found,
            } => write!(f, "expected {expected} {what}, found {found}"),
            DiagramError::EdgeEndpointMismatch { edge } => {
                write!(f, "map for edge '{edge}' does not match its endpoints")
            }
            DiagramError::NotContractive { edge, lipschitz } => write!(
                f,
                "map for edge '{edge}' has Lipschitz constant {lipschitz} > 1"
            ),
            DiagramError::Gluing(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for DiagramError {}

impl SpaceDiagram {
    /// `spaces` is indexed like `graph.vertices()`, `maps` like
    /// `graph.edges()`. Every map must run from its edge's source space to
    /// its target space and have Lipschitz constant ≤ 1 + tol.
    pub fn new(
        graph: OrientedGraph,
        spaces: Vec<MetricSpace>,
        maps: Vec<PointMap>,
        tol: f64,
    ) -> Result<Self, DiagramError> {
        if spaces.len() != graph.vertex_count() {
            return Err(DiagramError::CountMismatch {
                what: "vertex spaces",
                expected: graph.vertex_count(),
                found: spaces.len(),
            });
        }
        if maps.len() != graph.edges().len() {
            return Err(DiagramError::CountMismatch {
                what: "edge maps",
                expected: graph.edges().len(),
                found: maps.len(),
            });
        }
        for (e, map) in graph.edges().iter().zip(&maps) {
            if map.source() != spaces[e.src].as_semi() || map.target() != spaces[e.dst].as_semi() {
                return Err(DiagramError::EdgeEndpointMismatch { edge: e.id.clone() });
            }
            let l = map.lipschitz_constant();
            if l.as_f64() > 1.0 + tol {
                return Err(DiagramError::NotContractive {
                    edge: e.id.clone(),
                    lipschitz: l,
                });
            }
        }
        Ok(SpaceDiagram {
            graph,
            spaces,
            maps,
        })
    }

    pub fn graph(&self) -> &OrientedGraph {
        &self.graph
    }

    pub fn spaces(&self) -> &[MetricSpace] {
        &self.spaces
    }

    pub fn maps(&self) -> &[PointMap] {
        &self.maps
    }
}

/// A colimit space with the canonical map from every vertex space.
#[derive(Clone, Debug)]
pub struct Colimit {
    pub space: MetricSpace,
    /// Indexed like the diagram's vertices.
    pub vertex_maps: Vec<PointMap>,
}

/// Glues the disjoint union of the vertex spaces along the equivalence
/// generated by identifying each point with its image under every edge
/// map. With no edges this is the coproduct.
pub fn colimit(d: &SpaceDiagram, tol: f64) -> Result<Colimit, DiagramError> {
    let semis: Vec<&SemiMetricSpace> = d.spaces.iter().map(|s| s.as_semi()).collect();
    let (union, offsets) = disjoint_union(&semis);
    let mut uf = UnionFind::new(union.len());
    for (e, map) in d.graph.edges().iter().zip(&d.maps) {
        for p in 0..d.spaces[e.src].len() {
            uf.union(offsets[e.src] + p, offsets[e.dst] + map.apply_index(p));
        }
    }
    let rel = EquivRelation::from_unionfind(uf, union.len());
    let q = quotient(&union, &rel, tol)?;

    let vertex_maps: Vec<PointMap> = d
        .spaces
        .iter()
        .zip(&offsets)
        .map(|(space, &off)| {
            PointMap::from_indices(
                space.semi_arc(),
                q.space.semi_arc(),
                (0..space.len())
                    .map(|p| q.map.apply_index(off + p))
                    .collect(),
            )
        })
        .collect();

    // ι_{dst} ∘ F(e) = ι_{src} holds by construction of the relation.
    debug_assert!(d.graph.edges().iter().zip(&d.maps).all(|(e, map)| {
        map.then(&vertex_maps[e.dst])
            .expect("edge targets agree")
            .indices()
            == vertex_maps[e.src].indices()
    }));

    Ok(Colimit {
        space: q.space,
        vertex_maps,
    })
}

/// How strongly each canonical map into the colimit preserves distances.
#[derive(Clone, Debug)]
pub struct ExpansivityReport {
    /// Expansivity constant of each vertex's canonical map.
    pub vertex_constants: Vec<ExtDist>,
    /// Unoriented diameter of the diagram's graph (`None` = infinite).
    pub diameter: Option<usize>,
    /// Worst expansivity constant among the edge maps.
    pub min_edge_expansivity: ExtDist,
}

/// Computes the colimit and reports the expansivity constant of every
/// canonical map, alongside the graph diameter and the worst edge-map
/// expansivity for comparison.
pub fn colimit_expansivity_report(
    d: &SpaceDiagram,
    tol: f64,
) -> Result<(Colimit, ExpansivityReport), DiagramError> {
    let col = colimit(d, tol)?;
    let vertex_constants = col
        .vertex_maps
        .iter()
        .map(|m| m.expansivity_constant())
        .collect();
    let report = ExpansivityReport {
        vertex_constants,
        diameter: graph_diameter(&d.graph),
        min_edge_expansivity: ExtDist::min_of(d.maps.iter().map(|m| m.expansivity_constant())),
    };
    Ok((col, report))
}
