//! Oriented multigraphs: hop distances, diameter, forest/tree tests.
//!
//! Edges are directed for diagram purposes, but the distance, diameter,
//! and classification notions here are all unoriented.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::unionfind::UnionFind;

/// A finite directed multigraph with named vertices and edges; self-loops
/// and parallel edges are permitted.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrientedGraph {
    vertices: Vec<String>,
    vindex: BTreeMap<String, usize>,
    edges: Vec<Edge>,
}

/// One directed edge, endpoints stored as vertex indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GraphError {
    EmptyName,
    DuplicateVertex(String),
    DuplicateEdge(String),
    UnknownVertex(String),
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::EmptyName => f.write_str("vertex and edge names must be non-empty"),
            GraphError::DuplicateVertex(v) => write!(f, "duplicate vertex '{v}'"),
            GraphError::DuplicateEdge(e) => write!(f, "duplicate edge id '{e}'"),
            GraphError::UnknownVertex(v) => write!(f, "unknown vertex '{v}'"),
        }
    }
}

impl core::error::Error for GraphError {}

impl OrientedGraph {
    /// Edges are `(id, source name, target name)`.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, String)>,
    ) -> Result<Self, GraphError> {
        let mut vindex = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if vindex.insert(v.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen_ids = BTreeMap::new();
        let mut out = Vec::with_capacity(edges.len());
        for (id, src, dst) in edges {
            if id.is_empty() {
                return Err(GraphError::EmptyName);
            }
            if seen_ids.insert(id.clone(), ()).is_some() {
                return Err(GraphError::DuplicateEdge(id));
            }
            let src = *vindex.get(&src).ok_or(GraphError::UnknownVertex(src))?;
            let dst = *vindex.get(&dst).ok_or(GraphError::UnknownVertex(dst))?;
            out.push(Edge { id, src, dst });
        }
        Ok(OrientedGraph {
            vertices,
            vindex,
            edges: out,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vindex.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = alloc::vec![Vec::new(); self.vertices.len()];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            adj[e.dst].push(e.src);
        }
        adj
    }

    /// Unoriented hop distances from `start` to every vertex
    /// (`None` = unreachable).
    fn bfs(&self, start: usize, adj: &[Vec<usize>]) -> Vec<Option<usize>> {
        let mut dist = alloc::vec![None; self.vertices.len()];
        dist[start] = Some(0);
        let mut frontier = alloc::vec![start];
        let mut hops = 0usize;
        while !frontier.is_empty() {
            hops += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in &adj[u] {
                    if dist[v].is_none() {
                        dist[v] = Some(hops);
                        next.push(v);
                    }
                }
            }
            frontier = next;
        }
        dist
    }
}

/// The unoriented hop distance between two vertices; `None` when they are
/// in different components.
pub fn graph_distance(g: &OrientedGraph, u: &str, v: &str) -> Result<Option<usize>, GraphError> {
    let iu = g
        .vertex_index(u)
        .ok_or_else(|| GraphError::UnknownVertex(u.into()))?;
    let iv = g
        .vertex_index(v)
        .ok_or_else(|| GraphError::UnknownVertex(v.into()))?;
    Ok(g.bfs(iu, &g.adjacency())[iv])
}

/// The largest unoriented hop distance over all vertex pairs; `None` when
/// the graph is disconnected, `Some(0)` for at most one vertex.
pub fn graph_diameter(g: &OrientedGraph) -> Option<usize> {
    let n = g.vertex_count();
    if n <= 1 {
        return Some(0);
    }
    let adj = g.adjacency();
    let mut best = 0usize;
    for start in 0..n {
        let dist = g.bfs(start, &adj);
        for d in dist {
            best = best.max(d?);
        }
    }
    Some(best)
}

/// The unoriented shape of a graph.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct GraphClass {
    pub connected: bool,
    /// No unoriented cycles; self-loops and parallel edges count as cycles.
    pub forest: bool,
    pub tree: bool,
}

/// Classifies the underlying unoriented graph. The empty graph counts as
/// connected (and hence as a tree): there is no pair of vertices left
/// unjoined and no cycle.
pub fn classify(g: &OrientedGraph) -> GraphClass {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    let mut forest = true;
    for e in g.edges() {
        if e.src == e.dst || !uf.union(e.src, e.dst) {
            // A self-loop, or an edge joining already-connected vertices
            // (which covers parallel edges), closes a cycle.
            forest = false;
        }
    }
    let components = uf.blocks().len();
    let connected = components <= 1;
    GraphClass {
        connected,
        forest,
        tree: connected && forest,
    }
}
