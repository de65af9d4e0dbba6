//! Explored complexes as graphs with optional 2-simplices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::splitting::disks::DiskClass;
use crate::splitting::HandleSide;
use crate::surface::triangulation::MODEL_VERSION;
use crate::words::FreeWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComplexKind {
    #[serde(rename = "D(V)")]
    Disk,
    #[serde(rename = "P(V)")]
    Primitive,
    #[serde(rename = "P'(V)")]
    PPrime,
    #[serde(rename = "P_D(W)")]
    DualTree,
    #[serde(rename = "Sphere")]
    Sphere,
}

impl ComplexKind {
    pub fn admits_two_simplices(self) -> bool {
        !matches!(self, ComplexKind::Sphere)
    }

    pub fn label(self) -> &'static str {
        match self {
            ComplexKind::Disk => "D(V)",
            ComplexKind::Primitive => "P(V)",
            ComplexKind::PPrime => "P'(V)",
            ComplexKind::DualTree => "P_D(W)",
            ComplexKind::Sphere => "Sphere",
        }
    }
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Provenance of every explored object.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub p: u32,
    pub q: u32,
    pub max_weight: u32,
    pub model_version: String,
}

impl Budget {
    pub fn new(p: u32, q: u32, max_weight: u32) -> Budget {
        Budget { p, q, max_weight, model_version: MODEL_VERSION.to_string() }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{}) max_weight={} model={}", self.p, self.q, self.max_weight, self.model_version)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskPayload {
    pub side: HandleSide,
    pub key: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weights: Option<[u32; 9]>,
    pub word_self: FreeWord,
    pub word_other: FreeWord,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level: Option<u32>,
}

impl From<&DiskClass> for DiskPayload {
    fn from(d: &DiskClass) -> Self {
        DiskPayload {
            side: d.side,
            key: d.key().to_string(),
            weights: d.normal().map(|n| *n.weights()),
            word_self: d.word_self.clone(),
            word_other: d.word_other.clone(),
            level: d.level,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Disk(DiskPayload),
    DualPair { v: DiskPayload, w: DiskPayload },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub key: String,
    pub payload: Payload,
}

impl Vertex {
    pub fn disk(d: &DiskClass) -> Vertex {
        Vertex { key: d.key().to_string(), payload: Payload::Disk(d.into()) }
    }

    pub fn pair(v: &DiskClass, w: &DiskClass) -> Vertex {
        Vertex { key: pair_key(&v.key().to_string(), &w.key().to_string()), payload: Payload::DualPair { v: v.into(), w: w.into() } }
    }

    /// For dual-pair vertices, the keys of the V-disk and the W-disk.
    pub fn pair_keys(&self) -> Option<(&str, &str)> {
        match &self.payload {
            Payload::DualPair { v, w } => Some((&v.key, &w.key)),
            Payload::Disk(_) => None,
        }
    }
}

pub fn pair_key(v: &str, w: &str) -> String {
    format!("{}|{}", v, w)
}

/// Which clause of the sphere-complex adjacency produced an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClause {
    /// Same W-disk, disjoint V-disks.
    SharedW,
    /// Same V-disk, disjoint W-disks.
    SharedV,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeInfo {
    /// Common dual disks witnessing the edge, where applicable.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub clause: Option<EdgeClause>,
}

/// A finite explored piece of one of the complexes. Vertices are sorted by
/// key; edges are index pairs `(a, b)` with `a < b`, sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexGraph {
    pub kind: ComplexKind,
    pub budget: Budget,
    vertices: Vec<Vertex>,
    index: BTreeMap<String, usize>,
    edges: BTreeMap<(usize, usize), EdgeInfo>,
    two_simplices: BTreeSet<[usize; 3]>,
    adjacency: Vec<Vec<usize>>,
}

impl ComplexGraph {
    pub fn new(kind: ComplexKind, budget: Budget, mut vertices: Vec<Vertex>) -> ComplexGraph {
        vertices.sort_by(|a, b| a.key.cmp(&b.key));
        vertices.dedup_by(|a, b| a.key == b.key);
        let index = vertices.iter().enumerate().map(|(i, v)| (v.key.clone(), i)).collect();
        let n = vertices.len();
        ComplexGraph {
            kind,
            budget,
            vertices,
            index,
            edges: BTreeMap::new(),
            two_simplices: BTreeSet::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn add_edge(&mut self, a: usize, b: usize, info: EdgeInfo) {
        assert!(a != b && a < self.vertices.len() && b < self.vertices.len(), "bad edge");
        let e = (a.min(b), a.max(b));
        if self.edges.insert(e, info).is_none() {
            let pos = self.adjacency[e.0].binary_search(&e.1).unwrap_err();
            self.adjacency[e.0].insert(pos, e.1);
            let pos = self.adjacency[e.1].binary_search(&e.0).unwrap_err();
            self.adjacency[e.1].insert(pos, e.0);
        }
    }

    pub fn add_two_simplex(&mut self, mut t: [usize; 3]) -> Result<()> {
        if !self.kind.admits_two_simplices() {
            return Err(Error::Precondition(format!("{} has no 2-simplices", self.kind)));
        }
        t.sort();
        if t[0] == t[1] || t[1] == t[2] {
            return Err(Error::Precondition("2-simplex with a repeated vertex".into()));
        }
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            if !self.edges.contains_key(&(a, b)) {
                return Err(Error::Precondition("2-simplex without its edges".into()));
            }
        }
        self.two_simplices.insert(t);
        Ok(())
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains_key(&(a.min(b), a.max(b)))
    }

    pub fn edge_info(&self, a: usize, b: usize) -> Option<&EdgeInfo> {
        self.edges.get(&(a.min(b), a.max(b)))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&(usize, usize), &EdgeInfo)> {
        self.edges.iter()
    }

    pub fn two_simplices(&self) -> impl Iterator<Item = &[usize; 3]> {
        self.two_simplices.iter()
    }

    pub fn two_simplex_count(&self) -> usize {
        self.two_simplices.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// The induced subgraph on the vertices accepted by `keep` (2-simplices included).
    pub fn induced(&self, keep: impl Fn(&Vertex) -> bool) -> ComplexGraph {
        let kept: Vec<Vertex> = self.vertices.iter().filter(|v| keep(v)).cloned().collect();
        let mut g = ComplexGraph::new(self.kind, self.budget.clone(), kept);
        let map: Vec<Option<usize>> = self.vertices.iter().map(|v| g.index_of(&v.key)).collect();
        for (&(a, b), info) in &self.edges {
            if let (Some(x), Some(y)) = (map[a], map[b]) {
                g.add_edge(x, y, info.clone());
            }
        }
        for t in &self.two_simplices {
            if let (Some(x), Some(y), Some(z)) = (map[t[0]], map[t[1]], map[t[2]]) {
                g.add_two_simplex([x, y, z]).expect("edges of a kept simplex are kept");
            }
        }
        g
    }

    pub fn to_document(&self) -> GraphDocument {
        GraphDocument {
            format: DOCUMENT_FORMAT.to_string(),
            kind: self.kind,
            budget: self.budget.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|(&(a, b), info)| EdgeRecord {
                    a: self.vertices[a].key.clone(),
                    b: self.vertices[b].key.clone(),
                    info: info.clone(),
                })
                .collect(),
            two_simplices: self
                .two_simplices
                .iter()
                .map(|t| t.map(|i| self.vertices[i].key.clone()))
                .collect(),
        }
    }

    pub fn from_document(doc: &GraphDocument) -> Result<ComplexGraph> {
        if doc.format != DOCUMENT_FORMAT {
            return Err(Error::Parse(format!("unknown document format {:?}", doc.format)));
        }
        let mut g = ComplexGraph::new(doc.kind, doc.budget.clone(), doc.vertices.clone());
        if g.vertex_count() != doc.vertices.len() {
            return Err(Error::Parse("duplicate vertex keys".into()));
        }
        let idx = |g: &ComplexGraph, k: &str| g.index_of(k).ok_or_else(|| Error::Parse(format!("edge endpoint {:?} is not a vertex", k)));
        for e in &doc.edges {
            let (a, b) = (idx(&g, &e.a)?, idx(&g, &e.b)?);
            if a == b {
                return Err(Error::Parse(format!("loop at {:?}", e.a)));
            }
            g.add_edge(a, b, e.info.clone());
        }
        for t in &doc.two_simplices {
            let s = [idx(&g, &t[0])?, idx(&g, &t[1])?, idx(&g, &t[2])?];
            g.add_two_simplex(s).map_err(|e| Error::Parse(e.to_string()))?;
        }
        Ok(g)
    }
}

pub const DOCUMENT_FORMAT: &str = "lensphere-graph/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub a: String,
    pub b: String,
    #[serde(flatten)]
    pub info: EdgeInfo,
}

/// Serialized form of a [`ComplexGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDocument {
    pub format: String,
    pub kind: ComplexKind,
    pub budget: Budget,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeRecord>,
    pub two_simplices: Vec<[String; 3]>,
}
