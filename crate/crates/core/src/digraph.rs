//! Directed multigraph with stable string identities.
//!
//! Parallel arcs and antiparallel pairs are permitted and are always distinct
//! by edge id; self-loops are rejected. Vertices are kept sorted so that
//! enumeration order, canonical cycle forms, and JSON exports are
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::id::{EdgeId, VertexId};

/// A directed edge (arc) from `tail` to `head`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

/// Directed multigraph. Vertices are stored sorted; edges in insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Digraph {
    vertices: Vec<VertexId>,
    edges: Vec<Edge>,
}

impl Digraph {
    pub fn new() -> Self {
        Digraph::default()
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>) -> Result<()> {
        let id = id.into();
        match self.vertices.binary_search(&id) {
            Ok(_) => Err(Error::DuplicateVertex(id.0)),
            Err(pos) => {
                self.vertices.insert(pos, id);
                Ok(())
            }
        }
    }

    pub fn add_arc(
        &mut self,
        id: impl Into<EdgeId>,
        tail: impl Into<VertexId>,
        head: impl Into<VertexId>,
    ) -> Result<()> {
        let id = id.into();
        let tail = tail.into();
        let head = head.into();
        if tail == head {
            return Err(Error::SelfLoop(id.0));
        }
        if self.edges.iter().any(|e| e.id == id) {
            return Err(Error::DuplicateEdge(id.0));
        }
        for v in [&tail, &head] {
            if !self.has_vertex(v) {
                return Err(Error::UnknownEndpoint {
                    edge: id.0,
                    vertex: v.0.clone(),
                });
            }
        }
        self.edges.push(Edge { id, tail, head });
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.binary_search(v).is_ok()
    }

    pub fn edge(&self, id: &EdgeId) -> Option<&Edge> {
        self.edges.iter().find(|e| &e.id == id)
    }

    pub fn require_edge(&self, id: &EdgeId) -> Result<&Edge> {
        self.edge(id).ok_or_else(|| Error::UnknownEdge(id.0.clone()))
    }

    /// All arcs directed `tail -> head`.
    pub fn arcs_from_to<'a>(
        &'a self,
        tail: &'a VertexId,
        head: &'a VertexId,
    ) -> impl Iterator<Item = &'a Edge> + 'a {
        self.edges
            .iter()
            .filter(move |e| &e.tail == tail && &e.head == head)
    }

    /// First antiparallel twin of `e` in edge-id order, if any.
    pub fn twin_of(&self, e: &EdgeId) -> Option<&Edge> {
        let edge = self.edge(e)?;
        self.edges
            .iter()
            .filter(|f| f.tail == edge.head && f.head == edge.tail)
            .min_by(|a, b| a.id.cmp(&b.id))
    }

    pub fn out_degree(&self, v: &VertexId) -> usize {
        self.edges.iter().filter(|e| &e.tail == v).count()
    }

    pub fn in_degree(&self, v: &VertexId) -> usize {
        self.edges.iter().filter(|e| &e.head == v).count()
    }

    /// Vertices of in-degree zero (sources) and out-degree zero (sinks).
    pub fn sources_and_sinks(&self) -> (BTreeSet<VertexId>, BTreeSet<VertexId>) {
        let mut has_in: BTreeSet<&VertexId> = BTreeSet::new();
        let mut has_out: BTreeSet<&VertexId> = BTreeSet::new();
        for e in &self.edges {
            has_out.insert(&e.tail);
            has_in.insert(&e.head);
        }
        let sources = self
            .vertices
            .iter()
            .filter(|v| !has_in.contains(v))
            .cloned()
            .collect();
        let sinks = self
            .vertices
            .iter()
            .filter(|v| !has_out.contains(v))
            .cloned()
            .collect();
        (sources, sinks)
    }

    /// Standard strong connectivity; a single vertex (or the empty graph) is
    /// strongly connected.
    pub fn is_strongly_connected(&self) -> bool {
        let n = self.vertex_count();
        if n <= 1 {
            return true;
        }
        let ix = self.index();
        let reach = |adj: &[Vec<(usize, usize)>]| -> usize {
            let mut seen = vec![false; n];
            let mut stack = vec![0usize];
            seen[0] = true;
            let mut count = 1;
            while let Some(v) = stack.pop() {
                for &(w, _) in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
            count
        };
        reach(&ix.out) == n && reach(&ix.inc) == n
    }

    /// Dense-index view used by the algorithms. Vertex indices follow the
    /// sorted vertex order; adjacency lists are sorted for determinism.
    pub fn index(&self) -> GraphIndex<'_> {
        let vix: BTreeMap<&VertexId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let n = self.vertices.len();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (ei, e) in self.edges.iter().enumerate() {
            let t = vix[&e.tail];
            let h = vix[&e.head];
            out[t].push((h, ei));
            inc[h].push((t, ei));
        }
        for l in out.iter_mut().chain(inc.iter_mut()) {
            l.sort_unstable();
        }
        GraphIndex { g: self, out, inc }
    }

    pub fn vertex_index_of(&self, v: &VertexId) -> Option<usize> {
        self.vertices.binary_search(v).ok()
    }

    /// Unordered endpoint pairs of the underlying undirected simple graph.
    pub fn underlying_pairs(&self) -> BTreeSet<(VertexId, VertexId)> {
        self.edges
            .iter()
            .map(|e| {
                if e.tail <= e.head {
                    (e.tail.clone(), e.head.clone())
                } else {
                    (e.head.clone(), e.tail.clone())
                }
            })
            .collect()
    }

    /// Copy of this digraph without the given edges.
    pub fn without_edges(&self, drop: &BTreeSet<EdgeId>) -> Digraph {
        Digraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| !drop.contains(&e.id))
                .cloned()
                .collect(),
        }
    }

    /// Renames one vertex, carrying all incident arcs along.
    pub fn relabel_vertex(&self, from: &VertexId, to: &VertexId) -> Result<Digraph> {
        if !self.has_vertex(from) {
            return Err(Error::UnknownVertex(from.0.clone()));
        }
        if self.has_vertex(to) {
            return Err(Error::DuplicateVertex(to.0.clone()));
        }
        let mut vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .map(|v| if v == from { to.clone() } else { v.clone() })
            .collect();
        vertices.sort();
        let swap = |v: &VertexId| if v == from { to.clone() } else { v.clone() };
        Ok(Digraph {
            vertices,
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    id: e.id.clone(),
                    tail: swap(&e.tail),
                    head: swap(&e.head),
                })
                .collect(),
        })
    }
}

/// Dense-index adjacency view of a [`Digraph`].
pub struct GraphIndex<'g> {
    pub g: &'g Digraph,
    /// `out[v]` = sorted `(head, edge index)` pairs.
    pub out: Vec<Vec<(usize, usize)>>,
    /// `inc[v]` = sorted `(tail, edge index)` pairs.
    pub inc: Vec<Vec<(usize, usize)>>,
}

impl<'g> GraphIndex<'g> {
    pub fn vertex_count(&self) -> usize {
        self.out.len()
    }

    pub fn vertex(&self, i: usize) -> &VertexId {
        &self.g.vertices()[i]
    }

    pub fn edge(&self, ei: usize) -> &Edge {
        &self.g.edges()[ei]
    }
}

/// Result of symmetric doubling: the doubled digraph plus the pairing table
/// mapping every arc to its antiparallel twin (in both directions).
#[derive(Clone, Debug)]
pub struct SymmetricDouble {
    pub digraph: Digraph,
    pub twin: BTreeMap<EdgeId, EdgeId>,
}

/// Replaces each edge of an undirected graph with an antiparallel arc pair.
///
/// The input is an orientation digraph: one arc per undirected edge, so no
/// two arcs may share the same unordered endpoint pair. Each input arc keeps
/// its id; its reverse twin gets the id suffixed with `~`.
pub fn symmetric_double(g: &Digraph) -> Result<SymmetricDouble> {
    let mut seen_pairs = BTreeSet::new();
    for e in g.edges() {
        let key = if e.tail <= e.head {
            (e.tail.clone(), e.head.clone())
        } else {
            (e.head.clone(), e.tail.clone())
        };
        if !seen_pairs.insert(key) {
            return Err(Error::InvalidParameter(format!(
                "input is not a simple undirected graph: two arcs share the endpoint pair of `{}`",
                e.id
            )));
        }
    }
    let mut out = Digraph::new();
    for v in g.vertices() {
        out.add_vertex(v.clone())?;
    }
    let mut twin = BTreeMap::new();
    for e in g.edges() {
        let rev = EdgeId(format!("{}~", e.id.0));
        out.add_arc(e.id.clone(), e.tail.clone(), e.head.clone())?;
        out.add_arc(rev.clone(), e.head.clone(), e.tail.clone())?;
        twin.insert(e.id.clone(), rev.clone());
        twin.insert(rev, e.id.clone());
    }
    Ok(SymmetricDouble { digraph: out, twin })
}

/// JSON document form of a digraph:
/// `{"vertices":["a",...],"edges":[{"id":"e1","tail":"a","head":"b"},...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: String,
    pub tail: String,
    pub head: String,
}

impl Digraph {
    pub fn to_doc(&self) -> GraphDoc {
        GraphDoc {
            vertices: self.vertices.iter().map(|v| v.0.clone()).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.0.clone(),
                    tail: e.tail.0.clone(),
                    head: e.head.0.clone(),
                })
                .collect(),
        }
    }

    /// Loads from document form, rejecting duplicate ids and self-loops.
    pub fn from_doc(doc: &GraphDoc) -> Result<Digraph> {
        let mut g = Digraph::new();
        for v in &doc.vertices {
            g.add_vertex(v.as_str())?;
        }
        for e in &doc.edges {
            g.add_arc(e.id.as_str(), e.tail.as_str(), e.head.as_str())?;
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("graph serialization");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Digraph> {
        let doc: GraphDoc = serde_json::from_str(s)?;
        Digraph::from_doc(&doc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions;

    #[test]
    fn rejects_self_loops_and_duplicates() {
        let mut g = Digraph::new();
        g.add_vertex("a").unwrap();
        g.add_vertex("b").unwrap();
        assert!(matches!(g.add_arc("e", "a", "a"), Err(Error::SelfLoop(_))));
        g.add_arc("e", "a", "b").unwrap();
        assert!(matches!(
            g.add_arc("e", "b", "a"),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(
            g.add_vertex("a"),
            Err(Error::DuplicateVertex(_))
        ));
    }

    #[test]
    fn symmetric_double_edge_counts() {
        // K3 -> 6 arcs, K6 -> 30 arcs, empty graph -> 0 arcs.
        let k3 = constructions::complete_orientation(3);
        let d = symmetric_double(&k3).unwrap();
        assert_eq!(d.digraph.edge_count(), 6);

        let k6 = constructions::complete_orientation(6);
        assert_eq!(symmetric_double(&k6).unwrap().digraph.edge_count(), 30);

        let mut empty = Digraph::new();
        for i in 0..4 {
            empty.add_vertex(format!("v{i}")).unwrap();
        }
        assert_eq!(symmetric_double(&empty).unwrap().digraph.edge_count(), 0);
    }

    #[test]
    fn symmetric_double_pairing_and_underlying() {
        let k4 = constructions::complete_orientation(4);
        let d = symmetric_double(&k4).unwrap();
        // Pairing is an involution matching reversed endpoints.
        for e in d.digraph.edges() {
            let t = &d.twin[&e.id];
            let te = d.digraph.edge(t).unwrap();
            assert_eq!(te.tail, e.head);
            assert_eq!(te.head, e.tail);
            assert_eq!(&d.twin[t], &e.id);
        }
        // Forgetting orientation and deduplicating recovers the input graph.
        assert_eq!(d.digraph.underlying_pairs(), k4.underlying_pairs());
    }

    #[test]
    fn sources_and_sinks_cases() {
        let t4 = constructions::transitive_tournament(4);
        let (sources, sinks) = t4.sources_and_sinks();
        assert_eq!(sources.into_iter().collect::<Vec<_>>(), vec!["v01".into()]);
        assert_eq!(sinks.into_iter().collect::<Vec<_>>(), vec!["v04".into()]);

        let dk3 = symmetric_double(&constructions::complete_orientation(3))
            .unwrap()
            .digraph;
        let (sources, sinks) = dk3.sources_and_sinks();
        assert!(sources.is_empty() && sinks.is_empty());

        let mut arc = Digraph::new();
        arc.add_vertex("u").unwrap();
        arc.add_vertex("v").unwrap();
        arc.add_arc("e", "u", "v").unwrap();
        let (sources, sinks) = arc.sources_and_sinks();
        assert!(sources.contains(&"u".into()) && sinks.contains(&"v".into()));
    }

    #[test]
    fn strong_connectivity_cases() {
        let dk3 = symmetric_double(&constructions::complete_orientation(3))
            .unwrap()
            .digraph;
        assert!(dk3.is_strongly_connected());
        assert!(!constructions::transitive_tournament(3).is_strongly_connected());

        let mut c4 = Digraph::new();
        for i in 0..4 {
            c4.add_vertex(format!("v{i}")).unwrap();
        }
        for i in 0..4 {
            c4.add_arc(format!("e{i}"), format!("v{i}"), format!("v{}", (i + 1) % 4))
                .unwrap();
        }
        assert!(c4.is_strongly_connected());
    }

    #[test]
    fn json_round_trip_rejects_bad_docs() {
        let g = constructions::transitive_tournament(3);
        let s = g.to_json();
        let back = Digraph::from_json(&s).unwrap();
        assert_eq!(g, back);

        let bad = r#"{"vertices":["a","b"],"edges":[{"id":"e","tail":"a","head":"a"}]}"#;
        assert!(Digraph::from_json(bad).is_err());
        let dup = r#"{"vertices":["a","a"],"edges":[]}"#;
        assert!(Digraph::from_json(dup).is_err());
    }
}
