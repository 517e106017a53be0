//! Ordered, direction-tagged edge cycles.
//!
//! A cycle stores its edge steps plus the implied vertex sequence. A step
//! traversed `Forward` follows its arc's direction; a cycle is *consistent*
//! exactly when every step is forward, i.e. it is a directed cycle.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::id::{EdgeId, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Traversal {
    Forward,
    Backward,
}

impl Traversal {
    pub fn flipped(self) -> Traversal {
        match self {
            Traversal::Forward => Traversal::Backward,
            Traversal::Backward => Traversal::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CycleStep {
    pub edge: EdgeId,
    pub dir: Traversal,
}

/// A simple closed edge walk. Stored in canonical rotation: the step sequence
/// begins at the minimal vertex of the cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cycle {
    steps: Vec<CycleStep>,
    /// `from[i]` is the vertex the i-th step leaves; the i-th step arrives at
    /// `from[(i + 1) % len]`.
    from: Vec<VertexId>,
}

impl Cycle {
    /// Validates the steps against `g` and stores the canonical rotation.
    ///
    /// Requirements: at least two steps, consecutive steps chained head to
    /// tail, the walk closes, no repeated vertex, no repeated edge.
    pub fn new(g: &Digraph, steps: Vec<CycleStep>) -> Result<Cycle> {
        if steps.len() < 2 {
            return Err(Error::InvalidCycle(format!(
                "a cycle needs at least 2 steps, got {}",
                steps.len()
            )));
        }
        let mut from = Vec::with_capacity(steps.len());
        let mut cursor: Option<VertexId> = None;
        for step in &steps {
            let e = g.require_edge(&step.edge)?;
            let (src, dst) = match step.dir {
                Traversal::Forward => (&e.tail, &e.head),
                Traversal::Backward => (&e.head, &e.tail),
            };
            if let Some(c) = &cursor {
                if c != src {
                    return Err(Error::InvalidCycle(format!(
                        "step `{}` starts at `{}` but the walk is at `{}`",
                        step.edge, src, c
                    )));
                }
            }
            from.push(src.clone());
            cursor = Some(dst.clone());
        }
        if cursor.as_ref() != Some(&from[0]) {
            return Err(Error::InvalidCycle("walk does not close".into()));
        }
        let mut sorted = from.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCycle("repeated vertex".into()));
        }
        let mut eids: Vec<&EdgeId> = steps.iter().map(|s| &s.edge).collect();
        eids.sort();
        if eids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCycle("repeated edge".into()));
        }
        Ok(Cycle::rotated_canonical(steps, from))
    }

    fn rotated_canonical(steps: Vec<CycleStep>, from: Vec<VertexId>) -> Cycle {
        let min = from
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let n = steps.len();
        let rot = |v: &[CycleStep]| -> Vec<CycleStep> {
            (0..n).map(|i| v[(min + i) % n].clone()).collect()
        };
        let rotf = |v: &[VertexId]| -> Vec<VertexId> {
            (0..n).map(|i| v[(min + i) % n].clone()).collect()
        };
        Cycle {
            steps: rot(&steps),
            from: rotf(&from),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[CycleStep] {
        &self.steps
    }

    /// Vertex sequence; entry `i` is where step `i` departs.
    pub fn vertices(&self) -> &[VertexId] {
        &self.from
    }

    pub fn contains_vertex(&self, v: &VertexId) -> bool {
        self.from.contains(v)
    }

    pub fn contains_edge(&self, e: &EdgeId) -> bool {
        self.steps.iter().any(|s| &s.edge == e)
    }

    /// True iff every step runs with its arc: a directed cycle.
    pub fn is_consistent(&self) -> bool {
        self.steps.iter().all(|s| s.dir == Traversal::Forward)
    }

    /// The same closed curve traversed the other way.
    pub fn reversed(&self) -> Cycle {
        let n = self.steps.len();
        let steps: Vec<CycleStep> = self
            .steps
            .iter()
            .rev()
            .map(|s| CycleStep {
                edge: s.edge.clone(),
                dir: s.dir.flipped(),
            })
            .collect();
        // Step i of the reversal departs from where original step n-1-i arrived.
        let from: Vec<VertexId> = (0..n).map(|i| self.from[(n - i) % n].clone()).collect();
        Cycle::rotated_canonical(steps, from)
    }

    /// Canonical representative of `{self, self.reversed()}`; undirected
    /// cycle identity ignores traversal direction.
    pub fn undirected_canonical(&self) -> Cycle {
        let rev = self.reversed();
        if *self <= rev {
            self.clone()
        } else {
            rev
        }
    }

    /// Vertex-disjointness test.
    pub fn disjoint_from(&self, other: &Cycle) -> bool {
        self.from.iter().all(|v| !other.contains_vertex(v))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verts: Vec<&str> = self.from.iter().map(|v| v.as_str()).collect();
        write!(f, "({})", verts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        let mut g = Digraph::new();
        for v in ["a", "b", "c"] {
            g.add_vertex(v).unwrap();
        }
        g.add_arc("ab", "a", "b").unwrap();
        g.add_arc("bc", "b", "c").unwrap();
        g.add_arc("ca", "c", "a").unwrap();
        g
    }

    fn fwd(e: &str) -> CycleStep {
        CycleStep {
            edge: e.into(),
            dir: Traversal::Forward,
        }
    }

    #[test]
    fn canonical_rotation_starts_at_min_vertex() {
        let g = triangle();
        let c1 = Cycle::new(&g, vec![fwd("bc"), fwd("ca"), fwd("ab")]).unwrap();
        let c2 = Cycle::new(&g, vec![fwd("ab"), fwd("bc"), fwd("ca")]).unwrap();
        assert_eq!(c1, c2);
        assert_eq!(c1.vertices()[0], "a".into());
        assert!(c1.is_consistent());
    }

    #[test]
    fn reversal_is_involutive_and_inconsistent_here() {
        let g = triangle();
        let c = Cycle::new(&g, vec![fwd("ab"), fwd("bc"), fwd("ca")]).unwrap();
        let r = c.reversed();
        assert!(!r.is_consistent());
        assert_eq!(r.reversed(), c);
        assert_eq!(c.undirected_canonical(), r.undirected_canonical());
        // Reversal visits the same vertices.
        let mut a = c.vertices().to_vec();
        let mut b = r.vertices().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_broken_walks() {
        let g = triangle();
        assert!(Cycle::new(&g, vec![fwd("ab"), fwd("ca")]).is_err());
        assert!(Cycle::new(&g, vec![fwd("ab")]).is_err());
        // Repeated edge.
        let mut g2 = triangle();
        g2.add_arc("ba", "b", "a").unwrap();
        let ok = Cycle::new(
            &g2,
            vec![fwd("ab"), CycleStep { edge: "ab".into(), dir: Traversal::Backward }],
        );
        assert!(ok.is_err());
        // Legitimate bigon from two distinct arcs.
        let bigon = Cycle::new(&g2, vec![fwd("ab"), fwd("ba")]).unwrap();
        assert_eq!(bigon.len(), 2);
        assert!(bigon.is_consistent());
    }
}
