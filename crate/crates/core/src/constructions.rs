//! Deterministic constructors for the digraph families used throughout the
//! toolkit: tournaments, the doubled four-ring, the bipartite linking block
//! and its acyclic orientation, ring and clique gluings of that block, the
//! 11-vertex knotted digraph, and an oriented K{3,3,1}.
//!
//! Every constructor is pure and reproducible: repeated calls produce
//! byte-identical JSON exports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cycle::{Cycle, CycleStep, Traversal};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::id::{EdgeId, VertexId};

fn vname(i: usize) -> String {
    format!("v{i:02}")
}

fn arc_id(tail: &str, head: &str) -> String {
    format!("{tail}>{head}")
}

/// Orientation of the complete graph K_n: arc `i -> j` iff `i < j`.
/// Doubling this gives the complete symmetric digraph on n vertices.
pub fn complete_orientation(n: usize) -> Digraph {
    let mut g = Digraph::new();
    for i in 1..=n {
        g.add_vertex(vname(i)).unwrap();
    }
    for i in 1..=n {
        for j in (i + 1)..=n {
            g.add_arc(arc_id(&vname(i), &vname(j)), vname(i), vname(j))
                .unwrap();
        }
    }
    g
}

/// Directed n-gon `p1 -> p2 -> ... -> pn -> p1` with a vertex-name prefix.
pub fn oriented_polygon(prefix: &str, n: usize) -> Digraph {
    let mut g = Digraph::new();
    let name = |i: usize| format!("{prefix}{:02}", i + 1);
    for i in 0..n {
        g.add_vertex(name(i)).unwrap();
    }
    for i in 0..n {
        let t = name(i);
        let h = name((i + 1) % n);
        g.add_arc(arc_id(&t, &h), t.clone(), h.clone()).unwrap();
    }
    g
}

/// Transitive tournament: arc `i -> j` whenever `i < j`. No directed cycles.
pub fn transitive_tournament(n: usize) -> Digraph {
    complete_orientation(n)
}

/// Transitive tournament on n-1 vertices plus an apex vertex joined to every
/// other vertex by an antiparallel pair: (n+2)(n-1)/2 arcs, dense but free of
/// disjoint directed cycles.
pub fn apex_tournament(n: usize) -> Digraph {
    assert!(n >= 2, "apex tournament needs n >= 2");
    let mut g = transitive_tournament(n - 1);
    let apex = "vapex".to_string();
    g.add_vertex(apex.clone()).unwrap();
    for i in 1..=(n - 1) {
        let v = vname(i);
        g.add_arc(arc_id(&apex, &v), apex.clone(), v.clone()).unwrap();
        g.add_arc(arc_id(&v, &apex), v, apex.clone()).unwrap();
    }
    g
}

/// The doubled four-ring and its labeled parallel-arc pairs.
#[derive(Clone, Debug)]
pub struct DoubledFourRing {
    pub digraph: Digraph,
    /// `pairs[i]` are the two parallel arcs between ring vertices i and i+1;
    /// traversing the first forward and the second backward closes the cycle
    /// usually written C_{i+1}.
    pub pairs: [(EdgeId, EdgeId); 4],
}

impl DoubledFourRing {
    /// The closed curve formed by parallel pair `i` (0-based): first arc
    /// forward, second arc backward. Not a directed cycle.
    pub fn pair_cycle(&self, i: usize) -> Cycle {
        let (a, b) = &self.pairs[i];
        Cycle::new(
            &self.digraph,
            vec![
                CycleStep {
                    edge: a.clone(),
                    dir: Traversal::Forward,
                },
                CycleStep {
                    edge: b.clone(),
                    dir: Traversal::Backward,
                },
            ],
        )
        .expect("parallel pair closes")
    }
}

/// Four vertices in a ring, each adjacent pair joined by two parallel arcs,
/// all directed the same way around. Every Hamiltonian cycle is consistent;
/// there are 2^4 = 16 of them.
pub fn dbar4() -> DoubledFourRing {
    let mut g = Digraph::new();
    for i in 1..=4 {
        g.add_vertex(vname(i)).unwrap();
    }
    let mut pairs = Vec::new();
    for i in 1..=4 {
        let t = vname(i);
        let h = vname(if i == 4 { 1 } else { i + 1 });
        let a = EdgeId(format!("c{i}a"));
        let b = EdgeId(format!("c{i}b"));
        g.add_arc(a.clone(), t.clone(), h.clone()).unwrap();
        g.add_arc(b.clone(), t, h).unwrap();
        pairs.push((a, b));
    }
    DoubledFourRing {
        digraph: g,
        pairs: pairs.try_into().unwrap(),
    }
}

const BLOCK_PART_A: [&str; 4] = ["a", "d", "f", "h"];
const BLOCK_PART_B: [&str; 4] = ["b", "c", "e", "g"];

/// The doubled complete bipartite block: parts {a,d,f,h} and {b,c,e,g} with
/// all 32 antiparallel arcs except `b>a`; 31 arcs. The distinguished arc
/// `a>b` sits in a nonzero-linking-number consistent link in every embedding.
pub fn graph_h() -> (Digraph, EdgeId) {
    let mut g = Digraph::new();
    for v in BLOCK_PART_A.iter().chain(BLOCK_PART_B.iter()) {
        g.add_vertex(*v).unwrap();
    }
    for x in BLOCK_PART_A {
        for y in BLOCK_PART_B {
            g.add_arc(arc_id(x, y), x, y).unwrap();
            if !(x == "a" && y == "b") {
                g.add_arc(arc_id(y, x), y, x).unwrap();
            }
        }
    }
    (g, EdgeId(arc_id("a", "b")))
}

/// The 16-arc orientation of K_{4,4} in which `a>b` lies only on consistent
/// cycles: {d,f,h} -> {c,e,g} (9 arcs), b -> {d,f,h} (3), {c,e,g} -> a (3),
/// and a -> b. A subdigraph of [`graph_h`].
pub fn graph_h_prime() -> (Digraph, EdgeId) {
    let mut g = Digraph::new();
    for v in BLOCK_PART_A.iter().chain(BLOCK_PART_B.iter()) {
        g.add_vertex(*v).unwrap();
    }
    for x in ["d", "f", "h"] {
        for y in ["c", "e", "g"] {
            g.add_arc(arc_id(x, y), x, y).unwrap();
        }
    }
    for x in ["d", "f", "h"] {
        g.add_arc(arc_id("b", x), "b", x).unwrap();
    }
    for y in ["c", "e", "g"] {
        g.add_arc(arc_id(y, "a"), y, "a").unwrap();
    }
    g.add_arc(arc_id("a", "b"), "a", "b").unwrap();
    (g, EdgeId(arc_id("a", "b")))
}

/// Which block template a gadget copy instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BlockKind {
    Full,
    Oriented,
}

impl BlockKind {
    pub fn template(self) -> (Digraph, EdgeId) {
        match self {
            BlockKind::Full => graph_h(),
            BlockKind::Oriented => graph_h_prime(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GadgetCopy {
    pub id: String,
    pub kind: BlockKind,
    /// Template vertex name -> host vertex name; injective on the 8 vertices.
    pub vertex_map: BTreeMap<String, String>,
}

/// How a shared host vertex was formed.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SharedVertex {
    /// (copy id, template endpoint "a" or "b") pairs merged into this vertex.
    pub merged: Vec<(String, String)>,
}

/// Wiring metadata for glued-block gadgets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GadgetWiring {
    pub copies: Vec<GadgetCopy>,
    /// Host ids of the distinguished `a>b` arcs, one per copy.
    pub preferred_edges: Vec<EdgeId>,
    /// Host shared vertex -> endpoints merged into it.
    pub identification: BTreeMap<String, SharedVertex>,
}

#[derive(Clone, Debug)]
pub struct Gadget {
    pub digraph: Digraph,
    pub wiring: GadgetWiring,
}

impl GadgetWiring {
    /// Structural audit: each copy's image must reproduce its template arc
    /// for arc under the relabeling, preferred arcs must be the images of
    /// `a>b`, and identification may merge only a- with b-endpoints.
    pub fn validate(&self, host: &Digraph) -> Result<()> {
        // Host arcs keyed by id prefix (the copy id before `:`).
        let mut by_copy: BTreeMap<&str, Vec<&crate::digraph::Edge>> = BTreeMap::new();
        for e in host.edges() {
            if let Some((prefix, _)) = e.id.0.split_once(':') {
                by_copy.entry(prefix).or_default().push(e);
            }
        }
        let mut preferred = self.preferred_edges.iter();
        for copy in &self.copies {
            let (template, pref) = copy.kind.template();
            let mut images = std::collections::BTreeSet::new();
            for tv in template.vertices() {
                let hv = self.relabel(copy, tv.as_str())?;
                if !images.insert(hv.clone()) {
                    return Err(Error::InvalidParameter(format!(
                        "copy {} relabeling is not injective at {tv}",
                        copy.id
                    )));
                }
                if !host.has_vertex(&VertexId(hv)) {
                    return Err(Error::UnknownVertex(format!("{tv} image in {}", copy.id)));
                }
            }
            let own: BTreeMap<(&str, &str), &crate::digraph::Edge> = by_copy
                .get(copy.id.as_str())
                .map(|edges| {
                    edges
                        .iter()
                        .map(|e| ((e.tail.as_str(), e.head.as_str()), *e))
                        .collect()
                })
                .unwrap_or_default();
            let mut mapped_pref = None;
            for te in template.edges() {
                let t = self.relabel(copy, te.tail.as_str())?;
                let h = self.relabel(copy, te.head.as_str())?;
                let host_edge = own.get(&(t.as_str(), h.as_str())).ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "copy {} is missing the image of arc {}",
                        copy.id, te.id
                    ))
                })?;
                if te.id == pref {
                    mapped_pref = Some(host_edge.id.clone());
                }
            }
            let expected = preferred.next().ok_or_else(|| {
                Error::InvalidParameter("fewer preferred edges than copies".into())
            })?;
            if mapped_pref.as_ref() != Some(expected) {
                return Err(Error::InvalidParameter(format!(
                    "preferred arc of copy {} does not match wiring",
                    copy.id
                )));
            }
        }
        for (host_v, shared) in &self.identification {
            for (_, role) in &shared.merged {
                if role != "a" && role != "b" {
                    return Err(Error::InvalidParameter(format!(
                        "shared vertex {host_v} merges non-endpoint role {role}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn relabel(&self, copy: &GadgetCopy, template_vertex: &str) -> Result<String> {
        copy.vertex_map
            .get(template_vertex)
            .cloned()
            .ok_or_else(|| {
                Error::InvalidParameter(format!(
                    "copy {} has no image for template vertex {template_vertex}",
                    copy.id
                ))
            })
    }
}

/// Glues block copies so copy `i` has endpoint a at `shared_a[i]` and
/// endpoint b at `shared_b[i]`; all other vertices are private to the copy.
fn glue_blocks(
    kinds: &[BlockKind],
    copy_ids: &[String],
    shared_a: &[String],
    shared_b: &[String],
    shared_names: &[String],
) -> Gadget {
    let mut g = Digraph::new();
    for s in shared_names {
        g.add_vertex(s.clone()).unwrap();
    }
    let mut copies = Vec::new();
    let mut preferred = Vec::new();
    let mut ident: BTreeMap<String, SharedVertex> = BTreeMap::new();
    for s in shared_names {
        ident.insert(s.clone(), SharedVertex { merged: Vec::new() });
    }
    for (ci, kind) in kinds.iter().enumerate() {
        let cid = &copy_ids[ci];
        let (template, pref) = kind.template();
        let mut vmap = BTreeMap::new();
        for tv in template.vertices() {
            let host = match tv.as_str() {
                "a" => shared_a[ci].clone(),
                "b" => shared_b[ci].clone(),
                other => {
                    let name = format!("{cid}:{other}");
                    g.add_vertex(name.clone()).unwrap();
                    name
                }
            };
            vmap.insert(tv.0.clone(), host);
        }
        ident
            .get_mut(&shared_a[ci])
            .unwrap()
            .merged
            .push((cid.clone(), "a".into()));
        ident
            .get_mut(&shared_b[ci])
            .unwrap()
            .merged
            .push((cid.clone(), "b".into()));
        for te in template.edges() {
            let host_id = format!("{cid}:{}", te.id.0);
            g.add_arc(
                host_id.clone(),
                vmap[te.tail.as_str()].clone(),
                vmap[te.head.as_str()].clone(),
            )
            .unwrap();
            if te.id == pref {
                preferred.push(EdgeId(host_id));
            }
        }
        copies.push(GadgetCopy {
            id: cid.clone(),
            kind: *kind,
            vertex_map: vmap,
        });
    }
    Gadget {
        digraph: g,
        wiring: GadgetWiring {
            copies,
            preferred_edges: preferred,
            identification: ident,
        },
    }
}

fn ring_of_blocks(kinds: &[BlockKind]) -> Gadget {
    let k = kinds.len();
    let shared: Vec<String> = (0..k).map(|i| format!("s{:02}", i + 1)).collect();
    let copy_ids: Vec<String> = (0..k).map(|i| format!("h{:02}", i + 1)).collect();
    let shared_a = shared.clone();
    let shared_b: Vec<String> = (0..k).map(|i| shared[(i + 1) % k].clone()).collect();
    glue_blocks(kinds, &copy_ids, &shared_a, &shared_b, &shared)
}

/// Three copies of the linking block glued b1=a2, b2=a3, b3=a1 so the
/// preferred arcs form a directed triangle. 21 vertices, 93 arcs.
pub fn three_link_gadget() -> Gadget {
    ring_of_blocks(&[BlockKind::Full; 3])
}

/// Ring of `k` blocks whose preferred arcs form a directed k-cycle,
/// alternating full and oriented blocks when `use_prime_for_half` is set.
/// Requires even `k >= 2`.
pub fn ring_gadget(k: usize, use_prime_for_half: bool) -> Result<Gadget> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "ring gadget needs even k >= 2, got {k}"
        )));
    }
    let kinds: Vec<BlockKind> = (0..k)
        .map(|i| {
            if use_prime_for_half && i % 2 == 1 {
                BlockKind::Oriented
            } else {
                BlockKind::Full
            }
        })
        .collect();
    Ok(ring_of_blocks(&kinds))
}

/// Guarantee threshold for rings of linking blocks: the construction forces
/// an (n+1)-component link exactly when k > 2(n-1).
pub fn ring_threshold(k: usize, n: usize) -> bool {
    k > 2 * (n - 1)
}

/// Ring of 11 full blocks: 77 vertices, 341 arcs, preferred arcs a directed
/// 11-cycle.
pub fn eleven_ring() -> Gadget {
    ring_of_blocks(&[BlockKind::Full; 11])
}

/// 99 copies of the linking block glued over 11 shared vertices so the
/// preferred arcs form the complete symmetric digraph on 11 vertices minus
/// the consistently oriented Hamiltonian cycle 1 -> 2 -> ... -> 11 -> 1.
/// 605 vertices, 3069 arcs.
pub fn four_link_gadget() -> Gadget {
    let n = 11usize;
    let shared: Vec<String> = (0..n).map(|i| format!("s{:02}", i + 1)).collect();
    let mut kinds = Vec::new();
    let mut copy_ids = Vec::new();
    let mut shared_a = Vec::new();
    let mut shared_b = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i == j {
                continue;
            }
            // Skip arcs of the Hamiltonian cycle B: i -> i+1 (mod 11).
            if j == i % n + 1 {
                continue;
            }
            kinds.push(BlockKind::Full);
            copy_ids.push(format!("h{i:02}>{j:02}"));
            shared_a.push(shared[i - 1].clone());
            shared_b.push(shared[j - 1].clone());
        }
    }
    glue_blocks(&kinds, &copy_ids, &shared_a, &shared_b, &shared)
}

/// The Hamiltonian cycle omitted by [`four_link_gadget`], as ordered shared
/// vertex pairs `(s_i, s_{i+1})`.
pub fn four_link_missing_cycle() -> Vec<(VertexId, VertexId)> {
    let n = 11usize;
    (1..=n)
        .map(|i| {
            (
                VertexId(format!("s{:02}", i)),
                VertexId(format!("s{:02}", i % n + 1)),
            )
        })
        .collect()
}

/// Options for the 11-vertex intrinsically knotted construction where the
/// written description leaves a choice.
#[derive(Clone, Copy, Debug)]
pub struct Knotted11Options {
    /// Include b4 among the vertices sending arcs to every a_j (default) or
    /// restrict to b1..b3.
    pub b4_feeds_a: bool,
    /// Realize the a4-a5 edge as an antiparallel pair instead of the single
    /// arc a4 -> a5.
    pub a45_bidirectional: bool,
}

impl Default for Knotted11Options {
    fn default() -> Self {
        Knotted11Options {
            b4_feeds_a: true,
            a45_bidirectional: false,
        }
    }
}

/// The 11-vertex digraph that contains a consistently oriented nontrivial
/// knot in every embedding. 63 arcs under the default options.
pub fn knotted11() -> Digraph {
    knotted11_with(Knotted11Options::default())
}

pub fn knotted11_with(opts: Knotted11Options) -> Digraph {
    let mut g = Digraph::new();
    let a: Vec<String> = (1..=5).map(|i| format!("a{i}")).collect();
    let b: Vec<String> = (1..=4).map(|i| format!("b{i}")).collect();
    for v in a.iter().chain(b.iter()) {
        g.add_vertex(v.clone()).unwrap();
    }
    g.add_vertex("v").unwrap();
    g.add_vertex("w").unwrap();
    let mut arc = |t: &str, h: &str| {
        g.add_arc(arc_id(t, h), t, h).unwrap();
    };
    // K_{3,3} from {a1,a2,a3} to {b1,b2,b3}.
    for i in 0..3 {
        for j in 0..3 {
            arc(&a[i], &b[j]);
        }
    }
    // a1..a3 -> v and v -> b1..b3.
    for i in 0..3 {
        arc(&a[i], "v");
    }
    for j in 0..3 {
        arc("v", &b[j]);
    }
    // A 3-cycle on b1,b2,b3; the orientation is fixed as b1 -> b2 -> b3 -> b1.
    arc("b1", "b2");
    arc("b2", "b3");
    arc("b3", "b1");
    // b1..b3 -> b4.
    for j in 0..3 {
        arc(&b[j], "b4");
    }
    // Each b_i -> each a_j.
    let b_span = if opts.b4_feeds_a { 4 } else { 3 };
    for i in 0..b_span {
        for j in 0..5 {
            arc(&b[i], &a[j]);
        }
    }
    // Each b_i -> w and w -> each a_j.
    for i in 0..b_span {
        arc(&b[i], "w");
    }
    for j in 0..5 {
        arc("w", &a[j]);
    }
    // Complete symmetric triangle on a1,a2,a3.
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                arc(&a[i], &a[j]);
            }
        }
    }
    // a4-a5 edge, single arc by default.
    arc("a4", "a5");
    if opts.a45_bidirectional {
        arc("a5", "a4");
    }
    // a4 and a5 feed a1..a3.
    for s in ["a4", "a5"] {
        for j in 0..3 {
            arc(s, &a[j]);
        }
    }
    g
}

/// Oriented K_{3,3,1}: apex x with x -> a_i and b_j -> x so every triangle
/// (x, a_i, b_j) is a directed cycle; all arcs a_i -> b_j; all arcs
/// b_i -> a_j except b2 -> a2. A reconstruction; flagged as such in the
/// constructor registry metadata.
pub fn oriented_k331() -> Digraph {
    let mut g = Digraph::new();
    g.add_vertex("x").unwrap();
    for i in 1..=3 {
        g.add_vertex(format!("a{i}")).unwrap();
        g.add_vertex(format!("b{i}")).unwrap();
    }
    let mut arc = |t: String, h: String| {
        g.add_arc(arc_id(&t, &h), t, h).unwrap();
    };
    for i in 1..=3 {
        for j in 1..=3 {
            arc(format!("a{i}"), format!("b{j}"));
        }
    }
    for i in 1..=3 {
        arc("x".into(), format!("a{i}"));
        arc(format!("b{i}"), "x".into());
    }
    for i in 1..=3 {
        for j in 1..=3 {
            if i == 2 && j == 2 {
                continue;
            }
            arc(format!("b{i}"), format!("a{j}"));
        }
    }
    g
}
