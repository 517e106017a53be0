//! Digraph-minor calculus: consistent vertex expansion and edge contraction,
//! weak/strong/H-cyclic subcontraction witnesses, exact subdigraph search,
//! and the quadratic edge-density certificate.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cycle::{Cycle, CycleStep, Traversal};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::id::{EdgeId, VertexId};

/// Which split vertex an incident arc is reassigned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitSide {
    First,
    Second,
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub digraph: Digraph,
    pub v1: VertexId,
    pub v2: VertexId,
    pub new_edge: EdgeId,
}

/// Splits `v` into `v.1` and `v.2`, reassigning each incident arc per
/// `assignment`, and adds one new arc between the split vertices
/// (`v.1 -> v.2` unless `arc_from_second`).
pub fn vertex_expand(
    g: &Digraph,
    v: &VertexId,
    assignment: &BTreeMap<EdgeId, SplitSide>,
    arc_from_second: bool,
) -> Result<Expansion> {
    if !g.has_vertex(v) {
        return Err(Error::UnknownVertex(v.0.clone()));
    }
    let v1 = VertexId(format!("{}.1", v.0));
    let v2 = VertexId(format!("{}.2", v.0));
    let new_edge = EdgeId(format!("{}.split", v.0));
    for taken in [&v1, &v2] {
        if g.has_vertex(taken) {
            return Err(Error::BadExpansion(format!(
                "split vertex name `{taken}` already in use"
            )));
        }
    }
    if g.edge(&new_edge).is_some() {
        return Err(Error::BadExpansion(format!(
            "split edge name `{new_edge}` already in use"
        )));
    }
    let incident: Vec<&EdgeId> = g
        .edges()
        .iter()
        .filter(|e| &e.tail == v || &e.head == v)
        .map(|e| &e.id)
        .collect();
    for e in &incident {
        if !assignment.contains_key(e) {
            return Err(Error::BadExpansion(format!(
                "incident arc `{e}` has no split assignment"
            )));
        }
    }
    let mut out = Digraph::new();
    for u in g.vertices() {
        if u == v {
            continue;
        }
        out.add_vertex(u.clone())?;
    }
    out.add_vertex(v1.clone())?;
    out.add_vertex(v2.clone())?;
    let target = |side: &SplitSide| match side {
        SplitSide::First => v1.clone(),
        SplitSide::Second => v2.clone(),
    };
    for e in g.edges() {
        let mut tail = e.tail.clone();
        let mut head = e.head.clone();
        if &e.tail == v {
            tail = target(&assignment[&e.id]);
        }
        if &e.head == v {
            head = target(&assignment[&e.id]);
        }
        out.add_arc(e.id.clone(), tail, head)?;
    }
    let (t, h) = if arc_from_second {
        (v2.clone(), v1.clone())
    } else {
        (v1.clone(), v2.clone())
    };
    out.add_arc(new_edge.clone(), t, h)?;
    Ok(Expansion {
        digraph: out,
        v1,
        v2,
        new_edge,
    })
}

/// True iff deleting `e` leaves its tail a sink or its head a source: the
/// defining condition for a consistent expansion arc.
pub fn is_consistent_expansion(g: &Digraph, e: &EdgeId) -> Result<bool> {
    let edge = g.require_edge(e)?;
    let tail_out = g
        .edges()
        .iter()
        .filter(|f| f.tail == edge.tail && &f.id != e)
        .count();
    let head_in = g
        .edges()
        .iter()
        .filter(|f| f.head == edge.head && &f.id != e)
        .count();
    Ok(tail_out == 0 || head_in == 0)
}

#[derive(Clone, Debug)]
pub struct Contraction {
    pub digraph: Digraph,
    pub merged: VertexId,
}

/// Contracts a consistent expansion arc, merging its endpoints into a vertex
/// that keeps the tail's name. Arcs between the merged endpoints become
/// self-loops and are removed; parallel arcs elsewhere are kept.
pub fn consistent_contract(g: &Digraph, e: &EdgeId) -> Result<Contraction> {
    let edge = g.require_edge(e)?.clone();
    if !is_consistent_expansion(g, e)? {
        return Err(Error::NotConsistent {
            edge: e.0.clone(),
            reason: format!(
                "deleting it leaves `{}` with out-degree {} and `{}` with in-degree {}",
                edge.tail,
                g.edges()
                    .iter()
                    .filter(|f| f.tail == edge.tail && &f.id != e)
                    .count(),
                edge.head,
                g.edges()
                    .iter()
                    .filter(|f| f.head == edge.head && &f.id != e)
                    .count()
            ),
        });
    }
    Ok(contract_arc_unchecked(g, e))
}

/// Contraction without the consistency precondition (plain edge contraction).
pub fn contract_arc_unchecked(g: &Digraph, e: &EdgeId) -> Contraction {
    let edge = g.edge(e).expect("edge exists").clone();
    let merged = edge.tail.clone();
    let gone = edge.head.clone();
    let mut out = Digraph::new();
    for u in g.vertices() {
        if u == &gone {
            continue;
        }
        out.add_vertex(u.clone()).unwrap();
    }
    for f in g.edges() {
        let tail = if f.tail == gone { &merged } else { &f.tail };
        let head = if f.head == gone { &merged } else { &f.head };
        if tail == head {
            continue; // self-loop created by the contraction
        }
        out.add_arc(f.id.clone(), tail.clone(), head.clone()).unwrap();
    }
    Contraction {
        digraph: out,
        merged,
    }
}

/// Vertex partition of a host digraph into nonempty disjoint covering blocks.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Partition {
    pub blocks: Vec<BTreeSet<VertexId>>,
}

impl Partition {
    pub fn validate(&self, g: &Digraph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (i, block) in self.blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for v in block {
                if !g.has_vertex(v) {
                    return Err(Error::InvalidPartition(format!(
                        "block {i} contains unknown vertex `{v}`"
                    )));
                }
                if !seen.insert(v.clone()) {
                    return Err(Error::InvalidPartition(format!(
                        "vertex `{v}` appears in two blocks"
                    )));
                }
            }
        }
        if seen.len() != g.vertex_count() {
            return Err(Error::InvalidPartition(format!(
                "blocks cover {} of {} vertices",
                seen.len(),
                g.vertex_count()
            )));
        }
        Ok(())
    }

    pub fn block_of(&self, v: &VertexId) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    /// Partition JSON: `{"blocks": [["v1","v2"], ...]}`.
    pub fn from_json(s: &str) -> Result<Partition> {
        #[derive(Deserialize)]
        struct Doc {
            blocks: Vec<Vec<String>>,
        }
        let doc: Doc = serde_json::from_str(s)?;
        Ok(Partition {
            blocks: doc
                .blocks
                .into_iter()
                .map(|b| b.into_iter().map(VertexId).collect())
                .collect(),
        })
    }
}

/// Block condition for a digraph minor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinorMode {
    /// Blocks weakly connected (connected as undirected graphs).
    Weak,
    /// Blocks strongly connected.
    Strong,
    /// Blocks contain a consistently oriented Hamiltonian cycle.
    HCyclic,
}

/// A claimed minor: partition of the host, pattern digraph, and a host arc
/// realizing every pattern arc.
#[derive(Clone, Debug)]
pub struct MinorWitness {
    pub partition: Partition,
    pub pattern: Digraph,
    /// Pattern edge id -> realizing host edge id.
    pub edge_realization: BTreeMap<EdgeId, EdgeId>,
    /// Pattern vertex -> block index of the partition.
    pub pattern_blocks: BTreeMap<VertexId, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessReport {
    pub ok: bool,
    /// First failing block or pattern edge, if any.
    pub failure: Option<String>,
    /// For H-cyclic mode: the directed Hamiltonian cycle found per
    /// multi-vertex block.
    pub hamiltonian: BTreeMap<usize, Cycle>,
}

/// Checks a minor witness under the given mode: every block must satisfy the
/// block condition and every pattern arc must be realized by a host arc from
/// its tail block to its head block.
pub fn check_minor_witness(g: &Digraph, w: &MinorWitness, mode: MinorMode) -> Result<WitnessReport> {
    w.partition.validate(g)?;
    if w.pattern_blocks.len() != w.pattern.vertex_count() {
        return Err(Error::InvalidWitness(
            "pattern_blocks must map every pattern vertex".into(),
        ));
    }
    for (pv, bi) in &w.pattern_blocks {
        if !w.pattern.has_vertex(pv) {
            return Err(Error::InvalidWitness(format!("unknown pattern vertex `{pv}`")));
        }
        if *bi >= w.partition.blocks.len() {
            return Err(Error::InvalidWitness(format!(
                "pattern vertex `{pv}` maps to missing block {bi}"
            )));
        }
    }
    let mut hamiltonian = BTreeMap::new();
    for (bi, block) in w.partition.blocks.iter().enumerate() {
        if block.len() == 1 {
            continue;
        }
        let induced = induced_subdigraph(g, block);
        let ok = match mode {
            MinorMode::Weak => weakly_connected(&induced),
            MinorMode::Strong => induced.is_strongly_connected(),
            MinorMode::HCyclic => {
                if let Some(c) = directed_hamiltonian_cycle(&induced) {
                    hamiltonian.insert(bi, c);
                    true
                } else {
                    false
                }
            }
        };
        if !ok {
            return Ok(WitnessReport {
                ok: false,
                failure: Some(format!("block {bi} fails {mode:?} condition")),
                hamiltonian,
            });
        }
    }
    for pe in w.pattern.edges() {
        let Some(he) = w.edge_realization.get(&pe.id) else {
            return Ok(WitnessReport {
                ok: false,
                failure: Some(format!("pattern arc `{}` has no realization", pe.id)),
                hamiltonian,
            });
        };
        let host_edge = g.require_edge(he)?;
        let tb = w.pattern_blocks[&pe.tail];
        let hb = w.pattern_blocks[&pe.head];
        let host_tb = w.partition.block_of(&host_edge.tail).unwrap();
        let host_hb = w.partition.block_of(&host_edge.head).unwrap();
        if (host_tb, host_hb) != (tb, hb) {
            return Ok(WitnessReport {
                ok: false,
                failure: Some(format!(
                    "pattern arc `{}` realized by `{he}` which runs block {host_tb} -> {host_hb}, expected {tb} -> {hb}",
                    pe.id
                )),
                hamiltonian,
            });
        }
    }
    Ok(WitnessReport {
        ok: true,
        failure: None,
        hamiltonian,
    })
}

pub fn induced_subdigraph(g: &Digraph, keep: &BTreeSet<VertexId>) -> Digraph {
    let mut out = Digraph::new();
    for v in keep {
        out.add_vertex(v.clone()).unwrap();
    }
    for e in g.edges() {
        if keep.contains(&e.tail) && keep.contains(&e.head) {
            out.add_arc(e.id.clone(), e.tail.clone(), e.head.clone())
                .unwrap();
        }
    }
    out
}

fn weakly_connected(g: &Digraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    let ix = g.index();
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &(w, _) in ix.out[v].iter().chain(ix.inc[v].iter()) {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Backtracking search for a directed Hamiltonian cycle.
fn directed_hamiltonian_cycle(g: &Digraph) -> Option<Cycle> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    if n == 1 {
        return None; // single vertex: no cycle needed, handled by caller
    }
    let ix = g.index();
    let mut on_path = vec![false; n];
    on_path[0] = true;
    let mut path: Vec<usize> = Vec::new(); // edge indices
    fn dfs(
        ix: &crate::digraph::GraphIndex<'_>,
        v: usize,
        n: usize,
        on_path: &mut Vec<bool>,
        path: &mut Vec<usize>,
    ) -> bool {
        if path.len() == n - 1 {
            // Need an arc back to vertex 0.
            for &(w, ei) in &ix.out[v] {
                if w == 0 {
                    path.push(ei);
                    return true;
                }
            }
            return false;
        }
        for &(w, ei) in &ix.out[v] {
            if !on_path[w] {
                on_path[w] = true;
                path.push(ei);
                if dfs(ix, w, n, on_path, path) {
                    return true;
                }
                path.pop();
                on_path[w] = false;
            }
        }
        false
    }
    if dfs(&ix, 0, n, &mut on_path, &mut path) {
        let steps: Vec<CycleStep> = path
            .iter()
            .map(|&ei| CycleStep {
                edge: ix.edge(ei).id.clone(),
                dir: Traversal::Forward,
            })
            .collect();
        Some(Cycle::new(g, steps).expect("hamiltonian walk closes"))
    } else {
        None
    }
}

const PATTERN_LIMIT: usize = 8;

/// Exact subdigraph search: an injective vertex map under which every
/// pattern arc (with multiplicity) has a host arc. Patterns are limited to
/// 8 vertices.
pub fn find_subdigraph(g: &Digraph, pattern: &Digraph) -> Result<Option<BTreeMap<VertexId, VertexId>>> {
    let pn = pattern.vertex_count();
    if pn > PATTERN_LIMIT {
        return Err(Error::PatternTooLarge {
            size: pn,
            limit: PATTERN_LIMIT,
        });
    }
    if pn > g.vertex_count() {
        return Ok(None);
    }
    let pix = pattern.index();
    let hix = g.index();
    let hn = g.vertex_count();

    // Multiplicity tables.
    let pmult = multiplicities(&pix);
    let hmult = multiplicities(&hix);
    let pdeg: Vec<(usize, usize)> = (0..pn)
        .map(|v| (pix.out[v].len(), pix.inc[v].len()))
        .collect();
    let hdeg: Vec<(usize, usize)> = (0..hn)
        .map(|v| (hix.out[v].len(), hix.inc[v].len()))
        .collect();

    // Order pattern vertices by descending total degree for pruning.
    let mut order: Vec<usize> = (0..pn).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(pdeg[v].0 + pdeg[v].1));

    let mut assignment = vec![usize::MAX; pn];
    let mut used = vec![false; hn];
    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        k: usize,
        order: &[usize],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
        pdeg: &[(usize, usize)],
        hdeg: &[(usize, usize)],
        pmult: &BTreeMap<(usize, usize), usize>,
        hmult: &BTreeMap<(usize, usize), usize>,
        pn: usize,
        hn: usize,
    ) -> bool {
        if k == pn {
            return true;
        }
        let pv = order[k];
        'cand: for hv in 0..hn {
            if used[hv] || hdeg[hv].0 < pdeg[pv].0 || hdeg[hv].1 < pdeg[pv].1 {
                continue;
            }
            for prev in order.iter().take(k) {
                let hp = assignment[*prev];
                for (a, b, ha, hb) in [(pv, *prev, hv, hp), (*prev, pv, hp, hv)] {
                    let need = pmult.get(&(a, b)).copied().unwrap_or(0);
                    if need > 0 && hmult.get(&(ha, hb)).copied().unwrap_or(0) < need {
                        continue 'cand;
                    }
                }
            }
            assignment[pv] = hv;
            used[hv] = true;
            if backtrack(
                k + 1, order, assignment, used, pdeg, hdeg, pmult, hmult, pn, hn,
            ) {
                return true;
            }
            assignment[pv] = usize::MAX;
            used[hv] = false;
        }
        false
    }
    let found = backtrack(
        0,
        &order,
        &mut assignment,
        &mut used,
        &pdeg,
        &hdeg,
        &pmult,
        &hmult,
        pn,
        hn,
    );
    if !found {
        return Ok(None);
    }
    let map = (0..pn)
        .map(|pv| {
            (
                pattern.vertices()[pv].clone(),
                g.vertices()[assignment[pv]].clone(),
            )
        })
        .collect();
    Ok(Some(map))
}

fn multiplicities(ix: &crate::digraph::GraphIndex<'_>) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for (v, outs) in ix.out.iter().enumerate() {
        for &(w, _) in outs {
            *m.entry((v, w)).or_insert(0) += 1;
        }
    }
    m
}

/// Outcome of the edge-density check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum DensityVerdict {
    /// `10|E| <= 9 n^2`; carries the measured arc count and vertex count.
    BelowThreshold { edges: usize, vertices: usize },
    /// Dense case: the six host vertices carrying a complete symmetric
    /// subdigraph on six vertices.
    Dk6Found { vertices: Vec<VertexId> },
}

/// Edge-density certificate. When `|E| > (9/10) n^2`, builds the symmetric-
/// pair graph (edge wherever both arcs are present), checks its edge count
/// exceeds (4/5)(n^2/2), locates a K6 in it, and returns the induced complete
/// symmetric subdigraph on 6 vertices. One-sided: below the threshold no
/// search is attempted. All comparisons are exact integer arithmetic.
pub fn density_certificate(g: &Digraph) -> Result<DensityVerdict> {
    let n = g.vertex_count();
    let e = g.edge_count();
    // 10 |E| > 9 n^2, in arbitrary precision to keep the contract exact.
    let lhs = BigInt::from(10) * BigInt::from(e);
    let rhs = BigInt::from(9) * BigInt::from(n) * BigInt::from(n);
    if lhs <= rhs {
        return Ok(DensityVerdict::BelowThreshold {
            edges: e,
            vertices: n,
        });
    }
    // Symmetric-pair graph as a bitmask adjacency.
    if n > 64 {
        return Err(Error::InvalidParameter(
            "density certificate limited to 64 vertices".into(),
        ));
    }
    let ix = g.index();
    let mut arc_present = vec![vec![false; n]; n];
    for (v, outs) in ix.out.iter().enumerate() {
        for &(w, _) in outs {
            arc_present[v][w] = true;
        }
    }
    let mut adj = vec![0u64; n];
    let mut sym_edges = 0usize;
    for v in 0..n {
        for w in (v + 1)..n {
            if arc_present[v][w] && arc_present[w][v] {
                adj[v] |= 1 << w;
                adj[w] |= 1 << v;
                sym_edges += 1;
            }
        }
    }
    // Dense case sanity: |E(G')| > (4/5) n^2 / 2, i.e. 5 |E(G')| > 2 n^2.
    let sym_lhs = BigInt::from(5) * BigInt::from(sym_edges);
    let sym_rhs = BigInt::from(2) * BigInt::from(n) * BigInt::from(n);
    if sym_lhs <= sym_rhs {
        return Err(Error::InvalidParameter(format!(
            "dense digraph whose symmetric-pair graph has only {sym_edges} edges; \
             multigraph input outside the certificate's domain"
        )));
    }
    let clique = find_clique6(&adj)
        .ok_or_else(|| Error::InvalidParameter("no K6 in symmetric-pair graph".into()))?;
    Ok(DensityVerdict::Dk6Found {
        vertices: clique
            .into_iter()
            .map(|v| g.vertices()[v].clone())
            .collect(),
    })
}

fn find_clique6(adj: &[u64]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut chosen = Vec::new();
    fn extend(
        adj: &[u64],
        n: usize,
        start: usize,
        candidates: u64,
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == 6 {
            return true;
        }
        for v in start..n {
            if candidates & (1 << v) == 0 {
                continue;
            }
            chosen.push(v);
            if extend(adj, n, v + 1, candidates & adj[v], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    if extend(adj, n, 0, all, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

/// The complete symmetric digraph on 6 vertices, for subdigraph searches.
pub fn dk6_pattern() -> Digraph {
    crate::digraph::symmetric_double(&crate::constructions::complete_orientation(6))
        .expect("K6 doubles")
        .digraph
}
