//! Simple-cycle enumeration for directed multigraphs.
//!
//! Elementary-circuit search: every cycle is emitted exactly once, rooted at
//! its minimal vertex, with a hard cycle-count cap and an optional length
//! cap. Parallel arcs yield distinct cycles. Undirected enumeration treats
//! arcs as traversable both ways and identifies a cycle with its reversal.

use std::collections::VecDeque;

use crate::cycle::{Cycle, CycleStep, Traversal};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct EnumOptions {
    /// Maximum cycle length in edges; `None` means unbounded.
    pub max_len: Option<usize>,
    /// Hard cap on the number of cycles produced.
    pub cap: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            max_len: None,
            cap: DEFAULT_CYCLE_CAP,
        }
    }
}

impl EnumOptions {
    pub fn with_max_len(len: usize) -> Self {
        EnumOptions {
            max_len: Some(len),
            ..Default::default()
        }
    }
}

/// BFS distances to `target` in the reversed arc direction, restricted to
/// vertices `>= floor`. Used for dead-end pruning.
fn dist_to(adj_in: &[Vec<(usize, usize)>], target: usize, floor: usize) -> Vec<usize> {
    let n = adj_in.len();
    let mut dist = vec![usize::MAX; n];
    dist[target] = 0;
    let mut q = VecDeque::new();
    q.push_back(target);
    while let Some(v) = q.pop_front() {
        for &(w, _) in &adj_in[v] {
            if w >= floor && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                q.push_back(w);
            }
        }
    }
    dist
}

/// Every simple directed cycle of length `<= max_len`, each exactly once up
/// to rotation; canonical form starts at the minimal vertex.
pub fn directed_cycles(g: &Digraph, opts: EnumOptions) -> Result<Vec<Cycle>> {
    let (cycles, truncated) = directed_cycles_partial(g, opts)?;
    if truncated {
        return Err(Error::CycleCapExceeded { cap: opts.cap });
    }
    Ok(cycles)
}

/// As [`directed_cycles`], but a hit cap yields the partial list plus a
/// truncation flag instead of an error.
pub fn directed_cycles_partial(g: &Digraph, opts: EnumOptions) -> Result<(Vec<Cycle>, bool)> {
    let ix = g.index();
    let n = ix.vertex_count();
    let max_len = opts.max_len.unwrap_or(n).min(n);
    let mut cycles = Vec::new();

    // Moves from v: (next vertex, edge index, traversal).
    let moves = |v: usize| {
        ix.out[v]
            .iter()
            .map(|&(w, ei)| (w, ei, Traversal::Forward))
            .collect::<Vec<_>>()
    };

    for start in 0..n {
        let dist = dist_to(&ix.inc, start, start);
        if search(
            g,
            start,
            max_len,
            opts.cap,
            &dist,
            &moves,
            &mut cycles,
            false,
        )? {
            return Ok((cycles, true));
        }
    }
    Ok((cycles, false))
}

/// Every simple cycle of the underlying multigraph, arcs traversable in both
/// directions; a cycle and its reversal are identified (one representative).
pub fn undirected_cycles(g: &Digraph, opts: EnumOptions) -> Result<Vec<Cycle>> {
    let (cycles, truncated) = undirected_cycles_partial(g, opts)?;
    if truncated {
        return Err(Error::CycleCapExceeded { cap: opts.cap });
    }
    Ok(cycles)
}

/// As [`undirected_cycles`] with a truncation flag instead of a cap error.
pub fn undirected_cycles_partial(g: &Digraph, opts: EnumOptions) -> Result<(Vec<Cycle>, bool)> {
    let ix = g.index();
    let n = ix.vertex_count();
    let max_len = opts.max_len.unwrap_or(n).min(n);
    let mut cycles = Vec::new();

    // Bigons first: unordered pairs of distinct arcs joining the same two
    // vertices, regardless of direction.
    if max_len >= 2 {
        for u in 0..n {
            for v in (u + 1)..n {
                let mut arcs: Vec<(usize, Traversal)> = Vec::new();
                for &(w, ei) in &ix.out[u] {
                    if w == v {
                        arcs.push((ei, Traversal::Forward));
                    }
                }
                for &(w, ei) in &ix.inc[u] {
                    if w == v {
                        arcs.push((ei, Traversal::Backward));
                    }
                }
                arcs.sort_by(|a, b| ix.edge(a.0).id.cmp(&ix.edge(b.0).id));
                for i in 0..arcs.len() {
                    for j in (i + 1)..arcs.len() {
                        if cycles.len() >= opts.cap {
                            return Ok((cycles, true));
                        }
                        let (e1, d1) = &arcs[i];
                        let (e2, d2) = &arcs[j];
                        // First arc u -> v, second arc v -> u.
                        let steps = vec![
                            CycleStep {
                                edge: ix.edge(*e1).id.clone(),
                                dir: *d1,
                            },
                            CycleStep {
                                edge: ix.edge(*e2).id.clone(),
                                dir: d2.flipped(),
                            },
                        ];
                        cycles.push(Cycle::new(g, steps)?);
                    }
                }
            }
        }
    }

    if max_len >= 3 {
        let sym: Vec<Vec<(usize, usize, Traversal)>> = (0..n)
            .map(|v| {
                let mut m: Vec<(usize, usize, Traversal)> = ix.out[v]
                    .iter()
                    .map(|&(w, ei)| (w, ei, Traversal::Forward))
                    .chain(
                        ix.inc[v]
                            .iter()
                            .map(|&(w, ei)| (w, ei, Traversal::Backward)),
                    )
                    .collect();
                m.sort_unstable();
                m
            })
            .collect();
        let sym_in: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|v| sym[v].iter().map(|&(w, ei, _)| (w, ei)).collect())
            .collect();
        let moves = |v: usize| sym[v].clone();
        for start in 0..n {
            let dist = dist_to(&sym_in, start, start);
            if search(
                g,
                start,
                max_len,
                opts.cap,
                &dist,
                &moves,
                &mut cycles,
                true,
            )? {
                return Ok((cycles, true));
            }
        }
    }
    Ok((cycles, false))
}

/// Core DFS. When `undirected`, cycles of length >= 3 are emitted only when
/// the second vertex is smaller than the last (reversal identification), and
/// length-2 cycles are skipped (handled separately). Returns true when the
/// cap was hit.
#[allow(clippy::too_many_arguments)]
fn search<F>(
    g: &Digraph,
    start: usize,
    max_len: usize,
    cap: usize,
    dist: &[usize],
    moves: &F,
    cycles: &mut Vec<Cycle>,
    undirected: bool,
) -> Result<bool>
where
    F: Fn(usize) -> Vec<(usize, usize, Traversal)>,
{
    struct Frame {
        vertex: usize,
        options: Vec<(usize, usize, Traversal)>,
        next: usize,
    }
    let ix = g.index();
    let n = ix.vertex_count();
    let mut on_path = vec![false; n];
    let mut edge_used = vec![false; g.edge_count()];
    on_path[start] = true;
    let mut path: Vec<(usize, usize, Traversal)> = Vec::new(); // (to-vertex, edge, dir)
    let mut stack = vec![Frame {
        vertex: start,
        options: moves(start),
        next: 0,
    }];
    while !stack.is_empty() {
        let top = stack.len() - 1;
        if stack[top].next >= stack[top].options.len() {
            on_path[stack[top].vertex] = false;
            if let Some((_, ei, _)) = path.pop() {
                edge_used[ei] = false;
            }
            stack.pop();
            continue;
        }
        let (w, ei, dir) = stack[top].options[stack[top].next];
        stack[top].next += 1;
        if w < start || edge_used[ei] {
            continue;
        }
        let len_here = path.len() + 1;
        if w == start {
            if len_here < 2 {
                continue;
            }
            if undirected {
                if len_here == 2 {
                    continue; // bigons handled separately
                }
                // Emit one representative per reversal pair.
                let second = path[0].0;
                let last = stack[top].vertex;
                if second > last {
                    continue;
                }
            }
            if cycles.len() >= cap {
                return Ok(true);
            }
            let mut steps: Vec<CycleStep> = path
                .iter()
                .map(|&(_, e, d)| CycleStep {
                    edge: ix.edge(e).id.clone(),
                    dir: d,
                })
                .collect();
            steps.push(CycleStep {
                edge: ix.edge(ei).id.clone(),
                dir,
            });
            cycles.push(Cycle::new(g, steps)?);
            continue;
        }
        if on_path[w] || len_here >= max_len {
            continue;
        }
        // Must still be able to return to start within budget.
        if dist[w] == usize::MAX || len_here + dist[w] > max_len {
            continue;
        }
        on_path[w] = true;
        edge_used[ei] = true;
        path.push((w, ei, dir));
        stack.push(Frame {
            vertex: w,
            options: moves(w),
            next: 0,
        });
    }
    Ok(false)
}

/// True iff two vertex-disjoint directed cycles exist; returns a witness pair.
pub fn has_disjoint_directed_cycles(g: &Digraph) -> Result<Option<(Cycle, Cycle)>> {
    let cycles = directed_cycles(g, EnumOptions::default())?;
    // Short cycles first makes witnesses small and the scan fast.
    let mut sorted = cycles;
    sorted.sort_by_key(|c| c.len());
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            if sorted[i].disjoint_from(&sorted[j]) {
                return Ok(Some((sorted[i].clone(), sorted[j].clone())));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{apex_tournament, complete_orientation, transitive_tournament};
    use crate::digraph::symmetric_double;

    fn dkn(n: usize) -> Digraph {
        symmetric_double(&complete_orientation(n)).unwrap().digraph
    }

    #[test]
    fn dk3_directed_cycles() {
        // 3 bigons + 2 directed triangles.
        let cycles = directed_cycles(&dkn(3), EnumOptions::default()).unwrap();
        assert_eq!(cycles.len(), 5);
        assert_eq!(cycles.iter().filter(|c| c.len() == 2).count(), 3);
        assert_eq!(cycles.iter().filter(|c| c.len() == 3).count(), 2);
        assert!(cycles.iter().all(|c| c.is_consistent()));
    }

    #[test]
    fn tournaments_are_acyclic() {
        for n in 2..=6 {
            let t = transitive_tournament(n);
            assert!(directed_cycles(&t, EnumOptions::default())
                .unwrap()
                .is_empty());
        }
    }

    #[test]
    fn single_antiparallel_pair_is_one_bigon() {
        let mut g = Digraph::new();
        g.add_vertex("u").unwrap();
        g.add_vertex("v").unwrap();
        g.add_arc("e", "u", "v").unwrap();
        g.add_arc("f", "v", "u").unwrap();
        let cycles = directed_cycles(&g, EnumOptions::default()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
    }

    #[test]
    fn undirected_enumeration_cases() {
        // Transitive tournament on 3 vertices: one (inconsistent) triangle.
        let t3 = transitive_tournament(3);
        let cycles = undirected_cycles(&t3, EnumOptions::default()).unwrap();
        assert_eq!(cycles.len(), 1);
        assert!(!cycles[0].is_consistent());

        // DK3 with max_len 2: exactly the 3 bigons.
        let cycles = undirected_cycles(&dkn(3), EnumOptions::with_max_len(2)).unwrap();
        assert_eq!(cycles.len(), 3);
        assert!(cycles.iter().all(|c| c.len() == 2));

        // Edgeless graph: empty list.
        let mut g = Digraph::new();
        g.add_vertex("a").unwrap();
        assert!(undirected_cycles(&g, EnumOptions::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn disjoint_cycle_pairs() {
        assert!(has_disjoint_directed_cycles(&apex_tournament(8))
            .unwrap()
            .is_none());
        assert!(has_disjoint_directed_cycles(&dkn(6)).unwrap().is_some());

        let mut two_bigons = Digraph::new();
        for v in ["a", "b", "c", "d"] {
            two_bigons.add_vertex(v).unwrap();
        }
        two_bigons.add_arc("e1", "a", "b").unwrap();
        two_bigons.add_arc("e2", "b", "a").unwrap();
        two_bigons.add_arc("e3", "c", "d").unwrap();
        two_bigons.add_arc("e4", "d", "c").unwrap();
        let w = has_disjoint_directed_cycles(&two_bigons).unwrap();
        assert!(w.is_some());
        let (c1, c2) = w.unwrap();
        assert!(c1.disjoint_from(&c2));
    }

    #[test]
    fn cap_is_enforced() {
        let g = dkn(6);
        let r = directed_cycles(
            &g,
            EnumOptions {
                max_len: None,
                cap: 10,
            },
        );
        assert!(matches!(r, Err(Error::CycleCapExceeded { cap: 10 })));
    }

    #[test]
    fn transitive_tournament_5_has_no_consistent_cycles() {
        let t = transitive_tournament(5);
        assert!(directed_cycles(&t, EnumOptions::default())
            .unwrap()
            .is_empty());
    }
}
