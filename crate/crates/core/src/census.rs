//! Censuses of consistently oriented knots and links in an embedding.
//!
//! Nonsplitness is certified through nonzero linking numbers only: a listed
//! n-component link is a set of pairwise vertex-disjoint cycles whose
//! linking graph (components as nodes, edges where lk != 0) is connected.
//! Links that are nonsplit with all pairwise linking numbers zero are
//! invisible to the census.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycle::{Cycle, CycleStep, Traversal};
use crate::digraph::Digraph;
use crate::embedding::{double_embedding, PLEmbedding};
use crate::enumerate::{
    directed_cycles_partial, undirected_cycles_partial, EnumOptions, DEFAULT_CYCLE_CAP,
};
use crate::error::{Error, Result};
use crate::id::EdgeId;
use crate::knot::{arf_from_determinant, diagram_in_scene, KnotCertificate};
use crate::linking::require_disjoint;
use crate::projection::{CyclePoly, Scene};

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct CensusOptions {
    /// Cycle length cap in edges.
    pub len_max: usize,
    /// Largest link component count reported.
    pub n_max: usize,
    /// Enumerate directed cycles only (consistent) or all cycles.
    pub consistent_only: bool,
    /// Cycle enumeration cap; hitting it flags the census as truncated.
    pub cycle_cap: usize,
    /// Cap on stored link records; counts stay exact beyond it.
    pub max_links: usize,
}

impl CensusOptions {
    pub fn consistent(len_max: usize, n_max: usize) -> Self {
        CensusOptions {
            len_max,
            n_max,
            consistent_only: true,
            cycle_cap: DEFAULT_CYCLE_CAP,
            max_links: 100_000,
        }
    }

    pub fn all_cycles(len_max: usize, n_max: usize) -> Self {
        CensusOptions {
            consistent_only: false,
            ..CensusOptions::consistent(len_max, n_max)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LinkRecord {
    pub components: Vec<Cycle>,
    /// Pairwise linking numbers, indexed like `components`.
    pub lk_matrix: Vec<Vec<i64>>,
    pub n: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CensusReport {
    pub len_max: usize,
    pub n_max: usize,
    pub consistent_only: bool,
    pub cycle_count: usize,
    pub knots: Vec<KnotCertificate>,
    pub links: Vec<LinkRecord>,
    /// Exact number of connected-linking-graph n-component links, by n.
    pub counts: BTreeMap<usize, usize>,
    /// Cycle enumeration hit its cap: the census is partial.
    pub truncated: bool,
    /// The stored link list was capped; `counts` remain exact.
    pub link_list_truncated: bool,
}

fn enumerate_for_census(g: &Digraph, opts: &CensusOptions) -> Result<(Vec<Cycle>, bool)> {
    let eopts = EnumOptions {
        max_len: Some(opts.len_max),
        cap: opts.cycle_cap,
    };
    if opts.consistent_only {
        directed_cycles_partial(g, eopts)
    } else {
        undirected_cycles_partial(g, eopts)
    }
}

struct CycleCtx {
    cycles: Vec<Cycle>,
    polys: Vec<CyclePoly>,
    masks: Vec<Vec<u64>>,
}

fn cycle_context(emb: &PLEmbedding, scene: &Scene, cycles: Vec<Cycle>) -> Result<CycleCtx> {
    let g = emb.graph();
    let words = g.vertex_count().div_ceil(64);
    let mut polys = Vec::with_capacity(cycles.len());
    let mut masks = Vec::with_capacity(cycles.len());
    for c in &cycles {
        polys.push(scene.cycle_poly(c)?);
        let mut m = vec![0u64; words];
        for v in c.vertices() {
            let ix = g.vertex_index_of(v).expect("cycle vertex in graph");
            m[ix / 64] |= 1 << (ix % 64);
        }
        masks.push(m);
    }
    Ok(CycleCtx {
        cycles,
        polys,
        masks,
    })
}

fn masks_disjoint(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & y == 0)
}

/// All pairwise linking numbers between vertex-disjoint cycle pairs;
/// only nonzero values are kept.
fn nonzero_pairs(scene: &Scene, ctx: &CycleCtx) -> Result<BTreeMap<(usize, usize), i64>> {
    let n = ctx.cycles.len();
    let results: Result<Vec<Vec<(usize, usize, i64)>>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in (i + 1)..n {
                if !masks_disjoint(&ctx.masks[i], &ctx.masks[j]) {
                    continue;
                }
                let lk = scene.linking_number(&ctx.polys[i], &ctx.polys[j])?;
                if lk != 0 {
                    out.push((i, j, lk));
                }
            }
            Ok(out)
        })
        .collect();
    let mut map = BTreeMap::new();
    for chunk in results? {
        for (i, j, lk) in chunk {
            map.insert((i, j), lk);
        }
    }
    Ok(map)
}

fn lk_of(pairs: &BTreeMap<(usize, usize), i64>, i: usize, j: usize) -> i64 {
    let key = if i < j { (i, j) } else { (j, i) };
    pairs.get(&key).copied().unwrap_or(0)
}

/// Connected-subset enumeration over the nonzero-lk graph with a pairwise
/// disjointness filter; every valid set of size 2..=n_max is visited exactly
/// once.
fn enumerate_links(
    ctx: &CycleCtx,
    pairs: &BTreeMap<(usize, usize), i64>,
    n_max: usize,
    mut visit: impl FnMut(&[usize]),
) {
    let n = ctx.cycles.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in pairs.keys() {
        adj[i].push(j);
        adj[j].push(i);
    }
    for l in adj.iter_mut() {
        l.sort_unstable();
    }
    // ESU-style extension: each connected subset is reached exactly once,
    // rooted at its minimal element.
    #[allow(clippy::too_many_arguments)]
    fn extend(
        root: usize,
        sub: &mut Vec<usize>,
        ext: &[usize],
        adj: &[Vec<usize>],
        in_nbr: &mut [bool],
        ctx: &CycleCtx,
        n_max: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if sub.len() >= 2 {
            visit(sub);
        }
        if sub.len() == n_max {
            return;
        }
        let mut ext = ext.to_vec();
        while let Some(w) = ext.pop() {
            // Disjointness against the whole current subset.
            if !sub
                .iter()
                .all(|&s| masks_disjoint(&ctx.masks[s], &ctx.masks[w]))
            {
                continue;
            }
            let mut added: Vec<usize> = Vec::new();
            let mut ext2 = ext.clone();
            for &u in &adj[w] {
                if u > root && !in_nbr[u] {
                    in_nbr[u] = true;
                    added.push(u);
                    ext2.push(u);
                }
            }
            sub.push(w);
            extend(root, sub, &ext2, adj, in_nbr, ctx, n_max, visit);
            sub.pop();
            for u in added {
                in_nbr[u] = false;
            }
        }
    }
    let mut in_nbr = vec![false; n];
    for root in 0..n {
        if adj[root].is_empty() {
            continue;
        }
        let ext: Vec<usize> = adj[root].iter().copied().filter(|&u| u > root).collect();
        for &u in &ext {
            in_nbr[u] = true;
        }
        in_nbr[root] = true;
        let mut sub = vec![root];
        extend(root, &mut sub, &ext, &adj, &mut in_nbr, ctx, n_max, &mut visit);
        in_nbr[root] = false;
        for &u in &ext {
            in_nbr[u] = false;
        }
    }
}

/// Enumerates cycles and reports all n-component links (2 <= n <= n_max)
/// whose linking graph is connected, de-duplicated by canonical cycle form.
pub fn link_census(emb: &PLEmbedding, opts: &CensusOptions) -> Result<CensusReport> {
    let (cycles, truncated) = enumerate_for_census(emb.graph(), opts)?;
    let scene = Scene::build(emb.edge_paths())?;
    let ctx = cycle_context(emb, &scene, cycles)?;
    let pairs = nonzero_pairs(&scene, &ctx)?;

    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    let mut links = Vec::new();
    let mut link_list_truncated = false;
    enumerate_links(&ctx, &pairs, opts.n_max, |set| {
        *counts.entry(set.len()).or_insert(0) += 1;
        if links.len() < opts.max_links {
            let matrix: Vec<Vec<i64>> = set
                .iter()
                .map(|&i| set.iter().map(|&j| lk_of(&pairs, i, j)).collect())
                .collect();
            links.push(LinkRecord {
                components: set.iter().map(|&i| ctx.cycles[i].clone()).collect(),
                lk_matrix: matrix,
                n: set.len(),
            });
        } else {
            link_list_truncated = true;
        }
    });

    Ok(CensusReport {
        len_max: opts.len_max,
        n_max: opts.n_max,
        consistent_only: opts.consistent_only,
        cycle_count: ctx.cycles.len(),
        knots: Vec::new(),
        links,
        counts,
        truncated,
        link_list_truncated,
    })
}

/// Enumerates cycles and certifies knots by determinant != 1.
pub fn knot_census(emb: &PLEmbedding, opts: &CensusOptions) -> Result<CensusReport> {
    let (cycles, truncated) = enumerate_for_census(emb.graph(), opts)?;
    let scene = Scene::build(emb.edge_paths())?;
    let certs: Result<Vec<Option<KnotCertificate>>> = cycles
        .par_iter()
        .map(|c| {
            let diagram = diagram_in_scene(&scene, c)?;
            let determinant = diagram.determinant();
            if determinant == 1u8.into() {
                return Ok(None);
            }
            let arf = arf_from_determinant(&determinant)?;
            Ok(Some(KnotCertificate {
                cycle: c.clone(),
                determinant,
                arf,
                crossing_count: diagram.crossing_count(),
            }))
        })
        .collect();
    let knots: Vec<KnotCertificate> = certs?.into_iter().flatten().collect();
    Ok(CensusReport {
        len_max: opts.len_max,
        n_max: opts.n_max,
        consistent_only: opts.consistent_only,
        cycle_count: cycles.len(),
        knots,
        links: Vec::new(),
        counts: BTreeMap::new(),
        truncated,
        link_list_truncated: false,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DoublingReport {
    pub base_links: CensusReport,
    pub base_knots: CensusReport,
    pub doubled_links: CensusReport,
    pub doubled_knots: CensusReport,
    /// Expected doubled link count per n: base count times 2^n.
    pub expected_links: BTreeMap<usize, usize>,
    pub expected_knots: usize,
    /// False when any census was truncated (verdict invalid) or a count
    /// mismatches.
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Doubles the embedding and checks the counting laws: each base n-link
/// yields 2^n consistent links, each base knot two consistent knots.
pub fn verify_doubling_counts(emb: &PLEmbedding, len_max: usize) -> Result<DoublingReport> {
    let base_opts = CensusOptions::all_cycles(len_max, 3);
    let base_links = link_census(emb, &base_opts)?;
    let base_knots = knot_census(emb, &base_opts)?;
    let (doubled, _sd) = double_embedding(emb)?;
    let dbl_opts = CensusOptions::consistent(len_max, 3);
    let doubled_links = link_census(&doubled, &dbl_opts)?;
    let doubled_knots = knot_census(&doubled, &dbl_opts)?;

    let mut failures = Vec::new();
    if base_links.truncated
        || base_knots.truncated
        || doubled_links.truncated
        || doubled_knots.truncated
    {
        failures.push("a census was truncated; the verdict is invalid".to_string());
    }
    let mut expected_links = BTreeMap::new();
    for n in 2..=3usize {
        let base = base_links.counts.get(&n).copied().unwrap_or(0);
        let expect = base << n;
        expected_links.insert(n, expect);
        let got = doubled_links.counts.get(&n).copied().unwrap_or(0);
        if got != expect {
            failures.push(format!(
                "{n}-component links: base {base} doubles to {got}, expected {expect}"
            ));
        }
    }
    let expected_knots = 2 * base_knots.knots.len();
    if doubled_knots.knots.len() != expected_knots {
        failures.push(format!(
            "knots: base {} doubles to {}, expected {expected_knots}",
            base_knots.knots.len(),
            doubled_knots.knots.len()
        ));
    }
    Ok(DoublingReport {
        ok: failures.is_empty(),
        base_links,
        base_knots,
        doubled_links,
        doubled_knots,
        expected_links,
        expected_knots,
        failures,
    })
}

/// Splits a consistent cycle of a symmetric digraph into its edge-reversed
/// consistent cycle and the antiparallel bigons along it. As 1-chains the
/// cycle plus its reversal equals the bigon sum, so for any disjoint cycle x
/// lk(x, c) + lk(x, rev c) equals the sum of lk(x, bigon_i).
pub fn bigon_decomposition(g: &Digraph, c: &Cycle) -> Result<(Cycle, Vec<Cycle>)> {
    if !c.is_consistent() {
        return Err(Error::InvalidCycle(
            "bigon decomposition needs a consistent cycle".into(),
        ));
    }
    if c.len() == 2 {
        return Err(Error::Degenerate(
            "bigon decomposition of a bigon is degenerate".into(),
        ));
    }
    let mut rev_steps = Vec::new();
    let mut bigons = Vec::new();
    for step in c.steps() {
        let twin = g
            .twin_of(&step.edge)
            .ok_or_else(|| Error::MissingTwin(step.edge.0.clone()))?;
        rev_steps.push(CycleStep {
            edge: twin.id.clone(),
            dir: Traversal::Forward,
        });
        bigons.push(Cycle::new(
            g,
            vec![
                CycleStep {
                    edge: step.edge.clone(),
                    dir: Traversal::Forward,
                },
                CycleStep {
                    edge: twin.id.clone(),
                    dir: Traversal::Forward,
                },
            ],
        )?);
    }
    rev_steps.reverse();
    let reversed = Cycle::new(g, rev_steps)?;
    Ok((reversed, bigons))
}

/// Result of a cycle repair.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum RepairOutcome {
    /// The cycle was already consistent.
    AlreadyConsistent(Cycle),
    /// Some antiparallel bigon along the cycle links the reference cycle:
    /// a consistent 2-cycle with nonzero linking number.
    Bigon { bigon: Cycle, lk: i64 },
    /// All swapped bigons were unlinked; every inconsistent arc was replaced
    /// by its twin without changing the linking number.
    Repaired { cycle: Cycle, lk: i64 },
}

/// Repairs an inconsistent cycle against a disjoint consistent cycle: either
/// returns an antiparallel bigon with nonzero linking number to `c1`, or the
/// twin-swapped consistent cycle with lk(c1, repaired) = lk(c1, c2).
pub fn repair_cycle(
    emb: &PLEmbedding,
    c1: &Cycle,
    c2: &Cycle,
    require_nonzero: bool,
) -> Result<RepairOutcome> {
    require_disjoint(c1, c2)?;
    if !c1.is_consistent() {
        return Err(Error::InvalidCycle("reference cycle must be consistent".into()));
    }
    if c2.is_consistent() {
        return Ok(RepairOutcome::AlreadyConsistent(c2.clone()));
    }
    let g = emb.graph();
    // Collect edges for one scene: both cycles plus all twin arcs of c2.
    let mut edges: std::collections::BTreeSet<EdgeId> = c1
        .steps()
        .iter()
        .chain(c2.steps())
        .map(|s| s.edge.clone())
        .collect();
    let mut twins: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    for step in c2.steps() {
        if step.dir == Traversal::Backward {
            let twin = g
                .twin_of(&step.edge)
                .ok_or_else(|| Error::MissingTwin(step.edge.0.clone()))?;
            twins.insert(step.edge.clone(), twin.id.clone());
            edges.insert(twin.id.clone());
        }
    }
    let scene = Scene::build(&emb.paths_for(edges))?;
    let p1 = scene.cycle_poly(c1)?;
    let lk_input = scene.linking_number(&p1, &scene.cycle_poly(c2)?)?;
    if require_nonzero && lk_input == 0 {
        return Err(Error::InvalidParameter(
            "repair requires lk(c1, c2) != 0".into(),
        ));
    }
    // Bigons along inconsistent arcs.
    for step in c2.steps() {
        if step.dir != Traversal::Backward {
            continue;
        }
        let twin = &twins[&step.edge];
        let bigon = Cycle::new(
            g,
            vec![
                CycleStep {
                    edge: step.edge.clone(),
                    dir: Traversal::Forward,
                },
                CycleStep {
                    edge: twin.clone(),
                    dir: Traversal::Forward,
                },
            ],
        )?;
        let lk = scene.linking_number(&p1, &scene.cycle_poly(&bigon)?)?;
        if lk != 0 {
            return Ok(RepairOutcome::Bigon { bigon, lk });
        }
    }
    // All bigons unlinked: twin-swap and keep the linking number.
    let steps: Vec<CycleStep> = c2
        .steps()
        .iter()
        .map(|s| match s.dir {
            Traversal::Forward => s.clone(),
            Traversal::Backward => CycleStep {
                edge: twins[&s.edge].clone(),
                dir: Traversal::Forward,
            },
        })
        .collect();
    let repaired = Cycle::new(g, steps)?;
    let lk = scene.linking_number(&p1, &scene.cycle_poly(&repaired)?)?;
    if lk != lk_input {
        return Err(Error::Degenerate(format!(
            "twin swap changed the linking number: {lk_input} -> {lk}"
        )));
    }
    Ok(RepairOutcome::Repaired {
        cycle: repaired,
        lk,
    })
}

/// Links from [`link_census`] having a component that uses the given edge.
pub fn links_containing_edge(
    emb: &PLEmbedding,
    e: &EdgeId,
    opts: &CensusOptions,
) -> Result<Vec<LinkRecord>> {
    emb.graph().require_edge(e)?;
    let report = link_census(emb, opts)?;
    Ok(report
        .links
        .into_iter()
        .filter(|l| l.components.iter().any(|c| c.contains_edge(e)))
        .collect())
}
