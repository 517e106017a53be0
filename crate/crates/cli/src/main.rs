//! Command-line front end: graph generation, censuses, linking numbers,
//! knot certificates, embedding doubling and contraction, minor checks,
//! density certificates, and the verification suites.
//!
//! Exit codes: 0 success, 1 assertion failure, 2 usage, 3 I/O or schema.

mod manifest;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dilink::census::{knot_census, link_census, CensusOptions, CensusReport};
use dilink::constructions::{
    apex_tournament, complete_orientation, dbar4, eleven_ring, four_link_gadget, graph_h,
    graph_h_prime, knotted11_with, oriented_k331, ring_gadget, three_link_gadget, transitive_tournament,
    Gadget, Knotted11Options,
};
use dilink::cycle::{Cycle, CycleStep, Traversal};
use dilink::digraph::{symmetric_double, Digraph};
use dilink::embedding::{contract_path_embedding, double_embedding, spatial_realize, PLEmbedding};
use dilink::knot::knot_certificate;
use dilink::linking::linking_number;
use dilink::minors::{
    check_minor_witness, density_certificate, MinorMode, MinorWitness, Partition,
};
use dilink::verify::{run_suite, suite_names, Check};
use dilink::{EdgeId, VertexId};

use manifest::{ManifestBuilder, RunManifest};

#[derive(Parser)]
#[command(name = "dilink", version, about = "directed spatial graph toolkit")]
struct Cli {
    /// Seed for all randomized operations.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a named graph and write it as JSON.
    Gen(GenArgs),
    /// Realize a graph on the moment curve and write the embedding.
    Realize(RealizeArgs),
    /// Link census (optionally with knots) of an embedding.
    Census(CensusArgs),
    /// Linking number of two disjoint cycles.
    Lk(LkArgs),
    /// Knot certificate of a cycle.
    Knot(KnotArgs),
    /// Double an embedded orientation digraph.
    Double(DoubleArgs),
    /// Contract a directed path in an embedding.
    Contract(ContractArgs),
    /// Minor witness checks.
    Minor(MinorArgs),
    /// Edge-density certificate.
    Density(DensityArgs),
    /// Run a verification suite (or `all`).
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Constructor name; see README for the registry.
    name: String,
    /// Vertex count for tournament-style constructors.
    #[arg(long)]
    n: Option<usize>,
    /// Ring length for ring_gadget.
    #[arg(long)]
    k: Option<usize>,
    /// Alternate full and oriented blocks in ring_gadget.
    #[arg(long)]
    use_prime: bool,
    /// knotted11: omit the arcs from b4 into the a-vertices.
    #[arg(long)]
    no_b4_arcs: bool,
    /// knotted11: realize the a4-a5 edge as an antiparallel pair.
    #[arg(long)]
    a45_bidirectional: bool,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct RealizeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Skip the quadratic exact validation pass (moment-curve realizations
    /// are valid by construction).
    #[arg(long)]
    no_validate: bool,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    embedding: PathBuf,
    #[arg(long, default_value_t = 9)]
    max_len: usize,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    #[arg(long)]
    consistent_only: bool,
    /// Also run the knot census.
    #[arg(long)]
    knots: bool,
    /// Cap on stored link records (counts stay exact).
    #[arg(long, default_value_t = 100_000)]
    max_links: usize,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct LkArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    embedding: PathBuf,
    /// Comma-separated edge ids; prefix an id with `-` to traverse backward.
    #[arg(long)]
    cycle1: String,
    #[arg(long)]
    cycle2: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct KnotArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    embedding: PathBuf,
    /// Comma-separated edge ids; prefix with `-` for backward traversal.
    #[arg(long)]
    cycle: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DoubleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    embedding: PathBuf,
    /// Output prefix: writes <prefix>.graph.json, <prefix>.embedding.json,
    /// <prefix>.twins.json.
    #[arg(long)]
    out_prefix: PathBuf,
}

#[derive(Args)]
struct ContractArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    embedding: PathBuf,
    /// Comma-separated arc ids forming a directed path.
    #[arg(long)]
    path: String,
    #[arg(long)]
    out_prefix: PathBuf,
}

#[derive(Args)]
struct MinorArgs {
    #[command(subcommand)]
    cmd: MinorCmd,
}

#[derive(Subcommand)]
enum MinorCmd {
    /// Check a partition witness: blocks listed in the partition file map to
    /// the pattern's vertices in sorted order; each pattern arc is realized
    /// by the first host arc between the right blocks.
    Check(MinorCheckArgs),
}

#[derive(Args)]
struct MinorCheckArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    pattern: PathBuf,
    #[arg(long)]
    partition: PathBuf,
    #[arg(long, value_parser = ["weak", "strong", "hcyclic"])]
    mode: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: String,
    #[arg(long)]
    report: Option<PathBuf>,
}

enum CliErr {
    Usage(String),
    Assertion(String),
    Data(String),
}

type CliResult<T> = Result<T, CliErr>;

impl CliErr {
    fn code(&self) -> u8 {
        match self {
            CliErr::Usage(_) => 2,
            CliErr::Assertion(_) => 1,
            CliErr::Data(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliErr::Usage(_) => "usage",
            CliErr::Assertion(_) => "assertion",
            CliErr::Data(_) => "data",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliErr::Usage(m) | CliErr::Assertion(m) | CliErr::Data(m) => m,
        }
    }
}

fn data_err(e: impl std::fmt::Display) -> CliErr {
    CliErr::Data(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let obj = serde_json::json!({"error": e.message(), "kind": e.kind()});
            eprintln!("{obj}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let seed = cli.seed;
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args, seed),
        Cmd::Realize(args) => cmd_realize(args, seed),
        Cmd::Census(args) => cmd_census(args, seed),
        Cmd::Lk(args) => cmd_lk(args, seed),
        Cmd::Knot(args) => cmd_knot(args, seed),
        Cmd::Double(args) => cmd_double(args, seed),
        Cmd::Contract(args) => cmd_contract(args, seed),
        Cmd::Minor(args) => cmd_minor(args, seed),
        Cmd::Density(args) => cmd_density(args, seed),
        Cmd::Verify(args) => cmd_verify(args, seed),
    }
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| data_err(format!("{}: {e}", path.display())))
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    name.push_str(".manifest.json");
    out.with_file_name(name)
}

fn write_manifest(out: &Path, m: &RunManifest) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(m).map_err(data_err)?;
    s.push('\n');
    write_file(&manifest_path(out), &s)
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(data_err)?;
    s.push('\n');
    write_file(path, &s)
}

fn load_graph(mb: &mut ManifestBuilder, path: &Path) -> CliResult<Digraph> {
    let data = mb
        .read_input(path)
        .map_err(|e| data_err(format!("{}: {e}", path.display())))?;
    Digraph::from_json(&data).map_err(|e| data_err(format!("{}: {e}", path.display())))
}

fn load_embedding(mb: &mut ManifestBuilder, graph: Digraph, path: &Path) -> CliResult<PLEmbedding> {
    let data = mb
        .read_input(path)
        .map_err(|e| data_err(format!("{}: {e}", path.display())))?;
    PLEmbedding::from_json(graph, &data).map_err(|e| data_err(format!("{}: {e}", path.display())))
}

fn parse_cycle(g: &Digraph, spec: &str) -> CliResult<Cycle> {
    let steps: Vec<CycleStep> = spec
        .split(',')
        .map(|tok| {
            let tok = tok.trim();
            let (dir, id) = match tok.strip_prefix('-') {
                Some(rest) => (Traversal::Backward, rest),
                None => (Traversal::Forward, tok),
            };
            CycleStep {
                edge: EdgeId(id.to_string()),
                dir,
            }
        })
        .collect();
    Cycle::new(g, steps).map_err(|e| CliErr::Usage(format!("bad cycle spec `{spec}`: {e}")))
}

#[derive(Serialize)]
struct GenSummary {
    name: String,
    vertices: usize,
    edges: usize,
    flags: Vec<String>,
}

fn cmd_gen(args: GenArgs, seed: u64) -> CliResult<()> {
    let mb = ManifestBuilder::new("gen", seed);
    let need_n = || -> CliResult<usize> {
        args.n
            .ok_or_else(|| CliErr::Usage(format!("`gen {}` needs --n", args.name)))
    };
    let mut flags: Vec<String> = Vec::new();
    let mut wiring_of: Option<Gadget> = None;
    let graph: Digraph = match args.name.as_str() {
        "dbar4" => dbar4().digraph,
        "graph_h" => graph_h().0,
        "graph_h_prime" => graph_h_prime().0,
        "three_link_gadget" => {
            let g = three_link_gadget();
            let d = g.digraph.clone();
            wiring_of = Some(g);
            d
        }
        "ring_gadget" => {
            let k = args
                .k
                .ok_or_else(|| CliErr::Usage("`gen ring_gadget` needs --k".into()))?;
            let g = ring_gadget(k, args.use_prime)
                .map_err(|e| CliErr::Usage(e.to_string()))?;
            let d = g.digraph.clone();
            wiring_of = Some(g);
            d
        }
        "eleven_ring" => {
            let g = eleven_ring();
            let d = g.digraph.clone();
            wiring_of = Some(g);
            d
        }
        "four_link_gadget" => {
            let g = four_link_gadget();
            let d = g.digraph.clone();
            wiring_of = Some(g);
            d
        }
        "knotted11" => knotted11_with(Knotted11Options {
            b4_feeds_a: !args.no_b4_arcs,
            a45_bidirectional: args.a45_bidirectional,
        }),
        "transitive_tournament" => transitive_tournament(need_n()?),
        "apex_tournament" => {
            let n = need_n()?;
            if n < 2 {
                return Err(CliErr::Usage("apex_tournament needs --n >= 2".into()));
            }
            apex_tournament(n)
        }
        "dk" => symmetric_double(&complete_orientation(need_n()?))
            .map_err(data_err)?
            .digraph,
        "oriented_k331" => {
            flags.push("reconstruction".into());
            oriented_k331()
        }
        other => {
            return Err(CliErr::Usage(format!(
                "unknown constructor `{other}`; known: dbar4, graph_h, graph_h_prime, \
                 three_link_gadget, ring_gadget, eleven_ring, four_link_gadget, knotted11, \
                 transitive_tournament, apex_tournament, dk, oriented_k331"
            )));
        }
    };
    write_file(&args.out, &graph.to_json())?;
    if let Some(gadget) = &wiring_of {
        let mut name = args
            .out
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "out".into());
        name.push_str(".wiring.json");
        write_json(&args.out.with_file_name(name), &gadget.wiring)?;
    }
    write_manifest(&args.out, &mb.finish())?;
    let summary = GenSummary {
        name: args.name,
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        flags,
    };
    println!("{}", serde_json::to_string(&summary).map_err(data_err)?);
    Ok(())
}

fn cmd_realize(args: RealizeArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("realize", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let emb = if args.no_validate {
        dilink::embedding::spatial_realize_unvalidated(&graph, seed)
    } else {
        spatial_realize(&graph, seed).map_err(data_err)?
    };
    write_file(&args.out, &emb.to_json())?;
    write_manifest(&args.out, &mb.finish())?;
    Ok(())
}

#[derive(Serialize)]
struct CensusOut {
    manifest: RunManifest,
    links: CensusReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    knots: Option<CensusReport>,
}

fn cmd_census(args: CensusArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("census", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let emb = load_embedding(&mut mb, graph, &args.embedding)?;
    let opts = CensusOptions {
        len_max: args.max_len,
        n_max: args.max_n,
        consistent_only: args.consistent_only,
        cycle_cap: dilink::enumerate::DEFAULT_CYCLE_CAP,
        max_links: args.max_links,
    };
    let links = link_census(&emb, &opts).map_err(data_err)?;
    let knots = if args.knots {
        Some(knot_census(&emb, &opts).map_err(data_err)?)
    } else {
        None
    };
    println!(
        "{}",
        serde_json::json!({
            "cycles": links.cycle_count,
            "counts": links.counts,
            "truncated": links.truncated,
            "knots": knots.as_ref().map(|k| k.knots.len()),
        })
    );
    let out = CensusOut {
        manifest: mb.finish(),
        links,
        knots,
    };
    write_json(&args.report, &out)
}

fn cmd_lk(args: LkArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("lk", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let emb = load_embedding(&mut mb, graph, &args.embedding)?;
    let c1 = parse_cycle(emb.graph(), &args.cycle1)?;
    let c2 = parse_cycle(emb.graph(), &args.cycle2)?;
    let lk = linking_number(&emb, &c1, &c2).map_err(data_err)?;
    println!("{lk}");
    if let Some(report) = &args.report {
        write_json(
            report,
            &serde_json::json!({
                "manifest": mb.finish(),
                "lk": lk,
                "cycle1": c1,
                "cycle2": c2,
            }),
        )?;
    }
    Ok(())
}

fn cmd_knot(args: KnotArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("knot", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let emb = load_embedding(&mut mb, graph, &args.embedding)?;
    let c = parse_cycle(emb.graph(), &args.cycle)?;
    let cert = knot_certificate(&emb, &c).map_err(data_err)?;
    println!(
        "{}",
        serde_json::json!({
            "determinant": cert.determinant.to_string(),
            "arf": cert.arf,
            "crossings": cert.crossing_count,
            "certifies_knot": cert.certifies_knot(),
        })
    );
    if let Some(report) = &args.report {
        write_json(
            report,
            &serde_json::json!({ "manifest": mb.finish(), "certificate": cert }),
        )?;
    }
    Ok(())
}

fn cmd_double(args: DoubleArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("double", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let emb = load_embedding(&mut mb, graph, &args.embedding)?;
    let (doubled, sd) = double_embedding(&emb).map_err(data_err)?;
    let prefix = args.out_prefix.display();
    write_file(
        &PathBuf::from(format!("{prefix}.graph.json")),
        &doubled.graph().to_json(),
    )?;
    write_file(
        &PathBuf::from(format!("{prefix}.embedding.json")),
        &doubled.to_json(),
    )?;
    let twins: BTreeMap<String, String> = sd
        .twin
        .iter()
        .map(|(a, b)| (a.0.clone(), b.0.clone()))
        .collect();
    write_json(&PathBuf::from(format!("{prefix}.twins.json")), &twins)?;
    write_manifest(
        &PathBuf::from(format!("{prefix}.graph.json")),
        &mb.finish(),
    )?;
    Ok(())
}

fn cmd_contract(args: ContractArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("contract", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let emb = load_embedding(&mut mb, graph, &args.embedding)?;
    let path: Vec<EdgeId> = args
        .path
        .split(',')
        .map(|s| EdgeId(s.trim().to_string()))
        .collect();
    let contracted = contract_path_embedding(&emb, &path).map_err(data_err)?;
    let prefix = args.out_prefix.display();
    write_file(
        &PathBuf::from(format!("{prefix}.graph.json")),
        &contracted.embedding.graph().to_json(),
    )?;
    write_file(
        &PathBuf::from(format!("{prefix}.embedding.json")),
        &contracted.embedding.to_json(),
    )?;
    write_manifest(
        &PathBuf::from(format!("{prefix}.graph.json")),
        &mb.finish(),
    )?;
    println!(
        "{}",
        serde_json::json!({"merged": contracted.merged.map(|v| v.0)})
    );
    Ok(())
}

fn cmd_minor(args: MinorArgs, seed: u64) -> CliResult<()> {
    match args.cmd {
        MinorCmd::Check(check) => cmd_minor_check(check, seed),
    }
}

fn cmd_minor_check(args: MinorCheckArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("minor check", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let pattern = load_graph(&mut mb, &args.pattern)?;
    let partition_data = mb
        .read_input(&args.partition)
        .map_err(|e| data_err(format!("{}: {e}", args.partition.display())))?;
    let partition = Partition::from_json(&partition_data).map_err(data_err)?;
    if pattern.vertex_count() != partition.blocks.len() {
        return Err(CliErr::Data(format!(
            "pattern has {} vertices but the partition has {} blocks",
            pattern.vertex_count(),
            partition.blocks.len()
        )));
    }
    // Pattern vertices in sorted order correspond to blocks in file order;
    // realize each pattern arc by the first host arc between its blocks.
    let pattern_blocks: BTreeMap<VertexId, usize> = pattern
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), i))
        .collect();
    let mut realization = BTreeMap::new();
    for pe in pattern.edges() {
        let tb = pattern_blocks[&pe.tail];
        let hb = pattern_blocks[&pe.head];
        let host = graph.edges().iter().find(|e| {
            partition.blocks[tb].contains(&e.tail) && partition.blocks[hb].contains(&e.head)
        });
        if let Some(h) = host {
            realization.insert(pe.id.clone(), h.id.clone());
        }
    }
    let witness = MinorWitness {
        partition,
        pattern,
        edge_realization: realization,
        pattern_blocks,
    };
    let mode = match args.mode.as_str() {
        "weak" => MinorMode::Weak,
        "strong" => MinorMode::Strong,
        _ => MinorMode::HCyclic,
    };
    let report = check_minor_witness(&graph, &witness, mode).map_err(data_err)?;
    println!("{}", serde_json::to_string(&report).map_err(data_err)?);
    if let Some(path) = &args.report {
        write_json(
            path,
            &serde_json::json!({"manifest": mb.finish(), "report": report}),
        )?;
    }
    if report.ok {
        Ok(())
    } else {
        Err(CliErr::Assertion(
            report.failure.unwrap_or_else(|| "witness check failed".into()),
        ))
    }
}

fn cmd_density(args: DensityArgs, seed: u64) -> CliResult<()> {
    let mut mb = ManifestBuilder::new("density", seed);
    let graph = load_graph(&mut mb, &args.graph)?;
    let verdict = density_certificate(&graph).map_err(data_err)?;
    println!("{}", serde_json::to_string(&verdict).map_err(data_err)?);
    if let Some(path) = &args.report {
        write_json(
            path,
            &serde_json::json!({"manifest": mb.finish(), "verdict": verdict}),
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOut {
    manifest: RunManifest,
    suites: Vec<(String, Vec<Check>)>,
    passed: bool,
}

fn cmd_verify(args: VerifyArgs, seed: u64) -> CliResult<()> {
    let mb = ManifestBuilder::new("verify", seed);
    let names = if args.suite == "all" {
        suite_names().into_iter().map(String::from).collect()
    } else {
        if !suite_names().contains(&args.suite.as_str()) {
            return Err(CliErr::Usage(format!(
                "unknown suite `{}`; known: all, {}",
                args.suite,
                suite_names().join(", ")
            )));
        }
        vec![args.suite.clone()]
    };
    let mut suites = Vec::new();
    let mut passed = true;
    for name in names {
        let checks = run_suite(&name, seed).map_err(data_err)?;
        for c in &checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            println!("[{mark}] {name}: {} ({})", c.name, c.details);
            passed &= c.passed;
        }
        suites.push((name, checks));
    }
    if let Some(path) = &args.report {
        write_json(
            path,
            &VerifyOut {
                manifest: mb.finish(),
                suites,
                passed,
            },
        )?;
    }
    if passed {
        Ok(())
    } else {
        Err(CliErr::Assertion("verification suite failed".into()))
    }
}
