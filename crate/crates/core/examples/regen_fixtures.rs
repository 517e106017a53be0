// Regenerates the shipped fixture JSON files under crates/core/fixtures/.
// Run from the workspace root: cargo run -p dilink --example regen_fixtures
use dilink::constructions::{dbar4, oriented_polygon};
use dilink::embedding::PLEmbedding;
use dilink::geom::Point3;
use dilink::linking::linking_number;
use dilink::{Digraph, VertexId};
use std::collections::BTreeMap;
use std::fs;

fn straight_embedding(g: &Digraph, coords: &[(&str, (i64, i64, i64))]) -> PLEmbedding {
    let pos: BTreeMap<VertexId, Point3> = coords
        .iter()
        .map(|&(v, (x, y, z))| (VertexId(v.into()), Point3::from_ints(x, y, z)))
        .collect();
    let mut paths = BTreeMap::new();
    for e in g.edges() {
        paths.insert(
            e.id.clone(),
            vec![pos[&e.tail].clone(), pos[&e.head].clone()],
        );
    }
    PLEmbedding::new(g.clone(), pos, paths).unwrap()
}

fn two_triangles() -> Digraph {
    let mut g = oriented_polygon("a", 3);
    let b = oriented_polygon("b", 3);
    for v in b.vertices() {
        g.add_vertex(v.clone()).unwrap();
    }
    for e in b.edges() {
        g.add_arc(e.id.clone(), e.tail.clone(), e.head.clone())
            .unwrap();
    }
    g
}

fn write(name: &str, g: &Digraph, emb: &PLEmbedding) {
    let dir = "crates/core/fixtures";
    fs::create_dir_all(dir).unwrap();
    fs::write(format!("{dir}/{name}.graph.json"), g.to_json()).unwrap();
    fs::write(format!("{dir}/{name}.embedding.json"), emb.to_json()).unwrap();
    println!("wrote {name}");
}

fn main() {
    // Two triangles, one threading the other: linking number +-1.
    let g = two_triangles();
    let hopf = straight_embedding(
        &g,
        &[
            ("a01", (1, 0, 0)),
            ("a02", (-1, 1, 0)),
            ("a03", (-1, -1, 0)),
            ("b01", (0, 0, 1)),
            ("b02", (0, 1, -2)),
            ("b03", (3, 0, 0)),
        ],
    );
    write("hopf_triangles", &g, &hopf);

    // Two triangles in far-apart balls: split.
    let split = straight_embedding(
        &g,
        &[
            ("a01", (1, 0, 0)),
            ("a02", (-1, 1, 0)),
            ("a03", (-1, -1, 0)),
            ("b01", (100, 0, 1)),
            ("b02", (100, 1, -2)),
            ("b03", (103, 0, 0)),
        ],
    );
    write("split_circles", &g, &split);

    // Minimal-stick trefoil on six sticks.
    let hexagon = oriented_polygon("k", 6);
    let trefoil = straight_embedding(
        &hexagon,
        &[
            ("k01", (6, 5, 5)),
            ("k02", (-8, 0, -4)),
            ("k03", (3, -9, 5)),
            ("k04", (4, 7, -2)),
            ("k05", (-6, -1, 4)),
            ("k06", (2, -5, -3)),
        ],
    );
    write("trefoil_hexagon", &hexagon, &trefoil);

    // Figure-eight knot on eight sticks.
    let octagon = oriented_polygon("k", 8);
    let fig8 = straight_embedding(
        &octagon,
        &[
            ("k01", (1036, 2501, 1000)),
            ("k02", (-1195, -495, -1000)),
            ("k03", (1195, -495, 1000)),
            ("k04", (-1036, 2501, -1000)),
            ("k05", (-1036, -2501, 1000)),
            ("k06", (1195, 495, -1000)),
            ("k07", (-1195, 495, 1000)),
            ("k08", (1036, -2501, -1000)),
        ],
    );
    write("figure_eight", &octagon, &fig8);

    // Doubled four-ring with opposite parallel-pair cycles linking oddly.
    let d4 = dbar4();
    let vpos: BTreeMap<VertexId, Point3> = [
        ("v01", (0, 0, 0)),
        ("v02", (4, 0, 0)),
        ("v03", (2, 0, 3)),
        ("v04", (2, 0, -3)),
    ]
    .into_iter()
    .map(|(v, (x, y, z))| (VertexId(v.into()), Point3::from_ints(x, y, z)))
    .collect();
    let bends: BTreeMap<&str, (i64, i64, i64)> = [
        ("c1a", (6, -3, 5)),
        ("c1b", (-3, 0, -1)),
        ("c2a", (-3, -4, -2)),
        ("c2b", (-1, -2, 2)),
        ("c3a", (5, -5, -5)),
        ("c3b", (-1, -2, 1)),
        ("c4a", (1, 2, 5)),
        ("c4b", (-2, -5, -1)),
    ]
    .into_iter()
    .collect();
    let mut paths = BTreeMap::new();
    for e in d4.digraph.edges() {
        let (x, y, z) = bends[e.id.as_str()];
        paths.insert(
            e.id.clone(),
            vec![
                vpos[&e.tail].clone(),
                Point3::from_ints(x, y, z),
                vpos[&e.head].clone(),
            ],
        );
    }
    let emb = PLEmbedding::new(d4.digraph.clone(), vpos, paths).unwrap();
    let l13 = linking_number(&emb, &d4.pair_cycle(0), &d4.pair_cycle(2)).unwrap();
    let l24 = linking_number(&emb, &d4.pair_cycle(1), &d4.pair_cycle(3)).unwrap();
    assert_eq!((l13.abs() % 2, l24.abs() % 2), (1, 1), "lk13={l13} lk24={l24}");
    write("d4_fixture", &d4.digraph, &emb);
}
