//! End-to-end CLI tests driving the compiled binary.

use std::path::Path;
use std::process::{Command, Output};

fn dilink(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dilink"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_writes_graph_wiring_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dilink(&["gen", "three_link_gadget", "--out", "g.json"], dir.path());
    assert!(out.status.success(), "{out:?}");
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["vertices"], 21);
    assert_eq!(summary["edges"], 93);
    assert!(dir.path().join("g.json").exists());
    assert!(dir.path().join("g.wiring.json").exists());
    assert!(dir.path().join("g.manifest.json").exists());
}

#[test]
fn gen_is_deterministic_modulo_duration() {
    let dir = tempfile::tempdir().unwrap();
    dilink(&["gen", "dbar4", "--out", "a.json"], dir.path());
    dilink(&["gen", "dbar4", "--out", "b.json"], dir.path());
    let a = std::fs::read_to_string(dir.path().join("a.json")).unwrap();
    let b = std::fs::read_to_string(dir.path().join("b.json")).unwrap();
    assert_eq!(a, b);
    let scrub = |p: &Path| -> String {
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        let mut v = v;
        v["duration_ms"] = 0.into();
        v["argv"] = serde_json::Value::Null; // differs in --out
        v.to_string()
    };
    assert_eq!(
        scrub(&dir.path().join("a.manifest.json")),
        scrub(&dir.path().join("b.manifest.json"))
    );
}

#[test]
fn gen_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dilink(&["gen", "nosuch", "--out", "g.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(err["kind"], "usage");

    let out = dilink(&["gen", "transitive_tournament", "--out", "g.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gen_counts_match_formulas() {
    let dir = tempfile::tempdir().unwrap();
    let out = dilink(
        &["gen", "transitive_tournament", "--n", "5", "--out", "t5.json"],
        dir.path(),
    );
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["edges"], 10);

    let out = dilink(&["gen", "dbar4", "--out", "d4.json"], dir.path());
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["vertices"], 4);
    assert_eq!(summary["edges"], 8);

    let out = dilink(&["gen", "oriented_k331", "--out", "k.json"], dir.path());
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["flags"][0], "reconstruction");
}

#[test]
fn realize_census_lk_knot_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    // Two disjoint triangles via the registry is not available directly;
    // use dk on 6 vertices for a census, then fixture-free lk on a doubled
    // triangle embedding.
    let out = dilink(&["gen", "dk", "--n", "6", "--out", "dk6.json"], dir.path());
    assert!(out.status.success());
    let out = dilink(
        &["realize", "--graph", "dk6.json", "--out", "dk6.emb.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let out = dilink(
        &[
            "census",
            "--graph",
            "dk6.json",
            "--embedding",
            "dk6.emb.json",
            "--max-len",
            "4",
            "--max-n",
            "2",
            "--consistent-only",
            "--report",
            "census.json",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("census.json")).unwrap())
            .unwrap();
    assert_eq!(report["links"]["truncated"], false);

    // Linking number of two disjoint triangles inside the realized DK6:
    // triangle on v01,v02,v03 and triangle on v04,v05,v06.
    let out = dilink(
        &[
            "lk",
            "--graph",
            "dk6.json",
            "--embedding",
            "dk6.emb.json",
            "--cycle1",
            "v01>v02,v02>v03,v01>v03~",
            "--cycle2",
            "v04>v05,v05>v06,v04>v06~",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let lk: i64 = stdout(&out).trim().parse().unwrap();
    assert!(lk.abs() <= 1);

    let out = dilink(
        &[
            "knot",
            "--graph",
            "dk6.json",
            "--embedding",
            "dk6.emb.json",
            "--cycle",
            "v01>v02,v02>v03,v01>v03~",
        ],
        dir.path(),
    );
    assert!(out.status.success());
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["determinant"], "1");
}

#[test]
fn double_and_contract_round() {
    let dir = tempfile::tempdir().unwrap();
    // A triangle orientation: transitive tournament on 3 has one inconsistent
    // triangle; use dk3 instead and contract a two-arc path in it.
    dilink(&["gen", "transitive_tournament", "--n", "3", "--out", "t3.json"], dir.path());
    dilink(
        &["realize", "--graph", "t3.json", "--out", "t3.emb.json"],
        dir.path(),
    );
    let out = dilink(
        &[
            "double",
            "--graph",
            "t3.json",
            "--embedding",
            "t3.emb.json",
            "--out-prefix",
            "t3d",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let doubled: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("t3d.graph.json")).unwrap())
            .unwrap();
    assert_eq!(doubled["edges"].as_array().unwrap().len(), 6);

    let out = dilink(
        &[
            "contract",
            "--graph",
            "t3.json",
            "--embedding",
            "t3.emb.json",
            "--path",
            "v01>v02",
            "--out-prefix",
            "t3c",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let contracted: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("t3c.graph.json")).unwrap())
            .unwrap();
    assert_eq!(contracted["vertices"].as_array().unwrap().len(), 2);
}

#[test]
fn minor_check_and_density() {
    let dir = tempfile::tempdir().unwrap();
    dilink(&["gen", "dk", "--n", "3", "--out", "dk3.json"], dir.path());
    // Pattern: single vertex; partition: one block with all vertices.
    std::fs::write(
        dir.path().join("w.json"),
        r#"{"vertices":["w"],"edges":[]}"#,
    )
    .unwrap();
    std::fs::write(
        dir.path().join("p.json"),
        r#"{"blocks": [["v01","v02","v03"]]}"#,
    )
    .unwrap();
    for mode in ["weak", "strong", "hcyclic"] {
        let out = dilink(
            &[
                "minor",
                "check",
                "--graph",
                "dk3.json",
                "--pattern",
                "w.json",
                "--partition",
                "p.json",
                "--mode",
                mode,
            ],
            dir.path(),
        );
        assert!(out.status.success(), "{mode}: {out:?}");
    }
    // A transitive tournament block is weakly but not strongly connected.
    dilink(&["gen", "transitive_tournament", "--n", "3", "--out", "t3.json"], dir.path());
    let out = dilink(
        &[
            "minor", "check", "--graph", "t3.json", "--pattern", "w.json", "--partition",
            "p.json", "--mode", "strong",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));

    let out = dilink(&["density", "--graph", "dk3.json"], dir.path());
    assert!(out.status.success());
    assert!(stdout(&out).contains("BelowThreshold"));
}

#[test]
fn verify_suite_runs_and_rejects_unknown() {
    let dir = tempfile::tempdir().unwrap();
    let out = dilink(
        &["verify", "construction", "--report", "v.json"],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("v.json")).unwrap())
            .unwrap();
    assert_eq!(report["passed"], true);

    let out = dilink(&["verify", "nosuch"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn schema_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.json"), "{broken").unwrap();
    let out = dilink(&["density", "--graph", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(3));
    let out = dilink(&["density", "--graph", "missing.json"], dir.path());
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn shipped_fixtures_work_through_the_cli() {
    let fixtures = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let dir = tempfile::tempdir().unwrap();
    let graph = fixtures.join("hopf_triangles.graph.json");
    let emb = fixtures.join("hopf_triangles.embedding.json");
    let out = dilink(
        &[
            "lk",
            "--graph",
            graph.to_str().unwrap(),
            "--embedding",
            emb.to_str().unwrap(),
            "--cycle1",
            "a01>a02,a02>a03,a03>a01",
            "--cycle2",
            "b01>b02,b02>b03,b03>b01",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let lk: i64 = stdout(&out).trim().parse().unwrap();
    assert_eq!(lk.abs(), 1);

    // Split fixture census: empty link list.
    let graph = fixtures.join("split_circles.graph.json");
    let emb = fixtures.join("split_circles.embedding.json");
    let out = dilink(
        &[
            "census",
            "--graph",
            graph.to_str().unwrap(),
            "--embedding",
            emb.to_str().unwrap(),
            "--consistent-only",
            "--report",
            "split.json",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("split.json")).unwrap())
            .unwrap();
    assert_eq!(report["links"]["links"].as_array().unwrap().len(), 0);

    // Trefoil knot certificate through the CLI.
    let graph = fixtures.join("trefoil_hexagon.graph.json");
    let emb = fixtures.join("trefoil_hexagon.embedding.json");
    let out = dilink(
        &[
            "knot",
            "--graph",
            graph.to_str().unwrap(),
            "--embedding",
            emb.to_str().unwrap(),
            "--cycle",
            "k01>k02,k02>k03,k03>k04,k04>k05,k05>k06,k06>k01",
        ],
        dir.path(),
    );
    assert!(out.status.success(), "{out:?}");
    let cert: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(cert["determinant"], "3");
    assert_eq!(cert["arf"], 1);
    assert_eq!(cert["certifies_knot"], true);
}

#[test]
fn every_registry_constructor_generates() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[(&[&str], u64, u64)] = &[
        (&["gen", "dbar4", "--out", "a.json"], 4, 8),
        (&["gen", "graph_h", "--out", "b.json"], 8, 31),
        (&["gen", "graph_h_prime", "--out", "c.json"], 8, 16),
        (&["gen", "three_link_gadget", "--out", "d.json"], 21, 93),
        (&["gen", "ring_gadget", "--k", "4", "--out", "e.json"], 28, 124),
        (
            &["gen", "ring_gadget", "--k", "4", "--use-prime", "--out", "f.json"],
            28,
            94,
        ),
        (&["gen", "eleven_ring", "--out", "g.json"], 77, 341),
        (&["gen", "four_link_gadget", "--out", "h.json"], 605, 3069),
        (&["gen", "knotted11", "--out", "i.json"], 11, 63),
        (
            &["gen", "transitive_tournament", "--n", "6", "--out", "j.json"],
            6,
            15,
        ),
        (&["gen", "apex_tournament", "--n", "7", "--out", "k.json"], 7, 27),
        (&["gen", "dk", "--n", "6", "--out", "l.json"], 6, 30),
        (&["gen", "oriented_k331", "--out", "m.json"], 7, 23),
    ];
    for (args, vertices, edges) in cases {
        let out = dilink(args, dir.path());
        assert!(out.status.success(), "{args:?}: {out:?}");
        let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(summary["vertices"], *vertices, "{args:?}");
        assert_eq!(summary["edges"], *edges, "{args:?}");
    }
}
