use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use mwis_core::graph::{find_induced_sttt, read_graph};
use mwis_core::Graph;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn mwis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mwis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value_of(o: &Output) -> u64 {
    let text = stdout(o);
    let line = text
        .lines()
        .find(|l| l.starts_with("value "))
        .unwrap_or_else(|| panic!("no value in {text:?}"));
    line[6..].trim().parse().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn bruteforce_on_c5() {
    let o = mwis(&["solve", s(&fixture("c5.graph")), "--algo", "bruteforce"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(value_of(&o), 2);
}

#[test]
fn degree_matches_bruteforce_on_generated_instance() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.graph");
    let o = mwis(&[
        "gen",
        "--family",
        "random",
        "--n",
        "40",
        "--delta",
        "4",
        "--t",
        "2",
        "--seed",
        "11",
        "--out",
        s(&g),
    ]);
    assert_eq!(o.status.code(), Some(0), "{o:?}");
    let brute = mwis(&["solve", s(&g), "--algo", "bruteforce"]);
    let degree = mwis(&[
        "solve",
        s(&g),
        "--algo",
        "degree",
        "--t",
        "2",
        "--ell-scale",
        "0.02",
        "--witness",
    ]);
    assert_eq!(degree.status.code(), Some(0), "{degree:?}");
    assert_eq!(value_of(&degree), value_of(&brute));

    let graph: Graph = read_graph(&std::fs::read_to_string(&g).unwrap()).unwrap();
    let text = stdout(&degree);
    let set: Vec<usize> = text
        .lines()
        .find_map(|l| l.strip_prefix("set"))
        .unwrap()
        .split_whitespace()
        .map(|x| x.parse::<usize>().unwrap() - 1)
        .collect();
    assert!(graph.is_independent(&set));
    assert_eq!(
        set.iter().map(|&v| graph.weights()[v]).sum::<u64>(),
        value_of(&degree)
    );
}

#[test]
fn assert_free_reports_the_claw() {
    for algo in ["bruteforce", "degree", "biclique", "auto"] {
        let o = mwis(&[
            "solve",
            s(&fixture("s222.graph")),
            "--algo",
            algo,
            "--assert-free",
        ]);
        assert_eq!(o.status.code(), Some(3), "{algo}");
        assert!(
            stdout(&o).starts_with("witness 1 :"),
            "{algo}: {}",
            stdout(&o)
        );
    }
    // without the flag the claw is only a note and the value is still exact
    let o = mwis(&["solve", s(&fixture("s222.graph")), "--algo", "degree"]);
    assert_eq!((o.status.code(), value_of(&o)), (Some(0), 4));
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "p 2 1\nv 1 1\nv 2 1\ne 1 3\n").unwrap();
    let o = mwis(&["solve", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(
        mwis(&["solve", s(&fixture("c5.graph")), "--k", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn check_files() {
    let c5 = fixture("c5.graph");
    let ok = mwis(&["check", s(&c5), "--esd", s(&fixture("trivial.esd"))]);
    assert_eq!(
        (ok.status.code(), stdout(&ok)),
        (Some(0), "OK\n".to_string())
    );

    let broken = mwis(&["check", s(&c5), "--esd", s(&fixture("p1_broken.esd"))]);
    assert_eq!(broken.status.code(), Some(1));
    assert!(
        stdout(&broken).contains("vertex 5 is in no set"),
        "{}",
        stdout(&broken)
    );

    // C5 has no vertex of degree above 2k(k-1) = 12 for k = 3
    let td = mwis(&[
        "check",
        s(&c5),
        "--td",
        s(&fixture("singlebag.td")),
        "--weissauer",
        "3",
    ]);
    assert_eq!(td.status.code(), Some(0));
    let td1 = mwis(&[
        "check",
        s(&c5),
        "--td",
        s(&fixture("singlebag.td")),
        "--weissauer",
        "1",
    ]);
    assert_eq!(td1.status.code(), Some(1));
}

#[test]
fn gen_families() {
    let dir = tempfile::tempdir().unwrap();
    let claw = dir.path().join("claw.graph");
    mwis(&[
        "gen",
        "--family",
        "sttt",
        "--a",
        "2",
        "--b",
        "2",
        "--c",
        "2",
        "--out",
        s(&claw),
    ]);
    let g: Graph = read_graph(&std::fs::read_to_string(&claw).unwrap()).unwrap();
    assert_eq!((g.len(), g.edge_count()), (7, 6));

    let rnd = dir.path().join("r.graph");
    mwis(&[
        "gen",
        "--family",
        "random",
        "--n",
        "30",
        "--delta",
        "4",
        "--t",
        "2",
        "--seed",
        "1",
        "--out",
        s(&rnd),
    ]);
    let text = std::fs::read_to_string(&rnd).unwrap();
    assert!(text.starts_with("c family random") && text.contains("seed=1"));
    let g: Graph = read_graph(&text).unwrap();
    assert!(g.max_degree() <= 4);
    assert!(find_induced_sttt(&g, 2).unwrap().is_none());

    let lg = dir.path().join("l.graph");
    let base = dir.path().join("base.graph");
    let o = mwis(&[
        "gen",
        "--family",
        "linegraph",
        "--edges",
        "12",
        "--seed",
        "1",
        "--out",
        s(&lg),
        "--base-out",
        s(&base),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let l: Graph = read_graph(&std::fs::read_to_string(&lg).unwrap()).unwrap();
    let base_text = std::fs::read_to_string(&base).unwrap();
    let b: Graph = read_graph(&base_text).unwrap();
    assert_eq!(l.len(), 12);
    assert_eq!(b.edge_count(), 12);
    assert_eq!(
        base_text
            .lines()
            .filter(|x| x.starts_with("c weight"))
            .count(),
        12
    );
}

#[test]
fn bench_empty_directory_prints_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let o = mwis(&["bench", s(dir.path())]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "instance,algo,value,ms,depth,calls,ok\n");
}

#[test]
fn bench_algorithms_agree() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..4 {
        let p = dir.path().join(format!("g{seed}.graph"));
        mwis(&[
            "gen",
            "--family",
            "random",
            "--n",
            "28",
            "--delta",
            "4",
            "--seed",
            &seed.to_string(),
            "--out",
            s(&p),
        ]);
    }
    std::fs::copy(fixture("c5.graph"), dir.path().join("c5.graph")).unwrap();
    let o = mwis(&[
        "bench",
        s(dir.path()),
        "--algo",
        "degree,bruteforce,biclique",
        "--leaf-cap",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    assert_eq!(rows.len(), 15);
    assert!(rows.iter().all(|r| r[6] == "1"), "{text}");
    for chunk in rows.chunks(3) {
        assert!(
            chunk
                .iter()
                .all(|r| r[0] == chunk[0][0] && r[2] == chunk[0][2]),
            "{text}"
        );
    }
}

#[test]
fn identical_invocations_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.graph");
    let b = dir.path().join("b.graph");
    for p in [&a, &b] {
        mwis(&[
            "gen",
            "--family",
            "random",
            "--n",
            "32",
            "--delta",
            "4",
            "--seed",
            "5",
            "--out",
            s(p),
        ]);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let ta = dir.path().join("a.trace");
    let tb = dir.path().join("b.trace");
    let ra = mwis(&[
        "solve",
        s(&a),
        "--algo",
        "degree",
        "--leaf-cap",
        "8",
        "--witness",
        "--trace",
        s(&ta),
    ]);
    let rb = mwis(&[
        "solve",
        s(&a),
        "--algo",
        "degree",
        "--leaf-cap",
        "8",
        "--witness",
        "--trace",
        s(&tb),
        "--jobs",
        "3",
    ]);
    assert_eq!(ra.stdout, rb.stdout);
    let trace = std::fs::read_to_string(&ta).unwrap();
    assert!(trace.lines().next().unwrap().starts_with("call depth=0"));
    assert_eq!(trace, std::fs::read_to_string(&tb).unwrap());
}

#[test]
fn config_file_fills_gaps_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "algo = \"degree\"\nleaf_cap = 3\n").unwrap();
    let o = mwis(&[
        "solve",
        s(&fixture("c5.graph")),
        "--config",
        s(&cfg),
        "--json",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["algorithm"], "degree");
    assert_eq!(report["config"]["leaf_cap"], 3);
    assert_eq!(report["value"], 2);
    let o = mwis(&[
        "solve",
        s(&fixture("c5.graph")),
        "--config",
        s(&cfg),
        "--algo",
        "bruteforce",
        "--json",
    ]);
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["algorithm"], "bruteforce");

    std::fs::write(&cfg, "nonsense = 1\n").unwrap();
    assert_eq!(
        mwis(&["solve", s(&fixture("c5.graph")), "--config", s(&cfg)])
            .status
            .code(),
        Some(2)
    );
}
