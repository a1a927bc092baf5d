use std::path::Path;
use std::process::{Command, Output};

use hyperdecomp::decomp::{solve_decomposition, DecompositionCertificate, SolveStatus};
use hyperdecomp::hypergraph::TGraph;
use num_bigint::BigInt;
use num_rational::BigRational;

fn hd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperdecomp"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_graph(dir: &Path, name: &str, g: &TGraph) -> String {
    let p = dir.join(name);
    std::fs::write(&p, g.to_tg()).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn decompose_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k9.tg", &TGraph::complete(9, 2).unwrap());
    let cert = dir.path().join("cert.json");
    let out = hd(&[
        "decompose",
        "--input",
        &g,
        "--k",
        "3",
        "--output",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("cliques: 84"));
    let c = DecompositionCertificate::read(&cert).unwrap();
    assert!(c
        .items
        .iter()
        .all(|it| it.weight == BigRational::new(BigInt::from(1), BigInt::from(7))));

    let out = hd(&["verify", "--input", &g, "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("certificate valid"));

    let tampered = std::fs::read_to_string(&cert)
        .unwrap()
        .replacen("\"1/7\"", "\"1/8\"", 1);
    std::fs::write(&cert, tampered).unwrap();
    let out = hd(&["verify", "--input", &g, "--cert", cert.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let j: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(j["valid"], false);
}

#[test]
fn cycle_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "c5.tg", &TGraph::cycle(5).unwrap());
    let out = hd(&["decompose", "--input", &g, "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let j: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(j["status"], "no_cover");
    assert_eq!(j["witness"], serde_json::json!([0, 1]));
}

#[test]
fn positive_with_zeros_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let eps = BigRational::new(BigInt::from(1), BigInt::from(4));
    let (g, k) = (0..40u64)
        .flat_map(|seed| [3, 4].map(|k| (seed, k)))
        .map(|(seed, k)| {
            (
                TGraph::gen_dense_random(10 + (seed as usize % 5), 2, &eps, seed).unwrap(),
                k,
            )
        })
        .find(|(g, k)| solve_decomposition(g, *k).unwrap().status == SolveStatus::PositiveWithZeros)
        .expect("no instance with zero coordinates");
    let path = write_graph(dir.path(), "z.tg", &g);
    let cert = dir.path().join("z.json");
    let k = k.to_string();
    let out = hd(&[
        "decompose",
        "--input",
        &path,
        "--k",
        &k,
        "--output",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("positive_with_zeros"));
    assert_eq!(
        hd(&["verify", "--input", &path, "--cert", cert.to_str().unwrap()])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.tg");
    std::fs::write(&bad, "2 5\n0 1\n").unwrap();
    let out = hd(&["decompose", "--input", bad.to_str().unwrap(), "--k", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 1"));

    let missing = dir.path().join("nope.tg");
    assert_eq!(
        hd(&["bounds", "--input", missing.to_str().unwrap(), "--k", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(hd(&["decompose", "--k", "3"]).status.code(), Some(2));
    assert_eq!(
        hd(&["spectrum", "--t", "3", "--k", "2", "--v", "9"]).status.code(),
        Some(2)
    );
    let out = dir.path().join("g.tg");
    assert_eq!(
        hd(&[
            "gen",
            "--v",
            "9",
            "--t",
            "2",
            "--epsilon",
            "0.25",
            "--output",
            out.to_str().unwrap()
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(hd(&["--help"]).status.code(), Some(0));
}

#[test]
fn oversized_matrix_exits_three() {
    let out = hd(&["spectrum", "--t", "2", "--k", "3", "--v", "60", "--check-matrix"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(
        hd(&["spectrum", "--t", "2", "--k", "3", "--v", "60"]).status.code(),
        Some(0)
    );
}

#[test]
fn gen_is_reproducible_and_reports_epsilon() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tg");
    let b = dir.path().join("b.tg");
    let args = |p: &Path| {
        [
            "gen",
            "--v",
            "12",
            "--t",
            "2",
            "--epsilon",
            "1/3",
            "--seed",
            "5",
            "--output",
            p.to_str().unwrap(),
        ]
        .map(str::to_owned)
    };
    let oa = Command::new(env!("CARGO_BIN_EXE_hyperdecomp"))
        .args(args(&a))
        .output()
        .unwrap();
    let ob = Command::new(env!("CARGO_BIN_EXE_hyperdecomp"))
        .args(args(&b))
        .output()
        .unwrap();
    assert_eq!(oa.status.code(), Some(0));
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let g = TGraph::parse_tg(&std::fs::read_to_string(&a).unwrap()).unwrap();
    let eps = g.density_epsilon().epsilon;
    assert!(eps <= BigRational::new(BigInt::from(1), BigInt::from(3)));
    assert!(stdout(&oa).contains(&format!("epsilon: {}/{}", eps.numer(), eps.denom())));
    assert_eq!(stdout(&oa), stdout(&ob));
}

#[test]
fn spectrum_and_bounds_reports() {
    let out = hd(&[
        "spectrum", "--t", "2", "--k", "3", "--v", "9", "--sweep", "20", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(j["theta"], serde_json::json!(["21", "12", "5"]));
    assert_eq!(j["isolation_status"], "ordered");
    assert_eq!(j["roots_above_half_theta_t"], true);

    let out = hd(&["spectrum", "--t", "2", "--k", "2", "--v", "9"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("degenerate"));

    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(
        dir.path(),
        "m.tg",
        &TGraph::complete_minus_perfect_matching(20).unwrap(),
    );
    let out = hd(&["bounds", "--input", &g, "--k", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let j: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(j["eps"], "1/19");
    assert_eq!(j["threshold"], "1/18");
    assert_eq!(j["flags"]["eps_below_threshold"], true);
}

#[test]
fn gen_epsilon_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("full.tg");
    let out = hd(&[
        "gen",
        "--v",
        "8",
        "--t",
        "2",
        "--epsilon",
        "0",
        "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let g = TGraph::parse_tg(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert!(g.is_complete() && g.edge_count() == 28);

    let p = dir.path().join("d.tg");
    let out = hd(&[
        "gen",
        "--v",
        "20",
        "--t",
        "2",
        "--epsilon",
        "1/19",
        "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let g = TGraph::parse_tg(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert!(g.density_epsilon().epsilon <= BigRational::new(BigInt::from(1), BigInt::from(19)));

    let unwritable = dir.path().join("no/such/dir/g.tg");
    let out = hd(&[
        "gen",
        "--v",
        "8",
        "--t",
        "2",
        "--epsilon",
        "0",
        "--output",
        unwritable.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_on_complete_graph_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_graph(dir.path(), "k8.tg", &TGraph::complete(8, 2).unwrap());
    let out = hd(&["bounds", "--input", &g, "--k", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let json: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(json["delta_norm"], "0");
    assert_eq!(json["flags"]["norm_below_half_theta_t"], true);
    assert_eq!(json["flags"]["eps_below_threshold"], true);

    let big = write_graph(dir.path(), "k50.tg", &TGraph::complete(50, 2).unwrap());
    assert_eq!(hd(&["bounds", "--input", &big, "--k", "3"]).status.code(), Some(3));
    assert_eq!(hd(&["decompose", "--input", &big, "--k", "3"]).status.code(), Some(3));
}

#[test]
fn certificate_for_different_graph_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let k9 = write_graph(dir.path(), "k9.tg", &TGraph::complete(9, 2).unwrap());
    let cert = dir.path().join("c.json");
    hd(&[
        "decompose",
        "--input",
        &k9,
        "--k",
        "3",
        "--output",
        cert.to_str().unwrap(),
    ]);
    let other = TGraph::complete(9, 2).unwrap().without_edges([[0usize, 1]]).unwrap();
    let other = write_graph(dir.path(), "other.tg", &other);
    let out = hd(&["verify", "--input", &other, "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[0, 1]"), "{}", stdout(&out));

    let tampered = std::fs::read_to_string(&cert)
        .unwrap()
        .replacen("\"1/7\"", "\"2/7\"", 1);
    std::fs::write(&cert, tampered).unwrap();
    let out = hd(&["verify", "--input", &k9, "--cert", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("[0, 1]"), "{}", stdout(&out));
}
