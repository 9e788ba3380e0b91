use std::process::{Command, Output};

fn chromlag(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chromlag"))
        .args(args)
        .env_remove("CHROMLAG_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_tetrahedron() {
    let o = chromlag(&["validate", "--graph", "tetrahedron"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("{v:4,e:6,f:4,g:1}\n"));
}

#[test]
fn fillability_prism() {
    let o = chromlag(&["fillability", "--graph", "prism"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("q^2 - 4q + 4"));
    assert!(s.contains("q^2 - 2q + 1"));
    assert!(s.contains("obstructed"));
}

#[test]
fn cube_superpotential_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let o = chromlag(&[
        "superpotential",
        "--graph",
        "cube",
        "--phase",
        "cube-std",
        "--framing",
        "zero",
        "--order",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("W = Li₂(U1) + Li₂(U2) + Li₂(U3) - Li₂(U1*U2) - Li₂(U1*U3)"));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["integral"], true);
    assert_eq!(doc["golden_match"], true);
    let k = doc["K"].as_array().unwrap();
    let entry = k.iter().find(|e| e["d"] == serde_json::json!([2, 2, 0])).unwrap();
    assert_eq!(entry["value"], "-1/4");

    // The report is valid input for the bps subcommand.
    let b = chromlag(&["bps", "--input", out.to_str().unwrap()]);
    assert_eq!(b.status.code(), Some(0));
    assert!(stdout(&b).contains("W = Li₂(U1) + Li₂(U2) + Li₂(U3) - Li₂(U1*U2) - Li₂(U1*U3)"));
}

#[test]
fn prism_framing_matrix() {
    let o = chromlag(&[
        "superpotential",
        "--phase",
        "prism-M",
        "--framing",
        "[[0,1],[1,0]]",
        "--order",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("W = Li₂(U1) + Li₂(U2) - Li₂(U1*U2)"));
}

#[test]
fn output_is_deterministic_and_prints_seed() {
    let args = [
        "superpotential",
        "--phase",
        "tetra-p",
        "--framing",
        "2",
        "--order",
        "6",
        "--seed",
        "99",
    ];
    let a = chromlag(&args);
    let b = chromlag(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("seed: 99\n"));
    let env = Command::new(env!("CARGO_BIN_EXE_chromlag"))
        .args(["superpotential", "--phase", "tetra-p", "--order", "3"])
        .env("CHROMLAG_SEED", "1234")
        .output()
        .unwrap();
    assert!(stdout(&env).starts_with("seed: 1234\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(
        chromlag(&["validate", "--graph", "dodecahedron"]).status.code(),
        Some(2)
    );
    assert_eq!(chromlag(&["validate"]).status.code(), Some(2));
    assert_eq!(
        chromlag(&["superpotential", "--phase", "prism-M", "--framing", "[[0,1]]"])
            .status
            .code(),
        Some(2)
    );
    let o = chromlag(&["superpotential", "--phase", "prism-M", "--framing", "[[0,1],[2,0]]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("symmetric"));
    assert_eq!(
        chromlag(&["blowup", "--graph", "prism", "--vertex", "40"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(chromlag(&["fillability", "--graph", "theta"]).status.code(), Some(1));
}

#[test]
fn emitted_graphs_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prism.json");
    let o = chromlag(&[
        "blowup",
        "--graph",
        "tetrahedron",
        "--vertex",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read_to_string(&path).unwrap();
    let v = chromlag(&["validate", "--graph", path.to_str().unwrap(), "--json"]);
    assert_eq!(v.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&v)).unwrap();
    let original: serde_json::Value = serde_json::from_str(&written).unwrap();
    assert_eq!(doc["graph"], original);
    assert!(stdout(&chromlag(&["validate", "--graph", path.to_str().unwrap()])).starts_with("{v:6,e:9,f:5,g:2}"));
}

#[test]
fn phase_file_and_gauge_labels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phase.json");
    std::fs::write(
        &path,
        r#"{"kernel_classes": [[0,1,0,0,0,0]], "lift_classes": [[1,0,0,0,0,0]], "framing": [[0]], "signs": [1]}"#,
    )
    .unwrap();
    let o = chromlag(&[
        "superpotential",
        "--graph",
        "tetrahedron",
        "--phase",
        path.to_str().unwrap(),
        "--gauge",
        "z0,z1,z3",
        "--order",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("W = Li₂(U)"));
    let p = chromlag(&["periods", "--graph", "tetrahedron", "--gauge", "z0,z1,z3"]);
    assert!(stdout(&p).contains("x1 = -t1"));
}

#[test]
fn lattice_with_phase() {
    let o = chromlag(&["lattice", "--graph", "cube", "--phase", "cube-std"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("genus: 3"));
    assert!(s.contains("phase: valid"));
}
