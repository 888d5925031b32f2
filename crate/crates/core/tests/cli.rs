use std::path::Path;
use std::process::{Command, Output};

use std::f64::consts::PI;

fn tristring(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tristring"))
        .args(args)
        .env("TRISTRING_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const K4_GRAPH: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";

#[test]
fn enumerate_writes_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("counts.json");
    let catalog = concat!(env!("CARGO_MANIFEST_DIR"), "/data/sphere.cat");
    let o = tristring(&[
        "enumerate",
        "--catalog",
        catalog,
        "--max-vertices",
        "8",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(
        v["counts"],
        serde_json::json!({"4": 1, "5": 1, "6": 2, "7": 5, "8": 14})
    );
}

#[test]
fn enumerate_below_seed_size_is_rejected() {
    let o = tristring(&["enumerate", "--max-vertices", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("below seed size"));
}

#[test]
fn enumerate_missing_catalog_is_io_error() {
    let o = tristring(&[
        "enumerate",
        "--catalog",
        "/nonexistent/sphere.cat",
        "--max-vertices",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_writes_class_files() {
    let dir = tempfile::tempdir().unwrap();
    let classes = dir.path().join("classes");
    let o = tristring(&[
        "enumerate",
        "--max-vertices",
        "7",
        "--classes-dir",
        classes.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<_> = std::fs::read_dir(&classes).unwrap().collect();
    assert_eq!(files.len(), 1 + 1 + 2 + 5);
    for f in files {
        let path = f.unwrap().path();
        let v = tristring(&["verify", path.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{}", path.display());
    }
}

#[test]
fn kappa_of_k4_and_tutte_of_c3() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", K4_GRAPH);
    let o = tristring(&["kappa", &k4]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "16");

    let c3 = write(dir.path(), "c3.txt", "3 3\n0 1\n1 2\n0 2\n");
    let o = tristring(&["kappa", "--tutte", &c3]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["x^2+x+y", "3"]);
}

#[test]
fn kappa_of_disconnected_graph_exits_four() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "split.txt", "4 2\n0 1\n2 3\n");
    let o = tristring(&["kappa", &g]);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stderr.is_empty());
}

#[test]
fn kappa_accepts_embedding_files() {
    let dir = tempfile::tempdir().unwrap();
    let t = tristring::format::write_embedding(&tristring::surface::standard::k7_torus(), true);
    let p = write(dir.path(), "k7.emb", &t);
    let o = tristring(&["kappa", &p]);
    assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), "16807");
}

#[test]
fn z_lower_bound_golden_values() {
    for (dim, expected) in [("1", 0.5115676), ("2", 2.2794931)] {
        let o = tristring(&[
            "z",
            "--surface",
            "sphere",
            "--mode",
            "lower-bound",
            "--mu",
            "2",
            "--dim",
            dim,
            "--eps",
            "1e-9",
        ]);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        let value = v["value"].as_f64().unwrap();
        assert!(
            ((value - expected) / expected).abs() < 1e-4,
            "D={dim}: {value}"
        );
        assert_eq!(v["converged"], true);
        assert_eq!(v["mode"], "lower-bound");
    }
}

#[test]
fn z_divergence_is_reported_in_band() {
    let o = tristring(&[
        "z",
        "--surface",
        "sphere",
        "--mode",
        "lower-bound",
        "--mu",
        "0",
        "--dim",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["converged"], false);
}

#[test]
fn z_exact_torus_is_the_k7_term() {
    let catalog = concat!(env!("CARGO_MANIFEST_DIR"), "/data/torus.cat");
    let o = tristring(&[
        "z",
        "--surface",
        "torus",
        "--mode",
        "exact",
        "--catalog",
        catalog,
        "--k-max",
        "7",
        "--mu",
        "2",
        "--dim",
        "1",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v = json(&o);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["kappa"], 16807);
    assert_eq!(terms[0]["C"], 1);
    let expected = (-28.0f64).exp() * ((2.0 * PI).powi(6) / 16807.0).sqrt();
    let value = v["value"].as_f64().unwrap();
    assert!(((value - expected) / expected).abs() < 1e-11);
}

#[test]
fn z_partial_and_csv() {
    let o = tristring(&[
        "z", "--mode", "partial", "--mu", "2", "--dim", "1", "--k-max", "200",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["ratio"].as_f64().unwrap() > 10.0);

    let o = tristring(&[
        "z",
        "--mode",
        "lower-bound",
        "--mu",
        "2",
        "--dim",
        "1",
        "--k-max",
        "5",
        "--format",
        "csv",
    ]);
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    assert!(text.starts_with("surface,mode,mu,D,k,n_vertices,C,kappa,log_term,term\n"));
    assert_eq!(text.lines().count(), 1 + 4);
}

#[test]
fn z_output_is_deterministic() {
    let args = [
        "z",
        "--surface",
        "projective-plane",
        "--mode",
        "exact",
        "--k-max",
        "7",
        "--mu",
        "1.5",
        "--dim",
        "2",
    ];
    let a = tristring(&args);
    let b = tristring(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn z_invalid_flags_exit_one() {
    let o = tristring(&[
        "z",
        "--mode",
        "lower-bound",
        "--mu",
        "2",
        "--dim",
        "1",
        "--eps",
        "1e-9",
        "--k-max",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = tristring(&["z", "--mode", "lower-bound", "--mu", "-1", "--dim", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tristring(&["z", "--mode", "sideways", "--mu", "2", "--dim", "1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_catalogs_and_broken_files() {
    for name in ["sphere", "torus", "projective_plane"] {
        let path = format!("{}/data/{name}.cat", env!("CARGO_MANIFEST_DIR"));
        let o = tristring(&["verify", &path]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{name}: {}",
            String::from_utf8_lossy(&o.stdout)
        );
    }

    let dir = tempfile::tempdir().unwrap();
    let mut cat = tristring::builtin_catalog(tristring::SurfaceSpec::SPHERE);
    cat.seeds.push(tristring::Seed::new(
        tristring::surface::standard::octahedron(),
        "octahedron",
    ));
    let p = write(
        dir.path(),
        "bad.cat",
        &tristring::format::write_catalog(&cat),
    );
    let o = tristring(&["verify", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("seed-not-irreducible"));

    // vertex 1 lists 3 but 3 does not list 1
    let broken = "4 6 1\n0: 1 2 3\n1: 0 3 2\n2: 0 1 3\n3: 0 2\n";
    let p = write(dir.path(), "broken.emb", broken);
    let o = tristring(&["verify", &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("rotation-mismatch"));
}
