use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn curvelab(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvelab"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("spawn curvelab")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn without_timestamp(text: &str) -> String {
    text.lines().filter(|l| !l.contains("\"generated_at_unix\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn census_at_bound_zero_is_empty_but_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let o = curvelab(&["census", "--surface", "0,5", "--bound", "0"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("s0-5-b0-census.json")).unwrap()).unwrap();
    assert_eq!(doc["report"]["curves"].as_array().unwrap().len(), 0);
    assert_eq!(doc["header"]["tool"], "curvelab");
}

#[test]
fn unsupported_surface_and_unknown_suite_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&curvelab(&["census", "--surface", "0,2"], dir.path())), 2);
    assert_eq!(code(&curvelab(&["census", "--surface", "banana"], dir.path())), 2);
    assert_eq!(code(&curvelab(&["census"], dir.path())), 2);
    assert_eq!(code(&curvelab(&["verify", "--suite", "nope"], dir.path())), 2);
    assert_eq!(code(&curvelab(&["verify", "--n-range", "7..4"], dir.path())), 2);
    assert_eq!(code(&curvelab(&["census", "--surface", "0,5", "--escalate", "3"], dir.path())), 2);
}

#[test]
fn squares_suite_passes() {
    let dir = tempfile::tempdir().unwrap();
    let o = curvelab(&["verify", "--suite", "squares", "--bound", "10"], dir.path());
    assert_eq!(code(&o), 0);
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.starts_with("PASS squares"), "{stdout}");
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("verify.json")).unwrap()).unwrap();
    assert_eq!(doc["report"][0]["status"], "pass");
}

#[test]
fn reports_differ_only_in_header() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["census", "--surface", "1,2", "--bound", "8"];
    assert_eq!(code(&curvelab(&args, a.path())), 0);
    assert_eq!(code(&curvelab(&[&args[..], &["--threads", "1"]].concat(), b.path())), 0);
    for name in ["census", "intersections", "histogram"] {
        let file = format!("s1-2-b8-{name}.json");
        let x = fs::read_to_string(a.path().join(&file)).unwrap();
        let y = fs::read_to_string(b.path().join(&file)).unwrap();
        assert_eq!(without_timestamp(&x), without_timestamp(&y), "{file}");
    }
}

#[test]
fn reference_engine_writes_the_same_table() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let args = ["census", "--surface", "0,5", "--bound", "10"];
    assert_eq!(code(&curvelab(&args, a.path())), 0);
    assert_eq!(code(&curvelab(&[&args[..], &["--reference"]].concat(), b.path())), 0);
    let file = "s0-5-b10-intersections.json";
    assert_eq!(
        without_timestamp(&fs::read_to_string(a.path().join(file)).unwrap()),
        without_timestamp(&fs::read_to_string(b.path().join(file)).unwrap())
    );
}

#[test]
fn export_writes_path_and_cycle_graphs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&curvelab(&["export", "--surface", "1,4"], dir.path())), 0);
    let names: Vec<String> =
        fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    let find = |shape: &str| names.iter().find(|n| n.ends_with(&format!("-{shape}.dot"))).cloned();
    let linear = fs::read_to_string(dir.path().join(find("linear").expect("linear class"))).unwrap();
    let cyclic = fs::read_to_string(dir.path().join(find("cyclic").expect("cyclic class"))).unwrap();
    assert!(linear.starts_with("graph ") && cyclic.starts_with("graph "));
    // 4 curves: a path has 3 edges, a cycle 4
    assert_eq!(linear.matches(" -- ").count(), 3);
    assert_eq!(cyclic.matches(" -- ").count(), 4);
}

#[test]
fn export_of_empty_census_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = curvelab(&["export", "--surface", "1,3", "--census", "--bound", "2"], dir.path());
    assert_eq!(code(&o), 0);
    assert!(!dir.path().exists() || fs::read_dir(dir.path()).unwrap().next().is_none());
}

#[test]
fn pants_reports_decompositions() {
    let dir = tempfile::tempdir().unwrap();
    let o = curvelab(&["pants", "--surface", "0,5", "--bound", "12"], dir.path());
    assert_eq!(code(&o), 0);
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("s0-5-b12-pants.json")).unwrap()).unwrap();
    let decs = doc["report"]["decompositions"].as_array().unwrap();
    assert!(!decs.is_empty());
    assert!(decs.iter().all(|d| d["curves"].as_array().unwrap().len() == 2));
}
