use std::path::PathBuf;
use std::process::{Command, Output};

fn galcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galcoh")).args(args).output().expect("run galcoh")
}

fn stdout(args: &[&str]) -> String {
    let out = galcoh(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("galcoh-{}-{name}", std::process::id()));
    std::fs::write(&p, text).unwrap();
    p
}

fn error_kind(out: &Output) -> String {
    let v: serde_json::Value = serde_json::from_slice(&out.stderr).expect("json error on stderr");
    v["error"]["kind"].as_str().unwrap().to_string()
}

#[test]
fn named_forms() {
    for (name, h1) in [("SL(2,R)", 1), ("SU(2,0)", 2), ("Sp(3,2)", 6), ("Spin(4,4)", 5), ("E8-split", 3), ("SO*(8)", 2)] {
        let v = json(&["h1", name, "--format", "json"]);
        assert_eq!(v["h1"], h1, "{name}");
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["strong_classes"].as_array().unwrap().len(), h1);
    }
    let v = json(&["h1", "E7ad-split", "--format", "json"]);
    assert_eq!((v["h1"].as_u64(), v["pi0"].as_u64()), (Some(4), Some(2)));
}

#[test]
fn datum_files() {
    let a1 = temp_file("a1.toml", "schema_version = 1\ncartan_type = \"A1\"\nroots = [[2]]\ncoroots = [[1]]\n");
    let path = a1.to_str().unwrap();
    let v = json(&["h1", "--datum", path, "--inner", "compact", "--form", "dim:1", "--format", "json"]);
    assert_eq!(v["h1"], 1);
    let v = json(&["h1", "--datum", path, "--inner", "compact", "--form", "A1", "--format", "json"]);
    assert_eq!(v["h1"], 2);

    let m = temp_file("swap.toml", "schema_version = 1\nmatrix = [[0,1],[1,0]]\n");
    assert_eq!(stdout(&["torus-h1", "--matrix", m.to_str().unwrap()]).trim(), "1");
    let m = temp_file("minus.toml", "schema_version = 1\nmatrix = [[1,0],[0,1]]\n");
    assert!(stdout(&["torus-h1", "--matrix", m.to_str().unwrap()]).contains('2'));
}

#[test]
fn exit_codes() {
    let out = galcoh(&["h1", "SL(9,Q)"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_kind(&out), "resolution");

    let out = galcoh(&["census", "--type", "A1", "--inner", "flip"]);
    assert_eq!(out.status.code(), Some(2));

    let v2 = temp_file("v2.toml", "schema_version = 2\ncartan_type = \"A1\"\nroots = [[2]]\ncoroots = [[1]]\n");
    let out = galcoh(&["census", "--datum", v2.to_str().unwrap(), "--inner", "compact"]);
    assert_eq!(out.status.code(), Some(2));

    let out = galcoh(&["census", "--type", "D20"]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(error_kind(&out), "guard");
}

#[test]
fn fibers_of_the_center() {
    let text = stdout(&["fibers", "Sp(4,R)"]);
    assert!(text.contains("|H^1(A)| = 2"), "{text}");
    let v = json(&["fibers", "--type", "A1", "--inner", "compact", "--format", "json"]);
    assert!(v.is_object());
}

#[test]
fn tables_are_deterministic() {
    let a = stdout(&["tables", "--which", "exceptional-sc", "--format", "json"]);
    let b = stdout(&["tables", "--which", "exceptional-sc", "--format", "json"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let rows = v["tables"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 17);
    assert!(rows.iter().all(|r| r["matches"] == true));

    let csv = stdout(&["tables", "--which", "spin", "--format", "csv"]);
    assert!(csv.lines().skip(1).all(|l| l.ends_with(",yes")));
}
