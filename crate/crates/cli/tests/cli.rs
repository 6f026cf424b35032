use std::path::PathBuf;
use std::process::{Command, Output};

fn wittlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittlab")).args(args).env_remove("WITTLAB_LIMIT").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn algebra(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../algebras").join(name).display().to_string()
}

#[test]
fn gen_polys_sum() {
    let o = wittlab(&["gen-polys", "-p", "2", "-n", "2", "--kind", "sum"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "S0 = x0 + y0\nS1 = x1 + y1 - x0*y0\n");
}

#[test]
fn gen_polys_frobenius() {
    let o = wittlab(&["gen-polys", "-p", "3", "-n", "2", "--kind", "frobenius"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "f1 = 3*a1 + a0^3\n");
}

#[test]
fn gen_polys_matches_golden_file() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/polys");
    let o = wittlab(&["gen-polys", "-p", "3", "-n", "3", "--kind", "product"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(dir.join("p3_n3_product.txt")).unwrap());
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(wittlab(&["gen-polys", "-p", "4", "-n", "2", "--kind", "sum"]).status.code(), Some(2));
    assert_eq!(wittlab(&["gen-polys", "-p", "2", "-n", "2", "--kind", "difference"]).status.code(), Some(2));
    assert_eq!(wittlab(&["padic", "-p", "2", "-n", "2", "T(1)+"]).status.code(), Some(2));
    assert_eq!(wittlab(&["whh", "no-such-file.json", "-n", "1"]).status.code(), Some(2));
    assert_eq!(wittlab(&["verify", "nonsense"]).status.code(), Some(2));
    assert_eq!(wittlab(&["qgroup", "-p", "2"]).status.code(), Some(2));
}

#[test]
fn resource_limit_exits_3() {
    let o = wittlab(&["qgroup", "-p", "2", "-n", "3", "-d", "4"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("resource limit"));
    let o = wittlab(&["qgroup", "-p", "2", "-n", "2", "-d", "2", "--limit", "10"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_wittlab"))
        .args(["qgroup", "-p", "2", "-n", "2", "-d", "2"])
        .env("WITTLAB_LIMIT", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn padic_examples() {
    assert_eq!(stdout(&wittlab(&["padic", "-p", "2", "-n", "2", "T(1)+T(1)"])), "(0,1) = 2 mod 4\n");
    assert_eq!(stdout(&wittlab(&["padic", "-p", "2", "-n", "2", "V(T(1))"])), "(0,1) = 2 mod 4\n");
    assert_eq!(stdout(&wittlab(&["padic", "-p", "2", "-n", "2", "T(0)"])), "(0,0) = 0 mod 4\n");
    assert_eq!(stdout(&wittlab(&["padic", "-p", "3", "-n", "2", "T(2)*T(2)"])), "(1,0) = 1 mod 9\n");
}

#[test]
fn qgroup_examples() {
    assert!(stdout(&wittlab(&["qgroup", "-p", "2", "-n", "2", "-d", "1"])).starts_with("W_2(F_2^1) = Z/4\n"));
    assert!(stdout(&wittlab(&["qgroup", "-p", "2", "-n", "1", "-d", "2"])).starts_with("W_1(F_2^2) = (Z/2)^2\n"));
    let out = stdout(&wittlab(&["qgroup", "-p", "2", "-n", "2", "-d", "2"]));
    assert!(out.contains("order 32"), "{out}");
}

#[test]
fn json_output_is_versioned_and_deterministic() {
    let args = ["qgroup", "-p", "2", "-n", "2", "-d", "2", "--format", "json"];
    let a = stdout(&wittlab(&args));
    assert_eq!(a, stdout(&wittlab(&args)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["order"], "32");
}

#[test]
fn whh_f4() {
    let o = wittlab(&["whh", &algebra("f4.json"), "-n", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("order 16"), "{out}");
    assert!(out.contains("matches classical: true"), "{out}");
    let o = wittlab(&["whh", &algebra("f4.json"), "-n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["matches_classical"], true);
    assert_eq!(v["sequence"]["middle_exact"], true);
}

#[test]
fn ncpoly_word_format() {
    let o = wittlab(&["ncpoly", "-p", "2", "-i", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "c1 = x0.x1\nverified: true\n");
}

#[test]
fn big_arithmetic() {
    let o = wittlab(&["big", "-N", "3", "--op", "ghost", "--a", "[1,1,1]"]);
    assert_eq!(stdout(&o), "ghost = [1, 3, 4]\n");
    let o = wittlab(&["big", "-N", "2", "--op", "to-series", "--a", "[1,0]"]);
    assert_eq!(stdout(&o), "series = [1, -1, 0]\n");
    assert_eq!(wittlab(&["big", "-N", "2", "--op", "add", "--a", "[1,0]"]).status.code(), Some(2));
}

#[test]
fn verify_classical_passes() {
    let o = wittlab(&["verify", "classical"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("pass"));
}

#[test]
fn verify_detects_a_corrupted_golden_file() {
    let src = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/polys");
    let dir = std::env::temp_dir().join(format!("wittlab-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for entry in std::fs::read_dir(&src).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
    }
    std::fs::write(dir.join("p2_n2_sum.txt"), "S0 = x0 + y0\nS1 = x1 + y1 + x0*y0\n").unwrap();
    let o = wittlab(&["verify", "classical", "--golden-dir", dir.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(o.status.code(), Some(1));
}
