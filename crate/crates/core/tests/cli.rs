use std::process::{Command, Output};

fn lamplighter(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamplighter"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_element_json() {
    let o = lamplighter(&["--ring", "Z/2", "--n", "1", "--format", "json", "eval", "t^-4 a t^4 a t a t^2 a t^2"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "{\"f\":{\"laurent\":{\"-4\":1,\"0\":1,\"1\":1,\"3\":1},\"poles\":{}},\"h\":[5],\"n\":1,\"ring\":\"Z/2\"}\n"
    );
}

#[test]
fn conjugation_identity() {
    let a = lamplighter(&["--ring", "Z", "eval", "s a s^-1"]);
    let b = lamplighter(&["--ring", "Z", "eval", "a t a t^-1"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn normal_forms_agree_across_spellings() {
    let a = lamplighter(&["--ring", "Z/2", "--n", "1", "nf", "t^-4 a t^4 a t a t^2 a t^2"]);
    let b = lamplighter(&["--ring", "Z/2", "--n", "1", "nf", "a t^-1 a t^4 a t^-7 a t^3 a t^2 a t^4"]);
    assert_eq!(stdout(&a), stdout(&b));
    let id = lamplighter(&["nf", "a a^-1"]);
    assert_eq!(stdout(&id), "\n");
    let rank3 = lamplighter(&["--ring", "Z/3", "--n", "3", "nf", "g[1,2]"]);
    assert_eq!(rank3.status.code(), Some(2));
}

#[test]
fn phi_then_phi_inv_reproduces_input() {
    let e = lamplighter(&["--ring", "Z/5", "eval", "a^3 s^2 t^-1 mu nu^-2"]);
    let element = stdout(&e);
    let v = lamplighter(&["--ring", "Z/5", "phi", &element]);
    assert!(v.status.success());
    let back = lamplighter(&["--ring", "Z/5", "phi-inv", &stdout(&v)]);
    assert!(back.status.success());
    assert_eq!(stdout(&back), element);
    let origin = lamplighter(&["--ring", "Z/5", "--format", "json", "phi", ""]);
    assert_eq!(
        stdout(&origin),
        "{\"coords\":[{\"height\":0,\"labels\":[]},{\"height\":0,\"labels\":[]},{\"height\":0,\"labels\":[]}]}\n"
    );
}

#[test]
fn verify_exit_codes() {
    let ok = lamplighter(&["--ring", "Z/2", "--n", "1", "--radius", "3", "verify", "iso"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("PASS"));
    let rel = lamplighter(&["--ring", "Z", "--n", "2", "verify", "relators", "--pres", "iii", "--bound", "3"]);
    assert_eq!(rel.status.code(), Some(0));
    let bad = lamplighter(&["--ring", "Z/2", "--n", "3", "verify", "iso"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("not invertible"));
    let usage = lamplighter(&["verify", "everything"]);
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn json_report_and_out_file() {
    let dir = std::env::temp_dir().join(format!("lamplighter-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = lamplighter(&[
        "--ring", "Z", "--format", "json", "--out", path.to_str().unwrap(),
        "verify", "propagation", "--samples", "20",
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v = lamplighter::json::parse(&text).unwrap();
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert_eq!(v["counts"]["samples"], serde_json::json!(20));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn exports() {
    for (format, marker) in [("dot", "digraph"), ("graphml", "<graphml"), ("edge-csv", "source,target,label"), ("json", "\"vertices\"")] {
        let o = lamplighter(&["--ring", "Z/3", "--n", "1", "--radius", "2", "--format", format, "export"]);
        assert!(o.status.success(), "{format}");
        assert!(stdout(&o).contains(marker), "{format}");
    }
    let h = lamplighter(&["--ring", "Z/3", "--n", "1", "--radius", "2", "--format", "json", "export", "--kind", "hn"]);
    let c = lamplighter(&["--ring", "Z/3", "--n", "1", "--radius", "2", "--format", "json", "export"]);
    let hv = lamplighter::json::parse(&stdout(&h)).unwrap();
    let cv = lamplighter::json::parse(&stdout(&c)).unwrap();
    assert_eq!(hv["vertices"].as_array().unwrap().len(), cv["vertices"].as_array().unwrap().len());
    let summary = lamplighter(&["--ring", "Z/2", "--n", "1", "--radius", "2", "ball"]);
    assert!(stdout(&summary).contains("vertices: 15"), "{}", stdout(&summary));
}
