use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn holokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holokit")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = holokit(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn values(table: &Value) -> Vec<String> {
    table.as_array().unwrap().iter().map(|e| e["value"].as_str().unwrap().to_string()).collect()
}

fn witt(n: i64, k: i64) -> i64 {
    let mobius = |mut m: i64| {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if m > 1 {
            -sign
        } else {
            sign
        }
    };
    (1..=k).filter(|d| k % d == 0).map(|d| mobius(d) * n.pow((k / d) as u32)).sum::<i64>() / k
}

#[test]
fn borromean_holonomy_dims_are_witt_numbers() {
    let r = json(&["holonomy", "--file", &fixture("borromean.pres"), "--degree", "6"]);
    let expected: Vec<String> = (1..=6).map(|k| witt(3, k).to_string()).collect();
    assert_eq!(values(&r["dims"]["table"]), expected);
    assert_eq!(expected, ["3", "3", "8", "18", "48", "116"]);
    assert!(r["dims"]["table"].as_array().unwrap().iter().all(|e| e["source"]["kind"] == "linear_algebra"));
}

#[test]
fn seifert_negative_euler_branch() {
    let r = json(&["seifert", "--g", "1", "--pairs", "2/1", "--b", "0", "--degree", "4"]);
    let notes: Vec<&str> = r["ranks"]["notes"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    assert!(notes.iter().any(|n| n.contains("-1/2")), "{notes:?}");
    assert_eq!(values(&r["ranks"]["phi_bar"]), ["2", "1", "2", "3"]);
    assert_eq!(r["holonomy"]["free"], true);
}

#[test]
fn genus_two_cup_products_are_symplectic() {
    let r = json(&["cup", "--file", &fixture("surface2.pres")]);
    let m = &r["cup"]["matrices"][0];
    let expected = serde_json::json!([
        ["0", "1", "0", "0"],
        ["-1", "0", "0", "0"],
        ["0", "0", "0", "1"],
        ["0", "0", "-1", "0"]
    ]);
    assert_eq!(m, &expected);
    assert_eq!(r["cup"]["rank"], 1);
}

#[test]
fn json_output_is_deterministic() {
    for args in [
        vec!["ranks", "--family", "surface g=2", "--json"],
        vec!["mild", "--file", &fixture("quadratic.pres"), "--json", "--degree", "5"],
    ] {
        let a = holokit(&args);
        let b = holokit(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn fingerprint_tracks_canonical_text() {
    let write = |text: &str| {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    };
    let a = write("gens: x, y\nrels: [x, y]\n");
    let b = write("# same group, different layout\ngens: x,y\nrels:\n  x y x^-1 y^-1\n");
    let c = write("gens: x, y\nrels: [y, x]\n");
    let fp = |f: &tempfile::NamedTempFile| {
        json(&["echelon", "--file", f.path().to_str().unwrap()])["fingerprint"].as_str().unwrap().to_string()
    };
    assert_eq!(fp(&a), fp(&b));
    assert_ne!(fp(&a), fp(&c));
}

#[test]
fn quadratic_presentation_is_certified_mild() {
    let r = json(&["mild", "--file", &fixture("quadratic.pres"), "--order", "x1,x2,x3,x4", "--degree", "5"]);
    assert_eq!(r["mildness"]["combinatorial"]["certified"], true);
    let mut terms: Vec<&str> =
        r["mildness"]["combinatorial"]["highest_terms"].as_array().unwrap().iter().map(|t| t.as_str().unwrap()).collect();
    terms.sort();
    assert_eq!(terms, ["x1 x3", "x1 x4", "x2 x3"]);
}

#[test]
fn whitehead_is_not_graded_formal() {
    let r = json(&["formality", "--family", "whitehead"]);
    assert_eq!(r["formality"]["comparison"]["verdict"], "fails");
    assert_eq!(r["formality"]["comparison"]["degree"], 4);
    let dims = json(&["lgdims", "--family", "whitehead"]);
    assert_eq!(values(&dims["dims"]["table"]), ["2", "1", "2", "2", "4", "5"]);
}

#[test]
fn link_from_inline_matrix() {
    let r = json(&["link", "--matrix", "0,1,1;1,0,1;1,1,0", "--degree", "4"]);
    assert_eq!(values(&r["ranks"]["phi_bar"]), ["3", "1", "2", "3"]);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| holokit(args).status.code().unwrap();
    assert_eq!(code(&["cup", "--file", "/nonexistent/file.pres"]), 1);
    assert_eq!(code(&["cup"]), 2);
    assert_eq!(code(&["holonomy", "--family", "surface g=2", "--degree", "6", "--cap", "3"]), 2);
    assert_eq!(code(&["cup", "--family", "klein"]), 2);
    let bad = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(bad.path(), "gens: x\nrels: y\n").unwrap();
    assert_eq!(code(&["cup", "--file", bad.path().to_str().unwrap()]), 3);
    assert_eq!(code(&["link", "--matrix", "0,1;2,0"]), 4);
    assert_eq!(code(&["holonomy", "--family", "free n=20", "--degree", "7"]), 5);
    assert_eq!(code(&["holonomy", "--family", "free n=20", "--degree", "2", "--force"]), 0);
}
