use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyharmonic")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = run(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn cell_matches(text: &str, v: &Value) -> bool {
    match v {
        Value::Null => text.is_empty(),
        Value::String(s) => s == text,
        Value::Bool(b) => text == b.to_string(),
        Value::Number(n) => text.parse::<f64>().ok() == n.as_f64(),
        _ => false,
    }
}

#[test]
fn csv_and_json_carry_the_same_rows() {
    for args in [
        vec!["spectrum", "--d", "2", "--m", "2", "--t", "1", "--count", "6"],
        vec!["bounds", "--d", "2", "--m-range", "1..6"],
        vec!["verify", "--suite", "sandwich", "--d", "2", "--m-range", "1..3"],
        vec!["oracle", "--geometry", "interval", "--m", "2", "--t", "2", "--basis", "8", "--count", "3"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o);
        assert!(!text.contains('\r'));
        let j = json(&args);
        let rows = j["rows"].as_array().unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
        let recs: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
        assert_eq!(recs.len(), rows.len(), "{args:?}");
        for (rec, row) in recs.iter().zip(rows) {
            let obj = row.as_object().unwrap();
            assert_eq!(obj.keys().cloned().collect::<Vec<_>>(), header);
            for (cell, key) in rec.iter().zip(&header) {
                assert!(cell_matches(cell, &obj[key]), "{args:?} {key}: {cell} vs {}", obj[key]);
            }
        }
    }
}

#[test]
fn spectrum_values() {
    let j = json(&["spectrum", "--d", "2", "--m", "1", "--t", "1", "--count", "3"]);
    assert_eq!(j["command"], "spectrum");
    let l: Vec<f64> = j["rows"].as_array().unwrap().iter().map(|r| r["lambda"].as_f64().unwrap()).collect();
    assert!((l[0] - 5.783_185_962_946_784).abs() < 1e-9);
    assert!((l[1] - 14.681_970_642_123_89).abs() < 1e-8);
    assert_eq!(l[1], l[2]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["spectrum", "--d", "2", "--m", "2", "--t", "3"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["bounds", "--d", "2"]).status.code(), Some(2));
    assert_eq!(run(&["--threads", "0", "bounds", "--d", "1", "--m", "2"]).status.code(), Some(2));
    let o = run(&["spectrum", "--d", "2", "--m", "1", "--t", "1", "--rho-max", "80"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("precision budget"));
    // exploratory failures do not change the exit status
    assert_eq!(run(&["verify", "--suite", "shift-conjecture"]).status.code(), Some(0));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_file_matches_stdout() {
    let dir = std::env::temp_dir().join(format!("polyharmonic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bounds.csv");
    let args = ["bounds", "--d", "1", "--m", "2"];
    let direct = stdout(&run(&args));
    let o = run(&["--out", path.to_str().unwrap(), "bounds", "--d", "1", "--m", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct);
    assert!(direct.starts_with("d,m,h,t,ln_lower"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["verify", "--suite", "payne", "--d", "2", "--m", "3", "--format", "json"];
    let one = run(&[&["--threads", "1"][..], &args].concat());
    let four = run(&[&["--threads", "4"][..], &args].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn overflow_is_marked() {
    let j = json(&["bounds", "--d", "2", "--m", "400"]);
    assert_eq!(j["rows"][0]["upper"], "overflow");
    assert!(j["rows"][0]["ln_upper"].as_f64().unwrap() > 36.0);
    assert!(!j["warnings"].as_array().unwrap().is_empty());
}

#[test]
fn golden_tables() {
    for (file, args) in [
        ("bounds_d1_m2.csv", &["bounds", "--d", "1", "--m", "2"][..]),
        ("oracle_interval_m1.csv", &["oracle", "--geometry", "interval", "--m", "1", "--t", "1", "--basis", "12", "--count", "3"][..]),
    ] {
        let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(file);
        let want = std::fs::read_to_string(path).unwrap();
        let got = stdout(&run(args));
        let parse = |s: &str| -> Vec<Vec<String>> {
            csv::Reader::from_reader(s.as_bytes())
                .records()
                .map(|r| r.unwrap().iter().map(String::from).collect())
                .collect()
        };
        assert_eq!(parse(&got), parse(&want), "{file}");
        assert_eq!(got, want, "{file}");
    }
}
