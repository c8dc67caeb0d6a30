use std::path::PathBuf;
use std::process::{Command, Output};

fn kolbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kolbound")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("kolbound-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn report_table_csv() {
    let out = kolbound(&["report", "--csv"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "d,set_size,N,n,epsilon,decimal,backend\n\
         1,2,200,3,1/6,0.1666667,automaton\n\
         2,6,200,3,1/6,0.1666667,automaton\n\
         3,14,200,9,1/18,0.0555556,automaton\n\
         4,30,500,498,17/498,0.0341365,automaton\n\
         5,62,800,762,17/762,0.0223097,automaton\n\
         6,126,600,555,5/222,0.0225225,automaton\n"
    );
}

#[test]
fn output_is_identical_across_thread_counts() {
    let one = kolbound(&["--threads", "1", "report", "--json", "--depths", "1-5"]);
    let four = kolbound(&["--threads", "4", "report", "--json", "--depths", "1-5"]);
    assert_eq!(one.stdout, four.stdout);
    let s1 = kolbound(&["--threads", "1", "series", "--depth", "3", "--terms", "40", "--json"]);
    let s4 = kolbound(&["--threads", "4", "series", "--depth", "3", "--terms", "40", "--json"]);
    assert_eq!(s1.stdout, s4.stdout);
}

#[test]
fn series_backend_cost_ceiling() {
    let refused = kolbound(&["report", "--backend", "gj-series", "--depths", "6"]);
    assert_eq!(refused.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&refused.stderr).contains("--force"));
    let small = kolbound(&["report", "--backend", "gj-series", "--depths", "1-3", "--csv"]);
    assert!(small.status.success());
    assert!(stdout(&small).contains("3,14,200,9,1/18,0.0555556,gj-series"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(kolbound(&["report", "--depths", "7"]).status.code(), Some(2));
    assert_eq!(kolbound(&["bogus"]).status.code(), Some(2));
    let bad = scratch("bad.txt", "12x\n");
    assert_eq!(kolbound(&["gf", "--words", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_quick_and_fault() {
    let ok = kolbound(&["verify"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).lines().all(|l| l.starts_with("PASS")));
    let bad = kolbound(&["verify", "--inject-fault", "gf-S1"]);
    assert_eq!(bad.status.code(), Some(1));
    let text = stdout(&bad);
    assert!(text.contains("FAIL A1"));
    assert!(text.contains("witness: gf-S1"));
}

#[test]
fn words_file_gf_and_bounds() {
    let path = scratch("s1.txt", "# S_1\n111\n222\n");
    let p = path.to_str().unwrap();
    let gf = stdout(&kolbound(&["gf", "--words", p]));
    assert!(gf.contains("denominator: 1 - x1*x2*t^2 - x1*x2^2*t^3 - x1^2*x2*t^3 - x1^2*x2^2*t^4"));
    let b = stdout(&kolbound(&["bounds", "--words", p, "--json"]));
    let v: serde_json::Value = serde_json::from_str(&b).unwrap();
    assert_eq!(v["epsilon"], "1/6");
    assert_eq!(v["rigor"], "rigorous");
    let text = stdout(&kolbound(&["bounds", "--depth", "5", "--profile-terms", "800"]));
    assert!(text.contains("17/762 ~ 0.0223097"));
    assert!(text.contains("assuming"));
}

#[test]
fn profile_then_quasifit() {
    let profile = kolbound(&["profile", "--depth", "4", "--terms", "500", "--json"]);
    assert!(profile.status.success());
    let path = scratch("p4.json", &stdout(&profile));
    let fit = kolbound(&["quasifit", "--profile", path.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&fit)).unwrap();
    assert_eq!(v["modulus"], 15);
    assert_eq!(v["slope"], 7);
    assert_eq!(v["limit"], "7/15");
    assert_eq!(v["epsilon"], "1/30");
    assert_eq!(v["maxima_formula"], "(7 m + 1)/(15 m + 3)");
    assert_eq!(v["attained"], false);
    let consts: Vec<i64> = serde_json::from_value(v["constants"].clone()).unwrap();
    assert_eq!(consts, [-1, -1, 0, 1, 1, 1, 2, 2, 2, 3, 4, 4, 5, 5, 5]);
}

#[test]
fn profile_csv_and_small_commands() {
    let csv = stdout(&kolbound(&["profile", "--depth", "1", "--terms", "3", "--csv"]));
    assert_eq!(csv, "n,min_ones,max_ones\n0,0,0\n1,0,1\n2,0,2\n3,1,2\n");
    assert_eq!(stdout(&kolbound(&["kolakoski", "--n", "20"])), "22112122122112112212\n");
    assert_eq!(stdout(&kolbound(&["avoided", "--d", "1"])), "111\n222\n");
    let series = stdout(&kolbound(&["series", "--depth", "1", "--terms", "3"]));
    assert_eq!(series.lines().last(), Some("p_3 = 3*x1*x2^2*t^3 + 3*x1^2*x2*t^3"));
}
