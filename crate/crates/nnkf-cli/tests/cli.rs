use nnkf::io::{InstanceFile, ResultFile};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join(name)
}

fn nnkf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nnkf")).args(args).output().expect("binary runs")
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = example(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    nnkf(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_instance(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nnkf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn nonneg_formula_running_example_verified() {
    let o = run_on("nonneg-formula", "sec2.json", &["--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("total: 28"), "{out}");
    assert!(out.contains("verified"), "{out}");
}

#[test]
fn system_asymptotics_planar_table() {
    let o = run_on("system-asymptotics", "sec36_2d.json", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = ResultFile::parse(&stdout(&o)).unwrap();
    let rows: Vec<(String, String)> =
        r.records.iter().map(|x| (x.covector.clone().unwrap().join(","), x.values["multiplicity"].clone())).collect();
    let want = [("1/2,3/2", "2"), ("1,1", "1"), ("1,2", "3"), ("2,1", "1")];
    assert_eq!(rows, want.map(|(a, b)| (a.to_string(), b.to_string())).to_vec());
}

#[test]
fn empty_support_is_an_input_error() {
    let o = run_on("newton-number", "empty.json", &[]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("empty support"));
}

#[test]
fn non_convenient_input_is_out_of_scope() {
    let p = temp_instance("nc.json", r#"{"dim": 2, "f-points": [[3, 1]], "g-points": [[2, 1], [3, 1]]}"#);
    let o = nnkf(&["nonneg-formula", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = run_on("nonneg-formula", "sec83.json", &["--max-dim", "3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_files_report_lines() {
    let p = temp_instance("bad.json", "{\n  \"dim\": 2,\n  \"points\": [\n    [1, 0],\n    [0, 1, 2]\n  ]\n}\n");
    let o = nnkf(&["newton-number", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 5"), "{}", stderr(&o));
    let p = temp_instance("neg.json", "{\"dim\": 1,\n\"points\": [[-2]]}");
    let o = nnkf(&["newton-number", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = nnkf(&["no-such-command", "x.json"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nnkf(&["newton-number", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn golden_instances_round_trip_byte_identically() {
    let mut count = 0;
    for entry in std::fs::read_dir(example("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let (file, inst) = InstanceFile::parse(&text).unwrap();
        let again = file.to_json();
        assert_eq!(again, text, "{}", path.display());
        let (file2, inst2) = InstanceFile::parse(&again).unwrap();
        assert_eq!((file2, inst2), (file, inst));
        count += 1;
    }
    assert!(count >= 10);
}

#[test]
fn json_results_round_trip_and_are_deterministic() {
    let cases: [(&str, &str, &[&str]); 8] = [
        ("newton-number", "sec81.json", &[]),
        ("mixed-volume", "sec54.json", &[]),
        ("system-asymptotics", "sec36_3d.json", &[]),
        ("critical-asymptotics", "sec81.json", &["--verify", "--keep-support"]),
        ("nonneg-formula", "sec2.json", &["--verify"]),
        ("semi-interlaced-mv", "sec24.json", &["--verify"]),
        ("monotonic-check", "sec84.json", &["--verify"]),
        ("first-jump", "sec46.json", &["--verify"]),
    ];
    for (cmd, file, extra) in cases {
        let mut args = extra.to_vec();
        args.extend(["--format", "json"]);
        let a = run_on(cmd, file, &args);
        assert_eq!(a.status.code(), Some(0), "{cmd} {file}: {}", stderr(&a));
        let b = run_on(cmd, file, &args);
        assert_eq!(a.stdout, b.stdout, "{cmd} is not deterministic");
        let text = stdout(&a);
        let parsed = ResultFile::parse(&text).unwrap();
        assert_eq!(parsed.to_json(), text, "{cmd}");
        if let Some(v) = &parsed.verification {
            assert!(v.matched, "{cmd} {file}");
        }
    }
}

#[test]
fn critical_asymptotics_render_infinity() {
    let o = run_on("critical-asymptotics", "sec81.json", &["--keep-support", "--format", "json"]);
    let r = ResultFile::parse(&stdout(&o)).unwrap();
    assert_eq!(r.totals["total"], "29");
    assert!(r.records.iter().any(|x| x.covector.as_ref().unwrap() == &["inf", "1/2", "inf"]));
    assert!(!stdout(&o).contains("\"0\""));
}

#[test]
fn monotonic_check_reports_parallel_segments() {
    for file in ["sec83.json", "sec84.json"] {
        let o = run_on("monotonic-check", file, &["--format", "json"]);
        let r = ResultFile::parse(&stdout(&o)).unwrap();
        assert_eq!(r.totals["verdict"], "equal");
        assert_eq!(r.totals["total"], "0");
        assert!(r.records.iter().any(|x| x.values.get("mechanism").map(String::as_str) == Some("parallel-segments")));
    }
}

#[test]
fn first_jump_of_a_plane_curve() {
    let o = run_on("first-jump", "sec46.json", &["--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("base: 33"));
}
