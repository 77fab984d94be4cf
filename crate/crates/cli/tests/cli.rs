use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn gossipnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gossipnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let header = r.headers().unwrap().iter().map(str::to_owned).collect();
    let rows = r
        .records()
        .map(|rec| rec.unwrap().iter().map(str::to_owned).collect())
        .collect();
    (header, rows)
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&gossipnet(&["--help"])), 0);
    assert_eq!(code(&gossipnet(&["--version"])), 0);
    assert_eq!(code(&gossipnet(&["analyze", "--help"])), 0);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&gossipnet(&[])), 1);
    assert_eq!(code(&gossipnet(&["analyze"])), 1);
    assert_eq!(code(&gossipnet(&["analyze", "--input", "x", "--model", "bogus"])), 1);
    let tmp = tempfile::tempdir().unwrap();
    let out = gossipnet(&["generate", "--generator", "ws", "--k", "3", "--out", p(tmp.path())]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("even"), "{out:?}");
}

#[test]
fn input_errors_exit_two() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("missing.edges");
    assert_eq!(code(&gossipnet(&["analyze", "--input", p(&missing)])), 2);

    let bad = tmp.path().join("bad.edges");
    fs::write(&bad, "a b 1\nb c -2\n").unwrap();
    let out = gossipnet(&["analyze", "--input", p(&bad), "--out", p(tmp.path())]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let empty = tmp.path().join("empty.edges");
    fs::write(&empty, "# nothing here\n").unwrap();
    let out = gossipnet(&["analyze", "--input", p(&empty), "--out", p(tmp.path())]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("no edges"));
}

#[test]
fn analyze_writes_summary_curves_and_labels() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("g.edges");
    // Triangle plus a separate edge: two distinct degrees, too few for a
    // critical degree.
    fs::write(&input, "a,b,1\nb,c,1\nc,a,2\nd,e,1\n").unwrap();
    let out = tmp.path().join("out");
    assert_eq!(
        code(&gossipnet(&["analyze", "--input", p(&input), "--out", p(&out)])),
        0
    );

    let (header, rows) = read_csv(&out.join("summary.csv"));
    assert_eq!(
        &header[..12],
        [
            "N",
            "M",
            "k0",
            "k0_w",
            "k0w_over_k0",
            "CC",
            "sigma",
            "beta",
            "sigma_over_cc",
            "beta_over_cc",
            "beta_over_sigma",
            "beta_over_sigma_cc"
        ]
    );
    let row = &rows[0];
    assert_eq!((row[0].as_str(), row[1].as_str()), ("5", "4"));
    assert_eq!(row[2], "", "absent k0 is an empty cell");
    assert_eq!(row[4], "");

    let json: serde_json::Value = serde_json::from_slice(&fs::read(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert!(json["summary"]["k0"].is_null());
    assert_eq!(json["summary"]["N"], 5);

    let (header, rows) = read_csv(&out.join("curves.csv"));
    assert_eq!(header[0], "k");
    let degrees: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(degrees, ["1", "2"]);

    let (_, labels) = read_csv(&out.join("labels.csv"));
    assert_eq!(labels[3], ["3", "d"]);
}

#[test]
fn analyze_json_only() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("g.edges");
    fs::write(&input, "a b 1\nb c 1\nc a 1\n").unwrap();
    let out = tmp.path().join("out");
    let o = gossipnet(&[
        "analyze",
        "--input",
        p(&input),
        "--out",
        p(&out),
        "--format",
        "json",
        "--model",
        "unweighted",
    ]);
    assert_eq!(code(&o), 0);
    assert!(!out.join("summary.csv").exists());
    let json: serde_json::Value = serde_json::from_slice(&fs::read(out.join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["summary"]["sigma"], 1.0);
    assert!(json["summary"]["beta"].is_null());
}

#[test]
fn generate_writes_realizations_and_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("gen");
    let o = gossipnet(&[
        "generate",
        "--generator",
        "ba",
        "--realizations",
        "3",
        "--seed",
        "9",
        "--out",
        p(&out),
    ]);
    assert_eq!(code(&o), 0, "{o:?}");
    let manifest: serde_json::Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    let files = manifest["realizations"].as_array().unwrap();
    assert_eq!(files.len(), 3);
    assert_eq!(manifest["config"]["model"], "ba");
    for f in files {
        assert_eq!(f["M"], 805);
        let name = f["file"].as_str().unwrap();
        let edges = fs::read_to_string(out.join(name)).unwrap();
        assert_eq!(edges.lines().filter(|l| !l.starts_with('#')).count(), 805);
    }
    assert!(out.join("realization_002.edges").exists());
}

#[test]
fn generated_files_analyze_like_the_ensemble() {
    let tmp = tempfile::tempdir().unwrap();
    let gen = tmp.path().join("gen");
    let sweep = tmp.path().join("sweep");
    let common = ["--generator", "er", "--realizations", "2", "--seed", "3"];
    assert_eq!(
        code(&gossipnet(&[&["generate", "--out", p(&gen)][..], &common[..]].concat())),
        0
    );
    assert_eq!(
        code(&gossipnet(&[&["sweep", "--out", p(&sweep)][..], &common[..]].concat())),
        0
    );

    let (header, per_realization) = read_csv(&sweep.join("realizations.csv"));
    let sigma_col = header.iter().position(|h| h == "sigma").unwrap();
    for (i, row) in per_realization.iter().enumerate() {
        let out = tmp.path().join(format!("a{i}"));
        let input = gen.join(format!("realization_{i:03}.edges"));
        assert_eq!(
            code(&gossipnet(&["analyze", "--input", p(&input), "--out", p(&out)])),
            0
        );
        let (h, rows) = read_csv(&out.join("summary.csv"));
        let col = h.iter().position(|x| x == "sigma").unwrap();
        // Node order differs after the round trip, so summation order does too.
        let (a, b): (f64, f64) = (rows[0][col].parse().unwrap(), row[sigma_col].parse().unwrap());
        assert!((a - b).abs() <= 1e-12 * b, "{a} vs {b}");
    }
}

#[test]
fn sweep_outputs() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("sweep");
    let o = gossipnet(&["sweep", "--generator", "ws", "--realizations", "4", "--out", p(&out)]);
    assert_eq!(code(&o), 0);
    assert!(!o.stderr.is_empty(), "progress goes to stderr");
    let (header, rows) = read_csv(&out.join("ensemble.csv"));
    assert_eq!(header, ["field", "mean", "stddev", "count"]);
    let m = rows.iter().find(|r| r[0] == "M").unwrap();
    assert_eq!((m[1].as_str(), m[2].as_str(), m[3].as_str()), ("400", "0", "4"));
    let (_, rows) = read_csv(&out.join("realizations.csv"));
    assert_eq!(rows.len(), 4);
    let json: serde_json::Value = serde_json::from_slice(&fs::read(out.join("ensemble.json")).unwrap()).unwrap();
    assert_eq!(json["ensemble"]["seeds"].as_array().unwrap().len(), 4);
    assert!(out.join("mean_curves.csv").exists());
}

#[test]
fn sweep_reads_config_file_with_overrides() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("er.toml");
    fs::write(&cfg, "model = \"er\"\nN = 50\np = 0.1\nrealizations = 3\nseed = 1\n").unwrap();
    let out = tmp.path().join("s");
    let o = gossipnet(&["sweep", "--config", p(&cfg), "--realizations", "2", "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{o:?}");
    let (header, rows) = read_csv(&out.join("realizations.csv"));
    let n = header.iter().position(|h| h == "N").unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r[n] == "50"));

    fs::write(&cfg, "model = \"er\"\nbogus = 1\n").unwrap();
    assert_eq!(code(&gossipnet(&["sweep", "--config", p(&cfg), "--out", p(&out)])), 2);
}

#[test]
fn project_to_stdout_and_file() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("scenes.txt");
    fs::write(&input, "s1 A\ns1 B\ns1 C\ns2 A\ns2 B\n").unwrap();

    let o = gossipnet(&["project", "--input", p(&input)]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "A B 2\nA C 1\nB C 1\n");

    let out = tmp.path().join("proj.edges");
    let o = gossipnet(&["project", "--input", p(&input), "--scheme", "newman", "--out", p(&out)]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&out).unwrap(), "A B 1.5\nA C 0.5\nB C 0.5\n");
    let (_, labels) = read_csv(&tmp.path().join("proj.edges.labels.csv"));
    assert_eq!(labels, [["0", "A"], ["1", "B"], ["2", "C"]]);
}

#[test]
fn project_empty_input_warns() {
    let tmp = tempfile::tempdir().unwrap();
    let input = tmp.path().join("empty.txt");
    fs::write(&input, "").unwrap();
    let o = gossipnet(&["project", "--input", p(&input)]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}
