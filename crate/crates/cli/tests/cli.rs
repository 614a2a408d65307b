use std::io::Write;
use std::process::{Command, Output, Stdio};

fn mist(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mist"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

/// In-process run: (exit code, stdout, stderr).
fn run(args: &[&str], stdin: &str) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("mist").chain(args.iter().copied());
    let code = mist_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn generated(args: &[&str]) -> String {
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    let (code, out, _) = run(&full, "");
    assert_eq!(code, 0);
    out
}

fn value_of(stdout: &str) -> usize {
    stdout.lines().next().unwrap().strip_prefix("value ").unwrap().parse().unwrap()
}

#[test]
fn solve_cycle_from_file() {
    let dir = std::env::temp_dir().join(format!("mist-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c6.dimacs");
    std::fs::write(&path, generated(&["--kind", "cycle", "--n", "6"])).unwrap();
    let out = mist(&["solve", "--method", "dp", path.to_str().unwrap()], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "value 4");
    assert_eq!(lines.len(), 6);
    assert!(lines[1..].iter().all(|l| l.starts_with("tree ")));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn decide_above_ceiling_is_no() {
    let petersen = generated(&["--kind", "petersen"]);
    let out = mist(&["decide", "--k", "9"], &petersen);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "NO\n");

    let (code, out, _) = run(&["decide", "--k", "8"], &petersen);
    assert_eq!(code, 0);
    assert!(out.starts_with("YES\n"));
    assert_eq!(out.lines().count(), 10);
}

#[test]
fn analyze_prints_constants() {
    let out = mist(&["analyze"], "");
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for line in ["table1 3 2.9680", "table1 8 2.9996", "bound exact 1.8669", "bound param_simple 2.7321", "naive 2.8017", "kernel 3.4854"] {
        assert!(text.lines().any(|l| l == line), "missing `{line}` in\n{text}");
    }
    let (_, tsv, _) = run(&["analyze", "--output", "tsv"], "");
    assert!(tsv.lines().any(|l| l == "table1\t3\t2.9680"));
}

#[test]
fn analyze_accepts_weights() {
    let (code, out, _) = run(&["analyze", "--simple-w", "0.5"], "");
    assert_eq!(code, 0);
    assert!(!out.lines().any(|l| l == "bound param_simple 2.7321"));
    let (code, _, err) = run(&["analyze", "--kappa", "0.5,0.4"], "");
    assert_eq!(code, 2);
    assert!(err.contains("expected 3"));
}

#[test]
fn vertex_numbering_follows_input() {
    let (_, dimacs, _) = run(&["solve"], "p edge 3 2\ne 1 2\ne 2 3\n");
    assert_eq!(dimacs, "value 1\ntree 1 2\ntree 2 3\n");
    let (_, edges, _) = run(&["solve"], "0 1\n1 2\n");
    assert_eq!(edges, "value 1\ntree 0 1\ntree 1 2\n");
    let (_, forced, _) = run(&["solve", "--format", "edgelist"], "1 2\n0 1\n");
    assert_eq!(forced, "value 1\ntree 0 1\ntree 1 2\n");
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["--n", "13", "--seed", "5"], vec!["--kind", "random_degree_bounded", "--n", "9", "--seed", "2"]] {
        let g = generated(&args);
        assert_eq!(g, generated(&args));
        for method in ["auto", "dp", "oracle"] {
            let a = mist(&["solve", "--method", method], &g);
            let b = mist(&["solve", "--method", method], &g);
            assert_eq!(a.stdout, b.stdout);
            assert_eq!(a.status.code(), Some(0));
        }
    }
}

#[test]
fn dp_and_branch_agree() {
    for seed in 0..60 {
        let n = (4 + seed % 11).to_string();
        let g = generated(&["--n", &n, "--seed", &seed.to_string()]);
        let values: Vec<usize> = ["dp", "branch", "oracle"]
            .iter()
            .map(|m| {
                let (code, out, err) = run(&["solve", "--method", m], &g);
                assert_eq!(code, 0, "{err}");
                value_of(&out)
            })
            .collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "seed {seed}: {values:?}");
        let (_, oracle_out, _) = run(&["oracle"], &g);
        assert_eq!(value_of(&oracle_out), values[0]);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["solve", "/nonexistent/graph.txt"], "").0, 2);
    assert_eq!(run(&["solve"], "p edge 2 1\ne 1 1\n").0, 2);
    assert_eq!(run(&["decide"], "0 1\n").0, 2);
    assert_eq!(run(&["frobnicate"], "").0, 2);
    let (code, _, err) = run(&["solve"], "0 1\n2 3\n");
    assert_eq!(code, 3);
    assert!(err.contains("not connected"));
    let star4 = "0 1\n0 2\n0 3\n0 4\n";
    assert_eq!(run(&["solve", "--method", "branch"], star4).0, 3);
    assert_eq!(run(&["decide", "--k", "1"], star4).0, 3);
    let (code, out, _) = run(&["solve"], star4);
    assert_eq!((code, value_of(&out)), (0, 1));
    let (code, out, _) = run(&["--help"], "");
    assert_eq!(code, 0);
    assert!(out.contains("solve"));
}

#[test]
fn bench_emits_tsv() {
    let (code, out, _) = run(&["bench", "--min-n", "6", "--max-n", "8", "--count", "2", "--methods", "branch,dp,oracle"], "");
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n\tseed\tmethod\tvalue\tnodes\tms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split('\t').collect()).collect();
    assert_eq!(rows.len(), 2 * 2 * 3);
    assert!(rows.iter().all(|r| r.len() == 6));
    for group in rows.chunks(3) {
        assert!(group.iter().all(|r| r[3] == group[0][3]));
    }
    assert_eq!(run(&["bench", "--min-n", "9", "--max-n", "8"], "").0, 2);
}

#[test]
fn audit_reports_and_exits() {
    let c8 = generated(&["--kind", "cycle", "--n", "8"]);
    let (code, out, _) = run(&["audit"], &c8);
    assert_eq!(code, 0);
    assert!(out.contains("value 6\n") && out.contains("violations 0\n"));

    // A graph where a single Bridge application raises the parameterized
    // measure.
    let g = "0 1\n1 2\n1 3\n3 5\n0 5\n2 4\n4 6\n4 7\n6 7\n";
    let (_, max_mode, _) = run(&["audit"], g);
    assert!(max_mode.contains("violations 0\n"));
    let (code, out, _) = run(&["audit", "--k", "6"], g);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("KappaIncrease"));
}
