use confluent_cli::{run, EXIT_DIMENSION, EXIT_INPUT, EXIT_OK, EXIT_VERIFY};

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn invoke(args: &[&str], stdin: &str) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("confluent").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Outcome {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

const K22: &str = "a c\na d\nb c\nb d\n";
const S3: &str = "a0 b1\na0 b2\na1 b0\na1 b2\na2 b0\na2 b1\n";

#[test]
fn k22_json_reports_one_junction() {
    let o = invoke(&["--emit", "json", "-"], K22);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["stats"]["junctions"], 1);
    assert_eq!(v["stats"]["segments"], 8);
    assert_eq!(v["stats"]["gridSide"], 9);
}

#[test]
fn standard_example_exits_two() {
    let o = invoke(&["-"], S3);
    assert_eq!(o.code, EXIT_DIMENSION);
    assert!(o.stdout.is_empty());
    assert!(o.stderr.contains("if and only if dim(P) <= 2"), "{}", o.stderr);
}

#[test]
fn series_parallel_chain_svg() {
    let o = invoke(&["--input-format", "sp", "-"], "a;b;c");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout.matches(r##"fill="#ffffff""##).count(), 3);
    assert_eq!(o.stdout.matches(r##"fill="#333333"/>"##).count(), 0);
    assert_eq!(o.stdout.matches("<path").count(), 2);
}

#[test]
fn realizer_input_and_csv_stats() {
    let o = invoke(&["--input-format", "realizer", "--emit", "csv-stats", "-"], "a b c d\nb a d c\n");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, "n,junctions,segments,grid_side\n4,1,8,9\n");
}

#[test]
fn verify_passes_on_k22_and_series_parallel() {
    assert_eq!(invoke(&["--verify", "-"], K22).code, EXIT_OK);
    let o = invoke(&["--verify", "--input-format", "sp", "-"], "(a|b);(c|(d;e))");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
}

#[test]
fn verify_flags_transitive_track() {
    let o = invoke(
        &["--verify", "--input-format", "realizer", "-"],
        "e0 e1 e2 e3 e4\ne2 e0 e4 e1 e3\n",
    );
    assert_eq!(o.code, EXIT_VERIFY);
    assert!(o.stderr.contains("e0 -> e3"), "{}", o.stderr);
}

#[test]
fn verify_warns_above_oracle_limit() {
    let chain: String = (0..25).map(|i| format!("x{i} x{}\n", i + 1)).collect();
    let o = invoke(&["--verify", "--emit", "csv-stats", "-"], &chain);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stderr.contains("warning"), "{}", o.stderr);
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(invoke(&["-"], "a b\nb a\n").code, EXIT_INPUT);
    assert_eq!(invoke(&["--input-format", "sp", "-"], "a;;b").code, EXIT_INPUT);
    assert_eq!(invoke(&["--input-format", "realizer", "-"], "a b\na c\n").code, EXIT_INPUT);
    assert_eq!(invoke(&["/nonexistent/input.txt"], "").code, EXIT_INPUT);
    assert_eq!(invoke(&["--bezier-offset", "1.5", "-"], K22).code, EXIT_INPUT);
    assert_eq!(invoke(&["--emit", "png", "-"], K22).code, EXIT_INPUT);
    assert_eq!(invoke(&[], "").code, EXIT_INPUT);
}

#[test]
fn help_and_version_exit_zero() {
    let o = invoke(&["--help"], "");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("--input-format"));
    assert_eq!(invoke(&["--version"], "").code, EXIT_OK);
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k22.svg");
    let p = path.to_str().unwrap();
    let o = invoke(&["--out", p, "--show-invisible", "-"], K22);
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.is_empty());
    let first = std::fs::read_to_string(&path).unwrap();
    assert_eq!(first.matches("<path").count(), 8);
    invoke(&["--out", p, "--show-invisible", "-"], K22);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);

    let input = dir.path().join("k22.txt");
    std::fs::write(&input, K22).unwrap();
    let from_file = invoke(&[input.to_str().unwrap()], "");
    assert_eq!(from_file.stdout, invoke(&["-"], K22).stdout);
}

#[test]
fn bench_tables() {
    let o = invoke(&["--bench", "1,2"], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "n,junctions,segments,ms_phase1,ms_phase2,ms_phase3,ms_total");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("1,2,"));
    let random = invoke(&["--bench", "8", "--seed", "5"], "");
    assert_eq!(random.code, EXIT_OK);
    assert!(random.stdout.lines().nth(1).unwrap().starts_with("8,"));
    assert_eq!(invoke(&["--bench", "0"], "").code, EXIT_INPUT);
}
