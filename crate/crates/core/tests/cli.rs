use knotscheme::cli::{run, Outcome, EXIT_INPUT, EXIT_USAGE};
use serde_json::Value;

fn knotscheme(args: &[&str]) -> Outcome {
    run(std::iter::once("knotscheme").chain(args.iter().copied()))
}

fn write_scheme(dir: &std::path::Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    let out = knotscheme(&full);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let path = dir.join(name);
    std::fs::write(&path, out.stdout).unwrap();
    path.to_string_lossy().into_owned()
}

fn scratch_dir(tag: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("knotscheme-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn generate_validate_invariants_roundtrip() {
    let dir = scratch_dir("roundtrip");
    for (k, gamma, i) in [("4", 0u32, 0u32), ("4", 1, 0), ("4", 2, 1), ("5", 0, 0), ("5", 3, 0)] {
        let (g, idx) = (gamma.to_string(), i.to_string());
        let path = write_scheme(&dir, "s.scheme", &["--k", k, "--gamma", &g, "--i", &idx]);
        let v = knotscheme(&["--format", "json", "validate", &path]);
        assert_eq!(v.code, 0, "{}", v.stdout);
        let inv: Value = serde_json::from_str(&knotscheme(&["--format", "json", "invariants", &path]).stdout).unwrap();
        let (b, index) = if k == "4" { (2 * gamma + 1, 1) } else { (2 * gamma, 0) };
        assert_eq!(inv["b"], b);
        assert_eq!(inv["index"], index);
    }
}

#[test]
fn compare_exit_codes_follow_verdicts() {
    let dir = scratch_dir("compare");
    let a = write_scheme(&dir, "a.scheme", &["--k", "4", "--gamma", "1", "--i", "1"]);
    let b = write_scheme(&dir, "b.scheme", &["--k", "4", "--gamma", "1", "--i", "2"]);
    let p = write_scheme(&dir, "p.scheme", &["--k", "4", "--gamma", "1", "--i", "1", "--perturb", "4", "--seed", "9"]);
    let out = knotscheme(&["--format", "json", "compare", &a, &b]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"], "NONEQUIVALENT");
    assert_eq!(knotscheme(&["compare", &a, &p]).code, 2);
    let u = write_scheme(&dir, "u.scheme", &["--k", "4", "--gamma", "0", "--i", "3"]);
    let w = write_scheme(&dir, "w.scheme", &["--k", "4", "--gamma", "0"]);
    assert_eq!(knotscheme(&["compare", &u, &w]).code, 0);
}

#[test]
fn json_output_is_stable() {
    let args = ["--format", "json", "generate", "--k", "4", "--gamma", "2", "--i", "1", "--perturb", "5", "--seed", "4"];
    assert_eq!(knotscheme(&args), knotscheme(&args));
}

#[test]
fn jones_and_simplify_on_inline_codes() {
    let out = knotscheme(&["jones", "1o+ 2u+ 3o+ 1u+ 2o+ 3u+"]);
    assert_eq!(out.stdout, "-1*A^-16 + 1*A^-12 + 1*A^-4\n");
    let dir = scratch_dir("files");
    let path = dir.join("kink.gauss");
    std::fs::write(&path, "1o+ 1u+\n").unwrap();
    let out = knotscheme(&["--format", "json", "simplify", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["crossings_after"], 0);
    assert_eq!(out.code, 0);
}

#[test]
fn usage_and_input_errors() {
    assert_eq!(knotscheme(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(knotscheme(&["generate", "--k", "7"]).code, EXIT_USAGE);
    assert_eq!(knotscheme(&["jones", "missing.gauss"]).code, EXIT_INPUT);
    assert_eq!(knotscheme(&["jones", "1o+ 2o+ 1u+ 2u+"]).code, EXIT_INPUT);
    assert_eq!(knotscheme(&["validate", "b=2\n|1+"]).code, EXIT_INPUT);
    let forged = r#"{"ambient":"S2xS1","annular_code":"b=1\n|1+","cut_signs":[-1]}"#;
    assert_eq!(knotscheme(&["validate", forged]).code, EXIT_INPUT);
    assert_eq!(knotscheme(&["--help"]).code, 0);
}

#[test]
fn budget_exhaustion_exits_two() {
    let out = knotscheme(&["--max-crossings", "2", "jones", "1o+ 2u+ 3o+ 1u+ 2o+ 3u+"]);
    assert_eq!(out.code, 2);
    let out = knotscheme(&["--bfs-budget", "5", "simplify", "1o+ 2u+ 3o+ 1u+ 2o+ 3u+"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("INCONCLUSIVE"));
}
