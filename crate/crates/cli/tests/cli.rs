use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_assoc-color"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn sigma_of_short_word_is_unbalanced_with_three_edges() {
    let o = run(&["sigma", "0 e 1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next(), Some("unbalanced"));
    assert!(s.contains("edges 3"));
}

#[test]
fn sigma_dot_output_is_a_graph() {
    let o = run(&["--dot", "sigma", "0 e 1"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("graph "));
}

#[test]
fn single_rotation_pair_has_one_palindromic_vector() {
    let o = run(&["color", "pair", "((..).)", "(.(..))"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let vectors: Vec<&str> = s.lines().collect();
    assert_eq!(vectors.len(), 1);
    let v = vectors[0].as_bytes();
    assert_eq!(v.len(), 3);
    assert_eq!(v[0], v[2]);
    assert_ne!(v[0], v[1]);
}

#[test]
fn pair_csv_has_header() {
    let o = run(&["--csv", "color", "pair", "((..).)", "(.(..))"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().next(), Some("pair,count,vectors"));
    assert!(s.lines().nth(1).unwrap().contains(",1,"));
}

#[test]
fn classify_reports_class_name() {
    let o = run(&["color", "classify", "1212"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(
        ["positive-rigid", "negative-rigid", "flexible", "unacceptable"]
            .iter()
            .any(|c| s.trim() == *c),
        "{s}"
    );
}

#[test]
fn trichotomy_suite_passes() {
    let o = run(&["verify", "--suite", "trichotomy", "--max-len", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("pass"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["color", "classify", "9x"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["mi-search", "--n", "30"]).status.code(), Some(2));
}

#[test]
fn biwheel_chromatic_matches_closed_form() {
    let o = run(&["map", "chromatic", "--family", "W", "--n", "10"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("divided by 24: 44"));
    assert!(s.contains("closed form: 44"));
}

#[test]
fn uncolorable_fixture_has_no_colorings() {
    let o = run(&["map", "v-check", "noColorV"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("colorings 0"));
}

#[test]
fn rigid_counts_table() {
    let o = run(&["counts", "--kind", "rigid", "--n", "6", "--table"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let values: Vec<&str> = s.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    assert_eq!(values, ["1", "2", "5", "10", "21", "42"]);
}

#[test]
fn search_csv_and_file_agree() {
    let dir = std::env::temp_dir().join(format!("assoc-color-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.csv");
    let o = run(&["--csv", "mi-search", "--n", "7", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file, stdout(&o));
    assert_eq!(file.lines().next(), Some("n,rank,count,witness_d,witness_r"));
    assert!(file.lines().nth(1).unwrap().starts_with("7,1,5,"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_does_not_depend_on_job_count() {
    for args in [
        &["mi-search", "--n", "7"][..],
        &["verify", "--suite", "balance", "--max-len", "4"][..],
    ] {
        let one = run(&[&["--jobs", "1"], args].concat());
        let four = run(&[&["--jobs", "4"], args].concat());
        assert!(one.status.success() && four.status.success());
        assert_eq!(one.stdout, four.stdout);
    }
}

#[test]
fn zero_set_sweep_emits_csv_rows() {
    let o = run(&["explore", "zero-sets", "--max-n", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert_eq!(s.lines().count(), 5);
    assert_eq!(s.lines().nth(4), Some("4,4,2,2,11121,11112"));
}

#[test]
fn graph_aliases_match() {
    assert_eq!(run(&["graph", "11211"]).stdout, run(&["color-graph", "11211"]).stdout);
    assert_eq!(run(&["sigma", "0 e"]).stdout, run(&["sign-structure", "0 e"]).stdout);
}
