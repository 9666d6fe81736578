use std::io::Write;
use std::process::{Command, Output, Stdio};

fn tailfill(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tailfill"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn run(args: &[&str], stdin: &str) -> (i32, String) {
    let out = tailfill(args, stdin);
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

const STAR: &str = "4 3\n0 1\n0 2\n0 3\n";
const P3: &str = "3 2\n0 1\n1 2\n";
const C4: &str = "4 4\n0 1\n1 2\n2 3\n0 3\n";

#[test]
fn tail_on_a_star_leaf() {
    assert_eq!(run(&["tail", "--class", "p4sparse", "--u", "1", "-"], STAR), (0, "fill 1\n0 4\n".into()));
}

#[test]
fn tail_on_an_edge() {
    assert_eq!(run(&["tail", "--class", "split", "--u", "0", "-"], "2 1\n0 1\n"), (0, "fill 0\n".into()));
}

#[test]
fn tail_modes() {
    assert_eq!(run(&["tail", "--class", "threshold", "--u", "0", "-"], P3).1, "fill 1\n1 3\n");
    assert_eq!(run(&["tail", "--class", "qt", "--u", "0", "--mode", "verbatim", "-"], P3).1, "fill 2\n0 2\n1 3\n");
    assert_eq!(run(&["tail", "--class", "qt", "--u", "0", "--mode", "corrected", "-"], P3).1, "fill 1\n1 3\n");
}

#[test]
fn tail_errors() {
    let (code, out) = run(&["tail", "--class", "qt", "--u", "0", "-"], C4);
    assert_eq!(code, 3);
    assert!(out.contains("C4"), "{out}");
    assert_eq!(run(&["tail", "--class", "qt", "--u", "3", "-"], P3).0, 4);
    assert_eq!(run(&["tail", "--class", "qt", "--u", "0", "-"], "3 2\n0 1\n").0, 2);
    assert_eq!(run(&["tail", "--class", "qt", "--u", "0", "--frobnicate", "-"], P3).0, 2);
    assert_eq!(run(&["tail", "--class", "cograph", "--u", "0", "-"], P3).0, 2);
}

#[test]
fn tail_output_replays_through_the_oracle() {
    for (class, seed) in [("split", "4"), ("threshold", "5"), ("qt", "6"), ("p4sparse", "7")] {
        let (_, graph) = run(&["gen", "--class", class, "--n", "9", "--seed", seed], "");
        let (code, report) = run(&["tail", "--class", class, "--u", "2", "-"], &graph);
        assert_eq!(code, 0);
        let mut lines = graph.lines();
        let (n, m) = lines.next().unwrap().split_once(' ').unwrap();
        let fills: Vec<&str> = report.lines().skip(1).collect();
        let mut replay = format!("{} {}\n", n.parse::<usize>().unwrap() + 1, m.parse::<usize>().unwrap() + fills.len() + 1);
        lines.chain(fills).chain([format!("2 {n}").as_str()]).for_each(|l| replay += &format!("{l}\n"));
        assert_eq!(run(&["oracle", "--class", class, "-"], &replay), (0, format!("member {class}\n")), "{class}");
    }
}

#[test]
fn oracle_commands() {
    assert_eq!(run(&["oracle", "--class", "p4sparse", "--u", "1", "-"], STAR), (0, "fill 1\n0 4\n".into()));
    let (code, out) = run(&["oracle", "--class", "qt", "-"], C4);
    assert_eq!((code, out.as_str()), (1, "not qt: vertices 0 1 2 3\n"));
    assert_eq!(run(&["oracle", "--class", "qt", "--max-vertices", "4", "--u", "0", "-"], C4).0, 2);
}

#[test]
fn recognize_and_tree() {
    assert_eq!(run(&["recognize", "--class", "split", "-"], STAR), (0, "K:{0 1} S:{2 3}\n".into()));
    assert_eq!(run(&["recognize", "--class", "threshold", "-"], C4).0, 1);
    assert_eq!(run(&["tree", "--class", "p4sparse", "-"], C4), (0, "(1 (0 0 2) (0 1 3))\n".into()));
    assert_eq!(run(&["tree", "--class", "threshold", "-"], C4).0, 3);
}

#[test]
fn gen_is_deterministic_and_parses() {
    let a = run(&["gen", "--class", "p4sparse", "--n", "12", "--seed", "3", "--certificate"], "");
    let b = run(&["gen", "--class", "p4sparse", "--n", "12", "--seed", "3", "--certificate"], "");
    assert_eq!(a, b);
    assert!(a.1.starts_with("# ("));
    assert_eq!(run(&["recognize", "--class", "p4sparse", "-"], &a.1).0, 0);
    assert_eq!(run(&["gen", "--class", "qt", "--n", "0"], "").0, 2);
}

#[test]
fn fuzz_commands() {
    let (code, out) = run(&["fuzz", "--class", "split", "--n", "8", "--iters", "500", "--seed", "1"], "");
    assert_eq!((code, out.as_str()), (0, "checked 500\nsplit 500\n"));
    let (code, out) = run(&["fuzz", "--class", "threshold", "--mode", "verbatim", "--n", "5", "--iters", "200", "--seed", "1"], "");
    assert_eq!(code, 1);
    assert!(out.starts_with("mismatch"), "{out}");
    assert_eq!(run(&["fuzz", "--class", "qt", "--n", "5", "--iters", "0"], ""), (0, "checked 0\n".into()));
    assert_eq!(run(&["fuzz", "--class", "qt", "--n", "40", "--iters", "1"], "").0, 2);
}

#[test]
fn bench_commands() {
    let (code, out) = run(&["bench", "--class", "threshold", "--sizes", "256", "--runs", "1"], "");
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().nth(1).unwrap().trim_end().ends_with('-'));
    let (code, out) = run(&["bench", "--class", "qt", "--sizes", "256,512", "--runs", "1"], "");
    assert_eq!((code, out.lines().count()), (0, 3));
    assert_eq!(run(&["bench", "--class", "qt", "--sizes", ""], "").0, 2);
    assert_eq!(run(&["bench", "--class", "qt"], "").0, 2);
}
