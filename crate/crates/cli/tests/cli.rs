//! End-to-end runs of the `maxsets` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use maxsets::catalog::{fig1, BiColoredGraph, Graph};
use maxsets::io::{write_bicolored, write_graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxsets"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn sorted_lines(text: &str) -> Vec<String> {
    let mut v: Vec<String> = text.lines().map(str::to_string).collect();
    v.sort();
    v
}

fn fig1_file(dir: &TempDir) -> PathBuf {
    write(dir, "fig1.bcg", &write_bicolored(&fig1()))
}

#[test]
fn enumerate_fixture_with_every_engine() {
    let dir = TempDir::new().unwrap();
    let f = fig1_file(&dir);
    for algorithm in ["basic", "refined", "stateless"] {
        let o = run(&[
            "enumerate",
            "--system",
            "bcclique",
            "--algorithm",
            algorithm,
            s(&f),
        ]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert_eq!(sorted_lines(&stdout(&o)), ["1 2 3 5 6", "2 5 7 8", "3 4 5"]);
    }
}

#[test]
fn canonical_orders_after_a_tab() {
    let dir = TempDir::new().unwrap();
    let f = fig1_file(&dir);
    let o = run(&["enumerate", "--system", "bcclique", "--canonical", s(&f)]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("1 2 3 5 6\t1 2 5 3 6\n"), "{text}");
    assert!(text.contains("3 4 5\t3 5 4\n"), "{text}");
    let o = run(&[
        "enumerate",
        "--system",
        "bcclique",
        "--algorithm",
        "stateless",
        "--canonical",
        s(&f),
    ]);
    assert!(stdout(&o).contains("1 2 3 5 6\t1 2 5 6 3\n"));
}

#[test]
fn stats_go_to_stderr_as_json() {
    let dir = TempDir::new().unwrap();
    let f = fig1_file(&dir);
    let o = run(&[
        "enumerate",
        "--system",
        "bcclique",
        "--algorithm",
        "stateless",
        "--stats",
        s(&f),
    ]);
    assert_eq!(code(&o), 0);
    let report: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert_eq!(report["solution_count"], 3);
    assert_eq!(report["max_solution_size"], 5);
    assert!(report["peak_aux_elements"].as_u64().unwrap() <= 50);
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = run(&["enumerate", "--system", "bcclique", "--stats", s(&f)]);
    let report: serde_json::Value = serde_json::from_str(stderr(&o).trim()).unwrap();
    assert!(report["peak_aux_elements"].is_null());
}

#[test]
fn triangle_cliques_with_the_stateless_engine() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.g", "1 2\n2 3\n1 3\n");
    let o = run(&[
        "enumerate",
        "--system",
        "clique",
        "--algorithm",
        "stateless",
        s(&f),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1 2 3\n");
}

#[test]
fn engines_agree_and_repeat_themselves() {
    let dir = TempDir::new().unwrap();
    for seed in 0..12u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(3..=10);
        let g = write(
            &dir,
            "g.txt",
            &write_graph(&Graph::random(n, 0.5, &mut rng)),
        );
        let b = write(
            &dir,
            "b.txt",
            &write_bicolored(&BiColoredGraph::random(n, 0.4, 0.3, &mut rng)),
        );
        let inputs = [("clique", &g), ("independent", &g), ("bcclique", &b)];
        for (system, input) in inputs {
            let mut outputs = Vec::new();
            for algorithm in ["basic", "refined", "stateless"] {
                let args = [
                    "enumerate",
                    "--system",
                    system,
                    "--algorithm",
                    algorithm,
                    s(input),
                ];
                let first = stdout(&run(&args));
                assert_eq!(
                    first,
                    stdout(&run(&args)),
                    "{system} {algorithm} seed {seed}"
                );
                outputs.push(sorted_lines(&first));
            }
            assert!(
                outputs.windows(2).all(|w| w[0] == w[1]),
                "{system} seed {seed}"
            );
        }
    }
}

#[test]
fn invalid_combinations_are_usage_errors() {
    let dir = TempDir::new().unwrap();
    let f = fig1_file(&dir);
    let cases: [&[&str]; 4] = [
        &[
            "enumerate",
            "--system",
            "bcclique",
            "--algorithm",
            "refined",
            "--strategy",
            "min",
            s(&f),
        ],
        &["enumerate", "--system", "required-bcclique", s(&f)],
        &[
            "enumerate",
            "--system",
            "bcclique",
            "--required",
            "4",
            s(&f),
        ],
        &[
            "enumerate",
            "--system",
            "required-bcclique",
            "--required",
            "9",
            s(&f),
        ],
    ];
    for args in cases {
        let o = run(args);
        assert_eq!(code(&o), 2, "{args:?}: {}", stderr(&o));
    }
    assert_eq!(code(&run(&["enumerate", "--system", "nonsense", s(&f)])), 2);
}

#[test]
fn required_variant_from_the_command_line() {
    let dir = TempDir::new().unwrap();
    let f = fig1_file(&dir);
    let o = run(&[
        "enumerate",
        "--system",
        "required-bcclique",
        "--required",
        "4",
        "--algorithm",
        "refined",
        s(&f),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o), "3 4 5\n");
    let o = run(&[
        "enumerate",
        "--system",
        "required-bcclique",
        "--required",
        "4,7",
        s(&f),
    ]);
    assert_eq!(sorted_lines(&stdout(&o)), ["2 5 7 8", "3 4 5"]);
}

#[test]
fn bad_inputs_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.g");
    let o = run(&["enumerate", "--system", "clique", s(&missing)]);
    assert_eq!(code(&o), 1);
    let both = write(&dir, "both.bcg", "1 2 b\n1 2 w\n");
    assert_eq!(
        code(&run(&["enumerate", "--system", "bcclique", s(&both)])),
        1
    );
    let garbage = write(&dir, "garbage.g", "1 2\nthree four\n");
    let o = run(&["enumerate", "--system", "clique", s(&garbage)]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn mccis_triangle_and_single_node() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.g", "1 2\n2 3\n1 3\n");
    let o = run(&["mccis", "--verify", s(&tri), s(&tri)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().count(), 6);
    assert!(stdout(&o).lines().all(|l| l.split(' ').count() == 3));
    let k1 = write(&dir, "k1.g", "nodes 1\n");
    let o = run(&["mccis", s(&k1), s(&k1)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "1:1\n");
}

#[test]
fn mccis_verify_on_random_pairs() {
    let dir = TempDir::new().unwrap();
    for seed in 0..50u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 500);
        let a = Graph::random(rng.gen_range(1..=5), rng.gen_range(0.2..0.8), &mut rng);
        let b = Graph::random(rng.gen_range(1..=5), rng.gen_range(0.2..0.8), &mut rng);
        let fa = write(&dir, "a.g", &write_graph(&a));
        let fb = write(&dir, "b.g", &write_graph(&b));
        let algorithm = ["basic", "refined", "stateless"][seed as usize % 3];
        let o = run(&[
            "mccis",
            "--verify",
            "--algorithm",
            algorithm,
            s(&fa),
            s(&fb),
        ]);
        assert_eq!(code(&o), 0, "seed {seed}: {}", stderr(&o));
    }
}

#[test]
fn mccis_verify_refuses_large_products() {
    let dir = TempDir::new().unwrap();
    let big = write(&dir, "big.g", &write_graph(&Graph::path(7)));
    let o = run(&["mccis", "--verify", s(&big), s(&big)]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_tables() {
    let dir = TempDir::new().unwrap();
    let f = fig1_file(&dir);
    let o = run(&["verify", "--system", "bcclique", s(&f)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("PASS")));
    let tri = write(&dir, "tri.g", "1 2\n2 3\n1 3\n");
    assert_eq!(code(&run(&["verify", "--system", "clique", s(&tri)])), 0);
    let o = run(&[
        "verify",
        "--system",
        "required-bcclique",
        "--required",
        "4",
        s(&f),
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS  basic (MinElement) vs oracle"));
}

#[test]
fn verify_in_parallel_keeps_input_order() {
    let dir = TempDir::new().unwrap();
    let mut paths = Vec::new();
    for seed in 0..6u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = BiColoredGraph::random(8, 0.4, 0.3, &mut rng);
        paths.push(write(&dir, &format!("g{seed}.bcg"), &write_bicolored(&g)));
    }
    let mut args = vec!["verify", "--system", "bcclique", "--jobs", "3"];
    args.extend(paths.iter().map(|p| s(p)));
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let text = stdout(&o);
    let headers: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("=="))
        .map(|l| &l[3..])
        .collect();
    let expected: Vec<&str> = paths.iter().map(|p| s(p)).collect();
    assert_eq!(headers, expected);
    assert_eq!(
        code(&run(&[
            "verify",
            "--system",
            "bcclique",
            "--jobs",
            "0",
            s(&paths[0])
        ])),
        2
    );
}

#[test]
fn gadget_files() {
    let dir = TempDir::new().unwrap();
    let cnf = write(&dir, "one.cnf", "c x1\np cnf 1 1\n1 0\n");
    let out = dir.path().join("one.bcg");
    let o = run(&["gadget", s(&cnf), s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = fs::read_to_string(&out).unwrap();
    assert!(
        text.contains("# 1 = C1\n# 2 = T1\n# 3 = F1\n# 4 = Y1\n"),
        "{text}"
    );
    let edges: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        edges,
        ["nodes 4", "1 2 b", "1 3 w", "1 4 w", "2 4 b", "3 4 b"]
    );

    let empty = write(&dir, "empty.cnf", "p cnf 2 0\n");
    assert_eq!(code(&run(&["gadget", s(&empty), "-"])), 2);
    let broken = write(&dir, "broken.cnf", "1 2 0\n");
    assert_eq!(code(&run(&["gadget", s(&broken), "-"])), 1);
    assert_eq!(
        code(&run(&["gadget", s(&dir.path().join("none.cnf")), "-"])),
        1
    );
}

/// Whether some listed BC-clique through `Y1` covers every clause node.
fn satisfiable_by_gadget(dir: &TempDir, dimacs: &str, clauses: u32, vars: u32) -> bool {
    let cnf = write(dir, "f.cnf", dimacs);
    let out = dir.path().join("f.bcg");
    assert_eq!(code(&run(&["gadget", s(&cnf), s(&out)])), 0);
    let o = run(&[
        "enumerate",
        "--system",
        "bcclique",
        "--algorithm",
        "refined",
        s(&out),
    ]);
    let y1 = (clauses + 2 * vars + 1).to_string();
    stdout(&o).lines().any(|line| {
        let labels: Vec<&str> = line.split(' ').collect();
        labels.contains(&y1.as_str())
            && (1..=clauses).all(|c| labels.contains(&c.to_string().as_str()))
    })
}

#[test]
fn gadget_then_enumerate_decides_satisfiability() {
    let dir = TempDir::new().unwrap();
    assert!(satisfiable_by_gadget(
        &dir,
        "p cnf 2 2\n1 2 0\n-1 0\n",
        2,
        2
    ));
    assert!(!satisfiable_by_gadget(&dir, "p cnf 1 2\n1 0\n-1 0\n", 2, 1));
    assert!(satisfiable_by_gadget(
        &dir,
        "p cnf 3 3\n1 -2 0\n2 3 0\n-1 -3 0\n",
        3,
        3
    ));
    assert!(!satisfiable_by_gadget(
        &dir,
        "p cnf 2 4\n1 2 0\n-1 2 0\n1 -2 0\n-1 -2 0\n",
        4,
        2
    ));
}

#[test]
fn generate_is_seeded() {
    let a = run(&[
        "generate",
        "--kind",
        "bicolored",
        "--nodes",
        "9",
        "--seed",
        "7",
    ]);
    let b = run(&[
        "generate",
        "--kind",
        "bicolored",
        "--nodes",
        "9",
        "--seed",
        "7",
    ]);
    let c = run(&[
        "generate",
        "--kind",
        "bicolored",
        "--nodes",
        "9",
        "--seed",
        "8",
    ]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert!(stdout(&a).starts_with("nodes 9\n"));
    assert_eq!(
        code(&run(&["generate", "--nodes", "4", "--density", "1.5"])),
        2
    );
}
