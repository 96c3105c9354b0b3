use std::fs;
use std::path::Path;
use std::process::{Command, Output};

pub const BIN: &str = env!("CARGO_BIN_EXE_tricolor");

pub fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(BIN)
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn k4_minus_e() -> &'static str {
    "graph 4 5\ne 0 1\ne 0 2\ne 1 2\ne 0 3\ne 1 3\n"
}

/// Writes the small input files the command table refers to.
pub fn write_inputs(dir: &Path) {
    fs::write(dir.join("k3.g"), "graph 3 3\ne 0 1\ne 0 2\ne 1 2\n").unwrap();
    fs::write(dir.join("k2.g"), "graph 2 1\ne 0 1\n").unwrap();
    fs::write(dir.join("k4e.g"), k4_minus_e()).unwrap();
    let mut k12 = String::from("graph 12 66\n");
    for a in 0..12 {
        for b in a + 1..12 {
            k12.push_str(&format!("e {a} {b}\n"));
        }
    }
    fs::write(dir.join("k12.g"), k12).unwrap();
}

/// One invocation per command, each writing `out` (plus side files).
pub fn command_table() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        (
            "gen",
            vec!["gen", "--kind", "gnp", "--n", "40", "--seed", "3"],
        ),
        (
            "triangles",
            vec![
                "triangles",
                "--graph",
                "k12.g",
                "--color",
                "random",
                "--seed",
                "2",
            ],
        ),
        ("check-linear", vec!["check-linear", "--graph", "k4e.g"]),
        ("check-tree", vec!["check-tree", "--graph", "k4e.g"]),
        (
            "arrow",
            vec![
                "arrow",
                "--host",
                "k4e.g",
                "--pattern",
                "k4e.g",
                "--refutation",
                "side",
            ],
        ),
        (
            "arrow-adversarial",
            vec![
                "arrow",
                "--host",
                "k12.g",
                "--pattern",
                "k4e.g",
                "--mode",
                "adversarial",
                "--restarts",
                "4",
                "--steps",
                "200",
                "--seed",
                "1",
            ],
        ),
        (
            "ramsey",
            vec!["arrow", "--pattern", "k3.g", "--ramsey-max", "4"],
        ),
        (
            "mono-clique",
            vec!["mono-clique", "--host", "k12.g", "--n", "3", "--seed", "9"],
        ),
        (
            "regularize",
            vec!["regularize", "--block-size", "6", "--seed", "4"],
        ),
        (
            "regularize-heuristic",
            vec![
                "regularize",
                "--block-size",
                "8",
                "--seed",
                "4",
                "--mode",
                "heuristic",
            ],
        ),
        (
            "embed",
            vec![
                "embed",
                "--pattern",
                "k3.g",
                "--block-size",
                "4",
                "--seed",
                "5",
                "--save-instance",
                "side",
            ],
        ),
        (
            "count",
            vec![
                "count",
                "--pattern",
                "k3.g",
                "--block-size",
                "4",
                "--seed",
                "5",
                "--epsilon",
                "3/4",
                "--d",
                "1/64",
            ],
        ),
        (
            "embed-tree",
            vec![
                "embed-tree",
                "--n",
                "4",
                "--order",
                "64",
                "--p",
                "0.5",
                "--seed",
                "6",
                "--samples",
                "200",
            ],
        ),
        (
            "host-build",
            vec![
                "host-build",
                "--base",
                "k2.g",
                "--block-size",
                "3",
                "--graph-out",
                "side",
            ],
        ),
        (
            "host-extract",
            vec![
                "host-extract",
                "--base",
                "k2.g",
                "--block-size",
                "4",
                "--pattern",
                "k3.g",
                "--a",
                "0,1",
                "--b",
                "2",
                "--seed",
                "7",
            ],
        ),
        (
            "property-p",
            vec![
                "property-p",
                "--t",
                "512",
                "--seed",
                "8",
                "--samples",
                "300",
            ],
        ),
        (
            "concentration",
            vec![
                "property-p",
                "--t",
                "200",
                "--seed",
                "8",
                "--concentration",
                "--samples",
                "300",
                "--epsilon",
                "0.4",
                "--s-max",
                "1",
            ],
        ),
        ("schedule", vec!["schedule", "--n", "3"]),
    ]
}

/// Runs every command at the given thread counts and compares the main
/// artifact, the side file and the exit code byte for byte.
pub fn determinism_report(threads: &[&str]) -> Vec<(&'static str, bool, String)> {
    let mut report = Vec::new();
    for (label, args) in command_table() {
        let mut seen: Option<(Vec<u8>, Option<Vec<u8>>, Option<i32>)> = None;
        let mut ok = true;
        let mut detail = String::new();
        for t in threads {
            let dir = tempfile::tempdir().unwrap();
            write_inputs(dir.path());
            let mut full: Vec<&str> = vec!["--threads", t];
            full.extend(&args);
            full.extend(["--out", "artifact"]);
            let out = run(dir.path(), &full);
            let code = out.status.code();
            if code == Some(2) {
                ok = false;
                detail = String::from_utf8_lossy(&out.stderr).into_owned();
                break;
            }
            let main = fs::read(dir.path().join("artifact")).unwrap_or_default();
            let side = fs::read(dir.path().join("side")).ok();
            let now = (main, side, code);
            match &seen {
                None => seen = Some(now),
                Some(prev) if *prev != now => {
                    ok = false;
                    detail = format!("threads {t} differs");
                    break;
                }
                _ => {}
            }
        }
        if ok && seen.as_ref().is_some_and(|s| s.0.is_empty()) {
            ok = false;
            detail = "no artifact written".into();
        }
        report.push((label, ok, detail));
    }
    report
}
