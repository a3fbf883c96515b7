use std::path::Path;
use std::process::{Command, Output};

fn evokit(args: &[&str], config: &Path, out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_evokit"))
        .arg("--config")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn invalid_config_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("zero.toml", "population_size = 0\n"),
        ("unknown.toml", "mutation_rate = 0.1\n"),
        ("syntax.toml", "population_size = \n"),
    ] {
        let cfg = dir.path().join(name);
        std::fs::write(&cfg, body).unwrap();
        let out = evokit(&[], &cfg, &dir.path().join("o"));
        assert_eq!(out.status.code(), Some(1), "{name}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn missing_config_and_bad_args_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = evokit(&[], &dir.path().join("absent.toml"), dir.path());
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_evokit"))
        .arg("--bogus")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn missing_dataset_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("csv.toml");
    std::fs::write(
        &cfg,
        "[problem]\nkind = \"csv_regression\"\npath = \"nope.csv\"\n",
    )
    .unwrap();
    let out = evokit(&[], &cfg, &dir.path().join("o"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn overrides_and_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "population_size = 20\nmax_generation = 50\nmax_workers = 1\n\
         termination = { optimal = 0.0, threshold = 0.0 }\n",
    )
    .unwrap();
    let out_dir = dir.path().join("artifacts");
    let out = evokit(&["--seed", "9", "--max-generation", "4"], &cfg, &out_dir);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stdout).contains("best fitness:"));

    let stats = std::fs::read_to_string(out_dir.join("stats.csv")).unwrap();
    let mut lines = stats.lines();
    assert_eq!(lines.next(), Some("generation,best,average,worst"));
    let gens: Vec<usize> = lines
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(gens, vec![1, 2, 3, 4]);
    let tree = std::fs::read_to_string(out_dir.join("best_tree.txt")).unwrap();
    assert!(tree.ends_with('\n') && !tree.trim().is_empty());
    let summary = std::fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    assert!(summary.contains("seed = 9") && summary.contains("generations = 4"));
}

#[test]
fn same_seed_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs/quick.toml");
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(evokit(&[], &cfg, &a).status.success());
    assert!(evokit(&[], &cfg, &b).status.success());
    for f in ["stats.csv", "best_tree.txt", "summary.txt"] {
        assert_eq!(
            std::fs::read(a.join(f)).unwrap(),
            std::fs::read(b.join(f)).unwrap(),
            "{f}"
        );
    }
}
