use std::path::{Path, PathBuf};
use std::process::{Command, Output};

const PATH_GAME: &str = "\
n = 3
homogeneity = \"homogeneous\"
edges = [[1, 2], [2, 3]]
costs = [1.0, 2.0, 3.0]
g = [[4.5, 6.0, 9.5], [4.5, 6.0, 9.5, 10.0], [4.5, 6.0, 9.5]]
";

// Δg = (0.5, 0.75, 0.25) with costs (0.25, 0.5, 0.875)
const TRIANGLE: &str = "\
n = 3
homogeneity = \"homogeneous\"
edges = [[1, 2], [1, 3], [2, 3]]
costs = [0.25, 0.5, 0.875]
g = [[0.0, 0.5, 1.25, 1.5], [0.0, 0.5, 1.25, 1.5], [0.0, 0.5, 1.25, 1.5]]
";

fn bnpg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bnpg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn path_game_has_no_equilibrium() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "path.toml", PATH_GAME);
    let out = bnpg(&["solve", s(&game), "--method", "tree"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("status: no_psne"));
    let auto = bnpg(&["solve", s(&game)]);
    assert_eq!(auto.status.code(), Some(1));
    assert!(stdout(&auto).contains("method: tree"));
}

#[test]
fn triangle_on_the_complete_solver() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "k3.toml", TRIANGLE);
    let out = bnpg(&["solve", s(&game), "--method", "complete"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("status: psne"));
    assert!(text.contains("profile: 110"), "{text}");
}

#[test]
fn heuristic_reports_epsilon_when_approximate() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "path.toml", PATH_GAME);
    let out = bnpg(&["solve", s(&game), "--method", "heuristic", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("epsilon: "));
}

#[test]
fn check_prints_gains_and_epsilons() {
    let dir = tempfile::tempdir().unwrap();
    let game = write(dir.path(), "path.toml", PATH_GAME);
    let out = bnpg(&["check", s(&game), "000"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("psne: no"));
    assert!(text.contains("epsilon: 0.5\n"), "{text}");
    assert!(text.contains("player 1: action 0, investing neighbors 0, deviation gain 0.5"));
    assert!(text.contains("epsilon_normalized: "));
    assert!(text.contains("welfare: 13.5"));

    let out = bnpg(&["check", s(&game), "111"]);
    assert!(stdout(&out).contains("epsilon: 1.5\n"));

    let bad = bnpg(&["check", s(&game), "01"]);
    assert_eq!(bad.status.code(), Some(3));

    let single = write(dir.path(), "one.toml", "n = 1\nedges = []\ncosts = [0.5]\ng = [[0.0, 1.0]]\n");
    let out = bnpg(&["check", s(&single), "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("psne: yes"));
}

#[test]
fn gen_round_trips_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.toml");
    let b = dir.path().join("b.toml");
    let args = ["gen", "--kind", "complete", "--n", "5", "--gamma", "1", "--seed", "7", "-o"];
    for path in [&a, &b] {
        let mut full = args.to_vec();
        full.push(s(path));
        assert_eq!(bnpg(&full).status.code(), Some(0));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let loaded = bnpg::format::load_game(&a).unwrap();
    assert_eq!(loaded.instance.n(), 5);
    assert_eq!(loaded.instance.graph().edge_count(), 10);
    assert_eq!(bnpg::format::write_game(&loaded.instance, loaded.provenance.as_ref()), text);

    let out = bnpg(&["validate", s(&a)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("5 players, 10 edges"));

    let tree = bnpg(&["gen", "--kind", "tree", "--n", "1000"]);
    assert_eq!(tree.status.code(), Some(0));
    let game = bnpg::format::parse_game(&stdout(&tree)).unwrap();
    assert_eq!(game.instance.graph().edge_count(), 999);
}

#[test]
fn gen_from_edge_list() {
    let dir = tempfile::tempdir().unwrap();
    let edges = write(dir.path(), "net.txt", "# snapshot\n1 2\n2 3\n2 1\n7 8\n");
    let out = bnpg(&["gen", "--edge-list", s(&edges), "--largest-component", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let game = bnpg::format::parse_game(&stdout(&out)).unwrap();
    assert_eq!(game.instance.n(), 3);
    assert_eq!(game.instance.graph().edge_count(), 2);

    // original ids: 0..=8 with 0 and 4..=6 isolated
    let out = bnpg(&["gen", "--edge-list", s(&edges), "--keep-ids", "--zero-indexed"]);
    assert_eq!(out.status.code(), Some(0));
    let game = bnpg::format::parse_game(&stdout(&out)).unwrap();
    assert_eq!(game.instance.n(), 9);
    assert!(game.instance.graph().has_edge(7, 8));

    let out = bnpg(&["gen", "--edge-list", s(&edges), "--zero-indexed"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn errors_exit_above_two() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "broken.toml",
        &PATH_GAME.replace("[4.5, 6.0, 9.5, 10.0]", "[4.5, 6.0, 9.5, 1.0]"),
    );
    let out = bnpg(&["validate", s(&broken)]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 5") && err.contains("monoton"), "{err}");

    assert_eq!(bnpg(&["solve", "/nonexistent/game.toml"]).status.code(), Some(3));
    assert_eq!(bnpg(&["solve"]).status.code(), Some(3));
    assert_eq!(bnpg(&["frobnicate"]).status.code(), Some(3));
    let game = write(dir.path(), "path.toml", PATH_GAME);
    assert_eq!(bnpg(&["solve", s(&game), "--method", "fastest"]).status.code(), Some(3));
    assert_eq!(bnpg(&["solve", s(&game), "--method", "complete"]).status.code(), Some(3));
    assert_eq!(bnpg(&["--help"]).status.code(), Some(0));
    assert_eq!(bnpg(&["gen", "--kind", "erdos-renyi", "--n", "5"]).status.code(), Some(3));
}

#[test]
fn solve_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let game = dir.path().join("ba.toml");
    let gen = bnpg(&[
        "gen", "--kind", "barabasi-albert", "--n", "300", "--gamma", "0.5", "--seed", "3", "-o",
        s(&game),
    ]);
    assert_eq!(gen.status.code(), Some(0));
    let run = || bnpg(&["solve", s(&game), "--method", "heuristic", "--seed", "9"]);
    let (a, b) = (run(), run());
    assert!(matches!(a.status.code(), Some(0) | Some(2)));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
}

#[test]
fn experiment_writes_identical_csvs() {
    let dir = tempfile::tempdir().unwrap();
    let config = write(
        dir.path(),
        "sweep.toml",
        "seed = 5\nreplications = 3\ngammas = [0.0, 1.0]\n\n[[graphs]]\nkind = \"random_tree\"\nn = 200\n",
    );
    let run = |name: &str| {
        let raw = dir.path().join(name);
        let out = bnpg(&["experiment", s(&config), "-o", s(&raw)]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        let stem = name.trim_end_matches(".csv");
        (
            std::fs::read(&raw).unwrap(),
            std::fs::read(dir.path().join(format!("{stem}_aggregate.csv"))).unwrap(),
        )
    };
    let (raw_a, agg_a) = run("a.csv");
    let (raw_b, agg_b) = run("b.csv");
    assert_eq!(raw_a, raw_b);
    assert_eq!(agg_a, agg_b);

    let text = String::from_utf8(raw_a).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("row,cell,seed,graph,"));
    let status_col = header.split(',').position(|c| c == "status").unwrap();
    let eps_col = header.split(',').position(|c| c == "epsilon").unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    for row in rows {
        assert_eq!(row[status_col], "psne");
        assert_eq!(row[eps_col].parse::<f64>().unwrap(), 0.0);
    }

    let empty = write(dir.path(), "empty.toml", "replications = 3\ngammas = []\n[[graphs]]\nkind = \"path\"\nn = 5\n");
    let out = bnpg(&["experiment", s(&empty), "-o", s(&dir.path().join("e.csv"))]);
    assert_eq!(out.status.code(), Some(3));
}
