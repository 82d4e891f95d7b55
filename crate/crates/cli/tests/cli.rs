use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hgcolor::hgr;
use hgcolor_core::{build_base, complete_uniform, Hypergraph};
use tempfile::TempDir;

fn hgcolor(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgcolor"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn save(dir: &Path, name: &str, h: &Hypergraph) {
    hgr::write_file(&dir.join(name), h).unwrap();
}

#[test]
fn build_writes_expected_headers() {
    let dir = TempDir::new().unwrap();
    let o = hgcolor(dir.path(), &["build", "--r", "2", "--d", "2", "--out", "g.hgr"]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("g.hgr")).unwrap();
    assert!(text.starts_with("p hgr 8 10 2\n"));

    let o = hgcolor(dir.path(), &["build", "--r", "3", "--d", "2", "--out", "g32.hgr"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "built n=1368 m=2712 r=3\n");
    let text = fs::read_to_string(dir.path().join("g32.hgr")).unwrap();
    assert!(text.starts_with("p hgr 1368 2712 3\n"));
}

#[test]
fn build_to_stdout() {
    let dir = TempDir::new().unwrap();
    let o = hgcolor(dir.path(), &["build", "--r", "3", "--d", "1"]);
    assert_eq!(stdout(&o), "p hgr 6 4 3\n1 2 3\n2 3 4\n3 4 5\n4 5 6\n");
}

#[test]
fn oversized_build_is_refused_with_sizes() {
    let dir = TempDir::new().unwrap();
    let o = hgcolor(dir.path(), &["build", "--r", "3", "--d", "3", "--out", "x.hgr"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("V=6539790496793141088"), "{err}");
    assert!(!dir.path().join("x.hgr").exists());

    let o = hgcolor(dir.path(), &["build", "--r", "2", "--d", "3", "--cap", "100"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hgcolor(
        dir.path(),
        &[
            "build", "--r", "2", "--d", "3", "--cap", "100", "--force", "--out", "g.hgr",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_64() {
    let dir = TempDir::new().unwrap();
    for args in [
        &["build", "--r", "1", "--d", "2"][..],
        &["build", "--r", "2", "--d", "0"],
        &["build", "--r", "2"],
        &["stats", "--r", "2", "--d", "0"],
        &["frobnicate"],
        &["color", "x.hgr"],
    ] {
        assert_eq!(hgcolor(dir.path(), args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(hgcolor(dir.path(), &["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes_on_constructions() {
    let dir = TempDir::new().unwrap();
    hgcolor(
        dir.path(),
        &[
            "build",
            "--r",
            "2",
            "--d",
            "2",
            "--out",
            "g.hgr",
            "--provenance",
            "g.prov",
        ],
    );
    let o = hgcolor(
        dir.path(),
        &[
            "verify",
            "g.hgr",
            "--degeneracy",
            "2",
            "--triangle-free",
            "--new-vertex-degree",
            "2",
            "--provenance",
            "g.prov",
        ],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "degeneracy 2 bound 2 PASS\n\
         elimination-order 5 1 6 2 7 3 4 8\n\
         step-degrees 2 2 1 2 1 1 1 0\n\
         triangle-free PASS\n\
         new-vertex-degree 2 count 4 PASS\n"
    );

    save(dir.path(), "b4.hgr", &build_base(4).unwrap());
    let o = hgcolor(dir.path(), &["verify", "b4.hgr", "--degeneracy", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_reports_failures() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "k3.hgr", &complete_uniform(3, 2).unwrap());
    let o = hgcolor(dir.path(), &["verify", "k3.hgr", "--triangle-free"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o), "triangle-free FAIL\ntriangle edges 0 1 2 vertices 1 2 3\n");

    let o = hgcolor(dir.path(), &["verify", "k3.hgr", "--degeneracy", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("degeneracy 2 bound 1 FAIL\n"));

    hgcolor(
        dir.path(),
        &[
            "build",
            "--r",
            "2",
            "--d",
            "2",
            "--out",
            "g.hgr",
            "--provenance",
            "g.prov",
        ],
    );
    let o = hgcolor(
        dir.path(),
        &["verify", "g.hgr", "--new-vertex-degree", "3", "--provenance", "g.prov"],
    );
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        stdout(&o),
        "new-vertex-degree 3 count 4 FAIL\noffending-vertex 5 degree 2\n"
    );

    let o = hgcolor(dir.path(), &["verify", "g.hgr"]);
    assert_eq!(o.status.code(), Some(64));
    let o = hgcolor(dir.path(), &["verify", "g.hgr", "--new-vertex-degree", "2"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn malformed_input_exits_65_with_line() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.hgr"), "p hgr 3 2 2\n1 2\n1 2 3\n").unwrap();
    let o = hgcolor(dir.path(), &["chromatic", "bad.hgr"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8(o.stderr).unwrap().contains("bad.hgr:3:"));

    fs::write(dir.path().join("g.hgr"), "p hgr 2 1 2\n1 2\n").unwrap();
    fs::write(dir.path().join("g.prov"), "v 1 COPY 0 1\nv 3 NEW 0 1\n").unwrap();
    let o = hgcolor(
        dir.path(),
        &["verify", "g.hgr", "--new-vertex-degree", "1", "--provenance", "g.prov"],
    );
    assert_eq!(o.status.code(), Some(65));

    let o = hgcolor(dir.path(), &["chromatic", "missing.hgr"]);
    assert_eq!(o.status.code(), Some(74));
}

#[test]
fn duplicate_lines_warn() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("d.hgr"), "p hgr 3 2 2\n1 2\n2 1\n").unwrap();
    let o = hgcolor(dir.path(), &["chromatic", "d.hgr"]);
    assert_eq!(stdout(&o), "chromatic 2\n");
    assert!(String::from_utf8(o.stderr).unwrap().contains("dropped 1 duplicate"));
}

#[test]
fn chromatic_and_budget() {
    let dir = TempDir::new().unwrap();
    hgcolor(dir.path(), &["build", "--r", "2", "--d", "2", "--out", "g.hgr"]);
    assert_eq!(stdout(&hgcolor(dir.path(), &["chromatic", "g.hgr"])), "chromatic 3\n");
    assert_eq!(
        stdout(&hgcolor(dir.path(), &["chromatic", "g.hgr", "--parallel"])),
        "chromatic 3\n"
    );
    let o = hgcolor(dir.path(), &["chromatic", "g.hgr", "--max-k", "2"]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "chromatic >2\n".to_string()));
    let o = hgcolor(dir.path(), &["chromatic", "g.hgr", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(3));

    save(dir.path(), "k53.hgr", &complete_uniform(5, 3).unwrap());
    assert_eq!(stdout(&hgcolor(dir.path(), &["chromatic", "k53.hgr"])), "chromatic 3\n");
}

#[test]
fn chromatic_delegates_to_solver_after_budget() {
    let dir = TempDir::new().unwrap();
    hgcolor(dir.path(), &["build", "--r", "2", "--d", "2", "--out", "g.hgr"]);
    // A fake solver that always answers UNSAT pushes the answer past max-k.
    let o = hgcolor(
        dir.path(),
        &[
            "chromatic",
            "g.hgr",
            "--budget",
            "1",
            "--max-k",
            "3",
            "--solver-cmd",
            "echo 's UNSATISFIABLE' # {cnf}",
        ],
    );
    assert_eq!((o.status.code(), stdout(&o)), (Some(1), "chromatic >3\n".to_string()));
    let o = hgcolor(
        dir.path(),
        &["chromatic", "g.hgr", "--budget", "1", "--solver-cmd", "true {cnf}"],
    );
    assert_eq!(o.status.code(), Some(3));
    let o = hgcolor(dir.path(), &["chromatic", "g.hgr", "--solver-cmd", "no-placeholder"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn colorings() {
    let dir = TempDir::new().unwrap();
    hgcolor(dir.path(), &["build", "--r", "2", "--d", "2", "--out", "g.hgr"]);
    let greedy = stdout(&hgcolor(dir.path(), &["color", "g.hgr", "--greedy"]));
    let exact = stdout(&hgcolor(dir.path(), &["color", "g.hgr", "--exact"]));
    let g = hgr::read_file(&dir.path().join("g.hgr")).unwrap();
    for text in [greedy, exact] {
        let mut lines = text.lines();
        let used: usize = lines.next().unwrap().strip_prefix("colors ").unwrap().parse().unwrap();
        assert!(used <= 3);
        let colors: Vec<u32> = lines
            .next()
            .unwrap()
            .strip_prefix("coloring ")
            .unwrap()
            .split(' ')
            .map(|c| c.parse().unwrap())
            .collect();
        let c = hgcolor_core::Coloring::new(colors, 3).unwrap();
        assert!(g.is_proper(&c).unwrap());
    }
}

#[test]
fn lemma_check_lines() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "b3.hgr", &build_base(3).unwrap());
    let o = hgcolor(dir.path(), &["lemma-check", "b3.hgr", "--k", "2"]);
    assert_eq!(stdout(&o), "lemma-min-class 2\n");
    assert_eq!(
        hgcolor(dir.path(), &["lemma-check", "b3.hgr", "--k", "2", "--at-least", "3"])
            .status
            .code(),
        Some(1)
    );
    let o = hgcolor(dir.path(), &["lemma-check", "b3.hgr", "--k", "1"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), "lemma-min-class none\n".to_string())
    );
    let o = hgcolor(dir.path(), &["lemma-check", "b3.hgr", "--k", "2", "--budget", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn stats_lines() {
    let dir = TempDir::new().unwrap();
    assert_eq!(
        stdout(&hgcolor(dir.path(), &["stats", "--r", "2", "--d", "3"])),
        "stats V=536 E=1566 numS=512\n"
    );
    assert_eq!(
        stdout(&hgcolor(dir.path(), &["stats", "--r", "3", "--d", "2"])),
        "stats V=1368 E=2712 numS=675\n"
    );
    assert_eq!(
        stdout(&hgcolor(dir.path(), &["stats", "--r", "4", "--d", "1"])),
        "stats V=12 E=9 numS=0\n"
    );
}

#[test]
fn encode_and_decode() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "k2.hgr", &complete_uniform(2, 2).unwrap());
    let o = hgcolor(dir.path(), &["encode", "k2.hgr", "--k", "2", "--out", "k2.cnf"]);
    assert_eq!(stdout(&o), "cnf vars=4 clauses=4\n");
    assert_eq!(
        fs::read_to_string(dir.path().join("k2.cnf")).unwrap(),
        "p cnf 4 4\n1 2 0\n3 4 0\n-1 -3 0\n-2 -4 0\n"
    );

    fs::write(dir.path().join("sat.out"), "c solver\ns SATISFIABLE\nv 1 -2 -3 4 0\n").unwrap();
    let o = hgcolor(dir.path(), &["decode", "k2.hgr", "--k", "2", "--result", "sat.out"]);
    assert_eq!(stdout(&o), "sat-result SAT\ncolors 2\ncoloring 0 1\n");
    fs::write(dir.path().join("unsat.out"), "s UNSATISFIABLE\n").unwrap();
    let o = hgcolor(dir.path(), &["decode", "k2.hgr", "--k", "2", "--result", "unsat.out"]);
    assert_eq!(stdout(&o), "sat-result UNSAT\n");
    fs::write(dir.path().join("junk.out"), "s SATISFIABLE\nv 1 z 0\n").unwrap();
    let o = hgcolor(dir.path(), &["decode", "k2.hgr", "--k", "2", "--result", "junk.out"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));
}

#[test]
fn sat_command_with_canned_solver() {
    let dir = TempDir::new().unwrap();
    save(dir.path(), "k3.hgr", &complete_uniform(3, 2).unwrap());
    let o = hgcolor(
        dir.path(),
        &[
            "sat",
            "k3.hgr",
            "--k",
            "2",
            "--solver-cmd",
            "echo 's UNSATISFIABLE' # {cnf}",
        ],
    );
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(0), "sat-result UNSAT\n".to_string())
    );
    let o = hgcolor(dir.path(), &["sat", "k3.hgr", "--k", "2", "--solver-cmd", "true {cnf}"]);
    assert_eq!(
        (o.status.code(), stdout(&o)),
        (Some(3), "sat-result UNKNOWN\n".to_string())
    );
}

#[test]
fn hgr_round_trip_for_constructions() {
    use hgcolor_core::{build, ConstructionParams, SizeCap};
    for (r, d) in [(2, 1), (3, 1), (4, 1), (5, 1), (2, 2), (2, 3), (3, 2)] {
        let h = build(ConstructionParams::new(r, d).unwrap(), &SizeCap::default()).unwrap();
        assert_eq!(hgr::parse(&hgr::to_string(&h)).unwrap(), h);
    }
}
