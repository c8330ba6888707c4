use std::path::PathBuf;

use transop::cli::{dispatch, Outcome};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Outcome {
    dispatch(std::iter::once("transop").chain(args.iter().copied()))
}

fn temp_system(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn validate_fixtures() {
    for name in ["firefly.system", "firefly3.system", "firefly-r2.system"] {
        let out = run(&["validate", &fixture(name)]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("|B| = 12"));
    }
}

#[test]
fn validation_errors_exit_with_two() {
    let text = std::fs::read_to_string(fixture("firefly.system")).unwrap();
    let no_top = temp_system(
        "no-top.system",
        &text
            .replace("prop 1 = 1 1 1 1 1\n", "")
            .replace("hasse n' 1\nhasse f' 1\nhasse b' 1\nhasse r' 1\nhasse l' 1\n", ""),
    );
    let out = run(&["validate", &no_top]);
    assert_eq!(out.code, 2);
    assert_eq!(out.stderr, "error: constant-top proposition required\n");

    let bad_state = temp_system("bad-state.system", &text.replace("rel s5 s5", "rel s1 s9"));
    let out = run(&["validate", &bad_state]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("unknown state s9"), "{}", out.stderr);

    let out = run(&["validate", "/nonexistent/file.system"]);
    assert_eq!(out.code, 2);
}

#[test]
fn unknown_flags_print_usage() {
    let out = run(&["recover", &fixture("firefly.system"), "--bogus"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("Usage"), "{}", out.stderr);
    let out = run(&["frobnicate"]);
    assert_eq!(out.code, 2);
    let out = run(&["--help"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("oracle"));
}

#[test]
fn recover_reports_the_lower_failure() {
    let out = run(&["recover", &fixture("firefly.system")]);
    assert_eq!(out.code, 1);
    assert!(out
        .stdout
        .starts_with("upper: RECOVERED\nlower: NOT RECOVERED (+4 pairs: (s1,s3) (s2,s2) (s3,s3) (s4,s2))\n"));
    assert!(out.stdout.contains("extra s4 s2\n"));
    let out = run(&["recover", &fixture("firefly-r2.system")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "upper: RECOVERED\nlower: RECOVERED\n");
}

#[test]
fn operators_output() {
    let out = run(&["operators", &fixture("firefly.system"), "--both"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("T(b)  = 1 1 0 0 0  l\n"));
    assert!(out.stdout.contains("T(r') = 1 0 1 0 1  (1,0,1,0,1) (outside)\n"));
    assert!(out.stdout.contains("P(l)  = 0 1 1 0 0  b\n"));
    assert!(out.stdout.contains("P(1)  = 0 1 1 0 1  f'\n"));
    let upper = run(&["operators", &fixture("firefly.system"), "--upper", "--machine"]);
    assert_eq!(upper.stdout.lines().count(), 13);
    assert!(upper.stdout.contains("op b = 1 1 0 0 0\n"));
    let lower = run(&["operators", &fixture("firefly.system"), "--lower"]);
    assert!(!lower.stdout.contains("T("));
    assert_eq!(
        run(&["operators", &fixture("firefly.system"), "--upper", "--lower"]).code,
        2
    );
}

#[test]
fn induce_output() {
    let out = run(&["induce", &fixture("firefly3.system")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("|R| = 8, |R_T| = 10, |R^P| = 12"));
}

#[test]
fn iterate_output() {
    let out = run(&["iterate", &fixture("firefly3.system"), "--first", "lower"]);
    assert_eq!(out.code, 0);
    assert!(
        out.stdout.ends_with("converged after 4 steps (2 productive)\n"),
        "{}",
        out.stdout
    );
    assert!(out.stdout.contains("step 2 upper added: (s3,s1)\n"));

    let out = run(&["iterate", &fixture("firefly3.system"), "--max-steps", "1"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.ends_with("not converged within 1 steps\n"));
    let out = run(&["iterate", &fixture("firefly3.system"), "--schedule", "upper"]);
    assert!(
        out.stdout.ends_with("converged after 2 steps (1 productive)\n"),
        "{}",
        out.stdout
    );
    assert_eq!(
        run(&["iterate", &fixture("firefly3.system"), "--max-steps", "0"]).code,
        2
    );
}

#[test]
fn witnesses_output() {
    let out = run(&["witnesses", &fixture("firefly3.system")]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("upper b^s1 = NONE\n"));
    let out = run(&["witnesses", &fixture("firefly-r2.system")]);
    assert!(out.stdout.contains("upper: CERTIFIED\n") && out.stdout.contains("lower: CERTIFIED\n"));
}

#[test]
fn fixpoints_respect_the_cap() {
    let out = run(&["fixpoints", &fixture("firefly.system")]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("cap"));
    let small = temp_system(
        "small.system",
        "system small\nlattice chain2\nstates a b\nprop 0 = 0 0\nprop 1 = 1 1\n",
    );
    let out = run(&["fixpoints", &small, "--kind", "lower"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("4 fixpoints of 16 relations\n"));
}

#[test]
fn oracle_command() {
    let out = run(&["oracle", "--states", "2", "--suite", "all"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out
        .stdout
        .contains("upper-adjunction n=2 |B|=4: PASS (16 relations, 25 maps)\n"));
    assert!(!out.stdout.contains("FAIL"));
    let out = run(&["oracle", "--states", "1", "--suite", "theorem4"]);
    assert_eq!(out.stdout, "lower-adjunction n=1 |B|=2: PASS (2 relations, 2 maps)\n");
    let out = run(&[
        "oracle",
        "--states",
        "1",
        "--suite",
        "lemma2",
        "--lattice",
        "diamond",
        "--poset",
        "full",
    ]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert_eq!(run(&["oracle", "--states", "9"]).code, 2);
    assert_eq!(run(&["oracle", "--lattice", "pentagon"]).code, 2);
}

#[test]
fn dot_output() {
    let out = run(&["dot", &fixture("firefly.system")]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.matches(" -> ").count(), 7);
    assert!(out.stdout.contains("\"s5\" -> \"s5\";"));
    let hasse = run(&["dot", &fixture("firefly.system"), "--what", "hasse"]);
    assert_eq!(hasse.stdout.matches(" -- ").count(), 22);
    for atom in ["l", "r", "n", "f", "b"] {
        assert!(hasse.stdout.contains(&format!("\"0\" -- \"{atom}\";")));
    }
    let empty = temp_system(
        "empty.system",
        &std::fs::read_to_string(fixture("firefly3.system"))
            .unwrap()
            .lines()
            .filter(|l| !l.starts_with("rel"))
            .map(|l| format!("{l}\n"))
            .collect::<String>(),
    );
    let out = run(&["dot", &empty]);
    assert_eq!(out.stdout.matches(" -> ").count(), 0);
    assert_eq!(
        out.stdout.lines().filter(|l| l.trim_start().starts_with("\"s")).count(),
        5
    );
    let op = run(&["dot", &fixture("firefly.system"), "--what", "operator-upper"]);
    assert_eq!(op.stdout.matches(" -> ").count(), 12);
    assert_eq!(op.stdout.matches("shape=box").count(), 4);
    // byte-deterministic
    assert_eq!(
        run(&["dot", &fixture("firefly.system"), "--what", "lattice"]),
        run(&["dot", &fixture("firefly.system"), "--what", "lattice"])
    );
}
