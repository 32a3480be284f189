use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercong"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_small_range_passes() {
    let o = run(&["verify", "--primes", "5..100", "--ids", "C1_12,C1_13"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out
        .lines()
        .all(|l| l.contains("\"pass\"") || l.contains("\"skipped\"")));
    assert!(out.contains("{\"id\":\"C1_12\",\"p\":5,\"params\":null,\"modulus\":25,\"lhs\":8,\"rhs\":8,\"status\":\"pass\""));
}

#[test]
fn invalid_range_is_usage_error() {
    assert_eq!(run(&["verify", "--primes", "4..4"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--primes", "11..7"]).status.code(), Some(2));
    assert_eq!(
        run(&["verify", "--prime-list", "5,9"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--primes", "5..7", "--ids", "C9_9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--primes", "5..7", "--jobs", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--primes", "5..7", "--format", "xml"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["verify", "--primes", "5..7", "--exponent", "C1_12=9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["verify", "--bogus"]).status.code(), Some(2));
}

#[test]
fn unwritable_output_is_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("missing").join("out.jsonl");
    let o = run(&["verify", "--primes", "5..7", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn inapplicable_row_is_skipped() {
    let o = run(&[
        "verify", "--primes", "5..5", "--ids", "C1_22", "--format", "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "id,p,params,modulus,lhs,rhs,status,micros\nC1_22,5,,25,,,skipped,0\n"
    );
}

#[test]
fn shift_rows_at_seven() {
    let o = run(&[
        "verify",
        "--prime-list",
        "7",
        "--ids",
        "C1_5",
        "--format",
        "csv",
        "--no-timing",
    ]);
    let body = stdout(&o);
    let params: Vec<_> = body
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().to_string())
        .collect();
    assert_eq!(params, ["d=0", "d=2", "d=4", "d=6"]);
    let o = run(&[
        "verify",
        "--prime-list",
        "7",
        "--ids",
        "C1_5",
        "--d",
        "1,2",
        "--format",
        "csv",
        "--no-timing",
    ]);
    let lines: Vec<_> = stdout(&o).lines().skip(1).map(String::from).collect();
    assert_eq!(
        lines,
        ["C1_5,7,d=1,49,,,skipped,0", "C1_5,7,d=2,49,0,0,pass,0"]
    );
}

#[test]
fn output_is_deterministic_and_order_independent_of_jobs() {
    let base = [
        "verify",
        "--primes",
        "5..150",
        "--no-timing",
        "--include-experimental",
    ];
    let serial = run(&[&base[..], &["--jobs", "1"]].concat());
    let parallel = run(&[&base[..], &["--jobs", "3"]].concat());
    assert_eq!(serial.status.code(), Some(0));
    assert_eq!(stdout(&serial), stdout(&parallel));
}

#[test]
fn exponent_override_never_fails_the_run() {
    let o = run(&[
        "verify",
        "--prime-list",
        "13",
        "--ids",
        "C1_12",
        "--exponent",
        "C1_12=3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("\"modulus\":2197") && out.contains("experimental"));
}

#[test]
fn eta_and_repr_tables() {
    let o = run(&["eta", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("n,a,b,c\n"));
    assert!(out.lines().any(|l| l == "5,-6,0,0"));
    let o = run(&["repr", "--d", "1", "--primes", "5..13"]);
    assert_eq!(stdout(&o), "p,d,x,y\n5,1,1,2\n13,1,-3,2\n");
    let o = run(&[
        "repr",
        "--d",
        "2,7",
        "--prime-list",
        "11",
        "--format",
        "jsonl",
    ]);
    assert_eq!(
        stdout(&o),
        "{\"p\":11,\"d\":2,\"x\":3,\"y\":1}\n{\"p\":11,\"d\":7,\"x\":2,\"y\":1}\n"
    );
}

#[test]
fn identities_pass_at_default_grid() {
    let o = run(&["identities", "--grid-n", "25", "--no-timing"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 11);
    assert!(out
        .lines()
        .all(|l| l.contains("\"status\":\"pass\"") && l.contains("\"p\":null")));
}

#[test]
fn config_file_and_log() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    let log = dir.path().join("log.jsonl");
    let out = dir.path().join("out.csv");
    std::fs::write(
        &conf,
        "primes = 5..30\nids = C3_5,CG\nformat = jsonl\nno-timing = true\n",
    )
    .unwrap();
    let args = [
        "verify",
        "--config",
        conf.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
        "--log",
        log.to_str().unwrap(),
    ];
    for _ in 0..2 {
        assert_eq!(run(&args).status.code(), Some(0));
    }
    let body = std::fs::read_to_string(&out).unwrap();
    assert!(body.starts_with("id,p,params,modulus,lhs,rhs,status,micros\nC3_5,5,"));
    assert!(body.lines().all(|l| !l.contains(",fail,")));
    let logged = std::fs::read_to_string(&log).unwrap();
    let headers = logged
        .lines()
        .filter(|l| l.contains("\"header\":true"))
        .count();
    assert_eq!(headers, 2);
    assert_eq!(logged.lines().count(), 2 * (body.lines().count() - 1) + 2);
}
