use std::process::{Command, Output};

fn qtatoms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtatoms")).args(args).env_remove("QTATOMS_CACHE").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn htilde_and_pieri() {
    let o = qtatoms(&["htilde", "--mu", "[2,1]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "degree 3 basis s\ns[1,1,1]: q*t\ns[2,1]: q+t\ns[3]: 1\n");
    let o = qtatoms(&["pieri", "--mu", "[2,1]", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["partition"], "[1,1]");
    assert_eq!(v[0]["coeff"], "(q^2-t)/(q-t)");
}

#[test]
fn frobenius_and_atoms() {
    let o = qtatoms(&["frobenius", "--diagram", "mu/ij:[2,1]/(0,0)"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("degree 2 basis s"), "{text}");
    let o = qtatoms(&["atoms", "--mu", "[3,2,1]", "--cell", "(1,0)"]);
    let text = stdout(&o);
    assert!(text.contains("Xi = ((-t+1)/(q-t))H[3,2] + ((q-1)/(q-t))H[3,1,1]"), "{text}");
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let o = qtatoms(&["verify", "--kind", "flip", "--nmax", "4", "--jobs", "2", "--report", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let first = &v["reports"][0];
    for key in ["task", "status", "params", "residual", "millis"] {
        assert!(first.get(key).is_some(), "{key}");
    }
    assert_eq!(qtatoms(&["verify", "--kind", "nfact", "--nmin", "4", "--nmax", "4", "--brute", "3"]).status.code(), Some(3));
    assert_eq!(qtatoms(&["verify", "--task", "four_term:[2]/(0,1)"]).status.code(), Some(1));
    assert_eq!(qtatoms(&["verify", "--kind", "bogus"]).status.code(), Some(2));
    assert_eq!(qtatoms(&["htilde"]).status.code(), Some(2));
}

#[test]
fn cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let a = qtatoms(&["--cache", d, "htilde", "--mu", "[2,2]"]);
    assert!(a.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let b = Command::new(env!("CARGO_BIN_EXE_qtatoms")).args(["htilde", "--mu", "[2,2]"]).env("QTATOMS_CACHE", d).output().unwrap();
    assert_eq!(a.stdout, b.stdout);
}
