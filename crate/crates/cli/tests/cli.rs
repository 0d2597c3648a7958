use std::process::Command;

fn ybd(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_ybd")).args(args).output().unwrap();
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )
}

#[test]
fn solve_prints_family() {
    let (code, out, _) = ybd(&["deform", "solve", "--n", "4", "--principal", "--case", "1", "--i", "2", "--j", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("free: a, u1, u2, u3\n"));
    assert!(out.contains("q^{24} = a*u1*u3"));
}

#[test]
fn esoteric_gl3() {
    let (code, out, _) = ybd(&["esoteric", "check", "--n", "2", "--q", "2/1", "--mu", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out, "braid: PASS\nhecke: PASS\n");
}

#[test]
fn help_names_the_equations() {
    let (_, out, _) = ybd(&["check", "--help"]);
    assert!(out.contains("(P - 1)(P + a) = 0"));
    assert!(out.contains("P12 P23 P12 = P23 P12 P23"));
    let (_, out, _) = ybd(&["esoteric", "--help"]);
    assert!(out.contains("mu'_i = -q^{2(i-n)} mu_i"));
}

#[test]
fn missing_file_is_an_input_error() {
    let (code, _, err) = ybd(&["check", "braid", "--params", "/definitely/not/here.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("/definitely/not/here.json"));
}
