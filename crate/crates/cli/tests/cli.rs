use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn biharm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biharm"))
        .args(args)
        .env_remove("BIHARM_SEED")
        .output()
        .expect("spawn biharm")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("biharm-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn kernel_values_and_errors() {
    let out = biharm(&["kernel", "--kind", "Gamma", "--z", "0.5,0", "--zeta", "0,0", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out)["value"].as_f64().unwrap();
    assert!((v - (0.25 * 0.25f64.ln() + 0.75)).abs() < 1e-15);

    let out = biharm(&["kernel", "--kind", "G", "--z", "-0.99,0", "--zeta", "0,0"]);
    assert_eq!(code(&out), 0);
    let v: f64 = String::from_utf8_lossy(&out.stdout).trim().parse().unwrap();
    assert!((v - 2.0 * 0.99f64.ln()).abs() < 1e-15);

    assert_eq!(code(&biharm(&["kernel", "--kind", "Q", "--z", "0,0", "--zeta", "0,0"])), 2);
    assert_eq!(code(&biharm(&["kernel", "--kind", "G", "--z", "1.2,0", "--zeta", "0,0"])), 3);
    assert_eq!(code(&biharm(&["kernel", "--kind", "G", "--z", "0.1,0", "--zeta", "0.1,0"])), 3);
    assert_eq!(code(&biharm(&["kernel", "--kind", "G", "--z", "nan,0", "--zeta", "0,0"])), 2);
}

#[test]
fn solve_dirichlet_from_boundary_file() {
    let n = 256;
    let mut phi = Vec::new();
    for k in 0..n {
        let t = std::f64::consts::TAU * k as f64 / n as f64;
        phi.push(serde_json::json!([t.cos(), t.sin()]));
    }
    let psi = vec![serde_json::json!([0.0, 0.0]); n];
    let data = serde_json::json!({"N": n, "phi": phi, "psi": psi}).to_string();
    let path = scratch("circle.json", &data);
    let p = path.to_str().unwrap();
    let out = biharm(&["solve-dirichlet", "--data", p, "--at", "0.3,0", "--at", "-0.2,0.1", "--json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    let u0 = &v["values"][0]["u"];
    assert!((u0[0].as_f64().unwrap() - 0.4365).abs() < 1e-12);
    assert!(u0[1].as_f64().unwrap().abs() < 1e-12);

    assert_eq!(code(&biharm(&["solve-dirichlet", "--data", p, "--at", "0.995,0"])), 3);
    let bad = scratch("bad.json", r#"{"N": 3, "phi": [[1, 0]], "psi": [[0, 0]]}"#);
    assert_eq!(code(&biharm(&["solve-dirichlet", "--data", bad.to_str().unwrap(), "--at", "0,0"])), 2);
}

#[test]
fn solve_dirichlet_from_map_trace() {
    let spec = scratch("h_z.json", r#"{"type": "familyF", "H": {"w1": [[0, 0], [1, 0]], "w2": []}}"#);
    let out = biharm(&["--nodes", "512", "solve-dirichlet", "--map", spec.to_str().unwrap(), "--at", "0.3,0", "--json"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["N"], 512);
    assert!((v["values"][0]["u"][0].as_f64().unwrap() - 0.4365).abs() < 1e-12);
}

#[test]
fn check_univalence_exit_codes() {
    let out = biharm(&["check-univalence", "--example", "example1:0.5", "--nr", "32", "--ntheta", "64"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["oracle_injective"], true);
    assert_eq!(r["criterion_holds"], true);

    let out = biharm(&["check-univalence", "--example", "example1:1.0", "--nr", "64", "--ntheta", "64"]);
    assert_eq!(code(&out), 1);
    let r = stdout_json(&out);
    assert_eq!(r["oracle_injective"], false);
    assert_eq!(r["discrepancy"], true);
    assert!(r["first_collision"]["z1"].is_array());

    assert_eq!(code(&biharm(&["check-univalence", "--example", "example1:0.5", "--rmax", "1.0"])), 2);
    assert_eq!(code(&biharm(&["check-univalence", "--example", "example9"])), 2);
    assert_eq!(code(&biharm(&["check-univalence"])), 2);
}

#[test]
fn radius_modes() {
    let out = biharm(&["radius", "--example", "example2:2", "--json"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    // u(-r) has derivative -(3/2 - 2r)(1 - r^2), which vanishes at r = 3/4
    assert!((r["radius"].as_f64().unwrap() - 0.75).abs() < 1e-5);

    let out = biharm(&["radius", "--example", "example1:1.0", "--mode", "injectivity", "--tol", "1e-3", "--json"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out)["radius"].as_f64().unwrap();
    // the first fold inside |z| < r: f(r) = 2r - r^3 decreases past sqrt(2/3), so r ~ 0.82-0.95
    assert!(r > (2.0f64 / 3.0).sqrt() && r < 0.99, "{r}");
}

#[test]
fn schwarz_verify_reports() {
    let out = biharm(&["schwarz-verify", "--example", "example1:0.5", "--grid", "32,64"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["bound"]["pass"], true);
    assert_eq!(r["lambda_at_zero"], 1.5);

    let big = scratch("big.json", r#"{"type": "familyF", "H": {"w1": [[0, 0], [2, 0]]}}"#);
    let out = biharm(&["schwarz-verify", "--map", big.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout_json(&out)["bound"]["hypothesis_failed"], true);
}

#[test]
fn render_is_deterministic_and_writes_out() {
    let dir = std::env::temp_dir().join(format!("biharm-cli-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let a = dir.join("a.svg");
    let b = dir.join("b.svg");
    for p in [&a, &b] {
        let out = biharm(&["render", "--example", "example2:3", "--samples", "64", "--out", p.to_str().unwrap()]);
        assert_eq!(code(&out), 0);
        assert!(out.stdout.is_empty());
    }
    let sa = std::fs::read_to_string(&a).unwrap();
    assert_eq!(sa, std::fs::read_to_string(&b).unwrap());
    assert!(sa.starts_with("<svg "));
    assert_eq!(sa.matches("<polyline").count(), 8 + 24);

    assert_eq!(code(&biharm(&["render", "--example", "example3", "--rmax", "0.995"])), 3);
    assert_eq!(code(&biharm(&["render", "--example", "example2:3", "--samples", "8"])), 2);
}

#[test]
fn verify_suites() {
    let out = biharm(&["verify", "kernels"]);
    assert_eq!(code(&out), 0);
    let r = stdout_json(&out);
    assert_eq!(r["suite"], "kernels");
    assert_eq!(r["passed"], true);
    for c in r["checks"].as_array().unwrap() {
        for key in ["name", "value", "bound", "tol", "pass"] {
            assert!(c.get(key).is_some(), "{key}");
        }
    }
    assert_eq!(code(&biharm(&["verify", "nope"])), 2);
}

#[test]
fn seed_flag_and_env_fallback() {
    let out = biharm(&["verify", "derivatives", "--seed", "5"]);
    assert_eq!(stdout_json(&out)["seed"], 5);
    let out = Command::new(env!("CARGO_BIN_EXE_biharm"))
        .args(["verify", "derivatives"])
        .env("BIHARM_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&out)["seed"], 11);
    let a = stdout_json(&biharm(&["verify", "derivatives", "--seed", "5"]));
    let b = stdout_json(&biharm(&["verify", "derivatives", "--seed", "5"]));
    assert_eq!(a["checks"], b["checks"]);
}
