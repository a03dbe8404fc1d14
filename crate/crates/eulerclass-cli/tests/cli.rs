//! End-to-end tests of the binary: output bytes, exit codes, determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerclass"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

#[test]
fn gf_plain_output() {
    assert_eq!(
        stdout(&["gf", "5"]),
        "m = 5\n\
         c + (1) cos(2x)/cos(5x)\n\
         c + (1) cos(4x)/cos(5x)\n\
         d + (1) sin(1x)/cos(5x)\n\
         d + (1) sin(3x)/cos(5x)\n"
    );
    assert_eq!(
        stdout(&["gf", "1"]),
        "m = 1\nc + (1) cos(0x)/cos(1x)\nd + (1) sin(1x)/cos(1x)\n"
    );
}

#[test]
fn gf_composite_lists_dilated_terms() {
    let out = stdout(&["gf", "1350"]);
    assert!(out.contains("c + (15) cos(225x)/cos(1350x)"));
    assert!(out.contains("c - (3) cos(45x)/cos(270x)"));
    assert!(out.contains("d + (15) sin(1125x)/cos(1350x)"));
    assert_eq!(out.lines().count(), 9);
}

#[test]
fn gf_json_golden() {
    assert_eq!(
        stdout(&["gf", "5", "--json"]),
        concat!(
            r#"{"m":5,"c_terms":[{"coeff":"1","flavor":"cos","num_freq":2,"den_freq":5},"#,
            r#"{"coeff":"1","flavor":"cos","num_freq":4,"den_freq":5}],"#,
            r#""d_terms":[{"coeff":"1","flavor":"sin","num_freq":1,"den_freq":5},"#,
            r#"{"coeff":"1","flavor":"sin","num_freq":3,"den_freq":5}]}"#,
            "\n"
        )
    );
}

#[test]
fn coeffs_formats() {
    assert_eq!(
        stdout(&["coeffs", "2", "5", "--bfile"]),
        "0 1\n1 1\n2 3\n3 11\n4 57\n5 361\n"
    );
    assert_eq!(stdout(&["coeffs", "1", "0"]), "1\n");
    assert_eq!(stdout(&["coeffs", "3", "5"]), "1 2 8 46 352 3362\n");
    assert_eq!(
        stdout(&["coeffs", "2", "3", "--json"]),
        "{\"m\":2,\"n_max\":3,\"values\":[\"1\",\"1\",\"3\",\"11\"]}\n"
    );
}

#[test]
fn coeffs_composite_matches_dilated_combination() {
    // s_{12675,n} must equal the weighted combination of dilated s_3 values.
    let out = stdout(&["coeffs", "12675", "3"]);
    let got: Vec<i128> = out
        .split_whitespace()
        .map(|w| w.parse().unwrap())
        .collect();
    let s3: Vec<i128> = stdout(&["coeffs", "3", "3"])
        .split_whitespace()
        .map(|w| w.parse().unwrap())
        .collect();
    let dilations: [(i128, i128); 4] = [(65, 4225), (13, 845), (-5, 325), (-1, 65)];
    let expect: Vec<i128> = (0..=3)
        .map(|n| {
            dilations
                .iter()
                .map(|&(w, t)| w * t.pow(n as u32) * s3[n])
                .sum()
        })
        .collect();
    assert_eq!(got, expect);
}

#[test]
fn enum_and_lhat_values() {
    assert_eq!(stdout(&["enum", "1", "1", "4"]), "5\n");
    assert_eq!(stdout(&["enum", "3", "2", "3"]), "46\n");
    let out = stdout(&["lhat", "1", "2"]);
    let rows: Vec<(u32, f64)> = out
        .lines()
        .map(|l| {
            let mut it = l.split_whitespace();
            (
                it.next().unwrap().parse().unwrap(),
                it.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    let pi = std::f64::consts::PI;
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0].0, 0);
    assert!((rows[0].1 - pi / 4.0).abs() < 1e-9);
    assert!((rows[1].1 - pi * pi / 8.0).abs() < 1e-9);
    assert!((rows[2].1 - pi.powi(3) / 32.0).abs() < 1e-9);
}

#[test]
fn dirichlet_output_parses() {
    let out = stdout(&["dirichlet", "plus", "1", "1", "--blocks", "200000"]);
    assert!(out.starts_with("L_plus(1, 1) = 0.78539"));
    let value: f64 = out.split_whitespace().nth(3).unwrap().parse().unwrap();
    assert!((value - std::f64::consts::PI / 4.0).abs() < 1e-4);

    let json = stdout(&["dirichlet", "minus", "1", "2", "--blocks", "2000000", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["kind"], "minus");
    let value = v["value"].as_f64().unwrap();
    let bound = v["error_bound"].as_f64().unwrap();
    let truth = std::f64::consts::PI.powi(2) / 8.0;
    assert!((value - truth).abs() < 1e-6);
    assert!((value - truth).abs() <= bound);
}

#[test]
fn verify_passes_for_small_m() {
    let out = stdout(&["verify", "2", "--max-n", "5", "--checks", "enum,recurrence"]);
    assert!(out.contains("check enum (r=2, p=1): PASS"));
    assert!(out.contains("check recurrence (n <= 5): PASS"));
    assert!(out.contains("verify m=2: all checks passed"));
}

#[test]
fn identical_invocations_are_byte_identical() {
    for args in [
        vec!["gf", "1350"],
        vec!["coeffs", "7", "10"],
        vec!["dirichlet", "plus", "3", "3", "--blocks", "2000"],
        vec!["lhat", "5", "4"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "args: {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(exit_code(&["gf", "0"]), 2);
    assert_eq!(exit_code(&["coeffs", "0", "3"]), 2);
    assert_eq!(exit_code(&["coeffs", "2", "30"]), 2); // exceeds default order 48
    assert_eq!(exit_code(&["coeffs", "2", "3", "--json", "--bfile"]), 2);
    assert_eq!(exit_code(&["enum", "5", "1", "1"]), 2);
    assert_eq!(exit_code(&["enum", "2", "1", "9"]), 2);
    assert_eq!(exit_code(&["dirichlet", "plus", "1", "0"]), 2);
    assert_eq!(exit_code(&["dirichlet", "minus", "1", "1"]), 2);
    assert_eq!(exit_code(&["verify", "9", "--checks", "enum"]), 2);
    assert_eq!(exit_code(&["nonsense"]), 2);
    assert_eq!(exit_code(&[]), 2);
}

#[test]
fn larger_order_flag_admits_larger_requests() {
    let out = stdout(&["coeffs", "2", "30", "--order", "64"]);
    assert_eq!(out.split_whitespace().count(), 31);
}
