use std::process::{Command, Output};

use serde_json::Value;

fn iacpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iacpoly"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = iacpoly(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn first_line(args: &[&str]) -> String {
    stdout(args).lines().next().unwrap_or_default().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(
        first_line(&["limit", "--event", "condorcet-winner", "--m", "3"]),
        "5/16 (0.3125000000)"
    );
    assert_eq!(
        first_line(&["limit", "--event", "runoff-reversal", "--m", "4"]),
        "2988379676768359/12173449145352192 (0.2454833992)"
    );
    assert_eq!(
        first_line(&[
            "count",
            "--event",
            "condorcet-winner",
            "--m",
            "3",
            "--n",
            "2"
        ]),
        "3"
    );
}

#[test]
fn positional_event_and_digits() {
    assert_eq!(
        first_line(&["--digits", "4", "limit", "condorcet-winner", "--m", "3"]),
        "5/16 (0.3125)"
    );
}

#[test]
fn reduced_and_unreduced_counts_agree() {
    for event in [
        "condorcet-winner",
        "condorcet-efficiency-violation",
        "runoff-reversal",
    ] {
        for (m, n) in [("3", "9"), ("3", "14"), ("4", "4")] {
            let plain = first_line(&["count", event, "--m", m, "--n", n]);
            let reduced = first_line(&["count", event, "--m", m, "--n", n, "--reduced"]);
            assert_eq!(plain, reduced, "{event} m={m} n={n}");
        }
    }
}

#[test]
fn json_report_fields() {
    let v: Value = serde_json::from_str(&stdout(&[
        "--json",
        "limit",
        "condorcet-winner",
        "--m",
        "3",
    ]))
    .unwrap();
    assert_eq!(v["result"], "5/16");
    assert_eq!(v["decimal"], "0.3125000000");
    assert_eq!(v["reduction"]["numerator"]["D"], 4);
    assert_eq!(
        v["reduction"]["numerator"]["group_sizes"],
        serde_json::json!([2, 1, 2, 1])
    );
    assert!(v["ms"].is_u64());
}

#[test]
fn reduce_prints_grouping_and_weight() {
    let text = stdout(&["reduce", "condorcet-winner", "--m", "3"]);
    assert!(text.contains("n_a = {abc, acb} (k = 2)"), "{text}");
    assert!(
        text.contains("numerator weight: (n_a + 1) * (n_*a + 1)"),
        "{text}"
    );
    assert!(
        text.contains("denominator weight: binom(n + 5, 5)"),
        "{text}"
    );
}

#[test]
fn quasipoly_prints_fractional_form() {
    let text = stdout(&["quasipoly", "condorcet-winner", "--m", "3"]);
    assert!(text.contains(" + ( 45/64 * { 1/2 * n } + 0 )"), "{text}");
    assert!(text.contains("n = 1 mod 2: [45/128,"), "{text}");
}

#[test]
fn volume_modes_agree_on_the_limit() {
    let reduced = first_line(&["volume", "condorcet-efficiency-violation", "--m", "3"]);
    let unreduced = first_line(&[
        "volume",
        "condorcet-efficiency-violation",
        "--m",
        "3",
        "--unreduced",
    ]);
    assert_eq!(reduced, unreduced);
    assert!(reduced.starts_with("16/135 "));
}

#[test]
fn event_files() {
    let dir = std::env::temp_dir().join(format!("iacpoly-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cw = dir.join("cw.json");
    std::fs::write(
        &cw,
        r#"{"m": 3, "rows": [{"pairwise": ["a", "b"]}, {"pairwise": ["a", "c"]}]}"#,
    )
    .unwrap();
    let path = cw.to_str().unwrap();
    assert_eq!(
        first_line(&["limit", "--event", path]),
        "5/16 (0.3125000000)"
    );
    assert_eq!(first_line(&["count", path, "--n", "2"]), "3");
    assert_eq!(iacpoly(&["limit", path, "--m", "4"]).status.code(), Some(2));

    let broken = dir.join("broken.json");
    std::fs::write(&broken, r#"{"m": 3, "rows": [{"pairwise": ["a", "z"]}]}"#).unwrap();
    assert_eq!(
        iacpoly(&["limit", broken.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_input_exits_with_two() {
    assert_eq!(
        iacpoly(&["limit", "no-such-event", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        iacpoly(&["limit", "condorcet-winner"]).status.code(),
        Some(2)
    );
    assert_eq!(
        iacpoly(&["limit", "condorcet-winner", "--m", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(iacpoly(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        iacpoly(&["--threads", "0", "limit", "condorcet-winner", "--m", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn undefined_probability_exits_with_three() {
    // nobody can be a Condorcet winner without voters
    assert_eq!(
        iacpoly(&[
            "prob",
            "condorcet-efficiency-violation",
            "--m",
            "3",
            "--n",
            "0"
        ])
        .status
        .code(),
        Some(3)
    );
}
