//! End-to-end tests driving the `jury` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn jury(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jury"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_ok(args: &[&str]) -> Output {
    let out = jury(args);
    assert!(
        out.status.success(),
        "jury {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// `(pattern tuple, action)` pairs from a report's table block.
fn table_cells(report: &str) -> Vec<(String, String)> {
    report
        .lines()
        .skip_while(|line| *line != "table:")
        .skip(2) // the marker and the column header
        .filter_map(|line| line.split_once(' '))
        .map(|(p, a)| (p.to_string(), a.to_string()))
        .collect()
}

#[test]
fn golden_rule_tables_for_the_three_bundled_priors() {
    let dir = tempfile::tempdir().unwrap();

    // The 24 expected cells, pattern by pattern, per prior.
    let expected: [[&str; 8]; 3] = [
        ["0", "1", "0", "1", "0", "1", "0", "1"],
        ["0", "0/1", "0/1", "1", "0", "0/1", "0/1", "1"],
        ["0", "1", "1", "1", "0", "0", "0", "1"],
    ];
    let patterns = [
        "(0,0,0)", "(1,0,0)", "(0,1,0)", "(1,1,0)", "(0,0,1)", "(1,0,1)", "(0,1,1)", "(1,1,1)",
    ];

    for (i, cells) in expected.iter().enumerate() {
        let config = fixture(&format!("prior{}.toml", i + 1));
        let out_path = dir.path().join(format!("prior{}_risk.txt", i + 1));
        run_ok(&[
            "risk",
            "--config",
            config.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ]);

        let report = read(&out_path);
        let golden = read(&fixture(&format!("golden/prior{}_risk.txt", i + 1)));
        assert_eq!(report, golden, "prior {} report drifted from golden", i + 1);

        let table = table_cells(&report);
        assert_eq!(table.len(), 8);
        for (pattern, (got_pattern, got_action)) in patterns.iter().zip(&table) {
            assert_eq!(got_pattern, pattern);
            let want = cells[patterns.iter().position(|p| p == pattern).unwrap()];
            assert_eq!(got_action, want, "prior {} pattern {pattern}", i + 1);
        }
    }
}

#[test]
fn aggregate_is_deterministic_and_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let config = fixture("prior2.toml");
    let votes = fixture("patterns3_votes.csv");
    let first = dir.path().join("a.csv");
    let second = dir.path().join("b.csv");
    for out in [&first, &second] {
        run_ok(&[
            "aggregate",
            "--config",
            config.to_str().unwrap(),
            "--votes",
            votes.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    let bytes = read(&first);
    assert_eq!(bytes, read(&second), "two runs must be byte-identical");
    assert_eq!(bytes, read(&fixture("golden/prior2_aggregate.csv")));

    // The trusted pair disagreeing is a genuine tie, resolved by the coin.
    let p100 = bytes.lines().find(|l| l.starts_with("p100,")).unwrap();
    let fields: Vec<&str> = p100.split(',').collect();
    assert_eq!(fields[3], "true");
    assert!(fields[4] == "0" || fields[4] == "1");
    assert_eq!(fields[1], fields[4], "tied decision comes from the coin");

    // Agreement of the trusted pair decides without the coin.
    let p110 = bytes.lines().find(|l| l.starts_with("p110,")).unwrap();
    assert!(p110.starts_with("p110,1,") && p110.ends_with("false,"));
}

#[test]
fn aggregate_with_certain_experts() {
    let dir = tempfile::tempdir().unwrap();
    let votes = dir.path().join("votes.csv");
    std::fs::write(&votes, "item_id,e1,e2,e3\nunanimous,1,1,1\n").unwrap();
    let out = dir.path().join("out.csv");
    run_ok(&[
        "aggregate",
        "--config",
        fixture("certain.toml").to_str().unwrap(),
        "--votes",
        votes.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let body = read(&out);
    assert!(body.contains("unanimous,1,1,false,"));

    // Disagreement is impossible under infallible experts: data error.
    std::fs::write(&votes, "item_id,e1,e2,e3\nclash,1,1,0\n").unwrap();
    let result = jury(&[
        "aggregate",
        "--config",
        fixture("certain.toml").to_str().unwrap(),
        "--votes",
        votes.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(result.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(
        stderr.contains("clash"),
        "diagnostic names the row: {stderr}"
    );
}

#[test]
fn rule_table_round_trips_through_the_risk_report() {
    let dir = tempfile::tempdir().unwrap();
    let config = fixture("prior2.toml");
    let first_report = dir.path().join("first.txt");
    run_ok(&[
        "risk",
        "--config",
        config.to_str().unwrap(),
        "--out",
        first_report.to_str().unwrap(),
    ]);
    let first_table = dir.path().join("first.txt.rules.csv");

    let second_report = dir.path().join("second.txt");
    run_ok(&[
        "risk",
        "--config",
        config.to_str().unwrap(),
        "--rule",
        first_table.to_str().unwrap(),
        "--out",
        second_report.to_str().unwrap(),
    ]);
    let second_table = dir.path().join("second.txt.rules.csv");

    assert_eq!(
        read(&first_table),
        read(&second_table),
        "re-ingested rule table must reproduce itself"
    );
    // Same rule, same risks; only the `rule:` line differs.
    let strip = |text: String| -> Vec<String> {
        text.lines()
            .filter(|l| !l.starts_with("rule:"))
            .map(str::to_owned)
            .collect()
    };
    assert_eq!(strip(read(&first_report)), strip(read(&second_report)));
}

#[test]
fn risk_report_for_known_and_majority_agree() {
    // At the symmetric prior with equal accuracies above 1/2 the optimal
    // rule is the majority vote, so the two reports only differ in name.
    let dir = tempfile::tempdir().unwrap();
    let config = fixture("known_08.toml");
    let bayes_out = dir.path().join("bayes.txt");
    let majority_out = dir.path().join("majority.txt");
    for (rule, out) in [("bayes", &bayes_out), ("majority", &majority_out)] {
        run_ok(&[
            "risk",
            "--config",
            config.to_str().unwrap(),
            "--rule",
            rule,
            "--out",
            out.to_str().unwrap(),
        ]);
    }
    assert_eq!(
        read(&dir.path().join("bayes.txt.rules.csv")),
        read(&dir.path().join("majority.txt.rules.csv"))
    );
    let report = read(&bayes_out);
    for key in ["risk_theta0: ", "risk_theta1: "] {
        let value: f64 = report
            .lines()
            .find_map(|l| l.strip_prefix(key))
            .unwrap()
            .parse()
            .unwrap();
        assert!((value - 0.104).abs() < 1e-12, "{key}{value}");
    }
}

#[test]
fn certain_experts_surface_unreachable_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("certain.txt");
    run_ok(&[
        "risk",
        "--config",
        fixture("certain.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let report = read(&out);
    // Only unanimous patterns can occur under infallible experts; the six
    // mixed ones carry an arbitrary (coin) action and are flagged.
    assert!(
        report.contains("unreachable_patterns: 1,2,3,4,5,6"),
        "{report}"
    );
    assert!(report.contains("(0,0,0) 0"), "{report}");
    assert!(report.contains("(1,1,1) 1"), "{report}");
    assert!(report.contains("(1,0,0) 0/1"), "{report}");
}

#[test]
fn coinflip_risk_is_half_regardless_of_model() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("coin.txt");
    run_ok(&[
        "risk",
        "--config",
        fixture("prior3.toml").to_str().unwrap(),
        "--rule",
        "coinflip",
        "--out",
        out.to_str().unwrap(),
    ]);
    let report = read(&out);
    assert!(report.contains("risk_theta0: 0.5"), "{report}");
    assert!(report.contains("risk_theta1: 0.5"), "{report}");
    assert!(report.contains("(0,0,0) 0/1"), "{report}");
}

#[test]
fn explicit_seed_flag_matches_the_config_seed() {
    // prior2.toml carries seed 7; passing --seed 7 must reproduce it.
    let dir = tempfile::tempdir().unwrap();
    let implicit = dir.path().join("implicit.csv");
    let explicit = dir.path().join("explicit.csv");
    run_ok(&[
        "aggregate",
        "--config",
        fixture("prior2.toml").to_str().unwrap(),
        "--votes",
        fixture("patterns3_votes.csv").to_str().unwrap(),
        "--out",
        implicit.to_str().unwrap(),
    ]);
    run_ok(&[
        "aggregate",
        "--config",
        fixture("prior2.toml").to_str().unwrap(),
        "--votes",
        fixture("patterns3_votes.csv").to_str().unwrap(),
        "--out",
        explicit.to_str().unwrap(),
        "--seed",
        "7",
    ]);
    assert_eq!(read(&implicit), read(&explicit));
}

#[test]
fn exit_codes_distinguish_config_data_and_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out_s = out.to_str().unwrap();

    // Unparseable config: 2.
    let bad_config = dir.path().join("bad.toml");
    std::fs::write(&bad_config, "n = \"three\"\n").unwrap();
    let r = jury(&[
        "risk",
        "--config",
        bad_config.to_str().unwrap(),
        "--out",
        out_s,
    ]);
    assert_eq!(r.status.code(), Some(2));

    // Model that violates an invariant: 2.
    let bad_model = dir.path().join("bad_model.toml");
    std::fs::write(
        &bad_model,
        "n = 2\nc = 0.5\n[model]\ntype = \"known\"\ngammas = [0.5, 1.5]\n",
    )
    .unwrap();
    let r = jury(&[
        "risk",
        "--config",
        bad_model.to_str().unwrap(),
        "--out",
        out_s,
    ]);
    assert_eq!(r.status.code(), Some(2));

    // Majority on an even panel: config error.
    let even = dir.path().join("even.toml");
    std::fs::write(
        &even,
        "n = 2\nc = 0.5\n[model]\ntype = \"known\"\ngammas = [0.7, 0.7]\n",
    )
    .unwrap();
    let r = jury(&[
        "risk",
        "--config",
        even.to_str().unwrap(),
        "--rule",
        "majority",
        "--out",
        out_s,
    ]);
    assert_eq!(r.status.code(), Some(2));

    // Malformed vote cell: 3, naming row and column.
    let votes = dir.path().join("votes.csv");
    std::fs::write(&votes, "item_id,e1,e2,e3\ng1,0,2,1\n").unwrap();
    let r = jury(&[
        "aggregate",
        "--config",
        fixture("prior1.toml").to_str().unwrap(),
        "--votes",
        votes.to_str().unwrap(),
        "--out",
        out_s,
    ]);
    assert_eq!(r.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&r.stderr);
    assert!(
        stderr.contains("row 1") && stderr.contains("e2"),
        "{stderr}"
    );

    // Wrong column count: 3.
    std::fs::write(&votes, "item_id,e1,e2\ng1,0,1\n").unwrap();
    let r = jury(&[
        "aggregate",
        "--config",
        fixture("prior1.toml").to_str().unwrap(),
        "--votes",
        votes.to_str().unwrap(),
        "--out",
        out_s,
    ]);
    assert_eq!(r.status.code(), Some(3));

    // Exhaustive search past the cap: 4, with the cost in the message.
    let r = jury(&[
        "minimax",
        "--config",
        fixture("full_box_n5.toml").to_str().unwrap(),
        "--out",
        out_s,
    ]);
    assert_eq!(r.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&r.stderr).contains("1853020188851841"));
}

#[test]
fn minimax_interval_report_closes_the_sandwich() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mm.txt");
    run_ok(&[
        "minimax",
        "--config",
        fixture("interval_01.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let report = read(&out);
    let value: f64 = report
        .lines()
        .find_map(|l| l.strip_prefix("minimax_value: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((value - 0.352).abs() < 1e-12, "value {value}");
    assert!(report.contains("sandwich_closed: true"), "{report}");

    // The unique witness is the majority rule.
    assert!(report.contains("witnesses_total: 1"));
    let cells = table_cells(&report.replace("witness 3186:", "table:\npattern action"));
    assert!(!cells.is_empty());
}

#[test]
fn minimax_full_box_keeps_only_the_coin() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mm.txt");
    run_ok(&[
        "minimax",
        "--config",
        fixture("full_box.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let report = read(&out);
    assert!(report.contains("minimax_value: 0.5"), "{report}");
    assert!(report.contains("witnesses_total: 1"), "{report}");
    // 6560 is the all-coin table (every base-3 digit is 2).
    assert!(report.contains("witness_indices: 6560"), "{report}");
    assert!(report.contains("(0,0,0) 0/1"), "{report}");
}

#[test]
fn lfp_curve_peaks_at_the_symmetric_prior() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lfp.csv");
    run_ok(&[
        "lfp",
        "--config",
        fixture("known_08.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    let body = read(&out);
    assert!(body.starts_with("# argmax_c: 0.5\n"), "{body}");
    assert_eq!(body.lines().filter(|l| !l.starts_with('#')).count(), 100);

    // Non-known models are a config error.
    let r = jury(&[
        "lfp",
        "--config",
        fixture("prior1.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn simulate_matches_exact_risk_within_four_sigma() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sim.csv");
    run_ok(&[
        "simulate",
        "--config",
        fixture("known_08.toml").to_str().unwrap(),
        "--rule",
        "majority",
        "--trials",
        "100000",
        "--out",
        out.to_str().unwrap(),
    ]);
    let body = read(&out);
    for line in body.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        let z: f64 = fields[5].parse().unwrap();
        assert!(z.abs() <= 4.0, "line {line}");
        let exact: f64 = fields[4].parse().unwrap();
        assert!((exact - 0.104).abs() < 1e-12);
    }
}

#[test]
fn wide_panels_aggregate_but_refuse_explicit_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("wide.csv");
    run_ok(&[
        "aggregate",
        "--config",
        fixture("panel42.toml").to_str().unwrap(),
        "--votes",
        fixture("panel42_votes.csv").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(read(&out).lines().count(), 13);

    let r = jury(&[
        "risk",
        "--config",
        fixture("panel42.toml").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(r.status.code(), Some(4));
}
