//! End-to-end tests of the `hc` binary: exit codes, JSON round-trips, and
//! byte-for-byte determinism.

use std::process::{Command, Output};

use hc_cli::wire::{round_trip_state, WireForm, WireStark};
use hc_core::hydrogen::{momentum_state, psi_coordinate, RadiusConvention};
use hc_core::{RadialForm, Rat};

fn hc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hc"))
        .args(args)
        .env("HC_SEED", "424242")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn ground_state_json_encodes_pure_exponential() {
    let out = hc(&["state", "--n", "1", "--l", "0", "--format", "json"]);
    assert!(out.status.success());
    let (wire, tensor) = round_trip_state(&stdout(&out)).unwrap();
    assert_eq!(wire.n, 1);
    assert_eq!(wire.convention, "unit");
    let expect = RadialForm::one(3).mul_exp_weight(&Rat::new(1.into(), 1.into())).unwrap();
    assert_eq!(tensor.component(&[]).unwrap(), &expect);
    // and the payload matches the library's own construction
    assert_eq!(tensor, psi_coordinate(1, 0, RadiusConvention::UnitOrbit).unwrap());
}

#[test]
fn emitted_state_json_round_trips_to_equal_value() {
    for (n, l) in [(2u32, 1u32), (3, 1), (4, 3)] {
        let out = hc(&["state", "--n", &n.to_string(), "--l", &l.to_string(), "--format", "json"]);
        assert!(out.status.success());
        let (_, tensor) = round_trip_state(&stdout(&out)).unwrap();
        assert_eq!(tensor, psi_coordinate(n, l, RadiusConvention::UnitOrbit).unwrap());
    }
}

#[test]
fn emitted_momentum_json_round_trips_to_equal_value() {
    let out = hc(&["momentum", "--n", "3", "--l", "1", "--format", "json"]);
    assert!(out.status.success());
    let wire: WireForm = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(wire.to_form().unwrap(), momentum_state(3, 1).unwrap());
}

#[test]
fn stark_text_reports_ground_state_values() {
    let out = hc(&["stark", "--n", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("e2 = -9/4"), "missing energy value in: {text}");
    assert!(text.contains("polarizability = 9/2"), "missing polarizability in: {text}");
}

#[test]
fn stark_json_is_consistent() {
    let out = hc(&["stark", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let wire: WireStark = serde_json::from_str(&stdout(&out)).unwrap();
    wire.check_consistent().unwrap();
    assert_eq!(wire.e2_coefficient, "-1377/2");
    assert_eq!(wire.dipole_coefficient, "1377");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(hc(&["state", "--n", "1"]).status.code(), Some(2)); // missing --l
    assert_eq!(hc(&["state", "--n", "1", "--l", "0", "--bogus"]).status.code(), Some(2));
    assert_eq!(hc(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(hc(&["state", "--n", "0", "--l", "0"]).status.code(), Some(2)); // domain error
    assert_eq!(hc(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(hc(&["resolvent", "--lambda", "1.0", "--cos", "0.3"]).status.code(), Some(2)); // pole
}

#[test]
fn verify_all_small_sweep_passes() {
    let out = hc(&["verify", "all", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains(", 0 failed"), "summary missing in: {text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn verify_output_is_deterministic() {
    let a = hc(&["verify", "fock", "--n", "2", "--format", "csv"]);
    let b = hc(&["verify", "fock", "--n", "2", "--format", "csv"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("identity,n/k,level/terms,lhs,rhs,rel_error\n"));
}

#[test]
fn thread_count_does_not_change_values() {
    let one = hc(&["verify", "fock", "--n", "3", "--threads", "1", "--format", "csv"]);
    let four = hc(&["verify", "fock", "--n", "3", "--threads", "4", "--format", "csv"]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn seed_changes_points_but_not_verdicts() {
    let out = Command::new(env!("CARGO_BIN_EXE_hc"))
        .args(["verify", "fock", "--n", "2", "--format", "csv"])
        .env("HC_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let baseline = hc(&["verify", "fock", "--n", "2", "--format", "csv"]);
    assert_ne!(out.stdout, baseline.stdout, "different seeds must move the sample points");
}

#[test]
fn bad_seed_is_a_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_hc"))
        .args(["verify", "fock", "--n", "1"])
        .env("HC_SEED", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resolvent_json_reports_both_routes() {
    let out = hc(&[
        "resolvent", "--lambda", "0.5", "--cos", "0.3", "--terms", "400", "--format", "json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let smooth = value["smooth_sum"].as_f64().unwrap();
    let series = value["series_route"].as_f64().unwrap();
    assert!((smooth - series).abs() < 1e-6);
    assert_eq!(value["delta_coefficient"].as_f64().unwrap(), 1.0);
    assert!(value["tail_bound"].as_f64().unwrap().is_finite());
}

#[test]
fn ladder_verb_reports_all_identities() {
    for dim in ["3", "4"] {
        let out = hc(&["ladder", "--dim", dim, "--n-max", "3"]);
        assert_eq!(out.status.code(), Some(0), "dim {dim}");
        assert!(stdout(&out).contains("0 failed"));
    }
}
