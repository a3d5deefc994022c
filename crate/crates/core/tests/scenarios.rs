use std::f64::consts::PI;
use std::path::Path;

use cavity_ising::experiments::{
    run_cluster, run_comparison, run_fig2, run_sweep, ClusterRequest, InitialState, ScenarioConfig, SweepAxis,
};
use cavity_ising::model::{Boundary, JzConvention};
use cavity_ising::Error;
use proptest::prelude::*;

fn quick_config() -> ScenarioConfig {
    let mut cfg = ScenarioConfig::fig2();
    cfg.jz_convention = JzConvention::Normalized;
    cfg.evolution.sample_count = 60;
    cfg
}

#[test]
fn shipped_config_is_the_reference_scenario() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/fig2.json");
    assert_eq!(ScenarioConfig::load(&path).unwrap(), ScenarioConfig::fig2());
}

#[test]
fn compare_csv_has_the_documented_columns() {
    let report = run_comparison(&quick_config()).unwrap();
    let csv = report.comparison_table().unwrap().to_csv_string().unwrap();
    let header = csv.lines().next().unwrap();
    assert_eq!(
        header,
        "time_ns,p_g1g2_full,p_g1g2_eff,n_photon_1_full,entropy_full,entropy_eff"
    );
    assert_eq!(csv.lines().count(), 61);
}

#[test]
fn identical_configs_write_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let mut cfg = quick_config();
        cfg.output.csv_path = Some(dir.path().join(format!("run{run}.csv")));
        cfg.output.json_path = Some(dir.path().join(format!("run{run}.json")));
        run_comparison(&cfg).unwrap().write_outputs().unwrap();
        outputs.push((
            std::fs::read(dir.path().join(format!("run{run}.csv"))).unwrap(),
            std::fs::read_to_string(dir.path().join(format!("run{run}.json"))).unwrap(),
        ));
    }
    assert_eq!(outputs[0].0, outputs[1].0);
    // the echoed output paths differ, everything else must match
    let strip = |s: &str| s.replace("run0", "runX").replace("run1", "runX");
    assert_eq!(strip(&outputs[0].1), strip(&outputs[1].1));
    assert!(!outputs[0].1.contains("duration"));
}

#[test]
fn effective_entropy_first_reaches_one_at_a_quarter_period() {
    let mut cfg = quick_config();
    let jz = 2.003205e-4;
    cfg.evolution.t_end = Some(PI / (2.0 * jz));
    cfg.evolution.sample_count = 201;
    let report = run_comparison(&cfg).unwrap();
    let e = report.effective.channel("entropy(1)").unwrap();
    let (imax, emax) = e
        .iter()
        .enumerate()
        .fold((0, 0.0), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    assert!((emax - 1.0).abs() < 1e-3);
    let t = report.effective.times[imax];
    assert!((t - PI / (4.0 * report.coupling.jz)).abs() < 0.02 * PI / jz);
}

#[test]
fn fig2_preconditions() {
    let mut cfg = ScenarioConfig::fig2();
    cfg.params.sites = 3;
    assert!(matches!(run_fig2(&cfg), Err(Error::Config(_))));
    let mut cfg = ScenarioConfig::fig2();
    cfg.initial_state = InitialState::Custom(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]);
    assert!(matches!(run_fig2(&cfg), Err(Error::Config(_))));
}

#[test]
fn unconverged_cutoff_marks_report_invalid_and_fig2_aborts() {
    let mut cfg = quick_config();
    cfg.params.n_max = 1;
    let report = run_comparison(&cfg).unwrap();
    assert!(!report.valid);
    let err = run_fig2(&cfg).unwrap_err();
    assert!(matches!(err, Error::Convergence { .. }));
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn single_value_sweep_matches_single_run() {
    let cfg = quick_config();
    let points = run_sweep(&cfg, SweepAxis::Omega, &[50.0], Some(1)).unwrap();
    let report = run_comparison(&cfg).unwrap();
    let s = points[0].summary.as_ref().unwrap();
    let d = report.discrepancy("p_g1g2").unwrap();
    assert_eq!(s.max_rel_diff, d.max_rel_diff);
    assert_eq!(s.max_abs_diff, d.max_abs_diff);
    assert_eq!(s.max_photon, report.full.max_of("n_photon(1)").unwrap());
}

#[test]
fn photon_leakage_grows_with_coupling() {
    let points = run_sweep(&quick_config(), SweepAxis::G, &[0.05, 0.1, 0.2], Some(3)).unwrap();
    let n: Vec<f64> = points.iter().map(|p| p.summary.as_ref().unwrap().max_photon).collect();
    assert!(n[0] < n[1] && n[1] < n[2], "{n:?}");
    let values: Vec<f64> = points.iter().map(|p| p.value).collect();
    assert_eq!(values, vec![0.05, 0.1, 0.2]);
}

#[test]
fn sweep_records_failures_and_continues() {
    // a detuning of 2J_c puts the k = π mode on resonance with the drive
    let points = run_sweep(&quick_config(), SweepAxis::Detuning, &[0.04, 1.0], None).unwrap();
    assert!(points[0].error.is_some(), "{:?}", points[0]);
    assert!(points[1].summary.is_some());
}

#[test]
fn sweep_rejects_bad_values() {
    let e = run_sweep(&quick_config(), SweepAxis::G, &[-0.1], None).unwrap_err();
    assert_eq!(e.exit_code(), 2);
    assert!(run_sweep(&quick_config(), SweepAxis::G, &[], None).is_err());
}

#[test]
fn cluster_size_limits() {
    let e = run_cluster(&ClusterRequest::new(13, Boundary::Open)).unwrap_err();
    assert_eq!(e.exit_code(), 4);
    let mut req = ClusterRequest::new(4, Boundary::Periodic);
    req.full_model = true;
    assert_eq!(run_cluster(&req).unwrap_err().exit_code(), 4);
    assert_eq!(
        run_cluster(&ClusterRequest::new(1, Boundary::Open))
            .unwrap_err()
            .exit_code(),
        2
    );
}

#[test]
fn cluster_reports() {
    let two = run_cluster(&ClusterRequest::new(2, Boundary::Periodic)).unwrap();
    assert!(two.pair_fidelity.unwrap() > 1.0 - 1e-12);
    let three = run_cluster(&ClusterRequest::new(3, Boundary::Periodic)).unwrap();
    assert!(three.ghz.as_ref().unwrap().equivalent);
    let four = run_cluster(&ClusterRequest::new(4, Boundary::Open)).unwrap();
    assert!(four.lu_verification.as_ref().unwrap().fidelity > 1.0 - 1e-6);
    assert!(four.stabilizers.all_plus_one(1e-10));
    let last = *four.series.channel("fidelity(generated)").unwrap().last().unwrap();
    assert!((last - 1.0).abs() < 1e-12);
    let ten = run_cluster(&ClusterRequest::new(10, Boundary::Periodic)).unwrap();
    assert!(ten.lu_verification.is_none());
    assert!(ten.stabilizers.all_plus_one(1e-10));
}

#[test]
fn full_model_cross_check_for_two_atoms() {
    let mut req = ClusterRequest::new(2, Boundary::Periodic);
    req.full_model = true;
    let f = run_cluster(&req).unwrap().full_model.unwrap();
    assert!(f.fidelity > 0.95, "{}", f.fidelity);
}

fn config_strategy() -> impl Strategy<Value = ScenarioConfig> {
    (
        2usize..=3,
        1.0f64..80.0,
        0.01f64..0.3,
        0.0f64..0.1,
        1usize..=4,
        prop_oneof![Just(Boundary::Periodic), Just(Boundary::Open)],
        prop_oneof![
            Just(JzConvention::PaperLiteral),
            Just(JzConvention::Normalized),
            Just(JzConvention::Calibrated)
        ],
        2usize..1000,
    )
        .prop_map(|(n, rabi, g, hop, n_max, boundary, conv, samples)| {
            let mut cfg = ScenarioConfig::fig2();
            cfg.params.sites = n;
            cfg.params.rabi = rabi;
            cfg.params.g = g;
            cfg.params.hopping = hop;
            cfg.params.n_max = n_max;
            cfg.params.boundary = boundary;
            cfg.jz_convention = conv;
            cfg.evolution.sample_count = samples;
            cfg.channels.push("fidelity(ghz)".into());
            cfg
        })
}

proptest! {
    #[test]
    fn config_serialization_is_idempotent(cfg in config_strategy()) {
        let once = cfg.to_json().unwrap();
        let parsed = ScenarioConfig::from_json(&once).unwrap();
        prop_assert_eq!(&parsed, &cfg);
        prop_assert_eq!(parsed.to_json().unwrap(), once);
    }
}
