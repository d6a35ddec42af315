//! Every persisted artifact re-parses to an identical value, and re-serializing
//! the parsed value reproduces the canonical text byte for byte.

use git_topo::algebra::OrbitConvention;
use git_topo::connectivity::ConnectivityReport;
use git_topo::families::{ControlSpec, DagSpec, FamilySpec, ModelInstance, QuiverSpec, StabilityStatus};
use git_topo::harness::{random_mixed_instance, HarnessReport, TrialConfig};
use git_topo::reports::{
    canonical_json, instance_from_json, instance_to_json, parse_instance, run_analyze, run_check, run_homotopy,
    CheckOptions, CheckReport, HomotopyReport,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Serialize;

fn family() -> impl Strategy<Value = FamilySpec> {
    prop_oneof![
        (1usize..=4, 1usize..=3).prop_map(|(n, m)| FamilySpec::Control(ControlSpec::new(n, m).unwrap())),
        (1usize..=8, 1usize..=4).prop_map(|(n, k)| FamilySpec::Dag(DagSpec::new(n, k).unwrap())),
        (1usize..=3).prop_map(|a| FamilySpec::Quiver(QuiverSpec::kronecker(a))),
        Just(FamilySpec::Quiver(
            QuiverSpec::new(3, vec![(0, 1), (1, 2), (0, 2)], vec![1, 1, 1], vec![1, 1, -2]).unwrap()
        )),
    ]
}

fn round_trip<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(value: &T) {
    let text = canonical_json(value).unwrap();
    let back: T = serde_json::from_str(&text).unwrap();
    assert_eq!(&back, value);
    assert_eq!(canonical_json(&back).unwrap(), text);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instances_round_trip(spec in family(), seed in any::<u64>()) {
        let x = random_mixed_instance(&spec, 20, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let v = instance_to_json(&x);
        prop_assert_eq!(instance_from_json(&v).unwrap(), x.clone());
        prop_assert_eq!(parse_instance(&v.to_string()).unwrap(), x.clone());
        // the library's own serde form also round-trips
        let own = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<ModelInstance>(&own).unwrap(), x);
    }

    #[test]
    fn reports_round_trip(spec in family(), max_q in proptest::option::of(0u32..8), parabolic in any::<bool>()) {
        let conv = if parabolic { OrbitConvention::Parabolic } else { OrbitConvention::Centralizer };
        let r: ConnectivityReport = run_analyze(&spec, Some(conv), max_q).unwrap();
        round_trip(&r);
        let h: HomotopyReport = run_homotopy(&spec, Some(conv), max_q.unwrap_or(3), true).unwrap();
        round_trip(&h);
        round_trip(&spec);
    }

    #[test]
    fn statuses_round_trip(spec in family(), seed in any::<u64>()) {
        let x = random_mixed_instance(&spec, 9, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let st: StabilityStatus = x.status().unwrap();
        round_trip(&st);
        let c: CheckReport = run_check(&x, &CheckOptions::default()).unwrap();
        round_trip(&c);
    }
}

#[test]
fn trial_config_and_harness_report_round_trip() {
    let mut cfg = TrialConfig::new(FamilySpec::Dag(DagSpec::new(5, 2).unwrap()), u64::MAX);
    cfg.convention = Some(OrbitConvention::Parabolic);
    round_trip(&cfg);
    let r = HarnessReport {
        trials_run: 3,
        unstable_hits: 1,
        skipped: Some("why".into()),
        ..Default::default()
    };
    round_trip(&r);
}

#[test]
fn invalid_specs_rejected_on_deserialize() {
    for bad in [
        r#"{"family":"control","n":0,"m":1}"#,
        r#"{"family":"dag","n":3,"k":0}"#,
        r#"{"family":"quiver","vertex_count":2,"arrows":[[0,1]],"dim_vector":[1,1],"theta":[1,1]}"#,
    ] {
        assert!(serde_json::from_str::<FamilySpec>(bad).is_err(), "{bad}");
    }
}
