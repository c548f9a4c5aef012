use dualnfg_core::nr::NormalRealization;
use dualnfg_core::verify::{run, run_all, Suite, SuiteReport, VerifyOptions};

fn show(r: &SuiteReport) {
    for p in &r.properties {
        println!("{:?} {} {}: {}", r.suite, p.name, p.passed, p.detail);
    }
}

#[test]
fn all_suites_pass() {
    let reports = run_all(&Suite::ALL, &VerifyOptions::default());
    for r in &reports {
        show(r);
        assert!(r.passed(), "{:?} failed", r.suite);
    }
    assert!(reports[1]
        .properties
        .iter()
        .any(|p| p.name == "NFGDT" && p.max_error.is_some()));
}

/// Forgetting to toggle inverters is invisible over Z2 but not over Z3.
fn no_inverters(r: &NormalRealization) -> NormalRealization {
    let mut d = r.dualize();
    for (e, orig) in d.edges.iter_mut().zip(&r.edges) {
        e.inverting = orig.inverting;
    }
    d
}

#[test]
fn faulty_dualization_is_caught() {
    let opts = VerifyOptions {
        dualize: no_inverters,
        ..VerifyOptions::default()
    };
    let r = run(Suite::Duality, &opts);
    show(&r);
    assert!(!r.passed());
    let failing: Vec<&str> = r
        .properties
        .iter()
        .filter(|p| !p.passed)
        .map(|p| p.name.as_str())
        .collect();
    assert!(failing.contains(&"NR-duality"), "{failing:?}");
}

#[test]
fn report_round_trips() {
    let opts = VerifyOptions {
        nfgdt_instances: 5,
        ..VerifyOptions::default()
    };
    let r = run(Suite::Nfgdt, &opts);
    let text = serde_json::to_string(&r).unwrap();
    let back: SuiteReport = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}
