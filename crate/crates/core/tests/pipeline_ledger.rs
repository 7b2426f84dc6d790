use std::time::{Duration, Instant};

use rigidity_core::models::{Model, ModelError};
use rigidity_core::pipeline::{rigidity_verdict, Analysis, Reason, RigidityResult, RunOptions, Verdict};
use rigidity_core::rep::{IrrSum, RepEngine};
use rigidity_core::weight::Weight;

const MODELS: [&str; 5] = ["G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2"];

fn run(name: &str, opts: &RunOptions) -> (Model, RigidityResult) {
    let m = Model::by_name(name).unwrap();
    let r = rigidity_verdict(&m, RepEngine::new(m.rank()).unwrap(), opts).unwrap();
    (m, r)
}

fn analysis(m: &Model) -> Analysis<'_> {
    Analysis::new(m, RepEngine::new(m.rank()).unwrap()).unwrap()
}

fn only(s: &IrrSum) -> Weight {
    assert_eq!(s.count(), 1);
    s.iter().next().unwrap().0.clone()
}

/// Everything left after normalization, intersected with the order-four
/// filter, with `N*` discarded on both sides.
fn order4_intersection_mod_nstar(an: &Analysis) -> IrrSum {
    let mut cur = an.decompose_sk(4).unwrap();
    for (w, m) in an.n_dual.iter() {
        for _ in 0..*m {
            assert!(cur.remove_once(w));
        }
    }
    let mut filter = an.filter_order4().unwrap();
    for (w, _) in an.n_dual.iter() {
        filter.terms.remove(w);
        cur.terms.remove(w);
    }
    cur.min_intersect(&filter)
}

#[test]
fn every_model_is_rigid_with_complete_ledger() {
    for name in MODELS {
        let (_, r) = run(name, &RunOptions::default());
        assert_eq!(r.verdict, Verdict::Rigid, "{}", name);
        assert_eq!(r.orders.iter().map(|o| o.k).collect::<Vec<_>>(), vec![3, 4, 5]);
        for o in &r.orders {
            assert!(o.is_complete(), "{} order {}", name, o.k);
            assert!(o.survivors.is_empty());
            assert_eq!(o.eliminated(), o.decomposition);
            assert!(o.eliminations.iter().all(|e| !e.evidence.is_empty()));
        }
        for c in &r.dimension_checks {
            assert!(c.ok(), "{} {:?}", name, c);
        }
    }
}

#[test]
fn quadric_is_rejected() {
    for s in ["quadric", "Q5", "Q10"] {
        assert!(matches!(Model::by_name(s), Err(ModelError::QuadricExcluded)), "{}", s);
    }
    assert!(matches!(Model::by_name("G(2,4)"), Err(ModelError::GrassmannianTooSmall(4))));
    assert!(matches!(Model::by_name("E6"), Err(ModelError::Unknown(_))));
}

#[test]
fn complements_are_genuine() {
    for name in MODELS {
        let m = Model::by_name(name).unwrap();
        let an = analysis(&m);
        for (label, c) in [
            ("TT*", an.complement_tt()),
            ("NN*", an.complement_nn()),
            ("TN*", an.complement_tn()),
        ] {
            let c = c.unwrap_or_else(|e| panic!("{} {}: {}", name, label, e));
            assert!(c.iter().all(|(_, m)| *m > 0));
        }
    }
}

#[test]
fn order3_normalization_counts() {
    for (name, want) in [("G(2,5)", 3u64), ("S10", 3), ("SEG_P2xP2", 4), ("G(2,6)_AP2", 4), ("OP2", 4)] {
        let (m, r) = run(name, &RunOptions::default());
        let an = analysis(&m);
        let left = &r.orders[0].after_normalization;
        assert_eq!(an.orbit_count(left), want, "{}", name);
    }
    // the Segre model has eight components, paired by the swap
    let (_, r) = run("SEG_P2xP2", &RunOptions::default());
    assert_eq!(r.orders[0].after_normalization.count(), 8);
}

#[test]
fn g25_filter_keeps_nstar_tstar_n() {
    let (m, r) = run("G(2,5)", &RunOptions::default());
    let an = analysis(&m);
    let target = only(&an.n_dual).add(&only(&an.t_dual)).add(&only(&an.n));
    let o3 = &r.orders[0];
    assert_eq!(o3.after_normalization.mult(&target), 1);
    assert_eq!(o3.after_filter.mult(&target), 1);
    assert_eq!(o3.after_curated.mult(&target), 1);
    let e = o3.eliminations.iter().find(|e| e.weight == target).unwrap();
    assert!(matches!(e.reason, Reason::HwvBertini | Reason::HwvOrbit), "{:?}", e.reason);
}

#[test]
fn fifth_power_has_no_copy_of_n() {
    for name in MODELS {
        let (m, r) = run(name, &RunOptions::default());
        let an = analysis(&m);
        let d5 = &r.orders[2].decomposition;
        for (w, _) in an.n.iter() {
            assert_eq!(d5.mult(w), 0, "{} {}", name, an.fmt(w));
        }
        assert!(r.orders[2].after_filter.is_empty(), "{}", name);
    }
}

/// Pins what the order-four comparison actually leaves: `N*²N` (same
/// weight and charge on both sides) plus one more constituent.
#[test]
fn order4_intersection_mod_nstar_observed() {
    for name in ["G(2,5)", "S10"] {
        let m = Model::by_name(name).unwrap();
        let an = analysis(&m);
        let inter = order4_intersection_mod_nstar(&an);
        let nstar2_n = only(&an.n_dual).add(&only(&an.n_dual)).add(&only(&an.n));
        assert_eq!(inter.mult(&nstar2_n), 1, "{}", name);
        assert_eq!(inter.count(), 2, "{}", name);
    }
}

#[test]
#[ignore = "the order-four intersection modulo N* is not empty under the stated rules; see order4_intersection_mod_nstar_observed"]
fn order4_intersection_mod_nstar_is_empty() {
    for name in ["G(2,5)", "S10"] {
        let m = Model::by_name(name).unwrap();
        let an = analysis(&m);
        assert!(order4_intersection_mod_nstar(&an).is_empty(), "{}", name);
    }
}

#[test]
fn order5_workload_budget() {
    let t0 = Instant::now();
    let (_, r) = run("OP2", &RunOptions::default());
    let explicit = r
        .dimension_checks
        .iter()
        .find(|c| c.label == "explicit S^5T*⊗N basis")
        .unwrap();
    assert_eq!(explicit.actual, 15504 * 10);
    assert!(explicit.ok());
    assert!(t0.elapsed() < Duration::from_secs(120));
}

#[test]
fn equal_seeds_give_equal_results() {
    let opts = RunOptions::default();
    let (_, a) = run("S10", &opts);
    let (_, b) = run("S10", &opts);
    assert_eq!(format!("{:?}", a), format!("{:?}", b));
}

/// The support rule alone leaves survivors in every model, and the
/// verdict must say so rather than claim rigidity.
#[test]
fn support_rule_alone_is_reported_incomplete() {
    let opts = RunOptions {
        orbit_rule: false,
        ..RunOptions::default()
    };
    let mut incomplete = Vec::new();
    for name in MODELS {
        let (_, r) = run(name, &opts);
        let survivors = r.orders.iter().any(|o| !o.survivors.is_empty());
        assert_eq!(r.verdict == Verdict::Incomplete, survivors, "{}", name);
        assert!(r.orders.iter().flat_map(|o| &o.eliminations).all(|e| e.reason != Reason::HwvOrbit));
        if survivors {
            incomplete.push(name);
        }
    }
    assert_eq!(incomplete, MODELS);
}
