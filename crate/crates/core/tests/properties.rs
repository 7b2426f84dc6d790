use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidity_core::algebra::CompAlgebra;
use rigidity_core::explicit::{check_relations, hwv_space, Module, PowerModule, TensorModule};
use rigidity_core::models::Model;
use rigidity_core::pipeline::{rigidity_verdict, Analysis, RunOptions};
use rigidity_core::rep::{IrrSum, RepEngine};
use rigidity_core::weight::{build_root_data, ReductiveRank, SimpleFactor, Weight};
use std::sync::Arc;

/// Product of the two full characters, peeled from the top. A remaining
/// dominant weight is on top when it is not a lower weight of any other
/// remaining one; no Weyl reflections are involved.
fn brute_force(engine: &RepEngine, a: &Weight, b: &Weight) -> IrrSum {
    let prod = engine.character(a).unwrap().mul(&engine.character(b).unwrap());
    let dominant = |w: &Weight| w.coords.iter().all(|&c| c >= 0);
    let mut rem: BTreeMap<Weight, i64> = prod
        .terms
        .iter()
        .filter(|(w, _)| dominant(w))
        .map(|(w, m)| (w.clone(), *m))
        .collect();
    let mut out = IrrSum::new();
    while !rem.is_empty() {
        let top = rem
            .keys()
            .find(|w| {
                rem.keys()
                    .filter(|u| u != w)
                    .all(|u| engine.character(u).unwrap().mult(w) == 0)
            })
            .cloned()
            .expect("a maximal weight exists");
        let m = rem[&top];
        for (w, k) in &engine.character(&top).unwrap().terms {
            if dominant(w) {
                let e = rem.get_mut(w).expect("weight present in remainder");
                *e -= m * k;
                assert!(*e >= 0);
                if *e == 0 {
                    rem.remove(w);
                }
            }
        }
        out.add(top, m as u64);
    }
    out
}

fn ranks() -> Vec<ReductiveRank> {
    vec![
        ReductiveRank::new(vec![SimpleFactor::a(1)], 0),
        ReductiveRank::new(vec![SimpleFactor::a(2)], 0),
        ReductiveRank::new(vec![SimpleFactor::a(3)], 0),
        ReductiveRank::new(vec![SimpleFactor::a(4)], 0),
        ReductiveRank::new(vec![SimpleFactor::d(4)], 0),
        ReductiveRank::new(vec![SimpleFactor::d(5)], 0),
        ReductiveRank::new(vec![SimpleFactor::a(1), SimpleFactor::a(2)], 1),
    ]
}

fn random_weight(rng: &mut ChaCha8Rng, engine: &RepEngine, rank: &ReductiveRank) -> Weight {
    loop {
        let coords: Vec<i32> = (0..rank.semisimple_rank()).map(|_| rng.gen_range(0..=2)).collect();
        let charges: Vec<Rational64> = (0..rank.torus_dim).map(|_| Rational64::from_integer(rng.gen_range(-2..=2))).collect();
        let w = Weight::new(coords, charges);
        if engine.weyl_dimension(&w).unwrap() <= 400 {
            return w;
        }
    }
}

#[test]
fn klimyk_matches_character_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pairs = 0;
    for rank in ranks() {
        let engine = RepEngine::new(&rank).unwrap();
        for _ in 0..32 {
            let a = random_weight(&mut rng, &engine, &rank);
            let b = random_weight(&mut rng, &engine, &rank);
            let klimyk = engine.tensor_decompose(&a, &b).unwrap();
            assert_eq!(klimyk, brute_force(&engine, &a, &b), "{} ⊗ {}", engine.fmt(&a), engine.fmt(&b));
            let da = engine.weyl_dimension(&a).unwrap();
            let db = engine.weyl_dimension(&b).unwrap();
            assert_eq!(engine.irr_sum_dimension(&klimyk).unwrap(), da * db);
            pairs += 1;
        }
    }
    assert!(pairs >= 200);
}

#[test]
fn explicit_modules_satisfy_relations() {
    for name in ["G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2"] {
        let m = Model::by_name(name).unwrap();
        let rd = build_root_data(m.rank()).unwrap();
        let t: Arc<dyn Module> = Arc::new(m.tangent().clone());
        let n: Arc<dyn Module> = Arc::new(m.normal().clone());
        let td: Arc<dyn Module> = Arc::new(m.tangent().dual("t"));
        let nd: Arc<dyn Module> = Arc::new(m.normal().dual("n"));
        for (label, module) in [("T", &t), ("N", &n), ("T*", &td), ("N*", &nd)] {
            check_relations(module.as_ref(), &rd).unwrap_or_else(|e| panic!("{} {}: {}", name, label, e));
        }
        let s2: Arc<dyn Module> = Arc::new(PowerModule::symmetric(td.clone(), 2));
        check_relations(s2.as_ref(), &rd).unwrap();
        check_relations(&TensorModule::new(s2, n.clone()), &rd).unwrap();
        check_relations(&PowerModule::exterior(t.clone(), 2), &rd).unwrap();
        check_relations(&TensorModule::new(t, nd), &rd).unwrap();
        if m.n <= 10 {
            let an = Analysis::new(&m, RepEngine::new(m.rank()).unwrap()).unwrap();
            for k in [3, 4] {
                let (_, tensor) = an.sk_module(k);
                check_relations(&tensor, &rd).unwrap_or_else(|e| panic!("{} S^{}T*⊗N: {}", name, k, e));
            }
        }
    }
}

#[test]
fn highest_weight_spaces_match_multiplicities() {
    let opts = RunOptions {
        full_hwv_checks: true,
        ..RunOptions::default()
    };
    for name in ["G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2"] {
        let m = Model::by_name(name).unwrap();
        let r = rigidity_verdict(&m, RepEngine::new(m.rank()).unwrap(), &opts).unwrap();
        let mut hw = 0;
        for c in &r.dimension_checks {
            assert!(c.ok(), "{} {:?}", name, c);
            hw += c.label.starts_with("dim hwv") as usize;
        }
        let components: usize = r.orders.iter().map(|o| o.decomposition.distinct()).sum();
        assert_eq!(hw, components, "{}", name);
    }
}

#[test]
fn hwv_of_second_power() {
    let m = Model::by_name("S10").unwrap();
    let an = Analysis::new(&m, RepEngine::new(m.rank()).unwrap()).unwrap();
    let (_, tensor) = an.sk_module(2);
    for (w, mult) in an.decompose_sk(2).unwrap().iter() {
        assert_eq!(hwv_space(&tensor, w).dim() as u64, *mult);
    }
}

fn rat_vec(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

proptest! {
    #[test]
    fn norm_is_multiplicative(
        d in prop::sample::select(vec![1usize, 2, 4, 8]),
        x in prop::collection::vec(-6i64..=6, 8),
        y in prop::collection::vec(-6i64..=6, 8),
    ) {
        let alg = CompAlgebra::new(d).unwrap();
        let (x, y) = (rat_vec(&x[..d]), rat_vec(&y[..d]));
        let xy = alg.mul(&x, &y);
        prop_assert_eq!(alg.norm(&xy), alg.norm(&x) * alg.norm(&y));
    }

    #[test]
    fn tensor_dimension_is_product(a in prop::collection::vec(0i32..=3, 3), b in prop::collection::vec(0i32..=3, 3)) {
        let rank = ReductiveRank::new(vec![SimpleFactor::a(3)], 0);
        let engine = RepEngine::new(&rank).unwrap();
        let (a, b) = (Weight::new(a, vec![]), Weight::new(b, vec![]));
        let s = engine.tensor_decompose(&a, &b).unwrap();
        prop_assert_eq!(
            engine.irr_sum_dimension(&s).unwrap(),
            engine.weyl_dimension(&a).unwrap() * engine.weyl_dimension(&b).unwrap()
        );
    }
}
