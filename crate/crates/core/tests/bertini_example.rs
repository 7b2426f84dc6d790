use std::collections::BTreeSet;

use rigidity_core::bertini::{
    bertini_vanishings, is_generic_quadric, BertiniError, BertiniRequest, VanishingSet, DEFAULT_SAMPLES,
};
use rigidity_core::models::Model;

/// All sorted monomials of degree `k` in `n` variables.
fn monomials(n: u32, k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for m in monomials(n, k - 1) {
        let start = m.last().copied().unwrap_or(0);
        for v in start..n {
            let mut next = m.clone();
            next.push(v);
            out.push(next);
        }
    }
    out
}

fn covered(vs: &VanishingSet, n: usize, a: usize, k: usize) -> BTreeSet<(usize, Vec<u32>)> {
    let mut out = BTreeSet::new();
    for mono in monomials(n as u32, k) {
        for mu in 0..a {
            if vs.vanishes(mu, &mono) {
                out.insert((mu, mono.clone()));
            }
        }
    }
    out
}

fn request(m: &Model, q: &str, l: &[&str]) -> BertiniRequest {
    BertiniRequest {
        q: m.normal_index(q).unwrap(),
        l: l.iter().map(|s| m.tangent_index(s).unwrap()).collect(),
        part1: true,
        part2: true,
        max_order: 3,
        seed: 11,
        samples: DEFAULT_SAMPLES,
        ..Default::default()
    }
}

#[test]
fn g25_worked_example() {
    let g = Model::by_name("G(2,5)").unwrap();
    let req = request(&g, "(45)", &["(13)"]);
    let vs = bertini_vanishings(&g.quadrics, &g.tangent_labels, &g.normal_labels, &req, &|_, _| false).unwrap();

    let e13 = g.tangent_index("(13)").unwrap() as u32;
    let q45 = g.normal_index("(45)").unwrap();
    let mut want = BTreeSet::new();
    for mu in 0..g.a {
        want.insert((mu, vec![e13, e13, e13]));
    }
    for beta in 0..g.n as u32 {
        let mut mono = vec![e13, e13, beta];
        mono.sort_unstable();
        want.insert((q45, mono));
    }
    assert_eq!(covered(&vs, g.n, g.a, 3), want);
    assert!(vs.certificates.iter().any(|c| c.part == 1));
    assert!(vs.certificates.iter().any(|c| c.part == 2));
}

#[test]
fn g27_part_one_is_absent() {
    let g = Model::by_name("G(2,7)").unwrap();
    let q = g.normal_index("(45)").unwrap();
    let w = is_generic_quadric(&g.quadrics, &g.quadrics[q], 11, DEFAULT_SAMPLES);
    assert!(!w.generic);
    assert!(w.rank < w.max_rank);

    let req = request(&g, "(45)", &["(13)"]);
    let err = bertini_vanishings(&g.quadrics, &g.tangent_labels, &g.normal_labels, &req, &|_, _| false);
    assert!(matches!(err, Err(BertiniError::NotGeneric { .. })));

    // part 2 alone still applies and never reaches the other normals
    let req2 = BertiniRequest { part1: false, ..req };
    let vs = bertini_vanishings(&g.quadrics, &g.tangent_labels, &g.normal_labels, &req2, &|_, _| false).unwrap();
    assert!(vs.identities.iter().all(|i| i.part != 1));
    let got = covered(&vs, g.n, g.a, 3);
    assert!(!got.is_empty());
    assert!(got.iter().all(|(mu, _)| *mu == q));
}

#[test]
fn spinor_quadrics_are_generic() {
    let s = Model::by_name("S10").unwrap();
    for (j, q) in s.quadrics.iter().enumerate() {
        for seed in [1u64, 2024] {
            let w = is_generic_quadric(&s.quadrics, q, seed, DEFAULT_SAMPLES);
            assert!(w.generic, "q^{} seed {}", s.normal_labels[j], seed);
            assert_eq!(w.rank, w.max_rank);
        }
    }
}
