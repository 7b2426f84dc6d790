//! Singular and base loci of quadric systems and the vanishing statements
//! of the higher order Bertini theorem.
//!
//! Linear spaces handed to [`bertini_vanishings`] are spanned by tangent
//! basis vectors. Every model here has a minuscule `T` (weights of
//! multiplicity one), so each torus-stable subspace is of this form, and a
//! coefficient identity is then the vanishing of a single monomial.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forms::SymMatrix;
use crate::linalg::{dense_to_row, rank_rational, Echelon};

pub const DEFAULT_SAMPLES: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BertiniError {
    #[error("part 1 needs a generic quadric; q^{{{q}}} has rank {rank} but the system reaches rank {max_rank}")]
    NotGeneric { q: String, rank: usize, max_rank: usize },
    #[error("{vector} is not in the singular locus of q^{{{q}}}")]
    NotSingular { q: String, vector: String },
    #[error("span of {span} is not in the base locus of |II|")]
    NotInBase { span: String },
    #[error("classical Bertini fails for sampled generic q^{{{q}}}: singular locus leaves the base locus")]
    ClassicalBertini { q: String },
    #[error("{span} is not in the base locus of F3: {monomial} not known to vanish")]
    NotInF3Base { span: String, monomial: String },
    #[error("{vector} is not in the singular locus of F3^q: {monomial} not known to vanish")]
    NotInF3Sing { vector: String, monomial: String },
    #[error("{0} is not a subset of the previous linear space")]
    NotNested(String),
    #[error("part {0} needs order {1} but max_order is {2}")]
    OrderTooLow(u8, usize, usize),
}

/// Exact kernel of the polarized form.
pub fn quadric_singular_space(q: &SymMatrix) -> Vec<Vec<BigRational>> {
    let n = q.len();
    let mut e = Echelon::new(n);
    for row in q {
        e.insert(dense_to_row(row));
    }
    e.nullspace()
        .into_iter()
        .map(|v| v.into_iter().map(BigRational::from_integer).collect())
        .collect()
}

/// Tangent basis vectors lying in the singular locus (rows of `q` that
/// vanish identically).
pub fn singular_basis_vectors(q: &SymMatrix) -> Vec<usize> {
    (0..q.len()).filter(|&i| q[i].iter().all(|c| c.is_zero())).collect()
}

pub fn polar(q: &SymMatrix, u: &[BigRational], v: &[BigRational]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if !vj.is_zero() && !q[i][j].is_zero() {
                acc += ui * vj * &q[i][j];
            }
        }
    }
    acc
}

pub fn in_base_locus(system: &[SymMatrix], v: &[BigRational]) -> bool {
    system.iter().all(|q| polar(q, v, v).is_zero())
}

/// Whether the whole span of `vectors` lies in the base locus, i.e. every
/// quadric vanishes on all pairs.
pub fn base_contains_span(system: &[SymMatrix], vectors: &[Vec<BigRational>]) -> bool {
    system.iter().all(|q| {
        vectors
            .iter()
            .enumerate()
            .all(|(i, u)| vectors[i..].iter().all(|v| polar(q, u, v).is_zero()))
    })
}

/// Same as [`base_contains_span`] for a span of basis vectors.
pub fn base_contains_coordinate_span(system: &[SymMatrix], idx: &[usize]) -> bool {
    system
        .iter()
        .all(|q| idx.iter().all(|&i| idx.iter().all(|&j| q[i][j].is_zero())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityWitness {
    pub generic: bool,
    pub rank: usize,
    pub max_rank: usize,
    pub samples: usize,
    pub seed: u64,
    /// Coefficients of a sampled combination of maximal rank.
    pub witness: Vec<i64>,
}

/// Rank of `q` against the maximal rank over the span of the system,
/// established by sampling integer combinations.
pub fn is_generic_quadric(system: &[SymMatrix], q: &SymMatrix, seed: u64, samples: usize) -> GenericityWitness {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = rank_rational(q);
    let mut max_rank = rank;
    let mut witness = Vec::new();
    let n = q.len();
    for _ in 0..samples {
        let coeffs: Vec<i64> = (0..system.len()).map(|_| rng.gen_range(-50i64..=50)).collect();
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for (c, qq) in coeffs.iter().zip(system) {
            if *c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(*c));
            for i in 0..n {
                for j in 0..n {
                    if !qq[i][j].is_zero() {
                        m[i][j] += &c * &qq[i][j];
                    }
                }
            }
        }
        let r = rank_rational(&m);
        if r > max_rank || witness.is_empty() && r == max_rank {
            max_rank = r;
            witness = coeffs;
        }
    }
    GenericityWitness {
        generic: rank == max_rank,
        rank,
        max_rank,
        samples,
        seed,
        witness,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum NormalSelector {
    All,
    Single(usize),
}

/// `r^{normal}_{fixed, *, ..., *} = 0` with `free` wildcard slots.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Identity {
    pub order: usize,
    pub normal: NormalSelector,
    /// Sorted tangent indices.
    pub fixed: Vec<usize>,
    pub free: usize,
    pub part: u8,
}

impl Identity {
    /// Whether the coefficient `r^mu_{mono}` is forced to vanish.
    pub fn covers(&self, mu: usize, mono: &[u32]) -> bool {
        if mono.len() != self.order {
            return false;
        }
        if let NormalSelector::Single(nu) = self.normal {
            if nu != mu {
                return false;
            }
        }
        // multiset inclusion of fixed in mono (both sorted)
        let mut it = mono.iter();
        for &f in &self.fixed {
            loop {
                match it.next() {
                    Some(&x) if x as usize == f => break,
                    Some(&x) if (x as usize) < f => continue,
                    _ => return false,
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub part: u8,
    pub q: usize,
    pub l: Vec<usize>,
    pub hypotheses: Vec<String>,
    pub genericity: Option<GenericityWitness>,
}

/// Identities with the labels needed to print them.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingSet {
    pub identities: BTreeSet<Identity>,
    pub certificates: Vec<Certificate>,
    pub tangent_labels: Vec<String>,
    pub normal_labels: Vec<String>,
}

fn bare(label: &str) -> &str {
    label.trim_start_matches('(').trim_end_matches(')')
}

impl VanishingSet {
    pub fn new(tangent_labels: &[String], normal_labels: &[String]) -> Self {
        VanishingSet {
            identities: BTreeSet::new(),
            certificates: Vec::new(),
            tangent_labels: tangent_labels.to_vec(),
            normal_labels: normal_labels.to_vec(),
        }
    }

    pub fn vanishes(&self, mu: usize, mono: &[u32]) -> bool {
        self.identities.iter().any(|id| id.covers(mu, mono))
    }

    pub fn merge(&mut self, other: VanishingSet) {
        self.identities.extend(other.identities);
        self.certificates.extend(other.certificates);
    }

    fn span_label(&self, l: &[usize]) -> String {
        span_label(&self.tangent_labels, l)
    }

    fn q_label(&self, q: usize) -> String {
        format!("q^{{{}}}", bare(&self.normal_labels[q]))
    }

    pub fn identity_string(&self, id: &Identity) -> String {
        let upper = match id.normal {
            NormalSelector::All => "mu".to_string(),
            NormalSelector::Single(nu) => bare(&self.normal_labels[nu]).to_string(),
        };
        let mut lower: String = id.fixed.iter().map(|&i| self.tangent_labels[i].clone()).collect();
        lower.push_str(&"*".repeat(id.free));
        let cert = self
            .certificates
            .iter()
            .find(|c| c.part == id.part && id.fixed.iter().all(|i| c.l.contains(i)) && matches_normal(c, id))
            .map(|c| format!(" [Bertini part {}, q={}, L={}]", c.part, self.q_label(c.q), self.span_label(&c.l)))
            .unwrap_or_default();
        let tail = if id.normal == NormalSelector::All { " for all mu" } else { "" };
        format!("r^{{{}}}_{{{}}} = 0{}{}", upper, lower, tail, cert)
    }

    pub fn strings(&self) -> Vec<String> {
        self.identities.iter().map(|id| self.identity_string(id)).collect()
    }
}

fn span_label(labels: &[String], l: &[usize]) -> String {
    let parts: Vec<String> = l.iter().map(|&i| format!("e{}", labels[i])).collect();
    format!("<{}>", parts.join(","))
}

fn matches_normal(c: &Certificate, id: &Identity) -> bool {
    match id.normal {
        NormalSelector::All => c.part == 1,
        NormalSelector::Single(nu) => nu == c.q,
    }
}

impl fmt::Display for VanishingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.strings() {
            writeln!(f, "{}", s)?;
        }
        Ok(())
    }
}

/// Which parts of the theorem to apply; nested spaces for parts 3 and 4.
#[derive(Debug, Clone, Default)]
pub struct BertiniRequest {
    pub q: usize,
    pub l: Vec<usize>,
    pub part1: bool,
    pub part2: bool,
    /// `L' ⊂ L` for part 3.
    pub l3: Option<Vec<usize>>,
    /// `L'' ⊂ L'` for part 4.
    pub l4: Option<Vec<usize>>,
    pub max_order: usize,
    pub seed: u64,
    pub samples: usize,
}

/// Multisets of size `k` drawn from `l`, sorted.
fn multisets(l: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut sorted = l.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = Vec::new();
    fn rec(s: &[usize], start: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..s.len() {
            acc.push(s[i]);
            rec(s, i, k, acc, out);
            acc.pop();
        }
    }
    rec(&sorted, 0, k, &mut Vec::new(), &mut out);
    out
}

/// Emit the identities licensed by the requested parts after checking
/// their hypotheses. `f3_vanished(mu, mono)` reports order-three
/// coefficients already known to vanish (used by parts 3 and 4).
pub fn bertini_vanishings(
    system: &[SymMatrix],
    tangent_labels: &[String],
    normal_labels: &[String],
    req: &BertiniRequest,
    f3_vanished: &dyn Fn(usize, &[u32]) -> bool,
) -> Result<VanishingSet, BertiniError> {
    let mut out = VanishingSet::new(tangent_labels, normal_labels);
    let q = &system[req.q];
    let n = q.len();
    let qname = bare(&normal_labels[req.q]).to_string();
    let span_name = |l: &[usize]| span_label(tangent_labels, l);
    let sing: BTreeSet<usize> = singular_basis_vectors(q).into_iter().collect();
    for &v in &req.l {
        if !sing.contains(&v) {
            return Err(BertiniError::NotSingular {
                q: qname.clone(),
                vector: format!("e{}", tangent_labels[v]),
            });
        }
    }
    let mut l = req.l.clone();
    l.sort_unstable();
    l.dedup();

    if req.part1 {
        let g = is_generic_quadric(system, q, req.seed, req.samples);
        if !g.generic {
            return Err(BertiniError::NotGeneric {
                q: qname,
                rank: g.rank,
                max_rank: g.max_rank,
            });
        }
        // classical Bertini as a consistency check on the full kernel
        let kernel = quadric_singular_space(q);
        if !base_contains_span(system, &kernel) {
            return Err(BertiniError::ClassicalBertini { q: qname });
        }
        for k in 3..=req.max_order.max(3) {
            if k > req.max_order {
                break;
            }
            for fixed in multisets(&l, k) {
                out.identities.insert(Identity {
                    order: k,
                    normal: NormalSelector::All,
                    fixed,
                    free: 0,
                    part: 1,
                });
            }
        }
        out.certificates.push(Certificate {
            part: 1,
            q: req.q,
            l: l.clone(),
            hypotheses: vec![
                format!("q^{{{}}} generic (rank {} = max rank)", qname, g.rank),
                format!("{} in Sing q^{{{}}}", span_name(&l), qname),
            ],
            genericity: Some(g),
        });
    }

    let needs_base = req.part2 || req.l3.is_some() || req.l4.is_some();
    if needs_base && !base_contains_coordinate_span(system, &l) {
        return Err(BertiniError::NotInBase { span: span_name(&l) });
    }
    if req.part2 {
        if req.max_order < 3 {
            return Err(BertiniError::OrderTooLow(2, 3, req.max_order));
        }
        for fixed in multisets(&l, 2) {
            out.identities.insert(Identity {
                order: 3,
                normal: NormalSelector::Single(req.q),
                fixed,
                free: 1,
                part: 2,
            });
        }
        out.certificates.push(Certificate {
            part: 2,
            q: req.q,
            l: l.clone(),
            hypotheses: vec![format!("{} in Sing q^{{{}}} and Base|II|", span_name(&l), qname)],
            genericity: None,
        });
    }

    let mono_name = |mu: usize, m: &[usize]| -> String {
        let lower: String = m.iter().map(|&i| tangent_labels[i].clone()).collect();
        format!("r^{{{}}}_{{{}}}", bare(&normal_labels[mu]), lower)
    };
    if let Some(l3) = &req.l3 {
        if req.max_order < 4 {
            return Err(BertiniError::OrderTooLow(3, 4, req.max_order));
        }
        if !l3.iter().all(|v| l.contains(v)) {
            return Err(BertiniError::NotNested(span_name(l3)));
        }
        for mu in 0..system.len() {
            for m in multisets(l3, 3) {
                let mono: Vec<u32> = m.iter().map(|&i| i as u32).collect();
                if !f3_vanished(mu, &mono) {
                    return Err(BertiniError::NotInF3Base {
                        span: span_name(l3),
                        monomial: mono_name(mu, &m),
                    });
                }
            }
        }
        for fixed in multisets(l3, 3) {
            out.identities.insert(Identity {
                order: 4,
                normal: NormalSelector::Single(req.q),
                fixed,
                free: 1,
                part: 3,
            });
        }
        let mut l3s = l3.clone();
        l3s.sort_unstable();
        out.certificates.push(Certificate {
            part: 3,
            q: req.q,
            l: l3s,
            hypotheses: vec![format!("{} in L and Base{{|II|, F3}}", span_name(l3))],
            genericity: None,
        });
    }
    if let Some(l4) = &req.l4 {
        let l3 = req.l3.as_ref().ok_or_else(|| BertiniError::NotNested(span_name(l4)))?;
        if !l4.iter().all(|v| l3.contains(v)) {
            return Err(BertiniError::NotNested(span_name(l4)));
        }
        for &v in l4 {
            for b in 0..n {
                for c in b..n {
                    let mut m = vec![v, b, c];
                    m.sort_unstable();
                    let mono: Vec<u32> = m.iter().map(|&i| i as u32).collect();
                    if !f3_vanished(req.q, &mono) {
                        return Err(BertiniError::NotInF3Sing {
                            vector: format!("e{}", tangent_labels[v]),
                            monomial: mono_name(req.q, &m),
                        });
                    }
                }
            }
        }
        for fixed in multisets(l4, 2) {
            out.identities.insert(Identity {
                order: 4,
                normal: NormalSelector::Single(req.q),
                fixed,
                free: 2,
                part: 4,
            });
        }
        let mut l4s = l4.clone();
        l4s.sort_unstable();
        out.certificates.push(Certificate {
            part: 4,
            q: req.q,
            l: l4s,
            hypotheses: vec![format!("{} in L' and Sing F3^q", span_name(l4))],
            genericity: None,
        });
    }
    Ok(out)
}

/// Maximal sets of singular basis vectors of `q` whose span lies in the
/// base locus (Bron–Kerbosch on the pairwise-null graph).
pub fn maximal_null_spans(system: &[SymMatrix], q: usize) -> Vec<Vec<usize>> {
    let cand: Vec<usize> = singular_basis_vectors(&system[q])
        .into_iter()
        .filter(|&i| system.iter().all(|s| s[i][i].is_zero()))
        .collect();
    let adj: BTreeMap<usize, BTreeSet<usize>> = cand
        .iter()
        .map(|&i| {
            let nb = cand
                .iter()
                .copied()
                .filter(|&j| j != i && system.iter().all(|s| s[i][j].is_zero()))
                .collect();
            (i, nb)
        })
        .collect();
    let mut out = Vec::new();
    fn bk(
        r: Vec<usize>,
        p: BTreeSet<usize>,
        x: BTreeSet<usize>,
        adj: &BTreeMap<usize, BTreeSet<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            if !r.is_empty() {
                let mut r = r;
                r.sort_unstable();
                out.push(r);
            }
            return;
        }
        let mut p = p;
        let mut x = x;
        for v in p.clone() {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.intersection(&adj[&v]).copied().collect();
            let x2 = x.intersection(&adj[&v]).copied().collect();
            bk(r2, p2, x2, adj, out);
            p.remove(&v);
            x.insert(v);
        }
    }
    bk(Vec::new(), cand.iter().copied().collect(), BTreeSet::new(), &adj, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Model;

    fn unit(n: usize, i: usize) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); n];
        v[i] = BigRational::from_integer(1.into());
        v
    }

    #[test]
    fn singular_spaces() {
        let g = Model::by_name("G(2,5)").unwrap();
        let q = &g.quadrics[g.normal_index("(45)").unwrap()];
        let e13 = g.tangent_index("(13)").unwrap();
        assert!(singular_basis_vectors(q).contains(&e13));
        assert_eq!(quadric_singular_space(q).len(), 2);
        let full: SymMatrix = (0..3).map(|i| unit(3, i)).collect();
        assert!(quadric_singular_space(&full).is_empty());
        let op = Model::by_name("OP2").unwrap();
        let qb = &op.quadrics[op.normal_index("b").unwrap()];
        assert_eq!(singular_basis_vectors(qb), (0..8).collect::<Vec<_>>());
        assert_eq!(quadric_singular_space(qb).len(), 8);
    }

    #[test]
    fn base_locus_membership() {
        let g = Model::by_name("G(2,5)").unwrap();
        let e13 = unit(6, g.tangent_index("(13)").unwrap());
        assert!(in_base_locus(&g.quadrics, &e13));
        let mut v = e13.clone();
        v[g.tangent_index("(24)").unwrap()] = BigRational::from_integer(1.into());
        assert!(!in_base_locus(&g.quadrics, &v));
        let s = Model::by_name("S10").unwrap();
        assert!(in_base_locus(&s.quadrics, &unit(10, s.tangent_index("(12)").unwrap())));
    }

    #[test]
    fn genericity_examples() {
        let g5 = Model::by_name("G(2,5)").unwrap();
        let i = g5.normal_index("(45)").unwrap();
        assert!(is_generic_quadric(&g5.quadrics, &g5.quadrics[i], 7, DEFAULT_SAMPLES).generic);
        let g7 = Model::by_name("G(2,7)").unwrap();
        let i = g7.normal_index("(45)").unwrap();
        let w = is_generic_quadric(&g7.quadrics, &g7.quadrics[i], 7, DEFAULT_SAMPLES);
        assert!(!w.generic);
        assert_eq!((w.rank, w.max_rank), (4, 8));
        let s = Model::by_name("S10").unwrap();
        for q in &s.quadrics {
            assert!(is_generic_quadric(&s.quadrics, q, 7, DEFAULT_SAMPLES).generic);
        }
    }

    #[test]
    fn part1_refused_for_non_generic() {
        let g7 = Model::by_name("G(2,7)").unwrap();
        let req = BertiniRequest {
            q: g7.normal_index("(45)").unwrap(),
            l: vec![g7.tangent_index("(13)").unwrap()],
            part1: true,
            part2: true,
            max_order: 3,
            samples: DEFAULT_SAMPLES,
            ..Default::default()
        };
        let r = bertini_vanishings(&g7.quadrics, &g7.tangent_labels, &g7.normal_labels, &req, &|_, _| false);
        assert!(matches!(r, Err(BertiniError::NotGeneric { .. })));
    }

    #[test]
    fn identity_coverage_and_strings() {
        let g = Model::by_name("G(2,5)").unwrap();
        let q = g.normal_index("(45)").unwrap();
        let e13 = g.tangent_index("(13)").unwrap();
        let req = BertiniRequest {
            q,
            l: vec![e13],
            part2: true,
            max_order: 3,
            ..Default::default()
        };
        let vs = bertini_vanishings(&g.quadrics, &g.tangent_labels, &g.normal_labels, &req, &|_, _| false).unwrap();
        let s = vs.strings();
        assert_eq!(s, vec!["r^{45}_{(13)(13)*} = 0 [Bertini part 2, q=q^{45}, L=<e(13)>]".to_string()]);
        let e14 = g.tangent_index("(14)").unwrap() as u32;
        assert!(vs.vanishes(q, &[e13 as u32, e13 as u32, e14]));
        assert!(!vs.vanishes(q, &[e13 as u32, e14, e14]));
        assert!(!vs.vanishes(0, &[e13 as u32, e13 as u32, e14]));
    }

    #[test]
    fn parts_three_and_four_check_f3() {
        let g = Model::by_name("G(2,5)").unwrap();
        let q = g.normal_index("(45)").unwrap();
        let l = vec![g.tangent_index("(13)").unwrap(), g.tangent_index("(23)").unwrap()];
        let req = BertiniRequest {
            q,
            l: l.clone(),
            l3: Some(l.clone()),
            l4: Some(vec![l[0]]),
            max_order: 4,
            ..Default::default()
        };
        let err = bertini_vanishings(&g.quadrics, &g.tangent_labels, &g.normal_labels, &req, &|_, _| false);
        assert!(matches!(err, Err(BertiniError::NotInF3Base { .. })));
        let ok = bertini_vanishings(&g.quadrics, &g.tangent_labels, &g.normal_labels, &req, &|_, _| true).unwrap();
        assert!(ok.identities.iter().any(|i| i.part == 3 && i.order == 4));
        assert!(ok.identities.iter().any(|i| i.part == 4 && i.free == 2));
    }

    #[test]
    fn null_spans_of_g25() {
        let g = Model::by_name("G(2,5)").unwrap();
        let q = g.normal_index("(45)").unwrap();
        let spans = maximal_null_spans(&g.quadrics, q);
        let want = vec![g.tangent_index("(13)").unwrap(), g.tangent_index("(23)").unwrap()];
        assert!(spans.contains(&want));
    }
}
