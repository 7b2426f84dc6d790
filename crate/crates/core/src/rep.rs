//! Characters of irreducible modules, tensor products, symmetric and
//! exterior powers, and decomposition into irreducibles.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::weight::{
    build_root_data, format_weight, is_dominant, FactorRootData, ReductiveRank, RootData, Series, Weight,
    WeightError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("character is not Weyl-invariant at weight {0}")]
    NotWeylInvariant(String),
    #[error("character is not a genuine module: multiplicity {mult} at {weight}")]
    NotGenuine { weight: String, mult: i64 },
    #[error("highest weight {0} is not dominant")]
    NotDominant(String),
    #[error("cannot remove {0}: not a constituent")]
    MissingConstituent(String),
    #[error("dimension overflow")]
    Overflow,
}

/// Finite formal sum of weights with integer multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormalCharacter {
    pub terms: BTreeMap<Weight, i64>,
}

impl FormalCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(w: Weight) -> Self {
        let mut c = Self::new();
        c.add_term(w, 1);
        c
    }

    pub fn add_term(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of multiplicities (the dimension for a genuine module).
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add_term(w.clone(), *m);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::new();
        }
        FormalCharacter {
            terms: self.terms.iter().map(|(w, m)| (w.clone(), m * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc: HashMap<Weight, i64> = HashMap::new();
        for (a, ma) in &self.terms {
            for (b, mb) in &other.terms {
                *acc.entry(a.add(b)).or_insert(0) += ma * mb;
            }
        }
        FormalCharacter {
            terms: acc.into_iter().filter(|(_, m)| *m != 0).collect(),
        }
    }

    /// Adams operation: every weight multiplied by `k`.
    pub fn adams(&self, k: i32) -> Self {
        FormalCharacter {
            terms: self.terms.iter().map(|(w, m)| (w.scale(k), *m)).collect(),
        }
    }

    pub fn dual(&self) -> Self {
        FormalCharacter {
            terms: self.terms.iter().map(|(w, m)| (w.neg(), *m)).collect(),
        }
    }

    pub fn dominant_part(&self) -> BTreeMap<Weight, i64> {
        self.terms
            .iter()
            .filter(|(w, _)| is_dominant(w))
            .map(|(w, m)| (w.clone(), *m))
            .collect()
    }

    /// Drop all charges (restriction to the semisimple part).
    pub fn semisimple(&self) -> Self {
        let mut out = Self::new();
        for (w, m) in &self.terms {
            out.add_term(w.semisimple(), *m);
        }
        out
    }

    fn divide_exact(&self, k: i64) -> Self {
        FormalCharacter {
            terms: self
                .terms
                .iter()
                .map(|(w, m)| {
                    assert_eq!(m % k, 0, "non-integral Newton quotient");
                    (w.clone(), m / k)
                })
                .collect(),
        }
    }
}

/// Multiset of irreducible highest weights.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrSum {
    pub terms: BTreeMap<Weight, u64>,
}

impl IrrSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_weights(ws: impl IntoIterator<Item = Weight>) -> Self {
        let mut s = Self::new();
        for w in ws {
            s.add(w, 1);
        }
        s
    }

    pub fn add(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.terms.entry(w).or_insert(0) += m;
        }
    }

    pub fn mult(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Number of constituents counted with multiplicity.
    pub fn count(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, m) in &other.terms {
            out.add(w.clone(), *m);
        }
        out
    }

    /// Multiset intersection (minimum of multiplicities).
    pub fn min_intersect(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (w, m) in &self.terms {
            out.add(w.clone(), (*m).min(other.mult(w)));
        }
        out
    }

    /// Remove one copy of `w`.
    pub fn remove_once(&mut self, w: &Weight) -> bool {
        match self.terms.get_mut(w) {
            Some(m) => {
                *m -= 1;
                if *m == 0 {
                    self.terms.remove(w);
                }
                true
            }
            None => false,
        }
    }

    /// Remove `other` as a multiset; errors when it is not contained.
    pub fn subtract(&self, other: &Self, rank: &ReductiveRank) -> Result<Self, RepError> {
        let mut out = self.clone();
        for (w, m) in &other.terms {
            for _ in 0..*m {
                if !out.remove_once(w) {
                    return Err(RepError::MissingConstituent(format_weight(rank, w)));
                }
            }
        }
        Ok(out)
    }

    pub fn semisimple(&self) -> Self {
        let mut out = Self::new();
        for (w, m) in &self.terms {
            out.add(w.semisimple(), *m);
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &u64)> {
        self.terms.iter()
    }
}

/// Cache key for the dominant multiplicities of one simple-factor module.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterKey {
    pub fingerprint: String,
    pub highest: Vec<i32>,
}

impl fmt::Display for CharacterKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hw: Vec<String> = self.highest.iter().map(|c| c.to_string()).collect();
        write!(f, "{}-{}", self.fingerprint, hw.join("_"))
    }
}

/// Dominant weights with multiplicities of one simple-factor module.
pub type DominantTable = Vec<(Vec<i32>, i64)>;

/// Persistence interface for computed characters. Implementations must be
/// safe to share; loaded entries are validated before use.
pub trait CharacterStore: Send + Sync {
    fn load(&self, key: &CharacterKey) -> Option<DominantTable>;
    fn store(&self, key: &CharacterKey, table: &DominantTable);
}

/// Representation-theory engine for one reductive algebra.
pub struct RepEngine {
    pub rd: RootData,
    store: Option<Arc<dyn CharacterStore>>,
    memo: Mutex<HashMap<(usize, Vec<i32>), Arc<DominantTable>>>,
}

impl fmt::Debug for RepEngine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RepEngine").field("rank", &self.rd.rank).finish()
    }
}

impl RepEngine {
    pub fn new(rank: &ReductiveRank) -> Result<Self, RepError> {
        Ok(RepEngine {
            rd: build_root_data(rank)?,
            store: None,
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn with_store(rank: &ReductiveRank, store: Arc<dyn CharacterStore>) -> Result<Self, RepError> {
        let mut e = Self::new(rank)?;
        e.store = Some(store);
        Ok(e)
    }

    pub fn rank(&self) -> &ReductiveRank {
        &self.rd.rank
    }

    pub fn fmt(&self, w: &Weight) -> String {
        format_weight(&self.rd.rank, w)
    }

    fn check_dominant(&self, w: &Weight) -> Result<(), RepError> {
        self.rd.rank.check(w)?;
        if !is_dominant(w) {
            return Err(RepError::NotDominant(self.fmt(w)));
        }
        Ok(())
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<u128, RepError> {
        self.check_dominant(lambda)?;
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for (f, fr) in self.rd.factors.iter().enumerate() {
            let l = self.rd.factor_slice(&lambda.coords, f);
            let lr: Vec<i32> = l.iter().map(|c| c + 1).collect();
            let rho = vec![1; fr.rank()];
            for a in &fr.positive_roots_fund {
                num *= BigInt::from(fr.scaled_inner(&lr, a));
                den *= BigInt::from(fr.scaled_inner(&rho, a));
            }
        }
        (num / den).to_u128().ok_or(RepError::Overflow)
    }

    /// Dominant weights of a simple-factor module with multiplicities,
    /// computed by Freudenthal's recursion and cached.
    pub fn factor_dominant(&self, f: usize, lambda: &[i32]) -> Arc<DominantTable> {
        let key = (f, lambda.to_vec());
        if let Some(t) = self.memo.lock().expect("memo lock").get(&key) {
            return t.clone();
        }
        let fr = &self.rd.factors[f];
        let ckey = CharacterKey {
            fingerprint: self.rd.factor_fingerprint(f),
            highest: lambda.to_vec(),
        };
        let loaded = self
            .store
            .as_ref()
            .and_then(|s| s.load(&ckey))
            .filter(|t| validate_table(fr, lambda, t));
        let table = match loaded {
            Some(t) => t,
            None => {
                let t = freudenthal(fr, lambda);
                if let Some(s) = &self.store {
                    s.store(&ckey, &t);
                }
                t
            }
        };
        let table = Arc::new(table);
        self.memo
            .lock()
            .expect("memo lock")
            .insert(key, table.clone());
        table
    }

    /// Dominant part of the character of the irreducible module `lambda`.
    pub fn dominant_character(&self, lambda: &Weight) -> Result<Vec<(Weight, i64)>, RepError> {
        self.check_dominant(lambda)?;
        let mut acc: Vec<(Vec<i32>, i64)> = vec![(Vec::new(), 1)];
        for f in 0..self.rd.factors.len() {
            let t = self.factor_dominant(f, self.rd.factor_slice(&lambda.coords, f));
            let mut next = Vec::with_capacity(acc.len() * t.len());
            for (a, ma) in &acc {
                for (b, mb) in t.iter() {
                    let mut w = a.clone();
                    w.extend_from_slice(b);
                    next.push((w, ma * mb));
                }
            }
            acc = next;
        }
        Ok(acc
            .into_iter()
            .map(|(c, m)| (Weight::new(c, lambda.charges.clone()), m))
            .collect())
    }

    /// Full character of the irreducible module with highest weight `lambda`.
    pub fn character(&self, lambda: &Weight) -> Result<FormalCharacter, RepError> {
        self.check_dominant(lambda)?;
        let mut acc: Vec<(Vec<i32>, i64)> = vec![(Vec::new(), 1)];
        for (f, fr) in self.rd.factors.iter().enumerate() {
            let t = self.factor_dominant(f, self.rd.factor_slice(&lambda.coords, f));
            let mut full = Vec::new();
            for (mu, m) in t.iter() {
                for w in fr.orbit(mu) {
                    full.push((w, *m));
                }
            }
            let mut next = Vec::with_capacity(acc.len() * full.len());
            for (a, ma) in &acc {
                for (b, mb) in &full {
                    let mut w = a.clone();
                    w.extend_from_slice(b);
                    next.push((w, ma * mb));
                }
            }
            acc = next;
        }
        let mut out = FormalCharacter::new();
        for (c, m) in acc {
            out.terms.insert(Weight::new(c, lambda.charges.clone()), m);
        }
        Ok(out)
    }

    pub fn irr_sum_character(&self, s: &IrrSum) -> Result<FormalCharacter, RepError> {
        let mut out = FormalCharacter::new();
        for (w, m) in s.iter() {
            out = out.add(&self.character(w)?.scale(*m as i64));
        }
        Ok(out)
    }

    pub fn irr_sum_dimension(&self, s: &IrrSum) -> Result<u128, RepError> {
        let mut d = 0u128;
        for (w, m) in s.iter() {
            d += self.weyl_dimension(w)? * (*m as u128);
        }
        Ok(d)
    }

    /// Checks invariance under every simple reflection.
    pub fn is_weyl_invariant(&self, chi: &FormalCharacter) -> Result<(), RepError> {
        for (w, m) in &chi.terms {
            for (f, fr) in self.rd.factors.iter().enumerate() {
                let o = self.rd.rank.offset(f);
                for i in 0..fr.rank() {
                    let mut v = w.clone();
                    fr.reflect(&mut v.coords[o..o + fr.rank()], i);
                    if chi.mult(&v) != *m {
                        return Err(RepError::NotWeylInvariant(self.fmt(w)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Decompose a Weyl-invariant character into irreducibles by repeatedly
    /// peeling off the module generated by a maximal dominant weight.
    pub fn decompose(&self, chi: &FormalCharacter) -> Result<IrrSum, RepError> {
        self.is_weyl_invariant(chi)?;
        self.decompose_dominant(chi.dominant_part())
    }

    /// Decomposition from the dominant part alone (no invariance check).
    pub fn decompose_dominant(&self, mut rem: BTreeMap<Weight, i64>) -> Result<IrrSum, RepError> {
        rem.retain(|_, m| *m != 0);
        let mut out = IrrSum::new();
        while !rem.is_empty() {
            let lambda = rem
                .keys()
                .max_by(|a, b| {
                    self.rd
                        .height(a)
                        .cmp(&self.rd.height(b))
                        .then_with(|| a.coords.cmp(&b.coords))
                        .then_with(|| a.charges.cmp(&b.charges))
                })
                .cloned()
                .expect("non-empty");
            let m = rem[&lambda];
            if m < 0 {
                return Err(RepError::NotGenuine {
                    weight: self.fmt(&lambda),
                    mult: m,
                });
            }
            for (w, k) in self.dominant_character(&lambda)? {
                let e = rem.entry(w.clone()).or_insert(0);
                *e -= m * k;
                if *e < 0 {
                    return Err(RepError::NotGenuine {
                        weight: self.fmt(&w),
                        mult: *e,
                    });
                }
                if *e == 0 {
                    rem.remove(&w);
                }
            }
            out.add(lambda, m as u64);
        }
        Ok(out)
    }

    /// Tensor product of two irreducibles by Klimyk's formula.
    pub fn tensor_decompose(&self, lambda: &Weight, mu: &Weight) -> Result<IrrSum, RepError> {
        self.check_dominant(lambda)?;
        self.check_dominant(mu)?;
        let (big, small) = if self.weyl_dimension(lambda)? >= self.weyl_dimension(mu)? {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
        for (nu, m) in &self.character(small)?.terms {
            if let Some((dom, sign)) = self.rd.to_dominant_with_sign(&big.add(nu)) {
                *acc.entry(dom).or_insert(0) += sign as i64 * m;
            }
        }
        let mut out = IrrSum::new();
        for (w, m) in acc {
            if m < 0 {
                return Err(RepError::NotGenuine {
                    weight: self.fmt(&w),
                    mult: m,
                });
            }
            out.add(w, m as u64);
        }
        Ok(out)
    }

    /// Tensor product of two multisets of irreducibles.
    pub fn tensor_sums(&self, a: &IrrSum, b: &IrrSum) -> Result<IrrSum, RepError> {
        let mut out = IrrSum::new();
        for (x, mx) in a.iter() {
            for (y, my) in b.iter() {
                for (z, mz) in self.tensor_decompose(x, y)?.iter() {
                    out.add(z.clone(), mx * my * mz);
                }
            }
        }
        Ok(out)
    }

    /// Highest weight of the dual module: `-w0(lambda)`, charges negated.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        let mut out = lambda.neg();
        for (f, fr) in self.rd.factors.iter().enumerate() {
            let o = self.rd.rank.offset(f);
            let n = fr.rank();
            let src = &lambda.coords[o..o + n];
            let mapped: Vec<i32> = match fr.factor.series {
                Series::A => src.iter().rev().copied().collect(),
                Series::D => {
                    let mut v = src.to_vec();
                    if n % 2 == 1 {
                        v.swap(n - 2, n - 1);
                    }
                    v
                }
            };
            out.coords[o..o + n].copy_from_slice(&mapped);
        }
        out
    }

    pub fn dual_sum(&self, s: &IrrSum) -> IrrSum {
        let mut out = IrrSum::new();
        for (w, m) in s.iter() {
            out.add(self.dual_weight(w), *m);
        }
        out
    }
}

/// `S^k chi` by Newton's identity over Adams operations.
pub fn sym_power(chi: &FormalCharacter, k: usize) -> FormalCharacter {
    newton(chi, k, false)
}

/// `Λ^k chi` by the signed Newton identity.
pub fn ext_power(chi: &FormalCharacter, k: usize) -> FormalCharacter {
    newton(chi, k, true)
}

fn newton(chi: &FormalCharacter, k: usize, signed: bool) -> FormalCharacter {
    let zero = match chi.terms.keys().next() {
        Some(w) => Weight::zero(w.coords.len(), w.charges.len()),
        None => return FormalCharacter::new(),
    };
    let adams: Vec<FormalCharacter> = (0..=k).map(|i| chi.adams(i as i32)).collect();
    let mut h = vec![FormalCharacter::single(zero)];
    for j in 1..=k {
        let mut acc = FormalCharacter::new();
        for i in 1..=j {
            let term = adams[i].mul(&h[j - i]);
            let sign = if signed && i % 2 == 0 { -1 } else { 1 };
            acc = acc.add(&term.scale(sign));
        }
        h.push(acc.divide_exact(j as i64));
    }
    h.pop().expect("k+1 entries")
}

fn freudenthal(fr: &FactorRootData, lambda: &[i32]) -> DominantTable {
    let mut set: BTreeSet<Vec<i32>> = BTreeSet::new();
    set.insert(lambda.to_vec());
    let mut stack = vec![lambda.to_vec()];
    while let Some(mu) = stack.pop() {
        for a in &fr.positive_roots_fund {
            let nu: Vec<i32> = mu.iter().zip(a).map(|(x, y)| x - y).collect();
            if nu.iter().all(|&c| c >= 0) && set.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let mut order: Vec<Vec<i32>> = set.into_iter().collect();
    order.sort_by(|a, b| {
        fr.scaled_height(b)
            .cmp(&fr.scaled_height(a))
            .then_with(|| b.cmp(a))
    });
    let lr: Vec<i32> = lambda.iter().map(|c| c + 1).collect();
    let top = fr.scaled_inner(&lr, &lr);
    let mut mult: HashMap<Vec<i32>, i64> = HashMap::new();
    mult.insert(lambda.to_vec(), 1);
    for mu in order.iter().skip(1) {
        let mut num = 0i64;
        for a in &fr.positive_roots_fund {
            let mut nu = mu.clone();
            loop {
                for (x, y) in nu.iter_mut().zip(a) {
                    *x += y;
                }
                let (dom, _) = fr.to_dominant(&nu);
                match mult.get(&dom) {
                    Some(m) => num += m * fr.scaled_inner(&nu, a),
                    None => break,
                }
            }
        }
        let mr: Vec<i32> = mu.iter().map(|c| c + 1).collect();
        let den = top - fr.scaled_inner(&mr, &mr);
        assert!(den > 0 && (2 * num) % den == 0, "Freudenthal quotient");
        mult.insert(mu.clone(), 2 * num / den);
    }
    order.into_iter().map(|w| {
        let m = mult[&w];
        (w, m)
    }).collect()
}

/// A stored table is accepted only if it starts at the highest weight with
/// multiplicity one and its total dimension matches the Weyl formula.
fn validate_table(fr: &FactorRootData, lambda: &[i32], t: &DominantTable) -> bool {
    if t.first().map(|(w, m)| (w.as_slice(), *m)) != Some((lambda, 1)) {
        return false;
    }
    if t.iter().any(|(w, m)| *m <= 0 || w.len() != fr.rank() || w.iter().any(|&c| c < 0)) {
        return false;
    }
    let total: i64 = t.iter().map(|(w, m)| m * fr.orbit(w).len() as i64).sum();
    let lr: Vec<i32> = lambda.iter().map(|c| c + 1).collect();
    let rho = vec![1; fr.rank()];
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for a in &fr.positive_roots_fund {
        num *= BigInt::from(fr.scaled_inner(&lr, a));
        den *= BigInt::from(fr.scaled_inner(&rho, a));
    }
    BigInt::from(total) * den == num
}

/// Charge-free convenience: build a weight from coordinates only.
pub fn ss(coords: &[i32]) -> Weight {
    Weight::new(coords.to_vec(), Vec::new())
}

/// Charges from integers.
pub fn charges(cs: &[i64]) -> Vec<Rational64> {
    cs.iter().map(|&c| Rational64::from_integer(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::SimpleFactor;
    use proptest::prelude::*;

    fn engine(factors: Vec<SimpleFactor>, torus: usize) -> RepEngine {
        RepEngine::new(&ReductiveRank::new(factors, torus)).unwrap()
    }

    #[test]
    fn weyl_dimensions() {
        let e = engine(vec![SimpleFactor::d(5)], 0);
        assert_eq!(e.weyl_dimension(&ss(&[0, 0, 0, 0, 1])).unwrap(), 16);
        assert_eq!(e.weyl_dimension(&ss(&[1, 0, 0, 0, 0])).unwrap(), 10);
        assert_eq!(e.weyl_dimension(&ss(&[0, 1, 0, 0, 0])).unwrap(), 45);
        let a = engine(vec![SimpleFactor::a(4)], 0);
        assert_eq!(a.weyl_dimension(&ss(&[0, 1, 0, 0])).unwrap(), 10);
        assert_eq!(a.weyl_dimension(&ss(&[1, 0, 0, 1])).unwrap(), 24);
    }

    #[test]
    fn character_mass_matches_weyl() {
        let e = engine(vec![SimpleFactor::d(5)], 0);
        for hw in [[0, 0, 0, 0, 1], [1, 0, 0, 1, 0], [0, 1, 0, 0, 2], [2, 0, 0, 0, 0]] {
            let w = ss(&hw);
            assert_eq!(
                e.character(&w).unwrap().mass() as u128,
                e.weyl_dimension(&w).unwrap()
            );
        }
    }

    #[test]
    fn a1_tensor_is_clebsch_gordan() {
        let e = engine(vec![SimpleFactor::a(1)], 0);
        let d = e.tensor_decompose(&ss(&[2]), &ss(&[3])).unwrap();
        assert_eq!(d, IrrSum::from_weights([ss(&[5]), ss(&[3]), ss(&[1])]));
    }

    #[test]
    fn decompose_rejects_non_genuine() {
        let e = engine(vec![SimpleFactor::a(1)], 0);
        let chi = e.character(&ss(&[1])).unwrap().sub(&e.character(&ss(&[3])).unwrap());
        assert!(matches!(e.decompose(&chi), Err(RepError::NotGenuine { .. })));
        let mut bad = FormalCharacter::new();
        bad.add_term(ss(&[1]), 1);
        assert!(matches!(e.decompose(&bad), Err(RepError::NotWeylInvariant(_))));
    }

    #[test]
    fn spinor_symmetric_square() {
        // S^2 of the half-spin module of D5 is Λ^5_+ (126) plus the vector (10).
        let e = engine(vec![SimpleFactor::d(5)], 0);
        let s = e.character(&ss(&[0, 0, 0, 0, 1])).unwrap();
        let d = e.decompose(&sym_power(&s, 2)).unwrap();
        assert_eq!(d, IrrSum::from_weights([ss(&[0, 0, 0, 0, 2]), ss(&[1, 0, 0, 0, 0])]));
        let d = e.decompose(&ext_power(&s, 2)).unwrap();
        assert_eq!(d, IrrSum::from_weights([ss(&[0, 0, 1, 0, 0])]));
    }

    #[test]
    fn dual_weights() {
        let e = engine(vec![SimpleFactor::a(3), SimpleFactor::d(5)], 1);
        let w = Weight::new(vec![1, 0, 2, 0, 0, 0, 1, 0], charges(&[3]));
        let d = e.dual_weight(&w);
        assert_eq!(d.coords, vec![2, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(d.charges, charges(&[-3]));
    }

    #[test]
    fn height_order_not_lexicographic() {
        // (0,3) and (1,1) in A2: the peel must start at the higher weight (0,3)
        // even though (1,1) is lexicographically larger.
        let e = engine(vec![SimpleFactor::a(2)], 0);
        let chi = e.character(&ss(&[0, 3])).unwrap().add(&e.character(&ss(&[1, 1])).unwrap());
        let d = e.decompose(&chi).unwrap();
        assert_eq!(d, IrrSum::from_weights([ss(&[0, 3]), ss(&[1, 1])]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn tensor_dimension_multiplies(a in proptest::collection::vec(0i32..3, 3), b in proptest::collection::vec(0i32..3, 3)) {
            let e = engine(vec![SimpleFactor::a(3)], 0);
            let (la, lb) = (ss(&a), ss(&b));
            let prod = e.tensor_decompose(&la, &lb).unwrap();
            prop_assert_eq!(
                e.irr_sum_dimension(&prod).unwrap(),
                e.weyl_dimension(&la).unwrap() * e.weyl_dimension(&lb).unwrap()
            );
            // Klimyk agrees with decomposing the product character.
            let chi = e.character(&la).unwrap().mul(&e.character(&lb).unwrap());
            prop_assert_eq!(e.decompose(&chi).unwrap(), prod);
        }

        #[test]
        fn d4_sym_power_dimension(k in 1usize..4, hw in 0usize..4) {
            let e = engine(vec![SimpleFactor::d(4)], 0);
            let mut c = vec![0; 4];
            c[hw] = 1;
            let chi = e.character(&ss(&c)).unwrap();
            let n = chi.mass() as u128;
            let s = e.decompose(&sym_power(&chi, k)).unwrap();
            let binom = (0..k as u128).fold(1u128, |acc, i| acc * (n + i) / (i + 1));
            prop_assert_eq!(e.irr_sum_dimension(&s).unwrap(), binom);
        }
    }
}
