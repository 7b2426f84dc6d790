//! Explicit modules: weight bases with sparse Chevalley generators, built
//! from defining representations by dual, tensor, symmetric and exterior
//! power functors. Large functor modules are evaluated lazily.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{integer_row, Echelon, SparseRow};
use crate::rep::FormalCharacter;
use crate::weight::{ReductiveRank, RootData, Series, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error("bracket [e{i}, f{j}] fails on basis vector {vector}")]
    Bracket { i: usize, j: usize, vector: String },
    #[error("Serre relation between {i} and {j} fails on basis vector {vector}")]
    Serre { i: usize, j: usize, vector: String },
    #[error("generator {k} does not shift weights by the simple root on {vector}")]
    WeightShift { k: usize, vector: String },
}

/// Sparse image of a basis vector.
pub type Image = Vec<(usize, Rational64)>;

pub trait Module: Send + Sync {
    fn dim(&self) -> usize;
    fn n_simple(&self) -> usize;
    fn weight(&self, i: usize) -> Weight;
    fn e(&self, k: usize, i: usize) -> Image;
    fn f(&self, k: usize, i: usize) -> Image;
    fn weight_index(&self) -> &BTreeMap<Weight, Vec<usize>>;
    fn label(&self, i: usize) -> String;

    fn basis_of_weight(&self, w: &Weight) -> &[usize] {
        self.weight_index().get(w).map(|v| v.as_slice()).unwrap_or(&[])
    }

    fn character(&self) -> FormalCharacter {
        let mut c = FormalCharacter::new();
        for (w, v) in self.weight_index() {
            c.add_term(w.clone(), v.len() as i64);
        }
        c
    }
}

impl fmt::Debug for dyn Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dim={})", self.dim())
    }
}

pub type ModuleRef = Arc<dyn Module>;

fn accumulate(acc: &mut HashMap<usize, Rational64>, i: usize, c: Rational64) {
    let e = acc.entry(i).or_insert_with(Rational64::zero);
    *e += c;
}

fn finish(acc: HashMap<usize, Rational64>) -> Image {
    let mut v: Image = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    v.sort_by_key(|e| e.0);
    v
}

fn index_weights(n: usize, w: impl Fn(usize) -> Weight) -> BTreeMap<Weight, Vec<usize>> {
    let mut idx: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        idx.entry(w(i)).or_default().push(i);
    }
    idx
}

/// Module given by explicit sparse matrices.
#[derive(Debug, Clone)]
pub struct MatrixModule {
    pub weights: Vec<Weight>,
    pub labels: Vec<String>,
    /// `e[k][i]` is the image of basis vector `i` under `e_k`.
    pub e: Vec<Vec<Image>>,
    pub f: Vec<Vec<Image>>,
    index: BTreeMap<Weight, Vec<usize>>,
}

impl MatrixModule {
    pub fn new(weights: Vec<Weight>, labels: Vec<String>, e: Vec<Vec<Image>>, f: Vec<Vec<Image>>) -> Self {
        let w2 = weights.clone();
        let index = index_weights(weights.len(), |i| w2[i].clone());
        MatrixModule {
            weights,
            labels,
            e,
            f,
            index,
        }
    }

    /// Dual module: weights negated, generators act by minus the transpose.
    pub fn dual(&self, prefix: &str) -> MatrixModule {
        let n = self.weights.len();
        let transpose = |ops: &Vec<Vec<Image>>| -> Vec<Vec<Image>> {
            ops.iter()
                .map(|op| {
                    let mut t: Vec<Image> = vec![Vec::new(); n];
                    for (i, img) in op.iter().enumerate() {
                        for (j, c) in img {
                            t[*j].push((i, -c));
                        }
                    }
                    for col in t.iter_mut() {
                        col.sort_by_key(|e| e.0);
                    }
                    t
                })
                .collect()
        };
        MatrixModule::new(
            self.weights.iter().map(|w| w.neg()).collect(),
            self.labels.iter().map(|l| format!("{prefix}{l}")).collect(),
            transpose(&self.e),
            transpose(&self.f),
        )
    }

    /// Direct sum with shifted indices.
    pub fn direct_sum(parts: &[&MatrixModule]) -> MatrixModule {
        let mut weights = Vec::new();
        let mut labels = Vec::new();
        let ns = parts.first().map(|p| p.e.len()).unwrap_or(0);
        let mut e: Vec<Vec<Image>> = vec![Vec::new(); ns];
        let mut f: Vec<Vec<Image>> = vec![Vec::new(); ns];
        let mut off = 0;
        for p in parts {
            weights.extend(p.weights.iter().cloned());
            labels.extend(p.labels.iter().cloned());
            for k in 0..ns {
                for img in &p.e[k] {
                    e[k].push(img.iter().map(|(j, c)| (j + off, *c)).collect());
                }
                for img in &p.f[k] {
                    f[k].push(img.iter().map(|(j, c)| (j + off, *c)).collect());
                }
            }
            off += p.weights.len();
        }
        MatrixModule::new(weights, labels, e, f)
    }

    /// Replace central charges on every weight.
    pub fn with_charges(mut self, charges: &[Rational64]) -> Self {
        for w in self.weights.iter_mut() {
            w.charges = charges.to_vec();
        }
        let w2 = self.weights.clone();
        self.index = index_weights(w2.len(), |i| w2[i].clone());
        self
    }
}

impl Module for MatrixModule {
    fn dim(&self) -> usize {
        self.weights.len()
    }
    fn n_simple(&self) -> usize {
        self.e.len()
    }
    fn weight(&self, i: usize) -> Weight {
        self.weights[i].clone()
    }
    fn e(&self, k: usize, i: usize) -> Image {
        self.e[k][i].clone()
    }
    fn f(&self, k: usize, i: usize) -> Image {
        self.f[k][i].clone()
    }
    fn weight_index(&self) -> &BTreeMap<Weight, Vec<usize>> {
        &self.index
    }
    fn label(&self, i: usize) -> String {
        self.labels[i].clone()
    }
}

/// Tensor product `A ⊗ B` with basis index `i * dim(B) + j`.
pub struct TensorModule {
    a: ModuleRef,
    b: ModuleRef,
    index: BTreeMap<Weight, Vec<usize>>,
}

impl TensorModule {
    pub fn new(a: ModuleRef, b: ModuleRef) -> Self {
        let db = b.dim();
        let mut index: BTreeMap<Weight, Vec<usize>> = BTreeMap::new();
        for (wa, ia) in a.weight_index() {
            for (wb, ib) in b.weight_index() {
                let entry = index.entry(wa.add(wb)).or_default();
                for x in ia {
                    for y in ib {
                        entry.push(x * db + y);
                    }
                }
            }
        }
        for v in index.values_mut() {
            v.sort_unstable();
        }
        TensorModule { a, b, index }
    }

    pub fn split(&self, i: usize) -> (usize, usize) {
        (i / self.b.dim(), i % self.b.dim())
    }

    fn leibniz(&self, i: usize, op: impl Fn(&ModuleRef, usize) -> Image) -> Image {
        let (x, y) = self.split(i);
        let db = self.b.dim();
        let mut acc = HashMap::new();
        for (x2, c) in op(&self.a, x) {
            accumulate(&mut acc, x2 * db + y, c);
        }
        for (y2, c) in op(&self.b, y) {
            accumulate(&mut acc, x * db + y2, c);
        }
        finish(acc)
    }
}

impl Module for TensorModule {
    fn dim(&self) -> usize {
        self.a.dim() * self.b.dim()
    }
    fn n_simple(&self) -> usize {
        self.a.n_simple()
    }
    fn weight(&self, i: usize) -> Weight {
        let (x, y) = self.split(i);
        self.a.weight(x).add(&self.b.weight(y))
    }
    fn e(&self, k: usize, i: usize) -> Image {
        self.leibniz(i, |m, v| m.e(k, v))
    }
    fn f(&self, k: usize, i: usize) -> Image {
        self.leibniz(i, |m, v| m.f(k, v))
    }
    fn weight_index(&self) -> &BTreeMap<Weight, Vec<usize>> {
        &self.index
    }
    fn label(&self, i: usize) -> String {
        let (x, y) = self.split(i);
        format!("{}⊗{}", self.a.label(x), self.b.label(y))
    }
}

/// Symmetric (`alternating = false`) or exterior power of a module, on the
/// monomial basis indexed by sorted tuples of base indices.
pub struct PowerModule {
    base: ModuleRef,
    alternating: bool,
    basis: Vec<Vec<u32>>,
    lookup: HashMap<Vec<u32>, usize>,
    index: BTreeMap<Weight, Vec<usize>>,
}

impl PowerModule {
    pub fn symmetric(base: ModuleRef, k: usize) -> Self {
        Self::build(base, k, false)
    }

    pub fn exterior(base: ModuleRef, k: usize) -> Self {
        Self::build(base, k, true)
    }

    fn build(base: ModuleRef, k: usize, alternating: bool) -> Self {
        let n = base.dim() as u32;
        let mut basis = Vec::new();
        let mut cur: Vec<u32> = Vec::with_capacity(k);
        fn rec(n: u32, k: usize, start: u32, strict: bool, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for a in start..n {
                cur.push(a);
                rec(n, k, if strict { a + 1 } else { a }, strict, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, alternating, &mut cur, &mut basis);
        let lookup = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let base_weights: Vec<Weight> = (0..base.dim()).map(|i| base.weight(i)).collect();
        let zero = base_weights
            .first()
            .map(|w| Weight::zero(w.coords.len(), w.charges.len()))
            .unwrap_or_else(|| Weight::zero(0, 0));
        let index = index_weights(basis.len(), |i| {
            basis[i]
                .iter()
                .fold(zero.clone(), |acc, &a| acc.add(&base_weights[a as usize]))
        });
        PowerModule {
            base,
            alternating,
            basis,
            lookup,
            index,
        }
    }

    pub fn monomial(&self, i: usize) -> &[u32] {
        &self.basis[i]
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn base(&self) -> &ModuleRef {
        &self.base
    }

    fn derivation(&self, i: usize, op: impl Fn(usize) -> Image) -> Image {
        let m = &self.basis[i];
        let mut acc = HashMap::new();
        let mut pos = 0;
        while pos < m.len() {
            let a = m[pos];
            let mut count = 1;
            while pos + count < m.len() && m[pos + count] == a {
                count += 1;
            }
            for (b, c) in op(a as usize) {
                let b = b as u32;
                let mut next: Vec<u32> = m.clone();
                next.remove(pos);
                if self.alternating {
                    if next.contains(&b) {
                        continue;
                    }
                    // Sign of moving b from slot `pos` to its sorted slot.
                    let dest = next.partition_point(|&x| x < b);
                    let sign = if (dest as isize - pos as isize).abs() % 2 == 0 { 1 } else { -1 };
                    next.insert(dest, b);
                    accumulate(&mut acc, self.lookup[&next], c * Rational64::from_integer(sign));
                } else {
                    let dest = next.partition_point(|&x| x < b);
                    next.insert(dest, b);
                    accumulate(&mut acc, self.lookup[&next], c * Rational64::from_integer(count as i64));
                }
            }
            pos += count;
        }
        finish(acc)
    }
}

impl Module for PowerModule {
    fn dim(&self) -> usize {
        self.basis.len()
    }
    fn n_simple(&self) -> usize {
        self.base.n_simple()
    }
    fn weight(&self, i: usize) -> Weight {
        let mut it = self.basis[i].iter();
        let first = self.base.weight(*it.next().expect("positive power") as usize);
        it.fold(first, |acc, &a| acc.add(&self.base.weight(a as usize)))
    }
    fn e(&self, k: usize, i: usize) -> Image {
        self.derivation(i, |a| self.base.e(k, a))
    }
    fn f(&self, k: usize, i: usize) -> Image {
        self.derivation(i, |a| self.base.f(k, a))
    }
    fn weight_index(&self) -> &BTreeMap<Weight, Vec<usize>> {
        &self.index
    }
    fn label(&self, i: usize) -> String {
        let sep = if self.alternating { "∧" } else { "·" };
        self.basis[i]
            .iter()
            .map(|&a| self.base.label(a as usize))
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Space of highest-weight vectors of a given weight.
#[derive(Debug, Clone)]
pub struct HwvSpace {
    pub weight: Weight,
    pub basis: Vec<usize>,
    /// Each vector lists integer coefficients aligned with `basis`.
    pub vectors: Vec<Vec<BigInt>>,
}

impl HwvSpace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Basis vectors occurring with non-zero coefficient in some hwv.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(k, _)| self.vectors.iter().any(|v| !v[*k].is_zero()))
            .map(|(_, b)| *b)
            .collect();
        s.sort_unstable();
        s
    }

    /// Restrict to vectors vanishing on every basis index in `killed`:
    /// returns the dimension of that subspace.
    pub fn surviving_dim(&self, killed: &std::collections::BTreeSet<usize>) -> usize {
        let cols: Vec<usize> = (0..self.basis.len())
            .filter(|k| killed.contains(&self.basis[*k]))
            .collect();
        if cols.is_empty() {
            return self.dim();
        }
        // Solve for combinations sum c_j v_j with every killed coordinate zero.
        let mut ech = Echelon::new(self.vectors.len());
        for k in cols {
            let row: SparseRow = self
                .vectors
                .iter()
                .enumerate()
                .filter(|(_, v)| !v[k].is_zero())
                .map(|(j, v)| (j, v[k].clone()))
                .collect();
            ech.insert(row);
        }
        self.vectors.len() - ech.rank()
    }
}

/// Kernel of all `e_k` on the weight space of `lambda`.
pub fn hwv_space(m: &dyn Module, lambda: &Weight) -> HwvSpace {
    let basis: Vec<usize> = m.basis_of_weight(lambda).to_vec();
    let mut columns: BTreeMap<(usize, usize), Vec<(usize, Rational64)>> = BTreeMap::new();
    for (col, &b) in basis.iter().enumerate() {
        for k in 0..m.n_simple() {
            for (t, c) in m.e(k, b) {
                columns.entry((k, t)).or_default().push((col, c));
            }
        }
    }
    let mut ech = Echelon::new(basis.len());
    for (_, entries) in columns {
        let row: Vec<(usize, BigRational)> = entries
            .into_iter()
            .map(|(c, v)| (c, BigRational::new(BigInt::from(*v.numer()), BigInt::from(*v.denom()))))
            .collect();
        let mut r = row;
        r.sort_by_key(|e| e.0);
        ech.insert(integer_row(&r));
    }
    HwvSpace {
        weight: lambda.clone(),
        basis,
        vectors: ech.nullspace(),
    }
}

/// Check `[e_i, f_j] = δ_ij h_i`, weight shifts, and the Serre relations on
/// every basis vector.
pub fn check_relations(m: &dyn Module, rd: &RootData) -> Result<(), ModuleError> {
    let n = m.n_simple();
    let apply = |op: &dyn Fn(usize) -> Image, v: &HashMap<usize, Rational64>| -> HashMap<usize, Rational64> {
        let mut acc = HashMap::new();
        for (i, c) in v {
            for (j, d) in op(*i) {
                accumulate(&mut acc, j, *c * d);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc
    };
    let neighbours = |i: usize, j: usize| -> bool {
        let (fi, ni) = rd.rank.locate(i);
        let (fj, nj) = rd.rank.locate(j);
        fi == fj && rd.factors[fi].cartan[ni][nj] == -1
    };
    for v in 0..m.dim() {
        let wv = m.weight(v);
        let unit: HashMap<usize, Rational64> = [(v, Rational64::one())].into_iter().collect();
        for k in 0..n {
            let alpha = rd.simple_root(k);
            for (t, _) in m.e(k, v) {
                if m.weight(t) != wv.add(&alpha) {
                    return Err(ModuleError::WeightShift { k, vector: m.label(v) });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ef = apply(&|x| m.e(i, x), &apply(&|x| m.f(j, x), &unit));
                let fe = apply(&|x| m.f(j, x), &apply(&|x| m.e(i, x), &unit));
                let mut diff = ef;
                for (k, c) in fe {
                    accumulate(&mut diff, k, -c);
                }
                if i == j {
                    accumulate(&mut diff, v, -Rational64::from_integer(wv.coords[i] as i64));
                }
                diff.retain(|_, c| !c.is_zero());
                if !diff.is_empty() {
                    return Err(ModuleError::Bracket { i, j, vector: m.label(v) });
                }
                if i == j {
                    continue;
                }
                for raising in [true, false] {
                    let op = |k: usize, x: usize| if raising { m.e(k, x) } else { m.f(k, x) };
                    let rel = if neighbours(i, j) {
                        // x_i^2 x_j - 2 x_i x_j x_i + x_j x_i^2
                        let a = apply(&|x| op(i, x), &apply(&|x| op(i, x), &apply(&|x| op(j, x), &unit)));
                        let b = apply(&|x| op(i, x), &apply(&|x| op(j, x), &apply(&|x| op(i, x), &unit)));
                        let c = apply(&|x| op(j, x), &apply(&|x| op(i, x), &apply(&|x| op(i, x), &unit)));
                        let mut r = a;
                        for (k, x) in b {
                            accumulate(&mut r, k, x * Rational64::from_integer(-2));
                        }
                        for (k, x) in c {
                            accumulate(&mut r, k, x);
                        }
                        r
                    } else {
                        let a = apply(&|x| op(i, x), &apply(&|x| op(j, x), &unit));
                        let b = apply(&|x| op(j, x), &apply(&|x| op(i, x), &unit));
                        let mut r = a;
                        for (k, x) in b {
                            accumulate(&mut r, k, -x);
                        }
                        r
                    };
                    if rel.values().any(|c| !c.is_zero()) {
                        return Err(ModuleError::Serre { i, j, vector: m.label(v) });
                    }
                }
            }
        }
    }
    Ok(())
}

fn unit(x: i64) -> Rational64 {
    Rational64::from_integer(x)
}

/// Defining representation of one simple factor, embedded in a reductive
/// rank at factor position `factor` with the given charges. Generators of
/// other factors act by zero.
pub fn defining_module(rank: &ReductiveRank, factor: usize, kind: Defining, charges: &[Rational64]) -> MatrixModule {
    let fac = &rank.factors[factor];
    let n = fac.rank;
    let off = rank.offset(factor);
    let total = rank.semisimple_rank();
    // eps-vectors of basis, local e/f as (node, src, dst, coeff) lists.
    let mut eps: Vec<Vec<Rational64>> = Vec::new();
    let mut labels = Vec::new();
    let mut ops: Vec<(usize, bool, usize, usize, i64)> = Vec::new();
    match (fac.series, kind) {
        (Series::A, Defining::Standard) => {
            for k in 0..=n {
                let mut v = vec![unit(0); n + 1];
                v[k] = unit(1);
                eps.push(v);
                labels.push(format!("v{}", k + 1));
            }
            for i in 0..n {
                ops.push((i, true, i + 1, i, 1));
                ops.push((i, false, i, i + 1, 1));
            }
        }
        (Series::D, Defining::Vector) => {
            // basis v1..vn, v-n..v-1 at indices 0..n-1, n..2n-1
            let pos = |k: usize| k - 1;
            let neg = |k: usize| 2 * n - k;
            for k in 1..=n {
                let mut v = vec![unit(0); n];
                v[k - 1] = unit(1);
                eps.push(v);
                labels.push(format!("v{k}"));
            }
            for k in (1..=n).rev() {
                let mut v = vec![unit(0); n];
                v[k - 1] = unit(-1);
                eps.push(v);
                labels.push(format!("v-{k}"));
            }
            for i in 1..n {
                ops.push((i - 1, true, pos(i + 1), pos(i), 1));
                ops.push((i - 1, true, neg(i), neg(i + 1), -1));
                ops.push((i - 1, false, pos(i), pos(i + 1), 1));
                ops.push((i - 1, false, neg(i + 1), neg(i), -1));
            }
            ops.push((n - 1, true, neg(n), pos(n - 1), 1));
            ops.push((n - 1, true, neg(n - 1), pos(n), -1));
            ops.push((n - 1, false, pos(n - 1), neg(n), 1));
            ops.push((n - 1, false, pos(n), neg(n - 1), -1));
        }
        (Series::D, Defining::HalfSpin) => {
            // Even subsets of {1..n}; empty set is the highest vector.
            let subsets: Vec<u32> = (0u32..(1 << n)).filter(|s| s.count_ones() % 2 == 0).collect();
            let idx: HashMap<u32, usize> = subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
            let half = Rational64::new(1, 2);
            for s in &subsets {
                eps.push((0..n).map(|k| if s & (1 << k) != 0 { -half } else { half }).collect());
                let members: Vec<String> = (0..n).filter(|k| s & (1 << k) != 0).map(|k| (k + 1).to_string()).collect();
                labels.push(format!("s{{{}}}", members.join("")));
            }
            // Fermionic operators on bitsets (bit k = index k+1).
            let sign_before = |s: u32, j: usize| -> i64 {
                if (s & ((1u32 << j) - 1)).count_ones().is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            };
            let annihilate = |s: u32, j: usize| -> Option<(u32, i64)> {
                if s & (1 << j) == 0 {
                    None
                } else {
                    Some((s & !(1 << j), sign_before(s, j)))
                }
            };
            let create = |s: u32, j: usize| -> Option<(u32, i64)> {
                if s & (1 << j) != 0 {
                    None
                } else {
                    Some((s | (1 << j), sign_before(s, j)))
                }
            };
            for &s in &subsets {
                let src = idx[&s];
                for i in 0..n - 1 {
                    // e_i = a†_{i+1} a_i, f_i = a†_i a_{i+1} (0-based bits i, i+1)
                    if let Some((t, c1)) = annihilate(s, i) {
                        if let Some((t, c2)) = create(t, i + 1) {
                            ops.push((i, true, src, idx[&t], c1 * c2));
                        }
                    }
                    if let Some((t, c1)) = annihilate(s, i + 1) {
                        if let Some((t, c2)) = create(t, i) {
                            ops.push((i, false, src, idx[&t], c1 * c2));
                        }
                    }
                }
                // e_n = a_{n-1} a_n, f_n = a†_n a†_{n-1}
                if let Some((t, c1)) = annihilate(s, n - 1) {
                    if let Some((t, c2)) = annihilate(t, n - 2) {
                        ops.push((n - 1, true, src, idx[&t], c1 * c2));
                    }
                }
                if let Some((t, c1)) = create(s, n - 2) {
                    if let Some((t, c2)) = create(t, n - 1) {
                        ops.push((n - 1, false, src, idx[&t], c1 * c2));
                    }
                }
            }
        }
        (s, k) => panic!("no defining module {k:?} for series {s}"),
    }
    let roots = crate::weight::FactorRootData::build(fac).expect("valid factor").simple_roots_eps;
    let dim = eps.len();
    let weights: Vec<Weight> = eps
        .iter()
        .map(|v| {
            let mut coords = vec![0i32; total];
            for (i, a) in roots.iter().enumerate() {
                let p = v.iter().zip(a).fold(Rational64::zero(), |s, (x, y)| s + x * y);
                assert!(p.is_integer());
                coords[off + i] = p.to_integer() as i32;
            }
            Weight::new(coords, charges.to_vec())
        })
        .collect();
    let mut e: Vec<Vec<Image>> = vec![vec![Vec::new(); dim]; total];
    let mut f: Vec<Vec<Image>> = vec![vec![Vec::new(); dim]; total];
    for (node, raising, src, dst, c) in ops {
        let target = if raising { &mut e } else { &mut f };
        target[off + node][src].push((dst, unit(c)));
    }
    for ops in [&mut e, &mut f] {
        for op in ops.iter_mut() {
            for img in op.iter_mut() {
                img.sort_by_key(|x| x.0);
            }
        }
    }
    MatrixModule::new(weights, labels, e, f)
}

/// Trivial one-dimensional module with the given charges.
pub fn trivial_module(rank: &ReductiveRank, charges: &[Rational64]) -> MatrixModule {
    let total = rank.semisimple_rank();
    MatrixModule::new(
        vec![Weight::new(vec![0; total], charges.to_vec())],
        vec!["1".into()],
        vec![vec![Vec::new()]; total],
        vec![vec![Vec::new()]; total],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Defining {
    /// `C^{n+1}` for type A.
    Standard,
    /// `C^{2n}` for type D.
    Vector,
    /// Half-spin module with highest weight `ω_n` for type D.
    HalfSpin,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{charges, sym_power, RepEngine};
    use crate::weight::{build_root_data, SimpleFactor};

    fn arc(m: impl Module + 'static) -> ModuleRef {
        Arc::new(m)
    }

    #[test]
    fn defining_modules_satisfy_relations() {
        let cases = [
            (SimpleFactor::a(1), Defining::Standard),
            (SimpleFactor::a(3), Defining::Standard),
            (SimpleFactor::d(3), Defining::Vector),
            (SimpleFactor::d(4), Defining::Vector),
            (SimpleFactor::d(5), Defining::Vector),
            (SimpleFactor::d(4), Defining::HalfSpin),
            (SimpleFactor::d(5), Defining::HalfSpin),
        ];
        for (fac, kind) in cases {
            let rank = ReductiveRank::new(vec![fac.clone()], 0);
            let rd = build_root_data(&rank).unwrap();
            let m = defining_module(&rank, 0, kind, &[]);
            check_relations(&m, &rd).unwrap_or_else(|e| panic!("{fac:?} {kind:?}: {e}"));
            check_relations(&m.dual("d"), &rd).unwrap();
            let eng = RepEngine::new(&rank).unwrap();
            let hw = m.character().dominant_part().into_keys().max_by_key(|w| eng.rd.height(w)).unwrap();
            assert_eq!(eng.character(&hw).unwrap(), m.character(), "{fac:?} {kind:?}");
        }
    }

    #[test]
    fn half_spin_highest_weight() {
        let rank = ReductiveRank::new(vec![SimpleFactor::d(5)], 0);
        let m = defining_module(&rank, 0, Defining::HalfSpin, &[]);
        assert_eq!(m.weights[0].coords, vec![0, 0, 0, 0, 1]);
        let v = defining_module(&rank, 0, Defining::Vector, &[]);
        assert_eq!(v.weights[0].coords, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn functors_preserve_relations_and_characters() {
        let rank = ReductiveRank::new(vec![SimpleFactor::a(1), SimpleFactor::a(2)], 1);
        let rd = build_root_data(&rank).unwrap();
        let u = defining_module(&rank, 0, Defining::Standard, &charges(&[1]));
        let w = defining_module(&rank, 1, Defining::Standard, &charges(&[0]));
        let uw = arc(TensorModule::new(arc(u.clone()), arc(w.dual("d"))));
        check_relations(uw.as_ref(), &rd).unwrap();
        let s2 = PowerModule::symmetric(uw.clone(), 2);
        check_relations(&s2, &rd).unwrap();
        let l2 = PowerModule::exterior(uw.clone(), 2);
        check_relations(&l2, &rd).unwrap();
        assert_eq!(s2.dim(), 21);
        assert_eq!(l2.dim(), 15);
        assert_eq!(s2.character(), sym_power(&uw.character(), 2));
    }

    #[test]
    fn hwv_space_of_symmetric_square() {
        // S^2(C^2 ⊗ C^3): hwvs at (2;2,0) and (0;0,1) (the latter is Λ^2⊗Λ^2).
        let rank = ReductiveRank::new(vec![SimpleFactor::a(1), SimpleFactor::a(2)], 0);
        let u = defining_module(&rank, 0, Defining::Standard, &[]);
        let w = defining_module(&rank, 1, Defining::Standard, &[]);
        let uw = arc(TensorModule::new(arc(u), arc(w)));
        let s2 = PowerModule::symmetric(uw, 2);
        assert_eq!(hwv_space(&s2, &Weight::new(vec![2, 2, 0], vec![])).dim(), 1);
        assert_eq!(hwv_space(&s2, &Weight::new(vec![0, 0, 1], vec![])).dim(), 1);
        assert_eq!(hwv_space(&s2, &Weight::new(vec![2, 0, 1], vec![])).dim(), 0);
        let sp = hwv_space(&s2, &Weight::new(vec![0, 0, 1], vec![]));
        assert_eq!(sp.support().len(), 2);
        let killed = [sp.support()[0]].into_iter().collect();
        assert_eq!(sp.surviving_dim(&killed), 0);
    }
}
