//! Root data and weight-lattice arithmetic for reductive Lie algebras of the
//! form (simple factors of type A and D) plus a central torus.
//!
//! Node numbering follows Bourbaki throughout. Weights are stored in the
//! fundamental-weight basis of each simple factor (concatenated in factor
//! order) together with exact rational charges for the central torus.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Bumped whenever the serialized form of root data or characters changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("unsupported simple factor {series}{rank}: {reason}")]
    UnsupportedFactor {
        series: Series,
        rank: usize,
        reason: &'static str,
    },
    #[error("weight has {got} coordinates, rank expects {expected}")]
    CoordinateLength { expected: usize, got: usize },
    #[error("weight has {got} charges, torus has dimension {expected}")]
    ChargeLength { expected: usize, got: usize },
    #[error("cannot parse weight `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::A => write!(f, "A"),
            Series::D => write!(f, "D"),
        }
    }
}

/// One simple summand of the semisimple part, optionally carrying a display
/// name (the `B` in `B(A2)[1,0]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimpleFactor {
    pub series: Series,
    pub rank: usize,
    pub name: Option<String>,
}

impl SimpleFactor {
    pub fn new(series: Series, rank: usize) -> Result<Self, WeightError> {
        match (series, rank) {
            (_, 0) => Err(WeightError::UnsupportedFactor {
                series,
                rank,
                reason: "rank must be positive",
            }),
            (Series::D, r) if r < 3 => Err(WeightError::UnsupportedFactor {
                series,
                rank,
                reason: "type D requires rank at least 3",
            }),
            _ => Ok(SimpleFactor {
                series,
                rank,
                name: None,
            }),
        }
    }

    pub fn a(rank: usize) -> Self {
        Self::new(Series::A, rank).expect("valid type A rank")
    }

    pub fn d(rank: usize) -> Self {
        Self::new(Series::D, rank).expect("valid type D rank")
    }

    pub fn named(mut self, name: &str) -> Self {
        self.name = Some(name.to_string());
        self
    }

    /// `A2`, `D5`, ...
    pub fn type_label(&self) -> String {
        format!("{}{}", self.series, self.rank)
    }

    /// Cartan matrix in Bourbaki numbering (0-based indices here).
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (i, j) in self.edges() {
            c[i][j] = -1;
            c[j][i] = -1;
        }
        c
    }

    /// Edges of the Dynkin diagram, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.series {
            Series::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Series::D => {
                let mut e: Vec<(usize, usize)> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 1));
                e
            }
        }
    }

    /// ASCII node diagram with Bourbaki labels, emitted in reports.
    pub fn node_diagram(&self) -> String {
        let n = self.rank;
        match self.series {
            Series::A => (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join("-"),
            Series::D => {
                let chain: Vec<String> = (1..=n - 2).map(|i| i.to_string()).collect();
                format!("{}<({},{})", chain.join("-"), n - 1, n)
            }
        }
    }
}

/// Semisimple factors in declared order plus the dimension of the centre.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReductiveRank {
    pub factors: Vec<SimpleFactor>,
    pub torus_dim: usize,
}

impl ReductiveRank {
    pub fn new(factors: Vec<SimpleFactor>, torus_dim: usize) -> Self {
        ReductiveRank { factors, torus_dim }
    }

    /// Total number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.factors.iter().map(|f| f.rank).sum()
    }

    /// Offset of factor `f` inside the concatenated coordinate vector.
    pub fn offset(&self, f: usize) -> usize {
        self.factors[..f].iter().map(|x| x.rank).sum()
    }

    /// (factor, node) for a global simple-root index.
    pub fn locate(&self, global: usize) -> (usize, usize) {
        let mut g = global;
        for (f, fac) in self.factors.iter().enumerate() {
            if g < fac.rank {
                return (f, g);
            }
            g -= fac.rank;
        }
        panic!("simple root index {global} out of range");
    }

    pub fn check(&self, w: &Weight) -> Result<(), WeightError> {
        if w.coords.len() != self.semisimple_rank() {
            return Err(WeightError::CoordinateLength {
                expected: self.semisimple_rank(),
                got: w.coords.len(),
            });
        }
        if w.charges.len() != self.torus_dim {
            return Err(WeightError::ChargeLength {
                expected: self.torus_dim,
                got: w.charges.len(),
            });
        }
        Ok(())
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.semisimple_rank(), self.torus_dim)
    }
}

/// A weight: fundamental-weight coordinates per factor (concatenated) and
/// exact central charges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub coords: Vec<i32>,
    pub charges: Vec<Rational64>,
}

impl Weight {
    pub fn new(coords: Vec<i32>, charges: Vec<Rational64>) -> Self {
        Weight { coords, charges }
    }

    pub fn zero(rank: usize, torus: usize) -> Self {
        Weight {
            coords: vec![0; rank],
            charges: vec![Rational64::zero(); torus],
        }
    }

    pub fn with_int_charges(coords: Vec<i32>, charges: &[i64]) -> Self {
        Weight {
            coords,
            charges: charges.iter().map(|&c| Rational64::from_integer(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0) && self.charges.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
            charges: self
                .charges
                .iter()
                .zip(&other.charges)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| -c).collect(),
            charges: self.charges.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, k: i32) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| c * k).collect(),
            charges: self
                .charges
                .iter()
                .map(|c| c * Rational64::from_integer(k as i64))
                .collect(),
        }
    }

    /// The semisimple part only (charges dropped).
    pub fn semisimple(&self) -> Weight {
        Weight {
            coords: self.coords.clone(),
            charges: Vec::new(),
        }
    }
}

/// All simple-factor coordinates non-negative; charges unconstrained.
pub fn is_dominant(w: &Weight) -> bool {
    w.coords.iter().all(|&c| c >= 0)
}

/// Root-system data of one simple factor.
#[derive(Debug, Clone)]
pub struct FactorRootData {
    pub factor: SimpleFactor,
    pub cartan: Vec<Vec<i64>>,
    /// `det(C)`.
    pub det: i64,
    /// `det(C) * C^{-1}`, an integer matrix; `(x, y) = x^T C^{-1} y` in
    /// fundamental coordinates.
    pub inv_scaled: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive_roots: Vec<Vec<i64>>,
    /// The same roots in fundamental-weight coordinates.
    pub positive_roots_fund: Vec<Vec<i32>>,
    /// Simple roots, fundamental weights and rho in the orthonormal
    /// epsilon-coordinates of the standard realisation.
    pub simple_roots_eps: Vec<Vec<Rational64>>,
    pub fundamental_weights_eps: Vec<Vec<Rational64>>,
    pub rho_eps: Vec<Rational64>,
}

impl FactorRootData {
    pub fn build(factor: &SimpleFactor) -> Result<Self, WeightError> {
        let factor = SimpleFactor::new(factor.series, factor.rank).map(|mut f| {
            f.name = factor.name.clone();
            f
        })?;
        let n = factor.rank;
        let cartan = factor.cartan_matrix();
        let (det, inv_scaled) = scaled_inverse(&cartan);
        let positive_roots = positive_roots(&cartan);
        let positive_roots_fund = positive_roots
            .iter()
            .map(|r| {
                (0..n)
                    .map(|j| (0..n).map(|i| r[i] * cartan[i][j]).sum::<i64>() as i32)
                    .collect()
            })
            .collect();
        let (simple_roots_eps, fundamental_weights_eps) = epsilon_realisation(&factor);
        let dim = simple_roots_eps[0].len();
        let rho_eps = (0..dim)
            .map(|k| {
                fundamental_weights_eps
                    .iter()
                    .map(|w| w[k])
                    .fold(Rational64::zero(), |a, b| a + b)
            })
            .collect();
        Ok(FactorRootData {
            factor,
            cartan,
            det,
            inv_scaled,
            positive_roots,
            positive_roots_fund,
            simple_roots_eps,
            fundamental_weights_eps,
            rho_eps,
        })
    }

    pub fn rank(&self) -> usize {
        self.factor.rank
    }

    /// `det(C) * (x, y)`.
    pub fn scaled_inner(&self, x: &[i32], y: &[i32]) -> i64 {
        let n = self.rank();
        let mut s = 0i64;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0i64;
            for j in 0..n {
                row += self.inv_scaled[i][j] * y[j] as i64;
            }
            s += x[i] as i64 * row;
        }
        s
    }

    /// Height of a weight measured in simple-root coordinates, times `det`.
    pub fn scaled_height(&self, x: &[i32]) -> i64 {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.inv_scaled[i][j] * x[j] as i64).sum::<i64>())
            .sum()
    }

    /// Simple reflection `s_i` in fundamental coordinates.
    pub fn reflect(&self, w: &mut [i32], i: usize) {
        let wi = w[i] as i64;
        if wi == 0 {
            return;
        }
        for (j, wj) in w.iter_mut().enumerate() {
            *wj -= (wi * self.cartan[i][j]) as i32;
        }
    }

    /// Dominant representative of the Weyl orbit and the parity of the
    /// number of reflections used.
    pub fn to_dominant(&self, w: &[i32]) -> (Vec<i32>, i32) {
        let mut v = w.to_vec();
        let mut sign = 1;
        while let Some(i) = v.iter().position(|&c| c < 0) {
            self.reflect(&mut v, i);
            sign = -sign;
        }
        (v, sign)
    }

    /// Full Weyl orbit of a dominant weight, sorted.
    pub fn orbit(&self, dominant: &[i32]) -> Vec<Vec<i32>> {
        let mut seen = std::collections::BTreeSet::new();
        let mut stack = vec![dominant.to_vec()];
        seen.insert(dominant.to_vec());
        while let Some(w) = stack.pop() {
            for i in 0..self.rank() {
                if w[i] > 0 {
                    let mut v = w.clone();
                    self.reflect(&mut v, i);
                    if seen.insert(v.clone()) {
                        stack.push(v);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The pairing matrix of simple coroots against fundamental weights,
    /// computed in epsilon-coordinates. Must be the identity.
    pub fn coroot_pairing(&self) -> Vec<Vec<Rational64>> {
        self.simple_roots_eps
            .iter()
            .map(|a| {
                self.fundamental_weights_eps
                    .iter()
                    .map(|w| dot(a, w))
                    .collect()
            })
            .collect()
    }

    /// Cartan matrix recomputed from the epsilon realisation.
    pub fn cartan_from_roots(&self) -> Vec<Vec<Rational64>> {
        self.simple_roots_eps
            .iter()
            .map(|a| self.simple_roots_eps.iter().map(|b| dot(a, b)).collect())
            .collect()
    }
}

fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter()
        .zip(b)
        .fold(Rational64::zero(), |acc, (x, y)| acc + x * y)
}

/// Root data for a whole reductive algebra.
#[derive(Debug, Clone)]
pub struct RootData {
    pub rank: ReductiveRank,
    pub factors: Vec<FactorRootData>,
}

impl RootData {
    pub fn semisimple_rank(&self) -> usize {
        self.rank.semisimple_rank()
    }

    /// Content hash of the root data, including the schema version.
    pub fn fingerprint(&self) -> String {
        let mut h = Sha256::new();
        h.update(format!("schema={SCHEMA_VERSION};"));
        for f in &self.factors {
            h.update(factor_fingerprint_text(&f.factor));
        }
        h.update(format!("torus={}", self.rank.torus_dim));
        hex::encode(&h.finalize()[..12])
    }

    pub fn factor_fingerprint(&self, f: usize) -> String {
        let mut h = Sha256::new();
        h.update(format!("schema={SCHEMA_VERSION};"));
        h.update(factor_fingerprint_text(&self.factors[f].factor));
        hex::encode(&h.finalize()[..12])
    }

    pub fn factor_slice<'a>(&self, w: &'a [i32], f: usize) -> &'a [i32] {
        let o = self.rank.offset(f);
        &w[o..o + self.factors[f].rank()]
    }

    /// Scaled height summed over factors, as an exact rational.
    pub fn height(&self, w: &Weight) -> Rational64 {
        self.factors
            .iter()
            .enumerate()
            .map(|(f, fr)| {
                Rational64::new(fr.scaled_height(self.factor_slice(&w.coords, f)), fr.det)
            })
            .fold(Rational64::zero(), |a, b| a + b)
    }

    /// Weyl vector as a weight (charges zero).
    pub fn rho(&self) -> Weight {
        Weight::zero(self.semisimple_rank(), self.rank.torus_dim).add(&Weight::new(
            vec![1; self.semisimple_rank()],
            vec![Rational64::zero(); self.rank.torus_dim],
        ))
    }

    /// Simple root `global` as a weight (fundamental coordinates).
    pub fn simple_root(&self, global: usize) -> Weight {
        let (f, i) = self.rank.locate(global);
        let mut w = self.rank.zero_weight();
        let o = self.rank.offset(f);
        for (j, c) in self.factors[f].cartan[i].iter().enumerate() {
            w.coords[o + j] = *c as i32;
        }
        w
    }

    /// Dot-action chamber reduction: returns the dominant `λ` with
    /// `λ + ρ = w(x + ρ)` and `det(w)`, or `None` when `x + ρ` lies on a wall.
    pub fn to_dominant_with_sign(&self, x: &Weight) -> Option<(Weight, i32)> {
        let mut out = x.clone();
        let mut sign = 1;
        for (f, fr) in self.factors.iter().enumerate() {
            let o = self.rank.offset(f);
            let shifted: Vec<i32> = x.coords[o..o + fr.rank()].iter().map(|c| c + 1).collect();
            let (dom, s) = fr.to_dominant(&shifted);
            if dom.contains(&0) {
                return None;
            }
            sign *= s;
            for (k, c) in dom.iter().enumerate() {
                out.coords[o + k] = c - 1;
            }
        }
        Some((out, sign))
    }

    /// Plain dominant representative of the Weyl orbit (no shift).
    pub fn dominant_representative(&self, x: &Weight) -> Weight {
        let mut out = x.clone();
        for (f, fr) in self.factors.iter().enumerate() {
            let o = self.rank.offset(f);
            let (dom, _) = fr.to_dominant(&x.coords[o..o + fr.rank()]);
            out.coords[o..o + fr.rank()].copy_from_slice(&dom);
        }
        out
    }
}

fn factor_fingerprint_text(f: &SimpleFactor) -> String {
    let c = f.cartan_matrix();
    format!("{}{}:{:?};", f.series, f.rank, c)
}

/// Build consistent root data for every factor.
pub fn build_root_data(rank: &ReductiveRank) -> Result<RootData, WeightError> {
    let factors = rank
        .factors
        .iter()
        .map(FactorRootData::build)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RootData {
        rank: rank.clone(),
        factors,
    })
}

fn scaled_inverse(c: &[Vec<i64>]) -> (i64, Vec<Vec<i64>>) {
    // Gauss-Jordan over rationals; matrices here are tiny.
    let n = c.len();
    let mut m: Vec<Vec<Rational64>> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational64> = row.iter().map(|&x| Rational64::from_integer(x)).collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            r
        })
        .collect();
    let mut det = Rational64::one();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix is invertible");
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pv = m[col][col];
        det *= pv;
        for x in m[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let fac = m[r][col];
                for k in 0..2 * n {
                    let v = m[col][k];
                    m[r][k] -= fac * v;
                }
            }
        }
    }
    let d = det.to_integer();
    let inv = m
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| {
                    let s = *x * Rational64::from_integer(d);
                    assert!(s.is_integer());
                    s.to_integer()
                })
                .collect()
        })
        .collect();
    (d, inv)
}

/// Positive roots of a simply-laced Cartan matrix, by string closure from the
/// simple roots, ordered by height then lexicographically.
fn positive_roots(c: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = c.len();
    let mut roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0; n];
            r[i] = 1;
            r
        })
        .collect();
    let mut known: std::collections::BTreeSet<Vec<i64>> = roots.iter().cloned().collect();
    let mut idx = 0;
    while idx < roots.len() {
        let beta = roots[idx].clone();
        idx += 1;
        for i in 0..n {
            let pairing: i64 = (0..n).map(|j| c[i][j] * beta[j]).sum();
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if known.contains(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let q = p - pairing;
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if known.insert(up.clone()) {
                    roots.push(up);
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}

fn epsilon_realisation(f: &SimpleFactor) -> (Vec<Vec<Rational64>>, Vec<Vec<Rational64>>) {
    let n = f.rank;
    let r = |x: i64| Rational64::from_integer(x);
    match f.series {
        Series::A => {
            let dim = n + 1;
            let roots = (0..n)
                .map(|i| {
                    let mut v = vec![r(0); dim];
                    v[i] = r(1);
                    v[i + 1] = r(-1);
                    v
                })
                .collect();
            let weights = (0..n)
                .map(|i| {
                    let shift = Rational64::new((i + 1) as i64, dim as i64);
                    (0..dim)
                        .map(|k| if k <= i { r(1) - shift } else { -shift })
                        .collect()
                })
                .collect();
            (roots, weights)
        }
        Series::D => {
            let half = Rational64::new(1, 2);
            let mut roots: Vec<Vec<Rational64>> = (0..n - 1)
                .map(|i| {
                    let mut v = vec![r(0); n];
                    v[i] = r(1);
                    v[i + 1] = r(-1);
                    v
                })
                .collect();
            let mut last = vec![r(0); n];
            last[n - 2] = r(1);
            last[n - 1] = r(1);
            roots.push(last);
            let mut weights: Vec<Vec<Rational64>> = (0..n - 2)
                .map(|i| (0..n).map(|k| if k <= i { r(1) } else { r(0) }).collect())
                .collect();
            weights.push(
                (0..n)
                    .map(|k| if k < n - 1 { half } else { -half })
                    .collect(),
            );
            weights.push(vec![half; n]);
            (roots, weights)
        }
    }
}

// ---------------------------------------------------------------------------
// Textual weight grammar:
//   A(A1)[1] * B(A2)[1,0] * D5[0,0,0,0,1] @ (1,-1/2)

fn fmt_rational(q: &Rational64) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Canonical string for `w` relative to `rank`.
pub fn format_weight(rank: &ReductiveRank, w: &Weight) -> String {
    let mut blocks = Vec::new();
    for (f, fac) in rank.factors.iter().enumerate() {
        let o = rank.offset(f);
        let coords: Vec<String> = w.coords[o..o + fac.rank].iter().map(|c| c.to_string()).collect();
        let head = match &fac.name {
            Some(name) => format!("{}({})", name, fac.type_label()),
            None => fac.type_label(),
        };
        blocks.push(format!("{}[{}]", head, coords.join(",")));
    }
    let mut s = blocks.join(" * ");
    if rank.torus_dim > 0 {
        let ch: Vec<String> = w.charges.iter().map(fmt_rational).collect();
        if !s.is_empty() {
            s.push(' ');
        }
        s.push_str(&format!("@ ({})", ch.join(",")));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn parse_err(input: &str, reason: impl Into<String>) -> WeightError {
    WeightError::Parse {
        input: input.to_string(),
        reason: reason.into(),
    }
}

fn parse_type(input: &str, t: &str) -> Result<SimpleFactor, WeightError> {
    let series = match t.chars().next() {
        Some('A') => Series::A,
        Some('D') => Series::D,
        _ => return Err(parse_err(input, format!("unknown type `{t}`"))),
    };
    let rank: usize = t[1..]
        .parse()
        .map_err(|_| parse_err(input, format!("bad rank in `{t}`")))?;
    SimpleFactor::new(series, rank)
}

fn parse_rational(input: &str, s: &str) -> Result<Rational64, WeightError> {
    let s = s.trim();
    let bad = || parse_err(input, format!("bad charge `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.parse().map_err(|_| bad())?;
            let q: i64 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
        None => Ok(Rational64::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Parse a weight string into its rank description and the weight.
pub fn parse_weight(input: &str) -> Result<(ReductiveRank, Weight), WeightError> {
    let s = input.trim();
    if s == "0" {
        return Ok((ReductiveRank::new(vec![], 0), Weight::zero(0, 0)));
    }
    let (factor_part, charge_part) = match s.split_once('@') {
        Some((a, b)) => (a.trim(), Some(b.trim())),
        None => (s, None),
    };
    let mut factors = Vec::new();
    let mut coords = Vec::new();
    if !factor_part.is_empty() {
        for block in factor_part.split(" * ") {
            let block = block.trim();
            let open = block
                .find('[')
                .ok_or_else(|| parse_err(input, "missing `[`"))?;
            if !block.ends_with(']') {
                return Err(parse_err(input, "missing `]`"));
            }
            let head = &block[..open];
            let body = &block[open + 1..block.len() - 1];
            let factor = match head.find('(') {
                Some(p) => {
                    if !head.ends_with(')') {
                        return Err(parse_err(input, "unbalanced factor name"));
                    }
                    let name = &head[..p];
                    parse_type(input, &head[p + 1..head.len() - 1])?.named(name)
                }
                None => parse_type(input, head)?,
            };
            let cs: Vec<i32> = body
                .split(',')
                .map(|c| c.trim().parse::<i32>())
                .collect::<Result<_, _>>()
                .map_err(|_| parse_err(input, format!("bad coordinates `{body}`")))?;
            if cs.len() != factor.rank {
                return Err(parse_err(input, format!("{} expects {} coordinates", factor.type_label(), factor.rank)));
            }
            coords.extend(cs);
            factors.push(factor);
        }
    }
    let charges = match charge_part {
        Some(c) => {
            let c = c
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .ok_or_else(|| parse_err(input, "charges must be parenthesised"))?;
            c.split(',')
                .map(|x| parse_rational(input, x))
                .collect::<Result<Vec<_>, _>>()?
        }
        None => Vec::new(),
    };
    let rank = ReductiveRank::new(factors, charges.len());
    Ok((rank, Weight::new(coords, charges)))
}

impl FromStr for Series {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Series::A),
            "D" => Ok(Series::D),
            _ => Err(format!("unknown series {s}")),
        }
    }
}

/// Fixed total order used for reproducible reports: larger height first,
/// then lexicographic on coordinates, then charges.
pub fn report_order(rd: &RootData, a: &Weight, b: &Weight) -> Ordering {
    rd.height(b)
        .cmp(&rd.height(a))
        .then_with(|| b.coords.cmp(&a.coords))
        .then_with(|| b.charges.cmp(&a.charges))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank_of(factors: Vec<SimpleFactor>, torus: usize) -> ReductiveRank {
        ReductiveRank::new(factors, torus)
    }

    #[test]
    fn cartan_small_cases() {
        assert_eq!(SimpleFactor::a(1).cartan_matrix(), vec![vec![2]]);
        assert_eq!(
            SimpleFactor::a(2).cartan_matrix(),
            vec![vec![2, -1], vec![-1, 2]]
        );
        let d5 = SimpleFactor::d(5).cartan_matrix();
        let neighbours: Vec<usize> = (0..5).filter(|&j| d5[2][j] == -1).collect();
        assert_eq!(neighbours, vec![1, 3, 4]);
        // D3 is its own matrix: node 1 is the branch point.
        let d3 = SimpleFactor::d(3).cartan_matrix();
        assert_eq!(d3, vec![vec![2, -1, -1], vec![-1, 2, 0], vec![-1, 0, 2]]);
    }

    #[test]
    fn unsupported_factors_rejected() {
        assert!(SimpleFactor::new(Series::D, 2).is_err());
        assert!(SimpleFactor::new(Series::A, 0).is_err());
    }

    #[test]
    fn coroot_pairing_is_identity_and_cartan_matches() {
        for f in [
            SimpleFactor::a(1),
            SimpleFactor::a(2),
            SimpleFactor::a(4),
            SimpleFactor::d(3),
            SimpleFactor::d(4),
            SimpleFactor::d(5),
        ] {
            let rd = FactorRootData::build(&f).unwrap();
            let pairing = rd.coroot_pairing();
            for (i, row) in pairing.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let expect = if i == j { 1 } else { 0 };
                    assert_eq!(*x, Rational64::from_integer(expect), "{f:?} {i} {j}");
                }
            }
            let c = rd.cartan_from_roots();
            for i in 0..f.rank {
                for j in 0..f.rank {
                    assert_eq!(c[i][j], Rational64::from_integer(rd.cartan[i][j]));
                }
            }
            assert_eq!(rd.fundamental_weights_eps.len(), f.rank);
        }
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(FactorRootData::build(&SimpleFactor::a(4)).unwrap().positive_roots.len(), 10);
        assert_eq!(FactorRootData::build(&SimpleFactor::d(5)).unwrap().positive_roots.len(), 20);
        assert_eq!(FactorRootData::build(&SimpleFactor::d(3)).unwrap().positive_roots.len(), 6);
    }

    #[test]
    fn dot_action_examples() {
        let rank = rank_of(vec![SimpleFactor::a(1)], 0);
        let rd = build_root_data(&rank).unwrap();
        let w = |c: i32| Weight::new(vec![c], vec![]);
        assert_eq!(rd.to_dominant_with_sign(&w(2)), Some((w(2), 1)));
        assert_eq!(rd.to_dominant_with_sign(&w(-1)), None);
        assert_eq!(rd.to_dominant_with_sign(&w(-3)), Some((w(1), -1)));
    }

    #[test]
    fn dominance() {
        assert!(is_dominant(&Weight::zero(3, 1)));
        assert!(!is_dominant(&Weight::new(vec![-1], vec![])));
        let spinor = Weight::with_int_charges(vec![0, 0, 0, 0, 1], &[7]);
        assert!(is_dominant(&spinor));
    }

    #[test]
    fn weight_strings_round_trip() {
        let rank = rank_of(
            vec![
                SimpleFactor::a(1).named("A"),
                SimpleFactor::a(2).named("B"),
                SimpleFactor::d(5),
            ],
            2,
        );
        let w = Weight::new(
            vec![1, 0, 2, 0, 0, 0, 0, 1],
            vec![Rational64::new(-1, 2), Rational64::from_integer(3)],
        );
        let s = format_weight(&rank, &w);
        assert_eq!(s, "A(A1)[1] * B(A2)[0,2] * D5[0,0,0,0,1] @ (-1/2,3)");
        let (r2, w2) = parse_weight(&s).unwrap();
        assert_eq!(r2, rank);
        assert_eq!(w2, w);
        assert_eq!(format_weight(&r2, &w2), s);
    }

    #[test]
    fn orbit_sizes() {
        let d5 = FactorRootData::build(&SimpleFactor::d(5)).unwrap();
        assert_eq!(d5.orbit(&[0, 0, 0, 0, 1]).len(), 16);
        assert_eq!(d5.orbit(&[1, 0, 0, 0, 0]).len(), 10);
        let a4 = FactorRootData::build(&SimpleFactor::a(4)).unwrap();
        assert_eq!(a4.orbit(&[0, 1, 0, 0]).len(), 10);
    }
}
