//! Exact sparse linear algebra over the integers and rationals.
//!
//! Rows are kept primitive (content removed) and reduced, so elimination
//! never introduces denominators. Pivot choice is the leftmost non-zero
//! column, which keeps results deterministic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer row, sorted by column with no zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

fn content(row: &SparseRow) -> BigInt {
    let mut g = BigInt::zero();
    for (_, v) in row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divide by content and make the leading entry positive.
pub fn make_primitive(row: &mut SparseRow) {
    if row.is_empty() {
        return;
    }
    let mut g = content(row);
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a*x - b*y` for sparse rows.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = y.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, a * &x[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry(row: &SparseRow, col: usize) -> Option<&BigInt> {
    row.binary_search_by_key(&col, |e| e.0).ok().map(|k| &row[k].1)
}

/// Clear denominators of a rational row.
pub fn integer_row(row: &[(usize, BigRational)]) -> SparseRow {
    let mut l = BigInt::one();
    for (_, v) in row {
        l = l.lcm(v.denom());
    }
    let mut out: SparseRow = row
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (*c, (v * BigRational::from_integer(l.clone())).to_integer()))
        .collect();
    out.sort_by_key(|e| e.0);
    out
}

/// Dense rational vector to sparse integer row.
pub fn dense_to_row(v: &[BigRational]) -> SparseRow {
    let sparse: Vec<(usize, BigRational)> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect();
    integer_row(&sparse)
}

/// Dense integer vector to sparse row.
pub fn dense_int_to_row(v: &[BigInt]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Reduced row echelon form maintained incrementally.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    /// pivot column -> row (row's leading entry sits at that column).
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.rows.iter()
    }

    /// Reduce `row` against the current pivots.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        // Pivot rows are zero in every other pivot column, so eliminating one
        // pivot column never refills another and a single left-to-right pass
        // suffices.
        let mut k = 0;
        while k < row.len() {
            let col = row[k].0;
            if let Some(p) = self.rows.get(&col) {
                let b = row[k].1.clone();
                let a = p[0].1.clone();
                let g = a.gcd(&b);
                row = combine(&(&a / &g), &row, &(&b / &g), p);
                make_primitive_keep_sign(&mut row);
                k = row.partition_point(|e| e.0 <= col);
            } else {
                k += 1;
            }
        }
        row
    }

    /// Insert a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut r = self.reduce(row);
        if r.is_empty() {
            return false;
        }
        make_primitive(&mut r);
        let col = r[0].0;
        // Back-substitute into existing rows to keep the form reduced.
        let keys: Vec<usize> = self.rows.keys().copied().collect();
        for key in keys {
            let existing = &self.rows[&key];
            if let Some(b) = entry(existing, col) {
                let b = b.clone();
                let a = r[0].1.clone();
                let g = a.gcd(&b);
                let mut new = combine(&(&a / &g), existing, &(&b / &g), &r);
                make_primitive(&mut new);
                self.rows.insert(key, new);
            }
        }
        self.rows.insert(col, r);
        true
    }

    pub fn contains(&self, row: &SparseRow) -> bool {
        self.reduce(row.clone()).is_empty()
    }

    /// Primitive integer basis of the right kernel of the inserted rows.
    pub fn nullspace(&self) -> Vec<Vec<BigInt>> {
        let pivots: Vec<usize> = self.pivots();
        let is_pivot: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !is_pivot.contains(c)) {
            let mut l = BigInt::one();
            for row in self.rows.values() {
                if entry(row, free).is_some() {
                    l = l.lcm(&row[0].1);
                }
            }
            let mut v = vec![BigInt::zero(); self.ncols];
            v[free] = l.clone();
            for (pc, row) in &self.rows {
                if let Some(x) = entry(row, free) {
                    v[*pc] = -(x * &l) / &row[0].1;
                }
            }
            let mut sparse = dense_int_to_row(&v);
            make_primitive(&mut sparse);
            let mut dense = vec![BigInt::zero(); self.ncols];
            for (c, x) in sparse {
                dense[c] = x;
            }
            basis.push(dense);
        }
        basis
    }
}

fn make_primitive_keep_sign(row: &mut SparseRow) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

pub fn rank_of_rows(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn nullspace_of_rows(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.nullspace()
}

/// Rank of a dense rational matrix.
pub fn rank_rational(m: &[Vec<BigRational>]) -> usize {
    let ncols = m.first().map(|r| r.len()).unwrap_or(0);
    rank_of_rows(m.iter().map(|r| dense_to_row(r)), ncols)
}

/// Solve `A x = b` for one particular rational solution, if any.
pub fn solve_one(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let ncols = a.first().map(|r| r.len()).unwrap_or(0);
    let mut e = Echelon::new(ncols + 1);
    for (row, rhs) in a.iter().zip(b) {
        let mut full = row.clone();
        full.push(-rhs.clone());
        e.insert(dense_to_row(&full));
    }
    if e.rows.contains_key(&ncols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); ncols];
    for (pc, row) in &e.rows {
        let lead = BigRational::from_integer(row[0].1.clone());
        let c = entry(row, ncols)
            .map(|v| BigRational::from_integer(v.clone()))
            .unwrap_or_else(BigRational::zero);
        x[*pc] = -c / lead;
    }
    Some(x)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}
