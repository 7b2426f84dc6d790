//! Recovering the symmetry algebra of a quadric system together with a
//! Chevalley basis, Bourbaki numbering and central charges.
//!
//! Given quadrics `Q^ν` on `T`, the algebra is
//! `𝔯 = {(X, Y) : -(XᵀQ^ν + Q^ν X) + Σ_μ Y_{νμ} Q^μ = 0 ∀ν}` acting on
//! `V = T ⊕ N`. The frame is assumed to diagonalize a Cartan subalgebra,
//! which holds for every model built in this crate; failures are reported
//! rather than worked around.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::explicit::{Image, MatrixModule};
use crate::forms::SymMatrix;
use crate::linalg::{dense_to_row, integer_row, solve_one, Echelon};
use crate::weight::{ReductiveRank, Series, SimpleFactor, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("Cartan subalgebra is not diagonal in the chosen frame (zero-weight block has dimension {block}, diagonal part {diag})")]
    NonDiagonalCartan { block: usize, diag: usize },
    #[error("root space of dimension {0} found; expected 1")]
    RootMultiplicity(usize),
    #[error("no Borel subalgebra satisfies the declared extreme vectors")]
    NoBorel,
    #[error("Dynkin diagram has an unsupported component")]
    UnsupportedDiagram,
    #[error("no numbering of the simple roots matches the declared highest weights")]
    NoNumbering,
    #[error("central charges cannot be normalized: {0}")]
    Charges(String),
}

/// Which side of `V = T ⊕ N` a declared extreme vector lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Tangent,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Highest,
    Lowest,
}

#[derive(Debug, Clone)]
pub struct SymmetryDecl {
    /// Simple factors in report order, with display names.
    pub factors: Vec<SimpleFactor>,
    /// Semisimple highest weights of the constituents of `T`, in the order
    /// used for central charges (one charge per constituent).
    pub tangent_highest: Vec<Vec<i32>>,
    /// Semisimple highest weights of the constituents of `N` (multiset).
    pub normal_highest: Vec<Vec<i32>>,
    pub extremes: Vec<(Side, usize, Extremal)>,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct Symmetry {
    pub rank: ReductiveRank,
    pub tangent: MatrixModule,
    pub normal: MatrixModule,
    /// `dim 𝔯` as found by solving the invariance equations.
    pub dim_r: usize,
    /// Dimension of the Cartan subalgebra.
    pub dim_h: usize,
    pub n_roots: usize,
    /// Tangent basis indices of each constituent of `T`, in declared order.
    pub tangent_constituents: Vec<Vec<usize>>,
    pub normal_constituents: Vec<Vec<usize>>,
    /// Generic functional on the Cartan used to choose positive roots.
    pub borel_functional: Vec<i64>,
}

type RMat = Vec<Vec<BigRational>>;

fn zero_mat(n: usize) -> RMat {
    vec![vec![BigRational::zero(); n]; n]
}

fn bigr(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

/// Solve for the symmetry data of `qs` (quadrics on a space of dimension n).
pub fn extract_symmetry(
    qs: &[SymMatrix],
    tangent_labels: &[String],
    normal_labels: &[String],
    decl: &SymmetryDecl,
) -> Result<Symmetry, SymmetryError> {
    let n = tangent_labels.len();
    let a = qs.len();
    let dim_v = n + a;
    let nvars = n * n + a * a;
    let xv = |j: usize, k: usize| j * n + k;
    let yv = |nu: usize, mu: usize| n * n + nu * a + mu;

    // Invariance equations as sparse rational rows over all unknowns.
    let mut equations: Vec<BTreeMap<usize, BigRational>> = Vec::new();
    for nu in 0..a {
        let q = &qs[nu];
        for al in 0..n {
            for be in al..n {
                let mut row: BTreeMap<usize, BigRational> = BTreeMap::new();
                let mut push = |var: usize, c: BigRational| {
                    if !c.is_zero() {
                        *row.entry(var).or_insert_with(BigRational::zero) += c;
                    }
                };
                for ga in 0..n {
                    push(xv(ga, al), -q[ga][be].clone());
                    push(xv(ga, be), -q[al][ga].clone());
                }
                for mu in 0..a {
                    push(yv(nu, mu), qs[mu][al][be].clone());
                }
                row.retain(|_, c| !c.is_zero());
                if !row.is_empty() {
                    equations.push(row);
                }
            }
        }
    }

    // Diagonal part: positions of diagonal unknowns.
    let diag_vars: Vec<usize> = (0..n).map(|j| xv(j, j)).chain((0..a).map(|nu| yv(nu, nu))).collect();
    let diag_pos: BTreeMap<usize, usize> = diag_vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut ech = Echelon::new(dim_v);
    for eq in &equations {
        let r: Vec<(usize, BigRational)> = eq
            .iter()
            .filter_map(|(v, c)| diag_pos.get(v).map(|p| (*p, c.clone())))
            .collect();
        if !r.is_empty() {
            let mut r = r;
            r.sort_by_key(|e| e.0);
            ech.insert(integer_row(&r));
        }
    }
    let cartan_basis: Vec<Vec<BigInt>> = ech.nullspace();
    let h = cartan_basis.len();
    // weight of V-basis vector j: its eigenvalues on the Cartan basis
    let weights: Vec<Vec<BigInt>> = (0..dim_v)
        .map(|j| cartan_basis.iter().map(|hb| hb[j].clone()).collect())
        .collect();
    let var_weight = |var: usize| -> Vec<BigInt> {
        let (row, col) = if var < n * n {
            (var / n, var % n)
        } else {
            let r = var - n * n;
            (n + r / a, n + r % a)
        };
        weights[row].iter().zip(&weights[col]).map(|(x, y)| x - y).collect()
    };

    // Split equations into weight blocks.
    let mut blocks: BTreeMap<Vec<BigInt>, Vec<usize>> = BTreeMap::new();
    for var in 0..nvars {
        blocks.entry(var_weight(var)).or_default().push(var);
    }
    let zero_w = vec![BigInt::zero(); h];
    let mut block_rows: BTreeMap<Vec<BigInt>, Vec<Vec<(usize, BigRational)>>> = BTreeMap::new();
    for eq in &equations {
        let mut parts: BTreeMap<Vec<BigInt>, Vec<(usize, BigRational)>> = BTreeMap::new();
        for (v, c) in eq {
            parts.entry(var_weight(*v)).or_default().push((*v, c.clone()));
        }
        for (w, p) in parts {
            block_rows.entry(w).or_default().push(p);
        }
    }
    let mut dim_r = 0;
    let mut roots: BTreeMap<Vec<BigInt>, BTreeMap<usize, BigRational>> = BTreeMap::new();
    for (w, vars) in &blocks {
        let local: BTreeMap<usize, usize> = vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut e = Echelon::new(vars.len());
        for row in block_rows.get(w).into_iter().flatten() {
            let mut r: Vec<(usize, BigRational)> = row.iter().map(|(v, c)| (local[v], c.clone())).collect();
            r.sort_by_key(|x| x.0);
            e.insert(integer_row(&r));
        }
        let ker = e.nullspace();
        dim_r += ker.len();
        if *w == zero_w {
            if ker.len() != h {
                return Err(SymmetryError::NonDiagonalCartan {
                    block: ker.len(),
                    diag: h,
                });
            }
            continue;
        }
        match ker.len() {
            0 => {}
            1 => {
                let vec: BTreeMap<usize, BigRational> = ker[0]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| (vars[i], bigr(c)))
                    .collect();
                roots.insert(w.clone(), vec);
            }
            k => return Err(SymmetryError::RootMultiplicity(k)),
        }
    }

    // Root vector as a (dim_v × dim_v) sparse operator: column k -> entries.
    let op_of = |coeffs: &BTreeMap<usize, BigRational>| -> Vec<Vec<(usize, BigRational)>> {
        let mut cols: Vec<Vec<(usize, BigRational)>> = vec![Vec::new(); dim_v];
        for (var, c) in coeffs {
            let (row, col) = if *var < n * n {
                (var / n, var % n)
            } else {
                let r = var - n * n;
                (n + r / a, n + r % a)
            };
            cols[col].push((row, c.clone()));
        }
        cols
    };
    let root_ops: BTreeMap<Vec<BigInt>, Vec<Vec<(usize, BigRational)>>> =
        roots.iter().map(|(w, c)| (w.clone(), op_of(c))).collect();

    // Positive system from a generic functional honoring the extremes.
    let mut rng = ChaCha8Rng::seed_from_u64(decl.seed);
    let eval = |phi: &[i64], w: &[BigInt]| -> BigInt {
        phi.iter().zip(w).map(|(p, x)| BigInt::from(*p) * x).sum()
    };
    let vector_index = |side: Side, i: usize| match side {
        Side::Tangent => i,
        Side::Normal => n + i,
    };
    let mut phi: Option<Vec<i64>> = None;
    for _ in 0..20000 {
        let cand: Vec<i64> = (0..h).map(|_| rng.gen_range(-1000i64..=1000)).collect();
        if roots.keys().any(|r| eval(&cand, r).is_zero()) {
            continue;
        }
        let ok = decl.extremes.iter().all(|(side, idx, kind)| {
            let v = vector_index(*side, *idx);
            root_ops.iter().all(|(r, op)| {
                let positive = eval(&cand, r).is_positive();
                let relevant = match kind {
                    Extremal::Highest => positive,
                    Extremal::Lowest => !positive,
                };
                !relevant || op[v].is_empty()
            })
        });
        if ok {
            phi = Some(cand);
            break;
        }
    }
    let phi = phi.ok_or(SymmetryError::NoBorel)?;
    let positive: Vec<Vec<BigInt>> = roots
        .keys()
        .filter(|r| eval(&phi, r).is_positive())
        .cloned()
        .collect();
    let pos_set: BTreeSet<Vec<BigInt>> = positive.iter().cloned().collect();
    let simple: Vec<Vec<BigInt>> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|s| {
                let diff: Vec<BigInt> = r.iter().zip(s).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff)
            })
        })
        .cloned()
        .collect();

    // Express a diagonal operator in the Cartan basis.
    let hb_rat: Vec<Vec<BigRational>> = (0..dim_v)
        .map(|j| cartan_basis.iter().map(|hb| bigr(&hb[j])).collect())
        .collect();
    let cartan_coords = |diag: &[BigRational]| -> Option<Vec<BigRational>> { solve_one(&hb_rat, diag) };
    let pair = |coords: &[BigRational], w: &[BigInt]| -> BigRational {
        coords.iter().zip(w).fold(BigRational::zero(), |acc, (c, x)| acc + c * bigr(x))
    };

    struct Gen {
        root: Vec<BigInt>,
        e: Vec<Vec<(usize, BigRational)>>,
        f: Vec<Vec<(usize, BigRational)>>,
        h: Vec<BigRational>,
    }
    let mut gens: Vec<Gen> = Vec::new();
    for r in &simple {
        let neg: Vec<BigInt> = r.iter().map(|x| -x).collect();
        let mut e = normalize_op(root_ops[r].clone());
        let f0 = root_ops.get(&neg).cloned().ok_or(SymmetryError::UnsupportedDiagram)?;
        // [E, F] on each basis vector
        let comm = commutator_diag(&e, &f0, dim_v).ok_or(SymmetryError::NonDiagonalCartan { block: 0, diag: h })?;
        let coords = cartan_coords(&comm).ok_or(SymmetryError::NonDiagonalCartan { block: 0, diag: h })?;
        let val = pair(&coords, r);
        if val.is_zero() {
            return Err(SymmetryError::UnsupportedDiagram);
        }
        let scale = BigRational::from_integer(BigInt::from(2)) / val;
        let f: Vec<Vec<(usize, BigRational)>> = f0
            .iter()
            .map(|col| col.iter().map(|(i, c)| (*i, c * &scale)).collect())
            .collect();
        let hcoords: Vec<BigRational> = coords.iter().map(|c| c * &scale).collect();
        for col in e.iter_mut() {
            col.sort_by_key(|x| x.0);
        }
        gens.push(Gen {
            root: r.clone(),
            e,
            f,
            h: hcoords,
        });
    }
    let r_count = gens.len();
    let cartan: Vec<Vec<i64>> = (0..r_count)
        .map(|i| {
            (0..r_count)
                .map(|j| {
                    let v = pair(&gens[i].h, &gens[j].root);
                    assert!(v.is_integer(), "non-integral Cartan entry");
                    v.to_integer().to_i64().expect("small Cartan entry")
                })
                .collect()
        })
        .collect();

    // Components of the Dynkin diagram and their candidate numberings.
    let comps = dynkin_components(&cartan);
    let mut comp_info: Vec<(Series, Vec<Vec<usize>>)> = Vec::new();
    for c in &comps {
        comp_info.push(numberings(c, &cartan).ok_or(SymmetryError::UnsupportedDiagram)?);
    }
    let fund = |order: &[usize], v: usize| -> Vec<i32> {
        order
            .iter()
            .map(|&g| {
                let x = pair(&gens[g].h, &weights[v]);
                x.to_integer().to_i32().expect("small weight")
            })
            .collect()
    };
    let tangent_vecs: Vec<usize> = (0..n).collect();
    let normal_vecs: Vec<usize> = (n..dim_v).collect();
    let t_comps = constituents(&tangent_vecs, &gens.iter().map(|g| (&g.e, &g.f)).collect::<Vec<_>>());
    let n_comps = constituents(&normal_vecs, &gens.iter().map(|g| (&g.e, &g.f)).collect::<Vec<_>>());
    let highest_of = |comp: &[usize]| -> usize {
        *comp
            .iter()
            .find(|&&v| gens.iter().all(|g| g.e[v].is_empty()))
            .expect("finite-dimensional constituent has a highest vector")
    };

    // Enumerate assignments of components to declared factors.
    let mut chosen: Option<Vec<usize>> = None;
    let assignments = assign_components(&comp_info, &decl.factors);
    'outer: for order in assignments {
        let t_hw: Vec<Vec<i32>> = t_comps.iter().map(|c| fund(&order, highest_of(c))).collect();
        let n_hw: Vec<Vec<i32>> = n_comps.iter().map(|c| fund(&order, highest_of(c))).collect();
        let mut want_t = decl.tangent_highest.clone();
        let mut got_t = t_hw.clone();
        want_t.sort();
        got_t.sort();
        let mut want_n = decl.normal_highest.clone();
        let mut got_n = n_hw;
        want_n.sort();
        got_n.sort();
        if want_t == got_t && want_n == got_n {
            chosen = Some(order);
            break 'outer;
        }
    }
    let order = chosen.ok_or(SymmetryError::NoNumbering)?;

    // Order tangent constituents as declared.
    let mut t_ordered: Vec<Vec<usize>> = Vec::new();
    let mut remaining = t_comps.clone();
    for want in &decl.tangent_highest {
        let pos = remaining
            .iter()
            .position(|c| &fund(&order, highest_of(c)) == want)
            .ok_or(SymmetryError::NoNumbering)?;
        t_ordered.push(remaining.remove(pos));
    }

    // Centre: Cartan elements killed by every simple root, normalized to be
    // the indicator of each tangent constituent.
    let mut ce = Echelon::new(h);
    for g in &gens {
        ce.insert(dense_to_row(&g.root.iter().map(bigr).collect::<Vec<_>>()));
    }
    let centre: Vec<Vec<BigInt>> = ce.nullspace();
    if centre.len() != t_ordered.len() {
        return Err(SymmetryError::Charges(format!(
            "centre has dimension {} but T has {} constituents",
            centre.len(),
            t_ordered.len()
        )));
    }
    // value of centre basis element z on vector v: Σ_l z_l w_v[l]
    let centre_val = |z: &[BigInt], v: usize| -> BigRational {
        bigr(&z.iter().zip(&weights[v]).map(|(a, b)| a * b).sum::<BigInt>())
    };
    let m: Vec<Vec<BigRational>> = t_ordered
        .iter()
        .map(|c| centre.iter().map(|z| centre_val(z, c[0])).collect())
        .collect();
    let mut charge_fns: Vec<Vec<BigRational>> = Vec::new();
    for t in 0..t_ordered.len() {
        let rhs: Vec<BigRational> = (0..t_ordered.len())
            .map(|s| if s == t { BigRational::one() } else { BigRational::zero() })
            .collect();
        let c = solve_one(&m, &rhs).ok_or_else(|| SymmetryError::Charges("singular charge system".into()))?;
        charge_fns.push(c);
    }
    let charge_of = |v: usize| -> Vec<Rational64> {
        charge_fns
            .iter()
            .map(|c| {
                let x = c
                    .iter()
                    .zip(&centre)
                    .fold(BigRational::zero(), |acc, (ci, z)| acc + ci * centre_val(z, v));
                Rational64::new(
                    x.numer().to_i64().expect("small charge"),
                    x.denom().to_i64().expect("small charge"),
                )
            })
            .collect()
    };

    let factor_list: Vec<SimpleFactor> = decl.factors.clone();
    let rank = ReductiveRank::new(factor_list, t_ordered.len());
    let global: Vec<usize> = order.clone();
    let weight_of = |v: usize| Weight::new(fund(&global, v), charge_of(v));

    let to_r64 = |x: &BigRational| Rational64::new(x.numer().to_i64().expect("small"), x.denom().to_i64().expect("small"));
    let restrict = |range: std::ops::Range<usize>, pick: &dyn Fn(&Gen) -> &Vec<Vec<(usize, BigRational)>>| -> Vec<Vec<Image>> {
        global
            .iter()
            .map(|&g| {
                let op = pick(&gens[g]);
                range
                    .clone()
                    .map(|col| {
                        let mut img: Image = op[col]
                            .iter()
                            .map(|(row, c)| {
                                assert!(range.contains(row), "generator mixes T and N");
                                (row - range.start, to_r64(c))
                            })
                            .collect();
                        img.sort_by_key(|x| x.0);
                        img
                    })
                    .collect()
            })
            .collect()
    };
    let tangent = MatrixModule::new(
        (0..n).map(weight_of).collect(),
        tangent_labels.to_vec(),
        restrict(0..n, &|g: &Gen| &g.e),
        restrict(0..n, &|g: &Gen| &g.f),
    );
    let normal = MatrixModule::new(
        (n..dim_v).map(weight_of).collect(),
        normal_labels.to_vec(),
        restrict(n..dim_v, &|g: &Gen| &g.e),
        restrict(n..dim_v, &|g: &Gen| &g.f),
    );
    let n_ordered: Vec<Vec<usize>> = n_comps.iter().map(|c| c.iter().map(|v| v - n).collect()).collect();
    Ok(Symmetry {
        rank,
        tangent,
        normal,
        dim_r,
        dim_h: h,
        n_roots: roots.len(),
        tangent_constituents: t_ordered,
        normal_constituents: n_ordered,
        borel_functional: phi,
    })
}

/// Scale an operator to primitive integer entries with positive leading
/// entry.
fn normalize_op(op: Vec<Vec<(usize, BigRational)>>) -> Vec<Vec<(usize, BigRational)>> {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for col in &op {
        for (_, c) in col {
            l = l.lcm(c.denom());
        }
    }
    for col in &op {
        for (_, c) in col {
            g = g.gcd(&(c * bigr(&l)).to_integer());
        }
    }
    if g.is_zero() {
        return op;
    }
    let s = bigr(&l) / bigr(&g);
    op.into_iter()
        .map(|col| col.into_iter().map(|(i, c)| (i, c * &s)).collect())
        .collect()
}

/// Diagonal of `[E, F]`; `None` when the commutator is not diagonal.
fn commutator_diag(
    e: &[Vec<(usize, BigRational)>],
    f: &[Vec<(usize, BigRational)>],
    dim: usize,
) -> Option<Vec<BigRational>> {
    let apply = |op: &[Vec<(usize, BigRational)>], v: &BTreeMap<usize, BigRational>| {
        let mut out: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (i, c) in v {
            for (j, d) in &op[*i] {
                *out.entry(*j).or_insert_with(BigRational::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let mut diag = vec![BigRational::zero(); dim];
    for (k, d) in diag.iter_mut().enumerate() {
        let unit: BTreeMap<usize, BigRational> = [(k, BigRational::one())].into_iter().collect();
        let mut ef = apply(e, &apply(f, &unit));
        for (j, c) in apply(f, &apply(e, &unit)) {
            *ef.entry(j).or_insert_with(BigRational::zero) -= c;
        }
        ef.retain(|_, c| !c.is_zero());
        for (j, c) in ef {
            if j != k {
                return None;
            }
            *d = c;
        }
    }
    Some(diag)
}

fn dynkin_components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let r = cartan.len();
    let mut seen = vec![false; r];
    let mut out = Vec::new();
    for s in 0..r {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..r {
                if !seen[j] && cartan[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Type of a connected simply-laced diagram and its Bourbaki numberings
/// (each a list of generator indices in node order).
fn numberings(comp: &[usize], cartan: &[Vec<i64>]) -> Option<(Series, Vec<Vec<usize>>)> {
    let adj = |i: usize| -> Vec<usize> { comp.iter().copied().filter(|&j| j != i && cartan[i][j] != 0).collect() };
    for &i in comp {
        for &j in comp {
            if i != j && cartan[i][j] != 0 && (cartan[i][j] != -1 || cartan[j][i] != -1) {
                return None;
            }
        }
    }
    let walk = |start: usize, prev: Option<usize>| -> Vec<usize> {
        let mut path = vec![start];
        let mut prev = prev;
        let mut cur = start;
        loop {
            let next: Vec<usize> = adj(cur).into_iter().filter(|&x| Some(x) != prev).collect();
            if next.len() != 1 {
                break;
            }
            prev = Some(cur);
            cur = next[0];
            path.push(cur);
        }
        path
    };
    if comp.len() == 1 {
        return Some((Series::A, vec![vec![comp[0]]]));
    }
    let degrees: Vec<usize> = comp.iter().map(|&i| adj(i).len()).collect();
    if degrees.iter().all(|&d| d <= 2) {
        let ends: Vec<usize> = comp.iter().copied().filter(|&i| adj(i).len() == 1).collect();
        if ends.len() != 2 {
            return None;
        }
        let p = walk(ends[0], None);
        if p.len() != comp.len() {
            return None;
        }
        let mut rev = p.clone();
        rev.reverse();
        return Some((Series::A, vec![p, rev]));
    }
    let branches: Vec<usize> = comp.iter().copied().filter(|&i| adj(i).len() == 3).collect();
    if branches.len() != 1 || degrees.iter().any(|&d| d > 3) {
        return None;
    }
    let b = branches[0];
    let mut arms: Vec<Vec<usize>> = adj(b).into_iter().map(|s| walk(s, Some(b))).collect();
    arms.sort_by_key(|a| (a.len(), a[0]));
    if arms[0].len() != 1 || arms[1].len() != 1 {
        return None;
    }
    let mut chain: Vec<usize> = arms[2].iter().rev().copied().collect();
    chain.push(b);
    let (s1, s2) = (arms[0][0], arms[1][0]);
    let mut first = chain.clone();
    first.extend([s1, s2]);
    let mut second = chain;
    second.extend([s2, s1]);
    Some((Series::D, vec![first, second]))
}

/// All global generator orders compatible with the declared factor list.
fn assign_components(info: &[(Series, Vec<Vec<usize>>)], factors: &[SimpleFactor]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(
        k: usize,
        info: &[(Series, Vec<Vec<usize>>)],
        factors: &[SimpleFactor],
        used: &mut Vec<bool>,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == factors.len() {
            if used.iter().all(|&u| u) {
                out.push(acc.clone());
            }
            return;
        }
        let f = &factors[k];
        for (c, (series, nums)) in info.iter().enumerate() {
            if used[c] || nums[0].len() != f.rank {
                continue;
            }
            if *series != f.series {
                continue;
            }
            used[c] = true;
            for num in nums {
                let len = acc.len();
                acc.extend_from_slice(num);
                rec(k + 1, info, factors, used, acc, out);
                acc.truncate(len);
            }
            used[c] = false;
        }
    }
    let mut used = vec![false; info.len()];
    rec(0, info, factors, &mut used, &mut Vec::new(), &mut out);
    out
}

/// Connected components of `vecs` under the generators.
fn constituents(
    vecs: &[usize],
    gens: &[(&Vec<Vec<(usize, BigRational)>>, &Vec<Vec<(usize, BigRational)>>)],
) -> Vec<Vec<usize>> {
    let set: BTreeSet<usize> = vecs.iter().copied().collect();
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (e, f) in gens {
        for op in [e, f] {
            for &v in vecs {
                for (w, _) in &op[v] {
                    if set.contains(w) {
                        adj.entry(v).or_default().insert(*w);
                        adj.entry(*w).or_default().insert(v);
                    }
                }
            }
        }
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &s in vecs {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = vec![s];
        seen.insert(s);
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for &w in adj.get(&v).into_iter().flatten() {
                if seen.insert(w) {
                    comp.push(w);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Check `-(XᵀQ^ν + Q^ν X) + Σ_μ Y_{νμ} Q^μ = 0` for an operator given on
/// `T` and `N` separately (generator images as in `MatrixModule`).
pub fn annihilates(qs: &[SymMatrix], t_op: &[Image], n_op: &[Image]) -> bool {
    let n = t_op.len();
    let a = n_op.len();
    let r = |x: &Rational64| BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()));
    let mut x = zero_mat(n);
    for (k, img) in t_op.iter().enumerate() {
        for (j, c) in img {
            x[*j][k] = r(c);
        }
    }
    let mut y = zero_mat(a);
    for (mu, img) in n_op.iter().enumerate() {
        for (nu, c) in img {
            y[*nu][mu] = r(c);
        }
    }
    for nu in 0..a {
        for al in 0..n {
            for be in 0..n {
                let mut s = BigRational::zero();
                for ga in 0..n {
                    s -= &x[ga][al] * &qs[nu][ga][be];
                    s -= &qs[nu][al][ga] * &x[ga][be];
                }
                for mu in 0..a {
                    s += &y[nu][mu] * &qs[mu][al][be];
                }
                if !s.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}
