//! Coordinate models of the rank-two compact Hermitian symmetric spaces
//! handled here: Grassmannians `G(2,m)`, the spinor variety `S10`, and the
//! `𝔸P²` family (`𝔸` = complexified ℂ, ℍ, 𝕆).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{gauss_matmul, gauss_transpose, CompAlgebra, GaussRat};
use crate::explicit::MatrixModule;
use crate::forms::{GraphChart, SymMatrix};
use crate::symmetry::{extract_symmetry, Extremal, Side, Symmetry, SymmetryDecl, SymmetryError};
use crate::weight::{format_weight, ReductiveRank, SimpleFactor, Weight};

pub const MODEL_NAMES: [&str; 5] = ["G(2,5)", "S10", "SEG_P2xP2", "G(2,6)_AP2", "OP2"];

/// Seed of the functional that fixes the Borel subalgebra. It is part of
/// the model, not of a verification run.
const BOREL_SEED: u64 = 0x0b0_5eed;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("unknown model `{0}`; known: G(2,m) for m >= 5, S10, SEG_P2xP2, G(2,6)_AP2, OP2")]
    Unknown(String),
    #[error("the quadric hypersurface is excluded: its second fundamental form is a single quadric and the rigidity statement here concerns varieties other than a quadric hypersurface")]
    QuadricExcluded,
    #[error("G(2,{0}) needs m >= 5")]
    GrassmannianTooSmall(usize),
    #[error("symmetry extraction failed for {model}: {source}")]
    Symmetry {
        model: String,
        #[source]
        source: SymmetryError,
    },
    #[error("null frame transform produced a non-real quadric")]
    NonRealFrame,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    Grassmannian { m: usize },
    Spinor10,
    AlgebraPlane { d: usize },
}

#[derive(Debug, Clone)]
pub struct Model {
    pub name: String,
    pub kind: ModelKind,
    pub n: usize,
    pub a: usize,
    pub tangent_labels: Vec<String>,
    pub normal_labels: Vec<String>,
    /// `|II|` in the weight frame of `T` and `N`.
    pub quadrics: Vec<SymMatrix>,
    /// For `𝔸P²` models: `{aā, bb̄, ab̄}` in the real coordinates
    /// `a_0..a_{d-1}, b_0..b_{d-1}`.
    pub real_quadrics: Option<Vec<SymMatrix>>,
    pub chart: GraphChart,
    pub symmetry: Symmetry,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn zero_sym(n: usize) -> SymMatrix {
    vec![vec![BigRational::zero(); n]; n]
}

/// Add `c·x_i x_j` to the quadric.
fn add_monomial(q: &mut SymMatrix, i: usize, j: usize, c: BigRational) {
    if i == j {
        q[i][i] += c;
    } else {
        let h = c * half();
        q[i][j] += h.clone();
        q[j][i] += h;
    }
}

impl Model {
    pub fn by_name(name: &str) -> Result<Model, ModelError> {
        let trimmed = name.trim();
        match trimmed {
            "S10" => build(ModelKind::Spinor10, trimmed),
            "SEG_P2xP2" => build(ModelKind::AlgebraPlane { d: 2 }, trimmed),
            "G(2,6)_AP2" => build(ModelKind::AlgebraPlane { d: 4 }, trimmed),
            "OP2" => build(ModelKind::AlgebraPlane { d: 8 }, trimmed),
            s if s.eq_ignore_ascii_case("quadric") || s.starts_with('Q') && s[1..].parse::<usize>().is_ok() => {
                Err(ModelError::QuadricExcluded)
            }
            s => {
                let m = s
                    .strip_prefix("G(2,")
                    .and_then(|r| r.strip_suffix(')'))
                    .and_then(|r| r.parse::<usize>().ok())
                    .ok_or_else(|| ModelError::Unknown(s.to_string()))?;
                if m < 5 {
                    return Err(ModelError::GrassmannianTooSmall(m));
                }
                build(ModelKind::Grassmannian { m }, s)
            }
        }
    }

    pub fn rank(&self) -> &ReductiveRank {
        &self.symmetry.rank
    }

    pub fn tangent(&self) -> &MatrixModule {
        &self.symmetry.tangent
    }

    pub fn normal(&self) -> &MatrixModule {
        &self.symmetry.normal
    }

    pub fn tangent_index(&self, label: &str) -> Option<usize> {
        self.tangent_labels.iter().position(|l| l == label)
    }

    pub fn normal_index(&self, label: &str) -> Option<usize> {
        self.normal_labels.iter().position(|l| l == label)
    }

    /// `2Q` for each quadric, which is integral for every model.
    pub fn doubled_quadrics(&self) -> Vec<Vec<Vec<BigInt>>> {
        let two = BigRational::from_integer(BigInt::from(2));
        self.quadrics
            .iter()
            .map(|q| {
                q.iter()
                    .map(|row| {
                        row.iter()
                            .map(|c| {
                                let v = c * &two;
                                assert!(v.is_integer(), "doubled quadric entry not integral");
                                v.to_integer()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    /// Outer automorphism exchanging the two factors of the Segre model
    /// (and their central charges); `None` for the other models.
    pub fn outer_swap(&self, w: &Weight) -> Option<Weight> {
        if self.kind != (ModelKind::AlgebraPlane { d: 2 }) {
            return None;
        }
        let mut out = w.clone();
        out.coords.swap(0, 1);
        out.charges.swap(0, 1);
        Some(out)
    }

    /// Highest weight strings of the constituents of `T` and `N`.
    pub fn highest_weight_strings(&self) -> (Vec<String>, Vec<String>) {
        let t = self.tangent();
        let nm = self.normal();
        let name = |m: &MatrixModule, comps: &[Vec<usize>]| -> Vec<String> {
            comps
                .iter()
                .map(|c| {
                    let top = c
                        .iter()
                        .copied()
                        .find(|&v| m.e.iter().all(|op| op[v].is_empty()))
                        .expect("highest vector");
                    format_weight(self.rank(), &m.weights[top])
                })
                .collect()
        };
        (
            name(t, &self.symmetry.tangent_constituents),
            name(nm, &self.symmetry.normal_constituents),
        )
    }
}

fn build(kind: ModelKind, name: &str) -> Result<Model, ModelError> {
    let (tl, nl, quadrics, real, decl) = match kind {
        ModelKind::Grassmannian { m } => grassmannian(m),
        ModelKind::Spinor10 => spinor10(),
        ModelKind::AlgebraPlane { d } => algebra_plane(d)?,
    };
    let symmetry = extract_symmetry(&quadrics, &tl, &nl, &decl).map_err(|source| ModelError::Symmetry {
        model: name.to_string(),
        source,
    })?;
    Ok(Model {
        name: name.to_string(),
        kind,
        n: tl.len(),
        a: nl.len(),
        chart: GraphChart::from_quadrics(tl.len(), &quadrics),
        tangent_labels: tl,
        normal_labels: nl,
        quadrics,
        real_quadrics: real,
        symmetry,
    })
}

type Parts = (Vec<String>, Vec<String>, Vec<SymMatrix>, Option<Vec<SymMatrix>>, SymmetryDecl);

fn pair_label(i: usize, j: usize, wide: bool) -> String {
    if wide {
        format!("({},{})", i, j)
    } else {
        format!("({}{})", i, j)
    }
}

/// `G(2,m)`: tangent `(1j), (2j)` for `3 ≤ j ≤ m`, normal `(ij)` for
/// `3 ≤ i < j ≤ m`, `x^{ij} = x^{1i}x^{2j} − x^{1j}x^{2i}`.
fn grassmannian(m: usize) -> Parts {
    let wide = m >= 10;
    let k = m - 2;
    let mut tl = Vec::new();
    for r in 1..=2 {
        for j in 3..=m {
            tl.push(pair_label(r, j, wide));
        }
    }
    let t_idx = |r: usize, j: usize| (r - 1) * k + (j - 3);
    let mut nl = Vec::new();
    let mut qs = Vec::new();
    for i in 3..=m {
        for j in i + 1..=m {
            nl.push(pair_label(i, j, wide));
            let mut q = zero_sym(2 * k);
            add_monomial(&mut q, t_idx(1, i), t_idx(2, j), BigRational::one());
            add_monomial(&mut q, t_idx(1, j), t_idx(2, i), -BigRational::one());
            qs.push(q);
        }
    }
    let b_rank = m - 3;
    let mut t_hw = vec![1, 1];
    t_hw.extend(vec![0; b_rank - 1]);
    let mut n_hw = vec![0, 0, 1];
    n_hw.extend(vec![0; b_rank - 2]);
    let decl = SymmetryDecl {
        factors: vec![SimpleFactor::a(1).named("A"), SimpleFactor::a(b_rank).named("B")],
        tangent_highest: vec![t_hw],
        normal_highest: vec![n_hw],
        extremes: vec![
            (Side::Tangent, t_idx(1, 3), Extremal::Lowest),
            (Side::Normal, nl.len() - 1, Extremal::Highest),
        ],
        seed: BOREL_SEED,
    };
    (tl, nl, qs, None, decl)
}

/// `S10`: tangent `(ij)`, `1 ≤ i < j ≤ 5`; `x^j` is the Pfaffian of the
/// skew tangent matrix with row and column `j` removed.
fn spinor10() -> Parts {
    let mut tl = Vec::new();
    let mut idx = [[usize::MAX; 6]; 6];
    for i in 1..=5 {
        for j in i + 1..=5 {
            idx[i][j] = tl.len();
            tl.push(format!("({}{})", i, j));
        }
    }
    let mut nl = Vec::new();
    let mut qs = Vec::new();
    for j in 1..=5 {
        nl.push(j.to_string());
        let rest: Vec<usize> = (1..=5).filter(|&x| x != j).collect();
        let (a, b, c, d) = (rest[0], rest[1], rest[2], rest[3]);
        let mut q = zero_sym(10);
        add_monomial(&mut q, idx[a][b], idx[c][d], BigRational::one());
        add_monomial(&mut q, idx[a][c], idx[b][d], -BigRational::one());
        add_monomial(&mut q, idx[a][d], idx[b][c], BigRational::one());
        qs.push(q);
    }
    let decl = SymmetryDecl {
        factors: vec![SimpleFactor::a(4).named("A")],
        tangent_highest: vec![vec![0, 1, 0, 0]],
        normal_highest: vec![vec![0, 0, 0, 1]],
        extremes: vec![
            (Side::Tangent, idx[1][2], Extremal::Lowest),
            (Side::Normal, 0, Extremal::Highest),
        ],
        seed: BOREL_SEED,
    };
    (tl, nl, qs, None, decl)
}

/// `{aā, bb̄, ab̄}` on `(a, b) ∈ 𝔸 ⊕ 𝔸` in real coordinates.
pub fn algebra_plane_real_quadrics(d: usize) -> Vec<SymMatrix> {
    let alg = CompAlgebra::new(d).expect("composition algebra dimension");
    let n = 2 * d;
    let mut qa = zero_sym(n);
    let mut qb = zero_sym(n);
    for k in 0..d {
        qa[k][k] = BigRational::one();
        qb[d + k][d + k] = BigRational::one();
    }
    let mut comps = vec![zero_sym(n); d];
    for k in 0..d {
        for l in 0..d {
            let (s, i) = alg.basis_product(k, l);
            let c = s * alg.conj_sign(l);
            add_monomial(&mut comps[i], k, d + l, BigRational::from_integer(BigInt::from(c)));
        }
    }
    let mut out = vec![qa, qb];
    out.extend(comps);
    out
}

/// Pairs `ε_{2p} ± iε_{2p+1}` as columns.
fn pair_matrix(d: usize) -> Vec<Vec<GaussRat>> {
    let mut p = vec![vec![GaussRat::zero(); d]; d];
    for j in (0..d).step_by(2) {
        p[j][j] = GaussRat::one();
        p[j + 1][j] = GaussRat::i();
        p[j][j + 1] = GaussRat::one();
        p[j + 1][j + 1] = -GaussRat::i();
    }
    p
}

fn block_diag(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![GaussRat::zero(); n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = a[i][j].clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            out[n + i][n + j] = b[i][j].clone();
        }
    }
    out
}

/// Inverse of the pair matrix: rows `½(ε^{2p} ∓ iε^{2p+1})`.
fn pair_inverse(d: usize) -> Vec<Vec<GaussRat>> {
    let h = half();
    let mut p = vec![vec![GaussRat::zero(); d]; d];
    for j in (0..d).step_by(2) {
        p[j][j] = GaussRat::new(h.clone(), BigRational::zero());
        p[j][j + 1] = GaussRat::new(BigRational::zero(), -h.clone());
        p[j + 1][j] = GaussRat::new(h.clone(), BigRational::zero());
        p[j + 1][j + 1] = GaussRat::new(BigRational::zero(), h.clone());
    }
    p
}

fn algebra_plane(d: usize) -> Result<Parts, ModelError> {
    let real = algebra_plane_real_quadrics(d);
    let n = 2 * d;
    let p_t = block_diag(&pair_matrix(d), &pair_matrix(d));
    let ident2 = vec![
        vec![GaussRat::one(), GaussRat::zero()],
        vec![GaussRat::zero(), GaussRat::one()],
    ];
    let r_inv = block_diag(&ident2, &pair_inverse(d));
    let lifted: Vec<Vec<Vec<GaussRat>>> = real
        .iter()
        .map(|q| {
            let g: Vec<Vec<GaussRat>> = q.iter().map(|r| r.iter().cloned().map(GaussRat::real).collect()).collect();
            gauss_matmul(&gauss_matmul(&gauss_transpose(&p_t), &g), &p_t)
        })
        .collect();
    let mut qs = Vec::new();
    for row in &r_inv {
        let mut acc = vec![vec![GaussRat::zero(); n]; n];
        for (mu, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    acc[i][j] = acc[i][j].clone() + c.clone() * lifted[mu][i][j].clone();
                }
            }
        }
        let mut q = zero_sym(n);
        for i in 0..n {
            for j in 0..n {
                if !acc[i][j].is_real() {
                    return Err(ModelError::NonRealFrame);
                }
                q[i][j] = acc[i][j].re.clone();
            }
        }
        qs.push(q);
    }
    let mut tl = Vec::new();
    for side in ["a", "b"] {
        for p in 0..d / 2 {
            tl.push(format!("{}{}+", side, p));
            tl.push(format!("{}{}-", side, p));
        }
    }
    let mut nl = vec!["a".to_string(), "b".to_string()];
    for p in 0..d / 2 {
        nl.push(format!("c{}+", p));
        nl.push(format!("c{}-", p));
    }
    let t_low = 0;
    let n_high = 1;
    let decl = match d {
        2 => SymmetryDecl {
            factors: vec![SimpleFactor::a(1).named("U"), SimpleFactor::a(1).named("W")],
            tangent_highest: vec![vec![1, 0], vec![0, 1]],
            normal_highest: vec![vec![1, 1]],
            extremes: vec![(Side::Tangent, t_low, Extremal::Lowest), (Side::Normal, n_high, Extremal::Highest)],
            seed: BOREL_SEED,
        },
        4 => SymmetryDecl {
            factors: vec![SimpleFactor::a(1).named("A"), SimpleFactor::a(3).named("B")],
            tangent_highest: vec![vec![1, 1, 0, 0]],
            normal_highest: vec![vec![0, 0, 1, 0]],
            extremes: vec![(Side::Tangent, t_low, Extremal::Lowest), (Side::Normal, n_high, Extremal::Highest)],
            seed: BOREL_SEED,
        },
        8 => SymmetryDecl {
            factors: vec![SimpleFactor::d(5)],
            tangent_highest: vec![vec![0, 0, 0, 0, 1]],
            normal_highest: vec![vec![1, 0, 0, 0, 0]],
            extremes: vec![(Side::Tangent, t_low, Extremal::Lowest), (Side::Normal, n_high, Extremal::Highest)],
            seed: BOREL_SEED,
        },
        _ => return Err(ModelError::Unknown(format!("AP2 with dim {}", d))),
    };
    Ok((tl, nl, qs, Some(real), decl))
}

/// Distinguished null vectors of an `𝔸P²` model in real coordinates
/// `(a_0..a_{d-1}, b_0..b_{d-1})`.
#[derive(Debug, Clone)]
pub struct NullFrame {
    /// `1 + iε1`
    pub e1: Vec<GaussRat>,
    /// `1 − iε1`
    pub e1_bar: Vec<GaussRat>,
    /// `1 + iε2`, absent when `d = 2`.
    pub e2: Option<Vec<GaussRat>>,
    /// `ε2 + iε3`: the null vector whose span with `e1` lies in the base
    /// locus (absent when `d = 2`).
    pub e2_isotropic: Option<Vec<GaussRat>>,
    /// Labels of the normal covectors `e^a, e^b, e^0, e^{ε1}, …` in the
    /// real frame, in the order of `real_quadrics`.
    pub normal_covectors: Vec<String>,
}

pub fn null_frame(model: &Model) -> Option<NullFrame> {
    let d = match model.kind {
        ModelKind::AlgebraPlane { d } => d,
        _ => return None,
    };
    let vec_of = |entries: &[(usize, GaussRat)]| {
        let mut v = vec![GaussRat::zero(); 2 * d];
        for (i, c) in entries {
            v[*i] = c.clone();
        }
        v
    };
    let e1 = vec_of(&[(0, GaussRat::one()), (1, GaussRat::i())]);
    let e1_bar = vec_of(&[(0, GaussRat::one()), (1, -GaussRat::i())]);
    let (e2, e2_isotropic) = if d >= 4 {
        (
            Some(vec_of(&[(0, GaussRat::one()), (2, GaussRat::i())])),
            Some(vec_of(&[(2, GaussRat::one()), (3, GaussRat::i())])),
        )
    } else {
        (None, None)
    };
    let mut normal_covectors = vec!["a".to_string(), "b".to_string(), "0".to_string()];
    normal_covectors.extend((1..d).map(|j| format!("eps{}", j)));
    Some(NullFrame {
        e1,
        e1_bar,
        e2,
        e2_isotropic,
        normal_covectors,
    })
}

/// `q(u, v)` over `Q(i)` for a rational symmetric matrix.
pub fn gauss_bilinear(q: &SymMatrix, u: &[GaussRat], v: &[GaussRat]) -> GaussRat {
    let mut acc = GaussRat::zero();
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() || q[i][j].is_zero() {
                continue;
            }
            acc = acc + ui.clone() * vj.clone().scale(&q[i][j]);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explicit::{check_relations, Module};
    use crate::forms::extract;
    use crate::weight::build_root_data;

    #[test]
    fn rejects_quadric_and_unknown() {
        assert!(matches!(Model::by_name("quadric"), Err(ModelError::QuadricExcluded)));
        assert!(matches!(Model::by_name("G(2,4)"), Err(ModelError::GrassmannianTooSmall(4))));
        assert!(matches!(Model::by_name("E7"), Err(ModelError::Unknown(_))));
    }

    #[test]
    fn g25_dimensions_and_minors() {
        let m = Model::by_name("G(2,5)").unwrap();
        assert_eq!((m.n, m.a), (6, 3));
        assert_eq!(m.symmetry.dim_r, 12);
        assert_eq!(m.symmetry.dim_h, 4);
        let i = m.normal_index("(45)").unwrap();
        let q = &m.quadrics[i];
        let (a, b) = (m.tangent_index("(14)").unwrap(), m.tangent_index("(25)").unwrap());
        assert_eq!(q[a][b], half());
        let (hw_t, hw_n) = m.highest_weight_strings();
        assert_eq!(hw_t.len(), 1);
        assert_eq!(hw_n.len(), 1);
    }

    #[test]
    fn symmetry_dimensions() {
        for (name, r, h) in [("S10", 25, 5), ("SEG_P2xP2", 8, 4), ("G(2,6)_AP2", 19, 5), ("OP2", 46, 6)] {
            let m = Model::by_name(name).unwrap();
            assert_eq!((m.symmetry.dim_r, m.symmetry.dim_h), (r, h), "{}", name);
        }
    }

    #[test]
    fn modules_satisfy_relations_and_preserve_ii() {
        for name in MODEL_NAMES {
            let m = Model::by_name(name).unwrap();
            let rd = build_root_data(m.rank()).unwrap();
            check_relations(m.tangent(), &rd).unwrap();
            check_relations(m.normal(), &rd).unwrap();
            for k in 0..m.tangent().n_simple() {
                assert!(crate::symmetry::annihilates(&m.quadrics, &m.tangent().e[k], &m.normal().e[k]));
                assert!(crate::symmetry::annihilates(&m.quadrics, &m.tangent().f[k], &m.normal().f[k]));
            }
            // charges: T -> 1 on its constituents, II of total charge zero
            for w in &m.tangent().weights {
                assert_eq!(w.charges.iter().filter(|c| **c == num_rational::Rational64::from_integer(1)).count(), 1);
            }
        }
    }

    #[test]
    fn chart_reproduces_quadrics() {
        for name in MODEL_NAMES {
            let m = Model::by_name(name).unwrap();
            assert_eq!(extract(&m.chart, 2).quadric_matrices(), m.quadrics);
            assert!(extract(&m.chart, 3).is_zero());
            assert!(extract(&m.chart, 4).is_zero());
        }
    }

    #[test]
    fn null_frame_vectors() {
        let m = Model::by_name("G(2,6)_AP2").unwrap();
        let f = null_frame(&m).unwrap();
        let real = m.real_quadrics.as_ref().unwrap();
        assert!(gauss_bilinear(&real[0], &f.e1, &f.e1).is_zero());
        for q in real {
            assert!(gauss_bilinear(q, &f.e1, &f.e1).is_zero());
            let iso = f.e2_isotropic.as_ref().unwrap();
            assert!(gauss_bilinear(q, &f.e1, iso).is_zero());
            assert!(gauss_bilinear(q, iso, iso).is_zero());
        }
        // q^b vanishes on the a-copy
        assert!(gauss_bilinear(&real[1], &f.e1, &f.e1_bar).is_zero());
        assert!(!gauss_bilinear(&real[0], &f.e1, &f.e1_bar).is_zero());
        assert!(null_frame(&Model::by_name("S10").unwrap()).is_none());
        let op2 = Model::by_name("OP2").unwrap();
        let (t, n) = op2.highest_weight_strings();
        assert_eq!(t, vec!["D5[0,0,0,0,1] @ (1)".to_string()]);
        assert_eq!(n, vec!["D5[1,0,0,0,0] @ (2)".to_string()]);
    }
}
