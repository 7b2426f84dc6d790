//! Polynomial graph charts and the fundamental forms read off from them.
//!
//! A chart writes each normal coordinate `x^μ` as a polynomial in the
//! tangent coordinates. The degree-`k` part of those polynomials, stored as
//! coefficients of sorted monomials, is the order-`k` fundamental form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormError {
    #[error("vector has {got} entries, tangent space has dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("{got} arguments supplied to a form of order {order}")]
    TooManyArguments { order: usize, got: usize },
}

/// Symmetric matrix with exact entries; `q(x) = x^T Q x`.
pub type SymMatrix = Vec<Vec<BigRational>>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomial with monomials keyed by sorted variable multi-indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Poly {
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Poly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, mut mono: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        mono.sort_unstable();
        let e = self.terms.entry(mono.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&mono);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::new();
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    pub fn var(i: u32) -> Poly {
        let mut p = Poly::new();
        p.add_term(vec![i], BigRational::one());
        p
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn homogeneous_part(&self, k: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(m, c)| m.iter().fold(c.clone(), |acc, &i| acc * &x[i as usize]))
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// The quadratic form `x^T Q x` as a polynomial.
    pub fn from_quadric(q: &SymMatrix) -> Poly {
        let mut p = Poly::new();
        for (i, row) in q.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                p.add_term(vec![i as u32, j as u32], v.clone());
            }
        }
        p
    }
}

/// Graph parametrization: one polynomial per normal coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphChart {
    pub n: usize,
    pub normals: Vec<Poly>,
}

impl GraphChart {
    pub fn from_quadrics(n: usize, qs: &[SymMatrix]) -> Self {
        GraphChart {
            n,
            normals: qs.iter().map(Poly::from_quadric).collect(),
        }
    }

    pub fn a(&self) -> usize {
        self.normals.len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.normals.iter().filter_map(|p| p.min_degree()).min()
    }
}

/// Order-`k` fundamental form in the monomial convention: the coefficient
/// of `x^{α1}…x^{αk}` (sorted) in the normal polynomial `μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundForm {
    pub order: usize,
    pub n: usize,
    pub a: usize,
    pub coeffs: BTreeMap<(usize, Vec<u32>), BigRational>,
}

/// Degree-`k` coefficients of every normal polynomial.
pub fn extract(chart: &GraphChart, k: usize) -> FundForm {
    let mut coeffs = BTreeMap::new();
    for (mu, p) in chart.normals.iter().enumerate() {
        for (m, c) in &p.homogeneous_part(k).terms {
            coeffs.insert((mu, m.clone()), c.clone());
        }
    }
    FundForm {
        order: k,
        n: chart.n,
        a: chart.normals.len(),
        coeffs,
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

impl FundForm {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mu: usize, mono: &[u32]) -> BigRational {
        let mut m = mono.to_vec();
        m.sort_unstable();
        self.coeffs.get(&(mu, m)).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Symmetric matrices of an order-two form: `Q_{αα} = c_{αα}`,
    /// `Q_{αβ} = c_{αβ}/2`.
    pub fn quadric_matrices(&self) -> Vec<SymMatrix> {
        assert_eq!(self.order, 2, "quadric matrices need an order-two form");
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut out = vec![vec![vec![BigRational::zero(); self.n]; self.n]; self.a];
        for ((mu, m), c) in &self.coeffs {
            let (i, j) = (m[0] as usize, m[1] as usize);
            if i == j {
                out[*mu][i][i] = c.clone();
            } else {
                out[*mu][i][j] = c * &half;
                out[*mu][j][i] = c * &half;
            }
        }
        out
    }

    fn check(&self, v: &[BigRational]) -> Result<(), FormError> {
        if v.len() != self.n {
            return Err(FormError::Dimension {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Insert one argument of the fully polarized form: returns the
    /// order-`k-1` form `F(v, x, …, x) = (1/k) D_v F`.
    pub fn partial(&self, v: &[BigRational]) -> Result<FundForm, FormError> {
        self.check(v)?;
        if self.order == 0 {
            return Err(FormError::TooManyArguments { order: 0, got: 1 });
        }
        let k = BigRational::from_integer(BigInt::from(self.order));
        let mut acc: BTreeMap<(usize, Vec<u32>), BigRational> = BTreeMap::new();
        for ((mu, m), c) in &self.coeffs {
            // derivative of x^m along v
            let mut pos = 0;
            while pos < m.len() {
                let var = m[pos];
                let mut count = 1;
                while pos + count < m.len() && m[pos + count] == var {
                    count += 1;
                }
                let vv = &v[var as usize];
                if !vv.is_zero() {
                    let mut rest = m.clone();
                    rest.remove(pos);
                    let term = c * vv * BigRational::from_integer(BigInt::from(count)) / &k;
                    let e = acc.entry((*mu, rest)).or_insert_with(BigRational::zero);
                    *e += term;
                }
                pos += count;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(FundForm {
            order: self.order - 1,
            n: self.n,
            a: self.a,
            coeffs: acc,
        })
    }

    /// Fully polarized evaluation on `k` vectors: a normal vector.
    pub fn evaluate(&self, vectors: &[Vec<BigRational>]) -> Result<Vec<BigRational>, FormError> {
        if vectors.len() > self.order {
            return Err(FormError::TooManyArguments {
                order: self.order,
                got: vectors.len(),
            });
        }
        let mut f = self.clone();
        for v in vectors {
            f = f.partial(v)?;
        }
        if f.order != 0 {
            return Err(FormError::TooManyArguments {
                order: self.order,
                got: vectors.len(),
            });
        }
        let mut out = vec![BigRational::zero(); self.a];
        for ((mu, _), c) in f.coeffs {
            out[mu] += c;
        }
        Ok(out)
    }

    /// Contract with a normal covector, giving a scalar form of the same
    /// order (a = 1).
    pub fn contract(&self, covector: &[BigRational]) -> FundForm {
        let mut coeffs: BTreeMap<(usize, Vec<u32>), BigRational> = BTreeMap::new();
        for ((mu, m), c) in &self.coeffs {
            if !covector[*mu].is_zero() {
                *coeffs.entry((0, m.clone())).or_insert_with(BigRational::zero) += c * &covector[*mu];
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        FundForm {
            order: self.order,
            n: self.n,
            a: 1,
            coeffs,
        }
    }

    /// Polarized coefficient `F(e_{α1}, …, e_{αk})_μ`, related to the
    /// monomial coefficient by the multinomial factor.
    pub fn polarized(&self, mu: usize, mono: &[u32]) -> BigRational {
        let mut m = mono.to_vec();
        m.sort_unstable();
        let mut mult = BigInt::one();
        let mut pos = 0;
        while pos < m.len() {
            let mut count = 1;
            while pos + count < m.len() && m[pos + count] == m[pos] {
                count += 1;
            }
            mult *= factorial(count);
            pos += count;
        }
        self.coeff(mu, &m) * BigRational::new(mult, factorial(m.len()))
    }

    /// Sparse triples `(μ, multi-index, coefficient)` sorted.
    pub fn triples(&self) -> Vec<(usize, Vec<u32>, BigRational)> {
        self.coeffs
            .iter()
            .map(|((mu, m), c)| (*mu, m.clone(), c.clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecr(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    fn sample_chart() -> GraphChart {
        // x^0 = y0 y1 + y2^2 + 3 y0 y1 y2 ; x^1 = y1^2 - y0 y2 + y0^3
        let mut p = Poly::new();
        p.add_term(vec![0, 1], rat(1));
        p.add_term(vec![2, 2], rat(1));
        p.add_term(vec![0, 1, 2], rat(3));
        let mut q = Poly::new();
        q.add_term(vec![1, 1], rat(1));
        q.add_term(vec![0, 2], rat(-1));
        q.add_term(vec![0, 0, 0], rat(1));
        GraphChart { n: 3, normals: vec![p, q] }
    }

    #[test]
    fn extraction_by_degree() {
        let c = sample_chart();
        let f3 = extract(&c, 3);
        assert_eq!(f3.coeff(0, &[2, 1, 0]), rat(3));
        assert_eq!(f3.coeff(1, &[0, 0, 0]), rat(1));
        assert!(extract(&c, 4).is_zero());
        let f2 = extract(&c, 2);
        let qs = f2.quadric_matrices();
        assert_eq!(qs[0][0][1], BigRational::new(1.into(), 2.into()));
        assert_eq!(GraphChart::from_quadrics(3, &qs).normals[0], c.normals[0].homogeneous_part(2));
    }

    #[test]
    fn evaluation_matches_polynomial() {
        let c = sample_chart();
        let f2 = extract(&c, 2);
        let v = vecr(&[1, 2, -1]);
        let val = f2.evaluate(&[v.clone(), v.clone()]).unwrap();
        assert_eq!(val[0], c.normals[0].homogeneous_part(2).eval(&v));
        assert!(matches!(
            f2.evaluate(&[v.clone(), v.clone(), v.clone()]),
            Err(FormError::TooManyArguments { .. })
        ));
        assert!(matches!(f2.partial(&vecr(&[1])), Err(FormError::Dimension { .. })));
    }

    #[test]
    fn polarized_coefficients() {
        let f3 = extract(&sample_chart(), 3);
        let e = |i: usize| {
            let mut v = vecr(&[0, 0, 0]);
            v[i] = rat(1);
            v
        };
        let val = f3.evaluate(&[e(0), e(1), e(2)]).unwrap();
        assert_eq!(val[0], f3.polarized(0, &[0, 1, 2]));
        assert_eq!(f3.polarized(0, &[0, 1, 2]), BigRational::new(1.into(), 2.into()));
    }

    proptest! {
        #[test]
        fn polarization_identity(v in proptest::collection::vec(-3i64..4, 3), w in proptest::collection::vec(-3i64..4, 3)) {
            let f2 = extract(&sample_chart(), 2);
            let (v, w) = (vecr(&v), vecr(&w));
            let s: Vec<BigRational> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            let lhs = f2.evaluate(&[s.clone(), s]).unwrap();
            let fv = f2.evaluate(&[v.clone(), v.clone()]).unwrap();
            let fw = f2.evaluate(&[w.clone(), w.clone()]).unwrap();
            let fvw = f2.evaluate(&[v.clone(), w.clone()]).unwrap();
            for mu in 0..2 {
                prop_assert_eq!(&lhs[mu] - &fv[mu] - &fw[mu], rat(2) * &fvw[mu]);
            }
        }

        #[test]
        fn evaluation_is_symmetric(u in proptest::collection::vec(-3i64..4, 3), v in proptest::collection::vec(-3i64..4, 3), w in proptest::collection::vec(-3i64..4, 3)) {
            let f3 = extract(&sample_chart(), 3);
            let (u, v, w) = (vecr(&u), vecr(&v), vecr(&w));
            let a = f3.evaluate(&[u.clone(), v.clone(), w.clone()]).unwrap();
            let b = f3.evaluate(&[w.clone(), u.clone(), v.clone()]).unwrap();
            let c = f3.evaluate(&[v, w, u]).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &c);
        }
    }
}
