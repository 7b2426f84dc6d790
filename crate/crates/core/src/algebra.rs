//! Composition algebras by Cayley–Dickson doubling, and exact Gaussian
//! rationals used to move between real and null frames.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("composition algebras exist only in dimensions 1, 2, 4, 8 (got {0})")]
    BadDimension(usize),
}

/// Real composition algebra with basis `1, ε1, ..., ε_{d-1}` and integer
/// structure constants; complexification is implicit (coefficients may be
/// taken in any commutative ring).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompAlgebra {
    pub dim: usize,
    /// `table[i][j] = (s, k)` means `ε_i ε_j = s ε_k`.
    table: Vec<Vec<(i64, usize)>>,
}

impl CompAlgebra {
    pub fn new(dim: usize) -> Result<Self, AlgebraError> {
        if ![1, 2, 4, 8].contains(&dim) {
            return Err(AlgebraError::BadDimension(dim));
        }
        Ok(CompAlgebra {
            dim,
            table: cayley_dickson(dim),
        })
    }

    pub fn basis_product(&self, i: usize, j: usize) -> (i64, usize) {
        self.table[i][j]
    }

    /// Sign of `ε_i` under conjugation.
    pub fn conj_sign(&self, i: usize) -> i64 {
        if i == 0 {
            1
        } else {
            -1
        }
    }

    pub fn mul<T>(&self, x: &[T], y: &[T]) -> Vec<T>
    where
        T: Clone + Zero + Mul<Output = T> + Neg<Output = T>,
    {
        let mut out = vec![T::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let (s, k) = self.table[i][j];
                let p = xi.clone() * yj.clone();
                let p = if s < 0 { -p } else { p };
                out[k] = out[k].clone() + p;
            }
        }
        out
    }

    pub fn conj<T>(&self, x: &[T]) -> Vec<T>
    where
        T: Clone + Neg<Output = T>,
    {
        x.iter()
            .enumerate()
            .map(|(i, v)| if i == 0 { v.clone() } else { -v.clone() })
            .collect()
    }

    /// Norm form `Σ x_i²`.
    pub fn norm<T>(&self, x: &[T]) -> T
    where
        T: Clone + Zero + Mul<Output = T>,
    {
        x.iter().fold(T::zero(), |acc, v| acc + v.clone() * v.clone())
    }
}

/// `(a,b)(c,d) = (ac - d̄b, da + bc̄)` on the doubled basis.
fn cayley_dickson(dim: usize) -> Vec<Vec<(i64, usize)>> {
    if dim == 1 {
        return vec![vec![(1, 0)]];
    }
    let h = dim / 2;
    let t = cayley_dickson(h);
    let cs = |k: usize| if k == 0 { 1 } else { -1 };
    let mut m = vec![vec![(0, 0); dim]; dim];
    for (k, row) in m.iter_mut().enumerate() {
        for (l, cell) in row.iter_mut().enumerate() {
            *cell = match (k < h, l < h) {
                (true, true) => t[k][l],
                (true, false) => {
                    let (s, i) = t[l - h][k];
                    (s, i + h)
                }
                (false, true) => {
                    let (s, i) = t[k - h][l];
                    (s * cs(l), i + h)
                }
                (false, false) => {
                    let (s, i) = t[l - h][k - h];
                    (-s * cs(l - h), i)
                }
            };
        }
    }
    m
}

/// Exact element of `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.re, self.im)
    }
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn int(re: i64, im: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn i() -> Self {
        Self::int(0, 1)
    }

    pub fn conj(&self) -> Self {
        GaussRat {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        GaussRat {
            re: &self.re * r,
            im: &self.im * r,
        }
    }

    pub fn inv(&self) -> Self {
        let n = &self.re * &self.re + &self.im * &self.im;
        GaussRat {
            re: &self.re / &n,
            im: -(&self.im / &n),
        }
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        Self::int(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        Self::int(1, 0)
    }
}

/// Dense matrix product over `Q(i)`.
pub fn gauss_matmul(a: &[Vec<GaussRat>], b: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let n = a.len();
    let m = b.first().map(|r| r.len()).unwrap_or(0);
    let k = b.len();
    let mut out = vec![vec![GaussRat::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].clone() + a[i][l].clone() * b[l][j].clone();
                }
            }
        }
    }
    out
}

pub fn gauss_transpose(a: &[Vec<GaussRat>]) -> Vec<Vec<GaussRat>> {
    let m = a.first().map(|r| r.len()).unwrap_or(0);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit(d: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; d];
        v[i] = 1;
        v
    }

    #[test]
    fn rejects_bad_dimension() {
        assert!(CompAlgebra::new(3).is_err());
        assert!(CompAlgebra::new(16).is_err());
    }

    #[test]
    fn conjugation_and_units() {
        let r = CompAlgebra::new(1).unwrap();
        assert_eq!(r.conj(&[5i64]), vec![5]);
        let c = CompAlgebra::new(2).unwrap();
        assert_eq!(c.mul(&unit(2, 1), &unit(2, 1)), vec![-1, 0]);
    }

    #[test]
    fn quaternion_units_anticommute() {
        let h = CompAlgebra::new(4).unwrap();
        let a = h.mul(&unit(4, 1), &unit(4, 2));
        let b = h.mul(&unit(4, 2), &unit(4, 1));
        assert_eq!(a, b.iter().map(|x| -x).collect::<Vec<_>>());
        assert!(a.iter().any(|&x| x != 0));
    }

    #[test]
    fn octonions_are_not_associative() {
        let o = CompAlgebra::new(8).unwrap();
        let (e1, e2, e4) = (unit(8, 1), unit(8, 2), unit(8, 4));
        let left = o.mul(&o.mul(&e1, &e2), &e4);
        let right = o.mul(&e1, &o.mul(&e2, &e4));
        assert_ne!(left, right);
    }

    #[test]
    fn norm_form_from_conjugate() {
        for d in [1, 2, 4, 8] {
            let alg = CompAlgebra::new(d).unwrap();
            for i in 0..d {
                let e = unit(d, i);
                let p = alg.mul(&e, &alg.conj(&e));
                assert_eq!(p, unit(d, 0));
            }
        }
    }

    #[test]
    fn gaussian_arithmetic() {
        let z = GaussRat::int(1, 1);
        assert_eq!(z.clone() * z.conj(), GaussRat::int(2, 0));
        assert_eq!(z.clone() * z.inv(), GaussRat::one());
        assert_eq!(GaussRat::i() * GaussRat::i(), GaussRat::int(-1, 0));
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(d in prop::sample::select(vec![1usize, 2, 4, 8]),
                                  x in proptest::collection::vec(-4i64..5, 8),
                                  y in proptest::collection::vec(-4i64..5, 8)) {
            let alg = CompAlgebra::new(d).unwrap();
            let (x, y) = (&x[..d], &y[..d]);
            let xy = alg.mul(x, y);
            prop_assert_eq!(alg.norm(&xy), alg.norm(x) * alg.norm(y));
            // x x̄ = N(x) 1
            let mut expect = vec![0i64; d];
            expect[0] = alg.norm(x);
            prop_assert_eq!(alg.mul(x, &alg.conj(x)), expect);
        }
    }
}
