//! Small grammar for module expressions over a model:
//!
//! ```text
//! sum   := prod (('⊕' | '+') prod)*
//! prod  := post (('⊗' | 'x') post)*
//! post  := atom ('^' ('frc' | 'T*c'))*
//! atom  := 'T' ['*'] | 'N' ['*'] | ('S' | 'Λ' | 'L') ['^'] k atom | '(' sum ')'
//! ```
//!
//! `k` may be written with ASCII or superscript digits. `^frc` removes the
//! image of the symmetry algebra from an `M ⊗ M*`, `^T*c` removes one copy
//! of `T*`.

use rigidity_core::pipeline::Analysis;
use rigidity_core::rep::{ext_power, sym_power, IrrSum};
use rigidity_core::weight::Series;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at position {pos}: {reason}")]
    Parse { pos: usize, reason: String },
    #[error("`^frc` needs an expression of the form M⊗M*, got {0}")]
    NotEndomorphism(String),
    #[error("cannot evaluate: {0}")]
    Eval(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    T,
    TDual,
    N,
    NDual,
    Sum(Vec<Expr>),
    Tensor(Vec<Expr>),
    Sym(usize, Box<Expr>),
    Ext(usize, Box<Expr>),
    /// Complement of the symmetry algebra's image.
    Frc(Box<Expr>),
    /// One copy of `T*` removed.
    TStarC(Box<Expr>),
}

impl Expr {
    pub fn dual(&self) -> Expr {
        match self {
            Expr::T => Expr::TDual,
            Expr::TDual => Expr::T,
            Expr::N => Expr::NDual,
            Expr::NDual => Expr::N,
            Expr::Sum(v) => Expr::Sum(v.iter().map(Expr::dual).collect()),
            Expr::Tensor(v) => Expr::Tensor(v.iter().map(Expr::dual).collect()),
            Expr::Sym(k, e) => Expr::Sym(*k, Box::new(e.dual())),
            Expr::Ext(k, e) => Expr::Ext(*k, Box::new(e.dual())),
            Expr::Frc(e) => Expr::Frc(Box::new(e.dual())),
            Expr::TStarC(e) => Expr::TStarC(Box::new(e.dual())),
        }
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let join = |v: &[Expr], sep: &str| v.iter().map(wrap).collect::<Vec<_>>().join(sep);
        match self {
            Expr::T => write!(f, "T"),
            Expr::TDual => write!(f, "T*"),
            Expr::N => write!(f, "N"),
            Expr::NDual => write!(f, "N*"),
            Expr::Sum(v) => write!(f, "{}", join(v, "⊕")),
            Expr::Tensor(v) => write!(f, "{}", join(v, "⊗")),
            Expr::Sym(k, e) => write!(f, "S^{}{}", k, wrap(e)),
            Expr::Ext(k, e) => write!(f, "Λ^{}{}", k, wrap(e)),
            Expr::Frc(e) => write!(f, "{}^frc", wrap(e)),
            Expr::TStarC(e) => write!(f, "{}^T*c", wrap(e)),
        }
    }
}

fn wrap(e: &Expr) -> String {
    match e {
        Expr::Sum(_) | Expr::Tensor(_) => format!("({})", e),
        _ => e.to_string(),
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

fn superscript(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c).map(|p| p as u32)
}

impl Parser {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            pos: self.pos,
            reason: reason.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_str(&mut self, s: &str) -> bool {
        self.skip_ws();
        let want: Vec<char> = s.chars().collect();
        if self.chars[self.pos..].starts_with(&want) {
            self.pos += want.len();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ExprError> {
        let mut terms = vec![self.prod()?];
        while self.eat('⊕') || self.eat('+') {
            terms.push(self.prod()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn prod(&mut self) -> Result<Expr, ExprError> {
        let mut factors = vec![self.post()?];
        while self.eat('⊗') || self.eat('x') {
            factors.push(self.post()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Tensor(factors) })
    }

    fn post(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.atom()?;
        loop {
            let save = self.pos;
            if !self.eat('^') {
                break;
            }
            if self.eat_str("frc") {
                e = Expr::Frc(Box::new(e));
            } else if self.eat_str("T*c") {
                e = Expr::TStarC(Box::new(e));
            } else {
                self.pos = save;
                return self.err("expected `frc` or `T*c` after `^`");
            }
        }
        Ok(e)
    }

    fn number(&mut self) -> Result<usize, ExprError> {
        self.skip_ws();
        let mut k: Option<usize> = None;
        while let Some(&c) = self.chars.get(self.pos) {
            let d = c.to_digit(10).or_else(|| superscript(c));
            match d {
                Some(d) => {
                    k = Some(k.unwrap_or(0) * 10 + d as usize);
                    self.pos += 1;
                }
                None => break,
            }
        }
        match k {
            Some(k) if k <= 12 => Ok(k),
            Some(_) => self.err("power too large (at most 12)"),
            None => self.err("expected a power"),
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('T') | Some('N') => {
                let c = self.chars[self.pos];
                self.pos += 1;
                let dual = self.chars.get(self.pos) == Some(&'*');
                if dual {
                    self.pos += 1;
                }
                Ok(match (c, dual) {
                    ('T', false) => Expr::T,
                    ('T', true) => Expr::TDual,
                    ('N', false) => Expr::N,
                    _ => Expr::NDual,
                })
            }
            Some(c @ ('S' | 'Λ' | 'L')) => {
                self.pos += 1;
                self.eat('^');
                let k = self.number()?;
                let inner = Box::new(self.atom()?);
                Ok(if c == 'S' { Expr::Sym(k, inner) } else { Expr::Ext(k, inner) })
            }
            Some('(') => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) => self.err(format!("unexpected `{}`", c)),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(input: &str) -> Result<Expr, ExprError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// A decomposed module together with the dimension predicted from `n`,
/// `a` and the symmetry algebra by closed formulas.
#[derive(Debug, Clone)]
pub struct Value {
    pub sum: IrrSum,
    pub expected_dim: u128,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of the image of the symmetry algebra in `End(M)`, from the
/// ranks of the acting factors.
fn image_dim(an: &Analysis, image: &IrrSum) -> u128 {
    let rank = an.engine.rank();
    image
        .iter()
        .map(|(w, m)| {
            let mut d = 1u128;
            for (f, fac) in rank.factors.iter().enumerate() {
                let o = rank.offset(f);
                if w.coords[o..o + fac.rank].iter().any(|c| *c != 0) {
                    let r = fac.rank as u128;
                    d *= match fac.series {
                        Series::A => r * (r + 2),
                        Series::D => r * (2 * r - 1),
                    };
                }
            }
            d * *m as u128
        })
        .sum()
}

pub fn evaluate(an: &Analysis, e: &Expr) -> Result<Value, ExprError> {
    let eng = &an.engine;
    let err = |x: rigidity_core::rep::RepError| ExprError::Eval(x.to_string());
    let n = an.model.n as u128;
    let a = an.model.a as u128;
    Ok(match e {
        Expr::T => Value { sum: an.t.clone(), expected_dim: n },
        Expr::TDual => Value { sum: an.t_dual.clone(), expected_dim: n },
        Expr::N => Value { sum: an.n.clone(), expected_dim: a },
        Expr::NDual => Value { sum: an.n_dual.clone(), expected_dim: a },
        Expr::Sum(v) => {
            let mut out = Value { sum: IrrSum::new(), expected_dim: 0 };
            for x in v {
                let y = evaluate(an, x)?;
                out.sum = out.sum.union(&y.sum);
                out.expected_dim += y.expected_dim;
            }
            out
        }
        Expr::Tensor(v) => {
            let mut out = evaluate(an, &v[0])?;
            for x in &v[1..] {
                let y = evaluate(an, x)?;
                out.sum = eng.tensor_sums(&out.sum, &y.sum).map_err(err)?;
                out.expected_dim *= y.expected_dim;
            }
            out
        }
        Expr::Sym(k, x) | Expr::Ext(k, x) => {
            let y = evaluate(an, x)?;
            let chi = eng.irr_sum_character(&y.sum).map_err(err)?;
            let (chi_k, d) = match e {
                Expr::Sym(..) => (sym_power(&chi, *k), binomial(y.expected_dim + *k as u128 - 1, *k as u128)),
                _ => (
                    ext_power(&chi, *k),
                    if (*k as u128) > y.expected_dim { 0 } else { binomial(y.expected_dim, *k as u128) },
                ),
            };
            Value {
                sum: eng.decompose(&chi_k).map_err(err)?,
                expected_dim: d,
            }
        }
        Expr::Frc(x) => {
            let base = match x.as_ref() {
                Expr::Tensor(v) if v.len() == 2 && v[1] == v[0].dual() => &v[0],
                _ => return Err(ExprError::NotEndomorphism(x.to_string())),
            };
            let y = evaluate(an, x)?;
            let m = evaluate(an, base)?;
            let image = an.symmetry_image(&m.sum);
            Value {
                sum: y.sum.subtract(&image, eng.rank()).map_err(err)?,
                expected_dim: y.expected_dim - image_dim(an, &image),
            }
        }
        Expr::TStarC(x) => {
            let y = evaluate(an, x)?;
            Value {
                sum: y.sum.subtract(&an.t_dual, eng.rank()).map_err(err)?,
                expected_dim: y.expected_dim - n,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_table_labels() {
        let e = parse("S³T*⊗N").unwrap();
        assert_eq!(e, Expr::Tensor(vec![Expr::Sym(3, Box::new(Expr::TDual)), Expr::N]));
        let e = parse("(T⊗T*)^frc⊗T*").unwrap();
        assert_eq!(
            e,
            Expr::Tensor(vec![Expr::Frc(Box::new(Expr::Tensor(vec![Expr::T, Expr::TDual]))), Expr::TDual])
        );
        let e = parse("(T x N*)^T*c x T*").unwrap();
        assert!(matches!(e, Expr::Tensor(_)));
        assert_eq!(parse("S^2(T*) + L2 N").unwrap().to_string(), "S^2T*⊕Λ^2N");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("T⊗").is_err());
        assert!(parse("Q").is_err());
        assert!(parse("T^xyz").is_err());
        assert!(parse("(T").is_err());
        assert!(parse("S99T").is_err());
    }

    #[test]
    fn display_roundtrips() {
        for s in ["S^3T*⊗N", "(T⊗N*)^T*c⊗T*", "Λ^2(T⊕N)", "(N⊗N*)^frc⊗T*"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
    }
}
