//! Decomposition tables per model, with mass conservation and comparison
//! against golden expectations transcribed from the published tables.

use std::collections::BTreeMap;

use rigidity_core::models::ModelKind;
use rigidity_core::pipeline::Analysis;
use rigidity_core::rep::IrrSum;
use rigidity_core::weight::{report_order, Series};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expr::{self, ExprError};

#[derive(Debug, Error)]
pub enum TableError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("golden file for {model}: {reason}")]
    Golden { model: String, reason: String },
}

/// Rows emitted for every model.
pub const ROWS: [&str; 14] = [
    "T",
    "T*",
    "N",
    "S^1T*",
    "S^2T*",
    "S^3T*",
    "S^3T*⊗N",
    "T⊗N*",
    "(T⊗N*)^T*c⊗T*",
    "(T⊗T*)^frc⊗T*",
    "(N⊗N*)^frc⊗T*",
    "S^4T*",
    "S^4T*⊗N",
    "S^5T*⊗N",
];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Erratum {
    pub reading: String,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompareMode {
    /// Multiset of semisimple highest weights.
    Weights,
    /// Number of printed terms against the number of constituents up to
    /// the outer swap.
    Orbits,
    /// Number of printed terms against the number of constituents.
    Count,
}

fn default_mode() -> CompareMode {
    CompareMode::Weights
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GoldenRow {
    pub row: String,
    pub printed: String,
    #[serde(default = "default_mode")]
    pub mode: CompareMode,
    #[serde(default)]
    pub erratum: Option<Erratum>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Golden {
    pub model: String,
    pub note: String,
    /// Symbols that are not among `T`, `T*`, `N`, `N*`, `g`; any other
    /// symbol is an unknown that matches one unexplained constituent.
    #[serde(default)]
    pub symbols: BTreeMap<String, String>,
    pub rows: Vec<GoldenRow>,
}

pub fn golden(model: &str) -> Option<Golden> {
    let text = match model {
        "G(2,5)" => include_str!("../golden/g25.json"),
        "S10" => include_str!("../golden/s10.json"),
        "SEG_P2xP2" => include_str!("../golden/seg.json"),
        "G(2,6)_AP2" => include_str!("../golden/g26_ap2.json"),
        "OP2" => include_str!("../golden/op2.json"),
        _ => return None,
    };
    Some(serde_json::from_str(text).expect("embedded golden file parses"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Match,
    /// The printed table differs, and the documented reading agrees.
    PrintedTableDiscrepancy,
    /// Neither the printed table nor a documented reading agrees.
    Mismatch,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Comparison {
    pub status: Status,
    pub printed: String,
    pub erratum: Option<Erratum>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Component {
    pub weight: String,
    pub multiplicity: u64,
    pub dimension: u128,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRow {
    pub row: String,
    pub components: Vec<Component>,
    pub total: u128,
    pub expected: u128,
    pub comparison: Option<Comparison>,
}

impl TableRow {
    pub fn mass_ok(&self) -> bool {
        self.total == self.expected
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Table {
    pub model: String,
    pub rows: Vec<TableRow>,
}

impl Table {
    pub fn mismatches(&self) -> Vec<&TableRow> {
        self.rows
            .iter()
            .filter(|r| matches!(&r.comparison, Some(c) if c.status == Status::Mismatch))
            .collect()
    }

    pub fn discrepancies(&self) -> Vec<&TableRow> {
        self.rows
            .iter()
            .filter(|r| matches!(&r.comparison, Some(c) if c.status == Status::PrintedTableDiscrepancy))
            .collect()
    }
}

type Ss = Vec<i32>;

/// Printed-table notation: terms joined by `⊕`/`+`, each a product of
/// symbols with optional exponents, parenthesized groups, or literals
/// `{a|b,c}` giving semisimple coordinates factor by factor.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Factor {
    Symbol(String, usize),
    Literal(Ss),
    Group(Vec<Factor>),
    Sum(Vec<Vec<Factor>>),
}

struct SymParser<'a> {
    chars: Vec<char>,
    pos: usize,
    dims: &'a [usize],
}

fn superscript(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|s| s == c).map(|p| p as u32)
}

impl SymParser<'_> {
    fn fail<T>(&self, why: &str) -> Result<T, String> {
        let s: String = self.chars.iter().collect();
        Err(format!("{} at {} in `{}`", why, self.pos, s))
    }

    fn ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn terms(&mut self) -> Result<Vec<Vec<Factor>>, String> {
        let mut out = Vec::new();
        loop {
            let p = self.product()?;
            // a parenthesized sum standing alone is spliced in
            match p.as_slice() {
                [Factor::Sum(inner)] => out.extend(inner.iter().cloned()),
                _ => out.push(p),
            }
            self.ws();
            match self.chars.get(self.pos) {
                Some('+') | Some('⊕') => self.pos += 1,
                None | Some(')') => return Ok(out),
                Some(_) => return self.fail("unexpected character"),
            }
        }
    }

    fn product(&mut self) -> Result<Vec<Factor>, String> {
        let mut out = Vec::new();
        loop {
            self.ws();
            match self.chars.get(self.pos) {
                Some('(') => {
                    self.pos += 1;
                    let mut inner = self.terms()?;
                    if self.chars.get(self.pos) != Some(&')') {
                        return self.fail("expected `)`");
                    }
                    self.pos += 1;
                    out.push(if inner.len() == 1 {
                        Factor::Group(inner.pop().unwrap())
                    } else {
                        Factor::Sum(inner)
                    });
                }
                Some('{') => out.push(self.literal()?),
                Some(c) if c.is_ascii_alphabetic() => {
                    let mut name = c.to_string();
                    self.pos += 1;
                    if self.chars.get(self.pos) == Some(&'*') {
                        name.push('*');
                        self.pos += 1;
                    } else if self.chars.get(self.pos) == Some(&'_') {
                        name.push('_');
                        self.pos += 1;
                        while let Some(d) = self.chars.get(self.pos).filter(|d| d.is_ascii_digit()) {
                            name.push(*d);
                            self.pos += 1;
                        }
                    }
                    let mut k = 0usize;
                    let mut seen = false;
                    while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10).or_else(|| superscript(*c))) {
                        k = k * 10 + d as usize;
                        seen = true;
                        self.pos += 1;
                    }
                    out.push(Factor::Symbol(name, if seen { k } else { 1 }));
                }
                _ => break,
            }
        }
        if out.is_empty() {
            return self.fail("empty product");
        }
        Ok(out)
    }

    fn literal(&mut self) -> Result<Factor, String> {
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos] != '}' {
            self.pos += 1;
        }
        if self.pos == self.chars.len() {
            return self.fail("unterminated literal");
        }
        let body: String = self.chars[start..self.pos].iter().collect();
        self.pos += 1;
        let groups: Vec<&str> = body.split('|').collect();
        if groups.len() != self.dims.len() {
            return self.fail("literal has the wrong number of factors");
        }
        let mut out = Vec::new();
        for (g, &d) in groups.iter().zip(self.dims) {
            let coords: Vec<i32> = g
                .split(',')
                .map(|c| c.trim().parse::<i32>())
                .collect::<Result<_, _>>()
                .map_err(|_| format!("bad literal `{{{}}}`", body))?;
            if coords.len() != d {
                return self.fail("literal factor has the wrong rank");
            }
            out.extend(coords);
        }
        Ok(Factor::Literal(out))
    }
}

fn parse_printed(s: &str, dims: &[usize]) -> Result<Vec<Vec<Factor>>, String> {
    SymParser {
        chars: s.chars().collect(),
        pos: 0,
        dims,
    }
    .terms()
    .and_then(|t| if t.is_empty() { Err(format!("empty expression `{}`", s)) } else { Ok(t) })
}

fn add(a: &Ss, b: &Ss) -> Ss {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Highest weights of one printed term. `None` when it involves an
/// unknown symbol.
fn term_weights(term: &[Factor], symbols: &BTreeMap<String, Vec<Ss>>, zero: &Ss) -> Option<Vec<Ss>> {
    let mut acc: Vec<Ss> = vec![zero.clone()];
    for f in term {
        let opts: Vec<Ss> = match f {
            Factor::Literal(w) => vec![w.clone()],
            Factor::Group(inner) => term_weights(inner, symbols, zero)?,
            Factor::Sum(terms) => {
                let mut all = Vec::new();
                for t in terms {
                    all.extend(term_weights(t, symbols, zero)?);
                }
                all
            }
            Factor::Symbol(name, k) => {
                let base = symbols.get(name)?;
                // Cartan powers of a sum: every multiset of size k
                let mut pw: Vec<Ss> = vec![zero.clone()];
                for _ in 0..*k {
                    let mut next = Vec::new();
                    for p in &pw {
                        for b in base {
                            next.push(add(p, b));
                        }
                    }
                    next.sort();
                    next.dedup();
                    pw = next;
                }
                pw
            }
        };
        let mut next = Vec::new();
        for a in &acc {
            for o in &opts {
                next.push(add(a, o));
            }
        }
        next.sort();
        next.dedup();
        acc = next;
    }
    Some(acc)
}

fn ss_multiset(s: &IrrSum) -> BTreeMap<Ss, u64> {
    let mut out = BTreeMap::new();
    for (w, m) in s.iter() {
        *out.entry(w.coords.clone()).or_insert(0) += m;
    }
    out
}

fn fmt_ss(w: &Ss, dims: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut o = 0;
    for &d in dims {
        parts.push(w[o..o + d].iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","));
        o += d;
    }
    format!("{{{}}}", parts.join("|"))
}

/// Compare a printed row with the computed constituents. Returns `None`
/// when they agree, else a description of the difference.
fn compare_printed(
    printed: &str,
    mode: CompareMode,
    computed: &IrrSum,
    orbits: u64,
    symbols: &BTreeMap<String, Vec<Ss>>,
    dims: &[usize],
    zero: &Ss,
) -> Result<Option<String>, String> {
    let terms = parse_printed(printed, dims)?;
    match mode {
        CompareMode::Count | CompareMode::Orbits => {
            let have = if mode == CompareMode::Count { computed.count() } else { orbits };
            Ok(if have == terms.len() as u64 {
                None
            } else {
                Some(format!("{} printed terms, {} computed", terms.len(), have))
            })
        }
        CompareMode::Weights => {
            let mut left = ss_multiset(computed);
            let mut missing = Vec::new();
            let mut unknown = 0;
            for t in &terms {
                match term_weights(t, symbols, zero) {
                    None => unknown += 1,
                    Some(ws) => {
                        for w in ws {
                            match left.get_mut(&w) {
                                Some(m) if *m > 0 => *m -= 1,
                                _ => missing.push(fmt_ss(&w, dims)),
                            }
                        }
                    }
                }
            }
            let extra: Vec<String> = left
                .iter()
                .filter(|(_, m)| **m > 0)
                .flat_map(|(w, m)| std::iter::repeat_n(fmt_ss(w, dims), *m as usize))
                .collect();
            if missing.is_empty() && extra.len() == unknown {
                return Ok(None);
            }
            Ok(Some(format!(
                "printed but absent: [{}]; computed but unprinted: [{}]; unknown symbols: {}",
                missing.join(", "),
                extra.join(", "),
                unknown
            )))
        }
    }
}

fn factor_dims(an: &Analysis) -> Vec<usize> {
    an.engine.rank().factors.iter().map(|f| f.rank).collect()
}

fn adjoint_weights(an: &Analysis) -> Vec<Ss> {
    let rank = an.engine.rank();
    let mut out = Vec::new();
    for (f, fac) in rank.factors.iter().enumerate() {
        let o = rank.offset(f);
        let mut w = vec![0; rank.semisimple_rank()];
        match fac.series {
            Series::A if fac.rank == 1 => w[o] = 2,
            Series::A => {
                w[o] = 1;
                w[o + fac.rank - 1] = 1;
            }
            Series::D => w[o + 1] = 1,
        }
        out.push(w);
    }
    out
}

pub fn regenerate_tables(an: &Analysis) -> Result<Table, TableError> {
    let model = an.model;
    let eng = &an.engine;
    let dims = factor_dims(an);
    let zero: Ss = vec![0; eng.rank().semisimple_rank()];
    let gold = golden(&model.name);
    let mut symbols: BTreeMap<String, Vec<Ss>> = BTreeMap::new();
    let ss_list = |s: &IrrSum| -> Vec<Ss> {
        let mut v: Vec<Ss> = s.iter().map(|(w, _)| w.coords.clone()).collect();
        v.dedup();
        v
    };
    symbols.insert("T".into(), ss_list(&an.t));
    symbols.insert("T*".into(), ss_list(&an.t_dual));
    symbols.insert("N".into(), ss_list(&an.n));
    symbols.insert("N*".into(), ss_list(&an.n_dual));
    symbols.insert("g".into(), adjoint_weights(an));
    if let Some(g) = &gold {
        for (name, lit) in &g.symbols {
            let parsed = parse_printed(lit, &dims).map_err(|reason| TableError::Golden {
                model: model.name.clone(),
                reason,
            })?;
            let ws = term_weights(&parsed[0], &symbols, &zero).ok_or_else(|| TableError::Golden {
                model: model.name.clone(),
                reason: format!("symbol {} is not resolvable", name),
            })?;
            symbols.insert(name.clone(), ws);
        }
    }
    let mut rows = Vec::new();
    for label in ROWS {
        let e = expr::parse(label)?;
        let v = expr::evaluate(an, &e)?;
        let mut comps: Vec<(rigidity_core::weight::Weight, u64)> = v.sum.iter().map(|(w, m)| (w.clone(), *m)).collect();
        comps.sort_by(|a, b| report_order(&eng.rd, &a.0, &b.0));
        let mut components = Vec::new();
        let mut total = 0u128;
        for (w, m) in comps {
            let d = eng.weyl_dimension(&w).map_err(|x| ExprError::Eval(x.to_string()))?;
            total += d * m as u128;
            components.push(Component {
                weight: eng.fmt(&w),
                multiplicity: m,
                dimension: d,
            });
        }
        let comparison = match gold.as_ref().and_then(|g| g.rows.iter().find(|r| r.row == label)) {
            None => None,
            Some(gr) => {
                let orbits = orbit_count(an, &v.sum);
                let cmp = |s: &str| {
                    compare_printed(s, gr.mode, &v.sum, orbits, &symbols, &dims, &zero).map_err(|reason| {
                        TableError::Golden {
                            model: model.name.clone(),
                            reason,
                        }
                    })
                };
                let printed = cmp(&gr.printed)?;
                let (status, detail) = match (&printed, &gr.erratum) {
                    (None, _) => (Status::Match, "agrees with the printed row".to_string()),
                    (Some(diff), Some(er)) => match cmp(&er.reading)? {
                        None => (Status::PrintedTableDiscrepancy, diff.clone()),
                        Some(d2) => (Status::Mismatch, format!("{}; documented reading also differs: {}", diff, d2)),
                    },
                    (Some(diff), None) => (Status::Mismatch, diff.clone()),
                };
                Some(Comparison {
                    status,
                    printed: gr.printed.clone(),
                    erratum: gr.erratum.clone(),
                    detail,
                })
            }
        };
        rows.push(TableRow {
            row: label.to_string(),
            components,
            total,
            expected: v.expected_dim,
            comparison,
        });
    }
    Ok(Table {
        model: model.name.clone(),
        rows,
    })
}

fn orbit_count(an: &Analysis, s: &IrrSum) -> u64 {
    if matches!(an.model.kind, ModelKind::AlgebraPlane { d: 2 }) {
        an.orbit_count(s)
    } else {
        s.count()
    }
}

pub fn render_markdown(t: &Table) -> String {
    let mut out = format!("## Decomposition tables for {}\n\n", t.model);
    out.push_str("| module | constituents (dim) | total | expected | mass | printed table |\n");
    out.push_str("|---|---|---|---|---|---|\n");
    for r in &t.rows {
        let comps: Vec<String> = r
            .components
            .iter()
            .map(|c| {
                if c.multiplicity == 1 {
                    format!("{} ({})", c.weight, c.dimension)
                } else {
                    format!("{}x {} ({})", c.multiplicity, c.weight, c.dimension)
                }
            })
            .collect();
        let cmp = match &r.comparison {
            None => "-".to_string(),
            Some(c) => match c.status {
                Status::Match => "match".into(),
                Status::PrintedTableDiscrepancy => "printed-table discrepancy".into(),
                Status::Mismatch => "MISMATCH".into(),
            },
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            r.row,
            comps.join(" ⊕ "),
            r.total,
            r.expected,
            if r.mass_ok() { "ok" } else { "FAIL" },
            cmp
        ));
    }
    let notes: Vec<&TableRow> = t.rows.iter().filter(|r| matches!(&r.comparison, Some(c) if c.status != Status::Match)).collect();
    if !notes.is_empty() {
        out.push_str("\n### Differences from the printed tables\n\n");
        for r in notes {
            let c = r.comparison.as_ref().unwrap();
            out.push_str(&format!("- `{}`: printed `{}`. {}.", r.row, c.printed, c.detail));
            if let Some(e) = &c.erratum {
                out.push_str(&format!(" Reading `{}`: {}", e.reading, e.reason));
            }
            out.push('\n');
        }
    }
    out
}
