//! Order-by-order elimination of the irreducible components of
//! `S^k T* ⊗ N` for `k = 3, 4, 5`: frame normalizations, occurrence
//! filters, and highest-weight-vector elimination through Bertini
//! vanishings.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bertini::{
    bertini_vanishings, is_generic_quadric, maximal_null_spans, BertiniError, BertiniRequest, VanishingSet,
    DEFAULT_SAMPLES,
};
use crate::explicit::{hwv_space, MatrixModule, Module, ModuleRef, PowerModule, TensorModule};
use crate::linalg::rank_rational;
use crate::models::{Model, ModelKind};
use crate::rep::{sym_power, FormalCharacter, IrrSum, RepEngine, RepError};
use crate::weight::{report_order, Series, Weight};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Bertini(#[from] BertiniError),
    #[error("normalization expects {0} in the decomposition but it is absent")]
    Normalization(String),
    #[error("complement of the symmetry algebra has a negative multiplicity at {0}")]
    Complement(String),
    #[error("curated Bertini script references unknown label {0}")]
    Script(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Reason {
    /// Killed by the frame normalizations.
    Normalized,
    /// Absent from the occurrence filter for its order.
    OccurrenceFilter,
    /// Highest weight vector supported on Bertini vanishings.
    HwvBertini,
    /// Every highest weight vector meets a Bertini vanishing. The full set
    /// of Bertini conditions is stable under the symmetry group, so the
    /// solutions form a submodule and such a component cannot lie in it.
    HwvOrbit,
}

impl Reason {
    pub fn as_str(&self) -> &'static str {
        match self {
            Reason::Normalized => "normalized",
            Reason::OccurrenceFilter => "occurrence-filter",
            Reason::HwvBertini => "hwv-bertini",
            Reason::HwvOrbit => "hwv-bertini-orbit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub weight: Weight,
    pub reason: Reason,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderLedger {
    pub k: usize,
    pub decomposition: IrrSum,
    pub after_normalization: IrrSum,
    pub filter: IrrSum,
    pub after_filter: IrrSum,
    /// Survivors once the curated Bertini script has been applied.
    pub after_curated: IrrSum,
    /// One entry per eliminated copy.
    pub eliminations: Vec<Elimination>,
    pub survivors: IrrSum,
    pub notes: Vec<String>,
}

impl OrderLedger {
    fn new(k: usize, decomposition: IrrSum) -> Self {
        OrderLedger {
            k,
            after_normalization: decomposition.clone(),
            after_filter: decomposition.clone(),
            after_curated: decomposition.clone(),
            survivors: decomposition.clone(),
            decomposition,
            filter: IrrSum::new(),
            eliminations: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Eliminated copies as a multiset.
    pub fn eliminated(&self) -> IrrSum {
        IrrSum::from_weights(self.eliminations.iter().map(|e| e.weight.clone()))
    }

    /// Eliminated plus surviving equals the decomposition.
    pub fn is_complete(&self) -> bool {
        self.eliminated().union(&self.survivors) == self.decomposition
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionCheck {
    pub label: String,
    pub expected: u128,
    pub actual: u128,
}

impl DimensionCheck {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Rigid,
    Incomplete,
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    pub samples: usize,
    /// Compare `dim` of every highest weight space with the multiplicity
    /// for every component (not only survivors).
    pub full_hwv_checks: bool,
    /// Build the explicit `S^5 T* ⊗ N` basis and compare its character.
    pub explicit_order5: bool,
    /// After the support rule, kill components none of whose highest
    /// weight vectors avoid the known vanishings.
    pub orbit_rule: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: 2024,
            samples: DEFAULT_SAMPLES,
            full_hwv_checks: false,
            explicit_order5: true,
            orbit_rule: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RigidityResult {
    pub model: String,
    pub verdict: Verdict,
    pub orders: Vec<OrderLedger>,
    pub vanishings: VanishingSet,
    pub dimension_checks: Vec<DimensionCheck>,
    pub seed: u64,
    pub notes: Vec<String>,
}

/// A model with its representation engine and the decompositions of
/// `T`, `T*`, `N`, `N*`.
pub struct Analysis<'m> {
    pub model: &'m Model,
    pub engine: RepEngine,
    pub t: IrrSum,
    pub t_dual: IrrSum,
    pub n: IrrSum,
    pub n_dual: IrrSum,
    pub chi_t_dual: FormalCharacter,
    pub chi_n: FormalCharacter,
    t_dual_module: Arc<MatrixModule>,
    n_module: Arc<MatrixModule>,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

impl<'m> Analysis<'m> {
    pub fn new(model: &'m Model, engine: RepEngine) -> Result<Self, PipelineError> {
        let chi_t = model.tangent().character();
        let chi_n = model.normal().character();
        let t = engine.decompose(&chi_t)?;
        let n = engine.decompose(&chi_n)?;
        let t_dual = engine.dual_sum(&t);
        let n_dual = engine.dual_sum(&n);
        let t_dual_module = Arc::new(model.tangent().dual(""));
        Ok(Analysis {
            model,
            chi_t_dual: chi_t.dual(),
            chi_n,
            t,
            t_dual,
            n,
            n_dual,
            t_dual_module,
            n_module: Arc::new(model.normal().clone()),
            engine,
        })
    }

    pub fn fmt(&self, w: &Weight) -> String {
        self.engine.fmt(w)
    }

    /// Character of `S^k T* ⊗ N`.
    pub fn sk_character(&self, k: usize) -> FormalCharacter {
        sym_power(&self.chi_t_dual, k).mul(&self.chi_n)
    }

    pub fn decompose_sk(&self, k: usize) -> Result<IrrSum, PipelineError> {
        Ok(self.engine.decompose(&self.sk_character(k))?)
    }

    /// Explicit module `S^k T* ⊗ N` in the monomial basis.
    pub fn sk_module(&self, k: usize) -> (Arc<PowerModule>, TensorModule) {
        let base: ModuleRef = self.t_dual_module.clone();
        let power = Arc::new(PowerModule::symmetric(base, k));
        let n: ModuleRef = self.n_module.clone();
        let tensor = TensorModule::new(power.clone(), n);
        (power, tensor)
    }

    fn adjoint(&self, f: usize) -> Weight {
        let rank = self.engine.rank();
        let fac = &rank.factors[f];
        let o = rank.offset(f);
        let mut w = rank.zero_weight();
        match fac.series {
            Series::A if fac.rank == 1 => w.coords[o] = 2,
            Series::A => {
                w.coords[o] = 1;
                w.coords[o + fac.rank - 1] = 1;
            }
            Series::D => w.coords[o + 1] = 1,
        }
        w
    }

    /// Image of the symmetry algebra in `M ⊗ M*`: adjoints of the simple
    /// factors acting non-trivially on `M`, plus one trivial summand per
    /// dimension of the centre's image.
    pub fn symmetry_image(&self, m: &IrrSum) -> IrrSum {
        let rank = self.engine.rank();
        let mut out = IrrSum::new();
        for f in 0..rank.factors.len() {
            let o = rank.offset(f);
            let r = rank.factors[f].rank;
            if m.iter().any(|(w, _)| w.coords[o..o + r].iter().any(|c| *c != 0)) {
                out.add(self.adjoint(f), 1);
            }
        }
        let rows: Vec<Vec<BigRational>> = m
            .iter()
            .map(|(w, _)| {
                w.charges
                    .iter()
                    .map(|c| BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom())))
                    .collect()
            })
            .collect();
        let centre = if rows.is_empty() || rows[0].is_empty() {
            0
        } else {
            rank_rational(&rows)
        };
        if centre > 0 {
            out.add(rank.zero_weight(), centre as u64);
        }
        out
    }

    fn complement(&self, m: &IrrSum, remove: &IrrSum) -> Result<IrrSum, PipelineError> {
        let full = self.engine.tensor_sums(m, &self.engine.dual_sum(m))?;
        full.subtract(remove, self.engine.rank())
            .map_err(|e| PipelineError::Complement(e.to_string()))
    }

    /// `(T ⊗ T*)^{𝔯ᶜ}`.
    pub fn complement_tt(&self) -> Result<IrrSum, PipelineError> {
        self.complement(&self.t, &self.symmetry_image(&self.t))
    }

    /// `(N ⊗ N*)^{𝔯ᶜ}`.
    pub fn complement_nn(&self) -> Result<IrrSum, PipelineError> {
        self.complement(&self.n, &self.symmetry_image(&self.n))
    }

    /// `T ⊗ N*`.
    pub fn t_n_dual(&self) -> Result<IrrSum, PipelineError> {
        Ok(self.engine.tensor_sums(&self.t, &self.n_dual)?)
    }

    /// `(T ⊗ N*)^{T*ᶜ}`: one copy of each constituent of `T*` removed.
    pub fn complement_tn(&self) -> Result<IrrSum, PipelineError> {
        self.t_n_dual()?
            .subtract(&self.t_dual, self.engine.rank())
            .map_err(|e| PipelineError::Complement(e.to_string()))
    }

    /// Rule 2 filter: `(T⊗T*)^{𝔯ᶜ}⊗T* + (N⊗N*)^{𝔯ᶜ}⊗T*`.
    pub fn filter_order3(&self) -> Result<IrrSum, PipelineError> {
        let a = self.engine.tensor_sums(&self.complement_tt()?, &self.t_dual)?;
        let b = self.engine.tensor_sums(&self.complement_nn()?, &self.t_dual)?;
        Ok(a.union(&b))
    }

    /// Rule 3 filter: `(T⊗N*)^{T*ᶜ}⊗T*`.
    pub fn filter_order4(&self) -> Result<IrrSum, PipelineError> {
        Ok(self.engine.tensor_sums(&self.complement_tn()?, &self.t_dual)?)
    }

    /// Number of constituents counted up to the outer swap of the Segre
    /// model (plain count otherwise).
    pub fn orbit_count(&self, s: &IrrSum) -> u64 {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut count = 0;
        for (w, m) in s.iter() {
            if seen.contains(w) {
                continue;
            }
            seen.insert(w.clone());
            match self.model.outer_swap(w) {
                Some(s2) if s2 != *w && s.mult(&s2) == *m => {
                    seen.insert(s2);
                    count += m;
                }
                _ => count += m,
            }
        }
        count
    }

    fn sorted(&self, s: &IrrSum) -> Vec<(Weight, u64)> {
        let mut v: Vec<(Weight, u64)> = s.iter().map(|(w, m)| (w.clone(), *m)).collect();
        v.sort_by(|a, b| report_order(&self.engine.rd, &a.0, &b.0));
        v
    }

    fn monomial_name(&self, power: &PowerModule, tensor: &TensorModule, b: usize) -> String {
        let (i, mu) = tensor.split(b);
        let lower: String = power
            .monomial(i)
            .iter()
            .map(|&a| self.model.tangent_labels[a as usize].clone())
            .collect();
        let nl = &self.model.normal_labels[mu];
        format!("r^{{{}}}_{{{}}}", nl.trim_start_matches('(').trim_end_matches(')'), lower)
    }
}

/// Curated `(q, L)` for each model.
pub fn curated_script(model: &Model) -> Result<(usize, Vec<usize>), PipelineError> {
    let (q, l): (String, Vec<String>) = match model.kind {
        ModelKind::Grassmannian { m } => {
            let wide = m >= 10;
            let q = if wide { "(4,5)" } else { "(45)" };
            let l = if wide { "(1,3)" } else { "(13)" };
            (q.into(), vec![l.into()])
        }
        ModelKind::Spinor10 => ("1".into(), vec!["(12)".into()]),
        ModelKind::AlgebraPlane { d } => {
            let mut l = vec!["a0+".to_string()];
            if d >= 4 {
                l.push("a1+".into());
            }
            ("b".into(), l)
        }
    };
    let qi = model.normal_index(&q).ok_or_else(|| PipelineError::Script(q.clone()))?;
    let li = l
        .iter()
        .map(|x| model.tangent_index(x).ok_or_else(|| PipelineError::Script(x.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((qi, li))
}

/// Bertini vanishings for a given `(q, L)` at order `k`: part 1 when `q`
/// is generic and part 2 at order 3; parts 1, 3 and 4 at order 4 once
/// `F3 = 0` is established.
fn vanishings_for(
    model: &Model,
    q: usize,
    l: &[usize],
    k: usize,
    f3_zero: bool,
    opts: &RunOptions,
) -> Result<VanishingSet, PipelineError> {
    let generic = is_generic_quadric(&model.quadrics, &model.quadrics[q], opts.seed, opts.samples).generic;
    let mut req = BertiniRequest {
        q,
        l: l.to_vec(),
        part1: generic,
        max_order: k,
        seed: opts.seed,
        samples: opts.samples,
        ..Default::default()
    };
    match k {
        3 => req.part2 = true,
        4 if f3_zero => {
            req.l3 = Some(l.to_vec());
            req.l4 = Some(l.to_vec());
        }
        _ => {}
    }
    let f3 = move |_: usize, _: &[u32]| f3_zero;
    let mut vs = bertini_vanishings(&model.quadrics, &model.tangent_labels, &model.normal_labels, &req, &f3)?;
    if k == 4 {
        // keep only order-4 identities; order-3 ones were used already
        vs.identities.retain(|i| i.order == 4);
    }
    Ok(vs)
}

/// Eliminate survivors whose highest weight vectors are supported on
/// vanished coefficients.
fn hwv_eliminate(
    an: &Analysis,
    ledger: &mut OrderLedger,
    module: &(Arc<PowerModule>, TensorModule),
    vs: &VanishingSet,
    tag: &str,
    orbit: bool,
) {
    let (power, tensor) = module;
    let mut still = IrrSum::new();
    for (w, m) in an.sorted(&ledger.survivors) {
        let h = hwv_space(tensor, &w);
        let vanished: BTreeSet<usize> = h
            .basis
            .iter()
            .copied()
            .filter(|&b| {
                let (i, mu) = tensor.split(b);
                vs.vanishes(mu, power.monomial(i))
            })
            .collect();
        let outside: BTreeSet<usize> = h.basis.iter().copied().filter(|b| !vanished.contains(b)).collect();
        // hw vectors supported on vanished coefficients only
        let forced = h.surviving_dim(&outside);
        let killed = if orbit {
            h.dim() > 0 && h.surviving_dim(&vanished) == 0
        } else {
            h.dim() > 0 && forced == h.dim()
        };
        if killed {
            let (reason, evidence) = if orbit {
                let hit: Vec<String> = h
                    .support()
                    .into_iter()
                    .filter(|b| vanished.contains(b))
                    .map(|b| an.monomial_name(power, tensor, b))
                    .collect();
                (
                    Reason::HwvOrbit,
                    format!("{}: no hw vector avoids {{{}}}", tag, hit.join(", ")),
                )
            } else {
                let support: Vec<String> = h.support().iter().map(|&b| an.monomial_name(power, tensor, b)).collect();
                (Reason::HwvBertini, format!("{}: hw support {{{}}} vanishes", tag, support.join(", ")))
            };
            for _ in 0..m {
                ledger.eliminations.push(Elimination { weight: w.clone(), reason, evidence: evidence.clone() });
            }
        } else {
            let offending = h
                .support()
                .into_iter()
                .find(|b| !vanished.contains(b))
                .map(|b| an.monomial_name(power, tensor, b))
                .unwrap_or_default();
            ledger
                .notes
                .push(format!("{} survives {}: {} not known to vanish", an.fmt(&w), tag, offending));
            still.add(w, m);
        }
    }
    ledger.survivors = still;
}

/// Run the full pipeline for one model.
pub fn rigidity_verdict(model: &Model, engine: RepEngine, opts: &RunOptions) -> Result<RigidityResult, PipelineError> {
    let an = Analysis::new(model, engine)?;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let n = model.n as u128;
    let a = model.a as u128;
    checks.push(DimensionCheck {
        label: "dim T".into(),
        expected: n,
        actual: an.engine.irr_sum_dimension(&an.t)?,
    });
    checks.push(DimensionCheck {
        label: "dim N".into(),
        expected: a,
        actual: an.engine.irr_sum_dimension(&an.n)?,
    });
    let mut all_vs = VanishingSet::new(&model.tangent_labels, &model.normal_labels);
    let (q, l) = curated_script(model)?;

    // order 3
    let d3 = an.decompose_sk(3)?;
    let mut o3 = OrderLedger::new(3, d3.clone());
    let mut cur = d3.clone();
    for (w, m) in an.sorted(&an.t_n_dual()?) {
        for _ in 0..m {
            if !cur.remove_once(&w) {
                return Err(PipelineError::Normalization(an.fmt(&w)));
            }
            o3.eliminations.push(Elimination {
                weight: w.clone(),
                reason: Reason::Normalized,
                evidence: "translated away by the action of T⊗N* (the T* action duplicates a factor)".into(),
            });
        }
    }
    o3.after_normalization = cur.clone();
    let f3 = an.filter_order3()?;
    o3.filter = f3.clone();
    let kept = cur.min_intersect(&f3);
    eliminate_filtered(&an, &mut o3, &cur, &kept, "absent from (T⊗T*)^rc⊗T* + (N⊗N*)^rc⊗T*");
    o3.after_filter = kept.clone();
    o3.survivors = kept;
    run_hwv(&an, &mut o3, 3, q, &l, false, opts, &mut all_vs, &mut checks)?;
    let f3_zero = o3.survivors.is_empty();

    // order 4
    let d4 = an.decompose_sk(4)?;
    let mut o4 = OrderLedger::new(4, d4.clone());
    let mut cur = d4.clone();
    for (w, m) in an.sorted(&an.n_dual) {
        for _ in 0..m {
            if !cur.remove_once(&w) {
                return Err(PipelineError::Normalization(an.fmt(&w)));
            }
            o4.eliminations.push(Elimination {
                weight: w.clone(),
                reason: Reason::Normalized,
                evidence: "translated away by the action of N (the N* component of F4)".into(),
            });
        }
    }
    o4.after_normalization = cur.clone();
    let mut filter = an.filter_order4()?;
    // comparison modulo N*: discard N* from the filter, and keep any
    // remaining N* in the candidate list for the hwv step
    let mut kept_nstar = IrrSum::new();
    for (w, _) in an.n_dual.iter() {
        filter.terms.remove(w);
        let m = cur.mult(w);
        if m > 0 {
            kept_nstar.add(w.clone(), m);
            o4.notes.push(format!("{} copies of {} kept aside modulo N*", m, an.fmt(w)));
        }
    }
    o4.filter = filter.clone();
    if f3_zero {
        let kept = cur.min_intersect(&filter).union(&kept_nstar);
        eliminate_filtered(&an, &mut o4, &cur, &kept, "absent from (T⊗N*)^T*c⊗T* modulo N*");
        o4.after_filter = kept.clone();
        o4.survivors = kept;
    } else {
        o4.notes.push("F3 not established zero; rule 3 not applicable".into());
        o4.after_filter = cur.clone();
        o4.survivors = cur;
    }
    run_hwv(&an, &mut o4, 4, q, &l, f3_zero, opts, &mut all_vs, &mut checks)?;
    let f4_zero = f3_zero && o4.survivors.is_empty();

    // order 5
    let chi5 = an.sk_character(5);
    let d5 = an.engine.decompose(&chi5)?;
    let mut o5 = OrderLedger::new(5, d5.clone());
    let n_ss = an.n.semisimple();
    if f4_zero {
        let mut kept = IrrSum::new();
        for (w, m) in d5.iter() {
            let cap = n_ss.mult(&w.semisimple());
            if cap > 0 {
                kept.add(w.clone(), (*m).min(cap));
            }
        }
        o5.filter = an.n.clone();
        eliminate_filtered(&an, &mut o5, &d5, &kept, "semisimple part differs from N");
        o5.after_filter = kept.clone();
        o5.survivors = kept;
    } else {
        o5.notes.push("F3, F4 not established zero; rule 4 not applicable".into());
    }
    checks.push(DimensionCheck {
        label: "dim S^5T*⊗N".into(),
        expected: binomial(n + 4, 5) * a,
        actual: an.engine.irr_sum_dimension(&d5)?,
    });
    if opts.explicit_order5 {
        let (_, tensor) = an.sk_module(5);
        checks.push(DimensionCheck {
            label: "explicit S^5T*⊗N basis".into(),
            expected: binomial(n + 4, 5) * a,
            actual: tensor.dim() as u128,
        });
        let same = tensor.character() == chi5;
        checks.push(DimensionCheck {
            label: "explicit S^5T*⊗N character matches plethysm (1 = yes)".into(),
            expected: 1,
            actual: same as u128,
        });
        if opts.full_hwv_checks {
            for (w, m) in an.sorted(&d5) {
                checks.push(DimensionCheck {
                    label: format!("dim hwv(S^5T*⊗N, {})", an.fmt(&w)),
                    expected: m as u128,
                    actual: hwv_space(&tensor, &w).dim() as u128,
                });
            }
        }
    }
    if matches!(model.kind, ModelKind::AlgebraPlane { .. }) {
        notes.push("orders 4 and 5 for this model are computed by the same rules as for G(2,5) and S10".into());
    }

    let orders = vec![o3, o4, o5];
    let verdict = if orders.iter().all(|o| o.survivors.is_empty()) {
        Verdict::Rigid
    } else {
        Verdict::Incomplete
    };
    Ok(RigidityResult {
        model: model.name.clone(),
        verdict,
        orders,
        vanishings: all_vs,
        dimension_checks: checks,
        seed: opts.seed,
        notes,
    })
}

fn eliminate_filtered(an: &Analysis, ledger: &mut OrderLedger, before: &IrrSum, kept: &IrrSum, why: &str) {
    for (w, m) in an.sorted(before) {
        for _ in 0..(m - kept.mult(&w)) {
            ledger.eliminations.push(Elimination {
                weight: w.clone(),
                reason: Reason::OccurrenceFilter,
                evidence: why.to_string(),
            });
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_hwv(
    an: &Analysis,
    ledger: &mut OrderLedger,
    k: usize,
    q: usize,
    l: &[usize],
    f3_zero: bool,
    opts: &RunOptions,
    all_vs: &mut VanishingSet,
    checks: &mut Vec<DimensionCheck>,
) -> Result<(), PipelineError> {
    let n = an.model.n as u128;
    let a = an.model.a as u128;
    checks.push(DimensionCheck {
        label: format!("dim S^{}T*⊗N", k),
        expected: binomial(n + k as u128 - 1, k as u128) * a,
        actual: an.engine.irr_sum_dimension(&ledger.decomposition)?,
    });
    let module = an.sk_module(k);
    let check_set = if opts.full_hwv_checks {
        ledger.decomposition.clone()
    } else {
        ledger.survivors.clone()
    };
    for (w, _) in an.sorted(&check_set) {
        checks.push(DimensionCheck {
            label: format!("dim hwv(S^{}T*⊗N, {})", k, an.fmt(&w)),
            expected: ledger.decomposition.mult(&w) as u128,
            actual: hwv_space(&module.1, &w).dim() as u128,
        });
    }
    ledger.after_curated = ledger.survivors.clone();
    if ledger.survivors.is_empty() || (k == 4 && !f3_zero) {
        return Ok(());
    }
    let vs = vanishings_for(an.model, q, l, k, f3_zero, opts)?;
    hwv_eliminate(an, ledger, &module, &vs, "curated script", false);
    ledger.after_curated = ledger.survivors.clone();
    let mut pooled = vs.clone();
    all_vs.merge(vs);
    if ledger.survivors.is_empty() {
        return Ok(());
    }
    // fallback: every basis quadric with every maximal null span of
    // singular basis vectors
    let mut fallback = VanishingSet::new(&an.model.tangent_labels, &an.model.normal_labels);
    for qq in 0..an.model.a {
        for span in maximal_null_spans(&an.model.quadrics, qq) {
            match vanishings_for(an.model, qq, &span, k, f3_zero, opts) {
                Ok(vs) => fallback.merge(vs),
                Err(e) => ledger.notes.push(format!("fallback skipped: {}", e)),
            }
        }
    }
    let before = ledger.survivors.clone();
    hwv_eliminate(an, ledger, &module, &fallback, "fallback search", false);
    pooled.merge(fallback.clone());
    let mut used_fallback = ledger.survivors != before;
    if !ledger.survivors.is_empty() && opts.orbit_rule {
        let before = ledger.survivors.clone();
        hwv_eliminate(an, ledger, &module, &pooled, "orbit rule", true);
        used_fallback |= ledger.survivors != before;
    }
    if used_fallback {
        all_vs.merge(fallback);
    }
    Ok(())
}
