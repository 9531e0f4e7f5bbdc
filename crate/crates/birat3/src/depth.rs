//! Depth invariants of terminal singularities: minimal w-morphism chain
//! lengths to a smooth state (`gdep`), to a Gorenstein state (`dep`), their
//! difference (`dep_gor`), feasible resolutions realizing a minimal chain,
//! strictness of individual contractions, and chain-level inequality checks.
//!
//! A *state* is a finite multiset of isolated singular points; its depth is
//! the sum over points.  The search recurses point-by-point through
//! [`crate::blowup::enumerate_w_morphisms`] and
//! [`crate::blowup::chart_singularities`], memoized on canonical normal-form
//! keys.  Whenever an enumeration is incomplete or a chart point is
//! unclassified, the affected branch contributes bounds instead of an exact
//! value and the result carries an explicit incompleteness marker — never a
//! silent guess.

use crate::blowup::{chart_singularities, enumerate_w_morphisms, BlowupError, Contraction};
use crate::models::{ModelError, SingClass, SingularityModel, ValidationReport};
use crate::polyring::MonomialMap;
use crate::qlattice::WeightVector;
use crate::Rat;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use thiserror::Error;

/// Default cap on expanded (memo-miss) nodes per engine.
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DepthError {
    #[error("search budget of {0} expanded nodes exceeded")]
    Budget(usize),
    #[error("depth not exactly computable: {0}")]
    Incomplete(String),
    #[error("chain step {0} blows up a point absent from the running state")]
    BrokenChain(usize),
    #[error("blow-up error: {0}")]
    Blowup(#[from] BlowupError),
    #[error("model error: {0}")]
    Model(#[from] ModelError),
}

/// An exact depth value or a bound pair when the search cannot certify
/// completeness.  `upper = None` means no finite chain was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthOutcome {
    Exact(u64),
    Incomplete { lower: u64, upper: Option<u64> },
}

impl DepthOutcome {
    pub fn lower(&self) -> u64 {
        match self {
            DepthOutcome::Exact(v) => *v,
            DepthOutcome::Incomplete { lower, .. } => *lower,
        }
    }

    pub fn upper(&self) -> Option<u64> {
        match self {
            DepthOutcome::Exact(v) => Some(*v),
            DepthOutcome::Incomplete { upper, .. } => *upper,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DepthOutcome::Exact(_))
    }

    pub fn exact_value(&self) -> Option<u64> {
        match self {
            DepthOutcome::Exact(v) => Some(*v),
            DepthOutcome::Incomplete { .. } => None,
        }
    }

    fn normalize(lower: u64, upper: Option<u64>) -> DepthOutcome {
        match upper {
            Some(u) if u == lower => DepthOutcome::Exact(lower),
            _ => DepthOutcome::Incomplete { lower, upper },
        }
    }

    /// Sum of independent points.
    pub fn add(&self, other: &DepthOutcome) -> DepthOutcome {
        let lower = self.lower() + other.lower();
        let upper = match (self.upper(), other.upper()) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        DepthOutcome::normalize(lower, upper)
    }

    /// One more blow-up in the chain.
    fn bump(&self) -> DepthOutcome {
        let upper = self.upper().map(|u| u + 1);
        DepthOutcome::normalize(self.lower() + 1, upper)
    }

    /// Minimum over alternative branches.
    fn combine_min(candidates: &[DepthOutcome]) -> DepthOutcome {
        let lower = candidates.iter().map(|c| c.lower()).min().unwrap_or(0);
        let upper = candidates.iter().filter_map(|c| c.upper()).min();
        DepthOutcome::normalize(lower, upper)
    }
}

impl std::fmt::Display for DepthOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DepthOutcome::Exact(v) => write!(f, "{v}"),
            DepthOutcome::Incomplete {
                lower,
                upper: Some(u),
            } => write!(f, "[{lower},{u}] (incomplete)"),
            DepthOutcome::Incomplete { lower, upper: None } => {
                write!(f, ">={lower} (incomplete)")
            }
        }
    }
}

/// The three depth invariants of a model.
#[derive(Debug, Clone, Copy)]
pub struct DepthReport {
    pub gdep: DepthOutcome,
    pub dep: DepthOutcome,
    pub dep_gor: DepthOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Mode {
    ToSmooth,
    ToGorenstein,
}

/// Memoizing depth search engine with a node budget and an optional
/// parallel width for top-level branch evaluation.  Results are independent
/// of the thread count.
pub struct DepthEngine {
    budget: usize,
    threads: usize,
    expanded: AtomicUsize,
    memo: Mutex<BTreeMap<(Mode, String), DepthOutcome>>,
}

impl Default for DepthEngine {
    fn default() -> Self {
        DepthEngine::new(DEFAULT_BUDGET)
    }
}

impl DepthEngine {
    pub fn new(budget: usize) -> Self {
        DepthEngine {
            budget,
            threads: 1,
            expanded: AtomicUsize::new(0),
            memo: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// Number of memo-miss expansions performed so far.
    pub fn expanded_nodes(&self) -> usize {
        self.expanded.load(Ordering::Relaxed)
    }

    pub fn gdep(&self, m: &SingularityModel) -> Result<DepthOutcome, DepthError> {
        self.point_outcome(m, Mode::ToSmooth, &mut Vec::new(), true)
    }

    pub fn dep(&self, m: &SingularityModel) -> Result<DepthOutcome, DepthError> {
        self.point_outcome(m, Mode::ToGorenstein, &mut Vec::new(), true)
    }

    pub fn report(&self, m: &SingularityModel) -> Result<DepthReport, DepthError> {
        let gdep = self.gdep(m)?;
        let dep = self.dep(m)?;
        let dep_gor = match (gdep, dep) {
            (DepthOutcome::Exact(g), DepthOutcome::Exact(d)) => {
                DepthOutcome::Exact(g.saturating_sub(d))
            }
            _ => {
                let lower = match dep.upper() {
                    Some(du) => gdep.lower().saturating_sub(du),
                    None => 0,
                };
                let upper = gdep.upper().map(|gu| gu.saturating_sub(dep.lower()));
                DepthOutcome::normalize(lower, upper)
            }
        };
        Ok(DepthReport {
            gdep,
            dep,
            dep_gor,
        })
    }

    /// Depth of a multi-point state: the sum over its points.
    pub fn state_outcome(
        &self,
        points: &[SingularityModel],
        gorenstein: bool,
    ) -> Result<DepthOutcome, DepthError> {
        let mode = if gorenstein {
            Mode::ToGorenstein
        } else {
            Mode::ToSmooth
        };
        let mut acc = DepthOutcome::Exact(0);
        for p in points {
            let o = self.point_outcome(p, mode, &mut Vec::new(), false)?;
            acc = acc.add(&o);
        }
        Ok(acc)
    }

    fn terminal_value(m: &SingularityModel, mode: Mode) -> Option<DepthOutcome> {
        match mode {
            Mode::ToSmooth if m.declared_class() == SingClass::Smooth => {
                Some(DepthOutcome::Exact(0))
            }
            Mode::ToGorenstein if m.index() == 1 => Some(DepthOutcome::Exact(0)),
            _ => None,
        }
    }

    fn point_outcome(
        &self,
        m: &SingularityModel,
        mode: Mode,
        stack: &mut Vec<String>,
        top: bool,
    ) -> Result<DepthOutcome, DepthError> {
        if let Some(v) = Self::terminal_value(m, mode) {
            return Ok(v);
        }
        let key = m.normal_form_key();
        if let Some(v) = self.memo.lock().expect("memo lock").get(&(mode, key.clone())) {
            return Ok(*v);
        }
        if stack.contains(&key) {
            // a cyclic chain cannot be minimal; report bounds, do not cache
            return Ok(DepthOutcome::Incomplete {
                lower: 1,
                upper: None,
            });
        }
        let seen = self.expanded.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.budget {
            return Err(DepthError::Budget(self.budget));
        }
        stack.push(key.clone());
        let result = self.expand(m, mode, stack, top);
        stack.pop();
        let out = result?;
        self.memo
            .lock()
            .expect("memo lock")
            .insert((mode, key), out);
        Ok(out)
    }

    fn expand(
        &self,
        m: &SingularityModel,
        mode: Mode,
        stack: &mut Vec<String>,
        top: bool,
    ) -> Result<DepthOutcome, DepthError> {
        let en = enumerate_w_morphisms(m)?;
        let mut candidates: Vec<DepthOutcome> = Vec::new();
        if top && self.threads > 1 && en.contractions.len() > 1 {
            let snapshot = stack.clone();
            let results: Vec<Result<DepthOutcome, DepthError>> = std::thread::scope(|scope| {
                let handles: Vec<_> = en
                    .contractions
                    .iter()
                    .map(|c| {
                        let mut local = snapshot.clone();
                        scope.spawn(move || self.branch_outcome(c, mode, &mut local))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("branch thread")).collect()
            });
            for r in results {
                candidates.push(r?);
            }
        } else {
            for c in &en.contractions {
                candidates.push(self.branch_outcome(c, mode, stack)?);
            }
        }
        if !en.complete {
            // a missed w-morphism could reach the target in a single step
            candidates.push(DepthOutcome::Incomplete {
                lower: 1,
                upper: None,
            });
        }
        if candidates.is_empty() {
            return Ok(DepthOutcome::Incomplete {
                lower: 1,
                upper: None,
            });
        }
        Ok(DepthOutcome::combine_min(&candidates))
    }

    fn branch_outcome(
        &self,
        c: &Contraction,
        mode: Mode,
        stack: &mut Vec<String>,
    ) -> Result<DepthOutcome, DepthError> {
        let mut sum = DepthOutcome::Exact(0);
        for s in chart_singularities(c) {
            let child = match &s.model {
                Some(model) => self.point_outcome(model, mode, stack, false)?,
                None => DepthOutcome::Incomplete {
                    // an unclassified point is singular but may already be
                    // Gorenstein
                    lower: if mode == Mode::ToSmooth { 1 } else { 0 },
                    upper: None,
                },
            };
            sum = sum.add(&child);
        }
        Ok(sum.bump())
    }

    /// A w-morphism is strict when it drops gdep by exactly one.
    pub fn is_strict(&self, c: &Contraction) -> Result<bool, DepthError> {
        let gx = self
            .gdep(&c.target)?
            .exact_value()
            .ok_or_else(|| DepthError::Incomplete("gdep of the base not exact".to_string()))?;
        let mut gy = 0u64;
        for s in chart_singularities(c) {
            let model = s.model.as_ref().ok_or_else(|| {
                DepthError::Incomplete(format!(
                    "unclassified chart point ({} {}): {}",
                    s.chart, s.locus, s.note
                ))
            })?;
            gy += self.gdep(model)?.exact_value().ok_or_else(|| {
                DepthError::Incomplete("gdep of a chart point not exact".to_string())
            })?;
        }
        Ok(gy + 1 == gx)
    }

    /// One minimal w-morphism chain from `m` to a smooth state, realized as
    /// a resolution tree (a path of multi-point states).  Deterministic:
    /// points are processed in normal-form order and ties between minimal
    /// branches go to the lexicographically smallest weight.
    pub fn feasible_resolution(
        &self,
        m: &SingularityModel,
    ) -> Result<ResolutionTree, DepthError> {
        let mut state: Vec<TrackedPoint> = Vec::new();
        if m.declared_class() != SingClass::Smooth {
            state.push(TrackedPoint {
                model: m.clone(),
                map: Some(MonomialMap::identity(m.nvars())),
            });
        }
        sort_state(&mut state);
        let root_gdep = self.exact_state_gdep(&state)?;
        let mut nodes = vec![TreeNode {
            id: 0,
            points: state.iter().map(|p| p.model.clone()).collect(),
            gdep: root_gdep,
        }];
        let mut edges: Vec<TreeEdge> = Vec::new();

        while !state.is_empty() {
            let point = state.remove(0);
            let en = enumerate_w_morphisms(&point.model)?;
            if !en.complete {
                return Err(DepthError::Incomplete(
                    en.note
                        .unwrap_or_else(|| "w-morphism enumeration incomplete".to_string()),
                ));
            }
            let g_point = self
                .gdep(&point.model)?
                .exact_value()
                .ok_or_else(|| DepthError::Incomplete("point gdep not exact".to_string()))?;
            // choose the first contraction (weights are sorted) attaining the
            // minimal child sum
            let mut best: Only = Only::None;
            for c in &en.contractions {
                let mut sum = 0u64;
                let mut ok = true;
                for s in chart_singularities(c) {
                    match &s.model {
                        Some(model) => {
                            sum += self.gdep(model)?.exact_value().ok_or_else(|| {
                                DepthError::Incomplete("chart gdep not exact".to_string())
                            })?
                        }
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                if !matches!(best, Only::Found { value, .. } if value <= sum) {
                    best = Only::Found {
                        value: sum,
                        contraction: c.clone(),
                    };
                }
            }
            let (value, contraction) = match best {
                Only::Found { value, contraction } => (value, contraction),
                Only::None => {
                    return Err(DepthError::Incomplete(
                        "no fully classified branch at this point".to_string(),
                    ))
                }
            };
            let strict = value + 1 == g_point;
            debug_assert!(strict, "minimal branch must be strict");
            // valuation of the new exceptional divisor in root coordinates
            let valuations = point.map.as_ref().and_then(|phi| {
                phi.source_weights(&contraction.weight.values()).ok()
            });
            // successor state
            let chart_by_label: BTreeMap<&str, &crate::blowup::Chart> = contraction
                .charts
                .iter()
                .map(|ch| (ch.label.as_str(), ch))
                .collect();
            for s in chart_singularities(&contraction) {
                let model = s.model.clone().expect("checked above");
                let map = match (&point.map, chart_by_label.get(s.chart.as_str()), &s.transition)
                {
                    (Some(phi), Some(chart), Some(t)) => phi
                        .then(&chart.coord_map)
                        .and_then(|a| a.then(t))
                        .ok(),
                    _ => None,
                };
                state.push(TrackedPoint { model, map });
            }
            sort_state(&mut state);
            let new_gdep = self.exact_state_gdep(&state)?;
            let to = nodes.len();
            nodes.push(TreeNode {
                id: to,
                points: state.iter().map(|p| p.model.clone()).collect(),
                gdep: new_gdep,
            });
            edges.push(TreeEdge {
                from: to - 1,
                to,
                blown_point: point.model.clone(),
                weight: contraction.weight.clone(),
                discrepancy: contraction.discrepancy,
                strict,
                valuations,
                contraction,
            });
        }

        let leaves = vec![nodes.len() - 1];
        Ok(ResolutionTree {
            picard_gain: edges.len(),
            root: 0,
            leaves,
            nodes,
            edges,
        })
    }

    fn exact_state_gdep(&self, state: &[TrackedPoint]) -> Result<u64, DepthError> {
        let mut sum = 0u64;
        for p in state {
            sum += self
                .gdep(&p.model)?
                .exact_value()
                .ok_or_else(|| DepthError::Incomplete("state gdep not exact".to_string()))?;
        }
        Ok(sum)
    }

    /// Check the chain-level depth inequalities on a sequence of divisorial
    /// contractions: the Picard gain bounds the gdep drop (with equality
    /// exactly for all-strict chains), each edge drops gdep by at most one,
    /// and the Gorenstein defect never increases upward.
    pub fn check_depth_inequalities(
        &self,
        chain: &[Contraction],
    ) -> Result<ValidationReport, DepthError> {
        let mut rep = ValidationReport::new("depth inequalities along chain".to_string());
        if chain.is_empty() {
            rep.push("chain nonempty", false, "no edges supplied");
            return Ok(rep);
        }
        // reconstruct states
        let mut states: Vec<Vec<SingularityModel>> = vec![vec![chain[0].target.clone()]];
        for (i, c) in chain.iter().enumerate() {
            let current = states.last().unwrap().clone();
            let key = c.target.normal_form_key();
            let pos = current
                .iter()
                .position(|p| p.normal_form_key() == key)
                .ok_or(DepthError::BrokenChain(i))?;
            let mut next: Vec<SingularityModel> = current;
            next.remove(pos);
            for s in chart_singularities(c) {
                let model = s.model.clone().ok_or_else(|| {
                    DepthError::Incomplete(format!(
                        "unclassified chart point at step {i}: {}",
                        s.note
                    ))
                })?;
                next.push(model);
            }
            next.sort_by_key(|p| p.normal_form_key());
            states.push(next);
        }
        let gdeps: Vec<u64> = states
            .iter()
            .map(|s| {
                s.iter().try_fold(0u64, |acc, p| {
                    Ok::<u64, DepthError>(
                        acc + self.gdep(p)?.exact_value().ok_or_else(|| {
                            DepthError::Incomplete("state gdep not exact".to_string())
                        })?,
                    )
                })
            })
            .collect::<Result<_, _>>()?;
        let dgors: Vec<u64> = states
            .iter()
            .map(|s| {
                s.iter().try_fold(0u64, |acc, p| {
                    let r = self.report(p)?;
                    Ok::<u64, DepthError>(
                        acc + r.dep_gor.exact_value().ok_or_else(|| {
                            DepthError::Incomplete("state dep_gor not exact".to_string())
                        })?,
                    )
                })
            })
            .collect::<Result<_, _>>()?;
        let mut all_strict = true;
        for i in 0..chain.len() {
            let before = gdeps[i];
            let after = gdeps[i + 1];
            rep.push(
                format!("edge {i}: gdep drops by at most one"),
                before <= after + 1,
                format!("gdep {before} -> {after}"),
            );
            let strict = after + 1 == before;
            all_strict &= strict;
            rep.push(
                format!("edge {i}: Gorenstein defect does not increase"),
                dgors[i + 1] <= dgors[i],
                format!("dep_gor {} -> {}", dgors[i], dgors[i + 1]),
            );
        }
        let rho = chain.len() as u64;
        let drop = gdeps[0].saturating_sub(*gdeps.last().unwrap());
        rep.push(
            "Picard gain bounds the gdep drop",
            rho >= drop,
            format!("rho = {rho}, gdep drop = {drop}"),
        );
        rep.push(
            "equality holds exactly for all-strict chains",
            (rho == drop) == all_strict,
            format!("rho = {rho}, drop = {drop}, all strict = {all_strict}"),
        );
        Ok(rep)
    }
}

enum Only {
    None,
    Found { value: u64, contraction: Contraction },
}

struct TrackedPoint {
    model: SingularityModel,
    /// Monomial substitution taking root-coordinate polynomials to this
    /// point's local coordinates; `None` once the bookkeeping is lost.
    map: Option<MonomialMap>,
}

fn sort_state(state: &mut [TrackedPoint]) {
    state.sort_by_key(|p| p.model.normal_form_key());
}

/// A state in a resolution tree: a finite set of singular points and the
/// exact gdep of their sum.
#[derive(Debug, Clone)]
pub struct TreeNode {
    pub id: usize,
    pub points: Vec<SingularityModel>,
    pub gdep: u64,
}

impl TreeNode {
    pub fn label(&self) -> String {
        if self.points.is_empty() {
            "smooth".to_string()
        } else {
            self.points
                .iter()
                .map(|p| p.describe())
                .collect::<Vec<_>>()
                .join(" + ")
        }
    }
}

/// A w-morphism edge in a resolution tree.
#[derive(Debug, Clone)]
pub struct TreeEdge {
    pub from: usize,
    pub to: usize,
    /// The point of the `from` state that was blown up.
    pub blown_point: SingularityModel,
    pub weight: WeightVector,
    pub discrepancy: Rat,
    pub strict: bool,
    /// Valuation of the new exceptional divisor on the root coordinates,
    /// when the monomial bookkeeping survives to this depth.
    pub valuations: Option<Vec<Rat>>,
    pub contraction: Contraction,
}

/// A minimal w-morphism chain realized as a path of states.
#[derive(Debug, Clone)]
pub struct ResolutionTree {
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<TreeEdge>,
    pub root: usize,
    pub leaves: Vec<usize>,
    /// Number of divisorial edges from root to leaf.
    pub picard_gain: usize,
}

impl ResolutionTree {
    /// The chain of contractions from the root upward.
    pub fn chain(&self) -> Vec<Contraction> {
        self.edges.iter().map(|e| e.contraction.clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// free functions over a default engine
// ---------------------------------------------------------------------------

pub fn gdep(m: &SingularityModel) -> Result<DepthOutcome, DepthError> {
    DepthEngine::default().gdep(m)
}

pub fn dep(m: &SingularityModel) -> Result<DepthOutcome, DepthError> {
    DepthEngine::default().dep(m)
}

pub fn dep_gor(m: &SingularityModel) -> Result<DepthOutcome, DepthError> {
    Ok(DepthEngine::default().report(m)?.dep_gor)
}

pub fn report(m: &SingularityModel) -> Result<DepthReport, DepthError> {
    DepthEngine::default().report(m)
}

pub fn feasible_resolution(m: &SingularityModel) -> Result<ResolutionTree, DepthError> {
    DepthEngine::default().feasible_resolution(m)
}

pub fn is_strict(c: &Contraction) -> Result<bool, DepthError> {
    DepthEngine::default().is_strict(c)
}

pub fn check_depth_inequalities(chain: &[Contraction]) -> Result<ValidationReport, DepthError> {
    DepthEngine::default().check_depth_inequalities(chain)
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::weighted_blowup;
    use crate::polyring::parse_poly;
    use crate::qlattice::QuotientAction;
    use crate::rat;
    use std::collections::{BTreeMap as Map, BTreeSet, VecDeque};

    fn quotient(r: i64, a: &[i64]) -> SingularityModel {
        SingularityModel::quotient_point(QuotientAction::new(r, a).unwrap()).unwrap()
    }

    fn car(r: i64, act: &[i64], f: &str) -> SingularityModel {
        SingularityModel::hypersurface(
            QuotientAction::new(r, act).unwrap(),
            parse_poly(f, &["x", "y", "z", "u"]).unwrap(),
            SingClass::CAr,
            Map::new(),
        )
        .unwrap()
    }

    #[test]
    fn depth_examples() {
        let eng = DepthEngine::default();
        // smooth
        let s = SingularityModel::smooth_point();
        assert_eq!(eng.gdep(&s).unwrap(), DepthOutcome::Exact(0));
        assert_eq!(eng.dep(&s).unwrap(), DepthOutcome::Exact(0));
        // 1/2(1,1,1)
        let q = quotient(2, &[1, 1, 1]);
        let r = eng.report(&q).unwrap();
        assert_eq!(r.gdep, DepthOutcome::Exact(1));
        assert_eq!(r.dep, DepthOutcome::Exact(1));
        assert_eq!(r.dep_gor, DepthOutcome::Exact(0));
        // xy + z^2 + u^7
        let m = car(1, &[0, 0, 0, 0], "x*y + z^2 + u^7");
        let r = eng.report(&m).unwrap();
        assert_eq!(r.gdep, DepthOutcome::Exact(3));
        assert_eq!(r.dep, DepthOutcome::Exact(0));
        assert_eq!(r.dep_gor, DepthOutcome::Exact(3));
        // 1/3(1,2,1)
        let q = quotient(3, &[1, 2, 1]);
        let r = eng.report(&q).unwrap();
        assert_eq!(r.gdep, DepthOutcome::Exact(2));
        assert_eq!(r.dep, DepthOutcome::Exact(2));
    }

    #[test]
    fn quotient_gdep_matches_index() {
        // terminal cyclic quotients of index r have gdep r - 1
        let eng = DepthEngine::default();
        for r in 2..=12i64 {
            for a in 1..r {
                if num::integer::gcd(a, r) != 1 {
                    continue;
                }
                let q = quotient(r, &[1, a, r - a]);
                assert_eq!(
                    eng.gdep(&q).unwrap(),
                    DepthOutcome::Exact((r - 1) as u64),
                    "1/{r}(1,{a},{})",
                    r - a
                );
            }
        }
    }

    /// Un-memoized breadth-first chain search over multi-point states.
    fn bfs_oracle(m: &SingularityModel) -> u64 {
        let state_key = |s: &[SingularityModel]| -> Vec<String> {
            let mut ks: Vec<String> = s.iter().map(|p| p.normal_form_key()).collect();
            ks.sort();
            ks
        };
        let start: Vec<SingularityModel> = if m.declared_class() == SingClass::Smooth {
            vec![]
        } else {
            vec![m.clone()]
        };
        let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
        let mut queue: VecDeque<(Vec<SingularityModel>, u64)> = VecDeque::new();
        seen.insert(state_key(&start));
        queue.push_back((start, 0));
        while let Some((state, d)) = queue.pop_front() {
            if state.is_empty() {
                return d;
            }
            assert!(d < 64, "oracle runaway");
            // expand the first point (order is irrelevant for total length)
            let point = &state[0];
            let en = enumerate_w_morphisms(point).unwrap();
            assert!(en.complete, "oracle corpus must be fully enumerable");
            for c in &en.contractions {
                let mut next: Vec<SingularityModel> = state[1..].to_vec();
                for s in chart_singularities(c) {
                    next.push(s.model.clone().expect("oracle corpus must classify"));
                }
                let key = state_key(&next);
                if seen.insert(key) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        unreachable!("every corpus model resolves");
    }

    #[test]
    fn bfs_oracle_agrees() {
        let corpus = vec![
            quotient(2, &[1, 1, 1]),
            quotient(3, &[1, 2, 1]),
            quotient(4, &[1, 3, 1]),
            quotient(5, &[1, 2, 3]),
            car(1, &[0, 0, 0, 0], "x*y + z^2 + u^7"),
            car(1, &[0, 0, 0, 0], "x*y + z^2 + u^3"),
            car(3, &[1, 2, 1, 0], "x*y + z^6 + u^2"),
            car(2, &[1, 1, 1, 0], "x*y + z^2 + u^5"),
        ];
        for m in corpus {
            let eng = DepthEngine::default();
            let got = eng.gdep(&m).unwrap();
            let want = bfs_oracle(&m);
            assert_eq!(got, DepthOutcome::Exact(want), "{}", m.describe());
        }
    }

    #[test]
    fn memo_and_threads_are_transparent() {
        let m = car(3, &[1, 2, 1, 0], "x*y + z^6 + u^2");
        let fresh = DepthEngine::default().gdep(&m).unwrap();
        // warm engine: repeated queries hit the memo
        let eng = DepthEngine::default();
        let first = eng.gdep(&m).unwrap();
        let nodes_after_first = eng.expanded_nodes();
        let second = eng.gdep(&m).unwrap();
        assert_eq!(first, second);
        assert_eq!(eng.expanded_nodes(), nodes_after_first);
        assert_eq!(first, fresh);
        // thread count does not change results
        let par = DepthEngine::default().with_threads(4).gdep(&m).unwrap();
        assert_eq!(par, fresh);
    }

    #[test]
    fn budget_error() {
        let q = quotient(5, &[1, 2, 3]);
        let eng = DepthEngine::new(2);
        assert!(matches!(eng.gdep(&q), Err(DepthError::Budget(2))));
    }

    #[test]
    fn feasible_resolution_chain() {
        // xy + z^2 + u^7: three ordinary blow-ups with valuations (i,i,i,1)
        let m = car(1, &[0, 0, 0, 0], "x*y + z^2 + u^7");
        let tree = feasible_resolution(&m).unwrap();
        assert_eq!(tree.picard_gain, 3);
        assert_eq!(tree.edges.len(), 3);
        assert_eq!(tree.nodes[tree.root].gdep, 3);
        assert!(tree.nodes[*tree.leaves.first().unwrap()].points.is_empty());
        for (i, e) in tree.edges.iter().enumerate() {
            assert!(e.strict);
            let k = rat((i + 1) as i128);
            assert_eq!(
                e.valuations.as_ref().unwrap(),
                &vec![k, k, k, rat(1)],
                "edge {i}"
            );
        }
        // 1/3(1,2,1): two steps through 1/2(1,1,1)
        let q = quotient(3, &[1, 2, 1]);
        let tree = feasible_resolution(&q).unwrap();
        assert_eq!(tree.picard_gain, 2);
        assert_eq!(tree.edges[0].weight, WeightVector::new(3, &[1, 2, 1]).unwrap());
        assert_eq!(tree.edges[1].weight, WeightVector::new(2, &[1, 1, 1]).unwrap());
        // smooth: single node
        let s = SingularityModel::smooth_point();
        let tree = feasible_resolution(&s).unwrap();
        assert_eq!(tree.nodes.len(), 1);
        assert!(tree.edges.is_empty());
        assert_eq!(tree.picard_gain, 0);
    }

    #[test]
    fn strictness_examples() {
        // unique w-morphism over 1/2(1,1,1)
        let q = quotient(2, &[1, 1, 1]);
        let en = enumerate_w_morphisms(&q).unwrap();
        assert!(is_strict(&en.contractions[0]).unwrap());
        // both w-morphisms over xy + z^6 + u^2 in 1/3(1,2,1,0)
        let m = car(3, &[1, 2, 1, 0], "x*y + z^6 + u^2");
        let en = enumerate_w_morphisms(&m).unwrap();
        assert_eq!(en.contractions.len(), 2);
        for c in &en.contractions {
            assert!(is_strict(c).unwrap());
        }
        // ordinary blow-up of xy + z^2 + u^7
        let m = car(1, &[0, 0, 0, 0], "x*y + z^2 + u^7");
        let c = weighted_blowup(&m, &WeightVector::new(1, &[1, 1, 1, 1]).unwrap()).unwrap();
        assert!(is_strict(&c).unwrap());
    }

    #[test]
    fn inequalities_on_feasible_chains() {
        let eng = DepthEngine::default();
        for m in [
            car(1, &[0, 0, 0, 0], "x*y + z^2 + u^7"),
            quotient(3, &[1, 2, 1]),
        ] {
            let tree = eng.feasible_resolution(&m).unwrap();
            let rep = eng.check_depth_inequalities(&tree.chain()).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures());
        }
        // single Kawamata edge over 1/2(1,1,1)
        let q = quotient(2, &[1, 1, 1]);
        let en = enumerate_w_morphisms(&q).unwrap();
        let rep = eng
            .check_depth_inequalities(&en.contractions)
            .unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
    }

    #[test]
    fn incomplete_classes_report_bounds() {
        // a Gorenstein cD point: enumeration returns an explicit marker, so
        // depth reports bounds instead of an exact value
        let m = SingularityModel::hypersurface(
            QuotientAction::trivial(4),
            parse_poly("x^2 + y^2*u + z^4 + u^5", &["x", "y", "z", "u"]).unwrap(),
            SingClass::CD,
            Map::new(),
        )
        .unwrap();
        let g = gdep(&m).unwrap();
        assert!(!g.is_exact());
        assert!(g.lower() >= 1);
        // but dep is 0: the point is already Gorenstein
        assert_eq!(dep(&m).unwrap(), DepthOutcome::Exact(0));
    }
}
