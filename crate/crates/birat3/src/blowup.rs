//! Weighted blow-ups: chart atlases, strict transforms, discrepancies,
//! w-morphism testing and enumeration, and chart singularity inspection.
//!
//! For a quotient germ `A^n / (1/r)(a_1..a_n)` and a compatible weight
//! `w = (1/r)(b_1..b_n)`, chart `U_i` of the weighted blow-up is the quotient
//! of an affine cover with coordinates `y` mapping to the base by
//! `x_j = y_j y_i^{b_j/r}` (j != i) and `x_i = y_i^{b_i/r}`.  The chart group
//! is computed by [`crate::qlattice::chart_decomposition`].  Strict transforms
//! divide the pulled-back equations by `y_i^{w(f)}`; semi-invariance plus
//! compatibility guarantees integral exponents.
//!
//! A contraction is a *w-morphism* when its discrepancy equals `1/r_P` for
//! the Cartier index `r_P` of the centre.  Enumeration is complete for
//! quotient, `cA/r`, `cAx/4`, `cAx/2`, `cD/3`, and fractional-index `cE/2`
//! models in template position; other classes return candidates with an
//! explicit incompleteness marker.

use crate::models::{
    bind, expected_weight, lookup_entry, validate_table_entry, Bindings, ModelError, SingClass,
    SingularityModel,
};
use crate::polyring::{MonomialMap, Poly, PolyError};
use crate::qlattice::{
    ambient_discrepancy, chart_decomposition, kawamata_weight, ChartQuotientData, QError,
    QuotientAction, WeightVector,
};
use crate::{rat, ratio, Rat};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlowupError {
    #[error("lattice error: {0}")]
    Lattice(#[from] QError),
    #[error("polynomial error: {0}")]
    Poly(#[from] PolyError),
    #[error("model error: {0}")]
    Model(#[from] ModelError),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// One affine chart of a weighted blow-up.
#[derive(Debug, Clone)]
pub struct Chart {
    /// Chart label `U_x` .. `U_t` (after the base variable it inverts).
    pub label: String,
    /// 0-based index of the inverted variable.
    pub axis: usize,
    /// Reduced cyclic chart group acting on the chart cover.
    pub quotient: QuotientAction,
    /// Full chart-group decomposition data (tau, tau', lattice index m).
    pub data: ChartQuotientData,
    /// Strict transforms of the model equations on the chart cover.
    pub equations: Vec<Poly>,
    /// The monomial map from chart coordinates to base coordinates.
    pub coord_map: MonomialMap,
    /// Description of the exceptional divisor inside this chart.
    pub exceptional_locus: String,
}

/// Exceptional divisor data: a hypersurface (or codimension-2) subvariety of
/// a weighted projective space modulo a cyclic group.
#[derive(Debug, Clone)]
pub struct ExceptionalDescription {
    /// Numerators of the blow-up weight.
    pub weights: Vec<i64>,
    /// Common denominator (ambient index).
    pub index: i64,
    /// Order of the residual cyclic quotient acting on the projective space.
    pub quotient_order: i64,
    /// Weighted leading forms of the model equations (cut out E).
    pub equations: Vec<Poly>,
}

impl std::fmt::Display for ExceptionalDescription {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|b| b.to_string()).collect();
        write!(f, "P({})", ws.join(","))?;
        if self.quotient_order > 1 {
            write!(f, "/(Z/{})", self.quotient_order)?;
        }
        Ok(())
    }
}

/// A weighted blow-up `Y -> X` with exceptional divisor `E`.
///
/// `X` is `target`; `Y` carries no single global model and is described by
/// its chart atlas.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub target: SingularityModel,
    pub weight: WeightVector,
    pub charts: Vec<Chart>,
    pub discrepancy: Rat,
    pub exceptional: ExceptionalDescription,
    /// Non-fatal observations (e.g. nonpositive discrepancy).
    pub warnings: Vec<String>,
}

impl Contraction {
    /// `v_E` of the j-th base coordinate (0-based): `b_j / r`.
    pub fn valuation_of_var(&self, j: usize) -> Rat {
        self.weight.values()[j]
    }

    pub fn describe(&self) -> String {
        format!(
            "weighted blow-up of {} with weight {} (discrepancy {})",
            self.target.describe(),
            self.weight,
            self.discrepancy
        )
    }
}

/// Local coordinate names on a chart cover: `x1, y1, z1, u1, t1`.
pub fn chart_vars(n: usize) -> Vec<String> {
    crate::models::standard_vars(n)
        .iter()
        .map(|v| format!("{v}1"))
        .collect()
}

/// Construct the weighted blow-up of `m` with weight `w`: all charts, strict
/// transforms, chart groups, discrepancy and exceptional data.
pub fn weighted_blowup(m: &SingularityModel, w: &WeightVector) -> Result<Contraction, BlowupError> {
    let n = m.nvars();
    let action = m.ambient();
    w.compatibility(action)?;
    let r = w.r();
    let values = w.values();

    // discrepancy = (sum b_i)/r - sum_k w(f_k) - 1
    let mut disc = ambient_discrepancy(w);
    let mut orders = Vec::new();
    for f in m.equations() {
        let o = f
            .weighted_order(w)
            .expect("model equations are nonzero");
        orders.push(o);
        disc -= o;
    }

    let mut charts = Vec::with_capacity(n);
    let mut quotient_order_m = None;
    for i in 0..n {
        let data = chart_decomposition(action, w, i + 1)?;
        match quotient_order_m {
            None => quotient_order_m = Some(data.m),
            Some(prev) => debug_assert_eq!(prev, data.m, "lattice index must be chart-independent"),
        }
        // coordinate map x_j = y_j * y_i^{b_j/r}, x_i = y_i^{b_i/r}
        let mut images = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![rat(0); n];
            if j != i {
                e[j] = rat(1);
            }
            e[i] += values[j];
            images.push((rat(1), e));
        }
        let coord_map = MonomialMap::new(n, images)?;
        let mut equations = Vec::with_capacity(m.equations().len());
        for (f, o) in m.equations().iter().zip(&orders) {
            let pulled = coord_map.apply(f)?;
            let mut div = vec![rat(0); n];
            div[i] = *o;
            let strict = pulled.divide_by_monomial(&div)?.to_poly()?;
            equations.push(strict);
        }
        let vars = chart_vars(n);
        charts.push(Chart {
            label: format!("U_{}", m.vars()[i]),
            axis: i,
            quotient: data.reduced.clone(),
            data,
            equations,
            coord_map,
            exceptional_locus: format!("{} = 0", vars[i]),
        });
    }

    let exceptional = ExceptionalDescription {
        weights: w.entries().to_vec(),
        index: r,
        quotient_order: quotient_order_m.unwrap_or(1),
        equations: m
            .equations()
            .iter()
            .map(|f| f.weighted_leading_form(&values))
            .collect(),
    };

    let mut warnings = Vec::new();
    if disc <= rat(0) {
        warnings.push(format!("nonpositive discrepancy {disc}"));
    }

    Ok(Contraction {
        target: m.clone(),
        weight: w.clone(),
        charts,
        discrepancy: disc,
        exceptional,
        warnings,
    })
}

/// The discrepancy `a(E, X)` of a constructed contraction (exact).
pub fn discrepancy(c: &Contraction) -> Rat {
    c.discrepancy
}

/// True iff the contraction is a w-morphism: discrepancy `= 1/r_P` where
/// `r_P` is the Cartier index of the distinguished point of the target.
pub fn is_w_morphism(c: &Contraction) -> bool {
    let rp = c.target.index();
    c.discrepancy == ratio(1, rp as i128)
}

/// Result of a w-morphism enumeration.  `complete` is false whenever the
/// class (or the literal equation position) prevents certified completeness;
/// `note` explains why.
#[derive(Debug, Clone)]
pub struct WMorphisms {
    pub contractions: Vec<Contraction>,
    pub complete: bool,
    pub note: Option<String>,
}

fn partial(note: &str) -> WMorphisms {
    WMorphisms {
        contractions: Vec::new(),
        complete: false,
        note: Some(note.to_string()),
    }
}

fn exps_of(n: usize, pairs: &[(usize, i64)]) -> Vec<i64> {
    let mut e = vec![0; n];
    for &(i, x) in pairs {
        e[i] += x;
    }
    e
}

/// Enumerate the w-morphisms over a model.
///
/// Complete for quotient points, `cA/r` in template position
/// (`x*y + z^(rk) + g`), `cAx/4`, `cAx/2`, `cD/3` and fractional-index
/// `cE/2` templates.  Other classes return binding-free row candidates with
/// `complete = false`.  The list is sorted lexicographically by weight.
pub fn enumerate_w_morphisms(m: &SingularityModel) -> Result<WMorphisms, BlowupError> {
    let n = m.nvars();
    let mut weights: Vec<WeightVector> = Vec::new();
    let mut complete = true;
    let mut note = None;

    match m.declared_class() {
        SingClass::Smooth => {
            return Ok(partial(
                "smooth points admit unboundedly many discrepancy-one blow-ups; none enumerated",
            ));
        }
        SingClass::Quotient => {
            weights.push(kawamata_weight(m.ambient())?);
        }
        SingClass::CAr => {
            let r = m.ambient().r();
            let beta = m.ambient().exponents()[0];
            let f = &m.equations()[0];
            let xy = exps_of(n, &[(0, 1), (1, 1)]);
            if f.coeff(&xy) != rat(1) {
                return Ok(partial("equation is not in x*y + g(z,u) template position"));
            }
            let g = f.sub(&Poly::monomial(n, &xy, rat(1)).expect("valid"));
            if g.is_zero() || !g.support_vars().iter().all(|&i| i >= 2) {
                return Ok(partial("equation is not in x*y + g(z,u) template position"));
            }
            // w-morphism weights are 1/r(b, rk-b, 1, r) with k = w(g) under
            // (z,u) |-> (1/r, 1)
            let vals = vec![rat(0), rat(0), ratio(1, r as i128), rat(1)];
            let q = g.weighted_order_values(&vals).expect("nonzero");
            if q.denom() != &1 || *q.numer() < 1 {
                return Ok(partial("w-order of g is not a positive integer"));
            }
            let k = *q.numer() as i64;
            if f.coeff(&exps_of(n, &[(2, r * k)])) == rat(0) {
                return Ok(partial(
                    "z-power term z^(rk) absent; candidates require a coordinate change",
                ));
            }
            for b in 1..(r * k) {
                if (b - beta).rem_euclid(r) != 0 {
                    continue;
                }
                weights.push(WeightVector::new(r, &[b, r * k - b, 1, r])?);
            }
        }
        SingClass::CAx4 | SingClass::CAx2 => {
            let is4 = m.declared_class() == SingClass::CAx4;
            let f = &m.equations()[0];
            let x2 = exps_of(n, &[(0, 2)]);
            let y2 = exps_of(n, &[(1, 2)]);
            if f.coeff(&x2) != rat(1) || f.coeff(&y2) != rat(1) {
                return Ok(partial(
                    "equation is not in x^2 + y^2 + ... template position",
                ));
            }
            let rest = f
                .sub(&Poly::monomial(n, &x2, rat(1)).expect("valid"))
                .sub(&Poly::monomial(n, &y2, rat(1)).expect("valid"));
            let (xm, rest2) = split(&rest, |e| e[0] > 0);
            let (ym, g) = split(&rest2, |e| e[1] > 0);
            // fixed (z,u) weight values for this family
            let (zv, uv) = if is4 {
                (ratio(1, 4), ratio(1, 2))
            } else {
                (ratio(1, 2), ratio(1, 2))
            };
            let vals = vec![rat(0), rat(0), zv, uv];
            if xm.is_zero() && ym.is_zero() {
                // plain rows Ax1 / Ax3
                if g.is_zero() {
                    return Ok(partial("residual part g vanishes"));
                }
                let q = g.weighted_order_values(&vals).expect("nonzero");
                if is4 {
                    // q = (2k+1)/2 for a positive integer k
                    let two_q = q * rat(2);
                    if two_q.denom() != &1 || two_q.numer() % 2 == 0 || *two_q.numer() < 3 {
                        return Ok(partial("w-order of g does not have the form (2k+1)/2"));
                    }
                    let k = (two_q.numer() - 1) / 2;
                    let (b, c) = if k % 2 == 0 {
                        (2 * k + 1, 2 * k + 3)
                    } else {
                        (2 * k + 3, 2 * k + 1)
                    };
                    push_if_row_valid(m, "Ax1", &bind(&[("k", k as i64), ("b", b as i64), ("c", c as i64)]), &mut weights)?;
                } else {
                    if q.denom() != &1 || *q.numer() < 1 {
                        return Ok(partial("w-order of g is not a positive integer"));
                    }
                    let k = *q.numer() as i64;
                    let (b, c) = if k % 2 == 0 { (k, k + 1) } else { (k + 1, k) };
                    push_if_row_valid(m, "Ax3", &bind(&[("k", k), ("b", b), ("c", c)]), &mut weights)?;
                }
            } else if xm.is_zero() != ym.is_zero() {
                // mixed rows Ax2 / Ax4: one active variable
                let (active, mixed) = if !xm.is_zero() { (0usize, &xm) } else { (1usize, &ym) };
                let p = match mixed.divide_by_monomial(&exps_of(n, &[(active, 1)])) {
                    Some(p) if !p.is_zero() && p.support_vars().iter().all(|&i| i >= 2) => p,
                    _ => return Ok(partial("mixed slot is not (x or y) * p(z,u)")),
                };
                let qp = p.weighted_order_values(&vals).expect("nonzero");
                if p.weighted_leading_form(&vals) != p {
                    return Ok(partial("p slot is not w-homogeneous"));
                }
                if is4 {
                    // w(p) = (2k+1)/4
                    let four_q = qp * rat(4);
                    if four_q.denom() != &1 || four_q.numer() % 2 == 0 || *four_q.numer() < 3 {
                        return Ok(partial("w-order of p does not have the form (2k+1)/4"));
                    }
                    let k = ((four_q.numer() - 1) / 2) as i64;
                    // x-active requires k even, y-active k odd
                    let (b, c, lam, mu) = if k % 2 == 0 {
                        (2 * k + 5, 2 * k + 3, 1, 0)
                    } else {
                        (2 * k + 3, 2 * k + 5, 0, 1)
                    };
                    if (active == 0) != (lam == 1) {
                        return Ok(partial("active mixed variable contradicts the parity of k"));
                    }
                    push_if_row_valid(
                        m,
                        "Ax2",
                        &bind(&[("k", k), ("b", b), ("c", c), ("lambda", lam), ("mu", mu)]),
                        &mut weights,
                    )?;
                } else {
                    // w(p) = k/2
                    let two_q = qp * rat(2);
                    if two_q.denom() != &1 || *two_q.numer() < 1 {
                        return Ok(partial("w-order of p does not have the form k/2"));
                    }
                    let k = *two_q.numer() as i64;
                    let (b, c, lam, mu) = if k % 2 == 0 {
                        (k + 2, k + 1, 1, 0)
                    } else {
                        (k + 1, k + 2, 0, 1)
                    };
                    if (active == 0) != (lam == 1) {
                        return Ok(partial("active mixed variable contradicts the parity of k"));
                    }
                    push_if_row_valid(
                        m,
                        "Ax4",
                        &bind(&[("k", k), ("b", b), ("c", c), ("lambda", lam), ("mu", mu)]),
                        &mut weights,
                    )?;
                }
            } else {
                return Ok(partial("both x- and y-mixed slots present"));
            }
        }
        SingClass::CD3 => {
            // rows D13 (either witness binding) and D14
            for bs in [bind(&[("k", 2)]), bind(&[("k", 3)])] {
                push_if_row_valid(m, "D13", &bs, &mut weights)?;
            }
            push_if_row_valid(m, "D14", &bind(&[]), &mut weights)?;
            if weights.is_empty() {
                return Ok(partial("no fractional cD/3 row matches the literal equation"));
            }
        }
        SingClass::CE2 => {
            for id in ["E22", "E23", "E24", "E25"] {
                push_if_row_valid(m, id, &bind(&[]), &mut weights)?;
            }
            if weights.is_empty() {
                return Ok(partial("no fractional cE/2 row matches the literal equation"));
            }
        }
        SingClass::CD2 => {
            complete = false;
            note = Some(
                "cD/2 enumeration is certified only for binding-free rows; \
                 parameterized rows require explicit bindings"
                    .to_string(),
            );
            push_if_row_valid(m, "D15", &bind(&[]), &mut weights)?;
            for bs in [
                bind(&[("b", 3), ("c", 1), ("d", 2)]),
                bind(&[("b", 1), ("c", 1), ("d", 4)]),
            ] {
                push_if_row_valid(m, "D16", &bs, &mut weights)?;
            }
            push_if_row_valid(m, "D17", &bind(&[]), &mut weights)?;
        }
        SingClass::CE => {
            complete = false;
            note = Some(
                "cE candidates cover the binding-free discrepancy-one rows only".to_string(),
            );
            for id in [
                "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "E10", "E11", "E12",
                "E13", "E14", "E15", "E16", "E17", "E18",
            ] {
                let entry = lookup_entry(id).expect("known row");
                if entry.nvars != n {
                    continue;
                }
                push_if_row_valid(m, id, &bind(&[]), &mut weights)?;
            }
        }
        SingClass::CD | SingClass::CdvOther => {
            return Ok(partial(
                "enumeration for this class requires explicit row bindings",
            ));
        }
    }

    weights.sort();
    weights.dedup();
    let mut contractions = Vec::with_capacity(weights.len());
    for wv in weights {
        let c = weighted_blowup(m, &wv)?;
        debug_assert!(is_w_morphism(&c), "enumerated weight must be a w-morphism");
        contractions.push(c);
    }
    Ok(WMorphisms {
        contractions,
        complete,
        note,
    })
}

/// Validate row `id` with the given bindings against the literal model; on
/// success record the row weight.
fn push_if_row_valid(
    m: &SingularityModel,
    id: &str,
    bindings: &Bindings,
    out: &mut Vec<WeightVector>,
) -> Result<(), BlowupError> {
    let entry = lookup_entry(id)?;
    let w = expected_weight(entry, bindings)?;
    let rep = validate_table_entry(m, entry, &w, bindings)?;
    if rep.passed() && reduced_leading_form(m, &w) {
        out.push(w);
    }
    Ok(())
}

/// Cheap reducedness filter for the exceptional divisor: when the weighted
/// leading form of a hypersurface is `x^2 + C` (no other x-terms), reject it
/// when `-C` is a perfect square; when it is `x*y + C`, reject `C = 0`.
fn reduced_leading_form(m: &SingularityModel, w: &WeightVector) -> bool {
    if m.equations().len() != 1 {
        return true;
    }
    let n = m.nvars();
    let lead = m.equations()[0].weighted_leading_form(&w.values());
    let x2 = exps_of(n, &[(0, 2)]);
    let xy = exps_of(n, &[(0, 1), (1, 1)]);
    if lead.coeff(&x2) == rat(1) {
        let c = lead.sub(&Poly::monomial(n, &x2, rat(1)).expect("valid"));
        if c.support_vars().iter().all(|&i| i != 0) {
            if c.is_zero() {
                return false; // x^2 alone: non-reduced
            }
            return c.neg().sqrt().is_none();
        }
    }
    if lead.coeff(&xy) == rat(1) {
        let c = lead.sub(&Poly::monomial(n, &xy, rat(1)).expect("valid"));
        if c.support_vars().iter().all(|&i| i >= 2) && c.is_zero() {
            return false; // x*y alone: E reducible
        }
    }
    true
}

fn split(f: &Poly, pred: impl Fn(&[i64]) -> bool) -> (Poly, Poly) {
    let n = f.nvars();
    let mut yes = Poly::zero(n);
    let mut no = Poly::zero(n);
    for (e, c) in f.terms() {
        let t = Poly::monomial(n, e, *c).expect("valid");
        if pred(e) {
            yes = yes.add(&t);
        } else {
            no = no.add(&t);
        }
    }
    (yes, no)
}

// ---------------------------------------------------------------------------
// chart singularity inspection
// ---------------------------------------------------------------------------

/// A singular point found on a chart of a contraction.
#[derive(Debug, Clone)]
pub struct ChartSingularity {
    /// Chart label (`U_x` .. `U_t`).
    pub chart: String,
    /// Locus description (`origin`, or an axis point).
    pub locus: String,
    /// Recognized local model, when template matching succeeds.
    pub model: Option<SingularityModel>,
    /// Monomial coordinate change from the chart cover to the recognized
    /// model's coordinates, when the identification is monomial (identity or
    /// a variable permutation).  `None` when the bookkeeping is lost (graph
    /// eliminations, origin shifts).
    pub transition: Option<MonomialMap>,
    /// Human-readable note (always set for unclassified points).
    pub note: String,
}

/// Inspect every chart of a contraction: origins always, plus singular
/// points along exceptional coordinate axes of 4-variable hypersurface
/// charts (rational axis parameters only; irrational parameters are
/// reported as unclassified).  Points shared between charts are reported
/// from the lowest-index chart.  Smooth loci are omitted.
pub fn chart_singularities(c: &Contraction) -> Vec<ChartSingularity> {
    let mut out = Vec::new();
    for chart in &c.charts {
        inspect_chart(chart, &mut out);
    }
    out
}

enum PointClass {
    NotOnVariety,
    Smooth,
    Recognized(SingularityModel, Option<MonomialMap>),
    Unclassified(String),
}

fn inspect_chart(chart: &Chart, out: &mut Vec<ChartSingularity>) {
    let n = chart.quotient.n();
    // origin
    match classify_point(&chart.quotient, chart.equations.clone()) {
        PointClass::NotOnVariety | PointClass::Smooth => {}
        PointClass::Recognized(model, transition) => out.push(ChartSingularity {
            chart: chart.label.clone(),
            locus: "origin".to_string(),
            note: model.describe(),
            model: Some(model),
            transition,
        }),
        PointClass::Unclassified(note) => out.push(ChartSingularity {
            chart: chart.label.clone(),
            locus: "origin".to_string(),
            model: None,
            transition: None,
            note,
        }),
    }
    // exceptional axes
    let vars = chart_vars(n);
    if chart.equations.is_empty() {
        // quotient chart: a non-isolated fixed locus is the only off-origin
        // singularity source
        for j in (chart.axis + 1)..n {
            let d = chart.quotient.faithful_order();
            if d == 1 {
                continue;
            }
            let g = num::integer::gcd(d, chart.quotient.exponents()[j]);
            if g > 1 {
                out.push(ChartSingularity {
                    chart: chart.label.clone(),
                    locus: format!("{}-axis", vars[j]),
                    model: None,
                    transition: None,
                    note: format!(
                        "axis pointwise fixed by a subgroup of order {g}; non-isolated quotient locus"
                    ),
                });
            }
        }
        return;
    }
    if chart.equations.len() != 1 || n != 4 {
        return; // axis scan restricted to 4-variable hypersurface charts
    }
    let h = &chart.equations[0];
    for j in (chart.axis + 1)..n {
        scan_axis(chart, h, j, &vars, out);
    }
}

/// Singular points of `h = 0` along the coordinate axis of variable `j`,
/// detected by the common roots of `h` and all partials restricted to the
/// axis.
fn scan_axis(chart: &Chart, h: &Poly, j: usize, vars: &[String], out: &mut Vec<ChartSingularity>) {
    let n = h.nvars();
    let keep: Vec<usize> = (0..n).filter(|&l| l != j).collect();
    let mut restricted: Vec<Vec<Rat>> = Vec::new();
    let to_univ = |p: &Poly| -> Option<Vec<Rat>> {
        let axis_only = p.set_vars_zero(&keep);
        axis_only.univariate_in(j)
    };
    if let Some(cs) = to_univ(h) {
        restricted.push(cs);
    }
    for l in 0..n {
        if let Some(cs) = to_univ(&h.derivative(l)) {
            restricted.push(cs);
        }
    }
    // gcd of all restrictions; zero polynomials contribute nothing
    let mut g: Option<Vec<Rat>> = None;
    for cs in restricted {
        if cs.iter().all(|c| *c == rat(0)) {
            continue;
        }
        g = Some(match g {
            None => cs,
            Some(prev) => match crate::polyring::gcd_univariate(&prev, &cs) {
                Ok(d) => d,
                Err(_) => return,
            },
        });
    }
    let g = match g {
        // all restrictions vanish identically: the whole axis is singular
        None => {
            out.push(ChartSingularity {
                chart: chart.label.clone(),
                locus: format!("{}-axis", vars[j]),
                model: None,
                transition: None,
                note: "equation and all partials vanish along the axis; non-isolated".to_string(),
            });
            return;
        }
        Some(g) => g,
    };
    let deg = g.len() as i64 - 1;
    if deg <= 0 {
        return; // no common zeros beyond possibly t = 0 (the origin, handled)
    }
    let roots = match crate::polyring::rational_roots(&g) {
        Ok(r) => r,
        Err(_) => return,
    };
    let rational_mult: i64 = roots.iter().map(|(_, m)| *m as i64).sum();
    for (t0, _) in &roots {
        if *t0 == rat(0) {
            continue; // origin handled separately
        }
        // stabilizer of the axis point inside the cyclic chart group
        let d = chart.quotient.faithful_order();
        let stab = num::integer::gcd(d, chart.quotient.exponents()[j]);
        if stab > 1 {
            out.push(ChartSingularity {
                chart: chart.label.clone(),
                locus: format!("{} = {}", vars[j], t0),
                model: None,
                transition: None,
                note: format!("orbifold axis point with stabilizer of order {stab}; unclassified"),
            });
            continue;
        }
        // trivial stabilizer: analyze the shifted hypersurface germ
        let mut shift = vec![rat(0); n];
        shift[j] = *t0;
        let shifted = match h.shift_origin(&shift) {
            Ok(p) => p,
            Err(_) => continue,
        };
        match classify_point(&QuotientAction::trivial(n), vec![shifted]) {
            PointClass::Recognized(model, _) => out.push(ChartSingularity {
                chart: chart.label.clone(),
                locus: format!("{} = {}", vars[j], t0),
                note: model.describe(),
                model: Some(model),
                // the origin shift is not monomial
                transition: None,
            }),
            PointClass::Unclassified(note) => out.push(ChartSingularity {
                chart: chart.label.clone(),
                locus: format!("{} = {}", vars[j], t0),
                model: None,
                transition: None,
                note,
            }),
            PointClass::Smooth | PointClass::NotOnVariety => {}
        }
    }
    // roots outside the rationals are still singular points over the
    // algebraically closed base field
    let nonzero_deg = deg - trailing_zero_order(&g);
    if nonzero_deg > rational_mult - roots.iter().filter(|(t, _)| *t == rat(0)).map(|(_, m)| *m as i64).sum::<i64>() {
        out.push(ChartSingularity {
            chart: chart.label.clone(),
            locus: format!("{}-axis, irrational parameters", vars[j]),
            model: None,
            transition: None,
            note: "singular axis points at irrational parameters; unclassified".to_string(),
        });
    }
}

fn trailing_zero_order(coeffs: &[Rat]) -> i64 {
    coeffs.iter().take_while(|c| **c == rat(0)).count() as i64
}

/// Classify the germ at the origin of a chart cover modulo a cyclic action.
fn classify_point(q: &QuotientAction, eqs: Vec<Poly>) -> PointClass {
    match eqs.len() {
        0 => {
            if q.faithful_order() == 1 {
                PointClass::Smooth
            } else {
                let ident = MonomialMap::identity(q.n());
                match SingularityModel::quotient_point(q.faithful()) {
                    Ok(m) => PointClass::Recognized(m, Some(ident)),
                    Err(e) => PointClass::Unclassified(format!("invalid quotient germ: {e}")),
                }
            }
        }
        1 => classify_hypersurface_point(q, &eqs[0]),
        2 => classify_ci_point(q, &eqs[0], &eqs[1]),
        _ => PointClass::Unclassified("more than two equations".to_string()),
    }
}

fn classify_hypersurface_point(q: &QuotientAction, h: &Poly) -> PointClass {
    let n = h.nvars();
    if h.constant_term() != rat(0) {
        return PointClass::NotOnVariety;
    }
    // smooth direction: a linear monomial y_i in h
    for i in 0..n {
        if h.coeff(&exps_of(n, &[(i, 1)])) != rat(0) {
            // the germ is a smooth 3-fold; the action restricts to the
            // complementary coordinates
            let keep: Vec<usize> = (0..n).filter(|&l| l != i).collect();
            return match q.restrict(&keep) {
                Ok(q3) => {
                    if q3.faithful_order() == 1 {
                        PointClass::Smooth
                    } else {
                        // the graph elimination is not a monomial change
                        match SingularityModel::quotient_point(q3) {
                            Ok(m) => PointClass::Recognized(m, None),
                            Err(e) => PointClass::Unclassified(format!("invalid quotient: {e}")),
                        }
                    }
                }
                Err(e) => PointClass::Unclassified(format!("action restriction failed: {e}")),
            };
        }
    }
    // singular at the origin: try the x*y + g(z,u) template over variable
    // permutations
    if let Some((m, perm)) = try_car_template(q, h) {
        return PointClass::Recognized(m, Some(perm));
    }
    let names = chart_vars(n);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PointClass::Unclassified(format!(
        "singular origin, unrecognized template: {} (action {})",
        h.render(&refs),
        q
    ))
}

/// Match `h` against `x*y + g(z,u)` over all variable-role assignments,
/// normalizing the action to the `1/r(b, r-b, 1, r)` presentation.  Returns
/// the model plus the variable permutation (chart coordinates to model
/// coordinates).
fn try_car_template(q: &QuotientAction, h: &Poly) -> Option<(SingularityModel, MonomialMap)> {
    let n = h.nvars();
    if n != 4 {
        return None;
    }
    let d = q.faithful_order();
    let qf = q.faithful();
    let exps = qf.exponents().to_vec();
    for i in 0..n {
        for jj in (i + 1)..n {
            let (i, j) = (i, jj);
            let c = h.coeff(&exps_of(n, &[(i, 1), (j, 1)]));
            if c == rat(0) {
                continue;
            }
            let f = h.scale(rat(1) / c);
            let rest = f.sub(&Poly::monomial(n, &exps_of(n, &[(i, 1), (j, 1)]), rat(1)).expect("valid"));
            let others: Vec<usize> = (0..n).filter(|&l| l != i && l != j).collect();
            if !rest
                .support_vars()
                .iter()
                .all(|l| others.contains(l))
            {
                continue;
            }
            if rest.is_zero() || rest.order_at_origin().unwrap_or(0) < 2 {
                continue;
            }
            // role assignment for the two leftover slots: z needs an
            // exponent invertible mod d, u needs exponent 0
            for (kz, ku) in [(others[0], others[1]), (others[1], others[0])] {
                if d > 1 {
                    if exps[ku] % d != 0 {
                        continue;
                    }
                    let gz = num::integer::gcd(exps[kz], d);
                    if gz != 1 {
                        continue;
                    }
                    if (exps[i] + exps[j]) % d != 0 {
                        continue;
                    }
                }
                // permute into standard order (x, y, z, u)
                let mut images = vec![Poly::zero(n); n];
                images[i] = Poly::var(n, 0).expect("valid");
                images[j] = Poly::var(n, 1).expect("valid");
                images[kz] = Poly::var(n, 2).expect("valid");
                images[ku] = Poly::var(n, 3).expect("valid");
                let std_f = match f.substitute(&images) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                let action = if d == 1 {
                    QuotientAction::trivial(4)
                } else {
                    let inv = mod_inverse(exps[kz].rem_euclid(d), d)?;
                    let beta = (inv * exps[i]).rem_euclid(d);
                    match QuotientAction::new(d, &[beta, d - beta, 1, 0]) {
                        Ok(a) => a,
                        Err(_) => continue,
                    }
                };
                let model = match SingularityModel::hypersurface(
                    action,
                    std_f,
                    SingClass::CAr,
                    BTreeMap::new(),
                ) {
                    Ok(m) => m,
                    Err(_) => continue,
                };
                if crate::models::validate_normal_form(&model).passed() {
                    let mut map_images = Vec::with_capacity(n);
                    for l in 0..n {
                        let dest = if l == i {
                            0
                        } else if l == j {
                            1
                        } else if l == kz {
                            2
                        } else {
                            3
                        };
                        let mut e = vec![rat(0); n];
                        e[dest] = rat(1);
                        map_images.push((rat(1), e));
                    }
                    let perm = MonomialMap::new(n, map_images).expect("permutation is valid");
                    return Some((model, perm));
                }
            }
        }
    }
    None
}

fn mod_inverse(a: i64, d: i64) -> Option<i64> {
    let a = a.rem_euclid(d);
    for x in 1..d {
        if (a * x).rem_euclid(d) == 1 {
            return Some(x);
        }
    }
    None
}

fn classify_ci_point(q: &QuotientAction, h1: &Poly, h2: &Poly) -> PointClass {
    let n = h1.nvars();
    if h1.constant_term() != rat(0) || h2.constant_term() != rat(0) {
        return PointClass::NotOnVariety;
    }
    // graph elimination: an equation of the form c*y_i + q(others)
    for (a, b) in [(h1, h2), (h2, h1)] {
        for i in 0..n {
            let lin = a.coeff(&exps_of(n, &[(i, 1)]));
            if lin == rat(0) {
                continue;
            }
            // y_i must appear in `a` only through the linear monomial
            let appears_elsewhere = a
                .terms()
                .any(|(e, _)| e[i] > 0 && *e != exps_of(n, &[(i, 1)])[..]);
            if appears_elsewhere {
                continue;
            }
            // y_i = -(a - lin*y_i)/lin
            let rest = a.sub(&Poly::monomial(n, &exps_of(n, &[(i, 1)]), lin).expect("valid"));
            let solved = rest.scale(rat(-1) / lin);
            let mut images: Vec<Poly> = (0..n)
                .map(|l| Poly::var(n, l).expect("valid"))
                .collect();
            images[i] = solved;
            let substituted = match b.substitute(&images) {
                Ok(p) => p,
                Err(_) => continue,
            };
            // drop the eliminated variable
            let keep: Vec<usize> = (0..n).filter(|&l| l != i).collect();
            if substituted.support_vars().contains(&i) {
                continue;
            }
            let reduced = match substituted.project_to_vars(&keep) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let q4 = match q.restrict(&keep) {
                Ok(a) => a,
                Err(_) => {
                    return PointClass::Unclassified(
                        "action does not restrict along the graph elimination".to_string(),
                    )
                }
            };
            if reduced.is_zero() {
                return PointClass::Unclassified(
                    "second equation collapses under elimination".to_string(),
                );
            }
            // the elimination is not monomial, so coordinate tracking stops
            return match classify_point(&q4, vec![reduced]) {
                PointClass::Recognized(m, _) => PointClass::Recognized(m, None),
                other => other,
            };
        }
    }
    PointClass::Unclassified(
        "no graph-eliminable variable in either equation".to_string(),
    )
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;

    fn p4(src: &str) -> Poly {
        parse_poly(src, &["x", "y", "z", "u"]).unwrap()
    }

    fn car_model(r: i64, act: &[i64], f: &str) -> SingularityModel {
        SingularityModel::hypersurface(
            QuotientAction::new(r, act).unwrap(),
            p4(f),
            SingClass::CAr,
            BTreeMap::new(),
        )
        .unwrap()
    }

    #[test]
    fn blowup_examples() {
        // xy + z^2 + u^7 at (1,1,1,1): discrepancy 1, U_u strict transform
        let m = car_model(1, &[0, 0, 0, 0], "x*y + z^2 + u^7");
        let w = WeightVector::new(1, &[1, 1, 1, 1]).unwrap();
        let c = weighted_blowup(&m, &w).unwrap();
        assert_eq!(c.discrepancy, rat(1));
        assert!(is_w_morphism(&c));
        let uu = &c.charts[3];
        assert_eq!(uu.label, "U_u");
        assert_eq!(uu.equations[0], p4("x*y + z^2 + u^5"));
        // quotient 1/2(1,1,1) Kawamata blow-up: discrepancy 1/2, smooth charts
        let q = SingularityModel::quotient_point(QuotientAction::new(2, &[1, 1, 1]).unwrap())
            .unwrap();
        let w = WeightVector::new(2, &[1, 1, 1]).unwrap();
        let c = weighted_blowup(&q, &w).unwrap();
        assert_eq!(c.discrepancy, ratio(1, 2));
        assert!(is_w_morphism(&c));
        for chart in &c.charts {
            assert_eq!(chart.quotient.faithful_order(), 1, "{}", chart.label);
        }
        assert!(chart_singularities(&c).is_empty());
        // cA/3 example: discrepancy 1/3
        let m = car_model(3, &[1, 2, 1, 0], "x*y + z^6 + u^2");
        let w = WeightVector::new(3, &[4, 2, 1, 3]).unwrap();
        let c = weighted_blowup(&m, &w).unwrap();
        assert_eq!(c.discrepancy, ratio(1, 3));
    }

    #[test]
    fn discrepancy_examples() {
        // ordinary blow-up of a smooth 3-fold point: discrepancy 2
        let s = SingularityModel::smooth_point();
        let w = WeightVector::new(1, &[1, 1, 1]).unwrap();
        let c = weighted_blowup(&s, &w).unwrap();
        assert_eq!(discrepancy(&c), rat(2));
        assert!(!is_w_morphism(&c));
        // A2 blow-up: discrepancy 3, not a w-morphism
        let m = car_model(1, &[0, 0, 0, 0], "x^2 - y^2 + z^3 + x*u^2");
        let w = WeightVector::new(1, &[4, 3, 2, 1]).unwrap();
        let c = weighted_blowup(&m, &w).unwrap();
        assert_eq!(c.discrepancy, rat(3));
        assert!(!is_w_morphism(&c));
        // E26 replay: discrepancy 1
        let m = SingularityModel::hypersurface(
            QuotientAction::new(2, &[1, 0, 1, 1]).unwrap(),
            p4("x^2 + y^3 + z^4 + u^8"),
            SingClass::CE2,
            BTreeMap::new(),
        )
        .unwrap();
        let w = WeightVector::new(2, &[8, 6, 4, 2]).unwrap();
        let c = weighted_blowup(&m, &w).unwrap();
        assert_eq!(c.discrepancy, rat(1));
    }

    #[test]
    fn enumerate_quotient_and_car() {
        // quotient 1/2(1,1,1): exactly one w-morphism
        let q = SingularityModel::quotient_point(QuotientAction::new(2, &[1, 1, 1]).unwrap())
            .unwrap();
        let e = enumerate_w_morphisms(&q).unwrap();
        assert!(e.complete);
        assert_eq!(e.contractions.len(), 1);
        assert_eq!(e.contractions[0].weight, WeightVector::new(2, &[1, 1, 1]).unwrap());
        // cA/3 with beta = 1: exactly two w-morphisms
        let m = car_model(3, &[1, 2, 1, 0], "x*y + z^6 + u^2");
        let e = enumerate_w_morphisms(&m).unwrap();
        assert!(e.complete);
        let ws: Vec<Vec<i64>> = e
            .contractions
            .iter()
            .map(|c| c.weight.entries().to_vec())
            .collect();
        assert_eq!(ws, vec![vec![1, 5, 1, 3], vec![4, 2, 1, 3]]);
        // Gorenstein cA: exactly one
        let m = car_model(1, &[0, 0, 0, 0], "x*y + z^2 + u^3");
        let e = enumerate_w_morphisms(&m).unwrap();
        assert!(e.complete);
        assert_eq!(e.contractions.len(), 1);
        assert_eq!(
            e.contractions[0].weight,
            WeightVector::new(1, &[1, 1, 1, 1]).unwrap()
        );
        // degenerate template: z-power missing
        let m = car_model(1, &[0, 0, 0, 0], "x*y + z^6 + u^4");
        let e = enumerate_w_morphisms(&m).unwrap();
        assert!(!e.complete);
        assert!(e.contractions.is_empty());
    }

    #[test]
    fn enumerate_fractional_families() {
        // cAx/4 plain row
        let m = SingularityModel::hypersurface(
            QuotientAction::new(4, &[1, 3, 1, 2]).unwrap(),
            p4("x^2 + y^2 + z^6 + u^3"),
            SingClass::CAx4,
            BTreeMap::new(),
        )
        .unwrap();
        let e = enumerate_w_morphisms(&m).unwrap();
        assert!(e.complete);
        assert_eq!(e.contractions.len(), 1);
        assert_eq!(
            e.contractions[0].weight,
            WeightVector::new(4, &[5, 3, 1, 2]).unwrap()
        );
        // cD/3 model matching both D13 and D14
        let m = SingularityModel::hypersurface(
            QuotientAction::new(3, &[0, 2, 1, 1]).unwrap(),
            p4("x^2 + y^3 + z^3 + u^12"),
            SingClass::CD3,
            BTreeMap::new(),
        )
        .unwrap();
        let e = enumerate_w_morphisms(&m).unwrap();
        assert!(e.complete);
        let ws: Vec<Vec<i64>> = e
            .contractions
            .iter()
            .map(|c| c.weight.entries().to_vec())
            .collect();
        assert_eq!(ws, vec![vec![3, 2, 4, 1], vec![6, 5, 4, 1]]);
        for c in &e.contractions {
            assert!(is_w_morphism(c));
        }
        // cE/2 row E22
        let m = SingularityModel::hypersurface(
            QuotientAction::new(2, &[1, 0, 1, 1]).unwrap(),
            p4("x^2 + y^3 + z*u^3 + z^4"),
            SingClass::CE2,
            BTreeMap::new(),
        )
        .unwrap();
        let e = enumerate_w_morphisms(&m).unwrap();
        assert!(e.complete);
        assert!(e
            .contractions
            .iter()
            .any(|c| c.weight == WeightVector::new(2, &[3, 2, 3, 1]).unwrap()));
    }

    #[test]
    fn chart_singularity_examples() {
        // blow-up of xy + z^2 + u^7: single singular origin in U_u
        let m = car_model(1, &[0, 0, 0, 0], "x*y + z^2 + u^7");
        let w = WeightVector::new(1, &[1, 1, 1, 1]).unwrap();
        let c = weighted_blowup(&m, &w).unwrap();
        let sings = chart_singularities(&c);
        assert_eq!(sings.len(), 1, "{sings:?}");
        assert_eq!(sings[0].chart, "U_u");
        assert_eq!(sings[0].locus, "origin");
        let model = sings[0].model.as_ref().unwrap();
        assert_eq!(model.equations()[0], p4("x*y + z^2 + u^5"));
        // Kawamata blow-up of 1/3(1,2,1): single singular origin 1/2(1,1,1)
        let q = SingularityModel::quotient_point(QuotientAction::new(3, &[1, 2, 1]).unwrap())
            .unwrap();
        let w = WeightVector::new(3, &[1, 2, 1]).unwrap();
        let c = weighted_blowup(&q, &w).unwrap();
        let sings = chart_singularities(&c);
        assert_eq!(sings.len(), 1, "{sings:?}");
        let model = sings[0].model.as_ref().unwrap();
        assert_eq!(
            model.ambient().canonical(),
            QuotientAction::new(2, &[1, 1, 1]).unwrap().canonical()
        );
        // blow-up of a smooth point: empty
        let s = SingularityModel::smooth_point();
        let w = WeightVector::new(1, &[1, 1, 1]).unwrap();
        let c = weighted_blowup(&s, &w).unwrap();
        assert!(chart_singularities(&c).is_empty());
    }

    #[test]
    fn car_chain_descends() {
        // each w-morphism chart chain for xy + z^2 + u^(2n+1) descends the
        // u-exponent by 2
        let mut m = car_model(1, &[0, 0, 0, 0], "x*y + z^2 + u^7");
        let mut steps = 0;
        loop {
            let e = enumerate_w_morphisms(&m).unwrap();
            assert!(e.complete);
            assert_eq!(e.contractions.len(), 1);
            let sings = chart_singularities(&e.contractions[0]);
            steps += 1;
            match sings.len() {
                0 => break,
                1 => {
                    m = sings[0].model.clone().expect("classified");
                }
                _ => panic!("unexpected multiplicity"),
            }
            assert!(steps < 10);
        }
        assert_eq!(steps, 3);
    }

    #[test]
    fn jacobian_cross_check() {
        // for r = 1, the exceptional multiplicity of the Jacobian determinant
        // of the chart map equals sum(b) - 1; discrepancy = that minus w(f)
        let f = p4("x*y + z^3 + u^5");
        let m = car_model(1, &[0, 0, 0, 0], "x*y + z^3 + u^5");
        let mut count = 0;
        for b1 in 1..=3i64 {
            for b2 in 1..=3i64 {
                for b3 in 1..=2i64 {
                    for b4 in 1..=2i64 {
                        let w = WeightVector::new(1, &[b1, b2, b3, b4]).unwrap();
                        let c = weighted_blowup(&m, &w).unwrap();
                        // build the chart-4 map as polynomials and take the
                        // Jacobian determinant
                        let n = 4;
                        let mut maps = Vec::new();
                        for j in 0..n {
                            let mut e = vec![0i64; n];
                            if j != 3 {
                                e[j] = 1;
                            }
                            e[3] += w.entries()[j];
                            maps.push(Poly::monomial(n, &e, rat(1)).unwrap());
                        }
                        let det = det4(&maps);
                        let (lead, _) = det.leading_term().unwrap();
                        let jac_mult = lead[3];
                        let wf = f.weighted_order(&w).unwrap();
                        assert_eq!(
                            c.discrepancy,
                            rat(jac_mult as i128) - wf,
                            "weight {w}"
                        );
                        count += 1;
                    }
                }
            }
        }
        assert!(count >= 20);
    }

    fn det4(maps: &[Poly]) -> Poly {
        // Jacobian determinant via cofactor expansion
        let n = 4;
        let jac: Vec<Vec<Poly>> = (0..n)
            .map(|j| (0..n).map(|l| maps[j].derivative(l)).collect())
            .collect();
        fn det(rows: &[Vec<Poly>], cols: &[usize]) -> Poly {
            let n = rows[0][0].nvars();
            if cols.len() == 1 {
                return rows[0][cols[0]].clone();
            }
            let mut acc = Poly::zero(n);
            for (idx, &c) in cols.iter().enumerate() {
                let minor_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let sub = det(&rows[1..], &minor_cols);
                let term = rows[0][c].mul(&sub);
                if idx % 2 == 0 {
                    acc = acc.add(&term);
                } else {
                    acc = acc.sub(&term);
                }
            }
            acc
        }
        det(&jac, &[0, 1, 2, 3])
    }

    #[test]
    fn a1_enumeration_valuations() {
        // every cA/r w-morphism has v_E(z) = 1/r and v_E(u) = 1
        for (r, act, f) in [
            (3i64, vec![1, 2, 1, 0], "x*y + z^6 + u^2"),
            (2, vec![1, 1, 1, 0], "x*y + z^2 + u^3"),
            (1, vec![0, 0, 0, 0], "x*y + z^3 + u^5"),
        ] {
            let m = car_model(r, &act, f);
            let e = enumerate_w_morphisms(&m).unwrap();
            assert!(e.complete);
            assert!(!e.contractions.is_empty());
            for c in &e.contractions {
                assert!(is_w_morphism(c));
                assert_eq!(c.valuation_of_var(2), ratio(1, r as i128));
                assert_eq!(c.valuation_of_var(3), rat(1));
            }
        }
    }

    #[test]
    fn replay_registry_instances() {
        use crate::models::{default_instances, expected_discrepancy};
        for inst in default_instances() {
            let entry = lookup_entry(inst.id).unwrap();
            let c = weighted_blowup(&inst.model, &inst.weight).unwrap();
            let expected = expected_discrepancy(entry, &inst.bindings).unwrap();
            assert_eq!(c.discrepancy, expected, "row {}", inst.id);
            // strict transforms are semi-invariant under the reduced chart
            // actions
            for chart in &c.charts {
                for eq in &chart.equations {
                    assert!(
                        eq.character(&chart.quotient).is_ok(),
                        "row {} chart {}",
                        inst.id,
                        chart.label
                    );
                }
            }
        }
    }

    #[test]
    fn chart_covering_center_test() {
        // for sampled valuations v, the chart set containing the center is
        // the argmin of v_i / w_i and is never empty
        let w = WeightVector::new(3, &[4, 2, 1, 3]).unwrap();
        for v in [[1i64, 1, 1, 1], [2, 1, 1, 2], [4, 2, 1, 3], [8, 2, 3, 3]] {
            let vw = WeightVector::new(3, &v).unwrap();
            let centers = crate::qlattice::center_chart_test(&w, &vw).unwrap();
            assert!(!centers.is_empty());
            // explicit argmin cross-check
            let ratios: Vec<Rat> = (0..4)
                .map(|i| ratio(v[i] as i128, w.entries()[i] as i128))
                .collect();
            let min = ratios.iter().min().unwrap();
            for i in 0..4 {
                assert_eq!(centers.contains(&(i + 1)), ratios[i] == *min);
            }
        }
    }
}
