//! Singularity models and the divisorial-contraction classification registry.
//!
//! A [`SingularityModel`] is an embedded normal form: a cyclic quotient of
//! affine 3/4/5-space together with 0/1/2 semi-invariant equations and a
//! declared singularity class.  [`validate_normal_form`] replays the
//! normal-form template of the declared class against the literal equations.
//!
//! The registry ([`table_registry`]) holds the 61 classification rows
//! (A1–A2, Ax1–Ax4, D1–D29, E1–E26) describing divisorial contractions over
//! each singularity class: equation template, group action, blow-up weight,
//! expected discrepancy, and side conditions.  [`validate_table_entry`]
//! replays a concrete model + weight + parameter binding against a row, and
//! [`default_instances`] provides concrete instantiations of every row for
//! sweep tests.
//!
//! Models are compared by literal normal-form data; recognising a class from
//! a raw equation under analytic coordinate changes is out of scope — the
//! caller declares the class and the tool verifies the template.

use crate::polyring::{gcd_bivariate, parse_poly, Poly};
use crate::qlattice::{terminal_quotient_check, QuotientAction, WeightVector};
use crate::{rat, ratio, Rat};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("invalid model: {0}")]
    Invalid(String),
    #[error("unknown class name {0:?}")]
    UnknownClass(String),
    #[error("unknown registry row {0:?}")]
    UnknownRow(String),
    #[error("unbound parameter {0:?}")]
    UnboundParam(String),
    #[error("polynomial error: {0}")]
    Poly(#[from] crate::polyring::PolyError),
    #[error("lattice error: {0}")]
    Lattice(#[from] crate::qlattice::QError),
}

/// Declared singularity class of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SingClass {
    Smooth,
    Quotient,
    CAr,
    CAx4,
    CAx2,
    CD,
    CD3,
    CD2,
    CE,
    CE2,
    CdvOther,
}

impl SingClass {
    pub fn name(&self) -> &'static str {
        match self {
            SingClass::Smooth => "smooth",
            SingClass::Quotient => "quotient",
            SingClass::CAr => "cA/r",
            SingClass::CAx4 => "cAx/4",
            SingClass::CAx2 => "cAx/2",
            SingClass::CD => "cD",
            SingClass::CD3 => "cD/3",
            SingClass::CD2 => "cD/2",
            SingClass::CE => "cE",
            SingClass::CE2 => "cE/2",
            SingClass::CdvOther => "cDV-other",
        }
    }

    pub fn parse(s: &str) -> Result<SingClass, ModelError> {
        Ok(match s {
            "smooth" => SingClass::Smooth,
            "quotient" => SingClass::Quotient,
            "cA/r" => SingClass::CAr,
            "cAx/4" => SingClass::CAx4,
            "cAx/2" => SingClass::CAx2,
            "cD" => SingClass::CD,
            "cD/3" => SingClass::CD3,
            "cD/2" => SingClass::CD2,
            "cE" => SingClass::CE,
            "cE/2" => SingClass::CE2,
            "cDV-other" => SingClass::CdvOther,
            other => return Err(ModelError::UnknownClass(other.to_string())),
        })
    }

    /// Cartier index of the canonical class at a point of this type, given
    /// the ambient group order.
    pub fn cartier_index(&self, ambient_r: i64) -> i64 {
        match self {
            SingClass::Smooth => 1,
            SingClass::Quotient | SingClass::CAr => ambient_r,
            SingClass::CAx4 => 4,
            SingClass::CAx2 | SingClass::CD2 | SingClass::CE2 => 2,
            SingClass::CD3 => 3,
            SingClass::CD | SingClass::CE | SingClass::CdvOther => 1,
        }
    }
}

impl fmt::Display for SingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Standard variable names for an n-variable ambient space.
pub fn standard_vars(n: usize) -> Vec<String> {
    ["x", "y", "z", "u", "t"][..n]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// An embedded singularity germ: quotient of affine space with 0–2
/// semi-invariant equations and a declared class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityModel {
    ambient: QuotientAction,
    vars: Vec<String>,
    equations: Vec<Poly>,
    declared_class: SingClass,
    params: BTreeMap<String, Rat>,
}

impl SingularityModel {
    pub fn new(
        ambient: QuotientAction,
        vars: Vec<String>,
        equations: Vec<Poly>,
        declared_class: SingClass,
        params: BTreeMap<String, Rat>,
    ) -> Result<Self, ModelError> {
        let n = ambient.n();
        if !(3..=5).contains(&n) {
            return Err(ModelError::Invalid(format!(
                "ambient dimension {n} outside 3..=5"
            )));
        }
        if vars.len() != n {
            return Err(ModelError::Invalid(format!(
                "{} variable names for dimension {n}",
                vars.len()
            )));
        }
        {
            let mut sorted = vars.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != n {
                return Err(ModelError::Invalid("duplicate variable names".into()));
            }
        }
        if equations.len() != n - 3 {
            return Err(ModelError::Invalid(format!(
                "dimension {n} requires {} equations, got {}",
                n - 3,
                equations.len()
            )));
        }
        for (i, f) in equations.iter().enumerate() {
            if f.nvars() != n {
                return Err(ModelError::Invalid(format!(
                    "equation {i} has {} variables, ambient has {n}",
                    f.nvars()
                )));
            }
            if f.is_zero() {
                return Err(ModelError::Invalid(format!("equation {i} is zero")));
            }
            f.character(&ambient)
                .map_err(|e| ModelError::Invalid(format!("equation {i}: {e}")))?;
        }
        if matches!(declared_class, SingClass::Smooth | SingClass::Quotient) && n != 3 {
            return Err(ModelError::Invalid(format!(
                "class {declared_class} requires a 3-dimensional ambient space"
            )));
        }
        Ok(SingularityModel {
            ambient,
            vars,
            equations,
            declared_class,
            params,
        })
    }

    /// A smooth 3-fold point.
    pub fn smooth_point() -> Self {
        SingularityModel {
            ambient: QuotientAction::trivial(3),
            vars: standard_vars(3),
            equations: vec![],
            declared_class: SingClass::Smooth,
            params: BTreeMap::new(),
        }
    }

    /// A quotient point (class is `Smooth` when the action is trivial).
    pub fn quotient_point(action: QuotientAction) -> Result<Self, ModelError> {
        let class = if action.is_trivial() {
            SingClass::Smooth
        } else {
            SingClass::Quotient
        };
        SingularityModel::new(action, standard_vars(3), vec![], class, BTreeMap::new())
    }

    /// A hypersurface model in the 4-variable ambient quotient.
    pub fn hypersurface(
        action: QuotientAction,
        f: Poly,
        class: SingClass,
        params: BTreeMap<String, Rat>,
    ) -> Result<Self, ModelError> {
        SingularityModel::new(action, standard_vars(4), vec![f], class, params)
    }

    pub fn ambient(&self) -> &QuotientAction {
        &self.ambient
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn declared_class(&self) -> SingClass {
        self.declared_class
    }

    pub fn params(&self) -> &BTreeMap<String, Rat> {
        &self.params
    }

    pub fn param(&self, name: &str) -> Option<Rat> {
        self.params.get(name).copied()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.n()
    }

    /// Cartier index of the distinguished point.
    pub fn index(&self) -> i64 {
        self.declared_class.cartier_index(self.ambient.r())
    }

    pub fn is_gorenstein(&self) -> bool {
        self.index() == 1
    }

    /// True iff the model is a smooth point (no equations, trivial action).
    pub fn is_smooth_point(&self) -> bool {
        self.equations.is_empty() && self.ambient.faithful_order() == 1
    }

    /// Canonical memoization key.  Quotient points are canonicalized over
    /// generator changes and coordinate permutations; `cA/r` models over the
    /// x↔y swap (β ↔ r−β); other classes use literal normal-form data.
    pub fn normal_form_key(&self) -> String {
        match self.declared_class {
            SingClass::Smooth => "smooth".to_string(),
            SingClass::Quotient => format!("quotient|{}", self.ambient.canonical()),
            SingClass::CAr => {
                let r = self.ambient.r();
                let beta = self.ambient.exponents()[0];
                let beta_min = beta.min((r - beta).rem_euclid(r));
                let names = self.var_names();
                format!(
                    "cA/r|r={r}|beta={beta_min}|{}",
                    self.equations[0].render(&names)
                )
            }
            other => {
                let names = self.var_names();
                let eqs: Vec<String> =
                    self.equations.iter().map(|f| f.render(&names)).collect();
                format!("{}|{}|{}", other, self.ambient, eqs.join(";"))
            }
        }
    }

    /// Human-readable one-line description.
    pub fn describe(&self) -> String {
        let names = self.var_names();
        if self.equations.is_empty() {
            format!("{} point {}", self.declared_class, self.ambient)
        } else {
            let eqs: Vec<String> = self.equations.iter().map(|f| f.render(&names)).collect();
            if self.ambient.is_trivial() {
                format!("({}) [{}]", eqs.join(" = "), self.declared_class)
            } else {
                format!(
                    "({}) / {} [{}]",
                    eqs.join(" = "),
                    self.ambient,
                    self.declared_class
                )
            }
        }
    }
}

// ---------------------------------------------------------------------------
// validation reports
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        ValidationReport {
            subject: subject.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

// ---------------------------------------------------------------------------
// normal-form validation (the terminal classification templates)
// ---------------------------------------------------------------------------

/// Check the model's literal equations against the normal-form template of
/// its declared class and report every condition.
pub fn validate_normal_form(m: &SingularityModel) -> ValidationReport {
    let mut rep = ValidationReport::new(format!("normal form of {}", m.describe()));
    let n = m.nvars();
    match m.declared_class() {
        SingClass::Smooth => {
            rep.push(
                "trivial action",
                m.ambient.faithful_order() == 1,
                format!("ambient {}", m.ambient),
            );
        }
        SingClass::Quotient => {
            let term = terminal_quotient_check(&m.ambient).unwrap_or(false);
            rep.push(
                "terminal quotient form 1/r(a,r-a,1)",
                term,
                format!("ambient {}", m.ambient),
            );
        }
        SingClass::CAr => validate_car(m, &mut rep),
        SingClass::CAx4 => validate_cax4(m, &mut rep),
        SingClass::CAx2 => validate_cax2(m, &mut rep),
        SingClass::CD3 => validate_cd3(m, &mut rep),
        SingClass::CD2 => validate_cd2(m, &mut rep),
        SingClass::CE2 => validate_ce2(m, &mut rep),
        SingClass::CD | SingClass::CE | SingClass::CdvOther => {
            rep.push("index-1 ambient", m.ambient.r() == 1, format!("{}", m.ambient));
            if n == 4 {
                let ord = m.equations[0].order_at_origin().unwrap_or(0);
                rep.push(
                    "double point (order 2 at origin)",
                    ord == 2,
                    format!("order {ord}"),
                );
            }
            rep.push(
                "template not certified for index-1 classes (declared)",
                true,
                "compound Du Val type recognition is out of scope",
            );
        }
    }
    rep
}

// exponent helper: build an exponent vector for (var, e) pairs
fn exps(n: usize, pairs: &[(usize, i64)]) -> Vec<i64> {
    let mut e = vec![0; n];
    for &(i, x) in pairs {
        e[i] += x;
    }
    e
}

fn validate_car(m: &SingularityModel, rep: &mut ValidationReport) {
    if m.nvars() != 4 {
        rep.push("4 ambient variables", false, format!("n={}", m.nvars()));
        return;
    }
    let r = m.ambient.r();
    let a = m.ambient.exponents();
    if r == 1 {
        rep.push("index-1 ambient action", m.ambient.is_trivial(), m.ambient.to_string());
    } else {
        let beta = a[0];
        let ok = a[1] == (r - beta).rem_euclid(r) && a[2] == 1 % r && a[3] == 0;
        rep.push(
            "action of form 1/r(b,r-b,1,r)",
            ok,
            format!("{}", m.ambient),
        );
        rep.push(
            "gcd(b, r) = 1",
            num::integer::gcd(beta, r) == 1,
            format!("b={beta}, r={r}"),
        );
    }
    let f = &m.equations[0];
    let xy = exps(4, &[(0, 1), (1, 1)]);
    rep.push(
        "term x*y with coefficient 1",
        f.coeff(&xy) == rat(1),
        format!("coefficient {}", f.coeff(&xy)),
    );
    let g = f.sub(&Poly::monomial(4, &xy, rat(1)).expect("valid monomial"));
    let support_ok = g.support_vars().iter().all(|&i| i == 2 || i == 3);
    rep.push("g involves only z and u", support_ok, String::new());
    rep.push("g is nonzero", !g.is_zero(), String::new());
    if support_ok && !g.is_zero() {
        let ord = g.order_at_origin().unwrap_or(0);
        rep.push("g has multiplicity >= 2", ord >= 2, format!("order {ord}"));
        let zmod = g.terms().all(|(e, _)| e[2] % r == 0);
        rep.push(
            "z-exponents of g divisible by r",
            zmod,
            format!("r={r}"),
        );
    }
}

fn validate_cax4(m: &SingularityModel, rep: &mut ValidationReport) {
    rep.push("ambient 1/4(1,1,3,2)", m.ambient == QuotientAction::new(4, &[1, 1, 3, 2]).expect("valid"), m.ambient.to_string());
    let f = &m.equations[0];
    // shape (a): xy + z^2 + g(u); shape (b): x^2 + z^2 + g(y,u); g in m^3
    let try_shape = |head: Vec<i64>, allowed: &[usize]| -> Option<(bool, i64)> {
        let z2 = exps(4, &[(2, 2)]);
        if f.coeff(&head) != rat(1) || f.coeff(&z2) != rat(1) {
            return None;
        }
        let g = f
            .sub(&Poly::monomial(4, &head, rat(1)).expect("valid"))
            .sub(&Poly::monomial(4, &z2, rat(1)).expect("valid"));
        if !g.support_vars().iter().all(|i| allowed.contains(i)) {
            return None;
        }
        Some((!g.is_zero(), g.order_at_origin().unwrap_or(i64::MAX)))
    };
    let a = try_shape(exps(4, &[(0, 1), (1, 1)]), &[3]);
    let b = try_shape(exps(4, &[(0, 2)]), &[1, 3]);
    match (a, b) {
        (Some((nz, ord)), _) => {
            rep.push("shape x*y+z^2+g(u)", true, String::new());
            rep.push("g is nonzero", nz, String::new());
            rep.push("g in m^3", ord >= 3, format!("order {ord}"));
        }
        (None, Some((nz, ord))) => {
            rep.push("shape x^2+z^2+g(y,u)", true, String::new());
            rep.push("g is nonzero", nz, String::new());
            rep.push("g in m^3", ord >= 3, format!("order {ord}"));
        }
        (None, None) => {
            rep.push(
                "shape x*y+z^2+g(u) or x^2+z^2+g(y,u)",
                false,
                "neither skeleton matches",
            );
        }
    }
}

fn validate_cax2(m: &SingularityModel, rep: &mut ValidationReport) {
    rep.push("ambient 1/2(0,1,1,1)", m.ambient == QuotientAction::new(2, &[0, 1, 1, 1]).expect("valid"), m.ambient.to_string());
    let f = &m.equations[0];
    let xy = exps(4, &[(0, 1), (1, 1)]);
    rep.push("term x*y with coefficient 1", f.coeff(&xy) == rat(1), String::new());
    let g = f.sub(&Poly::monomial(4, &xy, rat(1)).expect("valid"));
    let support_ok = g.support_vars().iter().all(|&i| i == 2 || i == 3);
    rep.push("g involves only z and u", support_ok, String::new());
    rep.push("g is nonzero", !g.is_zero(), String::new());
    let ord = g.order_at_origin().unwrap_or(i64::MAX);
    rep.push("g in m^4", ord >= 4, format!("order {ord}"));
}

/// Split off the terms of `f` matching `pred` on exponent vectors.
fn extract(f: &Poly, pred: impl Fn(&[i64]) -> bool) -> (Poly, Poly) {
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

fn validate_cd3(m: &SingularityModel, rep: &mut ValidationReport) {
    rep.push("ambient 1/3(0,2,1,1)", m.ambient == QuotientAction::new(3, &[0, 2, 1, 1]).expect("valid"), m.ambient.to_string());
    let f = &m.equations[0];
    let literal = parse_poly("x^2+y^3+z^3+u^3", &["x", "y", "z", "u"]).expect("valid");
    if *f == literal {
        rep.push("shape x^2+y^3+z^3+u^3", true, String::new());
        return;
    }
    // shapes 2/3: x^2+y^3+{z^2*u | z^3}+y*g(z,u)+h(z,u), g in m^4, h in m^6
    for (head, label) in [
        (exps(4, &[(2, 2), (3, 1)]), "x^2+y^3+z^2*u+y*g+h"),
        (exps(4, &[(2, 3)]), "x^2+y^3+z^3+y*g+h"),
    ] {
        let x2 = exps(4, &[(0, 2)]);
        let y3 = exps(4, &[(1, 3)]);
        if f.coeff(&x2) != rat(1) || f.coeff(&y3) != rat(1) || f.coeff(&head) != rat(1) {
            continue;
        }
        let rest = f
            .sub(&Poly::monomial(4, &x2, rat(1)).expect("valid"))
            .sub(&Poly::monomial(4, &y3, rat(1)).expect("valid"))
            .sub(&Poly::monomial(4, &head, rat(1)).expect("valid"));
        let (bad, rest) = extract(&rest, |e| e[0] > 0 || e[1] > 1);
        if !bad.is_zero() {
            continue;
        }
        let (yg, h) = extract(&rest, |e| e[1] == 1);
        let g = yg.divide_by_monomial(&exps(4, &[(1, 1)])).expect("y-divisible");
        rep.push(format!("shape {label}"), true, String::new());
        let gord = g.order_at_origin().unwrap_or(i64::MAX);
        rep.push("g in m^4", g.is_zero() || gord >= 4, format!("order {gord}"));
        let hord = h.order_at_origin().unwrap_or(i64::MAX);
        rep.push("h in m^6", h.is_zero() || hord >= 6, format!("order {hord}"));
        return;
    }
    rep.push("recognized template shape", false, "no skeleton matches");
}

fn validate_cd2(m: &SingularityModel, rep: &mut ValidationReport) {
    rep.push("ambient 1/2(1,0,1,1)", m.ambient == QuotientAction::new(2, &[1, 0, 1, 1]).expect("valid"), m.ambient.to_string());
    let f = &m.equations[0];
    let x2 = exps(4, &[(0, 2)]);
    if f.coeff(&x2) != rat(1) {
        rep.push("term x^2 with coefficient 1", false, String::new());
        return;
    }
    let rest0 = f.sub(&Poly::monomial(4, &x2, rat(1)).expect("valid"));
    let (withx, rest0) = extract(&rest0, |e| e[0] > 0);
    if !withx.is_zero() {
        rep.push("no further x terms", false, format!("{} extra", withx.num_terms()));
        return;
    }
    // shape 1: y^3 + y*z*u + g(z,u)
    let y3 = exps(4, &[(1, 3)]);
    let yzu = exps(4, &[(1, 1), (2, 1), (3, 1)]);
    let yz2 = exps(4, &[(1, 1), (2, 2)]);
    let shape1 = rest0.coeff(&y3) == rat(1) && rest0.coeff(&yzu) == rat(1);
    if shape1 {
        let g = rest0
            .sub(&Poly::monomial(4, &y3, rat(1)).expect("valid"))
            .sub(&Poly::monomial(4, &yzu, rat(1)).expect("valid"));
        if g.support_vars().iter().all(|&i| i >= 2) {
            rep.push("shape x^2+y^3+y*z*u+g(z,u)", true, String::new());
            let ord = g.order_at_origin().unwrap_or(i64::MAX);
            rep.push("g in m^4", g.is_zero() || ord >= 4, format!("order {ord}"));
            return;
        }
    }
    // shapes 2/3: y*z*u + y^n (n>=4) + g(z,u)  |  y*z^2 + y^n (n>=3) + g(z,u)
    for (head, nmin, label) in [
        (yzu.clone(), 4, "x^2+y*z*u+y^n+g(z,u)"),
        (yz2.clone(), 3, "x^2+y*z^2+y^n+g(z,u)"),
    ] {
        if rest0.coeff(&head) != rat(1) {
            continue;
        }
        let rest = rest0.sub(&Poly::monomial(4, &head, rat(1)).expect("valid"));
        let (ypure, g) = extract(&rest, |e| e[1] > 0 && e[2] == 0 && e[3] == 0);
        let (ymixed, g) = extract(&g, |e| e[1] > 0);
        if !ymixed.is_zero() {
            continue;
        }
        let yn = match ypure.leading_term() {
            Some((e, c)) if ypure.num_terms() == 1 && c == rat(1) => e[1],
            _ => continue,
        };
        if !g.support_vars().iter().all(|&i| i >= 2) {
            continue;
        }
        rep.push(format!("shape {label}"), true, String::new());
        rep.push(format!("n >= {nmin}"), yn >= nmin, format!("n={yn}"));
        let ord = g.order_at_origin().unwrap_or(i64::MAX);
        rep.push("g in m^4", g.is_zero() || ord >= 4, format!("order {ord}"));
        return;
    }
    rep.push("recognized template shape", false, "no skeleton matches");
}

fn validate_ce2(m: &SingularityModel, rep: &mut ValidationReport) {
    rep.push("ambient 1/2(1,0,1,1)", m.ambient == QuotientAction::new(2, &[1, 0, 1, 1]).expect("valid"), m.ambient.to_string());
    let f = &m.equations[0];
    let x2 = exps(4, &[(0, 2)]);
    let y3 = exps(4, &[(1, 3)]);
    rep.push("term x^2 with coefficient 1", f.coeff(&x2) == rat(1), String::new());
    rep.push("term y^3 with coefficient 1", f.coeff(&y3) == rat(1), String::new());
    let rest = f
        .sub(&Poly::monomial(4, &x2, rat(1)).expect("valid"))
        .sub(&Poly::monomial(4, &y3, rat(1)).expect("valid"));
    let (bad, rest) = extract(&rest, |e| e[0] > 0 || e[1] > 1);
    rep.push("remaining terms are y*g(z,u) + h(z,u)", bad.is_zero(), String::new());
    let (yg, h) = extract(&rest, |e| e[1] == 1);
    let g = yg
        .divide_by_monomial(&exps(4, &[(1, 1)]))
        .expect("y-divisible");
    let gord = g.order_at_origin().unwrap_or(i64::MAX);
    rep.push("g in m^4", g.is_zero() || gord >= 4, format!("order {gord}"));
    let hord = h.order_at_origin().unwrap_or(i64::MAX);
    rep.push("h in m^4", h.is_zero() || hord >= 4, format!("order {hord}"));
    let h4 = h
        .terms()
        .any(|(e, _)| e.iter().sum::<i64>() == 4);
    rep.push("h_4 != 0", h4, "degree-4 part of h");
}

// ---------------------------------------------------------------------------
// classification registry
// ---------------------------------------------------------------------------

/// One row of the divisorial-contraction classification registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub id: &'static str,
    pub table: u8,
    pub source_class: SingClass,
    pub nvars: usize,
    pub equations: &'static str,
    pub action: &'static str,
    pub weight: &'static str,
    pub discrepancy: &'static str,
    pub conditions: &'static str,
    pub params: &'static [&'static str],
}

macro_rules! row {
    ($id:literal, $table:literal, $class:expr, $n:literal, $eqs:literal, $act:literal, $wt:literal, $disc:literal, $cond:literal, [$($p:literal),*]) => {
        TableEntry {
            id: $id,
            table: $table,
            source_class: $class,
            nvars: $n,
            equations: $eqs,
            action: $act,
            weight: $wt,
            discrepancy: $disc,
            conditions: $cond,
            params: &[$($p),*],
        }
    };
}

static REGISTRY: &[TableEntry] = &[
    row!("A1", 2, SingClass::CAr, 4,
        "x*y + z^(r*k) + g_{>=k*a}(z,u)", "1/r(beta,-beta,1,r)", "1/r(b,c,a,r)",
        "a/r", "b = a*beta (mod r); b+c = r*k*a", ["r", "beta", "k", "a", "b", "c"]),
    row!("A2", 2, SingClass::CAr, 4,
        "x^2 - y^2 + z^3 + x*u^2 + g_{>=6}(x,y,z,u)", "trivial", "(4,3,2,1)",
        "3", "x*z not in g", ["r"]),
    row!("Ax1", 3, SingClass::CAx4, 4,
        "x^2 + y^2 + g_{>=(2k+1)/2}(z,u)", "1/4(1,3,1,2)", "1/4(b,c,1,2)",
        "1/4", "(b,c) = (2k+1,2k+3) or (2k+3,2k+1)", ["k", "b", "c"]),
    row!("Ax2", 3, SingClass::CAx4, 4,
        "x^2 + y^2 + (lambda*x + mu*y)*p_{(2k+1)/4}(z,u) + g_{>=(2k+3)/2}(z,u)", "1/4(1,3,1,2)", "1/4(b,c,1,2)",
        "1/4", "(b,c,lambda,mu) = (2k+5,2k+3,1,0) or (2k+3,2k+5,0,1)", ["k", "b", "c", "lambda", "mu"]),
    row!("Ax3", 3, SingClass::CAx2, 4,
        "x^2 + y^2 + g_{>=k}(z,u)", "1/2(0,1,1,1)", "1/2(b,c,1,1)",
        "1/2", "(b,c) = (k,k+1) or (k+1,k)", ["k", "b", "c"]),
    row!("Ax4", 3, SingClass::CAx2, 4,
        "x^2 + y^2 + (lambda*x + mu*y)*p_{k/2}(z,u) + g_{>=k+1}(z,u)", "1/2(0,1,1,1)", "1/2(b,c,1,1)",
        "1/2", "(b,c,lambda,mu) = (k+2,k+1,1,0) or (k+1,k+2,0,1)", ["k", "b", "c", "lambda", "mu"]),
    row!("D1", 4, SingClass::CD, 4,
        "x^2 + y^2*u + lambda*y*z^k + g_{>=l}(z,u)", "trivial", "(b,b-1,1,2)",
        "1", "b = min(k-1, floor(l/2))", ["b", "k", "l", "lambda"]),
    row!("D2", 4, SingClass::CD, 4,
        "x^2 + y^2*u + lambda*y*z^k + g_{>=2l}(z,u)", "trivial", "(b,b,1,1)",
        "1", "b = min(k, l)", ["b", "k", "l", "lambda"]),
    row!("D3", 4, SingClass::CD, 5,
        "x^2 + u*t + lambda*y*z^k + g_{>=2b+2}(z,u); y^2 + p_{2b}(x,z,u) + t", "trivial", "(b+1,b,1,1,2b+1)",
        "1", "k >= b+2", ["b", "k", "lambda"]),
    row!("D4", 4, SingClass::CD, 4,
        "x^2 + y^2*u + y*h_{>=k}(z,u) + g_{>=2b+1}(x,z,u)", "trivial", "(b+1,b,1,1)",
        "1", "k >= b+1", ["b", "k"]),
    row!("D5", 4, SingClass::CD, 5,
        "x^2 + y*t + g_{>=2b}(z,u); y*u + p_b(z,u) + t", "trivial", "(b,b-1,1,1,b+1)",
        "1", "z^b in p", ["b"]),
    row!("D6", 5, SingClass::CD, 4,
        "x^2 + y^2*u + z^k + g_{>=2b+1}(x,y,z,u)", "trivial", "(b+1,b,a,1)",
        "a", "a*k = 2b+1", ["a", "b", "k"]),
    row!("D7", 5, SingClass::CD, 5,
        "x^2 + y*t + g_{>=2b+2}(y,z,u); y*u + z^k + p_{b+1}(z,u) + t", "trivial", "(b+1,b,a,1,b+2)",
        "a", "a*k = b+1", ["a", "b", "k"]),
    row!("D8", 5, SingClass::CD, 5,
        "x^2 + u*t + lambda*z^((b+1)/4) + g_{>=b+1}(y,z,u); y^2 + mu*z^((b-1)/4) + p_{b-1}(x,z,u) + t", "trivial", "((b+1)/2,(b-1)/2,4,1,b)",
        "4", "(b+1)/4 integer, lambda=1, mu=0; or (b-1)/4 integer, mu=1, lambda=0", ["b", "lambda", "mu"]),
    row!("D9", 5, SingClass::CD, 5,
        "x^2 + u*t + z^((b+1)/2) + g_{>=b+1}(y,z,u); y^2 + p_{b-1}(x,z,u) + t", "trivial", "((b+1)/2,(b-1)/2,2,1,b)",
        "2", "", ["b"]),
    row!("D10", 5, SingClass::CD, 4,
        "x^2 + y^2*u + z^b + g_{>=2b}(y,z,u)", "trivial", "(b,b,2,1)",
        "2", "", ["b"]),
    row!("D11", 5, SingClass::CD, 4,
        "x^2 + y^2*u + y*p_3(z,u) + u^3 + g_{>=6}(z,u)", "trivial", "(3,3,1,2)",
        "2", "z^3 in p", []),
    row!("D12", 5, SingClass::CD, 4,
        "x^2 + y^2*u + z^3 + y*u^2 + g_{>=6}(y,z,u)", "trivial", "(3,4,2,1)",
        "3", "", []),
    row!("D13", 6, SingClass::CD3, 4,
        "x^2 + y^3 + g_{>=k}(y,z,u)", "1/3(0,2,1,1)", "1/3(3,2,4,1)",
        "1/3", "k=2 and (z*u^2 or z^3 in g), or k=3 and z^2*u in g", ["k"]),
    row!("D14", 6, SingClass::CD3, 4,
        "x^2 + y^3 + z^3 + g_{>=4}(y,z,u)", "1/3(0,2,1,1)", "1/3(6,5,4,1)",
        "1/3", "", []),
    row!("D15", 6, SingClass::CD2, 4,
        "x^2 + y*z*u + g_{>=2}(y,z,u)", "1/2(1,1,1,0)", "1/2(3,1,1,2)",
        "1/2", "", []),
    row!("D16", 6, SingClass::CD2, 4,
        "x^2 + y*z*u + g_{>=3}(y,z,u)", "1/2(1,1,1,0)", "1/2(3,b,c,d)",
        "1/2", "(b,c,d) = (3,1,2) or (1,1,4)", ["b", "c", "d"]),
    row!("D17", 6, SingClass::CD2, 5,
        "x^2 + y*t + g_{>=3}(z,u); z*u + y^3 + t", "1/2(1,1,1,0,1)", "1/2(3,1,1,2,5)",
        "1/2", "", []),
    row!("D18", 6, SingClass::CD2, 4,
        "x^2 + y^2*u + lambda*y*z^k + g_{>=l}(z,u)", "1/2(1,1,1,0)", "1/2(b,b-2,1,4)",
        "1/2", "b = min(k-2, ceil(l/2)-1)", ["b", "k", "l", "lambda"]),
    row!("D19", 6, SingClass::CD2, 4,
        "x^2 + y^2*u + lambda*y*z^k + g_{>=l}(z,u)", "1/2(1,1,1,0)", "1/2(b,b,1,2)",
        "1/2", "b = min(k, l)", ["b", "k", "l", "lambda"]),
    row!("D20", 6, SingClass::CD2, 5,
        "x^2 + u*t + lambda*y*z^k + g_{>=b+2}(z,u); y^2 + p_b(x,z,u) + t", "1/2(1,1,1,0,0)", "1/2(b+2,b,1,2,2b+2)",
        "1/2", "k >= b+4", ["b", "k", "lambda"]),
    row!("D21", 6, SingClass::CD2, 4,
        "x^2 + y^2*u + y*h_{>=k}(z,u) + g_{>=b+1}(x,z,u)", "1/2(1,1,1,0)", "1/2(b+2,b,1,2)",
        "1/2", "k >= b+2", ["b", "k"]),
    row!("D22", 6, SingClass::CD2, 5,
        "x^2 + y*t + g_{>=2b}(z,u); y*u + z^b + t", "1/2(1,1,1,0,1)", "1/2(b,b-2,1,2,b+2)",
        "1/2", "", ["b"]),
    row!("D23", 7, SingClass::CD2, 4,
        "x^2 + y^2*u + z^m + g_{>=b+1}(x,y,z,u)", "1/2(1,1,1,0)", "1/2(b+2,b,a,2)",
        "a/2", "m*a = 2b+2; a and b odd", ["a", "b", "m"]),
    row!("D24", 7, SingClass::CD2, 5,
        "x^2 + y*t + g_{>=b+2}(z,u); y*u + z^m + p_{b/2+1}(z,u) + t", "1/2(1,1,1,0,1)", "1/2(b+2,b,a,2,b+4)",
        "a/2", "m*a = b+2; a = b (mod 2)", ["a", "b", "m"]),
    row!("D25", 7, SingClass::CD2, 4,
        "x^2 + y^2*u + z^(4b) + g_{>=4b}(y,z,u)", "1/2(1,1,1,0)", "(2b,2b,1,1)",
        "1", "", ["b"]),
    row!("D26", 7, SingClass::CD2, 4,
        "x^2 + y*z*u + y^4 + z^b + u^c", "1/2(1,1,1,0)", "(2,1,2,1)",
        "1", "b,c >= 4; b even", ["b", "c"]),
    row!("D27", 7, SingClass::CD2, 5,
        "x^2 + u*t + y^4 + z^4; y*z + u^2 + t", "1/2(1,1,1,0,0)", "(2,1,1,1,3)",
        "1", "", []),
    row!("D28", 7, SingClass::CD2, 5,
        "x^2 + u*t + g_{>=2b+2}(y,z,u); y^2 + p_{2b}(x,z,u) + t", "1/2(1,1,1,0,0)", "(b+1,b,1,1,2b+1)",
        "1", "b odd, or b even and (x*z^(b-1) or z^(2b) in p)", ["b"]),
    row!("D29", 7, SingClass::CD2, 5,
        "x^2 + u*t + g_{>=2b+2}(y,z,u); y^2 + p_{2b}(x,z,u) + t", "1/2(1,1,1,0,0)", "(b+1,b,2,1,2b+1)",
        "2", "x*z^((b-1)/2) or z^b in p", ["b"]),
    row!("E1", 8, SingClass::CE, 4,
        "x^2 + y^3 + g_{>=4}(y,z,u)", "trivial", "(2,2,1,1)",
        "1", "d^2 g / d y^2 = 0", []),
    row!("E2", 8, SingClass::CE, 4,
        "x^2 + x*p_2(z,u) + y^3 + g_{>=5}(y,z,u)", "trivial", "(3,2,1,1)",
        "1", "", []),
    row!("E3", 8, SingClass::CE, 4,
        "x^2 + y^3 + g_{>=6}(y,z,u)", "trivial", "(3,2,2,1)",
        "1", "", []),
    row!("E4", 8, SingClass::CE, 4,
        "x^2 + y^3 + y^2*p_2(z,u) + g_{>=8}(y,z,u)", "trivial", "(4,3,2,1)",
        "1", "", []),
    row!("E5", 8, SingClass::CE, 4,
        "x^2 + x*p_4(y,z,u) + y^3 + g_{>=9}(y,z,u)", "trivial", "(5,3,2,1)",
        "1", "", []),
    row!("E6", 8, SingClass::CE, 4,
        "x^2 + y^3 + y^2*p_3(z,u) + g_{>=10}(y,z,u)", "trivial", "(5,4,2,1)",
        "1", "", []),
    row!("E7", 8, SingClass::CE, 4,
        "x^2 + y^3 + g_{>=12}(y,z,u)", "trivial", "(6,4,3,1)",
        "1", "", []),
    row!("E8", 8, SingClass::CE, 4,
        "x^2 + y^3 + y^2*p_4(z,u) + g_{>=14}(y,z,u)", "trivial", "(7,5,3,1)",
        "1", "", []),
    row!("E9", 8, SingClass::CE, 4,
        "x^2 + x*p_7(y,z,u) + y^3 + g_{>=15}(y,z,u)", "trivial", "(8,5,3,1)",
        "1", "", []),
    row!("E10", 8, SingClass::CE, 4,
        "x^2 + y^3 + g_{>=18}(y,z,u)", "trivial", "(9,6,4,1)",
        "1", "", []),
    row!("E11", 8, SingClass::CE, 4,
        "x^2 + y^3 + y^2*p_6(z,u) + g_{>=20}(y,z,u)", "trivial", "(10,7,4,1)",
        "1", "", []),
    row!("E12", 8, SingClass::CE, 4,
        "x^2 + y^3 + g_{>=24}(y,z,u)", "trivial", "(12,8,5,1)",
        "1", "", []),
    row!("E13", 8, SingClass::CE, 4,
        "x^2 + y^3 + g_{>=30}(y,z,u)", "trivial", "(15,10,6,1)",
        "1", "", []),
    row!("E14", 9, SingClass::CE, 5,
        "x^2 + y^3 + t*z + g_{>=6}(y,z,u); p_4(x,y,z,u) + t", "trivial", "(3,2,1,1,5)",
        "1", "p irreducible", []),
    row!("E15", 9, SingClass::CE, 4,
        "x^2 + x*p_2(z,u) + y^3 + g_{>=6}(x,y,z,u)", "trivial", "(4,2,1,1)",
        "1", "", []),
    row!("E16", 9, SingClass::CE, 5,
        "x^2 + y^3 + t*p_2(z,u) + g_{>=6}(y,z,u); q_3(y,z,u) + t", "trivial", "(3,2,1,1,4)",
        "1", "q irreducible", []),
    row!("E17", 9, SingClass::CE, 4,
        "x^2 + y^3 + y*z^3 + g_{>=6}(y,z,u)", "trivial", "(3,3,1,1)",
        "1", "y^2*u^2 in g", []),
    row!("E18", 9, SingClass::CE, 5,
        "x^2 + y*t + g_{>=10}(y,z,u); y^2 + p_6(y,z,u) + t", "trivial", "(5,3,2,1,7)",
        "1", "y^2 + p irreducible", []),
    row!("E19", 10, SingClass::CE, 4,
        "x^2 + (y + p_2(z,u))^3 + y*u^3 + g_{>=6}(z,u)", "trivial", "(3,3,2,1)",
        "2", "z in p", []),
    row!("E20", 10, SingClass::CE, 5,
        "x^2 + y*t + g_{>=10}(y,z,u); y^2 + p_6(z,u) + t", "trivial", "(5,3,2,2,7)",
        "2", "gcd(p_6, g_10) = 1", []),
    row!("E21", 10, SingClass::CE, 4,
        "x^2 + y^3 + u^7 + g_{>=14}(y,z,u)", "trivial", "(7,5,3,2)",
        "2", "y*z^3, z^5 or z^4*u in g", []),
    row!("E22", 10, SingClass::CE2, 4,
        "x^2 + y^3 + g_{>=3}(y,z,u)", "1/2(1,0,1,1)", "1/2(3,2,3,1)",
        "1/2", "", []),
    row!("E23", 10, SingClass::CE2, 4,
        "x^2 + y^3 + g_{>=5}(y,z,u)", "1/2(1,0,1,1)", "1/2(5,4,3,1)",
        "1/2", "", []),
    row!("E24", 10, SingClass::CE2, 4,
        "x^2 + x*p_{5/2}(y,z,u) + y^3 + g_{>=6}(y,z,u)", "1/2(1,0,1,1)", "1/2(7,4,3,1)",
        "1/2", "", []),
    row!("E25", 10, SingClass::CE2, 4,
        "x^2 + y^3 + g_{>=9}(y,z,u)", "1/2(1,0,1,1)", "1/2(9,6,5,1)",
        "1/2", "", []),
    row!("E26", 10, SingClass::CE2, 4,
        "x^2 + y^3 + z^4 + u^8 + g_{>=8}(y,z,u)", "1/2(1,0,1,1)", "(4,3,2,1)",
        "1", "", []),
];

/// All rows of the classification registry.
pub fn table_registry() -> &'static [TableEntry] {
    REGISTRY
}

/// Look up a row by its label.
pub fn lookup_entry(id: &str) -> Result<&'static TableEntry, ModelError> {
    REGISTRY
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| ModelError::UnknownRow(id.to_string()))
}

/// Serialize the registry to a JSON value (deterministic, sorted keys).
pub fn registry_json() -> serde_json::Value {
    let rows: Vec<serde_json::Value> = REGISTRY
        .iter()
        .map(|e| {
            serde_json::json!({
                "id": e.id,
                "table": e.table,
                "source_class": e.source_class.name(),
                "nvars": e.nvars,
                "equations": e.equations,
                "action": e.action,
                "weight": e.weight,
                "discrepancy": e.discrepancy,
                "conditions": e.conditions,
                "params": e.params,
            })
        })
        .collect();
    serde_json::Value::Array(rows)
}

// ---------------------------------------------------------------------------
// parameter bindings and per-row evaluation
// ---------------------------------------------------------------------------

/// Integer parameter assignments for a registry row.
pub type Bindings = BTreeMap<String, i64>;

pub fn bind(pairs: &[(&str, i64)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn need(b: &Bindings, key: &str) -> Result<i64, ModelError> {
    b.get(key)
        .copied()
        .ok_or_else(|| ModelError::UnboundParam(key.to_string()))
}

fn opt(b: &Bindings, key: &str) -> Option<i64> {
    b.get(key).copied()
}

/// The ambient action a row's source model must carry.
pub fn expected_action(entry: &TableEntry, b: &Bindings) -> Result<QuotientAction, ModelError> {
    let act = match entry.id {
        "A1" => {
            let r = need(b, "r")?;
            let beta = need(b, "beta")?;
            QuotientAction::new(r, &[beta, -beta, 1 % r.max(1), 0])?
        }
        "Ax1" | "Ax2" => QuotientAction::new(4, &[1, 3, 1, 2])?,
        "Ax3" | "Ax4" => QuotientAction::new(2, &[0, 1, 1, 1])?,
        "D13" | "D14" => QuotientAction::new(3, &[0, 2, 1, 1])?,
        "D15" | "D16" | "D18" | "D19" | "D21" | "D23" | "D25" | "D26" => {
            QuotientAction::new(2, &[1, 1, 1, 0])?
        }
        "D17" | "D22" | "D24" => QuotientAction::new(2, &[1, 1, 1, 0, 1])?,
        "D20" | "D27" | "D28" | "D29" => QuotientAction::new(2, &[1, 1, 1, 0, 0])?,
        "E22" | "E23" | "E24" | "E25" | "E26" => QuotientAction::new(2, &[1, 0, 1, 1])?,
        _ => QuotientAction::trivial(entry.nvars),
    };
    Ok(act)
}

/// The blow-up weight a row prescribes, over the ambient index.
pub fn expected_weight(entry: &TableEntry, b: &Bindings) -> Result<WeightVector, ModelError> {
    let w = match entry.id {
        "A1" => {
            let r = need(b, "r")?;
            WeightVector::new(r, &[need(b, "b")?, need(b, "c")?, need(b, "a")?, r])?
        }
        "A2" => WeightVector::new(1, &[4, 3, 2, 1])?,
        "Ax1" | "Ax2" => WeightVector::new(4, &[need(b, "b")?, need(b, "c")?, 1, 2])?,
        "Ax3" | "Ax4" => WeightVector::new(2, &[need(b, "b")?, need(b, "c")?, 1, 1])?,
        "D1" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[v, v - 1, 1, 2])?
        }
        "D2" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[v, v, 1, 1])?
        }
        "D3" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[v + 1, v, 1, 1, 2 * v + 1])?
        }
        "D4" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[v + 1, v, 1, 1])?
        }
        "D5" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[v, v - 1, 1, 1, v + 1])?
        }
        "D6" => {
            let (v, a) = (need(b, "b")?, need(b, "a")?);
            WeightVector::new(1, &[v + 1, v, a, 1])?
        }
        "D7" => {
            let (v, a) = (need(b, "b")?, need(b, "a")?);
            WeightVector::new(1, &[v + 1, v, a, 1, v + 2])?
        }
        "D8" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[(v + 1) / 2, (v - 1) / 2, 4, 1, v])?
        }
        "D9" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[(v + 1) / 2, (v - 1) / 2, 2, 1, v])?
        }
        "D10" => {
            let v = need(b, "b")?;
            WeightVector::new(1, &[v, v, 2, 1])?
        }
        "D11" => WeightVector::new(1, &[3, 3, 1, 2])?,
        "D12" => WeightVector::new(1, &[3, 4, 2, 1])?,
        "D13" => WeightVector::new(3, &[3, 2, 4, 1])?,
        "D14" => WeightVector::new(3, &[6, 5, 4, 1])?,
        "D15" => WeightVector::new(2, &[3, 1, 1, 2])?,
        "D16" => WeightVector::new(2, &[3, need(b, "b")?, need(b, "c")?, need(b, "d")?])?,
        "D17" => WeightVector::new(2, &[3, 1, 1, 2, 5])?,
        "D18" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[v, v - 2, 1, 4])?
        }
        "D19" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[v, v, 1, 2])?
        }
        "D20" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[v + 2, v, 1, 2, 2 * v + 2])?
        }
        "D21" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[v + 2, v, 1, 2])?
        }
        "D22" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[v, v - 2, 1, 2, v + 2])?
        }
        "D23" => {
            let (v, a) = (need(b, "b")?, need(b, "a")?);
            WeightVector::new(2, &[v + 2, v, a, 2])?
        }
        "D24" => {
            let (v, a) = (need(b, "b")?, need(b, "a")?);
            WeightVector::new(2, &[v + 2, v, a, 2, v + 4])?
        }
        "D25" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[4 * v, 4 * v, 2, 2])?
        }
        "D26" => WeightVector::new(2, &[4, 2, 4, 2])?,
        "D27" => WeightVector::new(2, &[4, 2, 2, 2, 6])?,
        "D28" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[2 * v + 2, 2 * v, 2, 2, 4 * v + 2])?
        }
        "D29" => {
            let v = need(b, "b")?;
            WeightVector::new(2, &[2 * v + 2, 2 * v, 4, 2, 4 * v + 2])?
        }
        "E1" => WeightVector::new(1, &[2, 2, 1, 1])?,
        "E2" => WeightVector::new(1, &[3, 2, 1, 1])?,
        "E3" => WeightVector::new(1, &[3, 2, 2, 1])?,
        "E4" => WeightVector::new(1, &[4, 3, 2, 1])?,
        "E5" => WeightVector::new(1, &[5, 3, 2, 1])?,
        "E6" => WeightVector::new(1, &[5, 4, 2, 1])?,
        "E7" => WeightVector::new(1, &[6, 4, 3, 1])?,
        "E8" => WeightVector::new(1, &[7, 5, 3, 1])?,
        "E9" => WeightVector::new(1, &[8, 5, 3, 1])?,
        "E10" => WeightVector::new(1, &[9, 6, 4, 1])?,
        "E11" => WeightVector::new(1, &[10, 7, 4, 1])?,
        "E12" => WeightVector::new(1, &[12, 8, 5, 1])?,
        "E13" => WeightVector::new(1, &[15, 10, 6, 1])?,
        "E14" => WeightVector::new(1, &[3, 2, 1, 1, 5])?,
        "E15" => WeightVector::new(1, &[4, 2, 1, 1])?,
        "E16" => WeightVector::new(1, &[3, 2, 1, 1, 4])?,
        "E17" => WeightVector::new(1, &[3, 3, 1, 1])?,
        "E18" => WeightVector::new(1, &[5, 3, 2, 1, 7])?,
        "E19" => WeightVector::new(1, &[3, 3, 2, 1])?,
        "E20" => WeightVector::new(1, &[5, 3, 2, 2, 7])?,
        "E21" => WeightVector::new(1, &[7, 5, 3, 2])?,
        "E22" => WeightVector::new(2, &[3, 2, 3, 1])?,
        "E23" => WeightVector::new(2, &[5, 4, 3, 1])?,
        "E24" => WeightVector::new(2, &[7, 4, 3, 1])?,
        "E25" => WeightVector::new(2, &[9, 6, 5, 1])?,
        "E26" => WeightVector::new(2, &[8, 6, 4, 2])?,
        other => return Err(ModelError::UnknownRow(other.to_string())),
    };
    Ok(w)
}

/// The discrepancy the row's a(X,E) column prescribes.
pub fn expected_discrepancy(entry: &TableEntry, b: &Bindings) -> Result<Rat, ModelError> {
    Ok(match entry.id {
        "A1" => ratio(need(b, "a")? as i128, need(b, "r")? as i128),
        "A2" => rat(3),
        "Ax1" | "Ax2" => ratio(1, 4),
        "Ax3" | "Ax4" => ratio(1, 2),
        "D1" | "D2" | "D3" | "D4" | "D5" => rat(1),
        "D6" | "D7" => rat(need(b, "a")? as i128),
        "D8" => rat(4),
        "D9" | "D10" | "D11" => rat(2),
        "D12" => rat(3),
        "D13" | "D14" => ratio(1, 3),
        "D15" | "D16" | "D17" | "D18" | "D19" | "D20" | "D21" | "D22" => ratio(1, 2),
        "D23" | "D24" => ratio(need(b, "a")? as i128, 2),
        "D25" | "D26" | "D27" | "D28" => rat(1),
        "D29" => rat(2),
        id if id.starts_with('E') => match id {
            "E19" | "E20" | "E21" => rat(2),
            "E22" | "E23" | "E24" | "E25" => ratio(1, 2),
            _ => rat(1),
        },
        other => return Err(ModelError::UnknownRow(other.to_string())),
    })
}

// ---------------------------------------------------------------------------
// row validation
// ---------------------------------------------------------------------------

struct Shape<'a> {
    rest: Poly,
    w: Vec<Rat>,
    rep: &'a mut ValidationReport,
}

impl<'a> Shape<'a> {
    fn new(f: &Poly, w: &WeightVector, rep: &'a mut ValidationReport) -> Self {
        Shape {
            rest: f.clone(),
            w: w.values(),
            rep,
        }
    }

    /// Remove a skeleton term, requiring an exact coefficient.
    fn take(&mut self, e: &[i64], coeff: Rat, label: &str) {
        let found = self.rest.coeff(e);
        self.rep.push(
            format!("term {label}"),
            found == coeff,
            format!("coefficient {found}, expected {coeff}"),
        );
        if found != rat(0) {
            self.rest = self
                .rest
                .sub(&Poly::monomial(self.rest.nvars(), e, found).expect("valid"));
        }
    }

    /// Split off all remaining terms matching the predicate.
    fn split(&mut self, pred: impl Fn(&[i64]) -> bool) -> Poly {
        let (yes, no) = extract(&self.rest, pred);
        self.rest = no;
        yes
    }

    fn wt(&self, e: &[i64]) -> Rat {
        e.iter()
            .zip(&self.w)
            .map(|(&x, wi)| rat(x as i128) * *wi)
            .fold(rat(0), |a, b| a + b)
    }

    /// Check a residual slot: support restricted to `allowed`, every term of
    /// weight >= `minw`.
    fn slot_min(&mut self, g: &Poly, allowed: &[usize], minw: Rat, label: &str) {
        let sup_ok = g.support_vars().iter().all(|i| allowed.contains(i));
        self.rep
            .push(format!("{label}: support"), sup_ok, format!("allowed {allowed:?}"));
        let w_ok = g.terms().all(|(e, _)| self.wt(e) >= minw);
        let got = g
            .terms()
            .map(|(e, _)| self.wt(e))
            .min()
            .map(|r| r.to_string())
            .unwrap_or_else(|| "empty".into());
        self.rep.push(
            format!("{label}: weight >= {minw}"),
            w_ok,
            format!("minimum {got}"),
        );
    }

    /// Check a residual slot: support restricted, w-homogeneous of weight `wt`.
    fn slot_homog(&mut self, g: &Poly, allowed: &[usize], wt: Rat, label: &str) {
        let sup_ok = g.support_vars().iter().all(|i| allowed.contains(i));
        self.rep
            .push(format!("{label}: support"), sup_ok, format!("allowed {allowed:?}"));
        let w_ok = g.terms().all(|(e, _)| self.wt(e) == wt);
        self.rep.push(
            format!("{label}: homogeneous of weight {wt}"),
            w_ok,
            String::new(),
        );
    }

    /// Everything must have been consumed.
    fn done(&mut self) {
        let names = ["x", "y", "z", "u", "t"];
        self.rep.push(
            "no extra terms",
            self.rest.is_zero(),
            if self.rest.is_zero() {
                String::new()
            } else {
                format!("left over: {}", self.rest.render(&names[..self.rest.nvars()]))
            },
        );
    }
}

fn has_term(g: &Poly, e: &[i64]) -> bool {
    g.coeff(e) != rat(0)
}

/// Replay a model + weight + parameter binding against a registry row:
/// (i) the equations match the row template, (ii) the side conditions hold,
/// (iii) the discrepancy formula value matches the row's column.
pub fn validate_table_entry(
    m: &SingularityModel,
    entry: &TableEntry,
    w: &WeightVector,
    b: &Bindings,
) -> Result<ValidationReport, ModelError> {
    let mut rep = ValidationReport::new(format!("row {} on {}", entry.id, m.describe()));
    // ambient action and weight templates
    let act = expected_action(entry, b)?;
    rep.push(
        "ambient action matches row",
        *m.ambient() == act,
        format!("model {}, row {}", m.ambient(), act),
    );
    let we = expected_weight(entry, b)?;
    rep.push(
        "weight matches row",
        *w == we,
        format!("given {w}, row {we}"),
    );
    rep.push(
        "variable count",
        m.nvars() == entry.nvars,
        format!("model {}, row {}", m.nvars(), entry.nvars),
    );
    if m.nvars() != entry.nvars || *w != we || *m.ambient() != act {
        return Ok(rep);
    }
    rep.push(
        "weight compatible with action",
        w.compatibility(m.ambient()).is_ok(),
        String::new(),
    );

    check_row_shape(m, entry, w, b, &mut rep)?;

    // discrepancy: sum(w_i) - sum_k w(f_k) - 1 must equal the row column
    let exp = expected_discrepancy(entry, b)?;
    let mut actual = crate::qlattice::ambient_discrepancy(w);
    for f in m.equations() {
        match f.weighted_order(w) {
            Some(o) => actual -= o,
            None => {
                rep.push("discrepancy", false, "zero equation");
                return Ok(rep);
            }
        }
    }
    rep.push(
        "discrepancy matches column",
        actual == exp,
        format!("computed {actual}, column {exp}"),
    );
    Ok(rep)
}

#[allow(clippy::too_many_lines)]
fn check_row_shape(
    m: &SingularityModel,
    entry: &TableEntry,
    w: &WeightVector,
    b: &Bindings,
    rep: &mut ValidationReport,
) -> Result<(), ModelError> {
    let n = m.nvars();
    let f = &m.equations()[0];
    let (x, y, z, u, t) = (0usize, 1usize, 2usize, 3usize, 4usize);
    match entry.id {
        "A1" => {
            let (r, beta, k, a) = (need(b, "r")?, need(b, "beta")?, need(b, "k")?, need(b, "a")?);
            let (bw, cw) = (need(b, "b")?, need(b, "c")?);
            rep.push(
                "b = a*beta (mod r)",
                (bw - a * beta).rem_euclid(r.max(1)) == 0,
                format!("b={bw}, a*beta={}", a * beta),
            );
            rep.push(
                "b + c = r*k*a",
                bw + cw == r * k * a,
                format!("{}+{} vs {}", bw, cw, r * k * a),
            );
            rep.push("gcd(a, r) = 1", num::integer::gcd(a, r) == 1, String::new());
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 1), (y, 1)]), rat(1), "x*y");
            s.take(&exps(n, &[(z, r * k)]), rat(1), "z^(r*k)");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], rat((k * a) as i128), "g");
        }
        "A2" => {
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2)]), rat(-1), "-y^2");
            s.take(&exps(n, &[(z, 3)]), rat(1), "z^3");
            s.take(&exps(n, &[(x, 1), (u, 2)]), rat(1), "x*u^2");
            let g = s.split(|_| true);
            s.slot_min(&g, &[x, y, z, u], rat(6), "g");
            rep.push("x*z not in g", !has_term(&g, &exps(n, &[(x, 1), (z, 1)])), String::new());
        }
        "Ax1" | "Ax3" => {
            let k = need(b, "k")?;
            let (bw, cw) = (need(b, "b")?, need(b, "c")?);
            let pairs_ok = if entry.id == "Ax1" {
                (bw, cw) == (2 * k + 1, 2 * k + 3) || (bw, cw) == (2 * k + 3, 2 * k + 1)
            } else {
                (bw, cw) == (k, k + 1) || (bw, cw) == (k + 1, k)
            };
            rep.push("(b,c) pair", pairs_ok, format!("({bw},{cw}), k={k}"));
            let minw = if entry.id == "Ax1" {
                ratio((2 * k + 1) as i128, 2)
            } else {
                rat(k as i128)
            };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2)]), rat(1), "y^2");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], minw, "g");
        }
        "Ax2" | "Ax4" => {
            let k = need(b, "k")?;
            let (bw, cw) = (need(b, "b")?, need(b, "c")?);
            let (lam, mu) = (need(b, "lambda")?, need(b, "mu")?);
            let tuple_ok = if entry.id == "Ax2" {
                (bw, cw, lam, mu) == (2 * k + 5, 2 * k + 3, 1, 0)
                    || (bw, cw, lam, mu) == (2 * k + 3, 2 * k + 5, 0, 1)
            } else {
                (bw, cw, lam, mu) == (k + 2, k + 1, 1, 0) || (bw, cw, lam, mu) == (k + 1, k + 2, 0, 1)
            };
            rep.push(
                "(b,c,lambda,mu) tuple",
                tuple_ok,
                format!("({bw},{cw},{lam},{mu}), k={k}"),
            );
            let (pw, minw) = if entry.id == "Ax2" {
                (ratio((2 * k + 1) as i128, 4), ratio((2 * k + 3) as i128, 2))
            } else {
                (ratio(k as i128, 2), rat((k + 1) as i128))
            };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2)]), rat(1), "y^2");
            // the mixed slot: terms divisible by the active variable
            let active = if lam == 1 { x } else { y };
            let mixed = s.split(|e| e[active] > 0);
            let p = mixed
                .divide_by_monomial(&exps(n, &[(active, 1)]))
                .unwrap_or_else(|| Poly::zero(n));
            s.slot_homog(&p, &[z, u], pw, "p");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], minw, "g");
        }
        "D1" | "D2" | "D19" | "D18" => {
            let bw = need(b, "b")?;
            let lam = opt(b, "lambda").unwrap_or(1);
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2), (u, 1)]), rat(1), "y^2*u");
            // the y-linear slot lambda*y*z^k
            let ylin = s.split(|e| e[y] == 1 && e[x] == 0);
            let kv = opt(b, "k");
            if lam != 0 {
                let k = need(b, "k")?;
                let expected = Poly::monomial(n, &exps(n, &[(y, 1), (z, k)]), rat(lam as i128))
                    .expect("valid");
                s.rep.push(
                    "term lambda*y*z^k",
                    ylin == expected,
                    format!("k={k}, lambda={lam}"),
                );
            } else {
                s.rep.push("no y-linear term (lambda=0)", ylin.is_zero(), String::new());
            }
            let g = s.split(|_| true);
            let l = need(b, "l")?;
            let gmin = if entry.id == "D2" { 2 * l } else { l };
            s.slot_min(&g, &[z, u], rat(gmin as i128), "g");
            // the defining minimum for b
            let (cond, desc) = match entry.id {
                "D1" => {
                    let m1 = kv.map(|k| k - 1).unwrap_or(i64::MAX);
                    (bw == m1.min(l.div_euclid(2)), "b = min(k-1, floor(l/2))")
                }
                "D18" => {
                    let m1 = kv.map(|k| k - 2).unwrap_or(i64::MAX);
                    (bw == m1.min((l + 1).div_euclid(2) - 1), "b = min(k-2, ceil(l/2)-1)")
                }
                _ => {
                    let m1 = kv.unwrap_or(i64::MAX);
                    (bw == m1.min(l), "b = min(k, l)")
                }
            };
            rep.push(desc, cond, format!("b={bw}"));
        }
        "D3" | "D20" => {
            let bw = need(b, "b")?;
            let lam = opt(b, "lambda").unwrap_or(1);
            let f2 = &m.equations()[1];
            let (gmin, pwt) = if entry.id == "D3" {
                (rat((2 * bw + 2) as i128), rat((2 * bw) as i128))
            } else {
                (rat((bw + 2) as i128), rat(bw as i128))
            };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(u, 1), (t, 1)]), rat(1), "u*t");
            let ylin = s.split(|e| e[y] == 1);
            if lam != 0 {
                let k = need(b, "k")?;
                let expected = Poly::monomial(n, &exps(n, &[(y, 1), (z, k)]), rat(lam as i128))
                    .expect("valid");
                s.rep.push("term lambda*y*z^k", ylin == expected, format!("k={k}"));
                let kmin = if entry.id == "D3" { bw + 2 } else { bw + 4 };
                s.rep.push(format!("k >= {kmin}"), k >= kmin, String::new());
            } else {
                s.rep.push("no y-linear term (lambda=0)", ylin.is_zero(), String::new());
            }
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], gmin, "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 2)]), rat(1), "y^2");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let p = s2.split(|_| true);
            s2.slot_homog(&p, &[x, z, u], pwt, "p");
            s2.done();
        }
        "D4" | "D21" => {
            let bw = need(b, "b")?;
            let k = need(b, "k")?;
            let (hmin, gmin, kmin) = if entry.id == "D4" {
                (rat(k as i128), rat((2 * bw + 1) as i128), bw + 1)
            } else {
                (rat(k as i128), rat((bw + 1) as i128), bw + 2)
            };
            rep.push(format!("k >= {kmin}"), k >= kmin, format!("k={k}"));
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2), (u, 1)]), rat(1), "y^2*u");
            let ylin = s.split(|e| e[y] == 1 && e[x] == 0);
            let h = ylin
                .divide_by_monomial(&exps(n, &[(y, 1)]))
                .unwrap_or_else(|| Poly::zero(n));
            s.slot_min(&h, &[z, u], hmin, "h");
            let g = s.split(|_| true);
            s.slot_min(&g, &[x, z, u], gmin, "g");
        }
        "D5" => {
            let bw = need(b, "b")?;
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (t, 1)]), rat(1), "y*t");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], rat((2 * bw) as i128), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 1), (u, 1)]), rat(1), "y*u");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let p = s2.split(|_| true);
            s2.slot_homog(&p, &[z, u], rat(bw as i128), "p");
            s2.done();
            rep.push("z^b in p", has_term(&p, &exps(n, &[(z, bw)])), String::new());
        }
        "D6" | "D23" => {
            let bw = need(b, "b")?;
            let a = need(b, "a")?;
            let (kexp, gmin) = if entry.id == "D6" {
                let k = need(b, "k")?;
                rep.push("a*k = 2b+1", a * k == 2 * bw + 1, format!("{a}*{k} vs {}", 2 * bw + 1));
                (k, rat((2 * bw + 1) as i128))
            } else {
                let mm = need(b, "m")?;
                rep.push("m*a = 2b+2", mm * a == 2 * bw + 2, format!("{mm}*{a} vs {}", 2 * bw + 2));
                rep.push("a odd and b odd", a % 2 == 1 && bw % 2 == 1, format!("a={a}, b={bw}"));
                (mm, rat((bw + 1) as i128))
            };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2), (u, 1)]), rat(1), "y^2*u");
            s.take(&exps(n, &[(z, kexp)]), rat(1), "z-power");
            let g = s.split(|_| true);
            s.slot_min(&g, &[x, y, z, u], gmin, "g");
        }
        "D7" => {
            let bw = need(b, "b")?;
            let (a, k) = (need(b, "a")?, need(b, "k")?);
            rep.push("a*k = b+1", a * k == bw + 1, format!("{a}*{k} vs {}", bw + 1));
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (t, 1)]), rat(1), "y*t");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat((2 * bw + 2) as i128), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 1), (u, 1)]), rat(1), "y*u");
            s2.take(&exps(n, &[(z, k)]), rat(1), "z^k");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let p = s2.split(|_| true);
            s2.slot_homog(&p, &[z, u], rat((bw + 1) as i128), "p");
            s2.done();
        }
        "D8" | "D9" => {
            let bw = need(b, "b")?;
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(u, 1), (t, 1)]), rat(1), "u*t");
            if entry.id == "D8" {
                let (lam, mu) = (need(b, "lambda")?, need(b, "mu")?);
                let v1 = (bw + 1) % 4 == 0 && lam == 1 && mu == 0;
                let v2 = (bw - 1) % 4 == 0 && mu == 1 && lam == 0;
                s.rep
                    .push("variant condition", v1 || v2, format!("b={bw}, lambda={lam}, mu={mu}"));
                if lam == 1 {
                    s.take(&exps(n, &[(z, (bw + 1) / 4)]), rat(1), "z^((b+1)/4)");
                }
            } else {
                s.take(&exps(n, &[(z, (bw + 1) / 2)]), rat(1), "z^((b+1)/2)");
            }
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat((bw + 1) as i128), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 2)]), rat(1), "y^2");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            if entry.id == "D8" && need(b, "mu")? == 1 {
                s2.take(&exps(n, &[(z, (bw - 1) / 4)]), rat(1), "z^((b-1)/4)");
            }
            let p = s2.split(|_| true);
            s2.slot_homog(&p, &[x, z, u], rat((bw - 1) as i128), "p");
            s2.done();
        }
        "D10" | "D25" => {
            let bw = need(b, "b")?;
            let (zexp, gmin) = if entry.id == "D10" {
                (bw, rat((2 * bw) as i128))
            } else {
                (4 * bw, rat((4 * bw) as i128))
            };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2), (u, 1)]), rat(1), "y^2*u");
            s.take(&exps(n, &[(z, zexp)]), rat(1), "z-power");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], gmin, "g");
        }
        "D11" => {
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2), (u, 1)]), rat(1), "y^2*u");
            s.take(&exps(n, &[(u, 3)]), rat(1), "u^3");
            let ylin = s.split(|e| e[y] == 1 && e[x] == 0);
            let p = ylin
                .divide_by_monomial(&exps(n, &[(y, 1)]))
                .unwrap_or_else(|| Poly::zero(n));
            s.slot_homog(&p, &[z, u], rat(3), "p");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], rat(6), "g");
            rep.push("z^3 in p", has_term(&p, &exps(n, &[(z, 3)])), String::new());
        }
        "D12" => {
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 2), (u, 1)]), rat(1), "y^2*u");
            s.take(&exps(n, &[(z, 3)]), rat(1), "z^3");
            s.take(&exps(n, &[(y, 1), (u, 2)]), rat(1), "y*u^2");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat(6), "g");
        }
        "D13" => {
            let k = need(b, "k")?;
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat(k as i128), "g");
            let witness = (k == 2
                && (has_term(&g, &exps(n, &[(z, 1), (u, 2)])) || has_term(&g, &exps(n, &[(z, 3)]))))
                || (k == 3 && has_term(&g, &exps(n, &[(z, 2), (u, 1)])));
            rep.push(
                "witness monomial for k",
                witness,
                format!("k={k}; needs z*u^2 or z^3 (k=2), z^2*u (k=3)"),
            );
        }
        "D14" => {
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            s.take(&exps(n, &[(z, 3)]), rat(1), "z^3");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat(4), "g");
        }
        "D15" | "D16" => {
            let gmin = if entry.id == "D15" { rat(2) } else { rat(3) };
            if entry.id == "D16" {
                let tuple = (need(b, "b")?, need(b, "c")?, need(b, "d")?);
                rep.push(
                    "(b,c,d) variant",
                    tuple == (3, 1, 2) || tuple == (1, 1, 4),
                    format!("{tuple:?}"),
                );
            }
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (z, 1), (u, 1)]), rat(1), "y*z*u");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], gmin, "g");
        }
        "D17" => {
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (t, 1)]), rat(1), "y*t");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], rat(3), "g");
            let expected =
                parse_poly("z*u + y^3 + t", &["x", "y", "z", "u", "t"]).expect("valid");
            rep.push("second equation z*u+y^3+t", *f2 == expected, String::new());
        }
        "D22" => {
            let bw = need(b, "b")?;
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (t, 1)]), rat(1), "y*t");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], rat((2 * bw) as i128), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 1), (u, 1)]), rat(1), "y*u");
            s2.take(&exps(n, &[(z, bw)]), rat(1), "z^b");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            s2.done();
        }
        "D24" => {
            let bw = need(b, "b")?;
            let (a, mm) = (need(b, "a")?, need(b, "m")?);
            rep.push("m*a = b+2", mm * a == bw + 2, String::new());
            rep.push("a = b (mod 2)", (a - bw) % 2 == 0, String::new());
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (t, 1)]), rat(1), "y*t");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], rat((bw + 2) as i128), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 1), (u, 1)]), rat(1), "y*u");
            s2.take(&exps(n, &[(z, mm)]), rat(1), "z^m");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let p = s2.split(|_| true);
            s2.slot_homog(&p, &[z, u], ratio((bw + 2) as i128, 2), "p");
            s2.done();
        }
        "D26" => {
            let (bw, cw) = (need(b, "b")?, need(b, "c")?);
            rep.push("b, c >= 4", bw >= 4 && cw >= 4, format!("b={bw}, c={cw}"));
            rep.push("b even", bw % 2 == 0, String::new());
            let expected = Poly::monomial(n, &exps(n, &[(x, 2)]), rat(1)).expect("valid")
                .add(&Poly::monomial(n, &exps(n, &[(y, 1), (z, 1), (u, 1)]), rat(1)).expect("valid"))
                .add(&Poly::monomial(n, &exps(n, &[(y, 4)]), rat(1)).expect("valid"))
                .add(&Poly::monomial(n, &exps(n, &[(z, bw)]), rat(1)).expect("valid"))
                .add(&Poly::monomial(n, &exps(n, &[(u, cw)]), rat(1)).expect("valid"));
            rep.push("equation x^2+y*z*u+y^4+z^b+u^c", *f == expected, String::new());
        }
        "D27" => {
            let e1 = parse_poly("x^2 + u*t + y^4 + z^4", &["x", "y", "z", "u", "t"]).expect("valid");
            let e2 = parse_poly("y*z + u^2 + t", &["x", "y", "z", "u", "t"]).expect("valid");
            rep.push("first equation", *f == e1, String::new());
            rep.push("second equation", m.equations()[1] == e2, String::new());
        }
        "D28" | "D29" => {
            let bw = need(b, "b")?;
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(u, 1), (t, 1)]), rat(1), "u*t");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat((2 * bw + 2) as i128), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 2)]), rat(1), "y^2");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let p = s2.split(|_| true);
            s2.slot_homog(&p, &[x, z, u], rat((2 * bw) as i128), "p");
            s2.done();
            if entry.id == "D28" {
                let witness = bw % 2 == 1
                    || has_term(&p, &exps(n, &[(x, 1), (z, bw - 1)]))
                    || has_term(&p, &exps(n, &[(z, 2 * bw)]));
                rep.push("b odd, or x*z^(b-1) or z^(2b) in p", witness, format!("b={bw}"));
            } else {
                let witness = (bw % 2 == 1 && has_term(&p, &exps(n, &[(x, 1), (z, (bw - 1) / 2)])))
                    || has_term(&p, &exps(n, &[(z, bw)]));
                rep.push("x*z^((b-1)/2) or z^b in p", witness, format!("b={bw}"));
            }
        }
        // cE family: x^2 [+ x*p | + y^2*p] + y^3 + g
        "E1" | "E3" | "E7" | "E10" | "E12" | "E13" | "E17" | "E21" | "E22" | "E23" | "E25" => {
            let gmin = match entry.id {
                "E1" => rat(4),
                "E3" => rat(6),
                "E7" => rat(12),
                "E10" => rat(18),
                "E12" => rat(24),
                "E13" => rat(30),
                "E17" => rat(6),
                "E21" => rat(14),
                "E22" => rat(3),
                "E23" => rat(5),
                _ => rat(9),
            };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            if entry.id == "E17" {
                s.take(&exps(n, &[(y, 1), (z, 3)]), rat(1), "y*z^3");
            }
            if entry.id == "E21" {
                s.take(&exps(n, &[(u, 7)]), rat(1), "u^7");
            }
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], gmin, "g");
            match entry.id {
                "E1" => {
                    let no_y2 = g.terms().all(|(e, _)| e[y] <= 1);
                    rep.push("d^2 g/d y^2 = 0", no_y2, String::new());
                }
                "E17" => {
                    rep.push("y^2*u^2 in g", has_term(&g, &exps(n, &[(y, 2), (u, 2)])), String::new());
                }
                "E21" => {
                    let wit = has_term(&g, &exps(n, &[(y, 1), (z, 3)]))
                        || has_term(&g, &exps(n, &[(z, 5)]))
                        || has_term(&g, &exps(n, &[(z, 4), (u, 1)]));
                    rep.push("y*z^3, z^5 or z^4*u in g", wit, String::new());
                }
                _ => {}
            }
        }
        "E2" | "E5" | "E9" | "E15" | "E24" => {
            let (pwt, gmin, pvars): (Rat, Rat, &[usize]) = match entry.id {
                "E2" => (rat(2), rat(5), &[z, u]),
                "E5" => (rat(4), rat(9), &[y, z, u]),
                "E9" => (rat(7), rat(15), &[y, z, u]),
                "E15" => (rat(2), rat(6), &[z, u]),
                _ => (ratio(5, 2), rat(6), &[y, z, u]),
            };
            let gvars: &[usize] = if entry.id == "E15" { &[x, y, z, u] } else { &[y, z, u] };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            let xlin = s.split(|e| e[x] == 1);
            let p = xlin
                .divide_by_monomial(&exps(n, &[(x, 1)]))
                .unwrap_or_else(|| Poly::zero(n));
            s.slot_homog(&p, pvars, pwt, "p");
            let g = s.split(|_| true);
            s.slot_min(&g, gvars, gmin, "g");
        }
        "E4" | "E6" | "E8" | "E11" => {
            let (pwt, gmin) = match entry.id {
                "E4" => (rat(2), rat(8)),
                "E6" => (rat(3), rat(10)),
                "E8" => (rat(4), rat(14)),
                _ => (rat(6), rat(20)),
            };
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            let y2part = s.split(|e| e[y] == 2);
            let p = y2part
                .divide_by_monomial(&exps(n, &[(y, 2)]))
                .unwrap_or_else(|| Poly::zero(n));
            s.slot_homog(&p, &[z, u], pwt, "p");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], gmin, "g");
        }
        "E14" => {
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            s.take(&exps(n, &[(t, 1), (z, 1)]), rat(1), "t*z");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat(6), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let p = s2.split(|_| true);
            s2.slot_homog(&p, &[x, y, z, u], rat(4), "p");
            s2.done();
            rep.push(
                "p irreducible (accepted as declared; not certified)",
                true,
                String::new(),
            );
        }
        "E16" => {
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            let tlin = s.split(|e| e[t] == 1);
            let p = tlin
                .divide_by_monomial(&exps(n, &[(t, 1)]))
                .unwrap_or_else(|| Poly::zero(n));
            s.slot_homog(&p, &[z, u], rat(2), "p");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat(6), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let q = s2.split(|_| true);
            s2.slot_homog(&q, &[y, z, u], rat(3), "q");
            s2.done();
            rep.push(
                "q irreducible (accepted as declared; not certified)",
                true,
                String::new(),
            );
        }
        "E18" | "E20" => {
            let f2 = &m.equations()[1];
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (t, 1)]), rat(1), "y*t");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat(10), "g");
            let mut s2 = Shape::new(f2, w, rep);
            s2.take(&exps(n, &[(y, 2)]), rat(1), "y^2");
            s2.take(&exps(n, &[(t, 1)]), rat(1), "t");
            let p = s2.split(|_| true);
            let pvars: &[usize] = if entry.id == "E18" { &[y, z, u] } else { &[z, u] };
            s2.slot_homog(&p, pvars, rat(6), "p");
            s2.done();
            if entry.id == "E18" {
                rep.push(
                    "y^2 + p irreducible (accepted as declared; not certified)",
                    true,
                    String::new(),
                );
            } else {
                // gcd(p_6, g_10) = 1: p is (z,u)-only; take the weight-10 part of g
                let g10 = g.weighted_leading_form(&w.values());
                let g10 = if g.weighted_order(w) == Some(rat(10)) {
                    g10
                } else {
                    Poly::zero(n)
                };
                let mut coprime = true;
                if !p.is_zero() && !g10.is_zero() {
                    // split g10 into y-coefficient slices and gcd each with p
                    let maxy = g10.terms().map(|(e, _)| e[y]).max().unwrap_or(0);
                    for ydeg in 0..=maxy {
                        let (slice, _) = extract(&g10, |e| e[y] == ydeg);
                        if slice.is_zero() {
                            continue;
                        }
                        let slice = slice
                            .divide_by_monomial(&exps(n, &[(y, ydeg)]))
                            .expect("y-divisible");
                        if let Ok(h) = gcd_bivariate(&p, &slice, z, u) {
                            if h.total_degree().unwrap_or(0) > 0 {
                                coprime = false;
                            }
                        }
                    }
                }
                rep.push("gcd(p_6, g_10) = 1", coprime, String::new());
            }
        }
        "E19" => {
            // reconstruct p from the y^2-part: (y+p)^3 contributes 3*y^2*p
            let y2part = extract(f, |e| e[y] == 2).0;
            let p = y2part
                .divide_by_monomial(&exps(n, &[(y, 2)]))
                .unwrap_or_else(|| Poly::zero(n))
                .scale(ratio(1, 3));
            let mut s = Shape::new(f, w, rep);
            s.slot_homog(&p, &[z, u], rat(2), "p");
            rep.push("z in p", has_term(&p, &exps(n, &[(z, 1)])), String::new());
            let ypoly = Poly::var(n, y).expect("valid").add(&p);
            let cube = ypoly.pow(3);
            let mut s = Shape::new(&f.sub(&cube), w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 1), (u, 3)]), rat(1), "y*u^3");
            let g = s.split(|_| true);
            s.slot_min(&g, &[z, u], rat(6), "g");
        }
        "E26" => {
            let mut s = Shape::new(f, w, rep);
            s.take(&exps(n, &[(x, 2)]), rat(1), "x^2");
            s.take(&exps(n, &[(y, 3)]), rat(1), "y^3");
            s.take(&exps(n, &[(z, 4)]), rat(1), "z^4");
            s.take(&exps(n, &[(u, 8)]), rat(1), "u^8");
            let g = s.split(|_| true);
            s.slot_min(&g, &[y, z, u], rat(8), "g");
        }
        other => return Err(ModelError::UnknownRow(other.to_string())),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// default row instances (for sweep replays)
// ---------------------------------------------------------------------------

/// A concrete instantiation of a registry row.
#[derive(Debug, Clone)]
pub struct RowInstance {
    pub id: &'static str,
    pub bindings: Bindings,
    pub model: SingularityModel,
    pub weight: WeightVector,
}

fn make_instance(
    id: &'static str,
    binds: &[(&str, i64)],
    r: i64,
    act: &[i64],
    eqs: &[&str],
    class: SingClass,
) -> RowInstance {
    let n = act.len();
    let names = standard_vars(n);
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let action = QuotientAction::new(r, act).expect("valid action");
    let equations: Vec<Poly> = eqs
        .iter()
        .map(|s| parse_poly(s, &name_refs).expect("valid template equation"))
        .collect();
    let model = SingularityModel::new(action, names, equations, class, BTreeMap::new())
        .expect("valid instance model");
    let bindings = bind(binds);
    let entry = lookup_entry(id).expect("known row");
    let weight = expected_weight(entry, &bindings).expect("valid weight");
    RowInstance {
        id,
        bindings,
        model,
        weight,
    }
}

/// Concrete instantiations of every registry row (at least one per row;
/// parameterized rows get a small sweep).
pub fn default_instances() -> Vec<RowInstance> {
    use SingClass::*;
    let t4 = &[0, 0, 0, 0][..];
    let t5 = &[0, 0, 0, 0, 0][..];
    let mut out = vec![
        // cA/r rows
        make_instance("A1", &[("r", 3), ("beta", 1), ("k", 2), ("a", 1), ("b", 1), ("c", 5)],
            3, &[1, 2, 1, 0], &["x*y + z^6 + u^2"], CAr),
        make_instance("A1", &[("r", 3), ("beta", 1), ("k", 2), ("a", 1), ("b", 4), ("c", 2)],
            3, &[1, 2, 1, 0], &["x*y + z^6 + u^2"], CAr),
        make_instance("A1", &[("r", 2), ("beta", 1), ("k", 1), ("a", 1), ("b", 1), ("c", 1)],
            2, &[1, 1, 1, 0], &["x*y + z^2 + u^3"], CAr),
        make_instance("A1", &[("r", 1), ("beta", 0), ("k", 2), ("a", 1), ("b", 1), ("c", 1)],
            1, t4, &["x*y + z^2 + u^3"], CAr),
        make_instance("A1", &[("r", 3), ("beta", 1), ("k", 1), ("a", 2), ("b", 2), ("c", 4)],
            3, &[1, 2, 1, 0], &["x*y + z^3 + u^2"], CAr),
        make_instance("A2", &[("r", 1)], 1, t4, &["x^2 - y^2 + z^3 + x*u^2"], CAr),
        // cAx rows
        make_instance("Ax1", &[("k", 1), ("b", 5), ("c", 3)], 4, &[1, 3, 1, 2],
            &["x^2 + y^2 + z^6 + u^3"], CAx4),
        make_instance("Ax1", &[("k", 2), ("b", 5), ("c", 7)], 4, &[1, 3, 1, 2],
            &["x^2 + y^2 + z^6*u^2 + u^5"], CAx4),
        make_instance("Ax2", &[("k", 1), ("b", 5), ("c", 7), ("lambda", 0), ("mu", 1)],
            4, &[1, 3, 1, 2], &["x^2 + y^2 + y*z*u + u^5"], CAx4),
        make_instance("Ax2", &[("k", 2), ("b", 9), ("c", 7), ("lambda", 1), ("mu", 0)],
            4, &[1, 3, 1, 2], &["x^2 + y^2 + x*z*u^2 + u^7"], CAx4),
        make_instance("Ax3", &[("k", 2), ("b", 2), ("c", 3)], 2, &[0, 1, 1, 1],
            &["x^2 + y^2 + z^4 + u^4"], CAx2),
        make_instance("Ax4", &[("k", 2), ("b", 4), ("c", 3), ("lambda", 1), ("mu", 0)],
            2, &[0, 1, 1, 1], &["x^2 + y^2 + x*z^2 + z^6 + u^6"], CAx2),
        // cD rows, discrepancy one
        make_instance("D1", &[("b", 2), ("k", 3), ("l", 4), ("lambda", 1)], 1, t4,
            &["x^2 + y^2*u + y*z^3 + z^4"], CD),
        make_instance("D2", &[("b", 2), ("k", 2), ("l", 2), ("lambda", 1)], 1, t4,
            &["x^2 + y^2*u + y*z^2 + z^4"], CD),
        make_instance("D3", &[("b", 2), ("k", 4), ("lambda", 1)], 1, t5,
            &["x^2 + u*t + y*z^4 + z^6", "y^2 + z^4 + t"], CD),
        make_instance("D4", &[("b", 2), ("k", 3)], 1, t4,
            &["x^2 + y^2*u + y*z^3 + z^5"], CD),
        make_instance("D5", &[("b", 3)], 1, t5,
            &["x^2 + y*t + z^6", "y*u + z^3 + t"], CD),
        // cD rows, discrepancy > 1
        make_instance("D6", &[("a", 3), ("b", 4), ("k", 3)], 1, t4,
            &["x^2 + y^2*u + z^3 + u^9"], CD),
        make_instance("D7", &[("a", 2), ("b", 3), ("k", 2)], 1, t5,
            &["x^2 + y*t + u^8", "y*u + z^2 + u^4 + t"], CD),
        make_instance("D8", &[("b", 7), ("lambda", 1), ("mu", 0)], 1, t5,
            &["x^2 + u*t + z^2 + u^8", "y^2 + u^6 + t"], CD),
        make_instance("D9", &[("b", 5)], 1, t5,
            &["x^2 + u*t + z^3 + u^6", "y^2 + u^4 + t"], CD),
        make_instance("D10", &[("b", 4)], 1, t4,
            &["x^2 + y^2*u + z^4 + u^8"], CD),
        make_instance("D11", &[], 1, t4,
            &["x^2 + y^2*u + y*z^3 + u^3 + z^6"], CD),
        make_instance("D12", &[], 1, t4,
            &["x^2 + y^2*u + z^3 + y*u^2 + u^6"], CD),
        // cD/3 and cD/2 rows
        make_instance("D13", &[("k", 2)], 3, &[0, 2, 1, 1],
            &["x^2 + y^3 + z*u^2"], CD3),
        make_instance("D13", &[("k", 3)], 3, &[0, 2, 1, 1],
            &["x^2 + y^3 + z^2*u"], CD3),
        make_instance("D14", &[], 3, &[0, 2, 1, 1],
            &["x^2 + y^3 + z^3 + u^12"], CD3),
        make_instance("D15", &[], 2, &[1, 1, 1, 0],
            &["x^2 + y*z*u + y^4 + z^4 + u^4"], CD2),
        make_instance("D16", &[("b", 3), ("c", 1), ("d", 2)], 2, &[1, 1, 1, 0],
            &["x^2 + y*z*u + y^4 + z^6 + u^4"], CD2),
        make_instance("D16", &[("b", 1), ("c", 1), ("d", 4)], 2, &[1, 1, 1, 0],
            &["x^2 + y*z*u + y^6 + z^6 + z^2*u^2"], CD2),
        make_instance("D17", &[], 2, &[1, 1, 1, 0, 1],
            &["x^2 + y*t + z^6", "z*u + y^3 + t"], CD2),
        make_instance("D18", &[("b", 3), ("k", 5), ("l", 8), ("lambda", 1)], 2, &[1, 1, 1, 0],
            &["x^2 + y^2*u + y*z^5 + u^4"], CD2),
        make_instance("D19", &[("b", 3), ("k", 3), ("l", 3), ("lambda", 1)], 2, &[1, 1, 1, 0],
            &["x^2 + y^2*u + y*z^3 + z^6"], CD2),
        make_instance("D20", &[("b", 1), ("k", 5), ("lambda", 1)], 2, &[1, 1, 1, 0, 0],
            &["x^2 + u*t + y*z^5 + z^6", "y^2 + z^2 + t"], CD2),
        make_instance("D21", &[("b", 3), ("k", 5)], 2, &[1, 1, 1, 0],
            &["x^2 + y^2*u + y*z^11 + z^8"], CD2),
        make_instance("D22", &[("b", 5)], 2, &[1, 1, 1, 0, 1],
            &["x^2 + y*t + z^20", "y*u + z^5 + t"], CD2),
        make_instance("D23", &[("a", 3), ("b", 5), ("m", 4)], 2, &[1, 1, 1, 0],
            &["x^2 + y^2*u + z^4 + u^6"], CD2),
        make_instance("D24", &[("a", 2), ("b", 4), ("m", 3)], 2, &[1, 1, 1, 0, 1],
            &["x^2 + y*t + z^6", "y*u + z^3 + z*u^2 + t"], CD2),
        make_instance("D25", &[("b", 1)], 2, &[1, 1, 1, 0],
            &["x^2 + y^2*u + z^4 + u^4"], CD2),
        make_instance("D26", &[("b", 4), ("c", 4)], 2, &[1, 1, 1, 0],
            &["x^2 + y*z*u + y^4 + z^4 + u^4"], CD2),
        make_instance("D27", &[], 2, &[1, 1, 1, 0, 0],
            &["x^2 + u*t + y^4 + z^4", "y*z + u^2 + t"], CD2),
        make_instance("D28", &[("b", 3)], 2, &[1, 1, 1, 0, 0],
            &["x^2 + u*t + z^8", "y^2 + z^6 + t"], CD2),
        make_instance("D29", &[("b", 3)], 2, &[1, 1, 1, 0, 0],
            &["x^2 + u*t + z^4", "y^2 + x*z + t"], CD2),
        // cE rows, discrepancy one
        make_instance("E1", &[], 1, t4, &["x^2 + y^3 + z^4 + u^4"], CE),
        make_instance("E2", &[], 1, t4, &["x^2 + x*z^2 + y^3 + u^5"], CE),
        make_instance("E3", &[], 1, t4, &["x^2 + y^3 + z^3 + u^6"], CE),
        make_instance("E4", &[], 1, t4, &["x^2 + y^3 + y^2*z + z^4 + u^8"], CE),
        make_instance("E5", &[], 1, t4, &["x^2 + x*z*u^2 + y^3 + u^9"], CE),
        make_instance("E6", &[], 1, t4, &["x^2 + y^3 + y^2*z*u + z^5"], CE),
        make_instance("E7", &[], 1, t4, &["x^2 + y^3 + z^4 + u^12"], CE),
        make_instance("E8", &[], 1, t4, &["x^2 + y^3 + y^2*z*u + u^14"], CE),
        make_instance("E9", &[], 1, t4, &["x^2 + x*z*u^4 + y^3 + u^15"], CE),
        make_instance("E10", &[], 1, t4, &["x^2 + y^3 + z^4*u^2 + u^18"], CE),
        make_instance("E11", &[], 1, t4, &["x^2 + y^3 + y^2*u^6 + z^5"], CE),
        make_instance("E12", &[], 1, t4, &["x^2 + y^3 + z^4*u^4 + u^24"], CE),
        make_instance("E13", &[], 1, t4, &["x^2 + y^3 + z^5 + u^30"], CE),
        make_instance("E14", &[], 1, t5,
            &["x^2 + y^3 + t*z + u^6", "y^2 + z^4 + u^4 + t"], CE),
        make_instance("E15", &[], 1, t4, &["x^2 + x*z^2 + y^3 + u^6"], CE),
        make_instance("E16", &[], 1, t5,
            &["x^2 + y^3 + t*z^2 + u^6", "y*z + u^3 + t"], CE),
        make_instance("E17", &[], 1, t4, &["x^2 + y^3 + y*z^3 + y^2*u^2 + u^6"], CE),
        make_instance("E18", &[], 1, t5,
            &["x^2 + y*t + z^5", "y^2 + z^3 + u^6 + t"], CE),
        // cE rows, discrepancy two
        make_instance("E19", &[], 1, t4,
            &["x^2 + (y + z)^3 + y*u^3 + u^6"], CE),
        make_instance("E20", &[], 1, t5,
            &["x^2 + y*t + z^5", "y^2 + z^3 + u^3 + t"], CE),
        make_instance("E21", &[], 1, t4, &["x^2 + y^3 + u^7 + z^4*u"], CE),
        // cE/2 rows
        make_instance("E22", &[], 2, &[1, 0, 1, 1], &["x^2 + y^3 + z*u^3 + z^4"], CE2),
        make_instance("E23", &[], 2, &[1, 0, 1, 1], &["x^2 + y^3 + z^3*u + u^10"], CE2),
        make_instance("E24", &[], 2, &[1, 0, 1, 1], &["x^2 + x*z*u^2 + y^3 + z^4"], CE2),
        make_instance("E25", &[], 2, &[1, 0, 1, 1], &["x^2 + y^3 + z^3*u^3 + u^18"], CE2),
        make_instance("E26", &[], 2, &[1, 0, 1, 1], &["x^2 + y^3 + z^4 + u^8"], CE2),
    ];
    // small extra sweep for the fully parameterized A1 row
    for (r, beta, k, a) in [(4i64, 3i64, 1i64, 1i64), (5, 2, 1, 1), (7, 1, 1, 1)] {
        let rk = r * k;
        let f = format!("x*y + z^{rk} + u^2");
        // u^2 must have weight >= ka: w(u) = 1, so need ka <= 2; here ka = 1*a
        assert!(k * a <= 2);
        for bv in 1..(r * k * a) {
            if (bv - a * beta).rem_euclid(r) != 0 {
                continue;
            }
            let cv = r * k * a - bv;
            out.push(make_instance(
                "A1",
                &[("r", r), ("beta", beta), ("k", k), ("a", a), ("b", bv), ("c", cv)],
                r,
                &[beta, r - beta, 1, 0],
                &[&f],
                SingClass::CAr,
            ));
        }
    }
    out
}
