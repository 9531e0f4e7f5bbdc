//! JSON job front end: strict schema validation, command dispatch, and
//! deterministic JSON / DOT emission.
//!
//! A job is a single JSON document:
//!
//! ```json
//! {
//!   "version": 1,
//!   "command": "depth",
//!   "model": {
//!     "ambient": {"dim": 4, "vars": ["x","y","z","u"], "index": 3, "action": [1,2,1,0]},
//!     "equations": ["x*y + z^6 + u^2"],
//!     "declared_class": "cA/r",
//!     "params": {"beta": 1}
//!   },
//!   "options": {"weight": "1/3:4,2,1,3", "format": "json", "budget": 100000}
//! }
//! ```
//!
//! Commands: `classify`, `blowup`, `wmorphisms`, `resolve`, `depth`,
//! `link`, `flop-charts`, `verify-tables`.  Unknown fields anywhere in the
//! document are rejected with a JSON-pointer path.  Output is byte-stable:
//! JSON with sorted keys and LF endings, or DOT text with stable node ids.
//!
//! Exit codes (via [`CliError::exit_code`]): 0 on success, 2 on any
//! validation failure, 3 when the search budget is exhausted.  The budget
//! resolves as: `--budget` flag, then the `BIRAT3_BUDGET` environment
//! variable, then the job's `options.budget`, then the engine default.
//! `BIRAT3_THREADS` selects the evaluation width; results never depend on
//! it.

use std::collections::BTreeMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::blowup::{
    chart_singularities, chart_vars, enumerate_w_morphisms, is_w_morphism, weighted_blowup, Chart,
    ChartSingularity, Contraction,
};
use crate::depth::{DepthEngine, DepthError, DepthOutcome, ResolutionTree, DEFAULT_BUDGET};
use crate::flopatlas::{
    build_flop, canonical_second_weight, flip_bookkeeping, v_prime, AtlasChart, QFactoriality,
};
use crate::links::{ca_link, dcp_discrepancies, kng_intersection, xi_condition};
use crate::models::{
    default_instances, lookup_entry, validate_normal_form, validate_table_entry, SingClass,
    SingularityModel, ValidationReport,
};
use crate::polyring::parse_poly;
use crate::qlattice::{QuotientAction, WeightVector};
use crate::{rat, ratio, Rat};

/// Failure of a job run, tagged with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// The document violates the job schema; `pointer` locates the offence.
    #[error("schema violation at '{pointer}': {message}")]
    Schema { pointer: String, message: String },
    /// The document is well-formed but the requested construction fails.
    #[error("{0}")]
    Domain(String),
    /// The depth search exceeded its node budget.
    #[error("search budget exhausted: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } | CliError::Domain(_) => 2,
            CliError::Budget(_) => 3,
        }
    }

    fn schema(pointer: impl Into<String>, message: impl Into<String>) -> CliError {
        CliError::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn depth_err(e: DepthError) -> CliError {
    match e {
        DepthError::Budget(n) => CliError::Budget(format!("{n} expanded nodes")),
        other => CliError::Domain(other.to_string()),
    }
}

/// Report format for tree-shaped results.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Dot,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "dot" => Ok(OutputFormat::Dot),
            other => Err(format!("unknown format {other:?}; expected \"json\" or \"dot\"")),
        }
    }
}

/// Command-line overrides; flags win over the environment, which wins over
/// the job document.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub budget: Option<usize>,
    pub format: Option<OutputFormat>,
    pub threads: Option<usize>,
}

// ---------------------------------------------------------------------------
// strict JSON walking
// ---------------------------------------------------------------------------

fn obj<'a>(v: &'a Value, ptr: &str) -> Result<&'a Map<String, Value>, CliError> {
    v.as_object()
        .ok_or_else(|| CliError::schema(ptr, "expected an object"))
}

fn check_keys(map: &Map<String, Value>, allowed: &[&str], ptr: &str) -> Result<(), CliError> {
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(CliError::schema(
                format!("{ptr}/{key}"),
                format!("unknown field; allowed fields are {allowed:?}"),
            ));
        }
    }
    Ok(())
}

fn require<'a>(
    map: &'a Map<String, Value>,
    key: &str,
    ptr: &str,
) -> Result<&'a Value, CliError> {
    map.get(key)
        .ok_or_else(|| CliError::schema(format!("{ptr}/{key}"), "missing required field"))
}

fn as_str<'a>(v: &'a Value, ptr: &str) -> Result<&'a str, CliError> {
    v.as_str()
        .ok_or_else(|| CliError::schema(ptr, "expected a string"))
}

fn as_i64(v: &Value, ptr: &str) -> Result<i64, CliError> {
    v.as_i64()
        .ok_or_else(|| CliError::schema(ptr, "expected an integer"))
}

fn as_usize(v: &Value, ptr: &str) -> Result<usize, CliError> {
    let n = as_i64(v, ptr)?;
    usize::try_from(n).map_err(|_| CliError::schema(ptr, "expected a nonnegative integer"))
}

fn as_array<'a>(v: &'a Value, ptr: &str) -> Result<&'a Vec<Value>, CliError> {
    v.as_array()
        .ok_or_else(|| CliError::schema(ptr, "expected an array"))
}

fn rat_from_json(v: &Value, ptr: &str) -> Result<Rat, CliError> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|x| rat(x as i128))
            .ok_or_else(|| CliError::schema(ptr, "expected an integer or a \"p/q\" string")),
        Value::String(s) => {
            let parse_int = |t: &str| {
                t.trim()
                    .parse::<i128>()
                    .map_err(|_| CliError::schema(ptr, format!("malformed rational {s:?}")))
            };
            match s.split_once('/') {
                Some((p, q)) => {
                    let (p, q) = (parse_int(p)?, parse_int(q)?);
                    if q == 0 {
                        return Err(CliError::schema(ptr, "zero denominator"));
                    }
                    Ok(ratio(p, q))
                }
                None => Ok(rat(parse_int(s)?)),
            }
        }
        _ => Err(CliError::schema(ptr, "expected an integer or a \"p/q\" string")),
    }
}

fn rat_to_json(x: &Rat) -> Value {
    if *x.denom() == 1 && i64::try_from(*x.numer()).is_ok() {
        json!(*x.numer() as i64)
    } else {
        json!(x.to_string())
    }
}

fn rat_string(x: &Rat) -> String {
    x.to_string()
}

// ---------------------------------------------------------------------------
// weight and model (de)serialization
// ---------------------------------------------------------------------------

/// Parse a weight from the grammar `["1/" r ":"] b1 "," b2 ...`, e.g.
/// `"1/3:4,2,1,3"` or `"1,1,1,1"`; `r` defaults to 1.
pub fn parse_weight(text: &str) -> Result<WeightVector, CliError> {
    let t = text.trim();
    let (r, rest) = match t.split_once(':') {
        Some((head, rest)) => {
            let r_text = head.trim().strip_prefix("1/").ok_or_else(|| {
                CliError::Domain(format!(
                    "malformed weight {text:?}: the index prefix must read \"1/r:\""
                ))
            })?;
            let r = r_text.trim().parse::<i64>().map_err(|_| {
                CliError::Domain(format!("malformed weight {text:?}: bad index {r_text:?}"))
            })?;
            (r, rest)
        }
        None => (1, t),
    };
    if r < 1 {
        return Err(CliError::Domain(format!(
            "malformed weight {text:?}: the index must be positive"
        )));
    }
    let entries = rest
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Domain(format!("malformed weight entry {p:?}")))
        })
        .collect::<Result<Vec<i64>, CliError>>()?;
    WeightVector::new(r, &entries).map_err(domain)
}

/// Render a weight in the grammar accepted by [`parse_weight`].
pub fn weight_string(w: &WeightVector) -> String {
    let body = w
        .entries()
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join(",");
    if w.r() == 1 {
        body
    } else {
        format!("1/{}:{}", w.r(), body)
    }
}

/// Parse a model from its JSON form (see the module docs), validating
/// strictly and reporting offences by JSON pointer.
pub fn model_from_json(v: &Value, ptr: &str) -> Result<SingularityModel, CliError> {
    let map = obj(v, ptr)?;
    check_keys(map, &["ambient", "equations", "declared_class", "params"], ptr)?;

    let amb_ptr = format!("{ptr}/ambient");
    let amb = obj(require(map, "ambient", ptr)?, &amb_ptr)?;
    check_keys(amb, &["dim", "vars", "index", "action"], &amb_ptr)?;
    let dim = as_usize(require(amb, "dim", &amb_ptr)?, &format!("{amb_ptr}/dim"))?;
    let vars_ptr = format!("{amb_ptr}/vars");
    let vars_raw = as_array(require(amb, "vars", &amb_ptr)?, &vars_ptr)?;
    let mut vars = Vec::new();
    for (i, v) in vars_raw.iter().enumerate() {
        vars.push(as_str(v, &format!("{vars_ptr}/{i}"))?.to_string());
    }
    if vars.len() != dim {
        return Err(CliError::schema(
            &vars_ptr,
            format!("expected {dim} variable names, got {}", vars.len()),
        ));
    }
    let index = as_i64(require(amb, "index", &amb_ptr)?, &format!("{amb_ptr}/index"))?;
    let act_ptr = format!("{amb_ptr}/action");
    let act_raw = as_array(require(amb, "action", &amb_ptr)?, &act_ptr)?;
    let mut action = Vec::new();
    for (i, v) in act_raw.iter().enumerate() {
        action.push(as_i64(v, &format!("{act_ptr}/{i}"))?);
    }
    if action.len() != dim {
        return Err(CliError::schema(
            &act_ptr,
            format!("expected {dim} exponents, got {}", action.len()),
        ));
    }
    let ambient = QuotientAction::new(index, &action)
        .map_err(|e| CliError::schema(&amb_ptr, e.to_string()))?;

    let eq_ptr = format!("{ptr}/equations");
    let eq_raw = as_array(require(map, "equations", ptr)?, &eq_ptr)?;
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut equations = Vec::new();
    for (i, v) in eq_raw.iter().enumerate() {
        let here = format!("{eq_ptr}/{i}");
        let src = as_str(v, &here)?;
        equations.push(parse_poly(src, &var_refs).map_err(|e| CliError::schema(&here, e.to_string()))?);
    }

    let class_ptr = format!("{ptr}/declared_class");
    let class_src = as_str(require(map, "declared_class", ptr)?, &class_ptr)?;
    let declared_class =
        SingClass::parse(class_src).map_err(|e| CliError::schema(&class_ptr, e.to_string()))?;

    let mut params = BTreeMap::new();
    if let Some(v) = map.get("params") {
        let p_ptr = format!("{ptr}/params");
        for (k, v) in obj(v, &p_ptr)? {
            params.insert(k.clone(), rat_from_json(v, &format!("{p_ptr}/{k}"))?);
        }
    }

    SingularityModel::new(ambient, vars, equations, declared_class, params)
        .map_err(|e| CliError::schema(ptr, e.to_string()))
}

/// Emit a model in the JSON form accepted by [`model_from_json`]; the two
/// functions round-trip bit-exactly.
pub fn model_to_json(m: &SingularityModel) -> Value {
    let names = m.var_names();
    json!({
        "ambient": {
            "dim": m.nvars(),
            "vars": m.vars(),
            "index": m.ambient().r(),
            "action": m.ambient().exponents(),
        },
        "equations": m.equations().iter().map(|f| f.render(&names)).collect::<Vec<_>>(),
        "declared_class": m.declared_class().name(),
        "params": m.params().iter().map(|(k, v)| (k.clone(), rat_to_json(v))).collect::<Map<_, _>>(),
    })
}

// ---------------------------------------------------------------------------
// report fragments
// ---------------------------------------------------------------------------

fn report_json(rep: &ValidationReport) -> Value {
    json!({
        "subject": rep.subject,
        "passed": rep.passed(),
        "checks": rep.checks.iter().map(|c| json!({
            "name": c.name,
            "passed": c.passed,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
    })
}

fn outcome_json(o: &DepthOutcome) -> Value {
    match o.exact_value() {
        Some(v) => json!(v),
        None => json!({"lower": o.lower(), "upper": o.upper()}),
    }
}

fn group_string(q: &QuotientAction) -> String {
    if q.is_trivial() {
        "trivial".to_string()
    } else {
        q.to_string()
    }
}

fn chart_json(chart: &Chart, n: usize) -> Value {
    let names = chart_vars(n);
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    json!({
        "label": chart.label,
        "group": group_string(&chart.quotient),
        "equations": chart.equations.iter().map(|f| f.render(&refs)).collect::<Vec<_>>(),
        "exceptional_locus": chart.exceptional_locus,
    })
}

fn singularity_json(s: &ChartSingularity) -> Value {
    json!({
        "chart": s.chart,
        "locus": s.locus,
        "model": s.model.as_ref().map(model_to_json).unwrap_or(Value::Null),
        "note": s.note,
    })
}

fn monomial_string(vars: &[String], exps: &[Rat]) -> String {
    let mut parts = Vec::new();
    for (v, e) in vars.iter().zip(exps) {
        if *e == rat(0) {
            continue;
        }
        if *e == rat(1) {
            parts.push(v.clone());
        } else {
            parts.push(format!("{v}^{e}"));
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn atlas_chart_json(chart: &AtlasChart) -> Value {
    let refs: Vec<&str> = chart.vars.iter().map(|s| s.as_str()).collect();
    json!({
        "label": chart.label,
        "group": group_string(&chart.action),
        "vars": chart.vars,
        "equation": chart.equation.render(&refs),
        "exceptional": monomial_string(&chart.vars, &chart.exceptional),
        "smooth": chart.smooth,
    })
}

fn qfact_json(q: &QFactoriality) -> Value {
    let (status, detail, witnesses) = match q {
        QFactoriality::Reducible { factors, note } => (
            "reducible",
            note.clone(),
            factors.iter().map(|f| f.render(&["z", "u"])).collect::<Vec<_>>(),
        ),
        QFactoriality::IrreducibleOverQ { certificate } => {
            ("irreducible", certificate.clone(), Vec::new())
        }
        QFactoriality::Undecided { reason } => ("undecided", reason.clone(), Vec::new()),
    };
    json!({"status": status, "detail": detail, "witnesses": witnesses})
}

// ---------------------------------------------------------------------------
// DOT emission
// ---------------------------------------------------------------------------

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Render a resolution tree as deterministic DOT text: nodes `n0, n1, ...`
/// in state order, labelled with the state and its generalised depth; edges
/// labelled with the blow-up weight and the discrepancy.
pub fn emit_dot(tree: &ResolutionTree) -> String {
    let mut out = String::from("digraph resolution {\n");
    out.push_str("  rankdir=LR;\n");
    for node in &tree.nodes {
        out.push_str(&format!(
            "  n{} [label=\"{}; gdep={}\"];\n",
            node.id,
            dot_escape(&node.label()),
            node.gdep
        ));
    }
    for edge in &tree.edges {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"w={} a={}\"];\n",
            edge.from,
            edge.to,
            dot_escape(&edge.weight.to_string()),
            edge.discrepancy
        ));
    }
    out.push_str("}\n");
    out
}

fn tree_json(tree: &ResolutionTree) -> Value {
    json!({
        "command": "resolve",
        "root": tree.root,
        "leaves": tree.leaves,
        "picard_gain": tree.picard_gain,
        "nodes": tree.nodes.iter().map(|n| json!({
            "id": n.id,
            "gdep": n.gdep,
            "label": n.label(),
            "points": n.points.iter().map(model_to_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "edges": tree.edges.iter().map(|e| json!({
            "from": e.from,
            "to": e.to,
            "blown_point": e.blown_point.describe(),
            "weight": weight_string(&e.weight),
            "discrepancy": rat_string(&e.discrepancy),
            "strict": e.strict,
            "valuations": e.valuations.as_ref()
                .map(|vs| json!(vs.iter().map(rat_string).collect::<Vec<_>>()))
                .unwrap_or(Value::Null),
        })).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// job execution
// ---------------------------------------------------------------------------

#[derive(Default)]
struct JobOptions {
    weight: Option<String>,
    format: Option<OutputFormat>,
    budget: Option<usize>,
}

fn parse_options(v: &Value) -> Result<JobOptions, CliError> {
    let ptr = "/options";
    let map = obj(v, ptr)?;
    check_keys(map, &["weight", "format", "budget"], ptr)?;
    let mut opts = JobOptions::default();
    if let Some(v) = map.get("weight") {
        opts.weight = Some(as_str(v, "/options/weight")?.to_string());
    }
    if let Some(v) = map.get("format") {
        let s = as_str(v, "/options/format")?;
        opts.format =
            Some(OutputFormat::parse(s).map_err(|e| CliError::schema("/options/format", e))?);
    }
    if let Some(v) = map.get("budget") {
        opts.budget = Some(as_usize(v, "/options/budget")?);
    }
    Ok(opts)
}

fn env_usize(name: &str) -> Result<Option<usize>, CliError> {
    match std::env::var(name) {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| CliError::Domain(format!("{name} must be a nonnegative integer"))),
        Err(_) => Ok(None),
    }
}

fn required_weight(opts: &JobOptions) -> Result<WeightVector, CliError> {
    let Some(text) = &opts.weight else {
        return Err(CliError::schema(
            "/options/weight",
            "this command requires a blow-up weight",
        ));
    };
    parse_weight(text).map_err(|e| match e {
        CliError::Domain(msg) => CliError::schema("/options/weight", msg),
        other => other,
    })
}

enum Rendered {
    Report(Value),
    Text(String),
}

/// Run a job document and return the full report text (JSON or DOT),
/// terminated by a newline.
pub fn run(input: &str, ov: &Overrides) -> Result<String, CliError> {
    let doc: Value =
        serde_json::from_str(input).map_err(|e| CliError::schema("/", format!("invalid JSON: {e}")))?;
    let top = obj(&doc, "/")?;
    check_keys(top, &["version", "command", "model", "options"], "")?;
    let version = as_i64(require(top, "version", "")?, "/version")?;
    if version != 1 {
        return Err(CliError::schema(
            "/version",
            format!("unsupported version {version}; this tool speaks version 1"),
        ));
    }
    let command = as_str(require(top, "command", "")?, "/command")?;
    let opts = match top.get("options") {
        Some(v) => parse_options(v)?,
        None => JobOptions::default(),
    };
    let budget = ov
        .budget
        .or(env_usize("BIRAT3_BUDGET")?)
        .or(opts.budget)
        .unwrap_or(DEFAULT_BUDGET);
    let format = ov.format.or(opts.format).unwrap_or(OutputFormat::Json);
    let threads = match ov.threads {
        Some(t) => t,
        None => env_usize("BIRAT3_THREADS")?.unwrap_or(1),
    };
    let model = || -> Result<SingularityModel, CliError> {
        model_from_json(require(top, "model", "")?, "/model")
    };
    let engine = || DepthEngine::new(budget).with_threads(threads.max(1));

    let rendered = match command {
        "classify" => {
            let m = model()?;
            Rendered::Report(json!({
                "command": "classify",
                "declared_class": m.declared_class().name(),
                "index": m.index(),
                "gorenstein": m.is_gorenstein(),
                "normal_form_key": m.normal_form_key(),
                "normal_form": report_json(&validate_normal_form(&m)),
                "model": model_to_json(&m),
            }))
        }
        "blowup" => {
            let m = model()?;
            let w = required_weight(&opts)?;
            let c = weighted_blowup(&m, &w).map_err(domain)?;
            Rendered::Report(blowup_json(&c))
        }
        "wmorphisms" => {
            let m = model()?;
            let wm = enumerate_w_morphisms(&m).map_err(domain)?;
            Rendered::Report(json!({
                "command": "wmorphisms",
                "complete": wm.complete,
                "note": wm.note.clone().map(Value::from).unwrap_or(Value::Null),
                "count": wm.contractions.len(),
                "entries": wm.contractions.iter().map(|c| json!({
                    "weight": weight_string(&c.weight),
                    "discrepancy": rat_string(&c.discrepancy),
                    "w_morphism": is_w_morphism(c),
                })).collect::<Vec<_>>(),
            }))
        }
        "resolve" => {
            let m = model()?;
            let tree = engine().feasible_resolution(&m).map_err(depth_err)?;
            match format {
                OutputFormat::Dot => Rendered::Text(emit_dot(&tree)),
                OutputFormat::Json => Rendered::Report(tree_json(&tree)),
            }
        }
        "depth" => {
            let m = model()?;
            let rep = engine().report(&m).map_err(depth_err)?;
            Rendered::Report(json!({
                "dep": outcome_json(&rep.dep),
                "dep_gor": outcome_json(&rep.dep_gor),
                "gdep": outcome_json(&rep.gdep),
            }))
        }
        "link" => {
            let m = model()?;
            let w = required_weight(&opts)?;
            let c = weighted_blowup(&m, &w).map_err(domain)?;
            let link = ca_link(&m, &c).map_err(domain)?;
            let (a_e, a_f) = dcp_discrepancies(&link.data);
            let kng = kng_intersection(&link.data).map_err(domain)?;
            let xi = xi_condition(&link.data).map_err(domain)?;
            let names = m.var_names();
            Rendered::Report(json!({
                "command": "link",
                "first_weight": weight_string(&link.data.first_weight),
                "second_weight": weight_string(&link.data.second_weight),
                "linked_weight": weight_string(&link.linked.weight),
                "linked_discrepancy": rat_string(&link.linked.discrepancy),
                "flop": link.flop,
                "eta4": link.eta4.render(&["x", "y", "z", "u"]),
                "m": link.data.m,
                "chart_index": link.data.chart_index,
                "duval_index": link.data.duval_index,
                "eta": link.data.eta.iter().map(|f| json!({
                    "poly": f.poly.render(&names),
                    "delta": f.delta.map(Value::from).unwrap_or(Value::Null),
                })).collect::<Vec<_>>(),
                "discrepancies": {"a_e": rat_string(&a_e), "a_f": rat_string(&a_f)},
                "intersection": rat_string(&kng),
                "xi": xi,
            }))
        }
        "flop-charts" => {
            let m = model()?;
            let w = required_weight(&opts)?;
            let c = weighted_blowup(&m, &w).map_err(domain)?;
            let link = ca_link(&m, &c).map_err(domain)?;
            let fm = build_flop(&c, &link).map_err(domain)?;
            let w2 = canonical_second_weight(&fm).map_err(domain)?;
            let atlas = v_prime(&fm, &w2).map_err(domain)?;
            let flip = flip_bookkeeping(&fm, &w2).map_err(domain)?;
            let checks = atlas.validate().map_err(domain)?;
            let charts = |list: &[AtlasChart]| {
                list.iter().map(atlas_chart_json).collect::<Vec<_>>()
            };
            Rendered::Report(json!({
                "command": "flop-charts",
                "v_equation": fm.v_equation().render(&["x", "y", "z", "u"]),
                "action": fm.action().to_string(),
                "k": fm.k(),
                "m": fm.m(),
                "second_weight": weight_string(&w2),
                "z1_charts": charts(&fm.z1_charts().map_err(domain)?),
                "z2_charts": charts(&fm.z2_charts().map_err(domain)?),
                "direct_tower": charts(&atlas.v_tower),
                "small_resolution_tower": charts(&atlas.z_tower),
                "f_prime": atlas.f_prime.render(&["z", "u"]),
                "f_second": atlas.f_second.as_ref()
                    .map(|f| Value::from(f.render(&["z", "u"])))
                    .unwrap_or(Value::Null),
                "q_factorial": qfact_json(&atlas.q_factorial_u_chart),
                "flip": {
                    "v_side": flip.v_side_indices,
                    "z_side": flip.z_side_indices,
                    "v_side_gdep": flip.v_side_gdep,
                    "z_side_gdep": flip.z_side_gdep,
                    "delta": flip.delta,
                },
                "checks": report_json(&checks),
            }))
        }
        "verify-tables" => {
            let mut rows = Vec::new();
            let mut all = true;
            for inst in default_instances() {
                let entry = lookup_entry(inst.id).map_err(domain)?;
                let rep = validate_table_entry(&inst.model, entry, &inst.weight, &inst.bindings)
                    .map_err(domain)?;
                let c = weighted_blowup(&inst.model, &inst.weight).map_err(domain)?;
                all &= rep.passed();
                rows.push(json!({
                    "id": inst.id,
                    "bindings": inst.bindings,
                    "weight": weight_string(&inst.weight),
                    "discrepancy": rat_string(&c.discrepancy),
                    "passed": rep.passed(),
                    "failures": rep.failures().iter().map(|f| f.name.clone()).collect::<Vec<_>>(),
                }));
            }
            Rendered::Report(json!({
                "command": "verify-tables",
                "passed": all,
                "total": rows.len(),
                "rows": rows,
            }))
        }
        other => {
            return Err(CliError::schema(
                "/command",
                format!(
                    "unknown command {other:?}; expected one of classify, blowup, wmorphisms, \
                     resolve, depth, link, flop-charts, verify-tables"
                ),
            ))
        }
    };

    Ok(match rendered {
        Rendered::Report(v) => {
            let mut s = serde_json::to_string_pretty(&v).expect("serializable report");
            s.push('\n');
            s
        }
        Rendered::Text(s) => s,
    })
}

fn blowup_json(c: &Contraction) -> Value {
    let n = c.target.nvars();
    json!({
        "command": "blowup",
        "target": model_to_json(&c.target),
        "weight": weight_string(&c.weight),
        "discrepancy": rat_string(&c.discrepancy),
        "w_morphism": is_w_morphism(c),
        "exceptional": c.exceptional.to_string(),
        "warnings": c.warnings,
        "charts": c.charts.iter().map(|ch| chart_json(ch, n)).collect::<Vec<_>>(),
        "singular_points": chart_singularities(c).iter().map(singularity_json).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(command: &str, model: Value, options: Value) -> String {
        json!({
            "version": 1,
            "command": command,
            "model": model,
            "options": options,
        })
        .to_string()
    }

    fn ca_model_json(index: i64, action: Vec<i64>, eq: &str) -> Value {
        json!({
            "ambient": {"dim": 4, "vars": ["x", "y", "z", "u"], "index": index, "action": action},
            "equations": [eq],
            "declared_class": "cA/r",
            "params": {},
        })
    }

    fn quotient_model_json(r: i64, action: Vec<i64>) -> Value {
        json!({
            "ambient": {"dim": 3, "vars": ["x", "y", "z"], "index": r, "action": action},
            "equations": [],
            "declared_class": "quotient",
            "params": {},
        })
    }

    fn run_ok(input: &str) -> String {
        run(input, &Overrides::default()).expect("job succeeds")
    }

    #[test]
    fn parse_weight_grammar() {
        assert_eq!(
            parse_weight("1/3:4,2,1,3").unwrap(),
            WeightVector::new(3, &[4, 2, 1, 3]).unwrap()
        );
        assert_eq!(
            parse_weight("1,1,1,1").unwrap(),
            WeightVector::new(1, &[1, 1, 1, 1]).unwrap()
        );
        assert_eq!(
            parse_weight(" 1/2 : 1 , 1 , 1 ").unwrap(),
            WeightVector::new(2, &[1, 1, 1]).unwrap()
        );
        assert!(parse_weight("1/0:1").is_err());
        assert!(parse_weight("2/3:1,1").is_err());
        assert!(parse_weight("1/3:").is_err());
        assert!(parse_weight("0,1,1").is_err());
        assert!(parse_weight("").is_err());
    }

    #[test]
    fn weight_string_round_trips() {
        for text in ["1/3:4,2,1,3", "1,1,1,1", "1/7:13,1,1,7"] {
            let w = parse_weight(text).unwrap();
            assert_eq!(weight_string(&w), text);
            assert_eq!(parse_weight(&weight_string(&w)).unwrap(), w);
        }
    }

    #[test]
    fn model_json_round_trip() {
        let v = ca_model_json(3, vec![1, 2, 1, 0], "x*y + z^6 + u^2");
        let m = model_from_json(&v, "/model").unwrap();
        let emitted = model_to_json(&m);
        let m2 = model_from_json(&emitted, "/model").unwrap();
        assert_eq!(m.ambient(), m2.ambient());
        assert_eq!(m.vars(), m2.vars());
        assert_eq!(m.equations(), m2.equations());
        assert_eq!(m.declared_class(), m2.declared_class());
        assert_eq!(m.params(), m2.params());
        assert_eq!(model_to_json(&m2), emitted);
    }

    #[test]
    fn schema_violations_carry_pointers() {
        let bad = |input: &str, want: &str| {
            match run(input, &Overrides::default()) {
                Err(CliError::Schema { pointer, .. }) => assert_eq!(pointer, want),
                other => panic!("expected schema error at {want}, got {other:?}"),
            }
        };
        bad("{", "/");
        bad(r#"{"command": "depth"}"#, "/version");
        bad(
            &json!({"version": 2, "command": "depth"}).to_string(),
            "/version",
        );
        bad(
            &json!({"version": 1, "command": "depth", "extra": 0}).to_string(),
            "/extra",
        );
        bad(
            &json!({"version": 1, "command": "orbit"}).to_string(),
            "/command",
        );
        bad(
            &json!({"version": 1, "command": "depth"}).to_string(),
            "/model",
        );
        let mut model = ca_model_json(1, vec![0, 0, 0, 0], "x*y + z^2 + u^7");
        model["ambient"]["dims"] = json!(4);
        bad(&job("depth", model, json!({})), "/model/ambient/dims");
        let model = ca_model_json(1, vec![0, 0, 0], "x*y + z^2 + u^7");
        bad(&job("depth", model, json!({})), "/model/ambient/action");
        let model = ca_model_json(1, vec![0, 0, 0, 0], "x*y + w^2");
        bad(&job("depth", model, json!({})), "/model/equations/0");
        let model = ca_model_json(1, vec![0, 0, 0, 0], "x*y + z^2 + u^7");
        bad(
            &job("blowup", model, json!({})),
            "/options/weight",
        );
    }

    #[test]
    fn depth_report_matches_contract() {
        let model = ca_model_json(1, vec![0, 0, 0, 0], "x*y + z^2 + u^7");
        let out = run_ok(&job("depth", model, json!({})));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v, json!({"dep": 0, "dep_gor": 3, "gdep": 3}));
        // Sorted keys and a trailing newline.
        assert!(out.ends_with("}\n"));
        let dep = out.find("\"dep\"").unwrap();
        let dg = out.find("\"dep_gor\"").unwrap();
        let gd = out.find("\"gdep\"").unwrap();
        assert!(dep < dg && dg < gd);
    }

    #[test]
    fn wmorphism_enumeration_through_cli() {
        let model = ca_model_json(3, vec![1, 2, 1, 0], "x*y + z^6 + u^2");
        let out = run_ok(&job("wmorphisms", model, json!({})));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["count"], json!(2));
        assert_eq!(v["complete"], json!(true));
        assert_eq!(v["entries"][0]["weight"], json!("1/3:1,5,1,3"));
        assert_eq!(v["entries"][1]["weight"], json!("1/3:4,2,1,3"));
        assert_eq!(v["entries"][0]["discrepancy"], json!("1/3"));
    }

    #[test]
    fn resolve_dot_for_quotients() {
        let out = run_ok(&job(
            "resolve",
            quotient_model_json(2, vec![1, 1, 1]),
            json!({"format": "dot"}),
        ));
        assert!(out.starts_with("digraph resolution {"));
        assert_eq!(out.matches("[label=").count(), 3); // 2 nodes + 1 edge
        assert!(out.contains("n0 -> n1"));
        assert!(out.contains("a=1/2"));
        assert!(out.contains("gdep=1"));
        assert!(out.ends_with("}\n"));

        // A longer chain: 1/3(1,2,1) resolves in two steps with
        // discrepancies 1/3 then 1/2.
        let out = run_ok(&job(
            "resolve",
            quotient_model_json(3, vec![1, 2, 1]),
            json!({"format": "dot"}),
        ));
        assert!(out.contains("n0 -> n1"));
        assert!(out.contains("n1 -> n2"));
        assert!(out.contains("a=1/3"));
        assert!(out.contains("a=1/2"));
    }

    #[test]
    fn resolve_json_round_trips_models() {
        let model = ca_model_json(1, vec![0, 0, 0, 0], "x*y + z^2 + u^7");
        let out = run_ok(&job("resolve", model, json!({})));
        let v: Value = serde_json::from_str(&out).unwrap();
        let nodes = v["nodes"].as_array().unwrap();
        assert_eq!(nodes.len(), 4);
        let mut seen = 0;
        for node in nodes {
            for point in node["points"].as_array().unwrap() {
                let m = model_from_json(point, "/model").unwrap();
                assert_eq!(&model_to_json(&m), point);
                seen += 1;
            }
        }
        assert!(seen >= 3);
        // Root edge carries the ordinary blow-up with the unit valuation.
        assert_eq!(v["edges"][0]["weight"], json!("1,1,1,1"));
        assert_eq!(v["edges"][0]["discrepancy"], json!("1"));
    }

    #[test]
    fn link_and_flop_charts_commands() {
        let model = ca_model_json(3, vec![1, 2, 1, 0], "x*y + z^6 + u^5");
        let out = run_ok(&job(
            "link",
            model.clone(),
            json!({"weight": "1/3:4,2,1,3"}),
        ));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["flop"], json!(true));
        assert_eq!(v["eta4"], json!("y"));
        assert_eq!(v["linked_weight"], json!("1/3:1,5,1,3"));
        assert_eq!(v["intersection"], json!("0"));
        assert_eq!(v["discrepancies"]["a_e"], json!("1/3"));

        let out = run_ok(&job(
            "flop-charts",
            model,
            json!({"weight": "1/3:4,2,1,3"}),
        ));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["v_equation"], json!("z^6*u+u^4+x*y"));
        assert_eq!(v["k"], json!(2));
        assert_eq!(v["m"], json!(2));
        assert_eq!(v["second_weight"], json!("1/3:4,5,1,3"));
        assert_eq!(v["direct_tower"].as_array().unwrap().len(), 4);
        assert_eq!(v["small_resolution_tower"].as_array().unwrap().len(), 5);
        assert_eq!(v["q_factorial"]["status"], json!("irreducible"));
        assert_eq!(v["checks"]["passed"], json!(true));
        assert_eq!(v["flip"]["delta"], json!(1));

        // A strictly negative pair reports a domain failure (exit 2).
        let model = ca_model_json(3, vec![1, 2, 1, 0], "x*y + z^6 + u^2");
        let err = run(
            &job("flop-charts", model, json!({"weight": "1/3:4,2,1,3"})),
            &Overrides::default(),
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Domain(_)));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn verify_tables_all_rows_pass() {
        let out = run(
            &json!({"version": 1, "command": "verify-tables"}).to_string(),
            &Overrides::default(),
        )
        .unwrap();
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], json!(true));
        assert!(v["total"].as_u64().unwrap() >= 30);
        for row in v["rows"].as_array().unwrap() {
            assert_eq!(row["passed"], json!(true), "row {}", row["id"]);
        }
    }

    #[test]
    fn budget_override_precedence() {
        let model = ca_model_json(1, vec![0, 0, 0, 0], "x*y + z^2 + u^7");
        // Generous budget in the job document, starved by the flag.
        let input = job("depth", model, json!({"budget": 100000}));
        let err = run(
            &input,
            &Overrides {
                budget: Some(1),
                ..Overrides::default()
            },
        )
        .unwrap_err();
        assert!(matches!(err, CliError::Budget(_)));
        assert_eq!(err.exit_code(), 3);
        // Without the flag the job budget applies and the run succeeds.
        run_ok(&input);
    }

    #[test]
    fn classify_reports_normal_form() {
        let model = ca_model_json(3, vec![1, 2, 1, 0], "x*y + z^6 + u^2");
        let out = run_ok(&job("classify", model, json!({})));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["declared_class"], json!("cA/r"));
        assert_eq!(v["index"], json!(3));
        assert_eq!(v["gorenstein"], json!(false));
        assert_eq!(v["normal_form"]["passed"], json!(true));
    }

    #[test]
    fn blowup_command_reports_charts() {
        let model = ca_model_json(1, vec![0, 0, 0, 0], "x*y + z^2 + u^7");
        let out = run_ok(&job("blowup", model, json!({"weight": "1,1,1,1"})));
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["discrepancy"], json!("1"));
        assert_eq!(v["w_morphism"], json!(true));
        assert_eq!(v["charts"].as_array().unwrap().len(), 4);
        let sing = v["singular_points"].as_array().unwrap();
        assert_eq!(sing.len(), 1);
        assert_eq!(sing[0]["chart"], json!("U_u"));
        let m = model_from_json(&sing[0]["model"], "/").unwrap();
        assert_eq!(m.equations()[0].render(&m.var_names()), "u^5+x*y+z^2");
    }
}
