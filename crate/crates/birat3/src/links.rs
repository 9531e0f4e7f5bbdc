//! Link predicates between divisorial contractions.
//!
//! Two divisorial contractions `Y -> X` and `Y1 -> X` over the same point are
//! *linked* when a w-morphism `Z1 -> Y` starts a relative minimal-model run
//! that terminates in a divisorial contraction `Z_k -> Y1`.  This module
//! evaluates the numerical conditions guaranteeing such a run:
//!
//! * [`xi_condition`] / [`xi_strict`] — the anti-nefness test for the
//!   canonical class on `Z1` along a witness curve, from per-coordinate
//!   weight comparisons and valuation ratios of the curve's equations;
//! * [`theta_condition`] — the test excluding that the first exceptional
//!   divisor is covered by canonically trivial curves;
//! * [`dcp_discrepancies`] — the discrepancies of both exceptional divisors;
//! * [`kng_intersection`] — the exact intersection number of the canonical
//!   class with the witness curve;
//! * [`ca_link`] — the fully explicit link between the two weighted blow-ups
//!   of a cA/r point with discrepancy 1/r, including the flop/negative flag;
//! * [`disef_check`] — the discrepancy-drop consistency check along a link.
//!
//! The witness-curve data lives in [`LinkData`]; valuations of the second
//! blow-up are derived from the composed monomial substitution, so callers
//! only supply weights, slot choices and the curve equations.

use crate::blowup::{is_w_morphism, weighted_blowup, BlowupError, Contraction};
use crate::models::{ModelError, SingClass, SingularityModel, ValidationReport};
use crate::polyring::{Poly, PolyError};
use crate::qlattice::{QError, WeightVector};
use crate::{rat, ratio, Rat};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("eta entry {0} has no delta slot assigned")]
    MissingDelta(usize),
    #[error("expected {expected} eta entries for ambient dimension {n}, got {got}")]
    EtaCount { expected: usize, got: usize, n: usize },
    #[error("malformed link data: {0}")]
    Data(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("blow-up error: {0}")]
    Blowup(#[from] BlowupError),
    #[error("model error: {0}")]
    Model(#[from] ModelError),
    #[error("polynomial error: {0}")]
    Poly(#[from] PolyError),
    #[error("lattice error: {0}")]
    Lattice(#[from] QError),
}

/// One defining equation of the witness curve, together with the slot whose
/// pure power it contains.
#[derive(Debug, Clone)]
pub struct EtaFactor {
    /// The equation, written in the coordinates downstairs (on `X`).
    pub poly: Poly,
    /// The distinguished slot `delta_j` (0-based), when assigned.
    pub delta: Option<usize>,
}

/// Numerical data of a two-step tower: a first weighted blow-up `Y -> X`
/// with weight `first_weight`, and a w-morphism `Z1 -> Y` over the origin of
/// chart `chart_index`, with weight `second_weight` written on the same
/// ambient coordinates.  `duval_index` is the slot cutting the anticanonical
/// section (its `second_weight` entry is normalized to 1), `eta` holds the
/// defining equations of the witness curve on the exceptional divisor, and
/// `m` is the residual lattice index of the chart.
#[derive(Debug, Clone)]
pub struct LinkData {
    pub first_weight: WeightVector,
    pub second_weight: WeightVector,
    pub chart_index: usize,
    pub duval_index: usize,
    pub eta: Vec<EtaFactor>,
    pub m: i64,
    /// Attestation that the witness curve is irreducible and reduced; the
    /// intersection formula assumes it and does not verify it.
    pub gamma_irreducible: bool,
}

impl LinkData {
    pub fn n(&self) -> usize {
        self.first_weight.n()
    }

    pub fn r(&self) -> i64 {
        self.first_weight.r()
    }

    pub fn r_prime(&self) -> i64 {
        self.second_weight.r()
    }

    fn a(&self, j: usize) -> i64 {
        self.first_weight.entries()[j]
    }

    fn a_prime(&self, j: usize) -> i64 {
        self.second_weight.entries()[j]
    }

    /// The first-weight entry of the anticanonical slot (the discrepancy
    /// numerator of `E`).
    pub fn duval_entry(&self) -> i64 {
        self.a(self.duval_index)
    }

    /// Structural sanity of the data.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new("link data");
        rep.push(
            "weights share the ambient dimension",
            self.second_weight.n() == self.n(),
            format!("{} vs {}", self.first_weight.n(), self.second_weight.n()),
        );
        rep.push(
            "chart slot differs from the anticanonical slot",
            self.chart_index != self.duval_index,
            format!("i = {}, duval = {}", self.chart_index, self.duval_index),
        );
        rep.push(
            "anticanonical slot of the second weight is normalized to 1",
            self.a_prime(self.duval_index) == 1,
            format!("a'_duval = {}", self.a_prime(self.duval_index)),
        );
        rep.push(
            "one eta entry per ambient variable beyond the third",
            self.eta.len() == self.n() - 3,
            format!("{} entries for n = {}", self.eta.len(), self.n()),
        );
        let mut deltas = BTreeSet::new();
        for (idx, e) in self.eta.iter().enumerate() {
            rep.push(
                format!("eta {idx} is nonzero in the ambient variables"),
                !e.poly.is_zero() && e.poly.nvars() == self.n(),
                format!("{} vars", e.poly.nvars()),
            );
            match e.delta {
                Some(d) => rep.push(
                    format!("delta {idx} is a fresh slot"),
                    d < self.n() && deltas.insert(d),
                    format!("delta = {d}"),
                ),
                None => rep.push(format!("delta {idx} assigned"), false, "missing"),
            }
        }
        rep
    }

    /// Valuation of `p` along the first exceptional divisor: the weighted
    /// order under the first weight.
    pub fn v_e(&self, p: &Poly) -> Result<Rat, LinkError> {
        p.weighted_order(&self.first_weight)
            .ok_or_else(|| LinkError::Data("zero polynomial has no valuation".to_string()))
    }

    /// Per-variable valuations along the second exceptional divisor of the
    /// *total* transform: the chart substitution sends `x_j` to
    /// `y_j * y_i^(a_j/r)` (and `x_i` to `y_i^(a_i/r)`), so
    /// `v_F(x_j) = a'_j/r' + (a_j/r)(a'_i/r')`.
    fn v_f_vars(&self) -> Vec<Rat> {
        let i = self.chart_index;
        let vfe = ratio(self.a_prime(i) as i128, self.r_prime() as i128);
        (0..self.n())
            .map(|j| {
                let pull = ratio(self.a(j) as i128, self.r() as i128) * vfe;
                if j == i {
                    pull
                } else {
                    ratio(self.a_prime(j) as i128, self.r_prime() as i128) + pull
                }
            })
            .collect()
    }

    /// Valuation of the total transform of `p` along the second exceptional
    /// divisor (monomial-wise minimum; cancellations would only increase it).
    pub fn v_f_total(&self, p: &Poly) -> Result<Rat, LinkError> {
        p.weighted_order_values(&self.v_f_vars())
            .ok_or_else(|| LinkError::Data("zero polynomial has no valuation".to_string()))
    }

    /// Valuation of the strict transform of `p` on the chart along the
    /// second exceptional divisor.
    pub fn v_f_strict(&self, p: &Poly) -> Result<Rat, LinkError> {
        let vfe = ratio(
            self.a_prime(self.chart_index) as i128,
            self.r_prime() as i128,
        );
        Ok(self.v_f_total(p)? - self.v_e(p)? * vfe)
    }

    fn eta_entry(&self, idx: usize) -> Result<&EtaFactor, LinkError> {
        self.eta.get(idx).ok_or(LinkError::EtaCount {
            expected: self.n() - 3,
            got: self.eta.len(),
            n: self.n(),
        })
    }

    /// `v_E` of the idx-th curve equation.
    pub fn v_e_eta(&self, idx: usize) -> Result<Rat, LinkError> {
        self.v_e(&self.eta_entry(idx)?.poly)
    }

    /// `v_F` of the strict transform of the idx-th curve equation.
    pub fn v_f_eta(&self, idx: usize) -> Result<Rat, LinkError> {
        self.v_f_strict(&self.eta_entry(idx)?.poly)
    }

    /// Whether the strict transform of the idx-th equation on the chart
    /// contains a pure power of the `delta` coordinate.  A monomial maps to
    /// such a pure power exactly when it is supported on the chart slot and
    /// the `delta` slot and already attains the minimal weighted order.
    fn has_chart_pure_power(&self, idx: usize) -> Result<bool, LinkError> {
        let entry = self.eta_entry(idx)?;
        let delta = entry.delta.ok_or(LinkError::MissingDelta(idx))?;
        let order = self.v_e(&entry.poly)?;
        let wv = self.first_weight.values();
        for (exps, _) in entry.poly.terms() {
            if exps[delta] < 1 {
                continue;
            }
            let supported = exps
                .iter()
                .enumerate()
                .all(|(j, e)| *e == 0 || j == delta || j == self.chart_index);
            if !supported {
                continue;
            }
            let w: Rat = exps
                .iter()
                .zip(&wv)
                .map(|(e, v)| rat(*e as i128) * *v)
                .sum();
            if w == order {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The slots exempt from the per-coordinate comparison: the chart slot,
    /// the anticanonical slot and every `delta` slot.
    fn exempt_slots(&self) -> Result<BTreeSet<usize>, LinkError> {
        let mut s = BTreeSet::new();
        s.insert(self.chart_index);
        s.insert(self.duval_index);
        for (idx, e) in self.eta.iter().enumerate() {
            s.insert(e.delta.ok_or(LinkError::MissingDelta(idx))?);
        }
        Ok(s)
    }
}

/// The anti-nefness condition: every curve equation carries a pure power of
/// a fresh slot, and on every remaining slot the weight comparison
/// `a_3 * a'_j >= a_j` holds.
pub fn xi_condition(d: &LinkData) -> Result<bool, LinkError> {
    let mut deltas = BTreeSet::new();
    for (idx, e) in d.eta.iter().enumerate() {
        let delta = e.delta.ok_or(LinkError::MissingDelta(idx))?;
        if !deltas.insert(delta) {
            return Ok(false);
        }
        if !d.has_chart_pure_power(idx)? {
            return Ok(false);
        }
    }
    let a3 = d.duval_entry();
    let exempt = d.exempt_slots()?;
    for j in 0..d.n() {
        if exempt.contains(&j) {
            continue;
        }
        if a3 * d.a_prime(j) < d.a(j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The strict variant: the condition holds and the inequality is strict,
/// either on some remaining slot or as a valuation-ratio drop on some curve
/// equation.
pub fn xi_strict(d: &LinkData) -> Result<bool, LinkError> {
    if !xi_condition(d)? {
        return Ok(false);
    }
    let a3 = d.duval_entry();
    let exempt = d.exempt_slots()?;
    for j in 0..d.n() {
        if !exempt.contains(&j) && a3 * d.a_prime(j) > d.a(j) {
            return Ok(true);
        }
    }
    for (idx, e) in d.eta.iter().enumerate() {
        let delta = e.delta.ok_or(LinkError::MissingDelta(idx))?;
        let lhs = rat(d.r() as i128) * d.v_e_eta(idx)? / rat(d.a(delta) as i128);
        let rhs = rat(d.r_prime() as i128) * d.v_f_eta(idx)? / rat(d.a_prime(delta) as i128);
        if lhs > rhs {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Witness for [`theta_condition`]: either a coordinate slot or an explicit
/// function on `X`.
#[derive(Debug, Clone)]
pub enum ThetaWitness {
    Index(usize),
    Function(Poly),
}

/// The covering-family exclusion: for a slot witness `j != i` it reads
/// `a_3 * a'_j > a_j`; for a function witness `u` it reads
/// `v_E(u) < (a(E,X)/a(F,X)) * v_F(u)`.
pub fn theta_condition(d: &LinkData, witness: &ThetaWitness) -> Result<bool, LinkError> {
    match witness {
        ThetaWitness::Index(j) => {
            if *j == d.chart_index {
                return Err(LinkError::Data(
                    "slot witness must differ from the chart slot".to_string(),
                ));
            }
            if *j >= d.n() {
                return Err(LinkError::Data(format!("slot witness {j} out of range")));
            }
            Ok(d.duval_entry() * d.a_prime(*j) > d.a(*j))
        }
        ThetaWitness::Function(u) => {
            let (ae, af) = dcp_discrepancies(d);
            Ok(d.v_e(u)? < ae / af * d.v_f_total(u)?)
        }
    }
}

/// Discrepancies of the two exceptional divisors over `X`:
/// `a(E,X) = a_3/r` and `a(F,X) = (r + a_3 a'_i)/(r r')`.
pub fn dcp_discrepancies(d: &LinkData) -> (Rat, Rat) {
    let ae = ratio(d.duval_entry() as i128, d.r() as i128);
    let af = ratio(
        (d.r() + d.duval_entry() * d.a_prime(d.chart_index)) as i128,
        (d.r() * d.r_prime()) as i128,
    );
    (ae, af)
}

/// Intersection number of the canonical class of `Z1` with the witness
/// curve:
/// `-a_3^2 v_E(eta_4)...v_E(eta_n) r^(n-3) / (m a_1...a_n)
///  + a'_i v_F(eta'_4)...v_F(eta'_n) r'^(n-4) / (a'_1...a'_n)`.
pub fn kng_intersection(d: &LinkData) -> Result<Rat, LinkError> {
    let n = d.n();
    if d.eta.len() != n - 3 {
        return Err(LinkError::EtaCount {
            expected: n - 3,
            got: d.eta.len(),
            n,
        });
    }
    let mut prod_e = rat(1);
    let mut prod_f = rat(1);
    for idx in 0..d.eta.len() {
        prod_e *= d.v_e_eta(idx)?;
        prod_f *= d.v_f_eta(idx)?;
    }
    let a3 = rat(d.duval_entry() as i128);
    let r = rat(d.r() as i128);
    let rp = rat(d.r_prime() as i128);
    let prod_a: Rat = d.first_weight.entries().iter().map(|&a| rat(a as i128)).product();
    let prod_ap: Rat = d
        .second_weight
        .entries()
        .iter()
        .map(|&a| rat(a as i128))
        .product();
    let pow = |base: Rat, k: usize| -> Rat { (0..k).fold(rat(1), |acc, _| acc * base) };
    let first = a3 * a3 * prod_e * pow(r, n - 3) / (rat(d.m as i128) * prod_a);
    let second =
        rat(d.a_prime(d.chart_index) as i128) * prod_f * pow(rp, n - 4) / prod_ap;
    Ok(-first + second)
}

/// Result of [`ca_link`]: the linked contraction, the flop/negative flag
/// (`flop == true` means the connecting run is a single flop; otherwise it
/// is a genuinely negative one-step link), the restricted curve equation on
/// the first chart, and the assembled [`LinkData`] in the chart ordering.
#[derive(Debug, Clone)]
pub struct CaLink {
    pub linked: Contraction,
    pub flop: bool,
    pub eta4: Poly,
    pub data: LinkData,
}

/// Construct the link between the two discrepancy-1/r weighted blow-ups of
/// a cA/r hypersurface point.  `c` must be the blow-up of `m` with weight
/// `(1/r)(b, c, 1, r)`, `b > r`; the linked contraction has weight
/// `(1/r)(b-r, c+r, 1, r)`.  The flag is `flop` exactly when the restricted
/// curve equation on the first chart degenerates to the single coordinate
/// `y`.
pub fn ca_link(m: &SingularityModel, c: &Contraction) -> Result<CaLink, LinkError> {
    if m.declared_class() != SingClass::CAr || m.nvars() != 4 {
        return Err(LinkError::Precondition(
            "model must be a four-variable cA/r hypersurface".to_string(),
        ));
    }
    let w = &c.weight;
    let r = w.r();
    let e = w.entries();
    let (b, cc, a, ru) = (e[0], e[1], e[2], e[3]);
    if ru != r {
        return Err(LinkError::Precondition(format!(
            "fourth weight entry must equal the index: {ru} vs {r}"
        )));
    }
    if a != 1 {
        return Err(LinkError::Precondition(format!(
            "third weight entry must be 1, got {a}"
        )));
    }
    if b <= r {
        return Err(LinkError::Precondition(format!(
            "first weight entry must exceed the index: {b} <= {r}"
        )));
    }
    let k = (b + cc) / r;
    debug_assert_eq!(k * r, b + cc, "weight entries must balance to a multiple of r");

    let linked = weighted_blowup(m, &WeightVector::new(r, &[b - r, cc + r, 1, r])?)?;
    debug_assert!(is_w_morphism(&linked));

    // restricted curve equation on the first chart: the strict transform
    // with the chart slot and the anticanonical slot set to zero
    let chart = &c.charts[0];
    let f1 = &chart.equations[0];
    let eta4 = f1.set_vars_zero(&[0, 2]);
    let y_mon = Poly::monomial(4, &[0, 1, 0, 0], rat(1))?;
    let flop = eta4 == y_mon;

    // link data in the chart ordering (x, u, z, y): the first slot is the
    // chart slot, the third cuts the anticanonical section, the fourth
    // carries the curve equation's pure power
    let first_p = WeightVector::new(r, &[b, r, 1, cc])?;
    let mut eps: Option<i64> = None;
    for (exps, _) in f1.terms() {
        if exps[1] > 0 {
            continue; // the linear chart equation term itself
        }
        let v = exps[0] * (b - r) + exps[2] + exps[3] * r;
        eps = Some(eps.map_or(v, |cur: i64| cur.min(v)));
    }
    let eps = eps.ok_or_else(|| {
        LinkError::Data("chart equation degenerates to the linear term".to_string())
    })?;
    let second_p = WeightVector::new(b, &[b - r, r, 1, eps])?;
    let eta_poly = if flop {
        Poly::monomial(4, &[0, 0, 0, 1], rat(1))?
    } else {
        let cu = eta4.coeff(&[0, 0, 0, k]);
        Poly::monomial(4, &[1, 0, 0, 1], rat(1))?
            .add(&Poly::monomial(4, &[0, k, 0, 0], cu)?)
    };
    let data = LinkData {
        first_weight: first_p,
        second_weight: second_p,
        chart_index: 0,
        duval_index: 2,
        eta: vec![EtaFactor {
            poly: eta_poly,
            delta: Some(3),
        }],
        m: chart.data.m,
        gamma_irreducible: true,
    };
    debug_assert!(data.validate().passed());
    Ok(CaLink {
        linked,
        flop,
        eta4,
        data,
    })
}

/// Discrepancy-drop consistency along a link: when `a(E,X) > 1`, the second
/// contraction must have strictly smaller discrepancy.  The hypotheses on
/// the auxiliary function `u` — `v_F(u) = 1/r` and a strictly positive
/// valuation of its strict transform — are verified and violations are
/// errors.  Returns `None` when `a(E,X) <= 1` (the statement is vacuous).
pub fn disef_check(d: &LinkData, u: &Poly) -> Result<Option<bool>, LinkError> {
    let (ae, af) = dcp_discrepancies(d);
    let vfu = d.v_f_total(u)?;
    if vfu != ratio(1, d.r() as i128) {
        return Err(LinkError::Hypothesis(format!(
            "v_F(u) must equal 1/{}, got {vfu}",
            d.r()
        )));
    }
    if d.v_f_strict(u)? <= rat(0) {
        return Err(LinkError::Hypothesis(
            "the strict transform of u must vanish at the second center".to_string(),
        ));
    }
    if ae <= rat(1) {
        return Ok(None);
    }
    Ok(Some(af < ae))
}

// ---------------------------------------------------------------------------
// tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_poly;
    use crate::qlattice::QuotientAction;
    use std::collections::BTreeMap;

    fn a1_model(r: i64, beta: i64, f: &str) -> SingularityModel {
        let b = beta.rem_euclid(r.max(1));
        let act = QuotientAction::new(r, &[b, (r - b).rem_euclid(r.max(1)), 1 % r, 0]).unwrap();
        SingularityModel::hypersurface(
            act,
            parse_poly(f, &["x", "y", "z", "u"]).unwrap(),
            SingClass::CAr,
            BTreeMap::new(),
        )
        .unwrap()
    }

    fn toy_data(
        r: i64,
        a: &[i64],
        rp: i64,
        ap: &[i64],
        i: usize,
        duval: usize,
        eta: Vec<EtaFactor>,
        m: i64,
    ) -> LinkData {
        LinkData {
            first_weight: WeightVector::new(r, a).unwrap(),
            second_weight: WeightVector::new(rp, ap).unwrap(),
            chart_index: i,
            duval_index: duval,
            eta,
            m,
            gamma_irreducible: true,
        }
    }

    fn mono(n: usize, exps: &[i64]) -> Poly {
        Poly::monomial(n, exps, rat(1)).unwrap()
    }

    #[test]
    fn dcp_examples() {
        let d = toy_data(3, &[4, 3, 1, 2], 4, &[1, 3, 1, 6], 0, 2, vec![], 1);
        assert_eq!(dcp_discrepancies(&d), (ratio(1, 3), ratio(1, 3)));
        let d = toy_data(1, &[1, 1, 1, 1], 2, &[1, 1, 1, 1], 0, 2, vec![], 1);
        assert_eq!(dcp_discrepancies(&d), (rat(1), rat(1)));
        let d = toy_data(4, &[1, 1, 2, 1], 8, &[3, 1, 1, 1], 0, 2, vec![], 1);
        assert_eq!(dcp_discrepancies(&d), (ratio(1, 2), ratio(5, 16)));
    }

    #[test]
    fn xi_examples() {
        // data assembled by the cA/r link over xy + z^6 + u^2
        let m = a1_model(3, 1, "x*y + z^6 + u^2");
        let c = weighted_blowup(&m, &WeightVector::new(3, &[4, 2, 1, 3]).unwrap()).unwrap();
        let link = ca_link(&m, &c).unwrap();
        assert!(xi_condition(&link.data).unwrap());
        assert!(xi_strict(&link.data).unwrap());
        // exact equality everywhere: the condition holds but never strictly
        let d = toy_data(
            1,
            &[1, 1, 1, 1],
            1,
            &[1, 1, 1, 1],
            0,
            2,
            vec![EtaFactor {
                poly: mono(4, &[0, 0, 0, 1]),
                delta: Some(3),
            }],
            1,
        );
        assert!(xi_condition(&d).unwrap());
        assert!(!xi_strict(&d).unwrap());
        assert_eq!(kng_intersection(&d).unwrap(), rat(0));
        // duplicate delta slots fail the distinctness clause
        let d5 = toy_data(
            1,
            &[1, 1, 1, 1, 1],
            1,
            &[1, 1, 1, 1, 1],
            0,
            2,
            vec![
                EtaFactor {
                    poly: mono(5, &[0, 0, 0, 1, 0]),
                    delta: Some(3),
                },
                EtaFactor {
                    poly: mono(5, &[0, 0, 0, 1, 0]),
                    delta: Some(3),
                },
            ],
            1,
        );
        assert!(!xi_condition(&d5).unwrap());
        // a missing delta assignment is an error, not a verdict
        let d_missing = toy_data(
            1,
            &[1, 1, 1, 1],
            1,
            &[1, 1, 1, 1],
            0,
            2,
            vec![EtaFactor {
                poly: mono(4, &[0, 0, 0, 1]),
                delta: None,
            }],
            1,
        );
        assert!(matches!(
            xi_condition(&d_missing),
            Err(LinkError::MissingDelta(0))
        ));
    }

    #[test]
    fn theta_examples() {
        // cA/r link data, b = 4: the curve slot comparison is strict
        let m = a1_model(3, 1, "x*y + z^6 + u^2");
        let c = weighted_blowup(&m, &WeightVector::new(3, &[4, 2, 1, 3]).unwrap()).unwrap();
        let d = ca_link(&m, &c).unwrap().data;
        assert!(theta_condition(&d, &ThetaWitness::Index(3)).unwrap());
        // identical weights: never strict
        let flat = toy_data(1, &[1, 1, 1, 1], 1, &[1, 1, 1, 1], 0, 2, vec![], 1);
        for j in 1..4 {
            assert!(!theta_condition(&flat, &ThetaWitness::Index(j)).unwrap());
        }
        // the double-point shape x(x+p)+g in a five-variable embedding:
        // the graph slot of g outweighs the graph slot of p
        let d5 = toy_data(
            1,
            &[3, 1, 1, 2, 2],
            3,
            &[2, 1, 1, 2, 5],
            0,
            2,
            vec![],
            1,
        );
        assert!(theta_condition(&d5, &ThetaWitness::Index(4)).unwrap());
        // witness on the chart slot is rejected
        assert!(theta_condition(&d5, &ThetaWitness::Index(0)).is_err());
    }

    #[test]
    fn kng_examples() {
        // all-ones toy data: the two terms cancel exactly
        let d = toy_data(
            1,
            &[1, 1, 1, 1],
            1,
            &[1, 1, 1, 1],
            0,
            2,
            vec![EtaFactor {
                poly: mono(4, &[0, 0, 0, 1]),
                delta: Some(3),
            }],
            1,
        );
        assert_eq!(kng_intersection(&d).unwrap(), rat(0));
        // flop case: the intersection number vanishes
        let m = a1_model(3, 1, "x*y + z^6 + u^5");
        let c = weighted_blowup(&m, &WeightVector::new(3, &[4, 2, 1, 3]).unwrap()).unwrap();
        let link = ca_link(&m, &c).unwrap();
        assert!(link.flop);
        assert_eq!(kng_intersection(&link.data).unwrap(), rat(0));
        // negative case: strictly negative value -1/(r c)
        let m = a1_model(3, 1, "x*y + z^6 + u^2");
        let c = weighted_blowup(&m, &WeightVector::new(3, &[4, 2, 1, 3]).unwrap()).unwrap();
        let link = ca_link(&m, &c).unwrap();
        assert!(!link.flop);
        assert_eq!(kng_intersection(&link.data).unwrap(), ratio(-1, 6));
        // missing eta entries are an error
        let bare = toy_data(1, &[1, 1, 1, 1], 1, &[1, 1, 1, 1], 0, 2, vec![], 1);
        assert!(matches!(
            kng_intersection(&bare),
            Err(LinkError::EtaCount { .. })
        ));
    }

    #[test]
    fn ca_link_examples() {
        // negative link: the restricted curve equation keeps the u-term
        let m = a1_model(3, 1, "x*y + z^6 + u^2");
        let c = weighted_blowup(&m, &WeightVector::new(3, &[4, 2, 1, 3]).unwrap()).unwrap();
        let link = ca_link(&m, &c).unwrap();
        assert_eq!(
            link.linked.weight,
            WeightVector::new(3, &[1, 5, 1, 3]).unwrap()
        );
        assert_eq!(
            link.eta4,
            parse_poly("y + u^2", &["x", "y", "z", "u"]).unwrap()
        );
        assert!(!link.flop);
        // flop link: the u-term drops under the restriction
        let m = a1_model(3, 1, "x*y + z^6 + u^5");
        let c = weighted_blowup(&m, &WeightVector::new(3, &[4, 2, 1, 3]).unwrap()).unwrap();
        let link = ca_link(&m, &c).unwrap();
        assert_eq!(
            link.linked.weight,
            WeightVector::new(3, &[1, 5, 1, 3]).unwrap()
        );
        assert_eq!(link.eta4, parse_poly("y", &["x", "y", "z", "u"]).unwrap());
        assert!(link.flop);
        // the boundary weight b = r is rejected
        let m = a1_model(3, 0, "x*y + z^6 + u^2");
        let c = weighted_blowup(&m, &WeightVector::new(3, &[3, 3, 1, 3]).unwrap()).unwrap();
        assert!(matches!(
            ca_link(&m, &c),
            Err(LinkError::Precondition(_))
        ));
    }

    #[test]
    fn disef_examples() {
        // discrepancy 3 (the Gorenstein triple-point case): the linked
        // contraction must drop below it
        let d = toy_data(1, &[1, 1, 3, 1], 4, &[1, 1, 1, 1], 0, 2, vec![], 1);
        let u = mono(4, &[0, 0, 1, 0]);
        assert_eq!(disef_check(&d, &u).unwrap(), Some(true));
        let (ae, af) = dcp_discrepancies(&d);
        assert_eq!((ae, af), (rat(3), rat(1)));
        // discrepancy 1: the statement is vacuous
        let d = toy_data(1, &[2, 1, 1, 1], 3, &[2, 1, 1, 1], 0, 2, vec![], 1);
        let u = mono(4, &[0, 1, 0, 0]);
        assert_eq!(disef_check(&d, &u).unwrap(), None);
        // discrepancy 2 against 1/2
        let d = toy_data(1, &[1, 1, 2, 1], 6, &[1, 5, 1, 1], 0, 2, vec![], 1);
        let u = mono(4, &[0, 1, 0, 0]);
        assert_eq!(disef_check(&d, &u).unwrap(), Some(true));
        assert_eq!(dcp_discrepancies(&d).1, ratio(1, 2));
        // a witness failing the valuation hypothesis is an error
        let bad = mono(4, &[1, 0, 0, 0]);
        assert!(matches!(
            disef_check(&d, &bad),
            Err(LinkError::Hypothesis(_))
        ));
    }

    #[test]
    fn ca_link_sweep_invariants() {
        // sweep the discrepancy-1/r family: for every admissible (r, k,
        // beta, b) and both the negative and flop variants, check the
        // anti-nefness/intersection implications, the discrepancy symmetry,
        // and that applying the link twice (with the slot roles swapped)
        // returns the original weight
        let mut cases = 0usize;
        for r in 1..=7i64 {
            for k in 1..=4i64 {
                if r * k < 2 {
                    continue;
                }
                for beta in 0..r.max(1) {
                    if num::integer::gcd(beta.rem_euclid(r.max(1)), r) != 1 && r > 1 {
                        continue;
                    }
                    for &extra in &[0i64, 1] {
                        let q = k + extra; // u-exponent: k gives the
                                           // negative variant, k+1 the flop
                        if q < 2 {
                            continue;
                        }
                        let f = format!("x*y + z^{} + u^{}", r * k, q);
                        let m = a1_model(r, beta, &f);
                        if !crate::models::validate_normal_form(&m).passed() {
                            continue;
                        }
                        for b in (r + 1)..=(r * k - 1) {
                            if (b - beta).rem_euclid(r.max(1)) != 0 {
                                continue;
                            }
                            let w = WeightVector::new(r, &[b, r * k - b, 1, r]).unwrap();
                            let c = match weighted_blowup(&m, &w) {
                                Ok(c) => c,
                                Err(_) => continue,
                            };
                            if !is_w_morphism(&c) {
                                continue;
                            }
                            let link = ca_link(&m, &c).unwrap();
                            cases += 1;
                            assert_eq!(link.flop, extra == 1, "{f} at {w:?}");
                            // discrepancy symmetry
                            let (ae, af) = dcp_discrepancies(&link.data);
                            assert_eq!(ae, ratio(1, r as i128));
                            assert_eq!(af, ratio(1, r as i128));
                            // anti-nefness implies a non-positive
                            // intersection number; strictness implies a
                            // negative one
                            let kng = kng_intersection(&link.data).unwrap();
                            if xi_condition(&link.data).unwrap() {
                                assert!(kng <= rat(0), "{f} at {w:?}: {kng}");
                            }
                            if xi_strict(&link.data).unwrap() {
                                assert!(kng < rat(0), "{f} at {w:?}: {kng}");
                            }
                            assert_eq!(link.flop, kng == rat(0), "{f} at {w:?}");
                            // slot witness agrees with the function witness
                            // on coordinates
                            for j in 1..4usize {
                                let by_index =
                                    theta_condition(&link.data, &ThetaWitness::Index(j))
                                        .unwrap();
                                let mut exps = [0i64; 4];
                                exps[j] = 1;
                                let by_fn = theta_condition(
                                    &link.data,
                                    &ThetaWitness::Function(mono(4, &exps)),
                                )
                                .unwrap();
                                assert_eq!(by_index, by_fn, "{f} at {w:?}, slot {j}");
                            }
                            // involution through the swapped roles
                            let m_sw = a1_model(r, r - beta, &f);
                            let w_sw =
                                WeightVector::new(r, &[r * k - b + r, b - r, 1, r]).unwrap();
                            let c_sw = weighted_blowup(&m_sw, &w_sw).unwrap();
                            let link_sw = ca_link(&m_sw, &c_sw).unwrap();
                            let got = link_sw.linked.weight.entries();
                            assert_eq!(
                                (got[1], got[0], got[2], got[3]),
                                (b, r * k - b, 1, r),
                                "{f} at {w:?}"
                            );
                        }
                    }
                }
            }
        }
        assert!(cases >= 20, "sweep too thin: {cases} cases");
    }
}
